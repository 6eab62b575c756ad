"""The per-instance theorem suite behind `modframe check`.

Each check returns a short deterministic detail string; hypotheses that
fail (the projectivity probe, mostly) give a skipped verdict rather than
a silent pass.  Exit semantics: zero failures == success.
"""

import json
from dataclasses import dataclass

from . import errors
from .corpus import CORPUS_IDS, build_instance
from .finmod import (
    DEFAULT_CAPS,
    fully_invariant_lattice,
    lemma_checks,
    maximal_fi_submodules,
    primitive_submodules,
    self_projective_probe,
    semiprime_verdicts,
    submodule_lattice,
)
from .order import classify_lattice, compact_elements, distributive_elements
from .psi import (
    biregular_iff_psi,
    ler_is_r_check,
    negpsi_semiber_check,
    psi_structure_checks,
)
from .spectra import (
    max_space,
    mx_sobriety_report,
    primes_relative,
    pt_prt_compare,
    quantale_of_submodules,
    spec_space,
)
from .topology import is_sober, is_spatial, pt_space, soberification

__version__ = "0.1.0"

_SKIP_PROBE = "self-projectivity probe failed; theorem hypotheses unmet"


def _check_lattice_idiom(M, seed):
    lam = submodule_lattice(M)
    fil = fully_invariant_lattice(M)
    for name, sl in (("full", lam), ("fi", fil)):
        cls = classify_lattice(sl.lattice, seed=seed)
        if not cls.idiom:
            raise RuntimeError(f"{name} submodule lattice is not an idiom")
        if compact_elements(sl.lattice, seed=seed) != tuple(range(sl.lattice.n)):
            raise RuntimeError(f"{name} lattice has a non-compact element")
    if not set(fil.masks) <= set(lam.masks):
        raise RuntimeError("fi lattice escapes the submodule lattice")
    return f"|L|={len(lam.masks)} |Lfi|={len(fil.masks)}"


def _check_quantale_laws(M, seed):
    if not self_projective_probe(M):
        return None
    mq = quantale_of_submodules(M)
    fil = mq.submodules
    top = fil.index[M.full_mask]
    detail = []
    if mq.quantale.unit != top:
        detail.append(f"unit={mq.quantale.unit}")
    rel = primes_relative(mq.quantale, seed=seed)
    from .finmod import prime_submodule_masks

    expected = set(prime_submodule_masks(M))
    got = {fil.masks[p] for p in rel}
    if got != expected:
        raise RuntimeError("relative primes differ from the prime submodules")
    detail.append(f"primes={len(rel)}")
    return " ".join(detail)


def _check_spm_structure(M, seed):
    ss = max_space(M)
    n_spm = len(ss.fixed_masks)
    if not self_projective_probe(M):
        raise errors.PreconditionError(_SKIP_PROBE)
    return f"|SPm|={n_spm} |mx|={len(ss.point_masks)}"


def _check_spec_sobriety(M, seed):
    if not self_projective_probe(M):
        raise errors.PreconditionError(_SKIP_PROBE)
    ss = spec_space(M)
    return f"|Spec|={len(ss.point_masks)} |SP|={len(ss.fixed_masks)}"


def _check_mx_sobriety(M, seed):
    if not self_projective_probe(M):
        raise errors.PreconditionError(_SKIP_PROBE)
    rep = mx_sobriety_report(M)
    return (f"sober={rep.sober} quasi_duo={rep.quasi_duo} "
            f"t0={rep.t0} t1={rep.t1}")


def _check_point_chain(M, seed):
    if not self_projective_probe(M):
        raise errors.PreconditionError(_SKIP_PROBE)
    cmp = pt_prt_compare(M)
    prt = {P.mask for P in primitive_submodules(M)}
    for mfi in maximal_fi_submodules(M):
        if mfi not in prt:
            raise RuntimeError("a maximal fully invariant submodule is not primitive")
    return (f"|prt|={len(cmp.prt_masks)} |pt(SPm)|={len(cmp.pt_spm_masks)} "
            f"simpf={cmp.simpf_applied} pmpt={cmp.pmpt_applied}")


def _check_semiprime_agreement(M, seed):
    if not self_projective_probe(M):
        raise errors.PreconditionError(_SKIP_PROBE)
    fil = fully_invariant_lattice(M)
    n = 0
    for m in fil.masks:
        if m == M.full_mask:
            continue
        v = semiprime_verdicts(M, M.submodule(m, check=False))
        if len(set(v)) != 1:
            raise RuntimeError(
                f"semiprime characterisations disagree on {M.submodule_label(m)}: {v}")
        n += 1
    return f"checked={n}"


def _check_annihilator_lemmas(M, seed):
    if not self_projective_probe(M):
        raise errors.PreconditionError(_SKIP_PROBE)
    rep = lemma_checks(M)
    if not rep.intersection_ok:
        raise RuntimeError(f"annihilator intersection law fails at {rep.intersection_witness}")
    if not rep.fi_closure_ok:
        raise RuntimeError(f"fi-closure annihilator law fails at {rep.fi_closure_witness}")
    if rep.semiprime_summand_ok is False:
        raise RuntimeError(f"fi complement lemma fails at {rep.semiprime_summand_witness}")
    semi = "n/a" if rep.semiprime_summand_ok is None else "ok"
    return f"families=ok fi-closure=ok semiprime-decomposition={semi}"


def _check_psi_ler(M, seed):
    rep = psi_structure_checks(M)
    if not (rep.progenerator or rep.projective):
        raise errors.PreconditionError(_SKIP_PROBE)
    ran = [k for k, v in (("idempotent", rep.idempotent_ok),
                          ("meets", rep.meet_closed_ok),
                          ("joins", rep.join_closed_ok),
                          ("frame", rep.frame_ok),
                          ("spatial", rep.spatial_ok),
                          ("fixed", rep.ler_fixed_ok)) if v is not None]
    return f"|Psi|={len(rep.psi_masks)} ran={','.join(ran)}"


def _check_regular_core(M, seed):
    if not self_projective_probe(M):
        raise errors.PreconditionError(_SKIP_PROBE)
    lr = ler_is_r_check(M)
    np_rep = negpsi_semiber_check(M)
    stages = len(lr.trace.stages) - 1
    return (f"stable_index={lr.trace.stable_index} stages={stages} "
            f"h1={np_rep.h1_annihilators_fixed} h2={np_rep.h2_semiprime_summands} "
            f"psi_is_core={np_rep.psi_equals_core}")


def _check_biregularity(M, seed):
    if not self_projective_probe(M):
        raise errors.PreconditionError(_SKIP_PROBE)
    rep = biregular_iff_psi(M)
    ring = "n/a" if rep.ring_agrees is None else str(rep.ring_agrees)
    return f"biregular={rep.biregular} ring_agrees={ring}"


def _check_order_topology(M, seed):
    lam = submodule_lattice(M)
    details = []
    flat_carrier = distributive_elements(lam.lattice)
    sub = lam.lattice.sublattice(flat_carrier)
    ok, wit = is_spatial(sub)
    if not ok:
        raise RuntimeError(f"distributive part fails spatiality at {wit}")
    details.append(f"|F(L)|={len(flat_carrier)}")
    ss = max_space(M)
    sob_space, _zeta = soberification(ss.space)
    details.append(f"|sob(mx)|={sob_space.n}")
    cls = classify_lattice(ss.fixed_lattice, seed=seed)
    if cls.frame:
        bridge = pt_space(ss.fixed_lattice)
        if not is_sober(bridge.space).sober:
            raise RuntimeError("pt of the semiprimitive frame is not sober")
        details.append(f"|pt(SPm)|={bridge.space.n}")
    return " ".join(details)


CHECKS = (
    ("lattice_idiom", _check_lattice_idiom),
    ("quantale_laws", _check_quantale_laws),
    ("spm_structure", _check_spm_structure),
    ("spec_sobriety", _check_spec_sobriety),
    ("mx_sobriety_theorem", _check_mx_sobriety),
    ("point_chain", _check_point_chain),
    ("semiprime_agreement", _check_semiprime_agreement),
    ("annihilator_lemmas", _check_annihilator_lemmas),
    ("psi_ler", _check_psi_ler),
    ("regular_core", _check_regular_core),
    ("biregularity", _check_biregularity),
    ("order_topology", _check_order_topology),
)


@dataclass
class CheckResult:
    name: str
    verdict: str
    detail: str


@dataclass
class InstanceReport:
    instance: str
    checks: list

    @property
    def failed(self):
        return any(c.verdict == "fail" for c in self.checks)


def run_instance(instance_id, caps=None, seed=0):
    """Run every suite check against one instance."""
    _, M = build_instance(instance_id, caps=caps)
    results = []
    for name, fn in CHECKS:
        try:
            detail = fn(M, seed)
            if detail is None:
                results.append(CheckResult(name, "skipped", _SKIP_PROBE))
            else:
                results.append(CheckResult(name, "pass", detail))
        except errors.PreconditionError as e:
            results.append(CheckResult(name, "skipped", str(e)))
        except errors.ModframeError as e:
            results.append(CheckResult(name, "fail", f"{type(e).__name__}: {e}"))
        except RuntimeError as e:
            results.append(CheckResult(name, "fail", str(e)))
    return InstanceReport(instance_id, results)


def run_corpus(ids=None, caps=None, seed=0):
    ids = list(ids) if ids is not None else list(CORPUS_IDS)
    return [run_instance(i, caps=caps, seed=seed) for i in ids]


def report_document(reports, caps=None, seed=0, timings=None):
    caps = caps or DEFAULT_CAPS
    doc = {
        "version": __version__,
        "seed": seed,
        "caps": {
            "max_size": caps.max_size,
            "max_hom_candidates": caps.max_hom_candidates,
            "max_submodules": caps.max_submodules,
        },
        "instances": [
            {
                "instance": r.instance,
                "checks": [
                    {"name": c.name, "verdict": c.verdict, "detail": c.detail}
                    for c in r.checks
                ],
            }
            for r in reports
        ],
        "summary": {
            "pass": sum(c.verdict == "pass" for r in reports for c in r.checks),
            "fail": sum(c.verdict == "fail" for r in reports for c in r.checks),
            "skipped": sum(c.verdict == "skipped" for r in reports for c in r.checks),
        },
    }
    if timings:
        doc["timings"] = timings
    return doc


def report_json(doc):
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"
