"""The annihilator-condition frame Psi(M), its deflator Ler, frame
regularity, and the regular core of a quantale.

Psi(M) collects the fully invariant N with N + Ann(Rn) = M for every
n in N; Ler(N) collects the elements m with N + Ann(Rm) = M.  On good
modules Ler is an idempotent deflator whose fixed points are exactly
Psi(M), and Psi(M) is the regular core of the fully invariant quantale.
"""

import functools
from dataclasses import dataclass

from . import errors
from ._util import bits, mask_of
from .finmod import (
    _ann_of_cyclic,
    annihilator,
    fully_invariant_lattice,
    is_semiprime,
    module_predicates,
    product_mask,
    ring_biregular_report,
    self_progenerator_probe,
    self_projective_probe,
    submodule_lattice,
)
from .order import FiniteLattice, classify_lattice
from .spectra import quantale_of_submodules
from .topology import is_spatial


# -- Psi and Ler --------------------------------------------------------------


def _psi_member(M, nmask):
    for n in bits(nmask):
        if M.closure_of_mask(nmask | _ann_of_cyclic(M, n)) != M.full_mask:
            return False
    return True


@functools.lru_cache(maxsize=None)
def psi_masks(M):
    fil = fully_invariant_lattice(M)
    out = tuple(m for m in fil.masks if _psi_member(M, m))
    if M.zero_mask not in out or M.full_mask not in out:
        raise RuntimeError("0 and M must always satisfy the annihilator condition")
    return out


def psi(M):
    """The fully invariant submodules N with N + Ann(Rn) = M for all n in N."""
    return tuple(M.submodule(m, check=False) for m in psi_masks(M))


@functools.lru_cache(maxsize=None)
def _ler_mask(M, nmask):
    return mask_of(
        x for x in range(M.size)
        if M.closure_of_mask(nmask | _ann_of_cyclic(M, x)) == M.full_mask)


@functools.lru_cache(maxsize=None)
def _ler_pair_law_ok(M):
    """Ler of a pairwise intersection is the intersection of the Lers."""
    fil = fully_invariant_lattice(M)
    for a in fil.masks:
        for b in fil.masks:
            if _ler_mask(M, a & b) != (_ler_mask(M, a) & _ler_mask(M, b)):
                return (M.submodule_label(a), M.submodule_label(b))
    return None


def ler(M, N):
    """Ler(N) = {m : N + Ann(Rm) = M} for a fully invariant N.

    Checked to be a submodule (guaranteed on probe-passing modules) and,
    on self-progenerators, contained in N; the pairwise intersection law
    is verified once per module on probe-passing instances.
    """
    fil = fully_invariant_lattice(M)
    if N.mask not in fil.index:
        raise errors.NotFullyInvariant(N.label)
    mask = _ler_mask(M, N.mask)
    if M.closure_of_mask(mask) != mask:
        raise RuntimeError("Ler produced a non-submodule; the module is not"
                           " self-projective")
    if self_progenerator_probe(M) and mask & ~N.mask:
        raise RuntimeError("Ler must deflate on a self-progenerator")
    if self_projective_probe(M):
        w = _ler_pair_law_ok(M)
        if w is not None:
            raise RuntimeError(f"Ler intersection law fails at {w}")
    return M.submodule(mask, check=False)


@dataclass
class PsiReport:
    psi_masks: tuple
    progenerator: bool
    projective: bool
    idempotent_ok: bool | None
    meet_closed_ok: bool | None
    meet_is_product_ok: bool | None
    join_closed_ok: bool | None
    frame_ok: bool | None
    spatial_ok: bool | None
    ler_fixed_ok: bool | None
    ler_intersection_ok: bool | None


def psi_structure_checks(M):
    """The structural facts about Psi(M), gated on their hypotheses.

    Self-progenerators: members are idempotent, Psi is meet-closed with
    N^K = N.K against fully invariant K, Psi is a spatial frame, and the
    fixed points of Ler are exactly Psi.  Self-projective: Psi is closed
    under arbitrary joins and Ler respects intersections.  Violations
    raise; inapplicable items are reported as None.
    """
    fil = fully_invariant_lattice(M)
    pm = psi_masks(M)
    progen = self_progenerator_probe(M)
    proj = self_projective_probe(M)
    idem = meet_closed = meet_prod = join_closed = None
    frame_ok = spatial_ok = fixed_ok = ler_law = None
    if progen:
        idem = all(product_mask(M, m, m) == m for m in pm)
        if not idem:
            raise RuntimeError("a Psi member is not idempotent")
        meet_closed = all((a & b) in set(pm) for a in pm for b in pm)
        if not meet_closed:
            raise RuntimeError("Psi is not closed under binary meets")
        meet_prod = all(product_mask(M, n, k) == (n & k)
                        for n in pm for k in fil.masks)
        if not meet_prod:
            raise RuntimeError("N.K differs from N^K for some N in Psi")
        plat = FiniteLattice.from_subsets(
            list(pm), labels=[M.submodule_label(m) for m in pm])
        frame_ok = classify_lattice(plat).frame
        if not frame_ok:
            raise RuntimeError("Psi failed the frame test")
        spatial_ok, wit = is_spatial(plat)
        if not spatial_ok:
            raise RuntimeError(f"Psi failed spatiality at {wit}")
        fixed_ok = set(pm) == {m for m in fil.masks if _ler_mask(M, m) == m}
        if not fixed_ok:
            raise RuntimeError("fixed points of Ler differ from Psi")
    if proj:
        pm_set = set(pm)
        members = list(pm)
        join_closed = True
        if len(members) <= 16:
            # every subset; beyond that pairwise closure already decides
            for sel in range(1, 1 << len(members)):
                u = M.zero_mask
                for i in bits(sel):
                    u |= members[i]
                if M.closure_of_mask(u) not in pm_set:
                    join_closed = False
                    break
        else:
            join_closed = all(M.closure_of_mask(a | b) in pm_set
                              for a in members for b in members)
        if not join_closed:
            raise RuntimeError("Psi is not closed under joins")
        ler_law = _ler_pair_law_ok(M) is None
        if not ler_law:
            raise RuntimeError("Ler intersection law fails")
    return PsiReport(pm, progen, proj, idem, meet_closed, meet_prod,
                     join_closed, frame_ok, spatial_ok, fixed_ok, ler_law)


# -- frame regularity ----------------------------------------------------------


def negation(lat, x):
    """Pseudocomplement: the join of everything meeting x at the bottom."""
    return lat.join_all(y for y in range(lat.n) if lat.meet(y, x) == lat.bottom)


def rather_below(lat, x, a):
    """x is rather below a when a v (not x) is the top."""
    return lat.join(a, negation(lat, x)) == lat.top


def regular_part(lat):
    """Elements that are joins of elements rather below themselves."""
    if not classify_lattice(lat).frame:
        raise errors.NotAFrame("regularity is a frame notion")
    out = []
    for a in range(lat.n):
        j = lat.join_all(x for x in range(lat.n) if rather_below(lat, x, a))
        if j == a:
            out.append(a)
    return tuple(out)


def is_regular(lat):
    return len(regular_part(lat)) == lat.n


# -- the regular core -----------------------------------------------------------


@dataclass
class RegularCoreTrace:
    """Stages of the iterated annihilator-complement deflator.

    stages[k+1] is the fixed carrier of the stage-k map; the list ends
    with the first repeated carrier.  audit[k] records, per element, the
    ambient and stage-closed values of x^r and r(x).
    """

    stages: tuple
    stable_index: int
    core_carrier: tuple
    core: FiniteLattice
    audit: tuple


def regular_core(quant, subframe_check_max=8):
    """Iterate r(a) = v{x : a v x^r = top}, x^r = v{y : y.x = bottom},
    taking fixed points stage by stage until the carrier repeats.

    Joins inside a stage are ambient joins followed by stage closure
    (iterating the previous stage map to its fixpoint).  The core is
    checked to be a regular frame, and on carriers of at most
    subframe_check_max elements every regular subframe is checked to be
    contained in it.
    """
    lat = quant.lattice
    prod = quant.product
    carrier = tuple(range(lat.n))
    stages = [carrier]
    audit = []
    projections = []  # stage maps as dicts, in order

    def project(x):
        for rmap in projections:
            seen = set()
            while rmap[x] != x:
                if x in seen:
                    raise RuntimeError("stage map does not stabilise")
                seen.add(x)
                x = rmap[x]
        return x

    while True:
        xr = {}
        r = {}
        stage_audit = {"x_r": {}, "r": {}}
        for x in carrier:
            amb = lat.join_all(y for y in carrier if prod[y, x] == lat.bottom)
            st = project(amb)
            xr[x] = st
            stage_audit["x_r"][x] = (amb, st)
        for a in carrier:
            amb = lat.join_all(x for x in carrier
                               if lat.join(a, xr[x]) == lat.top)
            st = project(amb)
            r[a] = st
            stage_audit["r"][a] = (amb, st)
        audit.append(stage_audit)
        nxt = tuple(a for a in carrier if r[a] == a)
        stages.append(nxt)
        if nxt == carrier:
            break
        projections.append(r)
        carrier = nxt
        if len(stages) > lat.n + 2:
            raise RuntimeError("regular core failed to stabilise")
    stable_index = len(stages) - 2
    core = lat.sublattice(carrier)
    if not classify_lattice(core).frame:
        raise RuntimeError("regular core is not a frame")
    if not is_regular(core):
        raise RuntimeError("regular core is not regular")
    if lat.n <= subframe_check_max:
        _check_regular_subframes(lat, set(carrier))
    return RegularCoreTrace(tuple(stages), stable_index, carrier, core, tuple(audit))


def _check_regular_subframes(lat, core_set):
    """Every regular subframe of the ambient lattice must sit in the core."""
    n = lat.n
    for sel in range(1 << n):
        sub = set(bits(sel))
        if lat.bottom not in sub or lat.top not in sub:
            continue
        if not all(lat.meet(a, b) in sub and lat.join(a, b) in sub
                   for a in sub for b in sub):
            continue
        sublat = lat.sublattice(sub)
        if not classify_lattice(sublat).frame:
            continue
        if is_regular(sublat) and not sub <= core_set:
            raise RuntimeError(f"regular subframe {sorted(sub)} escapes the core")


# -- module-level reports ---------------------------------------------------------


@dataclass
class LerIsRReport:
    r_equals_ler: bool
    fixed_equals_psi: bool
    trace: RegularCoreTrace


def ler_is_r_check(M):
    """On the fully invariant quantale the core deflator is Ler and its
    fixed points are Psi(M)."""
    mq = quantale_of_submodules(M)
    fil = mq.submodules
    trace = regular_core(mq.quantale)
    stage0 = trace.audit[0]["r"]
    r_eq = all(fil.masks[stage0[a][1]] == _ler_mask(M, fil.masks[a])
               for a in range(fil.lattice.n))
    if not r_eq:
        raise RuntimeError("the core deflator differs from Ler")
    fixed_eq = tuple(fil.masks[a] for a in trace.stages[1]) == psi_masks(M)
    if not fixed_eq:
        raise RuntimeError("the first fixed stage differs from Psi")
    return LerIsRReport(r_eq, fixed_eq, trace)


@dataclass
class NegPsiReport:
    h1_annihilators_fixed: bool
    h2_semiprime_summands: bool
    fired: bool
    psi_equals_core: bool
    double_annihilator_ok: bool | None
    complement_fi_ok: bool | None


def negpsi_semiber_check(M):
    """Sufficient conditions for Psi(M) to be the regular core.

    H1: every annihilator of a fully invariant submodule is Ler-fixed.
    H2: the module is semiprime and every such annihilator is a direct
    summand.  When either holds the equality Psi = core is asserted; the
    equality itself is recorded unconditionally.
    """
    if not self_projective_probe(M):
        raise errors.PreconditionError("needs the self-projectivity probe")
    fil = fully_invariant_lattice(M)
    lam = submodule_lattice(M)
    anns = {m: annihilator(M, M.submodule(m, check=False)).mask for m in fil.masks}
    h1 = all(_ler_mask(M, a) == a for a in anns.values())
    zero_sub = M.submodule(M.zero_mask, check=False)
    semiprime = M.size > 1 and is_semiprime(M, zero_sub, cross_check=False)
    summand = all(
        any((a & l) == M.zero_mask and M.closure_of_mask(a | l) == M.full_mask
            for l in lam.masks)
        for a in anns.values())
    h2 = semiprime and summand
    trace = regular_core(quantale_of_submodules(M).quantale)
    core_masks = tuple(fil.masks[a] for a in trace.core_carrier)
    equal = set(core_masks) == set(psi_masks(M))
    if (h1 or h2) and not equal:
        raise RuntimeError("hypotheses hold but Psi differs from the core")
    double_ok = comp_fi_ok = None
    if h2:
        fiset = set(fil.masks)
        comp_fi_ok = True
        for n in fil.masks:
            for l in lam.masks:
                if (n & l) == M.zero_mask and M.closure_of_mask(n | l) == M.full_mask:
                    if l not in fiset:
                        comp_fi_ok = False
        if not comp_fi_ok:
            raise RuntimeError("complement of a fully invariant summand is not fi")
        double_ok = all(
            (anns[n] & anns[anns[n]]) == M.zero_mask
            and M.closure_of_mask(anns[n] | anns[anns[n]]) == M.full_mask
            for n in fil.masks)
        if not double_ok:
            raise RuntimeError("double annihilator decomposition fails")
    return NegPsiReport(h1, h2, h1 or h2, equal, double_ok, comp_fi_ok)


@dataclass
class BiregularIffPsiReport:
    biregular: bool
    psi_is_everything: bool
    ring_checked: bool
    ring_agrees: bool | None


def biregular_iff_psi(M):
    """Biregularity is equivalent to Psi(M) being the whole fi lattice;
    for the ring-as-module the two ring characterisations must agree."""
    if not self_projective_probe(M):
        raise errors.PreconditionError("needs the self-projectivity probe")
    preds = module_predicates(M)
    fil = fully_invariant_lattice(M)
    psi_all = psi_masks(M) == fil.masks
    if preds.biregular != psi_all:
        raise RuntimeError("biregular and Psi = fi lattice disagree")
    ring_checked = M.is_regular
    ring_agrees = None
    if ring_checked:
        rep = ring_biregular_report(M.ring)
        ring_agrees = rep.biregular == preds.biregular
        if not ring_agrees:
            raise RuntimeError("ring and module biregularity disagree")
    return BiregularIffPsiReport(preds.biregular, psi_all, ring_checked, ring_agrees)
