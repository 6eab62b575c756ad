"""Acceptance suite: one test per criterion, exact verdicts, one line each.

Theorem checks are exact (no numeric tolerance); the corpus instances are
fixed, and the whole file is budgeted to run in well under five minutes.
"""

import json
import subprocess
import sys

from modframe._util import mask_of
from modframe.corpus import CORPUS_IDS, build_instance, corpus_spaces
from modframe.finmod import (
    annihilator,
    fully_invariant_lattice,
    lemma_checks,
    quotient_module,
    ring_biregular_report,
    self_projective_probe,
    semiprime_verdicts,
    submodule_lattice,
)
from modframe.order import classify_lattice, points
from modframe.psi import (
    biregular_iff_psi,
    is_regular,
    ler_is_r_check,
    negpsi_semiber_check,
    psi_masks,
    psi_structure_checks,
)
from modframe.spectra import (
    max_space,
    mx_sobriety_report,
    pt_prt_compare,
    quantale_of_submodules,
    spec_space,
)
from modframe.topology import (
    find_homeomorphism,
    is_sober,
    is_spatial,
    open_set_lattice,
    pt_space,
    soberification,
)


def _corpus():
    if not hasattr(_corpus, "cache"):
        _corpus.cache = [build_instance(i) for i in CORPUS_IDS]
    return _corpus.cache


def _probe_passing():
    return [(i, M) for i, M in _corpus() if self_projective_probe(M)]


def ideal_mask(d, n):
    return mask_of(x for x in range(n) if x % d == 0)


def _report(k, name):
    print(f"ACCEPTANCE {k:02d} {name}: PASS")


def test_criterion_01_spm_structure():
    for instance_id, M in _probe_passing():
        ss = max_space(M)  # frame test, spatiality, iso witness, K-formula inside
        assert classify_lattice(ss.fixed_lattice).frame
        ok, _ = is_spatial(ss.fixed_lattice)
        assert ok, instance_id
    _, z12 = build_instance("zmod:12")
    ss = max_space(z12)
    assert len(ss.fixed_masks) == 4
    assert set(ss.fixed_masks) == {ideal_mask(6, 12), ideal_mask(2, 12),
                                   ideal_mask(3, 12), z12.full_mask}
    # every proper member is the meet of quotient annihilators over maximals
    for k in ss.fixed_masks:
        if k == z12.full_mask:
            continue
        inter = z12.full_mask
        for pm in ss.point_masks:
            if k & ~pm == 0:
                Q, _ = quotient_module(z12, z12.submodule(pm, check=False))
                inter &= annihilator(z12, Q).mask
        assert inter == k
    _, m2 = build_instance("matrix:2,2")
    assert set(max_space(m2).fixed_masks) == {m2.zero_mask, m2.full_mask}
    _report(1, "SPm structure")


def test_criterion_02_spectrum_sobriety():
    for instance_id, M in _probe_passing():
        assert is_sober(spec_space(M).space).sober, instance_id
    _, z12 = build_instance("zmod:12")
    assert is_sober(max_space(z12).space).sober
    _, m2 = build_instance("matrix:2,2")
    rep = is_sober(max_space(m2).space)
    assert not rep.sober
    (mask, gens), = rep.violations
    assert mask == (1 << max_space(m2).space.n) - 1 and len(gens) == 3
    _report(2, "spectrum sobriety")


def test_criterion_03_sobriety_theorem():
    failures = []
    for instance_id, M in _probe_passing():
        rep = mx_sobriety_report(M)  # raises on any lemma/direction failure
        if not (rep.tauprim_ok and rep.qdmax_ok
                and rep.direction1_ok and rep.direction2_ok):
            failures.append(instance_id)
    assert not failures
    _report(3, "mx sobriety theorem")


def test_criterion_04_point_chain():
    for instance_id, M in _probe_passing():
        cmp = pt_prt_compare(M)
        assert cmp.chain_ok, instance_id
        if cmp.simpf_applied:
            assert set(cmp.pt_spm_masks) == set(cmp.prt_masks), instance_id
        if cmp.pmpt_applied:
            assert set(cmp.pt_spm_masks) == set(cmp.mx_masks), instance_id
    _, z12 = build_instance("zmod:12")
    cmp = pt_prt_compare(z12)
    expected = {ideal_mask(2, 12), ideal_mask(3, 12)}
    assert set(cmp.prt_masks) == set(cmp.pt_spm_masks) == set(cmp.mx_masks) == expected
    _report(4, "point chain prt <= pt(SPm) <= Spec")


def test_criterion_05_semiprime_characterisations():
    for instance_id, M in _probe_passing():
        for m in fully_invariant_lattice(M).masks:
            if m == M.full_mask:
                continue
            v = semiprime_verdicts(M, M.submodule(m, check=False))
            assert len(set(v)) == 1, (instance_id, M.submodule_label(m), v)
    _, z12 = build_instance("zmod:12")
    from modframe.finmod import is_semiprime

    assert is_semiprime(z12, z12.submodule(ideal_mask(6, 12), check=False))
    assert not is_semiprime(z12, z12.submodule(ideal_mask(4, 12), check=False))
    _report(5, "semiprime five-way agreement")


def test_criterion_06_annihilator_lemmas():
    for instance_id, M in _probe_passing():
        rep = lemma_checks(M)
        assert not rep.advisory
        assert rep.intersection_ok, instance_id
        assert rep.fi_closure_ok, instance_id
        assert rep.semiprime_summand_ok in (None, True), instance_id
    _report(6, "annihilator lemmas")


def test_criterion_07_psi_ler():
    _, z12 = build_instance("zmod:12")
    assert set(psi_masks(z12)) == {z12.zero_mask, ideal_mask(3, 12),
                                   ideal_mask(4, 12), z12.full_mask}
    for instance_id, M in _corpus():
        rep = psi_structure_checks(M)  # raises when a hypothesis-backed law fails
        if rep.progenerator:
            assert rep.idempotent_ok and rep.frame_ok and rep.spatial_ok
            assert rep.ler_fixed_ok
        if rep.projective:
            assert rep.join_closed_ok and rep.ler_intersection_ok
    _report(7, "Psi and Ler structure")


def test_criterion_08_regular_core():
    _, z12 = build_instance("zmod:12")
    rep = ler_is_r_check(z12)
    assert rep.trace.stable_index <= 2
    core_masks = {quantale_of_submodules(z12).submodules.masks[a]
                  for a in rep.trace.core_carrier}
    assert core_masks == {z12.zero_mask, ideal_mask(3, 12), ideal_mask(4, 12),
                          z12.full_mask}
    assert is_regular(rep.trace.core)
    fired = {}
    for instance_id, M in _probe_passing():
        r = negpsi_semiber_check(M)  # asserts Psi = core whenever it fires
        fired[instance_id] = r.fired
        if r.fired:
            assert r.psi_equals_core, instance_id
    for must_fire in ("product:2,2", "cyclic:2:2,2", "product:2,2,2"):
        assert fired[must_fire], must_fire
    _report(8, "regular core")


def test_criterion_09_biregularity():
    for instance_id, M in _probe_passing():
        rep = biregular_iff_psi(M)  # asserts the equivalence
        assert rep.biregular == rep.psi_is_everything
    seen_rings = {}
    for instance_id, M in _corpus():
        if M.ring.name not in seen_rings:
            seen_rings[M.ring.name] = ring_biregular_report(M.ring)
    for name, rep in seen_rings.items():
        assert rep.by_central_idempotents == rep.by_annihilator_sum, name
    _report(9, "biregularity")


def test_criterion_10_order_topology_kernel():
    # adjunction law for every bridge constructed here, explicitly
    for instance_id, M in _probe_passing():
        ss = max_space(M)
        f, g = ss.indexing, ss.coindexing
        src, dst = f.source, f.target
        for a in range(src.n):
            for b in range(dst.n):
                assert dst.leq(f.table[a], b) == src.leq(a, g.table[b])
    for name, space in corpus_spaces():
        lat = open_set_lattice(space).lattice
        bridge = pt_space(lat)
        assert is_sober(bridge.space).sober, name
        sob, _ = soberification(space)
        assert find_homeomorphism(bridge.space, sob) is not None, name
    _, m2 = build_instance("matrix:2,2")
    cls = classify_lattice(submodule_lattice(m2).lattice)
    assert cls.modular and not cls.distributive
    assert points(submodule_lattice(m2).lattice) == ()
    _report(10, "order/topology kernel")


def test_criterion_11_determinism():
    cmd = [sys.executable, "-m", "modframe.cli", "check", "--corpus"]
    first = subprocess.run(cmd, capture_output=True, text=True)
    second = subprocess.run(cmd, capture_output=True, text=True)
    assert first.returncode == 0, first.stdout[-2000:]
    assert second.returncode == 0
    assert first.stdout == second.stdout
    doc = json.loads(first.stdout)
    assert doc["summary"]["fail"] == 0
    assert {i["instance"] for i in doc["instances"]} == set(CORPUS_IDS)
    _report(11, "byte-identical check reports")
