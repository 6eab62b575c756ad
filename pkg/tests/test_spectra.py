"""Quantales, Spec(M), mx(M) and the nuclei cutting out SP and SPm."""

import pytest

from modframe import errors
from modframe._util import mask_of
from modframe.finmod import regular_module, zmod
from modframe.order import FiniteLattice
from modframe.spectra import (
    FiniteQuantale,
    max_space,
    mx_sobriety_report,
    primes_relative,
    pt_prt_compare,
    quantale_of_submodules,
    spec_space,
)


def ideal_mask(d, n):
    return mask_of(x for x in range(n) if x % d == 0)


def test_quantale_of_submodules_z12(z12):
    mq = quantale_of_submodules(z12)
    fil = mq.submodules
    assert mq.quantale.unit == fil.index[z12.full_mask]
    two = fil.index[ideal_mask(2, 12)]
    assert fil.masks[mq.quantale.product[two, two]] == ideal_mask(4, 12)


def test_quantale_trivial_simple():
    M = regular_module(zmod(3))
    mq = quantale_of_submodules(M)
    assert mq.quantale.lattice.n == 2
    top = mq.quantale.lattice.top
    assert mq.quantale.product[top, top] == top


def test_quantale_refuses_probe_failures(z2z4):
    with pytest.raises(errors.PreconditionError):
        quantale_of_submodules(z2z4)


def test_quantale_rejects_non_associative():
    lat = FiniteLattice.chain(3)
    prod = [[0, 0, 0], [0, 0, 2], [0, 2, 1]]
    with pytest.raises((errors.NotAssociative, errors.InvalidTables)):
        FiniteQuantale(lat, prod)


def test_primes_relative_anchors(z12, z4):
    for M, expected in ((z12, {ideal_mask(2, 12), ideal_mask(3, 12)}),
                        (z4, {ideal_mask(2, 4)})):
        mq = quantale_of_submodules(M)
        rel = primes_relative(mq.quantale)
        assert {mq.submodules.masks[p] for p in rel} == expected


def test_primes_relative_two_chain():
    lat = FiniteLattice.chain(2)
    prod = [[0, 0], [0, 1]]
    q = FiniteQuantale(lat, prod)
    assert primes_relative(q) == (0,)


def test_primes_relative_rejects_bad_base(z12):
    mq = quantale_of_submodules(z12)
    fil = mq.submodules
    # (3) and (2) without their join: not a sub-join-semilattice
    base = (fil.lattice.bottom, fil.index[ideal_mask(3, 12)],
            fil.index[ideal_mask(2, 12)])
    with pytest.raises(errors.NotSubQuasiQuantale):
        primes_relative(mq.quantale, base=base)


def test_spec_space_z12(z12):
    ss = spec_space(z12)
    assert set(ss.point_masks) == {ideal_mask(2, 12), ideal_mask(3, 12)}
    assert set(ss.fixed_masks) == {
        ideal_mask(6, 12), ideal_mask(2, 12), ideal_mask(3, 12), z12.full_mask}
    # mu(0) = (6)
    fil = ss.base
    t = ss.nucleus.map.table
    zero = fil.index[z12.zero_mask]
    assert fil.masks[t[zero]] == ideal_mask(6, 12)
    assert ss.nucleus.multiplicative


def test_spec_space_m2f2(m2f2):
    ss = spec_space(m2f2)
    assert ss.point_masks == (m2f2.zero_mask,)
    assert set(ss.fixed_masks) == {m2f2.zero_mask, m2f2.full_mask}


def test_spec_space_simple():
    M = regular_module(zmod(2))
    ss = spec_space(M)
    assert ss.point_masks == (M.zero_mask,)
    assert set(ss.fixed_masks) == {M.zero_mask, M.full_mask}


def test_max_space_z12(z12):
    ss = max_space(z12)
    assert set(ss.point_masks) == {ideal_mask(2, 12), ideal_mask(3, 12)}
    assert len(ss.fixed_masks) == 4
    assert set(ss.fixed_masks) == {
        ideal_mask(6, 12), ideal_mask(2, 12), ideal_mask(3, 12), z12.full_mask}
    # the adjoint sends the empty open to (6)
    opens_bottom = ss.opens.lattice.bottom
    fil = ss.base
    assert fil.masks[ss.coindexing.table[opens_bottom]] == ideal_mask(6, 12)


def test_max_space_m2f2(m2f2):
    ss = max_space(m2f2)
    assert len(ss.point_masks) == 3
    assert len(ss.space.opens) == 2  # indiscrete
    assert set(ss.fixed_masks) == {m2f2.zero_mask, m2f2.full_mask}


def test_max_space_z4(z4):
    ss = max_space(z4)
    fil = ss.base
    t = ss.nucleus.map.table
    zero = fil.index[z4.zero_mask]
    assert fil.masks[t[zero]] == ideal_mask(2, 4)
    assert set(ss.fixed_masks) == {ideal_mask(2, 4), z4.full_mask}


def test_max_space_unconditional_on_probe_failure(z2z4):
    ss = max_space(z2z4)
    assert len(ss.point_masks) == 3
    assert len(ss.fixed_masks) == 3  # a chain; frame iso checked internally


def test_pt_prt_compare(z12, m2f2):
    cmp = pt_prt_compare(z12)
    assert set(cmp.prt_masks) == set(cmp.pt_spm_masks) == set(cmp.mx_masks)
    assert cmp.pmpt_applied and cmp.simpf_applied and cmp.chain_ok
    cmp2 = pt_prt_compare(m2f2)
    assert cmp2.prt_masks == cmp2.pt_spm_masks == (m2f2.zero_mask,)
    assert len(cmp2.mx_masks) == 3 and not cmp2.pmpt_applied


def test_pt_prt_simple():
    M = regular_module(zmod(2))
    cmp = pt_prt_compare(M)
    assert cmp.prt_masks == cmp.pt_spm_masks == cmp.spec_masks == (M.zero_mask,)


def test_mx_sobriety_z12(z12):
    rep = mx_sobriety_report(z12)
    assert rep.sober and rep.quasi_duo and rep.t0 and rep.t1
    assert rep.tauprim_ok and rep.qdmax_ok and rep.direction1_ok and rep.direction2_ok


def test_mx_sobriety_m2f2(m2f2):
    rep = mx_sobriety_report(m2f2)
    assert not rep.sober and not rep.quasi_duo
    assert rep.pt_equals_prt  # consistent: the converse needs quasi-duo
    (mask, gens), = rep.violations
    assert len(gens) == 3


def test_mx_sobriety_z2xz2(z2xz2):
    rep = mx_sobriety_report(z2xz2)
    assert rep.sober and rep.quasi_duo
