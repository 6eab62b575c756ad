"""Spaces, frames and the soberification machinery on frozen small cases."""

import pytest

from modframe import errors
from modframe.order import FiniteLattice, classify_lattice
from modframe.topology import (
    FiniteSpace,
    closed_irreducibles,
    discrete,
    empty_space,
    find_homeomorphism,
    indiscrete,
    is_sober,
    is_spatial,
    open_set_lattice,
    pt_space,
    separation,
    sierpinski,
    soberification,
)


def test_space_validation():
    with pytest.raises(errors.PreconditionError):
        FiniteSpace(2, {0b00, 0b01})  # missing the full set
    with pytest.raises(errors.PreconditionError):
        FiniteSpace(2, {0b00, 0b01, 0b10, 0b11} - {0b00})
    with pytest.raises(errors.PreconditionError):
        FiniteSpace(3, {0b000, 0b001, 0b010, 0b111})  # union 0b011 missing


def test_open_set_lattice_shapes():
    assert open_set_lattice(sierpinski()).lattice.n == 3
    d2 = open_set_lattice(discrete(2)).lattice
    assert d2.n == 4 and classify_lattice(d2).frame
    ind = open_set_lattice(indiscrete(3)).lattice
    assert ind.n == 2


def test_pt_space_of_spm(z12):
    from modframe.spectra import max_space

    spm = max_space(z12).fixed_lattice
    bridge = pt_space(spm)
    assert bridge.space.n == 2
    assert len(bridge.space.opens) == 4  # discrete on two points
    assert is_sober(bridge.space).sober


def test_pt_space_small():
    assert pt_space(FiniteLattice.chain(2)).space.n == 1
    # O(indiscrete) is a 2-chain: its point space collapses to one point
    ol = open_set_lattice(indiscrete(3)).lattice
    assert pt_space(ol).space.n == 1


def test_pt_space_rejects_non_frames(m2f2):
    from modframe.finmod import submodule_lattice

    with pytest.raises(errors.NotAFrame):
        pt_space(submodule_lattice(m2f2).lattice)


def test_is_spatial(z12):
    from modframe.finmod import submodule_lattice
    from modframe.spectra import max_space

    ok, wit = is_spatial(submodule_lattice(z12).lattice)
    assert ok and wit is None
    ok, _ = is_spatial(max_space(z12).fixed_lattice)
    assert ok
    ok, _ = is_spatial(FiniteLattice.chain(2))
    assert ok


def test_closed_irreducibles_anchors():
    s = sierpinski()
    # {b} and {a,b}: b is the closed point
    assert set(closed_irreducibles(s)) == {0b10, 0b11}
    assert closed_irreducibles(indiscrete(3)) == (0b111,)
    assert set(closed_irreducibles(discrete(2))) == {0b01, 0b10}


def test_is_sober_anchors(z12, m2f2):
    from modframe.spectra import max_space

    assert is_sober(max_space(z12).space).sober
    rep = is_sober(max_space(m2f2).space)
    assert not rep.sober
    (mask, gens), = rep.violations
    assert mask == 0b111 and len(gens) == 3
    assert is_sober(sierpinski()).sober


def test_soberification_anchors(z12):
    from modframe.spectra import max_space

    sob, zeta = soberification(indiscrete(3))
    assert sob.n == 1 and zeta == (0, 0, 0)
    mx = max_space(z12).space
    sob2, _ = soberification(mx)
    assert find_homeomorphism(mx, sob2) is not None
    sob3, zeta3 = soberification(empty_space())
    assert sob3.n == 0 and zeta3 == ()


def test_soberification_idempotent():
    for space in (sierpinski(), indiscrete(3), discrete(3)):
        once, _ = soberification(space)
        twice, _ = soberification(once)
        assert find_homeomorphism(once, twice) is not None


def test_separation_anchors(z12, m2f2):
    from modframe.spectra import max_space

    rep = separation(max_space(m2f2).space)
    assert (rep.t0, rep.t1) == (False, False)
    rep = separation(max_space(z12).space)
    assert (rep.t0, rep.t1) == (True, True)
    rep = separation(sierpinski())
    assert (rep.t0, rep.t1) == (True, False)


def test_find_homeomorphism():
    assert find_homeomorphism(discrete(2), discrete(2)) is not None
    assert find_homeomorphism(discrete(2), indiscrete(2)) is None
    assert find_homeomorphism(sierpinski(), discrete(2)) is None
    flipped = FiniteSpace(2, {0b00, 0b10, 0b11})
    h = find_homeomorphism(sierpinski(), flipped)
    assert h == (1, 0)


def test_closure_and_specialization():
    s = sierpinski()
    assert s.point_closure(0) == 0b11  # the open point is dense
    assert s.point_closure(1) == 0b10
    assert s.specialization_leq(1, 0)
    assert not s.specialization_leq(0, 1)
