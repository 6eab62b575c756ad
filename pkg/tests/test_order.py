"""Lattice toolkit against independent oracles and frozen small cases."""

import pytest

from modframe import errors
from modframe._util import mask_of
from modframe.finmod import submodule_lattice
from modframe.order import (
    FiniteLattice,
    MonotoneMap,
    adjoint,
    classify_closure,
    classify_lattice,
    compact_elements,
    distributive_elements,
    identity_map,
    maximal_excluders,
    points,
)

M3_LEQ = [
    [1, 1, 1, 1, 1],
    [0, 1, 0, 0, 1],
    [0, 0, 1, 0, 1],
    [0, 0, 0, 1, 1],
    [0, 0, 0, 0, 1],
]
N5_LEQ = [
    [1, 1, 1, 1, 1],
    [0, 1, 0, 1, 1],
    [0, 0, 1, 0, 1],
    [0, 0, 0, 1, 1],
    [0, 0, 0, 0, 1],
]


def divisors(n):
    return [d for d in range(1, n + 1) if n % d == 0]


def ideal_mask(d, n):
    """Multiples of d inside Z_n, as a bitmask."""
    return mask_of(x for x in range(n) if x % d == 0)


def z12_lattice(z12):
    return submodule_lattice(z12)


def _element_of(sl, d, n=12):
    return sl.index[ideal_mask(d, n)]


def test_join_against_subset_sum_oracle(z12):
    sl = submodule_lattice(z12)
    lat = sl.lattice
    e4, e6 = _element_of(sl, 4), _element_of(sl, 6)
    j = lat.join(e4, e6)
    # oracle: closure of {4a + 6b mod 12} by direct enumeration
    sums = {(4 * a + 6 * b) % 12 for a in range(12) for b in range(12)}
    assert sl.masks[j] == mask_of(sums) == ideal_mask(2, 12)


def test_empty_join_and_meet(z12):
    lat = submodule_lattice(z12).lattice
    assert lat.join_all([]) == lat.bottom
    assert lat.meet_all([]) == lat.top


def test_meet_is_set_intersection(z12):
    sl = submodule_lattice(z12)
    e2, e3 = _element_of(sl, 2), _element_of(sl, 3)
    m = sl.lattice.meet(e2, e3)
    assert sl.masks[m] == (ideal_mask(2, 12) & ideal_mask(3, 12)) == ideal_mask(6, 12)


def test_classify_z12(z12):
    cls = classify_lattice(submodule_lattice(z12).lattice)
    assert (cls.modular, cls.distributive, cls.idiom, cls.frame) == (True,) * 4


def test_classify_m2f2(m2f2):
    cls = classify_lattice(submodule_lattice(m2f2).lattice)
    assert cls.modular and cls.idiom
    assert not cls.distributive and not cls.frame
    a, b, c = cls.witnesses["distributive"]
    assert len({a, b, c}) >= 2  # a genuine witness triple


def test_classify_chain_and_pentagon():
    assert classify_lattice(FiniteLattice.chain(2)).frame
    n5 = classify_lattice(FiniteLattice(N5_LEQ))
    assert not n5.modular and not n5.idiom


def test_points_anchors(z12, m2f2):
    sl = submodule_lattice(z12)
    assert {sl.masks[p] for p in points(sl.lattice)} == {
        ideal_mask(2, 12), ideal_mask(3, 12), ideal_mask(4, 12)}
    assert points(submodule_lattice(m2f2).lattice) == ()
    chain = FiniteLattice.chain(2)
    assert points(chain) == (chain.bottom,)


def test_points_bruteforce_oracle(z12):
    lat = submodule_lattice(z12).lattice
    expected = []
    for p in range(lat.n):
        if p == lat.top:
            continue
        if all(not lat.leq(lat.meet(a, b), p) or lat.leq(a, p) or lat.leq(b, p)
               for a in range(lat.n) for b in range(lat.n)):
            expected.append(p)
    assert list(points(lat)) == expected


def test_points_agree_with_meet_irreducibles_on_distributive(z12):
    # on a distributive lattice: point <=> p = a ^ b forces p in {a, b}
    lat = submodule_lattice(z12).lattice
    classic = tuple(
        p for p in range(lat.n) if p != lat.top
        and all(lat.meet(a, b) != p or p in (a, b)
                for a in range(lat.n) for b in range(lat.n)))
    assert classic == points(lat)


def test_compact_elements(z12, m2f2):
    for M, n in ((z12, 6), (m2f2, 5)):
        lat = submodule_lattice(M).lattice
        assert compact_elements(lat) == tuple(range(n))
    single = FiniteLattice.chain(1)
    assert compact_elements(single) == (0,)


def test_distributive_elements(z12, m2f2):
    lat = submodule_lattice(z12).lattice
    assert distributive_elements(lat) == tuple(range(lat.n))
    sl = submodule_lattice(m2f2)
    assert [sl.lattice.label(a) for a in distributive_elements(sl.lattice)] == ["0", "M"]
    chain = FiniteLattice.chain(4)
    assert distributive_elements(chain) == tuple(range(4))


def test_maximal_excluders(z12, z4):
    sl = submodule_lattice(z12)
    out = maximal_excluders(sl.lattice, sl.lattice.top)
    assert {sl.masks[x] for x in out} == {ideal_mask(2, 12), ideal_mask(3, 12)}
    assert maximal_excluders(sl.lattice, sl.lattice.bottom) == ()
    sl4 = submodule_lattice(z4)
    two = sl4.index[ideal_mask(2, 4)]
    out4 = maximal_excluders(sl4.lattice, two)
    assert [sl4.lattice.label(x) for x in out4] == ["0"]


def test_maximal_excluders_rejects_bad_carrier(z12):
    sl = submodule_lattice(z12)
    # (3) and (2) without their join M: not meet/join closed
    carrier = [sl.lattice.bottom, sl.index[ideal_mask(3, 12)],
               sl.index[ideal_mask(2, 12)]]
    with pytest.raises(errors.PreconditionError):
        maximal_excluders(sl.lattice, sl.lattice.top, carrier=carrier)


def test_adjoint_identity(z12):
    lat = submodule_lattice(z12).lattice
    f = identity_map(lat)
    assert adjoint(f).table == f.table


def test_adjoint_rejects_constant_to_top():
    chain = FiniteLattice.chain(3)
    f = MonotoneMap(chain, chain, [2, 2, 2])
    with pytest.raises(errors.NotJoinPreserving) as exc:
        adjoint(f)
    assert exc.value.witness == ()  # fails at the empty join


def test_adjoint_law_exhaustive():
    # x ^ c preserves joins on a frame; its adjoint must satisfy the law
    lat = FiniteLattice.boolean(3)
    c = 3
    f = MonotoneMap(lat, lat, [lat.meet(x, c) for x in range(lat.n)])
    g = adjoint(f)
    for a in range(lat.n):
        for b in range(lat.n):
            assert lat.leq(f.table[a], b) == lat.leq(a, g.table[b])


def _z4_fi_chain():
    # 0 < (2) < M with the ideal product of Z4
    lat = FiniteLattice.chain(3)
    prod = [[0, 0, 0], [0, 0, 1], [0, 1, 2]]
    return lat, prod


def test_classify_closure_tau_z4():
    lat, prod = _z4_fi_chain()
    tau = MonotoneMap(lat, lat, [1, 1, 2])
    rep = classify_closure(lat, tau, product=prod)
    assert rep.nucleus and rep.multiplicative
    assert rep.fixed_indices == (1, 2)
    assert rep.fixed_is_idiom


def test_classify_closure_identity(z12):
    lat = submodule_lattice(z12).lattice
    rep = classify_closure(lat, identity_map(lat))
    assert rep.nucleus and rep.inflator and rep.deflator and rep.idempotent
    assert rep.fixed_indices == tuple(range(lat.n))


def test_classify_closure_ler_is_deflator(z12):
    from modframe.psi import _ler_mask

    sl = submodule_lattice(z12)
    lat = sl.lattice
    table = [sl.index[_ler_mask(z12, m)] for m in sl.masks]
    rep = classify_closure(lat, MonotoneMap(lat, lat, table))
    assert rep.deflator and rep.idempotent and not rep.inflator
    assert not rep.nucleus


def test_classify_closure_needs_product(z12):
    lat = submodule_lattice(z12).lattice
    with pytest.raises(errors.ProductRequired):
        classify_closure(lat, identity_map(lat), need_product_flags=True)


def test_excluder_family_closed_under_directed_joins(z12):
    import itertools

    lat = submodule_lattice(z12).lattice
    for m in range(lat.n):
        excl = [x for x in range(lat.n) if not lat.leq(m, x)]
        for r in (1, 2, 3):
            for fam in itertools.combinations(excl, r):
                directed = all(
                    any(lat.leq(a, u) and lat.leq(b, u) for u in fam)
                    for a in fam for b in fam)
                if directed:
                    assert lat.join_all(fam) in excl


def test_adjoint_composite_preserves_meets():
    # for a meet-preserving join-preserving map, both composites do too
    lat = FiniteLattice.boolean(3)
    c = 5
    f = MonotoneMap(lat, lat, [lat.meet(x, c) for x in range(lat.n)])
    g = adjoint(f)
    inner = classify_closure(lat, g.compose(f))   # on the source
    outer = classify_closure(lat, f.compose(g))   # on the target
    assert inner.prenucleus and outer.prenucleus
    assert inner.inflator and inner.idempotent
    assert outer.deflator and outer.idempotent


def test_monotone_map_validation():
    chain = FiniteLattice.chain(3)
    with pytest.raises(errors.NotMonotone):
        MonotoneMap(chain, chain, [2, 1, 0])


def test_from_subsets_requires_lattice():
    # two incomparable sets with no join in the family
    with pytest.raises(errors.NotALattice):
        FiniteLattice.from_subsets([0b001, 0b010, 0b100])


def test_sublattice_induced(z12):
    sl = submodule_lattice(z12)
    carrier = sorted({sl.index[ideal_mask(d, 12)] for d in (12, 3, 4, 1)})
    sub = sl.lattice.sublattice(carrier)
    assert classify_lattice(sub).frame
    assert sub.n == 4
