"""Module spectra and their frames.

The fully invariant submodules of a module form a quantale under the
module product.  Its prime elements give the Zariski-like spectrum; the
maximal submodules give the hull-kernel space.  Both indexing maps have
right adjoints, and the composite nuclei cut out the semiprime and
semiprimitive frames as fixed points.
"""

import functools
from dataclasses import dataclass, field

import numpy as np

from . import _kernels as K
from . import errors
from ._util import bits, mask_of, popcount
from .finmod import (
    annihilator,
    fi_product_table,
    fully_invariant_lattice,
    is_semiprime,
    maximal_submodules,
    module_predicates,
    prime_submodule_masks,
    primitive_submodules,
    quotient_module,
    self_projective_probe,
    SubmoduleLattice,
)
from .order import (
    FULL_SWEEP_MAX,
    FiniteLattice,
    MonotoneMap,
    ClosureReport,
    _law_samples,
    adjoint,
    classify_closure,
    classify_lattice,
    points,
)
from .topology import (
    FiniteSpace,
    SpaceOpensLattice,
    is_sober,
    is_spatial,
    open_set_lattice,
    separation,
)


class FiniteQuantale:
    """A finite complete lattice with an associative, join-distributing
    product.  Units are detected, not required."""

    def __init__(self, lattice, product, seed=0):
        self.lattice = lattice
        prod = K.as_table(product)
        n = lattice.n
        if prod.shape != (n, n):
            raise errors.PreconditionError("product table must match the lattice")
        w = K.triple_assoc_witness(prod)
        if w is not None:
            raise errors.NotAssociative(w)
        pT = np.ascontiguousarray(prod.T)
        for action, side in ((prod, "left"), (pT, "right")):
            bad = _sweep(lattice, action, False, seed)
            if bad is not None:
                raise errors.InvalidTables("quantale", f"{side} join distributivity", bad)
        self.product = prod
        self.product.setflags(write=False)
        lefts = [e for e in range(n) if all(prod[e, a] == a for a in range(n))]
        rights = [e for e in range(n) if all(prod[a, e] == a for a in range(n))]
        both = [e for e in lefts if e in rights]
        self.unit = both[0] if both else None
        self.left_units = tuple(lefts)
        self.right_units = tuple(rights)

    def __repr__(self):
        return f"FiniteQuantale(n={self.lattice.n}, unit={self.unit})"


def _sweep(lat, action, directed_only, seed):
    if lat.n <= FULL_SWEEP_MAX:
        return K.dist_witness_all(action, lat._join, lat.bottom, directed_only)
    return K.dist_witness_samples(action, lat._join, lat.bottom,
                                  _law_samples(lat.n, seed), directed_only)


@dataclass
class ModuleQuantale:
    quantale: FiniteQuantale
    submodules: SubmoduleLattice


@functools.lru_cache(maxsize=None)
def quantale_of_submodules(M):
    """The fully invariant lattice with the module product as a quantale.

    Requires the projectivity probe (product associativity rests on it);
    a NotAssociative escape here would signal a probe false-positive.
    """
    if not self_projective_probe(M):
        raise errors.PreconditionError(
            "module fails the self-projectivity probe; product laws unavailable")
    fil, table = fi_product_table(M)
    q = FiniteQuantale(fil.lattice, table)
    return ModuleQuantale(q, fil)


def primes_relative(quant, base=None, seed=0):
    """Elements prime relative to a sub-quasi-quantale carrier.

    base is a carrier of lattice indices (defaults to the full carrier);
    it must contain the bottom, be closed under joins, and satisfy the
    directed distributivity laws inside itself.
    """
    lat = quant.lattice
    prod = quant.product
    if base is None:
        base = tuple(range(lat.n))
    base = sorted(set(base))
    base_set = set(base)
    if lat.bottom not in base_set:
        raise errors.NotSubQuasiQuantale("carrier misses the bottom element")
    for a in base:
        for b in base:
            if lat.join(a, b) not in base_set:
                raise errors.NotSubQuasiQuantale(f"carrier not join-closed at ({a},{b})")
    _relative_directed_laws(lat, prod, base, seed)
    out = []
    for p in range(lat.n):
        if p == lat.top:
            continue
        if all(lat._leq[a, p] or lat._leq[b, p]
               for a in base for b in base if lat._leq[prod[a, b], p]):
            out.append(p)
    return tuple(out)


def _relative_directed_laws(lat, prod, base, seed):
    """(vX)a = v{xa} and a(vX) = v{ax} for directed X inside the carrier."""
    k = len(base)
    if k <= FULL_SWEEP_MAX:
        subsets = range(1, 1 << k)
        pick = lambda m: [base[i] for i in bits(m)]
    else:
        samples = [s for s in _law_samples(k, seed) if s]
        subsets = range(len(samples))
        pick = lambda i: [base[j] for j in samples[i]]
    for key in subsets:
        xs = pick(key)
        j = lat.join_all(xs)
        if j not in xs:
            continue  # not directed
        for a in base:
            left = lat.join_all(int(prod[x, a]) for x in xs)
            if int(prod[j, a]) != left:
                raise errors.NotSubQuasiQuantale(
                    f"right law fails for subset {xs} and {a}")
            right = lat.join_all(int(prod[a, x]) for x in xs)
            if int(prod[a, j]) != right:
                raise errors.NotSubQuasiQuantale(
                    f"left law fails for subset {xs} and {a}")


@dataclass
class SpectrumSpace:
    """A point space over submodules plus the indexing adjunction."""

    kind: str
    module: object
    base: SubmoduleLattice
    point_masks: tuple
    space: FiniteSpace
    opens: SpaceOpensLattice
    indexing: MonotoneMap
    coindexing: MonotoneMap
    nucleus: ClosureReport
    open_of: tuple
    fixed_masks: tuple
    fixed_lattice: FiniteLattice
    extras: dict = field(default_factory=dict)


def _build_spectrum(M, kind, point_masks, product_table=None, seed=0):
    fil = fully_invariant_lattice(M)
    lat = fil.lattice
    open_of = tuple(
        mask_of(i for i, pm in enumerate(point_masks) if fil.masks[a] & ~pm != 0)
        for a in range(lat.n))
    space = FiniteSpace(len(point_masks), set(open_of),
                        labels=[M.submodule_label(pm) for pm in point_masks])
    opens = open_set_lattice(space)
    indexing = MonotoneMap(lat, opens.lattice, [opens.index_of[m] for m in open_of])
    coidx = adjoint(indexing)
    nuc_map = coidx.compose(indexing)
    report = classify_closure(lat, nuc_map, product=product_table, seed=seed)
    if not (report.inflator and report.idempotent):
        raise RuntimeError("hull-kernel composite must be an idempotent inflator")
    fixed_lat = lat.sublattice(report.fixed_indices)
    fixed_masks = tuple(fil.masks[i] for i in report.fixed_indices)
    return SpectrumSpace(kind, M, fil, tuple(point_masks), space, opens,
                         indexing, coidx, report, open_of, fixed_masks, fixed_lat)


def _sorted_point_masks(masks):
    return tuple(sorted(masks, key=lambda m: (popcount(m), m)))


def _check_indexing_meets(ss):
    """The indexing map must also preserve binary meets (it preserves joins
    by the adjoint construction)."""
    lat = ss.base.lattice
    f = ss.indexing.table
    opens = ss.opens.lattice
    for a in range(lat.n):
        for b in range(lat.n):
            if f[lat.meet(a, b)] != opens.meet(f[a], f[b]):
                raise RuntimeError(f"indexing fails a meet at ({a},{b})")


@functools.lru_cache(maxsize=None)
def spec_space(M):
    """Spec(M): prime fully invariant submodules with the Zariski-like
    topology, the nucleus mu, and the semiprime frame SP(M) as fixed points.
    """
    mq = quantale_of_submodules(M)
    primes = _sorted_point_masks(prime_submodule_masks(M))
    ss = _build_spectrum(M, "spec", primes, product_table=mq.quantale.product)
    _check_indexing_meets(ss)
    fil = ss.base
    if ss.nucleus.multiplicative is not True:
        raise RuntimeError("mu must be a multiplicative nucleus")
    if not ss.nucleus.nucleus:
        raise RuntimeError("mu must be a nucleus")
    # mu(N) is the meet of the primes above N (and the greatest base element
    # below that meet, which here coincides since the meet is fully invariant)
    t = ss.nucleus.map.table
    for a, amask in enumerate(fil.masks):
        expected = M.full_mask
        for pm in primes:
            if amask & ~pm == 0:
                expected &= pm
        if fil.masks[t[a]] != expected:
            raise RuntimeError(f"mu disagrees with the prime intersection at {a}")
    semi = {m for m in fil.masks
            if m != M.full_mask
            and is_semiprime(M, M.submodule(m, check=False), cross_check=False)}
    if set(ss.fixed_masks) != semi | {M.full_mask}:
        raise RuntimeError("SP(M) differs from the semiprime submodules plus M")
    cls = classify_lattice(ss.fixed_lattice)
    if not cls.frame:
        raise RuntimeError("SP(M) failed the frame test")
    ok, wit = is_spatial(ss.fixed_lattice)
    if not ok:
        raise RuntimeError(f"SP(M) failed spatiality at {wit}")
    sob = is_sober(ss.space)
    if not sob.sober:
        raise RuntimeError(f"Spec(M) is not sober: {sob.violations}")
    ss.extras["sober"] = True
    return ss


@functools.lru_cache(maxsize=None)
def max_space(M):
    """mx(M): maximal submodules with hull-kernel opens m(N) for N fully
    invariant; the nucleus tau and the semiprimitive frame SPm(M).

    Order-theoretic facts (tau's intersection formula, the frame
    isomorphism with the opens of the space) are asserted always; the
    facts that rest on projectivity are asserted under the probe.
    """
    if M.size <= 1:
        raise errors.PreconditionError("the zero module has no maximal submodules")
    probe = self_projective_probe(M)
    table = None
    if probe:
        table = quantale_of_submodules(M).quantale.product
    mxm = _sorted_point_masks(maximal_submodules(M))
    ss = _build_spectrum(M, "max", mxm, product_table=table)
    fil = ss.base
    t = ss.nucleus.map.table
    for a, amask in enumerate(fil.masks):
        inter = M.full_mask
        for pm in mxm:
            if amask & ~pm == 0:
                inter &= pm
        largest_fi = M.zero_mask
        for m in fil.masks:
            if m & ~inter == 0:
                largest_fi = M.closure_of_mask(largest_fi | m)
        if fil.masks[t[a]] != largest_fi:
            raise RuntimeError(f"tau is not the largest fi submodule inside the"
                               f" maximal intersection at {a}")
    _check_frame_iso(ss)
    if probe:
        _check_indexing_meets(ss)
        if ss.nucleus.multiplicative is not True:
            raise RuntimeError("tau must be a multiplicative nucleus")
        if not ss.nucleus.nucleus:
            raise RuntimeError("tau must be a nucleus")
        cls = classify_lattice(ss.fixed_lattice)
        if not cls.frame:
            raise RuntimeError("SPm(M) failed the frame test")
        ok, wit = is_spatial(ss.fixed_lattice)
        if not ok:
            raise RuntimeError(f"SPm(M) failed spatiality at {wit}")
        _check_semiprimitive_carrier(M, ss)
        _check_annihilator_formulas(M, ss, mxm)
        prt = {P.mask for P in primitive_submodules(M)}
        if not prt <= set(ss.fixed_masks):
            raise RuntimeError("a primitive submodule escaped the fixed points")
    return ss


def _check_frame_iso(ss):
    """m restricted to the fixed points must be an order isomorphism onto
    the opens lattice, preserving meets and joins."""
    fixed = ss.nucleus.fixed_indices
    lat = ss.base.lattice
    opens_lat = ss.opens.lattice
    imgs = [ss.indexing.table[a] for a in fixed]
    if sorted(imgs) != list(range(opens_lat.n)):
        raise RuntimeError("fixed points do not biject with the opens")
    flat = ss.fixed_lattice
    pos = {a: i for i, a in enumerate(fixed)}
    for a in fixed:
        for b in fixed:
            if bool(flat._leq[pos[a], pos[b]]) != bool(
                    opens_lat._leq[imgs[pos[a]], imgs[pos[b]]]):
                raise RuntimeError("frame isomorphism fails to preserve order")
    for a in fixed:
        for b in fixed:
            fm = flat.meet(pos[a], pos[b])
            fj = flat.join(pos[a], pos[b])
            if opens_lat.meet(imgs[pos[a]], imgs[pos[b]]) != imgs[fm]:
                raise RuntimeError("frame isomorphism fails a meet")
            if opens_lat.join(imgs[pos[a]], imgs[pos[b]]) != imgs[fj]:
                raise RuntimeError("frame isomorphism fails a join")


def _check_semiprimitive_carrier(M, ss):
    """Fixed points = intersections of primitive submodules, plus M."""
    prt = [P.mask for P in primitive_submodules(M)]
    inters = set()
    for selector in range(1, 1 << len(prt)):
        cur = M.full_mask
        for i in bits(selector):
            cur &= prt[i]
        inters.add(cur)
    expected = inters | {M.full_mask}
    if set(ss.fixed_masks) != expected:
        raise RuntimeError("SPm(M) differs from the semiprimitive submodules plus M")


def _check_annihilator_formulas(M, ss, mxm):
    """K = meet of Ann(M/Mx) over maximals above K, for proper fixed K; and
    the two maximal-intersection formulas agree for every proper fi K."""
    ann_of_max = {}
    for pm in mxm:
        Q, _ = quotient_module(M, M.submodule(pm, check=False))
        ann_of_max[pm] = annihilator(M, Q).mask
    for kmask in ss.base.masks:
        if kmask == M.full_mask:
            continue
        above = [pm for pm in mxm if kmask & ~pm == 0]
        inter_ann = M.full_mask
        inter_max = M.full_mask
        for pm in above:
            inter_ann &= ann_of_max[pm]
            inter_max &= pm
        if inter_ann != inter_max:
            raise RuntimeError(
                f"annihilator and maximal intersections disagree above "
                f"{M.submodule_label(kmask)}")
        if kmask in set(ss.fixed_masks) and kmask != inter_ann:
            raise RuntimeError(
                f"semiprimitive {M.submodule_label(kmask)} is not the "
                f"intersection of its maximal annihilators")


@dataclass
class PointComparison:
    prt_masks: tuple
    pt_spm_masks: tuple
    spec_masks: tuple | None
    mx_masks: tuple
    chain_ok: bool | None
    simpf_applied: bool
    pmpt_applied: bool


def pt_prt_compare(M):
    """prt(M) against the points of SPm(M) and Spec(M).

    Under the probe the chain prt <= pt(SPm) <= Spec is asserted; with
    exhaustive simples the first inclusion tightens to equality, and on a
    pm-module all three coincide with mx(M).
    """
    ss = max_space(M)
    preds = module_predicates(M)
    prt = _sorted_point_masks(P.mask for P in primitive_submodules(M))
    flat = ss.fixed_lattice
    carrier = flat.ambient_carrier
    pt_masks = _sorted_point_masks(
        ss.base.masks[carrier[p]] for p in points(flat))
    spec_masks = None
    chain_ok = None
    if preds.self_projective_probe:
        spec_masks = _sorted_point_masks(prime_submodule_masks(M))
        chain_ok = set(prt) <= set(pt_masks) <= set(spec_masks)
        if not chain_ok:
            raise RuntimeError("point chain prt <= pt(SPm) <= Spec fails")
    simpf = preds.self_projective_probe and preds.simples_exhaustive
    if simpf and set(pt_masks) != set(prt):
        raise RuntimeError("exhaustive simples but pt(SPm) != prt")
    pmpt = preds.self_projective_probe and preds.pm_module
    mx_masks = _sorted_point_masks(maximal_submodules(M))
    if pmpt and not (set(pt_masks) == set(prt) == set(mx_masks)):
        raise RuntimeError("pm-module without pt(SPm) = prt = mx")
    return PointComparison(prt, pt_masks, spec_masks, mx_masks,
                           chain_ok, simpf, pmpt)


@dataclass
class MxSobrietyReport:
    sober: bool
    violations: tuple
    t0: bool
    t1: bool
    quasi_duo: bool
    pt_equals_prt: bool
    probe: bool
    tauprim_ok: bool | None
    qdmax_ok: bool | None
    direction1_ok: bool | None
    direction2_ok: bool | None


def mx_sobriety_report(M):
    """Sobriety of mx(M) against the semiprimitive point space.

    Under the probe: the closure of each maximal submodule is the closed
    set of its quotient annihilator; quasi-duo, T1 and T0 agree; sobriety
    forces pt(SPm) = prt; and quasi-duo plus pt(SPm) = prt forces
    sobriety.  Violations raise.
    """
    ss = max_space(M)
    sob = is_sober(ss.space)
    sep = separation(ss.space)
    preds = module_predicates(M)
    cmp = pt_prt_compare(M)
    pt_eq_prt = set(cmp.pt_spm_masks) == set(cmp.prt_masks)
    probe = preds.self_projective_probe
    tauprim_ok = qdmax_ok = d1 = d2 = None
    if probe:
        tauprim_ok = True
        for i, pm in enumerate(ss.point_masks):
            Q, _ = quotient_module(M, M.submodule(pm, check=False))
            ann = annihilator(M, Q)
            open_mask = ss.open_of[ss.base.index[ann.mask]]
            closed = ss.space.full & ~open_mask
            if ss.space.point_closure(i) != closed:
                tauprim_ok = False
        if not tauprim_ok:
            raise RuntimeError("maximal closure formula fails")
        qdmax_ok = (preds.quasi_duo == sep.t1 == sep.t0)
        if not qdmax_ok:
            raise RuntimeError("quasi-duo / T1 / T0 equivalence fails")
        d1 = (not sob.sober) or pt_eq_prt
        if not d1:
            raise RuntimeError("sober mx(M) without pt(SPm) = prt")
        d2 = not (preds.quasi_duo and pt_eq_prt) or sob.sober
        if not d2:
            raise RuntimeError("quasi-duo with pt(SPm) = prt but mx(M) not sober")
    return MxSobrietyReport(sob.sober, sob.violations, sep.t0, sep.t1,
                            preds.quasi_duo, pt_eq_prt, probe,
                            tauprim_ok, qdmax_ok, d1, d2)
