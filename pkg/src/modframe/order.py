"""Finite complete lattices: classification, adjoints and closure operators.

Elements are canonical indices 0..n-1; the order is an explicit boolean
table fixed at construction, so every enumeration is reproducible.  All
objects are immutable after construction and all operations are pure.
"""

import random
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import _kernels as K
from . import errors
from ._util import bits, mask_of

# Full subset sweeps run up to 2^FULL_SWEEP_MAX subsets; beyond that the
# distributivity laws are checked on pairs plus SAMPLE_COUNT seeded random
# subsets.  Pairs already decide distributivity on a finite lattice, the
# sweep is a belt-and-suspenders pass over arbitrary subsets.
FULL_SWEEP_MAX = 20
# The directedness tripwire in compact_elements inspects pairs inside each
# subset, which is too costly at 2^20; it gets its own smaller bound.
DIRECTED_SWEEP_MAX = 14
SAMPLE_COUNT = 10_000


def _law_samples(n, seed, count=SAMPLE_COUNT):
    """Deterministic subset samples: empty, singletons, pairs, then random."""
    samples = [()]
    samples.extend((i,) for i in range(n))
    samples.extend((i, j) for i in range(n) for j in range(i + 1, n))
    rng = random.Random(seed)
    for _ in range(count):
        m = rng.getrandbits(n)
        samples.append(tuple(bits(m)))
    return samples


class FiniteLattice:
    """A finite poset with all meets and joins, hence a complete lattice."""

    def __init__(self, leq, labels=None):
        mat = np.ascontiguousarray(np.asarray(leq, dtype=bool), dtype=np.intc)
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
            raise errors.NotALattice("leq must be a square table")
        n = mat.shape[0]
        if n == 0:
            raise errors.NotALattice("a complete lattice cannot be empty")
        bad = K.order_violation(mat)
        if bad is not None:
            raise errors.NotALattice(f"leq is not a partial order ({bad[0]})", bad[1:])
        meet, join = K.meet_join_tables(mat)
        if (meet < 0).any():
            i, j = map(int, np.argwhere(meet < 0)[0])
            raise errors.NotALattice("pair has no meet", (i, j))
        if (join < 0).any():
            i, j = map(int, np.argwhere(join < 0)[0])
            raise errors.NotALattice("pair has no join", (i, j))
        self.n = n
        self._leq = mat
        self._meet = meet
        self._join = join
        self.bottom = int(np.flatnonzero(mat.all(axis=1))[0])
        self.top = int(np.flatnonzero(mat.all(axis=0))[0])
        self._labels = list(labels) if labels is not None else None
        self._leq.setflags(write=False)
        self._meet.setflags(write=False)
        self._join.setflags(write=False)

    # -- constructors ----------------------------------------------------

    @classmethod
    def from_subsets(cls, masks, labels=None):
        """Lattice of the given bitmask family ordered by inclusion.

        The family must be closed under the induced meets/joins; the
        constructor validates.  Masks are kept in the given order.
        """
        masks = list(masks)
        n = len(masks)
        leq = [[(masks[i] & ~masks[j]) == 0 for j in range(n)] for i in range(n)]
        lat = cls(leq, labels=labels)
        lat.member_masks = tuple(masks)
        return lat

    @classmethod
    def chain(cls, n):
        return cls([[i <= j for j in range(n)] for i in range(n)])

    @classmethod
    def boolean(cls, k):
        """Powerset lattice of a k-element set."""
        masks = sorted(range(1 << k), key=lambda m: (popcount_int(m), m))
        return cls.from_subsets(masks)

    # -- basic order operations ------------------------------------------

    def leq(self, a, b):
        return bool(self._leq[a, b])

    def meet(self, a, b):
        return int(self._meet[a, b])

    def join(self, a, b):
        return int(self._join[a, b])

    def meet_all(self, elems):
        """Meet of a finite family; the empty meet is the top element."""
        out = self.top
        for x in elems:
            out = int(self._meet[out, x])
        return out

    def join_all(self, elems):
        """Join of a finite family; the empty join is the bottom element."""
        out = self.bottom
        for x in elems:
            out = int(self._join[out, x])
        return out

    def label(self, i):
        if self._labels is not None:
            return self._labels[i]
        return str(i)

    @property
    def labels(self):
        return [self.label(i) for i in range(self.n)]

    def covers(self):
        """Cover pairs (i, j) with j covering i, in index order."""
        lt = self._leq.astype(bool) & ~np.eye(self.n, dtype=bool)
        between = lt @ lt
        child = lt & ~between
        return [(int(i), int(j)) for i, j in np.argwhere(child)]

    def atoms(self):
        return sorted(j for i, j in self.covers() if i == self.bottom)

    def coatoms(self):
        return sorted(i for i, j in self.covers() if j == self.top)

    def down_mask(self, a):
        return mask_of(i for i in range(self.n) if self._leq[i, a])

    def is_closed_carrier(self, carrier):
        """True when carrier is closed under the ambient binary meet/join."""
        cs = set(carrier)
        return all(
            self.meet(a, b) in cs and self.join(a, b) in cs
            for a in cs for b in cs
        )

    def sublattice(self, carrier, labels=None):
        """Lattice induced on carrier (ascending); meets/joins recomputed.

        Raises NotALattice when the induced order lacks bounds.
        """
        carrier = sorted(carrier)
        sub = [[bool(self._leq[a, b]) for b in carrier] for a in carrier]
        lab = labels if labels is not None else [self.label(a) for a in carrier]
        lat = FiniteLattice(sub, labels=lab)
        lat.ambient_carrier = tuple(carrier)
        return lat

    def __repr__(self):
        return f"FiniteLattice(n={self.n})"


def popcount_int(m):
    return int(m).bit_count()


class MonotoneMap:
    """An order-preserving table map between finite lattices."""

    def __init__(self, source, target, table):
        table = tuple(int(x) for x in table)
        if len(table) != source.n:
            raise errors.NotMonotone(("length", len(table)))
        if any(not (0 <= v < target.n) for v in table):
            raise errors.NotMonotone(("range", table))
        for a in range(source.n):
            for b in range(source.n):
                if source._leq[a, b] and not target._leq[table[a], table[b]]:
                    raise errors.NotMonotone((a, b))
        self.source = source
        self.target = target
        self.table = table

    def __call__(self, a):
        return self.table[a]

    def compose(self, inner):
        """self after inner."""
        if inner.target is not self.source:
            raise errors.PreconditionError("composition domains do not match")
        return MonotoneMap(inner.source, self.target,
                           [self.table[v] for v in inner.table])

    def __repr__(self):
        return f"MonotoneMap({self.table})"


def identity_map(lat):
    return MonotoneMap(lat, lat, range(lat.n))


# -- classification -------------------------------------------------------


@dataclass(frozen=True)
class LatticeClassification:
    modular: bool
    distributive: bool
    idiom: bool
    frame: bool
    witnesses: dict = field(default_factory=dict, compare=False)


def _dist_sweep(lat, action, directed_only, seed):
    """Run action[a][vX] == v{action[a][x]} over subsets, full or sampled."""
    if lat.n <= FULL_SWEEP_MAX:
        return K.dist_witness_all(action, lat._join, lat.bottom, directed_only)
    samples = _law_samples(lat.n, seed)
    return K.dist_witness_samples(action, lat._join, lat.bottom, samples, directed_only)


def classify_lattice(lat, seed=0):
    """Modularity, distributivity, idiom and frame verdicts for a lattice.

    Upper continuity is checked, not assumed, even though it is automatic
    on finite lattices: a failing sweep means a malformed order table.
    The frame verdict is cross-checked against the arbitrary-subset
    distributive law.
    """
    wit = {}
    mod = K.modular_witness(lat._leq, lat._meet, lat._join)
    if mod is not None:
        wit["modular"] = mod
    dis = K.distributive_witness(lat._meet, lat._join)
    if dis is not None:
        wit["distributive"] = dis
    idl = _dist_sweep(lat, lat._meet, True, seed)
    if idl is not None:
        raise errors.NotALattice("upper continuity fails on a finite lattice", idl)
    fdl = _dist_sweep(lat, lat._meet, False, seed)
    modular = mod is None
    distributive = dis is None
    idiom = modular
    frame = distributive and idiom
    if (fdl is None) != distributive:
        raise RuntimeError(f"subset distributivity disagrees with the triple law: {fdl}")
    return LatticeClassification(modular, distributive, idiom, frame, wit)


def points(lat):
    """Meet-irreducible elements p != top: a ^ b <= p forces a <= p or b <= p."""
    leq = lat._leq
    meet = lat._meet
    out = []
    for p in range(lat.n):
        if p == lat.top:
            continue
        good = True
        for a in range(lat.n):
            if leq[a, p]:
                continue
            for b in range(lat.n):
                if leq[b, p]:
                    continue
                if leq[meet[a, b], p]:
                    good = False
                    break
            if not good:
                break
        if good:
            out.append(p)
    return tuple(out)


def compact_elements(lat, seed=0):
    """Elements c with c <= vX implying c <= vF for finite F.

    On a finite lattice every element is compact; the sweep below is a
    tripwire for malformed orders (a directed subset must contain its
    join) and the full-carrier result is asserted.
    """
    n = lat.n
    if n <= DIRECTED_SWEEP_MAX:
        subsets = ((m, tuple(bits(m))) for m in range(1, 1 << n))
    else:
        subsets = ((None, s) for s in _law_samples(n, seed) if s)
    for _, xs in subsets:
        directed = True
        for a in xs:
            for b in xs:
                if not any(lat._leq[a, u] and lat._leq[b, u] for u in xs):
                    directed = False
                    break
            if not directed:
                break
        if directed and lat.join_all(xs) not in xs:
            raise RuntimeError(f"directed subset without a maximum: {xs}")
    return tuple(range(n))


def distributive_elements(lat):
    """Elements a distributing over meets and joins of arbitrary pairs.

    Both symmetric conditions are evaluated; on a modular lattice their
    agreement is asserted.  The returned set satisfies both.
    """
    n = lat.n
    meet = lat._meet
    join = lat._join
    cond_join = set()
    cond_meet = set()
    for a in range(n):
        if all(join[a, meet[x, y]] == meet[join[a, x], join[a, y]]
               for x in range(n) for y in range(n)):
            cond_join.add(a)
        if all(meet[a, join[x, y]] == join[meet[a, x], meet[a, y]]
               for x in range(n) for y in range(n)):
            cond_meet.add(a)
    if K.modular_witness(lat._leq, meet, join) is None and cond_join != cond_meet:
        raise RuntimeError("distributive-element conditions disagree on a modular lattice")
    return tuple(sorted(cond_join & cond_meet))


def maximal_excluders(lat, m, carrier=None):
    """Maximal members of {x in carrier : m not<= x}.

    When the carrier sits inside the distributive part of the lattice,
    each result is verified to be a point of the induced sublattice.
    """
    if carrier is None:
        carrier = range(lat.n)
    carrier = sorted(set(carrier))
    if not lat.is_closed_carrier(carrier):
        raise errors.PreconditionError("carrier is not closed under meet/join")
    excl = [x for x in carrier if not lat._leq[m, x]]
    maximal = [x for x in excl
               if not any(y != x and lat._leq[x, y] for y in excl)]
    fl = set(distributive_elements(lat))
    if set(carrier) <= fl and maximal:
        sub = lat.sublattice(carrier)
        pos = {a: i for i, a in enumerate(carrier)}
        pts = set(points(sub))
        for x in maximal:
            if pos[x] not in pts:
                raise RuntimeError(f"maximal excluder {x} is not a point of the carrier")
    return tuple(maximal)


# -- adjunctions -----------------------------------------------------------


def adjoint(f):
    """Right adjoint of a join-preserving map; validates the adjunction.

    Raises NotJoinPreserving when f fails on the empty join or on a pair.
    """
    src, dst = f.source, f.target
    if f.table[src.bottom] != dst.bottom:
        raise errors.NotJoinPreserving(())
    for a in range(src.n):
        for b in range(src.n):
            if f.table[src.join(a, b)] != dst.join(f.table[a], f.table[b]):
                raise errors.NotJoinPreserving((a, b))
    table = []
    for b in range(dst.n):
        table.append(src.join_all(a for a in range(src.n)
                                  if dst._leq[f.table[a], b]))
    fstar = MonotoneMap(dst, src, table)
    for a in range(src.n):
        for b in range(dst.n):
            if bool(dst._leq[f.table[a], b]) != bool(src._leq[a, fstar.table[b]]):
                raise RuntimeError(f"adjunction law fails at ({a}, {b})")
    return fstar


# -- closure operators ------------------------------------------------------


@dataclass
class ClosureReport:
    """Classification of a lattice self-map and its fixed-point structure."""

    map: MonotoneMap
    inflator: bool
    deflator: bool
    idempotent: bool
    prenucleus: bool
    nucleus: bool
    quantic: Optional[bool]
    multiplicative: Optional[bool]
    fixed_indices: tuple
    fixed_points: Optional[FiniteLattice]
    fixed_is_idiom: Optional[bool] = None
    fixed_idiomatic_quantale: Optional[bool] = None

    @property
    def flags(self):
        return {
            "inflator": self.inflator,
            "deflator": self.deflator,
            "idempotent": self.idempotent,
            "prenucleus": self.prenucleus,
            "nucleus": self.nucleus,
            "quantic": self.quantic,
            "multiplicative": self.multiplicative,
        }


def classify_closure(lat, j, product=None, need_product_flags=False, seed=0):
    """Classify a monotone self-map: inflator/deflator/idempotent/prenucleus/
    nucleus, plus quantic/multiplicative when a product table is supplied.

    For a nucleus the fixed points are assembled as a lattice and checked
    to be an idiom; for a multiplicative nucleus whose images satisfy
    j(a).j(b) <= j(a)^j(b) the fixed points are additionally checked to be
    an idiomatic quantale under the induced product.
    """
    if j.source is not lat or j.target is not lat:
        raise errors.PreconditionError("closure map must be a self-map of the lattice")
    if need_product_flags and product is None:
        raise errors.ProductRequired("quantic/multiplicative flags need a product table")
    n = lat.n
    t = j.table
    leq = lat._leq
    meet = lat._meet
    inflator = all(leq[a, t[a]] for a in range(n))
    deflator = all(leq[t[a], a] for a in range(n))
    idempotent = all(t[t[a]] == t[a] for a in range(n))
    prenucleus = all(t[meet[a, b]] == meet[t[a], t[b]]
                     for a in range(n) for b in range(n))
    nucleus = inflator and idempotent and prenucleus
    quantic = multiplicative = None
    prod = None
    if product is not None:
        prod = K.as_table(product)
        quantic = inflator and idempotent and all(
            leq[prod[t[a], t[b]], t[prod[a, b]]]
            for a in range(n) for b in range(n))
        multiplicative = inflator and idempotent and all(
            meet[t[a], t[b]] == t[prod[a, b]]
            for a in range(n) for b in range(n))
    fixed = tuple(a for a in range(n) if t[a] == a)
    try:
        fixed_lat = lat.sublattice(fixed) if fixed else None
    except errors.NotALattice:
        fixed_lat = None
    report = ClosureReport(j, inflator, deflator, idempotent, prenucleus,
                           nucleus, quantic, multiplicative, fixed, fixed_lat)
    ambient_idiom = None
    if nucleus:
        if fixed_lat is None:
            raise RuntimeError("nucleus fixed points failed to form a lattice")
        report.fixed_is_idiom = classify_lattice(fixed_lat, seed=seed).idiom
        if not report.fixed_is_idiom:
            ambient_idiom = classify_lattice(lat, seed=seed).idiom
            if ambient_idiom:
                raise RuntimeError("nucleus fixed points are not an idiom")
    if multiplicative and prod is not None:
        ineq = all(leq[prod[t[a], t[b]], meet[t[a], t[b]]]
                   for a in range(n) for b in range(n))
        if ineq:
            report.fixed_idiomatic_quantale = _fixed_quantale_check(
                lat, report, prod, seed)
            if not report.fixed_idiomatic_quantale:
                if ambient_idiom is None:
                    ambient_idiom = classify_lattice(lat, seed=seed).idiom
                if ambient_idiom:
                    raise RuntimeError(
                        "multiplicative nucleus fixed points fail the quantale laws")
    return report


def _fixed_quantale_check(lat, report, prod, seed):
    """Induced product on the fixed points must give an idiomatic quantale."""
    fixed = report.fixed_indices
    fixed_lat = report.fixed_points
    if fixed_lat is None:
        return False
    t = report.map.table
    pos = {a: i for i, a in enumerate(fixed)}
    k = len(fixed)
    p = [[pos[t[prod[fixed[i], fixed[j]]]] for j in range(k)] for i in range(k)]
    if K.triple_assoc_witness(p) is not None:
        return False
    cls = classify_lattice(fixed_lat, seed=seed)
    if not cls.idiom:
        return False
    pT = [[p[j][i] for j in range(k)] for i in range(k)]
    left = _dist_sweep(fixed_lat, np.asarray(p, dtype=np.intc), False, seed)
    right = _dist_sweep(fixed_lat, np.asarray(pT, dtype=np.intc), False, seed)
    return left is None and right is None
