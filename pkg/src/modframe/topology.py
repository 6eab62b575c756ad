"""Finite topological spaces and the frame <-> space constructions.

Point subsets are bitmasks in the space's fixed point order.  Closed sets
are materialised as complements of opens; closures are smallest closed
supersets.
"""

from dataclasses import dataclass

from . import errors
from ._util import bits, mask_of, popcount
from .order import FiniteLattice, MonotoneMap, classify_lattice, points


class FiniteSpace:
    """A finite point set with an explicit family of open subsets."""

    def __init__(self, n, opens, labels=None):
        self.n = int(n)
        self.full = (1 << self.n) - 1
        opens = set(int(m) for m in opens)
        if 0 not in opens or self.full not in opens:
            raise errors.PreconditionError("opens must contain the empty and full sets")
        for u in opens:
            if u & ~self.full:
                raise errors.PreconditionError("open set outside the point range")
            for v in opens:
                if (u | v) not in opens:
                    raise errors.PreconditionError(
                        f"opens not closed under union: {u:b} | {v:b}")
                if (u & v) not in opens:
                    raise errors.PreconditionError(
                        f"opens not closed under intersection: {u:b} & {v:b}")
        self.opens = tuple(sorted(opens, key=lambda m: (popcount(m), m)))
        self._open_set = opens
        self._labels = list(labels) if labels is not None else None

    def label(self, i):
        if self._labels is not None:
            return self._labels[i]
        return str(i)

    def is_open(self, mask):
        return mask in self._open_set

    def closed_sets(self):
        return tuple(sorted((self.full & ~u for u in self.opens),
                            key=lambda m: (popcount(m), m)))

    def closure(self, mask):
        """Smallest closed superset of mask."""
        out = self.full
        for u in self.opens:
            c = self.full & ~u
            if mask & ~c == 0:
                out &= c
        return out

    def point_closure(self, i):
        return self.closure(1 << i)

    def specialization_leq(self, x, y):
        """x lies in the closure of y."""
        return bool((self.point_closure(y) >> x) & 1)

    def __repr__(self):
        return f"FiniteSpace(n={self.n}, opens={len(self.opens)})"


@dataclass
class SpaceOpensLattice:
    lattice: FiniteLattice
    masks: tuple
    index_of: dict


def open_set_lattice(space):
    """The opens of a space ordered by inclusion; verified to be a frame."""
    masks = list(space.opens)
    labels = ["{" + ",".join(space.label(i) for i in bits(m)) + "}" for m in masks]
    lat = FiniteLattice.from_subsets(masks, labels=labels)
    if not classify_lattice(lat).frame:
        raise RuntimeError("a topology failed the frame test")
    return SpaceOpensLattice(lat, tuple(masks), {m: i for i, m in enumerate(masks)})


@dataclass
class SpaceFrameBridge:
    """A frame, its point space, and the indexing morphism between them."""

    frame: FiniteLattice
    space: FiniteSpace
    opens: SpaceOpensLattice
    indexing: MonotoneMap
    point_elements: tuple  # frame elements serving as points, in space order
    open_mask_of: tuple    # frame element -> open bitmask


def _hull_kernel_masks(lat, point_elems):
    """mask(a) has bit i exactly when a is not below the i-th point."""
    return tuple(
        mask_of(i for i, p in enumerate(point_elems) if not lat._leq[a, p])
        for a in range(lat.n)
    )


def pt_space(lat):
    """Point space of a frame with its hull-kernel topology.

    Returns the bridge carrying the indexing morphism; the constructed
    space is checked to be sober.
    """
    if not classify_lattice(lat).frame:
        raise errors.NotAFrame("pt requires a frame")
    pts = points(lat)
    masks = _hull_kernel_masks(lat, pts)
    space = FiniteSpace(len(pts), set(masks), labels=[lat.label(p) for p in pts])
    opens = open_set_lattice(space)
    indexing = MonotoneMap(lat, opens.lattice, [opens.index_of[m] for m in masks])
    _check_frame_morphism(lat, opens.lattice, indexing)
    bridge = SpaceFrameBridge(lat, space, opens, indexing, pts, masks)
    sob = is_sober(space)
    if not sob.sober:
        raise RuntimeError("point space of a frame must be sober")
    return bridge


def _check_frame_morphism(src, dst, f):
    t = f.table
    if t[src.bottom] != dst.bottom or t[src.top] != dst.top:
        raise RuntimeError("indexing map must preserve bounds")
    for a in range(src.n):
        for b in range(src.n):
            if t[src.join(a, b)] != dst.join(t[a], t[b]):
                raise RuntimeError(f"indexing map fails a join at ({a},{b})")
            if t[src.meet(a, b)] != dst.meet(t[a], t[b]):
                raise RuntimeError(f"indexing map fails a meet at ({a},{b})")
    if set(t) != set(range(dst.n)):
        raise RuntimeError("indexing map must be onto the opens")


def is_spatial(lat):
    """Whether the hull-kernel indexing is injective; witness pair on failure."""
    if not classify_lattice(lat).frame:
        raise errors.NotAFrame("spatiality is a frame property")
    masks = _hull_kernel_masks(lat, points(lat))
    seen = {}
    for a, m in enumerate(masks):
        if m in seen:
            return False, (seen[m], a)
        seen[m] = a
    return True, None


def closed_irreducibles(space):
    """Nonempty closed sets meeting U and V only through U n V."""
    out = []
    for c in space.closed_sets():
        if c == 0:
            continue
        ok = True
        for u in space.opens:
            if not c & u:
                continue
            for v in space.opens:
                if c & v and not (c & u & v):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            out.append(c)
    return tuple(sorted(out, key=lambda m: (popcount(m), m)))


@dataclass
class SoberReport:
    sober: bool
    violations: tuple  # (closed set mask, generic point indices)

    def generic_points(self, space, mask):
        return tuple(s for s in range(space.n) if space.point_closure(s) == mask)


def is_sober(space):
    """Every closed irreducible must be the closure of exactly one point."""
    bad = []
    for c in closed_irreducibles(space):
        gens = tuple(s for s in range(space.n) if space.point_closure(s) == c)
        if len(gens) != 1:
            bad.append((c, gens))
    return SoberReport(not bad, tuple(bad))


def soberification(space):
    """Sober reflection: points are the closed irreducibles of the space.

    Returns (sober space, point map) where the map sends each point to
    its closure.  The result is checked sober, the map continuous, and
    the point space of the opens lattice homeomorphic to the result via
    complementation.
    """
    irr = closed_irreducibles(space)
    index = {c: i for i, c in enumerate(irr)}
    opens = set()
    for u in space.opens:
        opens.add(mask_of(i for i, c in enumerate(irr) if c & u))
    labels = ["{" + ",".join(space.label(i) for i in bits(c)) + "}" for c in irr]
    sob = FiniteSpace(len(irr), opens, labels=labels)
    zeta = tuple(index[space.point_closure(s)] for s in range(space.n))
    if not is_sober(sob).sober:
        raise RuntimeError("soberification is not sober")
    for u in space.opens:
        nat = mask_of(i for i, c in enumerate(irr) if c & u)
        preimage = mask_of(s for s in range(space.n) if (nat >> zeta[s]) & 1)
        if preimage != u:
            raise RuntimeError("soberification map is not continuous")
    _check_point_complement_homeo(space, sob, irr)
    return sob, zeta


def _check_point_complement_homeo(space, sob, irr):
    """pt(O(S)) -> sob(S) by complementation must be a homeomorphism."""
    opens = open_set_lattice(space)
    lat = opens.lattice
    pts = points(lat)
    comp = [space.full & ~opens.masks[p] for p in pts]
    if sorted(comp) != sorted(irr):
        raise RuntimeError("complements of lattice points differ from the irreducibles")
    irr_pos = {c: i for i, c in enumerate(irr)}
    send = [irr_pos[c] for c in comp]
    if len(set(send)) != len(send):
        raise RuntimeError("complementation is not injective on points")
    hk = _hull_kernel_masks(lat, pts)
    pt_opens = {m for m in hk}
    image_opens = {mask_of(send[i] for i in bits(m)) for m in pt_opens}
    if image_opens != set(sob.opens):
        raise RuntimeError("complementation is not a homeomorphism")


@dataclass
class SeparationReport:
    t0: bool
    t1: bool


def separation(space):
    closures = [space.point_closure(i) for i in range(space.n)]
    t0 = len(set(closures)) == space.n
    t1 = all(closures[i] == 1 << i for i in range(space.n))
    return SeparationReport(t0, t1)


def find_homeomorphism(a, b):
    """Bijection of points matching the open families, or None.

    Exhaustive search pruned by closure/open-membership signatures;
    intended for desk-scale spaces (at most a dozen points).
    """
    if a.n != b.n:
        return None
    if sorted(popcount(u) for u in a.opens) != sorted(popcount(u) for u in b.opens):
        return None

    def signature(space, i):
        return (
            popcount(space.point_closure(i)),
            tuple(sorted(popcount(u) for u in space.opens if (u >> i) & 1)),
        )

    sig_a = [signature(a, i) for i in range(a.n)]
    sig_b = [signature(b, i) for i in range(b.n)]
    if sorted(sig_a) != sorted(sig_b):
        return None
    assign = [-1] * a.n
    used = [False] * b.n
    b_opens = set(b.opens)

    def rec(i):
        if i == a.n:
            for u in a.opens:
                if mask_of(assign[x] for x in bits(u)) not in b_opens:
                    return False
            return True
        for j in range(b.n):
            if used[j] or sig_a[i] != sig_b[j]:
                continue
            assign[i] = j
            used[j] = True
            if rec(i + 1):
                return True
            used[j] = False
            assign[i] = -1
        return False

    if rec(0):
        return tuple(assign)
    return None


# -- stock spaces -----------------------------------------------------------


def sierpinski():
    """Two points; exactly one of them open."""
    return FiniteSpace(2, {0b00, 0b01, 0b11}, labels=["a", "b"])


def discrete(n):
    return FiniteSpace(n, set(range(1 << n)))


def indiscrete(n):
    return FiniteSpace(n, {0, (1 << n) - 1})


def empty_space():
    return FiniteSpace(0, {0})
