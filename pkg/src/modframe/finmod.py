"""Finite rings and modules given by explicit operation tables.

Everything is index-based: a ring or module of size n has elements
0..n-1, addition and action are lookup tables, and submodules are
bitmasks over the element order fixed at construction.  Validation is
exact: abelian-group axioms use Light's test on a greedy additive
generating set, bilinear laws are reduced to generator sweeps, which
keeps construction near-quadratic instead of cubic.
"""

import functools
import itertools
from dataclasses import dataclass, field

import numpy as np

from . import _kernels as K
from . import errors
from ._util import bits, mask_of, popcount
from .order import FiniteLattice, classify_lattice


@dataclass(frozen=True)
class Caps:
    """Enumeration limits; exceeding any raises SizeCapExceeded."""

    max_size: int = 4096
    max_hom_candidates: int = 1_000_000
    max_submodules: int = 4096


DEFAULT_CAPS = Caps()

_EMPTY_ACT = np.zeros((0, 0), dtype=np.intc)


def _as_op_table(t, n, what):
    a = np.ascontiguousarray(t, dtype=np.intc)
    if a.shape != (n, n) or (a < 0).any() or (a >= n).any():
        raise errors.InvalidTables(what, "table shape/range", a.shape)
    return a


def _additive_generators(add, zero):
    """Greedy generating set of (X, +): repeatedly adjoin the first element
    outside the current span."""
    n = add.shape[0]
    span = [0] * n
    span[zero] = 1
    gens = []
    for x in range(n):
        if not span[x]:
            gens.append(x)
            seed = list(span)
            seed[x] = 1
            span = K.submodule_closure(add, _EMPTY_ACT, seed, zero)
    return gens


def _check_abelian_group(add, zero, structure):
    n = add.shape[0]
    for x in range(n):
        if add[zero, x] != x:
            raise errors.InvalidTables(structure, "identity", (zero, x, int(add[zero, x])))
    if (add != add.T).any():
        i, j = map(int, np.argwhere(add != add.T)[0])
        raise errors.InvalidTables(structure, "commutativity", (i, j, j))
    no_inverse = np.flatnonzero(~(add == zero).any(axis=1))
    if no_inverse.size:
        x = int(no_inverse[0])
        raise errors.InvalidTables(structure, "inverses", (x, x, x))
    gens = _additive_generators(add, zero)
    w = K.light_assoc_witness(add, gens)
    if w is not None:
        raise errors.InvalidTables(structure, "associativity", w)
    return gens


class FiniteRing:
    """An associative unital ring on 0..n-1 with explicit add/mul tables."""

    def __init__(self, add, mul, zero, one, labels=None, name=None,
                 caps=DEFAULT_CAPS, validate=True):
        add = np.ascontiguousarray(add, dtype=np.intc)
        n = add.shape[0]
        if n > caps.max_size:
            raise errors.SizeCapExceeded(f"ring of size {n} exceeds cap {caps.max_size}")
        self.size = n
        self.add = _as_op_table(add, n, "ring add")
        self.mul = _as_op_table(mul, n, "ring mul")
        self.zero = int(zero)
        self.one = int(one)
        self.caps = caps
        self.name = name or f"ring{n}"
        self._labels = list(labels) if labels is not None else None
        if validate:
            gens = _check_abelian_group(self.add, self.zero, "ring")
            self._add_gens = gens
            for c in range(n):
                w = K.unary_additive_witness(self.add, self.add,
                                             self.mul[:, c].tolist(), gens)
                if w is not None:
                    raise errors.InvalidTables("ring", "right distributivity", (*w, c))
                w = K.unary_additive_witness(self.add, self.add,
                                             self.mul[c, :].tolist(), gens)
                if w is not None:
                    raise errors.InvalidTables("ring", "left distributivity", (c, *w))
            for a in gens or [self.zero]:
                for b in gens or [self.zero]:
                    for c in gens or [self.zero]:
                        if self.mul[self.mul[a, b], c] != self.mul[a, self.mul[b, c]]:
                            raise errors.InvalidTables("ring", "associativity", (a, b, c))
            for x in range(n):
                if self.mul[self.one, x] != x or self.mul[x, self.one] != x:
                    raise errors.InvalidTables("ring", "unit", (self.one, x, x))
        else:
            self._add_gens = None
        self.add.setflags(write=False)
        self.mul.setflags(write=False)

    @property
    def additive_generators(self):
        if self._add_gens is None:
            self._add_gens = _additive_generators(self.add, self.zero)
        return self._add_gens

    @functools.cached_property
    def commutative(self):
        return bool((self.mul == self.mul.T).all())

    @functools.cached_property
    def neg(self):
        return tuple(int(np.flatnonzero(self.add[x] == self.zero)[0])
                     for x in range(self.size))

    def label(self, i):
        if self._labels is not None:
            return self._labels[i]
        return str(i)

    @functools.cached_property
    def central_idempotents(self):
        out = []
        for e in range(self.size):
            if self.mul[e, e] == e and (self.mul[e, :] == self.mul[:, e]).all():
                out.append(e)
        return tuple(out)

    def two_sided_ideal(self, a):
        """Bitmask of the two-sided ideal generated by a."""
        act = np.vstack([self.mul, self.mul.T]).astype(np.intc)
        seed = [0] * self.size
        seed[a] = 1
        members = K.submodule_closure(self.add, act, seed, self.zero)
        return mask_of(i for i, m in enumerate(members) if m)

    def __repr__(self):
        return f"FiniteRing({self.name}, size={self.size})"


def zmod(n, caps=DEFAULT_CAPS):
    """The ring of integers modulo n."""
    if n < 1:
        raise errors.PreconditionError("modulus must be positive")
    idx = np.arange(n)
    add = (idx[:, None] + idx[None, :]) % n
    mul = (idx[:, None] * idx[None, :]) % n
    return FiniteRing(add, mul, 0, 1 % n, labels=[str(i) for i in range(n)],
                      name=f"Z{n}", caps=caps)


def ring_product(rings, caps=DEFAULT_CAPS):
    """Direct product with componentwise operations; elements mixed-radix."""
    sizes = [r.size for r in rings]
    total = 1
    for s in sizes:
        total *= s
    if total > caps.max_size:
        raise errors.SizeCapExceeded(f"product ring of size {total}")

    def decode(i):
        out = []
        for s in reversed(sizes):
            out.append(i % s)
            i //= s
        return tuple(reversed(out))

    def encode(t):
        i = 0
        for s, v in zip(sizes, t):
            i = i * s + v
        return i

    elems = [decode(i) for i in range(total)]
    add = [[encode(tuple(int(r.add[a, b]) for r, a, b in zip(rings, x, y)))
            for y in elems] for x in elems]
    mul = [[encode(tuple(int(r.mul[a, b]) for r, a, b in zip(rings, x, y)))
            for y in elems] for x in elems]
    zero = encode(tuple(r.zero for r in rings))
    one = encode(tuple(r.one for r in rings))
    labels = ["(" + ",".join(r.label(v) for r, v in zip(rings, t)) + ")" for t in elems]
    name = "x".join(r.name for r in rings)
    return FiniteRing(add, mul, zero, one, labels=labels, name=name, caps=caps)


def matrix_ring(n, q, caps=DEFAULT_CAPS):
    """n x n matrices over the prime field F_q, q in {2, 3}."""
    if q not in (2, 3):
        raise errors.PreconditionError("matrix rings are supported over F_2 and F_3")
    cells = n * n
    total = q ** cells
    if total > caps.max_size:
        raise errors.SizeCapExceeded(f"matrix ring of size {total}")

    def decode(i):
        m = []
        for _ in range(cells):
            m.append(i % q)
            i //= q
        return tuple(m)  # row-major: m[r*n+c]

    def encode(m):
        i = 0
        for v in reversed(m):
            i = i * q + v
        return i

    elems = [decode(i) for i in range(total)]
    add = [[encode(tuple((a + b) % q for a, b in zip(x, y))) for y in elems]
           for x in elems]

    def mmul(x, y):
        out = []
        for r in range(n):
            for c in range(n):
                s = 0
                for k in range(n):
                    s += x[r * n + k] * y[k * n + c]
                out.append(s % q)
        return tuple(out)

    mul = [[encode(mmul(x, y)) for y in elems] for x in elems]
    zero = encode(tuple([0] * cells))
    one = encode(tuple(1 if r == c else 0 for r in range(n) for c in range(n)))
    labels = ["[" + ";".join(",".join(str(x[r * n + c]) for c in range(n))
                             for r in range(n)) + "]" for x in elems]
    return FiniteRing(add, mul, zero, one, labels=labels,
                      name=f"M{n}(F{q})", caps=caps)


def ring_from_tables(add, mul, zero, one, labels=None, caps=DEFAULT_CAPS):
    return FiniteRing(add, mul, zero, one, labels=labels, name="ring", caps=caps)


class FiniteModule:
    """A unital left module over a FiniteRing, by add and action tables."""

    def __init__(self, ring, add, act, zero, labels=None, name=None,
                 regular=False, validate=True):
        add = np.ascontiguousarray(add, dtype=np.intc)
        n = add.shape[0]
        if n > ring.caps.max_size:
            raise errors.SizeCapExceeded(f"module of size {n} exceeds cap")
        self.ring = ring
        self.size = n
        self.add = _as_op_table(add, n, "module add")
        act = np.ascontiguousarray(act, dtype=np.intc)
        if act.shape != (ring.size, n) or (act < 0).any() or (act >= n).any():
            raise errors.InvalidTables("module", "action shape/range", act.shape)
        self.act = act
        self.zero = int(zero)
        self.caps = ring.caps
        self.is_regular = bool(regular)
        self.name = name or f"module{n}"
        self._labels = list(labels) if labels is not None else None
        if validate:
            gens = _check_abelian_group(self.add, self.zero, "module")
            self._add_gens = gens
            for x in range(n):
                if self.act[ring.one, x] != x:
                    raise errors.InvalidTables("module", "unit action", (ring.one, x, x))
            for r in range(ring.size):
                w = K.unary_additive_witness(self.add, self.add,
                                             self.act[r, :].tolist(), gens)
                if w is not None:
                    raise errors.InvalidTables("module", "action additivity", (r, *w))
            rgens = ring.additive_generators
            for x in range(n):
                w = K.unary_additive_witness(ring.add, self.add,
                                             self.act[:, x].tolist(), rgens)
                if w is not None:
                    raise errors.InvalidTables("module", "scalar additivity", (*w, x))
            mgens = gens or [self.zero]
            for r in rgens or [ring.zero]:
                for s in rgens or [ring.zero]:
                    for x in mgens:
                        if self.act[ring.mul[r, s], x] != self.act[r, self.act[s, x]]:
                            raise errors.InvalidTables("module", "action associativity",
                                                       (r, s, x))
        else:
            self._add_gens = None
        self.add.setflags(write=False)
        self.act.setflags(write=False)

    # -- element helpers ---------------------------------------------------

    def label(self, i):
        if self._labels is not None:
            return self._labels[i]
        return str(i)

    @property
    def additive_generators(self):
        if self._add_gens is None:
            self._add_gens = _additive_generators(self.add, self.zero)
        return self._add_gens

    def closure_mask(self, seed):
        """Bitmask of the submodule generated by the seed elements."""
        bools = [0] * self.size
        for x in seed:
            bools[x] = 1
        members = K.submodule_closure(self.add, self.act, bools, self.zero)
        return mask_of(i for i, m in enumerate(members) if m)

    def closure_of_mask(self, mask):
        return self.closure_mask(bits(mask))

    @functools.cached_property
    def cyclic_masks(self):
        return tuple(self.closure_mask([x]) for x in range(self.size))

    @functools.cached_property
    def module_generators(self):
        """Greedy minimal generating set, deterministic by element order."""
        span = 1 << self.zero
        gens = []
        for x in range(self.size):
            if not (span >> x) & 1:
                gens.append(x)
                span = self.closure_mask(gens)
        return gens

    def submodule(self, mask, check=True):
        return Submodule(self, mask, check=check)

    @property
    def zero_mask(self):
        return 1 << self.zero

    @property
    def full_mask(self):
        return (1 << self.size) - 1

    def submodule_label(self, mask):
        if mask == self.zero_mask:
            return "0"
        if mask == self.full_mask:
            return "M"
        for g in range(self.size):
            if self.cyclic_masks[g] == mask:
                return f"({self.label(g)})"
        span = self.zero_mask
        gens = []
        for x in bits(mask):
            if not (span >> x) & 1:
                gens.append(x)
                span = self.closure_mask(gens)
                if span == mask:
                    break
        return "<" + ",".join(self.label(g) for g in gens) + ">"

    def __repr__(self):
        return f"FiniteModule({self.name}, size={self.size} over {self.ring.name})"


class Submodule:
    """A submodule as a membership bitmask over the parent module."""

    __slots__ = ("module", "mask")

    def __init__(self, module, mask, check=True):
        mask = int(mask)
        if check and module.closure_of_mask(mask) != mask:
            raise errors.PreconditionError("member set is not a submodule")
        object.__setattr__(self, "module", module)
        object.__setattr__(self, "mask", mask)

    def __setattr__(self, *a):
        raise AttributeError("Submodule is immutable")

    @property
    def members(self):
        return tuple(bits(self.mask))

    @property
    def size(self):
        return popcount(self.mask)

    @property
    def label(self):
        return self.module.submodule_label(self.mask)

    @property
    def is_proper(self):
        return self.mask != self.module.full_mask

    @property
    def is_zero(self):
        return self.mask == self.module.zero_mask

    def __contains__(self, x):
        return bool((self.mask >> x) & 1)

    def __le__(self, other):
        return self.mask & ~other.mask == 0

    def __eq__(self, other):
        return (isinstance(other, Submodule) and other.module is self.module
                and other.mask == self.mask)

    def __hash__(self):
        return hash((id(self.module), self.mask))

    def sum_with(self, other):
        return self.module.submodule(
            self.module.closure_of_mask(self.mask | other.mask), check=False)

    def intersect(self, other):
        return self.module.submodule(self.mask & other.mask, check=False)

    def __repr__(self):
        return f"Submodule({self.label} of {self.module.name})"


def regular_module(ring):
    """The ring as a left module over itself."""
    return FiniteModule(ring, ring.add, ring.mul, ring.zero,
                        labels=[ring.label(i) for i in range(ring.size)],
                        name=ring.name, regular=True)


def cyclic_product_module(n, moduli, caps=DEFAULT_CAPS):
    """Direct sum of Z_{m_i} as a module over Z_n; each m_i must divide n."""
    ring = zmod(n, caps=caps)
    for m in moduli:
        if m < 1 or n % m != 0:
            raise errors.IncompatibleModuli(f"modulus {m} does not divide {n}")
    total = 1
    for m in moduli:
        total *= m
    if total > caps.max_size:
        raise errors.SizeCapExceeded(f"module of size {total}")

    def decode(i):
        out = []
        for m in reversed(moduli):
            out.append(i % m)
            i //= m
        return tuple(reversed(out))

    def encode(t):
        i = 0
        for m, v in zip(moduli, t):
            i = i * m + v
        return i

    elems = [decode(i) for i in range(total)]
    add = [[encode(tuple((a + b) % m for m, a, b in zip(moduli, x, y)))
            for y in elems] for x in elems]
    act = [[encode(tuple((r * a) % m for m, a in zip(moduli, x))) for x in elems]
           for r in range(n)]
    labels = ["(" + ",".join(str(v) for v in t) + ")" for t in elems]
    name = "+".join(f"Z{m}" for m in moduli) + f" over Z{n}"
    return FiniteModule(ring, add, act, encode(tuple(0 for _ in moduli)),
                        labels=labels, name=name)


def module_from_tables(ring, add, act, zero, labels=None):
    return FiniteModule(ring, add, act, zero, labels=labels, name="module")


def build_ring(spec, caps=DEFAULT_CAPS):
    """Ring from a spec dict: zmod | product | matrix | tables."""
    kind = spec.get("kind")
    if kind == "zmod":
        return zmod(int(spec["n"]), caps=caps)
    if kind == "product":
        return ring_product([build_ring(f, caps=caps) for f in spec["factors"]], caps=caps)
    if kind == "matrix":
        return matrix_ring(int(spec["n"]), int(spec["q"]), caps=caps)
    if kind == "tables":
        return FiniteRing(spec["add"], spec["mul"], spec["zero"], spec["one"],
                          labels=spec.get("labels"), name="ring", caps=caps)
    raise errors.PreconditionError(f"unknown ring kind: {kind!r}")


def build_module(ring_spec, module_spec, caps=DEFAULT_CAPS):
    """Module from spec dicts: regular | cyclic-product | tables."""
    kind = module_spec.get("kind")
    if kind == "regular":
        return regular_module(build_ring(ring_spec, caps=caps))
    if kind == "cyclic-product":
        if ring_spec.get("kind") != "zmod":
            raise errors.PreconditionError("cyclic-product needs a zmod base ring")
        return cyclic_product_module(int(ring_spec["n"]),
                                     [int(m) for m in module_spec["moduli"]], caps=caps)
    if kind == "tables":
        ring = build_ring(ring_spec, caps=caps)
        return module_from_tables(ring, module_spec["add"], module_spec["act"],
                                  module_spec["zero"], labels=module_spec.get("labels"))
    raise errors.PreconditionError(f"unknown module kind: {kind!r}")


# -- submodule enumeration ---------------------------------------------------


@dataclass
class SubmoduleLattice:
    module: FiniteModule
    lattice: FiniteLattice
    masks: tuple
    index: dict = field(repr=False)

    def submodule(self, i):
        return self.module.submodule(self.masks[i], check=False)

    @property
    def submodules(self):
        return tuple(self.submodule(i) for i in range(len(self.masks)))


def _sorted_masks(masks):
    return sorted(masks, key=lambda m: (popcount(m), m))


@functools.lru_cache(maxsize=None)
def submodule_lattice(M):
    """All submodules: cyclic submodules closed under pairwise sum.

    The result is ordered by inclusion and checked to be an idiom.
    """
    masks = set(M.cyclic_masks)
    masks.add(M.zero_mask)
    if len(masks) > M.caps.max_submodules:
        raise errors.SizeCapExceeded("too many submodules")
    queue = list(masks)
    while queue:
        a = queue.pop()
        for b in list(masks):
            j = M.closure_of_mask(a | b)
            if j not in masks:
                if len(masks) >= M.caps.max_submodules:
                    raise errors.SizeCapExceeded("too many submodules")
                masks.add(j)
                queue.append(j)
    ordered = _sorted_masks(masks)
    labels = [M.submodule_label(m) for m in ordered]
    lat = FiniteLattice.from_subsets(ordered, labels=labels)
    if not classify_lattice(lat).idiom:
        raise RuntimeError("submodule lattice failed the idiom test")
    return SubmoduleLattice(M, lat, tuple(ordered), {m: i for i, m in enumerate(ordered)})


def submodule_generate(M, seed):
    """Least submodule containing the seed elements."""
    return M.submodule(M.closure_mask(seed), check=False)


# -- hom enumeration ---------------------------------------------------------


class HomSet:
    """Exhaustive, duplicate-free list of module maps source -> target."""

    def __init__(self, source, target, maps):
        self.source = source
        self.target = target
        self.maps = tuple(tuple(int(v) for v in m) for m in maps)

    def __len__(self):
        return len(self.maps)

    def __iter__(self):
        return iter(self.maps)

    def __getitem__(self, i):
        return self.maps[i]

    def image_mask(self, f):
        return mask_of(set(f))

    def kernel_mask(self, f):
        z = self.target.zero
        return mask_of(i for i, v in enumerate(f) if v == z)

    def __repr__(self):
        return f"HomSet({self.source.name} -> {self.target.name}, {len(self.maps)} maps)"


def _hom_levels(M, N):
    """Driver data for the generator-image DFS.

    Level i fixes the image y of generator g_i: consistency requires
    f(r.g_i) == r.y whenever r.g_i already lies in the previous span,
    and the span extension writes f(s + r.g_i) = f(s) + r.y.
    """
    gens = M.module_generators
    levels = []
    span = 1 << M.zero
    spans = [span]
    for g in gens:
        prev = sorted(bits(span))
        tvals = M.act[:, g]
        cons_r = [int(r) for r in range(M.ring.size) if (span >> int(tvals[r])) & 1]
        cons_x = [int(tvals[r]) for r in cons_r]
        sub = M.add[np.ix_(prev, tvals)]
        flat_x, flat_idx = np.unique(sub, return_index=True)
        nr = M.ring.size
        ext_x = [int(x) for x in flat_x]
        ext_s = [prev[int(fi) // nr] for fi in flat_idx]
        ext_r = [int(fi) % nr for fi in flat_idx]
        levels.append((cons_r, cons_x, ext_x, ext_s, ext_r))
        span = mask_of(ext_x)
        spans.append(span)
    return gens, levels, spans


@functools.lru_cache(maxsize=None)
def hom(M, N):
    """All module maps M -> N over the same ring."""
    if M.ring is not N.ring:
        raise errors.PreconditionError("hom requires modules over the same ring")
    gens, levels, spans = _hom_levels(M, N)
    if N.size ** len(gens) > M.caps.max_hom_candidates:
        raise errors.SizeCapExceeded(
            f"{N.size}^{len(gens)} hom candidates exceed the cap")
    f0 = [-1] * M.size
    f0[M.zero] = N.zero
    tables, _nodes, ok = K.hom_enumerate(M.size, N.size, f0, levels,
                                         N.add, N.act, M.caps.max_hom_candidates)
    if not ok:
        raise errors.SizeCapExceeded("hom DFS node budget exhausted")
    if M.size <= 64 and N.size <= 64:
        for f in tables:
            if K.pair_additive_witness(M.add, N.add, list(f)) is not None:
                raise RuntimeError("hom enumeration produced a non-additive map")
            if K.equivariance_witness(M.act, N.act, list(f)) is not None:
                raise RuntimeError("hom enumeration produced a non-equivariant map")
    return HomSet(M, N, tables)


def end(M):
    return hom(M, M)


# -- quotients and submodules as modules -------------------------------------


@functools.lru_cache(maxsize=None)
def _quotient(M, nmask):
    members = list(bits(nmask))
    coset_of = {}
    reps = []
    for x in range(M.size):
        if x in coset_of:
            continue
        cos = sorted(int(M.add[x, m]) for m in members)
        rep = cos[0]
        reps.append(rep)
        for y in cos:
            coset_of[y] = rep
    reps.sort()
    idx = {r: i for i, r in enumerate(reps)}
    proj = tuple(idx[coset_of[x]] for x in range(M.size))
    add = [[idx[coset_of[int(M.add[a, b])]] for b in reps] for a in reps]
    act = [[idx[coset_of[int(M.act[r, a])]] for a in reps] for r in range(M.ring.size)]
    labels = [f"[{M.label(r)}]" for r in reps]
    Q = FiniteModule(M.ring, add, act, idx[coset_of[M.zero]], labels=labels,
                     name=f"{M.name}/{M.submodule_label(nmask)}")
    return Q, proj


def quotient_module(M, N):
    """Quotient module M/N with its projection table."""
    return _quotient(M, N.mask)


@functools.lru_cache(maxsize=None)
def _submodule_as_module(M, mask):
    members = sorted(bits(mask))
    idx = {x: i for i, x in enumerate(members)}
    add = [[idx[int(M.add[a, b])] for b in members] for a in members]
    act = [[idx[int(M.act[r, a])] for a in members] for r in range(M.ring.size)]
    labels = [M.label(x) for x in members]
    S = FiniteModule(M.ring, add, act, idx[M.zero], labels=labels,
                     name=f"{M.submodule_label(mask)}<={M.name}")
    return S, tuple(members)


def submodule_as_module(N):
    """A submodule as a module in its own right, with the inclusion table."""
    return _submodule_as_module(N.module, N.mask)


# -- the product, closures and annihilators ----------------------------------


def _endos_into(M, kmask):
    """Endomorphism tables with image inside the given mask."""
    E = end(M)
    return [f for f in E.maps if mask_of(set(f)) & ~kmask == 0]


def product(N, Ksub):
    """N . K: the sum of the images of N under every map M -> K."""
    M = N.module
    if Ksub.module is not M:
        raise errors.PreconditionError("product needs submodules of one module")
    seed = M.zero_mask
    for f in _endos_into(M, Ksub.mask):
        seed |= mask_of(f[i] for i in bits(N.mask))
    return M.submodule(M.closure_of_mask(seed), check=False)


@functools.lru_cache(maxsize=None)
def _product_mask(M, nmask, kmask):
    return product(M.submodule(nmask, check=False),
                   M.submodule(kmask, check=False)).mask


def product_mask(M, nmask, kmask):
    return _product_mask(M, nmask, kmask)


def closure_fi(N):
    """Least fully invariant submodule containing N, as the product N . M.

    Cross-checked against the intersection of all fully invariant
    supersets.
    """
    M = N.module
    bar = product(N, M.submodule(M.full_mask, check=False))
    fil = fully_invariant_lattice(M)
    inter = M.full_mask
    for m in fil.masks:
        if N.mask & ~m == 0:
            inter &= m
    if bar.mask != inter:
        raise RuntimeError("fi closure disagrees with the intersection of fi supersets")
    return bar


def annihilator(M, Kob):
    """Intersection of the kernels of every map from M into K.

    K may be a Submodule of M or any module over the same ring.  The
    result is checked fully invariant, and for submodules the defining
    property Ann(K) . K = 0 is verified.
    """
    kern = M.full_mask
    if isinstance(Kob, Submodule):
        if Kob.module is not M:
            raise errors.PreconditionError("annihilator of a foreign submodule")
        for f in _endos_into(M, Kob.mask):
            kern &= mask_of(i for i in range(M.size) if f[i] == M.zero)
    else:
        H = hom(M, Kob)
        for f in H.maps:
            kern &= H.kernel_mask(f)
    A = M.submodule(kern)
    for f in end(M).maps:
        if mask_of(f[i] for i in A.members) & ~A.mask:
            raise RuntimeError("annihilator is not fully invariant")
    if isinstance(Kob, Submodule) and not product(A, Kob).is_zero:
        raise RuntimeError("annihilator times its target is nonzero")
    return A


@functools.lru_cache(maxsize=None)
def _ann_of_cyclic(M, x):
    return annihilator(M, M.submodule(M.cyclic_masks[x], check=False)).mask


# -- fully invariant structure ------------------------------------------------


@functools.lru_cache(maxsize=None)
def fully_invariant_lattice(M):
    """Sublattice of endomorphism-stable submodules; checked to be an idiom."""
    lam = submodule_lattice(M)
    E = end(M).maps
    fi = []
    for m in lam.masks:
        mem = list(bits(m))
        if all(mask_of(f[i] for i in mem) & ~m == 0 for f in E):
            fi.append(m)
    fis = set(fi)
    for a in fi:
        for b in fi:
            if (a & b) not in fis or M.closure_of_mask(a | b) not in fis:
                raise RuntimeError("fully invariant family is not a sublattice")
    ordered = _sorted_masks(fi)
    labels = [M.submodule_label(m) for m in ordered]
    lat = FiniteLattice.from_subsets(ordered, labels=labels)
    if not classify_lattice(lat).idiom:
        raise RuntimeError("fully invariant lattice failed the idiom test")
    if M.is_regular and M.ring.commutative and len(ordered) != len(lam.masks):
        raise RuntimeError("regular module over a commutative ring must be all-fi")
    return SubmoduleLattice(M, lat, tuple(ordered), {m: i for i, m in enumerate(ordered)})


@functools.lru_cache(maxsize=None)
def fi_product_table(M):
    """Product table on the fully invariant lattice, as element indices."""
    fil = fully_invariant_lattice(M)
    k = len(fil.masks)
    table = np.zeros((k, k), dtype=np.intc)
    for i in range(k):
        for j in range(k):
            p = product_mask(M, fil.masks[i], fil.masks[j])
            table[i, j] = fil.index[p]
    return fil, table


def maximal_submodules(M):
    lam = submodule_lattice(M)
    return tuple(lam.masks[i] for i in lam.lattice.coatoms())


def maximal_fi_submodules(M):
    fil = fully_invariant_lattice(M)
    return tuple(fil.masks[i] for i in fil.lattice.coatoms())


def socle_mask(M):
    lam = submodule_lattice(M)
    atoms = [lam.masks[i] for i in lam.lattice.atoms()]
    out = M.zero_mask
    for a in atoms:
        out = M.closure_of_mask(out | a)
    return out


@functools.lru_cache(maxsize=None)
def is_semisimple(M):
    return socle_mask(M) == M.full_mask


def projectivity_trusted(M):
    """Modules known projective over their own subcategory: the ring as a
    module over itself, and semisimple modules."""
    return M.is_regular or is_semisimple(M)


def simples_exhaustive(M):
    """Whether the simple subquotients are known to exhaust the simples."""
    return M.is_regular or is_semisimple(M)


# -- primeness ---------------------------------------------------------------


def _require_proper_fi(M, P):
    fil = fully_invariant_lattice(M)
    if P.mask not in fil.index:
        raise errors.NotFullyInvariant(P.label)
    if not P.is_proper:
        raise errors.NotProper(P.label)


def is_prime(M, P, cross_check=True):
    """Primeness of a proper fully invariant submodule.

    The definition quantifies over fully invariant pairs; when the
    module passes the projectivity probe the all-submodule, between-P
    and quotient characterisations are evaluated too and their agreement
    is asserted.
    """
    _require_proper_fi(M, P)
    fil, table = fi_product_table(M)
    pi = fil.index[P.mask]
    lat = fil.lattice

    def leq(i, j):
        return bool(lat._leq[i, j])

    base = all(leq(a, pi) or leq(b, pi)
               for a in range(len(fil.masks)) for b in range(len(fil.masks))
               if leq(table[a, b], pi))
    if cross_check and self_projective_probe(M):
        lam = submodule_lattice(M)
        c2 = all(
            (a & ~P.mask == 0) or (b & ~P.mask == 0)
            for a in lam.masks for b in lam.masks
            if product_mask(M, a, b) & ~P.mask == 0)
        c3 = all(
            a == P.mask or b == P.mask
            for a in lam.masks if P.mask & ~a == 0
            for b in lam.masks if P.mask & ~b == 0
            if product_mask(M, a, b) & ~P.mask == 0)
        Q, _ = quotient_module(M, P)
        c4 = is_prime(Q, Q.submodule(Q.zero_mask, check=False), cross_check=False) \
            if Q.size > 1 else False
        if not (base == c2 == c3 == c4):
            raise RuntimeError(
                f"prime characterisations disagree on {P.label}: "
                f"{base},{c2},{c3},{c4}")
    return base


def semiprime_verdicts(M, N):
    """The five semiprimeness characterisations, in order:
    fi-definition, all submodules, between-N, cyclic elements,
    intersection of primes."""
    _require_proper_fi(M, N)
    fil, table = fi_product_table(M)
    ni = fil.index[N.mask]
    lat = fil.lattice
    k = len(fil.masks)
    c1 = all(bool(lat._leq[a, ni]) for a in range(k) if lat._leq[table[a, a], ni])
    lam = submodule_lattice(M)
    c2 = all(a & ~N.mask == 0 for a in lam.masks
             if product_mask(M, a, a) & ~N.mask == 0)
    c3 = all(a == N.mask for a in lam.masks
             if N.mask & ~a == 0 and product_mask(M, a, a) & ~N.mask == 0)
    c5 = all((N.mask >> x) & 1 for x in range(M.size)
             if product_mask(M, M.cyclic_masks[x], M.cyclic_masks[x]) & ~N.mask == 0)
    inter = M.full_mask
    for p in prime_submodule_masks(M):
        if N.mask & ~p == 0:
            inter &= p
    c6 = inter == N.mask
    return (c1, c2, c3, c5, c6)


def is_semiprime(M, N, cross_check=True):
    v = semiprime_verdicts(M, N)
    if cross_check and self_projective_probe(M) and len(set(v)) != 1:
        raise RuntimeError(f"semiprime characterisations disagree on {N.label}: {v}")
    return v[0]


@functools.lru_cache(maxsize=None)
def prime_submodule_masks(M):
    fil, table = fi_product_table(M)
    lat = fil.lattice
    k = len(fil.masks)
    out = []
    for p in range(k):
        if fil.masks[p] == M.full_mask:
            continue
        if all(bool(lat._leq[a, p]) or bool(lat._leq[b, p])
               for a in range(k) for b in range(k) if lat._leq[table[a, b], p]):
            out.append(fil.masks[p])
    return tuple(out)


# -- simples and primitives ----------------------------------------------------


def modules_isomorphic(A, B):
    if A.size != B.size:
        return False
    if A.ring is not B.ring:
        return False
    orders_a = sorted(_element_orders(A))
    orders_b = sorted(_element_orders(B))
    if orders_a != orders_b:
        return False
    for f in hom(A, B).maps:
        if len(set(f)) == A.size:
            return True
    return False


def _element_orders(M):
    out = []
    for x in range(M.size):
        k = 1
        y = x
        while y != M.zero:
            y = int(M.add[y, x])
            k += 1
        out.append(k)
    return out


@functools.lru_cache(maxsize=None)
def simple_subquotients(M):
    """Representatives of the simple quotients of cyclic submodules.

    Deduplicated up to isomorphism by exhaustive bijective-map search.
    Whether these exhaust all simples over the module's subcategory is
    known only for regular and semisimple modules; see simples_exhaustive.
    """
    if M.size <= 1:
        raise errors.PreconditionError("the zero module has no simple subquotients")
    reps = []
    seen_cyclic = set()
    for x in range(M.size):
        cmask = M.cyclic_masks[x]
        if cmask in seen_cyclic or cmask == M.zero_mask:
            continue
        seen_cyclic.add(cmask)
        C, _ = _submodule_as_module(M, cmask)
        clat = submodule_lattice(C)
        for h in clat.lattice.coatoms():
            S, _ = _quotient(C, clat.masks[h])
            if not any(modules_isomorphic(S, T) for T in reps):
                reps.append(S)
    if not reps:
        raise RuntimeError("a nonzero finite module must have simple subquotients")
    return tuple(reps)


@functools.lru_cache(maxsize=None)
def primitive_submodules(M):
    """Annihilators of simple subquotients, kept when proper.

    On probe-passing modules each is verified prime.
    """
    out = []
    for S in simple_subquotients(M):
        A = annihilator(M, S)
        if A.is_proper and A.mask not in {s.mask for s in out}:
            out.append(A)
    if self_projective_probe(M):
        for P in out:
            if not is_prime(M, P, cross_check=False):
                raise RuntimeError(f"primitive submodule {P.label} is not prime")
    return tuple(sorted(out, key=lambda s: (s.size, s.mask)))


# -- module-class predicates ----------------------------------------------------


@functools.lru_cache(maxsize=None)
def self_projective_probe(M):
    """Lifting test of M against every quotient of itself.

    This is M-projectivity, a necessary condition for projectivity over
    the module's subcategory; regular and semisimple modules carry the
    stronger guarantee (projectivity_trusted).
    """
    lam = submodule_lattice(M)
    Emaps = end(M).maps
    for nmask in lam.masks:
        if nmask == M.zero_mask:
            continue
        Q, proj = _quotient(M, nmask)
        lifted_images = {tuple(proj[g[x]] for x in range(M.size)) for g in Emaps}
        for f in hom(M, Q).maps:
            if tuple(f) not in lifted_images:
                return False
    return True


@functools.lru_cache(maxsize=None)
def self_progenerator_probe(M):
    """M-projectivity plus: M generates each of its submodules (the trace
    of M in N is N)."""
    if not self_projective_probe(M):
        return False
    lam = submodule_lattice(M)
    E = end(M).maps
    for nmask in lam.masks:
        tr = M.zero_mask
        for f in E:
            im = mask_of(set(f))
            if im & ~nmask == 0:
                tr |= im
        if M.closure_of_mask(tr) != nmask:
            return False
    return True


@dataclass(frozen=True)
class ModulePredicates:
    coatomic: bool
    quasi_duo: bool
    pm_module: bool
    biregular: bool
    self_projective_probe: bool
    self_progenerator_probe: bool
    projectivity_trusted: bool
    simples_exhaustive: bool
    semisimple: bool


@functools.lru_cache(maxsize=None)
def module_predicates(M):
    """The module-class predicates driving the theorem suites."""
    lam = submodule_lattice(M)
    maxes = set(maximal_submodules(M))
    coatomic = all(
        any(m & ~mx == 0 for mx in maxes)
        for m in lam.masks if m != M.full_mask)
    if not coatomic:
        raise RuntimeError("a finite module must be coatomic")
    quasi_duo = maxes == set(maximal_fi_submodules(M))
    primes = prime_submodule_masks(M)
    pm = all(sum(1 for mx in maxes if p & ~mx == 0) == 1 for p in primes)
    bireg = True
    for x in range(M.size):
        rbar = closure_fi(M.submodule(M.cyclic_masks[x], check=False))
        annm = annihilator(M, rbar)
        if M.closure_of_mask(rbar.mask | annm.mask) != M.full_mask:
            bireg = False
            break
    return ModulePredicates(
        coatomic=coatomic,
        quasi_duo=quasi_duo,
        pm_module=pm,
        biregular=bireg,
        self_projective_probe=self_projective_probe(M),
        self_progenerator_probe=self_progenerator_probe(M),
        projectivity_trusted=projectivity_trusted(M),
        simples_exhaustive=simples_exhaustive(M),
        semisimple=is_semisimple(M),
    )


# -- annihilator lemmas ---------------------------------------------------------


@dataclass
class AnnihilatorLemmaReport:
    advisory: bool
    intersection_ok: bool
    intersection_witness: tuple | None
    fi_closure_ok: bool
    fi_closure_witness: tuple | None
    semiprime_summand_ok: bool | None
    semiprime_summand_witness: tuple | None


def lemma_checks(M):
    """Annihilator laws over families of submodules.

    Families are submodules of M only.  When the projectivity probe
    fails the report is advisory.
    """
    lam = submodule_lattice(M)
    advisory = not self_projective_probe(M)
    subs = [M.submodule(m, check=False) for m in lam.masks]
    ann = {s.mask: annihilator(M, s).mask for s in subs}

    inter_ok, inter_wit = True, None
    for r in (1, 2, 3):
        if not inter_ok:
            break
        for fam in itertools.combinations(subs, r):
            total = fam[0]
            for s in fam[1:]:
                total = total.sum_with(s)
            lhs = M.full_mask
            for s in fam:
                lhs &= ann[s.mask]
            if lhs != ann[total.mask]:
                inter_ok, inter_wit = False, tuple(s.label for s in fam)
                break

    ray_ok, ray_wit = True, None
    for s in subs:
        bar = closure_fi(s)
        if ann[s.mask] != ann[bar.mask]:
            ray_ok, ray_wit = False, (s.label,)
            break

    semi_ok = semi_wit = None
    zero_sub = M.submodule(M.zero_mask, check=False)
    if M.size > 1 and is_semiprime(M, zero_sub, cross_check=False):
        semi_ok = True
        fimasks = set(fully_invariant_lattice(M).masks)
        for n in lam.masks:
            for l in lam.masks:
                if n in fimasks and (n & l) == M.zero_mask \
                        and M.closure_of_mask(n | l) == M.full_mask:
                    if l not in fimasks:
                        semi_ok = False
                        semi_wit = (M.submodule_label(n), M.submodule_label(l))
                        break
            if semi_ok is False:
                break
    return AnnihilatorLemmaReport(advisory, inter_ok, inter_wit,
                                  ray_ok, ray_wit, semi_ok, semi_wit)


# -- ring-level biregularity ------------------------------------------------------


@dataclass
class RingBiregularReport:
    biregular: bool
    by_central_idempotents: bool
    by_annihilator_sum: bool
    witness: str | None


def ring_biregular_report(R):
    """Two ring-level biregularity characterisations, checked to agree:
    every cyclic two-sided ideal is generated by a central idempotent,
    and R = RaR + Ann(RaR) for every a."""
    idem_ideals = {R.two_sided_ideal(e) for e in R.central_idempotents}
    M = regular_module(R)
    by_idem = True
    by_ann = True
    witness = None
    for a in range(R.size):
        ideal = R.two_sided_ideal(a)
        if ideal not in idem_ideals:
            by_idem = False
            witness = witness or R.label(a)
        annm = annihilator(M, M.submodule(ideal, check=False))
        if M.closure_of_mask(ideal | annm.mask) != M.full_mask:
            by_ann = False
            witness = witness or R.label(a)
    if by_idem != by_ann:
        raise RuntimeError("ring biregularity characterisations disagree")
    return RingBiregularReport(by_idem and by_ann, by_idem, by_ann, witness)
