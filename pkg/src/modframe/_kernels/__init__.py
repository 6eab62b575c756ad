"""Kernel dispatch: compiled core when available, pure-Python twin otherwise.

Set MODFRAME_PURE=1 to force the fallback.  The active backend is exposed
as BACKEND ("c" or "python"); both backends implement the identical
function contracts documented in _pure.py.
"""

import os

import numpy as np

from . import _pure

if os.environ.get("MODFRAME_PURE"):
    _impl = _pure
    BACKEND = "python"
else:
    try:
        from . import _ckernels as _impl  # type: ignore[attr-defined]

        BACKEND = "c"
    except ImportError:
        _impl = _pure
        BACKEND = "python"


def as_table(t):
    """Normalise a square table to a C-contiguous intc array."""
    a = np.ascontiguousarray(t, dtype=np.intc)
    if a.ndim != 2:
        raise ValueError("expected a 2-d table")
    return a


def _rows(a):
    return a.tolist()


def order_violation(leq):
    return _impl.order_violation(_prep(leq))


def meet_join_tables(leq):
    meet, join = _impl.meet_join_tables(_prep(leq))
    return np.array(meet, dtype=np.intc), np.array(join, dtype=np.intc)


def modular_witness(leq, meet, join):
    return _impl.modular_witness(_prep(leq), _prep(meet), _prep(join))


def distributive_witness(meet, join):
    return _impl.distributive_witness(_prep(meet), _prep(join))


def dist_witness_all(action, join, bottom, directed_only=False):
    return _impl.dist_witness_all(_prep(action), _prep(join), int(bottom), bool(directed_only))


def dist_witness_samples(action, join, bottom, samples, directed_only=False):
    samples = [tuple(int(x) for x in s) for s in samples]
    return _impl.dist_witness_samples(
        _prep(action), _prep(join), int(bottom), samples, bool(directed_only)
    )


def submodule_closure(add, act, seed, zero):
    return _impl.submodule_closure(_prep(add), _prep_act(act), [int(b) for b in seed], int(zero))


def hom_enumerate(n_src, n_dst, f0, levels, dst_add, dst_act, max_nodes):
    lv = [tuple([int(v) for v in arr] for arr in level) for level in levels]
    return _impl.hom_enumerate(
        int(n_src), int(n_dst), [int(v) for v in f0], lv,
        _prep(dst_add), _prep_act(dst_act), int(max_nodes),
    )


def unary_additive_witness(add_s, add_t, f, gens):
    return _impl.unary_additive_witness(
        _prep(add_s), _prep(add_t), [int(v) for v in f], [int(g) for g in gens]
    )


def pair_additive_witness(add_s, add_t, f):
    return _impl.pair_additive_witness(_prep(add_s), _prep(add_t), [int(v) for v in f])


def equivariance_witness(act_s, act_t, f):
    return _impl.equivariance_witness(_prep_act(act_s), _prep_act(act_t), [int(v) for v in f])


def light_assoc_witness(op, gens):
    return _impl.light_assoc_witness(_prep(op), [int(g) for g in gens])


def triple_assoc_witness(op):
    return _impl.triple_assoc_witness(_prep(op))


if BACKEND == "c":
    # the compiled twin takes typed memoryviews
    def _prep(t):
        return as_table(t)

    def _prep_act(t):
        a = np.ascontiguousarray(t, dtype=np.intc)
        if a.ndim != 2:
            a = a.reshape(0, 0)
        return a
else:
    def _prep(t):
        if isinstance(t, np.ndarray):
            return t.tolist()
        return [list(row) for row in t]

    def _prep_act(t):
        if isinstance(t, np.ndarray):
            return t.tolist()
        return [list(row) for row in t]
