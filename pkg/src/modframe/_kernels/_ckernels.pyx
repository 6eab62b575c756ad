# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernel core; contract identical to _pure.py."""

import numpy as np


def order_violation(const int[:, ::1] leq):
    cdef int n = leq.shape[0]
    cdef int i, j, k
    for i in range(n):
        if not leq[i, i]:
            return ("reflexive", i, i, i)
    for i in range(n):
        for j in range(n):
            if i != j and leq[i, j] and leq[j, i]:
                return ("antisymmetric", i, j, j)
    for i in range(n):
        for j in range(n):
            if leq[i, j]:
                for k in range(n):
                    if leq[j, k] and not leq[i, k]:
                        return ("transitive", i, j, k)
    return None


def meet_join_tables(const int[:, ::1] leq):
    cdef int n = leq.shape[0]
    meet_arr = np.full((n, n), -1, dtype=np.intc)
    join_arr = np.full((n, n), -1, dtype=np.intc)
    cdef int[:, ::1] meet = meet_arr
    cdef int[:, ::1] join = join_arr
    lower_arr = np.zeros(n, dtype=np.intc)
    cdef int[::1] lower = lower_arr
    cdef int i, j, k, c, l, nl, m, ok
    for i in range(n):
        for j in range(i, n):
            nl = 0
            for k in range(n):
                if leq[k, i] and leq[k, j]:
                    lower[nl] = k
                    nl += 1
            m = -1
            for c in range(nl):
                ok = 1
                for l in range(nl):
                    if not leq[lower[l], lower[c]]:
                        ok = 0
                        break
                if ok:
                    m = lower[c]
                    break
            meet[i, j] = m
            meet[j, i] = m
            nl = 0
            for k in range(n):
                if leq[i, k] and leq[j, k]:
                    lower[nl] = k
                    nl += 1
            m = -1
            for c in range(nl):
                ok = 1
                for l in range(nl):
                    if not leq[lower[c], lower[l]]:
                        ok = 0
                        break
                if ok:
                    m = lower[c]
                    break
            join[i, j] = m
            join[j, i] = m
    return meet_arr, join_arr


def modular_witness(const int[:, ::1] leq, const int[:, ::1] meet, const int[:, ::1] join):
    cdef int n = leq.shape[0]
    cdef int a, b, c
    for a in range(n):
        for b in range(n):
            if not leq[a, b]:
                continue
            for c in range(n):
                if meet[join[a, c], b] != join[a, meet[c, b]]:
                    return (a, b, c)
    return None


def distributive_witness(const int[:, ::1] meet, const int[:, ::1] join):
    cdef int n = meet.shape[0]
    cdef int a, b, c
    for a in range(n):
        for b in range(n):
            for c in range(n):
                if meet[a, join[b, c]] != join[meet[a, b], meet[a, c]]:
                    return (a, b, c)
    return None


cdef tuple _dist_rec(int idx, long mask, int cur_join, int n,
                     const int[:, ::1] action, const int[:, ::1] join,
                     int[:, ::1] acc, bint directed_only):
    cdef int a
    cdef tuple r
    if idx == n:
        if directed_only and (mask == 0 or not (mask >> cur_join) & 1):
            return None
        for a in range(n):
            if action[a, cur_join] != acc[n, a]:
                return (a, mask)
        return None
    for a in range(n):
        acc[idx + 1, a] = acc[idx, a]
    r = _dist_rec(idx + 1, mask, cur_join, n, action, join, acc, directed_only)
    if r is not None:
        return r
    for a in range(n):
        acc[idx + 1, a] = join[acc[idx, a], action[a, idx]]
    return _dist_rec(idx + 1, mask | (<long>1 << idx), join[cur_join, idx],
                     n, action, join, acc, directed_only)


def dist_witness_all(const int[:, ::1] action, const int[:, ::1] join, int bottom,
                     bint directed_only):
    cdef int n = join.shape[0]
    acc_arr = np.full((n + 1, n), bottom, dtype=np.intc)
    cdef int[:, ::1] acc = acc_arr
    return _dist_rec(0, 0, bottom, n, action, join, acc, directed_only)


def dist_witness_samples(const int[:, ::1] action, const int[:, ::1] join, int bottom,
                         samples, bint directed_only):
    cdef int n = join.shape[0]
    cdef int si, a, x, j, t, k, m
    cdef const int[::1] xs
    for si in range(len(samples)):
        xs_arr = np.asarray(samples[si], dtype=np.intc)
        if xs_arr.ndim == 0:
            xs_arr = xs_arr.reshape(0)
        xs = xs_arr
        m = xs.shape[0]
        j = bottom
        for k in range(m):
            j = join[j, xs[k]]
        if directed_only:
            if m == 0:
                continue
            t = 0
            for k in range(m):
                if xs[k] == j:
                    t = 1
                    break
            if not t:
                continue
        for a in range(n):
            t = bottom
            for k in range(m):
                t = join[t, action[a, xs[k]]]
            if action[a, j] != t:
                return (a, si)
    return None


def submodule_closure(const int[:, ::1] add, const int[:, ::1] act, seed, int zero):
    cdef int n = add.shape[0]
    cdef int nr = act.shape[0]
    members_arr = np.zeros(n, dtype=np.intc)
    cdef int[::1] members = members_arr
    stack_arr = np.zeros(n, dtype=np.intc)
    cdef int[::1] stack = stack_arr
    mlist_arr = np.zeros(n, dtype=np.intc)
    cdef int[::1] mlist = mlist_arr
    cdef int top = 0, count = 0, i, x, r, y, mi
    for i in range(n):
        if seed[i]:
            members[i] = 1
    members[zero] = 1
    for i in range(n):
        if members[i]:
            stack[top] = i
            top += 1
            mlist[count] = i
            count += 1
    while top > 0:
        top -= 1
        x = stack[top]
        for r in range(nr):
            y = act[r, x]
            if not members[y]:
                members[y] = 1
                stack[top] = y
                top += 1
                mlist[count] = y
                count += 1
        mi = 0
        while mi < count:
            y = add[x, mlist[mi]]
            if not members[y]:
                members[y] = 1
                stack[top] = y
                top += 1
                mlist[count] = y
                count += 1
            mi += 1
    return members_arr.tolist()


def hom_enumerate(int n_src, int n_dst, f0, levels, const int[:, ::1] dst_add,
                  const int[:, ::1] dst_act, long max_nodes):
    cdef int k = len(levels)
    cdef int i, j, y, t, ok, nc, ne
    out = []
    if k == 0:
        out.append(tuple(f0))
        return out, 0, True

    fstack_arr = np.full((k + 1, n_src), -1, dtype=np.intc)
    cdef int[:, ::1] fstack = fstack_arr
    for i in range(n_src):
        fstack[0, i] = f0[i]

    # flatten the per-level driver data into one contiguous block each
    offs_arr = np.zeros((k + 1, 2), dtype=np.intc)
    cons_r_parts = []
    cons_x_parts = []
    ext_x_parts = []
    ext_s_parts = []
    ext_r_parts = []
    for i, lv in enumerate(levels):
        cr = np.asarray(lv[0], dtype=np.intc).reshape(-1)
        cx = np.asarray(lv[1], dtype=np.intc).reshape(-1)
        ex = np.asarray(lv[2], dtype=np.intc).reshape(-1)
        es = np.asarray(lv[3], dtype=np.intc).reshape(-1)
        er = np.asarray(lv[4], dtype=np.intc).reshape(-1)
        cons_r_parts.append(cr)
        cons_x_parts.append(cx)
        ext_x_parts.append(ex)
        ext_s_parts.append(es)
        ext_r_parts.append(er)
        offs_arr[i + 1, 0] = offs_arr[i, 0] + cr.shape[0]
        offs_arr[i + 1, 1] = offs_arr[i, 1] + ex.shape[0]
    cdef int[:, ::1] offs = offs_arr

    def _cat(parts):
        if parts:
            return np.ascontiguousarray(np.concatenate(parts), dtype=np.intc)
        return np.zeros(0, dtype=np.intc)

    cdef int[::1] cons_r = _cat(cons_r_parts)
    cdef int[::1] cons_x = _cat(cons_x_parts)
    cdef int[::1] ext_x = _cat(ext_x_parts)
    cdef int[::1] ext_s = _cat(ext_s_parts)
    cdef int[::1] ext_r = _cat(ext_r_parts)

    ys_arr = np.full(k, -1, dtype=np.intc)
    cdef int[::1] ys = ys_arr
    cdef long nodes = 0
    cdef bint budget_ok = True

    i = 0
    while i >= 0:
        if ys[i] + 1 >= n_dst:
            ys[i] = -1
            i -= 1
            continue
        ys[i] += 1
        y = ys[i]
        if nodes >= max_nodes:
            budget_ok = False
            break
        nodes += 1
        ok = 1
        for t in range(offs[i, 0], offs[i + 1, 0]):
            if fstack[i, cons_x[t]] != dst_act[cons_r[t], y]:
                ok = 0
                break
        if not ok:
            continue
        for j in range(n_src):
            fstack[i + 1, j] = fstack[i, j]
        for t in range(offs[i, 1], offs[i + 1, 1]):
            fstack[i + 1, ext_x[t]] = dst_add[fstack[i, ext_s[t]],
                                              dst_act[ext_r[t], y]]
        if i + 1 == k:
            out.append(tuple(fstack_arr[k].tolist()))
        else:
            i += 1
    return out, nodes, budget_ok


def unary_additive_witness(const int[:, ::1] add_s, const int[:, ::1] add_t, f, gens):
    cdef int n = add_s.shape[0]
    f_arr = np.asarray(f, dtype=np.intc)
    g_arr = np.asarray(gens, dtype=np.intc).reshape(-1)
    cdef int[::1] fv = f_arr
    cdef int[::1] gv = g_arr
    cdef int ng = gv.shape[0]
    cdef int x, gi, g
    for x in range(n):
        for gi in range(ng):
            g = gv[gi]
            if fv[add_s[x, g]] != add_t[fv[x], fv[g]]:
                return (x, g)
    return None


def pair_additive_witness(const int[:, ::1] add_s, const int[:, ::1] add_t, f):
    cdef int n = add_s.shape[0]
    f_arr = np.asarray(f, dtype=np.intc)
    cdef int[::1] fv = f_arr
    cdef int x, y
    for x in range(n):
        for y in range(n):
            if fv[add_s[x, y]] != add_t[fv[x], fv[y]]:
                return (x, y)
    return None


def equivariance_witness(const int[:, ::1] act_s, const int[:, ::1] act_t, f):
    cdef int nr = act_s.shape[0]
    cdef int n = act_s.shape[1] if nr else 0
    f_arr = np.asarray(f, dtype=np.intc)
    cdef int[::1] fv = f_arr
    cdef int r, x
    for r in range(nr):
        for x in range(n):
            if fv[act_s[r, x]] != act_t[r, fv[x]]:
                return (r, x)
    return None


def light_assoc_witness(const int[:, ::1] op, gens):
    cdef int n = op.shape[0]
    g_arr = np.asarray(gens, dtype=np.intc).reshape(-1)
    cdef int[::1] gv = g_arr
    cdef int ng = gv.shape[0]
    cdef int gi, g, x, y
    for gi in range(ng):
        g = gv[gi]
        for x in range(n):
            for y in range(n):
                if op[op[x, g], y] != op[x, op[g, y]]:
                    return (x, g, y)
    return None


def triple_assoc_witness(const int[:, ::1] op):
    cdef int n = op.shape[0]
    cdef int a, b, c
    for a in range(n):
        for b in range(n):
            for c in range(n):
                if op[op[a, b], c] != op[a, op[b, c]]:
                    return (a, b, c)
    return None
