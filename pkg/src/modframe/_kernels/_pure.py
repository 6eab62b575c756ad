"""Pure-Python fallback for the hot enumeration kernels.

Same contract as the compiled twin in _ckernels.pyx.  Inputs arrive as
nested lists of ints (the dispatch layer normalises numpy arrays before
calling in).  Functions return witness tuples or None; they never raise
for mathematical failures, callers interpret the sentinels.
"""


def order_violation(leq):
    """First partial-order axiom violation in a 0/1 square table, or None."""
    n = len(leq)
    for i in range(n):
        if not leq[i][i]:
            return ("reflexive", i, i, i)
    for i in range(n):
        row = leq[i]
        for j in range(n):
            if i != j and row[j] and leq[j][i]:
                return ("antisymmetric", i, j, j)
    for i in range(n):
        row = leq[i]
        for j in range(n):
            if row[j]:
                leqj = leq[j]
                for k in range(n):
                    if leqj[k] and not row[k]:
                        return ("transitive", i, j, k)
    return None


def meet_join_tables(leq):
    """Binary meet/join tables from a valid order; -1 marks a missing bound."""
    n = len(leq)
    meet = [[-1] * n for _ in range(n)]
    join = [[-1] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            lower = [k for k in range(n) if leq[k][i] and leq[k][j]]
            m = -1
            for c in lower:
                ok = True
                for l in lower:
                    if not leq[l][c]:
                        ok = False
                        break
                if ok:
                    m = c
                    break
            meet[i][j] = meet[j][i] = m
            upper = [k for k in range(n) if leq[i][k] and leq[j][k]]
            u = -1
            for c in upper:
                ok = True
                for l in upper:
                    if not leq[c][l]:
                        ok = False
                        break
                if ok:
                    u = c
                    break
            join[i][j] = join[j][i] = u
    return meet, join


def modular_witness(leq, meet, join):
    """Triple (a,b,c) with a<=b but (a v c) ^ b != a v (c ^ b), or None."""
    n = len(leq)
    for a in range(n):
        for b in range(n):
            if not leq[a][b]:
                continue
            ja = join[a]
            for c in range(n):
                if meet[ja[c]][b] != join[a][meet[c][b]]:
                    return (a, b, c)
    return None


def distributive_witness(meet, join):
    """Triple (a,b,c) with a ^ (b v c) != (a ^ b) v (a ^ c), or None."""
    n = len(meet)
    for a in range(n):
        ma = meet[a]
        for b in range(n):
            jb = join[b]
            for c in range(n):
                if ma[jb[c]] != join[ma[b]][ma[c]]:
                    return (a, b, c)
    return None


def dist_witness_all(action, join, bottom, directed_only):
    """Check action[a][vX] == v{action[a][x]: x in X} over every subset X.

    With directed_only, only subsets containing their own join are tested
    (those are exactly the directed ones once the order is a lattice).
    Returns (a, subset_mask) or None.  Caller caps n at 20.
    """
    n = len(join)
    acc = [[bottom] * n for _ in range(n + 1)]

    def rec(idx, mask, cur_join):
        if idx == n:
            if directed_only and (mask == 0 or not (mask >> cur_join) & 1):
                return None
            row = acc[n]
            for a in range(n):
                if action[a][cur_join] != row[a]:
                    return (a, mask)
            return None
        prev = acc[idx]
        nxt = acc[idx + 1]
        # exclude idx
        for a in range(n):
            nxt[a] = prev[a]
        r = rec(idx + 1, mask, cur_join)
        if r is not None:
            return r
        # include idx
        for a in range(n):
            nxt[a] = join[prev[a]][action[a][idx]]
        return rec(idx + 1, mask | (1 << idx), join[cur_join][idx])

    return rec(0, 0, bottom)


def dist_witness_samples(action, join, bottom, samples, directed_only):
    """Sampled variant of dist_witness_all; returns (a, sample_index) or None."""
    n = len(join)
    for si, xs in enumerate(samples):
        j = bottom
        for x in xs:
            j = join[j][x]
        if directed_only and (len(xs) == 0 or j not in xs):
            continue
        for a in range(n):
            t = bottom
            act_a = action[a]
            join_row = join
            for x in xs:
                t = join_row[t][act_a[x]]
            if act_a[j] != t:
                return (a, si)
    return None


def submodule_closure(add, act, seed, zero):
    """Least subset containing seed and zero, closed under add and act.

    add: n x n table, act: r x n table (r may be 0), seed: 0/1 list.
    Returns the 0/1 membership list.
    """
    n = len(add)
    members = list(seed)
    members[zero] = 1
    stack = [i for i in range(n) if members[i]]
    mlist = list(stack)
    nr = len(act)
    while stack:
        x = stack.pop()
        for r in range(nr):
            y = act[r][x]
            if not members[y]:
                members[y] = 1
                stack.append(y)
                mlist.append(y)
        row = add[x]
        for m in mlist:
            y = row[m]
            if not members[y]:
                members[y] = 1
                stack.append(y)
                mlist.append(y)
    return members


def hom_enumerate(n_src, n_dst, f0, levels, dst_add, dst_act, max_nodes):
    """Depth-first enumeration of structure maps from generator images.

    levels[i] = (cons_r, cons_x, ext_x, ext_s, ext_r) for generator i:
      consistency: f[cons_x[t]] == dst_act[cons_r[t]][y] for all t,
      extension:   f'[ext_x[t]] = dst_add[f[ext_s[t]]][dst_act[ext_r[t]][y]].
    Returns (tables, nodes, completed); completed is False when the node
    budget ran out.
    """
    k = len(levels)
    out = []
    fstack = [list(f0)] + [None] * k
    nodes = 0
    budget_ok = True

    def rec(i):
        nonlocal nodes, budget_ok
        if i == k:
            out.append(tuple(fstack[k]))
            return
        cons_r, cons_x, ext_x, ext_s, ext_r = levels[i]
        fprev = fstack[i]
        for y in range(n_dst):
            if nodes >= max_nodes:
                budget_ok = False
                return
            nodes += 1
            ok = True
            for t in range(len(cons_r)):
                if fprev[cons_x[t]] != dst_act[cons_r[t]][y]:
                    ok = False
                    break
            if not ok:
                continue
            fnew = fprev[:]
            for t in range(len(ext_x)):
                fnew[ext_x[t]] = dst_add[fprev[ext_s[t]]][dst_act[ext_r[t]][y]]
            fstack[i + 1] = fnew
            rec(i + 1)
            if not budget_ok:
                return

    if k == 0:
        out.append(tuple(fstack[0]))
        return out, 0, True
    rec(0)
    return out, nodes, budget_ok


def unary_additive_witness(add_s, add_t, f, gens):
    """Pair (x,g) with f(x+g) != f(x)+f(g) for a generator g, or None."""
    n = len(add_s)
    for x in range(n):
        row = add_s[x]
        fx = f[x]
        for g in gens:
            if f[row[g]] != add_t[fx][f[g]]:
                return (x, g)
    return None


def pair_additive_witness(add_s, add_t, f):
    """Full additivity sweep: pair (x,y) with f(x+y) != f(x)+f(y), or None."""
    n = len(add_s)
    for x in range(n):
        row = add_s[x]
        frow = add_t[f[x]]
        for y in range(n):
            if f[row[y]] != frow[f[y]]:
                return (x, y)
    return None


def equivariance_witness(act_s, act_t, f):
    """Pair (r,x) with f(r.x) != r.f(x), or None."""
    nr = len(act_s)
    n = len(act_s[0]) if nr else 0
    for r in range(nr):
        src = act_s[r]
        dst = act_t[r]
        for x in range(n):
            if f[src[x]] != dst[f[x]]:
                return (r, x)
    return None


def light_assoc_witness(op, gens):
    """Associativity via Light's test on a generating set.

    Exact when gens generates the magma under op.  Returns (x, g, y) with
    (x op g) op y != x op (g op y), or None.
    """
    n = len(op)
    for g in gens:
        col = [op[x][g] for x in range(n)]
        row = op[g]
        for x in range(n):
            left = op[col[x]]
            opx = op[x]
            for y in range(n):
                if left[y] != opx[row[y]]:
                    return (x, g, y)
    return None


def triple_assoc_witness(op):
    """Full O(n^3) associativity sweep; returns (a,b,c) or None."""
    n = len(op)
    for a in range(n):
        ra = op[a]
        for b in range(n):
            ab = ra[b]
            rb = op[b]
            rab = op[ab]
            for c in range(n):
                if rab[c] != ra[rb[c]]:
                    return (a, b, c)
    return None
