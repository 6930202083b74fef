"""Brute-force reference implementations used to cross-check the package.

Everything here works from first definitions (order matrices, row dicts,
set comprehensions) and deliberately avoids the package's meet/join tables,
bitmask tricks, and caching, so a bug in those cannot hide from the tests.
Sizes are expected to be tiny; nothing here is clever.
"""
from __future__ import annotations

import itertools
from math import comb


# -- order-theoretic oracles (input: n and a leq predicate or matrix) -----------


def _le(leq):
    if callable(leq):
        return leq
    return lambda a, b: bool(leq[a][b])


def upper_bounds(n, leq, xs):
    le = _le(leq)
    return [u for u in range(n) if all(le(x, u) for x in xs)]


def least_upper_bound(n, leq, xs):
    """The minimum of the upper bounds, or None if there is no least one."""
    le = _le(leq)
    ubs = upper_bounds(n, leq, xs)
    for u in ubs:
        if all(le(u, v) for v in ubs):
            return u
    return None


def greatest_lower_bound(n, leq, xs):
    le = _le(leq)
    lbs = [u for u in range(n) if all(le(u, x) for x in xs)]
    for u in lbs:
        if all(le(v, u) for v in lbs):
            return u
    return None


def is_lattice(n, leq):
    for a in range(n):
        for b in range(n):
            if least_upper_bound(n, leq, [a, b]) is None:
                return False
            if greatest_lower_bound(n, leq, [a, b]) is None:
                return False
    return True


def join_irreducibles(n, leq):
    """j that is not the least upper bound of its strict downset.

    The bottom element is the lub of the empty set, so it is excluded
    without a special case.
    """
    le = _le(leq)
    out = []
    for j in range(n):
        strict = [i for i in range(n) if le(i, j) and i != j]
        if least_upper_bound(n, leq, strict) != j:
            out.append(j)
    return out


def join_primes(n, leq):
    """Irreducibles below a join of any set only by being below a member.

    Quantifies over every subset, not just pairs, so it also certifies
    that a pairwise test is enough.
    """
    le = _le(leq)
    jis = join_irreducibles(n, leq)
    out = []
    for j in jis:
        prime = True
        for r in range(1, n + 1):
            for xs in itertools.combinations(range(n), r):
                v = least_upper_bound(n, leq, list(xs))
                if le(j, v) and not any(le(j, x) for x in xs):
                    prime = False
                    break
            if not prime:
                break
        if prime:
            out.append(j)
    return out


def refines(n, leq, xs, ys):
    le = _le(leq)
    return all(any(le(x, y) for y in ys) for x in xs)


def minimal_join_covers(n, leq, j):
    """All C with j <= lub C such that every refining cover contains C.

    C and the rival covers D both range over arbitrary subsets of the
    lattice; that the survivors end up as antichains of irreducibles is a
    theorem the caller may assert, not an assumption baked in here.
    Exponential twice over; keep n at 10 or so.
    """
    le = _le(leq)
    elems = range(n)
    covers = []
    for r in range(1, n + 1):
        for c in itertools.combinations(elems, r):
            v = least_upper_bound(n, leq, list(c))
            if v is None or not le(j, v):
                continue
            covers.append(set(c))
    out = []
    for c in covers:
        ok = True
        for d in covers:
            if refines(n, leq, d, c) and not c <= d:
                ok = False
                break
        if ok:
            out.append(frozenset(c))
    return set(out)


# -- relational oracles (input: tables as lists of attr->value dicts) -----------


def rows_as_dicts(table):
    """Decode a package Table into a list of {attr: value} dicts."""
    names = table.schema.header_names(table.header)
    out = []
    for code in sorted(table.rows):
        vals = table.schema.decode_row(table.header, code)
        out.append(dict(zip(names, vals)))
    return out


def dict_natural_join(header1, rows1, header2, rows2):
    """Glue all compatible row pairs over the union header."""
    header = sorted(set(header1) | set(header2))
    shared = set(header1) & set(header2)
    out = []
    for r1 in rows1:
        for r2 in rows2:
            if all(r1[a] == r2[a] for a in shared):
                merged = dict(r1)
                merged.update(r2)
                if merged not in out:
                    out.append(merged)
    return header, out


def dict_inner_union(header1, rows1, header2, rows2):
    """Project both sides to the shared header and union the rows."""
    header = sorted(set(header1) & set(header2))
    out = []
    for r in itertools.chain(rows1, rows2):
        proj = {a: r[a] for a in header}
        if proj not in out:
            out.append(proj)
    return header, out


def r_size(n_attrs, n_dom):
    """Sum over headers X of 2^(|D|^|X|)."""
    total = 0
    for k in range(n_attrs + 1):
        total += comb(n_attrs, k) * 2 ** (n_dom ** k)
    return total


def act_points(space, attr_set, point_set):
    """{f : some g in T has dist(f, g) inside X}, straight from the text."""
    out = set()
    for f in range(len(space.points)):
        for g in point_set:
            if space.dist[f][g] & ~attr_set == 0:
                out.add(f)
                break
    return out


# -- frame oracles ----------------------------------------------------------------


def edges_of_partition(blocks):
    n = len(blocks)
    return {(i, j) for i in range(n) for j in range(n) if blocks[i] == blocks[j]}


def confluent(blocks_i, blocks_j):
    """R_i ; R_j contained in R_j ; R_i, computed on edge sets."""
    ri = edges_of_partition(blocks_i)
    rj = edges_of_partition(blocks_j)
    comp_ij = {(y, z) for (y, x1) in ri for (x2, z) in rj if x1 == x2}
    comp_ji = {(y, z) for (y, w1) in rj for (w2, z) in ri if w1 == w2}
    return comp_ij <= comp_ji


def bell_number(n):
    """Partition count by the triangle recurrence."""
    row = [1]
    for _ in range(n - 1):
        nxt = [row[-1]]
        for x in row:
            nxt.append(nxt[-1] + x)
        row = nxt
    return row[-1]


# -- lattice census oracle ---------------------------------------------------------


def count_lattices(k):
    """Lattices on k elements up to isomorphism, counted the slow way.

    Orients every unordered pair (below / above / incomparable) with no
    designated bottom or top, keeps the transitive antisymmetric ones,
    tests the lattice property with lub/glb scans, and canonicalizes by
    minimizing the relation over all k! relabelings.
    """
    if k == 1:
        return 1
    pairs = list(itertools.combinations(range(k), 2))
    seen = set()
    for choice in itertools.product((0, 1, 2), repeat=len(pairs)):
        le = [[i == j for j in range(k)] for i in range(k)]
        for (i, j), c in zip(pairs, choice):
            if c == 1:
                le[i][j] = True
            elif c == 2:
                le[j][i] = True
        ok = True
        for a in range(k):
            for b in range(k):
                if not le[a][b]:
                    continue
                for c in range(k):
                    if le[b][c] and not le[a][c]:
                        ok = False
                        break
                if not ok:
                    break
            if not ok:
                break
        if not ok or not is_lattice(k, le):
            continue
        rel = min(
            tuple(sorted((p[i], p[j]) for i in range(k) for j in range(k)
                         if i != j and le[i][j]))
            for p in itertools.permutations(range(k))
        )
        seen.add(rel)
    return len(seen)
