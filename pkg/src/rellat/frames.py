"""Frames carrying n equivalence relations: confluence checking, universal
product frames, the fixed-point lattice of path closures, p-morphism search,
and the small enumeration helpers the frame-vs-embedding tests need.

Relations are stored as partitions (block id per world), so reflexivity,
symmetry, and transitivity hold by representation; raw edge input is
validated on the way in.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import (
    DEFAULT_CAPS,
    BadFrame,
    Caps,
    SearchBudgetExceeded,
    SizeCapExceeded,
)
from .relational import SdLattice, semidirect_core


@dataclass(frozen=True)
class Frame:
    """Worlds plus one partition (block id per world) per relation."""

    worlds: tuple[str, ...]
    rels: tuple[tuple[int, ...], ...]

    @property
    def n_worlds(self) -> int:
        return len(self.worlds)

    @property
    def n_rels(self) -> int:
        return len(self.rels)


def _normalize_blocks(blocks: Sequence[int]) -> tuple[int, ...]:
    seen: dict[int, int] = {}
    out = []
    for b in blocks:
        if b not in seen:
            seen[b] = len(seen)
        out.append(seen[b])
    return tuple(out)


def make_frame(worlds: Sequence[str], rels: Iterable[Sequence[int]]) -> Frame:
    """Validate and canonicalize block ids (first appearance order)."""
    w = tuple(str(x) for x in worlds)
    if not w:
        raise BadFrame("a frame needs at least one world")
    if len(set(w)) != len(w):
        raise BadFrame("duplicate world labels")
    fixed = []
    for r, blocks in enumerate(rels):
        if len(blocks) != len(w):
            raise BadFrame(f"relation {r} does not assign every world")
        fixed.append(_normalize_blocks(blocks))
    return Frame(w, tuple(fixed))


def frame_from_edges(worlds: Sequence[str],
                     edges: Iterable[Iterable[tuple[int, int]]]) -> Frame:
    """Build from explicit edge lists, verifying each is an equivalence."""
    w = tuple(str(x) for x in worlds)
    n = len(w)
    rels = []
    for r, edge_list in enumerate(edges):
        adj = {(int(a), int(b)) for a, b in edge_list}
        wit = _equivalence_violation(n, adj)
        if wit is not None:
            kind, ws = wit
            raise BadFrame(f"relation {r} is not {kind} at {ws}")
        blocks = [-1] * n
        nxt = 0
        for x in range(n):
            if blocks[x] < 0:
                blocks[x] = nxt
                for y in range(n):
                    if (x, y) in adj:
                        blocks[y] = nxt
                nxt += 1
        rels.append(blocks)
    return make_frame(w, rels)


def _equivalence_violation(n: int, adj: set) -> tuple[str, tuple] | None:
    for x in range(n):
        if (x, x) not in adj:
            return "reflexive", (x,)
    for x, y in sorted(adj):
        if (y, x) not in adj:
            return "symmetric", (x, y)
    for x, y in sorted(adj):
        for z in range(n):
            if (y, z) in adj and (x, z) not in adj:
                return "transitive", (x, y, z)
    return None


@dataclass(frozen=True)
class S5Witness:
    """Which axiom failed and on which worlds (and relations)."""

    kind: str
    rels: tuple[int, ...]
    worlds: tuple[int, ...]


def is_s5n_frame(f, edges: Iterable[Iterable[tuple[int, int]]] | None = None
                 ) -> S5Witness | None:
    """None when every relation is an equivalence and confluence holds:
    for i != j, x Ri y and x Rj z admit w with y Rj w and z Ri w.

    Pass a Frame (partitions are equivalences by construction), or a world
    list plus explicit edge lists to have the equivalence axioms checked too.
    """
    if not isinstance(f, Frame):
        n = len(tuple(f))
        for r, edge_list in enumerate(edges or ()):
            adj = {(int(a), int(b)) for a, b in edge_list}
            wit = _equivalence_violation(n, adj)
            if wit is not None:
                kind, ws = wit
                return S5Witness(kind, (r,), ws)
        f = frame_from_edges(tuple(f), edges or ())
    n = f.n_worlds
    for i in range(f.n_rels):
        for j in range(f.n_rels):
            if i == j:
                continue
            ri, rj = f.rels[i], f.rels[j]
            for x in range(n):
                for y in range(n):
                    if ri[x] != ri[y]:
                        continue
                    for z in range(n):
                        if rj[x] != rj[z]:
                            continue
                        if not any(rj[y] == rj[w] and ri[z] == ri[w]
                                   for w in range(n)):
                            return S5Witness("confluence", (i, j), (x, y, z))
    return None


def universal_product(components: Sequence[str], n: int,
                      caps: Caps = DEFAULT_CAPS) -> Frame:
    """Worlds are n-tuples over the component set; relation i identifies
    tuples that agree everywhere except possibly coordinate i."""
    comps = [str(c) for c in components]
    total = len(comps) ** n
    if total > caps.max_lattice:
        raise SizeCapExceeded(total, caps.max_lattice)
    tuples = list(itertools.product(range(len(comps)), repeat=n))
    worlds = ["".join(comps[i] for i in t) for t in tuples]
    rels = []
    for i in range(n):
        blocks: dict[tuple, int] = {}
        col = []
        for t in tuples:
            key = t[:i] + t[i + 1:]
            if key not in blocks:
                blocks[key] = len(blocks)
            col.append(blocks[key])
        rels.append(col)
    return make_frame(worlds, rels)


def frame_queries(f: Frame) -> dict[str, bool]:
    """initial: some world reaches all others through the union of the
    relations; full: every relation relates two distinct worlds."""
    n = f.n_worlds
    seen = {0}
    work = [0]
    while work:
        x = work.pop()
        for rel in f.rels:
            for y in range(n):
                if rel[y] == rel[x] and y not in seen:
                    seen.add(y)
                    work.append(y)
    initial = len(seen) == n
    full = all(any(rel[a] == rel[b] for a in range(n) for b in range(a + 1, n))
               for rel in f.rels)
    return {"initial": initial, "full": full}


def _path_closure_table(f: Frame, caps: Caps) -> list[list[int]]:
    """For every relation subset X, the block masks of the join of the
    chosen partitions; act(X, T) is the union of blocks meeting T."""
    n = f.n_worlds
    if 1 << n > caps.max_enum:
        raise SizeCapExceeded(1 << n, caps.max_enum)
    table = []
    for x_mask in range(1 << f.n_rels):
        parent = list(range(n))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for i in range(f.n_rels):
            if x_mask >> i & 1:
                rel = f.rels[i]
                for a in range(n):
                    for b in range(a + 1, n):
                        if rel[a] == rel[b]:
                            ra, rb = find(a), find(b)
                            if ra != rb:
                                parent[ra] = rb
        block_mask = [0] * n
        for a in range(n):
            block_mask[find(a)] |= 1 << a
        single = [block_mask[find(a)] for a in range(n)]
        row = [0] * (1 << n)
        for t in range(1, 1 << n):
            low = t & -t
            row[t] = row[t ^ low] | single[low.bit_length() - 1]
        table.append(row)
    return table


def l_of_frame(f: Frame, caps: Caps = DEFAULT_CAPS) -> SdLattice:
    """Fixed pairs (X, T) where T is a union of blocks of the joined
    partitions indexed by X; the frame analog of the semidirect product."""
    table = _path_closure_table(f, caps)
    attr_names = [str(i + 1) for i in range(f.n_rels)]
    return semidirect_core(attr_names, f.worlds,
                           lambda x, t: table[x][t], caps=caps)


def p_morphism_search(src: Frame, dst: Frame,
                      caps: Caps = DEFAULT_CAPS) -> list[int] | None:
    """The lexicographically least surjective p-morphism, or None when the
    exhaustive search finishes empty. Forward preservation prunes partial
    assignments; surjectivity and the back condition gate the leaves."""
    if src.n_rels != dst.n_rels:
        raise BadFrame("frames carry different relation counts")
    ns, nd = src.n_worlds, dst.n_worlds
    assign = [-1] * ns
    nodes = 0

    def back_condition_ok() -> bool:
        for i in range(src.n_rels):
            ri_s, ri_d = src.rels[i], dst.rels[i]
            for w in range(ns):
                for v in range(nd):
                    if ri_d[v] != ri_d[assign[w]]:
                        continue
                    if not any(ri_s[w2] == ri_s[w] and assign[w2] == v
                               for w2 in range(ns)):
                        return False
        return True

    def extend(w: int) -> bool:
        nonlocal nodes
        if w == ns:
            return len(set(assign)) == nd and back_condition_ok()
        for v in range(nd):
            nodes += 1
            if nodes > caps.search_nodes:
                raise SearchBudgetExceeded(nodes, caps.search_nodes)
            ok = True
            for i in range(src.n_rels):
                ri_s, ri_d = src.rels[i], dst.rels[i]
                for w2 in range(w):
                    if ri_s[w2] == ri_s[w] and ri_d[assign[w2]] != ri_d[v]:
                        ok = False
                        break
                if not ok:
                    break
            # surjectivity is still achievable only if the missing images
            # fit into the remaining slots
            if ok:
                missing = nd - len(set(assign[:w]) | {v})
                if missing > ns - w - 1:
                    ok = False
            if ok:
                assign[w] = v
                if extend(w + 1):
                    return True
                assign[w] = -1
        return False

    if extend(0):
        return list(assign)
    return None


def all_partitions(n: int) -> list[tuple[int, ...]]:
    """Every partition of n worlds as a normalized block-id tuple."""
    out: list[tuple[int, ...]] = []

    def rec(prefix: list[int], used: int):
        if len(prefix) == n:
            out.append(tuple(prefix))
            return
        for b in range(used + 1):
            rec(prefix + [b], max(used, b + 1))

    rec([], 0)
    return out


def enumerate_frames(n_worlds: int, n_rels: int) -> list[Frame]:
    """All labeled frames on the given world count: every tuple of
    partitions, worlds named w0, w1, ..."""
    worlds = [f"w{i}" for i in range(n_worlds)]
    parts = all_partitions(n_worlds)
    return [make_frame(worlds, combo)
            for combo in itertools.product(parts, repeat=n_rels)]


def frame_to_json(f: Frame) -> dict:
    return {"worlds": list(f.worlds), "rels": [list(r) for r in f.rels]}


def frame_from_json(doc: dict) -> Frame:
    return make_frame([str(w) for w in doc["worlds"]],
                      [[int(b) for b in r] for r in doc["rels"]])
