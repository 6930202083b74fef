"""Relational lattices three ways: tables, ultrametric actions, closure systems.

Headers are bitmasks over the schema's attribute list; a row over a header is
a fixed-radix integer whose most significant digit belongs to the smallest
attribute index present. All three constructions order elements
deterministically, so cross-construction tests can rely on positions.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import (
    DEFAULT_CAPS,
    Caps,
    EnumerationCapExceeded,
    NotAnUltraSpace,
    NotSurjective,
    SchemaMismatch,
    SizeCapExceeded,
)
from .lattice import (
    ClosedFamily,
    FiniteLattice,
    build_from_leq,
    make_closed_family,
    set_label,
)


@dataclass(frozen=True)
class Schema:
    """Ordered attribute names and ordered domain value names."""

    attrs: tuple[str, ...]
    dom: tuple[str, ...]

    def __post_init__(self):
        if not self.attrs or not self.dom:
            raise ValueError("attrs and dom must be nonempty")
        if len(set(self.attrs)) != len(self.attrs):
            raise ValueError("duplicate attribute names")
        if len(set(self.dom)) != len(self.dom):
            raise ValueError("duplicate domain values")

    # -- headers ---------------------------------------------------------

    @property
    def full_header(self) -> int:
        return (1 << len(self.attrs)) - 1

    def header_mask(self, names: Iterable[str]) -> int:
        idx = {a: i for i, a in enumerate(self.attrs)}
        mask = 0
        for name in names:
            mask |= 1 << idx[name]
        return mask

    def header_names(self, mask: int) -> tuple[str, ...]:
        return tuple(a for i, a in enumerate(self.attrs) if mask >> i & 1)

    def header_size(self, mask: int) -> int:
        return bin(mask).count("1")

    def n_rows(self, mask: int) -> int:
        return len(self.dom) ** self.header_size(mask)

    # -- rows --------------------------------------------------------------

    def encode_row(self, mask: int, values: Sequence[int]) -> int:
        if len(values) != self.header_size(mask):
            raise ValueError("value count does not match header")
        base = len(self.dom)
        code = 0
        for v in values:
            code = code * base + v
        return code

    def decode_row(self, mask: int, code: int) -> tuple[int, ...]:
        base = len(self.dom)
        k = self.header_size(mask)
        out = [0] * k
        for i in range(k - 1, -1, -1):
            out[i] = code % base
            code //= base
        return tuple(out)

    def row_from_names(self, mask: int, assignment: Mapping[str, str]) -> int:
        vidx = {d: i for i, d in enumerate(self.dom)}
        values = [vidx[assignment[a]] for a in self.header_names(mask)]
        return self.encode_row(mask, values)

    def restrict_code(self, mask_from: int, code: int, mask_to: int) -> int:
        values = self.decode_row(mask_from, code)
        attrs_from = [i for i in range(len(self.attrs)) if mask_from >> i & 1]
        kept = [v for i, v in zip(attrs_from, values) if mask_to >> i & 1]
        return self.encode_row(mask_to, kept)

    def row_label(self, mask: int, code: int) -> str:
        values = self.decode_row(mask, code)
        names = [self.dom[v] for v in values]
        if not names:
            return "()"
        if all(len(s) == 1 for s in names):
            return "".join(names)
        return "(" + ",".join(names) + ")"

    def delta(self, f: int, g: int) -> int:
        """Attr mask where two full-header rows disagree."""
        fv = self.decode_row(self.full_header, f)
        gv = self.decode_row(self.full_header, g)
        mask = 0
        for i, (a, b) in enumerate(zip(fv, gv)):
            if a != b:
                mask |= 1 << i
        return mask


@dataclass(frozen=True)
class Table:
    """A relation instance: header mask plus a set of row codes."""

    schema: Schema
    header: int
    rows: frozenset[int]


def make_table(schema: Schema, attr_names: Sequence[str],
               row_tuples: Iterable[Sequence[str]]) -> Table:
    """Build from attribute names and rows of domain value names."""
    mask = schema.header_mask(attr_names)
    order = schema.header_names(mask)
    rows = set()
    for tup in row_tuples:
        if len(tup) != len(attr_names):
            raise ValueError("row width does not match header")
        assignment = dict(zip(attr_names, tup))
        rows.add(schema.row_from_names(mask, {a: assignment[a] for a in order}))
    return Table(schema, mask, frozenset(rows))


def table_label(t: Table) -> str:
    s = t.schema
    names = s.header_names(t.header)
    head = ("".join(names) if all(len(x) == 1 for x in names)
            else ",".join(names)) or "·"
    rows = ",".join(s.row_label(t.header, c) for c in sorted(t.rows))
    return f"({head}|{{{rows}}})"


def _same_schema(t1: Table, t2: Table) -> Schema:
    if t1.schema != t2.schema:
        raise SchemaMismatch("tables live over different schemas")
    return t1.schema


def restrict(t: Table, mask_to: int) -> Table:
    """Project rows onto a smaller header."""
    if mask_to & ~t.header:
        raise ValueError("can only restrict to a sub-header")
    s = t.schema
    rows = frozenset(s.restrict_code(t.header, c, mask_to) for c in t.rows)
    return Table(s, mask_to, rows)


def cylindrify(t: Table, mask_to: int) -> Table:
    """All rows over the larger header whose restriction lies in t."""
    if t.header & ~mask_to:
        raise ValueError("can only cylindrify to a super-header")
    s = t.schema
    attrs_to = [i for i in range(len(s.attrs)) if mask_to >> i & 1]
    rows = set()
    base = range(len(s.dom))
    new_positions = [p for p, i in enumerate(attrs_to) if not t.header >> i & 1]
    old_positions = [p for p, i in enumerate(attrs_to) if t.header >> i & 1]
    for c in t.rows:
        old_vals = s.decode_row(t.header, c)
        template = [0] * len(attrs_to)
        for p, v in zip(old_positions, old_vals):
            template[p] = v
        for fill in itertools.product(base, repeat=len(new_positions)):
            row = list(template)
            for p, v in zip(new_positions, fill):
                row[p] = v
            rows.add(s.encode_row(mask_to, row))
    return Table(s, mask_to, frozenset(rows))


def natural_join(t1: Table, t2: Table) -> Table:
    """Meet: union header, rows whose restrictions land in both tables."""
    s = _same_schema(t1, t2)
    h = t1.header | t2.header
    r1 = cylindrify(t1, h).rows
    r2 = cylindrify(t2, h).rows
    return Table(s, h, r1 & r2)


def inner_union(t1: Table, t2: Table) -> Table:
    """Join: shared header, union of both projections."""
    s = _same_schema(t1, t2)
    h = t1.header & t2.header
    return Table(s, h, restrict(t1, h).rows | restrict(t2, h).rows)


def table_leq(t1: Table, t2: Table) -> bool:
    """Header containment plus projected row containment."""
    _same_schema(t1, t2)
    if t2.header & ~t1.header:
        return False
    return restrict(t1, t2.header).rows <= t2.rows


# -- the direct construction ---------------------------------------------------


class RLattice:
    """The lattice of all tables over a schema, with its element list."""

    def __init__(self, schema: Schema, lattice: FiniteLattice,
                 elems: tuple[Table, ...]):
        self.schema = schema
        self.lattice = lattice
        self.elems = elems
        self._index = {t: i for i, t in enumerate(elems)}

    def index_of(self, t: Table) -> int:
        return self._index[t]


def r_size(schema: Schema) -> int:
    """Sum over headers X of 2^(|D|^|X|)."""
    total = 0
    for mask in range(schema.full_header + 1):
        total += 1 << schema.n_rows(mask)
    return total


def build_R(schema: Schema, caps: Caps = DEFAULT_CAPS) -> RLattice:
    """Enumerate every (header, row set) pair and order by table_leq."""
    total = r_size(schema)
    if total > caps.max_lattice:
        raise SizeCapExceeded(total, caps.max_lattice)
    elems: list[Table] = []
    for mask in range(schema.full_header + 1):
        nr = schema.n_rows(mask)
        for rowset in range(1 << nr):
            rows = frozenset(i for i in range(nr) if rowset >> i & 1)
            elems.append(Table(schema, mask, rows))
    # memoize projection maps per header pair to keep the n^2 order cheap
    proj: dict[tuple[int, int], list[int]] = {}

    def proj_map(h1: int, h2: int) -> list[int]:
        key = (h1, h2)
        if key not in proj:
            proj[key] = [schema.restrict_code(h1, c, h2)
                         for c in range(schema.n_rows(h1))]
        return proj[key]

    n = len(elems)
    leq = np.zeros((n, n), dtype=bool)
    for i, t1 in enumerate(elems):
        for j, t2 in enumerate(elems):
            if t2.header & ~t1.header:
                continue
            pm = proj_map(t1.header, t2.header)
            leq[i, j] = all(pm[c] in t2.rows for c in t1.rows)
    labels = [table_label(t) for t in elems]
    lattice = build_from_leq(n, leq, labels=labels, caps=caps)
    return RLattice(schema, lattice, tuple(elems))


# -- ultrametric spaces ----------------------------------------------------------


@dataclass(frozen=True)
class UltraSpace:
    """Points with a P(attrs)-valued distance; axioms hold by construction."""

    attrs: tuple[str, ...]
    points: tuple[str, ...]
    dist: tuple[tuple[int, ...], ...]


def make_space(attrs: Sequence[str], points: Sequence[str],
               dist: Sequence[Sequence[int]]) -> UltraSpace:
    """Validate identity, symmetry, separation, triangle; raise NotAnUltraSpace."""
    p = len(points)
    d = [[int(x) for x in row] for row in dist]
    if len(d) != p or any(len(row) != p for row in d):
        raise ValueError("dist must be points x points")
    for f in range(p):
        if d[f][f] != 0:
            raise NotAnUltraSpace("identity", (f,))
    for f in range(p):
        for g in range(p):
            if d[f][g] != d[g][f]:
                raise NotAnUltraSpace("symmetry", (f, g))
            if f != g and d[f][g] == 0:
                raise NotAnUltraSpace("separation", (f, g))
    for f in range(p):
        for g in range(p):
            for h in range(p):
                if d[f][g] & ~(d[f][h] | d[h][g]):
                    raise NotAnUltraSpace("triangle", (f, g, h))
    return UltraSpace(tuple(attrs), tuple(points), tuple(tuple(row) for row in d))


def hamming_space(schema: Schema, caps: Caps = DEFAULT_CAPS) -> UltraSpace:
    """All full-header rows, with the disagreement-set distance."""
    p = len(schema.dom) ** len(schema.attrs)
    if p > caps.max_enum:
        raise EnumerationCapExceeded(p, caps.max_enum)
    full = schema.full_header
    labels = [schema.row_label(full, c) for c in range(p)]
    d = [[schema.delta(f, g) for g in range(p)] for f in range(p)]
    return make_space(schema.attrs, labels, d)


def subspace(space: UltraSpace, indices: Sequence[int]) -> UltraSpace:
    idx = list(indices)
    pts = tuple(space.points[i] for i in idx)
    d = tuple(tuple(space.dist[i][j] for j in idx) for i in idx)
    return make_space(space.attrs, pts, d)


@dataclass(frozen=True)
class TypedMap:
    """A surjection from domain values onto attributes, as attr index per value."""

    schema: Schema
    pi: tuple[int, ...]

    def __post_init__(self):
        if len(self.pi) != len(self.schema.dom):
            raise ValueError("pi must assign every domain value")
        n_attrs = len(self.schema.attrs)
        if any(not 0 <= a < n_attrs for a in self.pi):
            raise ValueError("pi hits a nonexistent attribute")
        hit = set(self.pi)
        for a in range(n_attrs):
            if a not in hit:
                raise NotSurjective(a)

    def fiber(self, attr: int) -> tuple[int, ...]:
        return tuple(v for v, a in enumerate(self.pi) if a == attr)


def typed_map_from_fibers(fiber_sizes: Sequence[int]) -> TypedMap:
    """Convenience builder: attr i gets fiber_sizes[i] fresh values."""
    if not fiber_sizes or any(s < 1 for s in fiber_sizes):
        raise ValueError("every fiber must be nonempty")
    attrs = []
    dom = []
    pi = []
    for i, size in enumerate(fiber_sizes):
        name = chr(ord("a") + i) if i < 26 else f"a{i}"
        attrs.append(name)
        for k in range(size):
            dom.append(f"{name}{k}")
            pi.append(i)
    return TypedMap(Schema(tuple(attrs), tuple(dom)), tuple(pi))


def sections_space(tm: TypedMap, caps: Caps = DEFAULT_CAPS) -> UltraSpace:
    """Points are the maps choosing one fiber value per attribute."""
    s = tm.schema
    fibers = [tm.fiber(a) for a in range(len(s.attrs))]
    count = 1
    for f in fibers:
        count *= len(f)
    if count > caps.max_enum:
        raise EnumerationCapExceeded(count, caps.max_enum)
    full = s.full_header
    codes = [s.encode_row(full, choice)
             for choice in itertools.product(*fibers)]
    labels = [s.row_label(full, c) for c in codes]
    d = [[s.delta(f, g) for g in codes] for f in codes]
    return make_space(s.attrs, labels, d)


# -- the action and the semidirect construction ------------------------------------


def act(space: UltraSpace, x_mask: int, t_mask: int) -> int:
    """Points within distance-subset x_mask of some point of t_mask."""
    out = 0
    for f in range(len(space.points)):
        m = t_mask
        while m:
            b = m & -m
            g = b.bit_length() - 1
            m ^= b
            if space.dist[f][g] & ~x_mask == 0:
                out |= 1 << f
                break
    return out


@dataclass(frozen=True)
class PCWitness:
    f: int
    g: int
    x1: int
    x2: int


def is_pairwise_complete(space: UltraSpace) -> PCWitness | None:
    """None if every split of every distance admits a midpoint; else the
    first failing (f, g, X1, X2) in ascending scan order."""
    p = len(space.points)
    n_attrs = len(space.attrs)
    for f in range(p):
        for g in range(p):
            if f == g:
                continue
            d = space.dist[f][g]
            for x1 in range(1 << n_attrs):
                for x2 in range(1 << n_attrs):
                    if d & ~(x1 | x2):
                        continue
                    ok = any(
                        space.dist[f][h] & ~x1 == 0 and space.dist[h][g] & ~x2 == 0
                        for h in range(p)
                    )
                    if not ok:
                        return PCWitness(f, g, x1, x2)
    return None


@dataclass(frozen=True)
class BCWitness:
    x1: int
    x2: int
    t: int


def _act_table(space: UltraSpace, caps: Caps) -> list[list[int]]:
    p = len(space.points)
    if 1 << p > caps.max_enum:
        raise EnumerationCapExceeded(1 << p, caps.max_enum)
    table = []
    for x in range(1 << len(space.attrs)):
        # act(x, -) distributes over unions, so tabulate singletons and fold
        single = [act(space, x, 1 << g) for g in range(p)]
        row = [0] * (1 << p)
        for t in range(1, 1 << p):
            low = t & -t
            row[t] = row[t ^ low] | single[low.bit_length() - 1]
        table.append(row)
    return table


def bc_identity_check(space: UltraSpace, caps: Caps = DEFAULT_CAPS) -> BCWitness | None:
    """Check act(X1|X2, T) == act(X1, act(X2, T)) everywhere; None if it holds,
    else the first failing (X1, X2, T) in ascending scan order."""
    table = _act_table(space, caps)
    n_attrs = len(space.attrs)
    for x1 in range(1 << n_attrs):
        for x2 in range(1 << n_attrs):
            combined = table[x1 | x2]
            t1 = table[x1]
            t2 = table[x2]
            for t in range(1 << len(space.points)):
                if combined[t] != t1[t2[t]]:
                    return BCWitness(x1, x2, t)
    return None


class SdLattice:
    """Semidirect product of P(attrs) with the fixed point sets of an action."""

    def __init__(self, lattice: FiniteLattice, elems: tuple[tuple[int, int], ...],
                 attr_names: tuple[str, ...], point_names: tuple[str, ...]):
        self.lattice = lattice
        self.elems = elems
        self.attr_names = attr_names
        self.point_names = point_names
        self._index = {e: i for i, e in enumerate(elems)}

    def index_of(self, xt: tuple[int, int]) -> int:
        return self._index[xt]


def semidirect_core(
    attr_names: Sequence[str],
    point_names: Sequence[str],
    act_lookup,
    caps: Caps = DEFAULT_CAPS,
) -> SdLattice:
    """Fixed pairs (X, T) with act(X, T) == T, ordered componentwise.

    act_lookup(x_mask, t_mask) must be a closure operator in T for each X and
    monotone in X; both semidirect() and the frame lattice go through here.
    """
    n_attrs = len(attr_names)
    n_points = len(point_names)
    if 1 << n_points > caps.max_enum:
        raise EnumerationCapExceeded(1 << n_points, caps.max_enum)
    elems: list[tuple[int, int]] = []
    for x in range(1 << n_attrs):
        for t in range(1 << n_points):
            if act_lookup(x, t) == t:
                elems.append((x, t))
                if len(elems) > caps.max_lattice:
                    raise SizeCapExceeded(len(elems), caps.max_lattice)
    n = len(elems)
    leq = np.zeros((n, n), dtype=bool)
    for i, (x1, t1) in enumerate(elems):
        for j, (x2, t2) in enumerate(elems):
            leq[i, j] = (x1 & ~x2 == 0) and (t1 & ~t2 == 0)
    labels = [
        f"({set_label(tuple(attr_names), x)}|{set_label(tuple(point_names), t)})"
        for x, t in elems
    ]
    lattice = build_from_leq(n, leq, labels=labels, caps=caps)
    return SdLattice(lattice, tuple(elems), tuple(attr_names), tuple(point_names))


def semidirect(space: UltraSpace, caps: Caps = DEFAULT_CAPS) -> SdLattice:
    """The semidirect product over an ultrametric space's action."""
    table = _act_table(space, caps)
    return semidirect_core(space.attrs, space.points,
                           lambda x, t: table[x][t], caps=caps)


def typed_R(tm: TypedMap, caps: Caps = DEFAULT_CAPS) -> SdLattice:
    """The typed relational lattice: semidirect over the sections space."""
    return semidirect(sections_space(tm, caps), caps=caps)


def rel_to_semidirect_map(rl: RLattice, sd: SdLattice) -> list[int]:
    """Position map realizing (X, T) -> (A minus X, all rows projecting into T);
    sd must be the semidirect product of the schema's full Hamming space, whose
    points are the full-header rows in code order."""
    s = rl.schema
    full = s.full_header
    phi = []
    for t in rl.elems:
        x_img = full & ~t.header
        cyl = cylindrify(t, full)
        t_img = 0
        for code in cyl.rows:
            t_img |= 1 << code
        phi.append(sd.index_of((x_img, t_img)))
    return phi


# -- the closure-system construction ---------------------------------------------


def closure_system_R(schema: Schema, caps: Caps = DEFAULT_CAPS) -> ClosedFamily:
    """All subsets of attrs + full rows closed under: if delta(f,g) and g lie
    inside S then f lies in S."""
    n_attrs = len(schema.attrs)
    n_fun = len(schema.dom) ** n_attrs
    universe_bits = n_attrs + n_fun
    if 1 << universe_bits > caps.max_enum:
        raise EnumerationCapExceeded(1 << universe_bits, caps.max_enum)
    universe = list(schema.attrs) + [
        schema.row_label(schema.full_header, c) for c in range(n_fun)
    ]
    deltas = [[schema.delta(f, g) for g in range(n_fun)] for f in range(n_fun)]

    members = []
    for s_mask in range(1 << universe_bits):
        attr_part = s_mask & ((1 << n_attrs) - 1)
        if _is_closed(s_mask, attr_part, n_attrs, n_fun, deltas):
            members.append(s_mask)
            if len(members) > caps.max_lattice:
                raise SizeCapExceeded(len(members), caps.max_lattice)
    return make_closed_family(universe, members)


def _is_closed(s_mask: int, attr_part: int, n_attrs: int, n_fun: int,
               deltas: list[list[int]]) -> bool:
    for g in range(n_fun):
        if not s_mask >> (n_attrs + g) & 1:
            continue
        for f in range(n_fun):
            if s_mask >> (n_attrs + f) & 1:
                continue
            if deltas[f][g] & ~attr_part == 0:
                return False
    return True


# -- JSON interchange ----------------------------------------------------------


def space_to_json(space: UltraSpace) -> dict:
    names = list(space.attrs)
    return {
        "attrs": names,
        "points": list(space.points),
        "dist": [
            [[names[i] for i in range(len(names)) if cell >> i & 1]
             for cell in row]
            for row in space.dist
        ],
    }


def space_from_json(doc: dict) -> UltraSpace:
    attrs = [str(a) for a in doc["attrs"]]
    idx = {a: i for i, a in enumerate(attrs)}
    points = [str(p) for p in doc["points"]]
    dist = [
        [sum(1 << idx[str(a)] for a in cell) for cell in row]
        for row in doc["dist"]
    ]
    return make_space(attrs, points, dist)


def table_to_json(t: Table) -> dict:
    s = t.schema
    names = s.header_names(t.header)
    return {
        "header": list(names),
        "rows": [
            [s.dom[v] for v in s.decode_row(t.header, c)]
            for c in sorted(t.rows)
        ],
    }


def table_from_json(schema: Schema, doc: dict) -> Table:
    return make_table(schema, [str(a) for a in doc["header"]],
                      [[str(v) for v in row] for row in doc["rows"]])


def closure_of(schema: Schema, seed_mask: int) -> int:
    """Least fixpoint of one-step saturation above a seed subset."""
    n_attrs = len(schema.attrs)
    n_fun = len(schema.dom) ** n_attrs
    s = seed_mask
    changed = True
    while changed:
        changed = False
        attr_part = s & ((1 << n_attrs) - 1)
        for f in range(n_fun):
            if s >> (n_attrs + f) & 1:
                continue
            for g in range(n_fun):
                if s >> (n_attrs + g) & 1 and \
                        schema.delta(f, g) & ~attr_part == 0:
                    s |= 1 << (n_attrs + f)
                    changed = True
                    break
    return s
