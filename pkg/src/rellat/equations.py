"""Inclusion catalog and valuation checking over a finite lattice.

Exhaustive mode streams all |L|^k valuations in lexicographic order (first
variable in sorted-name order is the most significant digit) through the
compiled term programs in numpy chunks, so a reported counterexample is the
lexicographically least one and the evaluation count is exact. Sampled mode
draws from a seeded generator and is reproducible from (seed, samples).
Every counterexample is re-verified by the scalar evaluator before being
reported.
"""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .errors import (
    DEFAULT_CAPS,
    BudgetExceeded,
    Caps,
    NotDistributivelyEqual,
    UnboundVariable,
    UnknownEquation,
)
from .lattice import FiniteLattice
from .terms import (
    Inclusion,
    Join,
    Meet,
    Term,
    Var,
    distributive_equal,
    mk_join,
    mk_meet,
    variables,
)

# -- the catalog -------------------------------------------------------------


def ld(u0: Term, u1: Term, u2: Term) -> Term:
    """u0 ^ (u1 v u2): the left side of the distributive law."""
    return mk_meet([u0, mk_join([u1, u2])])


def rd(u0: Term, u1: Term, u2: Term) -> Term:
    """(u0 ^ u1) v (u0 ^ u2)."""
    return mk_join([mk_meet([u0, u1]), mk_meet([u0, u2])])


def lcd(u0: Term, u1: Term, u2: Term) -> Term:
    """(u0 v u1) ^ (u0 v u2): the dual left side."""
    return mk_meet([mk_join([u0, u1]), mk_join([u0, u2])])


def rcd(u0: Term, u1: Term, u2: Term) -> Term:
    """u0 v (u1 ^ u2)."""
    return mk_join([u0, mk_meet([u1, u2])])


def _catalog() -> dict[str, Inclusion]:
    x, y, z, w = Var("x"), Var("y"), Var("z"), Var("w")
    ys = (Var("y0"), Var("y1"), Var("y2"))
    zs = (Var("z0"), Var("z1"), Var("z2"))
    cat = {}
    cat["Dist"] = Inclusion(ld(x, y, z), rd(x, y, z), name="Dist")
    cat["Unjp"] = Inclusion(
        mk_meet([x, mk_join([ld(*ys), ld(*zs), w])]),
        mk_join([
            mk_meet([x, mk_join([rd(*ys), ld(*zs), w])]),
            mk_meet([x, mk_join([ld(*ys), rd(*zs), w])]),
        ]),
        name="Unjp",
    )
    cat["RL1"] = Inclusion(
        mk_meet([x, mk_join([mk_meet([y, mk_join([z, x])]),
                             mk_meet([z, mk_join([y, x])])])]),
        mk_join([mk_meet([x, y]), mk_meet([x, z])]),
        name="RL1",
    )
    cat["RL2"] = Inclusion(
        mk_meet([x, mk_join([lcd(*ys), lcd(*zs)])]),
        mk_join([
            mk_meet([x, mk_join([rcd(*ys), lcd(*zs)])]),
            mk_meet([x, mk_join([lcd(*ys), rcd(*zs)])]),
        ]),
        name="RL2",
    )
    cat["RMod"] = Inclusion(
        mk_meet([x, mk_join([mk_meet([x, y]), ld(*zs)])]),
        mk_join([
            mk_meet([x, mk_join([mk_meet([x, y]), rd(*zs)])]),
            mk_meet([x, ld(*zs)]),
        ]),
        name="RMod",
    )
    cat["SymPC"] = Inclusion(
        mk_meet([x, mk_join([y, z])]),
        mk_join([
            mk_meet([x, mk_join([y, mk_meet([z, mk_join([x, y])])])]),
            mk_meet([x, mk_join([z, mk_meet([y, mk_join([x, z])])])]),
        ]),
        name="SymPC",
    )
    cat["VarRL1"] = Inclusion(
        mk_meet([x, mk_join([mk_meet([y, z]), mk_meet([y, x]), mk_meet([z, x])])]),
        mk_join([mk_meet([x, y]), mk_meet([x, z])]),
        name="VarRL1",
    )
    cat["Sym"] = Inclusion(
        mk_meet([x, mk_join([y, ld(*zs)])]),
        mk_join([
            mk_meet([x, mk_join([y, rd(*zs)])]),
            mk_meet([x, mk_join([y, mk_meet([ld(*zs), mk_join([y, x])])])]),
        ]),
        name="Sym",
    )
    return cat


CATALOG: dict[str, Inclusion] = _catalog()


def catalog_inclusion(name: str) -> Inclusion:
    try:
        return CATALOG[name]
    except KeyError:
        raise UnknownEquation(f"unknown equation {name!r}; have {sorted(CATALOG)}")


# -- evaluation ---------------------------------------------------------------


def eval_term(L: FiniteLattice, t: Term, v: Mapping[str, int]) -> int:
    """Structural fold through L's meet/join tables."""
    if isinstance(t, Var):
        if t.name not in v:
            raise UnboundVariable(t.name)
        val = int(v[t.name])
        if not 0 <= val < L.n:
            raise ValueError(f"element {val} out of range for n={L.n}")
        return val
    table = L.meet if isinstance(t, Meet) else L.join
    acc = eval_term(L, t.args[0], v)
    for a in t.args[1:]:
        acc = int(table[acc, eval_term(L, a, v)])
    return acc


def verify_witness(L: FiniteLattice, inc: Inclusion, v: Mapping[str, int]) -> bool:
    """True iff the valuation is a genuine counterexample: lhs not <= rhs."""
    lv = eval_term(L, inc.lhs, v)
    rv = eval_term(L, inc.rhs, v)
    return not bool(L.leq[lv, rv])


def _compile(t: Term, var_index: dict[str, int]) -> list[tuple]:
    """Postorder register program: ("var", i) / ("meet", a, b) / ("join", a, b)."""
    prog: list[tuple] = []

    def rec(s: Term) -> int:
        if isinstance(s, Var):
            prog.append(("var", var_index[s.name]))
            return len(prog) - 1
        op = "meet" if isinstance(s, Meet) else "join"
        acc = rec(s.args[0])
        for a in s.args[1:]:
            r = rec(a)
            prog.append((op, acc, r))
            acc = len(prog) - 1
        return acc

    rec(t)
    return prog


def _run_program(prog: list[tuple], meet, join, cols: list[np.ndarray]) -> np.ndarray:
    regs: list[np.ndarray] = []
    for op in prog:
        if op[0] == "var":
            regs.append(cols[op[1]])
        elif op[0] == "meet":
            regs.append(meet[regs[op[1]], regs[op[2]]])
        else:
            regs.append(join[regs[op[1]], regs[op[2]]])
    return regs[-1]


@dataclass(frozen=True)
class CheckResult:
    verdict: str                       # holds | counterexample | no_counterexample_found
    witness: dict[str, int] | None
    evaluations: int
    mode: str
    seed: int | None = None
    samples: int | None = None


_CHUNK = 1 << 16

# worker state for parallel exhaustive scans
_W: dict = {}


def _init_worker(meet, join, leq, lprog, rprog, weights, n):
    _W.update(meet=meet, join=join, leq=leq, lprog=lprog, rprog=rprog,
              weights=weights, n=n)


def _scan_block(args: tuple[int, int]) -> int | None:
    lo, hi = args
    return _scan_range(_W["meet"], _W["join"], _W["leq"], _W["lprog"],
                       _W["rprog"], _W["weights"], _W["n"], lo, hi)


def _scan_range(meet, join, leq, lprog, rprog, weights, n, lo, hi) -> int | None:
    """Index of the first violating valuation in [lo, hi), or None."""
    for start in range(lo, hi, _CHUNK):
        stop = min(start + _CHUNK, hi)
        idx = np.arange(start, stop, dtype=np.int64)
        cols = [(idx // w) % n for w in weights]
        lv = _run_program(lprog, meet, join, cols)
        rv = _run_program(rprog, meet, join, cols)
        viol = ~leq[lv, rv]
        if viol.any():
            return start + int(np.argmax(viol))
    return None


def check_inclusion(
    L: FiniteLattice,
    inc: Inclusion,
    mode: str = "exhaustive",
    samples: int = 10**6,
    seed: int = 0,
    caps: Caps = DEFAULT_CAPS,
    jobs: int = 1,
) -> CheckResult:
    """Check lhs <= rhs over all (or sampled) valuations.

    Exhaustive: raises BudgetExceeded if |L|^k exceeds caps.eval_budget;
    returns the lexicographically least counterexample otherwise. The verdict,
    witness, and evaluation count do not depend on `jobs`.
    """
    vars_ = inc.variables
    k = len(vars_)
    n = L.n
    var_index = {name: i for i, name in enumerate(vars_)}
    lprog = _compile(inc.lhs, var_index)
    rprog = _compile(inc.rhs, var_index)

    if mode == "exhaustive":
        total = n**k
        if total > caps.eval_budget:
            raise BudgetExceeded(total, caps.eval_budget)
        weights = [n ** (k - 1 - i) for i in range(k)]
        first = None
        if jobs > 1 and total > 4 * _CHUNK:
            blocks = []
            step = -(-total // jobs)
            step = max(step, _CHUNK)
            for lo in range(0, total, step):
                blocks.append((lo, min(lo + step, total)))
            with ProcessPoolExecutor(
                max_workers=jobs,
                initializer=_init_worker,
                initargs=(L.meet, L.join, L.leq, lprog, rprog, weights, n),
            ) as ex:
                hits = [h for h in ex.map(_scan_block, blocks) if h is not None]
            first = min(hits) if hits else None
        else:
            first = _scan_range(L.meet, L.join, L.leq, lprog, rprog,
                                weights, n, 0, total)
        if first is None:
            return CheckResult("holds", None, total, "exhaustive")
        witness = {name: (first // weights[i]) % n for i, name in enumerate(vars_)}
        if not verify_witness(L, inc, witness):
            raise AssertionError("counterexample failed re-verification")
        return CheckResult("counterexample", witness, first + 1, "exhaustive")

    if mode != "sample":
        raise ValueError(f"unknown mode {mode!r}")
    rng = np.random.default_rng(seed)
    done = 0
    while done < samples:
        b = min(_CHUNK, samples - done)
        cols = [c for c in rng.integers(0, n, size=(k, b), dtype=np.int64)]
        lv = _run_program(lprog, L.meet, L.join, cols)
        rv = _run_program(rprog, L.meet, L.join, cols)
        viol = ~L.leq[lv, rv]
        if viol.any():
            pos = int(np.argmax(viol))
            witness = {name: int(cols[i][pos]) for i, name in enumerate(vars_)}
            if not verify_witness(L, inc, witness):
                raise AssertionError("counterexample failed re-verification")
            return CheckResult("counterexample", witness, done + pos + 1,
                               "sample", seed=seed, samples=samples)
        done += b
    return CheckResult("no_counterexample_found", None, samples, "sample",
                       seed=seed, samples=samples)


# -- the generated family ------------------------------------------------------


def _fresh(base: str, used: set[str]) -> str:
    if base not in used:
        return base
    i = 0
    while f"{base}{i}" in used:
        i += 1
    return f"{base}{i}"


def gen_unjp_family(sl: Term, sr: Term, tl: Term, tr: Term,
                    caps: Caps = DEFAULT_CAPS) -> Inclusion:
    """(x ^ (sl v tl v w)) <= (x ^ (sr v tl v w)) v (x ^ (sl v tr v w))
    for fresh x, w; requires sl = sr and tl = tr on distributive lattices."""
    if not distributive_equal(sl, sr, caps):
        raise NotDistributivelyEqual("first pair differs on distributive lattices")
    if not distributive_equal(tl, tr, caps):
        raise NotDistributivelyEqual("second pair differs on distributive lattices")
    used = set()
    for t in (sl, sr, tl, tr):
        used.update(variables(t))
    x = Var(_fresh("x", used))
    w = Var(_fresh("w", used))
    lhs = mk_meet([x, mk_join([sl, tl, w])])
    rhs = mk_join([
        mk_meet([x, mk_join([sr, tl, w])]),
        mk_meet([x, mk_join([sl, tr, w])]),
    ])
    return Inclusion(lhs, rhs)
