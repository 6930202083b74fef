"""Command-line front door.

Verbs: build rel|typed|closure|frame|product|countermodel,
odgraph extract|reconstruct|props, check eq|prop|bc|pc|iso|nation,
search sublattice|pmorphism|embedding.

Every run prints a JSON report to stdout (sorted keys, so the same
invocation line yields byte-identical output) and a one-line summary to
stderr. Exit codes: 0 holds/success/found, 1 counterexample/witness/not
found, 2 usage error, 3 budget or cap exceeded.
"""
from __future__ import annotations

import argparse
import dataclasses
import hashlib
import json
import os
import string
import sys

from .equations import catalog_inclusion, check_inclusion, verify_witness
from .errors import (
    BudgetExceeded,
    Caps,
    DEFAULT_CAPS,
    EnumerationCapExceeded,
    RellatError,
    SizeCapExceeded,
)
from .frames import (
    frame_from_json,
    frame_to_json,
    is_s5n_frame,
    l_of_frame,
    make_frame,
    p_morphism_search,
    universal_product,
)
from .lattice import (
    build_from_closed_family,
    find_embedding,
    find_isomorphism,
    lattice_from_json,
    lattice_to_json,
    sublattice_closure,
)
from .odgraph import (
    IllDefined,
    PROPERTY_IDS,
    build_countermodel,
    check_property,
    extract_od_graph,
    od_graph_from_json,
    od_graph_to_json,
    reconstruct,
    ultrametric_representability,
)
from .relational import (
    Schema,
    bc_identity_check,
    build_R,
    closure_system_R,
    hamming_space,
    is_pairwise_complete,
    space_from_json,
    subspace,
    typed_R,
    typed_map_from_fibers,
)
from .terms import Inclusion, parse, pretty_inclusion


# -- plumbing -------------------------------------------------------------------


def _sha256(path: str) -> str:
    with open(path, "rb") as fh:
        return hashlib.sha256(fh.read()).hexdigest()


def _load(path: str) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def _dump(doc: dict, path: str) -> str:
    text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def _caps(args) -> Caps:
    caps = DEFAULT_CAPS
    cap = getattr(args, "cap", None)
    if cap is not None:
        caps = dataclasses.replace(caps, max_lattice=cap)
    budget = getattr(args, "budget", None)
    if budget is not None:
        caps = dataclasses.replace(caps, eval_budget=budget,
                                   search_nodes=budget)
    return caps


def _schema(n_attrs: int, n_dom: int) -> Schema:
    if n_attrs < 1 or n_dom < 1:
        raise RellatError("need at least one attribute and one domain value")
    if n_attrs > 26:
        raise RellatError("at most 26 attributes on the command line")
    attrs = tuple(string.ascii_lowercase[:n_attrs])
    dom = tuple(str(i) for i in range(n_dom))
    return Schema(attrs, dom)


def _report(args, command: str, inputs: dict[str, str], result: dict,
            seed=None, budget=None, evaluations=None) -> dict:
    params = {
        k: v for k, v in sorted(vars(args).items())
        if k not in ("func",) and v is not None
    }
    return {
        "command": command,
        "params": params,
        "inputs": {name: {"path": path, "sha256": _sha256(path)}
                   for name, path in inputs.items()},
        "seed": seed,
        "budget": budget,
        "evaluations": evaluations,
        "result": result,
    }


def _emit(report: dict, summary: str, code: int) -> int:
    print(json.dumps(report, indent=2, sort_keys=True))
    print(summary, file=sys.stderr)
    return code


def _written(path: str, sha: str) -> dict:
    return {"path": path, "sha256": sha}


def _valuation_doc(L, witness: dict[str, int] | None) -> dict | None:
    if witness is None:
        return None
    return {name: {"index": int(i), "label": L.label(int(i))}
            for name, i in witness.items()}


# -- build ----------------------------------------------------------------------


def _cmd_build_rel(args) -> int:
    caps = _caps(args)
    rl = build_R(_schema(args.attrs, args.dom), caps)
    sha = _dump(lattice_to_json(rl.lattice), args.out)
    rep = _report(args, "build rel", {}, {
        "n": rl.lattice.n, "out": _written(args.out, sha)})
    return _emit(rep, f"relational lattice: {rl.lattice.n} elements -> {args.out}", 0)


def _cmd_build_typed(args) -> int:
    caps = _caps(args)
    sizes = [int(x) for x in args.fibers.split(",") if x]
    sd = typed_R(typed_map_from_fibers(sizes), caps)
    sha = _dump(lattice_to_json(sd.lattice), args.out)
    rep = _report(args, "build typed", {}, {
        "n": sd.lattice.n, "fibers": sizes, "out": _written(args.out, sha)})
    return _emit(rep, f"typed relational lattice: {sd.lattice.n} elements", 0)


def _cmd_build_closure(args) -> int:
    caps = _caps(args)
    fam = closure_system_R(_schema(args.attrs, args.dom), caps)
    L = build_from_closed_family(fam, caps)
    sha = _dump(lattice_to_json(L), args.out)
    rep = _report(args, "build closure", {}, {
        "n": L.n, "out": _written(args.out, sha)})
    return _emit(rep, f"closure-system lattice: {L.n} closed sets", 0)


def _cmd_build_frame(args) -> int:
    rels = [[int(b) for b in part.split(",")] for part in args.rels.split(";")]
    n = len(rels[0]) if rels else 0
    worlds = args.worlds.split(",") if args.worlds else [f"w{i}" for i in range(n)]
    f = make_frame(worlds, rels)
    wit = is_s5n_frame(f)
    sha = _dump(frame_to_json(f), args.out)
    rep = _report(args, "build frame", {}, {
        "worlds": f.n_worlds, "relations": f.n_rels,
        "s5": wit is None,
        "s5_witness": dataclasses.asdict(wit) if wit else None,
        "out": _written(args.out, sha)})
    verdict = "confluent" if wit is None else "not confluent"
    return _emit(rep, f"frame with {f.n_worlds} worlds ({verdict})", 0)


def _cmd_build_product(args) -> int:
    caps = _caps(args)
    f = universal_product([str(i) for i in range(args.components)], args.n, caps)
    sha = _dump(frame_to_json(f), args.out)
    rep = _report(args, "build product", {}, {
        "worlds": f.n_worlds, "relations": f.n_rels,
        "out": _written(args.out, sha)})
    return _emit(rep, f"universal product frame: {f.n_worlds} worlds", 0)


def _cmd_build_countermodel(args) -> int:
    caps = _caps(args)
    g = build_countermodel()
    if args.graph:
        sha = _dump(od_graph_to_json(g), args.out)
        result = {"elements": g.n, "covers": len(g.mjc),
                  "out": _written(args.out, sha)}
        summary = f"countermodel cover graph: {g.n} elements -> {args.out}"
    else:
        L = reconstruct(g, caps)
        sha = _dump(lattice_to_json(L), args.out)
        result = {"n": L.n, "out": _written(args.out, sha)}
        summary = f"countermodel lattice: {L.n} elements -> {args.out}"
    return _emit(_report(args, "build countermodel", {}, result), summary, 0)


# -- odgraph --------------------------------------------------------------------


def _cmd_od_extract(args) -> int:
    caps = _caps(args)
    L = lattice_from_json(_load(args.lattice), caps)
    g = extract_od_graph(L, caps)
    sha = _dump(od_graph_to_json(g), args.out)
    rep = _report(args, "odgraph extract", {"lattice": args.lattice}, {
        "elements": g.n,
        "join_primes": sum(g.jp),
        "covers": len(g.mjc),
        "out": _written(args.out, sha)})
    return _emit(rep, f"extracted {g.n} irreducibles, {len(g.mjc)} covers", 0)


def _cmd_od_reconstruct(args) -> int:
    caps = _caps(args)
    g = od_graph_from_json(_load(args.odgraph))
    L = reconstruct(g, caps)
    sha = _dump(lattice_to_json(L), args.out)
    rep = _report(args, "odgraph reconstruct", {"odgraph": args.odgraph}, {
        "n": L.n, "out": _written(args.out, sha)})
    return _emit(rep, f"reconstructed lattice with {L.n} elements", 0)


def _witness_doc(g, w) -> dict | None:
    if w is None:
        return None
    return {
        "element": w.j,
        "element_label": g.elems[w.j],
        "cover": list(w.cover),
        "cover_labels": [g.elems[c] for c in w.cover],
        "context": w.context,
    }


def _cmd_od_props(args) -> int:
    caps = _caps(args)
    g = od_graph_from_json(_load(args.odgraph))
    inputs = {"odgraph": args.odgraph}
    L = None
    if args.lattice:
        L = lattice_from_json(_load(args.lattice), caps)
        inputs["lattice"] = args.lattice
    results = {}
    all_hold = True
    for name in PROPERTY_IDS:
        w = check_property(g, name, lattice=L, caps=caps)
        results[name] = {"holds": w is None, "witness": _witness_doc(g, w)}
        all_hold = all_hold and w is None
    rep = _report(args, "odgraph props", inputs, {"properties": results})
    held = sum(1 for r in results.values() if r["holds"])
    return _emit(rep, f"{held}/{len(results)} properties hold",
                 0 if all_hold else 1)


# -- check ----------------------------------------------------------------------


def _parse_valuation(text: str) -> dict[str, int]:
    out = {}
    for part in text.split(","):
        name, _, value = part.partition("=")
        if not name or not value:
            raise RellatError(f"bad valuation entry {part!r}; want name=index")
        out[name.strip()] = int(value)
    return out


def _cmd_check_eq(args) -> int:
    caps = _caps(args)
    L = lattice_from_json(_load(args.lattice), caps)
    if args.eq:
        inc = catalog_inclusion(args.eq)
    elif args.inclusion:
        inc = parse(args.inclusion)
        if not isinstance(inc, Inclusion):
            raise RellatError("the --inclusion text must contain '<='")
    else:
        raise RellatError("check eq needs --eq NAME or --inclusion TEXT")
    inputs = {"lattice": args.lattice}
    if args.witness:
        v = _parse_valuation(args.witness)
        confirmed = verify_witness(L, inc, v)
        rep = _report(args, "check eq", inputs, {
            "inclusion": pretty_inclusion(inc),
            "witness_confirmed": confirmed,
            "witness": _valuation_doc(L, v)},
            seed=None, budget=caps.eval_budget, evaluations=1)
        word = "fails" if confirmed else "does not fail"
        return _emit(rep, f"valuation {word} the inclusion", 1 if confirmed else 0)
    jobs = args.jobs if args.jobs else (os.cpu_count() or 1)
    res = check_inclusion(L, inc, mode=args.mode, samples=args.samples,
                          seed=args.seed, caps=caps, jobs=jobs)
    rep = _report(args, "check eq", inputs, {
        "inclusion": pretty_inclusion(inc),
        "verdict": res.verdict,
        "witness": _valuation_doc(L, res.witness)},
        seed=res.seed, budget=caps.eval_budget, evaluations=res.evaluations)
    ok = res.verdict in ("holds", "no_counterexample_found")
    return _emit(rep, f"{args.eq or 'inclusion'}: {res.verdict} "
                      f"({res.evaluations} evaluations)", 0 if ok else 1)


def _cmd_check_prop(args) -> int:
    caps = _caps(args)
    g = od_graph_from_json(_load(args.odgraph))
    inputs = {"odgraph": args.odgraph}
    L = None
    if args.lattice:
        L = lattice_from_json(_load(args.lattice), caps)
        inputs["lattice"] = args.lattice
    w = check_property(g, args.prop, lattice=L, caps=caps)
    rep = _report(args, "check prop", inputs, {
        "property": args.prop,
        "holds": w is None,
        "witness": _witness_doc(g, w)})
    verdict = "holds" if w is None else f"fails at {g.elems[w.j]}"
    return _emit(rep, f"{args.prop}: {verdict}", 0 if w is None else 1)


def _space_from_args(args, caps):
    if args.space:
        return space_from_json(_load(args.space)), {"space": args.space}
    if args.attrs is None or args.dom is None:
        raise RellatError("need --space FILE or --attrs N --dom N")
    space = hamming_space(_schema(args.attrs, args.dom), caps)
    if args.points:
        wanted = args.points.split(",")
        index = {p: i for i, p in enumerate(space.points)}
        missing = [p for p in wanted if p not in index]
        if missing:
            raise RellatError(f"unknown points: {missing}; have {list(space.points)}")
        space = subspace(space, sorted(index[p] for p in wanted))
    return space, {}


def _cmd_check_bc(args) -> int:
    caps = _caps(args)
    space, inputs = _space_from_args(args, caps)
    w = bc_identity_check(space, caps)
    names = space.attrs
    result = {"holds": w is None}
    if w is not None:
        result["witness"] = {
            "x1": [names[i] for i in range(len(names)) if w.x1 >> i & 1],
            "x2": [names[i] for i in range(len(names)) if w.x2 >> i & 1],
            "t": [space.points[i] for i in range(len(space.points))
                  if w.t >> i & 1],
        }
    rep = _report(args, "check bc", inputs, result,
                  budget=caps.max_enum)
    return _emit(rep, "composition identity " +
                 ("holds" if w is None else "fails"), 0 if w is None else 1)


def _cmd_check_pc(args) -> int:
    caps = _caps(args)
    space, inputs = _space_from_args(args, caps)
    w = is_pairwise_complete(space)
    names = space.attrs
    result = {"holds": w is None}
    if w is not None:
        result["witness"] = {
            "f": space.points[w.f],
            "g": space.points[w.g],
            "x1": [names[i] for i in range(len(names)) if w.x1 >> i & 1],
            "x2": [names[i] for i in range(len(names)) if w.x2 >> i & 1],
        }
    rep = _report(args, "check pc", inputs, result)
    return _emit(rep, "pairwise completeness " +
                 ("holds" if w is None else "fails"), 0 if w is None else 1)


def _cmd_check_iso(args) -> int:
    caps = _caps(args)
    L1 = lattice_from_json(_load(args.lattice), caps)
    L2 = lattice_from_json(_load(args.other), caps)
    m = find_isomorphism(L1, L2, caps)
    rep = _report(args, "check iso",
                  {"lattice": args.lattice, "other": args.other},
                  {"isomorphic": m is not None, "mapping": m},
                  budget=caps.search_nodes)
    return _emit(rep, "isomorphic" if m is not None else "not isomorphic",
                 0 if m is not None else 1)


def _cmd_check_nation(args) -> int:
    caps = _caps(args)
    L = lattice_from_json(_load(args.lattice), caps)
    g = extract_od_graph(L, caps)
    R = reconstruct(g, caps)
    m = find_isomorphism(L, R, caps) if L.n == R.n else None
    rep = _report(args, "check nation", {"lattice": args.lattice}, {
        "n": L.n, "reconstructed_n": R.n,
        "round_trip_isomorphic": m is not None})
    return _emit(rep, f"round trip {'succeeded' if m is not None else 'FAILED'}",
                 0 if m is not None else 1)


# -- search ---------------------------------------------------------------------


def _goal_all_prime_cover(g) -> dict | None:
    for k, cov in g.nontrivial():
        if all(g.jp[c] for c in cov):
            return {"element": k, "element_label": g.elems[k],
                    "cover": list(cov),
                    "cover_labels": [g.elems[c] for c in cov]}
    return None


def _goal_illdefined(g) -> dict | None:
    got = ultrametric_representability(g)
    if isinstance(got, IllDefined):
        return {"k0": g.elems[got.k0], "k1": g.elems[got.k1],
                "c": [g.elems[x] for x in got.c],
                "d": [g.elems[x] for x in got.d]}
    return None


def _cmd_search_sublattice(args) -> int:
    import itertools

    caps = _caps(args)
    L = lattice_from_json(_load(args.lattice), caps)
    goal = {"all-prime-cover": _goal_all_prime_cover,
            "illdefined": _goal_illdefined}[args.goal]
    tried = 0
    for size in range(1, args.max_seed + 1):
        for seed in itertools.combinations(range(L.n), size):
            tried += 1
            if tried > caps.search_nodes:
                raise BudgetExceeded(tried, caps.search_nodes)
            sub, incl = sublattice_closure(L, seed, caps)
            if len(sub.join_irreducibles()) > caps.max_ji:
                continue
            g = extract_od_graph(sub, caps)
            hit = goal(g)
            if hit is not None:
                result = {
                    "found": True,
                    "seed": list(seed),
                    "seed_labels": [L.label(x) for x in seed],
                    "sublattice_size": sub.n,
                    "elements": [L.label(x) for x in incl],
                    "witness": hit,
                }
                if args.out:
                    sha = _dump(lattice_to_json(sub), args.out)
                    result["out"] = _written(args.out, sha)
                rep = _report(args, "search sublattice",
                              {"lattice": args.lattice}, result,
                              budget=caps.search_nodes, evaluations=tried)
                return _emit(rep, f"goal {args.goal} met by seed {list(seed)} "
                                  f"({sub.n} elements)", 0)
    rep = _report(args, "search sublattice", {"lattice": args.lattice},
                  {"found": False}, budget=caps.search_nodes,
                  evaluations=tried)
    return _emit(rep, f"no sublattice met goal {args.goal}", 1)


def _cmd_search_pmorphism(args) -> int:
    caps = _caps(args)
    src = frame_from_json(_load(args.src))
    dst = frame_from_json(_load(args.dst))
    m = p_morphism_search(src, dst, caps)
    rep = _report(args, "search pmorphism",
                  {"src": args.src, "dst": args.dst},
                  {"found": m is not None, "mapping": m},
                  budget=caps.search_nodes)
    return _emit(rep, "p-morphism found" if m is not None else
                 "no p-morphism", 0 if m is not None else 1)


def _cmd_search_embedding(args) -> int:
    caps = _caps(args)
    L1 = lattice_from_json(_load(args.lattice), caps)
    L2 = lattice_from_json(_load(args.into), caps)
    m = find_embedding(L1, L2, caps)
    rep = _report(args, "search embedding",
                  {"lattice": args.lattice, "into": args.into},
                  {"found": m is not None, "mapping": m},
                  budget=caps.search_nodes)
    return _emit(rep, "embedding found" if m is not None else "no embedding",
                 0 if m is not None else 1)


# -- wiring ---------------------------------------------------------------------


def _add_caps_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--cap", type=int, help="max lattice size")
    p.add_argument("--budget", type=int, help="evaluation / search budget")
    p.add_argument("--jobs", type=int, help="worker count (verdicts are "
                                            "independent of this)")


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="rellat",
        description="finite-lattice laboratory for relational lattices")
    verbs = top.add_subparsers(dest="verb", required=True)

    build = verbs.add_parser("build", help="construct objects and save JSON")
    bsub = build.add_subparsers(dest="what", required=True)

    p = bsub.add_parser("rel", help="relational lattice over a schema")
    p.add_argument("--attrs", type=int, required=True)
    p.add_argument("--dom", type=int, required=True)
    p.add_argument("--out", required=True)
    _add_caps_flags(p)
    p.set_defaults(func=_cmd_build_rel)

    p = bsub.add_parser("typed", help="typed relational lattice from fiber sizes")
    p.add_argument("--fibers", required=True, help="comma list, e.g. 2,1")
    p.add_argument("--out", required=True)
    _add_caps_flags(p)
    p.set_defaults(func=_cmd_build_typed)

    p = bsub.add_parser("closure", help="closure-system lattice over a schema")
    p.add_argument("--attrs", type=int, required=True)
    p.add_argument("--dom", type=int, required=True)
    p.add_argument("--out", required=True)
    _add_caps_flags(p)
    p.set_defaults(func=_cmd_build_closure)

    p = bsub.add_parser("frame", help="frame from partition block lists")
    p.add_argument("--rels", required=True,
                   help="semicolon-separated block lists, e.g. 0,0,1;0,1,0")
    p.add_argument("--worlds", help="comma list of world names")
    p.add_argument("--out", required=True)
    _add_caps_flags(p)
    p.set_defaults(func=_cmd_build_frame)

    p = bsub.add_parser("product", help="universal product frame")
    p.add_argument("--components", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--out", required=True)
    _add_caps_flags(p)
    p.set_defaults(func=_cmd_build_product)

    p = bsub.add_parser("countermodel",
                        help="the eight-atom separation example")
    p.add_argument("--out", required=True)
    p.add_argument("--graph", action="store_true",
                   help="write the cover graph instead of the lattice")
    _add_caps_flags(p)
    p.set_defaults(func=_cmd_build_countermodel)

    od = verbs.add_parser("odgraph", help="duality data of a lattice")
    osub = od.add_subparsers(dest="what", required=True)

    p = osub.add_parser("extract", help="irreducibles, order, primes, covers")
    p.add_argument("--lattice", required=True)
    p.add_argument("--out", required=True)
    _add_caps_flags(p)
    p.set_defaults(func=_cmd_od_extract)

    p = osub.add_parser("reconstruct", help="lattice of closed downsets")
    p.add_argument("--odgraph", required=True)
    p.add_argument("--out", required=True)
    _add_caps_flags(p)
    p.set_defaults(func=_cmd_od_reconstruct)

    p = osub.add_parser("props", help="run every property checker")
    p.add_argument("--odgraph", required=True)
    p.add_argument("--lattice", help="companion lattice for join evaluation")
    _add_caps_flags(p)
    p.set_defaults(func=_cmd_od_props)

    check = verbs.add_parser("check", help="verdicts with witnesses")
    csub = check.add_subparsers(dest="what", required=True)

    p = csub.add_parser("eq", help="inclusion over all or sampled valuations")
    p.add_argument("--eq", help="catalog name, e.g. Unjp")
    p.add_argument("--inclusion", help="inline text, e.g. 'x ^ y <= x'")
    p.add_argument("--lattice", required=True)
    p.add_argument("--mode", choices=["exhaustive", "sample"],
                   default="exhaustive")
    p.add_argument("--samples", type=int, default=10**6)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--witness", help="replay a valuation, e.g. x=3,y=0")
    _add_caps_flags(p)
    p.set_defaults(func=_cmd_check_eq)

    p = csub.add_parser("prop", help="one cover-combinatorial property")
    p.add_argument("--prop", required=True, choices=list(PROPERTY_IDS))
    p.add_argument("--odgraph", required=True)
    p.add_argument("--lattice", help="companion lattice for join evaluation")
    _add_caps_flags(p)
    p.set_defaults(func=_cmd_check_prop)

    for what, helptext, func in (
        ("bc", "action composition identity on a space", _cmd_check_bc),
        ("pc", "pairwise completeness of a space", _cmd_check_pc),
    ):
        p = csub.add_parser(what, help=helptext)
        p.add_argument("--space", help="space JSON file")
        p.add_argument("--attrs", type=int, help="build a full function space")
        p.add_argument("--dom", type=int)
        p.add_argument("--points", help="restrict to these point labels")
        _add_caps_flags(p)
        p.set_defaults(func=func)

    p = csub.add_parser("iso", help="isomorphism between two lattices")
    p.add_argument("--lattice", required=True)
    p.add_argument("--other", required=True)
    _add_caps_flags(p)
    p.set_defaults(func=_cmd_check_iso)

    p = csub.add_parser("nation", help="extract-then-reconstruct round trip")
    p.add_argument("--lattice", required=True)
    _add_caps_flags(p)
    p.set_defaults(func=_cmd_check_nation)

    search = verbs.add_parser("search", help="bounded backtracking searches")
    ssub = search.add_subparsers(dest="what", required=True)

    p = ssub.add_parser("sublattice", help="seed-generated sublattice meeting a goal")
    p.add_argument("--lattice", required=True)
    p.add_argument("--goal", required=True,
                   choices=["all-prime-cover", "illdefined"])
    p.add_argument("--max-seed", type=int, default=3)
    p.add_argument("--out")
    _add_caps_flags(p)
    p.set_defaults(func=_cmd_search_sublattice)

    p = ssub.add_parser("pmorphism", help="surjective p-morphism between frames")
    p.add_argument("--src", required=True)
    p.add_argument("--dst", required=True)
    _add_caps_flags(p)
    p.set_defaults(func=_cmd_search_pmorphism)

    p = ssub.add_parser("embedding", help="lattice embedding")
    p.add_argument("--lattice", required=True)
    p.add_argument("--into", required=True)
    _add_caps_flags(p)
    p.set_defaults(func=_cmd_search_embedding)

    return top


def main(argv=None) -> int:
    top = build_parser()
    args = top.parse_args(argv)
    try:
        return args.func(args)
    except (BudgetExceeded, SizeCapExceeded, EnumerationCapExceeded) as e:
        report = {"command": f"{args.verb} {getattr(args, 'what', '')}".strip(),
                  "error": {"type": e.__class__.__name__, "detail": str(e)}}
        print(json.dumps(report, indent=2, sort_keys=True))
        print(f"budget exceeded: {e}", file=sys.stderr)
        return 3
    except (RellatError, OSError, ValueError, KeyError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
