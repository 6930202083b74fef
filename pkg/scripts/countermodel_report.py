"""Report on the built-in countermodel cover graph and its lattice.

Prints the graph shape, the verdict of every cover-graph property, the
ultrametric representability outcome, the recorded failing valuation for
the eight variable inclusion, and sampled checks of the others.
"""

import argparse

from rellat import (
    CATALOG,
    PROPERTY_IDS,
    build_countermodel,
    check_inclusion,
    check_property,
    reconstruct,
    ultrametric_representability,
    verify_witness,
)

WITNESS_LABELS = {
    "x": "{k0}", "w": "{p}",
    "y0": "{k1}", "y1": "{p11}", "y2": "{p12}",
    "z0": "{k2}", "z1": "{p21}", "z2": "{p22}",
}


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--samples", type=int, default=10**6)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    g = build_countermodel()
    nontrivial = [(j, c) for j, c in g.mjc if c != (j,)]
    print(f"graph: {len(g.elems)} join-irreducibles, {sum(g.jp)} join-prime, "
          f"{len(nontrivial)} nontrivial minimal covers")

    print("\ncover-graph properties:")
    for name in PROPERTY_IDS:
        w = check_property(g, name)
        verdict = "holds" if w is None else f"fails at {g.elems[w.j]}"
        print(f"  {name:>18}: {verdict}")

    rep = ultrametric_representability(g)
    print(f"\nultrametric representability: {type(rep).__name__}")

    L = reconstruct(g)
    print(f"reconstructed lattice: {L.n} elements")
    idx = {L.label(i): i for i in range(L.n)}
    valuation = {var: idx[lab] for var, lab in WITNESS_LABELS.items()}
    ok = verify_witness(L, CATALOG["Unjp"], valuation)
    pairs = ", ".join(f"{v}={WITNESS_LABELS[v]}" for v in sorted(WITNESS_LABELS))
    print(f"Unjp valuation ({pairs}): "
          f"{'genuine counterexample' if ok else 'NOT a counterexample'}")

    print(f"\nsampled inclusion checks ({args.samples} valuations, "
          f"seed {args.seed}):")
    for name in sorted(CATALOG):
        if name == "Unjp":
            continue
        res = check_inclusion(L, CATALOG[name], mode="sample",
                              samples=args.samples, seed=args.seed)
        print(f"  {name:>8}: {res.verdict}")
    return 0 if ok else 1


if __name__ == "__main__":
    raise SystemExit(main())
