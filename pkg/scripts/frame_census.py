"""Census of full initial two-relation frames and the map biconditional.

For every full initial frame up to the world bound, search for a surjective
p-morphism from the 2x2 universal product and for an embedding of the
frame's lattice into the 2x2 relation lattice. The two searches must agree
on every instance where both finish within budget.
"""

import argparse

from rellat import (
    Schema,
    SearchBudgetExceeded,
    build_R,
    enumerate_frames,
    find_embedding,
    frame_queries,
    l_of_frame,
    p_morphism_search,
    universal_product,
)


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-worlds", type=int, default=3)
    args = ap.parse_args()

    frames = []
    for n_worlds in range(1, args.max_worlds + 1):
        for f in enumerate_frames(n_worlds, 2):
            q = frame_queries(f)
            if q["initial"] and q["full"]:
                frames.append(f)
    print(f"{len(frames)} full initial frames with at most "
          f"{args.max_worlds} worlds")

    prod = universal_product(["0", "1"], 2)
    target = build_R(Schema(("a", "b"), ("0", "1"))).lattice
    disagreements = 0
    print(f"\n{'frame':>24} {'|L|':>4} {'p-morphism':>11} {'embedding':>10}")
    for f in frames:
        rels = ";".join(",".join(str(b) for b in rel) for rel in f.rels)
        try:
            pm = "yes" if p_morphism_search(prod, f) is not None else "no"
        except SearchBudgetExceeded:
            pm = "budget"
        L = l_of_frame(f).lattice
        try:
            emb = "yes" if find_embedding(L, target) is not None else "no"
        except SearchBudgetExceeded:
            emb = "budget"
        if "budget" not in (pm, emb) and pm != emb:
            disagreements += 1
        print(f"{rels:>24} {L.n:>4} {pm:>11} {emb:>10}")

    if disagreements:
        print(f"\n{disagreements} completed instance(s) DISAGREE")
        return 1
    print("\nno completed instance disagrees")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
