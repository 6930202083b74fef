"""Sweep small schemas and confirm the three lattice constructions agree.

For each schema the direct table build, the semidirect product over the
Hamming space, and the closure-system build must give isomorphic lattices,
with the table-to-pair map realizing the first isomorphism.
"""

import argparse
import itertools
import time

import numpy as np

from rellat import (
    Schema,
    build_R,
    build_from_closed_family,
    closure_system_R,
    find_isomorphism,
    hamming_space,
    r_size,
    rel_to_semidirect_map,
    semidirect,
)


def check_schema(schema: Schema) -> dict:
    rl = build_R(schema)
    n = rl.lattice.n
    sd = semidirect(hamming_space(schema))
    mapping = rel_to_semidirect_map(rl, sd)
    perm = np.array(mapping)
    sd_ok = (sd.lattice.n == n
             and sorted(mapping) == list(range(n))
             and np.array_equal(sd.lattice.leq[np.ix_(perm, perm)],
                                rl.lattice.leq))
    closed = build_from_closed_family(closure_system_R(schema))
    cl_ok = find_isomorphism(rl.lattice, closed) is not None
    return {"n": n, "predicted": r_size(schema),
            "semidirect_ok": sd_ok, "closure_ok": cl_ok}


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-attrs", type=int, default=2)
    ap.add_argument("--max-dom", type=int, default=2)
    args = ap.parse_args()

    names = "abcdefgh"
    failures = 0
    print(f"{'schema':>10} {'size':>6} {'semidirect':>10} {'closure':>8} "
          f"{'seconds':>8}")
    for na, nd in itertools.product(range(1, args.max_attrs + 1),
                                    range(1, args.max_dom + 1)):
        schema = Schema(tuple(names[:na]), tuple(str(d) for d in range(nd)))
        t0 = time.perf_counter()
        row = check_schema(schema)
        dt = time.perf_counter() - t0
        assert row["n"] == row["predicted"]
        ok = row["semidirect_ok"] and row["closure_ok"]
        failures += not ok
        print(f"{f'({na},{nd})':>10} {row['n']:>6} "
              f"{'ok' if row['semidirect_ok'] else 'FAIL':>10} "
              f"{'ok' if row['closure_ok'] else 'FAIL':>8} {dt:>8.2f}")
    if failures:
        print(f"{failures} schema(s) disagree")
        return 1
    print("all constructions agree")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
