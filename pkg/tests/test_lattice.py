"""Core lattice machinery against definition-level oracles."""
from __future__ import annotations

import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from rellat import (
    Caps,
    NotALattice,
    NotAPartialOrder,
    NotIntersectionClosed,
    SizeCapExceeded,
    all_lattices_upto,
    build_from_closed_family,
    build_from_leq,
    find_embedding,
    find_isomorphism,
    lattice_from_json,
    lattice_to_json,
    lattices_of_order,
    make_closed_family,
    random_lattice,
    set_label,
    structure_query,
    sublattice_closure,
)
from conftest import boolean_cube, chain, diamond_m3, leq_from_covers, pentagon_n5
import oracles


seeds = st.integers(min_value=0, max_value=10**6)


# -- validation ------------------------------------------------------------------


def test_rejects_non_reflexive():
    leq = np.eye(3, dtype=bool)
    leq[1, 1] = False
    with pytest.raises(NotAPartialOrder, match="reflexive"):
        build_from_leq(3, leq)


def test_rejects_non_antisymmetric():
    leq = np.eye(3, dtype=bool)
    leq[0, 1] = leq[1, 0] = True
    with pytest.raises(NotAPartialOrder, match="antisymmetric"):
        build_from_leq(3, leq)


def test_rejects_non_transitive():
    leq = np.eye(3, dtype=bool)
    leq[0, 1] = leq[1, 2] = True
    with pytest.raises(NotAPartialOrder, match="transitive"):
        build_from_leq(3, leq)


def test_rejects_poset_without_joins():
    # two maximal elements above a shared bottom: no join of the tops
    leq = leq_from_covers(3, [(0, 1), (0, 2)])
    with pytest.raises(NotALattice):
        build_from_leq(3, leq)


def test_rejects_oversized():
    leq = np.eye(5, dtype=bool)
    with pytest.raises(SizeCapExceeded):
        build_from_leq(5, leq, caps=Caps(max_lattice=4))


def test_transitivity_check_past_64_elements():
    # masks are plain ints; a 70-element chain must not overflow anything
    L = chain(70)
    assert L.bottom == 0 and L.top == 69
    assert int(L.join[3, 68]) == 68


# -- tables vs. brute force --------------------------------------------------------


@pytest.mark.parametrize("make", [diamond_m3, pentagon_n5,
                                  lambda: boolean_cube(3), lambda: chain(4)])
def test_meet_join_tables_match_bounds(make):
    L = make()
    leq = L.leq
    for a in range(L.n):
        for b in range(L.n):
            assert int(L.join[a, b]) == oracles.least_upper_bound(L.n, leq, [a, b])
            assert int(L.meet[a, b]) == oracles.greatest_lower_bound(L.n, leq, [a, b])


@settings(max_examples=25, deadline=None)
@given(seeds)
def test_random_lattice_tables_match_bounds(seed):
    L = random_lattice(seed)
    for a in range(L.n):
        for b in range(L.n):
            assert int(L.join[a, b]) == oracles.least_upper_bound(L.n, L.leq, [a, b])
            assert int(L.meet[a, b]) == oracles.greatest_lower_bound(L.n, L.leq, [a, b])


def test_bottom_top(m3, n5, b3):
    for L in (m3, n5, b3):
        assert all(L.leq[L.bottom, x] for x in range(L.n))
        assert all(L.leq[x, L.top] for x in range(L.n))


def test_join_all_meet_all(b3):
    atoms = b3.atoms()
    assert b3.join_all(atoms) == b3.top
    assert b3.meet_all(atoms) == b3.bottom
    assert b3.join_all([]) == b3.bottom
    assert b3.meet_all([]) == b3.top


# -- irreducibles and primes -------------------------------------------------------


@pytest.mark.parametrize("make", [diamond_m3, pentagon_n5,
                                  lambda: boolean_cube(3), lambda: chain(4)])
def test_irreducibles_and_primes_match_oracle(make):
    L = make()
    assert list(L.join_irreducibles()) == oracles.join_irreducibles(L.n, L.leq)
    assert list(L.join_primes()) == oracles.join_primes(L.n, L.leq)


@settings(max_examples=15, deadline=None)
@given(seeds)
def test_random_irreducibles_match_oracle(seed):
    L = random_lattice(seed, max_size=9)
    assert list(L.join_irreducibles()) == oracles.join_irreducibles(L.n, L.leq)
    assert list(L.join_primes()) == oracles.join_primes(L.n, L.leq)


def test_m3_structure(m3):
    q = structure_query(m3)
    assert q["atoms"] == (1, 2, 3)
    assert q["join_irreducibles"] == (1, 2, 3)
    assert q["join_primes"] == ()  # each atom is under the join of the others
    assert q["is_atomistic"]


def test_n5_structure(n5):
    q = structure_query(n5)
    assert q["join_irreducibles"] == (1, 2, 3)
    assert q["join_primes"] == (1, 2)
    assert not q["is_atomistic"]  # 3 covers 1, not the bottom


def test_cube_everything_prime(b3):
    q = structure_query(b3)
    assert q["join_irreducibles"] == q["atoms"]
    assert q["join_primes"] == q["atoms"]
    assert q["is_atomistic"]


def test_lower_covers(n5):
    assert n5.lower_covers(4) == (2, 3)
    assert n5.lower_covers(3) == (1,)
    assert n5.lower_covers(0) == ()


# -- closed families ---------------------------------------------------------------


def test_closed_family_builds_powerset():
    fam = make_closed_family(["x", "y"], [0b00, 0b01, 0b10, 0b11])
    L = build_from_closed_family(fam)
    assert L.n == 4
    assert L.labels == ("{}", "{x}", "{y}", "{x,y}")
    assert find_isomorphism(L, boolean_cube(2)) is not None


def test_closed_family_requires_universe():
    fam = make_closed_family(["x", "y"], [0b00, 0b01])
    with pytest.raises(NotIntersectionClosed):
        build_from_closed_family(fam)


def test_closed_family_requires_intersections():
    fam = make_closed_family(["x", "y", "z"], [0b000, 0b011, 0b110, 0b111])
    with pytest.raises(NotIntersectionClosed) as exc:
        build_from_closed_family(fam)
    a, b = exc.value.pair
    assert a & b not in {0b000, 0b011, 0b110, 0b111}


def test_set_label():
    assert set_label(["a", "b", "c"], 0b101) == "{a,c}"
    assert set_label(["a"], 0) == "{}"


# -- sublattices -------------------------------------------------------------------


def test_sublattice_closure_of_whole(m3):
    sub, incl = sublattice_closure(m3, range(m3.n))
    assert sub.n == m3.n
    assert list(incl) == list(range(m3.n))


def test_pentagon_inside_r22(r22):
    idx = {lbl: i for i, lbl in enumerate(r22.lattice.labels)}
    seed = [idx["(ab|{00})"], idx["(ab|{00,10})"], idx["(b|{1})"]]
    sub, incl = sublattice_closure(r22.lattice, seed)
    assert sub.n == 5
    assert find_isomorphism(sub, pentagon_n5()) is not None


def test_sublattice_inclusion_preserves_ops(r22):
    L = r22.lattice
    sub, incl = sublattice_closure(L, [1, 5, 9])
    for a in range(sub.n):
        for b in range(sub.n):
            assert incl[int(sub.join[a, b])] == int(L.join[incl[a], incl[b]])
            assert incl[int(sub.meet[a, b])] == int(L.meet[incl[a], incl[b]])


# -- isomorphism and embedding ------------------------------------------------------


def test_isomorphism_self_is_identity(m3):
    assert find_isomorphism(m3, m3) == list(range(m3.n))


def test_isomorphism_relabeled(m3):
    perm = [4, 2, 3, 1, 0]  # relabel elements, rebuild, recover a mapping
    inv = [perm.index(i) for i in range(5)]
    leq2 = np.array([[m3.leq[inv[a], inv[b]] for b in range(5)] for a in range(5)])
    M = build_from_leq(5, leq2)
    iso = find_isomorphism(m3, M)
    assert iso is not None
    for a in range(5):
        for b in range(5):
            assert m3.leq[a, b] == M.leq[iso[a], iso[b]]


def test_diamond_not_pentagon(m3, n5):
    assert find_isomorphism(m3, n5) is None


def test_embedding_chain_into_cube(b3):
    emb = find_embedding(chain(4), b3)
    assert emb is not None
    assert len(set(emb)) == 4


def test_embedding_pentagon_into_r22(r22, n5):
    emb = find_embedding(n5, r22.lattice)
    assert emb is not None
    L = r22.lattice
    for a in range(n5.n):
        for b in range(n5.n):
            assert int(L.join[emb[a], emb[b]]) == emb[int(n5.join[a, b])]
            assert int(L.meet[emb[a], emb[b]]) == emb[int(n5.meet[a, b])]


def test_no_diamond_inside_pentagon(m3, n5):
    assert find_embedding(m3, n5) is None


# -- serialization -----------------------------------------------------------------


def test_json_round_trip(n5):
    doc = lattice_to_json(n5)
    back = lattice_from_json(doc)
    assert back.n == n5.n
    assert back.labels == n5.labels
    assert np.array_equal(back.leq, n5.leq)
    assert np.array_equal(back.join, n5.join)


def test_json_is_plain_data(m3):
    import json

    text = json.dumps(lattice_to_json(m3))
    assert "leq" in json.loads(text)


# -- generation --------------------------------------------------------------------


def test_lattice_counts_match_slow_census():
    for k in range(1, 6):
        assert len(lattices_of_order(k)) == oracles.count_lattices(k)


def test_lattice_counts_frozen():
    got = [len(lattices_of_order(k)) for k in range(1, 8)]
    assert got == [1, 1, 1, 2, 5, 15, 53]
    assert len(all_lattices_upto(7)) == 78


def test_generated_lattices_are_pairwise_distinct():
    fives = lattices_of_order(5)
    for a, b in itertools.combinations(fives, 2):
        assert find_isomorphism(a, b) is None


@settings(max_examples=20, deadline=None)
@given(seeds)
def test_random_lattice_is_deterministic_and_bounded(seed):
    L1 = random_lattice(seed)
    L2 = random_lattice(seed)
    assert np.array_equal(L1.leq, L2.leq)
    assert 2 <= L1.n <= 12


@settings(max_examples=20, deadline=None)
@given(seeds, st.integers(0, 11), st.integers(0, 11))
def test_absorption_laws(seed, i, j):
    L = random_lattice(seed)
    a, b = i % L.n, j % L.n
    assert int(L.meet[a, int(L.join[a, b])]) == a
    assert int(L.join[a, int(L.meet[a, b])]) == a
    assert int(L.join[a, a]) == a
    assert int(L.meet[a, b]) == int(L.meet[b, a])
