"""Exceptions and resource caps shared across the package."""
from __future__ import annotations

from dataclasses import dataclass


class RellatError(Exception):
    """Base class for all package errors."""


class NotAPartialOrder(RellatError):
    """The input relation is not a partial order; carries a witness."""

    def __init__(self, reason: str, witness: tuple):
        self.reason = reason
        self.witness = witness
        super().__init__(f"not a partial order ({reason}): witness {witness}")


class NotALattice(RellatError):
    """A pair of elements lacks a greatest lower / least upper bound."""

    def __init__(self, kind: str, pair: tuple):
        self.kind = kind  # "meet" or "join"
        self.pair = pair
        super().__init__(f"not a lattice: pair {pair} has no {kind}")


class NotIntersectionClosed(RellatError):
    """A set family misses a pairwise intersection; carries the pair."""

    def __init__(self, pair: tuple):
        self.pair = pair
        super().__init__(f"family not intersection-closed: members {pair}")


class SizeCapExceeded(RellatError):
    """A construction would exceed the configured element cap."""

    def __init__(self, need: int, cap: int):
        self.need = need
        self.cap = cap
        super().__init__(f"size {need} exceeds cap {cap}")


class EnumerationCapExceeded(RellatError):
    """A subset enumeration would exceed the configured cap."""

    def __init__(self, need: int, cap: int):
        self.need = need
        self.cap = cap
        super().__init__(f"enumeration of {need} subsets exceeds cap {cap}")


class CoverEnumerationCapExceeded(EnumerationCapExceeded):
    """Too many join-irreducibles for minimal-cover enumeration."""


class PartitionEnumerationCapExceeded(EnumerationCapExceeded):
    """A cover is too large to enumerate its binary splits."""


class BudgetExceeded(RellatError):
    """A check needs more evaluations than the configured budget allows."""

    def __init__(self, need: int, budget: int):
        self.need = need
        self.budget = budget
        super().__init__(f"{need} evaluations exceed budget {budget}")


class SearchBudgetExceeded(BudgetExceeded):
    """A backtracking search ran out of nodes; result is inconclusive."""


class SchemaMismatch(RellatError):
    """Two table elements live over different schemas."""


class NotSurjective(RellatError):
    """A typed map misses some attribute; carries the attribute index."""

    def __init__(self, attr: int):
        self.attr = attr
        super().__init__(f"typed map misses attribute {attr}")


class NotAnUltraSpace(RellatError):
    """A distance matrix violates one of the four space axioms."""

    def __init__(self, axiom: str, witness: tuple):
        self.axiom = axiom
        self.witness = witness
        super().__init__(f"space axiom {axiom} fails at {witness}")


class ParseError(RellatError):
    """Term syntax error; offset is a character position into the input."""

    def __init__(self, message: str, offset: int):
        self.offset = offset
        super().__init__(f"{message} (at offset {offset})")


class UnboundVariable(RellatError):
    """A valuation misses a variable of the term being evaluated."""

    def __init__(self, name: str):
        self.name = name
        super().__init__(f"no value for variable {name!r}")


class NotDistributivelyEqual(RellatError):
    """Two terms differ already on distributive lattices."""


class UnknownEquation(RellatError):
    """Equation name not present in the catalog."""


class UnknownProperty(RellatError):
    """Property id not recognized by check_property."""


class BadODGraph(RellatError):
    """An OD-graph violates a structural invariant."""


class BadFrame(RellatError):
    """A frame's relations are not equivalences / block arrays."""


@dataclass(frozen=True)
class Caps:
    """Resource limits; every expensive routine takes one of these.

    max_lattice   hard cap on lattice element count,
    max_enum      cap on subsets walked per enumeration,
    eval_budget   cap on term evaluations for exhaustive checking,
    search_nodes  node cap for backtracking searches,
    max_ji        cap on |J(L)| for cover enumeration.
    """

    max_lattice: int = 4096
    max_enum: int = 1 << 20
    eval_budget: int = 10**9
    search_nodes: int = 10**6
    max_ji: int = 16


DEFAULT_CAPS = Caps()
