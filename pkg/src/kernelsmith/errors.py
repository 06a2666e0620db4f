"""Shared exception types.

Input errors are malformed data handed to us (bad vertex ids, ragged color
lists); contract errors are structurally valid inputs that violate a stated
precondition (subdividing an arc whose color has no successor, asking the
parity-free solver for a digraph with odd cycles). The CLI maps them to
distinct exit codes.
"""

from __future__ import annotations


class InputError(ValueError):
    """Malformed input: out-of-range ids, duplicate arcs, ragged lists."""


class ContractError(RuntimeError):
    """A documented precondition of an operation does not hold."""


class BudgetExhausted(RuntimeError):
    """The node-expansion budget ran out before the search finished."""


class TheoremViolation(RuntimeError):
    """A closed form or guaranteed construction disagreed with exact search.

    Carries a serializable payload describing the instance so the harness can
    write it to a report instead of losing it in a traceback.
    """

    def __init__(self, message: str, payload: dict | None = None):
        super().__init__(message)
        self.payload = payload or {}
