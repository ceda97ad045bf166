"""The validated Markov chain that generates a measure, plus constructors for
the standard families."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .config import TOL
from .errors import (ChainError, DegenerateEntry, DimensionMismatch, NegativeEntry,
                     RowSumError, ZeroInitial)
from .spectral import is_irreducible, stationary_distribution


@dataclass(frozen=True, eq=False)
class MarkovChain:
    """Alphabet size, initial distribution and transition matrix.

    Build instances through :func:`validate_chain`; arrays are frozen.
    """

    ell: int
    initial: np.ndarray
    transition: np.ndarray
    irreducible: bool
    label: str = field(default="")

    def with_initial(self, initial) -> "MarkovChain":
        return validate_chain(self.ell, initial, self.transition, label=self.label)

    def stationary_start(self) -> "MarkovChain":
        """Same transitions, started from the stationary distribution."""
        return self.with_initial(stationary_distribution(self.transition))

    def __eq__(self, other):
        if not isinstance(other, MarkovChain):
            return NotImplemented
        return (self.ell == other.ell
                and np.array_equal(self.initial, other.initial)
                and np.array_equal(self.transition, other.transition))

    __hash__ = None


def validate_chain(ell: int, initial, transition, label: str = "") -> MarkovChain:
    """Check and freeze a chain specification.

    The initial vector must be a probability vector. Each transition row must
    sum to 1 within 1e-9 and no entry may equal 1. Irreducibility is
    recorded, not required.
    """
    ell = int(ell)
    if ell < 2 or ell > TOL.max_ell:
        raise DimensionMismatch(f"ell must lie in [2, {TOL.max_ell}], got {ell}")
    p = np.array(initial, dtype=float)
    P = np.array(transition, dtype=float)
    if p.shape != (ell,):
        raise DimensionMismatch(f"initial must have length {ell}, got shape {p.shape}")
    if P.shape != (ell, ell):
        raise DimensionMismatch(f"transition must be {ell}x{ell}, got shape {P.shape}")
    if not (np.all(np.isfinite(p)) and np.all(np.isfinite(P))):
        raise ChainError("entries must be finite")
    if np.any(P < 0) or np.any(p < 0):
        raise NegativeEntry("negative probability")
    if p.sum() == 0:
        raise ZeroInitial("initial distribution is identically zero")
    if abs(p.sum() - 1.0) > TOL.row_sum:
        raise RowSumError(f"initial distribution sums to {float(p.sum())!r}")
    rows = P.sum(axis=1)
    bad = np.flatnonzero(np.abs(rows - 1.0) > TOL.row_sum)
    if bad.size:
        raise RowSumError(f"row {bad[0]} sums to {float(rows[bad[0]])!r}")
    ones = np.argwhere(P == 1.0)
    if ones.size:
        i, j = ones[0]
        raise DegenerateEntry(f"p[{i},{j}] = 1 is not allowed")
    if abs(p.sum() - 1.0) > TOL.distribution_sum:
        p = p / p.sum()
    p.setflags(write=False)
    P.setflags(write=False)
    return MarkovChain(ell, p, P, is_irreducible(P > 0), label)


def cantor_chain() -> MarkovChain:
    row = [0.5, 0.0, 0.5]
    return validate_chain(3, row, [row] * 3, label="cantor")


def bernoulli_chain(p, initial=None) -> MarkovChain:
    """i.i.d. digits with law ``p``; the initial law defaults to ``p``."""
    p = np.asarray(p, dtype=float)
    init = p if initial is None else initial
    return validate_chain(len(p), init, np.tile(p, (len(p), 1)), label="bernoulli")


def symmetric_chain(p: float, initial=(0.5, 0.5)) -> MarkovChain:
    return validate_chain(2, initial, [[p, 1 - p], [1 - p, p]], label=f"symmetric-{p}")


def cyclic_walk_chain(ell: int, initial=None) -> MarkovChain:
    """Symmetric nearest-neighbour random walk on the integers mod ``ell``."""
    P = np.zeros((ell, ell))
    for i in range(ell):
        P[i, (i + 1) % ell] += 0.5
        P[i, (i - 1) % ell] += 0.5
    init = np.full(ell, 1.0 / ell) if initial is None else initial
    return validate_chain(ell, init, P, label=f"walk-Z{ell}")


def two_state_chain(a: float, b: float, initial=(0.5, 0.5)) -> MarkovChain:
    return validate_chain(2, initial, [[1 - a, a], [b, 1 - b]], label=f"two-state-{a}-{b}")


def uniform_rows_4state(initial=None) -> MarkovChain:
    """Four-state chain, uniform on the support of each row, not maximal."""
    P = [[1 / 3, 0, 1 / 3, 1 / 3],
         [0, 1 / 2, 0, 1 / 2],
         [1 / 2, 1 / 2, 0, 0],
         [1 / 2, 1 / 2, 0, 0]]
    init = [0.25] * 4 if initial is None else initial
    return validate_chain(4, init, P, label="uniform-rows-4")


def non_maximal_3state(initial=None) -> MarkovChain:
    """Three-state chain whose dimension falls short of its support's."""
    P = [[1 / 3, 1 / 3, 1 / 3],
         [1 / 2, 0, 1 / 2],
         [1 / 2, 0, 1 / 2]]
    init = [1 / 3] * 3 if initial is None else initial
    return validate_chain(3, init, P, label="non-maximal-3")
