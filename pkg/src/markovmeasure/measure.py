"""The measure driven by a Markov chain: words, cylinder masses, the
distribution function, sampling, shift preimages and support counts.

Masses are carried as natural logarithms; a vanishing mass is ``ZERO``
(``-inf``) so that deep cylinders never underflow.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

import numpy as np

from .chain import MarkovChain
from .config import TOL
from .errors import DepthCap, DomainError

ZERO = -math.inf


def _log(x: float) -> float:
    return math.log(x) if x > 0 else ZERO


@dataclass(frozen=True)
class Word:
    """Finite word over ``{0, ..., ell-1}``; the empty word is ``[0, 1)``."""

    digits: tuple[int, ...]
    ell: int

    def __post_init__(self):
        object.__setattr__(self, "digits", tuple(int(d) for d in self.digits))
        if any(d < 0 or d >= self.ell for d in self.digits):
            raise ValueError(f"digits {self.digits} out of range for ell={self.ell}")

    @classmethod
    def parse(cls, text: str, ell: int) -> "Word":
        """Parse ``"0220"`` (ell <= 10) or ``"0.2.2.0"``."""
        parts = text.split(".") if "." in text else list(text)
        return cls(tuple(int(c) for c in parts if c != ""), ell)

    def __len__(self):
        return len(self.digits)

    def __str__(self):
        sep = "" if self.ell <= 10 else "."
        return sep.join(str(d) for d in self.digits)

    def __add__(self, other: "Word") -> "Word":
        return Word(self.digits + other.digits, self.ell)

    def left_endpoint(self) -> float:
        return float(sum(Fraction(d, self.ell ** (i + 1)) for i, d in enumerate(self.digits)))


def _digits(w) -> tuple[int, ...]:
    return w.digits if isinstance(w, Word) else tuple(w)


def cylinder_mass(chain: MarkovChain, w) -> float:
    """Log of ``p_{e1} p_{e1 e2} ... p_{e(n-1) en}``; ``ZERO`` if a factor vanishes."""
    d = _digits(w)
    if not d:
        return 0.0
    total = _log(chain.initial[d[0]])
    for a, b in zip(d, d[1:]):
        if total == ZERO:
            break
        total += _log(chain.transition[a, b])
    return total


def children_masses(chain: MarkovChain, w, parent: float) -> np.ndarray:
    """Log masses of the ``ell`` children of ``w`` given its log mass."""
    d = _digits(w)
    row = chain.initial if not d else chain.transition[d[-1]]
    with np.errstate(divide="ignore"):
        return parent + np.log(row)


def iter_cylinders(chain: MarkovChain, n: int, cap: int = TOL.enumeration_cap,
                   min_len: int = 1) -> Iterator[tuple[tuple[int, ...], float]]:
    """All positive-mass words of length ``min_len..n`` with their log masses,
    depth first, pruning ZERO branches.

    Raises DepthCap once more than ``cap`` cylinders have been visited.
    """
    with np.errstate(divide="ignore"):
        log_init = np.log(chain.initial)
        log_P = np.log(chain.transition)
    visited = 0
    stack: list[tuple[tuple[int, ...], float]] = [
        ((j,), float(log_init[j])) for j in reversed(range(chain.ell)) if log_init[j] > ZERO
    ]
    while stack:
        word, lm = stack.pop()
        visited += 1
        if visited > cap:
            raise DepthCap(f"enumeration to depth {n} exceeds {cap} cylinders")
        if len(word) >= min_len:
            yield word, lm
        if len(word) < n:
            row = log_P[word[-1]]
            for j in reversed(range(chain.ell)):
                if row[j] > ZERO:
                    stack.append((word + (j,), lm + float(row[j])))


def generation(chain: MarkovChain, n: int, cap: int = TOL.enumeration_cap):
    """Positive-mass words of length exactly ``n``."""
    return iter_cylinders(chain, n, cap=cap, min_len=n)


def _nonterminating_digits(x: Fraction, ell: int, depth: int) -> list[int]:
    digits = []
    for _ in range(depth):
        y = x * ell
        d = math.ceil(y) - 1
        digits.append(d)
        x = y - d
    return digits


def cdf(chain: MarkovChain, x: float, depth: int) -> float:
    """``m([0, x])`` truncated at ``depth`` digits.

    Uses the non-terminating base-``ell`` expansion of ``x``; the error is at
    most the mass of the depth-level cylinder containing ``x``.
    """
    if depth < 1:
        raise ValueError("depth must be >= 1")
    if not 0.0 <= x <= 1.0:
        raise DomainError(f"x = {x} is outside [0, 1]")
    if x == 0.0:
        return 0.0
    if x == 1.0:
        return 1.0
    digits = _nonterminating_digits(Fraction(x), chain.ell, depth)
    total = 0.0
    prefix = 0.0
    prev = None
    for d in digits:
        row = chain.initial if prev is None else chain.transition[prev]
        if prefix > ZERO:
            total += math.exp(prefix) * float(row[:d].sum())
        prefix = prefix + _log(row[d]) if prefix > ZERO else ZERO
        if prefix == ZERO:
            break
        prev = d
    return min(total, 1.0)


def sample(chain: MarkovChain, depth: int, seed: int) -> Word:
    """Simulate ``X_1 .. X_depth`` with numpy's PCG64 generator seeded by ``seed``."""
    if depth < 1:
        raise ValueError("depth must be >= 1")
    rng = np.random.Generator(np.random.PCG64(seed))
    cum_init = np.cumsum(chain.initial)
    cum_rows = np.cumsum(chain.transition, axis=1)
    u = rng.random(depth)
    digits = [_draw(cum_init, u[0], chain.initial)]
    for k in range(1, depth):
        prev = digits[-1]
        digits.append(_draw(cum_rows[prev], u[k], chain.transition[prev]))
    return Word(tuple(digits), chain.ell)


def _draw(cum: np.ndarray, u: float, probs: np.ndarray) -> int:
    j = int(np.searchsorted(cum, u * cum[-1], side="right"))
    j = min(j, len(cum) - 1)
    # guard against landing on a zero-probability state through rounding
    while probs[j] == 0:
        j -= 1
    return j


def shift_preimage_mass(chain: MarkovChain, w) -> float:
    """Log of ``m(sigma^{-1} I_w) = sum_j m(I_{j w})``."""
    d = _digits(w)
    if not d:
        return 0.0
    logs = [cylinder_mass(chain, (j,) + d) for j in range(chain.ell)]
    top = max(logs)
    if top == ZERO:
        return ZERO
    return top + math.log(sum(math.exp(v - top) for v in logs))


def support_count(chain: MarkovChain, n: int) -> int:
    """Number of generation-``n`` intervals with positive mass, exact."""
    if n < 1:
        raise ValueError("n must be >= 1")
    pattern = (chain.transition > 0).astype(object)
    c = [int(v > 0) for v in chain.initial]
    for _ in range(n - 1):
        c = [sum(c[k] * pattern[k, j] for k in range(chain.ell)) for j in range(chain.ell)]
    return int(sum(c))


def support_contains(chain: MarkovChain, w) -> bool:
    return cylinder_mass(chain, w) > ZERO

