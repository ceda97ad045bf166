"""Structure function, dimensions and the Legendre spectrum."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .chain import MarkovChain
from .config import TOL
from .errors import NotIrreducible
from .spectral import (elementwise_power, perron_root, perron_root_with_derivative,
                       stationary_distribution)

DEFAULT_Q_GRID = np.linspace(-20.0, 20.0, 401)


def _require_irreducible(chain: MarkovChain) -> None:
    if not chain.irreducible:
        raise NotIrreducible(f"chain {chain.label!r} is not irreducible")


def tau(chain: MarkovChain, q: float) -> float:
    """``log_ell`` of the Perron root of ``P_q``."""
    _require_irreducible(chain)
    lam = perron_root(elementwise_power(chain.transition, q)).lam
    return math.log(lam) / math.log(chain.ell)


def tau_prime(chain: MarkovChain, q: float) -> float:
    return tau_with_prime(chain, q)[1]


def tau_with_prime(chain: MarkovChain, q: float) -> tuple[float, float]:
    """``(tau(q), tau'(q))`` from a single Perron computation."""
    _require_irreducible(chain)
    trip, dlam = perron_root_with_derivative(chain.transition, q)
    log_ell = math.log(chain.ell)
    return math.log(trip.lam) / log_ell, float(dlam / (trip.lam * log_ell))


def dimension_tau(chain: MarkovChain) -> float:
    """Dimension of the measure as ``-tau'(1)``."""
    return -tau_prime(chain, 1.0)


def row_entropies(P: np.ndarray, ell: int) -> np.ndarray:
    """Base-``ell`` entropy of each row; zero entries contribute nothing."""
    P = np.asarray(P, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        terms = np.where(P > 0, P * np.log(P), 0.0)
    return -terms.sum(axis=1) / math.log(ell)


def dimension_entropy(chain: MarkovChain) -> float:
    """Dimension of the measure as the stationary average of row entropies."""
    _require_irreducible(chain)
    pi = stationary_distribution(chain.transition)
    return float(pi @ row_entropies(chain.transition, chain.ell))


def support_box_dim(chain: MarkovChain) -> float:
    """Box dimension (equal to the Hausdorff dimension) of the support."""
    return tau(chain, 0.0)


def is_monofractal(chain: MarkovChain, tol: float = TOL.monofractal) -> bool:
    """``tau`` is the line through ``(0, tau(0))`` and ``(1, 0)`` at ``q = -2, 2``."""
    t0 = tau(chain, 0.0)
    return all(abs(tau(chain, q) - t0 * (1 - q)) < tol for q in (-2.0, 2.0))


class TauPoint(NamedTuple):
    q: float
    tau: float
    tau_prime: float


@dataclass(frozen=True)
class TauCurve:
    points: list[TauPoint]

    @classmethod
    def sample(cls, chain: MarkovChain, q_grid: Sequence[float]) -> "TauCurve":
        return cls([TauPoint(float(q), *tau_with_prime(chain, q)) for q in sorted(q_grid)])

    @property
    def q(self) -> np.ndarray:
        return np.array([p.q for p in self.points])

    @property
    def tau(self) -> np.ndarray:
        return np.array([p.tau for p in self.points])

    @property
    def tau_prime(self) -> np.ndarray:
        return np.array([p.tau_prime for p in self.points])


class SpectrumPoint(NamedTuple):
    alpha: float
    f: float
    q: float


def legendre_spectrum(chain: MarkovChain, q_grid: Sequence[float] = DEFAULT_Q_GRID,
                      require_range: bool = True) -> list[SpectrumPoint]:
    """Parametric Legendre transform of ``tau``.

    For each ``q`` the point ``alpha = -tau'(q)``, ``f = q alpha + tau(q)`` is
    emitted; the list is sorted by ``alpha``. With ``require_range`` the grid
    must reach at least ``[-20, 20]``.
    """
    _require_irreducible(chain)
    grid = np.asarray(sorted(q_grid), dtype=float)
    if require_range and (grid[0] > -20.0 or grid[-1] < 20.0):
        raise ValueError("q grid must cover [-20, 20]")
    pts = []
    for q in grid:
        t, tp = tau_with_prime(chain, q)
        pts.append(SpectrumPoint(-tp, -q * tp + t, float(q)))
    return sorted(pts, key=lambda p: (p.alpha, p.q))
