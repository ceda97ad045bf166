"""Gibbs rescalings ``Q_q`` of a chain and the maximal-dimension chain ``Q_0``."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .chain import MarkovChain, validate_chain
from .config import TOL
from .errors import NotIrreducible
from .measure import ZERO, cylinder_mass, iter_cylinders
from .spectral import elementwise_power, perron_root


@dataclass(frozen=True, eq=False)
class GibbsChain:
    """The chain ``Q_q = D^-1 P_q D / lambda_q`` with initial ``alpha p_i^q``.

    ``d`` is the right Perron probability vector of ``P_q`` and ``alpha``
    the normaliser ``1 / sum_i p_i^q``.
    """

    q: float
    base: MarkovChain
    chain: MarkovChain
    lam: float
    d: np.ndarray
    alpha: float

    @property
    def comparability_constant(self) -> float:
        return float(self.d.max() / self.d.min())


def gibbs_chain(chain: MarkovChain, q: float) -> GibbsChain:
    if not chain.irreducible:
        raise NotIrreducible(f"chain {chain.label!r} is not irreducible")
    P = chain.transition
    if q == 1.0:
        # stochastic P: lambda_1 = 1 and the uniform vector are exact
        lam, d = 1.0, np.full(chain.ell, 1.0 / chain.ell)
        Q, init, alpha = P, chain.initial, 1.0
    else:
        Pq = elementwise_power(P, q)
        trip = perron_root(Pq)
        lam, d = trip.lam, trip.right
        Q = Pq * d[None, :] / (lam * d[:, None])
        # conjugation leaves rows stochastic up to rounding; renormalise that away
        Q = Q / Q.sum(axis=1, keepdims=True)
        p = chain.initial
        logs = np.full(p.shape, -np.inf)
        logs[p > 0] = q * np.log(p[p > 0])
        top = logs.max()
        w = np.exp(logs - top)
        # alpha may overflow for extreme inputs; the normalised law never does
        with np.errstate(over="ignore"):
            alpha = float(np.exp(-top) / w.sum())
        init = w / w.sum()
    g = GibbsChain(q=float(q), base=chain,
                   chain=validate_chain(chain.ell, init, Q,
                                        label=f"{chain.label}|gibbs q={q:g}"),
                   lam=lam, d=d, alpha=float(alpha))
    _check(g)
    return g


def _check(g: GibbsChain) -> None:
    Q, P = g.chain.transition, g.base.transition
    assert np.all(np.abs(Q.sum(axis=1) - 1.0) <= 1e-10)
    assert np.array_equal(Q > 0, P > 0)
    assert np.array_equal(g.chain.initial > 0, g.base.initial > 0)
    assert np.all(g.d > 0) and abs(g.d.sum() - 1.0) <= 1e-12


def maximal_chain(chain: MarkovChain) -> GibbsChain:
    """The ``q = 0`` rescaling: same support, dimension equal to the support's."""
    return gibbs_chain(chain, 0.0)


def gibbs_identity_deviation(g: GibbsChain, n: int, cap: int = TOL.enumeration_cap) -> float:
    """Largest log-discrepancy in the exact identity

        m_q(I_w) = alpha / lam^(k-1) * m(I_w)^q * d[w_k] / d[w_1]

    over all positive-mass words of length ``k <= n``.
    """
    log_alpha = math.log(g.alpha)
    log_lam = math.log(g.lam)
    log_d = np.log(g.d)
    worst = 0.0
    for word, lm in iter_cylinders(g.base, n, cap=cap):
        lhs = cylinder_mass(g.chain, word)
        if lhs == ZERO:
            return math.inf
        k = len(word)
        rhs = log_alpha - (k - 1) * log_lam - log_d[word[0]] + g.q * lm + log_d[word[-1]]
        worst = max(worst, abs(lhs - rhs))
    return worst
