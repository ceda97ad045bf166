"""Finite-depth diagnostics: partition sums, entropy sequences, box counts,
shift invariance and the weak quasi-Bernoulli ratios.

The recurrences here never enumerate words; the ``*_enumerated`` helpers do,
and serve as independent oracles for them.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterator, Optional

import numpy as np

from .chain import MarkovChain
from .config import TOL
from .errors import DepthCap, NotIrreducible, NotStationaryStart
from .measure import (ZERO, Word, cylinder_mass, generation, iter_cylinders,
                      shift_preimage_mass, support_count)
from .spectral import elementwise_power, recurrent_core


@dataclass(frozen=True)
class PartitionState:
    """``S_n`` stored as ``exp(log_scale) * vector`` with ``sum(vector) == 1``."""

    n: int
    log_scale: float
    vector: np.ndarray


def partition_states(chain: MarkovChain, q: float, n: int) -> Iterator[PartitionState]:
    """``S_1, ..., S_n`` from ``S_1 = p^q`` and ``S_{k+1} = S_k P_q``."""
    if n < 1:
        raise ValueError("n must be >= 1")
    Pq = elementwise_power(chain.transition, q)
    # log domain so tiny initial entries with q < 0 cannot overflow
    p = chain.initial
    logs = np.full(p.shape, -np.inf)
    logs[p > 0] = q * np.log(p[p > 0])
    top = logs.max()
    s = np.exp(logs - top)
    total = s.sum()
    log_scale = top + math.log(total)
    s = s / total
    yield PartitionState(1, log_scale, s)
    for k in range(2, n + 1):
        s = s @ Pq
        total = s.sum()
        log_scale += math.log(total)
        s = s / total
        yield PartitionState(k, log_scale, s)


def partition_sum(chain: MarkovChain, q: float, n: int) -> float:
    """``log_ell`` of the sum of ``m(I)^q`` over generation ``n``."""
    if q == 1.0:
        # each generation carries total mass 1
        return 0.0
    for state in partition_states(chain, q, n):
        pass
    return state.log_scale / math.log(chain.ell)


def partition_sum_enumerated(chain: MarkovChain, q: float, n: int,
                             cap: int = TOL.enumeration_cap) -> float:
    """Brute-force counterpart of :func:`partition_sum` over pruned words."""
    logs = np.fromiter((q * lm for _, lm in generation(chain, n, cap=cap)), dtype=float)
    top = logs.max()
    return (top + math.log(np.exp(logs - top).sum())) / math.log(chain.ell)


def empirical_tau(chain: MarkovChain, q: float, n: int) -> float:
    return partition_sum(chain, q, n) / n


def convergence_constant(chain: MarkovChain, q: float, n: int) -> float:
    """Estimate of ``C`` in ``|empirical_tau(n) - tau| <= C / n``, as
    ``2n |tau_2n - tau_n|``."""
    return 2 * n * abs(empirical_tau(chain, q, 2 * n) - empirical_tau(chain, q, n))


def entropy_sequence(chain: MarkovChain, n_max: int) -> list[float]:
    """``H_n = -T_n / n`` for ``n = 1..n_max`` where ``T_n`` is the sum of
    ``m(I) log_ell m(I)`` over generation ``n``.

    ``T_n`` follows ``T_n = T_{n-1} - sum_k h(L_k) s_{n-1,k}`` with the mass
    vectors ``s_n = s_1 P^{n-1}``.
    """
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    P = chain.transition
    with np.errstate(divide="ignore", invalid="ignore"):
        row_h = -np.where(P > 0, P * np.log(P), 0.0).sum(axis=1)
        p = chain.initial
        T = float(np.where(p > 0, p * np.log(p), 0.0).sum())
    s = p.copy()
    log_ell = math.log(chain.ell)
    out = [-T / log_ell]
    for n in range(2, n_max + 1):
        T -= float(row_h @ s)
        s = s @ P
        out.append(-T / (n * log_ell))
    return out


def entropy_enumerated(chain: MarkovChain, n: int, cap: int = TOL.enumeration_cap) -> float:
    """``H_n`` by direct summation over generation ``n``."""
    total = sum(math.exp(lm) * lm for _, lm in generation(chain, n, cap=cap))
    return -total / (n * math.log(chain.ell))


def box_count_dim(chain: MarkovChain, n: int) -> float:
    return math.log(support_count(chain, n)) / (n * math.log(chain.ell))


def _require_stationary_start(chain: MarkovChain) -> None:
    p = chain.initial
    if np.max(np.abs(p @ chain.transition - p)) > TOL.stationary_start:
        raise NotStationaryStart("initial distribution is not stationary for P")


def shift_invariance_deviation(chain: MarkovChain, n: int,
                               cap: int = TOL.enumeration_cap) -> float:
    """Largest ``|m(sigma^-1 I) - m(I)|`` over positive-mass words of length <= n."""
    _require_stationary_start(chain)
    worst = 0.0
    for word, lm in iter_cylinders(chain, n, cap=cap):
        pre = shift_preimage_mass(chain, word)
        worst = max(worst, abs(math.exp(pre) - math.exp(lm)))
    return worst


def mixing_table(P: np.ndarray) -> tuple[int, np.ndarray]:
    """Smallest ``k`` with ``P + ... + P^k`` positive on the recurrent core,
    together with that sum. ``k`` is searched up to ``ell**2``."""
    P = np.asarray(P, dtype=float)
    core = recurrent_core(P > 0)
    block = np.ix_(core, core)
    power = np.eye(len(P))
    acc = np.zeros_like(P)
    for k in range(1, len(P) ** 2 + 1):
        power = power @ P
        acc = acc + power
        if np.all(acc[block] > 0):
            return k, acc
    raise NotIrreducible("no k <= ell^2 makes P + ... + P^k positive")


def _reachable_lasts(chain: MarkovChain, n_max: int) -> np.ndarray:
    pattern = chain.transition > 0
    cur = chain.initial > 0
    seen = cur.copy()
    for _ in range(n_max - 1):
        cur = (cur.astype(int) @ pattern.astype(int)) > 0
        seen |= cur
    return seen


def quasi_bernoulli_ratio(chain: MarkovChain, n_max: int) -> tuple[float, float]:
    """Extremes of ``sum_{j<k} m(I cap sigma^-(n+j) J) / (m(I) m(J))`` over
    positive-mass words of generation <= ``n_max``.

    The ratio only depends on the last digit ``a`` of ``I`` and the first
    digit ``b`` of ``J``: it equals ``S[a, b] / nu[b]`` with ``S`` the
    positive sum ``P + ... + P^k``.
    """
    if not chain.irreducible:
        raise NotIrreducible(f"chain {chain.label!r} is not irreducible")
    _require_stationary_start(chain)
    _, S = mixing_table(chain.transition)
    nu = chain.initial
    lasts = np.flatnonzero(_reachable_lasts(chain, n_max))
    firsts = np.flatnonzero(nu > 0)
    table = S[np.ix_(lasts, firsts)] / nu[firsts][None, :]
    return float(table.min()), float(table.max())


def quasi_bernoulli_enumerated(chain: MarkovChain, n_max: int,
                               cap: int = TOL.enumeration_cap) -> tuple[float, float]:
    """Same extremes as :func:`quasi_bernoulli_ratio` by summing the masses
    of every concatenation ``I K J`` with ``len(K) < k``."""
    _require_stationary_start(chain)
    k, _ = mixing_table(chain.transition)
    words = list(iter_cylinders(chain, n_max, cap=cap))
    fillers = [w for j in range(k) for w in itertools.product(range(chain.ell), repeat=j)]
    if len(words) ** 2 * len(fillers) > cap:
        raise DepthCap(f"{len(words) ** 2 * len(fillers)} concatenations exceed {cap}")
    lo, hi = math.inf, -math.inf
    for I, mI in words:
        for J, mJ in words:
            num = 0.0
            for K in fillers:
                lm = cylinder_mass(chain, I + K + J)
                if lm > ZERO:
                    num += math.exp(lm)
            r = num / math.exp(mI + mJ)
            lo, hi = min(lo, r), max(hi, r)
    return lo, hi


def distinguish(a: MarkovChain, b: MarkovChain, tol: float = 1e-12) -> Optional[Word]:
    """A word of length 1 or 2 on which the two measures differ, else None."""
    if a.ell != b.ell:
        raise ValueError("chains have different alphabets")
    for length in (1, 2):
        for w in itertools.product(range(a.ell), repeat=length):
            ma, mb = cylinder_mass(a, w), cylinder_mass(b, w)
            va = math.exp(ma) if ma > ZERO else 0.0
            vb = math.exp(mb) if mb > ZERO else 0.0
            if abs(va - vb) > tol:
                return Word(w, a.ell)
    return None
