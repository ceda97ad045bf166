"""Nonnegative-matrix machinery: element-wise powers, Perron roots and
eigenvectors, stationary distributions and irreducibility.

Irreducibility is understood on the *recurrent core* of a pattern: states
with no incoming edge are never entered after the first step, so they are
pruned (repeatedly) before strong connectivity is checked. A pruned state
must still be able to reach the core. This keeps chains such as the Cantor
chain, whose middle column is zero, inside the irreducible class while
leaving their Perron root and stationary law unchanged.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import TOL
from .errors import NoConvergence, NotIrreducible


@dataclass(frozen=True)
class SpectralTriple:
    """Perron root with left and right eigenvectors, each summing to 1."""

    lam: float
    left: np.ndarray
    right: np.ndarray


def elementwise_power(P, q: float) -> np.ndarray:
    """Raise every positive entry of ``P`` to the power ``q``.

    Zero entries stay exactly zero for every ``q``, including ``q = 0``
    (so ``0**0`` is taken to be 0 here).
    """
    P = np.asarray(P, dtype=float)
    if not np.isfinite(q):
        raise ValueError(f"q must be finite, got {q}")
    out = np.zeros_like(P)
    mask = P > 0
    out[mask] = P[mask] ** q
    return out


def _reach(adj: np.ndarray, start: int, allowed: np.ndarray) -> np.ndarray:
    seen = np.zeros(len(adj), dtype=bool)
    seen[start] = True
    stack = [start]
    while stack:
        i = stack.pop()
        for j in np.flatnonzero(adj[i] & allowed):
            if not seen[j]:
                seen[j] = True
                stack.append(j)
    return seen


def recurrent_core(pattern) -> np.ndarray:
    """Boolean mask of the states left after repeatedly pruning states that
    have no incoming edge from the remaining ones."""
    adj = np.asarray(pattern, dtype=bool)
    alive = np.ones(len(adj), dtype=bool)
    while True:
        indeg = adj[alive][:, alive].any(axis=0)
        if indeg.all():
            return alive
        idx = np.flatnonzero(alive)
        alive[idx[~indeg]] = False
        if not alive.any():
            return alive


def is_irreducible(pattern) -> bool:
    """True when the digraph ``i -> j`` iff ``pattern[i, j]`` is strongly
    connected on its recurrent core and every pruned state reaches the core.

    For patterns without pruned states this is plain strong connectivity,
    decided by one forward and one backward search.
    """
    adj = np.asarray(pattern, dtype=bool)
    if adj.ndim != 2 or adj.shape[0] != adj.shape[1] or adj.shape[0] == 0:
        return False
    core = recurrent_core(adj)
    if not core.any():
        return False
    root = int(np.flatnonzero(core)[0])
    forward = _reach(adj, root, core)
    backward = _reach(adj.T, root, core)
    if not (forward[core].all() and backward[core].all()):
        return False
    everyone = np.ones(len(adj), dtype=bool)
    reaches_core = _reach(adj.T, root, everyone)
    return bool(reaches_core.all())


def _collatz_lower(B: np.ndarray, v: np.ndarray) -> float:
    """Collatz-Wielandt lower bound ``min_i (B v)_i / v_i`` for positive ``v``."""
    return float(np.min((B @ v) / v))


def _power_iterate(B: np.ndarray, shift: float, tol: float, max_iter: int,
                   adapt: bool = False) -> tuple[np.ndarray, float]:
    """Power iteration on ``B + shift I``.

    With ``adapt`` the shift is raised to the Collatz-Wielandt bound of the
    current iterate every few steps; it stays below the Perron root, so the
    limit is unchanged while the contraction ratio improves.
    """
    v = np.ones(len(B)) / len(B)
    for it in range(max_iter):
        w = B @ v + shift * v
        w /= w.sum()
        if np.max(np.abs(w - v)) < tol:
            return w, shift
        v = w
        if adapt and it % 16 == 0:
            shift = max(shift, _collatz_lower(B, v))
    raise NoConvergence(f"power iteration did not converge in {max_iter} iterations")


def perron_root(A, tol: float = TOL.power_iteration,
                max_iter: int = TOL.power_iteration_max_iter) -> SpectralTriple:
    """Spectral radius and positive eigenvectors of an irreducible
    nonnegative matrix by shifted power iteration.

    The matrix is first divided by its largest entry, then shifted by a
    positive lower bound of its Perron root (the largest diagonal entry or
    the Collatz-Wielandt bound, whichever is larger) so that periodic
    patterns converge. The root is the two-sided Rayleigh quotient
    ``u A v / u v``.
    """
    A = np.asarray(A, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError("A must be square")
    if not np.all(np.isfinite(A)) or np.any(A < 0):
        raise ValueError("A must be finite and nonnegative")
    if not is_irreducible(A > 0):
        raise NotIrreducible("matrix pattern is not irreducible")

    scale = A.max()
    B = A / scale
    # every row of an irreducible pattern is nonzero, so the bound is positive
    shift = max(B.diagonal().max(), _collatz_lower(B, np.ones(len(B))))
    right, shift = _power_iterate(B, shift, tol, max_iter, adapt=True)
    left, _ = _power_iterate(B.T, shift, tol, max_iter)
    lam_scaled = (left @ B @ right) / (left @ right)

    resid = max(np.max(np.abs(B @ right - lam_scaled * right)),
                np.max(np.abs(left @ B - lam_scaled * left)))
    if resid > TOL.eigen_residual * max(1.0, lam_scaled):
        raise NoConvergence(f"eigen residual {resid:.3e} too large")
    return SpectralTriple(lam=float(lam_scaled * scale), left=left, right=right)


def stationary_distribution(P) -> np.ndarray:
    """Unique probability vector ``nu`` with ``nu P = nu``.

    Solved directly from ``(P^T - I) nu = 0`` with a normalisation row, so
    periodic chains are handled like any other.
    """
    P = np.asarray(P, dtype=float)
    if not is_irreducible(P > 0):
        raise NotIrreducible("transition matrix is not irreducible")
    n = len(P)
    A = np.vstack([P.T - np.eye(n), np.ones(n)])
    b = np.zeros(n + 1)
    b[-1] = 1.0
    nu, *_ = np.linalg.lstsq(A, b, rcond=None)
    # stationary mass vanishes off the recurrent core
    nu[~recurrent_core(P > 0)] = 0.0
    nu = np.clip(nu, 0.0, None)
    nu /= nu.sum()
    resid = np.max(np.abs(nu @ P - nu))
    if resid > TOL.stationary_residual:
        raise NoConvergence(f"stationary residual {resid:.3e} too large")
    return nu


def perron_derivative(P, q: float) -> float:
    """d(lambda_q)/dq for ``lambda_q`` the Perron root of ``P_q``.

    Simple-eigenvalue perturbation: ``u M v / u v`` with
    ``M_ij = p_ij**q * ln p_ij`` on the support of ``P``.
    """
    return perron_root_with_derivative(P, q)[1]


def perron_root_with_derivative(P, q: float) -> tuple[SpectralTriple, float]:
    P = np.asarray(P, dtype=float)
    Pq = elementwise_power(P, q)
    trip = perron_root(Pq)
    M = np.zeros_like(P)
    mask = P > 0
    M[mask] = Pq[mask] * np.log(P[mask])
    u, v = trip.left, trip.right
    return trip, float((u @ M @ v) / (u @ v))
