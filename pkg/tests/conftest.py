import numpy as np
import pytest
from hypothesis import strategies as st

from markovmeasure.chain import (bernoulli_chain, cantor_chain, cyclic_walk_chain,
                                 non_maximal_3state, symmetric_chain, two_state_chain,
                                 uniform_rows_4state, validate_chain)
from markovmeasure.spectral import is_irreducible


def corpus():
    """Chains exercised by the cross-module invariants and the acceptance suite."""
    return [
        cantor_chain(),
        bernoulli_chain([0.2, 0.3, 0.5]),
        bernoulli_chain([1 / 3, 2 / 3]),
        symmetric_chain(0.3),
        two_state_chain(0.2, 0.4),
        cyclic_walk_chain(3),
        cyclic_walk_chain(5),
        uniform_rows_4state(),
        non_maximal_3state(),
        validate_chain(3, [0.1, 0.6, 0.3],
                       [[0.1, 0.6, 0.3], [0.5, 0.0, 0.5], [0.25, 0.25, 0.5]], label="mixed-3"),
    ]


@pytest.fixture(params=corpus(), ids=lambda c: c.label)
def chain(request):
    return request.param


@st.composite
def stochastic_matrices(draw, min_ell=2, max_ell=5, allow_zeros=True):
    """Irreducible row-stochastic matrices with no entry equal to 1."""
    ell = draw(st.integers(min_ell, max_ell))
    weights = draw(st.lists(st.floats(0.05, 1.0), min_size=ell * ell, max_size=ell * ell))
    W = np.array(weights).reshape(ell, ell)
    if allow_zeros:
        mask = np.array(draw(st.lists(st.booleans(), min_size=ell * ell, max_size=ell * ell)))
        W = W * mask.reshape(ell, ell)
    # every row needs two positive entries so that none can equal 1
    for i in range(ell):
        if np.count_nonzero(W[i]) < 2:
            W[i, i] = W[i, i] or 0.5
            W[i, (i + 1) % ell] = W[i, (i + 1) % ell] or 0.5
    P = W / W.sum(axis=1, keepdims=True)
    if not is_irreducible(P > 0):
        ring = np.roll(np.eye(ell), 1, axis=1)
        P = (P + ring) / 2
    return P


@st.composite
def chains(draw, **kw):
    P = draw(stochastic_matrices(**kw))
    ell = len(P)
    # weights are 0 or >= 1e-3 so that p_i^q stays representable for moderate |q|
    weight = st.one_of(st.just(0.0), st.floats(1e-3, 1.0))
    w = np.array(draw(st.lists(weight, min_size=ell, max_size=ell)))
    if w.sum() == 0:
        w[0] = 1.0
    return validate_chain(ell, w / w.sum(), P, label="random")


def pytest_terminal_summary(terminalreporter):
    lines = []
    for outcome in ("passed", "failed"):
        for rep in terminalreporter.stats.get(outcome, []):
            if rep.when == "call" and "test_acceptance" in rep.nodeid:
                lines.append((rep.nodeid.split("::", 1)[1], outcome.upper()))
    if lines:
        terminalreporter.section("acceptance criteria")
        for name, outcome in sorted(lines):
            terminalreporter.write_line(f"{outcome:6s} {name}")
