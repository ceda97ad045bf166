"""Print the headline numbers for the worked example chains.

    python scripts/reproduce_examples.py
"""

import math

import numpy as np

from markovmeasure import analysis, chain, empirical, gibbs


def row(name, c):
    d = analysis.dimension_tau(c)
    s = analysis.support_box_dim(c)
    mono = analysis.is_monofractal(c)
    h200 = empirical.entropy_sequence(c, 200)[-1]
    print(f"{name:22s} dim={d:.10f}  support={s:.10f}  H_200={h200:.6f}  monofractal={mono}")


def main():
    examples = {
        "cantor": chain.cantor_chain(),
        "bernoulli(1/3,2/3)": chain.bernoulli_chain([1 / 3, 2 / 3]),
        "symmetric(0.3)": chain.symmetric_chain(0.3),
        "walk Z5": chain.cyclic_walk_chain(5),
        "two-state(.2,.4)": chain.two_state_chain(0.2, 0.4),
        "uniform rows 4x4": chain.uniform_rows_4state(),
        "non-maximal 3x3": chain.non_maximal_3state(),
    }
    for name, c in examples.items():
        row(name, c)

    c = chain.non_maximal_3state()
    g = gibbs.maximal_chain(c)
    print("\nnon-maximal 3x3, closed forms:")
    print(f"  log_3(1+sqrt2)   = {math.log(1 + math.sqrt(2), 3):.10f}")
    print(f"  (3+4 log_3 2)/7  = {(3 + 4 * math.log(2, 3)) / 7:.10f}")
    print("  maximal chain Q_0 =")
    print("    " + np.array2string(g.chain.transition, precision=10, prefix="    "))
    print(f"  dim of Q_0 chain = {analysis.dimension_tau(g.chain):.10f}")


if __name__ == "__main__":
    main()
