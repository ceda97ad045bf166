"""Finite-depth convergence of empirical tau and entropy towards their limits.

    python scripts/convergence_study.py --q 2 --depths 10 25 50 100 200
"""

import argparse

from markovmeasure import analysis, chain, empirical


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--q", type=float, default=2.0)
    ap.add_argument("--depths", type=int, nargs="+", default=[10, 25, 50, 100, 200])
    args = ap.parse_args()
    chains = [chain.symmetric_chain(0.3), chain.two_state_chain(0.2, 0.4),
              chain.uniform_rows_4state(), chain.non_maximal_3state()]
    print("chain,n,tau_error,C_estimate,entropy_error")
    for c in chains:
        t = analysis.tau(c, args.q)
        d = analysis.dimension_tau(c)
        H = empirical.entropy_sequence(c, max(args.depths))
        for n in args.depths:
            err = abs(empirical.empirical_tau(c, args.q, n) - t)
            C = empirical.convergence_constant(c, args.q, n)
            print(f"{c.label},{n},{err:.3e},{C:.4f},{abs(H[n - 1] - d):.3e}")


if __name__ == "__main__":
    main()
