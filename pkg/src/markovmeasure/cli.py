"""Command-line interface.

Tabular commands write CSV with a header; ``dimension``, ``gibbs``,
``maximal`` and ``check`` write one JSON object.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from . import analysis, empirical, gibbs, measure
from .chain import MarkovChain, validate_chain
from .errors import ConfigError, MeasureError, NotStationaryStart

CONFIG_KEYS = {"ell", "initial", "transition", "label"}
REQUIRED_KEYS = {"ell", "initial", "transition"}


def load_config(path) -> MarkovChain:
    """Read a JSON chain config; unknown keys and invalid chains are errors."""
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigError(f"{path}: {exc.strerror}") from exc
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from exc
    if not isinstance(raw, dict):
        raise ConfigError(f"{path}: top level must be an object")
    unknown = set(raw) - CONFIG_KEYS
    if unknown:
        raise ConfigError(f"{path}: unknown keys {sorted(unknown)}")
    missing = REQUIRED_KEYS - set(raw)
    if missing:
        raise ConfigError(f"{path}: missing keys {sorted(missing)}")
    try:
        return validate_chain(raw["ell"], raw["initial"], raw["transition"],
                              label=str(raw.get("label", path.stem)))
    except (MeasureError, ValueError, TypeError) as exc:
        raise ConfigError(f"{path}: {type(exc).__name__}: {exc}") from exc


class Formatter:
    def __init__(self, digits: int = 17):
        self.digits = digits

    def num(self, x) -> str:
        if isinstance(x, (int, np.integer)) and not isinstance(x, bool):
            return str(int(x))
        return f"{float(x):.{self.digits}g}"

    def value(self, x):
        """JSON-ready value: floats rounded to the requested digits."""
        if isinstance(x, (bool, np.bool_)):
            return bool(x)
        if isinstance(x, (int, np.integer)):
            return int(x)
        if isinstance(x, (float, np.floating)):
            x = float(x)
            if not math.isfinite(x):
                return str(x)
            return float(f"{x:.{self.digits}g}")
        if isinstance(x, np.ndarray):
            return [self.value(v) for v in x.tolist()]
        if isinstance(x, dict):
            return {k: self.value(v) for k, v in x.items()}
        if isinstance(x, (list, tuple)):
            return [self.value(v) for v in x]
        return x


def _csv(header, rows, fmt: Formatter) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([fmt.num(v) if isinstance(v, (int, float, np.number)) else v for v in row])
    return buf.getvalue()


def _json(obj, fmt: Formatter) -> str:
    return json.dumps(fmt.value(obj), indent=2) + "\n"


def _q_grid(args) -> np.ndarray:
    if args.q is not None:
        return np.array([args.q], dtype=float)
    return np.linspace(args.q_min, args.q_max, args.steps)


def cmd_tau(chain, args, fmt):
    rows = []
    for q in _q_grid(args):
        t, tp = analysis.tau_with_prime(chain, q)
        rows.append((q, t, tp, args.depth, empirical.empirical_tau(chain, q, args.depth)))
    return _csv(["q", "tau", "tau_prime", "depth", "empirical_tau"], rows, fmt)


def cmd_spectrum(chain, args, fmt):
    pts = analysis.legendre_spectrum(chain, _q_grid(args))
    return _csv(["alpha", "f", "q"], [(p.alpha, p.f, p.q) for p in pts], fmt)


def dimension_report(chain) -> dict:
    return {
        "label": chain.label,
        "dim_tau": analysis.dimension_tau(chain),
        "dim_entropy": analysis.dimension_entropy(chain),
        "support_dim": analysis.support_box_dim(chain),
        "monofractal": analysis.is_monofractal(chain),
    }


def cmd_dimension(chain, args, fmt):
    return _json(dimension_report(chain), fmt)


def gibbs_report(g: gibbs.GibbsChain, depth: int) -> dict:
    return {
        "q": g.q,
        "Q": g.chain.transition,
        "initial": g.chain.initial,
        "lambda_q": g.lam,
        "d": g.d,
        "alpha": g.alpha,
        "comparability_constant": g.comparability_constant,
        "depth": depth,
        "identity_deviation": gibbs.gibbs_identity_deviation(g, depth),
    }


def cmd_gibbs(chain, args, fmt):
    q = 0.0 if args.q is None else args.q
    return _json(gibbs_report(gibbs.gibbs_chain(chain, q), args.depth), fmt)


def cmd_maximal(chain, args, fmt):
    g = gibbs.maximal_chain(chain)
    report = gibbs_report(g, args.depth)
    report["dim_maximal"] = analysis.dimension_tau(g.chain)
    report["support_dim"] = analysis.support_box_dim(chain)
    report["monofractal"] = analysis.is_monofractal(g.chain)
    return _json(report, fmt)


def cmd_sample(chain, args, fmt):
    seeds = np.random.SeedSequence(args.seed).generate_state(args.count, dtype=np.uint64)
    rows = []
    for i, s in enumerate(seeds):
        w = measure.sample(chain, args.depth, int(s))
        rows.append((i, str(w), w.left_endpoint()))
    return _csv(["index", "word", "value"], rows, fmt)


def cmd_cdf(chain, args, fmt):
    xs = np.linspace(0.0, 1.0, args.points)
    return _csv(["x", "F"], [(x, measure.cdf(chain, float(x), args.depth)) for x in xs], fmt)


def cmd_empirical_tau(chain, args, fmt):
    rows = []
    for q in _q_grid(args):
        rows.append((q, args.depth, empirical.empirical_tau(chain, q, args.depth),
                     analysis.tau(chain, q), empirical.convergence_constant(chain, q, args.depth)))
    return _csv(["q", "depth", "empirical_tau", "tau", "C_estimate"], rows, fmt)


def cmd_entropy(chain, args, fmt):
    H = empirical.entropy_sequence(chain, args.depth)
    dim = analysis.dimension_tau(chain)
    return _csv(["n", "H_n", "dim_tau"], [(n, h, dim) for n, h in enumerate(H, start=1)], fmt)


def cmd_support(chain, args, fmt):
    rows = [(n, measure.support_count(chain, n), empirical.box_count_dim(chain, n))
            for n in range(1, args.depth + 1)]
    header = ["n", "N_n", "box_count_dim"]
    if chain.irreducible:
        t0 = analysis.support_box_dim(chain)
        rows = [r + (t0,) for r in rows]
        header.append("tau0")
    return _csv(header, rows, fmt)


@dataclass
class RunReport:
    command: str
    config: str
    depth: int
    results: dict = field(default_factory=dict)
    diagnostics: dict = field(default_factory=dict)
    invariants: list = field(default_factory=list)

    def record(self, name, passed, value=None, tolerance=None, **where):
        self.invariants.append({"name": name, "passed": bool(passed), "value": value,
                                "tolerance": tolerance, **where})

    @property
    def ok(self) -> bool:
        return all(inv["passed"] for inv in self.invariants)


def run_checks(chain: MarkovChain, depth: int, config: str = "") -> RunReport:
    """Run the invariant suite on one chain."""
    rep = RunReport("check", config, depth)

    worst = 0.0
    for word, lm in measure.iter_cylinders(chain, depth - 1):
        kids = measure.children_masses(chain, word, lm)
        s = float(np.exp(kids).sum())
        worst = max(worst, abs(s - math.exp(lm)) / math.exp(lm))
    rep.record("additivity", worst <= 1e-12, worst, 1e-12, depth=depth - 1)

    n_gen = min(depth, 12)
    total = sum(math.exp(lm) for _, lm in measure.generation(chain, n_gen))
    rep.record("generation_mass", abs(total - 1) <= 1e-10, abs(total - 1), 1e-10, depth=n_gen)

    if not chain.irreducible:
        rep.record("irreducible", False)
        return rep

    t1 = analysis.tau(chain, 1.0)
    rep.record("tau_at_one", abs(t1) <= 1e-10, abs(t1), 1e-10)

    dims = dimension_report(chain)
    rep.results.update(dims)
    gap = abs(dims["dim_tau"] - dims["dim_entropy"])
    rep.record("dimension_formulas_agree", gap <= 1e-8, gap, 1e-8)
    ordered = -1e-10 <= dims["dim_tau"] <= dims["support_dim"] + 1e-10 <= 1 + 2e-10
    rep.record("dimension_ordering", ordered, None, 1e-10)

    for q in (-1.0, 0.0, 0.7, 2.0):
        g = gibbs.gibbs_chain(chain, q)
        dev = gibbs.gibbs_identity_deviation(g, depth)
        rep.record("gibbs_identity", dev <= 1e-10, dev, 1e-10, q=q, depth=depth)
        same = all(measure.support_count(g.chain, n) == measure.support_count(chain, n)
                   for n in range(1, min(depth, 8) + 1))
        rep.record("support_preserved", same, None, None, q=q, depth=min(depth, 8))

    for q in (-2.0, -1.0, 0.0, 0.5, 1.0, 2.0, 3.0):
        t = analysis.tau(chain, q)
        e = empirical.empirical_tau(chain, q, depth)
        rep.record("empirical_vs_spectral_tau", abs(e - t) <= 2 / depth, abs(e - t),
                   2 / depth, q=q, depth=depth)
        rep.diagnostics[f"C_estimate(q={q:g},n={depth})"] = \
            empirical.convergence_constant(chain, q, depth)
        rec = empirical.partition_sum(chain, q, depth)
        enum = empirical.partition_sum_enumerated(chain, q, depth)
        rep.record("partition_sum_oracle", abs(rec - enum) <= 1e-10, abs(rec - enum),
                   1e-10, q=q, depth=depth)

    m = gibbs.maximal_chain(chain)
    t0 = analysis.tau(chain, 0.0)
    mono = max(abs(analysis.tau(m.chain, q) - t0 * (1 - q)) for q in (-2.0, -1.0, 0.5, 2.0))
    rep.record("maximal_monofractal", mono <= 1e-9, mono, 1e-9)

    try:
        dev = empirical.shift_invariance_deviation(chain, depth)
        rep.record("shift_invariance", dev <= 1e-12, dev, 1e-12, depth=depth)
    except NotStationaryStart:
        rep.diagnostics["shift_invariance"] = "skipped: initial distribution is not stationary"
    return rep


def cmd_check(chain, args, fmt):
    rep = run_checks(chain, args.depth, str(args.config))
    return _json(asdict(rep) | {"all_passed": rep.ok}, fmt), rep.ok


COMMANDS = {
    "tau": cmd_tau,
    "spectrum": cmd_spectrum,
    "dimension": cmd_dimension,
    "gibbs": cmd_gibbs,
    "maximal": cmd_maximal,
    "check": cmd_check,
    "sample": cmd_sample,
    "cdf": cmd_cdf,
    "empirical-tau": cmd_empirical_tau,
    "entropy": cmd_entropy,
    "support": cmd_support,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", required=True, type=Path, help="JSON chain config")
    common.add_argument("--q", type=float, default=None, help="single q value")
    common.add_argument("--q-min", type=float, default=-20.0)
    common.add_argument("--q-max", type=float, default=20.0)
    common.add_argument("--steps", type=int, default=401)
    common.add_argument("--depth", type=int, default=10)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--count", type=int, default=10, help="samples to draw")
    common.add_argument("--points", type=int, default=1025, help="cdf grid size")
    common.add_argument("--out", type=Path, default=None, help="output file (default stdout)")
    common.add_argument("--digits", type=int, default=17)

    parser = argparse.ArgumentParser(
        prog="markovmeasure",
        description="Multifractal analysis of measures driven by Markov chains.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sub.add_parser(name, parents=[common])
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    fmt = Formatter(args.digits)
    try:
        chain = load_config(args.config)
        out = COMMANDS[args.command](chain, args, fmt)
    except (MeasureError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    ok = True
    if isinstance(out, tuple):
        out, ok = out
    if args.out is None:
        sys.stdout.write(out)
    else:
        args.out.write_text(out)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
