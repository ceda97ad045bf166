"""Write tau(q) and the Legendre spectrum of each config to CSV files.

    python scripts/spectrum_table.py configs/*.json --out results/
"""

import argparse
from pathlib import Path

from markovmeasure.cli import main as cli_main


def parse_args():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("configs", nargs="+", type=Path)
    ap.add_argument("--out", type=Path, default=Path("results"))
    ap.add_argument("--steps", type=int, default=401)
    return ap.parse_args()


def main():
    args = parse_args()
    args.out.mkdir(parents=True, exist_ok=True)
    for cfg in args.configs:
        for command in ("tau", "spectrum"):
            target = args.out / f"{cfg.stem}_{command}.csv"
            code = cli_main([command, "--config", str(cfg), "--steps", str(args.steps),
                             "--out", str(target)])
            print(f"{target}: {'ok' if code == 0 else f'exit {code}'}")


if __name__ == "__main__":
    main()
