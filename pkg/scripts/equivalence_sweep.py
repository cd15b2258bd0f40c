"""Compare the coefficient criterion with the permutation oracle on random tables.

    python scripts/equivalence_sweep.py --samples 10000 --domain 2,6 --domain 3,4
"""

import argparse
import time
from dataclasses import dataclass, field

from vdput.analysis import check_measure_preserving, oracle_measure_preserving
from vdput.construct import build_additive_mp, random_compatible, random_substitution_family


@dataclass
class SweepConfig:
    domains: list[tuple[int, int]] = field(
        default_factory=lambda: [(2, 6), (3, 4), (5, 3), (7, 2)]
    )
    samples: int = 10_000
    seed: int = 0
    # Fraction of samples drawn from the additive generator instead of uniformly.
    positive_fraction: float = 0.0


def run(cfg: SweepConfig) -> list[dict]:
    rows = []
    for p, K in cfg.domains:
        start = time.perf_counter()
        n_pos = int(cfg.samples * cfg.positive_fraction)
        agree = positives = 0
        for i in range(cfg.samples):
            tag = f"{cfg.seed}-{p}-{K}-{i}"
            if i < n_pos:
                f = build_additive_mp(
                    random_substitution_family(p, K, "S" + tag), random_compatible(p, K, "h" + tag)
                )
            else:
                f = random_compatible(p, K, tag)
            crit = check_measure_preserving(f).outcome
            orac = oracle_measure_preserving(f).outcome
            agree += crit == orac
            positives += orac
        rows.append(
            dict(p=p, K=K, samples=cfg.samples, agree=agree, positives=positives,
                 seconds=time.perf_counter() - start)
        )
    return rows


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--samples", type=int, default=SweepConfig.samples)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--positive-fraction", type=float, default=0.0)
    ap.add_argument("--domain", action="append", help="p,K (repeatable)")
    args = ap.parse_args()
    cfg = SweepConfig(samples=args.samples, seed=args.seed, positive_fraction=args.positive_fraction)
    if args.domain:
        cfg.domains = [tuple(int(v) for v in d.split(",")) for d in args.domain]
    print(f"{'p':>3} {'K':>3} {'samples':>8} {'agree':>8} {'mp':>6} {'sec':>6}")
    for r in run(cfg):
        print(f"{r['p']:>3} {r['K']:>3} {r['samples']:>8} {r['agree']:>8} {r['positives']:>6} {r['seconds']:>6.1f}")


if __name__ == "__main__":
    main()
