"""Print lambda(phi^n), the entropy upper bound and the Kunz verdict for each fixture.

    python scripts/lambda_table.py --max-n 3
"""
import argparse
import os
import time
from dataclasses import dataclass, field

from entrolab.cli import build, load_job
from entrolab.dynamics import kunz_test
from entrolab.errors import EntrolabError

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))


@dataclass
class TableConfig:
    fixtures: list = field(default_factory=lambda: [
        "frob25.toml", "cusp.toml", "square_qq.toml", "mixed_qq.toml", "swap_node.toml",
    ])
    max_n: int = 3
    max_N: int = 6
    cap: int = 512


def run(cfg: TableConfig):
    header = f"{'fixture':<16} {'lambda(phi^n), n=1..':<28} {'bound':>14} {'verdict':<30} {'cross-check':<16} {'sec':>6}"
    print(header)
    print("-" * len(header))
    for name in cfg.fixtures:
        job = load_job(os.path.join(ROOT, "fixtures", name), "kunz")
        t0 = time.perf_counter()
        try:
            _, phi = build(job)
            rep = kunz_test(phi, cfg.max_n, cfg.max_N, cfg.cap)
        except EntrolabError as exc:
            print(f"{name:<16} {exc.code}: {exc}")
            continue
        seq = rep.lambda_seq
        lams = ", ".join(map(str, seq.lambdas))
        bound = f"{seq.entropy_upper_bound.decimal()}"
        print(f"{name:<16} {lams:<28} {bound:>14} {rep.verdict:<30} "
              f"{rep.cross_check.status:<16} {time.perf_counter() - t0:6.2f}")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-n", type=int, default=TableConfig.max_n)
    ap.add_argument("--max-N", type=int, default=TableConfig.max_N)
    ap.add_argument("--cap", type=int, default=TableConfig.cap)
    args = ap.parse_args()
    run(TableConfig(max_n=args.max_n, max_N=args.max_N, cap=args.cap))


if __name__ == "__main__":
    main()
