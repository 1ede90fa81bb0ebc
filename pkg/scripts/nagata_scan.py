"""How quickly does the Nagata sampler find a non-flatness witness?

For the Frobenius map on the cusp, draw sampled m-primary ideals for several
seeds and report the index of the first violation and the violation rate.

    python scripts/nagata_scan.py --seeds 10 --samples 32
"""
import argparse
from dataclasses import dataclass

from entrolab import FieldSpec, LocalRingPresentation, parse_polynomial, validate
from entrolab.dynamics import nagata_sample_test


@dataclass
class ScanConfig:
    characteristic: int = 5
    relation: str = "y^2 - x^3"
    seeds: int = 10
    samples: int = 32
    n: int = 1


def cusp_frobenius(cfg: ScanConfig):
    k = FieldSpec(cfg.characteristic)
    base = LocalRingPresentation(k, ("x", "y"))
    R = LocalRingPresentation(k, ("x", "y"), [parse_polynomial(cfg.relation, base.poly_ring)])
    x, y = R.gens
    p = cfg.characteristic
    return validate(R, [x ** p, y ** p])


def run(cfg: ScanConfig):
    phi = cusp_frobenius(cfg)
    print(f"{'seed':>4} {'first violation':>16} {'violations':>11}  witness")
    for seed in range(cfg.seeds):
        rows = nagata_sample_test(phi, cfg.n, cfg.samples, seed)
        bad = [i for i, s in enumerate(rows) if not s.equal]
        first = bad[0] if bad else None
        witness = ", ".join(map(str, rows[first].ideal)) if bad else "-"
        print(f"{seed:>4} {str(first):>16} {len(bad):>5}/{cfg.samples:<5}  ({witness})")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seeds", type=int, default=ScanConfig.seeds)
    ap.add_argument("--samples", type=int, default=ScanConfig.samples)
    ap.add_argument("--n", type=int, default=ScanConfig.n)
    args = ap.parse_args()
    run(ScanConfig(seeds=args.seeds, samples=args.samples, n=args.n))


if __name__ == "__main__":
    main()
