"""Table of parity-search results for cbar phi_2(M)/4 over every r mod t, t <= t_max."""
import argparse
from dataclasses import dataclass

from cphilab.frobenius import cphibar2_quarter_series
from cphilab.parity import parity_search


@dataclass
class Config:
    t_max: int = 8
    limit: int = 10_000


def main(cfg: Config):
    series = cphibar2_quarter_series(cfg.limit + 1)
    print(f"{'t':>3} {'r':>3} {'odd':>6} {'even':>6} {'smallest':>9}  C_(r,t)")
    for t in range(1, cfg.t_max + 1):
        for r in range(t):
            rep = parity_search(r, t, cfg.limit, series=series)
            smallest = "-" if rep.smallest_odd is None else rep.smallest_odd
            print(f"{t:>3} {r:>3} {len(rep.odd):>6} {rep.even_count:>6} {smallest:>9}  {rep.bound}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--t-max", type=int, default=Config.t_max)
    ap.add_argument("--limit", type=int, default=Config.limit)
    a = ap.parse_args()
    main(Config(a.t_max, a.limit))
