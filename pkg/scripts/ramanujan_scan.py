"""Scan several series for Ramanujan-type congruences c(ell n + beta) = 0 mod ell."""
import argparse
from dataclasses import dataclass, field

from cphilab.congruence import scan_ramanujan
from cphilab.frobenius import SeriesSpec


@dataclass
class Config:
    specs: list = field(default_factory=lambda: ["partition", "cphi:2", "cphi:3", "cphi:5", "cphibar2q"])
    ell_max: int = 13
    n_max: int = 400


def main(cfg: Config):
    for text in cfg.specs:
        spec = SeriesSpec.parse(text)
        found = scan_ramanujan(spec, cfg.ell_max, cfg.n_max)
        shown = ", ".join(f"({ell}n+{beta})" for ell, beta in found) or "none"
        print(f"{str(spec):<12} {shown}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("specs", nargs="*", default=None)
    ap.add_argument("--ell-max", type=int, default=Config.ell_max)
    ap.add_argument("--n-max", type=int, default=Config.n_max)
    a = ap.parse_args()
    cfg = Config(ell_max=a.ell_max, n_max=a.n_max)
    if a.specs:
        cfg.specs = a.specs
    main(cfg)
