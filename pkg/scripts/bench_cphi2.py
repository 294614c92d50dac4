"""Time the c phi_2 expansion by both routes, and the threaded product."""
import argparse
import time
from dataclasses import dataclass

from cphilab.frobenius import cphi2_product_series, cphi_series, partition_series
from cphilab.etatheta import theta_series
from cphilab.qseries import mul


@dataclass
class Config:
    sizes: tuple = (1000, 2000, 5000, 10_000)
    workers: tuple = (1, 2, 4)


def timed(fn, *args, **kw):
    start = time.perf_counter()
    out = fn(*args, **kw)
    return out, time.perf_counter() - start


def main(cfg: Config):
    for T in cfg.sizes:
        cphi_series.cache_clear()
        cphi2_product_series.cache_clear()
        a, ta = timed(cphi_series, 2, T)
        b, tb = timed(cphi2_product_series, T)
        print(f"T={T:>6}  theta/eta {ta:7.2f} s   product {tb:7.2f} s   agree {a == b}")
    T = cfg.sizes[-1]
    x, y = theta_series(2, T), partition_series(T)
    ref = None
    for w in cfg.workers:
        z, tz = timed(mul, x, y, workers=w)
        ref = ref or z.coeffs
        print(f"mul T={T} workers={w}: {tz:.2f} s, identical {z.coeffs == ref}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--sizes", type=int, nargs="+", default=list(Config.sizes))
    a = ap.parse_args()
    main(Config(sizes=tuple(a.sizes)))
