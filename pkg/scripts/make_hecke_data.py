"""Regenerate data/*.tsv: Hecke eigenvalues of the level-one eigenforms Delta, Delta*E4^2 and Delta*E4*E6.

Each space S_12, S_20, S_22 is one-dimensional, so the q-expansion coefficient
a(p) of the normalized form is its Hecke eigenvalue at p.
"""

import argparse
from pathlib import Path

from normlift.assembly import HeckeData, write_hecke_tsv


def primes_upto(n):
    return [p for p in range(2, n + 1) if all(p % d for d in range(2, int(p**0.5) + 1))]


def mul(a, b, n):
    out = [0] * n
    for i, x in enumerate(a):
        if x:
            for j in range(n - i):
                out[i + j] += x * b[j]
    return out


def eisenstein(weight, coeff, n):
    # 1 + coeff * sum sigma_{w-1}(m) q^m
    return [1] + [coeff * sum(d ** (weight - 1) for d in range(1, m + 1) if m % d == 0) for m in range(1, n)]


def delta(n):
    series = [0] * n
    series[1] = 1
    for m in range(1, n):
        factor = [0] * n
        factor[0], factor[m] = 1, -1
        for _ in range(24):
            series = mul(series, factor, n)
    return series


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--bound", type=int, default=100, help="largest prime to tabulate")
    ap.add_argument("--out", type=Path, default=Path(__file__).resolve().parent.parent / "data")
    args = ap.parse_args()
    n = args.bound + 1
    d = delta(n)
    e4, e6 = eisenstein(4, 240, n), eisenstein(6, -504, n)
    forms = {
        "tau.tsv": (12, "Delta", d),
        "f20.tsv": (20, "Delta*E4^2", mul(d, mul(e4, e4, n), n)),
        "f22.tsv": (22, "Delta*E4*E6", mul(d, mul(e4, e6, n), n)),
    }
    args.out.mkdir(parents=True, exist_ok=True)
    for name, (weight, label, coeffs) in forms.items():
        data = HeckeData(weight, {p: coeffs[p] for p in primes_upto(args.bound)}, label)
        write_hecke_tsv(data, args.out / name)
        print(f"wrote {args.out / name}")


if __name__ == "__main__":
    main()
