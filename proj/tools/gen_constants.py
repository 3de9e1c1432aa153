#!/usr/bin/env python3
"""Regenerate data/constants.txt.

Each row holds the sigma-dependent constants of the correction-term bounds.
Decimals are rounded in the safe direction: c, c1, A up; b, b1, B1 down.
"""
import argparse
from fractions import Fraction

import mpmath as mp

mp.mp.dps = 80
DIGITS = 40
FORMAT_VERSION = 1


def directed(x, up):
    """x rounded to DIGITS significant decimals, toward +inf if up else toward -inf."""
    e = int(mp.floor(mp.log10(abs(x))))
    shift = DIGITS - 1 - e
    man, exp = mp.mpf(x).man_exp
    y = Fraction(int(man)) * Fraction(2) ** int(exp) * Fraction(10) ** shift
    n = -((-y.numerator) // y.denominator) if up else y.numerator // y.denominator
    return decimal_text(n, shift)


def decimal_text(n, shift):
    """n * 10^-shift as plain decimal text."""
    sign = "-" if n < 0 else ""
    digits = str(abs(n))
    if shift <= 0:
        return sign + digits + "0" * (-shift)
    digits = digits.rjust(shift + 1, "0")
    return sign + digits[:-shift] + "." + digits[-shift:]


def row(sigma):
    s = mp.mpf(sigma.numerator) / sigma.denominator
    rt2 = mp.sqrt(2)
    right = dict(b=mp.mpf(2), c=mp.power(9, s) / (mp.pi * rt2), A=mp.power(9, s), B1=mp.mpf(1),
                 c1=mp.power(2, 1.5 * s) / 7)
    left = dict(b=mp.sqrt((3 - 2 * mp.log(2)) * mp.pi), c=mp.power(2, -s) / (mp.pi * rt2),
                A=mp.power(2, -s), B1=2 * mp.sqrt(1 - mp.log(2)),
                c1=mp.mpf("0.5") * mp.power(mp.mpf("0.9"), int(mp.ceil(-s))))
    if sigma > 0:
        v, tag = right, "closed-form:right"
    elif sigma < 0:
        v, tag = left, "closed-form:left"
    else:
        v = {k: (max(right[k], left[k]) if k in ("c", "A", "c1") else min(right[k], left[k])) for k in right}
        tag = "closed-form:both-sides-conservative"
    if sigma == Fraction(1, 2):
        tag += ";critical-line"
    b1 = v["b"] / (mp.mpf("2.26") * mp.mpf("1.1"))
    fields = [
        str(sigma.numerator) + ("/" + str(sigma.denominator) if sigma.denominator != 1 else ""),
        directed(v["b"], False),
        directed(v["c"], True),
        directed(b1, False),
        directed(v["c1"], True),
        directed(v["A"], True),
        directed(v["B1"], False),
        tag + ";b1=weakest-admissible",
    ]
    return fields


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default="data/constants.txt")
    ap.add_argument("--lo", type=int, default=-8)
    ap.add_argument("--hi", type=int, default=9)
    ap.add_argument("--step", type=int, default=8, help="rows per unit of sigma")
    args = ap.parse_args()
    lines = [
        "# rszeta constants table",
        f"# version {FORMAT_VERSION}",
        "# columns: sigma b c b1 c1 A B1 provenance",
        "# c, c1, A rounded up; b, b1, B1 rounded down",
    ]
    k = args.lo * args.step
    while k <= args.hi * args.step:
        lines.append(" ".join(row(Fraction(k, args.step))))
        k += 1
    with open(args.out, "w", encoding="utf-8") as f:
        f.write("\n".join(lines) + "\n")


if __name__ == "__main__":
    main()
