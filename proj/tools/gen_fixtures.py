#!/usr/bin/env python3
"""Exact rational fixtures for the one-step expected potential.

E[Phi(x')] = sum over masks y of p^|y| (1-p)^(n-|y|) Phi(sel(x, x xor y)),
where sel keeps the offspring iff f(offspring) <= f(parent). Everything is
computed with fractions.Fraction, independently of the C++ code.

Usage: gen_fixtures.py > tests/fixtures/exact_phi_next_v1.json
"""

import json
import random
from fractions import Fraction


def expected_phi_next(a, w, p, x):
    n = len(a)
    f = lambda bits: sum(ai for ai, b in zip(a, bits) if b)
    phi = lambda bits: sum(wi for wi, b in zip(w, bits) if b)
    fx = f(x)
    total = Fraction(0)
    for mask in range(1 << n):
        y = [x[i] ^ ((mask >> i) & 1) for i in range(n)]
        k = bin(mask).count("1")
        prob = p**k * (1 - p) ** (n - k)
        keep = y if f(y) <= fx else x
        total += prob * phi(keep)
    return total


def bits_of(state, n):
    return [(state >> i) & 1 for i in range(n)]


def display(x):
    # x_n ... x_1
    return "".join(str(b) for b in reversed(x))


def frac(v):
    return {"num": str(v.numerator), "den": str(v.denominator), "value": float(v)}


def case(a, w, c, x):
    n = len(a)
    p = Fraction(c) / n
    e = expected_phi_next(a, w, p, x)
    return {
        "coefficients": a,
        "weights": w,
        "c": {"num": Fraction(c).numerator, "den": Fraction(c).denominator},
        "state": display(x),
        "expected_phi_next": frac(e),
    }


def min_drift(a, w, c):
    n = len(a)
    p = Fraction(c) / n
    best, arg = None, None
    for s in range(1, 1 << n):
        x = bits_of(s, n)
        phi = sum(wi for wi, b in zip(w, x) if b)
        factor = 1 - expected_phi_next(a, w, p, x) / phi
        if best is None or factor < best:
            best, arg = factor, x
    return best, arg


def main():
    rng = random.Random(20240611)
    cases = [
        case([1, 1], [1, 1], 1, [1, 1]),
        case([1, 1], [1, 1], 1, [1, 0]),
    ]
    for _ in range(40):
        n = rng.randint(1, 7)
        a = sorted(rng.choice([rng.randint(1, 4), rng.randint(1, 50)]) for _ in range(n))
        w = sorted(rng.randint(1, 30) for _ in range(n))
        c = rng.choice([Fraction(1, 2), Fraction(1), Fraction(2), Fraction(3, 2)])
        if c > n:
            c = Fraction(1)
        x = bits_of(rng.randint(0, (1 << n) - 1), n)
        cases.append(case(a, w, c, x))

    goldens = []
    for name, n, c in [("onemax", 8, 1), ("onemax", 6, 2), ("binval", 6, 1)]:
        a = [1] * n if name == "onemax" else [2**i for i in range(n)]
        best, arg = min_drift(a, list(a), Fraction(c))
        goldens.append(
            {
                "family": name,
                "n": n,
                "c": c,
                "min_drift_factor": frac(best),
                "argmin": display(arg),
                "implied_nu": frac(1 / best),
            }
        )
    print(json.dumps({"schema_version": 1, "cases": cases, "goldens": goldens}, indent=1, sort_keys=True))


if __name__ == "__main__":
    main()
