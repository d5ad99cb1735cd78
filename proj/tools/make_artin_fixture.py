#!/usr/bin/env python3
"""Euler-factor table for the standard 3-dimensional representation of S4
attached to the splitting field of x^4 - x + 1 (conductor 229).

Frobenius cycle types come from root counts of the quartic mod p, with the
Legendre symbol of the discriminant separating (2,2) from 4-cycles."""

import argparse
import json

POLY = [1, -1, 0, 0, 1]  # constant term first
DISC = 229

# Reciprocal Euler polynomial det(1 - Frob x) on the standard representation.
BY_TYPE = {
    "1111": [1, -3, 3, -1],
    "211": [1, -1, -1, 1],
    "22": [1, 1, -1, -1],
    "31": [1, 0, 0, -1],
    "4": [1, 1, 1, 1],
}


def primes_upto(n):
    sieve = bytearray([1]) * (n + 1)
    sieve[0:2] = b"\0\0"
    for i in range(2, int(n**0.5) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(sieve[i * i :: i]))
    return [i for i in range(n + 1) if sieve[i]]


def roots_mod(p):
    return [x for x in range(p) if sum(c * pow(x, k, p) for k, c in enumerate(POLY)) % p == 0]


def kronecker_disc(p):
    if p == 2:
        return 1 if DISC % 8 in (1, 7) else -1
    return 1 if pow(DISC % p, (p - 1) // 2, p) == 1 else -1


def cycle_type(p):
    n = len(roots_mod(p))
    if n == 4:
        return "1111"
    if n == 2:
        return "211"
    if n == 1:
        return "31"
    return "22" if kronecker_disc(p) == 1 else "4"


def bad_factor(p):
    # Inertia is a transposition; Frobenius on the 2-dim inertia invariants is
    # trivial when the cofactor of the double root splits, a swap otherwise.
    simple = [r for r in roots_mod(p) if sum(k * c * pow(r, k - 1, p) for k, c in enumerate(POLY) if k) % p]
    return [1, -2, 1] if len(simple) == 2 else [1, 0, -1]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--bound", type=int, default=20000)
    ap.add_argument("--out", default="data/3.229.4t5.a.a.json")
    args = ap.parse_args()
    factors = {}
    for p in primes_upto(args.bound):
        poly = bad_factor(p) if p == DISC else BY_TYPE[cycle_type(p)]
        factors[str(p)] = [[c, 0] for c in poly]
    doc = {
        "dimension": 3,
        "conductor": DISC,
        "p_plus": 1,
        "m_minus": 2,
        "bad_primes": [DISC],
        "factors": factors,
    }
    with open(args.out, "w") as f:
        json.dump(doc, f, separators=(",", ":"), sort_keys=True)
        f.write("\n")


if __name__ == "__main__":
    main()
