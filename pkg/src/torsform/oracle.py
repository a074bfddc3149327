"""Slow, independent cross-checks for the main algorithms.

Nothing here uses the Smith-form code or the integer matrix helpers of the
main path; only the scalar layer is shared.  Randomness comes from a seeded
``random.Random`` so every failure can be replayed from its seed.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import gcd

import numpy as np

from .normalform import NotTorsion, class_order
from .pairing import pairing_value, torsion_class
from .scalars import reduce_mod_Zl

__all__ = [
    "OracleConfig",
    "BoundExceeded",
    "snf_oracle",
    "resample_pairing",
    "resample_instance",
    "exhaustive_nondegeneracy",
]

MAX_MINOR_RANK = 12


class BoundExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class OracleConfig:
    trials: int = 100
    enumeration_bound: int = 2**20
    seed: int = 0

    def __post_init__(self):
        if self.trials < 1 or self.enumeration_bound < 1:
            raise ValueError("trials and enumeration_bound must be positive")


def _minor_det(rows):
    """Determinant by cofactor-free elimination over Fraction (naive on purpose)."""
    n = len(rows)
    a = [[Fraction(x) for x in r] for r in rows]
    d = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if a[r][c]), None)
        if p is None:
            return 0
        if p != c:
            a[c], a[p] = a[p], a[c]
            d = -d
        d *= a[c][c]
        for r in range(c + 1, n):
            if a[r][c]:
                f = a[r][c] / a[c][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return int(d)


def snf_oracle(M):
    """Elementary divisors from determinantal divisors.

    ``d_k`` is the gcd of all k x k minors and the k-th divisor is
    ``d_k / d_(k-1)``.  Since each divisor is a multiple of the previous one,
    the gcd scan for ``d_k`` stops as soon as it reaches ``d_(k-1) * s_(k-1)``.
    """
    m = len(M)
    n = len(M[0]) if m else 0
    r = min(m, n)
    if r > MAX_MINOR_RANK:
        raise BoundExceeded(f"minor enumeration is limited to rank {MAX_MINOR_RANK}")
    out = []
    prev_d, prev_s = 1, 1
    for k in range(1, r + 1):
        if prev_d == 0:
            out.append(0)
            continue
        floor = prev_d * prev_s
        g = 0
        for rows in combinations(range(m), k):
            sub = [M[i] for i in rows]
            for cols in combinations(range(n), k):
                g = gcd(g, _minor_det([[row[j] for j in cols] for row in sub]))
                if g == floor:
                    break
            if g == floor:
                break
        s = g // prev_d if g else 0
        out.append(s)
        prev_d, prev_s = g, s
    return tuple(out)


class _RationalSolver:
    """All rational solutions of ``A v = t``, in integer-scaled form."""

    def __init__(self, A):
        n = len(A)
        self.n = n
        rows = [[Fraction(x) for x in r] + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(A)]
        pivots = []
        r = 0
        for c in range(n):
            p = next((i for i in range(r, n) if rows[i][c]), None)
            if p is None:
                continue
            rows[r], rows[p] = rows[p], rows[r]
            piv = rows[r][c]
            rows[r] = [x / piv for x in rows[r]]
            for i in range(n):
                if i != r and rows[i][c]:
                    f = rows[i][c]
                    rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
            pivots.append(c)
            r += 1
        den = 1
        for row in rows:
            for x in row:
                den = den * x.denominator // gcd(den, x.denominator)
        self.den = den
        self.pivots = pivots
        self.free = [c for c in range(n) if c not in pivots]
        self.R = [[int(x * den) for x in row[:n]] for row in rows[:r]]
        self.E = [[int(x * den) for x in row[n:]] for row in rows[:r]]
        self.consistency = [[int(x * den) for x in row[n:]] for row in rows[r:]]

    def solve(self, t, rng, l):
        """Random solution as ``(numerators, denominator)``; None if inconsistent."""
        if any(sum(a * b for a, b in zip(z, t)) for z in self.consistency):
            return None
        q = rng.choice([1, l, l * l, 3, 7, 11 * l])
        y = {f: rng.randint(-40, 40) for f in self.free}
        N = [0] * self.n
        for f, yf in y.items():
            N[f] = self.den * yf
        for row_r, row_e, p in zip(self.R, self.E, self.pivots):
            val = q * sum(a * b for a, b in zip(row_e, t))
            val -= sum(row_r[f] * yf for f, yf in y.items())
            N[p] = val
        return N, self.den * q


def _one_minus(L):
    n = L.rank
    return [[int(i == j) - L.isometry[i][j] for j in range(n)] for i in range(n)]


def _apply(A, v):
    return [sum(a * b for a, b in zip(row, v)) for row in A]


def _form(G, x, y):
    return sum(xi * sum(g * yj for g, yj in zip(row, y)) for xi, row in zip(x, G) if xi)


def _check_pair(L, decomp, a, b):
    """Reference value from the main path; also rejects under-ordered classes."""
    if any(a.lift) and class_order(decomp, a.lift, int(L.prime)) > a.order_exponent:
        raise NotTorsion("class of a is not killed by the stated power of l")
    return pairing_value(L, decomp, a, b)


def _trial(L, A, solver, a_lift, b_lift, rng):
    l = int(L.prime)
    n = L.rank
    h = [rng.randint(-5, 5) for _ in range(n)]
    h2 = [rng.randint(-5, 5) for _ in range(n)]
    u = [x + y for x, y in zip(a_lift, _apply(A, h))]
    t = [x + y for x, y in zip(b_lift, _apply(A, h2))]
    sol = solver.solve(t, rng, l)
    if sol is None:
        raise NotTorsion("representative of b is not in the rational image of I - S")
    N, den = sol
    return reduce_mod_Zl(Fraction(_form(L.gram, u, N), den), l)


def resample_pairing(L, decomp, a, b, cfg: OracleConfig) -> bool:
    """True iff every re-lifting of ``a``, ``b`` and of the witness agrees."""
    expected = _check_pair(L, decomp, a, b)
    rng = random.Random(cfg.seed)
    A = _one_minus(L)
    solver = _RationalSolver(A)
    return all(_trial(L, A, solver, a.lift, b.lift, rng) == expected for _ in range(cfg.trials))


def resample_instance(L, decomp, cfg: OracleConfig) -> bool:
    """``cfg.trials`` resamplings on random pairs of torsion classes.

    Classes are random integer combinations of the generator lifts; the
    reference values come from the main path.
    """
    k = len(decomp.torsion_exponents)
    if k == 0:
        return True
    rng = random.Random(cfg.seed)
    A = _one_minus(L)
    solver = _RationalSolver(A)
    l = int(L.prime)
    cache = {}
    for _ in range(cfg.trials):
        ca = tuple(rng.randrange(l ** e) for e in decomp.torsion_exponents)
        cb = tuple(rng.randrange(l ** e) for e in decomp.torsion_exponents)
        if (ca, cb) not in cache:
            lifts = [
                [sum(c * g[i] for c, g in zip(coeffs, decomp.generator_lifts)) for i in range(L.rank)]
                for coeffs in (ca, cb)
            ]
            a, b = (torsion_class(L, decomp, x) for x in lifts)
            cache[ca, cb] = (a, b, _check_pair(L, decomp, a, b))
        a, b, expected = cache[ca, cb]
        if _trial(L, A, solver, a.lift, b.lift, rng) != expected:
            return False
    return True


def exhaustive_nondegeneracy(P, l, cfg: OracleConfig) -> bool:
    """Enumerate the whole torsion group and look for a nonzero radical element."""
    l = int(l)
    exps = list(P.exponents)
    k = len(exps)
    size = l ** sum(exps)
    if size > cfg.enumeration_bound:
        raise BoundExceeded(f"|Tors| = {l}^{sum(exps)} exceeds bound {cfg.enumeration_bound}")
    if k == 0:
        return True
    top = max(exps)
    modulus = l**top
    # value c/l^e becomes c * l^(top - e) / l^top
    coeff = np.array(
        [[v.numerator * l ** (top - v.exponent) for v in row] for row in P.values], dtype=np.int64
    )
    if modulus * modulus * k >= 2**62:
        raise BoundExceeded("enumeration would overflow 64-bit arithmetic")
    radix = [l**e for e in exps]
    zeros_found = 0
    chunk = 1 << 16
    for start in range(0, size, chunk):
        idx = np.arange(start, min(start + chunk, size), dtype=np.int64)
        digits = np.empty((idx.size, k), dtype=np.int64)
        rem = idx.copy()
        for j, r in enumerate(radix):
            digits[:, j] = rem % r
            rem //= r
        pairings = (digits @ coeff.T) % modulus
        zeros_found += int(np.count_nonzero(~pairings.any(axis=1)))
    # only x = 0 may pair trivially with every generator
    return zeros_found == 1
