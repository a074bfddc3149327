"""Characteristic elements at l = 2 and the alternation criteria.

``w`` is characteristic when ``(x, x) - (x, w)`` is even for every ``x``.
Because the form is perfect at 2, the characteristic elements form a single
coset ``w0 + 2H``, where ``G w0 = diag(G) (mod 2)``.

The pairing is alternating iff the form restricted to the orthogonal
complement of the fixed sublattice is even.  An ``S``-fixed characteristic
element, or one fixed by an odd power of ``S``, is sufficient for that.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import lcm
from typing import Optional

from . import _intmat as im
from .lattice import LatticeWithIsometry
from .normalform import fixed_sublattice, integer_kernel, orthogonal_complement

__all__ = [
    "WrongPrime",
    "PreconditionViolated",
    "CharacteristicFinding",
    "solve_mod2",
    "characteristic_base",
    "is_characteristic",
    "h0_evenness",
    "find_invariant_characteristic",
    "charpoly",
    "cyclotomic",
    "odd_cyclotomic_period",
    "find_odd_period_characteristic",
    "symmetrize_characteristic",
    "characteristic_finding",
]


class WrongPrime(ValueError):
    """Characteristic-element machinery only makes sense at l = 2."""


class PreconditionViolated(ValueError):
    pass


@dataclass(frozen=True)
class CharacteristicFinding:
    base_solution: tuple
    invariant_witness: Optional[tuple]
    odd_period_witness: Optional[tuple]  # (vector, n)
    h0_even: bool
    predicted_alternating: Optional[bool]

    def as_dict(self):
        odd = None
        if self.odd_period_witness is not None:
            w, n = self.odd_period_witness
            odd = {"n": n, "witness": list(w)}
        return {
            "w0_mod2": list(self.base_solution),
            "h0_even": self.h0_even,
            "invariant_witness": None if self.invariant_witness is None else list(self.invariant_witness),
            "odd_period": odd,
        }


def _require_two(L):
    if int(L.prime) != 2:
        raise WrongPrime(f"characteristic elements are defined at l = 2, not {int(L.prime)}")


def solve_mod2(A, b, ncols):
    """One solution of ``A x = b`` over GF(2), or None.

    Free variables are set to zero, so the answer is deterministic.
    """
    rows = [[x & 1 for x in row] + [bi & 1] for row, bi in zip(A, b)]
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                rows[i] = [x ^ y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    if any(row[-1] for row in rows[r:]):
        return None
    x = [0] * ncols
    for i, c in enumerate(pivots):
        x[c] = rows[i][-1]
    return x


def characteristic_base(L: LatticeWithIsometry) -> tuple:
    _require_two(L)
    n = L.rank
    diag = [L.gram[i][i] for i in range(n)]
    w0 = solve_mod2(L.gram, diag, n)
    # G is invertible mod 2 by perfectness
    assert w0 is not None
    return tuple(w0)


def is_characteristic(L: LatticeWithIsometry, w) -> bool:
    # q(x) mod 2 and (x, w) mod 2 are both additive, so basis vectors suffice
    gw = im.matvec(L.gram, w)
    return all((L.gram[i][i] - gw[i]) % 2 == 0 for i in range(L.rank))


def h0_evenness(L: LatticeWithIsometry) -> bool:
    _require_two(L)
    h0 = orthogonal_complement(L, fixed_sublattice(L))
    return all(sum(bi * gb for bi, gb in zip(b, im.matvec(L.gram, b))) % 2 == 0 for b in h0)


def _characteristic_in(L, basis, w0):
    """Element of span(basis) congruent to ``w0`` mod 2H, or None."""
    n = L.rank
    if not basis:
        return (0,) * n if not any(w0) else None
    B = im.columns_to_matrix(basis, n)
    x = solve_mod2(B, w0, len(basis))
    if x is None:
        return None
    return tuple(im.matvec(B, x))


def find_invariant_characteristic(L: LatticeWithIsometry) -> Optional[tuple]:
    _require_two(L)
    return _characteristic_in(L, fixed_sublattice(L), characteristic_base(L))


def charpoly(S) -> list:
    """Coefficients of ``det(xI - S)``, constant term first (Faddeev-LeVerrier)."""
    n = len(S)
    coeffs = [0] * n + [1]
    M = im.zeros(n, n)
    c = 1
    for k in range(1, n + 1):
        M = [[M[i][j] + (c if i == j else 0) for j in range(n)] for i in range(n)]
        M = im.matmul(S, M)
        tr = sum(M[i][i] for i in range(n))
        assert tr % k == 0
        c = -tr // k
        coeffs[n - k] = c
    return coeffs


def _polydivmod(num, den):
    """Integer polynomial division by a monic divisor (constant term first)."""
    num = list(num)
    dn = len(den) - 1
    if len(num) - 1 < dn:
        return [0], num
    q = [0] * (len(num) - dn)
    for k in range(len(num) - 1, dn - 1, -1):
        c = num[k]
        q[k - dn] = c
        if c:
            for i, d in enumerate(den):
                num[k - dn + i] -= c * d
    rem = num[:dn] or [0]
    return q, rem


_CYCLO = {}


def cyclotomic(d: int) -> list:
    """The d-th cyclotomic polynomial, constant term first."""
    if d not in _CYCLO:
        p = [-1] + [0] * (d - 1) + [1]
        for e in range(1, d):
            if d % e == 0:
                p, rem = _polydivmod(p, cyclotomic(e))
                assert not any(rem)
        _CYCLO[d] = p
    return _CYCLO[d]


def _totient(d):
    result, m, p = d, d, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def odd_cyclotomic_period(S) -> int:
    """lcm of the odd ``d`` with ``Phi_d`` dividing the characteristic polynomial."""
    n = len(S)
    cp = charpoly(S)
    period = 1
    d = 1
    # phi(d) >= sqrt(d / 2), so d <= 2 n^2 covers every phi(d) <= n
    while d <= max(2 * n * n, 1):
        if _totient(d) <= n:
            _, rem = _polydivmod(cp, cyclotomic(d))
            if not any(rem):
                period = lcm(period, d)
        d += 2
    return period


def find_odd_period_characteristic(L: LatticeWithIsometry) -> Optional[tuple]:
    """``(w, n)`` with ``n`` odd, ``S^n w = w`` and ``w`` characteristic, or None.

    Every vector fixed by some odd power of ``S`` is fixed by ``S^n*`` with
    ``n*`` from :func:`odd_cyclotomic_period`, so one search is exhaustive.
    """
    _require_two(L)
    n = L.rank
    period = odd_cyclotomic_period(L.isometry_list())
    Sn = im.matpow(L.isometry_list(), period)
    one_minus = [[int(i == j) - Sn[i][j] for j in range(n)] for i in range(n)]
    w = _characteristic_in(L, integer_kernel(one_minus, n), characteristic_base(L))
    return None if w is None else (w, period)


def symmetrize_characteristic(L: LatticeWithIsometry, w, n: int) -> tuple:
    """``w + S w + ... + S^(n-1) w`` for a characteristic ``w`` of odd period ``n``."""
    _require_two(L)
    S = L.isometry_list()
    w = [int(x) for x in w]
    if n < 1 or n % 2 == 0:
        raise PreconditionViolated(f"n = {n} is not an odd positive integer")
    if im.matvec(im.matpow(S, n), w) != w:
        raise PreconditionViolated("S^n w != w")
    if not is_characteristic(L, w):
        raise PreconditionViolated("w is not characteristic")
    total = [0] * L.rank
    cur = w
    for _ in range(n):
        total = [a + b for a, b in zip(total, cur)]
        cur = im.matvec(S, cur)
    if im.matvec(S, total) != total:
        raise PreconditionViolated("symmetrized element is not S-fixed")
    if not is_characteristic(L, total):
        raise PreconditionViolated("symmetrized element is not characteristic")
    return tuple(total)


def characteristic_finding(L: LatticeWithIsometry) -> CharacteristicFinding:
    inv = find_invariant_characteristic(L)
    odd = find_odd_period_characteristic(L)
    return CharacteristicFinding(
        base_solution=characteristic_base(L),
        invariant_witness=inv,
        odd_period_witness=odd,
        h0_even=h0_evenness(L),
        predicted_alternating=True if (inv is not None or odd is not None) else None,
    )
