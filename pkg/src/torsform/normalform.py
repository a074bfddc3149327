"""Smith normal form and the lattice computations built on it.

Everything here is exact integer arithmetic.  The coinvariant module
``H/(1 - S)H`` is read off from the Smith form of ``I - S``; only the
``l``-primary part of its torsion is kept, since ``H`` is a Z_l-module.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import _intmat as im
from .lattice import LatticeWithIsometry
from .scalars import lval

__all__ = [
    "SmithDecomposition",
    "CoinvariantDecomposition",
    "NotTorsion",
    "smith_form",
    "integer_kernel",
    "coinvariants",
    "fixed_sublattice",
    "orthogonal_complement",
    "solve_torsion_witness",
    "class_coordinates",
    "class_order",
    "reduce_lift",
]


class NotTorsion(ArithmeticError):
    """The class is not killed by the requested power of ``l``."""


@dataclass(frozen=True)
class SmithDecomposition:
    """``left @ M @ right == diag(diagonal)`` with unimodular ``left``, ``right``.

    ``left_inverse`` is carried along so callers never invert ``left``.
    """

    left: tuple
    right: tuple
    diagonal: tuple
    left_inverse: tuple
    shape: tuple

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d)


def smith_form(M, ncols=None) -> SmithDecomposition:
    """Smith normal form of an integer matrix, with transformations.

    Pivots on an entry of minimal absolute value.  The diagonal is
    non-negative, each nonzero entry divides the next, zeros come last.
    """
    m = len(M)
    n = len(M[0]) if m else (ncols or 0)
    a = [[int(x) for x in row] for row in M]
    P = im.identity(m)
    Pinv = im.identity(m)
    Q = im.identity(n)

    def swap_rows(i, j):
        if i != j:
            a[i], a[j] = a[j], a[i]
            P[i], P[j] = P[j], P[i]
            for row in Pinv:
                row[i], row[j] = row[j], row[i]

    def swap_cols(i, j):
        if i != j:
            for row in a:
                row[i], row[j] = row[j], row[i]
            for row in Q:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):
        # row_dst += q * row_src
        a[dst] = [x + q * y for x, y in zip(a[dst], a[src])]
        P[dst] = [x + q * y for x, y in zip(P[dst], P[src])]
        for row in Pinv:
            row[src] -= q * row[dst]

    def add_col(dst, src, q):
        for row in a:
            row[dst] += q * row[src]
        for row in Q:
            row[dst] += q * row[src]

    for t in range(min(m, n)):
        while True:
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    x = a[i][j]
                    if x and (best is None or abs(x) < best[0]):
                        best = (abs(x), i, j)
                        if best[0] == 1:
                            break
                if best and best[0] == 1:
                    break
            if best is None:
                break
            _, i, j = best
            swap_rows(t, i)
            swap_cols(t, j)
            p = a[t][t]
            clean = True
            for i in range(t + 1, m):
                if a[i][t]:
                    q = a[i][t] // p
                    add_row(i, t, -q)
                    if a[i][t]:
                        clean = False
            for j in range(t + 1, n):
                if a[t][j]:
                    q = a[t][j] // p
                    add_col(j, t, -q)
                    if a[t][j]:
                        clean = False
            if not clean:
                continue
            bad = next((i for i in range(t + 1, m) for j in range(t + 1, n) if a[i][j] % p), None)
            if bad is None:
                break
            add_row(t, bad, 1)
        if best is None:
            break
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            P[t] = [-x for x in P[t]]
            for row in Pinv:
                row[t] = -row[t]

    diagonal = tuple(a[i][i] for i in range(min(m, n)))
    return SmithDecomposition(
        left=tuple(map(tuple, P)),
        right=tuple(map(tuple, Q)),
        diagonal=diagonal,
        left_inverse=tuple(map(tuple, Pinv)),
        shape=(m, n),
    )


def integer_kernel(M, ncols=None):
    """Saturated basis (list of column vectors) of ``{x in Z^n : M x = 0}``.

    The trailing columns of the right Smith transformation span the kernel,
    and since that transformation is unimodular the span is saturated.
    """
    snf = smith_form(M, ncols)
    n = snf.shape[1]
    r = snf.rank
    return [[snf.right[i][j] for i in range(n)] for j in range(r, n)]


@dataclass(frozen=True)
class CoinvariantDecomposition:
    """``H/(1-S)H`` over Z_l: free rank plus ``l``-primary torsion.

    ``generator_lifts[i]`` represents a generator of order
    ``l**torsion_exponents[i]``; ``smith`` decomposes ``I - S`` and
    ``torsion_positions[i]`` is the diagonal slot the generator came from.
    """

    free_rank: int
    torsion_exponents: tuple
    generator_lifts: tuple
    smith: SmithDecomposition
    torsion_positions: tuple

    @property
    def torsion_order_exponent(self) -> int:
        return sum(self.torsion_exponents)


def one_minus(L: LatticeWithIsometry):
    n = L.rank
    return [[int(i == j) - L.isometry[i][j] for j in range(n)] for i in range(n)]


def coinvariants(L: LatticeWithIsometry) -> CoinvariantDecomposition:
    n = L.rank
    l = int(L.prime)
    snf = smith_form(one_minus(L), n)
    free_rank = sum(1 for d in snf.diagonal if d == 0)
    found = []
    for i, d in enumerate(snf.diagonal):
        if d:
            e = lval(d, l)
            if e:
                found.append((e, i))
    # diagonal divisibility already orders the l-parts; sort keeps it explicit
    found.sort()
    lifts = tuple(tuple(snf.left_inverse[r][i] for r in range(n)) for _, i in found)
    return CoinvariantDecomposition(
        free_rank=free_rank,
        torsion_exponents=tuple(e for e, _ in found),
        generator_lifts=lifts,
        smith=snf,
        torsion_positions=tuple(i for _, i in found),
    )


def fixed_sublattice(L: LatticeWithIsometry):
    """Saturated basis of ``{x : S x = x}`` as a list of column vectors."""
    return integer_kernel(one_minus(L), L.rank)


def orthogonal_complement(L: LatticeWithIsometry, basis):
    """Saturated basis of ``{x : b^T G x = 0 for every b in basis}``."""
    n = L.rank
    if not basis:
        return [[int(i == j) for i in range(n)] for j in range(n)]
    rows = [im.matvec(L.gram, b) for b in basis]  # G symmetric: (G b)^T x = b^T G x
    return integer_kernel(rows, n)


def class_coordinates(decomp: CoinvariantDecomposition, u):
    """Coordinates of ``u`` after the left Smith change of basis."""
    return im.matvec(decomp.smith.left, u)


def class_order(decomp: CoinvariantDecomposition, u, l) -> int:
    """Exponent ``e`` such that the class of ``u`` has order ``l**e``.

    Raises :class:`NotTorsion` when the class has infinite order over Z_l.
    """
    c = class_coordinates(decomp, u)
    e = 0
    for ci, d in zip(c, decomp.smith.diagonal):
        if ci == 0:
            continue
        if d == 0:
            raise NotTorsion("class has a free component")
        e = max(e, lval(d, l) - lval(ci, l))
    return e


def reduce_lift(decomp: CoinvariantDecomposition, u):
    """A small representative of the class of ``u`` modulo the image of ``I - S``."""
    c = class_coordinates(decomp, u)
    reduced = [ci % d if d else ci for ci, d in zip(c, decomp.smith.diagonal)]
    return im.matvec(decomp.smith.left_inverse, reduced)


def solve_torsion_witness(L: LatticeWithIsometry, decomp: CoinvariantDecomposition, t, m: int):
    """Rational ``v`` with ``(I - S) v = t`` and ``l**m * v`` in the local ring.

    Solves ``D y = l**m P t`` coordinate-wise after the Smith change of basis;
    free coordinates are set to zero.  Raises :class:`NotTorsion` if some
    coordinate needs a denominator divisible by ``l``.
    """
    l = int(L.prime)
    snf = decomp.smith
    scale = l**m
    c = [scale * x for x in im.matvec(snf.left, t)]
    y = []
    for ci, d in zip(c, snf.diagonal):
        if d == 0:
            if ci != 0:
                raise NotTorsion("class of t has a free component")
            y.append(Fraction(0))
            continue
        if ci and lval(ci, l) < lval(d, l):
            raise NotTorsion(f"class of t is not killed by {l}^{m}")
        y.append(Fraction(ci, d))
    h = [sum(q * yj for q, yj in zip(row, y)) for row in snf.right]
    return [x / scale for x in h]
