"""The pairing on the torsion of the coinvariants and its verdicts.

For torsion classes ``a = [u]`` and ``b = [t]`` in ``H/(1 - S)H`` the value is
``(u, v) mod Z_l`` where ``v`` is any rational vector with ``v - S v = t``.

Alternation is decided on generators only: once the pairing is known to be
skewsymmetric, ``(x + y, x + y) = (x, x) + (y, y)``, so vanishing on the
diagonal of the generator matrix extends to every element.
"""
from __future__ import annotations

from dataclasses import dataclass

from .lattice import LatticeWithIsometry, evaluate_form
from .normalform import (
    CoinvariantDecomposition,
    class_order,
    reduce_lift,
    smith_form,
    solve_torsion_witness,
)
from .scalars import PairingValue, reduce_mod_Zl

__all__ = [
    "TorsionClass",
    "TorsionPairingMatrix",
    "Verdicts",
    "torsion_class",
    "generator_class",
    "add_classes",
    "pairing_value",
    "pairing_matrix",
    "verdicts",
    "smith_nondegenerate",
]


@dataclass(frozen=True)
class TorsionClass:
    lift: tuple
    order_exponent: int


@dataclass(frozen=True)
class TorsionPairingMatrix:
    exponents: tuple
    values: tuple  # k x k tuple of PairingValue
    prime: int

    def as_strings(self):
        return [[str(v) for v in row] for row in self.values]


@dataclass(frozen=True)
class Verdicts:
    nondegenerate: bool
    skewsymmetric: bool
    alternating: bool
    square_order: bool
    torsion_order_exponent: int

    def as_dict(self):
        return {
            "nondegenerate": self.nondegenerate,
            "skewsymmetric": self.skewsymmetric,
            "alternating": self.alternating,
            "square_order": self.square_order,
        }


def torsion_class(L: LatticeWithIsometry, decomp: CoinvariantDecomposition, u) -> TorsionClass:
    """Class of ``u`` with its order computed; raises NotTorsion for free classes."""
    u = tuple(int(x) for x in u)
    return TorsionClass(u, class_order(decomp, u, int(L.prime)))


def generator_class(decomp: CoinvariantDecomposition, i: int) -> TorsionClass:
    return TorsionClass(decomp.generator_lifts[i], decomp.torsion_exponents[i])


def add_classes(L, decomp, a: TorsionClass, b: TorsionClass) -> TorsionClass:
    u = reduce_lift(decomp, [x + y for x, y in zip(a.lift, b.lift)])
    return torsion_class(L, decomp, u)


def pairing_value(L: LatticeWithIsometry, decomp: CoinvariantDecomposition,
                  a: TorsionClass, b: TorsionClass) -> PairingValue:
    l = int(L.prime)
    if not any(a.lift) or not any(b.lift):
        return PairingValue.zero(l)
    v = solve_torsion_witness(L, decomp, b.lift, b.order_exponent)
    return reduce_mod_Zl(evaluate_form(L, a.lift, v), l)


def pairing_matrix(L: LatticeWithIsometry, decomp: CoinvariantDecomposition) -> TorsionPairingMatrix:
    k = len(decomp.torsion_exponents)
    gens = [generator_class(decomp, i) for i in range(k)]
    l = int(L.prime)
    # one witness per column, reused across the row index
    witnesses = [solve_torsion_witness(L, decomp, g.lift, g.order_exponent) for g in gens]
    values = tuple(
        tuple(reduce_mod_Zl(evaluate_form(L, gens[i].lift, witnesses[j]), l) for j in range(k))
        for i in range(k)
    )
    return TorsionPairingMatrix(tuple(decomp.torsion_exponents), values, l)


def _integer_relations(P: TorsionPairingMatrix):
    """``A`` with ``A[i][j] = l**m_i * values[i][j]`` as integers."""
    l = P.prime
    A = []
    for i, mi in enumerate(P.exponents):
        row = []
        for v in P.values[i]:
            if v.exponent > mi:
                raise ValueError("pairing value exceeds the order of its generator")
            row.append(v.numerator * l ** (mi - v.exponent))
        A.append(row)
    return A


def smith_nondegenerate(P: TorsionPairingMatrix) -> bool:
    """No nonzero ``x`` pairs trivially with every generator.

    ``x`` lies in the right kernel iff ``A x = 0`` in ``(+) Z/l**m_i``.  The
    image of ``x -> A x`` has order ``l**sum(m) / prod(snf([A | D]))`` with
    ``D = diag(l**m_i)``, so the kernel is trivial exactly when every
    elementary divisor of ``[A | D]`` is 1.  A finite pairing with trivial
    right kernel also has trivial left kernel.
    """
    k = len(P.exponents)
    if k == 0:
        return True
    A = _integer_relations(P)
    stacked = [A[i] + [P.prime ** P.exponents[i] if j == i else 0 for j in range(k)] for i in range(k)]
    diag = smith_form(stacked).diagonal
    return all(d == 1 for d in diag)


def verdicts(P: TorsionPairingMatrix, l=None) -> Verdicts:
    if l is not None and int(l) != P.prime:
        raise ValueError(f"matrix was computed at {P.prime}, not {int(l)}")
    k = len(P.exponents)
    vals = P.values
    skew = all((vals[i][j] + vals[j][i]).is_zero() for i in range(k) for j in range(i, k))
    alternating = skew and all(vals[i][i].is_zero() for i in range(k))
    total = sum(P.exponents)
    return Verdicts(
        nondegenerate=smith_nondegenerate(P),
        skewsymmetric=skew,
        alternating=alternating,
        square_order=total % 2 == 0,
        torsion_order_exponent=total,
    )


def order_bound_ok(P: TorsionPairingMatrix) -> bool:
    e = P.exponents
    return all(
        P.values[i][j].exponent <= min(e[i], e[j]) for i in range(len(e)) for j in range(len(e))
    )
