"""Lattices with isometry: the triple (l, G, S) and its validation.

A :class:`LatticeWithIsometry` models a free Z_l-module ``H`` of finite rank
with the standard basis, a symmetric bilinear form given by the Gram matrix
``G`` and an automorphism ``S`` preserving it.  Both matrices are integral;
the form must be perfect at ``l`` and ``S`` invertible at ``l``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional, Sequence

from . import _intmat as im
from .scalars import LPrime

__all__ = [
    "LatticeWithIsometry",
    "ValidationError",
    "MalformedInstance",
    "NotPrime",
    "NotSymmetric",
    "NotPerfectAtL",
    "NotIsometry",
    "NotInvertibleAtL",
    "NotUnimodular",
    "validate",
    "evaluate_form",
    "direct_sum",
    "base_change",
    "load_instance",
    "loads_instance",
    "dump_instance",
]


class ValidationError(ValueError):
    """Input triple violates one of the lattice invariants.

    ``code`` is the short machine-readable name of the violated invariant.
    """

    code = "ValidationError"

    def __init__(self, message=""):
        super().__init__(message or self.code)


class MalformedInstance(ValidationError):
    code = "MalformedInstance"


class NotPrime(ValidationError):
    code = "NotPrime"


class NotSymmetric(ValidationError):
    code = "NotSymmetric"


class NotPerfectAtL(ValidationError):
    code = "NotPerfectAtL"


class NotIsometry(ValidationError):
    code = "NotIsometry"


class NotInvertibleAtL(ValidationError):
    code = "NotInvertibleAtL"


class NotUnimodular(ValidationError):
    code = "NotUnimodular"


Matrix = tuple  # tuple of row tuples


def _freeze(a) -> Matrix:
    return tuple(tuple(int(x) for x in row) for row in a)


@dataclass(frozen=True)
class LatticeWithIsometry:
    prime: LPrime
    rank: int
    gram: Matrix
    isometry: Matrix
    name: Optional[str] = field(default=None, compare=False)

    def gram_list(self):
        return [list(r) for r in self.gram]

    def isometry_list(self):
        return [list(r) for r in self.isometry]

    def with_name(self, name) -> "LatticeWithIsometry":
        return LatticeWithIsometry(self.prime, self.rank, self.gram, self.isometry, name)


def _check_square(a, n, what):
    if not isinstance(a, (list, tuple)) or len(a) != n:
        raise MalformedInstance(f"{what} must have {n} rows")
    for row in a:
        if not isinstance(row, (list, tuple)) or len(row) != n:
            raise MalformedInstance(f"{what} must be {n}x{n}")
        for x in row:
            if isinstance(x, bool) or not isinstance(x, int):
                raise MalformedInstance(f"{what} entries must be integers, got {x!r}")


def validate(l, gram: Sequence[Sequence[int]], isometry: Sequence[Sequence[int]],
             name: Optional[str] = None, rank: Optional[int] = None) -> LatticeWithIsometry:
    """Check the raw triple and return the validated lattice.

    Raises the :class:`ValidationError` subclass for the first violated
    invariant, in the order: prime, shape, symmetry, perfectness at ``l``,
    isometry, invertibility of ``S`` at ``l``.
    """
    if isinstance(l, bool) or not isinstance(l, int):
        raise NotPrime(f"l must be an integer, got {l!r}")
    try:
        p = LPrime(l)
    except ValueError as exc:
        raise NotPrime(str(exc)) from None
    n = len(gram) if rank is None else rank
    if isinstance(n, bool) or not isinstance(n, int) or n < 0:
        raise MalformedInstance(f"rank must be a non-negative integer, got {n!r}")
    _check_square(gram, n, "gram")
    _check_square(isometry, n, "isometry")
    g, s = _freeze(gram), _freeze(isometry)
    if any(g[i][j] != g[j][i] for i in range(n) for j in range(i)):
        raise NotSymmetric("gram matrix is not symmetric")
    dg = im.det(g)
    if dg % p == 0:
        raise NotPerfectAtL(f"det G = {dg} is not a unit at {int(p)}")
    st = im.transpose(s, n)
    if n and im.matmul(im.matmul(st, g), s) != [list(r) for r in g]:
        raise NotIsometry("S^T G S != G")
    ds = im.det(s)
    if ds % p == 0:
        raise NotInvertibleAtL(f"det S = {ds} is not a unit at {int(p)}")
    return LatticeWithIsometry(p, n, g, s, name)


def evaluate_form(L: LatticeWithIsometry, x, y):
    """``x^T G y``; entries of ``x``/``y`` may be any exact numbers."""
    if len(x) != L.rank or len(y) != L.rank:
        raise ValueError(f"vectors must have length {L.rank}")
    return sum(xi * sum(gij * yj for gij, yj in zip(row, y)) for xi, row in zip(x, L.gram) if xi)


def direct_sum(L1: LatticeWithIsometry, L2: LatticeWithIsometry, name=None) -> LatticeWithIsometry:
    if int(L1.prime) != int(L2.prime):
        raise ValueError(f"prime mismatch: {int(L1.prime)} vs {int(L2.prime)}")
    n1, n2 = L1.rank, L2.rank
    g = im.block_diag(L1.gram, L2.gram, n1, n2)
    s = im.block_diag(L1.isometry, L2.isometry, n1, n2)
    return LatticeWithIsometry(L1.prime, n1 + n2, _freeze(g), _freeze(s), name)


def base_change(L: LatticeWithIsometry, T) -> LatticeWithIsometry:
    """Express ``L`` in the basis given by the columns of ``T``.

    Gram becomes ``T^T G T`` and the isometry ``T^-1 S T``.
    """
    n = L.rank
    _check_square(T, n, "T")
    if abs(im.det(T)) != 1:
        raise NotUnimodular("|det T| != 1")
    tinv = im.inverse_unimodular(T)
    g = im.matmul(im.matmul(im.transpose(T, n), L.gram_list()), T)
    s = im.matmul(im.matmul(tinv, L.isometry_list()), T)
    return validate(int(L.prime), g, s, name=L.name, rank=n)


def loads_instance(text: str, l_override: Optional[int] = None) -> LatticeWithIsometry:
    """Parse the instance JSON format strictly and validate it."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedInstance(f"invalid JSON: {exc}") from None
    if not isinstance(data, dict):
        raise MalformedInstance("instance must be a JSON object")
    unknown = set(data) - {"name", "l", "rank", "gram", "isometry"}
    if unknown:
        raise MalformedInstance(f"unknown keys: {sorted(unknown)}")
    # the override only fills in a missing prime
    l = data.get("l", l_override)
    if l is None:
        raise MalformedInstance("missing prime 'l'")
    for key in ("gram", "isometry"):
        if key not in data:
            raise MalformedInstance(f"missing key {key!r}")
    name = data.get("name")
    if name is not None and not isinstance(name, str):
        raise MalformedInstance("name must be a string")
    rank = data.get("rank", len(data["gram"]) if isinstance(data["gram"], list) else None)
    return validate(l, data["gram"], data["isometry"], name=name, rank=rank)


def load_instance(path, l_override: Optional[int] = None) -> LatticeWithIsometry:
    with open(path) as fh:
        return loads_instance(fh.read(), l_override)


def instance_dict(L: LatticeWithIsometry) -> dict:
    out = {}
    if L.name is not None:
        out["name"] = L.name
    out.update(l=int(L.prime), rank=L.rank, gram=L.gram_list(), isometry=L.isometry_list())
    return out


def dump_instance(L: LatticeWithIsometry) -> str:
    return json.dumps(instance_dict(L), separators=(",", ":"))
