"""Standard lattices with isometries, named and seeded-random.

Families are built from blocks: the hyperbolic plane ``U``, the root lattice
``E8`` and the odd unimodular line ``I1``.  A family string is a ``+``-joined
list of blocks with optional powers, e.g. ``"U^3+E8^2"`` (alias ``"K3"``) or
``"I_3+U"``.  Isometries come from recipes:

``identity``, ``minusI``, ``swap`` (e <-> f in every U block), ``rot90``,
``cycle3``, ``perm:<signed 1-based images>``, ``block:a,b,c,d`` (GL2 action
on the first two hyperbolic planes), ``reflections:N`` and ``random:N``
(seeded words of N generators), ``torsion:N`` (the first seeded word of
length N whose coinvariants carry l-torsion, within a bounded number of
attempts), ``matrix:<json>`` for custom data.
"""
from __future__ import annotations

import json
import random
import re
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional

from . import _intmat as im
from .lattice import LatticeWithIsometry, NotIsometry, dump_instance, validate

__all__ = [
    "UnknownFamily",
    "GeneratorUnavailable",
    "InstanceSpec",
    "E8_GRAM",
    "standard_lattice",
    "parse_family",
    "e8_roots",
    "random_isometry",
    "build_instance",
    "emit_instance",
    "random_unimodular",
    "property_corpus",
    "EVEN_FAMILIES",
]


class UnknownFamily(ValueError):
    pass


class GeneratorUnavailable(ValueError):
    pass


U_GRAM = ((0, 1), (1, 0))

# E8 diagram: chain 1-3-4-5-6-7-8 with node 2 attached to 4
_E8_EDGES = [(0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (1, 3)]
E8_GRAM = tuple(
    tuple(2 if i == j else (-1 if (i, j) in _E8_EDGES or (j, i) in _E8_EDGES else 0) for j in range(8))
    for i in range(8)
)

TORSION_ATTEMPTS = 200
_BLOCK_SIZE = {"U": 2, "E8": 8, "I1": 1}
_ALIASES = {"K3": "U^3+E8^2"}
EVEN_FAMILIES = ("U", "E8", "U^k", "K3")


def parse_family(family: str, n: Optional[int] = None, k: Optional[int] = None) -> list:
    """Expand a family string into its block list."""
    family = _ALIASES.get(family, family)
    if family == "I_n":
        family = f"I_{n if n is not None else 2}"
    if family == "U^k":
        family = f"U^{k if k is not None else 2}"
    blocks = []
    for part in family.split("+"):
        m = re.fullmatch(r"(U|E8)(?:\^(\d+))?|I_(\d+)", part.strip())
        if not m:
            raise UnknownFamily(f"unknown lattice family {family!r}")
        if m.group(3) is not None:
            blocks += ["I1"] * int(m.group(3))
        else:
            blocks += [m.group(1)] * int(m.group(2) or 1)
    return blocks


def _block_gram(b):
    return {"U": U_GRAM, "E8": E8_GRAM, "I1": ((1,),)}[b]


def _offsets(blocks):
    out, pos = [], 0
    for b in blocks:
        out.append(pos)
        pos += _BLOCK_SIZE[b]
    return out, pos


def standard_lattice(family: str, n: Optional[int] = None, k: Optional[int] = None):
    """Gram matrix (list of rows) of a named family."""
    return _gram_of_blocks(parse_family(family, n, k))


def _gram_of_blocks(blocks):
    offs, size = _offsets(blocks)
    g = im.zeros(size, size)
    for b, o in zip(blocks, offs):
        bg = _block_gram(b)
        for i, row in enumerate(bg):
            for j, x in enumerate(row):
                g[o + i][o + j] = x
    return g


@lru_cache(maxsize=None)
def e8_roots() -> tuple:
    """All 240 roots of E8 in simple-root coordinates, by Weyl-group closure."""
    simple = [tuple(int(i == j) for j in range(8)) for i in range(8)]
    seen = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for v in frontier:
            gv = im.matvec(E8_GRAM, v)
            for i in range(8):
                # reflection in simple root i: v - (v, a_i) a_i
                w = list(v)
                w[i] -= gv[i]
                w = tuple(w)
                if w not in seen:
                    seen.add(w)
                    nxt.append(w)
        frontier = nxt
    return tuple(sorted(seen))


def reflection(G, v):
    """Matrix of ``x -> x - 2 (x, v) / (v, v) v``; needs ``(v, v)`` in {+-1, +-2}."""
    n = len(G)
    gv = im.matvec(G, v)
    norm = sum(a * b for a, b in zip(v, gv))
    if norm not in (1, -1, 2, -2):
        raise ValueError(f"reflection in a vector of norm {norm} is not integral")
    c = 2 // norm  # exact for the four admissible norms
    return [[int(i == j) - c * v[i] * gv[j] for j in range(n)] for i in range(n)]


def _unit(n, i, s=1):
    v = [0] * n
    v[i] = s
    return v


def _gl2_words():
    return [((1, 1), (0, 1)), ((1, 0), (1, 1)), ((0, 1), (1, 0)), ((-1, 0), (0, 1)), ((0, -1), (1, -1))]


def _hyperbolic_block(n, planes, A):
    """Act by ``A`` on e-vectors and ``A^-T`` on f-vectors of the given U planes."""
    Ainv = im.inverse_unimodular([list(r) for r in A])
    AinvT = im.transpose(Ainv)
    S = im.identity(n)
    for c, pc in enumerate(planes):
        for r, pr in enumerate(planes):
            S[pr][pc] = A[r][c]  # e_c -> sum_r A[r][c] e_r
            S[pr + 1][pc + 1] = AinvT[r][c]
    return S


def _generators(blocks):
    """Pairs ``(is_reflection, rng -> S)`` generating isometries of the block lattice."""
    offs, n = _offsets(blocks)
    G = _gram_of_blocks(blocks)
    u_planes = [o for b, o in zip(blocks, offs) if b == "U"]
    e8s = [o for b, o in zip(blocks, offs) if b == "E8"]
    ones = [o for b, o in zip(blocks, offs) if b == "I1"]
    gens = []

    def refl(v):
        return reflection(G, v)

    if u_planes:
        def u_swap(rng):
            o = rng.choice(u_planes)
            S = im.identity(n)
            S[o][o] = S[o + 1][o + 1] = 0
            S[o][o + 1] = S[o + 1][o] = 1
            return S

        def u_neg(rng):
            o = rng.choice(u_planes)
            S = im.identity(n)
            S[o][o] = S[o + 1][o + 1] = -1
            return S

        def u_root(rng):
            o = rng.choice(u_planes)
            v = [0] * n
            v[o], v[o + 1] = 1, rng.choice([1, -1])
            return refl(v)

        gens += [(False, u_swap), (False, u_neg), (True, u_root)]
        if len(u_planes) >= 2:
            def u_block(rng):
                p = rng.sample(u_planes, 2)
                A = [[1, 0], [0, 1]]
                for _ in range(rng.randint(1, 4)):
                    A = im.matmul(A, [list(r) for r in rng.choice(_gl2_words())])
                return _hyperbolic_block(n, p, A)

            def u_mixed(rng):
                o, o2 = rng.sample(u_planes, 2)
                v = [0] * n
                v[o], v[o + 1], v[o2] = 1, 1, rng.choice([1, -1])
                return refl(v)

            gens += [(False, u_block), (True, u_mixed)]
    for o in e8s:
        def e8_refl(rng, o=o):
            v = [0] * n
            v[o:o + 8] = rng.choice(e8_roots())
            if u_planes and rng.random() < 0.3:
                # root plus an isotropic vector orthogonal to it is again a root
                v[rng.choice(u_planes) + rng.randint(0, 1)] = rng.choice([1, -1])
            return refl(v)

        gens.append((True, e8_refl))
    if ones:
        def sign_flip(rng):
            return refl(_unit(n, rng.choice(ones)))

        gens.append((True, sign_flip))
        if len(ones) >= 2:
            def transposition(rng):
                a, b = rng.sample(ones, 2)
                v = [0] * n
                v[a], v[b] = 1, rng.choice([1, -1])
                return refl(v)

            gens.append((True, transposition))
        if u_planes:
            def odd_mixed(rng):
                v = _unit(n, rng.choice(ones))
                v[rng.choice(u_planes) + rng.randint(0, 1)] = rng.choice([1, -1])
                return refl(v)

            gens.append((True, odd_mixed))
    return gens, G


def _signed_perm(images, n):
    if len(images) != n or sorted(abs(x) for x in images) != list(range(1, n + 1)):
        raise ValueError(f"perm images {images} are not a signed permutation of 1..{n}")
    S = im.zeros(n, n)
    for j, x in enumerate(images):
        S[abs(x) - 1][j] = 1 if x > 0 else -1
    return S


def _has_l_torsion(S, l):
    from .normalform import smith_form

    n = len(S)
    diag = smith_form([[int(i == j) - S[i][j] for j in range(n)] for i in range(n)], n).diagonal
    return any(d and d % l == 0 for d in diag)


def random_isometry(G, recipe: str, seed: int = 0, blocks: Optional[list] = None, l: Optional[int] = None):
    """Isometry of ``G`` described by ``recipe``; verified before returning."""
    n = len(G)
    rng = random.Random(seed)
    name, _, arg = recipe.partition(":")
    if name == "identity":
        S = im.identity(n)
    elif name == "minusI":
        S = [[-int(i == j) for j in range(n)] for i in range(n)]
    elif name == "matrix":
        S = json.loads(arg)
    elif name == "perm":
        S = _signed_perm([int(x) for x in arg.split(",")], n)
    elif name == "rot90":
        S = _signed_perm([2, -1] + list(range(3, n + 1)), n)
    elif name == "cycle3":
        S = _signed_perm([2, 3, 1] + list(range(4, n + 1)), n)
    elif name in ("swap", "block", "reflections", "random", "torsion"):
        if blocks is None:
            raise GeneratorUnavailable(f"recipe {recipe!r} needs a lattice with a known generator set")
        offs, _ = _offsets(blocks)
        u_planes = [o for b, o in zip(blocks, offs) if b == "U"]
        if name == "swap":
            S = im.identity(n)
            for o in u_planes:
                S[o][o] = S[o + 1][o + 1] = 0
                S[o][o + 1] = S[o + 1][o] = 1
        elif name == "block":
            a = [int(x) for x in arg.split(",")]
            if len(u_planes) < 2 or len(a) != 4:
                raise GeneratorUnavailable("block recipe needs two U planes and four entries")
            S = _hyperbolic_block(n, u_planes[:2], [a[:2], a[2:]])
        else:
            gens, _ = _generators(blocks)
            gens = [g for is_refl, g in gens if is_refl or name != "reflections"]
            if not gens:
                raise GeneratorUnavailable(f"no generators for blocks {blocks}")
            attempts = TORSION_ATTEMPTS if name == "torsion" else 1
            if name == "torsion" and l is None:
                raise GeneratorUnavailable("torsion recipe needs the prime l")
            for _ in range(attempts):
                S = im.identity(n)
                for _ in range(int(arg or 1)):
                    S = im.matmul(S, rng.choice(gens)(rng))
                if name != "torsion" or _has_l_torsion(S, l):
                    break
    else:
        raise ValueError(f"unknown isometry recipe {recipe!r}")
    St = im.transpose(S, n)
    if im.matmul(im.matmul(St, G), S) != [list(r) for r in G]:
        raise NotIsometry(f"recipe {recipe!r} does not preserve the form")
    return S


@dataclass(frozen=True)
class InstanceSpec:
    family: str
    l: int
    isometry_recipe: str = "identity"
    seed: int = 0
    n: Optional[int] = None
    k: Optional[int] = None
    gram: Optional[tuple] = field(default=None, compare=False)  # custom family only

    def default_name(self):
        fam = self.family
        if fam == "I_n":
            fam = f"I_{self.n or 2}"
        if fam == "U^k":
            fam = f"U^{self.k or 2}"
        return f"{fam}|{self.isometry_recipe}|l={self.l}|seed={self.seed}"


def build_instance(spec: InstanceSpec, name: Optional[str] = None) -> LatticeWithIsometry:
    if spec.family == "custom":
        if spec.gram is None:
            raise UnknownFamily("custom family needs an explicit gram")
        G = [list(r) for r in spec.gram]
        S = random_isometry(G, spec.isometry_recipe, spec.seed, blocks=None, l=spec.l)
    else:
        blocks = parse_family(spec.family, spec.n, spec.k)
        G = _gram_of_blocks(blocks)
        S = random_isometry(G, spec.isometry_recipe, spec.seed, blocks=blocks, l=spec.l)
    return validate(spec.l, G, S, name=name or spec.default_name())


def emit_instance(spec: InstanceSpec, path=None, name: Optional[str] = None) -> str:
    """Instance JSON for ``spec``; also written to ``path`` when given."""
    text = dump_instance(build_instance(spec, name))
    if path is not None:
        with open(path, "w") as fh:
            fh.write(text + "\n")
    return text


def random_unimodular(n: int, rng: random.Random, steps: int = 12):
    """Random product of elementary and signed-permutation matrices."""
    T = im.identity(n)
    if n == 0:
        return T
    for _ in range(steps):
        if n >= 2 and rng.random() < 0.8:
            i, j = rng.sample(range(n), 2)
            q = rng.choice([-2, -1, 1, 2])
            for row in T:
                row[j] += q * row[i]
        else:
            i = rng.randrange(n)
            for row in T:
                row[i] = -row[i]
    return T


_SMALL_FAMILIES = [
    "U", "U^2", "U^3", "U^4", "U^5", "U^6", "E8", "E8+U", "E8+U^2",
    "I_1", "I_2", "I_3", "I_4", "I_5", "I_6", "I_8", "I_10", "I_12",
    "I_2+U", "I_3+U^2", "I_1+E8", "I_2+E8+U",
]
# families where l-torsion for odd l is cheap to find
_ODD_TORSION_FAMILIES = ["U^2", "U^3", "U^4", "U^5", "U^6", "E8+U^2", "I_3+U^2", "I_2+U^3", "I_4+U^4"]


def property_corpus(count: int = 500, seed: int = 2024, k3_count: int = 20):
    """Deterministic list of instances for property checks.

    ``count`` instances of rank at most 12 with l cycling through 2, 3, 5,
    followed by ``k3_count`` rank-22 instances.  About half of the odd-l
    instances are drawn with the ``torsion`` recipe so that the pairing has
    something to act on.
    """
    rng = random.Random(seed)
    out = []
    primes = (2, 3, 5)
    for i in range(count):
        l = primes[i % 3]
        roll = rng.random()
        if l != 2 and roll < 0.55:
            fam = rng.choice(_ODD_TORSION_FAMILIES)
            recipe = "torsion:%d" % rng.randint(3, 9)
        else:
            fam = rng.choice(_SMALL_FAMILIES)
            if roll < 0.1:
                recipe = "minusI"
            elif roll < 0.35:
                recipe = "reflections:%d" % rng.randint(1, 10)
            elif l == 2 and roll < 0.55:
                recipe = "torsion:%d" % rng.randint(2, 9)
            else:
                recipe = "random:%d" % rng.randint(1, 14)
        out.append(build_instance(InstanceSpec(fam, l, recipe, seed=rng.randrange(2**32))))
    for i in range(k3_count):
        l = primes[i % 3]
        recipe = "torsion:%d" % rng.randint(4, 10) if l == 3 else "random:%d" % rng.randint(3, 14)
        out.append(build_instance(InstanceSpec("K3", l, recipe, seed=rng.randrange(2**32))))
    return out
