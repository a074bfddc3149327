import json
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from torsform.corpus import random_unimodular
from torsform.lattice import (
    MalformedInstance,
    NotIsometry,
    NotPerfectAtL,
    NotPrime,
    NotSymmetric,
    NotUnimodular,
    base_change,
    direct_sum,
    dump_instance,
    evaluate_form,
    loads_instance,
    validate,
)

from conftest import I2, MINUS_I2, U


def test_validate_ok():
    L = validate(2, U, MINUS_I2)
    assert L.rank == 2 and L.gram == ((0, 1), (1, 0))


@pytest.mark.parametrize(
    "args, err",
    [
        ((4, U, MINUS_I2), NotPrime),
        ((2, [[0, 1], [2, 0]], MINUS_I2), NotSymmetric),
        ((2, [[2, 0], [0, 2]], MINUS_I2), NotPerfectAtL),
        ((2, [[2, 0], [0, 2]], [[1, 1], [0, 1]]), NotPerfectAtL),
        ((2, [[0, 0], [0, 0]], MINUS_I2), NotPerfectAtL),
        ((2, I2, [[1, 1], [0, 1]]), NotIsometry),
        ((2, [[1, 0], [0, 1]], [[1, 0], [0, 1], [0, 0]]), MalformedInstance),
        ((2, [[1, 0], [0, 1]], [[1, 0], [0, 1.5]]), MalformedInstance),
    ],
)
def test_validate_errors(args, err):
    with pytest.raises(err):
        validate(*args)


def test_isometry_determinant_is_a_sign(corpus):
    # S^T G S = G with det G != 0 forces det S = +-1, so NotInvertibleAtL can
    # only trigger after an isometry failure has already been reported
    from torsform._intmat import det

    assert all(abs(det(L.isometry)) == 1 for L in corpus[:100])
    with pytest.raises(NotIsometry):
        validate(3, [[1]], [[3]])


def test_rank_zero():
    L = validate(2, [], [])
    assert L.rank == 0


@pytest.mark.parametrize(
    "G, x, y, expected",
    [(U, (1, 0), (0, 1), 1), (U, (1, 1), (1, 1), 2), (I2, (3, 4), (3, 4), 25)],
)
def test_evaluate_form(G, x, y, expected):
    L = validate(2, G, MINUS_I2)
    assert evaluate_form(L, x, y) == expected
    assert evaluate_form(L, y, x) == expected


def test_evaluate_form_rank_mismatch():
    with pytest.raises(ValueError):
        evaluate_form(validate(2, U, MINUS_I2), (1,), (1, 0))


def test_direct_sum():
    L = validate(2, U, MINUS_I2)
    S = direct_sum(L, L)
    assert S.rank == 4
    assert S.gram[2][3] == 1 and S.gram[0][2] == 0
    empty = validate(2, [], [])
    assert direct_sum(empty, L).gram == L.gram
    one = validate(2, [[1]], [[-1]])
    assert direct_sum(one, one).isometry == ((-1, 0), (0, -1))
    with pytest.raises(ValueError):
        direct_sum(L, validate(3, U, MINUS_I2))


def test_base_change_examples():
    L = validate(2, U, MINUS_I2)
    assert base_change(L, I2).gram == L.gram
    # T^T U T with T = [[1,1],[0,1]]: columns (1,0), (1,1) have norms 0 and 2
    B = base_change(L, [[1, 1], [0, 1]])
    assert B.gram == ((0, 1), (1, 2)) and B.isometry == ((-1, 0), (0, -1))
    B2 = base_change(L, [[1, 0], [1, 1]])
    assert B2.gram == ((2, 1), (1, 0))
    with pytest.raises(NotUnimodular):
        base_change(L, [[2, 0], [0, 1]])


def test_base_change_permutation():
    G = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    S = [[0, 0, -1], [1, 0, 0], [0, 1, 0]]
    T = [[0, 1, 0], [0, 0, 1], [1, 0, 0]]
    B = base_change(validate(2, G, S), T)
    assert B.gram == tuple(map(tuple, G))
    assert all(sorted(abs(x) for x in row) == [0, 0, 1] for row in B.isometry)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32), st.integers(1, 6))
def test_base_change_validates_and_preserves_form(seed, n):
    rng = random.Random(seed)
    G = [[int(i == j) for j in range(n)] for i in range(n)]
    perm = list(range(n))
    rng.shuffle(perm)
    S = [[0] * n for _ in range(n)]
    for j, i in enumerate(perm):
        S[i][j] = rng.choice([1, -1])
    L = validate(2, G, S)
    T = random_unimodular(n, rng)
    B = base_change(L, T)
    x = [rng.randint(-5, 5) for _ in range(n)]
    y = [rng.randint(-5, 5) for _ in range(n)]
    Sx = [sum(B.isometry[i][j] * x[j] for j in range(n)) for i in range(n)]
    Sy = [sum(B.isometry[i][j] * y[j] for j in range(n)) for i in range(n)]
    assert evaluate_form(B, Sx, Sy) == evaluate_form(B, x, y)


def test_json_round_trip():
    L = validate(2, U, MINUS_I2, name="u")
    back = loads_instance(dump_instance(L))
    assert back == L and back.name == "u"


def test_json_strict():
    good = {"l": 2, "rank": 2, "gram": U, "isometry": MINUS_I2}
    assert loads_instance(json.dumps(good)).rank == 2
    for broken in (
        {**good, "rank": 3},
        {**good, "gram": [[0, 1]]},
        {**good, "isometry": [[1, 0], [0]]},
        {**good, "extra": 1},
        {"l": 2, "gram": U},
    ):
        with pytest.raises(MalformedInstance):
            loads_instance(json.dumps(broken))
    with pytest.raises(MalformedInstance):
        loads_instance("[1, 2")


def test_json_l_override():
    text = json.dumps({"gram": U, "isometry": MINUS_I2})
    assert int(loads_instance(text, l_override=3).prime) == 3
    with pytest.raises(MalformedInstance):
        loads_instance(text)
    # a prime in the file wins over the override
    text2 = json.dumps({"l": 2, "gram": U, "isometry": MINUS_I2})
    assert int(loads_instance(text2, l_override=3).prime) == 2
