import random

import pytest
from hypothesis import given, settings, strategies as st

from entrolab.algebra import PolyRing
from entrolab.errors import StructuralError
from entrolab.groebner import Ideal, colength
from entrolab.local_ring import (
    INFINITE_OR_UNKNOWN,
    LocalRingPresentation,
    embedding_dim,
    hilbert_samuel,
    local_length,
    regularity_check,
    truncation_ladder,
)
from entrolab.algebra import power_of_maximal_ideal

from conftest import GF5, QQ
from oracles import local_length_oracle, staircase_count, truncated_colength


def poly_ring(field, names=("x", "y")):
    return LocalRingPresentation(field, names)


def test_relations_must_lie_in_m():
    R = poly_ring(QQ)
    x, y = R.gens
    with pytest.raises(StructuralError):
        LocalRingPresentation(QQ, ("x", "y"), [x - 1])


def test_frobenius_square_box(cusp):
    R = poly_ring(GF5)
    x, y = R.gens
    res = local_length(R, [x ** 5, y ** 5])
    assert res.length == 25
    assert res.ladder[-1][1] == res.ladder[-2][1]
    assert res.stabilized_at == res.ladder[-2][0]


def test_cusp_length_matches_oracle(cusp):
    x, y = cusp.gens
    res = local_length(cusp, [x ** 5, y ** 5])
    oracle = local_length_oracle([(y ** 2 - x ** 3).as_dict, (x ** 5).as_dict, (y ** 5).as_dict], 5, 5, 40)
    assert res.length == oracle == 10


def test_not_primary_ladder_keeps_growing():
    R = poly_ring(GF5)
    x, y = R.gens
    res = local_length(R, [x ** 2, x * y], n_cap=30)
    assert res.length is INFINITE_OR_UNKNOWN
    assert not res.finite
    vals = [L for _, L in res.ladder]
    assert all(a < b for a, b in zip(vals, vals[1:]))
    assert res.ladder[0][0] == 2 and res.ladder[-1][0] == 30


def test_ladder_starts_at_generator_degree():
    R = poly_ring(QQ)
    x, y = R.gens
    res = local_length(R, [x ** 3, y ** 7])
    assert res.ladder[0][0] == 7
    assert res.length == 21


def test_ladder_agrees_with_direct_colength(cusp):
    x, y = cusp.gens
    J = [x ** 2 * y, y ** 3 + x ** 4]
    for N, L in truncation_ladder(cusp, J, 2, 9):
        direct = colength(Ideal(list(cusp.relations.generators) + J + power_of_maximal_ideal(cusp.poly_ring, N)))
        assert L == direct
        assert L == truncated_colength([g.as_dict for g in [y ** 2 - x ** 3] + J], N, 5)


def test_support_away_from_origin_is_ignored():
    # (x*(x-1), y) has colength 2 globally but length 1 at the origin
    R = poly_ring(QQ)
    x, y = R.gens
    assert colength(Ideal([x * (x - 1), y])) == 2
    assert local_length(R, [x * (x - 1), y]).length == 1


def test_hilbert_samuel_values(cusp):
    assert hilbert_samuel(poly_ring(QQ), 3) == 6
    assert hilbert_samuel(cusp, 2) == 3
    assert hilbert_samuel(cusp, 1) == 1
    x, y = cusp.gens
    assert hilbert_samuel(cusp, 2) == truncated_colength([(y ** 2 - x ** 3).as_dict], 2, 5)
    assert hilbert_samuel(cusp, 3) == truncated_colength([(y ** 2 - x ** 3).as_dict], 3, 5) == 5


def test_embedding_dim(cusp):
    assert embedding_dim(poly_ring(QQ)) == 2
    assert embedding_dim(cusp) == 2
    R = poly_ring(QQ)
    x, y = R.gens
    line = LocalRingPresentation(QQ, ("x", "y"), [x - y ** 2])
    assert embedding_dim(line) == 1
    assert truncated_colength([(x - y ** 2).as_dict], 2, 0) == 2


def test_regularity_check(cusp):
    v = regularity_check(poly_ring(GF5), 6)
    assert v.status == "REGULAR_UP_TO_N" and v.regular
    assert v.certificate.startswith("evidence")
    v = regularity_check(cusp, 6)
    assert (v.status, v.witness) == ("NOT_REGULAR", 3)
    assert v.values[-1] == (3, 5, 6)
    R1 = LocalRingPresentation(QQ, ("x",))
    (x,) = R1.gens
    dbl = LocalRingPresentation(QQ, ("x",), [x ** 2])
    v = regularity_check(dbl, 5)
    assert v.embedding_dim == 1
    assert v.values[0] == (2, 2, 2)
    assert (v.status, v.witness) == ("NOT_REGULAR", 3)


@settings(max_examples=40)
@given(st.lists(st.integers(1, 6), min_size=2, max_size=3))
def test_box_length_is_product(powers):
    names = ("x", "y", "z")[: len(powers)]
    R = LocalRingPresentation(QQ, names)
    J = [g ** a for g, a in zip(R.gens, powers)]
    expected = 1
    for a in powers:
        expected *= a
    assert local_length(R, J, verify_extra=True).length == expected


@pytest.mark.parametrize("seed", range(6))
def test_ladder_nondecreasing_and_stable(seed):
    rng = random.Random(seed)
    R = LocalRingPresentation(GF5, ("x", "y"), [])
    x, y = R.gens
    J = [x ** rng.randint(1, 4) + y ** rng.randint(2, 5), y ** rng.randint(1, 4) * x + x ** 5, y ** 6]
    res = local_length(R, J, verify_extra=True)
    vals = [L for _, L in res.ladder]
    assert vals == sorted(vals)
    assert res.length == local_length_oracle([g.as_dict for g in J], 5, res.ladder[0][0], 40)
