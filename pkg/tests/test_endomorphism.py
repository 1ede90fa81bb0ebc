import random

import pytest
from hypothesis import given, settings, strategies as st

from entrolab.algebra import MonomialOrder, substitute
from entrolab.dynamics import lambda_n
from entrolab.endomorphism import compose, contracting_check, iterate, validate
from entrolab.errors import NotLocal, StructuralError, WellDefinednessFailure
from entrolab.local_ring import LocalRingPresentation, local_length
from entrolab.parsing import parse_polynomial

from conftest import GF5, QQ


def plane(field):
    return LocalRingPresentation(field, ("x", "y"))


def test_frobenius_on_cusp_is_valid(cusp_frob, cusp):
    x, y = cusp.gens
    # oracle: y^10 - x^15 = (y^2 - x^3) * sum y^(2i) x^(3(4-i))
    cofactor = sum((y ** (2 * i) * x ** (3 * (4 - i)) for i in range(5)), cusp.poly_ring.zero)
    assert (y ** 2 - x ** 3) * cofactor == y ** 10 - x ** 15
    assert cusp_frob.images == (x ** 5, y ** 5)


def test_swap_is_valid(node_swap):
    x, y = node_swap.ring.gens
    assert node_swap.images == (y, x)


def test_not_local():
    R = plane(QQ)
    x, y = R.gens
    with pytest.raises(NotLocal) as exc:
        validate(R, [x + 1, y])
    assert exc.value.code == "NOT_LOCAL"
    assert exc.value.payload()["variable"] == "x"


def test_well_definedness_failure(cusp):
    x, y = cusp.gens
    with pytest.raises(WellDefinednessFailure) as exc:
        validate(cusp, [x ** 2, y])
    payload = exc.value.payload()
    assert exc.value.code == "WELL_DEFINEDNESS_FAILURE"
    assert "y^2" in payload["relation"]
    assert payload["normal_form"] != "0"


def test_wrong_arity(cusp):
    x, _ = cusp.gens
    with pytest.raises(StructuralError):
        validate(cusp, [x])


def test_iterate_power_maps():
    R = plane(QQ)
    x, y = R.gens
    assert iterate(validate(R, [x ** 2, y ** 2]), 3) == (x ** 8, y ** 8)
    assert iterate(validate(R, [y ** 2, x ** 3]), 2) == (x ** 6, y ** 6)
    phi = validate(R, [y ** 2, x ** 3])
    assert iterate(phi, 0) == R.gens
    with pytest.raises(ValueError):
        iterate(phi, -1)


def test_cusp_second_iterate_lex():
    # with y > x lexicographically, y^2 - x^3 rewrites y^2 to x^3
    lex = MonomialOrder("lex", (1, 0))
    base = LocalRingPresentation(GF5, ("x", "y"), order=lex)
    rel = parse_polynomial("y^2 - x^3", base.poly_ring)
    R = LocalRingPresentation(GF5, ("x", "y"), [rel], order=lex)
    x, y = R.gens
    phi = validate(R, [x ** 5, y ** 5])
    assert iterate(phi, 2) == (x ** 25, x ** 36 * y)


def test_cusp_second_iterate_degrevlex(cusp_frob, cusp):
    x, y = cusp.gens
    img = iterate(cusp_frob, 2)
    # degrevlex rewrites x^3 -> y^2, so x^25 becomes x*y^16 and y^25 is standard
    assert img == (x * y ** 16, y ** 25)
    assert cusp.reduce(img[0] - x ** 25).is_zero()
    assert cusp.reduce(img[1] - x ** 36 * y).is_zero()


@pytest.mark.parametrize("k", [2, 3, 5])
def test_cache_coherence(k, cusp):
    # (x^k, y^k) preserves y^2 - x^3 for every k
    rng = random.Random(k)
    x, y = cusp.gens
    phi = validate(cusp, [x ** k, y ** k])
    fresh = validate(cusp, list(phi.images))
    top = 6 if k == 2 else 3
    for _ in range(3):
        m, n = rng.randint(1, top), rng.randint(1, top)
        composed = compose(iterate(phi, m), iterate(phi, n))
        assert tuple(cusp.reduce(g) for g in composed) == iterate(fresh, m + n)


@pytest.mark.parametrize("images,m,n", [
    ("x, y + x^2", 6, 6),
    ("x, y + x^2", 1, 5),
    ("x^2 + y^3, x*y", 2, 3),
    ("x^2 + y^3, x*y", 1, 1),
])
def test_cache_coherence_polynomial_ring(images, m, n):
    R = plane(GF5)
    imgs = [parse_polynomial(s, R.poly_ring) for s in images.split(",")]
    phi = validate(R, imgs)
    lhs = compose(iterate(phi, m), iterate(phi, n))
    assert lhs == iterate(validate(R, imgs), m + n)


def test_reduced_and_raw_lambda_agree(cusp_frob, cusp):
    for n in (1, 2):
        raw = iterate(cusp_frob, n, reduce=False)
        assert raw != iterate(cusp_frob, n) or n == 1
        assert local_length(cusp, raw).length == lambda_n(cusp_frob, n)


def test_contracting_examples(cusp_frob, node_swap):
    v = contracting_check(cusp_frob)
    assert v.contracting and v.embedding_dim == 2 and v.label == "CONTRACTING"
    v = contracting_check(node_swap)
    assert not v.contracting and v.witness == "x" and v.label == "NOT_CONTRACTING"
    line = LocalRingPresentation(QQ, ("x",))
    (x,) = line.gens
    assert not contracting_check(validate(line, [x])).contracting


def test_contracting_needs_edim_iterations():
    # (y, x^2): one step leaves y outside m^2, two steps land inside
    R = plane(QQ)
    x, y = R.gens
    phi = validate(R, [y, x ** 2])
    assert contracting_check(phi).contracting
    assert contracting_check(validate(R, [y, x])).witness == "x"


@settings(max_examples=40)
@given(st.lists(st.tuples(st.integers(0, 3), st.integers(0, 3)), min_size=2, max_size=2),
       st.integers(1, 4), st.integers(1, 4))
def test_high_valuation_maps_contract(exps, c1, c2):
    R = plane(GF5)
    x, y = R.gens
    imgs = []
    for (a, b), c in zip(exps, (c1, c2)):
        if a + b < 2:
            a += 2
        imgs.append(c * x ** a * y ** b + x ** (a + b + 1))
    phi = validate(R, imgs)
    assert all(g.valuation() >= 2 for g in imgs)
    assert contracting_check(phi).contracting


def test_call_applies_map(cusp_frob, cusp):
    x, y = cusp.gens
    assert cusp_frob(x * y) == cusp.reduce(x ** 5 * y ** 5)
    assert cusp_frob(y ** 2 - x ** 3).is_zero()
