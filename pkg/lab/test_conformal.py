import os
import random
import sys
import time

import pytest

# Add the project root to the Python path
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '../')))

from arith.poly import PolyV
from config.settings import Settings, get_settings
from conformal.cend import (
    CendElem,
    brace_product,
    d_action,
    is_idempotent,
    is_unit_on,
    locality,
    locality_bound,
    nth_product,
    unit_from_polynomial,
)
from conformal.identities import ProductTable, anticommutator_product, check_conformal_identities, identity_sweep
from conformal.random_elements import random_cend, random_triples
from utils.errors import PreconditionError, SizeMismatchError

E = CendElem.parse


def curr2_gens():
    return [CendElem.unit(2, i, j) for i in range(2) for j in range(2)]


def test_nth_product_examples():
    assert nth_product(E("v"), E("v^2"), 1) == E("2*v^2")
    assert nth_product(E("D"), E("v"), 1) == E("-v")
    assert nth_product(E("v"), E("v^2"), 3).is_zero()


def test_identity_is_left_unit():
    x = E("[[D*v + 1, v^2], [D^2, 3]]")
    assert nth_product(CendElem.identity(2), x, 0) == x
    assert nth_product(CendElem.identity(2), E("[[3, 0], [0, 1]]"), 1).is_zero()
    assert nth_product(E("1"), E("v"), 1) == E("1")


def test_matrix_units_multiply_like_matrices():
    e12, e21 = CendElem.unit(2, 0, 1), CendElem.unit(2, 1, 0)
    assert nth_product(e12, e21, 0) == CendElem.unit(2, 0, 0)
    assert nth_product(e21, e21, 0).is_zero()


def test_d_action():
    assert d_action(E("1")) == E("D")
    assert d_action(CendElem.zero(2)).is_zero()


def test_sesqui_linearity_on_a_sample():
    a, b = E("v^2 + D"), E("D*v^3")
    for n in range(1, 6):
        assert nth_product(d_action(a), b, n) == nth_product(a, b, n - 1).scale(-n)
        assert nth_product(a, d_action(b), n) == d_action(nth_product(a, b, n)) + nth_product(a, b, n - 1).scale(n)


def test_brace_product():
    assert brace_product(E("1"), E("v"), 0) == E("v - D")
    f = E("v^3 - 2*v")
    assert brace_product(f, E("1"), 0) == f
    assert brace_product(CendElem.zero(1), E("v"), 2).is_zero()


def test_size_mismatch():
    with pytest.raises(SizeMismatchError):
        nth_product(CendElem.identity(1), CendElem.identity(2), 0)


def test_locality():
    assert locality(E("v"), E("v^2")) == 3
    assert locality(E("v"), CendElem.zero(1)) == 0
    assert locality(CendElem.identity(2), CendElem.identity(2)) == 1
    # 1 (1) D = 1, which a bound ignoring deg_D b would miss
    assert locality(E("1"), E("D")) == 2


def test_locality_bound_dominates_exact_value():
    rng = random.Random(get_settings().seed)
    for _ in range(20):
        a = random_cend(rng, 1, 2, 3)
        b = random_cend(rng, 1, 2, 3)
        assert locality(a, b) <= locality_bound(a, b)
        assert nth_product(a, b, locality_bound(a, b)).is_zero()


def test_is_idempotent():
    assert is_idempotent(CendElem.identity(2))
    assert not is_idempotent(E("v"))
    assert is_idempotent(CendElem.unit(2, 0, 0))


def test_is_unit_on():
    assert is_unit_on(CendElem.identity(2), curr2_gens())
    assert not is_unit_on(CendElem.unit(2, 0, 0), curr2_gens())
    assert is_unit_on(CendElem.unit(2, 0, 0), [])
    with pytest.raises(PreconditionError):
        is_unit_on(E("v"), [])


def test_unit_from_polynomial():
    u = unit_from_polynomial(E("[[1, v], [0, 1]]"))
    assert u == E("[[1, -D], [0, 1]]")
    assert is_idempotent(u)
    assert is_unit_on(u, curr2_gens())
    assert unit_from_polynomial(PolyV.constant(5)) == E("1")


def test_unit_from_polynomial_needs_constant_determinant():
    with pytest.raises(PreconditionError):
        unit_from_polynomial(PolyV((1, 1)))


def test_identities_hold_on_random_triples():
    for a, b, c in random_triples(7, 3, 2, 1, 2):
        report = check_conformal_identities(a, b, c, margin=1)
        assert report.passed, [r.name for r in report.failures()]


def test_identities_in_cend1():
    for a, b, c in random_triples(11, 3, 1, 2, 3):
        assert check_conformal_identities(a, b, c).passed


def test_zero_triple_passes():
    zero = CendElem.zero(2)
    report = check_conformal_identities(zero, zero, zero)
    assert report.passed
    assert report.index_bound == 2


def test_anticommutator_table_fails_associativity():
    e11, e12 = CendElem.unit(2, 0, 0), CendElem.unit(2, 0, 1)
    report = check_conformal_identities(e11, e11, e12, product=anticommutator_product)
    assert not report.passed
    failed = {r.name: r for r in report.failures()}
    assert "associativity" in failed
    witness = failed["associativity"].witness
    assert (witness.n, witness.m) == (0, 0)
    assert witness.lhs != witness.rhs


def test_random_elements_are_reproducible():
    settings = Settings(seed=3)
    first = random_cend(random.Random(settings.seed), 2, 2, 2)
    second = random_cend(random.Random(settings.seed), 2, 2, 2)
    assert first == second
    assert first.d_degree <= 2 and first.v_degree <= 2


@pytest.mark.slow
def test_identity_acceptance_sweep_within_a_minute():
    settings = get_settings()
    start = time.perf_counter()
    reports = []
    for size in (1, 2):
        triples = random_triples(settings.seed, 100, size, settings.random_d_degree, settings.random_v_degree)
        reports.extend(identity_sweep(triples, settings.check_margin))
    elapsed = time.perf_counter() - start
    assert len(reports) == 200
    assert all(r.passed for r in reports)
    assert elapsed < 60, f"200 triples took {elapsed:.1f} s"


def test_product_table_reuses_products():
    a, b = E("[[D*v, 1], [v^2, D]]"), E("[[v, 0], [D, 1]]")
    table = ProductTable()
    first = table.prod(a, b, 1)
    assert first == nth_product(a, b, 1)
    assert table.prod(a, b, 1) is first
    assert table.brace(a, b, 0) == brace_product(a, b, 0)
    assert table.hits >= 1
    assert table.prod(a, b, locality_bound(a, b)).is_zero()
    assert table.prod(a, b, -1).is_zero()


def test_identities_on_a_few_random_triples():
    settings = get_settings()
    triples = list(random_triples(settings.seed, 3, 2, 2, 2))
    reports = identity_sweep(triples)
    assert [r.passed for r in reports] == [True, True, True]
    assert all(r.index_bound >= 2 for r in reports)
