import random

from arith.matrix import MatrixDV
from arith.poly import PolyDV, PolyV
from conformal.cend import CendElem


def random_polyv(rng, degree, coeff_range=3, density=0.6):
    """Integer coefficients in [-coeff_range, coeff_range]; sparse-ish"""
    return PolyV(
        rng.randint(-coeff_range, coeff_range) if rng.random() < density else 0
        for _ in range(degree + 1)
    )


def random_polydv(rng, d_degree, v_degree, coeff_range=3, density=0.5):
    return PolyDV(random_polyv(rng, v_degree, coeff_range, density) for _ in range(d_degree + 1))


def random_cend(rng, size, d_degree, v_degree, coeff_range=3, density=0.5):
    rows = [
        [random_polydv(rng, d_degree, v_degree, coeff_range, density) for _ in range(size)]
        for _ in range(size)
    ]
    return CendElem(MatrixDV(rows))


def random_triples(seed, count, size, d_degree, v_degree):
    """Reproducible stream of (a, b, c) triples"""
    rng = random.Random(seed)
    for _ in range(count):
        yield tuple(random_cend(rng, size, d_degree, v_degree) for _ in range(3))
