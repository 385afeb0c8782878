import random

from cml3.grassmann import GElement, derive, elem_mul
from cml3.twisted import associator, cmul, cube
from helpers import random_element, random_homogeneous


def g(i, j=0):
    return GElement.generator(i, j)


def test_cmul_odd_odd():
    # d(x) y - x d(y) on single generators
    expected = elem_mul(g(0, 1), g(1)) + elem_mul(g(0), g(1, 1)).scale(2)
    assert cmul(g(0), g(1)) == expected


def test_cmul_unit():
    x = random_element(random.Random(0))
    assert cmul(GElement.one(), x) == x
    assert cmul(x, GElement.one()) == x


def test_cmul_generator_square():
    assert cmul(g(0), g(0)) == elem_mul(g(0), g(0, 1))


def test_cmul_commutative_seeded():
    rng = random.Random(1)
    for _ in range(40):
        x, y = random_element(rng), random_element(rng)
        assert cmul(x, y) == cmul(y, x)


def test_cmul_even_factor_is_plain_product():
    rng = random.Random(2)
    for _ in range(20):
        x = random_homogeneous(rng, 0)
        y = random_element(rng)
        assert cmul(x, y) == elem_mul(x, y)


def test_associator_on_generators():
    got = associator(g(0), g(1), g(2))
    assert got == derive(elem_mul(elem_mul(g(0), g(1)), g(2)))


def test_associator_alternating():
    rng = random.Random(3)
    for _ in range(25):
        x, y = random_element(rng), random_element(rng)
        assert not associator(x, x, y)
        assert not associator(x, y, y)
        assert not associator(y, x, y)


def test_associator_skew_on_samples():
    rng = random.Random(4)
    for _ in range(15):
        x, y, z = (random_element(rng) for _ in range(3))
        a = associator(x, y, z)
        assert a + associator(y, x, z) == GElement.zero()
        assert a + associator(x, z, y) == GElement.zero()


def test_associator_unital():
    rng = random.Random(5)
    x, y = random_element(rng), random_element(rng)
    assert not associator(GElement.one(), x, y)
    assert not associator(x, GElement.one(), y)


def test_derivation_shortcut_for_odd_elements():
    rng = random.Random(6)
    for _ in range(25):
        x, y, z = (random_homogeneous(rng, 1) for _ in range(3))
        assert associator(x, y, z) == derive(elem_mul(elem_mul(x, y), z))


def test_cube_on_generator():
    assert not cube(g(0))


def test_cube_unit_documents_precondition():
    assert cube(GElement.one()) == GElement.one()


def test_cube_vanishes_on_subalgebra_samples():
    from cml3.loop import sample_nilpotent

    rng = random.Random(7)
    for _ in range(100):
        x = sample_nilpotent(rng, 7, rng.randrange(3))
        assert not cube(x)
