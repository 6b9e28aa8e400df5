import pytest

from conftest import random_form
from linkcob.abgroup import FgAbelianGroup, cyclic, free
from linkcob.exactlink import (FIXTURE_NOTES, IllDefinedBoundary, SeifertHomologyData,
                               data_from_form, fixture, is_exact_surface)
from linkcob.zlattice import IntMatrix


def euler_characteristic(d):
    return (d.HnK.free_rank - d.HnF_modTors.free_rank + d.HnFK_modTors.free_rank
            - d.Hn1K.free_rank)


def test_product_fixtures():
    rep = is_exact_surface(fixture("F0-product"))
    assert rep.exact and rep.failures == () and rep.first_failure is None
    rep = is_exact_surface(fixture("F1-product"))
    assert not rep.exact and rep.first_failure == 1
    assert rep.failures == (1, 4)
    assert "injective" in rep.describe()[0]


@pytest.mark.parametrize("name", ["F0-product", "sphere-knot", "simple-link", "fibered-fiber"])
def test_exact_fixtures(name):
    d = fixture(name)
    assert is_exact_surface(d)
    assert euler_characteristic(d) == 0


def test_fixture_groups():
    assert fixture("simple-link").Hn1K == FgAbelianGroup(1, (2,))
    assert fixture("sphere-knot").HnK == free(0)
    d = fixture("fibered-fiber")
    assert d.HnF_modTors.free_rank == d.HnFK_modTors.free_rank == 3
    assert set(FIXTURE_NOTES) == {"F0-product", "F1-product", "sphere-knot", "simple-link",
                                  "fibered-fiber"}
    with pytest.raises(KeyError):
        fixture("nope")


def test_sequence_of_a_form_is_always_exact(rng, adjoint):
    for _ in range(100):
        d = data_from_form(random_form(rng, max_rank=5, adjoint=adjoint))
        assert is_exact_surface(d)
        assert euler_characteristic(d) == 0


def test_each_position_can_fail():
    Z, O = free(1), free(0)
    # multiplication by 2 in the middle: the cokernel survives at H_n(F,K)
    d = SeifertHomologyData.build(O, Z, Z, O, IntMatrix.zeros(1, 0), [[2]], IntMatrix.zeros(0, 1))
    assert is_exact_surface(d).failures == (3,)
    d = SeifertHomologyData.build(O, Z, Z, O, IntMatrix.zeros(1, 0), [[0]], IntMatrix.zeros(0, 1))
    assert is_exact_surface(d).failures == (2, 3)
    d = SeifertHomologyData.build(O, O, Z, cyclic(2), IntMatrix.zeros(0, 0),
                                  IntMatrix.zeros(1, 0), [[0]])
    assert is_exact_surface(d).failures == (3, 4)


def test_torsion_is_dropped_when_the_boundary_descends():
    # H_n(F,K) = Z/2 + Z, the torsion generator dies in H_{n-1}(K)
    d = SeifertHomologyData.build(free(0), free(1), FgAbelianGroup(1, (2,)), free(0),
                                  IntMatrix.zeros(1, 0), [[1], [1]], IntMatrix.zeros(0, 2))
    assert d.HnFK_modTors == free(1)
    assert d.beta.matrix.tolist() == [[1]]
    assert is_exact_surface(d)


def test_ill_defined_boundary():
    with pytest.raises(IllDefinedBoundary):
        SeifertHomologyData.build(free(0), free(0), FgAbelianGroup(1, (2,)), cyclic(2),
                                  IntMatrix.zeros(0, 0), IntMatrix.zeros(2, 0), [[1, 0]])
    with pytest.raises(IllDefinedBoundary):
        SeifertHomologyData.build(free(0), free(0), cyclic(2), free(1),
                                  IntMatrix.zeros(0, 0), IntMatrix.zeros(1, 0), [[1]])


def test_shape_validation():
    with pytest.raises(ValueError):
        SeifertHomologyData.build(cyclic(2), free(1), free(1), free(0), [[1]], [[1]],
                                  IntMatrix.zeros(0, 1))
    with pytest.raises(ValueError):
        SeifertHomologyData.build(free(1), free(1), free(1), free(0), [[1, 0]], [[1]],
                                  IntMatrix.zeros(0, 1))
