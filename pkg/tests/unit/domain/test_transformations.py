from __future__ import annotations
import pytest
from app.domain.constraints import Point
from app.domain.transformations import DimSet, GammaSpec, Transformation


def test_transformation_drops_fixed_points() -> None:
    t = Transformation.of({0: 0, 1: 2})

    assert t.moved == ((1, 2),)
    assert t(1) == 2
    assert t(5) == 5
    assert t.domain == frozenset({1, 2})

def test_transposition() -> None:
    t = Transformation.transposition(0, 3)

    assert t.is_transposition
    assert t(0) == 3 and t(3) == 0
    assert t.render() == "0->3,3->0"

def test_transformation_rejects_negative_coordinates() -> None:
    with pytest.raises(ValueError):
        Transformation.of({-1: 0})

def test_pull_composes_the_point_with_the_transformation() -> None:
    # given
    t = Transformation.transposition(0, 1)
    point = Point.of({0: 1, 2: 5})

    # when
    pulled = t.pull(point)

    # then
    assert pulled == Point.of({1: 1, 2: 5})

def test_injectivity() -> None:
    t = Transformation.of({0: 1})

    assert not t.is_injective_on([0, 1])
    assert t.is_injective_on([0, 2])

def test_gamma_membership_and_rendering() -> None:
    finite = GammaSpec.finite([0, 1])
    cofinite = GammaSpec.cofinite([2])

    assert 0 in finite and 5 not in finite
    assert 2 not in cofinite and 7 in cofinite
    assert finite.render() == "c{0,1}"
    assert cofinite.render() == "C{2}"

def test_gamma_mapped_along_transformation() -> None:
    gamma = GammaSpec.finite([0]).mapped(Transformation.transposition(0, 4))

    assert gamma == GammaSpec.finite([4])

def test_dim_set_complement_form() -> None:
    dims = DimSet(frozenset({3}), True)

    assert 3 not in dims
    assert 10 in dims
    assert not dims.is_finite
    assert dims.render() == "omega - {3}"
