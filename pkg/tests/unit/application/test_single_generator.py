from __future__ import annotations
import logging
import pytest
from app.application.algebra_ops import diagonal, join, meet
from app.application.constructions import a
from app.application.qe_engine import equal
from app.application.single_generator import (
    Dilation,
    RecoveryBranch,
    certify_fusion,
    compress_check,
    fuse_all,
    fuse_pair,
    recover,
    recovery_term,
)
from app.application.term_eval import evaluate
from app.domain.constraints import CoeffSeq, mk_hyperplane
from app.domain.elements import Element
from app.domain.terms import render
from app.shared.errors import FusionPreconditionError, InsufficientFreshCoordinatesError


def _h(rhs: int, explicit: dict[int, int]) -> Element:
    return Element.from_atom(mk_hyperplane(rhs, CoeffSeq.of(explicit)))


def test_fusion_recovers_both_operands() -> None:
    # given
    x = diagonal(0, 1)
    y = join(_h(2, {0: 1}), _h(1, {1: 1}))

    # when
    b = fuse_pair(x, y, 2, 3)

    # then
    assert equal(recover(b, 2, 3, RecoveryBranch.FIRST), x)
    assert equal(recover(b, 2, 3, RecoveryBranch.SECOND), y)

def test_fusion_rejects_non_fresh_coordinates() -> None:
    with pytest.raises(FusionPreconditionError) as exc_info:
        fuse_pair(diagonal(0, 1), diagonal(1, 2), 2, 5)

    assert exc_info.value.coordinate == 2

def test_fuse_pair_allows_dimension_overlap() -> None:
    # given
    x, y = a(0), diagonal(0, 1)
    d = diagonal(2, 3)

    # when
    b = fuse_pair(x, y, 2, 3)

    # then
    assert equal(meet(b, d), meet(x, d))

def test_certificate_reports_a_failed_recovery() -> None:
    # when
    certificate = certify_fusion(a(0), diagonal(0, 1), 2, 3)

    # then
    assert not certificate.ok
    assert (certificate.k, certificate.l) == (2, 3)
    assert equal(certificate.y_back, diagonal(0, 1))
    assert not equal(certificate.x_back, a(0))

def test_certificate_of_lifted_operands_holds() -> None:
    # given
    dilation = Dilation(frozenset({0, 1}), (2, 3))
    x, y = dilation.lift(a(0)), diagonal(0, 1)

    # when
    certificate = certify_fusion(x, y, 2, 3)

    # then
    assert certificate.ok
    assert equal(certificate.x_back, x)
    assert equal(certificate.y_back, y)

def test_recover_rejects_a_repeated_coordinate() -> None:
    with pytest.raises(FusionPreconditionError):
        recover(diagonal(0, 1), 2, 2, RecoveryBranch.FIRST)

def test_dilation_allocates_above_the_support() -> None:
    dilation = Dilation.allocate([diagonal(0, 1), _h(1, {3: 1})], 2)

    assert dilation.fresh == (4, 5, 6, 7)
    assert dilation.pairs == [(4, 5), (6, 7)]

def test_dilation_rejects_fresh_coordinates_inside_the_base_window() -> None:
    with pytest.raises(FusionPreconditionError):
        Dilation(frozenset({0, 1, 2}), (2, 3))

def test_lift_pins_fresh_coordinates_of_tail_atoms(caplog) -> None:
    dilation = Dilation(frozenset(), (6, 7))

    with caplog.at_level(logging.WARNING):
        lifted = dilation.lift(a(0))

    assert lifted.text == "[0 ; 6:0 7:0 | 1]"
    assert "Lifted" in caplog.text
    assert dilation.lift(diagonal(0, 1)) == diagonal(0, 1)

def test_lifted_pof_fuses() -> None:
    dilation = Dilation(frozenset(), (6, 7))
    x, y = dilation.lift(a(0)), dilation.lift(a(1))

    b = fuse_pair(x, y, 6, 7)

    assert equal(recover(b, 6, 7, RecoveryBranch.FIRST), x)
    assert equal(recover(b, 6, 7, RecoveryBranch.SECOND), y)

def test_recovery_term_rendering() -> None:
    assert render(recovery_term(0, [(6, 7)])) == "c{6}(b * d(6,7))"
    assert render(recovery_term(1, [(6, 7)])) == "c{6}(b * ~d(6,7))"
    assert render(recovery_term(0, [(4, 5), (6, 7)])) == "c{4}(c{6}(b * d(6,7)) * d(4,5))"

def test_fuse_all_recovers_every_generator() -> None:
    # given
    gens = [diagonal(0, 1), _h(2, {0: 1}), meet(diagonal(1, 2), _h(1, {2: 1}))]

    # when
    result = fuse_all(gens, Dilation.allocate(gens, 2))

    # then
    assert result.verified
    assert len(result.recovery_terms) == 3
    for term, x in zip(result.recovery_terms, gens):
        assert equal(evaluate(term, {"b": result.b}), x)

def test_fuse_all_needs_enough_pairs() -> None:
    gens = [diagonal(0, 1), diagonal(1, 2), diagonal(0, 2)]

    with pytest.raises(InsufficientFreshCoordinatesError) as exc_info:
        fuse_all(gens, Dilation.allocate(gens, 1))

    assert exc_info.value.required == 2
    assert exc_info.value.available == 1

def test_compression_check() -> None:
    assert compress_check(diagonal(0, 1), [0, 1])
    assert not compress_check(diagonal(0, 1), [0])
    assert not compress_check(a(0), [0])
