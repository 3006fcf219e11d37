from __future__ import annotations
from fractions import Fraction
from app.application.algebra_ops import diagonal, meet
from app.application.single_generator import fuse_pair
from app.application.generator_search import (
    GBounds,
    SearchBounds,
    SearchRecord,
    SearchStatus,
    enumerate_g,
    g_membership,
    generator_search,
)
from app.application.constructions import a, default_po_pool
from app.application.qe_engine import equal
from app.application.term_eval import evaluate
from app.domain.constraints import CoeffSeq, mk_hyperplane
from app.domain.elements import EMPTY, Element, FULL
from app.domain.terms import Diag, Meet, ONE_TERM, Pof, Var, ZERO_TERM


A0_TERM = Pof(Fraction(0))


def test_search_finds_a_target_with_its_term() -> None:
    # given
    target = meet(a(0), diagonal(0, 1))

    # when
    report = generator_search(
        [("a(0)*d(0,1)", target)],
        [(A0_TERM, a(0))],
        SearchBounds(depth=2, window=4, max_items=500),
    )

    # then
    (record,) = report.records
    assert record.status is SearchStatus.FOUND
    assert record.depth == 1
    assert equal(evaluate(record.witness), target)
    assert report.all_found
    assert not report.partial

def test_candidates_and_constants_are_found_at_depth_zero() -> None:
    report = generator_search(
        [("d(0,1)", diagonal(0, 1))],
        [(A0_TERM, a(0)), (Diag(0, 1), diagonal(0, 1))],
        SearchBounds(depth=1, window=4),
    )

    assert report.records[0].depth == 0

def test_unreachable_target_is_unknown_within_bounds() -> None:
    report = generator_search([("a(1)", a(1))], [(A0_TERM, a(0))], SearchBounds(depth=2, window=4))

    (record,) = report.records
    assert record.status is SearchStatus.UNKNOWN
    assert record.witness is None
    assert record.render() == "unknown-within-bounds a(1) - -"
    assert not report.all_found

def test_item_budget_marks_the_report_partial() -> None:
    report = generator_search([("a(1)", a(1))], [(A0_TERM, a(0))], SearchBounds(depth=3, window=4, max_items=1))

    assert report.partial
    assert report.records[0].status is SearchStatus.UNKNOWN

def test_search_recovers_fused_pair() -> None:
    # given
    x = diagonal(0, 1)
    y = Element.from_atom(mk_hyperplane(1, CoeffSeq.of({0: 1})))
    b = fuse_pair(x, y, 2, 3)

    # when
    report = generator_search([("x", x), ("y", y)], [(Var("b"), b)], SearchBounds(depth=2, window=8))

    # then
    assert report.all_found
    assert not report.partial
    assert report.explored < 50
    for record, target in zip(report.records, (x, y)):
        assert record.depth is not None and record.depth <= 2
        assert equal(evaluate(record.witness, {"b": b}), target)

def test_partial_unknown_renders_as_a_lower_bound() -> None:
    report = generator_search([("a(1)", a(1))], [(A0_TERM, a(0))], SearchBounds(depth=3, window=4, max_items=1))

    (record,) = report.records
    assert record.lower_bound
    assert record.render() == "unknown-within-bounds a(1) - - lower-bound"

def test_record_rendering() -> None:
    record = SearchRecord(SearchStatus.FOUND, "t", Meet(A0_TERM, Diag(0, 1)), 1)

    assert record.render() == "found t a(0) * d(0,1) 1"

def test_enumerate_g_starts_with_empty_sum_and_empty_product() -> None:
    # given
    xs = [(A0_TERM, a(0))]
    pool = [(Diag(0, 1), diagonal(0, 1))]

    # when
    members = list(enumerate_g(xs, pool, GBounds(product_width=2, sum_width=2, max_items=100), [0, 1]))

    # then
    assert members[0] == (ZERO_TERM, EMPTY)
    assert members[1] == (ONE_TERM, FULL)
    for term, x in members:
        assert equal(evaluate(term), x)
    texts = [x.text for _, x in members]
    assert len(texts) == len(set(texts))

def test_g_membership_of_a_generator() -> None:
    pool = default_po_pool(2, 1)
    bounds = GBounds(product_width=2, sum_width=2, max_items=500)

    record = g_membership(a(0), [(A0_TERM, a(0))], pool, bounds, [0, 1], "a(0)")

    assert record.status is SearchStatus.FOUND
    assert equal(evaluate(record.witness), a(0))

def test_other_pof_elements_stay_outside_the_bounded_closure() -> None:
    pool = default_po_pool(2, 1)
    bounds = GBounds(product_width=2, sum_width=2, max_items=500)

    for n in (1, 2):
        record = g_membership(a(n), [(A0_TERM, a(0))], pool, bounds, [0, 1])
        assert record.status is SearchStatus.UNKNOWN
        assert record.target == a(n).text

def test_g_membership_constants() -> None:
    pool = default_po_pool(2, 1)
    bounds = GBounds()

    assert g_membership(EMPTY, [], pool, bounds, [0, 1]).witness == ZERO_TERM
    assert g_membership(FULL, [], pool, bounds, [0, 1]).witness == ONE_TERM
