from __future__ import annotations
from fractions import Fraction
import pytest
from app.application.algebra_ops import complement, diagonal, join, meet
from app.application.constructions import (
    AtomFamily,
    a,
    a_atom,
    classify,
    covered_by_po,
    decompose_over_pof,
    default_po_pool,
    in_poz,
    is_pof,
    s_closure,
    s_closure_terms,
    simplicity_probe,
    transposition_stable,
)
from app.application.qe_engine import equal, is_empty
from app.application.term_eval import evaluate
from app.domain.constraints import CoeffSeq, mk_diagonal, mk_hyperplane
from app.domain.elements import Element
from app.domain.terms import Diag, Join, Meet, Not, Var, render
from app.shared.errors import PreconditionError


def test_classify_families() -> None:
    assert classify(a_atom(0)) == AtomFamily.POL | AtomFamily.POF
    assert classify(mk_diagonal(0, 1)) == AtomFamily.POL | AtomFamily.PO
    assert classify(mk_hyperplane(2, CoeffSeq.of({0: 1}))) == AtomFamily.POL | AtomFamily.PO
    # tail 1 with an explicit zero coefficient
    assert classify(mk_hyperplane(1, CoeffSeq.of({0: 0}, 1))) == AtomFamily.POL | AtomFamily.PO

def test_family_rendering() -> None:
    assert (AtomFamily.POL | AtomFamily.POF).render() == "Pol,Pof"
    assert AtomFamily.NONE.render() == "None"

def test_is_pof() -> None:
    assert is_pof(a(3))
    assert is_pof(a(Fraction(-1, 2)))
    assert not is_pof(complement(a(3)))
    assert not is_pof(diagonal(0, 1))

@pytest.mark.parametrize("n, m", [(0, 1), (2, 5), (0, 50)])
def test_pof_elements_are_pairwise_disjoint(n: int, m: int) -> None:
    assert is_empty(meet(a(n), a(m)))
    assert not is_empty(a(n))

def test_s_closure_of_a_diagonal() -> None:
    closure = s_closure([diagonal(0, 1)], range(3))

    assert len(closure) == 3
    assert {x.text for x in closure} == {diagonal(i, j).text for i, j in [(0, 1), (0, 2), (1, 2)]}

def test_s_closure_of_pof_is_itself() -> None:
    assert s_closure([a(0)], range(5)) == [a(0)]

def test_s_closure_terms_produce_their_members() -> None:
    for term, x in s_closure_terms([(Diag(0, 1), diagonal(0, 1))], range(3)):
        assert equal(evaluate(term), x)

def test_default_po_pool() -> None:
    pool = default_po_pool(3, 2)

    # three diagonals, then s_i = q for i < 3 and |q| <= 2
    assert len(pool) == 3 + 3 * 5
    assert render(pool[0][0]) == "d(0,1)"
    assert all(AtomFamily.PO in classify(x.atoms()[0]) for _, x in pool)

def test_transposition_stability() -> None:
    assert transposition_stable(a_atom(0), range(4))
    assert transposition_stable(mk_diagonal(0, 1), range(4))

def test_poz_membership() -> None:
    d01 = diagonal(0, 1)

    verdict = in_poz(d01)
    assert verdict.in_poz
    assert verdict.covering == (mk_diagonal(0, 1),)
    assert not in_poz(complement(d01)).in_poz

def test_exactly_one_of_x_and_its_complement_is_small() -> None:
    x = join(diagonal(0, 1), complement(diagonal(1, 2)))

    assert in_poz(x).in_poz != in_poz(complement(x)).in_poz

def test_poz_rejects_pof_atoms() -> None:
    with pytest.raises(PreconditionError):
        in_poz(a(0))

def test_covered_by_po() -> None:
    assert covered_by_po(meet(diagonal(0, 1), diagonal(1, 2)), [diagonal(0, 1)])
    assert not covered_by_po(complement(diagonal(0, 1)), [diagonal(0, 1)])

def test_pof_decomposition_decomposition_verifies() -> None:
    # given: g = y0 + y1 * d(0,1) - d(1,2)
    g = Join(Var("y0"), Meet(Var("y1"), Meet(Diag(0, 1), Not(Diag(1, 2)))))
    generators = {"y0": a(0), "y1": a(1)}

    # when
    result = decompose_over_pof(g, generators)

    # then
    assert result.verified
    assert result.names == ("y0", "y1")
    assert len(result.sigma_terms) == 3
    assert equal(result.sigma[-1], Element.of([]))
    assert [verdict.in_poz for verdict in result.classes] == [False, True, True]

def test_pof_decomposition_requires_disjoint_generators() -> None:
    with pytest.raises(PreconditionError, match="not disjoint"):
        decompose_over_pof(Var("y0"), {"y0": a(0), "y1": a(0)})

def test_simplicity_probe() -> None:
    probe = simplicity_probe(diagonal(0, 1))

    assert probe.ok
    assert probe.gamma == frozenset({0, 1, 2, 3})
    assert simplicity_probe(a(0)).ok
