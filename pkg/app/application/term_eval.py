from __future__ import annotations
import logging
from collections.abc import Mapping
from app.application import algebra_ops
from app.domain.constraints import CoeffSeq, ONE, mk_hyperplane
from app.domain.elements import EMPTY, Element, FULL
from app.domain.terms import (
    Cyl,
    Diag,
    Hyper,
    Join,
    Meet,
    Not,
    Pof,
    Subst,
    Swap,
    Term,
    Unit,
    Var,
)
from app.domain.transformations import Transformation
from app.shared.errors import UnboundIdentifierError


logger = logging.getLogger(__name__)


def evaluate(term: Term, env: Mapping[str, Element] | None = None) -> Element:
    """Evaluate a term to a canonical Element; names resolve through ``env``."""

    bindings = env or {}

    if isinstance(term, Unit):
        return FULL if term.full else EMPTY
    if isinstance(term, Var):
        try:
            return bindings[term.name]
        except KeyError as exc:
            raise UnboundIdentifierError(f"unbound identifier: {term.name}") from exc
    if isinstance(term, Pof):
        return Element.from_atom(mk_hyperplane(term.rhs, CoeffSeq.of({}, ONE)))
    if isinstance(term, Diag):
        return algebra_ops.diagonal(term.i, term.j)
    if isinstance(term, Hyper):
        return Element.from_atom(mk_hyperplane(term.rhs, CoeffSeq.of(dict(term.explicit), term.tail)))
    if isinstance(term, Not):
        return algebra_ops.complement(evaluate(term.arg, bindings))
    if isinstance(term, Join):
        return algebra_ops.join(evaluate(term.left, bindings), evaluate(term.right, bindings))
    if isinstance(term, Meet):
        return algebra_ops.meet(evaluate(term.left, bindings), evaluate(term.right, bindings))
    if isinstance(term, Cyl):
        return algebra_ops.cylindrify(evaluate(term.arg, bindings), term.gamma)
    if isinstance(term, Swap):
        return algebra_ops.substitute(
            evaluate(term.arg, bindings), Transformation.transposition(term.i, term.j)
        )
    if isinstance(term, Subst):
        return algebra_ops.substitute(evaluate(term.arg, bindings), term.transformation)
    raise TypeError(f"not a term: {term!r}")
