from __future__ import annotations
import logging
from dataclasses import dataclass
from enum import Enum
from collections.abc import Iterable, Sequence
from app.application import algebra_ops
from app.application.qe_engine import equal
from app.application.term_eval import evaluate
from app.domain.constraints import Atom, CoeffSeq, ZERO, canonicalize_atom
from app.domain.elements import Cell, Element, Literal
from app.domain.terms import Cyl, Diag, Meet, Not, Term, Var
from app.domain.transformations import GammaSpec
from app.shared.errors import FusionPreconditionError, InsufficientFreshCoordinatesError


logger = logging.getLogger(__name__)

FUSED_NAME = "b"


class RecoveryBranch(Enum):
    FIRST = "first"
    SECOND = "second"


@dataclass(frozen=True)
class Dilation:
    """Fresh coordinates above every explicit support in play."""

    base_window: frozenset[int]
    fresh: tuple[int, ...]

    def __post_init__(self) -> None:
        clash = self.base_window & set(self.fresh)
        if clash:
            raise FusionPreconditionError(min(clash), "is both in the base window and fresh")

    @classmethod
    def allocate(cls, elements: Iterable[Element], pairs: int) -> Dilation:
        """The 2*pairs smallest coordinates above the maximum explicit support."""

        support: set[int] = set()
        for x in elements:
            support |= x.support
        start = max(support) + 1 if support else 0
        return cls(frozenset(support), tuple(range(start, start + 2 * pairs)))

    @property
    def pairs(self) -> list[tuple[int, int]]:
        return [(self.fresh[k], self.fresh[k + 1]) for k in range(0, len(self.fresh) - 1, 2)]

    def lift_atom(self, atom: Atom) -> Atom:
        if atom.coeffs.tail == 0:
            return atom
        explicit = dict(atom.coeffs.explicit)
        explicit.update({i: ZERO for i in self.fresh})
        return canonicalize_atom(Atom(CoeffSeq.of(explicit, atom.coeffs.tail), atom.rhs))

    def lift(self, x: Element) -> Element:
        """Image of x in the dilation: coefficient 0 on every fresh coordinate."""

        lifted = Element.of(
            Cell.build(Literal(self.lift_atom(lit.atom), lit.positive) for lit in cell.literals)
            for cell in x.cells
        )
        if lifted != x:
            logger.warning("Lifted %s into the dilation over %s", x.text, list(self.fresh))
        return lifted


def _check_fresh(x: Element, coordinate: int, role: str) -> None:
    # entries pinned to 0 by a dilation do not count
    if any(atom.coeffs.at(coordinate) != 0 for atom in x.atoms() if coordinate in atom.support):
        raise FusionPreconditionError(coordinate, f"is in the explicit support of {role}")

def fuse_pair(x: Element, y: Element, k: int, l: int) -> Element:
    """b = x*d_kl + y*-d_kl, for k, l outside the explicit supports of x and y.

        Tail atoms still reach k and l; whether recovery holds then is what
        certify_fusion reports.
        """

    if k == l:
        raise FusionPreconditionError(k, "is used for both fusion coordinates")
    for c in (k, l):
        _check_fresh(x, c, "x")
        _check_fresh(y, c, "y")
    d = algebra_ops.diagonal(k, l)
    return algebra_ops.join(algebra_ops.meet(x, d), algebra_ops.meet(y, algebra_ops.complement(d)))


@dataclass(frozen=True)
class FusionCertificate:
    b: Element
    k: int
    l: int
    x_back: Element
    y_back: Element
    # both recoveries equal their operands
    ok: bool

def certify_fusion(x: Element, y: Element, k: int, l: int) -> FusionCertificate:
    """Fuse x and y, recover both operands and compare them exactly.

        A failed recovery is reported with ok=False; only the preconditions of
        fuse_pair raise.
        """

    b = fuse_pair(x, y, k, l)
    x_back = recover(b, k, l, RecoveryBranch.FIRST)
    y_back = recover(b, k, l, RecoveryBranch.SECOND)
    ok = equal(x_back, x) and equal(y_back, y)
    if not ok:
        logger.warning("Fusion over (%d, %d) does not recover %s ; %s", k, l, x.text, y.text)
    return FusionCertificate(b, k, l, x_back, y_back, ok)

def recover(b: Element, k: int, l: int, branch: RecoveryBranch) -> Element:
    """c_k(b*d_kl) for the first operand, c_k(b*-d_kl) for the second."""

    if k == l:
        raise FusionPreconditionError(k, "is used for both fusion coordinates")
    d = algebra_ops.diagonal(k, l)
    if branch is RecoveryBranch.SECOND:
        d = algebra_ops.complement(d)
    return algebra_ops.cylindrify(algebra_ops.meet(b, d), GammaSpec.finite([k]))

def _recover_term(term: Term, k: int, l: int, branch: RecoveryBranch) -> Term:
    diag: Term = Diag(k, l) if branch is RecoveryBranch.FIRST else Not(Diag(k, l))
    return Cyl(GammaSpec.finite([k]), Meet(term, diag))

def recovery_term(index: int, pairs: Sequence[tuple[int, int]], fused: Term = Var(FUSED_NAME)) -> Term:
    """Nested recover expression that extracts generator ``index`` from the fold of fuse_pair."""

    term = fused
    for m in range(len(pairs), index, -1):
        k, l = pairs[m - 1]
        term = _recover_term(term, k, l, RecoveryBranch.FIRST)
    if index > 0:
        k, l = pairs[index - 1]
        term = _recover_term(term, k, l, RecoveryBranch.SECOND)
    return term


@dataclass(frozen=True)
class FusionResult:
    b: Element
    generators: tuple[Element, ...]
    recovery_terms: tuple[Term, ...]
    verified: bool

def fuse_all(gens: Sequence[Element], dilation: Dilation) -> FusionResult:
    """Left fold of fuse_pair over lifted generators, one fresh pair per fusion."""

    if not gens:
        raise ValueError("fuse_all needs at least one generator")
    pairs = dilation.pairs
    required = len(gens) - 1
    if len(pairs) < required:
        raise InsufficientFreshCoordinatesError(required, len(pairs))

    lifted = tuple(dilation.lift(x) for x in gens)
    b = lifted[0]
    for m, y in enumerate(lifted[1:], start=1):
        k, l = pairs[m - 1]
        b = fuse_pair(b, y, k, l)

    used = pairs[:required]
    terms = tuple(recovery_term(i, used) for i in range(len(gens)))
    verified = all(
        equal(evaluate(term, {FUSED_NAME: b}), x) for term, x in zip(terms, lifted)
    )
    if not verified:
        logger.warning("Recovery failed for a fusion of %d generators", len(gens))
    return FusionResult(b, lifted, terms, verified)

def compress_check(x: Element, retained: Iterable[int]) -> bool:
    """x is fixed by cylindrification over every coordinate outside ``retained``."""

    return equal(algebra_ops.cylindrify(x, GammaSpec.cofinite(retained)), x)
