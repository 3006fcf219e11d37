from __future__ import annotations
import logging
from dataclasses import dataclass
from enum import Flag, auto
from fractions import Fraction
from functools import reduce
from itertools import combinations
from collections.abc import Mapping, Sequence
from app.application import algebra_ops
from app.application.element_store import ElementStore
from app.application.qe_engine import equal, is_empty, leq
from app.application.term_eval import evaluate
from app.domain.constraints import Atom, AtomKind, CoeffSeq, ONE, RationalLike, mk_hyperplane
from app.domain.elements import EMPTY, Element, FULL
from app.domain.terms import Diag, Hyper, Swap, Term, Unit, Var, render, replace_generators
from app.domain.transformations import GammaSpec, Transformation
from app.shared.errors import PreconditionError


logger = logging.getLogger(__name__)


class AtomFamily(Flag):
    NONE = 0
    POL = auto()
    PO = auto()
    POF = auto()

    def render(self) -> str:
        names = [f.name.capitalize() for f in (AtomFamily.POL, AtomFamily.PO, AtomFamily.POF) if f in self]
        return ",".join(names) if names else "None"


def a_atom(n: RationalLike) -> Atom:
    return mk_hyperplane(n, CoeffSeq.of({}, ONE))

def a(n: RationalLike) -> Element:
    """a_n: the sequences whose coordinates sum to n."""

    return Element.from_atom(a_atom(n))

def classify(atom: Atom) -> AtomFamily:
    """Family tags of a canonical atom.

        Any proper atom rescales to tail 0 or tail 1, so every atom is in Pol.
        Pof needs a constant nonzero coefficient sequence. Po needs 0 among the
        coefficients: automatic for tail 0 (diagonals included), an explicit 0
        entry otherwise.
        """

    family = AtomFamily.POL
    if atom.kind is not AtomKind.PROPER:
        return family
    coeffs = atom.coeffs
    if not coeffs.explicit and coeffs.tail != 0:
        family |= AtomFamily.POF
    if coeffs.tail == 0 or any(c == 0 for _, c in coeffs.explicit):
        family |= AtomFamily.PO
    return family

def is_pof(x: Element) -> bool:
    atoms = x.atoms()
    return (
        len(x.cells) == 1
        and len(atoms) == 1
        and x.cells[0].literals[0].positive
        and AtomFamily.POF in classify(atoms[0])
    )


def _window_transpositions(window: Sequence[int]) -> list[tuple[int, int]]:
    return list(combinations(sorted(set(window)), 2))

def s_closure_terms(
    named: Sequence[tuple[Term, Element]],
    window: Sequence[int],
) -> list[tuple[Term, Element]]:
    """X^S restricted to window transpositions, each member with a term that produces it."""

    store: ElementStore[Term] = ElementStore.probing(x for _, x in named)
    frontier: list[tuple[Term, Element]] = []
    for term, x in named:
        inserted, _ = store.add(x, term)
        if inserted:
            frontier.append((term, x))

    swaps = _window_transpositions(window)
    while frontier:
        next_frontier: list[tuple[Term, Element]] = []
        for term, x in frontier:
            for i, j in swaps:
                image = algebra_ops.swap(x, i, j)
                image_term = Swap(i, j, term)
                inserted, _ = store.add(image, image_term)
                if inserted:
                    next_frontier.append((image_term, image))
        frontier = next_frontier

    logger.debug("S-closure over window %s: %d members", list(window), len(store))
    return [(entry.payload, entry.element) for entry in store]

def s_closure(xs: Sequence[Element], window: Sequence[int]) -> list[Element]:
    named = [(Var(f"x{k}"), x) for k, x in enumerate(xs)]
    return [x for _, x in s_closure_terms(named, window)]

def default_po_pool(window: int, height: int) -> list[tuple[Term, Element]]:
    """{d_ij : i<j<window} and {[q, e_i] : i<window, |q| <= height}."""

    pool: list[tuple[Term, Element]] = []
    for i, j in combinations(range(window), 2):
        pool.append((Diag(i, j), algebra_ops.diagonal(i, j)))
    for i in range(window):
        for q in range(-height, height + 1):
            rhs = Fraction(q)
            term = Hyper(rhs, ((i, ONE),), Fraction(0))
            pool.append((term, evaluate(term)))
    return pool

def transposition_stable(atom: Atom, window: Sequence[int]) -> bool:
    family = classify(atom)
    return all(
        classify(algebra_ops.substitute_atom(atom, Transformation.transposition(i, j))) == family
        for i, j in _window_transpositions(window)
    )


@dataclass(frozen=True)
class PozVerdict:
    in_poz: bool
    covering: tuple[Atom, ...] = ()

def in_poz(x: Element) -> PozVerdict:
    """Membership in the ideal of G(0) generated by Po.

        A cell with a positive proper literal lies inside that hyperplane. A
        satisfiable cell of negative literals only is the complement of
        finitely many hyperplanes and no finite set of hyperplanes covers it
        over an infinite field.
        """

    for atom in x.atoms():
        if AtomFamily.POF in classify(atom):
            raise PreconditionError(f"in_poz expects an element over Po atoms, found Pof atom {atom.text}")

    covering: dict[Atom, None] = {}
    for cell in algebra_ops.normalize(x).cells:
        positives = [lit.atom for lit in cell.literals if lit.positive]
        if not positives:
            return PozVerdict(False)
        covering.setdefault(positives[0], None)
    return PozVerdict(True, tuple(covering))

def covered_by_po(x: Element, pool: Sequence[Element]) -> bool:
    return leq(x, reduce(algebra_ops.join, pool, EMPTY))


@dataclass(frozen=True)
class PofDecomposition:
    names: tuple[str, ...]
    sigma_terms: tuple[Term, ...]
    sigma: tuple[Element, ...]
    classes: tuple[PozVerdict, ...]
    verified: bool

def decompose_over_pof(g: Term, generators: Mapping[str, Element]) -> PofDecomposition:
    """Split g over disjoint Pof generators y_i as sum y_i*sigma_i + sigma_n*prod(-y_i).

        sigma_i comes from g with y_i := 1 and the other generators := 0, sigma_n
        from all generators := 0. The identity is then decided by the engine.
        """

    names = tuple(sorted(generators))
    for left, right in combinations(names, 2):
        if not is_empty(algebra_ops.meet(generators[left], generators[right])):
            raise PreconditionError(f"generators {left} and {right} are not disjoint")

    sigma_terms: list[Term] = []
    for name in names:
        mapping = {other: Unit(other == name) for other in names}
        sigma_terms.append(replace_generators(g, mapping))
    sigma_terms.append(replace_generators(g, {name: Unit(False) for name in names}))
    sigma = tuple(evaluate(term) for term in sigma_terms)

    rebuilt = EMPTY
    outside = FULL
    for name, s in zip(names, sigma):
        y = generators[name]
        rebuilt = algebra_ops.join(rebuilt, algebra_ops.meet(y, s))
        outside = algebra_ops.meet(outside, algebra_ops.complement(y))
    rebuilt = algebra_ops.join(rebuilt, algebra_ops.meet(sigma[-1], outside))

    verified = equal(evaluate(g, generators), rebuilt)
    if not verified:
        logger.warning("Decomposition identity failed for %s", render(g))
    return PofDecomposition(
        names=names,
        sigma_terms=tuple(sigma_terms),
        sigma=sigma,
        classes=tuple(in_poz(s) for s in sigma),
        verified=verified,
    )


@dataclass(frozen=True)
class SimplicityProbe:
    gamma: frozenset[int]
    ok: bool

def simplicity_probe(x: Element) -> SimplicityProbe:
    """Nonzero x cylindrifies to 1 over its support plus two fresh coordinates."""

    top = max(x.support) if x.support else -1
    gamma = frozenset(x.support | {top + 1, top + 2})
    ok = equal(algebra_ops.cylindrify(x, GammaSpec.finite(gamma)), FULL)
    return SimplicityProbe(gamma, ok)
