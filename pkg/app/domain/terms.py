from __future__ import annotations
from dataclasses import dataclass
from fractions import Fraction
from collections.abc import Mapping
from app.domain.transformations import GammaSpec, Transformation
from app.shared.rationals import format_rational


# Term trees are both the parsed CLI expressions and the generator terms
# (G(X) members, search certificates, recovery terms).

@dataclass(frozen=True)
class Unit:
    full: bool

@dataclass(frozen=True)
class Var:
    name: str

@dataclass(frozen=True)
class Pof:
    rhs: Fraction

@dataclass(frozen=True)
class Diag:
    i: int
    j: int

@dataclass(frozen=True)
class Hyper:
    rhs: Fraction
    explicit: tuple[tuple[int, Fraction], ...]
    tail: Fraction

@dataclass(frozen=True)
class Not:
    arg: Term

@dataclass(frozen=True)
class Join:
    left: Term
    right: Term

@dataclass(frozen=True)
class Meet:
    left: Term
    right: Term

@dataclass(frozen=True)
class Cyl:
    gamma: GammaSpec
    arg: Term

@dataclass(frozen=True)
class Swap:
    i: int
    j: int
    arg: Term

@dataclass(frozen=True)
class Subst:
    transformation: Transformation
    arg: Term


Term = Unit | Var | Pof | Diag | Hyper | Not | Join | Meet | Cyl | Swap | Subst

ZERO_TERM = Unit(False)
ONE_TERM = Unit(True)

_JOIN_PREC = 1
_MEET_PREC = 2
_PREFIX_PREC = 3


def render(term: Term, context: int = 0) -> str:
    """Render a term in the CLI expression language; ``parse(render(t)) == t``."""

    if isinstance(term, Join):
        text = f"{render(term.left, _JOIN_PREC)} + {render(term.right, _MEET_PREC)}"
        return f"({text})" if context > _JOIN_PREC else text
    if isinstance(term, Meet):
        text = f"{render(term.left, _MEET_PREC)} * {render(term.right, _PREFIX_PREC)}"
        return f"({text})" if context > _MEET_PREC else text
    if isinstance(term, Not):
        return "~" + render(term.arg, _PREFIX_PREC)
    if isinstance(term, Unit):
        return "1" if term.full else "0"
    if isinstance(term, Var):
        return term.name
    if isinstance(term, Pof):
        return f"a({format_rational(term.rhs)})"
    if isinstance(term, Diag):
        return f"d({term.i},{term.j})"
    if isinstance(term, Hyper):
        coeffs = "".join(f"{i}:{format_rational(c)} " for i, c in term.explicit)
        return f"H({format_rational(term.rhs)}; {coeffs}| {format_rational(term.tail)})"
    if isinstance(term, Cyl):
        return f"{term.gamma.render()}({render(term.arg)})"
    if isinstance(term, Swap):
        return f"s[{term.i},{term.j}]({render(term.arg)})"
    if isinstance(term, Subst):
        return "s{" + term.transformation.render() + "}(" + render(term.arg) + ")"
    raise TypeError(f"not a term: {term!r}")

def generators(term: Term) -> set[str]:
    if isinstance(term, Var):
        return {term.name}
    if isinstance(term, (Join, Meet)):
        return generators(term.left) | generators(term.right)
    if isinstance(term, (Not, Cyl, Swap, Subst)):
        return generators(term.arg)
    return set()

def replace_generators(term: Term, mapping: Mapping[str, Term]) -> Term:
    if isinstance(term, Var):
        return mapping.get(term.name, term)
    if isinstance(term, Join):
        return Join(replace_generators(term.left, mapping), replace_generators(term.right, mapping))
    if isinstance(term, Meet):
        return Meet(replace_generators(term.left, mapping), replace_generators(term.right, mapping))
    if isinstance(term, Not):
        return Not(replace_generators(term.arg, mapping))
    if isinstance(term, Cyl):
        return Cyl(term.gamma, replace_generators(term.arg, mapping))
    if isinstance(term, Swap):
        return Swap(term.i, term.j, replace_generators(term.arg, mapping))
    if isinstance(term, Subst):
        return Subst(term.transformation, replace_generators(term.arg, mapping))
    return term

def size(term: Term) -> int:
    if isinstance(term, (Join, Meet)):
        return 1 + size(term.left) + size(term.right)
    if isinstance(term, (Not, Cyl, Swap, Subst)):
        return 1 + size(term.arg)
    return 1

def abstract_subterms(term: Term, names: Mapping[Term, str]) -> Term:
    """Replace every subterm found in ``names`` by a variable of that name."""

    if term in names:
        return Var(names[term])
    if isinstance(term, Join):
        return Join(abstract_subterms(term.left, names), abstract_subterms(term.right, names))
    if isinstance(term, Meet):
        return Meet(abstract_subterms(term.left, names), abstract_subterms(term.right, names))
    if isinstance(term, Not):
        return Not(abstract_subterms(term.arg, names))
    if isinstance(term, Cyl):
        return Cyl(term.gamma, abstract_subterms(term.arg, names))
    if isinstance(term, Swap):
        return Swap(term.i, term.j, abstract_subterms(term.arg, names))
    if isinstance(term, Subst):
        return Subst(term.transformation, abstract_subterms(term.arg, names))
    return term
