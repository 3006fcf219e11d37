from __future__ import annotations
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from collections.abc import Callable, Iterable, Sequence
from app.domain.constraints import Atom, Point, ZERO, canonicalize_atom
from app.domain.elements import Cell, Element, Literal
from app.shared.errors import EngineInvariantError


logger = logging.getLogger(__name__)

# variable key of the shared tail variable z = sum of s_i outside the cell's explicit domain
_Z = -1

Row = dict[int, Fraction]


@dataclass(frozen=True)
class SatResult:
    satisfiable: bool
    witness: Point | None = None

@dataclass(frozen=True)
class EqualityVerdict:
    equal: bool
    witness: Point | None = None
    # "left" when the witness lies in x but not y, "right" for the converse
    side: str | None = None


def _var_order(var: int) -> tuple[int, int]:
    # coordinates ascending, z last
    return (1, 0) if var == _Z else (0, var)

def _row_of(atom: Atom, domain: Iterable[int]) -> tuple[Row, Fraction]:
    row: Row = {}
    for i in domain:
        c = atom.coeffs.at(i)
        if c != 0:
            row[i] = c
    if atom.coeffs.tail != 0:
        row[_Z] = atom.coeffs.tail
    return row, atom.rhs

def _reduce(row: Row, rhs: Fraction, pivots: dict[int, tuple[Row, Fraction]]) -> tuple[Row, Fraction]:
    row = dict(row)
    for var, (p_row, p_rhs) in pivots.items():
        c = row.get(var)
        if not c:
            continue
        for v, pc in p_row.items():
            value = row.get(v, ZERO) - c * pc
            if value == 0:
                row.pop(v, None)
            else:
                row[v] = value
        rhs -= c * p_rhs
    return row, rhs

def _echelon(equations: Sequence[tuple[Row, Fraction]]) -> dict[int, tuple[Row, Fraction]] | None:
    """Reduced row echelon form keyed by pivot variable; None when inconsistent."""

    pivots: dict[int, tuple[Row, Fraction]] = {}
    for row, rhs in equations:
        row, rhs = _reduce(row, rhs, pivots)
        if not row:
            if rhs != 0:
                return None
            continue
        var = min(row, key=_var_order)
        lead = row[var]
        row = {v: c / lead for v, c in row.items()}
        rhs = rhs / lead
        # keep earlier pivot rows free of the new pivot variable
        for p_var, (p_row, p_rhs) in list(pivots.items()):
            pivots[p_var] = _reduce(p_row, p_rhs, {var: (row, rhs)})
        pivots[var] = (row, rhs)
    return pivots

def _candidate_values() -> Iterable[Fraction]:
    yield ZERO
    k = 1
    while True:
        yield Fraction(k)
        yield Fraction(-k)
        k += 1

def _choose_free_values(
    free: list[int],
    disequations: list[tuple[Row, Fraction]],
) -> dict[int, Fraction]:
    """Assign free variables in order so that no reduced disequation becomes an equality.

        Each disequation is settled at its last free variable, where it excludes
        exactly one value; Q is infinite, so a value is always left over.
        """

    order = {v: k for k, v in enumerate(free)}
    settled_at: dict[int, list[tuple[Row, Fraction]]] = {}
    for row, rhs in disequations:
        last = max(row, key=lambda v: order[v])
        settled_at.setdefault(last, []).append((row, rhs))

    values: dict[int, Fraction] = {}
    for var in free:
        excluded: set[Fraction] = set()
        for row, rhs in settled_at.get(var, []):
            rest = sum((c * values[v] for v, c in row.items() if v != var), ZERO)
            excluded.add((rhs - rest) / row[var])
        for candidate in _candidate_values():
            if candidate not in excluded:
                values[var] = candidate
                break
    return values

def _witness_point(domain: frozenset[int], values: dict[int, Fraction]) -> Point:
    entries = {i: values.get(i, ZERO) for i in domain}
    z = values.get(_Z, ZERO)
    if z != 0:
        fresh = max(domain) + 1 if domain else 0
        entries[fresh] = z
    return Point.of(entries)

def cell_sat(cell: Cell) -> SatResult:
    """Decide satisfiability of a cell over V and return a witness point."""

    return _cell_sat_cached(cell)

@lru_cache(maxsize=200_000)
def _cell_sat_cached(cell: Cell) -> SatResult:
    if cell.is_bottom:
        return SatResult(False)
    if cell.is_top:
        return SatResult(True, Point())

    domain = cell.support
    equations = [_row_of(atom, domain) for atom in cell.equations]
    pivots = _echelon(equations)
    if pivots is None:
        return SatResult(False)

    reduced: list[tuple[Row, Fraction]] = []
    for atom in cell.disequations:
        row, rhs = _reduce(*_row_of(atom, domain), pivots)
        if not row:
            if rhs == 0:
                # the left side is forced to the excluded value
                return SatResult(False)
            continue
        reduced.append((row, rhs))

    variables: set[int] = set()
    for row, _ in equations:
        variables |= set(row)
    for row, _ in reduced:
        variables |= set(row)
    free = sorted((v for v in variables if v not in pivots), key=_var_order)

    values = _choose_free_values(free, reduced)
    for var, (row, rhs) in pivots.items():
        values[var] = rhs - sum((c * values.get(v, ZERO) for v, c in row.items() if v != var), ZERO)

    witness = _witness_point(domain, values)
    if not cell.holds(witness):
        logger.error("Witness %s fails re-evaluation on cell %s", witness.render(), cell.text)
        raise EngineInvariantError(f"witness {witness.render()} does not satisfy {cell.text}")
    return SatResult(True, witness)


def _combine(atom: Atom, pivot: Atom, factor: Fraction) -> Atom:
    return canonicalize_atom(
        Atom(atom.coeffs.minus(pivot.coeffs, factor), atom.rhs - factor * pivot.rhs)
    )

def _eliminate(
    equations: list[Atom],
    disequations: list[Atom],
    coefficient: Callable[[Atom], Fraction],
) -> tuple[list[Atom], list[Atom]]:
    candidates = [k for k, atom in enumerate(equations) if coefficient(atom) != 0]
    if candidates:
        k_pivot = min(candidates, key=lambda k: equations[k].text)
        pivot = equations[k_pivot]
        p = coefficient(pivot)
        logger.debug("Eliminating with pivot %s", pivot.text)

        def substitute(atom: Atom) -> Atom:
            c = coefficient(atom)
            return atom if c == 0 else _combine(atom, pivot, c / p)

        return (
            [substitute(atom) for k, atom in enumerate(equations) if k != k_pivot],
            [substitute(atom) for atom in disequations],
        )

    # exact only because Q is infinite: each disequation excludes at most one
    # value of the variable and finitely many exclusions never exhaust Q
    return equations, [atom for atom in disequations if coefficient(atom) == 0]

def _rebuild(equations: list[Atom], disequations: list[Atom]) -> Cell:
    return Cell.build(
        [Literal(atom, True) for atom in equations] + [Literal(atom, False) for atom in disequations]
    )

def eliminate_finite(cell: Cell, gamma: Iterable[int]) -> Cell:
    """Existential projection of a cell along the coordinates in ``gamma``."""

    if cell.is_bottom:
        return cell
    equations, disequations = cell.equations, cell.disequations
    for v in sorted(set(gamma)):
        equations, disequations = _eliminate(
            equations, disequations, lambda atom, v=v: atom.coeffs.at(v)
        )
    return _rebuild(equations, disequations)

def eliminate_tail(cell: Cell) -> Cell:
    """Eliminate the tail variable: quantify every coordinate outside the explicit domain.

        Resulting atoms have tail 0. Coordinates outside the explicit domain are
        infinitely many, so any value of the tail sum is reachable.
        """

    if cell.is_bottom:
        return cell
    equations, disequations = _eliminate(
        cell.equations, cell.disequations, lambda atom: atom.coeffs.tail
    )
    return _rebuild(equations, disequations)


def is_empty(x: Element) -> bool:
    return not any(cell_sat(cell).satisfiable for cell in x.cells)

def witness(x: Element) -> Point | None:
    for cell in x.cells:
        result = cell_sat(cell)
        if result.satisfiable:
            return result.witness
    return None

def difference(x: Element, y: Element) -> Element:
    """x * -y, negating y's cells incrementally and pruning unsatisfiable fragments."""

    result: list[Cell] = []
    for x_cell in x.cells:
        fragments = [x_cell] if cell_sat(x_cell).satisfiable else []
        for y_cell in y.cells:
            if not fragments:
                break
            next_fragments: dict[Cell, None] = {}
            for fragment in fragments:
                if not cell_sat(fragment.meet(y_cell)).satisfiable:
                    # fragment already lies outside y_cell
                    next_fragments[fragment] = None
                    continue
                for lit in y_cell.literals:
                    candidate = fragment.meet(Cell.build([lit.negated()]))
                    if cell_sat(candidate).satisfiable:
                        next_fragments[candidate] = None
            fragments = list(next_fragments)
        result.extend(fragments)
    return Element.of(result)

def compare(x: Element, y: Element) -> EqualityVerdict:
    if x == y:
        return EqualityVerdict(True)
    left = witness(difference(x, y))
    if left is not None:
        return EqualityVerdict(False, left, "left")
    right = witness(difference(y, x))
    if right is not None:
        return EqualityVerdict(False, right, "right")
    return EqualityVerdict(True)

def equal(x: Element, y: Element) -> bool:
    return compare(x, y).equal

def leq(x: Element, y: Element) -> bool:
    return is_empty(difference(x, y))
