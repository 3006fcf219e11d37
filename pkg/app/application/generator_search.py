from __future__ import annotations
import logging
from dataclasses import dataclass
from enum import Enum
from functools import reduce
from itertools import combinations
from collections.abc import Iterator, Sequence
from app.application import algebra_ops
from app.application.element_store import ElementStore
from app.application.constructions import s_closure_terms
from app.application.qe_engine import cell_sat, is_empty, leq
from app.application.search_progress import frontier_batches
from app.domain.elements import EMPTY, Element, FULL
from app.domain.terms import (
    Cyl,
    Diag,
    Join,
    Meet,
    Not,
    ONE_TERM,
    Swap,
    Term,
    ZERO_TERM,
    render,
)
from app.domain.transformations import GammaSpec


logger = logging.getLogger(__name__)

Named = tuple[Term, Element]


class SearchStatus(Enum):
    FOUND = "found"
    UNKNOWN = "unknown-within-bounds"


@dataclass(frozen=True)
class GBounds:
    product_width: int = 3
    sum_width: int = 3
    max_items: int = 2000

@dataclass(frozen=True)
class SearchBounds:
    depth: int = 3
    window: int = 8
    max_items: int = 2000
    batch_size: int = 200


@dataclass(frozen=True)
class SearchRecord:
    status: SearchStatus
    target: str
    witness: Term | None = None
    depth: int | None = None
    # every candidate within bounds was examined
    exhaustive: bool = False

    @property
    def lower_bound(self) -> bool:
        """An UNKNOWN that a budget cut short; a longer run may still find the target."""

        return self.status is SearchStatus.UNKNOWN and not self.exhaustive

    def render(self) -> str:
        term = render(self.witness) if self.witness is not None else "-"
        depth = str(self.depth) if self.depth is not None else "-"
        line = f"{self.status.value} {self.target} {term} {depth}"
        return f"{line} lower-bound" if self.lower_bound else line

@dataclass(frozen=True)
class SearchReport:
    records: tuple[SearchRecord, ...]
    partial: bool
    explored: int

    @property
    def all_found(self) -> bool:
        return all(r.status is SearchStatus.FOUND for r in self.records)


def _signed(named: Sequence[Named]) -> list[Named]:
    out: list[Named] = []
    for term, x in named:
        out.append((term, x))
        out.append((Not(term), algebra_ops.complement(x)))
    return out

def _g_literals(xs: Sequence[Named], pool: Sequence[Named], window: Sequence[int]) -> list[Named]:
    return _signed(list(s_closure_terms(xs, window)) + list(pool))

def _products(literals: Sequence[Named], width: int) -> Iterator[Named]:
    """Satisfiable products of at most ``width`` distinct literals (the empty product first)."""

    yield ONE_TERM, FULL

    def extend(start: int, term: Term | None, value: Element, size: int) -> Iterator[Named]:
        if size == width:
            return
        for k in range(start, len(literals)):
            lit_term, lit = literals[k]
            product = lit if term is None else algebra_ops.meet(value, lit)
            if product.is_zero:
                continue
            product_term = lit_term if term is None else Meet(term, lit_term)
            yield product_term, product
            yield from extend(k + 1, product_term, product, size + 1)

    yield from extend(0, None, FULL, 0)

def enumerate_g(
    xs: Sequence[Named],
    pool: Sequence[Named],
    bounds: GBounds,
    window: Sequence[int],
) -> Iterator[Named]:
    """Stream G(X) members: sums of at most sum_width products of at most product_width
        literals from X^S and the Po pool, deduplicated. The empty sum comes first.
        """

    literals = _g_literals(xs, pool, window)
    store: ElementStore[Term] = ElementStore.probing(x for _, x in literals)

    products: list[Named] = []
    for term, x in [(ZERO_TERM, EMPTY), *_products(literals, bounds.product_width)]:
        inserted, _ = store.add(x, term)
        if inserted:
            if not x.is_zero:
                products.append((term, x))
            yield term, x

    for width in range(2, bounds.sum_width + 1):
        for combo in combinations(products, width):
            term = reduce(Join, (t for t, _ in combo))
            x = reduce(algebra_ops.join, (v for _, v in combo))
            inserted, _ = store.add(x, term)
            if inserted:
                yield term, x

def _below(x: Element, target: Element) -> bool:
    # cheap reject on a witness before the exact order test
    for cell in x.cells:
        point = cell_sat(cell).witness
        if point is not None and not target.holds(point):
            return False
    return leq(x, target)

def g_membership(
    target: Element,
    xs: Sequence[Named],
    pool: Sequence[Named],
    bounds: GBounds,
    window: Sequence[int],
    label: str | None = None,
) -> SearchRecord:
    """Decide whether target is a sum of at most sum_width products of width at most
        product_width.

        FOUND carries the covering sum. UNKNOWN is exact for these bounds only when
        the record is exhaustive; once the item budget stops the walk it is a lower
        bound and the record renders with a ``lower-bound`` marker.
        """

    label = label or target.text
    if target.is_zero:
        return SearchRecord(SearchStatus.FOUND, label, ZERO_TERM, 0, True)

    literals = _g_literals(xs, pool, window)
    below: list[Named] = []
    explored = 0
    exhaustive = True

    def walk(start: int, term: Term | None, value: Element, size: int) -> None:
        nonlocal explored, exhaustive
        for k in range(start, len(literals)):
            if explored >= bounds.max_items:
                exhaustive = False
                return
            lit_term, lit = literals[k]
            product = lit if term is None else algebra_ops.meet(value, lit)
            explored += 1
            if product.is_zero:
                continue
            product_term = lit_term if term is None else Meet(term, lit_term)
            if _below(product, target):
                # extensions only shrink a product that already fits
                below.append((product_term, product))
                continue
            if size + 1 < bounds.product_width:
                walk(k + 1, product_term, product, size + 1)

    if is_empty(algebra_ops.complement(target)):
        return SearchRecord(SearchStatus.FOUND, label, ONE_TERM, 0, True)
    walk(0, None, FULL, 0)

    union = reduce(algebra_ops.join, (x for _, x in below), EMPTY)
    if not leq(target, union):
        logger.info("Target %s not covered by %d products below it", label, len(below))
        return SearchRecord(SearchStatus.UNKNOWN, label, exhaustive=exhaustive)

    for width in range(1, bounds.sum_width + 1):
        for combo in combinations(below, width):
            explored += 1
            if explored >= bounds.max_items * 2:
                logger.warning("Item budget exhausted while covering %s", label)
                return SearchRecord(SearchStatus.UNKNOWN, label)
            cover = reduce(algebra_ops.join, (x for _, x in combo))
            if leq(target, cover):
                term = reduce(Join, (t for t, _ in combo))
                return SearchRecord(SearchStatus.FOUND, label, term, width, True)
    return SearchRecord(SearchStatus.UNKNOWN, label, exhaustive=exhaustive)


@dataclass(frozen=True)
class _Item:
    term: Term
    depth: int

def _search_coords(
    targets: Sequence[tuple[str, Element]],
    candidates: Sequence[Named],
    window: int,
) -> list[int]:
    support: set[int] = set()
    for _, x in targets:
        support |= x.support
    for _, x in candidates:
        support |= x.support
    return sorted(i for i in support if i < window)

def _unary(term: Term, x: Element, coords: Sequence[int]) -> Iterator[Named]:
    yield Not(term), algebra_ops.complement(x)
    for i in coords:
        gamma = GammaSpec.finite([i])
        yield Cyl(gamma, term), algebra_ops.cylindrify(x, gamma)
    for i, j in combinations(coords, 2):
        yield Swap(i, j, term), algebra_ops.swap(x, i, j)

def _recovery_shapes(
    candidates: Sequence[Named],
    coords: Sequence[int],
    depth: int,
) -> Iterator[tuple[int, Term, Element]]:
    """c_i(x * d_kl) and c_i(x * -d_kl) for every candidate x, with the level each shape needs.

        Products with a diagonal sit at level 1 and their cylindrifications over
        k or l at level 2; nothing beyond ``depth`` is produced.
        """

    if depth < 1:
        return
    for term, x in candidates:
        for k, l in combinations(coords, 2):
            d = algebra_ops.diagonal(k, l)
            for diag_term, diag in ((Diag(k, l), d), (Not(Diag(k, l)), algebra_ops.complement(d))):
                product_term, product = Meet(term, diag_term), algebra_ops.meet(x, diag)
                yield 1, product_term, product
                if depth < 2:
                    continue
                for i in (k, l):
                    gamma = GammaSpec.finite([i])
                    yield 2, Cyl(gamma, product_term), algebra_ops.cylindrify(product, gamma)

def generator_search(
    targets: Sequence[tuple[str, Element]],
    candidates: Sequence[Named],
    bounds: SearchBounds,
) -> SearchReport:
    """Breadth-first closure of the candidates under the algebra operations.

        Diagonals and their complements over the active coordinates are depth-0
        constants. Before the general sweep, every candidate is cut by each
        diagonal and its complement and the cut is cylindrified along the
        diagonal's coordinates; these items keep the level the sweep would give
        them. Cylindrifications and substitutions act on the coordinates below
        the window that occur in a target or candidate. Every found target
        carries the term that produced it.
        """

    coords = _search_coords(targets, candidates, bounds.window)
    constants: list[Named] = []
    for i, j in combinations(coords, 2):
        d = algebra_ops.diagonal(i, j)
        constants.append((Diag(i, j), d))
        constants.append((Not(Diag(i, j)), algebra_ops.complement(d)))

    store: ElementStore[_Item] = ElementStore.probing(x for _, x in [*targets, *candidates])
    frontier: list[Named] = []
    for term, x in [*candidates, *constants]:
        inserted, _ = store.add(x, _Item(term, 0))
        if inserted:
            frontier.append((term, x))

    partial = False
    levels: dict[int, list[Named]] = {}

    def offer(term: Term, x: Element, level: int) -> bool:
        nonlocal partial
        if len(store) >= bounds.max_items:
            partial = True
            return False
        inserted, _ = store.add(x, _Item(term, level))
        if inserted:
            levels.setdefault(level, []).append((term, x))
        return True

    def unresolved() -> list[tuple[str, Element]]:
        return [(label, t) for label, t in targets if t not in store]

    for level, term, x in _recovery_shapes(candidates, coords, bounds.depth):
        if not offer(term, x, level):
            break
    logger.info("Recovery shapes: %d stored", len(store))

    depth = 0
    while depth < bounds.depth and unresolved() and not partial:
        depth += 1
        known = [(entry.payload.term, entry.element) for entry in store]

        for _, _, batch in frontier_batches(frontier, bounds.batch_size, depth):
            for term, x in batch:
                for new_term, y in _unary(term, x, coords):
                    if not offer(new_term, y, depth):
                        break
                if partial:
                    break
                for other_term, other in known:
                    if not (offer(Meet(term, other_term), algebra_ops.meet(x, other), depth)
                            and offer(Join(term, other_term), algebra_ops.join(x, other), depth)):
                        break
                if partial:
                    break
            if partial:
                break

        frontier = levels.pop(depth, [])
        logger.info("Search depth %d: %d new items, %d stored", depth, len(frontier), len(store))

    if partial:
        logger.warning("Search stopped at %d items (depth %d); report is partial", len(store), depth)
    logger.debug("Search store: %d exact checks, %d collisions", store.exact_checks, store.collisions)

    records: list[SearchRecord] = []
    for label, target in targets:
        entry = store.find(target)
        if entry is None:
            records.append(SearchRecord(SearchStatus.UNKNOWN, label, exhaustive=not partial))
        else:
            records.append(SearchRecord(SearchStatus.FOUND, label, entry.payload.term, entry.payload.depth))
    return SearchReport(tuple(records), partial, len(store))
