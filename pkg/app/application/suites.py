from __future__ import annotations
import hashlib
import logging
import time
from dataclasses import dataclass, field
from itertools import combinations, product
from fractions import Fraction
from collections.abc import Callable, Sequence
from app.application import algebra_ops
from app.application.algebra_ops import complement, cylindrify, diagonal, join, meet, swap
from app.application.generator_search import GBounds, SearchStatus, g_membership
from app.application.constructions import (
    AtomFamily,
    a,
    a_atom,
    classify,
    decompose_over_pof,
    default_po_pool,
    in_poz,
    simplicity_probe,
    transposition_stable,
)
from app.application.ports.element_codec_port import ElementCodecPort
from app.application.ports.independent_digest_port import IndependentDigestPort
from app.application.qe_engine import cell_sat, eliminate_finite, equal, is_empty, leq
from app.application.sampling import Sampler
from app.application.single_generator import (
    Dilation,
    certify_fusion,
    compress_check,
    fuse_all,
)
from app.application.term_eval import evaluate
from app.config import SuiteSettings
from app.domain.constraints import CoeffSeq, Point, mk_hyperplane
from app.domain.elements import Cell, EMPTY, Element, FULL, Literal
from app.domain.terms import Pof, Term, Var, render
from app.domain.transformations import GammaSpec, Transformation


logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CheckResult:
    suite: str
    check: str
    passed: int
    total: int
    # first failing sample, rendered
    finding: str = ""

    @property
    def ok(self) -> bool:
        return self.passed == self.total

@dataclass(frozen=True)
class SuiteResult:
    name: str
    checks: tuple[CheckResult, ...]
    samples: int
    elapsed_seconds: float

    @property
    def passed(self) -> bool:
        return all(check.ok for check in self.checks)

    @property
    def findings(self) -> list[CheckResult]:
        return [check for check in self.checks if not check.ok]

@dataclass(frozen=True)
class SuiteDependencies:
    codec: ElementCodecPort
    digest: IndependentDigestPort


@dataclass
class _Tally:
    suite: str
    counts: dict[str, list[int]] = field(default_factory=dict)
    findings: dict[str, str] = field(default_factory=dict)

    def record(self, check: str, ok: bool, finding: Callable[[], str] | str = "") -> None:
        passed_total = self.counts.setdefault(check, [0, 0])
        passed_total[1] += 1
        if ok:
            passed_total[0] += 1
            return
        if check not in self.findings:
            text = finding() if callable(finding) else finding
            self.findings[check] = text
            logger.warning("[%s] %s failed: %s", self.suite, check, text)

    def results(self) -> tuple[CheckResult, ...]:
        return tuple(
            CheckResult(self.suite, check, passed, total, self.findings.get(check, ""))
            for check, (passed, total) in self.counts.items()
        )


def _param(settings: SuiteSettings, key: str, default: int) -> int:
    return int(settings.params.get(key, default))


def _axioms(settings: SuiteSettings, samples: int, deps: SuiteDependencies) -> _Tally:
    tally = _Tally(settings.name)
    sampler = Sampler.seeded(settings.seed, _param(settings, "window", 8), _param(settings, "height", 8))
    max_literals = _param(settings, "max_literals", 2)

    for _ in range(samples):
        x = sampler.element(2, max_literals)
        y = sampler.element(2, max_literals)
        i, j = sampler.transposition()
        k = sampler.rng.choice([c for c in range(sampler.window) if c not in (i, j)])
        ci, cj = GammaSpec.finite([i]), GammaSpec.finite([j])

        def show(*parts: Element) -> str:
            return " ; ".join(p.text for p in parts) + f" (i={i}, j={j}, k={k})"

        tally.record("c_i c_j x = c_j c_i x",
                     equal(cylindrify(cylindrify(x, cj), ci), cylindrify(cylindrify(x, ci), cj)),
                     lambda: show(x))
        tally.record("x <= c_i x", leq(x, cylindrify(x, ci)), lambda: show(x))
        tally.record("c_i(x * c_i y) = c_i x * c_i y",
                     equal(cylindrify(meet(x, cylindrify(y, ci)), ci),
                           meet(cylindrify(x, ci), cylindrify(y, ci))),
                     lambda: show(x, y))

        sx = swap(x, i, j)
        tally.record("s_ij s_ij x = x", equal(swap(sx, i, j), x), lambda: show(x))
        tally.record("s_ij(x + y) = s_ij x + s_ij y",
                     equal(swap(join(x, y), i, j), join(sx, swap(y, i, j))), lambda: show(x, y))
        tally.record("s_ij(-x) = -s_ij x",
                     equal(swap(complement(x), i, j), complement(sx)), lambda: show(x))
        tally.record("substitute(x, identity) = x",
                     equal(algebra_ops.substitute(x, Transformation.identity()), x), lambda: show(x))

        dij = diagonal(i, j)
        tally.record("c_i d_ij = 1", equal(cylindrify(dij, ci), FULL), lambda: show(dij))
        tally.record("d_ii = 1", equal(diagonal(i, i), FULL), lambda: show(diagonal(i, i)))
        tally.record("d_ij * d_jk <= d_ik", leq(meet(dij, diagonal(j, k)), diagonal(i, k)), lambda: show(dij))
        tally.record("s_ij d_ij = d_ij", equal(swap(dij, i, j), dij), lambda: show(dij))

        gamma = sampler.gamma()
        t = Transformation.transposition(i, j)
        dual = algebra_ops.dual_cylindrify(x, gamma)
        tally.record("-c(-x) <= x", leq(dual, x), lambda: show(x) + f" gamma={gamma.render()}")
        tally.record("s_ij(-c_G -x) = -c_(ij G) -(s_ij x)",
                     equal(swap(dual, i, j), algebra_ops.dual_cylindrify(sx, gamma.mapped(t))),
                     lambda: show(x) + f" gamma={gamma.render()}")

        tau = sampler.transformation()
        p = sampler.point()
        tally.record("p in s_t x iff p o t in x",
                     algebra_ops.substitute(x, tau).holds(p) == x.holds(algebra_ops.substitute_point(p, tau)),
                     lambda: show(x) + f" t={tau.render()} p={p.render()}")
    return tally


def _grid_satisfiable(cell: Cell, grid: Sequence[Fraction]) -> Point | None:
    coords = sorted(cell.support)
    has_tail = any(lit.atom.coeffs.tail != 0 for lit in cell.literals)
    if has_tail:
        coords.append(coords[-1] + 1 if coords else 0)
    for values in product(grid, repeat=len(coords)):
        point = Point.of(dict(zip(coords, values)))
        if cell.holds(point):
            return point
    return None

def _qe_differential(settings: SuiteSettings, samples: int, deps: SuiteDependencies) -> _Tally:
    tally = _Tally(settings.name)
    sampler = Sampler.seeded(settings.seed, _param(settings, "window", 4), _param(settings, "height", 4))
    span = _param(settings, "grid_span", 6)
    denominator = _param(settings, "grid_denominator", 12)
    grid = [Fraction(n, denominator) for n in range(-span, span + 1)]

    for _ in range(samples):
        cell = sampler.cell(_param(settings, "max_literals", 3))
        result = cell_sat(cell)
        if result.satisfiable:
            w = result.witness
            tally.record("sat verdict ships a valid witness",
                         w is not None and cell.holds(w), lambda: cell.text)
        else:
            counter = _grid_satisfiable(cell, grid)
            tally.record("unsat verdict survives grid search", counter is None,
                         lambda: f"{cell.text} at {counter.render() if counter else '-'}")

        if not cell.support:
            continue
        v = sampler.rng.choice(sorted(cell.support))
        projected = eliminate_finite(cell, [v])
        p_result = cell_sat(projected)
        if p_result.satisfiable and p_result.witness is not None:
            # the projected witness must extend to a point of the cell
            fixed = [
                Literal(mk_hyperplane(p_result.witness.value(i), CoeffSeq.of({i: 1})), True)
                for i in sorted((cell.support | p_result.witness.support) - {v})
            ]
            tally.record("projection witness extends", cell_sat(cell.meet(Cell.build(fixed))).satisfiable,
                         lambda: f"{cell.text} eliminating {v}")
        else:
            tally.record("empty projection of empty cell", not result.satisfiable,
                         lambda: f"{cell.text} eliminating {v}")

        u = sampler.rng.choice(sorted(cell.support))
        both = Element.of([eliminate_finite(cell, [u, v])])
        stepwise = Element.of([eliminate_finite(eliminate_finite(cell, [v]), [u])])
        tally.record("elimination order independence", equal(both, stepwise),
                     lambda: f"{cell.text} eliminating {u},{v}")
    return tally


def _tail_semantics(settings: SuiteSettings, samples: int, deps: SuiteDependencies) -> _Tally:
    tally = _Tally(settings.name)
    max_n = _param(settings, "max_n", 10)
    max_i = _param(settings, "max_coord", 5)

    tally.record("a_0 * a_1 = 0", equal(meet(a(0), a(1)), EMPTY))
    tally.record("cell {a_0, a_1} unsatisfiable",
                 not cell_sat(Cell.build([Literal(a_atom(0)), Literal(a_atom(1))])).satisfiable)
    for n in range(max_n + 1):
        for i in range(max_i + 1):
            tally.record("c_i a_n = 1", equal(cylindrify(a(n), GammaSpec.finite([i])), FULL), f"i={i}, n={n}")
        tally.record("cofinite c of a_n = 1", equal(cylindrify(a(n), GammaSpec.cofinite([])), FULL), f"n={n}")
        tally.record("C{0}(a_n) = 1", equal(cylindrify(a(n), GammaSpec.cofinite([0])), FULL), f"n={n}")

    result = cell_sat(Cell.build([Literal(a_atom(5)), Literal(mk_hyperplane(2, CoeffSeq.of({0: 1})))]))
    tally.record("tail variable realized on a fresh coordinate",
                 result.witness is not None and result.witness.value(1) == 3,
                 lambda: result.witness.render() if result.witness else "-")
    return tally


def _pof_antichain(settings: SuiteSettings, samples: int, deps: SuiteDependencies) -> _Tally:
    tally = _Tally(settings.name)
    max_n = _param(settings, "max_n", 50)
    gens = [a(n) for n in range(max_n + 1)]
    for n, x in enumerate(gens):
        tally.record("a_n != 0", not is_empty(x), f"n={n}")
    for n, m in combinations(range(max_n + 1), 2):
        tally.record("a_n * a_m = 0", is_empty(meet(gens[n], gens[m])), f"n={n}, m={m}")
    return tally


def _po_leaves(sampler: Sampler, pool: Sequence[tuple[Term, Element]], count: int) -> list[Term]:
    return [term for term, _ in sampler.rng.sample(list(pool), count)]

def _neg_poz(settings: SuiteSettings, samples: int, deps: SuiteDependencies) -> _Tally:
    tally = _Tally(settings.name)
    sampler = Sampler.seeded(settings.seed)
    pool = default_po_pool(_param(settings, "pool_window", 3), _param(settings, "pool_height", 2))
    depth = _param(settings, "depth", 3)

    for _ in range(samples):
        leaves = _po_leaves(sampler, pool, sampler.rng.randint(1, _param(settings, "max_atoms", 4)))
        term = sampler.boolean_term(leaves, depth)
        x = evaluate(term)
        small, co_small = in_poz(x).in_poz, in_poz(complement(x)).in_poz
        tally.record("exactly one of x, -x in Poz", small != co_small, lambda: x.text)

        y = meet(x, evaluate(sampler.boolean_term(leaves, depth)))
        if small:
            tally.record("Poz is downward closed", in_poz(y).in_poz, lambda: f"{y.text} <= {x.text}")
    return tally


def _pof_decomposition(settings: SuiteSettings, samples: int, deps: SuiteDependencies) -> _Tally:
    tally = _Tally(settings.name)
    sampler = Sampler.seeded(settings.seed)
    pool = default_po_pool(_param(settings, "pool_window", 3), _param(settings, "pool_height", 2))
    max_y = _param(settings, "max_generators", 5)
    depth = _param(settings, "depth", 4)

    for _ in range(samples):
        ns = sorted(sampler.rng.sample(range(max_y), sampler.rng.randint(1, 3)))
        generators = {f"y{k}": a(n) for k, n in enumerate(ns)}
        leaves: list[Term] = [Var(name) for name in generators]
        leaves += _po_leaves(sampler, pool, sampler.rng.randint(1, 3))
        g = sampler.boolean_term(leaves, depth)
        result = decompose_over_pof(g, generators)
        tally.record("sigma identity verified", result.verified, lambda: render(g))

        # a nonzero sum of Pof atoms times a G(0) element
        pof_sum = evaluate(Pof(Fraction(ns[0])))
        for n in ns[1:]:
            pof_sum = join(pof_sum, a(n))
        sigma = result.sigma[-1]
        product_ = algebra_ops.normalize(meet(pof_sum, sigma))
        has_po_positive = [
            any(lit.positive and AtomFamily.PO in classify(lit.atom) for lit in cell.literals)
            for cell in product_.cells
        ]
        if in_poz(sigma).in_poz:
            tally.record("g * sigma small when sigma in Poz", all(has_po_positive), lambda: product_.text)
        else:
            tally.record("g * sigma large when sigma in Neg",
                         not product_.is_zero and not all(has_po_positive), lambda: product_.text)
    return tally


def _single_generator(settings: SuiteSettings, samples: int, deps: SuiteDependencies) -> _Tally:
    tally = _Tally(settings.name)
    base = _param(settings, "window", 6)
    sampler = Sampler.seeded(settings.seed, base, _param(settings, "height", 8))
    k, l = base, base + 1
    dilation = Dilation(frozenset(range(base)), (k, l))
    window = list(range(base))

    for _ in range(samples):
        x = dilation.lift(sampler.element(2, 2))
        y = dilation.lift(sampler.element(2, 2))
        certificate = certify_fusion(x, y, k, l)
        b, first, second = certificate.b, certificate.x_back, certificate.y_back
        tally.record("c_k(b * d_kl) = x", equal(first, x), lambda: f"{x.text} ; {y.text}")
        tally.record("c_k(b * -d_kl) = y", equal(second, y), lambda: f"{x.text} ; {y.text}")
        tally.record("support hygiene", b.support <= (x.support | y.support | {k, l}), lambda: b.text)

        small = sampler.coords(0, 2)
        large = sorted(set(small) | set(sampler.coords(1, 3)))
        if compress_check(x, small):
            tally.record("compression monotone", compress_check(x, large), lambda: f"{x.text} {small} {large}")
        if compress_check(x, window) and compress_check(y, window):
            tally.record("recovery stays compressed",
                         compress_check(first, window) and compress_check(second, window), lambda: b.text)

        gamma = sampler.gamma(sampler.rng.random() < 0.5)
        tally.record("x <= c_G x", leq(x, cylindrify(x, gamma)), lambda: f"{x.text} {gamma.render()}")

    for _ in range(max(1, samples // _param(settings, "triple_every", 20))):
        triple = [sampler.element(1, 2) for _ in range(3)]
        fused = fuse_all(triple, Dilation.allocate(triple, 2))
        tally.record("fuse_all recovers every generator", fused.verified,
                     lambda: " ; ".join(t.text for t in triple))
    return tally


def _bounded_search(settings: SuiteSettings, samples: int, deps: SuiteDependencies) -> _Tally:
    tally = _Tally(settings.name)
    pool_window = _param(settings, "pool_window", 3)
    pool = default_po_pool(pool_window, _param(settings, "pool_height", 2))
    bounds = GBounds(
        product_width=_param(settings, "product_width", 3),
        sum_width=_param(settings, "sum_width", 3),
        max_items=_param(settings, "max_items", 20000),
    )
    xs = [(Pof(Fraction(0)), a(0))]
    window = list(range(pool_window))

    sanity = g_membership(a(0), xs, pool, bounds, window, "a(0)")
    tally.record("a_0 in G({a_0})", sanity.status is SearchStatus.FOUND, sanity.render())
    for n in range(1, _param(settings, "max_n", 20) + 1):
        record = g_membership(a(n), xs, pool, bounds, window, f"a({n})")
        tally.record("a_n absent from G({a_0}) within bounds", record.status is SearchStatus.UNKNOWN, record.render())
        if record.status is SearchStatus.UNKNOWN and not record.exhaustive:
            logger.warning("Bounds not exhausted for a(%d); verdict is unknown within bounds", n)

    for term, x in pool:
        tally.record("Po stable under transpositions", transposition_stable(x.atoms()[0], window), render(term))
    for n in range(3):
        tally.record("Pof stable under transpositions", transposition_stable(a_atom(n), window), f"n={n}")
    return tally


def _simplicity(settings: SuiteSettings, samples: int, deps: SuiteDependencies) -> _Tally:
    tally = _Tally(settings.name)
    sampler = Sampler.seeded(settings.seed, _param(settings, "window", 6), _param(settings, "height", 8))
    for _ in range(samples):
        x = sampler.nonzero_element()
        probe = simplicity_probe(x)
        tally.record("nonzero x cylindrifies to 1", probe.ok,
                     lambda: f"{x.text} over {sorted(probe.gamma)}")
    return tally


def serialization_digest(codec: ElementCodecPort, seed: int, samples: int, window: int, height: int) -> str:
    sampler = Sampler.seeded(seed, window, height)
    h = hashlib.sha256()
    for _ in range(samples):
        h.update(codec.serialize(sampler.element()).encode("utf-8"))
        h.update(b"\n")
    return h.hexdigest()

def _serialization(settings: SuiteSettings, samples: int, deps: SuiteDependencies) -> _Tally:
    tally = _Tally(settings.name)
    window, height = _param(settings, "window", 8), _param(settings, "height", 8)

    local = serialization_digest(deps.codec, settings.seed, samples, window, height)
    remote = deps.digest.digest(settings.seed, samples, window, height)
    tally.record("byte-identical across processes", local == remote, f"{local} != {remote}")

    sampler = Sampler.seeded(settings.seed, window, height)
    for _ in range(min(samples, _param(settings, "round_trips", 100))):
        x = sampler.element()
        text = deps.codec.serialize(x)
        tally.record("deserialize(serialize(x)) = x", deps.codec.deserialize(text) == x, text)
    return tally


SUITES: dict[str, Callable[[SuiteSettings, int, SuiteDependencies], _Tally]] = {
    "axioms": _axioms,
    "qe-differential": _qe_differential,
    "tail-semantics": _tail_semantics,
    "pof-antichain": _pof_antichain,
    "neg-poz": _neg_poz,
    "pof-decomposition": _pof_decomposition,
    "single-generator": _single_generator,
    "bounded-search": _bounded_search,
    "simplicity": _simplicity,
    "serialization": _serialization,
}

def run_suite(settings: SuiteSettings, deps: SuiteDependencies, samples: int | None = None) -> SuiteResult:
    try:
        body = SUITES[settings.name]
    except KeyError as exc:
        raise KeyError(f"no acceptance suite named {settings.name!r}") from exc

    n = samples if samples is not None else settings.samples
    logger.info("Suite %s: starting with %d samples (seed %d)", settings.name, n, settings.seed)
    started = time.perf_counter()
    tally = body(settings, n, deps)
    elapsed = time.perf_counter() - started

    result = SuiteResult(settings.name, tally.results(), n, elapsed)
    logger.info(
        "Suite %s: %s, %d checks, %.1f s",
        settings.name,
        "passed" if result.passed else "FAILED",
        len(result.checks),
        elapsed,
    )
    if elapsed > settings.budget_seconds:
        logger.warning("Suite %s exceeded its %.0f s budget", settings.name, settings.budget_seconds)
    return result
