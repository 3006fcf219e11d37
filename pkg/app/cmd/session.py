from __future__ import annotations
import logging
from dataclasses import dataclass, field
from pathlib import Path
from collections.abc import Callable, Sequence
from app.application.algebra_ops import dim_set
from app.application.generator_search import (
    GBounds,
    SearchBounds,
    SearchRecord,
    SearchStatus,
    g_membership,
    generator_search,
)
from app.application.constructions import (
    classify,
    decompose_over_pof,
    default_po_pool,
    in_poz,
    is_pof,
    s_closure_terms,
    transposition_stable,
)
from app.application.ports.element_codec_port import ElementCodecPort
from app.application.ports.report_exporter_port import ReportExporterPort
from app.application.ports.suite_catalog_port import SuiteCatalogPort
from app.application.qe_engine import compare, witness
from app.application.single_generator import (
    Dilation,
    FusionCertificate,
    RecoveryBranch,
    certify_fusion,
    fuse_all,
    recover,
)
from app.application.suites import SuiteDependencies, SuiteResult, run_suite
from app.application.term_eval import evaluate
from app.cmd.command_args import int_arg, split_top_level, take_options, tokenize
from app.cmd.ports import ExpressionParserPort
from app.cmd.report_format import Record, Report
from app.cmd.spinner import Spinner
from app.config import SuiteSettings, WorkbenchConfig
from app.domain.elements import Element
from app.domain.terms import Term, generators, render
from app.shared.errors import CommandError, ReportGenerationError, UnboundIdentifierError


logger = logging.getLogger(__name__)

@dataclass
class SessionDeps:
    parser: ExpressionParserPort
    codec: ElementCodecPort
    catalog: SuiteCatalogPort
    suite_deps: SuiteDependencies
    exporter: ReportExporterPort

@dataclass
class Session:
    config: WorkbenchConfig
    deps: SessionDeps
    bindings: dict[str, Element] = field(default_factory=dict)

    def term(self, text: str) -> Term:
        return self.deps.parser.parse(text)

    def eval(self, text: str) -> Element:
        return evaluate(self.term(text), self.bindings)

    def bind(self, name: str, x: Element) -> None:
        self.bindings = {**self.bindings, name: x}


def _bool(value: bool) -> str:
    return "true" if value else "false"

def _expr_arg(args: Sequence[str], usage: str) -> str:
    if not args:
        raise CommandError(f"usage: {usage}")
    return " ".join(args)


def _cmd_let(session: Session, args: list[str]) -> Report:
    text = " ".join(args)
    name, sep, expr = text.partition("=")
    name, expr = name.strip(), expr.strip()
    if not sep or not name.isidentifier() or not expr:
        raise CommandError("usage: let NAME = EXPR | let NAME = fuse(E1, E2, K, L)")

    record: Record = (("name", name),)
    if expr.startswith("fuse(") and expr.endswith(")"):
        certificate = _fuse_binding(session, expr[len("fuse("):-1])
        x = certificate.b
        record += (("element", x.text), ("recovered", _bool(certificate.ok)))
    else:
        x = session.eval(expr)
        record += (("element", x.text),)
    session.bind(name, x)
    logger.debug("Bound %s to %s", name, x.text)
    return Report("let", (record,))

def _fuse_binding(session: Session, inner: str) -> FusionCertificate:
    parts = split_top_level(inner)
    if len(parts) != 4:
        raise CommandError("fuse(E1, E2, K, L) takes four arguments")
    x, y = session.eval(parts[0]), session.eval(parts[1])
    k = int_arg(parts[2], "K")
    l = int_arg(parts[3], "L")
    dilation = Dilation(x.support | y.support, (k, l))
    return certify_fusion(dilation.lift(x), dilation.lift(y), k, l)

def _cmd_eq(session: Session, args: list[str]) -> Report:
    if len(args) != 2:
        raise CommandError('usage: eq "E1" "E2"')
    verdict = compare(session.eval(args[0]), session.eval(args[1]))
    record: Record = (("equal", _bool(verdict.equal)),)
    if verdict.witness is not None:
        record += (("witness", verdict.witness.render()), ("side", verdict.side or ""))
    return Report("eq", (record,))

def _cmd_empty(session: Session, args: list[str]) -> Report:
    x = session.eval(_expr_arg(args, "empty E"))
    point = witness(x)
    record: Record = (("empty", _bool(point is None)),)
    if point is not None:
        record += (("witness", point.render()),)
    return Report("empty", (record,))

def _cmd_member(session: Session, args: list[str]) -> Report:
    if len(args) < 2:
        raise CommandError('usage: member {i:v,...} "E"')
    point = session.deps.parser.parse_point(args[0])
    x = session.eval(" ".join(args[1:]))
    return Report("member", ((("member", _bool(x.holds(point))),),))

def _cmd_witness(session: Session, args: list[str]) -> Report:
    point = witness(session.eval(_expr_arg(args, "witness E")))
    return Report("witness", ((("witness", point.render() if point is not None else "none"),),))

def _cmd_dims(session: Session, args: list[str]) -> Report:
    dims = dim_set(session.eval(_expr_arg(args, "dims E")))
    return Report("dims", ((("dims", dims.render()), ("finite", _bool(dims.is_finite))),))

def _cmd_classify(session: Session, args: list[str]) -> Report:
    x = session.eval(_expr_arg(args, "classify E"))
    window = session.config.window_coords
    records: list[Record] = [
        (
            ("atom", atom.text),
            ("family", classify(atom).render()),
            ("transposition_stable", _bool(transposition_stable(atom, window))),
        )
        for atom in x.atoms()
    ]
    records.append((("pof", _bool(is_pof(x))),))
    return Report("classify", tuple(records))

def _cmd_poz(session: Session, args: list[str]) -> Report:
    verdict = in_poz(session.eval(_expr_arg(args, "poz E")))
    record: Record = (("in_poz", _bool(verdict.in_poz)),)
    if verdict.covering:
        record += (("covering", " ; ".join(atom.text for atom in verdict.covering)),)
    return Report("poz", (record,))

def _cmd_closure(session: Session, args: list[str]) -> Report:
    positional, options = take_options(args, {"window": True})
    if not positional:
        raise CommandError("usage: closure E1 [E2 ...] [--window N]")
    window = int_arg(options.get("window", str(session.config.window)), "window", minimum=1)
    named = [(session.term(text), session.eval(text)) for text in positional]
    members = s_closure_terms(named, range(window))
    records: list[Record] = [(("size", str(len(members))),)]
    records.extend((("term", render(term)), ("element", x.text)) for term, x in members)
    return Report("closure", tuple(records))

def _search_record(record: SearchRecord) -> Record:
    fields: Record = (
        ("status", record.status.value),
        ("target", record.target),
        ("witness", render(record.witness) if record.witness is not None else "-"),
        ("depth", str(record.depth) if record.depth is not None else "-"),
    )
    if record.status is SearchStatus.UNKNOWN:
        fields += (("exhaustive", _bool(record.exhaustive)),)
        if record.lower_bound:
            fields += (("note", "budget reached; unknown is a lower bound only"),)
    return fields

def _cmd_search(session: Session, args: list[str]) -> Report:
    positional, options = take_options(
        args, {"targets": True, "cands": True, "depth": True, "max-items": True}
    )
    if positional or "targets" not in options or "cands" not in options:
        raise CommandError("usage: search --targets E,E --cands E,E [--depth N] [--max-items N]")

    targets = [(text, session.eval(text)) for text in split_top_level(options["targets"])]
    candidates = [(session.term(text), session.eval(text)) for text in split_top_level(options["cands"])]
    bounds = SearchBounds(
        depth=int_arg(options.get("depth", str(session.config.depth)), "depth"),
        window=session.config.window,
        max_items=int_arg(options.get("max-items", str(session.config.max_items)), "max-items", minimum=1),
    )
    with Spinner("Searching"):
        report = generator_search(targets, candidates, bounds)

    records: list[Record] = [_search_record(r) for r in report.records]
    records.append((("explored", str(report.explored)), ("partial", _bool(report.partial))))
    return Report("search", tuple(records))

def _cmd_member_g(session: Session, args: list[str]) -> Report:
    positional, options = take_options(args, {"gens": True, "window": True})
    if len(positional) != 1 or "gens" not in options:
        raise CommandError('usage: member-g "TARGET" --gens E,E [--window N]')

    config = session.config
    window = int_arg(options.get("window", str(config.window)), "window", minimum=1)
    gens = [(session.term(text), session.eval(text)) for text in split_top_level(options["gens"])]
    bounds = GBounds(product_width=config.product_width, sum_width=config.sum_width, max_items=config.max_items)
    pool = default_po_pool(window, config.coeff_height)
    with Spinner("Enumerating G"):
        record = g_membership(session.eval(positional[0]), gens, pool, bounds, range(window), positional[0])

    return Report("member-g", (
        _search_record(record),
        (
            ("product_width", str(bounds.product_width)),
            ("sum_width", str(bounds.sum_width)),
            ("pool", str(len(pool))),
        ),
    ))

def _cmd_decompose(session: Session, args: list[str]) -> Report:
    if not args:
        raise CommandError('usage: decompose "G" [NAME ...]')
    g = session.term(args[0])
    names = args[1:] or sorted(generators(g))
    gens: dict[str, Element] = {}
    for name in names:
        if name not in session.bindings:
            raise UnboundIdentifierError(f"unbound identifier: {name}")
        gens[name] = session.bindings[name]

    result = decompose_over_pof(g, gens)
    labels = [*result.names, "rest"]
    records: list[Record] = [(("verified", _bool(result.verified)),)]
    for label, term, verdict in zip(labels, result.sigma_terms, result.classes):
        records.append((
            ("sigma", label),
            ("term", render(term)),
            ("class", "poz" if verdict.in_poz else "neg"),
        ))
    return Report("decompose", tuple(records), ok=result.verified)

def _cmd_fuse(session: Session, args: list[str]) -> Report:
    if len(args) < 2:
        raise CommandError('usage: fuse "E1" "E2" ["E3" ...]')
    gens = [session.eval(text) for text in args]
    result = fuse_all(gens, Dilation.allocate(gens, len(gens) - 1))
    records: list[Record] = [(("b", result.b.text), ("verified", _bool(result.verified)))]
    for k, (term, x) in enumerate(zip(result.recovery_terms, result.generators)):
        records.append((("index", str(k)), ("recover", render(term)), ("element", x.text)))
    return Report("fuse", tuple(records), ok=result.verified)

def _cmd_recover(session: Session, args: list[str]) -> Report:
    if len(args) not in (3, 4):
        raise CommandError('usage: recover "B" K L [first|second]')
    b = session.eval(args[0])
    k = int_arg(args[1], "K")
    l = int_arg(args[2], "L")
    try:
        branch = RecoveryBranch(args[3]) if len(args) == 4 else RecoveryBranch.FIRST
    except ValueError as exc:
        raise CommandError("branch must be first or second") from exc
    x = recover(b, k, l, branch)
    return Report("recover", ((("element", x.text),),))

def _suite_records(result: SuiteResult) -> list[Record]:
    records: list[Record] = []
    for check in result.checks:
        record: Record = (
            ("suite", check.suite),
            ("check", check.check),
            ("passed", str(check.passed)),
            ("total", str(check.total)),
            ("status", "ok" if check.ok else "FAIL"),
        )
        if check.finding:
            record += (("finding", check.finding),)
        records.append(record)
    records.append((
        ("suite", result.name),
        ("result", "pass" if result.passed else "fail"),
        ("samples", str(result.samples)),
        ("elapsed", f"{result.elapsed_seconds:.1f}s"),
    ))
    return records

def _cmd_suite(session: Session, args: list[str]) -> Report:
    positional, options = take_options(args, {"samples": True, "xlsx": True})
    if len(positional) != 1:
        raise CommandError("usage: suite NAME|all [--samples N] [--xlsx PATH]")
    samples = int_arg(options["samples"], "samples", minimum=1) if "samples" in options else None

    catalog = session.deps.catalog.load_catalog()
    name = positional[0]
    selected: list[SuiteSettings]
    if name == "all":
        selected = list(catalog.suites)
    else:
        found = catalog.get(name)
        if found is None:
            known = ", ".join(s.name for s in catalog.suites)
            raise CommandError(f"no suite named {name!r}; known: {known}")
        selected = [found]

    results: list[SuiteResult] = []
    for settings in selected:
        with Spinner(f"Running suite {settings.name}"):
            results.append(run_suite(settings, session.deps.suite_deps, samples))

    records = [record for result in results for record in _suite_records(result)]
    if "xlsx" in options:
        try:
            path = session.deps.exporter.export(results, Path(options["xlsx"]))
        except ReportGenerationError as exc:
            raise CommandError(f"could not write workbook: {exc}") from exc
        records.append((("workbook", str(path)),))
    return Report("suite", tuple(records), ok=all(result.passed for result in results))

def _cmd_serialize(session: Session, args: list[str]) -> Report:
    x = session.eval(_expr_arg(args, "serialize E"))
    return Report("serialize", ((("text", session.deps.codec.serialize(x)),),))

def _cmd_deserialize(session: Session, args: list[str]) -> Report:
    x = session.deps.codec.deserialize(_expr_arg(args, 'deserialize "TEXT"'))
    return Report("deserialize", ((("element", session.deps.codec.serialize(x)),),))

def _cmd_help(session: Session, args: list[str]) -> Report:
    return Report("help", tuple((("usage", usage),) for _, usage in COMMANDS.values()))


Handler = Callable[[Session, list[str]], Report]

COMMANDS: dict[str, tuple[Handler, str]] = {
    "let": (_cmd_let, "let NAME = EXPR | let NAME = fuse(E1, E2, K, L)"),
    "eq": (_cmd_eq, 'eq "E1" "E2"'),
    "empty": (_cmd_empty, "empty E"),
    "member": (_cmd_member, 'member {i:v,...} "E"'),
    "witness": (_cmd_witness, "witness E"),
    "dims": (_cmd_dims, "dims E"),
    "classify": (_cmd_classify, "classify E"),
    "poz": (_cmd_poz, "poz E"),
    "closure": (_cmd_closure, "closure E1 [E2 ...] [--window N]"),
    "search": (_cmd_search, "search --targets E,E --cands E,E [--depth N] [--max-items N]"),
    "member-g": (_cmd_member_g, 'member-g "TARGET" --gens E,E [--window N]'),
    "decompose": (_cmd_decompose, 'decompose "G" [NAME ...]'),
    "fuse": (_cmd_fuse, 'fuse "E1" "E2" ["E3" ...]'),
    "recover": (_cmd_recover, 'recover "B" K L [first|second]'),
    "suite": (_cmd_suite, "suite NAME|all [--samples N] [--xlsx PATH]"),
    "serialize": (_cmd_serialize, "serialize E"),
    "deserialize": (_cmd_deserialize, 'deserialize "TEXT"'),
    "help": (_cmd_help, "help"),
}

def run_command(line: str, session: Session) -> Report | None:
    """Run one command line; blank lines and ``#`` comments give None."""

    stripped = line.strip()
    if not stripped or stripped.startswith("#"):
        return None
    tokens = tokenize(stripped)
    try:
        handler, _ = COMMANDS[tokens[0]]
    except KeyError as exc:
        raise CommandError(f"unknown command {tokens[0]!r}; try help") from exc
    logger.debug("Running %s with %d argument(s)", tokens[0], len(tokens) - 1)
    return handler(session, tokens[1:])
