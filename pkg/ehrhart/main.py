"""
Command line front end

    python -m ehrhart.main family stasheff:5 --basis magic
    python -m ehrhart.main check k_bipartite:3,7
    python -m ehrhart.main count cycle:4 --n 1
    python -m ehrhart.main table --kind bipartite
    python -m ehrhart.main scan --kind cycle --max-d 150 --threads 0
    python -m ehrhart.main selftest

Exit codes: 0 success, 1 failed self test or internal error,
2 parse error, 3 budget exceeded.
"""

import argparse
import json
import os
import sys
from typing import Any, Callable, Dict, List, Optional, Tuple

from .utils import ConfigLoader, ReportWriter, get_logger, set_package_level
from .core import (
    BudgetExceededError,
    EhrhartError,
    ParseError,
    Poly,
    ScanEngine,
    ScanKind,
    SelfTestRunner,
    family_ehrhart,
    format_rational,
    hstar_report,
    is_magic_positive,
    is_palindromic,
    parse_family,
    power_to_hstar,
    power_to_magic,
)
from .core.counting import (
    CountingOracle,
    CycleBoxOracle,
    GraphSpec,
    StasheffBoxOracle,
    choose_oracle,
    ehrhart_from_counts,
    graph_from_record,
    is_graph_shortcut,
    parse_graph,
)
from .core.exactpoly import render_poly
from .models import (
    CheckReport,
    CountReportModel,
    PolynomialReport,
    RootCountModel,
    ScanReport,
    ScanRowModel,
    SelftestCheckModel,
    SelftestReport,
    SequenceFlagsModel,
    TableCellModel,
    TableReport,
    WitnessModel,
)

logger = get_logger(__name__)

# shortcuts that never name a family, so `check` treats them as graphs
GRAPH_ONLY_SHORTCUTS = ('k_bipartite', 'complete_minus_edge', 'path')

BOX_ORACLES = {
    'stasheff_box': StasheffBoxOracle,
    'cycle_box': CycleBoxOracle,
}


class EhrhartApp:
    """Resolves sources, runs the engines and builds report models"""

    def __init__(self, config_loader: Optional[ConfigLoader] = None, overrides: Optional[Dict[str, Any]] = None):
        self.config_loader = config_loader or ConfigLoader()
        self.global_config = self.config_loader.load_global_config()
        overrides = overrides or {}

        counting = self.config_loader.counting_settings()
        budget = overrides.get('budget')
        self.node_budget = counting['node_budget'] if budget is None else budget
        self.box_budget = counting['box_budget'] if budget is None else budget
        self.oversample = counting.get('oversample', 1)

        scan = self.config_loader.scan_settings()
        threads = overrides.get('threads')
        self.threads = scan['threads'] if threads is None else threads
        self.scan_defaults = scan
        self.table_defaults = self.global_config['table']

        logger.info(
            f"EhrhartApp initialized | Node budget: {self.node_budget} | "
            f"Box budget: {self.box_budget} | Threads: {self.threads}"
        )

    # ---------- source resolution ----------

    def load_graph(self, path: str) -> GraphSpec:
        try:
            record = self.config_loader.load_graph_file(path)
        except FileNotFoundError as e:
            bundled = ", ".join(self.config_loader.list_graph_files()) or "none"
            raise ParseError(f"{e} (bundled graphs: {bundled})") from None
        except json.JSONDecodeError as e:
            raise ParseError(f"Graph file {path!r} is not valid JSON: {e}") from None
        return graph_from_record(record)

    def resolve_polynomial(self, source: Optional[str], graph_file: Optional[str]) -> Tuple[str, Poly, int, str]:
        """
        Turn a family string, graph shortcut or graph file into (label, E, d, method)

        Family strings win over graph shortcuts of the same name; the
        shortcuts k_bipartite, complete_minus_edge and path are always graphs.
        """
        if graph_file:
            return self._graph_polynomial(graph_file, self.load_graph(graph_file))
        if not source:
            raise ParseError("Nothing to check: give a family, a graph shortcut or --graph")

        name = source.strip().partition(":")[0].lower()
        if name not in GRAPH_ONLY_SHORTCUTS:
            try:
                family = parse_family(source)
            except ParseError:
                if not is_graph_shortcut(source):
                    raise
            else:
                return str(family), family_ehrhart(family), family.d, "closed_form"
        return self._graph_polynomial(source, parse_graph(source))

    def _graph_polynomial(self, label: str, graph: GraphSpec) -> Tuple[str, Poly, int, str]:
        oracle = choose_oracle(graph, self.node_budget)
        logger.info(f"{label}: counting with {oracle.name}")
        polynomial = ehrhart_from_counts(oracle, graph.dimension, self.oversample)
        return label, polynomial, graph.dimension, oracle.method.value

    def resolve_oracle(self, source: Optional[str], graph_file: Optional[str]) -> Tuple[str, CountingOracle]:
        if graph_file:
            return graph_file, choose_oracle(self.load_graph(graph_file), self.node_budget)
        if not source:
            raise ParseError("Nothing to count: give a graph shortcut, a box name or --graph")
        name, _, arg = source.strip().partition(":")
        box = BOX_ORACLES.get(name.strip().lower())
        if box is not None:
            try:
                d = int(arg)
            except ValueError:
                raise ParseError(f"{name} expects an integer dimension, got {arg!r}") from None
            if d < 1:
                raise ParseError(f"{name} needs d >= 1")
            return source, box(d, self.box_budget)
        return source, choose_oracle(parse_graph(source), self.node_budget)

    # ---------- commands ----------

    def cmd_family(self, name: str, basis: str) -> PolynomialReport:
        family = parse_family(name)
        polynomial = family_ehrhart(family)
        d = family.d
        if basis == "magic":
            coefficients = [format_rational(x) for x in power_to_magic(polynomial, d).a]
            rendered = None
        elif basis == "hstar":
            coefficients = [format_rational(x) for x in power_to_hstar(polynomial, d).h]
            rendered = None
        else:
            coefficients = polynomial.to_strings()
            rendered = render_poly(polynomial)
        return PolynomialReport(source=str(family), d=d, basis=basis, coefficients=coefficients, rendered=rendered)

    def cmd_check(self, source: Optional[str], graph_file: Optional[str]) -> CheckReport:
        label, polynomial, d, method = self.resolve_polynomial(source, graph_file)
        return build_check_report(label, polynomial, d, method)

    def cmd_count(self, source: Optional[str], graph_file: Optional[str], n: int) -> CountReportModel:
        if n < 0:
            raise ParseError(f"--n must be >= 0, got {n}")
        label, oracle = self.resolve_oracle(source, graph_file)
        report = oracle.report(n)
        return CountReportModel(source=label, n=n, count=str(report.count), method=report.method.value)

    def cmd_table(self, max_side: Optional[int], max_total: Optional[int]) -> TableReport:
        max_side = max_side or self.table_defaults['max_side']
        max_total = max_total or self.table_defaults['max_total']
        engine = ScanEngine({'threads': self.threads, 'oversample': self.oversample})
        summary = engine.run_table(max_side, max_total)
        cells = [TableCellModel(**cell.to_record()) for cell in summary.cells]
        return TableReport(kind="bipartite", max_side=max_side, max_total=max_total, cells=cells)

    def iter_scan(self, kind: str, max_d: int):
        engine = ScanEngine({'threads': self.threads, 'oversample': self.oversample})
        for row in engine.iter_scan(ScanKind(kind), max_d):
            yield ScanRowModel.from_record(row.to_record())

    def default_max_d(self, kind: str) -> int:
        return self.scan_defaults['cycle_max_d' if kind == 'cycle' else 'stasheff_max_d']

    def cmd_scan(self, kind: str, max_d: Optional[int], on_row: Optional[Callable[[ScanRowModel], None]] = None) -> ScanReport:
        """Scan d = 2..max_d, handing each row to on_row as soon as it is ready"""
        max_d = max_d if max_d is not None else self.default_max_d(kind)
        if max_d < 2:
            raise ParseError(f"--max-d must be >= 2, got {max_d}")
        rows: List[ScanRowModel] = []
        for row in self.iter_scan(kind, max_d):
            rows.append(row)
            if on_row is not None:
                on_row(row)
        return scan_report(kind, max_d, rows)

    def cmd_selftest(self) -> SelftestReport:
        runner = SelfTestRunner()
        outcomes = runner.run()
        checks = [SelftestCheckModel(**outcome.to_record()) for outcome in outcomes]
        return SelftestReport(checks=checks, all_passed=runner.all_passed)


def build_check_report(source: str, polynomial: Poly, d: int, method: str) -> CheckReport:
    magic = power_to_magic(polynomial, d)
    verdict = is_magic_positive(magic)
    hstar = hstar_report(polynomial, d)
    return CheckReport(
        source=source,
        d=d,
        method=method,
        power=[format_rational(polynomial.coefficient(i)) for i in range(d + 1)],
        magic=[format_rational(x) for x in magic.a],
        magic_positive=verdict.positive,
        witnesses=WitnessModel.from_pairs(verdict.to_record()['witnesses']),
        magic_palindromic=is_palindromic(magic),
        hstar=[format_rational(x) for x in hstar.vector.h],
        hstar_integral=hstar.integral,
        hstar_h0_is_one=hstar.h0_is_one,
        hstar_sum_matches=hstar.sum_matches,
        hstar_flags=SequenceFlagsModel(**hstar.flags.to_record()),
        hstar_roots=RootCountModel(**hstar.roots.to_record()),
        hstar_real_rooted=hstar.roots.real_rooted,
    )


def scan_report(kind: str, max_d: int, rows: List[ScanRowModel]) -> ScanReport:
    failures = [row.d for row in rows if row.error is not None or not (row.magic_positive and row.palindromic)]
    all_positive = bool(rows) and not failures
    verdict = "all magic positive" if all_positive else f"failures at d={failures}"
    return ScanReport(
        kind=kind,
        max_d=max_d,
        rows=rows,
        all_positive=all_positive,
        failures=failures,
        summary=f"{kind} scan d=2..{max_d}: {len(rows)} rows, {verdict}",
    )


def build_parser() -> argparse.ArgumentParser:
    # global flags are accepted before or after the command
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--format', choices=['text', 'json', 'csv'], default=argparse.SUPPRESS,
                        help='Output format (default from config: text)')
    common.add_argument('--threads', type=int, default=argparse.SUPPRESS,
                        help='Worker processes for scans and tables; 0 = all CPUs')
    common.add_argument('--budget', type=int, default=argparse.SUPPRESS,
                        help='Node-expansion cap for enumerating counters')
    common.add_argument('--output', default=argparse.SUPPRESS,
                        help='Also write the report to this file')
    common.add_argument('--log-level', default=argparse.SUPPRESS,
                        help='DEBUG, INFO, WARNING or ERROR (logs go to stderr)')

    parser = argparse.ArgumentParser(
        prog='ehrhart',
        description='Exact Ehrhart polynomials, magic positivity and h*-real-rootedness',
        parents=[common],
    )
    commands = parser.add_subparsers(dest='command', required=True)

    family = commands.add_parser('family', parents=[common], help='Print a family polynomial')
    family.add_argument('name', help='kind:d, e.g. stasheff:5, cycle:10, typeC:3')
    family.add_argument('--basis', choices=['power', 'magic', 'hstar'], default=None)

    check = commands.add_parser('check', parents=[common], help='Magic and h* verdicts')
    check.add_argument('source', nargs='?', help='Family string or graph shortcut')
    check.add_argument('--graph', help='Graph JSON file, or a name under config/graphs')

    count = commands.add_parser('count', parents=[common], help='Count lattice points of one dilate')
    count.add_argument('source', nargs='?', help='Graph shortcut, stasheff_box:d or cycle_box:d')
    count.add_argument('--graph', help='Graph JSON file, or a name under config/graphs')
    count.add_argument('--n', type=int, required=True, help='Dilation factor')

    table = commands.add_parser('table', parents=[common], help='K_{m,n} magic-positivity grid')
    table.add_argument('--kind', choices=['bipartite'], default='bipartite')
    table.add_argument('--max-m', type=int, default=None, help='Largest side size')
    table.add_argument('--max-total', type=int, default=None, help='Largest m + n')

    scan = commands.add_parser('scan', parents=[common], help='Magic positivity over d = 2..max-d')
    scan.add_argument('--kind', choices=[kind.value for kind in ScanKind], required=True)
    scan.add_argument('--max-d', type=int, default=None)

    commands.add_parser('selftest', parents=[common], help='Run the cross-oracle self test')
    return parser


def run(args: argparse.Namespace, app: EhrhartApp, writer: ReportWriter) -> int:
    if args.command == 'family':
        basis = args.basis or app.global_config['output'].get('basis', 'power')
        writer.write(app.cmd_family(args.name, basis))
        return 0

    if args.command == 'check':
        writer.write(app.cmd_check(args.source, args.graph))
        return 0

    if args.command == 'count':
        writer.write(app.cmd_count(args.source, args.graph, args.n))
        return 0

    if args.command == 'table':
        writer.write(app.cmd_table(args.max_m, args.max_total))
        return 0

    if args.command == 'scan':
        stream_rows = (lambda row: writer.write_line(row.text_line())) if writer.fmt == 'text' else None
        report = app.cmd_scan(args.kind, args.max_d, stream_rows)
        if writer.fmt == 'text':
            writer.write_line(report.summary)
            writer.save(report)
        else:
            writer.write(report)
        return 0

    if args.command == 'selftest':
        report = app.cmd_selftest()
        writer.write(report)
        return 0 if report.all_passed else 1

    raise ParseError(f"Unknown command {args.command!r}")


def main(argv: Optional[List[str]] = None) -> int:
    """Main entry point"""
    parser = build_parser()
    args = parser.parse_args(argv)

    try:
        app = EhrhartApp(overrides={
            'budget': getattr(args, 'budget', None),
            'threads': getattr(args, 'threads', None),
        })
        log_level = getattr(args, 'log_level', None)
        if not log_level and not os.getenv('LOG_LEVEL'):
            log_level = app.global_config['logging'].get('level')
        if log_level:
            set_package_level(log_level)

        fmt = getattr(args, 'format', None) or app.global_config['output'].get('format', 'text')
        writer = ReportWriter(fmt, file_path=getattr(args, 'output', None))
        return run(args, app, writer)
    except BudgetExceededError as e:
        print(f"error: {e} (budget {e.budget})", file=sys.stderr)
        return e.exit_code
    except EhrhartError as e:
        print(f"error: {e}", file=sys.stderr)
        return e.exit_code
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return ParseError.exit_code


if __name__ == '__main__':
    sys.exit(main())
