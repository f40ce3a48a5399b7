"""Command-line entry point wiring every subcommand with file I/O and
structured JSON output.

Exit codes: 0 on success, 1 on domain errors (infeasible program, bound
exceeded, budget exceeded), 2 on usage or parse errors.  All JSON output has
sorted keys and integers that may exceed 64 bits are emitted as decimal
strings, so repeated runs are byte-identical and consumers cannot overflow.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from . import bases as bases_mod
from . import graphs as graphs_mod
from . import oracle as oracle_mod
from .core import (
    MonomialOrder,
    SparseIntMatrix,
    ToricError,
    matrix_from_text,
    matrix_to_text,
)
from .lattice import build_lattice, build_truncated_lattice, graver_infinity_bound
from .normalform import normal_form_bounded, polynomial_normal_form, reduce_by_basis
from .reductions import (
    IntegerProgram,
    ip_to_normalform,
    normalform_to_ip,
    solve_ip,
    solve_ip_via_normal_form,
    vertex_cover_ip,
)

_INT64_MAX = 2**63 - 1


def _sanitize(value):
    if isinstance(value, bool):
        return value
    if isinstance(value, int):
        return str(value) if abs(value) > _INT64_MAX else value
    if isinstance(value, (list, tuple)):
        return [_sanitize(v) for v in value]
    if isinstance(value, dict):
        return {k: _sanitize(v) for k, v in value.items()}
    return value


def _emit(payload: dict) -> None:
    sys.stdout.write(json.dumps(_sanitize(payload), sort_keys=True) + "\n")


def _read_matrix(path: str, drop_zero_rows: bool) -> SparseIntMatrix:
    return matrix_from_text(Path(path).read_text(), drop_zero_rows=drop_zero_rows)


def _parse_vector(text: str) -> tuple[int, ...]:
    text = text.strip()
    if not text:
        return ()
    return tuple(int(part) for part in text.split(","))


def _parse_order(spec: str, n: int) -> MonomialOrder:
    if spec == "lex":
        return MonomialOrder.lex(n)
    if spec == "grlex":
        return MonomialOrder.grlex(n)
    if spec.startswith("weights:"):
        weights = _parse_vector(spec[len("weights:") :])
        if len(weights) != n:
            raise ValueError(f"order needs {n} weights, got {len(weights)}")
        return MonomialOrder(weights)
    raise ValueError(f"unknown order {spec!r}; use lex, grlex or weights:<csv>")


def _resolve_cli_ordering(spec: str, A: SparseIntMatrix) -> tuple[int, ...] | None:
    if spec == "auto":
        graph = graphs_mod.column_graph(A)
        candidates = [
            graphs_mod.min_fill_ordering(graph),
            graphs_mod.min_degree_ordering(graph),
        ]
        return min(candidates, key=lambda o: graphs_mod.treewidth_estimate(graph, o))
    if spec == "min-fill":
        return graphs_mod.min_fill_ordering(graphs_mod.column_graph(A))
    if spec == "min-degree":
        return graphs_mod.min_degree_ordering(graphs_mod.column_graph(A))
    if spec.startswith("file:"):
        text = Path(spec[len("file:") :]).read_text()
        return tuple(int(tok) for tok in text.split())
    raise ValueError(f"unknown ordering {spec!r}")


def _build_from_args(args, A: SparseIntMatrix):
    ordering = _resolve_cli_ordering(args.ordering, A)
    if getattr(args, "degree", None) is not None:
        if getattr(args, "bound", None) is not None:
            raise ValueError("choose exactly one of --bound and --degree")
        return build_truncated_lattice(A, args.degree, ordering)
    bound = getattr(args, "bound", None)
    if bound is None:
        bound = graver_infinity_bound(A)
    return build_lattice(A, bound, ordering)


# ---------------------------------------------------------------------------
# subcommand handlers


def _cmd_graph_stats(args) -> int:
    A = _read_matrix(args.matrix, args.drop_zero_rows)
    payload: dict = {"columns": A.num_cols, "rows": A.num_rows}
    chosen = None
    for name, graph in (
        ("column_graph", graphs_mod.column_graph(A)),
        ("row_graph", graphs_mod.row_graph(A)),
    ):
        stats: dict = {"vertices": graph.num_vertices, "edges": graph.num_edges()}
        strategies = {}
        for strategy in (graphs_mod.MIN_DEGREE, graphs_mod.MIN_FILL):
            ordering = graphs_mod.heuristic_ordering(graph, strategy)
            width = graphs_mod.treewidth_estimate(graph, ordering)
            depth = graphs_mod.treedepth_estimate(graph, ordering)
            strategies[strategy] = {"treewidth": width, "treedepth": depth}
            if name == "column_graph" and (chosen is None or width < chosen[1]):
                chosen = (strategy, width)
        stats["strategies"] = strategies
        payload[name] = stats
    assert chosen is not None
    payload["lattice_strategy"] = chosen[0]
    _emit(payload)
    return 0


def _cmd_lattice(args) -> int:
    A = _read_matrix(args.matrix, args.drop_zero_rows)
    lattice = _build_from_args(args, A)
    payload = {
        "kind": lattice.kind,
        "bound": lattice.bound,
        "clique_number": lattice.realized_clique_number,
        "stored_rows": lattice.total_rows(),
    }
    if args.action == "count":
        payload["count"] = lattice.count()
    elif args.action == "list":
        payload["elements"] = [list(v) for v in lattice.iterate()]
    else:  # contains
        if args.vector is None:
            raise ValueError("contains needs a vector argument")
        payload["vector"] = list(_parse_vector(args.vector))
        payload["contains"] = lattice.contains(_parse_vector(args.vector))
    _emit(payload)
    return 0


def _cmd_normal_form(args) -> int:
    A = _read_matrix(args.matrix, args.drop_zero_rows)
    order = _parse_order(args.order, A.num_cols)
    monomial = _parse_vector(args.monomial)
    payload: dict = {"input": list(monomial), "via": args.via}
    lattice = None
    if args.via == "ip":
        program = normalform_to_ip(A, order, monomial)
        solution = solve_ip(program)
        payload["normal_form"] = list(solution)
        payload["standard"] = solution == monomial
    else:
        lattice = _build_from_args(args, A)
        if args.via == "gb":
            report = bases_mod.reduced_groebner_basis(A, lattice, order)
            nf = reduce_by_basis(report.elements, order, monomial)
            payload["normal_form"] = list(nf)
            payload["standard"] = nf == monomial
        else:
            result = normal_form_bounded(A, lattice, order, monomial)
            payload["normal_form"] = list(result.normal_exponent)
            payload["standard"] = result.was_standard
    if args.polynomial:
        terms = [(int(c), tuple(e)) for c, e in json.loads(args.polynomial)]
        if lattice is None:
            lattice = _build_from_args(args, A)
        reduced = polynomial_normal_form(A, lattice, order, terms)
        payload["polynomial"] = [[c, list(e)] for c, e in reduced]
    _emit(payload)
    return 0


def _cmd_groebner(args) -> int:
    A = _read_matrix(args.matrix, args.drop_zero_rows)
    order = _parse_order(args.order, A.num_cols)
    if args.truncate is not None:
        report = bases_mod.truncated_bases(
            A, args.truncate, order, want="groebner",
            ordering=_resolve_cli_ordering(args.ordering, A),
        )
    else:
        lattice = _build_from_args(args, A)
        report = bases_mod.reduced_groebner_basis(A, lattice, order)
    if args.format == "text":
        for b in report.elements:
            sys.stdout.write(
                ",".join(map(str, b.head)) + " - " + ",".join(map(str, b.tail)) + "\n"
            )
        return 0
    _emit(
        {
            "kind": report.kind,
            "bound": report.bound_used,
            "count": len(report.elements),
            "scanned": report.scanned,
            "elements": [
                {"head": list(b.head), "tail": list(b.tail)} for b in report.elements
            ],
        }
    )
    return 0


def _cmd_graver(args) -> int:
    A = _read_matrix(args.matrix, args.drop_zero_rows)
    if args.truncate is not None:
        report = bases_mod.truncated_bases(
            A, args.truncate, want="graver",
            ordering=_resolve_cli_ordering(args.ordering, A),
        )
    else:
        lattice = _build_from_args(args, A)
        report = bases_mod.graver_basis(A, lattice)
    if args.format == "text":
        for v in report.elements:
            sys.stdout.write(",".join(map(str, v)) + "\n")
        return 0
    _emit(
        {
            "kind": report.kind,
            "bound": report.bound_used,
            "count": len(report.elements),
            "scanned": report.scanned,
            "elements": [list(v) for v in report.elements],
        }
    )
    return 0


def _load_ip(path: str) -> IntegerProgram:
    data = json.loads(Path(path).read_text())
    matrix = SparseIntMatrix.from_dense([[int(x) for x in row] for row in data["A"]])

    def vec(key):
        if key not in data or data[key] is None:
            return None
        return tuple(int(x) for x in data[key])

    return IntegerProgram(
        matrix=matrix,
        rhs=vec("b"),
        objective=vec("c"),
        lower=vec("lower"),
        upper=vec("upper"),
        feasible_hint=vec("hint"),
    )


def _cmd_solve_ip(args) -> int:
    program = _load_ip(args.ip)
    solution = solve_ip(program)
    objective = sum(c * x for c, x in zip(program.objective, solution))
    _emit({"status": "optimal", "solution": list(solution), "objective": objective})
    return 0


def _cmd_reduce_ip(args) -> int:
    program = _load_ip(args.ip)
    reduction = ip_to_normalform(program, graded=args.graded)
    prefix = Path(args.out_prefix)
    matrix_path = prefix.with_name(prefix.name + "_matrix.txt")
    rhs_path = prefix.with_name(prefix.name + "_rhs.txt")
    start_path = prefix.with_name(prefix.name + "_start.txt")
    matrix_path.write_text(matrix_to_text(reduction.matrix))
    rhs_path.write_text(" ".join(map(str, reduction.rhs)) + "\n")
    start_path.write_text(" ".join(map(str, reduction.start_exponent)) + "\n")
    _emit(
        {
            "matrix_file": str(matrix_path),
            "rhs_file": str(rhs_path),
            "start_file": str(start_path),
            "order": "grlex" if args.graded else "lex",
            "variables": reduction.matrix.num_cols,
        }
    )
    return 0


def _cmd_vertex_cover(args) -> int:
    graph = graphs_mod.edge_list_from_text(Path(args.graph).read_text())
    program = vertex_cover_ip(graph)
    if args.via == "normal-form":
        solution, objective = solve_ip_via_normal_form(program)
    else:
        solution = solve_ip(program)
        objective = sum(c * x for c, x in zip(program.objective, solution))
    cover = [v for v in range(graph.num_vertices) if solution[v] == 1]
    _emit({"cover": cover, "cover_size": objective})
    return 0


def _cmd_gen(args) -> int:
    if args.kind == "minors":
        matrix = oracle_mod.two_by_two_minors_matrix(args.blocks, args.copies)
    elif args.kind == "threeway":
        matrix = oracle_mod.threeway_table_matrix(args.l, args.m, args.n)
    elif args.kind == "nfold":
        if not (args.a1 and args.a2):
            raise ValueError("nfold needs --a1 and --a2 block matrix files")
        a1 = _read_matrix(args.a1, False)
        a2 = _read_matrix(args.a2, False)
        matrix = oracle_mod.nfold_product(a1, a2, args.copies)
    elif args.kind == "incidence":
        if not args.graph:
            raise ValueError("incidence needs --graph with an edge list file")
        graph = graphs_mod.edge_list_from_text(Path(args.graph).read_text())
        matrix = oracle_mod.incidence_matrix(graph)
    elif args.kind == "random":
        matrix = oracle_mod.random_sparse_matrix(
            args.rows, args.cols, args.max_entry, args.density, args.seed
        )
    else:
        raise ValueError(f"unknown generator kind {args.kind!r}")
    text = matrix_to_text(matrix)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


# ---------------------------------------------------------------------------
# parser


def _add_matrix_arg(p: argparse.ArgumentParser) -> None:
    p.add_argument("--matrix", required=True, help="matrix file (dense or sparse text)")
    p.add_argument(
        "--drop-zero-rows",
        action="store_true",
        help="drop all-zero rows instead of rejecting them",
    )


def _add_lattice_args(p: argparse.ArgumentParser, with_degree: bool = True) -> None:
    p.add_argument("--bound", type=int, default=None, help="box bound on entries")
    if with_degree:
        p.add_argument("--degree", type=int, default=None, help="degree truncation bound")
    p.add_argument(
        "--ordering",
        default="auto",
        help="column ordering: auto | min-fill | min-degree | file:<path>",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="toricbases",
        description="Toric ideal computations driven by the matrix's graph structure",
    )
    parser.add_argument("--threads", type=int, default=1, help="worker cap (sequential run)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("graph-stats", help="column/row graph statistics")
    _add_matrix_arg(p)
    p.set_defaults(func=_cmd_graph_stats)

    p = sub.add_parser("lattice", help="build and query a kernel lattice")
    _add_matrix_arg(p)
    _add_lattice_args(p)
    p.add_argument("action", choices=["count", "list", "contains"])
    p.add_argument("vector", nargs="?", default=None, help="comma-separated integers")
    p.set_defaults(func=_cmd_lattice)

    p = sub.add_parser("normal-form", help="normal form of a monomial")
    _add_matrix_arg(p)
    _add_lattice_args(p)
    p.add_argument("--order", required=True, help="lex | grlex | weights:<csv>")
    p.add_argument("--monomial", required=True, help="comma-separated exponents")
    p.add_argument("--via", choices=["lattice", "gb", "ip"], default="lattice")
    p.add_argument(
        "--polynomial",
        default=None,
        help='optional JSON [[coef, [exponents]], ...] reduced termwise',
    )
    p.set_defaults(func=_cmd_normal_form)

    p = sub.add_parser("groebner", help="reduced Groebner basis")
    _add_matrix_arg(p)
    _add_lattice_args(p, with_degree=False)
    p.add_argument("--order", required=True)
    p.add_argument("--truncate", type=int, default=None, help="degree truncation")
    p.add_argument("--format", choices=["json", "text"], default="json")
    p.set_defaults(func=_cmd_groebner)

    p = sub.add_parser("graver", help="Graver basis")
    _add_matrix_arg(p)
    _add_lattice_args(p, with_degree=False)
    p.add_argument("--truncate", type=int, default=None, help="degree truncation")
    p.add_argument("--format", choices=["json", "text"], default="json")
    p.set_defaults(func=_cmd_graver)

    p = sub.add_parser("solve-ip", help="solve an integer program exactly")
    p.add_argument("--ip", required=True, help="JSON file {A, b, c, lower, upper, hint}")
    p.set_defaults(func=_cmd_solve_ip)

    p = sub.add_parser("reduce-ip", help="embed an IP as a normal-form instance")
    p.add_argument("--ip", required=True)
    p.add_argument("--to", choices=["normal-form"], default="normal-form")
    p.add_argument("--graded", action="store_true", help="use the graded order")
    p.add_argument("--out-prefix", required=True)
    p.set_defaults(func=_cmd_reduce_ip)

    p = sub.add_parser("vertex-cover", help="minimum vertex cover of a graph")
    p.add_argument("graph", help="edge list file, one 'u v' pair per line")
    p.add_argument("--via", choices=["ip", "normal-form"], default="ip")
    p.set_defaults(func=_cmd_vertex_cover)

    p = sub.add_parser("gen", help="generate instance matrices")
    p.add_argument("--kind", required=True, choices=["nfold", "minors", "threeway", "incidence", "random"])
    p.add_argument("--blocks", type=int, default=2, help="identity size for minors")
    p.add_argument("--copies", type=int, default=2, help="fold count")
    p.add_argument("--l", type=int, default=2)
    p.add_argument("--m", type=int, default=2)
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--a1", help="top block matrix file")
    p.add_argument("--a2", help="diagonal block matrix file")
    p.add_argument("--graph", help="edge list file")
    p.add_argument("--rows", type=int, default=3)
    p.add_argument("--cols", type=int, default=6)
    p.add_argument("--max-entry", type=int, default=2)
    p.add_argument("--density", type=float, default=0.5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_gen)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.threads < 1:
        parser.error("--threads must be positive")
    try:
        return args.func(args)
    except ToricError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
