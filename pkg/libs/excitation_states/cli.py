"""Command-line front end: build, analyze, synthesize, diagonalize, fit and export."""

import argparse
import json
import logging
import random
import sys
from collections.abc import Sequence
from dataclasses import dataclass
from io import StringIO
from pathlib import Path
from typing import Any, Optional

from . import __version__
from .circuit import (
    deletion_cost_estimate,
    regime_estimate,
    synthesize_disentangler,
    verify_round_trip,
)
from .entanglement import node_entanglement
from .exceptions import BudgetExceededError, ExcitationStateError, PreconditionError
from .exports import (
    COMPARISON_HEADER,
    FIGZ_HEADER,
    POLYTOPE_HEADER,
    TABLE1_HEADER,
    fig_comparison_rows,
    fig_figz_rows,
    fig_polytope_rows,
    table1_rows,
)
from .families import build_family
from .hamiltonian import (
    build_3body,
    build_dicke_jj,
    build_hg,
    claimed_3body_top,
    claimed_dicke_top,
    claimed_hg_top,
    rayleigh_residual,
    top_eigenpair,
)
from .hypergraph import Hypergraph, product_decompose
from .io import (
    dumps,
    group_from_dict,
    group_to_dict,
    hypergraph_to_dict,
    load_counts,
    load_hypergraph,
    load_state,
    pooled_counts,
    read_json,
    state_to_dict,
    write_csv,
)
from .noisefit import fit_noise_model, signal_probability, stratum_means
from .settings import get_budgets
from .state import SparseState, excitation_state, reduced_density, separability_check
from .symmetry import (
    PermutationGroup,
    dicke_state,
    orbit_basis,
    parse_group_spec,
    realizable_closure,
    stabilizer_group,
)
from .types import FamilySpec, FamilyTag

logger = logging.getLogger(__name__)

ROUND_TRIP_TOLERANCE = 1e-10
SEPARABILITY_SKIPPED = "skipped (budget)"


@dataclass(frozen=True)
class RunConfig:
    """Parsed command line"""

    command: str
    action: Optional[str]
    output: Optional[Path]
    verbose: bool
    options: argparse.Namespace

    @classmethod
    def from_namespace(cls, args: argparse.Namespace) -> "RunConfig":
        return cls(
            command=args.command,
            action=getattr(args, "action", None),
            output=getattr(args, "out", None),
            verbose=args.verbose,
            options=args,
        )


def _existing_path(text: str) -> Path:
    path = Path(text)
    if not path.is_file():
        raise argparse.ArgumentTypeError(f"no such file: {text}")
    return path


def _int_list(text: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from e  # noqa: B904


def _emit(text: str, output: Optional[Path]) -> None:
    if output is None:
        sys.stdout.write(text)
    else:
        output.write_text(text, encoding="utf-8")


def _csv_text(header: Sequence[str], rows) -> str:
    buffer = StringIO()
    write_csv(buffer, header, rows)
    return buffer.getvalue()


def _load_group(text: str, n: Optional[int]) -> PermutationGroup:
    path = Path(text)
    if path.is_file():
        group = group_from_dict(read_json(path))
        if n is not None and group.n != n:
            raise PreconditionError(f"Group in {path} acts on {group.n} points, not {n}")
        return group
    if n is None:
        raise PreconditionError("--n is required with a named group")
    return parse_group_spec(text, n)


def _target_state(args: argparse.Namespace) -> SparseState:
    if getattr(args, "state", None) is not None:
        return load_state(args.state)
    if getattr(args, "graph", None) is not None:
        return excitation_state(load_hypergraph(args.graph))
    raise PreconditionError("Give --state or --graph")


def run_families(config: RunConfig) -> int:
    args = config.options
    spec = FamilySpec(
        family=args.tag,
        N=args.N,
        k=args.k,
        m=args.m,
        solid=args.solid,
        mode=args.mode,
        rows=args.rows,
        cols=args.cols,
    )
    _emit(dumps(hypergraph_to_dict(build_family(spec))), config.output)
    return 0


def run_state(config: RunConfig) -> int:
    args = config.options
    if config.action == "build":
        _emit(dumps(state_to_dict(excitation_state(load_hypergraph(args.graph)))), config.output)
        return 0
    rho = reduced_density(_target_state(args), args.qubits)
    payload = {
        "subsystems": list(rho.subsystems),
        "real": rho.matrix.real.tolist(),
        "imag": rho.matrix.imag.tolist(),
    }
    _emit(dumps(payload), config.output)
    return 0


def _separability(G: Hypergraph) -> dict[str, Any]:
    try:
        decomposition = product_decompose(G)
    except BudgetExceededError as e:
        logger.warning(f"Skipping the product decomposition of {G.n} vertices: {e}")
        return {"status": SEPARABILITY_SKIPPED, "partition": None, "state_check": None}
    if decomposition is None:
        return {"status": "no product decomposition", "partition": None, "state_check": None}
    state_check = None
    if G.n <= get_budgets().max_dense_qubits:
        state_check = separability_check(excitation_state(G), decomposition.blocks)
    return {"status": "product", "partition": decomposition.label(), "state_check": state_check}


def run_analyze(config: RunConfig) -> int:
    args = config.options
    G = load_hypergraph(args.graph)
    vertices = [args.vertex] if args.vertex is not None else list(range(G.n))
    nodes = [node_entanglement(G, v) for v in vertices]
    separability = _separability(G)
    predicates = G.predicates()
    report = {
        "n": G.n,
        "edge_count": G.edge_count,
        "uniformity": G.uniformity,
        "predicates": {
            "connected": predicates.connected,
            "k_uniform": predicates.k_uniform,
            "regular": predicates.regular,
            "distance1_regular": predicates.distance1_regular,
        },
        "separability": separability,
        "nodes": [node.to_dict() for node in nodes],
    }
    _emit(dumps(report), config.output)
    summary = separability["partition"] or separability["status"]
    print(f"separable: {summary}", file=sys.stderr)
    if args.csv is not None:
        rows = []
        for node in nodes:
            largest: dict[float, float] = {}
            for pair in node.pairwise:
                largest[pair.distance] = max(largest.get(pair.distance, 0.0), pair.concurrence)
            rows.append((G.n, args.family, node.gamma, largest.get(1.0), largest.get(2.0)))
        args.csv.write_text(_csv_text(COMPARISON_HEADER, rows), encoding="utf-8")
    return 0


def run_symmetry(config: RunConfig) -> int:
    args = config.options
    if config.action == "stabilizer":
        group = stabilizer_group(_target_state(args))
        payload = {**group_to_dict(group), "order": group.order}
    elif config.action == "realizable":
        group = _load_group(args.group, args.n)
        closure = realizable_closure(group, group.n)
        payload = {
            "group_order": group.order,
            "closure_order": closure.order,
            "realizable": closure.order == group.order,
            "closure": group_to_dict(closure),
        }
    else:
        group = _load_group(args.group, args.n)
        payload = {"states": [state_to_dict(s) for s in orbit_basis(group, group.n, args.k)]}
    _emit(dumps(payload), config.output)
    return 0


def run_circuit(config: RunConfig) -> int:
    args = config.options
    G = load_hypergraph(args.graph)
    if config.action == "synth":
        _emit(dumps(synthesize_disentangler(G, args.order).to_dict()), config.output)
        return 0
    if config.action == "cost":
        regime = regime_estimate(G)
        payload = {
            "exact": synthesize_disentangler(G, args.order).total_cnot_cost,
            "estimate": deletion_cost_estimate(G, args.order),
            "regime": regime.regime,
            "regime_estimate": regime.estimate,
        }
        _emit(dumps(payload), config.output)
        return 0

    rng = random.Random(args.seed)
    orders: list[Optional[list[int]]] = [args.order]
    for _ in range(args.random_orders):
        shuffled = list(range(G.n))
        rng.shuffle(shuffled)
        orders.append(shuffled)
    results = [
        {"order": order, "fidelity": verify_round_trip(G, order)} for order in orders
    ]
    ok = all(r["fidelity"] >= 1.0 - ROUND_TRIP_TOLERANCE for r in results)
    _emit(dumps({"ok": ok, "runs": results}), config.output)
    return 0 if ok else 1


def run_hamiltonian(config: RunConfig) -> int:
    args = config.options
    G = load_hypergraph(args.graph)
    if args.model == "jj":
        op = build_dicke_jj(G.n, args.k)
        claimed = claimed_dicke_top(G.n, args.k)
        auto_target = dicke_state(G.n, args.k)
    elif args.model == "hg":
        op = build_hg(G, args.k)
        claimed = claimed_hg_top(G)
        auto_target = excitation_state(G)
    else:
        op = build_3body(G)
        claimed = claimed_3body_top(G)
        auto_target = excitation_state(G)
    target = auto_target if args.target == "auto" else load_state(Path(args.target))
    report = top_eigenpair(op, target, claimed_top=claimed)
    mu, residual = rayleigh_residual(op, target)
    payload = {
        **report.to_dict(),
        "model": args.model,
        "dimension": op.dim,
        "rayleigh_quotient": mu,
        "rayleigh_residual": residual,
    }
    _emit(dumps(payload), config.output)
    return 0


def run_fit_noise(config: RunConfig) -> int:
    args = config.options
    histogram = (
        load_counts(args.counts, args.reverse_bits) if args.counts is not None else pooled_counts()
    )
    means = stratum_means(histogram)
    fit = fit_noise_model(means, with_floor=not args.no_floor, n=histogram.n)
    payload = {
        **fit.to_dict(),
        "all_means": {str(k): v for k, v in sorted(means.items())},
        "signal_probability": signal_probability(histogram),
    }
    _emit(dumps(payload), config.output)
    if args.csv is not None:
        rows = [(k, fit.means[k], fit.predict(k)) for k in sorted(fit.means)]
        args.csv.write_text(_csv_text(("k", "mean", "fit"), rows), encoding="utf-8")
    return 0


def run_export(config: RunConfig) -> int:
    args = config.options
    if args.what == "table1":
        text = _csv_text(TABLE1_HEADER, table1_rows("faces" if args.faces else "edges"))
    elif args.what == "fig-comparison":
        text = _csv_text(COMPARISON_HEADER, fig_comparison_rows())
    elif args.what == "fig-polytope":
        text = _csv_text(POLYTOPE_HEADER, fig_polytope_rows())
    else:
        text = _csv_text(FIGZ_HEADER, fig_figz_rows())
    _emit(text, config.output)
    return 0


_HANDLERS = {
    "families": run_families,
    "state": run_state,
    "analyze": run_analyze,
    "symmetry": run_symmetry,
    "circuit": run_circuit,
    "hamiltonian": run_hamiltonian,
    "fit-noise": run_fit_noise,
    "export": run_export,
}


def _add_out(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--out", type=Path, help="output file (default: stdout)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="excitation-states",
        description="Excitation-states of hypergraphs: entanglement, symmetry, circuits.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    commands = parser.add_subparsers(dest="command", required=True)

    families = commands.add_parser("families", help="emit a family hypergraph as JSON")
    families.add_argument("tag", choices=FamilyTag.ALL)
    families.add_argument("--N", type=int, help="vertex count (dicke, cycle)")
    families.add_argument("--k", type=int, help="edge size")
    families.add_argument("--m", type=int, help="polytope dimension")
    families.add_argument("--solid", help="Platonic solid name")
    families.add_argument("--mode", choices=("edges", "faces"), default="edges")
    families.add_argument("--rows", type=int, help="torus rows")
    families.add_argument("--cols", type=int, help="torus columns")
    _add_out(families)

    state = commands.add_parser("state", help="build or reduce states")
    state_actions = state.add_subparsers(dest="action", required=True)
    build = state_actions.add_parser("build", help="excitation-state of a hypergraph")
    build.add_argument("--graph", type=_existing_path, required=True)
    _add_out(build)
    reduce = state_actions.add_parser("reduce", help="reduced density matrix")
    reduce.add_argument("--graph", type=_existing_path, help="hypergraph JSON")
    reduce.add_argument("--state", type=_existing_path, help="state JSON")
    reduce.add_argument("--qubits", type=_int_list, required=True, help="kept qubits, e.g. 0,2")
    _add_out(reduce)

    analyze = commands.add_parser("analyze", help="entanglement report of a hypergraph state")
    analyze.add_argument("--graph", type=_existing_path, required=True)
    analyze.add_argument("--vertex", type=int, help="single vertex (default: all)")
    analyze.add_argument("--family", default="graph", help="family label for CSV rows")
    analyze.add_argument("--csv", type=Path, help="figure-data CSV output")
    _add_out(analyze)

    symmetry = commands.add_parser("symmetry", help="stabilizers and realizability")
    symmetry_actions = symmetry.add_subparsers(dest="action", required=True)
    stabilizer = symmetry_actions.add_parser("stabilizer", help="permutation stabilizer")
    stabilizer.add_argument("--graph", type=_existing_path, help="hypergraph JSON")
    stabilizer.add_argument("--state", type=_existing_path, help="state JSON")
    _add_out(stabilizer)
    for name, text in (
        ("realizable", "is the group the stabilizer of some qubit state"),
        ("orbit-basis", "orbit states of weight-k strings"),
    ):
        sub = symmetry_actions.add_parser(name, help=text)
        sub.add_argument(
            "--group", required=True, help="group JSON file, preset name, or e.g. S2xS2@[0,2|1,3]"
        )
        sub.add_argument("--n", type=int, help="number of points for named groups")
        if name == "orbit-basis":
            sub.add_argument("--k", type=int, required=True, help="excitation number")
        _add_out(sub)

    circuit = commands.add_parser("circuit", help="preparation circuits")
    circuit_actions = circuit.add_subparsers(dest="action", required=True)
    for name, text in (
        ("synth", "disentangling circuit JSON"),
        ("verify", "simulate the preparation round trip"),
        ("cost", "exact and estimated CNOT counts"),
    ):
        sub = circuit_actions.add_parser(name, help=text)
        sub.add_argument("--graph", type=_existing_path, required=True)
        sub.add_argument("--order", type=_int_list, help="deletion order, e.g. 0,1,2")
        if name == "verify":
            sub.add_argument("--random-orders", type=int, default=3, help="extra shuffled orders")
            sub.add_argument("--seed", type=int, default=0)
        _add_out(sub)

    hamiltonian = commands.add_parser("hamiltonian", help="top eigenpair of a sector Hamiltonian")
    hamiltonian.add_argument("--graph", type=_existing_path, required=True)
    hamiltonian.add_argument("--k", type=int, default=2, help="excitation sector")
    hamiltonian.add_argument("--model", choices=("jj", "hg", "3body"), default="hg")
    hamiltonian.add_argument("--target", default="auto", help="'auto' or a state JSON file")
    _add_out(hamiltonian)

    fit = commands.add_parser("fit-noise", help="stratum means and decay+flip fit")
    fit.add_argument("--counts", type=_existing_path, help="counts JSON/CSV (default: bundled)")
    fit.add_argument("--reverse-bits", action="store_true", help="keys list qubit 0 rightmost")
    fit.add_argument("--no-floor", action="store_true", help="fit without the flip floor")
    fit.add_argument("--csv", type=Path, help="CSV of (k, mean, fit)")
    _add_out(fit)

    export = commands.add_parser("export", help="table and figure-data CSV")
    export.add_argument("what", choices=("table1", "fig-comparison", "fig-polytope", "fig-figz"))
    export.add_argument("--faces", action="store_true", help="table1 over face hypergraphs")
    _add_out(export)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    config = RunConfig.from_namespace(args)
    logging.basicConfig(
        level=logging.DEBUG if config.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        return _HANDLERS[config.command](config)
    except json.JSONDecodeError as e:
        print(f"error: malformed JSON at line {e.lineno}, column {e.colno}: {e.msg}", file=sys.stderr)
        return 1
    except ExcitationStateError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
