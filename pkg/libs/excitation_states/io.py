"""JSON and CSV formats, plus the bundled fixtures."""

import csv
import json
import logging
from collections.abc import Iterable, Sequence
from pathlib import Path
from typing import Any, TextIO, Union

from .circuit import Circuit
from .exceptions import HypergraphValidationError, PreconditionError, ShapeMismatchError
from .hypergraph import Hypergraph, validate
from .noisefit import CountsHistogram
from .state import SparseState
from .symmetry import Permutation, PermutationGroup

logger = logging.getLogger(__name__)

DATA_DIR = Path(__file__).parent / "data"
CSV_FLOAT_FORMAT = "{:.6f}"

PathLike = Union[str, Path]


def data_path(name: str) -> Path:
    path = DATA_DIR / name
    if not path.exists():
        raise FileNotFoundError(f"No bundled fixture named {name!r}")
    return path


def dumps(payload: Any) -> str:
    """Canonical JSON text: sorted keys, two-space indent, trailing newline."""
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def write_json(payload: Any, path: PathLike) -> None:
    Path(path).write_text(dumps(payload), encoding="utf-8")


def read_json(path: PathLike) -> Any:
    return json.loads(Path(path).read_text(encoding="utf-8"))


def hypergraph_to_dict(G: Hypergraph) -> dict[str, Any]:
    return {"n": G.n, "edges": [list(edge) for edge in G.edges]}


def hypergraph_from_dict(data: dict[str, Any]) -> Hypergraph:
    try:
        return validate(data["n"], data["edges"])
    except (KeyError, TypeError) as e:
        raise HypergraphValidationError(f"Malformed hypergraph JSON: {e}") from e  # noqa: B904


def load_hypergraph(path: PathLike) -> Hypergraph:
    return hypergraph_from_dict(read_json(path))


def group_to_dict(group: PermutationGroup) -> dict[str, Any]:
    return {"n": group.n, "generators": [list(g.image) for g in group.generators]}


def group_from_dict(data: dict[str, Any]) -> PermutationGroup:
    try:
        n = int(data["n"])
        generators = tuple(Permutation(tuple(int(i) for i in g)) for g in data["generators"])
    except (KeyError, TypeError, ValueError) as e:
        raise PreconditionError(f"Malformed group JSON: {e}") from e  # noqa: B904
    if any(g.n != n for g in generators):
        raise ShapeMismatchError(f"Generators must act on {n} points")
    return PermutationGroup(n, generators)


def state_to_dict(state: SparseState) -> dict[str, Any]:
    return {
        "n": state.n,
        "local_dim": state.local_dim,
        "amps": {
            state.label_to_string(label): [amp.real, amp.imag]
            for label, amp in sorted(state.amplitudes.items(), reverse=True)
        },
    }


def state_from_dict(data: dict[str, Any]) -> SparseState:
    try:
        n, local_dim = int(data["n"]), int(data.get("local_dim", 2))
        blank = SparseState(n, {}, local_dim)
        amplitudes = {
            blank.label_from_string(key): complex(value[0], value[1])
            for key, value in data["amps"].items()
        }
    except (KeyError, TypeError, ValueError, IndexError) as e:
        raise ShapeMismatchError(f"Malformed state JSON: {e}") from e  # noqa: B904
    return SparseState.from_amplitudes(n, amplitudes, local_dim, normalize=False)


def load_state(path: PathLike) -> SparseState:
    return state_from_dict(read_json(path))


def load_circuit(path: PathLike) -> Circuit:
    data = read_json(path)
    try:
        return Circuit.from_dict(data)
    except (KeyError, TypeError, ValueError) as e:
        raise PreconditionError(f"Malformed circuit JSON: {e}") from e  # noqa: B904


def load_counts(path: PathLike, reverse_bits: bool = False) -> CountsHistogram:
    """Counts from {"counts": {...}} JSON, a bare JSON mapping, or bitstring,count CSV

    Args:
        path: .json or .csv file
        reverse_bits: Keys list qubit 0 rightmost
    """
    path = Path(path)
    if path.suffix.lower() == ".csv":
        counts: dict[str, int] = {}
        with path.open(newline="", encoding="utf-8") as f:
            for row in csv.reader(f):
                if not row or row[0].strip().lower() in ("bitstring", ""):
                    continue
                try:
                    counts[row[0].strip()] = counts.get(row[0].strip(), 0) + int(row[1])
                except (IndexError, ValueError) as e:
                    raise PreconditionError(f"Bad counts row {row}: {e}") from e  # noqa: B904
        return CountsHistogram.from_counts(counts, reverse_bits)
    data = read_json(path)
    counts = data.get("counts", data) if isinstance(data, dict) else None
    if not isinstance(counts, dict):
        raise PreconditionError(f"{path} holds no counts mapping")
    return CountsHistogram.from_counts({str(k): int(v) for k, v in counts.items()}, reverse_bits)


def format_cell(value: Any) -> str:
    if isinstance(value, float):
        return CSV_FLOAT_FORMAT.format(value)
    return "" if value is None else str(value)


def write_csv(stream: TextIO, header: Sequence[str], rows: Iterable[Sequence[Any]]) -> None:
    """CSV with floats fixed at six decimals."""
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([format_cell(value) for value in row])


def fixture_graph(name: str) -> Hypergraph:
    """Bundled hypergraph such as 'c5', 'k222' or 'telescope'."""
    return load_hypergraph(data_path(f"{name}.json"))


def fixture_graph_names() -> list[str]:
    return sorted(path.stem for path in DATA_DIR.glob("*.json") if _is_graph(path))


def _is_graph(path: Path) -> bool:
    data = read_json(path)
    return isinstance(data, dict) and set(data) == {"n", "edges"}


def pooled_counts() -> CountsHistogram:
    return load_counts(data_path("pooled_counts.json"))


def noise_means() -> dict[str, Any]:
    """Stratum means per machine, pooled, and a reference fit."""
    return read_json(data_path("noise_means.json"))
