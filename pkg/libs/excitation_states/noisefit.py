"""Signal and noise statistics of measured cycle-state histograms and the decay+flip fit."""

import logging
import math
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np
from scipy.optimize import least_squares, nnls

from .exceptions import PreconditionError, ShapeMismatchError
from .types import NoiseFit

logger = logging.getLogger(__name__)

DECAY_GRID = np.linspace(0.0, 10.0, 401)


@dataclass(frozen=True)
class CountsHistogram:
    """Measured counts per bitstring; leftmost character is qubit 0"""

    n: int
    counts: dict[str, int]

    def __post_init__(self):
        for key, value in self.counts.items():
            if len(key) != self.n or set(key) - {"0", "1"}:
                raise ShapeMismatchError(f"Key {key!r} is not a {self.n}-bit string")
            if value < 0:
                raise PreconditionError(f"Negative count {value} for {key!r}")
        if self.total <= 0:
            raise PreconditionError("Histogram has no counts")

    @classmethod
    def from_counts(cls, counts: Mapping[str, int], reverse_bits: bool = False) -> "CountsHistogram":
        """Build from a bitstring->count mapping, merging keys that coincide after reversal

        Args:
            counts: Bitstring keys of equal length
            reverse_bits: Flip keys for exports whose rightmost character is qubit 0
        """
        if not counts:
            raise PreconditionError("Histogram has no entries")
        lengths = {len(key) for key in counts}
        if len(lengths) != 1:
            raise ShapeMismatchError(f"Bitstrings of mixed lengths {sorted(lengths)}")
        merged: dict[str, int] = {}
        for key, value in counts.items():
            key = key[::-1] if reverse_bits else key
            merged[key] = merged.get(key, 0) + int(value)
        return cls(lengths.pop(), merged)

    @classmethod
    def pooled(cls, histograms: Iterable["CountsHistogram"]) -> "CountsHistogram":
        """Plain count sum over machines."""
        histograms = list(histograms)
        if not histograms:
            raise PreconditionError("Nothing to pool")
        sizes = {h.n for h in histograms}
        if len(sizes) != 1:
            raise ShapeMismatchError(f"Cannot pool histograms over {sorted(sizes)} qubits")
        merged: dict[str, int] = {}
        for h in histograms:
            for key, value in h.counts.items():
                merged[key] = merged.get(key, 0) + value
        return cls(sizes.pop(), merged)

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def probability(self, bitstring: str) -> float:
        return self.counts.get(bitstring, 0) / self.total


def _bitstrings(n: int, weight: int) -> set[str]:
    return {format(label, f"0{n}b") for label in range(2**n) if bin(label).count("1") == weight}


def signal_set(n: int) -> set[str]:
    """Weight-2 strings whose ones sit on cyclically adjacent qubits."""
    if n < 3:
        raise PreconditionError(f"Signal set needs n >= 3, got {n}")
    signal = set()
    for i in range(n):
        bits = ["0"] * n
        bits[i] = bits[(i + 1) % n] = "1"
        signal.add("".join(bits))
    return signal


def noise_strata(n: int) -> list[set[str]]:
    """Weight-k strings outside the signal set, for k = 0..n."""
    signal = signal_set(n)
    return [_bitstrings(n, k) - signal for k in range(n + 1)]


def stratum_means(h: CountsHistogram) -> dict[int, float]:
    """Mean probability per noise stratum; empty strata are absent from the result."""
    means = {}
    for k, stratum in enumerate(noise_strata(h.n)):
        if stratum:
            means[k] = sum(h.probability(s) for s in stratum) / len(stratum)
    return means


def signal_probability(h: CountsHistogram) -> float:
    return sum(h.probability(s) for s in signal_set(h.n))


def _as_means(means: Union[Mapping[int, float], Sequence[float]]) -> dict[int, float]:
    if isinstance(means, Mapping):
        return {int(k): float(v) for k, v in means.items()}
    return {k: float(v) for k, v in enumerate(means)}


def _model(params: np.ndarray, ks: np.ndarray, with_floor: bool) -> np.ndarray:
    floor = params[2] if with_floor else 0.0
    return params[0] * np.exp(-params[1] * ks) + floor


def _jacobian(params: np.ndarray, ks: np.ndarray, with_floor: bool) -> np.ndarray:
    decay = np.exp(-params[1] * ks)
    columns = [decay, -params[0] * ks * decay]
    if with_floor:
        columns.append(np.ones_like(ks))
    return np.column_stack(columns)


def _grid_start(ks: np.ndarray, ys: np.ndarray, with_floor: bool) -> tuple[np.ndarray, float]:
    best_params, best_residual = None, math.inf
    for beta in DECAY_GRID:
        columns = [np.exp(-beta * ks)]
        if with_floor:
            columns.append(np.ones_like(ks))
        coefficients, norm = nnls(np.column_stack(columns), ys)
        if norm**2 < best_residual:
            floor = [coefficients[1]] if with_floor else []
            best_params = np.array([coefficients[0], beta, *floor])
            best_residual = norm**2
    return best_params, best_residual


def _fit(ks: np.ndarray, ys: np.ndarray, with_floor: bool) -> tuple[np.ndarray, float, bool]:
    start, start_residual = _grid_start(ks, ys, with_floor)
    try:
        result = least_squares(
            lambda p: _model(p, ks, with_floor) - ys,
            start,
            jac=lambda p: _jacobian(p, ks, with_floor),
            bounds=(0.0, np.inf),
            method="trf",
            ftol=1e-14,
            xtol=1e-14,
            gtol=1e-14,
        )
    except (ValueError, np.linalg.LinAlgError) as e:
        logger.warning(f"Noise fit refinement failed ({e}); keeping the grid estimate")
        return start, start_residual, False
    refined_residual = float(np.sum(result.fun**2))
    if not result.success:
        logger.warning(f"Noise fit refinement did not converge: {result.message}")
    if refined_residual <= start_residual:
        return result.x, refined_residual, bool(result.success)
    return start, start_residual, bool(result.success)


def fit_noise_model(
    means: Union[Mapping[int, float], Sequence[float]],
    with_floor: bool = True,
    n: Optional[int] = None,
) -> NoiseFit:
    """Least-squares fit of mean noise per stratum to amplitude*exp(-rate*k) + floor

    Args:
        means: Stratum means keyed by excitation number, or listed from k = 0
        with_floor: Fit the constant flip floor; False fixes it at zero
        n: Qubit count; when given, the all-ones stratum k = n is left out of the fit
    """
    means = _as_means(means)
    if not means:
        raise PreconditionError("No stratum means to fit")
    if n is not None:
        means = {k: v for k, v in means.items() if k < n}
    if any(not 0.0 <= v <= 1.0 for v in means.values()):
        raise PreconditionError(f"Stratum means must lie in [0, 1], got {means}")
    ks = np.array(sorted(means), dtype=float)
    ys = np.array([means[int(k)] for k in ks])

    params, residual, converged = _fit(ks, ys, with_floor)
    if with_floor:
        restricted, restricted_residual, restricted_converged = _fit(ks, ys, False)
        if restricted_residual < residual:
            params = np.array([restricted[0], restricted[1], 0.0])
            residual, converged = restricted_residual, restricted_converged
    floor = float(params[2]) if with_floor else 0.0
    return NoiseFit(
        means=means,
        amplitude=float(params[0]),
        decay_rate=float(params[1]),
        flip_floor=floor,
        residual=float(residual),
        converged=converged,
    )
