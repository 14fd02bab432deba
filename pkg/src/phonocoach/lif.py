"""Leaky integrate-and-fire simulation over the 384-neuron category map.

Dynamics per neuron and step: U <- decay*U_prev + I; spike iff U >= threshold;
potential is recorded before the reset-to-zero. Both execution paths (the
compiled kernel and the numpy fallback) evaluate each element as one multiply
followed by one add, so results are bit-identical between them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .categories import NUM_NEURONS, CategoryMap
from .errors import ValidationError
from .ingest import PhonemeIssue

try:  # compiled stepping kernel, optional at install time
    from . import _lifkernel  # type: ignore[attr-defined]

    BACKEND = "compiled"
except ImportError:  # pragma: no cover - depends on build environment
    _lifkernel = None
    BACKEND = "python"


@dataclass(frozen=True)
class LifParams:
    decay: float = 0.9
    threshold: float = 1.0
    reset: float = 0.0
    steps: int = 32

    def __post_init__(self) -> None:
        # decay=1 is allowed so the pure-integrator limit stays reachable.
        if not 0.0 < self.decay <= 1.0:
            raise ValidationError(f"decay {self.decay} outside (0, 1]")
        if not self.threshold > 0.0:
            raise ValidationError(f"threshold {self.threshold} must be positive")
        if not self.reset < self.threshold:
            raise ValidationError("reset must be below threshold")
        if not math.isfinite(self.decay) or not math.isfinite(self.reset):
            raise ValidationError("decay and reset must be finite")
        if self.steps < 1:
            raise ValidationError("steps must be >= 1")


DEFAULT_PARAMS = LifParams()


def _simulate_numpy(currents: np.ndarray, params: LifParams) -> tuple[np.ndarray, np.ndarray]:
    n_neurons, steps = currents.shape
    spikes = np.zeros((n_neurons, steps), dtype=np.uint8)
    pots = np.empty((n_neurons, steps), dtype=np.float64)
    u = np.zeros(n_neurons, dtype=np.float64)
    for t in range(steps):
        u = params.decay * u + currents[:, t]
        pots[:, t] = u
        fired = u >= params.threshold
        spikes[:, t] = fired
        u[fired] = params.reset
    return spikes, pots


def simulate_lif(
    currents: np.ndarray, params: LifParams = DEFAULT_PARAMS, backend: str | None = None
) -> tuple[np.ndarray, np.ndarray]:
    """Run the simulation; returns (spikes uint8, potentials float64).

    backend overrides the import-time selection ("compiled" or "python"),
    mainly for the benchmark and the cross-path equivalence test.
    """
    currents = np.ascontiguousarray(currents, dtype=np.float64)
    if currents.ndim != 2:
        raise ValidationError("current matrix must be 2-D (neurons x steps)")
    if currents.shape[1] != params.steps:
        raise ValidationError(
            f"current matrix has {currents.shape[1]} steps, params expect {params.steps}"
        )
    if not np.isfinite(currents).all():
        raise ValidationError("current matrix contains non-finite values")
    chosen = backend or BACKEND
    if chosen == "compiled":
        if _lifkernel is None:
            raise ValidationError("compiled backend requested but not built")
        return _lifkernel.simulate(currents, params.decay, params.threshold, params.reset)
    if chosen == "python":
        return _simulate_numpy(currents, params)
    raise ValidationError(f"unknown backend {chosen!r}")


def encode_stimulus(
    issues: Iterable[PhonemeIssue],
    configs: CategoryMap,
    cluster_positions: frozenset[int],
    steps: int = DEFAULT_PARAMS.steps,
) -> np.ndarray:
    """Map phoneme issues onto constant input currents.

    Each issue adds its deficit to all 64 neurons of every category that
    claims the phoneme (injections accumulate); unclaimed neurons stay at 0.
    """
    currents = np.zeros((NUM_NEURONS, steps), dtype=np.float64)
    for issue in issues:
        for cfg in configs.values():
            if cfg.matches(issue.symbol, issue.position, cluster_positions):
                currents[cfg.neuron_slice, :] += issue.deficit
    return currents


def spike_density(spikes: np.ndarray, neuron_range: tuple[int, int]) -> float:
    """Fraction of (neuron, step) slots in the 1-based inclusive range that fired."""
    lo, hi = neuron_range
    if not (1 <= lo <= hi <= spikes.shape[0]):
        raise ValidationError(f"neuron range {neuron_range} invalid for {spikes.shape[0]} neurons")
    block = spikes[lo - 1 : hi]
    total = int(block.sum())
    slots = block.shape[0] * block.shape[1]
    return total / slots
