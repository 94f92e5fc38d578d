"""Synaptic memory cells and the pair-based weight update rule.

Two cell families: ``LoopMemory`` stores the weight as an integer level in
a persistent-current loop (quantized, effectively unlimited endurance) and
``AnalogMemory`` stores a real weight in [0, 1] with write noise and a
finite endurance budget.  The update rule is classic pair-based
exponential timing-dependent plasticity; the rule itself is an artifact
choice, the loop quantization is not.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .errors import DomainError
from .quantities import CURRENT, DIMENSIONLESS, FLUX_QUANTUM, si_value


@dataclass(frozen=True)
class LoopMemory:
    """Weight as a fluxon-quantized level in [0, 2**bits)."""

    level: int = 0
    bits: int = 10
    write_count: int = 0

    def __post_init__(self):
        if not 1 <= self.bits <= 10:
            raise DomainError(f"bits must lie in [1, 10], got {self.bits}")
        if not 0 <= self.level < 2**self.bits:
            raise DomainError(f"level must lie in [0, {2**self.bits}), got {self.level}")

    @property
    def max_level(self) -> int:
        return 2**self.bits - 1

    @property
    def weight(self) -> float:
        return self.level / self.max_level

    @property
    def degraded(self) -> bool:
        return False


@dataclass(frozen=True)
class AnalogMemory:
    """Weight as a real value in [0, 1] with noisy, endurance-limited writes."""

    value: float = 0.5
    write_noise_std: float = 0.0
    endurance: float = math.inf  # lifetime write budget
    write_count: int = 0
    degraded: bool = False

    def __post_init__(self):
        if not 0.0 <= self.value <= 1.0:
            raise DomainError(f"analog weight must lie in [0, 1], got {self.value}")
        if self.write_noise_std < 0:
            raise DomainError("write_noise_std must be non-negative")
        if self.endurance <= 0:
            raise DomainError("endurance must be positive")

    @property
    def weight(self) -> float:
        return self.value


MemoryCell = LoopMemory | AnalogMemory


@dataclass(frozen=True)
class StdpParams:
    """Pair-based exponential timing rule.

    Amplitudes are in level units for loop cells and weight units for
    analog cells.  ``on_exhaustion`` selects what an analog cell does when
    its endurance budget runs out: ``"freeze"`` keeps the last weight,
    ``"fault"`` raises.
    """

    a_plus: float = 4.0
    a_minus: float = 4.0
    tau_plus: float = 1e-3  # s
    tau_minus: float = 1e-3  # s
    on_exhaustion: str = "freeze"
    write_energy: float | None = None  # J per applied write; None = platform rule

    def __post_init__(self):
        if self.tau_plus <= 0 or self.tau_minus <= 0:
            raise DomainError("tau_plus and tau_minus must be positive")
        if self.a_plus < 0 or self.a_minus < 0:
            raise DomainError("amplitudes must be non-negative")
        if self.on_exhaustion not in ("freeze", "fault"):
            raise DomainError(f"on_exhaustion must be 'freeze' or 'fault', got {self.on_exhaustion!r}")


def stdp_delta(pre_spike: float, post_spike: float, params: StdpParams) -> float:
    """Raw weight change for one (pre, post) spike pair.

    Pre-before-post (including the dt = 0 tie) potentiates by
    a_plus*exp(-dt/tau_plus); post-before-pre depresses by
    a_minus*exp(-dt/tau_minus).
    """
    dt = post_spike - pre_spike
    if dt >= 0:
        return params.a_plus * math.exp(-dt / params.tau_plus)
    return -params.a_minus * math.exp(dt / params.tau_minus)


def apply_stdp(
    pre_spike: float,
    post_spike: float,
    cell: MemoryCell,
    params: StdpParams,
    rng: np.random.Generator | None = None,
) -> tuple[MemoryCell, float]:
    """Apply one pairing to a cell; returns (new cell, applied change).

    Loop cells round the change to whole levels and clamp to the
    representable range; analog cells add write noise, clamp to [0, 1],
    and consume endurance.  The write counter moves only when a nonzero
    change actually lands.
    """
    delta = stdp_delta(pre_spike, post_spike, params)
    if isinstance(cell, LoopMemory):
        step = round(delta)
        new_level = min(cell.max_level, max(0, cell.level + step))
        applied = new_level - cell.level
        if applied == 0:
            return cell, 0.0
        return replace(cell, level=new_level, write_count=cell.write_count + 1), float(applied)
    if cell.degraded:
        return cell, 0.0
    if cell.write_count + 1 > cell.endurance:
        if params.on_exhaustion == "fault":
            raise DomainError("analog memory endurance exhausted")
        return replace(cell, degraded=True), 0.0
    noise = 0.0
    if cell.write_noise_std > 0:
        if rng is None:
            raise DomainError("write noise requires a random generator")
        noise = cell.write_noise_std * float(rng.standard_normal())
    new_value = min(1.0, max(0.0, cell.value + delta + noise))
    applied = new_value - cell.value
    if applied == 0.0 and noise == 0.0:
        return cell, 0.0
    return replace(cell, value=new_value, write_count=cell.write_count + 1), applied


def weight_to_fluxon_rate(cell: MemoryCell, max_fluxons) -> int:
    """Fluxons added to the integration loop per detection at this weight.

    Linear map from the stored level onto [0, max_fluxons], rounded
    half-even.  Only meaningful for loop cells.
    """
    if not isinstance(cell, LoopMemory):
        raise DomainError("fluxon rates are defined for loop memory cells only")
    m = si_value(max_fluxons, DIMENSIONLESS, "max_fluxons")
    if m < 0:
        raise DomainError("max_fluxons must be non-negative")
    return round(cell.level / cell.max_level * m)


def loop_write_energy(applied_levels: float, i_c) -> float:
    """Energy to move ``applied_levels`` fluxons in/out of a storage loop."""
    current = si_value(i_c, CURRENT, "i_c")
    if current <= 0:
        raise DomainError("i_c must be positive")
    return abs(applied_levels) * current * FLUX_QUANTUM.value
