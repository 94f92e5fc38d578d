"""Design-space models and a seeded discrete-event simulator for
optoelectronic spiking neural networks.

Two hardware families are covered end to end: superconducting links built
on single-photon detectors with fluxon-quantized loop memory, and
room-temperature semiconductor links built on receiverless photodiodes
with analog memory.  The package provides the closed-form link, cooling,
device-sizing, connectivity, and memory-benchmark models; a random-graph
generator with an exact path-length oracle; an event-driven network
simulator with a full energy ledger; and a CLI that evaluates formulas,
emits figure datasets, and runs scenarios reproducibly from a single seed.
"""

__version__ = "0.1.0"

from .quantities import CONSTANTS, Quantity, photon_energy, quantum_limited_responsivity

__all__ = [
    "CONSTANTS",
    "Quantity",
    "photon_energy",
    "quantum_limited_responsivity",
    "__version__",
]
