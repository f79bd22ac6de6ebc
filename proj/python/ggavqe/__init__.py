"""Python front end for the ggavqe C++ core.

Drivers return the same JSON trace the CLI writes, parsed into a dict.
"""

import json

from ._core import (
    Ansatz,
    Generator,
    InitialState,
    PauliSum,
    Pool,
    apply_generator,
    expectation,
    general_chain,
    ground_state,
    ising,
    ising_plan,
    landscape,
    molecular,
)
from . import _core


def run(driver, hamiltonian, pool, initial, **kwargs):
    """Run gga, adapt or gga2d and return the trace as a dict."""
    return json.loads(_core.run_energy(driver, hamiltonian, pool, initial, **kwargs))


def run_overlap(target, pool, initial, **kwargs):
    """Greedily grow an ansatz towards `target` (an Ansatz or its text form)."""
    if isinstance(target, str):
        target = Ansatz.parse(target)
    return json.loads(_core.run_overlap(target, pool, initial, **kwargs))


__all__ = [
    "Ansatz",
    "Generator",
    "InitialState",
    "PauliSum",
    "Pool",
    "apply_generator",
    "expectation",
    "general_chain",
    "ground_state",
    "ising",
    "ising_plan",
    "landscape",
    "molecular",
    "run",
    "run_overlap",
]
