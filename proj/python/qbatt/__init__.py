"""Collision-model quantum battery toolkit.

Exact stochastic thermodynamics of a quantum battery charged by a repeated
interaction process: transition matrices, ergotropy/passive-state cycle
reports, and two-point-measurement distributions of work, heat, energy, and
fluctuating efficiency.
"""

from ._qbatt import (
    CycleReport,
    Model,
    efficiency_probs_1q,
    efficiency_probs_2q,
    g_factor,
    load_model,
    model_1q,
    model_2q,
    model_thermal_1q,
    t1q_closed_form,
    t2q_closed_form,
    t_thermal_closed_form,
    __version__,
)

__all__ = [
    "CycleReport",
    "Model",
    "efficiency_probs_1q",
    "efficiency_probs_2q",
    "g_factor",
    "load_model",
    "model_1q",
    "model_2q",
    "model_thermal_1q",
    "t1q_closed_form",
    "t2q_closed_form",
    "t_thermal_closed_form",
    "__version__",
]
