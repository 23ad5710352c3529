"""Three-level atoms in a two-mode cavity.

Mean-field phase diagrams, symmetry-adapted variational states, exact
ground states in truncated Fock spaces, and quantum-information measures
(Uhlmann fidelity, fidelity susceptibility, entropies, simplex geometry).
"""

from ._core import (
    atom_basis,
    atom_basis_dim,
    boundaries,
    bures_distance,
    critical_couplings,
    critical_points,
    energy_surface,
    exact_ground,
    fidelity,
    fidelity_susceptibility,
    linear_entropy,
    mean_field_ground,
    min_fidelity_point,
    sas_minimum,
    separatrix,
    simplex_embed,
    triple_point,
    vn_entropy,
)

__all__ = [
    "atom_basis",
    "atom_basis_dim",
    "boundaries",
    "bures_distance",
    "critical_couplings",
    "critical_points",
    "energy_surface",
    "exact_ground",
    "fidelity",
    "fidelity_susceptibility",
    "linear_entropy",
    "mean_field_ground",
    "min_fidelity_point",
    "sas_minimum",
    "separatrix",
    "simplex_embed",
    "triple_point",
    "vn_entropy",
]
