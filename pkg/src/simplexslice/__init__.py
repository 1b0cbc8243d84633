"""Central sections of the regular simplex through zero-phase contour integration."""

from .contour import domain, eval_f_tilde, solve_y, trace, y_v_closed
from .density import (
    DensityEstimate,
    IntegrationConfig,
    density_contour,
    density_monte_carlo,
    density_partial_fractions,
    density_realaxis,
    residue_reference,
    section_volume,
)
from .direction import (
    DirectionVector,
    as_direction,
    canonicalize,
    facet_density,
    facet_direction,
    facet_section_volume,
    simplex_volume,
    validate_unit,
    volume_lower_bound,
)

__version__ = "0.1.0"
