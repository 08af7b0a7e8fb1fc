"""Slope gap statistics of saddle connections on the golden L.

Exact golden-field arithmetic, lattice enumeration, the first-return section
map with its renormalized periodic starts, the closed-form limiting gap
distribution with numeric oracles, and the statistics tying the two together.
"""

from .analytic import (
    MEAN_GAP,
    VolumeReport,
    area_oracle,
    ath,
    breakpoints,
    cdf_partial,
    dilog,
    gap_cdf,
    gap_pdf,
    mean_gap_quadrature,
    pdf_kink_report,
    pdf_normalization,
    pdf_partial,
    rfun,
    tail_constant,
    volumes,
    zone_pieces,
)
from .bcz import (
    GUARD,
    InternalInvariantError,
    OrbitTrace,
    SectionPoint,
    Zone,
    apply_map,
    classify,
    gaps_via_bcz,
    in_omega,
    invert_map,
    normalization_k,
    orbit,
    orbit_period,
    return_time,
    section_point_for_radius,
)
from .field import PHI, PHI_BAR, GoldenMatrix, GoldenNumber, GoldenVector
from .lattice import (
    GapSample,
    SlopeSet,
    enumerate_vectors,
    gaps_direct,
    slopes,
    veech_generators,
)
from .stats import (
    EmpiricalCdf,
    Histogram,
    HSpacingQuery,
    HSpacingResult,
    empirical_cdf,
    h_spacing_mc,
    ks_distance,
    pushforward_chi_square,
    sample_omega,
    slopes_from_gaps,
    uniformity_test,
)

__version__ = "0.1.0"
