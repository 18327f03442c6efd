"""Spherical-wavefront channel model and link analysis for THz intelligent reflecting surfaces."""

from .channel import (
    ChannelGrid,
    PhaseProfile,
    PlMode,
    ProfileKind,
    compose_rx_amplitude,
    far_field_rank_one,
    one_way_channel,
    snr_exact,
    steering_vector,
)
from .gain import (
    GainMethod,
    GainResult,
    beamfocus_profile,
    beamform_profile,
    dirichlet_sinc,
    fresnel_tx_distance,
    gain_closed_form,
    gain_fresnel_exactsum,
    normalized_gain,
)
from .geometry import (
    IrsGrid,
    Placement,
    Region,
    RegionBounds,
    cartesian_to_spherical,
    classify_region,
    element_distance,
    element_far_field_check,
    element_position,
    region_bounds,
    spherical_to_cartesian,
)
from .linkperf import (
    HardwareProfile,
    LinkGeometry,
    LinkReport,
    achievable_rate,
    ee_comparison,
    n_star,
    n_star_fixed_irs,
    n_star_max,
    power_consumption,
    snr_irs,
    snr_mimo,
)
from .scattering import (
    RfParams,
    ScatterAngles,
    element_path_loss,
    mimo_path_loss,
    path_loss_map,
    pattern_f,
    scattered_field_sq_approx,
    scattered_field_sq_exact,
    sinc,
)

__version__ = "0.1.0"
