//! The limiting logarithmic distribution rebuilt from zeros.

mod bessel;
mod chebyshev;
mod compare;
mod delta;
mod fourier;
mod sampling;
mod spectrum;

pub use bessel::{bessel_j0, SERIES_LIMIT};
pub use chebyshev::{chebyshev_bound, BoundSide, ChebyshevBound};
pub use compare::{compare_empirical, pearson, Comparison, DEFAULT_POINTS};
pub use delta::{delta_estimate, DeltaEstimate, DeltaParams};
pub use fourier::{
    decay_bound, delta_by_inversion, delta_by_inversion_spectrum, density_by_inversion,
    fourier_hat, fourier_hat_spectrum, hat_at, t_grid_through_zero, trapezoid, truncation_xi,
    xi_grid, DensityProfile, FourierDelta, FourierProfile, DECAY_TARGET, MASS_GATE,
    MIN_ORDINATES, PHASE_STEP, XI_CAP,
};
pub use sampling::{
    empirical_cf, li_draws, sample_li, sample_li_spectrum, sample_time_average, DeltaMethod,
    DistributionSummary, Histogram, HISTOGRAM_BINS, RNG_NAME, SHARD_SIZE,
};
pub use spectrum::{cos_turns, CosTurns, SpectralTerm, Spectrum};
