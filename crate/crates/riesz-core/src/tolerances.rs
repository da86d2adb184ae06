//! Numerical tolerances used across the crate and pinned by the
//! acceptance suite. Each constant records why its magnitude is safe.

/// Transform round trips and algebraic identities evaluated in a handful
/// of floating operations per entry. A few hundred ULPs above machine
/// epsilon; anything larger signals a convention mismatch, not roundoff.
pub const ROUND_TRIP: f64 = 1e-12;

/// Fast transform against the direct quadratic-time sum. The naive sum
/// accumulates O(size) roundoff on unnormalised coefficients, so this
/// sits two decades above `ROUND_TRIP`.
pub const NAIVE_DFT: f64 = 1e-10;

/// Spatial finite-difference operators against their frequency-side
/// symbols. Two transforms plus a pointwise product per check.
pub const OPERATOR_ORACLE: f64 = 1e-10;

/// Pointwise partition identity of the second-order Riesz symbols
/// (`sum_j symbol_j = -1` away from frequency zero).
pub const PARTITION: f64 = 1e-11;

/// Heat semigroup composition `P_s P_t = P_{s+t}` and kernel mass.
pub const SEMIGROUP: f64 = 1e-11;

/// Heat-kernel entries may round slightly negative; below this magnitude
/// the positivity invariant counts as violated rather than as noise.
pub const KERNEL_FLOOR: f64 = 1e-13;

/// Spectral heat flow against the classical fourth-order ODE integrator
/// at a step count far inside its stability region.
pub const ODE_ORACLE: f64 = 1e-8;

/// Quadrature-side pairing against the exact frequency-side pairing.
/// Dominated by the certified quadrature tail, not by roundoff.
pub const REPRESENTATION: f64 = 1e-8;

/// Slack on bilinear-inequality ratios: a ratio may exceed 1 by at most
/// this much before counting as a violation of the inequality.
pub const EMBEDDING_SLACK: f64 = 1e-7;

/// Slack on the operator-norm bound for search iterates. The bound is
/// proven; any excursion beyond this is a build-stopping bug.
pub const BOUND_SLACK: f64 = 1e-9;

/// Gap allowed between the `p = 2` search result and the exact
/// frequency-scan operator norm.
pub const TWO_NORM_GAP: f64 = 1e-3;

/// Search noise allowed when comparing best ratios across nested groups;
/// the underlying suprema are exactly monotone under refinement.
pub const REFINE_MONOTONE: f64 = 5e-3;

/// Golden constants for the three-term Choi expansion, frozen from an
/// extended-precision evaluation of the closed forms.
pub mod golden {
    /// `log((1 + e^{-2}) / 2)`.
    pub const LOG_HALF_ONE_PLUS_EXP_M2: f64 = -0.5662191695169728;

    /// `log^2((1+e^{-2})/2) + (1/2) log((1+e^{-2})/2) - 2 (e^{-2}/(1+e^{-2}))^2`.
    pub const BETA_2: f64 = 0.009075889932781911;

    /// Three-term expansion evaluated at `p = 4`.
    pub const CHOI_AT_4: f64 = 1.719159387724709;

    /// Three-term expansion evaluated at `p = 2`.
    pub const CHOI_AT_2: f64 = 0.7214283602079046;
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    #[allow(clippy::assertions_on_constants)] // documents the intended ordering
    fn tolerances_are_positive_and_ordered() {
        assert!(ROUND_TRIP > 0.0);
        assert!(
            ROUND_TRIP < NAIVE_DFT,
            "oracle checks tolerate more roundoff"
        );
        assert!(KERNEL_FLOOR < SEMIGROUP);
        assert!(
            SEMIGROUP < ODE_ORACLE,
            "the ODE oracle has truncation error"
        );
        assert!(REPRESENTATION <= ODE_ORACLE);
        assert!(BOUND_SLACK < EMBEDDING_SLACK);
        assert!(TWO_NORM_GAP < REFINE_MONOTONE);
    }
}
