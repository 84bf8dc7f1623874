/// Numerical tolerances shared by every module.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Exact algebraic identities, Hermiticity and unit norms.
    pub structural: f64,
    /// Eigenvalue sums, reconstructions and PSD checks.
    pub spectral: f64,
    /// Slack applied to every closed-form criterion inequality.
    pub criterion: f64,
    /// Phase-1 residual below which a hull problem counts as feasible.
    pub hull: f64,
    /// Margin band around a criterion boundary inside which oracle and
    /// closed-form answers may disagree.
    pub boundary_band: f64,
    /// Number of standard deviations allowed for Monte-Carlo estimates.
    pub mc_sigmas: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            structural: 1e-12,
            spectral: 1e-9,
            criterion: 1e-10,
            hull: 1e-8,
            boundary_band: 1e-8,
            mc_sigmas: 5.0,
        }
    }
}
