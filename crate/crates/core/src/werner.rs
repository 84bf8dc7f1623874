//! Coordinates of `U⊗U⊗U`-invariant states and the maps between points and
//! density matrices.

use std::fmt;

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::config::Tolerances;
use crate::error::{Error, Result};
use crate::perm::{permute_index, Perm, RBasis, RLabel};
use crate::tensor::{
    eigvals_hermitian, haar_random_unitary, hermitian_deviation, kron, trace, trace_product,
    CMatrix, PureVector,
};

/// The five independent coordinates `r_k = tr(ρR_k)`, with
/// `r₀ = 1 − r₊ − r₋` implied.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WernerPoint {
    pub r_plus: f64,
    pub r_minus: f64,
    pub r1: f64,
    pub r2: f64,
    pub r3: f64,
}

impl WernerPoint {
    pub const fn new(r_plus: f64, r_minus: f64, r1: f64, r2: f64, r3: f64) -> Self {
        Self {
            r_plus,
            r_minus,
            r1,
            r2,
            r3,
        }
    }

    /// From `[r₊, r₋, r₁, r₂, r₃]`.
    pub fn from_array(a: [f64; 5]) -> Self {
        Self::new(a[0], a[1], a[2], a[3], a[4])
    }

    pub fn to_array(&self) -> [f64; 5] {
        [self.r_plus, self.r_minus, self.r1, self.r2, self.r3]
    }

    pub fn r0(&self) -> f64 {
        1.0 - self.r_plus - self.r_minus
    }

    /// Euclidean length of `(r₁, r₂, r₃)`.
    pub fn bloch_radius(&self) -> f64 {
        (self.r1 * self.r1 + self.r2 * self.r2 + self.r3 * self.r3).sqrt()
    }

    pub fn max_abs_diff(&self, other: &WernerPoint) -> f64 {
        self.to_array()
            .iter()
            .zip(other.to_array())
            .fold(0.0f64, |acc, (a, b)| acc.max((a - b).abs()))
    }

    /// `(1 − t)·self + t·other`.
    pub fn lerp(&self, other: &WernerPoint, t: f64) -> WernerPoint {
        let a = self.to_array();
        let b = other.to_array();
        WernerPoint::from_array([0, 1, 2, 3, 4].map(|i| (1.0 - t) * a[i] + t * b[i]))
    }

    /// Smallest slack among the state-space inequalities; nonnegative iff
    /// the point is a state (ignoring the qubit constraint on `r₋`).
    pub fn validity_margin(&self) -> f64 {
        let r0 = self.r0();
        let ball = r0 * r0 - (self.r1 * self.r1 + self.r2 * self.r2 + self.r3 * self.r3);
        self.r_plus.min(self.r_minus).min(r0).min(ball)
    }

    /// Parses `"r+,r-,r1,r2,r3"`.
    pub fn parse_csv(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        if parts.len() != 5 {
            return Err(Error::Parse(format!(
                "expected 5 comma-separated reals, got {}",
                parts.len()
            )));
        }
        let mut vals = [0.0f64; 5];
        for (v, p) in vals.iter_mut().zip(&parts) {
            *v = p
                .parse()
                .map_err(|_| Error::Parse(format!("not a real number: {p:?}")))?;
            if !v.is_finite() {
                return Err(Error::Parse(format!("not a finite number: {p:?}")));
            }
        }
        Ok(Self::from_array(vals))
    }
}

impl fmt::Display for WernerPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {}, {}, {}, {})",
            self.r_plus, self.r_minus, self.r1, self.r2, self.r3
        )
    }
}

/// Relabeling of the three sites by a permutation, acting on states as
/// `ρ ↦ V_π ρ V_π†`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SiteRelabeling(pub Perm);

impl SiteRelabeling {
    pub const ALL: [SiteRelabeling; 6] = [
        SiteRelabeling(Perm::Identity),
        SiteRelabeling(Perm::Swap12),
        SiteRelabeling(Perm::Swap23),
        SiteRelabeling(Perm::Swap31),
        SiteRelabeling(Perm::Cycle123),
        SiteRelabeling(Perm::Cycle321),
    ];

    /// `self` after `other`.
    pub fn compose(self, other: SiteRelabeling) -> SiteRelabeling {
        SiteRelabeling(self.0.compose(other.0))
    }

    /// Linear action on `(r₁, r₂, r₃)`; rows are the new coordinates.
    pub fn matrix(self) -> [[f64; 3]; 3] {
        const H: f64 = 0.5;
        const S: f64 = 0.866_025_403_784_438_6; // √3/2
        match self.0 {
            Perm::Identity => [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]],
            Perm::Swap23 => [[1.0, 0.0, 0.0], [0.0, -1.0, 0.0], [0.0, 0.0, -1.0]],
            Perm::Swap12 => [[-H, -S, 0.0], [-S, H, 0.0], [0.0, 0.0, -1.0]],
            Perm::Swap31 => [[-H, S, 0.0], [S, H, 0.0], [0.0, 0.0, -1.0]],
            Perm::Cycle123 => [[-H, S, 0.0], [-S, -H, 0.0], [0.0, 0.0, 1.0]],
            Perm::Cycle321 => [[-H, -S, 0.0], [S, -H, 0.0], [0.0, 0.0, 1.0]],
        }
    }
}

/// Whether `p` is a density matrix for local dimension `d`.
pub fn is_valid_state(p: &WernerPoint, d: usize, tol: &Tolerances) -> bool {
    if d < 2 {
        return false;
    }
    let eps = tol.criterion;
    if p.validity_margin() < -eps {
        return false;
    }
    // R₋ = 0 for qubits
    d > 2 || p.r_minus <= eps
}

/// The unique `U⊗U⊗U`-invariant density matrix with coordinates `p`.
pub fn point_to_density_matrix(p: &WernerPoint, d: usize, tol: &Tolerances) -> Result<CMatrix> {
    if d < 2 {
        return Err(Error::DimensionTooSmall { min: 2, got: d });
    }
    if !is_valid_state(p, d, tol) {
        return Err(Error::InvalidPoint(p.to_string()));
    }
    Ok(point_to_operator(p, &RBasis::new(d)))
}

/// Same linear map as [`point_to_density_matrix`] without validity checks.
pub fn point_to_operator(p: &WernerPoint, basis: &RBasis) -> CMatrix {
    let d = basis.dim();
    let t0 = RLabel::Zero.trace(d);
    let mut rho = basis
        .get(RLabel::Plus)
        .scale(p.r_plus / RLabel::Plus.trace(d));
    if d > 2 {
        rho += basis
            .get(RLabel::Minus)
            .scale(p.r_minus / RLabel::Minus.trace(d));
    }
    rho += basis.get(RLabel::Zero).scale(p.r0() / t0);
    rho += basis.get(RLabel::One).scale(p.r1 / t0);
    rho += basis.get(RLabel::Two).scale(p.r2 / t0);
    rho += basis.get(RLabel::Three).scale(p.r3 / t0);
    rho
}

/// `r_k = tr(ρR_k)` for a density matrix.
pub fn density_matrix_to_point(rho: &CMatrix, d: usize, tol: &Tolerances) -> Result<WernerPoint> {
    let n = d * d * d;
    if rho.nrows() != n || rho.ncols() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: rho.nrows(),
        });
    }
    let dev = hermitian_deviation(rho);
    if dev > tol.structural {
        return Err(Error::NotAState(format!(
            "not Hermitian (deviation {dev:.3e})"
        )));
    }
    let tr = trace(rho);
    if (tr - Complex64::new(1.0, 0.0)).norm() > tol.spectral {
        return Err(Error::NotAState(format!("trace {tr} ≠ 1")));
    }
    let min = eigvals_hermitian(rho, tol.structural)?[0];
    if min < -tol.spectral {
        return Err(Error::NotAState(format!("negative eigenvalue {min:.3e}")));
    }
    Ok(operator_coordinates(rho, &RBasis::new(d)))
}

/// `tr(XR_k)` for an arbitrary operator, real parts only.
pub fn operator_coordinates(x: &CMatrix, basis: &RBasis) -> WernerPoint {
    WernerPoint::from_array(RLabel::COORDINATES.map(|k| trace_product(x, basis.get(k)).re))
}

/// Coordinates of `|ψ⟩⟨ψ|` through the expectations `⟨ψ|V_π|ψ⟩`.
pub fn pure_state_to_point(psi: &PureVector, d: usize) -> Result<WernerPoint> {
    let n = d * d * d;
    if psi.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: psi.dim(),
        });
    }
    let v = psi.as_vector();
    let mut expect = [Complex64::new(0.0, 0.0); 6];
    for p in Perm::ALL {
        let mut acc = Complex64::new(0.0, 0.0);
        for idx in 0..n {
            acc += v[permute_index(p, d, idx)].conj() * v[idx];
        }
        expect[p.index()] = acc;
    }
    let coord = |k: RLabel| {
        let x = k.expansion();
        Perm::ALL
            .iter()
            .map(|&p| x.coeff(p) * expect[p.index()])
            .sum::<Complex64>()
            .re
    };
    Ok(WernerPoint::from_array(RLabel::COORDINATES.map(coord)))
}

/// Exact twirl: project onto the invariant family.
pub fn exact_twirl(rho: &CMatrix, d: usize) -> CMatrix {
    let basis = RBasis::new(d);
    point_to_operator(&operator_coordinates(rho, &basis), &basis)
}

/// Average of `(U⊗U⊗U)ρ(U⊗U⊗U)†` over `n_samples` Haar unitaries.
pub fn twirl_monte_carlo<R: Rng + ?Sized>(
    rho: &CMatrix,
    d: usize,
    n_samples: usize,
    rng: &mut R,
) -> Result<CMatrix> {
    let n = d * d * d;
    if rho.nrows() != n || rho.ncols() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: rho.nrows(),
        });
    }
    if n_samples == 0 {
        return Err(Error::Parse("twirl needs at least one sample".into()));
    }
    let mut acc = CMatrix::zeros(n, n);
    for _ in 0..n_samples {
        let u = haar_random_unitary(d, rng);
        let w = kron(&u, &kron(&u, &u));
        acc += &w * rho * w.adjoint();
    }
    Ok(acc.unscale(n_samples as f64))
}

/// Coordinates of `V_π ρ V_π†`.
pub fn relabel_point(p: &WernerPoint, s: SiteRelabeling) -> WernerPoint {
    let m = s.matrix();
    let v = [p.r1, p.r2, p.r3];
    let row = |i: usize| m[i][0] * v[0] + m[i][1] * v[1] + m[i][2] * v[2];
    WernerPoint::new(p.r_plus, p.r_minus, row(0), row(1), row(2))
}

/// Mean over the six site relabelings.
pub fn permutation_average(p: &WernerPoint) -> WernerPoint {
    let mut acc = [0.0; 5];
    for s in SiteRelabeling::ALL {
        for (a, x) in acc.iter_mut().zip(relabel_point(p, s).to_array()) {
            *a += x;
        }
    }
    WernerPoint::from_array(acc.map(|x| x / 6.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::{perm_operator, PermutationExpansion};
    use crate::tensor::{hermitian_operator_norm, random_pure_state, seeded_rng};
    use rand_chacha::ChaCha8Rng;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    fn random_valid_point(rng: &mut ChaCha8Rng, with_minus: bool) -> WernerPoint {
        loop {
            let rp: f64 = rng.random();
            let rm: f64 = if with_minus { rng.random() } else { 0.0 };
            if rp + rm > 1.0 {
                continue;
            }
            let r0 = 1.0 - rp - rm;
            let v = random_pure_state(3, rng);
            let dir = [
                v.as_vector()[0].re,
                v.as_vector()[1].re,
                v.as_vector()[2].re,
            ];
            let len = dir.iter().map(|x| x * x).sum::<f64>().sqrt();
            if len < 1e-6 {
                continue;
            }
            let rad = r0 * rng.random::<f64>().cbrt() / len;
            return WernerPoint::new(rp, rm, dir[0] * rad, dir[1] * rad, dir[2] * rad);
        }
    }

    #[test]
    fn validity_examples() {
        let t = tol();
        assert!(is_valid_state(
            &WernerPoint::new(1.0, 0.0, 0.0, 0.0, 0.0),
            2,
            &t
        ));
        assert!(!is_valid_state(
            &WernerPoint::new(0.4, 0.4, 0.3, 0.0, 0.0),
            3,
            &t
        ));
        let a = WernerPoint::new(1.0 / 6.0, 1.0 / 6.0, 0.0, 0.0, 0.0);
        assert!(!is_valid_state(&a, 2, &t));
        assert!(is_valid_state(&a, 3, &t));
    }

    #[test]
    fn validity_does_not_depend_on_dimension_above_two() {
        let mut rng = seeded_rng(40);
        let t = tol();
        for _ in 0..500 {
            let mut p = random_valid_point(&mut rng, true);
            // push some points outside the ball
            p.r1 *= 1.0 + rng.random::<f64>();
            for d in 4..=6 {
                assert_eq!(is_valid_state(&p, 3, &t), is_valid_state(&p, d, &t));
            }
        }
    }

    #[test]
    fn symmetric_vertex_reconstructs_to_normalized_projector() {
        let t = tol();
        let rho =
            point_to_density_matrix(&WernerPoint::new(1.0, 0.0, 0.0, 0.0, 0.0), 2, &t).unwrap();
        let vals = eigvals_hermitian(&rho, 1e-12).unwrap();
        assert!(vals[0] >= -1e-9);
        let nonzero: Vec<_> = vals.iter().filter(|v| v.abs() > 1e-9).collect();
        assert_eq!(nonzero.len(), 4);
        assert!(nonzero.iter().all(|v| (**v - 0.25).abs() < 1e-12));
        let back = density_matrix_to_point(&rho, 2, &t).unwrap();
        assert!(back.max_abs_diff(&WernerPoint::new(1.0, 0.0, 0.0, 0.0, 0.0)) < 1e-12);
    }

    #[test]
    fn point_matrix_roundtrip() {
        let t = tol();
        let mut rng = seeded_rng(41);
        for d in 2..=3 {
            for _ in 0..100 {
                let p = random_valid_point(&mut rng, d > 2);
                let rho = point_to_density_matrix(&p, d, &t).unwrap();
                let back = density_matrix_to_point(&rho, d, &t).unwrap();
                assert!(back.max_abs_diff(&p) < 1e-12, "d={d} {p} -> {back}");
            }
        }
    }

    #[test]
    fn boundary_points_have_zero_eigenvalue() {
        let t = tol();
        let mut rng = seeded_rng(42);
        for d in 2..=3 {
            for _ in 0..50 {
                let mut p = random_valid_point(&mut rng, d > 2);
                let scale = p.r0() / p.bloch_radius();
                p.r1 *= scale;
                p.r2 *= scale;
                p.r3 *= scale;
                let rho = point_to_density_matrix(&p, d, &t).unwrap();
                let min = eigvals_hermitian(&rho, 1e-12).unwrap()[0];
                assert!(min.abs() <= 1e-9, "d={d} min eig {min}");
            }
            let p = WernerPoint::new(0.2, if d > 2 { 0.1 } else { 0.0 }, 0.1, 0.0, 0.0);
            let rho = point_to_density_matrix(&p, d, &t).unwrap();
            assert!(eigvals_hermitian(&rho, 1e-12).unwrap()[0] > 1e-3);
        }
        let p = WernerPoint::new(0.3, 0.1, 0.6, 0.0, 0.0);
        let rho = point_to_density_matrix(&p, 3, &t).unwrap();
        assert!(eigvals_hermitian(&rho, 1e-12).unwrap()[0].abs() <= 1e-9);
    }

    #[test]
    fn invalid_points_are_rejected() {
        let t = tol();
        assert!(matches!(
            point_to_density_matrix(&WernerPoint::new(0.4, 0.4, 0.3, 0.0, 0.0), 3, &t),
            Err(Error::InvalidPoint(_))
        ));
        let bad = CMatrix::identity(8, 8);
        assert!(matches!(
            density_matrix_to_point(&bad, 2, &t),
            Err(Error::NotAState(_))
        ));
    }

    #[test]
    fn maximally_mixed_coordinates() {
        let t = tol();
        let rho = CMatrix::identity(8, 8).unscale(8.0);
        let p = density_matrix_to_point(&rho, 2, &t).unwrap();
        assert!(p.max_abs_diff(&WernerPoint::new(0.5, 0.0, 0.0, 0.0, 0.0)) < 1e-12);
        let rho = CMatrix::identity(27, 27).unscale(27.0);
        let p = density_matrix_to_point(&rho, 3, &t).unwrap();
        assert!(p.max_abs_diff(&WernerPoint::new(10.0 / 27.0, 1.0 / 27.0, 0.0, 0.0, 0.0)) < 1e-12);
    }

    #[test]
    fn pure_state_route_matches_matrix_route() {
        let t = tol();
        let mut rng = seeded_rng(43);
        for d in 2..=3 {
            for _ in 0..20 {
                let psi = random_pure_state(d * d * d, &mut rng);
                let a = pure_state_to_point(&psi, d).unwrap();
                let b = density_matrix_to_point(&psi.projector(), d, &t).unwrap();
                assert!(a.max_abs_diff(&b) < 1e-12);
            }
        }
    }

    #[test]
    fn exact_twirl_is_idempotent_projection() {
        let t = tol();
        let mut rng = seeded_rng(44);
        let d = 3;
        let psi = random_pure_state(27, &mut rng);
        let once = exact_twirl(&psi.projector(), d);
        let twice = exact_twirl(&once, d);
        assert!(hermitian_operator_norm(&(&once - &twice), 1e-12).unwrap() < 1e-12);
        assert!((trace(&once).re - 1.0).abs() < 1e-12);
        assert!(eigvals_hermitian(&once, 1e-12).unwrap()[0] >= -1e-12);
        // commutes with every U⊗U⊗U
        let u = haar_random_unitary(d, &mut rng);
        let w = kron(&u, &kron(&u, &u));
        let comm = &w * &once - &once * &w;
        assert!(comm.iter().all(|z| z.norm() < 1e-12));
        let _ = density_matrix_to_point(&once, d, &t).unwrap();
    }

    #[test]
    fn monte_carlo_twirl_fixes_invariant_states() {
        let t = tol();
        let mut rng = seeded_rng(45);
        let p = WernerPoint::new(0.3, 0.0, 0.2, -0.1, 0.05);
        let rho = point_to_density_matrix(&p, 2, &t).unwrap();
        let out = twirl_monte_carlo(&rho, 2, 50, &mut rng).unwrap();
        assert!(hermitian_operator_norm(&(&out - &rho), 1e-12).unwrap() < 1e-12);
        assert!((trace(&out).re - 1.0).abs() < 1e-12);
    }

    #[test]
    fn monte_carlo_twirl_converges_to_exact_twirl() {
        let t = tol();
        let mut rng = seeded_rng(46);
        let psi = PureVector::basis(8, 0); // |111⟩
        let out = twirl_monte_carlo(&psi.projector(), 2, 10_000, &mut rng).unwrap();
        let target =
            point_to_density_matrix(&WernerPoint::new(1.0, 0.0, 0.0, 0.0, 0.0), 2, &t).unwrap();
        let err = hermitian_operator_norm(&(&out - &target), 1e-10).unwrap();
        assert!(err < 2e-2, "operator-norm error {err}");
        let coords = density_matrix_to_point(&out, 2, &t).unwrap();
        assert!(coords.max_abs_diff(&WernerPoint::new(1.0, 0.0, 0.0, 0.0, 0.0)) < 1e-12);
    }

    #[test]
    fn twirled_random_state_keeps_its_coordinates() {
        let t = tol();
        let mut rng = seeded_rng(47);
        let d = 2;
        let psi = random_pure_state(8, &mut rng);
        let rho = psi.projector();
        let before = density_matrix_to_point(&rho, d, &t).unwrap();
        let after =
            density_matrix_to_point(&twirl_monte_carlo(&rho, d, 200, &mut rng).unwrap(), d, &t)
                .unwrap();
        // each conjugation preserves the coordinates exactly
        assert!(before.max_abs_diff(&after) < 1e-12);
    }

    fn identity_coefficient(x: &PermutationExpansion) -> Complex64 {
        x.coeff(Perm::Identity)
    }

    #[test]
    fn relabel_table_matches_group_algebra() {
        // r'_i = tr(ρ V†R_iV); in the group algebra τ(R_iR_j) = (2/3)δ_ij
        let pauli = [RLabel::One, RLabel::Two, RLabel::Three];
        for s in SiteRelabeling::ALL {
            let m = s.matrix();
            for (i, &ri) in pauli.iter().enumerate() {
                let conj = ri.expansion().conjugate_by(s.0.inverse());
                for (j, &rj) in pauli.iter().enumerate() {
                    let entry = identity_coefficient(&conj.mul(&rj.expansion())) * 1.5;
                    assert!(entry.im.abs() < 1e-15);
                    assert!((entry.re - m[i][j]).abs() < 1e-15, "{} [{i}][{j}]", s.0);
                }
            }
        }
    }

    #[test]
    fn relabel_matches_matrix_conjugation() {
        let t = tol();
        let d = 3;
        let basis = RBasis::new(d);
        let mut rng = seeded_rng(48);
        for _ in 0..100 {
            let p = random_valid_point(&mut rng, true);
            let rho = point_to_operator(&p, &basis);
            for s in SiteRelabeling::ALL {
                let v = perm_operator(s.0, d);
                let conj = &v * &rho * v.adjoint();
                let oracle = operator_coordinates(&conj, &basis);
                assert!(
                    relabel_point(&p, s).max_abs_diff(&oracle) < 1e-12,
                    "{}",
                    s.0
                );
            }
        }
        let _ = t;
    }

    #[test]
    fn relabel_is_a_group_action() {
        let p = WernerPoint::new(0.3, 0.1, 0.2, -0.1, 0.05);
        for s in SiteRelabeling::ALL {
            for u in SiteRelabeling::ALL {
                let lhs = relabel_point(&relabel_point(&p, s), u);
                let rhs = relabel_point(&p, u.compose(s));
                assert!(lhs.max_abs_diff(&rhs) < 1e-15);
            }
        }
    }

    #[test]
    fn relabel_fixed_sets() {
        let swap = SiteRelabeling(Perm::Swap23);
        let cycle = SiteRelabeling(Perm::Cycle123);
        let mut rng = seeded_rng(49);
        for _ in 0..200 {
            let p = random_valid_point(&mut rng, true);
            let fixed = |s| relabel_point(&p, s).max_abs_diff(&p) < 1e-12;
            assert!(!fixed(swap));
            assert!(!fixed(cycle));
            let q = WernerPoint {
                r2: 0.0,
                r3: 0.0,
                ..p
            };
            assert!(relabel_point(&q, swap).max_abs_diff(&q) < 1e-15);
            let q = WernerPoint {
                r1: 0.0,
                r2: 0.0,
                ..p
            };
            assert!(relabel_point(&q, cycle).max_abs_diff(&q) < 1e-15);
        }
    }

    #[test]
    fn permutation_average_examples() {
        let p = WernerPoint::new(0.3, 0.1, 0.2, -0.1, 0.05);
        let avg = permutation_average(&p);
        assert!(avg.max_abs_diff(&WernerPoint::new(0.3, 0.1, 0.0, 0.0, 0.0)) < 1e-15);
        let q = WernerPoint::new(0.3, 0.1, 0.0, 0.0, 0.0);
        assert!(permutation_average(&q).max_abs_diff(&q) < 1e-15);

        let d = 3;
        let basis = RBasis::new(d);
        let rho = point_to_operator(&p, &basis);
        let mut acc = CMatrix::zeros(27, 27);
        for s in Perm::ALL {
            let v = perm_operator(s, d);
            acc += &v * &rho * v.adjoint();
        }
        let oracle = operator_coordinates(&acc.unscale(6.0), &basis);
        assert!(avg.max_abs_diff(&oracle) < 1e-12);
    }

    #[test]
    fn parse_point() {
        let p = WernerPoint::parse_csv("0.2, 0,0,0,-1e-3").unwrap();
        assert_eq!(p, WernerPoint::new(0.2, 0.0, 0.0, 0.0, -1e-3));
        assert!(WernerPoint::parse_csv("0.2,0,0").is_err());
        assert!(WernerPoint::parse_csv("a,0,0,0,0").is_err());
        assert!(WernerPoint::parse_csv("nan,0,0,0,0").is_err());
    }

    #[test]
    fn json_field_names() {
        let p = WernerPoint::new(0.2, 0.0, 0.1, 0.0, 0.0);
        let v: serde_json::Value = serde_json::to_value(p).unwrap();
        for key in ["r_plus", "r_minus", "r1", "r2", "r3"] {
            assert!(v.get(key).is_some());
        }
        let back: WernerPoint = serde_json::from_value(v).unwrap();
        assert_eq!(back, p);
    }
}
