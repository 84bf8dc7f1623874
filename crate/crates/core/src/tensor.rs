//! Dense complex linear algebra used throughout the crate.
//!
//! Matrices are stored dense. The largest operators handled here act on
//! `(C^d)^{⊗3}` with `d ≤ 6`, i.e. at most 216×216.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;

/// Deterministic generator used for every seeded operation.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A unit vector in `C^dim`.
#[derive(Debug, Clone, PartialEq)]
pub struct PureVector(CVector);

impl PureVector {
    /// Normalizes `v`. Fails on the zero vector.
    pub fn new(v: CVector) -> Result<Self> {
        let norm = v.norm();
        if !norm.is_finite() || norm <= 0.0 {
            return Err(Error::Parse("cannot normalize a zero vector".into()));
        }
        Ok(Self(v.unscale(norm)))
    }

    /// Builds a vector from `(amplitude, basis index)` terms and normalizes.
    pub fn from_terms(dim: usize, terms: &[(Complex64, usize)]) -> Result<Self> {
        let mut v = CVector::zeros(dim);
        for &(amp, idx) in terms {
            if idx >= dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: idx + 1,
                });
            }
            v[idx] += amp;
        }
        Self::new(v)
    }

    pub fn basis(dim: usize, idx: usize) -> Self {
        let mut v = CVector::zeros(dim);
        v[idx] = Complex64::new(1.0, 0.0);
        Self(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn as_vector(&self) -> &CVector {
        &self.0
    }

    pub fn into_vector(self) -> CVector {
        self.0
    }

    /// `⟨self|other⟩`, antilinear in `self`.
    pub fn inner(&self, other: &PureVector) -> Complex64 {
        self.0.dotc(&other.0)
    }

    pub fn tensor(&self, other: &PureVector) -> PureVector {
        PureVector(self.0.kronecker(&other.0))
    }

    /// `|ψ⟩⟨ψ|`.
    pub fn projector(&self) -> CMatrix {
        &self.0 * self.0.adjoint()
    }

    /// Amplitudes as `[re₀, im₀, re₁, im₁, ...]`.
    pub fn interleaved(&self) -> Vec<f64> {
        self.0.iter().flat_map(|z| [z.re, z.im]).collect()
    }

    pub fn from_interleaved(values: &[f64]) -> Result<Self> {
        if !values.len().is_multiple_of(2) || values.is_empty() {
            return Err(Error::Parse(
                "interleaved amplitudes need an even, nonzero length".into(),
            ));
        }
        let v = CVector::from_iterator(
            values.len() / 2,
            values.chunks(2).map(|c| Complex64::new(c[0], c[1])),
        );
        Self::new(v)
    }
}

impl Serialize for PureVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.interleaved().serialize(s)
    }
}

impl<'de> Deserialize<'de> for PureVector {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let values = Vec::<f64>::deserialize(d)?;
        PureVector::from_interleaved(&values).map_err(serde::de::Error::custom)
    }
}

/// Kronecker product `a ⊗ b`.
pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kronecker(b)
}

/// Partial transpose over the first factor of `C^{d_first} ⊗ C^{d_rest}`.
///
/// Entry `((i,k),(j,l))` moves to `((j,k),(i,l))`.
pub fn partial_transpose_first(m: &CMatrix, d_first: usize, d_rest: usize) -> Result<CMatrix> {
    let n = d_first * d_rest;
    check_square(m, n)?;
    Ok(CMatrix::from_fn(n, n, |row, col| {
        let (j, k) = (row / d_rest, row % d_rest);
        let (i, l) = (col / d_rest, col % d_rest);
        m[(i * d_rest + k, j * d_rest + l)]
    }))
}

/// Partial transpose of one site (`0`, `1` or `2`) of `(C^d)^{⊗3}`.
pub fn partial_transpose_site(m: &CMatrix, d: usize, site: usize) -> Result<CMatrix> {
    let n = d * d * d;
    check_square(m, n)?;
    if site > 2 {
        return Err(Error::Parse(format!("site index {site} out of range")));
    }
    let stride = d.pow(2 - site as u32);
    Ok(CMatrix::from_fn(n, n, |row, col| {
        let a = (row / stride) % d;
        let b = (col / stride) % d;
        // swap the site digit between row and column
        let src_row = row - a * stride + b * stride;
        let src_col = col - b * stride + a * stride;
        m[(src_row, src_col)]
    }))
}

/// Largest entrywise deviation `max |M − M†|`.
pub fn hermitian_deviation(m: &CMatrix) -> f64 {
    let n = m.nrows();
    let mut dev = 0.0f64;
    for i in 0..n {
        for j in i..n {
            dev = dev.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    dev
}

/// Real eigenvalues of a Hermitian matrix, ascending.
///
/// The input is symmetrized as `(M + M†)/2` after checking that it is
/// Hermitian to within `tol` (scaled by the largest entry when that exceeds 1).
pub fn eigvals_hermitian(m: &CMatrix, tol: f64) -> Result<Vec<f64>> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch {
            expected: m.nrows(),
            got: m.ncols(),
        });
    }
    let scale = m.iter().map(|z| z.norm()).fold(1.0f64, f64::max);
    let deviation = hermitian_deviation(m);
    if deviation > tol * scale {
        return Err(Error::NotHermitian { deviation });
    }
    let sym = (m + m.adjoint()).scale(0.5);
    let mut vals: Vec<f64> = sym.symmetric_eigenvalues().iter().copied().collect();
    vals.sort_by(f64::total_cmp);
    Ok(vals)
}

/// Haar-distributed unitary via QR of a complex Ginibre matrix.
///
/// The phases of `R`'s diagonal are divided into `Q` so the result is exactly
/// Haar rather than biased by the QR sign convention.
pub fn haar_random_unitary<R: Rng + ?Sized>(d: usize, rng: &mut R) -> CMatrix {
    let ginibre = CMatrix::from_fn(d, d, |_, _| gaussian_complex(rng));
    let qr = ginibre.qr();
    let (mut q, r) = qr.unpack();
    for j in 0..d {
        let diag = r[(j, j)];
        let phase = if diag.norm() > 0.0 {
            diag / diag.norm()
        } else {
            Complex64::new(1.0, 0.0)
        };
        for i in 0..d {
            q[(i, j)] *= phase;
        }
    }
    q
}

/// Uniformly distributed unit vector in `C^d`.
pub fn random_pure_state<R: Rng + ?Sized>(d: usize, rng: &mut R) -> PureVector {
    loop {
        let v = CVector::from_fn(d, |_, _| gaussian_complex(rng));
        if let Ok(p) = PureVector::new(v) {
            return p;
        }
    }
}

fn gaussian_complex<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

/// Spectral norm of a Hermitian matrix.
pub fn hermitian_operator_norm(m: &CMatrix, tol: f64) -> Result<f64> {
    let vals = eigvals_hermitian(m, tol)?;
    Ok(vals.iter().fold(0.0f64, |acc, v| acc.max(v.abs())))
}

pub fn trace(m: &CMatrix) -> Complex64 {
    m.diagonal().sum()
}

/// `tr(a·b)` without forming the product.
pub fn trace_product(a: &CMatrix, b: &CMatrix) -> Complex64 {
    let n = a.nrows();
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..n {
        for j in 0..n {
            acc += a[(i, j)] * b[(j, i)];
        }
    }
    acc
}

fn check_square(m: &CMatrix, n: usize) -> Result<()> {
    if m.nrows() != n || m.ncols() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: m.nrows().max(m.ncols()),
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn random_matrix(n: usize, rng: &mut ChaCha8Rng) -> CMatrix {
        CMatrix::from_fn(n, n, |_, _| gaussian_complex(rng))
    }

    fn max_abs(m: &CMatrix) -> f64 {
        m.iter().fold(0.0, |acc, z| acc.max(z.norm()))
    }

    #[test]
    fn kron_identities() {
        let i2 = CMatrix::identity(2, 2);
        assert_eq!(kron(&i2, &i2), CMatrix::identity(4, 4));
        let p0 = CMatrix::from_diagonal(&CVector::from_vec(vec![c(1.0, 0.0), c(0.0, 0.0)]));
        let p1 = CMatrix::from_diagonal(&CVector::from_vec(vec![c(0.0, 0.0), c(1.0, 0.0)]));
        let expected = CMatrix::from_diagonal(&CVector::from_vec(vec![
            c(0.0, 0.0),
            c(1.0, 0.0),
            c(0.0, 0.0),
            c(0.0, 0.0),
        ]));
        assert_eq!(kron(&p0, &p1), expected);
    }

    #[test]
    fn kron_matches_index_formula() {
        let mut rng = seeded_rng(7);
        let a = random_matrix(2, &mut rng);
        let b = random_matrix(2, &mut rng);
        let k = kron(&a, &b);
        let n = 2;
        for i in 0..2 {
            for j in 0..2 {
                for p in 0..2 {
                    for q in 0..2 {
                        assert_eq!(k[(i * n + p, j * n + q)], a[(i, j)] * b[(p, q)]);
                    }
                }
            }
        }
    }

    #[test]
    fn kron_is_associative() {
        let mut rng = seeded_rng(8);
        let a = random_matrix(2, &mut rng);
        let b = random_matrix(3, &mut rng);
        let m = random_matrix(2, &mut rng);
        let lhs = kron(&kron(&a, &b), &m);
        let rhs = kron(&a, &kron(&b, &m));
        assert!(max_abs(&(lhs - rhs)) <= 1e-12);
    }

    #[test]
    fn partial_transpose_of_product_transposes_first_factor() {
        let mut rng = seeded_rng(9);
        let a = random_matrix(3, &mut rng);
        let b = random_matrix(4, &mut rng);
        let pt = partial_transpose_first(&kron(&a, &b), 3, 4).unwrap();
        assert!(max_abs(&(pt - kron(&a.transpose(), &b))) <= 1e-14);
    }

    #[test]
    fn partial_transpose_is_involution_and_keeps_trace() {
        let mut rng = seeded_rng(10);
        let m = random_matrix(6, &mut rng);
        let h = &m + m.adjoint();
        let once = partial_transpose_first(&h, 2, 3).unwrap();
        let twice = partial_transpose_first(&once, 2, 3).unwrap();
        assert_eq!(twice, h);
        assert!((trace(&once) - trace(&h)).norm() <= 1e-12);
        assert!(hermitian_deviation(&once) <= 1e-12);
    }

    #[test]
    fn partial_transpose_rejects_wrong_shape() {
        let m = CMatrix::identity(5, 5);
        assert!(matches!(
            partial_transpose_first(&m, 2, 3),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn swap_partial_transpose_is_twice_a_projector() {
        // brute-force swap on C²⊗C²
        let mut swap = CMatrix::zeros(4, 4);
        for i in 0..2 {
            for j in 0..2 {
                swap[(i * 2 + j, j * 2 + i)] = c(1.0, 0.0);
            }
        }
        let vals =
            eigvals_hermitian(&partial_transpose_first(&swap, 2, 2).unwrap(), 1e-12).unwrap();
        for v in &vals[..3] {
            assert!(v.abs() < 1e-12);
        }
        assert!((vals[3] - 2.0).abs() < 1e-12);
    }

    #[test]
    fn site_partial_transpose_agrees_with_first_factor_version() {
        let mut rng = seeded_rng(11);
        let m = random_matrix(8, &mut rng);
        assert_eq!(
            partial_transpose_site(&m, 2, 0).unwrap(),
            partial_transpose_first(&m, 2, 4).unwrap()
        );
        // last site equals the first-factor transpose of the swapped ordering
        let a = random_matrix(2, &mut rng);
        let b = random_matrix(2, &mut rng);
        let e = random_matrix(2, &mut rng);
        let prod = kron(&a, &kron(&b, &e));
        let expected = kron(&a, &kron(&b, &e.transpose()));
        assert!(max_abs(&(partial_transpose_site(&prod, 2, 2).unwrap() - expected)) < 1e-14);
        let expected_mid = kron(&a, &kron(&b.transpose(), &e));
        assert!(max_abs(&(partial_transpose_site(&prod, 2, 1).unwrap() - expected_mid)) < 1e-14);
    }

    #[test]
    fn eigenvalues_of_simple_matrices() {
        let vals = eigvals_hermitian(&CMatrix::identity(8, 8), 1e-12).unwrap();
        assert_eq!(vals.len(), 8);
        assert!(vals.iter().all(|v| (v - 1.0).abs() < 1e-12));
        let d = CMatrix::from_diagonal(&CVector::from_vec(vec![
            c(3.0, 0.0),
            c(1.0, 0.0),
            c(2.0, 0.0),
        ]));
        let vals = eigvals_hermitian(&d, 1e-12).unwrap();
        for (v, e) in vals.iter().zip([1.0, 2.0, 3.0]) {
            assert!((v - e).abs() < 1e-12);
        }
    }

    #[test]
    fn eigen_reconstruction_of_random_hermitian() {
        let mut rng = seeded_rng(12);
        let m = random_matrix(7, &mut rng);
        let h = (&m + m.adjoint()).scale(0.5);
        let eig = h.clone().symmetric_eigen();
        let vals = eigvals_hermitian(&h, 1e-12).unwrap();
        let mut sorted: Vec<f64> = eig.eigenvalues.iter().copied().collect();
        sorted.sort_by(f64::total_cmp);
        for (a, b) in vals.iter().zip(&sorted) {
            assert!((a - b).abs() < 1e-12);
        }
        let recon = eig.recompose();
        assert!(max_abs(&(recon - &h)) <= 1e-9);
        assert!((vals.iter().sum::<f64>() - trace(&h).re).abs() <= 1e-9);
    }

    #[test]
    fn eigenvalues_reject_non_hermitian() {
        let mut m = CMatrix::identity(3, 3);
        m[(0, 1)] = c(0.5, 0.0);
        assert!(matches!(
            eigvals_hermitian(&m, 1e-12),
            Err(Error::NotHermitian { .. })
        ));
    }

    #[test]
    fn projector_eigenvalues_are_zero_or_one() {
        let mut rng = seeded_rng(13);
        let psi = random_pure_state(5, &mut rng);
        let vals = eigvals_hermitian(&psi.projector(), 1e-12).unwrap();
        assert!(vals
            .iter()
            .all(|v| v.abs() < 1e-9 || (v - 1.0).abs() < 1e-9));
    }

    #[test]
    fn haar_unitaries_are_unitary() {
        let mut rng = seeded_rng(14);
        for d in 2..=4 {
            for _ in 0..100 {
                let u = haar_random_unitary(d, &mut rng);
                let dev = max_abs(&(u.adjoint() * &u - CMatrix::identity(d, d)));
                assert!(dev <= 1e-10, "d={d} deviation {dev}");
            }
        }
    }

    #[test]
    fn haar_first_and_second_moments() {
        let n = 10_000;
        for d in 2..=4 {
            let mut rng = seeded_rng(100 + d as u64);
            let mut first = Complex64::new(0.0, 0.0);
            let mut second = 0.0;
            let mut second_sq = 0.0;
            for _ in 0..n {
                let u = haar_random_unitary(d, &mut rng);
                first += u[(0, 0)];
                let p = u[(0, 0)].norm_sqr();
                second += p;
                second_sq += p * p;
            }
            let nf = n as f64;
            let mean = first / nf;
            assert!(mean.norm() < 5.0 / nf.sqrt(), "d={d} first moment {mean}");
            let m2 = second / nf;
            let sigma = ((second_sq / nf - m2 * m2) / nf).sqrt();
            assert!(
                (m2 - 1.0 / d as f64).abs() < 5.0 * sigma,
                "d={d} second moment {m2}"
            );
        }
    }

    #[test]
    fn random_pure_states_are_normalized_and_uniform() {
        let mut rng = seeded_rng(15);
        let d = 3;
        let n = 10_000;
        let mut sum = 0.0;
        let mut sum_sq = 0.0;
        for _ in 0..n {
            let psi = random_pure_state(d, &mut rng);
            assert!((psi.as_vector().norm() - 1.0).abs() < 1e-12);
            let p = psi.as_vector()[0].norm_sqr();
            sum += p;
            sum_sq += p * p;
        }
        let nf = n as f64;
        let mean = sum / nf;
        let sigma = ((sum_sq / nf - mean * mean) / nf).sqrt();
        assert!((mean - 1.0 / d as f64).abs() < 5.0 * sigma);
    }

    #[test]
    fn one_dimensional_pure_state_is_a_phase() {
        let mut rng = seeded_rng(16);
        let psi = random_pure_state(1, &mut rng);
        assert!((psi.as_vector()[0].norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn interleaved_roundtrip() {
        let mut rng = seeded_rng(17);
        let psi = random_pure_state(4, &mut rng);
        let back = PureVector::from_interleaved(&psi.interleaved()).unwrap();
        assert!((back.as_vector() - psi.as_vector()).norm() < 1e-15);
    }
}
