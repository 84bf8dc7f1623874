//! Permutation operators on `H⊗H⊗H` and the R-basis of their span.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::tensor::{CMatrix, PureVector};
use crate::werner::WernerPoint;

/// An element of S₃ acting on the sites 1, 2, 3.
///
/// `(123)` sends site 1 to 2, 2 to 3 and 3 to 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Perm {
    Identity,
    Swap12,
    Swap23,
    Swap31,
    Cycle123,
    Cycle321,
}

impl Perm {
    pub const ALL: [Perm; 6] = [
        Perm::Identity,
        Perm::Swap12,
        Perm::Swap23,
        Perm::Swap31,
        Perm::Cycle123,
        Perm::Cycle321,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    /// Images of the zero-based sites `[π(0), π(1), π(2)]`.
    pub fn images(self) -> [usize; 3] {
        match self {
            Perm::Identity => [0, 1, 2],
            Perm::Swap12 => [1, 0, 2],
            Perm::Swap23 => [0, 2, 1],
            Perm::Swap31 => [2, 1, 0],
            Perm::Cycle123 => [1, 2, 0],
            Perm::Cycle321 => [2, 0, 1],
        }
    }

    fn from_images(images: [usize; 3]) -> Perm {
        Perm::ALL
            .into_iter()
            .find(|p| p.images() == images)
            .expect("every bijection of three sites is in S3")
    }

    /// Image of a zero-based site.
    pub fn apply(self, site: usize) -> usize {
        self.images()[site]
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(self, other: Perm) -> Perm {
        let o = other.images();
        Perm::from_images([self.apply(o[0]), self.apply(o[1]), self.apply(o[2])])
    }

    pub fn inverse(self) -> Perm {
        let img = self.images();
        let mut inv = [0; 3];
        for (site, &target) in img.iter().enumerate() {
            inv[target] = site;
        }
        Perm::from_images(inv)
    }

    pub fn cycle_count(self) -> u32 {
        match self {
            Perm::Identity => 3,
            Perm::Swap12 | Perm::Swap23 | Perm::Swap31 => 2,
            Perm::Cycle123 | Perm::Cycle321 => 1,
        }
    }

    pub fn is_transposition(self) -> bool {
        self.cycle_count() == 2
    }

    pub fn name(self) -> &'static str {
        match self {
            Perm::Identity => "e",
            Perm::Swap12 => "(12)",
            Perm::Swap23 => "(23)",
            Perm::Swap31 => "(31)",
            Perm::Cycle123 => "(123)",
            Perm::Cycle321 => "(321)",
        }
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Perm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        Ok(match t {
            "e" | "id" | "()" => Perm::Identity,
            "(12)" | "12" | "(21)" | "21" => Perm::Swap12,
            "(23)" | "23" | "(32)" | "32" => Perm::Swap23,
            "(31)" | "31" | "(13)" | "13" => Perm::Swap31,
            "(123)" | "123" | "(231)" | "(312)" => Perm::Cycle123,
            "(321)" | "321" | "(132)" | "(213)" => Perm::Cycle321,
            _ => return Err(Error::Parse(format!("unknown permutation {t:?}"))),
        })
    }
}

/// Maps a basis index of `(C^d)^{⊗3}` to its image under `V_π`.
///
/// `V_π φ₁⊗φ₂⊗φ₃ = φ_{π⁻¹1}⊗φ_{π⁻¹2}⊗φ_{π⁻¹3}`, so the digit in slot `k`
/// moves to slot `π(k)`.
pub fn permute_index(p: Perm, d: usize, idx: usize) -> usize {
    let digits = [idx / (d * d), (idx / d) % d, idx % d];
    let mut out = [0usize; 3];
    for (k, &digit) in digits.iter().enumerate() {
        out[p.apply(k)] = digit;
    }
    out[0] * d * d + out[1] * d + out[2]
}

/// The permutation matrix `V_π` on `(C^d)^{⊗3}`.
pub fn perm_operator(p: Perm, d: usize) -> CMatrix {
    let n = d * d * d;
    let mut m = CMatrix::zeros(n, n);
    for idx in 0..n {
        m[(permute_index(p, d, idx), idx)] = Complex64::new(1.0, 0.0);
    }
    m
}

/// `V_π ψ` for a vector on `(C^d)^{⊗3}`.
pub fn permute_vector(p: Perm, d: usize, psi: &PureVector) -> Result<PureVector> {
    let n = d * d * d;
    if psi.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: psi.dim(),
        });
    }
    let src = psi.as_vector();
    let mut out = src.clone();
    for idx in 0..n {
        out[permute_index(p, d, idx)] = src[idx];
    }
    PureVector::new(out)
}

/// `∑_π μ_π V_π`, stored as six coefficients in [`Perm::ALL`] order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PermutationExpansion {
    pub mu: [Complex64; 6],
}

impl PermutationExpansion {
    pub fn zero() -> Self {
        Self {
            mu: [Complex64::new(0.0, 0.0); 6],
        }
    }

    pub fn new(mu: [Complex64; 6]) -> Self {
        Self { mu }
    }

    fn real(mu: [f64; 6]) -> Self {
        Self {
            mu: mu.map(|x| Complex64::new(x, 0.0)),
        }
    }

    pub fn coeff(&self, p: Perm) -> Complex64 {
        self.mu[p.index()]
    }

    /// Hermitian iff `μ_{π⁻¹} = conj(μ_π)` for every π.
    pub fn is_hermitian(&self, tol: f64) -> bool {
        Perm::ALL
            .iter()
            .all(|&p| (self.coeff(p.inverse()) - self.coeff(p).conj()).norm() <= tol)
    }

    /// Product in the group algebra.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for p in Perm::ALL {
            for q in Perm::ALL {
                out.mu[p.compose(q).index()] += self.coeff(p) * other.coeff(q);
            }
        }
        out
    }

    /// Coefficients of `V_π X V_π†`.
    pub fn conjugate_by(&self, p: Perm) -> Self {
        let mut out = Self::zero();
        for s in Perm::ALL {
            out.mu[p.compose(s).compose(p.inverse()).index()] += self.coeff(s);
        }
        out
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self {
            mu: self.mu.map(|z| z * factor),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut mu = self.mu;
        for (m, o) in mu.iter_mut().zip(other.mu) {
            *m += o;
        }
        Self { mu }
    }
}

/// `∑_π μ_π V_π` as a d³×d³ matrix.
pub fn expansion_to_matrix(x: &PermutationExpansion, d: usize) -> CMatrix {
    let n = d * d * d;
    let mut m = CMatrix::zeros(n, n);
    for p in Perm::ALL {
        let mu = x.coeff(p);
        if mu == Complex64::new(0.0, 0.0) {
            continue;
        }
        for idx in 0..n {
            m[(permute_index(p, d, idx), idx)] += mu;
        }
    }
    m
}

/// Labels of the six R-basis operators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RLabel {
    Plus,
    Minus,
    Zero,
    One,
    Two,
    Three,
}

impl RLabel {
    pub const ALL: [RLabel; 6] = [
        RLabel::Plus,
        RLabel::Minus,
        RLabel::Zero,
        RLabel::One,
        RLabel::Two,
        RLabel::Three,
    ];

    /// The five labels carrying independent coordinates (`R₀` is redundant).
    pub const COORDINATES: [RLabel; 5] = [
        RLabel::Plus,
        RLabel::Minus,
        RLabel::One,
        RLabel::Two,
        RLabel::Three,
    ];

    pub fn symbol(self) -> &'static str {
        match self {
            RLabel::Plus => "+",
            RLabel::Minus => "-",
            RLabel::Zero => "0",
            RLabel::One => "1",
            RLabel::Two => "2",
            RLabel::Three => "3",
        }
    }

    /// Coefficients of `R_k` over the permutations.
    pub fn expansion(self) -> PermutationExpansion {
        let s3 = 3f64.sqrt();
        match self {
            //                          e     (12)   (23)   (31)  (123) (321)
            RLabel::Plus => {
                PermutationExpansion::real([1.0, 1.0, 1.0, 1.0, 1.0, 1.0].map(|x| x / 6.0))
            }
            RLabel::Minus => {
                PermutationExpansion::real([1.0, -1.0, -1.0, -1.0, 1.0, 1.0].map(|x| x / 6.0))
            }
            RLabel::Zero => {
                PermutationExpansion::real([2.0, 0.0, 0.0, 0.0, -1.0, -1.0].map(|x| x / 3.0))
            }
            RLabel::One => {
                PermutationExpansion::real([0.0, -1.0, 2.0, -1.0, 0.0, 0.0].map(|x| x / 3.0))
            }
            RLabel::Two => {
                PermutationExpansion::real([0.0, 1.0, 0.0, -1.0, 0.0, 0.0].map(|x| x / s3))
            }
            RLabel::Three => {
                let i = Complex64::new(0.0, 1.0 / s3);
                let z = Complex64::new(0.0, 0.0);
                PermutationExpansion::new([z, z, z, z, i, -i])
            }
        }
    }

    /// `tr R_k` on `(C^d)^{⊗3}`.
    pub fn trace(self, d: usize) -> f64 {
        let d = d as f64;
        match self {
            RLabel::Plus => d * (d + 1.0) * (d + 2.0) / 6.0,
            RLabel::Minus => d * (d - 1.0) * (d - 2.0) / 6.0,
            RLabel::Zero => 2.0 * d * (d * d - 1.0) / 3.0,
            RLabel::One | RLabel::Two | RLabel::Three => 0.0,
        }
    }
}

pub fn r_operator(k: RLabel, d: usize) -> CMatrix {
    expansion_to_matrix(&k.expansion(), d)
}

/// The six R-basis matrices for one local dimension, built once.
#[derive(Debug, Clone)]
pub struct RBasis {
    d: usize,
    ops: [CMatrix; 6],
}

impl RBasis {
    pub fn new(d: usize) -> Self {
        Self {
            d,
            ops: RLabel::ALL.map(|k| r_operator(k, d)),
        }
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn get(&self, k: RLabel) -> &CMatrix {
        &self.ops[k as usize]
    }
}

/// Coordinates of the twirl of `|φ₁⊗φ₂⊗φ₃⟩⟨φ₁⊗φ₂⊗φ₃|` from the overlaps
/// `a = ⟨φ₁|φ₂⟩`, `b = ⟨φ₂|φ₃⟩`, `c = ⟨φ₃|φ₁⟩`.
///
/// Uses `tr(ρV_{(ij)}) = |⟨φᵢ|φⱼ⟩|²`, `tr(ρV_{(123)}) = conj(abc)` and
/// `tr(ρV_{(321)}) = abc`.
pub fn product_state_r_coords(a: Complex64, b: Complex64, c: Complex64) -> WernerPoint {
    let (aa, bb, cc) = (a.norm_sqr(), b.norm_sqr(), c.norm_sqr());
    let triple = a * b * c;
    let s3 = 3f64.sqrt();
    WernerPoint::new(
        (1.0 + aa + bb + cc + 2.0 * triple.re) / 6.0,
        (1.0 - aa - bb - cc + 2.0 * triple.re) / 6.0,
        (2.0 * bb - cc - aa) / 3.0,
        (aa - cc) / s3,
        2.0 / s3 * triple.im,
    )
}

/// Overlaps `(⟨φ₁|φ₂⟩, ⟨φ₂|φ₃⟩, ⟨φ₃|φ₁⟩)` of three vectors.
pub fn gram_overlaps(phi: &[PureVector; 3]) -> (Complex64, Complex64, Complex64) {
    (
        phi[0].inner(&phi[1]),
        phi[1].inner(&phi[2]),
        phi[2].inner(&phi[0]),
    )
}
