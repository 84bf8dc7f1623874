//! Brute-force verifiers for the closed-form criteria.
//!
//! Nothing here calls the predicates in [`crate::separability`]. The PPT
//! oracle works on explicit matrices, and the inner oracles certify
//! membership by exhibiting a convex decomposition into twirled product
//! states.

mod gallery;
pub mod simplex;

pub use gallery::{gallery, gallery_map, GalleryPoint};

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::config::Tolerances;
use crate::error::{Error, Result};
use crate::perm::{gram_overlaps, permute_vector, product_state_r_coords};
use crate::separability::{BisepSlacks, Partition};
use crate::tensor::{
    eigvals_hermitian, partial_transpose_site, random_pure_state, seeded_rng, PureVector,
};
use crate::werner::{
    is_valid_state, point_to_density_matrix, pure_state_to_point, relabel_point, WernerPoint,
};

/// A pure product state: three single-site vectors, or a site-1 vector
/// times a vector on sites 2 and 3.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ProductState {
    Triple {
        phi1: PureVector,
        phi2: PureVector,
        phi3: PureVector,
    },
    Biproduct {
        phi1: PureVector,
        phi23: PureVector,
    },
}

impl ProductState {
    pub fn triple([phi1, phi2, phi3]: [PureVector; 3]) -> Self {
        ProductState::Triple { phi1, phi2, phi3 }
    }

    /// The full vector on `(C^d)^{⊗3}`.
    pub fn vector(&self) -> PureVector {
        match self {
            ProductState::Triple { phi1, phi2, phi3 } => phi1.tensor(phi2).tensor(phi3),
            ProductState::Biproduct { phi1, phi23 } => phi1.tensor(phi23),
        }
    }

    pub fn local_dim(&self) -> usize {
        match self {
            ProductState::Triple { phi1, .. } => phi1.dim(),
            ProductState::Biproduct { phi1, .. } => phi1.dim(),
        }
    }

    /// Regards a threefold product as a 1|23 biproduct.
    pub fn into_biproduct(self) -> ProductState {
        match self {
            ProductState::Triple { phi1, phi2, phi3 } => ProductState::Biproduct {
                phi1,
                phi23: phi2.tensor(&phi3),
            },
            bi => bi,
        }
    }

    /// Coordinates of the twirled state, computed from the full vector.
    pub fn twirled_point(&self) -> WernerPoint {
        pure_state_to_point(&self.vector(), self.local_dim()).expect("dimensions are consistent")
    }
}

/// Convex weights over pure product atoms.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SeparableDecomposition {
    /// Bipartition the atoms are products across; `None` for threefold
    /// products.
    pub partition: Option<Partition>,
    pub weights: Vec<f64>,
    pub atoms: Vec<ProductState>,
}

impl SeparableDecomposition {
    /// Twirled coordinates of the mixture, recomputed from the atoms.
    pub fn point(&self) -> WernerPoint {
        let mut acc = [0.0; 5];
        for (w, atom) in self.weights.iter().zip(&self.atoms) {
            let p = match (self.partition, atom) {
                (Some(part), ProductState::Biproduct { .. }) => {
                    let d = atom.local_dim();
                    let v = permute_vector(part.to_first().0, d, &atom.vector()).expect("square");
                    pure_state_to_point(&v, d).expect("square")
                }
                _ => atom.twirled_point(),
            };
            for (a, x) in acc.iter_mut().zip(p.to_array()) {
                *a += w * x;
            }
        }
        WernerPoint::from_array(acc)
    }

    /// Weights are nonnegative and sum to one within `tol`.
    pub fn weights_ok(&self, tol: f64) -> bool {
        self.weights.iter().all(|&w| w >= -tol)
            && (self.weights.iter().sum::<f64>() - 1.0).abs() <= tol
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

/// Result of the eigenvalue-level PPT check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PptOracleResult {
    pub ppt: bool,
    pub min_eigenvalue: f64,
}

/// Builds `ρ`, transposes the lone site of `part`, and inspects the spectrum.
pub fn ppt_oracle(
    p: &WernerPoint,
    d: usize,
    part: Partition,
    tol: &Tolerances,
) -> Result<PptOracleResult> {
    let rho = point_to_density_matrix(p, d, tol)?;
    let pt = partial_transpose_site(&rho, d, part.index())?;
    let min_eigenvalue = eigvals_hermitian(&pt, tol.structural)?[0];
    Ok(PptOracleResult {
        ppt: min_eigenvalue >= -tol.spectral,
        min_eigenvalue,
    })
}

/// `n` random threefold product states at local dimension `d`.
pub fn sample_product_atoms<R: Rng + ?Sized>(n: usize, d: usize, rng: &mut R) -> Vec<ProductState> {
    (0..n)
        .map(|_| ProductState::triple([0, 1, 2].map(|_| random_pure_state(d, rng))))
        .collect()
}

/// `n` random 1|23 biproduct states at local dimension `d`.
pub fn sample_biproduct_atoms<R: Rng + ?Sized>(
    n: usize,
    d: usize,
    rng: &mut R,
) -> Vec<ProductState> {
    (0..n)
        .map(|_| ProductState::Biproduct {
            phi1: random_pure_state(d, rng),
            phi23: random_pure_state(d * d, rng),
        })
        .collect()
}

/// Twirled coordinates of `n` random pure product states, computed from
/// their Gram overlaps.
pub fn sample_trisep_inner(n: usize, d: usize, seed: u64) -> Vec<WernerPoint> {
    let mut rng = seeded_rng(seed);
    sample_product_atoms(n, d, &mut rng)
        .iter()
        .map(|atom| match atom {
            ProductState::Triple { phi1, phi2, phi3 } => {
                let (a, b, c) = gram_overlaps(&[phi1.clone(), phi2.clone(), phi3.clone()]);
                product_state_r_coords(a, b, c)
            }
            ProductState::Biproduct { .. } => unreachable!(),
        })
        .collect()
}

/// Weights of a convex combination of `generators` equal to `target`.
pub fn hull_weights(
    target: &WernerPoint,
    generators: &[WernerPoint],
    tol: &Tolerances,
) -> Option<Vec<f64>> {
    let cols: Vec<Vec<f64>> = generators.iter().map(|g| g.to_array().to_vec()).collect();
    simplex::convex_combination(&cols, &target.to_array(), tol.hull)
}

/// Whether `target` is a convex combination of `generators`.
pub fn hull_membership(target: &WernerPoint, generators: &[WernerPoint], tol: &Tolerances) -> bool {
    hull_weights(target, generators, tol).is_some()
}

fn decompose(
    target: &WernerPoint,
    atoms: Vec<ProductState>,
    points: &[WernerPoint],
    partition: Option<Partition>,
    tol: &Tolerances,
) -> Option<SeparableDecomposition> {
    let weights = hull_weights(target, points, tol)?;
    let (weights, atoms): (Vec<f64>, Vec<ProductState>) = weights
        .into_iter()
        .zip(atoms)
        .filter(|(w, _)| *w > tol.structural)
        .unzip();
    Some(SeparableDecomposition {
        partition,
        weights,
        atoms,
    })
}

/// Product atoms for the gallery points available at dimension `d`.
pub fn gallery_atoms(d: usize, triple_only: bool) -> Vec<ProductState> {
    gallery()
        .iter()
        .filter(|g| !triple_only || g.triple_product)
        .filter_map(|g| g.generator(d))
        .collect()
}

/// Certifies triseparability by decomposing `target` over twirled product
/// states: the gallery's product generators plus `n` random ones.
///
/// One-sided: `Some` proves membership, `None` is inconclusive.
pub fn trisep_inner_oracle(
    target: &WernerPoint,
    n: usize,
    d: usize,
    seed: u64,
    tol: &Tolerances,
) -> Option<SeparableDecomposition> {
    let mut rng = seeded_rng(seed);
    let mut atoms = gallery_atoms(d, true);
    atoms.extend(sample_product_atoms(n, d, &mut rng));
    let points: Vec<WernerPoint> = atoms.iter().map(ProductState::twirled_point).collect();
    decompose(target, atoms, &points, None, tol)
}

/// Certifies biseparability for `part` by decomposing `target` over twirled
/// biproduct states: the gallery's generators plus `n` random ones.
///
/// Atoms are stored in 1|23 form; for other partitions their vectors are
/// permuted so that the lone site lands where `part` puts it.
pub fn bisep_inner_oracle(
    target: &WernerPoint,
    n: usize,
    d: usize,
    seed: u64,
    part: Partition,
    tol: &Tolerances,
) -> Option<SeparableDecomposition> {
    let mut rng = seeded_rng(seed);
    let mut atoms: Vec<ProductState> = gallery_atoms(d, false)
        .into_iter()
        .map(ProductState::into_biproduct)
        .collect();
    atoms.extend(sample_biproduct_atoms(n, d, &mut rng));
    let relabel = part.to_first().0;
    let points: Vec<WernerPoint> = atoms
        .iter()
        .map(|a| {
            let v = permute_vector(relabel, d, &a.vector()).expect("square");
            pure_state_to_point(&v, d).expect("square")
        })
        .collect();
    decompose(target, atoms, &points, Some(part), tol)
}

/// Grid search for a biseparable point over `(r₊, r₋)`.
///
/// Scans the Bloch ball of radius `r₀` on a `grid³` lattice, then refines the
/// best cell by a shrinking pattern search. Returns the best point found and
/// its biseparability margin; the projection test passes iff the margin is
/// at least `-tol.criterion`.
pub fn projection_grid_search(
    r_plus: f64,
    r_minus: f64,
    part: Partition,
    grid: usize,
) -> Result<(WernerPoint, f64)> {
    let r0 = 1.0 - r_plus - r_minus;
    if r_plus < 0.0 || r_minus < 0.0 || r0 < 0.0 || grid < 2 {
        return Err(Error::InvalidPoint(format!("({r_plus}, {r_minus})")));
    }
    let margin = |v: [f64; 3]| {
        let p = WernerPoint::new(r_plus, r_minus, v[0], v[1], v[2]);
        BisepSlacks::of(&relabel_point(&p, part.to_first())).min()
    };
    let project = |v: [f64; 3]| {
        let len = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        if len > r0 && len > 0.0 {
            v.map(|x| x * r0 / len)
        } else {
            v
        }
    };
    let coord = |k: usize| -r0 + 2.0 * r0 * k as f64 / (grid - 1) as f64;
    let mut best = ([0.0; 3], f64::NEG_INFINITY);
    for i in 0..grid {
        for j in 0..grid {
            for k in 0..grid {
                let v = [coord(i), coord(j), coord(k)];
                if v.iter().map(|x| x * x).sum::<f64>() > r0 * r0 * (1.0 + 1e-12) {
                    continue;
                }
                let m = margin(v);
                if m > best.1 {
                    best = (v, m);
                }
            }
        }
    }
    let mut step = 2.0 * r0 / (grid - 1) as f64;
    while step > 1e-13 {
        let mut improved = false;
        for axis in 0..3 {
            for sign in [-1.0, 1.0] {
                let mut v = best.0;
                v[axis] += sign * step;
                let v = project(v);
                let m = margin(v);
                if m > best.1 {
                    best = (v, m);
                    improved = true;
                }
            }
        }
        if !improved {
            step *= 0.5;
        }
    }
    let v = best.0;
    Ok((WernerPoint::new(r_plus, r_minus, v[0], v[1], v[2]), best.1))
}

/// Rejects points outside the state space for `d`.
pub fn require_valid(p: &WernerPoint, d: usize, tol: &Tolerances) -> Result<()> {
    if is_valid_state(p, d, tol) {
        Ok(())
    } else {
        Err(Error::InvalidPoint(p.to_string()))
    }
}
