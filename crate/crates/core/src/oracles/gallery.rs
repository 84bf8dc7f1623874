//! Named extreme points and the vectors that generate them.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64;

use super::ProductState;
use crate::error::Result;
use crate::tensor::{CVector, PureVector};
use crate::werner::WernerPoint;

#[derive(Debug, Clone)]
pub struct GalleryPoint {
    pub name: &'static str,
    pub point: WernerPoint,
    /// Smallest local dimension in which the generating vector exists.
    pub min_dim: usize,
    /// Whether the generator is a threefold product (else 1|23 biproduct).
    pub triple_product: bool,
}

impl GalleryPoint {
    /// Generating pure state at local dimension `d`, or `None` if `d` is too
    /// small.
    pub fn generator(&self, d: usize) -> Option<ProductState> {
        if d < self.min_dim {
            return None;
        }
        generator(self.name, d).ok()
    }
}

pub fn gallery() -> Vec<GalleryPoint> {
    let entry = |name, p: [f64; 5], min_dim, triple_product| GalleryPoint {
        name,
        point: WernerPoint::from_array(p),
        min_dim,
        triple_product,
    };
    vec![
        entry("A", [1.0 / 6.0, 1.0 / 6.0, 0.0, 0.0, 0.0], 3, true),
        entry("B", [1.0, 0.0, 0.0, 0.0, 0.0], 2, true),
        entry("C", [0.25, 0.0, 0.0, 0.0, 0.0], 2, true),
        entry("D", [1.0 / 3.0, 0.0, 2.0 / 3.0, 0.0, 0.0], 2, true),
        entry("E", [0.0, 0.0, -1.0, 0.0, 0.0], 2, false),
        entry("F", [0.0, 1.0 / 3.0, -2.0 / 3.0, 0.0, 0.0], 3, false),
        entry("G", [0.2, 0.0, 0.0, 0.0, 0.0], 2, false),
    ]
}

/// Gallery coordinates by name.
pub fn gallery_map() -> BTreeMap<&'static str, WernerPoint> {
    gallery().into_iter().map(|g| (g.name, g.point)).collect()
}

fn ket(d: usize, i: usize) -> PureVector {
    PureVector::basis(d, i)
}

/// `∑ amp·|i j⟩` on `C^d ⊗ C^d`, normalized.
fn pair(d: usize, terms: &[(f64, usize, usize)]) -> Result<PureVector> {
    let mut v = CVector::zeros(d * d);
    for &(amp, i, j) in terms {
        v[i * d + j] += Complex64::new(amp, 0.0);
    }
    PureVector::new(v)
}

fn generator(name: &str, d: usize) -> Result<ProductState> {
    let s3 = 3f64.sqrt();
    // basis labels 1, 2, 3 are indices 0, 1, 2
    Ok(match name {
        "A" => ProductState::triple([ket(d, 0), ket(d, 1), ket(d, 2)]),
        "B" => ProductState::triple([ket(d, 0), ket(d, 0), ket(d, 0)]),
        "C" => {
            let star = |k: f64| {
                let angle = 2.0 * PI * k / 3.0;
                let mut v = CVector::zeros(d);
                v[0] = Complex64::new(angle.cos(), 0.0);
                v[1] = Complex64::new(angle.sin(), 0.0);
                PureVector::new(v)
            };
            ProductState::triple([star(0.0)?, star(1.0)?, star(2.0)?])
        }
        "D" => ProductState::triple([ket(d, 0), ket(d, 1), ket(d, 1)]),
        "E" => ProductState::Biproduct {
            phi1: ket(d, 0),
            phi23: pair(d, &[(1.0, 0, 1), (-1.0, 1, 0)])?,
        },
        "F" => ProductState::Biproduct {
            phi1: ket(d, 0),
            phi23: pair(d, &[(1.0, 1, 2), (-1.0, 2, 1)])?,
        },
        "G" => ProductState::Biproduct {
            phi1: ket(d, 0),
            phi23: pair(d, &[(1.0, 0, 1), (-1.0, 1, 0), (-s3, 1, 1)])?,
        },
        other => unreachable!("no gallery point named {other}"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::werner::pure_state_to_point;

    #[test]
    fn generators_reproduce_coordinates() {
        for g in gallery() {
            for d in g.min_dim..=4 {
                let atom = g.generator(d).unwrap();
                let p = pure_state_to_point(&atom.vector(), d).unwrap();
                assert!(p.max_abs_diff(&g.point) < 1e-12, "{} at d={d}: {p}", g.name);
            }
            if g.min_dim > 2 {
                assert!(g.generator(2).is_none());
            }
        }
    }

    #[test]
    fn named_lookup() {
        let m = gallery_map();
        assert_eq!(m.len(), 7);
        assert_eq!(m["G"], WernerPoint::new(0.2, 0.0, 0.0, 0.0, 0.0));
    }
}
