//! Closed-form membership tests for the triseparable, biseparable and PPT
//! subsets.
//!
//! Every predicate has a companion `*_margin` function returning the smallest
//! slack among its inequalities. A point is a member iff its margin is at
//! least `-tol.criterion`, so boundary points count as inside.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::config::Tolerances;
use crate::error::{Error, Result};
use crate::perm::Perm;
use crate::werner::{is_valid_state, relabel_point, SiteRelabeling, WernerPoint};

/// A bipartition `lone | pair` of the three sites.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Partition {
    #[serde(rename = "1|23")]
    Lone1,
    #[serde(rename = "2|13")]
    Lone2,
    #[serde(rename = "3|12")]
    Lone3,
}

impl Partition {
    pub const ALL: [Partition; 3] = [Partition::Lone1, Partition::Lone2, Partition::Lone3];

    /// The lone site, numbered from 1.
    pub fn lone_site(self) -> usize {
        self as usize + 1
    }

    pub fn from_lone_site(site: usize) -> Result<Self> {
        match site {
            1 => Ok(Partition::Lone1),
            2 => Ok(Partition::Lone2),
            3 => Ok(Partition::Lone3),
            _ => Err(Error::Parse(format!(
                "lone site must be 1, 2 or 3, got {site}"
            ))),
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }

    /// Transposition carrying this partition onto 1|23.
    pub fn to_first(self) -> SiteRelabeling {
        SiteRelabeling(match self {
            Partition::Lone1 => Perm::Identity,
            Partition::Lone2 => Perm::Swap12,
            Partition::Lone3 => Perm::Swap31,
        })
    }

    /// Image of the partition under a site relabeling.
    pub fn relabeled(self, s: SiteRelabeling) -> Partition {
        let lone = s.0.apply(self.index());
        Partition::ALL[lone]
    }

    pub fn name(self) -> &'static str {
        match self {
            Partition::Lone1 => "1|23",
            Partition::Lone2 => "2|13",
            Partition::Lone3 => "3|12",
        }
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "1" | "1|23" => Ok(Partition::Lone1),
            "2" | "2|13" | "2|31" => Ok(Partition::Lone2),
            "3" | "3|12" => Ok(Partition::Lone3),
            other => Err(Error::Parse(format!("unknown partition {other:?}"))),
        }
    }
}

/// Linear slacks of the PPT test for 1|23.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PptSlacks {
    pub s1: f64,
    pub s2: f64,
}

impl PptSlacks {
    pub fn of(p: &WernerPoint) -> Self {
        Self {
            s1: 1.0 - p.r1 - 5.0 * p.r_minus - p.r_plus,
            s2: -1.0 - p.r1 + p.r_minus + 5.0 * p.r_plus,
        }
    }
}

/// Individual slacks of the triseparability test. Each is nonnegative at
/// members.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TrisepSlacks {
    /// `r₋ ≥ 0` and `r₋ ≤ 1/6`.
    pub minus_window: f64,
    /// `(1 − 2r₋)/4 ≤ r₊ ≤ 1 − 5r₋`.
    pub plus_window: f64,
    /// The cubic inequality, right side minus left side.
    pub cubic: f64,
    /// The three linear factors of the cubic's right side; all nonnegative
    /// inside the triangle that bounds the triseparable slice.
    pub factors: f64,
}

impl TrisepSlacks {
    pub fn of(p: &WernerPoint) -> Self {
        let (rp, rm, r1, r2, r3) = (p.r_plus, p.r_minus, p.r1, p.r2, p.r3);
        let minus_window = rm.min(1.0 / 6.0 - rm);
        let plus_window = (rp - (1.0 - 2.0 * rm) / 4.0).min(1.0 - 5.0 * rm - rp);
        // cone over A = (1/6, 1/6, 0, 0, 0) of the r₋ = 0 slice
        let shifted = 1.0 - 3.0 * rp - 3.0 * rm;
        let lhs = (3.0 * r3 * r3 + shifted * shifted) * (1.0 - 6.0 * rm);
        let first = r1 + rp - rm;
        let apex = r1 - 2.0 * rp + 2.0 * rm;
        let rhs = first * (apex * apex - 3.0 * r2 * r2);
        let s3r2 = 3f64.sqrt() * r2.abs();
        let factors = first.min(-apex - s3r2);
        Self {
            minus_window,
            plus_window,
            cubic: rhs - lhs,
            factors,
        }
    }

    pub fn min(&self) -> f64 {
        self.minus_window
            .min(self.plus_window)
            .min(self.cubic)
            .min(self.factors)
    }
}

pub fn triseparable_margin(p: &WernerPoint) -> f64 {
    TrisepSlacks::of(p).min()
}

/// Membership in the triseparable set.
pub fn is_triseparable(p: &WernerPoint, tol: &Tolerances) -> bool {
    triseparable_margin(p) >= -tol.criterion
}

/// Slacks of the two alternatives of the 1|23 biseparability test.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BisepSlacks {
    /// `0 ≤ r₋ ≤ 1/3`.
    pub minus_window: f64,
    /// Window of branch (a).
    pub window_a: f64,
    /// Quadratic of branch (a), right minus left.
    pub quadratic_a: f64,
    /// Window of branch (b).
    pub window_b: f64,
    /// Quadratic of branch (b), right minus left.
    pub quadratic_b: f64,
}

impl BisepSlacks {
    pub fn of(p: &WernerPoint) -> Self {
        let (rp, rm, r1, r2, r3) = (p.r_plus, p.r_minus, p.r1, p.r2, p.r3);
        let t = 1.0 + r1 - rm - 2.0 * rp;
        let transverse = 3.0 * (r2 * r2 + r3 * r3);
        let a_lhs = 1.0 + 2.0 * r1 + rm - rp;
        let a_rhs = 2.0 + r1 - 4.0 * rm - 2.0 * rp;
        let b_lhs = 1.0 - 3.0 * rm - 3.0 * rp;
        let b_rhs = r1 + 2.0 * rm - 2.0 * rp;
        Self {
            minus_window: rm.min(1.0 / 3.0 - rm),
            window_a: (t - (3.0 * rm - 1.0)).min(-t),
            quadratic_a: a_rhs * a_rhs - transverse - a_lhs * a_lhs,
            window_b: t.min(1.0 - 3.0 * rm - t),
            quadratic_b: b_rhs * b_rhs - transverse - b_lhs * b_lhs,
        }
    }

    pub fn branch_a(&self) -> f64 {
        self.window_a.min(self.quadratic_a)
    }

    pub fn branch_b(&self) -> f64 {
        self.window_b.min(self.quadratic_b)
    }

    pub fn min(&self) -> f64 {
        self.minus_window.min(self.branch_a().max(self.branch_b()))
    }
}

/// Biseparability margin with respect to `part`.
pub fn biseparable_margin(p: &WernerPoint, part: Partition) -> f64 {
    BisepSlacks::of(&relabel_point(p, part.to_first())).min()
}

pub fn is_biseparable(p: &WernerPoint, part: Partition, tol: &Tolerances) -> bool {
    biseparable_margin(p, part) >= -tol.criterion
}

/// PPT margin with respect to `part`.
pub fn ppt_margin(p: &WernerPoint, part: Partition) -> f64 {
    let q = relabel_point(p, part.to_first());
    let s = PptSlacks::of(&q);
    let quad = s.s1 * s.s2 / 3.0 - q.r2 * q.r2 - q.r3 * q.r3;
    s.s1.min(s.s2).min(quad)
}

pub fn is_ppt(p: &WernerPoint, part: Partition, tol: &Tolerances) -> bool {
    ppt_margin(p, part) >= -tol.criterion
}

/// Coarse region with respect to one bipartition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Region {
    Invalid,
    WernerEntangled,
    PptOnly,
    Biseparable,
    Triseparable,
}

impl Region {
    pub fn name(self) -> &'static str {
        match self {
            Region::Invalid => "invalid",
            Region::WernerEntangled => "werner-entangled",
            Region::PptOnly => "ppt-only",
            Region::Biseparable => "biseparable",
            Region::Triseparable => "triseparable",
        }
    }
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Membership flags for one point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegionLabel {
    pub valid: bool,
    pub triseparable: bool,
    /// Indexed by [`Partition::index`].
    pub biseparable: [bool; 3],
    pub ppt: [bool; 3],
}

impl RegionLabel {
    pub fn invalid() -> Self {
        Self {
            valid: false,
            triseparable: false,
            biseparable: [false; 3],
            ppt: [false; 3],
        }
    }

    pub fn biseparable_for(&self, part: Partition) -> bool {
        self.biseparable[part.index()]
    }

    pub fn ppt_for(&self, part: Partition) -> bool {
        self.ppt[part.index()]
    }

    /// `T ⊂ B ⊂ P ⊂ W` for every partition.
    pub fn chain_holds(&self) -> bool {
        Partition::ALL.iter().all(|&part| {
            let b = self.biseparable_for(part);
            let pp = self.ppt_for(part);
            (!self.triseparable || b) && (!b || pp) && (!pp || self.valid)
        })
    }

    pub fn region(&self, part: Partition) -> Region {
        if !self.valid {
            Region::Invalid
        } else if self.triseparable {
            Region::Triseparable
        } else if self.biseparable_for(part) {
            Region::Biseparable
        } else if self.ppt_for(part) {
            Region::PptOnly
        } else {
            Region::WernerEntangled
        }
    }
}

/// All membership flags for `p` at local dimension `d`.
pub fn classify(p: &WernerPoint, d: usize, tol: &Tolerances) -> RegionLabel {
    if !is_valid_state(p, d, tol) {
        return RegionLabel::invalid();
    }
    let label = RegionLabel {
        valid: true,
        triseparable: is_triseparable(p, tol),
        biseparable: Partition::ALL.map(|part| is_biseparable(p, part, tol)),
        ppt: Partition::ALL.map(|part| is_ppt(p, part, tol)),
    };
    debug_assert!(label.chain_holds(), "inclusion chain violated at {p}");
    label
}

/// Every slack behind a classification, for reporting.
#[derive(Debug, Clone, Serialize)]
pub struct Margins {
    pub validity: f64,
    pub triseparable: TrisepSlacks,
    pub biseparable: [f64; 3],
    pub ppt: [f64; 3],
    pub ppt_slacks: [PptSlacks; 3],
}

pub fn margins(p: &WernerPoint) -> Margins {
    Margins {
        validity: p.validity_margin(),
        triseparable: TrisepSlacks::of(p),
        biseparable: Partition::ALL.map(|part| biseparable_margin(p, part)),
        ppt: Partition::ALL.map(|part| ppt_margin(p, part)),
        ppt_slacks: Partition::ALL.map(|part| PptSlacks::of(&relabel_point(p, part.to_first()))),
    }
}

/// Feasible `r₁` interval `[lo, hi]`; empty when `lo > hi`.
#[derive(Debug, Clone, Copy)]
struct Interval {
    lo: f64,
    hi: f64,
}

impl Interval {
    fn intersect(self, other: Interval) -> Interval {
        Interval {
            lo: self.lo.max(other.lo),
            hi: self.hi.min(other.hi),
        }
    }
}

/// A biseparable point over `(r₊, r₋)` for `part`, if one exists.
///
/// Both branch quadratics only tighten as `r₂² + r₃²` grows, and so does the
/// Bloch ball, so a witness exists iff one exists on the `r₁` axis (in the
/// frame of 1|23). On that axis each branch is an intersection of intervals
/// with closed-form endpoints.
pub fn biseparable_projection_witness(
    r_plus: f64,
    r_minus: f64,
    part: Partition,
    tol: &Tolerances,
) -> Option<WernerPoint> {
    let eps = tol.criterion;
    let (rp, rm) = (r_plus, r_minus);
    let r0 = 1.0 - rp - rm;
    if rp < -eps || rm < -eps || r0 < -eps || rm > 1.0 / 3.0 + eps {
        return None;
    }
    let ball = Interval {
        lo: -r0.max(0.0),
        hi: r0.max(0.0),
    };

    let window_a = Interval {
        lo: 4.0 * rm + 2.0 * rp - 2.0,
        hi: rm + 2.0 * rp - 1.0,
    };
    let (qa, qb) = (1.0 - 5.0 * rm - rp, -1.0 + rm + rp);
    let quad_a = Interval {
        lo: qa.min(qb),
        hi: qa.max(qb),
    };
    let branch_a = ball.intersect(window_a).intersect(quad_a);

    let window_b = Interval {
        lo: rm + 2.0 * rp - 1.0,
        hi: 2.0 * rp - 2.0 * rm,
    };
    let ray_b = Interval {
        lo: f64::NEG_INFINITY,
        hi: 2.0 * rp - 2.0 * rm - (1.0 - 3.0 * rm - 3.0 * rp).abs(),
    };
    let branch_b = ball.intersect(window_b).intersect(ray_b);

    let candidates = [branch_a, branch_b];
    let best = candidates
        .iter()
        .filter(|iv| iv.lo <= iv.hi + eps)
        .map(|iv| {
            let r1 = if iv.lo <= iv.hi {
                0.5 * (iv.lo + iv.hi)
            } else {
                iv.lo
            };
            WernerPoint::new(rp, rm, r1, 0.0, 0.0)
        })
        .max_by(|a, b| {
            BisepSlacks::of(a)
                .min()
                .total_cmp(&BisepSlacks::of(b).min())
        })?;
    // back to the requested partition
    let inverse = SiteRelabeling(part.to_first().0.inverse());
    Some(relabel_point(&best, inverse))
}

/// Whether some `(r₁, r₂, r₃)` over `(r₊, r₋)` is biseparable for `part`.
pub fn biseparable_projection_test(
    r_plus: f64,
    r_minus: f64,
    part: Partition,
    tol: &Tolerances,
) -> bool {
    biseparable_projection_witness(r_plus, r_minus, part, tol).is_some()
}
