//! Self-checks run by `werner3 verify`.
//!
//! Each suite samples random points with a fixed seed and compares the
//! closed-form machinery against matrices, relabelings and convex hulls.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::config::Tolerances;
use crate::error::{Error, Result};
use crate::oracles::{
    gallery, ppt_oracle, projection_grid_search, sample_biproduct_atoms, sample_product_atoms,
    ProductState,
};
use crate::perm::{perm_operator, Perm, RBasis, RLabel};
use crate::separability::{
    biseparable_margin, biseparable_projection_test, classify, is_biseparable, is_ppt,
    is_triseparable, ppt_margin, triseparable_margin, BisepSlacks, Partition, PptSlacks,
};
use crate::tensor::{
    hermitian_operator_norm, random_pure_state, seeded_rng, trace, CMatrix, PureVector,
};
use crate::werner::{
    density_matrix_to_point, operator_coordinates, point_to_density_matrix, point_to_operator,
    relabel_point, twirl_monte_carlo, SiteRelabeling, WernerPoint,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Algebra,
    Twirl,
    Criteria,
    Oracles,
    Hyperplanes,
    All,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Algebra => "algebra",
            Suite::Twirl => "twirl",
            Suite::Criteria => "criteria",
            Suite::Oracles => "oracles",
            Suite::Hyperplanes => "hyperplanes",
            Suite::All => "all",
        }
    }

    fn members(self) -> Vec<Suite> {
        match self {
            Suite::All => vec![
                Suite::Algebra,
                Suite::Twirl,
                Suite::Criteria,
                Suite::Oracles,
                Suite::Hyperplanes,
            ],
            s => vec![s],
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "algebra" => Suite::Algebra,
            "twirl" => Suite::Twirl,
            "criteria" => Suite::Criteria,
            "oracles" => Suite::Oracles,
            "hyperplanes" => Suite::Hyperplanes,
            "all" => Suite::All,
            other => return Err(Error::Parse(format!("unknown suite {other:?}"))),
        })
    }
}

#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub d: usize,
    pub seed: u64,
    /// Random points per sampled property.
    pub samples: usize,
    /// Haar samples per Monte-Carlo twirl.
    pub twirl_samples: usize,
    pub tol: Tolerances,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            d: 3,
            seed: 1,
            samples: 2000,
            twirl_samples: 2000,
            tol: Tolerances::default(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub suite: &'static str,
    pub name: String,
    pub passed: bool,
    pub cases: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_deviation: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failing_case: Option<String>,
    /// Disagreements inside the boundary band; logged, not failed.
    pub band_disagreements: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub suite: Suite,
    pub d: usize,
    pub seed: u64,
    pub samples: usize,
    pub passed: bool,
    pub checks: Vec<CheckResult>,
}

struct Check {
    suite: &'static str,
    name: String,
    cases: usize,
    max_dev: Option<f64>,
    failing: Option<String>,
    band: usize,
}

impl Check {
    fn new(suite: &'static str, name: impl Into<String>) -> Self {
        Self {
            suite,
            name: name.into(),
            cases: 0,
            max_dev: None,
            failing: None,
            band: 0,
        }
    }

    /// Records a deviation that must stay within `bound`.
    fn deviation(&mut self, dev: f64, bound: f64, case: impl FnOnce() -> String) {
        self.cases += 1;
        self.max_dev = Some(self.max_dev.map_or(dev, |m: f64| m.max(dev)));
        if (dev.is_nan() || dev > bound) && self.failing.is_none() {
            self.failing = Some(format!("{} (deviation {dev:.3e} > {bound:.1e})", case()));
        }
    }

    fn expect(&mut self, ok: bool, case: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok && self.failing.is_none() {
            self.failing = Some(case());
        }
    }

    /// Agreement check that tolerates disagreement within the band.
    fn agree(&mut self, a: bool, b: bool, margin: f64, band: f64, case: impl FnOnce() -> String) {
        self.cases += 1;
        if a != b {
            if margin.abs() < band {
                self.band += 1;
            } else if self.failing.is_none() {
                self.failing = Some(case());
            }
        }
    }

    fn finish(self) -> CheckResult {
        CheckResult {
            suite: self.suite,
            passed: self.failing.is_none(),
            name: self.name,
            cases: self.cases,
            max_deviation: self.max_dev,
            failing_case: self.failing,
            band_disagreements: self.band,
        }
    }
}

pub fn run(suite: Suite, cfg: &VerifyConfig) -> Result<VerifyReport> {
    if cfg.d < 2 {
        return Err(Error::DimensionTooSmall { min: 2, got: cfg.d });
    }
    let mut checks = Vec::new();
    for s in suite.members() {
        let mut rng = seeded_rng(cfg.seed ^ (s as u64) << 32);
        match s {
            Suite::Algebra => algebra(cfg, &mut checks),
            Suite::Twirl => twirl(cfg, &mut rng, &mut checks)?,
            Suite::Criteria => criteria(cfg, &mut rng, &mut checks),
            Suite::Oracles => oracles(cfg, &mut rng, &mut checks)?,
            Suite::Hyperplanes => hyperplanes(cfg, &mut rng, &mut checks),
            Suite::All => unreachable!(),
        }
    }
    Ok(VerifyReport {
        suite,
        d: cfg.d,
        seed: cfg.seed,
        samples: cfg.samples,
        passed: checks.iter().all(|c| c.passed),
        checks,
    })
}

/// Uniform sample of the state space for local dimension `d`: uniform over
/// the `(r₊, r₋)` triangle (the segment `r₋ = 0` for qubits) and uniform
/// in the Bloch ball.
pub fn random_state_point<R: Rng + ?Sized>(rng: &mut R, d: usize) -> WernerPoint {
    let (rp, rm) = loop {
        let rp: f64 = rng.random();
        let rm: f64 = if d == 2 { 0.0 } else { rng.random() };
        if rp + rm <= 1.0 {
            break (rp, rm);
        }
    };
    let r0 = 1.0 - rp - rm;
    let v = random_ball_direction(rng);
    let rad = r0 * rng.random::<f64>().cbrt();
    WernerPoint::new(rp, rm, v[0] * rad, v[1] * rad, v[2] * rad)
}

fn random_ball_direction<R: Rng + ?Sized>(rng: &mut R) -> [f64; 3] {
    loop {
        let v = [0, 1, 2].map(|_| rng.random::<f64>() * 2.0 - 1.0);
        let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        if n > 1e-3 && n <= 1.0 {
            return v.map(|x| x / n);
        }
    }
}

fn max_abs(m: &CMatrix) -> f64 {
    m.iter().fold(0.0, |acc, z| acc.max(z.norm()))
}

fn algebra(cfg: &VerifyConfig, out: &mut Vec<CheckResult>) {
    let d = cfg.d;
    let bound = cfg.tol.structural;
    let n = d * d * d;
    let basis = RBasis::new(d);
    let r = |k| basis.get(k);

    let mut c = Check::new("algebra", "group law V_pV_q = V_pq");
    let ops: Vec<CMatrix> = Perm::ALL.iter().map(|&p| perm_operator(p, d)).collect();
    for p in Perm::ALL {
        for q in Perm::ALL {
            let dev = max_abs(&(&ops[p.index()] * &ops[q.index()] - &ops[p.compose(q).index()]));
            c.deviation(dev, bound, || format!("{p}·{q}"));
        }
    }
    out.push(c.finish());

    let mut c = Check::new("algebra", "tr V_p = d^cycles");
    for p in Perm::ALL {
        let expected = (d as f64).powi(p.cycle_count() as i32);
        c.deviation((trace(&ops[p.index()]).re - expected).abs(), bound, || {
            p.to_string()
        });
    }
    out.push(c.finish());

    let mut c = Check::new("algebra", "R+ + R- + R0 = I");
    let sum = r(RLabel::Plus) + r(RLabel::Minus) + r(RLabel::Zero);
    c.deviation(
        max_abs(&(sum - CMatrix::identity(n, n))),
        bound,
        String::new,
    );
    out.push(c.finish());

    let mut c = Check::new("algebra", "orthogonal projections");
    let projs = [RLabel::Plus, RLabel::Minus, RLabel::Zero];
    for (i, &a) in projs.iter().enumerate() {
        c.deviation(max_abs(&(r(a) * r(a) - r(a))), bound, || {
            format!("R{}² = R{}", a.symbol(), a.symbol())
        });
        for &b in &projs[i + 1..] {
            c.deviation(max_abs(&(r(a) * r(b))), bound, || {
                format!("R{}R{}", a.symbol(), b.symbol())
            });
        }
    }
    out.push(c.finish());

    let mut c = Check::new("algebra", "Pauli relations");
    let i = Complex64::new(0.0, 1.0);
    let pauli = [RLabel::One, RLabel::Two, RLabel::Three];
    for &k in &pauli {
        c.deviation(max_abs(&(r(k) * r(k) - r(RLabel::Zero))), bound, || {
            format!("R{}² = R0", k.symbol())
        });
        for &pm in &[RLabel::Plus, RLabel::Minus] {
            c.deviation(max_abs(&(r(k) * r(pm))), bound, || {
                format!("R{}R{}", k.symbol(), pm.symbol())
            });
        }
    }
    for (a, b, cc) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
        let dev = max_abs(&(r(pauli[a]) * r(pauli[b]) - r(pauli[cc]) * i));
        c.deviation(dev, bound, || {
            format!("R{}R{} = iR{}", a + 1, b + 1, cc + 1)
        });
    }
    out.push(c.finish());

    if d == 2 {
        let mut c = Check::new("algebra", "R- = 0 for qubits");
        c.deviation(max_abs(r(RLabel::Minus)), bound, String::new);
        out.push(c.finish());
    }
}

fn twirl(cfg: &VerifyConfig, rng: &mut ChaCha8Rng, out: &mut Vec<CheckResult>) -> Result<()> {
    let d = cfg.d;
    let tol = &cfg.tol;
    let basis = RBasis::new(d);
    let n = d * d * d;

    let mut c = Check::new("twirl", "point -> matrix -> point roundtrip");
    for _ in 0..cfg.samples.min(500) {
        let p = random_state_point(rng, d);
        let back = density_matrix_to_point(&point_to_density_matrix(&p, d, tol)?, d, tol)?;
        c.deviation(back.max_abs_diff(&p), 1e-12, || p.to_string());
    }
    out.push(c.finish());

    let mut c = Check::new("twirl", "Monte-Carlo twirl keeps coordinates");
    for _ in 0..5 {
        let psi = random_pure_state(n, rng);
        let rho = psi.projector();
        let before = operator_coordinates(&rho, &basis);
        let twirled = twirl_monte_carlo(&rho, d, 20, rng)?;
        c.deviation(
            operator_coordinates(&twirled, &basis).max_abs_diff(&before),
            1e-12,
            || before.to_string(),
        );
    }
    out.push(c.finish());

    let mut c = Check::new("twirl", "Monte-Carlo twirl of |111> converges");
    let rho = PureVector::basis(n, 0).projector();
    let exact = point_to_density_matrix(&WernerPoint::new(1.0, 0.0, 0.0, 0.0, 0.0), d, tol)?;
    let twirled = twirl_monte_carlo(&rho, d, cfg.twirl_samples, rng)?;
    // entrywise standard error scales like 1/√n
    let bound = 2.0 / (cfg.twirl_samples as f64).sqrt();
    c.deviation(
        hermitian_operator_norm(&(twirled - exact), tol.spectral)?,
        bound,
        || "|111>".into(),
    );
    out.push(c.finish());

    let mut c = Check::new("twirl", "relabel_point matches V rho V^dagger");
    for _ in 0..cfg.samples.min(200) {
        let p = random_state_point(rng, d);
        let rho = point_to_operator(&p, &basis);
        for s in SiteRelabeling::ALL {
            let v = perm_operator(s.0, d);
            let oracle = operator_coordinates(&(&v * &rho * v.adjoint()), &basis);
            c.deviation(relabel_point(&p, s).max_abs_diff(&oracle), 1e-12, || {
                format!("{} {p}", s.0)
            });
        }
    }
    out.push(c.finish());

    let mut c = Check::new("twirl", "relabeling is a group action");
    let p = random_state_point(rng, d);
    for s in SiteRelabeling::ALL {
        for t in SiteRelabeling::ALL {
            let lhs = relabel_point(&relabel_point(&p, s), t);
            c.deviation(
                lhs.max_abs_diff(&relabel_point(&p, t.compose(s))),
                1e-12,
                || format!("{} {}", s.0, t.0),
            );
        }
    }
    out.push(c.finish());
    Ok(())
}

fn criteria(cfg: &VerifyConfig, rng: &mut ChaCha8Rng, out: &mut Vec<CheckResult>) {
    let d = cfg.d;
    let tol = &cfg.tol;
    let points: Vec<WernerPoint> = (0..cfg.samples)
        .map(|_| random_state_point(rng, d))
        .collect();

    let mut c = Check::new("criteria", "inclusion chain T ⊂ B ⊂ P ⊂ W");
    for p in &points {
        c.expect(classify(p, d, tol).chain_holds(), || p.to_string());
    }
    out.push(c.finish());

    let mut c = Check::new("criteria", "biseparable quadratic (b) = PPT quadratic");
    for p in &points {
        let b = BisepSlacks::of(p);
        if b.window_b < 0.0 {
            continue;
        }
        let s = PptSlacks::of(p);
        let ppt_quad = s.s1 * s.s2 / 3.0 - p.r2 * p.r2 - p.r3 * p.r3;
        c.agree(
            b.quadratic_b >= 0.0,
            ppt_quad >= 0.0,
            ppt_quad,
            tol.boundary_band,
            || p.to_string(),
        );
    }
    out.push(c.finish());

    let mut c = Check::new("criteria", "permutation covariance");
    for p in points.iter().take(500) {
        for s in SiteRelabeling::ALL {
            let q = relabel_point(p, s);
            for part in Partition::ALL {
                let moved = part.relabeled(s);
                c.agree(
                    is_biseparable(p, part, tol),
                    is_biseparable(&q, moved, tol),
                    biseparable_margin(p, part),
                    tol.boundary_band,
                    || format!("{} {part} {p}", s.0),
                );
                c.agree(
                    is_ppt(p, part, tol),
                    is_ppt(&q, moved, tol),
                    ppt_margin(p, part),
                    tol.boundary_band,
                    || format!("{} {part} {p}", s.0),
                );
            }
            c.agree(
                is_triseparable(p, tol),
                is_triseparable(&q, tol),
                triseparable_margin(p),
                tol.boundary_band,
                || format!("{} {p}", s.0),
            );
        }
    }
    out.push(c.finish());

    let mut c = Check::new("criteria", "strict inclusions witnessed");
    let b_not_t = points
        .iter()
        .any(|p| is_biseparable(p, Partition::Lone1, tol) && !is_triseparable(p, tol));
    c.expect(b_not_t, || "no point in B1 \\ T".into());
    if d > 2 {
        let p_not_b = points.iter().any(|p| {
            p.r_minus > 0.0
                && (p.r2 != 0.0 || p.r3 != 0.0)
                && is_ppt(p, Partition::Lone1, tol)
                && !is_biseparable(p, Partition::Lone1, tol)
        });
        c.expect(p_not_b, || "no point in P1 \\ B1 with r- > 0".into());
    }
    out.push(c.finish());

    let mut c = Check::new("criteria", "classification independent of d >= 3");
    if d >= 3 {
        for p in points.iter().take(1000) {
            c.expect(classify(p, d, tol) == classify(p, d + 1, tol), || {
                p.to_string()
            });
        }
    } else {
        for p in points.iter().take(1000) {
            c.expect(classify(p, 2, tol) == classify(p, 3, tol), || p.to_string());
        }
    }
    out.push(c.finish());
}

fn oracles(cfg: &VerifyConfig, rng: &mut ChaCha8Rng, out: &mut Vec<CheckResult>) -> Result<()> {
    let d = cfg.d;
    let tol = &cfg.tol;

    let mut c = Check::new("oracles", "PPT criterion vs partial-transpose spectrum");
    for _ in 0..cfg.samples {
        let p = random_state_point(rng, d);
        for part in Partition::ALL {
            let o = ppt_oracle(&p, d, part, tol)?;
            c.agree(
                o.ppt,
                is_ppt(&p, part, tol),
                ppt_margin(&p, part),
                tol.boundary_band,
                || format!("{part} {p} (min eigenvalue {:.3e})", o.min_eigenvalue),
            );
        }
    }
    out.push(c.finish());

    let mut c = Check::new("oracles", "twirled product states are triseparable");
    for atom in sample_product_atoms(cfg.samples, d, rng) {
        let p = atom.twirled_point();
        c.expect(is_triseparable(&p, tol), || p.to_string());
    }
    out.push(c.finish());

    let mut c = Check::new("oracles", "twirled biproduct states are biseparable");
    for atom in sample_biproduct_atoms(cfg.samples, d, rng) {
        let p = atom.twirled_point();
        c.expect(is_biseparable(&p, Partition::Lone1, tol), || p.to_string());
    }
    out.push(c.finish());

    let mut c = Check::new("oracles", "gallery generators reproduce coordinates");
    for g in gallery() {
        if let Some(atom) = g.generator(d) {
            let p = ProductState::twirled_point(&atom);
            c.deviation(p.max_abs_diff(&g.point), 1e-12, || g.name.to_string());
        }
    }
    out.push(c.finish());

    let mut c = Check::new("oracles", "projection test vs grid search");
    for _ in 0..20 {
        let rp: f64 = rng.random();
        let rm: f64 = if d == 2 {
            0.0
        } else {
            rng.random::<f64>() * (1.0 - rp)
        };
        let (_, margin) = projection_grid_search(rp, rm, Partition::Lone1, 15)?;
        let exact = biseparable_projection_test(rp, rm, Partition::Lone1, tol);
        // the grid search only approaches the optimum from below
        c.agree(margin >= -tol.criterion, exact, margin, 1e-6, || {
            format!("({rp}, {rm})")
        });
    }
    out.push(c.finish());
    Ok(())
}

fn hyperplanes(cfg: &VerifyConfig, rng: &mut ChaCha8Rng, out: &mut Vec<CheckResult>) {
    let tol = &cfg.tol;
    let band = tol.boundary_band;
    let check = |name: &str, points: Vec<WernerPoint>| {
        let mut c = Check::new("hyperplanes", name);
        for p in &points {
            // distance from the branch surfaces; r- = 0 itself is not a boundary here
            let s = BisepSlacks::of(p);
            let margin = s
                .branch_a()
                .max(s.branch_b())
                .abs()
                .min(ppt_margin(p, Partition::Lone1).abs());
            c.agree(
                is_biseparable(p, Partition::Lone1, tol),
                is_ppt(p, Partition::Lone1, tol),
                margin,
                band,
                || p.to_string(),
            );
        }
        c.finish()
    };
    let minus_plane = (0..cfg.samples)
        .map(|_| random_state_point(rng, 2))
        .collect();
    out.push(check("B1 = P1 on r- = 0", minus_plane));
    let exchange_plane = (0..cfg.samples)
        .map(|_| {
            let p = random_state_point(rng, cfg.d);
            let r0 = p.r0();
            WernerPoint {
                r1: rng.random_range(-r0..=r0),
                r2: 0.0,
                r3: 0.0,
                ..p
            }
        })
        .collect();
    out.push(check("B1 = P1 on r2 = r3 = 0", exchange_plane));
}
