//! Phase-1 simplex for convex-combination feasibility.
//!
//! Decides whether `target` lies in the convex hull of `points`, i.e.
//! whether `∑ λᵢ pᵢ = target`, `∑ λᵢ = 1`, `λ ≥ 0` has a solution. One
//! artificial variable per equality row; the phase-1 objective is their sum.

/// Weights of a convex combination reproducing the target, if one exists.
///
/// `tol` bounds both the phase-1 objective and the final residual
/// `max |∑ λᵢ pᵢ − target|`.
pub fn convex_combination(points: &[Vec<f64>], target: &[f64], tol: f64) -> Option<Vec<f64>> {
    let dim = target.len();
    if points.is_empty() || points.iter().any(|p| p.len() != dim) {
        return None;
    }
    let n = points.len();
    let m = dim + 1;
    // columns: n structural, m artificial, then the right-hand side
    let width = n + m + 1;
    let rhs_col = n + m;
    let mut tab = vec![0.0; m * width];
    for r in 0..m {
        let b = if r < dim { target[r] } else { 1.0 };
        let sign = if b < 0.0 { -1.0 } else { 1.0 };
        for (j, p) in points.iter().enumerate() {
            let a = if r < dim { p[r] } else { 1.0 };
            tab[r * width + j] = sign * a;
        }
        tab[r * width + n + r] = 1.0;
        tab[r * width + rhs_col] = sign * b;
    }
    let mut basis: Vec<usize> = (n..n + m).collect();

    // reduced costs of the phase-1 objective: c_j − 1ᵀ column
    let mut cost = vec![0.0; width];
    for r in 0..m {
        for j in 0..n {
            cost[j] -= tab[r * width + j];
        }
        cost[rhs_col] -= tab[r * width + rhs_col];
    }

    let max_iter = 50 * (n + m);
    let mut bland = false;
    for _ in 0..max_iter {
        let entering = if bland {
            (0..n + m).find(|&j| cost[j] < -1e-12)
        } else {
            (0..n + m)
                .filter(|&j| cost[j] < -1e-12)
                .min_by(|&a, &b| cost[a].total_cmp(&cost[b]))
        };
        let Some(col) = entering else { break };

        let mut leaving: Option<(usize, f64)> = None;
        for r in 0..m {
            let a = tab[r * width + col];
            if a > 1e-12 {
                let ratio = tab[r * width + rhs_col] / a;
                let better = match leaving {
                    None => true,
                    Some((lr, best)) => {
                        ratio < best - 1e-14 || (ratio <= best + 1e-14 && basis[r] < basis[lr])
                    }
                };
                if better {
                    leaving = Some((r, ratio));
                }
            }
        }
        // phase-1 objective is bounded below, so an unbounded column cannot occur
        let Some((row, ratio)) = leaving else { break };
        // fall back to Bland's rule on degenerate pivots
        bland = ratio.abs() <= 1e-14;

        let pivot = tab[row * width + col];
        for j in 0..width {
            tab[row * width + j] /= pivot;
        }
        for r in 0..m {
            if r == row {
                continue;
            }
            let f = tab[r * width + col];
            if f != 0.0 {
                for j in 0..width {
                    tab[r * width + j] -= f * tab[row * width + j];
                }
            }
        }
        let f = cost[col];
        for j in 0..width {
            cost[j] -= f * tab[row * width + j];
        }
        basis[row] = col;
    }

    let objective = -cost[rhs_col];
    if objective > tol {
        return None;
    }
    let mut weights = vec![0.0; n];
    for (r, &b) in basis.iter().enumerate() {
        if b < n {
            weights[b] = tab[r * width + rhs_col].max(0.0);
        }
    }
    let total: f64 = weights.iter().sum();
    if total <= 0.0 {
        return None;
    }
    for w in &mut weights {
        *w /= total;
    }
    let residual = (0..dim)
        .map(|k| {
            let s: f64 = points.iter().zip(&weights).map(|(p, w)| w * p[k]).sum();
            (s - target[k]).abs()
        })
        .fold(0.0f64, f64::max);
    (residual <= tol).then_some(weights)
}
