//! Region maps over the `(r₊, r₋)` triangle and over one Bloch ball, with
//! CSV and JSON writers.

use std::io::Write;

use serde::Serialize;

use crate::config::Tolerances;
use crate::error::{Error, Result};
use crate::separability::{
    biseparable_projection_test, classify, is_biseparable, is_triseparable, Partition, Region,
    RegionLabel,
};
use crate::werner::WernerPoint;

pub const FIGURE1_HEADER: &str = "r_plus,r_minus,trisep,bisep_wp,bisep_projection";
pub const FIGURE2_HEADER: &str = "r1,r2,r3,label";

/// One cell of the permutation-invariant triangle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Figure1Cell {
    pub r_plus: f64,
    pub r_minus: f64,
    /// `(r₊, r₋, 0, 0, 0)` is triseparable.
    pub trisep: bool,
    /// `(r₊, r₋, 0, 0, 0)` is 1|23-biseparable.
    pub bisep_wp: bool,
    /// Some `(r₁, r₂, r₃)` over the cell is 1|23-biseparable.
    pub bisep_projection: bool,
}

/// One grid point of a Bloch ball, labelled for the partition 1|23.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Figure2Cell {
    pub r1: f64,
    pub r2: f64,
    pub r3: f64,
    pub label: Region,
    #[serde(skip)]
    pub flags: RegionLabel,
}

/// Lattice `r₊ = i/(n−1)`, `r₋ = j/(n−1)` restricted to `i + j ≤ n − 1`,
/// ordered by `r₊` then `r₋`.
pub fn region_map_figure1(resolution: usize, tol: &Tolerances) -> Result<Vec<Figure1Cell>> {
    if resolution < 2 {
        return Err(Error::Parse(format!(
            "resolution must be at least 2, got {resolution}"
        )));
    }
    let steps = resolution - 1;
    let h = 1.0 / steps as f64;
    let mut cells = Vec::new();
    for i in 0..=steps {
        for j in 0..=steps - i {
            let (rp, rm) = (i as f64 * h, j as f64 * h);
            let p = WernerPoint::new(rp, rm, 0.0, 0.0, 0.0);
            cells.push(Figure1Cell {
                r_plus: rp,
                r_minus: rm,
                trisep: is_triseparable(&p, tol),
                bisep_wp: is_biseparable(&p, Partition::Lone1, tol),
                bisep_projection: biseparable_projection_test(rp, rm, Partition::Lone1, tol),
            });
        }
    }
    Ok(cells)
}

/// Cubic lattice over `[−r₀, r₀]³` with `resolution` points per axis,
/// ordered with `r₁` slowest. Points outside the ball come out invalid.
pub fn region_map_figure2(
    r_plus: f64,
    r_minus: f64,
    resolution: usize,
    d: usize,
    tol: &Tolerances,
) -> Result<Vec<Figure2Cell>> {
    if resolution < 2 {
        return Err(Error::Parse(format!(
            "resolution must be at least 2, got {resolution}"
        )));
    }
    let r0 = 1.0 - r_plus - r_minus;
    let eps = tol.criterion;
    if r_plus < -eps || r_minus < -eps || r0 < -eps {
        return Err(Error::InvalidPoint(format!(
            "(r+, r-) = ({r_plus}, {r_minus}) is outside the triangle"
        )));
    }
    let r0 = r0.max(0.0);
    let axis: Vec<f64> = (0..resolution)
        .map(|k| -r0 + 2.0 * r0 * k as f64 / (resolution - 1) as f64)
        .collect();
    let mut cells = Vec::with_capacity(resolution.pow(3));
    for &r1 in &axis {
        for &r2 in &axis {
            for &r3 in &axis {
                let flags = classify(&WernerPoint::new(r_plus, r_minus, r1, r2, r3), d, tol);
                cells.push(Figure2Cell {
                    r1,
                    r2,
                    r3,
                    label: flags.region(Partition::Lone1),
                    flags,
                });
            }
        }
    }
    Ok(cells)
}

/// 17 significant digits.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

fn bit(b: bool) -> &'static str {
    if b {
        "1"
    } else {
        "0"
    }
}

pub fn write_figure1_csv<W: Write + ?Sized>(out: &mut W, cells: &[Figure1Cell]) -> Result<()> {
    writeln!(out, "{FIGURE1_HEADER}")?;
    for c in cells {
        writeln!(
            out,
            "{},{},{},{},{}",
            fmt_f64(c.r_plus),
            fmt_f64(c.r_minus),
            bit(c.trisep),
            bit(c.bisep_wp),
            bit(c.bisep_projection)
        )?;
    }
    Ok(())
}

pub fn write_figure2_csv<W: Write + ?Sized>(out: &mut W, cells: &[Figure2Cell]) -> Result<()> {
    writeln!(out, "{FIGURE2_HEADER}")?;
    for c in cells {
        writeln!(
            out,
            "{},{},{},{}",
            fmt_f64(c.r1),
            fmt_f64(c.r2),
            fmt_f64(c.r3),
            c.label
        )?;
    }
    Ok(())
}

#[derive(Serialize)]
struct Figure1Json<'a> {
    figure: &'static str,
    resolution: usize,
    cells: &'a [Figure1Cell],
}

#[derive(Serialize)]
struct Figure2Json<'a> {
    figure: &'static str,
    r_plus: f64,
    r_minus: f64,
    resolution: usize,
    d: usize,
    cells: &'a [Figure2Cell],
}

pub fn write_figure1_json<W: Write + ?Sized>(
    out: &mut W,
    resolution: usize,
    cells: &[Figure1Cell],
) -> Result<()> {
    serde_json::to_writer_pretty(
        &mut *out,
        &Figure1Json {
            figure: "figure1",
            resolution,
            cells,
        },
    )?;
    writeln!(out)?;
    Ok(())
}

pub fn write_figure2_json<W: Write + ?Sized>(
    out: &mut W,
    r_plus: f64,
    r_minus: f64,
    resolution: usize,
    d: usize,
    cells: &[Figure2Cell],
) -> Result<()> {
    let doc = Figure2Json {
        figure: "figure2",
        r_plus,
        r_minus,
        resolution,
        d,
        cells,
    };
    serde_json::to_writer_pretty(&mut *out, &doc)?;
    writeln!(out)?;
    Ok(())
}
