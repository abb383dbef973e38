//! Scaling table over a sized builtin family: basis dimension and insert
//! counts of both algorithms against their bounds.

use std::fmt::Write as _;
use std::ops::RangeInclusive;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use nilrep::basis::{
    build_basis, check_closure, coordinate_insert_bound, dimension_bound, general_insert_bound, Algorithm,
    BasisOptions,
};
use nilrep::multpoly::{all_action_polys, qbar_table, InterpolationOptions};
use nilrep::Family;

use crate::{CliError, CliResult};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub family: String,
    pub param: usize,
    /// Hirsch length.
    pub n: usize,
    /// Largest term count of a correction polynomial, at least 1.
    pub m: usize,
    pub max_degree: u32,
    /// Size of the closed basis from the general algorithm.
    pub dimension: usize,
    pub dimension_bound: usize,
    pub figure1_inserts: u64,
    pub figure1_seed_orbit_inserts: u64,
    pub figure1_insert_bound: usize,
    pub figure2_inserts: u64,
    pub figure2_insert_bound: usize,
    pub figure2_dimension: usize,
    /// Whether the coordinate algorithm's basis is closed under the action.
    pub figure2_closed: bool,
    pub bases_equal: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_ms: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchReport {
    pub family: String,
    pub rows: Vec<BenchRow>,
    /// Least-squares slope of log(dimension) against log(n); needs three rows.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub slope: Option<f64>,
}

pub fn bench_row(family: Family, param: usize) -> CliResult<BenchRow> {
    let start = Instant::now();
    let pres = family.presentation()?;
    let n = pres.len();
    let (aps, infos): (Vec<_>, Vec<_>) = all_action_polys(&pres, &InterpolationOptions::default())?
        .into_iter()
        .unzip();
    let m = qbar_table(&aps).m;
    let general = build_basis(&aps, Algorithm::Figure1, &BasisOptions::default())?;
    let unchecked = BasisOptions {
        check_closure: false,
        ..Default::default()
    };
    let coord = build_basis(&aps, Algorithm::Figure2, &unchecked)?;
    let figure2_closed = match check_closure(&coord, &aps, 0) {
        Ok(()) => true,
        Err(nilrep::Error::NotClosed(_)) => false,
        Err(e) => return Err(e.into()),
    };
    Ok(BenchRow {
        family: family.kind().to_string(),
        param,
        n,
        m,
        max_degree: infos.iter().map(|i| i.degree).max().unwrap_or(0),
        dimension: general.len(),
        dimension_bound: dimension_bound(n, m),
        figure1_inserts: general.insert_count,
        figure1_seed_orbit_inserts: general.seed_orbit_inserts + n as u64,
        figure1_insert_bound: general_insert_bound(n, m),
        figure2_inserts: coord.insert_count,
        figure2_insert_bound: coordinate_insert_bound(n, m),
        figure2_dimension: coord.len(),
        figure2_closed,
        bases_equal: general.elems() == coord.elems(),
        wall_ms: Some(start.elapsed().as_secs_f64() * 1e3),
    })
}

/// Least-squares slope of `y` against `x`.
pub fn slope(points: &[(f64, f64)]) -> Option<f64> {
    if points.len() < 3 {
        return None;
    }
    let k = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / k;
    let my = points.iter().map(|p| p.1).sum::<f64>() / k;
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

/// Parses `a..b` (inclusive) or a single size.
pub fn parse_sizes(text: &str) -> CliResult<RangeInclusive<usize>> {
    let bad = || CliError::Input(format!("bad size range '{text}', expected a..b"));
    let parse = |s: &str| s.trim().parse::<usize>().map_err(|_| bad());
    let range = match text.split_once("..") {
        Some((a, b)) => parse(a)?..=parse(b.trim_start_matches('='))?,
        None => {
            let a = parse(text)?;
            a..=a
        }
    };
    if range.is_empty() {
        return Err(bad());
    }
    Ok(range)
}

/// Runs one row per size, up to `jobs` rows at a time.
pub fn run(kind: &str, sizes: RangeInclusive<usize>, jobs: Option<usize>, timing: bool) -> CliResult<BenchReport> {
    let families = sizes
        .map(|s| Family::sized(kind, s).map(|f| (f, s)))
        .collect::<nilrep::Result<Vec<_>>>()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.unwrap_or(0))
        .build()
        .map_err(|e| CliError::Internal(e.to_string()))?;
    let mut rows = pool.install(|| {
        families
            .par_iter()
            .map(|&(f, s)| bench_row(f, s))
            .collect::<CliResult<Vec<_>>>()
    })?;
    if !timing {
        for r in &mut rows {
            r.wall_ms = None;
        }
    }
    let points: Vec<(f64, f64)> = rows
        .iter()
        .map(|r| ((r.n as f64).ln(), (r.dimension as f64).ln()))
        .collect();
    Ok(BenchReport {
        family: kind.to_string(),
        rows,
        slope: slope(&points),
    })
}

impl BenchReport {
    pub fn text(&self) -> String {
        let mut out = format!(
            "{:>5} {:>3} {:>2} {:>3} {:>5} {:>6} {:>6} {:>6} {:>6} {:>6} {:>5} {:>6} {:>8}\n",
            "param", "n", "m", "dim", "bound", "f1_ins", "f1_bnd", "f2_ins", "f2_bnd", "f2_dim", "equal", "closed", "ms"
        );
        for r in &self.rows {
            let ms = r.wall_ms.map_or("-".to_string(), |t| format!("{t:.1}"));
            let _ = writeln!(
                out,
                "{:>5} {:>3} {:>2} {:>3} {:>5} {:>6} {:>6} {:>6} {:>6} {:>6} {:>5} {:>6} {:>8}",
                r.param,
                r.n,
                r.m,
                r.dimension,
                r.dimension_bound,
                r.figure1_inserts,
                r.figure1_insert_bound,
                r.figure2_inserts,
                r.figure2_insert_bound,
                r.figure2_dimension,
                r.bases_equal,
                r.figure2_closed,
                ms
            );
        }
        if let Some(s) = self.slope {
            let _ = writeln!(out, "log-log slope of dimension vs n: {s:.3}");
        }
        out
    }

    pub fn csv(&self) -> CliResult<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        for r in &self.rows {
            w.serialize(r).map_err(|e| CliError::Internal(e.to_string()))?;
        }
        let bytes = w.into_inner().map_err(|e| CliError::Internal(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| CliError::Internal(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slope_needs_three_points() {
        assert_eq!(slope(&[(0.0, 0.0), (1.0, 2.0)]), None);
        let s = slope(&[(0.0, 1.0), (1.0, 3.0), (2.0, 5.0)]).unwrap();
        assert!((s - 2.0).abs() < 1e-12);
    }

    #[test]
    fn size_ranges() {
        assert_eq!(parse_sizes("3..6").unwrap(), 3..=6);
        assert_eq!(parse_sizes("4").unwrap(), 4..=4);
        assert!(parse_sizes("6..3").is_err());
        assert!(parse_sizes("a..3").is_err());
    }

    #[test]
    fn single_row_has_no_slope() {
        let r = run("free_nilpotent_class2", 2..=2, Some(1), false).unwrap();
        assert_eq!(r.rows.len(), 1);
        assert_eq!(r.slope, None);
        assert_eq!(r.rows[0].n, 3);
        assert!(!serde_json::to_string(&r).unwrap().contains("slope"));
        let csv = r.csv().unwrap();
        assert!(csv.starts_with("family,param,n,m,"));
    }
}
