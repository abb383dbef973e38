//! Serializable reports. Rationals are strings `p/q` (denominator omitted
//! when 1) and polynomials use the text syntax over `x1 .. xn`, where `xi`
//! is the exponent of the i-th generator.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use nilrep::matrep::{CheckReport, SampleReport, UnitriangularReport};
use nilrep::scalar::{parse_rational, rational_to_string};
use nilrep::{QMatrix, QPolynomial, Rational};

use crate::{CliError, CliResult};

fn rows_to_strings(m: &QMatrix) -> Vec<Vec<String>> {
    m.rows().iter().map(|r| r.iter().map(rational_to_string).collect()).collect()
}

fn polys_to_strings(ps: &[QPolynomial]) -> Vec<String> {
    ps.iter().map(ToString::to_string).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CollectReport {
    pub source: String,
    pub word: String,
    pub normal_form: Vec<String>,
}

impl CollectReport {
    pub fn text(&self) -> String {
        format!("({})\n", self.normal_form.join(", "))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeneratorPolys {
    pub generator: String,
    /// 1-based generator index.
    pub index: usize,
    /// Largest total degree among the correction terms.
    pub degree: u32,
    /// Collector calls used for interpolation.
    pub samples: usize,
    pub polys: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolysReport {
    pub source: String,
    pub generators: Vec<String>,
    /// Term counts of `q_i - x_i` for generator `j`, as `qbar_terms[i][j]`.
    pub qbar_terms: Vec<Vec<usize>>,
    pub m: usize,
    pub action: Vec<GeneratorPolys>,
}

impl PolysReport {
    pub fn text(&self) -> String {
        let mut out = String::new();
        for g in &self.action {
            let _ = writeln!(out, "x^e * {}^-1 (degree {}):", g.generator, g.degree);
            for (i, p) in g.polys.iter().enumerate() {
                let _ = writeln!(out, "  q{} = {p}", i + 1);
            }
        }
        let _ = writeln!(out, "m = {}", self.m);
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Counts {
    pub insert_count: u64,
    pub insert_bound: usize,
    pub reduction_steps: u64,
    pub seed_orbit_inserts: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BasisReport {
    pub source: String,
    pub algorithm: String,
    pub n: usize,
    pub m: usize,
    pub dimension: usize,
    pub dimension_bound: usize,
    pub basis: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counts: Option<Counts>,
}

impl BasisReport {
    pub fn new(
        source: String,
        algorithm: String,
        n: usize,
        m: usize,
        dimension_bound: usize,
        basis: &[QPolynomial],
        counts: Option<Counts>,
    ) -> Self {
        Self {
            source,
            algorithm,
            n,
            m,
            dimension: basis.len(),
            dimension_bound,
            basis: polys_to_strings(basis),
            counts,
        }
    }

    pub fn text(&self) -> String {
        let mut out = format!(
            "dimension {} (bound {}, n = {}, m = {}, {})\n",
            self.dimension, self.dimension_bound, self.n, self.m, self.algorithm
        );
        for (k, b) in self.basis.iter().enumerate() {
            let _ = writeln!(out, "  b{} = {b}", k + 1);
        }
        if let Some(c) = &self.counts {
            let _ = writeln!(
                out,
                "insert_count {} (bound {}), reduction_steps {}, seed_orbit_inserts {}",
                c.insert_count, c.insert_bound, c.reduction_steps, c.seed_orbit_inserts
            );
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub generator: String,
    pub rows: Vec<Vec<String>>,
}

impl MatrixJson {
    pub fn new(generator: String, m: &QMatrix) -> Self {
        Self {
            generator,
            rows: rows_to_strings(m),
        }
    }

    pub fn to_matrix(&self) -> CliResult<QMatrix> {
        let rows = self
            .rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|x| parse_rational(x).ok_or_else(|| CliError::Input(format!("bad rational '{x}'"))))
                    .collect::<CliResult<Vec<Rational>>>()
            })
            .collect::<CliResult<Vec<_>>>()?;
        Ok(QMatrix::from_rows(rows)?)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RepReport {
    pub source: String,
    pub algorithm: String,
    pub dimension: usize,
    pub generators: Vec<String>,
    pub basis: Vec<String>,
    pub matrices: Vec<MatrixJson>,
}

impl RepReport {
    pub fn text(&self) -> String {
        let mut out = format!("dimension {} ({})\nbasis: {}\n", self.dimension, self.algorithm, self.basis.join(", "));
        for m in &self.matrices {
            let _ = writeln!(out, "{}:", m.generator);
            let width = m.rows.iter().flatten().map(String::len).max().unwrap_or(1);
            for row in &m.rows {
                let cells: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
                let _ = writeln!(out, "  [{}]", cells.join(" "));
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RelationsJson {
    pub checked: usize,
    pub failures: Vec<String>,
}

impl From<&CheckReport> for RelationsJson {
    fn from(r: &CheckReport) -> Self {
        Self {
            checked: r.checked,
            failures: r.failures.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SamplingJson {
    pub trials: usize,
    pub max_len: usize,
    pub seed: u64,
    pub homomorphism_failures: usize,
    pub faithfulness_failures: usize,
    pub identity_words: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub first_failure: Option<String>,
}

impl SamplingJson {
    pub fn new(r: &SampleReport, max_len: usize, seed: u64) -> Self {
        Self {
            trials: r.trials,
            max_len,
            seed,
            homomorphism_failures: r.homomorphism_failures,
            faithfulness_failures: r.faithfulness_failures,
            identity_words: r.identity_words,
            first_failure: r.first_failure.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UnitriangularJson {
    pub integral: bool,
    pub lower_unitriangular: bool,
    pub upper_after_reversal: bool,
    pub non_integral_entries: usize,
}

impl From<&UnitriangularReport> for UnitriangularJson {
    fn from(r: &UnitriangularReport) -> Self {
        Self {
            integral: r.integral,
            lower_unitriangular: r.lower_unitriangular,
            upper_after_reversal: r.upper_after_reversal,
            non_integral_entries: r.non_integral_entries,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub source: String,
    pub algorithm: String,
    pub dimension: usize,
    pub relations: RelationsJson,
    pub sampling: SamplingJson,
    pub unitriangular: UnitriangularJson,
    /// Generators `a` with `(rho(a) - I)^d != 0`.
    pub non_unipotent: Vec<String>,
    pub passed: bool,
}

impl VerifyReport {
    pub fn text(&self) -> String {
        let verdict = |ok: bool| if ok { "pass" } else { "FAIL" };
        let s = &self.sampling;
        let u = &self.unitriangular;
        let mut out = format!("dimension {} ({})\n", self.dimension, self.algorithm);
        let _ = writeln!(
            out,
            "relations: {} ({} checked, {} failed)",
            verdict(self.relations.failures.is_empty()),
            self.relations.checked,
            self.relations.failures.len()
        );
        for f in &self.relations.failures {
            let _ = writeln!(out, "  failed: {f}");
        }
        let _ = writeln!(
            out,
            "sampling: {} ({} trials, max length {}, seed {}; {} homomorphism and {} faithfulness failures; {} trivial words)",
            verdict(s.homomorphism_failures == 0 && s.faithfulness_failures == 0),
            s.trials,
            s.max_len,
            s.seed,
            s.homomorphism_failures,
            s.faithfulness_failures,
            s.identity_words
        );
        if let Some(f) = &s.first_failure {
            let _ = writeln!(out, "  first failure: {f}");
        }
        let _ = writeln!(
            out,
            "unitriangular: {} (integral {}, lower {}, upper after reversal {})",
            verdict(u.integral && u.lower_unitriangular && u.upper_after_reversal),
            u.integral,
            u.lower_unitriangular,
            u.upper_after_reversal
        );
        let _ = writeln!(
            out,
            "unipotent: {}{}",
            verdict(self.non_unipotent.is_empty()),
            if self.non_unipotent.is_empty() {
                String::new()
            } else {
                format!(" ({})", self.non_unipotent.join(", "))
            }
        );
        let _ = writeln!(out, "overall: {}", verdict(self.passed));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrix_round_trip() {
        let m = QMatrix::from_rows(vec![
            vec![Rational::new(3.into(), 2.into()), Rational::from_integer((-4).into())],
            vec![Rational::new((-1).into(), 7.into()), Rational::from_integer(0.into())],
        ])
        .unwrap();
        let json = serde_json::to_string(&MatrixJson::new("a".into(), &m)).unwrap();
        assert!(json.contains("\"3/2\"") && json.contains("\"-1/7\"") && json.contains("\"-4\""));
        let back: MatrixJson = serde_json::from_str(&json).unwrap();
        assert_eq!(back.to_matrix().unwrap(), m);
    }

    #[test]
    fn bad_rational_rejected() {
        let bad = MatrixJson {
            generator: "a".into(),
            rows: vec![vec!["1/0".into()]],
        };
        assert!(bad.to_matrix().is_err());
    }
}
