//! Matrices of the generators acting on a closed polynomial basis, and the
//! checks run against them.
//!
//! Coefficient vectors are rows and matrices act on the right, so row `k`
//! of the matrix of `a_j` holds the coordinates of `b_k^{a_j}` and
//! `rho(gh) = rho(g) rho(h)`.

use num_bigint::BigInt;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::basis::{act, PolyBasis};
use crate::collect::Collector;
use crate::error::{Error, Result};
use crate::matrix::Mat;
use crate::multpoly::ActionPolys;
use crate::poly::Polynomial;
use crate::presentation::{NilpotentPresentation, Word};
use crate::scalar::Scalar;

/// Coefficients of `f` in the basis; errors if `f` is outside the span.
pub fn decompose<C: Scalar>(basis: &PolyBasis<C>, f: &Polynomial<C>) -> Result<Vec<C>> {
    let (r, coeffs) = basis.normal_form(f)?;
    if !r.is_zero() {
        return Err(Error::NotInSpan);
    }
    Ok(coeffs)
}

/// `sum_k c_k b_k`.
pub fn recombine<C: Scalar>(basis: &PolyBasis<C>, coeffs: &[C]) -> Result<Polynomial<C>> {
    if coeffs.len() != basis.len() {
        return Err(Error::DimensionMismatch {
            expected: basis.len(),
            found: coeffs.len(),
        });
    }
    let mut out = Polynomial::zero(basis.nvars());
    for (c, b) in coeffs.iter().zip(basis.elems()) {
        out.sub_scaled(&-c.clone(), b)?;
    }
    Ok(out)
}

/// Images of the generators in `GL_d`.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixRep<C = num_rational::BigRational> {
    pub dim: usize,
    pub mats: Vec<Mat<C>>,
    pub inverses: Vec<Mat<C>>,
    /// Basis polynomials indexing rows and columns.
    pub basis: Vec<Polynomial<C>>,
}

/// Builds the matrices of every generator on a G-closed basis.
pub fn representation<C: Scalar>(aps: &[ActionPolys<C>], basis: &PolyBasis<C>) -> Result<MatrixRep<C>> {
    let dim = basis.len();
    let pairs = aps
        .par_iter()
        .map(|ap| {
            let rows = basis
                .elems()
                .iter()
                .map(|b| decompose(basis, &act(b, ap)?))
                .collect::<Result<Vec<_>>>()?;
            let mat = Mat::from_rows(rows)?;
            let inv = mat.inverse()?;
            Ok((mat, inv))
        })
        .collect::<Result<Vec<_>>>()?;
    let (mats, inverses) = pairs.into_iter().unzip();
    Ok(MatrixRep {
        dim,
        mats,
        inverses,
        basis: basis.elems().to_vec(),
    })
}

impl<C: Scalar> MatrixRep<C> {
    pub fn ngens(&self) -> usize {
        self.mats.len()
    }

    /// Replaces generator `j`'s matrix, keeping the cached inverse in step.
    pub fn set_matrix(&mut self, j: usize, mat: Mat<C>) -> Result<()> {
        self.inverses[j] = mat.inverse()?;
        self.mats[j] = mat;
        Ok(())
    }

    /// Product of generator images along the word.
    pub fn image_of_word(&self, w: &Word) -> Result<Mat<C>> {
        let mut acc = Mat::identity(self.dim);
        for (g, e) in w.letters() {
            if *g >= self.ngens() {
                return Err(Error::IndexRange(format!(
                    "generator {} of {}",
                    g + 1,
                    self.ngens()
                )));
            }
            let k: i64 = e.try_into().map_err(|_| Error::Overflow)?;
            acc = acc.mul(&self.mats[*g].pow_signed(&self.inverses[*g], k))?;
        }
        Ok(acc)
    }
}

/// Outcome of a batch of exact checks.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CheckReport {
    pub checked: usize,
    pub failures: Vec<String>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks `rho(x_j)^{-1} rho(x_i) rho(x_j) = rho(rhs)` and the same for
/// conjugation by `x_j^{-1}`, for every pair `j < i`.
pub fn verify_relations<C: Scalar>(pres: &NilpotentPresentation, rep: &MatrixRep<C>) -> Result<CheckReport> {
    let n = pres.len();
    if rep.ngens() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: rep.ngens(),
        });
    }
    let mut report = CheckReport::default();
    for i in 0..n {
        for j in 0..i {
            for positive in [true, false] {
                let (pre, post) = if positive {
                    (&rep.inverses[j], &rep.mats[j])
                } else {
                    (&rep.mats[j], &rep.inverses[j])
                };
                let lhs = pre.mul(&rep.mats[i])?.mul(post)?;
                let rhs = rep.image_of_word(&pres.relation_rhs(i, j, positive))?;
                report.checked += 1;
                if lhs != rhs {
                    let sign = if positive { "" } else { "^-1" };
                    report.failures.push(format!(
                        "{}^({}{sign})",
                        pres.name(i),
                        pres.name(j)
                    ));
                }
            }
        }
    }
    Ok(report)
}

/// Results of random-word sampling.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SampleReport {
    pub trials: usize,
    /// `rho(u) rho(v) != rho(collect(uv))`.
    pub homomorphism_failures: usize,
    /// Words whose image is the identity exactly when the normal form is not.
    pub faithfulness_failures: usize,
    /// Sampled words that collect to the identity.
    pub identity_words: usize,
    pub first_failure: Option<String>,
}

impl SampleReport {
    pub fn passed(&self) -> bool {
        self.homomorphism_failures == 0 && self.faithfulness_failures == 0
    }
}

/// A word of length at most `max_len` with exponents in `[-5, 5] \ {0}`.
pub fn random_word(rng: &mut ChaCha8Rng, ngens: usize, max_len: usize) -> Word {
    let len = rng.random_range(0..=max_len);
    let mut w = Word::default();
    for _ in 0..len {
        let g = rng.random_range(0..ngens);
        let mut e: i64 = rng.random_range(1..=5);
        if rng.random_bool(0.5) {
            e = -e;
        }
        w.push(g, BigInt::from(e));
    }
    w
}

fn sample_trial<C: Scalar>(
    collector: &Collector<'_>,
    rep: &MatrixRep<C>,
    max_len: usize,
    seed: u64,
    trial: usize,
) -> Result<(bool, bool, bool, String)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(trial as u64));
    let n = rep.ngens();
    let names = collector.presentation().names();
    let u = random_word(&mut rng, n, max_len);
    let v = random_word(&mut rng, n, max_len);
    // a word that should be trivial: u followed by the inverse of its normal form
    let w = if rng.random_bool(0.5) {
        u.concat(&collector.collect(&u)?.to_word().inverse())
    } else {
        v.clone()
    };
    let ru = rep.image_of_word(&u)?;
    let rv = rep.image_of_word(&v)?;
    let uv = collector.collect(&u.concat(&v))?;
    let hom_ok = ru.mul(&rv)? == rep.image_of_word(&uv.to_word())?;
    let trivial = collector.collect(&w)?.is_identity();
    let faithful_ok = rep.image_of_word(&w)?.is_identity() == trivial;
    let label = format!("u = {}, v = {}, w = {}", u.render(names), v.render(names), w.render(names));
    Ok((hom_ok, faithful_ok, trivial, label))
}

/// Random-word checks of the homomorphism property and of faithfulness.
///
/// Trial `t` draws from a generator seeded with `seed + t`, so the report
/// does not depend on how trials are scheduled across threads.
pub fn verify_faithful_sample<C: Scalar>(
    pres: &NilpotentPresentation,
    rep: &MatrixRep<C>,
    trials: usize,
    max_len: usize,
    seed: u64,
) -> Result<SampleReport> {
    if trials == 0 {
        return Err(Error::Parameter("at least one trial is required".into()));
    }
    if rep.ngens() != pres.len() {
        return Err(Error::DimensionMismatch {
            expected: pres.len(),
            found: rep.ngens(),
        });
    }
    if pres.is_empty() {
        return Ok(SampleReport {
            trials,
            identity_words: trials,
            ..Default::default()
        });
    }
    let outcomes = (0..trials)
        .into_par_iter()
        .map_init(
            || Collector::new(pres),
            |collector, t| sample_trial(collector, rep, max_len, seed, t),
        )
        .collect::<Result<Vec<_>>>()?;
    let mut report = SampleReport {
        trials,
        ..Default::default()
    };
    for (hom_ok, faithful_ok, trivial, label) in outcomes {
        if !hom_ok {
            report.homomorphism_failures += 1;
        }
        if !faithful_ok {
            report.faithfulness_failures += 1;
        }
        if trivial {
            report.identity_words += 1;
        }
        if (!hom_ok || !faithful_ok) && report.first_failure.is_none() {
            report.first_failure = Some(label);
        }
    }
    Ok(report)
}

/// Shape of the generator matrices under the basis order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitriangularReport {
    pub integral: bool,
    /// Lower unitriangular in ascending basis order.
    pub lower_unitriangular: bool,
    /// Upper unitriangular after reversing the basis order.
    pub upper_after_reversal: bool,
    pub non_integral_entries: usize,
}

impl UnitriangularReport {
    pub fn passed(&self) -> bool {
        self.integral && self.lower_unitriangular && self.upper_after_reversal
    }
}

pub fn check_unitriangular<C: Scalar>(rep: &MatrixRep<C>) -> UnitriangularReport {
    let non_integral_entries = rep
        .mats
        .iter()
        .flat_map(|m| m.rows().iter().flatten())
        .filter(|x| !x.is_integral())
        .count();
    UnitriangularReport {
        integral: non_integral_entries == 0,
        lower_unitriangular: rep.mats.iter().all(Mat::is_lower_unitriangular),
        upper_after_reversal: rep.mats.iter().all(|m| m.reversed().is_upper_unitriangular()),
        non_integral_entries,
    }
}

/// Generators whose matrix `A` fails `(A - I)^d = 0`.
pub fn non_unipotent_generators<C: Scalar>(rep: &MatrixRep<C>) -> Result<Vec<usize>> {
    let id = Mat::identity(rep.dim);
    let mut out = Vec::new();
    for (j, m) in rep.mats.iter().enumerate() {
        if !m.sub(&id)?.pow(rep.dim as u64).is_zero() {
            out.push(j);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::{build_basis_coordinate_with, BasisOptions};
    use crate::multpoly::action_polys;
    use crate::poly::parse_polynomial;
    use crate::presentation::Family;
    use num_rational::BigRational;

    type Q = BigRational;

    fn q(x: i64) -> Q {
        Q::from_integer(x.into())
    }

    fn build(f: Family) -> (NilpotentPresentation, Vec<ActionPolys>, PolyBasis, MatrixRep) {
        let pres = f.presentation().unwrap();
        let aps: Vec<_> = (0..pres.len()).map(|j| action_polys(&pres, j).unwrap()).collect();
        let basis = build_basis_coordinate_with(&aps, &BasisOptions::default()).unwrap();
        let rep = representation(&aps, &basis).unwrap();
        (pres, aps, basis, rep)
    }

    #[test]
    fn decompose_examples() {
        let (_, _, basis, _) = build(Family::Heisenberg);
        let f = parse_polynomial("x3 - x2", 3).unwrap();
        assert_eq!(decompose(&basis, &f).unwrap(), vec![q(0), q(0), q(-1), q(1)]);
        assert_eq!(decompose(&basis, &Polynomial::zero(3)).unwrap(), vec![q(0); 4]);
        for (k, b) in basis.elems().iter().enumerate() {
            let mut unit = vec![q(0); 4];
            unit[k] = q(1);
            assert_eq!(decompose(&basis, b).unwrap(), unit);
        }
        let outside = parse_polynomial("x1*x2", 3).unwrap();
        assert_eq!(decompose(&basis, &outside), Err(Error::NotInSpan));
        assert_eq!(recombine(&basis, &decompose(&basis, &f).unwrap()).unwrap(), f);
    }

    #[test]
    fn free_abelian_rank_one() {
        let (_, _, _, rep) = build(Family::FreeAbelian(1));
        let want = Mat::from_rows(vec![vec![q(1), q(0)], vec![q(-1), q(1)]]).unwrap();
        assert_eq!(rep.mats, vec![want]);
    }

    #[test]
    fn heisenberg_matrices() {
        let (pres, _, _, rep) = build(Family::Heisenberg);
        assert_eq!(rep.dim, 4);
        let m3 = &rep.mats[2];
        for k in 0..4 {
            let mut row = vec![q(0); 4];
            row[k] = q(1);
            if k == 3 {
                row[0] = q(-1);
            }
            assert_eq!(m3.rows()[k], row, "row {k}");
        }
        assert!(verify_relations(&pres, &rep).unwrap().passed());
        assert!(check_unitriangular(&rep).passed());
        assert!(non_unipotent_generators(&rep).unwrap().is_empty());
        // x2 x1 x2^-1 x1^-1 collects to x3
        let comm = pres.parse_word("x2 x1 x2^-1 x1^-1").unwrap();
        let x3 = pres.parse_word("x3").unwrap();
        assert_eq!(rep.image_of_word(&comm).unwrap(), rep.image_of_word(&x3).unwrap());
        assert!(!rep.image_of_word(&x3).unwrap().is_identity());
        let cancel = pres.parse_word("x3 x3^-1").unwrap();
        assert!(rep.image_of_word(&cancel).unwrap().is_identity());
        assert!(rep.image_of_word(&Word::default()).unwrap().is_identity());
    }

    #[test]
    fn action_matches_matrices() {
        let (_, aps, basis, rep) = build(Family::Unitriangular(4));
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let coeffs: Vec<Q> = (0..basis.len()).map(|_| q(rng.random_range(-4..=4))).collect();
            let f = recombine(&basis, &coeffs).unwrap();
            for (ap, m) in aps.iter().zip(&rep.mats) {
                let image = act(&f, ap).unwrap();
                assert_eq!(decompose(&basis, &image).unwrap(), m.apply_row(&coeffs).unwrap());
            }
        }
    }

    #[test]
    fn sampling_passes_and_detects_corruption() {
        let (pres, _, _, rep) = build(Family::Heisenberg);
        let report = verify_faithful_sample(&pres, &rep, 200, 16, 7).unwrap();
        assert!(report.passed(), "{report:?}");
        assert!(report.identity_words > 0);
        assert_eq!(report, verify_faithful_sample(&pres, &rep, 200, 16, 7).unwrap());

        let mut bad = rep.clone();
        let mut m = bad.mats[2].clone();
        m.set(2, 1, m.get(2, 1).clone() + q(1));
        bad.set_matrix(2, m).unwrap();
        assert!(!verify_relations(&pres, &bad).unwrap().passed());
        assert!(!verify_faithful_sample(&pres, &bad, 200, 16, 7).unwrap().passed());
    }

    #[test]
    fn single_generator_has_no_relations() {
        let (pres, _, _, rep) = build(Family::FreeAbelian(1));
        let r = verify_relations(&pres, &rep).unwrap();
        assert_eq!(r.checked, 0);
        assert!(r.passed());
    }
}
