//! Nilpotent presentations of torsion-free nilpotent groups.
//!
//! A presentation on generators `x_0, ..., x_{n-1}` consists of the
//! conjugacy relations
//!
//! ```text
//! x_i^{x_j}      = x_i * x_{i+1}^{b(i,j,i+1)} ... x_{n-1}^{b(i,j,n-1)}
//! x_i^{x_j^{-1}} = x_i * x_{i+1}^{c(i,j,i+1)} ... x_{n-1}^{c(i,j,n-1)}
//! ```
//!
//! for every `j < i`. All relative orders are infinite. Indices in this
//! crate are 0-based; the text format and reports use the generator names.

pub mod builtin;
mod parse;

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::collect::Collector;
use crate::error::{Error, Result};
use crate::scalar::Exponent;

pub use builtin::Family;

/// Sparse tail of a conjugacy relation: `(generator, exponent)` pairs with
/// strictly increasing generator indices and nonzero exponents.
pub type Tail = Vec<(usize, BigInt)>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NilpotentPresentation {
    names: Vec<String>,
    /// `conj_pos[i][j]` for `j < i`.
    conj_pos: Vec<Vec<Tail>>,
    conj_neg: Vec<Vec<Tail>>,
}

impl NilpotentPresentation {
    /// Free abelian presentation: every pair of generators commutes.
    pub fn free_abelian(names: Vec<String>) -> Result<Self> {
        if names.is_empty() {
            return Err(Error::Parameter("a presentation needs at least one generator".into()));
        }
        let n = names.len();
        let empty = (0..n).map(|i| vec![Tail::new(); i]).collect::<Vec<_>>();
        Ok(Self {
            names,
            conj_pos: empty.clone(),
            conj_neg: empty,
        })
    }

    /// Free abelian presentation on `x1 .. xn`.
    pub fn free_abelian_rank(n: usize) -> Result<Self> {
        Self::free_abelian(default_names(n))
    }

    /// Builds a presentation from the tails of `x_i^{x_j}` alone, deriving
    /// every `x_i^{x_j^{-1}}` by collection.
    pub fn from_positive_tails(
        names: Vec<String>,
        tails: impl IntoIterator<Item = ((usize, usize), Tail)>,
    ) -> Result<Self> {
        let mut pres = Self::free_abelian(names)?;
        for ((i, j), tail) in tails {
            pres.set_conj_pos(i, j, tail)?;
        }
        pres.derive_missing_negative(&[])?;
        Ok(pres)
    }

    /// Hirsch length.
    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|g| g == name)
    }

    /// Tail of `x_i^{x_j}`.
    pub fn conj_pos(&self, i: usize, j: usize) -> &[(usize, BigInt)] {
        &self.conj_pos[i][j]
    }

    /// Tail of `x_i^{x_j^{-1}}`.
    pub fn conj_neg(&self, i: usize, j: usize) -> &[(usize, BigInt)] {
        &self.conj_neg[i][j]
    }

    /// Tail of `x_i^{x_j^{sign}}`.
    pub fn conj(&self, i: usize, j: usize, positive: bool) -> &[(usize, BigInt)] {
        if positive {
            self.conj_pos(i, j)
        } else {
            self.conj_neg(i, j)
        }
    }

    /// The exponent `b(i, j, k)`; zero when absent.
    pub fn conj_pos_exponent(&self, i: usize, j: usize, k: usize) -> BigInt {
        tail_exponent(&self.conj_pos[i][j], k)
    }

    /// The exponent `c(i, j, k)`; zero when absent.
    pub fn conj_neg_exponent(&self, i: usize, j: usize, k: usize) -> BigInt {
        tail_exponent(&self.conj_neg[i][j], k)
    }

    pub fn set_conj_pos(&mut self, i: usize, j: usize, tail: Tail) -> Result<()> {
        let tail = self.check_tail(i, j, tail)?;
        self.conj_pos[i][j] = tail;
        Ok(())
    }

    pub fn set_conj_neg(&mut self, i: usize, j: usize, tail: Tail) -> Result<()> {
        let tail = self.check_tail(i, j, tail)?;
        self.conj_neg[i][j] = tail;
        Ok(())
    }

    /// Whether `x_j` acts nontrivially on `x_i` in either direction.
    pub fn is_trivial_pair(&self, i: usize, j: usize) -> bool {
        self.conj_pos[i][j].is_empty() && self.conj_neg[i][j].is_empty()
    }

    fn check_tail(&self, i: usize, j: usize, tail: Tail) -> Result<Tail> {
        let n = self.len();
        if !(j < i && i < n) {
            return Err(Error::IndexRange(format!(
                "conjugacy relation needs j < i < n, got i={i}, j={j}, n={n}"
            )));
        }
        let mut out: Tail = Vec::with_capacity(tail.len());
        for (k, e) in tail {
            if k <= i || k >= n {
                return Err(Error::IndexRange(format!(
                    "tail of relation ({i}, {j}) mentions generator {k}; expected {} < k < {n}",
                    i
                )));
            }
            if let Some(last) = out.last() {
                if last.0 >= k {
                    return Err(Error::IndexRange(format!(
                        "tail of relation ({i}, {j}) is not in increasing generator order"
                    )));
                }
            }
            if !e.is_zero() {
                out.push((k, e));
            }
        }
        Ok(out)
    }

    /// Fills in `x_i^{x_j^{-1}}` for every pair not in `keep`, solving
    /// `(x_i u)^{x_j} = x_i` for `u` inside `G_{i+1}`.
    ///
    /// Pairs are processed from the last generator down so that every
    /// relation used while collecting is already known.
    pub(crate) fn derive_missing_negative(&mut self, keep: &[(usize, usize)]) -> Result<()> {
        let n = self.len();
        for i in (0..n).rev() {
            for j in 0..i {
                if keep.contains(&(i, j)) {
                    continue;
                }
                if self.conj_pos[i][j].is_empty() {
                    self.conj_neg[i][j].clear();
                    continue;
                }
                // u = x_j * t^{-1} * x_j^{-1} where x_i^{x_j} = x_i t.
                let mut word = Word::default();
                word.push(j, BigInt::one());
                for (k, e) in self.conj_pos[i][j].iter().rev() {
                    word.push(*k, -e);
                }
                word.push(j, -BigInt::one());
                let u: ExponentVector = Collector::new(self).collect(&word)?;
                debug_assert!(u.0[..=i].iter().all(Zero::is_zero));
                let tail = u
                    .0
                    .iter()
                    .enumerate()
                    .skip(i + 1)
                    .filter(|(_, e)| !e.is_zero())
                    .map(|(k, e)| (k, e.clone()))
                    .collect();
                self.conj_neg[i][j] = tail;
            }
        }
        Ok(())
    }

    /// Renders the presentation in the text format accepted by
    /// [`parse_presentation`].
    pub fn render(&self) -> String {
        let mut out = format!("gens: {}\n", self.names.join(" "));
        for i in 0..self.len() {
            for j in 0..i {
                if self.is_trivial_pair(i, j) {
                    continue;
                }
                out.push_str(&format!(
                    "rel: {}^{} = {}\n",
                    self.names[i],
                    self.names[j],
                    self.render_rhs(i, &self.conj_pos[i][j])
                ));
                out.push_str(&format!(
                    "rel: {}^({}^-1) = {}\n",
                    self.names[i],
                    self.names[j],
                    self.render_rhs(i, &self.conj_neg[i][j])
                ));
            }
        }
        out
    }

    fn render_rhs(&self, i: usize, tail: &[(usize, BigInt)]) -> String {
        let mut parts = vec![self.names[i].clone()];
        for (k, e) in tail {
            if e.is_one() {
                parts.push(self.names[*k].clone());
            } else {
                parts.push(format!("{}^{}", self.names[*k], e));
            }
        }
        parts.join(" ")
    }

    /// Parses a word such as `x2 x1^-1 x3^2`. Letters may be separated by
    /// whitespace or `*`; the empty string is the identity.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        parse::parse_word(self, text, 1)
    }

    /// Words for the right-hand sides of both conjugacy relations of a pair.
    pub fn relation_rhs(&self, i: usize, j: usize, positive: bool) -> Word {
        let mut word = Word::default();
        word.push(i, BigInt::one());
        for (k, e) in self.conj(i, j, positive) {
            word.push(*k, e.clone());
        }
        word
    }
}

fn tail_exponent(tail: &[(usize, BigInt)], k: usize) -> BigInt {
    tail.iter()
        .find(|(g, _)| *g == k)
        .map(|(_, e)| e.clone())
        .unwrap_or_default()
}

pub(crate) fn default_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("x{i}")).collect()
}

pub use parse::parse_presentation;

impl fmt::Display for NilpotentPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Normal-form exponents `(e_0, ..., e_{n-1})` of a group element.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExponentVector<E = BigInt>(pub Vec<E>);

impl<E: Exponent> ExponentVector<E> {
    pub fn identity(n: usize) -> Self {
        Self(vec![E::zero(); n])
    }

    /// The normal form of the single generator `x_i`.
    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = Self::identity(n);
        v.0[i] = E::one();
        v
    }

    pub fn from_i64s(values: &[i64]) -> Self {
        Self(
            values
                .iter()
                .map(|&v| E::from_i64(v).expect("exponent type holds i64"))
                .collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// The word `x_0^{e_0} ... x_{n-1}^{e_{n-1}}`.
    pub fn to_word(&self) -> Word {
        let mut word = Word::default();
        for (i, e) in self.0.iter().enumerate() {
            word.push(i, e.to_bigint());
        }
        word
    }

    pub fn as_slice(&self) -> &[E] {
        &self.0
    }
}

impl<E: fmt::Display> fmt::Display for ExponentVector<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, e) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str(")")
    }
}

/// A word in the generators and their inverses.
///
/// Letters carry nonzero exponents and adjacent letters on the same
/// generator are merged.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Word {
    letters: Vec<(usize, BigInt)>,
}

impl Word {
    pub fn new(letters: impl IntoIterator<Item = (usize, BigInt)>) -> Self {
        let mut word = Self::default();
        for (g, e) in letters {
            word.push(g, e);
        }
        word
    }

    pub fn from_i64s(letters: &[(usize, i64)]) -> Self {
        Self::new(letters.iter().map(|&(g, e)| (g, BigInt::from(e))))
    }

    pub fn push(&mut self, generator: usize, exponent: BigInt) {
        if exponent.is_zero() {
            return;
        }
        if let Some(last) = self.letters.last_mut() {
            if last.0 == generator {
                last.1 += exponent;
                if last.1.is_zero() {
                    self.letters.pop();
                }
                return;
            }
        }
        self.letters.push((generator, exponent));
    }

    pub fn letters(&self) -> &[(usize, BigInt)] {
        &self.letters
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Number of single-letter factors, counting `x^3` as three.
    pub fn length(&self) -> usize {
        self.letters
            .iter()
            .map(|(_, e)| e.magnitude().try_into().unwrap_or(usize::MAX))
            .sum()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut out = self.clone();
        for (g, e) in &other.letters {
            out.push(*g, e.clone());
        }
        out
    }

    pub fn inverse(&self) -> Word {
        Word::new(self.letters.iter().rev().map(|(g, e)| (*g, -e)))
    }

    pub fn max_generator(&self) -> Option<usize> {
        self.letters.iter().map(|(g, _)| *g).max()
    }

    pub fn render(&self, names: &[String]) -> String {
        self.letters
            .iter()
            .map(|(g, e)| {
                if e.is_one() {
                    names[*g].clone()
                } else {
                    format!("{}^{}", names[*g], e)
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// Outcome of a randomized associativity test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssociativityReport {
    pub trials: usize,
    pub failures: usize,
    /// First failing triple `(u, v, w)` with `(uv)w` and `u(vw)`.
    pub counterexample: Option<[ExponentVector; 5]>,
}

impl AssociativityReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

/// Checks `(uv)w = u(vw)` on random triples with entries in `[-5, 5]`.
///
/// This is a randomized surrogate for consistency, not a proof of it.
pub fn associativity_check(
    pres: &NilpotentPresentation,
    trials: usize,
    seed: u64,
) -> Result<AssociativityReport> {
    let collector = Collector::new(pres);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = pres.len();
    let mut report = AssociativityReport {
        trials,
        failures: 0,
        counterexample: None,
    };
    for _ in 0..trials {
        let mut draw = || -> ExponentVector {
            ExponentVector((0..n).map(|_| BigInt::from(rng.random_range(-5i64..=5))).collect())
        };
        let (u, v, w) = (draw(), draw(), draw());
        let left = collector.multiply(&collector.multiply(&u, &v)?, &w)?;
        let right = collector.multiply(&u, &collector.multiply(&v, &w)?)?;
        if left != right {
            report.failures += 1;
            if report.counterexample.is_none() {
                report.counterexample = Some([u, v, w, left, right]);
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn heisenberg() -> NilpotentPresentation {
        NilpotentPresentation::from_positive_tails(
            default_names(3),
            [((1, 0), vec![(2, BigInt::one())])],
        )
        .unwrap()
    }

    #[test]
    fn negative_tails_are_derived() {
        let h = heisenberg();
        assert_eq!(h.conj_neg_exponent(1, 0, 2), BigInt::from(-1));
        assert_eq!(h.conj_pos_exponent(1, 0, 2), BigInt::from(1));
        assert!(h.conj_neg(2, 0).is_empty());
        assert!(h.conj_neg(2, 1).is_empty());
    }

    #[test]
    fn tails_are_range_checked() {
        let mut p = NilpotentPresentation::free_abelian_rank(3).unwrap();
        assert!(matches!(
            p.set_conj_pos(0, 1, vec![]),
            Err(Error::IndexRange(_))
        ));
        assert!(matches!(
            p.set_conj_pos(2, 1, vec![(1, BigInt::one())]),
            Err(Error::IndexRange(_))
        ));
        assert!(matches!(
            p.set_conj_pos(1, 0, vec![(3, BigInt::one())]),
            Err(Error::IndexRange(_))
        ));
        p.set_conj_pos(1, 0, vec![(2, BigInt::zero())]).unwrap();
        assert!(p.conj_pos(1, 0).is_empty());
    }

    #[test]
    fn words_normalize() {
        let w = Word::from_i64s(&[(0, 2), (0, -2), (1, 1), (1, 0), (1, 2)]);
        assert_eq!(w.letters(), &[(1, BigInt::from(3))]);
        assert_eq!(w.length(), 3);
        let v = Word::from_i64s(&[(0, 1), (1, -2)]);
        assert!(v.concat(&v.inverse()).is_empty());
    }

    #[test]
    fn associativity_on_trivial_group() {
        let p = NilpotentPresentation::free_abelian_rank(1).unwrap();
        assert!(associativity_check(&p, 1, 0).unwrap().passed());
    }

    #[test]
    fn associativity_heisenberg_and_corrupted() {
        let h = heisenberg();
        let report = associativity_check(&h, 100, 1).unwrap();
        assert!(report.passed());
        assert_eq!(report.trials, 100);

        let mut bad = h.clone();
        bad.set_conj_neg(1, 0, vec![(2, BigInt::one())]).unwrap();
        let report = associativity_check(&bad, 100, 1).unwrap();
        assert!(!report.passed());
        let [u, v, w, left, right] = report.counterexample.unwrap();
        assert_ne!(left, right);
        let c = Collector::new(&bad);
        assert_eq!(c.multiply(&c.multiply(&u, &v).unwrap(), &w).unwrap(), left);
    }

    #[test]
    fn exponent_vector_display() {
        let v: ExponentVector = ExponentVector::from_i64s(&[1, -1, 0]);
        assert_eq!(v.to_string(), "(1, -1, 0)");
        assert_eq!(v.to_word(), Word::from_i64s(&[(0, 1), (1, -1)]));
    }
}
