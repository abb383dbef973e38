//! Sparse multivariate polynomials under the reverse lexicographic order.
//!
//! `x_1^{k_1} ... x_n^{k_n} < x_1^{l_1} ... x_n^{l_n}` when the exponent
//! vectors first differ, scanning from the last variable down, at an index
//! where `k_i < l_i`. In particular `x_1 < x_2 < ... < x_n` and the
//! constant monomial is the smallest of all.

mod parse;

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub use parse::{parse_polynomial, parse_polynomial_with};

/// Exponent vector of a monomial; always exactly `nvars` long.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Self(exps)
    }

    pub fn one(nvars: usize) -> Self {
        Self(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m = Self::one(nvars);
        m.0[i] = 1;
        m
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&k| k == 0)
    }

    /// Index of the last variable with a nonzero exponent.
    pub fn max_var(&self) -> Option<usize> {
        self.0.iter().rposition(|&k| k > 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.iter().rev().cmp(other.0.iter().rev()))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Compares monomials in reverse lexicographic order.
pub fn revlex_compare(a: &Monomial, b: &Monomial) -> Result<Ordering> {
    if a.nvars() != b.nvars() {
        return Err(Error::DimensionMismatch {
            expected: a.nvars(),
            found: b.nvars(),
        });
    }
    Ok(a.cmp(b))
}

/// A polynomial with coefficients in `C`; zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial<C> {
    nvars: usize,
    terms: BTreeMap<Monomial, C>,
}

impl<C: Scalar> Polynomial<C> {
    pub fn zero(nvars: usize) -> Self {
        Self {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: C) -> Self {
        Self::term(Monomial::one(nvars), c)
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, C::one())
    }

    /// The coordinate function `x_i`.
    pub fn var(nvars: usize, i: usize) -> Self {
        Self::term(Monomial::var(nvars, i), C::one())
    }

    pub fn term(m: Monomial, c: C) -> Self {
        let mut p = Self::zero(m.nvars());
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// Sums the given terms; repeated monomials are combined.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, C)>) -> Result<Self> {
        let mut p = Self::zero(nvars);
        for (m, c) in terms {
            if m.nvars() != nvars {
                return Err(Error::DimensionMismatch {
                    expected: nvars,
                    found: m.nvars(),
                });
            }
            p.add_term(m, c);
        }
        Ok(p)
    }

    fn add_term(&mut self, m: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(slot) => {
                *slot = slot.clone() + c;
                if slot.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms from the largest monomial down.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &C)> + '_ {
        self.terms.iter().rev()
    }

    pub fn coeff(&self, m: &Monomial) -> Option<&C> {
        self.terms.get(m)
    }

    pub fn leading_term(&self) -> Result<(&Monomial, &C)> {
        self.terms.iter().next_back().ok_or(Error::ZeroPolynomial)
    }

    pub fn leading_monomial(&self) -> Result<&Monomial> {
        self.leading_term().map(|(m, _)| m)
    }

    pub fn leading_coeff(&self) -> Result<&C> {
        self.leading_term().map(|(_, c)| c)
    }

    /// Total degree; zero for the zero polynomial.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    /// One past the largest variable index that occurs, or 0 for constants.
    pub fn var_bound(&self) -> usize {
        self.terms
            .keys()
            .filter_map(Monomial::max_var)
            .max()
            .map_or(0, |v| v + 1)
    }

    /// Whether any variable with index in `range` occurs.
    pub fn involves_any(&self, range: std::ops::Range<usize>) -> bool {
        self.terms
            .keys()
            .any(|m| m.exps()[range.clone()].iter().any(|&k| k > 0))
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                found: other.nvars,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Self {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), a.clone() * c.clone()))
                .collect(),
        }
    }

    /// `self -= c * other`, in place.
    pub fn sub_scaled(&mut self, c: &C, other: &Self) -> Result<()> {
        self.check(other)?;
        for (m, a) in &other.terms {
            self.add_term(m.clone(), -(a.clone() * c.clone()));
        }
        Ok(())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = Self::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1.clone() * c2.clone());
            }
        }
        Ok(out)
    }

    pub fn pow(&self, mut k: u32) -> Self {
        let mut acc = Self::one(self.nvars);
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base).expect("same ring");
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base).expect("same ring");
            }
        }
        acc
    }

    /// Composition `f(args[0], ..., args[n-1])`.
    ///
    /// The result lives in the ring of the arguments, which must all share
    /// one variable count.
    pub fn substitute(&self, args: &[Self]) -> Result<Self> {
        if args.len() != self.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                found: args.len(),
            });
        }
        let target = args.first().map_or(0, |a| a.nvars);
        if let Some(bad) = args.iter().find(|a| a.nvars != target) {
            return Err(Error::DimensionMismatch {
                expected: target,
                found: bad.nvars,
            });
        }
        let mut powers: HashMap<(usize, u32), Self> = HashMap::new();
        let mut out = Self::zero(target);
        for (m, c) in &self.terms {
            let mut acc = Self::constant(target, c.clone());
            for (v, &k) in m.exps().iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let p = powers.entry((v, k)).or_insert_with(|| args[v].pow(k));
                acc = acc.mul(p)?;
            }
            for (m, c) in acc.terms {
                out.add_term(m, c);
            }
        }
        Ok(out)
    }

    pub fn eval(&self, point: &[C]) -> Result<C> {
        if point.len() != self.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                found: point.len(),
            });
        }
        let mut total = C::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(m.exps()) {
                for _ in 0..k {
                    t = t * x.clone();
                }
            }
            total = total + t;
        }
        Ok(total)
    }

    pub fn map_coeffs<D: Scalar>(&self, mut f: impl FnMut(&C) -> D) -> Polynomial<D> {
        let mut out = Polynomial::zero(self.nvars);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c));
        }
        out
    }

    /// Scales so that the leading coefficient is 1.
    pub fn monic(&self) -> Result<Self> {
        let lc = self.leading_coeff()?.clone();
        Ok(self.scale(&(C::one() / lc)))
    }

    /// Renders with generator names `x1 .. xn`.
    pub fn render(&self) -> String {
        let names: Vec<String> = (1..=self.nvars).map(|i| format!("x{i}")).collect();
        self.render_with(&names)
    }

    /// Renders as e.g. `(3/2)*x1^2*x3 - x2 + 1`, largest term first.
    pub fn render_with(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (m, c)) in self.terms().enumerate() {
            let negative = c.is_negative();
            if idx == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let a = c.abs();
            let factors: Vec<String> = m
                .exps()
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(v, &k)| {
                    if k == 1 {
                        names[v].clone()
                    } else {
                        format!("{}^{}", names[v], k)
                    }
                })
                .collect();
            if factors.is_empty() {
                out.push_str(&a.to_string());
                continue;
            }
            if !a.is_one() {
                if a.is_integral() {
                    out.push_str(&format!("{a}*"));
                } else {
                    out.push_str(&format!("({a})*"));
                }
            }
            out.push_str(&factors.join("*"));
        }
        out
    }
}

impl<C: Scalar> fmt::Display for Polynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl<C: Scalar> Neg for &Polynomial<C> {
    type Output = Polynomial<C>;

    fn neg(self) -> Polynomial<C> {
        self.scale(&-C::one())
    }
}

// Operator forms panic on mismatched variable counts; the named methods
// return the error instead.
impl<C: Scalar> Add for &Polynomial<C> {
    type Output = Polynomial<C>;

    fn add(self, rhs: Self) -> Polynomial<C> {
        Polynomial::add(self, rhs).expect("polynomials over the same variables")
    }
}

impl<C: Scalar> Sub for &Polynomial<C> {
    type Output = Polynomial<C>;

    fn sub(self, rhs: Self) -> Polynomial<C> {
        Polynomial::sub(self, rhs).expect("polynomials over the same variables")
    }
}

impl<C: Scalar> Mul for &Polynomial<C> {
    type Output = Polynomial<C>;

    fn mul(self, rhs: Self) -> Polynomial<C> {
        Polynomial::mul(self, rhs).expect("polynomials over the same variables")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    type Q = BigRational;

    fn p(text: &str) -> Polynomial<Q> {
        parse_polynomial(text, 3).unwrap()
    }

    fn m(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    fn q(a: i64, b: i64) -> Q {
        Q::new(a.into(), b.into())
    }

    #[test]
    fn revlex_examples() {
        assert_eq!(revlex_compare(&m(&[1, 0, 0]), &m(&[0, 1, 0])).unwrap(), Ordering::Less);
        assert_eq!(revlex_compare(&m(&[2, 1, 0]), &m(&[0, 2, 0])).unwrap(), Ordering::Less);
        assert_eq!(revlex_compare(&m(&[3, 1, 2]), &m(&[3, 1, 2])).unwrap(), Ordering::Equal);
        assert_eq!(revlex_compare(&m(&[0, 0, 1]), &m(&[5, 5, 0])).unwrap(), Ordering::Greater);
        assert!(revlex_compare(&m(&[1, 0]), &m(&[1, 0, 0])).is_err());
    }

    #[test]
    fn leading_monomials() {
        assert_eq!(p("x2").leading_monomial().unwrap(), &m(&[0, 1, 0]));
        assert_eq!(p("x3 - x2").leading_monomial().unwrap(), &m(&[0, 0, 1]));
        assert_eq!(p("5").leading_monomial().unwrap(), &m(&[0, 0, 0]));
        assert_eq!(Polynomial::<Q>::zero(3).leading_monomial(), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn add_and_scale() {
        let f = p("x1^2*x3 - 7*x2 + 1/3");
        assert!(f.add(&f.scale(&q(-1, 1))).unwrap().is_zero());
        assert_eq!(p("x2 + 2").scale(&q(1, 2)), p("(1/2)*x2 + 1"));
        assert_eq!(p("x3 - x2").add(&p("x2")).unwrap(), p("x3"));
        assert!(p("x1").add(&parse_polynomial("x1", 2).unwrap()).is_err());
    }

    #[test]
    fn substitution_examples() {
        let vars: Vec<_> = (0..3).map(|i| Polynomial::<Q>::var(3, i)).collect();
        let f = p("x1^2*x3 - (2/3)*x2*x3 + x2^3 - 4");
        assert_eq!(f.substitute(&vars).unwrap(), f);
        assert_eq!(p("x3").substitute(&[p("x1"), p("x2 - 1"), p("x3")]).unwrap(), p("x3"));
        assert_eq!(
            p("x3 + x2*x1").substitute(&[p("x1 - 1"), p("x2"), p("x3")]).unwrap(),
            p("x3 + x2*x1 - x2")
        );
        // into a ring with a different number of variables
        let g = p("x1*x3").substitute(&[
            parse_polynomial("x1 + 1", 2).unwrap(),
            parse_polynomial("0", 2).unwrap(),
            parse_polynomial("x2", 2).unwrap(),
        ]);
        assert_eq!(g.unwrap(), parse_polynomial("x1*x2 + x2", 2).unwrap());
        assert!(p("x1").substitute(&vars[..2]).is_err());
    }

    #[test]
    fn rendering() {
        assert_eq!(p("(3/2)*x1^2*x3 - x2 + 1").render(), "(3/2)*x1^2*x3 - x2 + 1");
        assert_eq!(p("1 - x2").render(), "-x2 + 1");
        assert_eq!(p("-2*x1 - 1/2").render(), "-2*x1 - 1/2");
        assert_eq!(Polynomial::<Q>::zero(3).render(), "0");
    }

    #[test]
    fn monic_and_degree() {
        let f = p("-2*x2*x1 + 4");
        assert_eq!(f.monic().unwrap(), p("x1*x2 - 2"));
        assert_eq!(f.degree(), 2);
        assert_eq!(f.var_bound(), 2);
        assert!(f.involves_any(0..1));
        assert!(!f.involves_any(2..3));
    }

    #[test]
    fn generic_over_coefficients() {
        let f = p("x1^2 - (1/2)*x2 + 3");
        let g: Polynomial<f64> = f.map_coeffs(|c| {
            use num_traits::ToPrimitive;
            c.to_f64().unwrap()
        });
        assert_eq!(g.eval(&[2.0, 1.0, 0.0]).unwrap(), 6.5);
        assert_eq!(f.eval(&[q(2, 1), q(1, 1), q(0, 1)]).unwrap(), q(13, 2));
    }
}
