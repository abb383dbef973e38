//! Right-multiplication polynomials: the normal form of `x^e a_j^{-k}` as a
//! polynomial function of `e`.
//!
//! The polynomials are recovered from the collector by exact interpolation.
//! Samples are taken on the simplex grid `{a : |a| <= D}` and turned into
//! Newton coefficients by forward differences, so the binomial expansion
//! `sum_a (Delta^a F)(0) * prod_v C(x_v, a_v)` is exact as soon as `D`
//! exceeds the true degree. The degree is raised until a full layer of
//! differences vanishes and the result agrees with the collector at random
//! points.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::collect::Collector;
use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::presentation::{ExponentVector, NilpotentPresentation, Word};
use crate::scalar::Scalar;

type Q = BigRational;

/// Polynomials `q_0, ..., q_{n-1}` with `x^e a_j^{-k} = x^{q(e)}`.
#[derive(Debug, Clone, PartialEq)]
pub struct ActionPolys<C = Q> {
    pub j: usize,
    pub k: u64,
    pub polys: Vec<Polynomial<C>>,
}

impl<C: Scalar> ActionPolys<C> {
    pub fn nvars(&self) -> usize {
        self.polys.len()
    }

    /// `q_i - x_i`.
    pub fn qbar(&self, i: usize) -> Polynomial<C> {
        let n = self.nvars();
        self.polys[i].sub(&Polynomial::var(n, i)).expect("same ring")
    }

    /// Checks `q_i = x_i` for `i < j`, `q_j = x_j - k`, and that `q_i - x_i`
    /// only involves `x_0 .. x_{i-1}` for `i > j`.
    pub fn check_structure(&self) -> Result<()> {
        let n = self.nvars();
        let fail = |msg: String| Err(Error::Verification(format!("generator {}: {msg}", self.j + 1)));
        for i in 0..n {
            let qbar = self.qbar(i);
            if i < self.j && !qbar.is_zero() {
                return fail(format!("component {} is not x{}", i + 1, i + 1));
            }
            if i == self.j {
                let expected = Polynomial::constant(n, -C::from_u64(self.k).expect("small k"));
                if qbar != expected {
                    return fail(format!("component {} is not x{} - {}", i + 1, i + 1, self.k));
                }
            }
            if i > self.j && qbar.involves_any(i..n) {
                return fail(format!("correction term {} involves x{}..x{}", i + 1, i + 1, n));
            }
        }
        Ok(())
    }

    /// Componentwise `self(other)`: right multiplication by `a_j^{-k}`
    /// followed by `a_j'^{-k'}`.
    pub fn compose(&self, other: &ActionPolys<C>) -> Result<ActionPolys<C>> {
        let polys = self
            .polys
            .iter()
            .map(|p| p.substitute(&other.polys))
            .collect::<Result<Vec<_>>>()?;
        let k = if self.j == other.j { self.k + other.k } else { 0 };
        Ok(ActionPolys { j: self.j, k, polys })
    }

    /// The polynomials for `a_j^{-k}`, by repeated composition.
    pub fn pow(&self, k: u64) -> Result<ActionPolys<C>> {
        if k == 0 {
            return Err(Error::Parameter("power must be at least 1".into()));
        }
        let mut acc = self.clone();
        for _ in 1..k {
            acc = acc.compose(self)?;
        }
        Ok(acc)
    }

    pub fn eval(&self, point: &[C]) -> Result<Vec<C>> {
        self.polys.iter().map(|p| p.eval(point)).collect()
    }

    pub fn map_coeffs<D: Scalar>(&self, mut f: impl FnMut(&C) -> D) -> ActionPolys<D> {
        ActionPolys {
            j: self.j,
            k: self.k,
            polys: self.polys.iter().map(|p| p.map_coeffs(&mut f)).collect(),
        }
    }
}

/// Tuning for the interpolation.
#[derive(Debug, Clone)]
pub struct InterpolationOptions {
    /// Largest total degree tried; `None` means `2n`.
    pub degree_cap: Option<u32>,
    /// Random points checked against the collector after fitting.
    pub verify_points: usize,
    /// Half-width of the box the random points are drawn from.
    pub verify_radius: i64,
    pub seed: u64,
}

impl Default for InterpolationOptions {
    fn default() -> Self {
        Self {
            degree_cap: None,
            verify_points: 200,
            verify_radius: 8,
            seed: 0x5eed,
        }
    }
}

/// Diagnostics from one interpolation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InterpolationInfo {
    pub j: usize,
    /// Total degree of the largest correction term.
    pub degree: u32,
    /// Distinct grid points sampled through the collector.
    pub samples: usize,
}

/// Normal forms of `x^e a_j^{-1}`, preferring machine integers.
struct Oracle<'p> {
    small: Option<Collector<'p, i64>>,
    big: Collector<'p, BigInt>,
    j: usize,
}

impl<'p> Oracle<'p> {
    fn new(pres: &'p NilpotentPresentation, j: usize) -> Self {
        Self {
            small: Collector::try_new(pres).ok(),
            big: Collector::new(pres),
            j,
        }
    }

    fn eval(&self, e: &ExponentVector) -> Result<Vec<BigInt>> {
        let mut word = e.to_word();
        word.push(self.j, -BigInt::one());
        self.collect(&word)
    }

    fn collect(&self, word: &Word) -> Result<Vec<BigInt>> {
        if let Some(small) = &self.small {
            match small.collect(word) {
                Ok(v) => return Ok(v.0.into_iter().map(BigInt::from).collect()),
                Err(Error::Overflow) => {}
                Err(err) => return Err(err),
            }
        }
        Ok(self.big.collect(word)?.0)
    }
}

/// All `a` in `N^k` with `|a| <= d`.
fn simplex(k: usize, d: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; k];
    fn rec(v: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if v == cur.len() {
            out.push(cur.clone());
            return;
        }
        for a in 0..=left {
            cur[v] = a;
            rec(v + 1, left - a, cur, out);
        }
        cur[v] = 0;
    }
    rec(0, d, &mut cur, &mut out);
    out
}

/// `C(x_v, a) = x_v (x_v - 1) ... (x_v - a + 1) / a!` in `n` variables.
fn binomial_poly(n: usize, v: usize, a: u32) -> Polynomial<Q> {
    let mut p = Polynomial::one(n);
    let x = Polynomial::var(n, v);
    for t in 0..a {
        let factor = x.sub(&Polynomial::constant(n, Q::from_integer(t.into()))).expect("same ring");
        p = p.mul(&factor).expect("same ring");
        p = p.scale(&Q::new(BigInt::one(), BigInt::from(t + 1)));
    }
    p
}

struct Interpolator<'p> {
    pres: &'p NilpotentPresentation,
    oracle: Oracle<'p>,
    j: usize,
    /// Variables `x_j .. x_{n-2}` are sampled; the rest stay at 0.
    nsampled: usize,
    cache: HashMap<Vec<u32>, Vec<BigInt>>,
}

impl<'p> Interpolator<'p> {
    fn new(pres: &'p NilpotentPresentation, j: usize) -> Self {
        let n = pres.len();
        Self {
            pres,
            oracle: Oracle::new(pres, j),
            j,
            nsampled: n.saturating_sub(1).saturating_sub(j),
            cache: HashMap::new(),
        }
    }

    /// `F(e) - e` at the grid point `a`, where `e` places `a` at `x_j..`.
    fn sample(&mut self, a: &[u32]) -> Result<Vec<BigInt>> {
        if let Some(v) = self.cache.get(a) {
            return Ok(v.clone());
        }
        let n = self.pres.len();
        let mut e = vec![BigInt::zero(); n];
        for (t, &x) in a.iter().enumerate() {
            e[self.j + t] = BigInt::from(x);
        }
        let e = ExponentVector(e);
        let mut out = self.oracle.eval(&e)?;
        for (o, x) in out.iter_mut().zip(&e.0) {
            *o -= x;
        }
        self.cache.insert(a.to_vec(), out.clone());
        Ok(out)
    }

    /// Newton coefficients `(Delta^a F)(0)` for all `|a| <= d`.
    fn newton(&mut self, d: u32) -> Result<HashMap<Vec<u32>, Vec<BigInt>>> {
        let points = simplex(self.nsampled, d);
        let mut table = HashMap::with_capacity(points.len());
        for p in &points {
            let v = self.sample(p)?;
            table.insert(p.clone(), v);
        }
        for v in 0..self.nsampled {
            for round in 1..=d {
                let mut targets: Vec<&Vec<u32>> = points.iter().filter(|p| p[v] >= round).collect();
                targets.sort_by(|a, b| b[v].cmp(&a[v]));
                for p in targets {
                    let mut below = p.clone();
                    below[v] -= 1;
                    let lower = table[&below].clone();
                    let cur = table.get_mut(p).expect("grid point");
                    for (c, l) in cur.iter_mut().zip(&lower) {
                        *c -= l;
                    }
                }
            }
        }
        Ok(table)
    }

    fn to_polys(&self, coeffs: &HashMap<Vec<u32>, Vec<BigInt>>) -> Vec<Polynomial<Q>> {
        let n = self.pres.len();
        let mut out: Vec<Polynomial<Q>> = (0..n).map(|_| Polynomial::zero(n)).collect();
        let mut basis_cache: HashMap<(usize, u32), Polynomial<Q>> = HashMap::new();
        let mut keys: Vec<&Vec<u32>> = coeffs.keys().collect();
        keys.sort();
        for a in keys {
            let values = &coeffs[a];
            if values.iter().all(Zero::is_zero) {
                continue;
            }
            let mut b = Polynomial::one(n);
            for (t, &deg) in a.iter().enumerate() {
                if deg > 0 {
                    let var = self.j + t;
                    let f = basis_cache
                        .entry((var, deg))
                        .or_insert_with(|| binomial_poly(n, var, deg));
                    b = b.mul(f).expect("same ring");
                }
            }
            for (i, c) in values.iter().enumerate() {
                if !c.is_zero() {
                    out[i].sub_scaled(&-Q::from_integer(c.clone()), &b).expect("same ring");
                }
            }
        }
        for (i, p) in out.iter_mut().enumerate() {
            *p = p.add(&Polynomial::var(n, i)).expect("same ring");
        }
        out
    }
}

fn verify(
    pres: &NilpotentPresentation,
    oracle: &Oracle<'_>,
    polys: &[Polynomial<Q>],
    opts: &InterpolationOptions,
    j: usize,
) -> Result<bool> {
    let n = pres.len();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ ((j as u64 + 1) << 32));
    let r = opts.verify_radius;
    for _ in 0..opts.verify_points {
        let point: Vec<i64> = (0..n).map(|_| rng.random_range(-r..=r)).collect();
        let expected = oracle.eval(&ExponentVector::from_i64s(&point))?;
        let qpoint: Vec<Q> = point.iter().map(|&x| Q::from_integer(x.into())).collect();
        for (p, want) in polys.iter().zip(&expected) {
            if p.eval(&qpoint)? != Q::from_integer(want.clone()) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Polynomials for right multiplication by `a_j^{-1}` with diagnostics.
pub fn action_polys_with(
    pres: &NilpotentPresentation,
    j: usize,
    opts: &InterpolationOptions,
) -> Result<(ActionPolys, InterpolationInfo)> {
    let n = pres.len();
    if j >= n {
        return Err(Error::IndexRange(format!("generator {} of {n}", j + 1)));
    }
    let cap = opts.degree_cap.unwrap_or(2 * n as u32);
    let mut interp = Interpolator::new(pres, j);
    let mut d = 2;
    loop {
        if d > cap + 1 {
            return Err(Error::DegreeCap { generator: j + 1, cap });
        }
        let coeffs = interp.newton(d)?;
        let top_zero = coeffs
            .iter()
            .filter(|(a, _)| a.iter().sum::<u32>() == d)
            .all(|(_, v)| v.iter().all(Zero::is_zero));
        if top_zero {
            let polys = interp.to_polys(&coeffs);
            if verify(pres, &interp.oracle, &polys, opts, j)? {
                let ap = ActionPolys { j, k: 1, polys };
                ap.check_structure()?;
                let degree = (0..n).map(|i| ap.qbar(i).degree()).max().unwrap_or(0);
                let info = InterpolationInfo {
                    j,
                    degree,
                    samples: interp.cache.len(),
                };
                return Ok((ap, info));
            }
        }
        d += 1;
    }
}

/// Polynomials for right multiplication by `a_j^{-1}` (0-based `j`).
pub fn action_polys(pres: &NilpotentPresentation, j: usize) -> Result<ActionPolys> {
    action_polys_with(pres, j, &InterpolationOptions::default()).map(|(ap, _)| ap)
}

/// Polynomials for right multiplication by `a_j^{-k}`.
pub fn action_polys_pow(pres: &NilpotentPresentation, j: usize, k: u64) -> Result<ActionPolys> {
    action_polys(pres, j)?.pow(k)
}

/// Action polynomials for every generator, computed in parallel.
pub fn all_action_polys(
    pres: &NilpotentPresentation,
    opts: &InterpolationOptions,
) -> Result<Vec<(ActionPolys, InterpolationInfo)>> {
    (0..pres.len())
        .into_par_iter()
        .map(|j| action_polys_with(pres, j, opts))
        .collect()
}

/// Term counts of the correction polynomials `q_i - x_i` for `i > j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QbarTable {
    /// `counts[i][j]` for `j < i`; zero elsewhere.
    pub counts: Vec<Vec<usize>>,
    /// `max(1, max counts)`.
    pub m: usize,
}

pub fn qbar_table<C: Scalar>(aps: &[ActionPolys<C>]) -> QbarTable {
    let n = aps.len();
    let mut counts = vec![vec![0; n]; n];
    for ap in aps {
        for (i, row) in counts.iter_mut().enumerate().skip(ap.j + 1) {
            row[ap.j] = ap.qbar(i).num_terms();
        }
    }
    let m = counts.iter().flatten().copied().max().unwrap_or(0).max(1);
    QbarTable { counts, m }
}

pub fn qbar_term_count(pres: &NilpotentPresentation) -> Result<QbarTable> {
    let aps: Vec<ActionPolys> = all_action_polys(pres, &InterpolationOptions::default())?
        .into_iter()
        .map(|(ap, _)| ap)
        .collect();
    Ok(qbar_table(&aps))
}
