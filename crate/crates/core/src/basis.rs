//! Echelon bases of polynomial G-modules and the two basis-building
//! algorithms: the general closure over arbitrary seed polynomials and the
//! shortcut for coordinate-function seeds.

use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::multpoly::{all_action_polys, qbar_table, ActionPolys, InterpolationOptions};
use crate::poly::Polynomial;
use crate::presentation::NilpotentPresentation;
use crate::scalar::Scalar;

/// An auto-reduced, monic basis sorted by ascending leading monomial.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyBasis<C = BigRational> {
    nvars: usize,
    elems: Vec<Polynomial<C>>,
    /// Number of `insert` calls.
    pub insert_count: u64,
    /// Number of basis multiples subtracted during reduction.
    pub reduction_steps: u64,
    /// `insert` calls made while following orbits of the seed polynomials.
    pub seed_orbit_inserts: u64,
}

impl<C: Scalar> PolyBasis<C> {
    pub fn new(nvars: usize) -> Self {
        Self {
            nvars,
            elems: Vec::new(),
            insert_count: 0,
            reduction_steps: 0,
            seed_orbit_inserts: 0,
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn elems(&self) -> &[Polynomial<C>] {
        &self.elems
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    fn check(&self, f: &Polynomial<C>) -> Result<()> {
        if f.nvars() != self.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                found: f.nvars(),
            });
        }
        Ok(())
    }

    /// Full normal form of `f` and the multiple of each element removed.
    pub fn normal_form(&self, f: &Polynomial<C>) -> Result<(Polynomial<C>, Vec<C>)> {
        self.reduce_counted(f).map(|(r, coeffs, _)| (r, coeffs))
    }

    /// As [`PolyBasis::normal_form`], adding to `reduction_steps`.
    pub fn reduce(&mut self, f: &Polynomial<C>) -> Result<(Polynomial<C>, Vec<C>)> {
        let (r, coeffs, steps) = self.reduce_counted(f)?;
        self.reduction_steps += steps;
        Ok((r, coeffs))
    }

    fn reduce_counted(&self, f: &Polynomial<C>) -> Result<(Polynomial<C>, Vec<C>, u64)> {
        self.check(f)?;
        let mut r = f.clone();
        let mut coeffs = vec![C::zero(); self.elems.len()];
        let mut steps = 0;
        for (k, b) in self.elems.iter().enumerate().rev() {
            let lm = b.leading_monomial()?;
            if let Some(c) = r.coeff(lm).cloned() {
                r.sub_scaled(&c, b)?;
                coeffs[k] = c;
                steps += 1;
            }
        }
        Ok((r, coeffs, steps))
    }

    /// Whether `f` lies in the span.
    pub fn contains(&self, f: &Polynomial<C>) -> Result<bool> {
        Ok(self.normal_form(f)?.0.is_zero())
    }

    /// Reduces `f`; a nonzero residual is added in monic form and the
    /// other elements are reduced against it. Returns the residual.
    pub fn insert(&mut self, f: &Polynomial<C>) -> Result<Polynomial<C>> {
        self.insert_count += 1;
        let (r, _) = self.reduce(f)?;
        if r.is_zero() {
            return Ok(r);
        }
        let new = r.monic()?;
        let lm = new.leading_monomial()?.clone();
        for b in &mut self.elems {
            if let Some(c) = b.coeff(&lm).cloned() {
                b.sub_scaled(&c, &new)?;
                self.reduction_steps += 1;
            }
        }
        let pos = self
            .elems
            .partition_point(|b| b.leading_monomial().expect("nonzero element") < &lm);
        self.elems.insert(pos, new);
        Ok(r)
    }

    /// Checks the ordering, echelon and monic invariants.
    pub fn check_invariants(&self) -> Result<()> {
        let fail = |msg: &str| Err(Error::Verification(format!("basis invariant: {msg}")));
        let lms = self
            .elems
            .iter()
            .map(|b| b.leading_monomial())
            .collect::<Result<Vec<_>>>()?;
        if lms.windows(2).any(|w| w[0] >= w[1]) {
            return fail("leading monomials not strictly increasing");
        }
        for (k, b) in self.elems.iter().enumerate() {
            if !b.leading_coeff()?.is_one() {
                return fail("element not monic");
            }
            for (l, lm) in lms.iter().enumerate() {
                if l != k && b.coeff(lm).is_some() {
                    return fail("leading monomial occurs in another element");
                }
            }
        }
        Ok(())
    }
}

/// `f^{a_j} = f(q_0^{(j)}, ..., q_{n-1}^{(j)})`.
pub fn act<C: Scalar>(f: &Polynomial<C>, ap: &ActionPolys<C>) -> Result<Polynomial<C>> {
    f.substitute(&ap.polys)
}

/// Safety limits for the closure loops.
#[derive(Debug, Clone)]
pub struct BasisOptions {
    /// Maximum iterations of one orbit loop; `None` uses `2 m n (n+1) + 4`.
    pub orbit_cap: Option<usize>,
    /// Fail with [`Error::NotClosed`] if the result is not a G-module.
    pub check_closure: bool,
}

impl Default for BasisOptions {
    fn default() -> Self {
        Self {
            orbit_cap: None,
            check_closure: true,
        }
    }
}

fn orbit_cap<C: Scalar>(aps: &[ActionPolys<C>], opts: &BasisOptions) -> usize {
    opts.orbit_cap.unwrap_or_else(|| {
        let n = aps.len();
        let m = qbar_table(aps).m;
        2 * m * n * (n + 1) + 4
    })
}

fn check_aps<C: Scalar>(aps: &[ActionPolys<C>]) -> Result<usize> {
    let n = aps.len();
    for (j, ap) in aps.iter().enumerate() {
        if ap.j != j || ap.k != 1 || ap.polys.len() != n {
            return Err(Error::Parameter(format!(
                "action polynomials out of order at generator {}",
                j + 1
            )));
        }
    }
    Ok(n)
}

/// Repeats `f := f^{a_j}; insert(f)` until the residual vanishes.
fn close_orbit<C: Scalar>(
    basis: &mut PolyBasis<C>,
    start: &Polynomial<C>,
    ap: &ActionPolys<C>,
    cap: usize,
) -> Result<u64> {
    let mut f = start.clone();
    let mut calls = 0;
    loop {
        f = act(&f, ap)?;
        calls += 1;
        if basis.insert(&f)?.is_zero() {
            return Ok(calls);
        }
        if calls as usize >= cap {
            return Err(Error::ClosureDiverged(cap));
        }
    }
}

/// Checks that every element maps into the span under each `a_j`, `j >= from`.
pub fn check_closure<C: Scalar>(basis: &PolyBasis<C>, aps: &[ActionPolys<C>], from: usize) -> Result<()> {
    for ap in &aps[from..] {
        for b in basis.elems() {
            if !basis.contains(&act(b, ap)?)? {
                return Err(Error::NotClosed(format!(
                    "image of {} under generator {} leaves the span",
                    b,
                    ap.j + 1
                )));
            }
        }
    }
    Ok(())
}

/// The general algorithm: insert the seeds, then for `j = n-1, ..., 0` close
/// every element of a snapshot of the basis under powers of `a_j`.
///
/// After each `j` the basis is checked to be closed under `a_j, ..., a_{n-1}`.
pub fn build_basis_general_with<C: Scalar>(
    aps: &[ActionPolys<C>],
    seeds: &[Polynomial<C>],
    opts: &BasisOptions,
) -> Result<PolyBasis<C>> {
    let n = check_aps(aps)?;
    if seeds.is_empty() {
        return Err(Error::Parameter("at least one seed polynomial is required".into()));
    }
    let cap = orbit_cap(aps, opts);
    let mut basis = PolyBasis::new(n);
    for f in seeds {
        basis.insert(f)?;
    }
    for j in (0..n).rev() {
        let snapshot = basis.elems().to_vec();
        for f in &snapshot {
            let calls = close_orbit(&mut basis, f, &aps[j], cap)?;
            if seeds.contains(f) {
                basis.seed_orbit_inserts += calls;
            }
        }
        if opts.check_closure {
            check_closure(&basis, aps, j)?;
        }
    }
    Ok(basis)
}

/// The coordinate-function algorithm: insert `t_0, ..., t_{n-1}` and
/// `t_{n-1}^{a_{n-1}}`, then for `j = n-2, ..., 0` and each `i > j` close
/// the orbit of `t_i` under powers of `a_j`.
pub fn build_basis_coordinate_with<C: Scalar>(
    aps: &[ActionPolys<C>],
    opts: &BasisOptions,
) -> Result<PolyBasis<C>> {
    let n = check_aps(aps)?;
    let cap = orbit_cap(aps, opts);
    let mut basis = PolyBasis::new(n);
    let t: Vec<Polynomial<C>> = (0..n).map(|i| Polynomial::var(n, i)).collect();
    for ti in &t {
        basis.insert(ti)?;
    }
    if n > 0 {
        basis.insert(&act(&t[n - 1], &aps[n - 1])?)?;
        basis.seed_orbit_inserts += 1;
    }
    for j in (0..n.saturating_sub(1)).rev() {
        for ti in &t[j + 1..] {
            basis.seed_orbit_inserts += close_orbit(&mut basis, ti, &aps[j], cap)?;
        }
    }
    if opts.check_closure {
        check_closure(&basis, aps, 0)?;
    }
    Ok(basis)
}

/// Which basis-building algorithm to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Algorithm {
    /// Closure of the seed polynomials over snapshots of the basis.
    Figure1,
    /// Orbits of the coordinate functions only.
    Figure2,
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Algorithm::Figure1 => "figure1",
            Algorithm::Figure2 => "figure2",
        })
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "figure1" => Ok(Algorithm::Figure1),
            "figure2" => Ok(Algorithm::Figure2),
            _ => Err(Error::Parameter(format!("unknown algorithm '{s}'"))),
        }
    }
}

/// Action polynomials of every generator, in generator order.
pub fn action_polys_all(pres: &NilpotentPresentation) -> Result<Vec<ActionPolys>> {
    Ok(all_action_polys(pres, &InterpolationOptions::default())?
        .into_iter()
        .map(|(ap, _)| ap)
        .collect())
}

/// The general algorithm over rational polynomials.
pub fn build_basis_general(pres: &NilpotentPresentation, seeds: &[Polynomial<BigRational>]) -> Result<PolyBasis> {
    build_basis_general_with(&action_polys_all(pres)?, seeds, &BasisOptions::default())
}

/// The coordinate-function algorithm over rational polynomials.
pub fn build_basis_coordinate(pres: &NilpotentPresentation) -> Result<PolyBasis> {
    build_basis_coordinate_with(&action_polys_all(pres)?, &BasisOptions::default())
}

/// Runs the chosen algorithm with coordinate-function seeds.
pub fn build_basis<C: Scalar>(
    aps: &[ActionPolys<C>],
    algorithm: Algorithm,
    opts: &BasisOptions,
) -> Result<PolyBasis<C>> {
    match algorithm {
        Algorithm::Figure1 => build_basis_general_with(aps, &coordinate_seeds(aps.len()), opts),
        Algorithm::Figure2 => build_basis_coordinate_with(aps, opts),
    }
}

/// Coordinate functions `t_0, ..., t_{n-1}` as seeds.
pub fn coordinate_seeds<C: Scalar>(n: usize) -> Vec<Polynomial<C>> {
    (0..n).map(|i| Polynomial::var(n, i)).collect()
}

/// Bound on the basis size: `(m/2) n (n+1) + 1`, rounded down.
pub fn dimension_bound(n: usize, m: usize) -> usize {
    m * n * (n + 1) / 2 + 1
}

/// Bound on `insert` calls of the general algorithm with coordinate seeds:
/// `n + 1 + ((m+1)/2) n^2 + ((1-m)/2) n`.
pub fn general_insert_bound(n: usize, m: usize) -> usize {
    // 2n + 2 + (m+1)n^2 + (1-m)n is always even
    let twice = 2 * n + 2 + (m + 1) * n * n + n;
    (twice - (m * n)) / 2
}

/// Bound on `insert` calls of the coordinate algorithm:
/// `n + 1 + (m/2) n (n-1)`.
pub fn coordinate_insert_bound(n: usize, m: usize) -> usize {
    n + 1 + m * n * n.saturating_sub(1) / 2
}
