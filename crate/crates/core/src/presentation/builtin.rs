//! Built-in families of presentations used by the harness.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{default_names, ExponentVector, NilpotentPresentation, Tail};
use crate::error::{Error, Result};

/// A parametrized family of torsion-free nilpotent groups.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    /// Free class-2 nilpotent group of rank 2.
    Heisenberg,
    FreeAbelian(usize),
    /// Free nilpotent group of class 2 and the given rank.
    FreeNilpotentClass2(usize),
    /// Unitriangular integer matrices of the given size.
    Unitriangular(usize),
}

impl Family {
    pub fn presentation(&self) -> Result<NilpotentPresentation> {
        match *self {
            Family::Heisenberg => free_nilpotent_class2(2),
            Family::FreeAbelian(n) => {
                if n == 0 {
                    return Err(Error::Parameter("free_abelian needs rank >= 1".into()));
                }
                NilpotentPresentation::free_abelian_rank(n)
            }
            Family::FreeNilpotentClass2(r) => free_nilpotent_class2(r),
            Family::Unitriangular(m) => unitriangular(m),
        }
    }

    /// Family name without its parameter.
    pub fn kind(&self) -> &'static str {
        match self {
            Family::Heisenberg => "heisenberg",
            Family::FreeAbelian(_) => "free_abelian",
            Family::FreeNilpotentClass2(_) => "free_nilpotent_class2",
            Family::Unitriangular(_) => "unitriangular",
        }
    }

    /// Instantiates a sized family name with a parameter.
    pub fn sized(kind: &str, param: usize) -> Result<Family> {
        match kind {
            "free_abelian" => Ok(Family::FreeAbelian(param)),
            "free_nilpotent_class2" => Ok(Family::FreeNilpotentClass2(param)),
            "unitriangular" => Ok(Family::Unitriangular(param)),
            _ => Err(Error::Parameter(format!("'{kind}' is not a sized family"))),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Heisenberg => f.write_str("heisenberg"),
            Family::FreeAbelian(n) => write!(f, "free_abelian:{n}"),
            Family::FreeNilpotentClass2(r) => write!(f, "free_nilpotent_class2:{r}"),
            Family::Unitriangular(m) => write!(f, "unitriangular:{m}"),
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    /// Accepts `heisenberg` and `family:param`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "heisenberg" {
            return Ok(Family::Heisenberg);
        }
        let (kind, param) = s
            .split_once(':')
            .ok_or_else(|| Error::Parameter(format!("unknown builtin '{s}'")))?;
        let param: usize = param
            .parse()
            .map_err(|_| Error::Parameter(format!("bad parameter in '{s}'")))?;
        Family::sized(kind, param)
    }
}

/// Free nilpotent class-2 group of rank `r`: generators `x1..xr` followed
/// by the commutators `c_{ab}` (`a < b`, lexicographic), all named `x*`.
pub fn free_nilpotent_class2(r: usize) -> Result<NilpotentPresentation> {
    if r < 2 {
        return Err(Error::Parameter(format!(
            "free_nilpotent_class2 needs rank >= 2, got {r}"
        )));
    }
    let n = r + r * (r - 1) / 2;
    let mut tails = Vec::new();
    let mut c = r;
    for a in 0..r {
        for b in a + 1..r {
            // x_b^{x_a} = x_b c_{ab}
            tails.push(((b, a), vec![(c, BigInt::one())]));
            c += 1;
        }
    }
    NilpotentPresentation::from_positive_tails(default_names(n), tails)
}

type IntMatrix = Vec<Vec<BigInt>>;

/// Positions `(p, q)`, `p < q`, of the elementary generators of UT(m),
/// ordered by superdiagonal and then by row.
pub fn unitriangular_positions(m: usize) -> Vec<(usize, usize)> {
    (1..m)
        .flat_map(|d| (0..m - d).map(move |p| (p, p + d)))
        .collect()
}

fn identity(m: usize) -> IntMatrix {
    (0..m)
        .map(|r| (0..m).map(|c| if r == c { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

fn matmul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let m = a.len();
    let mut out = vec![vec![BigInt::zero(); m]; m];
    for r in 0..m {
        for k in 0..m {
            if a[r][k].is_zero() {
                continue;
            }
            for c in 0..m {
                if !b[k][c].is_zero() {
                    out[r][c] += &a[r][k] * &b[k][c];
                }
            }
        }
    }
    out
}

/// `(I + E_pq)^e`, which is `I + e E_pq`.
fn elementary(m: usize, p: usize, q: usize, e: &BigInt) -> IntMatrix {
    let mut out = identity(m);
    out[p][q] = e.clone();
    out
}

/// The matrix `e_1^{v_1} ... e_n^{v_n}` of UT(m) for a normal-form vector.
pub fn unitriangular_matrix(m: usize, v: &ExponentVector) -> IntMatrix {
    let positions = unitriangular_positions(m);
    assert_eq!(positions.len(), v.len(), "exponent vector length");
    positions
        .iter()
        .zip(&v.0)
        .fold(identity(m), |acc, (&(p, q), e)| matmul(&acc, &elementary(m, p, q, e)))
}

/// Normal-form exponents of a unitriangular matrix, read off one
/// superdiagonal at a time while peeling generators from the left.
pub fn unitriangular_coordinates(matrix: &[Vec<BigInt>]) -> Result<ExponentVector> {
    let m = matrix.len();
    let mut rest: IntMatrix = matrix.to_vec();
    for (r, row) in rest.iter().enumerate() {
        if row.len() != m || !row[r].is_one() || row[..r].iter().any(|x| !x.is_zero()) {
            return Err(Error::Parameter("matrix is not upper unitriangular".into()));
        }
    }
    let mut out = Vec::new();
    for (p, q) in unitriangular_positions(m) {
        let c = rest[p][q].clone();
        if !c.is_zero() {
            // rest := (I + E_pq)^{-c} rest, i.e. row p -= c * row q
            let row_q = rest[q].clone();
            for (x, y) in rest[p].iter_mut().zip(&row_q) {
                *x -= &c * y;
            }
        }
        out.push(c);
    }
    debug_assert_eq!(rest, identity(m));
    Ok(ExponentVector(out))
}

/// UT(m, Z) on the elementary generators `e_pq`.
pub fn unitriangular(m: usize) -> Result<NilpotentPresentation> {
    if m < 3 {
        return Err(Error::Parameter(format!("unitriangular needs size >= 3, got {m}")));
    }
    let positions = unitriangular_positions(m);
    let n = positions.len();
    let names = positions
        .iter()
        .map(|&(p, q)| {
            if m > 9 {
                format!("e{}_{}", p + 1, q + 1)
            } else {
                format!("e{}{}", p + 1, q + 1)
            }
        })
        .collect();
    let one = BigInt::one();
    let gen = |k: usize, e: &BigInt| elementary(m, positions[k].0, positions[k].1, e);
    let mut pres = NilpotentPresentation::free_abelian(names)?;
    for i in 0..n {
        for j in 0..i {
            let xi = gen(i, &one);
            let xj = gen(j, &one);
            let xj_inv = gen(j, &-&one);
            let pos = matmul(&matmul(&xj_inv, &xi), &xj);
            let neg = matmul(&matmul(&xj, &xi), &xj_inv);
            pres.set_conj_pos(i, j, tail_of(i, &unitriangular_coordinates(&pos)?)?)?;
            pres.set_conj_neg(i, j, tail_of(i, &unitriangular_coordinates(&neg)?)?)?;
        }
    }
    Ok(pres)
}

fn tail_of(i: usize, v: &ExponentVector) -> Result<Tail> {
    let ok = v.0[..i].iter().all(Zero::is_zero) && v.0[i].is_one();
    if !ok {
        return Err(Error::Parameter(format!(
            "conjugate of generator {i} is not of the form x_i * tail: {v}"
        )));
    }
    Ok(v.0
        .iter()
        .enumerate()
        .skip(i + 1)
        .filter(|(_, e)| !e.is_zero())
        .map(|(k, e)| (k, e.clone()))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_names_parse() {
        for f in [
            Family::Heisenberg,
            Family::FreeAbelian(3),
            Family::FreeNilpotentClass2(4),
            Family::Unitriangular(5),
        ] {
            assert_eq!(f.to_string().parse::<Family>().unwrap(), f);
        }
        assert!("unitriangular".parse::<Family>().is_err());
        assert!("bogus:3".parse::<Family>().is_err());
        assert!("unitriangular:x".parse::<Family>().is_err());
    }

    #[test]
    fn parameter_ranges() {
        assert!(free_nilpotent_class2(1).is_err());
        assert!(unitriangular(2).is_err());
        assert!(Family::FreeAbelian(0).presentation().is_err());
    }

    #[test]
    fn hirsch_lengths() {
        assert_eq!(free_nilpotent_class2(3).unwrap().len(), 6);
        assert_eq!(free_nilpotent_class2(5).unwrap().len(), 15);
        for m in 3..=6 {
            assert_eq!(unitriangular(m).unwrap().len(), m * (m - 1) / 2);
        }
    }

    #[test]
    fn heisenberg_is_free_class2_rank2() {
        assert_eq!(
            Family::Heisenberg.presentation().unwrap(),
            free_nilpotent_class2(2).unwrap()
        );
    }

    /// UT(3) is the Heisenberg group with the central generator inverted:
    /// e12^{-1} e23 e12 = e23 e13^{-1}.
    #[test]
    fn ut3_matches_heisenberg_tables() {
        let ut = unitriangular(3).unwrap();
        let h = Family::Heisenberg.presentation().unwrap();
        assert_eq!(ut.names(), &["e12", "e23", "e13"]);
        let relabel = |tail: &[(usize, BigInt)]| -> Tail {
            tail.iter().map(|(k, e)| (*k, if *k == 2 { -e } else { e.clone() })).collect()
        };
        for i in 0..3 {
            for j in 0..i {
                assert_eq!(ut.conj_pos(i, j), relabel(h.conj_pos(i, j)), "pos ({i},{j})");
                assert_eq!(ut.conj_neg(i, j), relabel(h.conj_neg(i, j)), "neg ({i},{j})");
            }
        }
    }

    #[test]
    fn coordinates_invert_matrix() {
        let v = ExponentVector::from_i64s(&[2, -1, 3, 0, 5, -4]);
        let mat = unitriangular_matrix(4, &v);
        assert_eq!(unitriangular_coordinates(&mat).unwrap(), v);
    }
}
