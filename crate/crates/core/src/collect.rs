//! Collection from the left.
//!
//! The collected part is kept as a normal-form exponent vector and the
//! uncollected part as a stack. Appending a letter `a_k^{±1}` to a
//! collected element whose exponents past `k` are nonzero moves the letter
//! left past that suffix one generator at a time, replacing each
//! `x_l^{e_l}` by `(x_l^{a_k^{±1}})^{e_l}` and pushing the result back onto
//! the stack. Nilpotency guarantees the process terminates.

use std::rc::Rc;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::presentation::{ExponentVector, NilpotentPresentation, Word};
use crate::scalar::Exponent;

/// Default bound on single-letter moves per collection.
pub const DEFAULT_MAX_STEPS: u64 = 10_000_000;

enum Frame<E> {
    /// `gen^exp`, consumed one letter at a time.
    Syllable(usize, E),
    /// `word^reps` for a syllable list and a positive repetition count.
    Repeat(Rc<[(usize, E)]>, E),
}

/// A conjugate tail and its inverse.
type TailPair<E> = (Rc<[(usize, E)]>, Rc<[(usize, E)]>);

/// Collects words over a fixed presentation.
///
/// Conjugation tails are converted to the exponent type once, up front.
pub struct Collector<'p, E: Exponent = BigInt> {
    pres: &'p NilpotentPresentation,
    /// `conj[sign][i][j]`: the word `x_i^{x_j^{±1}}` and its inverse.
    conj: [Vec<Vec<Option<TailPair<E>>>>; 2],
    max_steps: u64,
}

impl<'p, E: Exponent> Collector<'p, E> {
    /// # Panics
    ///
    /// If a relation exponent does not fit `E`.
    pub fn new(pres: &'p NilpotentPresentation) -> Self {
        Self::try_new(pres).expect("relation exponents fit the exponent type")
    }

    pub fn try_new(pres: &'p NilpotentPresentation) -> Result<Self> {
        let n = pres.len();
        let mut conj = [Vec::with_capacity(n), Vec::with_capacity(n)];
        for (s, table) in conj.iter_mut().enumerate() {
            for i in 0..n {
                let mut row = Vec::with_capacity(i);
                for j in 0..i {
                    let tail = pres.conj(i, j, s == 0);
                    if tail.is_empty() {
                        row.push(None);
                        continue;
                    }
                    let mut word: Vec<(usize, E)> = vec![(i, E::one())];
                    for (k, e) in tail {
                        word.push((*k, E::from_bigint(e).ok_or(Error::Overflow)?));
                    }
                    let inverse: Vec<(usize, E)> =
                        word.iter().rev().map(|(g, e)| (*g, E::zero() - e.clone())).collect();
                    row.push(Some((word.into(), inverse.into())));
                }
                table.push(row);
            }
        }
        Ok(Self {
            pres,
            conj,
            max_steps: DEFAULT_MAX_STEPS,
        })
    }

    pub fn with_max_steps(mut self, max_steps: u64) -> Self {
        self.max_steps = max_steps;
        self
    }

    pub fn presentation(&self) -> &NilpotentPresentation {
        self.pres
    }

    fn check_len(&self, v: &ExponentVector<E>) -> Result<()> {
        if v.len() != self.pres.len() {
            return Err(Error::DimensionMismatch {
                expected: self.pres.len(),
                found: v.len(),
            });
        }
        Ok(())
    }

    /// Normal form of a word.
    pub fn collect(&self, word: &Word) -> Result<ExponentVector<E>> {
        let n = self.pres.len();
        let mut stack = Vec::with_capacity(word.letters().len());
        for (g, e) in word.letters().iter().rev() {
            if *g >= n {
                return Err(Error::IndexRange(format!("generator {g} in a word over {n} generators")));
            }
            stack.push(Frame::Syllable(*g, E::from_bigint(e).ok_or(Error::Overflow)?));
        }
        let mut state = ExponentVector::identity(n);
        self.run(&mut state, stack)?;
        Ok(state)
    }

    /// Normal form of `x^u x^v`.
    pub fn multiply(&self, u: &ExponentVector<E>, v: &ExponentVector<E>) -> Result<ExponentVector<E>> {
        self.check_len(u)?;
        self.check_len(v)?;
        let word = u.to_word().concat(&v.to_word());
        self.collect(&word)
    }

    pub fn invert(&self, u: &ExponentVector<E>) -> Result<ExponentVector<E>> {
        self.check_len(u)?;
        self.collect(&u.to_word().inverse())
    }

    /// `u^k`; negative powers go through the inverse.
    pub fn power(&self, u: &ExponentVector<E>, k: i64) -> Result<ExponentVector<E>> {
        self.check_len(u)?;
        let base = if k < 0 { self.invert(u)? } else { u.clone() };
        let mut k = k.unsigned_abs();
        let mut acc = ExponentVector::identity(u.len());
        let mut sq = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.multiply(&acc, &sq)?;
            }
            k >>= 1;
            if k > 0 {
                sq = self.multiply(&sq, &sq)?;
            }
        }
        Ok(acc)
    }

    fn run(&self, state: &mut ExponentVector<E>, mut stack: Vec<Frame<E>>) -> Result<()> {
        let mut steps: u64 = 0;
        // Index one past the last nonzero exponent of the collected part.
        let mut top = state.0.iter().rposition(|e| !e.is_zero()).map_or(0, |p| p + 1);
        while let Some(frame) = stack.pop() {
            let (g, exp) = match frame {
                Frame::Syllable(g, e) => (g, e),
                Frame::Repeat(word, reps) => {
                    let left = reps - E::one();
                    if !left.is_zero() {
                        stack.push(Frame::Repeat(word.clone(), left));
                    }
                    for (g, e) in word.iter().rev() {
                        stack.push(Frame::Syllable(*g, e.clone()));
                    }
                    continue;
                }
            };
            if exp.is_zero() {
                continue;
            }
            if top <= g + 1 {
                // nothing to the right of x_g: absorb the whole syllable
                let slot = &mut state.0[g];
                *slot = slot.checked_add(&exp).ok_or(Error::Overflow)?;
                top = if slot.is_zero() {
                    state.0[..g].iter().rposition(|e| !e.is_zero()).map_or(0, |p| p + 1)
                } else {
                    g + 1
                };
                continue;
            }

            steps += 1;
            if steps > self.max_steps {
                return Err(Error::CollectionLimit(self.max_steps));
            }
            let positive = exp.is_positive();
            let unit = if positive { E::one() } else { -E::one() };
            let rest = exp - unit.clone();
            if !rest.is_zero() {
                stack.push(Frame::Syllable(g, rest));
            }

            // x_{g+1}^{e_{g+1}} ... a_g^{±1} = a_g^{±1} (x_{g+1}^{a_g^{±1}})^{e_{g+1}} ...
            let table = &self.conj[if positive { 0 } else { 1 }];
            for l in (g + 1..top).rev() {
                let e = std::mem::replace(&mut state.0[l], E::zero());
                if e.is_zero() {
                    continue;
                }
                match &table[l][g] {
                    None => stack.push(Frame::Syllable(l, e)),
                    Some((word, inverse)) => {
                        if e.is_positive() {
                            stack.push(Frame::Repeat(word.clone(), e));
                        } else {
                            stack.push(Frame::Repeat(inverse.clone(), -e));
                        }
                    }
                }
            }
            let slot = &mut state.0[g];
            *slot = slot.checked_add(&unit).ok_or(Error::Overflow)?;
            top = if slot.is_zero() {
                state.0[..g].iter().rposition(|e| !e.is_zero()).map_or(0, |p| p + 1)
            } else {
                g + 1
            };
        }
        Ok(())
    }
}

/// Normal form of a word over `pres`.
pub fn collect(pres: &NilpotentPresentation, word: &Word) -> Result<ExponentVector> {
    Collector::new(pres).collect(word)
}

pub fn multiply(pres: &NilpotentPresentation, u: &ExponentVector, v: &ExponentVector) -> Result<ExponentVector> {
    Collector::new(pres).multiply(u, v)
}

pub fn invert(pres: &NilpotentPresentation, u: &ExponentVector) -> Result<ExponentVector> {
    Collector::new(pres).invert(u)
}

pub fn power(pres: &NilpotentPresentation, u: &ExponentVector, k: i64) -> Result<ExponentVector> {
    Collector::new(pres).power(u, k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::Family;
    use rand::{RngExt, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn heis() -> NilpotentPresentation {
        Family::Heisenberg.presentation().unwrap()
    }

    fn v(xs: &[i64]) -> ExponentVector {
        ExponentVector::from_i64s(xs)
    }

    #[test]
    fn heisenberg_words() {
        let h = heis();
        assert_eq!(collect(&h, &Word::from_i64s(&[(0, 1), (1, 1)])).unwrap(), v(&[1, 1, 0]));
        assert_eq!(collect(&h, &Word::from_i64s(&[(1, 1), (0, 1)])).unwrap(), v(&[1, 1, 1]));
        assert_eq!(collect(&h, &Word::from_i64s(&[(1, 3), (0, 2)])).unwrap(), v(&[2, 3, 6]));
    }

    /// Brute force: expand powers into single letters and collect each
    /// prefix letter by letter.
    #[test]
    fn single_letter_expansion_agrees() {
        let h = heis();
        let c = Collector::<BigInt>::new(&h);
        let mut state = ExponentVector::<BigInt>::identity(3);
        for (g, e) in [(1usize, 3i64), (0, 2)] {
            for _ in 0..e {
                state = c.multiply(&state, &ExponentVector::unit(3, g)).unwrap();
            }
        }
        assert_eq!(state, v(&[2, 3, 6]));
    }

    #[test]
    fn heisenberg_closed_form() {
        let h = heis();
        let c = Collector::<BigInt>::new(&h);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let a: Vec<i64> = (0..6).map(|_| rng.random_range(-9..=9)).collect();
            let got = c.multiply(&v(&a[..3]), &v(&a[3..])).unwrap();
            let want = v(&[a[0] + a[3], a[1] + a[4], a[2] + a[5] + a[1] * a[3]]);
            assert_eq!(got, want);
        }
    }

    #[test]
    fn identity_inverse_power() {
        let h = heis();
        let e = ExponentVector::identity(3);
        let u = v(&[4, -2, 7]);
        assert_eq!(multiply(&h, &e, &u).unwrap(), u);
        assert_eq!(multiply(&h, &u, &e).unwrap(), u);
        assert_eq!(invert(&h, &e).unwrap(), e);
        assert_eq!(invert(&h, &v(&[1, 1, 0])).unwrap(), v(&[-1, -1, 1]));
        assert_eq!(power(&h, &v(&[1, 1, 0]), 2).unwrap(), v(&[2, 2, 1]));
        assert_eq!(power(&h, &u, 1).unwrap(), u);
        assert_eq!(power(&h, &u, 0).unwrap(), e);
        assert_eq!(power(&h, &u, -1).unwrap(), invert(&h, &u).unwrap());
    }

    #[test]
    fn fixed_width_exponents_agree_and_overflow_is_reported() {
        let h = heis();
        let small = Collector::<i64>::new(&h);
        let big = Collector::<BigInt>::new(&h);
        let w = Word::from_i64s(&[(1, 5), (0, -3), (2, 2), (1, -1), (0, 4)]);
        let a = small.collect(&w).unwrap();
        let b = big.collect(&w).unwrap();
        assert_eq!(a.0.iter().map(|x| BigInt::from(*x)).collect::<Vec<_>>(), b.0);

        let huge = Word::from_i64s(&[(1, i64::MAX), (2, i64::MAX)]);
        let w = huge.concat(&Word::from_i64s(&[(2, 1)]));
        assert_eq!(small.collect(&w), Err(Error::Overflow));
        assert!(big.collect(&w).is_ok());
    }

    #[test]
    fn step_limit_is_enforced() {
        let h = heis();
        let c = Collector::<BigInt>::new(&h).with_max_steps(10);
        let w = Word::from_i64s(&[(1, 50), (0, 50)]);
        assert_eq!(c.collect(&w), Err(Error::CollectionLimit(10)));
    }

    #[test]
    fn dimension_and_index_errors() {
        let h = heis();
        assert!(matches!(
            multiply(&h, &v(&[1, 2]), &v(&[1, 2, 3])),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(matches!(
            collect(&h, &Word::from_i64s(&[(5, 1)])),
            Err(Error::IndexRange(_))
        ));
    }
}
