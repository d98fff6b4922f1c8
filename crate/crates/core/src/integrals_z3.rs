//! Top intersections `∫ λ₁^{n+m-3}` over spaces of degree-3 cyclic covers.
//!
//! Replacing one λ₁ by its boundary expression and splitting the Hodge
//! bundle over each divisor gives
//!
//! ```text
//! I(n, m) = 3 Σ 2(t-1)(T-t-1) / (9(T-1)) · C(T-3, t-2) C(n, i) C(m, j) · I(i+1, j) · I(n-i, m-j+1)
//! ```
//!
//! with `T = n + m`, `t = i + j`, summed over `i - j = 2 (mod 3)` and `t >= 2`.
//!
//! Base cases are `I = 1/3` on three points and `I(2, 2) = 2/9`. The
//! recursion is only applied for `n + m >= 5`, and always to the orientation
//! with `n >= m`: the sum as written singles out ω over ω̄, and evaluating
//! `(1, 4)` directly would give 8/27 rather than `I(4, 1) = 4/27`.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::arith::{binomial, from_int, ratio, Rational};
use crate::error::{Error, Result};

/// `(n, m)`: ω and ω̄ branch point counts of a cover space.
///
/// Fields are public because recursion traces record sub-keys of terms whose
/// coefficient vanishes, and those need not be valid. Every evaluation entry
/// point checks [`IntegralKey::is_valid`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IntegralKey {
    pub n: u32,
    pub m: u32,
}

impl IntegralKey {
    pub fn new(n: u32, m: u32) -> Result<Self> {
        let key = IntegralKey { n, m };
        key.validate()?;
        Ok(key)
    }

    pub fn is_valid(&self) -> bool {
        (self.n as i64 - self.m as i64).rem_euclid(3) == 0 && self.total() >= 3
    }

    pub fn validate(&self) -> Result<()> {
        if self.is_valid() {
            Ok(())
        } else {
            Err(Error::InvalidKey { n: self.n, m: self.m })
        }
    }

    pub fn total(&self) -> u32 {
        self.n + self.m
    }

    /// Dimension of the cover space, and the power of λ₁ integrated.
    pub fn dimension(&self) -> u32 {
        self.total() - 3
    }

    /// Genus of the covering curve.
    pub fn genus(&self) -> u32 {
        self.total() - 2
    }

    /// The orientation with `n >= m`.
    pub fn canonical(&self) -> Self {
        IntegralKey { n: self.n.max(self.m), m: self.n.min(self.m) }
    }

    pub fn is_base_case(&self) -> bool {
        base_value(self).is_some()
    }
}

impl fmt::Display for IntegralKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.n, self.m)
    }
}

/// Value of a base case, or `None` if the key is computed by recursion.
pub fn base_value(key: &IntegralKey) -> Option<Rational> {
    match (key.n, key.m) {
        (n, m) if n + m == 3 => Some(ratio(1, 3)),
        (2, 2) => Some(ratio(2, 9)),
        _ => None,
    }
}

/// Whether `(i, j)` indexes a summand at all: `i - j = 2 (mod 3)` and `i + j >= 2`.
pub fn term_admissible(i: u32, j: u32, _n: u32, _m: u32) -> bool {
    (i as i64 - j as i64).rem_euclid(3) == 2 && i + j >= 2
}

/// One summand of the recursion at a key.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TermTrace {
    pub i: u32,
    pub j: u32,
    /// `2(t-1)(T-t-1) / (9(T-1))`
    pub coefficient: Rational,
    /// `C(T-3, t-2) C(n, i) C(m, j)`
    pub combinatorial_factor: BigInt,
    pub left_key: IntegralKey,
    pub right_key: IntegralKey,
    /// coefficient · combinatorial factor · I(left) · I(right); zero when the
    /// coefficient is zero
    pub term_value: Rational,
}

/// Summands at an already-canonical key, with `term_value` still unset.
fn term_skeletons(key: IntegralKey) -> Vec<TermTrace> {
    let IntegralKey { n, m } = key;
    let total = (n + m) as i64;
    let mut out = Vec::new();
    for i in 0..=n {
        for j in 0..=m {
            if !term_admissible(i, j, n, m) {
                continue;
            }
            let t = (i + j) as i64;
            let coefficient = ratio(2 * (t - 1) * (total - t - 1), 9 * (total - 1));
            let combinatorial_factor =
                binomial((total - 3) as u64, t - 2) * binomial(n as u64, i as i64) * binomial(m as u64, j as i64);
            out.push(TermTrace {
                i,
                j,
                coefficient,
                combinatorial_factor,
                left_key: IntegralKey { n: i + 1, m: j },
                right_key: IntegralKey { n: n - i, m: m - j + 1 },
                term_value: Rational::zero(),
            });
        }
    }
    out
}

/// Memoized evaluator. Values are stored under the canonical orientation, so
/// `(n, m)` and `(m, n)` share one entry.
#[derive(Debug, Default, Clone)]
pub struct HodgeIntegrals {
    memo: HashMap<IntegralKey, Rational>,
}

impl HodgeIntegrals {
    pub fn new() -> Self {
        Self::default()
    }

    /// Number of memoized non-base keys.
    pub fn len(&self) -> usize {
        self.memo.len()
    }

    pub fn is_empty(&self) -> bool {
        self.memo.is_empty()
    }

    pub fn value(&mut self, key: IntegralKey) -> Result<Rational> {
        self.value_observed(key, &mut |_, _| {})
    }

    /// Like [`value`](Self::value), calling `observer` with every summand of
    /// every key evaluated for the first time.
    pub fn value_observed(
        &mut self,
        key: IntegralKey,
        observer: &mut dyn FnMut(IntegralKey, &TermTrace),
    ) -> Result<Rational> {
        key.validate()?;
        Ok(self.eval(key.canonical(), observer))
    }

    fn eval(&mut self, key: IntegralKey, observer: &mut dyn FnMut(IntegralKey, &TermTrace)) -> Rational {
        if let Some(v) = base_value(&key) {
            return v;
        }
        if let Some(v) = self.memo.get(&key) {
            return v.clone();
        }
        let mut sum = Rational::zero();
        for mut term in term_skeletons(key) {
            if !term.coefficient.is_zero() {
                let left = self.eval(term.left_key.canonical(), observer);
                let right = self.eval(term.right_key.canonical(), observer);
                term.term_value = &term.coefficient * from_int(term.combinatorial_factor.clone()) * left * right;
                sum += &term.term_value;
            }
            observer(key, &term);
        }
        let value = from_int(3) * sum;
        self.memo.insert(key, value.clone());
        value
    }

    /// Summands at `key` (traced in its canonical orientation).
    pub fn trace(&mut self, key: IntegralKey) -> Result<Vec<TermTrace>> {
        key.validate()?;
        let key = key.canonical();
        if key.is_base_case() {
            return Err(Error::BaseCase { n: key.n, m: key.m });
        }
        let mut terms = term_skeletons(key);
        for term in &mut terms {
            if !term.coefficient.is_zero() {
                let left = self.value(term.left_key)?;
                let right = self.value(term.right_key)?;
                term.term_value = &term.coefficient * from_int(term.combinatorial_factor.clone()) * left * right;
            }
        }
        Ok(terms)
    }
}

pub fn hodge_integral(key: IntegralKey) -> Result<Rational> {
    HodgeIntegrals::new().value(key)
}

/// Plain recursion with no memo store.
pub fn hodge_integral_uncached(key: IntegralKey) -> Result<Rational> {
    key.validate()?;
    fn go(key: IntegralKey) -> Rational {
        let key = key.canonical();
        if let Some(v) = base_value(&key) {
            return v;
        }
        let mut sum = Rational::zero();
        for term in term_skeletons(key) {
            if !term.coefficient.is_zero() {
                sum += term.coefficient * from_int(term.combinatorial_factor) * go(term.left_key) * go(term.right_key);
            }
        }
        from_int(3) * sum
    }
    Ok(go(key))
}

pub fn trace_terms(key: IntegralKey) -> Result<Vec<TermTrace>> {
    HodgeIntegrals::new().trace(key)
}

/// Every valid key with `n >= m` and `n + m <= max_total`, by total then by
/// descending `n`.
pub fn table_keys(max_total: u32) -> Vec<IntegralKey> {
    let mut keys = Vec::new();
    for total in 3..=max_total {
        for m in 0..=total / 2 {
            let key = IntegralKey { n: total - m, m };
            if key.is_valid() {
                keys.push(key);
            }
        }
    }
    keys
}

pub fn integral_table(max_total: u32) -> Vec<(IntegralKey, Rational)> {
    let mut integrals = HodgeIntegrals::new();
    table_keys(max_total)
        .into_iter()
        .map(|k| {
            let v = integrals.value(k).expect("table keys are valid");
            (k, v)
        })
        .collect()
}

/// Tabulated values the recursion is checked against, as `(n, m, num, den)`.
///
/// The `(4, 4)` entry is listed as 446923/5103; the recursion, whose base
/// cases reproduce every other row, gives 446912/5103.
pub const REFERENCE_TABLE: [(u32, u32, i64, i64); 7] = [
    (3, 0, 1, 3),
    (2, 2, 2, 9),
    (4, 1, 4, 27),
    (6, 0, 8, 27),
    (3, 3, 128, 135),
    (5, 2, 3392, 729),
    (4, 4, 446923, 5103),
];

pub fn reference_value(key: IntegralKey) -> Option<Rational> {
    let k = key.canonical();
    REFERENCE_TABLE.iter().find(|(n, m, _, _)| (*n, *m) == (k.n, k.m)).map(|&(_, _, num, den)| ratio(num, den))
}
