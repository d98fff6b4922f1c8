//! λ₁ for degree-3 cyclic covers as a combination of boundary divisors, and
//! the exhaustive check of that expression against every boundary curve.
//!
//! The pushforward of λ₁ to the base is `Σ α_i^j D_i^j`; λ₁ itself is three
//! times the pullback of that sum. The factor three is kept on the expression
//! as [`BoundaryExpression::pullback_factor`] and never folded into α.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::arith::{from_int, ratio, Rational};
use crate::error::Result;
use crate::strata::{
    check_totals, classify_family, enumerate_curve_classes, enumerate_divisor_classes, pair_curve_divisor,
    CurveClassZ3, DivisorClassZ3, Family,
};

/// Intersection of the pushforward of λ₁ with a Family I curve. This comes
/// from an orbifold Gromov–Witten computation and is taken as given.
pub fn family_one_pairing() -> Rational {
    ratio(2, 9)
}

/// Coefficient of `D_i^j` with `T = n + m` marked points.
///
/// `2 t (T - t) / (27 (T - 1))` when `i - j = 0 mod 3`, otherwise
/// `2 (t - 1) (T - t - 1) / (27 (T - 1))`, with `t = i + j`. Symmetric under
/// taking the complement side. Sides with a single point get 0.
pub fn alpha_z3(i: u32, j: u32, n: u32, m: u32) -> Rational {
    let total = (n + m) as i64;
    let t = (i + j) as i64;
    let denom = 27 * (total - 1);
    if (i as i64 - j as i64).rem_euclid(3) == 0 {
        ratio(2 * t * (total - t), denom)
    } else {
        ratio(2 * (t - 1) * (total - t - 1), denom)
    }
}

/// The pushforward of λ₁ as a map from divisor classes to coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryExpression {
    n: u32,
    m: u32,
    entries: BTreeMap<DivisorClassZ3, Rational>,
    pullback_factor: Rational,
}

impl BoundaryExpression {
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn entries(&self) -> &BTreeMap<DivisorClassZ3, Rational> {
        &self.entries
    }

    pub fn pullback_factor(&self) -> &Rational {
        &self.pullback_factor
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Coefficient of the class named by `(i, j)` on either side.
    pub fn coefficient(&self, i: u32, j: u32) -> Option<&Rational> {
        let d = DivisorClassZ3::new(i, j, self.n, self.m).ok()?;
        self.entries.get(&d)
    }

    /// `Σ_D α_D (γ · D)`.
    pub fn pair(&self, curve: &CurveClassZ3) -> Result<Rational> {
        let mut acc = Rational::zero();
        for (d, alpha) in &self.entries {
            let p = pair_curve_divisor(curve, d)?;
            if !p.is_zero() {
                acc += alpha * p;
            }
        }
        Ok(acc)
    }
}

pub fn lambda1_expression(n: u32, m: u32) -> Result<BoundaryExpression> {
    let entries = enumerate_divisor_classes(n, m)?
        .into_iter()
        .map(|d| {
            let a = alpha_z3(d.i(), d.j(), n, m);
            (d, a)
        })
        .collect();
    Ok(BoundaryExpression { n, m, entries, pullback_factor: from_int(3) })
}

/// Intersection of a curve class with the boundary expression at its totals.
pub fn pairing_total(curve: &CurveClassZ3) -> Rational {
    let expr = lambda1_expression(curve.n(), curve.m()).expect("a valid curve has valid totals");
    expr.pair(curve).expect("curve and expression share totals")
}

/// The value the pairing must take: 2/9 on Family I, zero otherwise.
pub fn expected_pairing(curve: &CurveClassZ3) -> Rational {
    match classify_family(curve) {
        Family::I => family_one_pairing(),
        _ => Rational::zero(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationFailure {
    pub curve: CurveClassZ3,
    pub computed: Rational,
    pub expected: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub n: u32,
    pub m: u32,
    pub total_curves: usize,
    pub family_counts: BTreeMap<Family, usize>,
    pub failures: Vec<VerificationFailure>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Pairs every curve class at `(n, m)` with the boundary expression and
/// compares against [`expected_pairing`].
pub fn verify_theorem(n: u32, m: u32) -> Result<VerificationReport> {
    check_totals(n, m, 4)?;
    let expr = lambda1_expression(n, m)?;
    let curves = enumerate_curve_classes(n, m)?;

    let mut family_counts: BTreeMap<Family, usize> = Family::ALL.iter().map(|f| (*f, 0)).collect();
    let mut failures = Vec::new();
    for curve in &curves {
        *family_counts.entry(classify_family(curve)).or_default() += 1;
        let computed = expr.pair(curve)?;
        let expected = expected_pairing(curve);
        if computed != expected {
            failures.push(VerificationFailure { curve: curve.clone(), computed, expected });
        }
    }
    Ok(VerificationReport { n, m, total_curves: curves.len(), family_counts, failures })
}

/// All `(n, m)` with `n - m = 0 mod 3` and `4 <= n + m <= max_total`.
pub fn verification_totals(max_total: u32) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    for total in 4..=max_total {
        for n in (0..=total).rev() {
            let m = total - n;
            if (n as i64 - m as i64).rem_euclid(3) == 0 {
                out.push((n, m));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::strata::CurveClassZ3;
    use proptest::prelude::*;

    fn curve(counts: [(u32, u32); 4]) -> CurveClassZ3 {
        CurveClassZ3::from_counts(counts).unwrap()
    }

    #[test]
    fn alpha_values() {
        assert_eq!(alpha_z3(1, 0, 3, 0), ratio(0, 1));
        assert_eq!(alpha_z3(2, 0, 2, 2), ratio(2, 81));
        assert_eq!(alpha_z3(1, 1, 2, 2), ratio(8, 81));
        assert_eq!(alpha_z3(2, 0, 3, 3), ratio(2, 45));
        assert_eq!(alpha_z3(1, 1, 3, 3), ratio(16, 135));
        assert_eq!(alpha_z3(2, 1, 3, 3), ratio(8, 135));
    }

    #[test]
    fn expression_examples() {
        let e = lambda1_expression(2, 2).unwrap();
        assert_eq!(e.len(), 2);
        assert_eq!(e.coefficient(2, 0), Some(&ratio(2, 81)));
        assert_eq!(e.coefficient(0, 2), Some(&ratio(2, 81)));
        assert_eq!(e.coefficient(1, 1), Some(&ratio(8, 81)));
        assert_eq!(e.pullback_factor(), &from_int(3));

        let e = lambda1_expression(3, 0).unwrap();
        assert!(e.is_empty());
        assert_eq!(e.pullback_factor(), &from_int(3));
        assert!(lambda1_expression(4, 0).is_err());

        let e = lambda1_expression(3, 3).unwrap();
        assert_eq!(e.len(), 5);
        assert_eq!(e.coefficient(1, 1), Some(&ratio(16, 135)));
        assert_eq!(e.coefficient(2, 0), Some(&ratio(2, 45)));
    }

    #[test]
    fn pairing_examples() {
        assert_eq!(pairing_total(&curve([(1, 0), (1, 0), (0, 1), (0, 1)])), ratio(2, 9));
        assert_eq!(pairing_total(&curve([(1, 0), (0, 1), (1, 1), (1, 1)])), ratio(0, 1));
        assert_eq!(pairing_total(&curve([(1, 1), (1, 1), (1, 1), (3, 3)])), ratio(0, 1));
    }

    #[test]
    fn expected_values() {
        assert_eq!(expected_pairing(&curve([(1, 0), (1, 0), (0, 1), (0, 1)])), ratio(2, 9));
        assert_eq!(expected_pairing(&curve([(1, 0), (1, 0), (1, 0), (1, 1)])), ratio(0, 1));
        assert_eq!(expected_pairing(&curve([(1, 1), (1, 1), (1, 1), (3, 3)])), ratio(0, 1));
    }

    #[test]
    fn verify_small_cases() {
        let r = verify_theorem(2, 2).unwrap();
        assert_eq!(r.total_curves, 1);
        assert!(r.passed());
        assert_eq!(r.family_counts[&Family::I], 1);
        assert!(verify_theorem(3, 3).unwrap().passed());
        let r = verify_theorem(6, 3).unwrap();
        assert!(r.passed());
        assert_eq!(r.total_curves, 45);
        assert!(verify_theorem(1, 0).is_err());
    }

    #[test]
    fn verification_totals_listing() {
        assert_eq!(verification_totals(5), vec![(2, 2), (4, 1), (1, 4)]);
    }

    // The seven-term signed sum over the blocks, evaluated directly.
    fn seven_term(c: &CurveClassZ3) -> Rational {
        seven_term_ordered(c.blocks(), c.n(), c.m())
    }

    fn seven_term_ordered(b: &[crate::strata::BlockZ3; 4], n: u32, m: u32) -> Rational {
        let mut acc = Rational::zero();
        for x in b {
            acc -= alpha_z3(x.omega(), x.omegabar(), n, m);
        }
        for p in 1..4 {
            acc += alpha_z3(b[0].omega() + b[p].omega(), b[0].omegabar() + b[p].omegabar(), n, m);
        }
        acc
    }

    #[test]
    fn divisor_route_matches_seven_term_sum() {
        for (n, m) in verification_totals(10) {
            for c in enumerate_curve_classes(n, m).unwrap() {
                assert_eq!(pairing_total(&c), seven_term(&c), "{c}");
            }
        }
    }

    #[test]
    fn alpha_zero_pattern() {
        for total in 4..=20u32 {
            for n in 0..=total {
                let m = total - n;
                if (n as i64 - m as i64).rem_euclid(3) != 0 {
                    continue;
                }
                for i in 0..=n {
                    for j in 0..=m {
                        let a = alpha_z3(i, j, n, m);
                        assert!(a >= Rational::zero());
                        let t = i + j;
                        let nontrivial = (i as i64 - j as i64).rem_euclid(3) != 0;
                        let vanishes = t == 0 || t == total || (nontrivial && (t == 1 || t == total - 1));
                        assert_eq!(a.is_zero(), vanishes, "({i},{j}) at ({n},{m})");
                    }
                }
            }
        }
    }

    proptest! {
        #[test]
        fn alpha_complement_symmetry(total in 4u32..30, n_frac in 0u32..30, i in 0u32..30, j in 0u32..30) {
            let n = n_frac % (total + 1);
            let m = total - n;
            prop_assume!((n as i64 - m as i64).rem_euclid(3) == 0);
            let (i, j) = (i % (n + 1), j % (m + 1));
            prop_assert_eq!(alpha_z3(i, j, n, m), alpha_z3(n - i, m - j, n, m));
        }

        #[test]
        fn pairing_is_block_permutation_invariant(seed in 0usize..1000, perm in 0usize..24) {
            let curves = enumerate_curve_classes(6, 3).unwrap();
            let c = &curves[seed % curves.len()];
            let mut blocks = *c.blocks();
            // walk to the perm-th permutation via Heap-style swaps
            for k in 0..perm {
                blocks.swap(k % 4, (k / 4 + k + 1) % 4);
            }
            prop_assert_eq!(seven_term_ordered(&blocks, 6, 3), pairing_total(c));
        }
    }
}
