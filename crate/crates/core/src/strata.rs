//! Symmetrized boundary strata of the moduli space of `T`-pointed rational
//! curves, where each marked point carries monodromy ω or ω̄.
//!
//! A one-dimensional stratum has a single four-valent component with four
//! trees hanging off it. Only the point counts `(i, j)` of each tree matter
//! for the pairings computed here, so a curve class is a multiset of four
//! [`BlockZ3`]s. A boundary divisor is determined up to symmetry by the
//! counts on one side of its node.

use std::cmp::Ordering;
use std::fmt;

use crate::arith::{from_int, Rational};
use crate::error::{Error, Result};

pub(crate) fn check_totals(n: u32, m: u32, min_total: u32) -> Result<()> {
    if (n as i64 - m as i64).rem_euclid(3) != 0 || n + m < min_total {
        return Err(Error::InvalidTotals { n, m, min_total });
    }
    Ok(())
}

/// Residue mod 3 of (ω count − ω̄ count) on the tree behind a node.
///
/// Zero means the node carries trivial monodromy. Which of 1 and 2 is called
/// ω is a naming convention only; see [`MonodromyConvention`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Residue(u8);

impl Residue {
    pub fn new(value: i64) -> Self {
        Residue(value.rem_euclid(3) as u8)
    }

    pub fn value(self) -> u8 {
        self.0
    }

    pub fn is_identity(self) -> bool {
        self.0 == 0
    }

    pub fn label(self, convention: MonodromyConvention) -> &'static str {
        match (self.0, convention) {
            (0, _) => "e",
            (1, MonodromyConvention::ResidueOneIsOmega) | (2, MonodromyConvention::ResidueTwoIsOmega) => "ω",
            _ => "ω̄",
        }
    }
}

/// How nontrivial residues are named at a node.
///
/// Both readings occur in the literature for this setup and neither affects
/// any computed value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MonodromyConvention {
    #[default]
    ResidueOneIsOmega,
    ResidueTwoIsOmega,
}

/// Marked-point counts on one tree attached to the four-valent component.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BlockZ3 {
    omega: u32,
    omegabar: u32,
}

impl BlockZ3 {
    pub fn new(omega: u32, omegabar: u32) -> Result<Self> {
        if omega + omegabar == 0 {
            return Err(Error::EmptyBlock { omega, omegabar });
        }
        Ok(BlockZ3 { omega, omegabar })
    }

    pub fn omega(&self) -> u32 {
        self.omega
    }

    pub fn omegabar(&self) -> u32 {
        self.omegabar
    }

    pub fn total(&self) -> u32 {
        self.omega + self.omegabar
    }

    pub fn residue(&self) -> Residue {
        node_residue(*self)
    }
}

impl fmt::Display for BlockZ3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.omega, self.omegabar)
    }
}

/// A symmetrized one-dimensional boundary stratum.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CurveClassZ3 {
    // sorted, so equal multisets compare equal
    blocks: [BlockZ3; 4],
    n: u32,
    m: u32,
}

impl CurveClassZ3 {
    pub fn new(mut blocks: [BlockZ3; 4]) -> Result<Self> {
        blocks.sort();
        let n = blocks.iter().map(|b| b.omega).sum();
        let m = blocks.iter().map(|b| b.omegabar).sum();
        if blocks.iter().any(|b| b.total() == 0) {
            return Err(Error::InvalidCurve("empty block".into()));
        }
        check_totals(n, m, 4)
            .map_err(|_| Error::InvalidCurve(format!("totals (n={n}, m={m}) violate n - m = 0 mod 3")))?;
        Ok(CurveClassZ3 { blocks, n, m })
    }

    /// Convenience constructor from `(ω, ω̄)` pairs.
    pub fn from_counts(counts: [(u32, u32); 4]) -> Result<Self> {
        let mut blocks = [BlockZ3 { omega: 0, omegabar: 0 }; 4];
        for (slot, (i, j)) in blocks.iter_mut().zip(counts) {
            *slot = BlockZ3::new(i, j)?;
        }
        Self::new(blocks)
    }

    pub fn blocks(&self) -> &[BlockZ3; 4] {
        &self.blocks
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn total(&self) -> u32 {
        self.n + self.m
    }

    /// The class with every ω and ω̄ count exchanged.
    pub fn conjugate(&self) -> Self {
        let mut blocks = self.blocks.map(|b| BlockZ3 { omega: b.omegabar, omegabar: b.omega });
        blocks.sort();
        CurveClassZ3 { blocks, n: self.m, m: self.n }
    }

    /// The seven ways the curve meets a boundary divisor: the four single
    /// trees (non-transverse, sign −1) and the three pairings of trees
    /// (transverse, sign +1). Single trees with one marked point give no
    /// stable divisor and are skipped.
    pub fn splittings(&self) -> Vec<Splitting> {
        let b = &self.blocks;
        let mut out = Vec::with_capacity(7);
        for x in b {
            if x.total() >= 2 {
                out.push(Splitting { omega: x.omega, omegabar: x.omegabar, sign: -1 });
            }
        }
        for p in 1..4 {
            out.push(Splitting { omega: b[0].omega + b[p].omega, omegabar: b[0].omegabar + b[p].omegabar, sign: 1 });
        }
        out
    }
}

impl fmt::Display for CurveClassZ3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}, {}, {}, {}}}", self.blocks[0], self.blocks[1], self.blocks[2], self.blocks[3])
    }
}

/// One side of a divisor met by a curve, with the sign of the intersection.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Splitting {
    pub omega: u32,
    pub omegabar: u32,
    pub sign: i32,
}

/// A symmetrized boundary divisor `D_i^j`: `i` ω points and `j` ω̄ points on
/// one side of the node.
///
/// A divisor and its complement are the same class. The stored side is the
/// one with fewer marked points; on a tie, the one with more ω points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DivisorClassZ3 {
    i: u32,
    j: u32,
    n: u32,
    m: u32,
}

impl DivisorClassZ3 {
    pub fn new(i: u32, j: u32, n: u32, m: u32) -> Result<Self> {
        let total = n + m;
        if i > n || j > m || i + j < 2 || total - i - j < 2 {
            return Err(Error::InvalidDivisor { i, j, n, m });
        }
        let (ci, cj) = canonical_side(i, j, n, m);
        Ok(DivisorClassZ3 { i: ci, j: cj, n, m })
    }

    pub fn i(&self) -> u32 {
        self.i
    }

    pub fn j(&self) -> u32 {
        self.j
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn complement(&self) -> (u32, u32) {
        (self.n - self.i, self.m - self.j)
    }

    pub fn residue(&self) -> Residue {
        Residue::new(self.i as i64 - self.j as i64)
    }

    /// Whether `(i, j)` names this class, as stored or as complement.
    pub fn matches(&self, i: u32, j: u32) -> bool {
        (i, j) == (self.i, self.j) || (i, j) == self.complement()
    }

    fn sort_key(&self) -> (u32, u32, u32, std::cmp::Reverse<u32>) {
        (self.n, self.m, self.i + self.j, std::cmp::Reverse(self.i))
    }
}

fn canonical_side(i: u32, j: u32, n: u32, m: u32) -> (u32, u32) {
    let (ci, cj) = (n - i, m - j);
    match (i + j).cmp(&(ci + cj)) {
        Ordering::Less => (i, j),
        Ordering::Greater => (ci, cj),
        Ordering::Equal if i >= ci => (i, j),
        Ordering::Equal => (ci, cj),
    }
}

impl Ord for DivisorClassZ3 {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl PartialOrd for DivisorClassZ3 {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for DivisorClassZ3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "D_{}^{}", self.i, self.j)
    }
}

/// Node-monodromy pattern on the four-valent component of a curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    /// two ω nodes and two ω̄ nodes
    I,
    /// three equal nontrivial nodes and one trivial node
    II,
    /// one ω, one ω̄ and two trivial nodes
    III,
    /// all nodes trivial
    IV,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::I, Family::II, Family::III, Family::IV];

    pub fn name(self) -> &'static str {
        match self {
            Family::I => "I",
            Family::II => "II",
            Family::III => "III",
            Family::IV => "IV",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub fn node_residue(block: BlockZ3) -> Residue {
    Residue::new(block.omega as i64 - block.omegabar as i64)
}

pub fn classify_family(curve: &CurveClassZ3) -> Family {
    let mut counts = [0usize; 3];
    for b in curve.blocks() {
        counts[node_residue(*b).value() as usize] += 1;
    }
    match counts {
        [0, 2, 2] => Family::I,
        [1, 3, 0] | [1, 0, 3] => Family::II,
        [2, 1, 1] => Family::III,
        [4, 0, 0] => Family::IV,
        // residues of a valid curve sum to 0 mod 3
        other => unreachable!("residue counts {other:?} of {curve} match no family"),
    }
}

/// Every curve class with totals `(n, m)`, each once, in sorted order.
///
/// `n + m = 3` is accepted and yields no classes.
pub fn enumerate_curve_classes(n: u32, m: u32) -> Result<Vec<CurveClassZ3>> {
    check_totals(n, m, 3)?;
    let mut candidates = Vec::new();
    for i in 0..=n {
        for j in 0..=m {
            if i + j > 0 {
                candidates.push(BlockZ3 { omega: i, omegabar: j });
            }
        }
    }
    candidates.sort();

    let mut out = Vec::new();
    let mut chosen = Vec::with_capacity(4);
    extend_multiset(&candidates, 0, n, m, &mut chosen, &mut out);
    Ok(out)
}

fn extend_multiset(
    candidates: &[BlockZ3],
    start: usize,
    n_left: u32,
    m_left: u32,
    chosen: &mut Vec<BlockZ3>,
    out: &mut Vec<CurveClassZ3>,
) {
    let slots = 4 - chosen.len() as u32;
    if slots == 0 {
        if n_left == 0 && m_left == 0 {
            let blocks = [chosen[0], chosen[1], chosen[2], chosen[3]];
            out.push(CurveClassZ3 {
                blocks,
                n: blocks.iter().map(|b| b.omega).sum(),
                m: blocks.iter().map(|b| b.omegabar).sum(),
            });
        }
        return;
    }
    // every remaining block needs at least one point
    if n_left + m_left < slots {
        return;
    }
    for (idx, b) in candidates.iter().enumerate().skip(start) {
        if b.omega > n_left || b.omegabar > m_left {
            continue;
        }
        chosen.push(*b);
        extend_multiset(candidates, idx, n_left - b.omega, m_left - b.omegabar, chosen, out);
        chosen.pop();
    }
}

/// Every symmetrized boundary divisor with totals `(n, m)`, each once.
///
/// `n + m = 3` is accepted and yields no classes.
pub fn enumerate_divisor_classes(n: u32, m: u32) -> Result<Vec<DivisorClassZ3>> {
    check_totals(n, m, 3)?;
    let mut out: Vec<DivisorClassZ3> = Vec::new();
    for i in 0..=n {
        for j in 0..=m {
            if let Ok(d) = DivisorClassZ3::new(i, j, n, m) {
                if d.i == i && d.j == j {
                    out.push(d);
                }
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Intersection number of a curve class with a divisor class.
pub fn pair_curve_divisor(curve: &CurveClassZ3, divisor: &DivisorClassZ3) -> Result<Rational> {
    if (curve.n, curve.m) != (divisor.n, divisor.m) {
        return Err(Error::MismatchedTotals {
            curve_n: curve.n,
            curve_m: curve.m,
            divisor_n: divisor.n,
            divisor_m: divisor.m,
        });
    }
    let total: i64 =
        curve.splittings().iter().filter(|s| divisor.matches(s.omega, s.omegabar)).map(|s| s.sign as i64).sum();
    Ok(from_int(total))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::ratio;
    use std::collections::BTreeSet;

    fn curve(counts: [(u32, u32); 4]) -> CurveClassZ3 {
        CurveClassZ3::from_counts(counts).unwrap()
    }

    #[test]
    fn residues() {
        assert_eq!(node_residue(BlockZ3::new(2, 0).unwrap()).value(), 2);
        assert_eq!(node_residue(BlockZ3::new(1, 1).unwrap()).value(), 0);
        assert_eq!(node_residue(BlockZ3::new(4, 1).unwrap()).value(), 0);
        assert!(BlockZ3::new(0, 0).is_err());
    }

    #[test]
    fn residue_labels() {
        let one = Residue::new(1);
        assert_eq!(one.label(MonodromyConvention::ResidueOneIsOmega), "ω");
        assert_eq!(one.label(MonodromyConvention::ResidueTwoIsOmega), "ω̄");
        assert_eq!(Residue::new(-3).label(MonodromyConvention::default()), "e");
    }

    #[test]
    fn families() {
        assert_eq!(classify_family(&curve([(1, 0), (1, 0), (0, 1), (0, 1)])), Family::I);
        assert_eq!(classify_family(&curve([(1, 0), (1, 0), (1, 0), (1, 1)])), Family::II);
        assert_eq!(classify_family(&curve([(0, 1), (0, 1), (0, 1), (1, 1)])), Family::II);
        assert_eq!(classify_family(&curve([(1, 0), (0, 1), (1, 1), (1, 1)])), Family::III);
        assert_eq!(classify_family(&curve([(1, 1), (1, 1), (1, 1), (3, 3)])), Family::IV);
    }

    #[test]
    fn curve_rejects_bad_totals() {
        assert!(CurveClassZ3::from_counts([(1, 0), (1, 0), (1, 0), (0, 1)]).is_err());
        assert!(CurveClassZ3::from_counts([(1, 0), (1, 0), (1, 0), (0, 0)]).is_err());
    }

    #[test]
    fn curve_is_an_unordered_multiset() {
        let a = curve([(2, 0), (1, 0), (0, 1), (0, 2)]);
        let b = curve([(0, 2), (0, 1), (2, 0), (1, 0)]);
        assert_eq!(a, b);
    }

    #[test]
    fn enumerate_curves_small() {
        let c = enumerate_curve_classes(2, 2).unwrap();
        assert_eq!(c, vec![curve([(1, 0), (1, 0), (0, 1), (0, 1)])]);
        assert!(enumerate_curve_classes(3, 0).unwrap().is_empty());
        assert!(enumerate_curve_classes(2, 0).is_err());
        let c = enumerate_curve_classes(6, 0).unwrap();
        assert_eq!(c, vec![curve([(1, 0), (1, 0), (1, 0), (3, 0)]), curve([(1, 0), (1, 0), (2, 0), (2, 0)])]);
        assert!(enumerate_curve_classes(4, 0).is_err());
    }

    #[test]
    fn enumerate_divisors_small() {
        let d = enumerate_divisor_classes(2, 2).unwrap();
        let keys: Vec<_> = d.iter().map(|d| (d.i(), d.j())).collect();
        assert_eq!(keys, vec![(2, 0), (1, 1)]);

        let d = enumerate_divisor_classes(3, 3).unwrap();
        let keys: Vec<_> = d.iter().map(|d| (d.i(), d.j())).collect();
        assert_eq!(keys, vec![(2, 0), (1, 1), (0, 2), (3, 0), (2, 1)]);

        assert!(enumerate_divisor_classes(3, 0).unwrap().is_empty());
        assert!(enumerate_divisor_classes(1, 1).is_err());
        assert!(enumerate_divisor_classes(2, 0).is_err());
    }

    #[test]
    fn divisor_canonicalization() {
        let a = DivisorClassZ3::new(1, 3, 3, 3).unwrap();
        let b = DivisorClassZ3::new(2, 0, 3, 3).unwrap();
        assert_eq!(a, b);
        assert_eq!((a.i(), a.j()), (2, 0));
        assert_eq!(DivisorClassZ3::new(0, 2, 2, 2).unwrap().i(), 2);
        assert!(DivisorClassZ3::new(1, 0, 3, 3).is_err());
        assert!(DivisorClassZ3::new(4, 0, 3, 3).is_err());
    }

    #[test]
    fn pairing_examples() {
        let fam1 = curve([(1, 0), (1, 0), (0, 1), (0, 1)]);
        let d20 = DivisorClassZ3::new(2, 0, 2, 2).unwrap();
        let d11 = DivisorClassZ3::new(1, 1, 2, 2).unwrap();
        assert_eq!(pair_curve_divisor(&fam1, &d20).unwrap(), ratio(1, 1));
        assert_eq!(pair_curve_divisor(&fam1, &d11).unwrap(), ratio(2, 1));

        let c = curve([(2, 0), (1, 0), (0, 1), (0, 2)]);
        let d = DivisorClassZ3::new(2, 0, 3, 3).unwrap();
        assert_eq!(pair_curve_divisor(&c, &d).unwrap(), ratio(-1, 1));

        let wrong = DivisorClassZ3::new(2, 0, 3, 3).unwrap();
        assert!(pair_curve_divisor(&fam1, &wrong).is_err());
    }

    #[test]
    fn splittings_count() {
        let c = curve([(2, 0), (1, 0), (0, 1), (0, 2)]);
        let s = c.splittings();
        assert_eq!(s.iter().filter(|s| s.sign < 0).count(), 2);
        assert_eq!(s.iter().filter(|s| s.sign > 0).count(), 3);
    }

    // Brute force over labelled points: split the point set {ω_1..ω_n, ω̄_1..ω̄_m}
    // into every subset, keep stable ones, and deduplicate by counts modulo complement.
    fn brute_force_divisor_count(n: u32, m: u32) -> usize {
        let total = n + m;
        let mut seen = BTreeSet::new();
        for mask in 0u32..(1 << total) {
            let size = mask.count_ones();
            if size < 2 || total - size < 2 {
                continue;
            }
            let i = (mask & ((1 << n) - 1)).count_ones();
            let j = size - i;
            let key = std::cmp::min((i, j), (n - i, m - j));
            seen.insert(key);
        }
        seen.len()
    }

    // Brute force over all ordered 4-tuples of blocks, deduplicated by sorting.
    fn brute_force_curve_count(n: u32, m: u32) -> usize {
        let blocks: Vec<(u32, u32)> =
            (0..=n).flat_map(|i| (0..=m).map(move |j| (i, j))).filter(|&(i, j)| i + j > 0).collect();
        let mut seen = BTreeSet::new();
        for a in &blocks {
            for b in &blocks {
                for c in &blocks {
                    for d in &blocks {
                        if a.0 + b.0 + c.0 + d.0 == n && a.1 + b.1 + c.1 + d.1 == m {
                            let mut v = [*a, *b, *c, *d];
                            v.sort();
                            seen.insert(v);
                        }
                    }
                }
            }
        }
        seen.len()
    }

    #[test]
    fn enumeration_matches_brute_force() {
        for total in 4..=9u32 {
            for n in 0..=total {
                let m = total - n;
                if (n as i64 - m as i64).rem_euclid(3) != 0 {
                    continue;
                }
                let curves = enumerate_curve_classes(n, m).unwrap();
                assert_eq!(curves.len(), brute_force_curve_count(n, m), "curves at ({n},{m})");
                let unique: BTreeSet<_> = curves.iter().collect();
                assert_eq!(unique.len(), curves.len());

                let divisors = enumerate_divisor_classes(n, m).unwrap();
                assert_eq!(divisors.len(), brute_force_divisor_count(n, m), "divisors at ({n},{m})");
                let unique: BTreeSet<_> = divisors.iter().collect();
                assert_eq!(unique.len(), divisors.len());
            }
        }
        assert_eq!(brute_force_divisor_count(3, 3), 5);
        assert_eq!(brute_force_curve_count(2, 2), 1);
        assert_eq!(brute_force_curve_count(6, 0), 2);
    }

    #[test]
    fn pairing_contributions_are_bounded() {
        for (n, m) in [(3, 3), (6, 3), (4, 4), (7, 1)] {
            let divisors = enumerate_divisor_classes(n, m).unwrap();
            for c in enumerate_curve_classes(n, m).unwrap() {
                let mut abs = 0i64;
                let mut signed = Rational::from_integer(0.into());
                for d in &divisors {
                    let p = pair_curve_divisor(&c, d).unwrap();
                    abs += p.numer().clone().try_into().map(|v: i64| v.abs()).unwrap();
                    signed += p;
                }
                let singles = c.blocks().iter().filter(|b| b.total() >= 2).count() as i64;
                assert!(abs <= 7);
                assert_eq!(signed, from_int(3 - singles));
            }
        }
    }

    #[test]
    fn family_invariant_under_conjugation() {
        for (n, m) in [(4, 1), (5, 2), (6, 3), (4, 4)] {
            for c in enumerate_curve_classes(n, m).unwrap() {
                assert_eq!(classify_family(&c), classify_family(&c.conjugate()));
            }
        }
    }

    #[test]
    fn pairing_ignores_divisor_representation() {
        for c in enumerate_curve_classes(4, 4).unwrap() {
            for i in 0..=4 {
                for j in 0..=4 {
                    if let (Ok(a), Ok(b)) = (DivisorClassZ3::new(i, j, 4, 4), DivisorClassZ3::new(4 - i, 4 - j, 4, 4)) {
                        assert_eq!(pair_curve_divisor(&c, &a).unwrap(), pair_curve_divisor(&c, &b).unwrap());
                    }
                }
            }
        }
    }
}
