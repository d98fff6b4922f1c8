//! Hodge classes over spaces of degree-2 admissible covers with `N` branch
//! points.
//!
//! λ₁ is `Σ α_i Δ_i` over boundary divisors. λ₂ = λ₁²/2 is a combination of
//! codimension-2 strata `Δ_{i1,i2,i3}`, whose coefficients are obtained by
//! restricting λ₁ to each divisor and expanding again. The composed form
//! below is that product of λ₁ coefficients; the closed forms are its
//! simplification, case by case on parities.

use std::collections::BTreeMap;
use std::fmt;

use crate::arith::{from_int, ratio, Rational};
use crate::error::{Error, Result};

fn check_branch_count(n: u32, min: u32) -> Result<()> {
    if !n.is_multiple_of(2) || n < min {
        return Err(Error::InvalidBranchCount(n, min));
    }
    Ok(())
}

/// Boundary divisor with `i` branch points on one side, `N - i` on the other.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DivisorClassZ2 {
    i: u32,
    branch: u32,
}

impl DivisorClassZ2 {
    pub fn new(i: u32, branch: u32) -> Result<Self> {
        check_branch_count(branch, 4)?;
        if i < 2 || i + 2 > branch {
            return Err(Error::InvalidBranchCount(branch, 4));
        }
        Ok(DivisorClassZ2 { i: i.min(branch - i), branch })
    }

    pub fn i(&self) -> u32 {
        self.i
    }

    pub fn branch(&self) -> u32 {
        self.branch
    }
}

/// λ₁ coefficient of `Δ_i` among `N` branch points:
/// `i(N-i) / (8(N-1))` for even `i`, `(i-1)(N-i-1) / (8(N-1))` for odd `i`.
///
/// Defined for all `0 <= i <= N`; it vanishes where the divisor is unstable.
/// Panics if `N < 2`.
pub fn alpha_z2_lambda1(i: u32, branch: u32) -> Rational {
    assert!(branch >= 2, "need at least two branch points");
    let (i, n) = (i as i64, branch as i64);
    if i % 2 == 0 {
        ratio(i * (n - i), 8 * (n - 1))
    } else {
        ratio((i - 1) * (n - i - 1), 8 * (n - 1))
    }
}

pub fn lambda1_expression_z2(branch: u32) -> Result<BTreeMap<DivisorClassZ2, Rational>> {
    check_branch_count(branch, 4)?;
    Ok((2..=branch / 2).map(|i| (DivisorClassZ2 { i, branch }, alpha_z2_lambda1(i, branch))).collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ParityPattern {
    AllEven,
    OddEvenOdd,
    OddOddEven,
    EvenOddOdd,
}

/// Codimension-2 stratum: a chain of three components carrying `i1`, `i2`,
/// `i3` branch points. Stored with `i1 <= i3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Codim2ClassZ2 {
    i1: u32,
    i2: u32,
    i3: u32,
}

impl Codim2ClassZ2 {
    pub fn new(i1: u32, i2: u32, i3: u32) -> Result<Self> {
        if i1 < 2 || i2 < 1 || i3 < 2 || !(i1 + i2 + i3).is_multiple_of(2) {
            return Err(Error::InvalidCodim2Class(i1, i2, i3));
        }
        let (i1, i3) = (i1.min(i3), i1.max(i3));
        Ok(Codim2ClassZ2 { i1, i2, i3 })
    }

    pub fn parts(&self) -> (u32, u32, u32) {
        (self.i1, self.i2, self.i3)
    }

    pub fn branch(&self) -> u32 {
        self.i1 + self.i2 + self.i3
    }

    pub fn parity(&self) -> ParityPattern {
        parity_of(self.i1, self.i2, self.i3)
    }
}

impl fmt::Display for Codim2ClassZ2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Δ_{{{},{},{}}}", self.i1, self.i2, self.i3)
    }
}

fn parity_of(i1: u32, i2: u32, i3: u32) -> ParityPattern {
    match (i1 % 2, i2 % 2, i3 % 2) {
        (0, 0, 0) => ParityPattern::AllEven,
        (1, 0, 1) => ParityPattern::OddEvenOdd,
        (1, 1, 0) => ParityPattern::OddOddEven,
        (0, 1, 1) => ParityPattern::EvenOddOdd,
        _ => unreachable!("odd total rejected at construction"),
    }
}

/// λ₂ coefficient as twice the sum of products of λ₁ coefficients over the
/// two ways the stratum arises from a divisor and a divisor of one side.
pub fn alpha_z2_lambda2_composed(class: &Codim2ClassZ2) -> Rational {
    let (i1, i2, i3) = class.parts();
    composed_oriented(i1, i2, i3)
}

fn composed_oriented(i1: u32, i2: u32, i3: u32) -> Rational {
    let n = i1 + i2 + i3;
    let a = alpha_z2_lambda1;
    let two = from_int(2);
    match parity_of(i1, i2, i3) {
        ParityPattern::AllEven => two * (a(i1, n) * a(i2, i2 + i3) + a(i3, n) * a(i2, i1 + i2)),
        ParityPattern::OddEvenOdd => two * (a(i1, n) * a(i2 + 1, i2 + i3 + 1) + a(i3, n) * a(i2 + 1, i1 + i2 + 1)),
        ParityPattern::OddOddEven => two * (a(i1, n) * a(i2 + 1, i2 + i3 + 1) + a(i3, n) * a(i2, i1 + i2)),
        ParityPattern::EvenOddOdd => composed_oriented(i3, i2, i1),
    }
}

/// Which closed formula to evaluate for all-even classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClosedForm {
    /// numerator factor `2i1i2 + 2i1i3 + 2i2i3 - i1 - 2i2 - i3`
    Printed,
    /// numerator factor `2i1i2 + 2i1i3 + 2i2² + 2i2i3 - i1 - 2i2 - i3`,
    /// the actual expansion of the composed form
    Corrected,
}

/// λ₂ coefficient from the closed rational-function formulas.
pub fn alpha_z2_lambda2_closed(class: &Codim2ClassZ2, form: ClosedForm) -> Rational {
    let (i1, i2, i3) = class.parts();
    closed_oriented(i1 as i64, i2 as i64, i3 as i64, form)
}

fn closed_oriented(i1: i64, i2: i64, i3: i64, form: ClosedForm) -> Rational {
    let n = i1 + i2 + i3;
    match parity_of(i1 as u32, i2 as u32, i3 as u32) {
        ParityPattern::AllEven => {
            let square = match form {
                ClosedForm::Printed => 0,
                ClosedForm::Corrected => 2 * i2 * i2,
            };
            let inner = 2 * i1 * i2 + 2 * i1 * i3 + square + 2 * i2 * i3 - i1 - 2 * i2 - i3;
            ratio(i1 * i2 * i3 * inner, 32 * (n - 1) * (i1 + i2 - 1) * (i2 + i3 - 1))
        }
        ParityPattern::OddEvenOdd => {
            let inner = (i2 + i3 - 1) * (i1 + i2) + (i1 + i2 - 1) * (i2 + i3);
            ratio((i1 - 1) * i2 * (i3 - 1) * inner, 32 * (n - 1) * (i1 + i2) * (i2 + i3))
        }
        ParityPattern::OddOddEven => {
            let num = (i1 - 1) * (i2 + i3 - 1) * (i2 + 1) * i3 * (i1 + i2 - 1)
                + i3 * (i1 + i2) * (i2 - 1) * (i1 - 1) * (i2 + i3);
            ratio(num, 32 * (n - 1) * (i2 + i3) * (i1 + i2 - 1))
        }
        ParityPattern::EvenOddOdd => closed_oriented(i3, i2, i1, form),
    }
}

/// Every codimension-2 class with `N` branch points, in sorted order.
pub fn codim2_classes(branch: u32) -> Result<Vec<Codim2ClassZ2>> {
    check_branch_count(branch, 6)?;
    let mut out = Vec::new();
    for i1 in 2..branch {
        for i3 in i1..branch {
            if i1 + i3 < branch {
                out.push(Codim2ClassZ2 { i1, i2: branch - i1 - i3, i3 });
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Formula used to produce λ₂ coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Lambda2Form {
    Composed,
    Closed(ClosedForm),
}

impl Lambda2Form {
    pub fn evaluate(self, class: &Codim2ClassZ2) -> Rational {
        match self {
            Lambda2Form::Composed => alpha_z2_lambda2_composed(class),
            Lambda2Form::Closed(form) => alpha_z2_lambda2_closed(class, form),
        }
    }
}

/// Overall factor `c` in `λ₂ = c Σ α Δ`. Both 1 and 2 appear for the same
/// coefficients, so expressions carry raw α and leave `c` open.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Normalization {
    Single,
    Double,
}

impl Normalization {
    pub const CANDIDATES: [Normalization; 2] = [Normalization::Single, Normalization::Double];

    pub fn factor(self) -> Rational {
        match self {
            Normalization::Single => from_int(1),
            Normalization::Double => from_int(2),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lambda2Expression {
    pub branch: u32,
    pub form: Lambda2Form,
    pub entries: BTreeMap<Codim2ClassZ2, Rational>,
    pub normalizations: [Normalization; 2],
}

impl Lambda2Expression {
    pub fn coefficient(&self, i1: u32, i2: u32, i3: u32) -> Option<&Rational> {
        self.entries.get(&Codim2ClassZ2::new(i1, i2, i3).ok()?)
    }
}

pub fn lambda2_expression(branch: u32) -> Result<Lambda2Expression> {
    lambda2_expression_with(branch, Lambda2Form::Composed)
}

pub fn lambda2_expression_with(branch: u32, form: Lambda2Form) -> Result<Lambda2Expression> {
    let entries = codim2_classes(branch)?.into_iter().map(|c| (c, form.evaluate(&c))).collect();
    Ok(Lambda2Expression { branch, form, entries, normalizations: Normalization::CANDIDATES })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormMismatch {
    pub class: Codim2ClassZ2,
    pub composed: Rational,
    pub closed: Rational,
}

/// Classes with `6 <= N <= max_branch` where the closed form disagrees with
/// the composed form.
pub fn check_forms(max_branch: u32, form: ClosedForm) -> Vec<FormMismatch> {
    let mut out = Vec::new();
    for branch in (6..=max_branch).step_by(2) {
        for class in codim2_classes(branch).expect("even branch count >= 6") {
            let composed = alpha_z2_lambda2_composed(&class);
            let closed = alpha_z2_lambda2_closed(&class, form);
            if composed != closed {
                out.push(FormMismatch { class, composed, closed });
            }
        }
    }
    out
}
