use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero denominator")]
    ZeroDenominator,

    #[error("invalid totals (n={n}, m={m}): need n - m = 0 mod 3 and n + m >= {min_total}")]
    InvalidTotals { n: u32, m: u32, min_total: u32 },

    #[error("invalid block ({omega}, {omegabar}): a block carries at least one marked point")]
    EmptyBlock { omega: u32, omegabar: u32 },

    #[error("invalid curve class: {0}")]
    InvalidCurve(String),

    #[error("invalid divisor class ({i}, {j}) for totals (n={n}, m={m})")]
    InvalidDivisor { i: u32, j: u32, n: u32, m: u32 },

    #[error("curve totals ({curve_n}, {curve_m}) do not match divisor totals ({divisor_n}, {divisor_m})")]
    MismatchedTotals { curve_n: u32, curve_m: u32, divisor_n: u32, divisor_m: u32 },

    #[error("invalid integral key (n={n}, m={m}): need n - m = 0 mod 3 and n + m >= 3")]
    InvalidKey { n: u32, m: u32 },

    #[error("key (n={n}, m={m}) is a base case and has no recursion terms")]
    BaseCase { n: u32, m: u32 },

    #[error("invalid branch point count {0}: need an even count of at least {1}")]
    InvalidBranchCount(u32, u32),

    #[error("invalid codimension-2 class ({0}, {1}, {2})")]
    InvalidCodim2Class(u32, u32, u32),
}

pub type Result<T> = std::result::Result<T, Error>;
