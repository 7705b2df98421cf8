//! Base-b digit arithmetic: digit expansions, radical inverses, and the
//! truncation operator.

use crate::error::{Error, Result};
use crate::rat::Rat;
use alloc::string::String;
use alloc::vec::Vec;

/// Little-endian base-b digits of `n`, padded to `len` digits.
///
/// `digits(6, 2, 4)` is `[0, 1, 1, 0]`; reconstructing `sum n_k b^k`
/// recovers `n`. Errors when `n >= b^len`.
pub fn digits(n: u64, base: u32, len: usize) -> Result<Vec<u32>> {
    debug_assert!(base >= 2);
    let mut out = Vec::with_capacity(len);
    let mut rest = n;
    for _ in 0..len {
        out.push((rest % base as u64) as u32);
        rest /= base as u64;
    }
    if rest != 0 {
        return Err(Error::DigitOverflow { n, base, len });
    }
    Ok(out)
}

/// Number of base-b digits of `n` (0 needs zero digits).
pub fn digit_len(n: u64, base: u32) -> usize {
    let mut len = 0;
    let mut rest = n;
    while rest != 0 {
        rest /= base as u64;
        len += 1;
    }
    len
}

/// The k-th base-b digit of `n` (0 beyond the expansion).
pub fn digit_at(n: u64, base: u32, k: usize) -> u32 {
    let mut rest = n;
    for _ in 0..k {
        rest /= base as u64;
        if rest == 0 {
            return 0;
        }
    }
    (rest % base as u64) as u32
}

/// A finite base-b fraction `sum digits[i] * b^-(i+1)` in `[0, 1)`.
///
/// Digit index i holds the coefficient of `b^-(i+1)`. Trailing zero
/// digits are stripped on construction, so equality is value equality
/// for fractions of the same base.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BaseRational {
    base: u32,
    digits: Vec<u32>,
}

impl BaseRational {
    pub fn new(base: u32, mut digits: Vec<u32>) -> Result<Self> {
        if base < 2 {
            return Err(Error::InvalidMatrix("base must be >= 2"));
        }
        if digits.iter().any(|&d| d >= base) {
            return Err(Error::Parse(alloc::format!(
                "digit out of range for base {base}"
            )));
        }
        while digits.last() == Some(&0) {
            digits.pop();
        }
        Ok(BaseRational { base, digits })
    }

    pub fn zero(base: u32) -> Self {
        BaseRational {
            base,
            digits: Vec::new(),
        }
    }

    pub fn base(&self) -> u32 {
        self.base
    }

    /// Digit at position i (coefficient of `b^-(i+1)`), 0 beyond the end.
    pub fn digit(&self, i: usize) -> u32 {
        self.digits.get(i).copied().unwrap_or(0)
    }

    pub fn digit_count(&self) -> usize {
        self.digits.len()
    }

    /// Exact rational value.
    pub fn value(&self) -> Rat {
        let mut num: i128 = 0;
        for &d in &self.digits {
            num = num * self.base as i128 + d as i128;
        }
        let mut den: i128 = 1;
        for _ in 0..self.digits.len() {
            den = den
                .checked_mul(self.base as i128)
                .expect("digit expansion too long for exact value");
        }
        Rat::new(num, den)
    }

    /// Serialize as `num/b^len` with trailing zeros stripped ("0" for zero).
    ///
    /// The denominator is kept as an explicit power of the base so that
    /// composite-base coordinates stay recognizably b-adic.
    pub fn render(&self) -> String {
        if self.digits.is_empty() {
            return String::from("0");
        }
        let mut num: i128 = 0;
        let mut den: i128 = 1;
        for &d in &self.digits {
            num = num * self.base as i128 + d as i128;
            den *= self.base as i128;
        }
        alloc::format!("{num}/{den}")
    }
}

/// The m-truncation of a prescribed digit expansion: keep the first `m`
/// digits of the stream. Depends on the expansion, not the real value.
pub fn truncate(base: u32, stream: impl Iterator<Item = u32>, m: usize) -> Result<BaseRational> {
    BaseRational::new(base, stream.take(m).collect())
}

/// Radical inverse: mirror the base-b digits of `n` around the radix
/// point, giving `sum n_k b^-(k+1)` in `[0, 1)`.
pub fn radical_inverse(n: u64, base: u32) -> BaseRational {
    let len = digit_len(n, base);
    let ds = digits(n, base, len).expect("digit_len is exact");
    BaseRational::new(base, ds).expect("digits are in range")
}
