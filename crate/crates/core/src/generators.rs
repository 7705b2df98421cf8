//! Constructions of the point sets and sequences under study: permuted
//! radical-inverse sequences, upper-triangular digital sequences, digital
//! nets from square matrices, and two-dimensional Hammersley sets.
//!
//! Every generator is a pure indexed function `n -> point`. Points are
//! produced either as truncated digit vectors (`BaseRational`) or as
//! exact real values (`Rat`) including the closed-form geometric tail of
//! expansions that end in all `b-1` digits.

use crate::base::{digit_at, digit_len, BaseRational};
use crate::error::{Error, Result};
use crate::modmat::{is_prime, mat_vec_mod};
use crate::perm::{Perm, PermSeq};
use crate::rat::Rat;
use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

/// Row-finite upper-triangular matrix over `Z_b`, stored sparsely.
///
/// `Strict` kind has a zero diagonal; `Nut` kind has a nonzero diagonal
/// that defaults to 1 for rows without stored entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UpperMatrix {
    base: u32,
    kind: UpperKind,
    rows: BTreeMap<u32, Vec<(u32, u32)>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UpperKind {
    Strict,
    Nut,
}

impl UpperMatrix {
    /// Strict upper-triangular matrix from `(row, col, value)` entries.
    pub fn strict(base: u32, entries: impl IntoIterator<Item = (u32, u32, u32)>) -> Result<Self> {
        let mut rows: BTreeMap<u32, Vec<(u32, u32)>> = BTreeMap::new();
        for (r, k, v) in entries {
            if k <= r {
                return Err(Error::InvalidMatrix(
                    "strict upper entry at or below diagonal",
                ));
            }
            if v >= base {
                return Err(Error::InvalidMatrix("entry out of range for base"));
            }
            if v != 0 {
                rows.entry(r).or_default().push((k, v));
            }
        }
        for cols in rows.values_mut() {
            cols.sort_unstable();
        }
        Ok(UpperMatrix {
            base,
            kind: UpperKind::Strict,
            rows,
        })
    }

    /// All-zero strict upper matrix.
    pub fn zero(base: u32) -> Self {
        UpperMatrix {
            base,
            kind: UpperKind::Strict,
            rows: BTreeMap::new(),
        }
    }

    /// Nonsingular upper-triangular matrix from `(row, col, value)`
    /// entries; unspecified diagonal entries are 1.
    pub fn nut(base: u32, entries: impl IntoIterator<Item = (u32, u32, u32)>) -> Result<Self> {
        let mut rows: BTreeMap<u32, Vec<(u32, u32)>> = BTreeMap::new();
        for (r, k, v) in entries {
            if k < r {
                return Err(Error::InvalidMatrix("upper entry below diagonal"));
            }
            if v >= base {
                return Err(Error::InvalidMatrix("entry out of range for base"));
            }
            if k == r && v == 0 {
                return Err(Error::InvalidMatrix("zero diagonal entry in NUT matrix"));
            }
            rows.entry(r).or_default().push((k, v));
        }
        for cols in rows.values_mut() {
            cols.sort_unstable();
        }
        Ok(UpperMatrix {
            base,
            kind: UpperKind::Nut,
            rows,
        })
    }

    /// NUT identity (empty sparse rows, every diagonal entry 1).
    pub fn identity_nut(base: u32) -> Self {
        UpperMatrix {
            base,
            kind: UpperKind::Nut,
            rows: BTreeMap::new(),
        }
    }

    pub fn base(&self) -> u32 {
        self.base
    }

    pub fn kind(&self) -> UpperKind {
        self.kind
    }

    pub fn is_strict(&self) -> bool {
        self.kind == UpperKind::Strict
    }

    /// Diagonal entry of row r (0 for strict, stored-or-1 for NUT).
    pub fn diag(&self, r: u32) -> u32 {
        match self.kind {
            UpperKind::Strict => 0,
            UpperKind::Nut => self
                .rows
                .get(&r)
                .and_then(|cols| cols.iter().find(|&&(k, _)| k == r))
                .map_or(1, |&(_, v)| v),
        }
    }

    /// Entries strictly above the diagonal in row r, sorted by column.
    pub fn upper_entries(&self, r: u32) -> &[(u32, u32)] {
        let cols = self.rows.get(&r).map_or(&[][..], Vec::as_slice);
        // stored rows are sorted, so the strictly-upper part is a suffix
        let start = cols.iter().position(|&(k, _)| k > r).unwrap_or(cols.len());
        &cols[start..]
    }

    /// Largest row index with stored entries.
    pub fn max_stored_row(&self) -> Option<u32> {
        self.rows.keys().next_back().copied()
    }
}

/// Digit-wise permutation vectors for generalized Hammersley sets.
#[derive(Debug, Clone)]
pub enum SwapPattern<'a> {
    /// First half identity, second half swap (the larger half swapped
    /// when m is odd).
    Halves,
    /// id, tau, id, tau, ...; defined for even m only.
    Alternating,
    /// First half sigma, second half tau . sigma.
    HalvesWith(&'a Perm),
}

/// The permutation vector of length m for the given pattern.
pub fn swap_vector(pattern: SwapPattern<'_>, m: usize, base: u32) -> Result<Vec<Perm>> {
    if m == 0 {
        return Err(Error::InvalidMatrix("permutation vector needs m >= 1"));
    }
    let tau = Perm::swap(base);
    match pattern {
        SwapPattern::Halves => {
            let id = Perm::identity(base);
            let head = m / 2;
            Ok((0..m)
                .map(|i| if i < head { id.clone() } else { tau.clone() })
                .collect())
        }
        SwapPattern::Alternating => {
            if !m.is_multiple_of(2) {
                return Err(Error::InvalidMatrix("alternating pattern needs even m"));
            }
            let id = Perm::identity(base);
            Ok((0..m)
                .map(|i| if i % 2 == 0 { id.clone() } else { tau.clone() })
                .collect())
        }
        SwapPattern::HalvesWith(sigma) => {
            if sigma.base() != base {
                return Err(Error::BaseMismatch);
            }
            let bar = Perm::compose(&tau, sigma)?;
            let head = m / 2;
            Ok((0..m)
                .map(|i| if i < head { sigma.clone() } else { bar.clone() })
                .collect())
        }
    }
}

/// A two-dimensional point set of cardinality `base^m`.
#[derive(Debug, Clone)]
pub struct PointSet2D {
    pub base: u32,
    pub m: u32,
    pub label: String,
    pub points: Vec<(BaseRational, BaseRational)>,
}

impl PointSet2D {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn rat_points(&self) -> Vec<(Rat, Rat)> {
        self.points
            .iter()
            .map(|(x, y)| (x.value(), y.value()))
            .collect()
    }

    pub fn rat_rows(&self) -> Vec<Vec<Rat>> {
        self.points
            .iter()
            .map(|(x, y)| alloc::vec![x.value(), y.value()])
            .collect()
    }
}

/// Generalized two-dimensional Hammersley set: point n is
/// `(sum sigma_r(n_r) b^-(r+1), n / b^m)` for `0 <= n < b^m`.
pub fn hammersley(base: u32, m: u32, sigmas: &[Perm]) -> Result<PointSet2D> {
    if sigmas.len() != m as usize {
        return Err(Error::CardinalityMismatch {
            expected: m as u64,
            got: sigmas.len() as u64,
        });
    }
    if sigmas.iter().any(|s| s.base() != base) {
        return Err(Error::BaseMismatch);
    }
    let n_points = (base as u64).checked_pow(m).ok_or(Error::CapExceeded {
        what: "b^m",
        cap: u64::MAX,
    })?;
    let mut points = Vec::with_capacity(n_points as usize);
    for n in 0..n_points {
        let first: Vec<u32> = (0..m as usize)
            .map(|r| sigmas[r].apply(digit_at(n, base, r)))
            .collect();
        let second: Vec<u32> = (0..m as usize)
            .map(|i| digit_at(n, base, m as usize - 1 - i))
            .collect();
        points.push((
            BaseRational::new(base, first)?,
            BaseRational::new(base, second)?,
        ));
    }
    Ok(PointSet2D {
        base,
        m,
        label: alloc::format!("hammersley b={base} m={m}"),
        points,
    })
}

/// Scaled first coordinates of a generalized Hammersley set.
///
/// Entry n is `x_n * b^m`, a permutation of `0..b^m`; the point set is
/// exactly `{(perm[n]/b^m, n/b^m)}`, the shape the fast star-discrepancy
/// path consumes.
pub fn hammersley_perm(base: u32, m: u32, sigmas: &[Perm]) -> Result<Vec<u64>> {
    if sigmas.len() != m as usize {
        return Err(Error::CardinalityMismatch {
            expected: m as u64,
            got: sigmas.len() as u64,
        });
    }
    let n_points = (base as u64).checked_pow(m).ok_or(Error::CapExceeded {
        what: "b^m",
        cap: u64::MAX,
    })?;
    let mut out = Vec::with_capacity(n_points as usize);
    for n in 0..n_points {
        // Horner over digit positions, most significant output power first
        let mut k = 0u64;
        for j in 0..m as usize {
            k = k * base as u64 + sigmas[j].apply(digit_at(n, base, j)) as u64;
        }
        out.push(k);
    }
    Ok(out)
}

/// Generating matrices of a digital net over a prime base.
#[derive(Debug, Clone)]
pub struct DigitalMatrices {
    base: u32,
    m: usize,
    mats: Vec<Vec<Vec<u32>>>,
}

impl DigitalMatrices {
    pub fn new(base: u32, mats: Vec<Vec<Vec<u32>>>) -> Result<Self> {
        if !is_prime(base) {
            return Err(Error::NonPrimeBase(base));
        }
        let m = mats
            .first()
            .map(Vec::len)
            .ok_or(Error::InvalidMatrix("need at least one matrix"))?;
        for mat in &mats {
            if mat.len() != m || mat.iter().any(|row| row.len() != m) {
                return Err(Error::InvalidMatrix(
                    "matrices must be square of equal size",
                ));
            }
            if mat.iter().flatten().any(|&v| v >= base) {
                return Err(Error::InvalidMatrix("entry out of range for base"));
            }
        }
        Ok(DigitalMatrices { base, m, mats })
    }

    pub fn base(&self) -> u32 {
        self.base
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn dim(&self) -> usize {
        self.mats.len()
    }

    pub fn matrices(&self) -> &[Vec<Vec<u32>>] {
        &self.mats
    }

    /// Point n of the digital net: coordinate j is `sum_k y_k p^-k` with
    /// `y = C_j . (n_0, ..., n_{m-1})`.
    pub fn point(&self, n: u64) -> Result<Vec<BaseRational>> {
        let digits = crate::base::digits(n, self.base, self.m)?;
        self.mats
            .iter()
            .map(|mat| BaseRational::new(self.base, mat_vec_mod(mat, &digits, self.base)))
            .collect()
    }

    /// All `p^m` points of the net.
    pub fn net(&self) -> Result<Vec<Vec<BaseRational>>> {
        let count = (self.base as u64)
            .checked_pow(self.m as u32)
            .ok_or(Error::CapExceeded {
                what: "p^m",
                cap: u64::MAX,
            })?;
        (0..count).map(|n| self.point(n)).collect()
    }
}

/// Column-reversal matrix (anti-diagonal identity).
pub fn reversal_matrix(m: usize) -> Vec<Vec<u32>> {
    (0..m)
        .map(|r| (0..m).map(|c| u32::from(c == m - 1 - r)).collect())
        .collect()
}

pub fn identity_matrix(m: usize) -> Vec<Vec<u32>> {
    (0..m)
        .map(|r| (0..m).map(|c| u32::from(c == r)).collect())
        .collect()
}

/// Upper-triangular binomial matrix mod p: entry (r, k) is
/// `binom(k, r) mod p`.
pub fn pascal_matrix(p: u32, m: usize) -> Vec<Vec<u32>> {
    (0..m)
        .map(|r| (0..m).map(|k| binom_mod(k as u64, r as u64, p)).collect())
        .collect()
}

/// `binom(n, k) mod p` by Lucas' theorem (p prime).
pub fn binom_mod(n: u64, k: u64, p: u32) -> u32 {
    if k > n {
        return 0;
    }
    let mut small = alloc::vec![alloc::vec![0u32; p as usize]; p as usize];
    for i in 0..p as usize {
        small[i][0] = 1;
        for j in 1..=i {
            small[i][j] = (small[i - 1][j - 1] + small[i - 1].get(j).copied().unwrap_or(0)) % p;
        }
    }
    let (mut n, mut k) = (n, k);
    let mut acc = 1u64;
    while n > 0 || k > 0 {
        let (nd, kd) = ((n % p as u64) as usize, (k % p as u64) as usize);
        if kd > nd {
            return 0;
        }
        acc = acc * small[nd][kd] as u64 % p as u64;
        n /= p as u64;
        k /= p as u64;
    }
    acc as u32
}

/// The digital (0,2)-sequence over `Z_p` generated by the identity matrix
/// and the binomial matrix; p = 2 gives the classical base-2 construction.
#[derive(Debug, Clone)]
pub struct PascalSeq2 {
    base: u32,
}

impl PascalSeq2 {
    pub fn new(base: u32) -> Result<Self> {
        if !is_prime(base) {
            return Err(Error::NonPrimeBase(base));
        }
        Ok(PascalSeq2 { base })
    }

    pub fn base(&self) -> u32 {
        self.base
    }

    /// Exact point n; the digit expansions are finite in both coordinates.
    pub fn point(&self, n: u64) -> (BaseRational, BaseRational) {
        let b = self.base;
        let len = digit_len(n, b);
        let first: Vec<u32> = (0..len).map(|r| digit_at(n, b, r)).collect();
        let second: Vec<u32> = (0..len)
            .map(|r| {
                let mut acc = 0u64;
                for k in r..len {
                    acc = (acc
                        + binom_mod(k as u64, r as u64, b) as u64 * digit_at(n, b, k) as u64)
                        % b as u64;
                }
                acc as u32
            })
            .collect();
        (
            BaseRational::new(b, first).expect("digits in range"),
            BaseRational::new(b, second).expect("digits in range"),
        )
    }

    /// Point n truncated to m digits per coordinate.
    pub fn truncated(&self, n: u64, m: usize) -> (BaseRational, BaseRational) {
        let (x, y) = self.point(n);
        let cut = |v: &BaseRational| {
            BaseRational::new(self.base, (0..m).map(|i| v.digit(i)).collect())
                .expect("digits in range")
        };
        (cut(&x), cut(&y))
    }
}

/// A one-dimensional indexed sequence generator.
///
/// Each variant yields, for every index n, a prescribed b-adic digit
/// stream. `truncated` keeps the first m digits of that stream;
/// `value` returns the exact real value of the full stream, which exists
/// in closed form whenever the digit stream is eventually constant.
#[derive(Debug, Clone)]
pub enum Seq1D {
    /// Generalized radical-inverse sequence: digit r of point n is
    /// `sigma_r(n_r)`.
    Gvdc { seq: PermSeq },
    /// Permuted-diagonal upper-triangular digital sequence: digit r is
    /// `sigma_r(n_r) + sum_{k>r} c_r^k n_k (mod b)`.
    Nut { seq: PermSeq, matrix: UpperMatrix },
    /// Base-2 digital sequence whose matrix is zero except for ones on
    /// the diagonal and in the first column.
    FirstColumnBase2,
    /// Base b >= 3 interleaving: within each block of b consecutive
    /// indices, slot 1 replays the block head through the swap
    /// permutation and the remaining slots shift the plain sequence.
    IdTauInterleave { base: u32 },
    /// Base-2 digital sequence whose matrix has every upper entry 1.
    AllOnesBase2,
    /// Every point of the inner sequence repeated `b^t` times
    /// consecutively; turns a (0,1)-sequence into a (t,1)-sequence.
    Repeat { inner: Box<Seq1D>, t: u32 },
    /// Linearly digit scrambled NUT digital sequence: digit r is
    /// `pi_r(sum_{k>=r} c_r^k n_k mod b)`.
    ScrambledNut {
        scramblings: PermSeq,
        matrix: UpperMatrix,
    },
}

impl Seq1D {
    pub fn gvdc(seq: PermSeq) -> Self {
        Seq1D::Gvdc { seq }
    }

    /// The plain radical-inverse sequence in base b.
    pub fn van_der_corput(base: u32) -> Self {
        Seq1D::Gvdc {
            seq: PermSeq::identity(base),
        }
    }

    pub fn nut(seq: PermSeq, matrix: UpperMatrix) -> Result<Self> {
        if matrix.base() != seq.base() {
            return Err(Error::BaseMismatch);
        }
        if !matrix.is_strict() {
            return Err(Error::InvalidMatrix(
                "permuted-diagonal form needs a strict upper matrix",
            ));
        }
        Ok(Seq1D::Nut { seq, matrix })
    }

    pub fn id_tau_interleave(base: u32) -> Result<Self> {
        if base < 3 {
            return Err(Error::InvalidMatrix(
                "interleaved construction needs base >= 3",
            ));
        }
        Ok(Seq1D::IdTauInterleave { base })
    }

    pub fn repeat(inner: Seq1D, t: u32) -> Self {
        Seq1D::Repeat {
            inner: Box::new(inner),
            t,
        }
    }

    /// `strict` demands every scrambling be linear.
    pub fn scrambled_nut(scramblings: PermSeq, matrix: UpperMatrix, strict: bool) -> Result<Self> {
        if matrix.base() != scramblings.base() {
            return Err(Error::BaseMismatch);
        }
        if matrix.kind() != UpperKind::Nut {
            return Err(Error::InvalidMatrix(
                "scrambled construction needs a NUT matrix",
            ));
        }
        if strict && !perm_seq_all_linear(&scramblings) {
            return Err(Error::InvalidMatrix("non-linear scrambling in strict mode"));
        }
        Ok(Seq1D::ScrambledNut {
            scramblings,
            matrix,
        })
    }

    pub fn base(&self) -> u32 {
        match self {
            Seq1D::Gvdc { seq } => seq.base(),
            Seq1D::Nut { seq, .. } => seq.base(),
            Seq1D::FirstColumnBase2 | Seq1D::AllOnesBase2 => 2,
            Seq1D::IdTauInterleave { base } => *base,
            Seq1D::Repeat { inner, .. } => inner.base(),
            Seq1D::ScrambledNut { scramblings, .. } => scramblings.base(),
        }
    }

    /// Digit r of the prescribed expansion of point n.
    pub fn digit(&self, n: u64, r: usize) -> u32 {
        let b = self.base();
        match self {
            Seq1D::Gvdc { seq } => seq.sigma_at(r as u64).apply(digit_at(n, b, r)),
            Seq1D::Nut { seq, matrix } => {
                let mut acc = seq.sigma_at(r as u64).apply(digit_at(n, b, r)) as u64;
                for &(k, c) in matrix.upper_entries(r as u32) {
                    acc += c as u64 * digit_at(n, b, k as usize) as u64;
                }
                (acc % b as u64) as u32
            }
            Seq1D::FirstColumnBase2 => {
                let first = (n & 1) as u32;
                if r == 0 {
                    first
                } else {
                    ((n >> r) as u32 & 1) ^ first
                }
            }
            Seq1D::IdTauInterleave { base } => {
                let b64 = *base as u64;
                let (block, slot) = (n / b64, n % b64);
                match slot {
                    0 => digit_at(block * b64, *base, r),
                    1 => base - 1 - digit_at(block * b64, *base, r),
                    l => digit_at(block * b64 + l - 1, *base, r),
                }
            }
            Seq1D::AllOnesBase2 => ((n >> r).count_ones()) & 1,
            Seq1D::Repeat { inner, t } => {
                let factor = (inner.base() as u64).pow(*t);
                inner.digit(n / factor, r)
            }
            Seq1D::ScrambledNut {
                scramblings,
                matrix,
            } => {
                let mut acc = matrix.diag(r as u32) as u64 * digit_at(n, b, r) as u64;
                for &(k, c) in matrix.upper_entries(r as u32) {
                    acc += c as u64 * digit_at(n, b, k as usize) as u64;
                }
                scramblings
                    .sigma_at(r as u64)
                    .apply((acc % b as u64) as u32)
            }
        }
    }

    /// `Some((start, d))` with digit r equal to d for all `r >= start`;
    /// `None` when the expansion has no eventually constant tail in
    /// closed form (block-swap permutation rules).
    pub fn eventual_digit(&self, n: u64) -> Option<(usize, u32)> {
        let b = self.base();
        let k = digit_len(n, b);
        match self {
            Seq1D::Gvdc { seq } | Seq1D::Nut { seq, .. } => {
                let (r0, sigma) = seq.eventual()?;
                Some((k.max(r0), sigma.apply(0)))
            }
            Seq1D::FirstColumnBase2 => Some((k.max(1), (n & 1) as u32)),
            Seq1D::IdTauInterleave { base } => {
                let b64 = *base as u64;
                let (block, slot) = (n / b64, n % b64);
                let head = digit_len(block * b64, *base);
                match slot {
                    1 => Some((head, base - 1)),
                    0 => Some((head, 0)),
                    l => Some((digit_len(block * b64 + l - 1, *base), 0)),
                }
            }
            Seq1D::AllOnesBase2 => Some((k, 0)),
            Seq1D::Repeat { inner, t } => {
                let factor = (inner.base() as u64).pow(*t);
                inner.eventual_digit(n / factor)
            }
            Seq1D::ScrambledNut { scramblings, .. } => {
                let (r0, pi) = scramblings.eventual()?;
                Some((k.max(r0), pi.apply(0)))
            }
        }
    }

    /// Exact real value of point n (head digits plus the closed-form
    /// geometric tail). Errors for expansions without an eventually
    /// constant tail.
    pub fn value(&self, n: u64) -> Result<Rat> {
        let b = self.base();
        let (start, tail) = self
            .eventual_digit(n)
            .ok_or(Error::TailNotEventuallyConstant)?;
        let mut head: Vec<u32> = (0..start).map(|r| self.digit(n, r)).collect();
        // drop head digits already equal to the tail constant
        let mut start = start;
        while start > 0 && head[start - 1] == tail {
            head.pop();
            start -= 1;
        }
        let mut num: i128 = 0;
        let mut den: i128 = 1;
        for &d in &head {
            num = num
                .checked_mul(b as i128)
                .and_then(|v| v.checked_add(d as i128))
                .expect("expansion head too long for exact value");
            den = den
                .checked_mul(b as i128)
                .expect("expansion head too long for exact value");
        }
        // sum_{r >= start} tail * b^-(r+1) = tail * b^-start / (b-1)
        let head_val = Rat::new(num, den);
        let tail_val = Rat::new(tail as i128, den * (b as i128 - 1));
        Ok(head_val + tail_val)
    }

    /// The m-truncation of point n's prescribed expansion.
    pub fn truncated(&self, n: u64, m: usize) -> BaseRational {
        BaseRational::new(self.base(), (0..m).map(|r| self.digit(n, r)).collect())
            .expect("digits in range")
    }

    /// Exact values of the first `count` points.
    pub fn values(&self, count: u64) -> Result<Vec<Rat>> {
        (0..count).map(|n| self.value(n)).collect()
    }
}

fn perm_seq_all_linear(seq: &PermSeq) -> bool {
    use crate::perm::PermSeqRule;
    match seq.rule() {
        PermSeqRule::Constant(s) => s.as_linear().is_some(),
        PermSeqRule::ExplicitThenTail { prefix, tail } => {
            prefix.iter().all(|p| p.as_linear().is_some()) && tail.as_linear().is_some()
        }
        // tau is linear and linearity is closed under composition, so
        // checking sigma covers both branch permutations
        PermSeqRule::SwapSet { sigma, .. } | PermSeqRule::BlockSwap(sigma) => {
            sigma.as_linear().is_some()
        }
    }
}

/// Default truncation precision: enough digits for the largest index
/// plus guard digits, but at least the requested resolution.
pub fn default_precision(base: u32, n_max: u64, m_request: usize) -> usize {
    digit_len(n_max, base).max(m_request) + 8
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::Rat;
    use alloc::vec;

    #[test]
    fn gvdc_matches_radical_inverse() {
        let s = Seq1D::van_der_corput(2);
        assert_eq!(s.value(1).unwrap(), Rat::new(1, 2));
        let s3 = Seq1D::van_der_corput(3);
        assert_eq!(s3.value(4).unwrap(), Rat::new(4, 9));
        for n in 0..200 {
            assert_eq!(
                s3.value(n).unwrap(),
                crate::base::radical_inverse(n, 3).value()
            );
        }
    }

    #[test]
    fn gvdc_swap_truncation() {
        let s = Seq1D::gvdc(PermSeq::constant(Perm::swap(2)));
        assert_eq!(s.truncated(0, 3).value(), Rat::new(7, 8));
        // untruncated exact value of point 0 is 1
        assert_eq!(s.value(0).unwrap(), Rat::ONE);
    }

    #[test]
    fn nut_matches_hand_evaluation() {
        // single entry c_0^1 = 1 in base 2, n = 2 with digits (0, 1)
        let c = UpperMatrix::strict(2, [(0, 1, 1)]).unwrap();
        let s = Seq1D::nut(PermSeq::identity(2), c).unwrap();
        assert_eq!(s.value(2).unwrap(), Rat::new(3, 4));
        assert_eq!(s.value(0).unwrap(), Rat::ZERO);
    }

    #[test]
    fn nut_with_zero_matrix_is_gvdc() {
        let mut rng = crate::rng::Rng::new(7);
        for &b in &[2u32, 3, 5, 10] {
            let zero = UpperMatrix::zero(b);
            for _ in 0..250 {
                let sigma = rng.perm(b);
                let seq = PermSeq::constant(sigma);
                let nut = Seq1D::nut(seq.clone(), zero.clone()).unwrap();
                let gvdc = Seq1D::gvdc(seq);
                let n = rng.below(1 << 14);
                assert_eq!(nut.value(n).unwrap(), gvdc.value(n).unwrap());
            }
        }
    }

    #[test]
    fn first_column_base2_digits() {
        let s = Seq1D::FirstColumnBase2;
        // n = 1: digit 0 is 1 and every further digit is 1
        assert_eq!(s.digit(1, 0), 1);
        assert_eq!(s.digit(1, 5), 1);
        assert_eq!(s.eventual_digit(1), Some((1, 1)));
        assert_eq!(s.value(1).unwrap(), Rat::ONE);
        // n = 2: digits (0, 1) -> output digits 0, 1, then constant 0
        assert_eq!(s.value(2).unwrap(), Rat::new(1, 4));
    }

    #[test]
    fn id_tau_interleave_values() {
        let s = Seq1D::id_tau_interleave(3).unwrap();
        // slot 1 of block 0 replays index 0 through the swap
        assert_eq!(s.truncated(1, 2).value(), Rat::new(8, 9));
        assert_eq!(s.value(1).unwrap(), Rat::ONE);
        // slot 0 is the plain sequence at the block head
        assert_eq!(s.value(0).unwrap(), Rat::ZERO);
        assert_eq!(
            s.value(3).unwrap(),
            Seq1D::van_der_corput(3).value(3).unwrap()
        );
        // slots l >= 2 shift by one
        assert_eq!(
            s.value(2).unwrap(),
            Seq1D::van_der_corput(3).value(1).unwrap()
        );
    }

    #[test]
    fn repeat_duplicates() {
        let s = Seq1D::repeat(Seq1D::van_der_corput(2), 1);
        assert_eq!(s.value(0).unwrap(), s.value(1).unwrap());
        assert_eq!(s.value(0).unwrap(), Rat::ZERO);
        assert_eq!(s.value(2).unwrap(), Rat::new(1, 2));
        assert_eq!(s.value(3).unwrap(), Rat::new(1, 2));
    }

    #[test]
    fn scrambled_nut_reductions() {
        let id = UpperMatrix::identity_nut(2);
        let s = Seq1D::scrambled_nut(PermSeq::identity(2), id.clone(), true).unwrap();
        let vdc = Seq1D::van_der_corput(2);
        for n in 0..64 {
            assert_eq!(s.value(n).unwrap(), vdc.value(n).unwrap());
        }
        let tau = Seq1D::scrambled_nut(PermSeq::constant(Perm::swap(2)), id, true).unwrap();
        assert_eq!(tau.truncated(0, 3).value(), Rat::new(7, 8));
        // non-linear scrambling rejected in strict mode
        let nonlin = PermSeq::constant(Perm::new(4, vec![0, 2, 1, 3]).unwrap());
        let m4 = UpperMatrix::identity_nut(4);
        assert!(Seq1D::scrambled_nut(nonlin, m4, true).is_err());
    }

    #[test]
    fn hammersley_sets() {
        let id = vec![Perm::identity(2)];
        let h = hammersley(2, 1, &id).unwrap();
        let pts = h.rat_points();
        assert_eq!(
            pts,
            vec![(Rat::ZERO, Rat::ZERO), (Rat::new(1, 2), Rat::new(1, 2))]
        );

        let taus = vec![Perm::swap(3), Perm::swap(3)];
        let h = hammersley(3, 2, &taus).unwrap();
        assert_eq!(h.len(), 9);
        assert_eq!(h.points[0].0.value(), Rat::new(8, 9));

        // first coordinate of the plain set is the radical inverse
        let ids = vec![Perm::identity(2); 3];
        let h = hammersley(2, 3, &ids).unwrap();
        for (n, (x, _)) in h.points.iter().enumerate() {
            assert_eq!(x.value(), crate::base::radical_inverse(n as u64, 2).value());
        }

        // scaled-permutation view agrees with the point set
        let perm = hammersley_perm(2, 3, &ids).unwrap();
        for (n, (x, y)) in h.points.iter().enumerate() {
            assert_eq!(Rat::new(perm[n] as i128, 8), x.value());
            assert_eq!(Rat::new(n as i128, 8), y.value());
        }
    }

    #[test]
    fn digital_point_examples() {
        let mats = DigitalMatrices::new(2, vec![identity_matrix(2), reversal_matrix(2)]).unwrap();
        let p = mats.point(2).unwrap();
        assert_eq!(p[0].value(), Rat::new(1, 4));
        assert_eq!(p[1].value(), Rat::new(1, 2));
        let origin = mats.point(0).unwrap();
        assert!(origin.iter().all(|c| c.value() == Rat::ZERO));

        let same = DigitalMatrices::new(3, vec![identity_matrix(2), identity_matrix(2)]).unwrap();
        for n in 0..9 {
            let p = same.point(n).unwrap();
            assert_eq!(p[0], p[1]);
        }

        assert!(DigitalMatrices::new(4, vec![identity_matrix(2)]).is_err());
    }

    #[test]
    fn digital_reversal_is_hammersley() {
        for &(b, m) in &[(2u32, 4u32), (3, 3), (5, 2)] {
            let mats = DigitalMatrices::new(
                b,
                vec![identity_matrix(m as usize), reversal_matrix(m as usize)],
            )
            .unwrap();
            let mut net: Vec<(Rat, Rat)> = mats
                .net()
                .unwrap()
                .into_iter()
                .map(|p| (p[0].value(), p[1].value()))
                .collect();
            let mut ham = hammersley(b, m, &vec![Perm::identity(b); m as usize])
                .unwrap()
                .rat_points();
            net.sort();
            ham.sort();
            assert_eq!(net, ham);
        }
    }

    #[test]
    fn swap_vectors() {
        let v = swap_vector(SwapPattern::Halves, 4, 2).unwrap();
        assert_eq!(
            v,
            vec![
                Perm::identity(2),
                Perm::identity(2),
                Perm::swap(2),
                Perm::swap(2)
            ]
        );
        let v = swap_vector(SwapPattern::Halves, 5, 2).unwrap();
        assert_eq!(v.iter().filter(|p| p.is_identity()).count(), 2);
        let v = swap_vector(SwapPattern::Alternating, 4, 3).unwrap();
        assert_eq!(v[1], Perm::swap(3));
        assert_eq!(v[2], Perm::identity(3));
        assert!(swap_vector(SwapPattern::Alternating, 5, 3).is_err());
        let sigma = Perm::new(3, vec![1, 0, 2]).unwrap();
        let v = swap_vector(SwapPattern::HalvesWith(&sigma), 2, 3).unwrap();
        assert_eq!(v[0], sigma);
        assert_eq!(v[1], Perm::compose(&Perm::swap(3), &sigma).unwrap());
    }

    #[test]
    fn pascal_matrix_structure() {
        let m = pascal_matrix(2, 3);
        assert_eq!(m, vec![vec![1, 1, 1], vec![0, 1, 0], vec![0, 0, 1]]);
        // upper triangular in any prime base
        let m5 = pascal_matrix(5, 6);
        for r in 0..6 {
            for k in 0..r {
                assert_eq!(m5[r][k], 0);
            }
            assert_eq!(m5[r][r], 1);
        }
    }

    #[test]
    fn pascal_seq_matches_matrix_net() {
        let seq = PascalSeq2::new(2).unwrap();
        let m = 4usize;
        let mats = DigitalMatrices::new(2, vec![identity_matrix(m), pascal_matrix(2, m)]).unwrap();
        for n in 0..16u64 {
            let p = mats.point(n).unwrap();
            let (x, y) = seq.truncated(n, m);
            assert_eq!(x.value(), p[0].value());
            assert_eq!(y.value(), p[1].value());
        }
    }

    #[test]
    fn upper_matrix_validation() {
        assert!(UpperMatrix::strict(2, [(1, 1, 1)]).is_err());
        assert!(UpperMatrix::strict(2, [(0, 1, 2)]).is_err());
        assert!(UpperMatrix::nut(3, [(0, 0, 0)]).is_err());
        let nut = UpperMatrix::nut(3, [(0, 0, 2), (0, 2, 1)]).unwrap();
        assert_eq!(nut.diag(0), 2);
        assert_eq!(nut.diag(5), 1);
        assert_eq!(nut.upper_entries(0), &[(2, 1)]);
        assert_eq!(nut.max_stored_row(), Some(0));
    }
}
