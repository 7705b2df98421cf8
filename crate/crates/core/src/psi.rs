//! Piecewise-linear digit-level discrepancy functions, the exact series
//! formulas for one-sided and two-sided discrepancies of permuted
//! upper-triangular digital sequences, and estimation of the leading
//! asymptotic constants.

use crate::discrepancy::{DiscMethod, DiscReport};
use crate::error::{Error, Result};
use crate::generators::UpperMatrix;
use crate::perm::{Perm, PermSeq};
use crate::rat::Rat;
use alloc::collections::BTreeMap;
use alloc::rc::Rc;
use alloc::vec::Vec;

/// Breakpoint budget for the leading-constant sweeps.
pub const DEFAULT_BREAKPOINT_BUDGET: u64 = 50_000_000;

/// A continuous piecewise-linear function on `[0, 1)`, extended to all
/// reals by periodicity. Segment i is the line `slope*x + intercept` on
/// `[breaks[i], breaks[i+1])`; evaluation at rationals is exact.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PiecewiseLinear {
    breaks: Vec<Rat>,      // 0 = breaks[0] < ... < breaks[len] = 1
    segs: Vec<(Rat, Rat)>, // (slope, intercept), one per gap
}

impl PiecewiseLinear {
    pub fn new(breaks: Vec<Rat>, segs: Vec<(Rat, Rat)>) -> Result<Self> {
        if breaks.len() != segs.len() + 1
            || breaks.first() != Some(&Rat::ZERO)
            || breaks.last() != Some(&Rat::ONE)
            || breaks.windows(2).any(|w| w[0] >= w[1])
        {
            return Err(Error::Parse(alloc::string::String::from(
                "breakpoints must increase from 0 to 1 with one segment per gap",
            )));
        }
        let mut f = PiecewiseLinear { breaks, segs };
        f.normalize();
        Ok(f)
    }

    pub fn zero() -> Self {
        PiecewiseLinear {
            breaks: alloc::vec![Rat::ZERO, Rat::ONE],
            segs: alloc::vec![(Rat::ZERO, Rat::ZERO)],
        }
    }

    fn normalize(&mut self) {
        let mut breaks = Vec::with_capacity(self.breaks.len());
        let mut segs: Vec<(Rat, Rat)> = Vec::with_capacity(self.segs.len());
        breaks.push(Rat::ZERO);
        for (i, seg) in self.segs.iter().enumerate() {
            if segs.last() == Some(seg) {
                continue;
            }
            if !segs.is_empty() {
                breaks.push(self.breaks[i]);
            }
            segs.push(*seg);
        }
        breaks.push(Rat::ONE);
        self.breaks = breaks;
        self.segs = segs;
    }

    pub fn breakpoints(&self) -> &[Rat] {
        &self.breaks
    }

    pub fn segments(&self) -> &[(Rat, Rat)] {
        &self.segs
    }

    /// Slope of the segment containing 0.
    pub fn first_slope(&self) -> Rat {
        self.segs[0].0
    }

    /// Right endpoint of the segment containing 0.
    pub fn first_break_end(&self) -> Rat {
        self.breaks[1]
    }

    fn segment_index(&self, x: &Rat) -> usize {
        // last i with breaks[i] <= x, clamped to a segment
        match self.breaks.binary_search(x) {
            Ok(i) => i.min(self.segs.len() - 1),
            Err(i) => i - 1,
        }
    }

    /// Exact evaluation, periodic in x with period 1.
    pub fn eval(&self, x: &Rat) -> Rat {
        let f = x.fract();
        let (slope, intercept) = self.segs[self.segment_index(&f)];
        slope * f + intercept
    }

    pub fn neg(&self) -> PiecewiseLinear {
        PiecewiseLinear {
            breaks: self.breaks.clone(),
            segs: self.segs.iter().map(|&(s, i)| (-s, -i)).collect(),
        }
    }

    fn merged_breaks(&self, other: &PiecewiseLinear) -> Vec<Rat> {
        let mut all: Vec<Rat> = self
            .breaks
            .iter()
            .chain(other.breaks.iter())
            .copied()
            .collect();
        all.sort();
        all.dedup();
        all
    }

    pub fn add(&self, other: &PiecewiseLinear) -> PiecewiseLinear {
        let breaks = self.merged_breaks(other);
        let segs = breaks
            .windows(2)
            .map(|w| {
                let (s1, i1) = self.segs[self.segment_index(&w[0])];
                let (s2, i2) = other.segs[other.segment_index(&w[0])];
                (s1 + s2, i1 + i2)
            })
            .collect();
        let mut f = PiecewiseLinear { breaks, segs };
        f.normalize();
        f
    }

    /// Pointwise maximum, inserting crossing points as exact breakpoints.
    pub fn max(&self, other: &PiecewiseLinear) -> PiecewiseLinear {
        let grid = self.merged_breaks(other);
        let mut breaks = alloc::vec![Rat::ZERO];
        let mut segs: Vec<(Rat, Rat)> = Vec::new();
        for w in grid.windows(2) {
            let (u, v) = (w[0], w[1]);
            let a = self.segs[self.segment_index(&u)];
            let b = other.segs[other.segment_index(&u)];
            let au = a.0 * u + a.1;
            let bu = b.0 * u + b.1;
            let av = a.0 * v + a.1;
            let bv = b.0 * v + b.1;
            if au >= bu && av >= bv {
                segs.push(a);
                breaks.push(v);
            } else if bu >= au && bv >= av {
                segs.push(b);
                breaks.push(v);
            } else {
                // one strict crossing inside the cell
                let x = (b.1 - a.1) / (a.0 - b.0);
                let (first, second) = if au > bu { (a, b) } else { (b, a) };
                segs.push(first);
                breaks.push(x);
                segs.push(second);
                breaks.push(v);
            }
        }
        let mut f = PiecewiseLinear { breaks, segs };
        f.normalize();
        f
    }

    /// True when adjacent segments agree at interior breakpoints and the
    /// periodic closure matches the value at 0.
    pub fn is_continuous(&self) -> bool {
        for i in 1..self.segs.len() {
            let x = self.breaks[i];
            let left = self.segs[i - 1].0 * x + self.segs[i - 1].1;
            let right = self.segs[i].0 * x + self.segs[i].1;
            if left != right {
                return false;
            }
        }
        let last = self.segs[self.segs.len() - 1];
        let wrap = last.0 * Rat::ONE + last.1;
        let zero = self.segs[0].1;
        wrap == zero
    }
}

/// One digit level's contribution functions for permutation `sigma`:
/// counting deviation of the first k elements of the permuted grid
/// `(sigma(0)/b, ..., sigma(b-1)/b)` inside `[0, h/b)`.
pub fn phi(base: u32, sigma: &Perm, h: u32) -> Result<PiecewiseLinear> {
    if sigma.base() != base {
        return Err(Error::BaseMismatch);
    }
    if h >= base {
        return Err(Error::CapExceeded {
            what: "digit h",
            cap: base as u64 - 1,
        });
    }
    let mut breaks = Vec::with_capacity(base as usize + 1);
    let mut segs = Vec::with_capacity(base as usize);
    for k in 1..=base {
        breaks.push(Rat::new(k as i128 - 1, base as i128));
        let within = (0..k).filter(|&j| sigma.apply(j) < h).count() as i128;
        if h <= sigma.apply(k - 1) {
            segs.push((Rat::int(-(h as i128)), Rat::int(within)));
        } else {
            let outside = k as i128 - within;
            segs.push((Rat::int((base - h) as i128), Rat::int(-outside)));
        }
    }
    breaks.push(Rat::ONE);
    PiecewiseLinear::new(breaks, segs)
}

/// The upper envelopes drawn from all digit levels: `plus` drives the
/// one-sided overshoot, `minus` the undershoot, and `total = plus + minus`
/// the two-sided discrepancy.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PsiFns {
    pub plus: PiecewiseLinear,
    pub minus: PiecewiseLinear,
    pub total: PiecewiseLinear,
}

pub fn psi_fns(base: u32, sigma: &Perm) -> Result<PsiFns> {
    let mut plus = PiecewiseLinear::zero();
    let mut minus = PiecewiseLinear::zero();
    for h in 0..base {
        let f = phi(base, sigma, h)?;
        minus = minus.max(&f.neg());
        plus = plus.max(&f);
    }
    let total = plus.add(&minus);
    Ok(PsiFns { plus, minus, total })
}

/// Translation residue contributed by the rows above the diagonal: the
/// mod-b sum of `c_r^k` times the digits of `N - 1`.
pub fn translation_residue(matrix: &UpperMatrix, n_value: u64, r: u32) -> u32 {
    debug_assert!(n_value >= 1);
    let b = matrix.base();
    let mut acc = 0u64;
    for &(k, c) in matrix.upper_entries(r) {
        acc += c as u64 * crate::base::digit_at(n_value - 1, b, k as usize) as u64;
    }
    (acc % b as u64) as u32
}

/// Cache of envelope functions keyed by permutation table and translation.
pub struct PsiCache {
    map: BTreeMap<(Vec<u32>, u32), Rc<PsiFns>>,
}

impl PsiCache {
    pub fn new() -> Self {
        PsiCache {
            map: BTreeMap::new(),
        }
    }

    pub fn get(&mut self, sigma: &Perm, translation: u32) -> Result<Rc<PsiFns>> {
        let key = (sigma.table().to_vec(), translation);
        if let Some(f) = self.map.get(&key) {
            return Ok(Rc::clone(f));
        }
        let f = Rc::new(psi_fns(sigma.base(), &sigma.translate(translation))?);
        self.map.insert(key, Rc::clone(&f));
        Ok(f)
    }
}

impl Default for PsiCache {
    fn default() -> Self {
        PsiCache::new()
    }
}

/// Exact discrepancy report of the first N points of the permuted
/// upper-triangular digital sequence, by digit-level series.
///
/// The one-sided values sum translated envelopes at `N/b^j`; the
/// two-sided value sums untranslated ones. Finitely many head terms are
/// evaluated directly and the rest is a geometric tail in closed form,
/// entered once every argument lies inside each envelope's first linear
/// segment.
pub fn formula_disc(seq: &PermSeq, matrix: &UpperMatrix, n_value: u64) -> Result<DiscReport> {
    formula_disc_cached(seq, matrix, n_value, &mut PsiCache::new())
}

pub fn formula_disc_cached(
    seq: &PermSeq,
    matrix: &UpperMatrix,
    n_value: u64,
    cache: &mut PsiCache,
) -> Result<DiscReport> {
    let b = seq.base();
    if matrix.base() != b {
        return Err(Error::BaseMismatch);
    }
    if !matrix.is_strict() {
        return Err(Error::InvalidMatrix(
            "series formulas need a strict upper matrix",
        ));
    }
    if n_value == 0 {
        return Err(Error::EmptyPointSet);
    }
    let (tail_start, sigma_inf) = seq.eventual().ok_or(Error::TailNotEventuallyConstant)?;
    let tail_fns = cache.get(&sigma_inf, 0)?;
    let digits_of_prev = crate::base::digit_len(n_value - 1, b);

    // head length: beyond it the permutation is the tail one, the
    // translation residue vanishes, and N/b^j sits strictly inside the
    // first segment of every tail envelope
    let min_end = tail_fns
        .plus
        .first_break_end()
        .min(tail_fns.minus.first_break_end())
        .min(tail_fns.total.first_break_end());
    let mut head = tail_start.max(digits_of_prev).max(1);
    loop {
        let arg = Rat::new(n_value as i128, 1) / Rat::pow_int(b, head as u32 + 1)?;
        if arg < min_end {
            break;
        }
        head += 1;
    }

    let n_rat = Rat::int(n_value as i128);
    let mut dplus = Rat::ZERO;
    let mut dminus = Rat::ZERO;
    let mut dextreme = Rat::ZERO;
    for j in 1..=head {
        let r = (j - 1) as u32;
        let sigma = seq.sigma_at(r as u64);
        let theta = translation_residue(matrix, n_value, r);
        let translated = cache.get(&sigma, theta)?;
        let plain = cache.get(&sigma, 0)?;
        let arg = n_rat / Rat::pow_int(b, j as u32)?;
        dplus += translated.plus.eval(&arg);
        dminus += translated.minus.eval(&arg);
        dextreme += plain.total.eval(&arg);
    }
    // sum_{j > head} slope * N / b^j = slope * N * b^-head / (b - 1)
    let tail_weight = n_rat / (Rat::pow_int(b, head as u32)? * Rat::int(b as i128 - 1));
    dplus += tail_fns.plus.first_slope() * tail_weight;
    dminus += tail_fns.minus.first_slope() * tail_weight;
    dextreme += tail_fns.total.first_slope() * tail_weight;

    Ok(DiscReport {
        n: n_value,
        dplus,
        dminus,
        dstar: dplus.max(dminus),
        dextreme,
        method: DiscMethod::Formula,
    })
}

/// Upper estimate of a leading asymptotic constant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlphaEstimate {
    pub base: u32,
    pub n_max: u32,
    /// `sup_values[i]` is the exact supremum over one period of the sum
    /// of i+1 scaled envelope copies.
    pub sup_values: Vec<Rat>,
    /// `min_n sup_values[n-1] / n`; an upper bound on the true constant.
    pub estimate: Rat,
}

/// Exact supremum of `sum_{j=1..n} f(x / b^j)` over one period `[0, b^n]`.
///
/// All summand breakpoints are merged into one event sweep; the sum is
/// linear between events, so evaluating at events is exact.
pub fn sup_shifted_sum(f: &PiecewiseLinear, base: u32, n: u32, budget: u64) -> Result<Rat> {
    struct Stream {
        scale: Rat,      // b^j
        seg: usize,      // current segment index
        offset: Rat,     // integer period offset of the argument
        next_event: Rat, // x at which the segment changes
    }
    let mut streams: Vec<Stream> = (1..=n)
        .map(|j| {
            let scale = Rat::pow_int(base, j)?;
            Ok(Stream {
                scale,
                seg: 0,
                offset: Rat::ZERO,
                next_event: scale * f.breakpoints()[1],
            })
        })
        .collect::<Result<_>>()?;
    let end = Rat::pow_int(base, n)?;
    let mut slope = Rat::ZERO;
    for s in &streams {
        slope += f.segments()[0].0 / s.scale;
    }
    let mut x = Rat::ZERO;
    let mut value = Rat::ZERO;
    for _ in 0..n {
        value += f.eval(&Rat::ZERO);
    }
    let mut best = value;
    let mut events: u64 = 0;
    loop {
        let mut next = end;
        for s in &streams {
            if s.next_event < next {
                next = s.next_event;
            }
        }
        value += slope * (next - x);
        x = next;
        best = best.max(value);
        if x == end {
            break;
        }
        events += 1;
        if events > budget {
            return Err(Error::BudgetExceeded { budget });
        }
        for s in streams.iter_mut() {
            if s.next_event == x {
                let old = f.segments()[s.seg].0;
                s.seg += 1;
                if s.seg == f.segments().len() {
                    s.seg = 0;
                    s.offset += Rat::ONE;
                }
                let new = f.segments()[s.seg].0;
                slope += (new - old) / s.scale;
                s.next_event = s.scale * (s.offset + f.breakpoints()[s.seg + 1]);
            }
        }
    }
    Ok(best)
}

fn alpha_from(f: &PiecewiseLinear, base: u32, n_max: u32, budget: u64) -> Result<AlphaEstimate> {
    if n_max == 0 {
        return Err(Error::CapExceeded {
            what: "n_max",
            cap: 0,
        });
    }
    let mut sup_values = Vec::with_capacity(n_max as usize);
    let mut estimate: Option<Rat> = None;
    for n in 1..=n_max {
        let a_n = sup_shifted_sum(f, base, n, budget)?;
        let ratio = a_n / Rat::int(n as i128);
        estimate = Some(match estimate {
            Some(e) => e.min(ratio),
            None => ratio,
        });
        sup_values.push(a_n);
    }
    Ok(AlphaEstimate {
        base,
        n_max,
        sup_values,
        estimate: estimate.expect("n_max >= 1"),
    })
}

/// Estimate of the two-sided leading constant of the constant-permutation
/// sequence: the infimum over n of the scaled envelope-sum suprema.
pub fn alpha_estimate(base: u32, sigma: &Perm, n_max: u32, budget: u64) -> Result<AlphaEstimate> {
    let fns = psi_fns(base, sigma)?;
    alpha_from(&fns.total, base, n_max, budget)
}

/// One-sided analogues `(plus, minus)`.
pub fn alpha_pm_estimates(
    base: u32,
    sigma: &Perm,
    n_max: u32,
    budget: u64,
) -> Result<(AlphaEstimate, AlphaEstimate)> {
    let fns = psi_fns(base, sigma)?;
    Ok((
        alpha_from(&fns.plus, base, n_max, budget)?,
        alpha_from(&fns.minus, base, n_max, budget)?,
    ))
}

/// Closed form of the two-sided leading constant for the identity
/// permutation: `(b-1)/4` for odd b, `b^2/(4(b+1))` for even b.
pub fn alpha_id_closed(base: u32) -> Rat {
    let b = base as i128;
    if b % 2 == 1 {
        Rat::new(b - 1, 4)
    } else {
        Rat::new(b * b, 4 * (b + 1))
    }
}
