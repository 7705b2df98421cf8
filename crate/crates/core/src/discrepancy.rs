//! Exact discrepancy computation: one-dimensional report values, the
//! sorted closed formula, exact two-dimensional star discrepancy, and the
//! prefix/net sandwich linking sequences to two-dimensional sets.
//!
//! Two independent exact routes exist for two-dimensional sets: a general
//! candidate-grid sweep over arbitrary rational points, and a fast
//! integer sweep for sets of the shape `{(perm[n]/N, n/N)}`. They are
//! checked against each other in the tests.

use crate::error::{Error, Result};
use crate::generators::Seq1D;
use crate::rat::Rat;
use crate::DESK_N_CAP;
use alloc::vec::Vec;

/// Largest cardinality accepted by the fast permutation-set sweep.
pub const PERM_N_CAP: usize = 1 << 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiscMethod {
    /// Direct candidate evaluation on the point multiset.
    Oracle,
    /// Digit-level series formulas.
    Formula,
    /// The sorted one-dimensional closed formula.
    ClosedForm1d,
}

/// Exact unnormalized discrepancy values of one point multiset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiscReport {
    pub n: u64,
    pub dplus: Rat,
    pub dminus: Rat,
    pub dstar: Rat,
    pub dextreme: Rat,
    pub method: DiscMethod,
}

/// One-sided and two-sided discrepancies of a 1D multiset in `[0, 1]`.
///
/// The suprema are evaluated over the finite candidate set of point
/// values with both one-sided counting modes plus the endpoint 1; the
/// count deviation is linear between candidates, so this is exact.
pub fn disc_1d(points: &[Rat]) -> Result<DiscReport> {
    if points.is_empty() {
        return Err(Error::EmptyPointSet);
    }
    if points.iter().any(|x| *x < Rat::ZERO || *x > Rat::ONE) {
        return Err(Error::PointOutOfRange);
    }
    let mut sorted = points.to_vec();
    sorted.sort();
    let n = Rat::int(points.len() as i128);
    let mut dplus = Rat::ZERO;
    let mut dminus = Rat::ZERO;
    let mut i = 0;
    while i < sorted.len() {
        let v = sorted[i];
        let mut j = i;
        while j < sorted.len() && sorted[j] == v {
            j += 1;
        }
        let below = Rat::int(i as i128);
        let through = Rat::int(j as i128);
        dplus = dplus.max(through - n * v);
        dminus = dminus.max(n * v - below);
        i = j;
    }
    let below_one = sorted.iter().filter(|x| **x < Rat::ONE).count();
    dminus = dminus.max(n - Rat::int(below_one as i128));
    Ok(DiscReport {
        n: points.len() as u64,
        dplus,
        dminus,
        dstar: dplus.max(dminus),
        dextreme: dplus + dminus,
        method: DiscMethod::Oracle,
    })
}

/// Closed formula for the 1D star discrepancy of a sorted multiset:
/// `1/2 + N max_n |x_(n) - (2n+1)/(2N)|`.
pub fn star_disc_1d_sorted(points: &[Rat]) -> Result<Rat> {
    if points.is_empty() {
        return Err(Error::EmptyPointSet);
    }
    let mut sorted = points.to_vec();
    sorted.sort();
    let n = sorted.len() as i128;
    let mut dev = Rat::ZERO;
    for (i, x) in sorted.iter().enumerate() {
        let center = Rat::new(2 * i as i128 + 1, 2 * n);
        dev = dev.max((*x - center).abs());
    }
    Ok(Rat::new(1, 2) + Rat::int(n) * dev)
}

/// Brute-force two-sided (extreme) discrepancy over all intervals, via
/// the full candidate-pair grid. Quadratic; exists as the independent
/// oracle for the `D = D+ + D-` identity.
pub fn extreme_disc_1d_grid(points: &[Rat]) -> Result<Rat> {
    if points.is_empty() {
        return Err(Error::EmptyPointSet);
    }
    let n = Rat::int(points.len() as i128);
    let mut vals = points.to_vec();
    vals.push(Rat::ZERO);
    vals.push(Rat::ONE);
    vals.sort();
    vals.dedup();
    // prefix counts: below[i] = #points < vals[i], thru[i] = #points <= vals[i]
    let mut below = Vec::with_capacity(vals.len());
    let mut thru = Vec::with_capacity(vals.len());
    for v in &vals {
        below.push(points.iter().filter(|x| *x < v).count() as i128);
        thru.push(points.iter().filter(|x| *x <= v).count() as i128);
    }
    let mut best = Rat::ZERO;
    for i in 0..vals.len() {
        for j in i..vals.len() {
            let len = vals[j] - vals[i];
            // closed-closed count, interval [v_i, v_j + eps)
            let plus = Rat::int(thru[j] - below[i]) - n * len;
            best = best.max(plus);
            if j > i {
                // open-open count, interval (v_i + eps, v_j)
                let minus = n * len - Rat::int(below[j] - thru[i]);
                best = best.max(minus);
            }
        }
    }
    Ok(best)
}

/// Local discrepancy of one s-dimensional box: `A(J) - N lambda(J)`.
pub fn local_delta(points: &[Vec<Rat>], bx: &[(Rat, Rat)]) -> Result<Rat> {
    let s = points.first().map(Vec::len).ok_or(Error::EmptyPointSet)?;
    if bx.len() != s {
        return Err(Error::MalformedBox);
    }
    let mut volume = Rat::ONE;
    for (lo, hi) in bx {
        if lo >= hi || *lo < Rat::ZERO || *hi > Rat::ONE {
            return Err(Error::MalformedBox);
        }
        volume = volume * (*hi - *lo);
    }
    let count = points
        .iter()
        .filter(|p| p.iter().zip(bx).all(|(x, (lo, hi))| x >= lo && x < hi))
        .count();
    Ok(Rat::int(count as i128) - Rat::int(points.len() as i128) * volume)
}

struct Fenwick {
    tree: Vec<u32>,
}

impl Fenwick {
    fn new(n: usize) -> Self {
        Fenwick {
            tree: alloc::vec![0; n + 1],
        }
    }

    fn add(&mut self, mut i: usize) {
        i += 1;
        while i < self.tree.len() {
            self.tree[i] += 1;
            i += i & i.wrapping_neg();
        }
    }

    /// Count of inserted ranks `< i`.
    fn prefix(&self, mut i: usize) -> u32 {
        let mut acc = 0;
        while i > 0 {
            acc += self.tree[i];
            i -= i & i.wrapping_neg();
        }
        acc
    }
}

/// Exact two-dimensional star discrepancy of an arbitrary rational point
/// multiset in `[0, 1]^2`.
///
/// Candidate-grid maximization: anchors run over coordinate values with
/// both counting modes plus the endpoint 1. The count is piecewise
/// constant and the area bilinear between candidates, so the supremum is
/// realized exactly. Quadratic in N; capped at [`DESK_N_CAP`] points.
pub fn star_disc_2d(points: &[(Rat, Rat)]) -> Result<Rat> {
    let n = points.len();
    if n == 0 {
        return Err(Error::EmptyPointSet);
    }
    if n > DESK_N_CAP {
        return Err(Error::CapExceeded {
            what: "2d point count",
            cap: DESK_N_CAP as u64,
        });
    }
    for (x, y) in points {
        if *x < Rat::ZERO || *x > Rat::ONE || *y < Rat::ZERO || *y > Rat::ONE {
            return Err(Error::PointOutOfRange);
        }
    }
    let n_rat = Rat::int(n as i128);
    let mut by_x: Vec<(Rat, Rat)> = points.to_vec();
    by_x.sort();
    let mut ys: Vec<Rat> = points.iter().map(|p| p.1).collect();
    ys.sort();
    ys.dedup();
    let rank_le = |v: &Rat| match ys.binary_search(v) {
        Ok(i) => i + 1,
        Err(i) => i,
    };
    let y_rank = |v: &Rat| ys.binary_search(v).expect("point y is a candidate");

    let mut xs: Vec<Rat> = points.iter().map(|p| p.0).collect();
    xs.sort();
    xs.dedup();

    let mut best = Rat::ZERO;

    // positive side: A(<= vx, <= vy) - N vx vy over value pairs
    let mut fen = Fenwick::new(ys.len());
    let mut next = 0;
    for vx in &xs {
        while next < n && by_x[next].0 <= *vx {
            fen.add(y_rank(&by_x[next].1));
            next += 1;
        }
        let scaled_x = n_rat * *vx;
        for vy in &ys {
            let cnt = fen.prefix(rank_le(vy)) as i128;
            let term = Rat::int(cnt) - scaled_x * *vy;
            best = best.max(term);
        }
    }

    // negative side: N vx vy - A(< vx, < vy) over values extended by 1
    let mut xs_open = xs.clone();
    if xs_open.last() != Some(&Rat::ONE) {
        xs_open.push(Rat::ONE);
    }
    let mut ys_open = ys.clone();
    if ys_open.last() != Some(&Rat::ONE) {
        ys_open.push(Rat::ONE);
    }
    let rank_lt = |v: &Rat| match ys.binary_search(v) {
        Ok(i) => i,
        Err(i) => i,
    };
    let mut fen = Fenwick::new(ys.len());
    let mut next = 0;
    for vx in &xs_open {
        while next < n && by_x[next].0 < *vx {
            fen.add(y_rank(&by_x[next].1));
            next += 1;
        }
        let scaled_x = n_rat * *vx;
        for vy in &ys_open {
            let cnt = fen.prefix(rank_lt(vy)) as i128;
            let term = scaled_x * *vy - Rat::int(cnt);
            best = best.max(term);
        }
    }

    Ok(best)
}

const KST_NEG: i64 = i64::MIN / 4;
const KST_INF: i64 = i64::MAX / 2;

/// Kinetic max segment tree over lines `a_j + s_j * t` with suffix adds
/// to the intercepts and nondecreasing integer query times.
struct Kst {
    size: usize,
    a: Vec<i64>,
    s: Vec<i64>,
    expire: Vec<i64>,
    lazy: Vec<i64>,
}

impl Kst {
    /// Leaf j carries intercept 0 and slope `slope(j)`; padding leaves
    /// never win.
    fn new(n: usize, slope: impl Fn(usize) -> i64) -> Self {
        let size = n.next_power_of_two().max(1);
        let mut kst = Kst {
            size,
            a: alloc::vec![0; 2 * size],
            s: alloc::vec![0; 2 * size],
            expire: alloc::vec![KST_INF; 2 * size],
            lazy: alloc::vec![0; 2 * size],
        };
        for j in 0..size {
            kst.a[size + j] = if j < n { 0 } else { KST_NEG };
            kst.s[size + j] = if j < n { slope(j) } else { 0 };
        }
        for node in (1..size).rev() {
            kst.pull(node, 0);
        }
        kst
    }

    fn value(&self, node: usize, t: i64) -> i64 {
        self.a[node] + self.s[node] * t
    }

    /// Recombine from children assumed valid at time t.
    fn pull(&mut self, node: usize, t: i64) {
        let (l, r) = (2 * node, 2 * node + 1);
        let (w, o) = if self.value(l, t) >= self.value(r, t) {
            (l, r)
        } else {
            (r, l)
        };
        self.a[node] = self.a[w];
        self.s[node] = self.s[w];
        let cross = if self.s[w] >= self.s[o] {
            KST_INF
        } else {
            // first integer time where the loser overtakes
            let num = self.a[w] - self.a[o];
            let den = self.s[o] - self.s[w];
            num.div_euclid(den) + 1
        };
        self.expire[node] = self.expire[l].min(self.expire[r]).min(cross);
    }

    fn push(&mut self, node: usize) {
        let add = self.lazy[node];
        if add != 0 {
            for child in [2 * node, 2 * node + 1] {
                self.a[child] += add;
                if child < self.size {
                    self.lazy[child] += add;
                }
            }
            self.lazy[node] = 0;
        }
    }

    /// Restore validity of the winner line at time t.
    fn refresh(&mut self, node: usize, t: i64) {
        if node >= self.size || t < self.expire[node] {
            return;
        }
        self.push(node);
        self.refresh(2 * node, t);
        self.refresh(2 * node + 1, t);
        self.pull(node, t);
    }

    fn add_range(&mut self, node: usize, lo: usize, hi: usize, from: usize, c: i64, t: i64) {
        if from <= lo {
            self.refresh(node, t);
            self.a[node] += c;
            if node < self.size {
                self.lazy[node] += c;
            }
            return;
        }
        if hi <= from {
            self.refresh(node, t);
            return;
        }
        self.push(node);
        let mid = (lo + hi) / 2;
        self.add_range(2 * node, lo, mid, from, c, t);
        self.add_range(2 * node + 1, mid, hi, from, c, t);
        self.pull(node, t);
    }

    /// Add c to every intercept with index `>= from`.
    fn suffix_add(&mut self, from: usize, c: i64, t: i64) {
        let size = self.size;
        self.add_range(1, 0, size, from, c, t);
    }

    fn max_at(&mut self, t: i64) -> i64 {
        self.refresh(1, t);
        self.value(1, t)
    }
}

/// Exact star discrepancy, times N, of the permutation-structured set
/// `{(perm[n]/N, n/N) : 0 <= n < N}`.
///
/// The sweep over the second coordinate reduces both one-sided suprema
/// to running maxima of integer lines; the kinetic tree keeps those
/// maxima current under suffix updates in near-linear total time, so
/// nets far beyond the quadratic desk cap stay reachable. Exactness is
/// unaffected: everything is integer arithmetic.
pub fn star_disc_perm_scaled(perm: &[u64]) -> Result<i64> {
    let n = perm.len();
    if n == 0 {
        return Err(Error::EmptyPointSet);
    }
    if n > PERM_N_CAP {
        return Err(Error::CapExceeded {
            what: "permutation length",
            cap: PERM_N_CAP as u64,
        });
    }
    let mut seen = alloc::vec![false; n];
    for &v in perm {
        if v as usize >= n || seen[v as usize] {
            return Err(Error::NotABijection);
        }
        seen[v as usize] = true;
    }
    let n_i = n as i64;
    // plus side: value_j(M) = N * #{i < M : perm[i] <= j} - (M-1) j
    let mut plus = Kst::new(n, |j| -(j as i64));
    // minus side: value_j(M) = M j - N * #{i < M : perm[i] < j}
    let mut minus = Kst::new(n, |j| j as i64);
    let mut best = 0i64;
    for m in 1..=n {
        let k = perm[m - 1] as usize;
        let t_plus = (m - 1) as i64;
        let t_minus = m as i64;
        plus.suffix_add(k, n_i, t_plus);
        minus.suffix_add(k + 1, -n_i, t_minus);
        best = best.max(plus.max_at(t_plus));
        best = best.max(minus.max_at(t_minus));
    }
    Ok(best)
}

/// [`star_disc_perm_scaled`] as an exact rational discrepancy value.
pub fn star_disc_perm_set(perm: &[u64]) -> Result<Rat> {
    let scaled = star_disc_perm_scaled(perm)?;
    Ok(Rat::new(scaled as i128, perm.len() as i128))
}

/// Verdict of the prefix-maximum/net sandwich for one sequence prefix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SandwichReport {
    pub n: u64,
    pub max_prefix: Rat,
    pub net_dstar: Rat,
    pub ok: bool,
}

/// Relates a 1D sequence to the 2D set `{(x_n, n/N)}`: the maximum prefix
/// star discrepancy bounds the set's star discrepancy from below, and
/// exceeds it by at most 1 from above. Both sides computed exactly.
pub fn sequence_net_sandwich(seq: &Seq1D, n: u64) -> Result<SandwichReport> {
    if n == 0 {
        return Err(Error::EmptyPointSet);
    }
    let values = seq.values(n)?;
    let mut max_prefix = Rat::ZERO;
    for m in 1..=n as usize {
        max_prefix = max_prefix.max(disc_1d(&values[..m])?.dstar);
    }
    let pts: Vec<(Rat, Rat)> = values
        .iter()
        .enumerate()
        .map(|(i, x)| (*x, Rat::new(i as i128, n as i128)))
        .collect();
    let net_dstar = star_disc_2d(&pts)?;
    let ok = max_prefix <= net_dstar && net_dstar <= max_prefix + Rat::ONE;
    Ok(SandwichReport {
        n,
        max_prefix,
        net_dstar,
        ok,
    })
}
