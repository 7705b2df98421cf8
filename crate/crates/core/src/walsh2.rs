//! Base-2 local discrepancy of digital nets whose first generating matrix
//! is the identity, evaluated at m-bit anchors through a digit-level
//! closed formula, plus the constructive witness pair that forces the
//! block-structured lower bound.
//!
//! Conventions: an m-bit number is stored by its numerator `k` with the
//! value `k / 2^m`; bit i (1-based, most significant first) of the value
//! is bit `m - i` of `k`. Digit vectors are masks with component i in bit
//! `i - 1`. The formula value is the unnormalized count deviation
//! `A - 2^m eta beta`, which the direct-count oracle confirms.

use crate::error::{Error, Result};
use crate::rat::Rat;
use alloc::vec::Vec;

fn parity(x: u64) -> u32 {
    x.count_ones() & 1
}

/// Reverse the low `m` bits of `x`.
fn rev_bits(x: u64, m: usize) -> u64 {
    let mut out = 0u64;
    for i in 0..m {
        out |= ((x >> i) & 1) << (m - 1 - i);
    }
    out
}

/// Invert a u x u bit matrix given as row masks; `None` when singular.
fn invert_bits(rows: &[u64]) -> Option<Vec<u64>> {
    let u = rows.len();
    let mut work: Vec<u64> = rows.to_vec();
    let mut inv: Vec<u64> = (0..u).map(|i| 1u64 << i).collect();
    for col in 0..u {
        let pivot = (col..u).find(|&r| (work[r] >> col) & 1 == 1)?;
        work.swap(col, pivot);
        inv.swap(col, pivot);
        for r in 0..u {
            if r != col && (work[r] >> col) & 1 == 1 {
                work[r] ^= work[col];
                inv[r] ^= inv[col];
            }
        }
    }
    Some(inv)
}

/// Row masks of the transpose.
fn transpose_bits(rows: &[u64], width: usize) -> Vec<u64> {
    (0..width)
        .map(|c| {
            rows.iter()
                .enumerate()
                .fold(0u64, |acc, (r, &row)| acc | (((row >> c) & 1) << r))
        })
        .collect()
}

/// Lazily inverted corner matrices: level u needs the inverse of the
/// transposed upper-right u x u corner.
struct CornerCache {
    inv: Vec<Option<Vec<u64>>>,
    cols: Vec<Option<Vec<u64>>>,
}

impl CornerCache {
    fn new(m: usize) -> Self {
        CornerCache {
            inv: alloc::vec![None; m],
            cols: alloc::vec![None; m],
        }
    }

    fn get(&mut self, rows: &[u64], m: usize, u: usize) -> Result<(&[u64], &[u64])> {
        if self.inv[u - 1].is_none() {
            let mask = (1u64 << u) - 1;
            let corner: Vec<u64> = (0..u).map(|r| (rows[r] >> (m - u)) & mask).collect();
            let transposed = transpose_bits(&corner, u);
            let inv = invert_bits(&transposed).ok_or(Error::InvalidNet)?;
            self.cols[u - 1] = Some(transpose_bits(&inv, u));
            self.inv[u - 1] = Some(inv);
        }
        Ok((
            self.inv[u - 1].as_ref().expect("filled above"),
            self.cols[u - 1].as_ref().expect("filled above"),
        ))
    }
}

fn delta_with_cache(
    m: usize,
    rows: &[u64],
    eta_num: u64,
    beta_num: u64,
    corners: &mut CornerCache,
) -> Result<Rat> {
    let full = 1u64 << m;
    let eta_vec = rev_bits(eta_num, m);
    let beta_vec = rev_bits(beta_num, m);
    let gamma: u64 = (0..m).fold(0, |acc, r| {
        acc | (((parity(rows[r] & eta_vec) as u64) ^ ((beta_vec >> r) & 1)) << r)
    });
    // value bit i (1-based); indices beyond the expansion read 0
    let eta_bit = |i: usize| -> u32 {
        if (1..=m).contains(&i) {
            ((eta_num >> (m - i)) & 1) as u32
        } else {
            0
        }
    };
    let mut total = Rat::ZERO;
    for u in 0..m {
        let frac = (beta_num << u) & (full - 1);
        let dist_num = frac.min(full - frac);
        if dist_num == 0 {
            continue;
        }
        let coef = Rat::new(dist_num as i128, full as i128);
        let sign_row = parity(rows[u] & eta_vec);
        let (sign_inner, m_of_u) = if u == 0 {
            (0, 0)
        } else {
            let gamma_u = gamma & ((1u64 << u) - 1);
            if gamma_u == 0 {
                // every inner product vanishes without inverting anything
                (0, u)
            } else {
                let (inv_rows, inv_cols) = corners.get(rows, m, u)?;
                let mask = (1u64 << u) - 1;
                let vec = (rows[u] >> (m - u)) & mask;
                let image = (0..u).fold(0u64, |acc, i| {
                    acc | ((parity(inv_rows[i] & vec) as u64) << i)
                });
                let sign = parity(gamma_u & image);
                let mut leading = 0usize;
                while leading < u && parity(gamma_u & inv_cols[leading]) == 0 {
                    leading += 1;
                }
                (sign, leading)
            }
        };
        let j_of_u = u - m_of_u;
        let a = eta_bit(m - u);
        let c = eta_bit(m + 1 - j_of_u);
        // ((-1)^a - (-1)^c) / 2 is 0, +1 or -1
        let step = c as i128 - a as i128;
        if step == 0 {
            continue;
        }
        let sign = if sign_row ^ sign_inner == 1 { -1 } else { 1 };
        total += coef * Rat::int(sign * step);
    }
    Ok(total)
}

/// A digital net over `Z_2` generated by the identity matrix together
/// with the given row masks.
#[derive(Debug, Clone)]
pub struct Net2Base2 {
    m: usize,
    rows: Vec<u64>,
}

impl Net2Base2 {
    pub fn new(m: usize, rows: Vec<u64>) -> Result<Self> {
        if m == 0 || m > 30 || rows.len() != m {
            return Err(Error::InvalidMatrix("need m row masks, 1 <= m <= 30"));
        }
        if rows.iter().any(|&r| r >= 1u64 << m) {
            return Err(Error::InvalidMatrix("row mask wider than m"));
        }
        let net = Net2Base2 { m, rows };
        if !net.rank_condition() {
            return Err(Error::InvalidNet);
        }
        Ok(net)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    /// Every upper-right corner must be invertible; equivalent to the
    /// digital rank condition for the pair (identity, rows).
    fn rank_condition(&self) -> bool {
        let mut cache = CornerCache::new(self.m);
        (1..=self.m).all(|u| cache.get(&self.rows, self.m, u).is_ok())
    }

    /// Scaled second coordinate of point n.
    fn second_scaled(&self, n: u64) -> u64 {
        let y: u64 = (0..self.m).fold(0, |acc, r| acc | ((parity(self.rows[r] & n) as u64) << r));
        rev_bits(y, self.m)
    }

    /// The net as exact rational pairs, indexed by n.
    pub fn points(&self) -> Vec<(Rat, Rat)> {
        let full = 1i128 << self.m;
        (0..1u64 << self.m)
            .map(|n| {
                (
                    Rat::new(rev_bits(n, self.m) as i128, full),
                    Rat::new(self.second_scaled(n) as i128, full),
                )
            })
            .collect()
    }

    /// The net in permutation form: entry i is the scaled first
    /// coordinate of the point whose scaled second coordinate is i.
    pub fn perm_view(&self) -> Vec<u64> {
        let n_points = 1u64 << self.m;
        let mut perm = alloc::vec![0u64; n_points as usize];
        for n in 0..n_points {
            perm[self.second_scaled(n) as usize] = rev_bits(n, self.m);
        }
        perm
    }

    /// Count deviation `A - 2^m eta beta` of the anchored box
    /// `[0, eta) x [0, beta)` at m-bit anchors, via the digit formula.
    pub fn local_delta_walsh(&self, eta_num: u64, beta_num: u64) -> Result<Rat> {
        if eta_num > 1 << self.m || beta_num > 1 << self.m {
            return Err(Error::CapExceeded {
                what: "anchor numerator",
                cap: 1 << self.m,
            });
        }
        let mut cache = CornerCache::new(self.m);
        delta_with_cache(self.m, &self.rows, eta_num, beta_num, &mut cache)
    }

    /// Direct count of the same deviation, the independent oracle.
    pub fn local_delta_direct(&self, eta_num: u64, beta_num: u64) -> Rat {
        let full = 1i128 << self.m;
        let count = (0..1u64 << self.m)
            .filter(|&n| rev_bits(n, self.m) < eta_num && self.second_scaled(n) < beta_num)
            .count();
        Rat::int(count as i128) - Rat::new((eta_num * beta_num) as i128, full)
    }
}

/// Second generating matrix assembled from four blocks, the upper-left
/// one nonsingular.
#[derive(Debug, Clone)]
pub struct BlockNet {
    m: usize,
    upper_left: Vec<u64>,
    upper_right: Vec<u64>,
    lower_left: Vec<u64>,
    lower_right: Vec<u64>,
}

impl BlockNet {
    /// Blocks are row masks: `upper_left` is m0 x m0, `upper_right`
    /// m0 x (m - m0), `lower_left` (m - m0) x m0, `lower_right`
    /// (m - m0) x (m - m0), with m0 = floor(m / 2).
    pub fn new(
        m: usize,
        upper_left: Vec<u64>,
        upper_right: Vec<u64>,
        lower_left: Vec<u64>,
        lower_right: Vec<u64>,
    ) -> Result<Self> {
        if !(2..=30).contains(&m) {
            return Err(Error::InvalidMatrix("block form needs 2 <= m <= 30"));
        }
        let m0 = m / 2;
        if upper_left.len() != m0
            || upper_right.len() != m0
            || lower_left.len() != m - m0
            || lower_right.len() != m - m0
        {
            return Err(Error::InvalidMatrix("block row counts do not match m"));
        }
        if invert_bits(&upper_left).is_none() {
            return Err(Error::SingularBlock);
        }
        Ok(BlockNet {
            m,
            upper_left,
            upper_right,
            lower_left,
            lower_right,
        })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn m0(&self) -> usize {
        self.m / 2
    }

    /// Row masks of the assembled second generating matrix.
    pub fn assemble(&self) -> Vec<u64> {
        let m0 = self.m0();
        let mut rows = Vec::with_capacity(self.m);
        for r in 0..m0 {
            rows.push(self.upper_left[r] | (self.upper_right[r] << m0));
        }
        for r in 0..self.m - m0 {
            rows.push(self.lower_left[r] | (self.lower_right[r] << m0));
        }
        rows
    }
}

/// The specific anchor pair whose deviation grows linearly in m.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub eta_num: u64,
    pub beta_num: u64,
    /// `|Delta(eta, beta)|`, exact.
    pub value: Rat,
}

/// Closed form of the witness deviation: with m0 = floor(m/2), the
/// alternating-bit anchor makes the deviation a sum of scaled-distance
/// terms over odd levels below m0, which telescopes to
/// `m0/6 + (4/9)(2^-m0 - 1)` for even m0 and
/// `(m0-1)/6 + (1/9)(2^(1-m0) - 1)` for odd m0.
///
/// Both branches are pinned by the direct-count oracle in the tests; the
/// odd branch is often misquoted with `m0/6` and `2^-m0`, which does not
/// match the construction it describes.
pub fn witness_closed_form(m: usize) -> Rat {
    let m0 = (m / 2) as i128;
    let pow = 1i128 << m0;
    if m0 % 2 == 0 {
        Rat::new(m0, 6) + Rat::new(4, 9) * (Rat::new(1, pow) - Rat::ONE)
    } else {
        Rat::new(m0 - 1, 6) + Rat::new(1, 9) * (Rat::new(2, pow) - Rat::ONE)
    }
}

/// Construct the witness anchors for a block net: beta alternates bits
/// over the first m0 positions; eta solves the stacked block system whose
/// right side copies beta in the first m0 components and flips it in the
/// last m0 (free middle components set to zero).
pub fn lower_bound_witness(bn: &BlockNet) -> Result<Witness> {
    let m = bn.m;
    let m0 = bn.m0();
    // beta bits: 1, 0, 1, 0, ... over i = 1..m0, then zeros
    let mut beta_bits = alloc::vec![0u32; m + 1]; // 1-based
    for i in (1..=m0).step_by(2) {
        beta_bits[i] = 1;
    }
    // right side: first m0 components copy beta, last m0 flip it
    let mut delta_bits = alloc::vec![0u32; m + 1];
    for i in 1..=m0 {
        delta_bits[i] = beta_bits[i];
        delta_bits[m + 1 - i] = beta_bits[i] ^ 1;
    }
    // the lower block row of the system is the identity
    let mut eta_comp = alloc::vec![0u32; m + 1];
    eta_comp[m0 + 1..=m].copy_from_slice(&delta_bits[m0 + 1..=m]);
    let tail_mask: u64 =
        (m0 + 1..=m).fold(0, |acc, i| acc | ((eta_comp[i] as u64) << (i - m0 - 1)));
    // solve upper_left . head = delta_head + upper_right . tail
    let rhs_mask: u64 = (0..m0).fold(0, |acc, r| {
        let bit = delta_bits[r + 1] ^ parity(bn.upper_right[r] & tail_mask);
        acc | ((bit as u64) << r)
    });
    let inv = invert_bits(&bn.upper_left).ok_or(Error::SingularBlock)?;
    for i in 0..m0 {
        eta_comp[i + 1] = parity(inv[i] & rhs_mask);
    }
    let eta_num: u64 = (1..=m).fold(0, |acc, i| acc | ((eta_comp[i] as u64) << (m - i)));
    let beta_num: u64 = (1..=m).fold(0, |acc, i| acc | ((beta_bits[i] as u64) << (m - i)));

    let rows = bn.assemble();
    let mut cache = CornerCache::new(m);
    let value = delta_with_cache(m, &rows, eta_num, beta_num, &mut cache)?;
    Ok(Witness {
        eta_num,
        beta_num,
        value: value.abs(),
    })
}

/// Outcome of the block lower-bound verification on one net.
#[derive(Debug, Clone)]
pub struct LowerBoundReport {
    pub m: usize,
    pub dstar: Rat,
    pub witness: Witness,
    /// `m/12 - 49/36`, the asserted floor for the witness value.
    pub floor: Rat,
    pub ok: bool,
}

/// Checks that the net's star discrepancy dominates the witness deviation
/// and that the deviation clears `m/12 - 49/36`.
pub fn verify_lower_bound(bn: &BlockNet) -> Result<LowerBoundReport> {
    let net = Net2Base2::new(bn.m, bn.assemble())?;
    let witness = lower_bound_witness(bn)?;
    let dstar = crate::discrepancy::star_disc_2d(&net.points())?;
    let floor = Rat::new(bn.m as i128, 12) - Rat::new(49, 36);
    let ok = dstar >= witness.value && witness.value >= floor;
    Ok(LowerBoundReport {
        m: bn.m,
        dstar,
        witness,
        floor,
        ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::Rng;

    fn reversal_rows(m: usize) -> Vec<u64> {
        (0..m).map(|r| 1u64 << (m - 1 - r)).collect()
    }

    fn random_valid_net(rng: &mut Rng, m: usize) -> Net2Base2 {
        loop {
            let rows: Vec<u64> = (0..m).map(|_| rng.below(1 << m)).collect();
            if let Ok(net) = Net2Base2::new(m, rows) {
                return net;
            }
        }
    }

    fn random_block_net(rng: &mut Rng, m: usize) -> BlockNet {
        let m0 = m / 2;
        loop {
            let ul: Vec<u64> = (0..m0).map(|_| rng.below(1 << m0)).collect();
            let ur: Vec<u64> = (0..m0).map(|_| rng.below(1 << (m - m0))).collect();
            let ll: Vec<u64> = (0..m - m0).map(|_| rng.below(1 << m0)).collect();
            let lr: Vec<u64> = (0..m - m0).map(|_| rng.below(1 << (m - m0))).collect();
            if let Ok(bn) = BlockNet::new(m, ul, ur, ll, lr) {
                return bn;
            }
        }
    }

    #[test]
    fn reversal_net_is_valid_and_matches_hammersley() {
        let net = Net2Base2::new(3, reversal_rows(3)).unwrap();
        let mut pts = net.points();
        pts.sort();
        let mut ham =
            crate::generators::hammersley(2, 3, &alloc::vec![crate::perm::Perm::identity(2); 3])
                .unwrap()
                .rat_points();
        ham.sort();
        assert_eq!(pts, ham);
    }

    #[test]
    fn duplicated_identity_is_rejected() {
        let id: Vec<u64> = (0..3).map(|r| 1u64 << r).collect();
        assert!(matches!(Net2Base2::new(3, id), Err(Error::InvalidNet)));
    }

    #[test]
    fn zero_beta_gives_zero_delta() {
        let net = Net2Base2::new(4, reversal_rows(4)).unwrap();
        for eta in 0..=16 {
            assert_eq!(net.local_delta_walsh(eta, 0).unwrap(), Rat::ZERO);
        }
    }

    #[test]
    fn formula_matches_direct_count_reversal() {
        for m in 1..=4usize {
            let net = Net2Base2::new(m, reversal_rows(m)).unwrap();
            for eta in 0..=1u64 << m {
                for beta in 0..=1u64 << m {
                    assert_eq!(
                        net.local_delta_walsh(eta, beta).unwrap(),
                        net.local_delta_direct(eta, beta),
                        "m={m} eta={eta} beta={beta}"
                    );
                }
            }
        }
    }

    #[test]
    fn formula_matches_direct_count_random() {
        let mut rng = Rng::new(404);
        for m in 2..=5usize {
            for _ in 0..4 {
                let net = random_valid_net(&mut rng, m);
                for eta in 0..1u64 << m {
                    for beta in 0..1u64 << m {
                        assert_eq!(
                            net.local_delta_walsh(eta, beta).unwrap(),
                            net.local_delta_direct(eta, beta),
                            "m={m} rows={:?} eta={eta} beta={beta}",
                            net.rows()
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn perm_view_matches_points() {
        let mut rng = Rng::new(7);
        let net = random_valid_net(&mut rng, 5);
        let perm = net.perm_view();
        let d_fast = crate::discrepancy::star_disc_perm_set(&perm).unwrap();
        let d_gen = crate::discrepancy::star_disc_2d(&net.points()).unwrap();
        assert_eq!(d_fast, d_gen);
    }

    #[test]
    fn witness_values_match_closed_form() {
        let mut rng = Rng::new(2025);
        for m in 2..=20usize {
            let bn = random_block_net(&mut rng, m);
            let w = lower_bound_witness(&bn).unwrap();
            assert_eq!(w.value, witness_closed_form(m), "m={m}");
        }
        // hand values
        assert_eq!(witness_closed_form(8), Rat::new(1, 4));
        assert_eq!(witness_closed_form(10), Rat::new(9, 16));
        assert_eq!(witness_closed_form(2), Rat::ZERO);
    }

    #[test]
    fn minimal_resolution_verifies() {
        // m = 2 assembles from four 1x1 blocks; the bound is vacuously
        // cleared but the whole pipeline still runs
        let bn = BlockNet::new(
            2,
            alloc::vec![1],
            alloc::vec![1],
            alloc::vec![1],
            alloc::vec![1],
        )
        .unwrap();
        if Net2Base2::new(2, bn.assemble()).is_ok() {
            let report = verify_lower_bound(&bn).unwrap();
            assert!(report.ok);
        }
        let w = lower_bound_witness(&bn).unwrap();
        assert_eq!(w.value, witness_closed_form(2));
    }

    #[test]
    fn witness_value_confirmed_by_direct_count() {
        // anchor the closed form on full valid nets by direct counting
        let mut rng = Rng::new(64);
        for m in [4usize, 6, 8] {
            loop {
                let bn = random_block_net(&mut rng, m);
                let Ok(net) = Net2Base2::new(m, bn.assemble()) else {
                    continue;
                };
                let w = lower_bound_witness(&bn).unwrap();
                assert_eq!(
                    net.local_delta_direct(w.eta_num, w.beta_num).abs(),
                    witness_closed_form(m),
                    "m={m}"
                );
                break;
            }
        }
    }

    #[test]
    fn witness_dominated_by_star_disc() {
        let mut rng = Rng::new(31);
        for m in [4usize, 6, 8] {
            let mut done = 0;
            while done < 3 {
                let bn = random_block_net(&mut rng, m);
                if Net2Base2::new(m, bn.assemble()).is_err() {
                    continue; // valid blocks need not give a valid net
                }
                let report = verify_lower_bound(&bn).unwrap();
                assert!(report.ok, "m={m}");
                assert!(report.dstar >= report.witness.value);
                done += 1;
            }
        }
    }

    #[test]
    fn mbit_deviation_tracks_star_disc() {
        // best m-bit box deviation sits within 2 - 2^-m of the supremum
        let mut rng = Rng::new(88);
        for m in 2..=6usize {
            let net = random_valid_net(&mut rng, m);
            let mut best = Rat::ZERO;
            for eta in 0..=1u64 << m {
                for beta in 0..=1u64 << m {
                    best = best.max(net.local_delta_direct(eta, beta).abs());
                }
            }
            let dstar = crate::discrepancy::star_disc_2d(&net.points()).unwrap();
            let gap = (dstar - best).abs();
            let limit = Rat::int(2) - Rat::new(1, 1 << m);
            assert!(gap <= limit, "m={m} gap={gap}");
        }
    }
}
