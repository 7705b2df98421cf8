//! Equidistribution verification: exhaustive elementary-interval counting,
//! the digital rank criterion, and block checks for infinite sequences.

use crate::base::BaseRational;
use crate::error::{Error, Result};
use crate::modmat::{is_prime, rank_mod_p};
use crate::rat::Rat;
use alloc::vec::Vec;

/// One b-adic elementary interval `prod [a_j b^-d_j, (a_j+1) b^-d_j)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElementaryInterval {
    pub base: u32,
    pub resolutions: Vec<u32>,
    pub indices: Vec<u64>,
}

impl ElementaryInterval {
    pub fn volume(&self) -> Rat {
        let total: u32 = self.resolutions.iter().sum();
        let mut den: i128 = 1;
        for _ in 0..total {
            den *= self.base as i128;
        }
        Rat::new(1, den)
    }

    pub fn contains(&self, point: &[Rat]) -> bool {
        self.resolutions
            .iter()
            .zip(&self.indices)
            .zip(point)
            .all(|((&d, &a), x)| {
                let scale = (self.base as i128).pow(d);
                let lo = Rat::new(a as i128, scale);
                let hi = Rat::new(a as i128 + 1, scale);
                *x >= lo && *x < hi
            })
    }
}

/// Iterate compositions `(d_1, ..., d_s)` of `total` lexicographically,
/// invoking `f` until it returns false; returns the conjunction.
fn for_each_composition(s: usize, total: u32, f: &mut impl FnMut(&[u32]) -> bool) -> bool {
    let mut d = alloc::vec![0u32; s];
    fn rec(d: &mut Vec<u32>, pos: usize, left: u32, f: &mut impl FnMut(&[u32]) -> bool) -> bool {
        if pos + 1 == d.len() {
            d[pos] = left;
            return f(d);
        }
        for v in 0..=left {
            d[pos] = v;
            if !rec(d, pos + 1, left - v, f) {
                return false;
            }
        }
        true
    }
    rec(&mut d, 0, total, f)
}

/// Interval index of `x` at resolution d: `floor(x * b^d)`, exact.
fn cell_index(x: &Rat, base: u32, d: u32) -> Result<u64> {
    if x < &Rat::ZERO || x >= &Rat::ONE {
        return Err(Error::PointOutOfRange);
    }
    let scale = (base as i128).checked_pow(d).ok_or(Error::CapExceeded {
        what: "b^d",
        cap: u64::MAX,
    })?;
    Ok((Rat::new(scale, 1) * *x).floor() as u64)
}

/// Exhaustive elementary-interval test: true iff every b-adic interval of
/// volume `b^(t-m)` holds exactly `b^t` of the `b^m` points.
pub fn is_net(points: &[Vec<Rat>], base: u32, m: u32, t: u32) -> Result<bool> {
    let s = points.first().map(Vec::len).ok_or(Error::EmptyPointSet)?;
    let expected = (base as u64).checked_pow(m).ok_or(Error::CapExceeded {
        what: "b^m",
        cap: u64::MAX,
    })?;
    if points.len() as u64 != expected {
        return Err(Error::CardinalityMismatch {
            expected,
            got: points.len() as u64,
        });
    }
    if t > m {
        return Err(Error::CapExceeded {
            what: "t",
            cap: m as u64,
        });
    }
    if points.iter().any(|p| p.len() != s) {
        return Err(Error::CardinalityMismatch {
            expected: s as u64,
            got: 0,
        });
    }
    let fill = (base as u64).pow(t);
    let cells = (base as u64).pow(m - t) as usize;
    let mut counts = alloc::vec![0u64; cells];
    let ok = for_each_composition(s, m - t, &mut |d| {
        counts.iter_mut().for_each(|c| *c = 0);
        for p in points {
            let mut idx: u64 = 0;
            for (j, x) in p.iter().enumerate() {
                let a = match cell_index(x, base, d[j]) {
                    Ok(a) => a,
                    Err(_) => return false,
                };
                idx = idx * (base as u64).pow(d[j]) + a;
            }
            counts[idx as usize] += 1;
            if counts[idx as usize] > fill {
                return false;
            }
        }
        counts.iter().all(|&c| c == fill)
    });
    Ok(ok)
}

/// Smallest t for which the point set is a `(t,m,s)`-net; `t = m` always
/// succeeds.
pub fn minimal_t(points: &[Vec<Rat>], base: u32, m: u32) -> Result<u32> {
    for t in 0..=m {
        if is_net(points, base, m, t)? {
            return Ok(t);
        }
    }
    unreachable!("t = m accepts every point set of the right cardinality")
}

/// The digital rank criterion: for every composition `(d_1, ..., d_s)` of
/// `m - t`, the stacked first rows of the generating matrices must have
/// full rank over `Z_p`.
pub fn digital_rank_check(mats: &[Vec<Vec<u32>>], base: u32, m: u32, t: u32) -> Result<bool> {
    if !is_prime(base) {
        return Err(Error::NonPrimeBase(base));
    }
    if mats.is_empty() || mats.iter().any(|c| c.len() != m as usize) {
        return Err(Error::InvalidMatrix("need s matrices of m rows"));
    }
    if t > m {
        return Err(Error::CapExceeded {
            what: "t",
            cap: m as u64,
        });
    }
    let s = mats.len();
    let ok = for_each_composition(s, m - t, &mut |d| {
        let mut stacked: Vec<Vec<u32>> = Vec::with_capacity((m - t) as usize);
        for (j, mat) in mats.iter().enumerate() {
            for row in mat.iter().take(d[j] as usize) {
                stacked.push(row.clone());
            }
        }
        rank_mod_p(&stacked, base) == (m - t) as usize
    });
    Ok(ok)
}

/// Smallest t accepted by the rank criterion.
pub fn minimal_t_digital(mats: &[Vec<Vec<u32>>], base: u32, m: u32) -> Result<u32> {
    for t in 0..=m {
        if digital_rank_check(mats, base, m, t)? {
            return Ok(t);
        }
    }
    unreachable!("t = m stacks no rows and trivially passes")
}

/// Block test for the sequence property: for every `t < m <= m_max` and
/// `0 <= l <= l_max`, the m-truncated aligned block
/// `{[x_n]_{b,m} : l b^m <= n < (l+1) b^m}` must be a `(t,m,s)`-net.
///
/// `point` maps `(index, precision)` to the truncated coordinates.
pub fn check_sequence_prefix(
    point: impl Fn(u64, usize) -> Vec<BaseRational>,
    base: u32,
    t: u32,
    m_max: u32,
    l_max: u64,
) -> Result<bool> {
    for m in (t + 1)..=m_max {
        let block = (base as u64).pow(m);
        for l in 0..=l_max {
            let pts: Vec<Vec<Rat>> = (l * block..(l + 1) * block)
                .map(|n| {
                    point(n, m as usize)
                        .iter()
                        .map(BaseRational::value)
                        .collect()
                })
                .collect();
            if !is_net(&pts, base, m, t)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{hammersley, identity_matrix, reversal_matrix, DigitalMatrices, Seq1D};
    use crate::perm::Perm;
    use alloc::vec;

    fn hammersley_rows(b: u32, m: u32) -> Vec<Vec<Rat>> {
        hammersley(b, m, &vec![Perm::identity(b); m as usize])
            .unwrap()
            .rat_rows()
    }

    #[test]
    fn classical_hammersley_is_a_zero_t_net() {
        let pts = hammersley_rows(2, 3);
        assert!(is_net(&pts, 2, 3, 0).unwrap());
        assert_eq!(minimal_t(&pts, 2, 3).unwrap(), 0);
        assert_eq!(minimal_t(&hammersley_rows(2, 4), 2, 4).unwrap(), 0);
    }

    #[test]
    fn diagonal_net_needs_t_one() {
        let mats = DigitalMatrices::new(2, vec![identity_matrix(2), identity_matrix(2)]).unwrap();
        let pts: Vec<Vec<Rat>> = mats
            .net()
            .unwrap()
            .iter()
            .map(|p| p.iter().map(BaseRational::value).collect())
            .collect();
        assert!(!is_net(&pts, 2, 2, 0).unwrap());
        assert!(is_net(&pts, 2, 2, 1).unwrap());
        assert_eq!(minimal_t(&pts, 2, 2).unwrap(), 1);
    }

    #[test]
    fn t_equals_m_always_passes() {
        let degenerate = vec![vec![Rat::ZERO, Rat::ZERO]; 8];
        assert!(is_net(&degenerate, 2, 3, 3).unwrap());
        assert_eq!(minimal_t(&degenerate, 2, 3).unwrap(), 3);
    }

    #[test]
    fn cardinality_is_checked() {
        let pts = vec![vec![Rat::ZERO]; 3];
        assert!(matches!(
            is_net(&pts, 2, 2, 0),
            Err(Error::CardinalityMismatch { .. })
        ));
    }

    #[test]
    fn rank_check_examples() {
        let good = [identity_matrix(3), reversal_matrix(3)];
        assert!(digital_rank_check(&good, 2, 3, 0).unwrap());
        let dup = [identity_matrix(2), identity_matrix(2)];
        assert!(!digital_rank_check(&dup, 2, 2, 0).unwrap());
        assert!(digital_rank_check(&dup, 2, 2, 1).unwrap());
        let single = [identity_matrix(4)];
        assert!(digital_rank_check(&single, 2, 4, 0).unwrap());
        assert!(matches!(
            digital_rank_check(&good, 4, 3, 0),
            Err(Error::NonPrimeBase(4))
        ));
    }

    #[test]
    fn rank_check_agrees_with_counting() {
        let mut rng = crate::rng::Rng::new(2024);
        for &p in &[2u32, 3] {
            for _ in 0..25 {
                let m = 2 + rng.below(3) as u32;
                let mats = vec![
                    rng.square_matrix(p, m as usize),
                    rng.square_matrix(p, m as usize),
                ];
                let net = DigitalMatrices::new(p, mats.clone()).unwrap();
                let pts: Vec<Vec<Rat>> = net
                    .net()
                    .unwrap()
                    .iter()
                    .map(|pt| pt.iter().map(BaseRational::value).collect())
                    .collect();
                for t in 0..=m {
                    assert_eq!(
                        digital_rank_check(&mats, p, m, t).unwrap(),
                        is_net(&pts, p, m, t).unwrap(),
                        "p={p} m={m} t={t}"
                    );
                }
            }
        }
    }

    #[test]
    fn coarser_intervals_aggregate() {
        let mut rng = crate::rng::Rng::new(5);
        let mats = vec![rng.square_matrix(3, 3), rng.square_matrix(3, 3)];
        let net = DigitalMatrices::new(3, mats).unwrap();
        let pts: Vec<Vec<Rat>> = net
            .net()
            .unwrap()
            .iter()
            .map(|pt| pt.iter().map(BaseRational::value).collect())
            .collect();
        let t0 = minimal_t(&pts, 3, 3).unwrap();
        for t in t0..=3 {
            assert!(is_net(&pts, 3, 3, t).unwrap());
        }
    }

    #[test]
    fn sequence_blocks() {
        // the plain radical-inverse sequence is a (0,1)-sequence
        let vdc = Seq1D::van_der_corput(2);
        let ok = check_sequence_prefix(|n, m| vec![vdc.truncated(n, m)], 2, 0, 6, 3).unwrap();
        assert!(ok);

        // duplication makes it a (1,1)-sequence
        let rep = Seq1D::repeat(Seq1D::van_der_corput(2), 1);
        let ok = check_sequence_prefix(|n, m| vec![rep.truncated(n, m)], 2, 1, 6, 1).unwrap();
        assert!(ok);

        // and it is no (0,1)-sequence
        let ok = check_sequence_prefix(|n, m| vec![rep.truncated(n, m)], 2, 0, 3, 0).unwrap();
        assert!(!ok);
    }

    #[test]
    fn swapped_sequence_needs_truncation() {
        // digit streams ending in all ones still pass through truncation
        let tau = Seq1D::gvdc(crate::perm::PermSeq::constant(Perm::swap(2)));
        let ok = check_sequence_prefix(|n, m| vec![tau.truncated(n, m)], 2, 0, 5, 2).unwrap();
        assert!(ok);
    }
}
