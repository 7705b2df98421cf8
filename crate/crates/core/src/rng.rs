//! Small deterministic generator for seeded sampling in the regression
//! suite and tests. SplitMix64 core; quality is ample for sampling
//! permutations and matrices reproducibly.

use crate::generators::UpperMatrix;
use crate::perm::Perm;
use alloc::vec::Vec;

#[derive(Debug, Clone)]
pub struct Rng {
    state: u64,
}

impl Rng {
    pub fn new(seed: u64) -> Self {
        Rng { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform value in `0..n` (n > 0), rejection sampled.
    pub fn below(&mut self, n: u64) -> u64 {
        debug_assert!(n > 0);
        let zone = u64::MAX - u64::MAX % n;
        loop {
            let v = self.next_u64();
            if v < zone {
                return v % n;
            }
        }
    }

    pub fn chance(&mut self, num: u64, den: u64) -> bool {
        self.below(den) < num
    }

    /// Uniform random permutation of `{0, ..., base-1}`.
    pub fn perm(&mut self, base: u32) -> Perm {
        let mut table: Vec<u32> = (0..base).collect();
        for i in (1..table.len()).rev() {
            let j = self.below(i as u64 + 1) as usize;
            table.swap(i, j);
        }
        Perm::new(base, table).expect("shuffle preserves bijectivity")
    }

    /// Random strict upper-triangular matrix with entries in the first
    /// `rows` rows and band of `band` columns above the diagonal.
    pub fn strict_upper(&mut self, base: u32, rows: u32, band: u32) -> UpperMatrix {
        let mut entries = Vec::new();
        for r in 0..rows {
            for k in (r + 1)..=(r + band) {
                entries.push((r, k, self.below(base as u64) as u32));
            }
        }
        UpperMatrix::strict(base, entries).expect("entries respect strict shape")
    }

    /// Random NUT matrix: nonzero diagonal entries on the first `rows`
    /// rows (1 beyond), random band above.
    pub fn nut(&mut self, base: u32, rows: u32, band: u32) -> UpperMatrix {
        let mut entries = Vec::new();
        for r in 0..rows {
            entries.push((r, r, 1 + self.below(base as u64 - 1) as u32));
            for k in (r + 1)..=(r + band) {
                entries.push((r, k, self.below(base as u64) as u32));
            }
        }
        UpperMatrix::nut(base, entries).expect("entries respect NUT shape")
    }

    /// Random dense matrix over `Z_p`.
    pub fn square_matrix(&mut self, p: u32, m: usize) -> Vec<Vec<u32>> {
        (0..m)
            .map(|_| (0..m).map(|_| self.below(p as u64) as u32).collect())
            .collect()
    }

    /// Random nonsingular dense matrix over `Z_p` (rejection sampled).
    pub fn nonsingular_matrix(&mut self, p: u32, m: usize) -> Vec<Vec<u32>> {
        loop {
            let mat = self.square_matrix(p, m);
            if crate::modmat::is_nonsingular(&mat, p) {
                return mat;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic() {
        let mut a = Rng::new(42);
        let mut b = Rng::new(42);
        for _ in 0..100 {
            assert_eq!(a.next_u64(), b.next_u64());
        }
    }

    #[test]
    fn below_in_range() {
        let mut rng = Rng::new(1);
        for _ in 0..1000 {
            assert!(rng.below(7) < 7);
        }
    }

    #[test]
    fn perms_are_bijections() {
        let mut rng = Rng::new(3);
        for b in 2..12 {
            let p = rng.perm(b);
            let mut seen = alloc::vec![false; b as usize];
            for i in 0..b {
                seen[p.apply(i) as usize] = true;
            }
            assert!(seen.iter().all(|&s| s));
        }
    }

    #[test]
    fn nonsingular_matrices_have_full_rank() {
        let mut rng = Rng::new(9);
        for &p in &[2u32, 3, 5] {
            let m = rng.nonsingular_matrix(p, 4);
            assert!(crate::modmat::is_nonsingular(&m, p));
        }
    }
}
