//! Dense linear algebra over `Z_p` (p prime) used by the net verifier and
//! the digital constructions.

use alloc::vec::Vec;

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn inv_mod(a: u32, p: u32) -> u32 {
    // p is prime and a != 0 mod p
    let mut result = 1u64;
    let mut base = a as u64 % p as u64;
    let mut e = p as u64 - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    result as u32
}

/// Rank of a row list over `Z_p` by Gaussian elimination.
pub fn rank_mod_p(rows: &[Vec<u32>], p: u32) -> usize {
    let mut m: Vec<Vec<u32>> = rows.to_vec();
    let height = m.len();
    let width = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    let mut row = 0;
    for col in 0..width {
        if row == height {
            break;
        }
        let pivot = (row..height).find(|&r| !m[r][col].is_multiple_of(p));
        let Some(pivot) = pivot else { continue };
        m.swap(row, pivot);
        let inv = inv_mod(m[row][col] % p, p);
        for c in col..width {
            m[row][c] = (m[row][c] as u64 * inv as u64 % p as u64) as u32;
        }
        for r in 0..height {
            if r != row && !m[r][col].is_multiple_of(p) {
                let f = m[r][col] % p;
                for c in col..width {
                    let sub = f as u64 * m[row][c] as u64 % p as u64;
                    m[r][c] = ((m[r][c] as u64 + p as u64 - sub) % p as u64) as u32;
                }
            }
        }
        row += 1;
        rank += 1;
    }
    rank
}

pub fn is_nonsingular(mat: &[Vec<u32>], p: u32) -> bool {
    !mat.is_empty() && rank_mod_p(mat, p) == mat.len()
}

/// Matrix-vector product over `Z_p`.
pub fn mat_vec_mod(mat: &[Vec<u32>], vec: &[u32], p: u32) -> Vec<u32> {
    mat.iter()
        .map(|row| {
            row.iter()
                .zip(vec)
                .fold(0u64, |acc, (&a, &x)| (acc + a as u64 * x as u64) % p as u64)
                as u32
        })
        .collect()
}

/// Matrix product over `Z_p`.
pub fn mat_mul_mod(a: &[Vec<u32>], b: &[Vec<u32>], p: u32) -> Vec<Vec<u32>> {
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|c| {
                    row.iter().enumerate().fold(0u64, |acc, (k, &v)| {
                        (acc + v as u64 * b[k][c] as u64) % p as u64
                    }) as u32
                })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn primality() {
        let primes: Vec<u32> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
    }

    #[test]
    fn ranks() {
        let id3 = vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]];
        assert_eq!(rank_mod_p(&id3, 2), 3);
        assert!(is_nonsingular(&id3, 2));
        let dup = vec![vec![1, 0], vec![1, 0]];
        assert_eq!(rank_mod_p(&dup, 3), 1);
        // rows dependent only mod p: det = -5
        let m = vec![vec![1, 2], vec![3, 1]];
        assert_eq!(rank_mod_p(&m, 5), 1);
        assert_eq!(rank_mod_p(&m, 3), 2);
    }

    #[test]
    fn products() {
        let rev = vec![vec![0, 1], vec![1, 0]];
        assert_eq!(mat_vec_mod(&rev, &[0, 1], 2), vec![1, 0]);
        let sq = mat_mul_mod(&rev, &rev, 2);
        assert_eq!(sq, vec![vec![1, 0], vec![0, 1]]);
    }
}
