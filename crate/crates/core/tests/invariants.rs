//! Cross-module property checks that do not fit any single unit-test
//! module: set-level identities between constructions and the extended
//! envelope identities.

use lowdisc_core::generators::{
    hammersley, identity_matrix, reversal_matrix, DigitalMatrices, Seq1D, UpperMatrix,
};
use lowdisc_core::modmat::mat_mul_mod;
use lowdisc_core::perm::{block_set_contains, Perm, PermSeq};
use lowdisc_core::psi::{psi_fns, translation_residue};
use lowdisc_core::rat::Rat;
use lowdisc_core::rng::Rng;

fn net_as_sorted_points(mats: &DigitalMatrices) -> Vec<(Rat, Rat)> {
    let mut pts: Vec<(Rat, Rat)> = mats
        .net()
        .unwrap()
        .iter()
        .map(|p| (p[0].value(), p[1].value()))
        .collect();
    pts.sort();
    pts
}

/// Multiplying every generating matrix by one nonsingular matrix from the
/// right only reorders the points.
#[test]
fn right_multiplication_reorders_points() {
    let mut rng = Rng::new(41);
    for &p in &[2u32, 3, 5] {
        for m in 2..=5usize {
            let c1 = rng.square_matrix(p, m);
            let c2 = rng.square_matrix(p, m);
            let d = rng.nonsingular_matrix(p, m);
            let original = DigitalMatrices::new(p, vec![c1.clone(), c2.clone()]).unwrap();
            let multiplied =
                DigitalMatrices::new(p, vec![mat_mul_mod(&c1, &d, p), mat_mul_mod(&c2, &d, p)])
                    .unwrap();
            assert_eq!(
                net_as_sorted_points(&original),
                net_as_sorted_points(&multiplied),
                "p={p} m={m}"
            );
        }
    }
}

/// The identity/reversal matrix pair generates the classical Hammersley
/// set, as sets, through resolution 6.
#[test]
fn reversal_pair_is_hammersley() {
    for &(b, m_hi) in &[(2u32, 6u32), (3, 5), (5, 4)] {
        for m in 1..=m_hi {
            let mats = DigitalMatrices::new(
                b,
                vec![identity_matrix(m as usize), reversal_matrix(m as usize)],
            )
            .unwrap();
            let mut ham = hammersley(b, m, &vec![Perm::identity(b); m as usize])
                .unwrap()
                .rat_points();
            ham.sort();
            assert_eq!(net_as_sorted_points(&mats), ham, "b={b} m={m}");
        }
    }
}

/// The two-sided envelope is the exact sum of the one-sided ones for
/// every base up to 10, on many random permutations.
#[test]
fn envelope_sum_identity_extended() {
    let mut rng = Rng::new(42);
    for b in 2..=10u32 {
        for _ in 0..100 {
            let sigma = rng.perm(b);
            let fns = psi_fns(b, &sigma).unwrap();
            assert_eq!(fns.plus.add(&fns.minus), fns.total, "b={b}");
            assert!(fns.total.is_continuous());
        }
    }
}

/// Translation residues vanish once the row index passes the digit count
/// of N - 1.
#[test]
fn translation_residues_vanish_beyond_digits() {
    let mut rng = Rng::new(43);
    for &b in &[2u32, 3, 5] {
        let c = rng.strict_upper(b, 12, 5);
        for n in 1..=(b as u64).pow(4) {
            let digits = lowdisc_core::base::digit_len(n - 1, b) as u32;
            for r in digits.saturating_sub(1).max(1)..14 {
                if r >= digits.max(1) {
                    assert_eq!(translation_residue(&c, n, r), 0, "b={b} n={n} r={r}");
                }
            }
        }
    }
}

/// Every generated coordinate lies in the half-open unit interval after
/// truncation, including streams that end in the top digit.
#[test]
fn truncated_coordinates_stay_in_unit_interval() {
    let mut rng = Rng::new(44);
    for &b in &[2u32, 3, 10] {
        let tau = Seq1D::gvdc(PermSeq::constant(Perm::swap(b)));
        for _ in 0..200 {
            let n = rng.below(1 << 16);
            let x = tau.truncated(n, 12).value();
            assert!(x >= Rat::ZERO && x < Rat::ONE);
        }
    }
}

/// Exact untruncated values may reach 1 but never exceed it, and agree
/// with high-precision truncations in the limit digit by digit.
#[test]
fn exact_values_bounded_and_consistent_with_truncation() {
    let mut rng = Rng::new(45);
    for &b in &[2u32, 3, 5] {
        let seq = Seq1D::nut(PermSeq::constant(rng.perm(b)), rng.strict_upper(b, 6, 3)).unwrap();
        for n in 0..200u64 {
            let exact = seq.value(n).unwrap();
            assert!(exact >= Rat::ZERO && exact <= Rat::ONE);
            // truncations approach the value from below within b^-p
            let p = 20;
            let truncated = seq.truncated(n, p).value();
            let gap = exact - truncated;
            assert!(gap >= Rat::ZERO);
            assert!(gap <= Rat::ONE / Rat::pow_int(b, p as u32 - 1).unwrap());
        }
    }
}

/// Block membership matches direct enumeration far past the tested range
/// of the unit tests.
#[test]
fn block_membership_wide_enumeration() {
    let mut member = vec![false; 5000];
    let mut h = 1u64;
    while h * (h - 1) < member.len() as u64 {
        for r in h * (h - 1)..=(h * h - 1).min(member.len() as u64 - 1) {
            member[r as usize] = true;
        }
        h += 1;
    }
    for r in 0..member.len() as u64 {
        assert_eq!(block_set_contains(r), member[r as usize], "r={r}");
    }
}

/// The permuted-diagonal construction with a zero matrix reduces to the
/// plain digit-permuted sequence in every sampled base.
#[test]
fn zero_matrix_reduction_large_sample() {
    let mut rng = Rng::new(46);
    for &b in &[2u32, 3, 5, 10] {
        for _ in 0..250 {
            let seq = PermSeq::constant(rng.perm(b));
            let nut = Seq1D::nut(seq.clone(), UpperMatrix::zero(b)).unwrap();
            let gvdc = Seq1D::gvdc(seq);
            let n = rng.below(1 << 20);
            assert_eq!(nut.value(n).unwrap(), gvdc.value(n).unwrap(), "b={b} n={n}");
        }
    }
}

/// Perturbing points within their resolution cells never changes the
/// measured quality parameter.
#[test]
fn minimal_t_stable_under_in_cell_perturbation() {
    let mut rng = Rng::new(47);
    for &p in &[2u32, 3] {
        for m in 2..=4u32 {
            let mats = DigitalMatrices::new(
                p,
                vec![
                    rng.square_matrix(p, m as usize),
                    rng.square_matrix(p, m as usize),
                ],
            )
            .unwrap();
            let pts: Vec<Vec<Rat>> = mats
                .net()
                .unwrap()
                .iter()
                .map(|pt| pt.iter().map(|c| c.value()).collect())
                .collect();
            let t = lowdisc_core::netverify::minimal_t(&pts, p, m).unwrap();
            // shift every coordinate by a fraction of the finest cell width
            let cell = Rat::ONE / Rat::pow_int(p, m).unwrap();
            let moved: Vec<Vec<Rat>> = pts
                .iter()
                .map(|pt| {
                    pt.iter()
                        .map(|x| {
                            let jitter = cell * Rat::new(1 + rng.below(7) as i128, 8);
                            *x + jitter
                        })
                        .collect()
                })
                .collect();
            assert_eq!(
                lowdisc_core::netverify::minimal_t(&moved, p, m).unwrap(),
                t,
                "p={p} m={m}"
            );
        }
    }
}

/// Nonempty one-dimensional multisets never fall below the universal
/// floor of one half.
#[test]
fn one_dimensional_star_disc_floor() {
    let mut rng = Rng::new(48);
    for n in 1..=32u64 {
        for _ in 0..50 {
            let pts: Vec<Rat> = (0..n)
                .map(|_| Rat::new(rng.below(257) as i128, 256))
                .collect();
            let rep = lowdisc_core::discrepancy::disc_1d(&pts).unwrap();
            assert!(rep.dstar >= Rat::new(1, 2));
        }
    }
}
