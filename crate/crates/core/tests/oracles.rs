//! Cross-checks of closed formulas against brute-force linear algebra.

mod common;

use common::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use symcone::partitions::{richardson_of_levi, Composition, Partition};
use symcone::signed::{canonical_matrix, dim_k_orbit, rank_profile, rank_profile_of_matrix};
use symcone::triples::build_ks_triple;

#[test]
fn dim_g_orbit_matches_ad_rank() {
    for n in 1..=6 {
        for lambda in Partition::all(n) {
            let x = jordan_matrix(&lambda);
            assert_eq!(ad_rank(&x, &all_units(n)), lambda.dim_g_orbit(), "{lambda}");
        }
    }
}

#[test]
fn evenness_matches_odd_grading() {
    // even iff ad h has no eigenvalue 1, with h built from the row lengths
    for n in 1..=8 {
        for lambda in Partition::all(n) {
            let mut h = Vec::new();
            for &r in lambda.parts() {
                h.extend((0..r).map(|j| r as i64 - 1 - 2 * j as i64));
            }
            let odd = h.iter().any(|a| h.iter().any(|b| a - b == 1));
            assert_eq!(lambda.is_even(), !odd, "{lambda}");
        }
    }
}

#[test]
fn richardson_of_levi_matches_generic_nilradical() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for n in 1..=6 {
        for blocks in compositions(n) {
            let z = generic_nilradical(&blocks, &mut rng);
            let expected = richardson_of_levi(&Composition::new(blocks.clone()).unwrap());
            assert_eq!(jordan_type_of(&z), Some(expected), "{blocks:?}");
        }
    }
}

#[test]
fn canonical_matrix_has_the_right_jordan_type() {
    for d in diagrams(6) {
        let x = canonical_matrix(&d);
        assert!(d.signature().contains_in_s(&x));
        assert_eq!(jordan_type_of(&x), Some(d.partition()), "{d}");
        let t = build_ks_triple(&d);
        assert_eq!(jordan_type_of(&t.x), Some(d.partition()), "{d}");
    }
}

#[test]
fn dim_k_orbit_matches_ad_rank_on_k() {
    for d in diagrams(6) {
        let x = canonical_matrix(&d);
        assert_eq!(ad_rank(&x, &k_units(d.signature())), dim_k_orbit(&d), "{d}");
    }
}

#[test]
fn ks_representative_lies_in_the_orbit() {
    for d in diagrams(6) {
        let t = build_ks_triple(&d);
        assert_eq!(rank_profile_of_matrix(&t.x, d.signature()).unwrap(), rank_profile(&d), "{d}");
    }
}

#[test]
fn profile_is_invariant_under_k() {
    for (idx, d) in diagrams(5).into_iter().enumerate() {
        let (k, k_inv) = random_k_exact(d.signature(), idx as u64);
        assert!(k.mul(&k_inv) == symcone::ExactMatrix::identity(d.signature().n()));
        let conj = k.mul(&canonical_matrix(&d)).mul(&k_inv);
        assert_eq!(rank_profile_of_matrix(&conj, d.signature()).unwrap(), rank_profile(&d), "{d}");
    }
}

#[test]
fn orbit_counts_match_brute_force_sign_fillings() {
    // count sign assignments per row directly: each row picks a starting
    // sign, rows of equal length are unordered
    use std::collections::BTreeSet;
    for sig in signatures(6) {
        for lambda in Partition::all(sig.n()) {
            let mut seen = BTreeSet::new();
            let rows = lambda.parts();
            for mask in 0u32..(1 << rows.len()) {
                let mut plus = 0;
                let mut key = Vec::new();
                for (k, &r) in rows.iter().enumerate() {
                    let starts_plus = mask & (1 << k) == 0;
                    plus += if starts_plus { r.div_ceil(2) } else { r / 2 };
                    key.push((r, starts_plus));
                }
                if plus == sig.p() {
                    key.sort();
                    seen.insert(key);
                }
            }
            let got = symcone::enumerate_orbits(&lambda, sig).unwrap().len();
            assert_eq!(got, seen.len(), "{lambda} in {sig}");
        }
    }
}
