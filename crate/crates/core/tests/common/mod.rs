//! Brute-force oracles shared by the integration tests.

#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use symcone::matrix::ExactMatrix;
use symcone::partitions::Partition;
use symcone::scalar::Scalar;
use symcone::signed::{all_diagrams, Signature, SignedDiagram};

pub fn signatures(max_n: usize) -> Vec<Signature> {
    (1..=max_n)
        .flat_map(|n| (0..=n).map(move |p| Signature::new(p, n - p).unwrap()))
        .collect()
}

pub fn diagrams(max_n: usize) -> Vec<SignedDiagram> {
    signatures(max_n).into_iter().flat_map(all_diagrams).collect()
}

pub fn even_diagrams(max_n: usize) -> Vec<SignedDiagram> {
    diagrams(max_n).into_iter().filter(SignedDiagram::is_even).collect()
}

fn unit(n: usize, i: usize, j: usize) -> ExactMatrix {
    let mut m = ExactMatrix::zeros(n, n);
    m[(i, j)] = Scalar::one();
    m
}

/// Rank of `u ↦ [u, x]` on the span of the given matrix units, with the
/// image read off on all of `gl_n`.
pub fn ad_rank(x: &ExactMatrix, domain: &[(usize, usize)]) -> usize {
    let n = x.rows();
    let columns: Vec<ExactMatrix> = domain.iter().map(|&(i, j)| unit(n, i, j).bracket(x)).collect();
    let m = ExactMatrix::from_fn(n * n, columns.len(), |r, c| columns[c][(r / n, r % n)].clone());
    m.rank()
}

pub fn all_units(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect()
}

pub fn k_units(sig: Signature) -> Vec<(usize, usize)> {
    all_units(sig.n())
        .into_iter()
        .filter(|&(i, j)| sig.eps(i) == sig.eps(j))
        .collect()
}

/// Jordan block matrix of type `lambda`, built directly (superdiagonal ones
/// inside each block).
pub fn jordan_matrix(lambda: &Partition) -> ExactMatrix {
    let n = lambda.size();
    let mut m = ExactMatrix::zeros(n, n);
    let mut start = 0;
    for &r in lambda.parts() {
        for k in 1..r {
            m[(start + k - 1, start + k)] = Scalar::one();
        }
        start += r;
    }
    m
}

/// Jordan type of a nilpotent matrix from exact ranks of its powers.
pub fn jordan_type_of(x: &ExactMatrix) -> Option<Partition> {
    let n = x.rows();
    let mut ranks = vec![n];
    let mut power = x.clone();
    for _ in 0..n {
        ranks.push(power.rank());
        power = power.mul(x);
    }
    if *ranks.last().unwrap() != 0 {
        return None;
    }
    let mut parts = Vec::new();
    for k in 1..=n {
        let at_least_k = ranks[k - 1] - ranks[k];
        let at_least_next = if k < n { ranks[k] - ranks[k + 1] } else { 0 };
        parts.extend(std::iter::repeat_n(k, at_least_k - at_least_next));
    }
    Partition::new(parts).ok()
}

/// All compositions of `n`.
pub fn compositions(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in 1..=n {
        for mut rest in compositions(n - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Random element of the nilradical of the block upper triangular
/// parabolic with the given block sizes.
pub fn generic_nilradical(blocks: &[usize], rng: &mut impl Rng) -> ExactMatrix {
    let n: usize = blocks.iter().sum();
    let mut owner = Vec::with_capacity(n);
    for (b, &size) in blocks.iter().enumerate() {
        owner.extend(std::iter::repeat_n(b, size));
    }
    ExactMatrix::from_fn(n, n, |i, j| {
        if owner[i] < owner[j] {
            Scalar::from_i64(rng.random_range(-1000..=1000))
        } else {
            Scalar::zero()
        }
    })
}

/// A random element of `K` with integer entries and its exact inverse, as
/// a product of elementary block-diagonal matrices.
pub fn random_k_exact(sig: Signature, seed: u64) -> (ExactMatrix, ExactMatrix) {
    let n = sig.n();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let units: Vec<_> = k_units(sig).into_iter().filter(|&(i, j)| i != j).collect();
    let mut k = ExactMatrix::identity(n);
    let mut k_inv = ExactMatrix::identity(n);
    if units.is_empty() {
        return (k, k_inv);
    }
    for _ in 0..3 * n {
        let (i, j) = units[rng.random_range(0..units.len())];
        let c = rng.random_range(-5i64..=5);
        let e = ExactMatrix::identity(n).add(&unit(n, i, j).scale(&Scalar::from_i64(c)));
        let e_inv = ExactMatrix::identity(n).add(&unit(n, i, j).scale(&Scalar::from_i64(-c)));
        k = k.mul(&e);
        k_inv = e_inv.mul(&k_inv);
    }
    (k, k_inv)
}
