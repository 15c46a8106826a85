//! KS triples, Cayley triples and the `ad h` grading.
//!
//! For a signed diagram the KS triple is built row by row in the canonical
//! basis: on a row of length `r` with boxes `v_1, ..., v_r` (left to right),
//!
//! ```text
//! x v_{j+1} = √(j(r−j)) v_j,   y = xᵀ,   h v_j = (r − 2j + 1) v_j.
//! ```
//!
//! Adjacent boxes carry opposite signs, so `σ(x) = −I_{p,q} x̄ᵀ I_{p,q} = xᵀ`
//! and the triple is normal (`x, y ∈ s`, `h ∈ k`) with `σ(x) = y`. The
//! coefficients are irrational for rows of length at least 3; `x` is then the
//! conjugate of the 0/1 canonical matrix by a positive diagonal element of
//! `K`, hence lies in the same orbit.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::ExactMatrix;
use crate::partitions::Composition;
use crate::scalar::Scalar;
use crate::signed::{diagram_for_profile, rank_profile_of_matrix, RankProfile, Signature, SignedDiagram};

/// Range of the integer coefficients used for generic elements.
pub const GENERIC_COEFF_BOUND: i64 = 10_000;

/// Number of independent generic samples in [`richardson_symmetric`].
pub const GENERIC_SAMPLES: u64 = 3;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KsTriple {
    pub diagram: SignedDiagram,
    pub x: ExactMatrix,
    pub h: ExactMatrix,
    pub y: ExactMatrix,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CayleyData {
    pub e: ExactMatrix,
    pub f: ExactMatrix,
    pub a: ExactMatrix,
}

/// `θ(X) = I_{p,q} X I_{p,q}`.
pub fn theta(m: &ExactMatrix, sig: Signature) -> ExactMatrix {
    m.map(|i, j, v| if sig.eps(i) == sig.eps(j) { v.clone() } else { -v })
}

/// `σ(X) = −I_{p,q} X̄ᵀ I_{p,q}`, the conjugation of the real form `U(p,q)`.
pub fn sigma(m: &ExactMatrix, sig: Signature) -> ExactMatrix {
    m.conj_transpose()
        .map(|i, j, v| if sig.eps(i) == sig.eps(j) { -v } else { v.clone() })
}

pub fn build_ks_triple(d: &SignedDiagram) -> KsTriple {
    let n = d.signature().n();
    let mut x = ExactMatrix::zeros(n, n);
    for (row, coords) in d.rows().iter().zip(d.box_coordinates()) {
        let r = row.len as u64;
        for j in 1..row.len {
            let jj = j as u64;
            x[(coords[j - 1], coords[j])] = Scalar::sqrt(jj * (r - jj));
        }
    }
    let weights: Vec<Scalar> = d.coordinate_weights().into_iter().map(Scalar::from_i64).collect();
    KsTriple {
        diagram: d.clone(),
        y: x.transpose(),
        h: ExactMatrix::diagonal(&weights),
        x,
    }
}

impl KsTriple {
    pub fn signature(&self) -> Signature {
        self.diagram.signature()
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero()
    }

    /// Diagonal of `h` as integers.
    pub fn h_weights(&self) -> Vec<i64> {
        (0..self.h.rows())
            .map(|i| self.h[(i, i)].as_i64().expect("h has integer diagonal"))
            .collect()
    }

    /// Multiplicities of the distinct eigenvalues of `h`, largest eigenvalue
    /// first: the Levi block sizes of `Z_G(h)`.
    pub fn levi_blocks(&self) -> Composition {
        let mut w = self.h_weights();
        w.sort_unstable_by(|a, b| b.cmp(a));
        let mut blocks: Vec<usize> = Vec::new();
        for (k, v) in w.iter().enumerate() {
            if k > 0 && w[k - 1] == *v {
                *blocks.last_mut().unwrap() += 1;
            } else {
                blocks.push(1);
            }
        }
        Composition::new(blocks).expect("n >= 1")
    }
}

pub fn cayley(t: &KsTriple) -> CayleyData {
    let half = Scalar::from_ratio(1, 2);
    let i = Scalar::i();
    let x_plus_y = t.x.add(&t.y);
    let ih = t.h.scale(&i);
    CayleyData {
        e: x_plus_y.add(&ih).scale(&half),
        f: x_plus_y.sub(&ih).scale(&half),
        a: t.x.sub(&t.y).scale(&i),
    }
}

/// One eigenspace `g_k` of `ad h`, spanned by matrix units `E_ij`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedPiece {
    pub degree: i64,
    pub basis: Vec<(usize, usize)>,
}

/// Eigenspace decomposition of `gl_n` under `ad h`. Because `h` is diagonal
/// the eigenvectors are matrix units, with eigenvalue `h_i − h_j` on `E_ij`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradingData {
    pub signature: Signature,
    /// Sorted by degree, increasing.
    pub pieces: Vec<GradedPiece>,
}

pub fn grading(t: &KsTriple) -> GradingData {
    let w = t.h_weights();
    let n = w.len();
    let mut pieces: Vec<GradedPiece> = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let degree = w[i] - w[j];
            match pieces.iter_mut().find(|p| p.degree == degree) {
                Some(p) => p.basis.push((i, j)),
                None => pieces.push(GradedPiece {
                    degree,
                    basis: vec![(i, j)],
                }),
            }
        }
    }
    pieces.sort_by_key(|p| p.degree);
    GradingData {
        signature: t.signature(),
        pieces,
    }
}

impl GradingData {
    pub fn dim(&self, degree: i64) -> usize {
        self.pieces
            .iter()
            .find(|p| p.degree == degree)
            .map_or(0, |p| p.basis.len())
    }

    pub fn has_odd_part(&self) -> bool {
        self.pieces.iter().any(|p| p.degree % 2 != 0)
    }

    /// `l = g_0`.
    pub fn levi(&self) -> Vec<(usize, usize)> {
        self.pieces
            .iter()
            .filter(|p| p.degree == 0)
            .flat_map(|p| p.basis.iter().copied())
            .collect()
    }

    /// `u = ⊕_{k>0} g_k`.
    pub fn nilradical(&self) -> Vec<(usize, usize)> {
        self.pieces
            .iter()
            .filter(|p| p.degree > 0)
            .flat_map(|p| p.basis.iter().copied())
            .collect()
    }

    /// `u ∩ s`.
    pub fn nilradical_s(&self) -> Vec<(usize, usize)> {
        let sig = self.signature;
        self.nilradical()
            .into_iter()
            .filter(|&(i, j)| sig.eps(i) != sig.eps(j))
            .collect()
    }

    /// `u ∩ k`.
    pub fn nilradical_k(&self) -> Vec<(usize, usize)> {
        let sig = self.signature;
        self.nilradical()
            .into_iter()
            .filter(|&(i, j)| sig.eps(i) == sig.eps(j))
            .collect()
    }
}

/// A random element `Σ c_ij E_ij` over the given matrix units with integer
/// coefficients in `[-GENERIC_COEFF_BOUND, GENERIC_COEFF_BOUND]`.
pub fn random_element<R: Rng>(n: usize, units: &[(usize, usize)], rng: &mut R) -> ExactMatrix {
    let mut m = ExactMatrix::zeros(n, n);
    for &(i, j) in units {
        m[(i, j)] = Scalar::from_i64(rng.random_range(-GENERIC_COEFF_BOUND..=GENERIC_COEFF_BOUND));
    }
    m
}

/// The dense `K`-orbit in `K·(u ∩ s)` for the parabolic defined by the KS
/// triple of `d`: the entrywise maximum rank profile over
/// [`GENERIC_SAMPLES`] random elements of `u ∩ s`, matched to its diagram.
pub fn richardson_symmetric(d: &SignedDiagram, seed: u64) -> Result<SignedDiagram> {
    if !d.is_even() {
        return Err(Error::OddPartition(d.partition().to_string()));
    }
    let sig = d.signature();
    let units = grading(&build_ks_triple(d)).nilradical_s();
    let mut best: Option<RankProfile> = None;
    for sample in 0..GENERIC_SAMPLES {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(sample);
        let z = random_element(sig.n(), &units, &mut rng);
        let profile = rank_profile_of_matrix(&z, sig)?;
        best = Some(match best {
            None => profile,
            Some(b) => b.join(&profile),
        });
    }
    diagram_for_profile(&best.expect("at least one sample"), sig)
}
