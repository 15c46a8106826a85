//! Floating-point checks of the analytic side: the limit curve
//! `exp(t ad h)·a`, the dimension of `K·a`, and Monte Carlo sampling of
//! conjugates of the cone components.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cone::{asymptotic_cone, component_triples};
use crate::error::{Error, Result};
use crate::matrix::ExactMatrix;
use crate::scalar::Scalar;
use crate::signed::{rank_profile, RankProfile, Signature, SignedDiagram};
use crate::triples::{CayleyData, KsTriple};

pub type FloatMatrix = DMatrix<Complex64>;

/// Curve parameters probed by [`sample_orbit_limits`].
pub const CURVE_TIMES: [f64; 3] = [2.0, 4.0, 8.0];

/// Default relative singular-value threshold.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Sampled `k ∈ K` are redrawn above this condition number.
pub const MAX_CONDITION: f64 = 1e6;

const MAX_REDRAWS: usize = 64;

/// Frobenius-normalized direction of `exp(t ad h)·a = i(e^{2t}x − e^{−2t}y)`
/// after dividing out `i·e^{2t}`, i.e. of `x − e^{−4t}y`.
pub fn limit_direction(t: f64, triple: &KsTriple, cayley: &CayleyData) -> Result<FloatMatrix> {
    if triple.is_zero() {
        return Err(Error::ZeroTriple);
    }
    if !(t.is_finite() && t >= 0.0) {
        return Err(Error::InvalidArgument(format!("curve parameter must be finite and >= 0, got {t}")));
    }
    let w = triple.h_weights();
    let a = cayley.a.to_float();
    let minus_i = Complex64::new(0.0, -1.0);
    // entry (i,j) of a has ad h degree w_i − w_j; fold e^{−2t} into the
    // exponent so nothing overflows for large t
    let m = FloatMatrix::from_fn(a.nrows(), a.ncols(), |i, j| {
        if a[(i, j)] == Complex64::new(0.0, 0.0) {
            return a[(i, j)];
        }
        let degree = (w[i] - w[j]) as f64;
        a[(i, j)] * minus_i * ((degree - 2.0) * t).exp()
    });
    Ok(normalized(m))
}

fn normalized(m: FloatMatrix) -> FloatMatrix {
    let norm = m.norm();
    m.unscale(norm)
}

/// `‖limit_direction(t) − x/‖x‖‖_F`.
pub fn curve_residual(t: f64, triple: &KsTriple, cayley: &CayleyData) -> Result<f64> {
    let dir = limit_direction(t, triple, cayley)?;
    let limit = normalized(triple.x.to_float());
    Ok((dir - limit).norm())
}

/// `dim K·a`: exact rank of `k → s`, `u ↦ [u, a]`. The matrix is first
/// multiplied by `−i`, which keeps Cayley `a` real.
pub fn tangent_dimension(a: &ExactMatrix, sig: Signature) -> Result<usize> {
    let n = sig.n();
    if a.rows() != n || !sig.contains_in_s(a) {
        return Err(Error::NotInS { p: sig.p(), q: sig.q() });
    }
    let b = a.scale(&-Scalar::i());
    let k_basis: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter(|&(i, j)| sig.eps(i) == sig.eps(j))
        .collect();
    let s_basis: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter(|&(i, j)| sig.eps(i) != sig.eps(j))
        .collect();
    // [E_ij, b] = E_ij b − b E_ij: row i gets row j of b, column j loses
    // column i of b
    let map = ExactMatrix::from_fn(s_basis.len(), k_basis.len(), |row, col| {
        let (r, c) = s_basis[row];
        let (i, j) = k_basis[col];
        let mut v = Scalar::zero();
        if r == i {
            v += &b[(j, c)];
        }
        if c == j {
            v -= &b[(r, i)];
        }
        v
    });
    Ok(map.rank())
}

/// Numerical rank: singular values above `tol·σ_max` count. A word whose
/// `σ_max` is below `tol·scale` is treated as zero, `scale` being the
/// largest it could be given its factors.
fn numerical_rank(m: &FloatMatrix, tol: f64, scale: f64) -> usize {
    if m.is_empty() {
        return 0;
    }
    let sv = m.clone().singular_values();
    let top = sv.max();
    if top <= tol * scale {
        return 0;
    }
    sv.iter().filter(|&&s| s > tol * top).count()
}

/// Rank profile of a float matrix in `s` (off-diagonal blocks are taken
/// as-is; the diagonal blocks are ignored).
pub fn numerical_rank_profile(x: &FloatMatrix, sig: Signature, tol: f64) -> RankProfile {
    let (p, n) = (sig.p(), sig.n());
    let b = x.view((0, p), (p, n - p)).into_owned();
    let c = x.view((p, 0), (n - p, p)).into_owned();
    let nb = b.norm().max(f64::MIN_POSITIVE);
    let nc = c.norm().max(f64::MIN_POSITIVE);
    let max_len = 2 * n;
    let mut starting_b = Vec::with_capacity(max_len);
    let mut starting_c = Vec::with_capacity(max_len);
    let (mut word_b, mut word_c) = (b.clone(), c.clone());
    // bound on ‖word‖ by submultiplicativity
    let (mut scale_b, mut scale_c) = (nb, nc);
    for len in 1..=max_len {
        if len > 1 {
            let next_b = &b * &word_c;
            let next_c = &c * &word_b;
            let (sb, sc) = (nb * scale_c, nc * scale_b);
            word_b = next_b;
            word_c = next_c;
            scale_b = sb;
            scale_c = sc;
        }
        starting_b.push(numerical_rank(&word_b, tol, scale_b));
        starting_c.push(numerical_rank(&word_c, tol, scale_c));
    }
    RankProfile::from_tables(starting_b, starting_c)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub diagram: SignedDiagram,
    /// `(t, largest residual over the component triples)`.
    pub curve_residuals: Vec<(f64, f64)>,
    pub tangent_dim: usize,
    /// `dim K·x_i` of the components.
    pub component_dim: usize,
    pub membership_failures: usize,
    pub samples: usize,
    pub components: usize,
    pub tolerance: f64,
}

impl VerificationReport {
    /// No membership failures, matching dimensions, and the residual at the
    /// largest probed `t` within `residual_bound`.
    pub fn passed(&self, residual_bound: f64) -> bool {
        self.membership_failures == 0
            && self.tangent_dim == self.component_dim
            && self.curve_residuals.last().is_none_or(|&(_, r)| r <= residual_bound)
    }
}

fn complex_gaussian<R: Rng>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

fn condition(m: &FloatMatrix) -> f64 {
    let sv = m.clone().singular_values();
    let min = sv.min();
    if min == 0.0 {
        f64::INFINITY
    } else {
        sv.max() / min
    }
}

fn random_block<R: Rng>(size: usize, rng: &mut R) -> FloatMatrix {
    if size == 0 {
        return FloatMatrix::zeros(0, 0);
    }
    for _ in 0..MAX_REDRAWS {
        let m = FloatMatrix::from_fn(size, size, |_, _| complex_gaussian(rng));
        if condition(&m) <= MAX_CONDITION {
            return m;
        }
    }
    FloatMatrix::identity(size, size)
}

/// A random `k = diag(k_1, k_2) ∈ GL_p × GL_q` and its inverse.
pub fn random_k<R: Rng>(sig: Signature, rng: &mut R) -> (FloatMatrix, FloatMatrix) {
    let (p, q) = (sig.p(), sig.q());
    let k1 = random_block(p, rng);
    let k2 = random_block(q, rng);
    let inv = |m: &FloatMatrix| m.clone().try_inverse().expect("well-conditioned block");
    let (i1, i2) = (inv(&k1), inv(&k2));
    let n = p + q;
    let mut k = FloatMatrix::zeros(n, n);
    let mut k_inv = FloatMatrix::zeros(n, n);
    k.view_mut((0, 0), (p, p)).copy_from(&k1);
    k.view_mut((p, p), (q, q)).copy_from(&k2);
    k_inv.view_mut((0, 0), (p, p)).copy_from(&i1);
    k_inv.view_mut((p, p), (q, q)).copy_from(&i2);
    (k, k_inv)
}

/// Conjugates every component representative by random elements of `K`
/// and checks that the normalized result still has the rank profile of a
/// cone orbit; also evaluates the limit curves and `dim K·a`.
pub fn sample_orbit_limits(d: &SignedDiagram, samples: usize, tol: f64, seed: u64) -> Result<VerificationReport> {
    if samples == 0 {
        return Err(Error::InvalidArgument("at least one sample is required".into()));
    }
    if !(tol.is_finite() && tol > 0.0) {
        return Err(Error::InvalidArgument(format!("tolerance must be positive, got {tol}")));
    }
    let cone = asymptotic_cone(d)?;
    let sig = d.signature();
    let triples = component_triples(&cone);

    let mut curve_residuals = Vec::new();
    for &t in &CURVE_TIMES {
        let mut worst: f64 = 0.0;
        for (_, triple, cay) in &triples {
            if !triple.is_zero() {
                worst = worst.max(curve_residual(t, triple, cay)?);
            }
        }
        curve_residuals.push((t, worst));
    }

    let input = triples
        .iter()
        .find(|(c, _, _)| c == d)
        .map(|(_, _, cay)| cay.a.clone())
        .unwrap_or_else(|| triples[0].2.a.clone());
    let tangent_dim = tangent_dimension(&input, sig)?;
    let component_dim = crate::signed::dim_k_orbit(d);

    let cone_profiles: Vec<RankProfile> = cone.cone_poset.nodes().iter().map(rank_profile).collect();
    let reps: Vec<FloatMatrix> = triples.iter().map(|(_, t, _)| t.x.to_float()).collect();
    let membership_failures = (0..samples)
        .into_par_iter()
        .map(|sample| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(sample as u64);
            let (k, k_inv) = random_k(sig, &mut rng);
            reps.iter()
                .filter(|x| {
                    let conj = &k * *x * &k_inv;
                    let norm = conj.norm();
                    let dir = if norm > 0.0 { conj.unscale(norm) } else { conj };
                    let profile = numerical_rank_profile(&dir, sig, tol);
                    !cone_profiles.contains(&profile)
                })
                .count()
        })
        .sum();

    Ok(VerificationReport {
        diagram: d.clone(),
        curve_residuals,
        tangent_dim,
        component_dim,
        membership_failures,
        samples,
        components: triples.len(),
        tolerance: tol,
    })
}
