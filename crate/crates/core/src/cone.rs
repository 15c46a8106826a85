//! Asymptotic cone of the semisimple orbit `K·a`, `a = i(x − y)`, for an
//! even nilpotent `x ∈ s`.
//!
//! The cone is the closure of `G·x ∩ s`, i.e. the union of the closures of
//! the `K`-orbits sharing the Jordan type of `x`. Alongside it we build the
//! (possibly larger) set of orbits in `closure(G·x) ∩ s` so the two can be
//! compared.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::hasse::{hasse, HasseDiagram};
use crate::partitions::Partition;
use crate::signed::{enumerate_orbits, rank_profile, Row, Sign, Signature, SignedDiagram};
use crate::triples::{build_ks_triple, cayley, CayleyData, KsTriple};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeResult {
    pub input: SignedDiagram,
    /// Irreducible components: the `K`-orbits in `G·x ∩ s`.
    pub components: Vec<SignedDiagram>,
    /// All orbits in `closure(G·x ∩ s)`.
    pub cone_poset: HasseDiagram,
    /// All orbits in `closure(G·x) ∩ s`.
    pub ambient_poset: HasseDiagram,
    /// Orbits of the ambient poset outside the cone.
    pub strict_gap: Vec<SignedDiagram>,
}

/// Orbits below some orbit of Jordan type `lambda`, and all orbits whose
/// Jordan type is dominated by `lambda`.
pub(crate) fn closure_sets(
    lambda: &Partition,
    sig: Signature,
) -> Result<(Vec<SignedDiagram>, Vec<SignedDiagram>, Vec<SignedDiagram>)> {
    let components = enumerate_orbits(lambda, sig)?;
    let mut ambient = Vec::new();
    for mu in Partition::all(sig.n()) {
        if mu.dominance_le(lambda)? {
            ambient.extend(enumerate_orbits(&mu, sig)?);
        }
    }
    ambient.sort();
    let tops: Vec<_> = components.iter().map(rank_profile).collect();
    let cone = ambient
        .iter()
        .filter(|d| {
            let profile = rank_profile(d);
            tops.iter().any(|t| profile.le(t))
        })
        .cloned()
        .collect();
    Ok((components, cone, ambient))
}

pub fn asymptotic_cone(d: &SignedDiagram) -> Result<ConeResult> {
    let lambda = d.partition();
    if !lambda.is_even() {
        return Err(Error::OddPartition(lambda.to_string()));
    }
    let (components, cone, ambient) = closure_sets(&lambda, d.signature())?;
    let strict_gap = ambient
        .iter()
        .filter(|a| cone.binary_search(a).is_err())
        .cloned()
        .collect();
    Ok(ConeResult {
        input: d.clone(),
        components,
        cone_poset: hasse(cone)?,
        ambient_poset: hasse(ambient)?,
        strict_gap,
    })
}

impl ConeResult {
    pub fn signature(&self) -> Signature {
        self.input.signature()
    }

    pub fn is_strict(&self) -> bool {
        !self.strict_gap.is_empty()
    }
}

/// KS triple and Cayley data for every component.
pub fn component_triples(r: &ConeResult) -> Vec<(SignedDiagram, KsTriple, CayleyData)> {
    r.components
        .iter()
        .map(|d| {
            let t = build_ks_triple(d);
            let c = cayley(&t);
            (d.clone(), t, c)
        })
        .collect()
}

pub fn emit_dot(h: &HasseDiagram) -> String {
    h.to_dot("closure_order")
}

/// `K_{p,q} = [(+-)^p (-+)^q (+)^{n-p-q} (-)^{n-p-q}]` in signature `(n,n)`.
pub fn siegel_orbit(n: usize, p: usize, q: usize) -> Result<SignedDiagram> {
    if p + q > n {
        return Err(Error::InvalidArgument(format!("K_{{{p},{q}}} needs p+q <= n = {n}")));
    }
    let ones = n - p - q;
    let mut rows = vec![Row::new(2, Sign::Plus); p];
    rows.extend(vec![Row::new(2, Sign::Minus); q]);
    rows.extend(vec![Row::new(1, Sign::Plus); ones]);
    rows.extend(vec![Row::new(1, Sign::Minus); ones]);
    SignedDiagram::new(Signature::new(n, n)?, rows)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SiegelFamily {
    pub n: usize,
    pub cone: ConeResult,
    /// Closure order on all `K_{p,q}` with `p + q <= n`.
    pub extended: HasseDiagram,
}

/// The cone of `[(+-)^n]` in signature `(n,n)` together with the poset of
/// all `K_{p,q}`.
pub fn siegel_family(n: usize) -> Result<SiegelFamily> {
    if n < 1 {
        return Err(Error::InvalidArgument("siegel family needs n >= 1".into()));
    }
    let cone = asymptotic_cone(&siegel_orbit(n, n, 0)?)?;
    let mut nodes = Vec::new();
    for p in 0..=n {
        for q in 0..=n - p {
            nodes.push(siegel_orbit(n, p, q)?);
        }
    }
    Ok(SiegelFamily {
        n,
        cone,
        extended: hasse(nodes)?,
    })
}

#[derive(Serialize, Deserialize)]
struct ConeJson {
    input: SignedDiagram,
    components: Vec<SignedDiagram>,
    cone_nodes: Vec<SignedDiagram>,
    ambient_nodes: Vec<SignedDiagram>,
    strict_gap: Vec<SignedDiagram>,
    cone_covers: Vec<(usize, usize)>,
    ambient_covers: Vec<(usize, usize)>,
}

impl Serialize for ConeResult {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        ConeJson {
            input: self.input.clone(),
            components: self.components.clone(),
            cone_nodes: self.cone_poset.nodes().to_vec(),
            ambient_nodes: self.ambient_poset.nodes().to_vec(),
            strict_gap: self.strict_gap.clone(),
            cone_covers: self.cone_poset.covers().to_vec(),
            ambient_covers: self.ambient_poset.covers().to_vec(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ConeResult {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = ConeJson::deserialize(deserializer)?;
        let cone_poset = hasse(raw.cone_nodes).map_err(D::Error::custom)?;
        let ambient_poset = hasse(raw.ambient_nodes).map_err(D::Error::custom)?;
        if cone_poset.covers() != raw.cone_covers || ambient_poset.covers() != raw.ambient_covers {
            return Err(D::Error::custom("cover relations disagree with the closure order"));
        }
        Ok(ConeResult {
            input: raw.input,
            components: raw.components,
            cone_poset,
            ambient_poset,
            strict_gap: raw.strict_gap,
        })
    }
}
