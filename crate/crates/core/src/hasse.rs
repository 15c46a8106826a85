//! Hasse diagrams of the closure order on a set of signed diagrams.

use std::fmt::Write as _;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::signed::{parse_diagram, rank_profile, Signature, SignedDiagram};

/// Nodes in deterministic order and cover pairs `(larger, smaller)` as node
/// indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HasseDiagram {
    signature: Signature,
    nodes: Vec<SignedDiagram>,
    covers: Vec<(usize, usize)>,
}

impl HasseDiagram {
    pub fn signature(&self) -> Signature {
        self.signature
    }

    pub fn nodes(&self) -> &[SignedDiagram] {
        &self.nodes
    }

    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    /// Cover relations as `(larger, smaller)` diagram pairs.
    pub fn cover_pairs(&self) -> Vec<(&SignedDiagram, &SignedDiagram)> {
        self.covers
            .iter()
            .map(|&(a, b)| (&self.nodes[a], &self.nodes[b]))
            .collect()
    }

    pub fn index_of(&self, d: &SignedDiagram) -> Option<usize> {
        self.nodes.binary_search(d).ok()
    }

    pub fn contains(&self, d: &SignedDiagram) -> bool {
        self.index_of(d).is_some()
    }

    /// Maximal elements.
    pub fn tops(&self) -> Vec<&SignedDiagram> {
        (0..self.nodes.len())
            .filter(|&i| self.covers.iter().all(|&(_, below)| below != i))
            .map(|i| &self.nodes[i])
            .collect()
    }

    /// Graphviz digraph with edges from the larger orbit to the smaller one.
    pub fn to_dot(&self, name: &str) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "digraph {name} {{");
        let _ = writeln!(out, "  rankdir=TB;");
        let _ = writeln!(out, "  node [shape=box, fontname=\"monospace\"];");
        for (i, d) in self.nodes.iter().enumerate() {
            let _ = writeln!(out, "  n{i} [label=\"{}\"];", escape(&d.to_string()));
        }
        for (a, b) in &self.covers {
            let _ = writeln!(out, "  n{a} -> n{b};");
        }
        out.push_str("}\n");
        out
    }
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Cover relations of the closure order restricted to `nodes`. Duplicates are
/// merged; all nodes must share one signature.
pub fn hasse<I>(nodes: I) -> Result<HasseDiagram>
where
    I: IntoIterator<Item = SignedDiagram>,
{
    let mut nodes: Vec<SignedDiagram> = nodes.into_iter().collect();
    let Some(first) = nodes.first() else {
        return Err(Error::InvalidArgument("Hasse diagram of an empty node set".into()));
    };
    let signature = first.signature();
    for d in &nodes {
        signature.check_same(&d.signature())?;
    }
    nodes.sort();
    nodes.dedup();

    let profiles: Vec<_> = nodes.iter().map(rank_profile).collect();
    let n = nodes.len();
    // le[i][j]: nodes[i] ≤ nodes[j]
    let le: Vec<Vec<bool>> = (0..n)
        .map(|i| (0..n).map(|j| profiles[i].le(&profiles[j])).collect())
        .collect();
    let lt = |i: usize, j: usize| i != j && le[i][j];

    let mut covers = Vec::new();
    for big in 0..n {
        for small in 0..n {
            if lt(small, big) && !(0..n).any(|mid| lt(small, mid) && lt(mid, big)) {
                covers.push((big, small));
            }
        }
    }
    Ok(HasseDiagram {
        signature,
        nodes,
        covers,
    })
}

#[derive(Serialize, Deserialize)]
struct HasseJson {
    signature: Signature,
    nodes: Vec<String>,
    covers: Vec<(usize, usize)>,
}

impl Serialize for HasseDiagram {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        HasseJson {
            signature: self.signature,
            nodes: self.nodes.iter().map(ToString::to_string).collect(),
            covers: self.covers.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for HasseDiagram {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = HasseJson::deserialize(deserializer)?;
        let nodes = raw
            .nodes
            .iter()
            .map(|s| parse_diagram(s, raw.signature))
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        if raw.covers.iter().any(|&(a, b)| a >= nodes.len() || b >= nodes.len()) {
            return Err(D::Error::custom("cover index out of range"));
        }
        Ok(HasseDiagram {
            signature: raw.signature,
            nodes,
            covers: raw.covers,
        })
    }
}
