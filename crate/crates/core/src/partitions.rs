//! Partitions of `n`: Jordan types of nilpotent `GL_n`-orbits.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A weakly decreasing sequence of positive integers, stored sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    /// Sorts `parts` into weakly decreasing order. Zero parts and the empty
    /// sequence are rejected.
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidPartition("no parts".into()));
        }
        if parts.contains(&0) {
            return Err(Error::InvalidPartition(format!("zero part in {parts:?}")));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition { parts })
    }

    /// `[1, 1, ..., 1]`, the type of the zero orbit.
    pub fn ones(n: usize) -> Result<Self> {
        Self::new(vec![1; n])
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn largest(&self) -> usize {
        self.parts[0]
    }

    /// Column lengths of the Young diagram.
    pub fn transpose(&self) -> Partition {
        let cols = (0..self.largest())
            .map(|j| self.parts.iter().filter(|&&r| r > j).count())
            .collect();
        Partition { parts: cols }
    }

    /// Dominance order: every partial sum of `self` is at most the
    /// corresponding partial sum of `other`.
    pub fn dominance_le(&self, other: &Partition) -> Result<bool> {
        if self.size() != other.size() {
            return Err(Error::SizeMismatch {
                left: self.size(),
                right: other.size(),
            });
        }
        let len = self.len().max(other.len());
        let mut a = 0;
        let mut b = 0;
        for k in 0..len {
            a += self.parts.get(k).copied().unwrap_or(0);
            b += other.parts.get(k).copied().unwrap_or(0);
            if a > b {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// All parts share one parity, i.e. the sl(2) grading has no odd pieces.
    pub fn is_even(&self) -> bool {
        let parity = self.parts[0] % 2;
        self.parts.iter().all(|r| r % 2 == parity)
    }

    /// `dim G·x = n² − Σ (transpose_i)²` for `x` of this Jordan type.
    pub fn dim_g_orbit(&self) -> usize {
        let n = self.size();
        n * n - self.transpose().parts.iter().map(|c| c * c).sum::<usize>()
    }

    /// All partitions of `n`, in decreasing lexicographic order.
    pub fn all(n: usize) -> Vec<Partition> {
        fn rec(remaining: usize, max: usize, current: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if remaining == 0 {
                out.push(Partition {
                    parts: current.clone(),
                });
                return;
            }
            for part in (1..=max.min(remaining)).rev() {
                current.push(part);
                rec(remaining - part, part, current, out);
                current.pop();
            }
        }
        let mut out = Vec::new();
        if n > 0 {
            rec(n, n, &mut Vec::new(), &mut out);
        }
        out
    }

    /// `(part, multiplicity)` pairs, largest part first.
    pub fn multiplicities(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = Vec::new();
        for &r in &self.parts {
            match out.last_mut() {
                Some((len, count)) if *len == r => *count += 1,
                _ => out.push((r, 1)),
            }
        }
        out
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;
    fn try_from(parts: Vec<usize>) -> Result<Self> {
        Partition::new(parts)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Vec<usize> {
        p.parts
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(ToString::to_string).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// Accepts `"[3,1,1,1]"`, `"3,1,1,1"`, `"3 1 1 1"` and exponent shorthand
/// such as `"[3,1^3]"` or `"[2^4]"`.
impl FromStr for Partition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = |why: &str| Error::InvalidPartition(format!("{s:?}: {why}"));
        let inner = s.trim();
        let inner = inner.strip_prefix('[').unwrap_or(inner);
        let inner = inner.strip_suffix(']').unwrap_or(inner);
        let mut parts = Vec::new();
        for token in inner.split(|c: char| c == ',' || c.is_whitespace()) {
            if token.is_empty() {
                continue;
            }
            let (base, exp) = match token.split_once('^') {
                Some((b, e)) => (b, e.parse::<usize>().map_err(|_| bad("bad exponent"))?),
                None => (token, 1),
            };
            let base = base.parse::<usize>().map_err(|_| bad("bad part"))?;
            parts.extend(std::iter::repeat_n(base, exp));
        }
        Partition::new(parts)
    }
}

/// Levi block sizes: an ordered sequence of positive integers.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Composition {
    blocks: Vec<usize>,
}

impl Composition {
    pub fn new(blocks: Vec<usize>) -> Result<Self> {
        if blocks.is_empty() || blocks.contains(&0) {
            return Err(Error::InvalidComposition(format!("{blocks:?}")));
        }
        Ok(Composition { blocks })
    }

    pub fn blocks(&self) -> &[usize] {
        &self.blocks
    }

    pub fn size(&self) -> usize {
        self.blocks.iter().sum()
    }
}

impl TryFrom<Vec<usize>> for Composition {
    type Error = Error;
    fn try_from(blocks: Vec<usize>) -> Result<Self> {
        Composition::new(blocks)
    }
}

impl From<Composition> for Vec<usize> {
    fn from(c: Composition) -> Vec<usize> {
        c.blocks
    }
}

/// Jordan type of the Richardson orbit of a parabolic with Levi block sizes
/// `c`: the transpose of the sorted block sizes.
pub fn richardson_of_levi(c: &Composition) -> Partition {
    Partition::new(c.blocks.clone())
        .expect("composition blocks are positive")
        .transpose()
}
