//! Signed Young diagrams for `(GL_{p+q}, GL_p × GL_q)`.
//!
//! A signed diagram labels a nilpotent `K`-orbit in `s`, the space of block
//! off-diagonal matrices `[[0, B], [C, 0]]` with `B: V₋ → V₊` (`p × q`) and
//! `C: V₊ → V₋` (`q × p`). Orbits are compared through their rank profiles:
//! the ranks of all alternating products `B`, `C`, `BC`, `CB`, `BCB`, ...

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::matrix::ExactMatrix;
use crate::partitions::Partition;
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "(usize, usize)", into = "(usize, usize)")]
pub struct Signature {
    p: usize,
    q: usize,
}

impl Signature {
    pub fn new(p: usize, q: usize) -> Result<Self> {
        if p + q == 0 {
            return Err(Error::InvalidSignature { p, q });
        }
        Ok(Signature { p, q })
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn n(&self) -> usize {
        self.p + self.q
    }

    /// `+1` on the first `p` coordinates, `-1` on the rest (the diagonal of
    /// `I_{p,q}`).
    pub fn eps(&self, i: usize) -> i64 {
        if i < self.p {
            1
        } else {
            -1
        }
    }

    pub(crate) fn check_same(&self, other: &Signature) -> Result<()> {
        if self != other {
            return Err(Error::SignatureMismatch {
                left: (self.p, self.q),
                right: (other.p, other.q),
            });
        }
        Ok(())
    }

    /// Whether `m` is block off-diagonal for this signature.
    pub fn contains_in_s(&self, m: &ExactMatrix) -> bool {
        m.rows() == self.n()
            && m.cols() == self.n()
            && m.entries()
                .all(|(i, j, v)| v.is_zero() || self.eps(i) != self.eps(j))
    }

    /// Whether `m` is block diagonal for this signature.
    pub fn contains_in_k(&self, m: &ExactMatrix) -> bool {
        m.rows() == self.n()
            && m.cols() == self.n()
            && m.entries()
                .all(|(i, j, v)| v.is_zero() || self.eps(i) == self.eps(j))
    }
}

impl TryFrom<(usize, usize)> for Signature {
    type Error = Error;
    fn try_from((p, q): (usize, usize)) -> Result<Self> {
        Signature::new(p, q)
    }
}

impl From<Signature> for (usize, usize) {
    fn from(s: Signature) -> (usize, usize) {
        (s.p, s.q)
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.p, self.q)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    fn from_char(c: char) -> Option<Sign> {
        match c {
            '+' => Some(Sign::Plus),
            '-' | '\u{2212}' => Some(Sign::Minus),
            _ => None,
        }
    }

    fn as_char(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

/// One row of a signed diagram: its length and the sign of its first box.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Row {
    pub len: usize,
    pub start: Sign,
}

impl Row {
    pub fn new(len: usize, start: Sign) -> Self {
        Row { len, start }
    }

    /// Sign of box `j` (0-based, left to right).
    pub fn sign_at(&self, j: usize) -> Sign {
        if j.is_multiple_of(2) {
            self.start
        } else {
            self.start.flip()
        }
    }

    pub fn plus_count(&self) -> usize {
        match self.start {
            Sign::Plus => self.len.div_ceil(2),
            Sign::Minus => self.len / 2,
        }
    }

    pub fn minus_count(&self) -> usize {
        self.len - self.plus_count()
    }

    /// sl(2) weight of box `j`: `len − 1 − 2j`.
    pub fn weight_at(&self, j: usize) -> i64 {
        self.len as i64 - 1 - 2 * j as i64
    }
}

// canonical row order: longer rows first, '+' before '-' among equal lengths
impl Ord for Row {
    fn cmp(&self, other: &Self) -> Ordering {
        other.len.cmp(&self.len).then(self.start.cmp(&other.start))
    }
}

impl PartialOrd for Row {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Row {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for j in 0..self.len {
            write!(f, "{}", self.sign_at(j).as_char())?;
        }
        write!(f, ")")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "DiagramJson", into = "DiagramJson")]
pub struct SignedDiagram {
    signature: Signature,
    rows: Vec<Row>,
}

#[derive(Serialize, Deserialize)]
struct DiagramJson {
    signature: Signature,
    rows: Vec<Row>,
}

impl TryFrom<DiagramJson> for SignedDiagram {
    type Error = Error;
    fn try_from(raw: DiagramJson) -> Result<Self> {
        SignedDiagram::new(raw.signature, raw.rows)
    }
}

impl From<SignedDiagram> for DiagramJson {
    fn from(d: SignedDiagram) -> Self {
        DiagramJson {
            signature: d.signature,
            rows: d.rows,
        }
    }
}

impl SignedDiagram {
    /// Validates row lengths and sign counts, and sorts rows canonically.
    pub fn new(signature: Signature, mut rows: Vec<Row>) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::InvalidArgument("a signed diagram needs at least one row".into()));
        }
        if rows.iter().any(|r| r.len == 0) {
            return Err(Error::InvalidArgument("rows must be nonempty".into()));
        }
        let plus: usize = rows.iter().map(Row::plus_count).sum();
        let minus: usize = rows.iter().map(Row::minus_count).sum();
        if plus != signature.p || minus != signature.q {
            return Err(Error::SignCount {
                plus,
                minus,
                p: signature.p,
                q: signature.q,
            });
        }
        rows.sort();
        Ok(SignedDiagram { signature, rows })
    }

    /// Parses the bracket grammar and infers the signature from the signs.
    pub fn parse_any(text: &str) -> Result<Self> {
        let rows = parse_rows(text)?;
        let plus = rows.iter().map(Row::plus_count).sum();
        let minus = rows.iter().map(Row::minus_count).sum();
        let signature = Signature::new(plus, minus).map_err(|_| Error::Parse {
            input: text.to_string(),
            reason: "empty diagram".into(),
        })?;
        SignedDiagram::new(signature, rows)
    }

    /// `[(+)^p (-)^q]`.
    pub fn zero(signature: Signature) -> Self {
        let mut rows = vec![Row::new(1, Sign::Plus); signature.p];
        rows.extend(vec![Row::new(1, Sign::Minus); signature.q]);
        SignedDiagram { signature, rows }
    }

    pub fn signature(&self) -> Signature {
        self.signature
    }

    pub fn rows(&self) -> &[Row] {
        &self.rows
    }

    pub fn partition(&self) -> Partition {
        Partition::new(self.rows.iter().map(|r| r.len).collect()).expect("rows are nonempty")
    }

    pub fn is_even(&self) -> bool {
        self.partition().is_even()
    }

    /// Coordinate index of every box, row by row in canonical order. `+`
    /// boxes take coordinates `0..p` and `-` boxes `p..p+q`, each in
    /// enumeration order.
    pub fn box_coordinates(&self) -> Vec<Vec<usize>> {
        let mut next_plus = 0;
        let mut next_minus = self.signature.p;
        self.rows
            .iter()
            .map(|row| {
                (0..row.len)
                    .map(|j| match row.sign_at(j) {
                        Sign::Plus => {
                            next_plus += 1;
                            next_plus - 1
                        }
                        Sign::Minus => {
                            next_minus += 1;
                            next_minus - 1
                        }
                    })
                    .collect()
            })
            .collect()
    }

    /// sl(2) weight of each coordinate in the canonical basis.
    pub fn coordinate_weights(&self) -> Vec<i64> {
        let mut weights = vec![0; self.signature.n()];
        for (row, coords) in self.rows.iter().zip(self.box_coordinates()) {
            for (j, c) in coords.into_iter().enumerate() {
                weights[c] = row.weight_at(j);
            }
        }
        weights
    }
}

/// Total order used for deterministic output: signature, then partition in
/// decreasing lexicographic order (a linear extension of dominance), then the
/// row start signs lexicographically with `+ < -`.
impl Ord for SignedDiagram {
    fn cmp(&self, other: &Self) -> Ordering {
        self.signature
            .cmp(&other.signature)
            .then_with(|| other.partition().parts().cmp(self.partition().parts()))
            .then_with(|| {
                self.rows
                    .iter()
                    .map(|r| r.start)
                    .cmp(other.rows.iter().map(|r| r.start))
            })
    }
}

impl PartialOrd for SignedDiagram {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// String form with `^k` for repeated rows, e.g. `[(+-+)(+)(-)^2]`.
impl fmt::Display for SignedDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        let mut k = 0;
        while k < self.rows.len() {
            let row = self.rows[k];
            let run = self.rows[k..].iter().take_while(|&&r| r == row).count();
            write!(f, "{row}")?;
            if run > 1 {
                write!(f, "^{run}")?;
            }
            k += run;
        }
        write!(f, "]")
    }
}

impl FromStr for SignedDiagram {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        SignedDiagram::parse_any(s)
    }
}

fn parse_rows(text: &str) -> Result<Vec<Row>> {
    let fail = |reason: &str| Error::Parse {
        input: text.to_string(),
        reason: reason.to_string(),
    };
    let mut chars = text.trim().chars().peekable();
    let skip_space = |it: &mut std::iter::Peekable<std::str::Chars<'_>>| {
        while it.peek().is_some_and(|c| c.is_whitespace() || *c == '\u{b7}') {
            it.next();
        }
    };
    if chars.next() != Some('[') {
        return Err(fail("expected '['"));
    }
    let mut rows = Vec::new();
    let mut groups = 0;
    loop {
        skip_space(&mut chars);
        match chars.next() {
            Some(']') => break,
            Some('(') => {}
            Some(c) => return Err(fail(&format!("unexpected character {c:?}"))),
            None => return Err(fail("missing ']'")),
        }
        let mut signs = Vec::new();
        loop {
            match chars.next() {
                Some(')') => break,
                Some(c) if c.is_whitespace() => {}
                Some(c) => match Sign::from_char(c) {
                    Some(s) => signs.push(s),
                    None => return Err(fail(&format!("unexpected character {c:?} in row"))),
                },
                None => return Err(fail("missing ')'")),
            }
        }
        if signs.is_empty() {
            return Err(fail("empty row"));
        }
        if signs.windows(2).any(|w| w[0] == w[1]) {
            return Err(fail("signs in a row must alternate"));
        }
        skip_space(&mut chars);
        let mut count = 1;
        if chars.peek() == Some(&'^') {
            chars.next();
            skip_space(&mut chars);
            let mut digits = String::new();
            while let Some(c) = chars.peek().copied().filter(char::is_ascii_digit) {
                digits.push(c);
                chars.next();
            }
            count = digits.parse().map_err(|_| fail("expected a multiplicity after '^'"))?;
        }
        groups += 1;
        rows.extend(std::iter::repeat_n(Row::new(signs.len(), signs[0]), count));
    }
    skip_space(&mut chars);
    if chars.next().is_some() {
        return Err(fail("trailing characters after ']'"));
    }
    if groups == 0 {
        return Err(fail("no rows"));
    }
    Ok(rows)
}

/// Parses `text` and checks it against the declared signature.
pub fn parse_diagram(text: &str, sig: Signature) -> Result<SignedDiagram> {
    let rows = parse_rows(text)?;
    SignedDiagram::new(sig, rows)
}

/// Every signed diagram with underlying partition `lambda` and signature
/// `sig`, sorted.
pub fn enumerate_orbits(lambda: &Partition, sig: Signature) -> Result<Vec<SignedDiagram>> {
    if lambda.size() != sig.n() {
        return Err(Error::SizeMismatch {
            left: lambda.size(),
            right: sig.n(),
        });
    }
    let groups = lambda.multiplicities();
    let mut out = Vec::new();
    let mut plus_starts = vec![0; groups.len()];

    fn rec(
        k: usize,
        plus_so_far: usize,
        groups: &[(usize, usize)],
        plus_starts: &mut Vec<usize>,
        sig: Signature,
        out: &mut Vec<SignedDiagram>,
    ) {
        if plus_so_far > sig.p {
            return;
        }
        if k == groups.len() {
            if plus_so_far == sig.p {
                let rows = groups
                    .iter()
                    .zip(plus_starts.iter())
                    .flat_map(|(&(len, mult), &np)| {
                        std::iter::repeat_n(Row::new(len, Sign::Plus), np)
                            .chain(std::iter::repeat_n(Row::new(len, Sign::Minus), mult - np))
                    })
                    .collect();
                out.push(SignedDiagram::new(sig, rows).expect("sign counts balance"));
            }
            return;
        }
        let (len, mult) = groups[k];
        for np in 0..=mult {
            plus_starts[k] = np;
            let plus = np * Row::new(len, Sign::Plus).plus_count()
                + (mult - np) * Row::new(len, Sign::Minus).plus_count();
            rec(k + 1, plus_so_far + plus, groups, plus_starts, sig, out);
        }
    }

    rec(0, 0, &groups, &mut plus_starts, sig, &mut out);
    out.sort();
    Ok(out)
}

/// All signed diagrams of a signature, sorted.
pub fn all_diagrams(sig: Signature) -> Vec<SignedDiagram> {
    let mut out: Vec<SignedDiagram> = Partition::all(sig.n())
        .iter()
        .flat_map(|lambda| enumerate_orbits(lambda, sig).expect("sizes agree"))
        .collect();
    out.sort();
    out
}

/// The nilpotent representative sending each box's basis vector to its left
/// neighbour (leftmost boxes to zero) in the canonical basis.
pub fn canonical_matrix(d: &SignedDiagram) -> ExactMatrix {
    let n = d.signature.n();
    let mut x = ExactMatrix::zeros(n, n);
    for coords in d.box_coordinates() {
        for w in coords.windows(2) {
            x[(w[0], w[1])] = Scalar::one();
        }
    }
    x
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    B,
    C,
}

/// An alternating word in `B` and `C`, read as a matrix product
/// left to right (`BC` means `B·C`, so `C` acts first).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    pub first: Letter,
    pub len: usize,
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for k in 0..self.len {
            let letter = match (self.first, k % 2) {
                (Letter::B, 0) | (Letter::C, 1) => 'B',
                _ => 'C',
            };
            write!(f, "{letter}")?;
        }
        Ok(())
    }
}

/// Ranks of all alternating words of length `1..=max_len`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RankProfile {
    starting_b: Vec<usize>,
    starting_c: Vec<usize>,
}

impl RankProfile {
    pub(crate) fn from_tables(starting_b: Vec<usize>, starting_c: Vec<usize>) -> Self {
        debug_assert_eq!(starting_b.len(), starting_c.len());
        RankProfile {
            starting_b,
            starting_c,
        }
    }

    pub fn max_len(&self) -> usize {
        self.starting_b.len()
    }

    pub fn get(&self, w: Word) -> usize {
        if w.len == 0 {
            return 0;
        }
        let table = match w.first {
            Letter::B => &self.starting_b,
            Letter::C => &self.starting_c,
        };
        table.get(w.len - 1).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (Word, usize)> + '_ {
        (1..=self.max_len()).flat_map(move |len| {
            [Letter::B, Letter::C].into_iter().map(move |first| {
                let w = Word { first, len };
                (w, self.get(w))
            })
        })
    }

    /// Entrywise comparison over all words.
    pub fn le(&self, other: &RankProfile) -> bool {
        let len = self.max_len().max(other.max_len());
        (1..=len).all(|l| {
            [Letter::B, Letter::C].into_iter().all(|first| {
                let w = Word { first, len: l };
                self.get(w) <= other.get(w)
            })
        })
    }

    /// Entrywise maximum.
    pub fn join(&self, other: &RankProfile) -> RankProfile {
        let len = self.max_len().max(other.max_len());
        let pick = |first| {
            (1..=len)
                .map(|l| self.get(Word { first, len: l }).max(other.get(Word { first, len: l })))
                .collect()
        };
        RankProfile {
            starting_b: pick(Letter::B),
            starting_c: pick(Letter::C),
        }
    }

    /// `rank(x^k)` for `k = 1..=max_len`.
    pub fn power_ranks(&self) -> Vec<usize> {
        self.starting_b
            .iter()
            .zip(&self.starting_c)
            .map(|(b, c)| b + c)
            .collect()
    }

    /// Jordan type read off from `rank(x^k)`, if the ranks are those of a
    /// nilpotent matrix of size `n`.
    pub fn jordan_type(&self, n: usize) -> Option<Partition> {
        let mut ranks = vec![n];
        ranks.extend(self.power_ranks());
        ranks.push(0);
        if ranks.windows(2).any(|w| w[1] > w[0]) {
            return None;
        }
        // number of parts >= k is rank(x^{k-1}) - rank(x^k)
        let at_least: Vec<usize> = ranks.windows(2).map(|w| w[0] - w[1]).collect();
        let mut parts = Vec::new();
        for k in 0..at_least.len() {
            let next = at_least.get(k + 1).copied().unwrap_or(0);
            let exactly = at_least[k].checked_sub(next)?;
            parts.extend(std::iter::repeat_n(k + 1, exactly));
        }
        if parts.iter().sum::<usize>() != n {
            return None;
        }
        Partition::new(parts).ok()
    }
}

impl Serialize for RankProfile {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let map: BTreeMap<String, usize> = self.iter().map(|(w, r)| (w.to_string(), r)).collect();
        map.serialize(serializer)
    }
}

/// Rank profile of any `x ∈ s`, words up to length `2n`.
pub fn rank_profile_of_matrix(x: &ExactMatrix, sig: Signature) -> Result<RankProfile> {
    if !sig.contains_in_s(x) {
        return Err(Error::NotInS { p: sig.p, q: sig.q });
    }
    let (p, n) = (sig.p, sig.n());
    let b = x.submatrix(0, p, p, n);
    let c = x.submatrix(p, n, 0, p);
    let max_len = 2 * n;
    let mut starting_b = Vec::with_capacity(max_len);
    let mut starting_c = Vec::with_capacity(max_len);
    let mut word_b = b.clone();
    let mut word_c = c.clone();
    for len in 1..=max_len {
        if len > 1 {
            let next_b = b.mul(&word_c);
            let next_c = c.mul(&word_b);
            word_b = next_b;
            word_c = next_c;
        }
        let rb = word_b.rank();
        let rc = word_c.rank();
        starting_b.push(rb);
        starting_c.push(rc);
        if rb == 0 && rc == 0 {
            starting_b.resize(max_len, 0);
            starting_c.resize(max_len, 0);
            break;
        }
    }
    Ok(RankProfile {
        starting_b,
        starting_c,
    })
}

/// Rank profile of the orbit, computed on its canonical matrix.
pub fn rank_profile(d: &SignedDiagram) -> RankProfile {
    rank_profile_of_matrix(&canonical_matrix(d), d.signature).expect("canonical matrix lies in s")
}

/// Closure order: `a ≤ b` iff every word rank of `a` is at most that of `b`.
pub fn closure_le(a: &SignedDiagram, b: &SignedDiagram) -> Result<bool> {
    a.signature.check_same(&b.signature)?;
    Ok(rank_profile(a).le(&rank_profile(b)))
}

/// `dim K·x = ½ dim G·x`.
pub fn dim_k_orbit(d: &SignedDiagram) -> usize {
    d.partition().dim_g_orbit() / 2
}

/// The diagram whose rank profile equals `profile`, if any.
pub fn diagram_for_profile(profile: &RankProfile, sig: Signature) -> Result<SignedDiagram> {
    let unmatched = Error::UnmatchedProfile { p: sig.p, q: sig.q };
    let lambda = profile.jordan_type(sig.n()).ok_or(unmatched.clone())?;
    enumerate_orbits(&lambda, sig)?
        .into_iter()
        .find(|d| rank_profile(d).le(profile) && profile.le(&rank_profile(d)))
        .ok_or(unmatched)
}
