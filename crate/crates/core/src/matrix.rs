//! Dense matrices over [`Scalar`] with exact rank and characteristic
//! polynomial.

use std::fmt;
use std::ops::{Index, IndexMut};

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::{json, Value};

use crate::scalar::{Gaussian, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { Scalar::one() } else { Scalar::zero() })
    }

    pub fn diagonal(entries: &[Scalar]) -> Self {
        let n = entries.len();
        Self::from_fn(n, n, |i, j| if i == j { entries[i].clone() } else { Scalar::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        ExactMatrix { rows, cols, data }
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self::from_fn(r, c, |i, j| Scalar::from_i64(rows[i][j]))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Scalar)> {
        let cols = self.cols;
        self.data
            .iter()
            .enumerate()
            .map(move |(k, v)| (k / cols.max(1), k % cols.max(1), v))
    }

    pub fn map(&self, f: impl Fn(usize, usize, &Scalar) -> Scalar) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| f(i, j, &self[(i, j)]))
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn conj(&self) -> Self {
        self.map(|_, _, v| v.conj())
    }

    pub fn conj_transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn scale(&self, factor: &Scalar) -> Self {
        self.map(|_, _, v| v * factor)
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch in add");
        self.map(|i, j, v| v + &other[(i, j)])
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch in sub");
        self.map(|i, j, v| v - &other[(i, j)])
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "shape mismatch in mul");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if b.is_zero() {
                        continue;
                    }
                    let prod = a * b;
                    out[(i, j)] += &prod;
                }
            }
        }
        out
    }

    /// `[self, other] = self·other − other·self`.
    pub fn bracket(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn trace(&self) -> Scalar {
        (0..self.rows.min(self.cols)).fold(Scalar::zero(), |acc, i| &acc + &self[(i, i)])
    }

    /// Rows `r0..r1`, columns `c0..c1`.
    pub fn submatrix(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Self {
        Self::from_fn(r1 - r0, c1 - c0, |i, j| self[(r0 + i, c0 + j)].clone())
    }

    /// Whether every entry lies in `Q(i)`.
    pub fn is_gaussian(&self) -> bool {
        self.data.iter().all(|v| v.as_gaussian().is_some())
    }

    /// Rank by Gaussian elimination over the exact field; no pivot
    /// tolerance.
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let mut rank = 0;
        for col in 0..m.cols {
            if rank == m.rows {
                break;
            }
            let Some(pivot) = (rank..m.rows).find(|&r| !m[(r, col)].is_zero()) else {
                continue;
            };
            m.swap_rows(rank, pivot);
            let inv = m[(rank, col)].inv().expect("nonzero pivot");
            for r in rank + 1..m.rows {
                if m[(r, col)].is_zero() {
                    continue;
                }
                let factor = &m[(r, col)] * &inv;
                for c in col..m.cols {
                    if m[(rank, c)].is_zero() {
                        continue;
                    }
                    let delta = &factor * &m[(rank, c)];
                    m[(r, c)] -= &delta;
                }
            }
            rank += 1;
        }
        rank
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Coefficients `[c_0, c_1, ..., c_n]` of `det(λI − A) = Σ c_k λ^k`
    /// (Faddeev–LeVerrier; divides only by integers).
    pub fn char_poly(&self) -> Vec<Scalar> {
        assert!(self.is_square(), "characteristic polynomial of a non-square matrix");
        let n = self.rows;
        let mut coeffs = vec![Scalar::zero(); n + 1];
        coeffs[n] = Scalar::one();
        let mut m = Self::zeros(n, n);
        let id = Self::identity(n);
        for k in 1..=n {
            m = self.mul(&m).add(&id.scale(&coeffs[n - k + 1]));
            let t = self.mul(&m).trace();
            coeffs[n - k] = -(&t * &Scalar::from_ratio(1, k as i64));
        }
        coeffs
    }

    pub fn to_float(&self) -> DMatrix<Complex64> {
        DMatrix::from_fn(self.rows, self.cols, |i, j| self[(i, j)].to_complex64())
    }
}

impl Index<(usize, usize)> for ExactMatrix {
    type Output = Scalar;
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ExactMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.data.iter().map(ToString::to_string).collect();
        let width = cells.iter().map(|c| c.chars().count()).max().unwrap_or(1);
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                let cell = &cells[i * self.cols + j];
                let pad = width - cell.chars().count();
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}{}", " ".repeat(pad), cell)?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

// JSON: a matrix is an array of rows. A Gaussian-rational entry is
// [re_num, re_den, im_num, im_den]; an entry with surd terms is an array of
// [re_num, re_den, im_num, im_den, radicand] terms. Integers that do not fit
// in i64 are written as decimal strings.

fn int_to_json(v: &BigInt) -> Value {
    match v.to_i64() {
        Some(small) => json!(small),
        None => Value::String(v.to_string()),
    }
}

fn int_from_json(v: &Value) -> Option<BigInt> {
    match v {
        Value::Number(n) => n.as_i64().map(BigInt::from),
        Value::String(s) => s.parse().ok(),
        _ => None,
    }
}

fn gaussian_fields(g: &Gaussian) -> Vec<Value> {
    vec![
        int_to_json(g.re.numer()),
        int_to_json(g.re.denom()),
        int_to_json(g.im.numer()),
        int_to_json(g.im.denom()),
    ]
}

pub(crate) fn scalar_to_json(s: &Scalar) -> Value {
    match s.as_gaussian() {
        Some(g) => Value::Array(gaussian_fields(&g)),
        None => Value::Array(
            s.terms()
                .iter()
                .map(|(m, c)| {
                    let mut fields = gaussian_fields(c);
                    fields.push(json!(m));
                    Value::Array(fields)
                })
                .collect(),
        ),
    }
}

fn gaussian_from_fields(fields: &[Value]) -> Option<Gaussian> {
    let ints: Option<Vec<BigInt>> = fields.iter().map(int_from_json).collect();
    let ints = ints?;
    if ints[1].is_zero() || ints[3].is_zero() {
        return None;
    }
    Some(Gaussian::new(
        BigRational::new(ints[0].clone(), ints[1].clone()),
        BigRational::new(ints[2].clone(), ints[3].clone()),
    ))
}

pub(crate) fn scalar_from_json(v: &Value) -> Option<Scalar> {
    let items = v.as_array()?;
    if items.len() == 4 && items.iter().all(|x| !x.is_array()) {
        return Some(Scalar::from_gaussian(gaussian_from_fields(items)?));
    }
    let mut acc = Scalar::zero();
    for term in items {
        let fields = term.as_array()?;
        if fields.len() != 5 {
            return None;
        }
        let coeff = gaussian_from_fields(&fields[..4])?;
        let radicand = fields[4].as_u64().filter(|&m| m > 0)?;
        acc += &(&Scalar::sqrt(radicand) * &Scalar::from_gaussian(coeff));
    }
    Some(acc)
}

impl Serialize for ExactMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<Value> = (0..self.rows)
            .map(|i| Value::Array((0..self.cols).map(|j| scalar_to_json(&self[(i, j)])).collect()))
            .collect();
        Value::Array(rows).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ExactMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let value = Value::deserialize(deserializer)?;
        let rows = value
            .as_array()
            .ok_or_else(|| D::Error::custom("matrix must be an array of rows"))?;
        let mut parsed = Vec::with_capacity(rows.len());
        for row in rows {
            let row = row
                .as_array()
                .ok_or_else(|| D::Error::custom("matrix row must be an array"))?;
            let entries: Option<Vec<Scalar>> = row.iter().map(scalar_from_json).collect();
            parsed.push(entries.ok_or_else(|| D::Error::custom("malformed matrix entry"))?);
        }
        let r = parsed.len();
        let c = parsed.first().map_or(0, Vec::len);
        if parsed.iter().any(|row| row.len() != c) {
            return Err(D::Error::custom("ragged matrix rows"));
        }
        Ok(ExactMatrix {
            rows: r,
            cols: c,
            data: parsed.into_iter().flatten().collect(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_of_small_matrices() {
        let m = ExactMatrix::from_i64_rows(&[vec![1, 2, 3], vec![2, 4, 6], vec![1, 0, 1]]);
        assert_eq!(m.rank(), 2);
        assert_eq!(ExactMatrix::zeros(3, 4).rank(), 0);
        assert_eq!(ExactMatrix::identity(5).rank(), 5);
        assert_eq!(ExactMatrix::zeros(0, 3).rank(), 0);
    }

    #[test]
    fn rank_over_surds() {
        // [[√2, 1], [2, √2]] is singular; [[√2, 1], [1, √2]] is not
        let s = Scalar::sqrt(2);
        let singular = ExactMatrix::from_fn(2, 2, |i, j| match (i, j) {
            (0, 0) | (1, 1) => s.clone(),
            (0, 1) => Scalar::one(),
            _ => Scalar::from_i64(2),
        });
        assert_eq!(singular.rank(), 1);
        let regular = ExactMatrix::from_fn(2, 2, |i, j| if i == j { s.clone() } else { Scalar::one() });
        assert_eq!(regular.rank(), 2);
    }

    #[test]
    fn char_poly_of_diagonal() {
        let d = ExactMatrix::diagonal(&[Scalar::from_i64(1), Scalar::from_i64(-1)]);
        // λ² − 1
        let p = d.char_poly();
        assert_eq!(p, vec![Scalar::from_i64(-1), Scalar::zero(), Scalar::one()]);
    }

    #[test]
    fn bracket_of_sl2() {
        let x = ExactMatrix::from_i64_rows(&[vec![0, 1], vec![0, 0]]);
        let y = x.transpose();
        let h = ExactMatrix::from_i64_rows(&[vec![1, 0], vec![0, -1]]);
        assert_eq!(x.bracket(&y), h);
        assert_eq!(h.bracket(&x), x.scale(&Scalar::from_i64(2)));
    }

    #[test]
    fn json_round_trip_with_surds() {
        let m = ExactMatrix::from_fn(2, 2, |i, j| match (i, j) {
            (0, 1) => Scalar::sqrt(6),
            (1, 0) => &Scalar::from_ratio(1, 2) + &Scalar::i(),
            _ => Scalar::zero(),
        });
        let text = serde_json::to_string(&m).unwrap();
        assert!(text.contains("[1,2,1,1]"));
        let back: ExactMatrix = serde_json::from_str(&text).unwrap();
        assert_eq!(back, m);
    }
}
