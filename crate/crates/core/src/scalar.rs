//! Exact scalars.
//!
//! A [`Scalar`] is a finite sum `Σ c_m √m` where every `m` is a positive
//! squarefree integer and every `c_m` is a Gaussian rational `a + b i`.
//! Square roots of distinct squarefree integers are linearly independent over
//! `Q(i)`, so keeping the terms sorted by radicand with nonzero coefficients
//! gives a canonical form, and structural equality is field equality.
//!
//! The set is closed under `+ - * /`: inversion clears one prime at a time by
//! multiplying with the Galois conjugate that flips the sign of `√p`.
//! Most values in this crate are plain Gaussian rationals (radicand 1); the
//! surds only appear in KS triples, whose entries are `√(j(r-j))`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_complex::{Complex, Complex64};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Gaussian = Complex<BigRational>;

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Scalar {
    // sorted by radicand, coefficients never zero
    terms: Vec<(u64, Gaussian)>,
}

/// Writes `n = s² m` with `m` squarefree and returns `(s, m)`.
pub fn squarefree_split(mut n: u64) -> (u64, u64) {
    assert!(n > 0, "squarefree_split of zero");
    let mut outside = 1u64;
    let mut inside = 1u64;
    let mut d = 2u64;
    while d * d <= n {
        let mut count = 0;
        while n.is_multiple_of(d) {
            n /= d;
            count += 1;
        }
        for _ in 0..count / 2 {
            outside *= d;
        }
        if count % 2 == 1 {
            inside *= d;
        }
        d += 1;
    }
    (outside, inside * n)
}

fn largest_prime_factor(mut n: u64) -> Option<u64> {
    if n < 2 {
        return None;
    }
    let mut largest = 1;
    let mut d = 2;
    while d * d <= n {
        while n.is_multiple_of(d) {
            largest = d;
            n /= d;
        }
        d += 1;
    }
    Some(largest.max(n))
}

fn gaussian_is_zero(g: &Gaussian) -> bool {
    g.re.is_zero() && g.im.is_zero()
}

fn rational(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_i64(1)
    }

    pub fn from_i64(v: i64) -> Self {
        Self::gaussian(rational(v, 1), BigRational::zero())
    }

    /// The rational `num / den`. Panics when `den == 0`.
    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::gaussian(rational(num, den), BigRational::zero())
    }

    pub fn gaussian(re: BigRational, im: BigRational) -> Self {
        Self::from_gaussian(Complex::new(re, im))
    }

    pub fn from_gaussian(g: Gaussian) -> Self {
        if gaussian_is_zero(&g) {
            Self::zero()
        } else {
            Scalar { terms: vec![(1, g)] }
        }
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Self::gaussian(BigRational::zero(), BigRational::one())
    }

    /// The positive square root of `n`.
    pub fn sqrt(n: u64) -> Self {
        if n == 0 {
            return Self::zero();
        }
        let (outside, radicand) = squarefree_split(n);
        let coeff = Complex::new(BigRational::from_integer(BigInt::from(outside)), BigRational::zero());
        Scalar {
            terms: vec![(radicand, coeff)],
        }
    }

    fn from_map(map: BTreeMap<u64, Gaussian>) -> Self {
        Scalar {
            terms: map.into_iter().filter(|(_, c)| !gaussian_is_zero(c)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self.terms[0].0 == 1
            && self.terms[0].1.re.is_one()
            && self.terms[0].1.im.is_zero()
    }

    /// Terms `(radicand, coefficient)` in increasing radicand order.
    pub fn terms(&self) -> &[(u64, Gaussian)] {
        &self.terms
    }

    /// The value as a Gaussian rational, if it has no surd part.
    pub fn as_gaussian(&self) -> Option<Gaussian> {
        match self.terms.as_slice() {
            [] => Some(Complex::new(BigRational::zero(), BigRational::zero())),
            [(1, c)] => Some(c.clone()),
            _ => None,
        }
    }

    /// The value as an integer, if it is one.
    pub fn as_integer(&self) -> Option<BigInt> {
        let g = self.as_gaussian()?;
        if g.im.is_zero() && g.re.is_integer() {
            Some(g.re.to_integer())
        } else {
            None
        }
    }

    pub fn as_i64(&self) -> Option<i64> {
        self.as_integer()?.to_i64()
    }

    pub fn conj(&self) -> Self {
        Scalar {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (*m, c.conj()))
                .collect(),
        }
    }

    pub fn scale(&self, factor: &Gaussian) -> Self {
        if gaussian_is_zero(factor) {
            return Self::zero();
        }
        Scalar {
            terms: self.terms.iter().map(|(m, c)| (*m, c * factor)).collect(),
        }
    }

    fn largest_prime(&self) -> Option<u64> {
        self.terms
            .iter()
            .filter_map(|(m, _)| largest_prime_factor(*m))
            .max()
    }

    // Galois conjugate sending √p to -√p.
    fn flip_prime(&self, p: u64) -> Self {
        Scalar {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| if m % p == 0 { (*m, -c.clone()) } else { (*m, c.clone()) })
                .collect(),
        }
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let mut numerator = Scalar::one();
        let mut denominator = self.clone();
        while let Some(p) = denominator.largest_prime() {
            let conjugate = denominator.flip_prime(p);
            numerator = &numerator * &conjugate;
            denominator = &denominator * &conjugate;
        }
        let g = denominator
            .as_gaussian()
            .expect("prime elimination leaves a Gaussian rational");
        let one = Complex::new(BigRational::one(), BigRational::zero());
        Some(numerator.scale(&(one / g)))
    }

    pub fn to_complex64(&self) -> Complex64 {
        self.terms.iter().fold(Complex64::new(0.0, 0.0), |acc, (m, c)| {
            let root = (*m as f64).sqrt();
            let re = c.re.to_f64().unwrap_or(f64::NAN);
            let im = c.im.to_f64().unwrap_or(f64::NAN);
            acc + Complex64::new(re * root, im * root)
        })
    }
}

impl From<i64> for Scalar {
    fn from(v: i64) -> Self {
        Scalar::from_i64(v)
    }
}

impl From<Gaussian> for Scalar {
    fn from(g: Gaussian) -> Self {
        Scalar::from_gaussian(g)
    }
}

fn merge(a: &Scalar, b: &Scalar, negate_b: bool) -> Scalar {
    let mut out = Vec::with_capacity(a.terms.len() + b.terms.len());
    let (mut i, mut j) = (0, 0);
    while i < a.terms.len() || j < b.terms.len() {
        let order = match (a.terms.get(i), b.terms.get(j)) {
            (Some(x), Some(y)) => x.0.cmp(&y.0),
            (Some(_), None) => Ordering::Less,
            (None, Some(_)) => Ordering::Greater,
            (None, None) => unreachable!(),
        };
        match order {
            Ordering::Less => {
                out.push(a.terms[i].clone());
                i += 1;
            }
            Ordering::Greater => {
                let (m, c) = &b.terms[j];
                out.push((*m, if negate_b { -c.clone() } else { c.clone() }));
                j += 1;
            }
            Ordering::Equal => {
                let (m, x) = &a.terms[i];
                let y = &b.terms[j].1;
                let sum = if negate_b { x - y } else { x + y };
                if !gaussian_is_zero(&sum) {
                    out.push((*m, sum));
                }
                i += 1;
                j += 1;
            }
        }
    }
    Scalar { terms: out }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &'a Scalar) -> Scalar {
        merge(self, rhs, false)
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &'a Scalar) -> Scalar {
        merge(self, rhs, true)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &'a Scalar) -> Scalar {
        if self.is_zero() || rhs.is_zero() {
            return Scalar::zero();
        }
        if let ([(1, x)], [(1, y)]) = (self.terms.as_slice(), rhs.terms.as_slice()) {
            return Scalar::from_gaussian(x * y);
        }
        let mut acc: BTreeMap<u64, Gaussian> = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                let g = m1.gcd(m2);
                let radicand = (m1 / g) * (m2 / g);
                let factor = BigRational::from_integer(BigInt::from(g));
                let coeff = (c1 * c2) * Complex::new(factor, BigRational::zero());
                let entry = acc
                    .entry(radicand)
                    .or_insert_with(|| Complex::new(BigRational::zero(), BigRational::zero()));
                *entry = &*entry + coeff;
            }
        }
        Scalar::from_map(acc)
    }
}

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &'a Scalar) -> Scalar {
        let inverse = rhs.inv().expect("division by zero scalar");
        self * &inverse
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect(),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! owned_binop {
    ($tr:ident, $method:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'a Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
        impl<'a> $tr<Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                self.$method(&rhs)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);
owned_binop!(Div, div);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = &*self - rhs;
    }
}

fn fmt_gaussian(g: &Gaussian) -> String {
    let re = &g.re;
    let im = &g.im;
    let im_part = |leading: bool| -> String {
        let sign = if im.is_negative() { "-" } else if leading { "" } else { "+" };
        let magnitude = im.abs();
        if magnitude.is_one() {
            format!("{sign}i")
        } else {
            format!("{sign}{magnitude}i")
        }
    };
    match (re.is_zero(), im.is_zero()) {
        (true, true) => "0".to_string(),
        (false, true) => re.to_string(),
        (true, false) => im_part(true),
        (false, false) => format!("{re}{}", im_part(false)),
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            if *m == 1 {
                write!(f, "{}", fmt_gaussian(c))?;
                continue;
            }
            let plain_real = c.im.is_zero();
            let coeff = fmt_gaussian(c);
            match coeff.as_str() {
                "1" => write!(f, "√{m}")?,
                "-1" => write!(f, "-√{m}")?,
                _ if plain_real => write!(f, "{coeff}√{m}")?,
                _ if c.re.is_zero() => write!(f, "{coeff}√{m}")?,
                _ => write!(f, "({coeff})√{m}")?,
            }
        }
        Ok(())
    }
}
