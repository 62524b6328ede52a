//! Rational scalars and vectors.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::GeomError;

/// Exact rational scalar. Always reduced with a positive denominator.
pub type Q = BigRational;

/// A vector of rationals. The dimension is its length.
pub type QVec = Vec<Q>;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qf(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn qvec(xs: &[i64]) -> QVec {
    xs.iter().map(|&x| q(x)).collect()
}

pub fn zeros(n: usize) -> QVec {
    vec![Q::zero(); n]
}

pub fn unit(n: usize, i: usize) -> QVec {
    let mut v = zeros(n);
    v[i] = Q::one();
    v
}

pub fn dot(a: &[Q], b: &[Q]) -> Q {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).fold(Q::zero(), |acc, (x, y)| acc + x * y)
}

pub fn add(a: &[Q], b: &[Q]) -> QVec {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[Q], b: &[Q]) -> QVec {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale(s: &Q, a: &[Q]) -> QVec {
    a.iter().map(|x| s * x).collect()
}

pub fn neg(a: &[Q]) -> QVec {
    a.iter().map(|x| -x).collect()
}

pub fn is_zero(a: &[Q]) -> bool {
    a.iter().all(Zero::is_zero)
}

pub fn is_integral(a: &[Q]) -> bool {
    a.iter().all(|x| x.is_integer())
}

/// Direct sum `(a, b)`.
pub fn concat(a: &[Q], b: &[Q]) -> QVec {
    a.iter().chain(b).cloned().collect()
}

/// The primitive integer vector on the ray through `v`.
pub fn primitive(v: &[Q]) -> Result<QVec, GeomError> {
    if is_zero(v) {
        return Err(GeomError::ZeroVector);
    }
    Ok(primitive_unchecked(v))
}

pub(crate) fn primitive_unchecked(v: &[Q]) -> QVec {
    let lcm = v
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * Q::from_integer(lcm.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return v.to_vec();
    }
    ints.into_iter().map(|x| Q::from_integer(x / &g)).collect()
}

/// True when `a` and `b` span the same open ray.
pub fn same_ray(a: &[Q], b: &[Q]) -> bool {
    if is_zero(a) || is_zero(b) {
        return false;
    }
    primitive_unchecked(a) == primitive_unchecked(b)
}

/// Integer gcd of the entries of an integral vector.
pub fn content(v: &[Q]) -> BigInt {
    v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(&x.to_integer()))
}

pub fn sign(x: &Q) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

/// Parse `"p/q"` or `"p"`.
pub fn parse_q(s: &str) -> Result<Q, String> {
    let t = s.trim();
    let (n, d) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| format!("bad rational literal {s:?}"))?;
    let d: BigInt = d.parse().map_err(|_| format!("bad rational literal {s:?}"))?;
    if !d.is_positive() {
        return Err(format!("rational literal {s:?} needs a positive denominator"));
    }
    Ok(Q::new(n, d))
}

pub fn fmt_q(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn fmt_vec(v: &[Q]) -> String {
    let parts: Vec<String> = v.iter().map(fmt_q).collect();
    format!("({})", parts.join(","))
}
