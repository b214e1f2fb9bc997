//! Helpers on integer vectors stored as `Vec<BigInt>`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

pub fn from_i64(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

pub fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .fold(BigInt::zero(), |acc, (x, y)| acc + x * y)
}

pub fn is_zero(v: &[BigInt]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn neg(v: &[BigInt]) -> Vec<BigInt> {
    v.iter().map(|x| -x).collect()
}

pub fn add(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// `a -= q * b`
pub fn sub_scaled(a: &mut [BigInt], b: &[BigInt], q: &BigInt) {
    if q.is_zero() {
        return;
    }
    for (x, y) in a.iter_mut().zip(b) {
        *x -= q * y;
    }
}

pub fn content(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

/// Divides out the gcd of the entries. The zero vector is returned unchanged.
pub fn primitive(v: &[BigInt]) -> Vec<BigInt> {
    let g = content(v);
    if g.is_zero() {
        return v.to_vec();
    }
    v.iter().map(|x| x / &g).collect()
}

/// The primitive integer vector positively proportional to a rational vector.
pub fn primitive_rational(v: &[BigRational]) -> Vec<BigInt> {
    let lcm = v
        .iter()
        .fold(BigInt::from(1), |l, x| l.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * &lcm).to_integer()).collect();
    primitive(&ints)
}

/// Sign of the vector if all nonzero entries agree: `Some(1)`, `Some(-1)`,
/// `Some(0)` for the zero vector, `None` when mixed.
pub fn sign(v: &[BigInt]) -> Option<i8> {
    let pos = v.iter().any(Signed::is_positive);
    let negv = v.iter().any(Signed::is_negative);
    match (pos, negv) {
        (true, true) => None,
        (true, false) => Some(1),
        (false, true) => Some(-1),
        (false, false) => Some(0),
    }
}

pub fn positive_part(x: &BigInt) -> BigInt {
    if x.is_positive() {
        x.clone()
    } else {
        BigInt::zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primitive_and_sign() {
        assert_eq!(primitive(&from_i64(&[2, -4, 6])), from_i64(&[1, -2, 3]));
        assert_eq!(primitive(&from_i64(&[0, 0])), from_i64(&[0, 0]));
        assert_eq!(sign(&from_i64(&[0, -1, -3])), Some(-1));
        assert_eq!(sign(&from_i64(&[1, -1])), None);
        assert_eq!(sign(&from_i64(&[0, 0])), Some(0));
    }

    #[test]
    fn primitive_of_rationals() {
        let v = [
            BigRational::new(1.into(), 2.into()),
            BigRational::new((-1).into(), 3.into()),
        ];
        assert_eq!(primitive_rational(&v), from_i64(&[3, -2]));
    }
}
