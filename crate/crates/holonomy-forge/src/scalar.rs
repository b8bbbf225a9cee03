//! Exact scalar arithmetic in the field Q(sqrt 3).
//!
//! Every span/rank decision downstream reduces to exact equality of scalars,
//! so there is no floating point anywhere. Plain rationals would suffice for
//! most inputs, but the so(3) -> so(5) catalog algebra has sqrt(3) entries;
//! the quadratic extension covers it while staying an exact field.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

/// An element `a + b*sqrt(3)` with `a`, `b` exact rationals.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Scalar {
    a: BigRational,
    b: BigRational,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::default()
    }

    pub fn one() -> Self {
        Scalar::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Scalar {
            a: BigRational::from_integer(BigInt::from(n)),
            b: BigRational::zero(),
        }
    }

    /// `p/q`, exact. Panics on `q = 0`.
    pub fn ratio(p: i64, q: i64) -> Self {
        assert!(q != 0, "zero denominator");
        Scalar {
            a: BigRational::new(BigInt::from(p), BigInt::from(q)),
            b: BigRational::zero(),
        }
    }

    /// `(p/q) * sqrt(3)`.
    pub fn sqrt3_ratio(p: i64, q: i64) -> Self {
        assert!(q != 0, "zero denominator");
        Scalar {
            a: BigRational::zero(),
            b: BigRational::new(BigInt::from(p), BigInt::from(q)),
        }
    }

    pub fn sqrt3() -> Self {
        Scalar::sqrt3_ratio(1, 1)
    }

    pub fn from_rational(a: BigRational) -> Self {
        Scalar {
            a,
            b: BigRational::zero(),
        }
    }

    /// n! as an exact scalar.
    pub fn factorial(n: usize) -> Self {
        let mut acc = BigInt::one();
        for k in 2..=n {
            acc *= BigInt::from(k);
        }
        Scalar::from_rational(BigRational::from_integer(acc))
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    /// The rational part; `None` when the sqrt(3) part is nonzero.
    pub fn as_rational(&self) -> Option<&BigRational> {
        if self.b.is_zero() {
            Some(&self.a)
        } else {
            None
        }
    }

    pub fn inv(&self) -> Self {
        // (a + b s)^-1 = (a - b s) / (a^2 - 3 b^2); the norm is nonzero for
        // nonzero elements since sqrt(3) is irrational.
        assert!(!self.is_zero(), "division by zero");
        let three = BigRational::from_integer(BigInt::from(3));
        let norm = &self.a * &self.a - three * &self.b * &self.b;
        Scalar {
            a: &self.a / &norm,
            b: -&self.b / &norm,
        }
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        Scalar {
            a: &self.a + &rhs.a,
            b: &self.b + &rhs.b,
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        Scalar {
            a: &self.a - &rhs.a,
            b: &self.b - &rhs.b,
        }
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        let three = BigRational::from_integer(BigInt::from(3));
        Scalar {
            a: &self.a * &rhs.a + three * &self.b * &rhs.b,
            b: &self.a * &rhs.b + &self.b * &rhs.a,
        }
    }
}

impl Div for &Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        self * &rhs.inv()
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            a: -&self.a,
            b: -&self.b,
        }
    }
}

macro_rules! forward_owned {
    ($trait:ident, $method:ident) => {
        impl $trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        self.a += &rhs.a;
        self.b += &rhs.b;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        self.a -= &rhs.a;
        self.b -= &rhs.b;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

fn fmt_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Scalar {
    /// `"p/q"` (or `"p"`) for rational values; a `*sqrt3` suffix marks the
    /// surd part, e.g. `"1/2+2*sqrt3"`, `"-1*sqrt3"`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", fmt_rational(&self.a));
        }
        let surd = format!("{}*sqrt3", fmt_rational(&self.b));
        if self.a.is_zero() {
            write!(f, "{surd}")
        } else if self.b.is_positive() {
            write!(f, "{}+{surd}", fmt_rational(&self.a))
        } else {
            write!(f, "{}{surd}", fmt_rational(&self.a))
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[derive(Debug, thiserror::Error)]
#[error("invalid scalar literal {0:?}")]
pub struct ParseScalarError(String);

impl FromStr for Scalar {
    type Err = ParseScalarError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseScalarError(s.to_string());
        let parse_rat = |t: &str| -> Result<BigRational, ParseScalarError> {
            BigRational::from_str(t).map_err(|_| ParseScalarError(s.to_string()))
        };
        // split off a trailing "<rat>*sqrt3" part if present
        if let Some(head) = s.strip_suffix("*sqrt3") {
            // find the split point between the rational part and the surd
            // coefficient: the last '+' or '-' not at position 0
            let bytes = head.as_bytes();
            let mut split = None;
            for i in (1..bytes.len()).rev() {
                if (bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'/' {
                    split = Some(i);
                    break;
                }
            }
            match split {
                Some(i) if bytes[i] == b'+' => Ok(Scalar {
                    a: parse_rat(&head[..i])?,
                    b: parse_rat(&head[i + 1..])?,
                }),
                Some(i) => Ok(Scalar {
                    a: parse_rat(&head[..i])?,
                    b: parse_rat(&head[i..])?,
                }),
                None => Ok(Scalar {
                    a: BigRational::zero(),
                    b: parse_rat(head)?,
                }),
            }
        } else if s.contains("sqrt3") {
            Err(err())
        } else {
            Ok(Scalar {
                a: parse_rat(s)?,
                b: BigRational::zero(),
            })
        }
    }
}

impl serde::Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        ser.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for Scalar {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let s = String::deserialize(de)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_ops() {
        let x = Scalar::ratio(1, 2) + Scalar::sqrt3_ratio(2, 3);
        let y = &x * &x.inv();
        assert!(y.is_one());
        assert!((Scalar::sqrt3() * Scalar::sqrt3()) == Scalar::from_int(3));
    }

    #[test]
    fn reduced_form_after_arithmetic() {
        // (a/b + c/d) stays in lowest terms: num-rational normalizes.
        let s = Scalar::ratio(1, 6) + Scalar::ratio(1, 3);
        let r = s.as_rational().unwrap();
        assert_eq!(r.numer().to_string(), "1");
        assert_eq!(r.denom().to_string(), "2");
    }

    #[test]
    fn display_roundtrip() {
        for s in [
            Scalar::zero(),
            Scalar::from_int(-7),
            Scalar::ratio(-3, 4),
            Scalar::sqrt3_ratio(-2, 3),
            Scalar::ratio(1, 2) + Scalar::sqrt3_ratio(5, 7),
            Scalar::ratio(-1, 2) - Scalar::sqrt3(),
        ] {
            let text = s.to_string();
            let back: Scalar = text.parse().unwrap();
            assert_eq!(back, s, "roundtrip of {text}");
        }
    }

    #[test]
    fn factorials() {
        assert_eq!(Scalar::factorial(0), Scalar::one());
        assert_eq!(Scalar::factorial(1), Scalar::one());
        assert_eq!(Scalar::factorial(5), Scalar::from_int(120));
    }
}
