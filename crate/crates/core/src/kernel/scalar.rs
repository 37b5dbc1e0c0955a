use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Scalar = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid scalar {0:?}: expected \"p\" or \"p/q\" with integer p and positive integer q")]
pub struct ScalarParseError(pub String);

/// Formats as `"p/q"`, or `"p"` when the denominator is one.
pub fn format_scalar(x: &Scalar) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parses the `"p/q"` / `"p"` interchange format. The result is reduced.
pub fn parse_scalar(s: &str) -> Result<Scalar, ScalarParseError> {
    let err = || ScalarParseError(s.to_string());
    let t = s.trim();
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (t, None),
    };
    let valid_int = |x: &str, allow_sign: bool| {
        let digits = if allow_sign { x.strip_prefix('-').unwrap_or(x) } else { x };
        !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
    };
    if !valid_int(num, true) {
        return Err(err());
    }
    let n: BigInt = num.parse().map_err(|_| err())?;
    let d: BigInt = match den {
        Some(d) if valid_int(d, false) => d.parse().map_err(|_| err())?,
        Some(_) => return Err(err()),
        None => BigInt::one(),
    };
    if d.is_zero() {
        return Err(err());
    }
    Ok(BigRational::new(n, d))
}

/// Scientific decimal `m.mmm…e±E`, rounded half away from zero. It has
/// `digits` significant digits when `|x| < 1`, and `E + 1` more when
/// `|x| >= 10^E` with `E >= 0`, so the absolute error never exceeds
/// `10^-digits / 2`; for `|x| < 1` the error is also relative.
pub fn format_approx(x: &Scalar, digits: usize) -> String {
    if x.is_zero() {
        return "0".into();
    }
    let ten = Scalar::from_integer(BigInt::from(10));
    let a = x.abs();
    // 10^e <= a < 10^(e+1)
    let mut e: i64 = a.numer().to_string().len() as i64 - a.denom().to_string().len() as i64;
    while pow10(&ten, e) > a {
        e -= 1;
    }
    while pow10(&ten, e + 1) <= a {
        e += 1;
    }
    let sig = |e: i64| digits.max(1) as i64 + (e + 1).max(0);
    let mut m = (&a * pow10(&ten, sig(e) - 1 - e)).round().to_integer();
    if m.to_string().len() as i64 > sig(e) {
        // rounded up to the next power of ten
        e += 1;
        m = (&a * pow10(&ten, sig(e) - 1 - e)).round().to_integer();
    }
    let ds = m.to_string();
    let sign = if x.is_negative() { "-" } else { "" };
    let (head, tail) = ds.split_at(1);
    if tail.is_empty() {
        format!("{sign}{head}e{e}")
    } else {
        format!("{sign}{head}.{tail}e{e}")
    }
}

fn pow10(ten: &Scalar, e: i64) -> Scalar {
    if e >= 0 {
        ten.pow(e as i32)
    } else {
        ten.pow(-e as i32).recip()
    }
}

pub fn int(v: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(v))
}

/// `n / d` as a reduced scalar. Panics when `d == 0`.
pub fn ratio(n: i64, d: i64) -> Scalar {
    Scalar::new(BigInt::from(n), BigInt::from(d))
}

/// Serde adapter for a single scalar in the `"p/q"` format. Integer JSON
/// numbers are accepted on input.
pub mod serde_scalar {
    use serde::de::{self, Visitor};
    use serde::{Deserializer, Serializer};

    use super::{format_scalar, int, parse_scalar, Scalar};

    pub fn serialize<S: Serializer>(x: &Scalar, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_scalar(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Scalar, D::Error> {
        d.deserialize_any(ScalarVisitor)
    }

    pub(crate) struct ScalarVisitor;

    impl Visitor<'_> for ScalarVisitor {
        type Value = Scalar;

        fn expecting(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
            f.write_str("a rational string \"p/q\" or an integer")
        }

        fn visit_str<E: de::Error>(self, v: &str) -> Result<Scalar, E> {
            parse_scalar(v).map_err(E::custom)
        }

        fn visit_i64<E: de::Error>(self, v: i64) -> Result<Scalar, E> {
            Ok(int(v))
        }

        fn visit_u64<E: de::Error>(self, v: u64) -> Result<Scalar, E> {
            Ok(Scalar::from_integer(v.into()))
        }
    }
}

/// Serde adapter for an optional scalar; `None` is `null`.
pub mod serde_scalar_opt {
    use serde::{Deserialize, Deserializer, Serializer};

    use super::{format_scalar, serde_scalar::ScalarVisitor, Scalar};

    pub fn serialize<S: Serializer>(x: &Option<Scalar>, s: S) -> Result<S::Ok, S::Error> {
        match x {
            Some(v) => s.serialize_some(&format_scalar(v)),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Scalar>, D::Error> {
        struct Wrapped(Scalar);
        impl<'de> Deserialize<'de> for Wrapped {
            fn deserialize<D2: Deserializer<'de>>(d: D2) -> Result<Self, D2::Error> {
                d.deserialize_any(ScalarVisitor).map(Wrapped)
            }
        }
        Ok(Option::<Wrapped>::deserialize(d)?.map(|w| w.0))
    }
}
