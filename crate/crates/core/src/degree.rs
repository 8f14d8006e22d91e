//! Exact truth values in [0,1] and the Łukasiewicz connectives.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// A rational truth value in the closed unit interval.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Degree(Ratio<i128>);

impl Degree {
    pub const ZERO: Degree = Degree(Ratio::new_raw(0, 1));
    pub const ONE: Degree = Degree(Ratio::new_raw(1, 1));

    /// Builds `num/den`, reducing the fraction. Fails outside [0,1].
    pub fn new(num: i128, den: i128) -> Result<Self, Error> {
        if den == 0 {
            return Err(Error::ParseDegree(format!("{num}/{den}")));
        }
        Self::from_ratio(Ratio::new(num, den))
    }

    pub fn from_ratio(r: Ratio<i128>) -> Result<Self, Error> {
        if r.is_negative() || r > Ratio::one() {
            return Err(Error::OutOfRange(format!("{}/{}", r.numer(), r.denom())));
        }
        Ok(Degree(r))
    }

    /// `num/den` for callers that already know the value is in range.
    pub fn frac(num: i128, den: i128) -> Self {
        Self::new(num, den).expect("degree out of range")
    }

    pub fn ratio(&self) -> Ratio<i128> {
        self.0
    }

    pub fn numer(&self) -> i128 {
        *self.0.numer()
    }

    pub fn denom(&self) -> i128 {
        *self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn from_bool(b: bool) -> Self {
        if b {
            Self::ONE
        } else {
            Self::ZERO
        }
    }

    /// Łukasiewicz t-norm `max(0, a+b-1)`.
    pub fn tnorm(self, other: Degree) -> Degree {
        let s = self.0 + other.0 - Ratio::one();
        if s.is_negative() {
            Self::ZERO
        } else {
            Degree(s)
        }
    }

    /// Residuum `min(1, 1-a+b)`.
    pub fn implies(self, other: Degree) -> Degree {
        if self <= other {
            Self::ONE
        } else {
            Degree(Ratio::one() - self.0 + other.0)
        }
    }

    pub fn meet(self, other: Degree) -> Degree {
        self.min(other)
    }

    pub fn join(self, other: Degree) -> Degree {
        self.max(other)
    }

    pub fn neg(self) -> Degree {
        Degree(Ratio::one() - self.0)
    }

    /// `1 - |a-b|`, the meet of both residua.
    pub fn iff(self, other: Degree) -> Degree {
        Degree(Ratio::one() - (self.0 - other.0).abs())
    }

    /// Infimum of a finite sequence; 1 on the empty sequence.
    pub fn inf_over<I: IntoIterator<Item = Degree>>(items: I) -> Degree {
        items.into_iter().fold(Self::ONE, Degree::meet)
    }

    /// Supremum of a finite sequence; 0 on the empty sequence.
    pub fn sup_over<I: IntoIterator<Item = Degree>>(items: I) -> Degree {
        items.into_iter().fold(Self::ZERO, Degree::join)
    }

    /// Signed difference `self - other` as a plain rational (used for slack).
    pub fn minus(self, other: Degree) -> Ratio<i128> {
        self.0 - other.0
    }

    /// Least common multiple of the denominators of `items`, `None` on overflow past `limit`.
    pub fn common_denominator<'a, I: IntoIterator<Item = &'a Degree>>(
        items: I,
        limit: i128,
    ) -> Option<i128> {
        let mut acc: i128 = 1;
        for d in items {
            acc = acc.lcm(&d.denom());
            if acc > limit {
                return None;
            }
        }
        Some(acc)
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl fmt::Debug for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn parse_int(s: &str, whole: &str) -> Result<i128, Error> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::ParseDegree(whole.to_string()));
    }
    s.parse::<i128>()
        .map_err(|_| Error::ParseDegree(whole.to_string()))
}

impl FromStr for Degree {
    type Err = Error;

    /// Accepts `p/q`, integers, and finite decimals such as `0.75`.
    fn from_str(s: &str) -> Result<Self, Error> {
        let t = s.trim();
        if let Some((p, q)) = t.split_once('/') {
            let p = parse_int(p.trim(), s)?;
            let q = parse_int(q.trim(), s)?;
            return Degree::new(p, q);
        }
        if let Some((ip, fp)) = t.split_once('.') {
            let ip = if ip.is_empty() { 0 } else { parse_int(ip, s)? };
            if fp.len() > 30 {
                return Err(Error::ParseDegree(s.to_string()));
            }
            let den = 10i128.pow(fp.len() as u32);
            let fpv = if fp.is_empty() { 0 } else { parse_int(fp, s)? };
            return Degree::new(ip * den + fpv, den);
        }
        Degree::new(parse_int(t, s)?, 1)
    }
}

impl Serialize for Degree {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Degree {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct V;
        impl de::Visitor<'_> for V {
            type Value = Degree;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a degree such as \"3/4\", \"0.75\" or 1")
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<Degree, E> {
                v.parse().map_err(E::custom)
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Degree, E> {
                Degree::new(v as i128, 1).map_err(E::custom)
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Degree, E> {
                Degree::new(v as i128, 1).map_err(E::custom)
            }
            fn visit_f64<E: de::Error>(self, v: f64) -> Result<Degree, E> {
                // The shortest round-trip decimal is taken as the intended literal.
                format!("{v}").parse().map_err(E::custom)
            }
        }
        deserializer.deserialize_any(V)
    }
}
