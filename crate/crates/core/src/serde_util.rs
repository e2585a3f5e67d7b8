//! Serde helpers for exact scalars.

/// Rationals travel as strings `"n"` or `"n/d"` in lowest terms so no
/// consumer ever rounds them.
pub mod rational_string {
    use num_traits::One;
    use serde::{Deserialize, Deserializer, Serializer};

    use crate::exactla::{Int, Rational};

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
        if q.denom().is_one() {
            s.serialize_str(&q.numer().to_string())
        } else {
            s.serialize_str(&format!("{}/{}", q.numer(), q.denom()))
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        parse(&text).ok_or_else(|| serde::de::Error::custom(format!("invalid rational {text:?}")))
    }

    pub fn parse(text: &str) -> Option<Rational> {
        let (num, den) = match text.split_once('/') {
            Some((n, d)) => (n, d),
            None => (text, "1"),
        };
        let num: Int = num.trim().parse().ok()?;
        let den: Int = den.trim().parse().ok()?;
        if den == Int::from(0) {
            return None;
        }
        Some(Rational::new(num, den))
    }
}
