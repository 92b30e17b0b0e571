//! Boundary objects `[n]`, `[0+]`, `[0-]`.

use std::fmt;
use std::str::FromStr;

use crate::error::TangleError;

/// An object of the annular categories: `N(n)` carries `2n` marked points,
/// `ZeroPlus`/`ZeroMinus` carry none and record the shading at the circle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BoundaryObject {
    ZeroPlus,
    ZeroMinus,
    N(u32),
}

impl BoundaryObject {
    /// Number of marked points on the circle.
    pub fn points(self) -> u32 {
        match self {
            BoundaryObject::N(n) => 2 * n,
            _ => 0,
        }
    }

    /// `n` for `[n]`, zero for `[0±]`.
    pub fn rank(self) -> u32 {
        match self {
            BoundaryObject::N(n) => n,
            _ => 0,
        }
    }

    pub fn is_zero(self) -> bool {
        !matches!(self, BoundaryObject::N(_))
    }

    /// Shading of the region touching an empty circle.
    pub fn zero_shaded(self) -> Option<bool> {
        match self {
            BoundaryObject::ZeroPlus => Some(false),
            BoundaryObject::ZeroMinus => Some(true),
            BoundaryObject::N(_) => None,
        }
    }

    /// The empty object with the given shading.
    pub fn zero_with_shading(shaded: bool) -> Self {
        if shaded {
            BoundaryObject::ZeroMinus
        } else {
            BoundaryObject::ZeroPlus
        }
    }

    /// `self + z`, where `0± + z = z`; `None` if the result is not positive.
    pub fn shift(self, z: i64) -> Option<Self> {
        let r = self.rank() as i64 + z;
        if r >= 1 {
            Some(BoundaryObject::N(r as u32))
        } else {
            None
        }
    }
}

impl fmt::Display for BoundaryObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundaryObject::ZeroPlus => write!(f, "0+"),
            BoundaryObject::ZeroMinus => write!(f, "0-"),
            BoundaryObject::N(n) => write!(f, "{n}"),
        }
    }
}

impl FromStr for BoundaryObject {
    type Err = TangleError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim().trim_start_matches('[').trim_end_matches(']');
        match s {
            "0+" => Ok(BoundaryObject::ZeroPlus),
            "0-" => Ok(BoundaryObject::ZeroMinus),
            _ => match s.parse::<u32>() {
                Ok(n) if n >= 1 => Ok(BoundaryObject::N(n)),
                _ => Err(TangleError::BadObject(s.to_string())),
            },
        }
    }
}

impl serde::Serialize for BoundaryObject {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for BoundaryObject {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display_round_trip() {
        for s in ["0+", "0-", "1", "7"] {
            let o: BoundaryObject = s.parse().unwrap();
            assert_eq!(o.to_string(), s);
        }
        assert!("0".parse::<BoundaryObject>().is_err());
        assert!("x".parse::<BoundaryObject>().is_err());
    }

    #[test]
    fn arithmetic_treats_empty_objects_as_zero() {
        assert_eq!(BoundaryObject::ZeroMinus.shift(2), Some(BoundaryObject::N(2)));
        assert_eq!(BoundaryObject::N(3).shift(-1), Some(BoundaryObject::N(2)));
        assert_eq!(BoundaryObject::N(1).shift(-1), None);
        assert_eq!(BoundaryObject::N(4).points(), 8);
    }
}
