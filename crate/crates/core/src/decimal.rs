//! Decimal-string encoding for arbitrary-precision integers in JSON.
//!
//! Counts in this crate overflow 64-bit (and IEEE-double) range immediately,
//! so every integer crosses the serialization boundary as a decimal string.

use num::BigUint;
use num::Num;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub fn to_dec(v: &BigUint) -> String {
    v.to_str_radix(10)
}

pub fn parse_dec(s: &str) -> Result<BigUint> {
    BigUint::from_str_radix(s.trim(), 10)
        .map_err(|_| Error::Format(format!("not a decimal integer: {s:?}")))
}

/// JSON value that is either a plain integer or a decimal string; inputs may
/// use whichever is convenient, outputs always use strings.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum DecInt {
    Int(u64),
    Str(String),
}

impl DecInt {
    pub fn to_biguint(&self) -> Result<BigUint> {
        match self {
            DecInt::Int(v) => Ok(BigUint::from(*v)),
            DecInt::Str(s) => parse_dec(s),
        }
    }

    pub fn from_biguint(v: &BigUint) -> Self {
        DecInt::Str(to_dec(v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let big = BigUint::parse_bytes(b"123456789012345678901234567890", 10).unwrap();
        assert_eq!(parse_dec(&to_dec(&big)).unwrap(), big);
        assert!(parse_dec("12x").is_err());
    }

    #[test]
    fn accepts_both_json_forms() {
        let a: DecInt = serde_json::from_str("42").unwrap();
        let b: DecInt = serde_json::from_str("\"42\"").unwrap();
        assert_eq!(a.to_biguint().unwrap(), b.to_biguint().unwrap());
    }
}
