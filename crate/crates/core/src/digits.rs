//! Digit strings and their positional encoding.
//!
//! Component `j` (1-based) carries weight `k^(j-1)`, so component 1 is the
//! least significant digit. Every serialized form lists digits from `j = 1`
//! upward.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest `k^L` accepted for a single register.
pub const MAX_MODULUS: u64 = 1 << 20;

/// Digit alphabet size `k` and register length `L`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Radix {
    k: u32,
    #[serde(rename = "L")]
    len: usize,
}

impl Radix {
    pub fn new(k: u32, len: usize) -> Result<Self> {
        if k < 2 {
            return Err(Error::BaseTooSmall(k));
        }
        if len == 0 {
            return Err(Error::NoComponents);
        }
        let too_large = Error::RadixTooLarge { k, len, cap: MAX_MODULUS };
        let exp = u32::try_from(len).map_err(|_| too_large.clone())?;
        match u64::from(k).checked_pow(exp) {
            Some(m) if m <= MAX_MODULUS => Ok(Self { k, len }),
            _ => Err(too_large),
        }
    }

    #[inline]
    pub fn k(&self) -> u32 {
        self.k
    }

    /// Number of components `L`.
    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    /// `k^L`, the number of basis states of one register.
    #[inline]
    pub fn modulus(&self) -> u64 {
        u64::from(self.k).pow(self.len as u32)
    }

    /// Positional weight `k^(j-1)` of component `j`.
    pub fn weight(&self, j: usize) -> Result<u64> {
        self.check_component(j)?;
        Ok(u64::from(self.k).pow(j as u32 - 1))
    }

    pub fn check_component(&self, j: usize) -> Result<()> {
        if j == 0 || j > self.len {
            Err(Error::ComponentOutOfRange { j, len: self.len })
        } else {
            Ok(())
        }
    }

    pub fn check_value(&self, value: u64) -> Result<()> {
        let modulus = self.modulus();
        if value >= modulus {
            Err(Error::ValueOutOfRange { value, modulus })
        } else {
            Ok(())
        }
    }

    pub fn ensure_same(&self, other: &Radix) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::RadixMismatch { left: *self, right: *other })
        }
    }

    /// Every basis label of the register, in increasing numeric order.
    pub fn basis(&self) -> impl Iterator<Item = DigitString> + '_ {
        (0..self.modulus()).map(move |n| encode_number(n, *self).expect("value below modulus"))
    }
}

impl fmt::Display for Radix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "k={}, L={}", self.k, self.len)
    }
}

/// A basis label `s : {1..L} -> {0..k-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DigitString {
    radix: Radix,
    digits: Vec<u32>,
}

impl DigitString {
    pub fn new(radix: Radix, digits: Vec<u32>) -> Result<Self> {
        if digits.len() != radix.len() {
            return Err(Error::LengthMismatch { expected: radix.len(), got: digits.len() });
        }
        if let Some((i, &digit)) = digits.iter().enumerate().find(|(_, &d)| d >= radix.k()) {
            return Err(Error::DigitOutOfRange { j: i + 1, digit, k: radix.k() });
        }
        Ok(Self { radix, digits })
    }

    pub fn zero(radix: Radix) -> Self {
        Self { radix, digits: vec![0; radix.len()] }
    }

    /// Parses `"d1,d2,...,dL"` (component 1 first).
    pub fn parse(radix: Radix, text: &str) -> Result<Self> {
        let digits = text
            .split(',')
            .map(|part| part.trim().parse::<u32>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| Error::MalformedDigits(text.to_string()))?;
        Self::new(radix, digits)
    }

    #[inline]
    pub fn radix(&self) -> Radix {
        self.radix
    }

    /// Digits in component order, `digits()[0]` being component 1.
    #[inline]
    pub fn digits(&self) -> &[u32] {
        &self.digits
    }

    /// Digit at 1-based component `j`.
    pub fn digit(&self, j: usize) -> Result<u32> {
        self.radix.check_component(j)?;
        Ok(self.digits[j - 1])
    }

    pub fn value(&self) -> u64 {
        decode_number(self)
    }

    /// Crate-internal mutable access; callers keep every digit below `k`.
    pub(crate) fn digits_mut(&mut self) -> &mut [u32] {
        &mut self.digits
    }
}

impl fmt::Display for DigitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, d) in self.digits.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

impl Serialize for DigitString {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Writes `n` in base `k` with component 1 least significant.
pub fn encode_number(n: u64, radix: Radix) -> Result<DigitString> {
    radix.check_value(n)?;
    let k = u64::from(radix.k());
    let mut rest = n;
    let digits = (0..radix.len())
        .map(|_| {
            let d = (rest % k) as u32;
            rest /= k;
            d
        })
        .collect();
    Ok(DigitString { radix, digits })
}

pub fn decode_number(s: &DigitString) -> u64 {
    let k = u64::from(s.radix.k());
    s.digits.iter().rev().fold(0, |acc, &d| acc * k + u64::from(d))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(k: u32, len: usize) -> Radix {
        Radix::new(k, len).unwrap()
    }

    #[test]
    fn encode_examples() {
        assert_eq!(encode_number(0, r(2, 3)).unwrap().digits(), &[0, 0, 0]);
        assert_eq!(encode_number(6, r(2, 3)).unwrap().digits(), &[0, 1, 1]);
        assert_eq!(encode_number(99, r(10, 2)).unwrap().digits(), &[9, 9]);
    }

    #[test]
    fn decode_examples() {
        assert_eq!(DigitString::new(r(2, 3), vec![0, 1, 1]).unwrap().value(), 6);
        assert_eq!(DigitString::new(r(10, 2), vec![9, 9]).unwrap().value(), 99);
        for k in 2..6 {
            assert_eq!(DigitString::zero(r(k, 3)).value(), 0);
        }
    }

    #[test]
    fn encode_rejects_out_of_range() {
        assert_eq!(
            encode_number(8, r(2, 3)),
            Err(Error::ValueOutOfRange { value: 8, modulus: 8 })
        );
    }

    #[test]
    fn radix_validation() {
        assert_eq!(Radix::new(1, 3), Err(Error::BaseTooSmall(1)));
        assert_eq!(Radix::new(2, 0), Err(Error::NoComponents));
        assert!(Radix::new(2, 20).is_ok());
        assert!(matches!(Radix::new(2, 21), Err(Error::RadixTooLarge { .. })));
        assert!(matches!(Radix::new(u32::MAX, 4), Err(Error::RadixTooLarge { .. })));
    }

    #[test]
    fn digit_string_validation() {
        let radix = r(3, 2);
        assert_eq!(
            DigitString::new(radix, vec![0, 3]),
            Err(Error::DigitOutOfRange { j: 2, digit: 3, k: 3 })
        );
        assert_eq!(
            DigitString::new(radix, vec![0]),
            Err(Error::LengthMismatch { expected: 2, got: 1 })
        );
        assert!(matches!(DigitString::parse(radix, "1,x"), Err(Error::MalformedDigits(_))));
        assert_eq!(DigitString::parse(radix, "2, 1").unwrap().value(), 5);
        assert_eq!(DigitString::parse(radix, "2,1").unwrap().to_string(), "2,1");
    }

    #[test]
    fn round_trip_exhaustive_up_to_two_to_the_sixteen() {
        for (k, len) in [(2, 16), (3, 10), (4, 8), (16, 4), (256, 2)] {
            let radix = r(k, len);
            assert!(radix.modulus() <= 1 << 16);
            for n in 0..radix.modulus() {
                assert_eq!(decode_number(&encode_number(n, radix).unwrap()), n);
            }
        }
    }
}
