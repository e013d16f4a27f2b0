use std::fmt;
use std::ops::Not;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A wire selection over a product space: one bit per wire.
///
/// Text form is comma-separated bits, e.g. `1,0,1,0,0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mask {
    bits: Vec<bool>,
}

impl Mask {
    pub fn new(bits: Vec<bool>) -> Self {
        Mask { bits }
    }

    pub fn from_indices(len: usize, ones: &[usize]) -> Self {
        let mut bits = vec![false; len];
        for &i in ones {
            bits[i] = true;
        }
        Mask { bits }
    }

    pub fn ones(len: usize) -> Self {
        Mask {
            bits: vec![true; len],
        }
    }

    pub fn zeros(len: usize) -> Self {
        Mask {
            bits: vec![false; len],
        }
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn bit(&self, wire: usize) -> bool {
        self.bits[wire]
    }

    pub fn count_ones(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    pub fn all_ones(&self) -> bool {
        self.bits.iter().all(|&b| b)
    }

    pub fn all_zeros(&self) -> bool {
        self.bits.iter().all(|&b| !b)
    }

    /// Indices of the selected wires, ascending.
    pub fn indices(&self) -> Vec<usize> {
        self.bits
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn union(&self, other: &Mask) -> Result<Mask> {
        self.check_len(other)?;
        Ok(Mask {
            bits: self
                .bits
                .iter()
                .zip(&other.bits)
                .map(|(&a, &b)| a | b)
                .collect(),
        })
    }

    pub fn overlaps(&self, other: &Mask) -> Option<usize> {
        self.bits
            .iter()
            .zip(&other.bits)
            .position(|(&a, &b)| a && b)
    }

    pub fn ensure_disjoint(&self, other: &Mask) -> Result<()> {
        self.check_len(other)?;
        match self.overlaps(other) {
            Some(wire) => Err(Error::MaskOverlap { wire }),
            None => Ok(()),
        }
    }

    /// Restriction of `self` to the wires kept by `kept`: the bits of
    /// `self` at the positions where `kept` is 1, in order.
    pub fn restrict_to(&self, kept: &Mask) -> Mask {
        debug_assert_eq!(self.len(), kept.len());
        Mask {
            bits: self
                .bits
                .iter()
                .zip(&kept.bits)
                .filter(|(_, &k)| k)
                .map(|(&b, _)| b)
                .collect(),
        }
    }

    fn check_len(&self, other: &Mask) -> Result<()> {
        if self.len() != other.len() {
            return Err(Error::MaskLength {
                expected: self.len(),
                found: other.len(),
            });
        }
        Ok(())
    }
}

impl Not for &Mask {
    type Output = Mask;

    fn not(self) -> Mask {
        Mask {
            bits: self.bits.iter().map(|&b| !b).collect(),
        }
    }
}

impl FromStr for Mask {
    type Err = Error;

    fn from_str(text: &str) -> Result<Mask> {
        if text.trim().is_empty() {
            return Err(Error::Parse {
                what: "mask",
                position: 0,
                message: "empty mask text".into(),
            });
        }
        let mut bits = Vec::new();
        let mut position = 0;
        for part in text.split(',') {
            let bit = match part.trim() {
                "0" => false,
                "1" => true,
                other => {
                    return Err(Error::Parse {
                        what: "mask",
                        position,
                        message: format!("expected 0 or 1, got `{other}`"),
                    })
                }
            };
            bits.push(bit);
            position += part.len() + 1;
        }
        Ok(Mask { bits })
    }
}

impl fmt::Display for Mask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<&str> = self.bits.iter().map(|&b| if b { "1" } else { "0" }).collect();
        write!(f, "{}", parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_comma_separated_bits() {
        let mask: Mask = "1,0,1,0,0".parse().unwrap();
        assert_eq!(mask.bits(), &[true, false, true, false, false]);
        assert_eq!(mask.to_string(), "1,0,1,0,0");
    }

    #[test]
    fn parse_error_carries_position() {
        let err = "1,x,0".parse::<Mask>().unwrap_err();
        assert_eq!(
            err,
            Error::Parse {
                what: "mask",
                position: 2,
                message: "expected 0 or 1, got `x`".into()
            }
        );
        assert!("".parse::<Mask>().is_err());
    }

    #[test]
    fn restriction_and_complement() {
        let kept: Mask = "1,1,0,1,1".parse().unwrap();
        let ins: Mask = "0,1,0,0,1".parse().unwrap();
        assert_eq!(ins.restrict_to(&kept).to_string(), "0,1,0,1");
        assert_eq!((!&ins).to_string(), "1,0,1,1,0");
        assert_eq!(ins.overlaps(&kept), Some(1));
    }
}
