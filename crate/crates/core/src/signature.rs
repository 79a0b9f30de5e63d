use std::fmt;

use crate::{Error, Mask, Result};

/// Per-generator doubling signs of a Cayley-Dickson algebra.
///
/// `eps[i]` belongs to generator `i + 1`. A `+1` generator squares to `-1`
/// (imaginary, written `o`); a `-1` generator squares to `+1` (unitary,
/// written `u`). By convention unitary generators take the highest indices,
/// so `A(q,p)` has `q` imaginary generators followed by `p` unitary ones.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Signature {
    eps: Vec<i8>,
}

impl Signature {
    pub const MAX_GENERATORS: usize = 16;

    pub fn new(eps: Vec<i8>) -> Result<Self> {
        if eps.is_empty() || eps.len() > Self::MAX_GENERATORS {
            return Err(Error::InvalidSignature(format!(
                "generator count {} outside 1..={}",
                eps.len(),
                Self::MAX_GENERATORS
            )));
        }
        if let Some(bad) = eps.iter().find(|e| **e != 1 && **e != -1) {
            return Err(Error::InvalidSignature(format!("entry {bad} is not +1 or -1")));
        }
        Ok(Self { eps })
    }

    /// `A(q,p)`: `q` imaginary generators followed by `p` unitary ones.
    pub fn split(q: usize, p: usize) -> Result<Self> {
        let mut eps = vec![1; q];
        eps.extend(std::iter::repeat(-1).take(p));
        Self::new(eps)
    }

    /// The all-imaginary algebra with `n` generators (octonions at 3,
    /// sedenions at 4).
    pub fn imaginary(n: usize) -> Result<Self> {
        Self::split(n, 0)
    }

    pub fn generators(&self) -> usize {
        self.eps.len()
    }

    /// Doubling sign of generator `index` (zero based).
    #[inline]
    pub fn eps(&self, index: usize) -> i8 {
        self.eps[index]
    }

    pub fn eps_slice(&self) -> &[i8] {
        &self.eps
    }

    pub fn q(&self) -> usize {
        self.eps.iter().filter(|e| **e == 1).count()
    }

    pub fn p(&self) -> usize {
        self.eps.len() - self.q()
    }

    pub fn is_imaginary(&self) -> bool {
        self.p() == 0
    }

    /// Total basis size `2^n`, including the unit.
    pub fn dim(&self) -> usize {
        1 << self.eps.len()
    }

    /// Number of pure basis blades, `2^n - 1`.
    pub fn pure_count(&self) -> usize {
        self.dim() - 1
    }

    /// Bits of the unitary generators.
    pub fn unitary_mask(&self) -> Mask {
        self.eps
            .iter()
            .enumerate()
            .filter(|(_, e)| **e == -1)
            .fold(0, |m, (i, _)| m | (1 << i))
    }

    pub fn check_mask(&self, mask: Mask) -> Result<()> {
        if (mask as usize) < self.dim() {
            Ok(())
        } else {
            Err(Error::MaskOutOfRange { mask, generators: self.generators() })
        }
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "A({},{})", self.q(), self.p())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn split_layout() {
        let sig = Signature::split(3, 1).unwrap();
        assert_eq!(sig.eps_slice(), &[1, 1, 1, -1]);
        assert_eq!((sig.q(), sig.p()), (3, 1));
        assert_eq!(sig.unitary_mask(), 0b1000);
        assert_eq!(sig.to_string(), "A(3,1)");
    }

    #[test]
    fn rejects_bad_signatures() {
        assert!(Signature::new(vec![]).is_err());
        assert!(Signature::new(vec![1, 0]).is_err());
        assert!(Signature::imaginary(17).is_err());
        assert!(Signature::imaginary(16).is_ok());
    }

    #[test]
    fn mask_range() {
        let sig = Signature::imaginary(4).unwrap();
        assert!(sig.check_mask(15).is_ok());
        assert_eq!(
            sig.check_mask(16),
            Err(Error::MaskOutOfRange { mask: 16, generators: 4 })
        );
    }
}
