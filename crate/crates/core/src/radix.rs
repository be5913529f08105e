//! Fixed-width mixed-radix codecs for structured rings whose elements are
//! tuples of base-ring elements (matrices, products, group-ring functions).

use crate::ring::Elem;

pub const MAX_DIGITS: usize = 32;

pub type Digits = [Elem; MAX_DIGITS];

/// Digit `i` has weight `prod(radices[..i])`.
#[derive(Clone, Debug)]
pub struct MixedRadix {
    radices: Vec<usize>,
    weights: Vec<usize>,
    total: usize,
}

impl MixedRadix {
    /// `None` if the total does not fit in `usize` or there are too many digits.
    pub fn new(radices: Vec<usize>) -> Option<Self> {
        if radices.len() > MAX_DIGITS {
            return None;
        }
        let mut weights = Vec::with_capacity(radices.len());
        let mut total: usize = 1;
        for &r in &radices {
            weights.push(total);
            total = total.checked_mul(r)?;
        }
        Some(MixedRadix { radices, weights, total })
    }

    pub fn uniform(radix: usize, digits: usize) -> Option<Self> {
        Self::new(vec![radix; digits])
    }

    pub fn len(&self) -> usize {
        self.radices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.radices.is_empty()
    }

    pub fn total(&self) -> usize {
        self.total
    }

    pub fn radix(&self, i: usize) -> usize {
        self.radices[i]
    }

    #[inline]
    pub fn decode(&self, mut x: Elem) -> Digits {
        let mut out = [0; MAX_DIGITS];
        for (slot, &r) in out.iter_mut().zip(&self.radices) {
            *slot = x % r;
            x /= r;
        }
        out
    }

    #[inline]
    pub fn encode(&self, digits: &[Elem]) -> Elem {
        digits
            .iter()
            .zip(&self.weights)
            .map(|(d, w)| d * w)
            .sum()
    }

    #[inline]
    pub fn digit(&self, x: Elem, i: usize) -> Elem {
        (x / self.weights[i]) % self.radices[i]
    }

    /// The element with a single nonzero digit.
    pub fn unit_vector(&self, i: usize, value: Elem) -> Elem {
        value * self.weights[i]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip() {
        let r = MixedRadix::new(vec![3, 4, 5]).unwrap();
        assert_eq!(r.total(), 60);
        for x in 0..60 {
            let d = r.decode(x);
            assert_eq!(r.encode(&d[..3]), x);
            assert_eq!(r.digit(x, 1), d[1]);
        }
        assert!(MixedRadix::uniform(1 << 20, 8).is_none());
    }
}
