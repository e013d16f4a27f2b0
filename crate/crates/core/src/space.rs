use std::fmt;

use crate::error::{Error, Result};
use crate::mask::Mask;

/// A named finite set of outcomes. The wires of every diagram carry one.
///
/// Label order is fixed at construction and defines index order for every
/// dense table built over the space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Space {
    name: String,
    labels: Vec<String>,
}

impl Space {
    pub fn new<N, L, S>(name: N, labels: L) -> Result<Self>
    where
        N: Into<String>,
        L: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let name = name.into();
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(Error::EmptySpace { space: name });
        }
        for (i, label) in labels.iter().enumerate() {
            if labels[..i].contains(label) {
                return Err(Error::DuplicateLabel {
                    space: name,
                    label: label.clone(),
                });
            }
        }
        Ok(Space { name, labels })
    }

    /// Two-point space, handy in tests and examples.
    pub fn binary<N: Into<String>>(name: N, first: &str, second: &str) -> Self {
        Space::new(name, [first, second]).expect("two distinct labels")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        false // labels are never empty by construction
    }

    pub fn label(&self, index: usize) -> &str {
        &self.labels[index]
    }

    /// Labels are compared as exact text.
    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownLabel {
                space: self.name.clone(),
                label: label.to_string(),
            })
    }
}

/// An ordered tensor product of spaces. The empty product is the tensor
/// unit `I`, which has exactly one point.
///
/// Tuples are indexed mixed-radix with the leftmost factor most
/// significant, so tables over a product space are plain dense vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductSpace {
    factors: Vec<Space>,
}

impl ProductSpace {
    pub fn new(factors: Vec<Space>) -> Self {
        ProductSpace { factors }
    }

    /// The tensor unit `I`.
    pub fn unit() -> Self {
        ProductSpace { factors: vec![] }
    }

    pub fn factors(&self) -> &[Space] {
        &self.factors
    }

    pub fn factor(&self, wire: usize) -> &Space {
        &self.factors[wire]
    }

    pub fn wires(&self) -> usize {
        self.factors.len()
    }

    pub fn is_unit(&self) -> bool {
        self.factors.is_empty()
    }

    /// Number of tuples; 1 for the unit.
    pub fn len(&self) -> usize {
        self.factors.iter().map(Space::len).product()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn dims(&self) -> Vec<usize> {
        self.factors.iter().map(Space::len).collect()
    }

    /// Tensor with `other`: concatenation of the wire lists.
    pub fn tensor(&self, other: &ProductSpace) -> ProductSpace {
        let mut factors = self.factors.clone();
        factors.extend(other.factors.iter().cloned());
        ProductSpace { factors }
    }

    /// Mixed-radix index of a label tuple.
    pub fn index_of(&self, labels: &[&str]) -> Result<usize> {
        if labels.len() != self.factors.len() {
            return Err(Error::TupleArity {
                expected: self.factors.len(),
                found: labels.len(),
            });
        }
        let mut index = 0;
        for (factor, label) in self.factors.iter().zip(labels) {
            index = index * factor.len() + factor.index_of(label)?;
        }
        Ok(index)
    }

    /// Label tuple at a mixed-radix index.
    pub fn tuple(&self, index: usize) -> Vec<&str> {
        let digits = self.decompose(index);
        self.factors
            .iter()
            .zip(digits)
            .map(|(factor, d)| factor.label(d))
            .collect()
    }

    /// Per-wire digits of a mixed-radix index.
    pub fn decompose(&self, index: usize) -> Vec<usize> {
        let mut digits = vec![0; self.factors.len()];
        let mut rest = index;
        for (wire, factor) in self.factors.iter().enumerate().rev() {
            digits[wire] = rest % factor.len();
            rest /= factor.len();
        }
        digits
    }

    pub fn compose_digits(&self, digits: &[usize]) -> usize {
        debug_assert_eq!(digits.len(), self.factors.len());
        let mut index = 0;
        for (factor, &d) in self.factors.iter().zip(digits) {
            index = index * factor.len() + d;
        }
        index
    }

    /// Sub-product of the wires selected by `mask`, in original order.
    pub fn select(&self, mask: &Mask) -> Result<ProductSpace> {
        if mask.len() != self.factors.len() {
            return Err(Error::MaskLength {
                expected: self.factors.len(),
                found: mask.len(),
            });
        }
        let factors = self
            .factors
            .iter()
            .zip(mask.bits())
            .filter(|(_, &keep)| keep)
            .map(|(f, _)| f.clone())
            .collect();
        Ok(ProductSpace { factors })
    }

    /// Reordered product: wire `k` of the result is wire `perm[k]` of `self`.
    pub fn permuted(&self, perm: &[usize]) -> ProductSpace {
        debug_assert!(is_permutation(perm, self.factors.len()));
        ProductSpace {
            factors: perm.iter().map(|&i| self.factors[i].clone()).collect(),
        }
    }

    pub fn wire_names(&self) -> Vec<&str> {
        self.factors.iter().map(Space::name).collect()
    }
}

impl From<Space> for ProductSpace {
    fn from(space: Space) -> Self {
        ProductSpace {
            factors: vec![space],
        }
    }
}

impl fmt::Display for ProductSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "I");
        }
        let names: Vec<&str> = self.wire_names();
        write!(f, "{}", names.join(" x "))
    }
}

pub(crate) fn is_permutation(perm: &[usize], n: usize) -> bool {
    if perm.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    for &p in perm {
        if p >= n || seen[p] {
            return false;
        }
        seen[p] = true;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn outlook() -> Space {
        Space::new("Outlook", ["s", "o", "r"]).unwrap()
    }

    #[test]
    fn rejects_empty_and_duplicate_labels() {
        assert!(matches!(
            Space::new("X", Vec::<String>::new()),
            Err(Error::EmptySpace { .. })
        ));
        assert!(matches!(
            Space::new("X", ["a", "b", "a"]),
            Err(Error::DuplicateLabel { .. })
        ));
    }

    #[test]
    fn mixed_radix_is_left_most_significant() {
        let ps = ProductSpace::new(vec![outlook(), Space::binary("Play", "y", "n")]);
        assert_eq!(ps.len(), 6);
        assert_eq!(ps.index_of(&["s", "y"]).unwrap(), 0);
        assert_eq!(ps.index_of(&["s", "n"]).unwrap(), 1);
        assert_eq!(ps.index_of(&["o", "y"]).unwrap(), 2);
        assert_eq!(ps.index_of(&["r", "n"]).unwrap(), 5);
        assert_eq!(ps.tuple(3), vec!["o", "n"]);
        assert_eq!(ps.decompose(5), vec![2, 1]);
        assert_eq!(ps.compose_digits(&[2, 1]), 5);
    }

    #[test]
    fn unit_space_has_one_point() {
        let unit = ProductSpace::unit();
        assert_eq!(unit.len(), 1);
        assert_eq!(unit.wires(), 0);
        assert_eq!(unit.index_of(&[]).unwrap(), 0);
        assert!(unit.tuple(0).is_empty());
    }

    #[test]
    fn unknown_label_reports_wire_name() {
        let ps: ProductSpace = outlook().into();
        let err = ps.index_of(&["cloudy"]).unwrap_err();
        assert_eq!(
            err,
            Error::UnknownLabel {
                space: "Outlook".into(),
                label: "cloudy".into()
            }
        );
    }
}
