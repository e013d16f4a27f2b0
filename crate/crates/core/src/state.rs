use crate::error::{Error, Result};
use crate::mask::Mask;
use crate::space::{is_permutation, ProductSpace};
use crate::DEFAULT_EPS;

/// A nonnegative weight table over a product space.
///
/// A state is *causal* when its total mass is 1 (within tolerance); tables
/// with other masses appear as intermediate values, e.g. after weighting by
/// an effect, and are turned back into states by [`State::normalize`].
#[derive(Debug, Clone, PartialEq)]
pub struct State {
    space: ProductSpace,
    weights: Vec<f64>,
}

impl State {
    pub fn new(space: ProductSpace, weights: Vec<f64>) -> Result<Self> {
        if weights.len() != space.len() {
            return Err(Error::DimensionMismatch {
                expected: space.len(),
                found: weights.len(),
                context: "state table",
            });
        }
        for (index, &w) in weights.iter().enumerate() {
            if !(w.is_finite() && w >= 0.0) {
                return Err(Error::InvalidWeight { value: w, index });
            }
        }
        Ok(State { space, weights })
    }

    /// Dirac state at a label tuple.
    pub fn point(space: ProductSpace, labels: &[&str]) -> Result<Self> {
        let index = space.index_of(labels)?;
        let mut weights = vec![0.0; space.len()];
        weights[index] = 1.0;
        Ok(State { space, weights })
    }

    pub fn uniform(space: ProductSpace) -> Self {
        let n = space.len();
        State {
            space,
            weights: vec![1.0 / n as f64; n],
        }
    }

    /// The empirical joint state of a data table: each row contributes
    /// mass 1/N at its label tuple, so duplicates accumulate.
    pub fn from_rows<S: AsRef<str>>(space: ProductSpace, rows: &[Vec<S>]) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::EmptyRows);
        }
        let mut weights = vec![0.0; space.len()];
        let share = 1.0 / rows.len() as f64;
        for row in rows {
            let labels: Vec<&str> = row.iter().map(AsRef::as_ref).collect();
            weights[space.index_of(&labels)?] += share;
        }
        Ok(State { space, weights })
    }

    /// The mass-1 state on the tensor unit.
    pub fn unit() -> Self {
        State {
            space: ProductSpace::unit(),
            weights: vec![1.0],
        }
    }

    pub fn space(&self) -> &ProductSpace {
        &self.space
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn weight(&self, index: usize) -> f64 {
        self.weights[index]
    }

    pub fn weight_of(&self, labels: &[&str]) -> Result<f64> {
        Ok(self.weights[self.space.index_of(labels)?])
    }

    pub fn mass(&self) -> f64 {
        self.weights.iter().sum()
    }

    pub fn is_causal(&self) -> bool {
        self.is_causal_within(DEFAULT_EPS)
    }

    pub fn is_causal_within(&self, eps: f64) -> bool {
        (self.mass() - 1.0).abs() <= eps
    }

    /// Discard the wires with bit 0; kept wires keep their order and the
    /// mass is preserved.
    pub fn marginal(&self, mask: &Mask) -> Result<State> {
        if mask.len() != self.space.wires() {
            return Err(Error::MaskLength {
                expected: self.space.wires(),
                found: mask.len(),
            });
        }
        let kept = self.space.select(mask)?;
        let mut weights = vec![0.0; kept.len()];
        let dims = self.space.dims();
        let mut digits = vec![0usize; dims.len()];
        for (index, &w) in self.weights.iter().enumerate() {
            decompose_into(index, &dims, &mut digits);
            let mut out = 0;
            for (wire, &d) in digits.iter().enumerate() {
                if mask.bit(wire) {
                    out = out * dims[wire] + d;
                }
            }
            weights[out] += w;
        }
        Ok(State {
            space: kept,
            weights,
        })
    }

    /// Reorder wires: wire `k` of the result is wire `perm[k]` of `self`.
    pub fn permute(&self, perm: &[usize]) -> Result<State> {
        if !is_permutation(perm, self.space.wires()) {
            return Err(Error::DimensionMismatch {
                expected: self.space.wires(),
                found: perm.len(),
                context: "wire permutation",
            });
        }
        let target = self.space.permuted(perm);
        let dims = self.space.dims();
        let mut digits = vec![0usize; dims.len()];
        let mut permuted = vec![0usize; dims.len()];
        let mut weights = vec![0.0; target.len()];
        for (index, &w) in self.weights.iter().enumerate() {
            decompose_into(index, &dims, &mut digits);
            for (k, &src) in perm.iter().enumerate() {
                permuted[k] = digits[src];
            }
            weights[target.compose_digits(&permuted)] = w;
        }
        Ok(State {
            space: target,
            weights,
        })
    }

    /// Product state on the tensor of the two spaces.
    pub fn tensor(&self, other: &State) -> State {
        let space = self.space.tensor(&other.space);
        let mut weights = Vec::with_capacity(space.len());
        for &a in &self.weights {
            for &b in &other.weights {
                weights.push(a * b);
            }
        }
        State { space, weights }
    }

    /// Rescale to mass 1; errors when the mass is not above `DEFAULT_EPS`.
    pub fn normalize(&self) -> Result<State> {
        self.normalize_within(DEFAULT_EPS)
    }

    pub fn normalize_within(&self, eps: f64) -> Result<State> {
        let mass = self.mass();
        if mass <= eps {
            return Err(Error::NotNormalizable { mass, eps });
        }
        Ok(State {
            space: self.space.clone(),
            weights: self.weights.iter().map(|w| w / mass).collect(),
        })
    }

    pub fn scaled(&self, factor: f64) -> Result<State> {
        State::new(
            self.space.clone(),
            self.weights.iter().map(|w| w * factor).collect(),
        )
    }

    /// L-infinity distance between two tables over the same space.
    pub fn linf(&self, other: &State) -> Result<f64> {
        if self.space != other.space {
            return Err(Error::SpaceMismatch {
                context: "state comparison",
            });
        }
        Ok(self
            .weights
            .iter()
            .zip(&other.weights)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max))
    }
}

pub(crate) fn decompose_into(index: usize, dims: &[usize], digits: &mut [usize]) {
    let mut rest = index;
    for wire in (0..dims.len()).rev() {
        digits[wire] = rest % dims[wire];
        rest /= dims[wire];
    }
}

/// A nonnegative finite real; the value of an endomap of the tensor unit.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Scalar(f64);

impl Scalar {
    pub fn new(value: f64) -> Result<Self> {
        if !(value.is_finite() && value >= 0.0) {
            return Err(Error::InvalidWeight { value, index: 0 });
        }
        Ok(Scalar(value))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

impl From<Scalar> for f64 {
    fn from(s: Scalar) -> f64 {
        s.0
    }
}
