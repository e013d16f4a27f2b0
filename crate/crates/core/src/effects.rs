//! The non-causal fragment: effects, validity, conditioning, and the
//! crossover equality.
//!
//! An effect is a nonnegative observable on a space, not bounded by 1.
//! Conditioning a state by an effect reweights and renormalises it; the
//! crossover theorem says that conditioning a joint state on one wire group
//! and marginalising equals both backward inference (condition the prior by
//! the pulled-back effect) and forward inference (push the conditioned other
//! marginal through the reverse conditional).

use std::str::FromStr;

use crate::channel::Channel;
use crate::disintegration::extract;
use crate::error::{Error, Result};
use crate::mask::Mask;
use crate::space::ProductSpace;
use crate::state::{Scalar, State};
use crate::DEFAULT_EPS;

/// A nonnegative real-valued function on a product space.
#[derive(Debug, Clone, PartialEq)]
pub struct Effect {
    space: ProductSpace,
    values: Vec<f64>,
}

impl Effect {
    pub fn new(space: ProductSpace, values: Vec<f64>) -> Result<Self> {
        if values.len() != space.len() {
            return Err(Error::DimensionMismatch {
                expected: space.len(),
                found: values.len(),
                context: "effect table",
            });
        }
        for (index, &v) in values.iter().enumerate() {
            if !(v.is_finite() && v >= 0.0) {
                return Err(Error::InvalidWeight { value: v, index });
            }
        }
        Ok(Effect { space, values })
    }

    /// The truth effect: constantly 1.
    pub fn truth(space: ProductSpace) -> Self {
        let n = space.len();
        Effect {
            space,
            values: vec![1.0; n],
        }
    }

    /// Indicator of an event given as a set of label tuples.
    pub fn indicator(space: ProductSpace, event: &[Vec<&str>]) -> Result<Self> {
        let mut values = vec![0.0; space.len()];
        for tuple in event {
            values[space.index_of(tuple)?] = 1.0;
        }
        Ok(Effect { space, values })
    }

    /// Parse effect text against a space.
    ///
    /// Two forms: label:value pairs `t:1,f:0` (unlisted labels get 0), or
    /// event syntax `{t}` / `{a,b}` for indicators. Labels of multi-wire
    /// spaces are written as one `.`-joined token per tuple, e.g. `a.u:0.5`.
    pub fn parse(space: &ProductSpace, text: &str) -> Result<Self> {
        let trimmed = text.trim();
        if trimmed.is_empty() {
            return Err(Error::Parse {
                what: "effect",
                position: 0,
                message: "empty effect text".into(),
            });
        }
        if let Some(inner) = trimmed
            .strip_prefix('{')
            .and_then(|rest| rest.strip_suffix('}'))
        {
            let mut values = vec![0.0; space.len()];
            for token in inner.split(',') {
                let token = token.trim();
                if token.is_empty() {
                    return Err(Error::Parse {
                        what: "effect",
                        position: 0,
                        message: "empty label in event".into(),
                    });
                }
                let tuple: Vec<&str> = token.split('.').collect();
                values[space.index_of(&tuple)?] = 1.0;
            }
            return Effect::new(space.clone(), values);
        }

        let mut values = vec![0.0; space.len()];
        let mut seen = vec![false; space.len()];
        let mut position = 0;
        for part in trimmed.split(',') {
            let (label, value_text) = part.split_once(':').ok_or_else(|| Error::Parse {
                what: "effect",
                position,
                message: format!("expected label:value, got `{}`", part.trim()),
            })?;
            let tuple: Vec<&str> = label.trim().split('.').collect();
            let index = space.index_of(&tuple)?;
            if seen[index] {
                return Err(Error::Parse {
                    what: "effect",
                    position,
                    message: format!("duplicate label `{}`", label.trim()),
                });
            }
            seen[index] = true;
            let value: f64 = value_text.trim().parse().map_err(|_| Error::Parse {
                what: "effect",
                position: position + label.len() + 1,
                message: format!("invalid number `{}`", value_text.trim()),
            })?;
            values[index] = value;
            position += part.len() + 1;
        }
        Effect::new(space.clone(), values)
    }

    pub fn space(&self) -> &ProductSpace {
        &self.space
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn value(&self, index: usize) -> f64 {
        self.values[index]
    }

    pub fn value_of(&self, labels: &[&str]) -> Result<f64> {
        Ok(self.values[self.space.index_of(labels)?])
    }

    /// Pointwise product; conditioning by both effects in sequence equals
    /// conditioning by the product.
    pub fn and(&self, other: &Effect) -> Result<Effect> {
        if self.space != other.space {
            return Err(Error::SpaceMismatch {
                context: "effect product",
            });
        }
        Effect::new(
            self.space.clone(),
            self.values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a * b)
                .collect(),
        )
    }

    /// Pointwise reciprocal on the support (values above `support_eps`),
    /// zero elsewhere.
    pub fn almost_inverse(&self, support_eps: f64) -> Effect {
        Effect {
            space: self.space.clone(),
            values: crate::density::almost_inverse(&self.values, support_eps),
        }
    }

    pub fn linf(&self, other: &Effect) -> Result<f64> {
        if self.space != other.space {
            return Err(Error::SpaceMismatch {
                context: "effect comparison",
            });
        }
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max))
    }
}

impl FromStr for Effect {
    type Err = Error;

    /// Parsing without a space is not defined; use [`Effect::parse`].
    fn from_str(_: &str) -> Result<Self> {
        Err(Error::Parse {
            what: "effect",
            position: 0,
            message: "effect text needs a space to parse against".into(),
        })
    }
}

/// The validity `sigma |= p`: the expected value of `p` in `sigma`.
pub fn validity(sigma: &State, p: &Effect) -> Result<Scalar> {
    if sigma.space() != p.space() {
        return Err(Error::SpaceMismatch { context: "validity" });
    }
    let value = sigma
        .weights()
        .iter()
        .zip(p.values())
        .map(|(w, v)| w * v)
        .sum();
    Scalar::new(value)
}

/// Condition `sigma` by the effect `p`:
/// `sigma|_p(x) = sigma(x) * p(x) / (sigma |= p)`.
///
/// Undefined (an error) when the validity is not above `DEFAULT_EPS`.
pub fn condition(sigma: &State, p: &Effect) -> Result<State> {
    condition_within(sigma, p, DEFAULT_EPS)
}

pub fn condition_within(sigma: &State, p: &Effect, eps: f64) -> Result<State> {
    let v = validity(sigma, p)?.value();
    if v <= eps {
        return Err(Error::ZeroValidity { validity: v, eps });
    }
    let weights = sigma
        .weights()
        .iter()
        .zip(p.values())
        .map(|(w, pv)| w * pv / v)
        .collect();
    State::new(sigma.space().clone(), weights)
}

/// Effect transformation `c^*(q)(x) = sum_y c(x)(y) * q(y)`.
pub fn predicate_transform(c: &Channel, q: &Effect) -> Result<Effect> {
    if c.cod() != q.space() {
        return Err(Error::SpaceMismatch {
            context: "effect transformation",
        });
    }
    let values = (0..c.dom().len())
        .map(|x| {
            c.row(x)
                .iter()
                .zip(q.values())
                .map(|(w, v)| w * v)
                .sum::<f64>()
        })
        .collect();
    Effect::new(c.dom().clone(), values)
}

/// Weakening `1 (x) q`: extend `q` to `left (x) Y` by ignoring the left
/// wires.
pub fn weaken(q: &Effect, left: &ProductSpace) -> Effect {
    let space = left.tensor(q.space());
    let ny = q.space().len();
    let values = (0..space.len()).map(|i| q.value(i % ny)).collect();
    Effect {
        space,
        values,
    }
}

/// Embed `q` into a larger space: `q` reads the wires selected by `mask`,
/// every other wire is ignored. `weaken(q, left)` is the special case where
/// the mask covers a trailing block.
pub fn weaken_into(space: &ProductSpace, mask: &Mask, q: &Effect) -> Result<Effect> {
    let selected = space.select(mask)?;
    if &selected != q.space() {
        return Err(Error::SpaceMismatch {
            context: "effect weakening",
        });
    }
    let dims = space.dims();
    let mut digits = vec![0usize; dims.len()];
    let values = (0..space.len())
        .map(|i| {
            crate::state::decompose_into(i, &dims, &mut digits);
            let mut sub = 0;
            for (wire, &d) in digits.iter().enumerate() {
                if mask.bit(wire) {
                    sub = sub * dims[wire] + d;
                }
            }
            q.value(sub)
        })
        .collect();
    Effect::new(space.clone(), values)
}

/// The three routes of the crossover equality.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CrossoverPath {
    /// Condition the kept marginal by the effect pulled back through the
    /// forward conditional.
    Backward,
    /// Condition the joint by the weakened effect, then marginalise.
    JointThenMarginal,
    /// Condition the other marginal, then push through the reverse
    /// conditional.
    Forward,
}

/// Posterior on the wires selected by `keep` after observing the effect
/// `q` on the remaining wires, computed along the requested path.
///
/// The three paths agree whenever the validity is positive; computing more
/// than one is a useful cross-check.
pub fn crossover(omega: &State, keep: &Mask, q: &Effect, path: CrossoverPath) -> Result<State> {
    if keep.len() != omega.space().wires() {
        return Err(Error::MaskLength {
            expected: omega.space().wires(),
            found: keep.len(),
        });
    }
    if keep.all_ones() || keep.all_zeros() {
        return Err(Error::DegenerateMask);
    }
    let rest = !keep;
    if omega.space().select(&rest)? != *q.space() {
        return Err(Error::SpaceMismatch {
            context: "crossover effect",
        });
    }
    match path {
        CrossoverPath::Backward => {
            let c1 = extract(omega, &rest, keep)?;
            let pulled = predicate_transform(&c1, q)?;
            condition(&omega.marginal(keep)?, &pulled)
        }
        CrossoverPath::JointThenMarginal => {
            let weakened = weaken_into(omega.space(), &rest, q)?;
            condition(omega, &weakened)?.marginal(keep)
        }
        CrossoverPath::Forward => {
            let c2 = extract(omega, keep, &rest)?;
            let conditioned = condition(&omega.marginal(&rest)?, q)?;
            c2.apply(&conditioned)
        }
    }
}
