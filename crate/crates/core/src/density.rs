//! The 1D density fragment: channels from a finite space into the real
//! line, represented by per-input density functions against a reference
//! measure, and Bayesian inversion at point observations.
//!
//! This powers hybrid classifiers where some features are real-valued: the
//! posterior over the finite input space given a point observation is
//! `prior(p) * prod_i l_i(p, obs_i)`, renormalised. Constant factors in any
//! likelihood cancel, which is why evaluating densities at a point (rather
//! than integrating over a small interval) is the right computation.

use std::f64::consts::TAU;
use std::str::FromStr;

use crate::channel::Channel;
use crate::error::{Error, Result};
use crate::space::Space;
use crate::state::State;

/// Width of the effective support of a Gaussian, in standard deviations on
/// each side. Tail mass beyond this is ~1e-15, far below every tolerance
/// used here.
pub const GAUSSIAN_SUPPORT_SIGMAS: f64 = 8.0;

/// Default subinterval count for quadrature checks.
pub const DEFAULT_QUADRATURE_N: usize = 1024;

/// A Gaussian density with validated parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Gaussian {
    mean: f64,
    stddev: f64,
}

impl Gaussian {
    pub fn new(mean: f64, stddev: f64) -> Result<Self> {
        if !(stddev.is_finite() && stddev > 0.0) || !mean.is_finite() {
            return Err(Error::InvalidStddev { stddev });
        }
        Ok(Gaussian { mean, stddev })
    }

    pub fn mean(&self) -> f64 {
        self.mean
    }

    pub fn stddev(&self) -> f64 {
        self.stddev
    }

    pub fn density(&self, x: f64) -> f64 {
        let z = (x - self.mean) / self.stddev;
        (-0.5 * z * z).exp() / (self.stddev * TAU.sqrt())
    }

    /// The interval carrying all but ~1e-15 of the mass.
    pub fn effective_support(&self) -> (f64, f64) {
        (
            self.mean - GAUSSIAN_SUPPORT_SIGMAS * self.stddev,
            self.mean + GAUSSIAN_SUPPORT_SIGMAS * self.stddev,
        )
    }
}

/// Standard normal-family pdf value.
pub fn gaussian_density(mean: f64, stddev: f64, x: f64) -> Result<f64> {
    Ok(Gaussian::new(mean, stddev)?.density(x))
}

/// Composite Simpson quadrature with `n` (even) subintervals.
pub fn simpson(f: impl Fn(f64) -> f64, lo: f64, hi: f64, n: usize) -> Result<f64> {
    if n < 2 || !n.is_multiple_of(2) {
        return Err(Error::BadQuadratureCount { n });
    }
    if !lo.is_finite() || !hi.is_finite() || lo >= hi {
        return Err(Error::BadQuadratureBounds { lo, hi });
    }
    let h = (hi - lo) / n as f64;
    let mut acc = f(lo) + f(hi);
    for i in 1..n {
        let weight = if i % 2 == 1 { 4.0 } else { 2.0 };
        acc += weight * f(lo + i as f64 * h);
    }
    Ok(acc * h / 3.0)
}

/// A density, tabulated as piecewise-linear knots on a bounded interval.
#[derive(Debug, Clone, PartialEq)]
pub struct PiecewiseLinear {
    xs: Vec<f64>,
    ys: Vec<f64>,
}

impl PiecewiseLinear {
    pub fn new(xs: Vec<f64>, ys: Vec<f64>) -> Result<Self> {
        if xs.len() != ys.len() || xs.len() < 2 {
            return Err(Error::DimensionMismatch {
                expected: xs.len().max(2),
                found: ys.len(),
                context: "piecewise-linear knots",
            });
        }
        if !xs.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::BadQuadratureBounds {
                lo: xs[0],
                hi: *xs.last().unwrap(),
            });
        }
        for (index, &y) in ys.iter().enumerate() {
            if !(y.is_finite() && y >= 0.0) {
                return Err(Error::InvalidWeight { value: y, index });
            }
        }
        Ok(PiecewiseLinear { xs, ys })
    }

    pub fn bounds(&self) -> (f64, f64) {
        (self.xs[0], *self.xs.last().unwrap())
    }

    /// Linear interpolation inside the knots, zero outside.
    pub fn density(&self, x: f64) -> f64 {
        if x < self.xs[0] || x > *self.xs.last().unwrap() {
            return 0.0;
        }
        let k = match self.xs.binary_search_by(|p| p.partial_cmp(&x).unwrap()) {
            Ok(exact) => return self.ys[exact],
            Err(insert) => insert - 1,
        };
        let t = (x - self.xs[k]) / (self.xs[k + 1] - self.xs[k]);
        self.ys[k] + t * (self.ys[k + 1] - self.ys[k])
    }

    /// Exact integral (trapezoid on the knot grid).
    pub fn integral(&self) -> f64 {
        self.xs
            .windows(2)
            .zip(self.ys.windows(2))
            .map(|(x, y)| (x[1] - x[0]) * (y[0] + y[1]) / 2.0)
            .sum()
    }
}

/// The measure a density family is written against.
#[derive(Debug, Clone, PartialEq)]
pub enum ReferenceMeasure {
    /// Lebesgue measure on a bounded interval of the real line.
    LebesgueInterval { lo: f64, hi: f64 },
    /// Counting measure on a finite space; densities are plain rows.
    CountingFinite(Space),
}

/// One density per input label.
#[derive(Debug, Clone, PartialEq)]
pub enum DensityFn {
    Gaussian(Gaussian),
    PiecewiseLinear(PiecewiseLinear),
    /// Weights per label of the counting reference space.
    Rows(Vec<f64>),
}

/// An observed value fed to a feature evaluator: a label for discrete
/// features, a real for density features.
#[derive(Debug, Clone, PartialEq)]
pub enum FeatureValue {
    Label(String),
    Real(f64),
}

impl FeatureValue {
    pub fn label(text: impl Into<String>) -> Self {
        FeatureValue::Label(text.into())
    }
}

/// A channel from a finite space into a measured space, represented by one
/// density per input label against a shared reference measure.
///
/// Every row must integrate to 1 against the reference (within 1e-6); this
/// is checked at construction.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityFamily {
    input_space: Space,
    reference: ReferenceMeasure,
    densities: Vec<DensityFn>,
}

impl DensityFamily {
    const NORMALIZATION_TOL: f64 = 1e-6;

    /// Gaussian family, one `(mean, stddev)` pair per input label. The
    /// reference interval covers every member's effective support.
    pub fn gaussian(input_space: Space, params: &[(f64, f64)]) -> Result<Self> {
        if params.len() != input_space.len() {
            return Err(Error::DimensionMismatch {
                expected: input_space.len(),
                found: params.len(),
                context: "gaussian parameters per label",
            });
        }
        let densities: Vec<DensityFn> = params
            .iter()
            .map(|&(mean, stddev)| Gaussian::new(mean, stddev).map(DensityFn::Gaussian))
            .collect::<Result<_>>()?;
        let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
        for d in &densities {
            if let DensityFn::Gaussian(g) = d {
                let (a, b) = g.effective_support();
                lo = lo.min(a);
                hi = hi.max(b);
            }
        }
        let family = DensityFamily {
            input_space,
            reference: ReferenceMeasure::LebesgueInterval { lo, hi },
            densities,
        };
        family.check_normalization()?;
        Ok(family)
    }

    /// Tabulated piecewise-linear family; the reference interval is the
    /// union of the knot ranges.
    pub fn piecewise_linear(input_space: Space, curves: Vec<PiecewiseLinear>) -> Result<Self> {
        if curves.len() != input_space.len() {
            return Err(Error::DimensionMismatch {
                expected: input_space.len(),
                found: curves.len(),
                context: "curves per label",
            });
        }
        let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
        for c in &curves {
            let (a, b) = c.bounds();
            lo = lo.min(a);
            hi = hi.max(b);
        }
        let family = DensityFamily {
            input_space,
            reference: ReferenceMeasure::LebesgueInterval { lo, hi },
            densities: curves.into_iter().map(DensityFn::PiecewiseLinear).collect(),
        };
        family.check_normalization()?;
        Ok(family)
    }

    /// Discrete family: the rows of a channel read against counting
    /// measure on its (single-wire) codomain.
    pub fn counting(channel: &Channel) -> Result<Self> {
        if channel.dom().wires() != 1 || channel.cod().wires() != 1 {
            return Err(Error::SpaceMismatch {
                context: "counting density family needs single-wire spaces",
            });
        }
        let input_space = channel.dom().factor(0).clone();
        let out_space = channel.cod().factor(0).clone();
        let densities = (0..input_space.len())
            .map(|x| DensityFn::Rows(channel.row(x).to_vec()))
            .collect();
        let family = DensityFamily {
            input_space,
            reference: ReferenceMeasure::CountingFinite(out_space),
            densities,
        };
        family.check_normalization()?;
        Ok(family)
    }

    pub fn input_space(&self) -> &Space {
        &self.input_space
    }

    pub fn reference(&self) -> &ReferenceMeasure {
        &self.reference
    }

    pub fn densities(&self) -> &[DensityFn] {
        &self.densities
    }

    /// Likelihood of the observation under the density for `input`.
    pub fn evaluate(&self, input: usize, observation: &FeatureValue) -> Result<f64> {
        match (&self.densities[input], observation) {
            (DensityFn::Gaussian(g), FeatureValue::Real(x)) => Ok(g.density(*x)),
            (DensityFn::PiecewiseLinear(p), FeatureValue::Real(x)) => Ok(p.density(*x)),
            (DensityFn::Rows(row), FeatureValue::Label(label)) => {
                let ReferenceMeasure::CountingFinite(space) = &self.reference else {
                    return Err(Error::SpaceMismatch {
                        context: "rows need a counting reference",
                    });
                };
                Ok(row[space.index_of(label)?])
            }
            (DensityFn::Rows(_), FeatureValue::Real(_)) => Err(Error::SpaceMismatch {
                context: "discrete feature observed as a real",
            }),
            (_, FeatureValue::Label(_)) => Err(Error::SpaceMismatch {
                context: "density feature observed as a label",
            }),
        }
    }

    /// True when the family evaluates labels rather than reals.
    pub fn is_discrete(&self) -> bool {
        matches!(self.reference, ReferenceMeasure::CountingFinite(_))
    }

    fn check_normalization(&self) -> Result<()> {
        for (i, d) in self.densities.iter().enumerate() {
            let integral = match d {
                DensityFn::Gaussian(g) => {
                    let (lo, hi) = g.effective_support();
                    simpson(|x| g.density(x), lo, hi, DEFAULT_QUADRATURE_N)?
                }
                DensityFn::PiecewiseLinear(p) => p.integral(),
                DensityFn::Rows(row) => row.iter().sum(),
            };
            if (integral - 1.0).abs() > Self::NORMALIZATION_TOL {
                return Err(Error::UnnormalizedDensity {
                    label: self.input_space.label(i).to_string(),
                    integral,
                });
            }
        }
        Ok(())
    }
}

/// Bayesian inversion at a point observation:
/// `posterior(p) = prior(p) * prod_i l_i(p, obs_i) / denominator`.
///
/// Errors when every input label gets zero total likelihood.
pub fn likelihood_invert(
    prior: &State,
    features: &[DensityFamily],
    observation: &[FeatureValue],
) -> Result<State> {
    if prior.space().wires() != 1 {
        return Err(Error::SpaceMismatch {
            context: "likelihood inversion prior must live on a single wire",
        });
    }
    let class_space = prior.space().factor(0);
    for family in features {
        if family.input_space() != class_space {
            return Err(Error::SpaceMismatch {
                context: "feature input space must match the prior",
            });
        }
    }
    if observation.len() != features.len() {
        return Err(Error::TupleArity {
            expected: features.len(),
            found: observation.len(),
        });
    }

    let mut weights = Vec::with_capacity(class_space.len());
    for p in 0..class_space.len() {
        let mut w = prior.weight(p);
        for (family, obs) in features.iter().zip(observation) {
            if w == 0.0 {
                break;
            }
            w *= family.evaluate(p, obs)?;
        }
        weights.push(w);
    }
    let total: f64 = weights.iter().sum();
    if total <= 0.0 {
        return Err(Error::AllFeaturesImpossible);
    }
    State::new(
        prior.space().clone(),
        weights.iter().map(|w| w / total).collect(),
    )
}

/// Pointwise reciprocal on the support: `q(i) = 1/p(i)` where
/// `p(i) > support_eps`, else 0.
pub fn almost_inverse(values: &[f64], support_eps: f64) -> Vec<f64> {
    values
        .iter()
        .map(|&v| if v > support_eps { 1.0 / v } else { 0.0 })
        .collect()
}

/// Parsed form of a Gaussian feature parameter override, written as
/// `feature=temperature;class=y;mean=73;stddev=6.2`.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussianFeatureSpec {
    pub feature: String,
    pub class: String,
    pub mean: f64,
    pub stddev: f64,
}

impl FromStr for GaussianFeatureSpec {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut feature = None;
        let mut class = None;
        let mut mean = None;
        let mut stddev = None;
        let mut position = 0;
        for part in text.split(';') {
            let (key, value) = part.split_once('=').ok_or_else(|| Error::Parse {
                what: "gaussian feature spec",
                position,
                message: format!("expected key=value, got `{}`", part.trim()),
            })?;
            let value = value.trim();
            let parse_num = |slot: &str| -> Result<f64> {
                value.parse().map_err(|_| Error::Parse {
                    what: "gaussian feature spec",
                    position: position + key.len() + 1,
                    message: format!("invalid {slot} `{value}`"),
                })
            };
            match key.trim() {
                "feature" => feature = Some(value.to_string()),
                "class" => class = Some(value.to_string()),
                "mean" => mean = Some(parse_num("mean")?),
                "stddev" => stddev = Some(parse_num("stddev")?),
                other => {
                    return Err(Error::Parse {
                        what: "gaussian feature spec",
                        position,
                        message: format!("unknown key `{other}`"),
                    })
                }
            }
            position += part.len() + 1;
        }
        let missing = |what: &str| Error::Parse {
            what: "gaussian feature spec",
            position: text.len(),
            message: format!("missing `{what}`"),
        };
        let spec = GaussianFeatureSpec {
            feature: feature.ok_or_else(|| missing("feature"))?,
            class: class.ok_or_else(|| missing("class"))?,
            mean: mean.ok_or_else(|| missing("mean"))?,
            stddev: stddev.ok_or_else(|| missing("stddev"))?,
        };
        if !(spec.stddev.is_finite() && spec.stddev > 0.0) || !spec.mean.is_finite() {
            return Err(Error::InvalidStddev {
                stddev: spec.stddev,
            });
        }
        Ok(spec)
    }
}
