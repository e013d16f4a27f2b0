//! Finite probability done with states and channels.
//!
//! A [`State`] is a weight table over a finite product of labelled spaces; a
//! [`Channel`] carries one such table per input tuple. Everything else is
//! built from four moves:
//!
//! - **marginalise** — discard wires of a joint state ([`State::marginal`]);
//! - **integrate** — combine a state and a channel into a joint state
//!   ([`integrate`]);
//! - **disintegrate** — the inverse: split a joint state into a marginal and
//!   a conditional channel ([`disintegrate`], [`extract`]);
//! - **invert** — Bayes' rule as a channel in the reverse direction
//!   ([`bayes_invert`], [`likelihood_invert`]).
//!
//! On top of these sit conditioning by [`Effect`]s with the three-way
//! crossover equality ([`crossover`]), conditional independence with its
//! equivalent formulations ([`cond_indep`], [`ci_formulation`]), and a 1D
//! density fragment for Gaussian-feature classifiers ([`DensityFamily`]).
//!
//! ```
//! use chanprob::{disintegrate, integrate, ProductSpace, Space, State};
//!
//! let space = ProductSpace::new(vec![
//!     Space::binary("Mood", "m", "mbar"),
//!     Space::binary("Disease", "d", "dbar"),
//! ]);
//! let omega = State::new(space, vec![0.05, 0.4, 0.5, 0.05]).unwrap();
//!
//! // condition on the mood wire, then rebuild the joint
//! let d = disintegrate(&omega, &"1,0".parse().unwrap()).unwrap();
//! let rebuilt = integrate(&d.base, &d.channel).unwrap();
//! assert!(rebuilt.linf(&omega).unwrap() <= 1e-12);
//! ```
//!
//! All values are immutable after construction and every operation is a
//! pure function of its inputs, so values can be shared freely across
//! threads.

mod channel;
mod density;
mod disintegration;
mod effects;
mod error;
mod independence;
mod mask;
mod space;
mod state;

pub use channel::Channel;
pub use density::{
    almost_inverse, gaussian_density, likelihood_invert, simpson, DensityFamily, DensityFn,
    FeatureValue, Gaussian, GaussianFeatureSpec, PiecewiseLinear, ReferenceMeasure,
};
pub use disintegration::{
    almost_equal, almost_equal_within, bayes_invert, disintegrate, disintegrate_with, extract,
    integrate, invert_via_projection, is_coupling, reconstruct, Disintegration, FillPolicy,
};
pub use effects::{
    condition, condition_within, crossover, predicate_transform, validity, weaken, weaken_into,
    CrossoverPath, Effect,
};
pub use error::{Error, Result};
pub use independence::{ci_formulation, cond_indep, cond_indep_within, Formulation, WireGroups};
pub use mask::Mask;
pub use space::{ProductSpace, Space};
pub use state::{Scalar, State};

/// Default absolute tolerance for causality, support and validity checks.
pub const DEFAULT_EPS: f64 = 1e-9;

/// Default tolerance for conditional-independence checks; products of
/// conditionals amplify rounding, so this is looser than [`DEFAULT_EPS`].
pub const CI_EPS: f64 = 1e-7;

#[cfg(test)]
pub(crate) mod testutil {
    use crate::{Channel, ProductSpace, Space, State};

    /// The 14-row weather table as an empirical state over
    /// Outlook x Temperature x Humidity x Windy x Play.
    pub fn weather_state() -> State {
        let space = weather_space();
        let rows: Vec<Vec<&str>> = weather_rows();
        State::from_rows(space, &rows).unwrap()
    }

    pub fn weather_space() -> ProductSpace {
        ProductSpace::new(vec![
            Space::new("Outlook", ["s", "o", "r"]).unwrap(),
            Space::new("Temperature", ["h", "m", "c"]).unwrap(),
            Space::new("Humidity", ["h", "n"]).unwrap(),
            Space::new("Windy", ["f", "t"]).unwrap(),
            Space::new("Play", ["y", "n"]).unwrap(),
        ])
    }

    pub fn weather_rows() -> Vec<Vec<&'static str>> {
        vec![
            vec!["s", "h", "h", "f", "n"],
            vec!["s", "h", "h", "t", "n"],
            vec!["o", "h", "h", "f", "y"],
            vec!["r", "m", "h", "f", "y"],
            vec!["r", "c", "n", "f", "y"],
            vec!["r", "c", "n", "t", "n"],
            vec!["o", "c", "n", "t", "y"],
            vec!["s", "m", "h", "f", "n"],
            vec!["s", "c", "n", "f", "y"],
            vec!["r", "m", "n", "f", "y"],
            vec!["s", "m", "n", "t", "y"],
            vec!["o", "m", "h", "t", "y"],
            vec!["o", "h", "n", "f", "y"],
            vec!["r", "m", "h", "t", "n"],
        ]
    }

    /// The entwined mood/disease joint state from the crossover example.
    pub fn mood_disease() -> State {
        let space = ProductSpace::new(vec![
            Space::binary("Mood", "m", "mbar"),
            Space::binary("Disease", "d", "dbar"),
        ]);
        State::new(space, vec![0.05, 0.4, 0.5, 0.05]).unwrap()
    }

    /// Tolerance check with a hair of slack for values that sit exactly on
    /// the stated tolerance (e.g. 0.4825 against the printed 0.482).
    pub fn close(got: f64, want: f64, tol: f64) -> bool {
        (got - want).abs() <= tol + 1e-12
    }

    /// Deterministic xorshift stream in [0, 1).
    pub struct TestRng(u64);

    impl TestRng {
        pub fn new(seed: u64) -> Self {
            TestRng(seed.wrapping_mul(0x9e3779b97f4a7c15).wrapping_add(1))
        }

        pub fn next_f64(&mut self) -> f64 {
            self.0 ^= self.0 << 13;
            self.0 ^= self.0 >> 7;
            self.0 ^= self.0 << 17;
            (self.0 >> 11) as f64 / (1u64 << 53) as f64
        }
    }

    /// Pseudo-random row-stochastic channel; rows are bounded away from 0.
    pub fn rowstoch(dom: &ProductSpace, cod: &ProductSpace, seed: u64) -> Channel {
        let mut rng = TestRng::new(seed);
        let mut rows = vec![0.0; dom.len() * cod.len()];
        for x in 0..dom.len() {
            let row = &mut rows[x * cod.len()..(x + 1) * cod.len()];
            let mut total = 0.0;
            for w in row.iter_mut() {
                *w = rng.next_f64() + 1e-3;
                total += *w;
            }
            for w in row.iter_mut() {
                *w /= total;
            }
        }
        Channel::new(dom.clone(), cod.clone(), rows).unwrap()
    }

    /// Pseudo-random causal state with full support.
    pub fn random_state(space: &ProductSpace, seed: u64) -> State {
        let mut rng = TestRng::new(seed ^ 0xabcd_1234);
        let mut weights: Vec<f64> = (0..space.len()).map(|_| rng.next_f64() + 1e-3).collect();
        let total: f64 = weights.iter().sum();
        for w in weights.iter_mut() {
            *w /= total;
        }
        State::new(space.clone(), weights).unwrap()
    }
}
