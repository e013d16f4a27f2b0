//! Extracting conditional channels from joint states, and putting them back.
//!
//! A disintegration splits a joint state into a marginal on the conditioning
//! wires and a channel to the remaining wires, such that integrating the two
//! reconstructs the joint. Bayesian inversion is the same move performed on
//! the joint built from a prior and a channel, read in the other direction.

use crate::channel::Channel;
use crate::error::{Error, Result};
use crate::mask::Mask;
use crate::state::{decompose_into, State};
use crate::DEFAULT_EPS;

/// What to put in a conditional row whose conditioning tuple has no mass.
///
/// The reconstruction law does not constrain those rows; `Uniform` keeps the
/// channel causal and permutation-symmetric, `Error` refuses to choose.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FillPolicy {
    #[default]
    Uniform,
    Error,
}

/// The result of disintegrating a joint state: the conditioning marginal
/// (`base`) and the conditional channel out of it.
#[derive(Debug, Clone, PartialEq)]
pub struct Disintegration {
    pub channel: Channel,
    pub base: State,
    pub fill_policy: FillPolicy,
}

/// Disintegrate `omega` along `mask`: bit 1 marks conditioning/input wires,
/// bit 0 marks output wires.
///
/// For every input tuple `x` with positive base mass the channel row is
/// `omega(x, y) / base(x)`; rows at zero-mass inputs follow the fill policy.
pub fn disintegrate(omega: &State, mask: &Mask) -> Result<Disintegration> {
    disintegrate_with(omega, mask, FillPolicy::Uniform)
}

pub fn disintegrate_with(
    omega: &State,
    mask: &Mask,
    fill_policy: FillPolicy,
) -> Result<Disintegration> {
    if mask.len() != omega.space().wires() {
        return Err(Error::MaskLength {
            expected: omega.space().wires(),
            found: mask.len(),
        });
    }
    if mask.all_ones() || mask.all_zeros() {
        return Err(Error::DegenerateMask);
    }

    let base = omega.marginal(mask)?;
    let input_space = base.space().clone();
    let output_space = omega.space().select(&!mask)?;
    let n_out = output_space.len();

    // accumulate joint weights into (input, output) cells
    let mut rows = vec![0.0; input_space.len() * n_out];
    let dims = omega.space().dims();
    let mut digits = vec![0usize; dims.len()];
    for (index, &w) in omega.weights().iter().enumerate() {
        decompose_into(index, &dims, &mut digits);
        let mut x = 0;
        let mut y = 0;
        for (wire, &d) in digits.iter().enumerate() {
            if mask.bit(wire) {
                x = x * dims[wire] + d;
            } else {
                y = y * dims[wire] + d;
            }
        }
        rows[x * n_out + y] += w;
    }

    for (x, &mass) in base.weights().iter().enumerate() {
        let row = &mut rows[x * n_out..(x + 1) * n_out];
        if mass > 0.0 {
            for w in row.iter_mut() {
                *w /= mass;
            }
        } else {
            match fill_policy {
                FillPolicy::Uniform => row.fill(1.0 / n_out as f64),
                FillPolicy::Error => {
                    return Err(Error::ZeroMassInput {
                        input: input_space.tuple(x).join(","),
                    })
                }
            }
        }
    }

    Ok(Disintegration {
        channel: Channel::new(input_space, output_space, rows)?,
        base,
        fill_policy,
    })
}

/// Conditional channel `omega[[out | in]]`: marginalise to the union of the
/// two masks, then condition on the `in` wires. Output wires keep their
/// original left-to-right order.
pub fn extract(omega: &State, out_mask: &Mask, in_mask: &Mask) -> Result<Channel> {
    out_mask.ensure_disjoint(in_mask)?;
    if out_mask.all_zeros() || in_mask.all_zeros() {
        return Err(Error::EmptyMask);
    }
    let union = out_mask.union(in_mask)?;
    let restricted = in_mask.restrict_to(&union);
    let marginal = omega.marginal(&union)?;
    Ok(disintegrate(&marginal, &restricted)?.channel)
}

/// Integrate a state and a channel into the joint `sigma |> c` on
/// `X (x) Y`, with `(sigma |> c)(x, y) = c(x)(y) * sigma(x)`.
pub fn integrate(sigma: &State, c: &Channel) -> Result<State> {
    if c.dom() != sigma.space() {
        return Err(Error::SpaceMismatch {
            context: "integration",
        });
    }
    let n_out = c.cod().len();
    let mut weights = Vec::with_capacity(sigma.space().len() * n_out);
    for (x, &mass) in sigma.weights().iter().enumerate() {
        for y in 0..n_out {
            weights.push(c.entry(x, y) * mass);
        }
    }
    State::new(sigma.space().tensor(c.cod()), weights)
}

/// Bayesian inversion of `c` with respect to the prior `sigma`:
/// `d(y)(x) = c(x)(y) * sigma(x) / c_*(sigma)(y)`, with uniform rows where
/// the predictive `c_*(sigma)` has no mass.
pub fn bayes_invert(sigma: &State, c: &Channel) -> Result<Channel> {
    if c.dom() != sigma.space() {
        return Err(Error::SpaceMismatch {
            context: "Bayesian inversion",
        });
    }
    let predictive = c.apply(sigma)?;
    let (nx, ny) = (sigma.space().len(), c.cod().len());
    let mut rows = vec![0.0; ny * nx];
    for (y, &py) in predictive.weights().iter().enumerate() {
        let row = &mut rows[y * nx..(y + 1) * nx];
        if py > 0.0 {
            for (x, w) in row.iter_mut().enumerate() {
                *w = c.entry(x, y) * sigma.weight(x) / py;
            }
        } else {
            row.fill(1.0 / nx as f64);
        }
    }
    Channel::new(c.cod().clone(), sigma.space().clone(), rows)
}

/// Disintegration of a joint state obtained through Bayesian inversion:
/// invert the projection onto the `x_mask` wires along the joint itself,
/// then project the result onto the remaining wires.
pub fn invert_via_projection(omega: &State, x_mask: &Mask) -> Result<Channel> {
    if x_mask.len() != omega.space().wires() {
        return Err(Error::MaskLength {
            expected: omega.space().wires(),
            found: x_mask.len(),
        });
    }
    if x_mask.all_ones() || x_mask.all_zeros() {
        return Err(Error::DegenerateMask);
    }
    let pi_x = Channel::projection(omega.space(), x_mask)?;
    let d = bayes_invert(omega, &pi_x)?;
    let pi_y = Channel::projection(omega.space(), &!x_mask)?;
    d.then(&pi_y)
}

/// `sigma`-almost equality: the rows of `c` and `d` agree (within
/// `DEFAULT_EPS`) at every input carrying `sigma`-mass above the support
/// threshold.
pub fn almost_equal(c: &Channel, d: &Channel, sigma: &State) -> Result<bool> {
    almost_equal_within(c, d, sigma, DEFAULT_EPS, DEFAULT_EPS)
}

pub fn almost_equal_within(
    c: &Channel,
    d: &Channel,
    sigma: &State,
    eps: f64,
    support_eps: f64,
) -> Result<bool> {
    if c.dom() != d.dom() || c.cod() != d.cod() {
        return Err(Error::SpaceMismatch {
            context: "almost equality",
        });
    }
    if c.dom() != sigma.space() {
        return Err(Error::SpaceMismatch {
            context: "almost equality base state",
        });
    }
    for (x, &mass) in sigma.weights().iter().enumerate() {
        if mass <= support_eps {
            continue;
        }
        let diff = c
            .row(x)
            .iter()
            .zip(d.row(x))
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        if diff > eps {
            return Ok(false);
        }
    }
    Ok(true)
}

/// True iff `omega` (on `X (x) Y`, split after `sigma`'s wires) has
/// marginals `sigma` and `tau` within `DEFAULT_EPS`.
pub fn is_coupling(omega: &State, sigma: &State, tau: &State) -> Result<bool> {
    let nx = sigma.space().wires();
    let ny = tau.space().wires();
    if omega.space().wires() != nx + ny
        || omega.space().factors()[..nx] != *sigma.space().factors()
        || omega.space().factors()[nx..] != *tau.space().factors()
    {
        return Err(Error::SpaceMismatch { context: "coupling" });
    }
    let mut bits = vec![true; nx];
    bits.resize(nx + ny, false);
    let first = omega.marginal(&Mask::new(bits.clone()))?;
    for b in bits.iter_mut() {
        *b = !*b;
    }
    let second = omega.marginal(&Mask::new(bits))?;
    Ok(first.linf(sigma)? <= DEFAULT_EPS && second.linf(tau)? <= DEFAULT_EPS)
}

/// Reconstruction check helper: reorders the integrated state (inputs then
/// outputs) back to the original wire order of `omega`.
pub fn reconstruct(d: &Disintegration, original_mask: &Mask) -> Result<State> {
    let joint = integrate(&d.base, &d.channel)?;
    let mut perm: Vec<usize> = original_mask.indices();
    perm.extend((!original_mask).indices());
    // perm maps (inputs-then-outputs) positions to original wires; invert it
    let mut inverse = vec![0usize; perm.len()];
    for (pos, &wire) in perm.iter().enumerate() {
        inverse[wire] = pos;
    }
    joint.permute(&inverse)
}
