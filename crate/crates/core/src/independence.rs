//! Conditional independence of wire groups over a fixed multipartite state.
//!
//! `X` and `Y` are conditionally independent given `Z` when the conditional
//! of the pair factorises: `P(x, y | z) = P(x | z) * P(y | z)` on the
//! support of the `Z` marginal. Three further formulations are provided for
//! cross-checking; all four agree on finite states.

use crate::channel::Channel;
use crate::disintegration::extract;
use crate::error::{Error, Result};
use crate::mask::Mask;
use crate::state::State;
use crate::{CI_EPS, DEFAULT_EPS};

/// Disjoint wire selections for a conditional-independence query
/// `X _||_ Y | Z`. The `z` mask may be all-zero for plain independence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WireGroups {
    x: Mask,
    y: Mask,
    z: Mask,
}

impl WireGroups {
    pub fn new(x: Mask, y: Mask, z: Mask) -> Result<Self> {
        if x.len() != y.len() || x.len() != z.len() {
            return Err(Error::MaskLength {
                expected: x.len(),
                found: if y.len() != x.len() { y.len() } else { z.len() },
            });
        }
        if x.all_zeros() || y.all_zeros() {
            return Err(Error::EmptyMask);
        }
        x.ensure_disjoint(&y)?;
        x.ensure_disjoint(&z)?;
        y.ensure_disjoint(&z)?;
        Ok(WireGroups { x, y, z })
    }

    /// Unconditional grouping: `Z` empty.
    pub fn unconditional(x: Mask, y: Mask) -> Result<Self> {
        let z = Mask::zeros(x.len());
        WireGroups::new(x, y, z)
    }

    pub fn x(&self) -> &Mask {
        &self.x
    }

    pub fn y(&self) -> &Mask {
        &self.y
    }

    pub fn z(&self) -> &Mask {
        &self.z
    }

    /// Swap the roles of X and Y.
    pub fn flipped(&self) -> WireGroups {
        WireGroups {
            x: self.y.clone(),
            y: self.x.clone(),
            z: self.z.clone(),
        }
    }
}

/// The four equivalent formulations of `X _||_ Y | Z`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Formulation {
    /// `P(x,y,z) * P(z) = P(x,z) * P(y,z)` on the support of `Z`.
    CondFactor,
    /// The joint equals prior-on-Z followed by independent conditionals:
    /// `P(x,y,z) = P(x|z) * P(y|z) * P(z)`.
    Factorize3,
    /// Conditioning on `Y` is redundant: the channel `Y (x) Z -> X` is
    /// almost-equal to `Z -> X` with the `Y` input discarded.
    DropY,
    /// Pair factorisation: `P(x,y,z) = P(x|z) * P(y,z)`.
    FactorPair,
}

/// Decide `X _||_ Y | Z` over `omega`, with the default CI tolerance.
///
/// Uses [`Formulation::CondFactor`], which needs no channel extraction and
/// hence no fill-policy choice.
pub fn cond_indep(omega: &State, groups: &WireGroups) -> Result<bool> {
    cond_indep_within(omega, groups, CI_EPS)
}

pub fn cond_indep_within(omega: &State, groups: &WireGroups, eps: f64) -> Result<bool> {
    ci_formulation(omega, groups, Formulation::CondFactor, eps)
}

/// Evaluate one named formulation numerically at tolerance `eps`.
pub fn ci_formulation(
    omega: &State,
    groups: &WireGroups,
    which: Formulation,
    eps: f64,
) -> Result<bool> {
    if groups.x.len() != omega.space().wires() {
        return Err(Error::MaskLength {
            expected: omega.space().wires(),
            found: groups.x.len(),
        });
    }
    match which {
        Formulation::CondFactor => cond_factor(omega, groups, eps),
        Formulation::Factorize3 => factorize3(omega, groups, eps),
        Formulation::DropY => drop_y(omega, groups, eps),
        Formulation::FactorPair => factor_pair(omega, groups, eps),
    }
}

/// Marginal of `omega` reordered into blocks `[X..., Y..., Z...]`.
fn grouped_marginal(omega: &State, groups: &WireGroups) -> Result<State> {
    let union = groups.x.union(&groups.y)?.union(&groups.z)?;
    let marginal = omega.marginal(&union)?;
    // positions of each group's wires inside the union-marginal
    let kept = union.indices();
    let pos_of = |wire: usize| kept.iter().position(|&k| k == wire).unwrap();
    let mut perm: Vec<usize> = Vec::with_capacity(kept.len());
    for &w in &groups.x.indices() {
        perm.push(pos_of(w));
    }
    for &w in &groups.y.indices() {
        perm.push(pos_of(w));
    }
    for &w in &groups.z.indices() {
        perm.push(pos_of(w));
    }
    marginal.permute(&perm)
}

/// Dense [X, Y, Z]-blocked view with the block sizes.
struct Blocked {
    grouped: State,
    nx: usize,
    ny: usize,
    nz: usize,
}

fn blocked(omega: &State, groups: &WireGroups) -> Result<Blocked> {
    let grouped = grouped_marginal(omega, groups)?;
    let nx = omega.space().select(&groups.x)?.len();
    let ny = omega.space().select(&groups.y)?.len();
    let nz = omega.space().select(&groups.z)?.len();
    Ok(Blocked {
        grouped,
        nx,
        ny,
        nz,
    })
}

impl Blocked {
    fn weight(&self, x: usize, y: usize, z: usize) -> f64 {
        self.grouped.weight((x * self.ny + y) * self.nz + z)
    }

    fn p_z(&self, z: usize) -> f64 {
        let mut acc = 0.0;
        for x in 0..self.nx {
            for y in 0..self.ny {
                acc += self.weight(x, y, z);
            }
        }
        acc
    }

    fn p_xz(&self, x: usize, z: usize) -> f64 {
        (0..self.ny).map(|y| self.weight(x, y, z)).sum()
    }

    fn p_yz(&self, y: usize, z: usize) -> f64 {
        (0..self.nx).map(|x| self.weight(x, y, z)).sum()
    }
}

/// Formulation (i), division-free: for every `z` on the support,
/// `|P(x,y,z) * P(z) - P(x,z) * P(y,z)| <= eps * P(z)^2`.
fn cond_factor(omega: &State, groups: &WireGroups, eps: f64) -> Result<bool> {
    let b = blocked(omega, groups)?;
    for z in 0..b.nz {
        let pz = b.p_z(z);
        if pz <= DEFAULT_EPS {
            continue;
        }
        for x in 0..b.nx {
            let pxz = b.p_xz(x, z);
            for y in 0..b.ny {
                if (b.weight(x, y, z) * pz - pxz * b.p_yz(y, z)).abs() > eps * pz * pz {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Formulation (ii): exact state equality of the joint against
/// `P(x|z) * P(y|z) * P(z)`.
fn factorize3(omega: &State, groups: &WireGroups, eps: f64) -> Result<bool> {
    let b = blocked(omega, groups)?;
    if groups.z.all_zeros() {
        // degenerates to the product of the two marginals
        for x in 0..b.nx {
            let px = b.p_xz(x, 0);
            for y in 0..b.ny {
                if (b.weight(x, y, 0) - px * b.p_yz(y, 0)).abs() > eps {
                    return Ok(false);
                }
            }
        }
        return Ok(true);
    }
    let c_xz = extract(omega, &groups.x, &groups.z)?;
    let c_yz = extract(omega, &groups.y, &groups.z)?;
    for z in 0..b.nz {
        let pz = b.p_z(z);
        for x in 0..b.nx {
            for y in 0..b.ny {
                let candidate = c_xz.entry(z, x) * c_yz.entry(z, y) * pz;
                if (b.weight(x, y, z) - candidate).abs() > eps {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Formulation (iii): almost-equality of `X | Y (x) Z` and `X | Z` (with the
/// `Y` input discarded) with respect to the `(Y, Z)` marginal.
fn drop_y(omega: &State, groups: &WireGroups, eps: f64) -> Result<bool> {
    let yz_mask = groups.y.union(&groups.z)?;
    let c_x_yz = extract(omega, &groups.x, &yz_mask)?;
    let via_z: Channel = if groups.z.all_zeros() {
        // X | Y against the bare X marginal
        let px = omega.marginal(&groups.x)?;
        Channel::constant(c_x_yz.dom().clone(), &px)
    } else {
        let c_x_z = extract(omega, &groups.x, &groups.z)?;
        // discard the Y wires of the input, then condition on Z alone
        let z_in_yz = groups.z.restrict_to(&yz_mask);
        Channel::projection(c_x_yz.dom(), &z_in_yz)?.then(&c_x_z)?
    };
    let base = omega.marginal(&yz_mask)?;
    crate::disintegration::almost_equal_within(&c_x_yz, &via_z, &base, eps, DEFAULT_EPS)
}

/// Formulation (iv): exact state equality of the joint against
/// `P(x|z) * P(y,z)`.
fn factor_pair(omega: &State, groups: &WireGroups, eps: f64) -> Result<bool> {
    let b = blocked(omega, groups)?;
    if groups.z.all_zeros() {
        return factorize3(omega, groups, eps);
    }
    let c_xz = extract(omega, &groups.x, &groups.z)?;
    for z in 0..b.nz {
        for x in 0..b.nx {
            for y in 0..b.ny {
                let candidate = c_xz.entry(z, x) * b.p_yz(y, z);
                if (b.weight(x, y, z) - candidate).abs() > eps {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}
