use crate::error::{Error, Result};
use crate::mask::Mask;
use crate::space::{is_permutation, ProductSpace};
use crate::state::State;
use crate::DEFAULT_EPS;

/// A weight table over the codomain for each input tuple: the dense form
/// of a Kleisli map. Causal channels have every row summing to 1.
///
/// Rows are stored contiguously, row-major, indexed mixed-radix on both
/// sides.
#[derive(Debug, Clone, PartialEq)]
pub struct Channel {
    dom: ProductSpace,
    cod: ProductSpace,
    rows: Vec<f64>,
}

impl Channel {
    pub fn new(dom: ProductSpace, cod: ProductSpace, rows: Vec<f64>) -> Result<Self> {
        if rows.len() != dom.len() * cod.len() {
            return Err(Error::DimensionMismatch {
                expected: dom.len() * cod.len(),
                found: rows.len(),
                context: "channel table",
            });
        }
        for (index, &w) in rows.iter().enumerate() {
            if !(w.is_finite() && w >= 0.0) {
                return Err(Error::InvalidWeight { value: w, index });
            }
        }
        Ok(Channel { dom, cod, rows })
    }

    /// Build from a function of (input index, output index).
    pub fn from_fn(
        dom: ProductSpace,
        cod: ProductSpace,
        f: impl Fn(usize, usize) -> f64,
    ) -> Channel {
        let mut rows = Vec::with_capacity(dom.len() * cod.len());
        for x in 0..dom.len() {
            for y in 0..cod.len() {
                rows.push(f(x, y));
            }
        }
        Channel { dom, cod, rows }
    }

    /// Deterministic channel given by an index map.
    pub fn deterministic(
        dom: ProductSpace,
        cod: ProductSpace,
        f: impl Fn(usize) -> usize,
    ) -> Channel {
        Channel::from_fn(dom, cod, |x, y| if f(x) == y { 1.0 } else { 0.0 })
    }

    pub fn identity(space: &ProductSpace) -> Channel {
        Channel::deterministic(space.clone(), space.clone(), |x| x)
    }

    /// The copier `x -> |x,x>` on a wire bundle.
    pub fn copier(space: &ProductSpace) -> Channel {
        let n = space.len();
        Channel::deterministic(space.clone(), space.tensor(space), move |x| x * n + x)
    }

    /// The discarder into the tensor unit.
    pub fn discarder(space: &ProductSpace) -> Channel {
        Channel::from_fn(space.clone(), ProductSpace::unit(), |_, _| 1.0)
    }

    /// Swap `A (x) B -> B (x) A`.
    pub fn swap(a: &ProductSpace, b: &ProductSpace) -> Channel {
        let (na, nb) = (a.len(), b.len());
        Channel::deterministic(a.tensor(b), b.tensor(a), move |i| {
            let (x, y) = (i / nb, i % nb);
            y * na + x
        })
    }

    /// Deterministic wire shuffle: output wire `k` carries input wire `perm[k]`.
    pub fn wire_permutation(space: &ProductSpace, perm: &[usize]) -> Result<Channel> {
        if !is_permutation(perm, space.wires()) {
            return Err(Error::DimensionMismatch {
                expected: space.wires(),
                found: perm.len(),
                context: "wire permutation",
            });
        }
        let cod = space.permuted(perm);
        let dims = space.dims();
        let perm = perm.to_vec();
        let dom = space.clone();
        Ok(Channel::deterministic(dom, cod.clone(), move |i| {
            let mut digits = vec![0usize; dims.len()];
            crate::state::decompose_into(i, &dims, &mut digits);
            let image: Vec<usize> = perm.iter().map(|&p| digits[p]).collect();
            cod.compose_digits(&image)
        }))
    }

    /// Projection onto the wires selected by `mask` (discard the rest).
    pub fn projection(space: &ProductSpace, mask: &Mask) -> Result<Channel> {
        let cod = space.select(mask)?;
        let dims = space.dims();
        let mask = mask.clone();
        let cod_for_fn = cod.clone();
        Ok(Channel::deterministic(space.clone(), cod, move |i| {
            let mut digits = vec![0usize; dims.len()];
            crate::state::decompose_into(i, &dims, &mut digits);
            let kept: Vec<usize> = digits
                .iter()
                .enumerate()
                .filter(|(w, _)| mask.bit(*w))
                .map(|(_, &d)| d)
                .collect();
            cod_for_fn.compose_digits(&kept)
        }))
    }

    /// Channel that ignores its input and emits `state`.
    pub fn constant(dom: ProductSpace, state: &State) -> Channel {
        let weights = state.weights().to_vec();
        Channel::from_fn(dom, state.space().clone(), |_, y| weights[y])
    }

    pub fn dom(&self) -> &ProductSpace {
        &self.dom
    }

    pub fn cod(&self) -> &ProductSpace {
        &self.cod
    }

    pub fn row(&self, x: usize) -> &[f64] {
        let n = self.cod.len();
        &self.rows[x * n..(x + 1) * n]
    }

    pub fn entry(&self, x: usize, y: usize) -> f64 {
        self.rows[x * self.cod.len() + y]
    }

    /// The row at an input tuple, as a state on the codomain.
    pub fn row_state(&self, labels: &[&str]) -> Result<State> {
        let x = self.dom.index_of(labels)?;
        State::new(self.cod.clone(), self.row(x).to_vec())
    }

    /// Sequential composition `g o f` where `self` is `f`:
    /// `(g o f)(x)(z) = sum_y f(x)(y) * g(y)(z)`.
    pub fn then(&self, g: &Channel) -> Result<Channel> {
        if self.cod != g.dom {
            return Err(Error::SpaceMismatch {
                context: "sequential composition",
            });
        }
        let (nx, ny, nz) = (self.dom.len(), self.cod.len(), g.cod.len());
        let mut rows = vec![0.0; nx * nz];
        for x in 0..nx {
            for y in 0..ny {
                let fxy = self.rows[x * ny + y];
                if fxy == 0.0 {
                    continue;
                }
                for z in 0..nz {
                    rows[x * nz + z] += fxy * g.rows[y * nz + z];
                }
            }
        }
        Ok(Channel {
            dom: self.dom.clone(),
            cod: g.cod.clone(),
            rows,
        })
    }

    /// Parallel composition: `(f (x) g)(x,z)(y,w) = f(x)(y) * g(z)(w)`.
    pub fn tensor(&self, g: &Channel) -> Channel {
        let dom = self.dom.tensor(&g.dom);
        let cod = self.cod.tensor(&g.cod);
        let (ny, nw) = (self.cod.len(), g.cod.len());
        let nz = g.dom.len();
        Channel::from_fn(dom, cod, |i, j| {
            let (x, z) = (i / nz, i % nz);
            let (y, w) = (j / nw, j % nw);
            self.rows[x * ny + y] * g.rows[z * nw + w]
        })
    }

    /// State transformation `c_*(sigma)(y) = sum_x c(x)(y) * sigma(x)`.
    pub fn apply(&self, sigma: &State) -> Result<State> {
        if self.dom != *sigma.space() {
            return Err(Error::SpaceMismatch {
                context: "state transformation",
            });
        }
        let ny = self.cod.len();
        let mut weights = vec![0.0; ny];
        for (x, &mass) in sigma.weights().iter().enumerate() {
            if mass == 0.0 {
                continue;
            }
            for (y, out) in weights.iter_mut().enumerate() {
                *out += self.rows[x * ny + y] * mass;
            }
        }
        State::new(self.cod.clone(), weights)
    }

    pub fn is_causal(&self) -> bool {
        self.is_causal_within(DEFAULT_EPS)
    }

    /// Causal iff every row sums to 1 within `eps`.
    pub fn is_causal_within(&self, eps: f64) -> bool {
        let ny = self.cod.len();
        (0..self.dom.len()).all(|x| {
            let sum: f64 = self.rows[x * ny..(x + 1) * ny].iter().sum();
            (sum - 1.0).abs() <= eps
        })
    }

    pub fn linf(&self, other: &Channel) -> Result<f64> {
        if self.dom != other.dom || self.cod != other.cod {
            return Err(Error::SpaceMismatch {
                context: "channel comparison",
            });
        }
        Ok(self
            .rows
            .iter()
            .zip(&other.rows)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::Space;
    use crate::testutil::rowstoch;

    fn two(name: &str) -> ProductSpace {
        Space::binary(name, "0", "1").into()
    }

    fn disease_test_channel() -> Channel {
        let d: ProductSpace = Space::binary("Disease", "d", "dbar").into();
        let t: ProductSpace = Space::binary("Test", "t", "f").into();
        Channel::new(d, t, vec![0.9, 0.1, 0.05, 0.95]).unwrap()
    }

    #[test]
    fn identity_is_neutral_for_composition() {
        let c = disease_test_channel();
        let id_dom = Channel::identity(c.dom());
        let id_cod = Channel::identity(c.cod());
        assert_eq!(id_dom.then(&c).unwrap(), c);
        assert_eq!(c.then(&id_cod).unwrap(), c);
    }

    #[test]
    fn point_state_through_test_channel() {
        // c(d) = 9/10|t> + 1/10|f>
        let c = disease_test_channel();
        let point = State::point(c.dom().clone(), &["d"]).unwrap();
        let out = c.apply(&point).unwrap();
        assert_eq!(out.weights(), &[0.9, 0.1]);
    }

    #[test]
    fn composition_matches_triple_loop_oracle() {
        let x = ProductSpace::new(vec![Space::new("X", ["a", "b", "c"]).unwrap()]);
        let y = ProductSpace::new(vec![Space::new("Y", ["p", "q", "r", "s"]).unwrap()]);
        let z = two("Z");
        // fixed pseudo-random causal rows
        let f = rowstoch(&x, &y, 11);
        let g = rowstoch(&y, &z, 23);
        let composed = f.then(&g).unwrap();

        let mut oracle = vec![0.0; x.len() * z.len()];
        for i in 0..x.len() {
            for k in 0..z.len() {
                let mut acc = 0.0;
                for j in 0..y.len() {
                    acc += f.entry(i, j) * g.entry(j, k);
                }
                oracle[i * z.len() + k] = acc;
            }
        }
        let oracle = Channel::new(x, z, oracle).unwrap();
        assert!(composed.linf(&oracle).unwrap() <= 1e-12);
        assert!(composed.is_causal_within(1e-9));
    }

    #[test]
    fn tensor_of_identities_and_points() {
        let x = two("X");
        let z = ProductSpace::new(vec![Space::new("Z", ["u", "v", "w"]).unwrap()]);
        let idx = Channel::identity(&x);
        let idz = Channel::identity(&z);
        assert_eq!(idx.tensor(&idz), Channel::identity(&x.tensor(&z)));

        let px = State::point(x, &["1"]).unwrap();
        let pz = State::point(z, &["v"]).unwrap();
        let pair = px.tensor(&pz);
        assert_eq!(pair.weight_of(&["1", "v"]).unwrap(), 1.0);
        assert_eq!(pair.mass(), 1.0);
    }

    #[test]
    fn tensor_preserves_row_stochasticity() {
        let x = two("X");
        let y = ProductSpace::new(vec![Space::new("Y", ["p", "q", "r"]).unwrap()]);
        let f = rowstoch(&x, &y, 5);
        let g = rowstoch(&y, &x, 7);
        let t = f.tensor(&g);
        assert!(t.is_causal_within(1e-12));
    }

    #[test]
    fn comonoid_laws_hold_bitwise() {
        let x = ProductSpace::new(vec![Space::new("X", ["a", "b", "c"]).unwrap()]);
        let copy = Channel::copier(&x);
        let id = Channel::identity(&x);
        let discard = Channel::discarder(&x);

        // counit on both sides
        let left = copy.then(&discard.tensor(&id)).unwrap();
        let right = copy.then(&id.tensor(&discard)).unwrap();
        assert_eq!(left, id);
        assert_eq!(right, id);

        // coassociativity
        let assoc_l = copy.then(&copy.tensor(&id)).unwrap();
        let assoc_r = copy.then(&id.tensor(&copy)).unwrap();
        assert_eq!(assoc_l, assoc_r);

        // cocommutativity
        let swapped = copy.then(&Channel::swap(&x, &x)).unwrap();
        assert_eq!(swapped, copy);
    }

    #[test]
    fn swap_is_an_involution() {
        let a = two("A");
        let b = ProductSpace::new(vec![Space::new("B", ["x", "y", "z"]).unwrap()]);
        let s = Channel::swap(&a, &b);
        let s_back = Channel::swap(&b, &a);
        assert_eq!(s.then(&s_back).unwrap(), Channel::identity(&a.tensor(&b)));
    }

    #[test]
    fn comonoid_is_compatible_with_tensor() {
        let x = two("X");
        let y = ProductSpace::new(vec![Space::new("Y", ["u", "v", "w"]).unwrap()]);
        let xy = x.tensor(&y);

        // discarder on X (x) Y = discarder (x) discarder
        let d_joint = Channel::discarder(&xy);
        let d_split = Channel::discarder(&x).tensor(&Channel::discarder(&y));
        assert_eq!(d_joint, d_split);

        // copier on X (x) Y = per-factor copiers followed by the middle swap
        let c_joint = Channel::copier(&xy);
        let shuffle = Channel::identity(&x)
            .tensor(&Channel::swap(&x, &y))
            .tensor(&Channel::identity(&y));
        let c_split = Channel::copier(&x)
            .tensor(&Channel::copier(&y))
            .then(&shuffle)
            .unwrap();
        assert_eq!(c_joint, c_split);
    }

    #[test]
    fn copier_duplicates_marginal_weights() {
        // copier on {m, mbar} applied to 0.45|m> + 0.55|mbar>
        let m: ProductSpace = Space::binary("Mood", "m", "mbar").into();
        let sigma = State::new(m.clone(), vec![0.45, 0.55]).unwrap();
        let copied = Channel::copier(&m).apply(&sigma).unwrap();
        assert_eq!(copied.weight_of(&["m", "m"]).unwrap(), 0.45);
        assert_eq!(copied.weight_of(&["mbar", "mbar"]).unwrap(), 0.55);
        assert_eq!(copied.weight_of(&["m", "mbar"]).unwrap(), 0.0);
    }

    #[test]
    fn identity_and_discarder_transform_states() {
        let x = two("X");
        let sigma = State::new(x.clone(), vec![0.3, 0.7]).unwrap();
        assert_eq!(Channel::identity(&x).apply(&sigma).unwrap(), sigma);
        let discarded = Channel::discarder(&x).apply(&sigma).unwrap();
        assert!(discarded.space().is_unit());
        assert!((discarded.mass() - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn copy_is_not_natural() {
        // a genuinely random f does not commute with copying
        let x = two("X");
        let f = Channel::constant(x.clone(), &State::uniform(x.clone()));
        let lhs = f.then(&Channel::copier(&x)).unwrap();
        let rhs = Channel::copier(&x).then(&f.tensor(&f)).unwrap();
        assert!(lhs.linf(&rhs).unwrap() > 0.2);
    }

    #[test]
    fn zero_channel_is_not_causal() {
        let x = two("X");
        let zero = Channel::new(x.clone(), x, vec![0.0; 4]).unwrap();
        assert!(!zero.is_causal());
    }

    #[test]
    fn interchange_law() {
        let x = two("X");
        let y = ProductSpace::new(vec![Space::new("Y", ["p", "q", "r"]).unwrap()]);
        let z = two("Z");
        let f = rowstoch(&x, &y, 3);
        let g = rowstoch(&y, &z, 13);
        let h = rowstoch(&z, &x, 17);
        let k = rowstoch(&x, &y, 29);

        let lhs = f.then(&g).unwrap().tensor(&h.then(&k).unwrap());
        let rhs = f.tensor(&h).then(&g.tensor(&k)).unwrap();
        assert!(lhs.linf(&rhs).unwrap() <= 1e-12);
    }
}
