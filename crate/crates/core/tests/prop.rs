//! Property tests over arbitrary shapes and weight tables.

use chanprob::{integrate, Channel, Mask, ProductSpace, Space, State};
use proptest::collection::vec;
use proptest::prelude::*;

fn arb_space(max_wires: usize, max_size: usize) -> impl Strategy<Value = ProductSpace> {
    vec(2..=max_size, 1..=max_wires).prop_map(|sizes| {
        let names = ["A", "B", "C", "D"];
        ProductSpace::new(
            sizes
                .iter()
                .enumerate()
                .map(|(w, &n)| {
                    let labels: Vec<String> = (0..n).map(|i| format!("{}{i}", names[w])).collect();
                    Space::new(names[w], labels).unwrap()
                })
                .collect(),
        )
    })
}

fn arb_state(max_wires: usize, max_size: usize) -> impl Strategy<Value = State> {
    arb_space(max_wires, max_size).prop_flat_map(|sp| {
        let n = sp.len();
        vec(0.0f64..1.0, n..=n).prop_filter_map("needs positive mass", move |weights| {
            let total: f64 = weights.iter().sum();
            if total <= 0.0 {
                return None;
            }
            let weights = weights.iter().map(|w| w / total).collect();
            Some(State::new(sp.clone(), weights).unwrap())
        })
    })
}

fn arb_mask(wires: usize) -> impl Strategy<Value = Mask> {
    vec(any::<bool>(), wires..=wires).prop_map(Mask::new)
}

proptest! {
    #[test]
    fn mask_text_round_trips(bits in vec(any::<bool>(), 1..12)) {
        let mask = Mask::new(bits);
        let parsed: Mask = mask.to_string().parse().unwrap();
        prop_assert_eq!(parsed, mask);
    }

    #[test]
    fn marginalisation_preserves_mass(
        (omega, mask) in arb_state(3, 4).prop_flat_map(|omega| {
            let wires = omega.space().wires();
            (Just(omega), arb_mask(wires))
        })
    ) {
        let marginal = omega.marginal(&mask).unwrap();
        prop_assert!((marginal.mass() - omega.mass()).abs() <= 1e-12);
    }

    #[test]
    fn tensor_marginals_recover_the_factors(
        sigma in arb_state(1, 5),
        tau in arb_state(1, 5),
    ) {
        let joint = sigma.tensor(&tau);
        let left = joint.marginal(&"1,0".parse().unwrap()).unwrap();
        let right = joint.marginal(&"0,1".parse().unwrap()).unwrap();
        prop_assert!(left.linf(&sigma).unwrap() <= 1e-12);
        prop_assert!(right.linf(&tau).unwrap() <= 1e-12);
    }

    #[test]
    fn integration_marginals_are_the_prior_and_the_predictive(
        (sigma, rows) in arb_state(1, 4).prop_flat_map(|sigma| {
            let nx = sigma.space().len();
            (Just(sigma), vec(0.01f64..1.0, nx * 3..=nx * 3))
        })
    ) {
        let cod = ProductSpace::from(Space::new("Y", ["u", "v", "w"]).unwrap());
        let nx = sigma.space().len();
        let mut rows = rows;
        for row in rows.chunks_mut(3) {
            let total: f64 = row.iter().sum();
            for w in row.iter_mut() {
                *w /= total;
            }
        }
        let c = Channel::new(sigma.space().clone(), cod, rows).unwrap();
        let joint = integrate(&sigma, &c).unwrap();

        let mut keep = vec![true; sigma.space().wires()];
        keep.push(false);
        let first = joint.marginal(&Mask::new(keep.clone())).unwrap();
        prop_assert!(first.linf(&sigma).unwrap() <= 1e-12);

        for b in keep.iter_mut() {
            *b = !*b;
        }
        let second = joint.marginal(&Mask::new(keep)).unwrap();
        prop_assert!(second.linf(&c.apply(&sigma).unwrap()).unwrap() <= 1e-12);
        prop_assert_eq!(nx * 3, joint.space().len());
    }

    #[test]
    fn permutations_are_invertible(
        omega in arb_state(3, 3),
        seed in any::<u64>(),
    ) {
        let wires = omega.space().wires();
        // a permutation derived from the seed
        let mut perm: Vec<usize> = (0..wires).collect();
        let mut s = seed | 1;
        for i in (1..wires).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1);
            perm.swap(i, (s >> 33) as usize % (i + 1));
        }
        let permuted = omega.permute(&perm).unwrap();
        let mut inverse = vec![0usize; wires];
        for (pos, &src) in perm.iter().enumerate() {
            inverse[src] = pos;
        }
        let back = permuted.permute(&inverse).unwrap();
        prop_assert_eq!(back, omega);
    }
}
