//! Property tests over random small defining graphs and characters.

use proptest::prelude::*;

use sigma_artin::complex::SimplicialComplex;
use sigma_artin::graph::{abelianization_classes, Character, DefiningGraph};
use sigma_artin::homology::{euler_characteristic, reduced_homology, Ring};
use sigma_artin::kernel::{build_cyclic_cover, spherical_nerve};
use sigma_artin::sigma::{kernel_finiteness, Analysis, Answer, Flags};

const N_MAX: usize = 3;

fn instance() -> impl Strategy<Value = (DefiningGraph, Vec<i64>)> {
    (2usize..=5)
        .prop_flat_map(|n| {
            let pairs = n * (n - 1) / 2;
            (
                Just(n),
                prop::collection::vec(prop::sample::select(vec![0u32, 2, 2, 3, 3, 4, 5, 6]), pairs),
                prop::collection::vec(-2i64..=2, n),
            )
        })
        .prop_filter_map("nonzero character", |(n, labels, values)| {
            let names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
            let mut g = DefiningGraph::with_vertices(&names).ok()?;
            let mut k = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if labels[k] != 0 {
                        g.add_edge(u, v, labels[k]).ok()?;
                    }
                    k += 1;
                }
            }
            let ab = abelianization_classes(&g);
            let classes: Vec<i64> = values[..ab.rank()].to_vec();
            classes.iter().any(|&x| x != 0).then_some((g, classes))
        })
}

fn verdicts(g: &DefiningGraph, chi: &Character) -> Vec<(Answer, bool)> {
    let a = Analysis::new(g, chi, Flags::for_graph(g)).unwrap();
    a.profile(N_MAX).unwrap().into_iter().map(|v| (v.answer, v.conflict.is_some())).collect()
}

fn clash(a: Answer, b: Answer) -> bool {
    matches!((a, b), (Answer::In, Answer::Out) | (Answer::Out, Answer::In))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 96, ..ProptestConfig::default() })]

    #[test]
    fn no_conflicting_certificates((g, classes) in instance()) {
        let chi = Character::from_class_values(&g, &classes).unwrap();
        for (n, (_, conflict)) in verdicts(&g, &chi).into_iter().enumerate() {
            prop_assert!(!conflict, "conflict at n = {}", n + 1);
        }
    }

    #[test]
    fn sign_symmetric((g, classes) in instance()) {
        let chi = Character::from_class_values(&g, &classes).unwrap();
        let plus = verdicts(&g, &chi);
        let minus = verdicts(&g, &chi.negated());
        for (p, m) in plus.iter().zip(&minus) {
            prop_assert!(!clash(p.0, m.0));
        }
    }

    #[test]
    fn scaling_invariant((g, classes) in instance()) {
        let chi = Character::from_class_values(&g, &classes).unwrap();
        let scaled: Vec<i64> = classes.iter().map(|x| 3 * x).collect();
        let chi3 = Character::from_class_values(&g, &scaled).unwrap();
        prop_assert_eq!(verdicts(&g, &chi), verdicts(&g, &chi3));
    }

    #[test]
    fn monotone_in_degree((g, classes) in instance()) {
        let chi = Character::from_class_values(&g, &classes).unwrap();
        let v = verdicts(&g, &chi);
        for w in v.windows(2) {
            prop_assert!(!(w[0].0 == Answer::Out && w[1].0 == Answer::In));
        }
    }

    #[test]
    fn kernel_finiteness_matches_both_signs((g, classes) in instance()) {
        let chi = Character::from_class_values(&g, &classes).unwrap();
        for n in 1..=N_MAX {
            let k = kernel_finiteness(&g, &chi, n, Flags::for_graph(&g)).unwrap();
            let s = Analysis::new(&g, &chi, Flags::for_graph(&g)).unwrap().verdict(n).unwrap();
            prop_assert!(!clash(k.answer, s.answer));
        }
    }

    #[test]
    fn boundary_squares_to_zero((g, classes) in instance()) {
        let chi = Character::from_class_values(&g, &classes).unwrap();
        let cover = build_cyclic_cover(&g, &chi).unwrap();
        for k in 2..cover.boundary.len() {
            prop_assert!(cover.boundary[k - 1].mul(&cover.boundary[k]).is_zero());
        }
    }

    #[test]
    fn nerve_euler_characteristic_matches_betti((g, _) in instance()) {
        let nerve: SimplicialComplex = spherical_nerve(&g);
        let h = reduced_homology(&nerve, Ring::Integers);
        let alternating: i64 = h.degrees.iter().map(|d| if d.degree % 2 == 0 { d.rank as i64 } else { -(d.rank as i64) }).sum();
        prop_assert_eq!(alternating, euler_characteristic(&nerve) - 1);
    }
}
