use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tcg::collapse::{
    act, canonical_atlases, check_theorem, collapse, compatible_counts, swit_plus_game, Atlas, Atlases,
};
use tcg::generate::{random_pair_crossing, GameParams};
use tcg::strategies::{
    compose, interaction, is_minimal_state, is_plus_covered_state, is_secured, no_deadlock, pcov_bijection,
    state_projection, validate_strategy, weak_bipullback_all, State, Strategy, StrategySym,
};
use tcg::symmetry::{ConfigIso, Flavor};
use tcg::{SymmetrySpec, Tcg};

fn pair(seed: u64) -> Option<(Strategy, Strategy)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_pair_crossing(&mut rng, &GameParams::default(), seed % 4 == 0).unwrap()
}

fn classes(g: &Tcg) -> usize {
    g.symmetry_classes().unwrap().len()
}

/// The same strategy under another symmetry, if that one is admissible.
fn resymmetrized(s: &Strategy, spec: SymmetrySpec) -> Option<Strategy> {
    let alt = Strategy::new(&s.name, s.es.clone(), StrategySym::Spec(spec), s.left.clone(), s.right.clone(), s.label.clone())
        .unwrap();
    (alt.sym != s.sym && validate_strategy(&alt).unwrap().passes()).then_some(alt)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn minimal_states_by_brute_force(seed in any::<u64>()) {
        let Some((s, t)) = pair(seed) else { return Ok(()) };
        let states = interaction(&s, &t).unwrap().states;
        for &w in &states {
            let (xa, _, xc) = state_projection(&s, &t, w);
            let smaller = states.iter().any(|&v| {
                v != w && v.is_subset(w) && {
                    let (va, _, vc) = state_projection(&s, &t, v);
                    va == xa && vc == xc
                }
            });
            prop_assert_eq!(is_minimal_state(&s, &t, w), !smaller);
            if is_plus_covered_state(&s, &t, w) {
                prop_assert!(is_minimal_state(&s, &t, w));
            }
        }
        let comp = compose(&s, &t).unwrap();
        prop_assert!(validate_strategy(&comp).unwrap().passes());
        let pcov = pcov_bijection(&s, &t, &comp).unwrap();
        let n = comp.configurations().unwrap().iter().filter(|&&z| comp.es.is_plus_covered(z)).count();
        prop_assert_eq!(pcov.len(), n);
    }

    #[test]
    fn synchronizations_are_unique_up_to_symmetry(seed in any::<u64>()) {
        let Some((s, t)) = pair(seed) else { return Ok(()) };
        let b = &s.right;
        let mut checked = 0;
        'outer: for &xs in s.configurations().unwrap() {
            if !s.es.is_plus_covered(xs) {
                continue;
            }
            for &xt in t.configurations().unwrap() {
                let (bs, bt) = (s.proj_right(xs), t.proj_left(xt));
                if !t.es.is_plus_covered(xt) || bs.len() != bt.len() {
                    continue;
                }
                for theta in b.isos(Flavor::Full, bs, bt).unwrap() {
                    if !is_secured(&s, &t, State { s: xs, t: xt }, Some(&theta)) {
                        continue;
                    }
                    let sols = weak_bipullback_all(&s, &t, xs, xt, &theta).unwrap();
                    prop_assert!(!sols.is_empty());
                    for r in &sols {
                        prop_assert!(s.sym_related(sols[0].y_s, r.y_s).unwrap());
                        prop_assert!(t.sym_related(sols[0].y_t, r.y_t).unwrap());
                    }
                    checked += 1;
                    if checked > 20 {
                        break 'outer;
                    }
                }
            }
        }
    }

    #[test]
    fn negative_symmetries_act_on_witnesses(seed in any::<u64>()) {
        let Some((s, _)) = pair(seed) else { return Ok(()) };
        let ag = Atlas::canonical(&s.game).unwrap();
        for class in 0..classes(&s.game) {
            let ws = swit_plus_game(&s, &ag, class).unwrap();
            let rep = ag.rep(class);
            let negs = s.game.isos(Flavor::Neg, rep, rep).unwrap();
            for w in ws.iter().take(4) {
                prop_assert_eq!(&act(&s, &ConfigIso::identity(rep), w).unwrap(), w);
                for g1 in negs.iter().take(6) {
                    let once = act(&s, g1, w).unwrap();
                    prop_assert!(ws.contains(&once));
                    for g2 in negs.iter().take(6) {
                        let twice = act(&s, g2, &once).unwrap();
                        prop_assert_eq!(twice, act(&s, &g1.then(g2), w).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn compatible_pairs_fill_the_product_without_deadlock(seed in any::<u64>()) {
        let Some((s, t)) = pair(seed) else { return Ok(()) };
        let at = Atlases::canonical(&s, &t).unwrap();
        let live = no_deadlock(&s, &t).unwrap();
        for a in 0..classes(&s.left) {
            for b in 0..classes(&s.right) {
                for c in 0..classes(&t.right) {
                    let q = compatible_counts(&s, &t, &at, a, b, c).unwrap();
                    prop_assert!(q.holds(), "{:?}", q);
                    if live {
                        prop_assert_eq!(q.compatible, q.product);
                    }
                }
            }
        }
    }

    #[test]
    fn witness_counts_ignore_the_choice_of_representatives(seed in any::<u64>()) {
        let Some((s, t)) = pair(seed) else { return Ok(()) };
        let at = Atlases::canonical(&s, &t).unwrap();
        let base = collapse(&s, &at.a, &at.b).unwrap();
        let live = no_deadlock(&s, &t).unwrap();
        for class in 0..classes(&s.right) {
            for alt in canonical_atlases(&s.right, class).unwrap() {
                let other = collapse(&s, &at.a, &alt).unwrap();
                for i in 0..base.rows.len() {
                    for j in 0..base.cols.len() {
                        prop_assert_eq!(base.get(i, j), other.get(i, j));
                    }
                }
                if live {
                    let at2 = Atlases { b: alt, ..at.clone() };
                    prop_assert!(check_theorem(&s, &t, &at2).unwrap().passes());
                }
            }
        }
    }

    #[test]
    fn alternative_strategy_symmetries(seed in any::<u64>()) {
        let Some((s, t)) = pair(seed) else { return Ok(()) };
        prop_assume!(no_deadlock(&s, &t).unwrap());
        let at = Atlases::canonical(&s, &t).unwrap();
        let comp = compose(&s, &t).unwrap();
        let base = collapse(&comp, &at.a, &at.c).unwrap();
        for spec in [SymmetrySpec::AllOrderIsos, SymmetrySpec::Identities] {
            let Some(alt) = resymmetrized(&s, spec) else { continue };
            let comp2 = compose(&alt, &t).unwrap();
            prop_assert_eq!(&collapse(&comp2, &at.a, &at.c).unwrap(), &base);
            prop_assert!(check_theorem(&alt, &t, &at).unwrap().passes());
        }
    }
}
