use std::collections::{BTreeMap, HashSet};

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tcg::game_constructions::{
    bang_ajm, bang_ho, dual, is_negative, linear_arrow, parallel, shift_down, shift_up, sum, CopyBound,
};
use tcg::generate::{random_arena, random_game, random_negative_game, GameParams};
use tcg::symmetry::{check_family_axioms, factorizations, is_canonical, is_representable, Flavor};
use tcg::{EventSet, Polarity, Tcg};

const BUDGET: usize = 5_000_000;

fn small() -> GameParams {
    GameParams { max_events: 6, max_bound: 3, depth: 3 }
}

fn game(seed: u64) -> Tcg {
    random_game(&mut ChaCha8Rng::seed_from_u64(seed), &small())
}

fn representable(g: &Tcg) -> bool {
    is_representable(g).unwrap().representable
}

fn binom(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn constructed_games_are_families(seed in any::<u64>()) {
        let g = game(seed);
        let r = check_family_axioms(&g, BUDGET).unwrap();
        prop_assert!(r.passes(), "{:?}", r.violations);
        prop_assert!(r.polar_overlaps.is_empty());
    }

    #[test]
    fn classes_partition_configurations(seed in any::<u64>()) {
        let g = game(seed);
        let mut seen = HashSet::new();
        for (i, c) in g.symmetry_classes().unwrap().iter().enumerate() {
            prop_assert!(c.members.contains(&c.chosen_rep));
            for &x in &c.members {
                prop_assert!(seen.insert(x));
                prop_assert_eq!(g.class_of(x).unwrap(), i);
                prop_assert!(g.related(Flavor::Full, x, c.chosen_rep).unwrap());
            }
        }
        prop_assert_eq!(seen.len(), g.configurations().unwrap().len());
    }

    #[test]
    fn symmetries_factor_uniquely(seed in any::<u64>()) {
        let g = game(seed);
        for c in g.symmetry_classes().unwrap() {
            for &x in &c.members {
                for &y in &c.members {
                    for theta in g.isos(Flavor::Full, x, y).unwrap() {
                        prop_assert_eq!(factorizations(&g, &theta).unwrap().len(), 1);
                    }
                    let pos: HashSet<_> = g.isos(Flavor::Pos, x, y).unwrap().into_iter().collect();
                    for n in g.isos(Flavor::Neg, x, y).unwrap() {
                        prop_assert!(!pos.contains(&n) || (x == y && n.is_identity()));
                    }
                }
            }
        }
    }

    #[test]
    fn canonical_configurations_split_their_symmetries(seed in any::<u64>()) {
        let g = game(seed);
        for &x in g.configurations().unwrap() {
            if is_canonical(&g, x).unwrap() {
                let full = g.count(Flavor::Full, x, x).unwrap();
                let neg = g.count(Flavor::Neg, x, x).unwrap();
                let pos = g.count(Flavor::Pos, x, x).unwrap();
                prop_assert_eq!(full, neg * pos);
            }
        }
    }

    /// Every `θ : x ≅ x̄` with `x ≅⁺ x̄` is `θ⁺` then `θ⁻` for exactly one
    /// positive `θ⁺ : x ≅⁺ x̄` and negative endosymmetry `θ⁻` of `x̄`.
    #[test]
    fn symmetries_into_canonical_representatives_decompose(seed in any::<u64>()) {
        let g = game(seed);
        prop_assume!(representable(&g));
        for c in g.symmetry_classes().unwrap() {
            let rep = c.least_canonical.unwrap();
            let negs = g.isos(Flavor::Neg, rep, rep).unwrap();
            for &x in &c.members {
                let poss = g.isos(Flavor::Pos, x, rep).unwrap();
                if poss.is_empty() {
                    continue;
                }
                for theta in g.isos(Flavor::Full, x, rep).unwrap() {
                    let hits = poss.iter().flat_map(|p| negs.iter().map(move |n| p.then(n))).filter(|t| *t == theta).count();
                    prop_assert_eq!(hits, 1);
                }
            }
        }
    }

    #[test]
    fn constructions_preserve_representability(s1 in any::<u64>(), s2 in any::<u64>(), k in 1usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(s1 ^ s2.rotate_left(17));
        let g = game(s1);
        let h = game(s2);
        prop_assume!(representable(&g) && representable(&h));
        prop_assert!(representable(&dual(&g)));
        prop_assert!(representable(&shift_up(&g)));
        prop_assert!(representable(&shift_down(&g)));
        if g.len() + h.len() <= 9 {
            prop_assert!(representable(&parallel(&g, &h)));
            prop_assert!(representable(&sum(&[g.clone(), h.clone()])));
        }
        let n = random_negative_game(&mut rng, &GameParams { max_events: 3, max_bound: 2, depth: 1 });
        if n.len() * k <= 9 {
            let b = bang_ajm(&n, CopyBound(k)).unwrap();
            prop_assert!(representable(&b));
            prop_assert!(check_family_axioms(&b, BUDGET).unwrap().passes());
        }
        if is_negative(&g) && g.len() + 2 <= 9 {
            let m = g.clone();
            let right = shift_up(&tcg::game_constructions::atom(Polarity::Negative, "r"));
            let arrow = linear_arrow(&m, &right).unwrap();
            prop_assert!(representable(&arrow));
        }
        let first = if rng.gen_bool(0.5) { Polarity::Negative } else { Polarity::Positive };
        let arena = random_arena(&mut rng, first);
        if let Ok(b) = bang_ho(&arena, CopyBound(k)) {
            if b.len() <= 7 {
                prop_assert!(representable(&b));
                prop_assert!(check_family_axioms(&b, BUDGET).unwrap().passes());
            }
        }
    }

    /// Classes of `!N` with `k` copies are the multisets of at most `k`
    /// non-empty classes of `N`.
    #[test]
    fn exponential_classes_are_multisets(seed in any::<u64>(), k in 1usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = random_negative_game(&mut rng, &GameParams { max_events: 3, max_bound: 2, depth: 1 });
        prop_assume!(n.len() * k <= 9);
        let b = bang_ajm(&n, CopyBound(k)).unwrap();
        let len = n.len();
        let m = n.symmetry_classes().unwrap().len() - 1;
        let empty = n.class_of(EventSet::EMPTY).unwrap();
        let multiset = |x: EventSet| {
            let mut v: Vec<usize> = (0..k)
                .map(|i| n.class_of(x.slice(i * len, len)).unwrap())
                .filter(|&c| c != empty)
                .collect();
            v.sort();
            v
        };
        let mut by_class: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        let mut images = HashSet::new();
        for &x in b.configurations().unwrap() {
            let ms = multiset(x);
            let c = b.class_of(x).unwrap();
            match by_class.get(&c) {
                Some(prev) => prop_assert_eq!(prev, &ms),
                None => {
                    prop_assert!(images.insert(ms.clone()));
                    by_class.insert(c, ms);
                }
            }
        }
        prop_assert_eq!(by_class.len(), binom(m + k, k));
    }
}

