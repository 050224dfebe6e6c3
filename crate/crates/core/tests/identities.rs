use tcg::collapse::{
    elim_sym_interaction, elim_sym_strategy, compatible_counts, f_fibers, sym_sizes, upsilon, Atlas, Atlases,
};
use tcg::fixtures::{ex1, ex1_id_and_swap, ex1_tables, pairs};
use tcg::strategies::{compose, no_deadlock, pcov_bijection};
use tcg::Tcg;

fn class_count(g: &Tcg) -> usize {
    g.symmetry_classes().unwrap().len()
}

#[test]
fn counting_identities_on_every_triple() {
    for (name, s, t) in pairs().unwrap() {
        let at = Atlases::canonical(&s, &t).unwrap();
        let live = no_deadlock(&s, &t).unwrap();
        for a in 0..class_count(&s.left) {
            for b in 0..class_count(&s.right) {
                for c in 0..class_count(&t.right) {
                    let q = compatible_counts(&s, &t, &at, a, b, c).unwrap();
                    assert!(q.holds(), "{} ({},{},{}): {:?}", name, a, b, c, q);
                    let (l, r) = elim_sym_strategy(&s, &at.a, &at.b, a, b).unwrap();
                    assert_eq!(l, r, "{} σ ({},{})", name, a, b);
                    let (l, r) = elim_sym_strategy(&t, &at.b, &at.c, b, c).unwrap();
                    assert_eq!(l, r, "{} τ ({},{})", name, b, c);
                    let (l, r) = elim_sym_interaction(&s, &t, &at, a, b, c).unwrap();
                    assert_eq!(l, r, "{} int ({},{},{})", name, a, b, c);
                    if live && q.compatible > 0 {
                        let u = upsilon(&s, &t, &at, a, b, c).unwrap();
                        assert_eq!(u.pairs.len(), q.compatible);
                    }
                }
            }
        }
    }
}

#[test]
fn canonical_representatives_factor() {
    for (name, s, t) in pairs().unwrap() {
        for g in [&s.left, &s.right, &t.right] {
            let atlas = Atlas::canonical(g).unwrap();
            for &x in atlas.reps() {
                let z = sym_sizes(g, x).unwrap();
                assert!(z.factors(), "{}: {} has {:?}", name, g.describe(x), z);
            }
        }
    }
}

#[test]
fn f_fibers_have_sym_neg_elements() {
    for (name, s, t) in pairs().unwrap() {
        let comp = compose(&s, &t).unwrap();
        for sigma in [&s, &t, &comp] {
            let ag = Atlas::canonical(&sigma.game).unwrap();
            for class in 0..class_count(&sigma.game) {
                let r = f_fibers(sigma, &ag, class).unwrap();
                assert!(r.holds(), "{} class {}: {:?}", name, class, r);
            }
        }
    }
}

#[test]
fn pcov_bijection_on_fixture_compositions() {
    for (name, s, t) in pairs().unwrap() {
        let comp = compose(&s, &t).unwrap();
        let pcov = pcov_bijection(&s, &t, &comp).unwrap();
        let n = comp.configurations().unwrap().iter().filter(|&&z| comp.es.is_plus_covered(z)).count();
        assert_eq!(pcov.len(), n, "{}", name);
    }
}

#[test]
fn ex1_id_and_swap_disagree() {
    for tables in ex1_tables() {
        let (s, t) = ex1(&tables).unwrap();
        let comp = compose(&s, &t).unwrap();
        let (z_id, z_sw) = ex1_id_and_swap(&s, &t, &comp, &tables).unwrap();
        assert!(!comp.sym_related(z_id, z_sw).unwrap());
    }
}
