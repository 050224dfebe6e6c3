use tcg::collapse::{
    check_theorem, check_wit_vs_witplus, compatible_counts, upsilon, wit, wit_plus, Atlas, Atlases,
};
use tcg::fixtures::{deadlock_pair, epilogue1, epilogue2, ex1, ex1_mutated, ex1_tables, repr};
use tcg::strategies::{compose, no_deadlock, validate_strategy, Axiom, Strategy};
use tcg::symmetry::{is_canonical, Flavor};
use tcg::EventSet;

fn class_of(g: &tcg::Tcg, x: EventSet) -> usize {
    g.class_of(x).unwrap()
}

fn full_b(s: &Strategy) -> EventSet {
    EventSet::full(s.right.len())
}

#[test]
fn epilogue1_counts() {
    let (s, t) = epilogue1().unwrap();
    let at = Atlases::canonical(&s, &t).unwrap();
    let comp = compose(&s, &t).unwrap();
    let (a1, b1, c1) = (class_of(&s.left, EventSet::full(1)), class_of(&s.right, full_b(&s)), class_of(&t.right, EventSet::full(1)));
    assert_eq!(wit(&comp, a1, c1).unwrap().len(), 2);
    assert_eq!(wit(&s, a1, b1).unwrap().len(), 1);
    assert_eq!(wit(&t, b1, c1).unwrap().len(), 1);
    assert_eq!(wit_plus(&s, &at.a, &at.b, a1, b1).unwrap().len(), 2);
    assert_eq!(wit_plus(&t, &at.b, &at.c, b1, c1).unwrap().len(), 1);
    let rep = check_theorem(&s, &t, &at).unwrap();
    assert!(rep.passes(), "{:?}", rep.failures());
    let e = rep.entries.iter().find(|e| e.a == a1 && e.c == c1).unwrap();
    assert_eq!(e.values[0], tcg::collapse::Q::from_integer(2));
    let w = check_wit_vs_witplus(&s, &t, &at).unwrap();
    let e = w.entries.iter().find(|e| e.a == a1 && e.c == c1).unwrap();
    assert_eq!((e.wit_composite, e.wit_product), (2, 1));
    assert!(e.witnesses_agree());
}

#[test]
fn epilogue2_counts() {
    let (s, t) = epilogue2().unwrap();
    let at = Atlases::canonical(&s, &t).unwrap();
    let comp = compose(&s, &t).unwrap();
    let a = class_of(&s.left, EventSet::full(2));
    // [q] ⊸ q on the right: the root and one copy
    let c = class_of(&t.right, [0, 2].into_iter().collect());
    assert_eq!(wit(&comp, a, c).unwrap().len(), 2);
    let w = check_wit_vs_witplus(&s, &t, &at).unwrap();
    let e = w.entries.iter().find(|e| e.a == a && e.c == c).unwrap();
    assert_eq!((e.wit_composite, e.wit_product), (2, 1));
    assert!(e.witnesses_agree());
    assert!(check_theorem(&s, &t, &at).unwrap().passes());
}

#[test]
fn ex1_outcomes() {
    for tables in ex1_tables() {
        let (s, t) = ex1(&tables).unwrap();
        let comp = compose(&s, &t).unwrap();
        let tops: Vec<usize> = (0..comp.es.len()).filter(|&e| comp.es.succs(e).is_empty()).collect();
        assert_eq!(tops.len(), 4);
        for (i, &x) in tops.iter().enumerate() {
            for &y in &tops[i + 1..] {
                assert!(comp.es.in_conflict(x, y));
                let hx = comp.es.history(x);
                let hy = comp.es.history(y);
                assert!(!comp.sym_related(hx, hy).unwrap());
            }
        }
        let at = Atlases::canonical(&s, &t).unwrap();
        assert!(no_deadlock(&s, &t).unwrap());
        assert!(check_theorem(&s, &t, &at).unwrap().passes());
    }
}

#[test]
fn ex1_mutated_fails_thinness() {
    let m = ex1_mutated(&ex1_tables()[0]).unwrap();
    assert!(validate_strategy(&m).unwrap().fails(Axiom::Thinness));
}

#[test]
fn representability_example() {
    let r = repr().unwrap();
    let b = &r.tau.left;
    assert!(!is_canonical(b, r.x_bar).unwrap());
    assert!(is_canonical(b, r.x_bar_prime).unwrap());
    let cb = class_of(b, r.x_bar);
    assert_eq!(cb, class_of(b, r.x_bar_prime));
    let ac = Atlas::canonical(&r.tau.right).unwrap();
    let c1 = class_of(&r.tau.right, EventSet::singleton(0));
    let bad = Atlas::canonical(b).unwrap().with_rep(b, r.x_bar).unwrap();
    let good = Atlas::canonical(b).unwrap().with_rep(b, r.x_bar_prime).unwrap();
    assert_eq!(wit_plus(&r.tau, &bad, &ac, cb, c1).unwrap().len(), 2);
    let w = wit_plus(&r.tau, &good, &ac, cb, c1).unwrap();
    assert_eq!(w.len(), 1);
    let proj = r.tau.proj_left(w[0]);
    assert_eq!(b.count(Flavor::Neg, proj, r.x_bar_prime).unwrap(), 2);

    let mut at = Atlases::canonical(&r.sigma, &r.tau).unwrap();
    at.b = bad;
    let rep = check_theorem(&r.sigma, &r.tau, &at).unwrap();
    assert!(!rep.passes());
    for e in rep.failures() {
        assert_eq!(e.broken_step(), Some((6, 7)));
    }
}

#[test]
fn deadlock_breaks_theorem_but_not_compatible_counts() {
    let (s, t) = deadlock_pair().unwrap();
    assert!(!no_deadlock(&s, &t).unwrap());
    let at = Atlases::canonical(&s, &t).unwrap();
    let rep = check_theorem(&s, &t, &at).unwrap();
    assert!(!rep.passes());
    let c = class_of(&t.right, EventSet::singleton(0));
    let e = rep.entries.iter().find(|e| e.c == c).unwrap();
    assert_eq!(e.values[0], tcg::collapse::Q::from_integer(0));
    assert_eq!(e.values[7], tcg::collapse::Q::from_integer(1));
    let b = class_of(&s.right, full_b(&s));
    let q = compatible_counts(&s, &t, &at, 0, b, c).unwrap();
    assert!(q.holds());
    assert_eq!(q.compatible, 0);
    assert_eq!(q.product, 1);
}

#[test]
fn upsilon_on_epilogue1() {
    let (s, t) = epilogue1().unwrap();
    let at = Atlases::canonical(&s, &t).unwrap();
    let a = class_of(&s.left, EventSet::full(1));
    let b = class_of(&s.right, full_b(&s));
    let c = class_of(&t.right, EventSet::full(1));
    let u = upsilon(&s, &t, &at, a, b, c).unwrap();
    assert_eq!(u.pairs.len(), u.codomain);
    assert_eq!(u.codomain, 4);
}
