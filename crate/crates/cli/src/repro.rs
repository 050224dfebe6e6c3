//! Reproduces the claims attached to each built-in example.

use tcg::collapse::{check_theorem, check_wit_vs_witplus, compatible_counts, wit, wit_plus, Atlas, Atlases};
use tcg::fixtures::{
    deadlock_pair, devisme, epilogue1, epilogue2, ex1, ex1_id_and_swap, ex1_mutated, ex1_tables, repr,
};
use tcg::strategies::{compose, no_deadlock, validate_strategy, Axiom, Strategy};
use tcg::symmetry::{check_family_axioms, factorize, is_canonical, is_representable};
use tcg::{ConfigIso, EventSet, Flavor};

use crate::commands::{Out, Status};
use crate::CliError;

pub const NAMES: &[&str] = &["ex1", "epilogue1", "epilogue2", "repr", "devisme", "deadlock"];

struct Claims<'a> {
    out: &'a mut Out,
    all: bool,
}

impl Claims<'_> {
    fn claim(&mut self, what: String, ok: bool) {
        self.all &= ok;
        let v = if ok { "PASS" } else { "FAIL" };
        self.out.rec("assertion", &[("claim", what.clone()), ("result", v.into())]);
        self.out.line(format!("{} {}", v, what));
    }
}

fn lib<T>(r: tcg::Result<T>) -> Result<T, CliError> {
    r.map_err(CliError::Lib)
}

pub fn repro(name: &str, out: &mut Out) -> Result<Status, CliError> {
    let mut c = Claims { out, all: true };
    match name {
        "ex1" => ex1_claims(&mut c)?,
        "epilogue1" => {
            let (s, t) = lib(epilogue1())?;
            two_versus_one(&mut c, &s, &t, EventSet::full(1), EventSet::full(1))?;
        }
        "epilogue2" => {
            let (s, t) = lib(epilogue2())?;
            two_versus_one(&mut c, &s, &t, EventSet::full(2), [0, 2].into_iter().collect())?;
        }
        "repr" => repr_claims(&mut c)?,
        "devisme" => devisme_claims(&mut c)?,
        "deadlock" => deadlock_claims(&mut c)?,
        _ => return Err(CliError::Usage(format!("unknown example `{}`; known: {}", name, NAMES.join(", ")))),
    }
    Ok(Status::of(c.all))
}

fn ex1_claims(c: &mut Claims) -> Result<(), CliError> {
    for (i, tables) in ex1_tables().iter().enumerate() {
        let (s, t) = lib(ex1(tables))?;
        let comp = lib(compose(&s, &t))?;
        let tops: Vec<usize> = (0..comp.es.len()).filter(|&e| comp.es.succs(e).is_empty()).collect();
        c.claim(format!("tables {}: τ ⊙ σ has 4 outcome events (found {})", i, tops.len()), tops.len() == 4);
        let mut conflicting = true;
        let mut distinct = true;
        for (k, &x) in tops.iter().enumerate() {
            for &y in &tops[k + 1..] {
                conflicting &= comp.es.in_conflict(x, y);
                distinct &= !lib(comp.sym_related(comp.es.history(x), comp.es.history(y)))?;
            }
        }
        c.claim(format!("tables {}: outcomes pairwise conflicting", i), conflicting);
        c.claim(format!("tables {}: outcomes pairwise non-symmetric", i), distinct);
        let (z_id, z_sw) = lib(ex1_id_and_swap(&s, &t, &comp, tables))?;
        let apart = !lib(comp.sym_related(z_id, z_sw))?;
        c.claim(
            format!("tables {}: synchronizing through id gives {}, through sw gives {}", i, comp.describe(z_id), comp.describe(z_sw)),
            apart,
        );
        let at = lib(Atlases::canonical(&s, &t))?;
        c.claim(format!("tables {}: theorem holds", i), lib(check_theorem(&s, &t, &at))?.passes());
    }
    let m = lib(ex1_mutated(&ex1_tables()[0]))?;
    c.claim("answers under one name break thinness".into(), lib(validate_strategy(&m))?.fails(Axiom::Thinness));
    Ok(())
}

fn two_versus_one(c: &mut Claims, s: &Strategy, t: &Strategy, xa: EventSet, xc: EventSet) -> Result<(), CliError> {
    let at = lib(Atlases::canonical(s, t))?;
    let comp = lib(compose(s, t))?;
    let (a, cc) = (lib(s.left.class_of(xa))?, lib(t.right.class_of(xc))?);
    let (na, nc) = (s.left.describe(xa), t.right.describe(xc));
    let n = lib(wit(&comp, a, cc))?.len();
    c.claim(format!("symmetry classes of witnesses of τ ⊙ σ at ({}, {}): {} = 2", na, nc, n), n == 2);
    let w = lib(check_wit_vs_witplus(s, t, &at))?;
    let e = w.entries.iter().find(|e| e.a == a && e.c == cc);
    let (comp_n, prod_n) = e.map_or((0, 0), |e| (e.wit_composite, e.wit_product));
    c.claim(format!("products of component witness classes sum to {} = 1, so {} ≠ {}", prod_n, comp_n, prod_n), comp_n == 2 && prod_n == 1);
    let agree = e.is_some_and(|e| e.witnesses_agree());
    let (pc, pp) = e.map_or((0, 0), |e| (e.wit_plus_composite, e.wit_plus_product));
    c.claim(format!("counted against canonical representatives: {} = {}", pc, pp), agree);
    c.claim("theorem holds".into(), lib(check_theorem(s, t, &at))?.passes());
    Ok(())
}

fn repr_claims(c: &mut Claims) -> Result<(), CliError> {
    let r = lib(repr())?;
    let b = &r.tau.left;
    let (x, xp) = (r.x_bar, r.x_bar_prime);
    c.claim(format!("{} is not canonical", b.describe(x)), !lib(is_canonical(b, x))?);
    c.claim(format!("{} is canonical", b.describe(xp)), lib(is_canonical(b, xp))?);
    let cb = lib(b.class_of(x))?;
    c.claim("both lie in one symmetry class".into(), lib(b.class_of(xp))? == cb);
    let ac = lib(Atlas::canonical(&r.tau.right))?;
    let c1 = lib(r.tau.right.class_of(EventSet::singleton(0)))?;
    let bad = lib(lib(Atlas::canonical(b))?.with_rep(b, x))?;
    let good = lib(lib(Atlas::canonical(b))?.with_rep(b, xp))?;
    let n_bad = lib(wit_plus(&r.tau, &bad, &ac, cb, c1))?.len();
    let w = lib(wit_plus(&r.tau, &good, &ac, cb, c1))?;
    c.claim(format!("witnesses against the non-canonical representative: {} = 2", n_bad), n_bad == 2);
    c.claim(format!("witnesses against the canonical representative: {} = 1", w.len()), w.len() == 1);
    if let [w0] = w.as_slice() {
        // positive for B⊥ is negative for B
        let k = lib(b.count(Flavor::Neg, r.tau.proj_left(*w0), xp))?;
        c.claim(format!("the witness has {} = 2 positive symmetries to it", k), k == 2);
    }
    let mut at = lib(Atlases::canonical(&r.sigma, &r.tau))?;
    at.b = bad;
    let rep = lib(check_theorem(&r.sigma, &r.tau, &at))?;
    let steps: Vec<Option<(usize, usize)>> = rep.failures().iter().map(|e| e.broken_step()).collect();
    let localized = !steps.is_empty() && steps.iter().all(|s| *s == Some((6, 7)));
    c.claim("with the non-canonical representative the theorem fails between steps 6 and 7".into(), localized);
    Ok(())
}

/// Events with their indices, since labels repeat.
fn indexed(g: &tcg::Tcg, x: EventSet) -> String {
    let names: Vec<String> = x.iter().map(|e| format!("{}#{}", g.es.display_name(e), e)).collect();
    format!("{{{}}}", names.join(", "))
}

fn devisme_claims(c: &mut Claims) -> Result<(), CliError> {
    let g = devisme();
    c.claim("symmetries form a family".into(), lib(check_family_axioms(&g, 1 << 20))?.passes());
    c.claim("the game is not representable".into(), !lib(is_representable(&g))?.representable);
    let x: EventSet = [0, 1, 2].into_iter().collect();
    for y in [x, [0, 1, 3].into_iter().collect()] {
        c.claim(format!("{} is not canonical", indexed(&g, y)), !lib(is_canonical(&g, y))?);
    }
    let swap = ConfigIso::new(vec![(0, 1), (1, 0), (2, 2)]);
    let f = lib(factorize(&g, &swap))?;
    c.claim(
        format!("the swap of {} factors through {}", indexed(&g, x), indexed(&g, f.mid)),
        f.mid != x,
    );
    Ok(())
}

fn deadlock_claims(c: &mut Claims) -> Result<(), CliError> {
    let (s, t) = lib(deadlock_pair())?;
    c.claim("the pair deadlocks".into(), !lib(no_deadlock(&s, &t))?);
    let at = lib(Atlases::canonical(&s, &t))?;
    c.claim("theorem fails".into(), !lib(check_theorem(&s, &t, &at))?.passes());
    let mut holds = true;
    for a in 0..lib(s.left.symmetry_classes())?.len() {
        for b in 0..lib(s.right.symmetry_classes())?.len() {
            for cc in 0..lib(t.right.symmetry_classes())?.len() {
                holds &= lib(compatible_counts(&s, &t, &at, a, b, cc))?.holds();
            }
        }
    }
    c.claim("interaction counts still match products of witnesses".into(), holds);
    Ok(())
}
