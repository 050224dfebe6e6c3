//! Hand-built games and strategies used by the tests and the command line.

use crate::esp_core::{EsDecl, EventId, EventSet, EventStructure, Polarity};
use crate::game_constructions::{
    atom, bang_ajm, bang_ho, bang_ho_bounds, dual, empty_game, linear_arrow, parallel, shift_up, sum, Arena,
    CopyBound,
};
use crate::strategies::{copycat, pcov_bijection, weak_bipullback_all, Strategy, StrategySym};
use crate::symmetry::{ConfigIso, Flavor, SymmetrySpec, Tcg};
use crate::{Error, Result};

use Polarity::{Negative, Positive};

/// The unique event of `g` with this label and copy path.
pub fn find_event(g: &Tcg, label: &str, copy: &[usize]) -> EventId {
    let hits: Vec<EventId> = (0..g.len())
        .filter(|&e| g.es.label(e) == label && g.es.copy_indices(e) == copy)
        .collect();
    assert_eq!(hits.len(), 1, "{} events named {}{:?}", hits.len(), label, copy);
    hits[0]
}

/// Accumulates the events of a strategy on `left⊥ ∥ right`.
struct Builder {
    left: Tcg,
    right: Tcg,
    game: Tcg,
    d: EsDecl,
    label: Vec<EventId>,
}

impl Builder {
    fn new(left: &Tcg, right: &Tcg) -> Builder {
        Builder {
            left: left.clone(),
            right: right.clone(),
            game: parallel(&dual(left), right),
            d: EsDecl::default(),
            label: Vec::new(),
        }
    }

    /// Event of the left game, in the strategy's game numbering.
    fn l(&self, e: EventId) -> EventId {
        e
    }

    fn r(&self, e: EventId) -> EventId {
        self.left.len() + e
    }

    fn ev(&mut self, name: &str, g: EventId) -> EventId {
        let p = self.game.es.polarity(g);
        let copy = self.game.es.copy_indices(g).to_vec();
        self.label.push(g);
        self.d.event_with_copy(p, name, copy)
    }

    fn edge(&mut self, a: EventId, b: EventId) {
        self.d.edge(a, b);
    }

    fn conflict(&mut self, a: EventId, b: EventId) {
        self.d.conflict(a, b);
    }

    fn finish(self, name: &str) -> Result<Strategy> {
        let es = EventStructure::new(&self.d)?;
        Strategy::new(name, es, StrategySym::Spec(SymmetrySpec::AllOrderIsos), self.left, self.right, self.label)
    }
}

/// Two Opponent moves exchanged by symmetry and one Player move.
pub fn epilogue1_b() -> Tcg {
    parallel(&bang_ajm(&atom(Negative, "o"), CopyBound(2)).unwrap(), &atom(Positive, "p"))
}

/// First epilogue pair: `σ` answers either Opponent move, `τ` plays both.
pub fn epilogue1() -> Result<(Strategy, Strategy)> {
    let a = atom(Negative, "✓");
    let b = epilogue1_b();
    let c = atom(Positive, "✓");

    let mut s = Builder::new(&a, &b);
    let o1 = s.ev("o", s.r(0));
    let o2 = s.ev("o", s.r(1));
    let pa = s.ev("p", s.r(2));
    let pb = s.ev("p", s.r(2));
    let ck = s.ev("✓", s.l(0));
    s.edge(o1, pa);
    s.edge(o2, pb);
    s.conflict(pa, pb);
    s.edge(o1, ck);
    s.edge(o2, ck);
    let sigma = s.finish("σ")?;

    let mut t = Builder::new(&b, &c);
    t.ev("o1", t.l(0));
    t.ev("o2", t.l(1));
    let pm = t.ev("p", t.l(2));
    let ck = t.ev("✓", t.r(0));
    t.edge(pm, ck);
    let tau = t.finish("τ")?;
    Ok((sigma, tau))
}

/// `!o` with two copies, `o` a single Opponent question.
pub fn bang_o() -> Tcg {
    bang_ajm(&atom(Negative, "q"), CopyBound(2)).unwrap()
}

/// `!o ⊸ o`: events `q⁺_0, q⁺_1, q⁻`.
pub fn bang_o_arrow_o() -> Tcg {
    linear_arrow(&bang_o(), &atom(Negative, "q")).unwrap()
}

/// `(!o ⊸ o) ⊸ !o ⊸ o`. Events: `0, 1` the Opponent copies on the left,
/// `2` the left Player question, `3, 4` the Player copies on the right and
/// `5` the initial question.
pub fn epilogue2_b() -> Tcg {
    let x = bang_o_arrow_o();
    linear_arrow(&x, &x).unwrap()
}

/// Second epilogue pair, in a programming language style.
pub fn epilogue2() -> Result<(Strategy, Strategy)> {
    let a = bang_o();
    let b = epilogue2_b();
    let c = bang_o_arrow_o();

    let mut s = Builder::new(&a, &b);
    let init = s.ev("init", s.r(5));
    let call = s.ev("call", s.r(2));
    s.edge(init, call);
    for i in 0..2 {
        let arg = s.ev("arg", s.r(i));
        s.edge(call, arg);
        let out = s.ev("out", s.l(i));
        let fwd = s.ev("fwd", s.r(3 + i));
        s.edge(arg, out);
        s.edge(arg, fwd);
    }
    let sigma = s.finish("σ")?;

    let mut t = Builder::new(&b, &c);
    let init = t.ev("init", t.r(2));
    let call = t.ev("call", t.l(5));
    t.edge(init, call);
    let left = t.ev("left", t.l(2));
    t.edge(call, left);
    for i in 0..2 {
        let a = t.ev(&format!("a{}", i), t.l(i));
        t.edge(left, a);
    }
    for i in 0..2 {
        let copy = t.ev("copy", t.l(3 + i));
        t.edge(call, copy);
        let out = t.ev("out", t.r(i));
        t.edge(copy, out);
    }
    let tau = t.finish("τ")?;
    Ok((sigma, tau))
}

/// Lookup tables for the synchronization example: `σ` answers root `r`
/// with child `f[r]` or `g[r]`; `τ` opens root 0, then on child `c` opens
/// root `h[c]`, and on its child `j` plays `✓` copy `k[c][j]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tables {
    pub f: [usize; 3],
    pub g: [usize; 3],
    pub h: [usize; 2],
    pub k: [[usize; 2]; 2],
}

pub fn ex1_tables() -> [Tables; 2] {
    [
        Tables { f: [0, 0, 0], g: [1, 1, 1], h: [1, 2], k: [[0, 1], [2, 3]] },
        Tables { f: [0, 1, 0], g: [1, 0, 1], h: [2, 1], k: [[3, 1], [0, 2]] },
    ]
}

/// HO exponential of a call-return pair: three roots, two children each.
pub fn ex1_b() -> Tcg {
    bang_ho_bounds(&Arena::chain(&["call", "ret"], Negative), &[CopyBound(3), CopyBound(2)]).unwrap()
}

/// Four positive `✓` copies, exchanged by symmetry.
pub fn ex1_c() -> Tcg {
    dual(&bang_ajm(&atom(Negative, "✓"), CopyBound(4)).unwrap())
}

pub fn ex1_root(b: &Tcg, r: usize) -> EventId {
    find_event(b, "call", &[r])
}

pub fn ex1_child(b: &Tcg, r: usize, c: usize) -> EventId {
    find_event(b, "ret", &[r, c])
}

fn ex1_sigma(t: &Tables, f_name: &str, g_name: &str, name: &str) -> Result<Strategy> {
    let b = ex1_b();
    let mut s = Builder::new(&empty_game(), &b);
    for r in 0..3 {
        let call = s.ev("call", s.r(ex1_root(&b, r)));
        let f = s.ev(f_name, s.r(ex1_child(&b, r, t.f[r])));
        let g = s.ev(g_name, s.r(ex1_child(&b, r, t.g[r])));
        s.edge(call, f);
        s.edge(call, g);
        s.conflict(f, g);
    }
    s.finish(name)
}

fn ex1_tau(t: &Tables) -> Result<Strategy> {
    let b = ex1_b();
    let c = ex1_c();
    let mut s = Builder::new(&b, &c);
    let start = s.ev("start", s.l(ex1_root(&b, 0)));
    for ci in 0..2 {
        let ans = s.ev("ans", s.l(ex1_child(&b, 0, ci)));
        s.edge(start, ans);
        let call = s.ev("call", s.l(ex1_root(&b, t.h[ci])));
        s.edge(ans, call);
        for j in 0..2 {
            let res = s.ev("res", s.l(ex1_child(&b, t.h[ci], j)));
            s.edge(call, res);
            let done = s.ev("done", s.r(find_event(&c, "✓", &[t.k[ci][j]])));
            s.edge(res, done);
        }
    }
    s.finish("τ")
}

/// The synchronization example for one instantiation of the tables.
pub fn ex1(t: &Tables) -> Result<(Strategy, Strategy)> {
    Ok((ex1_sigma(t, "f", "g", "σ")?, ex1_tau(t)?))
}

/// `σ` with both answers under the same name: two Player moves become
/// symmetric over the same Opponent move, which thinness forbids.
pub fn ex1_mutated(t: &Tables) -> Result<Strategy> {
    ex1_sigma(t, "ans", "ans", "σ-mutated")
}

/// Outcomes, as configurations of `comp = τ ⊙ σ`, of synchronizing the
/// two-call witnesses of [`ex1`] through the identity and through the swap
/// of the two calls. Fails if either synchronization has solutions that are
/// not symmetric to each other.
pub fn ex1_id_and_swap(s: &Strategy, t: &Strategy, comp: &Strategy, tables: &Tables) -> Result<(EventSet, EventSet)> {
    let b = &s.right;
    let f0 = tables.f[0];
    let h = tables.h[f0];
    let moves = [(ex1_root(b, 0), ex1_child(b, 0, f0)), (ex1_root(b, h), ex1_child(b, h, tables.g[h]))];
    let xb: EventSet = moves.iter().flat_map(|&(r, c)| [r, c]).collect();
    let bl = s.left_len();
    let xs: EventSet = (0..s.es.len()).filter(|&e| xb.contains(s.label[e] - bl)).collect();
    if s.proj_right(xs) != xb {
        return Err(Error::NoSolution("σ does not play both calls".into()));
    }
    let xt = t
        .configurations()?
        .iter()
        .copied()
        .find(|&y| t.es.is_plus_covered(y) && t.proj_left(y) == xb && !t.proj_right(y).is_empty())
        .ok_or_else(|| Error::NoSolution("τ does not play both calls".into()))?;
    let sw = ConfigIso::new(vec![
        (moves[0].0, moves[1].0),
        (moves[1].0, moves[0].0),
        (moves[0].1, moves[1].1),
        (moves[1].1, moves[0].1),
    ]);
    if !b.is_member(Flavor::Full, &sw) {
        return Err(Error::InvalidStructure("the swap is not a symmetry".into()));
    }
    let pcov = pcov_bijection(s, t, comp)?;
    let outcome = |theta: &ConfigIso| -> Result<EventSet> {
        let mut zs = Vec::new();
        for r in weak_bipullback_all(s, t, xs, xt, theta)? {
            let z = pcov
                .iter()
                .find(|(w, _)| w.s == r.y_s && w.t == r.y_t)
                .ok_or_else(|| Error::BijectionFailure("synchronization is not +-covered".into()))?;
            zs.push(z.1);
        }
        let first = *zs.first().ok_or_else(|| Error::NoSolution("no synchronization".into()))?;
        for &z in &zs {
            if !comp.sym_related(first, z)? {
                return Err(Error::NonUnique("synchronizations are not symmetric".into()));
            }
        }
        Ok(first)
    };
    Ok((outcome(&ConfigIso::identity(xb))?, outcome(&sw)?))
}

/// The representability example, on the game of [`ex1`].
#[derive(Clone, Debug)]
pub struct Repr {
    pub sigma: Strategy,
    pub tau: Strategy,
    /// Two roots, children with different indices: not canonical.
    pub x_bar: EventSet,
    /// Two roots, children with the same index: canonical.
    pub x_bar_prime: EventSet,
}

pub fn repr() -> Result<Repr> {
    let (sigma, tau) = ex1(&ex1_tables()[0])?;
    let b = ex1_b();
    let x_bar = [ex1_root(&b, 0), ex1_child(&b, 0, 0), ex1_root(&b, 1), ex1_child(&b, 1, 1)]
        .into_iter()
        .collect();
    let x_bar_prime = [ex1_root(&b, 0), ex1_child(&b, 0, 0), ex1_root(&b, 1), ex1_child(&b, 1, 0)]
        .into_iter()
        .collect();
    Ok(Repr { sigma, tau, x_bar, x_bar_prime })
}

/// Two Opponent moves both enabling two Player moves; Opponent may only
/// swap the pair of Player moves along with its own.
pub fn devisme() -> Tcg {
    let mut d = EsDecl::default();
    let n1 = d.event(Negative, "n");
    let n2 = d.event(Negative, "n");
    let p1 = d.event(Positive, "p");
    let p2 = d.event(Positive, "p");
    for a in [n1, n2] {
        for b in [p1, p2] {
            d.edge(a, b);
        }
    }
    let id = vec![(0, 0), (1, 1), (2, 2), (3, 3)];
    Tcg::new(
        EventStructure::new(&d).unwrap(),
        SymmetrySpec::AllOrderIsos,
        SymmetrySpec::MaximalGenerators(vec![id.clone(), vec![(0, 0), (1, 1), (2, 3), (3, 2)]]),
        SymmetrySpec::MaximalGenerators(vec![id, vec![(0, 1), (1, 0), (2, 3), (3, 2)]]),
    )
}

/// A pair that deadlocks: each strategy waits for the other's move.
pub fn deadlock_pair() -> Result<(Strategy, Strategy)> {
    let b = parallel(&atom(Negative, "b1"), &atom(Positive, "b2"));
    let c = atom(Positive, "✓");
    let mut s = Builder::new(&empty_game(), &b);
    let s1 = s.ev("b1", s.r(0));
    let s2 = s.ev("b2", s.r(1));
    s.edge(s1, s2);
    let sigma = s.finish("σ")?;
    let mut t = Builder::new(&b, &c);
    let t2 = t.ev("b2", t.l(1));
    let t1 = t.ev("b1", t.l(0));
    let ck = t.ev("✓", t.r(0));
    t.edge(t2, t1);
    t.edge(t2, ck);
    let tau = t.finish("τ")?;
    Ok((sigma, tau))
}

/// Small representable games on which copycat is exercised.
pub fn copycat_games() -> Vec<(&'static str, Tcg)> {
    let chain = Arena::chain(&["q", "a"], Negative);
    vec![
        ("atom", atom(Negative, "q")),
        ("epilogue-b", epilogue1_b()),
        ("bang-o", bang_o()),
        ("arrow", bang_o_arrow_o()),
        ("ho", bang_ho(&chain, CopyBound(2)).unwrap()),
        ("shift", shift_up(&dual(&atom(Negative, "q")))),
        ("sum", sum(&[atom(Negative, "l"), atom(Negative, "r")])),
    ]
}

/// A named fixture.
#[derive(Clone, Debug)]
pub enum Fixture {
    Pair { sigma: Strategy, tau: Strategy },
    Single(Strategy),
    Game(Tcg),
}

pub const NAMES: &[&str] = &[
    "epilogue1",
    "epilogue2",
    "ex1",
    "ex1-alt",
    "ex1-mutated",
    "repr",
    "devisme",
    "deadlock",
    "copycat-epilogue",
];

pub fn get(name: &str) -> Result<Fixture> {
    let tables = ex1_tables();
    Ok(match name {
        "epilogue1" => {
            let (sigma, tau) = epilogue1()?;
            Fixture::Pair { sigma, tau }
        }
        "epilogue2" => {
            let (sigma, tau) = epilogue2()?;
            Fixture::Pair { sigma, tau }
        }
        "ex1" | "repr" => {
            let (sigma, tau) = ex1(&tables[0])?;
            Fixture::Pair { sigma, tau }
        }
        "ex1-alt" => {
            let (sigma, tau) = ex1(&tables[1])?;
            Fixture::Pair { sigma, tau }
        }
        "ex1-mutated" => Fixture::Single(ex1_mutated(&tables[0])?),
        "devisme" => Fixture::Game(devisme()),
        "deadlock" => {
            let (sigma, tau) = deadlock_pair()?;
            Fixture::Pair { sigma, tau }
        }
        "copycat-epilogue" => {
            let (sigma, _) = epilogue1()?;
            let tau = copycat(&sigma.right)?;
            Fixture::Pair { sigma, tau }
        }
        _ => return Err(Error::InvalidStructure(format!("unknown fixture {}", name))),
    })
}

/// Every composable pair among the fixtures, with its name.
pub fn pairs() -> Result<Vec<(String, Strategy, Strategy)>> {
    let mut out = Vec::new();
    for &n in NAMES {
        if n == "repr" {
            continue;
        }
        if let Fixture::Pair { sigma, tau } = get(n)? {
            out.push((n.to_string(), sigma, tau));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::strategies::validate_strategy;

    #[test]
    fn fixture_strategies_are_valid() {
        for (name, s, t) in pairs().unwrap() {
            for x in [&s, &t] {
                let rep = validate_strategy(x).unwrap();
                assert!(rep.passes(), "{} {}: {:?}", name, x.name, rep.failures);
            }
        }
    }

    #[test]
    fn event_counts() {
        let (s, t) = epilogue2().unwrap();
        assert_eq!((s.es.len(), t.es.len()), (8, 9));
        let (s, t) = ex1(&ex1_tables()[0]).unwrap();
        assert_eq!((s.es.len(), t.es.len()), (9, 13));
        assert_eq!(ex1_b().len(), 9);
    }
}
