//! Random games and strategies.
//!
//! Games are built from small bases with the constructions of
//! [`crate::game_constructions`], so they are representable whenever those
//! constructions preserve representability. Strategies are sub-structures
//! of their game, closed under a group of game automorphisms, with extra
//! Opponent-to-Player links, Player conflicts and duplicated Player moves.
//! Candidates are kept only if they pass [`validate_strategy`].

use rand::seq::SliceRandom;
use rand::Rng;

use crate::esp_core::{EsDecl, EventId, EventSet, EventStructure, Polarity};
use crate::game_constructions::{
    atom, bang_ajm, bang_ho, dual, is_negative, linear_arrow, parallel, shift_down, shift_up, sum, Arena,
    CopyBound,
};
use crate::strategies::{validate_strategy, Strategy, StrategySym};
use crate::symmetry::{order_isos, ConfigIso, Flavor, SymmetrySpec, Tcg};
use crate::Result;

use Polarity::{Negative, Positive};

/// Bounds for generated games.
#[derive(Clone, Copy, Debug)]
pub struct GameParams {
    pub max_events: usize,
    pub max_bound: usize,
    pub depth: usize,
}

impl Default for GameParams {
    fn default() -> Self {
        GameParams { max_events: 8, max_bound: 2, depth: 2 }
    }
}

struct Names(usize);

impl Names {
    fn fresh(&mut self) -> String {
        let s = format!("m{}", self.0);
        self.0 += 1;
        s
    }
}

fn random_polarity(rng: &mut impl Rng) -> Polarity {
    if rng.gen_bool(0.5) {
        Negative
    } else {
        Positive
    }
}

/// A forest arena of one to three moves with alternating polarity.
pub fn random_arena(rng: &mut impl Rng, first: Polarity) -> Arena {
    let n = rng.gen_range(1..=3);
    let mut d = EsDecl::default();
    for i in 0..n {
        let parent = if i == 0 { None } else { Some(rng.gen_range(0..i)) };
        let p = match parent {
            None => first,
            Some(q) => d.events[q].polarity.flip(),
        };
        d.event(p, &format!("h{}", i));
        if let Some(q) = parent {
            d.edge(q, i);
        }
    }
    Arena::new(EventStructure::new(&d).unwrap()).unwrap()
}

/// One or two events without symmetry: an atom, a chain or a conflict.
fn random_base(rng: &mut impl Rng, names: &mut Names) -> Tcg {
    match rng.gen_range(0..4) {
        0 | 1 => atom(random_polarity(rng), &names.fresh()),
        2 => {
            let mut d = EsDecl::default();
            let p = random_polarity(rng);
            let a = d.event(p, &names.fresh());
            let b = d.event(p.flip(), &names.fresh());
            d.edge(a, b);
            Tcg::trivial(EventStructure::new(&d).unwrap())
        }
        _ => {
            let mut d = EsDecl::default();
            let p = random_polarity(rng);
            let a = d.event(p, &names.fresh());
            let b = d.event(p, &names.fresh());
            d.conflict(a, b);
            Tcg::trivial(EventStructure::new(&d).unwrap())
        }
    }
}

fn random_game_rec(rng: &mut impl Rng, p: &GameParams, depth: usize, names: &mut Names) -> Tcg {
    if depth == 0 || rng.gen_bool(0.3) {
        return random_base(rng, names);
    }
    let k = CopyBound(rng.gen_range(1..=p.max_bound));
    let g = match rng.gen_range(0..8) {
        0 => dual(&random_game_rec(rng, p, depth - 1, names)),
        1 => {
            let a = random_game_rec(rng, p, depth - 1, names);
            let b = random_game_rec(rng, p, depth - 1, names);
            parallel(&a, &b)
        }
        2 => {
            let n = random_game_rec(rng, p, depth - 1, names);
            let n = if is_negative(&n) { n } else { shift_up(&n) };
            bang_ajm(&n, k).unwrap()
        }
        3 => {
            let first = random_polarity(rng);
            let arena = random_arena(rng, first);
            match bang_ho(&arena, k) {
                Ok(g) => g,
                Err(_) => random_base(rng, names),
            }
        }
        4 => shift_up(&random_game_rec(rng, p, depth - 1, names)),
        5 => shift_down(&random_game_rec(rng, p, depth - 1, names)),
        6 => {
            let a = random_game_rec(rng, p, depth - 1, names);
            let b = random_game_rec(rng, p, depth - 1, names);
            sum(&[a, b])
        }
        _ => {
            let m = random_game_rec(rng, p, depth - 1, names);
            let m = if is_negative(&m) { m } else { shift_up(&m) };
            let n = shift_up(&random_base(rng, names));
            linear_arrow(&m, &n).unwrap()
        }
    };
    if g.len() > p.max_events {
        random_base(rng, names)
    } else {
        g
    }
}

/// A game of at most `p.max_events` events built by random constructions.
pub fn random_game(rng: &mut impl Rng, p: &GameParams) -> Tcg {
    random_game_rec(rng, p, p.depth, &mut Names(0))
}

/// A game with copy indices: an exponential of a small negative game,
/// possibly dualized or beside another small game.
pub fn random_replicated_game(rng: &mut impl Rng, p: &GameParams) -> Tcg {
    let small = GameParams { max_events: 3, depth: 1, ..*p };
    let mut names = Names(0);
    let k = CopyBound(rng.gen_range(1..=p.max_bound).max(2));
    let n = random_game_rec(rng, &small, small.depth, &mut names);
    let n = if is_negative(&n) { n } else { shift_up(&n) };
    let mut g = match bang_ajm(&n, k) {
        Ok(g) if g.len() <= p.max_events => g,
        _ => bang_ajm(&atom(Negative, "o"), k).unwrap(),
    };
    if rng.gen_bool(0.5) {
        g = dual(&g);
    }
    if rng.gen_bool(0.4) {
        let other = random_base(rng, &mut names);
        if g.len() + other.len() <= p.max_events {
            g = if rng.gen_bool(0.5) { parallel(&g, &other) } else { parallel(&other, &g) };
        }
    }
    g
}

/// A negative game, for use under an exponential or on the right of `⊸`.
pub fn random_negative_game(rng: &mut impl Rng, p: &GameParams) -> Tcg {
    let g = random_game(rng, p);
    if is_negative(&g) {
        g
    } else {
        shift_up(&g)
    }
}

/// Permutations of the events of `g` preserving causality, conflict,
/// labels and polarity whose restrictions to configurations are
/// symmetries. Always contains the identity.
pub fn automorphisms(g: &Tcg) -> Result<Vec<Vec<EventId>>> {
    let all = g.es.all();
    let mut perms = Vec::new();
    let full = &g.full;
    order_isos(&g.es, all, all, &|a, b| full.pair_ok(a, b), &mut |iso| {
        perms.push((0..g.len()).map(|e| iso.apply(e).unwrap()).collect::<Vec<_>>());
        true
    })?;
    let configs = g.configurations()?;
    let mut out = Vec::new();
    for pi in perms {
        let conflicts_kept =
            (0..g.len()).all(|a| g.es.conflicts(a).iter().all(|b| g.es.in_conflict(pi[a], pi[b])));
        if !conflicts_kept {
            continue;
        }
        let restricts = configs.iter().all(|&x| {
            let iso = ConfigIso::new(x.iter().map(|e| (e, pi[e])).collect());
            g.is_member(Flavor::Full, &iso)
        });
        if restricts {
            out.push(pi);
        }
    }
    Ok(out)
}

/// Closure of `gens` under composition, identity included.
pub fn group_closure(n: usize, gens: &[Vec<EventId>]) -> Vec<Vec<EventId>> {
    let id: Vec<EventId> = (0..n).collect();
    let mut group = vec![id];
    let mut i = 0;
    while i < group.len() {
        for g in gens {
            let h: Vec<EventId> = group[i].iter().map(|&e| g[e]).collect();
            if !group.contains(&h) {
                group.push(h);
            }
        }
        i += 1;
    }
    group.sort();
    group
}

fn orbit(group: &[Vec<EventId>], x: EventSet) -> EventSet {
    let mut out = EventSet::EMPTY;
    for g in group {
        for e in x.iter() {
            out.insert(g[e]);
        }
    }
    out
}

/// Knobs for [`random_strategy`].
#[derive(Clone, Debug)]
pub struct StrategyParams {
    pub removals: usize,
    pub links: usize,
    pub conflicts: usize,
    pub duplicates: usize,
    /// Opponent-to-Player links always added, with their orbits, in the
    /// numbering of the strategy's game.
    pub forced: Vec<(EventId, EventId)>,
}

impl Default for StrategyParams {
    fn default() -> Self {
        StrategyParams { removals: 1, links: 2, conflicts: 1, duplicates: 1, forced: Vec::new() }
    }
}

impl StrategyParams {
    pub fn random(rng: &mut impl Rng) -> StrategyParams {
        StrategyParams {
            removals: rng.gen_range(0..=2),
            links: rng.gen_range(0..=4),
            conflicts: rng.gen_range(0..=1),
            duplicates: rng.gen_range(0..=1),
            forced: Vec::new(),
        }
    }
}

/// A candidate strategy on `left⊥ ∥ right` invariant under `group`, a
/// group of automorphisms of that game. Returns `None` when the candidate
/// is not a valid strategy.
pub fn strategy_under(
    rng: &mut impl Rng,
    name: &str,
    left: &Tcg,
    right: &Tcg,
    group: &[Vec<EventId>],
    p: &StrategyParams,
) -> Result<Option<Strategy>> {
    let game = parallel(&dual(left), right);
    let ges = &game.es;
    let n = game.len();
    let pos: Vec<EventId> = (0..n).filter(|&e| ges.polarity(e) == Positive).collect();

    let mut removed = EventSet::EMPTY;
    for _ in 0..p.removals {
        if let Some(&e) = pos.choose(rng) {
            removed = removed.union(orbit(group, EventSet::singleton(e)));
        }
    }
    let mut up = EventSet::EMPTY;
    for e in removed.iter() {
        up = up.union(ges.above(e)).with(e);
    }
    let kept: Vec<EventId> = (0..n).filter(|&e| !up.contains(e)).collect();
    let local = |e: EventId| kept.iter().position(|&k| k == e).unwrap();

    let mut d = EsDecl::default();
    for &e in &kept {
        d.event_with_copy(ges.polarity(e), ges.label(e), ges.copy_indices(e).to_vec());
    }
    for &b in &kept {
        for &a in ges.preds(b) {
            d.edge(local(a), local(b));
        }
    }
    for &a in &kept {
        for b in ges.conflicts(a).iter() {
            if a < b && !up.contains(b) {
                d.conflict(local(a), local(b));
            }
        }
    }
    let negs: Vec<EventId> = kept.iter().copied().filter(|&e| ges.polarity(e) == Negative).collect();
    let kept_pos: Vec<EventId> = kept.iter().copied().filter(|&e| ges.polarity(e) == Positive).collect();
    for &(a, b) in &p.forced {
        if up.contains(a) || up.contains(b) || ges.leq(b, a) || ges.in_conflict(a, b) {
            return Ok(None);
        }
        for g in group {
            d.edge(local(g[a]), local(g[b]));
        }
    }
    for _ in 0..p.links {
        let (Some(&a), Some(&b)) = (negs.choose(rng), kept_pos.choose(rng)) else { break };
        if ges.leq(b, a) || ges.in_conflict(a, b) {
            continue;
        }
        for g in group {
            d.edge(local(g[a]), local(g[b]));
        }
    }
    for _ in 0..p.conflicts {
        let (Some(&a), Some(&b)) = (kept_pos.choose(rng), kept_pos.choose(rng)) else { break };
        if a == b {
            continue;
        }
        for g in group {
            d.conflict(local(g[a]), local(g[b]));
        }
    }
    let Ok(base) = EventStructure::new(&d) else { return Ok(None) };

    // Player moves maximal in the base, each may get a conflicting twin.
    let mut twin_of: Vec<Option<EventId>> = vec![None; kept.len()];
    let maximal_pos: Vec<EventId> = (0..kept.len())
        .filter(|&s| base.polarity(s) == Positive && base.succs(s).is_empty())
        .collect();
    let mut d = base.to_decl();
    for _ in 0..p.duplicates {
        let Some(&s) = maximal_pos.choose(rng) else { break };
        for g in group {
            let t = local(g[kept[s]]);
            if twin_of[t].is_some() {
                continue;
            }
            let copy = base.copy_indices(t).to_vec();
            let tw = d.event_with_copy(Positive, base.label(t), copy);
            for &q in base.preds(t) {
                d.edge(q, tw);
            }
            d.conflict(t, tw);
            for c in base.conflicts(t).iter() {
                d.conflict(c, tw);
            }
            twin_of[t] = Some(tw);
        }
    }
    // twins of twins-in-conflict pairs stay in conflict
    for t in 0..kept.len() {
        for c in base.conflicts(t).iter() {
            if let (Some(a), Some(b)) = (twin_of[t], twin_of[c]) {
                d.conflict(a, b);
            }
        }
    }
    let Ok(es) = EventStructure::new(&d) else { return Ok(None) };
    let mut label: Vec<EventId> = kept.clone();
    let mut twin_label = vec![0; es.len() - kept.len()];
    for (t, tw) in twin_of.iter().enumerate() {
        if let Some(tw) = tw {
            twin_label[tw - kept.len()] = kept[t];
        }
    }
    label.extend(twin_label);

    let s_of = |ge: EventId| kept.iter().position(|&k| k == ge);
    let mut gens = Vec::new();
    for g in group {
        let mut pairs = Vec::new();
        for (s, &ge) in kept.iter().enumerate() {
            let Some(t) = s_of(g[ge]) else { return Ok(None) };
            pairs.push((s, t));
            if let Some(tw) = twin_of[s] {
                let Some(tw2) = twin_of[t] else { return Ok(None) };
                pairs.push((tw, tw2));
            }
        }
        gens.push(pairs);
    }
    let sigma = Strategy::new(
        name,
        es,
        StrategySym::Spec(SymmetrySpec::MaximalGenerators(gens)),
        left.clone(),
        right.clone(),
        label,
    )?;
    Ok(validate_strategy(&sigma)?.passes().then_some(sigma))
}

/// A random valid strategy `left → right`, retrying up to `tries` times.
pub fn random_strategy(rng: &mut impl Rng, name: &str, left: &Tcg, right: &Tcg, tries: usize) -> Result<Option<Strategy>> {
    random_strategy_forced(rng, name, left, right, &[], tries)
}

/// As [`random_strategy`], always including the links `forced`.
pub fn random_strategy_forced(
    rng: &mut impl Rng,
    name: &str,
    left: &Tcg,
    right: &Tcg,
    forced: &[(EventId, EventId)],
    tries: usize,
) -> Result<Option<Strategy>> {
    let game = parallel(&dual(left), right);
    let auts = automorphisms(&game)?;
    for _ in 0..tries {
        let gens: Vec<Vec<EventId>> = auts.iter().filter(|_| rng.gen_bool(0.5)).cloned().collect();
        let group = if rng.gen_bool(0.5) { auts.clone() } else { group_closure(game.len(), &gens) };
        let p = StrategyParams { forced: forced.to_vec(), ..StrategyParams::random(rng) };
        if let Some(s) = strategy_under(rng, name, left, right, &group, &p)? {
            return Ok(Some(s));
        }
    }
    Ok(None)
}

/// A composable pair `σ : A → B`, `τ : B → C` over random games.
pub fn random_pair(rng: &mut impl Rng, p: &GameParams) -> Result<Option<(Strategy, Strategy)>> {
    random_pair_crossing(rng, p, false)
}

/// As [`random_pair`]; with `crossing`, `σ` waits for `b⁻` before `b⁺` on
/// `B` while `τ` waits for `b⁺` before `b⁻`, which tends to deadlock.
pub fn random_pair_crossing(rng: &mut impl Rng, p: &GameParams, crossing: bool) -> Result<Option<(Strategy, Strategy)>> {
    let small = GameParams { max_events: 2, depth: 1, ..*p };
    let a = if rng.gen_bool(0.5) { crate::game_constructions::empty_game() } else { random_game(rng, &small) };
    let b = if rng.gen_bool(0.5) { random_replicated_game(rng, p) } else { random_game(rng, p) };
    let c = random_game(rng, &small);
    if a.len() + b.len() > p.max_events || b.len() + c.len() > p.max_events {
        return Ok(None);
    }
    let (mut fs, mut ft) = (Vec::new(), Vec::new());
    if crossing {
        let es = &b.es;
        let cands: Vec<(EventId, EventId)> = (0..b.len())
            .flat_map(|n| (0..b.len()).map(move |q| (n, q)))
            .filter(|&(n, q)| {
                es.polarity(n) == Negative
                    && es.polarity(q) == Positive
                    && !es.leq(n, q)
                    && !es.leq(q, n)
                    && !es.in_conflict(n, q)
            })
            .collect();
        let Some(&(n, q)) = cands.choose(rng) else { return Ok(None) };
        fs.push((a.len() + n, a.len() + q));
        ft.push((q, n));
    }
    let Some(sigma) = random_strategy_forced(rng, "σ", &a, &b, &fs, 8)? else { return Ok(None) };
    let Some(tau) = random_strategy_forced(rng, "τ", &b, &c, &ft, 8)? else { return Ok(None) };
    Ok(Some((sigma, tau)))
}
