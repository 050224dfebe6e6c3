//! Strategies, their axioms, interaction and composition.
//!
//! A strategy `σ : A → B` is an event structure `S` labelled into the game
//! `A⊥ ∥ B`, whose events are numbered with `A` first. Interaction and
//! composition work on states, i.e. pairs of configurations matching on `B`.

use std::collections::HashMap;
use std::fmt;
use std::sync::OnceLock;

use crate::esp_core::{EsDecl, EventId, EventSet, EventStructure, Polarity, DEFAULT_CAP};
use crate::game_constructions::{dual, parallel};
use crate::symmetry::{order_isos, ConfigIso, Flavor, SymmetrySpec, Tcg};
use crate::{Error, Result};

/// Symmetry on the event structure of a strategy.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StrategySym {
    /// Label-preserving order-isos admitted by the spec whose image is a
    /// symmetry of the game.
    Spec(SymmetrySpec),
    /// Symmetry inherited by a composition: induced by pairs of symmetries
    /// of the two components agreeing on the middle game.
    Composite(Box<CompositeSym>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompositeSym {
    pub sigma: Strategy,
    pub tau: Strategy,
    /// Prime interaction state of each event.
    pub primes: Vec<State>,
    /// Top (unique maximal, visible) event of each prime state.
    pub tops: Vec<Side>,
}

/// An event of `S` or of `T`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    S(EventId),
    T(EventId),
}

/// A pair `(x^S, x^T)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct State {
    pub s: EventSet,
    pub t: EventSet,
}

impl State {
    pub fn union(self, o: State) -> State {
        State { s: self.s.union(o.s), t: self.t.union(o.t) }
    }

    pub fn is_subset(self, o: State) -> bool {
        self.s.is_subset(o.s) && self.t.is_subset(o.t)
    }
}

/// `σ : A → B`.
#[derive(Debug)]
pub struct Strategy {
    pub name: String,
    pub es: EventStructure,
    pub sym: StrategySym,
    pub left: Tcg,
    pub right: Tcg,
    /// `A⊥ ∥ B`.
    pub game: Tcg,
    pub label: Vec<EventId>,
    configs: OnceLock<Result<Vec<EventSet>>>,
}

impl Clone for Strategy {
    fn clone(&self) -> Strategy {
        Strategy {
            name: self.name.clone(),
            es: self.es.clone(),
            sym: self.sym.clone(),
            left: self.left.clone(),
            right: self.right.clone(),
            game: self.game.clone(),
            label: self.label.clone(),
            configs: OnceLock::new(),
        }
    }
}

impl PartialEq for Strategy {
    fn eq(&self, o: &Strategy) -> bool {
        self.name == o.name
            && self.es == o.es
            && self.sym == o.sym
            && self.left == o.left
            && self.right == o.right
            && self.label == o.label
    }
}

impl Eq for Strategy {}

impl Strategy {
    pub fn new(
        name: &str,
        es: EventStructure,
        sym: StrategySym,
        left: Tcg,
        right: Tcg,
        label: Vec<EventId>,
    ) -> Result<Strategy> {
        let game = parallel(&dual(&left), &right);
        if label.len() != es.len() {
            return Err(Error::InvalidStrategy(format!(
                "{} events but {} labels",
                es.len(),
                label.len()
            )));
        }
        if let Some(&g) = label.iter().find(|&&g| g >= game.len()) {
            return Err(Error::InvalidStrategy(format!("label target {} is not a game event", g)));
        }
        Ok(Strategy {
            name: name.to_string(),
            es,
            sym,
            left,
            right,
            game,
            label,
            configs: OnceLock::new(),
        })
    }

    pub fn configurations(&self) -> Result<&[EventSet]> {
        self.configs
            .get_or_init(|| self.es.configurations_capped(DEFAULT_CAP))
            .as_ref()
            .map(|v| v.as_slice())
            .map_err(|e| e.clone())
    }

    pub fn left_len(&self) -> usize {
        self.left.len()
    }

    pub fn image(&self, x: EventSet) -> EventSet {
        x.iter().map(|e| self.label[e]).collect()
    }

    /// `x^S_A`, in the event numbering of `A`.
    pub fn proj_left(&self, x: EventSet) -> EventSet {
        self.image(x).slice(0, self.left.len())
    }

    /// `x^S_B`, in the event numbering of `B`.
    pub fn proj_right(&self, x: EventSet) -> EventSet {
        self.image(x).slice(self.left.len(), self.right.len())
    }

    pub fn is_left(&self, e: EventId) -> bool {
        self.label[e] < self.left.len()
    }

    /// `σφ` on the game.
    pub fn iso_image(&self, phi: &ConfigIso) -> ConfigIso {
        ConfigIso::new(phi.pairs().iter().map(|&(a, b)| (self.label[a], self.label[b])).collect())
    }

    pub fn display(&self, e: EventId) -> String {
        self.game.es.display_name(self.label[e])
    }

    pub fn describe(&self, x: EventSet) -> String {
        let names: Vec<String> = x.iter().map(|e| self.display(e)).collect();
        format!("{{{}}}", names.join(", "))
    }

    /// Calls `leaf` on each symmetry `x ≅_S y` until it returns false.
    pub fn for_each_sym(
        &self,
        x: EventSet,
        y: EventSet,
        leaf: &mut dyn FnMut(ConfigIso) -> bool,
    ) -> Result<()> {
        match &self.sym {
            StrategySym::Spec(spec) => {
                let gfull = &self.game.full;
                let pair_ok = |a: EventId, b: EventId| {
                    spec.pair_ok(a, b) && gfull.pair_ok(self.label[a], self.label[b])
                };
                order_isos(&self.es, x, y, &pair_ok, &mut |phi| {
                    if spec.admits(phi.pairs()) && self.game.is_member(Flavor::Full, &self.iso_image(&phi)) {
                        leaf(phi)
                    } else {
                        true
                    }
                })
            }
            StrategySym::Composite(c) => {
                for psi in c.induced(self, x, y)? {
                    if !leaf(psi) {
                        break;
                    }
                }
                Ok(())
            }
        }
    }

    pub fn sym_isos(&self, x: EventSet, y: EventSet) -> Result<Vec<ConfigIso>> {
        let mut out = Vec::new();
        self.for_each_sym(x, y, &mut |phi| {
            out.push(phi);
            true
        })?;
        out.sort();
        Ok(out)
    }

    pub fn sym_related(&self, x: EventSet, y: EventSet) -> Result<bool> {
        let mut found = false;
        self.for_each_sym(x, y, &mut |_| {
            found = true;
            false
        })?;
        Ok(found)
    }

    pub fn is_sym(&self, phi: &ConfigIso) -> Result<bool> {
        Ok(self.sym_isos(phi.source, phi.target)?.contains(phi))
    }

    /// The unique extension of `x` by an event labelled `g`, if any.
    pub fn extension_by(&self, x: EventSet, g: EventId) -> Vec<EventId> {
        self.es.enabled(x).iter().filter(|&s| self.label[s] == g).collect()
    }
}

impl CompositeSym {
    fn state_of(&self, z: EventSet) -> State {
        z.iter().fold(State::default(), |acc, e| acc.union(self.primes[e]))
    }

    /// Isos `z1 ≅ z2` of the composition induced by agreeing pairs.
    fn induced(&self, me: &Strategy, z1: EventSet, z2: EventSet) -> Result<Vec<ConfigIso>> {
        if z1.len() != z2.len() {
            return Ok(Vec::new());
        }
        let (w1, w2) = (self.state_of(z1), self.state_of(z2));
        let mut by_top: HashMap<Side, EventId> = HashMap::new();
        for e in z2.iter() {
            by_top.insert(self.tops[e], e);
        }
        let mut out = Vec::new();
        let sig = &self.sigma;
        let tau = &self.tau;
        let phis = sig.sym_isos(w1.s, w2.s)?;
        if phis.is_empty() {
            return Ok(out);
        }
        let psis = tau.sym_isos(w1.t, w2.t)?;
        let al = sig.left_len();
        let bl = sig.right.len();
        let mut psi_by_b: HashMap<ConfigIso, Vec<&ConfigIso>> = HashMap::new();
        for psi in &psis {
            psi_by_b.entry(tau.iso_image(psi).slice(0, bl)).or_default().push(psi);
        }
        for phi in &phis {
            let key = sig.iso_image(phi).slice(al, bl);
            let Some(cands) = psi_by_b.get(&key) else { continue };
            for psi in cands {
                let mut pairs = Vec::new();
                let mut ok = true;
                for e in z1.iter() {
                    let img = match self.tops[e] {
                        Side::S(v) => Side::S(phi.apply(v).unwrap()),
                        Side::T(v) => Side::T(psi.apply(v).unwrap()),
                    };
                    match by_top.get(&img) {
                        Some(&f) => pairs.push((e, f)),
                        None => ok = false,
                    }
                }
                if ok {
                    let iso = ConfigIso::new(pairs);
                    if !out.contains(&iso) && crate::symmetry::is_order_iso(&me.es, &iso) {
                        out.push(iso);
                    }
                }
            }
        }
        out.sort();
        Ok(out)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Axiom {
    Polarity,
    ConfigPreservation,
    LocalInjectivity,
    Courtesy,
    Receptivity,
    SymReceptivity,
    Thinness,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomFailure {
    pub axiom: Axiom,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct StrategyReport {
    pub failures: Vec<AxiomFailure>,
}

impl StrategyReport {
    pub fn passes(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn fails(&self, a: Axiom) -> bool {
        self.failures.iter().any(|f| f.axiom == a)
    }

    fn push(&mut self, axiom: Axiom, detail: String) {
        if !self.fails(axiom) {
            self.failures.push(AxiomFailure { axiom, detail });
        }
    }
}

/// Checks the strategy axioms, reporting the first witness per axiom.
pub fn validate_strategy(sigma: &Strategy) -> Result<StrategyReport> {
    let mut r = StrategyReport::default();
    let es = &sigma.es;
    let g = &sigma.game.es;
    for s in 0..es.len() {
        if es.polarity(s) != g.polarity(sigma.label[s]) {
            r.push(Axiom::Polarity, format!("event {} and its label differ in polarity", s));
        }
    }
    for s in 0..es.len() {
        for &p in es.preds(s) {
            let courteous = es.polarity(p) == Polarity::Negative && es.polarity(s) == Polarity::Positive;
            if !courteous && !g.preds(sigma.label[s]).contains(&sigma.label[p]) {
                r.push(Axiom::Courtesy, format!("link {}->{} is not ⊖→⊕ and not in the game", p, s));
            }
        }
    }
    let configs = sigma.configurations()?;
    for &x in configs {
        let gx = sigma.image(x);
        if gx.len() != x.len() {
            r.push(Axiom::LocalInjectivity, format!("{:?} is not mapped injectively", x));
            continue;
        }
        if !g.is_configuration(gx) {
            r.push(Axiom::ConfigPreservation, format!("image of {:?} is not a configuration", x));
            continue;
        }
        for a in g.enabled(gx).iter() {
            if g.polarity(a) != Polarity::Negative {
                continue;
            }
            let n = sigma.extension_by(x, a).len();
            if n != 1 {
                r.push(
                    Axiom::Receptivity,
                    format!("{:?} has {} extensions by negative game event {}", x, n, a),
                );
            }
        }
    }
    if r.fails(Axiom::ConfigPreservation) || r.fails(Axiom::LocalInjectivity) {
        return Ok(r);
    }
    // symmetry axioms, over pairs of configurations with equal signature
    let mut buckets: HashMap<Vec<u64>, Vec<EventSet>> = HashMap::new();
    for &x in configs {
        buckets.entry(es.signature(x)).or_default().push(x);
    }
    let mut keys: Vec<&Vec<u64>> = buckets.keys().collect();
    keys.sort();
    for key in keys {
        let group = &buckets[key];
        for &x in group {
            for &y in group {
                for phi in sigma.sym_isos(x, y)? {
                    let img = sigma.iso_image(&phi);
                    if !phi.is_identity() && sigma.game.pos.admits(img.pairs()) {
                        r.push(Axiom::Thinness, format!("{:?} is a non-identity symmetry with positive image", phi));
                    }
                    if !r.fails(Axiom::SymReceptivity) {
                        check_sym_receptive(sigma, &phi, &img, &mut r)?;
                    }
                }
            }
        }
    }
    Ok(r)
}

fn check_sym_receptive(sigma: &Strategy, phi: &ConfigIso, img: &ConfigIso, r: &mut StrategyReport) -> Result<()> {
    let g = &sigma.game.es;
    let (gx, gy) = (img.source, img.target);
    for a in g.enabled(gx).iter().filter(|&a| g.polarity(a) == Polarity::Negative) {
        for b in g.enabled(gy).iter().filter(|&b| g.polarity(b) == Polarity::Negative) {
            let mut pairs = img.pairs().to_vec();
            pairs.push((a, b));
            let theta = ConfigIso::new(pairs);
            if !sigma.game.is_member(Flavor::Full, &theta) {
                continue;
            }
            let sa = sigma.extension_by(phi.source, a);
            let sb = sigma.extension_by(phi.target, b);
            let (Some(&sa), Some(&sb)) = (sa.first(), sb.first()) else { continue };
            let mut pairs = phi.pairs().to_vec();
            pairs.push((sa, sb));
            let ext = ConfigIso::new(pairs);
            if !sigma.is_sym(&ext)? {
                r.push(
                    Axiom::SymReceptivity,
                    format!("{:?} has no extension along negative {}→{}", phi, a, b),
                );
                return Ok(());
            }
        }
    }
    Ok(())
}

/// Nodes of the merged causal graph of a pair of configurations.
struct Merged {
    /// Node per S event of `x^S` (by position in `x^S`), then T events of
    /// `x^T` outside `B`.
    preds: Vec<Vec<usize>>,
    visible: Vec<bool>,
    positive: Vec<bool>,
}

impl Merged {
    fn build(sigma: &Strategy, tau: &Strategy, w: State, theta_b: Option<&ConfigIso>) -> Merged {
        let al = sigma.left_len();
        let bl = sigma.right.len();
        let s_ev: Vec<EventId> = w.s.iter().collect();
        let mut node_of_s: HashMap<EventId, usize> = HashMap::new();
        // B-local game event -> node of the S event played there
        let mut node_of_b: HashMap<EventId, usize> = HashMap::new();
        let mut visible = Vec::new();
        let mut positive = Vec::new();
        for (i, &s) in s_ev.iter().enumerate() {
            node_of_s.insert(s, i);
            let l = sigma.label[s];
            if l >= al {
                node_of_b.insert(l - al, i);
                visible.push(false);
                positive.push(false);
            } else {
                visible.push(true);
                positive.push(sigma.es.polarity(s) == Polarity::Positive);
            }
        }
        let mut node_of_t: HashMap<EventId, usize> = HashMap::new();
        for t in w.t.iter() {
            let l = tau.label[t];
            if l < bl {
                // identified with the S event at θ_B⁻¹(l)
                let src = match theta_b {
                    Some(th) => th.pairs().iter().find(|p| p.1 == l).map(|p| p.0).unwrap_or(usize::MAX),
                    None => l,
                };
                if let Some(&n) = node_of_b.get(&src) {
                    node_of_t.insert(t, n);
                }
            } else {
                node_of_t.insert(t, visible.len());
                visible.push(true);
                positive.push(tau.es.polarity(t) == Polarity::Positive);
            }
        }
        let mut preds = vec![Vec::new(); visible.len()];
        for &s in &s_ev {
            for &p in sigma.es.preds(s) {
                preds[node_of_s[&s]].push(node_of_s[&p]);
            }
        }
        for t in w.t.iter() {
            let Some(&nt) = node_of_t.get(&t) else { continue };
            for &p in tau.es.preds(t) {
                if let Some(&np) = node_of_t.get(&p) {
                    if !preds[nt].contains(&np) {
                        preds[nt].push(np);
                    }
                }
            }
        }
        Merged { preds, visible, positive }
    }

    fn acyclic(&self) -> bool {
        let n = self.preds.len();
        let mut indeg: Vec<usize> = self.preds.iter().map(|p| p.len()).collect();
        let mut succs = vec![Vec::new(); n];
        for (b, ps) in self.preds.iter().enumerate() {
            for &a in ps {
                succs[a].push(b);
            }
        }
        let mut ready: Vec<usize> = (0..n).filter(|&i| indeg[i] == 0).collect();
        let mut seen = 0;
        while let Some(a) = ready.pop() {
            seen += 1;
            for &b in &succs[a] {
                indeg[b] -= 1;
                if indeg[b] == 0 {
                    ready.push(b);
                }
            }
        }
        seen == n
    }

    fn maximal(&self) -> Vec<usize> {
        let mut has_succ = vec![false; self.preds.len()];
        for ps in &self.preds {
            for &a in ps {
                has_succ[a] = true;
            }
        }
        (0..self.preds.len()).filter(|&i| !has_succ[i]).collect()
    }
}

fn check_shared_game(sigma: &Strategy, tau: &Strategy) -> Result<()> {
    if sigma.right != tau.left {
        return Err(Error::GameMismatch(format!(
            "right game of {} differs from left game of {}",
            sigma.name, tau.name
        )));
    }
    Ok(())
}

/// Whether the composite bijection between `x^S` and `x^T`, identifying
/// `B` events through `θ_B : x^S_B ≅ x^T_B` (identity when `None`), is
/// secured: the union of both causal orders is acyclic.
pub fn is_secured(sigma: &Strategy, tau: &Strategy, w: State, theta_b: Option<&ConfigIso>) -> bool {
    Merged::build(sigma, tau, w, theta_b).acyclic()
}

/// Interaction of `σ : A → B` and `τ : B → C`: its states.
#[derive(Clone, Debug)]
pub struct Interaction {
    pub states: Vec<State>,
}

impl Interaction {
    /// Prime states: those with a single maximal merged event.
    pub fn primes(&self, sigma: &Strategy, tau: &Strategy) -> Vec<State> {
        self.states
            .iter()
            .copied()
            .filter(|&w| Merged::build(sigma, tau, w, None).maximal().len() == 1)
            .collect()
    }
}

/// `(τ⊛σ)(w) = x_A ∥ x_B ∥ x_C`, each in its own game's numbering.
pub fn state_projection(sigma: &Strategy, tau: &Strategy, w: State) -> (EventSet, EventSet, EventSet) {
    (sigma.proj_left(w.s), sigma.proj_right(w.s), tau.proj_right(w.t))
}

/// Every matching, causally compatible pair of configurations.
pub fn interaction(sigma: &Strategy, tau: &Strategy) -> Result<Interaction> {
    check_shared_game(sigma, tau)?;
    let mut by_b: HashMap<EventSet, Vec<EventSet>> = HashMap::new();
    for &xt in tau.configurations()? {
        by_b.entry(tau.proj_left(xt)).or_default().push(xt);
    }
    let mut states = Vec::new();
    for &xs in sigma.configurations()? {
        if let Some(ts) = by_b.get(&sigma.proj_right(xs)) {
            for &xt in ts {
                let w = State { s: xs, t: xt };
                if is_secured(sigma, tau, w, None) {
                    if states.len() >= DEFAULT_CAP {
                        return Err(Error::SizeLimitExceeded(DEFAULT_CAP));
                    }
                    states.push(w);
                }
            }
        }
    }
    Ok(Interaction { states })
}

/// A state is minimal iff all its maximal merged events are visible.
pub fn is_minimal_state(sigma: &Strategy, tau: &Strategy, w: State) -> bool {
    let m = Merged::build(sigma, tau, w, None);
    m.maximal().iter().all(|&i| m.visible[i])
}

/// A state is +-covered iff all its maximal merged events are visible and
/// positive.
pub fn is_plus_covered_state(sigma: &Strategy, tau: &Strategy, w: State) -> bool {
    let m = Merged::build(sigma, tau, w, None);
    m.maximal().iter().all(|&i| m.visible[i] && m.positive[i])
}

/// `τ ⊙ σ`. Its events are the prime minimal states; the number of its
/// configurations is checked against the number of minimal states.
pub fn compose(sigma: &Strategy, tau: &Strategy) -> Result<Strategy> {
    let inter = interaction(sigma, tau)?;
    let minimal: Vec<State> = inter
        .states
        .iter()
        .copied()
        .filter(|&w| is_minimal_state(sigma, tau, w))
        .collect();
    let mut primes: Vec<(State, Side)> = Vec::new();
    for &w in &minimal {
        let m = Merged::build(sigma, tau, w, None);
        let max = m.maximal();
        if max.len() != 1 {
            continue;
        }
        let node = max[0];
        let ns = w.s.len();
        let top = if node < ns {
            Side::S(w.s.iter().nth(node).unwrap())
        } else {
            // T events outside B, in order
            let t = w
                .t
                .iter()
                .filter(|&t| tau.label[t] >= tau.left_len())
                .nth(node - ns)
                .unwrap();
            Side::T(t)
        };
        primes.push((w, top));
    }
    primes.sort_by(|a, b| {
        (a.0.s.len() + a.0.t.len())
            .cmp(&(b.0.s.len() + b.0.t.len()))
            .then(a.0.s.lex_cmp(b.0.s))
            .then(a.0.t.lex_cmp(b.0.t))
    });
    let al = sigma.left_len();
    let bl = sigma.right.len();
    let game = parallel(&dual(&sigma.left), &tau.right);
    let mut d = EsDecl::default();
    let mut label = Vec::new();
    for (_, top) in &primes {
        let (g, p) = match *top {
            Side::S(v) => (sigma.label[v], sigma.es.polarity(v)),
            Side::T(v) => (al + tau.label[v] - bl, tau.es.polarity(v)),
        };
        d.event_with_copy(p, game.es.label(g), game.es.copy_indices(g).to_vec());
        label.push(g);
    }
    for (i, (wi, _)) in primes.iter().enumerate() {
        for (j, (wj, _)) in primes.iter().enumerate() {
            if i != j && wi.is_subset(*wj) {
                d.edge(i, j);
            }
        }
    }
    for (i, (wi, _)) in primes.iter().enumerate() {
        for (j, (wj, _)) in primes.iter().enumerate().skip(i + 1) {
            let u = wi.union(*wj);
            if !sigma.es.is_configuration(u.s) || !tau.es.is_configuration(u.t) {
                d.conflict(i, j);
            }
        }
    }
    let es = EventStructure::new(&d)?;
    let n_configs = es.configurations()?.len();
    if n_configs != minimal.len() {
        return Err(Error::BijectionFailure(format!(
            "{} configurations of the composition but {} minimal states",
            n_configs,
            minimal.len()
        )));
    }
    let sym = StrategySym::Composite(Box::new(CompositeSym {
        sigma: sigma.clone(),
        tau: tau.clone(),
        primes: primes.iter().map(|p| p.0).collect(),
        tops: primes.iter().map(|p| p.1).collect(),
    }));
    let name = format!("{}⊙{}", tau.name, sigma.name);
    Strategy::new(&name, es, sym, sigma.left.clone(), tau.right.clone(), label)
}

/// The state of a configuration of `τ ⊙ σ`.
pub fn state_of(comp: &Strategy, z: EventSet) -> Option<State> {
    match &comp.sym {
        StrategySym::Composite(c) => Some(c.state_of(z)),
        _ => None,
    }
}

/// Matches +-covered interaction states with +-covered configurations of
/// the composition, checking bijectivity and projections.
pub fn pcov_bijection(sigma: &Strategy, tau: &Strategy, comp: &Strategy) -> Result<Vec<(State, EventSet)>> {
    let StrategySym::Composite(c) = &comp.sym else {
        return Err(Error::InvalidStrategy("not a composition".into()));
    };
    let inter = interaction(sigma, tau)?;
    let mut out = Vec::new();
    let mut hit: HashMap<EventSet, State> = HashMap::new();
    for &w in &inter.states {
        if !is_plus_covered_state(sigma, tau, w) {
            continue;
        }
        let z: EventSet = (0..comp.es.len()).filter(|&e| c.primes[e].is_subset(w)).collect();
        if !comp.es.is_configuration(z) || !comp.es.is_plus_covered(z) {
            return Err(Error::BijectionFailure(format!("{:?} maps to a non +-covered set", w)));
        }
        let (xa, _, xc) = state_projection(sigma, tau, w);
        if comp.proj_left(z) != xa || comp.proj_right(z) != xc {
            return Err(Error::BijectionFailure(format!("{:?}: projections differ", w)));
        }
        if hit.insert(z, w).is_some() {
            return Err(Error::BijectionFailure(format!("{:?} is hit twice", z)));
        }
        out.push((w, z));
    }
    let target = comp
        .configurations()?
        .iter()
        .filter(|&&z| comp.es.is_plus_covered(z))
        .count();
    if target != out.len() {
        return Err(Error::BijectionFailure(format!(
            "{} +-covered states but {} +-covered configurations",
            out.len(),
            target
        )));
    }
    Ok(out)
}

/// A deadlock witness: configurations and a middle symmetry whose
/// composite bijection is not secured.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Deadlock {
    pub state: State,
    pub theta_b: ConfigIso,
}

/// The first deadlock found, or `None` when the strategies do not deadlock.
pub fn find_deadlock(sigma: &Strategy, tau: &Strategy) -> Result<Option<Deadlock>> {
    check_shared_game(sigma, tau)?;
    let b = &sigma.right;
    let mut s_by_b: HashMap<EventSet, Vec<EventSet>> = HashMap::new();
    for &xs in sigma.configurations()? {
        s_by_b.entry(sigma.proj_right(xs)).or_default().push(xs);
    }
    let mut t_by_b: HashMap<EventSet, Vec<EventSet>> = HashMap::new();
    for &xt in tau.configurations()? {
        t_by_b.entry(tau.proj_left(xt)).or_default().push(xt);
    }
    let mut sb: Vec<&EventSet> = s_by_b.keys().collect();
    sb.sort_by(|p, q| p.lex_cmp(**q));
    let mut tb: Vec<&EventSet> = t_by_b.keys().collect();
    tb.sort_by(|p, q| p.lex_cmp(**q));
    for &bs in &sb {
        for &bt in &tb {
            if bs.len() != bt.len() || b.class_of(*bs)? != b.class_of(*bt)? {
                continue;
            }
            for theta in b.isos(Flavor::Full, *bs, *bt)? {
                for &xs in &s_by_b[bs] {
                    for &xt in &t_by_b[bt] {
                        let w = State { s: xs, t: xt };
                        if !is_secured(sigma, tau, w, Some(&theta)) {
                            return Ok(Some(Deadlock { state: w, theta_b: theta }));
                        }
                    }
                }
            }
        }
    }
    Ok(None)
}

pub fn no_deadlock(sigma: &Strategy, tau: &Strategy) -> Result<bool> {
    Ok(find_deadlock(sigma, tau)?.is_none())
}

/// Outcome of synchronizing two witnesses along a middle symmetry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SyncResult {
    pub y_s: EventSet,
    pub y_t: EventSet,
    /// `x^S ≅_S y^S`.
    pub theta_s: ConfigIso,
    /// `y^T ≅_T x^T`.
    pub theta_t: ConfigIso,
    /// The mediating symmetry `θ_B` that was synchronized.
    pub theta_b: ConfigIso,
    /// Number of solutions found, all connected by symmetry.
    pub solutions: usize,
}

/// All causally compatible `(y^S, y^T)` with `θ^S : x^S ≅ y^S`,
/// `θ^T : y^T ≅ x^T` such that `(τθ^T)_B ∘ (σθ^S)_B = θ_B`.
pub fn weak_bipullback_all(
    sigma: &Strategy,
    tau: &Strategy,
    xs: EventSet,
    xt: EventSet,
    theta_b: &ConfigIso,
) -> Result<Vec<SyncResult>> {
    check_shared_game(sigma, tau)?;
    if !is_secured(sigma, tau, State { s: xs, t: xt }, Some(theta_b)) {
        return Err(Error::NoSolution("the composite bijection is not secured".into()));
    }
    let al = sigma.left_len();
    let bl = sigma.right.len();
    let mut t_by_b: HashMap<EventSet, Vec<EventSet>> = HashMap::new();
    for &yt in tau.configurations()? {
        if yt.len() == xt.len() {
            t_by_b.entry(tau.proj_left(yt)).or_default().push(yt);
        }
    }
    let sig_x = sigma.es.signature(xs);
    let mut out = Vec::new();
    for &ys in sigma.configurations()? {
        if ys.len() != xs.len() || sigma.es.signature(ys) != sig_x {
            continue;
        }
        let Some(cands) = t_by_b.get(&sigma.proj_right(ys)) else { continue };
        for phi in sigma.sym_isos(xs, ys)? {
            let beta = sigma.iso_image(&phi).slice(al, bl);
            let need = beta.inverse().then(theta_b);
            for &yt in cands {
                if !is_secured(sigma, tau, State { s: ys, t: yt }, None) {
                    continue;
                }
                for psi in tau.sym_isos(yt, xt)? {
                    if tau.iso_image(&psi).slice(0, bl) == need {
                        out.push(SyncResult {
                            y_s: ys,
                            y_t: yt,
                            theta_s: phi.clone(),
                            theta_t: psi,
                            theta_b: theta_b.clone(),
                            solutions: 0,
                        });
                    }
                }
            }
        }
    }
    let n = out.len();
    for r in &mut out {
        r.solutions = n;
    }
    Ok(out)
}

/// The first solution of [`weak_bipullback_all`].
pub fn weak_bipullback(
    sigma: &Strategy,
    tau: &Strategy,
    xs: EventSet,
    xt: EventSet,
    theta_b: &ConfigIso,
) -> Result<SyncResult> {
    weak_bipullback_all(sigma, tau, xs, xt, theta_b)?
        .into_iter()
        .next()
        .ok_or_else(|| Error::NoSolution("no synchronization exists".into()))
}

/// Result of acting on a witness by a negative symmetry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NegativeAction {
    pub y_s: EventSet,
    /// `φ : x^S ≅_S y^S`.
    pub phi: ConfigIso,
    /// `θ⁺ : y ≅⁺ σy^S`.
    pub theta_pos: ConfigIso,
}

/// For `θ⁻ : σx^S ≅⁻ y` on the game of `σ`, the unique `φ` with
/// `σφ = θ⁺ ∘ θ⁻` for some positive `θ⁺`.
pub fn negative_action(sigma: &Strategy, xs: EventSet, theta_neg: &ConfigIso) -> Result<NegativeAction> {
    if !sigma.game.is_member(Flavor::Neg, theta_neg) || theta_neg.source != sigma.image(xs) {
        return Err(Error::InvalidStrategy("not a negative symmetry from σx^S".into()));
    }
    let sig_x = sigma.es.signature(xs);
    let mut found = Vec::new();
    for &ys in sigma.configurations()? {
        if ys.len() != xs.len() || sigma.es.signature(ys) != sig_x {
            continue;
        }
        for phi in sigma.sym_isos(xs, ys)? {
            let pos = theta_neg.inverse().then(&sigma.iso_image(&phi));
            if sigma.game.pos.admits(pos.pairs()) {
                found.push(NegativeAction { y_s: ys, phi, theta_pos: pos });
            }
        }
    }
    match found.len() {
        0 => Err(Error::NoSolution(format!("no φ for {:?}", theta_neg))),
        1 => Ok(found.pop().unwrap()),
        n => Err(Error::NonUnique(format!("{} solutions for {:?}", n, theta_neg))),
    }
}

/// Copycat on `A`: each event of `A` on the negative side precedes its
/// copy on the positive side.
pub fn copycat(a: &Tcg) -> Result<Strategy> {
    let game = parallel(&dual(a), a);
    let n = a.len();
    let mut d = EsDecl::default();
    for e in 0..2 * n {
        let side = if e < n { "l" } else { "r" };
        d.event_with_copy(
            game.es.polarity(e),
            &format!("{}.{}", side, game.es.label(e)),
            game.es.copy_indices(e).to_vec(),
        );
    }
    for e in 0..n {
        for &p in a.es.preds(e) {
            d.edge(p, e);
            d.edge(n + p, n + e);
        }
        if game.es.polarity(e) == Polarity::Negative {
            d.edge(e, n + e);
        } else {
            d.edge(n + e, e);
        }
    }
    for (x, y) in a.es.minimal_conflicts() {
        d.conflict(x, y);
        d.conflict(n + x, n + y);
    }
    let es = EventStructure::new(&d)?;
    Strategy::new(
        "cc",
        es,
        StrategySym::Spec(SymmetrySpec::AllOrderIsos),
        a.clone(),
        a.clone(),
        (0..2 * n).collect(),
    )
}

impl Default for State {
    fn default() -> State {
        State { s: EventSet::EMPTY, t: EventSet::EMPTY }
    }
}
