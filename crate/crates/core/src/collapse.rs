//! Quantitative collapse.
//!
//! A strategy `σ : A → B` collapses to a matrix indexed by symmetry classes
//! of `A` and `B`, whose entries count the +-covered configurations of `S`
//! matching fixed representatives up to negative symmetry on `A` and
//! positive symmetry on `B`. This module also carries the bookkeeping used
//! to check that collapse commutes with composition: witnesses paired with
//! explicit symmetries, interaction witnesses, the synchronization bijection
//! and a step-by-step trace of the counting argument.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, Mul};

use num_rational::Ratio;

use crate::esp_core::{EventSet, DEFAULT_CAP};
use crate::strategies::{
    compose, interaction, is_plus_covered_state, is_secured, negative_action, weak_bipullback_all, State,
    Strategy,
};
use crate::symmetry::{factorize, is_canonical, ConfigIso, Flavor, Tcg};
use crate::{Error, Result};

/// An element of `ℕ ∪ {∞}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Weight {
    Fin(u128),
    Inf,
}

impl Weight {
    pub const ZERO: Weight = Weight::Fin(0);
    pub const ONE: Weight = Weight::Fin(1);

    pub fn is_zero(self) -> bool {
        self == Weight::ZERO
    }

    pub fn finite(self) -> Option<u128> {
        match self {
            Weight::Fin(n) => Some(n),
            Weight::Inf => None,
        }
    }
}

impl From<usize> for Weight {
    fn from(n: usize) -> Weight {
        Weight::Fin(n as u128)
    }
}

impl Add for Weight {
    type Output = Weight;
    fn add(self, o: Weight) -> Weight {
        match (self, o) {
            (Weight::Fin(a), Weight::Fin(b)) => a.checked_add(b).map_or(Weight::Inf, Weight::Fin),
            _ => Weight::Inf,
        }
    }
}

impl Mul for Weight {
    type Output = Weight;
    /// `0 · ∞ = 0`.
    fn mul(self, o: Weight) -> Weight {
        if self.is_zero() || o.is_zero() {
            return Weight::ZERO;
        }
        match (self, o) {
            (Weight::Fin(a), Weight::Fin(b)) => a.checked_mul(b).map_or(Weight::Inf, Weight::Fin),
            _ => Weight::Inf,
        }
    }
}

impl Sum for Weight {
    fn sum<I: Iterator<Item = Weight>>(it: I) -> Weight {
        it.fold(Weight::ZERO, |a, b| a + b)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Weight::Fin(n) => write!(f, "{}", n),
            Weight::Inf => write!(f, "∞"),
        }
    }
}

/// A matrix over `ℕ ∪ {∞}` whose rows and columns are symmetry classes,
/// each named by its representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedRelation {
    pub rows: Vec<EventSet>,
    pub cols: Vec<EventSet>,
    pub row_names: Vec<String>,
    pub col_names: Vec<String>,
    pub entries: Vec<Vec<Weight>>,
}

impl WeightedRelation {
    pub fn zero(rows: Vec<EventSet>, row_names: Vec<String>, cols: Vec<EventSet>, col_names: Vec<String>) -> Self {
        let entries = vec![vec![Weight::ZERO; cols.len()]; rows.len()];
        WeightedRelation { rows, cols, row_names, col_names, entries }
    }

    pub fn identity(reps: Vec<EventSet>, names: Vec<String>) -> Self {
        let mut r = WeightedRelation::zero(reps.clone(), names.clone(), reps, names);
        for i in 0..r.rows.len() {
            r.entries[i][i] = Weight::ONE;
        }
        r
    }

    pub fn get(&self, i: usize, j: usize) -> Weight {
        self.entries[i][j]
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows.len(), self.cols.len())
    }

    /// Nonzero entries as `(row, col, weight)`.
    pub fn support(&self) -> Vec<(usize, usize, Weight)> {
        let mut out = Vec::new();
        for (i, row) in self.entries.iter().enumerate() {
            for (j, &w) in row.iter().enumerate() {
                if !w.is_zero() {
                    out.push((i, j, w));
                }
            }
        }
        out
    }
}

impl fmt::Display for WeightedRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w0 = self.row_names.iter().map(|s| s.chars().count()).max().unwrap_or(0).max(1);
        let widths: Vec<usize> = (0..self.cols.len())
            .map(|j| {
                let cell = self.entries.iter().map(|r| r[j].to_string().chars().count()).max().unwrap_or(1);
                cell.max(self.col_names[j].chars().count())
            })
            .collect();
        write!(f, "{:w0$}", "", w0 = w0)?;
        for (j, n) in self.col_names.iter().enumerate() {
            write!(f, " | {:>w$}", n, w = widths[j])?;
        }
        writeln!(f)?;
        for (i, row) in self.entries.iter().enumerate() {
            write!(f, "{:w0$}", self.row_names[i], w0 = w0)?;
            for (j, v) in row.iter().enumerate() {
                write!(f, " | {:>w$}", v.to_string(), w = widths[j])?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// `(s ∘ r)(a, c) = Σ_b r(a, b) · s(b, c)`.
pub fn matrix_compose(r: &WeightedRelation, s: &WeightedRelation) -> Result<WeightedRelation> {
    if r.cols != s.rows {
        return Err(Error::DimensionMismatch(format!(
            "{} columns against {} rows, or different representatives",
            r.cols.len(),
            s.rows.len()
        )));
    }
    let mut out = WeightedRelation::zero(r.rows.clone(), r.row_names.clone(), s.cols.clone(), s.col_names.clone());
    for i in 0..r.rows.len() {
        for k in 0..s.cols.len() {
            out.entries[i][k] = (0..r.cols.len()).map(|j| r.entries[i][j] * s.entries[j][k]).sum();
        }
    }
    Ok(out)
}

/// A representative per symmetry class of a game, indexed like
/// [`Tcg::symmetry_classes`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Atlas {
    reps: Vec<EventSet>,
}

impl Atlas {
    /// Least canonical member of each class.
    pub fn canonical(g: &Tcg) -> Result<Atlas> {
        let mut reps = Vec::new();
        for c in g.symmetry_classes()? {
            match c.least_canonical {
                Some(x) => reps.push(x),
                None => {
                    return Err(Error::NotRepresentable(format!(
                        "class of {} has no canonical member",
                        g.describe(c.members[0])
                    )))
                }
            }
        }
        Ok(Atlas { reps })
    }

    /// Least member of each class, canonical or not.
    pub fn least(g: &Tcg) -> Result<Atlas> {
        Ok(Atlas { reps: g.symmetry_classes()?.iter().map(|c| c.members[0]).collect() })
    }

    /// Canonical when the game is representable, least otherwise.
    pub fn auto(g: &Tcg) -> Result<Atlas> {
        Ok(Atlas { reps: g.symmetry_classes()?.iter().map(|c| c.chosen_rep).collect() })
    }

    pub fn from_reps(g: &Tcg, reps: Vec<EventSet>) -> Result<Atlas> {
        let classes = g.symmetry_classes()?;
        if reps.len() != classes.len() {
            return Err(Error::DimensionMismatch(format!("{} representatives for {} classes", reps.len(), classes.len())));
        }
        for (i, &x) in reps.iter().enumerate() {
            if g.class_of(x)? != i {
                return Err(Error::InvalidStructure(format!("{} is not in class {}", g.describe(x), i)));
            }
        }
        Ok(Atlas { reps })
    }

    /// Replaces the representative of the class of `x` by `x`.
    pub fn with_rep(mut self, g: &Tcg, x: EventSet) -> Result<Atlas> {
        let c = g.class_of(x)?;
        self.reps[c] = x;
        Ok(self)
    }

    pub fn reps(&self) -> &[EventSet] {
        &self.reps
    }

    pub fn rep(&self, class: usize) -> EventSet {
        self.reps[class]
    }

    pub fn rep_of(&self, g: &Tcg, x: EventSet) -> Result<EventSet> {
        Ok(self.reps[g.class_of(x)?])
    }

    pub fn is_canonical(&self, g: &Tcg) -> Result<bool> {
        for &x in &self.reps {
            if !is_canonical(g, x)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The chosen `κ_x : x ≅ x̄`: identity on representatives, least iso
    /// otherwise.
    pub fn kappa(&self, g: &Tcg, x: EventSet) -> Result<ConfigIso> {
        self.kappa_flavor(g, Flavor::Full, x)?
            .ok_or_else(|| Error::NotAConfiguration(g.describe(x)))
    }

    /// As [`Atlas::kappa`] within a polarized family; `None` when `x` is
    /// not related to its representative in that family.
    pub fn kappa_flavor(&self, g: &Tcg, f: Flavor, x: EventSet) -> Result<Option<ConfigIso>> {
        let rep = self.rep_of(g, x)?;
        if x == rep {
            return Ok(Some(ConfigIso::identity(x)));
        }
        g.least_iso(f, x, rep)
    }

    fn names(&self, g: &Tcg) -> Vec<String> {
        self.reps.iter().map(|&x| g.describe(x)).collect()
    }
}

/// Every atlas obtained from the canonical one by swapping in another
/// canonical member of `class`.
pub fn canonical_atlases(g: &Tcg, class: usize) -> Result<Vec<Atlas>> {
    let base = Atlas::canonical(g)?;
    let mut out = Vec::new();
    for &x in &g.symmetry_classes()?[class].members {
        if is_canonical(g, x)? {
            out.push(base.clone().with_rep(g, x)?);
        }
    }
    Ok(out)
}

/// `θ[x, y] = κ_y⁻¹ ∘ θ ∘ κ_x` for an endosymmetry `θ` of a representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransportedSymmetry {
    pub base: ConfigIso,
    pub x: EventSet,
    pub y: EventSet,
    pub iso: ConfigIso,
}

pub fn transport(g: &Tcg, atlas: &Atlas, base: &ConfigIso, x: EventSet, y: EventSet) -> Result<TransportedSymmetry> {
    let kx = atlas.kappa(g, x)?;
    let ky = atlas.kappa(g, y)?;
    if kx.target != base.source || ky.target != base.target {
        return Err(Error::GameMismatch("endpoints are not in the class of the base".into()));
    }
    let iso = kx.then(base).then(&ky.inverse());
    Ok(TransportedSymmetry { base: base.clone(), x, y, iso })
}

/// Orders of the full, positive and negative endosymmetry groups.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SymSizes {
    pub full: usize,
    pub pos: usize,
    pub neg: usize,
}

impl SymSizes {
    pub fn factors(&self) -> bool {
        self.full == self.pos * self.neg
    }
}

pub fn sym_sizes(g: &Tcg, x: EventSet) -> Result<SymSizes> {
    Ok(SymSizes {
        full: g.count(Flavor::Full, x, x)?,
        pos: g.count(Flavor::Pos, x, x)?,
        neg: g.count(Flavor::Neg, x, x)?,
    })
}

/// Classes whose members do not all have the same number of negative
/// endosymmetries, with the distinct orders found.
pub fn sym_neg_variation(g: &Tcg) -> Result<Vec<(usize, Vec<usize>)>> {
    let mut out = Vec::new();
    for (i, c) in g.symmetry_classes()?.iter().enumerate() {
        let mut sizes: Vec<usize> = Vec::new();
        for &x in &c.members {
            let n = g.count(Flavor::Neg, x, x)?;
            if !sizes.contains(&n) {
                sizes.push(n);
            }
        }
        if sizes.len() > 1 {
            sizes.sort();
            out.push((i, sizes));
        }
    }
    Ok(out)
}

fn plus_covered(sigma: &Strategy) -> Result<Vec<EventSet>> {
    Ok(sigma
        .configurations()?
        .iter()
        .copied()
        .filter(|&x| sigma.es.is_plus_covered(x))
        .collect())
}

fn matches(sigma: &Strategy, aa: &Atlas, ab: &Atlas, x: EventSet, ca: usize, cb: usize) -> Result<bool> {
    let (xa, xb) = (sigma.proj_left(x), sigma.proj_right(x));
    Ok(sigma.left.class_of(xa)? == ca
        && sigma.right.class_of(xb)? == cb
        && sigma.left.related(Flavor::Neg, xa, aa.rep(ca))?
        && sigma.right.related(Flavor::Pos, xb, ab.rep(cb))?)
}

/// Symmetry classes of `S` among +-covered configurations whose
/// projections lie in the classes `ca` of `A` and `cb` of `B`.
pub fn wit(sigma: &Strategy, ca: usize, cb: usize) -> Result<Vec<Vec<EventSet>>> {
    let mut xs = Vec::new();
    for x in plus_covered(sigma)? {
        if sigma.left.class_of(sigma.proj_left(x))? == ca && sigma.right.class_of(sigma.proj_right(x))? == cb {
            xs.push(x);
        }
    }
    group_by_symmetry(sigma, &xs)
}

fn group_by_symmetry(sigma: &Strategy, xs: &[EventSet]) -> Result<Vec<Vec<EventSet>>> {
    let mut buckets: HashMap<Vec<u64>, Vec<Vec<EventSet>>> = HashMap::new();
    for &x in xs {
        let groups = buckets.entry(sigma.es.signature(x)).or_default();
        let mut placed = false;
        for g in groups.iter_mut() {
            if sigma.sym_related(g[0], x)? {
                g.push(x);
                placed = true;
                break;
            }
        }
        if !placed {
            groups.push(vec![x]);
        }
    }
    let mut out: Vec<Vec<EventSet>> = buckets.into_values().flatten().collect();
    out.sort_by(|a, b| a[0].lex_cmp(b[0]));
    Ok(out)
}

/// +-covered `x^S` with `x^S_A ≅⁻ x̄_A` and `x^S_B ≅⁺ x̄_B`.
pub fn wit_plus(sigma: &Strategy, aa: &Atlas, ab: &Atlas, ca: usize, cb: usize) -> Result<Vec<EventSet>> {
    let mut out = Vec::new();
    for x in plus_covered(sigma)? {
        if matches(sigma, aa, ab, x, ca, cb)? {
            out.push(x);
        }
    }
    Ok(out)
}

/// Like [`wit_plus`] but over all configurations, +-covered or not.
pub fn matching_configurations(sigma: &Strategy, aa: &Atlas, ab: &Atlas, ca: usize, cb: usize) -> Result<Vec<EventSet>> {
    let mut out = Vec::new();
    for &x in sigma.configurations()? {
        if matches(sigma, aa, ab, x, ca, cb)? {
            out.push(x);
        }
    }
    Ok(out)
}

/// A witness with explicit symmetries `θ⁻ : x_A ≅⁻ x̄_A`, `θ⁺ : x_B ≅⁺ x̄_B`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SymWitness {
    pub neg: ConfigIso,
    pub x: EventSet,
    pub pos: ConfigIso,
}

pub fn swit_plus(sigma: &Strategy, aa: &Atlas, ab: &Atlas, ca: usize, cb: usize) -> Result<Vec<SymWitness>> {
    let mut out = Vec::new();
    for x in wit_plus(sigma, aa, ab, ca, cb)? {
        let negs = sigma.left.isos(Flavor::Neg, sigma.proj_left(x), aa.rep(ca))?;
        let poss = sigma.right.isos(Flavor::Pos, sigma.proj_right(x), ab.rep(cb))?;
        for n in &negs {
            for p in &poss {
                out.push(SymWitness { neg: n.clone(), x, pos: p.clone() });
            }
        }
    }
    Ok(out)
}

/// `(|~⁺wit⁺|, |Sym⁻(x̄_A)| · |wit⁺| · |Sym⁺(x̄_B)|)`.
pub fn elim_sym_strategy(sigma: &Strategy, aa: &Atlas, ab: &Atlas, ca: usize, cb: usize) -> Result<(usize, usize)> {
    let lhs = swit_plus(sigma, aa, ab, ca, cb)?.len();
    let ra = aa.rep(ca);
    let rb = ab.rep(cb);
    let rhs = sigma.left.count(Flavor::Neg, ra, ra)?
        * wit_plus(sigma, aa, ab, ca, cb)?.len()
        * sigma.right.count(Flavor::Pos, rb, rb)?;
    Ok((lhs, rhs))
}

/// A witness of `σ` seen on its whole game `A⊥ ∥ B`, with an iso
/// `σx ≅ x̄` to the representative.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GameWitness {
    pub x: EventSet,
    pub iso: ConfigIso,
}

/// `(x^S, θ⁺)` with `x^S` +-covered and `θ⁺ : σx^S ≅⁺ x̄`.
pub fn swit_plus_game(sigma: &Strategy, ag: &Atlas, class: usize) -> Result<Vec<GameWitness>> {
    let rep = ag.rep(class);
    let mut out = Vec::new();
    for x in plus_covered(sigma)? {
        let gx = sigma.image(x);
        if sigma.game.class_of(gx)? != class {
            continue;
        }
        for iso in sigma.game.isos(Flavor::Pos, gx, rep)? {
            out.push(GameWitness { x, iso });
        }
    }
    Ok(out)
}

/// `(x^S, θ)` with `σx^S ≅⁺ x̄` and `θ : σx^S ≅ x̄` arbitrary.
pub fn swit(sigma: &Strategy, ag: &Atlas, class: usize) -> Result<Vec<GameWitness>> {
    let rep = ag.rep(class);
    let mut out = Vec::new();
    for x in plus_covered(sigma)? {
        let gx = sigma.image(x);
        if sigma.game.class_of(gx)? != class || !sigma.game.related(Flavor::Pos, gx, rep)? {
            continue;
        }
        for iso in sigma.game.isos(Flavor::Full, gx, rep)? {
            out.push(GameWitness { x, iso });
        }
    }
    Ok(out)
}

/// `φ⁻ ↷ (x^S, θ⁺)`: Player's answer to a change of Opponent indices on
/// the representative.
pub fn act(sigma: &Strategy, phi_neg: &ConfigIso, w: &GameWitness) -> Result<GameWitness> {
    let g = &sigma.game;
    if !g.is_member(Flavor::Neg, phi_neg) || phi_neg.source != w.iso.target || phi_neg.target != w.iso.target {
        return Err(Error::InvalidStructure("not a negative endosymmetry of the representative".into()));
    }
    let f = factorize(g, &w.iso.then(phi_neg))?;
    let na = negative_action(sigma, w.x, &f.neg)?;
    Ok(GameWitness { x: na.y_s, iso: na.theta_pos.inverse().then(&f.pos) })
}

/// `θ = θ⁻ ∘ θ⁺` with `θ⁺ : x ≅⁺ x̄` and `θ⁻` a negative endosymmetry of
/// `x̄`; unique when `x̄` is canonical.
pub fn dec_canonical(g: &Tcg, theta: &ConfigIso) -> Result<(ConfigIso, ConfigIso)> {
    let mut found = Vec::new();
    for pos in g.isos(Flavor::Pos, theta.source, theta.target)? {
        let neg = pos.inverse().then(theta);
        if g.is_member(Flavor::Neg, &neg) {
            found.push((neg, pos));
        }
    }
    match found.len() {
        0 => Err(Error::NoFactorization(format!("{:?}", theta))),
        1 => Ok(found.pop().unwrap()),
        n => Err(Error::NonUniqueFactorization(format!("{:?} has {} decompositions", theta, n))),
    }
}

/// `F(x^S, θ⁻ ∘ θ⁺) = θ⁻ ↷ (x^S, θ⁺)`.
pub fn f_map(sigma: &Strategy, w: &GameWitness) -> Result<GameWitness> {
    let (neg, pos) = dec_canonical(&sigma.game, &w.iso)?;
    act(sigma, &neg, &GameWitness { x: w.x, iso: pos })
}

/// Fibers of `F` over one class of the whole game.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberReport {
    pub sym_neg: usize,
    pub source: usize,
    pub target: usize,
    /// Number of antecedents of each element of the target, in order.
    pub fibers: Vec<usize>,
}

impl FiberReport {
    pub fn holds(&self) -> bool {
        self.fibers.len() == self.target && self.fibers.iter().all(|&n| n == self.sym_neg)
    }
}

pub fn f_fibers(sigma: &Strategy, ag: &Atlas, class: usize) -> Result<FiberReport> {
    let target = swit_plus_game(sigma, ag, class)?;
    let source = swit(sigma, ag, class)?;
    let mut hits: HashMap<GameWitness, usize> = target.iter().map(|w| (w.clone(), 0)).collect();
    for w in &source {
        let img = f_map(sigma, w)?;
        match hits.get_mut(&img) {
            Some(n) => *n += 1,
            None => return Err(Error::BijectionFailure(format!("F sends {:?} outside the target", w))),
        }
    }
    let rep = ag.rep(class);
    Ok(FiberReport {
        sym_neg: sigma.game.count(Flavor::Neg, rep, rep)?,
        source: source.len(),
        target: target.len(),
        fibers: target.iter().map(|w| hits[w]).collect(),
    })
}

/// Atlases for the three games of `σ : A → B` and `τ : B → C`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Atlases {
    pub a: Atlas,
    pub b: Atlas,
    pub c: Atlas,
}

impl Atlases {
    pub fn canonical(sigma: &Strategy, tau: &Strategy) -> Result<Atlases> {
        Ok(Atlases {
            a: Atlas::canonical(&sigma.left)?,
            b: Atlas::canonical(&sigma.right)?,
            c: Atlas::canonical(&tau.right)?,
        })
    }

    pub fn auto(sigma: &Strategy, tau: &Strategy) -> Result<Atlases> {
        Ok(Atlases {
            a: Atlas::auto(&sigma.left)?,
            b: Atlas::auto(&sigma.right)?,
            c: Atlas::auto(&tau.right)?,
        })
    }
}

/// +-covered states of the interaction.
pub fn plus_states(sigma: &Strategy, tau: &Strategy) -> Result<Vec<State>> {
    Ok(interaction(sigma, tau)?
        .states
        .into_iter()
        .filter(|&w| is_plus_covered_state(sigma, tau, w))
        .collect())
}

/// Class indices of a state's projections, and whether the outer ones
/// match their representatives up to ≅⁻ on `A` and ≅⁺ on `C`.
fn state_classes(sigma: &Strategy, tau: &Strategy, at: &Atlases, w: State) -> Result<(usize, usize, usize, bool)> {
    let (xa, xb, xc) = (sigma.proj_left(w.s), sigma.proj_right(w.s), tau.proj_right(w.t));
    let (ca, cb, cc) = (sigma.left.class_of(xa)?, sigma.right.class_of(xb)?, tau.right.class_of(xc)?);
    let ok = sigma.left.related(Flavor::Neg, xa, at.a.rep(ca))? && tau.right.related(Flavor::Pos, xc, at.c.rep(cc))?;
    Ok((ca, cb, cc, ok))
}

pub fn int_plus(sigma: &Strategy, tau: &Strategy, at: &Atlases, a: usize, b: usize, c: usize) -> Result<Vec<State>> {
    let mut out = Vec::new();
    for w in plus_states(sigma, tau)? {
        let (ca, cb, cc, ok) = state_classes(sigma, tau, at, w)?;
        if ok && (ca, cb, cc) == (a, b, c) {
            out.push(w);
        }
    }
    Ok(out)
}

/// [`int_plus`] without the constraint on `B`.
pub fn int_plus_ac(sigma: &Strategy, tau: &Strategy, at: &Atlases, a: usize, c: usize) -> Result<Vec<State>> {
    let mut out = Vec::new();
    for w in plus_states(sigma, tau)? {
        let (ca, _, cc, ok) = state_classes(sigma, tau, at, w)?;
        if ok && (ca, cc) == (a, c) {
            out.push(w);
        }
    }
    Ok(out)
}

/// An interaction witness with `θ⁻ : x_A ≅⁻ x̄_A` and `θ⁺ : x_C ≅⁺ x̄_C`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SymIntWitness {
    pub neg: ConfigIso,
    pub state: State,
    pub pos: ConfigIso,
}

pub fn swint_plus(
    sigma: &Strategy,
    tau: &Strategy,
    at: &Atlases,
    a: usize,
    b: usize,
    c: usize,
) -> Result<Vec<SymIntWitness>> {
    let mut out = Vec::new();
    for w in int_plus(sigma, tau, at, a, b, c)? {
        let negs = sigma.left.isos(Flavor::Neg, sigma.proj_left(w.s), at.a.rep(a))?;
        let poss = tau.right.isos(Flavor::Pos, tau.proj_right(w.t), at.c.rep(c))?;
        for n in &negs {
            for p in &poss {
                out.push(SymIntWitness { neg: n.clone(), state: w, pos: p.clone() });
            }
        }
    }
    Ok(out)
}

/// `(|~⁺wint⁺|, |Sym⁻(x̄_A)| · |int⁺| · |Sym⁺(x̄_C)|)`.
pub fn elim_sym_interaction(
    sigma: &Strategy,
    tau: &Strategy,
    at: &Atlases,
    a: usize,
    b: usize,
    c: usize,
) -> Result<(usize, usize)> {
    let lhs = swint_plus(sigma, tau, at, a, b, c)?.len();
    let (ra, rc) = (at.a.rep(a), at.c.rep(c));
    let rhs = sigma.left.count(Flavor::Neg, ra, ra)?
        * int_plus(sigma, tau, at, a, b, c)?.len()
        * tau.right.count(Flavor::Pos, rc, rc)?;
    Ok((lhs, rhs))
}

/// The composite bijection `x^S_B ≅ x^T_B` of two witnesses.
fn composite_b(ws: &SymWitness, wt: &SymWitness) -> ConfigIso {
    ws.pos.then(&wt.neg.inverse())
}

/// Pairs of witnesses whose composite bijection is secured.
pub fn compatible_pairs(
    sigma: &Strategy,
    tau: &Strategy,
    at: &Atlases,
    a: usize,
    b: usize,
    c: usize,
) -> Result<Vec<(SymWitness, SymWitness)>> {
    let left = swit_plus(sigma, &at.a, &at.b, a, b)?;
    let right = swit_plus(tau, &at.b, &at.c, b, c)?;
    let mut out = Vec::new();
    for ws in &left {
        for wt in &right {
            let theta = composite_b(ws, wt);
            if is_secured(sigma, tau, State { s: ws.x, t: wt.x }, Some(&theta)) {
                out.push((ws.clone(), wt.clone()));
            }
        }
    }
    Ok(out)
}

/// Both sides of the counting identity `|•| = |~⁺wint⁺| · |Sym(x̄_B)|`,
/// with the unfiltered product for reference.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CompatibleCounts {
    pub compatible: usize,
    pub product: usize,
    pub swint: usize,
    pub sym_b: usize,
}

impl CompatibleCounts {
    pub fn holds(&self) -> bool {
        self.compatible == self.swint * self.sym_b
    }
}

pub fn compatible_counts(sigma: &Strategy, tau: &Strategy, at: &Atlases, a: usize, b: usize, c: usize) -> Result<CompatibleCounts> {
    let left = swit_plus(sigma, &at.a, &at.b, a, b)?;
    let right = swit_plus(tau, &at.b, &at.c, b, c)?;
    let mut compatible = 0;
    for ws in &left {
        for wt in &right {
            if is_secured(sigma, tau, State { s: ws.x, t: wt.x }, Some(&composite_b(ws, wt))) {
                compatible += 1;
            }
        }
    }
    let rb = at.b.rep(b);
    Ok(CompatibleCounts {
        compatible,
        product: left.len() * right.len(),
        swint: swint_plus(sigma, tau, at, a, b, c)?.len(),
        sym_b: sigma.right.count(Flavor::Full, rb, rb)?,
    })
}

/// Image of a compatible pair: an interaction witness and an
/// endosymmetry of `x̄_B`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UpsilonImage {
    pub wint: SymIntWitness,
    pub phi: ConfigIso,
}

/// The synchronization bijection on one triple of classes, checked both
/// ways.
#[derive(Clone, Debug)]
pub struct Upsilon {
    pub pairs: Vec<((SymWitness, SymWitness), UpsilonImage)>,
    pub codomain: usize,
}

/// Forward direction for one pair.
pub fn upsilon_forward(
    sigma: &Strategy,
    tau: &Strategy,
    at: &Atlases,
    ws: &SymWitness,
    wt: &SymWitness,
) -> Result<UpsilonImage> {
    let (al, bl, cl) = (sigma.left_len(), sigma.right.len(), tau.right.len());
    let theta_b = composite_b(ws, wt);
    let mut found = Vec::new();
    for r in weak_bipullback_all(sigma, tau, ws.x, wt.x, &theta_b)? {
        // ω : x^S ≅ y^S and ν = θ_T⁻¹ : x^T ≅ y^T
        let omega = sigma.iso_image(&r.theta_s);
        let nu = tau.iso_image(&r.theta_t.inverse());
        let psi_neg = omega.slice(0, al).inverse().then(&ws.neg);
        let psi_pos = nu.slice(bl, cl).inverse().then(&wt.pos);
        if !sigma.left.is_member(Flavor::Neg, &psi_neg) || !tau.right.is_member(Flavor::Pos, &psi_pos) {
            continue;
        }
        let big_theta = ws.pos.inverse().then(&omega.slice(al, bl));
        let yb = big_theta.target;
        let kappa = at.b.kappa(&sigma.right, yb)?;
        let phi = big_theta.then(&kappa);
        let tr = transport(&sigma.right, &at.b, &phi, phi.source, yb)?;
        if tr.iso != big_theta {
            return Err(Error::BijectionFailure(format!(
                "mediating symmetry {:?} differs from its transport {:?}",
                big_theta, tr.iso
            )));
        }
        found.push(UpsilonImage {
            wint: SymIntWitness { neg: psi_neg, state: State { s: r.y_s, t: r.y_t }, pos: psi_pos },
            phi,
        });
    }
    match found.len() {
        1 => Ok(found.pop().unwrap()),
        n => Err(Error::BijectionFailure(format!(
            "{} synchronizations for the pair at {} / {}",
            n,
            sigma.describe(ws.x),
            tau.describe(wt.x)
        ))),
    }
}

/// Inverse direction: recovers the unique compatible pair of an image.
pub fn upsilon_inverse(sigma: &Strategy, tau: &Strategy, at: &Atlases, img: &UpsilonImage) -> Result<(SymWitness, SymWitness)> {
    let (al, bl, cl) = (sigma.left_len(), sigma.right.len(), tau.right.len());
    let y = img.wint.state;
    let yb = sigma.proj_right(y.s);
    // Θ_B : x̄_B ≅ y_B
    let big_theta = img.phi.then(&at.b.kappa(&sigma.right, yb)?.inverse());
    let mut lefts = Vec::new();
    for &xs in sigma.configurations()? {
        if xs.len() != y.s.len() || !sigma.es.is_plus_covered(xs) {
            continue;
        }
        for omega in sigma.sym_isos(xs, y.s)? {
            let g = sigma.iso_image(&omega);
            let neg = g.slice(0, al).then(&img.wint.neg);
            let pos = g.slice(al, bl).then(&big_theta.inverse());
            if sigma.left.is_member(Flavor::Neg, &neg) && sigma.right.is_member(Flavor::Pos, &pos) {
                lefts.push(SymWitness { neg, x: xs, pos });
            }
        }
    }
    let mut rights = Vec::new();
    for &xt in tau.configurations()? {
        if xt.len() != y.t.len() || !tau.es.is_plus_covered(xt) {
            continue;
        }
        for nu in tau.sym_isos(xt, y.t)? {
            let g = tau.iso_image(&nu);
            let neg = g.slice(0, bl).then(&big_theta.inverse());
            let pos = g.slice(bl, cl).then(&img.wint.pos);
            if sigma.right.is_member(Flavor::Neg, &neg) && tau.right.is_member(Flavor::Pos, &pos) {
                rights.push(SymWitness { neg, x: xt, pos });
            }
        }
    }
    if lefts.len() != 1 || rights.len() != 1 {
        return Err(Error::BijectionFailure(format!(
            "{} left and {} right antecedents for {:?}",
            lefts.len(),
            rights.len(),
            img
        )));
    }
    Ok((lefts.pop().unwrap(), rights.pop().unwrap()))
}

/// Builds the bijection between compatible pairs and interaction
/// witnesses paired with endosymmetries of `x̄_B`, checking injectivity,
/// the codomain size and both round trips.
pub fn upsilon(sigma: &Strategy, tau: &Strategy, at: &Atlases, a: usize, b: usize, c: usize) -> Result<Upsilon> {
    let pairs = compatible_pairs(sigma, tau, at, a, b, c)?;
    let swint: HashSet<SymIntWitness> = swint_plus(sigma, tau, at, a, b, c)?.into_iter().collect();
    let rb = at.b.rep(b);
    let sym: HashSet<ConfigIso> = sigma.right.isos(Flavor::Full, rb, rb)?.into_iter().collect();
    let codomain = swint.len() * sym.len();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for (ws, wt) in pairs {
        let img = upsilon_forward(sigma, tau, at, &ws, &wt)?;
        if !swint.contains(&img.wint) || !sym.contains(&img.phi) {
            return Err(Error::BijectionFailure(format!("{:?} lands outside the codomain", img)));
        }
        if !seen.insert(img.clone()) {
            return Err(Error::BijectionFailure(format!("{:?} is hit twice", img)));
        }
        let back = upsilon_inverse(sigma, tau, at, &img)?;
        if back != (ws.clone(), wt.clone()) {
            return Err(Error::BijectionFailure(format!("round trip fails at {:?}", img)));
        }
        out.push(((ws, wt), img));
    }
    if out.len() != codomain {
        return Err(Error::BijectionFailure(format!(
            "{} compatible pairs against a codomain of {}",
            out.len(),
            codomain
        )));
    }
    Ok(Upsilon { pairs: out, codomain })
}

/// `⟦σ⟧` with entries above `cap` reported as `∞`.
pub fn collapse_capped(sigma: &Strategy, aa: &Atlas, ab: &Atlas, cap: usize) -> Result<WeightedRelation> {
    let mut r = WeightedRelation::zero(
        aa.reps().to_vec(),
        aa.names(&sigma.left),
        ab.reps().to_vec(),
        ab.names(&sigma.right),
    );
    let mut counts = vec![vec![0usize; ab.reps().len()]; aa.reps().len()];
    for x in plus_covered(sigma)? {
        let ca = sigma.left.class_of(sigma.proj_left(x))?;
        let cb = sigma.right.class_of(sigma.proj_right(x))?;
        if matches(sigma, aa, ab, x, ca, cb)? {
            counts[ca][cb] += 1;
        }
    }
    for (i, row) in counts.iter().enumerate() {
        for (j, &n) in row.iter().enumerate() {
            r.entries[i][j] = if n > cap { Weight::Inf } else { Weight::from(n) };
        }
    }
    Ok(r)
}

pub fn collapse(sigma: &Strategy, aa: &Atlas, ab: &Atlas) -> Result<WeightedRelation> {
    collapse_capped(sigma, aa, ab, DEFAULT_CAP)
}

/// Collapse against the canonical atlases of both games.
pub fn collapse_canonical(sigma: &Strategy) -> Result<WeightedRelation> {
    collapse(sigma, &Atlas::canonical(&sigma.left)?, &Atlas::canonical(&sigma.right)?)
}

pub type Q = Ratio<u128>;

/// Per middle class quantities of the trace.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MiddleTrace {
    pub b: usize,
    pub int_plus: usize,
    pub swint: usize,
    pub wit_sigma: usize,
    pub wit_tau: usize,
    pub swit_sigma: usize,
    pub swit_tau: usize,
    pub sym: SymSizes,
}

/// The chain of equal quantities for one entry `(a, c)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EntryTrace {
    pub a: usize,
    pub c: usize,
    /// The quantities of [`STEP_NAMES`], in order.
    pub values: [Q; 8],
    pub sym_neg_a: usize,
    pub sym_pos_c: usize,
    pub middles: Vec<MiddleTrace>,
}

pub const STEP_NAMES: [&str; 8] = [
    "+-covered configurations of the composition",
    "+-covered interaction states",
    "sum over middle classes of interaction witnesses",
    "interaction witnesses with symmetries, divided by outer groups",
    "products of strategy witnesses with symmetries, divided by groups",
    "products of witnesses weighted by polarized over full middle groups",
    "sum of products of witnesses",
    "matrix product of the collapses",
];

impl EntryTrace {
    /// Steps `i` and `i + 1`, numbered from 1, around the first inequality.
    pub fn broken_step(&self) -> Option<(usize, usize)> {
        (0..7).find(|&i| self.values[i] != self.values[i + 1]).map(|i| (i + 1, i + 2))
    }
}

#[derive(Clone, Debug)]
pub struct TheoremReport {
    pub entries: Vec<EntryTrace>,
}

impl TheoremReport {
    pub fn passes(&self) -> bool {
        self.entries.iter().all(|e| e.broken_step().is_none())
    }

    pub fn failures(&self) -> Vec<&EntryTrace> {
        self.entries.iter().filter(|e| e.broken_step().is_some()).collect()
    }

    pub fn into_result(self) -> Result<TheoremReport> {
        if let Some(e) = self.failures().first() {
            let (i, j) = e.broken_step().unwrap();
            return Err(Error::TheoremViolation(format!(
                "entry ({}, {}): step {} = {} but step {} = {}",
                e.a,
                e.c,
                i,
                e.values[i - 1],
                j,
                e.values[j - 1]
            )));
        }
        Ok(self)
    }
}

fn q(n: usize) -> Q {
    Q::from_integer(n as u128)
}

fn weight_q(w: Weight) -> Result<Q> {
    w.finite()
        .map(Q::from_integer)
        .ok_or_else(|| Error::SizeLimitExceeded(DEFAULT_CAP))
}

/// Checks `⟦τ ⊙ σ⟧ = ⟦τ⟧ ∘ ⟦σ⟧` entrywise, tracing every intermediate
/// quantity of the counting argument.
pub fn check_theorem(sigma: &Strategy, tau: &Strategy, at: &Atlases) -> Result<TheoremReport> {
    let (ga, gb, gc) = (&sigma.left, &sigma.right, &tau.right);
    let (na, nb, nc) = (at.a.reps().len(), at.b.reps().len(), at.c.reps().len());

    let comp = compose(sigma, tau)?;
    let m_comp = collapse(&comp, &at.a, &at.c)?;
    let m_sigma = collapse(sigma, &at.a, &at.b)?;
    let m_tau = collapse(tau, &at.b, &at.c)?;
    let m_prod = matrix_compose(&m_sigma, &m_tau)?;

    // interaction witnesses by (a, b, c): (count, count with symmetries)
    let mut ints: HashMap<(usize, usize, usize), (usize, usize)> = HashMap::new();
    for w in plus_states(sigma, tau)? {
        let (ca, cb, cc, ok) = state_classes(sigma, tau, at, w)?;
        if !ok {
            continue;
        }
        let n = ga.count(Flavor::Neg, sigma.proj_left(w.s), at.a.rep(ca))?
            * gc.count(Flavor::Pos, tau.proj_right(w.t), at.c.rep(cc))?;
        let e = ints.entry((ca, cb, cc)).or_default();
        e.0 += 1;
        e.1 += n;
    }
    let swit_table = |s: &Strategy, al: &Atlas, ar: &Atlas| -> Result<HashMap<(usize, usize), (usize, usize)>> {
        let mut t: HashMap<(usize, usize), (usize, usize)> = HashMap::new();
        for x in plus_covered(s)? {
            let (xa, xb) = (s.proj_left(x), s.proj_right(x));
            let (ca, cb) = (s.left.class_of(xa)?, s.right.class_of(xb)?);
            let n = s.left.count(Flavor::Neg, xa, al.rep(ca))? * s.right.count(Flavor::Pos, xb, ar.rep(cb))?;
            if n > 0 {
                let e = t.entry((ca, cb)).or_default();
                e.0 += 1;
                e.1 += n;
            }
        }
        Ok(t)
    };
    let ts = swit_table(sigma, &at.a, &at.b)?;
    let tt = swit_table(tau, &at.b, &at.c)?;
    let syms: Vec<SymSizes> = at.b.reps().iter().map(|&x| sym_sizes(gb, x)).collect::<Result<_>>()?;

    let mut entries = Vec::new();
    for a in 0..na {
        let ra = at.a.rep(a);
        let sna = ga.count(Flavor::Neg, ra, ra)?;
        for c in 0..nc {
            let rc = at.c.rep(c);
            let spc = gc.count(Flavor::Pos, rc, rc)?;
            let eq5 = (0..nb).map(|b| ints.get(&(a, b, c)).map_or(0, |e| e.0)).sum::<usize>();
            let mut middles = Vec::new();
            let mut v = [Q::from_integer(0); 8];
            v[0] = weight_q(m_comp.get(a, c))?;
            v[1] = q(eq5);
            for b in 0..nb {
                let (int_n, swint_n) = ints.get(&(a, b, c)).copied().unwrap_or((0, 0));
                let (ws, sws) = ts.get(&(a, b)).copied().unwrap_or((0, 0));
                let (wt, swt) = tt.get(&(b, c)).copied().unwrap_or((0, 0));
                let sym = syms[b];
                v[2] += q(int_n);
                v[3] += Q::new(swint_n as u128, (sna * spc) as u128);
                v[4] += Q::new((sws * swt) as u128, (sna * sym.full * spc) as u128);
                v[5] += Q::new((sym.pos * sym.neg) as u128, sym.full as u128) * q(ws * wt);
                v[6] += q(ws * wt);
                if int_n + ws * wt > 0 {
                    middles.push(MiddleTrace {
                        b,
                        int_plus: int_n,
                        swint: swint_n,
                        wit_sigma: ws,
                        wit_tau: wt,
                        swit_sigma: sws,
                        swit_tau: swt,
                        sym,
                    });
                }
            }
            v[7] = weight_q(m_prod.get(a, c))?;
            entries.push(EntryTrace { a, c, values: v, sym_neg_a: sna, sym_pos_c: spc, middles });
        }
    }
    Ok(TheoremReport { entries })
}

/// One entry of the comparison between counting symmetry classes and
/// counting concrete witnesses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitComparison {
    pub a: usize,
    pub c: usize,
    pub wit_composite: usize,
    pub wit_product: usize,
    pub wit_plus_composite: usize,
    pub wit_plus_product: usize,
}

impl WitComparison {
    pub fn classes_agree(&self) -> bool {
        self.wit_composite == self.wit_product
    }

    pub fn witnesses_agree(&self) -> bool {
        self.wit_plus_composite == self.wit_plus_product
    }
}

#[derive(Clone, Debug)]
pub struct WitReport {
    pub entries: Vec<WitComparison>,
    /// Witnesses of either strategy whose middle projection is not the
    /// representative itself.
    pub off_representative: usize,
}

/// Compares class counting and witness counting on every nonzero entry.
pub fn check_wit_vs_witplus(sigma: &Strategy, tau: &Strategy, at: &Atlases) -> Result<WitReport> {
    let comp = compose(sigma, tau)?;
    let (na, nb, nc) = (at.a.reps().len(), at.b.reps().len(), at.c.reps().len());
    let mut entries = Vec::new();
    let mut off = 0;
    for b in 0..nb {
        for a in 0..na {
            off += wit_plus(sigma, &at.a, &at.b, a, b)?
                .iter()
                .filter(|&&x| sigma.proj_right(x) != at.b.rep(b))
                .count();
        }
        for c in 0..nc {
            off += wit_plus(tau, &at.b, &at.c, b, c)?
                .iter()
                .filter(|&&x| tau.proj_left(x) != at.b.rep(b))
                .count();
        }
    }
    for a in 0..na {
        for c in 0..nc {
            let mut wp = 0;
            let mut wpp = 0;
            for b in 0..nb {
                wp += wit(sigma, a, b)?.len() * wit(tau, b, c)?.len();
                wpp += wit_plus(sigma, &at.a, &at.b, a, b)?.len() * wit_plus(tau, &at.b, &at.c, b, c)?.len();
            }
            let e = WitComparison {
                a,
                c,
                wit_composite: wit(&comp, a, c)?.len(),
                wit_product: wp,
                wit_plus_composite: wit_plus(&comp, &at.a, &at.c, a, c)?.len(),
                wit_plus_product: wpp,
            };
            if e.wit_composite + e.wit_product + e.wit_plus_composite + e.wit_plus_product > 0 {
                entries.push(e);
            }
        }
    }
    Ok(WitReport { entries, off_representative: off })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::esp_core::EventStructure;
    use crate::game_constructions::{atom, dual, empty_game, parallel};
    use crate::esp_core::Polarity;
    use crate::strategies::{copycat, StrategySym};
    use crate::symmetry::SymmetrySpec;

    fn rel(n: usize, m: usize, vals: &[u128]) -> WeightedRelation {
        let rows: Vec<EventSet> = (0..n).map(|i| EventSet::singleton(i)).collect();
        let cols: Vec<EventSet> = (0..m).map(|i| EventSet::singleton(i)).collect();
        let mut r = WeightedRelation::zero(rows, vec!["r".into(); n], cols, vec!["c".into(); m]);
        for i in 0..n {
            for j in 0..m {
                r.entries[i][j] = Weight::Fin(vals[i * m + j]);
            }
        }
        r
    }

    #[test]
    fn weight_semiring() {
        assert_eq!(Weight::Inf * Weight::ZERO, Weight::ZERO);
        assert_eq!(Weight::ZERO * Weight::Inf, Weight::ZERO);
        assert_eq!(Weight::Inf * Weight::Fin(3), Weight::Inf);
        assert_eq!(Weight::Fin(2) + Weight::Inf, Weight::Inf);
        assert_eq!(Weight::Fin(2) * Weight::Fin(3) + Weight::ONE, Weight::Fin(7));
        assert_eq!(Weight::Fin(u128::MAX) + Weight::ONE, Weight::Inf);
        assert_eq!(Weight::Inf.to_string(), "∞");
    }

    #[test]
    fn identity_is_unit() {
        let r = rel(2, 3, &[1, 0, 2, 0, 5, 1]);
        let il = WeightedRelation::identity(r.rows.clone(), r.row_names.clone());
        let ir = WeightedRelation::identity(r.cols.clone(), r.col_names.clone());
        assert_eq!(matrix_compose(&il, &r).unwrap(), r);
        assert_eq!(matrix_compose(&r, &ir).unwrap(), r);
    }

    #[test]
    fn compose_multiplies_and_checks_dimensions() {
        let r = rel(1, 2, &[2, 3]);
        let s = rel(2, 1, &[5, 7]);
        assert_eq!(matrix_compose(&r, &s).unwrap().get(0, 0), Weight::Fin(31));
        assert!(matches!(matrix_compose(&r, &r), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn infinite_entries_absorb() {
        let mut r = rel(1, 2, &[0, 1]);
        r.entries[0][0] = Weight::Inf;
        let s = rel(2, 1, &[0, 4]);
        assert_eq!(matrix_compose(&r, &s).unwrap().get(0, 0), Weight::Fin(4));
        let s2 = rel(2, 1, &[1, 0]);
        assert_eq!(matrix_compose(&r, &s2).unwrap().get(0, 0), Weight::Inf);
    }

    #[test]
    fn empty_strategy_collapses_to_single_one() {
        let e = empty_game();
        let s = Strategy::new(
            "empty",
            EventStructure::empty(),
            StrategySym::Spec(SymmetrySpec::Identities),
            e.clone(),
            e.clone(),
            vec![],
        )
        .unwrap();
        let m = collapse_canonical(&s).unwrap();
        assert_eq!(m.shape(), (1, 1));
        assert_eq!(m.get(0, 0), Weight::ONE);
        assert_eq!(wit(&s, 0, 0).unwrap(), vec![vec![EventSet::EMPTY]]);
    }

    #[test]
    fn copycat_collapses_to_identity_on_atoms() {
        let a = parallel(&atom(Polarity::Negative, "q"), &dual(&atom(Polarity::Negative, "r")));
        let cc = copycat(&a).unwrap();
        let m = collapse_canonical(&cc).unwrap();
        let n = m.shape().0;
        for i in 0..n {
            for j in 0..n {
                assert_eq!(m.get(i, j), Weight::from(usize::from(i == j)));
            }
        }
    }

    #[test]
    fn atlas_kappa_is_identity_on_representatives() {
        let a = parallel(&atom(Polarity::Negative, "q"), &atom(Polarity::Negative, "q"));
        let at = Atlas::canonical(&a).unwrap();
        for &r in at.reps() {
            assert!(at.kappa(&a, r).unwrap().is_identity());
        }
        let lone = EventSet::singleton(1);
        let k = at.kappa(&a, lone).unwrap();
        assert_eq!(k.source, lone);
        assert_eq!(k.target, at.rep_of(&a, lone).unwrap());
    }
}
