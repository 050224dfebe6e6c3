//! Isomorphism families on configurations and thin concurrent games.
//!
//! A family is given by a [`SymmetrySpec`], a membership predicate on
//! order-isomorphisms. Families are realized extensionally: the isos between
//! two configurations are found by backtracking over label- and
//! polarity-preserving order-isomorphisms and filtering by the spec.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::OnceLock;

use crate::esp_core::{EventId, EventSet, EventStructure, DEFAULT_CAP};
use crate::{Error, Result};

/// Default cap on backtracking nodes in one iso search.
pub const SEARCH_CAP: usize = 50_000_000;

/// An order-isomorphism between two configurations.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ConfigIso {
    pub source: EventSet,
    pub target: EventSet,
    /// Sorted by source event.
    pairs: Vec<(EventId, EventId)>,
}

impl ConfigIso {
    pub fn new(mut pairs: Vec<(EventId, EventId)>) -> ConfigIso {
        pairs.sort_unstable();
        let source = pairs.iter().map(|p| p.0).collect();
        let target = pairs.iter().map(|p| p.1).collect();
        ConfigIso { source, target, pairs }
    }

    pub fn identity(x: EventSet) -> ConfigIso {
        ConfigIso {
            source: x,
            target: x,
            pairs: x.iter().map(|e| (e, e)).collect(),
        }
    }

    pub fn empty() -> ConfigIso {
        ConfigIso::identity(EventSet::EMPTY)
    }

    pub fn pairs(&self) -> &[(EventId, EventId)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn apply(&self, e: EventId) -> Option<EventId> {
        self.pairs
            .binary_search_by_key(&e, |p| p.0)
            .ok()
            .map(|i| self.pairs[i].1)
    }

    pub fn image(&self, x: EventSet) -> EventSet {
        x.iter().filter_map(|e| self.apply(e)).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.pairs.iter().all(|p| p.0 == p.1)
    }

    pub fn inverse(&self) -> ConfigIso {
        ConfigIso::new(self.pairs.iter().map(|&(a, b)| (b, a)).collect())
    }

    /// `other ∘ self`: first `self`, then `other`.
    pub fn then(&self, other: &ConfigIso) -> ConfigIso {
        debug_assert_eq!(self.target, other.source);
        ConfigIso {
            source: self.source,
            target: other.target,
            pairs: self
                .pairs
                .iter()
                .map(|&(a, b)| (a, other.apply(b).expect("composable isos")))
                .collect(),
        }
    }

    pub fn restrict(&self, x: EventSet) -> ConfigIso {
        ConfigIso::new(
            self.pairs
                .iter()
                .copied()
                .filter(|p| x.contains(p.0))
                .collect(),
        )
    }

    /// Restriction to events in `offset..offset+len`, renumbered from 0 on
    /// both sides. Pairs leaving the range are dropped.
    pub fn slice(&self, offset: usize, len: usize) -> ConfigIso {
        let r = offset..offset + len;
        ConfigIso::new(
            self.pairs
                .iter()
                .filter(|p| r.contains(&p.0) && r.contains(&p.1))
                .map(|&(a, b)| (a - offset, b - offset))
                .collect(),
        )
    }

    pub fn shifted(&self, offset: usize) -> ConfigIso {
        ConfigIso::new(self.pairs.iter().map(|&(a, b)| (a + offset, b + offset)).collect())
    }

    /// Disjoint union of isos on disjoint event ranges.
    pub fn union(&self, other: &ConfigIso) -> ConfigIso {
        let mut pairs = self.pairs.clone();
        pairs.extend_from_slice(&other.pairs);
        ConfigIso::new(pairs)
    }
}

impl fmt::Debug for ConfigIso {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "⟨")?;
        for (i, (a, b)) in self.pairs.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}→{}", a, b)?;
        }
        write!(f, "⟩")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Flavor {
    Full,
    Pos,
    Neg,
}

impl Flavor {
    pub const ALL: [Flavor; 3] = [Flavor::Full, Flavor::Pos, Flavor::Neg];

    pub fn dual(self) -> Flavor {
        match self {
            Flavor::Full => Flavor::Full,
            Flavor::Pos => Flavor::Neg,
            Flavor::Neg => Flavor::Pos,
        }
    }
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Flavor::Full => "full",
            Flavor::Pos => "pos",
            Flavor::Neg => "neg",
        })
    }
}

/// Membership predicate for an isomorphism family. Every variant is applied
/// to order-isomorphisms that already preserve labels and polarity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SymmetrySpec {
    AllOrderIsos,
    Identities,
    /// All order-isos contained in one of these bijections on events.
    MaximalGenerators(Vec<Vec<(EventId, EventId)>>),
    /// Built-in rule: events with a key must be mapped to events with the
    /// same key. Used by HO exponentials.
    Keyed { rule: String, keys: Vec<Option<u32>> },
    /// Componentwise: every pair stays in its block and the restriction to
    /// each block belongs to the block's family.
    Blocks(Vec<Block>),
    /// `k` consecutive copies of an `n`-event structure. Copies are mapped
    /// blockwise, by a permutation when `permute` holds and by the identity
    /// otherwise; each copy's restriction belongs to `inner`.
    Copies { n: usize, k: usize, permute: bool, inner: Box<SymmetrySpec> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub offset: usize,
    pub len: usize,
    pub spec: SymmetrySpec,
}

impl SymmetrySpec {
    /// Cheap necessary condition for `a ↦ b` to appear in a member.
    pub fn pair_ok(&self, a: EventId, b: EventId) -> bool {
        match self {
            SymmetrySpec::AllOrderIsos => true,
            SymmetrySpec::Identities => a == b,
            SymmetrySpec::MaximalGenerators(gens) => {
                gens.iter().any(|g| g.iter().any(|&p| p == (a, b)))
            }
            SymmetrySpec::Keyed { keys, .. } => keys[a] == keys[b],
            SymmetrySpec::Blocks(blocks) => match find_block(blocks, a) {
                Some(bl) => {
                    (bl.offset..bl.offset + bl.len).contains(&b)
                        && bl.spec.pair_ok(a - bl.offset, b - bl.offset)
                }
                None => false,
            },
            SymmetrySpec::Copies { n, permute, inner, .. } => {
                (*permute || a / n == b / n) && inner.pair_ok(a % n, b % n)
            }
        }
    }

    /// Whether the order-iso given by `pairs` belongs to the family.
    pub fn admits(&self, pairs: &[(EventId, EventId)]) -> bool {
        match self {
            SymmetrySpec::AllOrderIsos => true,
            SymmetrySpec::Identities => pairs.iter().all(|p| p.0 == p.1),
            SymmetrySpec::MaximalGenerators(gens) => gens.iter().any(|g| {
                pairs.iter().all(|&(a, b)| g.iter().any(|&p| p == (a, b)))
            }),
            SymmetrySpec::Keyed { keys, .. } => pairs.iter().all(|&(a, b)| keys[a] == keys[b]),
            SymmetrySpec::Blocks(blocks) => {
                let mut local: Vec<Vec<(EventId, EventId)>> = vec![Vec::new(); blocks.len()];
                for &(a, b) in pairs {
                    let Some(i) = blocks.iter().position(|bl| in_block(bl, a)) else {
                        return false;
                    };
                    let bl = &blocks[i];
                    if !in_block(bl, b) {
                        return false;
                    }
                    local[i].push((a - bl.offset, b - bl.offset));
                }
                blocks
                    .iter()
                    .zip(local.iter())
                    .all(|(bl, l)| l.is_empty() || bl.spec.admits(l))
            }
            SymmetrySpec::Copies { n, k, permute, inner } => {
                let mut pi: Vec<Option<usize>> = vec![None; *k];
                let mut local: Vec<Vec<(EventId, EventId)>> = vec![Vec::new(); *k];
                for &(a, b) in pairs {
                    let (ca, cb) = (a / n, b / n);
                    if ca >= *k || cb >= *k {
                        return false;
                    }
                    match pi[ca] {
                        Some(c) if c != cb => return false,
                        _ => pi[ca] = Some(cb),
                    }
                    local[ca].push((a % n, b % n));
                }
                let mut seen = vec![false; *k];
                for &c in pi.iter().flatten() {
                    if seen[c] {
                        return false;
                    }
                    seen[c] = true;
                }
                if !permute && pi.iter().enumerate().any(|(i, c)| c.is_some_and(|c| c != i)) {
                    return false;
                }
                local.iter().all(|l| l.is_empty() || inner.admits(l))
            }
        }
    }

    pub fn short_name(&self) -> String {
        match self {
            SymmetrySpec::AllOrderIsos => "all".into(),
            SymmetrySpec::Identities => "id".into(),
            SymmetrySpec::MaximalGenerators(g) => format!("generators({})", g.len()),
            SymmetrySpec::Keyed { rule, .. } => rule.clone(),
            SymmetrySpec::Blocks(b) => format!("blocks({})", b.len()),
            SymmetrySpec::Copies { k, permute, .. } => {
                format!("copies({}, {})", k, if *permute { "permute" } else { "fixed" })
            }
        }
    }
}

fn in_block(bl: &Block, e: EventId) -> bool {
    (bl.offset..bl.offset + bl.len).contains(&e)
}

fn find_block(blocks: &[Block], e: EventId) -> Option<&Block> {
    blocks.iter().find(|bl| in_block(bl, e))
}

/// Backtracking enumeration of label- and polarity-preserving
/// order-isomorphisms `x ≅ y` whose pairs pass `pair_ok`. `leaf` receives
/// each complete iso and returns `false` to stop the search.
pub fn order_isos(
    es: &EventStructure,
    x: EventSet,
    y: EventSet,
    pair_ok: &dyn Fn(EventId, EventId) -> bool,
    leaf: &mut dyn FnMut(ConfigIso) -> bool,
) -> Result<()> {
    order_isos_between(es, es, x, y, pair_ok, leaf)
}

/// As [`order_isos`], between configurations of two structures.
pub fn order_isos_between(
    ex: &EventStructure,
    ey: &EventStructure,
    x: EventSet,
    y: EventSet,
    pair_ok: &dyn Fn(EventId, EventId) -> bool,
    leaf: &mut dyn FnMut(ConfigIso) -> bool,
) -> Result<()> {
    if x.len() != y.len() {
        return Ok(());
    }
    let order: Vec<EventId> = ex.topo_order().iter().copied().filter(|&e| x.contains(e)).collect();
    let targets: Vec<EventId> = y.iter().collect();
    let mut st = IsoSearch {
        ex,
        ey,
        order: &order,
        targets: &targets,
        img: vec![usize::MAX; ex.len()],
        nodes: 0,
        pair_ok,
    };
    let mut used = EventSet::EMPTY;
    st.rec(0, &mut used, leaf).map(|_| ())
}

struct IsoSearch<'a> {
    ex: &'a EventStructure,
    ey: &'a EventStructure,
    order: &'a [EventId],
    targets: &'a [EventId],
    img: Vec<EventId>,
    nodes: usize,
    pair_ok: &'a dyn Fn(EventId, EventId) -> bool,
}

impl IsoSearch<'_> {
    /// Returns Ok(false) when the leaf callback asked to stop.
    fn rec(&mut self, i: usize, used: &mut EventSet, leaf: &mut dyn FnMut(ConfigIso) -> bool) -> Result<bool> {
        self.nodes += 1;
        if self.nodes > SEARCH_CAP {
            return Err(Error::SizeLimitExceeded(SEARCH_CAP));
        }
        if i == self.order.len() {
            let pairs = self.order.iter().map(|&e| (e, self.img[e])).collect();
            return Ok(leaf(ConfigIso::new(pairs)));
        }
        let e = self.order[i];
        let preds = self.ex.preds(e);
        for &t in self.targets {
            if used.contains(t)
                || self.ey.polarity(t) != self.ex.polarity(e)
                || self.ey.label(t) != self.ex.label(e)
                || self.ey.preds(t).len() != preds.len()
                || !preds.iter().all(|&p| self.ey.preds(t).contains(&self.img[p]))
                || !(self.pair_ok)(e, t)
            {
                continue;
            }
            self.img[e] = t;
            used.insert(t);
            let go_on = self.rec(i + 1, used, leaf)?;
            used.remove(t);
            self.img[e] = usize::MAX;
            if !go_on {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Whether `θ` is a label- and polarity-preserving order-iso between two
/// configurations of `es`.
pub fn is_order_iso(es: &EventStructure, theta: &ConfigIso) -> bool {
    let (x, y) = (theta.source, theta.target);
    if !es.is_configuration(x) || !es.is_configuration(y) || x.len() != y.len() {
        return false;
    }
    theta.pairs().iter().all(|&(a, b)| {
        es.polarity(a) == es.polarity(b)
            && es.label(a) == es.label(b)
            && es.preds(a).len() == es.preds(b).len()
            && es
                .preds(a)
                .iter()
                .all(|&p| theta.apply(p).is_some_and(|q| es.preds(b).contains(&q)))
    })
}

/// A symmetry class of configurations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetryClass {
    /// Members in lexicographic order.
    pub members: Vec<EventSet>,
    /// Lexicographically least canonical member, if any.
    pub least_canonical: Option<EventSet>,
    /// Chosen representative: least canonical member when the game is
    /// representable, least member otherwise.
    pub chosen_rep: EventSet,
}

#[derive(Debug, Default)]
struct TcgCache {
    configs: OnceLock<Result<Vec<EventSet>>>,
    classes: OnceLock<Result<Vec<SymmetryClass>>>,
    class_index: OnceLock<HashMap<EventSet, usize>>,
}

/// An event structure with full, positive and negative symmetry.
#[derive(Debug)]
pub struct Tcg {
    pub es: EventStructure,
    pub full: SymmetrySpec,
    pub pos: SymmetrySpec,
    pub neg: SymmetrySpec,
    cache: TcgCache,
}

impl Clone for Tcg {
    fn clone(&self) -> Tcg {
        Tcg::new(self.es.clone(), self.full.clone(), self.pos.clone(), self.neg.clone())
    }
}

impl PartialEq for Tcg {
    fn eq(&self, o: &Tcg) -> bool {
        self.es == o.es && self.full == o.full && self.pos == o.pos && self.neg == o.neg
    }
}

impl Eq for Tcg {}

impl Tcg {
    pub fn new(es: EventStructure, full: SymmetrySpec, pos: SymmetrySpec, neg: SymmetrySpec) -> Tcg {
        Tcg { es, full, pos, neg, cache: TcgCache::default() }
    }

    /// No symmetry besides identities.
    pub fn trivial(es: EventStructure) -> Tcg {
        Tcg::new(es, SymmetrySpec::Identities, SymmetrySpec::Identities, SymmetrySpec::Identities)
    }

    pub fn spec(&self, f: Flavor) -> &SymmetrySpec {
        match f {
            Flavor::Full => &self.full,
            Flavor::Pos => &self.pos,
            Flavor::Neg => &self.neg,
        }
    }

    pub fn len(&self) -> usize {
        self.es.len()
    }

    pub fn is_empty(&self) -> bool {
        self.es.is_empty()
    }

    pub fn configurations(&self) -> Result<&[EventSet]> {
        self.cache
            .configs
            .get_or_init(|| self.es.configurations_capped(DEFAULT_CAP))
            .as_ref()
            .map(|v| v.as_slice())
            .map_err(|e| e.clone())
    }

    /// Calls `leaf` on each iso `x ≅ y` of the flavor until it returns false.
    pub fn for_each_iso(
        &self,
        f: Flavor,
        x: EventSet,
        y: EventSet,
        leaf: &mut dyn FnMut(ConfigIso) -> bool,
    ) -> Result<()> {
        let spec = self.spec(f);
        let pair_ok = |a, b| spec.pair_ok(a, b);
        order_isos(&self.es, x, y, &pair_ok, &mut |iso| {
            if spec.admits(iso.pairs()) {
                leaf(iso)
            } else {
                true
            }
        })
    }

    /// All isos `x ≅ y` in the family of the given flavor, sorted.
    pub fn isos(&self, f: Flavor, x: EventSet, y: EventSet) -> Result<Vec<ConfigIso>> {
        let mut out = Vec::new();
        self.for_each_iso(f, x, y, &mut |iso| {
            out.push(iso);
            true
        })?;
        out.sort();
        Ok(out)
    }

    pub fn count(&self, f: Flavor, x: EventSet, y: EventSet) -> Result<usize> {
        let mut n = 0;
        self.for_each_iso(f, x, y, &mut |_| {
            n += 1;
            true
        })?;
        Ok(n)
    }

    pub fn related(&self, f: Flavor, x: EventSet, y: EventSet) -> Result<bool> {
        let mut found = false;
        self.for_each_iso(f, x, y, &mut |_| {
            found = true;
            false
        })?;
        Ok(found)
    }

    /// Least iso `x ≅ y` of the flavor, under the order on sorted pair lists.
    pub fn least_iso(&self, f: Flavor, x: EventSet, y: EventSet) -> Result<Option<ConfigIso>> {
        Ok(self.isos(f, x, y)?.into_iter().next())
    }

    /// Whether `θ` is a member of the family.
    pub fn is_member(&self, f: Flavor, theta: &ConfigIso) -> bool {
        is_order_iso(&self.es, theta) && self.spec(f).admits(theta.pairs())
    }

    /// Symmetry classes, each with members in lexicographic order; classes
    /// are ordered by their least member.
    pub fn symmetry_classes(&self) -> Result<&[SymmetryClass]> {
        self.cache
            .classes
            .get_or_init(|| self.compute_classes())
            .as_ref()
            .map(|v| v.as_slice())
            .map_err(|e| e.clone())
    }

    fn compute_classes(&self) -> Result<Vec<SymmetryClass>> {
        let configs = self.configurations()?;
        let mut buckets: HashMap<Vec<u64>, Vec<Vec<EventSet>>> = HashMap::new();
        for &x in configs {
            let groups = buckets.entry(self.es.signature(x)).or_default();
            let mut placed = false;
            for g in groups.iter_mut() {
                if self.related(Flavor::Full, g[0], x)? {
                    g.push(x);
                    placed = true;
                    break;
                }
            }
            if !placed {
                groups.push(vec![x]);
            }
        }
        let mut classes = Vec::new();
        for (_, groups) in buckets {
            for mut members in groups {
                members.sort_by(|a, b| a.lex_cmp(*b));
                let mut least_canonical = None;
                for &m in &members {
                    if is_canonical(self, m)? {
                        least_canonical = Some(m);
                        break;
                    }
                }
                classes.push(SymmetryClass { chosen_rep: members[0], members, least_canonical });
            }
        }
        classes.sort_by(|a, b| a.members[0].lex_cmp(b.members[0]));
        if classes.iter().all(|c| c.least_canonical.is_some()) {
            for c in &mut classes {
                c.chosen_rep = c.least_canonical.unwrap();
            }
        }
        Ok(classes)
    }

    /// Index of the class containing `x`.
    pub fn class_of(&self, x: EventSet) -> Result<usize> {
        let classes = self.symmetry_classes()?;
        let idx = self.cache.class_index.get_or_init(|| {
            let mut m = HashMap::new();
            for (i, c) in classes.iter().enumerate() {
                for &x in &c.members {
                    m.insert(x, i);
                }
            }
            m
        });
        idx.get(&x)
            .copied()
            .ok_or_else(|| Error::NotAConfiguration(format!("{:?}", x)))
    }

    pub fn describe(&self, x: EventSet) -> String {
        self.es.describe(x)
    }
}

/// All isos `x ≅ y` of the given flavor.
pub fn enumerate_symmetries(a: &Tcg, f: Flavor, x: EventSet, y: EventSet) -> Result<Vec<ConfigIso>> {
    a.isos(f, x, y)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilyViolation {
    MissingIdentity { flavor: Flavor, config: EventSet },
    NotSubfamily { flavor: Flavor, iso: ConfigIso },
    MissingInverse { flavor: Flavor, iso: ConfigIso },
    MissingComposite { flavor: Flavor, first: ConfigIso, second: ConfigIso },
    MissingRestriction { flavor: Flavor, iso: ConfigIso, to: EventSet },
}

impl fmt::Display for FamilyViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyViolation::MissingIdentity { flavor, config } => {
                write!(f, "{}: identity on {:?} missing", flavor, config)
            }
            FamilyViolation::NotSubfamily { flavor, iso } => {
                write!(f, "{}: {:?} is not in the full family", flavor, iso)
            }
            FamilyViolation::MissingInverse { flavor, iso } => {
                write!(f, "{}: inverse of {:?} missing", flavor, iso)
            }
            FamilyViolation::MissingComposite { flavor, first, second } => {
                write!(f, "{}: composite of {:?} then {:?} missing", flavor, first, second)
            }
            FamilyViolation::MissingRestriction { flavor, iso, to } => {
                write!(f, "{}: restriction of {:?} to {:?} missing", flavor, iso, to)
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FamilyReport {
    pub violations: Vec<FamilyViolation>,
    /// Non-identity isos lying in both the positive and negative family.
    pub polar_overlaps: Vec<ConfigIso>,
}

impl FamilyReport {
    pub fn passes(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks identities, inverses, composition and restriction for all three
/// families over every pair of configurations, stopping at the first
/// violation. `budget` bounds the number of composite checks.
pub fn check_family_axioms(a: &Tcg, budget: usize) -> Result<FamilyReport> {
    let mut report = FamilyReport::default();
    let configs = a.configurations()?;
    // group by signature so only plausible pairs are searched
    let mut buckets: HashMap<Vec<u64>, Vec<EventSet>> = HashMap::new();
    for &x in configs {
        buckets.entry(a.es.signature(x)).or_default().push(x);
    }
    let mut keys: Vec<&Vec<u64>> = buckets.keys().collect();
    keys.sort();
    let mut spent = 0usize;
    for f in Flavor::ALL {
        let spec = a.spec(f);
        for key in &keys {
            let group = &buckets[*key];
            let mut fam: HashMap<(EventSet, EventSet), Vec<ConfigIso>> = HashMap::new();
            for &x in group {
                for &y in group {
                    let isos = a.isos(f, x, y)?;
                    if !isos.is_empty() {
                        fam.insert((x, y), isos);
                    }
                }
            }
            for &x in group {
                if !fam.get(&(x, x)).is_some_and(|v| v.iter().any(|i| i.is_identity())) {
                    report.violations.push(FamilyViolation::MissingIdentity { flavor: f, config: x });
                    return Ok(report);
                }
            }
            let mut pairs: Vec<&(EventSet, EventSet)> = fam.keys().collect();
            pairs.sort_by(|p, q| p.0.lex_cmp(q.0).then(p.1.lex_cmp(q.1)));
            for &&(x, y) in &pairs {
                for iso in &fam[&(x, y)] {
                    if f != Flavor::Full && !a.full.admits(iso.pairs()) {
                        report.violations.push(FamilyViolation::NotSubfamily { flavor: f, iso: iso.clone() });
                        return Ok(report);
                    }
                    if !spec.admits(iso.inverse().pairs()) {
                        report.violations.push(FamilyViolation::MissingInverse { flavor: f, iso: iso.clone() });
                        return Ok(report);
                    }
                    for e in a.es.maximal_events(x).iter() {
                        let sub = x.without(e);
                        let r = iso.restrict(sub);
                        if !a.es.is_configuration(r.target) || !spec.admits(r.pairs()) {
                            report.violations.push(FamilyViolation::MissingRestriction {
                                flavor: f,
                                iso: iso.clone(),
                                to: sub,
                            });
                            return Ok(report);
                        }
                    }
                    for &&(y2, z) in &pairs {
                        if y2 != y {
                            continue;
                        }
                        for second in &fam[&(y, z)] {
                            spent += 1;
                            if spent > budget {
                                return Err(Error::SizeLimitExceeded(budget));
                            }
                            let comp = iso.then(second);
                            if !spec.admits(comp.pairs()) {
                                report.violations.push(FamilyViolation::MissingComposite {
                                    flavor: f,
                                    first: iso.clone(),
                                    second: second.clone(),
                                });
                                return Ok(report);
                            }
                        }
                    }
                }
            }
        }
    }
    for &x in configs {
        for iso in a.isos(Flavor::Pos, x, x)? {
            if !iso.is_identity() && a.neg.admits(iso.pairs()) {
                report.polar_overlaps.push(iso);
            }
        }
    }
    Ok(report)
}

/// `θ = θ⁺ ∘ θ⁻` through the middle configuration `mid`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub neg: ConfigIso,
    pub mid: EventSet,
    pub pos: ConfigIso,
}

/// All factorizations of `θ` as a negative iso followed by a positive one.
pub fn factorizations(a: &Tcg, theta: &ConfigIso) -> Result<Vec<Factorization>> {
    let x = theta.source;
    let sig = a.es.signature(x);
    let mut out = Vec::new();
    for &z in a.configurations()? {
        if z.len() != x.len() || a.es.signature(z) != sig {
            continue;
        }
        for neg in a.isos(Flavor::Neg, x, z)? {
            let pos = neg.inverse().then(theta);
            if a.pos.admits(pos.pairs()) {
                out.push(Factorization { neg, mid: z, pos });
            }
        }
    }
    Ok(out)
}

/// The unique factorization of `θ`, or an error naming the failure.
pub fn factorize(a: &Tcg, theta: &ConfigIso) -> Result<Factorization> {
    let mut all = factorizations(a, theta)?;
    match all.len() {
        0 => Err(Error::NoFactorization(format!("{:?}", theta))),
        1 => Ok(all.pop().unwrap()),
        n => Err(Error::NonUniqueFactorization(format!("{:?} has {} factorizations", theta, n))),
    }
}

/// Whether every endosymmetry of `x` factors uniquely as a negative then a
/// positive endosymmetry of `x`.
pub fn is_canonical(a: &Tcg, x: EventSet) -> Result<bool> {
    let sym = a.isos(Flavor::Full, x, x)?;
    let neg = a.isos(Flavor::Neg, x, x)?;
    let pos = a.isos(Flavor::Pos, x, x)?;
    if neg.len() * pos.len() < sym.len() {
        return Ok(false);
    }
    let mut hits: HashMap<ConfigIso, usize> = HashMap::new();
    for n in &neg {
        for p in &pos {
            *hits.entry(n.then(p)).or_default() += 1;
        }
    }
    Ok(sym.iter().all(|t| hits.get(t) == Some(&1)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representability {
    pub representable: bool,
    /// Per class (in `symmetry_classes` order): its least canonical member.
    pub canonical: Vec<Option<EventSet>>,
}

pub fn is_representable(a: &Tcg) -> Result<Representability> {
    let classes = a.symmetry_classes()?;
    let canonical: Vec<Option<EventSet>> = classes.iter().map(|c| c.least_canonical).collect();
    Ok(Representability {
        representable: canonical.iter().all(|c| c.is_some()),
        canonical,
    })
}

pub fn symmetry_classes(a: &Tcg) -> Result<&[SymmetryClass]> {
    a.symmetry_classes()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EndoGroup {
    pub base: EventSet,
    pub flavor: Flavor,
    pub elements: Vec<ConfigIso>,
}

impl EndoGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }
}

/// Endosymmetries of `x` of the given flavor, checked to form a group.
pub fn endo_group(a: &Tcg, f: Flavor, x: EventSet) -> Result<EndoGroup> {
    let elements = a.isos(f, x, x)?;
    let set: HashSet<&ConfigIso> = elements.iter().collect();
    if !set.contains(&ConfigIso::identity(x)) {
        return Err(Error::InvalidStructure(format!("{} endosymmetries of {:?} lack the identity", f, x)));
    }
    for g in &elements {
        if !set.contains(&g.inverse()) {
            return Err(Error::InvalidStructure(format!("{} endosymmetries of {:?} lack an inverse", f, x)));
        }
        for h in &elements {
            if !set.contains(&g.then(h)) {
                return Err(Error::InvalidStructure(format!(
                    "{} endosymmetries of {:?} not closed under composition",
                    f, x
                )));
            }
        }
    }
    Ok(EndoGroup { base: x, flavor: f, elements })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::esp_core::{EsDecl, Polarity::*};

    fn set(v: &[EventId]) -> EventSet {
        v.iter().copied().collect()
    }

    /// The three-event game with two symmetric Opponent moves.
    fn epilogue_b() -> Tcg {
        let mut d = EsDecl::default();
        d.event(Negative, "o");
        d.event(Negative, "o");
        d.event(Positive, "p");
        Tcg::new(
            EventStructure::new(&d).unwrap(),
            SymmetrySpec::AllOrderIsos,
            SymmetrySpec::Identities,
            SymmetrySpec::AllOrderIsos,
        )
    }

    fn devisme() -> Tcg {
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

    #[test]
    fn empty_iso() {
        let g = epilogue_b();
        let isos = g.isos(Flavor::Full, EventSet::EMPTY, EventSet::EMPTY).unwrap();
        assert_eq!(isos, vec![ConfigIso::empty()]);
    }

    #[test]
    fn swap_of_opponent_moves() {
        let g = epilogue_b();
        let x = set(&[0, 1]);
        assert_eq!(g.isos(Flavor::Full, x, x).unwrap().len(), 2);
        assert_eq!(g.isos(Flavor::Pos, x, x).unwrap().len(), 1);
        assert_eq!(g.symmetry_classes().unwrap().len(), 6);
        assert!(check_family_axioms(&g, 1 << 20).unwrap().passes());
    }

    #[test]
    fn iso_composition_and_inverse() {
        let a = ConfigIso::new(vec![(0, 1), (1, 2)]);
        let b = ConfigIso::new(vec![(1, 0), (2, 1)]);
        assert!(a.then(&b).is_identity());
        assert_eq!(a.inverse(), b);
        assert_eq!(a.restrict(EventSet::singleton(1)).pairs(), &[(1, 2)]);
    }

    #[test]
    fn devisme_is_a_family_but_not_representable() {
        let g = devisme();
        assert!(check_family_axioms(&g, 1 << 20).unwrap().passes());
        let rep = is_representable(&g).unwrap();
        assert!(!rep.representable);
        let x = set(&[0, 1, 2]);
        assert!(!is_canonical(&g, x).unwrap());
        assert!(!is_canonical(&g, set(&[0, 1, 3])).unwrap());
        assert!(is_canonical(&g, set(&[0, 1, 2, 3])).unwrap());
        let swap = ConfigIso::new(vec![(0, 1), (1, 0), (2, 2)]);
        assert!(g.is_member(Flavor::Full, &swap));
        let fac = factorize(&g, &swap).unwrap();
        assert_eq!(fac.mid, set(&[0, 1, 3]));
    }

    #[test]
    fn generator_without_inverse_fails() {
        let mut d = EsDecl::default();
        for _ in 0..3 {
            d.event(Negative, "o");
        }
        let es = EventStructure::new(&d).unwrap();
        let id = vec![(0, 0), (1, 1), (2, 2)];
        let cycle = vec![(0, 1), (1, 2), (2, 0)];
        let spec = SymmetrySpec::MaximalGenerators(vec![id, cycle]);
        let g = Tcg::new(es, spec.clone(), spec.clone(), spec);
        assert!(!check_family_axioms(&g, 1 << 20).unwrap().passes());
    }

    #[test]
    fn identity_and_negative_factorizations() {
        let g = epilogue_b();
        let x = set(&[0, 2]);
        let f = factorize(&g, &ConfigIso::identity(x)).unwrap();
        assert_eq!(f.mid, x);
        assert!(f.neg.is_identity() && f.pos.is_identity());
        let theta = ConfigIso::new(vec![(0, 1), (2, 2)]);
        let f = factorize(&g, &theta).unwrap();
        assert_eq!(f.neg, theta);
        assert_eq!(f.mid, set(&[1, 2]));
        assert!(f.pos.is_identity());
    }

    #[test]
    fn endo_groups_of_distinct_labels_are_trivial() {
        let mut d = EsDecl::default();
        d.event(Negative, "a");
        d.event(Positive, "b");
        let g = Tcg::new(
            EventStructure::new(&d).unwrap(),
            SymmetrySpec::AllOrderIsos,
            SymmetrySpec::AllOrderIsos,
            SymmetrySpec::AllOrderIsos,
        );
        for f in Flavor::ALL {
            assert_eq!(endo_group(&g, f, set(&[0, 1])).unwrap().order(), 1);
        }
    }

    #[test]
    fn keyed_and_blocks() {
        let spec = SymmetrySpec::Blocks(vec![
            Block { offset: 0, len: 2, spec: SymmetrySpec::AllOrderIsos },
            Block { offset: 2, len: 2, spec: SymmetrySpec::Keyed { rule: "k".into(), keys: vec![Some(0), Some(1)] } },
        ]);
        assert!(spec.admits(&[(0, 1), (1, 0)]));
        assert!(!spec.admits(&[(1, 2)]));
        assert!(!spec.admits(&[(2, 3)]));
        assert!(spec.admits(&[(2, 2)]));
        let copies = SymmetrySpec::Copies { n: 2, k: 2, permute: false, inner: Box::new(SymmetrySpec::AllOrderIsos) };
        assert!(!copies.admits(&[(0, 2)]));
        assert!(copies.admits(&[(0, 1)]));
    }
}
