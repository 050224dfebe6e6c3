//! Finite event structures with polarity.
//!
//! Events are numbered `0..n` and sets of events are `u128` bitsets, so a
//! single structure holds at most 128 events. That is far beyond what the
//! brute-force enumerations in this crate can handle anyway.

use std::cmp::Ordering;
use std::fmt;

use crate::Error;

pub type EventId = usize;

pub const MAX_EVENTS: usize = 128;

/// Default cap on the number of configurations enumerated.
pub const DEFAULT_CAP: usize = 1 << 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Polarity {
    Positive,
    Negative,
}

impl Polarity {
    pub fn flip(self) -> Polarity {
        match self {
            Polarity::Positive => Polarity::Negative,
            Polarity::Negative => Polarity::Positive,
        }
    }

    pub fn sign(self) -> char {
        match self {
            Polarity::Positive => '+',
            Polarity::Negative => '-',
        }
    }
}

/// A set of events, as a bitset.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EventSet(pub u128);

impl EventSet {
    pub const EMPTY: EventSet = EventSet(0);

    pub fn singleton(e: EventId) -> EventSet {
        EventSet(1u128 << e)
    }

    /// `{0, .., n-1}`
    pub fn full(n: usize) -> EventSet {
        if n == 128 {
            EventSet(u128::MAX)
        } else {
            EventSet((1u128 << n) - 1)
        }
    }

    pub fn contains(self, e: EventId) -> bool {
        e < 128 && self.0 >> e & 1 == 1
    }

    pub fn insert(&mut self, e: EventId) {
        self.0 |= 1u128 << e;
    }

    pub fn remove(&mut self, e: EventId) {
        self.0 &= !(1u128 << e);
    }

    pub fn with(self, e: EventId) -> EventSet {
        EventSet(self.0 | 1u128 << e)
    }

    pub fn without(self, e: EventId) -> EventSet {
        EventSet(self.0 & !(1u128 << e))
    }

    pub fn union(self, o: EventSet) -> EventSet {
        EventSet(self.0 | o.0)
    }

    pub fn inter(self, o: EventSet) -> EventSet {
        EventSet(self.0 & o.0)
    }

    pub fn minus(self, o: EventSet) -> EventSet {
        EventSet(self.0 & !o.0)
    }

    pub fn is_subset(self, o: EventSet) -> bool {
        self.0 & !o.0 == 0
    }

    pub fn is_disjoint(self, o: EventSet) -> bool {
        self.0 & o.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Shift every event up by `k`.
    pub fn shifted(self, k: usize) -> EventSet {
        EventSet(self.0 << k)
    }

    /// Events in `offset..offset+len`, renumbered from 0.
    pub fn slice(self, offset: usize, len: usize) -> EventSet {
        EventSet((self.0 >> offset) & EventSet::full(len).0)
    }

    pub fn first(self) -> Option<EventId> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as usize)
        }
    }

    pub fn iter(self) -> EventIter {
        EventIter(self.0)
    }

    pub fn to_vec(self) -> Vec<EventId> {
        self.iter().collect()
    }

    /// Lexicographic comparison of the sorted id lists.
    pub fn lex_cmp(self, o: EventSet) -> Ordering {
        let mut a = self.iter();
        let mut b = o.iter();
        loop {
            match (a.next(), b.next()) {
                (None, None) => return Ordering::Equal,
                (None, Some(_)) => return Ordering::Less,
                (Some(_), None) => return Ordering::Greater,
                (Some(x), Some(y)) if x != y => return x.cmp(&y),
                _ => {}
            }
        }
    }
}

impl FromIterator<EventId> for EventSet {
    fn from_iter<I: IntoIterator<Item = EventId>>(iter: I) -> Self {
        let mut s = EventSet::EMPTY;
        for e in iter {
            s.insert(e);
        }
        s
    }
}

impl fmt::Debug for EventSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

pub struct EventIter(u128);

impl Iterator for EventIter {
    type Item = EventId;

    fn next(&mut self) -> Option<EventId> {
        if self.0 == 0 {
            return None;
        }
        let e = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(e)
    }
}

/// Declaration of an event structure, as written by a user: edges need not be
/// covering and conflicts need not be closed. `validate_es` checks it strictly,
/// `EventStructure::new` normalizes it.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EsDecl {
    pub events: Vec<EventDecl>,
    pub edges: Vec<(EventId, EventId)>,
    pub conflicts: Vec<(EventId, EventId)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EventDecl {
    pub polarity: Polarity,
    pub label: String,
    /// Copy indices introduced by exponentials, for display only.
    pub copy: Vec<usize>,
}

impl EsDecl {
    pub fn event(&mut self, polarity: Polarity, label: &str) -> EventId {
        self.event_with_copy(polarity, label, Vec::new())
    }

    pub fn event_with_copy(&mut self, polarity: Polarity, label: &str, copy: Vec<usize>) -> EventId {
        self.events.push(EventDecl {
            polarity,
            label: label.to_string(),
            copy,
        });
        self.events.len() - 1
    }

    pub fn edge(&mut self, a: EventId, b: EventId) {
        self.edges.push((a, b));
    }

    pub fn conflict(&mut self, a: EventId, b: EventId) {
        self.conflicts.push((a, b));
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EsViolation {
    CycleDetected { events: Vec<EventId> },
    NonCoveringEdge { from: EventId, to: EventId, via: EventId },
    ConflictNotInherited { a: EventId, b: EventId, c: EventId },
    SelfConflict { event: EventId },
    UnknownEvent { event: EventId },
}

impl fmt::Display for EsViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EsViolation::CycleDetected { events } => write!(f, "CycleDetected {:?}", events),
            EsViolation::NonCoveringEdge { from, to, via } => {
                write!(f, "NonCoveringEdge {}->{} (also through {})", from, to, via)
            }
            EsViolation::ConflictNotInherited { a, b, c } => {
                write!(f, "ConflictNotInherited {}#{} but not {}#{}", a, b, a, c)
            }
            EsViolation::SelfConflict { event } => write!(f, "SelfConflict {}", event),
            EsViolation::UnknownEvent { event } => write!(f, "UnknownEvent {}", event),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EsReport {
    pub violations: Vec<EsViolation>,
}

impl EsReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Strict check of a declaration: no cycle, every edge covering, conflict
/// already closed upward and irreflexive.
pub fn validate_es(decl: &EsDecl) -> EsReport {
    let n = decl.events.len();
    let mut violations = Vec::new();
    for &(a, b) in decl.edges.iter().chain(decl.conflicts.iter()) {
        for e in [a, b] {
            if e >= n {
                violations.push(EsViolation::UnknownEvent { event: e });
            }
        }
    }
    if !violations.is_empty() || n > MAX_EVENTS {
        return EsReport { violations };
    }
    let succ = adjacency(n, &decl.edges);
    let reach = match reachability(n, &succ) {
        Ok(r) => r,
        Err(cycle) => {
            violations.push(EsViolation::CycleDetected { events: cycle });
            return EsReport { violations };
        }
    };
    for &(a, b) in &decl.edges {
        // a -> c ->* b for some other successor c of a
        if let Some(c) = succ[a].iter().find(|&&c| c != b && reach[c].contains(b)) {
            violations.push(EsViolation::NonCoveringEdge { from: a, to: b, via: *c });
        }
    }
    let mut conf = vec![EventSet::EMPTY; n];
    for &(a, b) in &decl.conflicts {
        conf[a].insert(b);
        conf[b].insert(a);
    }
    for a in 0..n {
        if conf[a].contains(a) {
            violations.push(EsViolation::SelfConflict { event: a });
        }
        for b in conf[a].iter() {
            if reach[a].contains(b) || reach[b].contains(a) {
                violations.push(EsViolation::SelfConflict { event: b.max(a) });
                continue;
            }
            if let Some(c) = reach[b].minus(conf[a]).first() {
                violations.push(EsViolation::ConflictNotInherited { a, b, c });
            }
        }
    }
    EsReport { violations }
}

fn adjacency(n: usize, edges: &[(EventId, EventId)]) -> Vec<Vec<EventId>> {
    let mut succ = vec![Vec::new(); n];
    for &(a, b) in edges {
        if !succ[a].contains(&b) {
            succ[a].push(b);
        }
    }
    succ
}

/// Strict reachability (`reach[a]` = events strictly above `a`), or a cycle.
fn reachability(n: usize, succ: &[Vec<EventId>]) -> Result<Vec<EventSet>, Vec<EventId>> {
    let order = topo_sort(n, succ)?;
    let mut reach = vec![EventSet::EMPTY; n];
    for &a in order.iter().rev() {
        let mut r = EventSet::EMPTY;
        for &b in &succ[a] {
            r = r.with(b).union(reach[b]);
        }
        reach[a] = r;
    }
    Ok(reach)
}

fn topo_sort(n: usize, succ: &[Vec<EventId>]) -> Result<Vec<EventId>, Vec<EventId>> {
    let mut indeg = vec![0usize; n];
    for s in succ {
        for &b in s {
            indeg[b] += 1;
        }
    }
    let mut ready: Vec<EventId> = (0..n).filter(|&e| indeg[e] == 0).rev().collect();
    let mut order = Vec::with_capacity(n);
    while let Some(a) = ready.pop() {
        order.push(a);
        let mut next = Vec::new();
        for &b in &succ[a] {
            indeg[b] -= 1;
            if indeg[b] == 0 {
                next.push(b);
            }
        }
        // keep smallest ids first for a deterministic order
        next.sort_unstable_by(|x, y| y.cmp(x));
        ready.extend(next);
        ready.sort_unstable_by(|x, y| y.cmp(x));
    }
    if order.len() < n {
        let stuck: Vec<EventId> = (0..n).filter(|&e| indeg[e] > 0).collect();
        return Err(stuck);
    }
    Ok(order)
}

/// A prime event structure with polarity and binary conflict.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EventStructure {
    polarity: Vec<Polarity>,
    label: Vec<String>,
    label_id: Vec<u32>,
    copy: Vec<Vec<usize>>,
    preds: Vec<Vec<EventId>>,
    succs: Vec<Vec<EventId>>,
    below: Vec<EventSet>,
    above: Vec<EventSet>,
    conflict: Vec<EventSet>,
    topo: Vec<EventId>,
}

impl EventStructure {
    /// Builds the structure, reducing edges to covering pairs and closing
    /// conflict upward. Cycles and conflicts between causally related
    /// events are rejected.
    pub fn new(decl: &EsDecl) -> Result<EventStructure, Error> {
        let n = decl.events.len();
        if n > MAX_EVENTS {
            return Err(Error::TooManyEvents(n));
        }
        for &(a, b) in decl.edges.iter().chain(decl.conflicts.iter()) {
            if a >= n || b >= n {
                return Err(Error::InvalidStructure(format!("unknown event {}", a.max(b))));
            }
        }
        let succ = adjacency(n, &decl.edges);
        let above = reachability(n, &succ)
            .map_err(|c| Error::InvalidStructure(format!("CycleDetected {:?}", c)))?;
        let mut below = vec![EventSet::EMPTY; n];
        for a in 0..n {
            for b in above[a].iter() {
                below[b].insert(a);
            }
        }
        let mut preds = vec![Vec::new(); n];
        let mut succs = vec![Vec::new(); n];
        for b in 0..n {
            for a in below[b].iter() {
                // a is covered by b iff nothing strictly between
                if above[a].inter(below[b]).is_empty() {
                    preds[b].push(a);
                    succs[a].push(b);
                }
            }
        }
        let mut conflict = vec![EventSet::EMPTY; n];
        for &(a, b) in &decl.conflicts {
            let ua = above[a].with(a);
            let ub = above[b].with(b);
            for x in ua.iter() {
                conflict[x] = conflict[x].union(ub);
            }
            for y in ub.iter() {
                conflict[y] = conflict[y].union(ua);
            }
        }
        for e in 0..n {
            if conflict[e].contains(e) {
                return Err(Error::InvalidStructure(format!(
                    "event {} conflicts with its own causal history",
                    e
                )));
            }
        }
        let topo = topo_sort(n, &succs).expect("acyclic");
        let mut names: Vec<&str> = decl.events.iter().map(|d| d.label.as_str()).collect();
        names.sort_unstable();
        names.dedup();
        let label_id = decl
            .events
            .iter()
            .map(|d| names.binary_search(&d.label.as_str()).unwrap() as u32)
            .collect();
        Ok(EventStructure {
            polarity: decl.events.iter().map(|d| d.polarity).collect(),
            label: decl.events.iter().map(|d| d.label.clone()).collect(),
            label_id,
            copy: decl.events.iter().map(|d| d.copy.clone()).collect(),
            preds,
            succs,
            below,
            above,
            conflict,
            topo,
        })
    }

    pub fn empty() -> EventStructure {
        EventStructure::new(&EsDecl::default()).unwrap()
    }

    /// Declaration reproducing this structure (covering edges, and conflicts
    /// only between minimal conflicting pairs).
    pub fn to_decl(&self) -> EsDecl {
        let mut d = EsDecl::default();
        for e in 0..self.len() {
            d.event_with_copy(self.polarity[e], &self.label[e], self.copy[e].clone());
        }
        for b in 0..self.len() {
            for &a in &self.preds[b] {
                d.edge(a, b);
            }
        }
        for a in 0..self.len() {
            for b in self.conflict[a].iter().filter(|&b| b > a) {
                d.conflict(a, b);
            }
        }
        d
    }

    /// Conflicting pairs `a < b` not inherited from a conflict lower down.
    pub fn minimal_conflicts(&self) -> Vec<(EventId, EventId)> {
        let mut out = Vec::new();
        for a in 0..self.len() {
            for b in self.conflict[a].iter().filter(|&b| b > a) {
                let inherited = self.preds[a].iter().any(|&p| self.conflict[p].contains(b))
                    || self.preds[b].iter().any(|&p| self.conflict[p].contains(a));
                if !inherited {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn len(&self) -> usize {
        self.polarity.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polarity.is_empty()
    }

    pub fn all(&self) -> EventSet {
        EventSet::full(self.len())
    }

    pub fn polarity(&self, e: EventId) -> Polarity {
        self.polarity[e]
    }

    pub fn label(&self, e: EventId) -> &str {
        &self.label[e]
    }

    pub fn label_id(&self, e: EventId) -> u32 {
        self.label_id[e]
    }

    pub fn copy_indices(&self, e: EventId) -> &[usize] {
        &self.copy[e]
    }

    /// Label with copy indices in brackets, e.g. `q[0,1]`.
    pub fn display_name(&self, e: EventId) -> String {
        if self.copy[e].is_empty() {
            self.label[e].clone()
        } else {
            let idx: Vec<String> = self.copy[e].iter().map(|i| i.to_string()).collect();
            format!("{}[{}]", self.label[e], idx.join(","))
        }
    }

    pub fn describe(&self, x: EventSet) -> String {
        let names: Vec<String> = x.iter().map(|e| self.display_name(e)).collect();
        format!("{{{}}}", names.join(", "))
    }

    /// Immediate predecessors (covering edges into `e`).
    pub fn preds(&self, e: EventId) -> &[EventId] {
        &self.preds[e]
    }

    pub fn succs(&self, e: EventId) -> &[EventId] {
        &self.succs[e]
    }

    /// Strict causal past.
    pub fn below(&self, e: EventId) -> EventSet {
        self.below[e]
    }

    pub fn above(&self, e: EventId) -> EventSet {
        self.above[e]
    }

    /// `[e]`, the prime configuration of `e`.
    pub fn history(&self, e: EventId) -> EventSet {
        self.below[e].with(e)
    }

    pub fn leq(&self, a: EventId, b: EventId) -> bool {
        a == b || self.below[b].contains(a)
    }

    pub fn conflicts(&self, e: EventId) -> EventSet {
        self.conflict[e]
    }

    pub fn in_conflict(&self, a: EventId, b: EventId) -> bool {
        self.conflict[a].contains(b)
    }

    pub fn topo_order(&self) -> &[EventId] {
        &self.topo
    }

    pub fn events_with(&self, p: Polarity) -> EventSet {
        (0..self.len()).filter(|&e| self.polarity[e] == p).collect()
    }

    pub fn is_configuration(&self, x: EventSet) -> bool {
        if !x.is_subset(self.all()) {
            return false;
        }
        x.iter()
            .all(|e| self.below[e].is_subset(x) && self.conflict[e].is_disjoint(x))
    }

    pub fn down_closure(&self, x: EventSet) -> EventSet {
        x.iter().fold(x, |acc, e| acc.union(self.below[e]))
    }

    /// Events of `x` with no causal successor inside `x`.
    pub fn maximal_events(&self, x: EventSet) -> EventSet {
        x.iter().filter(|&e| self.above[e].is_disjoint(x)).collect()
    }

    pub fn is_plus_covered(&self, x: EventSet) -> bool {
        self.maximal_events(x)
            .iter()
            .all(|e| self.polarity[e] == Polarity::Positive)
    }

    /// Events `e ∉ x` such that `x ∪ {e}` is a configuration.
    pub fn enabled(&self, x: EventSet) -> EventSet {
        (0..self.len())
            .filter(|&e| {
                !x.contains(e) && self.below[e].is_subset(x) && self.conflict[e].is_disjoint(x)
            })
            .collect()
    }

    /// Every configuration, in a deterministic order (depth-first over the
    /// topological order, excluding before including).
    pub fn configurations(&self) -> Result<Vec<EventSet>, Error> {
        self.configurations_capped(DEFAULT_CAP)
    }

    pub fn configurations_capped(&self, cap: usize) -> Result<Vec<EventSet>, Error> {
        let mut out = Vec::new();
        let mut stack = vec![(0usize, EventSet::EMPTY)];
        while let Some((i, x)) = stack.pop() {
            if i == self.topo.len() {
                if out.len() >= cap {
                    return Err(Error::SizeLimitExceeded(cap));
                }
                out.push(x);
                continue;
            }
            let e = self.topo[i];
            if self.below[e].is_subset(x) && self.conflict[e].is_disjoint(x) {
                stack.push((i + 1, x.with(e)));
            }
            stack.push((i + 1, x));
        }
        Ok(out)
    }

    /// Maps each configuration's events through `f` (must be injective).
    pub fn relabel_set(x: EventSet, f: impl Fn(EventId) -> EventId) -> EventSet {
        x.iter().map(f).collect()
    }

    /// Order-theoretic signature, invariant under order-isomorphisms that
    /// preserve labels and polarity.
    pub fn signature(&self, x: EventSet) -> Vec<u64> {
        let mut sig: Vec<u64> = x
            .iter()
            .map(|e| {
                let depth = self.below[e].len() as u64;
                let up = self.above[e].inter(x).len() as u64;
                ((self.label_id[e] as u64) << 32)
                    | ((self.polarity[e] == Polarity::Positive) as u64) << 31
                    | (self.preds[e].len() as u64) << 20
                    | depth << 10
                    | up
            })
            .collect();
        sig.sort_unstable();
        sig
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Polarity::*;

    fn brute_force(es: &EventStructure) -> Vec<EventSet> {
        let n = es.len();
        (0u128..(1u128 << n))
            .map(EventSet)
            .filter(|&x| {
                x.iter().all(|e| {
                    es.below(e).is_subset(x) && es.conflicts(e).is_disjoint(x)
                })
            })
            .collect()
    }

    #[test]
    fn empty_structure_is_valid() {
        assert!(validate_es(&EsDecl::default()).is_valid());
        let es = EventStructure::empty();
        assert_eq!(es.configurations().unwrap(), vec![EventSet::EMPTY]);
    }

    #[test]
    fn chain_is_valid() {
        let mut d = EsDecl::default();
        let a = d.event(Negative, "a");
        let b = d.event(Positive, "b");
        d.edge(a, b);
        assert!(validate_es(&d).is_valid());
    }

    #[test]
    fn two_cycle_detected() {
        let mut d = EsDecl::default();
        let a = d.event(Negative, "a");
        let b = d.event(Positive, "b");
        d.edge(a, b);
        d.edge(b, a);
        let r = validate_es(&d);
        assert!(matches!(r.violations[0], EsViolation::CycleDetected { .. }));
        assert!(EventStructure::new(&d).is_err());
    }

    #[test]
    fn non_covering_edge_and_conflict_closure() {
        let mut d = EsDecl::default();
        let a = d.event(Negative, "a");
        let b = d.event(Positive, "b");
        let c = d.event(Negative, "c");
        d.edge(a, b);
        d.edge(b, c);
        d.edge(a, c);
        let r = validate_es(&d);
        assert_eq!(
            r.violations,
            vec![EsViolation::NonCoveringEdge { from: a, to: c, via: b }]
        );
        let es = EventStructure::new(&d).unwrap();
        assert_eq!(es.preds(c), &[b]);

        let mut d = EsDecl::default();
        let a = d.event(Negative, "a");
        let b = d.event(Positive, "b");
        let c = d.event(Negative, "c");
        d.edge(a, b);
        d.conflict(c, a);
        assert!(matches!(
            validate_es(&d).violations[0],
            EsViolation::ConflictNotInherited { .. }
        ));
        let es = EventStructure::new(&d).unwrap();
        assert!(es.in_conflict(c, b));
    }

    #[test]
    fn single_negative_event_configurations() {
        let mut d = EsDecl::default();
        d.event(Negative, "o");
        let es = EventStructure::new(&d).unwrap();
        let cs = es.configurations().unwrap();
        assert_eq!(cs, vec![EventSet::EMPTY, EventSet::singleton(0)]);
        assert!(es.is_plus_covered(EventSet::EMPTY));
        assert!(!es.is_plus_covered(EventSet::singleton(0)));
    }

    #[test]
    fn three_concurrent_events_give_eight_configurations() {
        let mut d = EsDecl::default();
        d.event(Negative, "o");
        d.event(Negative, "o");
        d.event(Positive, "p");
        let es = EventStructure::new(&d).unwrap();
        assert_eq!(es.configurations().unwrap().len(), brute_force(&es).len());
        assert_eq!(es.configurations().unwrap().len(), 8);
    }

    #[test]
    fn chain_with_conflict() {
        let mut d = EsDecl::default();
        let a = d.event(Negative, "a");
        let b = d.event(Positive, "b");
        let c = d.event(Negative, "c");
        d.edge(a, b);
        d.conflict(a, c);
        let es = EventStructure::new(&d).unwrap();
        let mut cs = es.configurations().unwrap();
        cs.sort_by(|x, y| x.lex_cmp(*y));
        let expect: Vec<EventSet> = vec![
            EventSet::EMPTY,
            [a].into_iter().collect(),
            [a, b].into_iter().collect(),
            [c].into_iter().collect(),
        ];
        assert_eq!(cs, expect);
        assert!(es.is_plus_covered([a, b].into_iter().collect()));
        assert_eq!(es.maximal_events([a, b].into_iter().collect()), EventSet::singleton(b));
    }

    #[test]
    fn maximal_events_of_antichain() {
        let mut d = EsDecl::default();
        d.event(Negative, "a");
        d.event(Negative, "b");
        let es = EventStructure::new(&d).unwrap();
        assert_eq!(es.maximal_events(EventSet::EMPTY), EventSet::EMPTY);
        assert_eq!(es.maximal_events(es.all()), es.all());
    }

    #[test]
    fn cap_is_enforced() {
        let mut d = EsDecl::default();
        for _ in 0..5 {
            d.event(Negative, "o");
        }
        let es = EventStructure::new(&d).unwrap();
        assert!(matches!(
            es.configurations_capped(31),
            Err(Error::SizeLimitExceeded(31))
        ));
        assert_eq!(es.configurations_capped(32).unwrap().len(), 32);
    }

    #[test]
    fn decl_round_trip() {
        let mut d = EsDecl::default();
        let a = d.event(Negative, "a");
        let b = d.event(Positive, "b");
        let c = d.event(Positive, "c");
        let e = d.event(Negative, "e");
        d.edge(a, b);
        d.edge(a, c);
        d.edge(b, e);
        d.conflict(b, c);
        let es = EventStructure::new(&d).unwrap();
        let back = es.to_decl();
        assert!(validate_es(&back).is_valid());
        assert_eq!(EventStructure::new(&back).unwrap(), es);
    }
}
