//! Builders for games with derived symmetry.
//!
//! Exponentials are truncated to a finite number of copy indices. Shifts,
//! sums and the linear arrow carry their components' symmetries blockwise.

use crate::esp_core::{EsDecl, EventId, EventSet, EventStructure, Polarity};
use crate::symmetry::{Block, SymmetrySpec, Tcg};
use crate::{Error, Result};

/// Number of copy indices `{0..k-1}` used by a bounded exponential.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CopyBound(pub usize);

/// A forest of moves, with no conflict and no symmetry. Labels are unique.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arena {
    pub es: EventStructure,
}

impl Arena {
    pub fn new(es: EventStructure) -> Result<Arena> {
        for e in 0..es.len() {
            if es.preds(e).len() > 1 {
                return Err(Error::InvalidStructure(format!("arena move {} has two parents", e)));
            }
            if !es.conflicts(e).is_empty() {
                return Err(Error::InvalidStructure("arenas have no conflict".into()));
            }
            if (0..e).any(|f| es.label(f) == es.label(e)) {
                return Err(Error::InvalidStructure(format!("arena label {} repeated", es.label(e))));
            }
        }
        Ok(Arena { es })
    }

    /// A single chain of moves with alternating polarity, starting with `first`.
    pub fn chain(labels: &[&str], first: Polarity) -> Arena {
        let mut d = EsDecl::default();
        let mut p = first;
        for (i, l) in labels.iter().enumerate() {
            d.event(p, l);
            if i > 0 {
                d.edge(i - 1, i);
            }
            p = p.flip();
        }
        Arena::new(EventStructure::new(&d).unwrap()).unwrap()
    }
}

/// A one-event game with no symmetry.
pub fn atom(p: Polarity, label: &str) -> Tcg {
    let mut d = EsDecl::default();
    d.event(p, label);
    Tcg::trivial(EventStructure::new(&d).unwrap())
}

pub fn empty_game() -> Tcg {
    Tcg::trivial(EventStructure::empty())
}

/// Whether all minimal events are negative.
pub fn is_negative(a: &Tcg) -> bool {
    (0..a.len()).all(|e| !a.es.preds(e).is_empty() || a.es.polarity(e) == Polarity::Negative)
}

fn copy_decl(into: &mut EsDecl, es: &EventStructure, flip: bool, prefix: Option<usize>) -> usize {
    let base = into.events.len();
    for e in 0..es.len() {
        let p = if flip { es.polarity(e).flip() } else { es.polarity(e) };
        let mut copy = Vec::new();
        copy.extend(prefix);
        copy.extend_from_slice(es.copy_indices(e));
        into.event_with_copy(p, es.label(e), copy);
    }
    for b in 0..es.len() {
        for &a in es.preds(b) {
            into.edge(base + a, base + b);
        }
    }
    for (a, b) in es.minimal_conflicts() {
        into.conflict(base + a, base + b);
    }
    base
}

fn blocks(parts: &[(usize, usize, &SymmetrySpec)]) -> SymmetrySpec {
    SymmetrySpec::Blocks(
        parts
            .iter()
            .filter(|p| p.1 > 0)
            .map(|&(offset, len, spec)| Block { offset, len, spec: spec.clone() })
            .collect(),
    )
}

/// Polarities flipped; positive and negative symmetry exchanged.
pub fn dual(a: &Tcg) -> Tcg {
    let mut d = EsDecl::default();
    copy_decl(&mut d, &a.es, true, None);
    Tcg::new(EventStructure::new(&d).unwrap(), a.full.clone(), a.neg.clone(), a.pos.clone())
}

/// Disjoint union, `a` first.
pub fn parallel(a: &Tcg, b: &Tcg) -> Tcg {
    parallel_all(&[a, b])
}

pub fn parallel_all(games: &[&Tcg]) -> Tcg {
    let mut d = EsDecl::default();
    let mut offsets = Vec::new();
    for g in games {
        offsets.push(copy_decl(&mut d, &g.es, false, None));
    }
    let spec = |f: fn(&Tcg) -> &SymmetrySpec| {
        let parts: Vec<(usize, usize, &SymmetrySpec)> = games
            .iter()
            .zip(&offsets)
            .map(|(g, &o)| (o, g.len(), f(g)))
            .collect();
        blocks(&parts)
    };
    Tcg::new(
        EventStructure::new(&d).unwrap(),
        spec(|g| &g.full),
        spec(|g| &g.pos),
        spec(|g| &g.neg),
    )
}

/// `k` copies of a negative game. Full and negative symmetry permute the
/// copies, positive symmetry keeps each copy in place.
pub fn bang_ajm(n: &Tcg, bound: CopyBound) -> Result<Tcg> {
    if !is_negative(n) {
        return Err(Error::NotNegative);
    }
    let k = bound.0;
    if k == 0 {
        return Err(Error::ArityMismatch("copy bound must be positive".into()));
    }
    let mut d = EsDecl::default();
    for i in 0..k {
        copy_decl(&mut d, &n.es, false, Some(i));
    }
    let copies = |permute: bool, inner: &SymmetrySpec| SymmetrySpec::Copies {
        n: n.len(),
        k,
        permute,
        inner: Box::new(inner.clone()),
    };
    if n.is_empty() {
        return Ok(empty_game());
    }
    Ok(Tcg::new(
        EventStructure::new(&d)?,
        copies(true, &n.full),
        copies(false, &n.pos),
        copies(true, &n.neg),
    ))
}

/// HO exponential with the same bound at every depth.
pub fn bang_ho(a: &Arena, bound: CopyBound) -> Result<Tcg> {
    bang_ho_bounds(a, &[bound])
}

/// HO exponential: events are paths of the arena, each move tagged with a
/// copy index below the bound for its depth (the last bound repeats).
/// Positive symmetry preserves the index of negative moves, negative
/// symmetry that of positive moves.
pub fn bang_ho_bounds(a: &Arena, bounds: &[CopyBound]) -> Result<Tcg> {
    if bounds.is_empty() || bounds.iter().any(|b| b.0 == 0) {
        return Err(Error::ArityMismatch("copy bounds must be positive".into()));
    }
    let es = &a.es;
    let bound_at = |depth: usize| bounds[depth.min(bounds.len() - 1)].0;
    let mut d = EsDecl::default();
    let mut node_of: Vec<EventId> = Vec::new();
    // (arena node, event of the parent path)
    let mut frontier: Vec<(EventId, Option<EventId>, Vec<usize>)> = Vec::new();
    for &r in es.topo_order() {
        if es.preds(r).is_empty() {
            frontier.push((r, None, Vec::new()));
        }
    }
    while let Some((node, parent, prefix)) = frontier.pop() {
        let depth = prefix.len();
        for i in 0..bound_at(depth) {
            let mut path = prefix.clone();
            path.push(i);
            if d.events.len() >= crate::esp_core::MAX_EVENTS {
                return Err(Error::TooManyEvents(d.events.len() + 1));
            }
            let e = d.event_with_copy(es.polarity(node), es.label(node), path.clone());
            node_of.push(node);
            if let Some(p) = parent {
                d.edge(p, e);
            }
            for &c in es.succs(node).iter().rev() {
                frontier.push((c, Some(e), path.clone()));
            }
        }
    }
    let keys = |p: Polarity| -> Vec<Option<u32>> {
        d.events
            .iter()
            .map(|ev| (ev.polarity == p).then(|| *ev.copy.last().unwrap() as u32))
            .collect()
    };
    let pos = SymmetrySpec::Keyed { rule: "keep-negative-index".into(), keys: keys(Polarity::Negative) };
    let neg = SymmetrySpec::Keyed { rule: "keep-positive-index".into(), keys: keys(Polarity::Positive) };
    Ok(Tcg::new(EventStructure::new(&d)?, SymmetrySpec::AllOrderIsos, pos, neg))
}

fn add_root(a: &Tcg, p: Polarity, label: &str) -> Tcg {
    let mut d = EsDecl::default();
    d.event(p, label);
    copy_decl(&mut d, &a.es, false, None);
    for e in 0..a.len() {
        if a.es.preds(e).is_empty() {
            d.edge(0, e + 1);
        }
    }
    let spec = |s: &SymmetrySpec| blocks(&[(0, 1, &SymmetrySpec::Identities), (1, a.len(), s)]);
    Tcg::new(EventStructure::new(&d).unwrap(), spec(&a.full), spec(&a.pos), spec(&a.neg))
}

/// A new negative move below every minimal event.
pub fn shift_up(a: &Tcg) -> Tcg {
    add_root(a, Polarity::Negative, "up")
}

/// A new positive move below every minimal event.
pub fn shift_down(a: &Tcg) -> Tcg {
    add_root(a, Polarity::Positive, "down")
}

/// Components side by side, pairwise in conflict.
pub fn sum(games: &[Tcg]) -> Tcg {
    let refs: Vec<&Tcg> = games.iter().collect();
    let par = parallel_all(&refs);
    let mut d = par.es.to_decl();
    let mut offset = 0;
    let mut ranges = Vec::new();
    for g in games {
        ranges.push((offset, g.len()));
        offset += g.len();
    }
    for (i, &(oi, li)) in ranges.iter().enumerate() {
        for &(oj, lj) in &ranges[i + 1..] {
            for a in oi..oi + li {
                for b in oj..oj + lj {
                    if par.es.preds(a).is_empty() && par.es.preds(b).is_empty() {
                        d.conflict(a, b);
                    }
                }
            }
        }
    }
    Tcg::new(EventStructure::new(&d).unwrap(), par.full.clone(), par.pos.clone(), par.neg.clone())
}

/// `M ⊸ N` for negative `M` and negative `N` with a single minimal move:
/// `M⊥ ∥ N` with every minimal move of `M⊥` placed after the root of `N`.
pub fn linear_arrow(m: &Tcg, n: &Tcg) -> Result<Tcg> {
    if !is_negative(m) || !is_negative(n) {
        return Err(Error::NotNegative);
    }
    let roots: Vec<EventId> = (0..n.len()).filter(|&e| n.es.preds(e).is_empty()).collect();
    if roots.len() != 1 {
        return Err(Error::ArityMismatch(format!(
            "the right side of ⊸ needs exactly one minimal move, found {}",
            roots.len()
        )));
    }
    let md = dual(m);
    let mut d = EsDecl::default();
    copy_decl(&mut d, &md.es, false, None);
    let off = copy_decl(&mut d, &n.es, false, None);
    for e in 0..m.len() {
        if md.es.preds(e).is_empty() {
            d.edge(off + roots[0], e);
        }
    }
    let spec = |a: &SymmetrySpec, b: &SymmetrySpec| blocks(&[(0, m.len(), a), (off, n.len(), b)]);
    Ok(Tcg::new(
        EventStructure::new(&d)?,
        spec(&md.full, &n.full),
        spec(&md.pos, &n.pos),
        spec(&md.neg, &n.neg),
    ))
}

/// Splits a configuration of `A ∥ B` (with `A` of `left` events).
pub fn split(x: EventSet, left: usize, right: usize) -> (EventSet, EventSet) {
    (x.slice(0, left), x.slice(left, right))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symmetry::{check_family_axioms, is_representable, Flavor};
    use Polarity::*;

    #[test]
    fn dual_is_an_involution() {
        let g = bang_ajm(&atom(Negative, "q"), CopyBound(2)).unwrap();
        assert_eq!(dual(&dual(&g)), g);
        assert_eq!(dual(&empty_game()), empty_game());
    }

    #[test]
    fn parallel_counts_multiply() {
        let a = bang_ajm(&atom(Negative, "q"), CopyBound(2)).unwrap();
        let b = atom(Positive, "p");
        let ab = parallel(&a, &b);
        assert_eq!(
            ab.configurations().unwrap().len(),
            a.configurations().unwrap().len() * b.configurations().unwrap().len()
        );
        let unit = parallel(&a, &empty_game());
        assert_eq!(unit.es, a.es);
    }

    #[test]
    fn ajm_single_question_classes() {
        let g = bang_ajm(&atom(Negative, "q"), CopyBound(2)).unwrap();
        assert_eq!(g.symmetry_classes().unwrap().len(), 3);
        assert!(is_representable(&g).unwrap().representable);
        assert!(check_family_axioms(&g, 1 << 20).unwrap().passes());
        assert!(bang_ajm(&atom(Positive, "p"), CopyBound(2)).is_err());
    }

    #[test]
    fn ho_example_game() {
        let arena = Arena::chain(&["call", "ret"], Negative);
        let g = bang_ho(&arena, CopyBound(2)).unwrap();
        assert_eq!(g.len(), 6);
        let roots: Vec<EventId> = (0..6).filter(|&e| g.es.preds(e).is_empty()).collect();
        assert_eq!(roots.len(), 2);
        for r in roots {
            assert_eq!(g.es.succs(r).len(), 2);
        }
        assert!(check_family_axioms(&g, 1 << 22).unwrap().passes());
        assert!(is_representable(&g).unwrap().representable);
        let one = bang_ho(&arena, CopyBound(1)).unwrap();
        for &x in one.configurations().unwrap() {
            assert_eq!(one.count(Flavor::Full, x, x).unwrap(), 1);
        }
    }

    #[test]
    fn shifts_sum_arrow() {
        let up = shift_up(&empty_game());
        assert_eq!(up.len(), 1);
        assert_eq!(up.es.polarity(0), Negative);
        assert!(sum(&[]).is_empty());
        let s = sum(&[atom(Negative, "a"), atom(Negative, "b")]);
        assert_eq!(s.configurations().unwrap().len(), 3);

        let m = shift_up(&atom(Negative, "q"));
        let arrow = linear_arrow(&m, &m).unwrap();
        // N root, then N's second move or M⊥'s chain of two positive moves
        let mut cs: Vec<usize> = arrow.configurations().unwrap().iter().map(|x| x.len()).collect();
        cs.sort();
        assert_eq!(cs, vec![0, 1, 2, 2, 3, 3, 4]);
        assert!(linear_arrow(&m, &parallel(&m, &m)).is_err());
    }
}
