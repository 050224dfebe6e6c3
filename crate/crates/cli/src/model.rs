//! Games and strategies built from a scenario or a fixture.

use std::collections::HashMap;

use tcg::collapse::Atlas;
use tcg::fixtures::{self, Fixture};
use tcg::game_constructions::{
    bang_ajm, bang_ho_bounds, dual, empty_game, linear_arrow, parallel_all, shift_down, shift_up, sum, Arena,
    CopyBound,
};
use tcg::strategies::{compose, copycat, StrategySym};
use tcg::{EsDecl, EventId, EventSet, EventStructure, Strategy, SymmetrySpec, Tcg};

use crate::scenario::{
    Command, EventLine, EventRef, ExplicitGame, ExplicitStrategy, Expr, GameBody, Ident, Item, ParseError, Pos,
    Scenario, Side, StrategyBody, SymDecl,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GameEntry {
    pub tcg: Tcg,
    /// How events are referred to: declared ids for explicit games,
    /// display names otherwise.
    pub names: Vec<String>,
}

impl GameEntry {
    fn displayed(tcg: Tcg) -> GameEntry {
        let names = (0..tcg.len()).map(|e| tcg.es.display_name(e)).collect();
        GameEntry { tcg, names }
    }

    pub fn event(&self, r: &EventRef, pos: Pos) -> Result<EventId, ParseError> {
        match r {
            EventRef::Index(i) if *i < self.names.len() => Ok(*i),
            EventRef::Index(i) => err(pos, format!("event index {} out of range ({} events)", i, self.names.len())),
            EventRef::Name(n) => self.event_named(n, pos),
        }
    }

    pub fn event_named(&self, n: &str, pos: Pos) -> Result<EventId, ParseError> {
        let hits: Vec<EventId> = (0..self.names.len()).filter(|&e| self.names[e] == n).collect();
        match hits.as_slice() {
            [e] => Ok(*e),
            [] => err(pos, format!("no event `{}`", n)),
            _ => err(pos, format!("event name `{}` is ambiguous, use an index", n)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrategyEntry {
    pub strategy: Strategy,
    pub left: String,
    pub right: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Model {
    pub games: Vec<(String, GameEntry)>,
    pub arenas: Vec<(String, Arena)>,
    pub strategies: Vec<(String, StrategyEntry)>,
    pub run: Vec<Command>,
}

fn err<T>(pos: Pos, msg: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { pos, msg: msg.into() })
}

fn find<'a, T>(items: &'a [(String, T)], name: &str) -> Option<&'a T> {
    items.iter().find(|(n, _)| n == name).map(|(_, t)| t)
}

impl Model {
    pub fn game(&self, id: &Ident) -> Result<&GameEntry, ParseError> {
        find(&self.games, &id.name).map_or_else(|| err(id.pos, format!("unknown game `{}`", id.name)), Ok)
    }

    pub fn arena(&self, id: &Ident) -> Result<&Arena, ParseError> {
        find(&self.arenas, &id.name).map_or_else(|| err(id.pos, format!("unknown arena `{}`", id.name)), Ok)
    }

    pub fn strategy(&self, id: &Ident) -> Result<&StrategyEntry, ParseError> {
        find(&self.strategies, &id.name).map_or_else(|| err(id.pos, format!("unknown strategy `{}`", id.name)), Ok)
    }

    fn fresh(&self, id: &Ident) -> Result<(), ParseError> {
        let taken = self.games.iter().any(|(n, _)| *n == id.name)
            || self.arenas.iter().any(|(n, _)| *n == id.name)
            || self.strategies.iter().any(|(n, _)| *n == id.name);
        if taken {
            return err(id.pos, format!("`{}` is already defined", id.name));
        }
        Ok(())
    }

    /// Built-in fixtures: pairs become games `A`, `B`, `C` and strategies
    /// `sigma : A -> B`, `tau : B -> C`; a single strategy is `sigma`; a
    /// lone game is `G`.
    pub fn from_fixture(name: &str) -> Result<Model, String> {
        if !fixtures::NAMES.contains(&name) {
            return Err(format!("unknown fixture `{}`", name));
        }
        let f = fixtures::get(name).map_err(|e| e.to_string())?;
        let mut m = Model::default();
        let add_strategy = |m: &mut Model, n: &str, s: Strategy, l: &str, r: &str| {
            m.strategies.push((n.into(), StrategyEntry { strategy: s, left: l.into(), right: r.into() }));
        };
        match f {
            Fixture::Pair { sigma, tau } => {
                m.games.push(("A".into(), GameEntry::displayed(sigma.left.clone())));
                m.games.push(("B".into(), GameEntry::displayed(sigma.right.clone())));
                m.games.push(("C".into(), GameEntry::displayed(tau.right.clone())));
                add_strategy(&mut m, "sigma", sigma, "A", "B");
                add_strategy(&mut m, "tau", tau, "B", "C");
            }
            Fixture::Single(sigma) => {
                m.games.push(("A".into(), GameEntry::displayed(sigma.left.clone())));
                m.games.push(("B".into(), GameEntry::displayed(sigma.right.clone())));
                add_strategy(&mut m, "sigma", sigma, "A", "B");
            }
            Fixture::Game(g) => m.games.push(("G".into(), GameEntry::displayed(g))),
        }
        Ok(m)
    }

    /// Builds every item in order; `bound` is the copy bound of
    /// exponentials written without one.
    pub fn build(s: &Scenario, bound: usize) -> Result<Model, ParseError> {
        let mut m = Model::default();
        for item in &s.items {
            match item {
                Item::Game(g) => {
                    m.fresh(&g.name)?;
                    let entry = match &g.body {
                        GameBody::Explicit(e) => explicit_game(e, g.name.pos)?,
                        GameBody::Expr(e) => GameEntry::displayed(m.eval(e, bound, g.name.pos)?),
                    };
                    m.games.push((g.name.name.clone(), entry));
                }
                Item::Arena(a) => {
                    m.fresh(&a.name)?;
                    let (d, _) = decl(&a.events, &a.edges, &[])?;
                    let es = EventStructure::new(&d).or_else(|e| err(a.name.pos, e.to_string()))?;
                    let arena = Arena::new(es).or_else(|e| err(a.name.pos, e.to_string()))?;
                    m.arenas.push((a.name.name.clone(), arena));
                }
                Item::Strategy(st) => {
                    m.fresh(&st.name)?;
                    let entry = match &st.body {
                        StrategyBody::Explicit(e) => m.explicit_strategy(&st.name, e)?,
                        StrategyBody::Compose(a, b) => {
                            let (sa, sb) = (m.strategy(a)?, m.strategy(b)?);
                            if sa.strategy.right != sb.strategy.left {
                                return err(b.pos, format!("`{}` does not start where `{}` ends", b.name, a.name));
                            }
                            let mut c = compose(&sa.strategy, &sb.strategy).or_else(|e| err(st.name.pos, e.to_string()))?;
                            c.name = st.name.name.clone();
                            StrategyEntry { strategy: c, left: sa.left.clone(), right: sb.right.clone() }
                        }
                        StrategyBody::Copycat(g) => {
                            let mut c = copycat(&m.game(g)?.tcg).or_else(|e| err(st.name.pos, e.to_string()))?;
                            c.name = st.name.name.clone();
                            StrategyEntry { strategy: c, left: g.name.clone(), right: g.name.clone() }
                        }
                    };
                    m.strategies.push((st.name.name.clone(), entry));
                }
                Item::Run(cmds) => m.run.extend(cmds.iter().cloned()),
            }
        }
        Ok(m)
    }

    fn eval(&self, e: &Expr, bound: usize, pos: Pos) -> Result<Tcg, ParseError> {
        let lib = |r: tcg::Result<Tcg>| r.or_else(|e| err(pos, e.to_string()));
        Ok(match e {
            Expr::Ref(id) => self.game(id)?.tcg.clone(),
            Expr::Empty => empty_game(),
            Expr::Atom(p, l) => tcg::game_constructions::atom(*p, l),
            Expr::Dual(a) => dual(&self.eval(a, bound, pos)?),
            Expr::Par(es) => {
                let gs = es.iter().map(|e| self.eval(e, bound, pos)).collect::<Result<Vec<_>, _>>()?;
                parallel_all(&gs.iter().collect::<Vec<_>>())
            }
            Expr::Sum(es) => sum(&es.iter().map(|e| self.eval(e, bound, pos)).collect::<Result<Vec<_>, _>>()?),
            Expr::ShiftUp(a) => shift_up(&self.eval(a, bound, pos)?),
            Expr::ShiftDown(a) => shift_down(&self.eval(a, bound, pos)?),
            Expr::Arrow(a, b) => lib(linear_arrow(&self.eval(a, bound, pos)?, &self.eval(b, bound, pos)?))?,
            Expr::BangAjm(a, k) => lib(bang_ajm(&self.eval(a, bound, pos)?, CopyBound(k.unwrap_or(bound))))?,
            Expr::BangHo(a, bounds) => {
                let arena = self.arena(a)?;
                let depth = arena_depth(arena);
                let bounds: Vec<CopyBound> = match bounds.as_slice() {
                    [] => vec![CopyBound(bound); depth],
                    [k] => vec![CopyBound(*k); depth],
                    ks if ks.len() == depth => ks.iter().map(|&k| CopyBound(k)).collect(),
                    ks => return err(a.pos, format!("{} bounds for an arena of depth {}", ks.len(), depth)),
                };
                lib(bang_ho_bounds(arena, &bounds))?
            }
        })
    }

    fn explicit_strategy(&self, name: &Ident, s: &ExplicitStrategy) -> Result<StrategyEntry, ParseError> {
        let (left, right) = (self.game(&s.left)?, self.game(&s.right)?);
        let game = parallel_all(&[&dual(&left.tcg), &right.tcg]);
        let mut d = EsDecl::default();
        let mut label = Vec::new();
        let mut ids = HashMap::new();
        for e in &s.events {
            let g = match e.target.side {
                Side::Left => left.event(&e.target.event, e.target.pos)?,
                Side::Right => left.tcg.len() + right.event(&e.target.event, e.target.pos)?,
            };
            if ids.insert(e.id.name.clone(), label.len()).is_some() {
                return err(e.id.pos, format!("event `{}` declared twice", e.id.name));
            }
            let l = e.label.clone().unwrap_or_else(|| game.es.label(g).to_string());
            d.event_with_copy(game.es.polarity(g), &l, game.es.copy_indices(g).to_vec());
            label.push(g);
        }
        add_pairs(&mut d, &ids, &s.edges, &s.conflicts)?;
        let es = EventStructure::new(&d).or_else(|e| err(name.pos, e.to_string()))?;
        let sym = match &s.sym {
            None => SymmetrySpec::AllOrderIsos,
            Some(sd) => spec(sd, &ids)?,
        };
        let strategy = Strategy::new(&name.name, es, StrategySym::Spec(sym), left.tcg.clone(), right.tcg.clone(), label)
            .or_else(|e| err(name.pos, e.to_string()))?;
        Ok(StrategyEntry { strategy, left: s.left.name.clone(), right: s.right.name.clone() })
    }
}

fn arena_depth(a: &Arena) -> usize {
    (0..a.es.len()).map(|e| a.es.history(e).len()).max().unwrap_or(0)
}

/// `name[1,2]` is label `name` with copy indices `[1, 2]`.
fn split_label(l: &str) -> (String, Vec<usize>) {
    if let Some(open) = l.find('[').filter(|_| l.ends_with(']')) {
        let inner = &l[open + 1..l.len() - 1];
        if let Ok(copy) = inner.split(',').map(|i| i.trim().parse()).collect::<Result<Vec<usize>, _>>() {
            return (l[..open].to_string(), copy);
        }
    }
    (l.to_string(), Vec::new())
}

fn decl(
    events: &[EventLine],
    edges: &[(Ident, Ident)],
    conflicts: &[(Ident, Ident)],
) -> Result<(EsDecl, HashMap<String, EventId>), ParseError> {
    let mut d = EsDecl::default();
    let mut ids = HashMap::new();
    for e in events {
        if ids.insert(e.id.name.clone(), d.events.len()).is_some() {
            return err(e.id.pos, format!("event `{}` declared twice", e.id.name));
        }
        let (label, copy) = split_label(e.label.as_deref().unwrap_or(&e.id.name));
        d.event_with_copy(e.polarity, &label, copy);
    }
    add_pairs(&mut d, &ids, edges, conflicts)?;
    Ok((d, ids))
}

fn lookup(ids: &HashMap<String, EventId>, id: &Ident) -> Result<EventId, ParseError> {
    ids.get(&id.name).copied().map_or_else(|| err(id.pos, format!("no event `{}`", id.name)), Ok)
}

fn add_pairs(
    d: &mut EsDecl,
    ids: &HashMap<String, EventId>,
    edges: &[(Ident, Ident)],
    conflicts: &[(Ident, Ident)],
) -> Result<(), ParseError> {
    for (a, b) in edges {
        d.edge(lookup(ids, a)?, lookup(ids, b)?);
    }
    for (a, b) in conflicts {
        d.conflict(lookup(ids, a)?, lookup(ids, b)?);
    }
    Ok(())
}

fn spec(s: &SymDecl, ids: &HashMap<String, EventId>) -> Result<SymmetrySpec, ParseError> {
    Ok(match s {
        SymDecl::All => SymmetrySpec::AllOrderIsos,
        SymDecl::Id => SymmetrySpec::Identities,
        SymDecl::Gens(gens) => {
            let mut out = Vec::new();
            for g in gens {
                let mut pairs = Vec::new();
                for (a, b) in g {
                    pairs.push((lookup(ids, a)?, lookup(ids, b)?));
                }
                let mut srcs: Vec<EventId> = pairs.iter().map(|p| p.0).collect();
                let mut dsts: Vec<EventId> = pairs.iter().map(|p| p.1).collect();
                srcs.sort_unstable();
                dsts.sort_unstable();
                srcs.dedup();
                dsts.dedup();
                if srcs.len() != pairs.len() || dsts.len() != pairs.len() {
                    let pos = g.first().map_or(Pos::default(), |p| p.0.pos);
                    return err(pos, "a generator must be a bijection");
                }
                out.push(pairs);
            }
            SymmetrySpec::MaximalGenerators(out)
        }
    })
}

fn explicit_game(g: &ExplicitGame, pos: Pos) -> Result<GameEntry, ParseError> {
    let (d, ids) = decl(&g.events, &g.edges, &g.conflicts)?;
    let es = EventStructure::new(&d).or_else(|e| err(pos, e.to_string()))?;
    let specs: Vec<SymmetrySpec> = g
        .sym
        .iter()
        .map(|s| s.as_ref().map_or(Ok(SymmetrySpec::Identities), |s| spec(s, &ids)))
        .collect::<Result<_, _>>()?;
    let [full, plus, minus]: [SymmetrySpec; 3] = specs.try_into().unwrap();
    let names = g.events.iter().map(|e| e.id.name.clone()).collect();
    Ok(GameEntry { tcg: Tcg::new(es, full, plus, minus), names })
}

/// Representative choices read from an atlas file: each line names a game
/// and the events of a configuration, which becomes the representative of
/// its class. Other classes keep the automatic choice.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AtlasFile {
    pub entries: Vec<(Ident, Vec<Ident>)>,
}

impl AtlasFile {
    pub fn parse(src: &str) -> AtlasFile {
        let mut entries = Vec::new();
        for (n, line) in src.lines().enumerate() {
            let mut words = Vec::new();
            let mut col = 0;
            for part in line.split_inclusive(char::is_whitespace) {
                let w = part.trim_end();
                if !w.is_empty() {
                    if w.starts_with('#') {
                        break;
                    }
                    words.push(Ident { name: w.to_string(), pos: Pos { line: n + 1, col: col + 1 } });
                }
                col += part.chars().count();
            }
            if let Some((game, events)) = words.split_first() {
                entries.push((game.clone(), events.to_vec()));
            }
        }
        AtlasFile { entries }
    }

    /// The atlas of `game`, named `name` in the model.
    pub fn atlas(&self, model: &Model, name: &str) -> Result<Atlas, ParseError> {
        let entry = find(&model.games, name).expect("game of a strategy");
        let lib = |pos: Pos, r: tcg::Result<Atlas>| r.or_else(|e| err(pos, e.to_string()));
        let mut atlas = lib(Pos::default(), Atlas::auto(&entry.tcg))?;
        for (g, events) in &self.entries {
            model.game(g)?;
            if g.name != name {
                continue;
            }
            let mut x = EventSet::EMPTY;
            for e in events {
                x.insert(entry.event_named(&e.name, e.pos)?);
            }
            if !entry.tcg.es.is_configuration(x) {
                return err(g.pos, format!("{} is not a configuration", entry.tcg.describe(x)));
            }
            atlas = lib(g.pos, atlas.with_rep(&entry.tcg, x))?;
        }
        Ok(atlas)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenario::parse;

    #[test]
    fn labels_carry_copy_indices() {
        assert_eq!(split_label("q[0,1]"), ("q".to_string(), vec![0, 1]));
        assert_eq!(split_label("q"), ("q".to_string(), vec![]));
        assert_eq!(split_label("q[x]"), ("q[x]".to_string(), vec![]));
    }

    #[test]
    fn unknown_references_point_at_the_name() {
        let s = parse("GAME A = dual(B)\n").unwrap();
        let e = Model::build(&s, 2).unwrap_err();
        assert_eq!((e.pos.line, e.pos.col), (1, 15));
        let s = parse("GAME A = empty\nSTRATEGY s : A -> A\n  EVENT x R.nope\n").unwrap();
        let e = Model::build(&s, 2).unwrap_err();
        assert_eq!((e.pos.line, e.pos.col), (3, 11));
    }

    #[test]
    fn bang_without_bound_uses_the_default() {
        let s = parse("GAME N = bang_ajm(atom(-, q))\n").unwrap();
        assert_eq!(Model::build(&s, 3).unwrap().games[0].1.tcg.len(), 3);
    }
}
