//! The scenario text format.
//!
//! A scenario is a sequence of sections. Each section starts with a header
//! line at column one; the lines below it, up to the next header, form its
//! body:
//!
//! ```text
//! GAME A = atom(-, ✓)
//! GAME B = par(bang_ajm(atom(-, o), 2), atom(+, p))
//! GAME D
//!   EVENT n1 - n
//!   EVENT p1 + p
//!   EDGE n1 p1
//!   SYM all
//!   SYM+ id
//!   SYM- gens n1->n1 p1->p1
//! ARENA QA
//!   EVENT q - q
//!   EVENT a + a
//!   EDGE q a
//! STRATEGY sigma : A -> B
//!   EVENT o1 R.o[0]
//!   EVENT ck L.✓
//!   EDGE o1 ck
//!   SYM all
//! STRATEGY both = compose(sigma, tau)
//! RUN
//!   collapse both
//! ```
//!
//! A `#` at the start of a token comments out the rest of the line.

use std::fmt::{self, Write};

use tcg::Polarity;

/// A position in the source, 1-based. Positions never take part in
/// equality, so a printed and reparsed scenario equals the original.
#[derive(Clone, Copy, Debug, Default)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl PartialEq for Pos {
    fn eq(&self, _: &Pos) -> bool {
        true
    }
}

impl Eq for Pos {}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("line {}, column {}: {msg}", pos.line, pos.col)]
pub struct ParseError {
    pub pos: Pos,
    pub msg: String,
}

fn fail<T>(pos: Pos, msg: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { pos, msg: msg.into() })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ident {
    pub name: String,
    pub pos: Pos,
}

impl Ident {
    pub fn new(name: &str) -> Ident {
        Ident { name: name.to_string(), pos: Pos::default() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Scenario {
    pub items: Vec<Item>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Item {
    Game(GameItem),
    Arena(ArenaItem),
    Strategy(StrategyItem),
    Run(Vec<Command>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GameItem {
    pub name: Ident,
    pub body: GameBody,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GameBody {
    Explicit(ExplicitGame),
    Expr(Expr),
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ExplicitGame {
    pub events: Vec<EventLine>,
    pub edges: Vec<(Ident, Ident)>,
    pub conflicts: Vec<(Ident, Ident)>,
    /// Full, positive and negative symmetry, `id` when absent.
    pub sym: [Option<SymDecl>; 3],
}

/// `EVENT id polarity [label]`, the label defaulting to the id.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EventLine {
    pub id: Ident,
    pub polarity: Polarity,
    pub label: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SymDecl {
    All,
    Id,
    /// Each generator is a list of `a->b` pairs.
    Gens(Vec<Vec<(Ident, Ident)>>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArenaItem {
    pub name: Ident,
    pub events: Vec<EventLine>,
    pub edges: Vec<(Ident, Ident)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Ref(Ident),
    Empty,
    Atom(Polarity, String),
    Dual(Box<Expr>),
    Par(Vec<Expr>),
    Sum(Vec<Expr>),
    ShiftUp(Box<Expr>),
    ShiftDown(Box<Expr>),
    Arrow(Box<Expr>, Box<Expr>),
    /// Without a bound, the command line `--bound` applies.
    BangAjm(Box<Expr>, Option<usize>),
    /// No bound, one bound for every depth, or one bound per depth.
    BangHo(Ident, Vec<usize>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrategyItem {
    pub name: Ident,
    pub body: StrategyBody,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StrategyBody {
    Explicit(ExplicitStrategy),
    Compose(Ident, Ident),
    Copycat(Ident),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExplicitStrategy {
    pub left: Ident,
    pub right: Ident,
    pub events: Vec<StrategyEvent>,
    pub edges: Vec<(Ident, Ident)>,
    pub conflicts: Vec<(Ident, Ident)>,
    /// `all` when absent.
    pub sym: Option<SymDecl>,
}

/// `EVENT id target [label]`: polarity and copy indices come from the
/// target, and so does the label when none is given.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrategyEvent {
    pub id: Ident,
    pub target: Target,
    pub label: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// `L.name`, `R.name`, or by index `L#0`, `R#3`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Target {
    pub side: Side,
    pub event: EventRef,
    pub pos: Pos,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EventRef {
    Name(String),
    Index(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Command {
    pub verb: Verb,
    pub args: Vec<Ident>,
    pub pos: Pos,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verb {
    Validate,
    Collapse,
    Compose,
    Classes,
    Canonical,
    CheckTheorem,
}

impl Verb {
    pub const ALL: [Verb; 6] =
        [Verb::Validate, Verb::Collapse, Verb::Compose, Verb::Classes, Verb::Canonical, Verb::CheckTheorem];

    pub fn name(self) -> &'static str {
        match self {
            Verb::Validate => "validate",
            Verb::Collapse => "collapse",
            Verb::Compose => "compose",
            Verb::Classes => "classes",
            Verb::Canonical => "canonical",
            Verb::CheckTheorem => "check-theorem",
        }
    }

    pub fn arity(self) -> usize {
        match self {
            Verb::Validate => 0,
            Verb::Collapse | Verb::Classes | Verb::Canonical => 1,
            Verb::Compose | Verb::CheckTheorem => 2,
        }
    }
}

// Lexing

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Word(String),
    Punct(char),
    Arrow,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    pos: Pos,
}

const PUNCT: &[char] = &['(', ')', ',', '|', '=', ':'];

fn lex_line(line: &str, lineno: usize) -> Vec<Token> {
    let chars: Vec<char> = line.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    let arrow_at = |i: usize| chars[i] == '-' && chars.get(i + 1) == Some(&'>');
    while i < chars.len() {
        let c = chars[i];
        let pos = Pos { line: lineno, col: i + 1 };
        if c.is_whitespace() {
            i += 1;
        } else if c == '#' {
            break;
        } else if arrow_at(i) {
            out.push(Token { tok: Tok::Arrow, pos });
            i += 2;
        } else if PUNCT.contains(&c) {
            out.push(Token { tok: Tok::Punct(c), pos });
            i += 1;
        } else {
            // punctuation inside brackets belongs to the word, as in `q[0,1]`
            let start = i;
            let mut depth = 0usize;
            while i < chars.len() && !chars[i].is_whitespace() && !arrow_at(i) {
                match chars[i] {
                    '[' => depth += 1,
                    ']' => depth = depth.saturating_sub(1),
                    c if depth == 0 && PUNCT.contains(&c) => break,
                    _ => {}
                }
                i += 1;
            }
            out.push(Token { tok: Tok::Word(chars[start..i].iter().collect()), pos });
        }
    }
    out
}

/// Cursor over the tokens of one line.
struct Line {
    toks: Vec<Token>,
    i: usize,
    end: Pos,
}

impl Line {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.i).map(|t| &t.tok)
    }

    fn pos(&self) -> Pos {
        self.toks.get(self.i).map_or(self.end, |t| t.pos)
    }

    fn word(&mut self, what: &str) -> Result<Ident, ParseError> {
        let pos = self.pos();
        match self.toks.get(self.i) {
            Some(Token { tok: Tok::Word(w), .. }) => {
                self.i += 1;
                Ok(Ident { name: w.clone(), pos })
            }
            _ => fail(pos, format!("expected {}", what)),
        }
    }

    fn punct(&mut self, c: char) -> Result<(), ParseError> {
        if self.peek() == Some(&Tok::Punct(c)) {
            self.i += 1;
            Ok(())
        } else {
            fail(self.pos(), format!("expected `{}`", c))
        }
    }

    fn eat(&mut self, t: Tok) -> bool {
        if self.peek() == Some(&t) {
            self.i += 1;
            true
        } else {
            false
        }
    }

    fn done(&self) -> Result<(), ParseError> {
        if self.i < self.toks.len() {
            return fail(self.pos(), "unexpected trailing input");
        }
        Ok(())
    }

    fn number(&mut self, what: &str) -> Result<usize, ParseError> {
        let w = self.word(what)?;
        w.name.parse().or_else(|_| fail(w.pos, format!("expected {}, found `{}`", what, w.name)))
    }
}

fn polarity(w: &Ident) -> Result<Polarity, ParseError> {
    match w.name.as_str() {
        "+" => Ok(Polarity::Positive),
        "-" => Ok(Polarity::Negative),
        _ => fail(w.pos, format!("expected polarity `+` or `-`, found `{}`", w.name)),
    }
}

fn sign(p: Polarity) -> char {
    match p {
        Polarity::Positive => '+',
        Polarity::Negative => '-',
    }
}

// Parsing

enum Section {
    None,
    Game(ExplicitGame),
    Arena,
    Strategy(ExplicitStrategy),
    Closed,
    Run,
}

pub fn parse(src: &str) -> Result<Scenario, ParseError> {
    let mut items: Vec<Item> = Vec::new();
    let mut section = Section::None;
    let mut header: Option<(Ident, bool)> = None;
    let mut arena: Option<ArenaItem> = None;
    let mut run: Vec<Command> = Vec::new();

    fn flush(
        section: &mut Section,
        header: &mut Option<(Ident, bool)>,
        arena: &mut Option<ArenaItem>,
        run: &mut Vec<Command>,
        items: &mut Vec<Item>,
    ) {
        match std::mem::replace(section, Section::None) {
            Section::Game(g) => {
                let (name, _) = header.take().unwrap();
                items.push(Item::Game(GameItem { name, body: GameBody::Explicit(g) }));
            }
            Section::Strategy(s) => {
                let (name, _) = header.take().unwrap();
                items.push(Item::Strategy(StrategyItem { name, body: StrategyBody::Explicit(s) }));
            }
            Section::Arena => items.push(Item::Arena(arena.take().unwrap())),
            Section::Run => items.push(Item::Run(std::mem::take(run))),
            Section::None | Section::Closed => {}
        }
    }

    for (n, text) in src.lines().enumerate() {
        let toks = lex_line(text, n + 1);
        if toks.is_empty() {
            continue;
        }
        let end = Pos { line: n + 1, col: text.chars().count() + 1 };
        let mut l = Line { toks, i: 0, end };
        let first = l.word("a section header or body line")?;
        let top = first.pos.col == 1;
        match (top, first.name.as_str()) {
            (true, "GAME") => {
                flush(&mut section, &mut header, &mut arena, &mut run, &mut items);
                let name = l.word("a game name")?;
                if l.eat(Tok::Punct('=')) {
                    let e = expr(&mut l)?;
                    l.done()?;
                    items.push(Item::Game(GameItem { name, body: GameBody::Expr(e) }));
                    section = Section::Closed;
                } else {
                    l.done()?;
                    header = Some((name, true));
                    section = Section::Game(ExplicitGame::default());
                }
            }
            (true, "ARENA") => {
                flush(&mut section, &mut header, &mut arena, &mut run, &mut items);
                let name = l.word("an arena name")?;
                l.done()?;
                arena = Some(ArenaItem { name, events: Vec::new(), edges: Vec::new() });
                section = Section::Arena;
            }
            (true, "STRATEGY") => {
                flush(&mut section, &mut header, &mut arena, &mut run, &mut items);
                let name = l.word("a strategy name")?;
                if l.eat(Tok::Punct('=')) {
                    let op = l.word("`compose` or `copycat`")?;
                    l.punct('(')?;
                    let body = match op.name.as_str() {
                        "compose" => {
                            let a = l.word("a strategy name")?;
                            l.punct(',')?;
                            StrategyBody::Compose(a, l.word("a strategy name")?)
                        }
                        "copycat" => StrategyBody::Copycat(l.word("a game name")?),
                        _ => return fail(op.pos, format!("expected `compose` or `copycat`, found `{}`", op.name)),
                    };
                    l.punct(')')?;
                    l.done()?;
                    items.push(Item::Strategy(StrategyItem { name, body }));
                    section = Section::Closed;
                } else {
                    l.punct(':')?;
                    let left = l.word("a game name")?;
                    if !l.eat(Tok::Arrow) {
                        return fail(l.pos(), "expected `->`");
                    }
                    let right = l.word("a game name")?;
                    l.done()?;
                    header = Some((name, false));
                    section = Section::Strategy(ExplicitStrategy {
                        left,
                        right,
                        events: Vec::new(),
                        edges: Vec::new(),
                        conflicts: Vec::new(),
                        sym: None,
                    });
                }
            }
            (true, "RUN") => {
                flush(&mut section, &mut header, &mut arena, &mut run, &mut items);
                l.done()?;
                section = Section::Run;
            }
            (true, w) => return fail(first.pos, format!("expected GAME, ARENA, STRATEGY or RUN, found `{}`", w)),
            (false, _) => match &mut section {
                Section::Game(g) => game_line(g, &first, &mut l)?,
                Section::Arena => arena_line(arena.as_mut().unwrap(), &first, &mut l)?,
                Section::Strategy(s) => strategy_line(s, &first, &mut l)?,
                Section::Run => run.push(command(&first, &mut l)?),
                Section::None | Section::Closed => return fail(first.pos, "body line outside of a section"),
            },
        }
    }
    flush(&mut section, &mut header, &mut arena, &mut run, &mut items);
    Ok(Scenario { items })
}

fn pair(l: &mut Line) -> Result<(Ident, Ident), ParseError> {
    let a = l.word("an event")?;
    let b = l.word("an event")?;
    l.done()?;
    Ok((a, b))
}

fn event_line(l: &mut Line) -> Result<EventLine, ParseError> {
    let id = l.word("an event id")?;
    let p = polarity(&l.word("a polarity")?)?;
    let label = if l.peek().is_some() { Some(l.word("a label")?.name) } else { None };
    l.done()?;
    Ok(EventLine { id, polarity: p, label })
}

fn sym_decl(l: &mut Line) -> Result<SymDecl, ParseError> {
    let w = l.word("`all`, `id` or `gens`")?;
    let d = match w.name.as_str() {
        "all" => SymDecl::All,
        "id" => SymDecl::Id,
        "gens" => {
            let mut gens = vec![Vec::new()];
            while l.peek().is_some() {
                if l.eat(Tok::Punct('|')) {
                    gens.push(Vec::new());
                    continue;
                }
                let a = l.word("an event")?;
                if !l.eat(Tok::Arrow) {
                    return fail(l.pos(), "expected `->`");
                }
                let b = l.word("an event")?;
                gens.last_mut().unwrap().push((a, b));
            }
            SymDecl::Gens(gens)
        }
        _ => return fail(w.pos, format!("expected `all`, `id` or `gens`, found `{}`", w.name)),
    };
    l.done()?;
    Ok(d)
}

fn game_line(g: &mut ExplicitGame, first: &Ident, l: &mut Line) -> Result<(), ParseError> {
    match first.name.as_str() {
        "EVENT" => g.events.push(event_line(l)?),
        "EDGE" => g.edges.push(pair(l)?),
        "CONFLICT" => g.conflicts.push(pair(l)?),
        "SYM" | "SYM+" | "SYM-" => {
            let i = match first.name.as_str() {
                "SYM" => 0,
                "SYM+" => 1,
                _ => 2,
            };
            if g.sym[i].is_some() {
                return fail(first.pos, format!("{} given twice", first.name));
            }
            g.sym[i] = Some(sym_decl(l)?);
        }
        w => return fail(first.pos, format!("expected EVENT, EDGE, CONFLICT or SYM, found `{}`", w)),
    }
    Ok(())
}

fn arena_line(a: &mut ArenaItem, first: &Ident, l: &mut Line) -> Result<(), ParseError> {
    match first.name.as_str() {
        "EVENT" => a.events.push(event_line(l)?),
        "EDGE" => a.edges.push(pair(l)?),
        w => return fail(first.pos, format!("expected EVENT or EDGE, found `{}`", w)),
    }
    Ok(())
}

fn target(w: &Ident) -> Result<Target, ParseError> {
    let side = match w.name.chars().next() {
        Some('L') => Side::Left,
        Some('R') => Side::Right,
        _ => return fail(w.pos, format!("expected a target `L.name`, `R.name`, `L#i` or `R#i`, found `{}`", w.name)),
    };
    let rest = &w.name[1..];
    let event = if let Some(name) = rest.strip_prefix('.').filter(|n| !n.is_empty()) {
        EventRef::Name(name.to_string())
    } else if let Some(i) = rest.strip_prefix('#').and_then(|i| i.parse().ok()) {
        EventRef::Index(i)
    } else {
        return fail(w.pos, format!("expected a target `L.name`, `R.name`, `L#i` or `R#i`, found `{}`", w.name));
    };
    Ok(Target { side, event, pos: w.pos })
}

fn strategy_line(s: &mut ExplicitStrategy, first: &Ident, l: &mut Line) -> Result<(), ParseError> {
    match first.name.as_str() {
        "EVENT" => {
            let id = l.word("an event id")?;
            let t = target(&l.word("a target")?)?;
            let label = if l.peek().is_some() { Some(l.word("a label")?.name) } else { None };
            l.done()?;
            s.events.push(StrategyEvent { id, target: t, label });
        }
        "EDGE" => s.edges.push(pair(l)?),
        "CONFLICT" => s.conflicts.push(pair(l)?),
        "SYM" => {
            if s.sym.is_some() {
                return fail(first.pos, "SYM given twice");
            }
            s.sym = Some(sym_decl(l)?);
        }
        w => return fail(first.pos, format!("expected EVENT, EDGE, CONFLICT or SYM, found `{}`", w)),
    }
    Ok(())
}

fn command(first: &Ident, l: &mut Line) -> Result<Command, ParseError> {
    let verb = Verb::ALL
        .into_iter()
        .find(|v| v.name() == first.name)
        .map_or_else(|| fail(first.pos, format!("unknown command `{}`", first.name)), Ok)?;
    let mut args = Vec::new();
    for _ in 0..verb.arity() {
        args.push(l.word("a name")?);
    }
    l.done()?;
    Ok(Command { verb, args, pos: first.pos })
}

fn args(l: &mut Line) -> Result<Vec<Expr>, ParseError> {
    l.punct('(')?;
    let mut out = vec![expr(l)?];
    while l.eat(Tok::Punct(',')) {
        out.push(expr(l)?);
    }
    l.punct(')')?;
    Ok(out)
}

fn arity(op: &Ident, got: usize, lo: usize, hi: usize) -> Result<(), ParseError> {
    if got < lo || got > hi {
        let want = if lo == hi { lo.to_string() } else if hi == usize::MAX { format!("at least {}", lo) } else { format!("{} to {}", lo, hi) };
        return fail(op.pos, format!("`{}` takes {} arguments, found {}", op.name, want, got));
    }
    Ok(())
}

fn expr(l: &mut Line) -> Result<Expr, ParseError> {
    let w = l.word("a game expression")?;
    if l.peek() != Some(&Tok::Punct('(')) {
        return Ok(match w.name.as_str() {
            "empty" => Expr::Empty,
            _ => Expr::Ref(w),
        });
    }
    let one = |mut v: Vec<Expr>| Box::new(v.remove(0));
    Ok(match w.name.as_str() {
        "atom" => {
            l.punct('(')?;
            let p = polarity(&l.word("a polarity")?)?;
            l.punct(',')?;
            let label = l.word("a label")?.name;
            l.punct(')')?;
            Expr::Atom(p, label)
        }
        "bang_ajm" => {
            l.punct('(')?;
            let e = expr(l)?;
            let k = if l.eat(Tok::Punct(',')) { Some(l.number("a copy bound")?) } else { None };
            l.punct(')')?;
            Expr::BangAjm(Box::new(e), k)
        }
        "bang_ho" => {
            l.punct('(')?;
            let arena = l.word("an arena name")?;
            let mut bounds = Vec::new();
            while l.eat(Tok::Punct(',')) {
                bounds.push(l.number("a copy bound")?);
            }
            l.punct(')')?;
            Expr::BangHo(arena, bounds)
        }
        "dual" | "shift_up" | "shift_down" => {
            let a = args(l)?;
            arity(&w, a.len(), 1, 1)?;
            match w.name.as_str() {
                "dual" => Expr::Dual(one(a)),
                "shift_up" => Expr::ShiftUp(one(a)),
                _ => Expr::ShiftDown(one(a)),
            }
        }
        "par" => {
            let a = args(l)?;
            arity(&w, a.len(), 2, usize::MAX)?;
            Expr::Par(a)
        }
        "sum" => Expr::Sum(args(l)?),
        "arrow" => {
            let mut a = args(l)?;
            arity(&w, a.len(), 2, 2)?;
            let n = a.pop().unwrap();
            Expr::Arrow(one(a), Box::new(n))
        }
        _ => return fail(w.pos, format!("unknown construction `{}`", w.name)),
    })
}

// Printing

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |f: &mut fmt::Formatter<'_>, name: &str, es: &[Expr]| {
            write!(f, "{}(", name)?;
            for (i, e) in es.iter().enumerate() {
                if i > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", e)?;
            }
            write!(f, ")")
        };
        match self {
            Expr::Ref(i) => write!(f, "{}", i.name),
            Expr::Empty => write!(f, "empty"),
            Expr::Atom(p, l) => write!(f, "atom({}, {})", sign(*p), l),
            Expr::Dual(e) => write!(f, "dual({})", e),
            Expr::Par(es) => list(f, "par", es),
            Expr::Sum(es) => list(f, "sum", es),
            Expr::ShiftUp(e) => write!(f, "shift_up({})", e),
            Expr::ShiftDown(e) => write!(f, "shift_down({})", e),
            Expr::Arrow(m, n) => write!(f, "arrow({}, {})", m, n),
            Expr::BangAjm(e, None) => write!(f, "bang_ajm({})", e),
            Expr::BangAjm(e, Some(k)) => write!(f, "bang_ajm({}, {})", e, k),
            Expr::BangHo(a, bounds) => {
                write!(f, "bang_ho({}", a.name)?;
                for b in bounds {
                    write!(f, ", {}", b)?;
                }
                write!(f, ")")
            }
        }
    }
}

impl fmt::Display for SymDecl {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SymDecl::All => write!(f, "all"),
            SymDecl::Id => write!(f, "id"),
            SymDecl::Gens(gens) => {
                write!(f, "gens")?;
                for (i, g) in gens.iter().enumerate() {
                    if i > 0 {
                        write!(f, " |")?;
                    }
                    for (a, b) in g {
                        write!(f, " {}->{}", a.name, b.name)?;
                    }
                }
                Ok(())
            }
        }
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self.side {
            Side::Left => 'L',
            Side::Right => 'R',
        };
        match &self.event {
            EventRef::Name(n) => write!(f, "{}.{}", s, n),
            EventRef::Index(i) => write!(f, "{}#{}", s, i),
        }
    }
}

fn print_events(out: &mut String, events: &[EventLine]) {
    for e in events {
        let _ = write!(out, "  EVENT {} {}", e.id.name, sign(e.polarity));
        if let Some(l) = &e.label {
            let _ = write!(out, " {}", l);
        }
        out.push('\n');
    }
}

fn print_pairs(out: &mut String, kw: &str, pairs: &[(Ident, Ident)]) {
    for (a, b) in pairs {
        let _ = writeln!(out, "  {} {} {}", kw, a.name, b.name);
    }
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        for (i, item) in self.items.iter().enumerate() {
            if i > 0 {
                out.push('\n');
            }
            match item {
                Item::Game(GameItem { name, body: GameBody::Expr(e) }) => {
                    let _ = writeln!(out, "GAME {} = {}", name.name, e);
                }
                Item::Game(GameItem { name, body: GameBody::Explicit(g) }) => {
                    let _ = writeln!(out, "GAME {}", name.name);
                    print_events(&mut out, &g.events);
                    print_pairs(&mut out, "EDGE", &g.edges);
                    print_pairs(&mut out, "CONFLICT", &g.conflicts);
                    for (kw, s) in ["SYM", "SYM+", "SYM-"].iter().zip(&g.sym) {
                        if let Some(s) = s {
                            let _ = writeln!(out, "  {} {}", kw, s);
                        }
                    }
                }
                Item::Arena(a) => {
                    let _ = writeln!(out, "ARENA {}", a.name.name);
                    print_events(&mut out, &a.events);
                    print_pairs(&mut out, "EDGE", &a.edges);
                }
                Item::Strategy(StrategyItem { name, body }) => match body {
                    StrategyBody::Compose(a, b) => {
                        let _ = writeln!(out, "STRATEGY {} = compose({}, {})", name.name, a.name, b.name);
                    }
                    StrategyBody::Copycat(g) => {
                        let _ = writeln!(out, "STRATEGY {} = copycat({})", name.name, g.name);
                    }
                    StrategyBody::Explicit(s) => {
                        let _ = writeln!(out, "STRATEGY {} : {} -> {}", name.name, s.left.name, s.right.name);
                        for e in &s.events {
                            let _ = write!(out, "  EVENT {} {}", e.id.name, e.target);
                            if let Some(l) = &e.label {
                                let _ = write!(out, " {}", l);
                            }
                            out.push('\n');
                        }
                        print_pairs(&mut out, "EDGE", &s.edges);
                        print_pairs(&mut out, "CONFLICT", &s.conflicts);
                        if let Some(sym) = &s.sym {
                            let _ = writeln!(out, "  SYM {}", sym);
                        }
                    }
                },
                Item::Run(cmds) => {
                    out.push_str("RUN\n");
                    for c in cmds {
                        out.push_str("  ");
                        out.push_str(c.verb.name());
                        for a in &c.args {
                            out.push(' ');
                            out.push_str(&a.name);
                        }
                        out.push('\n');
                    }
                }
            }
        }
        f.write_str(&out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lexer_splits_arrows_and_punctuation() {
        let toks: Vec<Tok> = lex_line("a->b f(x,y) c-d q[0,1] # rest", 1).into_iter().map(|t| t.tok).collect();
        let w = |s: &str| Tok::Word(s.into());
        assert_eq!(
            toks,
            vec![
                w("a"),
                Tok::Arrow,
                w("b"),
                w("f"),
                Tok::Punct('('),
                w("x"),
                Tok::Punct(','),
                w("y"),
                Tok::Punct(')'),
                w("c-d"),
                w("q[0,1]")
            ]
        );
    }

    #[test]
    fn index_targets_are_not_comments() {
        let s = parse("STRATEGY s : A -> B\n  EVENT x R#3\n").unwrap();
        let Item::Strategy(StrategyItem { body: StrategyBody::Explicit(e), .. }) = &s.items[0] else { panic!() };
        assert_eq!(e.events[0].target.event, EventRef::Index(3));
    }

    #[test]
    fn errors_carry_line_and_column() {
        let e = parse("GAME A = atom(-, x)\nGAME B = dual(A\n").unwrap_err();
        assert_eq!((e.pos.line, e.pos.col), (2, 16));
        let e = parse("GAME A\n  EVENT a * x\n").unwrap_err();
        assert_eq!((e.pos.line, e.pos.col), (2, 11));
        let e = parse("  EVENT a + x\n").unwrap_err();
        assert_eq!((e.pos.line, e.pos.col), (1, 3));
        let e = parse("RUN\n  collapse\n").unwrap_err();
        assert_eq!((e.pos.line, e.pos.col), (2, 11));
    }

    #[test]
    fn printing_round_trips() {
        let src = "GAME A = atom(-, ✓)\n\nGAME D\n  EVENT n1 - n\n  EVENT p1 + p\n  EDGE n1 p1\n  SYM all\n  SYM- gens n1->n1 p1->p1 | n1->n1\n\nRUN\n  check-theorem s t\n";
        let s = parse(src).unwrap();
        assert_eq!(s.to_string(), src);
        assert_eq!(parse(&s.to_string()).unwrap(), s);
    }
}
