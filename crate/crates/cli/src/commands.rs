//! The subcommands, writing to an [`Out`] and reporting a [`Status`].

use std::fmt::Write;

use tcg::collapse::{check_theorem, collapse_capped, Atlas, Atlases, STEP_NAMES};
use tcg::strategies::{compose, find_deadlock, no_deadlock, validate_strategy};
use tcg::symmetry::{check_family_axioms, is_canonical, is_representable};
use tcg::{EventSet, Strategy, Tcg, WeightedRelation};

use crate::model::{AtlasFile, Model, StrategyEntry};
use crate::scenario::{Ident, ParseError, Verb};
use crate::CliError;

/// Budget of the family axiom check, in candidate isomorphisms.
const FAMILY_BUDGET: usize = 1 << 22;

#[derive(Clone, Debug)]
pub struct Options {
    pub bound: usize,
    pub strict: bool,
    pub cap: usize,
    pub atlas: Option<AtlasFile>,
    pub kv: bool,
}

impl Default for Options {
    fn default() -> Options {
        Options { bound: 2, strict: false, cap: tcg::esp_core::DEFAULT_CAP, atlas: None, kv: false }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    CheckFailed,
}

impl Status {
    pub fn and(self, o: Status) -> Status {
        if self == Status::Pass {
            o
        } else {
            self
        }
    }

    pub fn of(ok: bool) -> Status {
        if ok {
            Status::Pass
        } else {
            Status::CheckFailed
        }
    }
}

/// Output in either human or `key=value` form.
pub struct Out {
    pub kv: bool,
    pub text: String,
}

fn quote(v: &str) -> String {
    if !v.is_empty() && !v.chars().any(|c| c.is_whitespace() || c == '"' || c == '=' || c == '\\') {
        return v.to_string();
    }
    let mut s = String::from("\"");
    for c in v.chars() {
        if c == '"' || c == '\\' {
            s.push('\\');
        }
        s.push(c);
    }
    s.push('"');
    s
}

impl Out {
    pub fn new(kv: bool) -> Out {
        Out { kv, text: String::new() }
    }

    /// A human line, skipped in `key=value` mode.
    pub fn line(&mut self, s: impl AsRef<str>) {
        if !self.kv {
            self.text.push_str(s.as_ref());
            self.text.push('\n');
        }
    }

    /// A record, skipped in human mode.
    pub fn rec(&mut self, kind: &str, fields: &[(&str, String)]) {
        if self.kv {
            self.text.push_str(kind);
            for (k, v) in fields {
                let _ = write!(self.text, " {}={}", k, quote(v));
            }
            self.text.push('\n');
        }
    }
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

fn lib<T>(r: tcg::Result<T>) -> Result<T, CliError> {
    r.map_err(CliError::Lib)
}

/// Class names as printed: the empty configuration is `∅`.
fn class_name(g: &Tcg, x: EventSet) -> String {
    if x.is_empty() {
        "∅".into()
    } else {
        g.describe(x)
    }
}

fn atlas(model: &Model, opts: &Options, game: &str) -> Result<Atlas, CliError> {
    match &opts.atlas {
        Some(f) => f.atlas(model, game).map_err(CliError::Build),
        None => {
            let g = model.game(&Ident::new(game)).map_err(CliError::Build)?;
            lib(Atlas::auto(&g.tcg))
        }
    }
}

pub fn validate(model: &Model, opts: &Options, out: &mut Out) -> Result<Status, CliError> {
    let mut failed = 0;
    let mut check = |out: &mut Out, kind: &str, name: &str, what: &str, ok: bool, detail: String| {
        if !ok {
            failed += 1;
        }
        let mut fields = vec![(kind, name.to_string()), ("check", what.to_string()), ("result", verdict(ok).to_string())];
        if !detail.is_empty() {
            fields.push(("detail", detail.clone()));
        }
        out.rec("check", &fields);
        if detail.is_empty() {
            out.line(format!("{} {}: {} {}", kind, name, what, verdict(ok)));
        } else {
            out.line(format!("{} {}: {} {} ({})", kind, name, what, verdict(ok), detail));
        }
    };
    for (name, g) in &model.games {
        let fam = lib(check_family_axioms(&g.tcg, FAMILY_BUDGET))?;
        let detail = fam.violations.first().map_or(String::new(), |v| format!("{:?}", v));
        check(out, "game", name, "family", fam.passes(), detail);
        let rep = lib(is_representable(&g.tcg))?;
        let classes = lib(g.tcg.symmetry_classes())?;
        let missing: Vec<String> =
            classes.iter().filter(|c| c.least_canonical.is_none()).map(|c| class_name(&g.tcg, c.members[0])).collect();
        let detail = if missing.is_empty() { String::new() } else { format!("no canonical member in {}", missing.join(", ")) };
        check(out, "game", name, "representable", rep.representable, detail);
    }
    for (name, s) in &model.strategies {
        let r = lib(validate_strategy(&s.strategy))?;
        if r.passes() {
            check(out, "strategy", name, "axioms", true, String::new());
        }
        for f in &r.failures {
            check(out, "strategy", name, &f.axiom.to_string(), false, f.detail.clone());
        }
    }
    let mode = if opts.strict { "strict" } else { "permissive" };
    out.rec("summary", &[("failed", failed.to_string()), ("mode", mode.to_string())]);
    out.line(format!("{} failed check(s), {} mode", failed, mode));
    Ok(if opts.strict { Status::of(failed == 0) } else { Status::Pass })
}

fn print_relation(r: &WeightedRelation, left: &Tcg, right: &Tcg, what: &str, out: &mut Out) {
    let rows: Vec<String> = r.rows.iter().map(|&x| class_name(left, x)).collect();
    let cols: Vec<String> = r.cols.iter().map(|&x| class_name(right, x)).collect();
    let support = r.support();
    out.rec(
        "relation",
        &[
            ("strategy", what.to_string()),
            ("rows", rows.len().to_string()),
            ("cols", cols.len().to_string()),
            ("nonzero", support.len().to_string()),
        ],
    );
    for &(i, j, w) in &support {
        out.rec("entry", &[("row", rows[i].clone()), ("col", cols[j].clone()), ("weight", w.to_string())]);
    }
    out.line(format!("{}: {} × {}, {} nonzero", what, rows.len(), cols.len(), support.len()));
    if out.kv {
        return;
    }
    if cols.len() > 8 {
        for &(i, j, w) in &support {
            out.line(format!("  {} → {} : {}", rows[i], cols[j], w));
        }
        return;
    }
    let width = |s: &str| s.chars().count();
    let rw = rows.iter().map(|s| width(s)).max().unwrap_or(0);
    let cw: Vec<usize> = (0..cols.len())
        .map(|j| (0..rows.len()).map(|i| width(&r.get(i, j).to_string())).chain([width(&cols[j])]).max().unwrap())
        .collect();
    let pad = |s: &str, w: usize| format!("{}{}", " ".repeat(w - width(s)), s);
    let mut head = format!("  {}", " ".repeat(rw));
    for (j, c) in cols.iter().enumerate() {
        head.push_str(" | ");
        head.push_str(&pad(c, cw[j]));
    }
    out.line(head.trim_end());
    for (i, row) in rows.iter().enumerate() {
        let mut l = format!("  {}", pad(row, rw));
        for j in 0..cols.len() {
            l.push_str(" | ");
            l.push_str(&pad(&r.get(i, j).to_string(), cw[j]));
        }
        out.line(l);
    }
}

pub fn collapse(model: &Model, opts: &Options, name: &Ident, out: &mut Out) -> Result<Status, CliError> {
    let s = model.strategy(name).map_err(CliError::Build)?;
    let (aa, ab) = (atlas(model, opts, &s.left)?, atlas(model, opts, &s.right)?);
    let r = lib(collapse_capped(&s.strategy, &aa, &ab, opts.cap))?;
    print_relation(&r, &s.strategy.left, &s.strategy.right, &name.name, out);
    Ok(Status::Pass)
}

fn pair<'a>(model: &'a Model, a: &Ident, b: &Ident) -> Result<(&'a StrategyEntry, &'a StrategyEntry), CliError> {
    let (s, t) = (model.strategy(a).map_err(CliError::Build)?, model.strategy(b).map_err(CliError::Build)?);
    if s.strategy.right != t.strategy.left {
        return Err(CliError::Build(ParseError {
            pos: b.pos,
            msg: format!("`{}` does not start where `{}` ends", b.name, a.name),
        }));
    }
    Ok((s, t))
}

/// Textual Hasse diagram of a strategy.
fn dump(s: &Strategy, out: &mut Out) {
    for e in 0..s.es.len() {
        let g = s.label[e];
        let side = if s.is_left(e) { "L" } else { "R" };
        let target = s.game.es.display_name(g);
        out.rec(
            "event",
            &[
                ("id", e.to_string()),
                ("polarity", s.es.polarity(e).sign().to_string()),
                ("name", s.es.display_name(e)),
                ("side", side.into()),
                ("target", target.clone()),
            ],
        );
        out.line(format!("  {:>3} {} {} ↦ {}.{}", e, s.es.polarity(e).sign(), s.es.display_name(e), side, target));
    }
    for e in 0..s.es.len() {
        for &f in s.es.succs(e) {
            out.rec("edge", &[("from", e.to_string()), ("to", f.to_string())]);
            out.line(format!("  {} → {}", e, f));
        }
    }
    for (a, b) in s.es.minimal_conflicts() {
        out.rec("conflict", &[("a", a.to_string()), ("b", b.to_string())]);
        out.line(format!("  {} # {}", a, b));
    }
}

pub fn compose_cmd(model: &Model, a: &Ident, b: &Ident, out: &mut Out) -> Result<Status, CliError> {
    let (s, t) = pair(model, a, b)?;
    let comp = lib(compose(&s.strategy, &t.strategy))?;
    let configs = lib(comp.configurations())?;
    let pcov = configs.iter().filter(|&&z| comp.es.is_plus_covered(z)).count();
    let deadlock = lib(find_deadlock(&s.strategy, &t.strategy))?;
    out.rec(
        "composite",
        &[
            ("left", a.name.clone()),
            ("right", b.name.clone()),
            ("events", comp.es.len().to_string()),
            ("configurations", configs.len().to_string()),
            ("plus_covered", pcov.to_string()),
            ("deadlock_free", deadlock.is_none().to_string()),
        ],
    );
    out.line(format!("{} ⊙ {}: {} events, {} configurations, {} +-covered", b.name, a.name, comp.es.len(), configs.len(), pcov));
    dump(&comp, out);
    match deadlock {
        None => out.line("deadlock free"),
        Some(d) => out.line(format!(
            "deadlock: {} against {} through {:?}",
            s.strategy.describe(d.state.s),
            t.strategy.describe(d.state.t),
            d.theta_b.pairs()
        )),
    }
    Ok(Status::Pass)
}

pub fn classes(model: &Model, name: &Ident, out: &mut Out) -> Result<Status, CliError> {
    let g = &model.game(name).map_err(CliError::Build)?.tcg;
    for (i, c) in lib(g.symmetry_classes())?.iter().enumerate() {
        let canon = c.least_canonical.map_or("none".to_string(), |x| class_name(g, x));
        out.rec(
            "class",
            &[
                ("index", i.to_string()),
                ("size", c.members.len().to_string()),
                ("rep", class_name(g, c.chosen_rep)),
                ("canonical", canon.clone()),
            ],
        );
        out.line(format!("class {}: {} member(s), representative {}, canonical {}", i, c.members.len(), class_name(g, c.chosen_rep), canon));
    }
    Ok(Status::Pass)
}

pub fn canonical(model: &Model, opts: &Options, name: &Ident, out: &mut Out) -> Result<Status, CliError> {
    let g = &model.game(name).map_err(CliError::Build)?.tcg;
    let mut representable = true;
    for (i, c) in lib(g.symmetry_classes())?.iter().enumerate() {
        let mut canon = Vec::new();
        for &x in &c.members {
            if lib(is_canonical(g, x))? {
                canon.push(class_name(g, x));
            }
        }
        representable &= !canon.is_empty();
        out.rec("class", &[("index", i.to_string()), ("canonical", canon.join(" "))]);
        out.line(format!("class {}: {}", i, if canon.is_empty() { "no canonical member".to_string() } else { canon.join(" ") }));
    }
    out.rec("summary", &[("representable", representable.to_string())]);
    out.line(format!("representable: {}", if representable { "yes" } else { "no" }));
    Ok(if opts.strict { Status::of(representable) } else { Status::Pass })
}

pub fn check_theorem_cmd(model: &Model, opts: &Options, a: &Ident, b: &Ident, out: &mut Out) -> Result<Status, CliError> {
    let (s, t) = pair(model, a, b)?;
    let at = Atlases { a: atlas(model, opts, &s.left)?, b: atlas(model, opts, &s.right)?, c: atlas(model, opts, &t.right)? };
    let live = lib(no_deadlock(&s.strategy, &t.strategy))?;
    let rep = lib(check_theorem(&s.strategy, &t.strategy, &at))?;
    out.rec("pair", &[("sigma", a.name.clone()), ("tau", b.name.clone()), ("deadlock_free", live.to_string())]);
    out.line(format!("{} then {}, deadlock free: {}", a.name, b.name, if live { "yes" } else { "no" }));
    for e in &rep.entries {
        let row = class_name(&s.strategy.left, at.a.rep(e.a));
        let col = class_name(&t.strategy.right, at.c.rep(e.c));
        let broken = e.broken_step();
        let mut fields = vec![("row", row.clone()), ("col", col.clone())];
        let names: Vec<String> = (1..9).map(|i| format!("step{}", i)).collect();
        for (i, v) in e.values.iter().enumerate() {
            fields.push((names[i].as_str(), v.to_string()));
        }
        fields.push(("result", verdict(broken.is_none()).into()));
        if let Some((i, j)) = broken {
            fields.push(("broken", format!("{}-{}", i, j)));
        }
        out.rec("entry", &fields);
        out.line(format!("entry ({}, {})", row, col));
        for (i, v) in e.values.iter().enumerate() {
            out.line(format!("  ({:>2}) {:>6}  {}", i + 1, v.to_string(), STEP_NAMES[i]));
        }
        match broken {
            None => out.line("  PASS"),
            Some((i, j)) => out.line(format!("  FAIL between steps {} and {}", i, j)),
        }
    }
    let ok = rep.passes();
    out.rec("summary", &[("result", verdict(ok).into()), ("entries", rep.entries.len().to_string())]);
    out.line(format!("theorem: {}", verdict(ok)));
    Ok(Status::of(ok))
}

/// Runs the `RUN` section of a scenario.
pub fn run(model: &Model, opts: &Options, out: &mut Out) -> Result<Status, CliError> {
    let mut status = Status::Pass;
    for c in &model.run {
        out.rec("command", &[("verb", c.verb.name().into()), ("line", c.pos.line.to_string())]);
        let args: Vec<&str> = c.args.iter().map(|a| a.name.as_str()).collect();
        out.line(format!("== {} {}", c.verb.name(), args.join(" ")).trim_end());
        let s = match c.verb {
            Verb::Validate => validate(model, opts, out)?,
            Verb::Collapse => collapse(model, opts, &c.args[0], out)?,
            Verb::Compose => compose_cmd(model, &c.args[0], &c.args[1], out)?,
            Verb::Classes => classes(model, &c.args[0], out)?,
            Verb::Canonical => canonical(model, opts, &c.args[0], out)?,
            Verb::CheckTheorem => check_theorem_cmd(model, opts, &c.args[0], &c.args[1], out)?,
        };
        status = status.and(s);
    }
    Ok(status)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quoting() {
        assert_eq!(quote("{✓}"), "{✓}");
        assert_eq!(quote("{o[0], p}"), "\"{o[0], p}\"");
        assert_eq!(quote(""), "\"\"");
        assert_eq!(quote("a\"b"), "\"a\\\"b\"");
    }
}
