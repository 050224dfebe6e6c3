//! Scenario files against the built-in fixtures they transcribe.

use tcg::fixtures;
use tcg::strategies::Strategy;
use tcg::Tcg;
use tcg_cli::model::Model;
use tcg_cli::scenario;

fn model(file: &str) -> Model {
    let path = format!("{}/scenarios/{}", env!("CARGO_MANIFEST_DIR"), file);
    let text = std::fs::read_to_string(&path).unwrap();
    Model::build(&scenario::parse(&text).unwrap(), 2).unwrap()
}

fn strategy<'a>(m: &'a Model, name: &str) -> &'a Strategy {
    &m.strategies.iter().find(|(n, _)| n == name).unwrap().1.strategy
}

fn same_game(a: &Tcg, b: &Tcg) {
    assert_eq!(a.es, b.es);
    assert_eq!((&a.full, &a.pos, &a.neg), (&b.full, &b.pos, &b.neg));
}

/// Everything but the name.
fn same_strategy(a: &Strategy, b: &Strategy) {
    same_game(&a.left, &b.left);
    same_game(&a.right, &b.right);
    assert_eq!(a.es, b.es);
    assert_eq!(a.label, b.label);
    assert_eq!(a.sym, b.sym);
}

fn same_pair(file: &str, (s, t): (Strategy, Strategy)) {
    let m = model(file);
    same_strategy(strategy(&m, "sigma"), &s);
    same_strategy(strategy(&m, "tau"), &t);
}

#[test]
fn epilogue1_matches_fixture() {
    same_pair("epilogue1.tcg", fixtures::epilogue1().unwrap());
}

#[test]
fn epilogue2_matches_fixture() {
    same_pair("epilogue2.tcg", fixtures::epilogue2().unwrap());
}

#[test]
fn ex1_matches_first_tables() {
    same_pair("ex1.tcg", fixtures::ex1(&fixtures::ex1_tables()[0]).unwrap());
}

#[test]
fn deadlock_matches_fixture() {
    same_pair("deadlock.tcg", fixtures::deadlock_pair().unwrap());
}

#[test]
fn devisme_matches_fixture() {
    let m = model("devisme.tcg");
    same_game(&m.games.iter().find(|(n, _)| n == "D").unwrap().1.tcg, &fixtures::devisme());
}

#[test]
fn every_scenario_round_trips() {
    let dir = format!("{}/scenarios", env!("CARGO_MANIFEST_DIR"));
    let mut seen = 0;
    for entry in std::fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().is_some_and(|e| e == "tcg") {
            let s = scenario::parse(&std::fs::read_to_string(&path).unwrap()).unwrap();
            let printed = s.to_string();
            assert_eq!(scenario::parse(&printed).unwrap(), s, "{}", path.display());
            assert_eq!(scenario::parse(&printed).unwrap().to_string(), printed);
            seen += 1;
        }
    }
    assert!(seen >= 6);
}
