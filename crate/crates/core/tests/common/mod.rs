#![allow(dead_code)]

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tcg::collapse::{check_theorem, compatible_counts, Atlases};
use tcg::generate::{random_pair, random_pair_crossing, GameParams};
use tcg::strategies::{no_deadlock, Strategy};
use tcg::symmetry::is_representable;

pub const SEED: u64 = 0x5eed_2024;
pub const LIVE_TARGET: usize = 200;
pub const DEADLOCK_TARGET: usize = 30;

#[derive(Debug, Default)]
pub struct RandomSuite {
    pub live: usize,
    pub deadlocked: usize,
    pub failures: Vec<String>,
}

impl RandomSuite {
    pub fn passes(&self) -> bool {
        self.failures.is_empty() && self.live >= LIVE_TARGET && self.deadlocked >= DEADLOCK_TARGET
    }
}

fn games_ok(s: &Strategy, t: &Strategy) -> Option<String> {
    for g in [&s.left, &s.right, &t.right] {
        if g.len() > 8 {
            return Some(format!("game with {} events", g.len()));
        }
        if !is_representable(g).unwrap().representable {
            return Some("non-representable game".into());
        }
    }
    None
}

fn compatible_counts_everywhere(s: &Strategy, t: &Strategy, at: &Atlases) -> Option<String> {
    let n = |g: &tcg::Tcg| g.symmetry_classes().unwrap().len();
    for a in 0..n(&s.left) {
        for b in 0..n(&s.right) {
            for c in 0..n(&t.right) {
                let q = compatible_counts(s, t, at, a, b, c).unwrap();
                if !q.holds() {
                    return Some(format!("compatible counts at ({},{},{}): {:?}", a, b, c, q));
                }
            }
        }
    }
    None
}

/// Live pairs must satisfy the collapse theorem; deadlocking pairs only the
/// weaker counting identity.
pub fn run_random_suite() -> RandomSuite {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let p = GameParams::default();
    let mut out = RandomSuite::default();
    let mut attempts = 0;
    while out.live < LIVE_TARGET || out.deadlocked < DEADLOCK_TARGET {
        attempts += 1;
        assert!(attempts < 20_000, "generator stalled: {:?}", out);
        let crossing = out.live >= LIVE_TARGET || attempts % 2 == 0;
        let pair = if crossing {
            random_pair_crossing(&mut rng, &p, true)
        } else {
            random_pair(&mut rng, &p)
        };
        let Some((s, t)) = pair.unwrap() else { continue };
        let live = no_deadlock(&s, &t).unwrap();
        if live && out.live >= LIVE_TARGET || !live && out.deadlocked >= DEADLOCK_TARGET {
            continue;
        }
        let at = Atlases::canonical(&s, &t).unwrap();
        let fail = games_ok(&s, &t).or_else(|| compatible_counts_everywhere(&s, &t, &at)).or_else(|| {
            let r = check_theorem(&s, &t, &at).unwrap();
            (live && !r.passes()).then(|| format!("theorem fails: {:?}", r.failures()))
        });
        if let Some(f) = fail {
            out.failures.push(format!("attempt {}: {}", attempts, f));
        }
        if live {
            out.live += 1;
        } else {
            out.deadlocked += 1;
        }
    }
    out
}
