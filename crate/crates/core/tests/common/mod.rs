//! Oracles shared by the integration tests.
#![allow(dead_code)]

use fairconf::datagen::gen_uniform;
use fairconf::{Instance, Schedule};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Every injective map from `n` talks to `l` slots, in lexicographic order.
pub fn all_schedules(n: usize, l: usize) -> Vec<Schedule> {
    fn go(t: usize, n: usize, used: &mut Vec<bool>, cur: &mut Vec<usize>, out: &mut Vec<Schedule>) {
        if t == n {
            out.push(Schedule::new(cur.clone()));
            return;
        }
        for s in 0..used.len() {
            if !used[s] {
                used[s] = true;
                cur.push(s);
                go(t + 1, n, used, cur, out);
                cur.pop();
                used[s] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(0, n, &mut vec![false; l], &mut Vec::new(), &mut out);
    out
}

pub fn random_schedule(n: usize, l: usize, seed: u64) -> Schedule {
    let mut slots: Vec<usize> = (0..l).collect();
    slots.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    slots.truncate(n);
    Schedule::new(slots)
}

/// Seeded uniform instance whose sizes also depend on the seed.
pub fn small_instance(seed: u64, max_n: usize, max_l: usize) -> Instance {
    let n = 1 + (seed as usize * 7) % max_n;
    let l = (n + (seed as usize * 3) % (max_l - n + 1)).max(n);
    let m = 2 + (seed as usize) % 4;
    gen_uniform(m, n, l, seed).unwrap()
}

pub const WEIGHT_GRID: [(f64, f64, f64); 5] = [
    (1.0, 0.0, 0.0),
    (0.0, 1.0, 0.0),
    (0.0, 0.0, 1.0),
    (1.0, 0.5, 0.5),
    (1.0, 1.0, 1.0),
];
