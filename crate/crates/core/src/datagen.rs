//! Instance generators: fixed interest/availability patterns, grouped
//! scenarios built from them, seeded uniform instances and the three small
//! counterexample tables.

use std::fmt;
use std::str::FromStr;

use rand::RngCore;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::model::{Instance, Matrix};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Descending,
    Ascending,
}

/// Power-law interest pattern: `1, 1/2, 1/4, …` (descending) or its reverse.
pub fn pattern_interest<T: Scalar>(direction: Direction, n: usize) -> Result<Vec<T>> {
    if n == 0 {
        return Err(Error::Argument("interest pattern needs at least one talk".into()));
    }
    let mut values: Vec<T> = (0..n).map(|i| T::lit(0.5f64.powi(i as i32))).collect();
    if direction == Direction::Ascending {
        values.reverse();
    }
    Ok(values)
}

/// Longest availability pattern: a quarter cosine period sampled every π/30.
pub const MAX_PATTERN_SLOTS: usize = 15;

/// Cosine availability pattern: `cos(j·π/30)` for `j = 0..l` (descending) or its reverse.
pub fn pattern_availability<T: Scalar>(direction: Direction, l: usize) -> Result<Vec<T>> {
    if l == 0 {
        return Err(Error::Argument("availability pattern needs at least one slot".into()));
    }
    if l > MAX_PATTERN_SLOTS {
        return Err(Error::Argument(format!(
            "availability pattern is defined for at most {MAX_PATTERN_SLOTS} slots, got {l}"
        )));
    }
    let mut values: Vec<T> = (0..l)
        .map(|j| T::lit((j as f64 * std::f64::consts::PI / 30.0).cos()))
        .collect();
    if direction == Direction::Ascending {
        values.reverse();
    }
    Ok(values)
}

/// Uniform `[0, 1)` sample from the top 53 bits of a ChaCha8 word.
fn unit_f64(rng: &mut ChaCha8Rng) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Uniform random instance. The stream is ChaCha8 seeded with `seed`
/// (`SeedableRng::seed_from_u64`); interest entries are drawn first in
/// row-major order, then availability entries.
pub fn gen_uniform<T: Scalar>(m: usize, n: usize, l: usize, seed: u64) -> Result<Instance<T>> {
    if m == 0 || n == 0 || l == 0 {
        return Err(Error::Argument("m, n and l must all be positive".into()));
    }
    if n > l {
        return Err(Error::Argument(format!("{n} talks cannot fit into {l} slots")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let interest = Matrix::from_fn(m, n, |_, _| T::lit(unit_f64(&mut rng)));
    let availability = Matrix::from_fn(m, l, |_, _| T::lit(unit_f64(&mut rng)));
    Instance::new(interest, availability)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GroupMode {
    /// Every participant gets the descending pattern.
    Identical,
    /// The first group gets the descending pattern, the second the ascending one.
    Segregated,
}

/// Two participant groups that differ in either interests or availability.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GroupScenario {
    pub participants: usize,
    pub talks: usize,
    pub slots: usize,
    /// Participants `0..split` form the first group.
    pub split: usize,
    pub interest_mode: GroupMode,
    pub availability_mode: GroupMode,
}

impl GroupScenario {
    pub const DEFAULT_SIZES: (usize, usize, usize) = (10, 10, 15);

    /// Identical interests, availability split between the groups.
    pub fn segregated_availability(split: usize) -> Self {
        let (participants, talks, slots) = Self::DEFAULT_SIZES;
        Self {
            participants,
            talks,
            slots,
            split,
            interest_mode: GroupMode::Identical,
            availability_mode: GroupMode::Segregated,
        }
    }

    /// Identical availability, interests split between the groups.
    pub fn segregated_interest(split: usize) -> Self {
        Self {
            interest_mode: GroupMode::Segregated,
            availability_mode: GroupMode::Identical,
            ..Self::segregated_availability(split)
        }
    }

    pub fn with_sizes(mut self, participants: usize, talks: usize, slots: usize) -> Self {
        self.participants = participants;
        self.talks = talks;
        self.slots = slots;
        self
    }

    pub fn check(&self) -> Result<()> {
        if self.split == 0 || self.split >= self.participants {
            return Err(Error::Argument(format!(
                "split must lie strictly between 0 and {}, got {}",
                self.participants, self.split
            )));
        }
        if (self.interest_mode == GroupMode::Segregated)
            == (self.availability_mode == GroupMode::Segregated)
        {
            return Err(Error::Argument(
                "exactly one of interest and availability must be segregated".into(),
            ));
        }
        if self.talks > self.slots {
            return Err(Error::Argument(format!(
                "{} talks cannot fit into {} slots",
                self.talks, self.slots
            )));
        }
        Ok(())
    }
}

pub fn gen_grouped<T: Scalar>(scenario: &GroupScenario) -> Result<Instance<T>> {
    scenario.check()?;
    let v1 = pattern_interest::<T>(Direction::Descending, scenario.talks)?;
    let v2 = pattern_interest::<T>(Direction::Ascending, scenario.talks)?;
    let a1 = pattern_availability::<T>(Direction::Descending, scenario.slots)?;
    let a2 = pattern_availability::<T>(Direction::Ascending, scenario.slots)?;
    let pick = |mode: GroupMode, p: usize, first: &Vec<T>, second: &Vec<T>| {
        if mode == GroupMode::Segregated && p >= scenario.split {
            second.clone()
        } else {
            first.clone()
        }
    };
    let interest: Vec<Vec<T>> = (0..scenario.participants)
        .map(|p| pick(scenario.interest_mode, p, &v1, &v2))
        .collect();
    let availability: Vec<Vec<T>> = (0..scenario.participants)
        .map(|p| pick(scenario.availability_mode, p, &a1, &a2))
        .collect();
    Instance::from_rows(&interest, &availability)
}

/// The three small counterexamples.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Builtin {
    Table1,
    Table2,
    Table3,
}

impl FromStr for Builtin {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "table1" => Ok(Builtin::Table1),
            "table2" => Ok(Builtin::Table2),
            "table3" => Ok(Builtin::Table3),
            other => Err(Error::Argument(format!("unknown builtin instance '{other}'"))),
        }
    }
}

pub fn builtin<T: Scalar>(which: Builtin) -> Instance<T> {
    let rows = |m: &[&[f64]]| -> Vec<Vec<T>> {
        m.iter().map(|r| r.iter().map(|&x| T::lit(x)).collect()).collect()
    };
    let (v, a) = match which {
        Builtin::Table1 => (
            rows(&[&[1.0], &[1.0]]),
            rows(&[&[1.0, 0.49, 0.0], &[0.0, 0.49, 1.0]]),
        ),
        Builtin::Table2 => (rows(&[&[1.0, 0.5]]), rows(&[&[1.0, 0.75, 0.8]])),
        Builtin::Table3 => (
            rows(&[&[1.0, 0.7], &[1.0, 0.7]]),
            rows(&[&[1.0, 1.0, 0.0, 0.2], &[1.0, 0.0, 1.0, 0.2]]),
        ),
    };
    Instance::from_rows(&v, &a).expect("builtin tables are well formed")
}

/// Named generator recipes, as accepted on the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Pattern {
    Uniform,
    SegAvailBalanced,
    SegAvailImbalanced,
    SegInterestBalanced,
    SegInterestImbalanced,
    Builtin(Builtin),
}

impl Pattern {
    pub const NAMES: [&'static str; 8] = [
        "uniform",
        "seg-avail-balanced",
        "seg-avail-imbalanced",
        "seg-interest-balanced",
        "seg-interest-imbalanced",
        "table1",
        "table2",
        "table3",
    ];
}

impl FromStr for Pattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "uniform" => Pattern::Uniform,
            "seg-avail-balanced" => Pattern::SegAvailBalanced,
            "seg-avail-imbalanced" => Pattern::SegAvailImbalanced,
            "seg-interest-balanced" => Pattern::SegInterestBalanced,
            "seg-interest-imbalanced" => Pattern::SegInterestImbalanced,
            other => Pattern::Builtin(other.parse().map_err(|_| {
                Error::Argument(format!(
                    "unknown pattern '{other}', expected one of {}",
                    Pattern::NAMES.join(", ")
                ))
            })?),
        })
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Pattern::Uniform => "uniform",
            Pattern::SegAvailBalanced => "seg-avail-balanced",
            Pattern::SegAvailImbalanced => "seg-avail-imbalanced",
            Pattern::SegInterestBalanced => "seg-interest-balanced",
            Pattern::SegInterestImbalanced => "seg-interest-imbalanced",
            Pattern::Builtin(Builtin::Table1) => "table1",
            Pattern::Builtin(Builtin::Table2) => "table2",
            Pattern::Builtin(Builtin::Table3) => "table3",
        };
        f.write_str(name)
    }
}

/// Sizes for [`generate`]; `None` falls back to the recipe's defaults.
#[derive(Clone, Copy, Debug, Default)]
pub struct GenParams {
    pub m: Option<usize>,
    pub n: Option<usize>,
    pub l: Option<usize>,
    pub seed: Option<u64>,
}

pub const DEFAULT_SEED: u64 = 42;

/// Balanced scenarios split the participants in half; imbalanced ones put
/// 70% of them in the first group (7 of 10 by default).
pub fn generate<T: Scalar>(pattern: Pattern, params: GenParams) -> Result<Instance<T>> {
    let grouped = |base: GroupScenario, imbalanced: bool| {
        let (dm, dn, dl) = GroupScenario::DEFAULT_SIZES;
        let m = params.m.unwrap_or(dm);
        let split = if imbalanced { (7 * m + 5) / 10 } else { m / 2 };
        let scenario = GroupScenario {
            split,
            ..base.with_sizes(m, params.n.unwrap_or(dn), params.l.unwrap_or(dl))
        };
        gen_grouped(&scenario)
    };
    match pattern {
        Pattern::Uniform => gen_uniform(
            params.m.unwrap_or(10),
            params.n.unwrap_or(10),
            params.l.unwrap_or(10),
            params.seed.unwrap_or(DEFAULT_SEED),
        ),
        Pattern::SegAvailBalanced => grouped(GroupScenario::segregated_availability(5), false),
        Pattern::SegAvailImbalanced => grouped(GroupScenario::segregated_availability(7), true),
        Pattern::SegInterestBalanced => grouped(GroupScenario::segregated_interest(5), false),
        Pattern::SegInterestImbalanced => grouped(GroupScenario::segregated_interest(7), true),
        Pattern::Builtin(b) => Ok(builtin(b)),
    }
}
