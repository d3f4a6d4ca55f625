//! Invariant sweeps over all odd primes (or all `n`) up to a bound.
//!
//! Cases run on a rayon pool but results are collected in input order, so
//! the failure list is deterministic for any job count.

use std::collections::BTreeSet;

use rayon::prelude::*;

use windmill::decomp::{
    enumerate_bruteforce, enumerate_fast, irreducible_count, irreducible_enumerate,
};
use windmill::lattice2d::SlopeClass;
use windmill::numtheory::is_odd_prime;
use windmill::windmill::{fast_solution_for_pair, lattice_color, standard_black_basis};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Mode {
    /// |S_p| = (p+1)/2 by brute force.
    Count,
    /// Fast path equals brute force; mirror slopes agree.
    Oracle,
    /// Degenerate slopes, color flips and standard-basis count.
    Color,
    /// Closed formula equals enumeration of irreducible matrices.
    Irreducible,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Count => "count",
            Mode::Oracle => "oracle",
            Mode::Color => "color",
            Mode::Irreducible => "irreducible",
        }
    }

    /// Largest `--max-p` accepted for the mode.
    pub fn guard(self) -> u64 {
        match self {
            Mode::Count => 100_000,
            Mode::Oracle => 20_000,
            Mode::Color => 5_000,
            Mode::Irreducible => 1_000,
        }
    }

    /// The inputs swept for bound `max`.
    pub fn cases(self, max: u64) -> Vec<u64> {
        match self {
            Mode::Irreducible => (1..=max).collect(),
            _ => (3..=max).filter(|&p| is_odd_prime(p)).collect(),
        }
    }

    fn check(self, n: u64) -> Result<(), String> {
        match self {
            Mode::Count => check_count(n),
            Mode::Oracle => check_oracle(n),
            Mode::Color => check_color(n),
            Mode::Irreducible => check_irreducible(n),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Summary {
    pub cases: usize,
    /// `"<input>: <message>"` in input order.
    pub failures: Vec<String>,
}

pub fn run(mode: Mode, max: u64, jobs: usize) -> Summary {
    let cases = mode.cases(max);
    let check = |&n: &u64| mode.check(n).err().map(|msg| format!("{n}: {msg}"));
    let results: Vec<Option<String>> = if jobs <= 1 {
        cases.iter().map(check).collect()
    } else {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .expect("thread pool")
            .install(|| cases.par_iter().map(check).collect())
    };
    Summary {
        cases: cases.len(),
        failures: results.into_iter().flatten().collect(),
    }
}

fn check_count(p: u64) -> Result<(), String> {
    let n = enumerate_bruteforce(p).map_err(|e| e.to_string())?.len() as u64;
    if n != p.div_ceil(2) {
        return Err(format!("|S_p| = {n}, expected {}", p.div_ceil(2)));
    }
    Ok(())
}

fn check_oracle(p: u64) -> Result<(), String> {
    let fast: BTreeSet<_> = enumerate_fast(p)
        .map_err(|e| e.to_string())?
        .into_iter()
        .collect();
    let brute: BTreeSet<_> = enumerate_bruteforce(p)
        .map_err(|e| e.to_string())?
        .into_iter()
        .collect();
    if let Some(s) = fast.symmetric_difference(&brute).next() {
        return Err(format!("fast and brute-force sets differ at {s}"));
    }
    for mu in 2..=p - 2 {
        let s = SlopeClass::finite(p, mu).map_err(|e| e.to_string())?;
        let here = fast_solution_for_pair(&s).map_err(|e| e.to_string())?;
        let there = fast_solution_for_pair(&s.reflect_vertical()).map_err(|e| e.to_string())?;
        if here != there {
            return Err(format!(
                "{s} gives {}, its mirror gives {}",
                here.1, there.1
            ));
        }
    }
    Ok(())
}

fn check_color(p: u64) -> Result<(), String> {
    let mut standard = 0u64;
    for s in SlopeClass::all(p).map_err(|e| e.to_string())? {
        let color = lattice_color(&s);
        if color.is_none() != s.is_degenerate() {
            return Err(format!(
                "{s}: color {color:?} but degenerate = {}",
                s.is_degenerate()
            ));
        }
        let Some(color) = color else { continue };
        for image in [s.reflect_vertical(), s.reflect_diagonal()] {
            if lattice_color(&image) == Some(color) {
                return Err(format!("{s} and {image} share the color {color}"));
            }
        }
        if standard_black_basis(&s)
            .map_err(|e| e.to_string())?
            .is_some()
        {
            standard += 1;
        }
    }
    if standard != (p - 3) / 2 {
        return Err(format!(
            "{standard} standard bases, expected {}",
            (p - 3) / 2
        ));
    }
    Ok(())
}

fn check_irreducible(n: u64) -> Result<(), String> {
    let formula = irreducible_count(n).map_err(|e| e.to_string())?;
    let listed = irreducible_enumerate(n).map_err(|e| e.to_string())?.len() as u64;
    if formula != listed {
        return Err(format!("formula gives {formula}, enumeration {listed}"));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn job_count_does_not_change_output() {
        for mode in [Mode::Count, Mode::Oracle, Mode::Color, Mode::Irreducible] {
            assert_eq!(run(mode, 60, 1), run(mode, 60, 4));
        }
    }

    #[test]
    fn small_sweeps_pass() {
        assert_eq!(run(Mode::Count, 100, 1).cases, 24);
        assert!(run(Mode::Color, 100, 2).failures.is_empty());
        assert_eq!(run(Mode::Irreducible, 40, 2).cases, 40);
    }
}
