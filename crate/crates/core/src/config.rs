//! Tapes, configurations, and superpositions.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use num_complex::Complex64;

use crate::machine::{QuantumMachine, StateId};
use crate::queue::QueueWord;
use crate::PRUNE_EPS;

/// A tape cell: the left end-marker `#`, an input symbol, or the right
/// end-marker `$`. The variant order fixes the canonical symbol order used for
/// serialization (`#` first, `$` last).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TapeSym {
    Hash,
    In(char),
    Dollar,
}

impl fmt::Display for TapeSym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TapeSym::Hash => f.write_str("#"),
            TapeSym::In(c) => write!(f, "{c}"),
            TapeSym::Dollar => f.write_str("$"),
        }
    }
}

/// The input string enclosed in end-markers: `#x$`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tape(pub Vec<TapeSym>);

impl Tape {
    /// Builds `#x$` from an input string. Every character must be declared in
    /// the machine's input alphabet.
    pub fn enclose(m: &QuantumMachine, x: &str) -> Result<Tape, char> {
        let mut cells = Vec::with_capacity(x.chars().count() + 2);
        cells.push(TapeSym::Hash);
        for c in x.chars() {
            if !m.input_alphabet.contains(&c) {
                return Err(c);
            }
            cells.push(TapeSym::In(c));
        }
        cells.push(TapeSym::Dollar);
        Ok(Tape(cells))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, head: usize) -> Option<TapeSym> {
        self.0.get(head).copied()
    }
}

/// A machine configuration: control state, head position on `#x$`, and queue
/// content. Ordering is (state, head, queue lexicographic) so that iteration
/// over superpositions, traces, and reports is deterministic.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Config {
    pub state: StateId,
    pub head: usize,
    pub queue: QueueWord,
}

impl Config {
    pub fn initial(m: &QuantumMachine) -> Config {
        Config { state: m.start, head: 0, queue: QueueWord::empty() }
    }
}

/// A finite complex-amplitude combination of configurations. Kept in a
/// `BTreeMap` so term order is canonical; terms below [`PRUNE_EPS`] in
/// magnitude are dropped by [`Superposition::prune`].
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Superposition {
    pub terms: BTreeMap<Config, Complex64>,
}

impl Superposition {
    pub fn new() -> Self {
        Superposition { terms: BTreeMap::new() }
    }

    pub fn unit(cfg: Config) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(cfg, Complex64::new(1.0, 0.0));
        Superposition { terms }
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    /// Accumulates `amp` onto the term for `cfg` (amplitudes at identical
    /// configurations interfere by summation).
    pub fn add(&mut self, cfg: Config, amp: Complex64) {
        *self.terms.entry(cfg).or_insert(Complex64::new(0.0, 0.0)) += amp;
    }

    /// Squared 2-norm: the total observation probability carried by the terms.
    pub fn norm_sqr(&self) -> f64 {
        self.terms.values().map(|a| a.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        crate::sqrt(self.norm_sqr())
    }

    /// Drops terms with magnitude below [`PRUNE_EPS`] (cancelled paths).
    pub fn prune(&mut self) {
        self.terms.retain(|_, a| a.norm_sqr() > PRUNE_EPS * PRUNE_EPS);
    }

    /// Inner product `<self|other>`.
    pub fn dot(&self, other: &Superposition) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        let (small, big, conj_small) = if self.len() <= other.len() {
            (self, other, true)
        } else {
            (other, self, false)
        };
        for (cfg, a) in &small.terms {
            if let Some(b) = big.terms.get(cfg) {
                acc += if conj_small { a.conj() * b } else { b.conj() * a };
            }
        }
        acc
    }

    /// Scales every term by `factor`.
    pub fn scaled(&self, factor: Complex64) -> Superposition {
        Superposition { terms: self.terms.iter().map(|(c, a)| (c.clone(), a * factor)).collect() }
    }

    /// Term-wise sum of two superpositions.
    pub fn plus(&self, other: &Superposition) -> Superposition {
        let mut out = self.clone();
        for (c, a) in &other.terms {
            out.add(c.clone(), *a);
        }
        out
    }
}

/// Renders a queue for traces and reports: symbols front-to-rear joined with
/// commas, `_` for the empty queue.
pub fn render_queue(m: &QuantumMachine, q: &QueueWord) -> String {
    if q.is_empty() {
        return String::from("_");
    }
    let names: Vec<&str> = q.0.iter().map(|z| m.queue_sym_name(*z)).collect();
    names.join(",")
}
