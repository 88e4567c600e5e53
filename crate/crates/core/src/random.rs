//! Seeded construction of well-formed machines and superpositions for
//! property testing.
//!
//! The generator emits real-time machines whose rows at every key are the rows
//! of a random unitary over distinct (target, enqueue) tuples, all enqueue
//! operations with a nonempty enqueue symbol. That shape keeps successor
//! configurations of distinct sources distinct (queue lengths grow in
//! lockstep), so per-key orthonormality yields genuine norm preservation on
//! arbitrary superpositions — which is exactly what the property suite pins.

use alloc::string::String;
use alloc::vec::Vec;
use num_complex::Complex64;
use rand_core::RngCore;

use crate::amp::Amp;
use crate::config::{Config, Superposition, Tape};
use crate::machine::{Dir, QuantumMachine};
use crate::queue::{QOp, QSym, QueueWord};

pub use rand_chacha::ChaCha8Rng;
pub use rand_core::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn unit_f64(rng: &mut impl RngCore) -> f64 {
    (rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64
}

fn signed_f64(rng: &mut impl RngCore) -> f64 {
    2.0 * unit_f64(rng) - 1.0
}

fn below(rng: &mut impl RngCore, n: usize) -> usize {
    (rng.next_u64() % n as u64) as usize
}

/// Random n x n unitary via Gram-Schmidt on random complex vectors, with one
/// re-orthogonalization pass.
fn random_unitary(rng: &mut impl RngCore, n: usize) -> Vec<Vec<Complex64>> {
    let mut rows: Vec<Vec<Complex64>> = Vec::with_capacity(n);
    while rows.len() < n {
        let mut v: Vec<Complex64> =
            (0..n).map(|_| Complex64::new(signed_f64(rng), signed_f64(rng))).collect();
        for _ in 0..2 {
            for prev in &rows {
                let proj: Complex64 =
                    prev.iter().zip(&v).map(|(p, x)| p.conj() * x).sum();
                for (x, p) in v.iter_mut().zip(prev) {
                    *x -= proj * p;
                }
            }
        }
        let norm = crate::sqrt(v.iter().map(|x| x.norm_sqr()).sum::<f64>());
        if norm < 1e-6 {
            continue; // degenerate draw
        }
        for x in &mut v {
            *x /= norm;
        }
        rows.push(v);
    }
    rows
}

const INPUT_POOL: [char; 6] = ['a', 'b', 'c', 'd', 'e', 'f'];

/// Builds a real-time machine with `states` states, `queue_syms` queue
/// symbols, and `inputs` input symbols whose rows at every (symbol, front,
/// rear) key are orthonormal by construction. All states are non-halting;
/// every key is specified, so nothing leaks.
pub fn random_wellformed_machine(
    rng: &mut impl RngCore,
    states: usize,
    queue_syms: usize,
    inputs: usize,
) -> QuantumMachine {
    assert!(states >= 1 && queue_syms >= 1 && inputs >= 1 && inputs <= INPUT_POOL.len());
    let state_names: Vec<String> = (0..states).map(|i| alloc::format!("s{i}")).collect();
    let qsym_names: Vec<String> = (0..queue_syms).map(|i| alloc::format!("Z{i}")).collect();
    let mut b = QuantumMachine::builder("random");
    b.states(state_names.iter().map(|s| s.as_str()))
        .inputs(INPUT_POOL[..inputs].iter().copied())
        .queue_syms(qsym_names.iter().map(|s| s.as_str()))
        .start("s0")
        .realtime(true);

    let mut syms = alloc::vec![crate::config::TapeSym::Hash, crate::config::TapeSym::Dollar];
    syms.extend(INPUT_POOL[..inputs].iter().map(|&c| crate::config::TapeSym::In(c)));
    let mut frs: Vec<Option<(usize, usize)>> = alloc::vec![None];
    for x in 0..queue_syms {
        for y in 0..queue_syms {
            frs.push(Some((x, y)));
        }
    }

    for sym in syms {
        for fr in &frs {
            // distinct (target, enqueue) tuples, one per unitary column
            let mut tuples: Vec<(usize, usize)> = Vec::with_capacity(states * queue_syms);
            for q in 0..states {
                for z in 0..queue_syms {
                    tuples.push((q, z));
                }
            }
            for i in (1..tuples.len()).rev() {
                tuples.swap(i, below(rng, i + 1));
            }
            tuples.truncate(states);
            let u = random_unitary(rng, states);
            for (i, row) in u.iter().enumerate() {
                for (j, &amp) in row.iter().enumerate() {
                    let (tq, tz) = tuples[j];
                    b.row(
                        &state_names[i],
                        sym,
                        fr.map(|(x, y)| (qsym_names[x].as_str(), qsym_names[y].as_str())),
                        &state_names[tq],
                        Some(&qsym_names[tz]),
                        Dir::Right,
                        QOp::Enqueue,
                        Amp::new(amp, None),
                    );
                }
            }
        }
    }
    b.build().expect("generated machine is structurally valid")
}

/// Random input string over the machine's alphabet.
pub fn random_input(rng: &mut impl RngCore, m: &QuantumMachine, len: usize) -> String {
    (0..len).map(|_| m.input_alphabet[below(rng, m.input_alphabet.len())]).collect()
}

/// Random normalized superposition of `terms` distinct configurations at one
/// head position of the tape, queues drawn over the machine's queue alphabet.
pub fn random_superposition(
    rng: &mut impl RngCore,
    m: &QuantumMachine,
    tape: &Tape,
    terms: usize,
) -> Superposition {
    let head = below(rng, tape.len());
    let mut psi = Superposition::new();
    let mut guard = 0;
    while psi.len() < terms && guard < terms * 20 {
        guard += 1;
        let state = crate::machine::StateId(below(rng, m.states.len()) as u16);
        let qlen = below(rng, 4);
        let queue: QueueWord =
            (0..qlen).map(|_| QSym(below(rng, m.queue_alphabet.len()) as u16)).collect();
        psi.terms
            .entry(Config { state, head, queue })
            .or_insert(Complex64::new(signed_f64(rng), signed_f64(rng)));
    }
    let norm = psi.norm();
    assert!(norm > 0.0);
    Superposition { terms: psi.terms.into_iter().map(|(c, a)| (c, a / norm)).collect() }
}
