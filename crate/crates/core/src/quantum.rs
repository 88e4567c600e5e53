//! Superposition evolution, measure-many observation, and runners.
//!
//! One evolution step sends every term through all transitions matching its
//! (state, symbol under head, queue front/rear) key; amplitudes landing on the
//! same successor configuration interfere by summation. After every step the
//! superposition is projected: mass on accepting/rejecting states moves into
//! the cumulative probabilities, the non-halting residual continues without
//! renormalization. Terms with no matching transition contribute nothing —
//! their mass leaks, which is how ill-formed partial machines show up
//! operationally.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::config::{render_queue, Config, Superposition, Tape, TapeSym};
use crate::machine::{Dir, QKey, QuantumMachine, StateId};
use crate::queue::QueueWord;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RunError {
    /// `run_rt` was handed a machine without the real-time restriction.
    NotRealtime,
    InputNotInAlphabet(char),
    /// A term was asked to read past the right end-marker or move left of the
    /// left end-marker.
    HeadFault { state: String, head: usize, dir: Dir },
}

impl fmt::Display for RunError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RunError::NotRealtime => f.write_str("machine is not real-time"),
            RunError::InputNotInAlphabet(c) => {
                write!(f, "input symbol `{c}` not in the machine alphabet")
            }
            RunError::HeadFault { state, head, dir } => {
                write!(f, "head fault in state `{state}` at cell {head} moving {}", dir.letter())
            }
        }
    }
}

/// Applies the evolution operator once. Every term must sit on a tape cell;
/// moving left from cell 0 is a run fault. Sub-threshold terms are pruned
/// after summation.
pub fn evolve_step(
    psi: &Superposition,
    m: &QuantumMachine,
    tape: &Tape,
) -> Result<Superposition, RunError> {
    let mut out = Superposition::new();
    for (cfg, &amp) in &psi.terms {
        let sym = tape.get(cfg.head).ok_or_else(|| RunError::HeadFault {
            state: m.state_name(cfg.state).into(),
            head: cfg.head,
            dir: Dir::Right,
        })?;
        let key = QKey { state: cfg.state, sym, fr: cfg.queue.front_rear() };
        let Some(entries) = m.transitions(&key) else {
            continue; // unspecified key: the term's mass leaks
        };
        for t in entries {
            let head = match t.dir {
                Dir::Stay => cfg.head,
                Dir::Right => cfg.head + 1,
                Dir::Left => cfg.head.checked_sub(1).ok_or_else(|| RunError::HeadFault {
                    state: m.state_name(cfg.state).into(),
                    head: cfg.head,
                    dir: Dir::Left,
                })?,
            };
            let queue = cfg.queue.applied(t.op, t.enqueue);
            out.add(Config { state: t.target, head, queue }, amp * t.amp.value);
        }
    }
    out.prune();
    Ok(out)
}

/// Projects a superposition onto the accept/reject/non-halting subspaces.
/// Returns the observation probabilities gained and the unrenormalized
/// residual. In strict mode, accepting terms with a nonempty queue count as
/// rejecting instead.
pub fn measure(
    psi: Superposition,
    m: &QuantumMachine,
    strict_empty_queue: bool,
) -> (f64, f64, Superposition) {
    let mut p_acc = 0.0;
    let mut p_rej = 0.0;
    let mut residual = Superposition::new();
    for (cfg, amp) in psi.terms {
        if m.is_accept(cfg.state) {
            if strict_empty_queue && !cfg.queue.is_empty() {
                p_rej += amp.norm_sqr();
            } else {
                p_acc += amp.norm_sqr();
            }
        } else if m.is_reject(cfg.state) {
            p_rej += amp.norm_sqr();
        } else {
            residual.terms.insert(cfg, amp);
        }
    }
    (p_acc, p_rej, residual)
}

/// One post-measurement snapshot in a run trace.
#[derive(Clone, Debug, PartialEq)]
pub struct StepRecord {
    pub step: usize,
    pub symbol: TapeSym,
    /// Residual terms in canonical configuration order.
    pub terms: Vec<TraceTerm>,
    pub cum_acc: f64,
    pub cum_rej: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TraceTerm {
    pub state: StateId,
    pub head: usize,
    pub queue: QueueWord,
    pub re: f64,
    pub im: f64,
}

impl StepRecord {
    /// Squared norm of the residual snapshot.
    pub fn residual_norm_sqr(&self) -> f64 {
        self.terms.iter().map(|t| t.re * t.re + t.im * t.im).sum()
    }
}

/// Outcome of a run. `p_nonhalt` is everything that never halted, including
/// mass that leaked through unspecified keys; `leaked` isolates the leak.
#[derive(Clone, Debug, PartialEq)]
pub struct RunResult {
    pub p_accept: f64,
    pub p_reject: f64,
    pub p_nonhalt: f64,
    /// Norm deficit: non-halting mass not present in any surviving term.
    pub leaked: f64,
    pub steps: usize,
    pub trace: Option<Vec<StepRecord>>,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct RunOpts {
    pub trace: bool,
    pub strict_empty_queue: bool,
}

fn snapshot(psi: &Superposition) -> Vec<TraceTerm> {
    psi.terms
        .iter()
        .map(|(c, a)| TraceTerm {
            state: c.state,
            head: c.head,
            queue: c.queue.clone(),
            re: a.re,
            im: a.im,
        })
        .collect()
}

fn finish(
    p_acc: f64,
    p_rej: f64,
    residual_norm_sqr: f64,
    steps: usize,
    trace: Option<Vec<StepRecord>>,
) -> RunResult {
    let p_nonhalt = (1.0 - p_acc - p_rej).max(0.0);
    let leaked = (p_nonhalt - residual_norm_sqr).max(0.0);
    RunResult { p_accept: p_acc, p_reject: p_rej, p_nonhalt, leaked, steps, trace }
}

/// Real-time run over `#x$`: one evolution step followed by one observation
/// per tape cell, exactly `|x| + 2` steps. Whatever has not halted after the
/// `$` step is non-halting mass.
pub fn run_rt(m: &QuantumMachine, x: &str, opts: RunOpts) -> Result<RunResult, RunError> {
    if !m.realtime {
        return Err(RunError::NotRealtime);
    }
    let tape = Tape::enclose(m, x).map_err(RunError::InputNotInAlphabet)?;
    let mut psi = Superposition::unit(Config::initial(m));
    let mut p_acc = 0.0;
    let mut p_rej = 0.0;
    let mut trace = opts.trace.then(Vec::new);
    for step in 0..tape.len() {
        psi = evolve_step(&psi, m, &tape)?;
        let (da, dr, residual) = measure(psi, m, opts.strict_empty_queue);
        p_acc += da;
        p_rej += dr;
        psi = residual;
        if let Some(t) = trace.as_mut() {
            t.push(StepRecord {
                step,
                symbol: tape.0[step],
                terms: snapshot(&psi),
                cum_acc: p_acc,
                cum_rej: p_rej,
            });
        }
    }
    Ok(finish(p_acc, p_rej, psi.norm_sqr(), tape.len(), trace))
}

/// General run: terms read their own head cells and may move in any
/// direction. Stops once the halting mass reaches `1 - 1e-9`, every surviving
/// term has run off the right end of the tape, or `max_steps` evolution steps
/// have been taken; the remainder is non-halting.
pub fn run_general(
    m: &QuantumMachine,
    x: &str,
    max_steps: usize,
    opts: RunOpts,
) -> Result<RunResult, RunError> {
    let tape = Tape::enclose(m, x).map_err(RunError::InputNotInAlphabet)?;
    let mut psi = Superposition::unit(Config::initial(m));
    let mut stuck = Superposition::new(); // ran past `$`; can never halt
    let mut p_acc = 0.0;
    let mut p_rej = 0.0;
    let mut trace = opts.trace.then(Vec::new);
    let mut steps = 0usize;
    while steps < max_steps && !psi.is_empty() && p_acc + p_rej < 1.0 - 1e-9 {
        // freeze terms that have no cell left to read
        let (active, off_end): (Vec<_>, Vec<_>) = psi
            .terms
            .iter()
            .map(|(c, a)| (c.clone(), *a))
            .partition(|(c, _)| c.head < tape.len());
        for (c, a) in off_end {
            stuck.add(c, a);
        }
        if active.is_empty() {
            break;
        }
        psi = Superposition { terms: active.into_iter().collect() };
        let sym = tape.0[psi.terms.keys().next().expect("nonempty").head.min(tape.len() - 1)];
        psi = evolve_step(&psi, m, &tape)?;
        let (da, dr, residual) = measure(psi, m, opts.strict_empty_queue);
        p_acc += da;
        p_rej += dr;
        psi = residual;
        steps += 1;
        if let Some(t) = trace.as_mut() {
            t.push(StepRecord {
                step: steps - 1,
                symbol: sym,
                terms: snapshot(&psi),
                cum_acc: p_acc,
                cum_rej: p_rej,
            });
        }
    }
    let residual_norm = psi.norm_sqr() + stuck.norm_sqr();
    Ok(finish(p_acc, p_rej, residual_norm, steps, trace))
}

/// Renders a captured trace as line-oriented, byte-deterministic text: one
/// header line per step, one line per residual term, numbers with 17 digits
/// after the point, queues printed front to rear.
pub fn emit_trace(result: &RunResult, m: &QuantumMachine) -> String {
    let mut out = String::new();
    let Some(trace) = &result.trace else {
        return out;
    };
    for rec in trace {
        out.push_str(&format!(
            "step {} sym {} p_acc {:.17} p_rej {:.17}\n",
            rec.step, rec.symbol, rec.cum_acc, rec.cum_rej
        ));
        for t in &rec.terms {
            out.push_str(&format!(
                "{} {} {} {:.17} {:.17}\n",
                m.state_name(t.state),
                t.head,
                render_queue(m, &QueueWord(t.queue.0.clone())),
                t.re,
                t.im
            ));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::amp::Amp;
    use crate::machine::{Completion, Dir};
    use crate::queue::QOp;
    use crate::PROB_TOL;
    use num_complex::Complex64;

    fn approx(a: f64, b: f64, tol: f64) -> bool {
        crate::abs(a - b) <= tol
    }

    #[test]
    fn first_split_of_the_union_machine() {
        // reading `b` with an empty queue splits evenly into two paths
        let m = crate::zoo::build_ml3(crate::zoo::Variant::Corrected);
        let tape = Tape::enclose(&m, "bcb").unwrap();
        let psi = Superposition::unit(Config {
            state: m.state_id("q0").unwrap(),
            head: 1,
            queue: QueueWord::empty(),
        });
        let next = evolve_step(&psi, &m, &tape).unwrap();
        assert_eq!(next.len(), 2);
        let r = 0.7071067811865476;
        for (cfg, amp) in &next.terms {
            assert_eq!(cfg.head, 2);
            assert!(approx(amp.re, r, 1e-15) && amp.im == 0.0);
            let name = m.state_name(cfg.state);
            assert!(name == "q1" || name == "q2");
        }
    }

    #[test]
    fn unmatched_terms_leak() {
        let m = crate::zoo::build_ml3(crate::zoo::Variant::Table);
        let tape = Tape::enclose(&m, "bcb").unwrap();
        // q1 on `c` with an empty queue has no row in the table variant
        let psi = Superposition::unit(Config {
            state: m.state_id("q1").unwrap(),
            head: 2,
            queue: QueueWord::empty(),
        });
        let next = evolve_step(&psi, &m, &tape).unwrap();
        assert!(next.is_empty());
    }

    #[test]
    fn destructive_interference_prunes() {
        let mut b = crate::machine::QuantumMachine::builder("cancel");
        b.states(["p", "q", "t"]).inputs(['a']).start("p").realtime(true);
        b.row("p", TapeSym::In('a'), None, "t", None, Dir::Right, QOp::Enqueue, Amp::inv_sqrt(2));
        let mut neg = Amp::inv_sqrt(2);
        neg.value = -neg.value;
        neg.source = Some("-1/sqrt(2)".into());
        b.row("q", TapeSym::In('a'), None, "t", None, Dir::Right, QOp::Enqueue, neg);
        let m = b.build().unwrap();
        let tape = Tape::enclose(&m, "a").unwrap();
        let mut psi = Superposition::new();
        let r = Complex64::new(0.7071067811865476, 0.0);
        psi.add(Config { state: m.state_id("p").unwrap(), head: 1, queue: QueueWord::empty() }, r);
        psi.add(Config { state: m.state_id("q").unwrap(), head: 1, queue: QueueWord::empty() }, r);
        let next = evolve_step(&psi, &m, &tape).unwrap();
        assert!(next.is_empty());
    }

    #[test]
    fn measure_is_born_rule() {
        let m = crate::zoo::build_ml3(crate::zoo::Variant::Corrected);
        let r = Complex64::new(0.7071067811865476, 0.0);
        let mut psi = Superposition::new();
        psi.add(
            Config { state: m.state_id("qrej1").unwrap(), head: 3, queue: QueueWord::empty() },
            r,
        );
        psi.add(
            Config { state: m.state_id("q3").unwrap(), head: 3, queue: QueueWord::empty() },
            r,
        );
        let (pa, pr, residual) = measure(psi, &m, false);
        assert_eq!(pa, 0.0);
        assert!(approx(pr, 0.5, 1e-12));
        assert!(approx(residual.norm_sqr(), 0.5, 1e-12));

        // all non-halting: identity
        let mut psi = Superposition::new();
        psi.add(
            Config { state: m.state_id("q3").unwrap(), head: 3, queue: QueueWord::empty() },
            Complex64::new(1.0, 0.0),
        );
        let (pa, pr, residual) = measure(psi.clone(), &m, false);
        assert_eq!((pa, pr), (0.0, 0.0));
        assert_eq!(residual, psi);
    }

    #[test]
    fn run_rt_requires_realtime() {
        let mut b = crate::machine::QuantumMachine::builder("gen");
        b.states(["q0"]).inputs(['a']).start("q0").realtime(false);
        b.row("q0", TapeSym::In('a'), None, "q0", None, Dir::Stay, QOp::Enqueue, Amp::one());
        let m = b.build().unwrap();
        assert_eq!(run_rt(&m, "a", RunOpts::default()), Err(RunError::NotRealtime));
    }

    #[test]
    fn empty_input_takes_two_steps() {
        let m = crate::zoo::build_ml3(crate::zoo::Variant::Corrected);
        let r = run_rt(&m, "", RunOpts { trace: true, strict_empty_queue: false }).unwrap();
        assert_eq!(r.steps, 2);
        assert_eq!(r.trace.as_ref().unwrap().len(), 2);
        assert!(approx(r.p_reject, 1.0, PROB_TOL));
    }

    #[test]
    fn general_run_matches_rt_on_realtime_machines() {
        let m = crate::zoo::build_ml3(crate::zoo::Variant::Corrected);
        for x in ["bcb", "bacb", "bbcb", "", "bacab", "abc"] {
            let a = run_rt(&m, x, RunOpts::default()).unwrap();
            let b = run_general(&m, x, 1000, RunOpts::default()).unwrap();
            assert!(approx(a.p_accept, b.p_accept, 1e-12), "{x}");
            assert!(approx(a.p_reject, b.p_reject, 1e-12), "{x}");
            assert!(approx(a.p_nonhalt, b.p_nonhalt, 1e-12), "{x}");
        }
    }

    #[test]
    fn stationary_loop_exhausts_budget() {
        let mut b = crate::machine::QuantumMachine::builder("spin");
        b.states(["q0"]).inputs(['a']).start("q0");
        b.row("q0", TapeSym::Hash, None, "q0", None, Dir::Stay, QOp::Enqueue, Amp::one());
        let m = b.build().unwrap();
        let r = run_general(&m, "a", 25, RunOpts::default()).unwrap();
        assert_eq!(r.steps, 25);
        assert_eq!(r.p_accept + r.p_reject, 0.0);
        assert!(approx(r.p_nonhalt, 1.0, 1e-12));
        assert_eq!(r.leaked, 0.0);
    }

    #[test]
    fn left_move_at_cell_zero_faults() {
        let mut b = crate::machine::QuantumMachine::builder("back");
        b.states(["q0"]).inputs(['a']).start("q0");
        b.row("q0", TapeSym::Hash, None, "q0", None, Dir::Left, QOp::Enqueue, Amp::one());
        let m = b.build().unwrap();
        assert!(matches!(
            run_general(&m, "a", 10, RunOpts::default()),
            Err(RunError::HeadFault { dir: Dir::Left, .. })
        ));
    }

    #[test]
    fn strict_mode_reclassifies_nonempty_queue_accepts() {
        let mut b = crate::machine::QuantumMachine::builder("loose");
        b.states(["q0", "ok"]).inputs(['a']).queue_syms(["A"]).start("q0").accept(["ok"]);
        b.realtime(true).completion(Completion::None);
        b.row("q0", TapeSym::Hash, None, "q0", None, Dir::Right, QOp::Enqueue, Amp::one());
        b.row("q0", TapeSym::In('a'), None, "q0", Some("A"), Dir::Right, QOp::Enqueue, Amp::one());
        b.row("q0", TapeSym::Dollar, Some(("A", "A")), "ok", None, Dir::Right, QOp::Enqueue, Amp::one());
        let m = b.build().unwrap();
        let lax = run_rt(&m, "a", RunOpts::default()).unwrap();
        assert!(approx(lax.p_accept, 1.0, 1e-12));
        let strict = run_rt(&m, "a", RunOpts { trace: false, strict_empty_queue: true }).unwrap();
        assert_eq!(strict.p_accept, 0.0);
        assert!(approx(strict.p_reject, 1.0, 1e-12));
    }

    #[test]
    fn traces_are_reproducible() {
        let m = crate::zoo::build_mlxy(crate::zoo::Variant::Corrected);
        let opts = RunOpts { trace: true, strict_empty_queue: false };
        let a = emit_trace(&run_rt(&m, "a0c0a", opts).unwrap(), &m);
        let b = emit_trace(&run_rt(&m, "a0c0a", opts).unwrap(), &m);
        assert_eq!(a, b);
        assert!(!a.is_empty());
    }
}
