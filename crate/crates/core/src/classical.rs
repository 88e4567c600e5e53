//! Execution and validation of classical queue automata.
//!
//! Deterministic runs apply the unique applicable rule (empty-move rules take
//! precedence; a valid deterministic table never offers both). Acceptance is by
//! final state once the input is consumed and no empty move applies; a run that
//! halts with input left over rejects. Nondeterministic acceptance is decided
//! by breadth-first search over configurations.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::machine::{CAction, CIn, CKey, ClassicalMachine, Flavor, StateId};
use crate::queue::QueueWord;

/// A classical configuration: control state, how much input has been read, and
/// the queue content.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct ClassicalConfig {
    pub state: StateId,
    pub consumed: usize,
    pub queue: QueueWord,
}

impl ClassicalConfig {
    pub fn initial(m: &ClassicalMachine) -> Self {
        ClassicalConfig { state: m.start, consumed: 0, queue: QueueWord::empty() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClassicalError {
    /// A deterministic-only operation was handed a nondeterministic machine.
    Nondeterministic,
    /// The empty-move budget ran out before the run halted.
    LambdaBudgetExhausted { used: usize },
    /// A real-time search was requested on a machine with empty-move rules.
    RealtimeLambdaRule,
    /// The bounded nondeterministic search hit its step cap inconclusively.
    SearchCapExceeded { cap: usize },
    /// An input character is not in the machine's alphabet.
    InputNotInAlphabet(char),
}

impl fmt::Display for ClassicalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassicalError::Nondeterministic => {
                f.write_str("operation requires a deterministic machine")
            }
            ClassicalError::LambdaBudgetExhausted { used } => {
                write!(f, "empty-move budget exhausted after {used} steps")
            }
            ClassicalError::RealtimeLambdaRule => {
                f.write_str("real-time search on a machine with empty-move rules")
            }
            ClassicalError::SearchCapExceeded { cap } => {
                write!(f, "search inconclusive: step cap {cap} reached")
            }
            ClassicalError::InputNotInAlphabet(c) => {
                write!(f, "input symbol `{c}` not in the machine alphabet")
            }
        }
    }
}

/// Outcome of one deterministic step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StepOutcome {
    /// The applicable rule fired; the label records whether it consumed input.
    Next(ClassicalConfig, CIn),
    /// No rule applies.
    Halt,
}

/// Applies the unique applicable transition to `c`: the empty-move rule for
/// (state, front, rear) if one exists, else the rule for the next unread
/// symbol. `Keep` appends the enqueue symbol, `Remove` drops the front first.
pub fn dqa_step(
    c: &ClassicalConfig,
    m: &ClassicalMachine,
    input: &[char],
) -> Result<StepOutcome, ClassicalError> {
    if m.flavor != Flavor::Deterministic {
        return Err(ClassicalError::Nondeterministic);
    }
    let fr = c.queue.front_rear();
    let lambda_key = CKey { state: c.state, input: CIn::Lambda, fr };
    if let Some([t]) = m.transitions(&lambda_key) {
        return Ok(StepOutcome::Next(apply(c, t, false), CIn::Lambda));
    }
    if let Some(&sym) = input.get(c.consumed) {
        let key = CKey { state: c.state, input: CIn::Sym(sym), fr };
        if let Some([t]) = m.transitions(&key) {
            return Ok(StepOutcome::Next(apply(c, t, true), CIn::Sym(sym)));
        }
    }
    Ok(StepOutcome::Halt)
}

fn apply(c: &ClassicalConfig, t: &crate::machine::CTrans, consumes: bool) -> ClassicalConfig {
    let mut queue = c.queue.clone();
    if t.action == CAction::Remove && !queue.is_empty() {
        queue.0.remove(0);
    }
    if let Some(z) = t.enqueue {
        queue.0.push(z);
    }
    ClassicalConfig {
        state: t.target,
        consumed: c.consumed + usize::from(consumes),
        queue,
    }
}

/// Result of a deterministic run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DqaRun {
    pub accepted: bool,
    pub lambda_steps: usize,
    pub final_config: ClassicalConfig,
}

/// Runs the machine until it halts: accepted iff the input was fully consumed
/// and the halting state is final. Exceeding `lambda_budget` empty moves is an
/// error (reported distinctly from rejection).
pub fn dqa_run(
    m: &ClassicalMachine,
    x: &str,
    lambda_budget: usize,
) -> Result<DqaRun, ClassicalError> {
    let input = check_input(m, x)?;
    let mut c = ClassicalConfig::initial(m);
    let mut lambda_steps = 0usize;
    loop {
        match dqa_step(&c, m, &input)? {
            StepOutcome::Halt => {
                let accepted = c.consumed == input.len() && m.is_final(c.state);
                return Ok(DqaRun { accepted, lambda_steps, final_config: c });
            }
            StepOutcome::Next(next, label) => {
                if label == CIn::Lambda {
                    lambda_steps += 1;
                    if lambda_steps > lambda_budget {
                        return Err(ClassicalError::LambdaBudgetExhausted { used: lambda_steps });
                    }
                }
                c = next;
            }
        }
    }
}

fn check_input(m: &ClassicalMachine, x: &str) -> Result<Vec<char>, ClassicalError> {
    let input: Vec<char> = x.chars().collect();
    for &c in &input {
        if !m.input_alphabet.contains(&c) {
            return Err(ClassicalError::InputNotInAlphabet(c));
        }
    }
    Ok(input)
}

/// Default step cap for the non-real-time nondeterministic search.
pub fn default_search_cap(input_len: usize) -> usize {
    10 * (input_len + 1)
}

/// Breadth-first acceptance for (non)deterministic machines.
///
/// Real-time mode takes exactly `|x|` steps, one input symbol per step, and
/// rejects machines carrying empty-move rules. Otherwise the search interleaves
/// empty moves and is capped at `cap` levels (default
/// [`default_search_cap`]); hitting the cap with live branches and no accepting
/// halt is reported as inconclusive. A path accepts iff it halts — no rule
/// applicable — with the input consumed, in a final state.
pub fn ndqa_accepts(
    m: &ClassicalMachine,
    x: &str,
    realtime: bool,
    cap: Option<usize>,
) -> Result<bool, ClassicalError> {
    let input = check_input(m, x)?;
    if realtime {
        if !m.lambda_keys().is_empty() {
            return Err(ClassicalError::RealtimeLambdaRule);
        }
        let mut frontier: BTreeSet<(StateId, QueueWord)> =
            [(m.start, QueueWord::empty())].into_iter().collect();
        for &sym in &input {
            let mut next = BTreeSet::new();
            for (state, queue) in &frontier {
                let key = CKey { state: *state, input: CIn::Sym(sym), fr: queue.front_rear() };
                for t in m.transitions(&key).unwrap_or(&[]) {
                    let c = apply(
                        &ClassicalConfig { state: *state, consumed: 0, queue: queue.clone() },
                        t,
                        false,
                    );
                    next.insert((c.state, c.queue));
                }
            }
            frontier = next;
            if frontier.is_empty() {
                return Ok(false);
            }
        }
        return Ok(frontier.iter().any(|(s, _)| m.is_final(*s)));
    }

    let cap = cap.unwrap_or_else(|| default_search_cap(input.len()));
    let mut visited: BTreeSet<ClassicalConfig> = BTreeSet::new();
    let mut frontier: Vec<ClassicalConfig> = Vec::new();
    let start = ClassicalConfig::initial(m);
    visited.insert(start.clone());
    frontier.push(start);
    for _level in 0..=cap {
        let mut next = Vec::new();
        for c in &frontier {
            let succs = successors(m, c, &input);
            if succs.is_empty() {
                if c.consumed == input.len() && m.is_final(c.state) {
                    return Ok(true);
                }
                continue;
            }
            for s in succs {
                if visited.insert(s.clone()) {
                    next.push(s);
                }
            }
        }
        if next.is_empty() {
            return Ok(false);
        }
        frontier = next;
    }
    Err(ClassicalError::SearchCapExceeded { cap })
}

fn successors(
    m: &ClassicalMachine,
    c: &ClassicalConfig,
    input: &[char],
) -> Vec<ClassicalConfig> {
    let fr = c.queue.front_rear();
    let mut out = Vec::new();
    let lambda_key = CKey { state: c.state, input: CIn::Lambda, fr };
    for t in m.transitions(&lambda_key).unwrap_or(&[]) {
        out.push(apply(c, t, false));
    }
    if let Some(&sym) = input.get(c.consumed) {
        let key = CKey { state: c.state, input: CIn::Sym(sym), fr };
        for t in m.transitions(&key).unwrap_or(&[]) {
            out.push(apply(c, t, true));
        }
    }
    out
}

/// Static real-time check: passes iff the table carries no empty-move rules.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealtimeReport {
    pub pass: bool,
    /// Offending rules, rendered `state (front, rear)`.
    pub lambda_rules: Vec<String>,
}

pub fn check_realtime(m: &ClassicalMachine) -> RealtimeReport {
    let lambda_rules: Vec<String> = m
        .lambda_keys()
        .iter()
        .map(|k| format!("{} {}", m.state_name(k.state), render_fr(m, k.fr)))
        .collect();
    RealtimeReport { pass: lambda_rules.is_empty(), lambda_rules }
}

pub(crate) fn render_fr(m: &ClassicalMachine, fr: crate::queue::FrontRear) -> String {
    match fr {
        crate::queue::FrontRear::Empty => String::from("(_, _)"),
        crate::queue::FrontRear::Pair(a, b) => {
            format!("({}, {})", m.queue_sym_name(a), m.queue_sym_name(b))
        }
    }
}

/// Empty-move usage over a sample of inputs: the observed maximum, per-length
/// maxima, and a heuristic verdict on whether the count looks constant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LambdaReport {
    pub max: usize,
    /// (input length, max empty moves over inputs of that length)
    pub per_length_max: Vec<(usize, usize)>,
    /// Inputs whose runs exhausted the internal budget.
    pub budget_exhausted: Vec<String>,
    /// False when the per-length maxima keep growing across the sampled tail.
    pub constant_on_sample: bool,
}

/// Runs every input and tallies empty-move counts. A diagnostic, not a proof
/// of quasi-real-time operation.
pub fn count_lambda_steps<'a>(
    m: &ClassicalMachine,
    inputs: impl IntoIterator<Item = &'a str>,
) -> Result<LambdaReport, ClassicalError> {
    let mut max = 0usize;
    let mut per_length: Vec<(usize, usize)> = Vec::new();
    let mut budget_exhausted = Vec::new();
    for x in inputs {
        let budget = 10 * (x.len() + 2) + 100;
        let used = match dqa_run(m, x, budget) {
            Ok(r) => r.lambda_steps,
            Err(ClassicalError::LambdaBudgetExhausted { used }) => {
                budget_exhausted.push(String::from(x));
                used
            }
            Err(e) => return Err(e),
        };
        max = max.max(used);
        match per_length.iter_mut().find(|(l, _)| *l == x.len()) {
            Some((_, m)) => *m = (*m).max(used),
            None => per_length.push((x.len(), used)),
        }
    }
    per_length.sort();
    let growing = per_length
        .windows(3)
        .last()
        .map(|w| w[0].1 < w[1].1 && w[1].1 < w[2].1)
        .unwrap_or(false);
    Ok(LambdaReport {
        max,
        per_length_max: per_length,
        budget_exhausted,
        constant_on_sample: !growing,
    })
}

/// Witness of a backward-determinism violation: two distinct (state, queue)
/// sources reach the same successor under the same label.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReversibilityWitness {
    pub label: CIn,
    pub source_a: (StateId, QueueWord),
    pub source_b: (StateId, QueueWord),
    pub successor: (StateId, QueueWord),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReversibilityReport {
    pub pass: bool,
    pub witness: Option<ReversibilityWitness>,
    /// Number of distinct step events inspected.
    pub events: usize,
}

impl ReversibilityReport {
    pub fn render(&self, m: &ClassicalMachine) -> String {
        match &self.witness {
            None => format!("reversible on sample ({} events)", self.events),
            Some(w) => format!(
                "backward nondeterminism on `{}`: ({}, {:?}) and ({}, {:?}) both reach ({}, {:?})",
                w.label,
                m.state_name(w.source_a.0),
                w.source_a.1,
                m.state_name(w.source_b.0),
                w.source_b.1,
                m.state_name(w.successor.0),
                w.successor.1,
            ),
        }
    }
}

/// Empirical reversibility: enumerates every step event reachable on any input
/// of length at most `max_len` and checks that the step map is injective per
/// label — no two distinct (state, queue) sources may produce the same
/// successor on the same label. This tests backward functional determinism
/// only; it does not certify that the reverse steps are realizable as queue
/// operations.
pub fn check_reversible_empirical(
    m: &ClassicalMachine,
    max_len: usize,
) -> Result<ReversibilityReport, ClassicalError> {
    if m.flavor != Flavor::Deterministic {
        return Err(ClassicalError::Nondeterministic);
    }
    type Src = (StateId, QueueWord);
    let mut events: BTreeSet<(CIn, Src, Src)> = BTreeSet::new();
    for x in crate::zoo::enumerate_strings(&m.input_alphabet, max_len).expect("guarded max_len") {
        let input: Vec<char> = x.chars().collect();
        let mut c = ClassicalConfig::initial(m);
        let mut lambda_guard = 0usize;
        loop {
            match dqa_step(&c, m, &input)? {
                StepOutcome::Halt => break,
                StepOutcome::Next(next, label) => {
                    if label == CIn::Lambda {
                        lambda_guard += 1;
                        if lambda_guard > 10 * (input.len() + 2) + 100 {
                            break;
                        }
                    }
                    events.insert((
                        label,
                        (c.state, c.queue.clone()),
                        (next.state, next.queue.clone()),
                    ));
                    c = next;
                }
            }
        }
    }
    // group by (label, successor): sources must be unique
    let mut by_target: Vec<(&CIn, &Src, &Src)> = events.iter().map(|(l, s, d)| (l, d, s)).collect();
    by_target.sort();
    for window in by_target.windows(2) {
        let (l1, d1, s1) = window[0];
        let (l2, d2, s2) = window[1];
        if l1 == l2 && d1 == d2 && s1 != s2 {
            return Ok(ReversibilityReport {
                pass: false,
                witness: Some(ReversibilityWitness {
                    label: *l1,
                    source_a: s1.clone(),
                    source_b: s2.clone(),
                    successor: d1.clone(),
                }),
                events: events.len(),
            });
        }
    }
    Ok(ReversibilityReport { pass: true, witness: None, events: events.len() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::machine::{CAction, ClassicalMachine, Flavor};

    /// keep-rule application from the reference real-time machine family
    #[test]
    fn keep_appends_at_rear() {
        let m = crate::zoo::build_rt_rdqa_l1();
        let c = ClassicalConfig {
            state: m.state_id("q1").unwrap(),
            consumed: 2,
            queue: [m.queue_sym_id("A").unwrap()].into_iter().collect(),
        };
        let input: Vec<char> = "baacab".chars().collect();
        match dqa_step(&c, &m, &input).unwrap() {
            StepOutcome::Next(next, label) => {
                assert_eq!(label, CIn::Sym('a'));
                assert_eq!(next.consumed, 3);
                assert_eq!(next.queue.len(), 2);
                assert_eq!(next.state, m.state_id("q1").unwrap());
            }
            StepOutcome::Halt => panic!("rule should apply"),
        }
    }

    #[test]
    fn halt_when_no_rule() {
        let m = crate::zoo::build_rt_rdqa_l1();
        let c = ClassicalConfig {
            state: m.state_id("q3").unwrap(),
            consumed: 0,
            queue: QueueWord::empty(),
        };
        let input: Vec<char> = "a".chars().collect();
        assert_eq!(dqa_step(&c, &m, &input).unwrap(), StepOutcome::Halt);
    }

    #[test]
    fn empty_input_accepted_iff_start_final() {
        let mut b = ClassicalMachine::builder("eps");
        b.states(["q0"]).inputs(['a']).start("q0").finals(["q0"]);
        let m = b.build().unwrap();
        assert!(dqa_run(&m, "", 0).unwrap().accepted);
        assert!(!dqa_run(&m, "a", 0).unwrap().accepted);
    }

    #[test]
    fn lambda_budget_reported_distinctly() {
        let mut b = ClassicalMachine::builder("loop");
        b.states(["q0"]).inputs(['a']).start("q0").finals(["q0"]);
        b.row("q0", CIn::Lambda, None, "q0", None, CAction::Keep);
        let m = b.build().unwrap();
        assert_eq!(
            dqa_run(&m, "", 5),
            Err(ClassicalError::LambdaBudgetExhausted { used: 6 })
        );
    }

    #[test]
    fn realtime_check_static() {
        let m = crate::zoo::build_rt_rdqa_l1();
        assert!(check_realtime(&m).pass);

        let mut b = ClassicalMachine::builder("l");
        b.states(["q0", "q1"]).inputs(['a']).start("q0");
        b.row("q0", CIn::Lambda, None, "q1", None, CAction::Keep);
        let m = b.build().unwrap();
        let r = check_realtime(&m);
        assert!(!r.pass);
        assert_eq!(r.lambda_rules.len(), 1);

        let mut b = ClassicalMachine::builder("empty");
        b.states(["q0"]).inputs(['a']).start("q0");
        assert!(check_realtime(&b.build().unwrap()).pass);
    }

    /// two-empty-move epilogue: the count is 2 on every accepted input
    #[test]
    fn lambda_count_fixed_epilogue() {
        let mut b = ClassicalMachine::builder("epi");
        b.states(["q0", "q1", "q2"]).inputs(['a']).queue_syms(["Z"]).start("q0").finals(["q2"]);
        b.row("q0", CIn::Sym('a'), None, "q0", Some("Z"), CAction::Keep);
        b.row("q0", CIn::Lambda, Some(("Z", "Z")), "q1", None, CAction::Remove);
        b.row("q1", CIn::Lambda, None, "q2", None, CAction::Keep);
        // lambda-determinism: q0 has a lambda rule only for nonempty queues
        let m = b.build().unwrap();
        let inputs = ["a", "aa", "aaa"];
        let r = count_lambda_steps(&m, inputs).unwrap();
        assert_eq!(r.max, 2);
        assert!(r.constant_on_sample);
        assert!(r.budget_exhausted.is_empty());

        let lambda_free = crate::zoo::build_rt_rdqa_l1();
        let r = count_lambda_steps(&lambda_free, ["bacab", "bcb", ""]).unwrap();
        assert_eq!(r.max, 0);
    }

    /// queue length grows with input, and so does the empty-move epilogue
    #[test]
    fn lambda_count_growing_flagged() {
        let mut b = ClassicalMachine::builder("grow");
        b.states(["q0", "q1"]).inputs(['a']).queue_syms(["Z"]).start("q0").finals(["q1"]);
        b.row("q0", CIn::Sym('a'), None, "q0", Some("Z"), CAction::Keep);
        b.row("q0", CIn::Lambda, Some(("Z", "Z")), "q0", None, CAction::Remove);
        let m = b.build().unwrap();
        let inputs = ["a", "aa", "aaa", "aaaa"];
        let r = count_lambda_steps(&m, inputs).unwrap();
        assert_eq!(r.max, 4);
        assert!(!r.constant_on_sample);
    }

    #[test]
    fn reversibility_fails_on_state_merge() {
        let mut b = ClassicalMachine::builder("merge");
        b.states(["m0", "m1", "m2", "m3"]).inputs(['a', 'b', 'c']).start("m0").finals(["m3"]);
        b.row("m0", CIn::Sym('a'), None, "m1", None, CAction::Keep);
        b.row("m0", CIn::Sym('b'), None, "m2", None, CAction::Keep);
        b.row("m1", CIn::Sym('c'), None, "m3", None, CAction::Keep);
        b.row("m2", CIn::Sym('c'), None, "m3", None, CAction::Keep);
        let m = b.build().unwrap();
        let r = check_reversible_empirical(&m, 2).unwrap();
        assert!(!r.pass);
        let w = r.witness.unwrap();
        assert_eq!(w.label, CIn::Sym('c'));
        assert_eq!(w.successor.0, m.state_id("m3").unwrap());
    }

    #[test]
    fn reversibility_passes_identity_machine() {
        let mut b = ClassicalMachine::builder("id");
        b.states(["q0"]).inputs(['a', 'b']).start("q0").finals(["q0"]);
        b.row("q0", CIn::Sym('a'), None, "q0", None, CAction::Keep);
        b.row("q0", CIn::Sym('b'), None, "q0", None, CAction::Keep);
        let m = b.build().unwrap();
        assert!(check_reversible_empirical(&m, 3).unwrap().pass);
    }

    fn branching_toy() -> ClassicalMachine {
        // two-branch guess between a^n b^n and a^n b^2n (n >= 1)
        let mut b = ClassicalMachine::builder("anbn-union");
        b.flavor(Flavor::Nondeterministic);
        b.states(["p0", "pa", "pb", "pf", "qa", "qe", "qo", "qf"])
            .inputs(['a', 'b'])
            .queue_syms(["A", "X", "Y"])
            .start("p0")
            .finals(["pf", "qf"]);
        // branch 1: a^n b^n, first symbol marked X so the pair (front, rear)
        // exposes the singleton
        b.row("p0", CIn::Sym('a'), None, "pa", Some("X"), CAction::Keep);
        b.row("pa", CIn::Sym('a'), Some(("X", "X")), "pa", Some("A"), CAction::Keep);
        b.row("pa", CIn::Sym('a'), Some(("X", "A")), "pa", Some("A"), CAction::Keep);
        b.row("pa", CIn::Sym('b'), Some(("X", "X")), "pf", None, CAction::Remove);
        b.row("pa", CIn::Sym('b'), Some(("X", "A")), "pb", Some("Y"), CAction::Remove);
        b.row("pb", CIn::Sym('b'), Some(("A", "Y")), "pb", None, CAction::Remove);
        b.row("pb", CIn::Lambda, Some(("Y", "Y")), "pf", None, CAction::Remove);
        // branch 2: a^n b^2n, alternating remove/keep on the b's
        b.row("p0", CIn::Sym('a'), None, "qa", Some("A"), CAction::Keep);
        b.row("qa", CIn::Sym('a'), Some(("A", "A")), "qa", Some("A"), CAction::Keep);
        b.row("qa", CIn::Sym('b'), Some(("A", "A")), "qe", Some("Y"), CAction::Remove);
        b.row("qe", CIn::Sym('b'), Some(("A", "Y")), "qo", None, CAction::Keep);
        b.row("qe", CIn::Sym('b'), Some(("Y", "Y")), "qo", None, CAction::Keep);
        b.row("qo", CIn::Sym('b'), Some(("A", "Y")), "qe", None, CAction::Remove);
        b.row("qo", CIn::Lambda, Some(("Y", "Y")), "qf", None, CAction::Remove);
        b.build().unwrap()
    }

    fn in_union(x: &str) -> bool {
        let n = x.chars().take_while(|&c| c == 'a').count();
        if n == 0 || !x.chars().skip(n).all(|c| c == 'b') {
            return false;
        }
        let b = x.len() - n;
        b == n || b == 2 * n
    }

    #[test]
    fn ndqa_branching_toy_agrees_with_oracle() {
        let m = branching_toy();
        assert_eq!(ndqa_accepts(&m, "abb", false, None), Ok(true));
        for x in crate::zoo::enumerate_strings(&['a', 'b'], 7).unwrap() {
            assert_eq!(
                ndqa_accepts(&m, &x, false, None),
                Ok(in_union(&x)),
                "mismatch on {x:?}"
            );
        }
    }

    #[test]
    fn ndqa_realtime_rejects_lambda_rules() {
        let m = branching_toy();
        assert_eq!(
            ndqa_accepts(&m, "ab", true, None),
            Err(ClassicalError::RealtimeLambdaRule)
        );
    }

    #[test]
    fn ndqa_matches_dqa_on_deterministic_machines() {
        let m = crate::zoo::build_rt_rdqa_l1();
        for x in crate::zoo::enumerate_strings(&['a', 'b', 'c'], 6).unwrap() {
            let d = dqa_run(&m, &x, 0).unwrap().accepted;
            assert_eq!(ndqa_accepts(&m, &x, false, None), Ok(d), "mismatch on {x:?}");
            assert_eq!(ndqa_accepts(&m, &x, true, None), Ok(d), "rt mismatch on {x:?}");
        }
    }

    #[test]
    fn search_cap_reported() {
        let mut b = ClassicalMachine::builder("spin");
        b.flavor(Flavor::Nondeterministic);
        b.states(["q0"]).inputs(['a']).queue_syms(["Z"]).start("q0").finals(["q0"]);
        b.row("q0", CIn::Lambda, None, "q0", Some("Z"), CAction::Keep);
        b.row("q0", CIn::Lambda, Some(("Z", "Z")), "q0", Some("Z"), CAction::Keep);
        let m = b.build().unwrap();
        assert!(matches!(
            ndqa_accepts(&m, "", false, Some(50)),
            Err(ClassicalError::SearchCapExceeded { cap: 50 })
        ));
    }
}
