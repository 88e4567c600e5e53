//! Reference languages and built-in machines.
//!
//! The two quantum recognizers ship in two variants each. `Table` transcribes
//! the published transition table verbatim; `Corrected` applies the amplitude
//! and empty-queue-row fixes the accompanying prose requires and completes the
//! table with rejecting sinks. The divergence between the variants is itself
//! asserted by tests — silently repairing the table would hide a real finding.

use alloc::string::String;
use alloc::vec::Vec;

use crate::amp::Amp;
use crate::classical::{check_realtime, ClassicalError};
use crate::config::TapeSym;
use crate::machine::{
    CAction, CIn, CKey, ClassicalMachine, Completion, Dir, Flavor, Machine, QuantumMachine,
};
use crate::queue::QOp;

/// Which reading of a published machine to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variant {
    /// Verbatim transcription of the table.
    Table,
    /// Prose-mandated amplitudes and empty-queue rows, plus sink completion.
    Corrected,
}

/// A named membership oracle.
#[derive(Clone)]
pub struct LanguageOracle {
    pub name: &'static str,
    pub alphabet: &'static [char],
    pub member: fn(&str) -> bool,
    pub description: &'static str,
}

/// Summary bound a corpus sweep is expected to satisfy for an oracle.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CorpusBound {
    /// Acceptance probability 1 on members, 0 on non-members.
    Agreement,
    /// Non-members accepted with probability at most 1/2.
    NonMemberHalf,
    /// Members with both blocks nonempty accepted with probability exactly
    /// 2/3; non-members rejected with probability at least 2/3.
    TwoThirds,
}

/// `b a^n c a^n b`.
pub fn in_l1(x: &str) -> bool {
    let v: Vec<char> = x.chars().collect();
    if v.len() < 3 || v[0] != 'b' || v[v.len() - 1] != 'b' {
        return false;
    }
    let mid = &v[1..v.len() - 1];
    let c_count = mid.iter().filter(|&&c| c == 'c').count();
    if c_count != 1 || mid.iter().any(|&c| c == 'b') {
        return false;
    }
    let cpos = mid.iter().position(|&c| c == 'c').unwrap();
    let before = &mid[..cpos];
    let after = &mid[cpos + 1..];
    before.iter().all(|&c| c == 'a') && after.iter().all(|&c| c == 'a') && before.len() == after.len()
}

/// `b a^n b a^m c a^m b`.
pub fn in_l2(x: &str) -> bool {
    let v: Vec<char> = x.chars().collect();
    if v.len() < 4 || v[0] != 'b' || v[v.len() - 1] != 'b' {
        return false;
    }
    let mid = &v[1..v.len() - 1];
    // mid must be a^n b a^m c a^m
    let n = mid.iter().take_while(|&&c| c == 'a').count();
    if n >= mid.len() || mid[n] != 'b' {
        return false;
    }
    let rest = &mid[n + 1..];
    let m = rest.iter().take_while(|&&c| c == 'a').count();
    if m >= rest.len() || rest[m] != 'c' {
        return false;
    }
    let tail = &rest[m + 1..];
    tail.iter().all(|&c| c == 'a') && tail.len() == m
}

/// `b a^{n_1} b a^{n_2} ... b a^{n_i} c a^{n_i} b` with `i >= 1`.
pub fn in_l3(x: &str) -> bool {
    let v: Vec<char> = x.chars().collect();
    if v.len() < 3 || v[0] != 'b' || v[v.len() - 1] != 'b' {
        return false;
    }
    if v.iter().filter(|&&c| c == 'c').count() != 1 {
        return false;
    }
    let cpos = v.iter().position(|&c| c == 'c').unwrap();
    let before = &v[..cpos];
    let after = &v[cpos + 1..];
    // after `c`: a^k followed by the final b only
    if after.is_empty() || after[after.len() - 1] != 'b' {
        return false;
    }
    let k = after.len() - 1;
    if !after[..k].iter().all(|&c| c == 'a') {
        return false;
    }
    // before `c`: (b a^*)+ whose last a-run has length k
    if before.is_empty() || before[0] != 'b' || before.iter().any(|&c| c == 'c') {
        return false;
    }
    let last_run = before.iter().rev().take_while(|&&c| c == 'a').count();
    last_run == k
}

/// `x y c y x` with `x` over {a, b} and `y` over {0, 1}; the split is unique
/// because the two letter classes are disjoint.
pub fn in_lxy(w: &str) -> bool {
    split_lxy(w).is_some()
}

/// Returns (|x|, |y|) when `w = xycyx`.
pub fn split_lxy(w: &str) -> Option<(usize, usize)> {
    let v: Vec<char> = w.chars().collect();
    if v.iter().filter(|&&c| c == 'c').count() != 1 {
        return None;
    }
    let cpos = v.iter().position(|&c| c == 'c').unwrap();
    let p = &v[..cpos];
    let s = &v[cpos + 1..];
    let is_x = |c: char| c == 'a' || c == 'b';
    let is_y = |c: char| c == '0' || c == '1';
    let xlen = p.iter().take_while(|&&c| is_x(c)).count();
    if !p[xlen..].iter().all(|&c| is_y(c)) {
        return None;
    }
    let (x, y) = p.split_at(xlen);
    let ylen = s.iter().take_while(|&&c| is_y(c)).count();
    if !s[ylen..].iter().all(|&c| is_x(c)) {
        return None;
    }
    let (y2, x2) = s.split_at(ylen);
    (y2 == y && x2 == x).then_some((x.len(), y.len()))
}

/// Member with both blocks nonempty (the sharp 2/3 acceptance holds exactly
/// for these).
pub fn lxy_nondegenerate(w: &str) -> bool {
    matches!(split_lxy(w), Some((x, y)) if x >= 1 && y >= 1)
}

pub const ORACLES: [LanguageOracle; 4] = [
    LanguageOracle {
        name: "L1",
        alphabet: &['a', 'b', 'c'],
        member: in_l1,
        description: "b a^n c a^n b",
    },
    LanguageOracle {
        name: "L2",
        alphabet: &['a', 'b', 'c'],
        member: in_l2,
        description: "b a^n b a^m c a^m b",
    },
    LanguageOracle {
        name: "L3",
        alphabet: &['a', 'b', 'c'],
        member: in_l3,
        description: "b a^{n_1} ... b a^{n_i} c a^{n_i} b",
    },
    LanguageOracle {
        name: "Lxy",
        alphabet: &['a', 'b', '0', '1', 'c'],
        member: in_lxy,
        description: "x y c y x, x over {a,b}, y over {0,1}",
    },
];

pub fn oracle(name: &str) -> Option<&'static LanguageOracle> {
    ORACLES.iter().find(|o| o.name == name)
}

/// The sweep bound registered for each oracle.
pub fn corpus_bound(oracle: &str) -> Option<CorpusBound> {
    match oracle {
        "L1" | "L2" => Some(CorpusBound::Agreement),
        "L3" => Some(CorpusBound::NonMemberHalf),
        "Lxy" => Some(CorpusBound::TwoThirds),
        _ => None,
    }
}

/// Recognizer for the union language: two paths split on the first `b`, the
/// second path re-splitting on every further `b` so some branch guesses the
/// final block.
pub fn build_ml3(variant: Variant) -> QuantumMachine {
    let split = match variant {
        Variant::Table => Amp::one(),
        Variant::Corrected => Amp::inv_sqrt(2),
    };
    let mut b = QuantumMachine::builder(match variant {
        Variant::Table => "mL3.table",
        Variant::Corrected => "mL3.corrected",
    });
    b.states(["q0", "q1", "q2", "q3", "q4", "q5", "qacc1", "qacc2", "qrej1"])
        .inputs(['a', 'b', 'c'])
        .queue_syms(["A", "B"])
        .start("q0")
        .accept(["qacc1", "qacc2"])
        .reject(["qrej1"])
        .realtime(true);
    let (h, d) = (TapeSym::Hash, TapeSym::Dollar);
    let (sa, sb, sc) = (TapeSym::In('a'), TapeSym::In('b'), TapeSym::In('c'));
    let aa = Some(("A", "A"));
    b.row("q0", h, None, "q0", None, Dir::Right, QOp::Enqueue, Amp::one());
    b.row("q0", sb, None, "q1", None, Dir::Right, QOp::Enqueue, Amp::inv_sqrt(2));
    b.row("q0", sb, None, "q2", None, Dir::Right, QOp::Enqueue, Amp::inv_sqrt(2));
    b.row("q1", sa, None, "q1", Some("A"), Dir::Right, QOp::Enqueue, Amp::one());
    b.row("q1", sa, aa, "q1", Some("A"), Dir::Right, QOp::Enqueue, Amp::one());
    b.row("q1", sb, aa, "qrej1", None, Dir::Right, QOp::Enqueue, Amp::one());
    b.row("q1", sc, aa, "q3", None, Dir::Right, QOp::Enqueue, Amp::one());
    b.row("q2", sa, None, "q2", None, Dir::Right, QOp::Enqueue, Amp::one());
    b.row("q2", sb, None, "q1", None, Dir::Right, QOp::Enqueue, split.clone());
    b.row("q2", sb, None, "q2", None, Dir::Right, QOp::Enqueue, split);
    b.row("q2", sc, None, "q4", None, Dir::Right, QOp::Enqueue, Amp::one());
    b.row("q3", sa, aa, "q3", None, Dir::Right, QOp::Dequeue, Amp::one());
    b.row("q3", sa, None, "qrej1", None, Dir::Right, QOp::Dequeue, Amp::one());
    b.row("q3", sb, aa, "qrej1", None, Dir::Right, QOp::Dequeue, Amp::one());
    b.row("q3", sb, None, "q5", None, Dir::Right, QOp::Enqueue, Amp::one());
    b.row("q4", sa, None, "q4", None, Dir::Right, QOp::Enqueue, Amp::one());
    b.row("q4", sb, None, "q4", None, Dir::Right, QOp::Enqueue, Amp::one());
    b.row("q5", d, None, "qacc1", None, Dir::Right, QOp::Enqueue, Amp::one());
    b.row("q4", d, None, "qacc2", None, Dir::Right, QOp::Enqueue, Amp::one());
    if variant == Variant::Corrected {
        // the prose walks both surviving paths through `c` on an empty queue
        b.row("q1", sc, None, "q3", None, Dir::Right, QOp::Enqueue, Amp::one());
        b.completion(Completion::Sink);
    }
    let m = b.build().expect("reference machine builds");
    match variant {
        Variant::Table => m,
        Variant::Corrected => m.complete().expect("completion"),
    }
}

/// Recognizer for the copy language around `c`: a three-way split sacrifices
/// one third to rejection so every mismatch is rejected with at least 2/3.
pub fn build_mlxy(variant: Variant) -> QuantumMachine {
    let mut b = QuantumMachine::builder(match variant {
        Variant::Table => "mLxy.table",
        Variant::Corrected => "mLxy.corrected",
    });
    b.states(["q0", "q1", "q2", "q3", "q4", "qacc1", "qacc2", "qr"])
        .inputs(['a', 'b', '0', '1', 'c'])
        .queue_syms(["A", "B"])
        .start("q0")
        .accept(["qacc1", "qacc2"])
        .reject(["qr"])
        .realtime(true);
    let (h, d) = (TapeSym::Hash, TapeSym::Dollar);
    let (sa, sb, s0, s1, sc) = (
        TapeSym::In('a'),
        TapeSym::In('b'),
        TapeSym::In('0'),
        TapeSym::In('1'),
        TapeSym::In('c'),
    );
    let pairs: [(&str, &str); 4] = [("A", "A"), ("A", "B"), ("B", "A"), ("B", "B")];
    b.row("q0", h, None, "q1", None, Dir::Right, QOp::Enqueue, Amp::inv_sqrt(3));
    b.row("q0", h, None, "q2", None, Dir::Right, QOp::Enqueue, Amp::inv_sqrt(3));
    b.row("q0", h, None, "qr", None, Dir::Right, QOp::Enqueue, Amp::inv_sqrt(3));
    b.row("q1", sa, None, "q1", Some("A"), Dir::Right, QOp::Enqueue, Amp::one());
    b.row("q1", sb, None, "q1", Some("B"), Dir::Right, QOp::Enqueue, Amp::one());
    b.row("q2", sa, None, "q2", None, Dir::Right, QOp::Enqueue, Amp::one());
    b.row("q2", sb, None, "q2", None, Dir::Right, QOp::Enqueue, Amp::one());
    b.row("q2", s0, None, "q2", Some("A"), Dir::Right, QOp::Enqueue, Amp::one());
    b.row("q2", s1, None, "q2", Some("B"), Dir::Right, QOp::Enqueue, Amp::one());
    for fr in pairs {
        let fr = Some(fr);
        b.row("q1", sa, fr, "q1", Some("A"), Dir::Right, QOp::Enqueue, Amp::one());
        b.row("q1", sb, fr, "q1", Some("B"), Dir::Right, QOp::Enqueue, Amp::one());
        b.row("q1", s0, fr, "q1", None, Dir::Right, QOp::Enqueue, Amp::one());
        b.row("q1", s1, fr, "q1", None, Dir::Right, QOp::Enqueue, Amp::one());
        b.row("q1", sc, fr, "q3", None, Dir::Right, QOp::Enqueue, Amp::one());
        b.row("q2", s0, fr, "q2", Some("A"), Dir::Right, QOp::Enqueue, Amp::one());
        b.row("q2", s1, fr, "q2", Some("B"), Dir::Right, QOp::Enqueue, Amp::one());
        b.row("q2", sc, fr, "q4", None, Dir::Right, QOp::Enqueue, Amp::one());
        b.row("q3", s0, fr, "q3", None, Dir::Right, QOp::Enqueue, Amp::one());
        b.row("q3", s1, fr, "q3", None, Dir::Right, QOp::Enqueue, Amp::one());
    }
    for zl in ["A", "B"] {
        b.row("q3", sa, Some(("A", zl)), "q3", None, Dir::Right, QOp::Dequeue, Amp::one());
        b.row("q3", sb, Some(("B", zl)), "q3", None, Dir::Right, QOp::Dequeue, Amp::one());
        b.row("q3", sa, Some(("B", zl)), "qr", None, Dir::Right, QOp::Dequeue, Amp::one());
        b.row("q3", sb, Some(("A", zl)), "qr", None, Dir::Right, QOp::Dequeue, Amp::one());
        b.row("q4", s0, Some(("A", zl)), "q4", None, Dir::Right, QOp::Dequeue, Amp::one());
        b.row("q4", s1, Some(("B", zl)), "q4", None, Dir::Right, QOp::Dequeue, Amp::one());
        b.row("q4", s0, Some(("B", zl)), "qr", None, Dir::Right, QOp::Dequeue, Amp::one());
        b.row("q4", s1, Some(("A", zl)), "qr", None, Dir::Right, QOp::Dequeue, Amp::one());
    }
    b.row("q4", sa, None, "q4", None, Dir::Right, QOp::Dequeue, Amp::one());
    b.row("q4", sb, None, "q4", None, Dir::Right, QOp::Dequeue, Amp::one());
    b.row("q3", d, None, "qacc1", None, Dir::Right, QOp::Dequeue, Amp::one());
    b.row("q4", d, None, "qacc2", None, Dir::Right, QOp::Dequeue, Amp::one());
    if variant == Variant::Corrected {
        b.row("q1", sc, None, "q3", None, Dir::Right, QOp::Enqueue, Amp::one());
        b.row("q2", sc, None, "q4", None, Dir::Right, QOp::Enqueue, Amp::one());
        b.completion(Completion::Sink);
    }
    let m = b.build().expect("reference machine builds");
    match variant {
        Variant::Table => m,
        Variant::Corrected => m.complete().expect("completion"),
    }
}

/// The single-state machine whose step is isometric on every configuration it
/// is defined on, yet not unitary: it keys on a nonempty queue and enqueues
/// forever, so short queues have no preimage.
pub fn build_thm1_counterexample() -> QuantumMachine {
    let mut b = QuantumMachine::builder("thm1-counterexample");
    b.states(["q"]).inputs(['a']).queue_syms(["A0", "$"]).start("q").realtime(true);
    b.row("q", TapeSym::Hash, Some(("A0", "A0")), "q", Some("A0"), Dir::Right, QOp::Enqueue, Amp::one());
    b.row("q", TapeSym::In('a'), Some(("A0", "A0")), "q", Some("A0"), Dir::Right, QOp::Enqueue, Amp::one());
    b.row("q", TapeSym::Dollar, Some(("A0", "A0")), "q", Some("$"), Dir::Right, QOp::Enqueue, Amp::one());
    b.build().expect("reference machine builds")
}

/// A concrete lambda-free reversible deterministic recognizer for
/// `b a^n c a^n b`: enqueue one `A` per leading `a`, dequeue one per trailing
/// `a`, accept on the final `b` with an empty queue.
pub fn build_rt_rdqa_l1() -> ClassicalMachine {
    let mut b = ClassicalMachine::builder("rdqaL1");
    b.states(["q0", "q1", "q2", "q3"])
        .inputs(['a', 'b', 'c'])
        .queue_syms(["A"])
        .start("q0")
        .finals(["q3"]);
    let aa = Some(("A", "A"));
    b.row("q0", CIn::Sym('b'), None, "q1", None, CAction::Keep);
    b.row("q1", CIn::Sym('a'), None, "q1", Some("A"), CAction::Keep);
    b.row("q1", CIn::Sym('a'), aa, "q1", Some("A"), CAction::Keep);
    b.row("q1", CIn::Sym('c'), None, "q2", None, CAction::Keep);
    b.row("q1", CIn::Sym('c'), aa, "q2", None, CAction::Keep);
    b.row("q2", CIn::Sym('a'), aa, "q2", None, CAction::Remove);
    b.row("q2", CIn::Sym('b'), None, "q3", None, CAction::Keep);
    b.build().expect("reference machine builds")
}

/// Errors from the deterministic-to-quantum embedding.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EmbedError {
    NotDeterministic,
    HasLambdaRules,
}

/// Embeds a lambda-free deterministic machine as a unit-amplitude real-time
/// quantum machine: keep becomes enqueue, remove becomes dequeue, final states
/// step to a fresh accepting state on `$`, and sink completion rejects
/// everything the classical machine would have halted on early.
pub fn embed_dqa(m: &ClassicalMachine) -> Result<QuantumMachine, EmbedError> {
    if m.flavor != Flavor::Deterministic {
        return Err(EmbedError::NotDeterministic);
    }
    if !check_realtime(m).pass {
        return Err(EmbedError::HasLambdaRules);
    }
    let mut acc = String::from("acc");
    while m.states.iter().any(|s| *s == acc) {
        acc.push('_');
    }
    let mut b = QuantumMachine::builder(&alloc::format!("qq({})", m.name));
    let state_names: Vec<&str> = m.states.iter().map(|s| s.as_str()).collect();
    let qsym_names: Vec<&str> = m.queue_alphabet.iter().map(|s| s.as_str()).collect();
    b.states(state_names.iter().copied())
        .states([acc.as_str()])
        .inputs(m.input_alphabet.iter().copied())
        .queue_syms(qsym_names.iter().copied())
        .start(m.state_name(m.start))
        .accept([acc.as_str()])
        .realtime(true)
        .completion(Completion::Sink);
    b.row(m.state_name(m.start), TapeSym::Hash, None, m.state_name(m.start), None, Dir::Right, QOp::Enqueue, Amp::one());
    for (key, entries) in &m.table {
        let CKey { state, input: CIn::Sym(c), fr } = key else {
            unreachable!("lambda rules were rejected above");
        };
        let fr_names = match fr {
            crate::queue::FrontRear::Empty => None,
            crate::queue::FrontRear::Pair(x, y) => {
                Some((m.queue_sym_name(*x), m.queue_sym_name(*y)))
            }
        };
        let [t] = entries.as_slice() else {
            return Err(EmbedError::NotDeterministic);
        };
        b.row(
            m.state_name(*state),
            TapeSym::In(*c),
            fr_names,
            m.state_name(t.target),
            t.enqueue.map(|z| m.queue_sym_name(z)),
            Dir::Right,
            match t.action {
                CAction::Keep => QOp::Enqueue,
                CAction::Remove => QOp::Dequeue,
            },
            Amp::one(),
        );
    }
    let fr_shapes: Vec<Option<(String, String)>> = {
        let mut v: Vec<Option<(String, String)>> = alloc::vec![None];
        for x in &m.queue_alphabet {
            for y in &m.queue_alphabet {
                v.push(Some((x.clone(), y.clone())));
            }
        }
        v
    };
    for f in &m.finals {
        for fr in &fr_shapes {
            b.row(
                m.state_name(*f),
                TapeSym::Dollar,
                fr.as_ref().map(|(x, y)| (x.as_str(), y.as_str())),
                &acc,
                None,
                Dir::Right,
                QOp::Enqueue,
                Amp::one(),
            );
        }
    }
    let qm = b.build().expect("embedding builds");
    Ok(qm.complete().expect("completion"))
}

/// All strings over `alphabet` of length `0..=max_len` in length-then-lex
/// order (alphabet order is significance order).
pub fn enumerate_strings(alphabet: &[char], max_len: usize) -> Result<EnumStrings, ClassicalError> {
    if max_len > 12 {
        // corpus guard: |alphabet|^12 is already the practical ceiling
        return Err(ClassicalError::SearchCapExceeded { cap: 12 });
    }
    Ok(EnumStrings { alphabet: alphabet.to_vec(), max_len, len: 0, idx: Vec::new(), done: false })
}

pub struct EnumStrings {
    alphabet: Vec<char>,
    max_len: usize,
    len: usize,
    idx: Vec<usize>,
    done: bool,
}

impl Iterator for EnumStrings {
    type Item = String;

    fn next(&mut self) -> Option<String> {
        if self.done {
            return None;
        }
        let out: String = self.idx.iter().map(|&i| self.alphabet[i]).collect();
        // advance the odometer, rightmost digit fastest
        let mut pos = self.len;
        loop {
            if pos == 0 {
                self.len += 1;
                if self.len > self.max_len || self.alphabet.is_empty() {
                    self.done = true;
                } else {
                    self.idx = alloc::vec![0; self.len];
                }
                break;
            }
            pos -= 1;
            if self.idx[pos] + 1 < self.alphabet.len() {
                self.idx[pos] += 1;
                for d in &mut self.idx[pos + 1..] {
                    *d = 0;
                }
                break;
            }
        }
        Some(out)
    }
}

/// Names registered for `zoo:` lookups, with aliases for the corrected
/// variants.
pub const MACHINE_NAMES: [&str; 6] = [
    "mL3.table",
    "mL3.corrected",
    "mLxy.table",
    "mLxy.corrected",
    "rdqaL1",
    "thm1-counterexample",
];

pub fn machine(name: &str) -> Option<Machine> {
    match name {
        "mL3.table" => Some(Machine::Quantum(build_ml3(Variant::Table))),
        "mL3" | "mL3.corrected" => Some(Machine::Quantum(build_ml3(Variant::Corrected))),
        "mLxy.table" => Some(Machine::Quantum(build_mlxy(Variant::Table))),
        "mLxy" | "mLxy.corrected" => Some(Machine::Quantum(build_mlxy(Variant::Corrected))),
        "rdqaL1" => Some(Machine::Classical(build_rt_rdqa_l1())),
        "thm1-counterexample" => Some(Machine::Quantum(build_thm1_counterexample())),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classical::dqa_run;
    use crate::quantum::{run_rt, RunOpts};
    use crate::PROB_TOL;

    #[test]
    fn oracle_spot_checks() {
        assert!(in_l1("bcb"));
        assert!(in_l1("bacab"));
        assert!(!in_l1("bacb"));
        assert!(in_l2("bbcb"));
        assert!(in_l2("babacab"));
        assert!(in_l3("bcb"));
        assert!(!in_l3("bacb"));
        assert!(!in_l3("babacaab"));
        assert!(in_l3("bbcb"));
        assert!(in_lxy("a0c0a"));
        assert!(in_lxy("c"));
        assert!(!in_lxy("a0c1a"));
        assert!(!in_lxy("a1b0c0b1a"));
        assert!(lxy_nondegenerate("a0c0a"));
        assert!(!lxy_nondegenerate("aca"));
    }

    /// generate-and-compare: membership recognizers agree with brute-force
    /// generation of all members up to a length bound
    #[test]
    fn oracles_agree_with_generators() {
        use alloc::collections::BTreeSet;
        let max = 8usize;
        let mut l1: BTreeSet<String> = BTreeSet::new();
        let mut l2: BTreeSet<String> = BTreeSet::new();
        let mut l3: BTreeSet<String> = BTreeSet::new();
        for n in 0..=max {
            let w = alloc::format!("b{}c{}b", "a".repeat(n), "a".repeat(n));
            if w.len() <= max {
                l1.insert(w);
            }
        }
        for n in 0..=max {
            for m in 0..=max {
                let w = alloc::format!("b{}b{}c{}b", "a".repeat(n), "a".repeat(m), "a".repeat(m));
                if w.len() <= max {
                    l2.insert(w);
                }
            }
        }
        // members of the union shape for every segment-count i
        fn gen_l3(prefix: String, max: usize, out: &mut BTreeSet<String>) {
            // prefix is the (b a^*)* part built so far
            for n in 0..=max {
                let seg = alloc::format!("b{}", "a".repeat(n));
                let with = alloc::format!("{prefix}{seg}");
                let member = alloc::format!("{with}c{}b", "a".repeat(n));
                if member.len() <= max {
                    out.insert(member);
                }
                // a further segment needs at least "b" + "c" + "b"
                if with.len() + 3 <= max {
                    gen_l3(with, max, out);
                }
            }
        }
        gen_l3(String::new(), max, &mut l3);

        let mut lxy: BTreeSet<String> = BTreeSet::new();
        for x in enumerate_strings(&['a', 'b'], 3).unwrap() {
            for y in enumerate_strings(&['0', '1'], 3).unwrap() {
                let w = alloc::format!("{x}{y}c{y}{x}");
                if w.len() <= max {
                    lxy.insert(w);
                }
            }
        }

        for w in enumerate_strings(&['a', 'b', 'c'], max).unwrap() {
            assert_eq!(in_l1(&w), l1.contains(&w), "L1 on {w:?}");
            assert_eq!(in_l2(&w), l2.contains(&w), "L2 on {w:?}");
            assert_eq!(in_l3(&w), l3.contains(&w), "L3 on {w:?}");
        }
        for w in enumerate_strings(&['a', 'b', '0', '1', 'c'], 7).unwrap() {
            let brute = lxy.contains(&w);
            assert_eq!(in_lxy(&w), brute, "Lxy on {w:?}");
        }
    }

    /// every one-segment member of the union shape is a member of it
    #[test]
    fn l1_members_are_l3_members() {
        for w in enumerate_strings(&['a', 'b', 'c'], 10).unwrap() {
            if in_l1(&w) {
                assert!(in_l3(&w), "{w:?}");
            }
        }
    }

    #[test]
    fn enumerate_order_and_counts() {
        let v: Vec<String> = enumerate_strings(&['a'], 2).unwrap().collect();
        assert_eq!(v, ["", "a", "aa"]);
        let v: Vec<String> = enumerate_strings(&['a', 'b'], 1).unwrap().collect();
        assert_eq!(v, ["", "a", "b"]);
        assert_eq!(enumerate_strings(&['a', 'b', 'c'], 7).unwrap().count(), 3280);
        assert!(enumerate_strings(&['a'], 13).is_err());
        assert_eq!(enumerate_strings(&[], 5).unwrap().count(), 1);
    }

    #[test]
    fn rdqa_l1_verdicts() {
        let m = build_rt_rdqa_l1();
        assert!(dqa_run(&m, "bacab", 0).unwrap().accepted);
        assert!(!dqa_run(&m, "bacb", 0).unwrap().accepted);
        assert!(!dqa_run(&m, "", 0).unwrap().accepted);
        for x in enumerate_strings(&['a', 'b', 'c'], 10).unwrap() {
            assert_eq!(dqa_run(&m, &x, 0).unwrap().accepted, in_l1(&x), "{x:?}");
        }
    }

    #[test]
    fn ml3_reference_probabilities() {
        let m = build_ml3(Variant::Corrected);
        let r = run_rt(&m, "bcb", RunOpts::default()).unwrap();
        assert!(crate::abs(r.p_accept - 1.0) < PROB_TOL);
        let r = run_rt(&m, "bacb", RunOpts::default()).unwrap();
        assert!(crate::abs(r.p_reject - 0.5) < PROB_TOL);
        assert!(crate::abs(r.p_accept - 0.5) < PROB_TOL);
    }

    #[test]
    fn ml3_table_variant_leaks_on_the_prose_path() {
        let m = build_ml3(Variant::Table);
        let r = run_rt(&m, "bcb", RunOpts::default()).unwrap();
        assert!(r.p_accept < 1.0 - PROB_TOL);
        assert!(crate::abs(r.p_accept - 0.5) < PROB_TOL);
        assert!(r.leaked > 0.25);
    }

    #[test]
    fn mlxy_reference_probabilities() {
        let m = build_mlxy(Variant::Corrected);
        let r = run_rt(&m, "a0c0a", RunOpts::default()).unwrap();
        assert!(crate::abs(r.p_accept - 2.0 / 3.0) < PROB_TOL, "p_acc {}", r.p_accept);
        // degenerate member with empty x: only one comparison path survives
        let r = run_rt(&m, "0c0", RunOpts::default()).unwrap();
        assert!(crate::abs(r.p_accept - 1.0 / 3.0) < PROB_TOL);
        // empty y works because of the added empty-queue `c` rows
        let r = run_rt(&m, "aca", RunOpts::default()).unwrap();
        assert!(crate::abs(r.p_accept - 2.0 / 3.0) < PROB_TOL);
    }

    #[test]
    fn counterexample_runs_to_nonhalt() {
        let m = build_thm1_counterexample();
        let r = run_rt(&m, "aa", RunOpts::default()).unwrap();
        assert_eq!(r.p_accept, 0.0);
        assert_eq!(r.p_reject, 0.0);
        assert!(crate::abs(r.p_nonhalt - 1.0) < 1e-12);
        assert!(crate::abs(r.leaked - 1.0) < 1e-12);
    }

    #[test]
    fn embedding_reproduces_classical_verdicts() {
        let c = build_rt_rdqa_l1();
        let q = embed_dqa(&c).unwrap();
        for x in enumerate_strings(&['a', 'b', 'c'], 5).unwrap() {
            let classical = dqa_run(&c, &x, 0).unwrap().accepted;
            let r = run_rt(&q, &x, RunOpts::default()).unwrap();
            let p = if classical { 1.0 } else { 0.0 };
            assert!(crate::abs(r.p_accept - p) < 1e-12, "{x:?}");
            assert!(crate::abs(r.p_accept + r.p_reject - 1.0) < 1e-12, "{x:?}");
        }
    }

    #[test]
    fn zoo_registry_resolves_names_and_aliases() {
        for name in MACHINE_NAMES {
            assert!(machine(name).is_some(), "{name}");
        }
        assert_eq!(machine("mL3").unwrap().name(), "mL3.corrected");
        assert_eq!(machine("mLxy").unwrap().name(), "mLxy.corrected");
        assert!(machine("unknown").is_none());
    }
}
