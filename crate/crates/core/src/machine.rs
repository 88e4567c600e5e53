//! Machine records for the classical and the quantum model.
//!
//! Both kinds are immutable after construction: builders collect declarations
//! and transition rows, then `build()` resolves identifiers and enforces the
//! structural invariants. Runs and checks share machines read-only.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::amp::Amp;
use crate::config::TapeSym;
use crate::queue::{FrontRear, QOp, QSym};

/// Interned control state: an index into the machine's state list.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StateId(pub u16);

/// Head direction of a quantum transition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Dir {
    Left,
    Stay,
    Right,
}

impl Dir {
    pub fn letter(self) -> char {
        match self {
            Dir::Left => 'L',
            Dir::Stay => 'S',
            Dir::Right => 'R',
        }
    }
}

/// Completion policy for partial quantum tables.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Completion {
    /// Leave unspecified rows missing; their mass leaks during runs.
    None,
    /// Fill unspecified rows with unit transitions to fresh rejecting sinks.
    Sink,
}

/// Transition key: source state, tape symbol under the head, and queue shape.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QKey {
    pub state: StateId,
    pub sym: TapeSym,
    pub fr: FrontRear,
}

/// One weighted transition out of a key.
#[derive(Clone, Debug, PartialEq)]
pub struct QTrans {
    pub target: StateId,
    /// Symbol appended at the rear; `None` is the empty word.
    pub enqueue: Option<QSym>,
    pub dir: Dir,
    pub op: QOp,
    pub amp: Amp,
}

impl QTrans {
    fn sort_key(&self) -> (StateId, Option<QSym>, Dir, QOp) {
        (self.target, self.enqueue, self.dir, self.op)
    }
}

/// A quantum queue automaton.
#[derive(Clone, Debug, PartialEq)]
pub struct QuantumMachine {
    pub name: String,
    pub states: Vec<String>,
    pub input_alphabet: Vec<char>,
    pub queue_alphabet: Vec<String>,
    pub start: StateId,
    pub accept: BTreeSet<StateId>,
    pub reject: BTreeSet<StateId>,
    pub table: BTreeMap<QKey, Vec<QTrans>>,
    /// Head direction as a function of the target state, when the table is
    /// consistent with one (the simplified form). Derived, not declared.
    pub head_policy: Option<Vec<Dir>>,
    pub realtime: bool,
    pub completion: Completion,
}

/// Errors raised while building, completing, or running machines.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MachineError {
    NoStates,
    DuplicateName(String),
    ReservedName(String),
    UndeclaredState(String),
    UndeclaredQueueSym(String),
    UndeclaredInput(char),
    MarkerInInput(char),
    NoStart,
    AcceptRejectOverlap(String),
    AmplitudeTooLarge { row: String },
    DuplicateTransition { row: String },
    RealtimeDirection { row: String },
    NondeterministicRow { row: String },
    LambdaSigmaConflict { row: String },
    SinkNameClash(String),
}

impl fmt::Display for MachineError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MachineError::NoStates => f.write_str("machine declares no states"),
            MachineError::DuplicateName(n) => write!(f, "duplicate declaration of `{n}`"),
            MachineError::ReservedName(n) => write!(f, "`{n}` is a reserved spelling"),
            MachineError::UndeclaredState(n) => write!(f, "undeclared state `{n}`"),
            MachineError::UndeclaredQueueSym(n) => write!(f, "undeclared queue symbol `{n}`"),
            MachineError::UndeclaredInput(c) => write!(f, "undeclared input symbol `{c}`"),
            MachineError::MarkerInInput(c) => {
                write!(f, "end-marker `{c}` may not appear in the input alphabet")
            }
            MachineError::NoStart => f.write_str("no start state declared"),
            MachineError::AcceptRejectOverlap(n) => {
                write!(f, "state `{n}` is both accepting and rejecting")
            }
            MachineError::AmplitudeTooLarge { row } => {
                write!(f, "amplitude magnitude exceeds 1: {row}")
            }
            MachineError::DuplicateTransition { row } => {
                write!(f, "duplicate transition: {row}")
            }
            MachineError::RealtimeDirection { row } => {
                write!(f, "real-time machine with non-right head move: {row}")
            }
            MachineError::NondeterministicRow { row } => {
                write!(f, "deterministic machine with conflicting rows: {row}")
            }
            MachineError::LambdaSigmaConflict { row } => {
                write!(f, "state/front/rear triple carries both a lambda-rule and a symbol rule: {row}")
            }
            MachineError::SinkNameClash(n) => {
                write!(f, "cannot complete: state `{n}` is named like a completion sink")
            }
        }
    }
}

const RESERVED_TOKENS: [&str; 5] = ["_", "-", "~", "->", ";"];

fn check_token(tok: &str) -> Result<(), MachineError> {
    if tok.is_empty()
        || RESERVED_TOKENS.contains(&tok)
        || tok.chars().any(|c| c.is_whitespace() || c == ';')
    {
        return Err(MachineError::ReservedName(tok.to_string()));
    }
    Ok(())
}

impl QuantumMachine {
    pub fn builder(name: &str) -> QmBuilder {
        QmBuilder {
            name: name.to_string(),
            states: Vec::new(),
            input_alphabet: Vec::new(),
            queue_alphabet: Vec::new(),
            start: None,
            accept: Vec::new(),
            reject: Vec::new(),
            rows: Vec::new(),
            realtime: false,
            completion: Completion::None,
        }
    }

    pub fn state_id(&self, name: &str) -> Option<StateId> {
        self.states.iter().position(|s| s == name).map(|i| StateId(i as u16))
    }

    pub fn state_name(&self, id: StateId) -> &str {
        &self.states[id.0 as usize]
    }

    pub fn queue_sym_id(&self, name: &str) -> Option<QSym> {
        self.queue_alphabet.iter().position(|s| s == name).map(|i| QSym(i as u16))
    }

    pub fn queue_sym_name(&self, id: QSym) -> &str {
        &self.queue_alphabet[id.0 as usize]
    }

    pub fn is_accept(&self, s: StateId) -> bool {
        self.accept.contains(&s)
    }

    pub fn is_reject(&self, s: StateId) -> bool {
        self.reject.contains(&s)
    }

    pub fn is_halting(&self, s: StateId) -> bool {
        self.is_accept(s) || self.is_reject(s)
    }

    pub fn transitions(&self, key: &QKey) -> Option<&[QTrans]> {
        self.table.get(key).map(|v| v.as_slice())
    }

    /// All tape symbols the machine can read: `#`, declared inputs, `$`.
    pub fn tape_symbols(&self) -> Vec<TapeSym> {
        let mut v = Vec::with_capacity(self.input_alphabet.len() + 2);
        v.push(TapeSym::Hash);
        v.extend(self.input_alphabet.iter().map(|&c| TapeSym::In(c)));
        v.push(TapeSym::Dollar);
        v
    }

    /// All legal front/rear key shapes: the empty queue plus every pair over
    /// the queue alphabet.
    pub fn front_rear_shapes(&self) -> Vec<FrontRear> {
        let n = self.queue_alphabet.len() as u16;
        let mut v = Vec::with_capacity(1 + (n as usize) * (n as usize));
        v.push(FrontRear::Empty);
        for a in 0..n {
            for b in 0..n {
                v.push(FrontRear::Pair(QSym(a), QSym(b)));
            }
        }
        v
    }

    fn missing_keys(&self) -> Vec<QKey> {
        let mut missing = Vec::new();
        for (i, _) in self.states.iter().enumerate() {
            let s = StateId(i as u16);
            if self.is_halting(s) {
                continue;
            }
            for sym in self.tape_symbols() {
                for fr in self.front_rear_shapes() {
                    let key = QKey { state: s, sym, fr };
                    if !self.table.contains_key(&key) {
                        missing.push(key);
                    }
                }
            }
        }
        missing
    }

    /// True when every non-halting state has a row for every key shape.
    pub fn is_total(&self) -> bool {
        self.missing_keys().is_empty()
    }

    /// Sink completion: every unspecified key of a non-halting state gets a
    /// unit-amplitude transition to a fresh rejecting sink, one distinct sink
    /// per source state (so two completed rows at the same key stay
    /// orthogonal). Specified rows are untouched; completing a total machine
    /// is the identity.
    pub fn complete(&self) -> Result<QuantumMachine, MachineError> {
        let missing = self.missing_keys();
        if missing.is_empty() {
            return Ok(self.clone());
        }
        let mut out = self.clone();
        let mut sink_of: BTreeMap<StateId, StateId> = BTreeMap::new();
        for key in missing {
            let sink = match sink_of.get(&key.state) {
                Some(&s) => s,
                None => {
                    let name = alloc::format!("sink({})", self.state_name(key.state));
                    if out.states.iter().any(|s| *s == name) {
                        return Err(MachineError::SinkNameClash(name));
                    }
                    out.states.push(name);
                    let id = StateId((out.states.len() - 1) as u16);
                    out.reject.insert(id);
                    sink_of.insert(key.state, id);
                    id
                }
            };
            out.table.insert(
                key,
                alloc::vec![QTrans {
                    target: sink,
                    enqueue: None,
                    dir: Dir::Right,
                    op: QOp::Enqueue,
                    amp: Amp::one(),
                }],
            );
        }
        out.head_policy = out.derive_head_policy();
        Ok(out)
    }

    /// Applies sink completion when the machine requests it.
    pub fn ensure_completed(&self) -> Result<QuantumMachine, MachineError> {
        match self.completion {
            Completion::Sink => self.complete(),
            Completion::None => Ok(self.clone()),
        }
    }

    /// Head direction as a function of the target state, if the table admits
    /// one: every transition into a state must share its direction. States
    /// that are never targeted default to right.
    pub fn derive_head_policy(&self) -> Option<Vec<Dir>> {
        let mut policy: Vec<Option<Dir>> = alloc::vec![None; self.states.len()];
        for entries in self.table.values() {
            for t in entries {
                let slot = &mut policy[t.target.0 as usize];
                match slot {
                    None => *slot = Some(t.dir),
                    Some(d) if *d == t.dir => {}
                    Some(_) => return None,
                }
            }
        }
        Some(policy.into_iter().map(|d| d.unwrap_or(Dir::Right)).collect())
    }

    /// Advisory findings that are not construction errors: halting states are
    /// expected to be transition-free.
    pub fn warnings(&self) -> Vec<String> {
        let mut w = Vec::new();
        for key in self.table.keys() {
            if self.is_halting(key.state) {
                w.push(alloc::format!(
                    "halting state `{}` has outgoing transitions",
                    self.state_name(key.state)
                ));
                break;
            }
        }
        w
    }
}

/// Raw transition row held by the builder until identifiers resolve.
struct RawQRow {
    state: String,
    sym: TapeSym,
    fr: Option<(String, String)>,
    target: String,
    enqueue: Option<String>,
    dir: Dir,
    op: QOp,
    amp: Amp,
}

pub struct QmBuilder {
    name: String,
    states: Vec<String>,
    input_alphabet: Vec<char>,
    queue_alphabet: Vec<String>,
    start: Option<String>,
    accept: Vec<String>,
    reject: Vec<String>,
    rows: Vec<RawQRow>,
    realtime: bool,
    completion: Completion,
}

impl QmBuilder {
    pub fn states<'a>(&mut self, names: impl IntoIterator<Item = &'a str>) -> &mut Self {
        self.states.extend(names.into_iter().map(|s| s.to_string()));
        self
    }

    pub fn inputs(&mut self, chars: impl IntoIterator<Item = char>) -> &mut Self {
        self.input_alphabet.extend(chars);
        self
    }

    pub fn queue_syms<'a>(&mut self, names: impl IntoIterator<Item = &'a str>) -> &mut Self {
        self.queue_alphabet.extend(names.into_iter().map(|s| s.to_string()));
        self
    }

    pub fn start(&mut self, name: &str) -> &mut Self {
        self.start = Some(name.to_string());
        self
    }

    pub fn accept<'a>(&mut self, names: impl IntoIterator<Item = &'a str>) -> &mut Self {
        self.accept.extend(names.into_iter().map(|s| s.to_string()));
        self
    }

    pub fn reject<'a>(&mut self, names: impl IntoIterator<Item = &'a str>) -> &mut Self {
        self.reject.extend(names.into_iter().map(|s| s.to_string()));
        self
    }

    pub fn realtime(&mut self, yes: bool) -> &mut Self {
        self.realtime = yes;
        self
    }

    pub fn completion(&mut self, c: Completion) -> &mut Self {
        self.completion = c;
        self
    }

    /// Adds one transition row. `fr` is `None` for the empty-queue key;
    /// `enqueue` is `None` for the empty word.
    #[allow(clippy::too_many_arguments)]
    pub fn row(
        &mut self,
        state: &str,
        sym: TapeSym,
        fr: Option<(&str, &str)>,
        target: &str,
        enqueue: Option<&str>,
        dir: Dir,
        op: QOp,
        amp: Amp,
    ) -> &mut Self {
        self.rows.push(RawQRow {
            state: state.to_string(),
            sym,
            fr: fr.map(|(a, b)| (a.to_string(), b.to_string())),
            target: target.to_string(),
            enqueue: enqueue.map(|s| s.to_string()),
            dir,
            op,
            amp,
        });
        self
    }

    pub fn build(&self) -> Result<QuantumMachine, MachineError> {
        if self.states.is_empty() {
            return Err(MachineError::NoStates);
        }
        let mut seen: BTreeSet<&str> = BTreeSet::new();
        for s in &self.states {
            check_token(s)?;
            if !seen.insert(s) {
                return Err(MachineError::DuplicateName(s.clone()));
            }
        }
        let mut seen_q: BTreeSet<&str> = BTreeSet::new();
        for s in &self.queue_alphabet {
            check_token(s)?;
            if !seen_q.insert(s) {
                return Err(MachineError::DuplicateName(s.clone()));
            }
        }
        let mut seen_c: BTreeSet<char> = BTreeSet::new();
        for &c in &self.input_alphabet {
            if c == '#' || c == '$' {
                return Err(MachineError::MarkerInInput(c));
            }
            if c.is_whitespace() || matches!(c, '_' | '-' | '~' | ';') {
                return Err(MachineError::ReservedName(c.to_string()));
            }
            if !seen_c.insert(c) {
                return Err(MachineError::DuplicateName(c.to_string()));
            }
        }

        let mut m = QuantumMachine {
            name: self.name.clone(),
            states: self.states.clone(),
            input_alphabet: self.input_alphabet.clone(),
            queue_alphabet: self.queue_alphabet.clone(),
            start: StateId(0),
            accept: BTreeSet::new(),
            reject: BTreeSet::new(),
            table: BTreeMap::new(),
            head_policy: None,
            realtime: self.realtime,
            completion: self.completion,
        };

        let start_name = self.start.as_ref().ok_or(MachineError::NoStart)?;
        m.start = m.state_id(start_name).ok_or_else(|| MachineError::UndeclaredState(start_name.clone()))?;
        for n in &self.accept {
            let id = m.state_id(n).ok_or_else(|| MachineError::UndeclaredState(n.clone()))?;
            m.accept.insert(id);
        }
        for n in &self.reject {
            let id = m.state_id(n).ok_or_else(|| MachineError::UndeclaredState(n.clone()))?;
            if m.accept.contains(&id) {
                return Err(MachineError::AcceptRejectOverlap(n.clone()));
            }
            m.reject.insert(id);
        }

        for r in &self.rows {
            let state = m.state_id(&r.state).ok_or_else(|| MachineError::UndeclaredState(r.state.clone()))?;
            let target = m.state_id(&r.target).ok_or_else(|| MachineError::UndeclaredState(r.target.clone()))?;
            if let TapeSym::In(c) = r.sym {
                if !m.input_alphabet.contains(&c) {
                    return Err(MachineError::UndeclaredInput(c));
                }
            }
            let fr = match &r.fr {
                None => FrontRear::Empty,
                Some((a, b)) => {
                    let za = m.queue_sym_id(a).ok_or_else(|| MachineError::UndeclaredQueueSym(a.clone()))?;
                    let zb = m.queue_sym_id(b).ok_or_else(|| MachineError::UndeclaredQueueSym(b.clone()))?;
                    FrontRear::Pair(za, zb)
                }
            };
            let enqueue = match &r.enqueue {
                None => None,
                Some(z) => Some(m.queue_sym_id(z).ok_or_else(|| MachineError::UndeclaredQueueSym(z.clone()))?),
            };
            let row_desc = || {
                alloc::format!(
                    "{} {} {:?} -> {} dir {} op {:?}",
                    r.state, r.sym, r.fr, r.target, r.dir.letter(), r.op
                )
            };
            if r.amp.value.norm_sqr() > (1.0 + 1e-9) * (1.0 + 1e-9) {
                return Err(MachineError::AmplitudeTooLarge { row: row_desc() });
            }
            if self.realtime && r.dir != Dir::Right {
                return Err(MachineError::RealtimeDirection { row: row_desc() });
            }
            let t = QTrans { target, enqueue, dir: r.dir, op: r.op, amp: r.amp.clone() };
            let key = QKey { state, sym: r.sym, fr };
            let entries = m.table.entry(key).or_default();
            if entries.iter().any(|e| e.sort_key() == t.sort_key()) {
                return Err(MachineError::DuplicateTransition { row: row_desc() });
            }
            entries.push(t);
        }
        for entries in m.table.values_mut() {
            entries.sort_by_key(|t| t.sort_key());
        }
        m.head_policy = m.derive_head_policy();
        Ok(m)
    }
}

/// Classical transition label: an input symbol or the empty move.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CIn {
    Lambda,
    Sym(char),
}

impl fmt::Display for CIn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CIn::Lambda => f.write_str("~"),
            CIn::Sym(c) => write!(f, "{c}"),
        }
    }
}

/// What a classical transition does with the queue front.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CAction {
    Keep,
    Remove,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CKey {
    pub state: StateId,
    pub input: CIn,
    pub fr: FrontRear,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct CTrans {
    pub target: StateId,
    /// Symbol appended at the rear; `None` is the classical empty symbol.
    pub enqueue: Option<QSym>,
    pub action: CAction,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Flavor {
    Deterministic,
    Nondeterministic,
}

/// A classical queue automaton (deterministic or nondeterministic).
#[derive(Clone, Debug, PartialEq)]
pub struct ClassicalMachine {
    pub name: String,
    pub states: Vec<String>,
    pub input_alphabet: Vec<char>,
    pub queue_alphabet: Vec<String>,
    pub start: StateId,
    pub finals: BTreeSet<StateId>,
    pub table: BTreeMap<CKey, Vec<CTrans>>,
    pub flavor: Flavor,
}

impl ClassicalMachine {
    pub fn builder(name: &str) -> CmBuilder {
        CmBuilder {
            name: name.to_string(),
            states: Vec::new(),
            input_alphabet: Vec::new(),
            queue_alphabet: Vec::new(),
            start: None,
            finals: Vec::new(),
            rows: Vec::new(),
            flavor: Flavor::Deterministic,
        }
    }

    pub fn state_id(&self, name: &str) -> Option<StateId> {
        self.states.iter().position(|s| s == name).map(|i| StateId(i as u16))
    }

    pub fn state_name(&self, id: StateId) -> &str {
        &self.states[id.0 as usize]
    }

    pub fn queue_sym_id(&self, name: &str) -> Option<QSym> {
        self.queue_alphabet.iter().position(|s| s == name).map(|i| QSym(i as u16))
    }

    pub fn queue_sym_name(&self, id: QSym) -> &str {
        &self.queue_alphabet[id.0 as usize]
    }

    pub fn is_final(&self, s: StateId) -> bool {
        self.finals.contains(&s)
    }

    pub fn transitions(&self, key: &CKey) -> Option<&[CTrans]> {
        self.table.get(key).map(|v| v.as_slice())
    }

    /// All lambda-keyed rows (the real-time check reports these).
    pub fn lambda_keys(&self) -> Vec<CKey> {
        self.table.keys().filter(|k| k.input == CIn::Lambda).copied().collect()
    }
}

struct RawCRow {
    state: String,
    input: CIn,
    fr: Option<(String, String)>,
    target: String,
    enqueue: Option<String>,
    action: CAction,
}

pub struct CmBuilder {
    name: String,
    states: Vec<String>,
    input_alphabet: Vec<char>,
    queue_alphabet: Vec<String>,
    start: Option<String>,
    finals: Vec<String>,
    rows: Vec<RawCRow>,
    flavor: Flavor,
}

impl CmBuilder {
    pub fn states<'a>(&mut self, names: impl IntoIterator<Item = &'a str>) -> &mut Self {
        self.states.extend(names.into_iter().map(|s| s.to_string()));
        self
    }

    pub fn inputs(&mut self, chars: impl IntoIterator<Item = char>) -> &mut Self {
        self.input_alphabet.extend(chars);
        self
    }

    pub fn queue_syms<'a>(&mut self, names: impl IntoIterator<Item = &'a str>) -> &mut Self {
        self.queue_alphabet.extend(names.into_iter().map(|s| s.to_string()));
        self
    }

    pub fn start(&mut self, name: &str) -> &mut Self {
        self.start = Some(name.to_string());
        self
    }

    pub fn finals<'a>(&mut self, names: impl IntoIterator<Item = &'a str>) -> &mut Self {
        self.finals.extend(names.into_iter().map(|s| s.to_string()));
        self
    }

    pub fn flavor(&mut self, f: Flavor) -> &mut Self {
        self.flavor = f;
        self
    }

    pub fn row(
        &mut self,
        state: &str,
        input: CIn,
        fr: Option<(&str, &str)>,
        target: &str,
        enqueue: Option<&str>,
        action: CAction,
    ) -> &mut Self {
        self.rows.push(RawCRow {
            state: state.to_string(),
            input,
            fr: fr.map(|(a, b)| (a.to_string(), b.to_string())),
            target: target.to_string(),
            enqueue: enqueue.map(|s| s.to_string()),
            action,
        });
        self
    }

    pub fn build(&self) -> Result<ClassicalMachine, MachineError> {
        if self.states.is_empty() {
            return Err(MachineError::NoStates);
        }
        let mut seen: BTreeSet<&str> = BTreeSet::new();
        for s in &self.states {
            check_token(s)?;
            if !seen.insert(s) {
                return Err(MachineError::DuplicateName(s.clone()));
            }
        }
        let mut seen_q: BTreeSet<&str> = BTreeSet::new();
        for s in &self.queue_alphabet {
            check_token(s)?;
            if !seen_q.insert(s) {
                return Err(MachineError::DuplicateName(s.clone()));
            }
        }
        let mut seen_c: BTreeSet<char> = BTreeSet::new();
        for &c in &self.input_alphabet {
            if c == '#' || c == '$' {
                return Err(MachineError::MarkerInInput(c));
            }
            if c.is_whitespace() || matches!(c, '_' | '-' | '~' | ';') {
                return Err(MachineError::ReservedName(c.to_string()));
            }
            if !seen_c.insert(c) {
                return Err(MachineError::DuplicateName(c.to_string()));
            }
        }

        let mut m = ClassicalMachine {
            name: self.name.clone(),
            states: self.states.clone(),
            input_alphabet: self.input_alphabet.clone(),
            queue_alphabet: self.queue_alphabet.clone(),
            start: StateId(0),
            finals: BTreeSet::new(),
            table: BTreeMap::new(),
            flavor: self.flavor,
        };
        let start_name = self.start.as_ref().ok_or(MachineError::NoStart)?;
        m.start = m.state_id(start_name).ok_or_else(|| MachineError::UndeclaredState(start_name.clone()))?;
        for n in &self.finals {
            let id = m.state_id(n).ok_or_else(|| MachineError::UndeclaredState(n.clone()))?;
            m.finals.insert(id);
        }

        for r in &self.rows {
            let state = m.state_id(&r.state).ok_or_else(|| MachineError::UndeclaredState(r.state.clone()))?;
            let target = m.state_id(&r.target).ok_or_else(|| MachineError::UndeclaredState(r.target.clone()))?;
            if let CIn::Sym(c) = r.input {
                if !m.input_alphabet.contains(&c) {
                    return Err(MachineError::UndeclaredInput(c));
                }
            }
            let fr = match &r.fr {
                None => FrontRear::Empty,
                Some((a, b)) => {
                    let za = m.queue_sym_id(a).ok_or_else(|| MachineError::UndeclaredQueueSym(a.clone()))?;
                    let zb = m.queue_sym_id(b).ok_or_else(|| MachineError::UndeclaredQueueSym(b.clone()))?;
                    FrontRear::Pair(za, zb)
                }
            };
            let enqueue = match &r.enqueue {
                None => None,
                Some(z) => Some(m.queue_sym_id(z).ok_or_else(|| MachineError::UndeclaredQueueSym(z.clone()))?),
            };
            let row_desc = || alloc::format!("{} {} {:?} -> {}", r.state, r.input, r.fr, r.target);
            let key = CKey { state, input: r.input, fr };
            let t = CTrans { target, enqueue, action: r.action };
            let entries = m.table.entry(key).or_default();
            if entries.contains(&t) {
                return Err(MachineError::DuplicateTransition { row: row_desc() });
            }
            if self.flavor == Flavor::Deterministic && !entries.is_empty() {
                return Err(MachineError::NondeterministicRow { row: row_desc() });
            }
            entries.push(t);
        }
        if self.flavor == Flavor::Deterministic {
            // lambda-determinism: a (state, front, rear) triple may carry either
            // a lambda-rule or symbol rules, never both
            for key in m.table.keys() {
                if key.input == CIn::Lambda {
                    let clash = m.table.keys().any(|k| {
                        k.state == key.state && k.fr == key.fr && k.input != CIn::Lambda
                    });
                    if clash {
                        return Err(MachineError::LambdaSigmaConflict {
                            row: alloc::format!("{} ~ {:?}", m.state_name(key.state), key.fr),
                        });
                    }
                }
            }
        }
        for entries in m.table.values_mut() {
            entries.sort();
        }
        Ok(m)
    }
}

/// Either kind of machine; the file format and the CLI handle both uniformly.
#[derive(Clone, Debug, PartialEq)]
pub enum Machine {
    Quantum(QuantumMachine),
    Classical(ClassicalMachine),
}

impl Machine {
    pub fn name(&self) -> &str {
        match self {
            Machine::Quantum(m) => &m.name,
            Machine::Classical(m) => &m.name,
        }
    }

    pub fn input_alphabet(&self) -> &[char] {
        match self {
            Machine::Quantum(m) => &m.input_alphabet,
            Machine::Classical(m) => &m.input_alphabet,
        }
    }
}
