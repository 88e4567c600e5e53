//! Well-formedness checks for quantum queue automata.
//!
//! Two levels of diagnosis are deliberately kept apart. The per-key conditions
//! (local probability, orthogonality, the three separability families, and the
//! simplified per-symbol isometry) evaluate the quoted sums over the machine's
//! specified transitions exactly as written, keyed on (symbol, front, rear).
//! The configuration-level diagnostics instead watch the step operator act on
//! concrete configurations: a machine can fail a per-key condition on rows
//! that never meet at the same head position and still evolve isometrically on
//! everything it actually reaches — both facts are first-class outputs here.
//!
//! Unitarity proper is undecidable by truncation on the infinite configuration
//! space; the co-isometry diagnostic reports non-surjectivity onto a bounded
//! configuration domain instead (an isometry that fails it is norm-preserving
//! but not unitary there).

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use num_complex::Complex64;

use crate::config::{render_queue, Config, Superposition, Tape, TapeSym};
use crate::machine::{QKey, QTrans, QuantumMachine, StateId};
use crate::queue::{FrontRear, QOp, QSym, QueueWord};
use crate::STRUCTURAL_TOL;

/// Outcome of one condition: worst residual magnitude over all inspected keys
/// or pairs, and a witness when it exceeds the tolerance.
#[derive(Clone, Debug, PartialEq)]
pub struct ConditionVerdict {
    pub pass: bool,
    pub worst_residual: f64,
    pub witness: Option<Witness>,
}

impl ConditionVerdict {
    fn passing() -> Self {
        ConditionVerdict { pass: true, worst_residual: 0.0, witness: None }
    }

    fn record(&mut self, residual: f64, witness: Witness, tol: f64) {
        if residual > tol {
            self.pass = false;
            if residual > self.worst_residual || self.witness.is_none() {
                self.witness = Some(witness);
            }
        }
        if residual > self.worst_residual {
            self.worst_residual = residual;
        }
    }
}

/// Where a condition failed.
#[derive(Clone, Debug, PartialEq)]
pub enum Witness {
    /// A single transition row.
    Key { state: StateId, sym: TapeSym, fr: FrontRear },
    /// Two rows of the same key shape (same symbol).
    Pair { a: StateId, b: StateId, sym: TapeSym, fr: FrontRear, equation: u8 },
    /// Two rows that may read different symbols at the same queue shape.
    Rows { a: (StateId, TapeSym), b: (StateId, TapeSym), fr: FrontRear, equation: u8 },
}

impl Witness {
    pub fn render(&self, m: &QuantumMachine) -> String {
        match self {
            Witness::Key { state, sym, fr } => {
                format!("({}, {}, {})", m.state_name(*state), sym, render_fr(m, *fr))
            }
            Witness::Pair { a, b, sym, fr, equation } => format!(
                "states ({}, {}) at ({}, {}) [eq {}]",
                m.state_name(*a),
                m.state_name(*b),
                sym,
                render_fr(m, *fr),
                equation
            ),
            Witness::Rows { a, b, fr, equation } => format!(
                "rows ({}, {}) and ({}, {}) at {} [eq {}]",
                m.state_name(a.0),
                a.1,
                m.state_name(b.0),
                b.1,
                render_fr(m, *fr),
                equation
            ),
        }
    }
}

pub fn render_fr(m: &QuantumMachine, fr: FrontRear) -> String {
    match fr {
        FrontRear::Empty => String::from("(_, _)"),
        FrontRear::Pair(a, b) => format!("({}, {})", m.queue_sym_name(a), m.queue_sym_name(b)),
    }
}

/// Combined report over all transition-table conditions.
#[derive(Clone, Debug, PartialEq)]
pub struct WellformedReport {
    pub local_probability: ConditionVerdict,
    pub orthogonality: ConditionVerdict,
    pub separability_i: ConditionVerdict,
    pub separability_ii: ConditionVerdict,
    pub separability_iii: ConditionVerdict,
    /// `None` when the table admits no head-direction function of the target
    /// state, which the simplified test requires.
    pub simplified_isometry: Option<ConditionVerdict>,
    pub warnings: Vec<String>,
}

impl WellformedReport {
    pub fn all_pass(&self) -> bool {
        self.local_probability.pass
            && self.orthogonality.pass
            && self.separability_i.pass
            && self.separability_ii.pass
            && self.separability_iii.pass
            && self.simplified_isometry.as_ref().map(|v| v.pass).unwrap_or(true)
    }

    /// One line per condition: name, verdict, residual, witness.
    pub fn render(&self, m: &QuantumMachine) -> String {
        let mut out = String::new();
        let mut line = |name: &str, v: &ConditionVerdict| {
            out.push_str(&format!(
                "{name} {} residual {:.17}{}\n",
                if v.pass { "pass" } else { "fail" },
                v.worst_residual,
                match &v.witness {
                    Some(w) => format!(" witness {}", w.render(m)),
                    None => String::new(),
                }
            ));
        };
        line("local_probability", &self.local_probability);
        line("orthogonality", &self.orthogonality);
        line("separability_I", &self.separability_i);
        line("separability_II", &self.separability_ii);
        line("separability_III", &self.separability_iii);
        match &self.simplified_isometry {
            Some(v) => line("simplified_isometry", v),
            None => out.push_str("simplified_isometry n/a (no head policy)\n"),
        }
        for w in &self.warnings {
            out.push_str(&format!("warning {w}\n"));
        }
        out
    }
}

type TargetTuple = (StateId, Option<QSym>, crate::machine::Dir, QOp);

fn row_vec(entries: &[QTrans]) -> BTreeMap<TargetTuple, Complex64> {
    entries.iter().map(|t| ((t.target, t.enqueue, t.dir, t.op), t.amp.value)).collect()
}

/// Rows grouped by (symbol, front/rear): the shapes every per-key condition
/// quantifies over.
fn groups(m: &QuantumMachine) -> BTreeMap<(TapeSym, FrontRear), Vec<(StateId, BTreeMap<TargetTuple, Complex64>)>> {
    let mut g: BTreeMap<(TapeSym, FrontRear), Vec<(StateId, BTreeMap<TargetTuple, Complex64>)>> =
        BTreeMap::new();
    for (key, entries) in &m.table {
        g.entry((key.sym, key.fr)).or_default().push((key.state, row_vec(entries)));
    }
    g
}

/// Local probability: every specified key's amplitudes must have squared
/// norms summing to 1.
pub fn check_local_probability(m: &QuantumMachine, tol: f64) -> ConditionVerdict {
    let mut v = ConditionVerdict::passing();
    for (key, entries) in &m.table {
        let sum: f64 = entries.iter().map(|t| t.amp.value.norm_sqr()).sum();
        let residual = crate::abs(sum - 1.0);
        v.record(residual, Witness::Key { state: key.state, sym: key.sym, fr: key.fr }, tol);
    }
    v
}

/// Orthogonality: rows of two distinct states at the same (symbol, front,
/// rear) must be orthogonal as vectors over (target, enqueue, direction, op).
pub fn check_orthogonality(m: &QuantumMachine, tol: f64) -> ConditionVerdict {
    let mut v = ConditionVerdict::passing();
    for ((sym, fr), rows) in groups(m) {
        for i in 0..rows.len() {
            for j in (i + 1)..rows.len() {
                let inner = dot(&rows[i].1, &rows[j].1);
                v.record(
                    inner.norm(),
                    Witness::Pair { a: rows[i].0, b: rows[j].0, sym, fr, equation: 2 },
                    tol,
                );
            }
        }
    }
    v
}

fn dot(a: &BTreeMap<TargetTuple, Complex64>, b: &BTreeMap<TargetTuple, Complex64>) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for (t, x) in a {
        if let Some(y) = b.get(t) {
            acc += x.conj() * y;
        }
    }
    acc
}

/// Cross sum between the dequeue part of `a` and the `op_b` part of `b`,
/// pairing entries that agree on (target, enqueue) and map directions through
/// `dirs` (None pairs equal directions).
fn op_cross(
    a: &BTreeMap<TargetTuple, Complex64>,
    b: &BTreeMap<TargetTuple, Complex64>,
    op_a: QOp,
    op_b: QOp,
    dirs: Option<(crate::machine::Dir, crate::machine::Dir)>,
) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for (&(q, z, d, op), x) in a {
        if op != op_a {
            continue;
        }
        let d2 = match dirs {
            None => d,
            Some((da, db)) => {
                if d != da {
                    continue;
                }
                db
            }
        };
        if let Some(y) = b.get(&(q, z, d2, op_b)) {
            acc += x.conj() * y;
        }
    }
    acc
}

/// Separability I: for distinct states reading the same symbol at the same
/// key shape, the dequeue/enqueue cross sum vanishes on its own and jointly
/// with the dequeue/dequeue sum (both quoted sums are evaluated literally).
pub fn check_separability_i(m: &QuantumMachine, tol: f64) -> ConditionVerdict {
    let mut v = ConditionVerdict::passing();
    for ((sym, fr), rows) in groups(m) {
        for (i, (qa, ra)) in rows.iter().enumerate() {
            for (j, (qb, rb)) in rows.iter().enumerate() {
                if i == j {
                    continue;
                }
                let cross = op_cross(ra, rb, QOp::Dequeue, QOp::Enqueue, None);
                let ee = op_cross(ra, rb, QOp::Dequeue, QOp::Dequeue, None);
                v.record(
                    (cross + ee).norm(),
                    Witness::Pair { a: *qa, b: *qb, sym, fr, equation: 3 },
                    tol,
                );
                v.record(cross.norm(), Witness::Pair { a: *qa, b: *qb, sym, fr, equation: 4 }, tol);
            }
        }
    }
    v
}

/// Rows grouped by front/rear only: the shapes the cross-symbol separability
/// conditions quantify over.
fn fr_groups(
    m: &QuantumMachine,
) -> BTreeMap<FrontRear, Vec<((StateId, TapeSym), BTreeMap<TargetTuple, Complex64>)>> {
    let mut g: BTreeMap<FrontRear, Vec<((StateId, TapeSym), BTreeMap<TargetTuple, Complex64>)>> =
        BTreeMap::new();
    for (key, entries) in &m.table {
        g.entry(key.fr).or_default().push(((key.state, key.sym), row_vec(entries)));
    }
    g
}

/// Separability II: right-moving and stationary parts of any two rows at the
/// same key shape may not overlap on (target, enqueue, op).
pub fn check_separability_ii(m: &QuantumMachine, tol: f64) -> ConditionVerdict {
    use crate::machine::Dir;
    let mut v = ConditionVerdict::passing();
    let acc = |a: &BTreeMap<TargetTuple, Complex64>,
               b: &BTreeMap<TargetTuple, Complex64>| {
        let mut s = Complex64::new(0.0, 0.0);
        for op in [QOp::Dequeue, QOp::Enqueue] {
            s += op_cross(a, b, op, op, Some((Dir::Right, Dir::Stay)));
        }
        s
    };
    for (fr, rows) in fr_groups(m) {
        for (ka, ra) in &rows {
            for (kb, rb) in &rows {
                let s = acc(ra, rb);
                v.record(s.norm(), Witness::Rows { a: *ka, b: *kb, fr, equation: 5 }, tol);
            }
        }
    }
    v
}

/// Separability III: the dequeue/enqueue cross sums over differing direction
/// pairs (both orders) and over equal directions must each vanish.
pub fn check_separability_iii(m: &QuantumMachine, tol: f64) -> ConditionVerdict {
    use crate::machine::Dir;
    let all = [Dir::Left, Dir::Stay, Dir::Right];
    let mut v = ConditionVerdict::passing();
    for (fr, rows) in fr_groups(m) {
        for (ka, ra) in &rows {
            for (kb, rb) in &rows {
                let mut eq6 = Complex64::new(0.0, 0.0);
                let mut eq7 = Complex64::new(0.0, 0.0);
                for d1 in all {
                    for d2 in all {
                        if d1 == d2 {
                            continue;
                        }
                        eq6 += op_cross(ra, rb, QOp::Dequeue, QOp::Enqueue, Some((d1, d2)));
                        eq7 += op_cross(ra, rb, QOp::Enqueue, QOp::Dequeue, Some((d1, d2)));
                    }
                }
                let eq8 = op_cross(ra, rb, QOp::Dequeue, QOp::Enqueue, None);
                v.record(eq6.norm(), Witness::Rows { a: *ka, b: *kb, fr, equation: 6 }, tol);
                v.record(eq7.norm(), Witness::Rows { a: *ka, b: *kb, fr, equation: 7 }, tol);
                v.record(eq8.norm(), Witness::Rows { a: *ka, b: *kb, fr, equation: 8 }, tol);
            }
        }
    }
    v
}

/// Simplified-form isometry: with head direction a function of the target
/// state, the rows at each (symbol, front, rear), viewed over (target,
/// enqueue, op), must form rows of an isometry — Gram matrix the identity.
/// Returns `None` when no head policy is derivable.
pub fn check_simplified_isometry(m: &QuantumMachine, tol: f64) -> Option<ConditionVerdict> {
    m.head_policy.as_ref()?;
    let mut v = ConditionVerdict::passing();
    for ((sym, fr), rows) in groups(m) {
        // project out the direction component (fixed by the policy)
        let projected: Vec<(StateId, BTreeMap<(StateId, Option<QSym>, QOp), Complex64>)> = rows
            .iter()
            .map(|(q, r)| {
                (*q, r.iter().map(|(&(t, z, _d, op), &a)| ((t, z, op), a)).collect())
            })
            .collect();
        for i in 0..projected.len() {
            for j in i..projected.len() {
                let mut inner = Complex64::new(0.0, 0.0);
                for (t, x) in &projected[i].1 {
                    if let Some(y) = projected[j].1.get(t) {
                        inner += x.conj() * y;
                    }
                }
                let expected = if i == j { 1.0 } else { 0.0 };
                v.record(
                    (inner - expected).norm(),
                    Witness::Pair { a: projected[i].0, b: projected[j].0, sym, fr, equation: 12 },
                    tol,
                );
            }
        }
    }
    Some(v)
}

/// Runs every per-key condition at the given tolerance.
pub fn check_all(m: &QuantumMachine, tol: f64) -> WellformedReport {
    WellformedReport {
        local_probability: check_local_probability(m, tol),
        orthogonality: check_orthogonality(m, tol),
        separability_i: check_separability_i(m, tol),
        separability_ii: check_separability_ii(m, tol),
        separability_iii: check_separability_iii(m, tol),
        simplified_isometry: check_simplified_isometry(m, tol),
        warnings: m.warnings(),
    }
}

pub fn check_all_default(m: &QuantumMachine) -> WellformedReport {
    check_all(m, STRUCTURAL_TOL)
}

/// Configuration-level diagnostics for a set of inputs.
#[derive(Clone, Debug, PartialEq)]
pub struct IsometryReport {
    /// The step map sends the dynamically reached configurations to
    /// orthonormal images.
    pub isometry_pass: bool,
    pub isometry_worst: f64,
    pub isometry_witness: Option<String>,
    /// Reached configurations with no matching transition; their mass leaks.
    pub leak_configs: usize,
    /// Whether the bounded-domain surjectivity diagnostic could run (it needs
    /// the step to be isometric on the domain).
    pub coisometry_evaluated: bool,
    pub coisometry_pass: bool,
    pub coisometry_witness: Option<String>,
}

impl IsometryReport {
    pub fn render(&self) -> String {
        let mut out = format!(
            "config_isometry {} worst {:.17}{}\n",
            if self.isometry_pass { "pass" } else { "fail" },
            self.isometry_worst,
            match &self.isometry_witness {
                Some(w) => format!(" witness {w}"),
                None => String::new(),
            }
        );
        out.push_str(&format!("leak_configs {}\n", self.leak_configs));
        if !self.coisometry_evaluated {
            out.push_str("coisometry n/a (step not isometric on bounded domain)\n");
        } else {
            out.push_str(&format!(
                "coisometry {}{}\n",
                if self.coisometry_pass { "pass" } else { "fail" },
                match &self.coisometry_witness {
                    Some(w) => format!(" witness {w}"),
                    None => String::new(),
                }
            ));
        }
        out
    }
}

fn render_config(m: &QuantumMachine, c: &Config) -> String {
    format!("({}, {}, {})", m.state_name(c.state), c.head, render_queue(m, &c.queue))
}

/// Image of one basis configuration under the step operator, or `None` when
/// no transition matches (a leak).
fn image(m: &QuantumMachine, tape: &Tape, c: &Config) -> Option<Superposition> {
    let sym = tape.get(c.head)?;
    let key = QKey { state: c.state, sym, fr: c.queue.front_rear() };
    let entries = m.transitions(&key)?;
    let mut out = Superposition::new();
    for t in entries {
        let head = match t.dir {
            crate::machine::Dir::Stay => c.head,
            crate::machine::Dir::Right => c.head + 1,
            crate::machine::Dir::Left => c.head.checked_sub(1)?,
        };
        out.add(Config { state: t.target, head, queue: c.queue.applied(t.op, t.enqueue) }, t.amp.value);
    }
    Some(out)
}

/// Worst orthonormality residual over a family of images, via shared-support
/// accumulation. Returns (worst, witness pair indices).
fn orthonormality(images: &[Superposition]) -> (f64, Option<(usize, usize)>) {
    let mut worst = 0.0f64;
    let mut witness = None;
    for (i, img) in images.iter().enumerate() {
        let r = crate::abs(img.norm_sqr() - 1.0);
        if r > worst {
            worst = r;
            witness = Some((i, i));
        }
    }
    let mut support: BTreeMap<&Config, Vec<(usize, Complex64)>> = BTreeMap::new();
    for (i, img) in images.iter().enumerate() {
        for (c, a) in &img.terms {
            support.entry(c).or_default().push((i, *a));
        }
    }
    let mut gram: BTreeMap<(usize, usize), Complex64> = BTreeMap::new();
    for hits in support.values() {
        for x in 0..hits.len() {
            for y in (x + 1)..hits.len() {
                let (i, a) = hits[x];
                let (j, b) = hits[y];
                *gram.entry((i.min(j), i.max(j))).or_insert(Complex64::new(0.0, 0.0)) +=
                    a.conj() * b;
            }
        }
    }
    for (&(i, j), inner) in &gram {
        let r = inner.norm();
        if r > worst {
            worst = r;
            witness = Some((i, j));
        }
    }
    (worst, witness)
}

/// Checks that the step operator acts isometrically on the configurations the
/// machine actually reaches on the given inputs, and separately reports a
/// surjectivity (co-isometry) diagnostic on a bounded configuration domain:
/// every domain configuration at the next head position must lie in the span
/// of the domain images, or the operator cannot be unitary there.
pub fn check_config_isometry<'a>(
    m: &QuantumMachine,
    inputs: impl IntoIterator<Item = &'a str>,
    tol: f64,
) -> Result<IsometryReport, crate::quantum::RunError> {
    let mut report = IsometryReport {
        isometry_pass: true,
        isometry_worst: 0.0,
        isometry_witness: None,
        leak_configs: 0,
        coisometry_evaluated: true,
        coisometry_pass: true,
        coisometry_witness: None,
    };
    for x in inputs {
        let tape = Tape::enclose(m, x).map_err(crate::quantum::RunError::InputNotInAlphabet)?;
        dynamic_phase(m, &tape, tol, &mut report);
        domain_phase(m, &tape, tol, &mut report);
    }
    Ok(report)
}

/// Reached-set isometry: walk the set of basis configurations the runner
/// would visit (halting targets are measured out and do not continue).
fn dynamic_phase(m: &QuantumMachine, tape: &Tape, tol: f64, report: &mut IsometryReport) {
    let mut reached: Vec<Config> = alloc::vec![Config::initial(m)];
    for _step in 0..tape.len() {
        let mut with_rows: Vec<Config> = Vec::new();
        for c in &reached {
            if image(m, tape, c).is_some() {
                with_rows.push(c.clone());
            } else {
                report.leak_configs += 1;
            }
        }
        let images: Vec<Superposition> =
            with_rows.iter().map(|c| image(m, tape, c).expect("filtered")).collect();
        let (worst, pair) = orthonormality(&images);
        if worst > report.isometry_worst {
            report.isometry_worst = worst;
        }
        if worst > tol {
            report.isometry_pass = false;
            if report.isometry_witness.is_none() {
                if let Some((i, j)) = pair {
                    report.isometry_witness = Some(format!(
                        "{} / {}",
                        render_config(m, &with_rows[i]),
                        render_config(m, &with_rows[j])
                    ));
                }
            }
        }
        let mut next: Vec<Config> = Vec::new();
        for img in &images {
            for c in img.terms.keys() {
                if !m.is_halting(c.state) && !next.contains(c) {
                    next.push(c.clone());
                }
            }
        }
        next.sort();
        reached = next;
        if reached.is_empty() {
            break;
        }
    }
}

/// Queue length bound for the co-isometry domain.
fn domain_bound(tape: &Tape) -> usize {
    tape.len().min(4)
}

/// All queue words over the machine's queue alphabet up to the bound.
fn queue_words(m: &QuantumMachine, bound: usize) -> Vec<QueueWord> {
    let n = m.queue_alphabet.len() as u16;
    let mut out: Vec<QueueWord> = alloc::vec![QueueWord::empty()];
    let mut layer: Vec<QueueWord> = alloc::vec![QueueWord::empty()];
    for _ in 0..bound {
        let mut next = Vec::new();
        for w in &layer {
            for z in 0..n {
                let mut v = w.clone();
                v.0.push(QSym(z));
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// Bounded-domain co-isometry: sources are every non-halting configuration
/// with a matching row at each position; their images must be orthonormal
/// (else the diagnostic is not evaluated) and must span every domain
/// configuration at the next position whose queue is short enough that all of
/// its potential preimages sit inside the bounded domain.
fn domain_phase(m: &QuantumMachine, tape: &Tape, tol: f64, report: &mut IsometryReport) {
    let bound = domain_bound(tape);
    let words = queue_words(m, bound);
    let non_halting: Vec<StateId> = (0..m.states.len() as u16)
        .map(StateId)
        .filter(|s| !m.is_halting(*s))
        .collect();
    let domain_at = |pos: usize| -> Vec<Config> {
        let mut v = Vec::new();
        for &s in &non_halting {
            for w in &words {
                let c = Config { state: s, head: pos, queue: w.clone() };
                if image(m, tape, &c).is_some() {
                    v.push(c);
                }
            }
        }
        v
    };
    for pos in 0..tape.len().saturating_sub(1) {
        let sources = domain_at(pos);
        if sources.is_empty() {
            continue;
        }
        let images: Vec<Superposition> =
            sources.iter().map(|c| image(m, tape, c).expect("filtered")).collect();
        let (worst, _) = orthonormality(&images);
        if worst > tol {
            report.coisometry_evaluated = false;
            return;
        }
        // index image amplitudes by successor configuration
        let mut weight: BTreeMap<&Config, f64> = BTreeMap::new();
        for img in &images {
            for (c, a) in &img.terms {
                *weight.entry(c).or_insert(0.0) += a.norm_sqr();
            }
        }
        for target in domain_at(pos + 1) {
            if target.queue.len() + 1 > bound {
                // a preimage could legally sit just outside the bounded domain
                continue;
            }
            let projection = weight.get(&target).copied().unwrap_or(0.0);
            if projection < 1.0 - tol {
                report.coisometry_pass = false;
                if report.coisometry_witness.is_none() {
                    report.coisometry_witness = Some(render_config(m, &target));
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::amp::Amp;
    use crate::machine::{Dir, QuantumMachine};
    use crate::zoo::{self, Variant};

    #[test]
    fn table_one_split_row_passes_local_probability() {
        let m = zoo::build_ml3(Variant::Corrected);
        let v = check_local_probability(&m, STRUCTURAL_TOL);
        assert!(v.pass, "worst {} at {:?}", v.worst_residual, v.witness);
    }

    #[test]
    fn short_row_fails_local_probability_by_half() {
        let mut b = QuantumMachine::builder("short");
        b.states(["q0", "q1"]).inputs(['a']).start("q0").realtime(true);
        b.row("q0", TapeSym::In('a'), None, "q1", None, Dir::Right, QOp::Enqueue, Amp::inv_sqrt(2));
        let m = b.build().unwrap();
        let v = check_local_probability(&m, STRUCTURAL_TOL);
        assert!(!v.pass);
        assert!(crate::abs(v.worst_residual - 0.5) < 1e-12);
    }

    #[test]
    fn table_literal_fails_orthogonality_at_b_split() {
        let m = zoo::build_ml3(Variant::Table);
        let v = check_orthogonality(&m, STRUCTURAL_TOL);
        assert!(!v.pass);
        match v.witness.unwrap() {
            Witness::Pair { a, b, sym, fr, .. } => {
                assert_eq!(m.state_name(a), "q0");
                assert_eq!(m.state_name(b), "q2");
                assert_eq!(sym, TapeSym::In('b'));
                assert_eq!(fr, FrontRear::Empty);
            }
            w => panic!("unexpected witness {w:?}"),
        }
    }

    #[test]
    fn disjoint_targets_are_orthogonal() {
        let m = zoo::build_mlxy(Variant::Table);
        assert!(check_orthogonality(&m, STRUCTURAL_TOL).pass);
    }

    #[test]
    fn completion_sinks_stay_orthogonal() {
        let m = zoo::build_mlxy(Variant::Table).complete().unwrap();
        assert!(check_orthogonality(&m, STRUCTURAL_TOL).pass);
        assert!(check_local_probability(&m, STRUCTURAL_TOL).pass);
    }

    #[test]
    fn separability_i_catches_shared_target_across_ops() {
        let mut b = QuantumMachine::builder("cross");
        b.states(["p", "q", "t"]).inputs(['a']).queue_syms(["A"]).start("p").realtime(true);
        b.row("p", TapeSym::In('a'), Some(("A", "A")), "t", None, Dir::Right, QOp::Dequeue, Amp::one());
        b.row("q", TapeSym::In('a'), Some(("A", "A")), "t", None, Dir::Right, QOp::Enqueue, Amp::one());
        let m = b.build().unwrap();
        let v = check_separability_i(&m, STRUCTURAL_TOL);
        assert!(!v.pass);
        assert!(crate::abs(v.worst_residual - 1.0) < 1e-12);
        // the same overlap trips the same-direction cross sum of family III
        assert!(!check_separability_iii(&m, STRUCTURAL_TOL).pass);
        // but rows at a single key with one transition each still satisfy
        // orthogonality (distinct ops are distinct coordinates there)
        assert!(check_orthogonality(&m, STRUCTURAL_TOL).pass);
    }

    #[test]
    fn realtime_machines_pass_separability_ii_vacuously() {
        let m = zoo::build_ml3(Variant::Corrected);
        let v = check_separability_ii(&m, STRUCTURAL_TOL);
        assert!(v.pass);
        assert_eq!(v.worst_residual, 0.0);
    }

    #[test]
    fn counterexample_machine_passes_per_key_checks() {
        let m = zoo::build_thm1_counterexample();
        let r = check_all_default(&m);
        assert!(r.all_pass(), "{}", r.render(&m));
    }

    #[test]
    fn simplified_isometry_verdicts() {
        // every row pair of the comparison machine lands on distinct
        // (target, enqueue, op) tuples, so its Gram matrices are identities
        let m = zoo::build_mlxy(Variant::Corrected);
        let v = check_simplified_isometry(&m, STRUCTURAL_TOL).expect("policy derivable");
        assert!(v.pass, "worst {} at {:?}", v.worst_residual, v.witness);

        // the union machine's q0/q2 rows at (b, _, _) coincide: off-diagonal 1
        let m = zoo::build_ml3(Variant::Table);
        let v = check_simplified_isometry(&m, STRUCTURAL_TOL).expect("policy derivable");
        assert!(!v.pass);

        // a single-row key is trivially isometric
        let mut b = QuantumMachine::builder("one");
        b.states(["q0"]).inputs(['a']).start("q0").realtime(true);
        b.row("q0", TapeSym::In('a'), None, "q0", None, Dir::Right, QOp::Enqueue, Amp::one());
        let m = b.build().unwrap();
        assert!(check_simplified_isometry(&m, STRUCTURAL_TOL).unwrap().pass);
    }

    #[test]
    fn ml3_reached_isometry_passes_despite_orthogonality_failure() {
        let m = zoo::build_ml3(Variant::Corrected);
        assert!(!check_orthogonality(&m, STRUCTURAL_TOL).pass);
        let inputs: Vec<String> = zoo::enumerate_strings(&['a', 'b', 'c'], 4).unwrap().collect();
        let refs: Vec<&str> = inputs.iter().map(|s| s.as_str()).collect();
        let rep = check_config_isometry(&m, refs.iter().copied(), STRUCTURAL_TOL).unwrap();
        assert!(rep.isometry_pass, "worst {} at {:?}", rep.isometry_worst, rep.isometry_witness);
        assert_eq!(rep.leak_configs, 0);
    }

    #[test]
    fn counterexample_is_isometric_but_not_coisometric() {
        let m = zoo::build_thm1_counterexample();
        let rep = check_config_isometry(&m, ["a", "aa"], STRUCTURAL_TOL).unwrap();
        assert!(rep.isometry_pass);
        assert!(rep.coisometry_evaluated);
        assert!(!rep.coisometry_pass);
        assert!(rep.coisometry_witness.is_some());
    }

    #[test]
    fn empty_input_set_is_vacuous() {
        let m = zoo::build_ml3(Variant::Corrected);
        let rep = check_config_isometry(&m, core::iter::empty(), STRUCTURAL_TOL).unwrap();
        assert!(rep.isometry_pass && rep.coisometry_pass);
    }
}
