//! Queue words and the two queue operations of the quantum model.
//!
//! Queue symbols are interned per machine: a [`QSym`] is an index into the
//! machine's declared queue alphabet. The empty queue symbol (printed `_` in
//! machine files) and the empty word (printed `-`) are not queue symbols; they
//! are represented by [`FrontRear::Empty`] and `Option::<QSym>::None`
//! respectively and can never be stored inside a [`QueueWord`].

use alloc::vec::Vec;

/// Interned queue symbol: an index into the machine's queue alphabet.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QSym(pub u16);

/// The front/rear pair a transition keys on. An empty queue is keyed by the
/// dedicated [`FrontRear::Empty`] shape; `(empty, z)` mixes are illegal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FrontRear {
    /// Both slots hold the empty queue symbol.
    Empty,
    /// Front and rear symbols of a nonempty queue (equal for singletons).
    Pair(QSym, QSym),
}

/// The two queue operations: enqueue keeps the front, dequeue removes it;
/// both may append a symbol at the rear.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum QOp {
    Enqueue,
    Dequeue,
}

/// A finite queue word; index 0 is the front, the last element the rear.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QueueWord(pub Vec<QSym>);

impl QueueWord {
    pub fn empty() -> Self {
        QueueWord(Vec::new())
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// The key shape this queue exposes to transitions: `Empty` for the empty
    /// queue, otherwise the (front, rear) pair — equal symbols for singletons.
    pub fn front_rear(&self) -> FrontRear {
        match (self.0.first(), self.0.last()) {
            (Some(&f), Some(&r)) => FrontRear::Pair(f, r),
            _ => FrontRear::Empty,
        }
    }

    /// Applies a queue operation. Enqueue appends `append` at the rear (if
    /// any); dequeue removes the front element and then appends. Dequeue on an
    /// empty queue leaves the queue untouched: the reference machines use
    /// dequeue rows keyed on the empty queue, so this case must be legal.
    pub fn apply(&mut self, op: QOp, append: Option<QSym>) {
        if op == QOp::Dequeue && !self.0.is_empty() {
            self.0.remove(0);
        }
        if let Some(z) = append {
            self.0.push(z);
        }
    }

    /// Non-mutating [`QueueWord::apply`].
    pub fn applied(&self, op: QOp, append: Option<QSym>) -> QueueWord {
        let mut q = self.clone();
        q.apply(op, append);
        q
    }
}

impl FromIterator<QSym> for QueueWord {
    fn from_iter<T: IntoIterator<Item = QSym>>(iter: T) -> Self {
        QueueWord(iter.into_iter().collect())
    }
}
