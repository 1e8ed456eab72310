//! The MIO data model: action names, signatures, states, transitions and
//! the transition system itself, together with well-formedness checking,
//! reachability, composability and the queue-renaming operation.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

/// Suffix appended to an output action when it is redirected into an output
/// queue. Reserved: user-authored action names must not end in it, which
/// keeps the renaming injective.
pub const ENQUEUE_SUFFIX: &str = "__enq";

/// Separator between the two component names of a product state. Reserved:
/// user-authored state ids must not contain it.
pub const PRODUCT_SEPARATOR: char = '.';

#[derive(Debug, Error, PartialEq, Eq)]
pub enum NameError {
    #[error("empty identifier")]
    Empty,
    #[error("`{0}` is not an identifier ([A-Za-z_][A-Za-z0-9_]*)")]
    NotAnIdentifier(String),
    #[error("`{0}` ends in the reserved suffix `{ENQUEUE_SUFFIX}`")]
    ReservedSuffix(String),
    #[error("`{0}` contains `{PRODUCT_SEPARATOR}`, which is reserved for product states")]
    ReservedSeparator(String),
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// The name of an input, output or internal action.
///
/// User-authored names are plain identifiers and must not end in
/// [`ENQUEUE_SUFFIX`]; enqueue actions (`n__enq` for an output `n` that has
/// been redirected into a queue) are only minted by the library itself.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct ActionName(String);

impl ActionName {
    /// Validates a user-authored action name.
    pub fn new(name: impl Into<String>) -> Result<Self, NameError> {
        let name = name.into();
        if name.is_empty() {
            return Err(NameError::Empty);
        }
        if !is_identifier(&name) {
            return Err(NameError::NotAnIdentifier(name));
        }
        if name.ends_with(ENQUEUE_SUFFIX) {
            return Err(NameError::ReservedSuffix(name));
        }
        Ok(ActionName(name))
    }

    /// Builds an action name without any shape checks. Shape violations are
    /// reported by [`Mio::validate`] rather than at construction time.
    pub fn new_unchecked(name: impl Into<String>) -> Self {
        ActionName(name.into())
    }

    /// The enqueue action `n__enq` for this action `n`.
    pub fn enqueue(&self) -> ActionName {
        ActionName(format!("{}{}", self.0, ENQUEUE_SUFFIX))
    }

    /// True if this is an enqueue action minted by [`ActionName::enqueue`].
    pub fn is_enqueue(&self) -> bool {
        self.0.ends_with(ENQUEUE_SUFFIX)
    }

    /// For an enqueue action `n__enq`, the original action `n`.
    pub fn enqueue_base(&self) -> Option<ActionName> {
        self.0
            .strip_suffix(ENQUEUE_SUFFIX)
            .map(|b| ActionName(b.to_string()))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// A name is well shaped if it is a plain identifier, or the enqueue
    /// form of a plain identifier.
    fn is_well_shaped(&self) -> bool {
        match self.enqueue_base() {
            Some(base) => is_identifier(base.as_str()) && !base.is_enqueue(),
            None => is_identifier(&self.0),
        }
    }
}

impl fmt::Display for ActionName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// The id of a state.
///
/// User-authored ids must not contain [`PRODUCT_SEPARATOR`]; composite
/// states of a product are rendered `left.right`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct StateId(String);

impl StateId {
    /// Validates a user-authored state id.
    pub fn new(id: impl Into<String>) -> Result<Self, NameError> {
        let id = id.into();
        if id.is_empty() {
            return Err(NameError::Empty);
        }
        if id.contains(PRODUCT_SEPARATOR) {
            return Err(NameError::ReservedSeparator(id));
        }
        Ok(StateId(id))
    }

    /// Builds a state id without the separator check. Used for
    /// machine-generated product states and by the parser in generated mode.
    pub fn new_unchecked(id: impl Into<String>) -> Self {
        StateId(id.into())
    }

    /// The composite state `left.right` of a product.
    pub fn product(left: &StateId, right: &StateId) -> StateId {
        StateId(format!("{}{}{}", left.0, PRODUCT_SEPARATOR, right.0))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for StateId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// The kind of an action within a signature.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Kind {
    Input,
    Output,
    Internal,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Kind::Input => f.write_str("input"),
            Kind::Output => f.write_str("output"),
            Kind::Internal => f.write_str("internal"),
        }
    }
}

/// An action alphabet partitioned into inputs, outputs and internal actions.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Signature {
    pub inputs: BTreeSet<ActionName>,
    pub outputs: BTreeSet<ActionName>,
    pub internals: BTreeSet<ActionName>,
}

impl Signature {
    pub fn new(
        inputs: BTreeSet<ActionName>,
        outputs: BTreeSet<ActionName>,
        internals: BTreeSet<ActionName>,
    ) -> Self {
        Signature { inputs, outputs, internals }
    }

    /// All actions of the signature, ignoring the partition.
    pub fn actions(&self) -> BTreeSet<ActionName> {
        self.inputs
            .iter()
            .chain(self.outputs.iter())
            .chain(self.internals.iter())
            .cloned()
            .collect()
    }

    pub fn contains(&self, action: &ActionName) -> bool {
        self.kind_of(action).is_some()
    }

    /// The kind of `action`, if it belongs to the signature. When the
    /// partitions overlap (an invalid signature), input wins over output
    /// wins over internal.
    pub fn kind_of(&self, action: &ActionName) -> Option<Kind> {
        if self.inputs.contains(action) {
            Some(Kind::Input)
        } else if self.outputs.contains(action) {
            Some(Kind::Output)
        } else if self.internals.contains(action) {
            Some(Kind::Internal)
        } else {
            None
        }
    }

    /// The pairs of distinct partitions that share an action.
    fn overlaps(&self) -> Vec<(Kind, Kind, ActionName)> {
        let mut out = Vec::new();
        for a in self.inputs.intersection(&self.outputs) {
            out.push((Kind::Input, Kind::Output, a.clone()));
        }
        for a in self.inputs.intersection(&self.internals) {
            out.push((Kind::Input, Kind::Internal, a.clone()));
        }
        for a in self.outputs.intersection(&self.internals) {
            out.push((Kind::Output, Kind::Internal, a.clone()));
        }
        out
    }
}

/// Whether a transition is merely allowed or also required.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Modality {
    May,
    Must,
}

impl fmt::Display for Modality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Modality::May => f.write_str("may"),
            Modality::Must => f.write_str("must"),
        }
    }
}

/// A single labelled transition. Its modality is given by membership in the
/// owning MIO's `may`/`must` relations.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Transition {
    pub source: StateId,
    pub action: ActionName,
    pub target: StateId,
}

impl Transition {
    pub fn new(source: StateId, action: ActionName, target: StateId) -> Self {
        Transition { source, action, target }
    }
}

impl fmt::Display for Transition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -{}-> {}", self.source, self.action, self.target)
    }
}

/// A single well-formedness violation found by [`Mio::validate`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Violation {
    /// The start state is not a member of the state set.
    StartNotAState { start: StateId },
    /// A must-transition is missing from the may relation.
    MustNotSubsetOfMay { transition: Transition },
    /// A transition endpoint is not a member of the state set.
    DanglingState { transition: Transition, state: StateId },
    /// A transition action is not in the signature.
    UnknownAction { transition: Transition },
    /// An action occurs in two partitions of the signature.
    SignatureOverlap { first: Kind, second: Kind, action: ActionName },
    /// An action whose name is not an identifier, or which misuses the
    /// reserved enqueue suffix (e.g. a doubled suffix).
    MalformedActionName { action: ActionName },
    /// An empty state id.
    EmptyStateId,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::StartNotAState { start } => {
                write!(f, "start state `{start}` is not in the state set")
            }
            Violation::MustNotSubsetOfMay { transition } => {
                write!(f, "must not subset of may: `{transition}`")
            }
            Violation::DanglingState { transition, state } => {
                write!(f, "transition `{transition}` uses unknown state `{state}`")
            }
            Violation::UnknownAction { transition } => {
                write!(f, "transition `{transition}` uses an action not in the signature")
            }
            Violation::SignatureOverlap { first, second, action } => {
                write!(f, "signature partitions overlap: `{action}` is both {first} and {second}")
            }
            Violation::MalformedActionName { action } => {
                write!(f, "malformed action name `{action}` (identifier or reserved-suffix misuse)")
            }
            Violation::EmptyStateId => f.write_str("empty state id"),
        }
    }
}

/// A modal I/O transition system: states, a start state, a partitioned
/// action signature, and may/must transition relations with must ⊆ may.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Mio {
    pub name: String,
    pub states: BTreeSet<StateId>,
    pub start: StateId,
    pub signature: Signature,
    pub may: BTreeSet<Transition>,
    pub must: BTreeSet<Transition>,
}

impl Mio {
    /// Assembles a MIO without checking well-formedness; violations are
    /// reported by [`Mio::validate`] rather than raised here.
    pub fn new(
        name: impl Into<String>,
        states: BTreeSet<StateId>,
        start: StateId,
        signature: Signature,
        may: BTreeSet<Transition>,
        must: BTreeSet<Transition>,
    ) -> Self {
        Mio { name: name.into(), states, start, signature, may, must }
    }

    pub fn builder(name: impl Into<String>) -> MioBuilder {
        MioBuilder::new(name)
    }

    /// Checks every well-formedness invariant and reports each breach.
    /// The report is empty exactly when the MIO is valid.
    pub fn validate(&self) -> Vec<Violation> {
        let mut report = Vec::new();
        if !self.states.contains(&self.start) {
            report.push(Violation::StartNotAState { start: self.start.clone() });
        }
        for state in &self.states {
            if state.as_str().is_empty() {
                report.push(Violation::EmptyStateId);
            }
        }
        for (first, second, action) in self.signature.overlaps() {
            report.push(Violation::SignatureOverlap { first, second, action });
        }
        for action in self.signature.actions() {
            if !action.is_well_shaped() {
                report.push(Violation::MalformedActionName { action });
            }
        }
        for t in &self.must {
            if !self.may.contains(t) {
                report.push(Violation::MustNotSubsetOfMay { transition: t.clone() });
            }
        }
        for t in &self.may {
            for state in [&t.source, &t.target] {
                if !self.states.contains(state) {
                    report.push(Violation::DanglingState {
                        transition: t.clone(),
                        state: state.clone(),
                    });
                }
            }
            if !self.signature.contains(&t.action) {
                report.push(Violation::UnknownAction { transition: t.clone() });
            }
        }
        // Must-transitions outside may are already reported above; avoid
        // duplicating the endpoint/action checks for them.
        for t in self.must.difference(&self.may) {
            for state in [&t.source, &t.target] {
                if !self.states.contains(state) {
                    report.push(Violation::DanglingState {
                        transition: t.clone(),
                        state: state.clone(),
                    });
                }
            }
            if !self.signature.contains(&t.action) {
                report.push(Violation::UnknownAction { transition: t.clone() });
            }
        }
        report
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    /// The states reachable from the start via may-transitions.
    pub fn reachable(&self) -> BTreeSet<StateId> {
        let mut successors: BTreeMap<&StateId, Vec<&StateId>> = BTreeMap::new();
        for t in &self.may {
            successors.entry(&t.source).or_default().push(&t.target);
        }
        let mut seen: BTreeSet<StateId> = BTreeSet::new();
        let mut queue: VecDeque<&StateId> = VecDeque::new();
        seen.insert(self.start.clone());
        queue.push_back(&self.start);
        while let Some(state) = queue.pop_front() {
            if let Some(next) = successors.get(state) {
                for target in next {
                    if seen.insert((*target).clone()) {
                        queue.push_back(target);
                    }
                }
            }
        }
        seen
    }

    /// Two MIOs are composable when their alphabets overlap only on
    /// complementary types: every shared action is an input of one and an
    /// output of the other.
    pub fn composable(&self, other: &Mio) -> bool {
        let own = self.signature.actions();
        let theirs = other.signature.actions();
        own.intersection(&theirs).all(|a| {
            (self.signature.inputs.contains(a) && other.signature.outputs.contains(a))
                || (other.signature.inputs.contains(a) && self.signature.outputs.contains(a))
        })
    }

    /// The shared alphabet of two composable MIOs.
    pub fn shared_actions(&self, other: &Mio) -> Result<BTreeSet<ActionName>, NotComposable> {
        if !self.composable(other) {
            return Err(NotComposable { left: self.name.clone(), right: other.name.clone() });
        }
        Ok(self
            .signature
            .actions()
            .intersection(&other.signature.actions())
            .cloned()
            .collect())
    }

    /// Renames each output in `o` to its enqueue action `n__enq`, leaving
    /// everything else untouched. This is the sender half of the output
    /// queue construction.
    pub fn rename_for_queue(&self, o: &BTreeSet<ActionName>) -> Result<Mio, RenameError> {
        for n in o {
            if !self.signature.outputs.contains(n) {
                return Err(RenameError::NotAnOutput { action: n.clone(), mio: self.name.clone() });
            }
            let enq = n.enqueue();
            if self.signature.contains(&enq) {
                return Err(RenameError::EnqueueCollision { action: enq });
            }
        }
        let rename = |a: &ActionName| -> ActionName {
            if o.contains(a) {
                a.enqueue()
            } else {
                a.clone()
            }
        };
        let relabel = |set: &BTreeSet<Transition>| -> BTreeSet<Transition> {
            set.iter()
                .map(|t| Transition::new(t.source.clone(), rename(&t.action), t.target.clone()))
                .collect()
        };
        let outputs = self.signature.outputs.iter().map(rename).collect();
        Ok(Mio {
            name: format!("{}_enq", self.name),
            states: self.states.clone(),
            start: self.start.clone(),
            signature: Signature::new(
                self.signature.inputs.clone(),
                outputs,
                self.signature.internals.clone(),
            ),
            may: relabel(&self.may),
            must: relabel(&self.must),
        })
    }

    /// Outgoing may-transitions of `state`.
    pub fn may_from<'a>(&'a self, state: &'a StateId) -> impl Iterator<Item = &'a Transition> {
        self.may.iter().filter(move |t| &t.source == state)
    }

    /// Outgoing must-transitions of `state`.
    pub fn must_from<'a>(&'a self, state: &'a StateId) -> impl Iterator<Item = &'a Transition> {
        self.must.iter().filter(move |t| &t.source == state)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("`{left}` and `{right}` are not composable")]
pub struct NotComposable {
    pub left: String,
    pub right: String,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RenameError {
    #[error("`{action}` is not an output of `{mio}`")]
    NotAnOutput { action: ActionName, mio: String },
    #[error("renaming would collide with existing action `{action}`")]
    EnqueueCollision { action: ActionName },
}

/// Convenience builder for assembling MIOs in code. `build` validates and
/// fails on any violation, so everything it returns is well formed.
#[derive(Debug, Clone)]
pub struct MioBuilder {
    name: String,
    states: BTreeSet<StateId>,
    start: Option<StateId>,
    inputs: BTreeSet<ActionName>,
    outputs: BTreeSet<ActionName>,
    internals: BTreeSet<ActionName>,
    may: BTreeSet<Transition>,
    must: BTreeSet<Transition>,
}

impl MioBuilder {
    pub fn new(name: impl Into<String>) -> Self {
        MioBuilder {
            name: name.into(),
            states: BTreeSet::new(),
            start: None,
            inputs: BTreeSet::new(),
            outputs: BTreeSet::new(),
            internals: BTreeSet::new(),
            may: BTreeSet::new(),
            must: BTreeSet::new(),
        }
    }

    pub fn inputs<I: IntoIterator<Item = S>, S: Into<String>>(mut self, names: I) -> Self {
        self.inputs.extend(names.into_iter().map(|n| ActionName::new_unchecked(n.into())));
        self
    }

    pub fn outputs<I: IntoIterator<Item = S>, S: Into<String>>(mut self, names: I) -> Self {
        self.outputs.extend(names.into_iter().map(|n| ActionName::new_unchecked(n.into())));
        self
    }

    pub fn internals<I: IntoIterator<Item = S>, S: Into<String>>(mut self, names: I) -> Self {
        self.internals.extend(names.into_iter().map(|n| ActionName::new_unchecked(n.into())));
        self
    }

    pub fn states<I: IntoIterator<Item = S>, S: Into<String>>(mut self, ids: I) -> Self {
        self.states.extend(ids.into_iter().map(|s| StateId::new_unchecked(s.into())));
        self
    }

    pub fn start(mut self, id: impl Into<String>) -> Self {
        self.start = Some(StateId::new_unchecked(id.into()));
        self
    }

    /// Adds a may-only transition.
    pub fn may(mut self, source: &str, action: &str, target: &str) -> Self {
        self.may.insert(Transition::new(
            StateId::new_unchecked(source),
            ActionName::new_unchecked(action),
            StateId::new_unchecked(target),
        ));
        self
    }

    /// Adds a must-transition (and, as required, the matching may).
    pub fn must(mut self, source: &str, action: &str, target: &str) -> Self {
        let t = Transition::new(
            StateId::new_unchecked(source),
            ActionName::new_unchecked(action),
            StateId::new_unchecked(target),
        );
        self.may.insert(t.clone());
        self.must.insert(t);
        self
    }

    pub fn build(self) -> Result<Mio, Vec<Violation>> {
        let start = match self.start {
            Some(s) => s,
            None => return Err(vec![Violation::EmptyStateId]),
        };
        let mio = Mio::new(
            self.name,
            self.states,
            start,
            Signature::new(self.inputs, self.outputs, self.internals),
            self.may,
            self.must,
        );
        let report = mio.validate();
        if report.is_empty() {
            Ok(mio)
        } else {
            Err(report)
        }
    }
}

/// Small machines shared across the crate's unit tests.
#[cfg(test)]
pub(crate) mod fixtures {
    use super::Mio;

    /// The cyclic sender of the handshake example: emits `n`, awaits `m`.
    pub(crate) fn handshake_s() -> Mio {
        Mio::builder("S")
            .inputs(["m"])
            .outputs(["n"])
            .states(["start_S", "s"])
            .start("start_S")
            .must("start_S", "n", "s")
            .must("s", "m", "start_S")
            .build()
            .unwrap()
    }

    /// Its partner: emits `m`, awaits `n`.
    pub(crate) fn handshake_t() -> Mio {
        Mio::builder("T")
            .inputs(["n"])
            .outputs(["m"])
            .states(["start_T", "t"])
            .start("start_T")
            .must("start_T", "m", "t")
            .must("t", "n", "start_T")
            .build()
            .unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::{handshake_s, handshake_t};
    use super::*;

    #[test]
    fn action_name_rejects_bad_shapes() {
        assert_eq!(ActionName::new(""), Err(NameError::Empty));
        assert!(matches!(ActionName::new("9x"), Err(NameError::NotAnIdentifier(_))));
        assert!(matches!(ActionName::new("a-b"), Err(NameError::NotAnIdentifier(_))));
        assert!(matches!(ActionName::new("n__enq"), Err(NameError::ReservedSuffix(_))));
        assert!(ActionName::new("n_enq").is_ok());
        assert!(ActionName::new("_x9").is_ok());
    }

    #[test]
    fn enqueue_round_trip() {
        let n = ActionName::new("n").unwrap();
        let enq = n.enqueue();
        assert_eq!(enq.as_str(), "n__enq");
        assert!(enq.is_enqueue());
        assert_eq!(enq.enqueue_base(), Some(n));
    }

    #[test]
    fn state_id_rejects_separator() {
        assert!(matches!(StateId::new("a.b"), Err(NameError::ReservedSeparator(_))));
        assert!(StateId::new("a_b").is_ok());
        assert_eq!(StateId::new(""), Err(NameError::Empty));
    }

    #[test]
    fn validate_handshake_machines_clean() {
        assert!(handshake_s().validate().is_empty());
        assert!(handshake_t().validate().is_empty());
    }

    #[test]
    fn validate_reports_must_not_subset_of_may() {
        let t = Transition::new(
            StateId::new_unchecked("a"),
            ActionName::new_unchecked("x"),
            StateId::new_unchecked("a"),
        );
        let mut states = BTreeSet::new();
        states.insert(StateId::new_unchecked("a"));
        let mut must = BTreeSet::new();
        must.insert(t.clone());
        let sig = Signature::new(
            BTreeSet::new(),
            [ActionName::new_unchecked("x")].into_iter().collect(),
            BTreeSet::new(),
        );
        let m = Mio::new("m", states, StateId::new_unchecked("a"), sig, BTreeSet::new(), must);
        let report = m.validate();
        assert_eq!(report, vec![Violation::MustNotSubsetOfMay { transition: t }]);
    }

    #[test]
    fn validate_reports_signature_overlap() {
        let x = ActionName::new_unchecked("x");
        let sig = Signature::new(
            [x.clone()].into_iter().collect(),
            [x.clone()].into_iter().collect(),
            BTreeSet::new(),
        );
        let mut states = BTreeSet::new();
        states.insert(StateId::new_unchecked("a"));
        let m = Mio::new(
            "m",
            states,
            StateId::new_unchecked("a"),
            sig,
            BTreeSet::new(),
            BTreeSet::new(),
        );
        let report = m.validate();
        assert_eq!(
            report,
            vec![Violation::SignatureOverlap { first: Kind::Input, second: Kind::Output, action: x }]
        );
    }

    #[test]
    fn validate_reports_dangling_and_unknown() {
        let m = Mio::builder("m")
            .states(["a"])
            .start("a")
            .outputs(["x"])
            .may("a", "x", "ghost")
            .may("a", "y", "a")
            .build()
            .unwrap_err();
        assert!(m.iter().any(|v| matches!(v, Violation::DanglingState { .. })));
        assert!(m.iter().any(|v| matches!(v, Violation::UnknownAction { .. })));
    }

    #[test]
    fn validate_flags_malformed_enqueue_names() {
        let m = Mio::builder("m")
            .states(["a"])
            .start("a")
            .outputs(["x__enq__enq"])
            .build()
            .unwrap_err();
        assert!(m.iter().any(|v| matches!(v, Violation::MalformedActionName { .. })));
        // A single well-formed enqueue suffix is machine territory, not a
        // violation: queue machines carry such names by construction.
        let ok = Mio::builder("m").states(["a"]).start("a").outputs(["x__enq"]).build();
        assert!(ok.is_ok());
    }

    #[test]
    fn reachable_single_state() {
        let m = Mio::builder("m").states(["a"]).start("a").build().unwrap();
        let r = m.reachable();
        assert_eq!(r.len(), 1);
        assert!(r.contains(&StateId::new_unchecked("a")));
    }

    #[test]
    fn reachable_handshake_sender() {
        let s = handshake_s();
        let r = s.reachable();
        assert_eq!(r.len(), 2);
        assert!(r.contains(&StateId::new_unchecked("start_S")));
        assert!(r.contains(&StateId::new_unchecked("s")));
    }

    #[test]
    fn reachable_excludes_disconnected_state() {
        let m = Mio::builder("m")
            .states(["a", "b", "island"])
            .start("a")
            .outputs(["x"])
            .must("a", "x", "b")
            .build()
            .unwrap();
        let r = m.reachable();
        assert!(!r.contains(&StateId::new_unchecked("island")));
        assert_eq!(r.len(), 2);
    }

    #[test]
    fn composable_handshake_pair() {
        assert!(handshake_s().composable(&handshake_t()));
        assert!(handshake_t().composable(&handshake_s()));
    }

    #[test]
    fn composable_rejects_same_kind_overlap() {
        let a = Mio::builder("a").states(["x"]).start("x").outputs(["n"]).build().unwrap();
        let b = Mio::builder("b").states(["y"]).start("y").outputs(["n"]).build().unwrap();
        assert!(!a.composable(&b));
    }

    #[test]
    fn composable_disjoint_alphabets() {
        let a = Mio::builder("a").states(["x"]).start("x").outputs(["n"]).build().unwrap();
        let b = Mio::builder("b").states(["y"]).start("y").inputs(["k"]).build().unwrap();
        assert!(a.composable(&b));
        assert!(a.shared_actions(&b).unwrap().is_empty());
    }

    #[test]
    fn shared_actions_handshake() {
        let shared = handshake_s().shared_actions(&handshake_t()).unwrap();
        let names: Vec<&str> = shared.iter().map(|a| a.as_str()).collect();
        assert_eq!(names, vec!["m", "n"]);
    }

    #[test]
    fn shared_actions_partial_overlap() {
        let s = Mio::builder("s").states(["x"]).start("x").outputs(["a", "b"]).build().unwrap();
        let t = Mio::builder("t").states(["y"]).start("y").inputs(["a"]).build().unwrap();
        let shared = s.shared_actions(&t).unwrap();
        assert_eq!(shared.len(), 1);
        assert!(shared.contains(&ActionName::new_unchecked("a")));
    }

    #[test]
    fn shared_actions_errors_when_not_composable() {
        let a = Mio::builder("a").states(["x"]).start("x").outputs(["n"]).build().unwrap();
        let b = Mio::builder("b").states(["y"]).start("y").outputs(["n"]).build().unwrap();
        assert!(a.shared_actions(&b).is_err());
    }

    #[test]
    fn rename_for_queue_relabels_outputs() {
        let s = handshake_s();
        let o: BTreeSet<ActionName> = [ActionName::new_unchecked("n")].into_iter().collect();
        let renamed = s.rename_for_queue(&o).unwrap();
        assert!(renamed.signature.outputs.contains(&ActionName::new_unchecked("n__enq")));
        assert!(!renamed.signature.outputs.contains(&ActionName::new_unchecked("n")));
        assert_eq!(renamed.signature.inputs, s.signature.inputs);
        assert_eq!(renamed.states, s.states);
        assert_eq!(renamed.start, s.start);
        assert_eq!(renamed.may.len(), s.may.len());
        assert_eq!(renamed.must.len(), s.must.len());
        assert!(renamed
            .may
            .contains(&Transition::new(
                StateId::new_unchecked("start_S"),
                ActionName::new_unchecked("n__enq"),
                StateId::new_unchecked("s"),
            )));
        assert!(renamed.is_valid());
    }

    #[test]
    fn rename_for_queue_empty_set_is_identity() {
        let s = handshake_s();
        let renamed = s.rename_for_queue(&BTreeSet::new()).unwrap();
        assert_eq!(renamed.signature, s.signature);
        assert_eq!(renamed.may, s.may);
        assert_eq!(renamed.must, s.must);
    }

    #[test]
    fn rename_for_queue_rejects_non_output() {
        let s = handshake_s();
        let o: BTreeSet<ActionName> = [ActionName::new_unchecked("m")].into_iter().collect();
        assert!(matches!(s.rename_for_queue(&o), Err(RenameError::NotAnOutput { .. })));
    }

    #[test]
    fn rename_for_queue_rejects_collision() {
        let s = Mio::builder("s")
            .states(["x"])
            .start("x")
            .outputs(["n"])
            .internals(["n__enq"])
            .build()
            .unwrap();
        let o: BTreeSet<ActionName> = [ActionName::new_unchecked("n")].into_iter().collect();
        assert!(matches!(s.rename_for_queue(&o), Err(RenameError::EnqueueCollision { .. })));
    }
}
