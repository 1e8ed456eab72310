//! Composition operators: the synchronous product, the bounded FIFO queue
//! MIO, the output-queue extension, and asynchronous composition (the
//! synchronous product of both components' output-queue extensions).
//!
//! All products are built restricted to the states reachable from the start
//! pair; the full Cartesian state set is never materialized. Queues are
//! truncated at a finite capacity; the states where the truncation removed
//! an enqueue are reported as saturation metadata so that downstream
//! verdicts can tell exact results from bounded ones.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::Serialize;
use thiserror::Error;

use crate::core::{ActionName, Mio, Modality, NotComposable, RenameError, Signature, StateId, Transition};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ComposeError {
    #[error(transparent)]
    NotComposable(#[from] NotComposable),
    #[error(transparent)]
    Rename(#[from] RenameError),
    #[error("queue capacity must be at least 1, got {0}")]
    InvalidCapacity(usize),
    #[error("queue alphabet contains reserved name `{0}`")]
    ReservedQueueAction(ActionName),
}

/// A synchronous product together with the decomposition of each product
/// state into its factor states.
#[derive(Debug, Clone)]
pub struct SyncProduct {
    pub mio: Mio,
    pairs: BTreeMap<StateId, (StateId, StateId)>,
}

impl SyncProduct {
    /// The factor states of a product state.
    pub fn factors(&self, state: &StateId) -> Option<&(StateId, StateId)> {
        self.pairs.get(state)
    }

    pub fn pairs(&self) -> &BTreeMap<StateId, (StateId, StateId)> {
        &self.pairs
    }
}

/// Successor enumeration for the synchronous product of two composable
/// MIOs, without materializing the product.
pub(crate) struct PairExplorer<'a> {
    pub left: &'a Mio,
    pub right: &'a Mio,
    shared: BTreeSet<ActionName>,
    left_may: BTreeMap<&'a StateId, Vec<&'a Transition>>,
    right_may: BTreeMap<&'a StateId, Vec<&'a Transition>>,
}

impl<'a> PairExplorer<'a> {
    pub fn new(left: &'a Mio, right: &'a Mio) -> Result<Self, NotComposable> {
        let shared = left.shared_actions(right)?;
        let mut left_may: BTreeMap<&StateId, Vec<&Transition>> = BTreeMap::new();
        for t in &left.may {
            left_may.entry(&t.source).or_default().push(t);
        }
        let mut right_may: BTreeMap<&StateId, Vec<&Transition>> = BTreeMap::new();
        for t in &right.may {
            right_may.entry(&t.source).or_default().push(t);
        }
        Ok(PairExplorer { left, right, shared, left_may, right_may })
    }

    pub fn shared(&self) -> &BTreeSet<ActionName> {
        &self.shared
    }

    pub fn start(&self) -> (StateId, StateId) {
        (self.left.start.clone(), self.right.start.clone())
    }

    /// All may-successors of a product state, in deterministic order, with
    /// the modality the transition takes in the product.
    pub fn successors(&self, pair: &(StateId, StateId)) -> Vec<(ActionName, Modality, (StateId, StateId))> {
        let (ls, rs) = pair;
        let empty = Vec::new();
        let louts = self.left_may.get(ls).unwrap_or(&empty);
        let routs = self.right_may.get(rs).unwrap_or(&empty);
        let mut out = Vec::new();
        for lt in louts {
            if self.shared.contains(&lt.action) {
                for rt in routs.iter().filter(|rt| rt.action == lt.action) {
                    let must = self.left.must.contains(lt) && self.right.must.contains(rt);
                    out.push((
                        lt.action.clone(),
                        if must { Modality::Must } else { Modality::May },
                        (lt.target.clone(), rt.target.clone()),
                    ));
                }
            } else {
                let must = self.left.must.contains(lt);
                out.push((
                    lt.action.clone(),
                    if must { Modality::Must } else { Modality::May },
                    (lt.target.clone(), rs.clone()),
                ));
            }
        }
        for rt in routs {
            if !self.shared.contains(&rt.action) {
                let must = self.right.must.contains(rt);
                out.push((
                    rt.action.clone(),
                    if must { Modality::Must } else { Modality::May },
                    (ls.clone(), rt.target.clone()),
                ));
            }
        }
        out.sort();
        out.dedup();
        out
    }

    /// The signature of the product: shared actions become internal.
    pub fn product_signature(&self) -> Signature {
        let inputs = self
            .left
            .signature
            .inputs
            .union(&self.right.signature.inputs)
            .filter(|a| !self.shared.contains(a))
            .cloned()
            .collect();
        let outputs = self
            .left
            .signature
            .outputs
            .union(&self.right.signature.outputs)
            .filter(|a| !self.shared.contains(a))
            .cloned()
            .collect();
        let internals = self
            .left
            .signature
            .internals
            .union(&self.right.signature.internals)
            .chain(self.shared.iter())
            .cloned()
            .collect();
        Signature::new(inputs, outputs, internals)
    }
}

/// The synchronous product of two composable MIOs, restricted to the states
/// reachable from the start pair. Shared actions synchronize and become
/// internal; a synchronization is a must-transition only if both factor
/// transitions are; non-shared transitions interleave with their modality
/// unchanged.
pub fn sync_product(left: &Mio, right: &Mio) -> Result<SyncProduct, ComposeError> {
    let explorer = PairExplorer::new(left, right)?;
    let start = explorer.start();

    let mut pairs: BTreeMap<StateId, (StateId, StateId)> = BTreeMap::new();
    let mut seen: BTreeSet<(StateId, StateId)> = BTreeSet::new();
    let mut queue: VecDeque<(StateId, StateId)> = VecDeque::new();
    let mut may: BTreeSet<Transition> = BTreeSet::new();
    let mut must: BTreeSet<Transition> = BTreeSet::new();

    seen.insert(start.clone());
    queue.push_back(start.clone());
    while let Some(pair) = queue.pop_front() {
        let source = StateId::product(&pair.0, &pair.1);
        pairs.insert(source.clone(), pair.clone());
        for (action, modality, target_pair) in explorer.successors(&pair) {
            let target = StateId::product(&target_pair.0, &target_pair.1);
            let t = Transition::new(source.clone(), action, target);
            may.insert(t.clone());
            if modality == Modality::Must {
                must.insert(t);
            }
            if seen.insert(target_pair.clone()) {
                queue.push_back(target_pair);
            }
        }
    }

    let mio = Mio::new(
        format!("{}.{}", left.name, right.name),
        pairs.keys().cloned().collect(),
        StateId::product(&left.start, &right.start),
        explorer.product_signature(),
        may,
        must,
    );
    Ok(SyncProduct { mio, pairs })
}

/// [`sync_product`] without the pair decomposition.
pub fn sync_compose(left: &Mio, right: &Mio) -> Result<Mio, ComposeError> {
    Ok(sync_product(left, right)?.mio)
}

fn queue_state_id(content: &[ActionName]) -> StateId {
    let mut id = String::from("q");
    for a in content {
        id.push('_');
        id.push_str(a.as_str());
    }
    StateId::new_unchecked(id)
}

/// Builds the bounded queue MIO and a map from each queue state to its
/// content length (used for saturation detection).
fn build_queue(
    name: &str,
    alphabet: &BTreeSet<ActionName>,
    capacity: usize,
) -> Result<(Mio, BTreeMap<StateId, usize>), ComposeError> {
    if capacity < 1 {
        return Err(ComposeError::InvalidCapacity(capacity));
    }
    for n in alphabet {
        if n.is_enqueue() {
            return Err(ComposeError::ReservedQueueAction(n.clone()));
        }
    }

    // Contents are stored newest-first: an enqueue prepends, a dequeue
    // removes the last element, so emission order equals insertion order.
    let mut contents: Vec<Vec<ActionName>> = vec![Vec::new()];
    let mut frontier: Vec<Vec<ActionName>> = vec![Vec::new()];
    for _ in 0..capacity {
        let mut next = Vec::new();
        for content in &frontier {
            for n in alphabet {
                let mut longer = Vec::with_capacity(content.len() + 1);
                longer.push(n.clone());
                longer.extend(content.iter().cloned());
                next.push(longer);
            }
        }
        contents.extend(next.iter().cloned());
        frontier = next;
    }

    let mut lengths: BTreeMap<StateId, usize> = BTreeMap::new();
    let mut may: BTreeSet<Transition> = BTreeSet::new();
    for content in &contents {
        let source = queue_state_id(content);
        lengths.insert(source.clone(), content.len());
        if content.len() < capacity {
            for n in alphabet {
                let mut longer = Vec::with_capacity(content.len() + 1);
                longer.push(n.clone());
                longer.extend(content.iter().cloned());
                may.insert(Transition::new(source.clone(), n.enqueue(), queue_state_id(&longer)));
            }
        }
        if let Some(last) = content.last() {
            let shorter: Vec<ActionName> = content[..content.len() - 1].to_vec();
            may.insert(Transition::new(source.clone(), last.clone(), queue_state_id(&shorter)));
        }
    }

    let signature = Signature::new(
        alphabet.iter().map(|n| n.enqueue()).collect(),
        alphabet.clone(),
        BTreeSet::new(),
    );
    let mio = Mio::new(
        name,
        lengths.keys().cloned().collect(),
        queue_state_id(&[]),
        signature,
        may.clone(),
        may, // every queue transition is required: may = must
    );
    Ok((mio, lengths))
}

/// The FIFO queue MIO for alphabet `o`, truncated at `capacity` elements.
/// Inputs are the enqueue actions `n__enq`, outputs are the original
/// actions; all transitions are must-transitions.
pub fn queue_mio(o: &BTreeSet<ActionName>, capacity: usize) -> Result<Mio, ComposeError> {
    let name = if o.is_empty() {
        "queue".to_string()
    } else {
        let joined: Vec<&str> = o.iter().map(|a| a.as_str()).collect();
        format!("queue_{}", joined.join("_"))
    };
    Ok(build_queue(&name, o, capacity)?.0)
}

/// A MIO extended with a bounded output queue, plus the product states at
/// which an enqueue was disabled solely by the capacity bound.
#[derive(Debug, Clone)]
pub struct QueueExtension {
    pub mio: Mio,
    pub saturated: BTreeSet<StateId>,
}

/// Extends `m` with an output queue for `o ⊆ out`: the synchronous product
/// of the enqueue-renamed machine with the queue MIO. The external inputs
/// and outputs coincide with those of `m`; the enqueue actions become
/// internal.
pub fn with_output_queue(
    m: &Mio,
    o: &BTreeSet<ActionName>,
    capacity: usize,
) -> Result<QueueExtension, ComposeError> {
    let renamed = m.rename_for_queue(o)?;
    let queue_name = if o.is_empty() {
        "queue".to_string()
    } else {
        let joined: Vec<&str> = o.iter().map(|a| a.as_str()).collect();
        format!("queue_{}", joined.join("_"))
    };
    let (queue, lengths) = build_queue(&queue_name, o, capacity)?;
    let product = sync_product(&renamed, &queue)?;

    let enqueues: BTreeSet<ActionName> = o.iter().map(|n| n.enqueue()).collect();
    let mut saturated = BTreeSet::new();
    for (state, (left, right)) in product.pairs() {
        if lengths.get(right) == Some(&capacity)
            && renamed.may_from(left).any(|t| enqueues.contains(&t.action))
        {
            saturated.insert(state.clone());
        }
    }
    Ok(QueueExtension { mio: product.mio, saturated })
}

/// An asynchronous composition: the synchronous product of both factors'
/// output-queue extensions, with saturation metadata.
#[derive(Debug, Clone, Serialize)]
pub struct AsyncComposition {
    #[serde(skip)]
    pub mio: Mio,
    /// Reachable product states at which an enqueue (of either factor) was
    /// disabled solely by the capacity bound.
    pub saturated_states: BTreeSet<StateId>,
    pub capacity: usize,
}

/// Asynchronously composes two composable MIOs via bounded FIFO output
/// queues: each factor gets a queue for the outputs its partner can
/// receive, and the extensions are composed synchronously.
pub fn async_compose(left: &Mio, right: &Mio, capacity: usize) -> Result<AsyncComposition, ComposeError> {
    if capacity < 1 {
        return Err(ComposeError::InvalidCapacity(capacity));
    }
    if !left.composable(right) {
        return Err(ComposeError::NotComposable(NotComposable {
            left: left.name.clone(),
            right: right.name.clone(),
        }));
    }
    let queued_left: BTreeSet<ActionName> = left
        .signature
        .outputs
        .intersection(&right.signature.inputs)
        .cloned()
        .collect();
    let queued_right: BTreeSet<ActionName> = right
        .signature
        .outputs
        .intersection(&left.signature.inputs)
        .cloned()
        .collect();
    let ext_left = with_output_queue(left, &queued_left, capacity)?;
    let ext_right = with_output_queue(right, &queued_right, capacity)?;
    let product = sync_product(&ext_left.mio, &ext_right.mio)?;

    let mut saturated_states = BTreeSet::new();
    for (state, (l, r)) in product.pairs() {
        if ext_left.saturated.contains(l) || ext_right.saturated.contains(r) {
            saturated_states.insert(state.clone());
        }
    }
    Ok(AsyncComposition { mio: product.mio, saturated_states, capacity })
}
