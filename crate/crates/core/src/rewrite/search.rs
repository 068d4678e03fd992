use rustc_hash::FxHashMap;

use super::{GenWord, RewriteCertificate, RewriteStep, Rules};
use crate::band::{Band, Elem};

/// Limits for the breadth-first oracle.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    /// Longest word the search may visit; `None` means the longest input
    /// plus four.
    pub max_len: Option<usize>,
    /// Number of distinct words the search may visit.
    pub max_states: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_len: None,
            max_states: 100_000,
        }
    }
}

impl Budget {
    pub fn new(max_len: usize, max_states: usize) -> Budget {
        Budget {
            max_len: Some(max_len),
            max_states,
        }
    }

    pub fn with_max_len(max_len: usize) -> Budget {
        Budget {
            max_len: Some(max_len),
            ..Budget::default()
        }
    }

    /// The length cap for inputs whose longest word has `longest` letters;
    /// never below `longest`.
    pub fn max_len_for(&self, longest: usize) -> usize {
        self.max_len.unwrap_or(longest + 4).max(longest)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BfsOutcome {
    Equal(RewriteCertificate),
    /// The closure of one side was exhausted under the length cap without
    /// meeting the other. Longer detours are not ruled out.
    DistinctWithinBudget {
        explored: usize,
    },
    /// The state budget ran out first.
    Inconclusive {
        explored: usize,
    },
}

impl BfsOutcome {
    pub fn is_equal(&self) -> bool {
        matches!(self, BfsOutcome::Equal(_))
    }

    pub fn is_conclusive(&self) -> bool {
        !matches!(self, BfsOutcome::Inconclusive { .. })
    }
}

type Key = Box<[u16]>;

const ROOT: u32 = u32::MAX;

#[derive(Clone, Debug)]
struct Node {
    word: Key,
    parent: u32,
    depth: u32,
    /// The step leading from the parent to this word.
    step: Option<RewriteStep>,
}

/// One breadth-first tree of words connected to a root.
#[derive(Clone, Debug)]
struct Tree {
    index: FxHashMap<Key, u32>,
    nodes: Vec<Node>,
    frontier: Vec<u32>,
}

fn key(w: &[Elem]) -> Key {
    w.iter()
        .map(|&e| u16::try_from(e).expect("bands are limited to 65536 elements"))
        .collect()
}

/// Calls `f` with every word one step away from `w`, contractions first
/// (left to right), then expansions (left to right, factors in order).
fn neighbours(rules: &Rules, w: &[u16], max_len: usize, mut f: impl FnMut(Key, RewriteStep)) {
    for i in 0..w.len().saturating_sub(1) {
        let (u, v) = (w[i] as Elem, w[i + 1] as Elem);
        if let Some(p) = rules.contraction(u, v) {
            let mut next = Vec::with_capacity(w.len() - 1);
            next.extend_from_slice(&w[..i]);
            next.push(p as u16);
            next.extend_from_slice(&w[i + 2..]);
            f(next.into(), RewriteStep::contraction(i, u, v, p));
        }
    }
    if w.len() < max_len {
        for i in 0..w.len() {
            let g = w[i] as Elem;
            for &(u, v) in rules.factors(g) {
                let mut next = Vec::with_capacity(w.len() + 1);
                next.extend_from_slice(&w[..i]);
                next.push(u as u16);
                next.push(v as u16);
                next.extend_from_slice(&w[i + 1..]);
                f(next.into(), RewriteStep::expansion(i, u, v, g));
            }
        }
    }
}

impl Tree {
    fn new(root: &[Elem]) -> Tree {
        let k = key(root);
        let mut index = FxHashMap::default();
        index.insert(k.clone(), 0);
        Tree {
            index,
            nodes: vec![Node {
                word: k,
                parent: ROOT,
                depth: 0,
                step: None,
            }],
            frontier: vec![0],
        }
    }

    /// Steps from the root to node `id`.
    fn path(&self, mut id: u32) -> Vec<RewriteStep> {
        let mut steps = Vec::new();
        while let Some(step) = self.nodes[id as usize].step {
            steps.push(step);
            id = self.nodes[id as usize].parent;
        }
        steps.reverse();
        steps
    }

    fn word(&self, id: u32) -> GenWord {
        GenWord(
            self.nodes[id as usize]
                .word
                .iter()
                .map(|&e| e as Elem)
                .collect(),
        )
    }

    fn certificate(&self, id: u32) -> RewriteCertificate {
        RewriteCertificate {
            start: self.word(0),
            steps: self.path(id),
            end: self.word(id),
        }
    }

    /// Expands one full layer. `on_new` sees every newly inserted node and
    /// may stop the expansion early by returning false. Returns false when
    /// stopped.
    fn expand_layer(
        &mut self,
        rules: &Rules,
        max_len: usize,
        mut on_new: impl FnMut(&Tree, u32) -> bool,
    ) -> bool {
        let layer = std::mem::take(&mut self.frontier);
        let mut next = Vec::new();
        for &id in &layer {
            let word = self.nodes[id as usize].word.clone();
            let depth = self.nodes[id as usize].depth + 1;
            let mut fresh = Vec::new();
            neighbours(rules, &word, max_len, |k, step| {
                if !self.index.contains_key(&k) {
                    let nid = self.nodes.len() as u32;
                    self.index.insert(k.clone(), nid);
                    self.nodes.push(Node {
                        word: k,
                        parent: id,
                        depth,
                        step: Some(step),
                    });
                    fresh.push(nid);
                }
            });
            for nid in fresh {
                next.push(nid);
                if !on_new(self, nid) {
                    self.frontier = next;
                    return false;
                }
            }
        }
        self.frontier = next;
        true
    }
}

/// Bidirectional breadth-first search over contractions and expansions,
/// pruning words longer than the length cap.
///
/// The two trees grow one full layer at a time, the smaller frontier
/// first; among the meeting points found in a layer the one with the
/// shortest combined path wins, so certificates are as short as the
/// search can make them.
pub fn bfs_equal(b: &Band, w1: &GenWord, w2: &GenWord, budget: Budget) -> BfsOutcome {
    if w1 == w2 {
        return BfsOutcome::Equal(RewriteCertificate::identity(w1.clone()));
    }
    let rules = Rules::new(b);
    let max_len = budget.max_len_for(w1.len().max(w2.len()));
    let mut trees = [Tree::new(w1), Tree::new(w2)];
    loop {
        let explored = trees[0].nodes.len() + trees[1].nodes.len();
        if trees.iter().any(|t| t.frontier.is_empty()) {
            return BfsOutcome::DistinctWithinBudget { explored };
        }
        if explored >= budget.max_states {
            return BfsOutcome::Inconclusive { explored };
        }
        let side = usize::from(trees[1].frontier.len() < trees[0].frontier.len());
        let (left, right) = trees.split_at_mut(1);
        let (this, other) = if side == 0 {
            (&mut left[0], &right[0])
        } else {
            (&mut right[0], &left[0])
        };
        let mut best: Option<(u32, u32, u32)> = None;
        let limit = budget.max_states.saturating_sub(other.nodes.len());
        let completed = this.expand_layer(&rules, max_len, |tree, nid| {
            let node = &tree.nodes[nid as usize];
            if let Some(&oid) = other.index.get(&node.word) {
                let total = node.depth + other.nodes[oid as usize].depth;
                if best.is_none_or(|(t, _, _)| total < t) {
                    best = Some((total, nid, oid));
                }
            }
            tree.nodes.len() < limit
        });
        if let Some((_, nid, oid)) = best {
            let (from_w1, from_w2, id1, id2) = if side == 0 {
                (&trees[0], &trees[1], nid, oid)
            } else {
                (&trees[0], &trees[1], oid, nid)
            };
            let c = from_w1
                .certificate(id1)
                .then(from_w2.certificate(id2).reversed());
            return BfsOutcome::Equal(c);
        }
        if !completed {
            let explored = trees[0].nodes.len() + trees[1].nodes.len();
            return BfsOutcome::Inconclusive { explored };
        }
    }
}

/// The words connected to a root within the length cap, as found by
/// breadth-first search.
#[derive(Clone, Debug)]
pub struct Closure {
    tree: Tree,
    exhausted: bool,
}

impl Closure {
    /// True when the whole connected set below the cap was visited.
    pub fn is_exhausted(&self) -> bool {
        self.exhausted
    }

    pub fn len(&self) -> usize {
        self.tree.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tree.nodes.is_empty()
    }

    pub fn contains(&self, w: &[Elem]) -> bool {
        self.tree.index.contains_key(&key(w))
    }

    /// A derivation from the root to `w`, if `w` was reached.
    pub fn certificate_to(&self, w: &[Elem]) -> Option<RewriteCertificate> {
        self.tree
            .index
            .get(&key(w))
            .map(|&id| self.tree.certificate(id))
    }

    /// Visited words in breadth-first order.
    pub fn words(&self) -> impl Iterator<Item = GenWord> + '_ {
        (0..self.tree.nodes.len() as u32).map(|id| self.tree.word(id))
    }
}

/// Breadth-first closure of `{w}` under contraction and expansion.
pub fn bounded_closure(b: &Band, w: &GenWord, budget: Budget) -> Closure {
    let rules = Rules::new(b);
    let max_len = budget.max_len_for(w.len());
    let mut tree = Tree::new(w);
    loop {
        if tree.frontier.is_empty() {
            return Closure {
                tree,
                exhausted: true,
            };
        }
        let limit = budget.max_states;
        if tree.nodes.len() >= limit
            || !tree.expand_layer(&rules, max_len, |t, _| t.nodes.len() < limit)
        {
            return Closure {
                tree,
                exhausted: false,
            };
        }
    }
}
