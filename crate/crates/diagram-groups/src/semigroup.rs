//! Bounded decision procedures for the presented semigroups: the word
//! problem by bidirectional breadth-first closure, and element counting by
//! congruence closure over all words up to a length bound.
//!
//! Both are honest about their bounds: they answer `equal` only with a
//! derivation in hand, and report a count only when the class count is
//! stable at the enumeration frontier. Infinite semigroups (and bounds too
//! small for the presentation) come back as `unknown`.

use std::collections::HashMap;
use std::sync::Arc;

use crate::diagrams::{valid_moves, Diagram, Dir};
use crate::error::Result;
use crate::presentations::{Presentation, Word};

/// Outcome of a bounded word-problem query.
#[derive(Clone, Debug)]
pub enum Verdict {
    /// The words are equal; the derivation witnesses it.
    Equal { derivation: Diagram },
    /// The full closure within the bounds was exhausted without connecting
    /// the words. Not a proof of inequality: longer detours might exist.
    UnequalWithinBound { max_len: usize, max_states: usize },
    /// The state budget ran out before the closure was exhausted.
    Unknown { max_len: usize, max_states: usize },
}

impl Verdict {
    pub fn is_equal(&self) -> bool {
        matches!(self, Verdict::Equal { .. })
    }
}

/// Decide `u = v` modulo the presentation by breadth-first search over
/// single relation applications in both directions, visiting only words of
/// length at most `max_len` and at most `max_states` distinct words.
pub fn word_equal(
    pres: &Arc<Presentation>,
    u: &Word,
    v: &Word,
    max_len: usize,
    max_states: usize,
) -> Verdict {
    assert!(!u.is_empty() && !v.is_empty(), "word_equal takes nonempty words");
    if u.len() > max_len || v.len() > max_len {
        return Verdict::Unknown { max_len, max_states };
    }
    if u == v {
        let derivation = Diagram::eps(pres.clone(), u.clone()).expect("nonempty");
        return Verdict::Equal { derivation };
    }
    let mut nodes: Vec<(Word, Option<(usize, crate::diagrams::Atom)>)> = vec![(u.clone(), None)];
    let mut seen: HashMap<Word, usize> = HashMap::from([(u.clone(), 0)]);
    let mut level = vec![0usize];
    while !level.is_empty() {
        let mut next = Vec::new();
        for &ni in &level {
            let word = nodes[ni].0.clone();
            for atom in valid_moves(pres, &word) {
                let rel = &pres.relations()[atom.rel];
                let (from, to) = match atom.dir {
                    Dir::Forward => (&rel.lhs, &rel.rhs),
                    Dir::Backward => (&rel.rhs, &rel.lhs),
                };
                if word.len() - from.len() + to.len() > max_len {
                    continue;
                }
                let mut w = word.clone();
                w.splice(atom.offset, from.len(), to.letters());
                if seen.contains_key(&w) {
                    continue;
                }
                let id = nodes.len();
                seen.insert(w.clone(), id);
                let found = &w == v;
                nodes.push((w, Some((ni, atom))));
                if found {
                    let mut atoms = Vec::new();
                    let mut cur = id;
                    while let Some((parent, atom)) = nodes[cur].1 {
                        atoms.push(atom);
                        cur = parent;
                    }
                    atoms.reverse();
                    let derivation = Diagram::new(pres.clone(), u.clone(), atoms)
                        .expect("search path replays");
                    return Verdict::Equal { derivation };
                }
                if nodes.len() > max_states {
                    return Verdict::Unknown { max_len, max_states };
                }
                next.push(id);
            }
        }
        level = next;
    }
    Verdict::UnequalWithinBound { max_len, max_states }
}

/// Outcome of bounded element counting.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CountOutcome {
    /// The closure stabilized; the semigroup has this many elements as far
    /// as the bounds can see.
    Stable(usize),
    /// No stable count within the bounds.
    Unknown { max_len: usize, max_states: usize },
}

impl CountOutcome {
    pub fn stable(self) -> Option<usize> {
        match self {
            CountOutcome::Stable(n) => Some(n),
            CountOutcome::Unknown { .. } => None,
        }
    }
}

pub const DEFAULT_MAX_LEN: usize = 12;
pub const DEFAULT_MAX_STATES: usize = 200_000;

struct UnionFind {
    parent: Vec<u32>,
}

impl UnionFind {
    fn new(n: usize) -> UnionFind {
        UnionFind { parent: (0..n as u32).collect() }
    }

    fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            self.parent[x as usize] = self.parent[self.parent[x as usize] as usize];
            x = self.parent[x as usize];
        }
        x
    }

    fn union(&mut self, a: u32, b: u32) {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra != rb {
            self.parent[ra as usize] = rb;
        }
    }
}

/// Count the equivalence classes of nonempty words under the congruence
/// generated by the relations, computed by union-find over every word of
/// length at most `L` with relation applications in all contexts, where `L`
/// is the largest length not exceeding `max_len` whose full enumeration
/// fits in `max_states` words.
///
/// Let `c(s)` be the number of classes containing a word of length at most
/// `s`. Near the length frontier `c(s)` is inflated by words whose
/// connecting derivations would need to leave the bound, so the count is
/// read off the last genuine plateau: the largest `s` with
/// `c(s) = c(s-1) = c(s-2)`. The result is reported only if that plateau
/// reaches to within `2 g` of the frontier (`g` being the largest one-step
/// length change of a relation), i.e. only while no new class has appeared
/// for as long as the bound can still see; otherwise the answer is
/// `unknown`. Infinite semigroups keep producing new classes at every
/// length and never stabilize.
pub fn count_elements(
    pres: &Arc<Presentation>,
    max_len: usize,
    max_states: usize,
) -> CountOutcome {
    let unknown = CountOutcome::Unknown { max_len, max_states };
    let k = pres.alphabet().len();
    let growth = pres
        .relations()
        .iter()
        .map(|r| r.rhs.len().abs_diff(r.lhs.len()))
        .max()
        .unwrap_or(0);
    let longest = pres
        .relations()
        .iter()
        .map(|r| r.lhs.len().max(r.rhs.len()))
        .max()
        .unwrap_or(1);

    // largest fully enumerable length within the state budget
    let mut total: u128 = 0;
    let mut feasible = 0;
    for len in 1..=max_len {
        let words_of_len = (k as u128).checked_pow(len as u32).unwrap_or(u128::MAX);
        total = total.saturating_add(words_of_len);
        if total > max_states as u128 {
            break;
        }
        feasible = len;
    }
    let length_bound = feasible;
    if length_bound < longest || length_bound <= growth + 1 {
        return unknown;
    }

    // enumerate words of length 1..=length_bound, shortest first
    let mut words: Vec<Vec<usize>> = Vec::new();
    let mut ids: HashMap<Vec<usize>, u32> = HashMap::new();
    let mut length_start = vec![0usize; 1];
    for len in 1..=length_bound {
        length_start.push(words.len());
        let mut cur = vec![0usize; len];
        loop {
            ids.insert(cur.clone(), words.len() as u32);
            words.push(cur.clone());
            // next word in lexicographic order
            let mut pos = len;
            loop {
                if pos == 0 {
                    break;
                }
                pos -= 1;
                if cur[pos] + 1 < k {
                    cur[pos] += 1;
                    for c in cur[pos + 1..].iter_mut() {
                        *c = 0;
                    }
                    break;
                }
                cur[pos] = 0;
                if pos == 0 {
                    pos = usize::MAX;
                    break;
                }
            }
            if pos == usize::MAX {
                break;
            }
        }
    }
    length_start.push(words.len());

    let rules: Vec<(Vec<usize>, Vec<usize>)> = pres
        .relations()
        .iter()
        .map(|rel| {
            (
                rel.lhs.letters().iter().map(|l| l.index()).collect(),
                rel.rhs.letters().iter().map(|l| l.index()).collect(),
            )
        })
        .collect();
    let mut uf = UnionFind::new(words.len());
    let mut scratch = Vec::new();
    for (wi, w) in words.iter().enumerate() {
        for (lhs, rhs) in &rules {
            if w.len() < lhs.len() || w.len() - lhs.len() + rhs.len() > length_bound {
                continue;
            }
            for at in 0..=w.len() - lhs.len() {
                if w[at..at + lhs.len()] != lhs[..] {
                    continue;
                }
                scratch.clear();
                scratch.extend_from_slice(&w[..at]);
                scratch.extend_from_slice(&rhs);
                scratch.extend_from_slice(&w[at + lhs.len()..]);
                let other = ids[&scratch];
                uf.union(wi as u32, other);
            }
        }
    }

    // ladder of class counts among words of length <= s
    let mut ladder = Vec::with_capacity(length_bound);
    let mut roots = std::collections::HashSet::new();
    for s in 1..=length_bound {
        for wi in length_start[s]..length_start[s + 1] {
            roots.insert(uf.find(wi as u32));
        }
        ladder.push(roots.len());
    }
    let c = |s: usize| ladder[s - 1];
    let plateau_top = (3..=length_bound)
        .rev()
        .find(|&s| c(s) == c(s - 1) && c(s) == c(s - 2));
    match plateau_top {
        Some(s) if s + 2 * growth >= length_bound => CountOutcome::Stable(c(s)),
        _ => unknown,
    }
}

/// Convenience wrapper with the default bounds.
pub fn count_elements_default(pres: &Arc<Presentation>) -> CountOutcome {
    count_elements(pres, DEFAULT_MAX_LEN, DEFAULT_MAX_STATES)
}

/// Parse helper used by callers that take presentations and words in text
/// form together.
pub fn parse_words(pres: &Presentation, texts: &[&str]) -> Result<Vec<Word>> {
    texts.iter().map(|t| pres.parse_word(t)).collect()
}
