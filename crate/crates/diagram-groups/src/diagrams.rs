//! The diagram calculus: derivation-encoded semigroup diagrams with
//! concatenation, sum, inversion, canonical forms, dipole reduction and
//! positive/negative splitting.
//!
//! A diagram is stored as its derivation: a top word plus an ordered list of
//! [`Atom`]s, each applying one defining relation at a letter offset. Two
//! derivations describe the same plane diagram (are isotopic) exactly when
//! one can be turned into the other by repeatedly swapping adjacent atoms
//! whose support intervals in the shared intermediate word are disjoint;
//! when swapping, the offset of an atom shifts by the length change of the
//! other atom whenever that atom acts strictly to its left.
//!
//! [`Diagram::canon`] picks the leftmost-greedy representative of the
//! isotopy class: repeatedly emit, among the cells whose whole top is on the
//! current frontier, the one with the smallest frontier offset. Equality of
//! canonical forms decides isotopy, and [`Diagram::reduce`] cancels dipoles
//! to the unique irreducible representative of the equivalence class.
//!
//! All values are immutable; operations are pure functions and safe to use
//! from concurrent threads.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::presentations::{Letter, Presentation, Word};

/// Direction in which an atom applies its relation.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Dir {
    /// lhs -> rhs
    Forward,
    /// rhs -> lhs
    Backward,
}

impl Dir {
    pub fn flip(self) -> Dir {
        match self {
            Dir::Forward => Dir::Backward,
            Dir::Backward => Dir::Forward,
        }
    }
}

/// One cell of a derivation: apply relation `rel` in direction `dir` to the
/// factor starting `offset` letters from the left.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Atom {
    pub rel: usize,
    pub dir: Dir,
    pub offset: usize,
}

impl Atom {
    pub fn forward(rel: usize, offset: usize) -> Atom {
        Atom { rel, dir: Dir::Forward, offset }
    }

    pub fn backward(rel: usize, offset: usize) -> Atom {
        Atom { rel, dir: Dir::Backward, offset }
    }

    fn flip(self) -> Atom {
        Atom { rel: self.rel, dir: self.dir.flip(), offset: self.offset }
    }
}

/// A semigroup diagram, stored as its derivation.
///
/// The derived `PartialEq` is syntactic identity of derivations; use
/// [`Diagram::equal`] for equality in the diagram group (reduce, then
/// compare canonical forms).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Diagram {
    pres: Arc<Presentation>,
    top: Word,
    bottom: Word,
    atoms: Vec<Atom>,
}

/// Apply `atom` to `word` in place. `step` is only used in error messages.
fn apply_atom(pres: &Presentation, word: &mut Word, atom: &Atom, step: usize) -> Result<()> {
    let rels = pres.relations();
    let rel = rels.get(atom.rel).ok_or_else(|| Error::InvalidAtom {
        step,
        reason: format!("relation index {} out of range", atom.rel),
    })?;
    let (from, to) = match atom.dir {
        Dir::Forward => (&rel.lhs, &rel.rhs),
        Dir::Backward => (&rel.rhs, &rel.lhs),
    };
    if !word.factor_matches(atom.offset, from.letters()) {
        return Err(Error::InvalidAtom {
            step,
            reason: format!(
                "factor '{}' not found at offset {} in '{}'",
                pres.word_string(from),
                atom.offset,
                pres.word_string(word)
            ),
        });
    }
    word.splice(atom.offset, from.len(), to.letters());
    Ok(())
}

impl Diagram {
    /// Build a diagram, validating the derivation by full replay.
    pub fn new(pres: Arc<Presentation>, top: Word, atoms: Vec<Atom>) -> Result<Diagram> {
        if top.is_empty() {
            return Err(Error::EmptyWord);
        }
        let mut word = top.clone();
        for (step, atom) in atoms.iter().enumerate() {
            apply_atom(&pres, &mut word, atom, step)?;
        }
        Ok(Diagram { pres, top, bottom: word, atoms })
    }

    /// The identity diagram on `w`: top = bottom = `w`, no cells.
    pub fn eps(pres: Arc<Presentation>, w: Word) -> Result<Diagram> {
        Diagram::new(pres, w, Vec::new())
    }

    pub fn presentation(&self) -> &Arc<Presentation> {
        &self.pres
    }

    pub fn top(&self) -> &Word {
        &self.top
    }

    pub fn bottom(&self) -> &Word {
        &self.bottom
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn cell_count(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_positive(&self) -> bool {
        self.atoms.iter().all(|a| a.dir == Dir::Forward)
    }

    /// The words the derivation passes through, including top and bottom.
    pub fn replay(&self) -> Vec<Word> {
        let mut words = Vec::with_capacity(self.atoms.len() + 1);
        let mut word = self.top.clone();
        words.push(word.clone());
        for (step, atom) in self.atoms.iter().enumerate() {
            apply_atom(&self.pres, &mut word, atom, step).expect("valid by construction");
            words.push(word.clone());
        }
        words
    }

    /// Concatenation: glue `other` below `self`.
    pub fn compose(&self, other: &Diagram) -> Result<Diagram> {
        if self.pres != other.pres {
            return Err(Error::PresentationMismatch);
        }
        if self.bottom != other.top {
            return Err(Error::LabelMismatch);
        }
        let mut atoms = self.atoms.clone();
        atoms.extend_from_slice(&other.atoms);
        Ok(Diagram {
            pres: self.pres.clone(),
            top: self.top.clone(),
            bottom: other.bottom.clone(),
            atoms,
        })
    }

    /// Sum: place `other` to the right of `self`, identifying the rightmost
    /// vertex of `self` with the leftmost vertex of `other`.
    ///
    /// Panics if the presentations differ.
    pub fn sum(&self, other: &Diagram) -> Diagram {
        assert_eq!(self.pres, other.pres, "sum requires diagrams over the same presentation");
        let shift = self.bottom.len();
        let mut atoms = self.atoms.clone();
        atoms.extend(other.atoms.iter().map(|a| Atom { offset: a.offset + shift, ..*a }));
        Diagram {
            pres: self.pres.clone(),
            top: self.top.concat(&other.top),
            bottom: self.bottom.concat(&other.bottom),
            atoms,
        }
    }

    /// Mirror image: the inverse in the diagram groupoid.
    pub fn invert(&self) -> Diagram {
        let atoms = self.atoms.iter().rev().map(|a| a.flip()).collect();
        Diagram {
            pres: self.pres.clone(),
            top: self.bottom.clone(),
            bottom: self.top.clone(),
            atoms,
        }
    }

    /// Append one forward cell at the bottom. Cheap alternative to
    /// `compose` with a single-cell diagram.
    pub(crate) fn push_cell(&mut self, rel: usize, offset: usize) -> Result<()> {
        let atom = Atom::forward(rel, offset);
        apply_atom(&self.pres, &mut self.bottom, &atom, self.atoms.len())?;
        self.atoms.push(atom);
        Ok(())
    }

    /// The canonical (leftmost-greedy) derivation order of the isotopy
    /// class. Two diagrams are isotopic iff their canonical forms agree.
    pub fn canon(&self) -> Diagram {
        let mut cx = Complex::build(self);
        let mut frontier = cx.top_path.clone();
        let atoms = cx.emit(&mut frontier, |_| true);
        assert_eq!(atoms.len(), self.atoms.len(), "canonical emission must cover all cells");
        Diagram {
            pres: self.pres.clone(),
            top: self.top.clone(),
            bottom: self.bottom.clone(),
            atoms,
        }
    }

    /// True iff the diagram has no dipole.
    pub fn is_reduced(&self) -> bool {
        Complex::build(self).find_dipole().is_none()
    }

    /// Cancel all dipoles; returns the unique irreducible diagram equivalent
    /// to this one, in canonical order. The result does not depend on the
    /// order of cancellations.
    pub fn reduce(&self) -> Diagram {
        let mut cx = Complex::build(self);
        while let Some((c1, c2)) = cx.find_dipole() {
            cx.cancel(c1, c2);
        }
        let alive = cx.cells.iter().filter(|c| c.alive).count();
        let mut frontier: Vec<usize> = cx.top_path.clone();
        for e in frontier.iter_mut() {
            *e = cx.resolve(*e);
        }
        let atoms = cx.emit(&mut frontier, |_| true);
        assert_eq!(atoms.len(), alive, "reduction emission must cover all remaining cells");
        debug_assert_eq!(
            frontier.iter().map(|&e| cx.labels[e]).collect::<Vec<_>>(),
            self.bottom.letters().to_vec(),
            "reduction must preserve the bottom word"
        );
        Diagram {
            pres: self.pres.clone(),
            top: self.top.clone(),
            bottom: self.bottom.clone(),
            atoms,
        }
    }

    /// Equality in the diagram group: reduce both sides and compare the
    /// canonical irreducible forms atom for atom.
    ///
    /// Panics if the presentations differ.
    pub fn equal(&self, other: &Diagram) -> bool {
        assert_eq!(self.pres, other.pres, "equal requires diagrams over the same presentation");
        if self.top != other.top || self.bottom != other.bottom {
            return false;
        }
        self.reduce().atoms == other.reduce().atoms
    }

    /// Decompose an irreducible diagram over a left-letter presentation as
    /// `D = D1 o D2^-1` with `D1`, `D2` positive and
    /// `bottom(D1) = bottom(D2)` the label of the longest positive path.
    pub fn split(&self) -> Result<(Diagram, Diagram)> {
        if !self.pres.is_left_letter_form() {
            return Err(Error::NotLeftLetterForm);
        }
        let mut cx = Complex::build(self);
        if cx.find_dipole().is_some() {
            return Err(Error::Reducible);
        }
        let forward_count = self.atoms.iter().filter(|a| a.dir == Dir::Forward).count();
        let mut frontier = cx.top_path.clone();
        let fwd = cx.emit(&mut frontier, |c| c.dir == Dir::Forward);
        if fwd.len() != forward_count {
            return Err(Error::ReorderFailed);
        }
        let middle = Word::new(frontier.iter().map(|&e| cx.labels[e]).collect());
        let bwd = cx.emit(&mut frontier, |c| c.dir == Dir::Backward);
        if fwd.len() + bwd.len() != self.atoms.len() {
            return Err(Error::ReorderFailed);
        }
        let d1 = Diagram {
            pres: self.pres.clone(),
            top: self.top.clone(),
            bottom: middle.clone(),
            atoms: fwd,
        };
        let negative = Diagram {
            pres: self.pres.clone(),
            top: middle,
            bottom: self.bottom.clone(),
            atoms: bwd,
        };
        Ok((d1, negative.invert()))
    }

    /// Serialize to the line-oriented diagram text format.
    pub fn to_text(&self) -> String {
        let mut out = format!("base: {}\n", self.pres.word_string(&self.top));
        for a in &self.atoms {
            let sign = match a.dir {
                Dir::Forward => '+',
                Dir::Backward => '-',
            };
            out.push_str(&format!("{sign}{}@{}\n", a.rel, a.offset));
        }
        out
    }

    /// Parse the diagram text format: first line `base: <word>`, then one
    /// `+<rel>@<offset>` or `-<rel>@<offset>` line per cell.
    pub fn from_text(pres: Arc<Presentation>, text: &str) -> Result<Diagram> {
        let mut top = None;
        let mut atoms = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() {
                continue;
            }
            if top.is_none() {
                let rest = line.strip_prefix("base:").ok_or(Error::Format {
                    line: i + 1,
                    msg: "expected 'base: <word>'".into(),
                })?;
                top = Some(pres.parse_word(rest.trim())?);
                continue;
            }
            let dir = match line.chars().next() {
                Some('+') => Dir::Forward,
                Some('-') => Dir::Backward,
                _ => {
                    return Err(Error::Format {
                        line: i + 1,
                        msg: "expected '+<rel>@<offset>' or '-<rel>@<offset>'".into(),
                    })
                }
            };
            let body = &line[1..];
            let (rel_s, off_s) = body.split_once('@').ok_or(Error::Format {
                line: i + 1,
                msg: "missing '@'".into(),
            })?;
            let rel = rel_s.trim().parse().map_err(|_| Error::Format {
                line: i + 1,
                msg: format!("bad relation index '{rel_s}'"),
            })?;
            let offset = off_s.trim().parse().map_err(|_| Error::Format {
                line: i + 1,
                msg: format!("bad offset '{off_s}'"),
            })?;
            atoms.push(Atom { rel, dir, offset });
        }
        let top = top.ok_or(Error::Format { line: 1, msg: "missing 'base:' line".into() })?;
        Diagram::new(pres, top, atoms)
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Every single-cell move applicable to `w`, in a fixed order.
pub fn valid_moves(pres: &Presentation, w: &Word) -> Vec<Atom> {
    let mut moves = Vec::new();
    for (ri, rel) in pres.relations().iter().enumerate() {
        for (dir, from) in [(Dir::Forward, &rel.lhs), (Dir::Backward, &rel.rhs)] {
            if from.len() > w.len() {
                continue;
            }
            for offset in 0..=w.len() - from.len() {
                if w.factor_matches(offset, from.letters()) {
                    moves.push(Atom { rel: ri, dir, offset });
                }
            }
        }
    }
    moves
}

/// Explicit cell/edge view of a derivation, used internally for canonical
/// ordering, dipole search and splitting. Edges are created once and never
/// renamed; cancelling a dipole redirects the lower cell's output edges to
/// the upper cell's input edges.
struct Complex {
    labels: Vec<Letter>,
    redirect: Vec<usize>,
    cells: Vec<CCell>,
    top_path: Vec<usize>,
}

struct CCell {
    rel: usize,
    dir: Dir,
    top: Vec<usize>,
    bottom: Vec<usize>,
    alive: bool,
}

impl Complex {
    fn build(d: &Diagram) -> Complex {
        let mut labels: Vec<Letter> = d.top.letters().to_vec();
        let top_path: Vec<usize> = (0..labels.len()).collect();
        let mut frontier = top_path.clone();
        let mut cells = Vec::with_capacity(d.atoms.len());
        for atom in &d.atoms {
            let rel = &d.pres.relations()[atom.rel];
            let (from, to) = match atom.dir {
                Dir::Forward => (&rel.lhs, &rel.rhs),
                Dir::Backward => (&rel.rhs, &rel.lhs),
            };
            let consumed: Vec<usize> =
                frontier[atom.offset..atom.offset + from.len()].to_vec();
            let first_new = labels.len();
            labels.extend(to.letters().iter().copied());
            let produced: Vec<usize> = (first_new..labels.len()).collect();
            frontier.splice(atom.offset..atom.offset + from.len(), produced.iter().copied());
            cells.push(CCell {
                rel: atom.rel,
                dir: atom.dir,
                top: consumed,
                bottom: produced,
                alive: true,
            });
        }
        let redirect = (0..labels.len()).collect();
        Complex { labels, redirect, cells, top_path }
    }

    fn resolve(&mut self, mut e: usize) -> usize {
        while self.redirect[e] != e {
            self.redirect[e] = self.redirect[self.redirect[e]];
            e = self.redirect[e];
        }
        e
    }

    /// Map each live edge to the live cell consuming it. An edge has at
    /// most one consumer; this is what makes the greedy choice unambiguous.
    fn consumers(&mut self) -> Vec<Option<usize>> {
        let mut consumer = vec![None; self.labels.len()];
        for ci in 0..self.cells.len() {
            if !self.cells[ci].alive {
                continue;
            }
            for k in 0..self.cells[ci].top.len() {
                let e = self.resolve(self.cells[ci].top[k]);
                debug_assert!(consumer[e].is_none(), "edge consumed twice");
                consumer[e] = Some(ci);
            }
        }
        consumer
    }

    /// Find one dipole: a pair of mutually inverse cells where the second
    /// consumes exactly the first one's output path.
    fn find_dipole(&mut self) -> Option<(usize, usize)> {
        let consumer = self.consumers();
        for c1 in 0..self.cells.len() {
            if !self.cells[c1].alive {
                continue;
            }
            let first_out = self.cells[c1].bottom[0];
            let Some(c2) = consumer[first_out] else { continue };
            if self.cells[c2].rel != self.cells[c1].rel
                || self.cells[c2].dir != self.cells[c1].dir.flip()
                || self.cells[c2].top.len() != self.cells[c1].bottom.len()
            {
                continue;
            }
            let len = self.cells[c1].bottom.len();
            let mut matches = true;
            for k in 0..len {
                let b = self.cells[c1].bottom[k];
                let t = self.cells[c2].top[k];
                if self.resolve(t) != b {
                    matches = false;
                    break;
                }
            }
            if matches {
                return Some((c1, c2));
            }
        }
        None
    }

    /// Cancel the dipole `(c1, c2)`: both cells disappear and the outputs of
    /// `c2` become the inputs of `c1`.
    fn cancel(&mut self, c1: usize, c2: usize) {
        debug_assert!(self.cells[c1].alive && self.cells[c2].alive);
        for k in 0..self.cells[c2].bottom.len() {
            let dead = self.cells[c2].bottom[k];
            let live = self.resolve(self.cells[c1].top[k]);
            debug_assert_eq!(self.labels[dead], self.labels[live]);
            self.redirect[dead] = live;
        }
        self.cells[c1].alive = false;
        self.cells[c2].alive = false;
    }

    /// Greedy leftmost emission over the live cells accepted by `allow`,
    /// starting from (and advancing) `frontier`. Emitted cells are retired.
    fn emit(&mut self, frontier: &mut Vec<usize>, allow: impl Fn(&CCell) -> bool) -> Vec<Atom> {
        let consumer = self.consumers();
        let mut out = Vec::new();
        loop {
            let mut chosen = None;
            'scan: for pos in 0..frontier.len() {
                let e = frontier[pos];
                let Some(ci) = consumer[e] else { continue };
                if !self.cells[ci].alive || !allow(&self.cells[ci]) {
                    continue;
                }
                let len = self.cells[ci].top.len();
                if pos + len > frontier.len() {
                    continue;
                }
                // the whole top block must sit here, in order; a mid-block
                // hit fails at k = 0
                let mut ready = true;
                for k in 0..len {
                    let want = self.resolve(self.cells[ci].top[k]);
                    if frontier[pos + k] != want {
                        ready = false;
                        break;
                    }
                }
                if ready {
                    chosen = Some((pos, ci));
                    break 'scan;
                }
            }
            let Some((pos, ci)) = chosen else { break };
            let len = self.cells[ci].top.len();
            let bottom = self.cells[ci].bottom.clone();
            out.push(Atom { rel: self.cells[ci].rel, dir: self.cells[ci].dir, offset: pos });
            frontier.splice(pos..pos + len, bottom);
            self.cells[ci].alive = false;
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SplitMix64;
    use crate::verify::sample::{random_diagram, shuffle_isotopic};

    fn p23() -> Arc<Presentation> {
        Arc::new(Presentation::parse("<a,b | a=bab, b=aba>").unwrap())
    }

    fn p2() -> Arc<Presentation> {
        Arc::new(Presentation::parse("<x | x=xx>").unwrap())
    }

    fn p9() -> Arc<Presentation> {
        Arc::new(Presentation::parse("<x | x=x^9>").unwrap())
    }

    /// The six-cell (a^5, a)-diagram used throughout.
    fn five_to_one() -> Diagram {
        let pres = p23();
        let top = pres.parse_word("aaaaa").unwrap();
        Diagram::new(
            pres.clone(),
            top,
            vec![
                Atom::forward(0, 1),
                Atom::forward(0, 5),
                Atom::backward(1, 0),
                Atom::backward(0, 1),
                Atom::backward(1, 2),
                Atom::backward(0, 0),
            ],
        )
        .unwrap()
    }

    #[test]
    fn eps_is_the_identity() {
        let pres = p23();
        let w = pres.parse_word("a").unwrap();
        let e = Diagram::eps(pres.clone(), w.clone()).unwrap();
        assert_eq!(e.cell_count(), 0);
        assert_eq!(e.top(), &w);
        assert_eq!(e.bottom(), &w);
        assert_eq!(e.invert(), e);

        let d = five_to_one();
        let e5 = Diagram::eps(pres, d.top().clone()).unwrap();
        assert_eq!(e5.compose(&d).unwrap(), d);
        assert_eq!(d.compose(&Diagram::eps(d.presentation().clone(), d.bottom().clone()).unwrap()).unwrap(), d);
    }

    #[test]
    fn eps_rejects_empty_word() {
        assert!(matches!(Diagram::eps(p23(), Word::default()), Err(Error::EmptyWord)));
    }

    #[test]
    fn bottom_of_five_to_one_is_a() {
        let d = five_to_one();
        assert_eq!(d.presentation().word_string(d.bottom()), "a");
        assert_eq!(d.cell_count(), 6);
    }

    #[test]
    fn bottom_of_single_expansion_over_p9() {
        let pres = p9();
        let top = pres.parse_word("x").unwrap();
        let d = Diagram::new(pres.clone(), top, vec![Atom::forward(0, 0)]).unwrap();
        assert_eq!(pres.word_string(d.bottom()), "xxxxxxxxx");
    }

    #[test]
    fn compose_of_mutually_inverse_cells_is_a_dipole() {
        let pres = p23();
        let a = pres.parse_word("a").unwrap();
        let up = Diagram::new(pres.clone(), a.clone(), vec![Atom::forward(0, 0)]).unwrap();
        let down = up.invert();
        let dipole = up.compose(&down).unwrap();
        assert_eq!(dipole.cell_count(), 2);
        assert!(!dipole.is_reduced());
        let reduced = dipole.reduce();
        assert_eq!(reduced, Diagram::eps(pres, a).unwrap());
    }

    #[test]
    fn compose_rejects_label_mismatch() {
        let pres = p23();
        let a = pres.parse_word("a").unwrap();
        let b = pres.parse_word("b").unwrap();
        let ea = Diagram::eps(pres.clone(), a).unwrap();
        let eb = Diagram::eps(pres, b).unwrap();
        assert!(matches!(ea.compose(&eb), Err(Error::LabelMismatch)));
    }

    #[test]
    fn five_to_one_composes_from_its_halves() {
        let pres = p23();
        let top = pres.parse_word("aaaaa").unwrap();
        let first = Diagram::new(
            pres.clone(),
            top,
            vec![Atom::forward(0, 1), Atom::forward(0, 5)],
        )
        .unwrap();
        let second = Diagram::new(
            pres,
            first.bottom().clone(),
            vec![
                Atom::backward(1, 0),
                Atom::backward(0, 1),
                Atom::backward(1, 2),
                Atom::backward(0, 0),
            ],
        )
        .unwrap();
        let whole = first.compose(&second).unwrap();
        assert_eq!(whole, five_to_one());
        assert_eq!(whole.cell_count(), 6);
    }

    #[test]
    fn sum_of_identities_and_cell_counts() {
        let pres = p23();
        let u = pres.parse_word("ab").unwrap();
        let v = pres.parse_word("ba").unwrap();
        let eu = Diagram::eps(pres.clone(), u.clone()).unwrap();
        let ev = Diagram::eps(pres.clone(), v.clone()).unwrap();
        assert_eq!(eu.sum(&ev), Diagram::eps(pres.clone(), u.concat(&v)).unwrap());

        let mut rng = SplitMix64::new(5);
        let d1 = random_diagram(&pres, &mut rng, 2, 6);
        let d2 = random_diagram(&pres, &mut rng, 3, 5);
        assert_eq!(d1.sum(&d2).cell_count(), d1.cell_count() + d2.cell_count());
    }

    #[test]
    fn sum_is_associative_up_to_isotopy() {
        let pres = p23();
        let mut rng = SplitMix64::new(11);
        for _ in 0..20 {
            let a = random_diagram(&pres, &mut rng, 1, 5);
            let b = random_diagram(&pres, &mut rng, 2, 5);
            let c = random_diagram(&pres, &mut rng, 1, 5);
            assert_eq!(a.sum(&b).sum(&c).canon(), a.sum(&b.sum(&c)).canon());
        }
    }

    #[test]
    fn invert_flips_single_atom_and_is_involutive() {
        let pres = p23();
        let a = pres.parse_word("a").unwrap();
        let d = Diagram::new(pres, a, vec![Atom::forward(0, 0)]).unwrap();
        assert_eq!(d.invert().atoms(), &[Atom::backward(0, 0)]);
        assert_eq!(d.invert().invert(), d);

        let big = five_to_one();
        assert_eq!(big.invert().invert(), big);
    }

    #[test]
    fn reduce_of_product_with_inverse_is_identity() {
        let pres = p23();
        let mut rng = SplitMix64::new(23);
        for _ in 0..30 {
            let d = random_diagram(&pres, &mut rng, 1, 8);
            let loop_d = d.compose(&d.invert()).unwrap();
            assert_eq!(loop_d.reduce(), Diagram::eps(pres.clone(), d.top().clone()).unwrap());
        }
    }

    #[test]
    fn canon_identifies_disjoint_commuting_cells() {
        let pres = p2();
        let top = pres.parse_word("x^8").unwrap();
        let d1 = Diagram::new(
            pres.clone(),
            top.clone(),
            vec![Atom::forward(0, 0), Atom::forward(0, 5)],
        )
        .unwrap();
        let d2 = Diagram::new(
            pres,
            top,
            vec![Atom::forward(0, 4), Atom::forward(0, 0)],
        )
        .unwrap();
        assert_eq!(d1.canon(), d2.canon());
        assert_eq!(d1.canon().atoms(), &[Atom::forward(0, 0), Atom::forward(0, 5)]);
    }

    #[test]
    fn canon_is_idempotent() {
        let d = five_to_one();
        assert_eq!(d.canon().canon(), d.canon());
    }

    #[test]
    fn canon_is_shuffle_invariant() {
        // the shuffle oracle swaps adjacent commuting atoms independently of
        // the canonicalization machinery
        let pres = p23();
        let mut rng = SplitMix64::new(99);
        let top = pres.parse_word("aa").unwrap();
        let d = crate::verify::sample::random_diagram_from(&pres, &mut rng, &top, 20);
        assert_eq!(d.cell_count(), 20);
        let reference = d.canon();
        for _ in 0..1000 {
            let shuffled = shuffle_isotopic(&d, &mut rng, 12);
            assert_eq!(shuffled.canon(), reference);
            assert!(d.equal(&shuffled));
        }
    }

    #[test]
    fn x0_diagram_over_p2_is_reduced_despite_mixed_directions() {
        let pres = p2();
        let top = pres.parse_word("x").unwrap();
        let d = Diagram::new(
            pres,
            top,
            vec![
                Atom::forward(0, 0),
                Atom::forward(0, 0),
                Atom::backward(0, 1),
                Atom::backward(0, 0),
            ],
        )
        .unwrap();
        assert!(d.is_reduced());
        assert_eq!(d.reduce(), d);
        assert_eq!(d.reduce().cell_count(), 4);
        // cross-check with the independent pair search
        assert!(crate::verify::sample::naive_find_dipoles(&d).is_empty());
    }

    #[test]
    fn reduce_is_order_independent() {
        let pres = p23();
        let mut rng = SplitMix64::new(7);
        for _ in 0..25 {
            let d = random_diagram(&pres, &mut rng, 1, 14);
            let fast = d.reduce();
            for _ in 0..3 {
                let slow = crate::verify::sample::random_order_reduce(&d, &mut rng);
                assert_eq!(slow.canon(), fast);
            }
        }
    }

    #[test]
    fn equal_examples() {
        let pres = p23();
        let a = pres.parse_word("a").unwrap();
        let e = Diagram::eps(pres.clone(), a.clone()).unwrap();
        let cell = Diagram::new(pres, a, vec![Atom::forward(0, 0)]).unwrap();
        let dipole = cell.compose(&cell.invert()).unwrap();
        assert!(e.equal(&dipole));

        let d = five_to_one();
        let mut rng = SplitMix64::new(3);
        let shuffled = shuffle_isotopic(&d, &mut rng, 40);
        assert!(d.equal(&shuffled));
    }

    #[test]
    fn split_of_identity_and_of_positive_diagrams() {
        let pres = p23();
        let a = pres.parse_word("a").unwrap();
        let e = Diagram::eps(pres.clone(), a).unwrap();
        let (l, r) = e.split().unwrap();
        assert_eq!(l, e);
        assert_eq!(r, e);

        let mut rng = SplitMix64::new(17);
        for _ in 0..10 {
            let top = pres.parse_word("a").unwrap();
            let d = crate::verify::sample::random_positive_from(&pres, &mut rng, &top, 6);
            let (l, r) = d.split().unwrap();
            assert_eq!(l.canon(), d.canon());
            assert_eq!(r, Diagram::eps(pres.clone(), d.bottom().clone()).unwrap());
        }
    }

    #[test]
    fn split_of_five_to_one() {
        let d = five_to_one();
        let (l, r) = d.split().unwrap();
        assert_eq!(l.cell_count(), 2);
        assert_eq!(r.cell_count(), 4);
        assert!(l.is_positive());
        assert!(r.is_positive());
        assert_eq!(l.bottom(), r.bottom());
        assert_eq!(l.bottom().len(), 9);
        let recomposed = l.compose(&r.invert()).unwrap();
        assert_eq!(recomposed.canon(), d.canon());
    }

    #[test]
    fn split_rejects_reducible_and_non_left_letter_inputs() {
        let pres = p23();
        let a = pres.parse_word("a").unwrap();
        let cell = Diagram::new(pres, a, vec![Atom::forward(0, 0)]).unwrap();
        let dipole = cell.compose(&cell.invert()).unwrap();
        assert!(matches!(dipole.split(), Err(Error::Reducible)));

        let comm = Arc::new(Presentation::parse("<a,b | ab=ba>").unwrap());
        let w = comm.parse_word("ab").unwrap();
        let d = Diagram::new(comm, w, vec![Atom::forward(0, 0)]).unwrap();
        assert!(matches!(d.split(), Err(Error::NotLeftLetterForm)));
    }

    #[test]
    fn interchange_law() {
        let pres = p23();
        let mut rng = SplitMix64::new(31);
        for _ in 0..20 {
            let a = random_diagram(&pres, &mut rng, 1, 5);
            let b = random_diagram(&pres, &mut rng, 2, 5);
            let c = crate::verify::sample::random_diagram_from(&pres, &mut rng, a.bottom(), 5);
            let d = crate::verify::sample::random_diagram_from(&pres, &mut rng, b.bottom(), 5);
            let lhs = a.sum(&b).compose(&c.sum(&d)).unwrap().canon();
            let rhs = a.compose(&c).unwrap().sum(&b.compose(&d).unwrap()).canon();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn replay_validity_of_constructors() {
        let pres = p23();
        let mut rng = SplitMix64::new(41);
        for _ in 0..20 {
            let d = random_diagram(&pres, &mut rng, 1, 10);
            for op in [d.canon(), d.reduce(), d.invert()] {
                // Diagram::new replays and validates
                Diagram::new(pres.clone(), op.top().clone(), op.atoms().to_vec()).unwrap();
            }
        }
    }

    #[test]
    fn atom_count_never_grows_under_reduce_and_parity_is_preserved() {
        let pres = p23();
        let mut rng = SplitMix64::new(53);
        for _ in 0..40 {
            let d = random_diagram(&pres, &mut rng, 1, 12);
            let r = d.reduce();
            assert!(r.cell_count() <= d.cell_count());
            assert_eq!(r.cell_count() % 2, d.cell_count() % 2);
        }
    }

    #[test]
    fn text_format_round_trip() {
        let d = five_to_one();
        let text = d.to_text();
        assert_eq!(
            text,
            "base: aaaaa\n+0@1\n+0@5\n-1@0\n-0@1\n-1@2\n-0@0\n"
        );
        let parsed = Diagram::from_text(d.presentation().clone(), &text).unwrap();
        assert_eq!(parsed, d);
    }

    #[test]
    fn text_format_errors() {
        let pres = p23();
        assert!(matches!(
            Diagram::from_text(pres.clone(), "+0@1\n"),
            Err(Error::Format { .. })
        ));
        assert!(matches!(
            Diagram::from_text(pres.clone(), "base: aaaaa\n*0@1\n"),
            Err(Error::Format { .. })
        ));
        // invalid replay is caught
        assert!(matches!(
            Diagram::from_text(pres, "base: a\n+1@0\n"),
            Err(Error::InvalidAtom { .. })
        ));
    }
}
