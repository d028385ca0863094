//! The one-shot verification suite and its sampling helpers.
//!
//! [`run_all`] executes thirteen numbered checks covering the whole crate:
//! planar counts, uniqueness of reduction under randomized cancellation
//! orders, the groupoid axioms, the defining relations of the Thompson
//! groups, both directions of each family isomorphism, the piecewise-linear
//! representation, the semigroup counts, and the depth parity laws. Every
//! expected number is pinned here; the `acceptance` test target and
//! `dgw verify all` both run exactly these checks.
//!
//! [`sample`] holds seeded generators for random words and diagrams plus
//! slow, independent implementations of commutation swaps and dipole search.
//! These deliberately avoid the cell/edge engine inside the diagrams module
//! so that the two code paths check each other.

use std::sync::Arc;

use crate::diagrams::Diagram;
use crate::families::{standard_instances, FamilyKind, IsoInstance};
use crate::presentations::Presentation;
use crate::rng::SplitMix64;

/// The six-cell `(a^5, a)`-diagram over `<a,b | a=bab, b=aba>`, in the
/// diagram text format. Shipped as `testdata/five_to_one.diagram` as well.
pub const FIVE_TO_ONE: &str = include_str!("../testdata/five_to_one.diagram");

pub mod sample {
    use super::*;
    use crate::diagrams::{Atom, Diagram, Dir};
    use crate::presentations::Word;
    use crate::rng::SplitMix64;

    pub fn random_word(pres: &Arc<Presentation>, rng: &mut SplitMix64, len: usize) -> Word {
        let k = pres.alphabet().len();
        Word::new(
            (0..len)
                .map(|_| crate::presentations::Letter::new(rng.below(k)))
                .collect(),
        )
    }

    pub use crate::diagrams::valid_moves;

    /// A random derivation walked from `top`, at most `n_atoms` cells.
    pub fn random_diagram_from(
        pres: &Arc<Presentation>,
        rng: &mut SplitMix64,
        top: &Word,
        n_atoms: usize,
    ) -> Diagram {
        let mut word = top.clone();
        let mut atoms = Vec::new();
        for _ in 0..n_atoms {
            let moves = valid_moves(pres, &word);
            if moves.is_empty() {
                break;
            }
            let atom = *rng.pick(&moves);
            let rel = &pres.relations()[atom.rel];
            let (from, to) = match atom.dir {
                Dir::Forward => (&rel.lhs, &rel.rhs),
                Dir::Backward => (&rel.rhs, &rel.lhs),
            };
            word.splice(atom.offset, from.len(), to.letters());
            atoms.push(atom);
        }
        Diagram::new(pres.clone(), top.clone(), atoms).expect("walk produces valid derivations")
    }

    /// Random positive derivation (forward moves only) from `top`.
    pub fn random_positive_from(
        pres: &Arc<Presentation>,
        rng: &mut SplitMix64,
        top: &Word,
        n_atoms: usize,
    ) -> Diagram {
        let mut word = top.clone();
        let mut atoms = Vec::new();
        for _ in 0..n_atoms {
            let moves: Vec<Atom> = valid_moves(pres, &word)
                .into_iter()
                .filter(|a| a.dir == Dir::Forward)
                .collect();
            if moves.is_empty() {
                break;
            }
            let atom = *rng.pick(&moves);
            let rel = &pres.relations()[atom.rel];
            word.splice(atom.offset, rel.lhs.len(), rel.rhs.letters());
            atoms.push(atom);
        }
        Diagram::new(pres.clone(), top.clone(), atoms).expect("walk produces valid derivations")
    }

    /// Random diagram with a random nonempty base of length at most
    /// `max_base` and at most `max_atoms` cells.
    pub fn random_diagram(
        pres: &Arc<Presentation>,
        rng: &mut SplitMix64,
        max_base: usize,
        max_atoms: usize,
    ) -> Diagram {
        let len = 1 + rng.below(max_base);
        let top = random_word(pres, rng, len);
        let n = rng.below(max_atoms + 1);
        random_diagram_from(pres, rng, &top, n)
    }

    fn lens(pres: &Presentation, a: &Atom) -> (usize, usize) {
        let rel = &pres.relations()[a.rel];
        match a.dir {
            Dir::Forward => (rel.lhs.len(), rel.rhs.len()),
            Dir::Backward => (rel.rhs.len(), rel.lhs.len()),
        }
    }

    /// Swap the moving atom `m` (applied directly after `s`) in front of
    /// `s`, if their supports in the shared intermediate word are disjoint.
    /// Returns the updated pair `(m', s')`.
    fn swap_pair(pres: &Presentation, s: Atom, m: Atom) -> Option<(Atom, Atom)> {
        let (s_l1, s_l2) = lens(pres, &s);
        let (m_l1, m_l2) = lens(pres, &m);
        if m.offset + m_l1 <= s.offset {
            // m acts strictly left of s's output: s shifts by m's growth
            let s2 = Atom { offset: s.offset - m_l1 + m_l2, ..s };
            Some((m, s2))
        } else if m.offset >= s.offset + s_l2 {
            // m acts strictly right: m's offset rewinds past s's growth
            let m2 = Atom { offset: m.offset - s_l2 + s_l1, ..m };
            Some((m2, s))
        } else {
            None
        }
    }

    /// Swap atoms `k` and `k + 1` if they commute; `None` otherwise.
    pub fn swap_adjacent(d: &Diagram, k: usize) -> Option<Diagram> {
        let atoms = d.atoms();
        let (m2, s2) = swap_pair(d.presentation(), atoms[k], atoms[k + 1])?;
        let mut out = atoms.to_vec();
        out[k] = m2;
        out[k + 1] = s2;
        Some(
            Diagram::new(d.presentation().clone(), d.top().clone(), out)
                .expect("commutation swaps preserve validity"),
        )
    }

    /// Random walk over adjacent commuting swaps: an isotopic reshuffle.
    pub fn shuffle_isotopic(d: &Diagram, rng: &mut SplitMix64, steps: usize) -> Diagram {
        let mut cur = d.clone();
        if cur.cell_count() < 2 {
            return cur;
        }
        for _ in 0..steps {
            let k = rng.below(cur.cell_count() - 1);
            if let Some(next) = swap_adjacent(&cur, k) {
                cur = next;
            }
        }
        cur
    }

    /// All dipoles of `d`: pairs `(i, j)` where atom `j` bubbles left until
    /// it sits directly after atom `i` and the two are mutually inverse.
    pub fn naive_find_dipoles(d: &Diagram) -> Vec<(usize, usize)> {
        let pres = d.presentation();
        let atoms = d.atoms();
        let mut found = Vec::new();
        for j in 0..atoms.len() {
            let mut moving = atoms[j];
            for i in (0..j).rev() {
                let s = atoms[i];
                if s.rel == moving.rel
                    && s.dir == moving.dir.flip()
                    && s.offset == moving.offset
                {
                    found.push((i, j));
                    break;
                }
                match swap_pair(pres, s, moving) {
                    Some((m2, _)) => moving = m2,
                    None => break,
                }
            }
        }
        found
    }

    /// Cancel the dipole `(i, j)` found by [`naive_find_dipoles`].
    pub fn naive_cancel_dipole(d: &Diagram, i: usize, j: usize) -> Diagram {
        let pres = d.presentation().clone();
        let mut atoms = d.atoms().to_vec();
        // bubble j down to position i + 1
        let mut pos = j;
        while pos > i + 1 {
            let (m2, s2) = swap_pair(&pres, atoms[pos - 1], atoms[pos])
                .expect("dipole partner must commute past the atoms in between");
            atoms[pos - 1] = m2;
            atoms[pos] = s2;
            pos -= 1;
        }
        debug_assert_eq!(atoms[i].rel, atoms[i + 1].rel);
        debug_assert_eq!(atoms[i].dir, atoms[i + 1].dir.flip());
        debug_assert_eq!(atoms[i].offset, atoms[i + 1].offset);
        atoms.drain(i..=i + 1);
        Diagram::new(pres, d.top().clone(), atoms).expect("cancellation preserves validity")
    }

    /// Reduce by cancelling dipoles in a random order.
    pub fn random_order_reduce(d: &Diagram, rng: &mut SplitMix64) -> Diagram {
        let mut cur = d.clone();
        loop {
            let dipoles = naive_find_dipoles(&cur);
            if dipoles.is_empty() {
                return cur;
            }
            let &(i, j) = rng.pick(&dipoles);
            cur = naive_cancel_dipole(&cur, i, j);
        }
    }

    /// Random word in the generators of `F_r`, length at most `max_len`,
    /// indices at most `max_index`.
    pub fn random_fword(
        rng: &mut SplitMix64,
        r: usize,
        max_len: usize,
        max_index: usize,
    ) -> crate::thompson::FWord {
        use crate::thompson::{FGen, FWord};
        let len = rng.below(max_len + 1);
        let gens = (0..len)
            .map(|_| {
                let index = rng.below(max_index + 1);
                if rng.below(2) == 0 {
                    FGen::pos(index)
                } else {
                    FGen::neg(index)
                }
            })
            .collect();
        FWord::new(r, gens).expect("r >= 2")
    }

    /// Rewrite `w` into a different word for the same group element, using
    /// cancelling-pair insertions and the defining relations on adjacent
    /// same-sign pairs.
    pub fn random_equivalent_fword(
        rng: &mut SplitMix64,
        w: &crate::thompson::FWord,
    ) -> crate::thompson::FWord {
        use crate::thompson::{FGen, FWord};
        let r = w.r();
        let shift = r - 1;
        let mut gens = w.gens().to_vec();
        for _ in 0..1 + rng.below(4) {
            match rng.below(3) {
                0 => {
                    let k = rng.below(6);
                    let at = rng.below(gens.len() + 1);
                    let flip = rng.below(2) == 0;
                    gens.insert(at, FGen { index: k, inverse: flip });
                    gens.insert(at, FGen { index: k, inverse: !flip });
                }
                1 => {
                    // x_j x_i -> x_i x_{j+r-1} (or mirrored on inverses)
                    let spots: Vec<usize> = (0..gens.len().saturating_sub(1))
                        .filter(|&k| {
                            gens[k].inverse == gens[k + 1].inverse
                                && if gens[k].inverse {
                                    gens[k].index < gens[k + 1].index
                                } else {
                                    gens[k].index > gens[k + 1].index
                                }
                        })
                        .collect();
                    if spots.is_empty() {
                        continue;
                    }
                    let k = *rng.pick(&spots);
                    if gens[k].inverse {
                        // x_a^-1 x_b^-1 -> x_{b+r-1}^-1 x_a^-1, a < b
                        let (a, b) = (gens[k].index, gens[k + 1].index);
                        gens[k] = FGen::neg(b + shift);
                        gens[k + 1] = FGen::neg(a);
                    } else {
                        let (j, i) = (gens[k].index, gens[k + 1].index);
                        gens[k] = FGen::pos(i);
                        gens[k + 1] = FGen::pos(j + shift);
                    }
                }
                _ => {
                    // x_i x_c -> x_{c-r+1} x_i for c >= i + r (and mirrored)
                    let spots: Vec<usize> = (0..gens.len().saturating_sub(1))
                        .filter(|&k| {
                            gens[k].inverse == gens[k + 1].inverse
                                && if gens[k].inverse {
                                    gens[k].index >= gens[k + 1].index + r
                                } else {
                                    gens[k + 1].index >= gens[k].index + r
                                }
                        })
                        .collect();
                    if spots.is_empty() {
                        continue;
                    }
                    let k = *rng.pick(&spots);
                    if gens[k].inverse {
                        let (c, i) = (gens[k].index, gens[k + 1].index);
                        gens[k] = FGen::neg(i);
                        gens[k + 1] = FGen::neg(c - shift);
                    } else {
                        let (i, c) = (gens[k].index, gens[k + 1].index);
                        gens[k] = FGen::pos(c - shift);
                        gens[k + 1] = FGen::pos(i);
                    }
                }
            }
        }
        FWord::new(r, gens).expect("r >= 2")
    }
}

/// Result of one verification criterion.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub index: usize,
    pub name: &'static str,
    pub passed: bool,
    pub details: String,
}

impl Outcome {
    pub fn line(&self) -> String {
        format!(
            "{:2}  {}  {} ({})",
            self.index,
            if self.passed { "pass" } else { "FAIL" },
            self.name,
            self.details
        )
    }
}

pub const CRITERIA: [&str; 13] = [
    "planar realization counts of the six-cell example",
    "reduction is unique under randomized cancellation orders",
    "group axioms: inverses cancel and composition is associative",
    "defining relations of F_r hold as diagram equalities",
    "family homomorphisms respect the relations",
    "round trip: back and forth from F_r recovers every sampled word",
    "round trip: searched loops survive both directions",
    "basic diagram bottom lengths and cell counts",
    "piecewise-linear images validate and compose functorially",
    "sampled faithfulness: nontrivial diagrams map to nontrivial maps",
    "semigroup element counts",
    "images of x0 and x1 never commute",
    "depth parity laws on random positive diagrams",
];

fn p23() -> Arc<Presentation> {
    Arc::new(Presentation::parse("<a,b | a=bab, b=aba>").unwrap())
}

fn p2() -> Arc<Presentation> {
    Arc::new(Presentation::parse("<x | x=xx>").unwrap())
}

/// Instances exercised by the round-trip criteria.
fn roundtrip_instances() -> Vec<IsoInstance> {
    standard_instances()
}

fn c01_planar_counts(_rng: &mut SplitMix64) -> std::result::Result<String, String> {
    let d = Diagram::from_text(p23(), FIVE_TO_ONE).map_err(|e| e.to_string())?;
    let g = crate::geometry::realize(&d);
    let got = (g.vertex_count(), g.edge_count(), g.cell_count());
    if got != (10, 15, 6) {
        return Err(format!("expected (10, 15, 6), got {got:?}"));
    }
    if !g.euler_ok() {
        return Err("euler relation failed".into());
    }
    Ok("vertices=10 edges=15 cells=6".into())
}

fn c02_reduction_unique(rng: &mut SplitMix64) -> std::result::Result<String, String> {
    let presentations = [p23(), p2()];
    let mut checked = 0;
    for round in 0..1000 {
        let pres = &presentations[round % 2];
        let d = sample::random_diagram(pres, rng, 4, 30);
        let fast = d.reduce();
        let mut forms = Vec::new();
        for _ in 0..5 {
            let slow = sample::random_order_reduce(&d, rng);
            forms.push(slow.canon());
        }
        for f in &forms {
            if f != &fast {
                return Err(format!(
                    "cancellation order changed the irreducible form for {d}"
                ));
            }
        }
        checked += 1;
    }
    Ok(format!("{checked} diagrams x 5 random orders agreed"))
}

fn c03_group_axioms(rng: &mut SplitMix64) -> std::result::Result<String, String> {
    let pres = p23();
    for _ in 0..200 {
        let d = sample::random_diagram(&pres, rng, 3, 12);
        let e = Diagram::eps(pres.clone(), d.top().clone()).unwrap();
        if d.compose(&d.invert()).unwrap().reduce() != e {
            return Err(format!("inverse law failed for {d}"));
        }
        let b = sample::random_diagram_from(&pres, rng, d.bottom(), 8);
        let c = sample::random_diagram_from(&pres, rng, b.bottom(), 8);
        let left = d.compose(&b).unwrap().compose(&c).unwrap().canon();
        let right = d.compose(&b.compose(&c).unwrap()).unwrap().canon();
        if left != right {
            return Err("associativity failed".into());
        }
    }
    Ok("200 random diagrams: inverse and associativity laws hold".into())
}

fn c04_relations(_rng: &mut SplitMix64) -> std::result::Result<String, String> {
    let mut checked = 0;
    for r in [2, 3, 7, 9, 11, 25] {
        for j in 1..=6 {
            for i in 0..j {
                if !crate::thompson::relation_holds(r, i, j).map_err(|e| e.to_string())? {
                    return Err(format!("x_{j} x_{i} = x_{i} x_{} failed for r={r}", j + r - 1));
                }
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} relation instances hold"))
}

fn c05_phi_homomorphism(_rng: &mut SplitMix64) -> std::result::Result<String, String> {
    let kinds = [
        FamilyKind::Fib3,
        FamilyKind::Fib4,
        FamilyKind::JohnsonEven(1),
        FamilyKind::JohnsonEven(2),
        FamilyKind::JohnsonOdd(2),
    ];
    let mut checked = 0;
    for kind in kinds {
        let inst = IsoInstance::new(kind).unwrap();
        let rp = inst.rprime();
        for j in 1..=4usize {
            for i in 0..j {
                let gi = crate::isomorphisms::phi(&inst, &crate::thompson::generator(rp, i).unwrap())
                    .map_err(|e| e.to_string())?;
                let gj = crate::isomorphisms::phi(&inst, &crate::thompson::generator(rp, j).unwrap())
                    .map_err(|e| e.to_string())?;
                let gk = crate::isomorphisms::phi(
                    &inst,
                    &crate::thompson::generator(rp, j + rp - 1).unwrap(),
                )
                .map_err(|e| e.to_string())?;
                let lhs = gj.compose(&gi).unwrap().reduce();
                let rhs = gi.compose(&gk).unwrap().reduce();
                if lhs != rhs {
                    return Err(format!(
                        "phi(x_{j}) phi(x_{i}) != phi(x_{i}) phi(x_{}) for {}",
                        j + rp - 1,
                        inst.name()
                    ));
                }
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} pushed-forward relations hold across 5 instances"))
}

fn c06_roundtrip_words(rng: &mut SplitMix64) -> std::result::Result<String, String> {
    let mut total = 0;
    for inst in roundtrip_instances() {
        let rp = inst.rprime();
        for _ in 0..200 {
            let w = sample::random_fword(rng, rp, 12, 5);
            let d = crate::thompson::word_to_diagram(&w).map_err(|e| e.to_string())?;
            let image = crate::isomorphisms::phi(&inst, &d).map_err(|e| e.to_string())?;
            let back = crate::isomorphisms::psi(&inst, &image).map_err(|e| e.to_string())?;
            if !back.equal(&d) {
                return Err(format!("psi(phi(w)) != w for {} on '{w}'", inst.name()));
            }
            total += 1;
        }
    }
    Ok(format!("{total} words round-tripped over 6 instances"))
}

/// Distinct reduced `(a, a)`-diagrams over `<a,b | a=bab, b=aba>` assembled
/// from breadth-first derivations: two expansion geodesics `a -> u` and
/// `a -> v` joined by a short searched bridge `u -> v`. The nontrivial
/// loops of the diagram group live on exactly these re-association cycles.
pub fn searched_loops(limit: usize) -> Vec<Diagram> {
    let pres = p23();
    let a = pres.parse_word("a").unwrap();
    // every word reachable from a by exactly four expansions
    let mut level: Vec<crate::presentations::Word> = vec![a.clone()];
    for _ in 0..4 {
        let mut next = std::collections::HashSet::new();
        for w in &level {
            for mv in crate::diagrams::valid_moves(&pres, w) {
                if mv.dir != crate::diagrams::Dir::Forward {
                    continue;
                }
                let rel = &pres.relations()[mv.rel];
                let mut letters = w.letters().to_vec();
                letters.splice(
                    mv.offset..mv.offset + rel.lhs.len(),
                    rel.rhs.letters().iter().copied(),
                );
                next.insert(crate::presentations::Word::new(letters));
            }
        }
        level = next.into_iter().collect();
    }
    let mut targets: Vec<crate::presentations::Word> = level;
    targets.sort_by_key(|w| pres.word_string(w));

    let mut out: Vec<Diagram> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    'outer: for bridge_depth in [2usize, 4] {
        for (i, u) in targets.iter().enumerate() {
            for v in targets.iter().skip(i + 1) {
                let Some(bridge) = crate::isomorphisms::bfs_diagram(&pres, u, v, bridge_depth)
                else {
                    continue;
                };
                let leg1 = crate::isomorphisms::bfs_diagram(&pres, &a, u, 4)
                    .expect("u is four expansions away");
                let leg2 = crate::isomorphisms::bfs_diagram(&pres, &a, v, 4)
                    .expect("v is four expansions away");
                let loop_d = leg1
                    .compose(&bridge)
                    .unwrap()
                    .compose(&leg2.invert())
                    .unwrap()
                    .reduce();
                if loop_d.cell_count() == 0 {
                    continue;
                }
                if seen.insert(loop_d.to_text()) {
                    out.push(loop_d);
                    if out.len() >= limit {
                        break 'outer;
                    }
                }
            }
        }
    }
    out
}

fn c07_roundtrip_loops(_rng: &mut SplitMix64) -> std::result::Result<String, String> {
    let inst = IsoInstance::new(FamilyKind::Fib3).unwrap();
    let loops = searched_loops(60);
    if loops.len() < 50 {
        return Err(format!("only {} distinct loops found", loops.len()));
    }
    for loop_d in &loops {
        let back = crate::isomorphisms::psi(&inst, loop_d).map_err(|e| e.to_string())?;
        let again = crate::isomorphisms::phi(&inst, &back).map_err(|e| e.to_string())?;
        if !again.equal(&loop_d.reduce()) {
            return Err(format!("phi(psi(.)) changed a searched loop:\n{loop_d}"));
        }
    }
    Ok(format!("{} distinct searched loops survived both directions", loops.len()))
}

fn c08_basic_metrics(_rng: &mut SplitMix64) -> std::result::Result<String, String> {
    let mut checked = 0;
    for s in 1..=3usize {
        let inst = IsoInstance::new(FamilyKind::JohnsonOdd(s)).unwrap();
        let r = 2 * s + 1;
        for name in ['a', 'b'] {
            let letter = inst.target().letter_by_name(name).unwrap();
            let top = crate::presentations::Word::single(letter);
            let d = crate::families::basic_diagram(&inst, letter, 0, &top)
                .map_err(|e| e.to_string())?;
            if d.bottom().len() != r * r || d.cell_count() != r + 1 {
                return Err(format!(
                    "odd family s={s}, letter {name}: got length {} cells {}",
                    d.bottom().len(),
                    d.cell_count()
                ));
            }
            checked += 1;
        }
    }
    for s in 1..=4usize {
        let inst = IsoInstance::new(FamilyKind::JohnsonEven(s)).unwrap();
        for name in ['a', 'b'] {
            let letter = inst.target().letter_by_name(name).unwrap();
            let top = crate::presentations::Word::single(letter);
            let d = crate::families::basic_diagram(&inst, letter, 0, &top)
                .map_err(|e| e.to_string())?;
            if d.bottom().len() != 4 * s - 1 || d.cell_count() != 2 {
                return Err(format!(
                    "even family s={s}, letter {name}: got length {} cells {}",
                    d.bottom().len(),
                    d.cell_count()
                ));
            }
            checked += 1;
        }
    }
    let fib4 = IsoInstance::new(FamilyKind::Fib4).unwrap();
    for name in ['a', 'b'] {
        let letter = fib4.target().letter_by_name(name).unwrap();
        let top = crate::presentations::Word::single(letter);
        let d = crate::families::basic_diagram(&fib4, letter, 0, &top)
            .map_err(|e| e.to_string())?;
        if d.bottom().len() != 11 || d.cell_count() != 2 {
            return Err("fib4 basic metrics wrong".into());
        }
        checked += 1;
    }
    Ok(format!("{checked} basic diagrams sized correctly"))
}

fn c09_pl_representation(rng: &mut SplitMix64) -> std::result::Result<String, String> {
    use num_bigint::BigInt;
    use num_rational::BigRational;
    // frozen breakpoints of the x0 generator of F_2
    let q = |n: i64, d: i64| BigRational::new(BigInt::from(n), BigInt::from(d));
    let g0 = crate::thompson::generator(2, 0).unwrap();
    let f0 = crate::plmaps::diagram_to_plmap(&g0);
    let expect = [
        (q(0, 1), q(0, 1)),
        (q(1, 4), q(1, 2)),
        (q(1, 2), q(3, 4)),
        (q(1, 1), q(1, 1)),
    ];
    if f0.points() != expect {
        return Err(format!("x0 breakpoints wrong: {f0}"));
    }
    // slope/breakpoint validation for random elements of F_2 and F_9
    for r in [2usize, 9] {
        for _ in 0..100 {
            let w = sample::random_fword(rng, r, 8, 4);
            let d = crate::thompson::word_to_diagram(&w).map_err(|e| e.to_string())?;
            let f = crate::plmaps::diagram_to_plmap(&d);
            if !f.validate_fr(r) {
                return Err(format!("image of '{w}' fails validation for r={r}"));
            }
        }
    }
    // functoriality on random composable pairs
    let pres = p23();
    for _ in 0..200 {
        let d1 = sample::random_diagram(&pres, rng, 3, 10);
        let d2 = sample::random_diagram_from(&pres, rng, d1.bottom(), 10);
        let lhs = crate::plmaps::diagram_to_plmap(&d1.compose(&d2).unwrap());
        let rhs = crate::plmaps::diagram_to_plmap(&d1)
            .then(&crate::plmaps::diagram_to_plmap(&d2))
            .map_err(|e| e.to_string())?;
        if lhs != rhs {
            return Err("functoriality failed".into());
        }
    }
    Ok("breakpoints pinned, 200 images validated, 200 pairs functorial".into())
}

fn c10_faithfulness(rng: &mut SplitMix64) -> std::result::Result<String, String> {
    let pres = p2();
    let x = pres.parse_word("x").unwrap();
    let mut found = 0;
    let mut attempts = 0;
    while found < 500 {
        attempts += 1;
        if attempts > 20_000 {
            return Err("sampling budget exhausted".into());
        }
        let n = 1 + rng.below(10);
        let left = sample::random_positive_from(&pres, rng, &x, n);
        let right = sample::random_positive_from(&pres, rng, &x, n);
        if left.bottom() != right.bottom() {
            continue;
        }
        let d = left.compose(&right.invert()).unwrap().reduce();
        if d.cell_count() == 0 {
            continue;
        }
        let f = crate::plmaps::diagram_to_plmap(&d);
        if f.is_identity() {
            return Err(format!("nontrivial reduced diagram maps to the identity:\n{d}"));
        }
        found += 1;
    }
    Ok("500 nontrivial reduced diagrams map to nontrivial maps".into())
}

fn c11_semigroup_counts(_rng: &mut SplitMix64) -> std::result::Result<String, String> {
    let fib3 = Arc::new(crate::families::fibonacci_presentation(3).unwrap());
    match crate::semigroup::count_elements_default(&fib3) {
        crate::semigroup::CountOutcome::Stable(8) => {}
        other => return Err(format!("fibonacci(3): expected Stable(8), got {other:?}")),
    }
    let fib4 = IsoInstance::new(FamilyKind::Fib4).unwrap();
    match crate::semigroup::count_elements_default(fib4.target()) {
        crate::semigroup::CountOutcome::Stable(10) => {}
        other => return Err(format!("fib4 target: expected Stable(10), got {other:?}")),
    }
    Ok("fibonacci(3) has 8 elements, the fib4 target has 10".into())
}

fn c12_nonabelian(_rng: &mut SplitMix64) -> std::result::Result<String, String> {
    for inst in roundtrip_instances() {
        let rp = inst.rprime();
        let g0 = crate::isomorphisms::phi(&inst, &crate::thompson::generator(rp, 0).unwrap())
            .map_err(|e| e.to_string())?;
        let g1 = crate::isomorphisms::phi(&inst, &crate::thompson::generator(rp, 1).unwrap())
            .map_err(|e| e.to_string())?;
        let ab = g0.compose(&g1).unwrap();
        let ba = g1.compose(&g0).unwrap();
        if ab.equal(&ba) {
            return Err(format!("images commute for {}", inst.name()));
        }
    }
    Ok("images of x0, x1 fail to commute in all 6 instances".into())
}

fn c13_parity_laws(rng: &mut SplitMix64) -> std::result::Result<String, String> {
    let pres = p23();
    let a = pres.parse_word("a").unwrap();
    for _ in 0..100 {
        let n = rng.below(25);
        let d = sample::random_positive_from(&pres, rng, &a, n);
        let g = crate::geometry::realize(&d);
        let depths = crate::geometry::depths(&d, &g).map_err(|e| e.to_string())?;
        for v in 0..g.vertex_count() {
            let v = crate::geometry::VertexId(v);
            for list in [g.outgoing(v), g.incoming(v)] {
                for pair in list.windows(2) {
                    let (e1, e2) = (pair[0], pair[1]);
                    if g.label_name(e1) == g.label_name(e2) {
                        return Err(format!("labels repeat in rotation order at {v:?}\n{d}"));
                    }
                    if depths.get(e1) % 2 == depths.get(e2) % 2 {
                        return Err(format!("depth parity repeats in rotation order at {v:?}\n{d}"));
                    }
                }
            }
            // topmost incoming/outgoing pair
            if let (Some(&ein), Some(&eout)) = (g.incoming(v).first(), g.outgoing(v).first()) {
                let same_label = g.label_name(ein) == g.label_name(eout);
                let same_parity = depths.get(ein) % 2 == depths.get(eout) % 2;
                if same_label == same_parity {
                    return Err(format!(
                        "topmost pair at {v:?} violates the label/parity law\n{d}"
                    ));
                }
            }
        }
    }
    Ok("parity laws hold at every vertex of 100 random positive diagrams".into())
}

type Check = fn(&mut SplitMix64) -> std::result::Result<String, String>;

/// Run one criterion (1-based index).
pub fn run_criterion(index: usize, seed: u64) -> Outcome {
    let mut rng = SplitMix64::new(seed).fork(index as u64);
    let checks: [Check; 13] = [
        c01_planar_counts,
        c02_reduction_unique,
        c03_group_axioms,
        c04_relations,
        c05_phi_homomorphism,
        c06_roundtrip_words,
        c07_roundtrip_loops,
        c08_basic_metrics,
        c09_pl_representation,
        c10_faithfulness,
        c11_semigroup_counts,
        c12_nonabelian,
        c13_parity_laws,
    ];
    assert!((1..=checks.len()).contains(&index), "criterion index out of range");
    let name = CRITERIA[index - 1];
    match checks[index - 1](&mut rng) {
        Ok(details) => Outcome { index, name, passed: true, details },
        Err(details) => Outcome { index, name, passed: false, details },
    }
}

/// Run the whole suite concurrently; outcomes come back ordered by index.
pub fn run_all(seed: u64) -> Vec<Outcome> {
    std::thread::scope(|scope| {
        let handles: Vec<_> = (1..=CRITERIA.len())
            .map(|i| scope.spawn(move || run_criterion(i, seed)))
            .collect();
        handles.into_iter().map(|h| h.join().expect("criterion thread")).collect()
    })
}
