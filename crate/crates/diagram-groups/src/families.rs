//! The Fibonacci-like and Johnson presentation families, their two-letter
//! reduced forms, and the basic diagrams generating the images of the
//! homomorphisms in the isomorphisms module.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::diagrams::{Atom, Diagram};
use crate::error::{Error, Result};
use crate::presentations::{Letter, Presentation, Word};

/// Fibonacci presentation on `n` letters: `a_i = a_{i+1} a_{i+2}` with
/// indices cyclic. For `n = 1` this is `<x | x=xx>`.
pub fn fibonacci_presentation(n: usize) -> Result<Presentation> {
    johnson_presentation(n, 2)
}

/// Johnson presentation on `n` letters with right-hand sides of length `r`:
/// `a_i = a_{i+1} ... a_{i+r}`, indices cyclic. For `n = 1` this is
/// `<x | x = x^r>`.
pub fn johnson_presentation(n: usize, r: usize) -> Result<Presentation> {
    if n < 1 {
        return Err(Error::InvalidParameter(format!("need n >= 1, got {n}")));
    }
    if r < 2 {
        return Err(Error::RankTooSmall(r));
    }
    if n > 26 {
        return Err(Error::InvalidParameter(format!(
            "alphabet names are single letters, so n <= 26 (got {n})"
        )));
    }
    let alphabet: Vec<char> = if n == 1 {
        vec!['x']
    } else {
        (0..n).map(|i| (b'a' + i as u8) as char).collect()
    };
    let relations = (0..n)
        .map(|i| {
            let lhs = Word::single(Letter::new(i));
            let rhs = Word::new((1..=r).map(|k| Letter::new((i + k) % n)).collect());
            (lhs, rhs)
        })
        .collect();
    Presentation::new(alphabet, relations)
}

/// The families with isomorphism machinery attached.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum FamilyKind {
    /// Three-letter Fibonacci presentation, reduced to `<a,b | a=bab, b=aba>`.
    Fib3,
    /// Four-letter Fibonacci presentation, reduced to
    /// `<a,b | a=baba, b=abababab>`.
    Fib4,
    /// `<a,b | a=b(ab)^s, b=a(ba)^s>`, odd Johnson parameter `r = 2s + 1`.
    JohnsonOdd(usize),
    /// `<a,b | a=(ba)^s, b=(ab)^s>`, even Johnson parameter `r = 2s`.
    JohnsonEven(usize),
}

/// How basic diagrams of an instance are built and peeled apart.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub(crate) enum Scheme {
    /// Basic = one top cell plus one partner cell per rhs letter
    /// (`r + 1` cells).
    Odd { r: usize },
    /// Basic = one top cell plus the forced partner on the first rhs letter
    /// (2 cells).
    Even,
}

/// One target of the diagram-group isomorphisms: a two-letter presentation
/// together with the matching Thompson parameter `r'`.
#[derive(Clone, Debug)]
pub struct IsoInstance {
    kind: FamilyKind,
    target: Arc<Presentation>,
    rprime: usize,
    scheme: Scheme,
}

impl IsoInstance {
    pub fn new(kind: FamilyKind) -> Result<IsoInstance> {
        let (text, rprime, scheme) = match kind {
            FamilyKind::Fib3 => ("<a,b | a=bab, b=aba>".to_string(), 9, Scheme::Odd { r: 3 }),
            FamilyKind::Fib4 => (
                "<a,b | a=baba, b=abababab>".to_string(),
                11,
                Scheme::Even,
            ),
            FamilyKind::JohnsonOdd(s) => {
                if s < 1 {
                    return Err(Error::InvalidParameter("need s >= 1".into()));
                }
                let r = 2 * s + 1;
                let a_rhs: String = (0..r).map(|k| if k % 2 == 0 { 'b' } else { 'a' }).collect();
                let b_rhs: String = (0..r).map(|k| if k % 2 == 0 { 'a' } else { 'b' }).collect();
                (format!("<a,b | a={a_rhs}, b={b_rhs}>"), r * r, Scheme::Odd { r })
            }
            FamilyKind::JohnsonEven(s) => {
                if s < 1 {
                    return Err(Error::InvalidParameter("need s >= 1".into()));
                }
                let a_rhs: String = "ba".repeat(s);
                let b_rhs: String = "ab".repeat(s);
                (format!("<a,b | a={a_rhs}, b={b_rhs}>"), 4 * s - 1, Scheme::Even)
            }
        };
        let target = Arc::new(Presentation::parse(&text).expect("well-formed"));
        debug_assert!(target.is_left_letter_form());
        Ok(IsoInstance { kind, target, rprime, scheme })
    }

    pub fn kind(&self) -> FamilyKind {
        self.kind
    }

    pub fn target(&self) -> &Arc<Presentation> {
        &self.target
    }

    /// The Thompson parameter: the instance's diagram group is `F_{r'}`.
    pub fn rprime(&self) -> usize {
        self.rprime
    }

    /// The `s` parameter where the family has one.
    pub fn s(&self) -> Option<usize> {
        match self.kind {
            FamilyKind::JohnsonOdd(s) | FamilyKind::JohnsonEven(s) => Some(s),
            FamilyKind::Fib3 | FamilyKind::Fib4 => None,
        }
    }

    /// The Johnson parameter `r` for the symmetric families.
    pub fn johnson_r(&self) -> Option<usize> {
        match self.kind {
            FamilyKind::Fib3 => Some(3),
            FamilyKind::Fib4 => Some(4),
            FamilyKind::JohnsonOdd(s) => Some(2 * s + 1),
            FamilyKind::JohnsonEven(s) => Some(2 * s),
        }
    }

    pub(crate) fn scheme(&self) -> Scheme {
        self.scheme
    }

    pub fn name(&self) -> String {
        match self.kind {
            FamilyKind::Fib3 => "fib3".into(),
            FamilyKind::Fib4 => "fib4".into(),
            FamilyKind::JohnsonOdd(s) => format!("johnson-odd-{s}"),
            FamilyKind::JohnsonEven(s) => format!("johnson-even-{s}"),
        }
    }
}

impl fmt::Display for IsoInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

impl FromStr for IsoInstance {
    type Err = Error;

    fn from_str(s: &str) -> Result<IsoInstance> {
        let norm = s.trim().to_ascii_lowercase().replace(['(', ')'], "-");
        let norm = norm.trim_end_matches('-');
        if norm == "fib3" {
            return IsoInstance::new(FamilyKind::Fib3);
        }
        if norm == "fib4" {
            return IsoInstance::new(FamilyKind::Fib4);
        }
        for (prefix, odd) in [("johnson-odd-", true), ("johnson-even-", false)] {
            if let Some(rest) = norm.strip_prefix(prefix) {
                let s: usize = rest.parse().map_err(|_| {
                    Error::InvalidParameter(format!("bad family parameter in '{s}'"))
                })?;
                let kind = if odd { FamilyKind::JohnsonOdd(s) } else { FamilyKind::JohnsonEven(s) };
                return IsoInstance::new(kind);
            }
        }
        Err(Error::InvalidParameter(format!(
            "unknown instance '{s}' (expected fib3, fib4, johnson-odd-<s> or johnson-even-<s>)"
        )))
    }
}

/// All instances the round-trip machinery is exercised on.
pub fn standard_instances() -> Vec<IsoInstance> {
    [
        FamilyKind::Fib3,
        FamilyKind::Fib4,
        FamilyKind::JohnsonOdd(1),
        FamilyKind::JohnsonOdd(2),
        FamilyKind::JohnsonEven(1),
        FamilyKind::JohnsonEven(2),
    ]
    .into_iter()
    .map(|k| IsoInstance::new(k).expect("valid"))
    .collect()
}

/// The basic diagram of `inst` over `letter`, placed at `offset` inside
/// `top`. Its bottom replaces the letter by an alternating factor of length
/// `r'` beginning and ending with the letter itself.
pub fn basic_diagram(
    inst: &IsoInstance,
    letter: Letter,
    offset: usize,
    top: &Word,
) -> Result<Diagram> {
    if offset >= top.len() || top[offset] != letter {
        return Err(Error::InvalidParameter(format!(
            "letter '{}' not at offset {offset} of the given word",
            inst.target.name_of(letter)
        )));
    }
    let pres = inst.target();
    let rel0 = pres
        .relation_of_letter(letter)
        .ok_or_else(|| Error::InvalidParameter("letter has no defining relation".into()))?;
    let rhs = pres.relations()[rel0].rhs.clone();
    let mut atoms = vec![Atom::forward(rel0, offset)];
    match inst.scheme() {
        Scheme::Odd { r } => {
            for (k, &c) in rhs.letters().iter().enumerate() {
                let rel = pres.relation_of_letter(c).expect("left-letter form");
                atoms.push(Atom::forward(rel, offset + k * r));
            }
        }
        Scheme::Even => {
            let rel = pres.relation_of_letter(rhs[0]).expect("left-letter form");
            atoms.push(Atom::forward(rel, offset));
        }
    }
    Diagram::new(pres.clone(), top.clone(), atoms)
}

/// Alternating two-letter word of the given length whose first letter has
/// alphabet index `start`.
pub(crate) fn alternating_word(len: usize, start: usize) -> Word {
    Word::new((0..len).map(|i| Letter::new((start + i) % 2)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fibonacci_examples() {
        let f3 = fibonacci_presentation(3).unwrap();
        assert_eq!(f3.to_string(), "<a,b,c | a=bc, b=ca, c=ab>");
        let f1 = fibonacci_presentation(1).unwrap();
        assert_eq!(f1.to_string(), "<x | x=xx>");
        let f2 = fibonacci_presentation(2).unwrap();
        assert_eq!(f2.to_string(), "<a,b | a=ba, b=ab>");
        assert!(fibonacci_presentation(0).is_err());
    }

    #[test]
    fn johnson_examples() {
        assert_eq!(
            johnson_presentation(3, 2).unwrap(),
            fibonacci_presentation(3).unwrap()
        );
        let j23 = johnson_presentation(2, 3).unwrap();
        assert_eq!(j23.to_string(), "<a,b | a=bab, b=aba>");
        let j24 = johnson_presentation(2, 4).unwrap();
        assert_eq!(j24.to_string(), "<a,b | a=baba, b=abab>");
        assert!(johnson_presentation(2, 1).is_err());
    }

    #[test]
    fn families_are_left_letter_form() {
        for n in 1..6 {
            for r in 2..6 {
                assert!(johnson_presentation(n, r).unwrap().is_left_letter_form());
            }
        }
        for inst in standard_instances() {
            assert!(inst.target().is_left_letter_form());
        }
    }

    #[test]
    fn instance_parameters() {
        let fib3 = IsoInstance::new(FamilyKind::Fib3).unwrap();
        assert_eq!(fib3.rprime(), 9);
        assert_eq!(fib3.target().to_string(), "<a,b | a=bab, b=aba>");

        let fib4 = IsoInstance::new(FamilyKind::Fib4).unwrap();
        assert_eq!(fib4.rprime(), 11);
        assert_eq!(fib4.target().to_string(), "<a,b | a=baba, b=abababab>");

        let je1 = IsoInstance::new(FamilyKind::JohnsonEven(1)).unwrap();
        assert_eq!(je1.rprime(), 3);
        assert_eq!(je1.target().to_string(), "<a,b | a=ba, b=ab>");

        let jo1 = IsoInstance::new(FamilyKind::JohnsonOdd(1)).unwrap();
        assert_eq!(jo1.target(), fib3.target());
        assert_eq!(jo1.rprime(), 9);

        let jo2 = IsoInstance::new(FamilyKind::JohnsonOdd(2)).unwrap();
        assert_eq!(jo2.rprime(), 25);
        assert_eq!(jo2.target().to_string(), "<a,b | a=babab, b=ababa>");
    }

    #[test]
    fn instance_names_parse_back() {
        for inst in standard_instances() {
            let parsed: IsoInstance = inst.name().parse().unwrap();
            assert_eq!(parsed.kind(), inst.kind());
        }
        let parenthesized: IsoInstance = "johnson-odd(2)".parse().unwrap();
        assert_eq!(parenthesized.kind(), FamilyKind::JohnsonOdd(2));
        assert!("fib5".parse::<IsoInstance>().is_err());
    }

    #[test]
    fn fib3_basic_diagram() {
        let inst = IsoInstance::new(FamilyKind::Fib3).unwrap();
        let pres = inst.target();
        let a = pres.letter_by_name('a').unwrap();
        let top = pres.parse_word("a").unwrap();
        let d = basic_diagram(&inst, a, 0, &top).unwrap();
        assert_eq!(
            d.atoms(),
            &[
                Atom::forward(0, 0),
                Atom::forward(1, 0),
                Atom::forward(0, 3),
                Atom::forward(1, 6),
            ]
        );
        assert_eq!(pres.word_string(d.bottom()), "ababababa"); // a(ba)^4
        assert_eq!(d.cell_count(), 4);
    }

    #[test]
    fn fib4_basic_diagram() {
        let inst = IsoInstance::new(FamilyKind::Fib4).unwrap();
        let pres = inst.target();
        let a = pres.letter_by_name('a').unwrap();
        let b = pres.letter_by_name('b').unwrap();
        let top_a = pres.parse_word("a").unwrap();
        let d = basic_diagram(&inst, a, 0, &top_a).unwrap();
        assert_eq!(d.atoms(), &[Atom::forward(0, 0), Atom::forward(1, 0)]);
        assert_eq!(pres.word_string(d.bottom()), "abababababa"); // a(ba)^5
        assert_eq!(d.cell_count(), 2);

        let top_b = pres.parse_word("b").unwrap();
        let db = basic_diagram(&inst, b, 0, &top_b).unwrap();
        assert_eq!(db.atoms(), &[Atom::forward(1, 0), Atom::forward(0, 0)]);
        assert_eq!(pres.word_string(db.bottom()), "bababababab"); // b(ab)^5
        assert_eq!(db.bottom().len(), 11);
    }

    #[test]
    fn johnson_even_basic_diagram_lengths() {
        let inst = IsoInstance::new(FamilyKind::JohnsonEven(2)).unwrap();
        let pres = inst.target();
        let a = pres.letter_by_name('a').unwrap();
        let top = pres.parse_word("a").unwrap();
        let d = basic_diagram(&inst, a, 0, &top).unwrap();
        assert_eq!(pres.word_string(d.bottom()), "abababa"); // (ab)^3 a, length 4s - 1 = 7
        assert_eq!(d.cell_count(), 2);
    }

    #[test]
    fn basic_diagram_metrics_across_parameters() {
        // odd families: bottoms of length r^2, r + 1 cells
        for s in 1..=3 {
            let inst = IsoInstance::new(FamilyKind::JohnsonOdd(s)).unwrap();
            let r = 2 * s + 1;
            for name in ['a', 'b'] {
                let letter = inst.target().letter_by_name(name).unwrap();
                let top = Word::single(letter);
                let d = basic_diagram(&inst, letter, 0, &top).unwrap();
                assert_eq!(d.bottom().len(), r * r);
                assert_eq!(d.cell_count(), r + 1);
                assert_alternating_with_ends(&inst, d.bottom(), letter);
            }
        }
        // even families: bottoms of length 4s - 1, two cells
        for s in 1..=4 {
            let inst = IsoInstance::new(FamilyKind::JohnsonEven(s)).unwrap();
            for name in ['a', 'b'] {
                let letter = inst.target().letter_by_name(name).unwrap();
                let top = Word::single(letter);
                let d = basic_diagram(&inst, letter, 0, &top).unwrap();
                assert_eq!(d.bottom().len(), 4 * s - 1);
                assert_eq!(d.cell_count(), 2);
                assert_alternating_with_ends(&inst, d.bottom(), letter);
            }
        }
    }

    fn assert_alternating_with_ends(inst: &IsoInstance, w: &Word, letter: Letter) {
        assert_eq!(w[0], letter);
        assert_eq!(w[w.len() - 1], letter);
        for i in 0..w.len() - 1 {
            assert_ne!(w[i], w[i + 1], "bottom of a basic diagram must alternate: {}",
                inst.target().word_string(w));
        }
    }

    #[test]
    fn basic_diagram_rejects_mismatched_offset() {
        let inst = IsoInstance::new(FamilyKind::Fib3).unwrap();
        let pres = inst.target();
        let a = pres.letter_by_name('a').unwrap();
        let top = pres.parse_word("ba").unwrap();
        assert!(basic_diagram(&inst, a, 0, &top).is_err());
        assert!(basic_diagram(&inst, a, 1, &top).is_ok());
    }
}
