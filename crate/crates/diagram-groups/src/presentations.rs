//! Semigroup presentations: an alphabet plus ordered rewriting relations.
//!
//! Letters are stored as indices into the presentation's alphabet, so words
//! and diagrams stay cheap to manipulate; symbol names live only here.
//!
//! Text format: `<` NAME (`,` NAME)* `|` REL (`,` REL)* `>` where
//! REL is `WORD = WORD`, WORD is a sequence of single-ASCII-letter names and
//! whitespace is ignored. Exponent shorthand `a^3` is accepted on input and
//! never emitted.

use std::fmt;

use crate::error::{Error, Result};

/// Index into a presentation's alphabet.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Letter(usize);

impl Letter {
    pub fn new(index: usize) -> Self {
        Letter(index)
    }

    pub fn index(self) -> usize {
        self.0
    }
}

/// A word over a presentation's alphabet. May be empty; relation sides and
/// diagram bases are required to be nonempty at their construction sites.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn single(letter: Letter) -> Self {
        Word(vec![letter])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.0.clone();
        letters.extend_from_slice(&other.0);
        Word(letters)
    }

    /// Replace `len` letters starting at `at` with `replacement`.
    pub(crate) fn splice(&mut self, at: usize, len: usize, replacement: &[Letter]) {
        self.0.splice(at..at + len, replacement.iter().copied());
    }

    pub(crate) fn factor_matches(&self, at: usize, factor: &[Letter]) -> bool {
        at + factor.len() <= self.0.len() && &self.0[at..at + factor.len()] == factor
    }
}

impl std::ops::Index<usize> for Word {
    type Output = Letter;
    fn index(&self, i: usize) -> &Letter {
        &self.0[i]
    }
}

/// One defining relation `lhs = rhs`; both sides nonempty.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Relation {
    pub lhs: Word,
    pub rhs: Word,
}

/// A semigroup presentation. Relation order is significant and preserved;
/// atoms reference relations by index.
///
/// Immutable after construction and safe to share across threads.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Presentation {
    alphabet: Vec<char>,
    relations: Vec<Relation>,
}

impl Presentation {
    pub fn new(alphabet: Vec<char>, relations: Vec<(Word, Word)>) -> Result<Self> {
        let mut seen = std::collections::HashSet::new();
        for &name in &alphabet {
            if !seen.insert(name) {
                return Err(Error::DuplicateLetter(name));
            }
        }
        let mut rels = Vec::with_capacity(relations.len());
        for (lhs, rhs) in relations {
            if lhs.is_empty() || rhs.is_empty() {
                return Err(Error::EmptyRelationSide { pos: 0 });
            }
            for &l in lhs.letters().iter().chain(rhs.letters()) {
                assert!(l.index() < alphabet.len(), "letter outside alphabet");
            }
            rels.push(Relation { lhs, rhs });
        }
        Ok(Presentation { alphabet, relations: rels })
    }

    /// Parse the presentation text format.
    pub fn parse(text: &str) -> Result<Self> {
        Parser::new(text).presentation()
    }

    pub fn alphabet(&self) -> &[char] {
        &self.alphabet
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn letter_by_name(&self, name: char) -> Option<Letter> {
        self.alphabet.iter().position(|&c| c == name).map(Letter)
    }

    pub fn name_of(&self, letter: Letter) -> char {
        self.alphabet[letter.index()]
    }

    /// True iff every lhs is a single letter, every rhs has length at least
    /// two, and the lhs letters are pairwise distinct.
    pub fn is_left_letter_form(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.relations.iter().all(|r| {
            r.lhs.len() == 1 && r.rhs.len() >= 2 && seen.insert(r.lhs[0])
        })
    }

    /// For left-letter presentations: the index of the relation whose lhs is
    /// the given letter.
    pub fn relation_of_letter(&self, letter: Letter) -> Option<usize> {
        self.relations
            .iter()
            .position(|r| r.lhs.len() == 1 && r.lhs[0] == letter)
    }

    /// Parse a word in this presentation's alphabet (exponents allowed).
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let mut parser = Parser::new(text);
        let word = parser.word_with(|c, pos| {
            self.letter_by_name(c)
                .ok_or(Error::UnknownSymbol { symbol: c, pos })
        })?;
        parser.expect_end()?;
        Ok(word)
    }

    pub fn word_string(&self, word: &Word) -> String {
        word.letters().iter().map(|&l| self.name_of(l)).collect()
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, c) in self.alphabet.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, " | ")?;
        for (i, r) in self.relations.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}={}", self.word_string(&r.lhs), self.word_string(&r.rhs))?;
        }
        write!(f, ">")
    }
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn new(text: &str) -> Self {
        Parser { chars: text.chars().collect(), pos: 0 }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<char> {
        self.skip_ws();
        let c = self.chars.get(self.pos).copied();
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    fn expect(&mut self, want: char) -> Result<()> {
        match self.bump() {
            Some(c) if c == want => Ok(()),
            Some(c) => Err(Error::Syntax {
                pos: self.pos - 1,
                msg: format!("expected '{want}', found '{c}'"),
            }),
            None => Err(Error::Syntax {
                pos: self.pos,
                msg: format!("expected '{want}', found end of input"),
            }),
        }
    }

    fn expect_end(&mut self) -> Result<()> {
        if let Some(c) = self.peek() {
            return Err(Error::Syntax {
                pos: self.pos,
                msg: format!("unexpected '{c}' after end"),
            });
        }
        Ok(())
    }

    fn name(&mut self) -> Result<char> {
        match self.bump() {
            Some(c) if c.is_ascii_alphabetic() => Ok(c),
            Some(c) => Err(Error::Syntax {
                pos: self.pos - 1,
                msg: format!("expected a letter name, found '{c}'"),
            }),
            None => Err(Error::Syntax {
                pos: self.pos,
                msg: "expected a letter name, found end of input".into(),
            }),
        }
    }

    fn number(&mut self) -> Result<usize> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::Syntax { pos: start, msg: "expected a number".into() });
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse().map_err(|_| Error::Syntax { pos: start, msg: "number out of range".into() })
    }

    /// WORD := (NAME ('^' INT)?)+ mapped through `lookup`.
    fn word_with(
        &mut self,
        lookup: impl Fn(char, usize) -> Result<Letter>,
    ) -> Result<Word> {
        let mut letters = Vec::new();
        while let Some(c) = self.peek() {
            if !c.is_ascii_alphabetic() {
                break;
            }
            let pos = self.pos;
            let name = self.name()?;
            let letter = lookup(name, pos)?;
            let mut count = 1;
            if self.peek() == Some('^') {
                self.bump();
                count = self.number()?;
                if count == 0 {
                    return Err(Error::Syntax {
                        pos: self.pos - 1,
                        msg: "exponent must be positive".into(),
                    });
                }
            }
            letters.extend(std::iter::repeat_n(letter, count));
        }
        Ok(Word::new(letters))
    }

    fn presentation(&mut self) -> Result<Presentation> {
        self.expect('<')?;
        let mut alphabet = vec![self.name()?];
        while self.peek() == Some(',') {
            self.bump();
            alphabet.push(self.name()?);
        }
        self.expect('|')?;
        let lookup = |alphabet: &[char], c: char, pos: usize| -> Result<Letter> {
            alphabet
                .iter()
                .position(|&a| a == c)
                .map(Letter)
                .ok_or(Error::UnknownSymbol { symbol: c, pos })
        };
        let mut relations = Vec::new();
        loop {
            let side_pos = self.pos;
            let lhs = self.word_with(|c, p| lookup(&alphabet, c, p))?;
            self.expect('=')?;
            let rhs_pos = self.pos;
            let rhs = self.word_with(|c, p| lookup(&alphabet, c, p))?;
            if lhs.is_empty() {
                return Err(Error::EmptyRelationSide { pos: side_pos });
            }
            if rhs.is_empty() {
                return Err(Error::EmptyRelationSide { pos: rhs_pos });
            }
            relations.push((lhs, rhs));
            match self.bump() {
                Some(',') => continue,
                Some('>') => break,
                Some(c) => {
                    return Err(Error::Syntax {
                        pos: self.pos - 1,
                        msg: format!("expected ',' or '>', found '{c}'"),
                    })
                }
                None => {
                    return Err(Error::Syntax {
                        pos: self.pos,
                        msg: "expected ',' or '>', found end of input".into(),
                    })
                }
            }
        }
        self.expect_end()?;
        Presentation::new(alphabet, relations)
    }
}
