//! Group presentations: free-group words, the relator grammar, and word
//! evaluation in a concrete group.
//!
//! Grammar (ASCII, whitespace insignificant):
//!
//! ```text
//! presentation = '<' names '|' relator (',' relator)* '>'
//! names        = ident (',' ident)*
//! relator      = word | word '=' word
//! word         = factor ('*'? factor)*
//! factor       = ident ('^' signed-int)?
//!              | ident '^' ident                (conjugation a^b = b^-1 a b)
//!              | '[' word ',' word ']'          ([a,b] = a^-1 b^-1 a b)
//!              | '(' word ')' ('^' signed-int)?
//! ident        = [a-z][a-z0-9]*
//! ```
//!
//! Equations `u = v` are stored as the relator `u v^-1`. The right-hand
//! side of `^` in a conjugation must be a single generator (the only form
//! the source material uses); anything else is a parse error.

use crate::error::{Error, Result};
use crate::group::Group;
use std::collections::HashMap;
use std::fmt;

/// A freely reduced word: adjacent letters never share a generator index
/// and exponents are nonzero.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Word {
    letters: Vec<(usize, i64)>,
}

impl Word {
    pub fn empty() -> Self {
        Word::default()
    }

    /// Builds a word from raw letters and freely reduces it.
    pub fn from_letters(letters: impl IntoIterator<Item = (usize, i64)>) -> Self {
        let mut w = Word::default();
        for (g, e) in letters {
            w.push(g, e);
        }
        w
    }

    pub fn letters(&self) -> &[(usize, i64)] {
        &self.letters
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Number of letters counted with multiplicity of exponents.
    pub fn length(&self) -> usize {
        self.letters.iter().map(|&(_, e)| e.unsigned_abs() as usize).sum()
    }

    /// Appends one letter, merging with the tail so the word stays reduced.
    pub fn push(&mut self, gen: usize, exp: i64) {
        if exp == 0 {
            return;
        }
        if let Some(last) = self.letters.last_mut() {
            if last.0 == gen {
                last.1 += exp;
                if last.1 == 0 {
                    self.letters.pop();
                }
                return;
            }
        }
        self.letters.push((gen, exp));
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut w = self.clone();
        for &(g, e) in &other.letters {
            w.push(g, e);
        }
        w
    }

    pub fn inverse(&self) -> Word {
        let mut w = Word::default();
        for &(g, e) in self.letters.iter().rev() {
            w.push(g, -e);
        }
        w
    }

    pub fn pow(&self, n: i64) -> Word {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut w = Word::default();
        for _ in 0..n.unsigned_abs() {
            w = w.concat(&base);
        }
        w
    }

    /// Commutator [u,v] = u^-1 v^-1 u v.
    pub fn commutator(u: &Word, v: &Word) -> Word {
        u.inverse().concat(&v.inverse()).concat(u).concat(v)
    }

    /// Conjugation u^g = g^-1 u g, `g` a single generator power.
    pub fn conjugate_by_gen(&self, gen: usize, exp: i64) -> Word {
        let mut w = Word::default();
        w.push(gen, -exp);
        let mut w = w.concat(self);
        w.push(gen, exp);
        w
    }

    /// Flattens into single signed letters: generator g as (g, +1)/(g, -1).
    pub fn flatten(&self) -> Vec<(usize, bool)> {
        let mut out = Vec::with_capacity(self.length());
        for &(g, e) in &self.letters {
            for _ in 0..e.unsigned_abs() {
                out.push((g, e > 0));
            }
        }
        out
    }

    pub fn max_generator(&self) -> Option<usize> {
        self.letters.iter().map(|&(g, _)| g).max()
    }
}

/// Free reduction of a word; idempotent and length-nonincreasing.
pub fn reduce_word(w: &Word) -> Word {
    Word::from_letters(w.letters.iter().copied())
}

/// A finitely presented group: generator names plus relators, each
/// asserting `word = identity`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub generator_names: Vec<String>,
    pub relators: Vec<Word>,
}

impl Presentation {
    pub fn num_generators(&self) -> usize {
        self.generator_names.len()
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "< {} | ", self.generator_names.join(", "))?;
        let rels: Vec<String> = self
            .relators
            .iter()
            .map(|w| display_word(w, &self.generator_names))
            .collect();
        write!(f, "{} >", rels.join(", "))
    }
}

/// Renders a word in the canonical text form (`display` of the parse
/// fixed point): letters joined by `*`, exponents after `^`.
pub fn display_word(w: &Word, names: &[String]) -> String {
    if w.is_empty() {
        return "1".to_string();
    }
    w.letters()
        .iter()
        .map(|&(g, e)| {
            if e == 1 {
                names[g].clone()
            } else {
                format!("{}^{}", names[g], e)
            }
        })
        .collect::<Vec<_>>()
        .join("*")
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    line: usize,
    col: usize,
    names: Vec<String>,
    index: HashMap<String, usize>,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser {
            src: src.as_bytes(),
            pos: 0,
            line: 1,
            col: 1,
            names: Vec::new(),
            index: HashMap::new(),
        }
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Syntax {
            line: self.line,
            col: self.col,
            msg: msg.into(),
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while let Some(&c) = self.src.get(self.pos) {
            if c == b'\n' {
                self.pos += 1;
                self.line += 1;
                self.col = 1;
            } else if c.is_ascii_whitespace() {
                self.pos += 1;
                self.col += 1;
            } else {
                break;
            }
        }
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.src.get(self.pos).copied();
        if c.is_some() {
            self.pos += 1;
            self.col += 1;
        }
        c
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.bump();
            Ok(())
        } else {
            Err(self.err(format!("expected '{}'", c as char)))
        }
    }

    fn at_ident(&mut self) -> bool {
        matches!(self.peek(), Some(c) if c.is_ascii_lowercase())
    }

    fn ident(&mut self) -> Result<String> {
        if !self.at_ident() {
            return Err(self.err("expected identifier"));
        }
        let start = self.pos;
        while let Some(&c) = self.src.get(self.pos) {
            if c.is_ascii_lowercase() || c.is_ascii_digit() {
                self.pos += 1;
                self.col += 1;
            } else {
                break;
            }
        }
        Ok(String::from_utf8(self.src[start..self.pos].to_vec()).unwrap())
    }

    fn signed_int(&mut self) -> Result<i64> {
        let (line, col) = (self.line, self.col);
        let mut neg = false;
        if self.peek() == Some(b'-') {
            self.bump();
            neg = true;
        } else if self.peek() == Some(b'+') {
            self.bump();
        }
        if !matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            return Err(self.err("expected integer"));
        }
        let mut value: i64 = 0;
        while let Some(&c) = self.src.get(self.pos) {
            if c.is_ascii_digit() {
                value = value
                    .checked_mul(10)
                    .and_then(|v| v.checked_add((c - b'0') as i64))
                    .ok_or(Error::ExponentOverflow { line, col })?;
                self.pos += 1;
                self.col += 1;
            } else {
                break;
            }
        }
        Ok(if neg { -value } else { value })
    }

    fn gen_index(&mut self, name: &str, line: usize, col: usize) -> Result<usize> {
        self.index
            .get(name)
            .copied()
            .ok_or(Error::UnknownGenerator {
                name: name.to_string(),
                line,
                col,
            })
    }

    fn factor(&mut self) -> Result<Word> {
        match self.peek() {
            Some(b'[') => {
                self.bump();
                let u = self.word()?;
                self.expect(b',')?;
                let v = self.word()?;
                self.expect(b']')?;
                Ok(Word::commutator(&u, &v))
            }
            Some(b'(') => {
                self.bump();
                let w = self.word()?;
                self.expect(b')')?;
                if self.peek() == Some(b'^') {
                    self.bump();
                    let e = self.signed_int()?;
                    Ok(w.pow(e))
                } else {
                    Ok(w)
                }
            }
            Some(c) if c.is_ascii_lowercase() => {
                let (line, col) = (self.line, self.col);
                let name = self.ident()?;
                let g = self.gen_index(&name, line, col)?;
                if self.peek() == Some(b'^') {
                    self.bump();
                    if self.at_ident() {
                        // conjugation by a single generator
                        let (l2, c2) = (self.line, self.col);
                        let by = self.ident()?;
                        let h = self.gen_index(&by, l2, c2)?;
                        let mut base = Word::default();
                        base.push(g, 1);
                        Ok(base.conjugate_by_gen(h, 1))
                    } else {
                        let e = self.signed_int()?;
                        let mut w = Word::default();
                        w.push(g, e);
                        Ok(w)
                    }
                } else {
                    let mut w = Word::default();
                    w.push(g, 1);
                    Ok(w)
                }
            }
            _ => Err(self.err("expected factor")),
        }
    }

    fn at_factor_start(&mut self) -> bool {
        matches!(self.peek(), Some(b'[') | Some(b'(')) || self.at_ident()
    }

    fn word(&mut self) -> Result<Word> {
        // the literal "1" denotes the empty word
        if matches!(self.peek(), Some(b'1')) {
            self.bump();
            return Ok(Word::empty());
        }
        let mut w = self.factor()?;
        loop {
            if self.peek() == Some(b'*') {
                self.bump();
                if matches!(self.peek(), Some(b'1')) {
                    self.bump();
                    continue;
                }
                w = w.concat(&self.factor()?);
            } else if self.at_factor_start() {
                w = w.concat(&self.factor()?);
            } else {
                break;
            }
        }
        Ok(w)
    }

    fn relator(&mut self) -> Result<Word> {
        let u = self.word()?;
        if self.peek() == Some(b'=') {
            self.bump();
            let v = self.word()?;
            Ok(u.concat(&v.inverse()))
        } else {
            Ok(u)
        }
    }

    fn presentation(&mut self) -> Result<Presentation> {
        self.expect(b'<')?;
        loop {
            let (line, col) = (self.line, self.col);
            let name = self.ident()?;
            if self.index.contains_key(&name) {
                return Err(Error::Syntax {
                    line,
                    col,
                    msg: format!("duplicate generator '{name}'"),
                });
            }
            self.index.insert(name.clone(), self.names.len());
            self.names.push(name);
            if self.peek() == Some(b',') {
                self.bump();
            } else {
                break;
            }
        }
        self.expect(b'|')?;
        let mut relators = vec![self.relator()?];
        while self.peek() == Some(b',') {
            self.bump();
            relators.push(self.relator()?);
        }
        self.expect(b'>')?;
        if self.peek().is_some() {
            return Err(self.err("trailing input after '>'"));
        }
        Ok(Presentation {
            generator_names: std::mem::take(&mut self.names),
            relators,
        })
    }
}

/// Parses the `< gens | relators >` notation.
pub fn parse_presentation(text: &str) -> Result<Presentation> {
    Parser::new(text).presentation()
}

/// Parses a single word in the context of existing generator names.
pub fn parse_word(text: &str, names: &[String]) -> Result<Word> {
    let mut p = Parser::new(text);
    p.names = names.to_vec();
    p.index = names
        .iter()
        .enumerate()
        .map(|(i, n)| (n.clone(), i))
        .collect();
    let w = p.word()?;
    if p.peek().is_some() {
        return Err(p.err("trailing input after word"));
    }
    Ok(w)
}

/// Evaluates a word in a concrete group under an assignment of element
/// indices to generator indices. Exponents go through repeated
/// multiplication of the element or its inverse.
pub fn evaluate_word(g: &Group, assignment: &[usize], w: &Word) -> Result<usize> {
    let mut acc = g.identity();
    for &(gen, exp) in w.letters() {
        let elt = *assignment
            .get(gen)
            .ok_or(Error::MissingAssignment { gen })?;
        let factor = if exp < 0 { g.inv(elt) } else { elt };
        for _ in 0..exp.unsigned_abs() {
            acc = g.mul(acc, factor);
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(letters: &[(usize, i64)]) -> Word {
        Word::from_letters(letters.iter().copied())
    }

    #[test]
    fn reduce_cancellation() {
        assert!(w(&[(0, 1), (0, -1)]).is_empty());
        assert_eq!(w(&[(0, 2), (0, 3)]), w(&[(0, 5)]));
        assert_eq!(w(&[(0, 1), (1, 1), (1, -1), (0, 1)]), w(&[(0, 2)]));
    }

    #[test]
    fn reduce_idempotent_and_nonincreasing() {
        let cases = [
            w(&[(0, 1), (1, -2), (1, 2), (0, -1)]),
            w(&[(0, 3), (1, 1)]),
            Word::empty(),
        ];
        for c in cases {
            let r = reduce_word(&c);
            assert_eq!(reduce_word(&r), r);
            assert!(r.length() <= c.length());
        }
    }

    #[test]
    fn parse_single_generator() {
        let p = parse_presentation("< a | a^8 = 1 >").unwrap();
        assert_eq!(p.generator_names, vec!["a"]);
        assert_eq!(p.relators, vec![w(&[(0, 8)])]);
    }

    #[test]
    fn parse_q8() {
        let p = parse_presentation("< a,b | a^4=1, b^2=a^2, b^-1*a*b=a^-1 >").unwrap();
        assert_eq!(p.generator_names.len(), 2);
        assert_eq!(p.relators.len(), 3);
        assert_eq!(p.relators[1], w(&[(1, 2), (0, -2)]));
        assert_eq!(p.relators[2], w(&[(1, -1), (0, 1), (1, 1), (0, 1)]));
    }

    #[test]
    fn parse_commutator_expansion() {
        // [a,b] = a^-1 b^-1 a b, so [a,b]=a^2 stores a^-1 b^-1 a b a^-2
        let p = parse_presentation("< a,b | a^8=1, b^4=1, a^4=b^2, [a,b]=a^2 >").unwrap();
        assert_eq!(p.relators.len(), 4);
        assert_eq!(
            p.relators[3],
            w(&[(0, -1), (1, -1), (0, 1), (1, 1), (0, -2)])
        );
    }

    #[test]
    fn parse_conjugation_by_generator() {
        let p = parse_presentation("< a,b | a^b = a^-1 >").unwrap();
        // b^-1 a b a
        assert_eq!(p.relators[0], w(&[(1, -1), (0, 1), (1, 1), (0, 1)]));
    }

    #[test]
    fn parse_parenthesized_power() {
        let p = parse_presentation("< a,b | (a*b)^2 = 1 >").unwrap();
        assert_eq!(p.relators[0], w(&[(0, 1), (1, 1), (0, 1), (1, 1)]));
    }

    #[test]
    fn parse_errors_carry_position() {
        match parse_presentation("< a | a^8 = 1") {
            Err(Error::Syntax { line: 1, col, .. }) => assert!(col >= 13),
            other => panic!("expected syntax error, got {other:?}"),
        }
        match parse_presentation("< a | b^2 = 1 >") {
            Err(Error::UnknownGenerator { name, .. }) => assert_eq!(name, "b"),
            other => panic!("expected unknown generator, got {other:?}"),
        }
        assert!(matches!(
            parse_presentation("< a | a^99999999999999999999 = 1 >"),
            Err(Error::ExponentOverflow { .. })
        ));
    }

    #[test]
    fn zero_exponents_vanish() {
        let p = parse_presentation("< a,b | a^0 b^2 >").unwrap();
        assert_eq!(p.relators[0], w(&[(1, 2)]));
    }

    #[test]
    fn display_roundtrip_is_fixed_point() {
        let texts = [
            "< a | a^8 = 1 >",
            "< a,b | a^4=1, b^2=a^2, b^-1*a*b=a^-1 >",
            "< r,s | r^4=1, s^2=1, [r,s]=r^2 >",
        ];
        for t in texts {
            let p1 = parse_presentation(t).unwrap();
            let canon = p1.to_string();
            let p2 = parse_presentation(&canon).unwrap();
            assert_eq!(p1, p2);
            assert_eq!(p2.to_string(), canon);
        }
    }
}
