use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Letter {
    pub generator: usize,
    /// +1 or -1.
    pub sign: i8,
}

impl Letter {
    fn inverse(self) -> Letter {
        Letter {
            generator: self.generator,
            sign: -self.sign,
        }
    }

    fn cancels(self, other: Letter) -> bool {
        self.generator == other.generator && self.sign == -other.sign
    }
}

/// A freely reduced word in the generators.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    /// Freely reduces an arbitrary letter sequence.
    pub fn new(letters: impl IntoIterator<Item = Letter>) -> Word {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            if out.last().is_some_and(|&last| last.cancels(l)) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word { letters: out }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    pub fn concat(&self, other: &Word) -> Word {
        Word::new(self.letters.iter().chain(&other.letters).copied())
    }

    /// Strips cancelling first/last letter pairs.
    pub fn cyclically_reduced(&self) -> Word {
        let l = &self.letters;
        let (mut i, mut j) = (0, l.len());
        while j - i >= 2 && l[i].cancels(l[j - 1]) {
            i += 1;
            j -= 1;
        }
        Word {
            letters: l[i..j].to_vec(),
        }
    }

    /// Cyclic permutation starting at letter `k`.
    pub fn rotate(&self, k: usize) -> Word {
        let mut letters = self.letters.clone();
        if !letters.is_empty() {
            let k = k % letters.len();
            letters.rotate_left(k);
        }
        Word { letters }
    }

    pub fn exponent_sum(&self, generators: usize) -> Vec<i64> {
        let mut v = vec![0i64; generators];
        for l in &self.letters {
            v[l.generator] += i64::from(l.sign);
        }
        v
    }
}

/// A two-generator, one-relator presentation with a cyclically reduced
/// relator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OneRelatorPresentation {
    generators: Vec<String>,
    relator: Word,
}

/// Abelianized images of the proper prefixes of the relator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrefixWalk {
    /// `P_0 = (0, 0), P_1, ..., P_{l-1}`.
    pub points: Vec<[i64; 2]>,
    /// Exponent-sum vector of the whole relator.
    pub total: [i64; 2],
}

impl OneRelatorPresentation {
    pub fn new(generators: Vec<String>, relator: Word) -> Result<Self> {
        if generators.len() != 2 {
            return Err(Error::GeneratorCount(generators.len()));
        }
        if let Some(l) = relator.letters().iter().find(|l| l.generator >= 2) {
            return Err(Error::Validation {
                path: "relator".into(),
                msg: format!("generator index {} out of range", l.generator),
            });
        }
        let relator = relator.cyclically_reduced();
        if relator.is_empty() {
            return Err(Error::Unsupported(
                "relator reduces to the empty word".into(),
            ));
        }
        Ok(OneRelatorPresentation { generators, relator })
    }

    /// Presentation from generator names and relator text (`w` or `u = v`).
    pub fn from_parts(generators: Vec<String>, relator: &str) -> Result<Self> {
        if generators.len() != 2 {
            return Err(Error::GeneratorCount(generators.len()));
        }
        for g in &generators {
            if !is_identifier(g) {
                return Err(Error::Validation {
                    path: "generators".into(),
                    msg: format!("{g:?} is not an alphanumeric identifier"),
                });
            }
        }
        if generators[0] == generators[1] {
            return Err(Error::Validation {
                path: "generators".into(),
                msg: "generator names must differ".into(),
            });
        }
        let word = Parser::new(relator, 0, &generators).relation()?;
        Self::new(generators, word)
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn relator(&self) -> &Word {
        &self.relator
    }

    pub fn prefix_walk(&self) -> PrefixWalk {
        let mut points = Vec::with_capacity(self.relator.len());
        let mut p = [0i64, 0];
        for l in self.relator.letters() {
            points.push(p);
            p[l.generator] += i64::from(l.sign);
        }
        PrefixWalk { points, total: p }
    }

    pub fn format_relator(&self) -> String {
        self.relator.display(&self.generators).to_string()
    }
}

/// Parses `a, b | relator`, optionally wrapped in angle brackets.
pub fn parse_presentation(text: &str) -> Result<OneRelatorPresentation> {
    let bar = text.find('|').ok_or(Error::Syntax {
        pos: text.len(),
        msg: "expected '|' between generators and relator".into(),
    })?;
    let (head, tail) = (&text[..bar], &text[bar + 1..]);

    let head_trim = head.trim_start();
    let mut offset = head.len() - head_trim.len();
    let head_trim = match head_trim.strip_prefix('<') {
        Some(rest) => {
            offset += 1;
            rest
        }
        None => head_trim,
    };
    let mut generators = Vec::new();
    let mut pos = offset;
    for part in head_trim.split(',') {
        let name = part.trim();
        let lead = part.len() - part.trim_start().len();
        if !is_identifier(name) {
            return Err(Error::Syntax {
                pos: pos + lead,
                msg: format!("invalid generator name {name:?}"),
            });
        }
        generators.push(name.to_string());
        pos += part.len() + 1;
    }
    if generators.len() != 2 {
        return Err(Error::GeneratorCount(generators.len()));
    }
    let tail_end = tail.trim_end();
    let body = tail_end.strip_suffix('>').unwrap_or(tail_end);
    let word = Parser::new(body, bar + 1, &generators).relation()?;
    OneRelatorPresentation::new(generators, word)
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

struct Parser<'a> {
    text: &'a str,
    base: usize,
    pos: usize,
    generators: &'a [String],
}

impl<'a> Parser<'a> {
    fn new(text: &'a str, base: usize, generators: &'a [String]) -> Self {
        Parser {
            text,
            base,
            pos: 0,
            generators,
        }
    }

    fn error<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            pos: self.base + self.pos,
            msg: msg.into(),
        })
    }

    fn rest(&self) -> &'a str {
        &self.text[self.pos..]
    }

    fn skip_ws(&mut self) {
        let rest = self.rest();
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn relation(&mut self) -> Result<Word> {
        let lhs = self.word()?;
        self.skip_ws();
        let word = if self.rest().starts_with('=') {
            self.pos += 1;
            let rhs = self.word()?;
            lhs.concat(&rhs.inverse())
        } else {
            lhs
        };
        self.skip_ws();
        if !self.rest().is_empty() {
            return self.error(format!("unexpected {:?}", self.rest().chars().next().unwrap()));
        }
        Ok(word)
    }

    fn word(&mut self) -> Result<Word> {
        let mut letters = Vec::new();
        loop {
            self.skip_ws();
            let rest = self.rest();
            if rest.is_empty() || rest.starts_with('=') {
                break;
            }
            let Some(g) = self.generator() else {
                if rest.starts_with('1') {
                    // Identity element.
                    self.pos += 1;
                    continue;
                }
                return self.error("expected a generator");
            };
            let exp = self.exponent()?;
            let sign: i8 = if exp < 0 { -1 } else { 1 };
            for _ in 0..exp.unsigned_abs() {
                letters.push(Letter { generator: g, sign });
            }
        }
        Ok(Word::new(letters))
    }

    /// Longest declared generator name at the cursor.
    fn generator(&mut self) -> Option<usize> {
        let rest = self.rest();
        let (idx, len) = self
            .generators
            .iter()
            .enumerate()
            .filter(|(_, name)| rest.starts_with(name.as_str()))
            .map(|(i, name)| (i, name.len()))
            .max_by_key(|&(_, len)| len)?;
        self.pos += len;
        Some(idx)
    }

    fn exponent(&mut self) -> Result<i64> {
        self.skip_ws();
        if !self.rest().starts_with('^') {
            return Ok(1);
        }
        self.pos += 1;
        self.skip_ws();
        let start = self.pos;
        let rest = self.rest();
        let sign_len = usize::from(rest.starts_with('-') || rest.starts_with('+'));
        let digits = rest[sign_len..]
            .chars()
            .take_while(char::is_ascii_digit)
            .count();
        if digits == 0 {
            return self.error("expected an integer exponent after '^'");
        }
        let lit = &rest[..sign_len + digits];
        let k: i64 = match lit.parse() {
            Ok(k) => k,
            Err(_) => {
                self.pos = start;
                return self.error(format!("exponent {lit} out of range"));
            }
        };
        if k == 0 {
            self.pos = start;
            return self.error("exponent must be nonzero");
        }
        if k.unsigned_abs() > 1_000_000 {
            self.pos = start;
            return self.error(format!("exponent {lit} too large"));
        }
        self.pos += sign_len + digits;
        Ok(k)
    }
}

pub struct WordDisplay<'a> {
    word: &'a Word,
    names: &'a [String],
}

impl Word {
    pub fn display<'a>(&'a self, names: &'a [String]) -> WordDisplay<'a> {
        WordDisplay { word: self, names }
    }
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let letters = self.word.letters();
        let mut i = 0;
        let mut first = true;
        while i < letters.len() {
            let l = letters[i];
            let run = letters[i..].iter().take_while(|&&m| m == l).count();
            if !first {
                write!(f, " ")?;
            }
            first = false;
            let exp = run as i64 * i64::from(l.sign);
            write!(f, "{}", self.names[l.generator])?;
            if exp != 1 {
                write!(f, "^{exp}")?;
            }
            i += run;
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}
