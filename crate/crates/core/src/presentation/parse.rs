//! Line-oriented text formats for presentations and graphs.
//!
//! ```text
//! gens: a b
//! rels: [a,b]
//! a^2 (b a)^-3     # further relators, one per line
//! ```

use std::collections::HashMap;

use super::graph::SimpleGraph;
use super::word::Word;
use super::Presentation;
use crate::error::{ParseError, Span};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Name(String),
    Int(i64),
    Minus,
    Plus,
    Caret,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Colon,
}

fn is_name_start(c: char) -> bool {
    c.is_ascii_alphabetic()
}

fn is_name_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

/// Tokens of one line, each with its 1-based column; comments stripped.
fn lex_line(line: &str, lineno: usize) -> Result<Vec<(Tok, Span)>, ParseError> {
    let chars: Vec<char> = line.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let at = Span { line: lineno, col: i + 1 };
        if c == '#' {
            break;
        }
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if is_name_start(c) {
            let start = i;
            while i < chars.len() && is_name_char(chars[i]) {
                i += 1;
            }
            out.push((Tok::Name(chars[start..i].iter().collect()), at));
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            let v = s.parse::<i64>().map_err(|_| ParseError::Syntax { at, reason: format!("integer {s} too large") })?;
            out.push((Tok::Int(v), at));
            continue;
        }
        let t = match c {
            '-' => Tok::Minus,
            '+' => Tok::Plus,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '[' => Tok::LBracket,
            ']' => Tok::RBracket,
            ',' => Tok::Comma,
            ':' => Tok::Colon,
            _ => return Err(ParseError::Lexical { at, ch: c }),
        };
        out.push((t, at));
        i += 1;
    }
    Ok(out)
}

struct WordParser<'a> {
    toks: &'a [(Tok, Span)],
    pos: usize,
    gens: &'a HashMap<String, usize>,
    eol: Span,
}

impl WordParser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.0)
    }

    fn here(&self) -> Span {
        self.toks.get(self.pos).map_or(self.eol, |t| t.1)
    }

    fn starts_atom(&self) -> bool {
        matches!(self.peek(), Some(Tok::Name(_) | Tok::LParen | Tok::LBracket))
    }

    fn word(&mut self) -> Result<Word, ParseError> {
        if !self.starts_atom() {
            return Err(ParseError::Syntax { at: self.here(), reason: "expected a word".into() });
        }
        let mut w = Word::identity();
        while self.starts_atom() {
            w = w.mul(&self.term()?);
        }
        Ok(w)
    }

    fn term(&mut self) -> Result<Word, ParseError> {
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.pos += 1;
        let at = self.here();
        let sign = match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                -1
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                1
            }
            _ => 1,
        };
        match self.peek() {
            Some(&Tok::Int(k)) => {
                self.pos += 1;
                Ok(base.pow(sign * k))
            }
            _ => Err(ParseError::Syntax { at, reason: "expected an integer exponent after '^'".into() }),
        }
    }

    fn atom(&mut self) -> Result<Word, ParseError> {
        let at = self.here();
        match self.peek().cloned() {
            Some(Tok::Name(n)) => {
                self.pos += 1;
                self.gens
                    .get(&n)
                    .map(|&g| Word::generator(g))
                    .ok_or(ParseError::UnknownGenerator { at, name: n })
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let w = self.word()?;
                if self.peek() != Some(&Tok::RParen) {
                    return Err(ParseError::Syntax { at: self.here(), reason: "expected ')'".into() });
                }
                self.pos += 1;
                Ok(w)
            }
            Some(Tok::LBracket) => {
                self.pos += 1;
                let malformed = |p: &Self, reason: &str| ParseError::MalformedCommutator { at: p.here(), reason: reason.into() };
                if !self.starts_atom() {
                    return Err(malformed(self, "expected a word after '['"));
                }
                let u = self.word()?;
                if self.peek() != Some(&Tok::Comma) {
                    return Err(malformed(self, "expected ','"));
                }
                self.pos += 1;
                if !self.starts_atom() {
                    return Err(malformed(self, "expected a word after ','"));
                }
                let v = self.word()?;
                if self.peek() != Some(&Tok::RBracket) {
                    return Err(malformed(self, "expected ']'"));
                }
                self.pos += 1;
                Ok(Word::commutator(&u, &v))
            }
            _ => Err(ParseError::Syntax { at, reason: "expected a generator, '(' or '['".into() }),
        }
    }
}

/// Non-blank lines with their tokens.
/// Line number, tokens, and the span of the whole line.
type TokenLine = (usize, Vec<(Tok, Span)>, Span);

fn token_lines(text: &str) -> Result<Vec<TokenLine>, ParseError> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let toks = lex_line(line, i + 1)?;
        if !toks.is_empty() {
            let eol = Span { line: i + 1, col: line.chars().count() + 1 };
            out.push((i + 1, toks, eol));
        }
    }
    Ok(out)
}

fn header<'a>(
    line: Option<&'a TokenLine>,
    keyword: &str,
    fallback: Span,
) -> Result<(&'a [(Tok, Span)], Span), ParseError> {
    let Some((_, toks, eol)) = line else {
        return Err(ParseError::Syntax { at: fallback, reason: format!("missing `{keyword}:` line") });
    };
    match toks.as_slice() {
        [(Tok::Name(n), _), (Tok::Colon, _), rest @ ..] if n == keyword => Ok((rest, *eol)),
        [(_, at), ..] => Err(ParseError::Syntax { at: *at, reason: format!("expected `{keyword}:`") }),
        [] => unreachable!("blank lines are skipped"),
    }
}

fn names(toks: &[(Tok, Span)], eol: Span, what: &str) -> Result<Vec<(String, Span)>, ParseError> {
    let mut out: Vec<(String, Span)> = Vec::new();
    for (t, at) in toks {
        match t {
            Tok::Name(n) => {
                if out.iter().any(|(m, _)| m == n) {
                    return Err(ParseError::Duplicate { at: *at, name: n.clone() });
                }
                out.push((n.clone(), *at));
            }
            _ => return Err(ParseError::Syntax { at: *at, reason: format!("expected a {what} name") }),
        }
    }
    if out.is_empty() {
        return Err(ParseError::EmptyGenerators { at: eol });
    }
    Ok(out)
}

pub fn parse_presentation(text: &str) -> Result<Presentation, ParseError> {
    let lines = token_lines(text)?;
    let start = Span { line: 1, col: 1 };
    let (gen_toks, gen_eol) = header(lines.first(), "gens", start)?;
    let gen_names = names(gen_toks, gen_eol, "generator")?;
    let index: HashMap<String, usize> = gen_names.iter().enumerate().map(|(i, (n, _))| (n.clone(), i)).collect();
    let after = lines.first().map_or(start, |l| Span { line: l.0 + 1, col: 1 });
    let (first_rel, rel_eol) = header(lines.get(1), "rels", after)?;

    let mut relators = Vec::new();
    let mut parse_rel = |toks: &[(Tok, Span)], eol: Span| -> Result<(), ParseError> {
        if toks.is_empty() {
            return Ok(());
        }
        let mut p = WordParser { toks, pos: 0, gens: &index, eol };
        let w = p.word()?;
        if p.pos != toks.len() {
            return Err(ParseError::Syntax { at: p.here(), reason: "unexpected token after relator".into() });
        }
        relators.push(w);
        Ok(())
    };
    parse_rel(first_rel, rel_eol)?;
    for (_, toks, eol) in lines.iter().skip(2) {
        parse_rel(toks, *eol)?;
    }
    Ok(Presentation::new(gen_names.into_iter().map(|(n, _)| n).collect(), relators)
        .expect("parser only produces in-range generators"))
}

pub fn parse_graph(text: &str) -> Result<SimpleGraph, ParseError> {
    let lines = token_lines(text)?;
    let start = Span { line: 1, col: 1 };
    let (vtoks, veol) = header(lines.first(), "vertices", start)?;
    let vertices = names(vtoks, veol, "vertex")?;
    let index: HashMap<&str, usize> = vertices.iter().enumerate().map(|(i, (n, _))| (n.as_str(), i)).collect();
    let after = lines.first().map_or(start, |l| Span { line: l.0 + 1, col: 1 });
    let (rest, _) = header(lines.get(1), "edges", after)?;
    let mut pending: Vec<&[(Tok, Span)]> = Vec::new();
    if !rest.is_empty() {
        pending.push(rest);
    }
    pending.extend(lines.iter().skip(2).map(|(_, t, _)| t.as_slice()));
    let mut edges = Vec::new();
    for toks in pending {
        let mut ends = Vec::new();
        for (t, at) in toks {
            let Tok::Name(n) = t else {
                return Err(ParseError::Syntax { at: *at, reason: "expected a vertex name".into() });
            };
            let v = index.get(n.as_str()).ok_or(ParseError::UnknownGenerator { at: *at, name: n.clone() })?;
            ends.push((*v, *at));
        }
        match ends.as_slice() {
            [(a, _), (b, at)] => {
                if a == b {
                    return Err(ParseError::Syntax { at: *at, reason: "self-loop".into() });
                }
                edges.push((*a, *b));
            }
            _ => {
                return Err(ParseError::Syntax { at: toks[0].1, reason: "an edge line holds exactly two vertices".into() })
            }
        }
    }
    Ok(SimpleGraph::new(vertices.into_iter().map(|(n, _)| n).collect(), edges).expect("validated above"))
}
