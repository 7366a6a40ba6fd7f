//! Expression grammar:
//!
//! ```text
//! seg  := '[' rat ',' rat ']' '@' ident
//! rat  := int | int '/' posint
//! sum  := seg ('+' seg)*
//! speh := 'Sp(' seg ',' posint ')' ('[' rat ']')?
//! term := sum | speh
//! prod := term ('x' term)*
//! ctx  := '(' int ',' int ',' rat ')'
//! expr := prod | ctx
//! ```
//!
//! Whitespace is ignored between tokens.

use std::fmt::Write as _;

use linper_core::distinction::{Context, Factor, UnitaryRep};
use linper_core::multiseg::make_speh;
use linper_core::{Error, LadderRep, LineSet, Multisegment, Rat, Segment, SpehDatum};

use crate::error::CliError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Term {
    /// Segments joined by `+`, kept in canonical order.
    Sum(Vec<Segment>),
    Speh(SpehDatum, Option<Rat>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Product(Vec<Term>),
    Context(Context),
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    lines: &'a LineSet,
}

fn syntax<T>(pos: usize, msg: impl Into<String>) -> Result<T, CliError> {
    Err(CliError::Syntax { pos, msg: msg.into() })
}

impl<'a> Parser<'a> {
    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn peek(&mut self) -> Option<char> {
        self.ws();
        self.rest().chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), CliError> {
        if self.eat(c) {
            Ok(())
        } else {
            let found = self.peek().map_or("end of input".to_string(), |x| format!("'{x}'"));
            syntax(self.pos, format!("expected '{c}', found {found}"))
        }
    }

    fn digits(&mut self) -> Result<&'a str, CliError> {
        self.ws();
        let n = self.rest().bytes().take_while(u8::is_ascii_digit).count();
        if n == 0 {
            return syntax(self.pos, "expected digits");
        }
        let d = &self.rest()[..n];
        self.pos += n;
        Ok(d)
    }

    fn int(&mut self) -> Result<i64, CliError> {
        self.ws();
        let start = self.pos;
        let neg = self.eat('-');
        let d = self.digits()?;
        let v: i64 = d.parse().or_else(|_| syntax(start, "integer out of range"))?;
        Ok(if neg { -v } else { v })
    }

    fn posint(&mut self) -> Result<u32, CliError> {
        let start = self.pos;
        let d = self.digits()?;
        match d.parse::<u32>() {
            Ok(0) => syntax(start, "expected a positive integer"),
            Ok(v) => Ok(v),
            Err(_) => syntax(start, "integer out of range"),
        }
    }

    fn rat(&mut self) -> Result<Rat, CliError> {
        let n = self.int()?;
        if self.eat('/') {
            let d = self.posint()?;
            Ok(Rat::new(n, d as i64))
        } else {
            Ok(Rat::int(n))
        }
    }

    fn ident(&mut self) -> Result<linper_core::LineId, CliError> {
        self.ws();
        let start = self.pos;
        let n = self.rest().bytes().take_while(|b| b.is_ascii_alphanumeric() || *b == b'_').count();
        if n == 0 {
            return syntax(start, "expected a line id");
        }
        let name = &self.rest()[..n];
        self.pos += n;
        match self.lines.lookup(name) {
            Ok(id) => Ok(id),
            Err(e) => {
                // `[0,0]@trivx[...]`: the product sign swallowed by the id.
                if let Some(short) = name.strip_suffix('x') {
                    if let Ok(id) = self.lines.lookup(short) {
                        if matches!(self.peek(), Some('[') | Some('S')) {
                            self.pos = start + short.len();
                            return Ok(id);
                        }
                    }
                }
                Err(e.into())
            }
        }
    }

    fn seg(&mut self) -> Result<Segment, CliError> {
        self.expect('[')?;
        let a = self.rat()?;
        self.expect(',')?;
        let b = self.rat()?;
        self.expect(']')?;
        self.expect('@')?;
        let line = self.ident()?;
        Ok(Segment::new(line, a, b)?)
    }

    fn speh(&mut self) -> Result<Term, CliError> {
        self.ws();
        if !self.rest().starts_with("Sp") {
            return syntax(self.pos, "expected 'Sp('");
        }
        self.pos += 2;
        self.expect('(')?;
        let delta = self.seg()?;
        self.expect(',')?;
        let k = self.posint()?;
        self.expect(')')?;
        let d = SpehDatum::new(delta, k)?;
        let alpha = if self.eat('[') {
            let x = self.rat()?;
            self.expect(']')?;
            if !(x.is_positive() && x < Rat::HALF) {
                return Err(Error::Precondition(format!("complementary exponent {x} not in (0,1/2)")).into());
            }
            if !delta.is_centered() {
                return Err(Error::Precondition("complementary factors need a centered segment".into()).into());
            }
            Some(x)
        } else {
            None
        };
        Ok(Term::Speh(d, alpha))
    }

    fn term(&mut self) -> Result<Term, CliError> {
        match self.peek() {
            Some('S') => self.speh(),
            Some('[') => {
                let mut segs = vec![self.seg()?];
                while self.eat('+') {
                    segs.push(self.seg()?);
                }
                segs.sort();
                Ok(Term::Sum(segs))
            }
            Some(c) => syntax(self.pos, format!("unexpected '{c}'")),
            None => syntax(self.pos, "unexpected end of input"),
        }
    }

    fn context(&mut self) -> Result<Context, CliError> {
        self.expect('(')?;
        let at = self.pos;
        let p = u32::try_from(self.int()?).or_else(|_| syntax(at, "p must be nonnegative"))?;
        self.expect(',')?;
        let at = self.pos;
        let q = u32::try_from(self.int()?).or_else(|_| syntax(at, "q must be nonnegative"))?;
        self.expect(',')?;
        let a = self.rat()?;
        self.expect(')')?;
        Ok(Context::new(p, q, a))
    }

    fn expr(&mut self) -> Result<Expr, CliError> {
        let e = if self.peek() == Some('(') {
            Expr::Context(self.context()?)
        } else {
            let mut terms = vec![self.term()?];
            while self.eat('x') {
                terms.push(self.term()?);
            }
            Expr::Product(terms)
        };
        if let Some(c) = self.peek() {
            return syntax(self.pos, format!("trailing input starting at '{c}'"));
        }
        Ok(e)
    }
}

pub fn parse(text: &str, lines: &LineSet) -> Result<Expr, CliError> {
    Parser { src: text, pos: 0, lines }.expr()
}

pub fn print_term(t: &Term, lines: &LineSet) -> String {
    match t {
        Term::Sum(segs) => {
            let parts: Vec<String> = segs.iter().map(|s| s.display(lines).to_string()).collect();
            parts.join(" + ")
        }
        Term::Speh(d, None) => d.display(lines).to_string(),
        Term::Speh(d, Some(x)) => format!("{}[{x}]", d.display(lines)),
    }
}

pub fn print(e: &Expr, lines: &LineSet) -> String {
    match e {
        Expr::Context(c) => c.to_string(),
        Expr::Product(terms) => {
            let mut out = String::new();
            for (i, t) in terms.iter().enumerate() {
                if i > 0 {
                    out.push_str(" x ");
                }
                let _ = write!(out, "{}", print_term(t, lines));
            }
            out
        }
    }
}

fn usage<T>(msg: &str) -> Result<T, CliError> {
    Err(CliError::Usage(msg.into()))
}

impl Term {
    pub fn multisegment(&self) -> Multisegment {
        match self {
            Term::Sum(s) => Multisegment::new(s.clone()),
            Term::Speh(..) => {
                let segs = self.ladders().into_iter().flat_map(|l| l.into_multisegment().into_segments()).collect();
                Multisegment::new(segs)
            }
        }
    }

    pub fn ladders(&self) -> Vec<LadderRep> {
        match self {
            Term::Sum(s) => LadderRep::from_segments(s.clone()).into_iter().collect(),
            Term::Speh(d, None) => vec![make_speh(d)],
            Term::Speh(d, Some(x)) => Factor::Comp(*d, *x).ladders(),
        }
    }

    pub fn ladder(&self) -> Result<LadderRep, CliError> {
        match self {
            Term::Sum(s) => Ok(LadderRep::from_segments(s.clone())?),
            Term::Speh(d, None) => Ok(make_speh(d)),
            Term::Speh(_, Some(_)) => Err(Error::NotALadder.into()),
        }
    }
}

impl Expr {
    pub fn terms(&self) -> Result<&[Term], CliError> {
        match self {
            Expr::Product(t) => Ok(t),
            Expr::Context(_) => usage("expected a representation, found a context"),
        }
    }

    pub fn single(&self) -> Result<&Term, CliError> {
        match self.terms()? {
            [t] => Ok(t),
            _ => usage("expected a single factor, found a product"),
        }
    }

    pub fn ladder(&self) -> Result<LadderRep, CliError> {
        self.single()?.ladder()
    }

    /// Every factor as ladders, in product order.
    pub fn ladders(&self) -> Result<Vec<LadderRep>, CliError> {
        let mut out = Vec::new();
        for t in self.terms()? {
            match t {
                Term::Sum(_) => out.push(t.ladder()?),
                _ => out.extend(t.ladders()),
            }
        }
        Ok(out)
    }

    /// Every factor a single segment.
    pub fn segments(&self) -> Option<Vec<Segment>> {
        let mut out = Vec::new();
        for t in self.terms().ok()? {
            match t {
                Term::Sum(s) if s.len() == 1 => out.push(s[0]),
                _ => return None,
            }
        }
        Some(out)
    }

    /// Every factor a Speh datum, possibly complementary.
    pub fn unitary(&self) -> Result<Option<UnitaryRep>, CliError> {
        let mut out = Vec::new();
        for t in self.terms()? {
            match t {
                Term::Speh(d, None) => out.push(Factor::Speh(*d)),
                Term::Speh(d, Some(x)) => out.push(Factor::Comp(*d, *x)),
                Term::Sum(_) => return Ok(None),
            }
        }
        Ok(Some(UnitaryRep::new(out)?))
    }

    pub fn multisegment(&self) -> Result<Multisegment, CliError> {
        let mut m = Multisegment::new(vec![]);
        for t in self.terms()? {
            m = m.union(&t.multisegment());
        }
        Ok(m)
    }
}
