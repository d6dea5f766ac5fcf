//! Composite expressions over the named chain maps of A(n,m).
//!
//! Grammar: sums of products, `*` composing in right-to-left order (the
//! rightmost factor applies first), names from the chain (f1..fn,
//! g1..g{m+3}) plus f1' (also spelled f1p). Parentheses group.

use anyhow::{anyhow, bail, Result};

use strad_core::field::Field;
use strad_core::repmod::RepMorphism;
use strad_core::verify::FamilyContext;

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Name(String),
    Star,
    Plus,
    Open,
    Close,
}

fn lex(src: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let mut chars = src.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            ' ' | '\t' => {
                chars.next();
            }
            '*' => {
                chars.next();
                out.push(Token::Star);
            }
            '+' => {
                chars.next();
                out.push(Token::Plus);
            }
            '(' => {
                chars.next();
                out.push(Token::Open);
            }
            ')' => {
                chars.next();
                out.push(Token::Close);
            }
            c if c.is_ascii_alphanumeric() => {
                let mut name = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_ascii_alphanumeric() || c == '\'' {
                        name.push(c);
                        chars.next();
                    } else {
                        break;
                    }
                }
                out.push(Token::Name(name));
            }
            other => bail!("unexpected character `{other}` in expression"),
        }
    }
    Ok(out)
}

struct Parser<'a, K: Field> {
    tokens: Vec<Token>,
    at: usize,
    ctx: &'a FamilyContext<K>,
}

impl<'a, K: Field> Parser<'a, K> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.at)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.at).cloned();
        if t.is_some() {
            self.at += 1;
        }
        t
    }

    fn lookup(&self, name: &str) -> Result<RepMorphism<K>> {
        if name == "f1p" || name == "f1'" {
            return Ok(self.ctx.f1_prime()?);
        }
        self.ctx
            .chain
            .map_named(name)
            .map(|(_, m)| m.clone())
            .ok_or_else(|| {
                anyhow!(
                    "unknown map `{name}`; available: {}, f1p",
                    self.ctx.chain.names.join(", ")
                )
            })
    }

    fn factor(&mut self) -> Result<RepMorphism<K>> {
        match self.next() {
            Some(Token::Name(n)) => self.lookup(&n),
            Some(Token::Open) => {
                let e = self.expr()?;
                match self.next() {
                    Some(Token::Close) => Ok(e),
                    _ => bail!("missing `)`"),
                }
            }
            other => bail!("expected a map name, found {other:?}"),
        }
    }

    fn term(&mut self) -> Result<RepMorphism<K>> {
        let mut acc = self.factor()?;
        while self.peek() == Some(&Token::Star) {
            self.next();
            let rhs = self.factor()?;
            // acc * rhs applies rhs first
            acc = acc.compose(&rhs)?;
        }
        Ok(acc)
    }

    fn expr(&mut self) -> Result<RepMorphism<K>> {
        let mut acc = self.term()?;
        while self.peek() == Some(&Token::Plus) {
            self.next();
            let rhs = self.term()?;
            acc = acc.add(&rhs)?;
        }
        Ok(acc)
    }
}

/// Evaluates a composite expression against the chain maps of the context.
pub fn evaluate<K: Field>(ctx: &FamilyContext<K>, src: &str) -> Result<RepMorphism<K>> {
    let tokens = lex(src)?;
    if tokens.is_empty() {
        bail!("empty expression");
    }
    let mut p = Parser { tokens, at: 0, ctx };
    let out = p.expr()?;
    if p.at != p.tokens.len() {
        bail!("trailing tokens in expression");
    }
    Ok(out)
}
