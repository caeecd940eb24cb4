//! Surface-syntax parsers for both calculi.
//!
//! Shared grammar conventions: `\x. t` or `\(x:T). t` for λ, application by
//! juxtaposition (left-associative), `->` right-associative in types. The
//! target calculus adds `<a,b>`, postfix `^1`/`^2`, `[t]`, `t >>= u`, `0`
//! and `t + u`; target product types are written `A * B` (right-nested).

use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::prims::PrimRegistry;
use crate::source::{SourceTerm, SourceType};
use crate::target::{TargetTerm, TargetType};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

impl core::fmt::Display for ParseError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "parse error at {}:{}: {}", self.line, self.col, self.msg)
    }
}

impl core::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Number(String),
    Lambda,
    Dot,
    LParen,
    RParen,
    LAngle,
    RAngle,
    Comma,
    LBracket,
    RBracket,
    Proj1,
    Proj2,
    BindOp,
    PlusOp,
    Colon,
    ArrowOp,
    Star,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Number(s) => format!("number `{s}`"),
            Tok::Lambda => String::from("`\\`"),
            Tok::Dot => String::from("`.`"),
            Tok::LParen => String::from("`(`"),
            Tok::RParen => String::from("`)`"),
            Tok::LAngle => String::from("`<`"),
            Tok::RAngle => String::from("`>`"),
            Tok::Comma => String::from("`,`"),
            Tok::LBracket => String::from("`[`"),
            Tok::RBracket => String::from("`]`"),
            Tok::Proj1 => String::from("`^1`"),
            Tok::Proj2 => String::from("`^2`"),
            Tok::BindOp => String::from("`>>=`"),
            Tok::PlusOp => String::from("`+`"),
            Tok::Colon => String::from("`:`"),
            Tok::ArrowOp => String::from("`->`"),
            Tok::Star => String::from("`*`"),
            Tok::Eof => String::from("end of input"),
        }
    }
}

struct Lexer {
    toks: Vec<(Tok, usize, usize)>,
    pos: usize,
}

fn is_ident_start(c: char) -> bool {
    c.is_alphabetic() || c == '_'
}

fn is_ident_continue(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '\''
}

fn lex(text: &str) -> Result<Vec<(Tok, usize, usize)>, ParseError> {
    let mut toks = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    let mut line = 1;
    let mut col = 1;
    let err = |line, col, msg: String| ParseError { line, col, msg };
    while i < chars.len() {
        let c = chars[i];
        let (tl, tc) = (line, col);
        let mut advance = |i: &mut usize, line: &mut usize, col: &mut usize, n: usize| {
            for k in 0..n {
                if chars[*i + k] == '\n' {
                    *line += 1;
                    *col = 1;
                } else {
                    *col += 1;
                }
            }
            *i += n;
        };
        if c.is_whitespace() {
            advance(&mut i, &mut line, &mut col, 1);
            continue;
        }
        if c.is_ascii_digit() {
            let mut j = i;
            while j < chars.len() && chars[j].is_ascii_digit() {
                j += 1;
            }
            if j + 1 < chars.len() && chars[j] == '.' && chars[j + 1].is_ascii_digit() {
                j += 1;
                while j < chars.len() && chars[j].is_ascii_digit() {
                    j += 1;
                }
            }
            if j + 1 < chars.len()
                && (chars[j] == 'e' || chars[j] == 'E')
                && (chars[j + 1].is_ascii_digit()
                    || (j + 2 < chars.len()
                        && (chars[j + 1] == '+' || chars[j + 1] == '-')
                        && chars[j + 2].is_ascii_digit()))
            {
                j += 2;
                while j < chars.len() && chars[j].is_ascii_digit() {
                    j += 1;
                }
            }
            let lexeme: String = chars[i..j].iter().collect();
            let n = j - i;
            advance(&mut i, &mut line, &mut col, n);
            toks.push((Tok::Number(lexeme), tl, tc));
            continue;
        }
        if is_ident_start(c) {
            let mut j = i + 1;
            while j < chars.len() && is_ident_continue(chars[j]) {
                j += 1;
            }
            let lexeme: String = chars[i..j].iter().collect();
            let n = j - i;
            advance(&mut i, &mut line, &mut col, n);
            toks.push((Tok::Ident(lexeme), tl, tc));
            continue;
        }
        match c {
            '\\' => {
                advance(&mut i, &mut line, &mut col, 1);
                toks.push((Tok::Lambda, tl, tc));
            }
            'λ' => {
                advance(&mut i, &mut line, &mut col, 1);
                toks.push((Tok::Lambda, tl, tc));
            }
            '.' => {
                advance(&mut i, &mut line, &mut col, 1);
                toks.push((Tok::Dot, tl, tc));
            }
            '(' => {
                advance(&mut i, &mut line, &mut col, 1);
                toks.push((Tok::LParen, tl, tc));
            }
            ')' => {
                advance(&mut i, &mut line, &mut col, 1);
                toks.push((Tok::RParen, tl, tc));
            }
            '<' => {
                advance(&mut i, &mut line, &mut col, 1);
                toks.push((Tok::LAngle, tl, tc));
            }
            '>' => {
                if i + 2 < chars.len() && chars[i + 1] == '>' && chars[i + 2] == '=' {
                    advance(&mut i, &mut line, &mut col, 3);
                    toks.push((Tok::BindOp, tl, tc));
                } else {
                    advance(&mut i, &mut line, &mut col, 1);
                    toks.push((Tok::RAngle, tl, tc));
                }
            }
            ',' => {
                advance(&mut i, &mut line, &mut col, 1);
                toks.push((Tok::Comma, tl, tc));
            }
            '[' => {
                advance(&mut i, &mut line, &mut col, 1);
                toks.push((Tok::LBracket, tl, tc));
            }
            ']' => {
                advance(&mut i, &mut line, &mut col, 1);
                toks.push((Tok::RBracket, tl, tc));
            }
            '^' => {
                if i + 1 < chars.len() && chars[i + 1] == '1' {
                    advance(&mut i, &mut line, &mut col, 2);
                    toks.push((Tok::Proj1, tl, tc));
                } else if i + 1 < chars.len() && chars[i + 1] == '2' {
                    advance(&mut i, &mut line, &mut col, 2);
                    toks.push((Tok::Proj2, tl, tc));
                } else {
                    return Err(err(tl, tc, String::from("expected `^1` or `^2`")));
                }
            }
            '+' => {
                advance(&mut i, &mut line, &mut col, 1);
                toks.push((Tok::PlusOp, tl, tc));
            }
            ':' => {
                advance(&mut i, &mut line, &mut col, 1);
                toks.push((Tok::Colon, tl, tc));
            }
            '-' => {
                if i + 1 < chars.len() && chars[i + 1] == '>' {
                    advance(&mut i, &mut line, &mut col, 2);
                    toks.push((Tok::ArrowOp, tl, tc));
                } else {
                    return Err(err(tl, tc, String::from("expected `->`")));
                }
            }
            '*' => {
                advance(&mut i, &mut line, &mut col, 1);
                toks.push((Tok::Star, tl, tc));
            }
            other => {
                return Err(err(tl, tc, format!("unexpected character `{other}`")));
            }
        }
    }
    toks.push((Tok::Eof, line, col));
    Ok(toks)
}

impl Lexer {
    fn new(text: &str) -> Result<Self, ParseError> {
        Ok(Lexer {
            toks: lex(text)?,
            pos: 0,
        })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn peek2(&self) -> &Tok {
        let i = (self.pos + 1).min(self.toks.len() - 1);
        &self.toks[i].0
    }

    fn here(&self) -> (usize, usize) {
        let (_, l, c) = self.toks[self.pos];
        (l, c)
    }

    fn next(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, want: &Tok) -> Result<(), ParseError> {
        if self.peek() == want {
            self.next();
            Ok(())
        } else {
            let (l, c) = self.here();
            Err(ParseError {
                line: l,
                col: c,
                msg: format!("expected {}, found {}", want.describe(), self.peek().describe()),
            })
        }
    }

    fn fail<T>(&self, msg: String) -> Result<T, ParseError> {
        let (l, c) = self.here();
        Err(ParseError {
            line: l,
            col: c,
            msg,
        })
    }
}

// ---------------------------------------------------------------------------
// Types
// ---------------------------------------------------------------------------

fn parse_source_type_inner(lx: &mut Lexer) -> Result<SourceType, ParseError> {
    let lhs = match lx.next() {
        Tok::Ident(name) => SourceType::Ground(name),
        Tok::LParen => {
            let t = parse_source_type_inner(lx)?;
            lx.expect(&Tok::RParen)?;
            t
        }
        other => return lx.fail(format!("expected a type, found {}", other.describe())),
    };
    if lx.peek() == &Tok::ArrowOp {
        lx.next();
        let rhs = parse_source_type_inner(lx)?;
        Ok(SourceType::arrow(lhs, rhs))
    } else {
        Ok(lhs)
    }
}

fn parse_target_type_atom(lx: &mut Lexer) -> Result<TargetType, ParseError> {
    match lx.next() {
        Tok::Ident(name) => {
            if name == "M" && lx.peek() == &Tok::LBracket {
                lx.next();
                let inner = parse_target_type_inner(lx)?;
                lx.expect(&Tok::RBracket)?;
                Ok(TargetType::monad(inner))
            } else {
                Ok(TargetType::Ground(name))
            }
        }
        Tok::LParen => {
            let t = parse_target_type_inner(lx)?;
            lx.expect(&Tok::RParen)?;
            Ok(t)
        }
        other => lx.fail(format!("expected a type, found {}", other.describe())),
    }
}

fn parse_target_type_prod(lx: &mut Lexer) -> Result<TargetType, ParseError> {
    let lhs = parse_target_type_atom(lx)?;
    if lx.peek() == &Tok::Star {
        lx.next();
        let rhs = parse_target_type_prod(lx)?;
        Ok(TargetType::prod(lhs, rhs))
    } else {
        Ok(lhs)
    }
}

fn parse_target_type_inner(lx: &mut Lexer) -> Result<TargetType, ParseError> {
    let lhs = parse_target_type_prod(lx)?;
    if lx.peek() == &Tok::ArrowOp {
        lx.next();
        let rhs = parse_target_type_inner(lx)?;
        Ok(TargetType::arrow(lhs, rhs))
    } else {
        Ok(lhs)
    }
}

pub fn parse_source_type(text: &str) -> Result<SourceType, ParseError> {
    let mut lx = Lexer::new(text)?;
    let t = parse_source_type_inner(&mut lx)?;
    lx.expect(&Tok::Eof)?;
    Ok(t)
}

pub fn parse_target_type(text: &str) -> Result<TargetType, ParseError> {
    let mut lx = Lexer::new(text)?;
    let t = parse_target_type_inner(&mut lx)?;
    lx.expect(&Tok::Eof)?;
    Ok(t)
}

// ---------------------------------------------------------------------------
// Source terms
// ---------------------------------------------------------------------------

struct SourceParser<'a> {
    lx: Lexer,
    reg: &'a PrimRegistry,
    bound: Vec<String>,
}

fn parse_binder<T>(
    lx: &mut Lexer,
    parse_ty: fn(&mut Lexer) -> Result<T, ParseError>,
) -> Result<(String, Option<T>), ParseError> {
    match lx.next() {
        Tok::Ident(name) => {
            if lx.peek() == &Tok::Colon {
                lx.next();
                let ty = parse_ty(lx)?;
                Ok((name, Some(ty)))
            } else {
                Ok((name, None))
            }
        }
        Tok::LParen => {
            let name = match lx.next() {
                Tok::Ident(n) => n,
                other => {
                    return lx.fail(format!("expected a binder name, found {}", other.describe()))
                }
            };
            lx.expect(&Tok::Colon)?;
            let ty = parse_ty(lx)?;
            lx.expect(&Tok::RParen)?;
            Ok((name, Some(ty)))
        }
        other => lx.fail(format!("expected a binder, found {}", other.describe())),
    }
}

impl<'a> SourceParser<'a> {
    fn term(&mut self) -> Result<SourceTerm, ParseError> {
        if self.lx.peek() == &Tok::Lambda {
            self.lx.next();
            let (binder, annot) = parse_binder(&mut self.lx, parse_source_type_inner)?;
            self.lx.expect(&Tok::Dot)?;
            self.bound.push(binder.clone());
            let body = self.term()?;
            self.bound.pop();
            Ok(SourceTerm::Lam {
                binder,
                annot,
                body: Box::new(body),
            })
        } else {
            self.app()
        }
    }

    fn app(&mut self) -> Result<SourceTerm, ParseError> {
        let mut head = self.atom()?;
        while self.starts_atom() {
            let arg = self.atom()?;
            head = SourceTerm::app(head, arg);
        }
        Ok(head)
    }

    fn starts_atom(&self) -> bool {
        matches!(
            self.lx.peek(),
            Tok::Ident(_) | Tok::Number(_) | Tok::LParen
        )
    }

    fn atom(&mut self) -> Result<SourceTerm, ParseError> {
        match self.lx.next() {
            Tok::Ident(name) => {
                if self.bound.iter().any(|b| b == &name) {
                    Ok(SourceTerm::Var(name))
                } else if let Some(ty) = self.reg.source_type_of(&name) {
                    Ok(SourceTerm::Prim { symbol: name, ty })
                } else {
                    Ok(SourceTerm::Var(name))
                }
            }
            Tok::Number(lexeme) => Ok(SourceTerm::lit(&lexeme)),
            Tok::LParen => {
                let t = self.term()?;
                self.lx.expect(&Tok::RParen)?;
                Ok(t)
            }
            other => self
                .lx
                .fail(format!("expected a term, found {}", other.describe())),
        }
    }
}

/// Parses a source-calculus term. Identifiers bound by an enclosing λ are
/// variables; otherwise names in the registry resolve to primitives and the
/// rest stay free variables.
pub fn parse_source_with(text: &str, reg: &PrimRegistry) -> Result<SourceTerm, ParseError> {
    let lx = Lexer::new(text)?;
    let mut p = SourceParser {
        lx,
        reg,
        bound: Vec::new(),
    };
    let t = p.term()?;
    p.lx.expect(&Tok::Eof)?;
    Ok(t)
}

/// `parse_source_with` under the default primitive registry.
pub fn parse_source(text: &str) -> Result<SourceTerm, ParseError> {
    parse_source_with(text, &PrimRegistry::default())
}

// ---------------------------------------------------------------------------
// Target terms
// ---------------------------------------------------------------------------

struct TargetParser<'a> {
    lx: Lexer,
    reg: &'a PrimRegistry,
    bound: Vec<String>,
}

impl<'a> TargetParser<'a> {
    fn term(&mut self) -> Result<TargetTerm, ParseError> {
        if self.lx.peek() == &Tok::Lambda {
            self.lambda()
        } else {
            self.sum()
        }
    }

    fn lambda(&mut self) -> Result<TargetTerm, ParseError> {
        self.lx.expect(&Tok::Lambda)?;
        let (binder, annot) = parse_binder(&mut self.lx, parse_target_type_inner)?;
        self.lx.expect(&Tok::Dot)?;
        self.bound.push(binder.clone());
        let body = self.term()?;
        self.bound.pop();
        Ok(TargetTerm::Lam {
            binder,
            annot,
            body: Box::new(body),
        })
    }

    fn sum(&mut self) -> Result<TargetTerm, ParseError> {
        let lhs = self.bind()?;
        if self.lx.peek() == &Tok::PlusOp {
            self.lx.next();
            let rhs = self.sum_or_lambda()?;
            Ok(TargetTerm::plus(lhs, rhs))
        } else {
            Ok(lhs)
        }
    }

    fn sum_or_lambda(&mut self) -> Result<TargetTerm, ParseError> {
        if self.lx.peek() == &Tok::Lambda {
            self.lambda()
        } else {
            self.sum()
        }
    }

    fn bind(&mut self) -> Result<TargetTerm, ParseError> {
        let mut head = self.app()?;
        while self.lx.peek() == &Tok::BindOp {
            self.lx.next();
            if self.lx.peek() == &Tok::Lambda {
                let k = self.lambda()?;
                head = TargetTerm::bind(head, k);
                break;
            }
            let k = self.app()?;
            head = TargetTerm::bind(head, k);
        }
        Ok(head)
    }

    fn app(&mut self) -> Result<TargetTerm, ParseError> {
        let mut head = self.postfix()?;
        while self.starts_atom() {
            let arg = self.postfix()?;
            head = TargetTerm::app(head, arg);
        }
        Ok(head)
    }

    fn starts_atom(&self) -> bool {
        matches!(
            self.lx.peek(),
            Tok::Ident(_) | Tok::Number(_) | Tok::LParen | Tok::LAngle | Tok::LBracket
        )
    }

    fn postfix(&mut self) -> Result<TargetTerm, ParseError> {
        let mut t = self.atom()?;
        loop {
            match self.lx.peek() {
                Tok::Proj1 => {
                    self.lx.next();
                    t = TargetTerm::proj1(t);
                }
                Tok::Proj2 => {
                    self.lx.next();
                    t = TargetTerm::proj2(t);
                }
                _ => break,
            }
        }
        Ok(t)
    }

    fn atom(&mut self) -> Result<TargetTerm, ParseError> {
        match self.lx.next() {
            Tok::Ident(name) => {
                if self.bound.iter().any(|b| b == &name) {
                    Ok(TargetTerm::Var(name))
                } else if let Some(ty) = self.reg.target_type_of(&name) {
                    Ok(TargetTerm::Prim { symbol: name, ty })
                } else {
                    Ok(TargetTerm::Var(name))
                }
            }
            Tok::Number(lexeme) => {
                if lexeme == "0" {
                    Ok(TargetTerm::Zero)
                } else {
                    Ok(TargetTerm::lit(&lexeme))
                }
            }
            Tok::LParen => {
                let t = self.term()?;
                if self.lx.peek() == &Tok::Colon {
                    self.lx.next();
                    let ty = parse_target_type_inner(&mut self.lx)?;
                    self.lx.expect(&Tok::RParen)?;
                    return Ok(TargetTerm::ann(t, ty));
                }
                self.lx.expect(&Tok::RParen)?;
                Ok(t)
            }
            Tok::LAngle => {
                let fst = self.term()?;
                self.lx.expect(&Tok::Comma)?;
                let snd = self.term()?;
                self.lx.expect(&Tok::RAngle)?;
                Ok(TargetTerm::pair(fst, snd))
            }
            Tok::LBracket => {
                let inner = self.term()?;
                self.lx.expect(&Tok::RBracket)?;
                Ok(TargetTerm::ret(inner))
            }
            other => self
                .lx
                .fail(format!("expected a term, found {}", other.describe())),
        }
    }
}

/// Parses a target-calculus term. The bare numeral `0` is the monoid unit;
/// numerals with a fractional part or exponent are `real` literals.
pub fn parse_target_with(text: &str, reg: &PrimRegistry) -> Result<TargetTerm, ParseError> {
    let lx = Lexer::new(text)?;
    let mut p = TargetParser {
        lx,
        reg,
        bound: Vec::new(),
    };
    let t = p.term()?;
    p.lx.expect(&Tok::Eof)?;
    Ok(t)
}

/// `parse_target_with` under the default primitive registry.
pub fn parse_target(text: &str) -> Result<TargetTerm, ParseError> {
    parse_target_with(text, &PrimRegistry::default())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::source::{alpha_eq as src_alpha_eq, SourceTerm};
    use crate::target::{alpha_eq as tgt_alpha_eq, TargetTerm};

    #[test]
    fn parses_identity() {
        let t = parse_source("\\x. x").unwrap();
        assert!(src_alpha_eq(&t, &SourceTerm::lam("x", SourceTerm::var("x"))));
    }

    #[test]
    fn parses_nested_squares() {
        let t = parse_source("\\x. sq (sq x)").unwrap();
        let sq = || parse_source("sq").unwrap();
        let expect = SourceTerm::lam(
            "x",
            SourceTerm::app(sq(), SourceTerm::app(sq(), SourceTerm::var("x"))),
        );
        assert!(src_alpha_eq(&t, &expect));
    }

    #[test]
    fn parses_k_combinator() {
        let t = parse_source("\\x. \\y. x").unwrap();
        let expect = SourceTerm::lam("x", SourceTerm::lam("y", SourceTerm::var("x")));
        assert!(src_alpha_eq(&t, &expect));
    }

    #[test]
    fn parses_annotated_binder() {
        let t = parse_source("\\(x:real). x").unwrap();
        match t {
            SourceTerm::Lam { annot, .. } => assert_eq!(annot, Some(SourceType::real())),
            other => panic!("expected lambda, got {other:?}"),
        }
        let t2 = parse_source("\\x:real. x").unwrap();
        match t2 {
            SourceTerm::Lam { annot, .. } => assert_eq!(annot, Some(SourceType::real())),
            other => panic!("expected lambda, got {other:?}"),
        }
    }

    #[test]
    fn parses_variable_counter() {
        // Counter of a matching variable.
        let t = parse_target("\\p. [p]").unwrap();
        let expect = TargetTerm::lam("p", TargetTerm::ret(TargetTerm::var("p")));
        assert!(tgt_alpha_eq(&t, &expect));
    }

    #[test]
    fn parses_zero_counter() {
        // Counter of a non-matching variable.
        let t = parse_target("\\p. 0").unwrap();
        let expect = TargetTerm::lam("p", TargetTerm::Zero);
        assert!(tgt_alpha_eq(&t, &expect));
    }

    #[test]
    fn parses_pair_of_identity_and_projection_counter() {
        let t = parse_target("<\\x.x, \\p.[p^2]>").unwrap();
        let expect = TargetTerm::pair(
            TargetTerm::lam("x", TargetTerm::var("x")),
            TargetTerm::lam(
                "p",
                TargetTerm::ret(TargetTerm::proj2(TargetTerm::var("p"))),
            ),
        );
        assert!(tgt_alpha_eq(&t, &expect));
    }

    #[test]
    fn bind_is_left_associative_and_plus_is_loose() {
        let t = parse_target("a + b >>= c").unwrap();
        let expect = TargetTerm::plus(
            TargetTerm::var("a"),
            TargetTerm::bind(TargetTerm::var("b"), TargetTerm::var("c")),
        );
        assert_eq!(t, expect);
        let u = parse_target("m >>= k >>= l").unwrap();
        let expect2 = TargetTerm::bind(
            TargetTerm::bind(TargetTerm::var("m"), TargetTerm::var("k")),
            TargetTerm::var("l"),
        );
        assert_eq!(u, expect2);
    }

    #[test]
    fn lambda_after_bind_extends_right() {
        let t = parse_target("m >>= \\z. [z]").unwrap();
        let expect = TargetTerm::bind(
            TargetTerm::var("m"),
            TargetTerm::lam("z", TargetTerm::ret(TargetTerm::var("z"))),
        );
        assert_eq!(t, expect);
    }

    #[test]
    fn nested_pair_closes_without_bind_token() {
        let t = parse_target("<a,<b,c>>").unwrap();
        let expect = TargetTerm::pair(
            TargetTerm::var("a"),
            TargetTerm::pair(TargetTerm::var("b"), TargetTerm::var("c")),
        );
        assert_eq!(t, expect);
    }

    #[test]
    fn target_types_roundtrip_structure() {
        let t = parse_target_type("(real -> real) * (real * real -> M[real])").unwrap();
        let expect = TargetType::prod(
            TargetType::arrow(TargetType::real(), TargetType::real()),
            TargetType::arrow(
                TargetType::prod(TargetType::real(), TargetType::real()),
                TargetType::monad(TargetType::real()),
            ),
        );
        assert_eq!(t, expect);
    }

    #[test]
    fn reports_line_and_column() {
        let e = parse_source("\\x.\n  (y").unwrap_err();
        assert_eq!(e.line, 2);
        assert!(e.col >= 4);
    }

    #[test]
    fn unknown_free_identifier_is_a_variable() {
        let t = parse_source("y").unwrap();
        assert_eq!(t, SourceTerm::var("y"));
    }

    #[test]
    fn bound_name_shadows_primitive() {
        let t = parse_source("\\sq. sq").unwrap();
        match t {
            SourceTerm::Lam { body, .. } => assert_eq!(*body, SourceTerm::var("sq")),
            other => panic!("expected lambda, got {other:?}"),
        }
    }
}
