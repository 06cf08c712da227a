//! Line-oriented ideal files:
//!
//! ```text
//! # comment
//! field Fp 32003        # or: field Q
//! vars x y z
//! gen x^2 - 3*y*z
//! gen (x + y)^3
//! ```

use num_bigint::BigInt;
use regstab::field::{Field, FieldSpec, PrimeField, Rationals};
use regstab::{Error, IdealSpec, Monomial, Polynomial, Result};

fn syntax(line: usize, col: usize, msg: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        col,
        msg: msg.into(),
    }
}

fn is_ident(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

pub fn parse_ideal_file(text: &str) -> Result<IdealSpec> {
    let mut field: Option<FieldSpec> = None;
    let mut vars: Option<Vec<String>> = None;
    let mut gens = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let content = raw.split('#').next().unwrap_or("");
        let trimmed = content.trim_start();
        if trimmed.trim().is_empty() {
            continue;
        }
        let indent = content.len() - trimmed.len();
        let (word, rest) = trimmed.split_once(char::is_whitespace).unwrap_or((trimmed, ""));
        let rest_col = indent + word.len() + 2;
        match word {
            "field" => {
                if field.is_some() {
                    return Err(syntax(line, indent + 1, "duplicate `field` line"));
                }
                field = Some(parse_field(rest, line, rest_col)?);
            }
            "vars" => {
                if vars.is_some() {
                    return Err(syntax(line, indent + 1, "duplicate `vars` line"));
                }
                let names: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
                if names.is_empty() {
                    return Err(syntax(line, rest_col, "`vars` needs at least one name"));
                }
                if let Some(bad) = names.iter().find(|v| !is_ident(v)) {
                    return Err(syntax(line, rest_col, format!("invalid variable name `{bad}`")));
                }
                for (i, v) in names.iter().enumerate() {
                    if names[..i].contains(v) {
                        return Err(Error::DuplicateVariable(v.clone()));
                    }
                }
                vars = Some(names);
            }
            "gen" => {
                let Some(names) = vars.as_ref() else {
                    return Err(syntax(line, indent + 1, "`gen` before `vars`"));
                };
                gens.push(parse_polynomial(rest, names, line, rest_col)?);
            }
            other => {
                return Err(syntax(
                    line,
                    indent + 1,
                    format!("unknown directive `{other}` (expected field, vars or gen)"),
                ))
            }
        }
    }
    let Some(vars) = vars else {
        return Err(syntax(1, 1, "missing `vars` line"));
    };
    IdealSpec::new(field.unwrap_or_default(), vars, gens)
}

fn parse_field(rest: &str, line: usize, col: usize) -> Result<FieldSpec> {
    let words: Vec<&str> = rest.split_whitespace().collect();
    match words.as_slice() {
        ["Q"] => Ok(FieldSpec::Rationals),
        ["Fp", p] => {
            let p: u64 = p
                .parse()
                .map_err(|_| syntax(line, col, format!("bad characteristic `{p}`")))?;
            PrimeField::new(p)?;
            Ok(FieldSpec::Prime(p))
        }
        _ => Err(syntax(line, col, "expected `field Fp <p>` or `field Q`")),
    }
}

/// Parses one polynomial over the integers in the variables `vars`; `col`
/// is the 1-based column of `text` within its line.
pub fn parse_polynomial(text: &str, vars: &[String], line: usize, col: usize) -> Result<Polynomial<Rationals>> {
    let tokens = tokenize(text, line, col)?;
    let mut p = Parser {
        tokens,
        pos: 0,
        vars,
        line,
        end_col: col + text.len(),
    };
    let poly = p.expr()?;
    if let Some(tok) = p.tokens.get(p.pos) {
        return Err(syntax(line, tok.col, format!("unexpected `{}`", tok.kind)));
    }
    Ok(poly)
}

#[derive(Clone, Debug, PartialEq)]
enum Kind {
    Int(BigInt),
    Ident(String),
    Op(char),
}

impl std::fmt::Display for Kind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Kind::Int(v) => write!(f, "{v}"),
            Kind::Ident(s) => write!(f, "{s}"),
            Kind::Op(c) => write!(f, "{c}"),
        }
    }
}

#[derive(Clone, Debug)]
struct Token {
    kind: Kind,
    col: usize,
}

fn tokenize(text: &str, line: usize, col: usize) -> Result<Vec<Token>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let start = i;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let kind = if c.is_ascii_digit() {
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            Kind::Int(text[start..i].parse().expect("digits"))
        } else if c.is_ascii_alphabetic() || c == '_' {
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            Kind::Ident(text[start..i].to_string())
        } else if "+-*^()".contains(c) {
            i += 1;
            Kind::Op(c)
        } else {
            let ch = text[start..].chars().next().unwrap();
            return Err(syntax(line, col + start, format!("unexpected character `{ch}`")));
        };
        out.push(Token { kind, col: col + start });
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<Token>,
    pos: usize,
    vars: &'a [String],
    line: usize,
    end_col: usize,
}

impl Parser<'_> {
    fn peek_op(&self) -> Option<char> {
        match self.tokens.get(self.pos) {
            Some(Token { kind: Kind::Op(c), .. }) => Some(*c),
            _ => None,
        }
    }

    fn err_here(&self, msg: impl Into<String>) -> Error {
        let col = self.tokens.get(self.pos).map_or(self.end_col, |t| t.col);
        syntax(self.line, col, msg)
    }

    fn expr(&mut self) -> Result<Polynomial<Rationals>> {
        let mut acc = self.term()?;
        while let Some(op @ ('+' | '-')) = self.peek_op() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if op == '+' {
                acc.add(&Rationals, &rhs)
            } else {
                acc.sub(&Rationals, &rhs)
            };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Polynomial<Rationals>> {
        let mut acc = self.unary()?;
        while self.peek_op() == Some('*') {
            self.pos += 1;
            let rhs = self.unary()?;
            acc = acc.mul(&Rationals, &rhs);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Polynomial<Rationals>> {
        match self.peek_op() {
            Some('-') => {
                self.pos += 1;
                Ok(self.unary()?.scale(&Rationals, &Rationals.from_i64(-1)))
            }
            Some('+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Polynomial<Rationals>> {
        let base = self.atom()?;
        if self.peek_op() != Some('^') {
            return Ok(base);
        }
        self.pos += 1;
        let exp = match self.tokens.get(self.pos) {
            Some(Token { kind: Kind::Int(v), .. }) => v.clone(),
            _ => return Err(self.err_here("expected a positive integer exponent")),
        };
        let e: u32 = match u32::try_from(&exp) {
            Ok(e) if e > 0 && e <= u16::MAX as u32 => e,
            _ => return Err(self.err_here(format!("exponent {exp} must be a positive integer below 65536"))),
        };
        self.pos += 1;
        Ok(base.pow(&Rationals, e))
    }

    fn atom(&mut self) -> Result<Polynomial<Rationals>> {
        let n = self.vars.len();
        let Some(tok) = self.tokens.get(self.pos).cloned() else {
            return Err(self.err_here("unexpected end of polynomial"));
        };
        self.pos += 1;
        match tok.kind {
            Kind::Int(v) => Ok(Polynomial::constant(&Rationals, n, Rationals.from_int(&v))),
            Kind::Ident(name) => match self.vars.iter().position(|v| *v == name) {
                Some(i) => Ok(Polynomial::monomial(&Rationals, Monomial::var_power(n, i, 1))),
                None => Err(syntax(self.line, tok.col, format!("undeclared variable `{name}`"))),
            },
            Kind::Op('(') => {
                let inner = self.expr()?;
                if self.peek_op() != Some(')') {
                    return Err(self.err_here("expected `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Kind::Op(c) => Err(syntax(self.line, tok.col, format!("unexpected `{c}`"))),
        }
    }
}

/// Inverse of `parse_ideal_file` for specs with integer coefficients.
pub fn print_ideal_file(spec: &IdealSpec) -> String {
    let mut out = format!("field {}\nvars {}\n", spec.field, spec.vars.join(" "));
    for g in &spec.gens {
        out.push_str("gen ");
        out.push_str(&g.format(&Rationals, &spec.vars));
        out.push('\n');
    }
    out
}

/// An ideal over a prime field written as an ideal file, coefficients
/// printed as their representatives in `0..p`.
pub fn print_prime_ideal(field: &PrimeField, vars: &[String], gens: &[Polynomial<PrimeField>]) -> String {
    let mut out = format!("field {}\nvars {}\n", field.spec(), vars.join(" "));
    for g in gens {
        out.push_str("gen ");
        out.push_str(&g.format(field, vars));
        out.push('\n');
    }
    out
}
