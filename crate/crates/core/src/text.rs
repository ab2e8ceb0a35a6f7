//! The input grammar shared by monomial-set files and PDE files.
//!
//! Monomial-set files hold one monomial per line, either as a product
//! `x3^3*x1^2` or as an exponent record `[2,0,3]`; `1` is the identity. An
//! optional `vars x1 x2 x3` line names the variables; without it the names
//! must be `x1, x2, ...` and the arity is inferred.
//!
//! PDE files are `;`-terminated statements:
//!
//! ```text
//! vars x1 x2;
//! unknowns phi1;
//! order deglex;                 # or: order weight; level 1 0 | 0; ...
//! kind system;                  # system (default), raw or monomial
//! D[2,0] phi1 = x1*D[0,1] phi1 + (1/2)*phi1;
//! initial D[0,1] phi1 = x2;     # initial data, monomial systems only
//! ```
//!
//! `#` starts a comment in both formats.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::monomial::{default_names, Monomial, MonomialSet};
use crate::order::{DerivativeOrder, DerivativeSymbol, WeightOrder};
use crate::pde::{
    Coefficient, InitialData, LinExpr, MonomialPdeSystem, PdeEquation, PdeSystem, Poly, Rational, RawEquation,
};

const RESERVED: [&str; 8] = ["D", "vars", "unknowns", "order", "kind", "level", "initial", "weight"];

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Punct(char),
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn parse_err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// Splits `text` into tokens, dropping comments. Positions are 1-based.
fn lex(text: &str, first_line: usize) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = first_line + k;
        let body = raw.split('#').next().unwrap_or("");
        let chars: Vec<char> = body.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let column = i + 1;
            if c.is_whitespace() {
                i += 1;
            } else if c.is_ascii_digit() {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                out.push(Token {
                    tok: Tok::Int(s.parse().expect("digits")),
                    line,
                    column,
                });
            } else if c.is_alphabetic() || c == '_' {
                let start = i;
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push(Token {
                    tok: Tok::Ident(chars[start..i].iter().collect()),
                    line,
                    column,
                });
            } else if "[],=+-*/^()|;".contains(c) {
                out.push(Token {
                    tok: Tok::Punct(c),
                    line,
                    column,
                });
                i += 1;
            } else {
                return Err(parse_err(line, column, format!("unexpected character '{c}'")));
            }
        }
    }
    Ok(out)
}

/// A cursor over one statement.
struct Cursor<'a> {
    toks: &'a [Token],
    pos: usize,
    /// Position reported at the end of the statement.
    end: (usize, usize),
}

impl<'a> Cursor<'a> {
    fn new(toks: &'a [Token], end: (usize, usize)) -> Self {
        Self { toks, pos: 0, end }
    }

    fn peek(&self) -> Option<&'a Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn here(&self) -> (usize, usize) {
        self.toks.get(self.pos).map_or(self.end, |t| (t.line, t.column))
    }

    fn err(&self, message: impl Into<String>) -> Error {
        let (l, c) = self.here();
        parse_err(l, c, message)
    }

    fn next(&mut self) -> Option<&'a Tok> {
        let t = self.peek();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Punct(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(format!("expected '{c}'")))
        }
    }

    fn ident(&mut self) -> Result<&'a str> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                self.pos += 1;
                Ok(s)
            }
            _ => Err(self.err("expected a name")),
        }
    }

    fn int(&mut self) -> Result<&'a BigInt> {
        match self.peek() {
            Some(Tok::Int(v)) => {
                self.pos += 1;
                Ok(v)
            }
            _ => Err(self.err("expected an integer")),
        }
    }

    fn small(&mut self) -> Result<u32> {
        let here = self.here();
        let v = self.int()?;
        v.to_u32().ok_or_else(|| parse_err(here.0, here.1, "integer too large"))
    }

    fn finish(&self) -> Result<()> {
        if self.at_end() {
            Ok(())
        } else {
            Err(self.err("unexpected trailing input"))
        }
    }
}

fn check_names(names: &[String], what: &str, at: (usize, usize)) -> Result<()> {
    for (k, s) in names.iter().enumerate() {
        if RESERVED.contains(&s.as_str()) {
            return Err(parse_err(at.0, at.1, format!("'{s}' is reserved and cannot name a {what}")));
        }
        if names[..k].contains(s) {
            return Err(parse_err(at.0, at.1, format!("{what} '{s}' is declared twice")));
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// monomial sets

/// A parsed monomial-set file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialDocument {
    pub vars: Vec<String>,
    pub set: MonomialSet,
}

enum RawMonomial {
    Record(Vec<u32>),
    Product(Vec<(String, u32, (usize, usize))>),
}

fn parse_monomial_tokens(c: &mut Cursor) -> Result<RawMonomial> {
    if c.eat('[') {
        let mut exps = vec![c.small()?];
        while c.eat(',') {
            exps.push(c.small()?);
        }
        c.expect(']')?;
        return Ok(RawMonomial::Record(exps));
    }
    if let Some(Tok::Int(v)) = c.peek() {
        if v == &BigInt::from(1) {
            c.next();
            return Ok(RawMonomial::Product(vec![]));
        }
        return Err(c.err("only the constant 1 may appear in a monomial"));
    }
    let mut factors = Vec::new();
    loop {
        let at = c.here();
        let name = c.ident()?.to_string();
        let e = if c.eat('^') { c.small()? } else { 1 };
        factors.push((name, e, at));
        if !c.eat('*') {
            break;
        }
    }
    Ok(RawMonomial::Product(factors))
}

fn default_index(name: &str) -> Option<usize> {
    name.strip_prefix('x')?.parse::<usize>().ok().filter(|&i| i >= 1)
}

pub fn parse_monomial_document(text: &str) -> Result<MonomialDocument> {
    let mut vars: Option<Vec<String>> = None;
    let mut rows = Vec::new();
    for (k, line) in text.lines().enumerate() {
        let toks = lex(line, k + 1)?;
        let mut toks = toks.as_slice();
        if let Some(Token { tok: Tok::Punct(';'), .. }) = toks.last() {
            toks = &toks[..toks.len() - 1];
        }
        if toks.is_empty() {
            continue;
        }
        let end = (k + 1, line.len() + 1);
        let mut c = Cursor::new(toks, end);
        if c.peek() == Some(&Tok::Ident("vars".into())) {
            let at = c.here();
            if vars.is_some() || !rows.is_empty() {
                return Err(parse_err(at.0, at.1, "the vars header must come first and only once"));
            }
            c.next();
            let mut names = Vec::new();
            while !c.at_end() {
                names.push(c.ident()?.to_string());
            }
            if names.is_empty() {
                return Err(parse_err(at.0, at.1, "vars needs at least one name"));
            }
            check_names(&names, "variable", at)?;
            vars = Some(names);
            continue;
        }
        let at = c.here();
        let m = parse_monomial_tokens(&mut c)?;
        c.finish()?;
        rows.push((m, at));
    }
    let n = match &vars {
        Some(v) => v.len(),
        None => {
            let mut n = 0;
            for (m, _) in &rows {
                match m {
                    RawMonomial::Record(e) => n = n.max(e.len()),
                    RawMonomial::Product(fs) => {
                        for (name, _, at) in fs {
                            let i = default_index(name).ok_or_else(|| {
                                parse_err(at.0, at.1, format!("unknown variable '{name}'; declare it with a vars line"))
                            })?;
                            n = n.max(i);
                        }
                    }
                }
            }
            if n == 0 && !rows.is_empty() {
                return Err(parse_err(1, 1, "cannot infer the number of variables; add a vars line"));
            }
            n
        }
    };
    let names = vars.unwrap_or_else(|| default_names(n));
    let mut set = MonomialSet::new(n.max(1));
    for (m, at) in rows {
        let exps = match m {
            RawMonomial::Record(e) => {
                if e.len() != n {
                    return Err(parse_err(at.0, at.1, format!("expected {n} exponents, found {}", e.len())));
                }
                e
            }
            RawMonomial::Product(fs) => {
                let mut e = vec![0; n];
                for (name, k, at) in fs {
                    let i = names
                        .iter()
                        .position(|s| *s == name)
                        .ok_or_else(|| parse_err(at.0, at.1, format!("unknown variable '{name}'")))?;
                    e[i] += k;
                }
                e
            }
        };
        let m = Monomial::new(exps).map_err(|e| parse_err(at.0, at.1, e.to_string()))?;
        set.insert(m).map_err(|e| parse_err(at.0, at.1, e.to_string()))?;
    }
    Ok(MonomialDocument { vars: names, set })
}

pub fn parse_monomial_set(text: &str) -> Result<MonomialSet> {
    Ok(parse_monomial_document(text)?.set)
}

/// `vars` header followed by the members in ascending order.
pub fn print_monomial_document(doc: &MonomialDocument) -> String {
    let mut out = format!("vars {}\n", doc.vars.join(" "));
    for m in doc.set.iter() {
        out.push_str(&m.display_with(&doc.vars));
        out.push('\n');
    }
    out
}

pub fn print_monomial_set(set: &MonomialSet) -> String {
    print_monomial_document(&MonomialDocument {
        vars: default_names(set.arity()),
        set: set.clone(),
    })
}

// ---------------------------------------------------------------------------
// PDE files

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    System,
    Raw,
    Monomial,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PdeBody {
    System(PdeSystem),
    Raw(Vec<RawEquation>),
    Monomial {
        system: MonomialPdeSystem,
        initial: Option<InitialData>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PdeDocument {
    pub vars: Vec<String>,
    pub unknowns: Vec<String>,
    pub order: DerivativeOrder,
    pub body: PdeBody,
}

impl PdeDocument {
    pub fn arity(&self) -> usize {
        self.vars.len()
    }

    pub fn kind(&self) -> Kind {
        match self.body {
            PdeBody::System(_) => Kind::System,
            PdeBody::Raw(_) => Kind::Raw,
            PdeBody::Monomial { .. } => Kind::Monomial,
        }
    }

    /// The equations in general form, whatever the kind.
    pub fn raw_equations(&self) -> Vec<RawEquation> {
        match &self.body {
            PdeBody::System(s) => s.equations().map(RawEquation::from).collect(),
            PdeBody::Raw(r) => r.clone(),
            PdeBody::Monomial { system, .. } => system.to_system().equations().map(RawEquation::from).collect(),
        }
    }
}

/// Splits tokens into `;`-terminated statements.
fn statements(toks: &[Token]) -> Result<Vec<(&[Token], (usize, usize))>> {
    let mut out = Vec::new();
    let mut start = 0;
    for (k, t) in toks.iter().enumerate() {
        if t.tok == Tok::Punct(';') {
            if k > start {
                out.push((&toks[start..k], (t.line, t.column)));
            }
            start = k + 1;
        }
    }
    if start < toks.len() {
        let t = &toks[start];
        return Err(parse_err(t.line, t.column, "statement is missing its terminating ';'"));
    }
    Ok(out)
}

struct ExprParser<'a, 'b> {
    c: Cursor<'a>,
    vars: &'b [String],
    unknowns: &'b [String],
}

impl ExprParser<'_, '_> {
    fn n(&self) -> usize {
        self.vars.len()
    }

    fn expr(&mut self) -> Result<LinExpr> {
        let mut acc = self.term()?;
        loop {
            if self.c.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.c.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<LinExpr> {
        let mut acc = self.unary()?;
        loop {
            let at = self.c.here();
            if self.c.eat('*') {
                let rhs = self.unary()?;
                acc = match (acc.is_constant(), rhs.is_constant()) {
                    (true, _) => rhs.scale(acc.inhomogeneous()),
                    (false, true) => acc.scale(rhs.inhomogeneous()),
                    (false, false) => return Err(parse_err(at.0, at.1, "product of two derivatives is not linear")),
                };
            } else if self.c.eat('/') {
                let rhs = self.unary()?;
                if !rhs.is_constant() {
                    return Err(parse_err(at.0, at.1, "cannot divide by a derivative"));
                }
                let inv = rhs
                    .inhomogeneous()
                    .recip()
                    .map_err(|_| parse_err(at.0, at.1, "division by zero"))?;
                acc = acc.scale(&inv);
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<LinExpr> {
        if self.c.eat('-') {
            return Ok(-&self.unary()?);
        }
        if self.c.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<LinExpr> {
        let base = self.atom()?;
        let at = self.c.here();
        if self.c.eat('^') {
            let e = self.c.small()?;
            if !base.is_constant() {
                return Err(parse_err(at.0, at.1, "cannot raise a derivative to a power"));
            }
            return Ok(LinExpr::constant(base.inhomogeneous().pow(e)));
        }
        Ok(base)
    }

    fn symbol_of(&self, name: &str, alpha: Monomial, at: (usize, usize)) -> Result<LinExpr> {
        let r = self
            .unknowns
            .iter()
            .position(|s| s == name)
            .ok_or_else(|| parse_err(at.0, at.1, format!("'{name}' is not a declared unknown")))?;
        Ok(LinExpr::symbol(DerivativeSymbol::new(r + 1, alpha)))
    }

    fn atom(&mut self) -> Result<LinExpr> {
        let at = self.c.here();
        let n = self.n();
        match self.c.next() {
            Some(Tok::Int(v)) => Ok(LinExpr::constant(Coefficient::constant(n, Rational::from_integer(v.clone())))),
            Some(Tok::Punct('(')) => {
                let e = self.expr()?;
                self.c.expect(')')?;
                Ok(e)
            }
            Some(Tok::Ident(s)) if s == "D" => {
                self.c.expect('[')?;
                let mut exps = vec![self.c.small()?];
                while self.c.eat(',') {
                    exps.push(self.c.small()?);
                }
                self.c.expect(']')?;
                if exps.len() != n {
                    return Err(parse_err(at.0, at.1, format!("expected {n} exponents, found {}", exps.len())));
                }
                let at_name = self.c.here();
                let name = self.c.ident()?;
                self.symbol_of(name, Monomial::new(exps).map_err(|e| parse_err(at.0, at.1, e.to_string()))?, at_name)
            }
            Some(Tok::Ident(s)) => {
                if let Some(i) = self.vars.iter().position(|v| v == s) {
                    Ok(LinExpr::constant(Coefficient::from_poly(Poly::var(n, i + 1))))
                } else {
                    self.symbol_of(s, Monomial::one(n), at)
                }
            }
            _ => Err(parse_err(at.0, at.1, "expected a number, name, D[...] or '('")),
        }
    }
}

fn parse_order_statements(
    stmts: &[(&[Token], (usize, usize))],
    n: usize,
    m: usize,
) -> Result<(DerivativeOrder, usize)> {
    let (first, end) = stmts[0];
    let mut c = Cursor::new(first, end);
    let at = c.here();
    if c.ident()? != "order" {
        return Err(parse_err(at.0, at.1, "expected 'order'"));
    }
    let kind_at = c.here();
    let kind = c.ident()?;
    c.finish()?;
    match kind {
        "deglex" => Ok((DerivativeOrder::Deglex, 1)),
        "weight" => {
            let mut var_rows = Vec::new();
            let mut unk_rows = Vec::new();
            let mut used = 1;
            for (toks, end) in &stmts[1..] {
                let mut c = Cursor::new(toks, *end);
                if c.peek() != Some(&Tok::Ident("level".into())) {
                    break;
                }
                c.next();
                let mut row = Vec::new();
                let mut unk = Vec::new();
                while let Some(Tok::Int(_)) = c.peek() {
                    row.push(c.small()? as i64);
                }
                if c.eat('|') {
                    while let Some(Tok::Int(_)) = c.peek() {
                        unk.push(c.small()? as i64);
                    }
                } else {
                    unk = vec![0; m];
                }
                c.finish()?;
                var_rows.push(row);
                unk_rows.push(unk);
                used += 1;
            }
            let w = WeightOrder::new(n, m, var_rows, unk_rows)
                .map_err(|e| parse_err(kind_at.0, kind_at.1, e.to_string()))?;
            Ok((DerivativeOrder::Weight(w), used))
        }
        other => Err(parse_err(kind_at.0, kind_at.1, format!("unknown order '{other}'; use deglex or weight"))),
    }
}

/// Parses an order given as `deglex` or `weight; level c1 .. cn | w1 .. wm; ...`.
pub fn parse_order(text: &str, n: usize, m: usize) -> Result<DerivativeOrder> {
    let mut src = text.trim().to_string();
    if !src.ends_with(';') {
        src.push(';');
    }
    let src = format!("order {src}");
    let toks = lex(&src, 1)?;
    let stmts = statements(&toks)?;
    let (order, used) = parse_order_statements(&stmts, n, m)?;
    if used != stmts.len() {
        let (toks, _) = stmts[used];
        return Err(parse_err(toks[0].line, toks[0].column, "unexpected statement in order"));
    }
    Ok(order)
}

pub fn print_order(order: &DerivativeOrder) -> String {
    match order {
        DerivativeOrder::Deglex => "order deglex;\n".to_string(),
        DerivativeOrder::Weight(w) => {
            let mut out = "order weight;\n".to_string();
            for (c, u) in w.var_weights().iter().zip(w.unknown_weights()) {
                let c: Vec<String> = c.iter().map(u64::to_string).collect();
                let u: Vec<String> = u.iter().map(u64::to_string).collect();
                out.push_str(&format!("level {} | {};\n", c.join(" "), u.join(" ")));
            }
            out
        }
    }
}

pub fn order_name(order: &DerivativeOrder) -> &'static str {
    match order {
        DerivativeOrder::Deglex => "deglex",
        DerivativeOrder::Weight(_) => "weight",
    }
}

pub fn parse_pde_file(text: &str) -> Result<PdeDocument> {
    parse_pde_file_with(text, None)
}

/// As [`parse_pde_file`], with `order` replacing the file's order.
pub fn parse_pde_file_with(text: &str, order: Option<&str>) -> Result<PdeDocument> {
    let toks = lex(text, 1)?;
    let stmts = statements(&toks)?;
    let mut vars: Option<Vec<String>> = None;
    let mut unknowns: Option<Vec<String>> = None;
    let mut file_order: Option<DerivativeOrder> = None;
    let mut kind = Kind::System;
    let mut k = 0;
    while k < stmts.len() {
        let (toks, end) = stmts[k];
        let mut c = Cursor::new(toks, end);
        let at = c.here();
        let word = match c.peek() {
            Some(Tok::Ident(s)) => s.as_str(),
            _ => break,
        };
        match word {
            "vars" | "unknowns" => {
                c.next();
                let mut names = Vec::new();
                while !c.at_end() {
                    names.push(c.ident()?.to_string());
                }
                if names.is_empty() {
                    return Err(parse_err(at.0, at.1, format!("{word} needs at least one name")));
                }
                let slot = if word == "vars" { &mut vars } else { &mut unknowns };
                if slot.is_some() {
                    return Err(parse_err(at.0, at.1, format!("{word} declared twice")));
                }
                check_names(&names, if word == "vars" { "variable" } else { "unknown" }, at)?;
                *slot = Some(names);
                k += 1;
            }
            "order" => {
                let (Some(v), Some(u)) = (&vars, &unknowns) else {
                    return Err(parse_err(at.0, at.1, "vars and unknowns must be declared before the order"));
                };
                if file_order.is_some() {
                    return Err(parse_err(at.0, at.1, "order declared twice"));
                }
                let (o, used) = parse_order_statements(&stmts[k..], v.len(), u.len())?;
                file_order = Some(o);
                k += used;
            }
            "kind" => {
                c.next();
                let kat = c.here();
                kind = match c.ident()? {
                    "system" => Kind::System,
                    "raw" => Kind::Raw,
                    "monomial" => Kind::Monomial,
                    other => return Err(parse_err(kat.0, kat.1, format!("unknown kind '{other}'"))),
                };
                c.finish()?;
                k += 1;
            }
            _ => break,
        }
    }
    let vars = vars.ok_or_else(|| parse_err(1, 1, "missing 'vars' header"))?;
    let unknowns = unknowns.ok_or_else(|| parse_err(1, 1, "missing 'unknowns' header"))?;
    for u in &unknowns {
        if vars.contains(u) {
            return Err(parse_err(1, 1, format!("'{u}' names both a variable and an unknown")));
        }
    }
    let n = vars.len();
    let m = unknowns.len();
    let order = match order {
        Some(spec) => parse_order(spec, n, m)?,
        None => file_order.unwrap_or_default(),
    };

    let mut equations = Vec::new();
    let mut initial = Vec::new();
    for &(toks, end) in &stmts[k..] {
        let mut c = Cursor::new(toks, end);
        let at = c.here();
        let is_initial = c.peek() == Some(&Tok::Ident("initial".into()));
        if is_initial {
            c.next();
        }
        if let Some(Tok::Ident(s)) = c.peek() {
            if RESERVED.contains(&s.as_str()) && s != "D" {
                return Err(c.err(format!("'{s}' statements must come before the equations")));
            }
        }
        let mut p = ExprParser {
            c,
            vars: &vars,
            unknowns: &unknowns,
        };
        let lhs = p.expr()?;
        p.c.expect('=')?;
        let rhs = p.expr()?;
        p.c.finish()?;
        if is_initial {
            initial.push((lhs, rhs, at));
        } else {
            equations.push((lhs, rhs, at));
        }
    }
    if !initial.is_empty() && kind != Kind::Monomial {
        let at = initial[0].2;
        return Err(parse_err(at.0, at.1, "initial data is only allowed with kind monomial"));
    }

    let body = match kind {
        Kind::Raw => {
            let mut raw = Vec::new();
            for (lhs, rhs, at) in equations {
                let r = RawEquation::new(lhs, rhs);
                if r.as_expr().is_constant() {
                    return Err(parse_err(at.0, at.1, "equation has no derivative terms"));
                }
                raw.push(r);
            }
            PdeBody::Raw(raw)
        }
        Kind::System => {
            let mut seen: BTreeMap<DerivativeSymbol, (usize, usize)> = BTreeMap::new();
            let mut eqs = Vec::new();
            for (lhs, rhs, at) in equations {
                let lead = solved_lead(&lhs, at)?;
                for d in rhs.symbols() {
                    if !order.is_anterior(d, &lead) {
                        return Err(parse_err(
                            at.0,
                            at.1,
                            format!(
                                "right-hand side term {} is not anterior to {} under {}",
                                d.display_with(&unknowns),
                                lead.display_with(&unknowns),
                                order_name(&order)
                            ),
                        ));
                    }
                }
                if let Some(prev) = seen.get(&lead) {
                    return Err(parse_err(
                        at.0,
                        at.1,
                        format!("duplicate leading derivative {} (first at line {})", lead.display_with(&unknowns), prev.0),
                    ));
                }
                seen.insert(lead.clone(), at);
                eqs.push(PdeEquation::new(lead, rhs));
            }
            PdeBody::System(PdeSystem::with_names(n, m, order.clone(), eqs, &unknowns)?)
        }
        Kind::Monomial => {
            if m != 1 {
                return Err(parse_err(1, 1, "a monomial system has exactly one unknown"));
            }
            let mut rhs_map = BTreeMap::new();
            for (lhs, rhs, at) in equations {
                let lead = solved_lead(&lhs, at)?;
                let f = polynomial_rhs(&rhs, at)?;
                if rhs_map.insert(lead.alpha.clone(), f).is_some() {
                    return Err(parse_err(
                        at.0,
                        at.1,
                        format!("duplicate leading derivative {}", lead.display_with(&unknowns)),
                    ));
                }
            }
            if rhs_map.is_empty() {
                return Err(parse_err(1, 1, "a monomial system needs at least one equation"));
            }
            let data = if initial.is_empty() {
                None
            } else {
                let mut data = InitialData::default();
                for (lhs, rhs, at) in initial {
                    let slot = solved_lead(&lhs, at)?;
                    let g = polynomial_rhs(&rhs, at)?;
                    if data.values.insert((1, slot.alpha), g).is_some() {
                        return Err(parse_err(at.0, at.1, "initial data given twice for the same slot"));
                    }
                }
                Some(data)
            };
            PdeBody::Monomial {
                system: MonomialPdeSystem::new(n, rhs_map)?,
                initial: data,
            }
        }
    };
    Ok(PdeDocument {
        vars,
        unknowns,
        order,
        body,
    })
}

fn solved_lead(lhs: &LinExpr, at: (usize, usize)) -> Result<DerivativeSymbol> {
    let mut it = lhs.terms();
    match (it.next(), it.next()) {
        (Some((d, c)), None) if c.is_one() && lhs.inhomogeneous().is_zero() => Ok(d.clone()),
        _ => Err(parse_err(
            at.0,
            at.1,
            "left-hand side must be a single derivative; use 'kind raw' for general equations",
        )),
    }
}

fn polynomial_rhs(rhs: &LinExpr, at: (usize, usize)) -> Result<Poly> {
    if !rhs.is_constant() {
        return Err(parse_err(at.0, at.1, "right-hand side must not contain derivatives"));
    }
    rhs.inhomogeneous()
        .as_polynomial()
        .cloned()
        .ok_or_else(|| parse_err(at.0, at.1, "right-hand side must be a polynomial"))
}

pub fn print_system(sys: &PdeSystem, vars: &[String], unknowns: &[String]) -> String {
    let mut out = String::new();
    let mut eqs: Vec<PdeEquation> = sys.equations().collect();
    eqs.sort_by(|a, b| sys.order().cmp(&b.lead, &a.lead));
    for e in eqs {
        out.push_str(&format!(
            "{} = {};\n",
            e.lead.display_with(unknowns),
            e.rhs.display_with(vars, unknowns, sys.order())
        ));
    }
    out
}

pub fn print_pde_document(doc: &PdeDocument) -> String {
    let mut out = format!("vars {};\nunknowns {};\n", doc.vars.join(" "), doc.unknowns.join(" "));
    out.push_str(&print_order(&doc.order));
    match &doc.body {
        PdeBody::System(s) => out.push_str(&print_system(s, &doc.vars, &doc.unknowns)),
        PdeBody::Raw(raw) => {
            out.push_str("kind raw;\n");
            for r in raw {
                out.push_str(&format!(
                    "{} = {};\n",
                    r.lhs.display_with(&doc.vars, &doc.unknowns, &doc.order),
                    r.rhs.display_with(&doc.vars, &doc.unknowns, &doc.order)
                ));
            }
        }
        PdeBody::Monomial { system, initial } => {
            out.push_str("kind monomial;\n");
            for (a, f) in system.rhs().iter().rev() {
                let d = DerivativeSymbol::new(1, a.clone());
                out.push_str(&format!("{} = {};\n", d.display_with(&doc.unknowns), f.display_with(&doc.vars)));
            }
            if let Some(data) = initial {
                for ((r, b), g) in &data.values {
                    let d = DerivativeSymbol::new(*r, b.clone());
                    out.push_str(&format!(
                        "initial {} = {};\n",
                        d.display_with(&doc.unknowns),
                        g.display_with(&doc.vars)
                    ));
                }
            }
        }
    }
    out
}
