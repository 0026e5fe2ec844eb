//! Lexer, parser and elaborator for `.hopf` presentations.
//!
//! ```text
//! algebra "B"
//! param lambda = 1/2
//! gen Y
//! gen X { delta: Y -> Y }
//! gen Z {
//!   sigma: X -> X - 1; Y -> Y
//!   sigma_inv: X -> X + 1; Y -> Y
//!   delta: X -> lambda*Y
//!   w: X ox Y - Y ox X
//! }
//! ```

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::Error;
use crate::hopf::HopfTower;
use crate::ore::scalar::parse_scalar;
use crate::ore::{normal_form, Expr, NcPoly, Scalar, Step, Tower};
use crate::tensor::Tensor2;

pub const KEYWORDS: [&str; 9] = [
    "algebra",
    "param",
    "gen",
    "sigma",
    "sigma_inv",
    "delta",
    "w",
    "counit",
    "ox",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseErrorKind {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("unknown identifier `{0}`")]
    UnknownIdentifier(String),
    #[error("`{name}` may not appear in the data of `{at}`: only earlier generators can")]
    ForwardReference { name: String, at: String },
    #[error("parameter `{0}` is unbound")]
    UnboundParameter(String),
    #[error("malformed rational `{0}`")]
    MalformedRational(String),
    #[error("`{0}` is defined twice")]
    Duplicate(String),
    #[error("`{0}` is a reserved word")]
    Reserved(String),
    #[error(transparent)]
    Semantic(Error),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{line}:{col}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub kind: ParseErrorKind,
}

impl ParseError {
    fn at(pos: Pos, kind: ParseErrorKind) -> Self {
        ParseError {
            line: pos.line,
            col: pos.col,
            kind,
        }
    }
}

type PResult<T> = std::result::Result<T, ParseError>;

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Number(String),
    Str(String),
    Sym(&'static str),
    Eof,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    pos: Pos,
}

const SYMBOLS: [&str; 14] = ["->", "{", "}", "(", ")", ":", ";", "+", "-", "*", "^", "/", "=", ","];

fn lex(text: &str) -> PResult<Vec<Token>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        let pos = Pos { line, col };
        let advance = |n: usize, i: &mut usize, col: &mut usize| {
            *i += n;
            *col += n;
        };
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
        } else if c.is_whitespace() {
            advance(1, &mut i, &mut col);
        } else if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_' || chars[i] == '\'') {
                i += 1;
            }
            col += i - start;
            out.push(Token {
                tok: Tok::Ident(chars[start..i].iter().collect()),
                pos,
            });
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            col += i - start;
            out.push(Token {
                tok: Tok::Number(chars[start..i].iter().collect()),
                pos,
            });
        } else if c == '"' {
            let mut s = String::new();
            advance(1, &mut i, &mut col);
            loop {
                match chars.get(i) {
                    None | Some('\n') => {
                        return Err(ParseError::at(
                            pos,
                            ParseErrorKind::Syntax("unterminated string".into()),
                        ))
                    }
                    Some('"') => {
                        advance(1, &mut i, &mut col);
                        break;
                    }
                    Some('\\') if matches!(chars.get(i + 1), Some('"') | Some('\\')) => {
                        s.push(chars[i + 1]);
                        advance(2, &mut i, &mut col);
                    }
                    Some(&ch) => {
                        s.push(ch);
                        advance(1, &mut i, &mut col);
                    }
                }
            }
            out.push(Token { tok: Tok::Str(s), pos });
        } else {
            let rest: String = chars[i..chars.len().min(i + 2)].iter().collect();
            let Some(sym) = SYMBOLS.iter().find(|s| rest.starts_with(**s)) else {
                return Err(ParseError::at(
                    pos,
                    ParseErrorKind::Syntax(format!("unexpected character `{c}`")),
                ));
            };
            advance(sym.len(), &mut i, &mut col);
            out.push(Token {
                tok: Tok::Sym(sym),
                pos,
            });
        }
    }
    out.push(Token {
        tok: Tok::Eof,
        pos: Pos { line, col },
    });
    Ok(out)
}

#[derive(Debug, Clone)]
enum Ast {
    Num(Scalar),
    Ident(String, Pos),
    Neg(Box<Ast>),
    Add(Box<Ast>, Box<Ast>),
    Sub(Box<Ast>, Box<Ast>),
    Mul(Box<Ast>, Box<Ast>),
    Pow(Box<Ast>, u32),
}

#[derive(Debug, Clone)]
struct Entry {
    target: String,
    pos: Pos,
    image: Ast,
}

#[derive(Debug, Clone, Default)]
struct GenDecl {
    name: String,
    pos: Pos,
    sigma: Vec<Entry>,
    sigma_inv: Vec<Entry>,
    delta: Vec<Entry>,
    tail: Vec<(Ast, Ast)>,
    counit: Option<(Ast, Pos)>,
}

impl Default for Pos {
    fn default() -> Self {
        Pos { line: 1, col: 1 }
    }
}

#[derive(Debug, Clone, Default)]
struct Document {
    name: String,
    params: Vec<(String, Pos, Option<Scalar>)>,
    gens: Vec<GenDecl>,
}

struct Parser {
    tokens: Vec<Token>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.tokens[self.at].tok
    }

    fn peek2(&self) -> &Tok {
        &self.tokens[(self.at + 1).min(self.tokens.len() - 1)].tok
    }

    fn pos(&self) -> Pos {
        self.tokens[self.at].pos
    }

    fn bump(&mut self) -> Token {
        let t = self.tokens[self.at].clone();
        if self.at + 1 < self.tokens.len() {
            self.at += 1;
        }
        t
    }

    fn describe(tok: &Tok) -> String {
        match tok {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Number(s) => format!("number `{s}`"),
            Tok::Str(s) => format!("string \"{s}\""),
            Tok::Sym(s) => format!("`{s}`"),
            Tok::Eof => "end of input".into(),
        }
    }

    fn fail<T>(&self, expected: &str) -> PResult<T> {
        Err(ParseError::at(
            self.pos(),
            ParseErrorKind::Syntax(format!("expected {expected}, found {}", Self::describe(self.peek()))),
        ))
    }

    fn is_sym(&self, s: &str) -> bool {
        matches!(self.peek(), Tok::Sym(t) if *t == s)
    }

    fn is_keyword(&self, k: &str) -> bool {
        matches!(self.peek(), Tok::Ident(t) if t == k)
    }

    fn expect_sym(&mut self, s: &str) -> PResult<Pos> {
        if self.is_sym(s) {
            Ok(self.bump().pos)
        } else {
            self.fail(&format!("`{s}`"))
        }
    }

    fn expect_keyword(&mut self, k: &str) -> PResult<()> {
        if self.is_keyword(k) {
            self.bump();
            Ok(())
        } else {
            self.fail(&format!("`{k}`"))
        }
    }

    /// A user-chosen name; keywords are rejected.
    fn name(&mut self) -> PResult<(String, Pos)> {
        let pos = self.pos();
        match self.peek().clone() {
            Tok::Ident(s) if KEYWORDS.contains(&s.as_str()) => Err(ParseError::at(pos, ParseErrorKind::Reserved(s))),
            Tok::Ident(s) => {
                self.bump();
                Ok((s, pos))
            }
            _ => self.fail("a name"),
        }
    }

    fn rational(&mut self) -> PResult<Scalar> {
        let pos = self.pos();
        let Tok::Number(num) = self.peek().clone() else {
            return self.fail("a number");
        };
        self.bump();
        if self.is_sym("/") {
            self.bump();
            let Tok::Number(den) = self.peek().clone() else {
                return self.fail("a denominator");
            };
            self.bump();
            let text = format!("{num}/{den}");
            return parse_scalar(&text).ok_or_else(|| ParseError::at(pos, ParseErrorKind::MalformedRational(text)));
        }
        parse_scalar(&num).ok_or_else(|| ParseError::at(pos, ParseErrorKind::MalformedRational(num)))
    }

    fn signed_rational(&mut self) -> PResult<Scalar> {
        if self.is_sym("-") {
            self.bump();
            return Ok(-self.rational()?);
        }
        self.rational()
    }

    fn document(&mut self) -> PResult<Document> {
        let mut doc = Document::default();
        self.expect_keyword("algebra")?;
        match self.peek().clone() {
            Tok::Str(s) => {
                self.bump();
                doc.name = s;
            }
            _ => return self.fail("a quoted algebra name"),
        }
        while self.is_keyword("param") {
            self.bump();
            let (name, pos) = self.name()?;
            let value = if self.is_sym("=") {
                self.bump();
                Some(self.signed_rational()?)
            } else {
                None
            };
            doc.params.push((name, pos, value));
        }
        while self.is_keyword("gen") {
            self.bump();
            doc.gens.push(self.generator()?);
        }
        if *self.peek() != Tok::Eof {
            return self.fail("`gen`, `param` or end of input");
        }
        Ok(doc)
    }

    fn generator(&mut self) -> PResult<GenDecl> {
        let (name, pos) = self.name()?;
        let mut decl = GenDecl {
            name,
            pos,
            ..GenDecl::default()
        };
        if !self.is_sym("{") {
            return Ok(decl);
        }
        self.bump();
        loop {
            let clause = match self.peek() {
                Tok::Sym("}") => {
                    self.bump();
                    return Ok(decl);
                }
                Tok::Ident(k) if ["sigma", "sigma_inv", "delta", "w", "counit"].contains(&k.as_str()) => k.clone(),
                _ => return self.fail("`sigma`, `sigma_inv`, `delta`, `w`, `counit` or `}`"),
            };
            self.bump();
            self.expect_sym(":")?;
            match clause.as_str() {
                "sigma" => decl.sigma.extend(self.entries()?),
                "sigma_inv" => decl.sigma_inv.extend(self.entries()?),
                "delta" => decl.delta.extend(self.entries()?),
                "w" => decl.tail.extend(self.tensor()?),
                _ => {
                    let pos = self.pos();
                    decl.counit = Some((self.expr()?, pos));
                }
            }
            while self.is_sym(";") {
                self.bump();
            }
        }
    }

    fn entries(&mut self) -> PResult<Vec<Entry>> {
        let mut out = Vec::new();
        loop {
            let (target, pos) = self.name()?;
            self.expect_sym("->")?;
            out.push(Entry {
                target,
                pos,
                image: self.expr()?,
            });
            // `;` continues the clause unless a clause keyword or `}` follows.
            if self.is_sym(";") && matches!(self.peek2(), Tok::Ident(_)) && !self.next_is_clause() {
                self.bump();
                continue;
            }
            return Ok(out);
        }
    }

    fn next_is_clause(&self) -> bool {
        matches!(self.peek2(), Tok::Ident(k) if KEYWORDS.contains(&k.as_str()))
    }

    fn tensor(&mut self) -> PResult<Vec<(Ast, Ast)>> {
        let mut out = Vec::new();
        let mut negate = false;
        loop {
            let left = self.term()?;
            self.expect_keyword("ox")?;
            let right = self.term()?;
            let left = if negate { Ast::Neg(Box::new(left)) } else { left };
            out.push((left, right));
            if self.is_sym("+") || self.is_sym("-") {
                negate = self.is_sym("-");
                self.bump();
                continue;
            }
            return Ok(out);
        }
    }

    fn expr(&mut self) -> PResult<Ast> {
        let mut acc = self.term()?;
        loop {
            if self.is_sym("+") {
                self.bump();
                acc = Ast::Add(Box::new(acc), Box::new(self.term()?));
            } else if self.is_sym("-") {
                self.bump();
                acc = Ast::Sub(Box::new(acc), Box::new(self.term()?));
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> PResult<Ast> {
        let mut acc = self.unary()?;
        while self.is_sym("*") {
            self.bump();
            acc = Ast::Mul(Box::new(acc), Box::new(self.unary()?));
        }
        Ok(acc)
    }

    fn unary(&mut self) -> PResult<Ast> {
        if self.is_sym("-") {
            self.bump();
            return Ok(Ast::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> PResult<Ast> {
        let base = self.atom()?;
        if !self.is_sym("^") {
            return Ok(base);
        }
        self.bump();
        let pos = self.pos();
        let Tok::Number(e) = self.peek().clone() else {
            return self.fail("a non-negative integer exponent");
        };
        self.bump();
        let e: u32 = e
            .parse()
            .map_err(|_| ParseError::at(pos, ParseErrorKind::Syntax(format!("exponent `{e}` too large"))))?;
        Ok(Ast::Pow(Box::new(base), e))
    }

    fn atom(&mut self) -> PResult<Ast> {
        match self.peek().clone() {
            Tok::Number(_) => Ok(Ast::Num(self.rational()?)),
            Tok::Ident(_) => {
                let (name, pos) = self.name()?;
                Ok(Ast::Ident(name, pos))
            }
            Tok::Sym("(") => {
                self.bump();
                let inner = self.expr()?;
                self.expect_sym(")")?;
                Ok(inner)
            }
            _ => self.fail("a number, a name or `(`"),
        }
    }
}

/// Resolves names against parameters and the generators below `bound`.
struct Scope<'a> {
    params: &'a BTreeMap<String, Scalar>,
    names: &'a [String],
    bound: usize,
    at: &'a str,
}

impl Scope<'_> {
    fn resolve(&self, ast: &Ast) -> PResult<Expr> {
        Ok(match ast {
            Ast::Num(c) => Expr::Num(c.clone()),
            Ast::Ident(name, pos) => {
                if let Some(v) = self.params.get(name) {
                    Expr::Num(v.clone())
                } else {
                    match self.names.iter().position(|n| n == name) {
                        Some(i) if i < self.bound => Expr::var(name),
                        Some(_) => {
                            return Err(ParseError::at(
                                *pos,
                                ParseErrorKind::ForwardReference {
                                    name: name.clone(),
                                    at: self.at.to_string(),
                                },
                            ))
                        }
                        None => return Err(ParseError::at(*pos, ParseErrorKind::UnknownIdentifier(name.clone()))),
                    }
                }
            }
            Ast::Neg(a) => Expr::neg(self.resolve(a)?),
            Ast::Add(a, b) => Expr::add(self.resolve(a)?, self.resolve(b)?),
            Ast::Sub(a, b) => Expr::sub(self.resolve(a)?, self.resolve(b)?),
            Ast::Mul(a, b) => Expr::mul(self.resolve(a)?, self.resolve(b)?),
            Ast::Pow(a, e) => Expr::pow(self.resolve(a)?, *e),
        })
    }

    fn target(&self, entry: &Entry) -> PResult<usize> {
        match self.names.iter().position(|n| *n == entry.target) {
            Some(i) if i < self.bound => Ok(i),
            Some(_) => Err(ParseError::at(
                entry.pos,
                ParseErrorKind::ForwardReference {
                    name: entry.target.clone(),
                    at: self.at.to_string(),
                },
            )),
            None => Err(ParseError::at(
                entry.pos,
                ParseErrorKind::UnknownIdentifier(entry.target.clone()),
            )),
        }
    }
}

fn first_pos(ast: &Ast) -> Option<Pos> {
    match ast {
        Ast::Num(_) => None,
        Ast::Ident(_, p) => Some(*p),
        Ast::Neg(a) | Ast::Pow(a, _) => first_pos(a),
        Ast::Add(a, b) | Ast::Sub(a, b) | Ast::Mul(a, b) => first_pos(a).or_else(|| first_pos(b)),
    }
}

fn elaborate(doc: Document, bindings: &BTreeMap<String, Scalar>, budget: Option<u64>) -> PResult<HopfTower> {
    let mut params = BTreeMap::new();
    for (name, pos, value) in &doc.params {
        if params.contains_key(name) {
            return Err(ParseError::at(*pos, ParseErrorKind::Duplicate(name.clone())));
        }
        let value = bindings
            .get(name)
            .or(value.as_ref())
            .ok_or_else(|| ParseError::at(*pos, ParseErrorKind::UnboundParameter(name.clone())))?;
        params.insert(name.clone(), value.clone());
    }
    if let Some(extra) = bindings.keys().find(|k| !params.contains_key(*k)) {
        return Err(ParseError::at(
            Pos::default(),
            ParseErrorKind::UnknownIdentifier(extra.clone()),
        ));
    }
    let mut names: Vec<String> = Vec::new();
    for g in &doc.gens {
        if names.contains(&g.name) || params.contains_key(&g.name) {
            return Err(ParseError::at(g.pos, ParseErrorKind::Duplicate(g.name.clone())));
        }
        names.push(g.name.clone());
    }
    let n = names.len();
    let semantic = |pos: Pos| move |e: Error| ParseError::at(pos, ParseErrorKind::Semantic(e));
    let mut steps: Vec<Step> = Vec::with_capacity(n);
    let mut tails = Vec::with_capacity(n);
    let mut counits = Vec::with_capacity(n);
    for (i, g) in doc.gens.iter().enumerate() {
        // Later steps are placeholders: products below generator i never use them.
        let mut all = steps.clone();
        all.extend((i..n).map(|j| Step::trivial(j, n)));
        let mut scratch = Tower::new(names.clone(), all).map_err(semantic(g.pos))?;
        if let Some(b) = budget {
            scratch = scratch.with_budget(b);
        }
        let scope = Scope {
            params: &params,
            names: &names,
            bound: i,
            at: &g.name,
        };
        let eval = |ast: &Ast| -> PResult<NcPoly> {
            let expr = scope.resolve(ast)?;
            normal_form(&expr, &scratch).map_err(semantic(first_pos(ast).unwrap_or(g.pos)))
        };
        let mut step = Step::trivial(i, n);
        let fill = |entries: &[Entry], slot: &mut Vec<NcPoly>| -> PResult<()> {
            let mut seen = vec![false; i];
            for e in entries {
                let a = scope.target(e)?;
                if seen[a] {
                    return Err(ParseError::at(e.pos, ParseErrorKind::Duplicate(e.target.clone())));
                }
                seen[a] = true;
                slot[a] = eval(&e.image)?;
            }
            Ok(())
        };
        fill(&g.sigma, &mut step.sigma)?;
        fill(&g.sigma_inv, &mut step.sigma_inv)?;
        fill(&g.delta, &mut step.delta)?;
        steps.push(step);

        let mut w = Tensor2::zero(n);
        for (l, r) in &g.tail {
            w.add_assign_scaled(&Tensor2::pure([&eval(l)?, &eval(r)?]), &Scalar::from_integer(1.into()));
        }
        tails.push(w);

        let counit = match &g.counit {
            None => Scalar::zero(),
            Some((ast, pos)) => {
                let constant = Scope {
                    params: &params,
                    names: &names,
                    bound: 0,
                    at: &g.name,
                };
                let expr = constant.resolve(ast)?;
                normal_form(&expr, &scratch).map_err(semantic(*pos))?.constant_term()
            }
        };
        counits.push(counit);
    }
    let mut tower = Tower::new(names, steps).map_err(semantic(Pos::default()))?;
    if let Some(b) = budget {
        tower = tower.with_budget(b);
    }
    HopfTower::new(doc.name, tower, tails, counits).map_err(semantic(Pos::default()))
}

/// Parses and elaborates a presentation. `bindings` supplies or overrides
/// parameter values.
pub fn parse_with(text: &str, bindings: &BTreeMap<String, Scalar>, budget: Option<u64>) -> PResult<HopfTower> {
    let tokens = lex(text)?;
    let doc = Parser { tokens, at: 0 }.document()?;
    elaborate(doc, bindings, budget)
}

pub fn parse(text: &str) -> PResult<HopfTower> {
    parse_with(text, &BTreeMap::new(), None)
}

/// Parses a bare expression over the generators of `ht`.
pub fn parse_expr(text: &str, ht: &HopfTower) -> PResult<NcPoly> {
    let tokens = lex(text)?;
    let mut p = Parser { tokens, at: 0 };
    let ast = p.expr()?;
    if *p.peek() != Tok::Eof {
        return p.fail("end of expression");
    }
    let params = BTreeMap::new();
    let scope = Scope {
        params: &params,
        names: ht.names(),
        bound: ht.arity(),
        at: "expression",
    };
    let expr = scope.resolve(&ast)?;
    normal_form(&expr, ht.tower()).map_err(|e| ParseError::at(Pos::default(), ParseErrorKind::Semantic(e)))
}

/// Parses a tensor expression `a ox b + ...` over the generators of `ht`.
pub fn parse_tensor(text: &str, ht: &HopfTower) -> PResult<Tensor2> {
    let tokens = lex(text)?;
    let mut p = Parser { tokens, at: 0 };
    if matches!(p.peek(), Tok::Number(n) if n == "0") && matches!(p.peek2(), Tok::Eof) {
        return Ok(Tensor2::zero(ht.arity()));
    }
    let terms = p.tensor()?;
    if *p.peek() != Tok::Eof {
        return p.fail("end of expression");
    }
    let params = BTreeMap::new();
    let scope = Scope {
        params: &params,
        names: ht.names(),
        bound: ht.arity(),
        at: "expression",
    };
    let mut out = Tensor2::zero(ht.arity());
    for (l, r) in &terms {
        let l = normal_form(&scope.resolve(l)?, ht.tower());
        let r = normal_form(&scope.resolve(r)?, ht.tower());
        let (l, r) = match (l, r) {
            (Ok(l), Ok(r)) => (l, r),
            (Err(e), _) | (_, Err(e)) => return Err(ParseError::at(Pos::default(), ParseErrorKind::Semantic(e))),
        };
        out.add_assign_scaled(&Tensor2::pure([&l, &r]), &Scalar::from_integer(1.into()));
    }
    Ok(out)
}

/// Parses a 3-fold tensor `a ox b ox c + ...`; used to re-read witnesses.
pub fn parse_tensor3(text: &str, ht: &HopfTower) -> PResult<crate::tensor::Tensor3> {
    let n = ht.arity();
    let mut out = crate::tensor::Tensor3::zero(n);
    if text.trim() == "0" {
        return Ok(out);
    }
    let tokens = lex(text)?;
    let mut p = Parser { tokens, at: 0 };
    let params = BTreeMap::new();
    let scope = Scope {
        params: &params,
        names: ht.names(),
        bound: n,
        at: "expression",
    };
    let mut negate = false;
    loop {
        let mut factors = Vec::with_capacity(3);
        for k in 0..3 {
            if k > 0 {
                p.expect_keyword("ox")?;
            }
            let ast = p.term()?;
            let ast = if k == 0 && negate { Ast::Neg(Box::new(ast)) } else { ast };
            factors.push(
                normal_form(&scope.resolve(&ast)?, ht.tower())
                    .map_err(|e| ParseError::at(Pos::default(), ParseErrorKind::Semantic(e)))?,
            );
        }
        out.add_assign_scaled(
            &crate::tensor::Tensor3::pure([&factors[0], &factors[1], &factors[2]]),
            &Scalar::from_integer(1.into()),
        );
        if p.is_sym("+") || p.is_sym("-") {
            negate = p.is_sym("-");
            p.bump();
            continue;
        }
        break;
    }
    if *p.peek() != Tok::Eof {
        return p.fail("end of expression");
    }
    Ok(out)
}
