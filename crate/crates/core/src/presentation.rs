//! The line-oriented presentation format.
//!
//! ```text
//! # comment
//! field rational            # or: field gf 5
//! basis a b
//! option symmetric          # optional: mul y x defaults to mul x y
//! mul a a = 1*a
//! mul a b = 1/2*b + -1*a
//! mul b b = 0
//! ```
//!
//! Every product must be given, either directly or through `option symmetric`.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::algebra::{is_valid_label, Algebra, AlgebraBuilder, AlgebraError, Element};
use crate::linalg::{FieldError, FieldSpec, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("unknown directive `{0}`")]
    UnknownDirective(String),
    #[error("`{0}` declared twice")]
    Redeclared(&'static str),
    #[error("missing `{0}` declaration")]
    MissingDeclaration(&'static str),
    #[error("`{0}` must come before any `mul` line")]
    OutOfOrder(&'static str),
    #[error("malformed field declaration; expected `field rational` or `field gf <p>`")]
    BadFieldSyntax,
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("invalid basis name `{0}`")]
    InvalidName(String),
    #[error("basis name `{0}` repeated")]
    DuplicateName(String),
    #[error("unknown basis name `{0}`")]
    UnknownName(String),
    #[error("malformed product line; expected `mul <x> <y> = <terms>`")]
    BadProductSyntax,
    #[error("malformed term `{0}`")]
    BadTerm(String),
    #[error("empty expression")]
    EmptyExpression,
    #[error("product {x}*{y} already given on line {first}")]
    DuplicateProduct { x: String, y: String, first: usize },
    #[error("missing products: {}", render_missing(.0))]
    MissingProducts(Vec<MissingProduct>),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// A product absent from the file, with the line after which it belongs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MissingProduct {
    pub left: String,
    pub right: String,
    pub after_line: usize,
}

fn render_missing(m: &[MissingProduct]) -> String {
    m.iter()
        .map(|p| format!("{}*{} (after line {})", p.left, p.right, p.after_line))
        .collect::<Vec<_>>()
        .join(", ")
}

/// A diagnostic positioned at a 1-based line; line 0 means the whole file.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

impl ParseError {
    fn at(line: usize, kind: impl Into<ParseErrorKind>) -> ParseError {
        ParseError {
            line,
            kind: kind.into(),
        }
    }
}

#[derive(Debug, Clone, Eq)]
pub struct ProductLine {
    pub left: String,
    pub right: String,
    /// Nonzero terms in basis order; empty for `= 0`.
    pub terms: Vec<(Scalar, String)>,
    pub line: usize,
}

/// Source positions are not part of equality.
impl PartialEq for ProductLine {
    fn eq(&self, other: &Self) -> bool {
        self.left == other.left && self.right == other.right && self.terms == other.terms
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Document {
    pub field: FieldSpec,
    pub basis: Vec<String>,
    pub symmetric: bool,
    pub products: Vec<ProductLine>,
}

impl Document {
    /// The canonical document: every product, row-major, no symmetric fill.
    pub fn from_algebra(alg: &Algebra) -> Document {
        let n = alg.dim();
        let labels = alg.labels();
        let mut products = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let terms = alg
                    .product_of_basis(i, j)
                    .coords()
                    .iter()
                    .zip(labels)
                    .filter(|(c, _)| !c.is_zero())
                    .map(|(c, l)| (c.clone(), l.clone()))
                    .collect();
                products.push(ProductLine {
                    left: labels[i].clone(),
                    right: labels[j].clone(),
                    terms,
                    line: products.len() + 3,
                });
            }
        }
        Document {
            field: alg.field(),
            basis: labels.to_vec(),
            symmetric: false,
            products,
        }
    }

    pub fn to_algebra(&self) -> Result<Algebra, ParseError> {
        let mut b = AlgebraBuilder::new(self.field, self.basis.iter().cloned()).map_err(|e| ParseError::at(0, e))?;
        for p in &self.products {
            let terms: Vec<(&str, Scalar)> = p.terms.iter().map(|(c, n)| (n.as_str(), c.clone())).collect();
            b.product(&p.left, &p.right, &terms)
                .map_err(|e| ParseError::at(p.line, e))?;
        }
        if self.symmetric {
            b.fill_symmetric();
        }
        let missing = b.missing();
        if !missing.is_empty() {
            let n = self.basis.len();
            let mut given: Vec<(usize, usize)> = self
                .products
                .iter()
                .map(|p| (self.index(&p.left) * n + self.index(&p.right), p.line))
                .collect();
            given.sort();
            let header = self
                .products
                .iter()
                .map(|p| p.line)
                .min()
                .map_or(2, |l| l.saturating_sub(1));
            let missing = missing
                .into_iter()
                .map(|(i, j)| {
                    let key = i * n + j;
                    let after_line = given
                        .iter()
                        .take_while(|(k, _)| *k < key)
                        .map(|(_, l)| *l)
                        .max()
                        .unwrap_or(header);
                    MissingProduct {
                        left: self.basis[i].clone(),
                        right: self.basis[j].clone(),
                        after_line,
                    }
                })
                .collect();
            return Err(ParseError::at(0, ParseErrorKind::MissingProducts(missing)));
        }
        b.build().map_err(|e| ParseError::at(0, e))
    }

    fn index(&self, name: &str) -> usize {
        self.basis.iter().position(|b| b == name).expect("validated name")
    }
}

impl fmt::Display for Document {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "field {}", self.field)?;
        writeln!(f, "basis {}", self.basis.join(" "))?;
        if self.symmetric {
            writeln!(f, "option symmetric")?;
        }
        for p in &self.products {
            write!(f, "mul {} {} = ", p.left, p.right)?;
            if p.terms.is_empty() {
                writeln!(f, "0")?;
            } else {
                let t: Vec<String> = p.terms.iter().map(|(c, n)| format!("{c}*{n}")).collect();
                writeln!(f, "{}", t.join(" + "))?;
            }
        }
        Ok(())
    }
}

fn strip_comment(line: &str) -> &str {
    line.split_once('#').map_or(line, |(code, _)| code).trim()
}

fn parse_field(rest: &[&str]) -> Result<FieldSpec, ParseErrorKind> {
    match rest {
        ["rational"] => Ok(FieldSpec::Rational),
        ["gf", p] => {
            let p: u64 = p.parse().map_err(|_| ParseErrorKind::BadFieldSyntax)?;
            Ok(FieldSpec::prime(p)?)
        }
        _ => Err(ParseErrorKind::BadFieldSyntax),
    }
}

/// Parses `c*name` terms joined by `+`/`-`, with a bare `name` meaning `1*name`.
/// Repeated names are summed and zero coefficients dropped.
fn parse_terms(
    field: FieldSpec,
    text: &str,
    known: &dyn Fn(&str) -> bool,
) -> Result<Vec<(Scalar, String)>, ParseErrorKind> {
    let text = text.trim();
    if text.is_empty() {
        return Err(ParseErrorKind::EmptyExpression);
    }
    // Split at `+`/`-` that follow a complete term, keeping the sign with the term.
    let mut pieces: Vec<(bool, String)> = Vec::new();
    let mut current = String::new();
    let mut negate = false;
    for ch in text.chars() {
        if (ch == '+' || ch == '-') && !current.trim().is_empty() && !current.trim_end().ends_with('*') {
            pieces.push((negate, std::mem::take(&mut current)));
            negate = ch == '-';
        } else {
            current.push(ch);
        }
    }
    pieces.push((negate, current));

    let mut acc: Vec<(String, Scalar)> = Vec::new();
    for (negate, raw) in pieces {
        let term = raw.trim();
        let bad = || ParseErrorKind::BadTerm(term.to_string());
        let (coef, name) = match term.split_once('*') {
            Some((c, n)) => (field.parse_scalar(c.trim()).map_err(|_| bad())?, n.trim()),
            None => {
                let (sign, n) = match term.strip_prefix('-') {
                    Some(n) => (field.from_i64(-1), n.trim()),
                    None => (field.one(), term.strip_prefix('+').unwrap_or(term).trim()),
                };
                if term == "0" {
                    continue;
                }
                (sign, n)
            }
        };
        if !is_valid_label(name) {
            return Err(bad());
        }
        if !known(name) {
            return Err(ParseErrorKind::UnknownName(name.to_string()));
        }
        let coef = if negate { -coef } else { coef };
        match acc.iter_mut().find(|(n, _)| n == name) {
            Some((_, c)) => *c += &coef,
            None => acc.push((name.to_string(), coef)),
        }
    }
    Ok(acc
        .into_iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|(n, c)| (c, n))
        .collect())
}

pub fn parse_document(text: &str) -> Result<Document, ParseError> {
    let mut field: Option<(FieldSpec, usize)> = None;
    let mut basis: Option<Vec<String>> = None;
    let mut symmetric = false;
    let mut products: Vec<ProductLine> = Vec::new();
    let mut seen: HashMap<(String, String), usize> = HashMap::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let code = strip_comment(raw);
        if code.is_empty() {
            continue;
        }
        let err = |kind: ParseErrorKind| ParseError::at(line, kind);
        let words: Vec<&str> = code.split_whitespace().collect();
        match words[0] {
            "field" => {
                if field.is_some() {
                    return Err(err(ParseErrorKind::Redeclared("field")));
                }
                if !products.is_empty() {
                    return Err(err(ParseErrorKind::OutOfOrder("field")));
                }
                field = Some((parse_field(&words[1..]).map_err(err)?, line));
            }
            "basis" => {
                if basis.is_some() {
                    return Err(err(ParseErrorKind::Redeclared("basis")));
                }
                if !products.is_empty() {
                    return Err(err(ParseErrorKind::OutOfOrder("basis")));
                }
                let mut names: Vec<String> = Vec::new();
                for w in &words[1..] {
                    if !is_valid_label(w) {
                        return Err(err(ParseErrorKind::InvalidName(w.to_string())));
                    }
                    if names.iter().any(|n| n == w) {
                        return Err(err(ParseErrorKind::DuplicateName(w.to_string())));
                    }
                    names.push(w.to_string());
                }
                if names.is_empty() {
                    return Err(err(ParseErrorKind::Algebra(AlgebraError::EmptyBasis)));
                }
                basis = Some(names);
            }
            "option" => match &words[1..] {
                ["symmetric"] => symmetric = true,
                _ => return Err(err(ParseErrorKind::UnknownDirective(code.to_string()))),
            },
            "mul" => {
                let Some((f, _)) = field else {
                    return Err(err(ParseErrorKind::MissingDeclaration("field")));
                };
                let Some(names) = &basis else {
                    return Err(err(ParseErrorKind::MissingDeclaration("basis")));
                };
                let body = code["mul".len()..].trim();
                let Some((lhs, rhs)) = body.split_once('=') else {
                    return Err(err(ParseErrorKind::BadProductSyntax));
                };
                let operands: Vec<&str> = lhs.split_whitespace().collect();
                let [x, y] = operands[..] else {
                    return Err(err(ParseErrorKind::BadProductSyntax));
                };
                for n in [x, y] {
                    if !names.iter().any(|b| b == n) {
                        return Err(err(ParseErrorKind::UnknownName(n.to_string())));
                    }
                }
                let key = (x.to_string(), y.to_string());
                if let Some(&first) = seen.get(&key) {
                    return Err(err(ParseErrorKind::DuplicateProduct {
                        x: key.0,
                        y: key.1,
                        first,
                    }));
                }
                seen.insert(key, line);
                let known = |n: &str| names.iter().any(|b| b == n);
                let mut terms = parse_terms(f, rhs, &known).map_err(err)?;
                terms.sort_by_key(|(_, n)| names.iter().position(|b| b == n));
                products.push(ProductLine {
                    left: x.to_string(),
                    right: y.to_string(),
                    terms,
                    line,
                });
            }
            other => return Err(err(ParseErrorKind::UnknownDirective(other.to_string()))),
        }
    }
    let (field, _) = field.ok_or(ParseError::at(0, ParseErrorKind::MissingDeclaration("field")))?;
    let basis = basis.ok_or(ParseError::at(0, ParseErrorKind::MissingDeclaration("basis")))?;
    Ok(Document {
        field,
        basis,
        symmetric,
        products,
    })
}

pub fn parse_presentation(text: &str) -> Result<Algebra, ParseError> {
    parse_document(text)?.to_algebra()
}

/// Canonical text: basis order, products row-major, terms in basis order.
pub fn render_presentation(alg: &Algebra) -> String {
    Document::from_algebra(alg).to_string()
}

/// Parses an element expression such as `a - 1/2*b0 + 2*b2_2`.
pub fn parse_element(alg: &Algebra, text: &str) -> Result<Element, ParseErrorKind> {
    let known = |n: &str| alg.index_of(n).is_ok();
    let terms = parse_terms(alg.field(), text, &known)?;
    let refs: Vec<(&str, Scalar)> = terms.iter().map(|(c, n)| (n.as_str(), c.clone())).collect();
    Ok(alg.element(&refs)?)
}
