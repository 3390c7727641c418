//! The line-oriented algebra description format.
//!
//! ```text
//! # Λ_q at q = 1
//! field Q
//! vertex 1
//! vertex 2
//! arrow a 1 1
//! arrow b 1 1
//! arrow c 1 2
//! order a > b > c
//! param q = 1
//! relation 1*a.a
//! relation 1*b.b
//! relation 1*a.b - q*b.a
//! relation 1*a.c
//! ```

use std::collections::BTreeMap;
use std::fmt;

use koszul_core::algebra::{AlgebraError, ArrowId, Path, PathVector, QuadraticPresentation, Quiver, RewriteSystem};
use koszul_core::exactlinalg::{Field, Scalar};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}, column {column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    #[error("unknown key {0:?}")]
    UnknownKey(String),
    #[error("expected {0}")]
    Expected(&'static str),
    #[error("field declared twice")]
    DuplicateField,
    #[error("order declared twice")]
    DuplicateOrder,
    #[error("parameter {0:?} declared twice")]
    DuplicateParameter(String),
    #[error("no field declaration")]
    MissingField,
    #[error("unknown field {0:?}; use Q or F<p> with p an odd prime")]
    BadField(String),
    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("unknown arrow {0:?}")]
    UnknownArrow(String),
    #[error("unknown parameter {0:?}")]
    UnknownParameter(String),
    #[error("bad literal {0:?}")]
    BadLiteral(String),
    #[error("path {0:?} does not compose")]
    NotComposable(String),
    #[error(transparent)]
    Algebra(AlgebraError),
}

/// A source position, 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Span {
    pub line: usize,
    pub column: usize,
}

impl Span {
    fn error(self, kind: ParseErrorKind) -> ParseError {
        ParseError {
            line: self.line,
            column: self.column,
            kind,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArrowDecl {
    pub name: String,
    pub from: String,
    pub to: String,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Coefficient {
    Literal(String),
    Param(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub negative: bool,
    pub coefficient: Coefficient,
    pub arrows: Vec<String>,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub terms: Vec<Term>,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Param {
    pub name: String,
    pub literal: String,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraSpecFile {
    pub field: Field,
    pub vertices: Vec<(String, Span)>,
    pub arrows: Vec<ArrowDecl>,
    /// Arrows from greatest to smallest.
    pub order: Option<(Vec<String>, Span)>,
    pub params: Vec<Param>,
    pub relations: Vec<Relation>,
}

fn is_name(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_alphanumeric() || c == '_')
}

fn is_literal(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_digit() || c == '/')
}

pub fn parse_field(text: &str) -> Option<Field> {
    match text {
        "Q" => Some(Field::Rationals),
        _ => text.strip_prefix('F')?.parse().ok().and_then(|p| Field::prime(p).ok()),
    }
}

/// Whitespace-separated tokens with their 1-based columns.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in line.char_indices() {
        match (c.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push((s, &line[s..i]));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s, &line[s..]));
    }
    out.into_iter().map(|(s, t)| (line[..s].chars().count() + 1, t)).collect()
}

fn parse_terms(body: &str, line: usize, offset: usize) -> Result<Vec<Term>, ParseError> {
    let at = |byte: usize| Span {
        line,
        column: offset + body[..byte].chars().count(),
    };
    let mut pieces = Vec::new();
    let mut negative = false;
    let mut start = 0;
    for (i, c) in body.char_indices() {
        if c == '+' || c == '-' {
            pieces.push((negative, start, i));
            negative = c == '-';
            start = i + 1;
        }
    }
    pieces.push((negative, start, body.len()));
    let mut terms = Vec::new();
    for (k, (negative, s, e)) in pieces.into_iter().enumerate() {
        let raw = &body[s..e];
        let lead = raw.len() - raw.trim_start().len();
        let text = raw.trim();
        let span = at(s + lead);
        if text.is_empty() {
            // A leading sign leaves an empty first piece.
            if k == 0 {
                continue;
            }
            return Err(span.error(ParseErrorKind::Expected("a term after the sign")));
        }
        let (coefficient, word) = match text.split_once('*') {
            Some((c, w)) => {
                let c = c.trim();
                let coefficient = if is_literal(c) {
                    Coefficient::Literal(c.to_string())
                } else if is_name(c) {
                    Coefficient::Param(c.to_string())
                } else {
                    return Err(span.error(ParseErrorKind::BadLiteral(c.to_string())));
                };
                (coefficient, w.trim())
            }
            None => (Coefficient::Literal("1".into()), text),
        };
        let arrows: Vec<String> = word.split('.').map(|a| a.trim().to_string()).collect();
        if arrows.iter().any(|a| !is_name(a)) {
            return Err(span.error(ParseErrorKind::Expected("a dot-separated arrow list")));
        }
        terms.push(Term {
            negative,
            coefficient,
            arrows,
            span,
        });
    }
    if terms.is_empty() {
        return Err(at(0).error(ParseErrorKind::Expected("at least one term")));
    }
    Ok(terms)
}

impl AlgebraSpecFile {
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut field = None;
        let mut vertices = Vec::new();
        let mut arrows = Vec::new();
        let mut order = None;
        let mut params: Vec<Param> = Vec::new();
        let mut relations = Vec::new();
        for (index, raw) in text.lines().enumerate() {
            let line = index + 1;
            let content = raw.split('#').next().unwrap_or("");
            let toks = tokens(content);
            let Some(&(column, key)) = toks.first() else {
                continue;
            };
            let span = Span { line, column };
            let args = &toks[1..];
            let arg_span = |k: usize| args.get(k).map_or(span, |&(c, _)| Span { line, column: c });
            match key {
                "field" => {
                    if field.is_some() {
                        return Err(span.error(ParseErrorKind::DuplicateField));
                    }
                    let [(_, name)] = args else {
                        return Err(arg_span(0).error(ParseErrorKind::Expected("`field Q` or `field F<p>`")));
                    };
                    field = Some(parse_field(name).ok_or_else(|| arg_span(0).error(ParseErrorKind::BadField(name.to_string())))?);
                }
                "vertex" => {
                    let [(_, name)] = args else {
                        return Err(arg_span(0).error(ParseErrorKind::Expected("`vertex <name>`")));
                    };
                    if !is_name(name) {
                        return Err(arg_span(0).error(ParseErrorKind::Expected("a vertex name")));
                    }
                    vertices.push((name.to_string(), arg_span(0)));
                }
                "arrow" => {
                    let [(_, name), (_, from), (_, to)] = args else {
                        return Err(arg_span(0).error(ParseErrorKind::Expected("`arrow <name> <from> <to>`")));
                    };
                    if !is_name(name) {
                        return Err(arg_span(0).error(ParseErrorKind::Expected("an arrow name")));
                    }
                    arrows.push(ArrowDecl {
                        name: name.to_string(),
                        from: from.to_string(),
                        to: to.to_string(),
                        span: arg_span(0),
                    });
                }
                "order" => {
                    if order.is_some() {
                        return Err(span.error(ParseErrorKind::DuplicateOrder));
                    }
                    let mut names = Vec::new();
                    for (k, &(_, tok)) in args.iter().enumerate() {
                        let expect_name = k % 2 == 0;
                        if expect_name && is_name(tok) {
                            names.push(tok.to_string());
                        } else if expect_name || tok != ">" {
                            let what = if expect_name { "an arrow name" } else { "`>`" };
                            return Err(arg_span(k).error(ParseErrorKind::Expected(what)));
                        }
                    }
                    if names.is_empty() || args.len().is_multiple_of(2) {
                        return Err(arg_span(args.len()).error(ParseErrorKind::Expected("`order <a> > <b> > ...`")));
                    }
                    order = Some((names, span));
                }
                "param" => {
                    let [(_, name), (_, eq), (_, literal)] = args else {
                        return Err(arg_span(0).error(ParseErrorKind::Expected("`param <name> = <literal>`")));
                    };
                    if !is_name(name) || *eq != "=" {
                        return Err(arg_span(0).error(ParseErrorKind::Expected("`param <name> = <literal>`")));
                    }
                    if params.iter().any(|p| p.name == *name) {
                        return Err(arg_span(0).error(ParseErrorKind::DuplicateParameter(name.to_string())));
                    }
                    params.push(Param {
                        name: name.to_string(),
                        literal: literal.to_string(),
                        span: arg_span(2),
                    });
                }
                "relation" => {
                    let Some(&(body_column, _)) = args.first() else {
                        return Err(span.error(ParseErrorKind::Expected("`relation <terms>`")));
                    };
                    let start = content.char_indices().nth(body_column - 1).map_or(content.len(), |(b, _)| b);
                    relations.push(Relation {
                        terms: parse_terms(content[start..].trim_end(), line, body_column)?,
                        span,
                    });
                }
                other => return Err(span.error(ParseErrorKind::UnknownKey(other.to_string()))),
            }
        }
        let field = field.ok_or(ParseError {
            line: 1,
            column: 1,
            kind: ParseErrorKind::MissingField,
        })?;
        Ok(AlgebraSpecFile {
            field,
            vertices,
            arrows,
            order,
            params,
            relations,
        })
    }

    /// The file describing `presentation`, with every coefficient written as a literal.
    pub fn from_presentation(presentation: &QuadraticPresentation) -> Self {
        let quiver = presentation.quiver();
        let vertices = quiver.vertices().map(|v| (quiver.vertex_name(v).to_string(), Span::default())).collect();
        let arrows = quiver
            .arrows()
            .map(|a| {
                let (o, t) = quiver.endpoints(a);
                ArrowDecl {
                    name: quiver.arrow_name(a).to_string(),
                    from: quiver.vertex_name(o).to_string(),
                    to: quiver.vertex_name(t).to_string(),
                    span: Span::default(),
                }
            })
            .collect();
        let order = presentation.arrow_order().iter().map(|&a| quiver.arrow_name(a).to_string()).collect();
        let relations = presentation
            .relations()
            .iter()
            .map(|r| Relation {
                terms: r
                    .terms()
                    .map(|(path, c)| {
                        let literal = c.to_string();
                        let (negative, literal) = match literal.strip_prefix('-') {
                            Some(rest) => (true, rest.to_string()),
                            None => (false, literal),
                        };
                        Term {
                            negative,
                            coefficient: Coefficient::Literal(literal),
                            arrows: path.arrows().map(|a| quiver.arrow_name(a).to_string()).collect(),
                            span: Span::default(),
                        }
                    })
                    .collect(),
                span: Span::default(),
            })
            .collect();
        AlgebraSpecFile {
            field: presentation.field(),
            vertices,
            arrows,
            order: Some((order, Span::default())),
            params: Vec::new(),
            relations,
        }
    }

    /// The presentation over `field` (default: the declared one), with `overrides` taking
    /// precedence over `param` lines.
    pub fn to_presentation(
        &self,
        field: Option<Field>,
        overrides: &BTreeMap<String, Scalar>,
    ) -> Result<QuadraticPresentation, ParseError> {
        let field = field.unwrap_or(self.field);
        let mut quiver = Quiver::new();
        for (name, span) in &self.vertices {
            quiver.add_vertex(name).map_err(|e| span.error(ParseErrorKind::Algebra(e)))?;
        }
        for arrow in &self.arrows {
            let vertex = |name: &str| {
                quiver
                    .vertex_by_name(name)
                    .ok_or_else(|| arrow.span.error(ParseErrorKind::UnknownVertex(name.to_string())))
            };
            let (o, t) = (vertex(&arrow.from)?, vertex(&arrow.to)?);
            quiver.add_arrow(&arrow.name, o, t).map_err(|e| arrow.span.error(ParseErrorKind::Algebra(e)))?;
        }
        let mut params = BTreeMap::new();
        for p in &self.params {
            let value = field
                .parse(&p.literal)
                .map_err(|_| p.span.error(ParseErrorKind::BadLiteral(p.literal.clone())))?;
            params.insert(p.name.clone(), value);
        }
        params.extend(overrides.iter().map(|(k, v)| (k.clone(), v.clone())));
        let mut relations = Vec::new();
        for relation in &self.relations {
            let mut vector = PathVector::zero();
            for term in &relation.terms {
                let mut c = match &term.coefficient {
                    Coefficient::Literal(l) => field
                        .parse(l)
                        .map_err(|_| term.span.error(ParseErrorKind::BadLiteral(l.clone())))?,
                    Coefficient::Param(name) => params
                        .get(name)
                        .cloned()
                        .ok_or_else(|| term.span.error(ParseErrorKind::UnknownParameter(name.clone())))?,
                };
                if term.negative {
                    c = -c;
                }
                let ids = term
                    .arrows
                    .iter()
                    .map(|a| {
                        quiver
                            .arrow_by_name(a)
                            .ok_or_else(|| term.span.error(ParseErrorKind::UnknownArrow(a.clone())))
                    })
                    .collect::<Result<Vec<ArrowId>, _>>()?;
                let path = Path::from_arrows(&quiver, &ids)
                    .ok_or_else(|| term.span.error(ParseErrorKind::NotComposable(term.arrows.join("."))))?;
                vector.add_term(path, c);
            }
            relations.push(vector);
        }
        let order = match &self.order {
            None => None,
            Some((names, span)) => Some(
                names
                    .iter()
                    .map(|a| {
                        quiver
                            .arrow_by_name(a)
                            .ok_or_else(|| span.error(ParseErrorKind::UnknownArrow(a.clone())))
                    })
                    .collect::<Result<Vec<_>, _>>()?,
            ),
        };
        let first = Span { line: 1, column: 1 };
        let order_span = self.order.as_ref().map_or(first, |(_, s)| *s);
        QuadraticPresentation::new(field, quiver, relations, order).map_err(|e| {
            let span = match &e {
                AlgebraError::RelationField { index, .. } => self.relations[*index].span,
                _ => order_span,
            };
            span.error(ParseErrorKind::Algebra(e))
        })
    }

    /// Builds the rewriting system; relation-level failures point at the offending line.
    pub fn rewrite_system(
        &self,
        field: Option<Field>,
        overrides: &BTreeMap<String, Scalar>,
    ) -> Result<RewriteSystem, LoadError> {
        let presentation = self.to_presentation(field, overrides)?;
        RewriteSystem::build(&presentation).map_err(|e| {
            let index = match &e {
                AlgebraError::NonQuadraticRelation { index }
                | AlgebraError::NonUniformRelation { index }
                | AlgebraError::InterreductionFailure { index } => Some(*index),
                _ => None,
            };
            match index.and_then(|i| self.relations.get(i)) {
                Some(relation) => LoadError::Parse(relation.span.error(ParseErrorKind::Algebra(e))),
                None => LoadError::Algebra(e),
            }
        })
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LoadError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Algebra(AlgebraError),
}

impl fmt::Display for AlgebraSpecFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "field {}", self.field)?;
        for (v, _) in &self.vertices {
            writeln!(f, "vertex {v}")?;
        }
        for a in &self.arrows {
            writeln!(f, "arrow {} {} {}", a.name, a.from, a.to)?;
        }
        if let Some((names, _)) = &self.order {
            writeln!(f, "order {}", names.join(" > "))?;
        }
        for p in &self.params {
            writeln!(f, "param {} = {}", p.name, p.literal)?;
        }
        for r in &self.relations {
            write!(f, "relation")?;
            for (k, t) in r.terms.iter().enumerate() {
                let sign = match (k, t.negative) {
                    (0, false) => " ",
                    (0, true) => " -",
                    (_, false) => " + ",
                    (_, true) => " - ",
                };
                let c = match &t.coefficient {
                    Coefficient::Literal(l) | Coefficient::Param(l) => l,
                };
                write!(f, "{sign}{c}*{}", t.arrows.join("."))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
