//! Line-oriented `.splice` text format.
//!
//! ```text
//! # trefoil
//! vertex c
//! arrow a1 +1
//! vertex l2
//! vertex l3
//! edge c a1
//! edge c l2 2
//! edge c l3 3
//! ```
//!
//! `edge A B [WA [WB]]` puts `WA` at `A`'s end and `WB` at `B`'s end, both
//! defaulting to 1. `order NAME...` fixes the component order, which otherwise
//! follows arrow declaration order. Vertices may be referenced before they are
//! declared.

use std::fmt::{self, Write};

use thiserror::Error;

use super::{DiagramBuilder, SpliceDiagram, VertexKind};
use crate::laurent::Sign;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Clone, Copy)]
struct Token<'a> {
    text: &'a str,
    line: usize,
    column: usize,
}

impl Token<'_> {
    fn error(&self, message: impl fmt::Display) -> ParseError {
        ParseError {
            line: self.line,
            column: self.column,
            message: message.to_string(),
        }
    }
}

fn tokenize(line: &str, lineno: usize) -> Vec<Token<'_>> {
    let content = match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    };
    let mut tokens = Vec::new();
    let mut start: Option<usize> = None;
    for (i, ch) in content.char_indices().chain([(content.len(), ' ')]) {
        match (ch.is_whitespace(), start) {
            (true, Some(s)) => {
                tokens.push(Token {
                    text: &content[s..i],
                    line: lineno,
                    column: content[..s].chars().count() + 1,
                });
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    tokens
}

fn parse_weight(tok: &Token) -> Result<i64, ParseError> {
    tok.text
        .parse::<i64>()
        .map_err(|_| tok.error(format!("bad integer `{}`", tok.text)))
}

fn parse_sign(tok: &Token) -> Result<Sign, ParseError> {
    match tok.text {
        "+1" | "1" => Ok(Sign::Plus),
        "-1" => Ok(Sign::Minus),
        other => Err(tok.error(format!("arrowhead sign must be +1 or -1, got `{other}`"))),
    }
}

fn expect_args(head: &Token, args: &[Token], min: usize, max: usize) -> Result<(), ParseError> {
    if args.len() < min || args.len() > max {
        let want = if min == max {
            format!("{min}")
        } else if max == usize::MAX {
            format!("at least {min}")
        } else {
            format!("{min} to {max}")
        };
        return Err(head.error(format!(
            "`{}` takes {want} argument(s), got {}",
            head.text,
            args.len()
        )));
    }
    Ok(())
}

/// Parses `.splice` source. The result reflects the source structurally;
/// call [`super::validate`] to check the splice-diagram conditions.
pub fn parse(text: &str) -> Result<SpliceDiagram, ParseError> {
    let lines: Vec<Vec<Token>> = text
        .lines()
        .enumerate()
        .map(|(i, l)| tokenize(l, i + 1))
        .filter(|t| !t.is_empty())
        .collect();
    if lines.is_empty() {
        return Err(ParseError {
            line: 1,
            column: 1,
            message: "no vertices declared".into(),
        });
    }

    let mut builder = DiagramBuilder::new();
    let mut edges = Vec::new();
    let mut order: Option<(Token, Vec<Token>)> = None;

    for toks in &lines {
        let (head, args) = (toks[0], &toks[1..]);
        match head.text {
            "vertex" => {
                expect_args(&head, args, 1, 1)?;
                builder.plain(args[0].text).map_err(|e| args[0].error(e))?;
            }
            "arrow" => {
                expect_args(&head, args, 2, 2)?;
                let sign = parse_sign(&args[1])?;
                builder
                    .arrow(args[0].text, sign)
                    .map_err(|e| args[0].error(e))?;
            }
            "edge" => {
                expect_args(&head, args, 2, 4)?;
                let mut weights = [1, 1];
                for (w, tok) in weights.iter_mut().zip(&args[2..]) {
                    *w = parse_weight(tok)?;
                }
                edges.push((args[0], args[1], weights));
            }
            "order" => {
                expect_args(&head, args, 1, usize::MAX)?;
                if order.is_some() {
                    return Err(head.error("duplicate `order` directive"));
                }
                order = Some((head, args.to_vec()));
            }
            other => return Err(head.error(format!("unknown directive `{other}`"))),
        }
    }

    for (a, b, weights) in edges {
        let ia = builder.lookup(a.text).map_err(|e| a.error(e))?;
        let ib = builder.lookup(b.text).map_err(|e| b.error(e))?;
        builder
            .edge_by_id(ia, ib, weights)
            .map_err(|e| b.error(e))?;
    }
    if let Some((head, names)) = &order {
        for tok in names {
            builder.lookup(tok.text).map_err(|e| tok.error(e))?;
        }
        let names: Vec<&str> = names.iter().map(|t| t.text).collect();
        builder.order(&names).map_err(|e| head.error(e))?;
    }

    builder.build().map_err(|e| {
        let head = order.as_ref().map(|(h, _)| *h).unwrap_or(lines[0][0]);
        head.error(e)
    })
}

/// Canonical source: vertices in id order, then edges in stored order, then
/// an `order` line only when the component order differs from arrow order.
pub fn serialize(d: &SpliceDiagram) -> String {
    let mut out = String::new();
    for v in d.vertex_ids() {
        let vx = d.vertex(v);
        match vx.kind {
            VertexKind::Plain => writeln!(out, "vertex {}", vx.name),
            VertexKind::Arrowhead(s) => writeln!(out, "arrow {} {s}", vx.name),
        }
        .expect("write to string");
    }
    for e in d.edges() {
        let (a, b) = (d.name(e.ends[0]), d.name(e.ends[1]));
        match e.weights {
            [1, 1] => writeln!(out, "edge {a} {b}"),
            [w, 1] => writeln!(out, "edge {a} {b} {w}"),
            [w1, w2] => writeln!(out, "edge {a} {b} {w1} {w2}"),
        }
        .expect("write to string");
    }
    let arrows: Vec<_> = d
        .vertex_ids()
        .filter(|&v| d.vertex(v).is_arrowhead())
        .collect();
    if d.components() != arrows.as_slice() {
        let names: Vec<&str> = d.components().iter().map(|&v| d.name(v)).collect();
        writeln!(out, "order {}", names.join(" ")).expect("write to string");
    }
    out
}
