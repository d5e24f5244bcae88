//! Class expressions such as `3H-2E_p-2E_q` or `H_p + H_q + H_{p,q}`.

use num_traits::{One, Zero};
use thiserror::Error;

use crate::arith::{parse_rational, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExprError {
    #[error("empty class expression")]
    Empty,
    #[error("malformed term {0:?}")]
    Term(String),
    #[error("nonzero constant term {0:?}")]
    Constant(String),
}

/// A signed rational combination of labels. Repeated labels are kept as
/// separate terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearExpr {
    pub terms: Vec<(Rational, String)>,
}

/// Parses a whitespace-insensitive combination of labels. The Unicode minus
/// sign is accepted; a `+` or `-` directly after `^` belongs to the label
/// (`H^+`), and signs inside braces are never split on.
pub fn parse_linear_expr(input: &str) -> Result<LinearExpr, ExprError> {
    let s: String = input
        .chars()
        .filter(|c| !c.is_whitespace())
        .map(|c| if c == '\u{2212}' { '-' } else { c })
        .collect();
    if s.is_empty() {
        return Err(ExprError::Empty);
    }

    let mut raw_terms: Vec<String> = Vec::new();
    let mut current = String::new();
    let mut depth = 0i32;
    let mut prev: Option<char> = None;
    for c in s.chars() {
        match c {
            '{' => depth += 1,
            '}' => depth -= 1,
            _ => {}
        }
        let splits = (c == '+' || c == '-') && depth == 0 && prev != Some('^');
        if splits && !current.is_empty() {
            raw_terms.push(std::mem::take(&mut current));
        }
        current.push(c);
        prev = Some(c);
    }
    raw_terms.push(current);

    let mut terms = Vec::with_capacity(raw_terms.len());
    for t in raw_terms {
        if let Some(term) = parse_term(&t)? {
            terms.push(term);
        }
    }
    Ok(LinearExpr { terms })
}

fn parse_term(t: &str) -> Result<Option<(Rational, String)>, ExprError> {
    let bad = || ExprError::Term(t.to_string());
    let (negative, body) = match t.chars().next() {
        Some('-') => (true, &t[1..]),
        Some('+') => (false, &t[1..]),
        _ => (false, t),
    };
    if body.is_empty() {
        return Err(bad());
    }
    let digits_end = body
        .char_indices()
        .find(|(_, c)| !(c.is_ascii_digit() || *c == '/'))
        .map_or(body.len(), |(i, _)| i);
    let (coeff_text, rest) = body.split_at(digits_end);
    let rest = rest.strip_prefix('*').unwrap_or(rest);
    let mut coeff = if coeff_text.is_empty() {
        if rest.is_empty() {
            return Err(bad());
        }
        Rational::one()
    } else {
        parse_rational(coeff_text).map_err(|_| bad())?
    };
    if negative {
        coeff = -coeff;
    }
    if rest.is_empty() {
        if coeff.is_zero() {
            return Ok(None);
        }
        return Err(ExprError::Constant(t.to_string()));
    }
    if !rest.chars().next().is_some_and(|c| c.is_alphabetic()) {
        return Err(bad());
    }
    Ok(Some((coeff, rest.to_string())))
}
