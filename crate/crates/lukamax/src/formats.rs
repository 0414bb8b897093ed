//! Text formats: the LCF instance format and DIMACS CNF input.
//!
//! LCF is a DIMACS-style format for Ł-clausal forms. UTF-8, LF line endings,
//! comment lines start with `c`, header `p lcf <n> <m> <d>`. Each clause is
//! one line of space-separated tokens terminated by `0`: a signed nonzero
//! integer is a plain literal (negative means negated), and `-( i j ... )`
//! is a negated sum of the enclosed literals. Serialization is canonical, so
//! equal forms produce byte-identical output and `parse(serialize(f)) = f`
//! exactly, including the distinction between a negated sum of one literal
//! and a plain negated literal.

use std::fmt::Write as _;

use thiserror::Error;

use crate::formula::{LClausalForm, LClause, Literal, Term};
use crate::truth::FiniteDomain;

/// A parsed LCF file: the form, its domain, and any comment lines (without
/// the leading `c`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LcfDocument {
    pub form: LClausalForm,
    pub domain: FiniteDomain,
    pub comments: Vec<String>,
}

/// A Boolean CNF formula with signed 1-based literals, as read from DIMACS.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BooleanCnf {
    n: u32,
    clauses: Vec<Vec<i32>>,
}

impl BooleanCnf {
    pub fn new(n: u32, clauses: Vec<Vec<i32>>) -> Result<BooleanCnf, ParseError> {
        for clause in &clauses {
            for &l in clause {
                let var = l.unsigned_abs();
                if l == 0 || var > n {
                    return Err(ParseError::plain(ParseErrorKind::VariableOutOfRange {
                        var,
                        n,
                    }));
                }
            }
            if clause.is_empty() {
                return Err(ParseError::plain(ParseErrorKind::ZeroLengthClause));
            }
        }
        Ok(BooleanCnf { n, clauses })
    }

    pub fn num_vars(&self) -> u32 {
        self.n
    }

    pub fn num_clauses(&self) -> usize {
        self.clauses.len()
    }

    pub fn clauses(&self) -> &[Vec<i32>] {
        &self.clauses
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    MissingHeader,
    DuplicateHeader,
    BadHeader(String),
    BadToken(String),
    VariableOutOfRange { var: u32, n: u32 },
    ZeroLiteral,
    UnterminatedClause,
    TrailingTokens,
    EmptyGroup,
    UnclosedGroup,
    NestedGroup,
    ZeroLengthClause,
    ClauseCountMismatch { declared: usize, found: usize },
    DomainTooSmall(u32),
}

impl std::fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ParseErrorKind::MissingHeader => write!(f, "missing problem header"),
            ParseErrorKind::DuplicateHeader => write!(f, "duplicate problem header"),
            ParseErrorKind::BadHeader(s) => write!(f, "malformed header {s:?}"),
            ParseErrorKind::BadToken(s) => write!(f, "unexpected token {s:?}"),
            ParseErrorKind::VariableOutOfRange { var, n } => {
                write!(f, "variable {var} exceeds declared count {n}")
            }
            ParseErrorKind::ZeroLiteral => write!(f, "literal 0 is not allowed here"),
            ParseErrorKind::UnterminatedClause => write!(f, "clause not terminated by 0"),
            ParseErrorKind::TrailingTokens => write!(f, "tokens after clause terminator"),
            ParseErrorKind::EmptyGroup => write!(f, "negated sum group is empty"),
            ParseErrorKind::UnclosedGroup => write!(f, "negated sum group not closed"),
            ParseErrorKind::NestedGroup => write!(f, "negated sum groups cannot nest"),
            ParseErrorKind::ZeroLengthClause => write!(f, "zero-length clause"),
            ParseErrorKind::ClauseCountMismatch { declared, found } => {
                write!(f, "header declares {declared} clauses but {found} were found")
            }
            ParseErrorKind::DomainTooSmall(d) => {
                write!(f, "domain must have at least 2 levels, got {d}")
            }
        }
    }
}

/// A parse failure with 1-based line and column of the offending token.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

impl ParseError {
    fn at(line: usize, column: usize, kind: ParseErrorKind) -> ParseError {
        ParseError { line, column, kind }
    }

    fn plain(kind: ParseErrorKind) -> ParseError {
        ParseError { line: 0, column: 0, kind }
    }
}

/// A token with its 1-based starting column.
fn tokenize(line: &str) -> Vec<(&str, usize)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push((&line[s..i], s + 1));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push((&line[s..], s + 1));
    }
    out
}

fn parse_count(tok: &str) -> Option<u64> {
    tok.parse::<u64>().ok()
}

struct LiteralToken {
    var: u32,
    negated: bool,
}

fn parse_literal_token(
    tok: &str,
    n: u32,
    line: usize,
    col: usize,
) -> Result<LiteralToken, ParseError> {
    let value: i64 = tok
        .parse()
        .map_err(|_| ParseError::at(line, col, ParseErrorKind::BadToken(tok.to_string())))?;
    if value == 0 {
        return Err(ParseError::at(line, col, ParseErrorKind::ZeroLiteral));
    }
    let var = u32::try_from(value.unsigned_abs())
        .map_err(|_| ParseError::at(line, col, ParseErrorKind::BadToken(tok.to_string())))?;
    if var > n {
        return Err(ParseError::at(line, col, ParseErrorKind::VariableOutOfRange { var, n }));
    }
    Ok(LiteralToken { var, negated: value < 0 })
}

/// Parses LCF text into a form plus its domain.
pub fn parse_lcf(input: &str) -> Result<LcfDocument, ParseError> {
    let mut header: Option<(u32, usize, u32)> = None;
    let mut clauses: Vec<LClause> = Vec::new();
    let mut comments: Vec<String> = Vec::new();

    for (line_idx, raw) in input.lines().enumerate() {
        let line_no = line_idx + 1;
        let line = raw.strip_suffix('\r').unwrap_or(raw);
        if line.trim().is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix('c') {
            comments.push(rest.strip_prefix(' ').unwrap_or(rest).to_string());
            continue;
        }

        let tokens = tokenize(line);
        if tokens[0].0 == "p" {
            if header.is_some() {
                return Err(ParseError::at(line_no, tokens[0].1, ParseErrorKind::DuplicateHeader));
            }
            let fields: Option<(u64, u64, u64)> = match tokens.as_slice() {
                [(_, _), ("lcf", _), (n, _), (m, _), (d, _)] => {
                    match (parse_count(n), parse_count(m), parse_count(d)) {
                        (Some(n), Some(m), Some(d)) => Some((n, m, d)),
                        _ => None,
                    }
                }
                _ => None,
            };
            let (n, m, d) = fields.ok_or_else(|| {
                ParseError::at(line_no, tokens[0].1, ParseErrorKind::BadHeader(line.to_string()))
            })?;
            if d < 2 {
                return Err(ParseError::at(
                    line_no,
                    tokens[0].1,
                    ParseErrorKind::DomainTooSmall(d as u32),
                ));
            }
            header = Some((n as u32, m as usize, d as u32));
            continue;
        }

        let (n, declared_m, _) = header
            .ok_or_else(|| ParseError::at(line_no, tokens[0].1, ParseErrorKind::MissingHeader))?;

        let mut terms: Vec<Term> = Vec::new();
        let mut group: Option<Vec<Literal>> = None;
        let mut terminated = false;
        for &(tok, col) in &tokens {
            if terminated {
                return Err(ParseError::at(line_no, col, ParseErrorKind::TrailingTokens));
            }
            match tok {
                "-(" => {
                    if group.is_some() {
                        return Err(ParseError::at(line_no, col, ParseErrorKind::NestedGroup));
                    }
                    group = Some(Vec::new());
                }
                ")" => match group.take() {
                    Some(lits) if lits.is_empty() => {
                        return Err(ParseError::at(line_no, col, ParseErrorKind::EmptyGroup));
                    }
                    Some(lits) => {
                        terms.push(Term::negated_sum(lits).expect("group checked nonempty"));
                    }
                    None => {
                        return Err(ParseError::at(
                            line_no,
                            col,
                            ParseErrorKind::BadToken(")".to_string()),
                        ));
                    }
                },
                "0" if group.is_none() => terminated = true,
                _ => {
                    let lit = parse_literal_token(tok, n, line_no, col)?;
                    let literal = Literal::new(lit.var, lit.negated).expect("var checked nonzero");
                    match group.as_mut() {
                        Some(lits) => lits.push(literal),
                        None => terms.push(Term::Literal(literal)),
                    }
                }
            }
        }
        if group.is_some() {
            return Err(ParseError::at(line_no, line.len() + 1, ParseErrorKind::UnclosedGroup));
        }
        if !terminated {
            return Err(ParseError::at(
                line_no,
                line.len() + 1,
                ParseErrorKind::UnterminatedClause,
            ));
        }
        if terms.is_empty() {
            return Err(ParseError::at(line_no, tokens[0].1, ParseErrorKind::ZeroLengthClause));
        }
        if clauses.len() == declared_m {
            return Err(ParseError::at(
                line_no,
                tokens[0].1,
                ParseErrorKind::ClauseCountMismatch { declared: declared_m, found: clauses.len() + 1 },
            ));
        }
        clauses.push(LClause::new(terms).expect("terms checked nonempty"));
    }

    let (n, m, d) = header.ok_or_else(|| ParseError::plain(ParseErrorKind::MissingHeader))?;
    if clauses.len() != m {
        return Err(ParseError::plain(ParseErrorKind::ClauseCountMismatch {
            declared: m,
            found: clauses.len(),
        }));
    }
    let form = LClausalForm::new(n, clauses).expect("literal bounds checked during parse");
    let domain = FiniteDomain::new(d).expect("domain size checked during parse");
    Ok(LcfDocument { form, domain, comments })
}

fn write_literal(out: &mut String, lit: Literal) {
    if lit.is_negated() {
        let _ = write!(out, "-{}", lit.var());
    } else {
        let _ = write!(out, "{}", lit.var());
    }
}

/// Serializes a form to canonical LCF text, with optional leading comments.
pub fn serialize_lcf_with_comments(
    form: &LClausalForm,
    domain: FiniteDomain,
    comments: &[String],
) -> String {
    let mut out = String::new();
    for comment in comments {
        let _ = writeln!(out, "c {comment}");
    }
    let _ = writeln!(out, "p lcf {} {} {}", form.num_vars(), form.num_clauses(), domain.size());
    for clause in form.clauses() {
        for term in clause.terms() {
            match term {
                Term::Literal(lit) => write_literal(&mut out, *lit),
                Term::NegatedSum(lits) => {
                    out.push_str("-(");
                    for lit in lits {
                        out.push(' ');
                        write_literal(&mut out, *lit);
                    }
                    out.push_str(" )");
                }
            }
            out.push(' ');
        }
        out.push_str("0\n");
    }
    out
}

/// Serializes a form to canonical LCF text.
pub fn serialize_lcf(form: &LClausalForm, domain: FiniteDomain) -> String {
    serialize_lcf_with_comments(form, domain, &[])
}

/// Parses DIMACS CNF text. Clauses are 0-terminated and may span lines.
pub fn parse_dimacs(input: &str) -> Result<BooleanCnf, ParseError> {
    let mut header: Option<(u32, usize)> = None;
    let mut clauses: Vec<Vec<i32>> = Vec::new();
    let mut current: Vec<i32> = Vec::new();
    let mut open_clause_at: Option<(usize, usize)> = None;

    for (line_idx, raw) in input.lines().enumerate() {
        let line_no = line_idx + 1;
        let line = raw.strip_suffix('\r').unwrap_or(raw);
        if line.trim().is_empty() || line.starts_with('c') {
            continue;
        }
        let tokens = tokenize(line);
        if tokens[0].0 == "p" {
            if header.is_some() {
                return Err(ParseError::at(line_no, tokens[0].1, ParseErrorKind::DuplicateHeader));
            }
            let fields: Option<(u64, u64)> = match tokens.as_slice() {
                [(_, _), ("cnf", _), (n, _), (m, _)] => match (parse_count(n), parse_count(m)) {
                    (Some(n), Some(m)) => Some((n, m)),
                    _ => None,
                },
                _ => None,
            };
            let (n, m) = fields.ok_or_else(|| {
                ParseError::at(line_no, tokens[0].1, ParseErrorKind::BadHeader(line.to_string()))
            })?;
            if n > i32::MAX as u64 {
                return Err(ParseError::at(
                    line_no,
                    tokens[0].1,
                    ParseErrorKind::BadHeader(line.to_string()),
                ));
            }
            header = Some((n as u32, m as usize));
            continue;
        }

        let (n, declared_m) = header
            .ok_or_else(|| ParseError::at(line_no, tokens[0].1, ParseErrorKind::MissingHeader))?;
        for &(tok, col) in &tokens {
            if tok == "0" || tok == "-0" {
                if current.is_empty() {
                    return Err(ParseError::at(line_no, col, ParseErrorKind::ZeroLengthClause));
                }
                if clauses.len() == declared_m {
                    return Err(ParseError::at(
                        line_no,
                        col,
                        ParseErrorKind::ClauseCountMismatch {
                            declared: declared_m,
                            found: clauses.len() + 1,
                        },
                    ));
                }
                clauses.push(std::mem::take(&mut current));
                open_clause_at = None;
            } else {
                let lit = parse_literal_token(tok, n, line_no, col)?;
                if open_clause_at.is_none() {
                    open_clause_at = Some((line_no, col));
                }
                current.push(if lit.negated { -(lit.var as i32) } else { lit.var as i32 });
            }
        }
    }

    if let Some((line, col)) = open_clause_at {
        return Err(ParseError::at(line, col, ParseErrorKind::UnterminatedClause));
    }
    let (n, m) = header.ok_or_else(|| ParseError::plain(ParseErrorKind::MissingHeader))?;
    if clauses.len() != m {
        return Err(ParseError::plain(ParseErrorKind::ClauseCountMismatch {
            declared: m,
            found: clauses.len(),
        }));
    }
    BooleanCnf::new(n, clauses)
}
