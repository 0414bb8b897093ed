//! SMT-LIB2 encodings of the blocking-variable formulation (QF_LIA).
//!
//! Values are scaled to integers: variable x_i becomes an integer symbol
//! `xi` with 0 <= xi <= d-1, and truth value v corresponds to v·(d-1).
//! Clause i gets a blocking symbol `bi` in {0, 1}; each negated-sum term j
//! of clause i gets an auxiliary `ti_j` defined by a single if-then-else
//! implementing max(0, (d-1) - sum). Clause i is constrained to reach the
//! scale or have bi = 1. The decision script adds Σ bi <= B, so it is
//! satisfiable iff the cost is at most B; the optimization script instead
//! asks to minimize Σ bi (OMT `minimize` syntax).

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::Write as _;
use std::process::{Command, Stdio};
use std::time::{Duration, Instant};

use thiserror::Error;

use crate::formula::{LClausalForm, Literal, Term};
use crate::truth::FiniteDomain;

#[derive(Debug, Error)]
pub enum SmtError {
    #[error("bound {bound} out of range 0..={m}")]
    BoundOutOfRange { bound: usize, m: usize },
    #[error("failed to run solver command {command:?}: {source}")]
    SolverSpawn {
        command: String,
        #[source]
        source: std::io::Error,
    },
    #[error("could not write solver input file: {0}")]
    ScratchFile(#[from] std::io::Error),
    #[error("solver command {command:?} failed with {status}: {stderr}")]
    SolverFailed { command: String, status: String, stderr: String },
    #[error("solver printed {line:?}; expected `sat` or `unsat`")]
    UnparseableOutput { line: String },
    #[error("solver exceeded the {0:?} timeout")]
    Timeout(Duration),
}

/// An emitted script plus the naming information needed to read models.
#[derive(Debug, Clone)]
pub struct SmtEncoding {
    pub text: String,
    /// Formula variable index -> integer symbol name.
    pub var_map: BTreeMap<u32, String>,
    /// The integer scale d-1; truth value v maps to v·scale.
    pub scale: u32,
}

fn literal_expr(lit: Literal, scale: u32) -> String {
    if lit.is_negated() {
        format!("(- {scale} x{})", lit.var())
    } else {
        format!("x{}", lit.var())
    }
}

fn sum_expr(parts: &[String]) -> String {
    match parts {
        [single] => single.clone(),
        many => format!("(+ {})", many.join(" ")),
    }
}

fn emit(form: &LClausalForm, dom: FiniteDomain, bound: Option<usize>) -> SmtEncoding {
    let scale = dom.scale();
    let m = form.num_clauses();
    let mut text = String::new();
    let mut var_map = BTreeMap::new();

    let _ = writeln!(text, "(set-logic QF_LIA)");
    for var in 1..=form.num_vars() {
        let name = format!("x{var}");
        let _ = writeln!(text, "(declare-fun {name} () Int)");
        let _ = writeln!(text, "(assert (>= {name} 0))");
        let _ = writeln!(text, "(assert (<= {name} {scale}))");
        var_map.insert(var, name);
    }
    for i in 1..=m {
        let _ = writeln!(text, "(declare-fun b{i} () Int)");
        let _ = writeln!(text, "(assert (>= b{i} 0))");
        let _ = writeln!(text, "(assert (<= b{i} 1))");
    }

    // Auxiliary symbols for negated sums, then the clause constraints.
    let mut clause_sums: Vec<Vec<String>> = Vec::with_capacity(m);
    for (ci, clause) in form.clauses().iter().enumerate() {
        let i = ci + 1;
        let mut term_exprs = Vec::with_capacity(clause.terms().len());
        for (tj, term) in clause.terms().iter().enumerate() {
            let j = tj + 1;
            match term {
                Term::Literal(lit) => term_exprs.push(literal_expr(*lit, scale)),
                Term::NegatedSum(lits) => {
                    let name = format!("t{i}_{j}");
                    let inner: Vec<String> =
                        lits.iter().map(|l| literal_expr(*l, scale)).collect();
                    let slack = format!("(- {scale} {})", sum_expr(&inner));
                    let _ = writeln!(text, "(declare-fun {name} () Int)");
                    let _ = writeln!(
                        text,
                        "(assert (= {name} (ite (>= {slack} 0) {slack} 0)))"
                    );
                    term_exprs.push(name);
                }
            }
        }
        clause_sums.push(term_exprs);
    }
    for (ci, term_exprs) in clause_sums.iter().enumerate() {
        let i = ci + 1;
        let reach = format!("(>= {} {scale})", sum_expr(term_exprs));
        let _ = writeln!(text, "(assert (or {reach} (= b{i} 1)))");
    }

    let blocking: Vec<String> = (1..=m).map(|i| format!("b{i}")).collect();
    match bound {
        Some(b) => {
            if m > 0 {
                let _ = writeln!(text, "(assert (<= {} {b}))", sum_expr(&blocking));
            }
        }
        None => {
            let objective = if m > 0 { sum_expr(&blocking) } else { "0".to_string() };
            let _ = writeln!(text, "(minimize {objective})");
        }
    }
    let _ = writeln!(text, "(check-sat)");

    SmtEncoding { text, var_map, scale }
}

/// QF_LIA decision script, satisfiable iff cost(form) <= bound.
pub fn emit_decision(
    form: &LClausalForm,
    dom: FiniteDomain,
    bound: usize,
) -> Result<SmtEncoding, SmtError> {
    let m = form.num_clauses();
    if bound > m {
        return Err(SmtError::BoundOutOfRange { bound, m });
    }
    Ok(emit(form, dom, Some(bound)))
}

/// Optimization script minimizing Σ bi (needs an OMT-capable consumer).
pub fn emit_optimization(form: &LClausalForm, dom: FiniteDomain) -> SmtEncoding {
    emit(form, dom, None)
}

/// Builds the argv for a command template: every `{file}` occurrence is
/// replaced; if none occurs the path is appended.
fn command_argv(template: &str, path: &str) -> Vec<String> {
    let mut argv: Vec<String> = template.split_whitespace().map(str::to_string).collect();
    let mut replaced = false;
    for arg in &mut argv {
        if arg.contains("{file}") {
            *arg = arg.replace("{file}", path);
            replaced = true;
        }
    }
    if !replaced {
        argv.push(path.to_string());
    }
    argv
}

fn wait_with_timeout(
    child: &mut std::process::Child,
    timeout: Duration,
) -> Result<std::process::ExitStatus, SmtError> {
    let start = Instant::now();
    loop {
        if let Some(status) = child.try_wait()? {
            return Ok(status);
        }
        if start.elapsed() > timeout {
            let _ = child.kill();
            let _ = child.wait();
            return Err(SmtError::Timeout(timeout));
        }
        std::thread::sleep(Duration::from_millis(2));
    }
}

/// Per-call wall-clock limit for the external solver.
const SOLVER_TIMEOUT: Duration = Duration::from_secs(300);

/// Runs `solver_cmd` on a script and reads the first result line.
fn run_solver(solver_cmd: &str, script: &str) -> Result<bool, SmtError> {
    let mut file = tempfile::Builder::new()
        .prefix("lukamax-")
        .suffix(".smt2")
        .tempfile()?;
    file.write_all(script.as_bytes())?;
    file.flush()?;
    let path = file.path().to_string_lossy().into_owned();

    let argv = command_argv(solver_cmd, &path);
    let mut command = Command::new(&argv[0]);
    command.args(&argv[1..]).stdout(Stdio::piped()).stderr(Stdio::piped());
    let mut child = command.spawn().map_err(|source| SmtError::SolverSpawn {
        command: solver_cmd.to_string(),
        source,
    })?;
    let status = wait_with_timeout(&mut child, SOLVER_TIMEOUT)?;
    let output = child.wait_with_output()?;
    let stdout = String::from_utf8_lossy(&output.stdout);
    let first = stdout.lines().find(|l| !l.trim().is_empty()).unwrap_or("").trim();
    match first {
        "sat" => Ok(true),
        "unsat" => Ok(false),
        _ if !status.success() => Err(SmtError::SolverFailed {
            command: solver_cmd.to_string(),
            status: status.to_string(),
            stderr: String::from_utf8_lossy(&output.stderr).into_owned(),
        }),
        other => Err(SmtError::UnparseableOutput { line: other.to_string() }),
    }
}

/// Computes the exact cost with an external SMT solver by binary search on
/// the decision bound; `⌈log2(m+1)⌉ + O(1)` solver calls.
///
/// The command template is split on whitespace; `{file}` is replaced by the
/// script path (appended when absent). The solver must print `sat` or
/// `unsat` as its first non-empty output line.
pub fn external_cost(
    form: &LClausalForm,
    dom: FiniteDomain,
    solver_cmd: &str,
) -> Result<usize, SmtError> {
    let m = form.num_clauses();
    if m == 0 {
        return Ok(0);
    }
    let mut lo = 0usize;
    let mut hi = m; // cost <= m always: block every clause
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        let encoding = emit_decision(form, dom, mid).expect("mid <= m");
        if run_solver(solver_cmd, &encoding.text)? {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    Ok(lo)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::{LClause, Term};

    fn contradiction() -> LClausalForm {
        LClausalForm::new(
            1,
            vec![
                LClause::new(vec![Term::Literal(Literal::positive(1).unwrap())]).unwrap(),
                LClause::new(vec![Term::Literal(Literal::negative(1).unwrap())]).unwrap(),
            ],
        )
        .unwrap()
    }

    fn dom3() -> FiniteDomain {
        FiniteDomain::new(3).unwrap()
    }

    #[test]
    fn decision_script_shape() {
        let form = contradiction();
        let enc = emit_decision(&form, dom3(), 1).unwrap();
        assert!(enc.text.starts_with("(set-logic QF_LIA)\n"));
        assert!(enc.text.contains("(declare-fun x1 () Int)"));
        assert!(enc.text.contains("(declare-fun b2 () Int)"));
        assert!(enc.text.contains("(assert (or (>= x1 2) (= b1 1)))"));
        assert!(enc.text.contains("(assert (or (>= (- 2 x1) 2) (= b2 1)))"));
        assert!(enc.text.contains("(assert (<= (+ b1 b2) 1))"));
        assert!(enc.text.trim_end().ends_with("(check-sat)"));
        assert_eq!(enc.scale, 2);
        assert_eq!(enc.var_map.get(&1).unwrap(), "x1");
    }

    #[test]
    fn negated_sums_get_auxiliaries() {
        let form = crate::reduction::reduce_max2sat(
            &crate::formats::BooleanCnf::new(1, vec![vec![1]]).unwrap(),
        )
        .unwrap()
        .phi_prime;
        let enc = emit_decision(&form, dom3(), 0).unwrap();
        assert!(enc.text.contains("(declare-fun t1_1 () Int)"));
        assert!(enc
            .text
            .contains("(assert (= t1_1 (ite (>= (- 2 (+ x1 x1)) 0) (- 2 (+ x1 x1)) 0)))"));
        assert!(enc.text.contains("(assert (or (>= (+ t1_1 x1) 2) (= b1 1)))"));
    }

    #[test]
    fn bound_is_validated() {
        let form = contradiction();
        assert!(matches!(
            emit_decision(&form, dom3(), 3).unwrap_err(),
            SmtError::BoundOutOfRange { bound: 3, m: 2 }
        ));
    }

    #[test]
    fn optimization_script_minimizes() {
        let form = contradiction();
        let enc = emit_optimization(&form, dom3());
        assert!(enc.text.contains("(minimize (+ b1 b2))"));
        assert!(!enc.text.contains("(<= (+ b1 b2)"));

        let empty = emit_optimization(&LClausalForm::empty(0), dom3());
        assert!(empty.text.contains("(minimize 0)"));
    }

    #[test]
    fn scripts_are_balanced_and_declare_before_use() {
        let form = crate::reduction::reduce_max2sat(
            &crate::formats::BooleanCnf::new(2, vec![vec![1, -2], vec![2]]).unwrap(),
        )
        .unwrap()
        .phi_prime;
        let enc = emit_decision(&form, dom3(), 2).unwrap();

        let mut depth: i64 = 0;
        for ch in enc.text.chars() {
            match ch {
                '(' => depth += 1,
                ')' => {
                    depth -= 1;
                    assert!(depth >= 0);
                }
                _ => {}
            }
        }
        assert_eq!(depth, 0);

        let mut declared: Vec<String> = Vec::new();
        for line in enc.text.lines() {
            if let Some(rest) = line.strip_prefix("(declare-fun ") {
                let name = rest.split_whitespace().next().unwrap().to_string();
                assert!(!declared.contains(&name), "duplicate declaration {name}");
                declared.push(name);
            } else {
                for token in line
                    .split(|c: char| c == '(' || c == ')' || c.is_whitespace())
                    .filter(|t| !t.is_empty())
                {
                    if token.starts_with('x') || token.starts_with('b') || token.starts_with('t') {
                        assert!(
                            declared.iter().any(|d| d == token),
                            "symbol {token} used before declaration"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn command_template_substitution() {
        assert_eq!(
            command_argv("z3 -smt2 {file}", "/tmp/a.smt2"),
            vec!["z3", "-smt2", "/tmp/a.smt2"]
        );
        assert_eq!(command_argv("cvc5", "/tmp/a.smt2"), vec!["cvc5", "/tmp/a.smt2"]);
    }

    #[test]
    fn missing_solver_reports_spawn_error() {
        let form = contradiction();
        let err = external_cost(&form, dom3(), "definitely-not-a-solver-binary").unwrap_err();
        assert!(matches!(err, SmtError::SolverSpawn { .. }));
    }
}
