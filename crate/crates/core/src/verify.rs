//! Exhaustive identity checks over `P_{N,K}` and `S_N`, with timings.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::combinatorics::{all_paths, PathSet, Sign};
use crate::dyck::{all_partitions, q_rule_i, verify_inversion, Rule};
use crate::error::{Error, Result};
use crate::hecke::{p_minus_table, p_plus_table, HeckeModule, KlTable, MinusRoute, PlusRoute};
use crate::linkage::{expand_monomial, substitute_c_basis};
use crate::ls_tree::{build_tree, enumerate_labellings, labelling_to_config};
use crate::sn_oracle::{verify_full_duality, verify_parabolic_bridge, verify_projection, MAX_VERIFY_N};
use crate::table::{build, Method};
use crate::{ModElem, Poly};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Duality,
    Inversion,
    CrossMethod,
    Bridge,
    FullDuality,
    All,
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "duality" => Suite::Duality,
            "inversion" => Suite::Inversion,
            "crossmethod" => Suite::CrossMethod,
            "bridge" => Suite::Bridge,
            "fullduality" => Suite::FullDuality,
            "all" => Suite::All,
            _ => return Err(Error::Parse(format!("unknown suite {s:?}"))),
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(serialize_with = "as_millis")]
    pub elapsed: Duration,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

fn as_millis<S: serde::Serializer>(d: &Duration, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_f64(d.as_secs_f64() * 1e3)
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed { "pass" } else { "FAIL" };
        write!(f, "{verdict} {} ({:.1} ms)", self.name, self.elapsed.as_secs_f64() * 1e3)?;
        if let Some(e) = &self.error {
            write!(f, ": {e}")?;
        }
        Ok(())
    }
}

/// Runs `f` and records the outcome; an error counts as a failure.
pub fn timed(name: impl Into<String>, f: impl FnOnce() -> Result<bool>) -> Check {
    let start = Instant::now();
    let outcome = f();
    let elapsed = start.elapsed();
    let (passed, error) = match outcome {
        Ok(b) => (b, None),
        Err(e) => (false, Some(e.to_string())),
    };
    Check { name: name.into(), passed, elapsed, error }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// `Σ_α P^-_{α,β}(-t^{-1}) P^+_{α,γ}(t^{-1}) = δ_{β,γ}`, with `P^+` from the
/// bar-invariant solve so that the identity is not built in.
pub fn duality(n: usize, k: usize) -> Result<bool> {
    let minus = p_minus_table::<i64>(n, k, MinusRoute::Factorized)?;
    let plus = HeckeModule::<i64>::new(n, k, Sign::Plus)?.table_bar_solve()?;
    duality_of(&minus, &plus)
}

pub fn duality_of(minus: &KlTable<i64>, plus: &KlTable<i64>) -> Result<bool> {
    let paths = all_paths(minus.paths().n(), minus.paths().k())?;
    let zero = Poly::zero();
    let cell = |t: &KlTable<i64>, a, b| t.get(a, b).unwrap_or(&zero).clone();
    for beta in &paths {
        for gamma in &paths {
            let mut sum = Poly::zero();
            for alpha in &paths {
                let m = cell(minus, alpha, beta);
                if m.is_zero() {
                    continue;
                }
                sum.add_product(&m.negate_variable()?, &cell(plus, alpha, gamma))?;
            }
            let ok = if beta == gamma { sum.is_one() } else { sum.is_zero() };
            if !ok {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Every method agrees cell-for-cell with the others for both signs.
pub fn cross_method(n: usize, k: usize) -> Result<bool> {
    for sign in [Sign::Plus, Sign::Minus] {
        let mut tables = Method::all_for(sign).into_iter().map(|m| build(n, k, sign, m));
        let first = tables.next().expect("methods")?;
        for t in tables {
            if t?.cells != first.cells {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `bar(C^±_β) = C^±_β` for every `β`.
pub fn bar_invariance(n: usize, k: usize) -> Result<bool> {
    for sign in [Sign::Plus, Sign::Minus] {
        let module = HeckeModule::<i64>::new(n, k, sign)?;
        let table = match sign {
            Sign::Plus => p_plus_table::<i64>(n, k, PlusRoute::Inversion)?,
            Sign::Minus => p_minus_table::<i64>(n, k, MinusRoute::Factorized)?,
        };
        for beta in module.paths().paths() {
            let c = table.column(beta)?;
            if module.bar(&c)? != c {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `boxes = strips(config(ν)) + 2Σ(ν)` for every labelling of every
/// comparable pair, and the configurations are distinct.
pub fn weight_identity(n: usize, k: usize) -> Result<bool> {
    let paths = all_paths(n, k)?;
    for lower in &paths {
        for upper in paths.iter().filter(|u| lower.is_below(u)) {
            let tree = build_tree(lower, upper)?;
            let mut seen = std::collections::HashSet::new();
            for nu in enumerate_labellings(&tree) {
                let c = labelling_to_config(lower, upper, &nu)?;
                if c.box_count() != c.strip_count() + 2 * nu.total() || !c.satisfies(Rule::I) {
                    return Ok(false);
                }
                if !seen.insert(c) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// The linkage expansion of `m_β` against `Q^{II,+}_{α,β}(-t^{-1})`, which
/// is `P^-_{β,α}(-t^{-1})`, and the round trip through the `C^+` expansions,
/// for `K = N/2`.
pub fn linkage_expansion(n: usize) -> Result<bool> {
    if !n.is_multiple_of(2) {
        return Err(Error::ShapeMismatch(format!("N = {n} is odd")));
    }
    let k = n / 2;
    let plus = p_plus_table::<i64>(n, k, PlusRoute::Inversion)?;
    let minus = p_minus_table::<i64>(n, k, MinusRoute::Factorized)?;
    let zero = Poly::zero();
    for beta in all_paths(n, k)? {
        let e: ModElem = expand_monomial(&beta)?;
        for alpha in all_paths(n, k)? {
            if e.coeff(&alpha) != minus.get(&beta, &alpha).unwrap_or(&zero).negate_variable()? {
                return Ok(false);
            }
        }
        if substitute_c_basis(&e, &plus)? != ModElem::basis(beta, Sign::Plus) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Unpruned partitions filtered by Rule I give `q_rule_i` on every pair.
pub fn brute_force_rule_i(n: usize, k: usize) -> Result<bool> {
    let paths = all_paths(n, k)?;
    for lower in &paths {
        for upper in paths.iter().filter(|u| lower.is_below(u)) {
            let mut p = Poly::zero();
            for c in all_partitions(lower, upper)? {
                if crate::dyck::satisfies_rule_i(&c) {
                    p.add_term(-(c.strip_count() as i32), &1)?;
                }
            }
            if p != q_rule_i(lower, upper)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn ks(n: usize, k: Option<usize>) -> Vec<usize> {
    match k {
        Some(k) => vec![k],
        None => (0..=n).collect(),
    }
}

/// One suite at `N`, for a single `K` or for every `K`.
pub fn run(suite: Suite, n: usize, k: Option<usize>) -> Result<Report> {
    if let Some(k) = k {
        if k > n {
            return Err(Error::ShapeMismatch(format!("K = {k} exceeds N = {n}")));
        }
    }
    let mut report = Report::default();
    let per_k = |name: &str, f: fn(usize, usize) -> Result<bool>, report: &mut Report| {
        for k in ks(n, k) {
            report.checks.push(timed(format!("{name} N={n} K={k}"), || f(n, k)));
        }
    };
    let oracle_sized = || -> Result<()> {
        if n > MAX_VERIFY_N {
            return Err(Error::SizeLimit(format!("the S_N oracle runs for N <= {MAX_VERIFY_N}")));
        }
        Ok(())
    };
    match suite {
        Suite::Duality => per_k("duality", duality, &mut report),
        Suite::Inversion => per_k("inversion", verify_inversion, &mut report),
        Suite::CrossMethod => per_k("crossmethod", cross_method, &mut report),
        Suite::Bridge => {
            oracle_sized()?;
            per_k("bridge", verify_parabolic_bridge, &mut report);
            per_k("projection", verify_projection, &mut report);
        }
        Suite::FullDuality => {
            oracle_sized()?;
            report.checks.push(timed(format!("fullduality N={n}"), || verify_full_duality(n)));
        }
        Suite::All => {
            for s in [Suite::Duality, Suite::Inversion, Suite::CrossMethod] {
                report.checks.extend(run(s, n, k)?.checks);
            }
            per_k("bar-invariance", bar_invariance, &mut report);
            if n <= MAX_VERIFY_N {
                for s in [Suite::Bridge, Suite::FullDuality] {
                    report.checks.extend(run(s, n, k)?.checks);
                }
            }
        }
    }
    Ok(report)
}

/// Confirms that `paths` is ordered as a linear extension of its poset.
pub fn is_linear_extension(paths: &PathSet) -> bool {
    (0..paths.len()).all(|y| (0..paths.len()).all(|x| !paths.leq(x, y) || x <= y))
}
