//! Full tables of `P^±` over `P_{N,K}` by any of the available methods, and
//! their json/tsv/latex renderings.

use std::fmt::Write as _;
use std::str::FromStr;

use serde_json::json;

use crate::combinatorics::{PathSet, Sign};
use crate::dyck::{q_rule_i, q_rule_ii};
use crate::error::{Error, Result};
use crate::hecke::{p_minus_table, p_plus_table, HeckeModule, MinusRoute, PlusRoute};
use crate::ls_tree::ls_polynomial;
use crate::Poly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Method {
    /// Rule I strip configurations (`+` only).
    Rule1,
    /// Rule II strip configurations (`-` only).
    Rule2,
    /// Tree labellings (`+` only).
    LsTree,
    /// Inversion of the factorized `C^-` for `+`, the factorized product for `-`.
    Hecke,
    /// Bar-invariant triangular solve in the module.
    HeckeBar,
    /// The flip set `F(β)` (`-` only).
    HeckeFlip,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Rule1 => "rule1",
            Method::Rule2 => "rule2",
            Method::LsTree => "lstree",
            Method::Hecke => "hecke",
            Method::HeckeBar => "hecke-bar",
            Method::HeckeFlip => "hecke-flip",
        }
    }

    pub fn applies_to(self, sign: Sign) -> bool {
        match self {
            Method::Rule1 | Method::LsTree => sign == Sign::Plus,
            Method::Rule2 | Method::HeckeFlip => sign == Sign::Minus,
            Method::Hecke | Method::HeckeBar => true,
        }
    }

    /// Every method for `sign`, in display order.
    pub fn all_for(sign: Sign) -> Vec<Method> {
        match sign {
            Sign::Plus => vec![Method::Rule1, Method::LsTree, Method::Hecke, Method::HeckeBar],
            Sign::Minus => vec![Method::Rule2, Method::Hecke, Method::HeckeFlip, Method::HeckeBar],
        }
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "rule1" => Method::Rule1,
            "rule2" => Method::Rule2,
            "lstree" => Method::LsTree,
            "hecke" => Method::Hecke,
            "hecke-bar" => Method::HeckeBar,
            "hecke-flip" => Method::HeckeFlip,
            _ => return Err(Error::Parse(format!("unknown method {s:?}"))),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Tsv,
    Latex,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "tsv" => Ok(Format::Tsv),
            "latex" => Ok(Format::Latex),
            _ => Err(Error::Parse(format!("unknown format {s:?}"))),
        }
    }
}

/// `P_{x,y}` at row `x`, column `y`; `None` where `x ≰ y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Table {
    pub paths: PathSet,
    pub method: Method,
    pub cells: Vec<Vec<Option<Poly>>>,
}

/// `P^ε_{α,β}` by one method; zero when `α ≰ β`.
pub fn single(alpha: &crate::Path, beta: &crate::Path, sign: Sign, method: Method) -> Result<Poly> {
    if !method.applies_to(sign) {
        return Err(Error::Parse(format!("method {} does not compute P^{sign}", method.name())));
    }
    crate::combinatorics::same_shape(alpha, beta)?;
    if !crate::combinatorics::path_leq(alpha, beta, sign) {
        return Ok(Poly::zero());
    }
    match method {
        Method::Rule1 => q_rule_i(beta, alpha),
        Method::LsTree => ls_polynomial(beta, alpha),
        Method::Rule2 => q_rule_ii(alpha, beta),
        Method::Hecke => crate::hecke::parabolic_kl(alpha, beta, sign),
        Method::HeckeFlip => Ok(crate::hecke::kl_basis_minus(beta, MinusRoute::FlipSet)?.coeff(alpha)),
        Method::HeckeBar => {
            let t = HeckeModule::<i64>::new(alpha.len(), alpha.ups(), sign)?.table_bar_solve()?;
            Ok(t.get(alpha, beta).cloned().unwrap_or_default())
        }
    }
}

pub fn build(n: usize, k: usize, sign: Sign, method: Method) -> Result<Table> {
    if !method.applies_to(sign) {
        return Err(Error::Parse(format!("method {} does not compute P^{sign}", method.name())));
    }
    let paths = PathSet::new(n, k, sign)?;
    let size = paths.len();
    let dense = match method {
        Method::Hecke if sign == Sign::Plus => Some(p_plus_table::<i64>(n, k, PlusRoute::Inversion)?),
        Method::Hecke => Some(p_minus_table::<i64>(n, k, MinusRoute::Factorized)?),
        Method::HeckeFlip => Some(p_minus_table::<i64>(n, k, MinusRoute::FlipSet)?),
        Method::HeckeBar => Some(HeckeModule::<i64>::new(n, k, sign)?.table_bar_solve()?),
        _ => None,
    };
    let mut cells = vec![vec![None; size]; size];
    for (x, row) in cells.iter_mut().enumerate() {
        for (y, cell) in row.iter_mut().enumerate() {
            if !paths.leq(x, y) {
                continue;
            }
            let (a, b) = (paths.path(x), paths.path(y));
            *cell = Some(match &dense {
                Some(t) => t.entry(x, y).clone(),
                None => single(&a, &b, sign, method)?,
            });
        }
    }
    Ok(Table { paths, method, cells })
}

/// `t^{-3}(1+t^2)` style, as in hand-written tables.
pub fn latex_poly(p: &Poly) -> String {
    fn power(e: i32) -> String {
        match e {
            0 => String::new(),
            1 => "t".into(),
            2..=9 => format!("t^{e}"),
            _ => format!("t^{{{e}}}"),
        }
    }
    fn term(c: i64, e: i32, first: bool) -> String {
        let mut s = String::new();
        if c < 0 {
            s.push('-');
        } else if !first {
            s.push('+');
        }
        let mag = c.unsigned_abs();
        if mag != 1 || e == 0 {
            s.push_str(&mag.to_string());
        }
        s.push_str(&power(e));
        s
    }
    let Some(low) = p.min_exponent() else { return "0".into() };
    if p.is_monomial() {
        return term(*p.terms().next().expect("monomial").1, low, true);
    }
    let inner: String = p.terms().enumerate().map(|(i, (e, c))| term(*c, e - low, i == 0)).collect();
    if low == 0 {
        inner
    } else {
        format!("{}({inner})", power(low))
    }
}

impl Table {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let paths: Vec<String> = self.paths.paths().iter().map(|p| p.to_string()).collect();
                let cells: Vec<Vec<serde_json::Value>> = self
                    .cells
                    .iter()
                    .map(|row| row.iter().map(|c| json!(c)).collect())
                    .collect();
                let v = json!({
                    "n": self.paths.n(),
                    "k": self.paths.k(),
                    "sign": self.paths.sign(),
                    "method": self.method.name(),
                    "paths": paths,
                    "cells": cells,
                });
                format!("{}\n", serde_json::to_string_pretty(&v).expect("json"))
            }
            Format::Tsv => {
                let mut out = String::new();
                for p in self.paths.paths() {
                    write!(out, "\t{p}").unwrap();
                }
                out.push('\n');
                for (x, row) in self.cells.iter().enumerate() {
                    out.push_str(&self.paths.path(x).to_string());
                    for c in row {
                        out.push('\t');
                        if let Some(c) = c {
                            out.push_str(&c.to_string());
                        }
                    }
                    out.push('\n');
                }
                out
            }
            Format::Latex => {
                let tex_path = |p: &crate::Path| {
                    let steps: Vec<String> = p.to_string().chars().map(String::from).collect();
                    format!("\\path{{{}}}", steps.join(","))
                };
                let size = self.paths.len();
                let mut out = format!("\\begin{{tabular}}{{c|{}}}\n", "c|".repeat(size));
                for p in self.paths.paths() {
                    write!(out, "&{}", tex_path(p)).unwrap();
                }
                out.push_str("\\\\\n\\hline\n");
                for (x, row) in self.cells.iter().enumerate() {
                    write!(out, "\\vc{{{}}}", tex_path(&self.paths.path(x))).unwrap();
                    for c in row {
                        out.push('&');
                        if let Some(c) = c {
                            write!(out, "${}$", latex_poly(c)).unwrap();
                        }
                    }
                    out.push_str("\\\\\n\\hline\n");
                }
                out.push_str("\\end{tabular}\n");
                out
            }
        }
    }
}
