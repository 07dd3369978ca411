//! Linkages of a binary string (convention `+`), r-flips, the set `L(β)`
//! and the expansion of `m_β` in the basis `C^+`.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::coeff::Coeff;
use crate::combinatorics::{BinaryString, Path, Sign};
use crate::error::{Error, Result};
use crate::hecke::{KlTable, ModuleElement};
use crate::laurent::LaurentPoly;

/// Noncrossing pairs `(i, j)` with `β_i = 1` and `β_j = 2`. A pair is
/// ordered when `i < j` and reversed when `i > j`. When `2K != N` the
/// `|2K - N|` surplus letters stay unpaired and are enclosed by no pair.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Linkage {
    pub pairs: Vec<(usize, usize)>,
    pub unpaired: Vec<usize>,
}

impl Linkage {
    pub fn reversed(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.pairs.iter().copied().filter(|&(i, j)| i > j)
    }

    fn span(p: (usize, usize)) -> (usize, usize) {
        (p.0.min(p.1), p.0.max(p.1))
    }

    fn inside(inner: (usize, usize), outer: (usize, usize)) -> bool {
        let (a, b) = Self::span(outer);
        let (c, d) = Self::span(inner);
        a < c && d < b
    }
}

pub fn all_linkages(beta: &BinaryString) -> Vec<Linkage> {
    fn rec(
        s: &[u8],
        pos: usize,
        stack: &mut Vec<usize>,
        pairs: &mut Vec<(usize, usize)>,
        unpaired: &mut Vec<usize>,
        surplus: usize,
        out: &mut Vec<Linkage>,
    ) {
        if pos == s.len() {
            if stack.is_empty() && unpaired.len() == surplus {
                let mut pairs = pairs.clone();
                pairs.sort();
                out.push(Linkage { pairs, unpaired: unpaired.clone() });
            }
            return;
        }
        let p = pos + 1;
        if stack.is_empty() && unpaired.len() < surplus {
            unpaired.push(p);
            rec(s, pos + 1, stack, pairs, unpaired, surplus, out);
            unpaired.pop();
        }
        if let Some(&q) = stack.last() {
            if s[q - 1] != s[pos] {
                stack.pop();
                pairs.push(if s[pos] == 2 { (q, p) } else { (p, q) });
                rec(s, pos + 1, stack, pairs, unpaired, surplus, out);
                pairs.pop();
                stack.push(q);
            }
        }
        stack.push(p);
        rec(s, pos + 1, stack, pairs, unpaired, surplus, out);
        stack.pop();
    }
    let n = beta.len();
    let k = beta.count(1);
    let surplus = (2 * k).abs_diff(n);
    let mut out = Vec::new();
    rec(beta.letters(), 0, &mut Vec::new(), &mut Vec::new(), &mut Vec::new(), surplus, &mut out);
    out.sort();
    out
}

/// Flips the reversed pair `p` and every reversed pair nested inside it;
/// flipped pairs become ordered.
pub fn r_flip(beta: &BinaryString, w: &Linkage, p: (usize, usize)) -> Result<(BinaryString, Linkage)> {
    if !w.pairs.contains(&p) || p.0 < p.1 {
        return Err(Error::NotReversed(p.0, p.1));
    }
    let mut s = beta.clone();
    let mut pairs = Vec::with_capacity(w.pairs.len());
    for &q in &w.pairs {
        if q.0 > q.1 && (q == p || Linkage::inside(q, p)) {
            s = s.swap(q.0, q.1);
            pairs.push((q.1, q.0));
        } else {
            pairs.push(q);
        }
    }
    pairs.sort();
    Ok((s, Linkage { pairs, unpaired: w.unpaired.clone() }))
}

/// `L'(β; w)`: closure of `{β}` under single r-flips, with the number of
/// pairs flipped.
pub fn l_prime(beta: &BinaryString, w: &Linkage) -> Result<BTreeMap<BinaryString, usize>> {
    let mut seen: BTreeMap<BinaryString, usize> = BTreeMap::new();
    let mut frontier = vec![(beta.clone(), w.clone())];
    seen.insert(beta.clone(), 0);
    while let Some((s, link)) = frontier.pop() {
        let reversed: Vec<_> = link.reversed().collect();
        for p in reversed {
            let (next, next_link) = r_flip(&s, &link, p)?;
            let flipped = w
                .pairs
                .iter()
                .filter(|q| !next_link.pairs.contains(q))
                .count();
            match seen.get(&next) {
                Some(&d) if d != flipped => {
                    return Err(Error::Inconsistent(format!("{next} reached with {d} and {flipped} flips")));
                }
                Some(_) => {}
                None => {
                    seen.insert(next.clone(), flipped);
                    frontier.push((next, next_link));
                }
            }
        }
    }
    Ok(seen)
}

/// `L(β)` as paths with `d(α, β)`, the half Hamming distance. Checks that
/// every linkage reaching `α` reports the same `d`.
pub fn l_set(beta: &BinaryString) -> Result<BTreeMap<Path, usize>> {
    let mut out: BTreeMap<Path, usize> = BTreeMap::new();
    let beta_path = beta.to_path(Sign::Plus)?;
    for w in all_linkages(beta) {
        for (s, flips) in l_prime(beta, &w)? {
            let p = s.to_path(Sign::Plus)?;
            if p.half_hamming(&beta_path) != flips {
                return Err(Error::Inconsistent(format!("{s}: {flips} flips at Hamming distance {}", p.half_hamming(&beta_path))));
            }
            if let Some(&d) = out.get(&p) {
                if d != flips {
                    return Err(Error::Inconsistent(format!("d of {s} depends on the linkage")));
                }
            }
            out.insert(p, flips);
        }
    }
    Ok(out)
}

/// `m_β = Σ_{α ∈ L(β)} (-t)^{-d} C^+_α`, returned with `C^+_α` as the key.
pub fn expand_monomial<C: Coeff>(beta: &Path) -> Result<ModuleElement<C>> {
    let mut v = ModuleElement::zero(beta.len(), beta.ups(), Sign::Plus);
    for (alpha, d) in l_set(&beta.to_binary(Sign::Plus))? {
        let mut c = LaurentPoly::t_pow(-(d as i32));
        if d % 2 == 1 {
            c = c.neg()?;
        }
        v.add_term(alpha, &c)?;
    }
    Ok(v)
}

/// Rewrites a combination of `C^+_α` in the standard basis.
pub fn substitute_c_basis<C: Coeff>(v: &ModuleElement<C>, table: &KlTable<C>) -> Result<ModuleElement<C>> {
    let mut out = ModuleElement::zero(v.n(), v.k(), Sign::Plus);
    for (alpha, c) in v.terms() {
        out.add_assign(&table.column(alpha)?.scale(c)?)?;
    }
    Ok(out)
}

/// The distinct strings of `L(β)`.
pub fn l_set_strings(beta: &BinaryString) -> Result<BTreeSet<BinaryString>> {
    Ok(l_set(beta)?.keys().map(|p| p.to_binary(Sign::Plus)).collect())
}
