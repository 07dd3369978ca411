//! The Hecke modules `M^±` on paths of `P_{N,K}`, their bar involution and
//! the parabolic Kazhdan–Lusztig bases `C^±`.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::canonical::{bar_solve, PolyMatrix};
use crate::coeff::Coeff;
use crate::combinatorics::{
    box_word, link_pattern, minimal_path, path_leq, same_shape, Path, PathSet, Sign, Step,
};
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;

/// A finite combination `Σ c_α m_α` in `M^ε`.
#[derive(Clone, PartialEq, Eq)]
pub struct ModuleElement<C> {
    sign: Sign,
    n: usize,
    k: usize,
    terms: BTreeMap<Path, LaurentPoly<C>>,
}

impl<C: Coeff> ModuleElement<C> {
    pub fn zero(n: usize, k: usize, sign: Sign) -> Self {
        Self { sign, n, k, terms: BTreeMap::new() }
    }

    /// The standard basis element `m_p`.
    pub fn basis(p: Path, sign: Sign) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(p, LaurentPoly::one());
        Self { sign, n: p.len(), k: p.ups(), terms }
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Path, &LaurentPoly<C>)> + '_ {
        self.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = Path> + '_ {
        self.terms.keys().copied()
    }

    pub fn coeff(&self, p: &Path) -> LaurentPoly<C> {
        self.terms.get(p).cloned().unwrap_or_default()
    }

    fn check(&self, p: &Path) -> Result<()> {
        if p.len() != self.n || p.ups() != self.k {
            return Err(Error::ShapeMismatch(format!(
                "{p} is not in P({}, {})",
                self.n, self.k
            )));
        }
        Ok(())
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.sign != other.sign || self.n != other.n || self.k != other.k {
            return Err(Error::ShapeMismatch("elements of different modules".into()));
        }
        Ok(())
    }

    /// Adds `c m_p`.
    pub fn add_term(&mut self, p: Path, c: &LaurentPoly<C>) -> Result<()> {
        self.check(&p)?;
        if c.is_zero() {
            return Ok(());
        }
        let entry = self.terms.entry(p).or_default();
        entry.add_assign(c)?;
        if entry.is_zero() {
            self.terms.remove(&p);
        }
        Ok(())
    }

    pub fn add_assign(&mut self, other: &Self) -> Result<()> {
        self.check_compatible(other)?;
        for (p, c) in &other.terms {
            self.add_term(*p, c)?;
        }
        Ok(())
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        let mut out = self.clone();
        out.add_assign(&other.scale(&LaurentPoly::one().neg()?)?)?;
        Ok(out)
    }

    /// Multiplies every coefficient by `c`.
    pub fn scale(&self, c: &LaurentPoly<C>) -> Result<Self> {
        let mut out = Self::zero(self.n, self.k, self.sign);
        for (p, d) in &self.terms {
            out.add_term(*p, &d.mul(c)?)?;
        }
        Ok(out)
    }

    /// Applies `t ↦ t^{-1}` to the coefficients only.
    pub fn bar_coefficients(&self) -> Self {
        let terms = self.terms.iter().map(|(p, c)| (*p, c.bar())).collect();
        Self { sign: self.sign, n: self.n, k: self.k, terms }
    }
}

impl<C: Coeff> std::fmt::Debug for ModuleElement<C> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "M{}[", self.sign)?;
        for (i, (p, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{p}: {c}")?;
        }
        write!(f, "]")
    }
}

#[derive(Serialize, Deserialize)]
#[serde(bound(serialize = "C: Coeff + Serialize", deserialize = "C: Coeff + Deserialize<'de>"))]
struct TermJson<C> {
    path: Path,
    poly: LaurentPoly<C>,
}

#[derive(Serialize, Deserialize)]
#[serde(bound(serialize = "C: Coeff + Serialize", deserialize = "C: Coeff + Deserialize<'de>"))]
struct ElementJson<C> {
    convention: Sign,
    terms: Vec<TermJson<C>>,
}

impl<C: Coeff + Serialize> Serialize for ModuleElement<C> {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        ElementJson {
            convention: self.sign,
            terms: self
                .terms
                .iter()
                .map(|(p, c)| TermJson { path: *p, poly: c.clone() })
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de, C: Coeff + Deserialize<'de>> Deserialize<'de> for ModuleElement<C> {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = ElementJson::<C>::deserialize(deserializer)?;
        let first = raw
            .terms
            .first()
            .ok_or_else(|| serde::de::Error::custom("empty module element has no shape"))?;
        let mut out = Self::zero(first.path.len(), first.path.ups(), raw.convention);
        for t in &raw.terms {
            out.add_term(t.path, &t.poly).map_err(serde::de::Error::custom)?;
        }
        Ok(out)
    }
}

/// `T_i v` by the local rules on steps `i, i+1`.
pub fn hecke_act<C: Coeff>(i: usize, v: &ModuleElement<C>) -> Result<ModuleElement<C>> {
    if i == 0 || i >= v.n {
        return Err(Error::GeneratorOutOfRange { index: i, max: v.n.saturating_sub(1) });
    }
    let t_diff = LaurentPoly::<C>::t_minus_t_inv()?;
    let equal_eigen = match v.sign {
        Sign::Plus => LaurentPoly::t_pow(1),
        Sign::Minus => LaurentPoly::monomial(C::one().try_neg()?, -1),
    };
    // The local pattern sent to its swap with coefficient 1.
    let rising = match v.sign {
        Sign::Minus => (Step::Down, Step::Up),
        Sign::Plus => (Step::Up, Step::Down),
    };
    let mut out = ModuleElement::zero(v.n, v.k, v.sign);
    for (p, c) in &v.terms {
        let local = (p.step(i), p.step(i + 1));
        if local.0 == local.1 {
            out.add_term(*p, &c.mul(&equal_eigen)?)?;
        } else if local == rising {
            out.add_term(p.swap_steps(i), c)?;
        } else {
            out.add_term(*p, &c.mul(&t_diff)?)?;
            out.add_term(p.swap_steps(i), c)?;
        }
    }
    Ok(out)
}

/// `T_i^{-1} v = T_i v - (t - t^{-1}) v`.
pub fn hecke_act_inverse<C: Coeff>(i: usize, v: &ModuleElement<C>) -> Result<ModuleElement<C>> {
    let tv = hecke_act(i, v)?;
    tv.sub(&v.scale(&LaurentPoly::t_minus_t_inv()?)?)
}

/// The module `M^ε` over `P_{N,K}` with lazily memoized bar images of the
/// standard basis.
pub struct HeckeModule<C> {
    paths: PathSet,
    bars: Vec<OnceLock<ModuleElement<C>>>,
}

impl<C: Coeff> HeckeModule<C> {
    pub fn new(n: usize, k: usize, sign: Sign) -> Result<Self> {
        let paths = PathSet::new(n, k, sign)?;
        let bars = (0..paths.len()).map(|_| OnceLock::new()).collect();
        Ok(Self { paths, bars })
    }

    pub fn paths(&self) -> &PathSet {
        &self.paths
    }

    pub fn sign(&self) -> Sign {
        self.paths.sign()
    }

    pub fn n(&self) -> usize {
        self.paths.n()
    }

    pub fn k(&self) -> usize {
        self.paths.k()
    }

    fn index(&self, p: &Path) -> Result<usize> {
        self.paths.index_of(p).ok_or_else(|| {
            Error::ShapeMismatch(format!("{p} is not in P({}, {})", self.n(), self.k()))
        })
    }

    /// `bar(m_p)`. Removes one box at the first removable position and
    /// recurses, using `m_p = T_i m_{p'}`.
    pub fn bar_basis(&self, p: &Path) -> Result<&ModuleElement<C>> {
        let idx = self.index(p)?;
        if let Some(b) = self.bars[idx].get() {
            return Ok(b);
        }
        let sign = self.sign();
        let top = match sign {
            Sign::Minus => (Step::Up, Step::Down),
            Sign::Plus => (Step::Down, Step::Up),
        };
        let value = match (1..p.len()).find(|&i| (p.step(i), p.step(i + 1)) == top) {
            None => ModuleElement::basis(*p, sign),
            Some(i) => hecke_act_inverse(i, self.bar_basis(&p.swap_steps(i))?)?,
        };
        Ok(self.bars[idx].get_or_init(|| value))
    }

    pub fn bar(&self, v: &ModuleElement<C>) -> Result<ModuleElement<C>> {
        if v.sign != self.sign() {
            return Err(Error::ShapeMismatch("element of the other module".into()));
        }
        let mut out = ModuleElement::zero(self.n(), self.k(), self.sign());
        for (p, c) in &v.terms {
            out.add_assign(&self.bar_basis(p)?.scale(&c.bar())?)?;
        }
        Ok(out)
    }

    /// `R[x][y]`: coefficient of `m_x` in `bar(m_y)`, in path-set order.
    pub fn bar_matrix(&self) -> Result<PolyMatrix<C>> {
        let n = self.paths.len();
        let mut r = vec![vec![LaurentPoly::zero(); n]; n];
        for (y, p) in self.paths.paths().iter().enumerate() {
            for (q, c) in self.bar_basis(p)?.terms() {
                r[self.index(q)?][y] = c.clone();
            }
        }
        Ok(r)
    }

    /// The full table of `P^ε` by the generic bar-invariant triangular solve.
    pub fn table_bar_solve(&self) -> Result<KlTable<C>> {
        let p = bar_solve(&self.bar_matrix()?)?;
        KlTable::from_dense(self.paths.clone(), p)
    }
}

/// `bar(v)` in the module `v` belongs to.
pub fn bar_involution<C: Coeff>(v: &ModuleElement<C>) -> Result<ModuleElement<C>> {
    HeckeModule::new(v.n, v.k, v.sign)?.bar(v)
}

/// All flips of subsets of the pairings of `β`, with the number flipped.
pub fn flip_set(beta: &Path) -> Vec<(Path, usize)> {
    let pairings = link_pattern(beta).pairings;
    let mut out = vec![(*beta, 0)];
    for &(i, j) in &pairings {
        let flipped: Vec<_> = out.iter().map(|(p, d)| (p.swap_positions(i, j), d + 1)).collect();
        out.extend(flipped);
    }
    out.sort();
    out
}

/// How to build `C^-_β`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MinusRoute {
    /// `Π (T_i + t^{-1})` over box additions applied to the lowest path.
    Factorized,
    /// `Σ_{α ∈ F(β)} t^{-d} m_α`.
    FlipSet,
}

pub fn kl_basis_minus<C: Coeff>(beta: &Path, route: MinusRoute) -> Result<ModuleElement<C>> {
    match route {
        MinusRoute::Factorized => {
            let base = minimal_path(beta.len(), beta.ups(), Sign::Minus)?;
            let t_inv = LaurentPoly::t_pow(-1);
            let mut v = ModuleElement::basis(base, Sign::Minus);
            for i in box_word(beta, Sign::Minus) {
                let mut next = hecke_act(i, &v)?;
                next.add_assign(&v.scale(&t_inv)?)?;
                v = next;
            }
            Ok(v)
        }
        MinusRoute::FlipSet => {
            let mut v = ModuleElement::zero(beta.len(), beta.ups(), Sign::Minus);
            for (alpha, d) in flip_set(beta) {
                v.add_term(alpha, &LaurentPoly::t_pow(-(d as i32)))?;
            }
            Ok(v)
        }
    }
}

/// How to build the table of `P^+`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PlusRoute {
    /// Inverse of the unitriangular matrix `P^-_{β,α}(-t^{-1})`.
    Inversion,
    /// Generic bar-invariant triangular solve in `M^+`.
    BarSolve,
}

/// The full table of `P^+` over `P_{N,K}`.
pub fn p_plus_table<C: Coeff>(n: usize, k: usize, route: PlusRoute) -> Result<KlTable<C>> {
    match route {
        PlusRoute::BarSolve => HeckeModule::new(n, k, Sign::Plus)?.table_bar_solve(),
        PlusRoute::Inversion => {
            let paths = PathSet::new(n, k, Sign::Plus)?;
            let size = paths.len();
            // rows[x] = [(α, A_{x,α})], α ≠ x, where A_{x,α} = P^-_{α,x}(-t^{-1}).
            let mut rows: Vec<Vec<(usize, LaurentPoly<C>)>> = Vec::with_capacity(size);
            for x in paths.paths() {
                let cx = kl_basis_minus::<C>(x, MinusRoute::Factorized)?;
                let mut row = Vec::with_capacity(cx.len());
                for (alpha, c) in cx.terms() {
                    if alpha != x {
                        let idx = paths.index_of(alpha).expect("same shape");
                        row.push((idx, c.negate_variable()?));
                    }
                }
                rows.push(row);
            }
            let mut dense = vec![vec![LaurentPoly::zero(); size]; size];
            for y in 0..size {
                for x in (0..=y).rev() {
                    let mut acc = if x == y { LaurentPoly::one() } else { LaurentPoly::zero() };
                    for (alpha, a) in &rows[x] {
                        if *alpha <= y && !dense[*alpha][y].is_zero() {
                            let term = a.mul(&dense[*alpha][y])?;
                            acc.sub_assign(&term)?;
                        }
                    }
                    dense[x][y] = acc;
                }
            }
            KlTable::from_dense(paths, dense)
        }
    }
}

/// The table of `P^-` from the factorized products.
pub fn p_minus_table<C: Coeff>(n: usize, k: usize, route: MinusRoute) -> Result<KlTable<C>> {
    let paths = PathSet::new(n, k, Sign::Minus)?;
    let size = paths.len();
    let mut dense = vec![vec![LaurentPoly::zero(); size]; size];
    for (y, beta) in paths.paths().iter().enumerate() {
        for (alpha, c) in kl_basis_minus::<C>(beta, route)?.terms() {
            dense[paths.index_of(alpha).expect("same shape")][y] = c.clone();
        }
    }
    KlTable::from_dense(paths, dense)
}

/// `C^+_β`.
pub fn kl_basis_plus<C: Coeff>(beta: &Path, route: PlusRoute) -> Result<ModuleElement<C>> {
    let table = p_plus_table::<C>(beta.len(), beta.ups(), route)?;
    table.column(beta)
}

/// `P^±_{α,β}`; zero when `α ≰ β`.
pub fn parabolic_kl<C: Coeff>(alpha: &Path, beta: &Path, sign: Sign) -> Result<LaurentPoly<C>> {
    same_shape(alpha, beta)?;
    if !path_leq(alpha, beta, sign) {
        return Ok(LaurentPoly::zero());
    }
    match sign {
        Sign::Minus => Ok(kl_basis_minus::<C>(beta, MinusRoute::Factorized)?.coeff(alpha)),
        Sign::Plus => Ok(kl_basis_plus::<C>(beta, PlusRoute::Inversion)?.coeff(alpha)),
    }
}

/// A square table `P_{x,y}` over the paths of one convention.
#[derive(Clone, PartialEq, Eq)]
pub struct KlTable<C> {
    paths: PathSet,
    entries: PolyMatrix<C>,
}

impl<C: Coeff> std::fmt::Debug for KlTable<C> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "KlTable {} N={} K={}", self.sign(), self.paths.n(), self.paths.k())?;
        for row in &self.entries {
            let cells: Vec<String> = row.iter().map(|c| c.to_string()).collect();
            writeln!(f, "  {}", cells.join(" | "))?;
        }
        Ok(())
    }
}

impl<C: Coeff> KlTable<C> {
    /// Validates that entries vanish off the order and the diagonal is 1.
    pub fn from_dense(paths: PathSet, entries: PolyMatrix<C>) -> Result<Self> {
        for x in 0..paths.len() {
            for y in 0..paths.len() {
                let e = &entries[x][y];
                if x == y && !e.is_one() {
                    return Err(Error::Inconsistent(format!("diagonal entry {e} at {x}")));
                }
                if !e.is_zero() && !paths.leq(x, y) {
                    return Err(Error::Inconsistent(format!(
                        "nonzero entry {e} outside the order at ({}, {})",
                        paths.path(x),
                        paths.path(y)
                    )));
                }
            }
        }
        Ok(Self { paths, entries })
    }

    pub fn paths(&self) -> &PathSet {
        &self.paths
    }

    pub fn sign(&self) -> Sign {
        self.paths.sign()
    }

    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    pub fn entry(&self, x: usize, y: usize) -> &LaurentPoly<C> {
        &self.entries[x][y]
    }

    /// `None` when `x ≰ y` (a blank cell), otherwise the polynomial.
    pub fn get(&self, x: &Path, y: &Path) -> Option<&LaurentPoly<C>> {
        let (i, j) = (self.paths.index_of(x)?, self.paths.index_of(y)?);
        self.paths.leq(i, j).then(|| &self.entries[i][j])
    }

    pub fn dense(&self) -> &PolyMatrix<C> {
        &self.entries
    }

    /// `C_y = Σ_x P_{x,y} m_x`.
    pub fn column(&self, y: &Path) -> Result<ModuleElement<C>> {
        let j = self
            .paths
            .index_of(y)
            .ok_or_else(|| Error::ShapeMismatch(format!("{y} not in table")))?;
        let mut v = ModuleElement::zero(self.paths.n(), self.paths.k(), self.sign());
        for (i, p) in self.paths.paths().iter().enumerate() {
            v.add_term(*p, &self.entries[i][j])?;
        }
        Ok(v)
    }
}
