//! Desk-scale Kazhdan–Lusztig theory of the full Hecke algebra of `S_N`,
//! used as an oracle for the parabolic tables.
//!
//! Coefficients follow the normalization `C_w = Σ_v P_{v,w} T_v` with
//! `P_{w,w} = 1` and `P_{v,w} ∈ t^{-1}Z[t^{-1}]` otherwise, so for example
//! `C_s = T_s + t^{-1}`.

use std::collections::{BTreeMap, HashMap};

use crate::coeff::Coeff;
use crate::combinatorics::{grassmannian, longest_representative, Path, Permutation, Sign};
use crate::error::{Error, Result};
use crate::hecke::{p_minus_table, p_plus_table, MinusRoute, PlusRoute};
use crate::laurent::LaurentPoly;

/// Largest `N` for the full basis.
pub const MAX_BASIS_N: usize = 6;
/// Largest `N` for the all-pairs verifications.
pub const MAX_VERIFY_N: usize = 5;

/// Strong Bruhat order by the rank-matrix criterion:
/// `u <= v` iff `#{a <= i : u(a) >= j} <= #{a <= i : v(a) >= j}` for all `i, j`.
pub fn bruhat_leq(u: &Permutation, v: &Permutation) -> bool {
    let n = u.len();
    if v.len() != n {
        return false;
    }
    for j in 1..=n {
        let (mut ru, mut rv) = (0, 0);
        for i in 1..=n {
            ru += usize::from(u.apply(i) >= j);
            rv += usize::from(v.apply(i) >= j);
            if ru > rv {
                return false;
            }
        }
    }
    true
}

/// A finite combination `Σ c_v T_v`.
#[derive(Clone, PartialEq, Eq)]
pub struct HeckeElement<C> {
    n: usize,
    terms: BTreeMap<Permutation, LaurentPoly<C>>,
}

impl<C: Coeff> std::fmt::Debug for HeckeElement<C> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "H[")?;
        for (i, (v, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}: {c}")?;
        }
        write!(f, "]")
    }
}

impl<C: Coeff> HeckeElement<C> {
    pub fn zero(n: usize) -> Self {
        Self { n, terms: BTreeMap::new() }
    }

    /// `T_v`.
    pub fn basis(v: Permutation) -> Self {
        let n = v.len();
        let mut terms = BTreeMap::new();
        terms.insert(v, LaurentPoly::one());
        Self { n, terms }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Permutation, &LaurentPoly<C>)> + '_ {
        self.terms.iter()
    }

    pub fn coeff(&self, v: &Permutation) -> LaurentPoly<C> {
        self.terms.get(v).cloned().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, v: Permutation, c: &LaurentPoly<C>) -> Result<()> {
        if v.len() != self.n {
            return Err(Error::ShapeMismatch(format!("{v} is not in S_{}", self.n)));
        }
        if c.is_zero() {
            return Ok(());
        }
        let e = self.terms.entry(v.clone()).or_default();
        e.add_assign(c)?;
        if e.is_zero() {
            self.terms.remove(&v);
        }
        Ok(())
    }
}

/// Left multiplication by `T_i`.
pub fn multiply_by_generator<C: Coeff>(i: usize, h: &HeckeElement<C>) -> Result<HeckeElement<C>> {
    if i == 0 || i >= h.n {
        return Err(Error::GeneratorOutOfRange { index: i, max: h.n.saturating_sub(1) });
    }
    let diff = LaurentPoly::<C>::t_minus_t_inv()?;
    let mut out = HeckeElement::zero(h.n);
    for (v, c) in &h.terms {
        let sv = v.left_mul_generator(i);
        if !v.left_ascent(i) {
            out.add_term(v.clone(), &c.mul(&diff)?)?;
        }
        out.add_term(sv, c)?;
    }
    Ok(out)
}

/// `S_N` listed by length, then lexicographically, with generator tables.
#[derive(Clone, Debug)]
pub struct SymmetricGroup {
    n: usize,
    elems: Vec<Permutation>,
    index: HashMap<Permutation, usize>,
    lengths: Vec<usize>,
    /// `left[i-1][v]` is the index of `s_i v`.
    left: Vec<Vec<usize>>,
}

impl SymmetricGroup {
    pub fn new(n: usize) -> Result<Self> {
        if n > MAX_BASIS_N {
            return Err(Error::SizeLimit(format!("S_{n} is above the oracle limit N <= {MAX_BASIS_N}")));
        }
        let mut elems = Vec::new();
        let mut images: Vec<usize> = (1..=n).collect();
        permutations(&mut images, 0, &mut elems);
        elems.sort_by_key(|p| (p.length(), p.clone()));
        let index: HashMap<_, _> = elems.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
        let lengths = elems.iter().map(Permutation::length).collect();
        let left = (1..n.max(1))
            .map(|i| elems.iter().map(|v| index[&v.left_mul_generator(i)]).collect())
            .collect();
        Ok(Self { n, elems, index, lengths, left })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elems
    }

    pub fn index_of(&self, v: &Permutation) -> usize {
        self.index[v]
    }

    pub fn length(&self, v: usize) -> usize {
        self.lengths[v]
    }

    fn ascent(&self, i: usize, v: usize) -> bool {
        self.lengths[self.left[i - 1][v]] > self.lengths[v]
    }

    /// Dense left multiplication by `T_i`.
    fn mul_gen<C: Coeff>(&self, i: usize, x: &[LaurentPoly<C>]) -> Result<Vec<LaurentPoly<C>>> {
        let diff = LaurentPoly::<C>::t_minus_t_inv()?;
        let mut out = vec![LaurentPoly::zero(); x.len()];
        for (v, c) in x.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !self.ascent(i, v) {
                out[v].add_product(c, &diff)?;
            }
            out[self.left[i - 1][v]].add_assign(c)?;
        }
        Ok(out)
    }

    fn mul_gen_inverse<C: Coeff>(&self, i: usize, x: &[LaurentPoly<C>]) -> Result<Vec<LaurentPoly<C>>> {
        let diff = LaurentPoly::<C>::t_minus_t_inv()?;
        let mut out = self.mul_gen(i, x)?;
        for (o, c) in out.iter_mut().zip(x) {
            if !c.is_zero() {
                o.sub_assign(&c.mul(&diff)?)?;
            }
        }
        Ok(out)
    }

    /// `bar(T_v)` for every `v`, peeling off the first (or last) left
    /// descent: `bar(T_v) = T_i^{-1} bar(T_{s_i v})`.
    pub fn bar_images<C: Coeff>(&self, last_descent: bool) -> Result<Vec<Vec<LaurentPoly<C>>>> {
        let size = self.len();
        let mut out: Vec<Vec<LaurentPoly<C>>> = Vec::with_capacity(size);
        for v in 0..size {
            let mut descents = (1..self.n).filter(|&i| !self.ascent(i, v));
            let pick = if last_descent { descents.next_back() } else { descents.next() };
            let image = match pick {
                None => {
                    let mut e = vec![LaurentPoly::zero(); size];
                    e[v] = LaurentPoly::one();
                    e
                }
                Some(i) => self.mul_gen_inverse(i, &out[self.left[i - 1][v]])?,
            };
            out.push(image);
        }
        Ok(out)
    }

    fn element_of<C: Coeff>(&self, x: &[LaurentPoly<C>]) -> Result<HeckeElement<C>> {
        let mut h = HeckeElement::zero(self.n);
        for (v, c) in x.iter().enumerate() {
            h.add_term(self.elems[v].clone(), c)?;
        }
        Ok(h)
    }

    fn dense_of<C: Coeff>(&self, h: &HeckeElement<C>) -> Vec<LaurentPoly<C>> {
        let mut x = vec![LaurentPoly::zero(); self.len()];
        for (v, c) in h.terms() {
            x[self.index[v]] = c.clone();
        }
        x
    }

    /// The bar involution on `H`.
    pub fn bar<C: Coeff>(&self, h: &HeckeElement<C>, images: &[Vec<LaurentPoly<C>>]) -> Result<HeckeElement<C>> {
        let x = self.dense_of(h);
        let mut out = vec![LaurentPoly::zero(); self.len()];
        for (v, c) in x.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let cb = c.bar();
            for (o, b) in out.iter_mut().zip(&images[v]) {
                if !b.is_zero() {
                    o.add_product(&cb, b)?;
                }
            }
        }
        self.element_of(&out)
    }
}

fn permutations(images: &mut Vec<usize>, k: usize, out: &mut Vec<Permutation>) {
    if k == images.len() {
        out.push(Permutation::new(images.clone()).expect("permutation"));
        return;
    }
    for i in k..images.len() {
        images.swap(k, i);
        permutations(images, k + 1, out);
        images.swap(k, i);
    }
}

/// The whole Kazhdan–Lusztig basis: `p[w][v] = P_{v,w}`.
#[derive(Clone)]
pub struct KlBasis<C> {
    group: SymmetricGroup,
    p: Vec<Vec<LaurentPoly<C>>>,
}

impl<C: Coeff> std::fmt::Debug for KlBasis<C> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "KlBasis(S_{})", self.group.n)
    }
}

impl<C: Coeff> KlBasis<C> {
    /// Builds `C_w` from `C_s C_{sw}` for a left descent `s`, then removes
    /// the non-negative parts by subtracting bar-invariant multiples of
    /// lower `C_z`, from the top down.
    pub fn compute(n: usize) -> Result<Self> {
        let group = SymmetricGroup::new(n)?;
        let size = group.len();
        let mut p: Vec<Vec<LaurentPoly<C>>> = Vec::with_capacity(size);
        for w in 0..size {
            let Some(s) = (1..n).find(|&i| !group.ascent(i, w)) else {
                let mut e = vec![LaurentPoly::zero(); size];
                e[w] = LaurentPoly::one();
                p.push(e);
                continue;
            };
            let prev = &p[group.left[s - 1][w]];
            let mut x = group.mul_gen(s, prev)?;
            let t_inv = LaurentPoly::t_pow(-1);
            for (xi, c) in x.iter_mut().zip(prev) {
                if !c.is_zero() {
                    xi.add_product(c, &t_inv)?;
                }
            }
            for z in (0..w).rev() {
                let c = &x[z];
                if c.max_exponent().is_none_or(|e| e < 0) {
                    continue;
                }
                let mut q = LaurentPoly::zero();
                for (e, a) in c.terms().filter(|(e, _)| *e >= 0) {
                    q.add_term(e, a)?;
                    if e > 0 {
                        q.add_term(-e, a)?;
                    }
                }
                for (xi, cz) in x.iter_mut().zip(&p[z]) {
                    if !cz.is_zero() {
                        xi.sub_assign(&q.mul(cz)?)?;
                    }
                }
            }
            p.push(x);
        }
        Ok(Self { group, p })
    }

    pub fn group(&self) -> &SymmetricGroup {
        &self.group
    }

    /// `P_{v,w}`.
    pub fn p(&self, v: &Permutation, w: &Permutation) -> &LaurentPoly<C> {
        &self.p[self.group.index_of(w)][self.group.index_of(v)]
    }

    pub fn element(&self, w: &Permutation) -> Result<HeckeElement<C>> {
        self.group.element_of(&self.p[self.group.index_of(w)])
    }
}

/// `C_w`; errors above `N = 6`.
pub fn kl_basis_full<C: Coeff>(w: &Permutation) -> Result<HeckeElement<C>> {
    KlBasis::<C>::compute(w.len())?.element(w)
}

fn guard(n: usize) -> Result<()> {
    if n > MAX_VERIFY_N {
        return Err(Error::SizeLimit(format!("N = {n} is above the verification limit {MAX_VERIFY_N}")));
    }
    Ok(())
}

/// Checks `P^+_{x,y} = P_{v,w}` on longest representatives and
/// `P^-_{x,y} = Σ_{v ∈ x} (-t)^{|x|-|v|} P_{v,w}` with `w` shortest, for
/// every pair of cosets.
pub fn verify_parabolic_bridge(n: usize, k: usize) -> Result<bool> {
    guard(n)?;
    let kl = KlBasis::<i64>::compute(n)?;
    let group = kl.group();

    let plus = p_plus_table::<i64>(n, k, PlusRoute::Inversion)?;
    let paths = plus.paths();
    for x in 0..paths.len() {
        let v = longest_representative(&paths.path(x).to_binary(Sign::Plus));
        for y in 0..paths.len() {
            let w = longest_representative(&paths.path(y).to_binary(Sign::Plus));
            if plus.entry(x, y) != kl.p(&v, &w) {
                return Ok(false);
            }
        }
    }

    let minus = p_minus_table::<i64>(n, k, MinusRoute::Factorized)?;
    let paths = minus.paths();
    let ones = n - k;
    let mut cosets: HashMap<Path, Vec<usize>> = HashMap::new();
    for (i, u) in group.elements().iter().enumerate() {
        cosets.entry(u.coset_string(ones).to_path(Sign::Minus)?).or_default().push(i);
    }
    for x in 0..paths.len() {
        let members = &cosets[&paths.path(x)];
        let len_x = paths.length(x) as i32;
        for y in 0..paths.len() {
            let w = grassmannian(&paths.path(y).to_binary(Sign::Minus));
            let mut sum = LaurentPoly::zero();
            for &u in members {
                let d = len_x - group.length(u) as i32;
                let mut c = LaurentPoly::t_pow(d);
                if d % 2 != 0 {
                    c = c.neg()?;
                }
                sum.add_product(&c, kl.p(&group.elements()[u], &w))?;
            }
            if &sum != minus.entry(x, y) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Checks both inversion formulae over `S_N` and `P_{u♯,v♯} = P_{u,v}`.
pub fn verify_full_duality(n: usize) -> Result<bool> {
    guard(n)?;
    let kl = KlBasis::<i64>::compute(n)?;
    let group = kl.group();
    let elems = group.elements();
    let w0 = Permutation::longest(n);
    let sign = |a: usize, b: usize| (group.length(a) + group.length(b)) % 2 == 1;
    let flip: Vec<usize> = elems.iter().map(|u| group.index_of(&w0.compose(u))).collect();
    let p = |v: usize, w: usize| &kl.p[w][v];
    for u in 0..elems.len() {
        for v in 0..elems.len() {
            let mut first = LaurentPoly::<i64>::zero();
            let mut second = LaurentPoly::<i64>::zero();
            for z in 0..elems.len() {
                let a = p(u, z).mul(p(flip[v], flip[z]))?;
                let b = p(z, u).mul(p(flip[z], flip[v]))?;
                if sign(v, z) {
                    first.sub_assign(&a)?;
                } else {
                    first.add_assign(&a)?;
                }
                if sign(z, u) {
                    second.sub_assign(&b)?;
                } else {
                    second.add_assign(&b)?;
                }
            }
            let want_one = u == v;
            if first.is_one() != want_one || (!want_one && !first.is_zero()) {
                return Ok(false);
            }
            if second.is_one() != want_one || (!want_one && !second.is_zero()) {
                return Ok(false);
            }
            let sharp = |x: &Permutation| w0.compose(x).compose(&w0);
            if kl.p(&sharp(&elems[u]), &sharp(&elems[v])) != p(u, v) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `Σ_{u ∈ S_K x S_{N-K}} t^{2|u| - L}` with `L` the length of the longest
/// element there: the bar-invariant scalar by which `φ^+(C_w)` exceeds
/// `C^+_{φ(w)}`.
pub fn parabolic_poincare<C: Coeff>(n: usize, k: usize) -> Result<LaurentPoly<C>> {
    let q = |m: usize| -> Result<LaurentPoly<C>> {
        // Σ_{u ∈ S_m} t^{2|u| - m(m-1)/2} = Π_{j=1..m} (t^{j-1} + t^{j-3} + ... + t^{1-j}).
        let mut acc = LaurentPoly::one();
        for j in 1..=m as i32 {
            let mut f = LaurentPoly::zero();
            let mut e = 1 - j;
            while e < j {
                f.add_term(e, &C::one())?;
                e += 2;
            }
            acc = acc.mul(&f)?;
        }
        Ok(acc)
    };
    q(k)?.mul(&q(n - k)?)
}

/// Projects `C_w` to `M^ε` (`T_v ↦ T_v m_{base}`) and compares with the
/// parabolic basis: `φ^-(C_w) = C^-` for shortest `w`, and
/// `φ^+(C_w) = [S_K x S_{N-K}] C^+` for longest `w`.
pub fn verify_projection(n: usize, k: usize) -> Result<bool> {
    guard(n)?;
    let kl = KlBasis::<i64>::compute(n)?;
    for sign in [Sign::Minus, Sign::Plus] {
        let table = match sign {
            Sign::Minus => p_minus_table::<i64>(n, k, MinusRoute::Factorized)?,
            Sign::Plus => p_plus_table::<i64>(n, k, PlusRoute::Inversion)?,
        };
        let scalar = match sign {
            Sign::Minus => LaurentPoly::one(),
            Sign::Plus => parabolic_poincare::<i64>(n, k)?,
        };
        // T_v m_base = (eigen)^{|v| - |short(v)|} m_{coset(v)}.
        let eigen = match sign {
            Sign::Minus => LaurentPoly::monomial(-1, -1),
            Sign::Plus => LaurentPoly::t_pow(1),
        };
        let paths = table.paths();
        let ones = match sign {
            Sign::Minus => n - k,
            Sign::Plus => k,
        };
        for y in 0..paths.len() {
            let s = paths.path(y).to_binary(sign);
            let w = match sign {
                Sign::Minus => grassmannian(&s),
                Sign::Plus => longest_representative(&s),
            };
            let mut image: HashMap<Path, LaurentPoly<i64>> = HashMap::new();
            for (v, c) in kl.element(&w)?.terms() {
                let coset = v.coset_string(ones);
                let drop = v.length() - grassmannian(&coset).length();
                let mut f = c.clone();
                for _ in 0..drop {
                    f = f.mul(&eigen)?;
                }
                image.entry(coset.to_path(sign)?).or_default().add_assign(&f)?;
            }
            for x in 0..paths.len() {
                let want = table.entry(x, y).mul(&scalar)?;
                let got = image.remove(&paths.path(x)).unwrap_or_default();
                if got != want {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}
