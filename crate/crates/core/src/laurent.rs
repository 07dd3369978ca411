//! Integer Laurent polynomials in one variable `t`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::de::{self, Deserializer, MapAccess, Visitor};
use serde::ser::{SerializeMap, Serializer};
use serde::{Deserialize, Serialize};

use crate::coeff::Coeff;
use crate::error::{Error, Result};

/// A Laurent polynomial `sum c_e t^e` with exact integer coefficients.
///
/// Terms are kept sorted by exponent and zero coefficients are never stored,
/// so structural equality is polynomial equality.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPoly<C> {
    terms: BTreeMap<i32, C>,
}

impl<C: Coeff> Default for LaurentPoly<C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<C: Coeff> LaurentPoly<C> {
    pub fn zero() -> Self {
        Self { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::monomial(C::one(), 0)
    }

    /// `c t^e`; the zero polynomial when `c == 0`.
    pub fn monomial(c: C, e: i32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        Self { terms }
    }

    /// `t^e`.
    pub fn t_pow(e: i32) -> Self {
        Self::monomial(C::one(), e)
    }

    /// `t - t^{-1}`, the recurring quadratic-relation coefficient.
    pub fn t_minus_t_inv() -> Result<Self> {
        Self::from_terms([(1, C::one()), (-1, C::one().try_neg()?)])
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs, summing
    /// repeated exponents.
    pub fn from_terms<I: IntoIterator<Item = (i32, C)>>(terms: I) -> Result<Self> {
        let mut out = Self::zero();
        for (e, c) in terms {
            out.add_term(e, &c)?;
        }
        Ok(out)
    }

    /// Convenience constructor from machine integers.
    pub fn from_i64_terms(terms: &[(i32, i64)]) -> Result<Self> {
        let mut out = Self::zero();
        for &(e, c) in terms {
            out.add_term(e, &C::from_int(c)?)?;
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// Number of nonzero terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i32, &C)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn coeff(&self, e: i32) -> C {
        self.terms.get(&e).cloned().unwrap_or_else(C::zero)
    }

    pub fn min_exponent(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    /// Adds `c t^e` in place.
    pub fn add_term(&mut self, e: i32, c: &C) -> Result<()> {
        if c.is_zero() {
            return Ok(());
        }
        match self.terms.get_mut(&e) {
            Some(existing) => {
                let sum = existing.try_add(c)?;
                if sum.is_zero() {
                    self.terms.remove(&e);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(e, c.clone());
            }
        }
        Ok(())
    }

    pub fn add_assign(&mut self, other: &Self) -> Result<()> {
        for (e, c) in other.terms() {
            self.add_term(e, c)?;
        }
        Ok(())
    }

    pub fn sub_assign(&mut self, other: &Self) -> Result<()> {
        for (e, c) in other.terms() {
            self.add_term(e, &c.try_neg()?)?;
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let mut out = self.clone();
        out.add_assign(other)?;
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        let mut out = self.clone();
        out.sub_assign(other)?;
        Ok(out)
    }

    pub fn neg(&self) -> Result<Self> {
        let mut terms = BTreeMap::new();
        for (e, c) in self.terms() {
            terms.insert(e, c.try_neg()?);
        }
        Ok(Self { terms })
    }

    /// Convolution product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        let mut out = Self::zero();
        for (ea, ca) in self.terms() {
            for (eb, cb) in other.terms() {
                let e = ea.checked_add(eb).ok_or(Error::ExponentOverflow)?;
                out.add_term(e, &ca.try_mul(cb)?)?;
            }
        }
        Ok(out)
    }

    /// `self + a * b`, accumulated in place.
    pub fn add_product(&mut self, a: &Self, b: &Self) -> Result<()> {
        for (ea, ca) in a.terms() {
            for (eb, cb) in b.terms() {
                let e = ea.checked_add(eb).ok_or(Error::ExponentOverflow)?;
                self.add_term(e, &ca.try_mul(cb)?)?;
            }
        }
        Ok(())
    }

    pub fn scale(&self, c: &C) -> Result<Self> {
        let mut out = Self::zero();
        for (e, x) in self.terms() {
            out.add_term(e, &x.try_mul(c)?)?;
        }
        Ok(out)
    }

    /// Multiplication by `t^k`.
    pub fn shift(&self, k: i32) -> Result<Self> {
        let mut terms = BTreeMap::new();
        for (e, c) in self.terms() {
            terms.insert(e.checked_add(k).ok_or(Error::ExponentOverflow)?, c.clone());
        }
        Ok(Self { terms })
    }

    /// The bar involution `t -> t^{-1}`.
    pub fn bar(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    /// The substitution `t -> -t`: odd-exponent terms change sign.
    pub fn negate_variable(&self) -> Result<Self> {
        let mut terms = BTreeMap::new();
        for (e, c) in self.terms() {
            let c = if e % 2 != 0 { c.try_neg()? } else { c.clone() };
            terms.insert(e, c);
        }
        Ok(Self { terms })
    }

    /// Keeps only the terms whose exponent satisfies `keep`.
    pub fn filter_exponents(&self, keep: impl Fn(i32) -> bool) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| keep(**e))
                .map(|(e, c)| (*e, c.clone()))
                .collect(),
        }
    }

    /// True when every exponent is strictly negative (`t^{-1} Z[t^{-1}]`).
    pub fn in_negative_part(&self) -> bool {
        self.max_exponent().is_none_or(|e| e < 0)
    }

    /// Evaluation at `t = 1` as a coefficient sum.
    pub fn coefficient_sum(&self) -> Result<C> {
        let mut s = C::zero();
        for (_, c) in self.terms() {
            s = s.try_add(c)?;
        }
        Ok(s)
    }

    /// Re-expresses the coefficients in another exact integer type.
    pub fn convert<D: Coeff>(&self) -> Result<LaurentPoly<D>> {
        let mut out = LaurentPoly::<D>::zero();
        for (e, c) in self.terms() {
            let c = c.to_i128().and_then(D::from_i128).ok_or(Error::Overflow)?;
            out.add_term(e, &c)?;
        }
        Ok(out)
    }
}

impl<C: Coeff> fmt::Display for LaurentPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms().enumerate() {
            let negative = c.is_negative();
            let magnitude = if negative {
                C::zero().checked_sub(c).map(|m| m.to_string()).unwrap_or_else(|| {
                    let s = c.to_string();
                    s.trim_start_matches('-').to_string()
                })
            } else {
                c.to_string()
            };
            match (i, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let unit = magnitude == "1";
            match e {
                0 => write!(f, "{magnitude}")?,
                1 if unit => write!(f, "t")?,
                1 => write!(f, "{magnitude}t")?,
                _ if unit => write!(f, "t^{e}")?,
                _ => write!(f, "{magnitude}t^{e}")?,
            }
        }
        Ok(())
    }
}

impl<C: Coeff> fmt::Debug for LaurentPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

impl<C: Coeff> FromStr for LaurentPoly<C> {
    type Err = Error;

    /// Parses the rendering produced by `Display`, e.g. `"t^-3 + 2t^-1 - 1"`.
    fn from_str(s: &str) -> Result<Self> {
        let cleaned: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let cleaned = cleaned.replace('\u{2212}', "-");
        if cleaned.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut out = Self::zero();
        let mut chunks = Vec::new();
        let mut current = String::new();
        for (i, ch) in cleaned.chars().enumerate() {
            let after_caret = current.ends_with('^');
            if (ch == '+' || ch == '-') && i > 0 && !after_caret {
                chunks.push(std::mem::take(&mut current));
            }
            current.push(ch);
        }
        chunks.push(current);
        for chunk in chunks {
            let (negative, body) = match chunk.strip_prefix('-') {
                Some(rest) => (true, rest),
                None => (false, chunk.strip_prefix('+').unwrap_or(&chunk)),
            };
            let bad = || Error::Parse(format!("bad term {chunk:?} in {s:?}"));
            let (coeff_str, exp) = match body.find('t') {
                Some(pos) => {
                    let rest = &body[pos + 1..];
                    let exp = if rest.is_empty() {
                        1
                    } else {
                        rest.strip_prefix('^').ok_or_else(bad)?.parse::<i32>().map_err(|_| bad())?
                    };
                    (&body[..pos], exp)
                }
                None => (body, 0),
            };
            let magnitude: i64 = if coeff_str.is_empty() {
                1
            } else {
                coeff_str.parse().map_err(|_| bad())?
            };
            let c = C::from_int(if negative { -magnitude } else { magnitude })?;
            out.add_term(exp, &c)?;
        }
        Ok(out)
    }
}

impl<C: Coeff + Serialize> Serialize for LaurentPoly<C> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.terms.len()))?;
        for (e, c) in &self.terms {
            map.serialize_entry(&e.to_string(), c)?;
        }
        map.end()
    }
}

impl<'de, C: Coeff + Deserialize<'de>> Deserialize<'de> for LaurentPoly<C> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct PolyVisitor<C>(std::marker::PhantomData<C>);

        impl<'de, C: Coeff + Deserialize<'de>> Visitor<'de> for PolyVisitor<C> {
            type Value = LaurentPoly<C>;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                write!(f, "a map from exponent strings to integer coefficients")
            }

            fn visit_map<A: MapAccess<'de>>(self, mut access: A) -> Result<Self::Value, A::Error> {
                let mut out = LaurentPoly::zero();
                while let Some((key, value)) = access.next_entry::<String, C>()? {
                    let e: i32 = key.parse().map_err(de::Error::custom)?;
                    out.add_term(e, &value).map_err(de::Error::custom)?;
                }
                Ok(out)
            }
        }

        deserializer.deserialize_map(PolyVisitor(std::marker::PhantomData))
    }
}
