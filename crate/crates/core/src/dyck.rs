//! Dyck-strip fillings of the region between two paths, Rules I and II,
//! and the generating functions `Q^{I}` and `Q^{II}`.
//!
//! Everything here is geometric: a region is given by a `lower` and an
//! `upper` path, and the sign conventions are applied by the callers.

use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::coeff::Coeff;
use crate::combinatorics::{same_shape, Path, PathSet, Sign};
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;

/// A unit box centred at `(x, y)`. Serialized as `[x, y]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "(i32, i32)", into = "(i32, i32)")]
pub struct UnitBox {
    pub x: i32,
    pub y: i32,
}

impl UnitBox {
    pub fn new(x: i32, y: i32) -> Self {
        Self { x, y }
    }

    fn offset(self, dx: i32, dy: i32) -> Self {
        Self { x: self.x + dx, y: self.y + dy }
    }

    pub fn below(self) -> Self {
        self.offset(0, -2)
    }

    pub fn above(self) -> Self {
        self.offset(0, 2)
    }

    pub fn north_west(self) -> Self {
        self.offset(-1, 1)
    }

    pub fn north_east(self) -> Self {
        self.offset(1, 1)
    }

    /// The boxes just above, NW and NE.
    pub fn upper_neighbours(self) -> [Self; 3] {
        [self.above(), self.north_west(), self.north_east()]
    }
}

impl From<(i32, i32)> for UnitBox {
    fn from((x, y): (i32, i32)) -> Self {
        Self { x, y }
    }
}

impl From<UnitBox> for (i32, i32) {
    fn from(b: UnitBox) -> Self {
        (b.x, b.y)
    }
}

/// Which stacking rule a configuration must satisfy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Rule {
    I,
    II,
}

/// A strip of boxes with consecutive `x` whose heights trace a Dyck path.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DyckStrip {
    boxes: Vec<UnitBox>,
}

impl DyckStrip {
    pub fn new(boxes: Vec<UnitBox>) -> Result<Self> {
        let first = *boxes
            .first()
            .ok_or_else(|| Error::InvalidConfig("empty strip".into()))?;
        let last = *boxes.last().expect("non-empty");
        let h = first.y;
        let shape_ok = last.y == h
            && boxes.iter().all(|b| b.y >= h)
            && boxes
                .windows(2)
                .all(|w| w[1].x == w[0].x + 1 && (w[1].y - w[0].y).abs() == 1);
        if !shape_ok {
            return Err(Error::InvalidConfig(format!("{boxes:?} is not a Dyck strip")));
        }
        Ok(Self { boxes })
    }

    pub fn boxes(&self) -> &[UnitBox] {
        &self.boxes
    }

    pub fn len(&self) -> usize {
        self.boxes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.boxes.is_empty()
    }

    /// The strip's base height.
    pub fn base(&self) -> i32 {
        self.boxes[0].y
    }
}

/// All boxes strictly between `lower` and `upper`, ordered by `(x, y)`.
pub fn region_boxes(lower: &Path, upper: &Path) -> Result<Vec<UnitBox>> {
    same_shape(lower, upper)?;
    if !lower.is_below(upper) {
        return Err(Error::NotComparable);
    }
    let mut out = Vec::new();
    for x in 1..lower.len() {
        let (lo, hi) = (lower.height(x), upper.height(x));
        let mut y = lo + 1;
        while y < hi {
            out.push(UnitBox::new(x as i32, y));
            y += 2;
        }
    }
    Ok(out)
}

/// A partition of a region into Dyck strips.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct StripConfig {
    pub lower: Path,
    pub upper: Path,
    pub strips: Vec<DyckStrip>,
}

impl StripConfig {
    /// Checks strip shapes and that the strips tile the region exactly.
    pub fn new(lower: Path, upper: Path, mut strips: Vec<DyckStrip>) -> Result<Self> {
        let region: HashSet<UnitBox> = region_boxes(&lower, &upper)?.into_iter().collect();
        let mut seen = HashSet::new();
        for s in &strips {
            DyckStrip::new(s.boxes.clone())?;
            for b in &s.boxes {
                if !region.contains(b) {
                    return Err(Error::InvalidConfig(format!("box {b:?} outside the region")));
                }
                if !seen.insert(*b) {
                    return Err(Error::InvalidConfig(format!("box {b:?} covered twice")));
                }
            }
        }
        if seen.len() != region.len() {
            return Err(Error::InvalidConfig("strips do not cover the region".into()));
        }
        strips.sort();
        Ok(Self { lower, upper, strips })
    }

    pub fn strip_count(&self) -> usize {
        self.strips.len()
    }

    pub fn box_count(&self) -> usize {
        self.strips.iter().map(DyckStrip::len).sum()
    }

    fn owners(&self) -> HashMap<UnitBox, usize> {
        self.strips
            .iter()
            .enumerate()
            .flat_map(|(i, s)| s.boxes.iter().map(move |b| (*b, i)))
            .collect()
    }

    pub fn satisfies(&self, rule: Rule) -> bool {
        match rule {
            Rule::I => satisfies_rule_i(self),
            Rule::II => satisfies_rule_ii(self),
        }
    }

    /// Text picture: strips labelled `a`, `b`, ...; path vertices `*`.
    pub fn render_ascii(&self) -> String {
        let owners = self.owners();
        let n = self.lower.len();
        let ymin = (0..=n).map(|x| self.lower.height(x)).min().unwrap_or(0);
        let ymax = (0..=n).map(|x| self.upper.height(x)).max().unwrap_or(0);
        let mut out = String::new();
        for y in (ymin..=ymax).rev() {
            let mut line = String::new();
            for x in 0..=n {
                let c = if let Some(&i) = owners.get(&UnitBox::new(x as i32, y)) {
                    strip_label(i)
                } else if self.lower.height(x) == y || self.upper.height(x) == y {
                    '*'
                } else {
                    ' '
                };
                line.push(c);
            }
            let _ = writeln!(out, "{}", line.trim_end());
        }
        out
    }
}

fn strip_label(i: usize) -> char {
    const LABELS: &[u8] = b"abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789";
    LABELS.get(i).map_or('#', |&c| c as char)
}

/// For all ordered pairs `(D, D')`: if a box of `D` is just below a box of
/// `D'`, the box just below every box of `D'` is in `D`.
pub fn satisfies_rule_i(c: &StripConfig) -> bool {
    let owners = c.owners();
    let n = c.strips.len();
    (0..n).all(|d| {
        (0..n).filter(|&e| e != d).all(|e| {
            let strip = &c.strips[e].boxes;
            let below_in_d = |b: &UnitBox| owners.get(&b.below()) == Some(&d);
            !strip.iter().any(below_in_d) || strip.iter().all(below_in_d)
        })
    })
}

/// For all ordered pairs `(D, D')`: if a box of `D'` is just above, NW or
/// NE of a box of `D`, every such neighbour of every box of `D` lies in
/// `D ∪ D'`.
pub fn satisfies_rule_ii(c: &StripConfig) -> bool {
    let owners = c.owners();
    let n = c.strips.len();
    (0..n).all(|d| {
        (0..n).filter(|&e| e != d).all(|e| {
            let nbrs = || c.strips[d].boxes.iter().flat_map(|b| b.upper_neighbours());
            let triggered = nbrs().any(|b| owners.get(&b) == Some(&e));
            !triggered || nbrs().all(|b| matches!(owners.get(&b), Some(&o) if o == d || o == e))
        })
    })
}

const NONE: usize = usize::MAX;

/// Index structure for one region.
struct Region {
    boxes: Vec<UnitBox>,
    index: HashMap<UnitBox, usize>,
    below: Vec<usize>,
    upper_nbrs: Vec<[usize; 3]>,
}

impl Region {
    fn new(lower: &Path, upper: &Path) -> Result<Self> {
        let boxes = region_boxes(lower, upper)?;
        let index: HashMap<UnitBox, usize> = boxes.iter().enumerate().map(|(i, b)| (*b, i)).collect();
        let look = |b: UnitBox| index.get(&b).copied().unwrap_or(NONE);
        let below = boxes.iter().map(|b| look(b.below())).collect();
        let upper_nbrs = boxes
            .iter()
            .map(|b| b.upper_neighbours().map(look))
            .collect();
        Ok(Self { boxes, index, below, upper_nbrs })
    }
}

/// Backtracking enumerator. Strips are grown from the leftmost-lowest
/// uncovered box; with `prune` set, each strip is checked against every
/// earlier strip as soon as it closes, which decides the rule exactly.
struct Enumerator<'a, F> {
    region: &'a Region,
    owner: Vec<usize>,
    strips: Vec<Vec<usize>>,
    rule: Option<Rule>,
    prune: bool,
    visit: F,
}

impl<F: FnMut(&[Vec<usize>])> Enumerator<'_, F> {
    fn run(&mut self) {
        let Some(start) = self.owner.iter().position(|&o| o == NONE) else {
            (self.visit)(&self.strips);
            return;
        };
        let id = self.strips.len();
        self.owner[start] = id;
        let mut current = vec![start];
        self.grow(&mut current, self.region.boxes[start].y);
        self.owner[start] = NONE;
    }

    fn grow(&mut self, current: &mut Vec<usize>, base: i32) {
        let id = self.strips.len();
        let last = self.region.boxes[*current.last().expect("non-empty")];
        if last.y == base {
            self.strips.push(current.clone());
            let ok = match (self.prune, self.rule) {
                (true, Some(rule)) => self.new_strip_ok(rule),
                _ => true,
            };
            if ok {
                self.run();
            }
            self.strips.pop();
        }
        for dy in [1, -1] {
            let next = last.offset(1, dy);
            if next.y < base {
                continue;
            }
            if let Some(&i) = self.region.index.get(&next) {
                if self.owner[i] == NONE {
                    self.owner[i] = id;
                    current.push(i);
                    self.grow(current, base);
                    current.pop();
                    self.owner[i] = NONE;
                }
            }
        }
    }

    fn new_strip_ok(&self, rule: Rule) -> bool {
        let new = self.strips.len() - 1;
        (0..new).all(|old| self.pair_ok(rule, old, new) && self.pair_ok(rule, new, old))
    }

    fn owned_by(&self, i: usize, d: usize) -> bool {
        i != NONE && self.owner[i] == d
    }

    fn pair_ok(&self, rule: Rule, d: usize, e: usize) -> bool {
        match rule {
            Rule::I => {
                let strip = &self.strips[e];
                let hit = |&b: &usize| self.owned_by(self.region.below[b], d);
                !strip.iter().any(hit) || strip.iter().all(hit)
            }
            Rule::II => {
                let nbrs = || self.strips[d].iter().flat_map(|&b| self.region.upper_nbrs[b]);
                !nbrs().any(|i| self.owned_by(i, e))
                    || nbrs().all(|i| self.owned_by(i, d) || self.owned_by(i, e))
            }
        }
    }
}

fn enumerate_with(
    lower: &Path,
    upper: &Path,
    rule: Option<Rule>,
    prune: bool,
    mut visit: impl FnMut(&Region, &[Vec<usize>]),
) -> Result<()> {
    let region = Region::new(lower, upper)?;
    let mut e = Enumerator {
        region: &region,
        owner: vec![NONE; region.boxes.len()],
        strips: Vec::new(),
        rule,
        prune,
        visit: |strips: &[Vec<usize>]| visit(&region, strips),
    };
    e.run();
    Ok(())
}

fn to_config(lower: &Path, upper: &Path, region: &Region, strips: &[Vec<usize>]) -> StripConfig {
    let mut strips: Vec<DyckStrip> = strips
        .iter()
        .map(|s| DyckStrip { boxes: s.iter().map(|&i| region.boxes[i]).collect() })
        .collect();
    strips.sort();
    StripConfig { lower: *lower, upper: *upper, strips }
}

/// Every partition of the region into Dyck strips, with no rule applied.
pub fn all_partitions(lower: &Path, upper: &Path) -> Result<Vec<StripConfig>> {
    let mut out = Vec::new();
    enumerate_with(lower, upper, None, false, |r, s| out.push(to_config(lower, upper, r, s)))?;
    Ok(out)
}

/// Every configuration satisfying `rule`, enumerated with pruning.
pub fn configurations(lower: &Path, upper: &Path, rule: Rule) -> Result<Vec<StripConfig>> {
    let mut out = Vec::new();
    enumerate_with(lower, upper, Some(rule), true, |r, s| out.push(to_config(lower, upper, r, s)))?;
    Ok(out)
}

/// Histogram of strip counts over configurations satisfying `rule`.
fn strip_count_histogram(lower: &Path, upper: &Path, rule: Rule) -> Result<HashMap<usize, u64>> {
    let mut hist = HashMap::new();
    enumerate_with(lower, upper, Some(rule), true, |_, s| *hist.entry(s.len()).or_insert(0) += 1)?;
    Ok(hist)
}

fn histogram_poly<C: Coeff>(hist: &HashMap<usize, u64>) -> Result<LaurentPoly<C>> {
    let mut p = LaurentPoly::zero();
    for (&strips, &count) in hist {
        let c = C::from_u64(count).ok_or(Error::Overflow)?;
        p.add_term(-(strips as i32), &c)?;
    }
    Ok(p)
}

/// `Σ t^{-|D|}` over Rule I configurations; zero if the paths cross.
pub fn q_rule_i<C: Coeff>(lower: &Path, upper: &Path) -> Result<LaurentPoly<C>> {
    same_shape(lower, upper)?;
    if !lower.is_below(upper) {
        return Ok(LaurentPoly::zero());
    }
    histogram_poly(&strip_count_histogram(lower, upper, Rule::I)?)
}

/// `t^{-|D|}` for the Rule II configuration if there is one, else zero.
pub fn q_rule_ii<C: Coeff>(lower: &Path, upper: &Path) -> Result<LaurentPoly<C>> {
    same_shape(lower, upper)?;
    if !lower.is_below(upper) {
        return Ok(LaurentPoly::zero());
    }
    let hist = strip_count_histogram(lower, upper, Rule::II)?;
    if hist.values().sum::<u64>() > 1 {
        return Err(Error::Inconsistent(format!(
            "more than one Rule II configuration between {lower} and {upper}"
        )));
    }
    histogram_poly(&hist)
}

/// `Q^{I,-}` or `Q^{II,-}` as a matrix over `P_{N,K}` in `ε = -` order.
fn q_matrix<C: Coeff>(paths: &PathSet, rule: Rule) -> Result<Vec<Vec<LaurentPoly<C>>>> {
    let size = paths.len();
    let mut m = vec![vec![LaurentPoly::zero(); size]; size];
    for a in 0..size {
        for b in 0..size {
            if paths.leq(a, b) {
                let (lo, hi) = (paths.path(a), paths.path(b));
                m[a][b] = match rule {
                    Rule::I => q_rule_i(&lo, &hi)?,
                    Rule::II => q_rule_ii(&lo, &hi)?,
                };
            }
        }
    }
    Ok(m)
}

/// `Σ_β Q^{I,-}_{α,β} Q^{II,-}_{β,γ} (-1)^{|β|+|γ|} = δ_{α,γ}` on `P_{N,K}`.
pub fn verify_inversion(n: usize, k: usize) -> Result<bool> {
    let paths = PathSet::new(n, k, Sign::Minus)?;
    let qi = q_matrix::<i64>(&paths, Rule::I)?;
    let mut qii = q_matrix::<i64>(&paths, Rule::II)?;
    for (b, row) in qii.iter_mut().enumerate() {
        for (g, e) in row.iter_mut().enumerate() {
            if (paths.length(b) + paths.length(g)) % 2 == 1 {
                *e = e.neg()?;
            }
        }
    }
    let prod = crate::canonical::mat_mul(&qi, &qii)?;
    Ok(crate::canonical::is_identity(&prod))
}
