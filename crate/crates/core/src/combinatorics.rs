//! Indexing schemes for cosets of `S_K x S_{N-K}` in `S_N` and the maps
//! between them: lattice paths, binary strings, link patterns, Grassmannian
//! permutations and Robinson–Schensted tableaux.
//!
//! All external indices are 1-based.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Longest path supported by the packed representation.
pub const MAX_PATH_LEN: usize = 32;

/// Order convention `ε` of a module: `+` or `-`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }

    pub fn opposite(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

impl FromStr for Sign {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "+" | "plus" => Ok(Sign::Plus),
            "-" | "\u{2212}" | "minus" => Ok(Sign::Minus),
            other => Err(Error::Parse(format!("unknown sign {other:?}"))),
        }
    }
}

/// One step of a lattice path.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Step {
    Up,
    Down,
}

impl Step {
    pub fn delta(self) -> i32 {
        match self {
            Step::Up => 1,
            Step::Down => -1,
        }
    }
}

/// A lattice path from `(0,0)` to `(N, 2K-N)` with `±1` steps.
///
/// Packed as a bitmask (bit `i` set when step `i+1` goes up). The derived
/// ordering compares step sequences lexicographically with `+` before `-`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Path {
    len: u8,
    up: u32,
}

impl Path {
    pub fn from_steps(steps: &[Step]) -> Result<Self> {
        if steps.len() > MAX_PATH_LEN {
            return Err(Error::SizeLimit(format!(
                "paths longer than {MAX_PATH_LEN} steps are not supported"
            )));
        }
        let mut up = 0u32;
        for (i, s) in steps.iter().enumerate() {
            if *s == Step::Up {
                up |= 1 << i;
            }
        }
        Ok(Path { len: steps.len() as u8, up })
    }

    /// The path whose steps are `Up` exactly where `is_up` says so.
    pub fn from_fn(len: usize, is_up: impl Fn(usize) -> bool) -> Result<Self> {
        let steps: Vec<Step> = (0..len)
            .map(|i| if is_up(i) { Step::Up } else { Step::Down })
            .collect();
        Self::from_steps(&steps)
    }

    /// Lowest path of `P_{N,K}`: all down-steps first.
    pub fn lowest(n: usize, k: usize) -> Result<Self> {
        check_shape(n, k)?;
        Self::from_fn(n, |i| i >= n - k)
    }

    /// Highest path of `P_{N,K}`: all up-steps first.
    pub fn highest(n: usize, k: usize) -> Result<Self> {
        check_shape(n, k)?;
        Self::from_fn(n, |i| i < k)
    }

    /// `N`.
    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// `K`, the number of up-steps.
    pub fn ups(&self) -> usize {
        self.up.count_ones() as usize
    }

    /// Step `i`, **1-based**.
    pub fn step(&self, i: usize) -> Step {
        assert!(i >= 1 && i <= self.len(), "step index {i} out of range");
        if self.up >> (i - 1) & 1 == 1 {
            Step::Up
        } else {
            Step::Down
        }
    }

    pub fn steps(&self) -> impl Iterator<Item = Step> + '_ {
        (1..=self.len()).map(|i| self.step(i))
    }

    /// Height after `i` steps, `0 <= i <= N`.
    pub fn height(&self, i: usize) -> i32 {
        let mask = if i >= 32 { u32::MAX } else { (1u32 << i) - 1 };
        let ups = (self.up & mask).count_ones() as i32;
        2 * ups - i as i32
    }

    /// All heights `height(0..=N)`.
    pub fn heights(&self) -> Vec<i32> {
        (0..=self.len()).map(|i| self.height(i)).collect()
    }

    /// The path with steps `i` and `i+1` (1-based) exchanged.
    pub fn swap_steps(&self, i: usize) -> Path {
        let a = (self.up >> (i - 1)) & 1;
        let b = (self.up >> i) & 1;
        let mut up = self.up & !(0b11 << (i - 1));
        up |= b << (i - 1) | a << i;
        Path { len: self.len, up }
    }

    /// The path with the letters at positions `i` and `j` exchanged.
    pub fn swap_positions(&self, i: usize, j: usize) -> Path {
        let a = (self.up >> (i - 1)) & 1;
        let b = (self.up >> (j - 1)) & 1;
        let mut up = self.up & !(1 << (i - 1)) & !(1 << (j - 1));
        up |= b << (i - 1) | a << (j - 1);
        Path { len: self.len, up }
    }

    /// Pointwise `self(i) <= other(i)`.
    pub fn is_below(&self, other: &Path) -> bool {
        self.len == other.len
            && self.ups() == other.ups()
            && (0..=self.len()).all(|i| self.height(i) <= other.height(i))
    }

    /// Rendering as a sign string such as `+--+`.
    pub fn to_sign_string(&self) -> String {
        self.steps()
            .map(|s| if s == Step::Up { '+' } else { '-' })
            .collect()
    }

    /// Rendering as the binary string of convention `sign`.
    pub fn to_binary(&self, sign: Sign) -> BinaryString {
        path_to_string(self, sign)
    }

    /// Half the Hamming distance between two paths of the same shape.
    pub fn half_hamming(&self, other: &Path) -> usize {
        (self.up ^ other.up).count_ones() as usize / 2
    }
}

fn check_shape(n: usize, k: usize) -> Result<()> {
    if k > n {
        return Err(Error::ShapeMismatch(format!("K = {k} exceeds N = {n}")));
    }
    if n > MAX_PATH_LEN {
        return Err(Error::SizeLimit(format!("N = {n} exceeds {MAX_PATH_LEN}")));
    }
    Ok(())
}

impl Ord for Path {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len.cmp(&other.len).then_with(|| {
            for i in 1..=self.len() {
                match (self.step(i), other.step(i)) {
                    (Step::Up, Step::Down) => return Ordering::Less,
                    (Step::Down, Step::Up) => return Ordering::Greater,
                    _ => {}
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Path {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_sign_string())
    }
}

impl fmt::Debug for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Path({})", self.to_sign_string())
    }
}

impl FromStr for Path {
    type Err = Error;

    /// Parses a sign string; accepts the typographic minus `−`.
    fn from_str(s: &str) -> Result<Self> {
        let steps = s
            .trim()
            .chars()
            .filter(|c| !matches!(c, ',' | ' ' | '(' | ')'))
            .map(|c| match c {
                '+' => Ok(Step::Up),
                '-' | '\u{2212}' => Ok(Step::Down),
                other => Err(Error::Parse(format!("bad step {other:?} in {s:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Path::from_steps(&steps)
    }
}

impl Serialize for Path {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_sign_string())
    }
}

impl<'de> Deserialize<'de> for Path {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// All paths of `P_{N,K}` in lexicographic (`+` first) order.
pub fn all_paths(n: usize, k: usize) -> Result<Vec<Path>> {
    check_shape(n, k)?;
    let mut out = Vec::new();
    let mut steps = Vec::with_capacity(n);
    fn rec(n: usize, ups_left: usize, steps: &mut Vec<Step>, out: &mut Vec<Path>) {
        let remaining = n - steps.len();
        if remaining == 0 {
            out.push(Path::from_steps(steps).expect("length checked"));
            return;
        }
        if ups_left > 0 {
            steps.push(Step::Up);
            rec(n, ups_left - 1, steps, out);
            steps.pop();
        }
        if remaining > ups_left {
            steps.push(Step::Down);
            rec(n, ups_left, steps, out);
            steps.pop();
        }
    }
    rec(n, k, &mut steps, &mut out);
    Ok(out)
}

/// A word in `{1,2}^N`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct BinaryString {
    letters: Vec<u8>,
}

impl BinaryString {
    pub fn new(letters: Vec<u8>) -> Result<Self> {
        if let Some(bad) = letters.iter().find(|l| !matches!(l, 1 | 2)) {
            return Err(Error::Parse(format!("letter {bad} is not 1 or 2")));
        }
        Ok(Self { letters })
    }

    /// `1^K 2^{N-K}`, the representative of the identity coset.
    pub fn base(n: usize, k: usize) -> Self {
        let letters = (0..n).map(|i| if i < k { 1 } else { 2 }).collect();
        Self { letters }
    }

    pub fn letters(&self) -> &[u8] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Letter at 1-based position `i`.
    pub fn letter(&self, i: usize) -> u8 {
        self.letters[i - 1]
    }

    pub fn count(&self, letter: u8) -> usize {
        self.letters.iter().filter(|l| **l == letter).count()
    }

    pub fn swap(&self, i: usize, j: usize) -> Self {
        let mut letters = self.letters.clone();
        letters.swap(i - 1, j - 1);
        Self { letters }
    }

    /// Interpret under convention `sign` and return the geometric path.
    pub fn to_path(&self, sign: Sign) -> Result<Path> {
        string_to_path(self, sign)
    }
}

impl fmt::Display for BinaryString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.letters {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl FromStr for BinaryString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let letters = s
            .trim()
            .chars()
            .filter(|c| !matches!(c, ',' | ' ' | '(' | ')'))
            .map(|c| match c {
                '1' => Ok(1),
                '2' => Ok(2),
                other => Err(Error::Parse(format!("bad letter {other:?} in {s:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { letters })
    }
}

/// Step `i` goes up iff (`ε = -` and letter 2) or (`ε = +` and letter 1).
pub fn string_to_path(s: &BinaryString, sign: Sign) -> Result<Path> {
    let up_letter = match sign {
        Sign::Plus => 1,
        Sign::Minus => 2,
    };
    Path::from_fn(s.len(), |i| s.letters[i] == up_letter)
}

pub fn path_to_string(p: &Path, sign: Sign) -> BinaryString {
    let (up, down) = match sign {
        Sign::Plus => (1, 2),
        Sign::Minus => (2, 1),
    };
    let letters = p
        .steps()
        .map(|s| if s == Step::Up { up } else { down })
        .collect();
    BinaryString { letters }
}

/// Noncrossing partial matching of `1..=N` obtained from a path.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LinkPattern {
    /// Pairs `(i, j)`, `i < j`, sorted by opening index.
    pub pairings: Vec<(usize, usize)>,
    pub unpaired: Vec<usize>,
}

impl LinkPattern {
    pub fn len(&self) -> usize {
        2 * self.pairings.len() + self.unpaired.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn contains_pairing(&self, i: usize, j: usize) -> bool {
        self.pairings.binary_search(&(i, j)).is_ok()
    }

    /// Whether the pairings are mutually noncrossing and no unpaired index
    /// is enclosed by a pairing.
    pub fn is_planar(&self) -> bool {
        let crossing = self.pairings.iter().any(|&(i, j)| {
            self.pairings
                .iter()
                .any(|&(k, l)| i < k && k < j && j < l)
        });
        let enclosed = self
            .unpaired
            .iter()
            .any(|&u| self.pairings.iter().any(|&(i, j)| i < u && u < j));
        !crossing && !enclosed
    }
}

/// Parenthesis matching: up-steps open, down-steps close.
pub fn link_pattern(p: &Path) -> LinkPattern {
    let mut stack = Vec::new();
    let mut pairings = Vec::new();
    let mut unpaired = Vec::new();
    for (idx, s) in p.steps().enumerate() {
        let i = idx + 1;
        match s {
            Step::Up => stack.push(i),
            Step::Down => match stack.pop() {
                Some(o) => pairings.push((o, i)),
                None => unpaired.push(i),
            },
        }
    }
    unpaired.extend(stack);
    pairings.sort_unstable();
    unpaired.sort_unstable();
    LinkPattern { pairings, unpaired }
}

/// Number of unit boxes between `lower` and `upper`:
/// `sum_i (upper(i) - lower(i)) / 2`.
pub fn ferrers_box_count(lower: &Path, upper: &Path) -> Result<usize> {
    same_shape(lower, upper)?;
    if !lower.is_below(upper) {
        return Err(Error::NotComparable);
    }
    Ok((0..=lower.len())
        .map(|i| ((upper.height(i) - lower.height(i)) / 2) as usize)
        .sum())
}

pub(crate) fn same_shape(a: &Path, b: &Path) -> Result<()> {
    if a.len() != b.len() || a.ups() != b.ups() {
        return Err(Error::ShapeMismatch(format!(
            "{a} and {b} do not lie in the same P(N,K)"
        )));
    }
    Ok(())
}

/// Length `|α|` of a coset path under convention `sign`: boxes between the
/// path and the minimal path (lowest for `-`, highest for `+`).
pub fn coset_length(p: &Path, sign: Sign) -> usize {
    let (n, k) = (p.len(), p.ups());
    let res = match sign {
        Sign::Minus => ferrers_box_count(&Path::lowest(n, k).expect("shape"), p),
        Sign::Plus => ferrers_box_count(p, &Path::highest(n, k).expect("shape")),
    };
    res.expect("extreme paths bound every path")
}

/// The minimal element of `P_{N,K}` under convention `sign`.
pub fn minimal_path(n: usize, k: usize, sign: Sign) -> Result<Path> {
    match sign {
        Sign::Minus => Path::lowest(n, k),
        Sign::Plus => Path::highest(n, k),
    }
}

/// Coset order `a <= b`: `a` below `b` for `ε = -`, above for `ε = +`.
pub fn path_leq(a: &Path, b: &Path, sign: Sign) -> bool {
    match sign {
        Sign::Minus => a.is_below(b),
        Sign::Plus => b.is_below(a),
    }
}

/// The box-adding move at generator `i` under `sign`, if one exists:
/// a valley becomes a peak for `-`, a peak becomes a valley for `+`.
pub fn box_addition(p: &Path, i: usize, sign: Sign) -> Option<Path> {
    let ascent = match sign {
        Sign::Minus => (Step::Down, Step::Up),
        Sign::Plus => (Step::Up, Step::Down),
    };
    ((p.step(i), p.step(i + 1)) == ascent).then(|| p.swap_steps(i))
}

/// A sequence of generators adding one box at a time from the minimal path
/// to `p`, in application order. Boxes are added in the leftmost available
/// column each time.
pub fn box_word(p: &Path, sign: Sign) -> Vec<usize> {
    let n = p.len();
    let mut current = minimal_path(n, p.ups(), sign).expect("shape");
    let mut word = Vec::new();
    while current != *p {
        let i = (1..n)
            .find(|&i| {
                box_addition(&current, i, sign).is_some_and(|next| match sign {
                    Sign::Minus => next.is_below(p),
                    Sign::Plus => p.is_below(&next),
                })
            })
            .expect("a box can always be added below a larger path");
        current = current.swap_steps(i);
        word.push(i);
    }
    word
}

/// Permutation of `1..=N` in one-line notation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n + 1];
        for &v in &images {
            if v == 0 || v > n || seen[v] {
                return Err(Error::Parse(format!("{images:?} is not a permutation")));
            }
            seen[v] = true;
        }
        Ok(Self { images })
    }

    pub fn identity(n: usize) -> Self {
        Self { images: (1..=n).collect() }
    }

    /// The longest element `w^0 = (N, ..., 1)`.
    pub fn longest(n: usize) -> Self {
        Self { images: (1..=n).rev().collect() }
    }

    /// Longest element of `S_K x S_{N-K}`: `(K, ..., 1, N, ..., K+1)`.
    pub fn longest_parabolic(n: usize, k: usize) -> Self {
        let mut images: Vec<usize> = (1..=k).rev().collect();
        images.extend((k + 1..=n).rev());
        Self { images }
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    /// `σ(i)`, 1-based.
    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1]
    }

    /// Number of inversions.
    pub fn length(&self) -> usize {
        let n = self.len();
        let mut count = 0;
        for i in 0..n {
            for j in i + 1..n {
                if self.images[i] > self.images[j] {
                    count += 1;
                }
            }
        }
        count
    }

    /// `self ∘ other`: `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation {
            images: other.images.iter().map(|&i| self.images[i - 1]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.len()];
        for (i, &v) in self.images.iter().enumerate() {
            images[v - 1] = i + 1;
        }
        Permutation { images }
    }

    /// `s_i ∘ self`: exchanges the values `i` and `i+1`.
    pub fn left_mul_generator(&self, i: usize) -> Permutation {
        let images = self
            .images
            .iter()
            .map(|&v| match v {
                v if v == i => i + 1,
                v if v == i + 1 => i,
                v => v,
            })
            .collect();
        Permutation { images }
    }

    /// `self ∘ s_i`: exchanges the entries at positions `i` and `i+1`.
    pub fn right_mul_generator(&self, i: usize) -> Permutation {
        let mut images = self.images.clone();
        images.swap(i - 1, i);
        Permutation { images }
    }

    /// Whether `|s_i ∘ self| > |self|`, i.e. `i` precedes `i+1`.
    pub fn left_ascent(&self, i: usize) -> bool {
        let inv = self.inverse();
        inv.apply(i) < inv.apply(i + 1)
    }

    /// Positions `i` with `σ(i) > σ(i+1)`.
    pub fn descents(&self) -> Vec<usize> {
        (1..self.len())
            .filter(|&i| self.apply(i) > self.apply(i + 1))
            .collect()
    }

    /// A reduced word `s_{i_1} ... s_{i_l} = self`, from bubble sorting.
    pub fn reduced_word(&self) -> Vec<usize> {
        // Bubble sort self into the identity by left multiplications; the
        // generators used, read in reverse, give the word.
        let mut current = self.clone();
        let mut used = Vec::new();
        'outer: loop {
            for i in 1..self.len() {
                if !current.left_ascent(i) {
                    current = current.left_mul_generator(i);
                    used.push(i);
                    continue 'outer;
                }
            }
            break;
        }
        used
    }

    /// Binary string of the coset `self · (S_K x S_{N-K})`: the letter at
    /// position `self(i)` is 1 for `i <= K` and 2 otherwise.
    pub fn coset_string(&self, k: usize) -> BinaryString {
        let mut letters = vec![2u8; self.len()];
        for i in 1..=k {
            letters[self.apply(i) - 1] = 1;
        }
        BinaryString { letters }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.images.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation{self}")
    }
}

impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let images = s
            .trim()
            .trim_start_matches('(')
            .trim_end_matches(')')
            .split(',')
            .map(|x| {
                x.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad permutation {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Permutation::new(images)
    }
}

/// Shortest representative `σ`: `σ(i)` is the position of the `i`-th 1 for
/// `i <= K`, and `σ(K+j)` the position of the `j`-th 2.
pub fn grassmannian(s: &BinaryString) -> Permutation {
    let ones = (1..=s.len()).filter(|&i| s.letter(i) == 1);
    let twos = (1..=s.len()).filter(|&i| s.letter(i) == 2);
    Permutation {
        images: ones.chain(twos).collect(),
    }
}

/// Longest representative `σ · w̃_0`.
pub fn longest_representative(s: &BinaryString) -> Permutation {
    let k = s.count(1);
    grassmannian(s).compose(&Permutation::longest_parabolic(s.len(), k))
}

/// Young tableau stored row by row.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tableau {
    pub rows: Vec<Vec<usize>>,
}

impl Tableau {
    pub fn shape(&self) -> Vec<usize> {
        self.rows.iter().map(Vec::len).collect()
    }

    pub fn columns(&self) -> Vec<Vec<usize>> {
        let width = self.rows.first().map_or(0, Vec::len);
        (0..width)
            .map(|c| {
                self.rows
                    .iter()
                    .take_while(|r| r.len() > c)
                    .map(|r| r[c])
                    .collect()
            })
            .collect()
    }

    /// Rows weakly decreasing, entries increasing along rows and columns,
    /// content exactly `1..=N`.
    pub fn is_standard(&self) -> bool {
        let shape = self.shape();
        if shape.windows(2).any(|w| w[0] < w[1]) {
            return false;
        }
        let rows_ok = self.rows.iter().all(|r| r.windows(2).all(|w| w[0] < w[1]));
        let cols_ok = self
            .columns()
            .iter()
            .all(|c| c.windows(2).all(|w| w[0] < w[1]));
        let mut content: Vec<usize> = self.rows.iter().flatten().copied().collect();
        content.sort_unstable();
        rows_ok && cols_ok && content.iter().enumerate().all(|(i, &v)| v == i + 1)
    }
}

/// Insertion tableau of Robinson–Schensted row insertion.
pub fn rs_first_tableau(p: &Permutation) -> Tableau {
    let mut rows: Vec<Vec<usize>> = Vec::new();
    for &v in p.images() {
        let mut x = v;
        let mut r = 0;
        loop {
            if r == rows.len() {
                rows.push(vec![x]);
                break;
            }
            let row = &mut rows[r];
            match row.iter().position(|&y| y > x) {
                Some(pos) => {
                    x = std::mem::replace(&mut row[pos], x);
                    r += 1;
                }
                None => {
                    row.push(x);
                    break;
                }
            }
        }
    }
    Tableau { rows }
}

/// Exchanges the letters at the two ends of a pairing of `s`.
pub fn pair_flip(s: &BinaryString, pairing: (usize, usize), sign: Sign) -> Result<BinaryString> {
    let path = string_to_path(s, sign)?;
    let (i, j) = pairing;
    if !link_pattern(&path).contains_pairing(i, j) {
        return Err(Error::NotAPairing(i, j));
    }
    Ok(s.swap(i, j))
}

/// The paths of `P_{N,K}` sorted along a fixed linear extension of the
/// coset order of convention `sign`: by length, ties broken
/// lexicographically on the binary strings of that convention.
#[derive(Clone, Debug)]
pub struct PathSet {
    n: usize,
    k: usize,
    sign: Sign,
    paths: Vec<Path>,
    index: HashMap<Path, usize>,
    lengths: Vec<usize>,
}

impl PartialEq for PathSet {
    fn eq(&self, other: &Self) -> bool {
        self.sign == other.sign && self.paths == other.paths
    }
}

impl Eq for PathSet {}

impl PathSet {
    pub fn new(n: usize, k: usize, sign: Sign) -> Result<Self> {
        let mut keyed: Vec<(usize, BinaryString, Path)> = all_paths(n, k)?
            .into_iter()
            .map(|p| (coset_length(&p, sign), p.to_binary(sign), p))
            .collect();
        keyed.sort();
        let lengths = keyed.iter().map(|(l, _, _)| *l).collect();
        let paths: Vec<Path> = keyed.into_iter().map(|(_, _, p)| p).collect();
        let index = paths.iter().enumerate().map(|(i, p)| (*p, i)).collect();
        Ok(Self { n, k, sign, paths, index, lengths })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    pub fn paths(&self) -> &[Path] {
        &self.paths
    }

    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    pub fn path(&self, i: usize) -> Path {
        self.paths[i]
    }

    pub fn index_of(&self, p: &Path) -> Option<usize> {
        self.index.get(p).copied()
    }

    /// `|α|` under this set's convention.
    pub fn length(&self, i: usize) -> usize {
        self.lengths[i]
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        path_leq(&self.paths[a], &self.paths[b], self.sign)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn path(s: &str) -> Path {
        s.parse().unwrap()
    }

    fn bs(s: &str) -> BinaryString {
        s.parse().unwrap()
    }

    #[test]
    fn string_to_path_examples() {
        assert_eq!(string_to_path(&bs("2112212111"), Sign::Minus).unwrap(), path("+--++-+---"));
        assert_eq!(string_to_path(&bs("1122"), Sign::Plus).unwrap(), path("++--"));
        assert_eq!(string_to_path(&bs("1122"), Sign::Minus).unwrap(), path("--++"));
    }

    #[test]
    fn link_pattern_examples() {
        let lp = link_pattern(&path("+--++-+---"));
        assert_eq!(lp.pairings, vec![(1, 2), (4, 9), (5, 6), (7, 8)]);
        assert_eq!(lp.unpaired, vec![3, 10]);
        let lp = link_pattern(&path("++--"));
        assert_eq!(lp.pairings, vec![(1, 4), (2, 3)]);
        assert!(lp.unpaired.is_empty());
        let lp = link_pattern(&path("--++"));
        assert!(lp.pairings.is_empty());
        assert_eq!(lp.unpaired, vec![1, 2, 3, 4]);
    }

    #[test]
    fn link_pattern_json() {
        let lp = link_pattern(&path("+--++-+---"));
        assert_eq!(
            serde_json::to_string(&lp).unwrap(),
            r#"{"pairings":[[1,2],[4,9],[5,6],[7,8]],"unpaired":[3,10]}"#
        );
    }

    #[test]
    fn ferrers_examples() {
        assert_eq!(ferrers_box_count(&path("+-+-"), &path("+-+-")).unwrap(), 0);
        assert_eq!(ferrers_box_count(&path("-+-+"), &path("+-+-")).unwrap(), 2);
        assert_eq!(ferrers_box_count(&path("-++-+--+"), &path("++++----")).unwrap(), 8);
        assert_eq!(
            ferrers_box_count(&path("-++-"), &path("+--+")),
            Err(Error::NotComparable)
        );
    }

    #[test]
    fn path_leq_examples() {
        let a = path("-+-+");
        assert!(path_leq(&a, &a, Sign::Minus));
        assert!(path_leq(&path("--++"), &path("++--"), Sign::Minus));
        assert!(!path_leq(&path("-++-"), &path("+--+"), Sign::Minus));
        assert!(!path_leq(&path("+--+"), &path("-++-"), Sign::Minus));
        assert!(path_leq(&path("++--"), &path("--++"), Sign::Plus));
    }

    #[test]
    fn grassmannian_examples() {
        let s = bs("2112212111");
        assert_eq!(grassmannian(&s).to_string(), "(2,3,6,8,9,10,1,4,5,7)");
        assert_eq!(longest_representative(&s).to_string(), "(10,9,8,6,3,2,7,5,4,1)");
        assert_eq!(grassmannian(&bs("111222")), Permutation::identity(6));
    }

    #[test]
    fn rs_examples() {
        let t = rs_first_tableau(&"(2,3,6,8,9,10,1,4,5,7)".parse().unwrap());
        assert_eq!(t.rows, vec![vec![1, 3, 4, 5, 7, 10], vec![2, 6, 8, 9]]);
        let t = rs_first_tableau(&Permutation::identity(5));
        assert_eq!(t.rows, vec![vec![1, 2, 3, 4, 5]]);
        let t = rs_first_tableau(&"(10,9,8,6,3,2,7,5,4,1)".parse().unwrap());
        assert_eq!(t.columns(), vec![vec![1, 2, 3, 6, 8, 9, 10], vec![4, 5, 7]]);
    }

    #[test]
    fn pair_flip_examples() {
        let s = bs("2121");
        assert_eq!(pair_flip(&s, (1, 2), Sign::Minus).unwrap(), bs("1221"));
        assert_eq!(pair_flip(&s, (3, 4), Sign::Minus).unwrap(), bs("2112"));
        assert_eq!(pair_flip(&s, (2, 3), Sign::Minus), Err(Error::NotAPairing(2, 3)));
    }

    #[test]
    fn flipping_twice_is_identity() {
        // 2121 -> 1221 via (1,2); in 1221 the same positions are -,+ ... the
        // flipped pair is no longer a pairing, so undo via the raw swap.
        let s = bs("2121");
        let f = pair_flip(&s, (1, 2), Sign::Minus).unwrap();
        assert_eq!(f.swap(1, 2), s);
    }

    #[test]
    fn coset_lengths_and_order_n4() {
        let set = PathSet::new(4, 2, Sign::Minus).unwrap();
        let order: Vec<String> = set.paths().iter().map(|p| p.to_string()).collect();
        assert_eq!(order, ["--++", "-+-+", "-++-", "+--+", "+-+-", "++--"]);
        let set = PathSet::new(4, 2, Sign::Plus).unwrap();
        let order: Vec<String> = set.paths().iter().map(|p| p.to_string()).collect();
        assert_eq!(order, ["++--", "+-+-", "+--+", "-++-", "-+-+", "--++"]);
        assert_eq!(set.length(5), 4);
    }

    #[test]
    fn grassmannian_length_is_coset_length() {
        for n in 0..=7 {
            for k in 0..=n {
                for p in all_paths(n, k).unwrap() {
                    let s = p.to_binary(Sign::Minus);
                    assert_eq!(grassmannian(&s).length(), coset_length(&p, Sign::Minus));
                    let s = p.to_binary(Sign::Plus);
                    assert_eq!(grassmannian(&s).length(), coset_length(&p, Sign::Plus));
                }
            }
        }
    }

    #[test]
    fn box_word_reaches_path() {
        for sign in [Sign::Minus, Sign::Plus] {
            for p in all_paths(6, 3).unwrap() {
                let mut cur = minimal_path(6, 3, sign).unwrap();
                let word = box_word(&p, sign);
                assert_eq!(word.len(), coset_length(&p, sign));
                for i in word {
                    cur = box_addition(&cur, i, sign).unwrap();
                }
                assert_eq!(cur, p);
            }
        }
    }

    #[test]
    fn reduced_word_multiplies_back() {
        let p: Permutation = "(3,1,4,2,5)".parse().unwrap();
        let word = p.reduced_word();
        assert_eq!(word.len(), p.length());
        let mut acc = Permutation::identity(5);
        for &i in word.iter().rev() {
            acc = acc.left_mul_generator(i);
        }
        assert_eq!(acc, p);
    }

    #[test]
    fn coset_string_of_grassmannian() {
        let s = bs("2112212111");
        assert_eq!(grassmannian(&s).coset_string(6), s);
        assert_eq!(longest_representative(&s).coset_string(6), s);
    }

    fn arb_string() -> impl Strategy<Value = BinaryString> {
        prop::collection::vec(1u8..=2, 0..12).prop_map(|l| BinaryString::new(l).unwrap())
    }

    proptest! {
        #[test]
        fn string_path_round_trip(s in arb_string()) {
            for sign in [Sign::Plus, Sign::Minus] {
                let p = string_to_path(&s, sign).unwrap();
                prop_assert_eq!(path_to_string(&p, sign), s.clone());
            }
        }

        #[test]
        fn link_pattern_is_planar_and_counts_match(s in arb_string()) {
            let p = string_to_path(&s, Sign::Plus).unwrap();
            let lp = link_pattern(&p);
            prop_assert!(lp.is_planar());
            prop_assert_eq!(lp.len(), s.len());
            prop_assert_eq!(lp.pairings.len(), (s.len() - lp.unpaired.len()) / 2);
            for &(i, j) in &lp.pairings {
                prop_assert_eq!(p.step(i), Step::Up);
                prop_assert_eq!(p.step(j), Step::Down);
            }
        }

        #[test]
        fn box_counts_split_the_rectangle(s in arb_string()) {
            let p = string_to_path(&s, Sign::Plus).unwrap();
            let (n, k) = (p.len(), p.ups());
            let lo = Path::lowest(n, k).unwrap();
            let hi = Path::highest(n, k).unwrap();
            let total = ferrers_box_count(&lo, &p).unwrap() + ferrers_box_count(&p, &hi).unwrap();
            prop_assert_eq!(total, k * (n - k));
        }

        #[test]
        fn grassmannian_has_at_most_one_descent(s in arb_string()) {
            let k = s.count(1);
            let sigma = grassmannian(&s);
            prop_assert!(sigma.descents().iter().all(|&d| d == k));
            let tab = rs_first_tableau(&sigma);
            prop_assert!(tab.is_standard());
            prop_assert!(tab.rows.len() <= 2);
            let long = rs_first_tableau(&longest_representative(&s));
            prop_assert!(long.is_standard());
            prop_assert!(long.rows.first().map_or(0, Vec::len) <= 2);
        }
    }
}
