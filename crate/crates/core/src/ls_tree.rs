//! Lascoux–Schützenberger trees with capacities, their labellings, and the
//! bijection from labellings to Rule I Dyck-strip configurations.
//!
//! Strings are read in convention `+`. The tree of a pair is built from the
//! link pattern of the lower path: each pairing is an edge, and an edge is
//! the parent of the pairings it immediately encloses.

use std::collections::HashMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::coeff::Coeff;
use crate::combinatorics::{ferrers_box_count, link_pattern, same_shape, BinaryString, Path, Sign};
use crate::dyck::{region_boxes, DyckStrip, StripConfig, UnitBox};
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeEdge {
    pub pairing: (usize, usize),
    pub parent: Option<usize>,
    pub children: Vec<usize>,
    /// Set on leaves only.
    pub capacity: Option<usize>,
}

impl TreeEdge {
    pub fn is_leaf(&self) -> bool {
        self.children.is_empty()
    }
}

/// `A(β/α)`: edges are listed by opening index, so parents precede children.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CapTree {
    lower: Path,
    upper: Path,
    edges: Vec<TreeEdge>,
}

/// One non-negative integer per edge, in the tree's edge order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Labelling {
    pub labels: Vec<usize>,
}

impl Labelling {
    pub fn total(&self) -> usize {
        self.labels.iter().sum()
    }
}

/// Half the height gap between the paths at vertex `k`.
pub fn geometric_capacity(lower: &Path, upper: &Path, k: usize) -> usize {
    ((upper.height(k) - lower.height(k)) / 2) as usize
}

/// `‖v'α‖₁ − ‖w'1‖₁` for the adjacent `12` of `w` at positions `k, k+1`,
/// with prefixes of equal length.
pub fn string_capacity(lower: &BinaryString, upper: &BinaryString, k: usize) -> usize {
    let ones = |s: &BinaryString| s.letters()[..k].iter().filter(|&&l| l == 1).count();
    ones(upper) - ones(lower)
}

pub fn build_tree(lower: &Path, upper: &Path) -> Result<CapTree> {
    same_shape(lower, upper)?;
    if !lower.is_below(upper) {
        return Err(Error::NotComparable);
    }
    let pairings = link_pattern(lower).pairings;
    let mut edges: Vec<TreeEdge> = pairings
        .iter()
        .map(|&pairing| TreeEdge { pairing, parent: None, children: Vec::new(), capacity: None })
        .collect();
    // Sorted by opening index, so the innermost enclosing pairing is the
    // last enclosing one seen.
    for e in 0..edges.len() {
        let (i, j) = edges[e].pairing;
        let parent = (0..e).rev().find(|&f| {
            let (a, b) = edges[f].pairing;
            a < i && j < b
        });
        edges[e].parent = parent;
        if let Some(f) = parent {
            edges[f].children.push(e);
        }
    }
    let (ls, us) = (lower.to_binary(Sign::Plus), upper.to_binary(Sign::Plus));
    for edge in edges.iter_mut().filter(|e| e.children.is_empty()) {
        let k = edge.pairing.0;
        let geometric = geometric_capacity(lower, upper, k);
        if string_capacity(&ls, &us, k) != geometric {
            return Err(Error::Inconsistent(format!("capacity formulas disagree at {k}")));
        }
        edge.capacity = Some(geometric);
    }
    Ok(CapTree { lower: *lower, upper: *upper, edges })
}

impl CapTree {
    pub fn lower(&self) -> &Path {
        &self.lower
    }

    pub fn upper(&self) -> &Path {
        &self.upper
    }

    pub fn edges(&self) -> &[TreeEdge] {
        &self.edges
    }

    pub fn edge_of(&self, pairing: (usize, usize)) -> Option<usize> {
        self.edges.iter().position(|e| e.pairing == pairing)
    }

    /// Smallest leaf capacity at or below each edge.
    fn bounds(&self) -> Vec<usize> {
        let mut bound = vec![usize::MAX; self.edges.len()];
        for e in (0..self.edges.len()).rev() {
            let edge = &self.edges[e];
            bound[e] = match edge.capacity {
                Some(c) => c,
                None => edge.children.iter().map(|&c| bound[c]).min().expect("internal edge"),
            };
        }
        bound
    }

    /// Leaf labels within capacity and labels non-increasing toward the root.
    pub fn is_valid(&self, nu: &Labelling) -> bool {
        self.is_monotone(nu)
            && self
                .edges
                .iter()
                .zip(&nu.labels)
                .all(|(e, &l)| e.capacity.is_none_or(|c| l <= c))
    }

    fn is_monotone(&self, nu: &Labelling) -> bool {
        nu.labels.len() == self.edges.len()
            && self
                .edges
                .iter()
                .zip(&nu.labels)
                .all(|(e, &l)| e.parent.is_none_or(|p| nu.labels[p] <= l))
    }

    pub fn to_json(&self) -> serde_json::Value {
        fn node(t: &CapTree, e: usize) -> serde_json::Value {
            let edge = &t.edges[e];
            let children: Vec<_> = edge.children.iter().map(|&c| node(t, c)).collect();
            let mut obj = serde_json::json!({ "pairing": [edge.pairing.0, edge.pairing.1] });
            if let Some(c) = edge.capacity {
                obj["capacity"] = c.into();
            }
            obj["children"] = children.into();
            obj
        }
        let roots: Vec<_> = (0..self.edges.len())
            .filter(|&e| self.edges[e].parent.is_none())
            .map(|e| node(self, e))
            .collect();
        serde_json::json!({ "children": roots })
    }

    /// Indented outline, one edge per line, with labels if given.
    pub fn render_text(&self, nu: Option<&Labelling>) -> String {
        fn walk(t: &CapTree, e: usize, depth: usize, nu: Option<&Labelling>, out: &mut String) {
            let edge = &t.edges[e];
            let _ = write!(out, "{}({},{})", "  ".repeat(depth + 1), edge.pairing.0, edge.pairing.1);
            if let Some(c) = edge.capacity {
                let _ = write!(out, " cap={c}");
            }
            if let Some(nu) = nu {
                let _ = write!(out, " n={}", nu.labels[e]);
            }
            out.push('\n');
            for &c in &edge.children {
                walk(t, c, depth + 1, nu, out);
            }
        }
        let mut out = String::from("root\n");
        for e in (0..self.edges.len()).filter(|&e| self.edges[e].parent.is_none()) {
            walk(self, e, 0, nu, &mut out);
        }
        out
    }
}

/// All labellings, parents assigned before children.
pub fn enumerate_labellings(t: &CapTree) -> Vec<Labelling> {
    fn rec(t: &CapTree, bound: &[usize], e: usize, labels: &mut Vec<usize>, out: &mut Vec<Labelling>) {
        if e == t.edges.len() {
            out.push(Labelling { labels: labels.clone() });
            return;
        }
        let lo = t.edges[e].parent.map_or(0, |p| labels[p]);
        for l in lo..=bound[e] {
            labels.push(l);
            rec(t, bound, e + 1, labels, out);
            labels.pop();
        }
    }
    let bound = t.bounds();
    let mut out = Vec::new();
    rec(t, &bound, 0, &mut Vec::with_capacity(t.edges.len()), &mut out);
    out
}

/// `t^{-boxes} Σ_ν t^{2Σ(ν)}`; zero when the paths cross.
pub fn ls_polynomial<C: Coeff>(lower: &Path, upper: &Path) -> Result<LaurentPoly<C>> {
    same_shape(lower, upper)?;
    if !lower.is_below(upper) {
        return Ok(LaurentPoly::zero());
    }
    let boxes = ferrers_box_count(lower, upper)? as i32;
    let tree = build_tree(lower, upper)?;
    let mut p = LaurentPoly::zero();
    for nu in enumerate_labellings(&tree) {
        p.add_term(2 * nu.total() as i32 - boxes, &C::one())?;
    }
    Ok(p)
}

/// `n'(p(e)) = n(e) − n(parent)`, or `n(e)` for edges at the root.
pub fn transfer_labels(t: &CapTree, nu: &Labelling) -> Result<Vec<((usize, usize), usize)>> {
    if !t.is_monotone(nu) {
        return Err(Error::InvalidLabelling(format!("{:?} increases toward the root", nu.labels)));
    }
    Ok(t.edges
        .iter()
        .enumerate()
        .map(|(e, edge)| {
            let parent = edge.parent.map_or(0, |p| nu.labels[p]);
            (edge.pairing, nu.labels[e] - parent)
        })
        .collect())
}

/// Inverse of [`transfer_labels`]: sums arc labels along root paths.
pub fn labels_from_arcs(t: &CapTree, arcs: &HashMap<(usize, usize), usize>) -> Labelling {
    let mut labels = vec![0; t.edges.len()];
    for (e, edge) in t.edges.iter().enumerate() {
        let own = arcs.get(&edge.pairing).copied().unwrap_or(0);
        labels[e] = own + edge.parent.map_or(0, |p| labels[p]);
    }
    Labelling { labels }
}

fn find(parent: &mut [usize], mut i: usize) -> usize {
    while parent[i] != i {
        parent[i] = parent[parent[i]];
        i = parent[i];
    }
    i
}

/// Stacks `n'(p)` Dyck paths over each pairing `p` of the lower path, above
/// the layers of the pairings enclosing it, merges paths that share a box,
/// and fills the rest of the region with single boxes.
pub fn labelling_to_config(lower: &Path, upper: &Path, nu: &Labelling) -> Result<StripConfig> {
    let tree = build_tree(lower, upper)?;
    if !tree.is_valid(nu) {
        return Err(Error::InvalidLabelling(format!("{:?} is not a labelling", nu.labels)));
    }
    let arcs = transfer_labels(&tree, nu)?;
    let region = region_boxes(lower, upper)?;
    let index: HashMap<UnitBox, usize> = region.iter().enumerate().map(|(i, b)| (*b, i)).collect();
    let mut parent: Vec<usize> = (0..region.len()).collect();
    let mut used = vec![false; region.len()];
    for (e, &(pairing, count)) in arcs.iter().enumerate() {
        let (i, j) = pairing;
        let below = nu.labels[e] - count;
        for layer in 1..=count {
            let mut prev: Option<usize> = None;
            for x in i - 1..=j {
                let y = lower.height(x) + 2 * (below + layer) as i32 - 1;
                let b = *index.get(&UnitBox::new(x as i32, y)).ok_or_else(|| {
                    Error::Inconsistent(format!("layer box ({x}, {y}) leaves the region"))
                })?;
                used[b] = true;
                if let Some(a) = prev {
                    let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                    parent[rb] = ra;
                }
                prev = Some(b);
            }
        }
    }
    let mut groups: HashMap<usize, Vec<UnitBox>> = HashMap::new();
    for b in 0..region.len() {
        let root = if used[b] { find(&mut parent, b) } else { b };
        groups.entry(root).or_default().push(region[b]);
    }
    let strips = groups
        .into_values()
        .map(|mut boxes| {
            boxes.sort();
            DyckStrip::new(boxes)
        })
        .collect::<Result<Vec<_>>>()?;
    StripConfig::new(*lower, *upper, strips)
}

/// Inverse of [`labelling_to_config`]. Each non-singleton strip is cut where
/// it touches its base height; a piece from `x = a` to `x = b` is one layer
/// of the pairing `(a+1, b)`.
pub fn config_to_labelling(c: &StripConfig) -> Result<Labelling> {
    let tree = build_tree(&c.lower, &c.upper)?;
    let mut arcs: HashMap<(usize, usize), usize> = HashMap::new();
    for strip in c.strips.iter().filter(|s| s.len() > 1) {
        let base = strip.base();
        let touches: Vec<&UnitBox> = strip.boxes().iter().filter(|b| b.y == base).collect();
        for w in touches.windows(2) {
            let pairing = ((w[0].x + 1) as usize, w[1].x as usize);
            if tree.edge_of(pairing).is_none() {
                return Err(Error::InvalidConfig(format!(
                    "strip piece over {pairing:?} is not a pairing of {}",
                    c.lower
                )));
            }
            *arcs.entry(pairing).or_insert(0) += 1;
        }
    }
    let nu = labels_from_arcs(&tree, &arcs);
    if !tree.is_valid(&nu) {
        return Err(Error::InvalidConfig("layers exceed a capacity".into()));
    }
    Ok(nu)
}

/// An edge named by its pairing, with the pairing of its parent.
pub type TreeLink = ((usize, usize), Option<(usize, usize)>);

/// Edges of `A(w)` from the recursive string rules, as
/// `(pairing, parent pairing)`. An unmatched leading 1 is dropped like a
/// leading 2.

pub fn recursive_tree(w: &BinaryString) -> Vec<TreeLink> {
    fn rec(
        letters: &[u8],
        offset: usize,
        parent: Option<(usize, usize)>,
        out: &mut Vec<TreeLink>,
    ) {
        let Some(&first) = letters.first() else { return };
        if first == 2 {
            return rec(&letters[1..], offset + 1, parent, out);
        }
        if letters.last() == Some(&1) {
            return rec(&letters[..letters.len() - 1], offset, parent, out);
        }
        let mut depth = 0i32;
        let close = letters.iter().position(|&l| {
            depth += if l == 1 { 1 } else { -1 };
            depth == 0
        });
        match close {
            None => rec(&letters[1..], offset + 1, parent, out),
            Some(j) => {
                let pairing = (offset + 1, offset + j + 1);
                out.push((pairing, parent));
                rec(&letters[1..j], offset + 1, Some(pairing), out);
                rec(&letters[j + 1..], offset + j + 1, parent, out);
            }
        }
    }
    let mut out = Vec::new();
    rec(w.letters(), 0, None, &mut out);
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::{all_paths, string_to_path};
    use crate::dyck::{configurations, Rule};
    use crate::Poly;

    fn path(s: &str) -> Path {
        s.parse().unwrap()
    }

    fn plus(s: &str) -> Path {
        string_to_path(&s.parse::<BinaryString>().unwrap(), Sign::Plus).unwrap()
    }

    fn eight_step_pair() -> (Path, Path) {
        (path("-++-+--+"), path("++++----"))
    }

    #[test]
    fn figure_tree_shape() {
        let lower = plus("12112122");
        let tree = build_tree(&lower, &Path::highest(8, 4).unwrap()).unwrap();
        let shape: Vec<_> = tree
            .edges()
            .iter()
            .map(|e| (e.pairing, e.parent.map(|p| tree.edges()[p].pairing)))
            .collect();
        assert_eq!(
            shape,
            vec![((1, 2), None), ((3, 8), None), ((4, 5), Some((3, 8))), ((6, 7), Some((3, 8)))]
        );
    }

    #[test]
    fn eight_step_tree_and_labellings() {
        let (lower, upper) = eight_step_pair();
        let tree = build_tree(&lower, &upper).unwrap();
        let caps: Vec<_> = tree.edges().iter().map(|e| (e.pairing, e.capacity)).collect();
        assert_eq!(caps, vec![((2, 7), None), ((3, 4), Some(1)), ((5, 6), Some(1))]);
        let mut got: Vec<Vec<usize>> = enumerate_labellings(&tree).into_iter().map(|l| l.labels).collect();
        got.sort();
        // Edge order is (2,7), (3,4), (5,6).
        let mut want = vec![vec![0, 0, 0], vec![0, 1, 0], vec![0, 0, 1], vec![0, 1, 1], vec![1, 1, 1]];
        want.sort();
        assert_eq!(got, want);
        assert_eq!(
            ls_polynomial::<i64>(&lower, &upper).unwrap(),
            "t^-8 + 2t^-6 + t^-4 + t^-2".parse::<Poly>().unwrap()
        );
    }

    #[test]
    fn equal_paths_have_zero_capacities() {
        let p = path("+-++--+-");
        let tree = build_tree(&p, &p).unwrap();
        assert!(tree.edges().iter().filter(|e| e.is_leaf()).all(|e| e.capacity == Some(0)));
        assert_eq!(enumerate_labellings(&tree).len(), 1);
        assert!(ls_polynomial::<i64>(&p, &p).unwrap().is_one());
    }

    #[test]
    fn single_leaf_counts() {
        // A lower path whose only pairing is (3,4).
        let lower = path("--+-++");
        let upper = path("+++---");
        let tree = build_tree(&lower, &upper).unwrap();
        assert_eq!(tree.edges().len(), 1);
        let c = tree.edges()[0].capacity.unwrap();
        assert_eq!(enumerate_labellings(&tree).len(), c + 1);
    }

    #[test]
    fn four_step_entry() {
        let p = ls_polynomial::<i64>(&path("-+-+"), &path("++--")).unwrap();
        assert_eq!(p, "t^-3 + t^-1".parse::<Poly>().unwrap());
    }

    #[test]
    fn transfer_example() {
        let lower = plus("12112122");
        let tree = build_tree(&lower, &Path::highest(8, 4).unwrap()).unwrap();
        // Edge order (1,2), (3,8), (4,5), (6,7).
        let nu = Labelling { labels: vec![1, 1, 2, 1] };
        let arcs = transfer_labels(&tree, &nu).unwrap();
        assert_eq!(arcs, vec![((1, 2), 1), ((3, 8), 1), ((4, 5), 1), ((6, 7), 0)]);
        let map: HashMap<_, _> = arcs.into_iter().collect();
        assert_eq!(labels_from_arcs(&tree, &map), nu);
        let zero = Labelling { labels: vec![0; 4] };
        assert!(transfer_labels(&tree, &zero).unwrap().iter().all(|(_, n)| *n == 0));
        let bad = Labelling { labels: vec![0, 2, 1, 2] };
        assert!(transfer_labels(&tree, &bad).is_err());
    }

    #[test]
    fn zero_labelling_gives_singletons() {
        let (lower, upper) = eight_step_pair();
        let c = labelling_to_config(&lower, &upper, &Labelling { labels: vec![0, 0, 0] }).unwrap();
        assert_eq!(c.strip_count(), 8);
    }

    #[test]
    fn full_labelling_gives_two_strips() {
        let (lower, upper) = eight_step_pair();
        let c = labelling_to_config(&lower, &upper, &Labelling { labels: vec![1, 1, 1] }).unwrap();
        assert_eq!(c.strip_count(), 2);
        assert!(c.strips.iter().any(|s| s.len() == 7));
    }

    #[test]
    fn bijection_on_eight_step_example() {
        let (lower, upper) = eight_step_pair();
        let tree = build_tree(&lower, &upper).unwrap();
        let mut images: Vec<_> = enumerate_labellings(&tree)
            .iter()
            .map(|nu| {
                let c = labelling_to_config(&lower, &upper, nu).unwrap();
                assert_eq!(&config_to_labelling(&c).unwrap(), nu);
                c.strips
            })
            .collect();
        let mut rule_i: Vec<_> = configurations(&lower, &upper, Rule::I)
            .unwrap()
            .into_iter()
            .map(|c| c.strips)
            .collect();
        images.sort();
        rule_i.sort();
        assert_eq!(images, rule_i);
    }

    #[test]
    fn recursive_rules_match_nesting() {
        for n in 0..=9 {
            for k in 0..=n {
                for p in all_paths(n, k).unwrap() {
                    let tree = build_tree(&p, &p).unwrap();
                    let mut shape: Vec<_> = tree
                        .edges()
                        .iter()
                        .map(|e| (e.pairing, e.parent.map(|q| tree.edges()[q].pairing)))
                        .collect();
                    shape.sort();
                    assert_eq!(recursive_tree(&p.to_binary(Sign::Plus)), shape, "at {p}");
                }
            }
        }
    }

    #[test]
    fn tree_json_and_text() {
        let (lower, upper) = eight_step_pair();
        let tree = build_tree(&lower, &upper).unwrap();
        assert_eq!(
            tree.to_json().to_string(),
            r#"{"children":[{"children":[{"capacity":1,"children":[],"pairing":[3,4]},{"capacity":1,"children":[],"pairing":[5,6]}],"pairing":[2,7]}]}"#
        );
        assert_eq!(tree.render_text(None), "root\n  (2,7)\n    (3,4) cap=1\n    (5,6) cap=1\n");
    }
}
