//! The level-1 perfect crystals `B^{1,1}`, the reversed type-A variant, the
//! finite walk graphs obtained by deleting 0-arrows, and walk / box
//! bookkeeping on them.
//!
//! Nodes are `x0, x1, ...` in left-to-right picture order. The chain of a
//! picture runs along `x0 -> x1 -> ...`; extra nodes (the apex of the
//! twisted pictures) come last.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::cartan::{Color, Family, RootSystemType, WeightVector};
use crate::error::{CrystalError, Result};

/// A color sequence `i_1, ..., i_k`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Walk(Vec<Color>);

impl Walk {
    pub fn new(colors: Vec<Color>) -> Self {
        Self(colors)
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn colors(&self) -> &[Color] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn reversed(&self) -> Walk {
        Walk(self.0.iter().rev().copied().collect())
    }

    pub fn check_colors(&self, t: RootSystemType) -> Result<()> {
        for &c in &self.0 {
            t.position(c)?;
        }
        Ok(())
    }
}

impl fmt::Display for Walk {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl FromStr for Walk {
    type Err = CrystalError;

    /// Accepts `1,2,0` or `(1,2,0)`; the empty string is the empty walk.
    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')').trim();
        if inner.is_empty() {
            return Ok(Walk::empty());
        }
        inner
            .split(',')
            .map(|p| p.trim().parse::<Color>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map(Walk)
            .map_err(|_| CrystalError::InvalidArgument(format!("malformed walk `{s}`")))
    }
}

/// A finite colored digraph in which each color forms a partial matching.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PerfectCrystal {
    ty: RootSystemType,
    label: String,
    num_nodes: usize,
    arrows: Vec<(usize, Color, usize)>,
    out_adj: Vec<BTreeMap<Color, usize>>,
    in_adj: Vec<BTreeMap<Color, usize>>,
}

impl PerfectCrystal {
    /// Build and validate: colors must lie in `I` of `ty`, each color must
    /// be a partial matching, and the graph must be weakly connected.
    pub fn new(
        ty: RootSystemType,
        label: impl Into<String>,
        num_nodes: usize,
        mut arrows: Vec<(usize, Color, usize)>,
    ) -> Result<Self> {
        let label = label.into();
        arrows.sort();
        let mut out_adj = vec![BTreeMap::new(); num_nodes];
        let mut in_adj = vec![BTreeMap::new(); num_nodes];
        for &(s, c, d) in &arrows {
            ty.position(c)?;
            if s >= num_nodes || d >= num_nodes {
                return Err(CrystalError::MalformedGraph(format!("{label}: arrow endpoint out of range")));
            }
            if out_adj[s].insert(c, d).is_some() || in_adj[d].insert(c, s).is_some() {
                return Err(CrystalError::MalformedGraph(format!(
                    "{label}: color {c} is not a partial matching at x{s} -> x{d}"
                )));
            }
        }
        let pc = Self {
            ty,
            label,
            num_nodes,
            arrows,
            out_adj,
            in_adj,
        };
        if !pc.is_connected() {
            return Err(CrystalError::MalformedGraph(format!("{}: not connected", pc.label)));
        }
        Ok(pc)
    }

    pub fn root_system(&self) -> RootSystemType {
        self.ty
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn len(&self) -> usize {
        self.num_nodes
    }

    pub fn is_empty(&self) -> bool {
        self.num_nodes == 0
    }

    pub fn node_id(&self, idx: usize) -> String {
        format!("x{idx}")
    }

    pub fn node_index(&self, id: &str) -> Result<usize> {
        id.strip_prefix('x')
            .and_then(|d| d.parse::<usize>().ok())
            .filter(|&i| i < self.num_nodes)
            .ok_or_else(|| CrystalError::NodeNotInGraph(id.to_string()))
    }

    pub fn arrows(&self) -> &[(usize, Color, usize)] {
        &self.arrows
    }

    pub fn f(&self, idx: usize, color: Color) -> Option<usize> {
        self.out_adj[idx].get(&color).copied()
    }

    pub fn e(&self, idx: usize, color: Color) -> Option<usize> {
        self.in_adj[idx].get(&color).copied()
    }

    fn string_len(&self, idx: usize, color: Color, up: bool) -> i64 {
        let mut n = 0;
        let mut cur = idx;
        while let Some(next) = if up { self.e(cur, color) } else { self.f(cur, color) } {
            n += 1;
            cur = next;
            if n as usize > self.num_nodes {
                break;
            }
        }
        n
    }

    pub fn eps(&self, idx: usize, color: Color) -> i64 {
        self.string_len(idx, color, true)
    }

    pub fn phi(&self, idx: usize, color: Color) -> i64 {
        self.string_len(idx, color, false)
    }

    pub fn epsilon_vector(&self, idx: usize) -> WeightVector {
        let mut w = WeightVector::zero();
        for c in self.ty.colors() {
            w.set(c, self.eps(idx, c));
        }
        w
    }

    pub fn phi_vector(&self, idx: usize) -> WeightVector {
        let mut w = WeightVector::zero();
        for c in self.ty.colors() {
            w.set(c, self.phi(idx, c));
        }
        w
    }

    /// `φ(b) - ε(b)` in fundamental weight coordinates.
    pub fn weight(&self, idx: usize) -> WeightVector {
        &self.phi_vector(idx) - &self.epsilon_vector(idx)
    }

    fn is_connected(&self) -> bool {
        if self.num_nodes == 0 {
            return true;
        }
        let mut seen = vec![false; self.num_nodes];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        while let Some(u) = queue.pop_front() {
            let nbrs = self.out_adj[u].values().chain(self.in_adj[u].values());
            for &v in nbrs {
                if !seen[v] {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Reverse every arrow. Node ids are kept.
    pub fn reversed(&self) -> Result<PerfectCrystal> {
        let arrows = self.arrows.iter().map(|&(s, c, d)| (d, c, s)).collect();
        let label = match self.label.strip_suffix(" reversed") {
            Some(base) => base.to_string(),
            None => format!("{} reversed", self.label),
        };
        PerfectCrystal::new(self.ty, label, self.num_nodes, arrows)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Shape {
    A,
    B,
    C,
    D,
    A2Odd,
    A2Even,
    A2EvenDagger,
    D2Aff,
}

/// Chain `1, ..., n-1, n, n-1, ..., 1` on `2n` nodes.
fn c_chain(n: usize) -> Vec<(usize, Color, usize)> {
    (0..2 * n - 1)
        .map(|j| {
            let c = if j < n { j + 1 } else { 2 * n - 1 - j };
            (j, c, j + 1)
        })
        .collect()
}

/// Chain `1, ..., n-1, n, n, n-1, ..., 1` on `2n + 1` nodes.
fn b_chain(n: usize) -> Vec<(usize, Color, usize)> {
    (0..2 * n)
        .map(|j| {
            let c = if j < n { j + 1 } else if j == n { n } else { 2 * n - j };
            (j, c, j + 1)
        })
        .collect()
}

/// Chain `1, ..., n-2`, then the `{n-1, n}` diamond, then `n-2, ..., 1`,
/// on `2n` nodes.
fn d_chain(n: usize) -> Vec<(usize, Color, usize)> {
    let mut arrows: Vec<_> = (0..n - 2).map(|t| (t, t + 1, t + 1)).collect();
    let top = n - 2;
    let (up, down, bottom) = (n - 1, n, n + 1);
    arrows.extend([
        (top, n - 1, up),
        (top, n, down),
        (up, n, bottom),
        (down, n - 1, bottom),
    ]);
    for t in 0..n - 2 {
        arrows.push((bottom + t, n - 2 - t, bottom + t + 1));
    }
    arrows
}

/// `(node count, arrows)` of the affine picture of `shape` in rank `n`.
fn template(shape: Shape, n: usize) -> (usize, Vec<(usize, Color, usize)>) {
    match shape {
        Shape::A => {
            let mut arrows: Vec<_> = (0..n).map(|j| (j, j + 1, j + 1)).collect();
            arrows.push((n, 0, 0));
            (n + 1, arrows)
        }
        Shape::C => {
            let mut arrows = c_chain(n);
            arrows.push((2 * n - 1, 0, 0));
            (2 * n, arrows)
        }
        Shape::B => {
            let mut arrows = b_chain(n);
            arrows.push((2 * n - 1, 0, 0));
            arrows.push((2 * n, 0, 1));
            (2 * n + 1, arrows)
        }
        Shape::D => {
            let mut arrows = d_chain(n);
            arrows.push((2 * n - 2, 0, 0));
            arrows.push((2 * n - 1, 0, 1));
            (2 * n, arrows)
        }
        Shape::A2Odd => {
            let mut arrows = c_chain(n);
            arrows.push((2 * n - 2, 0, 0));
            arrows.push((2 * n - 1, 0, 1));
            (2 * n, arrows)
        }
        Shape::A2Even => {
            let apex = 2 * n;
            let mut arrows = c_chain(n);
            arrows.push((2 * n - 1, 0, apex));
            arrows.push((apex, 0, 0));
            (2 * n + 1, arrows)
        }
        Shape::A2EvenDagger => {
            let mut arrows = b_chain(n);
            arrows.push((2 * n, 0, 0));
            (2 * n + 1, arrows)
        }
        Shape::D2Aff => {
            let apex = 2 * n + 1;
            let mut arrows = b_chain(n);
            arrows.push((2 * n, 0, apex));
            arrows.push((apex, 0, 0));
            (2 * n + 2, arrows)
        }
    }
}

fn affine_shape(t: RootSystemType) -> Result<Shape> {
    match t.family() {
        Family::A1Aff | Family::AAff => Ok(Shape::A),
        Family::BAff => Ok(Shape::B),
        Family::CAff => Ok(Shape::C),
        Family::DAff => Ok(Shape::D),
        Family::A2Odd => Ok(Shape::A2Odd),
        Family::A2Even => Ok(Shape::A2Even),
        Family::A2EvenDagger => Ok(Shape::A2EvenDagger),
        Family::D2Aff => Ok(Shape::D2Aff),
        _ => Err(CrystalError::UnsupportedFamily(t.to_string())),
    }
}

/// Expected `|B^{1,1}|`, asserted whenever a catalog graph is built.
pub fn expected_node_count(t: RootSystemType) -> Result<usize> {
    let n = t.rank();
    Ok(match affine_shape(t)? {
        Shape::A => n + 1,
        Shape::C | Shape::D | Shape::A2Odd => 2 * n,
        Shape::B | Shape::A2Even | Shape::A2EvenDagger => 2 * n + 1,
        Shape::D2Aff => 2 * n + 2,
    })
}

pub fn b11(t: RootSystemType) -> Result<PerfectCrystal> {
    let shape = affine_shape(t)?;
    let (count, arrows) = template(shape, t.rank());
    let pc = PerfectCrystal::new(t, format!("B11 {t}"), count, arrows)?;
    if pc.len() != expected_node_count(t)? {
        return Err(CrystalError::MalformedGraph(format!("{t}: wrong node count")));
    }
    Ok(pc)
}

/// The type-A perfect crystal with every arrow of `B^{1,1}` reversed;
/// walking from `x_n` its colors read `n, n-1, ..., 1, 0`.
pub fn bn1_type_a(n: usize) -> Result<PerfectCrystal> {
    if n < 2 {
        return Err(CrystalError::InvalidArgument(format!(
            "reversed type-A crystal needs n >= 2, got {n}"
        )));
    }
    b11(RootSystemType::new(Family::AAff, n)?)?.reversed()
}

/// Walk graphs for a finite type: the matching affine picture with the
/// 0-arrows removed. Type `A_n` yields both orientations.
pub fn finite_walk_graph(t: RootSystemType) -> Result<Vec<PerfectCrystal>> {
    let n = t.rank();
    let shape = match t.family() {
        Family::A => Shape::A,
        Family::B => Shape::B,
        Family::C => Shape::C,
        Family::D => Shape::D,
        _ => return Err(CrystalError::UnsupportedFamily(t.to_string())),
    };
    let (count, arrows) = template(shape, n);
    // The affine picture lives over colors 0..n; build it as a raw digraph
    // then drop color 0.
    let arrows: Vec<_> = arrows.into_iter().filter(|&(_, c, _)| c != 0).collect();
    let forward = PerfectCrystal::new(t, format!("walk graph {t}"), count, arrows)?;
    if t.family() == Family::A {
        let backward = forward.reversed()?;
        Ok(vec![forward, backward])
    } else {
        Ok(vec![forward])
    }
}

/// The graphs against which walks of `t` are judged: `B^{1,1}` (and its
/// reversal in type `A_n^{(1)}`, `n >= 2`) for affine types, the finite
/// walk graphs otherwise.
pub fn walk_graphs(t: RootSystemType) -> Result<Vec<PerfectCrystal>> {
    if !t.is_affine() {
        return finite_walk_graph(t);
    }
    let pc = b11(t)?;
    if t.family() == Family::AAff {
        let rev = pc.reversed()?;
        Ok(vec![pc, rev])
    } else {
        Ok(vec![pc])
    }
}

/// Every color sequence of `k` consecutive arrows whose first arrow has
/// color `start_color`, sorted.
pub fn enumerate_walks(pc: &PerfectCrystal, start_color: Color, k: usize) -> Vec<Walk> {
    let mut out = BTreeSet::new();
    if k == 0 {
        return Vec::new();
    }
    let mut prefix = Vec::with_capacity(k);
    fn go(pc: &PerfectCrystal, node: usize, k: usize, prefix: &mut Vec<Color>, out: &mut BTreeSet<Walk>) {
        if prefix.len() == k {
            out.insert(Walk::new(prefix.clone()));
            return;
        }
        for (&c, &next) in &pc.out_adj[node] {
            prefix.push(c);
            go(pc, next, k, prefix, out);
            prefix.pop();
        }
    }
    for &(_, c, d) in &pc.arrows {
        if c == start_color {
            prefix.clear();
            prefix.push(c);
            go(pc, d, k, &mut prefix, &mut out);
        }
    }
    out.into_iter().collect()
}

/// All node paths `p_0 -> p_1 -> ... -> p_k` realizing `w`, sorted.
pub fn realizations(pc: &PerfectCrystal, w: &Walk) -> Vec<Vec<usize>> {
    let mut paths: Vec<Vec<usize>> = (0..pc.len()).map(|s| vec![s]).collect();
    for &c in w.colors() {
        paths = paths
            .into_iter()
            .filter_map(|mut p| {
                let next = pc.f(*p.last().unwrap(), c)?;
                p.push(next);
                Some(p)
            })
            .collect();
    }
    paths
}

pub fn is_consecutive(pc: &PerfectCrystal, w: &Walk) -> bool {
    let mut frontier: BTreeSet<usize> = (0..pc.len()).collect();
    for &c in w.colors() {
        frontier = frontier.into_iter().filter_map(|p| pc.f(p, c)).collect();
        if frontier.is_empty() {
            return false;
        }
    }
    true
}

/// `m = |{ r : a(i_r, i_{r+1}) >= 0, 1 <= r < k }|`.
pub fn repeat_count_m(t: RootSystemType, w: &Walk) -> Result<usize> {
    w.check_colors(t)?;
    let a = t.cartan_matrix();
    Ok(w.colors().windows(2).filter(|p| a.get(p[0], p[1]) >= 0).count())
}

/// The box labeling of a consecutive walk.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoxPath {
    /// The node path `p_0, ..., p_k` used (the first realization).
    pub path: Vec<usize>,
    /// Positions `r` (1-based) that carry a box: `r = k` or
    /// `a(i_r, i_{r+1}) < 0`.
    pub slots: Vec<usize>,
    /// `p_r` for each slot.
    pub boxes: Vec<usize>,
    /// `p_0`, the node with `p_0 --i_1--> p_1`.
    pub predecessor: usize,
    /// Number of realizations of the walk on the graph.
    pub realizations: usize,
}

impl BoxPath {
    /// `p_0` followed by the boxes of every slot except the last: the
    /// factors of the highest weight node the walk is replayed from.
    pub fn initial_boxes(&self) -> Vec<usize> {
        let mut out = vec![self.predecessor];
        out.extend(self.boxes[..self.boxes.len() - 1].iter().copied());
        out
    }
}

pub fn box_nodes(pc: &PerfectCrystal, w: &Walk) -> Result<BoxPath> {
    if w.is_empty() {
        return Err(CrystalError::InvalidArgument("box labeling needs a nonempty walk".into()));
    }
    w.check_colors(pc.root_system())?;
    let all = realizations(pc, w);
    let path = all
        .first()
        .cloned()
        .ok_or_else(|| CrystalError::NotConsecutive(w.to_string()))?;
    let a = pc.root_system().cartan_matrix();
    let c = w.colors();
    let k = c.len();
    let slots: Vec<usize> = (1..=k).filter(|&r| r == k || a.get(c[r - 1], c[r]) < 0).collect();
    let boxes = slots.iter().map(|&r| path[r]).collect();
    Ok(BoxPath {
        predecessor: path[0],
        path,
        slots,
        boxes,
        realizations: all.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ty(s: &str) -> RootSystemType {
        s.parse().unwrap()
    }

    fn walk(s: &str) -> Walk {
        s.parse().unwrap()
    }

    fn colors_from(pc: &PerfectCrystal, start: usize) -> Vec<Color> {
        let mut out = Vec::new();
        let mut cur = start;
        while let Some((&c, &next)) = pc.out_adj[cur].iter().next() {
            out.push(c);
            cur = next;
            if cur == start || out.len() > pc.len() {
                break;
            }
        }
        out
    }

    #[test]
    fn walk_parse_display() {
        assert_eq!(walk("1,2,0").colors(), &[1, 2, 0]);
        assert_eq!(walk("(1, 2)").to_string(), "(1,2)");
        assert!(walk("").is_empty());
        assert!("1,x".parse::<Walk>().is_err());
    }

    #[test]
    fn type_a_cycle() {
        let pc = b11(ty("A3~1")).unwrap();
        assert_eq!(pc.len(), 4);
        assert_eq!(colors_from(&pc, 0), vec![1, 2, 3, 0]);
        let rev = bn1_type_a(2).unwrap();
        assert_eq!(rev.len(), 3);
        assert_eq!(colors_from(&rev, 2), vec![2, 1, 0]);
        assert_eq!(rev.reversed().unwrap(), b11(ty("A2~1")).unwrap());
        assert!(bn1_type_a(1).is_err());
    }

    #[test]
    fn c_chain_with_chord() {
        let pc = b11(ty("C2~1")).unwrap();
        assert_eq!(pc.len(), 4);
        assert_eq!(colors_from(&pc, 0), vec![1, 2, 1, 0]);
        assert!(is_consecutive(&pc, &walk("1,2,1,0,1")));
    }

    #[test]
    fn finite_graphs() {
        let c2 = &finite_walk_graph(ty("C2")).unwrap()[0];
        assert_eq!(c2.len(), 4);
        assert_eq!(colors_from(c2, 0), vec![1, 2, 1]);
        let b2 = &finite_walk_graph(ty("B2")).unwrap()[0];
        assert_eq!(colors_from(b2, 0), vec![1, 2, 2, 1]);
        let d4 = &finite_walk_graph(ty("D4")).unwrap()[0];
        assert!(is_consecutive(d4, &walk("1,2,3,4,2,1")));
        assert!(is_consecutive(d4, &walk("1,2,4,3,2,1")));
        assert!(!is_consecutive(d4, &walk("3,3")));
        assert_eq!(finite_walk_graph(ty("A3")).unwrap().len(), 2);
        assert!(finite_walk_graph(ty("A3~1")).is_err());
    }

    #[test]
    fn node_counts() {
        let cases = [
            ("A1~1", 2),
            ("A4~1", 5),
            ("C3~1", 6),
            ("B3~1", 7),
            ("D4~1", 8),
            ("A5~2", 6),
            ("A4~2", 5),
            ("A4~2d", 5),
            ("D3~2", 6),
        ];
        for (t, n) in cases {
            assert_eq!(b11(ty(t)).unwrap().len(), n, "{t}");
        }
        assert!(b11(ty("A3")).is_err());
    }

    #[test]
    fn level_one() {
        // Perfect of level 1: min over b of <c, ε(b)> is 1.
        for t in ["A1~1", "A3~1", "B3~1", "C2~1", "D4~1", "A4~2", "A4~2d", "A5~2", "D3~2"] {
            let t = ty(t);
            let pc = b11(t).unwrap();
            let labels = crate::cartan::dual_kac_labels(t).unwrap();
            let min = (0..pc.len())
                .map(|b| {
                    t.colors()
                        .iter()
                        .enumerate()
                        .map(|(p, &c)| labels[p] * pc.eps(b, c))
                        .sum::<i64>()
                })
                .min()
                .unwrap();
            assert_eq!(min, 1, "{t}");
        }
    }

    #[test]
    fn enumeration() {
        let a2 = b11(ty("A2~1")).unwrap();
        assert_eq!(enumerate_walks(&a2, 1, 3), vec![walk("1,2,0")]);
        assert!(!is_consecutive(&a2, &walk("1,1")));
        let d4 = b11(ty("D4~1")).unwrap();
        assert!(enumerate_walks(&d4, 1, 4).len() >= 2);
        assert_eq!(enumerate_walks(&d4, 2, 1).len(), 1);
    }

    #[test]
    fn repeats_and_boxes() {
        assert_eq!(repeat_count_m(ty("A2~1"), &walk("1,2,0")).unwrap(), 0);
        assert_eq!(repeat_count_m(ty("B3~1"), &walk("2,3,3,2")).unwrap(), 1);
        assert_eq!(repeat_count_m(ty("D3~2"), &walk("1,0,0,1")).unwrap(), 1);

        let a2 = b11(ty("A2~1")).unwrap();
        let bp = box_nodes(&a2, &walk("1,2,0,1")).unwrap();
        assert_eq!(bp.boxes, vec![1, 2, 0, 1]);
        assert_eq!(bp.predecessor, 0);

        let b3 = b11(ty("B3~1")).unwrap();
        let bp = box_nodes(&b3, &walk("2,3,3,2")).unwrap();
        assert_eq!(bp.boxes.len(), 3);
        assert_eq!(bp.slots, vec![1, 3, 4]);

        assert!(matches!(
            box_nodes(&a2, &walk("1,1")),
            Err(CrystalError::NotConsecutive(_))
        ));
    }
}
