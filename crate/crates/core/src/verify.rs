//! Exhaustive checks over truncated crystal graphs: the crystal axioms,
//! the `ε(e_i b)` bound, the Serre-type vanishing rules, and the walk
//! theorems for singular nodes with singular parents.
//!
//! Every checker reads only what is stored in the graph (`ε`, `φ`, arrows),
//! so corrupting the graph is visible to it. Claims are asserted only at
//! interior nodes; frontier nodes that would otherwise be checked are
//! counted in `skipped_frontier`.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cartan::{dominant_weights_of_level, Color, Family, RootSystemType, WeightVector};
use crate::crystal::{
    generate, generate_full, walks_to_highest_limited, wt_pairing, CrystalGraph, MonomialModel,
    DEFAULT_WALK_LIMIT,
};
use crate::error::{CrystalError, Result};
use crate::perfect::{is_consecutive, walk_graphs, PerfectCrystal, Walk};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Theorem {
    Axioms,
    LemmaEps,
    CorZero,
    CorParent,
    CorSerre,
    Type,
    Global,
}

impl Theorem {
    pub const ALL: [Theorem; 7] = [
        Theorem::Axioms,
        Theorem::LemmaEps,
        Theorem::CorZero,
        Theorem::CorParent,
        Theorem::CorSerre,
        Theorem::Type,
        Theorem::Global,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Theorem::Axioms => "axioms",
            Theorem::LemmaEps => "lemma-eps",
            Theorem::CorZero => "cor-zero",
            Theorem::CorParent => "cor-parent",
            Theorem::CorSerre => "cor-serre",
            Theorem::Type => "type",
            Theorem::Global => "global",
        }
    }
}

impl std::str::FromStr for Theorem {
    type Err = CrystalError;

    fn from_str(s: &str) -> Result<Self> {
        Theorem::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| CrystalError::InvalidArgument(format!("unknown theorem `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Vacuous,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Violation {
    pub node: String,
    pub clause: String,
    pub details: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub theorem: String,
    #[serde(rename = "type")]
    pub ty: RootSystemType,
    pub lambda: WeightVector,
    pub depth: usize,
    pub instances_checked: u64,
    pub skipped_frontier: u64,
    pub violations: Vec<Violation>,
    /// Per-clause instance counts and other tallies.
    pub counters: BTreeMap<String, u64>,
    pub status: Status,
}

impl VerificationReport {
    fn new(theorem: &str, graph: &CrystalGraph) -> Self {
        Self {
            theorem: theorem.to_string(),
            ty: graph.root_system(),
            lambda: graph.weight().clone(),
            depth: graph.depth_limit(),
            instances_checked: 0,
            skipped_frontier: 0,
            violations: Vec::new(),
            counters: BTreeMap::new(),
            status: Status::Vacuous,
        }
    }

    fn bump(&mut self, key: &str) {
        *self.counters.entry(key.to_string()).or_insert(0) += 1;
    }

    fn raise(&mut self, key: &str, value: u64) {
        let e = self.counters.entry(key.to_string()).or_insert(0);
        *e = (*e).max(value);
    }

    fn violate(&mut self, graph: &CrystalGraph, idx: usize, clause: &str, details: String) {
        self.violations.push(Violation {
            node: graph.node(idx).id.clone(),
            clause: clause.to_string(),
            details,
        });
    }

    fn finish(mut self) -> Self {
        self.status = if !self.violations.is_empty() {
            Status::Fail
        } else if self.instances_checked == 0 {
            Status::Vacuous
        } else {
            Status::Pass
        };
        self
    }

    pub fn counter(&self, key: &str) -> u64 {
        self.counters.get(key).copied().unwrap_or(0)
    }

    /// No violations. A vacuous report is not a failure.
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

fn colors(graph: &CrystalGraph) -> Vec<Color> {
    graph.root_system().colors()
}

/// Crystal axioms at every interior node: arrows agree with the model's
/// `e`/`f`, `φ_i = ε_i + <h_i, wt>`, and stored `ε`/`φ` equal the lengths
/// of the strings through the node.
pub fn check_axioms(graph: &CrystalGraph) -> VerificationReport {
    let mut r = VerificationReport::new(Theorem::Axioms.name(), graph);
    let t = graph.root_system();
    let model = MonomialModel::new(t);
    if !graph.is_empty() && graph.epsilon_vector(graph.highest()).total() != 0 {
        r.violate(graph, graph.highest(), "highest", "highest node has nonzero ε".into());
    }
    for e in graph.edges() {
        let (src, dst) = (graph.node(e.src), graph.node(e.dst));
        r.bump("edges");
        r.instances_checked += 1;
        if model.f(&src.node, e.color).as_ref() != Some(&dst.node)
            || model.e(&dst.node, e.color).as_ref() != Some(&src.node)
        {
            r.violate(graph, e.dst, "mutual-inverse", format!("arrow {} disagrees with e/f", e.color));
        }
        if graph.e(e.dst, e.color) != Some(e.src) {
            r.violate(graph, e.dst, "mutual-inverse", format!("e_{} does not undo f_{}", e.color, e.color));
        }
    }
    for idx in 0..graph.len() {
        if !graph.is_interior(idx) {
            r.skipped_frontier += 1;
            continue;
        }
        if graph.node(idx).depth() + 1 > graph.depth_limit() {
            r.violate(graph, idx, "interior", "node at the depth limit marked interior".into());
        }
        r.instances_checked += 1;
        r.bump("nodes");
        for c in colors(graph) {
            let (eps, phi) = (graph.eps(idx, c), graph.phi(idx, c));
            match wt_pairing(graph, idx, c) {
                Ok(w) if phi == eps + w => {}
                Ok(w) => r.violate(graph, idx, "phi-eps-wt", format!("color {c}: φ={phi} ε={eps} wt={w}")),
                Err(err) => r.violate(graph, idx, "phi-eps-wt", err.to_string()),
            }
            let mut up = 0;
            let mut cur = idx;
            while let Some(p) = graph.e(cur, c) {
                up += 1;
                cur = p;
            }
            if up != eps {
                r.violate(graph, idx, "string-eps", format!("color {c}: stored {eps}, string {up}"));
            }
            let mut down = 0;
            let mut cur = idx;
            while let Some(n) = graph.f(cur, c) {
                down += 1;
                cur = n;
            }
            if graph.is_interior(cur) {
                if down != phi {
                    r.violate(graph, idx, "string-phi", format!("color {c}: stored {phi}, string {down}"));
                }
            } else if down > phi {
                r.violate(graph, idx, "string-phi", format!("color {c}: stored {phi}, string ≥ {down}"));
            }
        }
    }
    r.finish()
}

/// For every arrow `b --i--> a` into an interior node, `ε(b) - ε(a)` has
/// coefficient `-1` at `i` and lies in `[0, -a(i,j)]` at `j ≠ i`.
///
/// The counter `transposed_bound_ok` tallies arrows where the bound
/// `[0, -a(j,i)]` holds instead; the two agree on symmetric Cartan
/// matrices.
pub fn check_lemma_eps(graph: &CrystalGraph) -> VerificationReport {
    let mut r = VerificationReport::new(Theorem::LemmaEps.name(), graph);
    let a = graph.root_system().cartan_matrix();
    for e in graph.edges() {
        if !graph.is_interior(e.dst) {
            r.skipped_frontier += 1;
            continue;
        }
        r.instances_checked += 1;
        let i = e.color;
        let mut transposed_ok = true;
        for j in colors(graph) {
            let m = graph.eps(e.src, j) - graph.eps(e.dst, j);
            let (ok, ok_t) = if j == i {
                (m == -1, m == -1)
            } else {
                (0 <= m && m <= -a.get(i, j), 0 <= m && m <= -a.get(j, i))
            };
            transposed_ok &= ok_t;
            if !ok {
                r.violate(
                    graph,
                    e.dst,
                    "m-bound",
                    format!("arrow {i} from {}: m_{j} = {m}, bound {}", graph.node(e.src).id, -a.get(i, j)),
                );
            }
        }
        if transposed_ok {
            r.bump("transposed_bound_ok");
        }
    }
    r.finish()
}

/// One instance of an implication whose conclusion is `e_color(node) = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Conclusion {
    pub node: usize,
    pub color: Color,
}

fn e_pow(graph: &CrystalGraph, idx: usize, c: Color, k: usize) -> Option<usize> {
    (0..k).try_fold(idx, |cur, _| graph.e(cur, c))
}

/// Record the conclusion `e_c(y) = 0`, where `y` is reached from `b`.
fn conclude(
    r: &mut VerificationReport,
    graph: &CrystalGraph,
    b: usize,
    y: Option<usize>,
    c: Color,
    clause: &str,
    out: &mut Vec<Conclusion>,
) {
    r.instances_checked += 1;
    r.bump(clause);
    if let Some(y) = y {
        out.push(Conclusion { node: y, color: c });
        if graph.e(y, c).is_some() {
            r.violate(graph, b, clause, format!("e_{c} is nonzero at {}", graph.node(y).id));
        }
    }
}

fn cor_zero_impl(graph: &CrystalGraph) -> (VerificationReport, Vec<Conclusion>) {
    let mut r = VerificationReport::new(Theorem::CorZero.name(), graph);
    let a = graph.root_system().cartan_matrix();
    let mut out = Vec::new();
    for b in 0..graph.len() {
        if !graph.is_interior(b) {
            r.skipped_frontier += 1;
            continue;
        }
        for i in colors(graph) {
            let Some(ei) = graph.e(b, i) else { continue };
            for j in colors(graph) {
                if j != i && a.get(i, j) == 0 && graph.e(b, j).is_none() {
                    conclude(&mut r, graph, b, Some(ei), j, "zero", &mut out);
                }
            }
        }
    }
    (r.finish(), out)
}

/// `a(i,j) = 0` and `e_j b = 0` imply `e_j e_i b = 0`.
pub fn check_cor_zero(graph: &CrystalGraph) -> VerificationReport {
    cor_zero_impl(graph).0
}

fn cor_parent_impl(graph: &CrystalGraph) -> (VerificationReport, Vec<Conclusion>) {
    let mut r = VerificationReport::new(Theorem::CorParent.name(), graph);
    let a = graph.root_system().cartan_matrix();
    let mut out = Vec::new();
    for x in 0..graph.len() {
        if !graph.is_singular(x) {
            continue;
        }
        if !graph.is_interior(x) {
            r.skipped_frontier += 1;
            continue;
        }
        for i in colors(graph) {
            let Some(b) = graph.e(x, i) else { continue };
            if !graph.is_singular(b) {
                continue;
            }
            for j in colors(graph) {
                if a.get(i, j) >= 0 {
                    conclude(&mut r, graph, x, Some(b), j, "parent", &mut out);
                }
            }
        }
    }
    (r.finish(), out)
}

/// For singular `a` with singular parent `b = e_i a`: `e_j b ≠ 0` implies
/// `a(i,j) < 0`.
pub fn check_cor_parent(graph: &CrystalGraph) -> VerificationReport {
    cor_parent_impl(graph).0
}

fn cor_serre_impl(graph: &CrystalGraph) -> (Vec<VerificationReport>, Vec<Conclusion>) {
    let a = graph.root_system().cartan_matrix();
    let mut reports: Vec<VerificationReport> = (0..3)
        .map(|k| VerificationReport::new(&format!("cor-serre-{k}"), graph))
        .collect();
    let mut out = Vec::new();
    for b in 0..graph.len() {
        if !graph.is_interior(b) {
            for r in &mut reports {
                r.skipped_frontier += 1;
            }
            continue;
        }
        for i in colors(graph) {
            for j in colors(graph) {
                if i == j {
                    continue;
                }
                let ej_zero = graph.e(b, j).is_none();
                let ei2_zero = e_pow(graph, b, i, 2).is_none();
                let ei = graph.e(b, i);
                match a.get(i, j) {
                    0 => {
                        if ej_zero && ei2_zero {
                            conclude(&mut reports[0], graph, b, ei, j, "case0", &mut out);
                        }
                    }
                    -1 => {
                        if ej_zero && ei2_zero {
                            let y = ei.and_then(|x| graph.e(x, j));
                            conclude(&mut reports[1], graph, b, y, i, "case1", &mut out);
                        }
                    }
                    -2 => {
                        let r = &mut reports[2];
                        let ej2_ei_zero = ei.and_then(|x| e_pow(graph, x, j, 2)).is_none();
                        if ej_zero && ei2_zero && ej2_ei_zero {
                            let y = ei.and_then(|x| graph.e(x, j)).and_then(|x| graph.e(x, i));
                            conclude(r, graph, b, y, i, "case2a", &mut out);
                        }
                        if graph.e(b, i).is_none() && e_pow(graph, b, j, 2).is_none() {
                            let y = graph.e(b, j).and_then(|x| e_pow(graph, x, i, 2));
                            conclude(r, graph, b, y, i, "case2b", &mut out);
                        }
                        if a.get(j, i) == -1 && ej_zero && ei2_zero {
                            let y = ei.and_then(|x| graph.e(x, j));
                            conclude(r, graph, b, y, j, "case2c", &mut out);
                            let y = ei
                                .and_then(|x| graph.e(x, j))
                                .and_then(|x| graph.e(x, i));
                            conclude(r, graph, b, y, j, "case2c", &mut out);
                        }
                    }
                    _ => {}
                }
            }
        }
    }
    (reports.into_iter().map(VerificationReport::finish).collect(), out)
}

/// The three Serre-type vanishing rules, one report per case
/// (`a(i,j) = 0, -1, -2`). Case 2 counts its clauses separately as
/// `case2a`, `case2b` and the `a(j,i) = -1` refinement `case2c`.
pub fn check_cor_serre(graph: &CrystalGraph) -> Vec<VerificationReport> {
    cor_serre_impl(graph).0
}

/// One term of an exceptional ancestor value, in terms of the rank `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ExceptionalEps {
    /// `2Λ_n`
    TwoLambdaN,
    /// `Λ_{n-1} + Λ_n`
    LambdaNm1PlusN,
    /// `2Λ_0`
    TwoLambda0,
    /// `Λ_0 + Λ_1`
    Lambda0Plus1,
}

impl ExceptionalEps {
    pub fn weight(self, n: usize) -> WeightVector {
        let mut w = WeightVector::zero();
        match self {
            ExceptionalEps::TwoLambdaN => w.set(n, 2),
            ExceptionalEps::LambdaNm1PlusN => {
                w.set(n - 1, 1);
                w.set(n, 1);
            }
            ExceptionalEps::TwoLambda0 => w.set(0, 2),
            ExceptionalEps::Lambda0Plus1 => {
                w.set(0, 1);
                w.set(1, 1);
            }
        }
        w
    }
}

/// Allowed non-singular ancestors for one type.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExceptionRule {
    pub allowed: Vec<WeightVector>,
    /// Upper bound on the number of non-singular ancestors, if any.
    pub max_nonsingular: Option<usize>,
}

/// Which non-singular ancestors of a singular node with singular parent
/// are tolerated, per type. Overrides replace the rule for a whole type.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExceptionTable {
    pub overrides: BTreeMap<String, ExceptionRule>,
}

impl ExceptionTable {
    /// The values named by the theorem for each family.
    pub fn default_rule(t: RootSystemType) -> ExceptionRule {
        use ExceptionalEps::*;
        let (terms, max): (Vec<ExceptionalEps>, Option<usize>) = match t.family() {
            Family::B => (vec![TwoLambdaN], Some(1)),
            Family::D => (vec![LambdaNm1PlusN], Some(1)),
            Family::A2EvenDagger => (vec![TwoLambdaN], None),
            Family::D2Aff => (vec![TwoLambdaN, TwoLambda0], None),
            Family::A2Even => (vec![TwoLambda0], None),
            Family::DAff => (vec![LambdaNm1PlusN, Lambda0Plus1], None),
            Family::BAff => (vec![TwoLambdaN, Lambda0Plus1], None),
            _ => (Vec::new(), None),
        };
        ExceptionRule {
            allowed: terms.into_iter().map(|x| x.weight(t.rank())).collect(),
            max_nonsingular: max,
        }
    }

    pub fn rule(&self, t: RootSystemType) -> ExceptionRule {
        self.overrides
            .get(&t.to_string())
            .cloned()
            .unwrap_or_else(|| Self::default_rule(t))
    }
}

/// The parent of `idx` if `idx` is a singular node with singular parent
/// (and, in `A_1^{(1)}`, singular grandparent when there is one).
pub fn qualifying(graph: &CrystalGraph, idx: usize) -> Option<usize> {
    if idx == graph.highest() || !graph.is_singular(idx) {
        return None;
    }
    let (_, b) = colors(graph)
        .into_iter()
        .find_map(|c| graph.e(idx, c).map(|p| (c, p)))?;
    if !graph.is_singular(b) {
        return None;
    }
    if graph.root_system().family() == Family::A1Aff && b != graph.highest() {
        let c = colors(graph).into_iter().find_map(|c| graph.e(b, c))?;
        if !graph.is_singular(c) {
            return None;
        }
    }
    Some(b)
}

/// All walks reachable from `w` by swapping adjacent diamond pairs.
fn swap_orbit(w: &Walk, pairs: &[(Color, Color)]) -> BTreeSet<Walk> {
    let mut seen = BTreeSet::from([w.clone()]);
    let mut stack = vec![w.clone()];
    while let Some(cur) = stack.pop() {
        let c = cur.colors();
        for r in 0..c.len().saturating_sub(1) {
            let (x, y) = (c[r], c[r + 1]);
            if pairs.iter().any(|&(p, q)| (x, y) == (p, q) || (x, y) == (q, p)) {
                let mut v = c.to_vec();
                v.swap(r, r + 1);
                let nw = Walk::new(v);
                if seen.insert(nw.clone()) {
                    stack.push(nw);
                }
            }
        }
    }
    seen
}

struct WalkCheckContext {
    graphs: Vec<PerfectCrystal>,
    pairs: Vec<(Color, Color)>,
    unique_required: bool,
    at_most_two: bool,
}

impl WalkCheckContext {
    fn new(t: RootSystemType) -> Result<Self> {
        Ok(Self {
            graphs: walk_graphs(t)?,
            pairs: t.diamond_pairs(),
            unique_required: !t.contains_d4_subdiagram(),
            at_most_two: t.family() == Family::D,
        })
    }

    fn consecutive(&self, w: &Walk) -> bool {
        self.graphs.iter().any(|g| is_consecutive(g, w))
    }
}

/// Check the walk clauses at `idx`; shared by both theorem checkers.
fn check_walks(
    r: &mut VerificationReport,
    graph: &CrystalGraph,
    idx: usize,
    ctx: &WalkCheckContext,
    walk_limit: usize,
) -> Option<Vec<Walk>> {
    let walks = match walks_to_highest_limited(graph, idx, walk_limit) {
        Ok(w) => w,
        Err(e) => {
            r.violate(graph, idx, "walk-count", e.to_string());
            return None;
        }
    };
    r.raise("max_walks", walks.len() as u64);
    *r.counters.entry(format!("walks={}", walks.len())).or_insert(0) += 1;
    for w in &walks {
        if !ctx.consecutive(w) {
            r.violate(graph, idx, "consecutive", format!("walk {w} is not consecutive"));
        }
    }
    if ctx.unique_required {
        if walks.len() != 1 {
            r.violate(graph, idx, "unique", format!("{} walks", walks.len()));
        }
    } else {
        let orbit = swap_orbit(&walks[0], &ctx.pairs);
        if walks.iter().any(|w| !orbit.contains(w)) {
            r.violate(graph, idx, "swap-closure", format!("{} walks not related by swaps", walks.len()));
        }
        if ctx.at_most_two && walks.len() > 2 {
            r.violate(graph, idx, "at-most-two", format!("{} walks", walks.len()));
        }
        if walks.len() == 2 && swap_orbit(&walks[0], &ctx.pairs).contains(&walks[1]) {
            r.bump("two_walk_swap_witnesses");
        }
    }
    Some(walks)
}

pub fn verify_thm_global(graph: &CrystalGraph) -> Result<VerificationReport> {
    verify_thm_global_limited(graph, DEFAULT_WALK_LIMIT)
}

/// Every interior singular node with singular parent has all its walks
/// consecutive on the matching perfect crystal (or finite walk graph);
/// the walk is unique unless the diagram contains `D_4`.
pub fn verify_thm_global_limited(graph: &CrystalGraph, walk_limit: usize) -> Result<VerificationReport> {
    let mut r = VerificationReport::new(Theorem::Global.name(), graph);
    let ctx = WalkCheckContext::new(graph.root_system())?;
    for idx in 0..graph.len() {
        if qualifying(graph, idx).is_none() {
            continue;
        }
        if !graph.is_interior(idx) {
            r.skipped_frontier += 1;
            continue;
        }
        r.instances_checked += 1;
        check_walks(&mut r, graph, idx, &ctx, walk_limit);
    }
    Ok(r.finish())
}

pub fn verify_thm_type(graph: &CrystalGraph, table: &ExceptionTable) -> Result<VerificationReport> {
    let mut r = VerificationReport::new(Theorem::Type.name(), graph);
    let t = graph.root_system();
    let ctx = WalkCheckContext::new(t)?;
    let rule = table.rule(t);
    for idx in 0..graph.len() {
        if qualifying(graph, idx).is_none() {
            continue;
        }
        if !graph.is_interior(idx) {
            r.skipped_frontier += 1;
            continue;
        }
        r.instances_checked += 1;
        check_walks(&mut r, graph, idx, &ctx, DEFAULT_WALK_LIMIT);
        let ancestors = match crate::crystal::ancestors(graph, idx) {
            Ok(a) => a,
            Err(e) => {
                r.violate(graph, idx, "ancestors", e.to_string());
                continue;
            }
        };
        let mut nonsingular = 0;
        for c in ancestors {
            if graph.is_singular(c) {
                continue;
            }
            nonsingular += 1;
            let eps = graph.epsilon_vector(c);
            if rule.allowed.contains(&eps) {
                r.bump("exceptional_ancestors");
            } else {
                r.violate(
                    graph,
                    idx,
                    "ancestor",
                    format!("ancestor {} has ε = {eps}", graph.node(c).id),
                );
            }
        }
        if let Some(max) = rule.max_nonsingular {
            if nonsingular > max {
                r.violate(graph, idx, "ancestor-count", format!("{nonsingular} non-singular ancestors"));
            }
        }
    }
    Ok(r.finish())
}

/// Run one checker; `cor-serre` yields three reports.
pub fn run_theorem(graph: &CrystalGraph, theorem: Theorem, table: &ExceptionTable) -> Result<Vec<VerificationReport>> {
    Ok(match theorem {
        Theorem::Axioms => vec![check_axioms(graph)],
        Theorem::LemmaEps => vec![check_lemma_eps(graph)],
        Theorem::CorZero => vec![check_cor_zero(graph)],
        Theorem::CorParent => vec![check_cor_parent(graph)],
        Theorem::CorSerre => check_cor_serre(graph),
        Theorem::Type => vec![verify_thm_type(graph, table)?],
        Theorem::Global => vec![verify_thm_global(graph)?],
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum WeightSet {
    /// `Λ_i` and `Λ_i + Λ_j` for `i <= j`.
    #[serde(rename = "fundamental-pairs")]
    FundamentalPairs,
    /// Dominant weights of level 1 and 2.
    #[serde(rename = "level-1-2")]
    LevelAtMost2,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum DepthSpec {
    Full(FullDepth),
    Limit(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FullDepth {
    Full,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridSpec {
    pub types: Vec<String>,
    #[serde(default)]
    pub weights: Option<WeightSet>,
    /// Explicit dense weights, used in addition to `weights`.
    #[serde(default)]
    pub explicit: Vec<Vec<i64>>,
    pub depth: DepthSpec,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepConfig {
    #[serde(default = "all_theorems")]
    pub theorems: Vec<Theorem>,
    pub grid: Vec<GridSpec>,
    #[serde(default)]
    pub exceptions: BTreeMap<String, ExceptionRuleSpec>,
}

fn all_theorems() -> Vec<Theorem> {
    Theorem::ALL.to_vec()
}

/// `allowed` holds dense weights over `I`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExceptionRuleSpec {
    pub allowed: Vec<Vec<i64>>,
    #[serde(default)]
    pub max_nonsingular: Option<usize>,
}

/// One `(type, λ, depth)` point of a sweep.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cell {
    pub ty: RootSystemType,
    pub lambda: WeightVector,
    /// `None` means generate the whole (finite) crystal.
    pub depth: Option<usize>,
}

impl Cell {
    pub fn generate(&self) -> Result<CrystalGraph> {
        match self.depth {
            Some(d) => generate(self.ty, &self.lambda, d),
            None => generate_full(self.ty, &self.lambda),
        }
    }
}

pub fn fundamental_pairs(t: RootSystemType) -> Vec<WeightVector> {
    let cs = t.colors();
    let mut out = Vec::new();
    for (p, &i) in cs.iter().enumerate() {
        out.push(WeightVector::fundamental(i));
        for &j in &cs[p..] {
            out.push(&WeightVector::fundamental(i) + &WeightVector::fundamental(j));
        }
    }
    out
}

impl SweepConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| CrystalError::Config(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_toml(&std::fs::read_to_string(path)?)
    }

    /// The built-in grid.
    pub fn default_grid() -> Self {
        Self::from_toml(DEFAULT_SWEEP_TOML).expect("built-in sweep config parses")
    }

    pub fn cells(&self) -> Result<Vec<Cell>> {
        let mut out = Vec::new();
        for g in &self.grid {
            let depth = match g.depth {
                DepthSpec::Full(_) => None,
                DepthSpec::Limit(d) => Some(d),
            };
            for ts in &g.types {
                let ty: RootSystemType = ts.parse()?;
                if depth.is_none() && ty.is_affine() {
                    return Err(CrystalError::Config(format!("{ty} is affine; give a numeric depth")));
                }
                let mut weights = match g.weights {
                    Some(WeightSet::FundamentalPairs) => fundamental_pairs(ty),
                    Some(WeightSet::LevelAtMost2) => {
                        let mut w = dominant_weights_of_level(ty, 1)?;
                        w.extend(dominant_weights_of_level(ty, 2)?);
                        w
                    }
                    None => Vec::new(),
                };
                for dense in &g.explicit {
                    weights.push(WeightVector::from_dense(ty, dense)?);
                }
                for lambda in weights {
                    out.push(Cell { ty, lambda, depth });
                }
            }
        }
        Ok(out)
    }

    /// Exception overrides from a TOML file holding only an `[exceptions]`
    /// table.
    pub fn load_exceptions(path: &Path) -> Result<ExceptionTable> {
        #[derive(Deserialize)]
        struct Only {
            #[serde(default)]
            exceptions: BTreeMap<String, ExceptionRuleSpec>,
        }
        let only: Only = toml::from_str(&std::fs::read_to_string(path)?)
            .map_err(|e| CrystalError::Config(e.to_string()))?;
        SweepConfig {
            theorems: Vec::new(),
            grid: Vec::new(),
            exceptions: only.exceptions,
        }
        .exception_table()
    }

    pub fn exception_table(&self) -> Result<ExceptionTable> {
        let mut table = ExceptionTable::default();
        for (ts, spec) in &self.exceptions {
            let ty: RootSystemType = ts.parse()?;
            let allowed = spec
                .allowed
                .iter()
                .map(|d| WeightVector::from_dense(ty, d))
                .collect::<Result<Vec<_>>>()?;
            table.overrides.insert(
                ty.to_string(),
                ExceptionRule {
                    allowed,
                    max_nonsingular: spec.max_nonsingular,
                },
            );
        }
        Ok(table)
    }
}

pub const DEFAULT_SWEEP_TOML: &str = include_str!("../sweep/default.toml");

/// Run every configured checker on every cell. Cells run in parallel;
/// reports come back in grid order, then theorem order.
pub fn sweep(config: &SweepConfig) -> Result<Vec<VerificationReport>> {
    let cells = config.cells()?;
    let table = config.exception_table()?;
    let per_cell: Vec<Result<Vec<VerificationReport>>> = cells
        .par_iter()
        .map(|cell| {
            let graph = cell.generate()?;
            let mut out = Vec::new();
            for &th in &config.theorems {
                out.extend(run_theorem(&graph, th, &table)?);
            }
            Ok(out)
        })
        .collect();
    let mut out = Vec::new();
    for r in per_cell {
        out.extend(r?);
    }
    Ok(out)
}

/// Outcome of seeding one corruption and rerunning a checker.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MutationOutcome {
    pub checker: String,
    pub corruption: String,
    pub detected: bool,
}

fn recolor_into(graph: &CrystalGraph, target: usize, new_color: Color) -> Option<CrystalGraph> {
    for c in colors(graph) {
        if c == new_color {
            continue;
        }
        let Some(src) = graph.e(target, c) else { continue };
        if graph.f(src, new_color).is_some() || graph.e(target, new_color).is_some() {
            continue;
        }
        let mut g = graph.clone();
        if g.recolor_edge(src, c, new_color).is_ok() {
            return Some(g);
        }
    }
    None
}

fn violation_set(reports: &[VerificationReport]) -> HashSet<Violation> {
    reports.iter().flat_map(|r| r.violations.iter().cloned()).collect()
}

/// Seed corruptions into `graph` and report whether each checker catches
/// them, meaning it reports a violation it did not report on the original
/// graph. Only corruptions that can be built on this graph are seeded; for
/// implication checkers the corruption adds an arrow that makes a
/// conclusion `e_i(y) = 0` false.
pub fn mutation_self_test(graph: &CrystalGraph, table: &ExceptionTable) -> Result<Vec<MutationOutcome>> {
    let mut baseline = BTreeMap::new();
    for th in Theorem::ALL {
        baseline.insert(th.name(), violation_set(&run_theorem(graph, th, table)?));
    }
    let mut out = Vec::new();
    let mut record = |checker: &str, corruption: String, reports: Vec<VerificationReport>| {
        let before = &baseline[checker];
        out.push(MutationOutcome {
            checker: checker.to_string(),
            corruption,
            detected: reports.iter().flat_map(|r| &r.violations).any(|v| !before.contains(v)),
        });
    };

    // Altered ε on the target of an interior arrow.
    if let Some(e) = graph.edges().iter().find(|e| graph.is_interior(e.dst)) {
        let mut g = graph.clone();
        let v = g.eps(e.src, e.color);
        g.override_eps(e.dst, e.color, v);
        let label = format!("ε_{} at {} set to {v}", e.color, g.node(e.dst).id);
        record("axioms", label.clone(), vec![check_axioms(&g)]);
        record("lemma-eps", label, vec![check_lemma_eps(&g)]);
    }

    // Flipped color of an arrow.
    'flip: for e in graph.edges() {
        for c in colors(graph) {
            if c != e.color && graph.f(e.src, c).is_none() && graph.e(e.dst, c).is_none() {
                let mut g = graph.clone();
                g.recolor_edge(e.src, e.color, c)?;
                record(
                    "axioms",
                    format!("arrow {} -> {} recolored {} to {c}", g.node(e.src).id, g.node(e.dst).id, e.color),
                    vec![check_axioms(&g)],
                );
                break 'flip;
            }
        }
    }

    let implications: [(&str, Vec<Conclusion>); 3] = [
        ("cor-zero", cor_zero_impl(graph).1),
        ("cor-parent", cor_parent_impl(graph).1),
        ("cor-serre", cor_serre_impl(graph).1),
    ];
    for (name, concl) in implications {
        for cl in concl {
            if let Some(g) = recolor_into(graph, cl.node, cl.color) {
                let reports = match name {
                    "cor-zero" => vec![check_cor_zero(&g)],
                    "cor-parent" => vec![check_cor_parent(&g)],
                    _ => check_cor_serre(&g),
                };
                record(
                    name,
                    format!("arrow into {} recolored to {}", g.node(cl.node).id, cl.color),
                    reports,
                );
                break;
            }
        }
    }

    // Walk theorems: break a walk of a qualifying node by recoloring its
    // in-arrow to a color that makes the walk non-consecutive.
    let ctx = WalkCheckContext::new(graph.root_system())?;
    'walk: for idx in 0..graph.len() {
        if qualifying(graph, idx).is_none() || !graph.is_interior(idx) || graph.node(idx).depth() < 2 {
            continue;
        }
        let Some((c0, parent)) = colors(graph).into_iter().find_map(|c| graph.e(idx, c).map(|p| (c, p))) else {
            continue;
        };
        let walks = walks_to_highest_limited(graph, parent, DEFAULT_WALK_LIMIT)?;
        for c in colors(graph) {
            if c == c0 || graph.f(parent, c).is_some() {
                continue;
            }
            let broken = walks.iter().all(|w| {
                let mut v = vec![c];
                v.extend_from_slice(w.colors());
                !ctx.consecutive(&Walk::new(v))
            });
            if !broken {
                continue;
            }
            let mut g = graph.clone();
            g.recolor_edge(parent, c0, c)?;
            if qualifying(&g, idx).is_none() {
                continue;
            }
            let label = format!("arrow into {} recolored {c0} to {c}", g.node(idx).id);
            record("global", label.clone(), vec![verify_thm_global(&g)?]);
            record("type", label, vec![verify_thm_type(&g, table)?]);
            break 'walk;
        }
    }

    // Ancestor clause: give a grand-ancestor a forbidden ε.
    'anc: for idx in 0..graph.len() {
        let Some(b) = qualifying(graph, idx) else { continue };
        if !graph.is_interior(idx) {
            continue;
        }
        for c in crate::crystal::ancestors(graph, idx)? {
            if c == b || c == graph.highest() {
                continue;
            }
            let mut g = graph.clone();
            let first = g.root_system().color_at(0);
            let v = g.eps(c, first) + 3;
            g.override_eps(c, first, v);
            if qualifying(&g, idx).is_none() {
                continue;
            }
            record(
                "type",
                format!("ε_{first} at ancestor {} set to {v}", g.node(c).id),
                vec![verify_thm_type(&g, table)?],
            );
            break 'anc;
        }
    }
    Ok(out)
}

/// Distinct qualifying walks found in a graph, for cross-checks against
/// the tensor construction.
pub fn qualifying_walks(graph: &CrystalGraph) -> Result<Vec<(String, Vec<Walk>)>> {
    let mut out = Vec::new();
    let mut seen = HashSet::new();
    for idx in 0..graph.len() {
        if qualifying(graph, idx).is_none() || !graph.is_interior(idx) {
            continue;
        }
        let walks = walks_to_highest_limited(graph, idx, DEFAULT_WALK_LIMIT)?;
        if seen.insert(walks.clone()) {
            out.push((graph.node(idx).id.clone(), walks));
        }
    }
    Ok(out)
}
