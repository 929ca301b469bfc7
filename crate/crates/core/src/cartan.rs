//! Root system metadata: families, index sets, Cartan matrices, fundamental
//! weight coordinates and affine levels.
//!
//! Conventions: `a(i, j) = <h_i, alpha_j>`. Finite families use colors
//! `1..=n`, affine families use `0..=n`. The twisted families are labelled
//! so that
//!
//! * `A_{2n}^{(2)}` has `a(0,1) = a(n-1,n) = -2` (classical part `C_n`),
//! * `A_{2n}^{(2)†}` is its transpose (classical part `B_n`),
//! * `A_{2n-1}^{(2)}` is `C_n` with node 0 attached to node 2,
//! * `D_{n+1}^{(2)}` has `a(0,1) = a(n,n-1) = -2` (classical part `B_n`).

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{CrystalError, Result};

/// A vertex of the Dynkin diagram, i.e. an element of the index set `I`.
pub type Color = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    /// `A_1^{(1)}`
    A1Aff,
    /// `A_n^{(1)}`, `n >= 2`
    AAff,
    /// `B_n^{(1)}`
    BAff,
    /// `C_n^{(1)}`
    CAff,
    /// `D_n^{(1)}`
    DAff,
    /// `A_{2n}^{(2)}`
    A2Even,
    /// `A_{2n}^{(2)†}`
    A2EvenDagger,
    /// `A_{2n-1}^{(2)}`
    A2Odd,
    /// `D_{n+1}^{(2)}`
    D2Aff,
}

impl Family {
    pub const ALL: [Family; 13] = [
        Family::A,
        Family::B,
        Family::C,
        Family::D,
        Family::A1Aff,
        Family::AAff,
        Family::BAff,
        Family::CAff,
        Family::DAff,
        Family::A2Even,
        Family::A2EvenDagger,
        Family::A2Odd,
        Family::D2Aff,
    ];

    pub fn is_affine(self) -> bool {
        !matches!(self, Family::A | Family::B | Family::C | Family::D)
    }

    pub fn min_rank(self) -> usize {
        match self {
            Family::A | Family::A1Aff => 1,
            Family::B | Family::C | Family::CAff | Family::AAff => 2,
            Family::A2Even | Family::A2EvenDagger | Family::D2Aff => 2,
            Family::BAff | Family::A2Odd => 3,
            Family::D | Family::DAff => 4,
        }
    }

    fn max_rank(self) -> Option<usize> {
        match self {
            Family::A1Aff => Some(1),
            _ => None,
        }
    }

    fn name(self) -> &'static str {
        match self {
            Family::A => "A_n",
            Family::B => "B_n",
            Family::C => "C_n",
            Family::D => "D_n",
            Family::A1Aff => "A_1^(1)",
            Family::AAff => "A_n^(1)",
            Family::BAff => "B_n^(1)",
            Family::CAff => "C_n^(1)",
            Family::DAff => "D_n^(1)",
            Family::A2Even => "A_2n^(2)",
            Family::A2EvenDagger => "A_2n^(2)dagger",
            Family::A2Odd => "A_2n-1^(2)",
            Family::D2Aff => "D_n+1^(2)",
        }
    }

    fn bound(self) -> &'static str {
        match (self.min_rank(), self.max_rank()) {
            (1, Some(1)) => "n = 1",
            (1, _) => "n >= 1",
            (2, _) => "n >= 2",
            (3, _) => "n >= 3",
            _ => "n >= 4",
        }
    }
}

/// A named finite or affine root system. `rank` is the `n` appearing in the
/// family's name, so `A_4^{(2)}` has rank 2 and `D_3^{(2)}` has rank 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct RootSystemType {
    family: Family,
    rank: usize,
}

impl RootSystemType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = rank >= family.min_rank() && family.max_rank().is_none_or(|m| rank <= m);
        if !ok {
            return Err(CrystalError::RankOutOfRange {
                family: family.name(),
                rank,
                bound: family.bound(),
            });
        }
        Ok(Self { family, rank })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_affine(&self) -> bool {
        self.family.is_affine()
    }

    /// The index set `I` in ascending order.
    pub fn colors(&self) -> Vec<Color> {
        if self.is_affine() {
            (0..=self.rank).collect()
        } else {
            (1..=self.rank).collect()
        }
    }

    pub fn num_colors(&self) -> usize {
        if self.is_affine() {
            self.rank + 1
        } else {
            self.rank
        }
    }

    pub fn contains(&self, color: Color) -> bool {
        if self.is_affine() {
            color <= self.rank
        } else {
            (1..=self.rank).contains(&color)
        }
    }

    /// Position of `color` in `colors()`.
    pub fn position(&self, color: Color) -> Result<usize> {
        if !self.contains(color) {
            return Err(CrystalError::UnknownColor {
                color,
                ty: self.to_string(),
            });
        }
        Ok(if self.is_affine() { color } else { color - 1 })
    }

    pub fn color_at(&self, position: usize) -> Color {
        if self.is_affine() {
            position
        } else {
            position + 1
        }
    }

    pub fn cartan_matrix(&self) -> CartanMatrix {
        cartan_matrix(*self)
    }

    pub fn is_simply_laced(&self) -> bool {
        matches!(self.family, Family::A | Family::D | Family::DAff | Family::AAff)
    }

    /// Whether the Dynkin diagram has a vertex of degree at least three,
    /// which is what produces the two-way "diamond" walks.
    pub fn contains_d4_subdiagram(&self) -> bool {
        matches!(
            self.family,
            Family::D | Family::DAff | Family::BAff | Family::A2Odd
        )
    }

    /// Color pairs `{p, q}` with `a(p,q) = 0` that meet at a trivalent vertex.
    pub fn diamond_pairs(&self) -> Vec<(Color, Color)> {
        let n = self.rank;
        match self.family {
            Family::D => vec![(n - 1, n)],
            Family::DAff => vec![(0, 1), (n - 1, n)],
            Family::BAff | Family::A2Odd => vec![(0, 1)],
            _ => Vec::new(),
        }
    }
}

impl fmt::Display for RootSystemType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.rank;
        match self.family {
            Family::A => write!(f, "A{n}"),
            Family::B => write!(f, "B{n}"),
            Family::C => write!(f, "C{n}"),
            Family::D => write!(f, "D{n}"),
            Family::A1Aff => write!(f, "A1~1"),
            Family::AAff => write!(f, "A{n}~1"),
            Family::BAff => write!(f, "B{n}~1"),
            Family::CAff => write!(f, "C{n}~1"),
            Family::DAff => write!(f, "D{n}~1"),
            Family::A2Even => write!(f, "A{}~2", 2 * n),
            Family::A2EvenDagger => write!(f, "A{}~2d", 2 * n),
            Family::A2Odd => write!(f, "A{}~2", 2 * n - 1),
            Family::D2Aff => write!(f, "D{}~2", n + 1),
        }
    }
}

impl FromStr for RootSystemType {
    type Err = CrystalError;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || CrystalError::UnknownType(s.to_string());
        let s = s.trim();
        let mut chars = s.chars();
        let letter = chars.next().ok_or_else(bad)?;
        let rest = chars.as_str();
        let (num, twist) = match rest.split_once('~') {
            Some((num, twist)) => (num, Some(twist)),
            None => (rest, None),
        };
        if num.is_empty() || !num.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let n: usize = num.parse().map_err(|_| bad())?;
        let (family, rank) = match (letter.to_ascii_uppercase(), twist) {
            ('A', None) => (Family::A, n),
            ('B', None) => (Family::B, n),
            ('C', None) => (Family::C, n),
            ('D', None) => (Family::D, n),
            ('A', Some("1")) if n == 1 => (Family::A1Aff, 1),
            ('A', Some("1")) => (Family::AAff, n),
            ('B', Some("1")) => (Family::BAff, n),
            ('C', Some("1")) => (Family::CAff, n),
            ('D', Some("1")) => (Family::DAff, n),
            ('A', Some("2")) if n.is_multiple_of(2) => (Family::A2Even, n / 2),
            ('A', Some("2d")) if n.is_multiple_of(2) => (Family::A2EvenDagger, n / 2),
            ('A', Some("2")) => (Family::A2Odd, n.div_ceil(2)),
            ('D', Some("2")) if n >= 1 => (Family::D2Aff, n - 1),
            _ => return Err(bad()),
        };
        RootSystemType::new(family, rank)
    }
}

impl TryFrom<String> for RootSystemType {
    type Error = CrystalError;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<RootSystemType> for String {
    fn from(t: RootSystemType) -> String {
        t.to_string()
    }
}

/// Dense Cartan matrix indexed by color positions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CartanMatrix {
    ty: RootSystemType,
    entries: Vec<Vec<i64>>,
}

impl CartanMatrix {
    pub fn root_system(&self) -> RootSystemType {
        self.ty
    }

    /// `a(i, j) = <h_i, alpha_j>` for colors `i`, `j`.
    ///
    /// Panics if either color is outside `I`; use [`pairing_root`] for the
    /// checked version.
    pub fn get(&self, i: Color, j: Color) -> i64 {
        let p = self.ty.position(i).expect("color in index set");
        let q = self.ty.position(j).expect("color in index set");
        self.entries[p][q]
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.entries
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn transpose(&self) -> Vec<Vec<i64>> {
        let n = self.dim();
        (0..n)
            .map(|p| (0..n).map(|q| self.entries[q][p]).collect())
            .collect()
    }

    pub fn is_symmetric(&self) -> bool {
        self.transpose() == self.entries
    }
}

fn chain(size: usize) -> Vec<Vec<i64>> {
    let mut m = vec![vec![0; size]; size];
    for p in 0..size {
        m[p][p] = 2;
        if p + 1 < size {
            m[p][p + 1] = -1;
            m[p + 1][p] = -1;
        }
    }
    m
}

fn join(m: &mut [Vec<i64>], p: usize, q: usize) {
    m[p][q] = -1;
    m[q][p] = -1;
}

fn cut(m: &mut [Vec<i64>], p: usize, q: usize) {
    m[p][q] = 0;
    m[q][p] = 0;
}

pub fn cartan_matrix(t: RootSystemType) -> CartanMatrix {
    let n = t.rank;
    let entries = match t.family {
        Family::A => chain(n),
        Family::B => {
            // positions 0..n-1 hold colors 1..n
            let mut m = chain(n);
            m[n - 1][n - 2] = -2;
            m
        }
        Family::C => {
            let mut m = chain(n);
            m[n - 2][n - 1] = -2;
            m
        }
        Family::D => {
            let mut m = chain(n);
            cut(&mut m, n - 2, n - 1);
            join(&mut m, n - 3, n - 1);
            m
        }
        Family::A1Aff => vec![vec![2, -2], vec![-2, 2]],
        Family::AAff => {
            let mut m = chain(n + 1);
            join(&mut m, 0, n);
            m
        }
        Family::BAff => {
            // positions = colors 0..=n; classical B_n on 1..=n, 0 hangs off 2
            let mut m = chain(n + 1);
            cut(&mut m, 0, 1);
            join(&mut m, 0, 2);
            m[n][n - 1] = -2;
            m
        }
        Family::CAff => {
            let mut m = chain(n + 1);
            m[1][0] = -2;
            m[n - 1][n] = -2;
            m
        }
        Family::DAff => {
            let mut m = chain(n + 1);
            cut(&mut m, 0, 1);
            join(&mut m, 0, 2);
            cut(&mut m, n - 1, n);
            join(&mut m, n - 2, n);
            m
        }
        Family::A2Even => {
            let mut m = chain(n + 1);
            m[0][1] = -2;
            m[n - 1][n] = -2;
            m
        }
        Family::A2EvenDagger => {
            let mut m = chain(n + 1);
            m[1][0] = -2;
            m[n][n - 1] = -2;
            m
        }
        Family::A2Odd => {
            let mut m = chain(n + 1);
            cut(&mut m, 0, 1);
            join(&mut m, 0, 2);
            m[n - 1][n] = -2;
            m
        }
        Family::D2Aff => {
            let mut m = chain(n + 1);
            m[0][1] = -2;
            m[n][n - 1] = -2;
            m
        }
    };
    CartanMatrix { ty: t, entries }
}

/// Coefficients `a_i^∨` of the canonical central element `c = Σ a_i^∨ h_i`,
/// indexed by color. Values are the standard affine tables, transcribed for
/// the labelling used in this crate.
pub fn dual_kac_labels(t: RootSystemType) -> Result<Vec<i64>> {
    let n = t.rank;
    let labels = match t.family {
        Family::A | Family::B | Family::C | Family::D => {
            return Err(CrystalError::LevelUndefined(t.to_string()))
        }
        Family::A1Aff | Family::AAff | Family::CAff => vec![1; n + 1],
        Family::BAff => {
            let mut v = vec![2; n + 1];
            v[0] = 1;
            v[1] = 1;
            v[n] = 1;
            v
        }
        Family::DAff => {
            let mut v = vec![2; n + 1];
            v[0] = 1;
            v[1] = 1;
            v[n - 1] = 1;
            v[n] = 1;
            v
        }
        Family::A2Even => {
            let mut v = vec![2; n + 1];
            v[0] = 1;
            v
        }
        Family::A2EvenDagger => {
            let mut v = vec![2; n + 1];
            v[n] = 1;
            v
        }
        Family::A2Odd => {
            let mut v = vec![2; n + 1];
            v[0] = 1;
            v[1] = 1;
            v
        }
        Family::D2Aff => {
            let mut v = vec![2; n + 1];
            v[0] = 1;
            v[n] = 1;
            v
        }
    };
    Ok(labels)
}

/// Integer coefficients over the fundamental weights `Λ_i`. Absent keys are 0.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct WeightVector {
    coeffs: BTreeMap<Color, i64>,
}

impl WeightVector {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn fundamental(i: Color) -> Self {
        let mut w = Self::zero();
        w.set(i, 1);
        w
    }

    /// Build from a dense list over `I` in ascending color order.
    pub fn from_dense(t: RootSystemType, values: &[i64]) -> Result<Self> {
        if values.len() != t.num_colors() {
            return Err(CrystalError::MalformedWeight(format!(
                "{} has {} colors, got {} coefficients",
                t,
                t.num_colors(),
                values.len()
            )));
        }
        let mut w = Self::zero();
        for (pos, &v) in values.iter().enumerate() {
            w.set(t.color_at(pos), v);
        }
        Ok(w)
    }

    /// Parse the comma list used on the command line, e.g. `1,0,2`.
    pub fn parse_dense(t: RootSystemType, s: &str) -> Result<Self> {
        let values = s
            .split(',')
            .map(|p| p.trim().parse::<i64>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| CrystalError::MalformedWeight(s.to_string()))?;
        Self::from_dense(t, &values)
    }

    pub fn to_dense(&self, t: RootSystemType) -> Vec<i64> {
        t.colors().into_iter().map(|c| self.get(c)).collect()
    }

    pub fn get(&self, i: Color) -> i64 {
        self.coeffs.get(&i).copied().unwrap_or(0)
    }

    pub fn set(&mut self, i: Color, value: i64) {
        if value == 0 {
            self.coeffs.remove(&i);
        } else {
            self.coeffs.insert(i, value);
        }
    }

    pub fn add_to(&mut self, i: Color, delta: i64) {
        let v = self.get(i) + delta;
        self.set(i, v);
    }

    pub fn iter(&self) -> impl Iterator<Item = (Color, i64)> + '_ {
        self.coeffs.iter().map(|(&c, &v)| (c, v))
    }

    pub fn is_dominant(&self) -> bool {
        self.coeffs.values().all(|&v| v >= 0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Sum of coefficients; for `ε(b)` this is the number of in-arrows.
    pub fn total(&self) -> i64 {
        self.coeffs.values().sum()
    }

    pub fn scaled(&self, k: i64) -> Self {
        let mut w = Self::zero();
        for (c, v) in self.iter() {
            w.set(c, v * k);
        }
        w
    }
}

impl std::ops::Add for &WeightVector {
    type Output = WeightVector;

    fn add(self, rhs: &WeightVector) -> WeightVector {
        let mut w = self.clone();
        for (c, v) in rhs.iter() {
            w.add_to(c, v);
        }
        w
    }
}

impl std::ops::Sub for &WeightVector {
    type Output = WeightVector;

    fn sub(self, rhs: &WeightVector) -> WeightVector {
        let mut w = self.clone();
        for (c, v) in rhs.iter() {
            w.add_to(c, -v);
        }
        w
    }
}

impl fmt::Display for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (c, v) in self.iter() {
            if !first {
                write!(f, "{}", if v < 0 { "-" } else { "+" })?;
            } else if v < 0 {
                write!(f, "-")?;
            }
            first = false;
            match v.abs() {
                1 => write!(f, "L{c}")?,
                k => write!(f, "{k}L{c}")?,
            }
        }
        Ok(())
    }
}

/// `<h_i, w>`: coefficient extraction in the `Λ` basis.
pub fn pairing(t: RootSystemType, i: Color, w: &WeightVector) -> Result<i64> {
    t.position(i)?;
    Ok(w.get(i))
}

/// `<h_i, alpha_j> = a(i, j)`.
pub fn pairing_root(t: RootSystemType, i: Color, j: Color) -> Result<i64> {
    t.position(i)?;
    t.position(j)?;
    Ok(cartan_matrix(t).get(i, j))
}

pub fn level(t: RootSystemType, w: &WeightVector) -> Result<i64> {
    let labels = dual_kac_labels(t)?;
    if !w.is_dominant() {
        return Err(CrystalError::NotDominant(w.to_string()));
    }
    let mut total = 0;
    for (c, v) in w.iter() {
        let pos = t.position(c)?;
        total += labels[pos] * v;
    }
    Ok(total)
}

/// The simple root `alpha_j` in fundamental weight coordinates: column `j`
/// of the Cartan matrix.
pub fn simple_root(t: RootSystemType, j: Color) -> WeightVector {
    let a = cartan_matrix(t);
    let mut w = WeightVector::zero();
    for i in t.colors() {
        w.set(i, a.get(i, j));
    }
    w
}

/// All dominant weights of level exactly `k`, in lexicographic order of
/// their dense coefficient lists.
pub fn dominant_weights_of_level(t: RootSystemType, k: i64) -> Result<Vec<WeightVector>> {
    let labels = dual_kac_labels(t)?;
    let mut out = Vec::new();
    let mut current = vec![0i64; labels.len()];
    fn rec(
        pos: usize,
        remaining: i64,
        labels: &[i64],
        current: &mut Vec<i64>,
        out: &mut Vec<Vec<i64>>,
    ) {
        if pos == labels.len() {
            if remaining == 0 {
                out.push(current.clone());
            }
            return;
        }
        let mut c = 0;
        while c * labels[pos] <= remaining {
            current[pos] = c;
            rec(pos + 1, remaining - c * labels[pos], labels, current, out);
            c += 1;
        }
        current[pos] = 0;
    }
    let mut dense = Vec::new();
    rec(0, k, &labels, &mut current, &mut dense);
    for d in dense {
        out.push(WeightVector::from_dense(t, &d)?);
    }
    Ok(out)
}
