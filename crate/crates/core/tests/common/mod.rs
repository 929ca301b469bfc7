//! Independent oracles shared by the integration tests. Nothing here goes
//! through the crystal model: roots come from string closure on the Cartan
//! matrix, and type-A weights from semistandard tableaux.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use crystal_walks::cartan::{RootSystemType, WeightVector};

/// Positive roots in simple-root coordinates for the finite Cartan matrix
/// `a` with `a[i][j] = <h_i, α_j>`.
pub fn positive_roots(a: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    let mut roots: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut layer: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            let mut v = vec![0; n];
            v[i] = 1;
            v
        })
        .collect();
    while !layer.is_empty() {
        roots.extend(layer.iter().cloned());
        let mut next = BTreeSet::new();
        for beta in &layer {
            for i in 0..n {
                if beta.iter().enumerate().all(|(j, &c)| c == (i == j) as i64) {
                    continue;
                }
                // p: how far down the α_i-string through β goes.
                let mut p = 0;
                let mut down = beta.clone();
                loop {
                    down[i] -= 1;
                    if down[i] < 0 || !roots.contains(&down) {
                        break;
                    }
                    p += 1;
                }
                let pairing: i64 = (0..n).map(|j| a[i][j] * beta[j]).sum();
                if p - pairing > 0 {
                    let mut up = beta.clone();
                    up[i] += 1;
                    next.insert(up);
                }
            }
        }
        layer = next.into_iter().collect();
    }
    roots.into_iter().collect()
}

fn gcd(a: u128, b: u128) -> u128 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Weyl's dimension formula, `Π <λ+ρ, β^∨> / <ρ, β^∨>` over positive
/// coroots, which are the positive roots of the transposed matrix.
pub fn weyl_dimension(t: RootSystemType, lambda: &WeightVector) -> u128 {
    assert!(!t.is_affine());
    let a = t.cartan_matrix().transpose();
    let dense = lambda.to_dense(t);
    let (mut num, mut den) = (1u128, 1u128);
    for coroot in positive_roots(&a) {
        let top: i64 = coroot.iter().zip(&dense).map(|(c, l)| c * (l + 1)).sum();
        let bottom: i64 = coroot.iter().sum();
        num *= top as u128;
        den *= bottom as u128;
        let g = gcd(num, den);
        num /= g;
        den /= g;
    }
    assert_eq!(den, 1);
    num
}

/// Weight multiset of `B(λ)` in type `A_n` from semistandard tableaux of
/// the corresponding shape with entries `1..=n+1`.
pub fn type_a_weights(n: usize, lambda: &[i64]) -> BTreeMap<Vec<i64>, usize> {
    let mut shape = vec![0usize; n];
    for k in 0..n {
        shape[k] = lambda[k..].iter().sum::<i64>() as usize;
    }
    let shape: Vec<usize> = shape.into_iter().filter(|&r| r > 0).collect();
    let cells: Vec<(usize, usize)> = shape
        .iter()
        .enumerate()
        .flat_map(|(r, &len)| (0..len).map(move |c| (r, c)))
        .collect();
    let mut grid = vec![vec![0usize; shape.first().copied().unwrap_or(0)]; shape.len()];
    let mut out = BTreeMap::new();
    fn fill(
        k: usize,
        cells: &[(usize, usize)],
        grid: &mut Vec<Vec<usize>>,
        n: usize,
        out: &mut BTreeMap<Vec<i64>, usize>,
    ) {
        if k == cells.len() {
            let mut content = vec![0i64; n + 2];
            for &(r, c) in cells {
                content[grid[r][c]] += 1;
            }
            let wt: Vec<i64> = (1..=n).map(|i| content[i] - content[i + 1]).collect();
            *out.entry(wt).or_insert(0) += 1;
            return;
        }
        let (r, c) = cells[k];
        let lo_row = if c > 0 { grid[r][c - 1] } else { 1 };
        let lo_col = if r > 0 { grid[r - 1][c] + 1 } else { 1 };
        for v in lo_row.max(lo_col)..=n + 1 {
            grid[r][c] = v;
            fill(k + 1, cells, grid, n, out);
        }
    }
    fill(0, &cells, &mut grid, n, &mut out);
    out
}
