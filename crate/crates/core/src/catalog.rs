//! Cartan matrices of the standard types, in Bourbaki numbering.
//!
//! Entry `(i, j)` is `⟨α_i, α̌_j⟩`, so for B_n the long-to-short entry
//! `(n-1, n)` is −2 and for C_n it is −1.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::cartan::CartanMatrix;

/// Parses names like `a3`, `B2`, `g2`, `f4`, `d4` or `a1~` (affine A₁).
pub fn named(name: &str) -> Option<CartanMatrix> {
    let name = name.trim().to_ascii_lowercase();
    if name == "a1~" {
        return CartanMatrix::new(labels(&["a0", "a1"]), vec![vec![2, -2], vec![-2, 2]]).ok();
    }
    let (kind, n) = name.split_at(1);
    let n: usize = n.parse().ok()?;
    let rows = match (kind, n) {
        ("a", n) if n >= 1 => type_a(n),
        ("b", n) if n >= 2 => type_bc(n, true),
        ("c", n) if n >= 2 => type_bc(n, false),
        ("d", n) if n >= 4 => type_d(n),
        ("g", 2) => vec![vec![2, -1], vec![-3, 2]],
        ("f", 4) => vec![
            vec![2, -1, 0, 0],
            vec![-1, 2, -2, 0],
            vec![0, -1, 2, -1],
            vec![0, 0, -1, 2],
        ],
        ("e", n @ 6..=8) => type_e(n),
        _ => return None,
    };
    let labels = (1..=rows.len()).map(|i| format!("a{i}")).collect();
    CartanMatrix::new(labels, rows).ok()
}

/// Names accepted by [`named`] for the finite types of rank ≤ 4, plus affine A₁.
pub const BUILTIN: &[&str] = &[
    "a1", "a2", "a3", "a4", "b2", "b3", "b4", "c2", "c3", "c4", "d4", "f4", "g2", "a1~",
];

fn labels(ls: &[&str]) -> Vec<String> {
    ls.iter().map(|s| String::from(*s)).collect()
}

fn blank(n: usize) -> Vec<Vec<i64>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { 2 } else { 0 }).collect())
        .collect()
}

fn link(m: &mut [Vec<i64>], i: usize, j: usize) {
    m[i][j] = -1;
    m[j][i] = -1;
}

fn type_a(n: usize) -> Vec<Vec<i64>> {
    let mut m = blank(n);
    for i in 1..n {
        link(&mut m, i - 1, i);
    }
    m
}

fn type_bc(n: usize, b: bool) -> Vec<Vec<i64>> {
    let mut m = type_a(n);
    if b {
        m[n - 2][n - 1] = -2;
    } else {
        m[n - 1][n - 2] = -2;
    }
    m
}

fn type_d(n: usize) -> Vec<Vec<i64>> {
    let mut m = blank(n);
    for i in 1..n - 1 {
        link(&mut m, i - 1, i);
    }
    link(&mut m, n - 3, n - 1);
    m
}

fn type_e(n: usize) -> Vec<Vec<i64>> {
    let mut m = blank(n);
    link(&mut m, 0, 2);
    link(&mut m, 1, 3);
    for i in 3..n {
        link(&mut m, i - 1, i);
    }
    m
}
