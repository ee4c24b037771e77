//! Klein four group over GF(2): F2[x,y]/(x^2, y^2) with the dihedral string/band grammar,
//! checked against a brute-force census of commuting square-zero pairs.

use crate::error::Result;
use crate::gfq_linalg::{vec_from_index, Field, Matrix};
use crate::rep_mod::{is_indecomposable, module_isomorphism, MatrixModule};
use serde::Serialize;

/// (is_x, positive)
type KLetter = (bool, bool);

fn inverse(w: &[KLetter]) -> Vec<KLetter> {
    w.iter().rev().map(|&(t, s)| (t, !s)).collect()
}

fn alternating(w: &[KLetter]) -> bool {
    w.windows(2).all(|p| p[0].0 != p[1].0 && p[0].1 != p[1].1)
}

fn words(n: usize) -> Vec<Vec<KLetter>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|w| {
                [(true, true), (true, false), (false, true), (false, false)].into_iter().map(move |c| {
                    let mut v = w.clone();
                    v.push(c);
                    v
                })
            })
            .filter(|w| alternating(w))
            .collect();
    }
    out
}

fn string_module(w: &[KLetter]) -> MatrixModule {
    let f = Field::gf(2);
    let n = w.len() + 1;
    let mut x = Matrix::zeros(f, n, n);
    let mut y = Matrix::zeros(f, n, n);
    for (i, &(is_x, pos)) in w.iter().enumerate() {
        let (src, dst) = if pos { (i + 1, i) } else { (i, i + 1) };
        if is_x { x.set(dst, src, 1) } else { y.set(dst, src, 1) }
    }
    MatrixModule { field: f, dim: n, gens: vec![x, y] }
}

/// Band with k-dimensional spaces; the first letter is x positive and carries the Jordan block J_k(1).
fn band_module(w: &[KLetter], k: usize) -> MatrixModule {
    let f = Field::gf(2);
    let n = w.len();
    let dim = n * k;
    let mut x = Matrix::zeros(f, dim, dim);
    let mut y = Matrix::zeros(f, dim, dim);
    for (i, &(is_x, pos)) in w.iter().enumerate() {
        let (u, v) = (i, (i + 1) % n);
        let (src, dst) = if pos { (v, u) } else { (u, v) };
        let target = if is_x { &mut x } else { &mut y };
        for r in 0..k {
            target.set(dst * k + r, src * k + r, 1);
            if i == 0 && r + 1 < k {
                target.set(dst * k + r, src * k + r + 1, 1);
            }
        }
    }
    MatrixModule { field: f, dim, gens: vec![x, y] }
}

/// String and band modules of the grammar, dimension <= max_dim, one per equivalence class.
pub fn grammar_modules(max_dim: usize) -> Vec<MatrixModule> {
    let mut out = Vec::new();
    for n in 0..max_dim {
        for w in words(n) {
            if w <= inverse(&w) {
                out.push(string_module(&w));
            }
        }
    }
    for n in (2..=max_dim).step_by(2) {
        for w in words(n) {
            let rots = |v: &[KLetter]| (0..n).map(|r| v[r..].iter().chain(&v[..r]).copied().collect::<Vec<_>>()).collect::<Vec<_>>();
            let inv = inverse(&w);
            let all: Vec<_> = rots(&w).into_iter().chain(rots(&inv)).collect();
            let is_power = (1..n).any(|p| n % p == 0 && (p..n).all(|i| w[i] == w[i - p]));
            if is_power || w[0] != (true, true) || all.iter().filter(|r| r[0] == (true, true)).min() != Some(&w) {
                continue;
            }
            for k in 1..=max_dim / n {
                out.push(band_module(&w, k));
            }
        }
    }
    out
}

/// Indecomposable pairs (X, Y) of commuting square-zero n x n matrices over GF(2), up to conjugacy.
pub fn brute_modules(n: usize, seed: u64) -> Result<Vec<MatrixModule>> {
    let f = Field::gf(2);
    let sq0: Vec<Matrix> = (0..1usize << (n * n))
        .map(|i| Matrix::from_flat(f, n, n, vec_from_index(f, i, n * n)).expect("shape"))
        .filter(|m| m.mul(m).is_zero())
        .collect();
    let mut reps: Vec<MatrixModule> = Vec::new();
    for x in &sq0 {
        for y in &sq0 {
            if x.mul(y) != y.mul(x) {
                continue;
            }
            let m = MatrixModule { field: f, dim: n, gens: vec![x.clone(), y.clone()] };
            if !is_indecomposable(&m)? {
                continue;
            }
            let mut fresh = true;
            for r in &reps {
                if r.fingerprint() == m.fingerprint() && module_isomorphism(r, &m, seed)?.is_some() {
                    fresh = false;
                    break;
                }
            }
            if fresh {
                reps.push(m);
            }
        }
    }
    Ok(reps)
}

#[derive(Clone, Debug, Serialize)]
pub struct KleinCheck {
    /// (dimension, brute count, grammar count)
    pub per_dim: Vec<(usize, usize, usize)>,
    pub grammar_relations_hold: bool,
    pub grammar_pairwise_distinct: bool,
    pub matches: bool,
}

pub fn klein_four_check(max_dim: usize, seed: u64) -> Result<KleinCheck> {
    let grammar = grammar_modules(max_dim);
    let relations = grammar.iter().all(|m| {
        let (x, y) = (&m.gens[0], &m.gens[1]);
        x.mul(x).is_zero() && y.mul(y).is_zero() && x.mul(y) == y.mul(x)
    });
    let mut distinct = true;
    for (i, a) in grammar.iter().enumerate() {
        for b in &grammar[i + 1..] {
            if a.dim == b.dim && module_isomorphism(a, b, seed)?.is_some() {
                distinct = false;
            }
        }
    }
    let mut per_dim = Vec::new();
    let mut matches = relations && distinct;
    for n in 1..=max_dim {
        let brute = brute_modules(n, seed)?;
        let ours: Vec<&MatrixModule> = grammar.iter().filter(|m| m.dim == n).collect();
        for m in &ours {
            let mut found = false;
            for r in &brute {
                if module_isomorphism(r, m, seed)?.is_some() {
                    found = true;
                    break;
                }
            }
            matches &= found;
        }
        matches &= brute.len() == ours.len();
        per_dim.push((n, brute.len(), ours.len()));
    }
    Ok(KleinCheck { per_dim, grammar_relations_hold: relations, grammar_pairwise_distinct: distinct, matches })
}
