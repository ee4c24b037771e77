use super::algebra::{simple_blocks, MatrixAlgebra, Wedderburn};
use super::{hom_space, MatrixModule, Representation};
use crate::error::{GpiError, Result};
use crate::gfq_linalg::{fitting_split, Matrix};

/// C with C A_i C^{-1} block diagonal, blocks listed in order.
#[derive(Clone, Debug)]
pub struct DecompositionResult {
    pub change_of_basis: Matrix,
    pub blocks: Vec<MatrixModule>,
    /// Iso-type index of each block (indices into `summands`).
    pub types: Vec<usize>,
    /// One representative per iso-type with its multiplicity.
    pub summands: Vec<(MatrixModule, usize)>,
}

impl DecompositionResult {
    pub fn multiplicities(&self) -> Vec<usize> {
        self.summands.iter().map(|s| s.1).collect()
    }

    /// Summand dimensions with multiplicity, sorted.
    pub fn dimension_multiset(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.blocks.iter().map(|b| b.dim).collect();
        v.sort();
        v
    }
}

/// Nontrivial Fitting split of M, or `None` if M is indecomposable.
fn split_once(m: &MatrixModule, seed: u64) -> Result<Option<(Vec<Vec<u8>>, Vec<Vec<u8>>)>> {
    let end = hom_space(m, m)?;
    if end.len() <= 1 {
        return Ok(None);
    }
    let f = m.field;
    let shifts: Vec<u8> = if f.size() <= 16 { f.elements().collect() } else { vec![0, 1] };
    for x in &end {
        for &c in &shifts {
            let y = x.sub(&Matrix::scalar(f, m.dim, c));
            if !y.is_invertible() && !y.is_nilpotent() {
                return fitting_split(&y).map(Some);
            }
        }
    }
    let alg = MatrixAlgebra::from_basis(f, m.dim, end);
    let w = Wedderburn::new(&alg)?;
    let blocks = simple_blocks(&w.quotient, seed)?;
    if blocks.len() == 1 && blocks[0].n() == 1 {
        return Ok(None);
    }
    let x = w.lift(&blocks[0].idempotents[0]);
    if x.is_invertible() || x.is_nilpotent() {
        return Err(GpiError::Verification("lifted idempotent does not split the module".into()));
    }
    fitting_split(&x).map(Some)
}

/// Recursive split; returns (basis columns as a d x k matrix, restricted module).
fn split_all(m: &MatrixModule, seed: u64) -> Result<Vec<(Matrix, MatrixModule)>> {
    let f = m.field;
    let Some((ker, im)) = split_once(m, seed)? else {
        return Ok(vec![(Matrix::identity(f, m.dim), m.clone())]);
    };
    let k = ker.len();
    let cols: Vec<Vec<u8>> = ker.into_iter().chain(im).collect();
    let r = Matrix::from_cols(f, m.dim, &cols);
    let ri = r.inv();
    let conj: Vec<Matrix> = m.gens.iter().map(|a| ri.mul(a).mul(&r)).collect();
    let mut out = Vec::new();
    for (start, len) in [(0, k), (k, m.dim - k)] {
        let sub = MatrixModule {
            field: f,
            dim: len,
            gens: conj.iter().map(|a| a.submatrix(start, start, len, len)).collect(),
        };
        for (basis, piece) in split_all(&sub, seed)? {
            let part = r.submatrix(0, start, m.dim, len);
            out.push((part.mul(&basis), piece));
        }
    }
    Ok(out)
}

/// Isomorphism between indecomposables: some basis vector of Hom is invertible iff they are isomorphic.
pub(crate) fn indecomposable_iso(a: &MatrixModule, b: &MatrixModule) -> Result<Option<Matrix>> {
    if a.dim != b.dim || a.fingerprint() != b.fingerprint() {
        return Ok(None);
    }
    Ok(hom_space(a, b)?.into_iter().find(|c| c.is_invertible()))
}

pub fn decompose_module(m: &MatrixModule, seed: u64) -> Result<DecompositionResult> {
    let f = m.field;
    let mut pieces = split_all(m, seed)?;
    pieces.sort_by_key(|(_, p)| (p.dim, p.fingerprint()));
    let mut summands: Vec<(MatrixModule, usize)> = Vec::new();
    let mut types = Vec::new();
    for (_, p) in &pieces {
        let mut hit = None;
        for (t, (rep, _)) in summands.iter().enumerate() {
            if indecomposable_iso(p, rep)?.is_some() {
                hit = Some(t);
                break;
            }
        }
        let t = match hit {
            Some(t) => {
                summands[t].1 += 1;
                t
            }
            None => {
                summands.push((p.clone(), 1));
                summands.len() - 1
            }
        };
        types.push(t);
    }
    // group equal types next to each other, preserving first-appearance order
    let mut order: Vec<usize> = (0..pieces.len()).collect();
    order.sort_by_key(|&i| types[i]);
    let cols: Vec<Vec<u8>> = order
        .iter()
        .flat_map(|&i| {
            let b = &pieces[i].0;
            (0..b.cols).map(move |c| b.col(c))
        })
        .collect();
    let r = if m.dim == 0 { Matrix::identity(f, 0) } else { Matrix::from_cols(f, m.dim, &cols) };
    let change_of_basis = r.inverse()?.ok_or_else(|| GpiError::Verification("summand bases are dependent".into()))?;
    let blocks: Vec<MatrixModule> = order.iter().map(|&i| pieces[i].1.clone()).collect();
    let types: Vec<usize> = order.iter().map(|&i| types[i]).collect();
    for (a, k) in m.gens.iter().enumerate() {
        let diag = Matrix::block_diag(f, &blocks.iter().map(|b| b.gens[a].clone()).collect::<Vec<_>>());
        if change_of_basis.mul(k).mul(&r) != diag {
            return Err(GpiError::Verification("decomposition is not block diagonal".into()));
        }
    }
    Ok(DecompositionResult { change_of_basis, blocks, types, summands })
}

pub fn decompose_representation(rep: &Representation, seed: u64) -> Result<DecompositionResult> {
    decompose_module(&rep.module(), seed)
}

pub fn is_indecomposable(m: &MatrixModule) -> Result<bool> {
    if m.dim == 0 {
        return Ok(false);
    }
    let end = hom_space(m, m)?;
    if end.len() == 1 {
        return Ok(true);
    }
    super::algebra::is_local(&MatrixAlgebra::from_basis(m.field, m.dim, end))
}

/// Krull-Schmidt matching of two decompositions; complete.
pub(crate) fn structural_isomorphism(m: &MatrixModule, n: &MatrixModule, seed: u64) -> Result<Option<Matrix>> {
    let dm = decompose_module(m, seed)?;
    let dn = decompose_module(n, seed)?;
    if dm.blocks.len() != dn.blocks.len() {
        return Ok(None);
    }
    let f = m.field;
    let mut used = vec![false; dn.blocks.len()];
    let mut offsets_n = vec![0usize; dn.blocks.len()];
    for i in 1..dn.blocks.len() {
        offsets_n[i] = offsets_n[i - 1] + dn.blocks[i - 1].dim;
    }
    let mut phi = Matrix::zeros(f, m.dim, m.dim);
    let mut off_m = 0;
    for bm in &dm.blocks {
        let mut matched = false;
        for (j, bn) in dn.blocks.iter().enumerate() {
            if used[j] {
                continue;
            }
            if let Some(c) = indecomposable_iso(bm, bn)? {
                used[j] = true;
                for r in 0..c.rows {
                    for col in 0..c.cols {
                        phi.set(offsets_n[j] + r, off_m + col, c.get(r, col));
                    }
                }
                matched = true;
                break;
            }
        }
        if !matched {
            return Ok(None);
        }
        off_m += bm.dim;
    }
    let c = dn.change_of_basis.inv().mul(&phi).mul(&dm.change_of_basis);
    Ok(Some(c))
}
