use super::quiver::{expand, gf4, materialize, module_dim, AuxChoice, SDModule, Space};
use super::words::{enumerate_words, word_string, Configuration, WordClass};
use crate::error::{GpiError, Result};
use crate::gfq_linalg::{vec_from_index, Field, Matrix};
use crate::rep_mod::{is_indecomposable, module_isomorphism, MatrixModule};
use serde::Serialize;
use std::collections::HashMap;

pub const CLASSES: [WordClass; 4] =
    [WordClass::SymString, WordClass::AsymString, WordClass::AsymBand, WordClass::SymBand];

/// Largest dimension certified indecomposable by the decomposition routine.
pub const CERTIFY_MAX_DIM: usize = 6;

/// Upper bounds per class at dimension d: 2*4^d, 4^(d+1), 3d*4^d, d*4^(d+1).
pub fn class_bound(class: &WordClass, d: usize) -> u128 {
    let p = 4u128.pow(d as u32);
    let d = d as u128;
    match class {
        WordClass::SymString => 2 * p,
        WordClass::AsymString => 4 * p,
        WordClass::AsymBand => 3 * d * p,
        WordClass::SymBand => 4 * d * p,
        WordClass::Invalid(_) => 0,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassCount {
    pub class: String,
    pub count: usize,
    pub bound: u128,
    pub within_bound: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Collision {
    pub dropped: String,
    pub kept: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct DimensionCensus {
    pub ell: usize,
    pub d: usize,
    pub classes: Vec<ClassCount>,
    pub total: usize,
    pub total_bound: u128,
    /// Modules materialized before removing isomorphic duplicates; all passed the relation check.
    pub materialized: usize,
    /// Distinct configurations whose modules turned out isomorphic to an earlier one.
    pub collisions: Vec<Collision>,
    pub certified_indecomposable: usize,
    pub not_indecomposable: Vec<String>,
    #[serde(skip)]
    pub modules: Vec<SDModule>,
}

impl DimensionCensus {
    pub fn passes(&self) -> bool {
        self.classes.iter().all(|c| c.within_bound) && self.not_indecomposable.is_empty()
    }
}

fn describe(m: &SDModule) -> String {
    format!("{} {} {:?}", m.class.name(), word_string(&m.word.letters), m.aux)
}

/// Indecomposable pairs of idempotents on GF(4)^k, k <= 2, up to simultaneous conjugacy.
pub fn idempotent_pairs(k: usize, seed: u64) -> Result<Vec<(Matrix, Matrix)>> {
    let f = gf4();
    let total = 4usize.pow((k * k) as u32);
    let idem: Vec<Matrix> = (0..total)
        .map(|i| Matrix::from_flat(f, k, k, vec_from_index(f, i, k * k)).expect("shape"))
        .filter(|m| m.mul(m) == *m)
        .collect();
    let mut reps: Vec<MatrixModule> = Vec::new();
    let mut out = Vec::new();
    for e in &idem {
        for g in &idem {
            let m = MatrixModule { field: f, dim: k, gens: vec![e.clone(), g.clone()] };
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
                out.push((e.clone(), g.clone()));
            }
        }
    }
    Ok(out)
}

fn rows(m: &Matrix) -> Vec<Vec<u8>> {
    (0..m.rows).map(|r| m.row(r).to_vec()).collect()
}

fn aux_choices(config: &Configuration, d: usize, pairs: &[Vec<(Matrix, Matrix)>]) -> Vec<AuxChoice> {
    match config.class {
        WordClass::AsymString => vec![AuxChoice::Field],
        WordClass::SymString => vec![AuxChoice::Idempotent { e: false }, AuxChoice::Idempotent { e: true }],
        WordClass::AsymBand => {
            let n = expand(config).count(Space::V);
            if d % n != 0 {
                return vec![];
            }
            (1..4u8).map(|eigenvalue| AuxChoice::Jordan { dim: d / n, eigenvalue }).collect()
        }
        WordClass::SymBand => pairs
            .iter()
            .flatten()
            .map(|(e, f)| AuxChoice::Idempotents { e: rows(e), f: rows(f) })
            .collect(),
        WordClass::Invalid(_) => vec![],
    }
}

/// Enumerate, build, deduplicate and count the Lambda_l modules of dimension d.
pub fn count_indecomposables(ell: usize, d: usize, seed: u64) -> Result<DimensionCensus> {
    if d > 10 || d == 0 {
        return Err(GpiError::Budget(format!("count_indecomposables supports 1 <= d <= 10, got {d}")));
    }
    let pairs = vec![idempotent_pairs(1, seed)?, idempotent_pairs(2, seed)?];
    let configs = enumerate_words(ell, d);
    let mut kept: Vec<SDModule> = Vec::new();
    let mut buckets: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
    let mut collisions = Vec::new();
    let mut materialized = 0usize;
    for class in CLASSES.iter() {
        for config in configs.iter().filter(|c| &c.class == class) {
            let q = expand(config);
            for aux in aux_choices(config, d, &pairs) {
                if module_dim(&q, &aux) != d {
                    continue;
                }
                let m = materialize(config, &q, &aux)?;
                materialized += 1;
                let mm = m.module();
                let key = mm.fingerprint();
                let bucket = buckets.entry(key).or_default();
                let mut dup = None;
                for &i in bucket.iter() {
                    if module_isomorphism(&kept[i].module(), &mm, seed)?.is_some() {
                        dup = Some(i);
                        break;
                    }
                }
                match dup {
                    Some(i) => collisions.push(Collision { dropped: describe(&m), kept: describe(&kept[i]) }),
                    None => {
                        bucket.push(kept.len());
                        kept.push(m);
                    }
                }
            }
        }
    }
    let mut certified = 0;
    let mut not_indecomposable = Vec::new();
    if d <= CERTIFY_MAX_DIM {
        for m in &kept {
            if is_indecomposable(&m.module())? {
                certified += 1;
            } else {
                not_indecomposable.push(describe(m));
            }
        }
    }
    let classes: Vec<ClassCount> = CLASSES
        .iter()
        .map(|c| {
            let count = kept.iter().filter(|m| &m.class == c).count();
            let bound = class_bound(c, d);
            ClassCount { class: c.name().into(), count, bound, within_bound: count as u128 <= bound }
        })
        .collect();
    Ok(DimensionCensus {
        ell,
        d,
        total: kept.len(),
        total_bound: CLASSES.iter().map(|c| class_bound(c, d)).sum(),
        classes,
        materialized,
        collisions,
        certified_indecomposable: certified,
        not_indecomposable,
        modules: kept,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct WildFamily {
    pub p: u8,
    pub d: usize,
    pub pairs: usize,
    pub classes: usize,
    pub lower_bound: u64,
    #[serde(skip)]
    pub representatives: Vec<MatrixModule>,
}

/// Pairs (J, B) with J the nilpotent Jordan block of size d, counted up to simultaneous conjugacy.
pub fn wild_family(p: u8, d: usize, seed: u64) -> Result<WildFamily> {
    let field = Field::new(p as u32)?;
    let total = (p as u64)
        .checked_pow((d * d) as u32)
        .filter(|&t| t <= 1 << 20)
        .ok_or_else(|| GpiError::Budget("p^(d^2) exceeds 2^20".into()))?;
    let mut j = Matrix::zeros(field, d, d);
    for r in 0..d.saturating_sub(1) {
        j.set(r, r + 1, 1);
    }
    let mut reps: Vec<MatrixModule> = Vec::new();
    let mut buckets: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
    for idx in 0..total as usize {
        let b = Matrix::from_flat(field, d, d, vec_from_index(field, idx, d * d))?;
        let m = MatrixModule { field, dim: d, gens: vec![j.clone(), b] };
        let bucket = buckets.entry(m.fingerprint()).or_default();
        let mut fresh = true;
        for &i in bucket.iter() {
            if module_isomorphism(&reps[i], &m, seed)?.is_some() {
                fresh = false;
                break;
            }
        }
        if fresh {
            bucket.push(reps.len());
            reps.push(m);
        }
    }
    let lower_bound = (p as u64).pow((d * d - d) as u32);
    Ok(WildFamily { p, d, pairs: total as usize, classes: reps.len(), lower_bound, representatives: reps })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn idempotent_pair_census() {
        assert_eq!(idempotent_pairs(1, 0).unwrap().len(), 4);
        // two lines in general position, or one line and a non-complementary pair
        assert!(!idempotent_pairs(2, 0).unwrap().is_empty());
    }

    #[test]
    fn small_census_is_consistent() {
        let c = count_indecomposables(1, 1, 0).unwrap();
        assert_eq!(c.total, 1);
        assert!(c.passes());
        let c = count_indecomposables(1, 2, 0).unwrap();
        assert!(c.passes());
        assert!(c.total >= 2);
    }

    #[test]
    fn wild_d1() {
        let w = wild_family(2, 1, 0).unwrap();
        assert_eq!(w.classes, 2);
    }
}
