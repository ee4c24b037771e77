use super::{element_order, FiniteGroup};
use crate::error::{GpiError, Result};
use crate::gfq_linalg::field::is_prime;
use crate::gfq_linalg::{vec_from_index, vec_index, Field};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug)]
pub enum Family {
    Cyclic(usize),
    ElemAb { p: usize, d: usize },
    /// x^2 = y^{2^m} = 1, yx = xy^{-1}; order 2^{m+1}.
    Dihedral(u32),
    /// x^2 = y^{2^m} = 1, yx = xy^{2^{m-1}-1}; order 2^{m+1}.
    Semidihedral(u32),
    /// x^2 = y^{2^{m-1}}, y^{2^m} = 1, yx = xy^{-1}; order 2^{m+1}.
    Quaternion(u32),
    /// Dihedral group with `n` rotations (order 2n).
    Dih(usize),
    Product(Box<FiniteGroup>, Box<FiniteGroup>),
    Symmetric(usize),
    Alternating(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", content = "m", rename_all = "lowercase")]
pub enum TameType {
    Trivial,
    Cyclic,
    Dihedral(u32),
    Semidihedral(u32),
    Quaternion(u32),
    None,
}

fn two_power_group(m: u32, r: i64, quaternion: bool) -> FiniteGroup {
    let ny = 1usize << m;
    let r = r.rem_euclid(ny as i64) as usize;
    let shift = if quaternion { ny / 2 } else { 0 };
    // element index a * 2^m + b stands for x^a y^b
    FiniteGroup::from_fn_unchecked(2 * ny, |u, v| {
        let (a, b) = (u / ny, u % ny);
        let (c, d) = (v / ny, v % ny);
        let b2 = if c == 1 { b * r % ny } else { b };
        let mut e = b2 + d;
        if a + c == 2 {
            e += shift;
        }
        ((a + c) % 2) * ny + e % ny
    })
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        // next lexicographic permutation
        let Some(i) = (0..k.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
            break;
        };
        let j = (i + 1..k).rev().find(|&j| cur[j] > cur[i]).unwrap();
        cur.swap(i, j);
        cur[i + 1..].reverse();
    }
    out
}

fn parity(p: &[usize]) -> bool {
    let mut inv = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inv += 1;
            }
        }
    }
    inv % 2 == 0
}

fn perm_group_table(perms: Vec<Vec<usize>>) -> FiniteGroup {
    let index: std::collections::HashMap<Vec<usize>, usize> =
        perms.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
    FiniteGroup::from_fn_unchecked(perms.len(), |a, b| {
        let c: Vec<usize> = (0..perms[a].len()).map(|x| perms[a][perms[b][x]]).collect();
        index[&c]
    })
}

pub fn make_group(family: &Family) -> Result<FiniteGroup> {
    let bad = |s: String| Err(GpiError::Invalid(s));
    match family {
        Family::Cyclic(n) => {
            if *n == 0 {
                return bad("cyclic group of order 0".into());
            }
            let n = *n;
            Ok(FiniteGroup::from_fn_unchecked(n, |a, b| (a + b) % n))
        }
        Family::ElemAb { p, d } => {
            if !is_prime(*p as u64) || *p > 251 {
                return bad(format!("elementary abelian needs a prime <= 251, got {p}"));
            }
            let f = Field::gf(*p as u8);
            let n = p.checked_pow(*d as u32).filter(|&n| n <= 4096);
            let Some(n) = n else { return bad("elementary abelian group too large".into()) };
            let d = *d;
            Ok(FiniteGroup::from_fn_unchecked(n, |a, b| {
                let va = vec_from_index(f, a, d);
                let vb = vec_from_index(f, b, d);
                let s: Vec<u8> = va.iter().zip(&vb).map(|(&x, &y)| f.add(x, y)).collect();
                vec_index(f, &s)
            }))
        }
        Family::Dihedral(m) => {
            if *m < 1 || *m > 10 {
                return bad(format!("dihedral parameter m = {m} outside 1..=10"));
            }
            Ok(two_power_group(*m, -1, false))
        }
        Family::Semidihedral(m) => {
            if *m < 3 || *m > 10 {
                return bad(format!(
                    "semidihedral parameter m = {m}: need 3 <= m <= 10 (m = 2 gives Z2 x Z4)"
                ));
            }
            Ok(two_power_group(*m, (1i64 << (m - 1)) - 1, false))
        }
        Family::Quaternion(m) => {
            if *m < 2 || *m > 10 {
                return bad(format!("quaternion parameter m = {m} outside 2..=10"));
            }
            Ok(two_power_group(*m, -1, true))
        }
        Family::Dih(n) => {
            if *n == 0 {
                return bad("dihedral group with 0 rotations".into());
            }
            let n = *n;
            // index a * n + b stands for s^a r^b with r^b s = s r^{-b}
            Ok(FiniteGroup::from_fn_unchecked(2 * n, |u, v| {
                let (a, b) = (u / n, u % n);
                let (c, d) = (v / n, v % n);
                let b2 = if c == 1 { (n - b) % n } else { b };
                ((a + c) % 2) * n + (b2 + d) % n
            }))
        }
        Family::Product(g, h) => {
            let (ng, nh) = (g.order(), h.order());
            Ok(FiniteGroup::from_fn_unchecked(ng * nh, |u, v| {
                g.mul(u / nh, v / nh) * nh + h.mul(u % nh, v % nh)
            }))
        }
        Family::Symmetric(k) => {
            if *k == 0 || *k > 5 {
                return bad(format!("symmetric degree {k} outside 1..=5"));
            }
            Ok(perm_group_table(permutations(*k)))
        }
        Family::Alternating(k) => {
            if *k == 0 || *k > 5 {
                return bad(format!("alternating degree {k} outside 1..=5"));
            }
            Ok(perm_group_table(permutations(*k).into_iter().filter(|p| parity(p)).collect()))
        }
    }
}

/// Exhaustive presentation search over generator pairs.
pub fn recognize_tame_2group(p: &FiniteGroup) -> (TameType, Option<String>) {
    let n = p.order();
    if !n.is_power_of_two() {
        return (TameType::None, Some("not a 2-group".into()));
    }
    if n == 1 {
        return (TameType::Trivial, None);
    }
    let orders = p.element_orders();
    if orders.contains(&n) {
        return (TameType::Cyclic, None);
    }
    let m = n.trailing_zeros() - 1;
    let ny = 1usize << m;
    let ys: Vec<usize> = (0..n).filter(|&y| orders[y] == ny).collect();
    let try_family = |r: i64, quaternion: bool| -> bool {
        let r = r.rem_euclid(ny as i64);
        for &y in &ys {
            let yr = p.pow(y, r);
            let yhalf = p.pow(y, (ny / 2) as i64);
            let mut in_y = vec![false; n];
            let mut z = 0;
            for _ in 0..ny {
                in_y[z] = true;
                z = p.mul(z, y);
            }
            for x in 0..n {
                if in_y[x] {
                    continue;
                }
                let sq = p.mul(x, x);
                let sq_ok = if quaternion { sq == yhalf } else { sq == 0 };
                if sq_ok && p.mul(y, x) == p.mul(x, yr) {
                    return true;
                }
            }
        }
        false
    };
    if m >= 1 && try_family(-1, false) {
        return (TameType::Dihedral(m), None);
    }
    if m >= 3 && try_family((1i64 << (m - 1)) - 1, false) {
        return (TameType::Semidihedral(m), None);
    }
    if m >= 2 && try_family(-1, true) {
        return (TameType::Quaternion(m), None);
    }
    (TameType::None, Some("no dihedral, semidihedral or quaternion presentation".into()))
}

#[allow(dead_code)]
fn order_census(g: &FiniteGroup) -> Vec<usize> {
    let mut c = vec![0; g.order() + 1];
    for x in 0..g.order() {
        c[element_order(g, x)] += 1;
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group_core::load_group;

    #[test]
    fn constructed_tables_are_groups() {
        let fams = [
            Family::Cyclic(6),
            Family::ElemAb { p: 3, d: 2 },
            Family::Dihedral(1),
            Family::Dihedral(3),
            Family::Semidihedral(3),
            Family::Quaternion(2),
            Family::Quaternion(3),
            Family::Dih(6),
            Family::Symmetric(4),
            Family::Alternating(4),
        ];
        for f in &fams {
            let g = make_group(f).unwrap();
            load_group(&g.table()).unwrap_or_else(|e| panic!("{f:?}: {e}"));
        }
    }

    #[test]
    fn spec_examples() {
        let d1 = make_group(&Family::Dihedral(1)).unwrap();
        assert_eq!(d1.order(), 4);
        assert_eq!(order_census(&d1)[2], 3);
        let q8 = make_group(&Family::Quaternion(2)).unwrap();
        assert_eq!(q8.order(), 8);
        assert_eq!(order_census(&q8)[2], 1);
        assert_eq!(make_group(&Family::Cyclic(1)).unwrap().order(), 1);
        assert!(make_group(&Family::Dihedral(0)).is_err());
        assert!(make_group(&Family::Quaternion(1)).is_err());
        assert!(make_group(&Family::Semidihedral(2)).is_err());
    }

    #[test]
    fn presentations_have_order_2_to_m_plus_1() {
        for m in 1..=4 {
            assert_eq!(make_group(&Family::Dihedral(m)).unwrap().order(), 1 << (m + 1));
        }
    }

    #[test]
    fn recognize_round_trip() {
        assert_eq!(recognize_tame_2group(&make_group(&Family::Cyclic(8)).unwrap()).0, TameType::Cyclic);
        for m in 1..=4 {
            let g = make_group(&Family::Dihedral(m)).unwrap();
            assert_eq!(recognize_tame_2group(&g).0, TameType::Dihedral(m));
        }
        for m in 3..=4 {
            let g = make_group(&Family::Semidihedral(m)).unwrap();
            assert_eq!(recognize_tame_2group(&g).0, TameType::Semidihedral(m));
        }
        for m in 2..=4 {
            let g = make_group(&Family::Quaternion(m)).unwrap();
            assert_eq!(recognize_tame_2group(&g).0, TameType::Quaternion(m));
        }
        let z2 = make_group(&Family::Cyclic(2)).unwrap();
        let z4 = make_group(&Family::Cyclic(4)).unwrap();
        let p = make_group(&Family::Product(Box::new(z2), Box::new(z4))).unwrap();
        assert_eq!(recognize_tame_2group(&p).0, TameType::None);
        let s3 = make_group(&Family::Symmetric(3)).unwrap();
        assert_eq!(recognize_tame_2group(&s3).1.as_deref(), Some("not a 2-group"));
    }
}
