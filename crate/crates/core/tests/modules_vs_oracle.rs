mod common;

use common::*;
use gpi_core::gfq_linalg::Field;
use gpi_core::group_core::{sylow_subgroup, Family};
use gpi_core::rep_mod::{decompose_representation, induce_module};
use gpi_core::tame_enum::{count_indecomposables, wild_family};

#[test]
fn higman_counts_small_cyclic_sylow() {
    let cases: Vec<(&str, FiniteGroupCtor, u8, usize)> = vec![
        ("Z2", || cyc(2), 2, 2),
        ("Z4", || cyc(4), 2, 4),
        ("Z3", || cyc(3), 3, 3),
        ("Z6", || cyc(6), 2, 4),
        ("S3", || mk(Family::Symmetric(3)), 2, 3),
        ("Z6", || cyc(6), 3, 6),
    ];
    for (name, ctor, p, expected) in cases {
        let q = ctor();
        let c = brute_indecomposables(&q, Field::gf(p), 1 << 20);
        let total: usize = c.per_dim.iter().sum();
        assert_eq!(total, expected, "{name} over GF({p}): {:?}", c.per_dim);
        assert!(total <= q.order());
    }
}

type FiniteGroupCtor = fn() -> gpi_core::group_core::FiniteGroup;

#[test]
fn summands_of_modules_induced_from_sylow_cover_the_census() {
    // every indecomposable is a summand of a module induced from the Sylow subgroup
    let q = mk(Family::Symmetric(3));
    let field = Field::gf(2);
    let census = brute_indecomposables(&q, field, 1 << 20);
    let p = sylow_subgroup(&q, 2).unwrap();
    let (pg, _) = gpi_core::group_core::subgroup_as_group(&q, &p);
    let mut dims = Vec::new();
    for ind in brute_indecomposables(&pg, field, 1 << 20).modules {
        let induced = induce_module(&q, &p, &ind).unwrap();
        for b in decompose_representation(&induced, 0).unwrap().blocks {
            dims.push(b.dim);
        }
    }
    dims.sort();
    dims.dedup();
    let mut census_dims: Vec<usize> = census.modules.iter().map(|m| m.d).collect();
    census_dims.sort();
    census_dims.dedup();
    assert_eq!(dims, census_dims);
}

#[test]
fn wild_family_matches_burnside_count() {
    for (p, d) in [(2u8, 1usize), (2, 2), (3, 2), (2, 3)] {
        let w = wild_family(p, d, 0).unwrap();
        assert_eq!(w.classes as u64, wild_orbit_count(p, d), "p={p} d={d}");
        assert!(w.classes as u64 >= w.lower_bound);
    }
}

#[test]
fn semidihedral_census_small_dimensions() {
    let totals: Vec<usize> = (1..=4).map(|d| count_indecomposables(1, d, 0).unwrap().total).collect();
    assert_eq!(totals, vec![1, 5, 4, 16]);
    for d in 1..=4 {
        let c = count_indecomposables(1, d, 3).unwrap();
        assert!(c.passes());
        assert_eq!(c.certified_indecomposable, c.total);
    }
}
