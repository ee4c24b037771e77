//! Named characteristic functors and isomorphism strategies, selected at runtime.

use super::{brute_coset, gpi_tower, IsoCoset, LayerReport, PipelineConfig};
use crate::error::{GpiError, Result};
use crate::group_core::{
    center, derived_subgroup, element_order, o_p_subgroup, prime_factors, FiniteGroup, Subgroup,
};
use std::collections::BTreeMap;

/// A rule picking a characteristic elementary abelian subgroup; trivial means "no layer".
pub trait CharacteristicFunctor: Send + Sync {
    fn name(&self) -> &'static str;
    fn apply(&self, g: &FiniteGroup) -> Subgroup;
}

pub trait IsoStrategy: Send + Sync {
    fn name(&self) -> &'static str;
    fn solve(
        &self,
        g: &FiniteGroup,
        h: &FiniteGroup,
        cfg: &PipelineConfig,
        registry: &Registry,
        layers: &mut Vec<LayerReport>,
    ) -> Result<IsoCoset>;
}

/// Elements of s of order dividing p.
fn omega1(g: &FiniteGroup, s: &[usize], p: usize) -> Subgroup {
    Subgroup::from_sorted(s.iter().copied().filter(|&x| p % element_order(g, x) == 0).collect())
}

/// Omega_1 Z(O_p(G)) for the largest p with O_p(G) nontrivial.
fn op_layer(g: &FiniteGroup) -> Subgroup {
    let mut primes = prime_factors(g.order());
    primes.sort_unstable_by(|a, b| b.cmp(a));
    for p in primes {
        let Ok(o) = o_p_subgroup(g, p) else { continue };
        if o.is_trivial() {
            continue;
        }
        let z: Vec<usize> = o
            .elements
            .iter()
            .copied()
            .filter(|&x| o.elements.iter().all(|&y| g.mul(x, y) == g.mul(y, x)))
            .collect();
        return omega1(g, &z, p);
    }
    Subgroup::trivial()
}

/// Omega_1 of the largest-prime part of an abelian characteristic subgroup.
fn abelian_layer(g: &FiniteGroup, s: &Subgroup) -> Subgroup {
    let mut primes = prime_factors(s.order());
    primes.sort_unstable_by(|a, b| b.cmp(a));
    match primes.first() {
        Some(&p) => omega1(g, &s.elements, p),
        None => Subgroup::trivial(),
    }
}

struct OpRadical;
impl CharacteristicFunctor for OpRadical {
    fn name(&self) -> &'static str {
        "o-p-radical"
    }
    fn apply(&self, g: &FiniteGroup) -> Subgroup {
        op_layer(g)
    }
}

struct CenterLayer;
impl CharacteristicFunctor for CenterLayer {
    fn name(&self) -> &'static str {
        "center"
    }
    fn apply(&self, g: &FiniteGroup) -> Subgroup {
        let a = abelian_layer(g, &center(g));
        if a.is_trivial() {
            op_layer(g)
        } else {
            a
        }
    }
}

struct DerivedLayer;
impl CharacteristicFunctor for DerivedLayer {
    fn name(&self) -> &'static str {
        "derived"
    }
    fn apply(&self, g: &FiniteGroup) -> Subgroup {
        let d = derived_subgroup(g);
        let abelian = d.elements.iter().all(|&x| d.elements.iter().all(|&y| g.mul(x, y) == g.mul(y, x)));
        let a = if abelian { abelian_layer(g, &d) } else { Subgroup::trivial() };
        if a.is_trivial() {
            op_layer(g)
        } else {
            a
        }
    }
}

struct Tower;
impl IsoStrategy for Tower {
    fn name(&self) -> &'static str {
        "tower"
    }
    fn solve(
        &self,
        g: &FiniteGroup,
        h: &FiniteGroup,
        cfg: &PipelineConfig,
        registry: &Registry,
        layers: &mut Vec<LayerReport>,
    ) -> Result<IsoCoset> {
        gpi_tower(g, h, registry.functor(&cfg.functor)?, cfg, layers)
    }
}

struct Brute;
impl IsoStrategy for Brute {
    fn name(&self) -> &'static str {
        "brute"
    }
    fn solve(
        &self,
        g: &FiniteGroup,
        h: &FiniteGroup,
        _cfg: &PipelineConfig,
        _registry: &Registry,
        _layers: &mut Vec<LayerReport>,
    ) -> Result<IsoCoset> {
        brute_coset(g, h)
    }
}

pub struct Registry {
    functors: BTreeMap<&'static str, Box<dyn CharacteristicFunctor>>,
    strategies: BTreeMap<&'static str, Box<dyn IsoStrategy>>,
}

impl Default for Registry {
    fn default() -> Self {
        let mut r = Registry::empty();
        r.register_functor(Box::new(OpRadical));
        r.register_functor(Box::new(CenterLayer));
        r.register_functor(Box::new(DerivedLayer));
        r.register_strategy(Box::new(Tower));
        r.register_strategy(Box::new(Brute));
        r
    }
}

impl Registry {
    pub fn empty() -> Registry {
        Registry { functors: BTreeMap::new(), strategies: BTreeMap::new() }
    }

    pub fn register_functor(&mut self, f: Box<dyn CharacteristicFunctor>) {
        self.functors.insert(f.name(), f);
    }

    pub fn register_strategy(&mut self, s: Box<dyn IsoStrategy>) {
        self.strategies.insert(s.name(), s);
    }

    pub fn functor(&self, name: &str) -> Result<&dyn CharacteristicFunctor> {
        self.functors
            .get(name)
            .map(|b| b.as_ref())
            .ok_or_else(|| GpiError::Invalid(format!("unknown functor '{name}' (known: {:?})", self.functor_names())))
    }

    pub fn strategy(&self, name: &str) -> Result<&dyn IsoStrategy> {
        self.strategies
            .get(name)
            .map(|b| b.as_ref())
            .ok_or_else(|| GpiError::Invalid(format!("unknown strategy '{name}' (known: {:?})", self.strategy_names())))
    }

    pub fn functor_names(&self) -> Vec<&'static str> {
        self.functors.keys().copied().collect()
    }

    pub fn strategy_names(&self) -> Vec<&'static str> {
        self.strategies.keys().copied().collect()
    }

    /// Run the named strategy, returning the coset and the per-layer reports.
    pub fn run(
        &self,
        strategy: &str,
        g: &FiniteGroup,
        h: &FiniteGroup,
        cfg: &PipelineConfig,
    ) -> Result<(IsoCoset, Vec<LayerReport>)> {
        let mut layers = Vec::new();
        let c = self.strategy(strategy)?.solve(g, h, cfg, self, &mut layers)?;
        Ok((c, layers))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group_core::{is_normal, make_group, Family};

    #[test]
    fn functors_give_normal_elementary_abelian_layers() {
        let reg = Registry::default();
        for f in [Family::Quaternion(2), Family::Symmetric(4), Family::Dih(6), Family::Cyclic(12)] {
            let g = make_group(&f).unwrap();
            for name in reg.functor_names() {
                let a = reg.functor(name).unwrap().apply(&g);
                assert!(!a.is_trivial(), "{name} {f:?}");
                assert!(is_normal(&g, &a));
                assert!(crate::group_core::elem_ab_structure(&g, &a).is_ok());
            }
        }
    }

    #[test]
    fn unknown_names_are_errors() {
        let reg = Registry::default();
        assert!(reg.functor("nope").is_err());
        assert!(reg.strategy("nope").is_err());
        assert_eq!(reg.strategy_names(), vec!["brute", "tower"]);
    }
}
