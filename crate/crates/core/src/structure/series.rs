use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::arith::prime_divisors;
use crate::error::{FinisError, Result};
use crate::perm::{quotient, PermGroup};
use crate::structure::{
    commutator_subgroup, conjugacy_classes, derived_subgroup, is_simple, maximal_normal_subgroups,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SeriesKind {
    Filtration,
    JordanHolder,
    Derived,
    LowerCentral,
}

/// Cheap isomorphism-type fingerprint of a (simple) factor group.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct FactorType {
    pub order: usize,
    pub abelian: bool,
    pub class_sizes: Vec<usize>,
    pub element_orders: Vec<u64>,
}

impl FactorType {
    pub fn of(g: &PermGroup) -> Result<Self> {
        let t = conjugacy_classes(g)?;
        let mut class_sizes = t.sizes.clone();
        class_sizes.sort_unstable();
        let mut element_orders: Vec<u64> = g.elements()?.iter().map(|x| x.order()).collect();
        element_orders.sort_unstable();
        Ok(FactorType {
            order: g.order()?,
            abelian: g.is_abelian(),
            class_sizes,
            element_orders,
        })
    }
}

/// Terms listed from the bottom up; `factor_orders[i]` is the index of
/// `terms[i]` in `terms[i + 1]`.
#[derive(Debug, Clone)]
pub struct SubnormalSeries {
    pub kind: SeriesKind,
    pub terms: Vec<PermGroup>,
    pub factor_orders: Vec<usize>,
    /// Only filled for Jordan–Hölder series.
    pub factors: Vec<FactorType>,
}

impl SubnormalSeries {
    fn from_descending(kind: SeriesKind, mut desc: Vec<PermGroup>) -> Result<Self> {
        desc.reverse();
        let mut factor_orders = Vec::new();
        for w in desc.windows(2) {
            factor_orders.push(w[1].order()? / w[0].order()?);
        }
        Ok(SubnormalSeries {
            kind,
            terms: desc,
            factor_orders,
            factors: Vec::new(),
        })
    }

    pub fn reaches_trivial(&self) -> bool {
        self.terms.first().is_some_and(|t| t.is_trivial() || t.order().ok() == Some(1))
    }

    /// Factor orders as a sorted multiset.
    pub fn factor_multiset(&self) -> Vec<usize> {
        let mut v = self.factor_orders.clone();
        v.sort_unstable();
        v
    }
}

/// `G ⊇ D¹G ⊇ D²G ⊇ …` until stationary.
pub fn derived_series(g: &PermGroup) -> Result<SubnormalSeries> {
    let mut desc = vec![g.clone()];
    loop {
        let last = desc.last().expect("nonempty");
        let d = derived_subgroup(last)?;
        if d.order()? == last.order()? {
            break;
        }
        desc.push(d);
    }
    SubnormalSeries::from_descending(SeriesKind::Derived, desc)
}

/// `C¹G = G`, `Cⁿ⁺¹G = (G, CⁿG)` until stationary.
pub fn lower_central_series(g: &PermGroup) -> Result<SubnormalSeries> {
    let mut desc = vec![g.clone()];
    loop {
        let last = desc.last().expect("nonempty");
        let c = commutator_subgroup(g, g, last)?;
        if c.order()? == last.order()? {
            break;
        }
        desc.push(c);
    }
    SubnormalSeries::from_descending(SeriesKind::LowerCentral, desc)
}

pub fn is_solvable(g: &PermGroup) -> Result<bool> {
    Ok(derived_series(g)?.reaches_trivial())
}

pub fn is_nilpotent(g: &PermGroup) -> Result<bool> {
    Ok(lower_central_series(g)?.reaches_trivial())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SolvabilityReport {
    pub solvable: bool,
    /// `cl(G)`, the derived length.
    pub class: Option<usize>,
    pub nilpotent: bool,
    pub nilpotency_class: Option<usize>,
}

/// Solvability and nilpotency from the two series, with nilpotency
/// cross-checked against uniqueness of every Sylow subgroup.
pub fn classify(g: &PermGroup) -> Result<SolvabilityReport> {
    let d = derived_series(g)?;
    let l = lower_central_series(g)?;
    let solvable = d.reaches_trivial();
    let nilpotent = l.reaches_trivial();
    let n = g.order()? as u64;
    let mut unique = true;
    for p in prime_divisors(n) {
        if crate::sylow::sylow_count(g, p)? != 1 {
            unique = false;
            break;
        }
    }
    if unique != nilpotent {
        return Err(FinisError::inconsistency(format!(
            "lower central series says nilpotent={nilpotent} but unique Sylows={unique}"
        )));
    }
    if nilpotent && !solvable {
        return Err(FinisError::inconsistency("nilpotent group that is not solvable"));
    }
    Ok(SolvabilityReport {
        solvable,
        class: solvable.then(|| d.factor_orders.len()),
        nilpotent,
        nilpotency_class: nilpotent.then(|| l.factor_orders.len()),
    })
}

/// A composition series built top-down by choosing a maximal normal
/// subgroup at each step; the default picks the largest one.
pub fn jordan_holder(g: &PermGroup) -> Result<SubnormalSeries> {
    jordan_holder_inner(g, None)
}

/// Same as [`jordan_holder`] but breaks ties among maximal normal
/// subgroups at random.
pub fn jordan_holder_seeded(g: &PermGroup, seed: u64) -> Result<SubnormalSeries> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    jordan_holder_inner(g, Some(&mut rng))
}

fn jordan_holder_inner(g: &PermGroup, mut rng: Option<&mut ChaCha8Rng>) -> Result<SubnormalSeries> {
    let mut desc = vec![g.clone()];
    let mut factors = Vec::new();
    loop {
        let top = desc.last().expect("nonempty").clone();
        if top.order()? == 1 {
            break;
        }
        let maxes = maximal_normal_subgroups(&top)?;
        let pick = match rng.as_deref_mut() {
            Some(r) => r.random_range(0..maxes.len()),
            None => 0,
        };
        let n = maxes[pick].clone();
        let (q, _) = quotient(&top, &n)?;
        if !is_simple(&q)? {
            return Err(FinisError::inconsistency("Jordan–Hölder factor is not simple"));
        }
        factors.push(FactorType::of(&q)?);
        desc.push(n);
    }
    let mut s = SubnormalSeries::from_descending(SeriesKind::JordanHolder, desc)?;
    factors.reverse();
    s.factors = factors;
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derived_lengths() {
        let s3 = derived_series(&PermGroup::symmetric(3)).unwrap();
        assert_eq!(s3.factor_orders.len(), 2);
        let s5 = derived_series(&PermGroup::symmetric(5)).unwrap();
        assert!(!s5.reaches_trivial());
        assert_eq!(s5.terms[0].order().unwrap(), 60);
    }

    #[test]
    fn lower_central_s3_stalls_at_c3() {
        let l = lower_central_series(&PermGroup::symmetric(3)).unwrap();
        assert!(!l.reaches_trivial());
        assert_eq!(l.terms[0].order().unwrap(), 3);
    }

    #[test]
    fn classification_examples() {
        let c12 = classify(&PermGroup::cyclic(12)).unwrap();
        assert!(c12.nilpotent);
        assert_eq!(c12.nilpotency_class, Some(1));
        let s4 = classify(&PermGroup::symmetric(4)).unwrap();
        assert_eq!((s4.solvable, s4.class, s4.nilpotent), (true, Some(3), false));
        let q8 = classify(&PermGroup::quaternion()).unwrap();
        assert_eq!(q8.nilpotency_class, Some(2));
        let s3 = classify(&PermGroup::symmetric(3)).unwrap();
        assert_eq!(s3.class, Some(2));
        assert!(!classify(&PermGroup::symmetric(5)).unwrap().solvable);
    }

    #[test]
    fn composition_factors() {
        assert_eq!(jordan_holder(&PermGroup::symmetric(4)).unwrap().factor_multiset(), vec![2, 2, 2, 3]);
        assert_eq!(jordan_holder(&PermGroup::cyclic(12)).unwrap().factor_multiset(), vec![2, 2, 3]);
        assert_eq!(jordan_holder(&PermGroup::alternating(5)).unwrap().factor_multiset(), vec![60]);
    }
}
