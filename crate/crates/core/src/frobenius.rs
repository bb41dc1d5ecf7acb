//! Frobenius couples and kernels, fixed-point-free automorphisms.

use std::collections::HashSet;

use serde::Serialize;

use crate::arith::factorize;
use crate::error::{FinisError, Result};
use crate::perm::{action_on_cosets, cosets, GroupHom, PermGroup, Permutation, Side};
use crate::structure::{classify, conjugacy_classes, Lattice, SolvabilityReport};

/// Size of `⋃ gHg⁻¹`, strictly less than `|G|` for a proper subgroup.
pub fn conjugate_union_size(g: &PermGroup, h: &PermGroup) -> Result<usize> {
    Ok(conjugate_union(g, h)?.len())
}

fn conjugate_union(g: &PermGroup, h: &PermGroup) -> Result<HashSet<Permutation>> {
    h.require_subgroup_of(g)?;
    let n = g.order()?;
    if h.order()? == n {
        return Err(FinisError::SubgroupIsWhole);
    }
    let mut union = HashSet::new();
    for c in cosets(g, h, Side::Left)? {
        let x = &c.representative;
        for y in h.elements()?.iter() {
            union.insert(x.conjugate(y));
        }
    }
    if union.len() >= n {
        return Err(FinisError::inconsistency("conjugates of a proper subgroup cover G"));
    }
    Ok(union)
}

/// A verified Frobenius couple `(G, H)` with its kernel as a set.
#[derive(Debug, Clone)]
pub struct FrobeniusCouple {
    pub group: PermGroup,
    pub complement: PermGroup,
    pub kernel_elements: Vec<Permutation>,
    pub verified: bool,
}

fn check_bounds(g: &PermGroup, h: &PermGroup) -> Result<()> {
    h.require_subgroup_of(g)?;
    let k = h.order()?;
    if k == 1 || k == g.order()? {
        return Err(FinisError::BadSubgroup);
    }
    Ok(())
}

/// Whether Jordan's bound is attained; cross-checked against the coset
/// action, where no nonidentity element may fix two points.
pub fn is_frobenius_couple(g: &PermGroup, h: &PermGroup) -> Result<bool> {
    check_bounds(g, h)?;
    let n = g.order()?;
    let index = n / h.order()?;
    let by_union = conjugate_union_size(g, h)? == n - (index - 1);
    let action = action_on_cosets(g, h)?;
    let mut by_action = true;
    for x in g.elements()?.iter() {
        if x.is_identity() {
            continue;
        }
        if action.image(x)?.fixed_points() >= 2 {
            by_action = false;
            break;
        }
    }
    if by_union != by_action {
        return Err(FinisError::inconsistency(format!(
            "union criterion says {by_union}, fixed-point criterion says {by_action}"
        )));
    }
    Ok(by_union)
}

pub fn frobenius_couple(g: &PermGroup, h: &PermGroup) -> Result<FrobeniusCouple> {
    if !is_frobenius_couple(g, h)? {
        return Err(FinisError::NotFrobeniusCouple);
    }
    let union = conjugate_union(g, h)?;
    let kernel_elements: Vec<Permutation> = g
        .elements()?
        .iter()
        .filter(|x| x.is_identity() || !union.contains(*x))
        .cloned()
        .collect();
    Ok(FrobeniusCouple {
        group: g.clone(),
        complement: h.clone(),
        kernel_elements,
        verified: true,
    })
}

/// `N = {1} ∪ (G ∖ ⋃ gHg⁻¹)`, checked to be a normal subgroup with
/// `G = N·H`, `N ∩ H = 1` and `H` acting freely on `N ∖ {1}`.
pub fn frobenius_kernel(fc: &FrobeniusCouple) -> Result<PermGroup> {
    if !fc.verified {
        return Err(FinisError::NotFrobeniusCouple);
    }
    let g = &fc.group;
    let h = &fc.complement;
    let set: HashSet<&Permutation> = fc.kernel_elements.iter().collect();
    for x in &fc.kernel_elements {
        for y in &fc.kernel_elements {
            if !set.contains(&x.compose(y)) {
                return Err(FinisError::KernelNotClosed);
            }
        }
        for s in g.generators() {
            if !set.contains(&s.conjugate(x)) {
                return Err(FinisError::KernelNotClosed);
            }
        }
    }
    let n = g.subgroup_from_elements(fc.kernel_elements.clone())?;
    let index = g.order()? / h.order()?;
    if n.order()? != index || n.intersection(h)?.order()? != 1 {
        return Err(FinisError::KernelNotClosed);
    }
    for y in h.elements()?.iter().filter(|y| !y.is_identity()) {
        if fc.kernel_elements.iter().any(|x| !x.is_identity() && y.conjugate(x) == *x) {
            return Err(FinisError::inconsistency("complement does not act freely on the kernel"));
        }
    }
    Ok(n)
}

/// Classifies the kernel; it must be nilpotent.
pub fn thompson_nilpotency_check(fc: &FrobeniusCouple) -> Result<SolvabilityReport> {
    let n = frobenius_kernel(fc)?;
    let report = classify(&n)?;
    if !report.nilpotent {
        return Err(FinisError::inconsistency("Frobenius kernel is not nilpotent"));
    }
    Ok(report)
}

/// Whether the automorphism given by generator images fixes only `1`. When
/// it does, checks that `x ↦ x⁻¹σ(x)` is bijective, that
/// `x·σ(x)⋯σⁿ⁻¹(x) = 1`, and that no `x ≠ 1` is conjugate to `σ(x)`.
pub fn fixed_point_free_check(n: &PermGroup, images: &[Permutation]) -> Result<bool> {
    let sigma = GroupHom::new(n.clone(), n.clone(), images.to_vec()).map_err(|e| match e {
        FinisError::NotAHomomorphism => FinisError::NotAnAutomorphism,
        other => other,
    })?;
    if !sigma.is_injective() {
        return Err(FinisError::NotAnAutomorphism);
    }
    let els = n.elements()?;
    let sig = |x: &Permutation| -> Result<Permutation> { sigma.image(x).cloned() };
    let fixed = els.iter().filter(|x| sigma.image(x).map(|y| y == *x).unwrap_or(false)).count();
    if fixed > 1 {
        return Ok(false);
    }
    let mut order = 1;
    let mut x = els.iter().map(&sig).collect::<Result<Vec<_>>>()?;
    while x.iter().zip(els.iter()).any(|(a, b)| a != b) {
        x = x.iter().map(&sig).collect::<Result<Vec<_>>>()?;
        order += 1;
    }
    let twisted: HashSet<Permutation> =
        els.iter().map(|x| Ok(x.inverse().compose(&sig(x)?))).collect::<Result<_>>()?;
    if twisted.len() != els.len() {
        return Err(FinisError::inconsistency("x ↦ x⁻¹σ(x) is not bijective"));
    }
    for x in els.iter() {
        let mut acc = x.clone();
        let mut y = x.clone();
        for _ in 1..order {
            y = sig(&y)?;
            acc = acc.compose(&y);
        }
        if !acc.is_identity() {
            return Err(FinisError::inconsistency("norm x·σ(x)⋯ is not 1"));
        }
    }
    let classes = conjugacy_classes(n)?;
    for x in els.iter().filter(|x| !x.is_identity()) {
        if classes.class_of(n, x)? == classes.class_of(n, &sig(x)?)? {
            return Err(FinisError::inconsistency("σ preserves a nontrivial class"));
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropertyFReport {
    pub abelian_subgroups_cyclic: bool,
    pub pq_subgroups_cyclic: bool,
    pub subgroups_scanned: usize,
}

/// Necessary conditions for a Frobenius complement: abelian subgroups and
/// subgroups of order `pq` are cyclic.
pub fn property_f_diagnostics(h: &PermGroup) -> Result<PropertyFReport> {
    let lat = Lattice::new(h)?;
    let subs = lat.groups(h);
    let cyclic = |k: &PermGroup| -> Result<bool> {
        let m = k.order()? as u64;
        Ok(k.elements()?.iter().any(|x| x.order() == m))
    };
    let mut abelian_ok = true;
    let mut pq_ok = true;
    for k in &subs {
        if k.is_abelian() && !cyclic(k)? {
            abelian_ok = false;
        }
        let f = factorize(k.order()? as u64);
        let omega: u32 = f.iter().map(|&(_, e)| e).sum();
        if omega == 2 && !cyclic(k)? {
            pq_ok = false;
        }
    }
    Ok(PropertyFReport {
        abelian_subgroups_cyclic: abelian_ok,
        pq_subgroups_cyclic: pq_ok,
        subgroups_scanned: subs.len(),
    })
}
