use std::collections::BTreeSet;

use crate::coh::abgroup::AbElement;
use crate::coh::cochain::{cobord, Cochain};
use crate::coh::cohomology::{cohomology, solve_coboundary};
use crate::coh::module::GModule;
use crate::error::{FinisError, Result};
use crate::perm::{GroupHom, PermGroup, Permutation};

/// `E = A × G` with `(a,s)(b,t) = (a + s·b + f(s,t), st)`, realized by its
/// left regular action on the points `index(a)·|G| + s`.
#[derive(Debug, Clone)]
pub struct Extension {
    pub group: PermGroup,
    pub cocycle: Cochain,
    /// Image of the `i`-th basis element of `A`.
    pub injection: Vec<Permutation>,
    pub projection: GroupHom,
    module: GModule,
}

impl Extension {
    pub fn module(&self) -> &GModule {
        &self.module
    }

    fn point(&self, a: &AbElement, s: usize) -> usize {
        self.module.ab().index_of(a) * self.module.order() + s
    }

    /// Left multiplication by `(a, s)`.
    pub fn element(&self, a: &AbElement, s: usize) -> Permutation {
        left_mult(&self.module, &self.cocycle, a, s)
    }

    /// `(a, s)` for an element of `E`.
    pub fn decode(&self, x: &Permutation) -> (AbElement, usize) {
        let m = &self.module;
        let eps = m.ab().neg(self.cocycle.at(&[0, 0]));
        let p = x.apply(self.point(&eps, 0));
        let g = m.order();
        (m.ab().element_at(p / g), p % g)
    }

    /// `a ↦ (a − f(1,1), 1)`.
    pub fn inject(&self, a: &AbElement) -> Permutation {
        let ab = self.module.ab();
        self.element(&ab.add(a, &ab.neg(self.cocycle.at(&[0, 0]))), 0)
    }

    pub fn kernel_image(&self) -> Result<PermGroup> {
        self.group.subgroup_generated(&self.injection)
    }
}

fn left_mult(m: &GModule, f: &Cochain, a: &AbElement, s: usize) -> Permutation {
    let ab = m.ab();
    let g = m.order();
    let t = m.table();
    let size = ab.order() as usize * g;
    let mut images = vec![0u32; size];
    for bi in 0..ab.order() as usize {
        let b = ab.element_at(bi);
        let sb = m.act_at(s, &b);
        for u in 0..g {
            let c = ab.add(&ab.add(a, &sb), f.at(&[s, u]));
            images[bi * g + u] = (ab.index_of(&c) * g + t.mul(s, u)) as u32;
        }
    }
    Permutation::from_images_unchecked(images)
}

fn require_cocycle(m: &GModule, f: &Cochain) -> Result<()> {
    if f.degree() != 2 || !cobord(m, f)?.is_zero() {
        return Err(FinisError::NotACocycle);
    }
    Ok(())
}

pub fn extension_from_cocycle(m: &GModule, f: &Cochain) -> Result<Extension> {
    require_cocycle(m, f)?;
    let ab = m.ab();
    let g = m.group();
    let eps = ab.neg(f.at(&[0, 0]));
    let injection: Vec<Permutation> = ab
        .basis()
        .iter()
        .map(|a| left_mult(m, f, &ab.add(a, &eps), 0))
        .collect();
    let mut gens = injection.clone();
    let mut images = vec![g.identity(); injection.len()];
    for s in g.generators() {
        let si = g.index_of(s)?.expect("generator");
        gens.push(left_mult(m, f, &ab.zero(), si));
        images.push(s.clone());
    }
    let degree = ab.order() as usize * m.order();
    let e = PermGroup::new(degree, gens)?;
    let projection = GroupHom::new(e.clone(), g.clone(), images)?;
    let ext = Extension {
        group: e,
        cocycle: f.clone(),
        injection,
        projection,
        module: m.clone(),
    };
    let order = ext.group.order()?;
    if order as u64 != ab.order() * m.order() as u64 {
        return Err(FinisError::inconsistency(format!("extension has order {order}")));
    }
    let ker = ext.projection.kernel()?;
    if !ker.same_elements(&ext.kernel_image()?)? {
        return Err(FinisError::inconsistency("extension is not exact at E"));
    }
    Ok(ext)
}

/// Whether `f` is a coboundary, with a homomorphic section `G → E` (by
/// element index of `G`) when it is.
pub fn split_class(m: &GModule, f: &Cochain) -> Result<(bool, Option<Vec<Permutation>>)> {
    require_cocycle(m, f)?;
    let Some(l) = solve_coboundary(m, f)? else {
        return Ok((false, None));
    };
    let ab = m.ab();
    // h(s) = (−l(s), s)
    let section: Vec<Permutation> = (0..m.order()).map(|s| left_mult(m, f, &ab.neg(l.at(&[s])), s)).collect();
    let t = m.table();
    for s in 0..m.order() {
        for u in 0..m.order() {
            if section[s].compose(&section[u]) != section[t.mul(s, u)] {
                return Err(FinisError::inconsistency("recovered section is not a homomorphism"));
            }
        }
    }
    Ok((true, Some(section)))
}

/// Largest number of generator assignments tried by the section search.
const SECTION_SEARCH_LIMIT: u128 = 1 << 20;

/// Number of `A`-conjugacy classes of homomorphic sections of a split
/// extension, found by exhaustive search and checked against `|H¹(G,A)|`.
pub fn h1_torsor_sections(m: &GModule, e: &Extension) -> Result<u64> {
    let (split, _) = split_class(m, &e.cocycle)?;
    if !split {
        return Err(FinisError::NotSplit);
    }
    let g = m.group();
    let ab = m.ab();
    let gens: Vec<usize> = g
        .generators()
        .iter()
        .map(|s| g.index_of(s).map(|i| i.expect("generator")))
        .collect::<Result<_>>()?;
    let a_order = ab.order() as usize;
    let total = (a_order as u128).pow(gens.len() as u32);
    if total > SECTION_SEARCH_LIMIT {
        return Err(FinisError::TooLarge(format!("{total} candidate sections")));
    }
    let a_elems: Vec<Permutation> = ab.elements().map(|a| e.inject(&a)).collect();
    let mut classes: BTreeSet<Vec<Permutation>> = BTreeSet::new();
    for k in 0..total as usize {
        let mut rest = k;
        let images: Vec<Permutation> = gens
            .iter()
            .map(|&s| {
                let a = ab.element_at(rest % a_order);
                rest /= a_order;
                e.element(&a, s)
            })
            .collect();
        if GroupHom::new(g.clone(), e.group.clone(), images.clone()).is_err() {
            continue;
        }
        let canonical = a_elems
            .iter()
            .map(|x| {
                let xi = x.inverse();
                images.iter().map(|y| x.compose(y).compose(&xi)).collect::<Vec<_>>()
            })
            .min()
            .expect("A is nonempty");
        classes.insert(canonical);
    }
    let count = classes.len() as u64;
    let h1 = cohomology(m, 1)?.order();
    if count != h1 {
        return Err(FinisError::inconsistency(format!(
            "{count} classes of sections but |H¹| = {h1}"
        )));
    }
    Ok(count)
}
