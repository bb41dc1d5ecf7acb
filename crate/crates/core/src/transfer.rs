//! The transfer `G^ab → H^ab`, Gauss's lemma, and transfer into abelian
//! Sylow subgroups.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::arith::{is_prime, mod_pow};
use crate::coh::{abelianize, AbElement, Abelianization, FinAbGroup};
use crate::error::{FinisError, Result};
use crate::perm::{PermGroup, Permutation};
use crate::structure::normalizer;
use crate::sylow::sylow;

/// Transfer data for `H ≤ G`: one representative per left coset `xH`.
#[derive(Debug, Clone)]
pub struct TransferMap {
    parent: PermGroup,
    subgroup: PermGroup,
    representatives: Vec<Permutation>,
    target: Abelianization,
}

impl TransferMap {
    /// Least element of each coset as representative, identity first.
    pub fn new(g: &PermGroup, h: &PermGroup) -> Result<Self> {
        h.require_subgroup_of(g)?;
        let mut reps: Vec<Permutation> = Vec::new();
        let mut covered: BTreeSet<Permutation> = BTreeSet::new();
        for x in g.elements()?.iter() {
            if covered.contains(x) {
                continue;
            }
            for y in h.elements()?.iter() {
                covered.insert(x.compose(y));
            }
            reps.push(x.clone());
        }
        TransferMap::with_representatives(g, h, reps)
    }

    /// Any transversal of the left cosets.
    pub fn with_representatives(g: &PermGroup, h: &PermGroup, representatives: Vec<Permutation>) -> Result<Self> {
        h.require_subgroup_of(g)?;
        let index = g.order()? / h.order()?;
        if representatives.len() != index {
            return Err(FinisError::BadInput(format!(
                "{} representatives for {index} cosets",
                representatives.len()
            )));
        }
        for (i, x) in representatives.iter().enumerate() {
            if !g.contains(x)? {
                return Err(FinisError::ElementNotInGroup);
            }
            for y in &representatives[..i] {
                if h.contains(&y.inverse().compose(x))? {
                    return Err(FinisError::BadInput("two representatives of one coset".into()));
                }
            }
        }
        Ok(TransferMap {
            parent: g.clone(),
            subgroup: h.clone(),
            representatives,
            target: abelianize(h)?,
        })
    }

    pub fn representatives(&self) -> &[Permutation] {
        &self.representatives
    }

    pub fn target(&self) -> &FinAbGroup {
        &self.target.group
    }

    pub fn subgroup(&self) -> &PermGroup {
        &self.subgroup
    }

    pub fn index(&self) -> usize {
        self.representatives.len()
    }

    /// The representative of the coset `yH`.
    fn rep_of(&self, y: &Permutation) -> Result<&Permutation> {
        for x in &self.representatives {
            if self.subgroup.contains(&x.inverse().compose(y))? {
                return Ok(x);
            }
        }
        Err(FinisError::inconsistency("transversal misses a coset"))
    }

    /// `Ver(s) = Σ_x h_{s,x}` where `s·x = x′·h_{s,x}`.
    pub fn transfer(&self, s: &Permutation) -> Result<AbElement> {
        if !self.parent.contains(s)? {
            return Err(FinisError::ElementNotInGroup);
        }
        let ab = &self.target.group;
        let mut acc = ab.zero();
        for x in &self.representatives {
            let sx = s.compose(x);
            let xp = self.rep_of(&sx)?;
            let h = xp.inverse().compose(&sx);
            acc = ab.add(&acc, self.target.image(&h)?);
        }
        #[cfg(debug_assertions)]
        debug_assert_eq!(acc, self.transfer_by_orbits(s)?, "transfer formulas disagree");
        Ok(acc)
    }

    /// Same value from the cycles of `⟨s⟩` on `G/H`: `Σ_α x_α⁻¹ s^{f_α} x_α`.
    pub fn transfer_by_orbits(&self, s: &Permutation) -> Result<AbElement> {
        if !self.parent.contains(s)? {
            return Err(FinisError::ElementNotInGroup);
        }
        let ab = &self.target.group;
        let mut acc = ab.zero();
        let mut seen = vec![false; self.index()];
        let pos = |y: &Permutation| -> Result<usize> {
            let r = self.rep_of(y)?;
            Ok(self.representatives.iter().position(|x| x == r).expect("present"))
        };
        for start in 0..self.index() {
            if seen[start] {
                continue;
            }
            let x = &self.representatives[start];
            let mut y = x.clone();
            let mut f = 0i64;
            loop {
                seen[pos(&y)?] = true;
                y = s.compose(&y);
                f += 1;
                if pos(&y)? == start {
                    break;
                }
            }
            let h = x.inverse().compose(&s.pow(f)).compose(x);
            acc = ab.add(&acc, self.target.image(&h)?);
        }
        Ok(acc)
    }
}

/// Gauss's lemma: `Π ε(x,s)` over `s ∈ {1, …, (p−1)/2}`, checked against
/// Euler's criterion.
pub fn legendre_gauss(x: i64, p: u64) -> Result<i8> {
    if p == 2 || !is_prime(p) {
        return Err(FinisError::BadInput(format!("{p} is not an odd prime")));
    }
    let xr = x.rem_euclid(p as i64) as u64;
    if xr == 0 {
        return Err(FinisError::BadInput(format!("{p} divides {x}")));
    }
    let half = (p - 1) / 2;
    let mut sign = 1i8;
    for s in 1..=half {
        let r = xr * s % p;
        if r > half {
            sign = -sign;
        }
    }
    let euler = mod_pow(xr, half, p);
    let expected = if euler == 1 { 1 } else { -1 };
    if euler != 1 && euler != p - 1 || expected != sign {
        return Err(FinisError::inconsistency(format!(
            "Gauss gives {sign}, Euler gives {euler} for ({x}/{p})"
        )));
    }
    Ok(sign)
}

/// Image of the transfer into an abelian Sylow subgroup, equal to the
/// part of `H` fixed by `N_G(H)`.
#[derive(Debug, Clone, Serialize)]
pub struct SylowTransferImage {
    pub sylow_order: usize,
    pub image: FinAbGroup,
    pub fixed_order: usize,
}

pub fn transfer_image_in_sylow(g: &PermGroup, p: u64) -> Result<SylowTransferImage> {
    let h = sylow(g, p)?;
    if !h.is_abelian() {
        return Err(FinisError::SylowNotAbelian);
    }
    let n = normalizer(g, &h)?;
    let fixed: Vec<Permutation> = h
        .elements()?
        .iter()
        .filter(|x| n.generators().iter().all(|y| y.conjugate(x) == **x))
        .cloned()
        .collect();
    let tm = TransferMap::new(g, &h)?;
    let mut image: BTreeSet<AbElement> = BTreeSet::new();
    for s in g.elements()?.iter() {
        image.insert(tm.transfer(s)?);
    }
    let fixed_set: BTreeSet<AbElement> = fixed
        .iter()
        .map(|x| tm.target.image(x).cloned())
        .collect::<Result<_>>()?;
    if image != fixed_set {
        return Err(FinisError::inconsistency(format!(
            "transfer image has {} elements, fixed points {}",
            image.len(),
            fixed_set.len()
        )));
    }
    let sub = h.subgroup_generated(&fixed)?;
    Ok(SylowTransferImage {
        sylow_order: h.order()?,
        image: abelianize(&sub)?.group,
        fixed_order: fixed.len(),
    })
}

/// For even `|G|` with cyclic Sylow 2-subgroup, exhibits the index-2
/// kernel of the regular-representation sign and returns true.
pub fn cyclic_2sylow_obstruction(g: &PermGroup) -> Result<bool> {
    let n = g.order()?;
    if n % 2 == 1 {
        return Err(FinisError::OddOrder);
    }
    let s = sylow(g, 2)?;
    let Some(gen) = s.elements()?.iter().find(|x| x.order() as usize == s.order().unwrap_or(0)).cloned() else {
        return Ok(false);
    };
    // sign of left multiplication on the regular representation
    let els = g.elements()?;
    let regular_sign = |x: &Permutation| -> Result<i32> {
        let images: Vec<usize> = els
            .iter()
            .map(|y| g.index_of(&x.compose(y)).map(|i| i.expect("closed")))
            .collect::<Result<_>>()?;
        Ok(Permutation::from_images(images)?.sign())
    };
    if regular_sign(&gen)? != -1 {
        return Err(FinisError::inconsistency("generator of a cyclic 2-Sylow has even regular sign"));
    }
    let mut kernel = Vec::new();
    for x in els.iter() {
        if regular_sign(x)? == 1 {
            kernel.push(x.clone());
        }
    }
    let k = g.subgroup_from_elements(kernel)?;
    if k.order()? * 2 != n || !k.is_normal_in(g)? {
        return Err(FinisError::inconsistency("sign kernel is not of index 2"));
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_transfers_to_zero() {
        let g = PermGroup::symmetric(4);
        let h = sylow(&g, 2).unwrap();
        let tm = TransferMap::new(&g, &h).unwrap();
        assert_eq!(tm.transfer(&g.identity()).unwrap(), tm.target().zero());
    }

    #[test]
    fn abelian_transfer_is_nth_power() {
        let g = PermGroup::cyclic(12);
        let x = g.generators()[0].clone();
        let h = g.subgroup_generated(&[x.pow(3)]).unwrap();
        let tm = TransferMap::new(&g, &h).unwrap();
        let ab = abelianize(&h).unwrap();
        for s in g.elements().unwrap().iter() {
            assert_eq!(&tm.transfer(s).unwrap(), ab.image(&s.pow(3)).unwrap());
        }
    }

    #[test]
    fn s3_over_a3_composite() {
        // G^ab → H^ab → G^ab is s ↦ s^(G:H)
        let g = PermGroup::symmetric(3);
        let h = PermGroup::alternating(3);
        let tm = TransferMap::new(&g, &h).unwrap();
        let (ab_g, ab_h) = (abelianize(&g).unwrap(), abelianize(&h).unwrap());
        for s in g.elements().unwrap().iter() {
            let v = tm.transfer(s).unwrap();
            let lift = h.elements().unwrap().iter().find(|y| *ab_h.image(y).unwrap() == v).unwrap().clone();
            assert_eq!(ab_g.image(&lift).unwrap(), ab_g.image(&s.pow(2)).unwrap());
        }
    }

    #[test]
    fn representative_independence() {
        let g = PermGroup::symmetric(4);
        let h = sylow(&g, 3).unwrap();
        let tm = TransferMap::new(&g, &h).unwrap();
        let hx = h.elements().unwrap().to_vec();
        let shifted: Vec<Permutation> =
            tm.representatives().iter().enumerate().map(|(i, x)| x.compose(&hx[i % hx.len()])).collect();
        let tm2 = TransferMap::with_representatives(&g, &h, shifted).unwrap();
        for s in g.elements().unwrap().iter() {
            assert_eq!(tm.transfer(s).unwrap(), tm2.transfer(s).unwrap());
        }
    }

    #[test]
    fn gauss_lemma() {
        assert_eq!(legendre_gauss(1, 11).unwrap(), 1);
        assert_eq!(legendre_gauss(2, 7).unwrap(), 1);
        assert_eq!(legendre_gauss(2, 5).unwrap(), -1);
        assert!(matches!(legendre_gauss(3, 9), Err(FinisError::BadInput(_))));
        assert!(matches!(legendre_gauss(14, 7), Err(FinisError::BadInput(_))));
    }

    #[test]
    fn gauss_lemma_is_a_transfer() {
        // F_p^× acting on itself by multiplication, H = {±1}
        for p in [5u64, 7, 11, 13] {
            let mult = |x: u64| {
                Permutation::from_images((1..p).map(|y| (x * y % p - 1) as usize).collect()).unwrap()
            };
            let g = PermGroup::new((p - 1) as usize, (1..p).map(mult).collect()).unwrap();
            let h = g.subgroup_generated(&[mult(p - 1)]).unwrap();
            let tm = TransferMap::new(&g, &h).unwrap();
            for x in 1..p {
                let v = tm.transfer(&mult(x)).unwrap();
                let sign = if v.coords[0] == 0 { 1 } else { -1 };
                assert_eq!(sign, legendre_gauss(x as i64, p).unwrap(), "x={x} p={p}");
            }
        }
    }

    #[test]
    fn sylow_images() {
        let s3 = transfer_image_in_sylow(&PermGroup::symmetric(3), 3).unwrap();
        assert!(s3.image.is_trivial());
        let c6 = transfer_image_in_sylow(&PermGroup::cyclic(6), 3).unwrap();
        assert_eq!(c6.image.invariant_factors(), &[3]);
        assert_eq!(
            transfer_image_in_sylow(&PermGroup::symmetric(4), 2).unwrap_err(),
            FinisError::SylowNotAbelian
        );
        let a5 = transfer_image_in_sylow(&PermGroup::alternating(5), 2).unwrap();
        assert!(a5.image.is_trivial());
    }

    #[test]
    fn cyclic_sylow_two() {
        assert!(cyclic_2sylow_obstruction(&PermGroup::cyclic(2)).unwrap());
        assert!(cyclic_2sylow_obstruction(&PermGroup::cyclic(6)).unwrap());
        assert!(cyclic_2sylow_obstruction(&PermGroup::symmetric(3)).unwrap());
        assert!(!cyclic_2sylow_obstruction(&PermGroup::alternating(5)).unwrap());
        assert_eq!(cyclic_2sylow_obstruction(&PermGroup::cyclic(3)).unwrap_err(), FinisError::OddOrder);
    }
}
