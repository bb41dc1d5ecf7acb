//! Sylow subgroups: construction, counting, the Frattini argument,
//! Burnside fusion and Alperin's decomposition of a conjugation.

use std::collections::{BTreeMap, HashSet, VecDeque};

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::arith::{is_prime, p_part};
use crate::error::{FinisError, Result};
use crate::perm::{PermGroup, Permutation};
use crate::structure::{center, normalizer};

fn require_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(FinisError::NotPrime(p))
    }
}

/// `g⁻¹ x g`.
pub fn conj_right(x: &Permutation, g: &Permutation) -> Permutation {
    g.inverse().compose(x).compose(g)
}

/// `H^g = g⁻¹ H g`.
pub fn subgroup_conj_right(h: &PermGroup, g: &Permutation) -> Result<PermGroup> {
    h.conjugate_by(&g.inverse())
}

/// A Sylow `p`-subgroup, grown from the trivial group by repeatedly
/// adjoining the smallest `x ∈ N_G(P) ∖ P` with `xᵖ ∈ P`.
pub fn sylow(g: &PermGroup, p: u64) -> Result<PermGroup> {
    require_prime(p)?;
    grow_p_subgroup(g, PermGroup::trivial(g.degree()).with_cap(g.cap()), p)
}

fn grow_p_subgroup(g: &PermGroup, mut pg: PermGroup, p: u64) -> Result<PermGroup> {
    let target = p_part(g.order()? as u64, p) as usize;
    while pg.order()? < target {
        let n = normalizer(g, &pg)?;
        let mut lift = None;
        for x in n.elements()? {
            if !pg.contains(x)? && pg.contains(&x.pow(p as i64))? {
                lift = Some(x.clone());
                break;
            }
        }
        let x = lift.ok_or_else(|| FinisError::inconsistency("no p-element in N_G(P)/P"))?;
        let mut gens = pg.generators().to_vec();
        gens.push(x);
        pg = g.subgroup_generated(&gens)?;
    }
    Ok(pg)
}

/// Number of Sylow `p`-subgroups, `(G : N_G(S))`.
pub fn sylow_count(g: &PermGroup, p: u64) -> Result<usize> {
    let s = sylow(g, p)?;
    Ok(g.order()? / normalizer(g, &s)?.order()?)
}

/// Every Sylow `p`-subgroup: the conjugation orbit of [`sylow`], sorted by
/// element list.
pub fn all_sylows(g: &PermGroup, p: u64) -> Result<Vec<PermGroup>> {
    let s = sylow(g, p)?;
    let mut seen: HashSet<Vec<Permutation>> = HashSet::new();
    seen.insert(s.elements()?.to_vec());
    let mut orbit = vec![s.clone()];
    let mut queue = VecDeque::from([s]);
    while let Some(h) = queue.pop_front() {
        for x in g.generators() {
            let c = h.conjugate_by(x)?;
            if seen.insert(c.elements()?.to_vec()) {
                orbit.push(c.clone());
                queue.push_back(c);
            }
        }
    }
    orbit.sort_by(|a, b| a.elements().unwrap().cmp(b.elements().unwrap()));
    Ok(orbit)
}

/// Checks `H · N_G(Q) = G` for a Sylow `Q` of a normal `H`.
pub fn frattini_argument_check(g: &PermGroup, h: &PermGroup, p: u64) -> Result<bool> {
    require_prime(p)?;
    if !h.is_normal_in(g)? {
        return Err(FinisError::NotNormal);
    }
    let q = sylow(h, p)?;
    let n = normalizer(g, &q)?;
    let mut prod: HashSet<&[u32]> = HashSet::new();
    let mut products = Vec::new();
    for a in h.elements()? {
        for b in n.elements()? {
            products.push(a.compose(b));
        }
    }
    for x in &products {
        prod.insert(x.images());
    }
    if prod.len() != g.order()? {
        return Err(FinisError::inconsistency("Frattini argument failed: H·N_G(Q) ≠ G"));
    }
    Ok(true)
}

fn require_sylow(g: &PermGroup, s: &PermGroup) -> Result<u64> {
    s.require_subgroup_of(g)?;
    let so = s.order()? as u64;
    let p = crate::arith::prime_power(so).map(|(p, _)| p);
    match p {
        Some(p) if p_part(g.order()? as u64, p) == so => Ok(p),
        _ => Err(FinisError::PreconditionViolated("not a Sylow subgroup".into())),
    }
}

/// `n ∈ N_G(S)` with `n x n⁻¹ = y`, for `x, y` central in the Sylow `S`
/// and conjugate in `G`.
pub fn burnside_fusion_witness(
    g: &PermGroup,
    s: &PermGroup,
    x: &Permutation,
    y: &Permutation,
) -> Result<Permutation> {
    require_sylow(g, s)?;
    let z = center(s)?;
    if !z.contains(x)? || !z.contains(y)? {
        return Err(FinisError::NotCentral);
    }
    let mut conjugate = false;
    for t in g.elements()? {
        if t.conjugate(x) == *y {
            conjugate = true;
            break;
        }
    }
    if !conjugate {
        return Err(FinisError::NotConjugate);
    }
    let n = normalizer(g, s)?;
    for t in n.elements()? {
        if t.conjugate(x) == *y {
            return Ok(t.clone());
        }
    }
    Err(FinisError::inconsistency("central elements fused in G but not in N_G(S)"))
}

/// Steps `(Uᵢ, gᵢ)` with `gᵢ ∈ N_G(Uᵢ)` and `A^{g₁⋯gᵢ₋₁} ⊆ Uᵢ`, where
/// `X^g = g⁻¹ X g`; the product `g₁⋯gₙ` is the decomposed element.
#[derive(Debug, Clone)]
pub struct AlperinChain {
    pub subgroups: Vec<PermGroup>,
    pub elements: Vec<Permutation>,
    pub source: Vec<Permutation>,
    pub target: Permutation,
}

impl AlperinChain {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Replays the chain, checking every invariant.
    pub fn verify(&self, g: &PermGroup, s: &PermGroup) -> Result<bool> {
        let mut acc = g.identity();
        for (u, gi) in self.subgroups.iter().zip(&self.elements) {
            if !u.is_subset_of(s)? || !normalizer(g, u)?.contains(gi)? {
                return Ok(false);
            }
            for a in &self.source {
                if !u.contains(&conj_right(a, &acc))? {
                    return Ok(false);
                }
            }
            acc = acc.compose(gi);
        }
        if acc != self.target {
            return Ok(false);
        }
        for a in &self.source {
            if !s.contains(&conj_right(a, &acc))? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Decomposes `conj` along local normalizers, following the inductive
/// proof of Alperin's fusion theorem.
pub fn alperin_decompose(
    g: &PermGroup,
    s: &PermGroup,
    a: &[Permutation],
    conj: &Permutation,
) -> Result<AlperinChain> {
    let p = require_sylow(g, s)?;
    if !g.contains(conj)? {
        return Err(FinisError::ElementNotInGroup);
    }
    for x in a {
        if !s.contains(x)? {
            return Err(FinisError::PreconditionViolated("A is not inside S".into()));
        }
        if !s.contains(&conj_right(x, conj))? {
            return Err(FinisError::PreconditionViolated("A^g is not inside S".into()));
        }
    }
    let steps = if a.is_empty() && normalizer(g, s)?.contains(conj)? {
        vec![(s.clone(), conj.clone())]
    } else {
        let t = s.subgroup_generated(a)?;
        decompose(g, s, p, &t, conj, s.order()?)?
    };
    let (subgroups, elements) = steps.into_iter().unzip();
    Ok(AlperinChain {
        subgroups,
        elements,
        source: a.to_vec(),
        target: conj.clone(),
    })
}

fn decompose(
    g: &PermGroup,
    s: &PermGroup,
    p: u64,
    t: &PermGroup,
    x: &Permutation,
    depth: usize,
) -> Result<Vec<(PermGroup, Permutation)>> {
    if depth == 0 {
        return Err(FinisError::DepthExceeded);
    }
    if t.order()? == s.order()? {
        return Ok(vec![(s.clone(), x.clone())]);
    }
    let t1 = normalizer(s, t)?;
    let sigma = grow_p_subgroup(&normalizer(g, t)?, t1.clone(), p)?;
    let u = conjugator_into(g, &sigma, s)?;
    let v_sub = subgroup_conj_right(t, x)?;
    let t2 = normalizer(s, &v_sub)?;
    let sigma_g = subgroup_conj_right(&sigma, x)?;
    let w = conjugator_into(&normalizer(g, &v_sub)?, &t2, &sigma_g)?;
    let v = u.inverse().compose(x).compose(&w.inverse());
    let t3 = subgroup_conj_right(&t2, &v.inverse())?;
    let mut chain = decompose(g, s, p, &t1, &u, depth - 1)?;
    chain.extend(decompose(g, s, p, &t3, &v, depth - 1)?);
    chain.push((v_sub, w));
    Ok(chain)
}

/// Smallest `u ∈ within` with `u⁻¹ H u ⊆ K`.
fn conjugator_into(within: &PermGroup, h: &PermGroup, k: &PermGroup) -> Result<Permutation> {
    'outer: for u in within.elements()? {
        for x in h.generators() {
            if !k.contains(&conj_right(x, u))? {
                continue 'outer;
            }
        }
        return Ok(u.clone());
    }
    Err(FinisError::inconsistency("p-subgroup not conjugate into a Sylow"))
}

/// `binom(|G|, pⁿ) mod p`, checked against `s·m mod p` with `s` the
/// number of Sylows and `m` the `p'`-part of `|G|`.
pub fn miller_wielandt_count(g: &PermGroup, p: u64) -> Result<u64> {
    require_prime(p)?;
    let order = g.order()? as u64;
    let pn = p_part(order, p);
    let m = order / pn;
    let b = binomial(order, pn) % BigUint::from(p);
    let b = b.to_u64().expect("reduced mod p");
    let s = sylow_count(g, p)? as u64;
    if b != (s * m) % p {
        return Err(FinisError::inconsistency(format!(
            "binom({order}, {pn}) ≡ {b} but s·m ≡ {} mod {p}",
            (s * m) % p
        )));
    }
    Ok(b)
}

pub fn binomial(n: u64, k: u64) -> BigUint {
    let k = k.min(n - k.min(n));
    let mut acc = BigUint::from(1u32);
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// One Sylow subgroup per prime; `permutable` when every pair commutes
/// as sets.
#[derive(Debug, Clone)]
pub struct SylowSystem {
    pub sylows: BTreeMap<u64, PermGroup>,
    pub permutable: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct SylowReport {
    pub order: usize,
    pub count: usize,
    pub normalizer_index: usize,
    pub congruence_ok: bool,
}

pub fn sylow_report(g: &PermGroup, p: u64) -> Result<SylowReport> {
    let s = sylow(g, p)?;
    let n = normalizer(g, &s)?;
    let count = all_sylows(g, p)?.len();
    let normalizer_index = g.order()? / n.order()?;
    if count != normalizer_index {
        return Err(FinisError::inconsistency("Sylow orbit size differs from normalizer index"));
    }
    Ok(SylowReport {
        order: s.order()?,
        count,
        normalizer_index,
        congruence_ok: count as u64 % p == 1,
    })
}
