//! Hall subgroups, Sylow systems and p-complements of solvable groups.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

use num_integer::Integer;
use serde::Serialize;

use crate::arith::{factorize, prime_divisors};
use crate::coh::zassenhaus_complement;
use crate::error::{FinisError, Result};
use crate::perm::{quotient, PermGroup, Permutation};
use crate::structure::{conjugacy_classes, is_solvable, minimal_normal_elementary, Lattice, LATTICE_LIMIT};
use crate::sylow::SylowSystem;

/// A set of primes `Π`, or its complement `Π′` when `complement` is set.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct PrimeSet {
    pub primes: BTreeSet<u64>,
    pub complement: bool,
}

impl PrimeSet {
    pub fn new(primes: impl IntoIterator<Item = u64>) -> Self {
        PrimeSet {
            primes: primes.into_iter().collect(),
            complement: false,
        }
    }

    /// All primes except `p`.
    pub fn all_but(p: u64) -> Self {
        PrimeSet {
            primes: BTreeSet::from([p]),
            complement: true,
        }
    }

    pub fn complement(&self) -> Self {
        PrimeSet {
            primes: self.primes.clone(),
            complement: !self.complement,
        }
    }

    pub fn contains(&self, p: u64) -> bool {
        self.primes.contains(&p) != self.complement
    }

    /// `n_Π`, the largest divisor of `n` built from primes in the set.
    pub fn part(&self, n: u64) -> u64 {
        factorize(n)
            .into_iter()
            .filter(|&(p, _)| self.contains(p))
            .map(|(p, e)| p.pow(e))
            .product()
    }
}

impl fmt::Display for PrimeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ps: Vec<String> = self.primes.iter().map(u64::to_string).collect();
        write!(f, "{{{}}}{}", ps.join(","), if self.complement { "'" } else { "" })
    }
}

/// A Hall `Π`-subgroup of a solvable group, built by induction on a
/// minimal normal subgroup.
pub fn hall_subgroup(g: &PermGroup, pi: &PrimeSet) -> Result<PermGroup> {
    if !is_solvable(g)? {
        return Err(FinisError::NotSolvable);
    }
    let h = hall_inner(g, pi)?;
    let want = pi.part(g.order()? as u64) as usize;
    if h.order()? != want || !h.is_subgroup_of(g)? {
        return Err(FinisError::inconsistency(format!(
            "Hall subgroup has order {} instead of {want}",
            h.order()?
        )));
    }
    Ok(h)
}

fn hall_inner(g: &PermGroup, pi: &PrimeSet) -> Result<PermGroup> {
    let n = g.order()? as u64;
    let part = pi.part(n);
    if part == n {
        return Ok(g.clone());
    }
    if part == 1 {
        return Ok(PermGroup::trivial(g.degree()));
    }
    let (p0, a) = minimal_normal_elementary(g)?;
    let (q, proj) = quotient(g, &a)?;
    let kq = hall_inner(&q, pi)?;
    let h1 = proj.preimage(&kq)?;
    if pi.contains(p0) {
        Ok(h1)
    } else {
        zassenhaus_complement(&h1, &a)
    }
}

fn require_hall(g: &PermGroup, pi: &PrimeSet, h: &PermGroup) -> Result<()> {
    if !h.is_subgroup_of(g)? || h.order()? as u64 != pi.part(g.order()? as u64) {
        return Err(FinisError::NotHall);
    }
    Ok(())
}

/// Some `x` with `x·h1·x⁻¹ = h2`.
pub fn hall_conjugacy(g: &PermGroup, pi: &PrimeSet, h1: &PermGroup, h2: &PermGroup) -> Result<Permutation> {
    if !is_solvable(g)? {
        return Err(FinisError::NotSolvable);
    }
    require_hall(g, pi, h1)?;
    require_hall(g, pi, h2)?;
    if h1.same_elements(h2)? {
        return Ok(g.identity());
    }
    let k = hall_subgroup(g, &pi.complement())?;
    for x in k.elements()?.iter().chain(g.elements()?.iter()) {
        if h1.conjugate_by(x)?.same_elements(h2)? {
            return Ok(x.clone());
        }
    }
    Err(FinisError::NoConjugatorFound)
}

/// Size of `A·B` and whether it is a subgroup (equivalently `AB = BA`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ProductSet {
    pub size: usize,
    pub is_group: bool,
}

pub fn product_set(a: &PermGroup, b: &PermGroup) -> Result<ProductSet> {
    let ab: HashSet<Permutation> = a
        .elements()?
        .iter()
        .flat_map(|x| b.elements().into_iter().flatten().map(move |y| x.compose(y)))
        .collect();
    let is_group = b
        .elements()?
        .iter()
        .all(|y| a.elements().into_iter().flatten().all(|x| ab.contains(&y.compose(x))));
    let expected = a.order()? * b.order()? / a.intersection(b)?.order()?;
    if ab.len() != expected {
        return Err(FinisError::inconsistency(format!(
            "|AB| = {} but |A||B|/|A∩B| = {expected}",
            ab.len()
        )));
    }
    Ok(ProductSet { size: ab.len(), is_group })
}

/// Sylow subgroups `S_p = ⋂_{q≠p} K_q` from Hall `q′`-subgroups `K_q`.
pub fn sylow_system(g: &PermGroup) -> Result<SylowSystem> {
    if !is_solvable(g)? {
        return Err(FinisError::NotSolvable);
    }
    let n = g.order()? as u64;
    let primes = prime_divisors(n);
    let complements: BTreeMap<u64, PermGroup> = primes
        .iter()
        .map(|&q| Ok((q, hall_subgroup(g, &PrimeSet::all_but(q))?)))
        .collect::<Result<_>>()?;
    let mut sylows = BTreeMap::new();
    for &p in &primes {
        let mut s = g.clone();
        for (&q, k) in &complements {
            if q != p {
                s = s.intersection(k)?;
            }
        }
        if s.order()? as u64 != PrimeSet::new([p]).part(n) {
            return Err(FinisError::inconsistency(format!("system member for p = {p} is not Sylow")));
        }
        sylows.insert(p, s);
    }
    let list: Vec<&PermGroup> = sylows.values().collect();
    for i in 0..list.len() {
        for j in i + 1..list.len() {
            if !product_set(list[i], list[j])?.is_group {
                return Err(FinisError::inconsistency("Sylow system is not permutable"));
            }
        }
    }
    // every sub-product is a Hall subgroup
    for mask in 1u32..(1 << primes.len()) {
        let chosen: Vec<u64> = (0..primes.len()).filter(|i| mask >> i & 1 == 1).map(|i| primes[i]).collect();
        let gens: Vec<Permutation> = chosen.iter().flat_map(|p| sylows[p].generators().to_vec()).collect();
        let h = g.subgroup_generated(&gens)?;
        if h.order()? as u64 != PrimeSet::new(chosen).part(n) {
            return Err(FinisError::inconsistency("product of system members is not Hall"));
        }
    }
    Ok(SylowSystem {
        sylows,
        permutable: true,
    })
}

/// Result of a `p`-complement search; `exhaustive` records whether
/// absence was established by a complete search.
#[derive(Debug, Clone)]
pub struct PComplement {
    pub group: Option<PermGroup>,
    pub exhaustive: bool,
}

/// Largest number of subgroup closures tried by the non-solvable search.
pub const COMPLEMENT_SEARCH_CAP: usize = 1_000_000;

pub fn p_complement(g: &PermGroup, p: u64) -> Result<PComplement> {
    let n = g.order()? as u64;
    let target = (n / PrimeSet::new([p]).part(n)) as usize;
    if is_solvable(g)? {
        return Ok(PComplement {
            group: Some(hall_subgroup(g, &PrimeSet::all_but(p))?),
            exhaustive: true,
        });
    }
    if n as usize <= LATTICE_LIMIT {
        let lat = Lattice::new(g)?;
        let found = lat.groups(g).into_iter().find(|h| h.order().ok() == Some(target));
        return Ok(PComplement {
            group: found,
            exhaustive: true,
        });
    }
    // seeds: a class representative together with one or two further elements
    let reps = conjugacy_classes(g)?.representatives.clone();
    let els = g.elements()?;
    let mut calls = 0usize;
    for r in &reps {
        if target % r.order() as usize != 0 {
            continue;
        }
        for y in els.iter() {
            if target % y.order() as usize != 0 {
                continue;
            }
            calls += 1;
            if calls > COMPLEMENT_SEARCH_CAP {
                return Ok(PComplement {
                    group: None,
                    exhaustive: false,
                });
            }
            let h = g.subgroup_generated(&[r.clone(), y.clone()]);
            let Ok(h) = h else { continue };
            let Ok(order) = h.order() else { continue };
            if order == target {
                return Ok(PComplement {
                    group: Some(h),
                    exhaustive: true,
                });
            }
        }
    }
    Ok(PComplement {
        group: None,
        exhaustive: false,
    })
}

/// For subgroups that are solvable with pairwise coprime indices, confirms
/// that `g` is solvable.
pub fn wielandt_check(g: &PermGroup, h1: &PermGroup, h2: &PermGroup, h3: &PermGroup) -> Result<bool> {
    let n = g.order()?;
    let mut idx = Vec::new();
    for h in [h1, h2, h3] {
        h.require_subgroup_of(g)?;
        if !is_solvable(h)? {
            return Err(FinisError::HypothesisViolated("subgroup is not solvable".into()));
        }
        idx.push(n / h.order()?);
    }
    for i in 0..3 {
        for j in i + 1..3 {
            if idx[i].gcd(&idx[j]) != 1 {
                return Err(FinisError::HypothesisViolated(format!(
                    "indices {} and {} are not coprime",
                    idx[i], idx[j]
                )));
            }
        }
    }
    if !is_solvable(g)? {
        return Err(FinisError::inconsistency("Wielandt hypotheses hold but G is not solvable"));
    }
    Ok(true)
}
