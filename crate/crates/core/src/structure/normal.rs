use crate::arith::prime_divisors;
use crate::error::{FinisError, Result};
use crate::perm::{PermGroup, Permutation};
use crate::structure::{conjugacy_classes, normal_closure, series::is_solvable};

pub const CLASS_LIMIT: usize = 25;

/// All normal subgroups, sorted by order (ties by element list).
///
/// Normal subgroups are unions of classes; they are found as joins of the
/// normal closures of single classes, each candidate recorded as a class
/// bitmask.
pub fn normal_subgroups(g: &PermGroup) -> Result<Vec<PermGroup>> {
    let t = conjugacy_classes(g)?;
    let h = t.len();
    if h > CLASS_LIMIT {
        return Err(FinisError::TooManyClasses {
            classes: h,
            limit: CLASS_LIMIT,
        });
    }
    let elems = g.elements()?;
    let mask_of = |n: &PermGroup| -> Result<u64> {
        let mut m = 0u64;
        for x in n.elements()? {
            m |= 1 << t.class_of_index(g.index_of(x)?.expect("subgroup"));
        }
        Ok(m)
    };
    let mut found: Vec<(u64, PermGroup)> = vec![(1, PermGroup::trivial(g.degree()).with_cap(g.cap()))];
    let mut atoms: Vec<(u64, PermGroup)> = Vec::new();
    for c in 1..h {
        let n = normal_closure(g, &[t.representatives[c].clone()])?;
        let m = mask_of(&n)?;
        if !atoms.iter().any(|(a, _)| *a == m) {
            atoms.push((m, n));
        }
    }
    let mut k = 0;
    while k < found.len() {
        let (m, n) = found[k].clone();
        for (a, an) in &atoms {
            if m | a == m {
                continue;
            }
            let mut gens = n.generators().to_vec();
            gens.extend(an.generators().iter().cloned());
            let j = g.subgroup_generated(&gens)?;
            let jm = mask_of(&j)?;
            if !found.iter().any(|(f, _)| *f == jm) {
                found.push((jm, j));
            }
        }
        k += 1;
    }
    let mut out: Vec<(usize, Vec<usize>, PermGroup)> = Vec::new();
    for (m, n) in found {
        let mut idx: Vec<usize> = (0..h).filter(|c| m >> c & 1 == 1).flat_map(|c| t.members(c).to_vec()).collect();
        idx.sort_unstable();
        // rebuild from the sorted class union so the element list is canonical
        let list: Vec<Permutation> = idx.iter().map(|&i| elems[i].clone()).collect();
        debug_assert_eq!(list.len(), n.order()?);
        out.push((list.len(), idx, n));
    }
    out.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
    Ok(out.into_iter().map(|(_, _, n)| n).collect())
}

pub fn is_simple(g: &PermGroup) -> Result<bool> {
    if g.order()? == 1 {
        return Err(FinisError::TrivialGroup);
    }
    Ok(normal_subgroups(g)?.len() == 2)
}

/// Proper normal subgroups not contained in a larger proper normal one.
pub fn maximal_normal_subgroups(g: &PermGroup) -> Result<Vec<PermGroup>> {
    let all = normal_subgroups(g)?;
    let n = g.order()?;
    let proper: Vec<&PermGroup> = all.iter().filter(|h| h.order().unwrap_or(n) < n).collect();
    let mut out = Vec::new();
    for h in &proper {
        let ho = h.order()?;
        let mut maximal = true;
        for k in &proper {
            if k.order()? > ho && h.is_subset_of(k)? {
                maximal = false;
                break;
            }
        }
        if maximal {
            out.push((*h).clone());
        }
    }
    // largest first so the default choice matches "normal of maximal order"
    out.sort_by_key(|h| std::cmp::Reverse(h.order().unwrap_or(0)));
    Ok(out)
}

pub fn is_elementary_abelian(h: &PermGroup, p: u64) -> Result<bool> {
    Ok(h.is_abelian() && h.elements()?.iter().all(|x| x.is_identity() || x.order() == p))
}

/// A minimal normal subgroup of a solvable group, elementary abelian of
/// exponent `p`; smaller primes are tried first.
pub fn minimal_normal_elementary(g: &PermGroup) -> Result<(u64, PermGroup)> {
    let n = g.order()?;
    if n == 1 {
        return Err(FinisError::TrivialGroup);
    }
    if !is_solvable(g)? {
        return Err(FinisError::NotSolvable);
    }
    let t = conjugacy_classes(g)?;
    for p in prime_divisors(n as u64) {
        for r in &t.representatives {
            if r.order() != p {
                continue;
            }
            let mut cand = normal_closure(g, &[r.clone()])?;
            if !is_elementary_abelian(&cand, p)? {
                continue;
            }
            'shrink: loop {
                for y in cand.elements()?.to_vec() {
                    if y.is_identity() {
                        continue;
                    }
                    let m = normal_closure(g, &[y])?;
                    if m.order()? < cand.order()? {
                        cand = m;
                        continue 'shrink;
                    }
                }
                break;
            }
            return Ok((p, cand));
        }
    }
    Err(FinisError::inconsistency("solvable group without elementary abelian minimal normal subgroup"))
}
