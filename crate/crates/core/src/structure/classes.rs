use std::sync::Arc;

use num_rational::Ratio;
use serde::Serialize;

use crate::error::{FinisError, Result};
use crate::perm::{PermGroup, Permutation};

/// Conjugacy classes of a group, indexed against its sorted element list.
///
/// Classes are ordered by size, then by smallest member; the identity
/// class is always class 0.
#[derive(Debug, Clone)]
pub struct ConjClassTable {
    pub representatives: Vec<Permutation>,
    pub sizes: Vec<usize>,
    class_of: Vec<usize>,
    members: Vec<Vec<usize>>,
}

impl ConjClassTable {
    pub fn len(&self) -> usize {
        self.sizes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sizes.is_empty()
    }

    /// Class id of the element at position `i` of the sorted element list.
    pub fn class_of_index(&self, i: usize) -> usize {
        self.class_of[i]
    }

    pub fn class_of(&self, g: &PermGroup, x: &Permutation) -> Result<usize> {
        let i = g.index_of(x)?.ok_or(FinisError::ElementNotInGroup)?;
        Ok(self.class_of[i])
    }

    /// Element indices of class `c`, ascending.
    pub fn members(&self, c: usize) -> &[usize] {
        &self.members[c]
    }

    pub fn element_order(&self, c: usize) -> u64 {
        self.representatives[c].order()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassSummary {
    pub rep: String,
    pub size: usize,
}

impl ConjClassTable {
    pub fn summary(&self) -> Vec<ClassSummary> {
        self.representatives
            .iter()
            .zip(&self.sizes)
            .map(|(r, &s)| ClassSummary {
                rep: r.to_string(),
                size: s,
            })
            .collect()
    }
}

pub fn conjugacy_classes(g: &PermGroup) -> Result<Arc<ConjClassTable>> {
    if let Some(t) = g.class_cache().get() {
        return Ok(t.clone());
    }
    let elems = g.elements()?;
    let n = elems.len();
    let gens: Vec<(Permutation, Permutation)> = g
        .generators()
        .iter()
        .map(|s| (s.clone(), s.inverse()))
        .collect();
    let mut seen = vec![false; n];
    let mut orbits: Vec<Vec<usize>> = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut orbit = vec![start];
        let mut k = 0;
        while k < orbit.len() {
            let x = &elems[orbit[k]];
            for (s, si) in &gens {
                let y = s.compose(x).compose(si);
                let j = g.index_of(&y)?.expect("closed");
                if !seen[j] {
                    seen[j] = true;
                    orbit.push(j);
                }
            }
            k += 1;
        }
        orbit.sort_unstable();
        orbits.push(orbit);
    }
    orbits.sort_by_key(|o| (o.len(), o[0]));
    let mut class_of = vec![0; n];
    for (c, o) in orbits.iter().enumerate() {
        for &i in o {
            class_of[i] = c;
        }
    }
    let table = ConjClassTable {
        representatives: orbits.iter().map(|o| elems[o[0]].clone()).collect(),
        sizes: orbits.iter().map(Vec::len).collect(),
        class_of,
        members: orbits,
    };
    let table = Arc::new(table);
    let _ = g.class_cache().set(table.clone());
    Ok(g.class_cache().get().cloned().unwrap_or(table))
}

pub fn centralizer(g: &PermGroup, x: &Permutation) -> Result<PermGroup> {
    if !g.contains(x)? {
        return Err(FinisError::ElementNotInGroup);
    }
    let elems: Vec<Permutation> = g
        .elements()?
        .iter()
        .filter(|y| y.compose(x) == x.compose(y))
        .cloned()
        .collect();
    g.subgroup_from_elements(elems)
}

/// `N_G(H)`.
pub fn normalizer(g: &PermGroup, h: &PermGroup) -> Result<PermGroup> {
    h.require_subgroup_of(g)?;
    let mut elems = Vec::new();
    'outer: for y in g.elements()? {
        let yi = y.inverse();
        for s in h.generators() {
            if !h.contains(&y.compose(s).compose(&yi))? {
                continue 'outer;
            }
        }
        elems.push(y.clone());
    }
    g.subgroup_from_elements(elems)
}

pub fn center(g: &PermGroup) -> Result<PermGroup> {
    let elems: Vec<Permutation> = g
        .elements()?
        .iter()
        .filter(|y| {
            g.generators()
                .iter()
                .all(|s| s.compose(y) == y.compose(s))
        })
        .cloned()
        .collect();
    g.subgroup_from_elements(elems)
}

/// Smallest normal subgroup of `g` containing `seed`.
pub fn normal_closure(g: &PermGroup, seed: &[Permutation]) -> Result<PermGroup> {
    let mut h = g.subgroup_generated(seed)?;
    loop {
        let mut extra = Vec::new();
        for x in g.generators() {
            let xi = x.inverse();
            for s in h.generators() {
                let c = x.compose(s).compose(&xi);
                if !h.contains(&c)? && !extra.contains(&c) {
                    extra.push(c);
                }
            }
        }
        if extra.is_empty() {
            return Ok(h);
        }
        let mut gens = h.generators().to_vec();
        gens.extend(extra);
        h = g.subgroup_generated(&gens)?;
    }
}

/// `(A, B)`, generated by all `[a, b]`; normal in `⟨A, B⟩`.
pub fn commutator_subgroup(g: &PermGroup, a: &PermGroup, b: &PermGroup) -> Result<PermGroup> {
    let mut comms = Vec::new();
    for x in a.generators() {
        for y in b.generators() {
            let c = Permutation::commutator(x, y);
            if !c.is_identity() && !comms.contains(&c) {
                comms.push(c);
            }
        }
    }
    let mut joint = a.generators().to_vec();
    joint.extend(b.generators().iter().cloned());
    let ab = g.subgroup_generated(&joint)?;
    normal_closure(&ab, &comms).map(|h| h.with_cap(g.cap()))
}

/// `D(G) = (G, G)`.
pub fn derived_subgroup(g: &PermGroup) -> Result<PermGroup> {
    commutator_subgroup(g, g, g)
}

/// `Σ 1/|C_G(x_i)|` over class representatives, which must equal 1.
pub fn class_equation_sum(g: &PermGroup) -> Result<Ratio<u64>> {
    let t = conjugacy_classes(g)?;
    let mut acc = Ratio::from_integer(0u64);
    for r in &t.representatives {
        acc += Ratio::new(1, centralizer(g, r)?.order()? as u64);
    }
    Ok(acc)
}
