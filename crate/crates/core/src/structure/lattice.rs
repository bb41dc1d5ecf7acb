use std::collections::HashSet;

use crate::error::{FinisError, Result};
use crate::perm::{PermGroup, Permutation};

/// Largest group for which the full subgroup lattice is computed.
pub const LATTICE_LIMIT: usize = 512;

/// Multiplication table on element indices of a small group.
#[derive(Debug, Clone)]
pub struct GroupTable {
    n: usize,
    mul: Vec<u32>,
    inv: Vec<u32>,
}

impl GroupTable {
    pub fn new(g: &PermGroup) -> Result<Self> {
        let elems = g.elements()?;
        let n = elems.len();
        let mut mul = vec![0u32; n * n];
        for (i, x) in elems.iter().enumerate() {
            for (j, y) in elems.iter().enumerate() {
                mul[i * n + j] = g.index_of(&x.compose(y))?.expect("closed") as u32;
            }
        }
        let mut inv = vec![0u32; n];
        for i in 0..n {
            inv[i] = (0..n).find(|&j| mul[i * n + j] == 0).expect("inverse") as u32;
        }
        Ok(GroupTable { n, mul, inv })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.mul[i * self.n + j] as usize
    }

    #[inline]
    pub fn inv(&self, i: usize) -> usize {
        self.inv[i] as usize
    }

    /// Subgroup generated by element indices, as a sorted index list.
    pub fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.n];
        seen[0] = true;
        let mut out = vec![0usize];
        let mut k = 0;
        while k < out.len() {
            let x = out[k];
            for &s in gens {
                let y = self.mul(x, s);
                if !seen[y] {
                    seen[y] = true;
                    out.push(y);
                }
            }
            k += 1;
        }
        out.sort_unstable();
        out
    }
}

/// A subgroup stored as a bitset over element indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct Bits(Vec<u64>);

impl Bits {
    fn from_indices(n: usize, idx: &[usize]) -> Self {
        let mut v = vec![0u64; n.div_ceil(64)];
        for &i in idx {
            v[i / 64] |= 1 << (i % 64);
        }
        Bits(v)
    }

    fn has(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn subset_of(&self, other: &Bits) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & !b == 0)
    }
}

/// Every subgroup of a group of order at most [`LATTICE_LIMIT`], found by
/// repeatedly joining cyclic subgroups. Sorted by order, then elements.
pub fn subgroup_lattice(g: &PermGroup) -> Result<Vec<PermGroup>> {
    Ok(Lattice::new(g)?.groups(g))
}

pub(crate) struct Lattice {
    table: GroupTable,
    subs: Vec<(Bits, Vec<usize>)>,
}

impl Lattice {
    pub fn new(g: &PermGroup) -> Result<Self> {
        let n = g.order()?;
        if n > LATTICE_LIMIT {
            return Err(FinisError::TooLarge(format!(
                "subgroup lattice needs |G| <= {LATTICE_LIMIT}, got {n}"
            )));
        }
        let table = GroupTable::new(g)?;
        let mut seen: HashSet<Bits> = HashSet::new();
        let mut cyclic: Vec<(Bits, usize)> = Vec::new();
        for x in 0..n {
            let b = Bits::from_indices(n, &table.closure(&[x]));
            if seen.insert(b.clone()) {
                cyclic.push((b, x));
            }
        }
        let mut subs: Vec<(Bits, Vec<usize>)> = cyclic
            .iter()
            .map(|(b, x)| (b.clone(), if *x == 0 { vec![] } else { vec![*x] }))
            .collect();
        let mut k = 0;
        while k < subs.len() {
            let (bits, gens) = subs[k].clone();
            for (_, x) in &cyclic {
                if bits.has(*x) {
                    continue;
                }
                let mut gj = gens.clone();
                gj.push(*x);
                let b = Bits::from_indices(n, &table.closure(&gj));
                if seen.insert(b.clone()) {
                    subs.push((b, gj));
                }
            }
            k += 1;
        }
        subs.sort_by_cached_key(|(b, _)| (b.count(), (0..n).filter(|&i| b.has(i)).collect::<Vec<_>>()));
        Ok(Lattice { table, subs })
    }

    fn to_group(&self, g: &PermGroup, bits: &Bits) -> PermGroup {
        let elems = g.elements().expect("enumerated");
        let list: Vec<Permutation> = (0..self.table.order())
            .filter(|&i| bits.has(i))
            .map(|i| elems[i].clone())
            .collect();
        g.subgroup_from_elements(list).expect("closed by construction")
    }

    pub fn groups(&self, g: &PermGroup) -> Vec<PermGroup> {
        self.subs.iter().map(|(b, _)| self.to_group(g, b)).collect()
    }

    /// Proper subgroups not contained in any larger proper subgroup.
    pub fn maximal(&self, g: &PermGroup) -> Vec<PermGroup> {
        let n = self.table.order();
        let proper: Vec<&Bits> = self
            .subs
            .iter()
            .map(|(b, _)| b)
            .filter(|b| b.count() < n)
            .collect();
        proper
            .iter()
            .filter(|b| {
                !proper
                    .iter()
                    .any(|c| c.count() > b.count() && b.subset_of(c))
            })
            .map(|b| self.to_group(g, b))
            .collect()
    }
}

pub fn maximal_subgroups(g: &PermGroup) -> Result<Vec<PermGroup>> {
    Ok(Lattice::new(g)?.maximal(g))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subgroup_counts() {
        assert_eq!(subgroup_lattice(&PermGroup::symmetric(3)).unwrap().len(), 6);
        assert_eq!(subgroup_lattice(&PermGroup::symmetric(4)).unwrap().len(), 30);
        assert_eq!(subgroup_lattice(&PermGroup::quaternion()).unwrap().len(), 6);
        assert_eq!(subgroup_lattice(&PermGroup::alternating(4)).unwrap().len(), 10);
        assert_eq!(subgroup_lattice(&PermGroup::alternating(5)).unwrap().len(), 59);
    }

    #[test]
    fn a4_has_no_subgroup_of_order_6() {
        let subs = subgroup_lattice(&PermGroup::alternating(4)).unwrap();
        assert!(subs.iter().all(|h| h.order().unwrap() != 6));
    }

    #[test]
    fn maximal_subgroups_of_c4() {
        let m = maximal_subgroups(&PermGroup::cyclic(4)).unwrap();
        assert_eq!(m.len(), 1);
        assert_eq!(m[0].order().unwrap(), 2);
    }
}
