use std::collections::HashSet;
use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{FinisError, Result};
use crate::perm::Permutation;
use crate::structure::ConjClassTable;

pub const DEFAULT_CAP: usize = 200_000;

/// Reads `FINIS_CAP` from the environment, falling back to [`DEFAULT_CAP`].
pub fn default_cap() -> usize {
    std::env::var("FINIS_CAP")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_CAP)
}

/// A permutation group given by generators, with the full sorted element
/// list computed on first use.
///
/// Groups are immutable; the element list and conjugacy-class table are
/// filled at most once and shared between clones.
#[derive(Clone)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    cap: usize,
    elements: OnceLock<Arc<Vec<Permutation>>>,
    classes: OnceLock<Arc<ConjClassTable>>,
}

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        for g in &generators {
            if g.degree() != degree {
                return Err(FinisError::DegreeMismatch {
                    expected: degree,
                    got: g.degree(),
                });
            }
        }
        Ok(PermGroup {
            degree,
            generators,
            cap: default_cap(),
            elements: OnceLock::new(),
            classes: OnceLock::new(),
        })
    }

    pub fn trivial(degree: usize) -> Self {
        PermGroup::new(degree, Vec::new()).expect("no generators")
    }

    pub fn with_cap(mut self, cap: usize) -> Self {
        self.cap = cap;
        if let Some(e) = self.elements.get() {
            if e.len() > cap {
                self.elements = OnceLock::new();
                self.classes = OnceLock::new();
            }
        }
        self
    }

    /// Wraps an already-closed, sorted element list. Generators are chosen
    /// greedily; if the list is not closed the generated group is larger
    /// and `NotASubgroup` is returned.
    pub fn from_elements(degree: usize, mut elements: Vec<Permutation>, cap: usize) -> Result<Self> {
        elements.sort_unstable();
        elements.dedup();
        if elements.is_empty() || !elements[0].is_identity() {
            return Err(FinisError::NotASubgroup);
        }
        let mut gens: Vec<Permutation> = Vec::new();
        let mut span: HashSet<Permutation> = HashSet::new();
        span.insert(Permutation::identity(degree));
        // prefer high-order generators so the greedy set stays small
        let mut by_order: Vec<&Permutation> = elements.iter().collect();
        by_order.sort_by_key(|p| std::cmp::Reverse(p.order()));
        for x in by_order {
            if span.contains(x) {
                continue;
            }
            gens.push(x.clone());
            let closed = match dimino(degree, &gens, elements.len()) {
                Ok(c) if c.len() <= elements.len() => c,
                Ok(_) | Err(FinisError::GroupTooLarge { .. }) => {
                    return Err(FinisError::NotASubgroup)
                }
                Err(e) => return Err(e),
            };
            span = closed.into_iter().collect();
        }
        if span.len() != elements.len() {
            return Err(FinisError::NotASubgroup);
        }
        let g = PermGroup {
            degree,
            generators: gens,
            cap,
            elements: OnceLock::new(),
            classes: OnceLock::new(),
        };
        let _ = g.elements.set(Arc::new(elements));
        Ok(g)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn identity(&self) -> Permutation {
        Permutation::identity(self.degree)
    }

    /// Full sorted element list, computed by Dimino's algorithm and cached.
    pub fn elements(&self) -> Result<&[Permutation]> {
        if let Some(e) = self.elements.get() {
            return Ok(e.as_slice());
        }
        let mut e = dimino(self.degree, &self.generators, self.cap)?;
        e.sort_unstable();
        let _ = self.elements.set(Arc::new(e));
        Ok(self.elements.get().expect("just set").as_slice())
    }

    /// Alias of [`PermGroup::elements`].
    pub fn enumerate(&self) -> Result<&[Permutation]> {
        self.elements()
    }

    pub fn order(&self) -> Result<usize> {
        Ok(self.elements()?.len())
    }

    pub fn index_of(&self, x: &Permutation) -> Result<Option<usize>> {
        if x.degree() != self.degree {
            return Ok(None);
        }
        Ok(self.elements()?.binary_search(x).ok())
    }

    pub fn contains(&self, x: &Permutation) -> Result<bool> {
        Ok(self.index_of(x)?.is_some())
    }

    pub fn is_trivial(&self) -> bool {
        self.generators.iter().all(|g| g.is_identity())
    }

    pub fn is_abelian(&self) -> bool {
        let g = &self.generators;
        for i in 0..g.len() {
            for j in i + 1..g.len() {
                if g[i].compose(&g[j]) != g[j].compose(&g[i]) {
                    return false;
                }
            }
        }
        true
    }

    pub fn exponent(&self) -> Result<u64> {
        Ok(self
            .elements()?
            .iter()
            .fold(1, |acc, x| num_integer::lcm(acc, x.order())))
    }

    pub fn is_subgroup_of(&self, g: &PermGroup) -> Result<bool> {
        if self.degree != g.degree {
            return Ok(false);
        }
        for x in &self.generators {
            if !g.contains(x)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub(crate) fn require_subgroup_of(&self, g: &PermGroup) -> Result<()> {
        if self.is_subgroup_of(g)? {
            Ok(())
        } else {
            Err(FinisError::NotASubgroup)
        }
    }

    /// Normality test against the generators of `g`.
    pub fn is_normal_in(&self, g: &PermGroup) -> Result<bool> {
        if !self.is_subgroup_of(g)? {
            return Ok(false);
        }
        for x in &g.generators {
            let xi = x.inverse();
            for h in &self.generators {
                if !self.contains(&x.compose(h).compose(&xi))? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// `⟨seed⟩` inside `self`.
    pub fn subgroup_generated(&self, seed: &[Permutation]) -> Result<PermGroup> {
        for x in seed {
            if !self.contains(x)? {
                return Err(FinisError::ElementNotInGroup);
            }
        }
        let gens: Vec<Permutation> = seed.iter().filter(|x| !x.is_identity()).cloned().collect();
        Ok(PermGroup::new(self.degree, gens)?.with_cap(self.cap))
    }

    /// Subgroup of `self` from a known closed subset of its elements.
    pub fn subgroup_from_elements(&self, elements: Vec<Permutation>) -> Result<PermGroup> {
        PermGroup::from_elements(self.degree, elements, self.cap)
    }

    pub fn same_elements(&self, other: &PermGroup) -> Result<bool> {
        Ok(self.degree == other.degree && self.elements()? == other.elements()?)
    }

    pub fn is_subset_of(&self, other: &PermGroup) -> Result<bool> {
        for x in self.elements()? {
            if !other.contains(x)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn intersection(&self, other: &PermGroup) -> Result<PermGroup> {
        let mut common = Vec::new();
        for x in self.elements()? {
            if other.contains(x)? {
                common.push(x.clone());
            }
        }
        PermGroup::from_elements(self.degree, common, self.cap)
    }

    /// `x H x⁻¹`.
    pub fn conjugate_by(&self, x: &Permutation) -> Result<PermGroup> {
        let xi = x.inverse();
        let elems: Vec<Permutation> = self
            .elements()?
            .iter()
            .map(|h| x.compose(h).compose(&xi))
            .collect();
        PermGroup::from_elements(self.degree, elems, self.cap)
    }

    pub(crate) fn class_cache(&self) -> &OnceLock<Arc<ConjClassTable>> {
        &self.classes
    }

    /// Symmetric group on `n` points.
    pub fn symmetric(n: usize) -> Self {
        let n = n.max(1);
        let mut gens = Vec::new();
        if n >= 2 {
            gens.push(Permutation::from_cycles(n, &[vec![0, 1]]).unwrap());
        }
        if n >= 3 {
            gens.push(Permutation::from_cycles(n, &[(0..n).collect()]).unwrap());
        }
        PermGroup::new(n, gens).unwrap()
    }

    /// Alternating group on `n` points, generated by the 3-cycles (1 2 i).
    pub fn alternating(n: usize) -> Self {
        let n = n.max(1);
        let gens = (2..n)
            .map(|i| Permutation::from_cycles(n, &[vec![0, 1, i]]).unwrap())
            .collect();
        PermGroup::new(n, gens).unwrap()
    }

    /// Cyclic group of order `n` acting regularly on `n` points.
    pub fn cyclic(n: usize) -> Self {
        let n = n.max(1);
        let gens = if n >= 2 {
            vec![Permutation::from_cycles(n, &[(0..n).collect()]).unwrap()]
        } else {
            vec![]
        };
        PermGroup::new(n, gens).unwrap()
    }

    /// Dihedral group of order `2n`; acts on the `n` vertices of a polygon
    /// for `n >= 3`.
    pub fn dihedral(n: usize) -> Self {
        match n {
            0 | 1 => PermGroup::cyclic(2),
            2 => PermGroup::klein(),
            _ => {
                let rot = Permutation::from_cycles(n, &[(0..n).collect()]).unwrap();
                let refl =
                    Permutation::from_images((0..n).map(|i| (n - i) % n).collect()).unwrap();
                PermGroup::new(n, vec![rot, refl]).unwrap()
            }
        }
    }

    /// Klein four-group {1, (1 2)(3 4), (1 3)(2 4), (1 4)(2 3)}.
    pub fn klein() -> Self {
        let a = Permutation::from_cycles(4, &[vec![0, 1], vec![2, 3]]).unwrap();
        let b = Permutation::from_cycles(4, &[vec![0, 2], vec![1, 3]]).unwrap();
        PermGroup::new(4, vec![a, b]).unwrap()
    }

    /// Quaternion group of order 8 in its regular representation.
    pub fn quaternion() -> Self {
        // element index = 2 * unit + negative, units 1, i, j, k
        // unit products: table[a][b] = (sign, unit)
        const T: [[(i8, usize); 4]; 4] = [
            [(1, 0), (1, 1), (1, 2), (1, 3)],
            [(1, 1), (-1, 0), (1, 3), (-1, 2)],
            [(1, 2), (-1, 3), (-1, 0), (1, 1)],
            [(1, 3), (1, 2), (-1, 1), (-1, 0)],
        ];
        let mul = |x: usize, y: usize| -> usize {
            let (ux, nx) = (x / 2, x % 2);
            let (uy, ny) = (y / 2, y % 2);
            let (s, u) = T[ux][uy];
            let neg = (nx + ny + usize::from(s < 0)) % 2;
            2 * u + neg
        };
        let left = |x: usize| -> Permutation {
            Permutation::from_images((0..8).map(|y| mul(x, y)).collect()).unwrap()
        };
        PermGroup::new(8, vec![left(2), left(4)]).unwrap()
    }
}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PermGroup(degree {}, <", self.degree)?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ">")?;
        if let Some(e) = self.elements.get() {
            write!(f, ", order {}", e.len())?;
        }
        write!(f, ")")
    }
}

/// Dimino's algorithm: extend the group one generator at a time, adding
/// whole right cosets of the previous subgroup.
pub(crate) fn dimino(degree: usize, gens: &[Permutation], cap: usize) -> Result<Vec<Permutation>> {
    let id = Permutation::identity(degree);
    let mut gens_nt: Vec<Permutation> = Vec::new();
    for g in gens {
        if !g.is_identity() && !gens_nt.contains(g) {
            gens_nt.push(g.clone());
        }
    }
    let mut elements = vec![id.clone()];
    let mut set: HashSet<Permutation> = HashSet::new();
    set.insert(id);
    if gens_nt.is_empty() {
        return Ok(elements);
    }
    let too_large = || FinisError::GroupTooLarge { cap };

    let g0 = &gens_nt[0];
    let mut x = g0.clone();
    while !x.is_identity() {
        set.insert(x.clone());
        elements.push(x.clone());
        if elements.len() > cap {
            return Err(too_large());
        }
        x = x.compose(g0);
    }

    for i in 1..gens_nt.len() {
        if set.contains(&gens_nt[i]) {
            continue;
        }
        let prev: Vec<Permutation> = elements.clone();
        let block = prev.len();
        let g = &gens_nt[i];
        for h in &prev {
            let y = h.compose(g);
            set.insert(y.clone());
            elements.push(y);
        }
        if elements.len() > cap {
            return Err(too_large());
        }
        let mut rep_pos = block;
        while rep_pos < elements.len() {
            let rep = elements[rep_pos].clone();
            for s in &gens_nt[..=i] {
                let elt = rep.compose(s);
                if !set.contains(&elt) {
                    for h in &prev {
                        let y = h.compose(&elt);
                        set.insert(y.clone());
                        elements.push(y);
                    }
                    if elements.len() > cap {
                        return Err(too_large());
                    }
                }
            }
            rep_pos += block;
        }
    }
    Ok(elements)
}
