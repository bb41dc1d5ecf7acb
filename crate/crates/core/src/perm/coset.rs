
use crate::error::{FinisError, Result};
use crate::perm::{GroupHom, PermGroup, Permutation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    /// `xH`
    Left,
    /// `Hx`
    Right,
}

#[derive(Debug, Clone)]
pub struct Coset {
    pub representative: Permutation,
    pub subgroup: PermGroup,
    pub side: Side,
}

impl Coset {
    pub fn contains(&self, x: &Permutation) -> Result<bool> {
        let r_inv = self.representative.inverse();
        let probe = match self.side {
            Side::Left => r_inv.compose(x),
            Side::Right => x.compose(&r_inv),
        };
        self.subgroup.contains(&probe)
    }

    /// Equal iff `r1⁻¹ r2 ∈ H` (left) or `r2 r1⁻¹ ∈ H` (right).
    pub fn same_as(&self, other: &Coset) -> Result<bool> {
        if self.side != other.side {
            return Ok(false);
        }
        other.contains(&self.representative)
    }

    pub fn elements(&self) -> Result<Vec<Permutation>> {
        let h = self.subgroup.elements()?;
        let mut out: Vec<Permutation> = match self.side {
            Side::Left => h.iter().map(|x| self.representative.compose(x)).collect(),
            Side::Right => h.iter().map(|x| x.compose(&self.representative)).collect(),
        };
        out.sort_unstable();
        Ok(out)
    }
}

/// Partition of `G` into cosets of `H`, indexed by the position of each
/// element in `G`'s sorted element list. Representatives are the smallest
/// element of each coset; the identity coset comes first.
#[derive(Debug, Clone)]
pub(crate) struct CosetTable {
    pub reps: Vec<Permutation>,
    pub coset_of: Vec<usize>,
}

impl CosetTable {
    pub fn new(g: &PermGroup, h: &PermGroup, side: Side) -> Result<Self> {
        h.require_subgroup_of(g)?;
        let ge = g.elements()?;
        let he = h.elements()?;
        let mut coset_of = vec![usize::MAX; ge.len()];
        let mut reps = Vec::new();
        for (i, x) in ge.iter().enumerate() {
            if coset_of[i] != usize::MAX {
                continue;
            }
            let id = reps.len();
            reps.push(x.clone());
            for y in he {
                let z = match side {
                    Side::Left => x.compose(y),
                    Side::Right => y.compose(x),
                };
                let k = g.index_of(&z)?.ok_or(FinisError::NotASubgroup)?;
                coset_of[k] = id;
            }
        }
        Ok(CosetTable { reps, coset_of })
    }

    pub fn index(&self) -> usize {
        self.reps.len()
    }
}

/// The `(G:H)` cosets of `H` in `G`; the first has the identity as
/// representative.
pub fn cosets(g: &PermGroup, h: &PermGroup, side: Side) -> Result<Vec<Coset>> {
    let table = CosetTable::new(g, h, side)?;
    Ok(table
        .reps
        .into_iter()
        .map(|r| Coset {
            representative: r,
            subgroup: h.clone(),
            side,
        })
        .collect())
}

/// Action of `G` by left multiplication on the left cosets `G/H`.
pub fn action_on_cosets(g: &PermGroup, h: &PermGroup) -> Result<GroupHom> {
    let table = CosetTable::new(g, h, Side::Left)?;
    let k = table.index();
    let mut images = Vec::with_capacity(g.generators().len());
    for s in g.generators() {
        let mut img = Vec::with_capacity(k);
        for r in &table.reps {
            let idx = g.index_of(&s.compose(r))?.ok_or(FinisError::ElementNotInGroup)?;
            img.push(table.coset_of[idx]);
        }
        images.push(Permutation::from_images(img)?);
    }
    let target = PermGroup::new(k, images.clone())?.with_cap(g.cap());
    GroupHom::new(g.clone(), target, images)
}

/// Largest normal subgroup of `G` contained in `H`: the kernel of the
/// action on `G/H`.
pub fn normal_core(g: &PermGroup, h: &PermGroup) -> Result<PermGroup> {
    action_on_cosets(g, h)?.kernel()
}

/// `G/N` realized as the image of the action on `G/N`; the returned map
/// has kernel exactly `N`.
pub fn quotient(g: &PermGroup, n: &PermGroup) -> Result<(PermGroup, GroupHom)> {
    if !n.is_normal_in(g)? {
        return Err(FinisError::NotNormal);
    }
    let hom = action_on_cosets(g, n)?;
    Ok((hom.target().clone(), hom))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, n: usize) -> Permutation {
        Permutation::parse(s, n).unwrap()
    }

    fn klein_in_s4() -> PermGroup {
        PermGroup::symmetric(4)
            .subgroup_generated(&[p("(1 2)(3 4)", 4), p("(1 3)(2 4)", 4)])
            .unwrap()
    }

    #[test]
    fn coset_counts() {
        let s4 = PermGroup::symmetric(4);
        assert_eq!(cosets(&s4, &s4, Side::Left).unwrap().len(), 1);
        let a4 = PermGroup::alternating(4);
        assert_eq!(cosets(&s4, &a4, Side::Left).unwrap().len(), 2);
        let c4 = s4.subgroup_generated(&[p("(1 2 3 4)", 4)]).unwrap();
        let cs = cosets(&s4, &c4, Side::Right).unwrap();
        assert_eq!(cs.len(), 6);
        assert!(cs[0].representative.is_identity());
    }

    #[test]
    fn cosets_partition_the_group() {
        let s4 = PermGroup::symmetric(4);
        let s3 = s4.subgroup_generated(&[p("(1 2)", 4), p("(1 2 3)", 4)]).unwrap();
        for side in [Side::Left, Side::Right] {
            let cs = cosets(&s4, &s3, side).unwrap();
            let mut all: Vec<Permutation> = cs.iter().flat_map(|c| c.elements().unwrap()).collect();
            all.sort();
            assert_eq!(all, s4.elements().unwrap());
            for (i, a) in cs.iter().enumerate() {
                for (j, b) in cs.iter().enumerate() {
                    assert_eq!(a.same_as(b).unwrap(), i == j);
                }
            }
        }
    }

    #[test]
    fn non_subgroup_is_rejected() {
        let s3 = PermGroup::symmetric(3);
        let c4 = PermGroup::cyclic(4);
        assert_eq!(cosets(&s3, &c4, Side::Left).unwrap_err(), FinisError::NotASubgroup);
    }

    #[test]
    fn coset_action_examples() {
        let s3 = PermGroup::symmetric(3);
        let whole = action_on_cosets(&s3, &s3).unwrap();
        assert_eq!(whole.target().degree(), 1);
        assert_eq!(whole.target().order().unwrap(), 1);

        let regular = action_on_cosets(&s3, &PermGroup::trivial(3)).unwrap();
        assert_eq!(regular.target().degree(), 6);
        assert_eq!(regular.kernel().unwrap().order().unwrap(), 1);

        let s4 = PermGroup::symmetric(4);
        let d = klein_in_s4();
        let hom = action_on_cosets(&s4, &d).unwrap();
        assert_eq!(hom.target().order().unwrap(), 6);
    }

    #[test]
    fn normal_core_examples() {
        let s4 = PermGroup::symmetric(4);
        let a4 = PermGroup::alternating(4);
        assert!(normal_core(&s4, &a4).unwrap().same_elements(&a4).unwrap());
        let s3 = s4.subgroup_generated(&[p("(1 2)", 4), p("(1 2 3)", 4)]).unwrap();
        assert_eq!(normal_core(&s4, &s3).unwrap().order().unwrap(), 1);
        let d4 = s4.subgroup_generated(&[p("(1 2 3 4)", 4), p("(1 3)", 4)]).unwrap();
        assert_eq!(d4.order().unwrap(), 8);
        let core = normal_core(&s4, &d4).unwrap();
        assert!(core.same_elements(&klein_in_s4()).unwrap());
    }

    #[test]
    fn quotient_examples() {
        let s4 = PermGroup::symmetric(4);
        let (q, _) = quotient(&s4, &s4).unwrap();
        assert_eq!(q.order().unwrap(), 1);
        let (q, hom) = quotient(&s4, &PermGroup::alternating(4)).unwrap();
        assert_eq!(q.order().unwrap(), 2);
        assert!(hom.kernel().unwrap().same_elements(&PermGroup::alternating(4)).unwrap());
        let a4 = PermGroup::alternating(4);
        let d = klein_in_s4();
        let (q, _) = quotient(&a4, &d).unwrap();
        assert_eq!(q.order().unwrap(), 3);
        let c3 = s4.subgroup_generated(&[p("(1 2 3)", 4)]).unwrap();
        assert_eq!(quotient(&s4, &c3).unwrap_err(), FinisError::NotNormal);
    }
}
