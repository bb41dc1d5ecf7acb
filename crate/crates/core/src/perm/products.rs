use std::collections::VecDeque;

use crate::error::{FinisError, Result};
use crate::perm::{GroupHom, PermGroup, Permutation};

/// `A × B` acting on `deg(A) + deg(B)` points, `B` shifted past `A`.
pub fn direct_product(a: &PermGroup, b: &PermGroup) -> PermGroup {
    let total = a.degree() + b.degree();
    let mut gens: Vec<Permutation> = a.generators().iter().map(|x| x.shifted(0, total)).collect();
    gens.extend(b.generators().iter().map(|x| x.shifted(a.degree(), total)));
    PermGroup::new(total, gens)
        .expect("shifted generators have the total degree")
        .with_cap(a.cap().max(b.cap()))
}

/// Automorphism of `n` as a table on element indices.
fn automorphism_table(n: &PermGroup, images: &[Permutation]) -> Result<Vec<usize>> {
    let hom = GroupHom::new(n.clone(), n.clone(), images.to_vec()).map_err(|e| match e {
        FinisError::NotAHomomorphism => FinisError::NotAnAutomorphism,
        other => other,
    })?;
    if !hom.is_injective() {
        return Err(FinisError::NotAnAutomorphism);
    }
    let len = n.order()?;
    let mut table = Vec::with_capacity(len);
    for i in 0..len {
        table.push(n.index_of(hom.image_at(i))?.expect("image lies in n"));
    }
    Ok(table)
}

/// `N ⋊ H` realized on the set `N × H` by left multiplication, with law
/// `(a, s)(b, t) = (a · s(b), st)`.
///
/// `action[j]` lists the images of `n`'s generators under the automorphism
/// attached to the `j`-th generator of `h`.
pub fn semidirect_product(
    n: &PermGroup,
    h: &PermGroup,
    action: &[Vec<Permutation>],
) -> Result<PermGroup> {
    if action.len() != h.generators().len() {
        return Err(FinisError::ActionNotConsistent);
    }
    let ne = n.elements()?;
    let he = h.elements()?;
    let (nn, nh) = (ne.len(), he.len());
    let gen_tables: Vec<Vec<usize>> = action
        .iter()
        .map(|imgs| automorphism_table(n, imgs))
        .collect::<Result<_>>()?;

    // extend s ↦ φ_s over all of H, checking that relations are respected
    let mut phi: Vec<Option<Vec<usize>>> = vec![None; nh];
    phi[0] = Some((0..nn).collect());
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        let cur = phi[i].clone().expect("visited");
        for (s, tab) in h.generators().iter().zip(&gen_tables) {
            let j = h.index_of(&he[i].compose(s))?.expect("closed");
            let next: Vec<usize> = tab.iter().map(|&k| cur[k]).collect();
            match &phi[j] {
                None => {
                    phi[j] = Some(next);
                    queue.push_back(j);
                }
                Some(prev) if *prev != next => return Err(FinisError::ActionNotConsistent),
                Some(_) => {}
            }
        }
    }

    let degree = nn * nh;
    let point = |a: usize, s: usize| a * nh + s;
    let mut gens = Vec::new();
    for x in n.generators() {
        let xi = n.index_of(x)?.expect("generator");
        let mut img = vec![0u32; degree];
        for a in 0..nn {
            let xa = n.index_of(&ne[xi].compose(&ne[a]))?.expect("closed");
            for s in 0..nh {
                img[point(a, s)] = point(xa, s) as u32;
            }
        }
        gens.push(Permutation::from_images_unchecked(img));
    }
    for (t, tab) in h.generators().iter().zip(&gen_tables) {
        let mut img = vec![0u32; degree];
        for s in 0..nh {
            let ts = h.index_of(&t.compose(&he[s]))?.expect("closed");
            for a in 0..nn {
                img[point(a, s)] = point(tab[a], ts) as u32;
            }
        }
        gens.push(Permutation::from_images_unchecked(img));
    }
    Ok(PermGroup::new(degree.max(1), gens)?.with_cap(n.cap().max(h.cap())))
}

/// Images of `n`'s generators under `x ↦ x^k`; an automorphism when `k`
/// is prime to the exponent of an abelian `n`.
pub fn power_map_images(n: &PermGroup, k: i64) -> Vec<Permutation> {
    n.generators().iter().map(|x| x.pow(k)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn direct_products() {
        let c2 = PermGroup::cyclic(2);
        let k = direct_product(&c2, &c2);
        assert_eq!(k.order().unwrap(), 4);
        assert_eq!(k.exponent().unwrap(), 2);
        let c6 = direct_product(&c2, &PermGroup::cyclic(3));
        assert!(c6.elements().unwrap().iter().any(|x| x.order() == 6));
        let t = direct_product(&PermGroup::trivial(1), &PermGroup::symmetric(3));
        assert_eq!(t.order().unwrap(), 6);
    }

    #[test]
    fn c3_by_c2_inversion_is_s3() {
        let c3 = PermGroup::cyclic(3);
        let c2 = PermGroup::cyclic(2);
        let g = semidirect_product(&c3, &c2, &[power_map_images(&c3, -1)]).unwrap();
        assert_eq!(g.order().unwrap(), 6);
        assert!(!g.is_abelian());
        let trivial = semidirect_product(&c3, &c2, &[power_map_images(&c3, 1)]).unwrap();
        assert!(trivial.is_abelian());
        assert_eq!(trivial.order().unwrap(), 6);
    }

    #[test]
    fn bad_actions_are_rejected() {
        let c3 = PermGroup::cyclic(3);
        let c4 = PermGroup::cyclic(4);
        // x ↦ x^3 collapses C3
        assert_eq!(
            semidirect_product(&c3, &c4, &[power_map_images(&c3, 3)]).unwrap_err(),
            FinisError::NotAnAutomorphism
        );
        // C3 = <g>, g^3 = 1 but inversion has order 2: fine for C4 acting
        let ok = semidirect_product(&c3, &c4, &[power_map_images(&c3, -1)]).unwrap();
        assert_eq!(ok.order().unwrap(), 12);
        // C3 acting on C5 by an order-4 automorphism violates g^3 = 1
        let c5 = PermGroup::cyclic(5);
        assert_eq!(
            semidirect_product(&c5, &c3, &[power_map_images(&c5, 2)]).unwrap_err(),
            FinisError::ActionNotConsistent
        );
    }
}
