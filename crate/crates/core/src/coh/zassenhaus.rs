use num_integer::Integer;

use crate::arith::{mod_inv, prime_divisors};
use crate::error::{FinisError, Result};
use crate::perm::{quotient, GroupHom, PermGroup, Permutation};
use crate::structure::{center, is_solvable, normalizer};
use crate::sylow::sylow;

fn check_coprime_normal(e: &PermGroup, a: &PermGroup) -> Result<(usize, usize)> {
    a.require_subgroup_of(e)?;
    if !a.is_normal_in(e)? {
        return Err(FinisError::NotNormal);
    }
    let (ne, na) = (e.order()?, a.order()?);
    if na.gcd(&(ne / na)) != 1 {
        return Err(FinisError::NotCoprime);
    }
    Ok((ne, na))
}

fn is_complement(e: &PermGroup, a: &PermGroup, k: &PermGroup) -> Result<bool> {
    Ok(k.is_subgroup_of(e)? && k.order()? * a.order()? == e.order()? && k.intersection(a)?.order()? == 1)
}

/// A complement to a normal subgroup of coprime order and index.
pub fn zassenhaus_complement(e: &PermGroup, a: &PermGroup) -> Result<PermGroup> {
    check_coprime_normal(e, a)?;
    let k = complement_inner(e, a)?;
    if !is_complement(e, a, &k)? {
        return Err(FinisError::inconsistency("Zassenhaus output is not a complement"));
    }
    Ok(k)
}

fn complement_inner(e: &PermGroup, a: &PermGroup) -> Result<PermGroup> {
    let (ne, na) = (e.order()?, a.order()?);
    if na == 1 {
        return Ok(e.clone());
    }
    if na == ne {
        return Ok(PermGroup::trivial(e.degree()));
    }
    if a.is_abelian() {
        return abelian_complement(e, a);
    }
    let p = prime_divisors(na as u64)[0];
    let s = sylow(a, p)?;
    let n = normalizer(e, &s)?;
    if n.order()? < ne {
        // Frattini: E = A·N_E(P), so a complement of A ∩ N in N works
        let a_n = n.intersection(a)?;
        return complement_inner(&n, &a_n);
    }
    // P ⊴ E: pass to E/Z(P) and split the abelian layer
    let z = center(&s)?;
    let (q, pi) = quotient(e, &z)?;
    let aq = pi.image_of_subgroup(a)?;
    let kq = complement_inner(&q, &aq)?;
    let k1 = pi.preimage(&kq)?;
    abelian_complement(&k1, &z)
}

/// Averaging construction for abelian `A`: correct a set-section by the
/// `m`-th root of `F(s) = Π_t f(s,t)`.
fn abelian_complement(e: &PermGroup, a: &PermGroup) -> Result<PermGroup> {
    let (q, pi) = quotient(e, a)?;
    let qe = q.elements()?;
    let m = qe.len();
    // h(s): least preimage, with h(1) = 1
    let mut h: Vec<Option<Permutation>> = vec![None; m];
    for x in e.elements()?.iter() {
        let i = q.index_of(pi.image(x)?)?.expect("image");
        if h[i].is_none() {
            h[i] = Some(x.clone());
        }
    }
    let h: Vec<Permutation> = h.into_iter().map(|x| x.expect("surjective")).collect();
    let exp = a.exponent()?;
    let root = mod_inv((m as u64 % exp) as i64, exp as i64).unwrap_or(0).max(0);
    let mut section = Vec::with_capacity(m);
    for (si, s) in qe.iter().enumerate() {
        // F(s) = Π_t h(s)h(t)h(st)⁻¹, in A
        let mut big_f = e.identity();
        for (ti, t) in qe.iter().enumerate() {
            let st = s.compose(t);
            let sti = q.index_of(&st)?.expect("closed");
            let f = h[si].compose(&h[ti]).compose(&h[sti].inverse());
            big_f = big_f.compose(&f);
        }
        let k = big_f.pow(root);
        section.push(k.inverse().compose(&h[si]));
    }
    let k = e.subgroup_generated(&section)?;
    if k.order()? != m {
        return Err(FinisError::inconsistency("corrected section is not a subgroup"));
    }
    Ok(k)
}

/// An element of `A` conjugating `k1` onto `k2`.
pub fn complement_conjugacy(e: &PermGroup, a: &PermGroup, k1: &PermGroup, k2: &PermGroup) -> Result<Permutation> {
    check_coprime_normal(e, a)?;
    for k in [k1, k2] {
        if !is_complement(e, a, k)? {
            return Err(FinisError::PreconditionViolated("not a complement".into()));
        }
    }
    if !is_solvable(a)? && !is_solvable(&quotient(e, a)?.0)? {
        return Err(FinisError::PreconditionViolated("neither A nor E/A is solvable".into()));
    }
    for x in a.elements()?.iter() {
        if k1.conjugate_by(x)?.same_elements(k2)? {
            return Ok(x.clone());
        }
    }
    Err(FinisError::NoConjugatorFound)
}

/// `n × n` matrix over `Z/modulus`, row-major.
pub type ModMatrix = Vec<Vec<u64>>;

fn vector_rank(v: &[u64], modulus: u64) -> usize {
    v.iter().fold(0usize, |acc, &c| acc * modulus as usize + c as usize)
}

fn vector_at(mut k: usize, n: usize, modulus: u64) -> Vec<u64> {
    let mut v = vec![0; n];
    for slot in v.iter_mut().rev() {
        *slot = (k % modulus as usize) as u64;
        k /= modulus as usize;
    }
    v
}

fn mat_vec(m: &ModMatrix, v: &[u64], modulus: u64) -> Vec<u64> {
    m.iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum::<u64>() % modulus)
        .collect()
}

/// Action of a matrix on all of `(Z/modulus)ⁿ`, points by lexicographic rank
/// with the first coordinate most significant.
pub fn matrix_permutation(m: &ModMatrix, modulus: u64, offset: usize) -> Permutation {
    let n = m.len();
    let size = (modulus as usize).pow(n as u32);
    let mut images: Vec<u32> = (0..offset as u32).collect();
    for k in 0..size {
        images.push((offset + vector_rank(&mat_vec(m, &vector_at(k, n, modulus), modulus), modulus)) as u32);
    }
    Permutation::from_images_unchecked(images)
}

/// Reads a matrix back from its action on `(Z/modulus)ⁿ` (zero vector included).
pub fn permutation_matrix(x: &Permutation, n: usize, modulus: u64, offset: usize) -> ModMatrix {
    let mut cols = Vec::with_capacity(n);
    for j in 0..n {
        let mut basis = vec![0; n];
        basis[j] = 1;
        let p = x.apply(offset + vector_rank(&basis, modulus)) - offset;
        cols.push(vector_at(p, n, modulus));
    }
    (0..n).map(|i| (0..n).map(|j| cols[j][i]).collect()).collect()
}

/// Same, for the action on nonzero vectors of `F_pⁿ` with point `rank − 1`.
fn matrix_from_nonzero_action(x: &Permutation, n: usize, p: u64) -> ModMatrix {
    let cols: Vec<Vec<u64>> = (0..n)
        .map(|j| {
            let mut basis = vec![0; n];
            basis[j] = 1;
            let pt = x.apply(vector_rank(&basis, p) - 1);
            vector_at(pt + 1, n, p)
        })
        .collect();
    (0..n).map(|i| (0..n).map(|j| cols[j][i]).collect()).collect()
}

/// Largest `(p^α)ⁿ` accepted by the lifting construction.
const LIFT_POINT_LIMIT: u64 = 729;

/// Lifts `φ: G → GL_n(F_p)` to `G → GL_n(Z/p^α)` acting on all of
/// `(Z/p^α)ⁿ`, one exponent at a time. The target of `φ` acts on the
/// `pⁿ − 1` nonzero vectors, which determines `p` and `n`.
pub fn lift_homomorphism_mod_p(phi: &GroupHom, alpha: u32) -> Result<GroupHom> {
    let points = phi.target().degree() as u64 + 1;
    let (p, n) = crate::arith::prime_power(points).ok_or_else(|| {
        FinisError::PreconditionViolated(format!("target degree {} is not pⁿ − 1", points - 1))
    })?;
    let n = n as usize;
    if alpha == 0 {
        return Err(FinisError::PreconditionViolated("alpha must be at least 1".into()));
    }
    let g = phi.source().clone();
    if g.order()? as u64 % p == 0 {
        return Err(FinisError::NotCoprime);
    }
    let top = p.checked_pow(alpha).and_then(|q| q.checked_pow(n as u32));
    if top.is_none_or(|t| t > LIFT_POINT_LIMIT) {
        return Err(FinisError::TooLarge(format!("GL_{n}(Z/{p}^{alpha}) acts on too many points")));
    }
    let mut current: Vec<ModMatrix> = phi
        .generator_images()
        .iter()
        .map(|x| matrix_from_nonzero_action(x, n, p))
        .collect();
    let mut modulus = p;
    for _ in 1..alpha {
        current = lift_one_step(&g, &current, p, modulus)?;
        modulus *= p;
    }
    let images: Vec<Permutation> = current.iter().map(|m| matrix_permutation(m, modulus, 0)).collect();
    let size = (modulus as usize).pow(n as u32);
    let target = PermGroup::new(size, images.clone())?;
    let lifted = GroupHom::new(g, target, images)?;
    for (x, m0) in lifted.generator_images().iter().zip(phi.generator_images()) {
        let reduced: ModMatrix = permutation_matrix(x, n, modulus, 0)
            .iter()
            .map(|row| row.iter().map(|c| c % p).collect())
            .collect();
        if reduced != matrix_from_nonzero_action(m0, n, p) {
            return Err(FinisError::inconsistency("lift does not reduce to the input"));
        }
    }
    Ok(lifted)
}

/// From `G → GL_n(Z/q)` to `G → GL_n(Z/pq)` by splitting the pullback
/// extension of `G` by `1 + qM_n`.
fn lift_one_step(g: &PermGroup, mats: &[ModMatrix], p: u64, q: u64) -> Result<Vec<ModMatrix>> {
    let n = mats.first().map_or(0, Vec::len);
    let big = q * p;
    let d = g.degree();
    let shift = |x: &Permutation| -> Permutation {
        let mut images: Vec<u32> = (0..d).map(|i| x.apply(i) as u32).collect();
        images.extend((d..d + (big as usize).pow(n as u32)).map(|i| i as u32));
        Permutation::from_images_unchecked(images)
    };
    let mut gens = Vec::new();
    for (s, m) in g.generators().iter().zip(mats) {
        // any integer lift is invertible mod pq; combine with s on the first d points
        let lifted = matrix_permutation(m, big, d);
        gens.push(shift(s).compose(&lifted));
    }
    let mut kernel_gens = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let mut m: ModMatrix = (0..n).map(|r| (0..n).map(|c| u64::from(r == c)).collect()).collect();
            m[i][j] = (m[i][j] + q) % big;
            kernel_gens.push(matrix_permutation(&m, big, d));
        }
    }
    gens.extend(kernel_gens.iter().cloned());
    let e = PermGroup::new(d + (big as usize).pow(n as u32), gens)?;
    let a = e.subgroup_generated(&kernel_gens)?;
    let k = zassenhaus_complement(&e, &a)?;
    let restrict = |x: &Permutation| -> Permutation {
        Permutation::from_images_unchecked((0..d).map(|i| x.apply(i) as u32).collect())
    };
    g.generators()
        .iter()
        .map(|s| {
            let x = k
                .elements()?
                .iter()
                .find(|x| restrict(x) == *s)
                .ok_or_else(|| FinisError::inconsistency("complement misses a generator"))?;
            Ok(permutation_matrix(x, n, big, d))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::{semidirect_product, power_map_images};

    #[test]
    fn s3_complement() {
        let s3 = PermGroup::symmetric(3);
        let a3 = PermGroup::alternating(3);
        let k = zassenhaus_complement(&s3, &a3).unwrap();
        assert_eq!(k.order().unwrap(), 2);
        assert_eq!(zassenhaus_complement(&s3, &PermGroup::trivial(3)).unwrap().order().unwrap(), 6);
    }

    #[test]
    fn guards() {
        let s4 = PermGroup::symmetric(4);
        let v4 = crate::structure::derived_subgroup(&crate::structure::derived_subgroup(&s4).unwrap()).unwrap();
        assert_eq!(zassenhaus_complement(&s4, &v4).unwrap_err(), FinisError::NotCoprime);
        let c2 = s4.subgroup_generated(&[Permutation::parse("(1,2)", 4).unwrap()]).unwrap();
        assert_eq!(zassenhaus_complement(&s4, &c2).unwrap_err(), FinisError::NotNormal);
    }

    #[test]
    fn a4_splits_over_klein() {
        let a4 = PermGroup::alternating(4);
        let v4 = crate::structure::derived_subgroup(&a4).unwrap();
        let k = zassenhaus_complement(&a4, &v4).unwrap();
        assert_eq!(k.order().unwrap(), 3);
    }

    #[test]
    fn nonabelian_kernel() {
        // S₃ × C₅ over S₃ (order 6, index 5)
        let e = crate::perm::direct_product(&PermGroup::symmetric(3), &PermGroup::cyclic(5));
        let s3 = e.subgroup_generated(&e.generators()[..2]).unwrap();
        assert_eq!(s3.order().unwrap(), 6);
        assert_eq!(zassenhaus_complement(&e, &s3).unwrap().order().unwrap(), 5);
    }

    #[test]
    fn complements_are_conjugate() {
        let s3 = PermGroup::symmetric(3);
        let a3 = PermGroup::alternating(3);
        let ks: Vec<PermGroup> = ["(1,2)", "(1,3)", "(2,3)"]
            .iter()
            .map(|c| s3.subgroup_generated(&[Permutation::parse(c, 3).unwrap()]).unwrap())
            .collect();
        for k1 in &ks {
            for k2 in &ks {
                let x = complement_conjugacy(&s3, &a3, k1, k2).unwrap();
                assert!(a3.contains(&x).unwrap());
                assert!(k1.conjugate_by(&x).unwrap().same_elements(k2).unwrap());
            }
        }
        assert!(complement_conjugacy(&s3, &a3, &ks[0], &ks[0]).unwrap().is_identity());
        // C₃ ⋊ C₄ with the generator of C₄ inverting C₃
        let c3 = PermGroup::cyclic(3);
        let e = semidirect_product(&c3, &PermGroup::cyclic(4), &[power_map_images(&c3, -1)]).unwrap();
        let a = e.subgroup_generated(&[e.generators()[0].clone()]).unwrap();
        assert_eq!(a.order().unwrap(), 3);
        let k = zassenhaus_complement(&e, &a).unwrap();
        for x in e.elements().unwrap().iter() {
            let k2 = k.conjugate_by(x).unwrap();
            let y = complement_conjugacy(&e, &a, &k, &k2).unwrap();
            assert!(a.contains(&y).unwrap());
        }
    }

    #[test]
    fn lift_minus_one_mod_nine() {
        let g = PermGroup::cyclic(2);
        // GL₁(F₃) on nonzero vectors {1, 2}: −1 swaps them
        let minus = Permutation::from_images(vec![1, 0]).unwrap();
        let target = PermGroup::new(2, vec![minus.clone()]).unwrap();
        let phi = GroupHom::new(g, target, vec![minus]).unwrap();
        let lifted = lift_homomorphism_mod_p(&phi, 2).unwrap();
        let m = permutation_matrix(&lifted.generator_images()[0], 1, 9, 0);
        assert_eq!(m, vec![vec![8]]);
        let same = lift_homomorphism_mod_p(&phi, 1).unwrap();
        assert_eq!(permutation_matrix(&same.generator_images()[0], 1, 3, 0), vec![vec![2]]);
    }

    #[test]
    fn lift_guard() {
        let g = PermGroup::cyclic(3);
        let on_f3 = GroupHom::new(g.clone(), PermGroup::trivial(2), vec![Permutation::identity(2)]).unwrap();
        assert_eq!(lift_homomorphism_mod_p(&on_f3, 2).unwrap_err(), FinisError::NotCoprime);
        let phi = GroupHom::new(g, PermGroup::trivial(1), vec![Permutation::identity(1)]).unwrap();
        let lifted = lift_homomorphism_mod_p(&phi, 2).unwrap();
        assert!(lifted.generator_images()[0].is_identity());
    }

    #[test]
    fn lift_two_dimensional() {
        // C₃ → GL₂(F₂) via the order-3 matrix [[0,1],[1,1]], lifted to Z/4
        let m: ModMatrix = vec![vec![0, 1], vec![1, 1]];
        let nonzero = {
            let full = matrix_permutation(&m, 2, 0);
            Permutation::from_images_unchecked((1..4).map(|i| full.apply(i) as u32 - 1).collect())
        };
        let g = PermGroup::cyclic(3);
        let phi = GroupHom::new(g, PermGroup::new(3, vec![nonzero.clone()]).unwrap(), vec![nonzero]).unwrap();
        let lifted = lift_homomorphism_mod_p(&phi, 3).unwrap();
        let x = &lifted.generator_images()[0];
        assert_eq!(x.order(), 3);
        let l = permutation_matrix(x, 2, 8, 0);
        assert!(l.iter().flatten().zip(m.iter().flatten()).all(|(a, b)| a % 2 == *b));
    }
}
