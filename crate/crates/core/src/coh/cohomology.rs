use num_integer::Integer;
use serde::Serialize;

use crate::coh::abgroup::{Canonical, FinAbGroup};
use crate::coh::cochain::{cobord, differential_matrix, for_each_differential_row, Cochain, MAX_DEGREE};
use crate::coh::module::GModule;
use crate::coh::zmod::{quotient, smith, RowBasis, ZeMat};
use crate::error::{FinisError, Result};

/// Largest number of rows allowed in a differential matrix.
pub const MAX_ROWS: usize = 20_000;

#[derive(Debug, Clone)]
pub struct CohomologyGroup {
    pub degree: usize,
    pub group: FinAbGroup,
    /// One cocycle per invariant factor, in order.
    pub representatives: Vec<Cochain>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CohomologySummary {
    pub degree: usize,
    pub invariant_factors: Vec<u64>,
    pub order: u64,
    pub representative_count: usize,
}

impl CohomologyGroup {
    pub fn invariant_factors(&self) -> &[u64] {
        self.group.invariant_factors()
    }

    pub fn order(&self) -> u64 {
        self.group.order()
    }

    pub fn summary(&self) -> CohomologySummary {
        CohomologySummary {
            degree: self.degree,
            invariant_factors: self.invariant_factors().to_vec(),
            order: self.order(),
            representative_count: self.representatives.len(),
        }
    }
}

fn check_size(m: &GModule, n: usize) -> Result<()> {
    let rows = (m.order() as u128).pow(n as u32 + 1) * m.ab().rank() as u128;
    if rows > MAX_ROWS as u128 {
        return Err(FinisError::TooLarge(format!(
            "differential in degree {n} needs {rows} rows, limit {MAX_ROWS}"
        )));
    }
    Ok(())
}

/// `Hⁿ(G, A) = Zⁿ/Bⁿ` for `0 ≤ n ≤ 3`.
pub fn cohomology(m: &GModule, n: usize) -> Result<CohomologyGroup> {
    if n > MAX_DEGREE {
        return Err(FinisError::DegreeTooHigh(n));
    }
    check_size(m, n)?;
    let ab = m.ab();
    if ab.is_trivial() {
        return Ok(CohomologyGroup {
            degree: n,
            group: FinAbGroup::trivial(),
            representatives: Vec::new(),
        });
    }
    let e = ab.exponent();
    let r = ab.rank();
    let d = ab.invariant_factors();
    let g = m.order();
    let big_n = r * g.pow(n as u32);

    // Zⁿ mod e: kernel of x ↦ ((Mx)ⱼ mod dⱼ), scaled into Z/e
    let mut basis = RowBasis::new(big_n, e);
    let mut row = vec![0u64; big_n];
    for_each_differential_row(m, n, |k, entries| {
        let scale = (e / d[k % r]) as i64;
        row.iter_mut().for_each(|x| *x = 0);
        for &(c, v) in entries {
            row[c] = ((row[c] as i64 + v * scale).rem_euclid(e as i64)) as u64;
        }
        basis.insert(row.clone());
    });
    let ker = smith(basis.into_matrix(), false, true);
    let v = ker.v.expect("tracked");
    let v_inv = ker.v_inv.expect("tracked");
    // y = V⁻¹x; yᵢ ranges over cᵢ·Z/e ≅ Z/gᵢ
    let gs: Vec<u64> = (0..big_n).map(|i| ker.diag.get(i).copied().unwrap_or(0).gcd(&e)).collect();
    let kept: Vec<usize> = (0..big_n).filter(|&i| gs[i] > 1).collect();
    let cs: Vec<u64> = gs.iter().map(|&gi| e / gi).collect();

    let to_z = |x: &[u64]| -> Result<Vec<u64>> {
        let y = v_inv.mul_vec(x);
        kept.iter()
            .map(|&i| {
                if y[i] % cs[i] != 0 {
                    return Err(FinisError::inconsistency("relation outside the cocycle module"));
                }
                Ok(y[i] / cs[i])
            })
            .collect()
    };

    let mut relations: Vec<Vec<u64>> = Vec::new();
    if n > 0 {
        let b = differential_matrix(m, n - 1, e);
        for j in 0..b.cols {
            relations.push(to_z(&b.column(j))?);
        }
    }
    for k in 0..big_n {
        let mut x = vec![0u64; big_n];
        x[k] = d[k % r] % e;
        relations.push(to_z(&x)?);
    }
    let kk = kept.len();
    let mut pres = ZeMat::zeros(kk, relations.len() + kk, e);
    for (j, rel) in relations.iter().enumerate() {
        for i in 0..kk {
            pres.set(i, j, rel[i]);
        }
    }
    for (i, &ki) in kept.iter().enumerate() {
        pres.set(i, relations.len() + i, gs[ki] % e);
    }
    let coker = smith(pres, true, false);
    let u_inv = coker.u_inv.expect("tracked");
    let orders: Vec<u64> = (0..kk).map(|j| coker.diag.get(j).copied().unwrap_or(0).gcd(&e)).collect();
    let canon = Canonical::new(&orders);

    let mut representatives = Vec::new();
    for j in 0..canon.group.rank() {
        let w = canon.generator_in_source(j);
        let w: Vec<u64> = w.iter().map(|&c| c.rem_euclid(e as i64) as u64).collect();
        let z = u_inv.mul_vec(&w);
        let mut y = vec![0u64; big_n];
        for (t, &i) in kept.iter().enumerate() {
            y[i] = ((z[t] as u128 * cs[i] as u128) % e as u128) as u64;
        }
        let x = v.mul_vec(&y);
        let f = Cochain::from_flat(m, n, &x);
        if n < MAX_DEGREE && !cobord(m, &f)?.is_zero() {
            return Err(FinisError::inconsistency("cohomology representative is not a cocycle"));
        }
        representatives.push(f);
    }
    let h = CohomologyGroup {
        degree: n,
        group: canon.group,
        representatives,
    };
    if n == 0 && h.order() as usize != m.fixed_points().len() {
        return Err(FinisError::inconsistency("H⁰ differs from the fixed points"));
    }
    if n >= 1 && g as u64 % h.group.exponent() != 0 {
        return Err(FinisError::inconsistency(format!(
            "exponent of H^{n} does not divide |G| = {g}"
        )));
    }
    Ok(h)
}

/// Some `l ∈ Cⁿ⁻¹` with `dl = f`, if one exists.
pub fn solve_coboundary(m: &GModule, f: &Cochain) -> Result<Option<Cochain>> {
    let n = f.degree();
    if n == 0 {
        return Ok(f.is_zero().then(|| f.clone()));
    }
    check_size(m, n - 1)?;
    let ab = m.ab();
    if ab.is_trivial() {
        return Ok(Some(Cochain::zero(m, n - 1)));
    }
    let e = ab.exponent();
    let r = ab.rank();
    let d = ab.invariant_factors();
    let b = differential_matrix(m, n - 1, e);
    let rows = b.rows;
    let mut a = ZeMat::zeros(rows, b.cols + rows, e);
    for i in 0..rows {
        for j in 0..b.cols {
            a.set(i, j, b.get(i, j));
        }
        a.set(i, b.cols + i, d[i % r] % e);
    }
    let s = smith(a, true, true);
    let (u, v) = (s.u.expect("tracked"), s.v.expect("tracked"));
    let rhs = u.mul_vec(&f.to_flat());
    let mut w = vec![0u64; v.rows];
    for (i, &t) in rhs.iter().enumerate() {
        match s.diag.get(i) {
            Some(&si) => {
                if t % si.gcd(&e) != 0 {
                    return Ok(None);
                }
                w[i] = quotient(si, t, e);
            }
            None if t != 0 => return Ok(None),
            None => {}
        }
    }
    let z = v.mul_vec(&w);
    let l = Cochain::from_flat(m, n - 1, &z[..b.cols]);
    if cobord(m, &l)? != *f {
        return Err(FinisError::inconsistency("coboundary solution does not check"));
    }
    Ok(Some(l))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::PermGroup;

    fn sign_module(n: u64) -> GModule {
        let g = PermGroup::symmetric(3);
        let mults: Vec<i64> = g.generators().iter().map(|s| s.sign() as i64).collect();
        GModule::cyclic(g, n, &mults).unwrap()
    }

    #[test]
    fn h0_is_fixed_points() {
        let m = GModule::trivial(PermGroup::cyclic(3), FinAbGroup::from_cyclic_orders(&[2, 4])).unwrap();
        assert_eq!(cohomology(&m, 0).unwrap().invariant_factors(), &[2, 4]);
        assert_eq!(cohomology(&sign_module(5), 0).unwrap().order(), 1);
        assert_eq!(cohomology(&sign_module(4), 0).unwrap().invariant_factors(), &[2]);
    }

    #[test]
    fn coprime_cohomology_vanishes() {
        let m = sign_module(5);
        for n in 1..=2 {
            assert_eq!(cohomology(&m, n).unwrap().order(), 1);
        }
        let t = GModule::trivial(PermGroup::symmetric(3), FinAbGroup::cyclic(5)).unwrap();
        assert_eq!(cohomology(&t, 2).unwrap().order(), 1);
    }

    #[test]
    fn cyclic_group_cohomology() {
        let m = GModule::trivial(PermGroup::cyclic(2), FinAbGroup::cyclic(2)).unwrap();
        for n in 0..=3 {
            assert_eq!(cohomology(&m, n).unwrap().invariant_factors(), &[2], "n={n}");
        }
        // H²(C₄, Z/6) = Z/6 / 4·Z/6 ≅ Z/2
        let m = GModule::trivial(PermGroup::cyclic(4), FinAbGroup::cyclic(6)).unwrap();
        assert_eq!(cohomology(&m, 1).unwrap().invariant_factors(), &[2]);
        assert_eq!(cohomology(&m, 2).unwrap().invariant_factors(), &[2]);
    }

    #[test]
    fn klein_with_z2() {
        // Künneth: H¹ = (Z/2)², H² = (Z/2)³
        let m = GModule::trivial(PermGroup::klein(), FinAbGroup::cyclic(2)).unwrap();
        assert_eq!(cohomology(&m, 1).unwrap().invariant_factors(), &[2, 2]);
        assert_eq!(cohomology(&m, 2).unwrap().invariant_factors(), &[2, 2, 2]);
    }

    #[test]
    fn s3_sign_twisted() {
        // H¹(S₃, Z/2) = Hom(S₃, Z/2) = Z/2; the sign action is trivial mod 2
        let m = sign_module(2);
        assert_eq!(cohomology(&m, 1).unwrap().invariant_factors(), &[2]);
        // stable classes of Hom(C₃, Z/3) under the twisted C₂ action
        let m3 = sign_module(3);
        assert_eq!(cohomology(&m3, 1).unwrap().invariant_factors(), &[3]);
    }

    #[test]
    fn solve_recovers_coboundaries() {
        let m = sign_module(6);
        let l = Cochain::from_fn(&m, 1, |s| m.ab().element(&[(s[0] * 5 + 1) as i64]));
        let f = cobord(&m, &l).unwrap();
        let l2 = solve_coboundary(&m, &f).unwrap().expect("coboundary");
        assert_eq!(cobord(&m, &l2).unwrap(), f);
        let c2 = GModule::trivial(PermGroup::cyclic(2), FinAbGroup::cyclic(2)).unwrap();
        let h = cohomology(&c2, 2).unwrap();
        assert!(solve_coboundary(&c2, &h.representatives[0]).unwrap().is_none());
    }

    #[test]
    fn too_large_is_reported() {
        let m = GModule::trivial(PermGroup::symmetric(5), FinAbGroup::cyclic(2)).unwrap();
        assert!(matches!(cohomology(&m, 2), Err(FinisError::TooLarge(_))));
    }
}
