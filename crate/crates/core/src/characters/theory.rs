use std::collections::HashSet;

use serde::Serialize;

use num_integer::gcd;

use crate::arith::{prime_divisors, prime_power};
use crate::characters::table::{
    character_table, inner_product, CharacterTable, ClassFunction, C64, TOLERANCE,
};
use crate::error::{FinisError, Result};
use crate::frobenius::{frobenius_couple, frobenius_kernel, FrobeniusCouple};
use crate::perm::{cosets, quotient, PermGroup, Permutation, Side};
use crate::structure::{center, classify, conjugacy_classes, is_simple};

const INTEGRALITY_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IntegralityReport {
    pub entries_checked: usize,
    /// Every `χ(s)` is a root of a monic integer polynomial.
    pub values_integral: bool,
    /// Every `|C(s)|χ(s)/χ(1)` is too.
    pub central_values_integral: bool,
    pub max_residue: f64,
}

/// Class of `sᵏ` for each class `s` and each `k`.
fn power_class(ct: &CharacterTable, c: usize, k: u64) -> Result<usize> {
    let r = &ct.classes.representatives[c];
    ct.classes.class_of(&ct.group, &r.pow(k as i64))
}

/// Coefficients of `∏(x − zᵢ)`, highest degree first.
fn poly_from_roots(roots: &[C64]) -> Vec<C64> {
    let mut p = vec![C64::new(1.0, 0.0)];
    for z in roots {
        let mut q = vec![C64::new(0.0, 0.0); p.len() + 1];
        for (i, c) in p.iter().enumerate() {
            q[i] += c;
            q[i + 1] -= c * z;
        }
        p = q;
    }
    p
}

fn integer_residue(poly: &[C64]) -> f64 {
    poly.iter()
        .map(|c| (c.re - c.re.round()).abs().max(c.im.abs()))
        .fold(0.0, f64::max)
}

fn dedup(values: Vec<C64>) -> Vec<C64> {
    let mut out: Vec<C64> = Vec::new();
    for v in values {
        if out.iter().all(|w| (w - v).norm() > INTEGRALITY_TOLERANCE) {
            out.push(v);
        }
    }
    out
}

/// The Galois conjugates of `χ(s)` are `χ(sᵏ)` for `k` prime to the order
/// of `s`, so their product polynomial is the minimal polynomial and must
/// have integer coefficients.
pub fn integrality_report(ct: &CharacterTable) -> Result<IntegralityReport> {
    let h = ct.len();
    let sizes = &ct.classes.sizes;
    let mut max_residue: f64 = 0.0;
    let mut values_ok = true;
    let mut central_ok = true;
    for c in 0..h {
        let m = ct.classes.element_order(c);
        let orbit: Vec<usize> = (1..=m.max(1))
            .filter(|&k| gcd(k, m) == 1)
            .map(|k| power_class(ct, c, k))
            .collect::<Result<_>>()?;
        for (i, row) in ct.rows.iter().enumerate() {
            let d = ct.degrees[i] as f64;
            let vals = dedup(orbit.iter().map(|&j| row[j]).collect());
            let r = integer_residue(&poly_from_roots(&vals));
            let omegas = dedup(orbit.iter().map(|&j| row[j] * sizes[c] as f64 / d).collect());
            let rc = integer_residue(&poly_from_roots(&omegas));
            max_residue = max_residue.max(r).max(rc);
            values_ok &= r < INTEGRALITY_TOLERANCE;
            central_ok &= rc < INTEGRALITY_TOLERANCE;
        }
    }
    let report = IntegralityReport {
        entries_checked: h * h,
        values_integral: values_ok,
        central_values_integral: central_ok,
        max_residue,
    };
    if !(values_ok && central_ok) {
        return Err(FinisError::ToleranceExceeded(format!(
            "integrality residue {max_residue:e}"
        )));
    }
    Ok(report)
}

fn kernel_classes(ct: &CharacterTable, i: usize, absolute: bool) -> Vec<usize> {
    let d = ct.degrees[i] as f64;
    (0..ct.classes.len())
        .filter(|&c| {
            let z = ct.rows[i][c];
            if absolute {
                (z.norm() - d).abs() < 1e-6
            } else {
                (z - C64::new(d, 0.0)).norm() < 1e-6
            }
        })
        .collect()
}

fn union_of_classes(ct: &CharacterTable, cls: &[usize]) -> Result<PermGroup> {
    let elems = ct.group.elements()?;
    let members: Vec<Permutation> = cls
        .iter()
        .flat_map(|&c| ct.classes.members(c).iter().map(|&i| elems[i].clone()))
        .collect();
    ct.group.subgroup_from_elements(members)
}

/// `ker χ = {s : χ(s) = χ(1)}`.
pub fn character_kernel(ct: &CharacterTable, i: usize) -> Result<PermGroup> {
    union_of_classes(ct, &kernel_classes(ct, i, false))
}

#[derive(Debug, Clone)]
pub struct BurnsideWitness {
    pub element: Permutation,
    pub class: usize,
    /// Row of the character whose kernel is `normal_subgroup`.
    pub character: usize,
    pub normal_subgroup: PermGroup,
}

/// An `s ≠ 1` whose class has prime-power size, a character `χ ≠ 1` with
/// `χ(s) ≠ 0` and `χ(1)` prime to that prime, and `N = ker χ`; then
/// `|χ(s)| = χ(1)` so `s` maps into the centre of `G/N`.
pub fn burnside_witness(ct: &CharacterTable) -> Result<Option<BurnsideWitness>> {
    let g = &ct.group;
    for c in 1..ct.classes.len() {
        let size = ct.classes.sizes[c] as u64;
        let p = match size {
            1 => None,
            _ => match prime_power(size) {
                Some((p, _)) => Some(p),
                None => continue,
            },
        };
        let found = (1..ct.len()).find(|&i| {
            ct.rows[i][c].norm() > 1e-6 && p.is_none_or(|p| ct.degrees[i] % p != 0)
        });
        let Some(i) = found else {
            return Err(FinisError::inconsistency("column orthogonality leaves no witness character"));
        };
        if (ct.rows[i][c].norm() - ct.degrees[i] as f64).abs() > 1e-6 {
            return Err(FinisError::ToleranceExceeded(format!(
                "|χ(s)| = {} but χ(1) = {}",
                ct.rows[i][c].norm(),
                ct.degrees[i]
            )));
        }
        let n = character_kernel(ct, i)?;
        let s = ct.classes.representatives[c].clone();
        if n.order()? == g.order()? || !n.is_normal_in(g)? {
            return Err(FinisError::inconsistency("kernel of a nontrivial character is not proper normal"));
        }
        for t in g.generators() {
            if !n.contains(&Permutation::commutator(&s, t))? {
                return Err(FinisError::inconsistency("witness is not central modulo the kernel"));
            }
        }
        return Ok(Some(BurnsideWitness {
            element: s,
            class: c,
            character: i,
            normal_subgroup: n,
        }));
    }
    Ok(None)
}

fn is_pq_order(n: u64) -> bool {
    prime_divisors(n).len() <= 2
}

/// Solvability of a group of order `pᵃqᵇ` by the character-theoretic
/// recursion: split along `ker χ` from a witness, or along the centre when
/// the witness character is faithful. Cross-checked against the derived
/// series.
pub fn burnside_solvable(g: &PermGroup) -> Result<bool> {
    if !is_pq_order(g.order()? as u64) {
        return Err(FinisError::NotPQOrder);
    }
    burnside_recurse(g, 0)?;
    if !classify(g)?.solvable {
        return Err(FinisError::inconsistency("derived series disagrees with the character argument"));
    }
    Ok(true)
}

fn burnside_recurse(g: &PermGroup, depth: usize) -> Result<()> {
    if depth > 64 {
        return Err(FinisError::DepthExceeded);
    }
    if g.order()? == 1 || g.is_abelian() {
        return Ok(());
    }
    let ct = character_table(g)?;
    let Some(w) = burnside_witness(&ct)? else {
        return Err(FinisError::inconsistency("no class of prime-power size in a group of order pᵃqᵇ"));
    };
    let n = if w.normal_subgroup.order()? > 1 {
        w.normal_subgroup
    } else {
        center(g)?
    };
    if n.order()? == 1 {
        return Err(FinisError::inconsistency("faithful witness but trivial centre"));
    }
    let (q, _) = quotient(g, &n)?;
    burnside_recurse(&n, depth + 1)?;
    burnside_recurse(&q, depth + 1)
}

/// `θ|_H` as a class function on `H`.
fn restrict(ct_g: &CharacterTable, h: &PermGroup, theta: &ClassFunction) -> Result<ClassFunction> {
    let hc = conjugacy_classes(h)?;
    let values = hc
        .representatives
        .iter()
        .map(|y| Ok(theta.at(ct_g.classes.class_of(&ct_g.group, y)?)))
        .collect::<Result<Vec<_>>>()?;
    ClassFunction::new(&hc, values)
}

fn extend_on(fc: &FrobeniusCouple, ct_g: &CharacterTable, f: &ClassFunction) -> Result<ClassFunction> {
    let g = &fc.group;
    let h = &fc.complement;
    let hc = conjugacy_classes(h)?;
    if f.class_sizes() != hc.sizes.as_slice() {
        return Err(FinisError::DimensionMismatch);
    }
    let kernel: HashSet<&Permutation> = fc.kernel_elements.iter().collect();
    let reps: Vec<Permutation> = cosets(g, h, Side::Left)?.into_iter().map(|c| c.representative).collect();
    let mut values = Vec::with_capacity(ct_g.classes.len());
    for x in &ct_g.classes.representatives {
        if kernel.contains(x) {
            values.push(f.at(0));
            continue;
        }
        let mut found = None;
        for r in &reps {
            let y = r.inverse().conjugate(x);
            if h.contains(&y)? {
                found = Some(hc.class_of(h, &y)?);
                break;
            }
        }
        let c = found.ok_or_else(|| FinisError::inconsistency("element outside the kernel and all conjugates of H"))?;
        values.push(f.at(c));
    }
    let ft = ClassFunction::new(&ct_g.classes, values)?;
    let one_g = ClassFunction::constant(&ct_g.classes, 1.0);
    let one_h = ClassFunction::constant(&hc, 1.0);
    let f1 = f.at(0);
    for theta in ct_g.characters() {
        let th = restrict(ct_g, h, &theta)?;
        let lhs = inner_product(g, &ft, &theta)?;
        let rhs = inner_product(h, f, &th)? + f1 * inner_product(g, &one_g, &theta)?
            - f1 * inner_product(h, &one_h, &th)?;
        if (lhs - rhs).norm() > TOLERANCE {
            return Err(FinisError::ToleranceExceeded(format!(
                "extended function identity off by {:e}",
                (lhs - rhs).norm()
            )));
        }
    }
    let iso = inner_product(g, &ft, &ft)? - inner_product(h, f, f)?;
    if iso.norm() > TOLERANCE {
        return Err(FinisError::ToleranceExceeded(format!("isometry off by {:e}", iso.norm())));
    }
    Ok(ft)
}

/// `f̃` on `G` for a class function `f` on a Frobenius complement `H`:
/// `f(1)` on the kernel and `f(y)` on conjugates of `y ∈ H`. Checked
/// against every irreducible `θ` of `G` and for isometry.
pub fn extend_class_function(g: &PermGroup, h: &PermGroup, f: &ClassFunction) -> Result<ClassFunction> {
    let fc = frobenius_couple(g, h)?;
    let ct = character_table(g)?;
    extend_on(&fc, &ct, f)
}

/// Intersection of `ker χ̃` over the irreducible `χ` of `H`; each `χ̃` is
/// checked to be irreducible and the result to match the set-theoretic
/// kernel.
pub fn frobenius_kernel_via_characters(g: &PermGroup, h: &PermGroup) -> Result<PermGroup> {
    let fc = frobenius_couple(g, h)?;
    let ct_g = character_table(g)?;
    let ct_h = character_table(h)?;
    let mut keep: Vec<bool> = vec![true; ct_g.classes.len()];
    for chi in ct_h.characters() {
        let ext = extend_on(&fc, &ct_g, &chi)?;
        let norm = inner_product(g, &ext, &ext)?;
        if (norm - C64::new(1.0, 0.0)).norm() > TOLERANCE || ext.at(0).re < 0.5 {
            return Err(FinisError::inconsistency("extension of an irreducible character is not irreducible"));
        }
        let Some(row) = ct_g.find_row(&ext, 1e-6) else {
            return Err(FinisError::inconsistency("extended character is not a row of the table"));
        };
        let ker: HashSet<usize> = kernel_classes(&ct_g, row, false).into_iter().collect();
        for (c, k) in keep.iter_mut().enumerate() {
            *k &= ker.contains(&c);
        }
    }
    let cls: Vec<usize> = (0..keep.len()).filter(|&c| keep[c]).collect();
    let n = union_of_classes(&ct_g, &cls)?;
    if !n.same_elements(&frobenius_kernel(&fc)?)? {
        return Err(FinisError::inconsistency("character kernel differs from the Frobenius kernel"));
    }
    Ok(n)
}

/// Simple iff no `χ ≠ 1` takes the value `χ(1)` at some `s ≠ 1`;
/// cross-checked against the normal subgroup lattice.
pub fn simplicity_by_characters(ct: &CharacterTable) -> Result<bool> {
    let simple = (1..ct.len()).all(|i| kernel_classes(ct, i, false) == vec![0]);
    if simple != is_simple(&ct.group)? {
        return Err(FinisError::inconsistency("character criterion disagrees with normal subgroups"));
    }
    Ok(simple)
}

/// `Z(χ) = {s : |χ(s)| = χ(1)}`, where `ρ(s)` is a scalar.
pub fn character_center(ct: &CharacterTable, i: usize) -> Result<PermGroup> {
    union_of_classes(ct, &kernel_classes(ct, i, true))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffgroups::{realize, MatrixGroupSpec, MatrixKind};

    fn agl(q: u64) -> PermGroup {
        realize(&MatrixGroupSpec { kind: MatrixKind::AGL1, n: 1, q }).unwrap()
    }

    fn stabilizer(g: &PermGroup, p: usize) -> PermGroup {
        let fixers: Vec<Permutation> = g.elements().unwrap().iter().filter(|x| x.apply(p) == p).cloned().collect();
        g.subgroup_from_elements(fixers).unwrap()
    }

    #[test]
    fn integrality_on_small_tables() {
        for g in [PermGroup::symmetric(3), PermGroup::cyclic(3), PermGroup::alternating(5)] {
            let r = integrality_report(&character_table(&g).unwrap()).unwrap();
            assert!(r.values_integral && r.central_values_integral);
        }
    }

    #[test]
    fn a5_golden_ratio_entries() {
        let ct = character_table(&PermGroup::alternating(5)).unwrap();
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        let hits = ct.rows.iter().flatten().filter(|z| (z.re - phi).abs() < 1e-9 && z.im.abs() < 1e-9).count();
        assert!(hits >= 2);
    }

    #[test]
    fn witnesses() {
        let s4 = PermGroup::symmetric(4);
        let ct = character_table(&s4).unwrap();
        let w = burnside_witness(&ct).unwrap().unwrap();
        assert_eq!(ct.classes.sizes[w.class], 3);
        assert!(PermGroup::klein().is_subset_of(&w.normal_subgroup).unwrap());
        let a5 = character_table(&PermGroup::alternating(5)).unwrap();
        assert!(burnside_witness(&a5).unwrap().is_none());
        let q8 = character_table(&PermGroup::quaternion()).unwrap();
        let w = burnside_witness(&q8).unwrap().unwrap();
        assert_eq!(q8.classes.sizes[w.class], 1);
    }

    #[test]
    fn burnside_solvable_groups() {
        assert!(burnside_solvable(&PermGroup::symmetric(4)).unwrap());
        assert!(burnside_solvable(&PermGroup::dihedral(8)).unwrap());
        let sl23 = realize(&MatrixGroupSpec { kind: MatrixKind::SL, n: 2, q: 3 }).unwrap();
        assert!(burnside_solvable(&sl23).unwrap());
        assert_eq!(burnside_solvable(&PermGroup::alternating(5)).unwrap_err(), FinisError::NotPQOrder);
    }

    #[test]
    fn extension_of_class_functions() {
        let g = agl(5);
        let h = stabilizer(&g, 0);
        let hc = conjugacy_classes(&h).unwrap();
        let one = ClassFunction::constant(&hc, 1.0);
        let ext = extend_class_function(&g, &h, &one).unwrap();
        assert!(ext.approx_eq(&ClassFunction::constant(&conjugacy_classes(&g).unwrap(), 1.0), 1e-12));
        let ct_h = character_table(&h).unwrap();
        for chi in ct_h.characters() {
            let e = extend_class_function(&g, &h, &chi).unwrap();
            assert!((inner_product(&g, &e, &e).unwrap() - C64::new(1.0, 0.0)).norm() < 1e-9);
        }
    }

    #[test]
    fn kernels_via_characters() {
        for (g, order) in [(agl(5), 5), (agl(7), 7), (PermGroup::symmetric(3), 3)] {
            let h = stabilizer(&g, 0);
            assert_eq!(frobenius_kernel_via_characters(&g, &h).unwrap().order().unwrap(), order);
        }
    }

    #[test]
    fn simplicity() {
        let ct = character_table(&PermGroup::cyclic(5)).unwrap();
        assert!(simplicity_by_characters(&ct).unwrap());
        let ct = character_table(&PermGroup::alternating(4)).unwrap();
        assert!(!simplicity_by_characters(&ct).unwrap());
        let psl = realize(&MatrixGroupSpec { kind: MatrixKind::PSL, n: 2, q: 7 }).unwrap();
        assert!(simplicity_by_characters(&character_table(&psl).unwrap()).unwrap());
    }

    #[test]
    fn tensor_with_linear_character_in_a4() {
        let ct = character_table(&PermGroup::alternating(4)).unwrap();
        let chi4 = ct.character(3);
        let prod = chi4.mul(&ct.character(1)).unwrap();
        assert!(prod.approx_eq(&chi4, 1e-9));
    }
}
