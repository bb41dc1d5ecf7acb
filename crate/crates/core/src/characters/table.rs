use std::cmp::Ordering;
use std::sync::Arc;

use nalgebra::{Complex, DMatrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{FinisError, Result};
use crate::perm::PermGroup;
use crate::structure::{conjugacy_classes, ConjClassTable};

pub type C64 = Complex<f64>;

pub const DEFAULT_SEED: u64 = 0x5EED;
pub const MAX_CLASSES: usize = 64;
const RETRIES: u64 = 8;
/// Orthogonality tolerance.
pub const TOLERANCE: f64 = 1e-8;
const DEGREE_TOLERANCE: f64 = 1e-4;

/// Structure constants of the centre of the group algebra:
/// `a[i][j][k] = #{(u, v) ∈ Cᵢ × Cⱼ : uv = z_k}` for the class
/// representative `z_k`.
#[derive(Debug, Clone)]
pub struct ClassAlgebra {
    pub classes: Arc<ConjClassTable>,
    pub constants: Vec<Vec<Vec<u64>>>,
}

impl ClassAlgebra {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> u64 {
        self.constants[i][j][k]
    }
}

pub fn class_algebra(g: &PermGroup) -> Result<ClassAlgebra> {
    let elems = g.elements()?;
    let classes = conjugacy_classes(g)?;
    let h = classes.len();
    let mut a = vec![vec![vec![0u64; h]; h]; h];
    for (k, z) in classes.representatives.iter().enumerate() {
        for (ui, u) in elems.iter().enumerate() {
            let v = u.inverse().compose(z);
            let vi = g.index_of(&v)?.expect("closed");
            a[classes.class_of_index(ui)][classes.class_of_index(vi)][k] += 1;
        }
    }
    for i in 0..h {
        for j in 0..h {
            let lhs: u64 = (0..h).map(|k| a[i][j][k] * classes.sizes[k] as u64).sum();
            if lhs != (classes.sizes[i] * classes.sizes[j]) as u64 || a[i][j] != a[j][i] {
                return Err(FinisError::inconsistency("class algebra structure constants"));
            }
        }
    }
    Ok(ClassAlgebra { classes, constants: a })
}

/// A class function: one value per conjugacy class of a stated group.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassFunction {
    pub values: Vec<C64>,
    class_sizes: Vec<usize>,
}

impl ClassFunction {
    pub fn new(classes: &ConjClassTable, values: Vec<C64>) -> Result<Self> {
        if values.len() != classes.len() {
            return Err(FinisError::DimensionMismatch);
        }
        Ok(ClassFunction {
            values,
            class_sizes: classes.sizes.clone(),
        })
    }

    pub fn from_real(classes: &ConjClassTable, values: &[f64]) -> Result<Self> {
        Self::new(classes, values.iter().map(|&x| C64::new(x, 0.0)).collect())
    }

    pub fn constant(classes: &ConjClassTable, c: f64) -> Self {
        ClassFunction {
            values: vec![C64::new(c, 0.0); classes.len()],
            class_sizes: classes.sizes.clone(),
        }
    }

    pub fn class_sizes(&self) -> &[usize] {
        &self.class_sizes
    }

    pub fn at(&self, c: usize) -> C64 {
        self.values[c]
    }

    pub fn add(&self, other: &ClassFunction) -> Result<ClassFunction> {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &ClassFunction) -> Result<ClassFunction> {
        self.zip(other, |a, b| a - b)
    }

    pub fn mul(&self, other: &ClassFunction) -> Result<ClassFunction> {
        self.zip(other, |a, b| a * b)
    }

    pub fn scale(&self, s: f64) -> ClassFunction {
        ClassFunction {
            values: self.values.iter().map(|v| v * s).collect(),
            class_sizes: self.class_sizes.clone(),
        }
    }

    fn zip(&self, other: &ClassFunction, f: impl Fn(C64, C64) -> C64) -> Result<ClassFunction> {
        if self.class_sizes != other.class_sizes {
            return Err(FinisError::DimensionMismatch);
        }
        Ok(ClassFunction {
            values: self.values.iter().zip(&other.values).map(|(&a, &b)| f(a, b)).collect(),
            class_sizes: self.class_sizes.clone(),
        })
    }

    pub fn approx_eq(&self, other: &ClassFunction, tol: f64) -> bool {
        self.class_sizes == other.class_sizes
            && self.values.iter().zip(&other.values).all(|(a, b)| (a - b).norm() < tol)
    }
}

/// Class of `x⁻¹` for each class `x`.
pub fn inverse_classes(g: &PermGroup) -> Result<Vec<usize>> {
    let classes = conjugacy_classes(g)?;
    classes
        .representatives
        .iter()
        .map(|r| classes.class_of(g, &r.inverse()))
        .collect()
}

/// `⟨f₁, f₂⟩ = (1/|G|) Σ f₁(s) f₂(s⁻¹)`.
pub fn inner_product(g: &PermGroup, f1: &ClassFunction, f2: &ClassFunction) -> Result<C64> {
    let classes = conjugacy_classes(g)?;
    if f1.class_sizes != classes.sizes || f2.class_sizes != classes.sizes {
        return Err(FinisError::DimensionMismatch);
    }
    let inv = inverse_classes(g)?;
    let n = g.order()? as f64;
    let sum: C64 = (0..classes.len())
        .map(|c| f1.values[c] * f2.values[inv[c]] * classes.sizes[c] as f64)
        .sum();
    Ok(sum / n)
}

pub fn regular_character(g: &PermGroup) -> Result<ClassFunction> {
    let classes = conjugacy_classes(g)?;
    let mut values = vec![C64::new(0.0, 0.0); classes.len()];
    values[0] = C64::new(g.order()? as f64, 0.0);
    ClassFunction::new(&classes, values)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Verification {
    pub row_orth: bool,
    pub col_orth: bool,
    pub degree_divides: bool,
    /// Largest deviation seen in either orthogonality relation.
    pub max_error: f64,
}

#[derive(Debug, Clone)]
pub struct CharacterTable {
    pub group: PermGroup,
    pub classes: Arc<ConjClassTable>,
    /// `rows[i][j] = χᵢ(C_j)`.
    pub rows: Vec<Vec<C64>>,
    pub degrees: Vec<u64>,
    pub inverse_class: Vec<usize>,
    pub verification: Verification,
    /// Seed of the attempt that produced a simple spectrum.
    pub seed: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct CharacterTableSummary {
    pub degrees: Vec<u64>,
    pub rows: Vec<Vec<[f64; 2]>>,
    pub class_sizes: Vec<usize>,
    pub verified: Verification,
}

impl CharacterTable {
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn character(&self, i: usize) -> ClassFunction {
        ClassFunction {
            values: self.rows[i].clone(),
            class_sizes: self.classes.sizes.clone(),
        }
    }

    pub fn characters(&self) -> Vec<ClassFunction> {
        (0..self.len()).map(|i| self.character(i)).collect()
    }

    /// Index of the row equal to `f` within `tol`.
    pub fn find_row(&self, f: &ClassFunction, tol: f64) -> Option<usize> {
        (0..self.len()).find(|&i| self.character(i).approx_eq(f, tol))
    }

    /// Coefficients of `f` against the irreducible characters.
    pub fn decompose(&self, f: &ClassFunction) -> Result<Vec<C64>> {
        self.characters()
            .iter()
            .map(|chi| inner_product(&self.group, f, chi))
            .collect()
    }

    pub fn summary(&self) -> CharacterTableSummary {
        CharacterTableSummary {
            degrees: self.degrees.clone(),
            rows: self
                .rows
                .iter()
                .map(|r| r.iter().map(|z| [clean(z.re), clean(z.im)]).collect())
                .collect(),
            class_sizes: self.classes.sizes.clone(),
            verified: self.verification,
        }
    }

    /// Text table with values rounded for display only.
    pub fn render(&self) -> String {
        let cells: Vec<Vec<String>> = std::iter::once(
            self.classes
                .sizes
                .iter()
                .zip(0..)
                .map(|(s, c)| format!("{s}:o{}", self.classes.element_order(c)))
                .collect(),
        )
        .chain(self.rows.iter().map(|r| r.iter().map(|z| display_value(*z)).collect()))
        .collect();
        let h = self.classes.len();
        let widths: Vec<usize> = (0..h)
            .map(|c| cells.iter().map(|r| r[c].chars().count()).max().unwrap_or(0))
            .collect();
        let mut out = String::new();
        for (i, row) in cells.iter().enumerate() {
            let label = if i == 0 { String::new() } else { format!("X{i}") };
            out.push_str(&format!("{label:<4}"));
            for (c, cell) in row.iter().enumerate() {
                out.push_str(&format!(" {cell:>w$}", w = widths[c]));
            }
            out.push('\n');
        }
        out
    }
}

fn clean(x: f64) -> f64 {
    let r = (x * 1e9).round() / 1e9;
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

/// Nearest value `(a + bi)/d` with small `d`, formatted; falls back to
/// three decimals.
pub fn display_value(z: C64) -> String {
    for d in 1..=12i64 {
        // adding 0.0 turns -0 into 0
        let a = (z.re * d as f64).round() + 0.0;
        let b = (z.im * d as f64).round() + 0.0;
        if (z.re * d as f64 - a).abs() < 1e-6 && (z.im * d as f64 - b).abs() < 1e-6 {
            let frac = |x: f64| {
                if d == 1 {
                    format!("{x}")
                } else {
                    format!("{x}/{d}")
                }
            };
            return match (a == 0.0, b == 0.0) {
                (_, true) => frac(a),
                (true, false) => format!("{}i", frac(b)),
                (false, false) => format!("{}{}{}i", frac(a), if b < 0.0 { "-" } else { "+" }, frac(b.abs())),
            };
        }
    }
    if z.im.abs() < 1e-9 {
        format!("{:.3}", z.re)
    } else {
        format!("{:.3}{:+.3}i", z.re, z.im)
    }
}

pub fn character_table(g: &PermGroup) -> Result<CharacterTable> {
    character_table_seeded(g, DEFAULT_SEED)
}

/// Simultaneous eigenvectors of the class-sum matrices give the central
/// characters `ωᵢ(χ) = |Cᵢ|χ(sᵢ)/χ(1)`; a random real combination is
/// diagonalized, reseeding when two eigenvalues collide.
pub fn character_table_seeded(g: &PermGroup, seed: u64) -> Result<CharacterTable> {
    let classes = conjugacy_classes(g)?;
    let h = classes.len();
    if h > MAX_CLASSES {
        return Err(FinisError::TooManyClasses {
            classes: h,
            limit: MAX_CLASSES,
        });
    }
    let alg = class_algebra(g)?;
    for attempt in 0..=RETRIES {
        let s = seed.wrapping_add(attempt);
        if let Some(omegas) = central_characters(&alg, s)? {
            return assemble(g, &alg, omegas, s);
        }
    }
    Err(FinisError::DegenerateSpectrum)
}

fn central_characters(alg: &ClassAlgebra, seed: u64) -> Result<Option<Vec<Vec<C64>>>> {
    let h = alg.len();
    let sizes = &alg.classes.sizes;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let coeffs: Vec<f64> = (0..h).map(|i| rng.random_range(-1.0..1.0) / sizes[i] as f64).collect();
    // M[j][k] = Σᵢ cᵢ a[i][j][k]; each ω is a right eigenvector
    let m = DMatrix::from_fn(h, h, |j, k| (0..h).map(|i| coeffs[i] * alg.get(i, j, k) as f64).sum::<f64>());
    let eig = m.clone().schur().complex_eigenvalues();
    let scale = eig.iter().map(|z| z.norm()).fold(1.0, f64::max);
    for a in 0..h {
        for b in a + 1..h {
            if (eig[a] - eig[b]).norm() < 1e-6 * scale {
                return Ok(None);
            }
        }
    }
    let mc: DMatrix<C64> = m.map(|x| C64::new(x, 0.0));
    let mut out = Vec::with_capacity(h);
    for lambda in eig.iter() {
        let shifted = &mc - DMatrix::<C64>::identity(h, h) * *lambda;
        let svd = shifted.svd(false, true);
        let vt = svd.v_t.expect("requested");
        let (idx, _) = svd
            .singular_values
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.partial_cmp(b.1).unwrap_or(Ordering::Equal))
            .expect("nonempty");
        let v: Vec<C64> = vt.row(idx).iter().map(|z| z.conj()).collect();
        if v[0].norm() < 1e-12 {
            return Err(FinisError::ToleranceExceeded("eigenvector vanishes on the identity class".into()));
        }
        let v0 = v[0];
        out.push(v.into_iter().map(|z| z / v0).collect());
    }
    Ok(Some(out))
}

fn assemble(g: &PermGroup, alg: &ClassAlgebra, omegas: Vec<Vec<C64>>, seed: u64) -> Result<CharacterTable> {
    let classes = alg.classes.clone();
    let n = g.order()?;
    let sizes = &classes.sizes;
    let mut rows = Vec::with_capacity(omegas.len());
    let mut degrees = Vec::with_capacity(omegas.len());
    for w in &omegas {
        let denom: f64 = w.iter().zip(sizes).map(|(z, &s)| z.norm_sqr() / s as f64).sum();
        let d = (n as f64 / denom).sqrt();
        let dr = d.round();
        if (d - dr).abs() >= DEGREE_TOLERANCE || dr < 1.0 {
            return Err(FinisError::ToleranceExceeded(format!("degree {d} is not near an integer")));
        }
        degrees.push(dr as u64);
        rows.push(w.iter().zip(sizes).map(|(z, &s)| z * dr / s as f64).collect::<Vec<C64>>());
    }
    let mut order: Vec<usize> = (0..rows.len()).collect();
    let is_trivial = |r: &Vec<C64>| r.iter().all(|z| (z - C64::new(1.0, 0.0)).norm() < 1e-6);
    order.sort_by(|&a, &b| {
        is_trivial(&rows[b])
            .cmp(&is_trivial(&rows[a]))
            .then(degrees[a].cmp(&degrees[b]))
            .then_with(|| row_key(&rows[a]).cmp(&row_key(&rows[b])))
    });
    let rows: Vec<Vec<C64>> = order.iter().map(|&i| rows[i].clone()).collect();
    let degrees: Vec<u64> = order.iter().map(|&i| degrees[i]).collect();
    let inverse_class = inverse_classes(g)?;
    let verification = verify(n, sizes, &rows, &degrees, &inverse_class);
    let ct = CharacterTable {
        group: g.clone(),
        classes,
        rows,
        degrees,
        inverse_class,
        verification,
        seed,
    };
    if !is_trivial(&ct.rows[0]) {
        return Err(FinisError::inconsistency("no trivial character"));
    }
    if !(verification.row_orth && verification.col_orth) {
        return Err(FinisError::ToleranceExceeded(format!(
            "orthogonality error {:e}",
            verification.max_error
        )));
    }
    let square_sum: u64 = ct.degrees.iter().map(|d| d * d).sum();
    if square_sum != n as u64 || !verification.degree_divides {
        return Err(FinisError::inconsistency(format!(
            "degrees {:?} do not fit |G| = {n}",
            ct.degrees
        )));
    }
    Ok(ct)
}

fn row_key(r: &[C64]) -> Vec<(i64, i64)> {
    r.iter()
        .map(|z| ((z.re * 1e6).round() as i64, (z.im * 1e6).round() as i64))
        .collect()
}

fn verify(n: usize, sizes: &[usize], rows: &[Vec<C64>], degrees: &[u64], inv: &[usize]) -> Verification {
    let h = rows.len();
    let mut row_err: f64 = 0.0;
    for a in 0..h {
        for b in 0..h {
            let ip: C64 = (0..h).map(|c| rows[a][c] * rows[b][inv[c]] * sizes[c] as f64).sum::<C64>() / n as f64;
            let want = if a == b { 1.0 } else { 0.0 };
            row_err = row_err.max((ip - C64::new(want, 0.0)).norm());
        }
    }
    let mut col_err: f64 = 0.0;
    for j in 0..h {
        for k in 0..h {
            let s: C64 = (0..h).map(|i| rows[i][j] * rows[i][k].conj()).sum();
            let want = if j == k { n as f64 / sizes[j] as f64 } else { 0.0 };
            col_err = col_err.max((s - C64::new(want, 0.0)).norm() / want.max(1.0));
        }
    }
    Verification {
        row_orth: row_err < TOLERANCE,
        col_orth: col_err < TOLERANCE,
        degree_divides: degrees.iter().all(|&d| n as u64 % d == 0),
        max_error: row_err.max(col_err),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn real_rows(ct: &CharacterTable) -> Vec<Vec<i64>> {
        ct.rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|z| {
                        assert!(z.im.abs() < 1e-8);
                        z.re.round() as i64
                    })
                    .collect()
            })
            .collect()
    }

    #[test]
    fn s3_structure_constants() {
        let g = PermGroup::symmetric(3);
        let a = class_algebra(&g).unwrap();
        assert_eq!(a.classes.sizes, vec![1, 2, 3]);
        // transpositions squared: three ways to hit the identity
        assert_eq!(a.get(2, 2, 0), 3);
        for j in 0..3 {
            for k in 0..3 {
                assert_eq!(a.get(0, j, k), (j == k) as u64);
            }
        }
    }

    #[test]
    fn abelian_structure_constants_are_deltas() {
        let g = PermGroup::cyclic(5);
        let a = class_algebra(&g).unwrap();
        for i in 0..5 {
            for j in 0..5 {
                assert_eq!((0..5).map(|k| a.get(i, j, k)).sum::<u64>(), 1);
            }
        }
    }

    #[test]
    fn s3_table() {
        let ct = character_table(&PermGroup::symmetric(3)).unwrap();
        // classes ordered 1, 3-cycles, transpositions
        assert_eq!(real_rows(&ct), vec![vec![1, 1, 1], vec![1, 1, -1], vec![2, -1, 0]]);
    }

    #[test]
    fn a4_and_s4_degrees() {
        let a4 = character_table(&PermGroup::alternating(4)).unwrap();
        assert_eq!(a4.degrees, vec![1, 1, 1, 3]);
        let s4 = character_table(&PermGroup::symmetric(4)).unwrap();
        assert_eq!(s4.degrees, vec![1, 1, 2, 3, 3]);
    }

    #[test]
    fn regular_character_decomposes() {
        let g = PermGroup::symmetric(3);
        let ct = character_table(&g).unwrap();
        let r = regular_character(&g).unwrap();
        let coeffs = ct.decompose(&r).unwrap();
        for (c, d) in coeffs.iter().zip(&ct.degrees) {
            assert!((c - C64::new(*d as f64, 0.0)).norm() < 1e-9);
        }
    }

    #[test]
    fn mismatched_functions_rejected() {
        let g = PermGroup::symmetric(3);
        let other = conjugacy_classes(&PermGroup::cyclic(4)).unwrap();
        let f = ClassFunction::constant(&other, 1.0);
        let one = ClassFunction::constant(&conjugacy_classes(&g).unwrap(), 1.0);
        assert_eq!(inner_product(&g, &f, &one).unwrap_err(), FinisError::DimensionMismatch);
        assert!((inner_product(&g, &one, &one).unwrap() - C64::new(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn display_snaps_small_fractions() {
        assert_eq!(display_value(C64::new(-1.0, 0.0)), "-1");
        assert_eq!(display_value(C64::new(-0.5, 0.8660254037844386)), "-0.500+0.866i");
        assert_eq!(display_value(C64::new(0.5, 1.5)), "1/2+3/2i");
    }
}
