use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use serde::Serialize;

use crate::arith::prime_power;
use crate::error::{FinisError, Result};
use crate::ffgroups::FiniteField;
use crate::perm::{default_cap, PermGroup, Permutation};

/// Square matrix over a finite field, row-major field indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    pub n: usize,
    pub entries: Vec<usize>,
}

impl Matrix {
    pub fn identity(n: usize) -> Self {
        let mut entries = vec![0; n * n];
        for i in 0..n {
            entries[i * n + i] = 1;
        }
        Matrix { n, entries }
    }

    pub fn from_rows(rows: &[Vec<usize>]) -> Self {
        let n = rows.len();
        Matrix {
            n,
            entries: rows.iter().flatten().copied().collect(),
        }
    }

    /// Rows of integers reduced into the prime field.
    pub fn from_int_rows(field: &FiniteField, rows: &[Vec<i64>]) -> Self {
        let n = rows.len();
        Matrix {
            n,
            entries: rows.iter().flatten().map(|&k| field.from_int(k)).collect(),
        }
    }

    pub fn get(&self, i: usize, j: usize) -> usize {
        self.entries[i * self.n + j]
    }

    fn set(&mut self, i: usize, j: usize, v: usize) {
        self.entries[i * self.n + j] = v;
    }

    /// `I + a·E_ij`.
    pub fn transvection(n: usize, i: usize, j: usize, a: usize) -> Self {
        let mut m = Matrix::identity(n);
        m.set(i, j, a);
        m
    }

    /// Identity except `a` at position `(i, i)`.
    pub fn diagonal_unit(n: usize, i: usize, a: usize) -> Self {
        let mut m = Matrix::identity(n);
        m.set(i, i, a);
        m
    }

    pub fn apply(&self, field: &FiniteField, v: &[usize]) -> Vec<usize> {
        (0..self.n)
            .map(|i| {
                (0..self.n).fold(0, |acc, j| field.add(acc, field.mul(self.get(i, j), v[j])))
            })
            .collect()
    }

    pub fn mul(&self, field: &FiniteField, other: &Matrix) -> Matrix {
        let n = self.n;
        let mut out = Matrix { n, entries: vec![0; n * n] };
        for i in 0..n {
            for j in 0..n {
                let mut acc = 0;
                for k in 0..n {
                    acc = field.add(acc, field.mul(self.get(i, k), other.get(k, j)));
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    pub fn determinant(&self, field: &FiniteField) -> usize {
        let n = self.n;
        let mut a = self.entries.clone();
        let mut det = 1;
        for c in 0..n {
            let Some(piv) = (c..n).find(|&r| a[r * n + c] != 0) else {
                return 0;
            };
            if piv != c {
                for k in 0..n {
                    a.swap(c * n + k, piv * n + k);
                }
                det = field.neg(det);
            }
            let pv = a[c * n + c];
            det = field.mul(det, pv);
            let pinv = field.inv(pv).expect("nonzero pivot");
            for r in c + 1..n {
                let factor = field.mul(a[r * n + c], pinv);
                if factor == 0 {
                    continue;
                }
                for k in c..n {
                    let sub = field.mul(factor, a[c * n + k]);
                    a[r * n + k] = field.sub(a[r * n + k], sub);
                }
            }
        }
        det
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.n {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.n {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
        }
        write!(f, "]")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum MatrixKind {
    GL,
    SL,
    PSL,
    /// Upper unitriangular matrices.
    B1,
    /// Upper triangular invertible matrices.
    Borel,
    AGL1,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct MatrixGroupSpec {
    pub kind: MatrixKind,
    pub n: usize,
    pub q: u64,
}

impl fmt::Display for MatrixGroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.kind {
            MatrixKind::GL => "GL",
            MatrixKind::SL => "SL",
            MatrixKind::PSL => "PSL",
            MatrixKind::B1 => "B1",
            MatrixKind::Borel => "Borel",
            MatrixKind::AGL1 => "AGL",
        };
        write!(f, "{name}({},{})", self.n, self.q)
    }
}

/// `q^{n(n−1)/2} ∏_{i=1..n} (qⁱ − 1)`.
pub fn order_formula_gl(n: u32, q: u64) -> Result<BigUint> {
    if prime_power(q).is_none() {
        return Err(FinisError::NotAPrimePower(q));
    }
    let qb = BigUint::from(q);
    let mut acc = qb.pow(n * n.saturating_sub(1) / 2);
    for i in 1..=n {
        acc *= qb.pow(i) - BigUint::one();
    }
    Ok(acc)
}

/// Theoretical order of the realized group.
pub fn theoretical_order(spec: &MatrixGroupSpec) -> Result<BigUint> {
    let n = spec.n as u32;
    let q = spec.q;
    let gl = order_formula_gl(n, q)?;
    let qm1 = BigUint::from(q - 1);
    Ok(match spec.kind {
        MatrixKind::GL => gl,
        MatrixKind::SL => gl / qm1,
        MatrixKind::PSL => gl / qm1 / BigUint::from(num_integer::gcd(2, q - 1)),
        MatrixKind::B1 => BigUint::from(q).pow(n * (n - 1) / 2),
        MatrixKind::Borel => BigUint::from(q).pow(n * (n - 1) / 2) * qm1.pow(n),
        MatrixKind::AGL1 => BigUint::from(q) * qm1,
    })
}

/// Rank of a vector in lexicographic order, first coordinate most
/// significant.
fn vector_rank(v: &[usize], q: usize) -> usize {
    v.iter().fold(0, |acc, &x| acc * q + x)
}

fn vector_of_rank(mut r: usize, n: usize, q: usize) -> Vec<usize> {
    let mut v = vec![0; n];
    for i in (0..n).rev() {
        v[i] = r % q;
        r /= q;
    }
    v
}

fn check_size(points: usize, order: &BigUint, cap: usize) -> Result<()> {
    let fits = order.to_usize().is_some_and(|o| o <= cap);
    if points > cap || !fits {
        return Err(FinisError::TooLarge(format!(
            "needs {points} points and order {order}, cap is {cap}"
        )));
    }
    Ok(())
}

/// The group generated by `gens` acting on the `qⁿ − 1` nonzero column
/// vectors, point `r − 1` being the vector of lexicographic rank `r`.
pub fn matrix_group(field: &FiniteField, n: usize, gens: &[Matrix]) -> Result<PermGroup> {
    let q = field.order();
    let points = q.pow(n as u32) - 1;
    let mut perms = Vec::new();
    for m in gens {
        if m.n != n || m.determinant(field) == 0 {
            return Err(FinisError::BadInput(format!("{m} is not an invertible {n}x{n} matrix")));
        }
        let img: Vec<usize> = (1..=points)
            .map(|r| vector_rank(&m.apply(field, &vector_of_rank(r, n, q)), q) - 1)
            .collect();
        perms.push(Permutation::from_images(img)?);
    }
    PermGroup::new(points, perms)
}

/// `v ↦ Mv + b` on all `qⁿ` vectors: the given linear parts together with
/// every translation by a basis multiple `xᵏ eᵢ`.
pub fn affine_group(field: &FiniteField, n: usize, linear: &[Matrix]) -> Result<PermGroup> {
    let q = field.order();
    let points = q.pow(n as u32);
    let mut perms = Vec::new();
    for m in linear {
        if m.n != n || m.determinant(field) == 0 {
            return Err(FinisError::BadInput(format!("{m} is not an invertible {n}x{n} matrix")));
        }
        let img: Vec<usize> = (0..points)
            .map(|r| vector_rank(&m.apply(field, &vector_of_rank(r, n, q)), q))
            .collect();
        perms.push(Permutation::from_images(img)?);
    }
    for i in 0..n {
        for b in field.basis() {
            let img: Vec<usize> = (0..points)
                .map(|r| {
                    let mut v = vector_of_rank(r, n, q);
                    v[i] = field.add(v[i], b);
                    vector_rank(&v, q)
                })
                .collect();
            perms.push(Permutation::from_images(img)?);
        }
    }
    PermGroup::new(points, perms)
}

fn sl_generators(field: &FiniteField, n: usize) -> Vec<Matrix> {
    let mut gens = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                for &b in &field.basis() {
                    gens.push(Matrix::transvection(n, i, j, b));
                }
            }
        }
    }
    gens
}

fn upper_transvections(field: &FiniteField, n: usize) -> Vec<Matrix> {
    let mut gens = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for &b in &field.basis() {
                gens.push(Matrix::transvection(n, i, j, b));
            }
        }
    }
    gens
}

/// Matrix generators used for each kind (linear part only for AGL1).
pub fn generators(spec: &MatrixGroupSpec, field: &FiniteField) -> Vec<Matrix> {
    let n = spec.n;
    let w = field.primitive();
    match spec.kind {
        MatrixKind::GL => {
            let mut g = vec![Matrix::diagonal_unit(n, 0, w)];
            g.extend(sl_generators(field, n));
            g
        }
        MatrixKind::SL | MatrixKind::PSL => sl_generators(field, n),
        MatrixKind::B1 => upper_transvections(field, n),
        MatrixKind::Borel => {
            let mut g: Vec<Matrix> = (0..n).map(|i| Matrix::diagonal_unit(n, i, w)).collect();
            g.extend(upper_transvections(field, n));
            g
        }
        MatrixKind::AGL1 => vec![Matrix::diagonal_unit(1, 0, w)],
    }
}

/// Faithful permutation realization; the enumerated order is checked
/// against the closed formula.
pub fn realize(spec: &MatrixGroupSpec) -> Result<PermGroup> {
    realize_with_cap(spec, default_cap())
}

pub fn realize_with_cap(spec: &MatrixGroupSpec, cap: usize) -> Result<PermGroup> {
    if spec.n == 0 {
        return Err(FinisError::UnsupportedSpec(format!("{spec}: dimension 0")));
    }
    if spec.kind == MatrixKind::PSL && spec.n != 2 {
        return Err(FinisError::UnsupportedSpec(format!("{spec}: only PSL(2,q) is supported")));
    }
    if spec.kind == MatrixKind::AGL1 && spec.n != 1 {
        return Err(FinisError::UnsupportedSpec(format!("{spec}: only AGL(1,q) is supported")));
    }
    let field = FiniteField::new(spec.q)?;
    let order = theoretical_order(spec)?;
    let q = field.order();
    let gens = generators(spec, &field);
    let g = match spec.kind {
        MatrixKind::PSL => {
            check_size(q + 1, &order, cap)?;
            psl2_action(&field, &gens)?
        }
        MatrixKind::AGL1 => {
            check_size(q, &order, cap)?;
            affine_group(&field, 1, &gens)?
        }
        _ => {
            check_size(q.pow(spec.n as u32) - 1, &order, cap)?;
            matrix_group(&field, spec.n, &gens)?
        }
    }
    .with_cap(cap);
    let got = g.order()?;
    if BigUint::from(got) != order {
        return Err(FinisError::inconsistency(format!(
            "{spec} enumerated to order {got}, expected {order}"
        )));
    }
    Ok(g)
}

/// Action on the `q + 1` points of the projective line, each point a
/// vector whose first nonzero coordinate is 1.
fn psl2_action(field: &FiniteField, gens: &[Matrix]) -> Result<PermGroup> {
    let q = field.order();
    let mut points: Vec<Vec<usize>> = (0..q).map(|a| vec![1, a]).collect();
    points.push(vec![0, 1]);
    let index = |v: &[usize]| -> usize {
        if v[0] == 0 {
            q
        } else {
            let inv = field.inv(v[0]).expect("nonzero");
            field.mul(v[1], inv)
        }
    };
    let mut perms = Vec::new();
    for m in gens {
        let img: Vec<usize> = points.iter().map(|v| index(&m.apply(field, v))).collect();
        perms.push(Permutation::from_images(img)?);
    }
    PermGroup::new(q + 1, perms)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(kind: MatrixKind, n: usize, q: u64) -> MatrixGroupSpec {
        MatrixGroupSpec { kind, n, q }
    }

    #[test]
    fn gl_order_formula() {
        assert_eq!(order_formula_gl(1, 5).unwrap(), BigUint::from(4u32));
        assert_eq!(order_formula_gl(2, 3).unwrap(), BigUint::from(48u32));
        assert_eq!(order_formula_gl(3, 2).unwrap(), BigUint::from(168u32));
        assert_eq!(order_formula_gl(2, 6).unwrap_err(), FinisError::NotAPrimePower(6));
    }

    #[test]
    fn realized_orders() {
        for (s, o) in [
            (spec(MatrixKind::GL, 1, 5), 4),
            (spec(MatrixKind::GL, 2, 2), 6),
            (spec(MatrixKind::GL, 2, 3), 48),
            (spec(MatrixKind::GL, 3, 2), 168),
            (spec(MatrixKind::GL, 2, 4), 180),
            (spec(MatrixKind::SL, 2, 3), 24),
            (spec(MatrixKind::PSL, 2, 5), 60),
            (spec(MatrixKind::PSL, 2, 7), 168),
            (spec(MatrixKind::PSL, 2, 9), 360),
            (spec(MatrixKind::B1, 3, 3), 27),
            (spec(MatrixKind::Borel, 3, 2), 8),
            (spec(MatrixKind::AGL1, 1, 5), 20),
            (spec(MatrixKind::AGL1, 1, 8), 56),
        ] {
            assert_eq!(realize(&s).unwrap().order().unwrap(), o, "{s}");
        }
    }

    #[test]
    fn unsupported_and_oversized() {
        assert!(matches!(
            realize(&spec(MatrixKind::PSL, 3, 2)),
            Err(FinisError::UnsupportedSpec(_))
        ));
        assert!(matches!(
            realize_with_cap(&spec(MatrixKind::GL, 3, 3), 1000),
            Err(FinisError::TooLarge(_))
        ));
    }

    #[test]
    fn determinant_over_f9() {
        let k = FiniteField::new(9).unwrap();
        let m = Matrix::from_rows(&[vec![1, 3], vec![3, 1]]);
        // 1 - x² = 1 - (-1) = 2 with x² = -1
        assert_eq!(m.determinant(&k), 2);
    }
}
