use crate::coh::abgroup::AbElement;
use crate::coh::module::GModule;
use crate::coh::zmod::ZeMat;
use crate::error::{FinisError, Result};

pub const MAX_DEGREE: usize = 3;

/// `f: Gⁿ → A`, stored densely by tuple rank with the first argument most
/// significant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cochain {
    degree: usize,
    group_order: usize,
    values: Vec<AbElement>,
}

impl Cochain {
    pub fn zero(m: &GModule, degree: usize) -> Self {
        let n = m.order();
        Cochain {
            degree,
            group_order: n,
            values: vec![m.ab().zero(); n.pow(degree as u32)],
        }
    }

    /// Builds a cochain from a function of element-index tuples.
    pub fn from_fn(m: &GModule, degree: usize, mut f: impl FnMut(&[usize]) -> AbElement) -> Self {
        let n = m.order();
        let total = n.pow(degree as u32);
        let mut values = Vec::with_capacity(total);
        let mut tuple = vec![0usize; degree];
        for k in 0..total {
            unrank(k, n, &mut tuple);
            values.push(f(&tuple));
        }
        Cochain {
            degree,
            group_order: n,
            values,
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn values(&self) -> &[AbElement] {
        &self.values
    }

    /// Value at a tuple of element indices.
    pub fn at(&self, tuple: &[usize]) -> &AbElement {
        &self.values[rank(tuple, self.group_order)]
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.coords.iter().all(|&c| c == 0))
    }

    pub fn add(&self, m: &GModule, other: &Cochain) -> Cochain {
        Cochain {
            degree: self.degree,
            group_order: self.group_order,
            values: self.values.iter().zip(&other.values).map(|(a, b)| m.ab().add(a, b)).collect(),
        }
    }

    pub fn neg(&self, m: &GModule) -> Cochain {
        Cochain {
            degree: self.degree,
            group_order: self.group_order,
            values: self.values.iter().map(|a| m.ab().neg(a)).collect(),
        }
    }

    /// Flat coordinate vector, tuple-major.
    pub(crate) fn to_flat(&self) -> Vec<u64> {
        self.values.iter().flat_map(|v| v.coords.iter().copied()).collect()
    }

    pub(crate) fn from_flat(m: &GModule, degree: usize, flat: &[u64]) -> Cochain {
        let r = m.ab().rank();
        let n = m.order();
        let values = (0..n.pow(degree as u32))
            .map(|k| {
                let c: Vec<i64> = (0..r).map(|i| flat[k * r + i] as i64).collect();
                m.ab().element(&c)
            })
            .collect();
        Cochain {
            degree,
            group_order: n,
            values,
        }
    }
}

fn rank(tuple: &[usize], n: usize) -> usize {
    tuple.iter().fold(0, |acc, &t| acc * n + t)
}

fn unrank(mut k: usize, n: usize, out: &mut [usize]) {
    for slot in out.iter_mut().rev() {
        *slot = k % n;
        k /= n;
    }
}

/// `df(s₁,…,sₙ₊₁) = s₁f(s₂,…) + Σᵢ (−1)ⁱ f(…,sᵢsᵢ₊₁,…) + (−1)ⁿ⁺¹ f(s₁,…,sₙ)`.
pub fn cobord(m: &GModule, f: &Cochain) -> Result<Cochain> {
    let n = f.degree;
    if n + 1 > MAX_DEGREE {
        return Err(FinisError::DegreeTooHigh(n + 1));
    }
    let out = cobord_unchecked(m, f);
    #[cfg(debug_assertions)]
    if n + 2 <= MAX_DEGREE && m.order().pow(n as u32 + 2) <= 4096 {
        debug_assert!(cobord_unchecked(m, &out).is_zero(), "d∘d ≠ 0");
    }
    Ok(out)
}

fn cobord_unchecked(m: &GModule, f: &Cochain) -> Cochain {
    let n = f.degree;
    let ab = m.ab();
    let t = m.table();
    let mut inner = vec![0usize; n];
    Cochain::from_fn(m, n + 1, |s| {
        let mut acc = m.act_at(s[0], f.at(&s[1..]));
        for i in 1..=n {
            for (k, slot) in inner.iter_mut().enumerate() {
                *slot = match k + 1 {
                    x if x < i => s[k],
                    x if x == i => t.mul(s[k], s[k + 1]),
                    _ => s[k + 1],
                };
            }
            let v = f.at(&inner);
            acc = if i % 2 == 0 { ab.add(&acc, v) } else { ab.add(&acc, &ab.neg(v)) };
        }
        let last = f.at(&s[..n]);
        if (n + 1) % 2 == 0 {
            ab.add(&acc, last)
        } else {
            ab.add(&acc, &ab.neg(last))
        }
    })
}

/// Calls `sink(row, entries)` for every row of the matrix of
/// `d: Cⁿ → Cⁿ⁺¹` on flat coordinates; entries may repeat a column.
pub(crate) fn for_each_differential_row(m: &GModule, n: usize, mut sink: impl FnMut(usize, &[(usize, i64)])) {
    let g = m.order();
    let r = m.ab().rank();
    let t = m.table();
    let mut s = vec![0usize; n + 1];
    let mut inner = vec![0usize; n];
    let mut entries: Vec<(usize, i64)> = Vec::with_capacity(r * (n + 2));
    for k in 0..g.pow(n as u32 + 1) {
        unrank(k, g, &mut s);
        let first = rank(&s[1..], g);
        let act = m.matrix_at(s[0]);
        let mut cols = Vec::with_capacity(n + 1);
        for pos in 1..=n {
            for (q, slot) in inner.iter_mut().enumerate() {
                *slot = match q + 1 {
                    x if x < pos => s[q],
                    x if x == pos => t.mul(s[q], s[q + 1]),
                    _ => s[q + 1],
                };
            }
            cols.push((rank(&inner, g), if pos % 2 == 0 { 1 } else { -1 }));
        }
        cols.push((rank(&s[..n], g), if (n + 1) % 2 == 0 { 1 } else { -1 }));
        for i in 0..r {
            entries.clear();
            for j in 0..r {
                if act[i][j] != 0 {
                    entries.push((first * r + j, act[i][j]));
                }
            }
            for &(c, sign) in &cols {
                entries.push((c * r + i, sign));
            }
            sink(k * r + i, &entries);
        }
    }
}

/// Matrix of `d: Cⁿ → Cⁿ⁺¹` on flat coordinates, entries mod `e`.
pub(crate) fn differential_matrix(m: &GModule, n: usize, e: u64) -> ZeMat {
    let g = m.order();
    let r = m.ab().rank();
    let mut mat = ZeMat::zeros(r * g.pow(n as u32 + 1), r * g.pow(n as u32), e);
    for_each_differential_row(m, n, |row, entries| {
        for &(c, v) in entries {
            mat.add_int(row, c, v);
        }
    });
    mat
}
