use crate::arith::prime_power;
use crate::error::{FinisError, Result};

pub const MAX_Q: u64 = 49;
pub const MAX_F: u32 = 4;

/// `F_q` with `q = pᶠ`, elements indexed `0..q` by `Σ cᵢ pⁱ` over the
/// coefficients of `F_p[x]/(modulus)`. Index 0 is zero, index 1 is one.
#[derive(Debug, Clone)]
pub struct FiniteField {
    p: u64,
    f: u32,
    q: usize,
    /// Monic modulus coefficients, constant term first, leading 1 last.
    modulus: Vec<u64>,
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    inv: Vec<u32>,
    primitive: usize,
}

fn digits(mut k: u64, p: u64, f: u32) -> Vec<u64> {
    (0..f)
        .map(|_| {
            let d = k % p;
            k /= p;
            d
        })
        .collect()
}

fn undigits(c: &[u64], p: u64) -> usize {
    c.iter().rev().fold(0u64, |acc, &d| acc * p + d) as usize
}

/// Remainder of `a` modulo a monic `m` over `F_p` (constant term first).
fn poly_rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = *r.last().expect("nonempty");
        let shift = r.len() - 1 - dm;
        if lead != 0 {
            for (i, &c) in m.iter().enumerate() {
                r[shift + i] = (r[shift + i] + p - lead * c % p) % p;
            }
        }
        r.pop();
    }
    r
}

fn is_irreducible(m: &[u64], p: u64) -> bool {
    let f = m.len() as u32 - 1;
    for d in 1..=f / 2 {
        for k in 0..p.pow(d) {
            let mut div = digits(k, p, d);
            div.push(1);
            if poly_rem(m, &div, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

impl FiniteField {
    pub fn new(q: u64) -> Result<Self> {
        let (p, f) = prime_power(q).ok_or(FinisError::NotAPrimePower(q))?;
        if q > MAX_Q || f > MAX_F {
            return Err(FinisError::TooLarge(format!(
                "field size {q} outside q <= {MAX_Q}, f <= {MAX_F}"
            )));
        }
        let modulus = if f == 1 {
            vec![0, 1]
        } else {
            (0..p.pow(f))
                .map(|k| {
                    let mut m = digits(k, p, f);
                    m.push(1);
                    m
                })
                .find(|m| is_irreducible(m, p))
                .expect("irreducible polynomials exist in every degree")
        };
        let qn = q as usize;
        let mut add = vec![0u32; qn * qn];
        let mut mul = vec![0u32; qn * qn];
        for a in 0..qn {
            let ca = digits(a as u64, p, f);
            for b in 0..qn {
                let cb = digits(b as u64, p, f);
                let sum: Vec<u64> = ca.iter().zip(&cb).map(|(x, y)| (x + y) % p).collect();
                add[a * qn + b] = undigits(&sum, p) as u32;
                let mut prod = vec![0u64; 2 * f as usize - 1];
                for (i, x) in ca.iter().enumerate() {
                    for (j, y) in cb.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                let r = if f == 1 { vec![prod[0]] } else { poly_rem(&prod, &modulus, p) };
                let mut r = r;
                r.resize(f as usize, 0);
                mul[a * qn + b] = undigits(&r, p) as u32;
            }
        }
        let neg = (0..qn)
            .map(|a| (0..qn).find(|&b| add[a * qn + b] == 0).expect("negative") as u32)
            .collect();
        let inv = (0..qn)
            .map(|a| {
                if a == 0 {
                    0
                } else {
                    (1..qn).find(|&b| mul[a * qn + b] == 1).expect("inverse") as u32
                }
            })
            .collect();
        let mut field = FiniteField {
            p,
            f,
            q: qn,
            modulus,
            add,
            mul,
            neg,
            inv,
            primitive: 1,
        };
        field.primitive = (1..qn)
            .find(|&a| field.mult_order(a) == qn - 1)
            .expect("cyclic multiplicative group");
        Ok(field)
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.f
    }

    pub fn order(&self) -> usize {
        self.q
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// Smallest-index generator of the multiplicative group.
    pub fn primitive(&self) -> usize {
        self.primitive
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.q + b] as usize
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.q + b] as usize
    }

    #[inline]
    pub fn neg(&self, a: usize) -> usize {
        self.neg[a] as usize
    }

    pub fn inv(&self, a: usize) -> Option<usize> {
        (a != 0).then(|| self.inv[a] as usize)
    }

    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    pub fn pow(&self, a: usize, e: u64) -> usize {
        let mut acc = 1;
        for _ in 0..e {
            acc = self.mul(acc, a);
        }
        acc
    }

    fn mult_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 1 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Image of the integer `k` in the prime field.
    pub fn from_int(&self, k: i64) -> usize {
        k.rem_euclid(self.p as i64) as usize
    }

    /// `xᵏ` for `k < f`: an additive basis of `F_q` over `F_p`.
    pub fn basis(&self) -> Vec<usize> {
        (0..self.f).map(|k| self.p.pow(k) as usize).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_axioms_hold() {
        for q in [2, 3, 4, 5, 7, 8, 9, 16, 25, 27, 49] {
            let k = FiniteField::new(q).unwrap();
            let n = k.order();
            for a in 1..n {
                assert_eq!(k.pow(a, (n - 1) as u64), 1, "q={q} a={a}");
                assert_eq!(k.mul(a, k.inv(a).unwrap()), 1);
            }
            for a in 0..n {
                for b in 0..n {
                    assert_eq!(k.mul(a, b), k.mul(b, a));
                    for c in [0, 1, n - 1] {
                        assert_eq!(k.mul(a, k.add(b, c)), k.add(k.mul(a, b), k.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn rejects_bad_sizes() {
        assert_eq!(FiniteField::new(6).unwrap_err(), FinisError::NotAPrimePower(6));
        assert!(matches!(FiniteField::new(64), Err(FinisError::TooLarge(_))));
    }

    #[test]
    fn modulus_is_first_irreducible() {
        // x² + 1 is irreducible over F_3 and has the smallest index
        assert_eq!(FiniteField::new(9).unwrap().modulus(), &[1, 0, 1]);
        assert_eq!(FiniteField::new(4).unwrap().modulus(), &[1, 1, 1]);
    }
}
