use std::collections::HashMap;
use std::fmt;

use num_integer::Integer;
use serde::Serialize;

use crate::arith::factorize;
use crate::coh::zmod::{smith, ZeMat};
use crate::error::Result;
use crate::perm::{quotient, PermGroup, Permutation};
use crate::structure::derived_subgroup;

/// `Z/d₁ ⊕ … ⊕ Z/d_r` with `d₁ | d₂ | … | d_r`, all `dᵢ ≥ 2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct FinAbGroup {
    invariant_factors: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct AbElement {
    pub coords: Vec<u64>,
}

impl FinAbGroup {
    pub fn trivial() -> Self {
        FinAbGroup {
            invariant_factors: Vec::new(),
        }
    }

    pub fn cyclic(n: u64) -> Self {
        FinAbGroup::from_cyclic_orders(&[n])
    }

    /// Canonical form of `⊕ Z/mᵢ` for arbitrary orders `mᵢ ≥ 1`.
    pub fn from_cyclic_orders(orders: &[u64]) -> Self {
        Canonical::new(orders).group
    }

    pub fn invariant_factors(&self) -> &[u64] {
        &self.invariant_factors
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors.len()
    }

    pub fn order(&self) -> u64 {
        self.invariant_factors.iter().product()
    }

    pub fn exponent(&self) -> u64 {
        self.invariant_factors.last().copied().unwrap_or(1)
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    pub fn zero(&self) -> AbElement {
        AbElement {
            coords: vec![0; self.rank()],
        }
    }

    pub fn basis(&self) -> Vec<AbElement> {
        (0..self.rank())
            .map(|i| {
                let mut z = self.zero();
                z.coords[i] = 1;
                z
            })
            .collect()
    }

    pub fn element(&self, coords: &[i64]) -> AbElement {
        AbElement {
            coords: coords
                .iter()
                .zip(&self.invariant_factors)
                .map(|(&c, &d)| c.rem_euclid(d as i64) as u64)
                .collect(),
        }
    }

    pub fn add(&self, a: &AbElement, b: &AbElement) -> AbElement {
        AbElement {
            coords: a
                .coords
                .iter()
                .zip(&b.coords)
                .zip(&self.invariant_factors)
                .map(|((x, y), d)| (x + y) % d)
                .collect(),
        }
    }

    pub fn neg(&self, a: &AbElement) -> AbElement {
        AbElement {
            coords: a
                .coords
                .iter()
                .zip(&self.invariant_factors)
                .map(|(x, d)| (d - x) % d)
                .collect(),
        }
    }

    pub fn scale(&self, a: &AbElement, k: i64) -> AbElement {
        AbElement {
            coords: a
                .coords
                .iter()
                .zip(&self.invariant_factors)
                .map(|(&x, &d)| ((x as i128 * k as i128).rem_euclid(d as i128)) as u64)
                .collect(),
        }
    }

    /// Mixed-radix index, first coordinate most significant.
    pub fn index_of(&self, a: &AbElement) -> usize {
        a.coords
            .iter()
            .zip(&self.invariant_factors)
            .fold(0usize, |acc, (&c, &d)| acc * d as usize + c as usize)
    }

    pub fn element_at(&self, mut k: usize) -> AbElement {
        let mut coords = vec![0; self.rank()];
        for (i, &d) in self.invariant_factors.iter().enumerate().rev() {
            coords[i] = (k % d as usize) as u64;
            k /= d as usize;
        }
        AbElement { coords }
    }

    pub fn elements(&self) -> impl Iterator<Item = AbElement> + '_ {
        (0..self.order() as usize).map(|k| self.element_at(k))
    }
}

impl fmt::Display for FinAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.invariant_factors.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.invariant_factors.iter().map(|d| format!("Z/{d}")).collect();
        write!(f, "{}", parts.join(" x "))
    }
}

/// Change of coordinates from `⊕ Z/mᵢ` to invariant-factor form.
#[derive(Debug, Clone)]
pub(crate) struct Canonical {
    pub group: FinAbGroup,
    source: Vec<u64>,
    /// For each invariant factor: its primary pieces as `(pᵃ, source index)`.
    pieces: Vec<Vec<(u64, usize)>>,
}

impl Canonical {
    pub fn new(orders: &[u64]) -> Self {
        let mut by_prime: HashMap<u64, Vec<(u64, usize)>> = HashMap::new();
        for (i, &m) in orders.iter().enumerate() {
            for (p, a) in factorize(m) {
                by_prime.entry(p).or_default().push((p.pow(a), i));
            }
        }
        let r = by_prime.values().map(Vec::len).max().unwrap_or(0);
        let mut pieces = vec![Vec::new(); r];
        let mut primes: Vec<u64> = by_prime.keys().copied().collect();
        primes.sort_unstable();
        for p in primes {
            let mut v = by_prime.remove(&p).expect("present");
            // largest powers go to the last invariant factor
            v.sort_by_key(|&(q, i)| (q, std::cmp::Reverse(i)));
            let off = r - v.len();
            for (k, piece) in v.into_iter().enumerate() {
                pieces[off + k].push(piece);
            }
        }
        let invariant_factors = pieces.iter().map(|ps| ps.iter().map(|(q, _)| q).product()).collect();
        Canonical {
            group: FinAbGroup { invariant_factors },
            source: orders.to_vec(),
            pieces,
        }
    }

    /// Source coordinates to canonical coordinates.
    pub fn to_canonical(&self, y: &[i64]) -> AbElement {
        let coords = self
            .pieces
            .iter()
            .zip(&self.group.invariant_factors)
            .map(|(ps, &d)| {
                // CRT over pairwise coprime prime powers
                let mut acc = 0u128;
                for &(q, i) in ps {
                    let r = y[i].rem_euclid(q as i64) as u128;
                    let rest = (d / q) as u128;
                    let inv = crate::arith::mod_inv((rest % q as u128) as i64, q as i64).unwrap_or(0) as u128;
                    acc = (acc + r * rest % d as u128 * inv) % d as u128;
                }
                acc as u64
            })
            .collect();
        AbElement { coords }
    }

    /// Source coordinates of the `j`-th canonical generator.
    pub fn generator_in_source(&self, j: usize) -> Vec<i64> {
        let mut y = vec![0i64; self.source.len()];
        for &(q, i) in &self.pieces[j] {
            let m = self.source[i];
            let rest = m / q;
            // idempotent: ≡ 1 mod q, ≡ 0 mod m/q
            let inv = crate::arith::mod_inv((rest % q) as i64, q as i64).unwrap_or(0) as u64;
            y[i] = ((y[i] as u64 + rest * inv) % m) as i64;
        }
        y
    }
}

/// Abelianization `G → G/(G,G)` in canonical coordinates.
#[derive(Debug, Clone)]
pub struct Abelianization {
    pub group: FinAbGroup,
    source: PermGroup,
    /// Canonical coordinates of every element of the source, by index.
    images: Vec<AbElement>,
}

impl Abelianization {
    pub fn image(&self, x: &Permutation) -> Result<&AbElement> {
        let i = self
            .source
            .index_of(x)?
            .ok_or(crate::error::FinisError::ElementNotInGroup)?;
        Ok(&self.images[i])
    }

    pub fn source(&self) -> &PermGroup {
        &self.source
    }
}

pub fn abelianize(g: &PermGroup) -> Result<Abelianization> {
    let d = derived_subgroup(g)?;
    let (q, hom) = quotient(g, &d)?;
    let gens: Vec<Permutation> = hom.generator_images().to_vec();
    let k = gens.len();
    let qe = q.elements()?;
    let e = q.exponent()?.max(1);
    // spanning tree of the Cayley graph: word vectors and relations
    let mut word: Vec<Option<Vec<i64>>> = vec![None; qe.len()];
    let id = q.index_of(&q.identity())?.expect("identity");
    word[id] = Some(vec![0; k]);
    let mut queue = std::collections::VecDeque::from([id]);
    let mut relations: Vec<Vec<i64>> = Vec::new();
    while let Some(i) = queue.pop_front() {
        let w = word[i].clone().expect("visited");
        for (j, s) in gens.iter().enumerate() {
            let y = qe[i].compose(s);
            let yi = q.index_of(&y)?.expect("closed");
            let mut wy = w.clone();
            wy[j] += 1;
            match &word[yi] {
                None => {
                    word[yi] = Some(wy);
                    queue.push_back(yi);
                }
                Some(old) => {
                    let rel: Vec<i64> = wy.iter().zip(old).map(|(a, b)| a - b).collect();
                    if rel.iter().any(|&x| x.rem_euclid(e as i64) != 0) {
                        relations.push(rel);
                    }
                }
            }
        }
    }
    let mut rmat = ZeMat::zeros(relations.len() + k, k, e);
    for (i, r) in relations.iter().enumerate() {
        for (j, &x) in r.iter().enumerate() {
            rmat.set_int(i, j, x);
        }
    }
    let s = smith(rmat, false, true);
    let v = s.v.expect("tracked");
    let orders: Vec<u64> = (0..k)
        .map(|i| s.diag.get(i).map_or(e, |&x| if x == 0 { e } else { x.gcd(&e) }))
        .collect();
    let canon = Canonical::new(&orders);
    let qimages: Vec<AbElement> = word
        .iter()
        .map(|w| {
            let w = w.as_ref().expect("connected");
            // row vector times V
            let y: Vec<i64> = (0..k)
                .map(|c| {
                    let acc: i128 = (0..k).map(|r| w[r] as i128 * v.get(r, c) as i128).sum();
                    acc.rem_euclid(orders[c] as i128) as i64
                })
                .collect();
            canon.to_canonical(&y)
        })
        .collect();
    let mut images = Vec::with_capacity(g.order()?);
    for x in g.elements()?.iter() {
        let qx = hom.image(x)?;
        images.push(qimages[q.index_of(qx)?.expect("image in quotient")].clone());
    }
    Ok(Abelianization {
        group: canon.group,
        source: g.clone(),
        images,
    })
}
