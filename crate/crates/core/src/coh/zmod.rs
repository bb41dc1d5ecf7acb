//! Dense linear algebra over `Z/e`, including a Smith-form reduction with
//! optional transformation tracking.

use num_integer::Integer;

use crate::arith::mod_inv;

/// Dense matrix with entries in `[0, e)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZeMat {
    pub rows: usize,
    pub cols: usize,
    pub e: u64,
    pub data: Vec<u64>,
}

fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = ext_gcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

impl ZeMat {
    pub fn zeros(rows: usize, cols: usize, e: u64) -> Self {
        ZeMat {
            rows,
            cols,
            e,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize, e: u64) -> Self {
        let mut m = ZeMat::zeros(n, n, e);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        let e = self.e;
        self.data[i * self.cols + j] = v % e;
    }

    pub fn set_int(&mut self, i: usize, j: usize, v: i64) {
        let e = self.e as i64;
        self.data[i * self.cols + j] = v.rem_euclid(e) as u64;
    }

    pub fn add_int(&mut self, i: usize, j: usize, v: i64) {
        let cur = self.get(i, j) as i64;
        self.set_int(i, j, cur + v);
    }

    pub fn column(&self, j: usize) -> Vec<u64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn mul_vec(&self, v: &[u64]) -> Vec<u64> {
        let e = self.e as u128;
        (0..self.rows)
            .map(|i| {
                let row = &self.data[i * self.cols..(i + 1) * self.cols];
                (row.iter().zip(v).map(|(&a, &b)| a as u128 * b as u128).sum::<u128>() % e) as u64
            })
            .collect()
    }

    fn row_swap(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for k in 0..self.cols {
            self.data.swap(a * self.cols + k, b * self.cols + k);
        }
    }

    fn col_swap(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for k in 0..self.rows {
            self.data.swap(k * self.cols + a, k * self.cols + b);
        }
    }

    /// `(row_a, row_b) ← (x·a + y·b, z·a + w·b)`.
    fn row_mix(&mut self, a: usize, b: usize, [x, y, z, w]: [u64; 4]) {
        let e = self.e as u128;
        for k in 0..self.cols {
            let ra = self.data[a * self.cols + k] as u128;
            let rb = self.data[b * self.cols + k] as u128;
            self.data[a * self.cols + k] = ((x as u128 * ra + y as u128 * rb) % e) as u64;
            self.data[b * self.cols + k] = ((z as u128 * ra + w as u128 * rb) % e) as u64;
        }
    }

    /// `(col_a, col_b) ← (x·a + y·b, z·a + w·b)`.
    fn col_mix(&mut self, a: usize, b: usize, [x, y, z, w]: [u64; 4]) {
        let e = self.e as u128;
        for k in 0..self.rows {
            let ca = self.data[k * self.cols + a] as u128;
            let cb = self.data[k * self.cols + b] as u128;
            self.data[k * self.cols + a] = ((x as u128 * ca + y as u128 * cb) % e) as u64;
            self.data[k * self.cols + b] = ((z as u128 * ca + w as u128 * cb) % e) as u64;
        }
    }
}

/// Unimodular 2×2 step `[x y; z w]` sending `(p, a)` to `(g, 0)`, together
/// with its inverse, where `g` generates the same ideal of `Z/e` as
/// `(p, a)`.
fn elimination_pair(p: u64, a: u64, e: u64) -> ([u64; 4], [u64; 4]) {
    let ne = |v: i128| v.rem_euclid(e as i128) as u64;
    let gp = p.gcd(&e);
    if a % gp == 0 {
        // p·x ≡ a has a solution; subtract x·(pivot)
        let x = quotient(p, a, e);
        return ([1, 0, ne(-(x as i128)), 1], [1, 0, x, 1]);
    }
    let (g, s, t) = ext_gcd(p as i128, a as i128);
    let (pg, ag) = (p as i128 / g, a as i128 / g);
    // [s t; -a/g p/g] has determinant 1
    let fwd = [ne(s), ne(t), ne(-ag), ne(pg)];
    let inv = [ne(pg), ne(-t), ne(ag), ne(s)];
    (fwd, inv)
}

/// Some `x` with `p·x ≡ a (mod e)`; requires `gcd(p, e) | a`.
pub fn quotient(p: u64, a: u64, e: u64) -> u64 {
    let g = p.gcd(&e);
    debug_assert_eq!(a % g, 0);
    if e / g == 1 {
        return 0;
    }
    let m = (e / g) as i64;
    let inv = mod_inv(((p / g) as i64) % m, m).expect("coprime after division") as u64;
    (((a / g) % e) as u128 * inv as u128 % (e / g) as u128) as u64
}

/// `P · A · Q = D` with `D` diagonal; `u`, `v` hold `P`, `Q` and
/// `u_inv`, `v_inv` their inverses when tracked.
#[derive(Debug, Clone)]
pub struct Smith {
    pub diag: Vec<u64>,
    pub u: Option<ZeMat>,
    pub u_inv: Option<ZeMat>,
    pub v: Option<ZeMat>,
    pub v_inv: Option<ZeMat>,
}

pub fn smith(mut a: ZeMat, track_rows: bool, track_cols: bool) -> Smith {
    let e = a.e;
    let (r, c) = (a.rows, a.cols);
    let mut u = track_rows.then(|| ZeMat::identity(r, e));
    let mut u_inv = track_rows.then(|| ZeMat::identity(r, e));
    let mut v = track_cols.then(|| ZeMat::identity(c, e));
    let mut v_inv = track_cols.then(|| ZeMat::identity(c, e));
    let mut diag = Vec::new();
    for t in 0..r.min(c) {
        // pivot: nonzero entry generating the largest ideal
        let mut best: Option<(u64, usize, usize)> = None;
        for i in t..r {
            for j in t..c {
                let x = a.get(i, j);
                if x != 0 {
                    let g = x.gcd(&e);
                    if best.is_none_or(|(bg, _, _)| g < bg) {
                        best = Some((g, i, j));
                    }
                }
            }
            if best.is_some_and(|(g, _, _)| g == 1) {
                break;
            }
        }
        let Some((_, pi, pj)) = best else { break };
        a.row_swap(t, pi);
        if let Some(m) = u.as_mut() {
            m.row_swap(t, pi);
        }
        if let Some(m) = u_inv.as_mut() {
            m.col_swap(t, pi);
        }
        a.col_swap(t, pj);
        if let Some(m) = v.as_mut() {
            m.col_swap(t, pj);
        }
        if let Some(m) = v_inv.as_mut() {
            m.row_swap(t, pj);
        }
        loop {
            let mut dirty = false;
            for i in t + 1..r {
                let x = a.get(i, t);
                if x == 0 {
                    continue;
                }
                let (fwd, inv) = elimination_pair(a.get(t, t), x, e);
                a.row_mix(t, i, fwd);
                if let Some(m) = u.as_mut() {
                    m.row_mix(t, i, fwd);
                }
                if let Some(m) = u_inv.as_mut() {
                    // U ← F·U, so U⁻¹ ← U⁻¹·F⁻¹: column mix with the transpose layout
                    m.col_mix(t, i, [inv[0], inv[2], inv[1], inv[3]]);
                }
            }
            for j in t + 1..c {
                let x = a.get(t, j);
                if x == 0 {
                    continue;
                }
                dirty = true;
                let (fwd, inv) = elimination_pair(a.get(t, t), x, e);
                a.col_mix(t, j, fwd);
                if let Some(m) = v.as_mut() {
                    m.col_mix(t, j, fwd);
                }
                if let Some(m) = v_inv.as_mut() {
                    m.row_mix(t, j, [inv[0], inv[2], inv[1], inv[3]]);
                }
            }
            if !dirty || (t + 1..r).all(|i| a.get(i, t) == 0) {
                if (t + 1..c).all(|j| a.get(t, j) == 0) {
                    break;
                }
            }
        }
        diag.push(a.get(t, t));
    }
    Smith {
        diag,
        u,
        u_inv,
        v,
        v_inv,
    }
}

/// Row-reduces a stream of rows into an echelon generating set of the
/// same row module.
pub struct RowBasis {
    cols: usize,
    e: u64,
    rows: Vec<Option<Vec<u64>>>,
}

impl RowBasis {
    pub fn new(cols: usize, e: u64) -> Self {
        RowBasis {
            cols,
            e,
            rows: vec![None; cols],
        }
    }

    pub fn insert(&mut self, mut row: Vec<u64>) {
        let e = self.e as u128;
        let mut start = 0;
        loop {
            let Some(c) = (start..self.cols).find(|&j| row[j] != 0) else {
                return;
            };
            match self.rows[c].take() {
                None => {
                    self.rows[c] = Some(row);
                    return;
                }
                Some(mut b) => {
                    let ([x, y, z, w], _) = elimination_pair(b[c], row[c], self.e);
                    for k in c..self.cols {
                        let (bk, rk) = (b[k] as u128, row[k] as u128);
                        b[k] = ((x as u128 * bk + y as u128 * rk) % e) as u64;
                        row[k] = ((z as u128 * bk + w as u128 * rk) % e) as u64;
                    }
                    self.rows[c] = Some(b);
                    start = c;
                }
            }
        }
    }

    pub fn into_matrix(self) -> ZeMat {
        let rows: Vec<Vec<u64>> = self.rows.into_iter().flatten().collect();
        let mut m = ZeMat::zeros(rows.len(), self.cols, self.e);
        for (i, r) in rows.iter().enumerate() {
            m.data[i * self.cols..(i + 1) * self.cols].copy_from_slice(r);
        }
        m
    }
}
