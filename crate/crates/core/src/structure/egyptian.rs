use num_integer::Integer;

use crate::error::{FinisError, Result};

/// Largest `h` accepted by [`egyptian_decompositions`].
pub const EGYPTIAN_MAX_H: usize = 7;

/// All nondecreasing `(n₁, …, n_h)` with `Σ 1/nᵢ = 1`, by exhaustive
/// search in exact rational arithmetic.
pub fn egyptian_decompositions(h: usize) -> Result<Vec<Vec<u64>>> {
    if h == 0 || h > EGYPTIAN_MAX_H {
        return Err(FinisError::HTooLarge(h));
    }
    let mut out = Vec::new();
    let mut prefix = Vec::with_capacity(h);
    search(1, 1, h, 1, &mut prefix, &mut out);
    Ok(out)
}

/// Extends `prefix` by `k` terms `>= min` summing to `num/den`.
fn search(num: u128, den: u128, k: usize, min: u128, prefix: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
    if k == 1 {
        if den % num == 0 && den / num >= min {
            prefix.push((den / num) as u64);
            out.push(prefix.clone());
            prefix.pop();
        }
        return;
    }
    // 1/n <= num/den and k/n >= num/den
    let lo = min.max(den.div_ceil(num));
    let hi = (k as u128 * den) / num;
    for n in lo..=hi {
        // num/den - 1/n = (num·n - den) / (den·n)
        let a = num * n - den;
        if a == 0 {
            continue;
        }
        let b = den * n;
        let g = a.gcd(&b);
        prefix.push(n as u64);
        search(a / g, b / g, k - 1, n, prefix, out);
        prefix.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        assert_eq!(egyptian_decompositions(1).unwrap(), vec![vec![1]]);
        assert_eq!(egyptian_decompositions(2).unwrap(), vec![vec![2, 2]]);
        assert_eq!(
            egyptian_decompositions(3).unwrap(),
            vec![vec![2, 3, 6], vec![2, 4, 4], vec![3, 3, 3]]
        );
        assert_eq!(egyptian_decompositions(4).unwrap().len(), 14);
        assert_eq!(egyptian_decompositions(5).unwrap().len(), 147);
        assert_eq!(egyptian_decompositions(8).unwrap_err(), FinisError::HTooLarge(8));
    }
}
