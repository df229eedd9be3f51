//! Unsigned Stirling numbers of the first kind and the rising factorial.
//!
//! All arithmetic is arbitrary precision, so there is no overflow ceiling.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Rows `c(m, 0..=m)` for `m = 0..=max_n`, built from
/// `c(m, i) = c(m-1, i-1) + (m-1)·c(m-1, i)`.
#[derive(Debug, Clone)]
pub struct StirlingTable {
    rows: Vec<Vec<BigUint>>,
}

impl StirlingTable {
    pub fn new(max_n: usize) -> Self {
        let mut rows: Vec<Vec<BigUint>> = Vec::with_capacity(max_n + 1);
        rows.push(vec![BigUint::one()]);
        for m in 1..=max_n {
            let prev = &rows[m - 1];
            let mut row = vec![BigUint::zero(); m + 1];
            for i in 1..=m {
                let mut value = prev[i - 1].clone();
                if i < m {
                    value += &prev[i] * BigUint::from(m - 1);
                }
                row[i] = value;
            }
            rows.push(row);
        }
        StirlingTable { rows }
    }

    pub fn max_n(&self) -> usize {
        self.rows.len() - 1
    }

    /// `c(n, 0..=n)`.
    pub fn row(&self, n: usize) -> Option<&[BigUint]> {
        self.rows.get(n).map(Vec::as_slice)
    }

    pub fn get(&self, n: usize, i: usize) -> Option<&BigUint> {
        self.rows.get(n)?.get(i)
    }
}

/// `c(n, i)`: the number of permutations of `[n]` with exactly `i` cycles.
pub fn stirling_cycle(n: usize, i: usize) -> Result<BigUint> {
    if n == 0 {
        return Err(Error::SizeTooSmall { n, min: 1 });
    }
    if i > n {
        return Err(Error::ParameterOutOfRange {
            name: "i",
            value: i,
            range: format!("[0, {n}]"),
        });
    }
    Ok(StirlingTable::new(n).rows[n][i].clone())
}

/// Coefficients of `x(x+1)⋯(x+n-1)`, lowest degree first (length `n + 1`).
///
/// Computed by repeated polynomial multiplication, independently of
/// [`StirlingTable`].
pub fn rising_factorial_coefficients(n: usize) -> Result<Vec<BigUint>> {
    if n == 0 {
        return Err(Error::SizeTooSmall { n, min: 1 });
    }
    let mut poly = vec![BigUint::one()];
    for shift in 0..n {
        // multiply by (x + shift)
        let mut next = vec![BigUint::zero(); poly.len() + 1];
        for (deg, coeff) in poly.iter().enumerate() {
            next[deg + 1] += coeff;
            if shift > 0 {
                next[deg] += coeff * BigUint::from(shift);
            }
        }
        poly = next;
    }
    Ok(poly)
}

pub fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, m| acc * BigUint::from(m))
}

fn check_nk(n: usize, k: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::SizeTooSmall { n, min: 2 });
    }
    if k == 0 || k >= n {
        return Err(Error::ParameterOutOfRange {
            name: "k",
            value: k,
            range: format!("[1, {}]", n - 1),
        });
    }
    Ok(())
}

/// `Σ_i c(n,i)·i·(-k)^(i-1)`, evaluated term by term from the table.
pub fn weighted_cycle_sum(table: &StirlingTable, n: usize, k: usize) -> Result<BigInt> {
    check_nk(n, k)?;
    let row = table.row(n).ok_or(Error::CapExceeded {
        n,
        cap: table.max_n(),
    })?;
    let base = -BigInt::from(k);
    let mut power = BigInt::one();
    let mut total = BigInt::zero();
    for (i, c) in row.iter().enumerate().skip(1) {
        total += BigInt::from(c.clone()) * BigInt::from(i) * &power;
        power *= &base;
    }
    Ok(total)
}

/// `(-1)^k · k! · (n-k-1)!`.
pub fn weighted_cycle_sum_closed_form(n: usize, k: usize) -> Result<BigInt> {
    check_nk(n, k)?;
    let magnitude = BigInt::from(factorial(k) * factorial(n - k - 1));
    Ok(if k % 2 == 0 { magnitude } else { -magnitude })
}

/// `(-1)^(n-k-1) · k! · (n-k-1)!`, the signed size of the labeled domain.
pub fn labeled_signed_sum_closed_form(n: usize, k: usize) -> Result<BigInt> {
    check_nk(n, k)?;
    let magnitude = BigInt::from(factorial(k) * factorial(n - k - 1));
    Ok(if (n - k - 1) % 2 == 0 {
        magnitude
    } else {
        -magnitude
    })
}

/// `(-1)^n · (n-2)!`.
pub fn marked_signed_sum_closed_form(n: usize) -> Result<BigInt> {
    if n < 2 {
        return Err(Error::SizeTooSmall { n, min: 2 });
    }
    let magnitude = BigInt::from(factorial(n - 2));
    Ok(if n % 2 == 0 { magnitude } else { -magnitude })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(values: &[u64]) -> Vec<BigUint> {
        values.iter().map(|&v| BigUint::from(v)).collect()
    }

    #[test]
    fn small_values() {
        for n in 1..=9 {
            assert_eq!(stirling_cycle(n, n).unwrap(), BigUint::one());
            assert_eq!(stirling_cycle(n, 0).unwrap(), BigUint::zero());
        }
        assert_eq!(stirling_cycle(3, 2).unwrap(), BigUint::from(3u32));
        assert_eq!(stirling_cycle(4, 1).unwrap(), BigUint::from(6u32));
        assert!(stirling_cycle(3, 4).is_err());
        assert!(stirling_cycle(0, 0).is_err());
    }

    #[test]
    fn table_rows() {
        let t = StirlingTable::new(5);
        assert_eq!(t.row(4).unwrap(), big(&[0, 6, 11, 6, 1]).as_slice());
        assert_eq!(t.row(5).unwrap(), big(&[0, 24, 50, 35, 10, 1]).as_slice());
    }

    #[test]
    fn rising_factorial_small() {
        assert_eq!(rising_factorial_coefficients(1).unwrap(), big(&[0, 1]));
        assert_eq!(rising_factorial_coefficients(2).unwrap(), big(&[0, 1, 1]));
        assert_eq!(rising_factorial_coefficients(3).unwrap(), big(&[0, 2, 3, 1]));
        assert!(rising_factorial_coefficients(0).is_err());
    }

    #[test]
    fn weighted_sums_small() {
        let t = StirlingTable::new(3);
        assert_eq!(weighted_cycle_sum(&t, 2, 1).unwrap(), BigInt::from(-1));
        assert_eq!(weighted_cycle_sum(&t, 3, 1).unwrap(), BigInt::from(-1));
        assert_eq!(weighted_cycle_sum(&t, 3, 2).unwrap(), BigInt::from(2));
        assert_eq!(weighted_cycle_sum_closed_form(3, 2).unwrap(), BigInt::from(2));
        assert_eq!(weighted_cycle_sum_closed_form(3, 1).unwrap(), BigInt::from(-1));
        assert!(weighted_cycle_sum(&t, 3, 3).is_err());
        assert!(weighted_cycle_sum(&t, 4, 1).is_err());
    }

    #[test]
    fn closed_forms() {
        assert_eq!(marked_signed_sum_closed_form(2).unwrap(), BigInt::from(1));
        assert_eq!(marked_signed_sum_closed_form(3).unwrap(), BigInt::from(-1));
        assert_eq!(marked_signed_sum_closed_form(4).unwrap(), BigInt::from(2));
        assert_eq!(labeled_signed_sum_closed_form(7, 6).unwrap(), BigInt::from(720));
        assert_eq!(labeled_signed_sum_closed_form(3, 1).unwrap(), BigInt::from(-1));
    }
}
