//! Exact rank of sparse rational matrices by column reduction.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::{Error, Result};

pub(crate) type SparseColumn = BTreeMap<usize, BigRational>;

/// Default bound on the bit length of numerators and denominators produced
/// during elimination.
pub(crate) const DEFAULT_ENTRY_BITS: u64 = 4096;

/// Rank of the matrix whose columns are given. Each column is reduced
/// against earlier pivots keyed by their lowest (largest-index) nonzero row.
pub(crate) fn column_rank(columns: Vec<SparseColumn>, max_entry_bits: u64) -> Result<usize> {
    let mut reduced: Vec<SparseColumn> = Vec::new();
    let mut pivot_of_row: HashMap<usize, usize> = HashMap::new();
    for mut col in columns {
        col.retain(|_, v| !v.is_zero());
        while let Some((&low, value)) = col.last_key_value() {
            let Some(&k) = pivot_of_row.get(&low) else {
                pivot_of_row.insert(low, reduced.len());
                reduced.push(col);
                break;
            };
            let pivot = &reduced[k];
            let factor = value / &pivot[&low];
            for (row, entry) in pivot {
                let slot = col.entry(*row).or_insert_with(BigRational::zero);
                *slot -= &factor * entry;
                if slot.is_zero() {
                    col.remove(row);
                } else if exceeds(slot, max_entry_bits) {
                    return Err(Error::Complex(format!(
                        "elimination entry exceeds {max_entry_bits} bits"
                    )));
                }
            }
        }
    }
    Ok(reduced.len())
}

fn exceeds(v: &BigRational, bits: u64) -> bool {
    v.numer().abs().bits() > bits || v.denom().bits() > bits
}

/// Exact determinant of a dense square matrix by fraction-tracking Gaussian
/// elimination.
pub(crate) fn determinant(mut m: Vec<Vec<BigRational>>) -> BigRational {
    let n = m.len();
    let mut det = BigRational::from_integer(BigInt::from(1));
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !m[r][c].is_zero()) else {
            return BigRational::zero();
        };
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        let pivot = m[c][c].clone();
        det *= &pivot;
        let (top, rest) = m.split_at_mut(c + 1);
        let pivot_row = &top[c];
        for row in rest {
            if row[c].is_zero() {
                continue;
            }
            let factor = &row[c] / &pivot;
            for (x, p) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                *x -= &factor * p;
            }
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }

    fn col(entries: &[(usize, i64)]) -> SparseColumn {
        entries.iter().map(|&(r, v)| (r, q(v))).collect()
    }

    #[test]
    fn rank_of_dependent_columns() {
        let cols = vec![
            col(&[(0, 1), (1, 2)]),
            col(&[(0, 2), (1, 4)]),
            col(&[(2, -1)]),
            col(&[]),
        ];
        assert_eq!(column_rank(cols, DEFAULT_ENTRY_BITS).unwrap(), 2);
    }

    #[test]
    fn determinant_signs() {
        let m = vec![vec![q(0), q(1)], vec![q(1), q(0)]];
        assert_eq!(determinant(m), q(-1));
        let m = vec![
            vec![q(2), q(0), q(1)],
            vec![q(1), q(3), q(0)],
            vec![q(0), q(1), q(1)],
        ];
        assert_eq!(determinant(m), q(7));
    }
}
