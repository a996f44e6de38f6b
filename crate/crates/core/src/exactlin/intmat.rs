use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Dense matrix of arbitrary-precision integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.as_ref().len(), cols, "ragged rows");
            data.extend(r.as_ref().iter().map(|&x| BigInt::from(x)));
        }
        IntegerMatrix {
            rows: rows.len(),
            cols,
            data,
        }
    }

    pub fn from_big_rows(rows: Vec<Vec<BigInt>>, cols: usize) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend(r);
        }
        IntegerMatrix {
            rows: n,
            cols,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    /// Rank over the rationals, which is also the rank of the subgroup of
    /// `Z^cols` generated by the rows.
    ///
    /// Fraction-free (Bareiss) elimination: after each pivot step every
    /// remaining entry is a minor of the input, so the division by the
    /// previous pivot is exact and no rationals appear.
    pub fn rank(&self) -> usize {
        let (rows, cols) = (self.rows, self.cols);
        let mut a = self.data.clone();
        let mut prev = BigInt::one();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(piv) = (r..rows).find(|&i| !a[i * cols + c].is_zero()) else {
                continue;
            };
            if piv != r {
                for j in 0..cols {
                    a.swap(piv * cols + j, r * cols + j);
                }
            }
            let pivot = a[r * cols + c].clone();
            for i in r + 1..rows {
                let lead = a[i * cols + c].clone();
                for j in c + 1..cols {
                    let v = &pivot * &a[i * cols + j] - &lead * &a[r * cols + j];
                    debug_assert!((&v % &prev).is_zero(), "Bareiss division must be exact");
                    a[i * cols + j] = v / &prev;
                }
                a[i * cols + c] = BigInt::zero();
            }
            prev = pivot;
            r += 1;
        }
        r
    }
}

/// Rank of the subgroup generated by integer row vectors.
pub fn rank_int(m: &IntegerMatrix) -> usize {
    m.rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::{Field, Matrix};
    use proptest::prelude::*;

    #[test]
    fn subgroup_rank_examples() {
        // {e1, e2, e1 + e2} and {e1, e1}
        assert_eq!(
            IntegerMatrix::from_rows(&[[1, 0], [0, 1], [1, 1]]).rank(),
            2
        );
        assert_eq!(IntegerMatrix::from_rows(&[[1], [1], [2]]).rank(), 1);
        assert_eq!(IntegerMatrix::from_rows::<[i64; 0]>(&[]).rank(), 0);
        assert_eq!(IntegerMatrix::zeros(3, 0).rank(), 0);
    }

    #[test]
    fn large_entries_stay_exact() {
        let big = 1i64 << 40;
        let m = IntegerMatrix::from_rows(&[
            [big, big + 1, 3],
            [big - 1, big, 5],
            [2 * big - 1, 2 * big + 1, 8],
        ]);
        assert_eq!(m.rank(), 2);
        let m = IntegerMatrix::from_rows(&[
            [big, big + 1, 3],
            [big - 1, big, 5],
            [2 * big - 1, 2 * big + 1, 9],
        ]);
        assert_eq!(m.rank(), 3);
    }

    #[test]
    fn skipped_columns() {
        let m = IntegerMatrix::from_rows(&[[0, 2, 4, 1], [0, 1, 2, 7], [0, 3, 6, 8]]);
        assert_eq!(m.rank(), 2);
    }

    proptest! {
        // Reduction mod p can only lose rank.
        #[test]
        fn integer_rank_dominates_modular_rank(rows in proptest::collection::vec(proptest::collection::vec(0i64..101, 5), 0..6)) {
            let f = Field::new(101).unwrap();
            let im = IntegerMatrix::from_rows(&rows);
            let fm = Matrix::from_rows(f, &rows);
            prop_assert!(fm.rank() <= im.rank());
        }
    }
}
