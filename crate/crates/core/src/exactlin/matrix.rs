use std::fmt;

use rand::Rng;

use super::field::Field;

/// Dense row-major matrix over GF(p).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Rref {
    pub reduced: Matrix,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        Matrix {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1 % field.p();
        }
        m
    }

    /// Builds a matrix from signed integer rows, reducing every entry mod p.
    ///
    /// Panics if the rows are ragged.
    pub fn from_rows<R: AsRef<[i64]>>(field: Field, rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            let r = r.as_ref();
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend(r.iter().map(|&x| field.reduce(x)));
        }
        Matrix {
            field,
            rows: rows.len(),
            cols,
            data,
        }
    }

    pub fn from_fn(
        field: Field,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> u32,
    ) -> Self {
        let mut m = Self::zeros(field, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.data[i * cols + j] = f(i, j) % field.p();
            }
        }
        m
    }

    /// Column vector from canonical entries.
    pub fn column_vector(field: Field, entries: &[u32]) -> Self {
        Self::from_fn(field, entries.len(), 1, |i, _| entries[i])
    }

    pub fn random<R: Rng + ?Sized>(field: Field, rows: usize, cols: usize, rng: &mut R) -> Self {
        let p = field.p();
        Self::from_fn(field, rows, cols, |_, _| rng.gen_range(0..p))
    }

    /// Uniformly random invertible matrix (rejection sampling).
    pub fn random_invertible<R: Rng + ?Sized>(field: Field, n: usize, rng: &mut R) -> Self {
        loop {
            let m = Self::random(field, n, n, rng);
            if m.rank() == n {
                return m;
            }
        }
    }

    #[inline]
    pub fn field(&self) -> Field {
        self.field
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v % self.field.p();
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<u32> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn entries(&self) -> &[u32] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Matrix {
        Self::from_fn(self.field, self.cols, self.rows, |i, j| self.get(j, i))
    }

    pub fn mul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in product");
        debug_assert_eq!(self.field, rhs.field);
        let p = u64::from(self.field.p());
        let mut out = Matrix::zeros(self.field, self.rows, rhs.cols);
        let mut acc = vec![0u64; rhs.cols];
        for i in 0..self.rows {
            acc.iter_mut().for_each(|a| *a = 0);
            for k in 0..self.cols {
                let a = u64::from(self.data[i * self.cols + k]);
                if a == 0 {
                    continue;
                }
                let rrow = &rhs.data[k * rhs.cols..(k + 1) * rhs.cols];
                for (dst, &b) in acc.iter_mut().zip(rrow) {
                    *dst = (*dst + a * u64::from(b)) % p;
                }
            }
            for (j, &a) in acc.iter().enumerate() {
                out.data[i * rhs.cols + j] = a as u32;
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(self.cols, v.len());
        let p = u64::from(self.field.p());
        (0..self.rows)
            .map(|i| {
                self.row(i).iter().zip(v).fold(0u64, |acc, (&a, &b)| {
                    (acc + u64::from(a) * u64::from(b)) % p
                }) as u32
            })
            .collect()
    }

    pub fn add(&self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let f = self.field;
        Matrix {
            field: f,
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(&a, &b)| f.add(a, b))
                .collect(),
        }
    }

    pub fn sub(&self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let f = self.field;
        Matrix {
            field: f,
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(&a, &b)| f.sub(a, b))
                .collect(),
        }
    }

    pub fn scale(&self, c: u32) -> Matrix {
        let f = self.field;
        Matrix {
            field: f,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&a| f.mul(a, c)).collect(),
        }
    }

    /// `self += c * rhs`
    pub fn add_scaled(&mut self, rhs: &Matrix, c: u32) {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        if c == 0 {
            return;
        }
        let f = self.field;
        for (a, &b) in self.data.iter_mut().zip(&rhs.data) {
            *a = f.add(*a, f.mul(b, c));
        }
    }

    pub fn hstack(field: Field, rows: usize, blocks: &[&Matrix]) -> Matrix {
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Matrix::zeros(field, rows, cols);
        let mut off = 0;
        for b in blocks {
            assert_eq!(b.rows, rows, "hstack row mismatch");
            for i in 0..rows {
                for j in 0..b.cols {
                    out.data[i * cols + off + j] = b.get(i, j);
                }
            }
            off += b.cols;
        }
        out
    }

    pub fn vstack(field: Field, cols: usize, blocks: &[&Matrix]) -> Matrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let mut data = Vec::with_capacity(rows * cols);
        for b in blocks {
            assert_eq!(b.cols, cols, "vstack column mismatch");
            data.extend_from_slice(&b.data);
        }
        Matrix {
            field,
            rows,
            cols,
            data,
        }
    }

    pub fn block_diag(field: Field, blocks: &[&Matrix]) -> Matrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Matrix::zeros(field, rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out.data[(r0 + i) * cols + c0 + j] = b.get(i, j);
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    pub fn select_columns(&self, cols: &[usize]) -> Matrix {
        Self::from_fn(self.field, self.rows, cols.len(), |i, j| {
            self.get(i, cols[j])
        })
    }

    pub fn select_rows(&self, rows: &[usize]) -> Matrix {
        Self::from_fn(self.field, rows.len(), self.cols, |i, j| {
            self.get(rows[i], j)
        })
    }

    /// Contiguous sub-block `rows r0..r0+nr`, `cols c0..c0+nc`.
    pub fn block(&self, r0: usize, c0: usize, nr: usize, nc: usize) -> Matrix {
        Self::from_fn(self.field, nr, nc, |i, j| self.get(r0 + i, c0 + j))
    }

    pub fn rref(&self) -> Rref {
        let f = self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(piv) = (r..m.rows).find(|&i| m.data[i * m.cols + c] != 0) else {
                continue;
            };
            if piv != r {
                for j in 0..m.cols {
                    m.data.swap(piv * m.cols + j, r * m.cols + j);
                }
            }
            let inv = f.inv(m.data[r * m.cols + c]);
            for j in c..m.cols {
                let x = m.data[r * m.cols + j];
                m.data[r * m.cols + j] = f.mul(x, inv);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let factor = m.data[i * m.cols + c];
                if factor == 0 {
                    continue;
                }
                for j in c..m.cols {
                    let sub = f.mul(factor, m.data[r * m.cols + j]);
                    let x = m.data[i * m.cols + j];
                    m.data[i * m.cols + j] = f.sub(x, sub);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref { reduced: m, pivots }
    }

    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        self.rref().pivots.len()
    }

    /// Basis of the right kernel `{v : self * v = 0}` as columns.
    ///
    /// The basis is the standard one read off the reduced echelon form: the
    /// `k`-th column has a 1 at the `k`-th free coordinate and zeros at the
    /// other free coordinates.
    pub fn kernel(&self) -> Matrix {
        self.kernel_with_free().0
    }

    /// Kernel basis plus the free (non-pivot) coordinates it is normalized on.
    pub fn kernel_with_free(&self) -> (Matrix, Vec<usize>) {
        let f = self.field;
        let Rref { reduced, pivots } = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let free: Vec<usize> = (0..self.cols).filter(|&c| !is_pivot[c]).collect();
        let mut basis = Matrix::zeros(f, self.cols, free.len());
        for (k, &fc) in free.iter().enumerate() {
            basis.data[fc * free.len() + k] = 1 % f.p();
            for (r, &pc) in pivots.iter().enumerate() {
                basis.data[pc * free.len() + k] = f.neg(reduced.get(r, fc));
            }
        }
        (basis, free)
    }

    /// Rows spanning `{y : y * self = 0}`.
    pub fn left_kernel(&self) -> Matrix {
        self.transpose().kernel().transpose()
    }

    /// A basis of the column space, taken from the original pivot columns.
    pub fn column_basis(&self) -> Matrix {
        let piv = self.rref().pivots;
        self.select_columns(&piv)
    }

    /// Solves `self * X = rhs`. Returns `None` when inconsistent.
    pub fn solve(&self, rhs: &Matrix) -> Option<Matrix> {
        assert_eq!(self.rows, rhs.rows);
        let aug = Matrix::hstack(self.field, self.rows, &[self, rhs]);
        let Rref { reduced, pivots } = aug.rref();
        if pivots.iter().any(|&c| c >= self.cols) {
            return None;
        }
        let mut x = Matrix::zeros(self.field, self.cols, rhs.cols);
        for (r, &c) in pivots.iter().enumerate() {
            for j in 0..rhs.cols {
                x.data[c * rhs.cols + j] = reduced.get(r, self.cols + j);
            }
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        // A X = I is consistent only for invertible square A.
        self.solve(&Matrix::identity(self.field, self.rows))
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// `X` with `X * self = I`; requires full column rank.
    pub fn left_inverse(&self) -> Option<Matrix> {
        if self.rank() != self.cols {
            return None;
        }
        let id = Matrix::identity(self.field, self.cols);
        self.transpose().solve(&id).map(|x| x.transpose())
    }

    /// `X` with `self * X = I`; requires full row rank.
    pub fn right_inverse(&self) -> Option<Matrix> {
        if self.rank() != self.rows {
            return None;
        }
        let id = Matrix::identity(self.field, self.rows);
        self.solve(&id)
    }

    pub fn pow(&self, mut e: usize) -> Matrix {
        assert!(self.is_square());
        let mut acc = Matrix::identity(self.field, self.rows);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    pub fn trace(&self) -> u32 {
        assert!(self.is_square());
        (0..self.rows).fold(0, |acc, i| self.field.add(acc, self.get(i, i)))
    }

    /// Whether every column of `other` lies in the column space of `self`.
    pub fn spans(&self, other: &Matrix) -> bool {
        if other.cols == 0 {
            return true;
        }
        self.solve(other).is_some()
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Matrix<{}x{} mod {}>[",
            self.rows,
            self.cols,
            self.field.p()
        )?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{:?}", self.row(i))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn gf101() -> Field {
        Field::new(101).unwrap()
    }

    #[test]
    fn rank_examples() {
        let f = gf101();
        assert_eq!(Matrix::identity(f, 2).rank(), 2);
        assert_eq!(Matrix::zeros(f, 3, 4).rank(), 0);
        assert_eq!(Matrix::from_rows(f, &[[1, 1], [2, 2]]).rank(), 1);
        assert_eq!(Matrix::zeros(f, 0, 5).rank(), 0);
    }

    #[test]
    fn kernel_examples() {
        let f = gf101();
        assert_eq!(Matrix::identity(f, 2).kernel().cols(), 0);
        let k = Matrix::zeros(f, 2, 3).kernel();
        assert_eq!((k.rows(), k.cols()), (3, 3));
        assert_eq!(k.rank(), 3);
        let k = Matrix::from_rows(f, &[[1, 0], [0, 0]]).kernel();
        assert_eq!(k, Matrix::from_rows(f, &[[0], [1]]));
    }

    #[test]
    fn inverse_and_solve() {
        let f = gf101();
        let a = Matrix::from_rows(f, &[[2, 1], [1, 1]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), Matrix::identity(f, 2));
        assert!(Matrix::from_rows(f, &[[1, 1], [1, 1]]).inverse().is_none());
        let b = Matrix::from_rows(f, &[[1], [0]]);
        let x = a.solve(&b).unwrap();
        assert_eq!(a.mul(&x), b);
        let sing = Matrix::from_rows(f, &[[1, 1], [1, 1]]);
        assert!(sing.solve(&Matrix::from_rows(f, &[[1], [0]])).is_none());
    }

    #[test]
    fn one_sided_inverses() {
        let f = gf101();
        let tall = Matrix::from_rows(f, &[[1, 0], [3, 1], [5, 7]]);
        let li = tall.left_inverse().unwrap();
        assert_eq!(li.mul(&tall), Matrix::identity(f, 2));
        let wide = tall.transpose();
        let ri = wide.right_inverse().unwrap();
        assert_eq!(wide.mul(&ri), Matrix::identity(f, 2));
    }

    #[test]
    fn elimination_is_deterministic() {
        let f = gf101();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let m = Matrix::random(f, 6, 9, &mut rng);
        assert_eq!(m.kernel(), m.clone().kernel());
    }

    proptest! {
        #[test]
        fn rank_nullity(rows in 0usize..7, cols in 0usize..7, seed in any::<u64>(), sparse in any::<bool>()) {
            let f = gf101();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut m = Matrix::random(f, rows, cols, &mut rng);
            if sparse {
                for i in 0..rows { for j in 0..cols { if !(i + j + seed as usize).is_multiple_of(3) { m.set(i, j, 0); } } }
            }
            let k = m.kernel();
            prop_assert_eq!(m.rank() + k.cols(), cols);
            prop_assert!(m.mul(&k).is_zero());
            prop_assert_eq!(k.rank(), k.cols());
            let lk = m.left_kernel();
            prop_assert!(lk.mul(&m).is_zero());
            prop_assert_eq!(lk.rows() + m.rank(), rows);
        }
    }
}
