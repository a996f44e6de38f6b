use crate::comod::{hom_basis, Comodule, HomSpace, Morphism};
use crate::error::{Error, Result};
use crate::exactlin::{Field, Matrix};

/// `End(M)` with its left regular representation: `left[i]` is the matrix of
/// `x -> b_i ∘ x` in the basis `b`.
#[derive(Clone, Debug)]
pub struct EndoAlgebra {
    module: Comodule,
    hom: HomSpace,
    left: Vec<Matrix>,
}

impl EndoAlgebra {
    pub fn new(m: &Comodule) -> Result<Self> {
        let hom = hom_basis(m, m)?;
        let d = hom.dim();
        let f = m.field();
        let mut left = vec![Matrix::zeros(f, d, d); d];
        for (j, bj) in hom.basis().iter().enumerate() {
            for (i, bi) in hom.basis().iter().enumerate() {
                let coords = hom.coordinates(&bj.then(bi));
                for (k, c) in coords.into_iter().enumerate() {
                    left[i].set(k, j, c);
                }
            }
        }
        Ok(EndoAlgebra {
            module: m.clone(),
            hom,
            left,
        })
    }

    pub fn dim(&self) -> usize {
        self.hom.dim()
    }

    pub fn module(&self) -> &Comodule {
        &self.module
    }

    pub fn basis(&self) -> &[Morphism] {
        self.hom.basis()
    }

    pub fn hom(&self) -> &HomSpace {
        &self.hom
    }

    fn field(&self) -> Field {
        self.module.field()
    }

    /// Matrix of left multiplication by the element with coordinates `x`.
    pub fn left_mul(&self, x: &[u32]) -> Matrix {
        let d = self.dim();
        let mut acc = Matrix::zeros(self.field(), d, d);
        for (l, &c) in self.left.iter().zip(x) {
            if c != 0 {
                acc.add_scaled(l, c);
            }
        }
        acc
    }

    pub fn product(&self, x: &[u32], y: &[u32]) -> Vec<u32> {
        self.left_mul(x).mul_vec(y)
    }

    pub fn identity(&self) -> Vec<u32> {
        self.hom.coordinates(&Morphism::identity(&self.module))
    }

    /// The Jacobson radical as the kernel of the trace form
    /// `(x, y) -> Tr(L_x L_y)`, valid when `p > dim End`.
    pub fn radical(&self) -> Result<Matrix> {
        let d = self.dim();
        let f = self.field();
        if (f.p() as usize) <= d {
            return Err(Error::FieldTooSmall {
                p: f.p(),
                needed: d,
            });
        }
        let gram = Matrix::from_fn(f, d, d, |i, j| self.left[i].mul(&self.left[j]).trace());
        Ok(gram.kernel())
    }

    /// Local iff `End/rad` is a field. A semisimple algebra over GF(p) is a
    /// field iff it is commutative and its Frobenius-fixed subalgebra is GF(p).
    pub fn is_local(&self) -> Result<bool> {
        let d = self.dim();
        if d == 0 {
            return Ok(false);
        }
        if d == 1 {
            return Ok(true);
        }
        let rad = self.radical()?;
        let f = self.field();
        let q = rad.left_kernel();
        let k = q.rows();
        if k <= 1 {
            return Ok(k == 1);
        }
        let s = q.right_inverse().expect("independent rows");
        let lift = |e: &[u32]| s.mul_vec(e);
        let mul = |x: &[u32], y: &[u32]| q.mul_vec(&self.product(&lift(x), &lift(y)));
        let unit = |i: usize| -> Vec<u32> { (0..k).map(|j| u32::from(i == j)).collect() };
        for i in 0..k {
            for j in i + 1..k {
                if mul(&unit(i), &unit(j)) != mul(&unit(j), &unit(i)) {
                    return Ok(false);
                }
            }
        }
        let one = q.mul_vec(&self.identity());
        let mut frob = Matrix::zeros(f, k, k);
        for i in 0..k {
            let col = power(&unit(i), u64::from(f.p()), &one, &mul);
            for (r, c) in col.into_iter().enumerate() {
                frob.set(r, i, c);
            }
        }
        let fixed = frob.sub(&Matrix::identity(f, k)).kernel();
        Ok(fixed.cols() == 1)
    }
}

fn power(
    x: &[u32],
    mut e: u64,
    one: &[u32],
    mul: &impl Fn(&[u32], &[u32]) -> Vec<u32>,
) -> Vec<u32> {
    let mut acc = one.to_vec();
    let mut base = x.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(&acc, &base);
        }
        base = mul(&base, &base);
        e >>= 1;
    }
    acc
}

/// `true` iff `End(m)` is local. Requires `p > dim End(m)` unless the
/// endomorphism ring is one-dimensional.
pub fn certify_indecomposable(m: &Comodule) -> Result<bool> {
    if m.is_zero() {
        return Ok(false);
    }
    EndoAlgebra::new(m)?.is_local()
}
