//! Univariate polynomials over GF(p), just enough to split characteristic
//! polynomials of endomorphisms into coprime parts.

use rand::Rng;

use super::{Field, Matrix};

/// Coefficients low degree first; no trailing zeros. The zero polynomial is empty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    coeffs: Vec<u32>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<u32>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly { coeffs: vec![1] }
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        Poly { coeffs: vec![0, 1] }
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial has degree `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn lead(&self) -> u32 {
        *self
            .coeffs
            .last()
            .expect("zero polynomial has no leading coefficient")
    }

    pub fn monic(&self, f: Field) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let inv = f.inv(self.lead());
        Poly::new(self.coeffs.iter().map(|&c| f.mul(c, inv)).collect())
    }

    pub fn add(&self, other: &Poly, f: Field) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new(
            (0..n)
                .map(|i| {
                    let a = self.coeffs.get(i).copied().unwrap_or(0);
                    let b = other.coeffs.get(i).copied().unwrap_or(0);
                    f.add(a, b)
                })
                .collect(),
        )
    }

    pub fn sub(&self, other: &Poly, f: Field) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new(
            (0..n)
                .map(|i| {
                    let a = self.coeffs.get(i).copied().unwrap_or(0);
                    let b = other.coeffs.get(i).copied().unwrap_or(0);
                    f.sub(a, b)
                })
                .collect(),
        )
    }

    pub fn mul(&self, other: &Poly, f: Field) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![0u32; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Poly::new(out)
    }

    pub fn divrem(&self, divisor: &Poly, f: Field) -> (Poly, Poly) {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let dd = divisor.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let inv = f.inv(divisor.lead());
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0u32; rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = f.mul(rem[k + dd], inv);
            quot[k] = c;
            if c == 0 {
                continue;
            }
            for (j, &d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = f.sub(rem[k + j], f.mul(c, d));
            }
        }
        rem.truncate(dd);
        (Poly::new(quot), Poly::new(rem))
    }

    pub fn rem(&self, divisor: &Poly, f: Field) -> Poly {
        self.divrem(divisor, f).1
    }

    /// Exact quotient; debug-asserts a zero remainder.
    pub fn div_exact(&self, divisor: &Poly, f: Field) -> Poly {
        let (q, r) = self.divrem(divisor, f);
        debug_assert!(r.is_zero());
        q
    }

    /// Monic greatest common divisor (zero only if both inputs are zero).
    pub fn gcd(&self, other: &Poly, f: Field) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b, f);
            a = b;
            b = r;
        }
        a.monic(f)
    }

    pub fn derivative(&self, f: Field) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| f.mul(c, (i as u64 % u64::from(f.p())) as u32))
                .collect(),
        )
    }

    /// `self^exp mod modulus`.
    pub fn powmod(&self, mut exp: u64, modulus: &Poly, f: Field) -> Poly {
        let mut acc = Poly::one().rem(modulus, f);
        let mut base = self.rem(modulus, f);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base, f).rem(modulus, f);
            }
            base = base.mul(&base, f).rem(modulus, f);
            exp >>= 1;
        }
        acc
    }

    /// Evaluates the polynomial at a square matrix (Horner).
    pub fn eval_matrix(&self, m: &Matrix) -> Matrix {
        let f = m.field();
        let n = m.rows();
        let mut acc = Matrix::zeros(f, n, n);
        for &c in self.coeffs.iter().rev() {
            acc = acc.mul(m);
            acc.add_scaled(&Matrix::identity(f, n), c);
        }
        acc
    }

    /// For `self = g(x^p)` returns `g`; valid over GF(p) where `a^p = a`.
    fn pth_root(&self, f: Field) -> Poly {
        let p = f.p() as usize;
        Poly::new(self.coeffs.iter().step_by(p).copied().collect())
    }
}

/// Characteristic polynomial `det(xI - m)`, monic of degree `n`.
///
/// Reduces to upper Hessenberg form by similarity transforms and then runs
/// the standard three-term recurrence; works over any field.
pub fn charpoly(m: &Matrix) -> Poly {
    assert!(m.is_square());
    let f = m.field();
    let n = m.rows();
    let mut h: Vec<Vec<u32>> = (0..n).map(|i| m.row(i).to_vec()).collect();
    for col in 1..n.saturating_sub(1) {
        let Some(i) = (col..n).find(|&i| h[i][col - 1] != 0) else {
            continue;
        };
        if i != col {
            h.swap(i, col);
            for row in h.iter_mut() {
                row.swap(i, col);
            }
        }
        let t_inv = f.inv(h[col][col - 1]);
        for i in col + 1..n {
            let u = f.mul(h[i][col - 1], t_inv);
            if u == 0 {
                continue;
            }
            let pivot = h[col].clone();
            for (x, &y) in h[i].iter_mut().zip(&pivot) {
                *x = f.sub(*x, f.mul(u, y));
            }
            for row in h.iter_mut() {
                let s = f.mul(u, row[i]);
                row[col] = f.add(row[col], s);
            }
        }
    }
    // p_k = (x - h[k-1][k-1]) p_{k-1} - sum_{i<k} h[i-1][k-1] * prod_{j=i}^{k-1} h[j][j-1] * p_{i-1}   (1-based i)
    let mut ps: Vec<Poly> = vec![Poly::one()];
    for k in 1..=n {
        let diag = h[k - 1][k - 1];
        let mut pk = ps[k - 1].mul(&Poly::new(vec![f.neg(diag), 1]), f);
        let mut t = 1u32;
        for i in (1..k).rev() {
            t = f.mul(t, h[i][i - 1]);
            if t == 0 {
                break;
            }
            let coef = f.mul(h[i - 1][k - 1], t);
            if coef != 0 {
                pk = pk.sub(&ps[i - 1].mul(&Poly::new(vec![coef]), f), f);
            }
        }
        ps.push(pk);
    }
    ps.pop().expect("recurrence yields p_n")
}

/// Product of the distinct monic irreducible factors of `p` (nonzero input).
pub fn radical(p: &Poly, f: Field) -> Poly {
    let p = p.monic(f);
    if p.degree().unwrap_or(0) == 0 {
        return Poly::one();
    }
    let d = p.derivative(f);
    if d.is_zero() {
        return radical(&p.pth_root(f), f);
    }
    let c = p.gcd(&d, f);
    // w collects the irreducible factors whose multiplicity is prime to p
    let w = p.div_exact(&c, f);
    let mut rest = c;
    loop {
        let g = rest.gcd(&w, f);
        if g.degree() == Some(0) {
            break;
        }
        rest = rest.div_exact(&g, f);
    }
    w.mul(&radical(&rest, f), f).monic(f)
}

/// A monic divisor `g` of the squarefree polynomial `r` with
/// `0 < deg g < deg r`, or `None` when `r` is irreducible (or constant).
///
/// Distinct-degree splitting first, then randomized equal-degree splitting.
pub fn proper_factor<R: Rng + ?Sized>(r: &Poly, f: Field, rng: &mut R) -> Option<Poly> {
    let r = r.monic(f);
    let n = r.degree()?;
    if n <= 1 {
        return None;
    }
    let p = u64::from(f.p());
    let x = Poly::x();
    let mut frob = x.clone();
    for d in 1..=n / 2 {
        frob = frob.powmod(p, &r, f);
        let g = r.gcd(&frob.sub(&x, f), f);
        match g.degree() {
            Some(0) | None => continue,
            Some(k) if k < n => return Some(g),
            Some(_) => return equal_degree_split(&r, d, f, rng),
        }
    }
    None
}

fn equal_degree_split<R: Rng + ?Sized>(r: &Poly, d: usize, f: Field, rng: &mut R) -> Option<Poly> {
    let n = r.degree()?;
    let p = u64::from(f.p());
    for _ in 0..256 {
        let a = Poly::new((0..n).map(|_| rng.gen_range(0..f.p())).collect());
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        let probe = if p == 2 {
            // absolute trace a + a^2 + ... + a^(2^(d-1))
            let mut t = a.rem(r, f);
            let mut acc = t.clone();
            for _ in 1..d {
                t = t.mul(&t, f).rem(r, f);
                acc = acc.add(&t, f);
            }
            acc
        } else {
            // a^((p^d - 1)/2) = (prod_{i<d} a^(p^i))^((p - 1)/2)
            let mut t = a.rem(r, f);
            let mut norm = t.clone();
            for _ in 1..d {
                t = t.powmod(p, r, f);
                norm = norm.mul(&t, f).rem(r, f);
            }
            norm.powmod((p - 1) / 2, r, f).sub(&Poly::one(), f)
        };
        let g = r.gcd(&probe, f);
        if let Some(k) = g.degree() {
            if k > 0 && k < n {
                return Some(g);
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn poly(f: Field, c: &[i64]) -> Poly {
        Poly::new(c.iter().map(|&x| f.reduce(x)).collect())
    }

    #[test]
    fn charpoly_small() {
        let f = Field::new(101).unwrap();
        let m = Matrix::from_rows(f, &[[2, 1], [0, 3]]);
        // (x-2)(x-3) = x^2 - 5x + 6
        assert_eq!(charpoly(&m), poly(f, &[6, -5, 1]));
        let z = Matrix::zeros(f, 3, 3);
        assert_eq!(charpoly(&z), poly(f, &[0, 0, 0, 1]));
        assert_eq!(charpoly(&Matrix::zeros(f, 0, 0)), Poly::one());
    }

    #[test]
    fn radical_strips_multiplicities() {
        let f = Field::new(5).unwrap();
        // (x-1)^5 (x-2)^2 over GF(5)
        let a = poly(f, &[-1, 1]);
        let b = poly(f, &[-2, 1]);
        let mut p = Poly::one();
        for _ in 0..5 {
            p = p.mul(&a, f);
        }
        p = p.mul(&b, f).mul(&b, f);
        assert_eq!(radical(&p, f), a.mul(&b, f));
    }

    #[test]
    fn factor_finding() {
        let f = Field::new(101).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        // 101 = 1 mod 4 so x^2 + 1 splits; 2 and 3 are non-residues mod 101
        let linear = poly(f, &[-2, 1]);
        let irr2 = poly(f, &[-2, 0, 1]);
        assert!(proper_factor(&irr2, f, &mut rng).is_none());
        let splits = poly(f, &[1, 0, 1]);
        let g = proper_factor(&splits, f, &mut rng).unwrap();
        assert_eq!(g.degree(), Some(1));
        assert!(splits.rem(&g, f).is_zero());
        assert!(proper_factor(&linear, f, &mut rng).is_none());
        // two distinct quadratic irreducibles: only equal-degree splitting separates them
        let q1 = irr2.clone();
        let q2 = poly(f, &[-3, 0, 1]);
        let prod = q1.mul(&q2, f);
        let g = proper_factor(&prod, f, &mut rng).unwrap();
        assert_eq!(g.degree(), Some(2));
        assert!(g == q1.monic(f) || g == q2.monic(f));
    }

    #[test]
    fn factor_finding_char_two() {
        let f = Field::new(2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        // (x^3+x+1)(x^3+x^2+1): two cubics force equal-degree splitting
        let a = poly(f, &[1, 1, 0, 1]);
        let b = poly(f, &[1, 0, 1, 1]);
        let prod = a.mul(&b, f);
        let g = proper_factor(&prod, f, &mut rng).unwrap();
        assert!(g == a || g == b);
    }

    proptest! {
        #[test]
        fn cayley_hamilton(n in 0usize..7, seed in any::<u64>()) {
            let f = Field::new(101).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let m = Matrix::random(f, n, n, &mut rng);
            let chi = charpoly(&m);
            prop_assert_eq!(chi.degree(), Some(n));
            prop_assert!(chi.eval_matrix(&m).is_zero());
            if n > 0 {
                prop_assert_eq!(f.neg(chi.coeffs()[n - 1]), m.trace());
            }
            // similarity invariance
            let s = Matrix::random_invertible(f, n, &mut rng);
            let conj = s.inverse().unwrap().mul(&m).mul(&s);
            prop_assert_eq!(charpoly(&conj), chi);
        }
    }
}
