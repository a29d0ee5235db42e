//! Jordan product, multiplication operators, triple product and powers.

use nalgebra::{DMatrix, DVector};

use crate::algebra::Algebra;
use crate::element::{check_same, pack_symmetric, unpack_symmetric, Element, LinearOperator};
use crate::error::{Error, Result};

impl Algebra {
    /// The unit `e` of the algebra.
    pub fn identity(&self) -> Element {
        let mut coords = DVector::zeros(self.dim());
        for (part, range) in self.parts() {
            let slice = &mut coords.as_mut_slice()[range];
            match part {
                Algebra::Orthant(_) => slice.fill(1.0),
                Algebra::Sym(n) => {
                    let id = DMatrix::<f64>::identity(*n, *n);
                    slice.copy_from_slice(pack_symmetric(&id).as_slice());
                }
                Algebra::Spin(n) => slice[*n] = 1.0,
                Algebra::Sum { .. } => unreachable!("nested sums are rejected by validation"),
            }
        }
        Element::from_raw(self.clone(), coords)
    }
}

fn product_into(alg: &Algebra, a: &[f64], b: &[f64], out: &mut [f64]) {
    match alg {
        Algebra::Orthant(_) => {
            for ((o, x), y) in out.iter_mut().zip(a).zip(b) {
                *o = x * y;
            }
        }
        Algebra::Sym(n) => {
            let ma = unpack_symmetric(a, *n);
            let mb = unpack_symmetric(b, *n);
            let ab = &ma * &mb;
            let sym = (&ab + ab.transpose()) * 0.5;
            out.copy_from_slice(pack_symmetric(&sym).as_slice());
        }
        Algebra::Spin(n) => {
            let (va, alpha) = (&a[..*n], a[*n]);
            let (vb, beta) = (&b[..*n], b[*n]);
            let mut dot = 0.0;
            for i in 0..*n {
                out[i] = beta * va[i] + alpha * vb[i];
                dot += va[i] * vb[i];
            }
            out[*n] = dot + alpha * beta;
        }
        Algebra::Sum { .. } => {
            for (part, range) in alg.parts() {
                product_into(part, &a[range.clone()], &b[range.clone()], &mut out[range]);
            }
        }
    }
}

impl Element {
    /// Jordan product `ab`.
    pub fn product(&self, other: &Element) -> Result<Element> {
        check_same(self.alg(), other.alg())?;
        let mut out = DVector::zeros(self.dim());
        product_into(
            self.alg(),
            self.as_slice(),
            other.as_slice(),
            out.as_mut_slice(),
        );
        Ok(Element::from_raw(self.alg().clone(), out))
    }

    pub fn square(&self) -> Element {
        self.product(self).expect("same algebra")
    }

    /// Left multiplication operator `L_a: x -> ax`.
    pub fn left_mult(&self) -> LinearOperator {
        let d = self.dim();
        let mut m = DMatrix::zeros(d, d);
        let mut basis = vec![0.0; d];
        let mut col = vec![0.0; d];
        for j in 0..d {
            basis[j] = 1.0;
            product_into(self.alg(), self.as_slice(), &basis, &mut col);
            m.set_column(j, &DVector::from_column_slice(&col));
            basis[j] = 0.0;
        }
        LinearOperator::from_raw(self.alg().clone(), m)
    }

    /// Jordan triple product `{a,b,c} = (ab)c + a(bc) - b(ac)`.
    pub fn triple(&self, b: &Element, c: &Element) -> Result<Element> {
        let ab_c = self.product(b)?.product(c)?;
        let a_bc = self.product(&b.product(c)?)?;
        let b_ac = b.product(&self.product(c)?)?;
        ab_c.add(&a_bc)?.sub(&b_ac)
    }

    /// Quadratic representation `P(a) = 2 L_a^2 - L_{a^2}`, i.e. `x -> {a,x,a}`.
    pub fn quadratic_rep(&self) -> LinearOperator {
        let la = self.left_mult();
        let la2 = self.square().left_mult();
        la.compose(&la)
            .and_then(|l| l.scale(2.0).sub(&la2))
            .expect("same algebra")
    }

    /// Left-iterated power `a^n = a a^{n-1}`, `n >= 1`.
    pub fn power(&self, n: u32) -> Result<Element> {
        if n == 0 {
            return Err(Error::ZeroPower);
        }
        let mut acc = self.clone();
        for _ in 1..n {
            acc = self.product(&acc)?;
        }
        Ok(acc)
    }
}
