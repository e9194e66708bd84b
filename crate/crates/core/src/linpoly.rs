//! Linearized polynomials `L(X) = sum_i a_i X^{2^i}` over `GF(2^m)`.

use crate::error::{Error, Result};
use crate::gf2m::{Field, FieldElement};
use crate::linalg::{BaseMatrix, BitVector};
use crate::rank_metric::Support;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearizedPoly {
    field: Field,
    /// `coeffs[i]` multiplies `X^{2^i}`; no trailing zeros.
    coeffs: Vec<FieldElement>,
}

impl LinearizedPoly {
    pub fn new(field: Field, mut coeffs: Vec<FieldElement>) -> Result<Self> {
        if coeffs.iter().any(|&a| !field.contains(a)) {
            return Err(Error::InvalidParameter("coefficient outside the field".into()));
        }
        while coeffs.last().is_some_and(|a| a.is_zero()) {
            coeffs.pop();
        }
        Ok(LinearizedPoly { field, coeffs })
    }

    /// The identity map `X`.
    pub fn x(field: Field) -> Self {
        LinearizedPoly {
            field,
            coeffs: vec![FieldElement::ONE],
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn q_degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&FieldElement::ONE)
    }

    pub fn evaluate(&self, x: FieldElement) -> FieldElement {
        let k = self.field;
        let mut acc = FieldElement::ZERO;
        let mut power = x;
        for (i, &a) in self.coeffs.iter().enumerate() {
            if i > 0 {
                power = k.square(power);
            }
            acc += k.mul(a, power);
        }
        acc
    }

    /// The `m x m` bit matrix of `x -> L(x)`: row `b` holds `L(X^b)`.
    fn evaluation_matrix(&self) -> BaseMatrix {
        let m = self.field.degree() as usize;
        let rows: Vec<BitVector> = (0..m as u32)
            .map(|b| BitVector::from_u64(self.evaluate(self.field.basis(b)).bits(), m))
            .collect();
        BaseMatrix::from_rows(&rows).expect("rows have equal length")
    }

    /// Basis of the roots of `L` in `GF(2^m)`, from the kernel of the
    /// evaluation map over `GF(2)`.
    pub fn root_space(&self) -> Support {
        let kernel = self.evaluation_matrix().left_kernel();
        let basis = (0..kernel.rows())
            .map(|i| FieldElement(kernel.row(i).low_word()))
            .collect();
        Support::new(self.field, basis).expect("kernel rows are independent")
    }

    /// `(L(X))^2`, i.e. `X^[1]` composed after `L`.
    fn frobenius_shift(&self) -> Vec<FieldElement> {
        let mut out = Vec::with_capacity(self.coeffs.len() + 1);
        out.push(FieldElement::ZERO);
        out.extend(self.coeffs.iter().map(|&a| self.field.square(a)));
        out
    }

    /// The monic linearized polynomial of q-degree `dim S` vanishing exactly
    /// on the span of `S`.
    pub fn annihilator(support: &Support) -> Result<Self> {
        let k = support.field();
        let mut poly = LinearizedPoly::x(k);
        for &b in support.basis() {
            let v = poly.evaluate(b);
            if v.is_zero() {
                return Err(Error::InvalidParameter(
                    "support basis is linearly dependent".into(),
                ));
            }
            let mut next = poly.frobenius_shift();
            for (c, &a) in next.iter_mut().zip(&poly.coeffs) {
                *c += k.mul(v, a);
            }
            poly = LinearizedPoly { field: k, coeffs: next };
        }
        Ok(poly)
    }
}
