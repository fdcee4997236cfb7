//! Power series in `x, y, z` truncated at a fixed total degree.

use super::field::{Field, Ring};
use super::poly::Poly;
use crate::error::{Error, Result};

/// A polynomial understood modulo all monomials of total degree above `order`.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncSeries<F: Field> {
    poly: Poly<F>,
    order: i32,
}

impl<F: Field> TruncSeries<F> {
    pub fn new(p: Poly<F>, order: i32) -> Self {
        TruncSeries {
            poly: p.truncate(order),
            order,
        }
    }

    pub fn poly(&self) -> &Poly<F> {
        &self.poly
    }

    pub fn order(&self) -> i32 {
        self.order
    }

    fn common(&self, o: &Self) -> i32 {
        self.order.min(o.order)
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::new(self.poly.add(&o.poly), self.common(o))
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self::new(self.poly.sub(&o.poly), self.common(o))
    }

    pub fn mul(&self, o: &Self) -> Self {
        let d = self.common(o);
        Self::new(self.poly.truncate(d).mul(&o.poly.truncate(d)), d)
    }

    /// Constant part: terms free of `x, y, z`.
    pub fn constant_term(&self) -> Poly<F> {
        Poly::from_terms(
            self.poly
                .terms()
                .iter()
                .filter(|(m, _)| m.is_scalar())
                .cloned()
                .collect(),
        )
    }

    /// Equal as truncated series.
    pub fn congruent(&self, o: &Self) -> bool {
        let d = self.common(o);
        self.poly.truncate(d) == o.poly.truncate(d)
    }
}

/// Inverse of a series whose constant term is a unit scalar: the geometric
/// series `c^{-1} Σ_k (−h c^{-1})^k` in the non-constant part `h`.
pub fn trunc_inverse<F: Field>(u: &TruncSeries<F>) -> Result<TruncSeries<F>> {
    let c = u.constant_term();
    if !c.is_scalar_unit() {
        return Err(Error::NonUnitConstantTerm);
    }
    let ci = c.monomial_inverse().ok_or(Error::NonUnitConstantTerm)?;
    let d = u.order;
    let h = u.poly.sub(&c);
    let step = TruncSeries::new(h.mul(&ci).neg(), d);
    let mut acc = TruncSeries::new(Poly::one(), d);
    let mut pow = acc.clone();
    for _ in 0..d.max(0) {
        pow = pow.mul(&step);
        if pow.poly.is_zero() {
            break;
        }
        acc = acc.add(&pow);
    }
    Ok(TruncSeries::new(acc.poly.mul(&ci), d))
}
