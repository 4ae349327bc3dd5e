use num_rational::BigRational;

use super::field::Coeff;
use super::poly::Poly;
use crate::error::{Error, Result};

/// Resultant by the Euclidean remainder sequence:
/// `Res(a, b) = (-1)^(deg a * deg b) * lc(b)^(deg a - deg r) * Res(b, r)`.
pub fn resultant(a: &Poly, b: &Poly) -> Result<Coeff> {
    let field = a.field();
    if field != b.field() {
        return Err(Error::MixedFields(field, b.field()));
    }
    let (Some(mut m), Some(mut n)) = (a.degree(), b.degree()) else {
        return Ok(Coeff::zero(field));
    };
    let (mut a, mut b) = (a.clone(), b.clone());
    let mut acc = Coeff::one(field);
    loop {
        if n == 0 {
            return Ok(&acc * &b.leading().unwrap().pow(m as u32));
        }
        let r = a.divrem(&b)?.1;
        let Some(dr) = r.degree() else {
            return Ok(Coeff::zero(field));
        };
        if (m * n) % 2 == 1 {
            acc = -acc;
        }
        acc = &acc * &b.leading().unwrap().pow((m - dr) as u32);
        (a, b) = (b, r);
        (m, n) = (n, dr);
    }
}

/// Discriminant `(-1)^(n(n-1)/2) * Res(d, d') / lc(d)` of a rational polynomial.
pub fn discriminant(d: &Poly) -> Result<BigRational> {
    d.rational_coeffs()?;
    let n = d.degree().unwrap_or(0);
    if n < 2 {
        return Err(Error::DegreeTooSmall { found: d.degree_i64(), required: 2 });
    }
    let res = resultant(d, &d.derivative())?;
    let mut disc = (&res / d.leading().unwrap()).as_rational().unwrap().clone();
    if (n * (n - 1) / 2) % 2 == 1 {
        disc = -disc;
    }
    Ok(disc)
}
