//! Dense univariate polynomials over a [`Field`].

use std::fmt;

use crate::error::{invalid, Error, Result};
use crate::field::{Elem, Embedding, Field};

mod cyclotomic;
pub mod roots;

pub use cyclotomic::cyclotomic;
pub use roots::{roots_with_mult, RootSpectrum, DEFAULT_MAX_EXT_DEGREE};

/// Euler's totient; the degree of the m-th cyclotomic polynomial.
pub fn euler_phi(m: u64) -> Result<u64> {
    if m < 1 {
        return Err(invalid("euler_phi needs m >= 1"));
    }
    Ok(crate::arith::euler_phi(m))
}

/// A polynomial with coefficients indexed by degree. The leading
/// coefficient is nonzero; the zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    field: Field,
    coeffs: Vec<Elem>,
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::format::poly_to_string(self))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::format::poly_to_string(self))
    }
}

impl Poly {
    pub fn from_elems(field: &Field, mut coeffs: Vec<Elem>) -> Poly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { field: field.clone(), coeffs }
    }

    /// Coefficients given as integers (low-to-high), reduced into the prime
    /// subfield.
    pub fn from_ints(field: &Field, coeffs: &[i64]) -> Poly {
        Poly::from_elems(field, coeffs.iter().map(|&c| field.from_int(c)).collect())
    }

    pub fn zero(field: &Field) -> Poly {
        Poly { field: field.clone(), coeffs: Vec::new() }
    }

    pub fn constant(field: &Field, c: Elem) -> Poly {
        Poly::from_elems(field, vec![c])
    }

    pub fn one(field: &Field) -> Poly {
        Poly::constant(field, Elem::ONE)
    }

    /// c * x^k
    pub fn monomial(field: &Field, c: Elem, k: usize) -> Poly {
        let mut coeffs = vec![Elem::ZERO; k + 1];
        coeffs[k] = c;
        Poly::from_elems(field, coeffs)
    }

    pub fn x(field: &Field) -> Poly {
        Poly::monomial(field, Elem::ONE, 1)
    }

    /// x - a
    pub fn linear(field: &Field, a: Elem) -> Poly {
        Poly::from_elems(field, vec![field.neg(a), Elem::ONE])
    }

    /// x^m - 1
    pub fn x_pow_minus_one(field: &Field, m: usize) -> Poly {
        let mut coeffs = vec![Elem::ZERO; m + 1];
        coeffs[0] = field.from_int(-1);
        coeffs[m] = Elem::ONE;
        Poly::from_elems(field, coeffs)
    }

    /// The monic polynomial with the given roots (with repetition).
    pub fn from_roots(field: &Field, roots: &[Elem]) -> Poly {
        roots.iter().fold(Poly::one(field), |acc, &r| acc.mul_unchecked(&Poly::linear(field, r)))
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Elem {
        self.coeffs.get(i).copied().unwrap_or(Elem::ZERO)
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0; for callers that have
    /// already excluded zero.
    pub(crate) fn deg(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [Elem::ONE]
    }

    pub fn leading(&self) -> Option<Elem> {
        self.coeffs.last().copied()
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == Some(Elem::ONE)
    }

    fn check(&self, other: &Poly) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::MixedFields)
        }
    }

    pub fn eval(&self, a: Elem) -> Elem {
        let k = &self.field;
        self.coeffs.iter().rev().fold(Elem::ZERO, |acc, &c| k.add(k.mul(acc, a), c))
    }

    pub fn add(&self, other: &Poly) -> Result<Poly> {
        self.check(other)?;
        Ok(self.add_unchecked(other))
    }

    pub fn sub(&self, other: &Poly) -> Result<Poly> {
        self.check(other)?;
        Ok(self.add_unchecked(&other.neg()))
    }

    pub fn mul(&self, other: &Poly) -> Result<Poly> {
        self.check(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn add_unchecked(&self, other: &Poly) -> Poly {
        let k = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| k.add(self.coeff(i), other.coeff(i))).collect();
        Poly::from_elems(k, coeffs)
    }

    pub(crate) fn sub_unchecked(&self, other: &Poly) -> Poly {
        self.add_unchecked(&other.neg())
    }

    pub(crate) fn mul_unchecked(&self, other: &Poly) -> Poly {
        let k = &self.field;
        if self.is_zero() || other.is_zero() {
            return Poly::zero(k);
        }
        let mut out = vec![Elem::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = k.add(out[i + j], k.mul(a, b));
            }
        }
        Poly::from_elems(k, out)
    }

    pub fn neg(&self) -> Poly {
        let k = &self.field;
        Poly::from_elems(k, self.coeffs.iter().map(|&c| k.neg(c)).collect())
    }

    pub fn scale(&self, c: Elem) -> Poly {
        let k = &self.field;
        Poly::from_elems(k, self.coeffs.iter().map(|&a| k.mul(a, c)).collect())
    }

    /// Divides by the leading coefficient. The zero polynomial stays zero.
    pub fn monic(&self) -> Poly {
        match self.leading() {
            Some(l) if l != Elem::ONE => {
                let inv = self.field.inv(l).expect("leading coefficient is nonzero");
                self.scale(inv)
            }
            _ => self.clone(),
        }
    }

    /// Quotient and remainder with deg r < deg divisor.
    pub fn divmod(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        self.check(divisor)?;
        self.divmod_unchecked(divisor)
    }

    pub(crate) fn divmod_unchecked(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        let k = &self.field;
        let Some(db) = divisor.degree() else {
            return Err(Error::DivisionByZero);
        };
        let lead_inv = k.inv(divisor.coeffs[db])?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= db {
            return Ok((Poly::zero(k), self.clone()));
        }
        let mut quot = vec![Elem::ZERO; rem.len() - db];
        for i in (db..rem.len()).rev() {
            let c = k.mul(rem[i], lead_inv);
            if c.is_zero() {
                continue;
            }
            quot[i - db] = c;
            for (j, &d) in divisor.coeffs.iter().enumerate() {
                rem[i - db + j] = k.sub(rem[i - db + j], k.mul(c, d));
            }
        }
        rem.truncate(db);
        Ok((Poly::from_elems(k, quot), Poly::from_elems(k, rem)))
    }

    pub fn rem(&self, divisor: &Poly) -> Result<Poly> {
        Ok(self.divmod(divisor)?.1)
    }

    /// Quotient of an exact division; fails if the remainder is nonzero.
    pub fn exact_div(&self, divisor: &Poly) -> Result<Poly> {
        let (q, r) = self.divmod(divisor)?;
        if !r.is_zero() {
            return Err(invalid(format!("{divisor} does not divide {self}")));
        }
        Ok(q)
    }

    /// True iff `self` divides `other`. Zero divides only zero.
    pub fn divides(&self, other: &Poly) -> Result<bool> {
        self.check(other)?;
        if self.is_zero() {
            return Ok(other.is_zero());
        }
        Ok(other.divmod_unchecked(self)?.1.is_zero())
    }

    /// Monic greatest common divisor; gcd(0, 0) = 0.
    pub fn gcd(&self, other: &Poly) -> Result<Poly> {
        self.check(other)?;
        Ok(self.gcd_unchecked(other))
    }

    pub(crate) fn gcd_unchecked(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.divmod_unchecked(&b).expect("nonzero divisor").1;
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn lcm(&self, other: &Poly) -> Result<Poly> {
        self.check(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Poly::zero(&self.field));
        }
        let g = self.gcd_unchecked(other);
        Ok(self.mul_unchecked(other).divmod_unchecked(&g)?.0.monic())
    }

    /// f(x^k): coefficient i moves to index k * i.
    pub fn compose_xk(&self, k: usize) -> Result<Poly> {
        if k < 1 {
            return Err(invalid("compose_xk needs k >= 1"));
        }
        if self.is_zero() {
            return Ok(self.clone());
        }
        let mut coeffs = vec![Elem::ZERO; k * self.deg() + 1];
        for (i, &c) in self.coeffs.iter().enumerate() {
            coeffs[k * i] = c;
        }
        Ok(Poly::from_elems(&self.field, coeffs))
    }

    /// self^n mod modulus.
    pub fn pow_mod(&self, mut n: u64, modulus: &Poly) -> Result<Poly> {
        self.check(modulus)?;
        let mut base = self.divmod_unchecked(modulus)?.1;
        let mut acc = Poly::one(&self.field).divmod_unchecked(modulus)?.1;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul_unchecked(&base).divmod_unchecked(modulus)?.1;
            }
            base = base.mul_unchecked(&base).divmod_unchecked(modulus)?.1;
            n >>= 1;
        }
        Ok(acc)
    }

    pub fn derivative(&self) -> Poly {
        let k = &self.field;
        let coeffs = self.coeffs.iter().enumerate().skip(1).map(|(i, &c)| k.scale(c, i as i64)).collect();
        Poly::from_elems(k, coeffs)
    }

    /// Image of this polynomial under a field embedding.
    pub fn lift(&self, emb: &Embedding) -> Result<Poly> {
        if *emb.base() != self.field {
            return Err(Error::MixedFields);
        }
        Ok(Poly::from_elems(emb.ext(), emb.embed_all(&self.coeffs)))
    }

    /// Pulls a polynomial back along an embedding, if all coefficients lie in
    /// the image of the base field.
    pub fn project(&self, emb: &Embedding) -> Option<Poly> {
        if *emb.ext() != self.field {
            return None;
        }
        let coeffs = self.coeffs.iter().map(|&c| emb.project(c)).collect::<Option<Vec<_>>>()?;
        Some(Poly::from_elems(emb.base(), coeffs))
    }

    /// Smallest n >= 1 with self | x^n - 1.
    ///
    /// Found by scanning n with a running remainder x^n mod f; the scan is
    /// bounded by q^deg - 1, which every f with f(0) != 0 attains.
    pub fn order(&self) -> Result<u64> {
        match self.degree() {
            None | Some(0) => return Err(invalid("order of a constant polynomial")),
            _ => {}
        }
        if self.coeffs[0].is_zero() {
            return Err(invalid("order undefined when f(0) = 0"));
        }
        let f = self.monic();
        let x = Poly::x(&self.field);
        let one = Poly::one(&self.field);
        let bound = (self.field.size() as u128).pow(self.deg() as u32) - 1;
        let mut r = x.divmod_unchecked(&f)?.1;
        let mut n: u64 = 1;
        while r != one {
            r = r.mul_unchecked(&x).divmod_unchecked(&f)?.1;
            n += 1;
            if n as u128 > bound {
                unreachable!("order scan exceeded q^deg - 1");
            }
        }
        Ok(n)
    }
}

/// Operation selector for [`poly_arith`].
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
    DivMod,
    Gcd,
}

/// Result of [`poly_arith`]: a single polynomial or a (quotient, remainder)
/// pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PolyResult {
    Single(Poly),
    Pair(Poly, Poly),
}

pub fn poly_arith(op: PolyOp, a: &Poly, b: &Poly) -> Result<PolyResult> {
    Ok(match op {
        PolyOp::Add => PolyResult::Single(a.add(b)?),
        PolyOp::Sub => PolyResult::Single(a.sub(b)?),
        PolyOp::Mul => PolyResult::Single(a.mul(b)?),
        PolyOp::Gcd => PolyResult::Single(a.gcd(b)?),
        PolyOp::DivMod => {
            let (q, r) = a.divmod(b)?;
            PolyResult::Pair(q, r)
        }
    })
}

/// Smallest n >= 1 with f | x^n - 1.
pub fn poly_order(f: &Poly) -> Result<u64> {
    f.order()
}

pub fn compose_xk(f: &Poly, k: usize) -> Result<Poly> {
    f.compose_xk(k)
}
