use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use super::Poly;
use crate::arith;
use crate::error::{Error, Result};
use crate::field::{make_field, Elem, Field};

type Cache = RwLock<HashMap<(u32, u64), Vec<u32>>>;

fn cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Prime-field coefficients of Phi_{p,m}, low-to-high.
fn prime_field_coeffs(p: u32, m: u64) -> Vec<u32> {
    if let Some(c) = cache().read().unwrap().get(&(p, m)) {
        return c.clone();
    }
    let fp = make_field(p as u64, 1, None).expect("p was validated by the caller's field");
    let mut acc = Poly::x_pow_minus_one(&fp, m as usize);
    for d in arith::divisors(m) {
        if d == m {
            continue;
        }
        let phi_d = Poly::from_elems(&fp, prime_field_coeffs(p, d).into_iter().map(Elem).collect());
        acc = acc.divmod_unchecked(&phi_d).expect("cyclotomic factors are nonzero").0;
    }
    let coeffs: Vec<u32> = acc.coeffs().iter().map(|c| c.code()).collect();
    cache().write().unwrap().insert((p, m), coeffs.clone());
    coeffs
}

/// The m-th cyclotomic polynomial reduced mod p, as a polynomial over
/// `field`: x^m - 1 divided by every Phi_d with d | m, d < m.
pub fn cyclotomic(m: u64, field: &Field) -> Result<Poly> {
    let p = field.characteristic();
    if m < 1 {
        return Err(crate::error::invalid("cyclotomic needs m >= 1"));
    }
    if m.is_multiple_of(p) {
        return Err(Error::NotCoprime { m, p });
    }
    let coeffs = prime_field_coeffs(p as u32, m);
    // prime subfield codes coincide with residues
    Ok(Poly::from_elems(field, coeffs.into_iter().map(Elem).collect()))
}
