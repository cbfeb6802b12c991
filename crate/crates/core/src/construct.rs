//! Explicit ANS presentations of F_p^* (p = 3 mod 4), the interleaving
//! extension to larger groups, and permutation presentations for
//! f = (x^m - 1)/(x - 1).
//!
//! Windows are written down from their integer patterns and reduced mod p;
//! the closed forms for s~ and f_s are then checked against the computed
//! values rather than used to build anything.

use serde_json::{json, Value};

use crate::arith;
use crate::classify::{classify_presentation, cyclic_ratio, is_ans_sequence, presents_subgroup, PresentationReport};
use crate::error::{invalid, Error, Result};
use crate::field::{make_field, Elem, Embedding, Field};
use crate::format::{elems_json, field_spec, poly_json, poly_to_string};
use crate::lrs::{annihilates, minimal_recursion, s_tilde, PeriodicSeq};
use crate::poly::{cyclotomic, Poly};

/// How the computed minimal recursion must relate to the claimed one.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Relation {
    Equal,
    /// f_computed divides f_claimed.
    Divides,
}

impl Relation {
    pub fn as_str(self) -> &'static str {
        match self {
            Relation::Equal => "equal",
            Relation::Divides => "divides",
        }
    }
}

#[derive(Clone, Debug)]
pub struct ConstructionResult {
    pub kind: &'static str,
    pub seq: PeriodicSeq,
    pub f_claimed: Poly,
    pub f_computed: Poly,
    pub relation: Relation,
    /// f_computed stands in `relation` to f_claimed.
    pub matches: bool,
    /// Named side conditions, each checked by exact computation.
    pub checks: Vec<(&'static str, bool)>,
    pub report: PresentationReport,
}

impl ConstructionResult {
    fn new(
        kind: &'static str,
        seq: PeriodicSeq,
        f_claimed: Poly,
        relation: Relation,
        checks: Vec<(&'static str, bool)>,
    ) -> Result<ConstructionResult> {
        let f_computed = minimal_recursion(&seq);
        let matches = match relation {
            Relation::Equal => f_computed == f_claimed,
            Relation::Divides => f_computed.divides(&f_claimed)?,
        };
        let report = classify_presentation(&seq, Some(&f_claimed))?;
        Ok(ConstructionResult { kind, seq, f_claimed, f_computed, relation, matches, checks, report })
    }

    /// The recursion matches and every side condition holds.
    pub fn verified(&self) -> bool {
        self.matches && self.checks.iter().all(|&(_, ok)| ok)
    }

    pub fn to_json(&self) -> Value {
        let k = self.seq.field();
        let checks: serde_json::Map<String, Value> =
            self.checks.iter().map(|&(n, ok)| (n.to_string(), Value::Bool(ok))).collect();
        json!({
            "kind": self.kind,
            "field": field_spec(k),
            "window": elems_json(k, self.seq.window()),
            "f_claimed": poly_json(&self.f_claimed),
            "f_claimed_text": poly_to_string(&self.f_claimed),
            "f_computed": poly_json(&self.f_computed),
            "f_computed_text": poly_to_string(&self.f_computed),
            "relation": self.relation.as_str(),
            "match": self.matches,
            "checks": checks,
            "verified": self.verified(),
            "report": self.report.to_json(),
        })
    }
}

/// F_p for p prime, p = 3 mod 4, p >= 7; returns r = (p - 1)/2.
fn three_mod_four(p: u64) -> Result<(Field, i64)> {
    if !arith::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p % 4 != 3 || p < 7 {
        return Err(invalid(format!("need p = 3 mod 4 and p >= 7, got {p}")));
    }
    Ok((make_field(p, 1, None)?, (p as i64 - 1) / 2))
}

fn window_from_ints(k: &Field, xs: &[i64]) -> Result<PeriodicSeq> {
    PeriodicSeq::new(k, xs.iter().map(|&x| k.from_int(x)).collect())
}

/// x^n + c
fn binomial(k: &Field, n: usize, c: i64) -> Poly {
    let mut coeffs = vec![Elem::ZERO; n + 1];
    coeffs[n] = Elem::ONE;
    coeffs[0] = k.add(coeffs[0], k.from_int(c));
    Poly::from_elems(k, coeffs)
}

/// (x + 1)(x^r - 1)/(x - 1)
fn halving_poly(k: &Field, r: usize) -> Result<Poly> {
    binomial(k, r, -1).exact_div(&binomial(k, 1, -1))?.mul(&binomial(k, 1, 1))
}

/// Window 1, -2, 3, -4, ..., -(r-1), r, -r, r-1, ..., 2, -1 over F_p.
pub fn halving_construction(p: u64) -> Result<ConstructionResult> {
    let (k, r) = three_mod_four(p)?;
    let mut xs: Vec<i64> = (1..=r).map(|i| if i % 2 == 1 { i } else { -i }).collect();
    xs.extend((1..=r).rev().map(|j| if j % 2 == 1 { -j } else { j }));
    let seq = window_from_ints(&k, &xs)?;
    let ru = r as usize;

    // s~ = (x^{r+1} - 1)(x^r + 1)/(x + 1)^2
    let x1 = binomial(&k, 1, 1);
    let closed = binomial(&k, ru + 1, -1).mul(&binomial(&k, ru, 1))?.exact_div(&x1.mul(&x1)?)?;
    let group_full = presents_subgroup(&seq).is_some_and(|g| g.order() == p - 1);
    let checks = vec![
        ("s_tilde_closed_form", s_tilde(&seq) == closed),
        ("group_is_full", group_full),
        ("ans_sequence", is_ans_sequence(&seq)?),
    ];
    ConstructionResult::new("halving", seq, halving_poly(&k, ru)?, Relation::Equal, checks)
}

/// The two readings of the p = 11 mod 12 branch of the alternating
/// construction: (x+1)(x^r-1)/(x-1) divided by, or multiplied by, x - 1/3.
pub fn alternating_branch_readings(p: u64) -> Result<(Poly, Poly)> {
    let (k, r) = three_mod_four(p)?;
    if p % 12 != 11 {
        return Err(invalid(format!("{p} is not 11 mod 12")));
    }
    let base = halving_poly(&k, r as usize)?;
    let third = Poly::linear(&k, k.inv(k.from_int(3))?);
    Ok((base.exact_div(&third)?, base.mul(&third)?))
}

/// Window 1, -1, 3, -3, ..., r-2, -(r-2); r; 2, -2, ..., r-1, -(r-1); r+1.
///
/// f_s is (x+1)(x^r-1)/(x-1) for p = 7 mod 12. For p = 11 mod 12 the
/// factor x - 1/3 is a common zero of x^r - 1 and the cofactor a(x) of s~,
/// so it drops out of f_s, leaving degree r - 1.
pub fn alternating_construction(p: u64) -> Result<ConstructionResult> {
    let (k, r) = three_mod_four(p)?;
    let mut xs = Vec::new();
    for i in (1..=r - 2).step_by(2) {
        xs.extend([i, -i]);
    }
    xs.push(r);
    for i in (2..=r - 1).step_by(2) {
        xs.extend([i, -i]);
    }
    xs.push(r + 1);
    let seq = window_from_ints(&k, &xs)?;
    let ru = r as usize;

    // a(x) = (x+1)(x^{r-2} + 3x^{r-4} + ... + (r-2)x) + r
    let mut inner = vec![Elem::ZERO; ru - 1];
    for i in 0..(ru - 1) / 2 {
        inner[ru - 2 - 2 * i] = k.from_int(2 * i as i64 + 1);
    }
    let a = Poly::from_elems(&k, inner).mul(&binomial(&k, 1, 1))?.add(&Poly::constant(&k, k.from_int(r)))?;
    let closed = a.mul(&binomial(&k, 1, -1))?.mul(&binomial(&k, ru, 1))?.exact_div(&binomial(&k, 1, 1))?;
    // (x^2 - 1) a(x) - (x^2 + 1)(x^r - 1)/(x - 1) = -(r-1)x - (r+1)
    let lhs = binomial(&k, 2, -1)
        .mul(&a)?
        .sub(&binomial(&k, 2, 1).mul(&binomial(&k, ru, -1).exact_div(&binomial(&k, 1, -1))?)?)?;
    let rhs = Poly::from_ints(&k, &[-(r + 1), -(r - 1)]);

    let claimed = if p % 12 == 7 { halving_poly(&k, ru)? } else { alternating_branch_readings(p)?.0 };
    let group_full = presents_subgroup(&seq).is_some_and(|g| g.order() == p - 1);
    let checks = vec![
        ("s_tilde_closed_form", s_tilde(&seq) == closed),
        ("cofactor_identity", lhs == rhs),
        ("group_is_full", group_full),
        ("ans_sequence", is_ans_sequence(&seq)?),
    ];
    ConstructionResult::new("alternating", seq, claimed, Relation::Equal, checks)
}

/// Interleaves an ANS window of period m with coset representatives
/// e_0, ..., e_{k-1} of M in the order-km group L: t_{kj+i} = e_i s_j.
/// `emb` maps the window's field into the field holding L and the reps.
pub fn extend_ans_with(s: &PeriodicSeq, emb: &Embedding, reps: &[Elem]) -> Result<ConstructionResult> {
    if emb.base() != s.field() {
        return Err(Error::MixedFields);
    }
    let ext = emb.ext();
    let m = s.period() as u64;
    let k = reps.len() as u64;
    let km = k * m;
    if k == 0 {
        return Err(invalid("need at least one coset representative"));
    }
    if km.is_multiple_of(ext.characteristic()) {
        return Err(Error::NotCoprime { m: km, p: ext.characteristic() });
    }
    if !(ext.size() - 1).is_multiple_of(km) {
        return Err(invalid(format!("no subgroup of order {km} in {}", field_spec(ext))));
    }
    if !is_ans_sequence(s)? {
        return Err(invalid("base window is not ANS"));
    }
    for (i, &e) in reps.iter().enumerate() {
        if !ext.contains(e) || e.is_zero() || ext.pow(e, km) != Elem::ONE {
            return Err(invalid(format!("representative {i} is not in the order-{km} group")));
        }
        for &f in &reps[..i] {
            if ext.pow(ext.div(e, f)?, m) == Elem::ONE {
                return Err(invalid("representatives share a coset"));
            }
        }
    }
    let base = emb.embed_all(s.window());
    let window: Vec<Elem> = base.iter().flat_map(|&sj| reps.iter().map(move |&e| ext.mul(e, sj))).collect();
    let t = PeriodicSeq::new(ext, window)?;

    let s_lift = s_tilde(s).lift(emb)?;
    let e_tilde = Poly::from_elems(ext, reps.iter().rev().copied().collect());
    let interleave = s_tilde(&t) == e_tilde.mul(&s_lift.compose_xk(k as usize)?)?;
    let f_lift = minimal_recursion(s).lift(emb)?;
    let g = f_lift.compose_xk(k as usize)?;
    let group_ok = presents_subgroup(&t).is_some_and(|l| l.order() == km);
    let checks = vec![
        ("interleave_identity", interleave),
        ("group_is_l", group_ok),
        ("cyclotomic_divides", cyclotomic(km, ext)?.divides(&s_tilde(&t))?),
        ("ans_sequence", is_ans_sequence(&t)?),
        ("satisfies_f_xk", annihilates(&g, &t)),
    ];
    ConstructionResult::new("extend", t, g, Relation::Divides, checks)
}

/// [`extend_ans_with`] in the smallest extension holding an order-km
/// group L, with representatives g^0, ..., g^{k-1} for g the smallest
/// generator of L.
pub fn extend_ans(s: &PeriodicSeq, k: usize) -> Result<ConstructionResult> {
    if k == 0 {
        return Err(invalid("k must be at least 1"));
    }
    let km = (k * s.period()) as u64;
    let (ext, emb) = s.field().host_extension(km)?;
    let g = ext.primitive_mth_root(km).ok_or(Error::NoRootOfUnity { m: km, q: ext.size() })?;
    let reps: Vec<Elem> = (0..k as u64).map(|i| ext.pow(g, i)).collect();
    extend_ans_with(s, &emb, &reps)
}

/// Window 1, alpha^{perm[0]}, ..., alpha^{perm[m-2]} for alpha the smallest
/// primitive m-th root of unity, taken in the smallest extension of `field`
/// that has one. `perm` lists the images of 1, ..., m-1.
pub fn permutation_presentation(m: usize, field: &Field, perm: &[usize]) -> Result<PeriodicSeq> {
    if m < 4 {
        return Err(invalid("permutation presentations need m >= 4"));
    }
    let mut sorted = perm.to_vec();
    sorted.sort();
    if sorted != (1..m).collect::<Vec<_>>() {
        return Err(invalid(format!("not a permutation of 1..{}", m - 1)));
    }
    let (ext, _) = field.host_extension(m as u64)?;
    let alpha = ext.primitive_mth_root(m as u64).ok_or(Error::NoRootOfUnity { m: m as u64, q: ext.size() })?;
    let mut window = vec![Elem::ONE];
    window.extend(perm.iter().map(|&e| ext.pow(alpha, e as u64)));
    PeriodicSeq::new(&ext, window)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresentationCount {
    pub m: usize,
    /// Permutation windows with s_0 = 1 that satisfy (x^m - 1)/(x - 1).
    pub total: u64,
    pub cyclic: u64,
    pub factorial_bound: u64,
    pub phi: u64,
}

impl PresentationCount {
    pub fn holds(&self) -> bool {
        self.total >= self.factorial_bound && self.cyclic == self.phi
    }
}

/// Enumerates all (m-1)! permutation presentations, 4 <= m <= 8.
pub fn count_presentations(m: usize, field: &Field) -> Result<PresentationCount> {
    if !(4..=8).contains(&m) {
        return Err(invalid(format!("counting needs 4 <= m <= 8, got {m}")));
    }
    let (ext, _) = field.host_extension(m as u64)?;
    let f = Poly::x_pow_minus_one(&ext, m).exact_div(&Poly::linear(&ext, Elem::ONE))?;
    let mut perm: Vec<usize> = (1..m).collect();
    let (mut total, mut cyclic) = (0u64, 0u64);
    loop {
        let s = permutation_presentation(m, &ext, &perm)?;
        if annihilates(&f, &s) {
            total += 1;
        }
        if cyclic_ratio(&s).is_some() {
            cyclic += 1;
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    Ok(PresentationCount {
        m,
        total,
        cyclic,
        factorial_bound: arith::factorial(m as u64 - 1),
        phi: arith::euler_phi(m as u64),
    })
}

/// Advances to the next permutation in lexicographic order.
pub(crate) fn next_permutation<T: Ord>(xs: &mut [T]) -> bool {
    let Some(i) = (1..xs.len()).rev().find(|&i| xs[i - 1] < xs[i]) else {
        return false;
    };
    let j = (i..xs.len()).rev().find(|&j| xs[j] > xs[i - 1]).expect("pivot has a successor");
    xs.swap(i - 1, j);
    xs[i..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn codes(s: &PeriodicSeq) -> Vec<u32> {
        s.window().iter().map(|e| e.code()).collect()
    }

    #[test]
    fn halving_small() {
        let c = halving_construction(7).unwrap();
        assert_eq!(codes(&c.seq), vec![1, 5, 3, 4, 2, 6]);
        assert_eq!(c.f_computed, Poly::from_ints(c.seq.field(), &[1, 2, 2, 1]));
        assert!(c.verified());
        let c = halving_construction(11).unwrap();
        assert_eq!(codes(&c.seq), vec![1, 9, 3, 7, 5, 6, 4, 8, 2, 10]);
        assert!(c.verified());
        assert!(halving_construction(5).is_err());
        assert!(halving_construction(13).is_err());
    }

    #[test]
    fn alternating_small() {
        let c = alternating_construction(7).unwrap();
        assert_eq!(codes(&c.seq), vec![1, 6, 3, 2, 5, 4]);
        assert!(c.verified(), "{:?}", c.checks);
        let c = alternating_construction(11).unwrap();
        assert_eq!(codes(&c.seq), vec![1, 10, 3, 8, 5, 2, 9, 4, 7, 6]);
        assert!(c.verified(), "{:?}", c.checks);
        assert_eq!(c.f_computed.degree(), Some(4));
    }

    #[test]
    fn extend_identity_and_size_12() {
        let k = make_field(7, 1, None).unwrap();
        let s = PeriodicSeq::new(&k, [1, 3, 4, 6, 5, 2].map(Elem).to_vec()).unwrap();
        let c = extend_ans_with(&s, &Embedding::identity(&k), &[Elem::ONE]).unwrap();
        assert_eq!(c.seq, s);
        assert!(c.verified());

        let c = extend_ans(&s, 2).unwrap();
        assert_eq!(c.seq.field().size(), 49);
        assert_eq!(c.seq.period(), 12);
        assert!(c.verified(), "{:?}", c.checks);
        assert_eq!(c.f_claimed, Poly::from_ints(c.seq.field(), &[1, 0, 2, 0, 2, 0, 1]));
    }

    #[test]
    fn bad_transversal() {
        let k = make_field(7, 1, None).unwrap();
        let s = PeriodicSeq::new(&k, [1, 3, 4, 6, 5, 2].map(Elem).to_vec()).unwrap();
        let (ext, emb) = k.extension(2).unwrap();
        let e = emb.embed(Elem(3));
        assert!(extend_ans_with(&s, &emb, &[Elem::ONE, e]).is_err());
        assert!(extend_ans_with(&s, &emb, &[Elem::ONE, Elem::ZERO]).is_err());
        let g = ext.primitive_mth_root(12).unwrap();
        assert!(extend_ans_with(&s, &emb, &[Elem::ONE, g]).is_ok());
    }

    #[test]
    fn permutations() {
        let f5 = make_field(5, 1, None).unwrap();
        let f = Poly::from_ints(&f5, &[1, 1, 1, 1]);
        for perm in [[2, 1, 3], [1, 3, 2]] {
            let s = permutation_presentation(4, &f5, &perm).unwrap();
            assert_eq!(minimal_recursion(&s), f);
        }
        let s = permutation_presentation(4, &f5, &[1, 2, 3]).unwrap();
        assert_eq!(cyclic_ratio(&s), Some(Elem(2)));
        assert!(permutation_presentation(3, &f5, &[1, 2]).is_err());
        assert!(permutation_presentation(4, &f5, &[1, 1, 3]).is_err());
    }

    #[test]
    fn counting() {
        let f5 = make_field(5, 1, None).unwrap();
        let c = count_presentations(4, &f5).unwrap();
        assert_eq!((c.total, c.cyclic), (6, 2));
        assert!(c.holds());
        let f11 = make_field(11, 1, None).unwrap();
        let c = count_presentations(5, &f11).unwrap();
        assert_eq!((c.total, c.cyclic), (24, 4));
        assert!(count_presentations(3, &f5).is_err());
    }

    #[test]
    fn next_permutation_order() {
        let mut v = vec![1, 2, 3];
        let mut seen = vec![v.clone()];
        while next_permutation(&mut v) {
            seen.push(v.clone());
        }
        assert_eq!(seen.len(), 6);
        assert_eq!(seen[1], vec![1, 3, 2]);
    }
}
