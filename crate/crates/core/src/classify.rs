//! Subgroup presentations: does a window list a multiplicative subgroup,
//! is the presentation cyclic, and is the subgroup automatically
//! non-standard (ANS).
//!
//! A window presents M when its m entries are distinct, nonzero and form a
//! group. The presentation is standard when s_{n+1} = alpha s_n for a fixed
//! alpha. M is ANS when Phi_{p,m} divides s~.

use serde_json::{json, Value};

use crate::arith;
use crate::error::{invalid, Error, Result};
use crate::field::{Elem, Field, MulGroup};
use crate::format::{elem_json, elems_json, field_spec, poly_json, poly_to_string};
use crate::lrs::{minimal_recursion, s_tilde, PeriodicSeq, Recursion};
use crate::poly::{cyclotomic, roots_with_mult, Poly, RootSpectrum, DEFAULT_MAX_EXT_DEGREE};

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Standardness {
    Standard,
    NonStandard,
}

impl Standardness {
    pub fn as_str(self) -> &'static str {
        match self {
            Standardness::Standard => "standard-presentation",
            Standardness::NonStandard => "non-standard-presentation",
        }
    }
}

/// Everything the classifier knows about one window.
#[derive(Clone, Debug)]
pub struct PresentationReport {
    pub seq: PeriodicSeq,
    pub m: usize,
    pub s_tilde: Poly,
    pub f_s: Poly,
    pub group: Option<MulGroup>,
    pub cyclic_ratio: Option<Elem>,
    pub zeros: RootSpectrum,
    pub zeros_generate_group: bool,
    pub ans_sequence: bool,
    pub ans_for_f: Option<bool>,
    /// `None` when the window does not present a group.
    pub standardness: Option<Standardness>,
}

impl PresentationReport {
    pub fn is_group(&self) -> bool {
        self.group.is_some()
    }

    pub fn is_cyclic(&self) -> bool {
        self.cyclic_ratio.is_some()
    }

    pub fn to_json(&self) -> Value {
        let k = self.seq.field();
        let zk = self.zeros.field();
        let roots: Vec<Value> = self
            .zeros
            .entries()
            .iter()
            .map(|&(r, mult)| json!({ "root": elem_json(zk, r), "multiplicity": mult }))
            .collect();
        json!({
            "field": field_spec(k),
            "window": elems_json(k, self.seq.window()),
            "m": self.m,
            "s_tilde": poly_json(&self.s_tilde),
            "f_s": poly_json(&self.f_s),
            "f_s_text": poly_to_string(&self.f_s),
            "is_group": self.is_group(),
            "group": self.group.as_ref().map(|g| elems_json(k, g.elements())),
            "is_cyclic": self.is_cyclic(),
            "cyclic_ratio": self.cyclic_ratio.map(|a| elem_json(k, a)),
            "zeros": {
                "field": field_spec(zk),
                "roots": roots,
                "split": self.zeros.splits(),
            },
            "zeros_generate_group": self.zeros_generate_group,
            "ans_sequence": self.ans_sequence,
            "ans_for_f": self.ans_for_f,
            "standardness": self.standardness.map(Standardness::as_str),
        })
    }
}

/// True iff f_s divides f, i.e. s satisfies the recursion c^{-1} f.
pub fn is_f_sequence(s: &PeriodicSeq, f: &Poly) -> Result<bool> {
    minimal_recursion(s).divides(f)
}

/// The window's entries as a group when they are m distinct nonzero m-th
/// roots of unity (which then make up the unique subgroup of order m).
pub fn presents_subgroup(s: &PeriodicSeq) -> Option<MulGroup> {
    let k = s.field();
    let m = s.period();
    let mut xs = s.window().to_vec();
    xs.sort();
    xs.dedup();
    if xs.len() != m || xs[0].is_zero() {
        return None;
    }
    if xs.iter().any(|&a| k.pow(a, m as u64) != Elem::ONE) {
        return None;
    }
    Some(MulGroup::from_sorted(k, xs))
}

/// alpha with s_{n+1} = alpha s_n for all n (cyclically); `None` for the
/// zero sequence.
pub fn cyclic_ratio(s: &PeriodicSeq) -> Option<Elem> {
    let k = s.field();
    let w = s.window();
    let i = w.iter().position(|a| !a.is_zero())?;
    let alpha = k.div(s.get(i as i64 + 1), w[i]).ok()?;
    (0..w.len() as i64).all(|n| s.get(n + 1) == k.mul(alpha, s.get(n))).then_some(alpha)
}

fn require_ans_params(m: u64, p: u64) -> Result<()> {
    if m == 0 || arith::gcd(m, p) != 1 {
        return Err(Error::NotCoprime { m, p });
    }
    Ok(())
}

/// (x^m - 1) / ((x - 1) Phi_{p,m}).
pub fn ans_divisor(m: u64, k: &Field) -> Result<Poly> {
    require_ans_params(m, k.characteristic())?;
    let mut d = Poly::x_pow_minus_one(k, m as usize).exact_div(&Poly::linear(k, Elem::ONE))?;
    if m > 1 {
        d = d.exact_div(&cyclotomic(m, k)?)?;
    }
    Ok(d)
}

/// True iff the window presents a subgroup of size m > 1 and Phi_{p,m}
/// divides s~. Errors when p divides m.
pub fn is_ans_sequence(s: &PeriodicSeq) -> Result<bool> {
    let m = s.period() as u64;
    require_ans_params(m, s.field().characteristic())?;
    if m == 1 || presents_subgroup(s).is_none() {
        return Ok(false);
    }
    cyclotomic(m, s.field())?.divides(&s_tilde(s))
}

/// True iff f divides (x^m - 1) / ((x - 1) Phi_{p,m}), m > 1.
pub fn is_ans_polynomial(f: &Poly, m: u64) -> Result<bool> {
    require_ans_params(m, f.field().characteristic())?;
    if m == 1 || f.is_zero() {
        return Ok(false);
    }
    f.divides(&ans_divisor(m, f.field())?)
}

/// Sizes that are prime powers never carry an ANS subgroup.
pub fn check_prime_power_rule(m: u64) -> bool {
    arith::is_prime_power(m)
}

pub fn classify_presentation(s: &PeriodicSeq, f: Option<&Poly>) -> Result<PresentationReport> {
    let k = s.field();
    if let Some(f) = f {
        if f.field() != k {
            return Err(Error::MixedFields);
        }
    }
    let m = s.period();
    let f_s = minimal_recursion(s);
    let group = presents_subgroup(s);
    let ratio = cyclic_ratio(s);
    let zeros = roots_with_mult(&f_s, DEFAULT_MAX_EXT_DEGREE)?;
    let zeros_generate_group = match &group {
        Some(g) if zeros.splits() => {
            let ext = zeros.field();
            let generated = ext.group_generated(&zeros.roots())?;
            let mut window = zeros.embedding().embed_all(g.elements());
            window.sort();
            generated.elements() == window.as_slice()
        }
        _ => false,
    };
    let coprime = arith::gcd(m as u64, k.characteristic()) == 1;
    let ans_sequence = coprime && is_ans_sequence(s)?;
    let ans_for_f = match f {
        Some(f) => Some(coprime && group.is_some() && m > 1 && is_f_sequence(s, f)? && is_ans_polynomial(f, m as u64)?),
        None => None,
    };
    let standardness =
        group.as_ref().map(|_| if ratio.is_some() { Standardness::Standard } else { Standardness::NonStandard });
    Ok(PresentationReport {
        seq: s.clone(),
        m,
        s_tilde: s_tilde(s),
        f_s,
        group,
        cyclic_ratio: ratio,
        zeros,
        zeros_generate_group,
        ans_sequence,
        ans_for_f,
        standardness,
    })
}

/// Walks every seed of the recursion `f` over its field and calls `visit`
/// with each minimal-period window whose entries are distinct and nonzero.
/// Returns the number of seeds tried.
pub(crate) fn for_each_distinct_window(f: &Poly, mut visit: impl FnMut(&[Elem])) -> Result<u64> {
    let rec = Recursion::new(f.monic())?;
    let k = f.field();
    let q = k.size() as usize;
    let deg = rec.order();
    let c = f.monic().coeffs().to_vec();
    let mut stamp = vec![0u64; q];
    let mut seed = vec![0u32; deg];
    let mut buf: Vec<Elem> = Vec::with_capacity(q + deg);
    let mut tried = 0u64;
    loop {
        tried += 1;
        let mark = tried;
        buf.clear();
        buf.extend(seed.iter().map(|&x| Elem(x)));
        let mut ok = buf.iter().all(|a| !a.is_zero());
        let mut window_len = None;
        if ok {
            for (i, a) in buf.iter().enumerate() {
                if stamp[a.code() as usize] == mark {
                    ok = false;
                    // a period shorter than the seed: s_0..s_{i-1} must repeat
                    if *a == buf[0] && (i..deg).all(|j| buf[j] == buf[j - i]) {
                        let next = rec.iterate(&buf, i)?;
                        if (0..i).all(|j| next[j] == buf[(deg + j) % i]) {
                            window_len = Some(i);
                        }
                    }
                    break;
                }
                stamp[a.code() as usize] = mark;
            }
        }
        // with distinct entries, the first repeat must be s_0 closing a period
        if ok && deg == 0 {
            ok = false;
        }
        if ok {
            loop {
                let n = buf.len();
                let mut t = Elem::ZERO;
                for i in 0..deg {
                    t = k.sub(t, k.mul(c[i], buf[n - deg + i]));
                }
                if t.is_zero() {
                    break;
                }
                if stamp[t.code() as usize] == mark {
                    if t != buf[0] {
                        break;
                    }
                    let len = n;
                    let back = rec.iterate(&buf[len - deg..], deg)?;
                    if back == buf[..deg] {
                        window_len = Some(len);
                    }
                    break;
                }
                stamp[t.code() as usize] = mark;
                buf.push(t);
            }
        }
        if let Some(len) = window_len {
            visit(&buf[..len]);
        }
        // next seed, little-endian counter over codes
        let mut i = 0;
        loop {
            if i == deg {
                return Ok(tried);
            }
            seed[i] += 1;
            if (seed[i] as usize) < q {
                break;
            }
            seed[i] = 0;
            i += 1;
        }
    }
}

/// Outcome of enumerating (x - a)^k-sequences that present subgroups.
#[derive(Clone, Debug)]
pub struct RepeatedRootReport {
    pub a: Elem,
    pub k: u32,
    /// Spec strings of the fields whose seeds were enumerated.
    pub fields: Vec<String>,
    pub seeds: u64,
    pub group_windows: u64,
    pub cyclic_with_ratio_a: u64,
    /// The groups seen, in the largest field checked.
    pub groups: Vec<Vec<Elem>>,
}

impl RepeatedRootReport {
    pub fn holds(&self) -> bool {
        self.group_windows == self.cyclic_with_ratio_a
    }
}

/// Enumerates every seed of f = (x - a)^k over F_{q^d} for d = 1..=`trials`
/// (skipping extensions with more than 10^8 seeds) and checks that each
/// window presenting a group is cyclic with ratio a, so M = <a>.
pub fn check_repeated_root_theorem(field: &Field, a: Elem, k: u32, trials: u32) -> Result<RepeatedRootReport> {
    if a.is_zero() {
        return Err(Error::ZeroElement);
    }
    if k < 1 || !field.contains(a) {
        return Err(invalid("need k >= 1 and a in the field"));
    }
    let base_f = Poly::from_roots(field, &vec![a; k as usize]);
    let mut report = RepeatedRootReport {
        a,
        k,
        fields: Vec::new(),
        seeds: 0,
        group_windows: 0,
        cyclic_with_ratio_a: 0,
        groups: Vec::new(),
    };
    for d in 1..=trials.max(1) {
        let qd = (field.size() as u128).pow(d);
        if qd >= crate::field::MAX_FIELD_SIZE as u128 || qd.pow(k) > 100_000_000 {
            break;
        }
        let (ext, emb) = field.extension(d)?;
        let f = base_f.lift(&emb)?;
        let ea = emb.embed(a);
        let mut groups = std::collections::BTreeSet::new();
        let (mut windows, mut good) = (0u64, 0u64);
        let seeds = for_each_distinct_window(&f, |w| {
            let m = w.len() as u64;
            if w.iter().all(|&x| ext.pow(x, m) == Elem::ONE) {
                windows += 1;
                let cyclic = (0..w.len()).all(|n| w[(n + 1) % w.len()] == ext.mul(ea, w[n]));
                if cyclic {
                    good += 1;
                }
                let mut g = w.to_vec();
                g.sort();
                groups.insert(g);
            }
        })?;
        report.fields.push(field_spec(&ext));
        report.seeds += seeds;
        report.group_windows += windows;
        report.cyclic_with_ratio_a += good;
        report.groups = groups.into_iter().collect();
    }
    Ok(report)
}

/// The subgroups a quadratic (x - a)(x - b) could present, with the
/// presentations actually found by enumerating every seed.
#[derive(Clone, Debug)]
pub struct QuadraticCandidates {
    pub a: Elem,
    pub b: Elem,
    /// <a, b>, <a>, <b>, deduplicated.
    pub candidates: Vec<MulGroup>,
    /// The only subgroup that can be non-standard for f.
    pub non_standard_candidate: MulGroup,
    /// Set when f = x^2 - c^2 with c of even order > 4, the family whose
    /// group <c> is known to be non-standard.
    pub known_family: Option<Elem>,
    pub presentations: u64,
    pub non_cyclic: u64,
    /// Every non-cyclic presentation found presents `non_standard_candidate`.
    pub consistent: bool,
}

pub fn degree2_distinct_root_candidates(f: &Poly) -> Result<QuadraticCandidates> {
    let k = f.field().clone();
    if f.degree() != Some(2) {
        return Err(invalid("expected a quadratic"));
    }
    let roots = crate::poly::roots::distinct_roots(f);
    let f = f.monic();
    let (a, b) = match roots.as_slice() {
        [a, b] => (*a, *b),
        [_] => return Err(invalid("repeated root: use the repeated-root check")),
        _ => return Err(invalid("quadratic does not split in its field")),
    };
    if a.is_zero() || b.is_zero() {
        return Err(Error::ZeroElement);
    }
    let ab = k.group_generated(&[a, b])?;
    let mut candidates = vec![ab.clone()];
    for g in [k.group_generated(&[a])?, k.group_generated(&[b])?] {
        if !candidates.contains(&g) {
            candidates.push(g);
        }
    }
    let known_family = [a, b].into_iter().find(|&c| {
        let ord = k.mul_order(c).unwrap_or(0);
        ord.is_multiple_of(2) && ord > 4 && k.neg(c) == if c == a { b } else { a }
    });
    let (mut presentations, mut non_cyclic, mut consistent) = (0u64, 0u64, true);
    for_each_distinct_window(&f, |w| {
        let m = w.len() as u64;
        if !w.iter().all(|&x| k.pow(x, m) == Elem::ONE) {
            return;
        }
        presentations += 1;
        let r = k.div(w[1 % w.len()], w[0]).expect("nonzero entries");
        let cyclic = (0..w.len()).all(|n| w[(n + 1) % w.len()] == k.mul(r, w[n]));
        if !cyclic {
            non_cyclic += 1;
            let mut g = w.to_vec();
            g.sort();
            if g != ab.elements() {
                consistent = false;
            }
        }
    })?;
    Ok(QuadraticCandidates {
        a,
        b,
        candidates,
        non_standard_candidate: ab,
        known_family,
        presentations,
        non_cyclic,
        consistent,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;

    fn f7() -> Field {
        make_field(7, 1, None).unwrap()
    }

    fn seq(k: &Field, xs: &[u32]) -> PeriodicSeq {
        PeriodicSeq::new(k, xs.iter().map(|&x| Elem(x)).collect()).unwrap()
    }

    #[test]
    fn f_sequence_examples() {
        let k = f7();
        let s = seq(&k, &[1, 3, 4, 6, 5, 2]);
        assert!(is_f_sequence(&s, &Poly::x_pow_minus_one(&k, 6)).unwrap());
        assert!(is_f_sequence(&s, &Poly::from_ints(&k, &[1, 2, 2, 1])).unwrap());
        assert!(is_f_sequence(&s, &Poly::from_ints(&k, &[3, 6, 6, 3])).unwrap());
        assert!(!is_f_sequence(&s, &Poly::from_ints(&k, &[-3, 1])).unwrap());
    }

    #[test]
    fn subgroup_examples() {
        let k = f7();
        let g = presents_subgroup(&seq(&k, &[1, 3, 4, 6, 5, 2])).unwrap();
        assert_eq!(g.order(), 6);
        let g = presents_subgroup(&seq(&k, &[1, 2, 4])).unwrap();
        assert_eq!(g.elements(), &[Elem(1), Elem(2), Elem(4)]);
        assert!(presents_subgroup(&seq(&k, &[1, 2, 3])).is_none());
    }

    #[test]
    fn classify_examples() {
        let k = f7();
        let r = classify_presentation(&seq(&k, &[1, 3, 2, 6, 4, 5]), None).unwrap();
        assert_eq!(r.cyclic_ratio, Some(Elem(3)));
        assert_eq!(r.f_s, Poly::from_ints(&k, &[-3, 1]));
        assert_eq!(r.standardness, Some(Standardness::Standard));
        assert!(!r.ans_sequence);

        let f = Poly::from_ints(&k, &[1, 2, 2, 1]);
        let r = classify_presentation(&seq(&k, &[1, 3, 4, 6, 5, 2]), Some(&f)).unwrap();
        assert!(r.ans_sequence);
        assert_eq!(r.ans_for_f, Some(true));
        assert!(r.zeros_generate_group);
        assert_eq!(r.standardness, Some(Standardness::NonStandard));

        let r = classify_presentation(&seq(&k, &[1, 2, 3]), None).unwrap();
        assert!(r.standardness.is_none() && !r.zeros_generate_group);
    }

    #[test]
    fn ans_examples() {
        let k = f7();
        assert!(is_ans_sequence(&seq(&k, &[1, 3, 4, 6, 5, 2])).unwrap());
        assert!(!is_ans_sequence(&seq(&k, &[1, 3, 2, 6, 4, 5])).unwrap());
        let f11 = make_field(11, 1, None).unwrap();
        assert!(is_ans_sequence(&seq(&f11, &[1, 9, 3, 7, 5, 6, 4, 8, 2, 10])).unwrap());

        assert!(is_ans_polynomial(&Poly::from_ints(&k, &[1, 2, 2, 1]), 6).unwrap());
        assert!(!is_ans_polynomial(&Poly::from_ints(&k, &[-1, 1]), 6).unwrap());
        // (x+1)(x^4+x^3+x^2+x+1)
        let g = Poly::from_ints(&f11, &[1, 2, 2, 2, 2, 1]);
        assert!(is_ans_polynomial(&g, 10).unwrap());
        assert_eq!(is_ans_polynomial(&g, 11).unwrap_err(), Error::NotCoprime { m: 11, p: 11 });
    }

    #[test]
    fn prime_power_rule() {
        assert!(check_prime_power_rule(8));
        assert!(!check_prime_power_rule(6));
        assert!(!check_prime_power_rule(14));
    }

    #[test]
    fn repeated_root_examples() {
        let k = f7();
        let r = check_repeated_root_theorem(&k, Elem(2), 3, 2).unwrap();
        assert!(r.holds() && r.group_windows > 0);
        assert_eq!(r.fields.len(), 2);
        assert_eq!(r.groups, vec![vec![Elem(1), Elem(2), Elem(4)]]);

        let f3 = make_field(3, 1, None).unwrap();
        let r = check_repeated_root_theorem(&f3, Elem(1), 2, 1).unwrap();
        assert!(r.holds());
        assert_eq!(r.groups, vec![vec![Elem(1)]]);

        let r = check_repeated_root_theorem(&k, Elem(3), 2, 2).unwrap();
        assert!(r.holds());
        assert_eq!(r.groups.len(), 1);
        assert_eq!(r.groups[0].len(), 6);
    }

    #[test]
    fn quadratic_candidates() {
        let k = f7();
        let f = Poly::from_roots(&k, &[Elem(2), Elem(4)]);
        let c = degree2_distinct_root_candidates(&f).unwrap();
        assert_eq!(c.non_standard_candidate.elements(), &[Elem(1), Elem(2), Elem(4)]);
        assert!(c.consistent);
        assert!(c.known_family.is_none());

        let f5 = make_field(5, 1, None).unwrap();
        let f = Poly::from_roots(&f5, &[Elem(1), Elem(2)]);
        let c = degree2_distinct_root_candidates(&f).unwrap();
        assert_eq!(c.candidates.len(), 2);
        assert_eq!(c.non_standard_candidate.order(), 4);

        // x^2 - a^2 with a of order 8 in F_9
        let f9 = make_field(3, 2, None).unwrap();
        let a = f9.primitive_mth_root(8).unwrap();
        let f = Poly::from_roots(&f9, &[a, f9.neg(a)]);
        let c = degree2_distinct_root_candidates(&f).unwrap();
        assert!(c.known_family.is_some());
        assert!(c.non_cyclic > 0 && c.consistent);
    }
}
