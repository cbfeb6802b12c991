//! Embedded golden corpus: worked examples with known answers, re-run on
//! demand by `lrslab selftest`.
//!
//! Each case names one library operation, its text inputs and the expected
//! rendering of the answer. An expected value of `error` means the
//! operation must fail.

use serde_json::{json, Value};

use crate::arith;
use crate::classify::{
    check_prime_power_rule, classify_presentation, degree2_distinct_root_candidates, is_ans_polynomial,
    is_ans_sequence, is_f_sequence, presents_subgroup,
};
use crate::construct::{alternating_construction, count_presentations, extend_ans, halving_construction};
use crate::error::Result;
use crate::format::{elem_to_string, parse_field_spec, parse_poly, parse_seq, poly_to_string};
use crate::lrs::{
    binom_int, binom_seq_period, detect_period, iterate, lcm_order_check, s_of_nj_identity, PeriodicSeq, Recursion,
};
use crate::poly::{cyclotomic, roots_with_mult};
use crate::search::{search_ans, search_nonstandard_quadratic, verify_hit, SearchSpec, DEFAULT_QUAD_BOUND};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Op {
    Gcd { field: String, a: String, b: String },
    Cyclotomic { m: u64, p: u64 },
    PolyOrder { field: String, f: String },
    Roots { field: String, f: String, max_degree: u32 },
    Binomial { n: i64, j: i64 },
    Iterate { field: String, f: String, seed: String, count: usize },
    DetectPeriod { field: String, f: String, seed: String },
    STilde { field: String, window: String },
    ImpulseRecursion { m: usize, p: u64 },
    MinPoly { field: String, window: String },
    LcmOrder { field: String, window: String },
    SOfNj { m: i64, n: i64, j: i64, p: u64 },
    BinomialPeriod { j: u64, p: u64 },
    IsFSequence { field: String, window: String, f: String },
    PresentsSubgroup { field: String, window: String },
    Classify { field: String, window: String },
    IsAnsSequence { field: String, window: String },
    IsAnsPolynomial { field: String, f: String, m: u64 },
    PrimePowerRule { m: u64 },
    KnownFamily { field: String, f: String },
    Halving { p: u64 },
    Alternating { p: u64 },
    Extend { field: String, window: String, k: usize },
    CountPresentations { m: usize, p: u64 },
    HostDegree { m: u64, p: u64 },
    SearchAns { m: u64, p_max: u64 },
    QuadFamily { q: u64 },
    VerifyHit { field: String, window: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Golden {
    pub id: String,
    /// Coarse module grouping used by `--filter`.
    pub group: String,
    pub op: Op,
    pub expected: String,
}

fn seq(field: &str, window: &str) -> Result<PeriodicSeq> {
    let k = parse_field_spec(field)?;
    PeriodicSeq::new(&k, parse_seq(&k, window)?)
}

fn list<T>(xs: impl IntoIterator<Item = T>, f: impl Fn(T) -> String) -> String {
    xs.into_iter().map(f).collect::<Vec<_>>().join(",")
}

/// Renders the answer of one operation.
pub fn evaluate(op: &Op) -> Result<String> {
    Ok(match op {
        Op::Gcd { field, a, b } => {
            let k = parse_field_spec(field)?;
            poly_to_string(&parse_poly(&k, a)?.gcd(&parse_poly(&k, b)?)?)
        }
        Op::Cyclotomic { m, p } => poly_to_string(&cyclotomic(*m, &parse_field_spec(&p.to_string())?)?),
        Op::PolyOrder { field, f } => {
            let k = parse_field_spec(field)?;
            parse_poly(&k, f)?.order()?.to_string()
        }
        Op::Roots { field, f, max_degree } => {
            let k = parse_field_spec(field)?;
            let r = roots_with_mult(&parse_poly(&k, f)?, *max_degree)?;
            let ext = r.field();
            format!(
                "degree={} roots={} split={}",
                r.extension_degree(),
                list(r.entries(), |&(a, mult)| format!("{}^{mult}", elem_to_string(ext, a))),
                r.splits()
            )
        }
        Op::Binomial { n, j } => binom_int(*n, *j).to_string(),
        Op::Iterate { field, f, seed, count } => {
            let k = parse_field_spec(field)?;
            let rec = Recursion::normalized(&parse_poly(&k, f)?)?;
            list(iterate(&rec, &parse_seq(&k, seed)?, *count)?, |a| elem_to_string(&k, a))
        }
        Op::DetectPeriod { field, f, seed } => {
            let k = parse_field_spec(field)?;
            let rec = Recursion::normalized(&parse_poly(&k, f)?)?;
            detect_period(&rec, &parse_seq(&k, seed)?)?.to_string()
        }
        Op::STilde { field, window } => poly_to_string(&seq(field, window)?.s_tilde()),
        Op::ImpulseRecursion { m, p } => {
            poly_to_string(&PeriodicSeq::impulse(*m, &parse_field_spec(&p.to_string())?)?.minimal_recursion())
        }
        Op::MinPoly { field, window } => poly_to_string(&seq(field, window)?.minimal_recursion()),
        Op::LcmOrder { field, window } => lcm_order_check(&seq(field, window)?)?.to_string(),
        Op::SOfNj { m, n, j, p } => s_of_nj_identity(*m, *n, *j, *p)?.to_string(),
        Op::BinomialPeriod { j, p } => binom_seq_period(*j, *p)?.to_string(),
        Op::IsFSequence { field, window, f } => {
            let s = seq(field, window)?;
            is_f_sequence(&s, &parse_poly(s.field(), f)?)?.to_string()
        }
        Op::PresentsSubgroup { field, window } => {
            let s = seq(field, window)?;
            match presents_subgroup(&s) {
                Some(g) => format!("order={}", g.order()),
                None => "none".to_string(),
            }
        }
        Op::Classify { field, window } => {
            let r = classify_presentation(&seq(field, window)?, None)?;
            format!(
                "group={} cyclic={} f_s={} ans={} {}",
                r.group.as_ref().map_or(0, |g| g.order()),
                r.is_cyclic(),
                poly_to_string(&r.f_s),
                r.ans_sequence,
                r.standardness.map_or("not-a-presentation", |s| s.as_str())
            )
        }
        Op::IsAnsSequence { field, window } => is_ans_sequence(&seq(field, window)?)?.to_string(),
        Op::IsAnsPolynomial { field, f, m } => {
            let k = parse_field_spec(field)?;
            is_ans_polynomial(&parse_poly(&k, f)?, *m)?.to_string()
        }
        Op::PrimePowerRule { m } => check_prime_power_rule(*m).to_string(),
        Op::KnownFamily { field, f } => {
            let k = parse_field_spec(field)?;
            let c = degree2_distinct_root_candidates(&parse_poly(&k, f)?)?;
            format!("known_family={} non_cyclic={}", c.known_family.is_some(), c.non_cyclic > 0)
        }
        Op::Halving { p } => {
            let r = halving_construction(*p)?;
            format!(
                "window={} f_s={} verified={}",
                list(r.seq.window(), |a| a.code().to_string()),
                poly_to_string(&r.f_computed),
                r.verified()
            )
        }
        Op::Alternating { p } => {
            let r = alternating_construction(*p)?;
            format!("f_s={} verified={}", poly_to_string(&r.f_computed), r.verified())
        }
        Op::Extend { field, window, k } => {
            let r = extend_ans(&seq(field, window)?, *k)?;
            format!("size={} f_claimed={} verified={}", r.seq.period(), poly_to_string(&r.f_claimed), r.verified())
        }
        Op::CountPresentations { m, p } => {
            let c = count_presentations(*m, &parse_field_spec(&p.to_string())?)?;
            format!("total={} cyclic={}", c.total, c.cyclic)
        }
        Op::HostDegree { m, p } => {
            if *m % *p == 0 {
                return Err(crate::Error::NotCoprime { m: *m, p: *p });
            }
            arith::order_mod(*p % *m, *m).unwrap_or(1).to_string()
        }
        Op::SearchAns { m, p_max } => {
            let r = search_ans(&SearchSpec::new(*m, *p_max).exhaustive(), Some(1))?;
            if let Some(reason) = &r.short_circuit {
                return Ok(format!("short-circuit: {reason}"));
            }
            let mut parts = Vec::new();
            for f in r.fields.iter().filter(|f| !f.classes.is_empty()) {
                let k = f.host.field.as_ref().expect("fields with hits exist");
                for c in &f.classes {
                    parts.push(format!(
                        "p={} ({}) f_s={}",
                        f.host.p,
                        list(&c.canonical, |&a| elem_to_string(k, a)),
                        poly_to_string(&c.f_s)
                    ));
                }
            }
            parts.join("; ")
        }
        Op::QuadFamily { q } => {
            let r = search_nonstandard_quadratic(*q, DEFAULT_QUAD_BOUND)?;
            format!("family={} complete={} verified={}", r.family.len(), r.family_complete(), r.all_verified())
        }
        Op::VerifyHit { field, window } => {
            let s = seq(field, window)?;
            verify_hit(s.window(), s.field()).to_string()
        }
    })
}

fn g(id: &str, group: &str, op: Op, expected: &str) -> Golden {
    Golden { id: id.to_string(), group: group.to_string(), op, expected: expected.to_string() }
}

fn s(x: &str) -> String {
    x.to_string()
}

// 1, w, 1+w, 1-w, -1, -w, -1-w, -1+w with w^2 = -1; w is not a zero of
// x^2 - x - 1, so the window is not geometric
const F9_FIB: &str = "1,w,1+w,1+2*w,2,2*w,2+2*w,2+w";
const M6: &str = "1,3,4,6,5,2";
const M6_F: &str = "x^3+2*x^2+2*x+1";

pub fn default_corpus() -> Vec<Golden> {
    use Op::*;
    vec![
        g(
            "poly/gcd-m6",
            "poly",
            Gcd { field: s("7"), a: s("x^6-1"), b: s("x^5+3*x^4+4*x^3+6*x^2+5*x+2") },
            "x^3+5*x^2+2*x+6",
        ),
        g("poly/cyclotomic-1", "poly", Cyclotomic { m: 1, p: 7 }, "x+6"),
        g("poly/cyclotomic-6-f7", "poly", Cyclotomic { m: 6, p: 7 }, "x^2+6*x+1"),
        g("poly/cyclotomic-4-f3", "poly", Cyclotomic { m: 4, p: 3 }, "x^2+1"),
        g("poly/order-fibonacci-f3", "poly", PolyOrder { field: s("3"), f: s("x^2-x-1") }, "8"),
        g(
            "poly/roots-fibonacci-f9",
            "poly",
            Roots { field: s("3"), f: s("x^2-x-1"), max_degree: 2 },
            "degree=2 roots=2+w^1,2+2*w^1 split=true",
        ),
        g("lrs/binomial-n0-neg", "lrs", Binomial { n: -3, j: 0 }, "1"),
        g("lrs/binomial-n0-zero", "lrs", Binomial { n: 0, j: 0 }, "1"),
        g("lrs/binomial-n0-pos", "lrs", Binomial { n: 4, j: 0 }, "1"),
        g(
            "lrs/iterate-fibonacci-f9",
            "lrs",
            Iterate { field: s("3^2"), f: s("x^2-x-1"), seed: s("1,w"), count: 6 },
            "1+w,1+2*w,2,2*w,2+2*w,2+w",
        ),
        g("lrs/iterate-m6", "lrs", Iterate { field: s("7"), f: s(M6_F), seed: s("1,3,4"), count: 3 }, "6,5,2"),
        g("lrs/period-fibonacci-f9", "lrs", DetectPeriod { field: s("3^2"), f: s("x^2-x-1"), seed: s("1,w") }, "8"),
        g("lrs/period-m6", "lrs", DetectPeriod { field: s("7"), f: s(M6_F), seed: s("1,3,4") }, "6"),
        g("lrs/s-tilde-m6", "lrs", STilde { field: s("7"), window: s(M6) }, "x^5+3*x^4+4*x^3+6*x^2+5*x+2"),
        g("lrs/impulse-4-f3", "lrs", ImpulseRecursion { m: 4, p: 3 }, "x^4+2"),
        g("lrs/impulse-6-f7", "lrs", ImpulseRecursion { m: 6, p: 7 }, "x^6+6"),
        g("lrs/minpoly-m6", "lrs", MinPoly { field: s("7"), window: s(M6) }, M6_F),
        g("lrs/lcm-order-m6", "lrs", LcmOrder { field: s("7"), window: s(M6) }, "6"),
        g("lrs/s-nj-low", "lrs", SOfNj { m: 3, n: 5, j: 1, p: 7 }, "0"),
        g("lrs/s-nj-high", "lrs", SOfNj { m: 2, n: 4, j: 3, p: 5 }, "2"),
        g("lrs/binomial-period-1-3", "lrs", BinomialPeriod { j: 1, p: 3 }, "3"),
        g("lrs/binomial-period-3-2", "lrs", BinomialPeriod { j: 3, p: 2 }, "4"),
        g("lrs/binomial-period-4-5", "lrs", BinomialPeriod { j: 4, p: 5 }, "5"),
        g("classify/f-sequence-m6", "classify", IsFSequence { field: s("7"), window: s(M6), f: s(M6_F) }, "true"),
        g("classify/presents-m6", "classify", PresentsSubgroup { field: s("7"), window: s(M6) }, "order=6"),
        g(
            "classify/fibonacci-f9",
            "classify",
            Classify { field: s("3^2"), window: s(F9_FIB) },
            "group=8 cyclic=false f_s=x^2+2*x+2 ans=false non-standard-presentation",
        ),
        g(
            "classify/m6",
            "classify",
            Classify { field: s("7"), window: s(M6) },
            "group=6 cyclic=false f_s=x^3+2*x^2+2*x+1 ans=true non-standard-presentation",
        ),
        g("classify/ans-m6", "classify", IsAnsSequence { field: s("7"), window: s(M6) }, "true"),
        g("classify/ans-poly-m6", "classify", IsAnsPolynomial { field: s("7"), f: s(M6_F), m: 6 }, "true"),
        g("classify/prime-power-8", "classify", PrimePowerRule { m: 8 }, "true"),
        g("classify/prime-power-6", "classify", PrimePowerRule { m: 6 }, "false"),
        g("classify/prime-power-14", "classify", PrimePowerRule { m: 14 }, "false"),
        g(
            "classify/known-family-f9",
            "classify",
            KnownFamily { field: s("3^2"), f: s("x^2-w") },
            "known_family=true non_cyclic=true",
        ),
        g("construct/halving-7", "construct", Halving { p: 7 }, "window=1,5,3,4,2,6 f_s=x^3+2*x^2+2*x+1 verified=true"),
        g("construct/alternating-7", "construct", Alternating { p: 7 }, "f_s=x^3+2*x^2+2*x+1 verified=true"),
        g(
            "construct/extend-m6-k2",
            "construct",
            Extend { field: s("7"), window: s(M6), k: 2 },
            "size=12 f_claimed=x^6+2*x^4+2*x^2+1 verified=true",
        ),
        g("construct/m4-window-a", "construct", MinPoly { field: s("5"), window: s("1,4,2,3") }, "x^3+x^2+x+1"),
        g("construct/m4-window-b", "construct", MinPoly { field: s("5"), window: s("1,2,3,4") }, "x^3+x^2+x+1"),
        g("construct/count-m4-f5", "construct", CountPresentations { m: 4, p: 5 }, "total=6 cyclic=2"),
        g("construct/count-m3-rejected", "construct", CountPresentations { m: 3, p: 7 }, "error"),
        g("search/host-m6-f7", "search", HostDegree { m: 6, p: 7 }, "1"),
        g("search/m6-p50", "search", SearchAns { m: 6, p_max: 50 }, "p=7 (1,3,4,6,5,2) f_s=x^3+2*x^2+2*x+1"),
        g("search/m8-short-circuit", "search", SearchAns { m: 8, p_max: 100 }, "short-circuit: prime power size"),
        g("search/quad-family-f9", "search", QuadFamily { q: 9 }, "family=2 complete=true verified=true"),
        g("search/verify-m6", "search", VerifyHit { field: s("7"), window: s(M6) }, "true"),
        g("search/verify-cyclic", "search", VerifyHit { field: s("7"), window: s("1,3,2,6,4,5") }, "false"),
    ]
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub id: String,
    pub group: String,
    pub expected: String,
    pub got: String,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SelftestReport {
    pub outcomes: Vec<Outcome>,
}

impl SelftestReport {
    pub fn all_passed(&self) -> bool {
        self.outcomes.iter().all(|o| o.pass)
    }

    pub fn failures(&self) -> usize {
        self.outcomes.iter().filter(|o| !o.pass).count()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "passed": self.outcomes.len() - self.failures(),
            "failed": self.failures(),
            "all_passed": self.all_passed(),
            "cases": self.outcomes.iter().map(|o| json!({
                "id": o.id,
                "group": o.group,
                "expected": o.expected,
                "got": o.got,
                "pass": o.pass,
            })).collect::<Vec<_>>(),
        })
    }
}

/// Runs the cases whose group or id starts with `filter` (all when `None`).
pub fn run_selftest(corpus: &[Golden], filter: Option<&str>) -> SelftestReport {
    let outcomes = corpus
        .iter()
        .filter(|c| filter.is_none_or(|f| c.group == f || c.id.starts_with(f)))
        .map(|c| {
            let (got, pass) = match evaluate(&c.op) {
                Ok(v) => (v.clone(), v == c.expected),
                Err(e) => (format!("error: {e}"), c.expected == "error"),
            };
            Outcome { id: c.id.clone(), group: c.group.clone(), expected: c.expected.clone(), got, pass }
        })
        .collect();
    SelftestReport { outcomes }
}
