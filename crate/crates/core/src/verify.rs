//! Formula-versus-oracle comparisons, one [`Check`] per claim.
//!
//! The per-instance functions are shared by the `verify` command and the
//! acceptance tests; [`run_suite`] sweeps a default grid.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde_json::{json, Value};

use crate::arith;
use crate::constacyclic::{self, ConstaCode};
use crate::error::{Error, Result};
use crate::factorizer::{factorize, FactorizationReport};
use crate::galois::{make_field, Elem, Field};
use crate::linalg::Subspace;
use crate::mds;
use crate::oracle::{self, DivisorFacts, CODEWORD_BOUND, DIVISOR_BOUND, SUBSPACE_BOUND};
use crate::poly::Poly;
use crate::quasitwisted::{self, QtCode, QtRing};

/// Above this many candidate divisors, irreducibility falls back to Rabin's test.
pub const TRIAL_DIVISION_BOUND: u64 = 2_000_000;

#[derive(Clone, Debug)]
pub struct Check {
    pub name: String,
    pub instance: String,
    pub pass: bool,
    pub detail: String,
    pub work: u64,
}

impl Check {
    fn new(name: &str, instance: &str, pass: bool, detail: impl Into<String>, work: u64) -> Self {
        Check {
            name: name.to_string(),
            instance: instance.to_string(),
            pass,
            detail: detail.into(),
            work,
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "check": self.name,
            "instance": self.instance,
            "pass": self.pass,
            "detail": self.detail,
            "work": self.work,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Factor,
    Hull,
    Counts,
    Mds,
    Qt,
}

impl Suite {
    pub const ALL: [Suite; 5] = [Suite::Factor, Suite::Hull, Suite::Counts, Suite::Mds, Suite::Qt];
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::Factor => "factor",
            Suite::Hull => "hull",
            Suite::Counts => "counts",
            Suite::Mds => "mds",
            Suite::Qt => "qt",
        })
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.to_string() == s)
            .ok_or_else(|| Error::invalid(format!("unknown suite {s:?}")))
    }
}

#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub suite: Suite,
    pub max_n: u64,
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn to_json(&self) -> Value {
        let failed: Vec<Value> = self.failures().map(Check::to_json).collect();
        json!({
            "suite": self.suite.to_string(),
            "max_n": self.max_n,
            "status": if self.passed() { "pass" } else { "fail" },
            "checks": self.checks.len(),
            "passed": self.checks.len() - failed.len(),
            "failed": failed.len(),
            "work": self.checks.iter().map(|c| c.work).sum::<u64>(),
            "failures": failed,
        })
    }
}

/// Every `λ ∈ F_{q²}` with `ord(λ) | q + 1`, in increasing exponent order.
pub fn twists(field: &Field) -> Result<Vec<Elem>> {
    let q = field.q().ok_or(Error::NoConjugation(field.order()))?;
    Ok((0..=q).map(|i| field.gen_pow(i * (q - 1))).collect())
}

fn label(field: &Field, n: u64, lam: Elem) -> String {
    format!("{field} n={n} lambda={lam}")
}

/// Product, irreducibility, factor multiset against generic factorization,
/// and the `|S_j| = φ(j)/φ(r)` law.
pub fn check_factorization(field: &Field, n: u64, lam: Elem) -> Result<Vec<Check>> {
    let inst = label(field, n, lam);
    let report = factorize(field, n, lam)?;
    let mut out = Vec::new();
    out.push(Check::new(
        "product",
        &inst,
        report.product() == report.target(),
        format!("{} distinct factors, multiplicity {}", report.s + 2 * report.t, report.multiplicity),
        0,
    ));
    let mut bad = Vec::new();
    let mut rabin = 0;
    let mut work = 0;
    for g in report.distinct_factors() {
        let ok = match g.is_irreducible(TRIAL_DIVISION_BOUND) {
            Ok(b) => {
                work += trial_work(&g);
                b
            }
            Err(e) if e.is_bound() => {
                rabin += 1;
                g.is_irreducible_rabin()
            }
            Err(e) => return Err(e),
        };
        if !ok {
            bad.push(format!("{g}"));
        }
    }
    let detail = if bad.is_empty() {
        format!("all irreducible, {rabin} by Rabin test")
    } else {
        format!("reducible: {}", bad.join(", "))
    };
    out.push(Check::new("irreducible", &inst, bad.is_empty(), detail, work));
    let mut ours: Vec<Poly> = report
        .distinct_factors()
        .into_iter()
        .flat_map(|g| std::iter::repeat_n(g, report.multiplicity as usize))
        .collect();
    ours.sort_by(Poly::canonical_cmp);
    let mut theirs = oracle::binomial_factor_multiset(field, n as usize, lam)?;
    theirs.sort_by(Poly::canonical_cmp);
    out.push(Check::new(
        "factor-multiset",
        &inst,
        ours == theirs,
        format!("{} factors with multiplicity", theirs.len()),
        theirs.len() as u64,
    ));
    out.push(check_sj_law(&report, &inst)?);
    Ok(out)
}

fn trial_work(g: &Poly) -> u64 {
    let q = g.field().order() as u128;
    (1..=(g.deg() / 2) as u32).map(|d| q.pow(d)).sum::<u128>() as u64
}

pub fn check_sj_law(report: &FactorizationReport, inst: &str) -> Result<Check> {
    let r = report.norm.r;
    let mut bad = Vec::new();
    for c in &report.classes {
        let want = arith::totient(c.j) / arith::totient(r);
        if c.s_j.len() as u64 != want {
            bad.push(format!("j={} |S_j|={} phi(j)/phi(r)={want}", c.j, c.s_j.len()));
        }
    }
    let detail = if bad.is_empty() {
        format!("{} eligible divisors", report.classes.len())
    } else {
        bad.join("; ")
    };
    Ok(Check::new("sj-law", inst, bad.is_empty(), detail, report.classes.len() as u64))
}

fn scan(field: &Field, n: u64, lam: Elem) -> Result<(Arc<FactorizationReport>, Vec<DivisorFacts>, u64)> {
    let report = Arc::new(factorize(field, n, lam)?);
    let s = oracle::divisor_scan(field, n as usize, lam, DIVISOR_BOUND)?;
    Ok((report, s.value, s.work))
}

/// Hull dimension of every divisor and the spectrum, against linear algebra.
pub fn check_hull(field: &Field, n: u64, lam: Elem) -> Result<Vec<Check>> {
    let inst = label(field, n, lam);
    let (report, facts, work) = scan(field, n, lam)?;
    let mut bad = Vec::new();
    for d in &facts {
        let c = ConstaCode::from_generator(&report, &d.gen)?;
        let h = constacyclic::hull_dimension(&c);
        if h != d.hull_dim as u64 {
            bad.push(format!("{}: formula {h}, oracle {}", d.gen, d.hull_dim));
        }
    }
    let detail = if bad.is_empty() {
        format!("{} divisors", facts.len())
    } else {
        bad.join("; ")
    };
    let observed: Vec<u64> = facts.iter().map(|d| d.hull_dim as u64).collect::<BTreeSet<_>>().into_iter().collect();
    let spectrum = constacyclic::hull_dim_spectrum(&report);
    Ok(vec![
        Check::new("hull-dimension", &inst, bad.is_empty(), detail, work),
        Check::new(
            "hull-spectrum",
            &inst,
            spectrum == observed,
            format!("formula {spectrum:?}, oracle {observed:?}"),
            work,
        ),
    ])
}

/// Self-dual and LCD counts and generator sets, against the divisor scan.
pub fn check_counts(field: &Field, n: u64, lam: Elem) -> Result<Vec<Check>> {
    let inst = label(field, n, lam);
    let (report, facts, work) = scan(field, n, lam)?;
    let sd = constacyclic::count_self_dual(&report);
    let oracle_sd: BTreeSet<Vec<Elem>> =
        facts.iter().filter(|d| d.self_dual).map(|d| d.gen.coeffs().to_vec()).collect();
    let ours_sd: BTreeSet<Vec<Elem>> = constacyclic::enumerate_self_dual(&report)
        .map(|e| constacyclic::code_from_exponents(&report, e).map(|c| c.generator().coeffs().to_vec()))
        .collect::<Result<_>>()?;
    let lcd = constacyclic::count_lcd(&report);
    let oracle_lcd: BTreeSet<Vec<Elem>> = facts.iter().filter(|d| d.lcd).map(|d| d.gen.coeffs().to_vec()).collect();
    let ours_lcd: BTreeSet<Vec<Elem>> = constacyclic::enumerate_lcd(&report)
        .map(|e| constacyclic::code_from_exponents(&report, e).map(|c| c.generator().coeffs().to_vec()))
        .collect::<Result<_>>()?;
    Ok(vec![
        Check::new(
            "self-dual-count",
            &inst,
            sd.count == (oracle_sd.len() as u64).into() && ours_sd == oracle_sd,
            format!(
                "formula {} ({}), oracle {}",
                sd.count,
                crate::json::self_dual_case(sd.case),
                oracle_sd.len()
            ),
            work,
        ),
        Check::new(
            "lcd-count",
            &inst,
            lcd == (oracle_lcd.len() as u64).into() && ours_lcd == oracle_lcd,
            format!("formula 2^(s+t) = {lcd}, oracle {}", oracle_lcd.len()),
            work,
        ),
    ])
}

/// `N(Q, ℓ)` and `N_H(Q, ℓ)` against subspace scans.
pub fn check_subspace_counts(order: u64, ell: usize) -> Result<Vec<Check>> {
    let (p, e) = arith::prime_power(order).ok_or_else(|| Error::invalid(format!("{order} is not a prime power")))?;
    let f = make_field(p, e)?;
    let inst = format!("Q={order} ell={ell}");
    let o = oracle::count_subspaces(&f, ell, SUBSPACE_BOUND)?;
    let n = quasitwisted::n_linear(order, ell);
    let mut out = vec![Check::new(
        "n-linear",
        &inst,
        n == o.value.into(),
        format!("formula {n}, oracle {}", o.value),
        o.work,
    )];
    if f.q().is_some() {
        let o = oracle::count_hermitian_self_dual(&f, ell, SUBSPACE_BOUND)?;
        let nh = quasitwisted::n_hermitian_self_dual(order, ell)?;
        out.push(Check::new(
            "n-hermitian",
            &inst,
            nh == o.value.into(),
            format!("formula {nh}, oracle {}", o.value),
            o.work,
        ));
    }
    Ok(out)
}

/// The product count against the eigenspace scan (split case only), plus
/// injectivity and validity of reconstruction from every component tuple.
pub fn check_qt(field: &Field, n: usize, lam: Elem, ell: usize) -> Result<Vec<Check>> {
    let inst = format!("{} ell={ell}", label(field, n as u64, lam));
    let ring = QtRing::new(field, n, lam)?;
    let count = quasitwisted::count_qt_self_dual(field, n, lam, ell)?.count;
    let tuples = ring.enumerate_self_dual(ell)?;
    let mut codes: Vec<Subspace> = Vec::with_capacity(tuples.len());
    let mut valid = true;
    for t in &tuples {
        let c = ring.reconstruct(t)?;
        valid &= c.is_hermitian_self_dual()? && c.is_twist_invariant() && ring.decompose(&c)? == *t;
        codes.push(c.space);
    }
    let key = |s: &Subspace| s.basis().row_vecs();
    codes.sort_by_key(key);
    let distinct = codes.windows(2).all(|w| w[0] != w[1]);
    let mut out = vec![Check::new(
        "qt-reconstruction",
        &inst,
        valid && distinct && count == (tuples.len() as u64).into(),
        format!("formula {count}, {} tuples, distinct {distinct}, all self-dual {valid}", tuples.len()),
        tuples.len() as u64,
    )];
    match oracle::qt_self_dual_scan(field, n, lam, ell, SUBSPACE_BOUND) {
        Ok(o) => {
            let mut scanned = o.value;
            scanned.sort_by_key(key);
            out.push(Check::new(
                "qt-count-scan",
                &inst,
                scanned == codes,
                format!("formula {count}, oracle {}", scanned.len()),
                o.work,
            ));
        }
        Err(Error::Precondition(_)) => {}
        Err(e) if e.is_bound() => {}
        Err(e) => return Err(e),
    }
    Ok(out)
}

/// Decompose/reconstruct round trip on the code generated by `gens`.
pub fn check_crt_round_trip(ring: &QtRing, ell: usize, gens: &[Vec<Elem>]) -> Result<Check> {
    let code = QtCode::generated_by(ring.field(), ring.n(), ell, ring.lam(), gens)?;
    let parts = ring.decompose(&code)?;
    let back = ring.reconstruct(&parts)?;
    let dims: usize = parts.hermitian.iter().map(|h| h.factor.deg() * h.code.dim()).sum::<usize>()
        + parts
            .euclidean
            .iter()
            .map(|e| e.factor.deg() * (e.c1.dim() + e.c2.dim()))
            .sum::<usize>();
    let direct = code.is_hermitian_self_dual()?;
    let componentwise = ring.is_hermitian_self_dual(&code)?;
    Ok(Check::new(
        "crt-round-trip",
        &format!("{} ell={ell} dim={}", label(ring.field(), ring.n() as u64, ring.lam()), code.dim()),
        back == code && dims == code.dim() && direct == componentwise,
        format!("component dimension sum {dims}, self-dual {direct}"),
        1,
    ))
}

/// Certificate of a constructed MDS code, including the exhaustive distance
/// when the code is small enough.
pub fn check_mds(field: &Field, n: u64, lam: Elem, expect: Option<(u64, u64, u64)>) -> Result<Check> {
    let inst = label(field, n, lam);
    let m = mds::construct_tmds(field, n, lam, CODEWORD_BOUND)?;
    let c = &m.certificate;
    let params_ok = expect.is_none_or(|e| e == (m.n, m.k, m.d));
    let ok = params_ok && c.mds && c.self_dual_set && c.generator_self_dual && c.gram_zero;
    Ok(Check::new(
        "mds-certificate",
        &inst,
        ok,
        format!(
            "[{}, {}, {}], min distance {:?}, bch {}, gram zero {}",
            m.n, m.k, m.d, c.min_distance, c.bch_bound, c.gram_zero
        ),
        c.codewords_scanned,
    ))
}

/// Nonexistence witness together with an exhaustive search over self-dual
/// defining sets that finds no MDS code.
pub fn check_mds_nonexistence(q: u64, n: u64, r: u64) -> Result<Check> {
    let inst = format!("q={q} n={n} r={r}");
    let witness = mds::mds_nonexistence(q, n, r)?;
    let field = make_field_q2(q)?;
    let lam = field.gen_pow((q * q - 1) / r);
    let report = Arc::new(factorize(&field, n, lam)?);
    let sets = mds::self_dual_defining_sets(q, n, r)?;
    let mut mds_found = 0;
    let mut work = 0;
    for t in &sets {
        let code = mds::code_from_cosets(t, &report)?;
        let gm = constacyclic::generator_matrix(&code);
        let d = oracle::exhaustive_min_distance(&gm, CODEWORD_BOUND)?;
        work += d.work;
        if d.value as u64 == n - code.dim() as u64 + 1 {
            mds_found += 1;
        }
    }
    Ok(Check::new(
        "mds-nonexistence",
        &inst,
        witness.is_some() && mds_found == 0,
        format!("witness {witness:?}, {} self-dual defining sets, {mds_found} MDS", sets.len()),
        work,
    ))
}

/// `F_{q²}` for a prime power `q`.
pub fn make_field_q2(q: u64) -> Result<Field> {
    let (p, e) = arith::prime_power(q).ok_or_else(|| Error::invalid(format!("{q} is not a prime power")))?;
    make_field(p, 2 * e)
}

fn grid<F>(qs: &[u64], max_n: u64, mut f: F) -> Result<Vec<Check>>
where
    F: FnMut(&Field, u64, Elem) -> Result<Vec<Check>>,
{
    let mut out = Vec::new();
    for &q in qs {
        let field = make_field_q2(q)?;
        for n in 1..=max_n {
            for lam in twists(&field)? {
                out.extend(f(&field, n, lam)?);
            }
        }
    }
    Ok(out)
}

pub fn run_suite(suite: Suite, max_n: u64) -> Result<VerifyReport> {
    let checks = match suite {
        Suite::Factor => grid(&[2, 3, 4, 5], max_n, check_factorization)?,
        Suite::Hull => grid(&[2, 3, 4], max_n, check_hull)?,
        Suite::Counts => {
            let mut c = grid(&[2, 3, 4], max_n, check_counts)?;
            for order in [2, 3, 4, 8, 9] {
                for ell in 1..=3 {
                    c.extend(check_subspace_counts(order, ell)?);
                }
            }
            c
        }
        Suite::Mds => {
            let mut c = Vec::new();
            let f9 = make_field_q2(3)?;
            c.push(check_mds(&f9, 4, f9.from_int(-1), Some((4, 2, 3)))?);
            for q in [3, 7] {
                let f = make_field_q2(q)?;
                for (n, r) in mds::tmds_parameters(q) {
                    if n <= max_n {
                        c.push(check_mds(&f, n, f.gen_pow((q * q - 1) / r), None)?);
                    }
                }
            }
            c.push(check_mds_nonexistence(7, 6, 2)?);
            c
        }
        Suite::Qt => {
            let mut c = Vec::new();
            for q in [2, 3] {
                let field = make_field_q2(q)?;
                for n in 1..=max_n.min(4) as usize {
                    if (n as u64).is_multiple_of(field.characteristic()) {
                        continue;
                    }
                    for lam in twists(&field)? {
                        c.extend(check_qt(&field, n, lam, 2)?);
                        let ring = QtRing::new(&field, n, lam)?;
                        let g: Vec<Elem> = (0..2 * n as u64).map(|i| (i * i + 1) % field.order()).collect();
                        c.push(check_crt_round_trip(&ring, 2, &[g])?);
                    }
                }
            }
            c
        }
    };
    Ok(VerifyReport { suite, max_n, checks })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_suites_pass() {
        for s in [Suite::Factor, Suite::Hull, Suite::Counts, Suite::Qt] {
            let r = run_suite(s, 4).unwrap();
            assert!(r.passed(), "{s}: {:?}", r.failures().collect::<Vec<_>>());
            assert!(!r.checks.is_empty());
        }
        assert_eq!("qt".parse::<Suite>().unwrap(), Suite::Qt);
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn twist_values_have_order_dividing_q_plus_one() {
        let f = make_field_q2(5).unwrap();
        let t = twists(&f).unwrap();
        assert_eq!(t.len(), 6);
        assert!(t.iter().all(|&l| f.pow(l, 6) == 1));
        assert_eq!(t.iter().collect::<BTreeSet<_>>().len(), 6);
    }
}
