//! Defining sets of λ-constacyclic codes with `ν = 0` and the MDS Hermitian
//! self-dual family of even length.
//!
//! With `r = ord(λ)` and `ξ` a primitive `nr`-th root of unity with `ξ^n = λ`,
//! the roots of `x^n - λ` are `ξ^a` for `a ∈ O_{r,n} = {ir + 1 : 0 ≤ i < n}`.
//! A code is described by the set `T ⊆ O_{r,n}` of exponents of its roots.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::arith::{gcd, mul_mod};
use crate::constacyclic::{self, code_from_exponents, ConstaCode};
use crate::error::{Error, Result};
use crate::factorizer::{factorize, FactorizationReport};
use crate::galois::{Elem, Field};
use crate::oracle;
use crate::poly::Poly;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DefiningSet {
    pub r: u64,
    pub n: u64,
    /// Ascending, reduced mod `nr`.
    pub elems: Vec<u64>,
}

impl DefiningSet {
    pub fn new(r: u64, n: u64, elems: impl IntoIterator<Item = u64>) -> Result<Self> {
        if r == 0 || n == 0 {
            return Err(Error::invalid("r and n must be positive"));
        }
        let m = n * r;
        let set: BTreeSet<u64> = elems.into_iter().map(|a| a % m).collect();
        if let Some(a) = set.iter().find(|&&a| a % r != 1 % r) {
            return Err(Error::invalid(format!("{a} is not in O_{{{r},{n}}}")));
        }
        Ok(DefiningSet { r, n, elems: set.into_iter().collect() })
    }

    pub fn full(r: u64, n: u64) -> Self {
        DefiningSet { r, n, elems: o_set(r, n) }
    }

    pub fn modulus(&self) -> u64 {
        self.n * self.r
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn contains(&self, a: u64) -> bool {
        self.elems.binary_search(&(a % self.modulus())).is_ok()
    }

    /// `{i : ir + 1 ∈ T}`
    pub fn indices(&self) -> Vec<u64> {
        let m = self.modulus();
        let mut idx: Vec<u64> = self.elems.iter().map(|&a| (a + m - 1) % m / self.r).collect();
        idx.sort_unstable();
        idx
    }

    /// Closed under `a ↦ q² a (mod nr)`.
    pub fn is_q2_closed(&self, q: u64) -> bool {
        let m = self.modulus();
        let q2 = mul_mod(q % m, q % m, m);
        self.elems.iter().all(|&a| self.contains(mul_mod(a, q2, m)))
    }

    fn complement(&self) -> Vec<u64> {
        o_set(self.r, self.n)
            .into_iter()
            .filter(|&a| !self.contains(a))
            .collect()
    }
}

/// `O_{r,n} = {ir + 1 mod nr : 0 ≤ i < n}`, ascending.
pub fn o_set(r: u64, n: u64) -> Vec<u64> {
    let m = n * r;
    let mut v: Vec<u64> = (0..n).map(|i| (i * r + 1) % m).collect();
    v.sort_unstable();
    v
}

/// `-qT = {-qa mod nr : a ∈ T}`
pub fn neg_q_image(t: &DefiningSet, q: u64) -> Result<DefiningSet> {
    let m = t.modulus();
    let neg_q = (m - q % m) % m;
    let image: Vec<u64> = t.elems.iter().map(|&a| mul_mod(a, neg_q, m)).collect();
    if image.iter().any(|&a| a % t.r != 1 % t.r) {
        return Err(Error::precondition(format!(
            "-qT leaves O_{{{},{}}}; r = {} does not divide q + 1 = {}",
            t.r,
            t.n,
            t.r,
            q + 1
        )));
    }
    DefiningSet::new(t.r, t.n, image)
}

/// `-qT = O_{r,n} \ T`
pub fn is_self_dual_set(t: &DefiningSet, q: u64) -> Result<bool> {
    Ok(neg_q_image(t, q)?.elems == t.complement())
}

/// `O_{r,n} \ T ⊆ -qT`
pub fn is_self_orthogonal_set(t: &DefiningSet, q: u64) -> Result<bool> {
    let image = neg_q_image(t, q)?;
    Ok(t.complement().iter().all(|&a| image.contains(a)))
}

/// One more than the longest cyclic run of consecutive indices `i` with
/// `ir + 1 ∈ T`; `n + 1` when `T = O_{r,n}`.
pub fn bch_bound(t: &DefiningSet) -> u64 {
    let n = t.n as usize;
    let mut present = vec![false; n];
    for i in t.indices() {
        present[i as usize] = true;
    }
    if present.iter().all(|&b| b) {
        return t.n + 1;
    }
    let mut best = 0;
    let mut run = 0;
    // two passes so runs through i = n - 1 -> 0 are seen
    for k in 0..2 * n {
        if present[k % n] {
            run += 1;
            best = best.max(run);
        } else {
            run = 0;
        }
    }
    1 + best.min(n) as u64
}

/// `Π_{a ∈ T} (x - ξ^a)` read over `F_{q²}`.
pub fn code_from_defining_set(t: &DefiningSet, report: &Arc<FactorizationReport>) -> Result<ConstaCode> {
    let norm = &report.norm;
    if norm.nu != 0 {
        return Err(Error::precondition("defining sets need gcd(n, q) = 1"));
    }
    if t.r != norm.r || t.n != norm.n {
        return Err(Error::invalid(format!(
            "defining set for (r, n) = ({}, {}) used with ({}, {})",
            t.r, t.n, norm.r, norm.n
        )));
    }
    if !t.is_q2_closed(norm.q) {
        return Err(Error::invalid(
            "defining set is not closed under multiplication by q^2, so its generator is not over F_{q^2}",
        ));
    }
    let tower = &norm.tower;
    let gen = t.elems.iter().fold(Poly::one(tower), |acc, &a| {
        acc.mul(&Poly::linear(tower, tower.pow(norm.xi, a)))
    });
    let gen = gen
        .project(report.field())
        .ok_or_else(|| Error::inconsistent("generator coefficients outside F_{q^2}"))?;
    ConstaCode::from_generator(report, &gen)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MdsCertificate {
    pub self_dual_set: bool,
    pub generator_self_dual: bool,
    pub gram_zero: bool,
    pub bch_bound: u64,
    pub singleton_bound: u64,
    /// Exhaustive minimum distance, when the code is small enough to scan.
    pub min_distance: Option<u64>,
    pub codewords_scanned: u64,
    pub mds: bool,
}

#[derive(Clone, Debug)]
pub struct MdsCode {
    pub n: u64,
    pub k: u64,
    pub d: u64,
    pub defining_set: DefiningSet,
    pub code: ConstaCode,
    pub certificate: MdsCertificate,
}

/// Checks every hypothesis of the even-length MDS self-dual family and
/// names the first that fails.
pub fn tmds_hypotheses(q: u64, n: u64, r: u64) -> Result<()> {
    let q2m1 = q * q - 1;
    let fail = |msg: String| Err(Error::Precondition(msg));
    if !r.is_multiple_of(2) {
        return fail(format!("r = {r} is not even"));
    }
    if !n.is_multiple_of(2) {
        return fail(format!("n = {n} is not even"));
    }
    if !q2m1.is_multiple_of(n * r) {
        return fail(format!("nr = {} does not divide q^2 - 1 = {q2m1}", n * r));
    }
    if !(q + 1).is_multiple_of(n) {
        return fail(format!("n = {n} does not divide q + 1 = {}", q + 1));
    }
    if !(q + 1).is_multiple_of(r) {
        return fail(format!("r = {r} does not divide q + 1 = {}", q + 1));
    }
    if !(2 * (q + 1)).is_multiple_of(n * r) || (2 * (q + 1) / (n * r)).is_multiple_of(2) {
        return fail(format!("2(q+1)/(nr) = {}/{} is not an odd integer", 2 * (q + 1), n * r));
    }
    Ok(())
}

/// All `(n, r)` satisfying [`tmds_hypotheses`] for the given `q`.
pub fn tmds_parameters(q: u64) -> Vec<(u64, u64)> {
    let divs = crate::arith::divisors(q + 1);
    let mut out = Vec::new();
    for &n in &divs {
        for &r in &divs {
            if tmds_hypotheses(q, n, r).is_ok() {
                out.push((n, r));
            }
        }
    }
    out
}

/// The code with defining set `T = {ir + 1 : 0 ≤ i < n/2}`, with its
/// self-duality and distance certificate. The minimum distance is scanned
/// exhaustively when there are at most `codeword_bound` codewords; otherwise
/// MDS rests on the BCH and Singleton bounds meeting.
pub fn construct_tmds(field: &Field, n: u64, lam: Elem, codeword_bound: u128) -> Result<MdsCode> {
    let q = field.q().ok_or(Error::NoConjugation(field.order()))?;
    if lam == 0 || !field.is_valid(lam) {
        return Err(Error::invalid("lambda must be a nonzero field element"));
    }
    let r = field.elem_order(lam)?;
    tmds_hypotheses(q, n, r)?;
    let report = Arc::new(factorize(field, n, lam)?);
    let t = DefiningSet::new(r, n, (0..n / 2).map(|i| i * r + 1))?;
    certify(&t, &report, codeword_bound)
}

/// Builds `C_T` and certifies self-duality and distance.
pub fn certify(t: &DefiningSet, report: &Arc<FactorizationReport>, codeword_bound: u128) -> Result<MdsCode> {
    let q = report.norm.q;
    let n = t.n;
    let code = code_from_defining_set(t, report)?;
    let k = code.dim() as u64;
    let gm = constacyclic::generator_matrix(&code);
    let bch = bch_bound(t);
    let singleton = n - k + 1;
    let min_distance = match oracle::exhaustive_min_distance(&gm, codeword_bound) {
        Ok(r) => Some((r.value as u64, r.work)),
        Err(e) if e.is_bound() => None,
        Err(e) => return Err(e),
    };
    let d = min_distance.map_or(bch, |(d, _)| d);
    let certificate = MdsCertificate {
        self_dual_set: is_self_dual_set(t, q)?,
        generator_self_dual: constacyclic::is_hermitian_self_dual(&code),
        gram_zero: gm.hermitian_gram()?.is_zero(),
        bch_bound: bch,
        singleton_bound: singleton,
        min_distance: min_distance.map(|(d, _)| d),
        codewords_scanned: min_distance.map_or(0, |(_, w)| w),
        mds: d == singleton && bch <= d,
    };
    Ok(MdsCode {
        n,
        k,
        d,
        defining_set: t.clone(),
        code,
        certificate,
    })
}

/// Smallest `a ∈ O_{r,n}` with `a(q+1)/r ≡ 0 (mod n)`. Such an `a` is fixed by
/// `-q`, which rules out MDS self-dual codes of this length and order.
pub fn mds_nonexistence(q: u64, n: u64, r: u64) -> Result<Option<u64>> {
    if r == 0 || !(q + 1).is_multiple_of(r) {
        return Err(Error::Precondition(format!("r = {r} does not divide q + 1 = {}", q + 1)));
    }
    if !r.is_multiple_of(2) || !n.is_multiple_of(2) || !(q * q - 1).is_multiple_of(n * r) {
        return Err(Error::Precondition(format!(
            "need r, n even and nr | q^2 - 1 (q = {q}, n = {n}, r = {r})"
        )));
    }
    let c = (q + 1) / r;
    Ok(o_set(r, n).into_iter().find(|&a| mul_mod(a, c, n) == 0))
}

/// Every `q²`-closed `T ⊆ O_{r,n}` with `-qT = O_{r,n} \ T`.
pub fn self_dual_defining_sets(q: u64, n: u64, r: u64) -> Result<Vec<DefiningSet>> {
    let m = n * r;
    if gcd(q, m) != 1 {
        return Err(Error::Precondition(format!("gcd(q, nr) = gcd({q}, {m}) != 1")));
    }
    let o = o_set(r, n);
    let q2 = mul_mod(q % m, q % m, m);
    let mut seen = BTreeSet::new();
    let mut cosets: Vec<Vec<u64>> = Vec::new();
    for &a in &o {
        if seen.contains(&a) {
            continue;
        }
        let mut c = vec![a];
        let mut b = mul_mod(a, q2, m);
        while b != a {
            c.push(b);
            b = mul_mod(b, q2, m);
        }
        seen.extend(c.iter().copied());
        cosets.push(c);
    }
    if cosets.len() > 24 {
        return Err(Error::WorkBound {
            what: "defining-set subsets",
            needed: 1u128 << cosets.len(),
            bound: 1 << 24,
        });
    }
    let mut out = Vec::new();
    for mask in 0u64..1 << cosets.len() {
        let elems = cosets
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .flat_map(|(_, c)| c.iter().copied());
        let t = DefiningSet::new(r, n, elems)?;
        if is_self_dual_set(&t, q)? {
            out.push(t);
        }
    }
    Ok(out)
}

/// The code with every exponent zero or one according to membership of its
/// coset in `T`; agrees with [`code_from_defining_set`].
pub fn code_from_cosets(t: &DefiningSet, report: &Arc<FactorizationReport>) -> Result<ConstaCode> {
    let mut exps = constacyclic::ExponentVector::constant(report, 0);
    for (i, g) in report.scr.iter().enumerate() {
        exps.u[i] = u64::from(t.contains(g.coset[0]));
    }
    for (i, pr) in report.pairs.iter().enumerate() {
        exps.v[i] = u64::from(t.contains(pr.coset[0]));
        exps.w[i] = u64::from(t.contains(pr.partner[0]));
    }
    code_from_exponents(report, exps)
}
