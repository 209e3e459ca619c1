//! Explicit factorization of `x^n - λ` over `F_{q²}` into self-conjugate-reciprocal
//! (SCR) irreducible factors and conjugate-reciprocal (CR) pairs.
//!
//! Write `n = n' p^ν` and `Λ^{p^ν} = λ`, so `x^n - λ = (x^{n'} - Λ)^{p^ν}`. With
//! `r = ord(λ)` and `ξ` a primitive `n'r`-th root of unity satisfying `ξ^{n'} = Λ`,
//! the roots of `x^{n'} - Λ` are `ξ^s` for `s ≡ 1 (mod r)`. Those exponents are
//! grouped by `j = ord(ξ^s)` into the sets `S_j`, split into `q²`-cyclotomic
//! cosets, and matched under `a ↦ -qa`, which sends the roots of `f` to the
//! roots of `f†`.

use crate::arith::{self, gcd, mult_order, totient};
use crate::error::{Error, Result};
use crate::galois::{extend_bounded, Elem, Field};
use crate::poly::{min_poly, Poly};

/// Order bound for the splitting field `F_{q^{2k}}`. Tower elements still fit
/// in a `u64`; fields this large run without lookup tables.
pub const TOWER_ORDER_BOUND: u64 = 1 << 62;

#[derive(Clone, Debug)]
pub struct Normalization {
    pub field: Field,
    pub q: u64,
    pub n: u64,
    pub n_prime: u64,
    pub nu: u32,
    /// `p^ν`
    pub p_nu: u64,
    pub lam: Elem,
    /// The unique `Λ` with `Λ^{p^ν} = λ`.
    pub big_lam: Elem,
    pub r: u64,
    pub k: u32,
    /// `F_{q^{2k}}`, built over `field`.
    pub tower: Field,
    pub xi: Elem,
}

impl Normalization {
    pub fn modulus(&self) -> u64 {
        self.n_prime * self.r
    }

    /// `q² mod n'r`
    pub fn q2(&self) -> u64 {
        (self.q as u128 * self.q as u128 % self.modulus() as u128) as u64
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisorClass {
    pub j: u64,
    pub s_j: Vec<u64>,
    pub cosets: Vec<Vec<u64>>,
    pub pi: u8,
    /// `ord_j(q²)`, the common size of the cosets.
    pub ord: u64,
    /// `γ(j)` when `π = 0`, `β(j)` when `π = 1`.
    pub gamma_or_beta: u64,
    /// For `π = 1`: indices into `cosets` as `(T_j member, its -q image)`.
    pub pairs: Vec<(usize, usize)>,
}

#[derive(Clone, Debug)]
pub struct ScrFactor {
    pub poly: Poly,
    pub j: u64,
    pub coset: Vec<u64>,
}

#[derive(Clone, Debug)]
pub struct CrPair {
    pub f: Poly,
    pub f_dagger: Poly,
    pub j: u64,
    pub coset: Vec<u64>,
    pub partner: Vec<u64>,
}

#[derive(Clone, Debug)]
pub struct FactorizationReport {
    pub norm: Normalization,
    pub classes: Vec<DivisorClass>,
    pub omega: Vec<u64>,
    pub omega_prime: Vec<u64>,
    pub scr: Vec<ScrFactor>,
    pub pairs: Vec<CrPair>,
    pub multiplicity: u64,
    pub s: usize,
    pub t: usize,
}

impl FactorizationReport {
    pub fn field(&self) -> &Field {
        &self.norm.field
    }

    pub fn n(&self) -> u64 {
        self.norm.n
    }

    /// `x^n - λ`
    pub fn target(&self) -> Poly {
        Poly::binomial(&self.norm.field, self.norm.n as usize, self.norm.lam)
    }

    /// All irreducible factors once each, SCR factors first, then `f, f†` per pair.
    pub fn distinct_factors(&self) -> Vec<Poly> {
        let mut out: Vec<Poly> = self.scr.iter().map(|g| g.poly.clone()).collect();
        for pr in &self.pairs {
            out.push(pr.f.clone());
            out.push(pr.f_dagger.clone());
        }
        out
    }

    /// `Π g^{p^ν} Π (f f†)^{p^ν}`
    pub fn product(&self) -> Poly {
        self.distinct_factors()
            .iter()
            .fold(Poly::one(self.field()), |acc, f| acc.mul(f))
            .pow(self.multiplicity)
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct FactorOptions {
    /// Use the `(xi_rank + 1)`-th admissible `u` when choosing `ξ = ζ^{eu}`.
    pub xi_rank: usize,
}

/// Computes `n', ν, Λ, r, k` and the canonical `ξ`.
pub fn normalize(field: &Field, n: u64, lam: Elem) -> Result<Normalization> {
    normalize_with(field, n, lam, FactorOptions::default())
}

pub fn normalize_with(
    field: &Field,
    n: u64,
    lam: Elem,
    opts: FactorOptions,
) -> Result<Normalization> {
    let q = field.q().ok_or(Error::NoConjugation(field.order()))?;
    if n == 0 {
        return Err(Error::invalid("length n must be positive"));
    }
    if !field.is_valid(lam) {
        return Err(Error::invalid(format!("{lam} is not an element of {field}")));
    }
    if lam == 0 {
        return Err(Error::ZeroElement);
    }
    let p = field.characteristic();
    let (n_prime, nu) = arith::split_prime_power(n, p);
    let p_nu = p.pow(nu);
    // x -> x^p has order m on F_{p^m}, so x -> x^{p^{m - ν mod m}} inverts x -> x^{p^ν}
    let m = field.abs_degree();
    let back = (m - nu % m) % m;
    let mut big_lam = lam;
    for _ in 0..back {
        big_lam = field.pow(big_lam, p);
    }
    if field.pow(big_lam, p_nu) != lam {
        return Err(Error::inconsistent("p^nu-th root of lambda"));
    }
    let r = field.elem_order(lam)?;
    let modulus = n_prime * r;
    let q2 = (q as u128 * q as u128 % modulus as u128) as u64;
    let k = mult_order(q2, modulus) as u32;
    let tower = extend_bounded(field, k, TOWER_ORDER_BOUND)?;
    let zeta = tower.generator();
    let e = (tower.order() - 1) / modulus;
    let base = tower.pow(zeta, e);
    let xi = (1..=modulus)
        .filter(|&u| gcd(u, modulus) == 1)
        .map(|u| tower.pow(base, u))
        .filter(|&xi| tower.pow(xi, n_prime) == big_lam)
        .nth(opts.xi_rank)
        .ok_or_else(|| Error::invalid(format!("fewer than {} choices of xi", opts.xi_rank + 1)))?;
    Ok(Normalization {
        field: field.clone(),
        q,
        n,
        n_prime,
        nu,
        p_nu,
        lam,
        big_lam,
        r,
        k,
        tower,
        xi,
    })
}

/// Divisors `j` of `n'r` with `gcd(n'r/j, r) = 1`, ascending.
pub fn eligible_divisors(n_prime: u64, r: u64) -> Vec<u64> {
    let m = n_prime * r;
    arith::divisors(m)
        .into_iter()
        .filter(|&j| gcd(m / j, r) == 1)
        .collect()
}

/// `S_j = {(n'r/j) z : z ∈ Z_j^×, (n'r/j) z ≡ 1 (mod r)}`, ascending.
pub fn compute_sj(j: u64, n_prime: u64, r: u64) -> Result<Vec<u64>> {
    let m = n_prime * r;
    if j == 0 || !m.is_multiple_of(j) || gcd(m / j, r) != 1 {
        return Err(Error::invalid(format!("{j} is not an eligible divisor of {m}")));
    }
    let step = m / j;
    Ok((0..j)
        .filter(|&z| gcd(z, j) == 1)
        .map(|z| step * z)
        .filter(|&a| a % r == 1 % r)
        .collect())
}

/// 0 when `-q mod j` lies in the subgroup of `Z_j^×` generated by `q²`, else 1.
pub fn pi_indicator(j: u64, q: u64) -> Result<u8> {
    if gcd(j, q) != 1 {
        return Err(Error::invalid(format!("gcd({j}, {q}) != 1")));
    }
    if j <= 2 {
        // -q ≡ q ≡ 1 (mod 2)
        return Ok(0);
    }
    let q2 = arith::mul_mod(q % j, q % j, j);
    let target = j - q % j;
    let mut x = 1 % j;
    loop {
        if x == target {
            return Ok(0);
        }
        x = arith::mul_mod(x, q2, j);
        if x == 1 % j {
            return Ok(1);
        }
    }
}

/// `γ(j) = φ(j) / (φ(r) ord_j(q²))`, which must be an integer.
pub fn gamma(j: u64, q: u64, r: u64) -> Result<u64> {
    let num = totient(j);
    let den = totient(r) * ord_q2(j, q);
    if !num.is_multiple_of(den) {
        return Err(Error::inconsistent(format!("gamma({j}) = {num}/{den}")));
    }
    Ok(num / den)
}

/// `β(j) = γ(j) / 2`, which must be an integer.
pub fn beta(j: u64, q: u64, r: u64) -> Result<u64> {
    let g = gamma(j, q, r)?;
    if g % 2 != 0 {
        return Err(Error::inconsistent(format!("beta({j}) = {g}/2")));
    }
    Ok(g / 2)
}

fn ord_q2(j: u64, q: u64) -> u64 {
    mult_order(arith::mul_mod(q % j.max(1), q % j.max(1), j.max(1)), j.max(1))
}

/// Orbits of `a ↦ q² a (mod modulus)` on `s`, each ascending, sorted by minimum.
pub fn cyclotomic_cosets(s: &[u64], modulus: u64, q: u64) -> Result<Vec<Vec<u64>>> {
    let mut set: Vec<u64> = s.iter().map(|&a| a % modulus).collect();
    set.sort_unstable();
    set.dedup();
    let q2 = arith::mul_mod(q % modulus, q % modulus, modulus);
    let mut seen = vec![false; set.len()];
    let mut out = Vec::new();
    for i in 0..set.len() {
        if seen[i] {
            continue;
        }
        let mut coset = Vec::new();
        let mut a = set[i];
        loop {
            let idx = set
                .binary_search(&a)
                .map_err(|_| Error::invalid(format!("set not closed under *{q2} mod {modulus}")))?;
            if seen[idx] {
                break;
            }
            seen[idx] = true;
            coset.push(a);
            a = arith::mul_mod(a, q2, modulus);
        }
        if a != set[i] {
            return Err(Error::invalid(format!("set not closed under *{q2} mod {modulus}")));
        }
        coset.sort_unstable();
        out.push(coset);
    }
    Ok(out)
}
/// Representative coset indices and `(member, image)` index pairs.
/// Unpaired coset indices and `(member, image)` index pairs.
pub type CosetPairing = (Vec<usize>, Vec<(usize, usize)>);

/// Matches each coset with its image under `a ↦ -qa`. Returns `(T, pairs)`
/// where `T` lists indices of the member of each pair with the smaller
/// minimum and `pairs` holds `(member, image)` index pairs.
pub fn pair_cosets(cosets: &[Vec<u64>], modulus: u64, q: u64) -> Result<CosetPairing> {
    let neg_q = (modulus - q % modulus) % modulus;
    let mut partner = vec![usize::MAX; cosets.len()];
    for (i, c) in cosets.iter().enumerate() {
        let img = arith::mul_mod(c[0], neg_q, modulus);
        let k = cosets
            .iter()
            .position(|d| d.binary_search(&img).is_ok())
            .ok_or_else(|| Error::invalid("cosets not closed under multiplication by -q"))?;
        if k == i {
            return Err(Error::inconsistent(format!(
                "coset {c:?} is fixed by -q but was classified as paired"
            )));
        }
        partner[i] = k;
    }
    let mut t = Vec::new();
    let mut pairs = Vec::new();
    for i in 0..cosets.len() {
        let k = partner[i];
        if partner[k] != i {
            return Err(Error::inconsistent("-q pairing is not an involution"));
        }
        if cosets[i][0] < cosets[k][0] {
            t.push(i);
            pairs.push((i, k));
        }
    }
    Ok((t, pairs))
}

pub fn factorize(field: &Field, n: u64, lam: Elem) -> Result<FactorizationReport> {
    factorize_with(field, n, lam, FactorOptions::default())
}

/// Requires `ord(λ) | q + 1`, the setting in which `x^n - λ` is its own
/// conjugate reciprocal and the factors close up into SCR factors and pairs.
pub fn factorize_with(
    field: &Field,
    n: u64,
    lam: Elem,
    opts: FactorOptions,
) -> Result<FactorizationReport> {
    let norm = normalize_with(field, n, lam, opts)?;
    let q = norm.q;
    let r = norm.r;
    if (q + 1) % r != 0 {
        return Err(Error::precondition(format!(
            "ord(lambda) = {r} does not divide q + 1 = {}",
            q + 1
        )));
    }
    let modulus = norm.modulus();
    let mut classes = Vec::new();
    let mut scr = Vec::new();
    let mut pairs = Vec::new();
    let mut omega = Vec::new();
    let mut omega_prime = Vec::new();
    for j in eligible_divisors(norm.n_prime, r) {
        let s_j = compute_sj(j, norm.n_prime, r)?;
        if s_j.len() as u64 * totient(r) != totient(j) {
            return Err(Error::inconsistent(format!("|S_{j}| = {}", s_j.len())));
        }
        let cosets = cyclotomic_cosets(&s_j, modulus, q)?;
        let ord = ord_q2(j, q);
        if cosets.iter().any(|c| c.len() as u64 != ord) {
            return Err(Error::inconsistent(format!("coset size differs from ord_{j}(q^2)")));
        }
        let pi = pi_indicator(j, q)?;
        let (gamma_or_beta, class_pairs) = if pi == 0 {
            let g = gamma(j, q, r)?;
            if g != cosets.len() as u64 {
                return Err(Error::inconsistent(format!("gamma({j}) != number of cosets")));
            }
            omega.push(j);
            for c in &cosets {
                let poly = min_poly(&norm.tower, norm.tower.pow(norm.xi, c[0]), field)?;
                if !poly.is_scr()? {
                    return Err(Error::inconsistent(format!(
                        "factor for coset {c:?} is not self-conjugate-reciprocal"
                    )));
                }
                scr.push(ScrFactor { poly, j, coset: c.clone() });
            }
            (g, Vec::new())
        } else {
            let b = beta(j, q, r)?;
            let (_, cp) = pair_cosets(&cosets, modulus, q)?;
            if b != cp.len() as u64 {
                return Err(Error::inconsistent(format!("beta({j}) != number of pairs")));
            }
            omega_prime.push(j);
            for &(a, b_idx) in &cp {
                let f = min_poly(&norm.tower, norm.tower.pow(norm.xi, cosets[a][0]), field)?;
                let f_dagger = f.conj_reciprocal()?;
                let image = min_poly(&norm.tower, norm.tower.pow(norm.xi, cosets[b_idx][0]), field)?;
                if f_dagger != image || f_dagger == f {
                    return Err(Error::inconsistent(format!(
                        "cosets {:?} and {:?} do not give a conjugate-reciprocal pair",
                        cosets[a], cosets[b_idx]
                    )));
                }
                pairs.push(CrPair {
                    f,
                    f_dagger,
                    j,
                    coset: cosets[a].clone(),
                    partner: cosets[b_idx].clone(),
                });
            }
            (b, cp)
        };
        classes.push(DivisorClass {
            j,
            s_j,
            cosets,
            pi,
            ord,
            gamma_or_beta,
            pairs: class_pairs,
        });
    }
    scr.sort_by(|a, b| a.poly.canonical_cmp(&b.poly));
    pairs.sort_by(|a, b| a.f.canonical_cmp(&b.f));
    let report = FactorizationReport {
        s: scr.len(),
        t: pairs.len(),
        multiplicity: norm.p_nu,
        norm,
        classes,
        omega,
        omega_prime,
        scr,
        pairs,
    };
    st_counts(&report)?;
    Ok(report)
}

/// `(s, t)` checked against `s = Σ_{Ω} γ(j)`, `t = Σ_{Ω'} β(j)` and the degree count.
pub fn st_counts(report: &FactorizationReport) -> Result<(usize, usize)> {
    let mut s = 0u64;
    let mut t = 0u64;
    let mut degree = 0u64;
    for c in &report.classes {
        if c.pi == 0 {
            s += c.gamma_or_beta;
            degree += c.gamma_or_beta * c.ord;
        } else {
            t += c.gamma_or_beta;
            degree += 2 * c.gamma_or_beta * c.ord;
        }
    }
    if s != report.scr.len() as u64 || t != report.pairs.len() as u64 || s as usize != report.s || t as usize != report.t {
        return Err(Error::inconsistent(format!(
            "factor lists ({}, {}) disagree with formulas ({s}, {t})",
            report.scr.len(),
            report.pairs.len()
        )));
    }
    if degree != report.norm.n_prime {
        return Err(Error::inconsistent(format!(
            "factor degrees sum to {degree}, expected {}",
            report.norm.n_prime
        )));
    }
    Ok((report.s, report.t))
}
