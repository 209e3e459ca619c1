//! (λ, ℓ)-quasi-twisted codes of length `nℓ` over `F_{q²}` with `gcd(n, q) = 1`.
//!
//! A codeword is read as an `n × ℓ` array, row `i` holding entries
//! `i ℓ .. (i+1) ℓ`. Column `j` packs into `a_j(x) = Σ_i c_{ij} x^i` in
//! `R = F_{q²}[x]/(x^n - λ)`, and the twist shift becomes multiplication by `x`.
//!
//! Over `R` the involution `a ↦ ã = Σ a_i^q x^{-i}` (with `x^{-1} = λ^{-1} x^{n-1}`)
//! gives the form `⟨a, b⟩ = Σ_j a_j b̃_j`. Splitting `x^n - λ` into SCR factors `g_i`
//! and pairs `h_j, h_j†` splits `R` into fields `G_i = F[x]/(g_i)`, which carry a
//! Hermitian duality, and pairs `H'_j = F[x]/(h_j)`, `H''_j = F[x]/(h_j†)`. The
//! map `c ↦ c̃ mod h_j` identifies `H''_j` with `H'_j`, and there the pair is
//! governed by the Euclidean form.

use std::sync::Arc;

use itertools::Itertools;
use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::arith;
use crate::error::{Error, Result};
use crate::factorizer::{factorize, FactorizationReport};
use crate::galois::{quotient_field, Elem, Field};
use crate::linalg::{self, Matrix, Subspace};
use crate::poly::Poly;

/// Image of `v` under `T_{λ,ℓ}`: row `i` moves to row `i + 1` and the last
/// row, scaled by `λ`, becomes the first.
pub fn twist_shift(field: &Field, n: usize, ell: usize, lam: Elem, v: &[Elem]) -> Vec<Elem> {
    assert_eq!(v.len(), n * ell, "vector length must be n * ell");
    let mut out = Vec::with_capacity(v.len());
    out.extend(v[(n - 1) * ell..].iter().map(|&c| field.mul(lam, c)));
    out.extend_from_slice(&v[..(n - 1) * ell]);
    out
}

/// `v ↦ (a_0, ..., a_{ℓ-1})` with `a_j = Σ_i v[iℓ + j] x^i`.
pub fn psi(field: &Field, n: usize, ell: usize, v: &[Elem]) -> Result<Vec<Poly>> {
    if v.len() != n * ell {
        return Err(Error::invalid(format!("vector of length {} is not n*ell = {}", v.len(), n * ell)));
    }
    Ok((0..ell)
        .map(|j| Poly::from_coeffs(field, (0..n).map(|i| v[i * ell + j]).collect()))
        .collect())
}

pub fn psi_inv(n: usize, ell: usize, a: &[Poly]) -> Vec<Elem> {
    assert_eq!(a.len(), ell);
    let mut v = vec![0; n * ell];
    for (j, aj) in a.iter().enumerate() {
        assert!(aj.coeffs().len() <= n, "component of degree >= n");
        for (i, &c) in aj.coeffs().iter().enumerate() {
            v[i * ell + j] = c;
        }
    }
    v
}

/// A (λ, ℓ)-QT code, stored as its row space over `F_{q²}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QtCode {
    pub n: usize,
    pub ell: usize,
    pub lam: Elem,
    pub space: Subspace,
}

impl QtCode {
    /// Checks that the row space is invariant under `T_{λ,ℓ}`.
    pub fn from_subspace(n: usize, ell: usize, lam: Elem, space: Subspace) -> Result<Self> {
        let code = QtCode { n, ell, lam, space };
        if space_len(&code) != n * ell {
            return Err(Error::invalid("code length is not n * ell"));
        }
        if !code.is_twist_invariant() {
            return Err(Error::invalid("row space is not invariant under the twist shift"));
        }
        Ok(code)
    }

    /// Smallest (λ, ℓ)-QT code containing `gens`.
    pub fn generated_by(field: &Field, n: usize, ell: usize, lam: Elem, gens: &[Vec<Elem>]) -> Result<Self> {
        let mut rows = Vec::new();
        for g in gens {
            if g.len() != n * ell {
                return Err(Error::invalid("generator length is not n * ell"));
            }
            let mut v = g.clone();
            for _ in 0..n {
                let next = twist_shift(field, n, ell, lam, &v);
                rows.push(std::mem::replace(&mut v, next));
            }
        }
        let space = if rows.is_empty() {
            Subspace::zero(field, n * ell)
        } else {
            Subspace::span(field, n * ell, &rows)
        };
        QtCode::from_subspace(n, ell, lam, space)
    }

    pub fn field(&self) -> &Field {
        self.space.field()
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn is_twist_invariant(&self) -> bool {
        let f = self.field().clone();
        self.space
            .basis()
            .row_vecs()
            .iter()
            .all(|r| self.space.contains(&twist_shift(&f, self.n, self.ell, self.lam, r)))
    }

    pub fn is_hermitian_self_dual(&self) -> Result<bool> {
        self.space.is_hermitian_self_dual()
    }
}

fn space_len(c: &QtCode) -> usize {
    c.space.len()
}

/// The Hermitian dual, a (λ^{-q}, ℓ)-QT code.
pub fn hermitian_dual_qt(c: &QtCode) -> Result<QtCode> {
    let f = c.field();
    let q = f.q().ok_or(Error::NoConjugation(f.order()))?;
    let lam = f.inv(f.pow(c.lam, q));
    let space = c.space.hermitian_dual()?;
    QtCode::from_subspace(c.n, c.ell, lam, space)
}

#[derive(Clone, Debug)]
struct Component {
    factor: Poly,
    field: Field,
    idempotent: Poly,
}

/// A Hermitian-type component: a code of length `ℓ` over `G_i = F[x]/(g_i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HermitianPart {
    pub factor: Poly,
    pub code: Subspace,
}

/// A Euclidean-type pair over `H'_j = F[x]/(h_j)`; `c2` is the image of the
/// `H''_j` component under `c ↦ c̃ mod h_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EuclideanPair {
    pub factor: Poly,
    pub partner: Poly,
    pub c1: Subspace,
    pub c2: Subspace,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrtComponents {
    pub ell: usize,
    pub hermitian: Vec<HermitianPart>,
    pub euclidean: Vec<EuclideanPair>,
}

/// `R = F_{q²}[x]/(x^n - λ)` together with its CRT splitting.
#[derive(Clone, Debug)]
pub struct QtRing {
    field: Field,
    n: usize,
    lam: Elem,
    q: u64,
    modulus: Poly,
    report: Arc<FactorizationReport>,
    hermitian: Vec<Component>,
    pairs: Vec<(Component, Component)>,
}

impl QtRing {
    /// Needs `gcd(n, q) = 1` and `ord(λ) | q + 1`.
    pub fn new(field: &Field, n: usize, lam: Elem) -> Result<Self> {
        let report = Arc::new(factorize(field, n as u64, lam)?);
        let q = report.norm.q;
        if report.norm.nu != 0 {
            return Err(Error::Precondition(format!("gcd(n, q) = gcd({n}, {q}) != 1")));
        }
        let modulus = report.target();
        let component = |factor: &Poly| -> Result<Component> {
            let cof = modulus.div_exact(factor)?;
            let idempotent = cof.mulmod(&cof.inv_mod(factor)?, &modulus)?;
            Ok(Component {
                factor: factor.clone(),
                field: quotient_field(field, factor)?,
                idempotent,
            })
        };
        let hermitian = report.scr.iter().map(|g| component(&g.poly)).collect::<Result<Vec<_>>>()?;
        let pairs = report
            .pairs
            .iter()
            .map(|p| Ok((component(&p.f)?, component(&p.f_dagger)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(QtRing {
            field: field.clone(),
            n,
            lam,
            q,
            modulus,
            report,
            hermitian,
            pairs,
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn lam(&self) -> Elem {
        self.lam
    }

    pub fn report(&self) -> &Arc<FactorizationReport> {
        &self.report
    }

    /// `x^n - λ`
    pub fn modulus(&self) -> &Poly {
        &self.modulus
    }

    /// Component fields `G_i`, in the order of the SCR factors.
    pub fn hermitian_fields(&self) -> Vec<Field> {
        self.hermitian.iter().map(|c| c.field.clone()).collect()
    }

    /// Component fields `H'_j`, in the order of the pairs.
    pub fn euclidean_fields(&self) -> Vec<Field> {
        self.pairs.iter().map(|(c, _)| c.field.clone()).collect()
    }

    /// `ã = Σ a_i^q x^{-i}` in `R`.
    pub fn tilde(&self, a: &Poly) -> Result<Poly> {
        let f = &self.field;
        let a = a.rem(&self.modulus)?;
        let lam_inv = f.inv(self.lam);
        let mut out = vec![0; self.n];
        for (i, &c) in a.coeffs().iter().enumerate() {
            let c = f.pow(c, self.q);
            if i == 0 {
                out[0] = f.add(out[0], c);
            } else {
                out[self.n - i] = f.add(out[self.n - i], f.mul(lam_inv, c));
            }
        }
        Ok(Poly::from_coeffs(f, out))
    }

    /// `⟨a, b⟩ = Σ_j a_j b̃_j` in `R`.
    pub fn form(&self, a: &[Poly], b: &[Poly]) -> Result<Poly> {
        let mut acc = Poly::zero(&self.field);
        for (x, y) in a.iter().zip(b) {
            acc = acc.add(&x.mulmod(&self.tilde(y)?, &self.modulus)?);
        }
        Ok(acc)
    }

    pub fn psi(&self, ell: usize, v: &[Elem]) -> Result<Vec<Poly>> {
        psi(&self.field, self.n, ell, v)
    }

    pub fn psi_inv(&self, ell: usize, a: &[Poly]) -> Vec<Elem> {
        psi_inv(self.n, ell, a)
    }

    pub fn twist_shift(&self, ell: usize, v: &[Elem]) -> Vec<Elem> {
        twist_shift(&self.field, self.n, ell, self.lam, v)
    }

    /// The involution induced on a Hermitian component field, written out on
    /// residues; it agrees with `r ↦ r^{q^{deg g_i}}`.
    pub fn bar(&self, i: usize, r: Elem) -> Result<Elem> {
        let c = &self.hermitian[i];
        let lifted = Poly::from_coeffs(&self.field, c.field.coeffs(r));
        Ok(to_elem(&c.field, &self.tilde(&lifted)?.rem(&c.factor)?))
    }

    fn check_code(&self, code: &QtCode) -> Result<()> {
        if code.n != self.n || !code.field().same_as(&self.field) {
            return Err(Error::invalid("code does not live over this ring"));
        }
        if code.lam != self.lam {
            return Err(Error::invalid("code twist differs from the ring's lambda"));
        }
        Ok(())
    }

    pub fn decompose(&self, code: &QtCode) -> Result<CrtComponents> {
        self.check_code(code)?;
        let ell = code.ell;
        let lifted: Vec<Vec<Poly>> = code
            .space
            .basis()
            .row_vecs()
            .iter()
            .map(|v| self.psi(ell, v))
            .collect::<Result<_>>()?;
        let project = |c: &Component, hat: bool| -> Result<Subspace> {
            let mut rows = Vec::with_capacity(lifted.len());
            for a in &lifted {
                let mut row = Vec::with_capacity(ell);
                for aj in a {
                    let r = if hat { self.tilde(aj)? } else { aj.clone() };
                    row.push(to_elem(&c.field, &r.rem(&c.factor)?));
                }
                rows.push(row);
            }
            Ok(span_or_zero(&c.field, ell, &rows))
        };
        let hermitian = self
            .hermitian
            .iter()
            .map(|c| Ok(HermitianPart { factor: c.factor.clone(), code: project(c, false)? }))
            .collect::<Result<Vec<_>>>()?;
        let euclidean = self
            .pairs
            .iter()
            .map(|(h, hd)| {
                Ok(EuclideanPair {
                    factor: h.factor.clone(),
                    partner: hd.factor.clone(),
                    c1: project(h, false)?,
                    c2: project(h, true)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(CrtComponents { ell, hermitian, euclidean })
    }

    pub fn reconstruct(&self, parts: &CrtComponents) -> Result<QtCode> {
        let ell = parts.ell;
        if parts.hermitian.len() != self.hermitian.len() || parts.euclidean.len() != self.pairs.len() {
            return Err(Error::invalid("component count does not match the factorization"));
        }
        let mut rows: Vec<Vec<Elem>> = Vec::new();
        let mut lift = |c: &Component, code: &Subspace, unhat: Option<&Component>| -> Result<()> {
            if code.len() != ell || !code.field().same_as(&unhat.unwrap_or(c).field) {
                return Err(Error::invalid("component code has the wrong length or field"));
            }
            for b in code.basis().row_vecs() {
                let mut polys = Vec::with_capacity(ell);
                for &e in &b {
                    let src = unhat.unwrap_or(c);
                    let p = Poly::from_coeffs(&self.field, src.field.coeffs(e));
                    let p = if unhat.is_some() { self.tilde(&p)? } else { p };
                    polys.push(p.rem(&c.factor)?.mulmod(&c.idempotent, &self.modulus)?);
                }
                for _ in 0..c.factor.deg() {
                    rows.push(self.psi_inv(ell, &polys));
                    for p in polys.iter_mut() {
                        *p = p.mulmod(&Poly::x(&self.field), &self.modulus)?;
                    }
                }
            }
            Ok(())
        };
        for (c, part) in self.hermitian.iter().zip(&parts.hermitian) {
            lift(c, &part.code, None)?;
        }
        for ((h, hd), pair) in self.pairs.iter().zip(&parts.euclidean) {
            lift(h, &pair.c1, None)?;
            lift(hd, &pair.c2, Some(h))?;
        }
        let space = span_or_zero(&self.field, self.n * ell, &rows);
        QtCode::from_subspace(self.n, ell, self.lam, space)
    }

    /// Componentwise test: every `C_i` Hermitian self-dual over `G_i` and
    /// every hatted `C''_j` equal to the Euclidean dual of `C'_j`.
    pub fn is_hermitian_self_dual(&self, code: &QtCode) -> Result<bool> {
        let parts = self.decompose(code)?;
        for h in &parts.hermitian {
            if !h.code.is_hermitian_self_dual()? {
                return Ok(false);
            }
        }
        Ok(parts.euclidean.iter().all(|e| e.c2 == e.c1.euclidean_dual()))
    }

    /// Component tuples of every Hermitian self-dual (λ, ℓ)-QT code.
    pub fn enumerate_self_dual(&self, ell: usize) -> Result<Vec<CrtComponents>> {
        let mut herm_choices: Vec<Vec<Subspace>> = Vec::new();
        for c in &self.hermitian {
            let mut v = Vec::new();
            if ell.is_multiple_of(2) {
                for s in linalg::subspaces(&c.field, ell, ell / 2) {
                    if s.is_hermitian_self_dual()? {
                        v.push(s);
                    }
                }
            }
            herm_choices.push(v);
        }
        let pair_choices: Vec<Vec<Subspace>> = self
            .pairs
            .iter()
            .map(|(h, _)| (0..=ell).flat_map(|d| linalg::subspaces(&h.field, ell, d)).collect())
            .collect();
        let s = herm_choices.len();
        let all: Vec<Vec<Subspace>> = herm_choices.into_iter().chain(pair_choices).collect();
        Ok(all
            .iter()
            .map(|c| c.iter())
            .multi_cartesian_product()
            .map(|pick| CrtComponents {
                ell,
                hermitian: self
                    .hermitian
                    .iter()
                    .zip(&pick[..s])
                    .map(|(c, code)| HermitianPart { factor: c.factor.clone(), code: (*code).clone() })
                    .collect(),
                euclidean: self
                    .pairs
                    .iter()
                    .zip(&pick[s..])
                    .map(|((h, hd), code)| EuclideanPair {
                        factor: h.factor.clone(),
                        partner: hd.factor.clone(),
                        c1: (*code).clone(),
                        c2: code.euclidean_dual(),
                    })
                    .collect(),
            })
            .collect())
    }
}

fn to_elem(field: &Field, p: &Poly) -> Elem {
    field.from_coeffs(p.coeffs())
}

fn span_or_zero(field: &Field, len: usize, rows: &[Vec<Elem>]) -> Subspace {
    if rows.is_empty() {
        Subspace::zero(field, len)
    } else {
        Subspace::from_matrix(&Matrix::from_rows(field, len, rows))
    }
}

/// Number of linear codes of length `ell` over a field of order `Q`:
/// `Σ_{i=0}^{ℓ} Π_{j<i} (Q^ℓ - Q^j)/(Q^i - Q^j)`.
pub fn n_linear(order: u64, ell: usize) -> BigUint {
    n_linear_big(&BigUint::from(order), ell)
}

fn n_linear_big(order: &BigUint, ell: usize) -> BigUint {
    let pw = |k: usize| order.pow(k as u32);
    let mut total = BigUint::zero();
    for i in 0..=ell {
        let mut num = BigUint::one();
        let mut den = BigUint::one();
        for j in 0..i {
            num *= pw(ell) - pw(j);
            den *= pw(i) - pw(j);
        }
        total += num / den;
    }
    total
}

/// Number of Hermitian self-dual codes of length `ell` over the field of
/// order `Q = s²`: `Π_{i<ℓ/2} (s^{2i+1} + 1)`, or 0 for odd `ℓ`.
pub fn n_hermitian_self_dual(order: u64, ell: usize) -> Result<BigUint> {
    let (p, e) = arith::prime_power(order)
        .filter(|&(_, e)| e % 2 == 0)
        .ok_or_else(|| Error::invalid(format!("{order} is not an even power of a prime")))?;
    Ok(n_hermitian_big(&BigUint::from(p).pow(e / 2), ell))
}

fn n_hermitian_big(s: &BigUint, ell: usize) -> BigUint {
    if ell % 2 == 1 {
        return BigUint::zero();
    }
    (0..ell / 2).fold(BigUint::one(), |acc, i| acc * (s.pow(2 * i as u32 + 1) + 1u32))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QtCount {
    pub count: BigUint,
    /// `(deg g_i, N_H(q^{2 deg g_i}, ℓ))` per SCR factor.
    pub hermitian_factors: Vec<(usize, BigUint)>,
    /// `(deg h_j, N(q^{2 deg h_j}, ℓ))` per pair.
    pub euclidean_factors: Vec<(usize, BigUint)>,
}

/// `Π_i N_H(q^{2d_i}, ℓ) Π_j N(q^{2e_j}, ℓ)` with `d_i = deg g_i`, `e_j = deg h_j`.
pub fn count_qt_self_dual(field: &Field, n: usize, lam: Elem, ell: usize) -> Result<QtCount> {
    if ell == 0 {
        return Err(Error::invalid("ell must be positive"));
    }
    let report = factorize(field, n as u64, lam)?;
    if report.norm.nu != 0 {
        return Err(Error::Precondition(format!("gcd(n, q) = gcd({n}, {}) != 1", report.norm.q)));
    }
    let q = BigUint::from(report.norm.q);
    let hermitian_factors: Vec<(usize, BigUint)> = report
        .scr
        .iter()
        .map(|g| {
            let d = g.poly.deg();
            (d, n_hermitian_big(&q.pow(d as u32), ell))
        })
        .collect();
    let euclidean_factors: Vec<(usize, BigUint)> = report
        .pairs
        .iter()
        .map(|p| {
            let e = p.f.deg();
            (e, n_linear_big(&q.pow(2 * e as u32), ell))
        })
        .collect();
    let count = hermitian_factors
        .iter()
        .chain(&euclidean_factors)
        .fold(BigUint::one(), |acc, (_, c)| acc * c);
    Ok(QtCount { count, hermitian_factors, euclidean_factors })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois::make_field;

    #[test]
    fn psi_packing_and_shift() {
        let f9 = make_field(3, 2).unwrap();
        let v = vec![1, 2, 3, 4];
        let a = psi(&f9, 2, 2, &v).unwrap();
        assert_eq!(a[0], Poly::from_coeffs(&f9, vec![1, 3]));
        assert_eq!(a[1], Poly::from_coeffs(&f9, vec![2, 4]));
        assert_eq!(psi_inv(2, 2, &a), v);
        assert!(psi(&f9, 2, 2, &[0; 4]).unwrap().iter().all(|p| p.is_zero()));
        let m1 = f9.from_int(-1);
        assert_eq!(twist_shift(&f9, 2, 1, m1, &[5, 7]), vec![f9.neg(7), 5]);
        let mut w = vec![1, 2, 3, 4, 5, 6];
        for _ in 0..3 {
            w = twist_shift(&f9, 3, 2, 7, &w);
        }
        assert_eq!(w, [1, 2, 3, 4, 5, 6].iter().map(|&c| f9.mul(7, c)).collect::<Vec<_>>());
    }

    #[test]
    fn dual_twist() {
        let f4 = make_field(2, 2).unwrap();
        let a = f4.generator();
        let full = QtCode::from_subspace(3, 1, a, Subspace::full(&f4, 3)).unwrap();
        let d = hermitian_dual_qt(&full).unwrap();
        assert!(d.space.is_empty());
        assert_eq!(d.lam, a);
        let f9 = make_field(3, 2).unwrap();
        let c = QtCode::generated_by(&f9, 2, 2, 1, &[vec![1, 0, 0, 0]]).unwrap();
        assert_eq!(hermitian_dual_qt(&c).unwrap().lam, 1);
    }

    #[test]
    fn component_conjugation_is_the_bar_map() {
        let f4 = make_field(2, 2).unwrap();
        for (n, lam) in [(3usize, 1), (5, f4.generator()), (7, 1)] {
            let ring = QtRing::new(&f4, n, lam).unwrap();
            for (i, g) in ring.hermitian_fields().iter().enumerate() {
                for r in g.elements() {
                    assert_eq!(ring.bar(i, r).unwrap(), g.conj(r).unwrap());
                }
            }
        }
    }

    #[test]
    fn splitting_shapes() {
        let f4 = make_field(2, 2).unwrap();
        let ring = QtRing::new(&f4, 3, 1).unwrap();
        assert_eq!(ring.hermitian_fields().len(), 3);
        assert!(ring.hermitian_fields().iter().all(|g| g.order() == 4));
        let f9 = make_field(3, 2).unwrap();
        let ring = QtRing::new(&f9, 4, f9.from_int(-1)).unwrap();
        assert_eq!(ring.euclidean_fields().len(), 2);
        let zero = QtCode::from_subspace(4, 2, f9.from_int(-1), Subspace::zero(&f9, 8)).unwrap();
        let parts = ring.decompose(&zero).unwrap();
        assert!(parts.euclidean.iter().all(|e| e.c1.is_empty() && e.c2.is_empty()));
        assert!(!ring.is_hermitian_self_dual(&zero).unwrap());
        assert!(QtRing::new(&f9, 3, 1).is_err());
    }

    #[test]
    fn round_trip_and_dimension_count() {
        let f4 = make_field(2, 2).unwrap();
        let ring = QtRing::new(&f4, 5, f4.generator()).unwrap();
        let gens = vec![vec![1, 0, 2, 3, 0, 1, 0, 0, 1, 2], vec![0, 0, 1, 0, 0, 0, 3, 0, 0, 0]];
        let code = QtCode::generated_by(&f4, 5, 2, f4.generator(), &gens).unwrap();
        let parts = ring.decompose(&code).unwrap();
        let total: usize = parts.hermitian.iter().map(|h| h.factor.deg() * h.code.dim()).sum::<usize>()
            + parts
                .euclidean
                .iter()
                .map(|e| e.factor.deg() * (e.c1.dim() + e.c2.dim()))
                .sum::<usize>();
        assert_eq!(total, code.dim());
        assert_eq!(ring.reconstruct(&parts).unwrap(), code);
    }

    #[test]
    fn counting_formulas() {
        assert_eq!(n_linear(2, 2), BigUint::from(5u32));
        assert_eq!(n_linear(3, 2), BigUint::from(6u32));
        assert_eq!(n_linear(7, 0), BigUint::one());
        assert_eq!(n_hermitian_self_dual(4, 2).unwrap(), BigUint::from(3u32));
        assert_eq!(n_hermitian_self_dual(9, 2).unwrap(), BigUint::from(4u32));
        assert_eq!(n_hermitian_self_dual(9, 3).unwrap(), BigUint::zero());
        assert!(n_hermitian_self_dual(8, 2).is_err());
        let f4 = make_field(2, 2).unwrap();
        assert_eq!(count_qt_self_dual(&f4, 3, 1, 2).unwrap().count, BigUint::from(27u32));
        assert_eq!(count_qt_self_dual(&f4, 3, 1, 3).unwrap().count, BigUint::zero());
        let f9 = make_field(3, 2).unwrap();
        assert_eq!(count_qt_self_dual(&f9, 4, f9.from_int(-1), 2).unwrap().count, BigUint::from(144u32));
    }

    #[test]
    fn self_dual_enumeration_small() {
        let f4 = make_field(2, 2).unwrap();
        let ring = QtRing::new(&f4, 3, 1).unwrap();
        let tuples = ring.enumerate_self_dual(2).unwrap();
        assert_eq!(tuples.len(), 27);
        let mut codes = Vec::new();
        for t in &tuples {
            let c = ring.reconstruct(t).unwrap();
            assert!(c.is_hermitian_self_dual().unwrap());
            assert!(ring.is_hermitian_self_dual(&c).unwrap());
            assert_eq!(&ring.decompose(&c).unwrap(), t);
            codes.push(c);
        }
        for i in 0..codes.len() {
            for j in i + 1..codes.len() {
                assert_ne!(codes[i], codes[j]);
            }
        }
        let f9 = make_field(3, 2).unwrap();
        let ring = QtRing::new(&f9, 4, f9.from_int(-1)).unwrap();
        let tuples = ring.enumerate_self_dual(2).unwrap();
        assert_eq!(tuples.len(), 144);
        let mut rebuilt: Vec<Subspace> = tuples.iter().map(|t| ring.reconstruct(t).unwrap().space).collect();
        let mut scanned = crate::oracle::qt_self_dual_scan(&f9, 4, f9.from_int(-1), 2, crate::oracle::SUBSPACE_BOUND)
            .unwrap()
            .value;
        let key = |s: &Subspace| s.basis().row_vecs();
        rebuilt.sort_by_key(key);
        scanned.sort_by_key(key);
        assert_eq!(rebuilt, scanned);
    }
}
