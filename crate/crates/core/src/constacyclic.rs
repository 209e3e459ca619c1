//! λ-constacyclic codes over `F_{q²}` as exponent vectors over a factorization
//! of `x^n - λ`: duals, Hermitian hulls, self-dual and LCD codes.
//!
//! A code is generated by `g = Π g_i^{u_i} Π f_j^{v_j} (f_j†)^{w_j}` with all
//! exponents in `[0, p^ν]`, indexed like `report.scr` and `report.pairs`.

use std::collections::BTreeSet;
use std::sync::Arc;

use itertools::Itertools;
use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::factorizer::FactorizationReport;
use crate::linalg::Matrix;
use crate::poly::Poly;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExponentVector {
    pub u: Vec<u64>,
    pub v: Vec<u64>,
    pub w: Vec<u64>,
}

impl ExponentVector {
    pub fn constant(report: &FactorizationReport, e: u64) -> Self {
        ExponentVector {
            u: vec![e; report.s],
            v: vec![e; report.t],
            w: vec![e; report.t],
        }
    }

    /// `(u, v, w) ↦ (p^ν - u, p^ν - w, p^ν - v)`, the exponents of `h†` for `h = (x^n - λ)/g`.
    pub fn dual(&self, p_nu: u64) -> Self {
        ExponentVector {
            u: self.u.iter().map(|&e| p_nu - e).collect(),
            v: self.w.iter().map(|&e| p_nu - e).collect(),
            w: self.v.iter().map(|&e| p_nu - e).collect(),
        }
    }

    fn check(&self, report: &FactorizationReport) -> Result<()> {
        let p_nu = report.multiplicity;
        if self.u.len() != report.s || self.v.len() != report.t || self.w.len() != report.t {
            return Err(Error::invalid(format!(
                "exponent vector shape ({}, {}, {}) does not match s = {}, t = {}",
                self.u.len(),
                self.v.len(),
                self.w.len(),
                report.s,
                report.t
            )));
        }
        if let Some(e) = self.u.iter().chain(&self.v).chain(&self.w).find(|&&e| e > p_nu) {
            return Err(Error::invalid(format!("exponent {e} exceeds p^nu = {p_nu}")));
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct ConstaCode {
    report: Arc<FactorizationReport>,
    exps: ExponentVector,
    gen: Poly,
}

impl PartialEq for ConstaCode {
    fn eq(&self, other: &Self) -> bool {
        self.gen == other.gen
    }
}

impl ConstaCode {
    pub fn report(&self) -> &Arc<FactorizationReport> {
        &self.report
    }

    pub fn exponents(&self) -> &ExponentVector {
        &self.exps
    }

    pub fn generator(&self) -> &Poly {
        &self.gen
    }

    pub fn len(&self) -> usize {
        self.report.n() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn dim(&self) -> usize {
        self.len() - self.gen.deg()
    }

    /// Recovers the exponent vector of a monic divisor `gen` of `x^n - λ`.
    pub fn from_generator(report: &Arc<FactorizationReport>, gen: &Poly) -> Result<Self> {
        if !gen.is_monic() || !gen.divides(&report.target()) {
            return Err(Error::invalid("generator is not a monic divisor of x^n - lambda"));
        }
        let strip = |rest: &mut Poly, f: &Poly| -> Result<u64> {
            let mut e = 0;
            while let Ok((q, r)) = rest.divrem(f) {
                if !r.is_zero() {
                    break;
                }
                *rest = q;
                e += 1;
            }
            Ok(e)
        };
        let mut rest = gen.clone();
        let mut exps = ExponentVector::constant(report, 0);
        for (i, g) in report.scr.iter().enumerate() {
            exps.u[i] = strip(&mut rest, &g.poly)?;
        }
        for (i, pr) in report.pairs.iter().enumerate() {
            exps.v[i] = strip(&mut rest, &pr.f)?;
            exps.w[i] = strip(&mut rest, &pr.f_dagger)?;
        }
        if !rest.is_one() {
            return Err(Error::inconsistent("generator has a factor outside the report"));
        }
        code_from_exponents(report, exps)
    }
}

/// `g = Π g_i^{u_i} Π f_j^{v_j} (f_j†)^{w_j}`
pub fn code_from_exponents(report: &Arc<FactorizationReport>, exps: ExponentVector) -> Result<ConstaCode> {
    exps.check(report)?;
    let mut gen = Poly::one(report.field());
    for (g, &e) in report.scr.iter().zip(&exps.u) {
        gen = gen.mul(&g.poly.pow(e));
    }
    for (i, pr) in report.pairs.iter().enumerate() {
        gen = gen.mul(&pr.f.pow(exps.v[i])).mul(&pr.f_dagger.pow(exps.w[i]));
    }
    Ok(ConstaCode {
        report: report.clone(),
        exps,
        gen,
    })
}

pub fn dual_code(c: &ConstaCode) -> ConstaCode {
    let exps = c.exps.dual(c.report.multiplicity);
    code_from_exponents(&c.report, exps).expect("dual exponents stay in range")
}

/// Generator of the Hermitian dual, from the exponent transform.
pub fn dual_generator(c: &ConstaCode) -> Poly {
    dual_code(c).gen
}

/// Generator of the Hermitian dual computed as `h†` with `h = (x^n - λ)/g`.
pub fn dual_generator_direct(c: &ConstaCode) -> Result<Poly> {
    let h = c.report.target().div_exact(&c.gen)?;
    h.conj_reciprocal()
}

/// `lcm(g, h†)`
pub fn hull_generator(c: &ConstaCode) -> Poly {
    c.gen
        .lcm(&dual_generator(c))
        .expect("generators are nonzero")
}

pub fn hull_dimension(c: &ConstaCode) -> u64 {
    let p_nu = c.report.multiplicity;
    let e = &c.exps;
    let scr: u64 = c
        .report
        .scr
        .iter()
        .zip(&e.u)
        .map(|(g, &u)| g.poly.deg() as u64 * u.min(p_nu - u))
        .sum();
    let pairs: u64 = c
        .report
        .pairs
        .iter()
        .enumerate()
        .map(|(i, pr)| {
            let (v, w) = (e.v[i], e.w[i]);
            pr.f.deg() as u64 * (v.min(p_nu - w) + w.min(p_nu - v))
        })
        .sum();
    scr + pairs
}

/// Every value `Σ_{Ω} ord_j a_j + Σ_{Ω'} ord_j b_j` with
/// `0 ≤ a_j ≤ γ(j) ⌊p^ν/2⌋` and `0 ≤ b_j ≤ β(j) p^ν`.
pub fn hull_dim_spectrum(report: &FactorizationReport) -> Vec<u64> {
    let p_nu = report.multiplicity;
    let mut reach: BTreeSet<u64> = BTreeSet::from([0]);
    for c in &report.classes {
        let top = if c.pi == 0 {
            c.gamma_or_beta * (p_nu / 2)
        } else {
            c.gamma_or_beta * p_nu
        };
        reach = reach
            .iter()
            .flat_map(|&s| (0..=top).map(move |a| s + c.ord * a))
            .collect();
    }
    reach.into_iter().collect()
}

pub fn is_hermitian_self_dual(c: &ConstaCode) -> bool {
    c.gen == dual_generator(c)
}

pub fn is_lcd(c: &ConstaCode) -> bool {
    hull_generator(c) == c.report.target()
}

fn product(choices: Vec<Vec<u64>>) -> impl Iterator<Item = Vec<u64>> {
    // itertools yields one empty tuple for an empty list of factors
    choices.into_iter().map(|c| c.into_iter()).multi_cartesian_product()
}

/// Exponent vectors of all Hermitian self-dual codes: `u = p^ν/2` on every
/// SCR factor and `v + w = p^ν` on every pair. Empty when an SCR factor
/// exists and `p^ν` is odd.
pub fn enumerate_self_dual(report: &FactorizationReport) -> Box<dyn Iterator<Item = ExponentVector>> {
    let p_nu = report.multiplicity;
    if report.s > 0 && p_nu % 2 == 1 {
        return Box::new(std::iter::empty());
    }
    let u = vec![p_nu / 2; report.s];
    let choices = vec![(0..=p_nu).collect::<Vec<_>>(); report.t];
    Box::new(product(choices).map(move |v| ExponentVector {
        u: u.clone(),
        w: v.iter().map(|&e| p_nu - e).collect(),
        v,
    }))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SelfDualCase {
    /// No SCR factor: `(p^ν + 1)^t`.
    NoScrFactors,
    /// SCR factors, `p = 2`, `ν ≥ 1`: `(2^ν + 1)^t`.
    EvenCharacteristic,
    /// SCR factors, `p = 2`, `ν = 0`: an SCR factor would need exponent `1/2`,
    /// so there are none, although `(2^ν + 1)^t = 2^t` suggests otherwise.
    EvenCharacteristicSimpleRoots,
    /// SCR factors, `p` odd: none.
    OddCharacteristic,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SelfDualCount {
    pub count: BigUint,
    pub case: SelfDualCase,
    /// The closed form `(p^ν+1)^t`, `(2^ν+1)^t` or `0` read off by case.
    pub closed_form: BigUint,
}

pub fn count_self_dual(report: &FactorizationReport) -> SelfDualCount {
    let p = report.field().characteristic();
    let p_nu = report.multiplicity;
    let t = report.t as u32;
    let pow = |b: u64| BigUint::from(b).pow(t);
    let (case, count, closed_form) = if report.s == 0 {
        (SelfDualCase::NoScrFactors, pow(p_nu + 1), pow(p_nu + 1))
    } else if p == 2 && report.norm.nu > 0 {
        (SelfDualCase::EvenCharacteristic, pow(p_nu + 1), pow(p_nu + 1))
    } else if p == 2 {
        (SelfDualCase::EvenCharacteristicSimpleRoots, BigUint::zero(), pow(2))
    } else {
        (SelfDualCase::OddCharacteristic, BigUint::zero(), BigUint::zero())
    };
    SelfDualCount { count, case, closed_form }
}

/// Exponent vectors of all LCD codes: `u ∈ {0, p^ν}`, `(v, w) ∈ {(0,0), (p^ν,p^ν)}`.
pub fn enumerate_lcd(report: &FactorizationReport) -> impl Iterator<Item = ExponentVector> {
    let p_nu = report.multiplicity;
    let s = report.s;
    let choices = vec![vec![0, p_nu]; report.s + report.t];
    product(choices).map(move |c| ExponentVector {
        u: c[..s].to_vec(),
        v: c[s..].to_vec(),
        w: c[s..].to_vec(),
    })
}

/// `2^{s+t}`
pub fn count_lcd(report: &FactorizationReport) -> BigUint {
    BigUint::one() << (report.s + report.t)
}

/// Every exponent vector, i.e. every λ-constacyclic code.
pub fn enumerate_all(report: &FactorizationReport) -> impl Iterator<Item = ExponentVector> {
    let p_nu = report.multiplicity;
    let (s, t) = (report.s, report.t);
    product(vec![(0..=p_nu).collect(); s + 2 * t]).map(move |c| ExponentVector {
        u: c[..s].to_vec(),
        v: c[s..s + t].to_vec(),
        w: c[s + t..].to_vec(),
    })
}

/// `(p^ν + 1)^{s + 2t}`
pub fn count_all(report: &FactorizationReport) -> BigUint {
    BigUint::from(report.multiplicity + 1).pow((report.s + 2 * report.t) as u32)
}

/// Rows `x^i g(x)` for `0 ≤ i < dim`.
pub fn generator_matrix(c: &ConstaCode) -> Matrix {
    let n = c.len();
    let f = c.report.field();
    let mut m = Matrix::zeros(f, 0, n);
    for i in 0..c.dim() {
        let mut row = vec![0; n];
        row[i..i + c.gen.coeffs().len()].copy_from_slice(c.gen.coeffs());
        m.push_row(&row);
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factorizer::factorize;
    use crate::galois::make_field;
    use crate::linalg::Subspace;

    fn report(p: u64, m: u32, n: u64, lam_log: u64) -> Arc<FactorizationReport> {
        let f = make_field(p, m).unwrap();
        Arc::new(factorize(&f, n, f.gen_pow(lam_log)).unwrap())
    }

    #[test]
    fn extremes() {
        let rep = report(2, 2, 5, 1);
        let whole = code_from_exponents(&rep, ExponentVector::constant(&rep, 0)).unwrap();
        assert!(whole.generator().is_one());
        assert_eq!(whole.dim(), 5);
        assert_eq!(dual_generator(&whole), rep.target());
        let zero = code_from_exponents(&rep, ExponentVector::constant(&rep, 1)).unwrap();
        assert_eq!(*zero.generator(), rep.target());
        assert_eq!(zero.dim(), 0);
        assert!(dual_generator(&zero).is_one());
        assert!(is_lcd(&whole) && is_lcd(&zero));
        let bad = ExponentVector { u: vec![2], v: vec![0], w: vec![0] };
        assert!(code_from_exponents(&rep, bad).is_err());
    }

    #[test]
    fn x5_minus_alpha_codes() {
        let rep = report(2, 2, 5, 1);
        let lin = code_from_exponents(&rep, ExponentVector { u: vec![1], v: vec![0], w: vec![0] }).unwrap();
        assert_eq!(lin.dim(), 4);
        assert_eq!(lin.generator().deg(), 1);
        let pair_f = code_from_exponents(&rep, ExponentVector { u: vec![0], v: vec![1], w: vec![0] }).unwrap();
        assert_eq!(pair_f.dim(), 3);
        assert_eq!(dual_code(&pair_f).exponents(), &ExponentVector { u: vec![1], v: vec![1], w: vec![0] });
        assert_eq!(hull_dimension(&pair_f), 2);
        assert_eq!(hull_dim_spectrum(&rep), vec![0, 2]);
        assert_eq!(count_lcd(&rep), BigUint::from(4u32));
        assert_eq!(enumerate_lcd(&rep).count(), 4);
        let sd = count_self_dual(&rep);
        assert_eq!(sd.count, BigUint::zero());
        assert_eq!(sd.case, SelfDualCase::EvenCharacteristicSimpleRoots);
        assert_eq!(sd.closed_form, BigUint::from(2u32));
        assert_eq!(enumerate_self_dual(&rep).count(), 0);
    }

    #[test]
    fn spectrum_with_repeated_roots() {
        let rep = report(2, 2, 10, 1);
        assert_eq!(hull_dim_spectrum(&rep), vec![0, 1, 2, 3, 4, 5]);
        assert_eq!(count_self_dual(&rep).count, BigUint::from(3u32));
        assert_eq!(enumerate_self_dual(&rep).count(), 3);
        assert_eq!(report(2, 2, 1, 0).classes.len(), 1);
        assert_eq!(hull_dim_spectrum(&report(3, 2, 1, 0)), vec![0]);
    }

    #[test]
    fn negacyclic_length_4_over_f9() {
        let rep = report(3, 2, 4, 4);
        let sd = count_self_dual(&rep);
        assert_eq!(sd.count, BigUint::from(4u32));
        assert_eq!(sd.case, SelfDualCase::NoScrFactors);
        let codes: Vec<_> = enumerate_self_dual(&rep)
            .map(|e| code_from_exponents(&rep, e).unwrap())
            .collect();
        assert_eq!(codes.len(), 4);
        for c in &codes {
            assert!(is_hermitian_self_dual(c));
            assert_eq!(c.dim(), 2);
            assert!(generator_matrix(c).hermitian_gram().unwrap().is_zero());
        }
        assert_eq!(count_lcd(&rep), BigUint::from(4u32));
    }

    #[test]
    fn exponent_and_polynomial_routes_agree() {
        for (p, m, n, l) in [(2, 2, 5, 1), (2, 2, 6, 0), (3, 2, 6, 4), (2, 4, 6, 3), (5, 2, 5, 4)] {
            let rep = report(p, m, n, l);
            for e in enumerate_all(&rep) {
                let c = code_from_exponents(&rep, e.clone()).unwrap();
                assert_eq!(dual_generator(&c), dual_generator_direct(&c).unwrap());
                assert_eq!(dual_code(&dual_code(&c)).exponents(), &e);
                assert_eq!(ConstaCode::from_generator(&rep, c.generator()).unwrap().exponents(), &e);
                let hull = hull_generator(&c);
                assert_eq!(hull_dimension(&c), (n as usize - hull.deg()) as u64);
            }
            assert_eq!(enumerate_all(&rep).count() as u64, u64::try_from(count_all(&rep)).unwrap());
        }
    }

    #[test]
    fn generator_matrix_is_shift_invariant() {
        let rep = report(3, 2, 4, 4);
        let lam = rep.norm.lam;
        let f = rep.field().clone();
        for e in enumerate_all(&rep) {
            let c = code_from_exponents(&rep, e).unwrap();
            let g = generator_matrix(&c);
            let space = Subspace::from_matrix(&g);
            assert_eq!(space.dim(), c.dim());
            for row in g.row_vecs() {
                let mut shifted = vec![f.mul(lam, row[3])];
                shifted.extend_from_slice(&row[..3]);
                assert!(space.contains(&shifted));
            }
        }
    }
}
