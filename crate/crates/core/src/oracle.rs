//! Brute-force ground truth that never touches the closed-form machinery:
//! generic polynomial factorization, divisor scans with linear-algebra duals,
//! exhaustive minimum distance and exhaustive subspace counts.
//!
//! Everything here is built from `galois`, `poly` and `linalg` only.

use std::collections::BTreeSet;
use std::fmt;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::galois::{Elem, Field};
use crate::linalg::{self, Matrix, Subspace};
use crate::poly::Poly;

pub const DIVISOR_BOUND: u128 = 1_000_000;
pub const CODEWORD_BOUND: u128 = 1 << 24;
pub const SUBSPACE_BOUND: u128 = 1 << 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    ExhaustiveDivisors,
    LinearAlgebra,
    ExhaustiveCodewords,
    SubspaceScan,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::ExhaustiveDivisors => "exhaustive-divisors",
            Method::LinearAlgebra => "linear-algebra",
            Method::ExhaustiveCodewords => "exhaustive-codewords",
            Method::SubspaceScan => "subspace-scan",
        })
    }
}

#[derive(Clone, Debug)]
pub struct OracleReport<T> {
    pub instance: String,
    pub value: T,
    pub method: Method,
    /// Number of objects (divisors, codewords, subspaces) examined.
    pub work: u64,
}

fn check_bound(what: &'static str, needed: u128, bound: u128) -> Result<()> {
    if needed > bound {
        return Err(Error::WorkBound { what, needed, bound });
    }
    Ok(())
}

/// Monic irreducible factors with multiplicities, in canonical order.
/// Squarefree decomposition followed by Berlekamp's algorithm.
pub fn factor_poly(f: &Poly) -> Result<Vec<(Poly, u32)>> {
    if f.is_zero() {
        return Err(Error::invalid("cannot factor the zero polynomial"));
    }
    let mut out: Vec<(Poly, u32)> = Vec::new();
    for (part, e) in squarefree(&f.monic())? {
        for g in berlekamp(&part)? {
            match out.iter_mut().find(|(h, _)| *h == g) {
                Some((_, m)) => *m += e,
                None => out.push((g, e)),
            }
        }
    }
    out.sort_by(|a, b| a.0.canonical_cmp(&b.0));
    Ok(out)
}

fn squarefree(f: &Poly) -> Result<Vec<(Poly, u32)>> {
    let mut out = Vec::new();
    if f.deg() == 0 {
        return Ok(out);
    }
    let p = f.field().characteristic();
    let mut c = f.gcd(&f.derivative())?;
    let mut w = f.div_exact(&c)?;
    let mut i = 1;
    while !w.is_one() {
        let y = w.gcd(&c)?;
        let fac = w.div_exact(&y)?;
        if !fac.is_one() {
            out.push((fac, i));
        }
        w = y;
        c = c.div_exact(&w)?;
        i += 1;
    }
    if !c.is_one() {
        for (g, e) in squarefree(&pth_root(&c))? {
            out.push((g, e * p as u32));
        }
    }
    Ok(out)
}

// c(x) = d(x^p) for some d; returns d with coefficients replaced by p-th roots.
fn pth_root(c: &Poly) -> Poly {
    let f = c.field();
    let p = f.characteristic();
    let root_exp = p.pow(f.abs_degree() - 1);
    let coeffs = c
        .coeffs()
        .iter()
        .step_by(p as usize)
        .map(|&a| f.pow(a, root_exp))
        .collect();
    Poly::from_coeffs(f, coeffs)
}

// Irreducible factors of a monic squarefree polynomial.
fn berlekamp(f: &Poly) -> Result<Vec<Poly>> {
    let d = f.deg();
    if d <= 1 {
        return Ok(if d == 1 { vec![f.clone()] } else { vec![] });
    }
    let field = f.field();
    let q = field.order();
    // column i of B is x^{iq} mod f; kernel of B - I is the Berlekamp subalgebra
    let xq = Poly::x(field).powmod(q as u128, f)?;
    let mut m = Matrix::zeros(field, d, d);
    let mut col = Poly::one(field);
    for i in 0..d {
        for j in 0..d {
            let mut v = col.coeff(j);
            if i == j {
                v = field.sub(v, 1);
            }
            m.set(j, i, v);
        }
        col = col.mulmod(&xq, f)?;
    }
    let kernel = m.nullspace();
    let count = kernel.rows();
    let mut factors = vec![f.clone()];
    for row in kernel.row_vecs() {
        if factors.len() == count {
            break;
        }
        let v = Poly::from_coeffs(field, row);
        if v.deg() == 0 {
            continue;
        }
        let mut next = Vec::new();
        for h in factors {
            if h.deg() == 1 {
                next.push(h);
                continue;
            }
            let mut rest = h;
            for c in field.elements() {
                let g = rest.gcd(&v.sub(&Poly::constant(field, c)))?;
                if !g.is_one() && g != rest {
                    rest = rest.div_exact(&g)?;
                    next.push(g);
                }
            }
            next.push(rest);
        }
        factors = next;
    }
    if factors.len() != count {
        return Err(Error::inconsistent("Berlekamp splitting stalled"));
    }
    Ok(factors)
}

/// Every monic divisor of `f`, each certified by exact division.
pub fn all_monic_divisors(f: &Poly, bound: u128) -> Result<OracleReport<Vec<Poly>>> {
    let factors = factor_poly(f)?;
    let total: u128 = factors.iter().map(|(_, e)| *e as u128 + 1).product();
    check_bound("monic divisors", total, bound)?;
    let field = f.field();
    let mut divisors = vec![Poly::one(field)];
    for (g, e) in &factors {
        let mut next = Vec::with_capacity(divisors.len() * (*e as usize + 1));
        for d in &divisors {
            let mut acc = d.clone();
            next.push(acc.clone());
            for _ in 0..*e {
                acc = acc.mul(g);
                next.push(acc.clone());
            }
        }
        divisors = next;
    }
    for d in &divisors {
        if !d.divides(f) {
            return Err(Error::inconsistent(format!("{d} does not divide {f}")));
        }
    }
    divisors.sort_by(|a, b| a.canonical_cmp(b));
    Ok(OracleReport {
        instance: format!("divisors of {f} over {field}"),
        work: divisors.len() as u64,
        value: divisors,
        method: Method::ExhaustiveDivisors,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Inner {
    Euclidean,
    Hermitian,
}

pub fn dual_by_linear_algebra(gen: &Matrix, inner: Inner) -> Result<Subspace> {
    let c = Subspace::from_matrix(gen);
    match inner {
        Inner::Euclidean => Ok(c.euclidean_dual()),
        Inner::Hermitian => c.hermitian_dual(),
    }
}

/// Smallest nonzero weight among all `Q^k` combinations of the rows of `gen`.
/// Returns `len + 1` for the zero code.
pub fn exhaustive_min_distance(gen: &Matrix, bound: u128) -> Result<OracleReport<usize>> {
    let field = gen.field().clone();
    let basis = Subspace::from_matrix(gen);
    let k = basis.dim();
    let n = basis.len();
    let q = field.order();
    let total = (q as u128).checked_pow(k as u32).unwrap_or(u128::MAX);
    check_bound("codewords", total, bound)?;
    let rows = basis.basis();
    // multiples[i][c] = c * row_i
    let multiples: Vec<Vec<Vec<Elem>>> = (0..k)
        .map(|i| {
            field
                .elements()
                .map(|c| rows.row(i).iter().map(|&a| field.mul(c, a)).collect())
                .collect()
        })
        .collect();
    let mut best = n + 1;
    let mut stack = vec![vec![0 as Elem; n]; k + 1];
    let mut digits = vec![0u64; k];
    let mut work = 0u64;
    let mut changed = 0;
    // odometer over coefficient vectors; level i holds the partial sum of rows < i
    loop {
        for i in changed..k {
            let (head, tail) = stack.split_at_mut(i + 1);
            let src = &head[i];
            let m = &multiples[i][digits[i] as usize];
            for ((dst, &a), &b) in tail[0].iter_mut().zip(src).zip(m) {
                *dst = field.add(a, b);
            }
        }
        work += 1;
        if digits.iter().any(|&d| d != 0) {
            let w = stack[k].iter().filter(|&&a| a != 0).count();
            best = best.min(w);
        }
        let mut pos = k;
        loop {
            if pos == 0 {
                return Ok(OracleReport {
                    instance: format!("[{n}, {k}] code over {field}"),
                    value: best,
                    method: Method::ExhaustiveCodewords,
                    work,
                });
            }
            pos -= 1;
            digits[pos] += 1;
            if digits[pos] < q {
                changed = pos;
                break;
            }
            digits[pos] = 0;
        }
    }
}

/// Number of linear codes of length `ell` over `field`.
pub fn count_subspaces(field: &Field, ell: usize, bound: u128) -> Result<OracleReport<u64>> {
    let size = (field.order() as u128).checked_pow(ell as u32).unwrap_or(u128::MAX);
    check_bound("ambient vectors", size, bound)?;
    let count = (0..=ell).map(|d| linalg::subspaces(field, ell, d).count() as u64).sum();
    Ok(OracleReport {
        instance: format!("subspaces of {field}^{ell}"),
        value: count,
        method: Method::SubspaceScan,
        work: count,
    })
}

/// Number of Hermitian self-dual codes of length `ell` over `field`, found by
/// testing the Gram matrix of every subspace of dimension `ell/2`.
pub fn count_hermitian_self_dual(field: &Field, ell: usize, bound: u128) -> Result<OracleReport<u64>> {
    if field.q().is_none() {
        return Err(Error::NoConjugation(field.order()));
    }
    let size = (field.order() as u128).checked_pow(ell as u32).unwrap_or(u128::MAX);
    check_bound("ambient vectors", size, bound)?;
    let mut work = 0;
    let mut count = 0;
    if ell.is_multiple_of(2) {
        for s in linalg::subspaces(field, ell, ell / 2) {
            work += 1;
            if s.is_hermitian_self_dual()? {
                count += 1;
            }
        }
    }
    Ok(OracleReport {
        instance: format!("Hermitian self-dual codes in {field}^{ell}"),
        value: count,
        method: Method::SubspaceScan,
        work,
    })
}

/// Properties of the λ-constacyclic code generated by one divisor, computed
/// from its generator matrix alone.
#[derive(Clone, Debug)]
pub struct DivisorFacts {
    pub gen: Poly,
    pub dim: usize,
    pub hull_dim: usize,
    pub self_dual: bool,
    pub lcd: bool,
}

/// Rows `x^i g(x)`, `0 ≤ i < n - deg g`.
pub fn shift_matrix(gen: &Poly, n: usize) -> Matrix {
    let field = gen.field();
    let mut m = Matrix::zeros(field, 0, n);
    for i in 0..n - gen.deg() {
        let mut row = vec![0; n];
        for (k, &c) in gen.coeffs().iter().enumerate() {
            row[i + k] = c;
        }
        m.push_row(&row);
    }
    m
}

pub fn divisor_scan(field: &Field, n: usize, lam: Elem, bound: u128) -> Result<OracleReport<Vec<DivisorFacts>>> {
    let target = Poly::binomial(field, n, lam);
    let divisors = all_monic_divisors(&target, bound)?;
    let mut facts = Vec::with_capacity(divisors.value.len());
    for g in divisors.value {
        let c = Subspace::from_matrix(&shift_matrix(&g, n));
        let d = c.hermitian_dual()?;
        let hull = c.intersection(&d);
        facts.push(DivisorFacts {
            dim: c.dim(),
            hull_dim: hull.dim(),
            self_dual: c == d,
            lcd: hull.is_empty(),
            gen: g,
        });
    }
    Ok(OracleReport {
        instance: format!("divisors of x^{n} - [{lam}] over {field}"),
        work: facts.len() as u64,
        value: facts,
        method: Method::LinearAlgebra,
    })
}

pub fn count_selfdual_divisors(field: &Field, n: usize, lam: Elem) -> Result<OracleReport<u64>> {
    let scan = divisor_scan(field, n, lam, DIVISOR_BOUND)?;
    Ok(summarize(scan, |f| f.iter().filter(|d| d.self_dual).count() as u64))
}

pub fn count_lcd_divisors(field: &Field, n: usize, lam: Elem) -> Result<OracleReport<u64>> {
    let scan = divisor_scan(field, n, lam, DIVISOR_BOUND)?;
    Ok(summarize(scan, |f| f.iter().filter(|d| d.lcd).count() as u64))
}

pub fn hull_spectrum_divisors(field: &Field, n: usize, lam: Elem) -> Result<OracleReport<Vec<u64>>> {
    let scan = divisor_scan(field, n, lam, DIVISOR_BOUND)?;
    Ok(summarize(scan, |f| {
        f.iter()
            .map(|d| d.hull_dim as u64)
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect()
    }))
}

fn summarize<T, U>(r: OracleReport<T>, f: impl FnOnce(&T) -> U) -> OracleReport<U> {
    OracleReport {
        value: f(&r.value),
        instance: r.instance,
        method: r.method,
        work: r.work,
    }
}

/// Every Hermitian self-dual (λ, ℓ)-QT code of length `nℓ`, found without the
/// CRT machinery. When `x^n - λ` has `n` distinct roots in `field`, the twist
/// shift is diagonalizable, its invariant subspaces are exactly the sums of
/// subspaces of its eigenspaces, and each candidate gets a direct Gram test.
pub fn qt_self_dual_scan(
    field: &Field,
    n: usize,
    lam: Elem,
    ell: usize,
    bound: u128,
) -> Result<OracleReport<Vec<Subspace>>> {
    let len = n * ell;
    let roots: Vec<Elem> = field.elements().filter(|&a| field.pow(a, n as u64) == lam).collect();
    if roots.len() != n {
        return Err(Error::precondition(format!(
            "x^{n} - [{lam}] has {} distinct roots in {field}, the scan needs {n}",
            roots.len()
        )));
    }
    let shift = |v: &[Elem]| -> Vec<Elem> {
        let mut out: Vec<Elem> = v[len - ell..].iter().map(|&c| field.mul(lam, c)).collect();
        out.extend_from_slice(&v[..len - ell]);
        out
    };
    let mut eigen = Vec::with_capacity(n);
    for &z in &roots {
        // column k of T - z is the image of the k-th unit vector
        let mut a = Matrix::zeros(field, len, len);
        for k in 0..len {
            let mut e = vec![0; len];
            e[k] = 1;
            let img = shift(&e);
            for (i, &c) in img.iter().enumerate() {
                a.set(i, k, if i == k { field.sub(c, z) } else { c });
            }
        }
        let basis = a.nullspace();
        if basis.rows() != ell {
            return Err(Error::inconsistent("eigenspace of the twist shift has the wrong dimension"));
        }
        eigen.push(basis);
    }
    let per_space: u128 = (0..=ell).map(|d| linalg::subspaces(field, ell, d).count() as u128).sum();
    let total = per_space.checked_pow(n as u32).unwrap_or(u128::MAX);
    check_bound("invariant subspaces", total, bound)?;
    let choices: Vec<Vec<Vec<Vec<Elem>>>> = eigen
        .iter()
        .map(|b| {
            (0..=ell)
                .flat_map(|d| linalg::subspaces(field, ell, d))
                .map(|s| {
                    s.basis()
                        .row_vecs()
                        .iter()
                        .map(|coef| {
                            (0..len)
                                .map(|k| (0..ell).fold(0, |acc, r| field.add(acc, field.mul(coef[r], b.get(r, k)))))
                                .collect()
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    let mut work = 0;
    let mut codes = Vec::new();
    if len.is_multiple_of(2) {
        for pick in choices.iter().map(|c| c.iter()).multi_cartesian_product() {
            if pick.iter().map(|rows| rows.len()).sum::<usize>() != len / 2 {
                continue;
            }
            work += 1;
            let rows: Vec<Vec<Elem>> = pick.into_iter().flatten().cloned().collect();
            let c = if rows.is_empty() {
                Subspace::zero(field, len)
            } else {
                Subspace::span(field, len, &rows)
            };
            if c.is_hermitian_self_dual()? {
                codes.push(c);
            }
        }
    }
    Ok(OracleReport {
        instance: format!("({lam}, {ell})-QT Hermitian self-dual codes, n = {n}, over {field}"),
        value: codes,
        method: Method::SubspaceScan,
        work,
    })
}

/// Distinct monic irreducible factors of `x^n - λ` as a sorted multiset
/// (each factor repeated by multiplicity).
pub fn binomial_factor_multiset(field: &Field, n: usize, lam: Elem) -> Result<Vec<Poly>> {
    let target = Poly::binomial(field, n, lam);
    Ok(factor_poly(&target)?
        .into_iter()
        .flat_map(|(g, e)| std::iter::repeat_n(g, e as usize))
        .collect_vec())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois::make_field;

    #[test]
    fn factors_match_root_counts() {
        let f9 = make_field(3, 2).unwrap();
        let x4p1 = Poly::binomial(&f9, 4, f9.from_int(-1));
        let fac = factor_poly(&x4p1).unwrap();
        assert_eq!(fac.len(), 4);
        assert!(fac.iter().all(|(g, e)| g.deg() == 1 && *e == 1));

        let f4 = make_field(2, 2).unwrap();
        let a = f4.generator();
        let fac = factor_poly(&Poly::binomial(&f4, 5, a)).unwrap();
        let degs: Vec<usize> = fac.iter().map(|(g, _)| g.deg()).collect();
        assert_eq!(degs, vec![1, 2, 2]);
        let fac = factor_poly(&Poly::binomial(&f4, 10, a)).unwrap();
        assert!(fac.iter().all(|(_, e)| *e == 2));
        assert_eq!(fac.len(), 3);
    }

    #[test]
    fn factorization_reconstructs_and_is_irreducible() {
        let f4 = make_field(2, 2).unwrap();
        let f25 = make_field(5, 2).unwrap();
        for f in [f4, f25] {
            for n in 1..=12 {
                let q = f.q().unwrap();
                for lam in [1, f.gen_pow(q - 1)] {
                    let target = Poly::binomial(&f, n, lam);
                    let fac = factor_poly(&target).unwrap();
                    let prod = fac
                        .iter()
                        .fold(Poly::one(&f), |acc, (g, e)| acc.mul(&g.pow(*e as u64)));
                    assert_eq!(prod, target);
                    for (g, _) in &fac {
                        assert!(g.is_irreducible(1 << 24).unwrap(), "{g}");
                    }
                }
            }
        }
    }

    #[test]
    fn divisor_counts() {
        let f4 = make_field(2, 2).unwrap();
        let a = f4.generator();
        let d = all_monic_divisors(&Poly::binomial(&f4, 5, a), DIVISOR_BOUND).unwrap();
        assert_eq!(d.value.len(), 8);
        let d = all_monic_divisors(&Poly::binomial(&f4, 10, a), DIVISOR_BOUND).unwrap();
        assert_eq!(d.value.len(), 27);
        let d = all_monic_divisors(&Poly::binomial(&f4, 1, 1), DIVISOR_BOUND).unwrap();
        assert_eq!(d.value, vec![Poly::one(&f4), Poly::from_coeffs(&f4, vec![1, 1])]);
        let err = all_monic_divisors(&Poly::binomial(&f4, 5, a), 4).unwrap_err();
        assert!(err.is_bound());
    }

    #[test]
    fn scans_over_small_binomials() {
        let f9 = make_field(3, 2).unwrap();
        let m1 = f9.from_int(-1);
        assert_eq!(count_selfdual_divisors(&f9, 4, m1).unwrap().value, 4);
        assert_eq!(count_lcd_divisors(&f9, 4, m1).unwrap().value, 4);
        let f4 = make_field(2, 2).unwrap();
        let a = f4.generator();
        assert_eq!(count_selfdual_divisors(&f4, 10, a).unwrap().value, 3);
        assert_eq!(count_selfdual_divisors(&f4, 5, a).unwrap().value, 0);
        assert_eq!(count_lcd_divisors(&f4, 5, a).unwrap().value, 4);
        assert_eq!(hull_spectrum_divisors(&f4, 5, a).unwrap().value, vec![0, 2]);
        assert_eq!(hull_spectrum_divisors(&f4, 10, a).unwrap().value, vec![0, 1, 2, 3, 4, 5]);
    }

    #[test]
    fn duals_and_distances() {
        let f4 = make_field(2, 2).unwrap();
        let full = Matrix::from_rows(&f4, 2, &[vec![1, 0], vec![0, 1]]);
        assert!(dual_by_linear_algebra(&full, Inner::Hermitian).unwrap().is_empty());
        assert!(dual_by_linear_algebra(&full, Inner::Euclidean).unwrap().is_empty());
        let rep = Matrix::from_rows(&f4, 3, &[vec![1, 1, 1]]);
        let d = exhaustive_min_distance(&rep, CODEWORD_BOUND).unwrap();
        assert_eq!((d.value, d.work), (3, 4));
        let zero = Matrix::zeros(&f4, 0, 3);
        assert_eq!(exhaustive_min_distance(&zero, CODEWORD_BOUND).unwrap().value, 4);
        // a dim-1 constacyclic code (x^n - λ)/(x - a) has full weight n
        let g = Poly::binomial(&f4, 3, 1).div_exact(&Poly::linear(&f4, 1)).unwrap();
        let m = shift_matrix(&g, 3);
        assert_eq!(exhaustive_min_distance(&m, CODEWORD_BOUND).unwrap().value, 3);
    }

    #[test]
    fn subspace_scans() {
        let f2 = make_field(2, 1).unwrap();
        let f3 = make_field(3, 1).unwrap();
        assert_eq!(count_subspaces(&f2, 2, SUBSPACE_BOUND).unwrap().value, 5);
        assert_eq!(count_subspaces(&f3, 2, SUBSPACE_BOUND).unwrap().value, 6);
        let f4 = make_field(2, 2).unwrap();
        let f9 = make_field(3, 2).unwrap();
        assert_eq!(count_hermitian_self_dual(&f4, 2, SUBSPACE_BOUND).unwrap().value, 3);
        assert_eq!(count_hermitian_self_dual(&f9, 2, SUBSPACE_BOUND).unwrap().value, 4);
        assert_eq!(count_hermitian_self_dual(&f4, 3, SUBSPACE_BOUND).unwrap().value, 0);
        assert!(count_subspaces(&f9, 7, SUBSPACE_BOUND).is_err());
    }

    #[test]
    fn qt_scan_small() {
        let f4 = make_field(2, 2).unwrap();
        let codes = qt_self_dual_scan(&f4, 3, 1, 2, SUBSPACE_BOUND).unwrap().value;
        assert_eq!(codes.len(), 27);
        assert!(codes.iter().all(|c| c.dim() == 3));
        assert!(qt_self_dual_scan(&f4, 5, f4.generator(), 2, SUBSPACE_BOUND).is_err());
    }
}
