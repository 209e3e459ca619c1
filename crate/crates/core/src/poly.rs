//! Dense univariate polynomials over a [`FieldCtx`](crate::galois::FieldCtx).

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::galois::{Elem, Field};

/// Coefficients low degree first, trailing zeros trimmed.
#[derive(Clone)]
pub struct Poly {
    field: Field,
    coeffs: Vec<Elem>,
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
            && (Arc::ptr_eq(&self.field, &other.field) || self.field.same_as(&other.field))
    }
}

impl Eq for Poly {}

impl Hash for Poly {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Poly {
    /// Nonzero non-unit coefficients print as powers `g^k` of the field generator.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let coef = if c == 1 {
                None
            } else {
                Some(match self.field.discrete_log(c) {
                    Ok(k) => format!("g^{k}"),
                    Err(_) => format!("[{c}]"),
                })
            };
            match (i, coef) {
                (0, None) => write!(f, "1")?,
                (0, Some(s)) => write!(f, "{s}")?,
                (1, None) => write!(f, "x")?,
                (1, Some(s)) => write!(f, "{s}*x")?,
                (_, None) => write!(f, "x^{i}")?,
                (_, Some(s)) => write!(f, "{s}*x^{i}")?,
            }
        }
        Ok(())
    }
}

impl Poly {
    pub fn from_coeffs(field: &Field, mut coeffs: Vec<Elem>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        debug_assert!(coeffs.iter().all(|&c| field.is_valid(c)));
        Poly {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn zero(field: &Field) -> Self {
        Self::from_coeffs(field, Vec::new())
    }

    pub fn one(field: &Field) -> Self {
        Self::constant(field, 1)
    }

    pub fn constant(field: &Field, c: Elem) -> Self {
        Self::from_coeffs(field, vec![c])
    }

    pub fn x(field: &Field) -> Self {
        Self::monomial(field, 1, 1)
    }

    pub fn monomial(field: &Field, c: Elem, k: usize) -> Self {
        let mut coeffs = vec![0; k + 1];
        coeffs[k] = c;
        Self::from_coeffs(field, coeffs)
    }

    /// `x^n - lam`.
    pub fn binomial(field: &Field, n: usize, lam: Elem) -> Self {
        let mut coeffs = vec![0; n + 1];
        coeffs[n] = 1;
        coeffs[0] = field.sub(coeffs[0], lam);
        Self::from_coeffs(field, coeffs)
    }

    /// `x - a`.
    pub fn linear(field: &Field, a: Elem) -> Self {
        Self::from_coeffs(field, vec![field.neg(a), 1])
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Elem> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Elem {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with `deg 0 = 0`; only for places where zero cannot occur.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn lead(&self) -> Elem {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.lead() == 1
    }

    /// Ordering used to list factors deterministically: degree, then
    /// coefficients compared from the constant term up.
    pub fn canonical_cmp(&self, other: &Poly) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.cmp(&other.coeffs))
    }

    fn check(&self, other: &Poly) {
        assert!(
            Arc::ptr_eq(&self.field, &other.field) || self.field.same_as(&other.field),
            "polynomials over different fields: {} and {}",
            self.field,
            other.field
        );
    }

    pub fn add(&self, other: &Poly) -> Poly {
        self.check(other);
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| f.add(self.coeff(i), other.coeff(i)))
            .collect();
        Poly::from_coeffs(f, coeffs)
    }

    pub fn neg(&self) -> Poly {
        let f = &self.field;
        Poly::from_coeffs(f, self.coeffs.iter().map(|&c| f.neg(c)).collect())
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: Elem) -> Poly {
        let f = &self.field;
        Poly::from_coeffs(f, self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        self.check(other);
        if self.is_zero() || other.is_zero() {
            return Poly::zero(&self.field);
        }
        let f = &self.field;
        let mut out = vec![0; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                if b != 0 {
                    out[i + j] = f.add(out[i + j], f.mul(a, b));
                }
            }
        }
        Poly::from_coeffs(f, out)
    }

    pub fn pow(&self, mut e: u64) -> Poly {
        let mut acc = Poly::one(&self.field);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() || self.is_monic() {
            return self.clone();
        }
        self.scale(self.field.inv(self.lead()))
    }

    pub fn divrem(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        self.check(divisor);
        if divisor.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let f = &self.field;
        let dd = divisor.deg();
        if self.coeffs.len() <= dd {
            return Ok((Poly::zero(f), self.clone()));
        }
        let inv_lead = f.inv(divisor.lead());
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0; rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = rem[i];
            if c == 0 {
                continue;
            }
            let t = f.mul(c, inv_lead);
            quot[i - dd] = t;
            for (k, &d) in divisor.coeffs.iter().enumerate() {
                if d != 0 {
                    rem[i - dd + k] = f.sub(rem[i - dd + k], f.mul(t, d));
                }
            }
        }
        rem.truncate(dd);
        Ok((Poly::from_coeffs(f, quot), Poly::from_coeffs(f, rem)))
    }

    pub fn rem(&self, divisor: &Poly) -> Result<Poly> {
        Ok(self.divrem(divisor)?.1)
    }

    pub fn divides(&self, other: &Poly) -> bool {
        matches!(other.rem(self), Ok(r) if r.is_zero())
    }

    pub fn div_exact(&self, divisor: &Poly) -> Result<Poly> {
        let (q, r) = self.divrem(divisor)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::InexactDivision)
        }
    }

    /// Monic gcd; fails when both inputs are zero.
    pub fn gcd(&self, other: &Poly) -> Result<Poly> {
        self.check(other);
        if self.is_zero() && other.is_zero() {
            return Err(Error::invalid("gcd(0, 0) is undefined"));
        }
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a.monic())
    }

    /// `(g, s, t)` with `g = s*self + t*other` and `g` monic.
    pub fn ext_gcd(&self, other: &Poly) -> Result<(Poly, Poly, Poly)> {
        self.check(other);
        if self.is_zero() && other.is_zero() {
            return Err(Error::invalid("gcd(0, 0) is undefined"));
        }
        let f = &self.field;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Poly::one(f), Poly::zero(f));
        let (mut t0, mut t1) = (Poly::zero(f), Poly::one(f));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1)?;
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.sub(&q.mul(&s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = t0.sub(&q.mul(&t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        let c = f.inv(r0.lead());
        Ok((r0.scale(c), s0.scale(c), t0.scale(c)))
    }

    /// Monic lcm; `lcm(f, 0) = 0`.
    pub fn lcm(&self, other: &Poly) -> Result<Poly> {
        if self.is_zero() || other.is_zero() {
            return Ok(Poly::zero(&self.field));
        }
        let g = self.gcd(other)?;
        Ok(self.div_exact(&g)?.mul(other).monic())
    }

    pub fn mulmod(&self, other: &Poly, modulus: &Poly) -> Result<Poly> {
        self.mul(other).rem(modulus)
    }

    pub fn powmod(&self, mut e: u128, modulus: &Poly) -> Result<Poly> {
        let mut acc = Poly::one(&self.field).rem(modulus)?;
        let mut base = self.rem(modulus)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mulmod(&base, modulus)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mulmod(&base, modulus)?;
            }
        }
        Ok(acc)
    }

    /// Inverse of `self` modulo `modulus`, when coprime.
    pub fn inv_mod(&self, modulus: &Poly) -> Result<Poly> {
        let (g, s, _) = self.ext_gcd(modulus)?;
        if !g.is_one() {
            return Err(Error::invalid("polynomial is not invertible modulo the modulus"));
        }
        s.rem(modulus)
    }

    pub fn derivative(&self) -> Poly {
        let f = &self.field;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| f.mul(c, f.from_int((i as u64 % f.characteristic()) as i64)))
            .collect();
        Poly::from_coeffs(f, coeffs)
    }

    pub fn eval(&self, a: Elem) -> Elem {
        let f = &self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| f.add(f.mul(acc, a), c))
    }

    /// Evaluates at an element of an extension that contains this field.
    pub fn eval_in(&self, ext: &Field, a: Elem) -> Elem {
        debug_assert!(ext.contains_subfield(&self.field));
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| ext.add(ext.mul(acc, a), c))
    }

    /// Same coefficients read in an extension field.
    pub fn embed(&self, ext: &Field) -> Result<Poly> {
        if !ext.contains_subfield(&self.field) {
            return Err(Error::FieldMismatch);
        }
        Ok(Poly::from_coeffs(ext, self.coeffs.clone()))
    }

    /// Reads the coefficients in a subfield, when they all lie there.
    pub fn project(&self, sub: &Field) -> Option<Poly> {
        if !self.field.contains_subfield(sub) {
            return None;
        }
        self.coeffs
            .iter()
            .all(|&c| c < sub.order())
            .then(|| Poly::from_coeffs(sub, self.coeffs.clone()))
    }

    /// `f†(x) = a_0^{-q} * sum a_i^q x^{k-i}`.
    pub fn conj_reciprocal(&self) -> Result<Poly> {
        let f = &self.field;
        let q = f.q().ok_or(Error::NoConjugation(f.order()))?;
        let a0 = self.coeff(0);
        if a0 == 0 {
            return Err(Error::ZeroConstantTerm);
        }
        let c = f.inv(f.pow(a0, q));
        let coeffs = self
            .coeffs
            .iter()
            .rev()
            .map(|&a| f.mul(c, f.pow(a, q)))
            .collect();
        Ok(Poly::from_coeffs(f, coeffs))
    }

    /// Self-conjugate-reciprocal test `f = f†`.
    pub fn is_scr(&self) -> Result<bool> {
        Ok(self.conj_reciprocal()? == *self)
    }

    /// Trial division by every monic polynomial of degree `1..=deg/2`.
    /// `bound` caps the number of candidate divisors.
    pub fn is_irreducible(&self, bound: u64) -> Result<bool> {
        let deg = match self.degree() {
            Some(d) if d >= 1 => d,
            _ => return Err(Error::invalid("irreducibility needs positive degree")),
        };
        let q = self.field.order();
        let half = deg / 2;
        let work: u128 = (1..=half as u32)
            .map(|d| (q as u128).saturating_pow(d))
            .sum();
        if work > bound as u128 {
            return Err(Error::WorkBound {
                what: "trial division",
                needed: work,
                bound: bound as u128,
            });
        }
        for d in 1..=half {
            let count = q.pow(d as u32);
            for t in 0..count {
                let mut coeffs = vec![0; d + 1];
                let mut rest = t;
                for c in coeffs.iter_mut().take(d) {
                    *c = rest % q;
                    rest /= q;
                }
                coeffs[d] = 1;
                let cand = Poly::from_coeffs(&self.field, coeffs);
                if cand.divides(self) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Rabin's test: `x^{Q^k} = x mod f` and `gcd(x^{Q^{k/l}} - x, f) = 1`
    /// for every prime `l | k`.
    pub fn is_irreducible_rabin(&self) -> bool {
        let k = match self.degree() {
            Some(k) if k >= 1 => k,
            _ => return false,
        };
        if k == 1 {
            return true;
        }
        let f = self.monic();
        let q = self.field.order() as u128;
        let x = Poly::x(&self.field);
        // frob[i] = x^{Q^i} mod f
        let mut frob = vec![x.rem(&f).expect("nonzero modulus")];
        for _ in 0..k {
            let next = frob.last().unwrap().powmod(q, &f).expect("nonzero modulus");
            frob.push(next);
        }
        if frob[k] != frob[0] {
            return false;
        }
        crate::arith::factorize(k as u64).iter().all(|&(l, _)| {
            let h = frob[k / l as usize].sub(&x);
            !h.is_zero() && matches!(h.gcd(&f), Ok(g) if g.is_one())
        })
    }
}

/// Minimal polynomial over `base` of an element `a` of `tower`.
///
/// Degree equals the size of the Frobenius orbit `a, a^Q, a^{Q^2}, ...` with `Q = |base|`.
pub fn min_poly(tower: &Field, a: Elem, base: &Field) -> Result<Poly> {
    if !tower.contains_subfield(base) {
        return Err(Error::FieldMismatch);
    }
    let q = base.order();
    let mut orbit = vec![a];
    loop {
        let next = tower.pow(*orbit.last().unwrap(), q);
        if next == a {
            break;
        }
        orbit.push(next);
    }
    let product = orbit
        .iter()
        .fold(Poly::one(tower), |acc, &c| acc.mul(&Poly::linear(tower, c)));
    product.project(base).ok_or_else(|| {
        Error::inconsistent("minimal polynomial has coefficients outside the base field")
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois::{extend, make_field};
    use proptest::prelude::*;

    fn p(f: &Field, c: &[Elem]) -> Poly {
        Poly::from_coeffs(f, c.to_vec())
    }

    #[test]
    fn conj_reciprocal_examples_over_f4() {
        let f = make_field(2, 2).unwrap();
        let a = f.generator();
        let a2 = f.mul(a, a);
        let x_plus_1 = p(&f, &[1, 1]);
        assert_eq!(x_plus_1.conj_reciprocal().unwrap(), x_plus_1);
        assert!(x_plus_1.is_scr().unwrap());
        let quad = p(&f, &[a, 1, 1]);
        assert_eq!(quad.conj_reciprocal().unwrap(), p(&f, &[a, a, 1]));
        assert!(!quad.is_scr().unwrap());
        let lin = p(&f, &[a2, 1]);
        assert!(lin.is_scr().unwrap());
        assert_eq!(p(&f, &[0, 1]).conj_reciprocal(), Err(Error::ZeroConstantTerm));
    }

    #[test]
    fn gcd_and_lcm_basics() {
        let f9 = make_field(3, 2).unwrap();
        let one = f9.one();
        let x2m1 = Poly::binomial(&f9, 2, one);
        let xm1 = Poly::binomial(&f9, 1, one);
        assert_eq!(x2m1.gcd(&xm1).unwrap(), xm1);
        assert_eq!(xm1.lcm(&xm1).unwrap(), xm1);
        let z = Poly::zero(&f9);
        assert!(z.gcd(&z).is_err());
        assert_eq!(x2m1.div_exact(&p(&f9, &[1, 1])).unwrap(), xm1);
        assert_eq!(x2m1.div_exact(&p(&f9, &[1, 0, 1])), Err(Error::InexactDivision));
    }

    #[test]
    fn gcd_x5_minus_alpha_with_x3_minus_1() {
        let f4 = make_field(2, 2).unwrap();
        let alpha = f4.generator();
        let a = Poly::binomial(&f4, 5, alpha);
        let b = Poly::binomial(&f4, 3, 1);
        let g = a.gcd(&b).unwrap();
        // oracle: common roots in F_16, where both polynomials split
        let f16 = extend(&f4, 2).unwrap();
        let common = f16
            .elements()
            .filter(|&z| a.eval_in(&f16, z) == 0 && b.eval_in(&f16, z) == 0)
            .count();
        // xi^10 has order 3, so the two share exactly one root
        assert_eq!(common, 1);
        assert_eq!(g.deg(), common);
        assert_eq!(g, p(&f4, &[f4.mul(alpha, alpha), 1]));
    }

    fn brute_gcd(a: &Poly, b: &Poly) -> Poly {
        // largest-degree monic common divisor by enumeration
        let f = a.field().clone();
        let q = f.order();
        let maxd = a.deg().min(b.deg());
        for d in (0..=maxd).rev() {
            for t in 0..q.pow(d as u32) {
                let mut c = vec![0; d + 1];
                let mut rest = t;
                for slot in c.iter_mut().take(d) {
                    *slot = rest % q;
                    rest /= q;
                }
                c[d] = 1;
                let cand = Poly::from_coeffs(&f, c);
                if cand.divides(a) && cand.divides(b) {
                    return cand;
                }
            }
        }
        Poly::one(&f)
    }

    #[test]
    fn euclid_matches_brute_force_gcd() {
        for (pr, m) in [(2, 2), (3, 2)] {
            let f = make_field(pr, m).unwrap();
            let q = f.order();
            let mut seed = 7u64;
            let mut next = || {
                seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                (seed >> 33) % q
            };
            for _ in 0..60 {
                let da = 1 + (next() % 4) as usize;
                let db = 1 + (next() % 4) as usize;
                let mut ca: Vec<Elem> = (0..da).map(|_| next()).collect();
                ca.push(1);
                let mut cb: Vec<Elem> = (0..db).map(|_| next()).collect();
                cb.push(1);
                // plant a common factor half the time
                let (a, b) = if next() % 2 == 0 {
                    let c = p(&f, &[next(), 1]);
                    (p(&f, &ca).mul(&c), p(&f, &cb).mul(&c))
                } else {
                    (p(&f, &ca), p(&f, &cb))
                };
                if a.deg() > 4 || b.deg() > 4 {
                    continue;
                }
                assert_eq!(a.gcd(&b).unwrap(), brute_gcd(&a, &b), "{a} / {b}");
                let l = a.lcm(&b).unwrap();
                assert_eq!(l.mul(&a.gcd(&b).unwrap()), a.mul(&b).monic());
            }
        }
    }

    #[test]
    fn min_polys_in_f16_over_f4() {
        let f4 = make_field(2, 2).unwrap();
        let f16 = extend(&f4, 2).unwrap();
        let alpha = f4.generator();
        let alpha2 = f4.mul(alpha, alpha);
        // any primitive 15th root xi with xi^5 = alpha
        let xi = f16
            .elements()
            .find(|&z| z != 0 && f16.elem_order(z).unwrap() == 15 && f16.pow(z, 5) == alpha)
            .unwrap();
        assert_eq!(
            min_poly(&f16, f16.pow(xi, 10), &f4).unwrap(),
            p(&f4, &[alpha2, 1])
        );
        let m = min_poly(&f16, xi, &f4).unwrap();
        assert_eq!(m.deg(), 2);
        assert!(m == p(&f4, &[alpha, 1, 1]) || m == p(&f4, &[alpha, alpha, 1]));
        // all conjugates are roots
        assert_eq!(m.eval_in(&f16, xi), 0);
        assert_eq!(m.eval_in(&f16, f16.pow(xi, 4)), 0);
        for a in 0..4 {
            assert_eq!(min_poly(&f16, a, &f4).unwrap(), Poly::linear(&f4, a));
        }
    }

    #[test]
    fn irreducibility_by_trial_division() {
        let f4 = make_field(2, 2).unwrap();
        let a = f4.generator();
        assert_eq!(p(&f4, &[a, 1, 1]).is_irreducible(1000), Ok(true));
        let f9 = make_field(3, 2).unwrap();
        assert_eq!(Poly::binomial(&f9, 2, 1).is_irreducible(1000), Ok(false));
        // -1 is a square in F_9
        let roots = f9.elements().filter(|&z| f9.add(f9.mul(z, z), 1) == 0).count();
        assert_eq!(roots, 2);
        assert_eq!(p(&f9, &[1, 0, 1]).is_irreducible(1000), Ok(false));
        assert!(p(&f9, &[1, 0, 0, 0, 0, 0, 1]).is_irreducible(10).is_err());
    }

    #[test]
    fn rabin_agrees_with_trial_division() {
        for (pr, m) in [(2, 1), (2, 2), (3, 1), (3, 2)] {
            let f = make_field(pr, m).unwrap();
            let q = f.order();
            for d in 1..=4usize {
                for t in 0..q.pow(d as u32).min(400) {
                    let mut c = vec![0; d + 1];
                    let mut rest = t;
                    for slot in c.iter_mut().take(d) {
                        *slot = rest % q;
                        rest /= q;
                    }
                    c[d] = 1;
                    let poly = Poly::from_coeffs(&f, c);
                    assert_eq!(
                        poly.is_irreducible_rabin(),
                        poly.is_irreducible(1 << 20).unwrap(),
                        "{poly} over {f}"
                    );
                }
            }
        }
    }

    #[test]
    fn inverse_mod_and_powmod() {
        let f = make_field(5, 2).unwrap();
        let m = p(&f, &[2, 0, 1, 1]);
        let a = p(&f, &[3, 7, 1]);
        if a.gcd(&m).unwrap().is_one() {
            let inv = a.inv_mod(&m).unwrap();
            assert!(a.mulmod(&inv, &m).unwrap().is_one());
        }
        let x = Poly::x(&f);
        assert_eq!(x.powmod(5, &m).unwrap(), x.pow(5).rem(&m).unwrap());
    }

    fn arb_monic(q: u64, maxdeg: usize) -> impl Strategy<Value = Vec<Elem>> {
        (0..=maxdeg).prop_flat_map(move |d| {
            (1..q, proptest::collection::vec(0..q, d)).prop_map(|(c0, mut rest)| {
                let mut v = vec![c0];
                v.append(&mut rest);
                v.push(1);
                v
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn conj_reciprocal_is_multiplicative_involution(
            which in 0usize..4,
            a in arb_monic(81, 5),
            b in arb_monic(81, 5),
        ) {
            let (pr, m) = [(2, 2), (3, 2), (2, 4), (3, 4)][which];
            let f = make_field(pr, m).unwrap();
            let q = f.order();
            let fa = Poly::from_coeffs(&f, a.iter().map(|&c| c % q).collect());
            let fb = Poly::from_coeffs(&f, b.iter().map(|&c| c % q).collect());
            prop_assume!(fa.coeff(0) != 0 && fb.coeff(0) != 0);
            let da = fa.conj_reciprocal().unwrap();
            prop_assert!(da.is_monic());
            prop_assert_eq!(da.conj_reciprocal().unwrap(), fa.clone());
            prop_assert_eq!(
                fa.mul(&fb).conj_reciprocal().unwrap(),
                da.mul(&fb.conj_reciprocal().unwrap())
            );
        }
    }
}
