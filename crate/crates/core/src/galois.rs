//! Finite fields `F_{p^m}` and towers over them.
//!
//! An element is a `u64` holding its coefficient vector over the base field
//! in radix `|base|`, low degree first. Because every level is encoded the
//! same way, the integer is also the base-`p` digit string of the absolute
//! coordinates, and an element of a subfield in the tower keeps the same
//! integer after embedding. Addition is therefore digit-wise mod `p` at every
//! level, and the down-projection to the base is the identity on integers
//! below `|base|`.

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::arith;
use crate::error::{Error, Result};
use crate::poly::Poly;

pub type Elem = u64;
pub type Field = Arc<FieldCtx>;

/// Default upper bound on the order of fields built by [`make_field`] and [`extend`].
pub const DEFAULT_ORDER_BOUND: u64 = 1 << 24;

const TABLE_LIMIT: u64 = 1 << 16;
const ADD_TABLE_LIMIT: u64 = 1 << 10;

struct Tables {
    // exp has length 2(N-1) so log a + log b never needs a reduction.
    exp: Vec<u32>,
    log: Vec<u32>,
    add: Option<Vec<u32>>,
}

pub struct FieldCtx {
    p: u64,
    degree: usize,
    abs_degree: u32,
    order: u64,
    base: Option<Field>,
    modulus: Vec<Elem>,
    q: Option<u64>,
    generator: OnceLock<Elem>,
    unit_factors: OnceLock<Vec<(u64, u32)>>,
    tables: Option<Tables>,
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.order)?;
        if let Some(base) = &self.base {
            if base.base.is_some() {
                write!(f, "/{:?}", base)?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.order)
    }
}

/// `F_{p^m}` with the lexicographically smallest monic irreducible modulus
/// over `F_p` (coefficients compared from the constant term up) and the
/// smallest primitive element under the same ordering as generator.
pub fn make_field(p: u64, m: u32) -> Result<Field> {
    make_field_bounded(p, m, DEFAULT_ORDER_BOUND)
}

pub fn make_field_bounded(p: u64, m: u32, bound: u64) -> Result<Field> {
    if !arith::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if m == 0 {
        return Err(Error::invalid("extension degree must be positive"));
    }
    order_within(p, m, bound)?;
    let prime = Arc::new(FieldCtx::prime(p));
    if m == 1 {
        return Ok(prime);
    }
    build_extension(&prime, m as usize, bound)
}

/// Degree-`k` extension of `base` with a canonical modulus over `base`.
/// `extend(base, 1)` is `base` itself.
pub fn extend(base: &Field, k: u32) -> Result<Field> {
    extend_bounded(base, k, DEFAULT_ORDER_BOUND)
}

pub fn extend_bounded(base: &Field, k: u32, bound: u64) -> Result<Field> {
    if k == 0 {
        return Err(Error::invalid("extension degree must be positive"));
    }
    if k == 1 {
        return Ok(base.clone());
    }
    build_extension(base, k as usize, bound)
}

fn order_within(base_order: u64, k: u32, bound: u64) -> Result<u64> {
    let order = (base_order as u128).checked_pow(k).unwrap_or(u128::MAX);
    if order > bound as u128 {
        return Err(Error::FieldTooLarge { order, bound });
    }
    Ok(order as u64)
}

fn build_extension(base: &Field, k: usize, bound: u64) -> Result<Field> {
    let order = order_within(base.order, k as u32, bound)?;
    let b = base.order;
    // Candidates c_0 + c_1 x + ... + x^k ordered with c_0 most significant;
    // c_0 = 0 is divisible by x, so the scan starts at c_0 = 1.
    let lead_weight = order / b;
    let mut t = lead_weight;
    loop {
        if t >= order {
            return Err(Error::inconsistent(format!(
                "no irreducible polynomial of degree {k} over {base}"
            )));
        }
        let mut coeffs = vec![0; k + 1];
        let mut rest = t;
        for i in (0..k).rev() {
            coeffs[i] = rest % b;
            rest /= b;
        }
        coeffs[k] = 1;
        let candidate = Poly::from_coeffs(base, coeffs);
        if candidate.is_irreducible_rabin() {
            let mut ctx = FieldCtx::extension_unchecked(base.clone(), candidate.coeffs().to_vec());
            debug_assert_eq!(ctx.order, order);
            ctx.build_tables();
            return Ok(Arc::new(ctx));
        }
        t += 1;
    }
}

/// The quotient `base[x]/(modulus)` for a monic irreducible `modulus`.
/// The generator is computed lazily on first use.
pub fn quotient_field(base: &Field, modulus: &Poly) -> Result<Field> {
    if !Arc::ptr_eq(modulus.field(), base) && !modulus.field().same_as(base) {
        return Err(Error::FieldMismatch);
    }
    let deg = modulus
        .degree()
        .filter(|&d| d >= 1)
        .ok_or_else(|| Error::invalid("modulus must have positive degree"))?;
    if modulus.lead() != 1 {
        return Err(Error::invalid("modulus must be monic"));
    }
    if !modulus.is_irreducible_rabin() {
        return Err(Error::invalid("modulus is reducible"));
    }
    order_within(base.order, deg as u32, u64::MAX >> 1)?;
    let mut ctx = FieldCtx::extension_unchecked(base.clone(), modulus.coeffs().to_vec());
    ctx.build_tables();
    Ok(Arc::new(ctx))
}

impl FieldCtx {
    fn prime(p: u64) -> Self {
        FieldCtx {
            p,
            degree: 1,
            abs_degree: 1,
            order: p,
            base: None,
            modulus: vec![0, 1],
            q: None,
            generator: OnceLock::new(),
            unit_factors: OnceLock::new(),
            tables: None,
        }
        .with_tables()
    }

    fn with_tables(mut self) -> Self {
        self.build_tables();
        self
    }

    fn extension_unchecked(base: Field, modulus: Vec<Elem>) -> Self {
        let degree = modulus.len() - 1;
        let abs_degree = base.abs_degree * degree as u32;
        let order = base.order.pow(degree as u32);
        let q = abs_degree.is_multiple_of(2).then(|| base.p.pow(abs_degree / 2));
        FieldCtx {
            p: base.p,
            degree,
            abs_degree,
            order,
            base: Some(base),
            modulus,
            q,
            generator: OnceLock::new(),
            unit_factors: OnceLock::new(),
            tables: None,
        }
    }

    fn build_tables(&mut self) {
        if self.order > TABLE_LIMIT {
            return;
        }
        let n = self.order as usize;
        let g = self.generator();
        let mut exp = vec![0u32; 2 * (n - 1)];
        let mut log = vec![0u32; n];
        let mut acc = 1;
        for i in 0..n - 1 {
            exp[i] = acc as u32;
            exp[i + n - 1] = acc as u32;
            log[acc as usize] = i as u32;
            acc = self.mul(acc, g);
        }
        let add = (self.order <= ADD_TABLE_LIMIT && self.p != 2).then(|| {
            let mut t = vec![0u32; n * n];
            for a in 0..n {
                for b in 0..n {
                    t[a * n + b] = self.add_digits(a as u64, b as u64) as u32;
                }
            }
            t
        });
        self.tables = Some(Tables { exp, log, add });
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// Degree over the immediate base (over `F_p` for [`make_field`] fields).
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Degree over the prime field.
    pub fn abs_degree(&self) -> u32 {
        self.abs_degree
    }

    pub fn base(&self) -> Option<&Field> {
        self.base.as_ref()
    }

    pub fn base_order(&self) -> u64 {
        self.base.as_ref().map_or(self.p, |b| b.order)
    }

    /// Modulus coefficients over the base, low degree first, monic.
    pub fn modulus(&self) -> &[Elem] {
        &self.modulus
    }

    /// `q` with `q^2 = |F|`, when the order is an even power of `p`.
    pub fn q(&self) -> Option<u64> {
        self.q
    }

    pub fn is_prime_field(&self) -> bool {
        self.base.is_none()
    }

    pub fn same_as(&self, other: &FieldCtx) -> bool {
        if std::ptr::eq(self, other) {
            return true;
        }
        self.order == other.order
            && self.modulus == other.modulus
            && match (&self.base, &other.base) {
                (None, None) => self.p == other.p,
                (Some(a), Some(b)) => a.same_as(b),
                _ => false,
            }
    }

    /// True when `sub` is this field or appears in its chain of bases.
    pub fn contains_subfield(&self, sub: &FieldCtx) -> bool {
        let mut cur = Some(self);
        while let Some(f) = cur {
            if f.same_as(sub) {
                return true;
            }
            cur = f.base.as_deref();
        }
        false
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.order
    }

    pub fn one(&self) -> Elem {
        1
    }

    /// Image of an integer under `Z -> F_p -> F`.
    pub fn from_int(&self, v: i64) -> Elem {
        v.rem_euclid(self.p as i64) as Elem
    }

    pub fn is_valid(&self, a: Elem) -> bool {
        a < self.order
    }

    /// Coefficients over the base, low degree first, length `degree()`.
    pub fn coeffs(&self, a: Elem) -> Vec<Elem> {
        let b = self.base_order();
        let mut rest = a;
        (0..self.degree)
            .map(|_| {
                let d = rest % b;
                rest /= b;
                d
            })
            .collect()
    }

    /// Inverse of [`coeffs`](Self::coeffs); missing high coefficients are zero.
    pub fn from_coeffs(&self, coeffs: &[Elem]) -> Elem {
        assert!(coeffs.len() <= self.degree, "too many coefficients");
        let b = self.base_order();
        coeffs.iter().rev().fold(0, |acc, &c| {
            debug_assert!(c < b);
            acc * b + c
        })
    }

    /// Base-`p` digits of `a`, low degree first, length `abs_degree()`.
    pub fn prime_coeffs(&self, a: Elem) -> Vec<u64> {
        let mut rest = a;
        (0..self.abs_degree)
            .map(|_| {
                let d = rest % self.p;
                rest /= self.p;
                d
            })
            .collect()
    }

    fn add_digits(&self, mut a: Elem, mut b: Elem) -> Elem {
        let p = self.p;
        let mut out = 0;
        let mut w = 1;
        while a != 0 || b != 0 {
            let d = (a % p + b % p) % p;
            out += d * w;
            w *= p;
            a /= p;
            b /= p;
        }
        out
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        if self.p == 2 {
            return a ^ b;
        }
        if self.base.is_none() {
            let s = a + b;
            return if s >= self.p { s - self.p } else { s };
        }
        if let Some(Tables { add: Some(t), .. }) = &self.tables {
            return t[(a * self.order + b) as usize] as Elem;
        }
        self.add_digits(a, b)
    }

    pub fn neg(&self, a: Elem) -> Elem {
        if self.p == 2 {
            return a;
        }
        let p = self.p;
        let mut rest = a;
        let mut out = 0;
        let mut w = 1;
        while rest != 0 {
            let d = rest % p;
            out += ((p - d) % p) * w;
            w *= p;
            rest /= p;
        }
        out
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a == 0 || b == 0 {
            return 0;
        }
        if self.base.is_none() {
            return arith::mul_mod(a, b, self.p);
        }
        if let Some(t) = &self.tables {
            return t.exp[(t.log[a as usize] + t.log[b as usize]) as usize] as Elem;
        }
        self.mul_generic(a, b)
    }

    fn mul_generic(&self, a: Elem, b: Elem) -> Elem {
        let base = self.base.as_ref().expect("extension field");
        let da = self.coeffs(a);
        let db = self.coeffs(b);
        let k = self.degree;
        let mut prod = vec![0; 2 * k - 1];
        for (i, &x) in da.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in db.iter().enumerate() {
                if y != 0 {
                    prod[i + j] = base.add(prod[i + j], base.mul(x, y));
                }
            }
        }
        for i in (k..prod.len()).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            // x^k = -(m_0 + ... + m_{k-1} x^{k-1})
            for t in 0..k {
                let m = self.modulus[t];
                if m != 0 {
                    prod[i - k + t] = base.sub(prod[i - k + t], base.mul(c, m));
                }
            }
            prod[i] = 0;
        }
        self.from_coeffs(&prod[..k])
    }

    pub fn pow(&self, a: Elem, mut e: u64) -> Elem {
        if let Some(t) = &self.tables {
            if a == 0 {
                return if e == 0 { 1 } else { 0 };
            }
            let m = self.order - 1;
            let l = arith::mul_mod(t.log[a as usize] as u64, e % m, m);
            return t.exp[l as usize] as Elem;
        }
        let mut acc = 1;
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse. Panics on zero, like integer division.
    pub fn inv(&self, a: Elem) -> Elem {
        assert!(a != 0, "inverse of zero in {self}");
        if let Some(t) = &self.tables {
            let m = self.order as usize - 1;
            return t.exp[(m - t.log[a as usize] as usize) % m] as Elem;
        }
        self.pow(a, self.order - 2)
    }

    pub fn try_inv(&self, a: Elem) -> Result<Elem> {
        if a == 0 {
            Err(Error::ZeroElement)
        } else {
            Ok(self.inv(a))
        }
    }

    pub fn div(&self, a: Elem, b: Elem) -> Elem {
        self.mul(a, self.inv(b))
    }

    /// `a^q`, the conjugation behind the Hermitian inner product.
    pub fn conj(&self, a: Elem) -> Result<Elem> {
        let q = self.q.ok_or(Error::NoConjugation(self.order))?;
        Ok(self.pow(a, q))
    }

    /// `a -> a^{|base|}`, which fixes exactly the base field.
    pub fn frobenius(&self, a: Elem) -> Elem {
        self.pow(a, self.base_order())
    }

    /// Prime factorization of `|F| - 1`.
    pub fn unit_group_factors(&self) -> &[(u64, u32)] {
        self.unit_factors
            .get_or_init(|| arith::factorize(self.order - 1))
    }

    pub fn is_primitive(&self, a: Elem) -> bool {
        if a == 0 {
            return false;
        }
        let m = self.order - 1;
        self.unit_group_factors()
            .iter()
            .all(|&(l, _)| self.pow(a, m / l) != 1)
    }

    /// Smallest primitive element, coefficients compared from the constant term up.
    pub fn generator(&self) -> Elem {
        *self.generator.get_or_init(|| {
            if self.order == 2 {
                return 1;
            }
            let b = self.base_order();
            (1..self.order)
                .map(|t| {
                    // c_0 is the most significant digit of t
                    let mut rest = t;
                    let mut digits = vec![0; self.degree];
                    for i in (0..self.degree).rev() {
                        digits[i] = rest % b;
                        rest /= b;
                    }
                    self.from_coeffs(&digits)
                })
                .find(|&a| self.is_primitive(a))
                .expect("every finite field has a primitive element")
        })
    }

    /// Least `r >= 1` with `a^r = 1`.
    pub fn elem_order(&self, a: Elem) -> Result<u64> {
        if a == 0 {
            return Err(Error::ZeroElement);
        }
        let mut ord = self.order - 1;
        for &(l, _) in self.unit_group_factors() {
            while ord.is_multiple_of(l) && self.pow(a, ord / l) == 1 {
                ord /= l;
            }
        }
        Ok(ord)
    }

    /// Least `i >= 0` with `generator^i = a`.
    pub fn discrete_log(&self, a: Elem) -> Result<u64> {
        if a == 0 {
            return Err(Error::ZeroElement);
        }
        if let Some(t) = &self.tables {
            return Ok(t.log[a as usize] as u64);
        }
        let g = self.generator();
        let mut acc = 1;
        for i in 0..self.order - 1 {
            if acc == a {
                return Ok(i);
            }
            acc = self.mul(acc, g);
        }
        Err(Error::inconsistent("element not reached by the generator"))
    }

    /// `generator^k`.
    pub fn gen_pow(&self, k: u64) -> Elem {
        self.pow(self.generator(), k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f4() -> Field {
        make_field(2, 2).unwrap()
    }

    fn axioms_hold(f: &FieldCtx) {
        let els: Vec<Elem> = f.elements().collect();
        for &a in &els {
            assert_eq!(f.add(a, 0), a);
            assert_eq!(f.mul(a, 1), a);
            assert_eq!(f.add(a, f.neg(a)), 0);
            if a != 0 {
                assert_eq!(f.mul(a, f.inv(a)), 1);
            }
            for &b in &els {
                assert_eq!(f.add(a, b), f.add(b, a));
                assert_eq!(f.mul(a, b), f.mul(b, a));
                for &c in els.iter().step_by(1 + els.len() / 16) {
                    assert_eq!(f.mul(a, f.mul(b, c)), f.mul(f.mul(a, b), c));
                    assert_eq!(f.add(a, f.add(b, c)), f.add(f.add(a, b), c));
                    assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                }
            }
        }
    }

    #[test]
    fn f4_matches_hand_table() {
        let f = f4();
        assert_eq!(f.modulus(), &[1, 1, 1]);
        let alpha = f.generator();
        assert_eq!(alpha, 2);
        // alpha^2 = alpha + 1
        assert_eq!(f.mul(alpha, alpha), f.add(alpha, 1));
        assert_eq!(f.elem_order(alpha).unwrap(), 3);
        assert_eq!(f.q(), Some(2));
    }

    #[test]
    fn prime_field_f3() {
        let f = make_field(3, 1).unwrap();
        assert_eq!(f.modulus().len(), 2);
        assert_eq!(f.generator(), 2);
        assert_eq!(f.q(), None);
        assert_eq!(f.conj(1), Err(Error::NoConjugation(3)));
    }

    #[test]
    fn f9_modulus_and_order() {
        let f = make_field(3, 2).unwrap();
        // x^2 + 1 is the first irreducible candidate with c_0 = 1, c_1 = 0
        assert_eq!(f.modulus(), &[1, 0, 1]);
        let units = f.elements().filter(|&a| a != 0).count();
        assert_eq!(units, 8);
        assert!(f.is_primitive(f.generator()));
        assert_eq!(f.elem_order(f.from_int(-1)).unwrap(), 2);
        // every unit is a power of the generator
        let mut seen: Vec<Elem> = (0..8).map(|k| f.gen_pow(k)).collect();
        seen.sort();
        assert_eq!(seen, (1..9).collect::<Vec<_>>());
    }

    #[test]
    fn field_axioms_exhaustive() {
        for (p, m) in [(2, 1), (2, 2), (2, 3), (3, 2), (5, 2), (2, 4), (7, 2), (3, 3)] {
            axioms_hold(&make_field(p, m).unwrap());
        }
        let f4 = f4();
        axioms_hold(&extend(&f4, 2).unwrap());
        axioms_hold(&extend(&f4, 3).unwrap());
    }

    #[test]
    fn conj_is_involutive_automorphism_fixing_subfield() {
        for (p, m) in [(2, 2), (3, 2), (2, 4), (5, 2), (7, 2), (2, 6), (3, 4), (2, 8)] {
            let f = make_field(p, m).unwrap();
            let q = f.q().unwrap();
            let mut fixed = 0;
            for a in f.elements() {
                let c = f.conj(a).unwrap();
                assert_eq!(f.conj(c).unwrap(), a);
                if c == a {
                    fixed += 1;
                }
                let b = f.gen_pow(a % 7 + 1);
                assert_eq!(f.conj(f.mul(a, b)).unwrap(), f.mul(c, f.conj(b).unwrap()));
                assert_eq!(f.conj(f.add(a, b)).unwrap(), f.add(c, f.conj(b).unwrap()));
            }
            assert_eq!(fixed, q, "fixed field of conj in {f}");
        }
    }

    #[test]
    fn conj_on_f4_and_f9() {
        let f = f4();
        let alpha = f.generator();
        assert_eq!(f.conj(alpha).unwrap(), f.mul(alpha, alpha));
        let f9 = make_field(3, 2).unwrap();
        for a in f9.elements() {
            assert_eq!(f9.conj(a).unwrap(), f9.pow(a, 3));
        }
        assert_eq!(f9.conj(1).unwrap(), 1);
    }

    #[test]
    fn tower_f16_over_f4() {
        let f4 = f4();
        let f16 = extend(&f4, 2).unwrap();
        assert_eq!(f16.order(), 16);
        assert!(f16.contains_subfield(&f4));
        assert!((1..16).any(|a| f16.elem_order(a).unwrap() == 15));
        // Frobenius relative to F_4 fixes exactly the embedded F_4
        let fixed: Vec<Elem> = f16.elements().filter(|&a| f16.frobenius(a) == a).collect();
        assert_eq!(fixed, vec![0, 1, 2, 3]);
        // embedded arithmetic agrees with F_4
        for a in 0..4 {
            for b in 0..4 {
                assert_eq!(f16.mul(a, b), f4.mul(a, b));
                assert_eq!(f16.add(a, b), f4.add(a, b));
            }
        }
        assert!(Arc::ptr_eq(&extend(&f4, 1).unwrap(), &f4));
    }

    #[test]
    fn tower_f81_over_f9() {
        let f9 = make_field(3, 2).unwrap();
        let f81 = extend(&f9, 2).unwrap();
        for a in (1..81).step_by(7) {
            assert_eq!(f81.pow(a, 80), 1);
        }
        let fixed = f81.elements().filter(|&a| f81.frobenius(a) == a).count();
        assert_eq!(fixed, 9);
        for a in 0..9 {
            for b in 0..9 {
                assert_eq!(f81.mul(a, b), f9.mul(a, b));
            }
        }
    }

    #[test]
    fn large_tower_without_tables() {
        let f64 = make_field(2, 6).unwrap();
        let big = extend_bounded(&f64, 9, u64::MAX >> 1).unwrap();
        assert_eq!(big.order(), 1 << 54);
        let g = big.generator();
        assert!(big.is_primitive(g));
        let a = big.pow(g, 12345);
        assert_eq!(big.mul(a, big.inv(a)), 1);
        assert!(extend(&f64, 9).unwrap_err().is_bound());
    }

    #[test]
    fn deterministic_construction() {
        let a = make_field(5, 2).unwrap();
        let b = make_field(5, 2).unwrap();
        assert_eq!(a.modulus(), b.modulus());
        assert_eq!(a.generator(), b.generator());
        assert!(a.same_as(&b));
    }

    #[test]
    fn modulus_is_irreducible_by_trial_division() {
        for (p, m) in [(2, 2), (2, 3), (3, 2), (2, 4), (5, 2), (3, 3), (11, 2)] {
            let f = make_field(p, m).unwrap();
            let base = f.base().unwrap();
            let modulus = Poly::from_coeffs(base, f.modulus().to_vec());
            assert_eq!(modulus.is_irreducible(1 << 20), Ok(true));
        }
    }

    #[test]
    fn discrete_logs() {
        let f = f4();
        assert_eq!(f.discrete_log(f.generator()).unwrap(), 1);
        assert_eq!(f.discrete_log(1).unwrap(), 0);
        assert_eq!(f.discrete_log(f.mul(2, 2)).unwrap(), 2);
        assert_eq!(f.discrete_log(0), Err(Error::ZeroElement));
        assert_eq!(f.elem_order(0), Err(Error::ZeroElement));
    }

    #[test]
    fn rejects_bad_parameters() {
        assert_eq!(make_field(4, 1).unwrap_err(), Error::NotPrime(4));
        assert!(make_field(2, 30).unwrap_err().is_bound());
        assert!(make_field_bounded(2, 30, 1 << 31).is_ok());
    }
}
