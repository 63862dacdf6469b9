//! Exact cyclotomic field arithmetic.
//!
//! A [`Cyclo`] is an element of the cyclotomic field `Q(zeta_m)` stored as a
//! rational coefficient vector on the power basis `1, z, ..., z^(phi(m)-1)`
//! modulo the `m`-th cyclotomic polynomial. Elements of different conductors
//! interoperate by lifting both operands to the least common multiple of
//! their conductors.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

/// Euler totient of `m`.
pub fn phi(m: u64) -> u64 {
    let mut n = m;
    let mut result = m;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// Integer coefficients of the `m`-th cyclotomic polynomial, low degree first.
fn cyclotomic_poly(m: u64) -> Vec<BigInt> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Vec<BigInt>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&m) {
        return p.clone();
    }
    // x^m - 1 divided by the product of Phi_d for proper divisors d of m.
    let mut num = vec![BigInt::zero(); (m + 1) as usize];
    num[0] = BigInt::from(-1);
    num[m as usize] = BigInt::one();
    let mut result = num;
    for d in 1..m {
        if m % d == 0 {
            let phid = cyclotomic_poly(d);
            result = exact_div_int_poly(&result, &phid);
        }
    }
    cache.lock().unwrap().insert(m, result.clone());
    result
}

/// Exact division of integer polynomials (low degree first); panics if inexact.
fn exact_div_int_poly(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dn = num.len() - 1;
    let dd = den.len() - 1;
    assert!(dn >= dd);
    let mut rem: Vec<BigInt> = num.to_vec();
    let mut quot = vec![BigInt::zero(); dn - dd + 1];
    for i in (0..=(dn - dd)).rev() {
        let c = rem[i + dd].clone() / den[dd].clone();
        quot[i] = c.clone();
        for j in 0..=dd {
            let t = &den[j] * &c;
            rem[i + j] -= t;
        }
    }
    assert!(rem.iter().all(|c| c.is_zero()), "inexact polynomial division");
    quot
}

/// An element of the cyclotomic field `Q(zeta_m)`.
#[derive(Clone, PartialEq, Eq)]
pub struct Cyclo {
    /// Conductor `m` (1 for plain rationals).
    m: u64,
    /// Coefficients on the power basis, length `phi(m)`.
    coeffs: Vec<BigRational>,
}

impl fmt::Debug for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyclo(m={}, [", self.m)?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", c)?;
        }
        write!(f, "])")
    }
}

impl Cyclo {
    /// The zero element of `Q`.
    pub fn zero() -> Self {
        Cyclo { m: 1, coeffs: vec![BigRational::zero()] }
    }

    /// The unit element of `Q`.
    pub fn one() -> Self {
        Cyclo { m: 1, coeffs: vec![BigRational::one()] }
    }

    pub fn from_rational(q: BigRational) -> Self {
        Cyclo { m: 1, coeffs: vec![q] }
    }

    pub fn from_int(n: i64) -> Self {
        Cyclo::from_rational(BigRational::from(BigInt::from(n)))
    }

    /// The root of unity `zeta_m^k`.
    pub fn root_of_unity(m: u64, k: i64) -> Self {
        assert!(m >= 1);
        let k = k.rem_euclid(m as i64) as u64;
        let deg = phi(m) as usize;
        let mut poly = vec![BigRational::zero(); (k as usize) + 1];
        poly[k as usize] = BigRational::one();
        let mut e = Cyclo { m, coeffs: poly };
        e.reduce(deg);
        e.collapse();
        e
    }

    pub fn conductor(&self) -> u64 {
        self.m
    }

    /// Power-basis coefficients (length `phi(m)`), for ring homomorphisms
    /// out of the field.
    pub fn power_basis(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Returns the rational value if this element lies in `Q`.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// Reduce the coefficient vector modulo `Phi_m` and truncate to `phi(m)`.
    fn reduce(&mut self, deg: usize) {
        let phim = cyclotomic_poly(self.m);
        let d = phim.len() - 1;
        debug_assert_eq!(d, deg);
        while self.coeffs.len() > d {
            let top = self.coeffs.pop().unwrap();
            if top.is_zero() {
                continue;
            }
            let k = self.coeffs.len() - d;
            // subtract top * x^k * Phi_m (Phi_m is monic)
            for j in 0..d {
                let t = &top * BigRational::from(phim[j].clone());
                self.coeffs[k + j] -= t;
            }
        }
        while self.coeffs.len() < d {
            self.coeffs.push(BigRational::zero());
        }
    }

    /// Shrink the representation to `Q` when the element is rational.
    fn collapse(&mut self) {
        if self.m > 1 && self.coeffs[1..].iter().all(|c| c.is_zero()) {
            self.coeffs.truncate(1);
            self.m = 1;
        }
    }

    /// Lift into `Q(zeta_target)` keeping the conductor at `target` even
    /// for rational values; used to align operands of binary operations.
    fn lift_raw(&self, target: u64) -> Cyclo {
        assert_eq!(target % self.m, 0, "cannot lift conductor {} into {}", self.m, target);
        if target == self.m {
            return self.clone();
        }
        let step = (target / self.m) as usize;
        let mut poly = vec![BigRational::zero(); (self.coeffs.len() - 1) * step + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            poly[i * step] = c.clone();
        }
        let mut e = Cyclo { m: target, coeffs: poly };
        e.reduce(phi(target) as usize);
        e
    }

    /// Lift this element into `Q(zeta_target)`; `target` must be a multiple
    /// of the conductor.
    pub fn lift(&self, target: u64) -> Cyclo {
        self.lift_raw(target)
    }

    fn common(a: &Cyclo, b: &Cyclo) -> (Cyclo, Cyclo) {
        if a.m == b.m {
            return (a.clone(), b.clone());
        }
        let l = num_integer::lcm(a.m, b.m);
        (a.lift_raw(l), b.lift_raw(l))
    }

    pub fn add(&self, other: &Cyclo) -> Cyclo {
        let (mut a, b) = Cyclo::common(self, other);
        for (x, y) in a.coeffs.iter_mut().zip(b.coeffs.iter()) {
            *x += y;
        }
        a.collapse();
        a
    }

    pub fn sub(&self, other: &Cyclo) -> Cyclo {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Cyclo {
        let mut a = self.clone();
        for c in a.coeffs.iter_mut() {
            *c = -c.clone();
        }
        a
    }

    pub fn mul(&self, other: &Cyclo) -> Cyclo {
        if self.is_zero() || other.is_zero() {
            return Cyclo::zero();
        }
        let (a, b) = Cyclo::common(self, other);
        let mut prod = vec![BigRational::zero(); a.coeffs.len() + b.coeffs.len() - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                prod[i + j] += x * y;
            }
        }
        let mut e = Cyclo { m: a.m, coeffs: prod };
        e.reduce(phi(a.m) as usize);
        e.collapse();
        e
    }

    pub fn scale(&self, q: &BigRational) -> Cyclo {
        let mut a = self.clone();
        for c in a.coeffs.iter_mut() {
            *c *= q;
        }
        a
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(&self) -> Cyclo {
        assert!(!self.is_zero(), "division by zero in cyclotomic field");
        if self.m == 1 {
            return Cyclo::from_rational(BigRational::one() / self.coeffs[0].clone());
        }
        // extended Euclid between the representative polynomial and Phi_m
        let phim: Vec<BigRational> =
            cyclotomic_poly(self.m).iter().map(|c| BigRational::from(c.clone())).collect();
        let (g, s) = ext_gcd_polys(&self.coeffs, &phim);
        assert_eq!(g.len(), 1, "element not invertible modulo the cyclotomic polynomial");
        let ginv = BigRational::one() / g[0].clone();
        let mut e = Cyclo { m: self.m, coeffs: s.iter().map(|c| c * &ginv).collect() };
        e.reduce(phi(self.m) as usize);
        e.collapse();
        e
    }

    pub fn div(&self, other: &Cyclo) -> Cyclo {
        self.mul(&other.inv())
    }

    pub fn pow(&self, e: u64) -> Cyclo {
        let mut result = Cyclo::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        result
    }

    pub fn eq_elem(&self, other: &Cyclo) -> bool {
        let (a, b) = Cyclo::common(self, other);
        a.coeffs == b.coeffs
    }

    /// If this element is a root of unity, return `(order, exponent)` with
    /// the element equal to `zeta_order^exponent` and `gcd(exponent, order) = 1`
    /// for order > 1.
    pub fn as_root_of_unity(&self) -> Option<(u64, u64)> {
        if self.is_zero() {
            return None;
        }
        if let Some(q) = self.as_rational() {
            if q == BigRational::one() {
                return Some((1, 0));
            }
            if q == -BigRational::one() {
                return Some((2, 1));
            }
            return None;
        }
        // roots of unity in Q(zeta_m) have order dividing lcm(2, m)
        let bound = num_integer::lcm(2, self.m);
        let mut order = 0;
        let mut p = Cyclo::one();
        for r in 1..=bound {
            p = p.mul(self);
            if p.as_rational().map_or(false, |q| q.is_one()) {
                order = r;
                break;
            }
        }
        if order == 0 {
            return None;
        }
        for a in 0..order {
            if num_integer::gcd(a, order) == 1 || order == 1 {
                if Cyclo::root_of_unity(order, a as i64).eq_elem(self) {
                    return Some((order, a));
                }
            }
        }
        None
    }

    /// A root of unity `r` with `r^e` equal to this element, when this
    /// element is itself a root of unity.
    pub fn root_of_unity_nth_root(&self, e: u64) -> Option<Cyclo> {
        let (order, a) = self.as_root_of_unity()?;
        Some(Cyclo::root_of_unity(order * e, a as i64))
    }
}

fn trim_poly(mut p: Vec<BigRational>) -> Vec<BigRational> {
    while p.len() > 1 && p.last().unwrap().is_zero() {
        p.pop();
    }
    p
}

fn poly_is_zero(p: &[BigRational]) -> bool {
    p.iter().all(|c| c.is_zero())
}

/// Quotient and remainder of rational polynomial division (low degree first).
fn poly_divmod(
    a: &[BigRational],
    b: &[BigRational],
) -> (Vec<BigRational>, Vec<BigRational>) {
    let b = trim_poly(b.to_vec());
    assert!(!poly_is_zero(&b), "polynomial division by zero");
    let db = b.len() - 1;
    let lead = b[db].clone();
    let mut rem = trim_poly(a.to_vec());
    if rem.len() - 1 < db || poly_is_zero(&rem) {
        return (vec![BigRational::zero()], rem);
    }
    let mut quot = vec![BigRational::zero(); rem.len() - db];
    while !poly_is_zero(&rem) && rem.len() - 1 >= db {
        let dr = rem.len() - 1;
        let c = rem[dr].clone() / lead.clone();
        let shift = dr - db;
        quot[shift] = c.clone();
        for (i, bc) in b.iter().enumerate() {
            let t = bc * &c;
            rem[i + shift] -= t;
        }
        rem = trim_poly(rem);
        if rem.len() == 1 && rem[0].is_zero() {
            break;
        }
        if rem.len() - 1 < db {
            break;
        }
    }
    (trim_poly(quot), rem)
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut r = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            r[i + j] += x * y;
        }
    }
    trim_poly(r)
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut r = a.to_vec();
    if r.len() < b.len() {
        r.resize(b.len(), BigRational::zero());
    }
    for (i, y) in b.iter().enumerate() {
        r[i] -= y;
    }
    trim_poly(r)
}

/// Extended gcd of rational polynomials: returns `(g, s)` with
/// `g = gcd(a, b)` (a nonzero constant when `a` is invertible mod `b`) and
/// `s*a ≡ g (mod b)`.
fn ext_gcd_polys(
    a: &[BigRational],
    b: &[BigRational],
) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut r0 = trim_poly(a.to_vec());
    let mut r1 = trim_poly(b.to_vec());
    let mut s0 = vec![BigRational::one()];
    let mut s1 = vec![BigRational::zero()];
    while !poly_is_zero(&r1) {
        let (q, r) = poly_divmod(&r0, &r1);
        let s = poly_sub(&s0, &poly_mul(&q, &s1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
    }
    (r0, s0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn phi_values() {
        assert_eq!(phi(1), 1);
        assert_eq!(phi(2), 1);
        assert_eq!(phi(5), 4);
        assert_eq!(phi(8), 4);
        assert_eq!(phi(12), 4);
        assert_eq!(phi(15), 8);
        assert_eq!(phi(120), 32);
    }

    #[test]
    fn zeta8_fourth_power_is_minus_one() {
        let z8 = Cyclo::root_of_unity(8, 1);
        let p = z8.pow(4);
        assert_eq!(p.as_rational().unwrap(), q(-1, 1));
    }

    #[test]
    fn fifth_roots_sum_to_zero() {
        let mut s = Cyclo::zero();
        for k in 0..5 {
            s = s.add(&Cyclo::root_of_unity(5, k));
        }
        assert!(s.is_zero());
    }

    #[test]
    fn cross_conductor_product() {
        // zeta_3 * zeta_5 = zeta_15^8
        let p = Cyclo::root_of_unity(3, 1).mul(&Cyclo::root_of_unity(5, 1));
        assert!(p.eq_elem(&Cyclo::root_of_unity(15, 8)));
    }

    #[test]
    fn inverse_roundtrip() {
        let e = Cyclo::root_of_unity(12, 5)
            .scale(&q(3, 7))
            .add(&Cyclo::root_of_unity(12, 1))
            .add(&Cyclo::from_rational(q(2, 3)));
        let i = e.inv();
        assert!(e.mul(&i).eq_elem(&Cyclo::one()));
    }

    #[test]
    fn root_of_unity_recognition() {
        let v = Cyclo::root_of_unity(10, 3);
        assert_eq!(v.as_root_of_unity(), Some((10, 3)));
        let w = Cyclo::root_of_unity(10, 2); // = zeta_5
        assert_eq!(w.as_root_of_unity(), Some((5, 1)));
        let minus = Cyclo::from_int(-1);
        assert_eq!(minus.as_root_of_unity(), Some((2, 1)));
        assert_eq!(Cyclo::one().as_root_of_unity(), Some((1, 0)));
        assert_eq!(Cyclo::from_int(2).as_root_of_unity(), None);
    }

    #[test]
    fn nth_root_of_root_of_unity() {
        let v = Cyclo::from_int(-1);
        let r = v.root_of_unity_nth_root(5).unwrap();
        assert!(r.pow(5).eq_elem(&v));
    }

    #[test]
    fn lift_and_collapse() {
        let v = Cyclo::root_of_unity(5, 1).lift(20);
        assert_eq!(v.conductor(), 20);
        let w = v.pow(5);
        // zeta_5^5 = 1 collapses back to Q
        assert_eq!(w.as_rational().unwrap(), q(1, 1));
        assert_eq!(w.conductor(), 1);
    }
}

