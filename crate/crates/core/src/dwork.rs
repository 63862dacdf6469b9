//! Invariants of smooth members of the Dwork pencil: Hodge diamonds of
//! Calabi-Yau hypersurfaces, Euler characteristics, moduli counts, and the
//! location and node count of the singular fibers.

use serde::Serialize;

use crate::{GeomError, Result};

/// Binomial coefficient with `C(n, k) = 0` for `n < 0` or `k > n`.
pub fn binomial(n: i128, k: i128) -> i128 {
    if k < 0 || n < 0 || k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: i128 = 1;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

/// Number of monomials of total degree `t` in `v` variables with every
/// exponent at most `emax`, by inclusion-exclusion.
pub fn restricted_monomial_count(t: i128, v: i128, emax: i128) -> i128 {
    if t < 0 {
        return 0;
    }
    let mut s: i128 = 0;
    for k in 0..=v {
        let term = binomial(v, k) * binomial(t - k * (emax + 1) + v - 1, v - 1);
        if k % 2 == 0 {
            s += term;
        } else {
            s -= term;
        }
    }
    s
}

/// Hodge data of a smooth degree-`(n+1)` hypersurface in `P^n` (a member of
/// the Dwork pencil), of complex dimension `m = n - 1`.
#[derive(Clone, Debug, Serialize)]
pub struct HodgeDiamond {
    /// Complex dimension of the hypersurface.
    pub dim: usize,
    /// Middle Hodge numbers `h^{p, m-p}` for `p = 0..=m`, including the
    /// non-primitive class in the middle spot when `m` is even.
    pub middle: Vec<i128>,
    /// Topological Euler characteristic.
    pub euler: i128,
    /// Dimension of the projective moduli of degree-`(n+1)` hypersurfaces
    /// in `P^n` (all coefficients modulo linear changes of coordinates).
    pub moduli_dimension: i128,
}

impl HodgeDiamond {
    /// Hodge number `h^{p,q}` of the hypersurface.
    pub fn hpq(&self, p: usize, q: usize) -> i128 {
        let m = self.dim;
        if p > m || q > m {
            return 0;
        }
        if p + q == m {
            return self.middle[p];
        }
        if p == q {
            return 1;
        }
        0
    }

    /// Betti numbers `b_0 .. b_2m`.
    pub fn betti(&self) -> Vec<i128> {
        let m = self.dim;
        (0..=2 * m)
            .map(|k| (0..=k).map(|p| self.hpq(p, k - p)).sum())
            .collect()
    }
}

/// Compute the Hodge diamond of a smooth degree-`(n+1)` hypersurface in
/// `P^n` via counts of Jacobian-ring monomials with bounded exponents.
pub fn hodge_diamond(n: usize) -> Result<HodgeDiamond> {
    if n < 2 {
        return Err(GeomError::InvalidInput(
            "ambient projective space must have dimension at least 2".into(),
        ));
    }
    hodge_hypersurface(n - 1, n + 1)
}

/// Compute the Hodge diamond of a smooth degree-`d` hypersurface of complex
/// dimension `m` in `P^(m+1)`.
pub fn hodge_hypersurface(m: usize, degree: usize) -> Result<HodgeDiamond> {
    if m < 1 || degree < 2 {
        return Err(GeomError::InvalidInput(
            "need dimension at least 1 and degree at least 2".into(),
        ));
    }
    let d = degree as i128;
    let v = (m + 2) as i128; // number of homogeneous coordinates
    let mut middle = Vec::with_capacity(m + 1);
    for p in 0..=m {
        let t = d * (p as i128 + 1) - v;
        let mut h = restricted_monomial_count(t, v, d - 2);
        if m % 2 == 0 && p == m / 2 {
            h += 1; // the non-primitive middle (p, p) class
        }
        middle.push(h);
    }
    let mut euler: i128 = 0;
    for k in 0..=m as i128 {
        let term = d.pow(k as u32 + 1) * binomial(v, m as i128 - k);
        if k % 2 == 0 {
            euler += term;
        } else {
            euler -= term;
        }
    }
    let moduli = binomial(m as i128 + 1 + d, d) - (v * v);
    Ok(HodgeDiamond { dim: m, middle, euler, moduli_dimension: moduli })
}

/// The singular members of the Dwork pencil in `P^n` and their node counts.
#[derive(Clone, Debug, Serialize)]
pub struct SingularFibers {
    /// The singular fibers sit at the parameter values with
    /// `lambda^(n+1) = 1`; this is that exponent.
    pub lambda_power: usize,
    /// Number of singular fibers (one per root of unity above).
    pub fiber_count: usize,
    /// Number of ordinary double points on each singular fiber.
    pub nodes_per_fiber: i128,
}

/// Location and node count of the singular fibers of the Dwork pencil in
/// `P^n`: members at `lambda^(n+1) = 1`, each with `(n+1)^(n-1)` nodes.
pub fn singular_fibers(n: usize) -> Result<SingularFibers> {
    if n < 2 {
        return Err(GeomError::InvalidInput(
            "ambient projective space must have dimension at least 2".into(),
        ));
    }
    let d = (n + 1) as i128;
    Ok(SingularFibers {
        lambda_power: n + 1,
        fiber_count: n + 1,
        nodes_per_fiber: d.pow(n as u32 - 1),
    })
}
