//! Polynomial arithmetic over cyclotomic fields: sparse multivariate
//! polynomials, univariate gcd and root counting, Sylvester resultants by
//! evaluation-interpolation, and an exact smoothness certificate for plane
//! curves.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;

use crate::cyclotomic::Cyclo;
use crate::{GeomError, Result};

/// Sparse multivariate polynomial with cyclotomic coefficients.
/// Terms are keyed by exponent vectors of fixed length `nvars`.
#[derive(Clone, Debug)]
pub struct MultiPoly {
    pub nvars: usize,
    terms: BTreeMap<Vec<u32>, Cyclo>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Cyclo) -> Self {
        let mut p = MultiPoly::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    /// The monomial `c * prod x_i^{e_i}`.
    pub fn monomial(nvars: usize, exps: Vec<u32>, c: Cyclo) -> Self {
        assert_eq!(exps.len(), nvars);
        let mut p = MultiPoly::zero(nvars);
        p.add_term(exps, c);
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        MultiPoly::monomial(nvars, e, Cyclo::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Cyclo)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn add_term(&mut self, exps: Vec<u32>, c: Cyclo) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().add(&c);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, other.nvars);
        let mut r = self.clone();
        for (e, c) in other.terms.iter() {
            r.add_term(e.clone(), c.clone());
        }
        r
    }

    pub fn neg(&self) -> MultiPoly {
        let mut r = MultiPoly::zero(self.nvars);
        for (e, c) in self.terms.iter() {
            r.terms.insert(e.clone(), c.neg());
        }
        r
    }

    pub fn sub(&self, other: &MultiPoly) -> MultiPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, other.nvars);
        let mut r = MultiPoly::zero(self.nvars);
        for (e1, c1) in self.terms.iter() {
            for (e2, c2) in other.terms.iter() {
                let e: Vec<u32> = e1.iter().zip(e2.iter()).map(|(a, b)| a + b).collect();
                r.add_term(e, c1.mul(c2));
            }
        }
        r
    }

    pub fn scale(&self, c: &Cyclo) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(self.nvars);
        }
        let mut r = MultiPoly::zero(self.nvars);
        for (e, x) in self.terms.iter() {
            r.terms.insert(e.clone(), x.mul(c));
        }
        r
    }

    pub fn pow(&self, k: u32) -> MultiPoly {
        let mut r = MultiPoly::constant(self.nvars, Cyclo::one());
        for _ in 0..k {
            r = r.mul(self);
        }
        r
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|e| e[var]).max().unwrap_or(0)
    }

    pub fn derivative(&self, var: usize) -> MultiPoly {
        let mut r = MultiPoly::zero(self.nvars);
        for (e, c) in self.terms.iter() {
            if e[var] == 0 {
                continue;
            }
            let mut ne = e.clone();
            ne[var] -= 1;
            r.add_term(ne, c.scale(&BigRational::from(BigInt::from(e[var] as i64))));
        }
        r
    }

    /// Substitute each variable by a linear combination of `new_nvars` fresh
    /// variables: `x_i -> sum_j subst[i][j] * y_j`.
    pub fn substitute_linear(&self, subst: &[Vec<Cyclo>], new_nvars: usize) -> MultiPoly {
        assert_eq!(subst.len(), self.nvars);
        let forms: Vec<MultiPoly> = subst
            .iter()
            .map(|row| {
                assert_eq!(row.len(), new_nvars);
                let mut f = MultiPoly::zero(new_nvars);
                for (j, c) in row.iter().enumerate() {
                    let mut e = vec![0; new_nvars];
                    e[j] = 1;
                    f.add_term(e, c.clone());
                }
                f
            })
            .collect();
        let mut r = MultiPoly::zero(new_nvars);
        for (e, c) in self.terms.iter() {
            let mut t = MultiPoly::constant(new_nvars, c.clone());
            for (i, &exp) in e.iter().enumerate() {
                if exp > 0 {
                    t = t.mul(&forms[i].pow(exp));
                }
            }
            r = r.add(&t);
        }
        r
    }

    /// Specialize one variable to a field value; the result still uses the
    /// same variable indexing, with `var` no longer occurring.
    pub fn specialize(&self, var: usize, value: &Cyclo) -> MultiPoly {
        let mut r = MultiPoly::zero(self.nvars);
        for (e, c) in self.terms.iter() {
            let mut ne = e.clone();
            let k = ne[var];
            ne[var] = 0;
            r.add_term(ne, c.mul(&value.pow(k as u64)));
        }
        r
    }

    /// Coefficients with respect to one variable: entry `k` is the
    /// coefficient polynomial of `x_var^k` (in the other variables).
    pub fn coefficients_in(&self, var: usize) -> Vec<MultiPoly> {
        let d = self.degree_in(var) as usize;
        let mut out = vec![MultiPoly::zero(self.nvars); d + 1];
        for (e, c) in self.terms.iter() {
            let mut ne = e.clone();
            let k = ne[var] as usize;
            ne[var] = 0;
            out[k].add_term(ne, c.clone());
        }
        out
    }

    pub fn eval(&self, point: &[Cyclo]) -> Cyclo {
        assert_eq!(point.len(), self.nvars);
        let mut s = Cyclo::zero();
        for (e, c) in self.terms.iter() {
            let mut t = c.clone();
            for (i, &exp) in e.iter().enumerate() {
                if exp > 0 {
                    t = t.mul(&point[i].pow(exp as u64));
                }
            }
            s = s.add(&t);
        }
        s
    }

    /// View as a univariate polynomial in `var`; all other variables must be
    /// absent.
    pub fn to_univariate(&self, var: usize) -> Result<UniPoly> {
        let d = self.degree_in(var) as usize;
        let mut coeffs = vec![Cyclo::zero(); d + 1];
        for (e, c) in self.terms.iter() {
            for (i, &exp) in e.iter().enumerate() {
                if i != var && exp != 0 {
                    return Err(GeomError::Invariant(
                        "polynomial is not univariate in the requested variable".into(),
                    ));
                }
            }
            coeffs[e[var] as usize] = c.clone();
        }
        Ok(UniPoly::new(coeffs))
    }
}

/// Dense univariate polynomial over the cyclotomic field, low degree first.
#[derive(Clone, Debug)]
pub struct UniPoly {
    pub coeffs: Vec<Cyclo>,
}

impl UniPoly {
    pub fn new(coeffs: Vec<Cyclo>) -> Self {
        let mut p = UniPoly { coeffs };
        p.trim();
        p
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: vec![] }
    }

    fn trim(&mut self) {
        while self.coeffs.last().map_or(false, |c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn derivative(&self) -> UniPoly {
        if self.coeffs.len() <= 1 {
            return UniPoly::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.scale(&BigRational::from(BigInt::from(i as i64))))
            .collect();
        UniPoly::new(coeffs)
    }

    pub fn eval(&self, x: &Cyclo) -> Cyclo {
        let mut s = Cyclo::zero();
        for c in self.coeffs.iter().rev() {
            s = s.mul(x).add(c);
        }
        s
    }

    pub fn divmod(&self, den: &UniPoly) -> (UniPoly, UniPoly) {
        assert!(!den.is_zero(), "univariate division by zero");
        let dd = den.coeffs.len() - 1;
        let lead_inv = den.coeffs[dd].inv();
        let mut rem = self.clone();
        if rem.is_zero() || rem.coeffs.len() - 1 < dd {
            return (UniPoly::zero(), rem);
        }
        let mut quot = vec![Cyclo::zero(); rem.coeffs.len() - dd];
        while !rem.is_zero() && rem.coeffs.len() - 1 >= dd {
            let dr = rem.coeffs.len() - 1;
            let c = rem.coeffs[dr].mul(&lead_inv);
            let shift = dr - dd;
            quot[shift] = c.clone();
            for (i, bc) in den.coeffs.iter().enumerate() {
                let t = bc.mul(&c);
                rem.coeffs[i + shift] = rem.coeffs[i + shift].sub(&t);
            }
            rem.trim();
            if rem.is_zero() || rem.coeffs.len() - 1 < dd {
                break;
            }
        }
        (UniPoly::new(quot), rem)
    }

    /// Monic gcd over the field.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divmod(&b);
            a = b;
            b = r;
        }
        if let Some(d) = a.degree() {
            let inv = a.coeffs[d].inv();
            a = UniPoly::new(a.coeffs.iter().map(|c| c.mul(&inv)).collect());
        }
        a
    }

    /// Number of distinct roots in the algebraic closure.
    pub fn distinct_root_count(&self) -> usize {
        match self.degree() {
            None | Some(0) => 0,
            Some(d) => {
                let g = self.gcd(&self.derivative());
                d - g.degree().unwrap_or(0)
            }
        }
    }
}

/// Homogeneous binary form of degree `d`: entry `k` is the coefficient of
/// `u^k v^(d-k)`.
#[derive(Clone, Debug)]
pub struct BinaryForm {
    pub coeffs: Vec<Cyclo>,
}

impl BinaryForm {
    /// Extract a binary form from a polynomial in exactly the two variables
    /// `(u, v)`; the polynomial must be homogeneous in those variables.
    pub fn from_poly(p: &MultiPoly, u: usize, v: usize) -> Result<BinaryForm> {
        if p.is_zero() {
            return Ok(BinaryForm { coeffs: vec![] });
        }
        let d = p.total_degree() as usize;
        let mut coeffs = vec![Cyclo::zero(); d + 1];
        for (e, c) in p.terms() {
            for (i, &exp) in e.iter().enumerate() {
                if i != u && i != v && exp != 0 {
                    return Err(GeomError::Invariant("form involves extra variables".into()));
                }
            }
            if (e[u] + e[v]) as usize != d {
                return Err(GeomError::Invariant("form is not homogeneous".into()));
            }
            coeffs[e[u] as usize] = c.clone();
        }
        Ok(BinaryForm { coeffs })
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    /// Number of distinct roots in `P^1` over the algebraic closure.
    pub fn distinct_projective_roots(&self) -> usize {
        if self.is_zero() {
            return usize::MAX; // identically zero: every point
        }
        let d = self.degree();
        let f = UniPoly::new(self.coeffs.clone()); // f(t) = form(t, 1)
        // distinct affine roots, plus the point (1:0) when the u^d
        // coefficient vanishes
        let at_infinity = if self.coeffs[d].is_zero() { 1 } else { 0 };
        f.distinct_root_count() + at_infinity
    }

    /// For a two-term form `a u^d + b v^d` with `a, b` nonzero, the `d`
    /// distinct projective roots `(u : 1)` with exact cyclotomic coordinates.
    pub fn two_term_roots(&self) -> Result<Vec<Cyclo>> {
        let d = self.degree();
        let a = &self.coeffs[d];
        let b = &self.coeffs[0];
        if a.is_zero() || b.is_zero() {
            return Err(GeomError::InvalidInput("form is not two-term with nonzero ends".into()));
        }
        for k in 1..d {
            if !self.coeffs[k].is_zero() {
                return Err(GeomError::InvalidInput("form has interior terms".into()));
            }
        }
        let w = b.div(a).neg(); // u^d = w
        let r0 = dth_root_in_cyclotomics(&w, d as u64)?;
        let mut roots = Vec::with_capacity(d);
        for k in 0..d {
            roots.push(r0.mul(&Cyclo::root_of_unity(d as u64, k as i64)));
        }
        Ok(roots)
    }
}

/// An exact `d`-th root of `w` inside a cyclotomic field, when `w` is a
/// rational times a root of unity with the rational part a perfect `d`-th
/// power (up to sign for odd `d`).
pub fn dth_root_in_cyclotomics(w: &Cyclo, d: u64) -> Result<Cyclo> {
    if w.is_zero() {
        return Ok(Cyclo::zero());
    }
    // split w = q * rho with q a positive rational and rho a root of unity
    let split = |w: &Cyclo| -> Option<(BigRational, Cyclo)> {
        if let Some(q) = w.as_rational() {
            if q.is_positive() {
                return Some((q, Cyclo::one()));
            }
            return Some((-q, Cyclo::from_int(-1)));
        }
        let m = w.conductor();
        let bound = num_integer::lcm(2, m);
        for k in 0..bound {
            let rho = Cyclo::root_of_unity(bound, k as i64);
            if let Some(q) = w.mul(&rho.inv()).as_rational() {
                if q.is_positive() {
                    return Some((q, rho));
                }
                return Some((-q, rho.mul(&Cyclo::from_int(-1))));
            }
        }
        None
    };
    let (q, rho) = split(w).ok_or_else(|| {
        GeomError::Degenerate("value is not a rational multiple of a root of unity".into())
    })?;
    let qn = rational_dth_root(&q, d)
        .ok_or_else(|| GeomError::Degenerate("rational part is not a perfect power".into()))?;
    let rho_root = rho
        .root_of_unity_nth_root(d)
        .ok_or_else(|| GeomError::Invariant("root of unity expected".into()))?;
    Ok(rho_root.scale(&qn))
}

/// Exact positive `d`-th root of a positive rational, when it exists.
fn rational_dth_root(q: &BigRational, d: u64) -> Option<BigRational> {
    use num_traits::Pow;
    let rn = q.numer().nth_root(d as u32);
    let rd = q.denom().nth_root(d as u32);
    if Pow::pow(&rn, d as u32) == *q.numer() && Pow::pow(&rd, d as u32) == *q.denom() {
        Some(BigRational::new(rn, rd))
    } else {
        None
    }
}

/// Sylvester resultant of two univariate polynomials over the field.
pub fn resultant(a: &UniPoly, b: &UniPoly) -> Cyclo {
    let da = match a.degree() {
        Some(d) => d,
        None => return Cyclo::zero(),
    };
    let db = match b.degree() {
        Some(d) => d,
        None => return Cyclo::zero(),
    };
    if da == 0 {
        return a.coeffs[0].pow(db as u64);
    }
    if db == 0 {
        return b.coeffs[0].pow(da as u64);
    }
    let n = da + db;
    let mut m = vec![vec![Cyclo::zero(); n]; n];
    for i in 0..db {
        for (j, c) in a.coeffs.iter().enumerate() {
            m[i][i + da - j] = c.clone();
        }
    }
    for i in 0..da {
        for (j, c) in b.coeffs.iter().enumerate() {
            m[db + i][i + db - j] = c.clone();
        }
    }
    field_determinant(m)
}

/// Determinant of a square matrix over the field by Gaussian elimination.
pub fn field_determinant(mut m: Vec<Vec<Cyclo>>) -> Cyclo {
    let n = m.len();
    let mut det = Cyclo::one();
    for col in 0..n {
        let piv = (col..n).find(|&i| !m[i][col].is_zero());
        let piv = match piv {
            Some(p) => p,
            None => return Cyclo::zero(),
        };
        if piv != col {
            m.swap(col, piv);
            det = det.neg();
        }
        let p = m[col][col].clone();
        det = det.mul(&p);
        let pinv = p.inv();
        for i in col + 1..n {
            if m[i][col].is_zero() {
                continue;
            }
            let f = m[i][col].mul(&pinv);
            for k in col..n {
                let t = f.mul(&m[col][k]);
                m[i][k] = m[i][k].sub(&t);
            }
        }
    }
    det
}

/// Rank of a matrix over the field.
pub fn field_rank(mut m: Vec<Vec<Cyclo>>) -> usize {
    if m.is_empty() {
        return 0;
    }
    let rows = m.len();
    let cols = m[0].len();
    let mut rank = 0;
    for col in 0..cols {
        let piv = (rank..rows).find(|&i| !m[i][col].is_zero());
        let piv = match piv {
            Some(p) => p,
            None => continue,
        };
        m.swap(rank, piv);
        let pinv = m[rank][col].inv();
        for i in 0..rows {
            if i != rank && !m[i][col].is_zero() {
                let f = m[i][col].mul(&pinv);
                for k in col..cols {
                    let t = f.mul(&m[rank][k]);
                    m[i][k] = m[i][k].sub(&t);
                }
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

/// Product of two square matrices over the field.
pub fn field_matmul(a: &[Vec<Cyclo>], b: &[Vec<Cyclo>]) -> Vec<Vec<Cyclo>> {
    let n = a.len();
    let mut r = vec![vec![Cyclo::zero(); n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                if b[k][j].is_zero() {
                    continue;
                }
                let t = a[i][k].mul(&b[k][j]);
                r[i][j] = r[i][j].add(&t);
            }
        }
    }
    r
}

/// Kernel basis of a matrix over the field (right kernel).
pub fn field_kernel(m: &[Vec<Cyclo>]) -> Vec<Vec<Cyclo>> {
    if m.is_empty() {
        return vec![];
    }
    let rows = m.len();
    let cols = m[0].len();
    let mut a: Vec<Vec<Cyclo>> = m.to_vec();
    let mut pivot_col_of_row = Vec::new();
    let mut rank = 0;
    for col in 0..cols {
        let piv = (rank..rows).find(|&i| !a[i][col].is_zero());
        let piv = match piv {
            Some(p) => p,
            None => continue,
        };
        a.swap(rank, piv);
        let pinv = a[rank][col].inv();
        for k in 0..cols {
            a[rank][k] = a[rank][k].mul(&pinv);
        }
        for i in 0..rows {
            if i != rank && !a[i][col].is_zero() {
                let f = a[i][col].clone();
                for k in 0..cols {
                    let t = f.mul(&a[rank][k]);
                    a[i][k] = a[i][k].sub(&t);
                }
            }
        }
        pivot_col_of_row.push(col);
        rank += 1;
        if rank == rows {
            break;
        }
    }
    let pivot_set: std::collections::BTreeSet<usize> = pivot_col_of_row.iter().copied().collect();
    let mut basis = Vec::new();
    for free in 0..cols {
        if pivot_set.contains(&free) {
            continue;
        }
        let mut v = vec![Cyclo::zero(); cols];
        v[free] = Cyclo::one();
        for (row, &pc) in pivot_col_of_row.iter().enumerate() {
            v[pc] = a[row][free].neg();
        }
        basis.push(v);
    }
    basis
}

/// Lagrange interpolation through rational sample points with field values.
pub fn lagrange_interpolate(points: &[(BigRational, Cyclo)]) -> UniPoly {
    let n = points.len();
    let mut result = UniPoly::zero();
    for i in 0..n {
        // numerator polynomial prod_{j != i} (x - x_j), scaled
        let mut num = UniPoly::new(vec![Cyclo::one()]);
        let mut denom = BigRational::one();
        for j in 0..n {
            if j == i {
                continue;
            }
            let xj = Cyclo::from_rational(points[j].0.clone());
            num = mul_unipoly(&num, &UniPoly::new(vec![xj.neg(), Cyclo::one()]));
            denom *= points[i].0.clone() - points[j].0.clone();
        }
        let scale = points[i].1.scale(&(BigRational::one() / denom));
        let term = UniPoly::new(num.coeffs.iter().map(|c| c.mul(&scale)).collect());
        result = add_unipoly(&result, &term);
    }
    result
}

pub fn add_unipoly(a: &UniPoly, b: &UniPoly) -> UniPoly {
    let n = a.coeffs.len().max(b.coeffs.len());
    let mut coeffs = vec![Cyclo::zero(); n];
    for (i, c) in a.coeffs.iter().enumerate() {
        coeffs[i] = coeffs[i].add(c);
    }
    for (i, c) in b.coeffs.iter().enumerate() {
        coeffs[i] = coeffs[i].add(c);
    }
    UniPoly::new(coeffs)
}

pub fn mul_unipoly(a: &UniPoly, b: &UniPoly) -> UniPoly {
    if a.is_zero() || b.is_zero() {
        return UniPoly::zero();
    }
    let mut coeffs = vec![Cyclo::zero(); a.coeffs.len() + b.coeffs.len() - 1];
    for (i, x) in a.coeffs.iter().enumerate() {
        for (j, y) in b.coeffs.iter().enumerate() {
            let t = x.mul(y);
            coeffs[i + j] = coeffs[i + j].add(&t);
        }
    }
    UniPoly::new(coeffs)
}

// --- modular arithmetic helpers for the finite-field certificate ---

fn mulp(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powp(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulp(r, a, p);
        }
        a = mulp(a, a, p);
        e >>= 1;
    }
    r
}

fn invp(a: u64, p: u64) -> u64 {
    powp(a, p - 2, p)
}

/// Deterministic Miller-Rabin primality test for `u64`.
fn is_prime_u64(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &q in &BASES {
        if n % q == 0 {
            return n == q;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &BASES {
        let mut x = powp(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulp(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn prime_factors(mut m: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut q = 2;
    while q * q <= m {
        if m % q == 0 {
            out.push(q);
            while m % q == 0 {
                m /= q;
            }
        }
        q += 1;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

/// A ring homomorphism `Z[zeta_m, 1/p'] -> F_p` for a prime `p = 1 mod m`,
/// sending `zeta_m` to a fixed element of multiplicative order `m`.
struct FpEmbedding {
    p: u64,
    m: u64,
    /// Powers `zeta^0 .. zeta^(phi(m)-1)` of the chosen root.
    zeta_pow: Vec<u64>,
}

impl FpEmbedding {
    /// The `skip`-th suitable prime above 10^9 (so several independent
    /// reductions are available when one fails).
    fn find(m: u64, skip: usize) -> Option<FpEmbedding> {
        let step = num_integer::lcm(m, 2);
        let factors = prime_factors(m);
        let mut k = 1_000_000_000 / step + 1;
        let mut found = 0;
        for _ in 0..1_000_000u64 {
            let p = k * step + 1;
            k += 1;
            if !is_prime_u64(p) {
                continue;
            }
            let zeta = if m == 1 {
                1
            } else {
                let mut root = 0;
                for g in 2..1000 {
                    let x = powp(g, (p - 1) / m, p);
                    if factors.iter().all(|&q| powp(x, m / q, p) != 1) {
                        root = x;
                        break;
                    }
                }
                if root == 0 {
                    continue;
                }
                root
            };
            if found < skip {
                found += 1;
                continue;
            }
            let deg = crate::cyclotomic::phi(m) as usize;
            let mut zeta_pow = Vec::with_capacity(deg.max(1));
            let mut cur = 1u64;
            for _ in 0..deg.max(1) {
                zeta_pow.push(cur);
                cur = mulp(cur, zeta, p);
            }
            return Some(FpEmbedding { p, m, zeta_pow });
        }
        None
    }

    /// Image of a field element; `None` when a denominator is divisible
    /// by `p` (then another prime must be used).
    fn reduce(&self, c: &Cyclo) -> Option<u64> {
        use num_integer::Integer;
        use num_traits::ToPrimitive;
        let pb = BigInt::from(self.p);
        let lifted = c.lift(self.m);
        let mut acc = 0u64;
        for (i, q) in lifted.power_basis().iter().enumerate() {
            if q.is_zero() {
                continue;
            }
            let den = q.denom().mod_floor(&pb).to_u64()?;
            if den == 0 {
                return None;
            }
            let num = q.numer().mod_floor(&pb).to_u64()?;
            let val = mulp(num, invp(den, self.p), self.p);
            acc = (acc + mulp(val, self.zeta_pow[i], self.p)) % self.p;
        }
        Some(acc)
    }

    fn reduce_poly(&self, f: &MultiPoly) -> Option<BTreeMap<Vec<u32>, u64>> {
        let mut terms = BTreeMap::new();
        for (e, c) in f.terms() {
            let v = self.reduce(c)?;
            if v != 0 {
                terms.insert(e.clone(), v);
            }
        }
        Some(terms)
    }
}

/// Coefficients in `w` of a reduced trivariate form after `(u, v) = (u0, v0)`.
fn specialize_uv_fp(
    terms: &BTreeMap<Vec<u32>, u64>,
    u0: u64,
    v0: u64,
    wdeg: usize,
    p: u64,
) -> Vec<u64> {
    let mut out = vec![0u64; wdeg + 1];
    for (e, &c) in terms {
        let t = mulp(c, mulp(powp(u0, e[0] as u64, p), powp(v0, e[1] as u64, p), p), p);
        out[e[2] as usize] = (out[e[2] as usize] + t) % p;
    }
    out
}

/// Sylvester resultant of two coefficient vectors (formal degrees
/// `a.len() - 1` and `b.len() - 1`) over `F_p`.
fn resultant_fp(a: &[u64], b: &[u64], p: u64) -> u64 {
    let da = a.len() - 1;
    let db = b.len() - 1;
    let n = da + db;
    if n == 0 {
        return 1 % p;
    }
    let mut m = vec![vec![0u64; n]; n];
    for i in 0..db {
        for (j, &c) in a.iter().enumerate() {
            m[i][i + da - j] = c;
        }
    }
    for i in 0..da {
        for (j, &c) in b.iter().enumerate() {
            m[db + i][i + db - j] = c;
        }
    }
    // Gaussian elimination determinant mod p
    let mut det = 1u64;
    for col in 0..n {
        let piv = match (col..n).find(|&i| m[i][col] != 0) {
            Some(v) => v,
            None => return 0,
        };
        if piv != col {
            m.swap(col, piv);
            det = p - det;
        }
        det = mulp(det, m[col][col], p);
        let pinv = invp(m[col][col], p);
        for i in col + 1..n {
            if m[i][col] == 0 {
                continue;
            }
            let f = mulp(m[i][col], pinv, p);
            for k in col..n {
                let t = mulp(f, m[col][k], p);
                m[i][k] = (m[i][k] + p - t) % p;
            }
        }
    }
    det % p
}

fn lagrange_fp(samples: &[(u64, u64)], p: u64) -> Vec<u64> {
    let n = samples.len();
    let mut result = vec![0u64; n];
    for i in 0..n {
        let mut num = vec![0u64; n];
        num[0] = 1;
        let mut deg = 0;
        let mut denom = 1u64;
        for j in 0..n {
            if j == i {
                continue;
            }
            // num *= (x - x_j)
            let xj = samples[j].0 % p;
            for k in (0..=deg).rev() {
                let t = num[k];
                num[k + 1] = (num[k + 1] + t) % p;
                num[k] = mulp(t, (p - xj) % p, p);
            }
            deg += 1;
            denom = mulp(denom, (samples[i].0 % p + p - xj) % p, p);
        }
        let scale = mulp(samples[i].1 % p, invp(denom, p), p);
        for k in 0..n {
            result[k] = (result[k] + mulp(num[k], scale, p)) % p;
        }
    }
    while result.len() > 1 && *result.last().unwrap() == 0 {
        result.pop();
    }
    result
}

fn gcd_fp(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let trim = |mut v: Vec<u64>| {
        while v.len() > 1 && *v.last().unwrap() == 0 {
            v.pop();
        }
        v
    };
    let mut a = trim(a.to_vec());
    let mut b = trim(b.to_vec());
    while !(b.len() == 1 && b[0] == 0) {
        // a mod b
        let db = b.len() - 1;
        let binv = invp(b[db], p);
        while a.len() > db && !(a.len() == 1 && a[0] == 0) {
            let da = a.len() - 1;
            if da < db {
                break;
            }
            let f = mulp(a[da], binv, p);
            for j in 0..=db {
                let t = mulp(f, b[j], p);
                a[da - db + j] = (a[da - db + j] + p - t) % p;
            }
            a = trim(a);
            if a.len() == 1 && a[0] == 0 {
                break;
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
    a
}

/// Finite-field smoothness certificate: reduce the curve at a prime
/// `p = 1 mod m` and certify that the reduction is smooth over the algebraic
/// closure of `F_p` (partials without common projective zero, by shearing to
/// `w`-regular position and eliminating `w` with pairwise resultants). A
/// smooth reduction at a good prime forces the characteristic-zero curve to
/// be smooth, because the discriminant is an integral polynomial in the
/// coefficients and commutes with the reduction.
fn plane_curve_smooth_fp(f: &MultiPoly, partials: &[MultiPoly]) -> Option<bool> {
    let d = f.total_degree();
    if d < 2 {
        return None;
    }
    let mut m = 1u64;
    for (_, c) in f.terms() {
        m = num_integer::lcm(m, c.conductor());
    }
    'prime: for skip in 0..3 {
        let emb = FpEmbedding::find(m, skip)?;
        let p = emb.p;
        // the reduction must keep the full degree for the argument to apply
        let fbar = match emb.reduce_poly(f) {
            Some(t) => t,
            None => continue 'prime,
        };
        let dbar = fbar.keys().map(|e| e.iter().sum::<u32>()).max().unwrap_or(0);
        if dbar != d {
            continue 'prime;
        }
        let shears: [(i64, i64); 8] =
            [(0, 0), (1, 0), (0, 1), (1, 1), (2, 1), (1, 2), (3, 1), (2, 3)];
        'shear: for &(c1, c2) in &shears {
            let subst: Vec<Vec<Cyclo>> = vec![
                vec![Cyclo::one(), Cyclo::zero(), Cyclo::from_int(c1)],
                vec![Cyclo::zero(), Cyclo::one(), Cyclo::from_int(c2)],
                vec![Cyclo::zero(), Cyclo::zero(), Cyclo::one()],
            ];
            let pd = (d - 1) as usize;
            let mut sheared = Vec::new();
            for q in partials {
                let s = q.substitute_linear(&subst, 3);
                let sbar = match emb.reduce_poly(&s) {
                    Some(t) => t,
                    None => continue 'prime,
                };
                // w-regular: the w^(d-1) coefficient is a nonzero scalar
                let mut top_ok = false;
                for (e, _) in &sbar {
                    if e[2] as usize == pd {
                        if e[0] + e[1] > 0 {
                            continue 'shear;
                        }
                        top_ok = true;
                    }
                    if e[2] as usize > pd {
                        continue 'shear;
                    }
                }
                if !top_ok {
                    continue 'shear;
                }
                sheared.push(sbar);
            }
            let rdeg = pd * pd;
            let pairs = [(0usize, 1usize), (0, 2), (1, 2)];
            let mut resultants = Vec::new();
            let mut infinity_clear = false;
            for &(i, j) in &pairs {
                let mut samples = Vec::new();
                for s in 0..=(rdeg as u64) {
                    let a = specialize_uv_fp(&sheared[i], s, 1, pd, p);
                    let b = specialize_uv_fp(&sheared[j], s, 1, pd, p);
                    samples.push((s, resultant_fp(&a, &b, p)));
                }
                resultants.push(lagrange_fp(&samples, p));
                let a = specialize_uv_fp(&sheared[i], 1, 0, pd, p);
                let b = specialize_uv_fp(&sheared[j], 1, 0, pd, p);
                if resultant_fp(&a, &b, p) != 0 {
                    infinity_clear = true;
                }
            }
            let g01 = gcd_fp(&resultants[0], &resultants[1], p);
            let g = gcd_fp(&g01, &resultants[2], p);
            let affine_clear = g.len() == 1 && g[0] != 0;
            if affine_clear && infinity_clear {
                return Some(true);
            }
        }
    }
    None
}

/// Certify smoothness of a plane projective curve `f(u, v, w) = 0` given by a
/// homogeneous polynomial in 3 variables with cyclotomic coefficients.
///
/// Returns `Ok(true)` only with an exact certificate (the three partial
/// derivatives have no common projective zero); `Ok(false)` when no
/// certificate could be produced, which includes genuinely singular curves.
/// A fast finite-field certificate is tried first; the characteristic-zero
/// elimination runs only when no reduction certifies smoothness.
pub fn plane_curve_smooth(f: &MultiPoly) -> Result<bool> {
    assert_eq!(f.nvars, 3);
    let d = f.total_degree();
    if d < 1 {
        return Ok(false);
    }
    let partials: Vec<MultiPoly> = (0..3).map(|i| f.derivative(i)).collect();
    if partials.iter().any(|p| p.is_zero()) {
        return Ok(false);
    }
    if plane_curve_smooth_fp(f, &partials) == Some(true) {
        return Ok(true);
    }
    let shears: [(i64, i64); 8] =
        [(0, 0), (1, 0), (0, 1), (1, 1), (2, 1), (1, 2), (3, 1), (2, 3)];
    'shear: for &(c1, c2) in &shears {
        // (u, v, w) -> (u + c1 w, v + c2 w, w)
        let subst: Vec<Vec<Cyclo>> = vec![
            vec![Cyclo::one(), Cyclo::zero(), Cyclo::from_int(c1)],
            vec![Cyclo::zero(), Cyclo::one(), Cyclo::from_int(c2)],
            vec![Cyclo::zero(), Cyclo::zero(), Cyclo::one()],
        ];
        let sheared: Vec<MultiPoly> =
            partials.iter().map(|p| p.substitute_linear(&subst, 3)).collect();
        // each sheared partial must be w-regular: the coefficient of
        // w^(d-1) is a nonzero scalar
        let pd = (d - 1) as usize;
        for p in &sheared {
            let coeffs = p.coefficients_in(2);
            if coeffs.len() <= pd {
                continue 'shear;
            }
            let top = &coeffs[pd];
            if top.is_zero() || top.total_degree() > 0 {
                continue 'shear;
            }
        }
        // pairwise resultants with respect to w, as univariate polynomials in
        // t after setting (u, v) = (t, 1), via evaluation-interpolation;
        // degree of each resultant is at most (d-1)^2 <= 16 + the top check
        let rdeg = (pd * pd) as usize;
        let pairs = [(0usize, 1usize), (0, 2), (1, 2)];
        let mut resultants = Vec::new();
        let mut infinities = Vec::new();
        for &(i, j) in &pairs {
            let mut samples = Vec::new();
            for s in 0..=(rdeg as i64) {
                let t = BigRational::from(BigInt::from(s));
                let pu = sheared[i]
                    .specialize(0, &Cyclo::from_rational(t.clone()))
                    .specialize(1, &Cyclo::one());
                let qu = sheared[j]
                    .specialize(0, &Cyclo::from_rational(t.clone()))
                    .specialize(1, &Cyclo::one());
                let r = resultant(&pu.to_univariate(2)?, &qu.to_univariate(2)?);
                samples.push((t, r));
            }
            resultants.push(lagrange_interpolate(&samples));
            // the remaining projective point (u : v) = (1 : 0)
            let pu = sheared[i].specialize(0, &Cyclo::one()).specialize(1, &Cyclo::zero());
            let qu = sheared[j].specialize(0, &Cyclo::one()).specialize(1, &Cyclo::zero());
            infinities.push(resultant(&pu.to_univariate(2)?, &qu.to_univariate(2)?));
        }
        let g01 = resultants[0].gcd(&resultants[1]);
        let g = g01.gcd(&resultants[2]);
        let affine_clear = g.degree() == Some(0);
        let infinity_clear = infinities.iter().any(|r| !r.is_zero());
        if affine_clear && infinity_clear {
            return Ok(true);
        }
    }
    Ok(false)
}
