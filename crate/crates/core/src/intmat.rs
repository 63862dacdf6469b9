//! Exact integer matrix algebra: Smith normal form, kernels, signatures,
//! and integral lattices with discriminant-group data.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::{GeomError, Result};

/// A dense matrix with arbitrary-precision integer entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        let mut m = IntMatrix::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c);
            for (j, &v) in row.iter().enumerate() {
                m[(i, j)] = BigInt::from(v);
            }
        }
        m
    }

    pub fn diagonal(d: &[i64]) -> Self {
        let mut m = IntMatrix::zeros(d.len(), d.len());
        for (i, &v) in d.iter().enumerate() {
            m[(i, i)] = BigInt::from(v);
        }
        m
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows);
        let mut m = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self[(i, k)].is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let t = &self[(i, k)] * &other[(k, j)];
                    m[(i, j)] += t;
                }
            }
        }
        m
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows)
                .all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    /// Determinant by fraction-free Bareiss elimination.
    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.data.clone();
        let idx = |i: usize, j: usize| i * n + j;
        let mut prev = BigInt::one();
        let mut sign = BigInt::one();
        for k in 0..n - 1 {
            if a[idx(k, k)].is_zero() {
                let mut found = None;
                for i in k + 1..n {
                    if !a[idx(i, k)].is_zero() {
                        found = Some(i);
                        break;
                    }
                }
                match found {
                    Some(i) => {
                        for j in 0..n {
                            a.swap(idx(k, j), idx(i, j));
                        }
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[idx(k, k)] * &a[idx(i, j)] - &a[idx(i, k)] * &a[idx(k, j)])
                        / &prev;
                    a[idx(i, j)] = v;
                }
                a[idx(i, k)] = BigInt::zero();
            }
            prev = a[idx(k, k)].clone();
        }
        sign * a[idx(n - 1, n - 1)].clone()
    }

    /// Signature `(n_plus, n_minus, n_zero)` of a symmetric matrix, by exact
    /// rational congruent diagonalization.
    pub fn signature(&self) -> Result<(usize, usize, usize)> {
        if !self.is_symmetric() {
            return Err(GeomError::InvalidInput("signature requires a symmetric matrix".into()));
        }
        let n = self.rows;
        let mut a: Vec<Vec<BigRational>> = (0..n)
            .map(|i| (0..n).map(|j| BigRational::from(self[(i, j)].clone())).collect())
            .collect();
        let (mut pos, mut neg, mut zero) = (0usize, 0usize, 0usize);
        let mut active: Vec<usize> = (0..n).collect();
        while let Some(&_first) = active.first() {
            // pick a pivot with nonzero diagonal among active indices
            let pivot = active.iter().copied().find(|&i| !a[i][i].is_zero());
            let p = match pivot {
                Some(p) => p,
                None => {
                    // all diagonal entries zero: find a nonzero off-diagonal pair
                    let mut pair = None;
                    'outer: for (s, &i) in active.iter().enumerate() {
                        for &j in active.iter().skip(s + 1) {
                            if !a[i][j].is_zero() {
                                pair = Some((i, j));
                                break 'outer;
                            }
                        }
                    }
                    match pair {
                        Some((i, j)) => {
                            // row/col operation: add row j to row i to create
                            // a nonzero diagonal entry at (i, i)
                            for k in 0..n {
                                let t = a[j][k].clone();
                                a[i][k] += t;
                            }
                            for k in 0..n {
                                let t = a[k][j].clone();
                                a[k][i] += t;
                            }
                            i
                        }
                        None => {
                            zero += active.len();
                            break;
                        }
                    }
                }
            };
            let d = a[p][p].clone();
            if d.is_positive() {
                pos += 1;
            } else {
                neg += 1;
            }
            active.retain(|&i| i != p);
            // clear row/column p against the remaining active indices
            let others: Vec<usize> = active.clone();
            for &i in &others {
                if a[i][p].is_zero() {
                    continue;
                }
                let f = a[i][p].clone() / d.clone();
                for k in 0..n {
                    let t = &f * &a[p][k];
                    a[i][k] -= t;
                }
                for k in 0..n {
                    let t = &f * &a[k][p];
                    a[k][i] -= t;
                }
            }
        }
        Ok((pos, neg, zero))
    }

    /// Solve `self * x = rhs` exactly over the rationals, if a solution exists
    /// and the matrix has full column rank.
    pub fn solve_rational(&self, rhs: &[BigRational]) -> Option<Vec<BigRational>> {
        assert_eq!(rhs.len(), self.rows);
        let (r, c) = (self.rows, self.cols);
        let mut aug: Vec<Vec<BigRational>> = (0..r)
            .map(|i| {
                let mut row: Vec<BigRational> =
                    (0..c).map(|j| BigRational::from(self[(i, j)].clone())).collect();
                row.push(rhs[i].clone());
                row
            })
            .collect();
        let mut pivot_cols = Vec::new();
        let mut row = 0;
        for col in 0..c {
            let piv = (row..r).find(|&i| !aug[i][col].is_zero());
            let piv = match piv {
                Some(p) => p,
                None => continue,
            };
            aug.swap(row, piv);
            let d = aug[row][col].clone();
            for k in col..=c {
                aug[row][k] = aug[row][k].clone() / d.clone();
            }
            for i in 0..r {
                if i != row && !aug[i][col].is_zero() {
                    let f = aug[i][col].clone();
                    for k in col..=c {
                        let t = &f * &aug[row][k];
                        aug[i][k] -= t;
                    }
                }
            }
            pivot_cols.push(col);
            row += 1;
            if row == r {
                break;
            }
        }
        // consistency: rows of zeros must have zero rhs
        for i in row..r {
            if !aug[i][c].is_zero() {
                return None;
            }
        }
        if pivot_cols.len() < c {
            return None; // not full column rank: solution not unique
        }
        let mut x = vec![BigRational::zero(); c];
        for (i, &col) in pivot_cols.iter().enumerate() {
            x[col] = aug[i][c].clone();
        }
        Some(x)
    }

    /// Smith normal form `D = U * self * V` with unimodular `U`, `V`.
    pub fn smith_normal_form(&self) -> SmithNormalForm {
        let (r, c) = (self.rows, self.cols);
        let mut a = self.clone();
        let mut u = IntMatrix::identity(r);
        let mut v = IntMatrix::identity(c);
        let mut t = 0usize;
        while t < r.min(c) {
            // find a nonzero pivot in the remaining block
            let mut pivot = None;
            'search: for i in t..r {
                for j in t..c {
                    if !a[(i, j)].is_zero() {
                        pivot = Some((i, j));
                        break 'search;
                    }
                }
            }
            let (pi, pj) = match pivot {
                Some(p) => p,
                None => break,
            };
            a.swap_rows(t, pi);
            u.swap_rows(t, pi);
            a.swap_cols(t, pj);
            v.swap_cols(t, pj);
            loop {
                // clear column t
                let mut dirty = false;
                for i in t + 1..r {
                    if a[(i, t)].is_zero() {
                        continue;
                    }
                    if (&a[(i, t)] % &a[(t, t)]).is_zero() {
                        let q = &a[(i, t)] / &a[(t, t)];
                        a.row_axpy(i, t, &(-q.clone()));
                        u.row_axpy(i, t, &(-q));
                    } else {
                        let (g, s, w) = ext_gcd(&a[(t, t)], &a[(i, t)]);
                        let (x, y) = (&a[(t, t)] / &g, &a[(i, t)] / &g);
                        a.row_combine(t, i, &s, &w, &(-y.clone()), &x);
                        u.row_combine(t, i, &s, &w, &(-y), &x);
                        dirty = true;
                    }
                }
                for j in t + 1..c {
                    if a[(t, j)].is_zero() {
                        continue;
                    }
                    if (&a[(t, j)] % &a[(t, t)]).is_zero() {
                        let q = &a[(t, j)] / &a[(t, t)];
                        a.col_axpy(j, t, &(-q.clone()));
                        v.col_axpy(j, t, &(-q));
                        dirty = true; // column ops may refill the column
                    } else {
                        let (g, s, w) = ext_gcd(&a[(t, t)], &a[(t, j)]);
                        let (x, y) = (&a[(t, t)] / &g, &a[(t, j)] / &g);
                        a.col_combine(t, j, &s, &w, &(-y.clone()), &x);
                        v.col_combine(t, j, &s, &w, &(-y), &x);
                        dirty = true;
                    }
                }
                let col_clear = (t + 1..r).all(|i| a[(i, t)].is_zero());
                let row_clear = (t + 1..c).all(|j| a[(t, j)].is_zero());
                if col_clear && row_clear {
                    break;
                }
                let _ = dirty;
            }
            t += 1;
        }
        // enforce divisibility d_1 | d_2 | ...
        let k = r.min(c);
        loop {
            let mut changed = false;
            for i in 0..k.saturating_sub(1) {
                let (d1, d2) = (a[(i, i)].clone(), a[(i + 1, i + 1)].clone());
                if d1.is_zero() && !d2.is_zero() {
                    a.swap_rows(i, i + 1);
                    u.swap_rows(i, i + 1);
                    a.swap_cols(i, i + 1);
                    v.swap_cols(i, i + 1);
                    changed = true;
                    continue;
                }
                if d1.is_zero() || d2.is_zero() || (&d2 % &d1).is_zero() {
                    continue;
                }
                // fold the pair so the gcd appears first
                a.col_axpy(i, i + 1, &BigInt::one());
                v.col_axpy(i, i + 1, &BigInt::one());
                // now column i of rows i, i+1 is (d1, d2); reduce like 2x2 SNF
                let (g, s, w) = ext_gcd(&d1, &d2);
                let (x, y) = (&d1 / &g, &d2 / &g);
                a.row_combine(i, i + 1, &s, &w, &(-y.clone()), &x);
                u.row_combine(i, i + 1, &s, &w, &(-y), &x);
                // clear the fill-in at (i, i+1)
                let q = &a[(i, i + 1)] / &a[(i, i)];
                a.col_axpy(i + 1, i, &(-q.clone()));
                v.col_axpy(i + 1, i, &(-q));
                // and any fill-in at (i+1, i)
                if !a[(i + 1, i)].is_zero() {
                    let q = &a[(i + 1, i)] / &a[(i, i)];
                    a.row_axpy(i + 1, i, &(-q.clone()));
                    u.row_axpy(i + 1, i, &(-q));
                }
                changed = true;
            }
            if !changed {
                break;
            }
        }
        for i in 0..k {
            if a[(i, i)].is_negative() {
                a.scale_row(i, &BigInt::from(-1));
                u.scale_row(i, &BigInt::from(-1));
            }
        }
        SmithNormalForm { d: a, u, v }
    }

    /// Basis of the right integer kernel: columns `x` with `self * x = 0`.
    /// The basis spans the full (saturated) kernel sublattice of `Z^cols`.
    pub fn right_kernel(&self) -> Vec<Vec<BigInt>> {
        let snf = self.smith_normal_form();
        let k = self.rows.min(self.cols);
        let rank = (0..k).filter(|&i| !snf.d[(i, i)].is_zero()).count();
        let mut basis = Vec::new();
        for j in rank..self.cols {
            let col: Vec<BigInt> = (0..self.cols).map(|i| snf.v[(i, j)].clone()).collect();
            basis.push(col);
        }
        basis
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for k in 0..self.cols {
            let c = self.cols;
            self.data.swap(i * c + k, j * c + k);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for k in 0..self.rows {
            let c = self.cols;
            self.data.swap(k * c + i, k * c + j);
        }
    }

    /// row_i += q * row_j
    fn row_axpy(&mut self, i: usize, j: usize, q: &BigInt) {
        for k in 0..self.cols {
            let t = q * &self[(j, k)];
            self[(i, k)] += t;
        }
    }

    /// col_i += q * col_j
    fn col_axpy(&mut self, i: usize, j: usize, q: &BigInt) {
        for k in 0..self.rows {
            let t = q * &self[(k, j)];
            self[(k, i)] += t;
        }
    }

    fn scale_row(&mut self, i: usize, q: &BigInt) {
        for k in 0..self.cols {
            self[(i, k)] = q * &self[(i, k)];
        }
    }

    /// Replace rows (i, j) with (a*row_i + b*row_j, c*row_i + d*row_j);
    /// the 2x2 matrix [[a, b], [c, d]] must be unimodular.
    fn row_combine(&mut self, i: usize, j: usize, a: &BigInt, b: &BigInt, c: &BigInt, d: &BigInt) {
        for k in 0..self.cols {
            let x = self[(i, k)].clone();
            let y = self[(j, k)].clone();
            self[(i, k)] = a * &x + b * &y;
            self[(j, k)] = c * &x + d * &y;
        }
    }

    /// Replace columns (i, j) with (a*col_i + b*col_j, c*col_i + d*col_j).
    fn col_combine(&mut self, i: usize, j: usize, a: &BigInt, b: &BigInt, c: &BigInt, d: &BigInt) {
        for k in 0..self.rows {
            let x = self[(k, i)].clone();
            let y = self[(k, j)].clone();
            self[(k, i)] = a * &x + b * &y;
            self[(k, j)] = c * &x + d * &y;
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

/// Extended gcd: returns `(g, s, t)` with `g = gcd(a, b) >= 0` and
/// `s*a + t*b = g`.
pub fn ext_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let e = num_integer::Integer::extended_gcd(a, b);
    (e.gcd, e.x, e.y)
}

/// Smith normal form decomposition `d = u * a * v`.
#[derive(Clone, Debug)]
pub struct SmithNormalForm {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl SmithNormalForm {
    /// Nontrivial invariant factors (diagonal entries > 1), in divisibility order.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        let k = self.d.rows.min(self.d.cols);
        (0..k)
            .map(|i| self.d[(i, i)].clone())
            .filter(|x| !x.is_zero() && *x != BigInt::one())
            .collect()
    }

    pub fn rank(&self) -> usize {
        let k = self.d.rows.min(self.d.cols);
        (0..k).filter(|&i| !self.d[(i, i)].is_zero()).count()
    }
}

/// A nondegenerate integral lattice given by its Gram matrix.
#[derive(Clone, Debug)]
pub struct IntegralLattice {
    pub gram: IntMatrix,
}

/// Discriminant group data for an integral lattice: cyclic orders of the
/// nontrivial factors and the discriminant bilinear form evaluated on the
/// corresponding generators, as rationals modulo 1.
#[derive(Clone, Debug, Serialize)]
pub struct DiscriminantGroup {
    /// Orders of the nontrivial cyclic factors, in divisibility order.
    pub orders: Vec<u64>,
    /// `form[i][j]` = discriminant bilinear form `b(beta_i, beta_j)` reduced
    /// into `[0, 1)`, as `(numerator, denominator)`.
    pub form: Vec<Vec<(i64, u64)>>,
    /// Quadratic form values `q(beta_i) = b(beta_i, beta_i)` reduced modulo 2,
    /// as `(numerator, denominator)` in `[0, 2)`.
    pub quad: Vec<(i64, u64)>,
}

impl IntegralLattice {
    pub fn new(gram: IntMatrix) -> Result<Self> {
        if !gram.is_symmetric() {
            return Err(GeomError::InvalidInput("lattice Gram matrix must be symmetric".into()));
        }
        Ok(IntegralLattice { gram })
    }

    pub fn rank(&self) -> usize {
        self.gram.rows
    }

    pub fn det(&self) -> BigInt {
        self.gram.det()
    }

    pub fn signature(&self) -> Result<(usize, usize, usize)> {
        self.gram.signature()
    }

    pub fn is_even(&self) -> bool {
        (0..self.gram.rows).all(|i| (&self.gram[(i, i)] % BigInt::from(2)).is_zero())
    }

    /// Nontrivial invariant factors of the Gram matrix (the cyclic orders of
    /// the discriminant group).
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        self.gram.smith_normal_form().invariant_factors()
    }

    /// Discriminant group with bilinear and quadratic form values on its
    /// canonical generators. Requires a nondegenerate Gram matrix.
    pub fn discriminant_group(&self) -> Result<DiscriminantGroup> {
        let n = self.gram.rows;
        if self.gram.det().is_zero() {
            return Err(GeomError::Degenerate("degenerate Gram matrix".into()));
        }
        let snf = self.gram.smith_normal_form();
        // D = U G V  =>  generators of L*/L are beta_i = G^{-1} U^{-1} e_i = V D^{-1} (U G V) G^{-1} U^{-1} e_i
        // More directly: beta_i = V * (1/d_i) e_i in the coordinates where
        // D = U G V, i.e. beta_i = V[:, i] / d_i expressed in the dual basis;
        // in original lattice coordinates beta_i = V[:, i] / d_i viewed via G.
        // Bilinear form values: b(beta_i, beta_j) = (V[:,i]/d_i)^T G (V[:,j]/d_j) mod Z.
        let mut idxs = Vec::new();
        for i in 0..n {
            let d = snf.d[(i, i)].clone();
            if d > BigInt::one() {
                idxs.push(i);
            }
        }
        let orders: Vec<u64> = idxs
            .iter()
            .map(|&i| {
                use num_traits::ToPrimitive;
                snf.d[(i, i)].to_u64().expect("invariant factor fits in u64")
            })
            .collect();
        let mut form = vec![vec![(0i64, 1u64); idxs.len()]; idxs.len()];
        let mut quad = vec![(0i64, 1u64); idxs.len()];
        for (a, &i) in idxs.iter().enumerate() {
            for (b, &j) in idxs.iter().enumerate() {
                let mut val = BigRational::zero();
                for p in 0..n {
                    for qq in 0..n {
                        let t = BigRational::from(&snf.v[(p, i)] * &self.gram[(p, qq)] * &snf.v[(qq, j)]);
                        val += t;
                    }
                }
                let di = BigRational::from(snf.d[(i, i)].clone());
                let dj = BigRational::from(snf.d[(j, j)].clone());
                let val = val / (di * dj);
                if a == b {
                    quad[a] = reduce_mod(&val, 2);
                }
                form[a][b] = reduce_mod(&val, 1);
            }
        }
        Ok(DiscriminantGroup { orders, form, quad })
    }
}

/// Reduce a rational into `[0, modulus)` and return `(numerator, denominator)`.
fn reduce_mod(v: &BigRational, modulus: i64) -> (i64, u64) {
    use num_traits::ToPrimitive;
    let m = BigRational::from(BigInt::from(modulus));
    let mut x = v.clone();
    let f = (x.clone() / m.clone()).floor();
    x -= f * m;
    (
        x.numer().to_i64().expect("discriminant form numerator fits in i64"),
        x.denom().to_u64().expect("discriminant form denominator fits in u64"),
    )
}

/// Result of testing whether a lattice (given by discriminant data or a Gram
/// matrix) is twice another integral lattice.
#[derive(Clone, Debug, Serialize)]
pub struct TwiceLatticeReport {
    /// True when all invariant factors are even and the rescaled bilinear
    /// form is integral, so the lattice is `L(2)` for an integral lattice `L`.
    pub is_twice_integral: bool,
    /// True when additionally `L` is an even lattice.
    pub halved_is_even: bool,
    /// Cyclic orders of the discriminant group of `L` (nontrivial ones),
    /// when `is_twice_integral` holds.
    pub halved_disc_orders: Vec<u64>,
}

/// Test whether a lattice with the given discriminant data is of the form
/// `L(2)`. `orders` are the cyclic orders of the discriminant group and
/// `form`/`quad` the bilinear (mod 1) and quadratic (mod 2) form values on
/// its generators, as produced by [`IntegralLattice::discriminant_group`].
pub fn twice_lattice_from_disc(dg: &DiscriminantGroup) -> TwiceLatticeReport {
    let all_even = dg.orders.iter().all(|&d| d % 2 == 0);
    if !all_even {
        return TwiceLatticeReport {
            is_twice_integral: false,
            halved_is_even: false,
            halved_disc_orders: vec![],
        };
    }
    let k = dg.orders.len();
    // With d_i = 2 e_i, the rescaled pairing is integral iff
    // e_i e_j b(beta_i, beta_j) lies in (1/2) Z for all i, j, and the halved
    // lattice is even iff e_i^2 q(beta_i) is an integer for all i.
    let mut integral = true;
    let mut even = true;
    for i in 0..k {
        let ei = BigInt::from(dg.orders[i] / 2);
        for j in 0..k {
            let ej = BigInt::from(dg.orders[j] / 2);
            let (num, den) = dg.form[i][j];
            let v = BigRational::new(BigInt::from(num) * &ei * &ej, BigInt::from(den as i64));
            let twice = v * BigRational::from(BigInt::from(2));
            if !twice.is_integer() {
                integral = false;
            }
        }
        let (num, den) = dg.quad[i];
        let v = BigRational::new(BigInt::from(num) * &ei * &ei, BigInt::from(den as i64));
        if !v.is_integer() {
            even = false;
        }
    }
    let halved: Vec<u64> =
        dg.orders.iter().map(|&d| d / 2).filter(|&d| d > 1).collect();
    TwiceLatticeReport {
        is_twice_integral: integral,
        halved_is_even: integral && even,
        halved_disc_orders: if integral { halved } else { vec![] },
    }
}

/// Test whether a concrete Gram matrix is twice an integral lattice, i.e.
/// every entry is even, and report on the halved lattice.
pub fn twice_lattice_from_gram(gram: &IntMatrix) -> Result<TwiceLatticeReport> {
    let two = BigInt::from(2);
    let all_even = (0..gram.rows)
        .all(|i| (0..gram.cols).all(|j| (&gram[(i, j)] % &two).is_zero()));
    if !all_even {
        return Ok(TwiceLatticeReport {
            is_twice_integral: false,
            halved_is_even: false,
            halved_disc_orders: vec![],
        });
    }
    let mut half = IntMatrix::zeros(gram.rows, gram.cols);
    for i in 0..gram.rows {
        for j in 0..gram.cols {
            half[(i, j)] = &gram[(i, j)] / &two;
        }
    }
    let l = IntegralLattice::new(half)?;
    let even = l.is_even();
    use num_traits::ToPrimitive;
    let orders = l
        .invariant_factors()
        .iter()
        .map(|d| d.to_u64().expect("invariant factor fits in u64"))
        .collect();
    Ok(TwiceLatticeReport {
        is_twice_integral: true,
        halved_is_even: even,
        halved_disc_orders: orders,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_snf(m: &IntMatrix) {
        let snf = m.smith_normal_form();
        assert_eq!(snf.u.mul(m).mul(&snf.v), snf.d, "U*A*V == D");
        let ru = snf.u.det();
        let rv = snf.v.det();
        assert!(ru == BigInt::one() || ru == BigInt::from(-1), "U unimodular");
        assert!(rv == BigInt::one() || rv == BigInt::from(-1), "V unimodular");
        // diagonal, with divisibility chain
        let k = snf.d.rows.min(snf.d.cols);
        for i in 0..snf.d.rows {
            for j in 0..snf.d.cols {
                if i != j {
                    assert!(snf.d[(i, j)].is_zero(), "off-diagonal zero");
                }
            }
        }
        for i in 0..k.saturating_sub(1) {
            let (a, b) = (&snf.d[(i, i)], &snf.d[(i + 1, i + 1)]);
            if !a.is_zero() {
                if !b.is_zero() {
                    assert!((b % a).is_zero(), "divisibility chain");
                }
            } else {
                assert!(b.is_zero(), "zeros trail");
            }
        }
    }

    #[test]
    fn snf_examples() {
        check_snf(&IntMatrix::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, 4, 16]]));
        check_snf(&IntMatrix::from_rows(&[vec![1, 2], vec![3, 4], vec![5, 6]]));
        check_snf(&IntMatrix::from_rows(&[vec![0, 0], vec![0, 0]]));
        check_snf(&IntMatrix::from_rows(&[vec![6, 10, 15]]));
        let m = IntMatrix::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        check_snf(&m);
        let snf = m.smith_normal_form();
        let diag: Vec<i64> = (0..3)
            .map(|i| {
                use num_traits::ToPrimitive;
                snf.d[(i, i)].to_i64().unwrap()
            })
            .collect();
        assert_eq!(diag, vec![2, 6, 12]);
    }

    #[test]
    fn kernel_example() {
        let m = IntMatrix::from_rows(&[vec![1, 1, 1], vec![1, 1, 1]]);
        let ker = m.right_kernel();
        assert_eq!(ker.len(), 2);
        for v in &ker {
            let s: BigInt = v.iter().sum();
            assert!(s.is_zero());
        }
    }

    #[test]
    fn determinant_and_signature() {
        let hyp = IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]]);
        assert_eq!(hyp.det(), BigInt::from(-1));
        assert_eq!(hyp.signature().unwrap(), (1, 1, 0));
        let a2 = IntMatrix::from_rows(&[vec![2, -1], vec![-1, 2]]);
        assert_eq!(a2.det(), BigInt::from(3));
        assert_eq!(a2.signature().unwrap(), (2, 0, 0));
        let neg = IntMatrix::from_rows(&[vec![-2, 1], vec![1, -2]]);
        assert_eq!(neg.signature().unwrap(), (0, 2, 0));
    }

    #[test]
    fn discriminant_groups() {
        let a2 = IntegralLattice::new(IntMatrix::from_rows(&[vec![2, -1], vec![-1, 2]])).unwrap();
        let dg = a2.discriminant_group().unwrap();
        assert_eq!(dg.orders, vec![3]);
        let d = IntegralLattice::new(IntMatrix::diagonal(&[2, 4])).unwrap();
        assert_eq!(
            d.invariant_factors(),
            vec![BigInt::from(2), BigInt::from(4)]
        );
        let u = IntegralLattice::new(IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]])).unwrap();
        assert!(u.invariant_factors().is_empty());
    }

    #[test]
    fn twice_lattice_gram_cases() {
        let r = twice_lattice_from_gram(&IntMatrix::diagonal(&[8, 8])).unwrap();
        assert!(r.is_twice_integral);
        assert!(r.halved_is_even);
        assert_eq!(r.halved_disc_orders, vec![4, 4]);
        // diag(2, 6) halves to the odd lattice diag(1, 3)
        let r = twice_lattice_from_gram(&IntMatrix::diagonal(&[2, 6])).unwrap();
        assert!(r.is_twice_integral);
        assert!(!r.halved_is_even);
        // odd entries block the rescaling entirely
        let r = twice_lattice_from_gram(&IntMatrix::from_rows(&[vec![2, -1], vec![-1, 2]]))
            .unwrap();
        assert!(!r.is_twice_integral);
    }

    #[test]
    fn twice_lattice_disc_cases() {
        let d88 = IntegralLattice::new(IntMatrix::diagonal(&[8, 8])).unwrap();
        let r = twice_lattice_from_disc(&d88.discriminant_group().unwrap());
        assert!(r.is_twice_integral);
        assert!(r.halved_is_even);
        assert_eq!(r.halved_disc_orders, vec![4, 4]);
        let a2 = IntegralLattice::new(IntMatrix::from_rows(&[vec![2, -1], vec![-1, 2]])).unwrap();
        let r = twice_lattice_from_disc(&a2.discriminant_group().unwrap());
        assert!(!r.is_twice_integral);
    }

    #[test]
    fn rational_solve() {
        let m = IntMatrix::from_rows(&[vec![2, 1], vec![1, 3]]);
        let rhs = vec![
            BigRational::from(BigInt::from(5)),
            BigRational::from(BigInt::from(10)),
        ];
        let x = m.solve_rational(&rhs).unwrap();
        assert_eq!(x[0], BigRational::from(BigInt::from(1)));
        assert_eq!(x[1], BigRational::from(BigInt::from(3)));
    }
}
