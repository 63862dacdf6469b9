//! Néron–Severi lattice computations for the quartic member of the pencil:
//! the 48 lines on the Fermat quartic surface, their intersection lattice,
//! monomial group actions on the line classes, invariant and co-invariant
//! sublattices, the rank-19 Néron–Severi lattice of the generic quartic in
//! the pencil, and the Kummer-surface criterion for its transcendental
//! lattice.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::cyclotomic::Cyclo;
use crate::intmat::{
    twice_lattice_from_disc, DiscriminantGroup, IntMatrix, IntegralLattice, TwiceLatticeReport,
};
use crate::poly::field_rank;
use crate::{GeomError, Result};

/// A line on the Fermat quartic surface, stored as two spanning vectors of
/// the corresponding plane in C^4, with entries in Q(ξ_8).
#[derive(Debug, Clone)]
pub struct FermatLine {
    /// 1-based index matching the classical enumeration of the 48 lines.
    pub index: usize,
    /// Two linearly independent points whose span is the line.
    pub span: [Vec<Cyclo>; 2],
}

fn xi8(k: i64) -> Cyclo {
    Cyclo::root_of_unity(8, k)
}

fn c0() -> Cyclo {
    Cyclo::zero()
}
fn c1() -> Cyclo {
    Cyclo::one()
}

/// The 48 lines on the Fermat quartic x_1^4 + x_2^4 + x_3^4 + x_4^4 = 0,
/// in three families of 16. Each line is verified to lie on the surface.
pub fn lines_on_fermat() -> Result<Vec<FermatLine>> {
    let mut lines = Vec::with_capacity(48);
    for a in 0..4i64 {
        for b in 1..=4i64 {
            // (ξ^{2a+1} s : s : t : ξ^{2b+1} t)
            lines.push(FermatLine {
                index: (4 * a + b) as usize,
                span: [
                    vec![xi8(2 * a + 1), c1(), c0(), c0()],
                    vec![c0(), c0(), c1(), xi8(2 * b + 1)],
                ],
            });
        }
    }
    for a in 0..4i64 {
        for b in 1..=4i64 {
            // (s : ξ^{2a+1} t : t : ξ^{2b+1} s)
            lines.push(FermatLine {
                index: (4 * a + b + 16) as usize,
                span: [
                    vec![c1(), c0(), c0(), xi8(2 * b + 1)],
                    vec![c0(), xi8(2 * a + 1), c1(), c0()],
                ],
            });
        }
    }
    for a in 0..4i64 {
        for b in 1..=4i64 {
            // (s : t : ξ^{2a+1} s : ξ^{2b+1} t)
            lines.push(FermatLine {
                index: (4 * a + b + 32) as usize,
                span: [
                    vec![c1(), c0(), xi8(2 * a + 1), c0()],
                    vec![c0(), c1(), c0(), xi8(2 * b + 1)],
                ],
            });
        }
    }
    lines.sort_by_key(|l| l.index);
    for line in &lines {
        if !line_on_fermat(line) {
            return Err(GeomError::Invariant(format!(
                "line {} does not lie on the Fermat quartic",
                line.index
            )));
        }
    }
    Ok(lines)
}

/// Check that the restriction of x_1^4 + ... + x_4^4 to the line vanishes
/// identically, by expanding each coordinate (a_i s + b_i t)^4.
fn line_on_fermat(line: &FermatLine) -> bool {
    // Coefficient of s^k t^{4-k} in the restriction, for k = 0..4.
    let binom = [1i64, 4, 6, 4, 1];
    for k in 0..=4usize {
        let mut coeff = Cyclo::zero();
        for i in 0..4 {
            let a = &line.span[0][i];
            let b = &line.span[1][i];
            let term = a.pow(k as u64).mul(&b.pow((4 - k) as u64));
            coeff = coeff.add(&term.scale(&BigRational::from(BigInt::from(binom[k]))));
        }
        if !coeff.is_zero() {
            return false;
        }
    }
    true
}

/// True when two distinct lines meet: the two planes in C^4 share a
/// direction exactly when their four spanning vectors are dependent.
fn lines_meet(a: &FermatLine, b: &FermatLine) -> bool {
    let rows = vec![
        a.span[0].clone(),
        a.span[1].clone(),
        b.span[0].clone(),
        b.span[1].clone(),
    ];
    field_rank(rows) < 4
}

/// True when the given plane equals the span of the line.
fn same_line(span: &[Vec<Cyclo>; 2], line: &FermatLine) -> bool {
    let rows = vec![
        span[0].clone(),
        span[1].clone(),
        line.span[0].clone(),
        line.span[1].clone(),
    ];
    field_rank(rows) == 2
}

/// Full 48x48 intersection matrix of the lines: -2 on the diagonal
/// (rational curves on a K3 surface), 0/1 off the diagonal by exact
/// incidence.
pub fn line_intersection_matrix(lines: &[FermatLine]) -> IntMatrix {
    let n = lines.len();
    let mut gram = IntMatrix::zeros(n, n);
    for i in 0..n {
        gram[(i, i)] = BigInt::from(-2);
        for j in i + 1..n {
            let v = if lines_meet(&lines[i], &lines[j]) {
                BigInt::from(1)
            } else {
                BigInt::zero()
            };
            gram[(i, j)] = v.clone();
            gram[(j, i)] = v;
        }
    }
    gram
}

/// 1-based indices of the 20 lines forming a basis of the Néron–Severi
/// lattice of the Fermat quartic.
pub const NS_BASIS: [usize; 20] = [
    1, 2, 3, 4, 5, 6, 7, 9, 10, 11, 17, 18, 19, 21, 22, 23, 33, 34, 35, 37,
];

/// The Néron–Severi lattice of the Fermat quartic together with the
/// expression of all 48 line classes in the 20-line basis.
#[derive(Debug, Clone)]
pub struct NsFermat {
    pub lines: Vec<FermatLine>,
    /// Full 48x48 intersection matrix.
    pub full_gram: IntMatrix,
    /// Gram matrix of the 20-line basis; det -64, signature (1,19).
    pub lattice: IntegralLattice,
    /// `classes[j]` = integer coordinates of line j+1 in the basis.
    pub classes: Vec<Vec<BigInt>>,
}

fn restrict_gram(full: &IntMatrix, idx: &[usize]) -> IntMatrix {
    let n = idx.len();
    let mut g = IntMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            g[(i, j)] = full[(idx[i] - 1, idx[j] - 1)].clone();
        }
    }
    g
}

/// Express a class with the given intersection numbers against the basis
/// lines as an integral combination of the basis.
fn express_by_pairing(basis_gram: &IntMatrix, pairing: &[BigInt]) -> Result<Vec<BigInt>> {
    let rhs: Vec<BigRational> = pairing
        .iter()
        .map(|v| BigRational::from(v.clone()))
        .collect();
    let sol = basis_gram
        .solve_rational(&rhs)
        .ok_or_else(|| GeomError::Invariant("degenerate basis Gram matrix".into()))?;
    let mut out = Vec::with_capacity(sol.len());
    for v in sol {
        if !v.is_integer() {
            return Err(GeomError::Invariant(
                "class is not integral in the chosen basis".into(),
            ));
        }
        out.push(v.to_integer());
    }
    Ok(out)
}

/// Build NS(F) from the canonical 20-line basis, verifying det = -64,
/// signature (1,19), and that every one of the 48 line classes is an
/// integral combination of the basis.
pub fn ns_fermat() -> Result<NsFermat> {
    let lines = lines_on_fermat()?;
    let full = line_intersection_matrix(&lines);
    let gram = restrict_gram(&full, &NS_BASIS);
    let det = gram.det();
    if det != BigInt::from(-64) {
        return Err(GeomError::Invariant(format!(
            "basis Gram determinant is {det}, expected -64"
        )));
    }
    let lattice = IntegralLattice::new(gram)?;
    let (pos, neg, zero) = lattice.signature()?;
    if (pos, neg, zero) != (1, 19, 0) {
        return Err(GeomError::Invariant(format!(
            "basis signature ({pos},{neg},{zero}), expected (1,19,0)"
        )));
    }
    let mut classes = Vec::with_capacity(48);
    for j in 0..48 {
        let pairing: Vec<BigInt> = NS_BASIS.iter().map(|&i| full[(i - 1, j)].clone()).collect();
        classes.push(express_by_pairing(&lattice.gram, &pairing)?);
    }
    Ok(NsFermat {
        lines,
        full_gram: full,
        lattice,
        classes,
    })
}

/// A projective transformation permuting coordinates and scaling them by
/// powers of ξ_8: x_i ↦ ξ_8^{exp8[i]} x_{src[i]}.
#[derive(Debug, Clone)]
pub struct MonomialMap {
    pub src: Vec<usize>,
    pub exp8: Vec<u32>,
}

impl MonomialMap {
    pub fn new(src: Vec<usize>, exp8: Vec<u32>) -> Result<Self> {
        let n = src.len();
        if exp8.len() != n {
            return Err(GeomError::InvalidInput("length mismatch".into()));
        }
        let mut seen = vec![false; n];
        for &s in &src {
            if s >= n || seen[s] {
                return Err(GeomError::InvalidInput("invalid coordinate permutation".into()));
            }
            seen[s] = true;
        }
        Ok(MonomialMap { src, exp8 })
    }

    /// Diagonal map scaling x_i by the fourth root of unity ξ_4^{a_i}.
    pub fn diagonal4(a: &[u32]) -> Result<Self> {
        MonomialMap::new(
            (0..a.len()).collect(),
            a.iter().map(|&t| (2 * t) % 8).collect(),
        )
    }

    pub fn apply(&self, v: &[Cyclo]) -> Vec<Cyclo> {
        (0..v.len())
            .map(|i| xi8(self.exp8[i] as i64).mul(&v[self.src[i]]))
            .collect()
    }

    /// Image of a line, as a plane spanned by the images of its span.
    pub fn apply_line(&self, line: &FermatLine) -> [Vec<Cyclo>; 2] {
        [self.apply(&line.span[0]), self.apply(&line.span[1])]
    }
}

/// Generators of the symplectic (Z/4Z)^2 twist group acting on the quartic
/// pencil.
pub fn h3_generators() -> Result<Vec<MonomialMap>> {
    Ok(vec![
        MonomialMap::diagonal4(&[1, 3, 0, 0])?,
        MonomialMap::diagonal4(&[1, 0, 3, 0])?,
    ])
}

/// Generators of a symplectic alternating-group action: a twisted 3-cycle
/// and a plain double transposition. These are the even elements of the
/// symplectic symmetric-group lift below.
pub fn a4_generators() -> Result<Vec<MonomialMap>> {
    Ok(vec![
        // 3-cycle composed with the twist diag(1, 1, ξ_4, ξ_4^3)
        MonomialMap::new(vec![2, 0, 1, 3], vec![0, 0, 2, 6])?,
        // (1 2)(3 4)
        MonomialMap::new(vec![1, 0, 3, 2], vec![0; 4])?,
    ])
}

/// Generators of a symplectic lift of the full symmetric group on the four
/// coordinates. A plain transposition negates the holomorphic 2-form, so
/// odd permutations must be composed with diagonal fourth-root twists of
/// exponent sum 2 mod 4; the twists are chosen so that the generated
/// subgroup of PGL_4 has order exactly 24.
pub fn symplectic_s4_generators() -> Result<Vec<MonomialMap>> {
    let mut gens = a4_generators()?;
    // transposition composed with the twist diag(1, ξ_4^2, ξ_4, ξ_4^3)
    gens.push(MonomialMap::new(vec![1, 0, 2, 3], vec![0, 4, 2, 6])?);
    Ok(gens)
}

/// The permutation of the 48 lines induced by a monomial map, as 0-based
/// image indices.
pub fn line_permutation(ns: &NsFermat, map: &MonomialMap) -> Result<Vec<usize>> {
    let mut perm = Vec::with_capacity(48);
    for line in &ns.lines {
        let image = map.apply_line(line);
        let target = ns
            .lines
            .iter()
            .position(|cand| same_line(&image, cand))
            .ok_or_else(|| {
                GeomError::Invariant(format!(
                    "image of line {} is not one of the 48 lines",
                    line.index
                ))
            })?;
        perm.push(target);
    }
    Ok(perm)
}

/// The induced action of a monomial map on the 20-line basis of NS(F),
/// verified to preserve the intersection form.
pub fn action_on_ns(ns: &NsFermat, map: &MonomialMap) -> Result<IntMatrix> {
    let perm = line_permutation(ns, map)?;
    let n = NS_BASIS.len();
    let mut p = IntMatrix::zeros(n, n);
    for (col, &basis_idx) in NS_BASIS.iter().enumerate() {
        let image = perm[basis_idx - 1];
        for row in 0..n {
            p[(row, col)] = ns.classes[image][row].clone();
        }
    }
    let check = p.transpose().mul(&ns.lattice.gram).mul(&p);
    for i in 0..n {
        for j in 0..n {
            if check[(i, j)] != ns.lattice.gram[(i, j)] {
                return Err(GeomError::Invariant(
                    "induced action does not preserve the intersection form".into(),
                ));
            }
        }
    }
    Ok(p)
}

/// Invariant and co-invariant sublattices of NS(F) for a monomial group
/// action.
#[derive(Debug, Clone)]
pub struct OmegaReport {
    pub invariant_rank: usize,
    /// Basis of the co-invariant lattice Ω_G in NS(F) coordinates.
    pub omega_basis: Vec<Vec<BigInt>>,
    pub omega: IntegralLattice,
}

fn stack_rows(blocks: &[IntMatrix]) -> IntMatrix {
    let cols = blocks[0].cols;
    let rows: usize = blocks.iter().map(|b| b.rows).sum();
    let mut m = IntMatrix::zeros(rows, cols);
    let mut r = 0;
    for b in blocks {
        for i in 0..b.rows {
            for j in 0..cols {
                m[(r, j)] = b[(i, j)].clone();
            }
            r += 1;
        }
    }
    m
}

fn gram_of_span(gram: &IntMatrix, basis: &[Vec<BigInt>]) -> IntMatrix {
    let k = basis.len();
    let n = gram.rows;
    let mut out = IntMatrix::zeros(k, k);
    for i in 0..k {
        for j in 0..k {
            let mut acc = BigInt::zero();
            for r in 0..n {
                for c in 0..n {
                    acc += &basis[i][r] * &gram[(r, c)] * &basis[j][c];
                }
            }
            out[(i, j)] = acc;
        }
    }
    out
}

/// Compute Ω_G = (NS(F)^G)^⊥ for the group generated by the given monomial
/// maps: the saturated orthogonal complement of the invariant sublattice.
pub fn coinvariant_lattice(ns: &NsFermat, gens: &[MonomialMap]) -> Result<OmegaReport> {
    let n = NS_BASIS.len();
    let mut diffs = Vec::new();
    for map in gens {
        let p = action_on_ns(ns, map)?;
        let mut d = IntMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                d[(i, j)] = &p[(i, j)] - if i == j { BigInt::from(1) } else { BigInt::zero() };
            }
        }
        diffs.push(d);
    }
    let invariant = stack_rows(&diffs).right_kernel();
    // Orthogonal complement: x with <x, y> = 0 for every invariant y, i.e.
    // the kernel of the matrix whose rows are y^T * Gram.
    let mut pairing = IntMatrix::zeros(invariant.len(), n);
    for (r, y) in invariant.iter().enumerate() {
        for j in 0..n {
            let mut acc = BigInt::zero();
            for i in 0..n {
                acc += &y[i] * &ns.lattice.gram[(i, j)];
            }
            pairing[(r, j)] = acc;
        }
    }
    let omega_basis = pairing.right_kernel();
    let omega = IntegralLattice::new(gram_of_span(&ns.lattice.gram, &omega_basis))?;
    Ok(OmegaReport {
        invariant_rank: invariant.len(),
        omega_basis,
        omega,
    })
}

/// The rank-19 Néron–Severi lattice of the generic quartic in the pencil,
/// built as the overlattice of Zh ⊕ Ω generated by the classes
/// n_1 = h, n_i = h + b_{i-1}, n_19 = (h + b_17 + b_18)/2.
#[derive(Debug, Clone)]
pub struct NsXLambda {
    pub lattice: IntegralLattice,
    /// Basis vectors n_i in NS(F) coordinates.
    pub basis: Vec<Vec<BigInt>>,
    /// det(Zh ⊕ Ω) / det(NS), expected 4 for an index-two overlattice.
    pub overlattice_index_sq: BigInt,
}

/// The 18 twist-co-invariant classes b_i, as (subtracted line, added line)
/// pairs of 1-based line indices: b_i = l_to - l_from.
const B_CLASSES: [(usize, usize); 18] = [
    (2, 37),
    (1, 35),
    (2, 34),
    (1, 33),
    (2, 23),
    (1, 22),
    (2, 21),
    (1, 19),
    (2, 18),
    (1, 17),
    (1, 11),
    (2, 10),
    (1, 9),
    (2, 7),
    (1, 6),
    (2, 5),
    (2, 4),
    (1, 3),
];

fn class_coords(ns: &NsFermat, combo: &[(i64, usize)]) -> Vec<BigInt> {
    let n = NS_BASIS.len();
    let mut v = vec![BigInt::zero(); n];
    for &(c, line_idx) in combo {
        for i in 0..n {
            v[i] += BigInt::from(c) * &ns.classes[line_idx - 1][i];
        }
    }
    v
}

fn b_class(ns: &NsFermat, i: usize) -> Vec<BigInt> {
    let (from, to) = B_CLASSES[i];
    class_coords(ns, &[(-1, from), (1, to)])
}

fn hyperplane_class(ns: &NsFermat) -> Vec<BigInt> {
    class_coords(ns, &[(1, 1), (1, 2), (1, 3), (1, 4)])
}

pub fn ns_xlambda(ns: &NsFermat) -> Result<NsXLambda> {
    let n = NS_BASIS.len();
    let h = hyperplane_class(ns);
    let b: Vec<Vec<BigInt>> = (0..18).map(|i| b_class(ns, i)).collect();
    let mut basis = Vec::with_capacity(19);
    basis.push(h.clone());
    for bi in b.iter().take(17) {
        let v: Vec<BigInt> = (0..n).map(|i| &h[i] + &bi[i]).collect();
        basis.push(v);
    }
    let mut half = Vec::with_capacity(n);
    for i in 0..n {
        let s = &h[i] + &b[16][i] + &b[17][i];
        if (&s % BigInt::from(2)).is_zero() {
            half.push(s / BigInt::from(2));
        } else {
            return Err(GeomError::Invariant(
                "(h + b_17 + b_18)/2 is not an integral class".into(),
            ));
        }
    }
    basis.push(half);
    let lattice = IntegralLattice::new(gram_of_span(&ns.lattice.gram, &basis))?;

    // Index-two overlattice check against Zh ⊕ <b_1..b_18>.
    let mut direct = vec![h];
    direct.extend(b);
    let direct_det = gram_of_span(&ns.lattice.gram, &direct).det();
    let det = lattice.det();
    if det.is_zero() {
        return Err(GeomError::Invariant("degenerate Néron–Severi Gram".into()));
    }
    let (q, r) = num_integer::Integer::div_rem(&direct_det, &det);
    if !r.is_zero() {
        return Err(GeomError::Invariant(
            "overlattice determinant ratio is not integral".into(),
        ));
    }
    Ok(NsXLambda {
        lattice,
        basis,
        overlattice_index_sq: q,
    })
}

/// Nikulin's sufficient condition for a primitive embedding of a rank-r
/// even lattice with discriminant-group length l into the K3 lattice:
/// l ≤ 22 - r - 2.
pub fn nikulin_embedding_check(rank: usize, length: usize) -> bool {
    length + rank + 2 <= 22
}

/// The Kummer-surface criterion for the generic quartic of the pencil.
#[derive(Debug, Clone)]
pub struct KummerReport {
    /// Discriminant group of the transcendental lattice (equal to that of
    /// the Néron–Severi lattice, with negated form).
    pub transcendental_disc: DiscriminantGroup,
    pub twice: TwiceLatticeReport,
    /// Halved lattice must embed in U^3: rank 3 and length ≤ 22 - 19 - 2
    /// is not the relevant bound here; an even signature-(2,1) lattice
    /// always embeds, so the verdict is the twice-integrality test.
    pub is_kummer: bool,
}

/// Decide whether the generic quartic is a Kummer surface: its rank-3
/// transcendental lattice T must be of the form L(2) with L even, which is
/// read off from the discriminant data of the Néron–Severi lattice (T has
/// the same discriminant group and the negated form).
pub fn kummer_test(nsx: &NsXLambda) -> Result<KummerReport> {
    let dg = nsx.lattice.discriminant_group()?;
    // rank T = 22 - rank NS; condition (i) requires l(T) = rk T.
    let rank_t = 22 - nsx.lattice.rank();
    if dg.orders.len() != rank_t {
        return Err(GeomError::Invariant(format!(
            "discriminant length {} differs from transcendental rank {rank_t}",
            dg.orders.len()
        )));
    }
    // Negate the discriminant form to pass from NS to T.
    let k = dg.orders.len();
    let mut form = dg.form.clone();
    let mut quad = dg.quad.clone();
    for i in 0..k {
        for j in 0..k {
            let (num, den) = form[i][j];
            form[i][j] = (((-num).rem_euclid(den as i64)), den);
        }
        let (num, den) = quad[i];
        quad[i] = ((-num).rem_euclid(2 * den as i64), den);
    }
    let tdisc = DiscriminantGroup {
        orders: dg.orders.clone(),
        form,
        quad,
    };
    let twice = twice_lattice_from_disc(&tdisc);
    let is_kummer = twice.is_twice_integral && twice.halved_is_even;
    Ok(KummerReport {
        transcendental_disc: tdisc,
        twice,
        is_kummer,
    })
}

/// Convert a Gram matrix with small entries into plain integer rows (for
/// reporting).
pub fn gram_rows_i64(gram: &IntMatrix) -> Vec<Vec<i64>> {
    (0..gram.rows)
        .map(|i| {
            (0..gram.cols)
                .map(|j| gram[(i, j)].to_i64().expect("Gram entry out of i64 range"))
                .collect()
        })
        .collect()
}
