//! Orbifold (Chen-Ruan) cohomology of quotients of the generic quintic
//! member of the Dwork pencil by period-preserving automorphism groups:
//! ages at fixed points, invariant cohomology, twisted sectors indexed by
//! conjugacy classes, and exact quotient genera of fixed curves via
//! Riemann-Hurwitz with computed fixed-point counts.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::cyclotomic::Cyclo;
use crate::fixedlocus::{
    fixed_locus, restrict_pencil, Eigenspace, FixedComponent,
};
use crate::group::{
    centralizer, conjugacy_classes_with_gens, generate_subgroup, GroupElement,
};
use crate::lambda::consensus;
use crate::poly::{field_kernel, field_matmul, field_rank, BinaryForm, MultiPoly};
use crate::{GeomError, Result};

/// Per-conjugacy-class contribution to the orbifold cohomology.
#[derive(Clone, Debug, Serialize)]
pub struct SectorReport {
    /// Canonical print of the class representative.
    pub representative: String,
    pub class_size: usize,
    pub centralizer_order: usize,
    /// Euler characteristic of the fixed locus of the representative.
    pub fixed_euler: i64,
    /// Orbits of isolated fixed points under the centralizer, by age.
    pub age1_point_orbits: usize,
    pub age2_point_orbits: usize,
    /// Orbits of fixed curves under the centralizer.
    pub curve_orbits: usize,
    /// Genus of the effective quotient of a representative curve, one entry
    /// per curve orbit.
    pub curve_quotient_genera: Vec<usize>,
}

/// Orbifold Hodge numbers of a threefold quotient.
#[derive(Clone, Debug, Serialize)]
pub struct OrbifoldHodge {
    pub h11: i64,
    pub h21: i64,
    /// Invariant part of `h^{2,1}` (the untwisted sector beyond the Kahler
    /// class).
    pub p12: i64,
    pub group_order: usize,
    pub sectors: Vec<SectorReport>,
}

/// Exact age of `s` at an isolated fixed point lying in the eigenspace with
/// eigenvalue `mu`, from the full eigenvalue multiset of `s` on `C^5`.
///
/// The tangent eigenvalues at the point are the multiset of all eigenvalues
/// minus one copy of `mu` (the point direction) and one copy of `mu^{-4}`
/// (the normal direction singled out by the differential of the quintic
/// equation), each divided by `mu`.
pub fn age_at_point(spaces: &[Eigenspace], mu: &Cyclo) -> Result<u32> {
    let mut values: Vec<Cyclo> = Vec::new();
    for s in spaces {
        for _ in 0..s.dim() {
            values.push(s.eigenvalue.clone());
        }
    }
    let remove = |values: &mut Vec<Cyclo>, v: &Cyclo| -> Result<()> {
        match values.iter().position(|x| x.eq_elem(v)) {
            Some(i) => {
                values.remove(i);
                Ok(())
            }
            None => Err(GeomError::Invariant(
                "expected eigenvalue missing from the multiset".into(),
            )),
        }
    };
    remove(&mut values, mu)?;
    let normal = mu.inv().pow(4);
    remove(&mut values, &normal)?;
    let mu_inv = mu.inv();
    let mut age = BigRational::zero();
    for v in &values {
        let t = v.mul(&mu_inv);
        let (r, a) = t
            .as_root_of_unity()
            .ok_or_else(|| GeomError::Invariant("tangent eigenvalue is not a root of unity".into()))?;
        age += BigRational::new(BigInt::from(a), BigInt::from(r));
    }
    if !age.is_integer() {
        return Err(GeomError::Invariant(format!("non-integer age {}", age)));
    }
    age.to_integer()
        .to_u32()
        .ok_or_else(|| GeomError::Invariant("age out of range".into()))
}

/// Apply the matrix of `h` to a coordinate vector.
fn apply(h: &GroupElement, v: &[Cyclo]) -> Vec<Cyclo> {
    let m = h.matrix();
    let k = v.len();
    (0..k)
        .map(|i| {
            let mut s = Cyclo::zero();
            for j in 0..k {
                if !m[i][j].is_zero() && !v[j].is_zero() {
                    s = s.add(&m[i][j].mul(&v[j]));
                }
            }
            s
        })
        .collect()
}

/// Projective normalization: scale so the first nonzero coordinate is 1.
fn projective_normalize(v: &[Cyclo]) -> Vec<Cyclo> {
    let pivot = v.iter().find(|c| !c.is_zero()).expect("nonzero vector");
    let inv = pivot.inv();
    v.iter().map(|c| c.mul(&inv)).collect()
}

fn projective_eq(a: &[Cyclo], b: &[Cyclo]) -> bool {
    projective_normalize(a)
        .iter()
        .zip(projective_normalize(b).iter())
        .all(|(x, y)| x.eq_elem(y))
}

/// Whether two subspaces given by bases coincide.
fn same_span(a: &[Vec<Cyclo>], b: &[Vec<Cyclo>]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let mut stacked: Vec<Vec<Cyclo>> = a.to_vec();
    stacked.extend(b.iter().cloned());
    field_rank(stacked) == a.len()
}

/// Express `target` in the span of `basis`, if possible.
fn express_in_basis(basis: &[Vec<Cyclo>], target: &[Cyclo]) -> Option<Vec<Cyclo>> {
    let d = basis.len();
    let k = target.len();
    // solve sum_j x_j basis[j] = target by Gaussian elimination on the
    // k x (d+1) augmented system
    let mut aug: Vec<Vec<Cyclo>> = (0..k)
        .map(|i| {
            let mut row: Vec<Cyclo> = (0..d).map(|j| basis[j][i].clone()).collect();
            row.push(target[i].clone());
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..d {
        let p = (r..k).find(|&i| !aug[i][c].is_zero());
        let p = match p {
            Some(p) => p,
            None => continue,
        };
        aug.swap(r, p);
        let inv = aug[r][c].inv();
        for t in 0..=d {
            aug[r][t] = aug[r][t].mul(&inv);
        }
        for i in 0..k {
            if i != r && !aug[i][c].is_zero() {
                let f = aug[i][c].clone();
                for t in 0..=d {
                    let s = f.mul(&aug[r][t]);
                    aug[i][t] = aug[i][t].sub(&s);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    // consistency
    for i in r..k {
        if !aug[i][d].is_zero() {
            return None;
        }
    }
    if pivots.len() < d {
        return None;
    }
    let mut x = vec![Cyclo::zero(); d];
    for (row, &c) in pivots.iter().enumerate() {
        x[c] = aug[row][d].clone();
    }
    Some(x)
}

/// Matrix of the action of `h` restricted to the span of `basis`
/// (columns are the coordinates of `h * b_j`); `None` when `h` does not
/// preserve the span.
fn restricted_matrix(h: &GroupElement, basis: &[Vec<Cyclo>]) -> Option<Vec<Vec<Cyclo>>> {
    let d = basis.len();
    let mut cols = Vec::with_capacity(d);
    for b in basis {
        let hb = apply(h, b);
        cols.push(express_in_basis(basis, &hb)?);
    }
    // transpose columns into a matrix
    Some((0..d).map(|i| (0..d).map(|j| cols[j][i].clone()).collect()).collect())
}

fn is_scalar_matrix(m: &[Vec<Cyclo>]) -> bool {
    let d = m.len();
    for i in 0..d {
        for j in 0..d {
            if i != j && !m[i][j].is_zero() {
                return false;
            }
        }
        if !m[i][i].eq_elem(&m[0][0]) {
            return false;
        }
    }
    true
}

/// Scale a matrix so its first nonzero entry (row-major) is 1.
fn projective_normalize_matrix(m: &[Vec<Cyclo>]) -> Vec<Vec<Cyclo>> {
    let d = m.len();
    let mut pivot = None;
    'outer: for i in 0..d {
        for j in 0..d {
            if !m[i][j].is_zero() {
                pivot = Some(m[i][j].clone());
                break 'outer;
            }
        }
    }
    let inv = pivot.expect("zero matrix").inv();
    m.iter().map(|row| row.iter().map(|c| c.mul(&inv)).collect()).collect()
}

fn matrices_equal(a: &[Vec<Cyclo>], b: &[Vec<Cyclo>]) -> bool {
    a.iter()
        .zip(b.iter())
        .all(|(ra, rb)| ra.iter().zip(rb.iter()).all(|(x, y)| x.eq_elem(y)))
}

/// Number of fixed points of a non-scalar restricted action `m` (of an
/// element of known `order`) on the curve cut out in the projectivized
/// span by the restricted pencil equation `fermat - 5 lambda product`.
fn fixed_points_on_curve(
    m: &[Vec<Cyclo>],
    order: usize,
    fermat: &MultiPoly,
    product: &MultiPoly,
    seed: u64,
) -> Result<usize> {
    let d = m.len();
    // m^order is a scalar matrix c * I; eigenvalues satisfy mu^order = c
    let mut p = vec![vec![Cyclo::zero(); d]; d];
    for (i, row) in p.iter_mut().enumerate() {
        row[i] = Cyclo::one();
    }
    for _ in 0..order {
        p = field_matmul(&p, m);
    }
    if !is_scalar_matrix(&p) {
        return Err(GeomError::Invariant(
            "restricted matrix power is not scalar at the element order".into(),
        ));
    }
    let c = p[0][0].clone();
    let (r0, a0) = c
        .as_root_of_unity()
        .ok_or_else(|| GeomError::Invariant("scalar power is not a root of unity".into()))?;
    let n = order as u64;
    let mut count = 0usize;
    let mut total_dim = 0usize;
    for t in 0..n {
        let mu = Cyclo::root_of_unity(n * r0, a0 as i64 + (r0 * t) as i64);
        // kernel of (m - mu I)
        let shifted: Vec<Vec<Cyclo>> = (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| {
                        if i == j {
                            m[i][j].sub(&mu)
                        } else {
                            m[i][j].clone()
                        }
                    })
                    .collect()
            })
            .collect();
        let kernel = field_kernel(&shifted);
        if kernel.is_empty() {
            continue;
        }
        total_dim += kernel.len();
        match kernel.len() {
            1 => {
                // an isolated fixed point of the action in the plane; it
                // counts when it lies on the curve for generic parameter
                let q = &kernel[0];
                let fv = fermat.eval(q);
                let pv = product.eval(q);
                if fv.is_zero() && pv.is_zero() {
                    count += 1;
                }
            }
            2 => {
                // a pointwise-fixed line: count its intersection with the
                // curve
                let subst: Vec<Vec<Cyclo>> = (0..d)
                    .map(|i| (0..2).map(|j| kernel[j][i].clone()).collect())
                    .collect();
                let gf = fermat.substitute_linear(&subst, 2);
                let gp = product.substitute_linear(&subst, 2);
                if gf.is_zero() && gp.is_zero() {
                    return Err(GeomError::Invariant(
                        "a fixed line lies inside an irreducible fixed curve".into(),
                    ));
                }
                let line_count = if gp.is_zero() || gf.is_zero() {
                    let form_poly = if gp.is_zero() { &gf } else { &gp };
                    BinaryForm::from_poly(form_poly, 0, 1)?.distinct_projective_roots()
                } else {
                    let five = Cyclo::from_int(5);
                    consensus(seed, 3, |lam| {
                        let coeff = five.scale(lam).neg();
                        let f = gf.add(&gp.scale(&coeff));
                        let form = BinaryForm::from_poly(&f, 0, 1)?;
                        if form.is_zero() {
                            return Err(GeomError::Degenerate("degenerate member".into()));
                        }
                        Ok(form.distinct_projective_roots())
                    })?
                };
                count += line_count;
            }
            _ => {
                return Err(GeomError::Invariant(
                    "non-scalar restricted action with full eigenspace".into(),
                ));
            }
        }
        if total_dim >= d {
            break;
        }
    }
    Ok(count)
}

/// Genus of the quotient of a fixed plane curve (smooth quintic of genus 6
/// in the projectivized 3-dimensional eigenspace spanned by `basis`) by the
/// effective action of `stab` (the elements of the centralizer preserving
/// the eigenspace).
fn plane_curve_quotient_genus(
    basis: &[Vec<Cyclo>],
    stab: &[GroupElement],
    seed: u64,
) -> Result<usize> {
    let restricted = restrict_pencil(basis);
    // effective group: restricted matrices modulo scalars, deduplicated
    let mut reps: Vec<(Vec<Vec<Cyclo>>, usize)> = Vec::new(); // (normalized matrix, order)
    let mut has_identity = false;
    for h in stab {
        let m = restricted_matrix(h, basis).ok_or_else(|| {
            GeomError::Invariant("stabilizer element does not preserve the eigenspace".into())
        })?;
        if is_scalar_matrix(&m) {
            has_identity = true;
            continue;
        }
        let norm = projective_normalize_matrix(&m);
        if !reps.iter().any(|(r, _)| matrices_equal(r, &norm)) {
            reps.push((norm, h.order()));
        }
    }
    if !has_identity {
        return Err(GeomError::Invariant("stabilizer lost its identity".into()));
    }
    let geff = reps.len() + 1;
    let chi_c: i64 = 2 - 2 * 6;
    let mut total = chi_c;
    for (m, order) in &reps {
        total += fixed_points_on_curve(m, *order, &restricted.fermat, &restricted.product, seed)?
            as i64;
    }
    if total % geff as i64 != 0 {
        return Err(GeomError::Invariant(format!(
            "orbit-counting sum {} is not divisible by the effective order {}",
            total, geff
        )));
    }
    let chi_q = total / geff as i64;
    if chi_q % 2 != 0 || chi_q > 2 {
        return Err(GeomError::Invariant(format!(
            "quotient Euler characteristic {} is not of the form 2 - 2g",
            chi_q
        )));
    }
    Ok(((2 - chi_q) / 2) as usize)
}

/// Invariant part of `h^{2,1}` of the quotient:
/// `p12 = 1 - (1/(2|G|)) * sum over g of chi(X^g)`.
pub fn invariant_h12(group: &[GroupElement], seed: u64) -> Result<i64> {
    let n = group[0].ambient_n();
    if n != 4 {
        return Err(GeomError::InvalidInput(
            "invariant cohomology is implemented for the quintic member only".into(),
        ));
    }
    let classes = conjugacy_classes_with_gens(group, group);
    let sum = sum_fixed_euler(&classes, seed)?;
    let denom = 2 * group.len() as i64;
    let num = denom - sum;
    if num % denom != 0 {
        return Err(GeomError::Invariant(format!(
            "non-integer invariant h12: (1 - {}/{})",
            sum, denom
        )));
    }
    Ok(num / denom)
}

fn sum_fixed_euler(classes: &[Vec<GroupElement>], seed: u64) -> Result<i64> {
    let mut sum = 0i64;
    for class in classes {
        let rep = &class[0];
        let chi = crate::fixedlocus::euler_of_fixed_locus(rep, seed)?;
        sum += chi * class.len() as i64;
    }
    Ok(sum)
}

/// Closed-form orbifold Hodge numbers for a quotient by a cyclic group of
/// prime order `p`, from the fixed-locus shape: `m` isolated points, `k`
/// curves with the given `genera`, on an ambient with Euler characteristic
/// `chi_z` and `h^{1,1} = 1`.
pub fn prime_order_quotient(
    p: i64,
    m: i64,
    k: i64,
    genera: &[i64],
    chi_z: i64,
) -> Result<(i64, i64)> {
    if p < 2 || (2..p).any(|d| p % d == 0) {
        return Err(GeomError::InvalidInput(format!("{} is not prime", p)));
    }
    if genera.len() != k as usize {
        return Err(GeomError::InvalidInput("one genus per curve required".into()));
    }
    let sum_g: i64 = genera.iter().sum();
    if ((p - 1) * m) % 2 != 0 {
        return Err(GeomError::Invariant("odd point-age split".into()));
    }
    let h11 = 1 + (p - 1) * m / 2 + (p - 1) * k;
    let inner = chi_z + (p - 1) * (m + 2 * k - 2 * sum_g);
    if inner % (2 * p) != 0 {
        return Err(GeomError::Invariant("non-integer invariant part".into()));
    }
    let h12 = 1 - inner / (2 * p) + (p - 1) * sum_g;
    Ok((h11, h12))
}

/// Chen-Ruan orbifold Hodge numbers `(h^{1,1}, h^{2,1})` of the quotient of
/// the generic quintic member by the period-preserving group generated by
/// `gens`.
pub fn chen_ruan(gens: &[GroupElement], seed: u64, cap: usize) -> Result<OrbifoldHodge> {
    for g in gens {
        if g.ambient_n() != 4 {
            return Err(GeomError::InvalidInput(
                "orbifold cohomology is implemented for the quintic member only".into(),
            ));
        }
        if !g.preserves_period() {
            return Err(GeomError::InvalidInput(format!(
                "generator {} does not preserve the period (odd permutation part)",
                g
            )));
        }
    }
    let group = generate_subgroup(gens, cap)?;
    let classes = conjugacy_classes_with_gens(&group, gens);
    // untwisted sector
    let chi_sum = sum_fixed_euler(&classes, seed)?;
    let denom = 2 * group.len() as i64;
    if (denom - chi_sum) % denom != 0 {
        return Err(GeomError::Invariant("non-integer invariant h12".into()));
    }
    let p12 = (denom - chi_sum) / denom;
    let mut h11: i64 = 1;
    let mut h22: i64 = 1;
    let mut h21: i64 = p12;
    let mut sectors = Vec::new();
    for class in &classes {
        let rep = &class[0];
        if rep.is_identity() {
            continue;
        }
        let fix = fixed_locus(rep, seed)?;
        let cs = centralizer(&group, rep);
        let mut sector = SectorReport {
            representative: rep.to_string(),
            class_size: class.len(),
            centralizer_order: cs.len(),
            fixed_euler: fix.euler,
            age1_point_orbits: 0,
            age2_point_orbits: 0,
            curve_orbits: 0,
            curve_quotient_genera: Vec::new(),
        };
        // -- isolated points: orbits under the centralizer across all
        //    components (centralizer elements may permute eigenspaces) --
        let mut points: Vec<(Vec<Cyclo>, usize)> = Vec::new(); // (coords, eigenspace)
        for c in &fix.components {
            if let FixedComponent::IsolatedPoints { eigenspace, count, points: pts } = c {
                let pts = pts.as_ref().ok_or_else(|| {
                    GeomError::Invariant(format!(
                        "sector {}: isolated points without exact coordinates",
                        rep
                    ))
                })?;
                if pts.len() != *count {
                    return Err(GeomError::Invariant("point count mismatch".into()));
                }
                for p in pts {
                    points.push((p.clone(), *eigenspace));
                }
            }
        }
        if !points.is_empty() {
            let orbits = point_orbit_representatives(&points, &cs)?;
            for &pi in &orbits {
                let mu = &fix.eigenspaces[points[pi].1].eigenvalue;
                match age_at_point(&fix.eigenspaces, mu)? {
                    1 => sector.age1_point_orbits += 1,
                    2 => sector.age2_point_orbits += 1,
                    a => {
                        return Err(GeomError::Invariant(format!(
                            "unexpected age {} at an isolated point of sector {}",
                            a, rep
                        )))
                    }
                }
            }
        }
        // -- curves: orbits of components under the centralizer, matched by
        //    eigenspace span --
        let curve_idx: Vec<(usize, bool)> = fix
            .components
            .iter()
            .filter_map(|c| match c {
                FixedComponent::PlaneCurve { eigenspace, .. } => Some((*eigenspace, true)),
                FixedComponent::FullEigenLine { eigenspace } => Some((*eigenspace, false)),
                _ => None,
            })
            .collect();
        let mut assigned = vec![false; curve_idx.len()];
        for ci in 0..curve_idx.len() {
            if assigned[ci] {
                continue;
            }
            // orbit of this component under the centralizer
            let (esp, is_plane) = curve_idx[ci];
            let basis = &fix.eigenspaces[esp].basis;
            let mut orbit_members = vec![ci];
            assigned[ci] = true;
            let mut stab: Vec<GroupElement> = Vec::new();
            for h in &cs {
                let image: Vec<Vec<Cyclo>> =
                    basis.iter().map(|b| apply(h, b)).collect();
                if same_span(&image, basis) {
                    stab.push(h.clone());
                    continue;
                }
                // find which other component the image span matches
                let mut found = false;
                for (cj, &(esp_j, _)) in curve_idx.iter().enumerate() {
                    if same_span(&image, &fix.eigenspaces[esp_j].basis) {
                        if !assigned[cj] {
                            assigned[cj] = true;
                            orbit_members.push(cj);
                        }
                        found = true;
                        break;
                    }
                }
                if !found {
                    return Err(GeomError::Invariant(format!(
                        "sector {}: centralizer element maps a fixed curve outside the fixed locus",
                        rep
                    )));
                }
            }
            let genus = if is_plane {
                plane_curve_quotient_genus(basis, &stab, seed)?
            } else {
                0 // quotient of a rational curve is rational
            };
            sector.curve_orbits += 1;
            sector.curve_quotient_genera.push(genus);
            let _ = orbit_members;
        }
        h11 += (sector.age1_point_orbits + sector.curve_orbits) as i64;
        h22 += (sector.age2_point_orbits + sector.curve_orbits) as i64;
        h21 += sector.curve_quotient_genera.iter().sum::<usize>() as i64;
        sectors.push(sector);
    }
    if h11 != h22 {
        return Err(GeomError::Invariant(format!(
            "Poincare duality violated across sectors: h11 = {}, h22 = {}",
            h11, h22
        )));
    }
    Ok(OrbifoldHodge { h11, h21, p12, group_order: group.len(), sectors })
}

/// Orbit representatives (as indices) of projective points under a set of
/// group elements; each image must land back in the point list.
fn point_orbit_representatives(
    points: &[(Vec<Cyclo>, usize)],
    elements: &[GroupElement],
) -> Result<Vec<usize>> {
    let mut orbit_of = vec![usize::MAX; points.len()];
    let mut reps = Vec::new();
    for i in 0..points.len() {
        if orbit_of[i] != usize::MAX {
            continue;
        }
        let oid = reps.len();
        reps.push(i);
        let mut stack = vec![i];
        orbit_of[i] = oid;
        while let Some(j) = stack.pop() {
            for h in elements {
                let img = apply(h, &points[j].0);
                let k = points
                    .iter()
                    .position(|(p, _)| projective_eq(p, &img))
                    .ok_or_else(|| {
                        GeomError::Invariant(
                            "centralizer image of a fixed point is not a fixed point".into(),
                        )
                    })?;
                if orbit_of[k] == usize::MAX {
                    orbit_of[k] = oid;
                    stack.push(k);
                }
            }
        }
    }
    Ok(reps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::named_group_generators;
    use crate::fixedlocus::eigen_decomposition;

    fn el(s: &str) -> GroupElement {
        GroupElement::parse(s, 4).unwrap()
    }

    fn cr(name: &str) -> (i64, i64) {
        let gens = named_group_generators(name).unwrap();
        let r = chen_ruan(&gens, 0, 1_000_000).unwrap();
        (r.h11, r.h21)
    }

    #[test]
    fn ages_of_three_cycle_points() {
        // the two isolated fixed points of a plain 3-cycle have ages 1 and 2
        let g = el("(1 2 3);0,0,0,0,0");
        let spaces = eigen_decomposition(&g);
        let mut ages: Vec<u32> = spaces
            .iter()
            .filter(|s| s.dim() == 1)
            .map(|s| age_at_point(&spaces, &s.eigenvalue).unwrap())
            .collect();
        ages.sort();
        assert_eq!(ages, vec![1, 2]);
    }

    #[test]
    fn age_pairing_with_inverse() {
        for s in ["(1 2 3);0,0,0,0,0", "h(0,0,1,1,3)", "(1 2)(3 4);0,0,1,1,3"] {
            let g = el(s);
            let gi = g.inverse();
            let sp = eigen_decomposition(&g);
            let spi = eigen_decomposition(&gi);
            for e in sp.iter().filter(|e| e.dim() <= 2) {
                // match the conjugate eigenspace of the inverse: same point,
                // eigenvalue mu^{-1}
                let mu_inv = e.eigenvalue.inv();
                let paired = spi
                    .iter()
                    .find(|f| f.eigenvalue.eq_elem(&mu_inv))
                    .expect("inverse eigenvalue present");
                if let (Ok(a), Ok(b)) =
                    (age_at_point(&sp, &e.eigenvalue), age_at_point(&spi, &paired.eigenvalue))
                {
                    assert_eq!(a + b, 3, "age pairing for {}", s);
                }
            }
        }
    }

    #[test]
    fn invariant_h12_examples() {
        let z2 = generate_subgroup(&[el("(1 2)(3 4);0,0,0,0,0")], 100).unwrap();
        assert_eq!(invariant_h12(&z2, 0).unwrap(), 53);
        let trivial = vec![GroupElement::identity(4)];
        assert_eq!(invariant_h12(&trivial, 0).unwrap(), 101);
        let free = generate_subgroup(
            &[el("(1 2 3 4 5);0,0,0,0,0"), el("h(0,1,2,3,4)")],
            1000,
        )
        .unwrap();
        assert_eq!(free.len(), 25);
        assert_eq!(invariant_h12(&free, 0).unwrap(), 5);
    }

    #[test]
    fn prime_order_closed_form() {
        assert_eq!(prime_order_quotient(2, 0, 2, &[6, 0], -200).unwrap(), (3, 59));
        assert_eq!(prime_order_quotient(3, 2, 1, &[6], -200).unwrap(), (5, 49));
        assert_eq!(prime_order_quotient(5, 10, 0, &[], -200).unwrap(), (21, 17));
        assert!(prime_order_quotient(4, 0, 0, &[], -200).is_err());
    }

    #[test]
    fn cyclic_quotients_match_closed_form() {
        // involution (1 2)(3 4)
        let r = chen_ruan(&[el("(1 2)(3 4);0,0,0,0,0")], 0, 100).unwrap();
        assert_eq!((r.h11, r.h21), (3, 59));
        // 3-cycle
        let r = chen_ruan(&[el("(1 2 3);0,0,0,0,0")], 0, 100).unwrap();
        assert_eq!((r.h11, r.h21), (5, 49));
        // order-5 diagonal with 10 fixed points
        let r = chen_ruan(&[el("h(0,1,1,3,0)")], 0, 100).unwrap();
        assert_eq!((r.h11, r.h21), (21, 17));
        // free order-5
        let r = chen_ruan(&[el("(1 2 3 4 5);0,0,0,0,0")], 0, 100).unwrap();
        assert_eq!((r.h11, r.h21), (1, 21));
        // diagonal acting freely
        let r = chen_ruan(&[el("h(0,1,2,3,4)")], 0, 100).unwrap();
        assert_eq!((r.h11, r.h21), (1, 21));
        // 3-cycle with twists, order 15 -- not prime, checked against the
        // sector-by-sector value
        let r = chen_ruan(&[el("(1 2 3);0,0,0,1,4")], 0, 100).unwrap();
        assert_eq!((r.h11, r.h21), (17, 21));
    }

    #[test]
    fn mirror_pair_g1() {
        assert_eq!(cr("G1"), (17, 21));
        let r = chen_ruan(&[el("h(0,1,1,3,0)")], 0, 100).unwrap();
        assert_eq!((r.h11, r.h21), (21, 17));
    }

    #[test]
    fn g_series_quotients() {
        assert_eq!(cr("G2"), (49, 5));
        assert_eq!(cr("G3"), (21, 1));
    }

    #[test]
    fn dihedral_and_symmetric_quotients() {
        assert_eq!(cr("D5b"), (5, 33));
        assert_eq!(cr("D5a"), (3, 19));
        // S3 generated by a 3-cycle and a double transposition
        let gens = vec![el("(1 2 3);0,0,0,0,0"), el("(1 2)(4 5);0,0,0,0,0")];
        let r = chen_ruan(&gens, 0, 100).unwrap();
        assert_eq!((r.h11, r.h21), (5, 33));
    }
}

