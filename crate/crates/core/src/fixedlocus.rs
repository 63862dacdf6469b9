//! Fixed loci of pencil automorphisms on the generic member of the Dwork
//! pencil, via exact eigenspace decomposition and restriction of the
//! defining polynomial.
//!
//! The fixed locus of a projectivity is the union of its projectivized
//! eigenspaces; intersecting with the hypersurface reduces to restricted
//! binary and ternary forms whose roots and smoothness are analyzed exactly
//! (with a deterministic consensus over generic parameter specializations
//! where a statement depends on the pencil parameter).


use crate::cyclotomic::Cyclo;
use crate::group::GroupElement;
use crate::lambda::consensus;
use crate::poly::{plane_curve_smooth, BinaryForm, MultiPoly};
use crate::{GeomError, Result};

/// One eigenspace of the matrix of a pencil automorphism.
#[derive(Clone, Debug)]
pub struct Eigenspace {
    /// The eigenvalue, a root of unity.
    pub eigenvalue: Cyclo,
    /// Exact basis vectors in `C^{n+1}`.
    pub basis: Vec<Vec<Cyclo>>,
}

impl Eigenspace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// Exact eigenspace decomposition of the matrix `P_sigma D_a` of a pencil
/// automorphism. Eigenvalues are roots of unity; per cycle of length `l`
/// with twist sum `r`, they are the `l` solutions of `mu^l = zeta_{n+1}^r`,
/// and equal eigenvalues from different cycles are merged.
pub fn eigen_decomposition(g: &GroupElement) -> Vec<Eigenspace> {
    let k = g.len();
    let m = k as u64; // n + 1
    let mut spaces: Vec<Eigenspace> = Vec::new();
    for cycle in g.cycles() {
        let l = cycle.len() as u64;
        let rho: i64 = cycle.iter().map(|&i| g.twists()[i] as i64).sum();
        for j in 0..l {
            // mu = zeta_{m l}^{rho + m j}
            let mu = Cyclo::root_of_unity(m * l, rho + (m * j) as i64);
            // eigenvector supported on the cycle: v_{c_0} = 1,
            // v_{sigma(c)} = zeta^{a_c} v_c / mu
            let mut v = vec![Cyclo::zero(); k];
            let mut cur = Cyclo::one();
            let mu_inv = mu.inv();
            for (t, &i) in cycle.iter().enumerate() {
                v[i] = cur.clone();
                if t + 1 < cycle.len() {
                    let tw = Cyclo::root_of_unity(m, g.twists()[i] as i64);
                    cur = cur.mul(&tw).mul(&mu_inv);
                }
            }
            match spaces.iter_mut().find(|s| s.eigenvalue.eq_elem(&mu)) {
                Some(s) => s.basis.push(v),
                None => spaces.push(Eigenspace { eigenvalue: mu, basis: vec![v] }),
            }
        }
    }
    // deterministic order by (order, exponent) of the eigenvalue
    spaces.sort_by_key(|s| {
        s.eigenvalue
            .as_root_of_unity()
            .expect("eigenvalues of monomial projectivities are roots of unity")
    });
    spaces
}

/// Restriction of the two parts of the pencil equation to a subspace:
/// the member at parameter `lambda` restricts to
/// `fermat - (n+1) * lambda * product`.
#[derive(Clone, Debug)]
pub struct RestrictedPencil {
    pub fermat: MultiPoly,
    pub product: MultiPoly,
}

/// Restrict `sum x_i^(n+1)` and `prod x_i` to the span of `basis`.
pub fn restrict_pencil(basis: &[Vec<Cyclo>]) -> RestrictedPencil {
    let k = basis[0].len(); // n + 1 coordinates
    let d = basis.len();
    // substitution x_i = sum_j y_j * basis[j][i]
    let subst: Vec<Vec<Cyclo>> =
        (0..k).map(|i| (0..d).map(|j| basis[j][i].clone()).collect()).collect();
    let mut fermat = MultiPoly::zero(k);
    for i in 0..k {
        let mut e = vec![0u32; k];
        e[i] = k as u32;
        fermat.add_term(e, Cyclo::one());
    }
    let product = MultiPoly::monomial(k, vec![1; k], Cyclo::one());
    RestrictedPencil {
        fermat: fermat.substitute_linear(&subst, d),
        product: product.substitute_linear(&subst, d),
    }
}

/// A connected piece (or finite set of points) of a fixed locus on the
/// generic member.
#[derive(Clone, Debug)]
pub enum FixedComponent {
    /// Finitely many fixed points inside one projectivized eigenspace.
    IsolatedPoints {
        eigenspace: usize,
        count: usize,
        /// Exact homogeneous coordinates in `C^{n+1}`, when the defining
        /// binary form is parameter-free with cyclotomic roots.
        points: Option<Vec<Vec<Cyclo>>>,
    },
    /// A smooth curve cut out in a projectivized eigenspace of dimension 3.
    PlaneCurve { eigenspace: usize, genus: usize },
    /// An eigenline entirely contained in every member of the pencil.
    FullEigenLine { eigenspace: usize },
}

impl FixedComponent {
    pub fn euler(&self) -> i64 {
        match self {
            FixedComponent::IsolatedPoints { count, .. } => *count as i64,
            FixedComponent::PlaneCurve { genus, .. } => 2 - 2 * (*genus as i64),
            FixedComponent::FullEigenLine { .. } => 2,
        }
    }
}

/// The fixed locus of an automorphism on the generic member.
#[derive(Clone, Debug)]
pub struct FixedLocusReport {
    pub eigenspaces: Vec<Eigenspace>,
    pub components: Vec<FixedComponent>,
    /// Topological Euler characteristic of the fixed locus.
    pub euler: i64,
}

/// Compute the fixed locus of a non-identity automorphism on the generic
/// member of the pencil. The `seed` drives the deterministic generic
/// parameter sampling used for parameter-dependent statements.
pub fn fixed_locus(g: &GroupElement, seed: u64) -> Result<FixedLocusReport> {
    if g.is_identity() {
        return Err(GeomError::InvalidInput(
            "fixed locus of the identity is the whole member".into(),
        ));
    }
    let k = g.len();
    let degree_coeff = Cyclo::from_int(k as i64); // the (n+1) in the pencil equation
    let spaces = eigen_decomposition(g);
    let mut components = Vec::new();
    for (idx, space) in spaces.iter().enumerate() {
        let d = space.dim();
        let r = restrict_pencil(&space.basis);
        match d {
            1 => {
                // a single point: on every member iff both parts vanish
                let gf = r.fermat;
                let gp = r.product;
                let on_member = gf.is_zero() && gp.is_zero();
                // a point with nonzero product part lies only on special
                // members; with zero product part but nonzero Fermat part it
                // lies on no member
                if on_member {
                    components.push(FixedComponent::IsolatedPoints {
                        eigenspace: idx,
                        count: 1,
                        points: Some(vec![space.basis[0].clone()]),
                    });
                }
            }
            2 => {
                if r.fermat.is_zero() && r.product.is_zero() {
                    components.push(FixedComponent::FullEigenLine { eigenspace: idx });
                    continue;
                }
                if r.product.is_zero() || r.fermat.is_zero() {
                    // parameter-free root set (for the product part alone,
                    // the zero set on the generic member is its root set)
                    let form_poly = if r.product.is_zero() { &r.fermat } else { &r.product };
                    let form = BinaryForm::from_poly(form_poly, 0, 1)?;
                    let count = form.distinct_projective_roots();
                    let points = exact_points_from_form(&form, &space.basis);
                    components.push(FixedComponent::IsolatedPoints {
                        eigenspace: idx,
                        count,
                        points,
                    });
                } else {
                    // parameter-dependent: consensus count over generic values
                    let count = consensus(seed, 3, |lam| {
                        let coeff = degree_coeff
                            .scale(lam)
                            .neg();
                        let f = r.fermat.add(&r.product.scale(&coeff));
                        let form = BinaryForm::from_poly(&f, 0, 1)?;
                        if form.is_zero() {
                            return Err(GeomError::Degenerate("member contains the line".into()));
                        }
                        Ok(form.distinct_projective_roots())
                    })?;
                    components.push(FixedComponent::IsolatedPoints {
                        eigenspace: idx,
                        count,
                        points: None,
                    });
                }
            }
            3 => {
                if r.fermat.is_zero() && r.product.is_zero() {
                    return Err(GeomError::Invariant(
                        "a smooth member cannot contain a plane".into(),
                    ));
                }
                let smooth = consensus(seed, 3, |lam| {
                    let coeff = degree_coeff.scale(lam).neg();
                    let f = r.fermat.add(&r.product.scale(&coeff));
                    if f.is_zero() {
                        return Err(GeomError::Degenerate("member contains the plane".into()));
                    }
                    plane_curve_smooth(&f)
                })?;
                if !smooth {
                    return Err(GeomError::Degenerate(
                        "fixed plane curve could not be certified smooth at any sampled parameter"
                            .into(),
                    ));
                }
                let deg = k as i64;
                let genus = ((deg - 1) * (deg - 2) / 2) as usize;
                components.push(FixedComponent::PlaneCurve { eigenspace: idx, genus });
            }
            _ => {
                return Err(GeomError::Invariant(format!(
                    "unexpected eigenspace of dimension {} for a non-identity element",
                    d
                )));
            }
        }
    }
    let euler = components.iter().map(|c| c.euler()).sum();
    Ok(FixedLocusReport { eigenspaces: spaces, components, euler })
}

/// Exact coordinates of the roots of a parameter-free binary form inside the
/// given 2-dimensional eigenspace, when the form is a monomial times a
/// two-term form with root-of-unity-scaled roots.
fn exact_points_from_form(form: &BinaryForm, basis: &[Vec<Cyclo>]) -> Option<Vec<Vec<Cyclo>>> {
    if form.is_zero() {
        return None;
    }
    let d = form.degree();
    let first = form.coeffs.iter().position(|c| !c.is_zero())?;
    let last = form.coeffs.iter().rposition(|c| !c.is_zero())?;
    let mut roots: Vec<(Cyclo, Cyclo)> = Vec::new(); // (u, v)
    if first > 0 {
        roots.push((Cyclo::zero(), Cyclo::one())); // v^first divides
    }
    if last < d {
        roots.push((Cyclo::one(), Cyclo::zero())); // u^(d-last) divides
    }
    if last > first {
        // interior factor: coefficients first..=last must be two-term
        let inner: Vec<Cyclo> = form.coeffs[first..=last].to_vec();
        let inner_form = BinaryForm { coeffs: inner };
        match inner_form.two_term_roots() {
            Ok(rs) => {
                for r in rs {
                    roots.push((r, Cyclo::one()));
                }
            }
            Err(_) => return None,
        }
    }
    let k = basis[0].len();
    let pts = roots
        .into_iter()
        .map(|(u, v)| {
            (0..k)
                .map(|i| basis[0][i].mul(&u).add(&basis[1][i].mul(&v)))
                .collect()
        })
        .collect();
    Some(pts)
}

/// Euler characteristic of the fixed locus, with the identity handled via
/// the Hodge data of the member itself.
pub fn euler_of_fixed_locus(g: &GroupElement, seed: u64) -> Result<i64> {
    if g.is_identity() {
        let h = crate::dwork::hodge_diamond(g.ambient_n())?;
        return Ok(h.euler as i64);
    }
    Ok(fixed_locus(g, seed)?.euler)
}
