//! Combinatorics of weighted projective hypersurfaces: well-formedness of
//! weight systems, isotropy orders of points, a closed-form age formula for
//! cyclic isotropy sectors, and the crepant-resolution verdict for the
//! symmetric quotients of the Dwork pencil.

use num_integer::Integer;
use num_rational::Rational64;
use serde::Serialize;

use crate::{GeomError, Result};

/// A weighted projective ambient together with the degrees of the defining
/// equations of a complete intersection inside it.
#[derive(Debug, Clone, Serialize)]
pub struct WeightSystem {
    pub weights: Vec<u64>,
    pub degrees: Vec<u64>,
}

impl WeightSystem {
    pub fn new(weights: Vec<u64>, degrees: Vec<u64>) -> Result<Self> {
        if weights.is_empty() || weights.iter().any(|&w| w == 0) {
            return Err(GeomError::InvalidInput(
                "weights must be nonempty and positive".into(),
            ));
        }
        if degrees.is_empty() || degrees.iter().any(|&d| d == 0) {
            return Err(GeomError::InvalidInput(
                "degrees must be nonempty and positive".into(),
            ));
        }
        Ok(WeightSystem { weights, degrees })
    }

    /// The degree-(n+1) symmetrized model of the pencil: a single hypersurface
    /// of degree n+1 in the weighted space with weights 1, 2, ..., n+1.
    pub fn symmetric_quintic_model(n: u64) -> Result<Self> {
        if n < 2 {
            return Err(GeomError::InvalidInput("need n >= 2".into()));
        }
        WeightSystem::new((1..=n + 1).collect(), vec![n + 1])
    }

    /// Dimension of the ambient weighted projective space.
    pub fn ambient_dim(&self) -> u64 {
        self.weights.len() as u64 - 1
    }

    /// Number of weights divisible by p.
    pub fn m(&self, p: u64) -> u64 {
        self.weights.iter().filter(|&&w| w % p == 0).count() as u64
    }

    /// Number of equation degrees divisible by p.
    pub fn k(&self, p: u64) -> u64 {
        self.degrees.iter().filter(|&&d| d % p == 0).count() as u64
    }

    /// q(p) = dim(ambient) - (number of equations) - m(p) + k(p): the dimension
    /// of the part of the complete intersection that avoids the p-singular
    /// stratum of the ambient space.
    pub fn q(&self, p: u64) -> i64 {
        self.ambient_dim() as i64 - self.degrees.len() as i64 - self.m(p) as i64
            + self.k(p) as i64
    }
}

/// One row of the well-formedness scan.
#[derive(Debug, Clone, Serialize)]
pub struct PrimeReport {
    pub p: u64,
    pub m: u64,
    pub k: u64,
    pub q: i64,
}

/// Result of the well-formedness test: the complete intersection is
/// well-formed exactly when q(p) >= 2 for every prime p.
#[derive(Debug, Clone, Serialize)]
pub struct WellformedReport {
    pub wellformed: bool,
    pub primes: Vec<PrimeReport>,
}

fn primes_up_to(limit: u64) -> Vec<u64> {
    let mut sieve = vec![true; (limit + 1) as usize];
    let mut primes = Vec::new();
    for p in 2..=limit {
        if sieve[p as usize] {
            primes.push(p);
            let mut q = p * p;
            while q <= limit {
                sieve[q as usize] = false;
                q += p;
            }
        }
    }
    primes
}

/// Scan all primes up to the largest weight (larger primes divide no weight,
/// so q(p) there equals the unconstrained codimension and never fails).
pub fn wellformed_check(ws: &WeightSystem) -> WellformedReport {
    let max_w = *ws.weights.iter().max().unwrap();
    let primes = primes_up_to(max_w)
        .into_iter()
        .map(|p| PrimeReport {
            p,
            m: ws.m(p),
            k: ws.k(p),
            q: ws.q(p),
        })
        .collect::<Vec<_>>();
    WellformedReport {
        wellformed: primes.iter().all(|r| r.q >= 2),
        primes,
    }
}

/// Order of the cyclic isotropy group of a point in weighted projective
/// space: the gcd of the weights of its nonzero coordinates.
pub fn isotropy_order(selected_weights: &[u64]) -> Result<u64> {
    if selected_weights.is_empty() {
        return Err(GeomError::InvalidInput(
            "need at least one nonzero coordinate".into(),
        ));
    }
    Ok(selected_weights.iter().fold(0u64, |g, &w| g.gcd(&w)))
}

/// Age of a generator of the order-k isotropy group in the symmetrized model
/// with weights 1..n+1, written via n+1 = s*k + t.
#[derive(Debug, Clone, Serialize)]
pub struct AgeQuery {
    pub n: u64,
    pub k: u64,
    pub s: u64,
    pub t: u64,
    pub a: u64,
}

impl AgeQuery {
    pub fn new(n: u64, k: u64) -> Result<Self> {
        if k < 2 {
            return Err(GeomError::InvalidInput("isotropy order must be >= 2".into()));
        }
        let s = (n + 1) / k;
        let t = (n + 1) % k;
        let a = (t * (t + 1) / 2) / k;
        Ok(AgeQuery { n, k, s, t, a })
    }
}

/// Closed-form age of a generator: (1/k)(s * k(k-1)/2 + a*k) = s(k-1)/2 + a.
pub fn ageterm(q: &AgeQuery) -> Rational64 {
    let num = q.s as i64 * (q.k as i64) * (q.k as i64 - 1) / 2 + q.a as i64 * q.k as i64;
    Rational64::new(num, q.k as i64)
}

/// Witness data for the crepant-resolution verdict: the order-3 isotropy
/// sector, its age, the dimension of its fixed locus, and the age of the
/// inverse generator.
#[derive(Debug, Clone, Serialize)]
pub struct TerminalityReport {
    pub n: u64,
    pub has_crepant_resolution: bool,
    pub sector_order: Option<u64>,
    pub age: Option<Rational64>,
    pub fixed_dim: Option<i64>,
    pub age_inverse: Option<Rational64>,
}

/// The quotient threefold family admits a crepant resolution exactly for
/// n = 2, 3, 4. For n >= 5 the order-3 sector already has age(g) and
/// age(g^-1) both greater than 1, so the singularity is terminal and no
/// crepant resolution exists.
pub fn terminality_verdict(n: u64) -> Result<TerminalityReport> {
    if n < 2 {
        return Err(GeomError::InvalidInput("need n >= 2".into()));
    }
    if n <= 4 {
        return Ok(TerminalityReport {
            n,
            has_crepant_resolution: true,
            sector_order: None,
            age: None,
            fixed_dim: None,
            age_inverse: None,
        });
    }
    let q = AgeQuery::new(n, 3)?;
    let age = ageterm(&q);
    let fixed_dim = q.s as i64 - 2;
    // age(g) + age(g^-1) equals the codimension of the fixed locus in the
    // (n-1)-dimensional quotient.
    let age_inverse = Rational64::from_integer(n as i64 - 1 - fixed_dim) - age;
    if age_inverse == Rational64::from_integer(1) || age == Rational64::from_integer(1) {
        return Err(GeomError::Invariant(format!(
            "order-3 sector for n={n} has age 1; terminality argument fails"
        )));
    }
    Ok(TerminalityReport {
        n,
        has_crepant_resolution: false,
        sector_order: Some(3),
        age: Some(age),
        fixed_dim: Some(fixed_dim),
        age_inverse: Some(age_inverse),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetric_model_wellformed_iff_n_at_least_5() {
        for n in 2..=12u64 {
            let ws = WeightSystem::symmetric_quintic_model(n).unwrap();
            let rep = wellformed_check(&ws);
            assert_eq!(rep.wellformed, n >= 5, "n={n}: {:?}", rep.primes);
        }
    }

    #[test]
    fn wellformed_q_values() {
        let ws5 = WeightSystem::symmetric_quintic_model(5).unwrap();
        let rep5 = wellformed_check(&ws5);
        let q2 = rep5.primes.iter().find(|r| r.p == 2).unwrap();
        assert_eq!(q2.q, 2);

        let ws4 = WeightSystem::symmetric_quintic_model(4).unwrap();
        let rep4 = wellformed_check(&ws4);
        let q2 = rep4.primes.iter().find(|r| r.p == 2).unwrap();
        assert_eq!(q2.q, 1);
        assert!(!rep4.wellformed);
    }

    #[test]
    fn wellformed_matches_brute_force_scan() {
        for n in 2..=15u64 {
            let ws = WeightSystem::symmetric_quintic_model(n).unwrap();
            let rep = wellformed_check(&ws);
            // Brute force over all primes up to n+1: any prime beyond the
            // largest weight divides nothing and contributes q = n - 1 >= 2.
            let brute = primes_up_to(n + 1).into_iter().all(|p| ws.q(p) >= 2);
            assert_eq!(rep.wellformed, brute);
        }
    }

    #[test]
    fn isotropy_examples() {
        assert_eq!(isotropy_order(&[2, 4, 10]).unwrap(), 2);
        assert_eq!(isotropy_order(&[3]).unwrap(), 3);
        assert_eq!(isotropy_order(&[1, 4, 10]).unwrap(), 1);
    }

    #[test]
    fn ageterm_examples() {
        let q = AgeQuery::new(5, 3).unwrap();
        assert_eq!(ageterm(&q), Rational64::from_integer(2));
        let q = AgeQuery::new(7, 3).unwrap();
        assert_eq!(ageterm(&q), Rational64::from_integer(3));
        let q = AgeQuery::new(4, 5).unwrap();
        assert_eq!(ageterm(&q), Rational64::from_integer(2));
    }

    #[test]
    fn age_complement_identity() {
        // age(g) + age(g^-1) = codim(Fix) with dim Fix = s - 2, for every
        // cyclic sector order k.
        for n in 5..=20u64 {
            for k in 2..=n + 1 {
                let q = AgeQuery::new(n, k).unwrap();
                let age = ageterm(&q);
                let fixed_dim = q.s as i64 - 2;
                let inv = Rational64::from_integer(n as i64 - 1 - fixed_dim) - age;
                assert_eq!(
                    age + inv,
                    Rational64::from_integer(n as i64 - 1 - fixed_dim)
                );
            }
        }
    }

    #[test]
    fn age_matches_weight_sum_mod_k() {
        // The sum of the reduced tangent weights in the chart where the
        // order-k coordinate is nonzero: all weights 1..n+1 except k itself,
        // plus the discriminant weight n(n+1)/2, minus the two eliminated
        // directions of degrees n+1 and n(n+1). Reduced mod k it agrees with
        // k times the closed-form age whenever k is odd or s is even; for even
        // k with odd s the closed form absorbs an extra k/2 from reducing the
        // triangular number (n+1)(n+2)/2 modulo k.
        for n in 5..=20u64 {
            for k in 2..=12u64.min(n + 1) {
                let q = AgeQuery::new(n, k).unwrap();
                let direct: i64 = (1..=n + 1)
                    .filter(|&j| j != k)
                    .map(|j| (j % k) as i64)
                    .sum::<i64>()
                    + ((n * (n + 1) / 2) % k) as i64
                    - ((n + 1) % k) as i64
                    - ((n * (n + 1)) % k) as i64;
                let k_age = ageterm(&q) * Rational64::from_integer(k as i64);
                assert!(k_age.is_integer());
                let km = k as i64;
                let expected_shift = if k % 2 == 0 && q.s % 2 == 1 {
                    km / 2
                } else {
                    0
                };
                assert_eq!(
                    direct.rem_euclid(km),
                    (k_age.to_integer() + expected_shift).rem_euclid(km),
                    "n={n} k={k}"
                );
            }
        }
    }

    #[test]
    fn crepant_resolution_verdicts() {
        for n in 2..=4u64 {
            assert!(terminality_verdict(n).unwrap().has_crepant_resolution);
        }
        for n in 5..=20u64 {
            let rep = terminality_verdict(n).unwrap();
            assert!(!rep.has_crepant_resolution, "n={n}");
            assert!(rep.age.unwrap() > Rational64::from_integer(1));
            assert!(rep.age_inverse.unwrap() > Rational64::from_integer(1));
        }
    }

    #[test]
    fn terminality_witness_n5_and_n7() {
        let r5 = terminality_verdict(5).unwrap();
        assert_eq!(r5.age, Some(Rational64::from_integer(2)));
        assert_eq!(r5.fixed_dim, Some(0));
        assert_eq!(r5.age_inverse, Some(Rational64::from_integer(2)));

        let r7 = terminality_verdict(7).unwrap();
        assert_eq!(r7.age, Some(Rational64::from_integer(3)));
        assert_eq!(r7.fixed_dim, Some(0));
        assert_eq!(r7.age_inverse, Some(Rational64::from_integer(3)));
    }
}
