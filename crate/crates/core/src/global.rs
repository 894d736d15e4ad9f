//! S-units of `O_S[zeta_p/p]` modulo `p`-th powers and a class-group certificate
//! for the small cyclotomic fields in scope.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::arith::{self, canonical_conductor, euler_phi, lcm, mult_order, split_prime_part};
use crate::cyclotomic::{cyc_norm, galois_apply, pth_root_in_field, CycElem, GaloisGroup};
use crate::error::{Error, Result};
use crate::linalg::all_vectors;
use crate::local::primes_above;

/// Largest field degree handled by the exhaustive searches.
pub const DEGREE_BOUND: u64 = 4;
pub const SEARCH_START: i64 = 10;
pub const SEARCH_LIMIT: i64 = 160;

/// `K = Q(zeta_m)`, a prime `p`, and rational primes `S` whose primes in `K` are inverted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RingSpec {
    pub m: u64,
    pub p: u64,
    pub s: Vec<u64>,
}

impl RingSpec {
    pub fn new(m: u64, p: u64, mut s: Vec<u64>) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidArgument("conductor must be positive".into()));
        }
        if !arith::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if let Some(&q) = s.iter().find(|&&q| !arith::is_prime(q)) {
            return Err(Error::NotPrime(q));
        }
        s.sort_unstable();
        s.dedup();
        if s.contains(&p) {
            return Err(Error::Hypothesis(format!("S contains p = {p}")));
        }
        let m = canonical_conductor(m);
        let g = primes_above(p, m);
        if g != 1 {
            return Err(Error::Hypothesis(format!("p = {p} splits into {g} primes in Q(zeta_{m})")));
        }
        Ok(RingSpec { m, p, s })
    }

    /// Conductor of `L = K(zeta_p)`.
    pub fn big_conductor(&self) -> u64 {
        canonical_conductor(lcm(self.m, self.p))
    }

    /// `S` together with `p`, ascending.
    pub fn inverted_primes(&self) -> Vec<u64> {
        let mut t = self.s.clone();
        t.push(self.p);
        t.sort_unstable();
        t
    }

    /// `dim_{F_p}` of the `S`-units of `L` modulo `p`-th powers:
    /// `r1 + r2 - 1 + #{primes above S and p} + [p | #mu(L)]`.
    pub fn expected_unit_dimension(&self) -> usize {
        let big = self.big_conductor();
        let n = euler_phi(big) as usize;
        let (r1, r2) = if big == 1 { (1, 0) } else { (0, n / 2) };
        let primes: u64 = self.inverted_primes().iter().map(|&q| primes_above(q, big)).sum();
        let w = lcm(2, big);
        r1 + r2 - 1 + primes as usize + usize::from(w.is_multiple_of(self.p))
    }
}

/// `F_p`-independent classes in `U / U^p`.
#[derive(Clone, Debug, Serialize)]
pub struct UnitClassBasis {
    pub conductor: u64,
    pub p: u64,
    pub units: Vec<CycElem>,
    pub verified_independent: bool,
}

impl UnitClassBasis {
    pub fn dimension(&self) -> usize {
        self.units.len()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Trivial,
    /// Reserved for an exhibited nontrivial class; the bounded search never produces it.
    PPartNontrivial,
    Inconclusive,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckedPrime {
    pub rational_prime: u64,
    pub norm: String,
    pub generator: Option<CycElem>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassCertificate {
    pub conductor: u64,
    pub inverted_primes: Vec<u64>,
    /// Exact rational upper bracket of the Minkowski bound.
    pub minkowski_bound: String,
    pub minkowski_approx: f64,
    pub checked: Vec<CheckedPrime>,
    pub verdict: Verdict,
}

fn guard_degree(m: u64) -> Result<()> {
    let n = euler_phi(m);
    if n > DEGREE_BOUND {
        return Err(Error::DegreeGuard { degree: n, bound: DEGREE_BOUND });
    }
    Ok(())
}

/// `|disc Q(zeta_m)| = m^n / prod_{q | m} q^(n/(q-1))`.
pub fn abs_discriminant(m: u64) -> BigInt {
    let n = euler_phi(m);
    let mut num = BigInt::from(m).pow(n as u32);
    for (q, _) in arith::factor(m) {
        num /= BigInt::from(q).pow((n / (q - 1)) as u32);
    }
    num
}

fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// Rational upper bracket of `(4/pi)^r2 * n!/n^n * sqrt|disc|`.
pub fn minkowski_upper(m: u64) -> BigRational {
    let m = canonical_conductor(m);
    let n = euler_phi(m);
    let r2 = if m == 1 { 0 } else { n / 2 };
    // 3.14159265358979 < pi
    let pi_lower = BigRational::new(314_159_265_358_979u64.into(), 100_000_000_000_000u64.into());
    let four_over_pi = BigRational::from_integer(4.into()) / pi_lower;
    let scale = BigInt::from(10u64).pow(12);
    let d = abs_discriminant(m) * &scale * &scale;
    let mut s = d.sqrt();
    if &s * &s < d {
        s += 1;
    }
    let sqrt_upper = BigRational::new(s, scale);
    let mut b = BigRational::new(factorial(n), BigInt::from(n).pow(n as u32)) * sqrt_upper;
    for _ in 0..r2 {
        b *= &four_over_pi;
    }
    b
}

fn minkowski_float(m: u64) -> f64 {
    let m = canonical_conductor(m);
    let n = euler_phi(m);
    let r2 = if m == 1 { 0 } else { n / 2 };
    let disc = abs_discriminant(m).to_f64().unwrap_or(f64::INFINITY);
    let fact: f64 = (1..=n).map(|k| k as f64).product();
    (4.0 / std::f64::consts::PI).powi(r2 as i32) * fact / (n as f64).powi(n as i32) * disc.sqrt()
}

fn key_coefficient(k: i64) -> i64 {
    if k % 2 == 1 {
        (k + 1) / 2
    } else {
        -k / 2
    }
}

/// Integer vectors of length `n` with max-norm exactly `r`, in the order
/// 0, 1, -1, 2, -2, ... on each coordinate (first coordinate slowest).
fn shell(n: usize, r: i64) -> impl Iterator<Item = Vec<i64>> {
    let base = (2 * r + 1) as u64;
    all_vectors(base, n)
        .map(|v| v.into_iter().map(|k| key_coefficient(k as i64)).collect::<Vec<_>>())
        .filter(move |v| v.iter().map(|c| c.abs()).max().unwrap_or(0) == r)
}

/// First element (in shell order) whose norm has absolute value `target`.
pub fn find_element_of_norm(m: u64, target: &BigInt) -> Result<CycElem> {
    let n = euler_phi(m) as usize;
    let mut bound = SEARCH_START;
    let mut r = 0;
    loop {
        while r <= bound {
            for v in shell(n, r) {
                if v.iter().all(|&c| c == 0) {
                    continue;
                }
                let x = CycElem::from_int_coeffs(m, &v)?;
                let nrm = cyc_norm(&x);
                if nrm.numer().abs() == *target && nrm.denom().is_one() {
                    return Ok(x);
                }
            }
            r += 1;
        }
        if bound >= SEARCH_LIMIT {
            return Err(Error::GeneratorSearchExhausted { norm: target.to_string(), bound });
        }
        bound *= 2;
    }
}

/// Residue degree of `q` in `Q(zeta_m)`.
fn residue_degree(q: u64, m: u64) -> u64 {
    let (mq, _) = split_prime_part(m, q);
    mult_order(q, mq).expect("q prime to the prime-to-q part")
}

/// Certificate that the class group of `Q(zeta_M)` is trivial: every prime
/// ideal of norm at most the Minkowski bound is shown principal.
pub fn class_group_trivial_certificate(conductor: u64, inverted: &[u64]) -> Result<ClassCertificate> {
    let m = canonical_conductor(conductor);
    guard_degree(m)?;
    let bound = minkowski_upper(m);
    let floor = bound.floor().to_integer().to_u64().expect("small bound");
    let mut checked = Vec::new();
    let mut verdict = Verdict::Trivial;
    for q in (2..=floor).filter(|&q| arith::is_prime(q)) {
        let f = residue_degree(q, m);
        let norm = BigInt::from(q).pow(f as u32);
        if BigRational::from_integer(norm.clone()) > bound {
            continue;
        }
        // a generator of one prime above q; its conjugates generate the rest
        let generator = match find_element_of_norm(m, &norm) {
            Ok(g) => Some(g),
            Err(Error::GeneratorSearchExhausted { .. }) => {
                verdict = Verdict::Inconclusive;
                None
            }
            Err(e) => return Err(e),
        };
        checked.push(CheckedPrime { rational_prime: q, norm: norm.to_string(), generator });
    }
    Ok(ClassCertificate {
        conductor: m,
        inverted_primes: inverted.to_vec(),
        minkowski_bound: bound.to_string(),
        minkowski_approx: minkowski_float(m),
        checked,
        verdict,
    })
}

/// Product `prod u_i^{e_i}`.
pub fn unit_product(units: &[CycElem], exps: &[u64], m: u64) -> Result<CycElem> {
    let mut acc = CycElem::one(m);
    for (u, &e) in units.iter().zip(exps) {
        if e > 0 {
            acc = acc.mul(&u.embed_into(m)?.pow(e))?;
        }
    }
    Ok(acc)
}

/// Lexicographically first `c` with `x * prod b_i^{c_i}` a `p`-th power in `Q(zeta_m)`.
pub fn global_relation(x: &CycElem, basis: &[CycElem], p: u64, m: u64) -> Result<Option<Vec<u64>>> {
    let x = x.embed_into(m)?;
    for c in all_vectors(p, basis.len()) {
        if pth_root_in_field(&x.mul(&unit_product(basis, &c, m)?)?, p)?.is_some() {
            return Ok(Some(c));
        }
    }
    Ok(None)
}

/// Coordinates of the class of `x` in the span of `basis`.
pub fn global_coordinates(x: &CycElem, basis: &[CycElem], p: u64, m: u64) -> Result<Option<Vec<u64>>> {
    Ok(global_relation(x, basis, p, m)?.map(|c| c.iter().map(|&v| (p - v) % p).collect()))
}

/// Greedy reduction of a list of units to an `F_p`-independent sublist
/// spanning the same subgroup of `L^* / (L^*)^p`.
pub fn verify_independence(units: &[CycElem], p: u64) -> Result<UnitClassBasis> {
    let m = units.iter().map(CycElem::conductor).fold(1, lcm);
    let m = canonical_conductor(lcm(m, p));
    let mut basis: Vec<CycElem> = Vec::new();
    for u in units {
        if global_relation(u, &basis, p, m)?.is_none() {
            basis.push(u.embed_into(m)?);
        }
    }
    Ok(UnitClassBasis { conductor: m, p, units: basis, verified_independent: true })
}

/// True when the norm of `x` is `+-` a product of the given primes.
pub fn norm_supported_on(x: &CycElem, primes: &[u64]) -> bool {
    let n = cyc_norm(x);
    if n.is_zero() {
        return false;
    }
    let mut rest = n.numer().abs() * n.denom();
    for &q in primes {
        let qb = BigInt::from(q);
        while (&rest % &qb).is_zero() {
            rest /= &qb;
        }
    }
    rest.is_one()
}

/// Generators of `O_S[zeta_p/p]^* / p`-th powers.
///
/// Spanning candidates: a root of unity of order `lcm(2, M)`, the cyclotomic
/// numbers `1 - zeta^a` whose norm is supported on `S` and `p`, and every Galois
/// conjugate of one generator of a prime above each inverted prime. Ratios of
/// the cyclotomic numbers give the cyclotomic units. These generate a subgroup
/// whose index in the full unit group is prime to `p` for the fields in scope,
/// so the image in `U/U^p` is everything. That claim is not trusted: the
/// reduced basis is compared against the Dirichlet count and a shortfall is an
/// error, while a basis of full dimension spans by counting.
pub fn s_unit_generators_mod_p(ring: &RingSpec) -> Result<UnitClassBasis> {
    let big = ring.big_conductor();
    guard_degree(big)?;
    let p = ring.p;
    let t = ring.inverted_primes();
    let mut candidates = Vec::new();
    let zeta = if big.is_multiple_of(2) { CycElem::zeta(big) } else { CycElem::zeta(big).neg() };
    candidates.push(zeta);
    let one = CycElem::one(big);
    for a in 1..big {
        let c = one.sub(&CycElem::zeta_pow(big, a as i64))?;
        if !c.is_zero() && norm_supported_on(&c, &t) {
            candidates.push(c);
        }
    }
    let gal = GaloisGroup::full(big);
    for &q in &t {
        let f = residue_degree(q, big);
        let g = find_element_of_norm(big, &BigInt::from(q).pow(f as u32))?;
        for sigma in gal.autos() {
            candidates.push(galois_apply(&sigma, &g));
        }
    }
    let basis = verify_independence(&candidates, p)?;
    let expected = ring.expected_unit_dimension();
    if basis.dimension() != expected {
        return Err(Error::UnitRankDeficit { found: basis.dimension(), expected });
    }
    Ok(basis)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(m: u64, v: &[i64]) -> Vec<CycElem> {
        v.iter().map(|&n| CycElem::from_int(m, n)).collect()
    }

    fn same_span(a: &[CycElem], b: &[CycElem], p: u64, m: u64) -> bool {
        a.iter().all(|x| global_coordinates(x, b, p, m).unwrap().is_some())
            && b.iter().all(|y| global_coordinates(y, a, p, m).unwrap().is_some())
    }

    #[test]
    fn z_sixth() {
        let ring = RingSpec::new(1, 2, vec![3]).unwrap();
        let b = s_unit_generators_mod_p(&ring).unwrap();
        assert_eq!(b.dimension(), 3);
        assert!(same_span(&b.units, &ints(1, &[-1, 2, 3]), 2, 1));
    }

    #[test]
    fn z_half() {
        let b = s_unit_generators_mod_p(&RingSpec::new(1, 2, vec![]).unwrap()).unwrap();
        assert_eq!(b.dimension(), 2);
        assert!(same_span(&b.units, &ints(1, &[-1, 2]), 2, 1));
    }

    #[test]
    fn eisenstein_cubes() {
        let ring = RingSpec::new(1, 3, vec![]).unwrap();
        assert_eq!(ring.expected_unit_dimension(), 2);
        let b = s_unit_generators_mod_p(&ring).unwrap();
        assert_eq!(b.dimension(), 2);
        assert!(!crate::cyclotomic::is_pth_power(&CycElem::zeta(3), 3).unwrap());
    }

    #[test]
    fn independence_examples() {
        assert_eq!(verify_independence(&ints(1, &[4]), 2).unwrap().dimension(), 0);
        let b = verify_independence(&ints(1, &[2, 3, 6]), 2).unwrap();
        assert_eq!(b.units, ints(1, &[2, 3]));
        assert_eq!(verify_independence(&[], 2).unwrap().dimension(), 0);
    }

    #[test]
    fn minkowski_bounds() {
        let b12 = minkowski_upper(12);
        assert!(b12 < BigRational::from_integer(2.into()));
        assert!((minkowski_float(12) - 1.8238).abs() < 1e-3);
        assert!(minkowski_upper(4) < BigRational::from_integer(2.into()));
        assert!((minkowski_float(4) - 4.0 / std::f64::consts::PI).abs() < 1e-12);
        assert_eq!(minkowski_float(1), 1.0);
        for m in [1, 3, 4, 5, 8, 12] {
            let c = class_group_trivial_certificate(m, &[]).unwrap();
            assert_eq!(c.verdict, Verdict::Trivial, "m = {m}");
            assert!(BigRational::from_float(c.minkowski_approx).unwrap() <= minkowski_upper(m));
        }
        let c8 = class_group_trivial_certificate(8, &[]).unwrap();
        assert_eq!(c8.checked.len(), 1);
        assert!(matches!(class_group_trivial_certificate(7, &[]), Err(Error::DegreeGuard { .. })));
    }

    #[test]
    fn ring_validation() {
        assert!(matches!(RingSpec::new(1, 2, vec![2]), Err(Error::Hypothesis(_))));
        assert!(matches!(RingSpec::new(4, 5, vec![]), Err(Error::Hypothesis(_))));
        assert!(matches!(RingSpec::new(1, 4, vec![]), Err(Error::NotPrime(4))));
        assert!(matches!(RingSpec::new(1, 2, vec![9]), Err(Error::NotPrime(9))));
    }

    fn coefficient_key(c: i64) -> i64 {
        if c > 0 {
            2 * c - 1
        } else {
            -2 * c
        }
    }

    #[test]
    fn shell_order() {
        let v: Vec<_> = shell(1, 1).collect();
        assert_eq!(v, vec![vec![1], vec![-1]]);
        assert_eq!(coefficient_key(-2), 4);
        assert_eq!(key_coefficient(4), -2);
    }
}
