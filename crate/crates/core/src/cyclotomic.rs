//! Exact arithmetic in cyclotomic fields `Q(zeta_m)`.
//!
//! Elements are rational coefficient vectors in the power basis
//! `1, zeta, ..., zeta^(phi(m)-1)`, always kept reduced modulo `Phi_m`.
//! Since `Phi_m` divides `X^m - 1`, a monomial `X^j` is reduced through the
//! precomputed table entry for `j mod m`.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::arith::{self, cyclotomic_poly, units_mod};
use crate::error::{Error, Result};

/// Precomputed data for one conductor.
#[derive(Debug)]
pub struct FieldData {
    pub conductor: u64,
    pub degree: usize,
    /// `Phi_m`, monic, lowest degree first.
    pub modulus: Vec<BigInt>,
    /// `X^j mod Phi_m` for `0 <= j < m`.
    pow_table: Vec<Vec<BigInt>>,
}

impl FieldData {
    fn new(m: u64) -> Self {
        let modulus = cyclotomic_poly(m);
        let degree = modulus.len() - 1;
        let mut pow_table = Vec::with_capacity(m as usize);
        let mut cur = vec![BigInt::zero(); degree];
        cur[0] = BigInt::one();
        for _ in 0..m {
            pow_table.push(cur.clone());
            // multiply by X and reduce the overflow with the monic modulus
            let top = cur[degree - 1].clone();
            let mut next = vec![BigInt::zero(); degree];
            next[1..degree].clone_from_slice(&cur[..(degree - 1)]);
            if !top.is_zero() {
                for (k, c) in modulus[..degree].iter().enumerate() {
                    next[k] -= &top * c;
                }
            }
            cur = next;
        }
        FieldData { conductor: m, degree, modulus, pow_table }
    }

    fn power(&self, j: u64) -> &[BigInt] {
        &self.pow_table[(j % self.conductor) as usize]
    }
}

/// Shared per-conductor data; conductors are few, so entries live for the process.
pub fn field_data(m: u64) -> Arc<FieldData> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<FieldData>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().expect("field cache poisoned");
    guard.entry(m).or_insert_with(|| Arc::new(FieldData::new(m))).clone()
}

/// An element of `Q(zeta_m)`.
#[derive(Clone)]
pub struct CycElem {
    field: Arc<FieldData>,
    coeffs: Vec<BigRational>,
}

impl PartialEq for CycElem {
    fn eq(&self, other: &Self) -> bool {
        self.conductor() == other.conductor() && self.coeffs == other.coeffs
    }
}

impl Eq for CycElem {}

impl fmt::Debug for CycElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycElem[{}]({})", self.conductor(), self)
    }
}

fn rat(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}

impl CycElem {
    pub fn zero(m: u64) -> Self {
        let field = field_data(m);
        let coeffs = vec![BigRational::zero(); field.degree];
        CycElem { field, coeffs }
    }

    pub fn one(m: u64) -> Self {
        Self::from_rational(m, BigRational::one())
    }

    pub fn from_int(m: u64, n: i64) -> Self {
        Self::from_rational(m, rat(n))
    }

    pub fn from_rational(m: u64, q: BigRational) -> Self {
        let mut x = Self::zero(m);
        x.coeffs[0] = q;
        x
    }

    /// Builds an element from power-basis coordinates; the vector length must be `phi(m)`.
    pub fn from_coeffs(m: u64, coeffs: Vec<BigRational>) -> Result<Self> {
        let field = field_data(m);
        if coeffs.len() != field.degree {
            return Err(Error::InvalidArgument(format!(
                "expected {} coefficients for conductor {m}, got {}",
                field.degree,
                coeffs.len()
            )));
        }
        Ok(CycElem { field, coeffs })
    }

    pub fn from_int_coeffs(m: u64, coeffs: &[i64]) -> Result<Self> {
        Self::from_coeffs(m, coeffs.iter().map(|&c| rat(c)).collect())
    }

    /// `zeta_m^j`, any integer `j`.
    pub fn zeta_pow(m: u64, j: i64) -> Self {
        let field = field_data(m);
        let e = j.rem_euclid(m as i64) as u64;
        let coeffs = field.power(e).iter().cloned().map(BigRational::from_integer).collect();
        CycElem { field, coeffs }
    }

    pub fn zeta(m: u64) -> Self {
        Self::zeta_pow(m, 1)
    }

    pub fn conductor(&self) -> u64 {
        self.field.conductor
    }

    pub fn degree(&self) -> usize {
        self.field.degree
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// The rational value when the element lies in `Q`.
    pub fn to_rational(&self) -> Option<BigRational> {
        self.coeffs[1..].iter().all(Zero::is_zero).then(|| self.coeffs[0].clone())
    }

    /// True when every coordinate is an integer. The power basis is an integral
    /// basis of `Z[zeta_m]`, so this is membership in the ring of integers.
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// Least common multiple of the coordinate denominators.
    pub fn denominator(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.conductor() != other.conductor() {
            return Err(Error::ConductorMismatch(self.conductor(), other.conductor()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(CycElem { field: self.field.clone(), coeffs })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Ok(CycElem { field: self.field.clone(), coeffs })
    }

    pub fn neg(&self) -> Self {
        CycElem { field: self.field.clone(), coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        CycElem { field: self.field.clone(), coeffs: self.coeffs.iter().map(|c| c * q).collect() }
    }

    /// Collects `sum c_j X^j` (any degree) into reduced form.
    fn reduce_monomials(field: &Arc<FieldData>, terms: &[BigRational]) -> Self {
        let mut coeffs = vec![BigRational::zero(); field.degree];
        for (j, c) in terms.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (k, t) in field.power(j as u64).iter().enumerate() {
                if !t.is_zero() {
                    coeffs[k] += c * t;
                }
            }
        }
        CycElem { field: field.clone(), coeffs }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let n = self.degree();
        let mut prod = vec![BigRational::zero(); 2 * n - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        Ok(Self::reduce_monomials(&self.field, &prod))
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.conductor());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).expect("same conductor");
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).expect("same conductor");
            }
        }
        acc
    }

    /// Inverse through the norm: `x^{-1} = prod_{sigma != 1} sigma(x) / N(x)`.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroElement("inverse"));
        }
        let m = self.conductor();
        let mut acc = Self::one(m);
        for a in units_mod(m) {
            if a != 1 % m {
                acc = acc.mul(&galois_apply(&GaloisAuto::new_unchecked(m, a), self))?;
            }
        }
        let n = self.mul(&acc)?.to_rational().expect("norm is rational");
        Ok(acc.scale(&n.recip()))
    }

    /// Signed power `x^e`.
    pub fn zpow(&self, e: i64) -> Result<Self> {
        if e >= 0 {
            Ok(self.pow(e as u64))
        } else {
            Ok(self.inv()?.pow(e.unsigned_abs()))
        }
    }

    /// Image in `Q(zeta_big)` for a multiple `big` of the conductor.
    pub fn embed_into(&self, big: u64) -> Result<Self> {
        let m = self.conductor();
        if !big.is_multiple_of(m) {
            return Err(Error::NotASubfield { from: m, to: big });
        }
        let step = big / m;
        let field = field_data(big);
        let mut terms = vec![BigRational::zero(); ((self.degree() as u64 - 1) * step + 1) as usize];
        for (k, c) in self.coeffs.iter().enumerate() {
            terms[k * step as usize] = c.clone();
        }
        Ok(Self::reduce_monomials(&field, &terms))
    }

    /// Complex embedding `zeta_m -> exp(2 pi i a / m)`.
    pub fn complex_embedding(&self, a: u64) -> Complex64 {
        let m = self.conductor() as f64;
        self.coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| {
                let w = Complex64::from_polar(1.0, 2.0 * PI * (a as f64) * (k as f64) / m);
                w * c.to_f64().unwrap_or(f64::NAN)
            })
            .sum()
    }

    /// Value under the ring map `zeta_m -> root` into `Z/modulus`; `None` if a denominator is not invertible.
    pub fn eval_mod(&self, root: &BigInt, modulus: &BigInt) -> Option<BigInt> {
        let mut acc = BigInt::zero();
        let mut pw = BigInt::one();
        for c in &self.coeffs {
            if !c.is_zero() {
                let d = c.denom().mod_floor(modulus).modinv(modulus)?;
                acc = (acc + c.numer() * d % modulus * &pw) % modulus;
            }
            pw = pw * root % modulus;
        }
        Some(acc.mod_floor(modulus))
    }

    /// Coordinates as integers, when integral.
    pub fn int_coeffs(&self) -> Option<Vec<BigInt>> {
        self.is_integral().then(|| self.coeffs.iter().map(|c| c.to_integer()).collect())
    }
}

impl fmt::Display for CycElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (sign, mag) = if c.is_negative() { ("-", -c) } else { ("+", c.clone()) };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    if k == 1 {
                        write!(f, "z")?;
                    } else {
                        write!(f, "z^{k}")?;
                    }
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl Serialize for CycElem {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("CycElem", 2)?;
        st.serialize_field("conductor", &self.conductor())?;
        let cs: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        st.serialize_field("coeffs", &cs)?;
        st.end()
    }
}

pub fn cyc_mul(x: &CycElem, y: &CycElem) -> Result<CycElem> {
    x.mul(y)
}

/// Product of all conjugates of `x` over `Q`.
pub fn cyc_norm(x: &CycElem) -> BigRational {
    let m = x.conductor();
    let mut acc = CycElem::one(m);
    for a in units_mod(m) {
        acc = acc.mul(&galois_apply(&GaloisAuto::new_unchecked(m, a), x)).expect("same conductor");
    }
    acc.to_rational().expect("norm is rational")
}

/// `sigma_a : zeta_m -> zeta_m^a`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct GaloisAuto {
    pub conductor: u64,
    pub exponent: u64,
}

impl GaloisAuto {
    pub fn new(conductor: u64, exponent: i64) -> Result<Self> {
        let a = exponent.rem_euclid(conductor as i64) as u64;
        if arith::gcd(a, conductor) != 1 {
            return Err(Error::InvalidArgument(format!("exponent {exponent} is not a unit modulo {conductor}")));
        }
        Ok(Self::new_unchecked(conductor, a))
    }

    fn new_unchecked(conductor: u64, exponent: u64) -> Self {
        GaloisAuto { conductor, exponent: exponent % conductor }
    }

    pub fn identity(conductor: u64) -> Self {
        Self::new_unchecked(conductor, 1)
    }

    pub fn compose(&self, other: &Self) -> Self {
        Self::new_unchecked(self.conductor, self.exponent * other.exponent % self.conductor)
    }

    pub fn is_identity(&self) -> bool {
        self.exponent == 1 % self.conductor
    }
}

pub fn galois_apply(sigma: &GaloisAuto, x: &CycElem) -> CycElem {
    let m = x.conductor();
    debug_assert_eq!(sigma.conductor, m);
    let field = x.field.clone();
    let mut coeffs = vec![BigRational::zero(); field.degree];
    for (k, c) in x.coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        for (j, t) in field.power(sigma.exponent * k as u64).iter().enumerate() {
            if !t.is_zero() {
                coeffs[j] += c * t;
            }
        }
    }
    CycElem { field, coeffs }
}

/// A subgroup of `Gal(Q(zeta_m)/Q) = (Z/mZ)*`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GaloisGroup {
    pub conductor: u64,
    pub elements: Vec<u64>,
}

impl GaloisGroup {
    pub fn full(m: u64) -> Self {
        GaloisGroup { conductor: m, elements: units_mod(m) }
    }

    /// `Gal(Q(zeta_m)/Q(zeta_d))` for `d | m`: exponents congruent to 1 mod `d`.
    pub fn fixing(m: u64, d: u64) -> Result<Self> {
        if !m.is_multiple_of(d) {
            return Err(Error::NotASubfield { from: d, to: m });
        }
        let elements = units_mod(m).into_iter().filter(|a| a % d == 1 % d).collect();
        Ok(GaloisGroup { conductor: m, elements })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn autos(&self) -> impl Iterator<Item = GaloisAuto> + '_ {
        self.elements.iter().map(move |&a| GaloisAuto::new_unchecked(self.conductor, a))
    }

    pub fn is_closed(&self) -> bool {
        let m = self.conductor;
        self.elements.contains(&(1 % m))
            && self.elements.iter().all(|a| self.elements.iter().all(|b| self.elements.contains(&(a * b % m))))
    }

    /// A small generating set, chosen greedily in ascending exponent order.
    pub fn generators(&self) -> Vec<GaloisAuto> {
        let m = self.conductor;
        let mut gens = Vec::new();
        let mut span = vec![1 % m];
        for &a in &self.elements {
            if span.contains(&a) {
                continue;
            }
            gens.push(GaloisAuto::new_unchecked(m, a));
            // close the span under the new generator
            let mut frontier = span.clone();
            while let Some(x) = frontier.pop() {
                for g in &gens {
                    let y = x * g.exponent % m;
                    if !span.contains(&y) {
                        span.push(y);
                        frontier.push(y);
                    }
                }
            }
        }
        gens
    }
}

fn primes_congruent_one(modulus: u64) -> impl Iterator<Item = u64> {
    (1u64..).map(move |k| k * modulus + 1).filter(|&l| arith::is_prime(l))
}

/// Images of `zeta_m` in `F_l` for a prime `l = 1 mod m`, ascending.
fn roots_of_unity_mod(m: u64, l: u64) -> Vec<u64> {
    let g = arith::primitive_root(l);
    let z = arith::mod_pow(g, (l - 1) / m, l);
    let mut roots: Vec<u64> = units_mod(m).into_iter().map(|a| arith::mod_pow(z, a, l)).collect();
    roots.sort_unstable();
    roots
}

/// Scales `x` to an integral element `x * den^p` whose `p`-th roots are those of `x` times `den`.
fn integral_model(x: &CycElem, p: u64) -> (CycElem, BigInt) {
    let den = x.denominator();
    let scale = BigRational::from_integer(den.pow(p as u32));
    (x.scale(&scale), den)
}

const OBSTRUCTION_QUICK: usize = 12;
const OBSTRUCTION_FULL: usize = 400;

/// Looks for a prime `l` of `Q(zeta_m)`, split in `Q(zeta_m, zeta_p)`, modulo
/// which the integral element `y` is not a `p`-th power. Such a prime certifies
/// that `y` has no `p`-th root in the field.
fn find_obstruction(y: &CycElem, p: u64, skip: usize, count: usize) -> Option<u64> {
    let m = y.conductor();
    let step = arith::lcm(m, p);
    for l in primes_congruent_one(step).skip(skip).take(count) {
        let lb = BigInt::from(l);
        for r in roots_of_unity_mod(m, l) {
            let Some(v) = y.eval_mod(&BigInt::from(r), &lb) else { continue };
            let v = v.to_u64().expect("residue fits");
            if v != 0 && arith::mod_pow(v, (l - 1) / p, l) != 1 {
                return Some(l);
            }
        }
    }
    None
}

/// Max coefficient size of the Lagrange basis at the complex points `w_a`.
fn lagrange_coefficient_bounds(points: &[Complex64]) -> Vec<f64> {
    points
        .iter()
        .enumerate()
        .map(|(a, &wa)| {
            let mut poly = vec![Complex64::new(1.0, 0.0)];
            let mut den = Complex64::new(1.0, 0.0);
            for (b, &wb) in points.iter().enumerate() {
                if a == b {
                    continue;
                }
                let mut next = vec![Complex64::new(0.0, 0.0); poly.len() + 1];
                for (k, c) in poly.iter().enumerate() {
                    next[k + 1] += c;
                    next[k] -= c * wb;
                }
                poly = next;
                den *= wa - wb;
            }
            poly.iter().map(|c| (c / den).norm()).fold(0.0, f64::max)
        })
        .collect()
}

fn hensel_root(f: impl Fn(&BigInt) -> (BigInt, BigInt), start: u64, modulus: &BigInt) -> Option<BigInt> {
    let mut r = BigInt::from(start);
    // Newton doubles the number of correct l-adic digits per step
    let bits = modulus.bits() as usize + 2;
    for _ in 0..bits.next_power_of_two().trailing_zeros() + 2 {
        let (val, der) = f(&r);
        let inv = der.mod_floor(modulus).modinv(modulus)?;
        r = (r - val * inv).mod_floor(modulus);
    }
    let (val, _) = f(&r);
    val.mod_floor(modulus).is_zero().then_some(r)
}

/// Tries to construct an exact `p`-th root of the integral element `y` from its
/// residues at the split primes above one rational prime `l`.
fn reconstruct_root(y: &CycElem, p: u64) -> Option<CycElem> {
    let m = y.conductor();
    let n = y.degree();
    let points: Vec<Complex64> =
        units_mod(m).iter().map(|&a| Complex64::from_polar(1.0, 2.0 * PI * a as f64 / m as f64)).collect();
    let lag = lagrange_coefficient_bounds(&points);
    let bound: f64 =
        units_mod(m).iter().zip(&lag).map(|(&a, c)| y.complex_embedding(a).norm().powf(1.0 / p as f64) * c).sum();
    if !bound.is_finite() {
        return None;
    }
    let bound = BigInt::from((bound * 1.5).ceil() as u128 + 2);

    let field = y.field.clone();
    for l in primes_congruent_one(m).filter(|&l| l != p).take(8) {
        let lb = BigInt::from(l);
        let roots = roots_of_unity_mod(m, l);
        let Some(residues) = roots
            .iter()
            .map(|&r| y.eval_mod(&BigInt::from(r), &lb).filter(|v| !v.is_zero()))
            .collect::<Option<Vec<_>>>()
        else {
            continue;
        };
        let mut modulus = lb.clone();
        while modulus <= &bound * 2 {
            modulus *= &lb;
        }
        let phi = &field.modulus;
        let lifted: Vec<BigInt> = roots
            .iter()
            .map(|&r| {
                hensel_root(
                    |x| {
                        let mut v = BigInt::zero();
                        let mut d = BigInt::zero();
                        for c in phi.iter().rev() {
                            d = (d * x + &v) % &modulus;
                            v = (v * x + c) % &modulus;
                        }
                        (v, d)
                    },
                    r,
                    &modulus,
                )
                .expect("simple root of Phi_m lifts")
            })
            .collect();
        let targets: Vec<BigInt> = lifted.iter().map(|r| y.eval_mod(r, &modulus).expect("integral")).collect();
        // p-th roots at each place, lifted to the working modulus
        let mut choices: Vec<Vec<BigInt>> = Vec::with_capacity(n);
        for (res, tgt) in residues.iter().zip(&targets) {
            let res = res.to_u64().expect("small residue");
            let mut opts = Vec::new();
            for c in 1..l {
                if arith::mod_pow(c, p, l) == res {
                    let pb = BigInt::from(p);
                    let root = hensel_root(|x| (x.pow(p as u32) - tgt, &pb * x.pow(p as u32 - 1)), c, &modulus);
                    if let Some(root) = root {
                        opts.push(root);
                    }
                }
            }
            if opts.is_empty() {
                return None;
            }
            choices.push(opts);
        }
        let mut idx = vec![0usize; n];
        loop {
            let values: Vec<&BigInt> = idx.iter().zip(&choices).map(|(&i, c)| &c[i]).collect();
            if let Some(cand) = interpolate(&lifted, &values, &modulus, m) {
                if cand.pow(p) == *y {
                    return Some(cand);
                }
            }
            // advance the mixed-radix counter, last place fastest
            let mut k = n;
            loop {
                if k == 0 {
                    return None;
                }
                k -= 1;
                idx[k] += 1;
                if idx[k] < choices[k].len() {
                    break;
                }
                idx[k] = 0;
            }
        }
    }
    None
}

/// Lagrange interpolation modulo `modulus`; coefficients are lifted symmetrically.
fn interpolate(points: &[BigInt], values: &[&BigInt], modulus: &BigInt, m: u64) -> Option<CycElem> {
    let n = points.len();
    let mut coeffs = vec![BigInt::zero(); n];
    for a in 0..n {
        let mut poly = vec![BigInt::one()];
        let mut den = BigInt::one();
        for b in 0..n {
            if a == b {
                continue;
            }
            let mut next = vec![BigInt::zero(); poly.len() + 1];
            for (k, c) in poly.iter().enumerate() {
                next[k + 1] += c;
                next[k] -= c * &points[b];
            }
            poly = next.into_iter().map(|c| c.mod_floor(modulus)).collect();
            den = den * (&points[a] - &points[b]) % modulus;
        }
        let scale = values[a] * den.mod_floor(modulus).modinv(modulus)? % modulus;
        for (k, c) in poly.iter().enumerate() {
            coeffs[k] = (&coeffs[k] + c * &scale) % modulus;
        }
    }
    let coeffs = coeffs.iter().map(|c| BigRational::from_integer(arith::symmetric_mod(c, modulus))).collect();
    CycElem::from_coeffs(m, coeffs).ok()
}

/// Exact `p`-th root of `x` in its own cyclotomic field, or `None` when none exists.
///
/// A returned root is always checked by exact exponentiation. A `None` is only
/// returned with a certificate: a split prime modulo which `x` is not a `p`-th
/// power residue. If neither is found the call fails with `Inconclusive`.
pub fn pth_root_in_field(x: &CycElem, p: u64) -> Result<Option<CycElem>> {
    if x.is_zero() {
        return Err(Error::ZeroElement("p-th root"));
    }
    if !arith::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let (y, den) = integral_model(x, p);
    if find_obstruction(&y, p, 0, OBSTRUCTION_QUICK).is_some() {
        return Ok(None);
    }
    if let Some(root) = reconstruct_root(&y, p) {
        let root = root.scale(&BigRational::new(BigInt::one(), den));
        debug_assert_eq!(&root.pow(p), x);
        return Ok(Some(root));
    }
    if find_obstruction(&y, p, OBSTRUCTION_QUICK, OBSTRUCTION_FULL).is_some() {
        return Ok(None);
    }
    Err(Error::Inconclusive(x.to_string()))
}

pub fn is_pth_power(x: &CycElem, p: u64) -> Result<bool> {
    Ok(pth_root_in_field(x, p)?.is_some())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(m: u64) -> CycElem {
        CycElem::zeta(m)
    }

    fn int(m: u64, n: i64) -> CycElem {
        CycElem::from_int(m, n)
    }

    #[test]
    fn zeta4_squared_is_minus_one() {
        assert_eq!(z(4).mul(&z(4)).unwrap(), int(4, -1));
    }

    #[test]
    fn multiplicative_identity() {
        let x = CycElem::from_int_coeffs(12, &[3, -1, 0, 7]).unwrap();
        assert_eq!(x.mul(&int(12, 1)).unwrap(), x);
    }

    #[test]
    fn one_minus_zeta3_times_conjugate() {
        // (1 - z)(1 - z^2) = 1 - z - z^2 + z^3 = 2 - (z + z^2) = 2 + 1 = 3
        let a = int(3, 1).sub(&z(3)).unwrap();
        let b = int(3, 1).sub(&CycElem::zeta_pow(3, 2)).unwrap();
        assert_eq!(a.mul(&b).unwrap(), int(3, 3));
    }

    #[test]
    fn conductor_mismatch_rejected() {
        assert_eq!(z(3).mul(&z(4)), Err(Error::ConductorMismatch(3, 4)));
    }

    #[test]
    fn norms() {
        let r = |n: i64| BigRational::from_integer(n.into());
        assert_eq!(cyc_norm(&int(4, 2)), r(4));
        assert_eq!(cyc_norm(&int(4, 1).add(&z(4)).unwrap()), r(2));
        assert_eq!(cyc_norm(&int(3, 1).sub(&z(3)).unwrap()), r(3));
        assert_eq!(cyc_norm(&int(1, -7)), r(-7));
    }

    #[test]
    fn galois_examples() {
        let x = CycElem::from_int_coeffs(12, &[1, 2, 3, 4]).unwrap();
        assert_eq!(galois_apply(&GaloisAuto::identity(12), &x), x);
        let s = GaloisAuto::new(4, -1).unwrap();
        assert_eq!(galois_apply(&s, &z(4)), z(4).neg());
        let s5 = GaloisAuto::new(12, 5).unwrap();
        assert_eq!(galois_apply(&s5, &z(12)), CycElem::zeta_pow(12, 5));
        assert!(GaloisAuto::new(12, 4).is_err());
    }

    #[test]
    fn inverse_and_embedding() {
        let x = int(12, 1).sub(&z(12)).unwrap();
        assert!(x.mul(&x.inv().unwrap()).unwrap().is_one());
        // zeta_4 = zeta_12^3
        assert_eq!(z(4).embed_into(12).unwrap(), CycElem::zeta_pow(12, 3));
        assert!(z(4).embed_into(6).is_err());
    }

    #[test]
    fn pth_root_examples() {
        assert_eq!(pth_root_in_field(&int(4, 1), 2).unwrap().map(|r| r.pow(2)), Some(int(4, 1)));
        let r = pth_root_in_field(&int(4, -1), 2).unwrap().unwrap();
        assert!(r == z(4) || r == z(4).neg());
        assert_eq!(pth_root_in_field(&int(4, 2), 2).unwrap(), None);
        assert!(matches!(pth_root_in_field(&int(4, 0), 2), Err(Error::ZeroElement(_))));
    }

    #[test]
    fn pth_roots_with_denominators() {
        let x = CycElem::from_coeffs(
            3,
            vec![BigRational::new(1.into(), 2.into()), BigRational::new((-5).into(), 3.into())],
        )
        .unwrap();
        let c = x.pow(3);
        let r = pth_root_in_field(&c, 3).unwrap().unwrap();
        assert_eq!(r.pow(3), c);
        // -2 is a square in Q(zeta_8): (zeta + zeta^3)^2 = -2
        assert!(is_pth_power(&int(8, -2), 2).unwrap());
        assert!(!is_pth_power(&int(8, 3), 2).unwrap());
        // zeta_3 is a cube in Q(zeta_9) but not in Q(zeta_3)
        assert!(!is_pth_power(&z(3), 3).unwrap());
        assert!(is_pth_power(&CycElem::zeta_pow(9, 3), 3).unwrap());
    }

    #[test]
    fn subgroup_generators() {
        let g = GaloisGroup::fixing(12, 4).unwrap();
        assert_eq!(g.elements, vec![1, 5]);
        assert!(g.is_closed());
        let full = GaloisGroup::full(8);
        assert_eq!(full.generators().len(), 2);
        assert!(full.is_closed());
    }

    #[test]
    fn display() {
        let x = CycElem::from_int_coeffs(4, &[-1, 2]).unwrap();
        assert_eq!(x.to_string(), "-1 + 2*z");
        assert_eq!(int(1, 0).to_string(), "0");
    }
}
