//! Finite-precision arithmetic in the completion `Q_p(zeta_M)` of a cyclotomic
//! field at its unique prime above `p`.
//!
//! When `p` does not split in `Q(zeta_M)`, `Phi_M` stays irreducible over
//! `Q_p`, so the completion is `Q_p[X]/Phi_M` and its ring of integers is
//! `Z_p[zeta_M]` with the power basis as integral basis. Elements are stored as
//! `p^(-shift) * X` with `X` integral and known modulo `p^precision`.
//!
//! Write `M = p^k * M'` with `p` prime to `M'`. Then `e = phi(p^k)` and `f` is
//! the order of `p` modulo `M'`. The uniformizer is `1 - zeta_{p^k}` when
//! `k >= 1` and `p` otherwise; `rho = p / pi` is kept as an exact integral
//! element so that `x / pi = x * rho / p`.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::arith::{self, canonical_conductor, euler_phi, mult_order, split_prime_part, units_mod};
use crate::cyclotomic::{cyc_norm, CycElem};
use crate::error::{Error, Result};
use crate::linalg::all_vectors;

/// The completion `L_hat = Q_p(zeta_M)`.
#[derive(Debug, Serialize)]
pub struct LocalFieldSpec {
    pub p: u64,
    pub conductor: u64,
    /// `Phi_M`, irreducible over `Q_p` because `p` does not split.
    pub defining_poly: Vec<String>,
    pub ramification: u64,
    pub residue_degree: u64,
    pub precision: u32,
    #[serde(skip)]
    modulus: Vec<BigInt>,
    #[serde(skip)]
    p_power: u64,
    #[serde(skip)]
    uniformizer: CycElem,
    #[serde(skip)]
    rho: CycElem,
}

/// `2e * ceil(p/(p-1)) + 4` p-adic digits: Hensel needs `v(a^p - u) > 2 v(p)`,
/// and the margin covers the digits consumed by uniformizer division.
pub fn precision_floor(p: u64, e: u64) -> u32 {
    (2 * e * p.div_ceil(p - 1) + 4) as u32
}

/// Number of primes above `p` in `Q(zeta_m)`.
pub fn primes_above(p: u64, m: u64) -> u64 {
    let (m_prime, _) = split_prime_part(m, p);
    euler_phi(m_prime) / mult_order(p, m_prime).expect("p prime to m'")
}

impl LocalFieldSpec {
    /// Ramification index and residue degree of `p` in `Q(zeta_m)`.
    pub fn local_degrees(p: u64, m: u64) -> (u64, u64) {
        let (m_prime, k) = split_prime_part(m, p);
        let e = euler_phi(p.pow(k));
        let f = mult_order(p, m_prime).expect("p prime to m'");
        (e, f)
    }

    pub fn default_precision(p: u64, m: u64) -> u32 {
        let m = canonical_conductor(m);
        let (e, _) = Self::local_degrees(p, m);
        precision_floor(p, e) + 8
    }

    pub fn new(p: u64, conductor: u64, precision: u32) -> Result<Arc<Self>> {
        if !arith::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let m = canonical_conductor(conductor);
        let g = primes_above(p, m);
        if g != 1 {
            return Err(Error::Hypothesis(format!("p = {p} splits into {g} primes in Q(zeta_{m})")));
        }
        let (m_prime, k) = split_prime_part(m, p);
        let (e, f) = Self::local_degrees(p, m);
        let floor = precision_floor(p, e);
        if precision < floor {
            return Err(Error::Precision { needed: floor as i64, available: precision as i64 });
        }
        let p_power = p.pow(k);
        let (uniformizer, rho) = if k == 0 {
            (CycElem::from_int(m, p as i64), CycElem::one(m))
        } else {
            let zp = CycElem::zeta_pow(m, m_prime as i64);
            let one = CycElem::one(m);
            let pi = one.sub(&zp)?;
            let mut rho = CycElem::one(m);
            for a in units_mod(p_power) {
                if a != 1 {
                    rho = rho.mul(&one.sub(&zp.pow(a))?)?;
                }
            }
            (pi, rho)
        };
        debug_assert_eq!(uniformizer.mul(&rho)?, CycElem::from_int(m, p as i64));
        let modulus = arith::cyclotomic_poly(m);
        Ok(Arc::new(LocalFieldSpec {
            p,
            conductor: m,
            defining_poly: modulus.iter().map(|c| c.to_string()).collect(),
            ramification: e,
            residue_degree: f,
            precision,
            modulus,
            p_power,
            uniformizer,
            rho,
        }))
    }

    pub fn with_default_precision(p: u64, conductor: u64) -> Result<Arc<Self>> {
        Self::new(p, conductor, Self::default_precision(p, conductor))
    }

    pub fn degree(&self) -> u64 {
        self.ramification * self.residue_degree
    }

    pub fn contains_mu_p(&self) -> bool {
        self.p == 2 || self.p_power > 1
    }

    /// `dim_{F_p} L^* / (L^*)^p = 1 + [L : Q_p] + [mu_p in L]`.
    pub fn power_class_dimension(&self) -> usize {
        1 + self.degree() as usize + usize::from(self.contains_mu_p())
    }

    pub fn uniformizer(self: &Arc<Self>) -> PadicElem {
        embed_global(&self.uniformizer, self).expect("uniformizer embeds")
    }

    /// A root of unity generating the `p`-power torsion together with the tame part.
    pub fn torsion_generator(self: &Arc<Self>) -> PadicElem {
        let m = self.conductor;
        let z = if m.is_multiple_of(2) { CycElem::zeta(m) } else { CycElem::zeta(m).neg() };
        embed_global(&z, self).expect("root of unity embeds")
    }

    fn modulus_big(&self, digits: u32) -> BigInt {
        BigInt::from(self.p).pow(digits)
    }

    /// Representatives `sum c_s eta^s` (`c_s < p`, `s < f`) of the residue field,
    /// where `eta = zeta_{M'}` reduces to a generator of `F_{p^f}` over `F_p`.
    fn residue_representatives(self: &Arc<Self>) -> Vec<PadicElem> {
        let m = self.conductor;
        let eta = CycElem::zeta_pow(m, self.p_power as i64);
        let powers: Vec<CycElem> = (0..self.residue_degree).map(|s| eta.pow(s)).collect();
        all_vectors(self.p, self.residue_degree as usize)
            .map(|c| {
                let mut acc = CycElem::zero(m);
                for (cs, pw) in c.iter().zip(&powers) {
                    acc = acc.add(&pw.scale(&BigRational::from_integer((*cs).into()))).unwrap();
                }
                if acc.is_zero() {
                    self.zero()
                } else {
                    embed_global(&acc, self).expect("integral")
                }
            })
            .collect()
    }

    pub fn zero(self: &Arc<Self>) -> PadicElem {
        PadicElem {
            spec: self.clone(),
            coeffs: vec![BigInt::zero(); self.modulus.len() - 1],
            shift: 0,
            precision: self.precision,
        }
    }

    /// Residue-field basis `eta^s`, `s < f`, as local elements.
    fn residue_basis(self: &Arc<Self>) -> Vec<PadicElem> {
        let m = self.conductor;
        let eta = CycElem::zeta_pow(m, self.p_power as i64);
        (0..self.residue_degree).map(|s| embed_global(&eta.pow(s), self).expect("integral")).collect()
    }

    pub fn from_rational(self: &Arc<Self>, q: &BigRational) -> Result<PadicElem> {
        embed_global(&CycElem::from_rational(self.conductor, q.clone()), self)
    }

    pub fn from_int(self: &Arc<Self>, n: i64) -> Result<PadicElem> {
        self.from_rational(&BigRational::from_integer(n.into()))
    }
}

/// `p^(-shift) * X` with `X` in `Z_p[zeta_M]` known modulo `p^precision`.
#[derive(Clone)]
pub struct PadicElem {
    spec: Arc<LocalFieldSpec>,
    coeffs: Vec<BigInt>,
    shift: i64,
    precision: u32,
}

impl fmt::Debug for PadicElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PadicElem(p^{} * {:?} + O(p^{}))", -self.shift, self.symmetric_coeffs(), self.precision)
    }
}

impl Serialize for PadicElem {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("PadicElem", 3)?;
        st.serialize_field("shift", &self.shift)?;
        st.serialize_field("precision", &self.precision)?;
        let cs: Vec<String> = self.symmetric_coeffs().iter().map(|c| c.to_string()).collect();
        st.serialize_field("coeffs", &cs)?;
        st.end()
    }
}

fn reduce_poly(mut poly: Vec<BigInt>, modulus: &[BigInt], pn: &BigInt) -> Vec<BigInt> {
    let n = modulus.len() - 1;
    for k in (n..poly.len()).rev() {
        let c = std::mem::take(&mut poly[k]);
        if c.is_zero() {
            continue;
        }
        for (j, d) in modulus[..n].iter().enumerate() {
            poly[k - n + j] -= &c * d;
        }
    }
    poly.truncate(n);
    poly.resize(n, BigInt::zero());
    poly.into_iter().map(|c| c.mod_floor(pn)).collect()
}

impl PadicElem {
    pub fn spec(&self) -> &Arc<LocalFieldSpec> {
        &self.spec
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn shift(&self) -> i64 {
        self.shift
    }

    /// Coordinates of `X` lifted to `(-p^N/2, p^N/2]`.
    pub fn symmetric_coeffs(&self) -> Vec<BigInt> {
        let pn = self.spec.modulus_big(self.precision);
        self.coeffs.iter().map(|c| arith::symmetric_mod(c, &pn)).collect()
    }

    /// The represented value as a rational, when it lies in `Q_p` and fits the symmetric lift.
    pub fn to_rational_approx(&self) -> Option<BigRational> {
        let cs = self.symmetric_coeffs();
        if cs[1..].iter().any(|c| !c.is_zero()) {
            return None;
        }
        let den = BigInt::from(self.spec.p).pow(self.shift.max(0) as u32);
        let num = &cs[0] * BigInt::from(self.spec.p).pow((-self.shift).max(0) as u32);
        Some(BigRational::new(num, den))
    }

    fn same_field(&self, other: &Self) -> Result<()> {
        if !Arc::ptr_eq(&self.spec, &other.spec)
            && (self.spec.p, self.spec.conductor) != (other.spec.p, other.spec.conductor)
        {
            return Err(Error::ConductorMismatch(self.spec.conductor, other.spec.conductor));
        }
        Ok(())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        Ok(self.mul_raw(other)?.normalized())
    }

    /// Product without moving factors of `p` into the shift.
    fn mul_raw(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        let precision = self.precision.min(other.precision);
        let pn = self.spec.modulus_big(precision);
        let prod = arith::poly_mul(&self.coeffs, &other.coeffs);
        Ok(PadicElem {
            spec: self.spec.clone(),
            coeffs: reduce_poly(prod, &self.spec.modulus, &pn),
            shift: self.shift + other.shift,
            precision,
        })
    }

    /// The same value with shift `0`, for elements that are integral.
    fn integral_form(&self) -> Self {
        debug_assert!(self.shift <= 0);
        PadicElem { shift: 0, ..self.mul_p((-self.shift) as u32) }
    }

    /// Moves common factors of `p` from the integral part into the shift.
    fn normalized(mut self) -> Self {
        let pb = BigInt::from(self.spec.p);
        while self.precision > 0 && !self.is_zero_at_precision() && self.coeffs.iter().all(|c| (c % &pb).is_zero()) {
            self = self.div_p(1);
            self.shift -= 1;
        }
        self
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.combine(other, true)
    }

    fn combine(&self, other: &Self, negate: bool) -> Result<Self> {
        self.same_field(other)?;
        let s = self.shift.max(other.shift);
        let a = PadicElem { shift: s, ..self.mul_p((s - self.shift) as u32) };
        let b = PadicElem { shift: s, ..other.mul_p((s - other.shift) as u32) };
        Ok(a.add_aligned(&b, negate).normalized())
    }

    /// Sum of two elements with the same shift.
    fn add_aligned(&self, other: &Self, negate: bool) -> Self {
        debug_assert_eq!(self.shift, other.shift);
        let precision = self.precision.min(other.precision);
        let pn = self.spec.modulus_big(precision);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| if negate { a - b } else { a + b }.mod_floor(&pn))
            .collect();
        PadicElem { spec: self.spec.clone(), coeffs, shift: self.shift, precision }
    }

    pub fn pow(&self, e: u64) -> Self {
        self.pow_raw(e).normalized()
    }

    fn pow_raw(&self, mut e: u64) -> Self {
        let mut acc = self.one_like();
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_raw(&base).expect("same field");
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_raw(&base).expect("same field");
            }
        }
        acc
    }

    fn one_like(&self) -> Self {
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len()];
        coeffs[0] = BigInt::one();
        PadicElem { spec: self.spec.clone(), coeffs, shift: 0, precision: self.precision }
    }

    pub fn is_zero_at_precision(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    fn divisible_by_p(&self, k: u32) -> Result<bool> {
        if self.precision < k {
            return Err(Error::Precision { needed: k as i64, available: self.precision as i64 });
        }
        let pk = self.spec.modulus_big(k);
        Ok(self.coeffs.iter().all(|c| (c % &pk).is_zero()))
    }

    /// Exact division of the integral part by `p^k`.
    fn div_p(&self, k: u32) -> Self {
        let pk = self.spec.modulus_big(k);
        PadicElem {
            spec: self.spec.clone(),
            coeffs: self.coeffs.iter().map(|c| c / &pk).collect(),
            shift: self.shift,
            precision: self.precision - k,
        }
    }

    /// Multiplies the integral part by `p^k`; absolute precision grows by `k`.
    fn mul_p(&self, k: u32) -> Self {
        let pk = self.spec.modulus_big(k);
        PadicElem {
            spec: self.spec.clone(),
            coeffs: self.coeffs.iter().map(|c| c * &pk).collect(),
            shift: self.shift,
            precision: self.precision + k,
        }
    }

    fn rho(&self) -> PadicElem {
        let mut r = embed_global(&self.spec.rho, &self.spec).expect("integral").integral_form();
        r.precision = self.precision;
        let pn = self.spec.modulus_big(self.precision);
        r.coeffs = r.coeffs.iter().map(|c| c.mod_floor(&pn)).collect();
        r
    }

    /// Tests `X in pi^j O` on the integral part.
    fn in_pi_power(&self, j: u64) -> Result<bool> {
        let e = self.spec.ramification;
        let (q, r) = ((j / e) as u32, (j % e) as u32);
        if self.precision < q + r {
            return Err(Error::Precision { needed: (q + r) as i64, available: self.precision as i64 });
        }
        if !self.divisible_by_p(q)? {
            return Ok(false);
        }
        if r == 0 {
            return Ok(true);
        }
        let y = self.div_p(q);
        y.mul_raw(&y.rho().pow_raw(r as u64))?.divisible_by_p(r)
    }

    /// `pi`-adic valuation of the integral part and the unit left after removing it.
    fn split_uniformizer(&self) -> Result<(i64, PadicElem)> {
        if self.is_zero_at_precision() {
            return Err(Error::IndistinguishableFromZero(self.precision as i64));
        }
        let e = self.spec.ramification as i64;
        let mut x = self.clone();
        let mut v = 0;
        while x.divisible_by_p(1)? {
            x = x.div_p(1);
            v += e;
            if x.is_zero_at_precision() {
                return Err(Error::IndistinguishableFromZero(self.precision as i64));
            }
        }
        // now 0 <= v_pi(x) < e
        let rho = x.rho();
        loop {
            let y = x.mul_raw(&rho)?;
            if !y.divisible_by_p(1)? {
                break;
            }
            x = y.div_p(1);
            v += 1;
        }
        Ok((v, PadicElem { shift: 0, ..x }))
    }

    /// `v_pi` computed by successive division by the uniformizer.
    pub fn pi_adic_valuation(&self) -> Result<i64> {
        let (v, _) = self.split_uniformizer()?;
        Ok(v - self.spec.ramification as i64 * self.shift)
    }
}

/// Localization `Q(zeta_d) -> Q_p(zeta_M)` for `d | M`.
pub fn embed_global(x: &CycElem, spec: &Arc<LocalFieldSpec>) -> Result<PadicElem> {
    if x.is_zero() {
        return Err(Error::ZeroElement("local image"));
    }
    let x = x.embed_into(spec.conductor)?;
    let p = spec.p;
    // smallest shift making every coefficient p-integral
    let shift = x
        .coeffs()
        .iter()
        .filter(|c| !c.is_zero())
        .map(|c| arith::valuation(c.denom(), p) as i64 - arith::valuation(c.numer(), p) as i64)
        .max()
        .unwrap_or(0);
    let pn = spec.modulus_big(spec.precision);
    let pb = BigInt::from(p);
    let coeffs = x
        .coeffs()
        .iter()
        .map(|c| {
            if c.is_zero() {
                return BigInt::zero();
            }
            let vd = arith::valuation(c.denom(), p) as i64;
            let vn = arith::valuation(c.numer(), p) as i64;
            let unit_den = c.denom() / pb.pow(vd as u32);
            let unit_num = c.numer() / pb.pow(vn as u32);
            let num = unit_num * pb.pow((vn - vd + shift) as u32);
            let inv = unit_den.mod_floor(&pn).modinv(&pn).expect("prime-to-p denominator");
            (num * inv).mod_floor(&pn)
        })
        .collect();
    Ok(PadicElem { spec: spec.clone(), coeffs, shift, precision: spec.precision })
}

/// Fraction-free determinant (Bareiss) of an integer matrix.
fn det_bareiss(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            let Some(sw) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else { return BigInt::zero() };
            a.swap(k, sw);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// `N_{L/Q_p}(X) mod p^precision` as the determinant of multiplication by `X`.
fn local_norm_integral(x: &PadicElem) -> BigInt {
    let n = x.coeffs.len();
    let spec = &x.spec;
    let pn = spec.modulus_big(x.precision);
    let mut cols = Vec::with_capacity(n);
    let mut cur = x.coeffs.clone();
    for _ in 0..n {
        cols.push(cur.clone());
        let mut shifted = vec![BigInt::zero()];
        shifted.extend(cur.iter().cloned());
        cur = reduce_poly(shifted, &spec.modulus, &pn);
    }
    let rows: Vec<Vec<BigInt>> = (0..n).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect();
    det_bareiss(rows).mod_floor(&pn)
}

/// `v_pi(x) = v_p(N(x)) / f`.
pub fn local_valuation(x: &PadicElem) -> Result<i64> {
    let nrm = local_norm_integral(x);
    if nrm.is_zero() {
        return Err(Error::IndistinguishableFromZero(x.precision as i64));
    }
    let vp = arith::valuation(&nrm, x.spec.p) as i64;
    let f = x.spec.residue_degree as i64;
    debug_assert_eq!(vp % f, 0);
    Ok(vp / f - x.spec.ramification as i64 * x.shift)
}

/// Decides `x in (L^*)^p`.
///
/// After clearing the valuation, a unit `u` is a `p`-th power iff some `a` has
/// `v(a^p - u) > 2 v(p) = 2e` (Hensel). Candidates `a = a0 + pi z` are grown
/// digit by digit in `z`; a digit prefix mod `pi^j` already fixes `a^p` modulo
/// `pi^min(e+j+1, p(j+1))`, so inconsistent prefixes are pruned early.
pub fn is_pth_power_local(x: &PadicElem) -> Result<bool> {
    let spec = x.spec.clone();
    let p = spec.p;
    let e = spec.ramification;
    // x * p^(p*c) has no denominator for a suitable c and the same class
    let k = (-x.shift).rem_euclid(p as i64) as u32;
    let integral = PadicElem { shift: 0, ..x.mul_p(k) };
    debug_assert!((k as i64 + x.shift) % p as i64 == 0);
    let (v, u) = integral.split_uniformizer()?;
    if v % p as i64 != 0 {
        return Ok(false);
    }
    let target = 2 * e + 1;
    let needed = (target / e + target % e) as u32;
    if u.precision < needed {
        return Err(Error::Precision { needed: needed as i64, available: u.precision as i64 });
    }

    let reps: Vec<PadicElem> = spec.residue_representatives();
    let trunc = |y: &PadicElem| PadicElem {
        precision: u.precision,
        coeffs: y.coeffs.iter().map(|c| c.mod_floor(&spec.modulus_big(u.precision))).collect(),
        ..y.clone()
    };
    let a0 = reps
        .iter()
        .map(trunc)
        .find(|t| t.pow_raw(p).add_aligned(&u, true).in_pi_power(1).unwrap_or(false))
        .expect("Frobenius is bijective on the residue field");
    let pi = trunc(&spec.uniformizer().integral_form());
    let pi_powers: Vec<PadicElem> = (0..=target).map(|j| pi.pow_raw(j)).collect();
    let reps: Vec<PadicElem> = reps.iter().map(trunc).collect();

    let mut level = vec![PadicElem { coeffs: vec![BigInt::zero(); u.coeffs.len()], ..u.clone() }];
    for j in 0..2 * e + 1 {
        let depth = (e + j + 1).min(p * (j + 1)).min(target);
        let mut survivors = Vec::new();
        for z in level {
            let a = a0.add_aligned(&pi_powers[1].mul_raw(&z)?, false);
            if a.pow_raw(p).add_aligned(&u, true).in_pi_power(depth)? {
                survivors.push(z);
            }
        }
        if survivors.is_empty() {
            return Ok(false);
        }
        if j == 2 * e {
            return Ok(true);
        }
        level = Vec::with_capacity(survivors.len() * reps.len());
        for z in &survivors {
            for t in &reps {
                level.push(z.add_aligned(&t.mul_raw(&pi_powers[j as usize])?, false));
            }
        }
    }
    unreachable!("loop returns at the last level")
}

/// Product `prod b_i^{e_i}`.
pub fn local_product(basis: &[PadicElem], exps: &[u64], spec: &Arc<LocalFieldSpec>) -> Result<PadicElem> {
    let mut acc = spec.from_int(1)?;
    for (b, &k) in basis.iter().zip(exps) {
        if k > 0 {
            acc = acc.mul(&b.pow(k))?;
        }
    }
    Ok(acc)
}

/// Exponents `c` with `x * prod b_i^{c_i}` a `p`-th power, by exhaustive search
/// in lexicographic order. `x` then has coordinates `-c` in the span of `basis`.
pub fn local_relation(x: &PadicElem, basis: &[PadicElem]) -> Result<Option<Vec<u64>>> {
    let spec = x.spec.clone();
    for c in all_vectors(spec.p, basis.len()) {
        if is_pth_power_local(&x.mul(&local_product(basis, &c, &spec)?)?)? {
            return Ok(Some(c));
        }
    }
    Ok(None)
}

/// Coordinates of the class of `x` in the span of `basis`, if it lies there.
pub fn local_coordinates(x: &PadicElem, basis: &[PadicElem]) -> Result<Option<Vec<u64>>> {
    let p = x.spec.p;
    Ok(local_relation(x, basis)?.map(|c| c.iter().map(|&v| (p - v) % p).collect()))
}

/// Greedy reduction of a spanning list to an `F_p`-independent sublist.
pub fn reduce_local_basis(candidates: &[PadicElem]) -> Result<Vec<PadicElem>> {
    let mut basis: Vec<PadicElem> = Vec::new();
    for c in candidates {
        if local_relation(c, &basis)?.is_none() {
            basis.push(c.clone());
        }
    }
    Ok(basis)
}

/// True when the two lists generate the same subgroup of `L^*/(L^*)^p`.
pub fn same_subgroup(a: &[PadicElem], b: &[PadicElem]) -> Result<bool> {
    for x in a {
        if local_coordinates(x, b)?.is_none() {
            return Ok(false);
        }
    }
    for y in b {
        if local_coordinates(y, a)?.is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// An `F_p`-basis of `L^*/(L^*)^p`.
///
/// Spanning set: the uniformizer, a root of unity carrying the `p`-power
/// torsion, and the principal units `1 + t pi^i` with `t` running over a
/// residue-field basis and `1 <= i <= ep/(p-1)`; higher principal units are
/// `p`-th powers. The reduced basis is checked against the known dimension.
pub fn local_power_class_generators(spec: &Arc<LocalFieldSpec>) -> Result<Vec<PadicElem>> {
    let p = spec.p;
    let e = spec.ramification;
    let pi = spec.uniformizer();
    let one = spec.from_int(1)?;
    let mut candidates = vec![pi.clone(), spec.torsion_generator()];
    let top = e * p / (p - 1);
    let tb = spec.residue_basis();
    for i in 1..=top {
        let pi_i = pi.pow(i);
        for t in &tb {
            candidates.push(one.add(&t.mul(&pi_i)?)?);
        }
    }
    let basis = reduce_local_basis(&candidates)?;
    let expected = spec.power_class_dimension();
    if basis.len() != expected {
        return Err(Error::UnitRankDeficit { found: basis.len(), expected });
    }
    Ok(basis)
}

/// Local image of a global element as a `p`-th power test.
pub fn is_local_pth_power_global(x: &CycElem, spec: &Arc<LocalFieldSpec>) -> Result<bool> {
    is_pth_power_local(&embed_global(x, spec)?)
}

/// `v_p` of the global norm divided by `f`; an exact oracle for `local_valuation` on global inputs.
pub fn global_valuation_oracle(x: &CycElem, spec: &LocalFieldSpec) -> i64 {
    let x = x.embed_into(spec.conductor).expect("subfield");
    let n = cyc_norm(&x);
    let vn = arith::valuation(n.numer(), spec.p) as i64;
    let vd = arith::valuation(n.denom(), spec.p) as i64;
    (vn - vd) / spec.residue_degree as i64
}
