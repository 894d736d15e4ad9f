//! Finite fields `F_{l^k}` as `F_l[t]/(g)` for the first irreducible monic `g`.

use std::fmt;

use serde::Serialize;

use crate::arith::{self, factor, mod_inv};
use crate::error::{Error, Result};
use crate::linalg::all_vectors;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiniteField {
    pub characteristic: u64,
    pub degree: usize,
    /// Monic modulus, lowest degree first, length `degree + 1`.
    pub modulus: Vec<u64>,
}

/// Coefficients in `F_l`, lowest degree first, length `degree`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Fq(pub Vec<u64>);

fn poly_rem(mut a: Vec<u64>, b: &[u64], l: u64) -> Vec<u64> {
    let db = b.len() - 1;
    let lead_inv = mod_inv(b[db], l).expect("nonzero leading coefficient");
    while a.len() > db {
        let c = a.pop().expect("nonempty") * lead_inv % l;
        if c == 0 {
            continue;
        }
        let shift = a.len() - db;
        for (j, &bj) in b[..db].iter().enumerate() {
            a[shift + j] = (a[shift + j] + (l - c) * bj % l) % l;
        }
    }
    a
}

fn is_irreducible(g: &[u64], l: u64) -> bool {
    let k = g.len() - 1;
    for d in 1..=k / 2 {
        for low in all_vectors(l, d) {
            let mut f = low;
            f.push(1);
            if poly_rem(g.to_vec(), &f, l).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

impl FiniteField {
    pub fn new(characteristic: u64, degree: usize) -> Result<Self> {
        if !arith::is_prime(characteristic) {
            return Err(Error::NotPrime(characteristic));
        }
        if degree == 0 {
            return Err(Error::InvalidArgument("field degree must be positive".into()));
        }
        let modulus = all_vectors(characteristic, degree)
            .map(|mut v| {
                v.reverse();
                v.push(1);
                v
            })
            .find(|g| is_irreducible(g, characteristic))
            .expect("irreducible polynomials exist in every degree");
        Ok(FiniteField { characteristic, degree, modulus })
    }

    /// Parses `F<q>` with `q` a prime power, e.g. `F9`.
    pub fn parse(s: &str) -> Result<Self> {
        let q: u64 = s
            .strip_prefix('F')
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| Error::InvalidArgument(format!("expected F<q>, got {s}")))?;
        let f = factor(q);
        if f.len() != 1 {
            return Err(Error::InvalidArgument(format!("{q} is not a prime power")));
        }
        Self::new(f[0].0, f[0].1 as usize)
    }

    pub fn order(&self) -> u64 {
        self.characteristic.pow(self.degree as u32)
    }

    pub fn zero(&self) -> Fq {
        Fq(vec![0; self.degree])
    }

    pub fn one(&self) -> Fq {
        self.from_int(1)
    }

    pub fn from_int(&self, n: i64) -> Fq {
        let mut v = vec![0; self.degree];
        v[0] = n.rem_euclid(self.characteristic as i64) as u64;
        Fq(v)
    }

    /// The class of `t`.
    pub fn generator(&self) -> Fq {
        let mut v = vec![0; self.degree.max(2)];
        v[1] = 1;
        Fq(poly_rem(v, &self.modulus, self.characteristic)
            .into_iter()
            .chain(std::iter::repeat(0))
            .take(self.degree)
            .collect())
    }

    pub fn add(&self, a: &Fq, b: &Fq) -> Fq {
        let l = self.characteristic;
        Fq(a.0.iter().zip(&b.0).map(|(x, y)| (x + y) % l).collect())
    }

    pub fn mul(&self, a: &Fq, b: &Fq) -> Fq {
        let l = self.characteristic;
        let mut prod = vec![0; 2 * self.degree - 1];
        for (i, x) in a.0.iter().enumerate() {
            for (j, y) in b.0.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % l;
            }
        }
        let mut r = poly_rem(prod, &self.modulus, l);
        r.resize(self.degree, 0);
        Fq(r)
    }

    pub fn pow(&self, a: &Fq, mut e: u64) -> Fq {
        let mut acc = self.one();
        let mut base = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    pub fn is_zero(&self, a: &Fq) -> bool {
        a.0.iter().all(|&c| c == 0)
    }

    pub fn inv(&self, a: &Fq) -> Result<Fq> {
        if self.is_zero(a) {
            return Err(Error::ZeroElement("inverse"));
        }
        Ok(self.pow(a, self.order() - 2))
    }

    pub fn elements(&self) -> impl Iterator<Item = Fq> + '_ {
        all_vectors(self.characteristic, self.degree).map(|mut v| {
            v.reverse();
            Fq(v)
        })
    }

    pub fn units(&self) -> impl Iterator<Item = Fq> + '_ {
        self.elements().filter(|a| !self.is_zero(a))
    }

    /// All `b` with `b^n = a`.
    pub fn roots(&self, a: &Fq, n: u64) -> Vec<Fq> {
        self.elements().filter(|b| self.pow(b, n) == *a).collect()
    }

    /// A generator of the multiplicative group.
    pub fn primitive_element(&self) -> Fq {
        let n = self.order() - 1;
        let fs = factor(n);
        self.units().find(|g| fs.iter().all(|&(q, _)| self.pow(g, n / q) != self.one())).expect("cyclic unit group")
    }

    /// `log_g(a)` for the primitive element `g`, by exhaustion.
    pub fn discrete_log(&self, a: &Fq) -> Option<u64> {
        let g = self.primitive_element();
        let mut x = self.one();
        for k in 0..self.order() - 1 {
            if x == *a {
                return Some(k);
            }
            x = self.mul(&x, &g);
        }
        None
    }

    pub fn format(&self, a: &Fq) -> String {
        FqDisplay(a).to_string()
    }
}

struct FqDisplay<'a>(&'a Fq);

impl fmt::Display for FqDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .0
             .0
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| match i {
                0 => c.to_string(),
                1 if c == 1 => "t".into(),
                1 => format!("{c}*t"),
                _ if c == 1 => format!("t^{i}"),
                _ => format!("{c}*t^{i}"),
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f9() {
        let f = FiniteField::parse("F9").unwrap();
        assert_eq!(f.modulus, vec![1, 0, 1]);
        assert_eq!(f.units().count(), 8);
        let minus_seven = f.from_int(-7);
        assert_eq!(f.roots(&minus_seven, 2).len(), 2);
        let t = f.generator();
        assert_eq!(f.mul(&t, &t), f.from_int(-1));
        for a in f.units() {
            assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), f.one());
        }
        assert_eq!(f.format(&t), "t");
    }

    #[test]
    fn prime_fields_and_f4() {
        let f7 = FiniteField::parse("F7").unwrap();
        assert_eq!(f7.discrete_log(&f7.one()), Some(0));
        assert_eq!(f7.roots(&f7.one(), 3).len(), 3);
        let f4 = FiniteField::parse("F4").unwrap();
        assert_eq!(f4.modulus, vec![1, 1, 1]);
        assert_eq!(f4.roots(&f4.one(), 3).len(), 3);
        assert!(FiniteField::parse("F6").is_err());
        assert!(FiniteField::parse("G9").is_err());
    }
}
