//! The extensions `T(r)` of `Z/p` by `mu_p` attached to a unit `r`.
//!
//! An `A`-valued point is a pair `(a, i)` with `0 <= i < p` and `a^p = r^i`,
//! written `(a, i/p)`. The group law is
//! `(a, i)(b, j) = (ab, i + j)` if `i + j < p` and `(ab/r, i + j - p)` otherwise.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::cyclotomic::{pth_root_in_field, CycElem};
use crate::error::{Error, Result};
use crate::finite_field::{FiniteField, Fq};
use crate::local::{is_pth_power_local, LocalFieldSpec, PadicElem};

/// A coefficient ring in which classes modulo `p`-th powers can be decided.
pub trait PowerClassRing {
    type Elem: Clone + fmt::Debug;

    fn describe(&self) -> String;
    fn one(&self) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem>;
    fn is_pth_power(&self, a: &Self::Elem, p: u64) -> Result<bool>;

    fn pow(&self, a: &Self::Elem, e: u64) -> Result<Self::Elem> {
        let mut acc = self.one();
        for _ in 0..e {
            acc = self.mul(&acc, a)?;
        }
        Ok(acc)
    }
}

/// A ring whose points can be multiplied out exactly.
pub trait PointRing: PowerClassRing {
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem>;
    fn same(&self, a: &Self::Elem, b: &Self::Elem) -> bool;
    fn format(&self, a: &Self::Elem) -> String;
}

/// `Q(zeta_m)`, with `m = 1` for `Q`.
#[derive(Clone, Debug)]
pub struct NumberField {
    pub conductor: u64,
}

impl PowerClassRing for NumberField {
    type Elem = CycElem;

    fn describe(&self) -> String {
        if self.conductor == 1 {
            "Q".into()
        } else {
            format!("Q(zeta_{})", self.conductor)
        }
    }

    fn one(&self) -> CycElem {
        CycElem::one(self.conductor)
    }

    fn mul(&self, a: &CycElem, b: &CycElem) -> Result<CycElem> {
        a.mul(b)
    }

    fn is_pth_power(&self, a: &CycElem, p: u64) -> Result<bool> {
        Ok(pth_root_in_field(a, p)?.is_some())
    }

    fn pow(&self, a: &CycElem, e: u64) -> Result<CycElem> {
        Ok(a.pow(e))
    }
}

impl PointRing for NumberField {
    fn inv(&self, a: &CycElem) -> Result<CycElem> {
        a.inv()
    }

    fn same(&self, a: &CycElem, b: &CycElem) -> bool {
        a == b
    }

    fn format(&self, a: &CycElem) -> String {
        a.to_string()
    }
}

impl PowerClassRing for FiniteField {
    type Elem = Fq;

    fn describe(&self) -> String {
        format!("F_{}", self.order())
    }

    fn one(&self) -> Fq {
        FiniteField::one(self)
    }

    fn mul(&self, a: &Fq, b: &Fq) -> Result<Fq> {
        Ok(FiniteField::mul(self, a, b))
    }

    /// Decided by exhausting the field.
    fn is_pth_power(&self, a: &Fq, p: u64) -> Result<bool> {
        Ok(!self.roots(a, p).is_empty())
    }

    fn pow(&self, a: &Fq, e: u64) -> Result<Fq> {
        Ok(FiniteField::pow(self, a, e))
    }
}

impl PointRing for FiniteField {
    fn inv(&self, a: &Fq) -> Result<Fq> {
        FiniteField::inv(self, a)
    }

    fn same(&self, a: &Fq, b: &Fq) -> bool {
        a == b
    }

    fn format(&self, a: &Fq) -> String {
        FiniteField::format(self, a)
    }
}

/// A cyclotomic completion `Q_p(zeta_M)`.
#[derive(Clone, Debug)]
pub struct LocalRing(pub Arc<LocalFieldSpec>);

impl PowerClassRing for LocalRing {
    type Elem = PadicElem;

    fn describe(&self) -> String {
        if self.0.conductor == 1 {
            format!("Q_{}", self.0.p)
        } else {
            format!("Q_{}(zeta_{})", self.0.p, self.0.conductor)
        }
    }

    fn one(&self) -> PadicElem {
        self.0.from_int(1).expect("one embeds")
    }

    fn mul(&self, a: &PadicElem, b: &PadicElem) -> Result<PadicElem> {
        a.mul(b)
    }

    fn is_pth_power(&self, a: &PadicElem, p: u64) -> Result<bool> {
        if p != self.0.p {
            return Err(Error::InvalidArgument(format!("local field is {}-adic, asked about {p}-th powers", self.0.p)));
        }
        is_pth_power_local(a)
    }

    fn pow(&self, a: &PadicElem, e: u64) -> Result<PadicElem> {
        Ok(a.pow(e))
    }
}

/// `T(r)` over a ring; `root` is `s` when the scheme was built as `T(s^p)`.
#[derive(Clone, Debug)]
pub struct TScheme<'a, R: PointRing> {
    pub ring: &'a R,
    pub p: u64,
    pub r: R::Elem,
    pub root: Option<R::Elem>,
}

#[derive(Clone, Debug)]
pub struct TPoint<R: PointRing> {
    pub a: R::Elem,
    pub i: u64,
}

impl<'a, R: PointRing> TScheme<'a, R> {
    pub fn new(ring: &'a R, p: u64, r: R::Elem) -> Result<Self> {
        ring.inv(&r).map_err(|_| Error::InvalidArgument("r must be a unit".into()))?;
        Ok(TScheme { ring, p, r, root: None })
    }

    /// `T(s^p)`, which splits.
    pub fn split(ring: &'a R, p: u64, s: R::Elem) -> Result<Self> {
        let r = ring.pow(&s, p)?;
        let mut t = Self::new(ring, p, r)?;
        t.root = Some(s);
        Ok(t)
    }

    pub fn point(&self, a: R::Elem, i: u64) -> Result<TPoint<R>> {
        if i >= self.p {
            return Err(Error::InvalidArgument(format!("index {i} must be below p = {}", self.p)));
        }
        let lhs = self.ring.pow(&a, self.p)?;
        let rhs = self.ring.pow(&self.r, i)?;
        if !self.ring.same(&lhs, &rhs) {
            return Err(Error::InvalidArgument(format!("{}^{} != r^{i}", self.ring.format(&a), self.p)));
        }
        Ok(TPoint { a, i })
    }

    pub fn identity(&self) -> TPoint<R> {
        TPoint { a: self.ring.one(), i: 0 }
    }

    pub fn same_point(&self, u: &TPoint<R>, v: &TPoint<R>) -> bool {
        u.i == v.i && self.ring.same(&u.a, &v.a)
    }

    pub fn format_point(&self, u: &TPoint<R>) -> String {
        format!("({}, {}/{})", self.ring.format(&u.a), u.i, self.p)
    }
}

pub fn t_group_law<R: PointRing>(t: &TScheme<'_, R>, u: &TPoint<R>, v: &TPoint<R>) -> Result<TPoint<R>> {
    let ab = t.ring.mul(&u.a, &v.a)?;
    let s = u.i + v.i;
    if s < t.p {
        Ok(TPoint { a: ab, i: s })
    } else {
        Ok(TPoint { a: t.ring.mul(&ab, &t.ring.inv(&t.r)?)?, i: s - t.p })
    }
}

/// `(a, i/p) = (a s^{-i}, 0) x (s^i, i/p)` on `T(s^p)`.
pub fn t_split_decompose<R: PointRing>(t: &TScheme<'_, R>, u: &TPoint<R>) -> Result<(TPoint<R>, TPoint<R>)> {
    let s =
        t.root.as_ref().ok_or_else(|| Error::InvalidArgument("scheme unit was not supplied as a p-th power".into()))?;
    let si = t.ring.pow(s, u.i)?;
    let first = TPoint { a: t.ring.mul(&u.a, &t.ring.inv(&si)?)?, i: 0 };
    let second = TPoint { a: si, i: u.i };
    Ok((first, second))
}

/// Whether `x` lies in the subgroup generated by `y` modulo `p`-th powers.
fn in_cyclic_span<R: PowerClassRing>(ring: &R, p: u64, x: &R::Elem, y: &R::Elem) -> Result<bool> {
    let mut yc = ring.one();
    for _ in 0..p {
        if ring.is_pth_power(&ring.mul(x, &yc)?, p)? {
            return Ok(true);
        }
        yc = ring.mul(&yc, y)?;
    }
    Ok(false)
}

/// `T(r) = T(r')` iff `r` and `r'` generate the same subgroup of `R^*/(R^*)^p`.
pub fn t_isomorphic<R: PowerClassRing>(ring: &R, p: u64, r: &R::Elem, r2: &R::Elem) -> Result<bool> {
    Ok(in_cyclic_span(ring, p, r, r2)? && in_cyclic_span(ring, p, r2, r)?)
}

#[derive(Clone, Debug, Serialize)]
pub struct PointGroupReport {
    pub p: u64,
    pub field: String,
    pub r: String,
    pub points: Vec<String>,
    pub table: Vec<Vec<usize>>,
    pub order: usize,
    pub closed: bool,
    pub associative: bool,
    pub commutative: bool,
    pub has_identity: bool,
    pub has_inverses: bool,
    /// Inverse of `(a, i)` is `(r/a, p - i)` for `i > 0` and `(1/a, 0)` for `i = 0`.
    pub inverse_closed_form: bool,
    pub fiber_zero_is_mu_p: bool,
    pub projection_is_homomorphism: bool,
    pub projection_is_surjective: bool,
    pub kernel_is_fiber_zero: bool,
    /// Every point decomposes and recomposes, when `r` is given as `s^p`.
    pub split_round_trip: Option<bool>,
}

impl PointGroupReport {
    pub fn is_extension(&self) -> bool {
        self.order == (self.p * self.p) as usize
            && self.closed
            && self.associative
            && self.commutative
            && self.has_identity
            && self.has_inverses
            && self.fiber_zero_is_mu_p
            && self.projection_is_homomorphism
            && self.projection_is_surjective
            && self.kernel_is_fiber_zero
            && self.split_round_trip.unwrap_or(true)
    }
}

/// Enumerates all points of `T(r)` over a finite field and checks the group structure.
pub fn t_point_group(t: &TScheme<'_, FiniteField>) -> Result<PointGroupReport> {
    let (f, p) = (t.ring, t.p);
    let mu = f.roots(&f.one(), p);
    if mu.len() as u64 != p {
        return Err(Error::Hypothesis(format!("{} does not contain the {p}-th roots of unity", f.describe())));
    }
    let mut points: Vec<TPoint<FiniteField>> = Vec::new();
    for i in 0..p {
        let target = FiniteField::pow(f, &t.r, i);
        let roots = f.roots(&target, p);
        if roots.is_empty() {
            return Err(Error::Hypothesis(format!("r = {} has no {p}-th root in {}", f.format(&t.r), f.describe())));
        }
        points.extend(roots.into_iter().map(|a| TPoint { a, i }));
    }
    let n = points.len();
    let find = |u: &TPoint<FiniteField>| points.iter().position(|v| t.same_point(u, v));
    let mut table = vec![vec![usize::MAX; n]; n];
    let mut closed = true;
    for x in 0..n {
        for y in 0..n {
            match find(&t_group_law(t, &points[x], &points[y])?) {
                Some(z) => table[x][y] = z,
                None => closed = false,
            }
        }
    }
    let e = find(&t.identity());
    let (mut associative, mut commutative, mut has_inverses, mut inverse_closed_form) = (closed, true, true, true);
    let (mut hom, mut kernel_ok) = (true, true);
    if closed {
        for x in 0..n {
            for y in 0..n {
                commutative &= table[x][y] == table[y][x];
                hom &= points[table[x][y]].i == (points[x].i + points[y].i) % p;
                for z in 0..n {
                    associative &= table[table[x][y]][z] == table[x][table[y][z]];
                }
            }
        }
        for (x, u) in points.iter().enumerate() {
            let inv = (0..n).find(|&y| Some(table[x][y]) == e);
            has_inverses &= inv.is_some();
            let predicted = if u.i == 0 {
                TPoint { a: f.inv(&u.a)?, i: 0 }
            } else {
                TPoint { a: FiniteField::mul(f, &t.r, &f.inv(&u.a)?), i: p - u.i }
            };
            inverse_closed_form &= inv.is_some_and(|y| t.same_point(&points[y], &predicted));
            kernel_ok &= (u.i == 0) == mu.contains(&u.a) || u.i != 0;
        }
    }
    let fiber_zero: Vec<&Fq> = points.iter().filter(|u| u.i == 0).map(|u| &u.a).collect();
    let fiber_zero_is_mu_p = fiber_zero.len() == mu.len() && mu.iter().all(|z| fiber_zero.contains(&z));
    let surjective = (0..p).all(|i| points.iter().any(|u| u.i == i));
    let split_round_trip = match &t.root {
        Some(_) => {
            let mut ok = true;
            for u in &points {
                let (a, b) = t_split_decompose(t, u)?;
                ok &= a.i == 0 && t.same_point(&t_group_law(t, &a, &b)?, u);
            }
            Some(ok)
        }
        None => None,
    };
    Ok(PointGroupReport {
        p,
        field: f.describe(),
        r: f.format(&t.r),
        points: points.iter().map(|u| t.format_point(u)).collect(),
        table,
        order: n,
        closed,
        associative,
        commutative,
        has_identity: e.is_some(),
        has_inverses,
        inverse_closed_form,
        fiber_zero_is_mu_p,
        projection_is_homomorphism: hom,
        projection_is_surjective: surjective,
        kernel_is_fiber_zero: kernel_ok && fiber_zero_is_mu_p,
        split_round_trip,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::local::LocalFieldSpec;

    #[test]
    fn group_law_branches() {
        let q = NumberField { conductor: 1 };
        let t = TScheme::new(&q, 2, CycElem::from_int(1, -7)).unwrap();
        let i = t.identity();
        let b = t.point(CycElem::from_int(1, 3), 0).unwrap_err();
        assert!(matches!(b, Error::InvalidArgument(_)));
        let u = t.point(CycElem::from_int(1, -1), 0).unwrap();
        let w = t_group_law(&t, &i, &u).unwrap();
        assert!(t.same_point(&w, &u));

        let f = FiniteField::parse("F9").unwrap();
        let t9 = TScheme::new(&f, 2, f.from_int(-7)).unwrap();
        let roots = f.roots(&f.from_int(-7), 2);
        let a = t9.point(roots[0].clone(), 1).unwrap();
        let b = t9.point(roots[1].clone(), 1).unwrap();
        let ab = t_group_law(&t9, &a, &b).unwrap();
        let expected = FiniteField::mul(&f, &FiniteField::mul(&f, &a.a, &b.a), &f.inv(&f.from_int(-7)).unwrap());
        assert_eq!((ab.a, ab.i), (expected, 0));
    }

    #[test]
    fn f9_minus_seven() {
        let f = FiniteField::parse("F9").unwrap();
        let t = TScheme::new(&f, 2, f.from_int(-7)).unwrap();
        let rep = t_point_group(&t).unwrap();
        assert_eq!(rep.order, 4);
        assert!(rep.is_extension(), "{rep:?}");
        assert!(rep.inverse_closed_form);
    }

    #[test]
    fn split_scheme() {
        let f = FiniteField::parse("F7").unwrap();
        for s in f.units() {
            let t = TScheme::split(&f, 3, s.clone()).unwrap();
            let rep = t_point_group(&t).unwrap();
            assert_eq!(rep.split_round_trip, Some(true));
            assert!(rep.is_extension());
            let zero = t.point(f.from_int(2), 0).unwrap();
            let (a, b) = t_split_decompose(&t, &zero).unwrap();
            assert!(t.same_point(&a, &zero) && t.same_point(&b, &t.identity()));
        }
        let t = TScheme::new(&f, 3, f.from_int(2)).unwrap();
        assert!(t_split_decompose(&t, &t.identity()).is_err());
        assert!(t_point_group(&TScheme::new(&f, 3, f.from_int(3)).unwrap()).is_err());
    }

    #[test]
    fn isomorphism_examples() {
        let q = NumberField { conductor: 1 };
        let n = |k: i64| CycElem::from_int(1, k);
        assert!(!t_isomorphic(&q, 2, &n(4), &n(2)).unwrap());
        assert!(t_isomorphic(&q, 2, &n(4), &n(9)).unwrap());
        assert!(t_isomorphic(&q, 3, &n(2), &n(4)).unwrap());
        assert!(t_isomorphic(&q, 3, &n(6), &n(6)).unwrap());
        assert!(!t_isomorphic(&q, 3, &n(2), &n(3)).unwrap());

        let q2 = LocalRing(LocalFieldSpec::with_default_precision(2, 1).unwrap());
        let seven = q2.0.from_int(-7).unwrap();
        assert!(!t_isomorphic(&q, 2, &n(-7), &n(1)).unwrap());
        assert!(t_isomorphic(&q2, 2, &seven, &q2.one()).unwrap());
    }
}
