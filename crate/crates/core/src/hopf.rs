//! Exact verification of Hopf algebra axioms for small commutative algebras
//! given by structure constants over `Q`.
//!
//! The main instance is `Z[1/7][X, Y]/(X^2 - X - Y, Y^2 + 2Y)` with basis
//! `{1, X, Y, XY}`; its tensor square and cube have ranks 16 and 64.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

type Q = BigRational;

fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// A polynomial relation among generators: `sum c * prod gens[w]`.
pub type Relation = Vec<(Q, Vec<usize>)>;

/// A commutative algebra with basis element 0 as unit.
#[derive(Clone, Debug)]
pub struct Algebra {
    pub basis_names: Vec<String>,
    table: Vec<Vec<Vec<Q>>>,
    /// Generators as basis indices, and each basis element as a word in the generators.
    pub generators: Vec<usize>,
    pub basis_words: Vec<Vec<usize>>,
    pub relations: Vec<Relation>,
}

impl Algebra {
    pub fn dim(&self) -> usize {
        self.basis_names.len()
    }

    pub fn one(&self) -> Vec<Q> {
        basis_vector(self.dim(), 0)
    }

    pub fn mul(&self, a: &[Q], b: &[Q]) -> Vec<Q> {
        let n = self.dim();
        let mut out = vec![Q::zero(); n];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let xy = x * y;
                for (k, c) in self.table[i][j].iter().enumerate() {
                    if !c.is_zero() {
                        out[k] += &xy * c;
                    }
                }
            }
        }
        out
    }

    /// The base ring as a one-dimensional algebra.
    pub fn base() -> Self {
        Algebra {
            basis_names: vec!["1".into()],
            table: vec![vec![vec![Q::one()]]],
            generators: vec![],
            basis_words: vec![vec![]],
            relations: vec![],
        }
    }

    pub fn tensor(&self, other: &Self) -> Self {
        let (n, m) = (self.dim(), other.dim());
        let mut table = vec![vec![vec![]; n * m]; n * m];
        for i in 0..n {
            for j in 0..m {
                for k in 0..n {
                    for l in 0..m {
                        table[i * m + j][k * m + l] = kron(&self.table[i][k], &other.table[j][l]);
                    }
                }
            }
        }
        let mut names = Vec::with_capacity(n * m);
        for a in &self.basis_names {
            for b in &other.basis_names {
                names.push(format!("{a}(x){b}"));
            }
        }
        Algebra { basis_names: names, table, generators: vec![], basis_words: vec![], relations: vec![] }
    }

    pub fn format(&self, v: &[Q]) -> String {
        let mut s = String::new();
        for (c, name) in v.iter().zip(&self.basis_names) {
            if c.is_zero() {
                continue;
            }
            if !s.is_empty() {
                s.push_str(" + ");
            }
            let _ = write!(s, "({c})*{name}");
        }
        if s.is_empty() {
            s.push('0');
        }
        s
    }

    /// Evaluates a relation on given generator images in `target`.
    fn eval_relation(&self, rel: &Relation, images: &[Vec<Q>], target: &Algebra) -> Vec<Q> {
        let mut acc = vec![Q::zero(); target.dim()];
        for (c, word) in rel {
            let mut term = target.one();
            for &g in word {
                term = target.mul(&term, &images[g]);
            }
            for (a, t) in acc.iter_mut().zip(term) {
                *a += c * t;
            }
        }
        acc
    }
}

fn basis_vector(n: usize, i: usize) -> Vec<Q> {
    let mut v = vec![Q::zero(); n];
    v[i] = Q::one();
    v
}

fn kron(a: &[Q], b: &[Q]) -> Vec<Q> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for x in a {
        for y in b {
            out.push(x * y);
        }
    }
    out
}

fn is_zero(v: &[Q]) -> bool {
    v.iter().all(Zero::is_zero)
}

fn sub(a: &[Q], b: &[Q]) -> Vec<Q> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// A linear map given by the images of the source basis.
#[derive(Clone, Debug)]
pub struct LinearMap {
    pub images: Vec<Vec<Q>>,
    pub target_dim: usize,
}

impl LinearMap {
    pub fn identity(n: usize) -> Self {
        LinearMap { images: (0..n).map(|i| basis_vector(n, i)).collect(), target_dim: n }
    }

    pub fn apply(&self, v: &[Q]) -> Vec<Q> {
        let mut out = vec![Q::zero(); self.target_dim];
        for (c, img) in v.iter().zip(&self.images) {
            if c.is_zero() {
                continue;
            }
            for (o, x) in out.iter_mut().zip(img) {
                *o += c * x;
            }
        }
        out
    }

    /// `self` after `first`.
    pub fn after(&self, first: &LinearMap) -> Self {
        LinearMap { images: first.images.iter().map(|v| self.apply(v)).collect(), target_dim: self.target_dim }
    }

    pub fn tensor(&self, other: &LinearMap) -> Self {
        let mut images = Vec::with_capacity(self.images.len() * other.images.len());
        for a in &self.images {
            for b in &other.images {
                images.push(kron(a, b));
            }
        }
        LinearMap { images, target_dim: self.target_dim * other.target_dim }
    }

    /// The algebra map `source -> target` determined by generator images.
    pub fn algebra_map(source: &Algebra, target: &Algebra, gen_images: &[Vec<Q>]) -> Self {
        let images = source
            .basis_words
            .iter()
            .map(|w| {
                let mut v = target.one();
                for &g in w {
                    v = target.mul(&v, &gen_images[g]);
                }
                v
            })
            .collect();
        LinearMap { images, target_dim: target.dim() }
    }
}

/// A candidate Hopf structure: images of the generators under `Delta`, `epsilon`, `S`.
#[derive(Clone, Debug)]
pub struct HopfData {
    pub name: String,
    pub algebra: Algebra,
    pub delta: Vec<Vec<Q>>,
    pub counit: Vec<Q>,
    pub antipode: Vec<Vec<Q>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct AxiomCheck {
    pub axiom: String,
    pub passed: bool,
    /// First nonzero residual, when the check fails.
    pub residual: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct HopfReport {
    pub name: String,
    pub checks: Vec<AxiomCheck>,
    pub cocommutative: bool,
}

impl HopfReport {
    pub fn all_axioms_hold(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<&AxiomCheck> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }
}

fn compare(axiom: &str, algebra_names: &Algebra, target: &Algebra, lhs: &LinearMap, rhs: &LinearMap) -> AxiomCheck {
    for (i, (a, b)) in lhs.images.iter().zip(&rhs.images).enumerate() {
        let d = sub(a, b);
        if !is_zero(&d) {
            return AxiomCheck {
                axiom: axiom.into(),
                passed: false,
                residual: Some(format!("on {}: {}", algebra_names.basis_names[i], target.format(&d))),
            };
        }
    }
    AxiomCheck { axiom: axiom.into(), passed: true, residual: None }
}

fn relations_check(axiom: &str, a: &Algebra, target: &Algebra, images: &[Vec<Q>]) -> AxiomCheck {
    for (k, rel) in a.relations.iter().enumerate() {
        let r = a.eval_relation(rel, images, target);
        if !is_zero(&r) {
            return AxiomCheck {
                axiom: axiom.into(),
                passed: false,
                residual: Some(format!("relation {k}: {}", target.format(&r))),
            };
        }
    }
    AxiomCheck { axiom: axiom.into(), passed: true, residual: None }
}

/// Checks well-definedness, coassociativity, counit and antipode exactly.
pub fn check_hopf(data: &HopfData) -> HopfReport {
    let a = &data.algebra;
    let n = a.dim();
    let k = Algebra::base();
    let aa = a.tensor(a);
    let aaa = aa.tensor(a);
    let mut checks = Vec::new();

    checks.push(relations_check(
        "algebra relations hold in the basis",
        a,
        a,
        &a.generators.iter().map(|&g| basis_vector(n, g)).collect::<Vec<_>>(),
    ));
    checks.push(relations_check("comultiplication respects relations", a, &aa, &data.delta));
    let eps_images: Vec<Vec<Q>> = data.counit.iter().map(|c| vec![c.clone()]).collect();
    checks.push(relations_check("counit respects relations", a, &k, &eps_images));
    checks.push(relations_check("antipode respects relations", a, a, &data.antipode));

    let delta = LinearMap::algebra_map(a, &aa, &data.delta);
    let eps = LinearMap::algebra_map(a, &k, &eps_images);
    let s = LinearMap::algebra_map(a, a, &data.antipode);
    let id = LinearMap::identity(n);

    let left = delta.tensor(&id).after(&delta);
    let right = id.tensor(&delta).after(&delta);
    checks.push(compare("coassociativity", a, &aaa, &left, &right));

    // k (x) A and A (x) k are identified with A through matching basis order
    let counit_left = eps.tensor(&id).after(&delta);
    let counit_right = id.tensor(&eps).after(&delta);
    checks.push(compare("left counit", a, a, &counit_left, &id));
    checks.push(compare("right counit", a, a, &counit_right, &id));

    let mult = LinearMap {
        images: (0..n * n).map(|ij| a.mul(&basis_vector(n, ij / n), &basis_vector(n, ij % n))).collect(),
        target_dim: n,
    };
    let unit_counit = LinearMap {
        images: eps.images.iter().map(|c| a.one().iter().map(|x| x * &c[0]).collect()).collect(),
        target_dim: n,
    };
    let anti_left = mult.after(&s.tensor(&id).after(&delta));
    let anti_right = mult.after(&id.tensor(&s).after(&delta));
    checks.push(compare("left antipode", a, a, &anti_left, &unit_counit));
    checks.push(compare("right antipode", a, a, &anti_right, &unit_counit));

    let swap = LinearMap {
        images: (0..n * n).map(|ij| basis_vector(n * n, (ij % n) * n + ij / n)).collect(),
        target_dim: n * n,
    };
    let cocommutative = compare("cocommutativity", a, &aa, &swap.after(&delta), &delta).passed;

    HopfReport { name: data.name.clone(), checks, cocommutative }
}

/// Normal form in `Q[X, Y]/(X^2 - X - Y, Y^2 + 2Y)` of `X^a Y^b`, in basis `{1, X, Y, XY}`.
fn reduce_monomial(a: u32, b: u32) -> Vec<Q> {
    let idx = |x: u32, y: u32| (x + 2 * y) as usize;
    if b >= 2 {
        // Y^2 = -2Y
        return reduce_monomial(a, b - 1).iter().map(|c| c * q(-2, 1)).collect();
    }
    if a >= 2 {
        // X^2 = X + Y
        let s = reduce_monomial(a - 1, b);
        let t = reduce_monomial(a - 2, b + 1);
        return s.iter().zip(&t).map(|(x, y)| x + y).collect();
    }
    basis_vector(4, idx(a, b))
}

/// `Q[X, Y]/(X^2 - X - Y, Y^2 + 2Y)` with basis `1, X, Y, XY`.
pub fn order_four_algebra() -> Algebra {
    let exps = [(0, 0), (1, 0), (0, 1), (1, 1)];
    let table =
        exps.iter().map(|&(a1, b1)| exps.iter().map(|&(a2, b2)| reduce_monomial(a1 + a2, b1 + b2)).collect()).collect();
    Algebra {
        basis_names: vec!["1".into(), "X".into(), "Y".into(), "XY".into()],
        table,
        generators: vec![1, 2],
        basis_words: vec![vec![], vec![0], vec![1], vec![0, 1]],
        relations: vec![
            vec![(q(1, 1), vec![0, 0]), (q(-1, 1), vec![0]), (q(-1, 1), vec![1])],
            vec![(q(1, 1), vec![1, 1]), (q(2, 1), vec![1])],
        ],
    }
}

fn tensor_element(terms: &[(Q, usize, usize)]) -> Vec<Q> {
    let mut v = vec![Q::zero(); 16];
    for (c, i, j) in terms {
        v[i * 4 + j] += c;
    }
    v
}

const ONE: usize = 0;
const X: usize = 1;
const Y: usize = 2;
const XY: usize = 3;

/// `Delta(X) = X(x)1 + 1(x)X - 2X(x)X + 1/7 Y(x)Y - 2/7 (Y(x)XY + XY(x)Y) + 4/7 XY(x)XY`.
pub fn reference_delta_x() -> Vec<Q> {
    tensor_element(&[
        (q(1, 1), X, ONE),
        (q(1, 1), ONE, X),
        (q(-2, 1), X, X),
        (q(1, 7), Y, Y),
        (q(-2, 7), Y, XY),
        (q(-2, 7), XY, Y),
        (q(4, 7), XY, XY),
    ])
}

/// `Delta(Y) = Y(x)1 + 1(x)Y + Y(x)Y`.
pub fn reference_delta_y() -> Vec<Q> {
    tensor_element(&[(q(1, 1), Y, ONE), (q(1, 1), ONE, Y), (q(1, 1), Y, Y)])
}

fn with_antipode(name: &str, sx: i64) -> HopfData {
    HopfData {
        name: name.into(),
        algebra: order_four_algebra(),
        delta: vec![reference_delta_x(), reference_delta_y()],
        counit: vec![Q::zero(), Q::zero()],
        antipode: vec![basis_vector(4, X).iter().map(|c| c * q(sx, 1)).collect(), basis_vector(4, Y)],
    }
}

/// The reference structure: `epsilon(X) = epsilon(Y) = 0`, `S(X) = -X`, `S(Y) = Y`.
pub fn reference_hopf_data() -> HopfData {
    with_antipode("reference structure", -1)
}

/// The reference comultiplication and counit with antipode `S(X) = X`, `S(Y) = Y`.
pub fn identity_antipode_hopf_data() -> HopfData {
    with_antipode("reference structure with S = id", 1)
}

/// Negative control: `Delta(Y) = Y(x)1 + 1(x)Y`.
pub fn mutated_hopf_data() -> HopfData {
    let mut d = reference_hopf_data();
    d.name = "mutated comultiplication".into();
    d.delta[1] = tensor_element(&[(q(1, 1), Y, ONE), (q(1, 1), ONE, Y)]);
    d
}

/// Group algebra of `Z/2`: basis `1, g`, `g^2 = 1`, `Delta(g) = g(x)g`, `S(g) = g`.
pub fn group_algebra_z2() -> HopfData {
    let table = vec![vec![basis_vector(2, 0), basis_vector(2, 1)], vec![basis_vector(2, 1), basis_vector(2, 0)]];
    let algebra = Algebra {
        basis_names: vec!["1".into(), "g".into()],
        table,
        generators: vec![1],
        basis_words: vec![vec![], vec![0]],
        relations: vec![vec![(q(1, 1), vec![0, 0]), (q(-1, 1), vec![])]],
    };
    let mut gg = vec![Q::zero(); 4];
    gg[3] = Q::one();
    HopfData {
        name: "group algebra of Z/2".into(),
        algebra,
        delta: vec![gg],
        counit: vec![Q::one()],
        antipode: vec![basis_vector(2, 1)],
    }
}

/// Checks the reference structure.
pub fn hopf_axioms_check() -> HopfReport {
    check_hopf(&reference_hopf_data())
}

/// True when every denominator is a power of `l`.
pub fn coefficients_in_localization(v: &[Q], l: u64) -> bool {
    v.iter().all(|c| {
        let mut d = c.denom().clone();
        let lb = BigInt::from(l);
        while (&d % &lb).is_zero() {
            d /= &lb;
        }
        d.is_one()
    })
}
