//! Finite groups, `F_p[G]`-modules and first cohomology by linear algebra.
//!
//! Over a field every module is free as a coefficient module, so
//! `Ext^1_{F_p[G]}(B, A) = H^1(G, Hom(B, A))` with `(g F) = rho_A(g) F rho_B(g)^{-1}`.

use serde::Serialize;

use crate::arith::mod_inv;
use crate::error::{Error, Result};
use crate::linalg::{all_vectors, rank_of, FpMatrix};

/// A finite group given by its multiplication table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    table: Vec<Vec<usize>>,
    identity: usize,
    inverses: Vec<usize>,
}

impl FiniteGroup {
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<Self> {
        let n = table.len();
        if n == 0 || table.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return Err(Error::InvalidArgument("malformed multiplication table".into()));
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| table[e][a] == a && table[a][e] == a))
            .ok_or_else(|| Error::InvalidArgument("no identity element".into()))?;
        let mut inverses = Vec::with_capacity(n);
        for a in 0..n {
            let inv = (0..n)
                .find(|&b| table[a][b] == identity && table[b][a] == identity)
                .ok_or_else(|| Error::InvalidArgument(format!("element {a} has no inverse")))?;
            inverses.push(inv);
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::InvalidArgument("multiplication is not associative".into()));
                    }
                }
            }
        }
        Ok(FiniteGroup { table, identity, inverses })
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    pub fn cyclic(n: usize) -> Self {
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Self::from_table(table).expect("cyclic group")
    }

    /// Elements `(a, b)` are labelled `a * |B| + b`.
    pub fn direct_product(a: &Self, b: &Self) -> Self {
        Self::semidirect(a, b, |_, h| h).expect("direct product")
    }

    /// `H x| Q` with `(h1, q1)(h2, q2) = (h1 * act(q1, h2), q1 q2)`, labelled `h * |Q| + q`.
    pub fn semidirect(h: &Self, q: &Self, act: impl Fn(usize, usize) -> usize) -> Result<Self> {
        let (nh, nq) = (h.order(), q.order());
        let label = |x: usize, y: usize| x * nq + y;
        let mut table = vec![vec![0; nh * nq]; nh * nq];
        for h1 in 0..nh {
            for q1 in 0..nq {
                for h2 in 0..nh {
                    for q2 in 0..nq {
                        table[label(h1, q1)][label(h2, q2)] = label(h.mul(h1, act(q1, h2)), q.mul(q1, q2));
                    }
                }
            }
        }
        Self::from_table(table)
    }

    /// The same group with element `i` renamed `perm[i]`.
    pub fn relabel(&self, perm: &[usize]) -> Self {
        let n = self.order();
        let mut table = vec![vec![0; n]; n];
        for a in 0..n {
            for b in 0..n {
                table[perm[a]][perm[b]] = perm[self.table[a][b]];
            }
        }
        Self::from_table(table).expect("relabelled group")
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order()).all(|a| (0..self.order()).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// The subgroup on `elems` as a group in its own right; index `i` is `elems[i]`.
    pub fn subgroup(&self, elems: &[usize]) -> Result<FiniteGroup> {
        let pos = |x: usize| elems.iter().position(|&y| y == x);
        let mut table = Vec::with_capacity(elems.len());
        for &a in elems {
            let mut row = Vec::with_capacity(elems.len());
            for &b in elems {
                row.push(
                    pos(self.mul(a, b))
                        .ok_or_else(|| Error::InvalidArgument("subset is not closed under multiplication".into()))?,
                );
            }
            table.push(row);
        }
        Self::from_table(table)
    }
}

/// `G`, a normal subgroup `H`, and `Gamma = G/H`.
#[derive(Clone, Debug)]
pub struct FiniteGroupPresentation {
    pub g: FiniteGroup,
    /// Elements of `H` as labels in `G`.
    pub h: Vec<usize>,
    pub h_group: FiniteGroup,
    /// Coset index in `Gamma` of each element of `G`.
    pub coset: Vec<usize>,
    pub gamma: FiniteGroup,
}

impl FiniteGroupPresentation {
    pub fn new(g: FiniteGroup, mut h: Vec<usize>) -> Result<Self> {
        h.sort_unstable();
        h.dedup();
        let h_group = g.subgroup(&h)?;
        for x in 0..g.order() {
            for &y in &h {
                if !h.contains(&g.mul(g.mul(x, y), g.inv(x))) {
                    return Err(Error::Hypothesis("H is not normal in G".into()));
                }
            }
        }
        // cosets xH, numbered by their smallest element
        let mut reps: Vec<usize> = Vec::new();
        let mut coset = vec![usize::MAX; g.order()];
        for x in 0..g.order() {
            if coset[x] != usize::MAX {
                continue;
            }
            for &y in &h {
                coset[g.mul(x, y)] = reps.len();
            }
            reps.push(x);
        }
        let table = reps.iter().map(|&a| reps.iter().map(|&b| coset[g.mul(a, b)]).collect()).collect();
        let gamma = FiniteGroup::from_table(table)?;
        Ok(FiniteGroupPresentation { g, h, h_group, coset, gamma })
    }

    /// A section `Gamma -> G`: the smallest (`first = true`) or largest label in each coset.
    pub fn section(&self, first: bool) -> Vec<usize> {
        let mut s = vec![usize::MAX; self.gamma.order()];
        for x in 0..self.g.order() {
            let c = self.coset[x];
            if s[c] == usize::MAX || !first {
                s[c] = x;
            }
        }
        s
    }

    fn h_index(&self, x: usize) -> usize {
        self.h.iter().position(|&y| y == x).expect("element of H")
    }
}

/// A representation `G -> GL_n(F_p)`, one matrix per group element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FpGModule {
    pub p: u64,
    pub dim: usize,
    pub matrices: Vec<FpMatrix>,
}

impl FpGModule {
    pub fn new(p: u64, group: &FiniteGroup, matrices: Vec<FpMatrix>) -> Result<Self> {
        let n = group.order();
        if matrices.len() != n {
            return Err(Error::InvalidArgument("one matrix per group element required".into()));
        }
        let dim = matrices[0].rows;
        if matrices[group.identity()] != FpMatrix::identity(p, dim) {
            return Err(Error::InvalidArgument("identity must act trivially".into()));
        }
        for a in 0..n {
            for b in 0..n {
                if matrices[a].mul(&matrices[b]) != matrices[group.mul(a, b)] {
                    return Err(Error::InvalidArgument(format!(
                        "matrices violate the relation for elements {a} and {b}"
                    )));
                }
            }
        }
        Ok(FpGModule { p, dim, matrices })
    }

    pub fn trivial(p: u64, group: &FiniteGroup, dim: usize) -> Self {
        FpGModule { p, dim, matrices: vec![FpMatrix::identity(p, dim); group.order()] }
    }

    /// A one-dimensional module from a character.
    pub fn from_character(p: u64, group: &FiniteGroup, chi: &[u64]) -> Result<Self> {
        let mats = chi.iter().map(|&c| FpMatrix::from_rows(p, &[vec![c as i64]])).collect();
        Self::new(p, group, mats)
    }

    /// Pull back a `Gamma`-module along `G -> Gamma`.
    pub fn inflate(pres: &FiniteGroupPresentation, m: &FpGModule) -> Self {
        let matrices = pres.coset.iter().map(|&c| m.matrices[c].clone()).collect();
        FpGModule { p: m.p, dim: m.dim, matrices }
    }

    /// Restriction to the subgroup whose elements are `elems`.
    pub fn restrict(&self, elems: &[usize]) -> Self {
        let matrices = elems.iter().map(|&x| self.matrices[x].clone()).collect();
        FpGModule { p: self.p, dim: self.dim, matrices }
    }

    pub fn relabel(&self, perm: &[usize]) -> Self {
        let mut matrices = self.matrices.clone();
        for (i, m) in self.matrices.iter().enumerate() {
            matrices[perm[i]] = m.clone();
        }
        FpGModule { p: self.p, dim: self.dim, matrices }
    }

    /// `Hom(B, A)` with `g F = rho_A(g) F rho_B(g)^{-1}`, `F` flattened row-major.
    pub fn hom(b: &FpGModule, a: &FpGModule, group: &FiniteGroup) -> Self {
        let p = a.p;
        let (da, db) = (a.dim, b.dim);
        let mut matrices = Vec::with_capacity(group.order());
        for g in 0..group.order() {
            let ra = &a.matrices[g];
            let rb_inv = &b.matrices[group.inv(g)];
            let mut t = FpMatrix::zeros(p, da * db, da * db);
            // (ra F rb_inv)_{ij} = sum_{k,l} ra_{ik} F_{kl} rb_inv_{lj}
            for i in 0..da {
                for j in 0..db {
                    for k in 0..da {
                        for l in 0..db {
                            let v = ra.get(i, k) * rb_inv.get(l, j) % p;
                            if v != 0 {
                                let cur = t.get(i * db + j, k * db + l);
                                t.set(i * db + j, k * db + l, cur + v);
                            }
                        }
                    }
                }
            }
            matrices.push(t);
        }
        FpGModule { p, dim: da * db, matrices }
    }

    /// `M(chi)`: the action scaled by `chi`.
    pub fn twist(&self, group: &FiniteGroup, chi: &[u64]) -> Result<Self> {
        check_character(self.p, group, chi)?;
        let matrices = self.matrices.iter().zip(chi).map(|(m, &c)| m.scale(c)).collect();
        Ok(FpGModule { p: self.p, dim: self.dim, matrices })
    }
}

pub fn check_character(p: u64, group: &FiniteGroup, chi: &[u64]) -> Result<()> {
    let n = group.order();
    if chi.len() != n || chi.iter().any(|&c| c % p == 0) {
        return Err(Error::InvalidArgument("character must take unit values on every element".into()));
    }
    for a in 0..n {
        for b in 0..n {
            if chi[a] * chi[b] % p != chi[group.mul(a, b)] % p {
                return Err(Error::InvalidArgument("character is not multiplicative".into()));
            }
        }
    }
    Ok(())
}

/// Every homomorphism `group -> F_p^*`, by exhaustive search.
pub fn characters(p: u64, group: &FiniteGroup) -> Vec<Vec<u64>> {
    all_vectors(p - 1, group.order())
        .map(|v| v.into_iter().map(|x| x + 1).collect::<Vec<u64>>())
        .filter(|chi| check_character(p, group, chi).is_ok())
        .collect()
}

/// `chi^{-1}`.
pub fn inverse_character(p: u64, chi: &[u64]) -> Vec<u64> {
    chi.iter().map(|&c| mod_inv(c, p).expect("unit")).collect()
}

/// Basis of the cocycles `f(gh) = f(g) + g f(h)` and the coboundaries `g m - m`,
/// as vectors indexed by `g * dim + i`.
fn cocycles_and_coboundaries(group: &FiniteGroup, m: &FpGModule) -> (Vec<Vec<u64>>, Vec<Vec<u64>>) {
    let (p, n, order) = (m.p, m.dim, group.order());
    let unknowns = order * n;
    let mut eqs = FpMatrix::zeros(p, order * order * n, unknowns);
    let mut row = 0;
    for g in 0..order {
        for h in 0..order {
            let gh = group.mul(g, h);
            for i in 0..n {
                let add = |e: &mut FpMatrix, col: usize, v: u64| {
                    let cur = e.get(row, col);
                    e.set(row, col, cur + v);
                };
                add(&mut eqs, gh * n + i, 1);
                add(&mut eqs, g * n + i, p - 1);
                for j in 0..n {
                    let a = m.matrices[g].get(i, j);
                    if a != 0 {
                        add(&mut eqs, h * n + j, p - a);
                    }
                }
                row += 1;
            }
        }
    }
    let z = eqs.kernel();
    let b: Vec<Vec<u64>> = (0..n)
        .map(|j| {
            let mut v = vec![0; unknowns];
            for g in 0..order {
                for i in 0..n {
                    let delta = u64::from(i == j);
                    v[g * n + i] = (m.matrices[g].get(i, j) + p - delta) % p;
                }
            }
            v
        })
        .collect();
    (z, b)
}

pub fn h1_dimension(group: &FiniteGroup, m: &FpGModule) -> usize {
    let (z, b) = cocycles_and_coboundaries(group, m);
    z.len() - rank_of(m.p, &b)
}

/// `dim M^G`.
pub fn fixed_dimension(group: &FiniteGroup, m: &FpGModule) -> usize {
    fixed_subspace(m, &(0..group.order()).collect::<Vec<_>>()).len()
}

fn fixed_subspace(m: &FpGModule, elems: &[usize]) -> Vec<Vec<u64>> {
    let (p, n) = (m.p, m.dim);
    let mut stacked = FpMatrix::zeros(p, elems.len() * n, n);
    for (k, &g) in elems.iter().enumerate() {
        for i in 0..n {
            for j in 0..n {
                let v = m.matrices[g].get(i, j) + if i == j { p - 1 } else { 0 };
                stacked.set(k * n + i, j, v);
            }
        }
    }
    stacked.kernel()
}

/// Matrix of a linear map on the span of `basis`, given the images of the basis vectors.
fn restricted_matrix(p: u64, basis: &[Vec<u64>], images: &[Vec<u64>]) -> Result<FpMatrix> {
    let n = basis.first().map_or(0, Vec::len);
    let b = FpMatrix::from_columns(p, n, basis);
    let cols: Vec<Vec<u64>> = images
        .iter()
        .map(|v| b.solve(v).ok_or_else(|| Error::DoesNotSpan("subspace is not stable".into())))
        .collect::<Result<_>>()?;
    Ok(FpMatrix::from_columns(p, basis.len(), &cols))
}

/// The `Gamma`-action on `H^1(H, M)` through the section `s`:
/// `(gamma f)(h) = s(gamma) f(s(gamma)^{-1} h s(gamma))`. Returns one matrix
/// per element of `Gamma` in a fixed basis of `H^1`.
pub fn gamma_action_on_h1(pres: &FiniteGroupPresentation, m: &FpGModule, section: &[usize]) -> Result<Vec<FpMatrix>> {
    let g = &pres.g;
    let p = m.p;
    let n = m.dim;
    let res = m.restrict(&pres.h);
    let (z, b) = cocycles_and_coboundaries(&pres.h_group, &res);
    let b_basis = FpMatrix::from_columns(p, pres.h.len() * n, &b).column_space();
    let mut full = b_basis.clone();
    let mut complement = Vec::new();
    for v in &z {
        let mut trial = full.clone();
        trial.push(v.clone());
        if rank_of(p, &trial) > full.len() {
            full = trial;
            complement.push(v.clone());
        }
    }
    let nb = b_basis.len();
    let mut out = Vec::with_capacity(pres.gamma.order());
    for &s in section {
        let s_inv = g.inv(s);
        let images: Vec<Vec<u64>> = complement
            .iter()
            .map(|f| {
                let mut img = vec![0; f.len()];
                for (hi, &h) in pres.h.iter().enumerate() {
                    let conj = pres.h_index(g.mul(g.mul(s_inv, h), s));
                    let val = m.matrices[s].mul_vec(&f[conj * n..(conj + 1) * n]);
                    img[hi * n..(hi + 1) * n].copy_from_slice(&val);
                }
                img
            })
            .collect();
        let coords = restricted_matrix(p, &full, &images)?;
        let q = complement.len();
        let mut t = FpMatrix::zeros(p, q, q);
        for i in 0..q {
            for j in 0..q {
                t.set(i, j, coords.get(nb + i, j));
            }
        }
        out.push(t);
    }
    Ok(out)
}

/// `dim` of `{v : gamma v = chi(gamma) v}` via the projector `|Gamma|^{-1} sum chi(gamma)^{-1} T_gamma`.
pub fn eigen_dimension(p: u64, mats: &[FpMatrix], chi: &[u64]) -> Result<usize> {
    let order = mats.len() as u64;
    let inv =
        mod_inv(order % p, p).ok_or_else(|| Error::Hypothesis(format!("|Gamma| = {order} is divisible by {p}")))?;
    let dim = mats.first().map_or(0, |m| m.rows);
    let mut e = FpMatrix::zeros(p, dim, dim);
    for (t, &c) in mats.iter().zip(chi) {
        e = e.add(&t.scale(mod_inv(c, p).expect("unit")));
    }
    let e = e.scale(inv);
    debug_assert!(e.is_idempotent());
    Ok(e.rank())
}

#[derive(Clone, Debug, Serialize)]
pub struct TwistReport {
    /// `dim Ext^1_H(B, A)_chi`.
    pub ext_h_eigen: usize,
    /// `dim Ext^1_G(B(chi), A)`.
    pub ext_g_twisted: usize,
    /// `dim Hom_H(B, A)_chi`.
    pub hom_h_eigen: usize,
    /// `dim Hom_G(B(chi), A)`.
    pub hom_g_twisted: usize,
    pub section_independent: bool,
    pub equal: bool,
}

/// Compares both sides of `Ext^1_H(B, A)_chi = Ext^1_G(B(chi), A)` and of the
/// corresponding statement for `Hom`. `chi_gamma` is a character of `Gamma`.
pub fn verify_twist_iso(
    pres: &FiniteGroupPresentation,
    chi_gamma: &[u64],
    a: &FpGModule,
    b: &FpGModule,
) -> Result<TwistReport> {
    let p = a.p;
    let g = &pres.g;
    check_character(p, &pres.gamma, chi_gamma)?;
    let chi: Vec<u64> = pres.coset.iter().map(|&c| chi_gamma[c]).collect();
    let id_b = FpMatrix::identity(p, b.dim);
    if b.matrices.iter().any(|m| *m != id_b) {
        return Err(Error::Hypothesis("G must act trivially on B".into()));
    }
    let id_a = FpMatrix::identity(p, a.dim);
    if pres.h.iter().any(|&h| a.matrices[h] != id_a) {
        return Err(Error::Hypothesis("H must act trivially on A".into()));
    }

    let hom = FpGModule::hom(b, a, g);
    let first = gamma_action_on_h1(pres, &hom, &pres.section(true))?;
    let last = gamma_action_on_h1(pres, &hom, &pres.section(false))?;
    let ext_h_eigen = eigen_dimension(p, &first, chi_gamma)?;
    let b_chi = b.twist(g, &chi)?;
    let hom_twisted = FpGModule::hom(&b_chi, a, g);
    let ext_g_twisted = h1_dimension(g, &hom_twisted);

    let fixed_h = fixed_subspace(&hom, &pres.h);
    let hom_h_eigen = if fixed_h.is_empty() {
        0
    } else {
        let mats: Vec<FpMatrix> = pres
            .section(true)
            .iter()
            .map(|&s| {
                let imgs: Vec<Vec<u64>> = fixed_h.iter().map(|v| hom.matrices[s].mul_vec(v)).collect();
                restricted_matrix(p, &fixed_h, &imgs)
            })
            .collect::<Result<_>>()?;
        eigen_dimension(p, &mats, chi_gamma)?
    };
    let hom_g_twisted = fixed_dimension(g, &hom_twisted);

    Ok(TwistReport {
        ext_h_eigen,
        ext_g_twisted,
        hom_h_eigen,
        hom_g_twisted,
        section_independent: first == last,
        equal: ext_h_eigen == ext_g_twisted && hom_h_eigen == hom_g_twisted,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepCase {
    pub p: u64,
    pub group: String,
    pub chi: Vec<u64>,
    pub dim_a: usize,
    pub dim_b: usize,
    pub report: TwistReport,
    /// `Ext^1_G(A, B) = Ext^1_G(A(chi), B(chi))`.
    pub joint_twist_invariant: bool,
}

/// All representations of `gamma` on `F_p^d`, by exhaustive search over the
/// images of a generating set (here: every element, filtered by the relations).
fn representations(p: u64, gamma: &FiniteGroup, d: usize) -> Vec<FpGModule> {
    let n = gamma.order();
    if n == 1 {
        return vec![FpGModule::trivial(p, gamma, d)];
    }
    // gamma is cyclic of order 2 in the sweep; element 1 generates
    assert_eq!(n, 2, "sweep quotients have order at most 2");
    all_vectors(p, d * d)
        .filter_map(|entries| {
            let rows: Vec<Vec<i64>> = entries.chunks(d).map(|r| r.iter().map(|&x| x as i64).collect()).collect();
            let a = FpMatrix::from_rows(p, &rows);
            FpGModule::new(p, gamma, vec![FpMatrix::identity(p, d), a]).ok()
        })
        .collect()
}

fn sweep_groups(p: u64) -> Vec<(String, FiniteGroupPresentation)> {
    let mut out = Vec::new();
    let hs: Vec<(String, FiniteGroup)> = vec![
        (format!("Z/{p}"), FiniteGroup::cyclic(p as usize)),
        (
            format!("Z/{p} x Z/{p}"),
            FiniteGroup::direct_product(&FiniteGroup::cyclic(p as usize), &FiniteGroup::cyclic(p as usize)),
        ),
    ];
    for (hname, h) in hs {
        let nh = h.order();
        let h_elems = |nq: usize| (0..nh).map(|x| x * nq).collect::<Vec<_>>();
        let g = FiniteGroup::direct_product(&h, &FiniteGroup::trivial());
        out.push((hname.clone(), FiniteGroupPresentation::new(g, h_elems(1)).expect("normal")));
        if p == 3 {
            let q = FiniteGroup::cyclic(2);
            let direct = FiniteGroup::direct_product(&h, &q);
            out.push((format!("({hname}) x Z/2"), FiniteGroupPresentation::new(direct, h_elems(2)).expect("normal")));
            let hh = h.clone();
            let semi = FiniteGroup::semidirect(&h, &q, move |qq, x| if qq == 0 { x } else { hh.inv(x) })
                .expect("inversion is an automorphism of an abelian group");
            out.push((format!("({hname}) x| Z/2"), FiniteGroupPresentation::new(semi, h_elems(2)).expect("normal")));
        }
    }
    out
}

/// Both sides of the twist isomorphisms over the small groups and modules in scope.
pub fn sweep() -> Result<Vec<SweepCase>> {
    let mut cases = Vec::new();
    for p in [2u64, 3] {
        for (name, pres) in sweep_groups(p) {
            let g = &pres.g;
            for chi_gamma in characters(p, &pres.gamma) {
                let chi: Vec<u64> = pres.coset.iter().map(|&c| chi_gamma[c]).collect();
                for dim_a in 1..=2 {
                    for a_gamma in representations(p, &pres.gamma, dim_a) {
                        let a = FpGModule::inflate(&pres, &a_gamma);
                        for dim_b in 1..=2 {
                            let b = FpGModule::trivial(p, g, dim_b);
                            let report = verify_twist_iso(&pres, &chi_gamma, &a, &b)?;
                            let lhs = h1_dimension(g, &FpGModule::hom(&a, &b, g));
                            let rhs = h1_dimension(g, &FpGModule::hom(&a.twist(g, &chi)?, &b.twist(g, &chi)?, g));
                            cases.push(SweepCase {
                                p,
                                group: name.clone(),
                                chi: chi_gamma.clone(),
                                dim_a,
                                dim_b,
                                report,
                                joint_twist_invariant: lhs == rhs,
                            });
                        }
                    }
                }
            }
        }
    }
    Ok(cases)
}
