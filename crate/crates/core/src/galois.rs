//! The action of `Gamma = Gal(L/K)` on unit classes and its eigenspaces for
//! powers of the cyclotomic character.

use serde::Serialize;

use crate::arith::mod_inv;
use crate::cyclotomic::{galois_apply, CycElem, GaloisAuto, GaloisGroup};
use crate::error::{Error, Result};
use crate::global::{global_coordinates, unit_product, verify_independence, RingSpec, UnitClassBasis};
use crate::linalg::FpMatrix;

/// `omega(sigma_a) = a mod p` on a subgroup of `Gal(Q(zeta_M)/Q)` with `p | M`.
#[derive(Clone, Debug, Serialize)]
pub struct OmegaCharacter {
    pub p: u64,
    pub gamma: GaloisGroup,
}

impl OmegaCharacter {
    pub fn new(p: u64, gamma: GaloisGroup) -> Result<Self> {
        if p != 2 && !gamma.conductor.is_multiple_of(p) {
            return Err(Error::InvalidArgument(format!("zeta_{p} is not in Q(zeta_{})", gamma.conductor)));
        }
        Ok(OmegaCharacter { p, gamma })
    }

    pub fn value(&self, sigma: &GaloisAuto) -> u64 {
        sigma.exponent % self.p
    }

    /// `omega^k(sigma)`, for any integer `k`.
    pub fn power_value(&self, sigma: &GaloisAuto, k: i64) -> u64 {
        let p = self.p;
        let v = self.value(sigma);
        let e = k.rem_euclid((p - 1) as i64) as u64;
        crate::arith::mod_pow(v, e, p)
    }

    /// Order of `omega` restricted to `Gamma`.
    pub fn order(&self) -> u64 {
        (1..self.p).find(|&k| self.gamma.autos().all(|s| self.power_value(&s, k as i64) == 1)).unwrap_or(1)
    }
}

/// An `F_p`-space with a `Gamma`-action, stored as one matrix per group element.
#[derive(Clone, Debug, Serialize)]
pub struct GammaModule {
    pub p: u64,
    pub dimension: usize,
    pub gamma: GaloisGroup,
    /// `(exponent, matrix)` for every element of `Gamma`, in group order.
    pub matrices: Vec<(u64, FpMatrix)>,
    pub basis: Option<UnitClassBasis>,
}

/// `A` with `sigma(u_i) = prod_j u_j^{A_ji}` modulo `p`-th powers.
pub fn action_matrix(basis: &UnitClassBasis, sigma: &GaloisAuto) -> Result<FpMatrix> {
    let (p, m, n) = (basis.p, basis.conductor, basis.dimension());
    let mut cols = Vec::with_capacity(n);
    for u in &basis.units {
        let image = galois_apply(sigma, u);
        let c = global_coordinates(&image, &basis.units, p, m)?
            .ok_or_else(|| Error::DoesNotSpan(format!("image of {u} under sigma_{}", sigma.exponent)))?;
        cols.push(c);
    }
    Ok(FpMatrix::from_columns(p, n, &cols))
}

impl GammaModule {
    /// Unit classes of `O_S[zeta_p/p]` with `Gamma = Gal(K(zeta_p)/K)`.
    pub fn from_units(ring: &RingSpec, basis: UnitClassBasis) -> Result<Self> {
        let gamma = GaloisGroup::fixing(basis.conductor, ring.m)?;
        let mut matrices = Vec::new();
        for sigma in gamma.autos() {
            matrices.push((sigma.exponent, action_matrix(&basis, &sigma)?));
        }
        let module = GammaModule { p: basis.p, dimension: basis.dimension(), gamma, matrices, basis: Some(basis) };
        module.check_relations()?;
        Ok(module)
    }

    /// A module given directly by its matrices.
    pub fn from_matrices(p: u64, gamma: GaloisGroup, matrices: Vec<(u64, FpMatrix)>) -> Result<Self> {
        let dimension = matrices.first().map_or(0, |(_, a)| a.rows);
        let module = GammaModule { p, dimension, gamma, matrices, basis: None };
        module.check_relations()?;
        Ok(module)
    }

    pub fn matrix(&self, exponent: u64) -> &FpMatrix {
        &self.matrices.iter().find(|(e, _)| *e == exponent).expect("element of Gamma").1
    }

    fn check_relations(&self) -> Result<()> {
        let m = self.gamma.conductor;
        for (a, ma) in &self.matrices {
            for (b, mb) in &self.matrices {
                if &ma.mul(mb) != self.matrix(a * b % m) {
                    return Err(Error::DoesNotSpan(format!(
                        "action matrices of sigma_{a} and sigma_{b} violate the group law"
                    )));
                }
            }
        }
        Ok(())
    }

    /// `|Gamma|^{-1} sum_sigma omega^k(sigma)^{-1} A_sigma`.
    pub fn projector(&self, chi: &OmegaCharacter, power: i64) -> Result<FpMatrix> {
        let p = self.p;
        let order = self.gamma.order() as u64;
        let inv_order = mod_inv(order % p, p)
            .ok_or_else(|| Error::Hypothesis(format!("|Gamma| = {order} is not invertible mod {p}")))?;
        let mut e = FpMatrix::zeros(p, self.dimension, self.dimension);
        for (a, ma) in &self.matrices {
            let sigma = GaloisAuto { conductor: self.gamma.conductor, exponent: *a };
            let w = chi.power_value(&sigma, -power);
            e = e.add(&ma.scale(w));
        }
        Ok(e.scale(inv_order))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Eigenspace {
    pub power: i64,
    pub projector: FpMatrix,
    /// Coordinate vectors of a basis, in the module basis.
    pub vectors: Vec<Vec<u64>>,
    /// Representatives of the basis vectors when the module comes from units.
    pub units: Vec<CycElem>,
}

impl Eigenspace {
    pub fn dimension(&self) -> usize {
        self.vectors.len()
    }
}

/// The `omega^power` eigenspace, as the image of the projector.
pub fn eigenspace(module: &GammaModule, chi: &OmegaCharacter, power: i64) -> Result<Eigenspace> {
    let projector = module.projector(chi, power)?;
    let vectors = projector.column_space();
    let units = match &module.basis {
        Some(b) => {
            let us: Vec<CycElem> =
                vectors.iter().map(|v| unit_product(&b.units, v, b.conductor)).collect::<Result<_>>()?;
            let check = verify_independence(&us, module.p)?;
            if check.dimension() != us.len() {
                return Err(Error::DoesNotSpan("eigenspace representatives are dependent".into()));
            }
            us
        }
        None => Vec::new(),
    };
    Ok(Eigenspace { power, projector, vectors, units })
}
