//! `Ext^1(mu_p, Z/p)` over `O_S` as the kernel of the localization map on the
//! `omega^2`-eigenspace of `S`-unit classes of `L = K(zeta_p)`.

use std::sync::Arc;

use serde::Serialize;

use crate::cyclotomic::{CycElem, GaloisGroup};
use crate::error::{Error, Result};
use crate::galois::{eigenspace, GammaModule, OmegaCharacter};
use crate::global::{
    class_group_trivial_certificate, global_coordinates, s_unit_generators_mod_p, unit_product, ClassCertificate,
    RingSpec, UnitClassBasis, Verdict,
};
use crate::kummer::{t_isomorphic, NumberField, PowerClassRing};
use crate::linalg::{all_vectors, rank_of, FpMatrix};
use crate::local::{
    embed_global, is_local_pth_power_global, is_pth_power_local, local_coordinates, local_power_class_generators,
    local_product, LocalFieldSpec, PadicElem,
};

/// Largest eigenspace dimension for which the kernel is also found by exhaustion.
pub const SEARCH_DIMENSION_BOUND: usize = 6;

#[derive(Clone, Debug, Serialize)]
pub struct LocalFieldSummary {
    pub p: u64,
    pub conductor: u64,
    pub ramification: u64,
    pub residue_degree: u64,
    pub precision: u32,
    pub defining_poly: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct LocalImage {
    pub unit: CycElem,
    pub image: PadicElem,
    pub is_pth_power: bool,
    /// Coordinates in the local basis.
    pub coordinates: Vec<u64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RationalUnitCheck {
    /// `-1`, the primes of `S` and `p`.
    pub units: Vec<i64>,
    /// Coordinates in the eigenspace basis, when the unit lies in the eigenspace.
    pub coordinates: Vec<Option<Vec<u64>>>,
    pub span_dimension: usize,
    pub spans_eigenspace: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExtAudit {
    pub expected_unit_dimension: usize,
    pub global_basis: UnitClassBasis,
    pub gamma: GaloisGroup,
    pub omega_order: u64,
    pub eigenspace_vectors: Vec<Vec<u64>>,
    pub eigenspace_units: Vec<CycElem>,
    pub local_field: LocalFieldSummary,
    pub local_basis: Vec<PadicElem>,
    pub local_images: Vec<LocalImage>,
    /// Column `j` holds the local coordinates of eigenspace unit `j`.
    pub coordinate_matrix: FpMatrix,
    /// Row-reduced kernel basis from exhaustive search, when it ran.
    pub search_kernel: Option<Vec<Vec<u64>>>,
    pub linear_kernel: Vec<Vec<u64>>,
    pub paths_agree: bool,
    pub soundness_verified: bool,
    pub rational_units: RationalUnitCheck,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExtResult {
    pub ring: RingSpec,
    pub dimension: usize,
    pub generators: Vec<CycElem>,
    /// The generators that are rational, as rationals.
    pub rational_generators: Vec<Option<String>>,
    pub descriptions: Vec<String>,
    pub certificate: ClassCertificate,
    pub audit: ExtAudit,
}

fn canonical_span(p: u64, vectors: &[Vec<u64>], n: usize) -> Vec<Vec<u64>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let rows: Vec<Vec<i64>> = vectors.iter().map(|v| v.iter().map(|&x| x as i64).collect()).collect();
    let (r, pivots) = FpMatrix::from_rows(p, &rows).rref();
    (0..pivots.len()).map(|i| r.row(i)[..n].to_vec()).collect()
}

/// Runs the full pipeline with the given local precision, or the default.
pub fn compute_ext(ring: &RingSpec, precision: Option<u32>) -> Result<ExtResult> {
    let p = ring.p;
    let big = ring.big_conductor();
    let certificate = class_group_trivial_certificate(big, &ring.inverted_primes())?;
    if certificate.verdict != Verdict::Trivial {
        return Err(Error::Hypothesis(format!(
            "class group of Q(zeta_{big}) is not certified trivial (verdict {:?})",
            certificate.verdict
        )));
    }

    let global_basis = s_unit_generators_mod_p(ring)?;
    let module = GammaModule::from_units(ring, global_basis.clone())?;
    let chi = OmegaCharacter::new(p, module.gamma.clone())?;
    let eigen = eigenspace(&module, &chi, 2)?;
    let d = eigen.dimension();

    let spec = match precision {
        Some(prec) => LocalFieldSpec::new(p, big, prec)?,
        None => LocalFieldSpec::with_default_precision(p, big)?,
    };
    let local_basis = local_power_class_generators(&spec)?;

    let images: Vec<PadicElem> = eigen.units.iter().map(|u| embed_global(u, &spec)).collect::<Result<_>>()?;
    let mut local_images = Vec::with_capacity(d);
    let mut columns = Vec::with_capacity(d);
    for (u, x) in eigen.units.iter().zip(&images) {
        let coordinates =
            local_coordinates(x, &local_basis)?.ok_or_else(|| Error::DoesNotSpan(format!("local image of {u}")))?;
        columns.push(coordinates.clone());
        local_images.push(LocalImage {
            unit: u.clone(),
            image: x.clone(),
            is_pth_power: is_pth_power_local(x)?,
            coordinates,
        });
    }
    let coordinate_matrix = FpMatrix::from_columns(p, local_basis.len(), &columns);
    let linear_kernel = canonical_span(p, &coordinate_matrix.kernel(), d);

    let search_kernel = if d <= SEARCH_DIMENSION_BOUND {
        let mut hits = Vec::new();
        for v in all_vectors(p, d) {
            if is_pth_power_local(&local_product(&images, &v, &spec)?)? {
                hits.push(v);
            }
        }
        Some(canonical_span(p, &hits, d))
    } else {
        None
    };
    let paths_agree = search_kernel.as_ref().is_none_or(|k| *k == linear_kernel);
    if !paths_agree {
        return Err(Error::DoesNotSpan("exhaustive and linear kernels differ".into()));
    }
    let kernel = search_kernel.clone().unwrap_or_else(|| linear_kernel.clone());

    let generators: Vec<CycElem> = kernel.iter().map(|v| unit_product(&eigen.units, v, big)).collect::<Result<_>>()?;
    let kernel_units_ok = generators
        .iter()
        .map(|g| is_local_pth_power_global(g, &spec))
        .collect::<Result<Vec<bool>>>()?
        .into_iter()
        .all(|b| b);
    let outside_ok = (0..d)
        .filter(|&j| rank_of(p, &[kernel.clone(), vec![unit_vector(d, j)]].concat()) > kernel.len())
        .all(|j| !local_images[j].is_pth_power);
    let soundness_verified = kernel_units_ok && outside_ok;
    if !soundness_verified {
        return Err(Error::DoesNotSpan("kernel generators failed re-verification".into()));
    }

    let rational_units = rational_unit_check(ring, &eigen.units)?;
    let rational_generators = generators.iter().map(|g| g.to_rational().map(|q| q.to_string())).collect();
    let descriptions = generators
        .iter()
        .map(|g| {
            let r = g.to_rational().map_or_else(|| g.to_string(), |q| q.to_string());
            format!("generically isomorphic to the extension T({r})")
        })
        .collect();

    Ok(ExtResult {
        ring: ring.clone(),
        dimension: generators.len(),
        generators,
        rational_generators,
        descriptions,
        certificate,
        audit: ExtAudit {
            expected_unit_dimension: ring.expected_unit_dimension(),
            global_basis,
            gamma: module.gamma.clone(),
            omega_order: chi.order(),
            eigenspace_vectors: eigen.vectors.clone(),
            eigenspace_units: eigen.units.clone(),
            local_field: LocalFieldSummary {
                p,
                conductor: spec.conductor,
                ramification: spec.ramification,
                residue_degree: spec.residue_degree,
                precision: spec.precision,
                defining_poly: spec.defining_poly.clone(),
            },
            local_basis,
            local_images,
            coordinate_matrix,
            search_kernel,
            linear_kernel,
            paths_agree,
            soundness_verified,
            rational_units,
        },
    })
}

fn unit_vector(n: usize, j: usize) -> Vec<u64> {
    let mut v = vec![0; n];
    v[j] = 1;
    v
}

fn rational_unit_check(ring: &RingSpec, eigen_units: &[CycElem]) -> Result<RationalUnitCheck> {
    let (p, big) = (ring.p, ring.big_conductor());
    let mut units = vec![-1i64];
    units.extend(ring.inverted_primes().iter().map(|&q| q as i64));
    let mut coordinates = Vec::with_capacity(units.len());
    for &n in &units {
        coordinates.push(global_coordinates(&CycElem::from_int(big, n), eigen_units, p, big)?);
    }
    let found: Vec<Vec<u64>> = coordinates.iter().flatten().cloned().collect();
    let span_dimension = rank_of(p, &found);
    Ok(RationalUnitCheck { units, coordinates, span_dimension, spans_eigenspace: span_dimension == eigen_units.len() })
}

/// Whether `T(r)` becomes split over the completion `Q_p(zeta_M)`.
pub fn locally_split(r: &CycElem, p: u64, spec: &Arc<LocalFieldSpec>) -> Result<bool> {
    if spec.p != p {
        return Err(Error::InvalidArgument(format!("completion is {}-adic", spec.p)));
    }
    is_local_pth_power_global(r, spec)
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassCount {
    pub p: u64,
    /// `dim_{F_p} R^*/(R^*)^p`.
    pub k: usize,
    pub unit_classes: usize,
    pub isomorphism_classes: usize,
    /// `1 + (p^k - 1)/(p - 1)`: the trivial class and one per line.
    pub expected: usize,
    pub split_classes: usize,
    pub holds: bool,
}

/// Counts pairwise non-isomorphic `T(r)` as `r` runs over the span of `units`.
pub fn count_t_classes<R: PowerClassRing>(ring: &R, p: u64, units: &[R::Elem]) -> Result<ClassCount> {
    let k = units.len();
    let mut elems = Vec::new();
    for v in all_vectors(p, k) {
        let mut r = ring.one();
        for (u, &e) in units.iter().zip(&v) {
            r = ring.mul(&r, &ring.pow(u, e)?)?;
        }
        elems.push(r);
    }
    let mut reps: Vec<R::Elem> = Vec::new();
    for r in &elems {
        let mut new = true;
        for s in &reps {
            if t_isomorphic(ring, p, r, s)? {
                new = false;
                break;
            }
        }
        if new {
            reps.push(r.clone());
        }
    }
    let one = ring.one();
    let mut split_classes = 0;
    for r in &elems {
        if t_isomorphic(ring, p, r, &one)? {
            split_classes += 1;
        }
    }
    let pk = (p as usize).pow(k as u32);
    let expected = 1 + (pk - 1) / (p as usize - 1);
    Ok(ClassCount {
        p,
        k,
        unit_classes: elems.len(),
        isomorphism_classes: reps.len(),
        expected,
        split_classes,
        holds: reps.len() == expected && split_classes == 1 && elems.len() == pk,
    })
}

/// For `R = O_S[zeta_p/p]` with trivial class group, every extension class of
/// `Z/p` by `mu_p` comes from a unit, so the classes of `T(r)` are counted by
/// the subgroups of `R^*/(R^*)^p` of order at most `p`.
pub fn fppf_dimension_check(ring: &RingSpec) -> Result<ClassCount> {
    let big = ring.big_conductor();
    let certificate = class_group_trivial_certificate(big, &ring.inverted_primes())?;
    if certificate.verdict != Verdict::Trivial {
        return Err(Error::Hypothesis(format!("class group of Q(zeta_{big}) is not certified trivial")));
    }
    let basis = s_unit_generators_mod_p(ring)?;
    count_t_classes(&NumberField { conductor: big }, ring.p, &basis.units)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::local::same_subgroup;

    fn run(m: u64, p: u64, s: Vec<u64>) -> ExtResult {
        compute_ext(&RingSpec::new(m, p, s).unwrap(), None).unwrap()
    }

    #[test]
    fn z_third() {
        let r = run(1, 2, vec![3]);
        assert_eq!(r.dimension, 0);
        assert!(r.audit.paths_agree && r.audit.soundness_verified);
        assert_eq!(r.audit.eigenspace_units.len(), 3);
    }

    #[test]
    fn z_seventh() {
        let r = run(1, 2, vec![7]);
        assert_eq!(r.dimension, 1);
        let spec = LocalFieldSpec::with_default_precision(2, 1).unwrap();
        let g = embed_global(&r.generators[0], &spec).unwrap();
        let minus_seven = spec.from_int(-7).unwrap();
        assert!(same_subgroup(&[g], &[minus_seven]).unwrap());
        let q = NumberField { conductor: 1 };
        assert!(t_isomorphic(&q, 2, &r.generators[0], &CycElem::from_int(1, -7)).unwrap());
        assert!(r.descriptions[0].starts_with("generically isomorphic to the extension T("));
    }

    #[test]
    fn enlarging_s() {
        assert_eq!(run(1, 2, vec![]).dimension, 0);
        assert_eq!(run(1, 2, vec![7]).dimension, 1);
    }

    #[test]
    fn gaussian_cubes() {
        let r = run(4, 3, vec![2]);
        assert_eq!(r.dimension, 0);
        assert_eq!(r.audit.eigenspace_units.len(), 2);
        assert!(r.audit.rational_units.spans_eigenspace);
        assert_eq!(r.audit.gamma.order(), 2);
    }

    #[test]
    fn deterministic_audit() {
        let ring = RingSpec::new(1, 2, vec![3, 7]).unwrap();
        let a = format!("{:?}", compute_ext(&ring, None).unwrap());
        let b = format!("{:?}", compute_ext(&ring, None).unwrap());
        assert_eq!(a, b);
    }

    #[test]
    fn precision_floor_respected() {
        let ring = RingSpec::new(1, 2, vec![3]).unwrap();
        assert!(matches!(compute_ext(&ring, Some(1)), Err(Error::Precision { .. })));
        assert_eq!(compute_ext(&ring, Some(40)).unwrap().dimension, 0);
    }

    #[test]
    fn class_counts() {
        let c = fppf_dimension_check(&RingSpec::new(1, 2, vec![3]).unwrap()).unwrap();
        assert_eq!((c.k, c.unit_classes, c.isomorphism_classes), (3, 8, 8));
        assert!(c.holds);
        let q = NumberField { conductor: 1 };
        let empty = count_t_classes(&q, 3, &[]).unwrap();
        assert_eq!((empty.isomorphism_classes, empty.split_classes), (1, 1));
        assert!(empty.holds);
    }

    #[test]
    fn minus_seven_locally_split() {
        let q = NumberField { conductor: 1 };
        let r = CycElem::from_int(1, -7);
        assert!(!t_isomorphic(&q, 2, &r, &q.one()).unwrap());
        let spec = LocalFieldSpec::with_default_precision(2, 1).unwrap();
        assert!(locally_split(&r, 2, &spec).unwrap());
        assert!(!locally_split(&CycElem::from_int(1, 7), 2, &spec).unwrap());
    }
}
