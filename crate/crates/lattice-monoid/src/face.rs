//! Localization at faces and morphisms of log points over a DVR.

use crate::error::{MonoidError, Result};
use crate::linalg::{dot, mat_vec, quotient_map, Matrix, Vector};
use crate::monoid::{MonoidHom, ToricMonoid};

/// `Q_K = F^{-1}Q / (F^{-1}Q)^×` together with the generization map `χ`.
#[derive(Clone, Debug)]
pub struct Localization {
    pub monoid: ToricMonoid,
    pub chi: Matrix,
}

impl Localization {
    pub fn apply(&self, x: &[i64]) -> Vector {
        mat_vec(&self.chi, x)
    }
}

fn check_face(q: &ToricMonoid, face: &[Vector]) -> Result<ToricMonoid> {
    if !q.is_sharp() {
        return Err(MonoidError::NotSharp);
    }
    if !q.is_saturated() {
        return Err(MonoidError::NotSaturated);
    }
    let hb = q.minimize();
    let not_a_face = || MonoidError::NotAFace(face.to_vec());
    if face.iter().any(|f| !hb.generators().contains(f)) {
        return Err(not_a_face());
    }
    let cone = hb.cone();
    let closure = cone.face_containing(face);
    let mut gens: Matrix = closure
        .generators
        .iter()
        .map(|&i| cone.generators()[i].clone())
        .collect();
    gens.sort();
    let mut given = face.to_vec();
    given.sort();
    given.dedup();
    if gens != given {
        return Err(not_a_face());
    }
    Ok(hb)
}

/// Quotient of `Q` by the saturated span of the face `F`, which is given
/// as a subset of the Hilbert basis of `Q`.
pub fn localize_at_face(q: &ToricMonoid, face: &[Vector]) -> Result<Localization> {
    let hb = check_face(q, face)?;
    let chi = quotient_map(face, q.rank());
    let images: Matrix = hb.generators().iter().map(|g| mat_vec(&chi, g)).collect();
    let monoid = ToricMonoid::new(chi.len(), images)?.minimize();
    Ok(Localization { monoid, chi })
}

/// A face `F` of a sharp fs monoid with a local functional `u: F -> N`.
#[derive(Clone, Debug)]
pub struct DvrLogData {
    monoid: ToricMonoid,
    face: Matrix,
    u: Vector,
}

impl DvrLogData {
    pub fn new(monoid: &ToricMonoid, face: Matrix, u: Vector) -> Result<DvrLogData> {
        check_face(monoid, &face)?;
        if u.len() != monoid.rank() {
            return Err(MonoidError::DimensionMismatch {
                expected: monoid.rank(),
                found: u.len(),
            });
        }
        if let Some(f) = face.iter().find(|f| dot(&u, f) <= 0) {
            return Err(MonoidError::Precondition(format!(
                "u is not positive on face generator {f:?}"
            )));
        }
        Ok(DvrLogData {
            monoid: monoid.clone(),
            face,
            u,
        })
    }

    pub fn monoid(&self) -> &ToricMonoid {
        &self.monoid
    }

    pub fn face(&self) -> &[Vector] {
        &self.face
    }

    pub fn u(&self) -> &[i64] {
        &self.u
    }

    pub fn localization(&self) -> Result<Localization> {
        localize_at_face(&self.monoid, &self.face)
    }
}

/// Given `φ: Q' -> Q` and `φ_K: Q'_K -> Q_K` compatible with the
/// generization maps, decides whether `u ∘ φ = u'` on `F'`.
pub fn dvr_morphism_exists(
    src: &DvrLogData,
    dst: &DvrLogData,
    phi: &MonoidHom,
    phi_k: &MonoidHom,
) -> Result<bool> {
    if phi.source() != dst.monoid() || phi.target() != src.monoid() {
        return Err(MonoidError::InvalidHom("φ must map Q' to Q".into()));
    }
    let loc_src = src.localization()?;
    let loc_dst = dst.localization()?;
    if phi_k.source() != &loc_dst.monoid || phi_k.target() != &loc_src.monoid {
        return Err(MonoidError::InvalidHom("φ_K must map Q'_K to Q_K".into()));
    }
    if !phi.is_local() || !phi_k.is_local() {
        return Err(MonoidError::InvalidHom(
            "homomorphisms must be local".into(),
        ));
    }
    for q in dst.monoid().generators() {
        if loc_src.apply(&phi.apply(q)) != phi_k.apply(&loc_dst.apply(q)) {
            return Err(MonoidError::InvalidHom(format!(
                "generization square does not commute at {q:?}"
            )));
        }
    }
    Ok(dst
        .face()
        .iter()
        .all(|f| dot(src.u(), &phi.apply(f)) == dot(dst.u(), f)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::saturate;

    #[test]
    fn localizations() {
        let n2 = ToricMonoid::free(2);
        let l = localize_at_face(&n2, &[vec![1, 0]]).unwrap();
        assert_eq!(l.monoid, ToricMonoid::free(1));
        assert_eq!(l.apply(&[3, 2]), vec![2]);
        let l0 = localize_at_face(&n2, &[]).unwrap();
        assert_eq!(l0.monoid, n2);
        let q = saturate(&ToricMonoid::new(2, vec![vec![0, 1], vec![2, -1]]).unwrap());
        let l = localize_at_face(&q, &[vec![0, 1]]).unwrap();
        assert_eq!(l.monoid, ToricMonoid::free(1));
        assert!(localize_at_face(&q, &[vec![1, 0]]).is_err());
    }

    #[test]
    fn identity_morphism() {
        let n2 = ToricMonoid::free(2);
        let d = DvrLogData::new(&n2, vec![vec![1, 0]], vec![2, 0]).unwrap();
        let loc = d.localization().unwrap();
        let id = MonoidHom::identity(&n2);
        let id_k = MonoidHom::identity(&loc.monoid);
        assert!(dvr_morphism_exists(&d, &d, &id, &id_k).unwrap());
        let d2 = DvrLogData::new(&n2, vec![vec![1, 0]], vec![3, 0]).unwrap();
        assert!(!dvr_morphism_exists(&d, &d2, &id, &id_k).unwrap());
    }
}
