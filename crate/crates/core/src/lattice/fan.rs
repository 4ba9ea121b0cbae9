use std::collections::{BTreeMap, BTreeSet};

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::cone::Cone;
use super::LatticeError;

/// A face-closed collection of strongly convex cones meeting along common faces.
///
/// Cones are kept sorted by their primitive extreme rays, so two fans with the
/// same cone set compare equal and serialize identically.
#[derive(Clone, Debug)]
pub struct Fan {
    dim: usize,
    cones: Vec<Cone>,
}

impl Fan {
    /// Face closure of `cones`, after checking that every pair meets in a common face.
    pub fn new(dim: usize, cones: Vec<Cone>) -> Result<Fan, LatticeError> {
        for c in &cones {
            if c.ambient_dim() != dim {
                return Err(LatticeError::AmbientMismatch);
            }
            if !c.is_pointed() {
                return Err(LatticeError::NotPointed);
            }
        }
        for (i, a) in cones.iter().enumerate() {
            for b in &cones[i + 1..] {
                let meet = a.intersection(b)?;
                if !meet.is_face_of(a) || !meet.is_face_of(b) {
                    return Err(LatticeError::NotAFan(format!(
                        "{a} and {b} meet in {meet}, which is not a common face"
                    )));
                }
            }
        }
        Ok(Self::closure(dim, cones))
    }

    /// Face closure without the pairwise check, for cone families that are
    /// fans by construction (normal fans, Weyl fans). Tests cross-check these
    /// against [`Fan::new`].
    pub(crate) fn from_cones_unchecked(dim: usize, cones: Vec<Cone>) -> Fan {
        Self::closure(dim, cones)
    }

    /// The empty fan (no cones at all, not even the origin).
    pub fn empty(dim: usize) -> Fan {
        Fan {
            dim,
            cones: Vec::new(),
        }
    }

    fn closure(dim: usize, cones: Vec<Cone>) -> Fan {
        let mut by_key: BTreeMap<Vec<Vec<i64>>, Cone> = BTreeMap::new();
        for c in cones {
            for f in c.faces() {
                by_key.entry(f.key()).or_insert(f);
            }
        }
        let mut cones: Vec<Cone> = by_key.into_values().collect();
        cones.sort_by(|a, b| (a.dimension(), a.key()).cmp(&(b.dimension(), b.key())));
        Fan { dim, cones }
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    /// Every cone, sorted by dimension then by rays.
    pub fn cones(&self) -> &[Cone] {
        &self.cones
    }

    pub fn is_empty(&self) -> bool {
        self.cones.is_empty()
    }

    /// Cones that are not a proper face of another member.
    pub fn maximal_cones(&self) -> Vec<&Cone> {
        self.cones
            .iter()
            .filter(|c| {
                !self
                    .cones
                    .iter()
                    .any(|d| d.dimension() > c.dimension() && d.contains_cone(c))
            })
            .collect()
    }

    /// Primitive ray generators of the one-dimensional cones.
    pub fn rays(&self) -> Vec<Vec<i64>> {
        let set: BTreeSet<Vec<i64>> = self
            .cones
            .iter()
            .filter(|c| c.dimension() == 1)
            .flat_map(|c| c.rays().to_vec())
            .collect();
        set.into_iter().collect()
    }

    pub fn support_contains_int(&self, x: &[i64]) -> bool {
        self.cones.iter().any(|c| c.contains_int(x))
    }

    fn keys(&self) -> BTreeSet<Vec<Vec<i64>>> {
        self.cones.iter().map(Cone::key).collect()
    }
}

impl Serialize for Fan {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Fan", 3)?;
        st.serialize_field("ambient_dim", &self.dim)?;
        st.serialize_field("rays", &self.rays())?;
        st.serialize_field("cones", &self.cones)?;
        st.end()
    }
}

impl PartialEq for Fan {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.keys() == other.keys()
    }
}

/// True iff every cone of `fine` lies in a cone of `coarse` and the supports agree.
pub fn is_refinement(fine: &Fan, coarse: &Fan) -> Result<bool, LatticeError> {
    if fine.dim != coarse.dim {
        return Err(LatticeError::AmbientMismatch);
    }
    let contained = fine
        .cones
        .iter()
        .all(|c| coarse.cones.iter().any(|d| d.contains_cone(c)));
    if !contained {
        return Ok(false);
    }
    // |coarse| ⊆ |fine|: the fine cones inside each maximal coarse cone σ
    // must cover it. For cones meeting in faces that holds iff every
    // codimension-one face of a top-dimensional piece is either shared by two
    // pieces or lies on the boundary of σ.
    for sigma in coarse.maximal_cones() {
        let d = sigma.dimension();
        if d == 0 {
            if !fine.cones.iter().any(|c| c.dimension() == 0) {
                return Ok(false);
            }
            continue;
        }
        let pieces: Vec<&Cone> = fine
            .cones
            .iter()
            .filter(|c| c.dimension() == d && sigma.contains_cone(c))
            .collect();
        if pieces.is_empty() {
            return Ok(false);
        }
        let sigma_facets = sigma.facet_normals();
        let mut walls: BTreeMap<Vec<Vec<i64>>, (usize, Cone)> = BTreeMap::new();
        for p in &pieces {
            for f in p.faces().into_iter().filter(|f| f.dimension() + 1 == d) {
                walls.entry(f.key()).or_insert((0, f)).0 += 1;
            }
        }
        for (count, wall) in walls.values() {
            if *count >= 2 {
                continue;
            }
            let on_boundary = sigma_facets.iter().any(|n| {
                wall.generators()
                    .iter()
                    .all(|g| g.iter().zip(n).map(|(a, b)| a * b).sum::<i64>() == 0)
            });
            if !on_boundary {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
