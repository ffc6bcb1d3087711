//! The group on `R x R x R^3` with
//! `(r1, r2, u)(r1', r2', u') = (r1 + r1', r2 + r2', u + u' + b r1 r2' e_i*)`.
//! It is abelian exactly when `b = 0`, which separates `M_{1,0}` from the
//! loops `M_{1,b}` with `b != 0`.

use std::fmt;

use serde::Serialize;

use super::{vec_add, GElem, TElem, TrialityError, TrialityGroup, Vec3};
use crate::ring::{Elem, Ring};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct PreimageElem {
    pub r1: Elem,
    pub r2: Elem,
    pub u: Vec3,
}

impl PreimageElem {
    pub fn new(r1: Elem, r2: Elem) -> Self {
        PreimageElem {
            r1,
            r2,
            u: [Elem::ZERO; 3],
        }
    }
}

impl fmt::Display for PreimageElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({},{},[{},{},{}])",
            self.r1, self.r2, self.u[0], self.u[1], self.u[2]
        )
    }
}

#[derive(Debug, Clone)]
pub struct PreimageGroup {
    ring: Ring,
    b: Elem,
    coordinate: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PreimageReport {
    pub ring: String,
    pub b: u32,
    pub coordinate: usize,
    pub order: u64,
    pub abelian: bool,
    pub expected_abelian: bool,
    pub ok: bool,
    /// A non-commuting pair and both products.
    pub witness: Option<[String; 4]>,
}

impl PreimageGroup {
    /// `coordinate` selects `e_i*` and must be 1, 2 or 3.
    pub fn new(ring: Ring, b: Elem, coordinate: usize) -> Result<Self, TrialityError> {
        if !(1..=3).contains(&coordinate) {
            return Err(TrialityError::BadCoordinate(coordinate));
        }
        ring.element(u64::from(b.0))
            .map_err(crate::mab::MabError::from)?;
        Ok(PreimageGroup {
            ring,
            b,
            coordinate,
        })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn b(&self) -> Elem {
        self.b
    }

    pub fn order(&self) -> u64 {
        u64::from(self.ring.size()).pow(5)
    }

    pub fn identity(&self) -> PreimageElem {
        PreimageElem::new(Elem::ZERO, Elem::ZERO)
    }

    pub fn mul(&self, x: &PreimageElem, y: &PreimageElem) -> PreimageElem {
        let ring = &self.ring;
        let mut u = vec_add(ring, &x.u, &y.u);
        let i = self.coordinate - 1;
        u[i] = ring.add(u[i], ring.mul(self.b, ring.mul(x.r1, y.r2)));
        PreimageElem {
            r1: ring.add(x.r1, y.r1),
            r2: ring.add(x.r2, y.r2),
            u,
        }
    }

    /// First non-commuting pair. The `u` part is central, so only pairs
    /// with `u = 0` are searched.
    pub fn commutator_witness(&self) -> Option<(PreimageElem, PreimageElem)> {
        let els: Vec<PreimageElem> = self
            .ring
            .elements()
            .flat_map(|a| self.ring.elements().map(move |b| PreimageElem::new(a, b)))
            .collect();
        els.iter().find_map(|x| {
            els.iter()
                .find(|y| self.mul(x, y) != self.mul(y, x))
                .map(|y| (*x, *y))
        })
    }

    pub fn report(&self) -> PreimageReport {
        let w = self.commutator_witness();
        let abelian = w.is_none();
        let expected_abelian = self.b == Elem::ZERO;
        PreimageReport {
            ring: self.ring.to_string(),
            b: self.b.0,
            coordinate: self.coordinate,
            order: self.order(),
            abelian,
            expected_abelian,
            ok: abelian == expected_abelian,
            witness: w.map(|(x, y)| {
                [
                    x.to_string(),
                    y.to_string(),
                    self.mul(&x, &y).to_string(),
                    self.mul(&y, &x).to_string(),
                ]
            }),
        }
    }

    /// `(r1, r2, u) -> (1, r1 e_i, r2 e_i, u)` in `W`, a homomorphism when
    /// `group` has the same `b`.
    pub fn to_w(&self, x: &PreimageElem) -> GElem {
        let i = self.coordinate - 1;
        let mut v1 = [Elem::ZERO; 3];
        let mut v2 = [Elem::ZERO; 3];
        v1[i] = x.r1;
        v2[i] = x.r2;
        GElem {
            t: TElem::ONE,
            v1,
            v2,
            u: x.u,
        }
    }

    pub fn matches_w_slice(
        &self,
        group: &TrialityGroup,
        x: &PreimageElem,
        y: &PreimageElem,
    ) -> bool {
        group.g_mul(&self.to_w(x), &self.to_w(y)) == self.to_w(&self.mul(x, y))
    }
}
