//! The loops `M_{a,b}` on tuples `(r, x, y, z)` with `r` in a cyclic unit
//! subgroup `R_0` and `x, y, z` in `R`.
//!
//! Multiplication and inversion use the closed-form tuple formulas:
//!
//! ```text
//! (r1,x1,y1,z1)(r2,x2,y2,z2) = (r1 r2, x1 + r1 x2, y1 + r1 y2,
//!                               r2 z1 + z2 + a(x1 y2 - x2 y1) + b r1^-1 r2 x1 y2)
//! (r,x,y,z)^-1               = (r^-1, -r^-1 x, -r^-1 y, -r^-1 z + b x y)
//! ```
//!
//! The carrier is ordered lexicographically by (position of `r` in the
//! power list of `R_0`, code of `x`, code of `y`, code of `z`).

mod analysis;

pub use analysis::{
    find_associator_witness, n_commutative_sweep, scale_isomorphism, structure_report,
    structure_report_with, Conditions, ScaleIsomorphism, StructureReport, Witnesses,
};

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::loops::{FiniteLoop, Magma};
use crate::ring::{Elem, Ring, RingError, UnitSubgroup};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MabError {
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error("neither R_0^3 = 1 nor b = 0 holds")]
    NoCondition,
    #[error("neither a nor b is a unit")]
    NoUnitParameter,
    #[error("parameter code {0} outside the ring")]
    ParameterOutOfRange(u32),
    #[error("{0} is not an element of this loop")]
    NotInLoop(MabElem),
    #[error("the abelian-by-cyclic product needs (a, b) = (1, -2), got ({0}, {1})")]
    NotAbelianByCyclicParams(Elem, Elem),
    #[error("{0} is not a unit")]
    NotUnit(Elem),
    #[error("loop order overflows the index space")]
    TooLarge,
    #[error("element literal `{0}` must look like (r,x,y,z)")]
    BadLiteral(String),
}

/// Parameters `(R, R_0, a, b)`.
#[derive(Debug, Clone, PartialEq)]
pub struct MabParams {
    ring: Ring,
    r0: UnitSubgroup,
    a: Elem,
    b: Elem,
    validated: bool,
}

impl MabParams {
    /// Requires condition (I) `R_0^3 = 1` or (II) `b = 0`, and that `a` or
    /// `b` is a unit.
    pub fn new(r0: UnitSubgroup, a: Elem, b: Elem) -> Result<Self, MabError> {
        let p = Self::new_unchecked(r0, a, b)?;
        if !p.condition_i() && !p.condition_ii() {
            return Err(MabError::NoCondition);
        }
        if !p.ring.is_unit(a) && !p.ring.is_unit(b) {
            return Err(MabError::NoUnitParameter);
        }
        Ok(MabParams {
            validated: true,
            ..p
        })
    }

    /// Skips the (I)/(II) and unit checks. Results on such parameters are
    /// outside the construction's guarantees and are labelled unchecked.
    pub fn new_unchecked(r0: UnitSubgroup, a: Elem, b: Elem) -> Result<Self, MabError> {
        let ring = r0.ring().clone();
        for e in [a, b] {
            if e.0 >= ring.size() {
                return Err(MabError::ParameterOutOfRange(e.0));
            }
        }
        Ok(MabParams {
            ring,
            r0,
            a,
            b,
            validated: false,
        })
    }

    /// Convenience constructor from a ring descriptor, a generator of `R_0`
    /// and integer parameters reduced into the ring.
    pub fn from_parts(ring: &str, generator: u32, a: i64, b: i64) -> Result<Self, MabError> {
        let ring = Ring::parse(ring)?;
        let r0 = ring.cyclic_subgroup(Elem(generator))?;
        let (a, b) = (ring.from_int(a), ring.from_int(b));
        Self::new(r0, a, b)
    }

    /// Like [`from_parts`](Self::from_parts) with `R_0` chosen as the
    /// subgroup generated by the first unit of the requested order.
    pub fn with_r0_order(ring: &str, order: u64, a: i64, b: i64) -> Result<Self, MabError> {
        let ring = Ring::parse(ring)?;
        let g = ring.element_of_order(order)?;
        Self::from_parts(&ring.to_string(), g.0, a, b)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn r0(&self) -> &UnitSubgroup {
        &self.r0
    }

    pub fn a(&self) -> Elem {
        self.a
    }

    pub fn b(&self) -> Elem {
        self.b
    }

    pub fn is_validated(&self) -> bool {
        self.validated
    }

    pub fn condition_i(&self) -> bool {
        self.r0.has_exponent_three()
    }

    pub fn condition_ii(&self) -> bool {
        self.b == Elem::ZERO
    }

    /// Same ring and `R_0`, new `(a, b)`; validated like [`MabParams::new`].
    pub fn with_ab(&self, a: Elem, b: Elem) -> Result<Self, MabError> {
        Self::new(self.r0.clone(), a, b)
    }
}

/// A tuple `(r, x, y, z)` of ring-element codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct MabElem {
    pub r: Elem,
    pub x: Elem,
    pub y: Elem,
    pub z: Elem,
}

impl MabElem {
    pub fn new(r: u32, x: u32, y: u32, z: u32) -> Self {
        MabElem {
            r: Elem(r),
            x: Elem(x),
            y: Elem(y),
            z: Elem(z),
        }
    }
}

impl fmt::Display for MabElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{})", self.r, self.x, self.y, self.z)
    }
}

/// Splits `(c1,c2,...)` into trimmed coordinate strings.
pub(crate) fn split_tuple(s: &str) -> Option<Vec<&str>> {
    let inner = s.trim().strip_prefix('(')?.strip_suffix(')')?;
    Some(inner.split(',').map(str::trim).collect())
}

impl FromStr for MabElem {
    type Err = MabError;

    /// Raw codes only; use [`MabLoop::parse_elem`] for negative literals.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || MabError::BadLiteral(s.to_string());
        let parts = split_tuple(s).ok_or_else(bad)?;
        if parts.len() != 4 {
            return Err(bad());
        }
        let c: Vec<u32> = parts
            .iter()
            .map(|p| p.parse().map_err(|_| bad()))
            .collect::<Result<_, _>>()?;
        Ok(MabElem::new(c[0], c[1], c[2], c[3]))
    }
}

/// The loop `M_{a,b}`.
#[derive(Debug, Clone)]
pub struct MabLoop {
    params: MabParams,
    q: usize,
    order: usize,
    /// `r_pos[code]` = exponent of `code` in `R_0`, or `u32::MAX`.
    r_pos: Vec<u32>,
}

impl MabLoop {
    pub fn new(params: MabParams) -> Result<Self, MabError> {
        let q = params.ring.size() as usize;
        if q > 1 << 20 {
            return Err(MabError::TooLarge);
        }
        let order = q
            .checked_pow(3)
            .and_then(|c| c.checked_mul(params.r0.order()))
            .ok_or(MabError::TooLarge)?;
        let mut r_pos = vec![u32::MAX; q];
        for (i, r) in params.r0.elements().iter().enumerate() {
            r_pos[r.0 as usize] = i as u32;
        }
        Ok(MabLoop {
            params,
            q,
            order,
            r_pos,
        })
    }

    pub fn params(&self) -> &MabParams {
        &self.params
    }

    pub fn ring(&self) -> &Ring {
        &self.params.ring
    }

    pub fn identity_elem(&self) -> MabElem {
        MabElem::new(1, 0, 0, 0)
    }

    pub fn contains(&self, p: &MabElem) -> bool {
        let q = self.q as u32;
        p.x.0 < q
            && p.y.0 < q
            && p.z.0 < q
            && self
                .r_pos
                .get(p.r.0 as usize)
                .is_some_and(|&i| i != u32::MAX)
    }

    pub fn index_of(&self, p: &MabElem) -> Option<usize> {
        if !self.contains(p) {
            return None;
        }
        let q = self.q;
        let ri = self.r_pos[p.r.0 as usize] as usize;
        Some(((ri * q + p.x.0 as usize) * q + p.y.0 as usize) * q + p.z.0 as usize)
    }

    pub fn elem(&self, index: usize) -> MabElem {
        let q = self.q;
        let z = index % q;
        let y = (index / q) % q;
        let x = (index / (q * q)) % q;
        let ri = index / (q * q * q);
        MabElem {
            r: self.params.r0.elements()[ri],
            x: Elem(x as u32),
            y: Elem(y as u32),
            z: Elem(z as u32),
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = MabElem> + '_ {
        (0..self.order).map(|i| self.elem(i))
    }

    /// Parses `(r,x,y,z)`; coordinates may be negative integers.
    pub fn parse_elem(&self, s: &str) -> Result<MabElem, MabError> {
        let bad = || MabError::BadLiteral(s.to_string());
        let parts = split_tuple(s).ok_or_else(bad)?;
        if parts.len() != 4 {
            return Err(bad());
        }
        let ring = self.ring();
        let c: Vec<Elem> = parts
            .iter()
            .map(|p| ring.parse_elem(p))
            .collect::<Result<_, _>>()?;
        let p = MabElem {
            r: c[0],
            x: c[1],
            y: c[2],
            z: c[3],
        };
        if self.contains(&p) {
            Ok(p)
        } else {
            Err(MabError::NotInLoop(p))
        }
    }

    #[inline]
    fn r_inv(&self, r: Elem) -> Elem {
        self.ring().inverse(r).expect("R_0 consists of units")
    }

    /// The closed-form product. Inputs are assumed to lie in the loop.
    pub fn mul(&self, p: &MabElem, q: &MabElem) -> MabElem {
        let ring = self.ring();
        let (a, b) = (self.params.a, self.params.b);
        let x1y2 = ring.mul(p.x, q.y);
        let x2y1 = ring.mul(q.x, p.y);
        let mut z = ring.add(ring.mul(q.r, p.z), q.z);
        z = ring.add(z, ring.mul(a, ring.sub(x1y2, x2y1)));
        if b != Elem::ZERO {
            let coef = ring.mul(b, ring.mul(self.r_inv(p.r), q.r));
            z = ring.add(z, ring.mul(coef, x1y2));
        }
        MabElem {
            r: ring.mul(p.r, q.r),
            x: ring.add(p.x, ring.mul(p.r, q.x)),
            y: ring.add(p.y, ring.mul(p.r, q.y)),
            z,
        }
    }

    pub fn try_mul(&self, p: &MabElem, q: &MabElem) -> Result<MabElem, MabError> {
        for e in [p, q] {
            if !self.contains(e) {
                return Err(MabError::NotInLoop(*e));
            }
        }
        Ok(self.mul(p, q))
    }

    pub fn inv(&self, p: &MabElem) -> MabElem {
        let ring = self.ring();
        let ri = self.r_inv(p.r);
        let neg_ri = ring.neg(ri);
        MabElem {
            r: ri,
            x: ring.mul(neg_ri, p.x),
            y: ring.mul(neg_ri, p.y),
            z: ring.add(
                ring.mul(neg_ri, p.z),
                ring.mul(self.params.b, ring.mul(p.x, p.y)),
            ),
        }
    }

    /// The abelian-by-cyclic product
    /// `z = r2 z1 + z2 + (1 - 2 r1^-1 r2) x1 y2 - x2 y1`, only defined
    /// for `(a, b) = (1, -2)`.
    pub fn mul_abelian_by_cyclic(&self, p: &MabElem, q: &MabElem) -> Result<MabElem, MabError> {
        let ring = self.ring();
        let (a, b) = (self.params.a, self.params.b);
        if a != Elem::ONE || b != ring.from_int(-2) {
            return Err(MabError::NotAbelianByCyclicParams(a, b));
        }
        self.try_mul(p, q)?;
        let two = ring.from_int(2);
        let coef = ring.sub(Elem::ONE, ring.mul(two, ring.mul(self.r_inv(p.r), q.r)));
        let z = ring.sub(
            ring.add(
                ring.add(ring.mul(q.r, p.z), q.z),
                ring.mul(coef, ring.mul(p.x, q.y)),
            ),
            ring.mul(q.x, p.y),
        );
        Ok(MabElem {
            r: ring.mul(p.r, q.r),
            x: ring.add(p.x, ring.mul(p.r, q.x)),
            y: ring.add(p.y, ring.mul(p.r, q.y)),
            z,
        })
    }

    /// `a * det [[r_i - 1], [x_i], [y_i]]`; zero exactly when the triple
    /// associates.
    pub fn associator_det(&self, p1: &MabElem, p2: &MabElem, p3: &MabElem) -> Elem {
        let ring = self.ring();
        let m = |r: Elem| ring.sub(r, Elem::ONE);
        let (a1, a2, a3) = (m(p1.r), m(p2.r), m(p3.r));
        let minor =
            |u1: Elem, u2: Elem, v1: Elem, v2: Elem| ring.sub(ring.mul(u1, v2), ring.mul(u2, v1));
        let det = ring.add(
            ring.sub(
                ring.mul(a1, minor(p2.x, p3.x, p2.y, p3.y)),
                ring.mul(a2, minor(p1.x, p3.x, p1.y, p3.y)),
            ),
            ring.mul(a3, minor(p1.x, p2.x, p1.y, p2.y)),
        );
        ring.mul(self.params.a, det)
    }

    /// Indices of the subgroup `N = {(1, x, y, z)}`.
    pub fn n_subset(&self) -> Vec<usize> {
        (0..self.q * self.q * self.q).collect()
    }

    /// Indices of `{(1, 0, 0, z)}`.
    pub fn center_line(&self) -> Vec<usize> {
        (0..self.q).collect()
    }

    pub fn is_degenerate(&self) -> bool {
        self.params.r0.order() == 1
    }
}

impl Magma for MabLoop {
    fn order(&self) -> usize {
        self.order
    }

    #[inline]
    fn mul(&self, a: usize, b: usize) -> usize {
        let p = self.mul(&self.elem(a), &self.elem(b));
        self.index_of(&p).expect("product stays in the loop")
    }

    fn label(&self, a: usize) -> String {
        self.elem(a).to_string()
    }
}

impl FiniteLoop for MabLoop {
    fn identity(&self) -> usize {
        0
    }

    fn inv(&self, a: usize) -> Option<usize> {
        self.index_of(&MabLoop::inv(self, &self.elem(a)))
    }

    fn left_div(&self, a: usize, b: usize) -> Option<usize> {
        // left inverse property of Moufang loops, confirmed by multiplying back
        let p = self.elem(a);
        let w = self.mul(&MabLoop::inv(self, &p), &self.elem(b));
        let idx = self.index_of(&w)?;
        if Magma::mul(self, a, idx) == b {
            Some(idx)
        } else {
            (0..self.order).find(|&w| Magma::mul(self, a, w) == b)
        }
    }
}
