//! The split Cayley algebra `O(R)` of Zorn vector matrices
//! `(alpha, v, w, beta)` with product
//!
//! ```text
//! (a1, v1, w1, b1)(a2, v2, w2, b2) = (a1 a2 + v1.w2,
//!                                     a1 v2 + b2 v1 - w1 x w2,
//!                                     a2 w1 + b1 w2 + v1 x v2,
//!                                     w1.v2 + b1 b2)
//! ```
//!
//! and the embedding `(r, x, y, z) -> (r, (0, x, y), (z, 0, 0), 1)` of
//! `M_{1,0}` into its invertible elements.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::loops::{IdentityReport, Magma};
use crate::mab::{split_tuple, MabElem, MabLoop};
use crate::report::CheckReport;
use crate::ring::{Elem, Ring, RingError};
use crate::strategy::{sweep, CheckStrategy, Sampler};

type Vec3 = [Elem; 3];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CayleyError {
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error("{0} has norm {1}, which is not a unit")]
    NotInvertible(Zorn, Elem),
    #[error("the embedding needs (a, b) = (1, 0), got ({0}, {1})")]
    NotEmbeddable(Elem, Elem),
    #[error("algebra of dimension 8 over a ring of size {0} is too large to index")]
    TooLarge(u32),
    #[error("Zorn literal `{0}` must look like (alpha,[v1,v2,v3],[w1,w2,w3],beta)")]
    BadLiteral(String),
}

/// A Zorn vector matrix `[[alpha, v], [w, beta]]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Zorn {
    pub alpha: Elem,
    pub v: Vec3,
    pub w: Vec3,
    pub beta: Elem,
}

impl Zorn {
    pub const ZERO: Zorn = Zorn {
        alpha: Elem::ZERO,
        v: [Elem::ZERO; 3],
        w: [Elem::ZERO; 3],
        beta: Elem::ZERO,
    };
    pub const ONE: Zorn = Zorn {
        alpha: Elem::ONE,
        v: [Elem::ZERO; 3],
        w: [Elem::ZERO; 3],
        beta: Elem::ONE,
    };

    pub fn new(alpha: Elem, v: Vec3, w: Vec3, beta: Elem) -> Self {
        Zorn { alpha, v, w, beta }
    }

    fn coords(&self) -> [Elem; 8] {
        [
            self.alpha, self.v[0], self.v[1], self.v[2], self.w[0], self.w[1], self.w[2], self.beta,
        ]
    }
}

impl fmt::Display for Zorn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({},[{},{},{}],[{},{},{}],{})",
            self.alpha, self.v[0], self.v[1], self.v[2], self.w[0], self.w[1], self.w[2], self.beta
        )
    }
}

impl FromStr for Zorn {
    type Err = CayleyError;

    /// Raw codes: `(alpha,[v1,v2,v3],[w1,w2,w3],beta)`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || CayleyError::BadLiteral(s.to_string());
        let flat = s.replace(['[', ']'], "");
        let parts = split_tuple(&flat).ok_or_else(bad)?;
        if parts.len() != 8 {
            return Err(bad());
        }
        let c: Vec<Elem> = parts
            .iter()
            .map(|p| p.parse().map(Elem).map_err(|_| bad()))
            .collect::<Result<_, _>>()?;
        Ok(Zorn::new(
            c[0],
            [c[1], c[2], c[3]],
            [c[4], c[5], c[6]],
            c[7],
        ))
    }
}

/// `O(R)` over a fixed ring.
#[derive(Debug, Clone, PartialEq)]
pub struct CayleyAlgebra {
    ring: Ring,
}

impl CayleyAlgebra {
    pub fn new(ring: Ring) -> Self {
        CayleyAlgebra { ring }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    fn dot(&self, a: &Vec3, b: &Vec3) -> Elem {
        let r = &self.ring;
        (0..3).fold(Elem::ZERO, |acc, i| r.add(acc, r.mul(a[i], b[i])))
    }

    fn cross(&self, a: &Vec3, b: &Vec3) -> Vec3 {
        let r = &self.ring;
        let m = |i: usize, j: usize| r.sub(r.mul(a[i], b[j]), r.mul(a[j], b[i]));
        [m(1, 2), m(2, 0), m(0, 1)]
    }

    fn lin(&self, c1: Elem, x: &Vec3, c2: Elem, y: &Vec3) -> Vec3 {
        let r = &self.ring;
        std::array::from_fn(|i| r.add(r.mul(c1, x[i]), r.mul(c2, y[i])))
    }

    pub fn mul(&self, a: &Zorn, b: &Zorn) -> Zorn {
        let r = &self.ring;
        let ww = self.cross(&a.w, &b.w);
        let vv = self.cross(&a.v, &b.v);
        let v = self.lin(a.alpha, &b.v, b.beta, &a.v);
        let w = self.lin(b.alpha, &a.w, a.beta, &b.w);
        Zorn {
            alpha: r.add(r.mul(a.alpha, b.alpha), self.dot(&a.v, &b.w)),
            v: std::array::from_fn(|i| r.sub(v[i], ww[i])),
            w: std::array::from_fn(|i| r.add(w[i], vv[i])),
            beta: r.add(self.dot(&a.w, &b.v), r.mul(a.beta, b.beta)),
        }
    }

    pub fn add(&self, a: &Zorn, b: &Zorn) -> Zorn {
        let r = &self.ring;
        let c: [Elem; 8] = std::array::from_fn(|i| r.add(a.coords()[i], b.coords()[i]));
        Zorn::new(c[0], [c[1], c[2], c[3]], [c[4], c[5], c[6]], c[7])
    }

    pub fn scale(&self, s: Elem, a: &Zorn) -> Zorn {
        let c: [Elem; 8] = a.coords().map(|x| self.ring.mul(s, x));
        Zorn::new(c[0], [c[1], c[2], c[3]], [c[4], c[5], c[6]], c[7])
    }

    /// `alpha beta - v.w`.
    pub fn norm(&self, a: &Zorn) -> Elem {
        self.ring
            .sub(self.ring.mul(a.alpha, a.beta), self.dot(&a.v, &a.w))
    }

    /// `(beta, -v, -w, alpha)`.
    pub fn conj(&self, a: &Zorn) -> Zorn {
        let n = |x: &Vec3| x.map(|c| self.ring.neg(c));
        Zorn::new(a.beta, n(&a.v), n(&a.w), a.alpha)
    }

    pub fn is_invertible(&self, a: &Zorn) -> bool {
        self.ring.is_unit(self.norm(a))
    }

    /// `n(A)^-1 conj(A)` when the norm is a unit.
    pub fn inverse(&self, a: &Zorn) -> Result<Zorn, CayleyError> {
        let n = self.norm(a);
        let ni = self
            .ring
            .inverse(n)
            .ok_or(CayleyError::NotInvertible(*a, n))?;
        Ok(self.scale(ni, &self.conj(a)))
    }

    /// Number of elements, `|R|^8`, if it fits in `usize`.
    pub fn size(&self) -> Option<usize> {
        (self.ring.size() as usize).checked_pow(8)
    }

    /// Element with base-`|R|` digits `alpha, v, w, beta` (most significant
    /// first).
    pub fn elem(&self, mut index: usize) -> Zorn {
        let q = self.ring.size() as usize;
        let mut c = [Elem::ZERO; 8];
        for slot in c.iter_mut().rev() {
            *slot = Elem((index % q) as u32);
            index /= q;
        }
        Zorn::new(c[0], [c[1], c[2], c[3]], [c[4], c[5], c[6]], c[7])
    }

    pub fn index_of(&self, a: &Zorn) -> usize {
        let q = self.ring.size() as usize;
        a.coords().iter().fold(0, |acc, c| acc * q + c.0 as usize)
    }

    fn require_size(&self) -> Result<usize, CayleyError> {
        self.size().ok_or(CayleyError::TooLarge(self.ring.size()))
    }
}

impl Magma for CayleyAlgebra {
    fn order(&self) -> usize {
        self.size().unwrap_or(usize::MAX)
    }

    fn mul(&self, a: usize, b: usize) -> usize {
        self.index_of(&CayleyAlgebra::mul(self, &self.elem(a), &self.elem(b)))
    }

    fn label(&self, a: usize) -> String {
        self.elem(a).to_string()
    }
}

/// `(AA)B = A(AB)` and `(BA)A = B(AA)` over all or sampled pairs, plus the
/// Moufang identity on `moufang_samples` seeded invertible triples.
pub fn verify_alternative(
    alg: &CayleyAlgebra,
    strategy: CheckStrategy,
    moufang_samples: u64,
) -> Result<CheckReport, CayleyError> {
    let n = alg.require_size()?;
    let out = sweep::<2, _>(n, strategy, |[i, j]| {
        let (a, b) = (alg.elem(i), alg.elem(j));
        let aa = alg.mul(&a, &a);
        alg.mul(&aa, &b) == alg.mul(&a, &alg.mul(&a, &b))
            && alg.mul(&alg.mul(&b, &a), &a) == alg.mul(&b, &aa)
    });
    if let Some([i, j]) = out.witness {
        let w = format!("A={} B={}", alg.elem(i), alg.elem(j));
        return Ok(CheckReport::new(
            "alternative",
            out.checked,
            Some(strategy),
            Some(w),
        ));
    }
    let seed = match strategy {
        CheckStrategy::Random { seed, .. } => seed,
        CheckStrategy::Exhaustive => 0,
    };
    let mut s = Sampler::new(seed ^ 0x6d6f_7566);
    let mut checked = out.checked;
    let mut taken = 0;
    let mut draws = 0u64;
    while taken < moufang_samples && draws < moufang_samples.saturating_mul(64) {
        draws += 1;
        let [i, j, k] = s.tuple::<3>(n);
        let (x, y, z) = (alg.elem(i), alg.elem(j), alg.elem(k));
        if ![x, y, z].iter().all(|e| alg.is_invertible(e)) {
            continue;
        }
        taken += 1;
        checked += 1;
        let lhs = alg.mul(&alg.mul(&x, &y), &alg.mul(&z, &x));
        let rhs = alg.mul(&alg.mul(&x, &alg.mul(&y, &z)), &x);
        if lhs != rhs {
            let w = format!("Moufang fails at x={x} y={y} z={z}");
            return Ok(CheckReport::new(
                "alternative",
                checked,
                Some(strategy),
                Some(w),
            ));
        }
    }
    Ok(CheckReport::new(
        "alternative",
        checked,
        Some(strategy),
        None,
    ))
}

/// First triple (in index order) with `(AB)C != A(BC)`.
pub fn associativity_counterexample(alg: &CayleyAlgebra) -> Result<Option<[Zorn; 3]>, CayleyError> {
    let n = alg.require_size()?;
    let out = sweep::<3, _>(n, CheckStrategy::Exhaustive, |[i, j, k]| {
        let (a, b, c) = (alg.elem(i), alg.elem(j), alg.elem(k));
        alg.mul(&alg.mul(&a, &b), &c) == alg.mul(&a, &alg.mul(&b, &c))
    });
    Ok(out.witness.map(|w| w.map(|i| alg.elem(i))))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NormCriterionReport {
    pub ok: bool,
    pub elements: usize,
    pub invertible: usize,
    /// An element where the norm criterion and brute force disagree.
    pub witness: Option<String>,
}

/// Compares "norm is a unit" with a brute-force search for a two-sided
/// inverse on every element. Quadratic in the algebra size.
pub fn verify_norm_criterion(alg: &CayleyAlgebra) -> Result<NormCriterionReport, CayleyError> {
    use rayon::prelude::*;
    let n = alg.require_size()?;
    let results: Vec<(bool, bool)> = (0..n)
        .into_par_iter()
        .map(|i| {
            let a = alg.elem(i);
            let brute = (0..n).any(|j| {
                let b = alg.elem(j);
                alg.mul(&a, &b) == Zorn::ONE && alg.mul(&b, &a) == Zorn::ONE
            });
            (brute, alg.is_invertible(&a))
        })
        .collect();
    let witness = results
        .iter()
        .position(|(brute, crit)| brute != crit)
        .map(|i| alg.elem(i).to_string());
    Ok(NormCriterionReport {
        ok: witness.is_none(),
        elements: n,
        invertible: results.iter().filter(|r| r.0).count(),
        witness,
    })
}

/// `(r, x, y, z) -> (r, (0, x, y), (z, 0, 0), 1)`.
pub fn embed_m10(p: &MabElem) -> Zorn {
    Zorn::new(
        p.r,
        [Elem::ZERO, p.x, p.y],
        [p.z, Elem::ZERO, Elem::ZERO],
        Elem::ONE,
    )
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EmbeddingReport {
    pub ok: bool,
    pub homomorphism: IdentityReport,
    pub injective: bool,
    /// Every image has unit norm equal to its `r` coordinate.
    pub images_invertible: bool,
    /// The inverse of every image is the image of the loop inverse.
    pub inverse_closed: bool,
}

/// Checks that [`embed_m10`] is an injective homomorphism into the
/// invertible elements, on every pair for loops of order at most 256 and
/// on `samples` seeded pairs otherwise.
pub fn verify_embedding(
    l: &MabLoop,
    samples: u64,
    seed: u64,
) -> Result<EmbeddingReport, CayleyError> {
    let (a, b) = (l.params().a(), l.params().b());
    if a != Elem::ONE || b != Elem::ZERO {
        return Err(CayleyError::NotEmbeddable(a, b));
    }
    let alg = CayleyAlgebra::new(l.ring().clone());
    let strategy = if l.order() <= 256 {
        CheckStrategy::Exhaustive
    } else {
        CheckStrategy::random(samples, seed)
    };
    let out = sweep::<2, _>(l.order(), strategy, |[i, j]| {
        let (p, q) = (l.elem(i), l.elem(j));
        alg.mul(&embed_m10(&p), &embed_m10(&q)) == embed_m10(&l.mul(&p, &q))
    });
    let homomorphism = IdentityReport::from_sweep("embedding", l, strategy, out);
    let mut images: Vec<usize> = l.elements().map(|p| alg.index_of(&embed_m10(&p))).collect();
    images.sort_unstable();
    images.dedup();
    let injective = images.len() == l.order();
    let images_invertible = l.elements().all(|p| {
        let z = embed_m10(&p);
        alg.norm(&z) == p.r && alg.is_invertible(&z)
    });
    let inverse_closed = l
        .elements()
        .all(|p| alg.inverse(&embed_m10(&p)).ok() == Some(embed_m10(&l.inv(&p))));
    Ok(EmbeddingReport {
        ok: homomorphism.ok && injective && images_invertible && inverse_closed,
        homomorphism,
        injective,
        images_invertible,
        inverse_closed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mab::MabParams;

    fn alg(s: &str) -> CayleyAlgebra {
        CayleyAlgebra::new(Ring::parse(s).unwrap())
    }

    fn e(i: usize) -> Vec3 {
        let mut v = [Elem::ZERO; 3];
        v[i] = Elem::ONE;
        v
    }

    #[test]
    fn product_examples() {
        let o = alg("GF:7");
        let b = Zorn::new(
            Elem(3),
            [Elem(1), Elem(5), Elem(2)],
            [Elem(6), Elem(0), Elem(4)],
            Elem(2),
        );
        assert_eq!(o.mul(&Zorn::ONE, &b), b);
        assert_eq!(o.mul(&b, &Zorn::ONE), b);
        let z = [Elem::ZERO; 3];
        let a1 = Zorn::new(Elem(0), e(0), z, Elem(0));
        let b2 = Zorn::new(Elem(0), e(1), z, Elem(0));
        assert_eq!(o.mul(&a1, &b2), Zorn::new(Elem(0), z, e(2), Elem(0)));
        let c = Zorn::new(Elem(0), z, e(0), Elem(0));
        assert_eq!(o.mul(&a1, &c), Zorn::new(Elem(1), z, z, Elem(0)));
    }

    #[test]
    fn norm_and_inverse_examples() {
        let o = alg("GF:7");
        assert_eq!(o.norm(&Zorn::ONE), Elem(1));
        assert_eq!(o.inverse(&Zorn::ONE).unwrap(), Zorn::ONE);
        let a = Zorn::new(
            Elem(2),
            [Elem(0), Elem(1), Elem(0)],
            [Elem(3), Elem(0), Elem(0)],
            Elem(1),
        );
        assert_eq!(o.norm(&a), Elem(2));
        let inv = o.inverse(&a).unwrap();
        let expected = o.scale(
            Elem(4),
            &Zorn::new(
                Elem(1),
                [Elem(0), Elem(6), Elem(0)],
                [Elem(4), Elem(0), Elem(0)],
                Elem(2),
            ),
        );
        assert_eq!(inv, expected);
        assert_eq!(o.mul(&a, &inv), Zorn::ONE);
        assert_eq!(o.mul(&inv, &a), Zorn::ONE);
        assert!(matches!(
            o.inverse(&Zorn::ZERO),
            Err(CayleyError::NotInvertible(..))
        ));
    }

    #[test]
    fn conjugate_gives_norm() {
        let o = alg("GF:2");
        for i in 0..256 {
            let a = o.elem(i);
            let n = o.scale(o.norm(&a), &Zorn::ONE);
            assert_eq!(o.mul(&a, &o.conj(&a)), n);
            assert_eq!(o.mul(&o.conj(&a), &a), n);
        }
    }

    #[test]
    fn literal_round_trip() {
        let a: Zorn = "(2,[0,1,0],[3,0,0],1)".parse().unwrap();
        assert_eq!(a.to_string(), "(2,[0,1,0],[3,0,0],1)");
        assert!("(1,2)".parse::<Zorn>().is_err());
        let o = alg("GF:2^2");
        assert_eq!(o.elem(o.index_of(&a)), a);
    }

    #[test]
    fn gf2_algebra_facts() {
        let o = alg("GF:2");
        let r = verify_alternative(&o, CheckStrategy::Exhaustive, 1000).unwrap();
        assert!(r.ok);
        let [a, b, c] = associativity_counterexample(&o).unwrap().unwrap();
        assert_ne!(o.mul(&o.mul(&a, &b), &c), o.mul(&a, &o.mul(&b, &c)));
        let n = verify_norm_criterion(&o).unwrap();
        assert!(n.ok);
        assert_eq!(n.elements, 256);
    }

    #[test]
    fn embedding_examples() {
        assert_eq!(embed_m10(&MabElem::new(1, 0, 0, 0)), Zorn::ONE);
        let p = MabElem::new(2, 1, 0, 0);
        assert_eq!(
            embed_m10(&p),
            Zorn::new(Elem(2), [Elem(0), Elem(1), Elem(0)], [Elem(0); 3], Elem(1))
        );
        let l = MabLoop::new(MabParams::from_parts("GF:2^2", 2, 1, 0).unwrap()).unwrap();
        let r = verify_embedding(&l, 0, 0).unwrap();
        assert!(r.ok);
        assert_eq!(r.homomorphism.checked, 192 * 192);
        let l = MabLoop::new(MabParams::from_parts("GF:7", 2, 1, -2).unwrap()).unwrap();
        assert!(matches!(
            verify_embedding(&l, 10, 1),
            Err(CayleyError::NotEmbeddable(..))
        ));
    }
}
