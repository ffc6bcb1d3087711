//! Finite commutative unital rings: `Z_n` and `GF(p^k)`.
//!
//! Elements are stored as canonical integer codes in `0..size`. For `Z_n`
//! the code is the residue; for `GF(p^k)` it is the base-`p` evaluation of
//! the little-endian coefficient vector modulo the defining polynomial.
//! All arithmetic goes through [`Ring`], which keeps operations on bare
//! [`Elem`] codes cheap enough for exhaustive sweeps.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

/// Extension fields up to this size get precomputed addition and
/// multiplication tables.
const TABLE_LIMIT: u32 = 1 << 10;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RingError {
    #[error("invalid ring descriptor `{0}`")]
    BadDescriptor(String),
    #[error("modulus must be at least 2, got {0}")]
    ModulusTooSmall(u64),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("polynomial {0:?} is not monic of the requested degree")]
    NotMonic(Vec<u32>),
    #[error("polynomial {0:?} is reducible over Z_{1}")]
    Reducible(Vec<u32>, u32),
    #[error("ring of size {0} is too large")]
    TooLarge(u128),
    #[error("no monic irreducible polynomial of degree {1} over Z_{0}")]
    NoIrreducible(u32, u32),
    #[error("element literal `{0}` is not valid")]
    BadLiteral(String),
    #[error("code {code} is outside a ring of size {size}")]
    OutOfRange { code: u64, size: u32 },
    #[error("operands belong to different rings ({0} vs {1})")]
    MixedRings(String, String),
    #[error("{0} is not a unit")]
    NotUnit(u32),
    #[error("no unit of multiplicative order {0}")]
    NoElementOfOrder(u64),
}

/// Canonical code of a ring element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize)]
#[serde(transparent)]
pub struct Elem(pub u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    pub fn code(self) -> u32 {
        self.0
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Parsed ring descriptor.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum RingSpec {
    Zn(u32),
    /// `GF(p^k)`; `poly` holds the little-endian coefficients of the monic
    /// defining polynomial, so `poly.len() == k + 1`.
    Gf {
        p: u32,
        poly: Vec<u32>,
    },
}

impl RingSpec {
    pub fn degree(&self) -> u32 {
        match self {
            RingSpec::Zn(_) => 1,
            RingSpec::Gf { poly, .. } => poly.len() as u32 - 1,
        }
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingSpec::Zn(n) => write!(f, "Zn:{n}"),
            RingSpec::Gf { p, poly } if poly.len() == 2 => write!(f, "GF:{p}"),
            RingSpec::Gf { p, poly } => {
                let coeffs: Vec<String> = poly.iter().map(u32::to_string).collect();
                write!(f, "GF:{p}^{}:poly={}", poly.len() - 1, coeffs.join(","))
            }
        }
    }
}

impl FromStr for RingSpec {
    type Err = RingError;

    /// `Zn:<n>` | `GF:<p>` | `GF:<p>^<k>` | `GF:<p>^<k>:poly=<c0,...,ck>`.
    /// Without an explicit polynomial the default one is selected, see
    /// [`default_irreducible`].
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || RingError::BadDescriptor(s.to_string());
        let s_trim = s.trim();
        if let Some(rest) = s_trim.strip_prefix("Zn:") {
            let n: u64 = rest.trim().parse().map_err(|_| bad())?;
            if n < 2 {
                return Err(RingError::ModulusTooSmall(n));
            }
            if n > u64::from(u32::MAX / 2) {
                return Err(RingError::TooLarge(n.into()));
            }
            return Ok(RingSpec::Zn(n as u32));
        }
        let rest = s_trim.strip_prefix("GF:").ok_or_else(bad)?;
        let (field, poly) = match rest.split_once(":poly=") {
            Some((field, poly)) => (field, Some(poly)),
            None => (rest, None),
        };
        let (p, k) = match field.split_once('^') {
            Some((p, k)) => (
                p.trim().parse::<u64>().map_err(|_| bad())?,
                k.trim().parse::<u32>().map_err(|_| bad())?,
            ),
            None => (field.trim().parse::<u64>().map_err(|_| bad())?, 1),
        };
        if !is_prime(p) {
            return Err(RingError::NotPrime(p));
        }
        if p > u64::from(u32::MAX / 2) {
            return Err(RingError::TooLarge(p.into()));
        }
        let p = p as u32;
        if k == 0 {
            return Err(RingError::ZeroDegree);
        }
        let poly = match poly {
            Some(list) => {
                let coeffs = list
                    .split(',')
                    .map(|c| c.trim().parse::<u32>().map_err(|_| bad()))
                    .collect::<Result<Vec<_>, _>>()?;
                if coeffs.len() != k as usize + 1
                    || coeffs[k as usize] != 1
                    || coeffs.iter().any(|&c| c >= p)
                {
                    return Err(RingError::NotMonic(coeffs));
                }
                if !is_irreducible(&coeffs, p) {
                    return Err(RingError::Reducible(coeffs, p));
                }
                coeffs
            }
            None if k == 1 => vec![0, 1],
            None => default_irreducible(p, k)?,
        };
        Ok(RingSpec::Gf { p, poly })
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Remainder of `num` modulo the monic `den`, coefficients in `Z_p`.
fn poly_rem(num: &[u32], den: &[u32], p: u32) -> Vec<u32> {
    let mut r: Vec<u64> = num.iter().map(|&c| u64::from(c)).collect();
    let p = u64::from(p);
    let dd = den.len() - 1;
    while r.len() > dd {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dd;
        if lead != 0 {
            for (i, &c) in den.iter().enumerate() {
                let sub = lead * u64::from(c) % p;
                r[shift + i] = (r[shift + i] + p - sub) % p;
            }
        }
        r.pop();
    }
    r.into_iter().map(|c| c as u32).collect()
}

/// Monic polynomial of degree `deg` whose lower coefficients are the base-`p`
/// digits of `code`.
fn monic_from_code(mut code: u64, deg: u32, p: u32) -> Vec<u32> {
    let mut poly = Vec::with_capacity(deg as usize + 1);
    for _ in 0..deg {
        poly.push((code % u64::from(p)) as u32);
        code /= u64::from(p);
    }
    poly.push(1);
    poly
}

/// Brute-force irreducibility: no monic factor of degree `1..=k/2` divides.
pub fn is_irreducible(poly: &[u32], p: u32) -> bool {
    let k = poly.len() as u32 - 1;
    if k == 0 {
        return false;
    }
    for d in 1..=k / 2 {
        let count = u64::from(p).pow(d);
        for code in 0..count {
            let factor = monic_from_code(code, d, p);
            if poly_rem(poly, &factor, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

/// The first monic irreducible of degree `k` over `Z_p`, scanning the lower
/// coefficients `(c_{k-1}, ..., c_0)` in lexicographic order (equivalently,
/// their base-`p` value ascending). Gives `x^2+x+1` over `Z_2`, `x^3+x+1`
/// over `Z_2` and `x^2+2` over `Z_5`.
pub fn default_irreducible(p: u32, k: u32) -> Result<Vec<u32>, RingError> {
    let count = u64::from(p)
        .checked_pow(k)
        .ok_or(RingError::TooLarge(u128::from(p).pow(k)))?;
    (0..count)
        .map(|code| monic_from_code(code, k, p))
        .find(|poly| is_irreducible(poly, p))
        .ok_or(RingError::NoIrreducible(p, k))
}

#[derive(Debug)]
enum Arith {
    /// Residues modulo `n` (covers `Z_n` and prime fields).
    Modular { n: u32 },
    /// Coefficient vectors modulo a monic irreducible of degree `k >= 2`.
    Extension {
        p: u32,
        poly: Vec<u32>,
        tables: Option<Tables>,
    },
}

#[derive(Debug)]
struct Tables {
    add: Vec<u32>,
    mul: Vec<u32>,
}

#[derive(Debug)]
struct RingInner {
    spec: RingSpec,
    size: u32,
    characteristic: u32,
    arith: Arith,
    inverses: Vec<Option<u32>>,
}

/// A validated finite commutative unital ring. Cloning is cheap.
#[derive(Debug, Clone)]
pub struct Ring(Arc<RingInner>);

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.spec == other.0.spec
    }
}

impl Eq for Ring {}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.spec.fmt(f)
    }
}

impl FromStr for Ring {
    type Err = RingError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ring::new(s.parse()?)
    }
}

impl Ring {
    /// Builds a ring from a descriptor such as `Zn:9`, `GF:7` or `GF:2^3`.
    pub fn parse(descriptor: &str) -> Result<Ring, RingError> {
        descriptor.parse()
    }

    pub fn new(spec: RingSpec) -> Result<Ring, RingError> {
        let (size, characteristic, arith) = match &spec {
            RingSpec::Zn(n) => {
                if *n < 2 {
                    return Err(RingError::ModulusTooSmall(u64::from(*n)));
                }
                (*n, *n, Arith::Modular { n: *n })
            }
            RingSpec::Gf { p, poly } => {
                if !is_prime(u64::from(*p)) {
                    return Err(RingError::NotPrime(u64::from(*p)));
                }
                let k = poly.len() as u32 - 1;
                if k == 0 || poly[k as usize] != 1 || poly.iter().any(|c| c >= p) {
                    return Err(RingError::NotMonic(poly.clone()));
                }
                if k == 1 {
                    (*p, *p, Arith::Modular { n: *p })
                } else {
                    if !is_irreducible(poly, *p) {
                        return Err(RingError::Reducible(poly.clone(), *p));
                    }
                    let size = u64::from(*p).pow(k);
                    if size > u64::from(u32::MAX / 2) {
                        return Err(RingError::TooLarge(size.into()));
                    }
                    let arith = Arith::Extension {
                        p: *p,
                        poly: poly.clone(),
                        tables: None,
                    };
                    (size as u32, *p, arith)
                }
            }
        };
        let mut inner = RingInner {
            spec,
            size,
            characteristic,
            arith,
            inverses: Vec::new(),
        };
        inner.build_tables();
        inner.inverses = if size <= 1 << 20 {
            (0..size).map(|a| inner.inverse_slow(a)).collect()
        } else {
            Vec::new()
        };
        Ok(Ring(Arc::new(inner)))
    }

    pub fn spec(&self) -> &RingSpec {
        &self.0.spec
    }

    pub fn size(&self) -> u32 {
        self.0.size
    }

    pub fn characteristic(&self) -> u32 {
        self.0.characteristic
    }

    /// True for `GF(p^k)` and for `Z_p` with `p` prime.
    pub fn is_field(&self) -> bool {
        match self.0.spec {
            RingSpec::Gf { .. } => true,
            RingSpec::Zn(n) => is_prime(u64::from(n)),
        }
    }

    pub fn zero(&self) -> Elem {
        Elem::ZERO
    }

    pub fn one(&self) -> Elem {
        Elem::ONE
    }

    /// All elements in canonical (encoding) order.
    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        (0..self.size()).map(Elem)
    }

    pub fn units(&self) -> impl Iterator<Item = Elem> + '_ {
        self.elements().filter(move |&a| self.is_unit(a))
    }

    pub fn element(&self, code: u64) -> Result<Elem, RingError> {
        if code < u64::from(self.size()) {
            Ok(Elem(code as u32))
        } else {
            Err(RingError::OutOfRange {
                code,
                size: self.size(),
            })
        }
    }

    /// The image of an integer under `Z -> R`, i.e. `n * 1`.
    pub fn from_int(&self, n: i64) -> Elem {
        let c = i64::from(self.characteristic());
        Elem(n.rem_euclid(c) as u32)
    }

    /// Element literal: a non-negative decimal encoding, or a negative
    /// integer which is reduced into the ring as `n * 1`.
    pub fn parse_elem(&self, literal: &str) -> Result<Elem, RingError> {
        let lit = literal.trim();
        if lit.starts_with('-') {
            let n: i64 = lit
                .parse()
                .map_err(|_| RingError::BadLiteral(literal.to_string()))?;
            Ok(self.from_int(n))
        } else {
            let code: u64 = lit
                .parse()
                .map_err(|_| RingError::BadLiteral(literal.to_string()))?;
            self.element(code)
        }
    }

    pub fn wrap(&self, e: Elem) -> RingElement<'_> {
        RingElement {
            ring: self,
            elem: e,
        }
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        match &self.0.arith {
            Arith::Modular { n } => {
                let s = u64::from(a.0) + u64::from(b.0);
                Elem((s % u64::from(*n)) as u32)
            }
            Arith::Extension {
                tables: Some(t), ..
            } => Elem(t.add[(a.0 * self.0.size + b.0) as usize]),
            Arith::Extension { p, .. } => Elem(ext_add(a.0, b.0, *p)),
        }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        match &self.0.arith {
            Arith::Modular { n } => Elem(if a.0 == 0 { 0 } else { n - a.0 }),
            Arith::Extension { p, .. } => Elem(ext_neg(a.0, *p)),
        }
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        match &self.0.arith {
            Arith::Modular { n } => {
                let s = u64::from(a.0) * u64::from(b.0);
                Elem((s % u64::from(*n)) as u32)
            }
            Arith::Extension {
                tables: Some(t), ..
            } => Elem(t.mul[(a.0 * self.0.size + b.0) as usize]),
            Arith::Extension { p, poly, .. } => Elem(ext_mul(a.0, b.0, *p, poly)),
        }
    }

    pub fn pow(&self, a: Elem, mut e: u64) -> Elem {
        let mut base = a;
        let mut acc = Elem::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn is_unit(&self, a: Elem) -> bool {
        self.inverse(a).is_some()
    }

    /// The multiplicative inverse, if `a` is a unit.
    #[inline]
    pub fn inverse(&self, a: Elem) -> Option<Elem> {
        if let Some(inv) = self.0.inverses.get(a.0 as usize) {
            return inv.map(Elem);
        }
        self.0.inverse_slow(a.0).map(Elem)
    }

    pub fn unit_inverse(&self, a: Elem) -> Result<Elem, RingError> {
        self.inverse(a).ok_or(RingError::NotUnit(a.0))
    }

    /// Multiplicative order of a unit; `None` for non-units.
    pub fn mul_order(&self, a: Elem) -> Option<u64> {
        if !self.is_unit(a) {
            return None;
        }
        let mut x = a;
        let mut k = 1;
        while x != Elem::ONE {
            x = self.mul(x, a);
            k += 1;
        }
        Some(k)
    }

    /// First unit (in encoding order) of multiplicative order exactly `k`.
    pub fn element_of_order(&self, k: u64) -> Result<Elem, RingError> {
        if k == 0 {
            return Err(RingError::NoElementOfOrder(0));
        }
        self.units()
            .find(|&a| self.mul_order(a) == Some(k))
            .ok_or(RingError::NoElementOfOrder(k))
    }

    /// The cyclic subgroup generated by a unit, listed as successive powers.
    pub fn cyclic_subgroup(&self, generator: Elem) -> Result<UnitSubgroup, RingError> {
        if generator.0 >= self.size() {
            return Err(RingError::OutOfRange {
                code: generator.0.into(),
                size: self.size(),
            });
        }
        if !self.is_unit(generator) {
            return Err(RingError::NotUnit(generator.0));
        }
        let mut elements = vec![Elem::ONE];
        let mut x = generator;
        while x != Elem::ONE {
            elements.push(x);
            x = self.mul(x, generator);
        }
        let positions = elements.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        Ok(UnitSubgroup {
            ring: self.clone(),
            generator,
            elements,
            positions,
        })
    }
}

impl RingInner {
    fn build_tables(&mut self) {
        let size = self.size;
        if let Arith::Extension { p, poly, tables } = &mut self.arith {
            if size <= TABLE_LIMIT {
                let n = size as usize;
                let mut add = vec![0; n * n];
                let mut mul = vec![0; n * n];
                for a in 0..size {
                    for b in 0..size {
                        let idx = (a * size + b) as usize;
                        add[idx] = ext_add(a, b, *p);
                        mul[idx] = ext_mul(a, b, *p, poly);
                    }
                }
                *tables = Some(Tables { add, mul });
            }
        }
    }

    fn inverse_slow(&self, a: u32) -> Option<u32> {
        match &self.arith {
            Arith::Modular { n } => {
                if gcd(u64::from(a), u64::from(*n)) != 1 {
                    return None;
                }
                // extended Euclid
                let (mut old_r, mut r) = (i64::from(a), i64::from(*n));
                let (mut old_s, mut s) = (1i64, 0i64);
                while r != 0 {
                    let q = old_r / r;
                    (old_r, r) = (r, old_r - q * r);
                    (old_s, s) = (s, old_s - q * s);
                }
                Some(old_s.rem_euclid(i64::from(*n)) as u32)
            }
            Arith::Extension { p, poly, .. } => {
                if a == 0 {
                    return None;
                }
                // a^(q-2) in the multiplicative group of order q-1
                let mut e = u64::from(self.size) - 2;
                let mut base = a;
                let mut acc = 1;
                while e > 0 {
                    if e & 1 == 1 {
                        acc = ext_mul(acc, base, *p, poly);
                    }
                    base = ext_mul(base, base, *p, poly);
                    e >>= 1;
                }
                Some(acc)
            }
        }
    }
}

fn digits(mut code: u32, p: u32, k: usize) -> Vec<u32> {
    let mut out = vec![0; k];
    for d in out.iter_mut() {
        *d = code % p;
        code /= p;
    }
    out
}

fn undigits(ds: &[u32], p: u32) -> u32 {
    ds.iter().rev().fold(0, |acc, &d| acc * p + d)
}

fn ext_add(mut a: u32, mut b: u32, p: u32) -> u32 {
    let mut out = 0;
    let mut place = 1;
    while a > 0 || b > 0 {
        out += ((a % p + b % p) % p) * place;
        a /= p;
        b /= p;
        place *= p;
    }
    out
}

fn ext_neg(mut a: u32, p: u32) -> u32 {
    let mut out = 0;
    let mut place = 1;
    while a > 0 {
        out += ((p - a % p) % p) * place;
        a /= p;
        place *= p;
    }
    out
}

fn ext_mul(a: u32, b: u32, p: u32, poly: &[u32]) -> u32 {
    let k = poly.len() - 1;
    let da = digits(a, p, k);
    let db = digits(b, p, k);
    let mut prod = vec![0u32; 2 * k - 1];
    for (i, &x) in da.iter().enumerate() {
        for (j, &y) in db.iter().enumerate() {
            prod[i + j] =
                ((u64::from(prod[i + j]) + u64::from(x) * u64::from(y)) % u64::from(p)) as u32;
        }
    }
    let rem = poly_rem(&prod, poly, p);
    undigits(&rem, p)
}

/// A ring element bound to its ring, for checked arithmetic that rejects
/// operands from different rings.
#[derive(Debug, Clone, Copy)]
pub struct RingElement<'r> {
    pub ring: &'r Ring,
    pub elem: Elem,
}

impl<'r> RingElement<'r> {
    fn same_ring(&self, other: &RingElement<'_>) -> Result<(), RingError> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(RingError::MixedRings(
                self.ring.to_string(),
                other.ring.to_string(),
            ))
        }
    }

    pub fn try_add(self, other: RingElement<'_>) -> Result<RingElement<'r>, RingError> {
        self.same_ring(&other)?;
        Ok(self.ring.wrap(self.ring.add(self.elem, other.elem)))
    }

    pub fn try_sub(self, other: RingElement<'_>) -> Result<RingElement<'r>, RingError> {
        self.same_ring(&other)?;
        Ok(self.ring.wrap(self.ring.sub(self.elem, other.elem)))
    }

    pub fn try_mul(self, other: RingElement<'_>) -> Result<RingElement<'r>, RingError> {
        self.same_ring(&other)?;
        Ok(self.ring.wrap(self.ring.mul(self.elem, other.elem)))
    }

    pub fn inverse(self) -> Result<RingElement<'r>, RingError> {
        Ok(self.ring.wrap(self.ring.unit_inverse(self.elem)?))
    }
}

impl<'r> std::ops::Neg for RingElement<'r> {
    type Output = RingElement<'r>;

    fn neg(self) -> RingElement<'r> {
        self.ring.wrap(self.ring.neg(self.elem))
    }
}

impl fmt::Display for RingElement<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.elem.fmt(f)
    }
}

impl PartialEq for RingElement<'_> {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.elem == other.elem
    }
}

/// A cyclic subgroup `R_0` of the unit group, listed as powers of its
/// generator.
#[derive(Debug, Clone)]
pub struct UnitSubgroup {
    ring: Ring,
    generator: Elem,
    elements: Vec<Elem>,
    positions: HashMap<Elem, usize>,
}

impl UnitSubgroup {
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn generator(&self) -> Elem {
        self.generator
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// `generator^0, generator^1, ...`
    pub fn elements(&self) -> &[Elem] {
        &self.elements
    }

    pub fn contains(&self, e: Elem) -> bool {
        self.positions.contains_key(&e)
    }

    /// Exponent of `e` with respect to the generator.
    pub fn position(&self, e: Elem) -> Option<usize> {
        self.positions.get(&e).copied()
    }

    /// Every element cubes to one.
    pub fn has_exponent_three(&self) -> bool {
        self.elements
            .iter()
            .all(|&r| self.ring.pow(r, 3) == Elem::ONE)
    }
}

impl PartialEq for UnitSubgroup {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.elements == other.elements
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(s: &str) -> Ring {
        s.parse().unwrap()
    }

    #[test]
    fn prime_field_descriptor() {
        let f = ring("GF:7");
        assert_eq!(f.size(), 7);
        assert_eq!(f.characteristic(), 7);
        assert!(f.is_field());
    }

    #[test]
    fn gf4_default_polynomial() {
        // the four monic quadratics over Z_2, only x^2+x+1 lacks a root
        let roots = |c0: u32, c1: u32| (0..2).any(|x| (x * x + c1 * x + c0).is_multiple_of(2));
        let irreducible: Vec<(u32, u32)> = (0..2)
            .flat_map(|c1| (0..2).map(move |c0| (c0, c1)))
            .filter(|&(c0, c1)| !roots(c0, c1))
            .collect();
        assert_eq!(irreducible, vec![(1, 1)]);
        let f = ring("GF:2^2");
        assert_eq!(f.size(), 4);
        assert_eq!(
            f.spec(),
            &RingSpec::Gf {
                p: 2,
                poly: vec![1, 1, 1]
            }
        );
    }

    #[test]
    fn default_polynomials_for_other_fields() {
        assert_eq!(default_irreducible(2, 3).unwrap(), vec![1, 1, 0, 1]);
        assert_eq!(default_irreducible(5, 2).unwrap(), vec![2, 0, 1]);
    }

    #[test]
    fn rejects_bad_descriptors() {
        assert_eq!(Ring::parse("Zn:1"), Err(RingError::ModulusTooSmall(1)));
        assert_eq!(Ring::parse("GF:6"), Err(RingError::NotPrime(6)));
        assert!(matches!(
            Ring::parse("GF:2^2:poly=1,0,1"),
            Err(RingError::Reducible(..))
        ));
        assert!(matches!(
            Ring::parse("GF:2^2:poly=1,1"),
            Err(RingError::NotMonic(_))
        ));
        assert!(matches!(
            Ring::parse("Q:3"),
            Err(RingError::BadDescriptor(_))
        ));
    }

    #[test]
    fn explicit_polynomial_roundtrips_through_display() {
        let f = ring("GF:2^3:poly=1,0,1,1");
        assert_eq!(f.to_string(), "GF:2^3:poly=1,0,1,1");
        assert_eq!(ring(&f.to_string()), f);
    }

    #[test]
    fn arithmetic_examples() {
        let f7 = ring("GF:7");
        assert_eq!(f7.mul(Elem(3), Elem(5)), Elem(1));
        let f4 = ring("GF:2^2");
        let omega = Elem(2);
        assert_eq!(f4.add(omega, omega), Elem(0));
        // omega^2 = omega + 1
        assert_eq!(f4.mul(omega, omega), Elem(3));
        let z9 = ring("Zn:9");
        assert_eq!(z9.neg(Elem(4)), Elem(5));
    }

    #[test]
    fn inverses() {
        let f7 = ring("GF:7");
        assert_eq!(f7.unit_inverse(Elem(2)), Ok(Elem(4)));
        for r in ["GF:7", "Zn:9", "GF:2^3"] {
            assert_eq!(ring(r).unit_inverse(Elem::ONE), Ok(Elem::ONE));
        }
        assert_eq!(
            ring("Zn:9").unit_inverse(Elem(3)),
            Err(RingError::NotUnit(3))
        );
    }

    #[test]
    fn elements_of_given_order() {
        assert_eq!(ring("GF:7").element_of_order(3), Ok(Elem(2)));
        assert_eq!(ring("GF:2^2").element_of_order(3), Ok(Elem(2)));
        assert_eq!(
            ring("GF:7").element_of_order(5),
            Err(RingError::NoElementOfOrder(5))
        );
    }

    #[test]
    fn cyclic_subgroups() {
        let f7 = ring("GF:7");
        let r0 = f7.cyclic_subgroup(Elem(2)).unwrap();
        assert_eq!(r0.elements(), &[Elem(1), Elem(2), Elem(4)]);
        assert_eq!(r0.order(), 3);
        assert_eq!(f7.cyclic_subgroup(Elem::ONE).unwrap().order(), 1);
        let f8 = ring("GF:2^3");
        for g in 2..8 {
            assert_eq!(f8.cyclic_subgroup(Elem(g)).unwrap().order(), 7);
        }
        assert_eq!(
            ring("Zn:9").cyclic_subgroup(Elem(3)).unwrap_err(),
            RingError::NotUnit(3)
        );
    }

    #[test]
    fn checked_elements_reject_mixed_rings() {
        let f7 = ring("GF:7");
        let f5 = ring("GF:5");
        let a = f7.wrap(Elem(3));
        let b = f5.wrap(Elem(3));
        assert!(matches!(a.try_add(b), Err(RingError::MixedRings(..))));
        assert_eq!(a.try_mul(f7.wrap(Elem(5))).unwrap().elem, Elem(1));
        assert_eq!((-f7.wrap(Elem(2))).elem, Elem(5));
    }

    #[test]
    fn negative_literals_reduce() {
        let f7 = ring("GF:7");
        assert_eq!(f7.parse_elem("-2"), Ok(Elem(5)));
        let f4 = ring("GF:2^2");
        assert_eq!(f4.parse_elem("-2"), Ok(Elem(0)));
        assert!(f4.parse_elem("4").is_err());
    }

    fn check_axioms(r: &Ring) {
        let elems: Vec<Elem> = r.elements().collect();
        for &a in &elems {
            for &b in &elems {
                assert_eq!(r.add(a, b), r.add(b, a));
                assert_eq!(r.mul(a, b), r.mul(b, a));
                for &c in &elems {
                    assert_eq!(r.mul(r.mul(a, b), c), r.mul(a, r.mul(b, c)));
                    assert_eq!(r.mul(a, r.add(b, c)), r.add(r.mul(a, b), r.mul(a, c)));
                    assert_eq!(r.add(r.add(a, b), c), r.add(a, r.add(b, c)));
                }
            }
            assert_eq!(r.add(a, r.neg(a)), Elem::ZERO);
            assert_eq!(r.mul(a, Elem::ONE), a);
        }
    }

    #[test]
    fn ring_axioms_exhaustive_small() {
        for s in [
            "Zn:2", "Zn:9", "Zn:12", "GF:7", "GF:2^2", "GF:2^3", "GF:3^2", "GF:2^4",
        ] {
            check_axioms(&ring(s));
        }
    }

    #[test]
    fn unit_inverse_exhaustive() {
        for s in ["Zn:64", "Zn:60", "GF:2^6", "GF:5^2", "GF:61"] {
            let r = ring(s);
            for a in r.elements() {
                // brute force search as the reference
                let brute = r.elements().find(|&b| r.mul(a, b) == Elem::ONE);
                assert_eq!(r.inverse(a), brute, "{s}: {a}");
            }
        }
    }

    #[test]
    fn element_of_order_is_exact() {
        let r = ring("GF:2^4");
        for k in [1, 3, 5, 15] {
            let x = r.element_of_order(k).unwrap();
            assert_eq!(r.pow(x, k), Elem::ONE);
            for d in 1..k {
                if k % d == 0 {
                    assert_ne!(r.pow(x, d), Elem::ONE);
                }
            }
        }
    }

    #[test]
    fn untabled_extension_matches_tabled() {
        // GF(3^7) is above the table limit
        let big = ring("GF:3^7");
        let f = |a: u32, b: u32| ext_mul(a, b, 3, &default_irreducible(3, 7).unwrap());
        assert_eq!(big.mul(Elem(1000), Elem(77)), Elem(f(1000, 77)));
        let a = Elem(1234);
        assert_eq!(big.mul(a, big.inverse(a).unwrap()), Elem::ONE);
    }
}
