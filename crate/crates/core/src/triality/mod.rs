//! The group-with-triality route to `M_{a,b}`.
//!
//! `S = <sigma, rho>` acts on the torus `T = R_0 x R_0`, on the module
//! `V = R^3` through monomial matrices and on its dual `V*` through the
//! contragredient matrices. Vectors are rows and every action is on the
//! right: `v^h = v Psi(h)`. The group `G = T x| W` with
//! `W = V + V + V*` and product
//!
//! ```text
//! (h, v1, v2, u)(h', v1', v2', u') =
//!     (hh', v1 h' + v1', v2 h' + v2', u h' + u' + (v1 h') # v2')
//! ```
//!
//! where `#` is the bilinear pairing [`TrialityGroup::pairing`]. Loop
//! elements correspond to the set `{g^-1 g^sigma}` and are multiplied as
//! `m . n = (m^rho)^-1 n (m^(rho^2))^-1`.

mod checks;
mod generation;
mod preimage;

pub use crate::report::CheckReport;
pub use checks::{
    oracle_compare, pairing_closed_form, verify_equivariance, verify_module_triality,
    verify_module_triality_all, verify_pairing_sigma_fixed, verify_pairing_sweep,
    verify_triality_identity, OracleMismatch, OracleReport, PairingCheck,
};
pub use generation::{generation_checks, GenerationReport, SpanReport, TorusWitness};
pub use preimage::{PreimageElem, PreimageGroup, PreimageReport};

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::loops::{FiniteLoop, Magma};
use crate::mab::{MabElem, MabError, MabParams};
use crate::ring::{Elem, Ring};

pub type Vec3 = [Elem; 3];
pub type Mat3 = [[Elem; 3]; 3];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TrialityError {
    #[error(transparent)]
    Mab(#[from] MabError),
    #[error("{0} is not the image of a loop element: {1}")]
    NotLoopShape(String, &'static str),
    #[error("{0} is not in R_0")]
    NotInR0(Elem),
    #[error("group order overflows the index space")]
    TooLarge,
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("index {0} must be 1, 2 or 3")]
    BadCoordinate(usize),
    #[error("parameters belong to different groups")]
    ParameterMismatch,
}

/// An element `sigma^flip rho^turns` of `S_3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SWord {
    flip: bool,
    turns: u8,
}

impl SWord {
    pub const ONE: SWord = SWord::new(false, 0);
    pub const RHO: SWord = SWord::new(false, 1);
    pub const RHO2: SWord = SWord::new(false, 2);
    pub const SIGMA: SWord = SWord::new(true, 0);
    pub const SIGMA_RHO: SWord = SWord::new(true, 1);
    pub const SIGMA_RHO2: SWord = SWord::new(true, 2);
    pub const ALL: [SWord; 6] = [
        SWord::ONE,
        SWord::RHO,
        SWord::RHO2,
        SWord::SIGMA,
        SWord::SIGMA_RHO,
        SWord::SIGMA_RHO2,
    ];

    pub const fn new(flip: bool, turns: u8) -> Self {
        SWord {
            flip,
            turns: turns % 3,
        }
    }

    pub fn flip(self) -> bool {
        self.flip
    }

    pub fn turns(self) -> u8 {
        self.turns
    }

    /// `self` followed by `other`, using `rho sigma = sigma rho^-1`.
    pub fn then(self, other: SWord) -> SWord {
        let k = if other.flip {
            (3 - self.turns) % 3
        } else {
            self.turns
        };
        SWord::new(self.flip ^ other.flip, k + other.turns)
    }

    pub fn inverse(self) -> SWord {
        if self.flip {
            self
        } else {
            SWord::new(false, 3 - self.turns)
        }
    }

    pub fn pow(self, n: u32) -> SWord {
        (0..n).fold(SWord::ONE, |acc, _| acc.then(self))
    }

    /// Normal form of a word in the letters `s` (sigma) and `r` (rho);
    /// the empty word and `1` denote the identity.
    pub fn from_letters(word: &str) -> Result<SWord, TrialityError> {
        word.chars().try_fold(SWord::ONE, |acc, c| match c {
            's' | 'S' => Ok(acc.then(SWord::SIGMA)),
            'r' | 'R' => Ok(acc.then(SWord::RHO)),
            '1' | ' ' | '*' => Ok(acc),
            _ => Err(TrialityError::InvalidInput(format!(
                "bad letter `{c}` in `{word}`"
            ))),
        })
    }
}

impl fmt::Display for SWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match (self.flip, self.turns) {
            (false, 0) => "1",
            (false, 1) => "ρ",
            (false, _) => "ρ²",
            (true, 0) => "σ",
            (true, 1) => "σρ",
            (true, _) => "σρ²",
        };
        f.write_str(s)
    }
}

/// An element `(r1, r2)` of the torus `T = R_0 x R_0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct TElem {
    pub r1: Elem,
    pub r2: Elem,
}

impl TElem {
    pub const ONE: TElem = TElem {
        r1: Elem::ONE,
        r2: Elem::ONE,
    };

    pub fn new(r1: Elem, r2: Elem) -> Self {
        TElem { r1, r2 }
    }
}

impl fmt::Display for TElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.r1, self.r2)
    }
}

/// An element `(t, v1, v2, u)` of `G`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct GElem {
    pub t: TElem,
    pub v1: Vec3,
    pub v2: Vec3,
    pub u: Vec3,
}

impl GElem {
    pub const IDENTITY: GElem = GElem {
        t: TElem::ONE,
        v1: [Elem::ZERO; 3],
        v2: [Elem::ZERO; 3],
        u: [Elem::ZERO; 3],
    };

    /// Lies in the normal subgroup `W`.
    pub fn in_w(&self) -> bool {
        self.t == TElem::ONE
    }
}

pub(crate) fn fmt_vec(v: &Vec3) -> String {
    format!("[{},{},{}]", v[0], v[1], v[2])
}

impl fmt::Display for GElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({},{},{},{})",
            self.t,
            fmt_vec(&self.v1),
            fmt_vec(&self.v2),
            fmt_vec(&self.u)
        )
    }
}

pub fn format_matrix(m: &Mat3) -> String {
    let rows: Vec<String> = m.iter().map(fmt_vec).collect();
    format!("[{}]", rows.join(","))
}

/// `v M` for a row vector `v`.
pub(crate) fn vec_mat(ring: &Ring, v: &Vec3, m: &Mat3) -> Vec3 {
    let mut out = [Elem::ZERO; 3];
    for (k, slot) in out.iter_mut().enumerate() {
        for (j, &vj) in v.iter().enumerate() {
            *slot = ring.add(*slot, ring.mul(vj, m[j][k]));
        }
    }
    out
}

pub(crate) fn mat_mul(ring: &Ring, a: &Mat3, b: &Mat3) -> Mat3 {
    let mut out = [[Elem::ZERO; 3]; 3];
    for i in 0..3 {
        out[i] = vec_mat(ring, &a[i], b);
    }
    out
}

pub(crate) fn mat_add(ring: &Ring, a: &Mat3, b: &Mat3) -> Mat3 {
    let mut out = *a;
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = ring.add(a[i][j], b[i][j]);
        }
    }
    out
}

pub(crate) fn mat_sub(ring: &Ring, a: &Mat3, b: &Mat3) -> Mat3 {
    let mut out = *a;
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = ring.sub(a[i][j], b[i][j]);
        }
    }
    out
}

pub fn identity_matrix() -> Mat3 {
    let mut m = [[Elem::ZERO; 3]; 3];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = Elem::ONE;
    }
    m
}

pub(crate) fn vec_add(ring: &Ring, a: &Vec3, b: &Vec3) -> Vec3 {
    [
        ring.add(a[0], b[0]),
        ring.add(a[1], b[1]),
        ring.add(a[2], b[2]),
    ]
}

pub(crate) fn vec_neg(ring: &Ring, a: &Vec3) -> Vec3 {
    [ring.neg(a[0]), ring.neg(a[1]), ring.neg(a[2])]
}

pub(crate) fn vec_sub(ring: &Ring, a: &Vec3, b: &Vec3) -> Vec3 {
    vec_add(ring, a, &vec_neg(ring, b))
}

pub(crate) fn vec_scale(ring: &Ring, c: Elem, a: &Vec3) -> Vec3 {
    [ring.mul(c, a[0]), ring.mul(c, a[1]), ring.mul(c, a[2])]
}

/// Coordinate permutation of `v Psi(w)`: output slot `k` reads input slot
/// `perm[k]`.
fn word_perm(w: SWord) -> [usize; 3] {
    // v Psi(sigma) = (v1, v0, v2); v Psi(rho) = (v2, v0, v1)
    let mut perm = [0, 1, 2];
    if w.flip {
        perm = [perm[1], perm[0], perm[2]];
    }
    for _ in 0..w.turns {
        perm = [perm[2], perm[0], perm[1]];
    }
    perm
}

/// The group `G` for fixed parameters, with the `S` action and the loop
/// codec. Elements are also addressable by index, which makes `G` a
/// [`Magma`].
#[derive(Debug, Clone)]
pub struct TrialityGroup {
    params: MabParams,
    q: usize,
    m: usize,
    order: usize,
    r_pos: Vec<u32>,
}

impl TrialityGroup {
    pub fn new(params: MabParams) -> Result<Self, TrialityError> {
        let q = params.ring().size() as usize;
        let m = params.r0().order();
        let order = q
            .checked_pow(9)
            .and_then(|v| v.checked_mul(m * m))
            .ok_or(TrialityError::TooLarge)?;
        let mut r_pos = vec![u32::MAX; q];
        for (i, r) in params.r0().elements().iter().enumerate() {
            r_pos[r.0 as usize] = i as u32;
        }
        Ok(TrialityGroup {
            params,
            q,
            m,
            order,
            r_pos,
        })
    }

    pub fn params(&self) -> &MabParams {
        &self.params
    }

    pub fn ring(&self) -> &Ring {
        self.params.ring()
    }

    fn rinv(&self, r: Elem) -> Elem {
        self.ring().inverse(r).expect("R_0 consists of units")
    }

    pub fn t_mul(&self, s: TElem, t: TElem) -> TElem {
        let ring = self.ring();
        TElem::new(ring.mul(s.r1, t.r1), ring.mul(s.r2, t.r2))
    }

    pub fn t_inv(&self, t: TElem) -> TElem {
        TElem::new(self.rinv(t.r1), self.rinv(t.r2))
    }

    /// All of `T`, ordered by the exponents of `(r1, r2)`.
    pub fn t_elements(&self) -> Vec<TElem> {
        let els = self.params.r0().elements();
        els.iter()
            .flat_map(|&a| els.iter().map(move |&b| TElem::new(a, b)))
            .collect()
    }

    pub fn t_index(&self, t: TElem) -> Option<usize> {
        let i = *self.r_pos.get(t.r1.0 as usize)?;
        let j = *self.r_pos.get(t.r2.0 as usize)?;
        (i != u32::MAX && j != u32::MAX).then(|| i as usize * self.m + j as usize)
    }

    /// `sigma: (r1, r2) -> (r1^-1 r2, r2)`, `rho: (r1, r2) -> (r2^-1, r1 r2^-1)`.
    pub fn act_t(&self, w: SWord, t: TElem) -> TElem {
        let ring = self.ring();
        let mut t = t;
        if w.flip {
            t = TElem::new(ring.mul(self.rinv(t.r1), t.r2), t.r2);
        }
        for _ in 0..w.turns {
            let r2i = self.rinv(t.r2);
            t = TElem::new(r2i, ring.mul(t.r1, r2i));
        }
        t
    }

    /// `Psi(t) = diag(r1, r1^-1 r2, r2^-1)`.
    pub fn psi_t(&self, t: TElem) -> Mat3 {
        let d = self.psi_diag(t);
        let mut m = [[Elem::ZERO; 3]; 3];
        for i in 0..3 {
            m[i][i] = d[i];
        }
        m
    }

    /// The contragredient `Psi*(t) = diag(r1^-1, r1 r2^-1, r2)`.
    pub fn psi_star_t(&self, t: TElem) -> Mat3 {
        self.psi_t(self.t_inv(t))
    }

    fn psi_diag(&self, t: TElem) -> Vec3 {
        let ring = self.ring();
        [t.r1, ring.mul(self.rinv(t.r1), t.r2), self.rinv(t.r2)]
    }

    /// The permutation matrix of a word, shared by `Psi` and `Psi*`.
    pub fn psi_word(&self, w: SWord) -> Mat3 {
        let perm = word_perm(w);
        let mut m = [[Elem::ZERO; 3]; 3];
        for (k, &j) in perm.iter().enumerate() {
            m[j][k] = Elem::ONE;
        }
        m
    }

    pub fn psi_star_word(&self, w: SWord) -> Mat3 {
        self.psi_word(w)
    }

    /// `v Psi(t)`.
    pub fn act_v(&self, v: &Vec3, t: TElem) -> Vec3 {
        let d = self.psi_diag(t);
        let ring = self.ring();
        [
            ring.mul(v[0], d[0]),
            ring.mul(v[1], d[1]),
            ring.mul(v[2], d[2]),
        ]
    }

    /// `u Psi*(t)`.
    pub fn act_dual(&self, u: &Vec3, t: TElem) -> Vec3 {
        self.act_v(u, self.t_inv(t))
    }

    /// `v Psi(w)`; equal to `v Psi*(w)`.
    pub fn act_v_word(&self, v: &Vec3, w: SWord) -> Vec3 {
        let perm = word_perm(w);
        [v[perm[0]], v[perm[1]], v[perm[2]]]
    }

    /// `v # w = (a(v2 w3 + v3 w2) + b v1 w1, a(v1 w3 + v3 w1) + b v2 w2,
    /// a(v1 w2 + v2 w1) + b v3 w3)`, in the dual basis.
    pub fn pairing(&self, v: &Vec3, w: &Vec3) -> Vec3 {
        let ring = self.ring();
        let (a, b) = (self.params.a(), self.params.b());
        let term = |i: usize, j: usize, k: usize| {
            let cross = ring.add(ring.mul(v[j], w[k]), ring.mul(v[k], w[j]));
            ring.add(ring.mul(a, cross), ring.mul(b, ring.mul(v[i], w[i])))
        };
        [term(0, 1, 2), term(1, 0, 2), term(2, 0, 1)]
    }

    pub fn g_mul(&self, g: &GElem, h: &GElem) -> GElem {
        let ring = self.ring();
        let v1h = self.act_v(&g.v1, h.t);
        let v2h = self.act_v(&g.v2, h.t);
        let uh = self.act_dual(&g.u, h.t);
        let twist = self.pairing(&v1h, &h.v2);
        GElem {
            t: self.t_mul(g.t, h.t),
            v1: vec_add(ring, &v1h, &h.v1),
            v2: vec_add(ring, &v2h, &h.v2),
            u: vec_add(ring, &vec_add(ring, &uh, &h.u), &twist),
        }
    }

    /// `(t, w)^-1 = (t^-1, (w^-1)^(t^-1))` with
    /// `(v1, v2, u)^-1 = (-v1, -v2, -u + v1 # v2)` in `W`.
    pub fn g_inv(&self, g: &GElem) -> GElem {
        let ring = self.ring();
        let ti = self.t_inv(g.t);
        let u = vec_sub(ring, &self.pairing(&g.v1, &g.v2), &g.u);
        GElem {
            t: ti,
            v1: vec_neg(ring, &self.act_v(&g.v1, ti)),
            v2: vec_neg(ring, &self.act_v(&g.v2, ti)),
            u: self.act_dual(&u, ti),
        }
    }

    pub fn act_g(&self, w: SWord, g: &GElem) -> GElem {
        GElem {
            t: self.act_t(w, g.t),
            v1: self.act_v_word(&g.v1, w),
            v2: self.act_v_word(&g.v2, w),
            u: self.act_v_word(&g.u, w),
        }
    }

    /// `g^-1 g^sigma`.
    pub fn m_of(&self, g: &GElem) -> GElem {
        self.g_mul(&self.g_inv(g), &self.act_g(SWord::SIGMA, g))
    }

    /// `(r, x, y, z) -> ((r, 1), x(1, -r^-1, 0), y(1, -r^-1, 0),
    /// z(-r^-1, 1, 0) + xy(b, 0, -a r^-1))`.
    pub fn encode(&self, p: &MabElem) -> GElem {
        let ring = self.ring();
        let nri = ring.neg(self.rinv(p.r));
        let dir = [Elem::ONE, nri, Elem::ZERO];
        let zdir = [nri, Elem::ONE, Elem::ZERO];
        let xy = ring.mul(p.x, p.y);
        GElem {
            t: TElem::new(p.r, Elem::ONE),
            v1: vec_scale(ring, p.x, &dir),
            v2: vec_scale(ring, p.y, &dir),
            u: vec_add(
                ring,
                &vec_scale(ring, p.z, &zdir),
                &vec_scale(ring, xy, &self.twist_dir(p.r)),
            ),
        }
    }

    /// `(b, 0, -a r^-1)`.
    fn twist_dir(&self, r: Elem) -> Vec3 {
        let ring = self.ring();
        [
            self.params.b(),
            Elem::ZERO,
            ring.neg(ring.mul(self.params.a(), self.rinv(r))),
        ]
    }

    /// Inverse of [`encode`](Self::encode); rejects anything off its image.
    pub fn decode(&self, g: &GElem) -> Result<MabElem, TrialityError> {
        let ring = self.ring();
        let bad = |why| TrialityError::NotLoopShape(g.to_string(), why);
        if g.t.r2 != Elem::ONE {
            return Err(bad("torus part is not (r, 1)"));
        }
        let r = g.t.r1;
        if !self.params.r0().contains(r) {
            return Err(bad("r is not in R_0"));
        }
        let nri = ring.neg(self.rinv(r));
        let dir = [Elem::ONE, nri, Elem::ZERO];
        let (x, y) = (g.v1[0], g.v2[0]);
        if vec_scale(ring, x, &dir) != g.v1 {
            return Err(bad("v1 is not a multiple of (1, -r^-1, 0)"));
        }
        if vec_scale(ring, y, &dir) != g.v2 {
            return Err(bad("v2 is not a multiple of (1, -r^-1, 0)"));
        }
        let rest = vec_sub(
            ring,
            &g.u,
            &vec_scale(ring, ring.mul(x, y), &self.twist_dir(r)),
        );
        let z = rest[1];
        if vec_scale(ring, z, &[nri, Elem::ONE, Elem::ZERO]) != rest {
            return Err(bad("u does not have the loop form"));
        }
        Ok(MabElem { r, x, y, z })
    }

    /// `p . q = (P^rho)^-1 Q (P^(rho^2))^-1` computed in `G`.
    pub fn loop_mul(&self, p: &MabElem, q: &MabElem) -> Result<MabElem, TrialityError> {
        let pg = self.encode(p);
        let left = self.g_inv(&self.act_g(SWord::RHO, &pg));
        let right = self.g_inv(&self.act_g(SWord::RHO2, &pg));
        let prod = self.g_mul(&self.g_mul(&left, &self.encode(q)), &right);
        self.decode(&prod)
    }

    pub fn loop_inv(&self, p: &MabElem) -> Result<MabElem, TrialityError> {
        self.decode(&self.g_inv(&self.encode(p)))
    }

    /// Index of `g`: exponents of `r1`, `r2`, then the nine module
    /// coordinates in base `|R|`.
    pub fn index_of(&self, g: &GElem) -> Option<usize> {
        let mut idx = self.t_index(g.t)?;
        for c in g.v1.iter().chain(&g.v2).chain(&g.u) {
            if c.0 as usize >= self.q {
                return None;
            }
            idx = idx * self.q + c.0 as usize;
        }
        Some(idx)
    }

    pub fn elem(&self, mut index: usize) -> GElem {
        let mut coords = [Elem::ZERO; 9];
        for slot in coords.iter_mut().rev() {
            *slot = Elem((index % self.q) as u32);
            index /= self.q;
        }
        let els = self.params.r0().elements();
        GElem {
            t: TElem::new(els[index / self.m], els[index % self.m]),
            v1: [coords[0], coords[1], coords[2]],
            v2: [coords[3], coords[4], coords[5]],
            u: [coords[6], coords[7], coords[8]],
        }
    }

    pub fn same_group(&self, other: &TrialityGroup) -> Result<(), TrialityError> {
        if self.params == other.params {
            Ok(())
        } else {
            Err(TrialityError::ParameterMismatch)
        }
    }
}

impl Magma for TrialityGroup {
    fn order(&self) -> usize {
        self.order
    }

    fn mul(&self, a: usize, b: usize) -> usize {
        let g = self.g_mul(&self.elem(a), &self.elem(b));
        self.index_of(&g).expect("G is closed")
    }

    fn label(&self, a: usize) -> String {
        self.elem(a).to_string()
    }
}

impl FiniteLoop for TrialityGroup {
    fn identity(&self) -> usize {
        self.index_of(&GElem::IDENTITY).expect("identity is in G")
    }

    fn inv(&self, a: usize) -> Option<usize> {
        self.index_of(&self.g_inv(&self.elem(a)))
    }

    fn left_div(&self, a: usize, b: usize) -> Option<usize> {
        let g = self.g_mul(&self.g_inv(&self.elem(a)), &self.elem(b));
        self.index_of(&g)
    }
}
