use rayon::prelude::*;
use serde::Serialize;

use super::{
    fmt_vec, format_matrix, identity_matrix, mat_add, mat_mul, mat_sub, GElem, Mat3, SWord, TElem,
    TrialityError, TrialityGroup, Vec3,
};
use crate::loops::{IdentityReport, Magma};
use crate::mab::{MabElem, MabLoop};
use crate::report::CheckReport;
use crate::ring::Elem;
use crate::strategy::{sweep, CheckStrategy, Sampler};

/// `m m^rho m^(rho^2) = 1` for `m = g^-1 g^sigma`, over all or sampled `g`.
pub fn verify_triality_identity(g: &TrialityGroup, strategy: CheckStrategy) -> IdentityReport {
    let out = sweep::<1, _>(g.order(), strategy, |[i]| {
        let m = g.m_of(&g.elem(i));
        let prod = g.g_mul(
            &g.g_mul(&m, &g.act_g(SWord::RHO, &m)),
            &g.act_g(SWord::RHO2, &m),
        );
        prod == GElem::IDENTITY
    });
    IdentityReport::from_sweep("triality", g, strategy, out)
}

/// `tau = Psi(rho)^2 Psi((r, 1)) Psi(rho)^2` and the matching contragredient
/// matrix.
fn tau_pair(g: &TrialityGroup, r: Elem) -> (Mat3, Mat3) {
    let ring = g.ring();
    let rr = g.psi_word(SWord::RHO2);
    let m = TElem::new(r, Elem::ONE);
    let tau = mat_mul(ring, &mat_mul(ring, &rr, &g.psi_t(m)), &rr);
    let tau_star = mat_mul(ring, &mat_mul(ring, &rr, &g.psi_star_t(m)), &rr);
    (tau, tau_star)
}

/// `[[0,1,0],[0,0,r],[r^-1,0,0]]`.
fn tau_closed_form(g: &TrialityGroup, r: Elem) -> Mat3 {
    let ri = g.ring().inverse(r).expect("R_0 consists of units");
    let (z, o) = (Elem::ZERO, Elem::ONE);
    [[z, o, z], [z, z, r], [ri, z, z]]
}

fn is_zero(m: &Mat3) -> bool {
    m.iter().flatten().all(|&c| c == Elem::ZERO)
}

/// `(Psi(sigma) - 1)(1 + tau + tau^2)` for the module and its dual.
pub fn module_triality_matrices(g: &TrialityGroup, r: Elem) -> (Mat3, Mat3) {
    let ring = g.ring();
    let one = identity_matrix();
    let sig = mat_sub(ring, &g.psi_word(SWord::SIGMA), &one);
    let sig_star = mat_sub(ring, &g.psi_star_word(SWord::SIGMA), &one);
    let (tau, tau_star) = tau_pair(g, r);
    let sum = |t: &Mat3| mat_add(ring, &mat_add(ring, &one, t), &mat_mul(ring, t, t));
    (
        mat_mul(ring, &sig, &sum(&tau)),
        mat_mul(ring, &sig_star, &sum(&tau_star)),
    )
}

pub fn verify_module_triality(g: &TrialityGroup, r: Elem) -> Result<CheckReport, TrialityError> {
    if !g.params().r0().contains(r) {
        return Err(TrialityError::NotInR0(r));
    }
    let (tau, _) = tau_pair(g, r);
    let witness = if tau != tau_closed_form(g, r) {
        Some(format!("r={r}: tau = {}", format_matrix(&tau)))
    } else {
        let (m, m_star) = module_triality_matrices(g, r);
        if !is_zero(&m) {
            Some(format!("r={r}: V gives {}", format_matrix(&m)))
        } else if !is_zero(&m_star) {
            Some(format!("r={r}: V* gives {}", format_matrix(&m_star)))
        } else {
            None
        }
    };
    Ok(CheckReport::new("module-triality", 1, None, witness))
}

/// [`verify_module_triality`] for every `r` in `R_0`.
pub fn verify_module_triality_all(g: &TrialityGroup) -> CheckReport {
    let parts: Vec<CheckReport> = g
        .params()
        .r0()
        .elements()
        .iter()
        .map(|&r| verify_module_triality(g, r).expect("r is in R_0"))
        .collect();
    CheckReport::merge("module-triality", &parts)
}

/// `s1 s2 (a r, a r, -a - b r^2)`.
pub fn pairing_closed_form(g: &TrialityGroup, r: Elem, s1: Elem, s2: Elem) -> Vec3 {
    let ring = g.ring();
    let (a, b) = (g.params().a(), g.params().b());
    let s = ring.mul(s1, s2);
    let ar = ring.mul(a, r);
    let third = ring.neg(ring.add(a, ring.mul(b, ring.mul(r, r))));
    [ring.mul(s, ar), ring.mul(s, ar), ring.mul(s, third)]
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairingCheck {
    pub r: Elem,
    pub s1: Elem,
    pub s2: Elem,
    pub via_action: Vec3,
    pub closed_form: Vec3,
    pub sigma_fixed: bool,
    pub ok: bool,
}

/// For `m = (r, 1)` and `l_i = (s_i, -s_i, 0)`, computes
/// `(l1 tau) # (l2 tau^2)` through the matrices and compares with
/// [`pairing_closed_form`]; also checks that the result is fixed by sigma.
pub fn verify_pairing_sigma_fixed(
    g: &TrialityGroup,
    m: TElem,
    l1: Vec3,
    l2: Vec3,
) -> Result<PairingCheck, TrialityError> {
    let ring = g.ring();
    if m.r2 != Elem::ONE || !g.params().r0().contains(m.r1) {
        return Err(TrialityError::InvalidInput(format!(
            "{m} is not of the form (r, 1)"
        )));
    }
    for l in [&l1, &l2] {
        if l[1] != ring.neg(l[0]) || l[2] != Elem::ZERO {
            return Err(TrialityError::InvalidInput(format!(
                "[{},{},{}] is not of the form (s, -s, 0)",
                l[0], l[1], l[2]
            )));
        }
    }
    let r = m.r1;
    let (tau, _) = tau_pair(g, r);
    let tau2 = mat_mul(ring, &tau, &tau);
    let via_action = g.pairing(
        &super::vec_mat(ring, &l1, &tau),
        &super::vec_mat(ring, &l2, &tau2),
    );
    let closed_form = pairing_closed_form(g, r, l1[0], l2[0]);
    let sigma_fixed = g.act_v_word(&via_action, SWord::SIGMA) == via_action;
    Ok(PairingCheck {
        r,
        s1: l1[0],
        s2: l2[0],
        via_action,
        closed_form,
        sigma_fixed,
        ok: sigma_fixed && via_action == closed_form,
    })
}

/// [`verify_pairing_sigma_fixed`] over every `r` in `R_0` and all `s1, s2`.
pub fn verify_pairing_sweep(g: &TrialityGroup) -> CheckReport {
    let ring = g.ring();
    let mut checked = 0;
    for &r in g.params().r0().elements() {
        for s1 in ring.elements() {
            for s2 in ring.elements() {
                checked += 1;
                let l = |s: Elem| [s, ring.neg(s), Elem::ZERO];
                let c = verify_pairing_sigma_fixed(g, TElem::new(r, Elem::ONE), l(s1), l(s2))
                    .expect("inputs have the required shape");
                if !c.ok {
                    let w = format!(
                        "r={r} s1={s1} s2={s2}: action {} closed form {}",
                        fmt_vec(&c.via_action),
                        fmt_vec(&c.closed_form)
                    );
                    return CheckReport::new("pairing-sigma-fixed", checked, None, Some(w));
                }
            }
        }
    }
    CheckReport::new("pairing-sigma-fixed", checked, None, None)
}

/// `(v h) # (w h) = (v # w) h` for `h` in `{sigma, rho, (g, 1), (1, g)}`
/// with `g` the generator of `R_0`, over all or sampled pairs `(v, w)`.
pub fn verify_equivariance(g: &TrialityGroup, strategy: CheckStrategy) -> CheckReport {
    let q = g.ring().size() as usize;
    let vec = |i: usize| -> Vec3 {
        [
            Elem((i / (q * q)) as u32),
            Elem((i / q % q) as u32),
            Elem((i % q) as u32),
        ]
    };
    let gen = g.params().r0().generator();
    let tori = [TElem::new(gen, Elem::ONE), TElem::new(Elem::ONE, gen)];
    let failing = |v: &Vec3, w: &Vec3| -> Option<String> {
        let vw = g.pairing(v, w);
        for s in [SWord::SIGMA, SWord::RHO] {
            if g.pairing(&g.act_v_word(v, s), &g.act_v_word(w, s)) != g.act_v_word(&vw, s) {
                return Some(s.to_string());
            }
        }
        for t in tori {
            if g.pairing(&g.act_v(v, t), &g.act_v(w, t)) != g.act_dual(&vw, t) {
                return Some(t.to_string());
            }
        }
        None
    };
    let out = sweep::<2, _>(q * q * q, strategy, |[i, j]| {
        failing(&vec(i), &vec(j)).is_none()
    });
    let witness = out.witness.map(|[i, j]| {
        let (v, w) = (vec(i), vec(j));
        format!(
            "h={} v={} w={}",
            failing(&v, &w).unwrap_or_default(),
            fmt_vec(&v),
            fmt_vec(&w)
        )
    });
    CheckReport::new("equivariance", out.checked, Some(strategy), witness)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleMismatch {
    pub p: String,
    pub q: String,
    pub direct: String,
    pub via_triality: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleReport {
    pub ok: bool,
    pub checked: u64,
    pub matches: u64,
    pub inverse_checked: u64,
    pub inverse_matches: u64,
    pub strategy: CheckStrategy,
    /// At most [`OracleReport::MAX_WITNESSES`] mismatches, in sweep order.
    pub mismatches: Vec<OracleMismatch>,
}

impl OracleReport {
    pub const MAX_WITNESSES: usize = 16;
}

/// Compares the closed-form product and inverse with the triality route,
/// on every pair for loops of order at most 256 and on `samples` seeded
/// pairs otherwise.
pub fn oracle_compare(l: &MabLoop, samples: u64, seed: u64) -> Result<OracleReport, TrialityError> {
    let g = TrialityGroup::new(l.params().clone())?;
    let n = l.order();
    let strategy = if n <= 256 {
        CheckStrategy::Exhaustive
    } else {
        CheckStrategy::random(samples, seed)
    };
    let pairs: Vec<(usize, usize)> = match strategy {
        CheckStrategy::Exhaustive => (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect(),
        CheckStrategy::Random { samples, seed } => {
            let mut s = Sampler::new(seed);
            (0..samples)
                .map(|_| {
                    let [i, j] = s.tuple::<2>(n);
                    (i, j)
                })
                .collect()
        }
    };
    let render = |r: Result<MabElem, TrialityError>| match r {
        Ok(e) => e.to_string(),
        Err(e) => format!("error: {e}"),
    };
    let product_bad: Vec<OracleMismatch> = pairs
        .par_iter()
        .filter_map(|&(i, j)| {
            let (p, q) = (l.elem(i), l.elem(j));
            let direct = l.mul(&p, &q);
            let via = g.loop_mul(&p, &q);
            (via.as_ref() != Ok(&direct)).then(|| OracleMismatch {
                p: p.to_string(),
                q: q.to_string(),
                direct: direct.to_string(),
                via_triality: render(via),
            })
        })
        .collect();
    let mut firsts: Vec<usize> = pairs.iter().map(|&(i, _)| i).collect();
    firsts.sort_unstable();
    firsts.dedup();
    let inverse_bad: Vec<OracleMismatch> = firsts
        .par_iter()
        .filter_map(|&i| {
            let p = l.elem(i);
            let direct = l.inv(&p);
            let via = g.loop_inv(&p);
            (via.as_ref() != Ok(&direct)).then(|| OracleMismatch {
                p: p.to_string(),
                q: "inverse".to_string(),
                direct: direct.to_string(),
                via_triality: render(via),
            })
        })
        .collect();
    let checked = pairs.len() as u64;
    let matches = checked - product_bad.len() as u64;
    let inverse_checked = firsts.len() as u64;
    let inverse_matches = inverse_checked - inverse_bad.len() as u64;
    let mut mismatches = product_bad;
    mismatches.extend(inverse_bad);
    let ok = mismatches.is_empty();
    mismatches.truncate(OracleReport::MAX_WITNESSES);
    Ok(OracleReport {
        ok,
        checked,
        matches,
        inverse_checked,
        inverse_matches,
        strategy,
        mismatches,
    })
}
