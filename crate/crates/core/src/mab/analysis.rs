use serde::Serialize;

use super::{MabElem, MabError, MabLoop, MabParams};
use crate::loops::{
    is_commutative, is_cyclic_group, normal_structure, nucleus, IdentityReport, Magma,
};
use crate::ring::Elem;
use crate::strategy::{sweep, CheckStrategy};

/// Seed for the sampled homomorphism check of large scaling maps.
pub const SCALE_SEED: u64 = 0x5ca1_e150;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Conditions {
    #[serde(rename = "I")]
    pub exponent_three: bool,
    #[serde(rename = "II")]
    pub b_zero: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Witnesses {
    /// A triple with nonzero associator determinant.
    pub associator: Option<[String; 3]>,
    /// A non-commuting pair inside `N`.
    pub n_commutator: Option<[String; 2]>,
    pub normality: Option<String>,
}

/// Structural summary of `M_{a,b}`. `None` marks a quantity that was not
/// computed because its sweep exceeded the budget.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StructureReport {
    pub order: usize,
    pub conditions: Conditions,
    pub n_commutative: Option<bool>,
    pub nucleus_size: Option<usize>,
    pub nonassociative: Option<bool>,
    pub witnesses: Witnesses,
    pub ring: String,
    pub r0_generator: u32,
    pub r0_order: usize,
    pub a: u32,
    pub b: u32,
    pub params_validated: bool,
    pub degenerate: bool,
    pub n_size: usize,
    /// `2a + b == 0`.
    pub n_commutative_predicate: bool,
    pub n_normal: Option<bool>,
    pub quotient_order: Option<usize>,
    pub quotient_cyclic: Option<bool>,
    /// Whether `a` is a unit, `|R_0| > 1` and `R` is a field.
    pub nucleus_formula_applies: bool,
    /// Nucleus equals `{(1, 0, 0, z)}`; only evaluated when the formula applies.
    pub nucleus_matches_formula: Option<bool>,
}

/// First non-commuting pair of `N = {(1, x, y, z)}`, by exhaustive sweep.
pub fn n_commutative_sweep(l: &MabLoop) -> Option<[MabElem; 2]> {
    let n = l.n_subset();
    is_commutative(l, Some(&n)).map(|[a, b]| [l.elem(a), l.elem(b)])
}

/// Searches triples for a nonzero associator determinant, with `z = 0`
/// (the determinant ignores `z`). Returns the witness if found and whether
/// the search was complete.
pub fn find_associator_witness(l: &MabLoop, max_evals: u64) -> (Option<[MabElem; 3]>, bool) {
    let p = l.params();
    if p.a() == Elem::ZERO || p.r0().order() == 1 {
        return (None, true);
    }
    let q = l.ring().size();
    let classes: Vec<MabElem> = p
        .r0()
        .elements()
        .iter()
        .flat_map(|&r| (0..q).flat_map(move |x| (0..q).map(move |y| MabElem::new(r.0, x, y, 0))))
        .collect();
    let mut evals = 0u64;
    for p1 in &classes {
        for p2 in &classes {
            for p3 in &classes {
                if evals >= max_evals {
                    return (None, false);
                }
                evals += 1;
                if l.associator_det(p1, p2, p3) != Elem::ZERO {
                    return (Some([*p1, *p2, *p3]), true);
                }
            }
        }
    }
    (None, true)
}

pub fn structure_report(l: &MabLoop) -> StructureReport {
    structure_report_with(l, u64::MAX)
}

/// Like [`structure_report`], skipping any sweep whose estimated number of
/// loop multiplications exceeds `budget`.
pub fn structure_report_with(l: &MabLoop, budget: u64) -> StructureReport {
    let p = l.params();
    let ring = l.ring();
    let n = l.order() as u64;
    let q = u64::from(ring.size());
    let n_size = q * q * q;
    let mut witnesses = Witnesses::default();

    let two_a_plus_b = ring.add(ring.add(p.a(), p.a()), p.b());
    let n_commutative = (n_size.saturating_mul(n_size) <= budget).then(|| {
        let w = n_commutative_sweep(l);
        witnesses.n_commutator = w.map(|[x, y]| [x.to_string(), y.to_string()]);
        w.is_none()
    });

    let mut n_normal = None;
    let mut quotient_order = None;
    let mut quotient_cyclic = None;
    if n.saturating_mul(n).saturating_mul(2 * n_size) <= budget {
        let report = normal_structure(l, &l.n_subset()).expect("N is a subloop");
        n_normal = Some(report.normal);
        if let Some(w) = &report.witness {
            witnesses.normality = Some(format!("{w:?}"));
        }
        if let Some(quot) = &report.quotient {
            quotient_order = Some(quot.order());
            quotient_cyclic = Some(is_cyclic_group(quot));
        }
    }

    let formula_applies = ring.is_unit(p.a()) && p.r0().order() > 1 && ring.is_field();
    let nucleus_cost = n.saturating_mul(n).saturating_mul(3 * q + 1);
    let nuc = (nucleus_cost <= budget).then(|| nucleus(l));
    let nucleus_matches_formula = match (&nuc, formula_applies) {
        (Some(set), true) => Some(*set == l.center_line()),
        _ => None,
    };

    let (assoc, complete) = find_associator_witness(l, budget);
    witnesses.associator = assoc.map(|t| t.map(|e| e.to_string()));
    let nonassociative = match (assoc, complete) {
        (Some(_), _) => Some(true),
        (None, true) => Some(false),
        (None, false) => None,
    };

    StructureReport {
        order: l.order(),
        conditions: Conditions {
            exponent_three: p.condition_i(),
            b_zero: p.condition_ii(),
        },
        n_commutative,
        nucleus_size: nuc.as_ref().map(Vec::len),
        nonassociative,
        witnesses,
        ring: ring.to_string(),
        r0_generator: p.r0().generator().0,
        r0_order: p.r0().order(),
        a: p.a().0,
        b: p.b().0,
        params_validated: p.is_validated(),
        degenerate: l.is_degenerate(),
        n_size: n_size as usize,
        n_commutative_predicate: two_a_plus_b == Elem::ZERO,
        n_normal,
        quotient_order,
        quotient_cyclic,
        nucleus_formula_applies: formula_applies,
        nucleus_matches_formula,
    }
}

/// The coordinate change `(r, x, y, z) -> (r, x, y, c z)` from `M_{a,b}` to
/// `M_{ca,cb}`, together with its homomorphism check.
#[derive(Debug, Clone)]
pub struct ScaleIsomorphism {
    pub c: Elem,
    pub target: MabLoop,
    pub report: IdentityReport,
}

impl ScaleIsomorphism {
    pub fn apply(&self, p: &MabElem) -> MabElem {
        MabElem {
            z: self.target.ring().mul(self.c, p.z),
            ..*p
        }
    }
}

/// Builds the scaling map for a unit `c` and checks `phi(pq) = phi(p) phi(q)`
/// on all pairs for loops of order at most 256, on `10^5` seeded pairs
/// otherwise.
pub fn scale_isomorphism(l: &MabLoop, c: Elem) -> Result<ScaleIsomorphism, MabError> {
    let ring = l.ring();
    if !ring.is_unit(c) {
        return Err(MabError::NotUnit(c));
    }
    let p = l.params();
    let (ca, cb) = (ring.mul(c, p.a()), ring.mul(c, p.b()));
    let target_params = if p.is_validated() {
        p.with_ab(ca, cb)?
    } else {
        MabParams::new_unchecked(p.r0().clone(), ca, cb)?
    };
    let target = MabLoop::new(target_params)?;
    let strategy = if l.order() <= 256 {
        CheckStrategy::Exhaustive
    } else {
        CheckStrategy::random(100_000, SCALE_SEED)
    };
    let phi = |e: &MabElem| MabElem {
        z: ring.mul(c, e.z),
        ..*e
    };
    let out = sweep::<2, _>(l.order(), strategy, |[i, j]| {
        let (x, y) = (l.elem(i), l.elem(j));
        phi(&l.mul(&x, &y)) == target.mul(&phi(&x), &phi(&y))
    });
    let report = IdentityReport::from_sweep("scale_isomorphism", l, strategy, out);
    Ok(ScaleIsomorphism { c, target, report })
}
