use rayon::prelude::*;
use serde::Serialize;

use super::{find_identity, FiniteLoop, Magma};
use crate::strategy::{sweep, CheckStrategy};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum AxiomWitness {
    EmptyCarrier,
    NoIdentity,
    /// `row * col_a == row * col_b` with `col_a != col_b`.
    RowRepeat {
        row: usize,
        col_a: usize,
        col_b: usize,
    },
    /// `row_a * col == row_b * col` with `row_a != row_b`.
    ColumnRepeat {
        col: usize,
        row_a: usize,
        row_b: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub ok: bool,
    pub order: usize,
    pub identity: Option<usize>,
    pub witness: Option<AxiomWitness>,
}

/// Outcome of an identity sweep over tuples of elements.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub check: String,
    pub ok: bool,
    pub checked: u64,
    pub strategy: CheckStrategy,
    pub witness: Option<Vec<usize>>,
    pub witness_labels: Option<Vec<String>>,
}

impl IdentityReport {
    pub(crate) fn from_sweep<M: Magma + ?Sized, const K: usize>(
        check: &str,
        m: &M,
        strategy: CheckStrategy,
        out: crate::strategy::SweepOutcome<K>,
    ) -> Self {
        IdentityReport {
            check: check.to_string(),
            ok: out.ok(),
            checked: out.checked,
            strategy,
            witness: out.witness.map(|w| w.to_vec()),
            witness_labels: out.witness.map(|w| w.iter().map(|&a| m.label(a)).collect()),
        }
    }
}

fn first_repeat(values: impl Iterator<Item = usize>, n: usize) -> Option<(usize, usize)> {
    let mut seen = vec![usize::MAX; n];
    for (i, v) in values.enumerate() {
        if seen[v] != usize::MAX {
            return Some((seen[v], i));
        }
        seen[v] = i;
    }
    None
}

/// Two-sided identity plus bijective left and right translations.
pub fn verify_loop_axioms<M: Magma + ?Sized>(m: &M) -> AxiomReport {
    let n = m.order();
    let fail = |identity, witness| AxiomReport {
        ok: false,
        order: n,
        identity,
        witness: Some(witness),
    };
    if n == 0 {
        return fail(None, AxiomWitness::EmptyCarrier);
    }
    let Some(e) = find_identity(m) else {
        return fail(None, AxiomWitness::NoIdentity);
    };
    let rows = (0..n)
        .into_par_iter()
        .find_map_first(|a| first_repeat((0..n).map(|b| m.mul(a, b)), n).map(|r| (a, r)));
    if let Some((row, (col_a, col_b))) = rows {
        return fail(Some(e), AxiomWitness::RowRepeat { row, col_a, col_b });
    }
    let cols = (0..n)
        .into_par_iter()
        .find_map_first(|b| first_repeat((0..n).map(|a| m.mul(a, b)), n).map(|r| (b, r)));
    if let Some((col, (row_a, row_b))) = cols {
        return fail(Some(e), AxiomWitness::ColumnRepeat { col, row_a, row_b });
    }
    AxiomReport {
        ok: true,
        order: n,
        identity: Some(e),
        witness: None,
    }
}

/// The Moufang identity `xy . zx = (x . yz) x` over triples `(x, y, z)`.
pub fn verify_moufang<M: Magma + ?Sized>(m: &M, strategy: CheckStrategy) -> IdentityReport {
    let out = sweep::<3, _>(m.order(), strategy, |[x, y, z]| {
        m.mul(m.mul(x, y), m.mul(z, x)) == m.mul(m.mul(x, m.mul(y, z)), x)
    });
    IdentityReport::from_sweep("moufang", m, strategy, out)
}

/// `m^-1 (mx . y) = x m^-1 . my = (x . y m^-1) . m` over triples `(m, x, y)`.
/// A triple whose `m` lacks a two-sided inverse counts as a failure.
pub fn verify_inverse_identities<L: FiniteLoop + ?Sized>(
    l: &L,
    strategy: CheckStrategy,
) -> IdentityReport {
    let n = l.order();
    let invs: Vec<Option<usize>> = (0..n).into_par_iter().map(|a| l.inv(a)).collect();
    let out = sweep::<3, _>(n, strategy, |[m, x, y]| {
        let Some(mi) = invs[m] else { return false };
        let first = l.mul(mi, l.mul(l.mul(m, x), y));
        let second = l.mul(l.mul(x, mi), l.mul(m, y));
        let third = l.mul(l.mul(x, l.mul(y, mi)), m);
        first == second && second == third
    });
    IdentityReport::from_sweep("inverse_identities", l, strategy, out)
}
