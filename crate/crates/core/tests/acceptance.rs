use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use mab_loops::cayley::{
    associativity_counterexample, verify_alternative, verify_embedding, verify_norm_criterion,
    CayleyAlgebra,
};
use mab_loops::loops::{
    isotope, verify_inverse_identities, verify_loop_axioms, verify_moufang, Magma, TableLoop,
};
use mab_loops::mab::{
    find_associator_witness, n_commutative_sweep, scale_isomorphism, structure_report, MabLoop,
    MabParams,
};
use mab_loops::ring::{Elem, Ring};
use mab_loops::strategy::{sweep, CheckStrategy};
use mab_loops::triality::{
    oracle_compare, verify_module_triality_all, verify_pairing_sweep, verify_triality_identity,
    PreimageGroup, TrialityGroup,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn params(ring: &str, r0_order: u64, a: i64, b: i64) -> MabParams {
    MabParams::with_r0_order(ring, r0_order, a, b).expect("valid parameters")
}

fn build(ring: &str, r0_order: u64, a: i64, b: i64) -> MabLoop {
    MabLoop::new(params(ring, r0_order, a, b)).expect("loop builds")
}

fn gf2() -> MabLoop {
    build("GF:2", 1, 1, 0)
}
fn gf4() -> MabLoop {
    build("GF:2^2", 3, 1, 0)
}
fn gf7() -> MabLoop {
    build("GF:7", 3, 1, 5)
}
fn gf8() -> MabLoop {
    build("GF:2^3", 7, 1, 0)
}
fn gf25() -> MabLoop {
    build("GF:5^2", 3, 1, 1)
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn orders() -> Outcome {
    let want = [
        ("GF(4)", gf4(), 192),
        ("GF(8)", gf8(), 3584),
        ("GF(25)", gf25(), 46875),
        ("GF(7)", gf7(), 1029),
    ];
    let mut got = Vec::new();
    for (name, l, n) in want {
        ensure(
            l.order() == n,
            format!("{name}: order {} != {n}", l.order()),
        )?;
        got.push(n.to_string());
    }
    Ok(format!("orders {}", got.join(", ")))
}

fn moufang() -> Outcome {
    let mut parts = Vec::new();
    for (name, l) in [("GF(4)", gf4()), ("GF(2)", gf2())] {
        let r = verify_moufang(&l, CheckStrategy::Exhaustive);
        ensure(r.ok, format!("{name}: witness {:?}", r.witness_labels))?;
        parts.push(format!("{name} {} exhaustive", r.checked));
    }
    ensure(
        verify_moufang(&gf4(), CheckStrategy::Exhaustive).checked == 7_077_888,
        "order-192 sweep size",
    )?;
    for (name, l) in [("GF(7)", gf7()), ("GF(8)", gf8())] {
        let r = verify_moufang(&l, CheckStrategy::random(1_000_000, 2024));
        ensure(
            r.ok && r.checked == 1_000_000,
            format!("{name}: witness {:?}", r.witness_labels),
        )?;
        parts.push(format!("{name} {} sampled", r.checked));
    }
    Ok(parts.join(", "))
}

fn oracle() -> Outcome {
    let mut parts = Vec::new();
    for (name, l, expected) in [
        ("GF(2)", gf2(), 64),
        ("GF(4)", gf4(), 36_864),
        ("GF(7)", gf7(), 10_000),
        ("GF(8)", gf8(), 10_000),
        ("GF(25)", gf25(), 10_000),
    ] {
        let r = oracle_compare(&l, 10_000, 7).map_err(|e| format!("{name}: {e}"))?;
        ensure(
            r.ok && r.matches == r.checked && r.checked == expected,
            format!(
                "{name}: {}/{} match, first {:?}",
                r.matches,
                r.checked,
                r.mismatches.first()
            ),
        )?;
        parts.push(format!("{name} {}", r.checked));
    }
    Ok(format!("zero mismatches ({})", parts.join(", ")))
}

fn triality_identity() -> Outcome {
    let g2 = TrialityGroup::new(gf2().params().clone()).map_err(|e| e.to_string())?;
    let r = verify_triality_identity(&g2, CheckStrategy::Exhaustive);
    ensure(
        r.ok && r.checked == 512,
        format!("GF(2): {} checked, {:?}", r.checked, r.witness_labels),
    )?;
    let mut parts = vec![format!("GF(2) {} exhaustive", r.checked)];
    for (name, l) in [("GF(4)", gf4()), ("GF(7)", gf7())] {
        let g = TrialityGroup::new(l.params().clone()).map_err(|e| e.to_string())?;
        let r = verify_triality_identity(&g, CheckStrategy::random(100_000, 11));
        ensure(
            r.ok && r.checked == 100_000,
            format!("{name}: {:?}", r.witness_labels),
        )?;
        parts.push(format!("{name} {} sampled", r.checked));
    }
    Ok(parts.join(", "))
}

fn module_triality() -> Outcome {
    let mut parts = Vec::new();
    for (name, l) in [("GF(4)", gf4()), ("GF(7)", gf7()), ("GF(8)", gf8())] {
        let g = TrialityGroup::new(l.params().clone()).map_err(|e| e.to_string())?;
        let r = verify_module_triality_all(&g);
        ensure(r.ok, format!("{name}: {:?}", r.witness))?;
        parts.push(format!("{name} r={}", r.checked));
    }
    Ok(format!(
        "zero matrices for Psi and Psi* ({})",
        parts.join(", ")
    ))
}

fn pairing() -> Outcome {
    let mut parts = Vec::new();
    for (name, l, expected) in [
        ("GF(4)", gf4(), 48),
        ("GF(7)", gf7(), 147),
        ("GF(7) b=1", build("GF:7", 3, 1, 1), 147),
    ] {
        let g = TrialityGroup::new(l.params().clone()).map_err(|e| e.to_string())?;
        let r = verify_pairing_sweep(&g);
        ensure(
            r.ok && r.checked == expected,
            format!("{name}: {} checked, {:?}", r.checked, r.witness),
        )?;
        parts.push(format!("{name} {}", r.checked));
    }
    Ok(format!(
        "closed form matches and is sigma-fixed ({})",
        parts.join(", ")
    ))
}

fn structure() -> Outcome {
    for (name, l) in [("GF(4)", gf4()), ("GF(7)", gf7())] {
        let r = structure_report(&l);
        let q = l.ring().size() as usize;
        ensure(r.n_normal == Some(true), format!("{name}: N not normal"))?;
        ensure(
            r.quotient_order == Some(r.r0_order),
            format!("{name}: quotient {:?}", r.quotient_order),
        )?;
        ensure(
            r.quotient_cyclic == Some(true),
            format!("{name}: quotient not cyclic"),
        )?;
        ensure(
            r.nucleus_formula_applies,
            format!("{name}: formula should apply"),
        )?;
        ensure(
            r.nucleus_matches_formula == Some(true) && r.nucleus_size == Some(q),
            format!("{name}: nucleus size {:?}", r.nucleus_size),
        )?;
        ensure(
            r.n_commutative == Some(r.n_commutative_predicate),
            format!("{name}: N commutativity"),
        )?;
        let (w, _) = find_associator_witness(&l, u64::MAX);
        let w = w.ok_or(format!("{name}: no associator witness"))?;
        ensure(
            l.associator_det(&w[0], &w[1], &w[2]) != Elem::ZERO,
            format!("{name}: witness"),
        )?;
    }

    let ring = Ring::parse("GF:7").unwrap();
    let mut pairs = 0;
    for a in ring.units() {
        for b in ring.elements() {
            let p = params("GF:7", 3, i64::from(a.0), i64::from(b.0));
            let l = MabLoop::new(p).map_err(|e| e.to_string())?;
            let predicate = ring.add(ring.add(a, a), b) == Elem::ZERO;
            ensure(
                n_commutative_sweep(&l).is_none() == predicate,
                format!("GF(7) a={a} b={b}: N commutativity"),
            )?;
            pairs += 1;
        }
    }
    ensure(pairs == 42, format!("{pairs} grid pairs"))?;

    let l = gf4();
    let n = l.order();
    let out = sweep::<3, _>(n, CheckStrategy::Exhaustive, |[i, j, k]| {
        let (x, y, z) = (l.elem(i), l.elem(j), l.elem(k));
        let associates = l.mul(&l.mul(&x, &y), &z) == l.mul(&x, &l.mul(&y, &z));
        associates == (l.associator_det(&x, &y, &z) == Elem::ZERO)
    });
    ensure(
        out.ok(),
        format!("associator_det disagrees at {:?}", out.witness),
    )?;
    Ok(format!(
        "normal N, cyclic quotient, nucleus formula, {pairs}-pair grid, det criterion on {} triples",
        out.checked
    ))
}

fn scaling() -> Outcome {
    let l = gf4();
    let mut units = 0;
    for c in l.ring().units() {
        let iso = scale_isomorphism(&l, c).map_err(|e| e.to_string())?;
        ensure(
            iso.report.ok && iso.report.checked == 36_864,
            format!("c={c}: {:?}", iso.report.witness_labels),
        )?;
        units += 1;
    }
    Ok(format!(
        "homomorphic for all {units} units, 36864 pairs each"
    ))
}

fn cayley() -> Outcome {
    let e = verify_embedding(&gf4(), 0, 0).map_err(|e| e.to_string())?;
    ensure(
        e.ok && e.homomorphism.checked == 36_864,
        format!("embedding: {e:?}"),
    )?;
    ensure(e.injective, "embedding not injective")?;
    let o = CayleyAlgebra::new(Ring::parse("GF:2").unwrap());
    let alt =
        verify_alternative(&o, CheckStrategy::Exhaustive, 10_000).map_err(|e| e.to_string())?;
    ensure(
        alt.ok && alt.checked >= 65_536,
        format!("alternativity: {:?}", alt.witness),
    )?;
    let w = associativity_counterexample(&o)
        .map_err(|e| e.to_string())?
        .ok_or("no associativity counterexample")?;
    ensure(
        o.mul(&o.mul(&w[0], &w[1]), &w[2]) != o.mul(&w[0], &o.mul(&w[1], &w[2])),
        "bad counterexample",
    )?;
    let n = verify_norm_criterion(&o).map_err(|e| e.to_string())?;
    ensure(
        n.ok && n.elements == 256,
        format!("norm criterion: {:?}", n.witness),
    )?;
    Ok(format!(
        "monomorphism on 36864 pairs, alternative, counterexample {} {} {}, norm criterion on {} elements ({} invertible)",
        w[0], w[1], w[2], n.elements, n.invertible
    ))
}

fn preimage() -> Outcome {
    let mut checked = 0;
    for ring in ["GF:2^2", "GF:7"] {
        let ring = Ring::parse(ring).unwrap();
        for b in ring.elements() {
            for i in 1..=3 {
                let g = PreimageGroup::new(ring.clone(), b, i).map_err(|e| e.to_string())?;
                let r = g.report();
                ensure(
                    r.ok && r.abelian == (b == Elem::ZERO)
                        && r.witness.is_some() == (b != Elem::ZERO),
                    format!("{ring} b={b} i={i}: abelian {}", r.abelian),
                )?;
                checked += 1;
            }
        }
    }
    Ok(format!(
        "abelian exactly when b = 0 ({checked} groups), witnesses for b != 0"
    ))
}

fn isotopes() -> Outcome {
    let l = gf4();
    let n = l.order();
    for m in [1, 37, 64, 130, 191] {
        let iso = isotope(&l, m).map_err(|e| e.to_string())?;
        let ax = verify_loop_axioms(&iso);
        ensure(ax.ok, format!("m={}: axioms {:?}", l.elem(m), ax.witness))?;
        let mf = verify_moufang(&iso, CheckStrategy::random(100_000, 3));
        ensure(
            mf.ok && mf.checked == 100_000,
            format!("m={}: moufang {:?}", l.elem(m), mf.witness),
        )?;
    }
    let same = isotope(&l, 0).map_err(|e| e.to_string())?;
    ensure(
        same.table() == TableLoop::from_loop(&l).table(),
        "isotope at the identity differs",
    )?;
    Ok(format!(
        "5 isotopes of order {n} are Moufang loops, identity isotope reproduces the table"
    ))
}

fn inverse_identities() -> Outcome {
    let r = verify_inverse_identities(&gf4(), CheckStrategy::Exhaustive);
    ensure(r.ok, format!("GF(4): {:?}", r.witness_labels))?;
    let s = verify_inverse_identities(&gf7(), CheckStrategy::random(100_000, 5));
    ensure(
        s.ok && s.checked == 100_000,
        format!("GF(7): {:?}", s.witness_labels),
    )?;
    Ok(format!(
        "{} exhaustive on order 192, {} sampled on order 1029",
        r.checked, s.checked
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("order reproduction", orders),
        ("Moufang identity", moufang),
        ("oracle equivalence", oracle),
        ("triality identity", triality_identity),
        ("module triality matrices", module_triality),
        ("pairing closed form", pairing),
        ("structure facts", structure),
        ("scaling isomorphism", scaling),
        ("Cayley embedding", cayley),
        ("preimage group invariant", preimage),
        ("isotopes", isotopes),
        ("inverse identities", inverse_identities),
    ];
    let total = Instant::now();
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("[PASS] {:>2} {name}: {detail} ({secs:.1}s)", i + 1),
            Err(detail) => {
                failed += 1;
                println!("[FAIL] {:>2} {name}: {detail} ({secs:.1}s)", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed in {:.1}s",
        criteria.len() - failed,
        total.elapsed().as_secs_f64()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
