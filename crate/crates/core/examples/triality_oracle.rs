use mab_loops::mab::{MabElem, MabLoop, MabParams};
use mab_loops::strategy::CheckStrategy;
use mab_loops::triality::{
    generation_checks, oracle_compare, verify_equivariance, verify_module_triality_all,
    verify_pairing_sweep, verify_triality_identity, SWord, TrialityGroup,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let params = MabParams::with_r0_order("GF:2^2", 3, 1, 0)?;
    let g = TrialityGroup::new(params.clone())?;

    let p = MabElem::new(2, 1, 1, 0);
    let q = MabElem::new(1, 1, 0, 0);
    let encoded = g.encode(&p);
    println!("{p} lives in G as {encoded}");
    println!("its sigma image: {}", g.act_g(SWord::SIGMA, &encoded));
    println!("{p} * {q} via G: {}", g.loop_mul(&p, &q)?);

    let r = verify_triality_identity(&g, CheckStrategy::random(10_000, 7));
    println!("triality identity on 10^4 samples: {}", r.ok);
    println!(
        "equivariance: {}",
        verify_equivariance(&g, CheckStrategy::Exhaustive).ok
    );
    println!(
        "module matrices vanish: {}",
        verify_module_triality_all(&g).ok
    );
    println!("pairing sigma-fixed: {}", verify_pairing_sweep(&g).ok);
    println!("generation: {:?}", generation_checks(&g).ok);

    let l = MabLoop::new(params)?;
    let report = oracle_compare(&l, 0, 0)?;
    println!(
        "oracle: {}/{} products agree",
        report.matches, report.checked
    );
    Ok(())
}
