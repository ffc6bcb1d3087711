use mab_loops::loops::{verify_inverse_identities, verify_loop_axioms, verify_moufang};
use mab_loops::mab::{MabLoop, MabParams};
use mab_loops::strategy::CheckStrategy;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let small = MabLoop::new(MabParams::with_r0_order("GF:2^2", 3, 1, 0)?)?;
    println!("axioms: {:?}", verify_loop_axioms(&small).ok);
    let r = verify_moufang(&small, CheckStrategy::Exhaustive);
    println!(
        "moufang on order 192: ok={} after {} triples",
        r.ok, r.checked
    );

    let large = MabLoop::new(MabParams::from_parts("GF:7", 2, 1, -2)?)?;
    let sampled = CheckStrategy::random(100_000, 2024);
    let r = verify_moufang(&large, sampled);
    println!(
        "moufang on order 1029: ok={} after {} sampled triples",
        r.ok, r.checked
    );
    let r = verify_inverse_identities(&large, sampled);
    println!("inverse identities: ok={}", r.ok);
    Ok(())
}
