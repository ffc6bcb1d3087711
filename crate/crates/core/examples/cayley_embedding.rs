use mab_loops::cayley::{
    associativity_counterexample, embed_m10, verify_alternative, verify_embedding,
    verify_norm_criterion, CayleyAlgebra,
};
use mab_loops::mab::{MabElem, MabLoop, MabParams};
use mab_loops::ring::Ring;
use mab_loops::strategy::CheckStrategy;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let o = CayleyAlgebra::new(Ring::parse("GF:2")?);
    println!(
        "alternative: {}",
        verify_alternative(&o, CheckStrategy::Exhaustive, 10_000)?.ok
    );
    if let Some([a, b, c]) = associativity_counterexample(&o)? {
        println!("not associative: ({a} {b}) {c} != {a} ({b} {c})");
    }
    let n = verify_norm_criterion(&o)?;
    println!(
        "{} of {} elements invertible; norm criterion ok: {}",
        n.invertible, n.elements, n.ok
    );

    let l = MabLoop::new(MabParams::with_r0_order("GF:2^2", 3, 1, 0)?)?;
    let p = MabElem::new(2, 1, 0, 0);
    println!("{p} -> {}", embed_m10(&p));
    let r = verify_embedding(&l, 0, 0)?;
    println!(
        "embedding is a monomorphism: {} ({} pairs)",
        r.ok, r.homomorphism.checked
    );
    Ok(())
}
