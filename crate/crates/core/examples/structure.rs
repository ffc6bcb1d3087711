use mab_loops::mab::{scale_isomorphism, structure_report, MabLoop, MabParams};
use mab_loops::ring::Elem;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for b in [0, 5] {
        let l = MabLoop::new(MabParams::from_parts("GF:7", 2, 1, b)?)?;
        let r = structure_report(&l);
        println!("{}", serde_json::to_string_pretty(&r)?);
    }

    let l = MabLoop::new(MabParams::with_r0_order("GF:2^2", 3, 1, 0)?)?;
    for c in 1..4 {
        let iso = scale_isomorphism(&l, Elem(c))?;
        println!(
            "z -> {c} z maps onto M_{{{},{}}}: {}",
            iso.target.params().a(),
            iso.target.params().b(),
            iso.report.ok
        );
    }
    Ok(())
}
