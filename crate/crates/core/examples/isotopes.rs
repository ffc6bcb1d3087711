use mab_loops::loops::{isotope, verify_loop_axioms, verify_moufang, TableLoop};
use mab_loops::mab::{MabLoop, MabParams};
use mab_loops::strategy::CheckStrategy;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let l = MabLoop::new(MabParams::with_r0_order("GF:2^2", 3, 1, 0)?)?;
    let original = TableLoop::from_loop(&l);
    for m in ["(1,0,0,0)", "(2,1,0,0)", "(3,2,1,3)"] {
        let idx = l.index_of(&l.parse_elem(m)?).expect("element of the loop");
        let iso = isotope(&l, idx)?;
        let moufang = verify_moufang(&iso, CheckStrategy::random(20_000, 3));
        println!(
            "isotope at {m}: loop {}, moufang {}, equal to original {}",
            verify_loop_axioms(&iso).ok,
            moufang.ok,
            iso.table() == original.table()
        );
    }
    Ok(())
}
