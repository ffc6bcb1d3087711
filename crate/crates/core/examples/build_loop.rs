use mab_loops::loops::Magma;
use mab_loops::mab::{MabElem, MabLoop, MabParams};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for (ring, order, b) in [
        ("GF:2^2", 3, 0),
        ("GF:7", 3, -2),
        ("GF:2^3", 7, 0),
        ("GF:5^2", 3, 0),
    ] {
        let l = MabLoop::new(MabParams::with_r0_order(ring, order, 1, b)?)?;
        println!(
            "M_{{1,{b}}} over {ring} with |R_0| = {order}: order {}",
            l.order()
        );
    }

    let l = MabLoop::new(MabParams::from_parts("GF:7", 2, 1, -2)?)?;
    let p = l.parse_elem("(2,1,0,0)")?;
    let q = l.parse_elem("(1,0,1,0)")?;
    println!("{p} * {q} = {}", l.mul(&p, &q));
    println!("{p}^-1 = {}", l.inv(&p));
    println!(
        "same product, abelian-by-cyclic form: {}",
        l.mul_abelian_by_cyclic(&p, &q)?
    );
    let r = MabElem::new(4, 3, 5, 6);
    println!(
        "associator determinant of {p}, {q}, {r}: {}",
        l.associator_det(&p, &q, &r)
    );
    Ok(())
}
