use mab_loops::ring::Ring;
use mab_loops::triality::PreimageGroup;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for ring in ["GF:2^2", "GF:7"] {
        let ring = Ring::parse(ring)?;
        for b in ring.elements() {
            let r = PreimageGroup::new(ring.clone(), b, 1)?.report();
            match r.witness {
                None => println!("{ring}, b = {b}: abelian"),
                Some([x, y, xy, yx]) => {
                    println!("{ring}, b = {b}: {x} {y} gives {xy} but {yx}")
                }
            }
        }
    }
    Ok(())
}
