use mab_loops::ring::Ring;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let gf4 = Ring::parse("GF:2^2")?;
    println!(
        "{gf4}: {} elements, characteristic {}",
        gf4.size(),
        gf4.characteristic()
    );
    let w = gf4.element(2)?;
    println!("w = {w}, w^2 = {}, w^3 = {}", gf4.mul(w, w), gf4.pow(w, 3));
    println!("w^-1 = {}", gf4.unit_inverse(w)?);

    let gf7 = Ring::parse("GF:7")?;
    let minus_two = gf7.parse_elem("-2")?;
    println!("-2 in GF(7) is {minus_two}");
    let r0 = gf7.cyclic_subgroup(gf7.element_of_order(3)?)?;
    println!("cube roots of unity in GF(7): {:?}", r0.elements());

    let z12 = Ring::parse("Zn:12")?;
    let units: Vec<_> = z12.units().collect();
    println!("units of Z_12: {units:?}");
    let (a, b) = (z12.wrap(z12.element(5)?), z12.wrap(z12.element(7)?));
    println!("5 * 7 in Z_12 = {}", a.try_mul(b)?);
    Ok(())
}
