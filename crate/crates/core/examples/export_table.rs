use mab_loops::loops::write_table_csv;
use mab_loops::mab::{MabLoop, MabParams};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let l = MabLoop::new(MabParams::from_parts("GF:2", 1, 1, 0)?)?;
    for (i, e) in l.elements().enumerate() {
        eprintln!("{i} = {e}");
    }
    write_table_csv(&l, std::io::stdout().lock())?;
    Ok(())
}
