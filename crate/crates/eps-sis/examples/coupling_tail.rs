//! Tail of the coalescence time past t_N, with the theoretical shape
//! overlay: `cargo run --release --example coupling_tail`.

use eps_sis::experiments::coupling_tail;
use eps_sis::ModelParams;

fn main() -> eps_sis::Result<()> {
    let n = 400;
    let p = ModelParams::new(1.0, 2.0, 0.5, n)?;
    let report = coupling_tail(&p, 0, n, &[0.5, 1.0, 2.0, 4.0, 8.0], 4000, 17, 1.0)?;
    println!("extreme pair (0, {n}), {} replications:", report.replications);
    println!("{:>6} {:>10} {:>22} {:>10}", "xi", "tail", "95% CI", "psi1 shape");
    for row in &report.rows {
        println!(
            "{:6.2} {:10.5} [{:8.5}, {:8.5}] {:10.5}",
            row.xi, row.tail, row.ci.lo, row.ci.hi, row.psi1
        );
    }
    Ok(())
}
