//! Exact stationary tail mass outside sqrt(N)-balls around x*N:
//! `cargo run --example stationary_concentration`.

use eps_sis::experiments::stationary_concentration;
use eps_sis::ModelParams;

fn main() -> eps_sis::Result<()> {
    let p = ModelParams::new(1.0, 2.0, 0.5, 1)?;
    let c_grid = [0.5, 1.0, 1.5, 2.0, 3.0];
    let report = stationary_concentration(&p, &[200, 800, 3200], &c_grid)?;

    print!("{:>6}", "N");
    for c in &c_grid {
        print!("  tail(c={c})");
    }
    println!("  {:>8}", "c_min");
    for row in &report.rows {
        print!("{:6}", row.n);
        for t in &row.tails {
            print!("  {t:9.5}");
        }
        println!("  {:8.4}", row.c_min);
    }
    println!(
        "minimal covering radius is stable across N: max/min = {:.4}",
        report.c_min_ratio
    );
    Ok(())
}
