//! Boundary distances next to angular extents, and the inequalities that
//! tie them together, along the factorial radii of the slit examples.
//!
//! cargo run --release --example distance_bridge

use starlike::corpus::{self, factorial};
use starlike::distances::{check_angular_distance_bridge, delta_minus, delta_plus};
use starlike::Complex;

fn main() -> starlike::Result<()> {
    let p = Complex::new(0.0, 0.0);
    for name in ["santiago", "manolo"] {
        let dom = corpus::build_default(name)?;
        println!("== {name}");
        println!("{:>8} {:>14} {:>14} {:>14} {:>14} {:>6}", "t", "alpha-", "alpha+", "delta-/t", "delta+/t", "bridge");
        for n in 2..=7 {
            let t = factorial(n + 1);
            let r = check_angular_distance_bridge(&dom, p, t, 1e-9, 1e-12)?;
            println!(
                "{t:>8} {:>14.10} {:>14.10} {:>14.10} {:>14.10} {:>6}",
                r.alpha_minus,
                r.alpha_plus,
                delta_minus(&dom, p, t)? / t,
                delta_plus(&dom, p, t)? / t,
                if r.holds() { "ok" } else { "FAIL" }
            );
        }
    }
    Ok(())
}
