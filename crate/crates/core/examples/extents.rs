//! Angular extents on a geometric grid for a corpus domain, with the
//! trailing-window limit estimates.
//!
//! cargo run --release --example extents [name] [t_end]

use starlike::corpus;
use starlike::extents::{extent_profile, geometric_grid, profile_limits};

fn main() -> starlike::Result<()> {
    let mut args = std::env::args().skip(1);
    let name = args.next().unwrap_or_else(|| "santiago".into());
    let t_end: f64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(1e4);
    let info = corpus::info(&name)?;
    let dom = corpus::build_default(&name)?;
    let grid = geometric_grid(1.0, t_end, 1.5)?;
    let prof = extent_profile(&dom, info.p, &grid, 1e-12)?;
    println!("{:>14} {:>18} {:>18}", "t", "alpha-", "alpha+");
    for ((t, m), p) in prof.t.iter().zip(&prof.alpha_minus).zip(&prof.alpha_plus) {
        println!("{t:>14.4} {m:>18.12} {p:>18.12}");
    }
    let (m, p) = profile_limits(&prof, 1e-3)?;
    println!("alpha-: liminf {:.6} limsup {:.6} converged {}", m.liminf, m.limsup, m.converged);
    println!("alpha+: liminf {:.6} limsup {:.6} converged {}", p.liminf, p.limsup, p.converged);
    Ok(())
}
