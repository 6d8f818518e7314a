//! Builds every corpus domain, evaluates its fixtures and runs the slope
//! prediction with the entry's recommended grid.
//!
//! cargo run --release --example corpus_tour [name...]

use std::time::Instant;

use starlike::corpus;
use starlike::slope::predict;

fn main() -> starlike::Result<()> {
    let wanted: Vec<String> = std::env::args().skip(1).collect();
    for name in corpus::NAMES {
        if !wanted.is_empty() && !wanted.iter().any(|w| w == name) {
            continue;
        }
        let info = corpus::info(name)?;
        let dom = corpus::build_default(name)?;
        println!("== {name}: {}", info.summary);
        for fx in corpus::fixtures(name)? {
            let got = fx.evaluate(&dom)?;
            let mark = if fx.passes(got) { "ok  " } else { "FAIL" };
            println!("  {mark} {:<28} expected {:<22.15} got {:<22.15} ({})", fx.label, fx.expected, got, fx.tolerance_label());
        }
        let start = Instant::now();
        match predict(&dom, info.p, &info.predict) {
            Ok(pr) => {
                let c = pr.certificate.as_ref().unwrap();
                println!(
                    "  prediction {:?} via {:?}; alpha- in [{:.6}, {:.6}], alpha+ in [{:.6}, {:.6}] ({:.2?})",
                    pr.verdict,
                    pr.rule,
                    c.alpha_minus.liminf,
                    c.alpha_minus.limsup,
                    c.alpha_plus.liminf,
                    c.alpha_plus.limsup,
                    start.elapsed()
                );
            }
            Err(e) => println!("  prediction failed: {e}"),
        }
    }
    Ok(())
}
