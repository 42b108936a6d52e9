//! Best (K, L) for N = 50 servers at every T, next to the heuristic split.

use gasp::schemes::{format_rate, kakar_heuristic, optimize_gasp};

fn main() -> gasp::Result<()> {
    let n = 50;
    println!(
        "{:>3} {:>9} {:>6} {:>9} {:>6}",
        "T", "gasp", "rate", "kakar", "rate"
    );
    for t in 1..=(n - 1) / 2 {
        let best = optimize_gasp(n, t)?;
        let base = kakar_heuristic(n, t)?;
        assert!(best.rate >= base.rate);
        println!(
            "{t:>3} {:>9} {:>6} {:>9} {:>6}",
            format!("{}x{}", best.k, best.l),
            format_rate(best.rate),
            format!("{}x{}", base.k, base.l),
            format_rate(base.rate)
        );
    }
    Ok(())
}
