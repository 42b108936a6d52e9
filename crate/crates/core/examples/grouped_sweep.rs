//! Grouped GASP for K = L = T: how N moves with the number of groups.

use gasp::schemes::{format_rate, grouped_sweep};

fn main() -> gasp::Result<()> {
    let k: usize = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(9);
    let rows = grouped_sweep(k)?;
    let best = rows.iter().min_by_key(|r| (r.n, r.g)).expect("k >= 1");
    for row in &rows {
        let mark = if row.g == best.g {
            "  <- fewest servers"
        } else {
            ""
        };
        println!(
            "G={:>3}  N={:>6}  rate={}{mark}",
            row.g,
            row.n,
            format_rate(row.rate)
        );
    }
    Ok(())
}
