//! Server counts against the closed forms, then the CSV sweep for K = L = 4.

use gasp::cli::rate_sweep_csv;
use gasp::degree_table::{count_terms, SchemeParams};
use gasp::schemes::{gasp_big, gasp_small, n_big_closed, n_small_closed};

fn main() -> gasp::Result<()> {
    let mut checked = 0;
    for k in 1..=8 {
        for l in 1..=8 {
            for t in 1..=2 * k.max(l) + 3 {
                let params = SchemeParams::new(k, l, t)?;
                assert_eq!(
                    count_terms(&gasp_big(params), params)?,
                    n_big_closed(params)
                );
                assert_eq!(
                    count_terms(&gasp_small(params), params)?,
                    n_small_closed(params)
                );
                checked += 1;
            }
        }
    }
    println!("closed forms agree on {checked} parameter triples\n");
    print!("{}", rate_sweep_csv(4, 4, 10)?);
    Ok(())
}
