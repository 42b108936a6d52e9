//! Seeded SDMM sessions with random inputs and an automatically chosen field.

use gasp::codec::BlockShapes;
use gasp::degree_table::SchemeParams;
use gasp::harness::{run_sdmm, FieldChoice};
use gasp::schemes::SchemeLabel;

fn main() -> gasp::Result<()> {
    for (k, l, t) in [(1, 1, 1), (2, 2, 1), (3, 3, 2), (2, 3, 2), (4, 2, 5)] {
        let params = SchemeParams::new(k, l, t)?;
        let shapes = BlockShapes::new(2 * k, 3, 2 * l);
        let session = run_sdmm(params, SchemeLabel::Auto, shapes, FieldChoice::Auto, 7)?;
        println!(
            "{params}: N={} p={} upload={} download={} in {:?}",
            session.code.n_servers(),
            session.plan.field().modulus(),
            session.cost.upload_symbols,
            session.cost.download_symbols,
            session.elapsed
        );
    }
    Ok(())
}
