//! Prints the degree tables of the four constructions for a few parameters.

use gasp::cli::render_table;
use gasp::degree_table::SchemeParams;
use gasp::schemes::{PolynomialCode, SchemeLabel};

fn main() -> gasp::Result<()> {
    let cases = [
        (SchemeParams::new(3, 3, 2)?, SchemeLabel::Small),
        (SchemeParams::new(3, 3, 2)?, SchemeLabel::Big),
        (SchemeParams::new(2, 4, 3)?, SchemeLabel::Auto),
        (SchemeParams::new(4, 4, 4)?, SchemeLabel::Grouped(2)),
    ];
    for (params, label) in cases {
        let code = PolynomialCode::build(params, label)?;
        println!("{params} scheme={}", code.label());
        println!("{}", render_table(&code));
    }
    Ok(())
}
