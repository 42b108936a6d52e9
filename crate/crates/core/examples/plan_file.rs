//! Writes an evaluation plan to text and reads it back.

use gasp::codec::{find_evaluation_plan, EvaluationPlan};
use gasp::degree_table::SchemeParams;
use gasp::gf::{MdsMode, PrimeField};
use gasp::harness::mds_audit;
use gasp::schemes::{PolynomialCode, SchemeLabel};

fn main() -> gasp::Result<()> {
    let code = PolynomialCode::build(SchemeParams::new(2, 3, 2)?, SchemeLabel::Auto)?;
    let plan = find_evaluation_plan(&code, PrimeField::new(101)?, 3, 1000, MdsMode::Full)?;
    let text = plan.to_text();
    print!("{text}");
    let back = EvaluationPlan::from_text(&text)?;
    assert_eq!(back.points(), plan.points());
    println!(
        "reloaded plan passes audit: {}",
        mds_audit(&code, &back)?.passed()
    );
    Ok(())
}
