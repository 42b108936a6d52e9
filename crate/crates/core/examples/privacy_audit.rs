//! Algebraic and exhaustive privacy checks on tiny fields, plus two ways to
//! break them: zero masks and a zero evaluation point.

use gasp::codec::{find_evaluation_plan, EvaluationPlan};
use gasp::degree_table::SchemeParams;
use gasp::gf::{MdsMode, PrimeField};
use gasp::harness::{exhaustive_privacy_audit, mds_audit, AuditMasks, DEFAULT_AUDIT_BUDGET};
use gasp::schemes::{PolynomialCode, SchemeLabel};

fn main() -> gasp::Result<()> {
    let code = PolynomialCode::build(SchemeParams::new(1, 1, 1)?, SchemeLabel::Auto)?;
    let field = PrimeField::new(5)?;
    let plan = find_evaluation_plan(&code, field, 0, 1000, MdsMode::Full)?;
    println!(
        "points {:?} over F_5: {:?}",
        plan.points(),
        mds_audit(&code, &plan)?
    );

    for masks in [AuditMasks::Uniform, AuditMasks::Zero] {
        let report = exhaustive_privacy_audit(&code, &plan, masks, DEFAULT_AUDIT_BUDGET)?;
        println!(
            "{masks:?} masks: private={} leak={:?} steps={}",
            report.private, report.leaking_subset, report.steps
        );
    }

    let mut points = plan.points().to_vec();
    points[0] = 0;
    let bad = EvaluationPlan::from_parts_unchecked(field, points, code.exponents());
    let report = exhaustive_privacy_audit(&code, &bad, AuditMasks::Uniform, DEFAULT_AUDIT_BUDGET)?;
    println!(
        "zero point {:?}: {:?}, private={}",
        bad.points(),
        mds_audit(&code, &bad)?,
        report.private
    );
    Ok(())
}
