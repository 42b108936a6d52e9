//! K = L = 3, T = 2 over F_29 with a_n = n: the 18-server code end to end.

use gasp::codec::{decode, encode, server_evaluate, BlockShapes, EvaluationPlan};
use gasp::degree_table::{outer_sum, partition_regions, terms, SchemeParams};
use gasp::gf::{det, generalized_vandermonde, FieldMatrix, MdsMode, PrimeField};
use gasp::schemes::{gasp_small, PolynomialCode, SchemeLabel};

fn main() -> gasp::Result<()> {
    let params = SchemeParams::new(3, 3, 2)?;
    let assignment = gasp_small(params);
    println!("alpha = {:?}", assignment.alpha());
    println!("beta  = {:?}", assignment.beta());

    let table = outer_sum(&assignment, params)?;
    let regions = partition_regions(&table);
    println!("UL = {:?}", regions.ul);
    println!("J  = {:?} ({} terms)", terms(&table), terms(&table).len());

    let code = PolynomialCode::new(params, assignment, SchemeLabel::Small)?;
    let field = PrimeField::new(29)?;
    let points: Vec<u64> = (1..=18).collect();
    let gv = generalized_vandermonde(&field, &points, &code.exponents())?;
    println!("det GV = {} (mod 29)", det(&field, &gv)?);

    let plan = EvaluationPlan::with_points(&code, field, points, MdsMode::Full)?;
    let shapes = BlockShapes::new(3, 2, 3);
    let a = FieldMatrix::from_fn(3, 2, |i, j| (i * 2 + j + 1) as u64);
    let b = FieldMatrix::from_fn(2, 3, |i, j| (i * 3 + j + 7) as u64);
    let shares = encode(&a, &b, &code, &plan, shapes, 0)?;
    let responses: Vec<_> = (0..shares.len())
        .map(|n| server_evaluate(&shares, n))
        .collect::<Result<_, _>>()?;
    let ab = decode(&responses, &code, &plan, shapes)?;
    assert_eq!(ab, a.mul(&field, &b)?);
    for i in 0..ab.rows() {
        println!("{:?}", ab.row(i));
    }
    Ok(())
}
