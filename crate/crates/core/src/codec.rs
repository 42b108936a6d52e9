//! Encoding, server evaluation and decoding of a polynomial code over `F_p`.
//!
//! The user splits `A` into `K` row blocks and `B` into `L` column blocks,
//! adds `T` random masks to each, and sends server `n` the evaluations
//! `f(a_n)` and `g(a_n)`. Each server returns `h(a_n) = f(a_n) g(a_n)`. Since
//! `h` only has monomials with exponents in `J = terms(alpha ⊕ beta)`, the `N`
//! responses determine its coefficients through the generalized Vandermonde
//! matrix `GV(a, J)`, and each `A_k B_l` is the coefficient of `x^(alpha_k + beta_l)`.

use std::fmt::Write as _;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::degree_table::SchemeParams;
use crate::error::{param, Error, Result};
use crate::gf::{
    det, generalized_vandermonde, is_mds, next_prime, solve, FieldMatrix, MdsMode, PrimeField,
    MAX_MODULUS,
};
use crate::schemes::PolynomialCode;

/// Dimensions of `A` (`r x s`) and `B` (`s x t`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BlockShapes {
    pub r: usize,
    pub s: usize,
    pub t: usize,
}

impl BlockShapes {
    pub fn new(r: usize, s: usize, t: usize) -> Self {
        Self { r, s, t }
    }

    pub fn validate(&self, params: SchemeParams) -> Result<()> {
        if self.r == 0 || self.s == 0 || self.t == 0 {
            return param("matrix dimensions must be positive");
        }
        if !self.r.is_multiple_of(params.k) {
            return param(format!("K={} does not divide r={}", params.k, self.r));
        }
        if !self.t.is_multiple_of(params.l) {
            return param(format!("L={} does not divide t={}", params.l, self.t));
        }
        Ok(())
    }

    /// Rows of each `A_k`.
    pub fn a_block_rows(&self, params: SchemeParams) -> usize {
        self.r / params.k
    }

    /// Columns of each `B_l`.
    pub fn b_block_cols(&self, params: SchemeParams) -> usize {
        self.t / params.l
    }
}

/// Evaluation points together with the exponent set they interpolate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvaluationPlan {
    field: PrimeField,
    points: Vec<u64>,
    exponents: Vec<u64>,
}

/// Outcome of checking the three sufficient conditions for a plan.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PlanChecks {
    pub gv_det_nonzero: bool,
    pub p_mds: bool,
    pub q_mds: bool,
}

impl PlanChecks {
    pub fn all(&self) -> bool {
        self.gv_det_nonzero && self.p_mds && self.q_mds
    }
}

/// Checks invertibility of `GV(points, J)` and the MDS property of the mask
/// evaluation matrices `P = [a_n^alpha_(K+t)]` and `Q = [a_n^beta_(L+t)]`.
pub fn check_points(
    code: &PolynomialCode,
    field: &PrimeField,
    points: &[u64],
    mode: MdsMode,
) -> Result<PlanChecks> {
    let exponents = code.exponents();
    if points.len() != exponents.len() {
        return param(format!(
            "{} points for a code with N={}",
            points.len(),
            exponents.len()
        ));
    }
    let gv = generalized_vandermonde(field, points, &exponents)?;
    let gv_det_nonzero = det(field, &gv)? != 0;
    let params = code.params();
    let assignment = code.assignment();
    let mask_matrix = |masks: &[u64]| {
        FieldMatrix::from_fn(masks.len(), points.len(), |t, n| {
            field.pow(points[n], masks[t])
        })
    };
    let p_mds = is_mds(field, &mask_matrix(assignment.alpha_masks(params)), mode)?;
    let q_mds = is_mds(field, &mask_matrix(assignment.beta_masks(params)), mode)?;
    Ok(PlanChecks {
        gv_det_nonzero,
        p_mds,
        q_mds,
    })
}

impl EvaluationPlan {
    /// Builds a plan from explicit points and verifies it against `code`.
    pub fn with_points(
        code: &PolynomialCode,
        field: PrimeField,
        points: Vec<u64>,
        mode: MdsMode,
    ) -> Result<Self> {
        let points: Vec<u64> = points.into_iter().map(|a| field.reduce(a)).collect();
        let checks = check_points(code, &field, &points, mode)?;
        if !checks.all() {
            return Err(Error::Verification(format!("points rejected: {checks:?}")));
        }
        Ok(Self {
            field,
            points,
            exponents: code.exponents(),
        })
    }

    /// Assembles a plan without any verification. Used to audit deliberately
    /// broken plans; encoding with such a plan may not decode or be private.
    pub fn from_parts_unchecked(field: PrimeField, points: Vec<u64>, exponents: Vec<u64>) -> Self {
        Self {
            field,
            points,
            exponents,
        }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn points(&self) -> &[u64] {
        &self.points
    }

    pub fn exponents(&self) -> &[u64] {
        &self.exponents
    }

    pub fn n(&self) -> usize {
        self.points.len()
    }

    /// Line-oriented text form: `p=`, `points=`, `J=`.
    pub fn to_text(&self) -> String {
        let join = |xs: &[u64]| xs.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
        let mut out = String::new();
        let _ = writeln!(out, "p={}", self.field.modulus());
        let _ = writeln!(out, "points={}", join(&self.points));
        let _ = writeln!(out, "J={}", join(&self.exponents));
        out
    }

    /// Parses [`EvaluationPlan::to_text`] output. Only structural checks are
    /// made; use [`check_points`] to re-verify against a code.
    pub fn from_text(text: &str) -> Result<Self> {
        let (mut p, mut points, mut exponents) = (None, None, None);
        let list = |v: &str| -> Result<Vec<u64>> {
            if v.is_empty() {
                return Ok(Vec::new());
            }
            v.split(',')
                .map(|x| {
                    x.parse::<u64>()
                        .map_err(|e| Error::Parse(format!("{x:?}: {e}")))
                })
                .collect()
        };
        for line in text.lines().filter(|l| !l.trim().is_empty()) {
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected key=value, got {line:?}")))?;
            match key {
                "p" => {
                    p = Some(
                        value
                            .parse::<u64>()
                            .map_err(|e| Error::Parse(e.to_string()))?,
                    )
                }
                "points" => points = Some(list(value)?),
                "J" => exponents = Some(list(value)?),
                other => return Err(Error::Parse(format!("unknown key {other:?}"))),
            }
        }
        let field = PrimeField::new(p.ok_or_else(|| Error::Parse("missing p".into()))?)?;
        let points = points.ok_or_else(|| Error::Parse("missing points".into()))?;
        let exponents = exponents.ok_or_else(|| Error::Parse("missing J".into()))?;
        if points.len() != exponents.len() {
            return Err(Error::Parse("points and J differ in length".into()));
        }
        if let Some(&a) = points.iter().find(|&&a| a >= field.modulus()) {
            return Err(Error::Parse(format!("point {a} is not reduced")));
        }
        Ok(Self {
            field,
            points,
            exponents,
        })
    }
}

/// Default field: the smallest prime above `max(J) * N`.
pub fn default_field(code: &PolynomialCode) -> Result<PrimeField> {
    let exponents = code.exponents();
    let max_j = exponents.last().copied().unwrap_or(0).max(1);
    let bound = max_j
        .checked_mul(exponents.len() as u64)
        .filter(|&b| b < MAX_MODULUS / 2)
        .ok_or_else(|| Error::Parameter("default field would exceed 62 bits".into()))?;
    PrimeField::new(next_prime(bound))
}

/// Rejection-samples distinct nonzero points until all three plan
/// conditions hold. Reproducible from `seed`.
pub fn find_evaluation_plan(
    code: &PolynomialCode,
    field: PrimeField,
    seed: u64,
    max_attempts: usize,
    mode: MdsMode,
) -> Result<EvaluationPlan> {
    let n = code.n_servers();
    let p = field.modulus();
    if p <= n as u64 {
        return param(format!("field F_{p} too small for N={n} distinct points"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..max_attempts {
        let points: Vec<u64> = sample(&mut rng, (p - 1) as usize, n)
            .into_iter()
            .map(|i| i as u64 + 1)
            .collect();
        if check_points(code, &field, &points, mode)?.all() {
            return Ok(EvaluationPlan {
                field,
                points,
                exponents: code.exponents(),
            });
        }
    }
    Err(Error::SearchFailure {
        attempts: max_attempts,
    })
}

/// The random matrices `R_t` (shape `r/K x s`) and `S_t` (shape `s x t/L`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaskSet {
    pub r_masks: Vec<FieldMatrix>,
    pub s_masks: Vec<FieldMatrix>,
}

impl MaskSet {
    pub fn random(
        field: &PrimeField,
        params: SchemeParams,
        shapes: BlockShapes,
        seed: u64,
    ) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (rb, cb) = (shapes.a_block_rows(params), shapes.b_block_cols(params));
        let p = field.modulus();
        let r_masks = (0..params.t)
            .map(|_| FieldMatrix::from_fn(rb, shapes.s, |_, _| rng.gen_range(0..p)))
            .collect();
        let s_masks = (0..params.t)
            .map(|_| FieldMatrix::from_fn(shapes.s, cb, |_, _| rng.gen_range(0..p)))
            .collect();
        Self { r_masks, s_masks }
    }

    /// All-zero masks. Shares then leak the inputs; for audits only.
    pub fn zero(params: SchemeParams, shapes: BlockShapes) -> Self {
        let (rb, cb) = (shapes.a_block_rows(params), shapes.b_block_cols(params));
        Self {
            r_masks: vec![FieldMatrix::zeros(rb, shapes.s); params.t],
            s_masks: vec![FieldMatrix::zeros(shapes.s, cb); params.t],
        }
    }

    fn validate(&self, params: SchemeParams, shapes: BlockShapes) -> Result<()> {
        let (rb, cb) = (shapes.a_block_rows(params), shapes.b_block_cols(params));
        let ok = self.r_masks.len() == params.t
            && self.s_masks.len() == params.t
            && self
                .r_masks
                .iter()
                .all(|m| (m.rows(), m.cols()) == (rb, shapes.s))
            && self
                .s_masks
                .iter()
                .all(|m| (m.rows(), m.cols()) == (shapes.s, cb));
        if ok {
            Ok(())
        } else {
            param("mask shapes do not match the block shapes")
        }
    }
}

/// Per-server encoded inputs, indexed by server id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShareBundle {
    field: PrimeField,
    pub f_shares: Vec<FieldMatrix>,
    pub g_shares: Vec<FieldMatrix>,
}

impl ShareBundle {
    pub fn len(&self) -> usize {
        self.f_shares.len()
    }

    pub fn is_empty(&self) -> bool {
        self.f_shares.is_empty()
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }
}

/// Evaluates `sum_i coeffs[i] * a^exps[i]` for matrix coefficients.
fn evaluate_poly(
    field: &PrimeField,
    coeffs: &[&FieldMatrix],
    exps: &[u64],
    a: u64,
) -> Result<FieldMatrix> {
    let mut acc = FieldMatrix::zeros(coeffs[0].rows(), coeffs[0].cols());
    for (c, &e) in coeffs.iter().zip(exps) {
        acc = acc.add(field, &c.scale(field, field.pow(a, e)))?;
    }
    Ok(acc)
}

fn check_inputs(
    a: &FieldMatrix,
    b: &FieldMatrix,
    code: &PolynomialCode,
    plan: &EvaluationPlan,
    shapes: BlockShapes,
) -> Result<()> {
    shapes.validate(code.params())?;
    if (a.rows(), a.cols()) != (shapes.r, shapes.s) {
        return param(format!(
            "A is {}x{}, expected {}x{}",
            a.rows(),
            a.cols(),
            shapes.r,
            shapes.s
        ));
    }
    if (b.rows(), b.cols()) != (shapes.s, shapes.t) {
        return param(format!(
            "B is {}x{}, expected {}x{}",
            b.rows(),
            b.cols(),
            shapes.s,
            shapes.t
        ));
    }
    if plan.n() != code.n_servers() {
        return param(format!(
            "plan has {} points, code needs {}",
            plan.n(),
            code.n_servers()
        ));
    }
    let p = plan.field.modulus();
    if a.data().iter().chain(b.data()).any(|&x| x >= p) {
        return param("input entries must be reduced modulo p");
    }
    Ok(())
}

/// Encodes with caller-supplied masks.
pub fn encode_with_masks(
    a: &FieldMatrix,
    b: &FieldMatrix,
    code: &PolynomialCode,
    plan: &EvaluationPlan,
    shapes: BlockShapes,
    masks: &MaskSet,
) -> Result<ShareBundle> {
    check_inputs(a, b, code, plan, shapes)?;
    let params = code.params();
    masks.validate(params, shapes)?;
    let field = plan.field;
    let (rb, cb) = (shapes.a_block_rows(params), shapes.b_block_cols(params));

    let a_blocks: Vec<FieldMatrix> = (0..params.k)
        .map(|k| a.block(k * rb, (k + 1) * rb, 0, shapes.s))
        .collect();
    let b_blocks: Vec<FieldMatrix> = (0..params.l)
        .map(|l| b.block(0, shapes.s, l * cb, (l + 1) * cb))
        .collect();
    let f_coeffs: Vec<&FieldMatrix> = a_blocks.iter().chain(&masks.r_masks).collect();
    let g_coeffs: Vec<&FieldMatrix> = b_blocks.iter().chain(&masks.s_masks).collect();
    let alpha = code.assignment().alpha();
    let beta = code.assignment().beta();

    let mut f_shares = Vec::with_capacity(plan.n());
    let mut g_shares = Vec::with_capacity(plan.n());
    for &point in &plan.points {
        f_shares.push(evaluate_poly(&field, &f_coeffs, alpha, point)?);
        g_shares.push(evaluate_poly(&field, &g_coeffs, beta, point)?);
    }
    Ok(ShareBundle {
        field,
        f_shares,
        g_shares,
    })
}

/// Encodes and also returns the masks that were drawn. Audit use only.
pub fn encode_audited(
    a: &FieldMatrix,
    b: &FieldMatrix,
    code: &PolynomialCode,
    plan: &EvaluationPlan,
    shapes: BlockShapes,
    seed: u64,
) -> Result<(ShareBundle, MaskSet)> {
    shapes.validate(code.params())?;
    let masks = MaskSet::random(&plan.field, code.params(), shapes, seed);
    let bundle = encode_with_masks(a, b, code, plan, shapes, &masks)?;
    Ok((bundle, masks))
}

/// Encodes `A` and `B` into one share pair per server; masks are discarded.
pub fn encode(
    a: &FieldMatrix,
    b: &FieldMatrix,
    code: &PolynomialCode,
    plan: &EvaluationPlan,
    shapes: BlockShapes,
    seed: u64,
) -> Result<ShareBundle> {
    encode_audited(a, b, code, plan, shapes, seed).map(|(bundle, _)| bundle)
}

/// What server `n` computes: `f(a_n) g(a_n)`.
pub fn server_evaluate(bundle: &ShareBundle, n: usize) -> Result<FieldMatrix> {
    if n >= bundle.len() {
        return param(format!("server {n} out of range (N={})", bundle.len()));
    }
    bundle.f_shares[n].mul(&bundle.field, &bundle.g_shares[n])
}

/// Interpolates `h` from all `N` responses (indexed by server id) and
/// reassembles `AB`.
pub fn decode(
    responses: &[FieldMatrix],
    code: &PolynomialCode,
    plan: &EvaluationPlan,
    shapes: BlockShapes,
) -> Result<FieldMatrix> {
    let params = code.params();
    shapes.validate(params)?;
    let n = code.n_servers();
    if responses.len() != n {
        return param(format!("{} responses for N={n} servers", responses.len()));
    }
    let (rb, cb) = (shapes.a_block_rows(params), shapes.b_block_cols(params));
    if let Some(i) = responses
        .iter()
        .position(|h| (h.rows(), h.cols()) != (rb, cb))
    {
        return param(format!("response {i} has the wrong shape"));
    }
    let field = plan.field;
    let gv = generalized_vandermonde(&field, &plan.points, &plan.exponents)?;
    // one right-hand side per scalar position of a block
    let rhs = FieldMatrix::from_fn(n, rb * cb, |i, j| responses[i].data()[j]);
    let coeffs = solve(&field, &gv, &rhs).map_err(|e| match e {
        Error::Singular => Error::Verification("GV matrix of the plan is singular".into()),
        other => other,
    })?;

    let alpha = code.assignment().alpha();
    let beta = code.assignment().beta();
    let mut ab = FieldMatrix::zeros(shapes.r, shapes.t);
    for (k, &ak) in alpha.iter().take(params.k).enumerate() {
        for (l, &bl) in beta.iter().take(params.l).enumerate() {
            let idx = plan
                .exponents
                .binary_search(&(ak + bl))
                .map_err(|_| Error::Verification("plan exponents do not match the code".into()))?;
            let c = coeffs.row(idx);
            for i in 0..rb {
                for j in 0..cb {
                    ab.set(k * rb + i, l * cb + j, c[i * cb + j]);
                }
            }
        }
    }
    Ok(ab)
}

/// Upload and download volume in field symbols.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CostReport {
    pub upload_symbols: u64,
    pub download_symbols: u64,
}

/// Upload `N(rs/K + st/L)`, download `N rt/(KL)`.
pub fn cost(code: &PolynomialCode, shapes: BlockShapes) -> Result<CostReport> {
    cost_for(code.params(), code.n_servers(), shapes)
}

/// Same as [`cost`] for an arbitrary server count.
pub fn cost_for(params: SchemeParams, n: usize, shapes: BlockShapes) -> Result<CostReport> {
    shapes.validate(params)?;
    let n = n as u64;
    let (r, s, t) = (shapes.r as u64, shapes.s as u64, shapes.t as u64);
    let (k, l) = (params.k as u64, params.l as u64);
    Ok(CostReport {
        upload_symbols: n * (r / k * s + s * (t / l)),
        download_symbols: n * (r / k) * (t / l),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::schemes::{gasp_small, SchemeLabel};

    fn tiny() -> (PolynomialCode, PrimeField) {
        let params = SchemeParams::new(1, 1, 1).unwrap();
        (
            PolynomialCode::build(params, SchemeLabel::Big).unwrap(),
            PrimeField::new(5).unwrap(),
        )
    }

    fn mat(field: &PrimeField, rows: &[Vec<u64>]) -> FieldMatrix {
        FieldMatrix::from_rows(field, rows).unwrap()
    }

    #[test]
    fn motivating_plan_accepted() {
        let params = SchemeParams::new(3, 3, 2).unwrap();
        let code = PolynomialCode::new(params, gasp_small(params), SchemeLabel::Small).unwrap();
        let field = PrimeField::new(29).unwrap();
        let plan =
            EvaluationPlan::with_points(&code, field, (1..=18).collect(), MdsMode::Full).unwrap();
        let gv = generalized_vandermonde(&field, plan.points(), plan.exponents()).unwrap();
        assert_eq!(det(&field, &gv).unwrap(), 20);
    }

    #[test]
    fn field_too_small() {
        let (code, _) = tiny();
        let f3 = PrimeField::new(3).unwrap();
        assert!(matches!(
            find_evaluation_plan(&code, f3, 0, 10, MdsMode::Full),
            Err(Error::Parameter(_))
        ));
    }

    #[test]
    fn search_in_f7() {
        let (code, _) = tiny();
        let f7 = PrimeField::new(7).unwrap();
        let plan = find_evaluation_plan(&code, f7, 3, 100, MdsMode::Full).unwrap();
        assert_eq!(plan.n(), 3);
        assert!(check_points(&code, &f7, plan.points(), MdsMode::Full)
            .unwrap()
            .all());
    }

    #[test]
    fn hand_evaluated_shares() {
        let (code, f5) = tiny();
        let plan = EvaluationPlan::with_points(&code, f5, vec![1, 2, 4], MdsMode::Full).unwrap();
        let shapes = BlockShapes::new(1, 1, 1);
        let (a, b) = (mat(&f5, &[vec![2]]), mat(&f5, &[vec![3]]));
        for (r, s) in [(0u64, 0u64), (1, 4), (3, 2)] {
            let masks = MaskSet {
                r_masks: vec![mat(&f5, &[vec![r]])],
                s_masks: vec![mat(&f5, &[vec![s]])],
            };
            let bundle = encode_with_masks(&a, &b, &code, &plan, shapes, &masks).unwrap();
            let f: Vec<u64> = bundle.f_shares.iter().map(|m| m.get(0, 0)).collect();
            assert_eq!(f, vec![(2 + r) % 5, (2 + 2 * r) % 5, (2 + 4 * r) % 5]);
            let h0 = server_evaluate(&bundle, 0).unwrap();
            assert_eq!(h0.get(0, 0), (2 + r) * (3 + s) % 5);
            let responses: Vec<_> = (0..3)
                .map(|n| server_evaluate(&bundle, n).unwrap())
                .collect();
            assert_eq!(
                decode(&responses, &code, &plan, shapes).unwrap().data(),
                &[1]
            );
        }
    }

    #[test]
    fn zero_masks_give_plain_shares() {
        let (code, f5) = tiny();
        let plan = EvaluationPlan::with_points(&code, f5, vec![1, 2, 4], MdsMode::Full).unwrap();
        let shapes = BlockShapes::new(2, 2, 2);
        let a = mat(&f5, &[vec![1, 2], vec![3, 4]]);
        let b = mat(&f5, &[vec![0, 1], vec![1, 0]]);
        let bundle = encode_with_masks(
            &a,
            &b,
            &code,
            &plan,
            shapes,
            &MaskSet::zero(code.params(), shapes),
        )
        .unwrap();
        assert!(bundle.f_shares.iter().all(|f| *f == a));
        let h = server_evaluate(&bundle, 1).unwrap();
        assert_eq!(h, a.mul(&f5, &b).unwrap());
    }

    #[test]
    fn zero_g_share_gives_zero_response() {
        let (code, f5) = tiny();
        let plan = EvaluationPlan::with_points(&code, f5, vec![1, 2, 4], MdsMode::Full).unwrap();
        let shapes = BlockShapes::new(1, 1, 1);
        let mut bundle = encode(
            &mat(&f5, &[vec![2]]),
            &mat(&f5, &[vec![3]]),
            &code,
            &plan,
            shapes,
            0,
        )
        .unwrap();
        bundle.g_shares[0] = FieldMatrix::zeros(1, 1);
        assert!(server_evaluate(&bundle, 0).unwrap().is_zero());
        assert!(server_evaluate(&bundle, 3).is_err());
    }

    #[test]
    fn decode_rejects_missing_response() {
        let (code, f5) = tiny();
        let plan = EvaluationPlan::with_points(&code, f5, vec![1, 2, 4], MdsMode::Full).unwrap();
        let responses = vec![FieldMatrix::zeros(1, 1); 2];
        assert!(matches!(
            decode(&responses, &code, &plan, BlockShapes::new(1, 1, 1)),
            Err(Error::Parameter(_))
        ));
    }

    #[test]
    fn shape_errors() {
        let (code, f5) = tiny();
        let plan = EvaluationPlan::with_points(&code, f5, vec![1, 2, 4], MdsMode::Full).unwrap();
        let a = FieldMatrix::zeros(2, 2);
        let b = FieldMatrix::zeros(3, 2);
        assert!(encode(&a, &b, &code, &plan, BlockShapes::new(2, 2, 2), 0).is_err());
        let params = SchemeParams::new(2, 3, 1).unwrap();
        assert!(BlockShapes::new(3, 1, 3).validate(params).is_err());
        assert!(BlockShapes::new(2, 1, 4).validate(params).is_err());
        assert!(BlockShapes::new(4, 1, 6).validate(params).is_ok());
    }

    #[test]
    fn cost_formulas() {
        let params = SchemeParams::new(2, 2, 6).unwrap();
        let c = cost_for(params, 20, BlockShapes::new(4, 4, 4)).unwrap();
        assert_eq!(
            c,
            CostReport {
                upload_symbols: 20 * 16,
                download_symbols: 20 * 4
            }
        );
        let one = SchemeParams::new(1, 1, 1).unwrap();
        let c = cost_for(one, 3, BlockShapes::new(2, 3, 5)).unwrap();
        assert_eq!(
            c,
            CostReport {
                upload_symbols: 3 * (6 + 15),
                download_symbols: 3 * 10
            }
        );
    }

    #[test]
    fn plan_text_round_trip() {
        let (code, f5) = tiny();
        let plan = EvaluationPlan::with_points(&code, f5, vec![1, 2, 4], MdsMode::Full).unwrap();
        let text = plan.to_text();
        assert_eq!(text, "p=5\npoints=1,2,4\nJ=0,1,2\n");
        let back = EvaluationPlan::from_text(&text).unwrap();
        assert_eq!(back, plan);
        assert_eq!(back.to_text(), text);
        assert!(EvaluationPlan::from_text("p=5\npoints=1,2\nJ=0,1,2\n").is_err());
        assert!(EvaluationPlan::from_text("p=6\npoints=1\nJ=0\n").is_err());
        assert!(EvaluationPlan::from_text("p=5\npoints=9\nJ=0\n").is_err());
    }
}
