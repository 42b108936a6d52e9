//! In-process simulation of the `N` servers and privacy audits.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::codec::{
    check_points, cost, decode, default_field, encode_with_masks, find_evaluation_plan,
    server_evaluate, BlockShapes, CostReport, EvaluationPlan, MaskSet, ShareBundle,
};
use crate::degree_table::SchemeParams;
use crate::error::{Error, Result};
use crate::gf::{for_each_subset, FieldMatrix, MdsMode, PrimeField};
use crate::schemes::{PolynomialCode, SchemeLabel};

/// Default cap on elementary steps for [`exhaustive_privacy_audit`].
pub const DEFAULT_AUDIT_BUDGET: u128 = 100_000_000;

/// Attempts allowed when searching for evaluation points.
pub const PLAN_ATTEMPTS: usize = 1000;

/// Where evaluation points come from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FieldChoice {
    /// Smallest prime above `max(J) * N`, random points.
    Auto,
    /// Given prime, random points.
    Prime(u64),
    /// Given prime and explicit points.
    Points(u64, Vec<u64>),
}

/// Everything observed during one simulated multiplication.
#[derive(Debug, Clone)]
pub struct SessionTranscript {
    pub code: PolynomialCode,
    pub plan: EvaluationPlan,
    pub shapes: BlockShapes,
    pub a: FieldMatrix,
    pub b: FieldMatrix,
    pub shares: ShareBundle,
    pub responses: Vec<FieldMatrix>,
    pub decoded: FieldMatrix,
    pub cost: CostReport,
    pub elapsed: Duration,
}

impl SessionTranscript {
    /// `key=value` lines for display; wall time excluded so the block is
    /// reproducible.
    pub fn summary(&self) -> String {
        let params = self.code.params();
        let mut out = String::new();
        let _ = writeln!(out, "K={}", params.k);
        let _ = writeln!(out, "L={}", params.l);
        let _ = writeln!(out, "T={}", params.t);
        let _ = writeln!(out, "scheme={}", self.code.label());
        let _ = writeln!(out, "N={}", self.code.n_servers());
        let _ = writeln!(out, "p={}", self.plan.field().modulus());
        let _ = writeln!(out, "r={}", self.shapes.r);
        let _ = writeln!(out, "s={}", self.shapes.s);
        let _ = writeln!(out, "t={}", self.shapes.t);
        let _ = writeln!(out, "upload_symbols={}", self.cost.upload_symbols);
        let _ = writeln!(out, "download_symbols={}", self.cost.download_symbols);
        let _ = writeln!(
            out,
            "rate={}",
            crate::schemes::format_rate(self.code.rate())
        );
        out
    }
}

fn random_matrix(
    rng: &mut ChaCha8Rng,
    field: &PrimeField,
    rows: usize,
    cols: usize,
) -> FieldMatrix {
    let p = field.modulus();
    FieldMatrix::from_fn(rows, cols, |_, _| rng.gen_range(0..p))
}

/// Builds the code and plan, draws random `A` and `B`, runs every server and
/// decodes. Fails with [`Error::Verification`] if the result differs from the
/// direct product.
pub fn run_sdmm(
    params: SchemeParams,
    label: SchemeLabel,
    shapes: BlockShapes,
    field: FieldChoice,
    seed: u64,
) -> Result<SessionTranscript> {
    let started = Instant::now();
    shapes.validate(params)?;
    let code = PolynomialCode::build(params, label)?;
    let plan = match field {
        FieldChoice::Auto => find_evaluation_plan(
            &code,
            default_field(&code)?,
            seed,
            PLAN_ATTEMPTS,
            MdsMode::Full,
        )?,
        FieldChoice::Prime(p) => find_evaluation_plan(
            &code,
            PrimeField::new(p)?,
            seed,
            PLAN_ATTEMPTS,
            MdsMode::Full,
        )?,
        FieldChoice::Points(p, points) => {
            EvaluationPlan::with_points(&code, PrimeField::new(p)?, points, MdsMode::Full)?
        }
    };
    let f = plan.field();

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let a = random_matrix(&mut rng, &f, shapes.r, shapes.s);
    let b = random_matrix(&mut rng, &f, shapes.s, shapes.t);
    let masks = MaskSet::random(&f, params, shapes, rng.gen());

    let shares = encode_with_masks(&a, &b, &code, &plan, shapes, &masks)?;
    let responses = (0..shares.len())
        .map(|n| server_evaluate(&shares, n))
        .collect::<Result<Vec<_>>>()?;
    let decoded = decode(&responses, &code, &plan, shapes)?;
    if decoded != a.mul(&f, &b)? {
        return Err(Error::Verification(
            "decoded product differs from A*B".into(),
        ));
    }
    let cost = cost(&code, shapes)?;
    Ok(SessionTranscript {
        code,
        plan,
        shapes,
        a,
        b,
        shares,
        responses,
        decoded,
        cost,
        elapsed: started.elapsed(),
    })
}

/// Re-verification of the sufficient decodability and privacy conditions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MdsAudit {
    pub gv_det_nonzero: bool,
    pub p_mds: bool,
    pub q_mds: bool,
}

impl MdsAudit {
    pub fn passed(&self) -> bool {
        self.gv_det_nonzero && self.p_mds && self.q_mds
    }
}

pub fn mds_audit(code: &PolynomialCode, plan: &EvaluationPlan) -> Result<MdsAudit> {
    let checks = check_points(code, &plan.field(), plan.points(), MdsMode::Full)?;
    Ok(MdsAudit {
        gv_det_nonzero: checks.gv_det_nonzero,
        p_mds: checks.p_mds,
        q_mds: checks.q_mds,
    })
}

/// Mask distribution used by the exhaustive audit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum AuditMasks {
    /// Every mask value, as a uniform source would produce.
    #[default]
    Uniform,
    /// Masks fixed at zero.
    Zero,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrivacyReport {
    pub private: bool,
    /// First colluding set (server ids) whose view depends on the secrets.
    pub leaking_subset: Option<Vec<usize>>,
    pub steps: u128,
}

/// Elementary steps the exhaustive audit would take.
pub fn audit_steps(code: &PolynomialCode, p: u64, masks: AuditMasks) -> u128 {
    let SchemeParams { k, l, t } = code.params();
    let n = code.n_servers() as u128;
    let p = p as u128;
    let secrets = p.saturating_pow((k + l) as u32);
    let mask_values = match masks {
        AuditMasks::Uniform => p.saturating_pow(2 * t as u32),
        AuditMasks::Zero => 1,
    };
    let mut subsets: u128 = 1;
    for i in 0..t as u128 {
        subsets = subsets.saturating_mul(n - i) / (i + 1);
    }
    subsets
        .saturating_mul(secrets)
        .saturating_mul(mask_values)
        .saturating_mul(t as u128)
}

/// Exact distributional privacy check with scalar blocks (`r = K`, `s = 1`,
/// `t = L`). For every `T`-subset of servers and every pair of secrets, the
/// multiset of share tuples over all mask values must coincide.
///
/// Works on any point vector, including unverified ones.
pub fn exhaustive_privacy_audit(
    code: &PolynomialCode,
    plan: &EvaluationPlan,
    masks: AuditMasks,
    budget: u128,
) -> Result<PrivacyReport> {
    let field = plan.field();
    let p = field.modulus();
    let steps = audit_steps(code, p, masks);
    if steps > budget {
        return Err(Error::BudgetExceeded {
            needed: steps,
            budget,
        });
    }
    let params = code.params();
    let (k, l, t) = (params.k, params.l, params.t);
    let alpha = code.assignment().alpha();
    let beta = code.assignment().beta();
    let points = plan.points();
    if points.len() != code.n_servers() {
        return Err(Error::Parameter("plan does not match code".into()));
    }
    // pw_f[n][i] = a_n^alpha_i, pw_g[n][j] = a_n^beta_j
    let pw_f: Vec<Vec<u64>> = points
        .iter()
        .map(|&a| alpha.iter().map(|&e| field.pow(a, e)).collect())
        .collect();
    let pw_g: Vec<Vec<u64>> = points
        .iter()
        .map(|&a| beta.iter().map(|&e| field.pow(a, e)).collect())
        .collect();

    let secret_count = (p as u128).pow((k + l) as u32) as u64;
    let mask_count = match masks {
        AuditMasks::Uniform => (p as u128).pow(2 * t as u32) as u64,
        AuditMasks::Zero => 1,
    };
    let digits = |mut x: u64, len: usize| -> Vec<u64> {
        (0..len)
            .map(|_| {
                let d = x % p;
                x /= p;
                d
            })
            .collect()
    };

    let mut leaking = None;
    for_each_subset(points.len(), t, |subset| {
        let mut reference: Option<HashMap<Vec<u64>, u64>> = None;
        for s in 0..secret_count {
            let secret = digits(s, k + l);
            let mut views: HashMap<Vec<u64>, u64> = HashMap::new();
            for m in 0..mask_count {
                let mask = digits(m, 2 * t);
                let mut view = Vec::with_capacity(2 * t);
                for &n in subset {
                    let mut f = 0;
                    for i in 0..k {
                        f = field.add(f, field.mul(secret[i], pw_f[n][i]));
                    }
                    for i in 0..t {
                        f = field.add(f, field.mul(mask[i], pw_f[n][k + i]));
                    }
                    let mut g = 0;
                    for j in 0..l {
                        g = field.add(g, field.mul(secret[k + j], pw_g[n][j]));
                    }
                    for j in 0..t {
                        g = field.add(g, field.mul(mask[t + j], pw_g[n][l + j]));
                    }
                    view.push(f);
                    view.push(g);
                }
                *views.entry(view).or_default() += 1;
            }
            match &reference {
                None => reference = Some(views),
                Some(r) if *r != views => {
                    leaking = Some(subset.to_vec());
                    return false;
                }
                Some(_) => {}
            }
        }
        true
    });
    Ok(PrivacyReport {
        private: leaking.is_none(),
        leaking_subset: leaking,
        steps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tiny_code(t: usize) -> PolynomialCode {
        PolynomialCode::build(SchemeParams::new(1, 1, t).unwrap(), SchemeLabel::Auto).unwrap()
    }

    #[test]
    fn motivating_session() {
        let params = SchemeParams::new(3, 3, 2).unwrap();
        let tr = run_sdmm(
            params,
            SchemeLabel::Small,
            BlockShapes::new(6, 4, 3),
            FieldChoice::Prime(29),
            0,
        )
        .unwrap();
        assert_eq!(tr.code.n_servers(), 18);
        assert_eq!(tr.decoded, tr.a.mul(&tr.plan.field(), &tr.b).unwrap());
        assert!(tr.summary().contains("N=18\n"));
    }

    #[test]
    fn tiny_and_degenerate_sessions() {
        let one = SchemeParams::new(1, 1, 1).unwrap();
        let tr = run_sdmm(
            one,
            SchemeLabel::Auto,
            BlockShapes::new(1, 1, 1),
            FieldChoice::Prime(7),
            4,
        )
        .unwrap();
        assert_eq!(tr.code.n_servers(), 3);
        let params = SchemeParams::new(2, 3, 2).unwrap();
        let tr = run_sdmm(
            params,
            SchemeLabel::Auto,
            BlockShapes::new(2, 1, 3),
            FieldChoice::Auto,
            9,
        )
        .unwrap();
        assert_eq!((tr.decoded.rows(), tr.decoded.cols()), (2, 3));
        assert!(run_sdmm(
            params,
            SchemeLabel::Auto,
            BlockShapes::new(3, 1, 3),
            FieldChoice::Auto,
            0
        )
        .is_err());
    }

    #[test]
    fn audits_on_motivating_fixture() {
        let params = SchemeParams::new(3, 3, 2).unwrap();
        let code = PolynomialCode::build(params, SchemeLabel::Small).unwrap();
        let f29 = PrimeField::new(29).unwrap();
        let plan =
            EvaluationPlan::with_points(&code, f29, (1..=18).collect(), MdsMode::Full).unwrap();
        assert!(mds_audit(&code, &plan).unwrap().passed());

        let mut dup: Vec<u64> = (1..=18).collect();
        dup[17] = 1;
        let broken = EvaluationPlan::from_parts_unchecked(f29, dup, code.exponents());
        assert!(!mds_audit(&code, &broken).unwrap().gv_det_nonzero);

        let mut zero: Vec<u64> = (1..=18).collect();
        zero[0] = 0;
        let broken = EvaluationPlan::from_parts_unchecked(f29, zero, code.exponents());
        assert!(!mds_audit(&code, &broken).unwrap().p_mds);
    }

    #[test]
    fn exhaustive_audit_tiny() {
        let code = tiny_code(1);
        let f5 = PrimeField::new(5).unwrap();
        let plan = find_evaluation_plan(&code, f5, 0, 100, MdsMode::Full).unwrap();
        let ok = exhaustive_privacy_audit(&code, &plan, AuditMasks::Uniform, DEFAULT_AUDIT_BUDGET)
            .unwrap();
        assert!(ok.private);
        let leak =
            exhaustive_privacy_audit(&code, &plan, AuditMasks::Zero, DEFAULT_AUDIT_BUDGET).unwrap();
        assert!(!leak.private);
        assert_eq!(leak.leaking_subset, Some(vec![0]));
    }

    #[test]
    fn audit_budget_enforced() {
        let code = tiny_code(2);
        let f7 = PrimeField::new(7).unwrap();
        let plan = find_evaluation_plan(&code, f7, 0, 100, MdsMode::Full).unwrap();
        let err = exhaustive_privacy_audit(&code, &plan, AuditMasks::Uniform, 1000).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { .. }));
    }
}
