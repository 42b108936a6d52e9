//! GASP exponent constructions, their closed-form server counts, and the
//! rate comparisons against earlier polynomial codes.

use std::fmt;

use num_rational::Ratio;

use crate::degree_table::{
    count_terms, is_decodable, is_t_secure_assignment, outer_sum, terms, ExponentAssignment,
    SchemeParams,
};
use crate::error::{param, Error, Result};

/// Exact download rate.
pub type Rate = Ratio<u64>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SchemeLabel {
    Small,
    Big,
    /// Combined GASP: small when `T < min(K, L)`, big otherwise.
    Auto,
    Grouped(usize),
}

impl fmt::Display for SchemeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SchemeLabel::Small => f.write_str("small"),
            SchemeLabel::Big => f.write_str("big"),
            SchemeLabel::Auto => f.write_str("auto"),
            SchemeLabel::Grouped(g) => write!(f, "grouped({g})"),
        }
    }
}

/// A decodable, T-secure polynomial code together with its server count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolynomialCode {
    params: SchemeParams,
    assignment: ExponentAssignment,
    n_servers: usize,
    label: SchemeLabel,
}

impl PolynomialCode {
    /// Wraps an arbitrary assignment. The server count is always recomputed
    /// from the degree table, and both table conditions must hold.
    pub fn new(
        params: SchemeParams,
        assignment: ExponentAssignment,
        label: SchemeLabel,
    ) -> Result<Self> {
        if !is_decodable(&assignment, params)? {
            return param(format!("assignment for {params} is not decodable"));
        }
        if !is_t_secure_assignment(&assignment, params)? {
            return param(format!("assignment for {params} is not T-secure"));
        }
        let n_servers = count_terms(&assignment, params)?;
        Ok(Self {
            params,
            assignment,
            n_servers,
            label,
        })
    }

    /// Builds the code for a named scheme.
    pub fn build(params: SchemeParams, label: SchemeLabel) -> Result<Self> {
        match label {
            SchemeLabel::Small => Self::new(params, gasp_small(params), label),
            SchemeLabel::Big => Self::new(params, gasp_big(params), label),
            SchemeLabel::Auto => gasp_auto(params),
            SchemeLabel::Grouped(g) => {
                if params.k != params.l || params.k != params.t {
                    return param("grouped scheme requires K = L = T");
                }
                Self::new(params, gasp_grouped(params.k, g)?, label)
            }
        }
    }

    pub fn params(&self) -> SchemeParams {
        self.params
    }

    pub fn assignment(&self) -> &ExponentAssignment {
        &self.assignment
    }

    pub fn n_servers(&self) -> usize {
        self.n_servers
    }

    pub fn label(&self) -> SchemeLabel {
        self.label
    }

    /// The ascending exponent set `J` of `h(x)`.
    pub fn exponents(&self) -> Vec<u64> {
        let table = outer_sum(&self.assignment, self.params).expect("validated at construction");
        terms(&table).into_iter().collect()
    }

    pub fn rate(&self) -> Rate {
        download_rate(self.params, self.n_servers)
    }
}

/// Shared layout: `alpha = (0..K, masks)`, `beta = (0, K, .., K(L-1), KL..KL+T-1)`.
fn scheme_form(
    k: usize,
    l: usize,
    alpha_masks: impl Iterator<Item = u64>,
    t: usize,
) -> ExponentAssignment {
    let (k64, l64) = (k as u64, l as u64);
    let kl = k64 * l64;
    let alpha = (0..k64).chain(alpha_masks).collect();
    let beta = (0..l64)
        .map(|i| k64 * i)
        .chain((0..t as u64).map(|i| kl + i))
        .collect();
    ExponentAssignment::new(alpha, beta).expect("scheme exponents fit in 62 bits")
}

pub fn gasp_big(params: SchemeParams) -> ExponentAssignment {
    let SchemeParams { k, l, t } = params;
    if l <= k {
        let kl = (k * l) as u64;
        scheme_form(k, l, (0..t as u64).map(|i| kl + i), t)
    } else {
        gasp_big(params.transposed()).swapped()
    }
}

pub fn gasp_small(params: SchemeParams) -> ExponentAssignment {
    let SchemeParams { k, l, t } = params;
    if k <= l {
        let (k64, kl) = (k as u64, (k * l) as u64);
        scheme_form(k, l, (0..t as u64).map(|i| kl + k64 * i), t)
    } else {
        gasp_small(params.transposed()).swapped()
    }
}

pub fn gasp_auto(params: SchemeParams) -> Result<PolynomialCode> {
    if params.t < params.k.min(params.l) {
        PolynomialCode::new(params, gasp_small(params), SchemeLabel::Small)
    } else {
        PolynomialCode::new(params, gasp_big(params), SchemeLabel::Big)
    }
}

/// Euclidean division `K = Q G + R` used by the grouped construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GroupedSpec {
    pub k: usize,
    pub g: usize,
    pub q: usize,
    pub r: usize,
}

impl GroupedSpec {
    pub fn new(k: usize, g: usize) -> Result<Self> {
        if k == 0 || g == 0 || g > k {
            return param(format!("group count G={g} must satisfy 1 <= G <= K={k}"));
        }
        Ok(Self {
            k,
            g,
            q: k / g,
            r: k % g,
        })
    }

    /// Mask exponents: `G` runs of `Q` consecutive integers starting at
    /// `K^2 + gK`, then one run of `R` starting at `K^2 + GK`.
    pub fn alpha_masks(&self) -> Vec<u64> {
        let (k, q, r) = (self.k as u64, self.q as u64, self.r as u64);
        let base = k * k;
        let mut masks: Vec<u64> = (0..self.g as u64)
            .flat_map(|g| (0..q).map(move |i| base + g * k + i))
            .collect();
        masks.extend((0..r).map(|i| base + self.g as u64 * k + i));
        masks
    }
}

/// Grouped construction for `K = L = T`.
pub fn gasp_grouped(k: usize, g: usize) -> Result<ExponentAssignment> {
    let spec = GroupedSpec::new(k, g)?;
    Ok(scheme_form(k, k, spec.alpha_masks().into_iter(), k))
}

/// Server count of `gasp_big`, piecewise.
pub fn n_big_closed(params: SchemeParams) -> usize {
    let SchemeParams { k, l, t } = params;
    let (big, small) = if l <= k { (k, l) } else { (l, k) };
    if t < big {
        (big + t) * (small + 1) - 1
    } else {
        2 * k * l + 2 * t - 1
    }
}

/// The six-branch count for the `K <= L` block (roles as printed).
fn small_count(k: i64, l: i64, t: i64) -> i64 {
    if l == 1 {
        if t < k {
            2 * k + t * t
        } else {
            k * t + k + t
        }
    } else if t == 1 && t < k {
        k * l + k + l
    } else if 2 <= t && t < k {
        k * l + k + l + t * t + t - 3
    } else if k <= t && t <= k * (l - 1) + 1 {
        k * l + k * t + l + 2 * t - 3 - (t - 2).div_euclid(k)
    } else {
        2 * k * l + k * t - k + t
    }
}

/// Server count of `gasp_small`, piecewise.
pub fn n_small_closed(params: SchemeParams) -> usize {
    let SchemeParams { k, l, t } = params;
    let (a, b) = if k <= l { (k, l) } else { (l, k) };
    small_count(a as i64, b as i64, t as i64) as usize
}

pub fn download_rate(params: SchemeParams, n: usize) -> Rate {
    Ratio::new(params.kl(), n as u64)
}

/// Rate `K^2 / (K+T)^2` of the square-partition code.
pub fn rate_r1(k: usize, t: usize) -> Rate {
    let (k, t) = (k as u64, t as u64);
    Ratio::new(k * k, (k + t) * (k + t))
}

/// Rate `KL / ((K+T)(L+1) - 1)` of the earlier rectangular code.
pub fn rate_r2(params: SchemeParams) -> Rate {
    Ratio::new(
        params.kl(),
        kakar_servers(params.k, params.l, params.t) as u64,
    )
}

fn kakar_servers(k: usize, l: usize, t: usize) -> usize {
    (k + t) * (l + 1) - 1
}

/// Renders a rate with three decimals, rounding half up.
pub fn format_rate(rate: Rate) -> String {
    let (num, den) = (*rate.numer() as u128, *rate.denom() as u128);
    let scaled = (2000 * num + den) / (2 * den);
    format!("{}.{:03}", scaled / 1000, scaled % 1000)
}

/// Server counts and rates of combined GASP and its competitors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RateReport {
    pub params: SchemeParams,
    pub n_small: usize,
    pub n_big: usize,
    pub n_gasp: usize,
    pub rate_gasp: Rate,
    /// Only defined for `K = L`.
    pub rate_r1: Option<Rate>,
    pub rate_r2: Rate,
}

pub fn rate_report(params: SchemeParams) -> RateReport {
    let n_small = n_small_closed(params);
    let n_big = n_big_closed(params);
    let n_gasp = if params.t < params.k.min(params.l) {
        n_small
    } else {
        n_big
    };
    RateReport {
        params,
        n_small,
        n_big,
        n_gasp,
        rate_gasp: download_rate(params, n_gasp),
        rate_r1: (params.k == params.l).then(|| rate_r1(params.k, params.t)),
        rate_r2: rate_r2(params),
    }
}

/// Partition choice for a fixed server budget.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Allocation {
    pub k: usize,
    pub l: usize,
    pub n_used: usize,
    pub rate: Rate,
}

/// The heuristic `(K̂, L̂)` for the rectangular code under a budget of `n`
/// servers, computed without floating point.
pub fn kakar_heuristic(n: usize, t: usize) -> Result<Allocation> {
    if t == 0 {
        return Err(Error::NoSolution("T must be positive".into()));
    }
    // least L >= 0 with L >= -3/2 + sqrt(1/4 + n/t), i.e. (2L+3)^2 t >= t + 4n
    let (n128, t128) = (n as u128, t as u128);
    let mut l_hat = 0usize;
    while ((2 * l_hat as u128 + 3).pow(2)) * t128 < t128 + 4 * n128 {
        l_hat += 1;
    }
    let l_hat = l_hat.max(1);
    let k_hat = ((n + 1) / (l_hat + 1)) as i64 - t as i64;
    if k_hat < 1 {
        return Err(Error::NoSolution(format!("no K >= 1 for N={n}, T={t}")));
    }
    let k_hat = k_hat as usize;
    let used = kakar_servers(k_hat, l_hat, t);
    assert!(used <= n, "heuristic exceeded the server budget");
    let rate = Ratio::new((k_hat * l_hat) as u64, used as u64);
    Ok(Allocation {
        k: k_hat,
        l: l_hat,
        n_used: used,
        rate,
    })
}

/// Brute-force maximization of `KL / min(N_small, N_big)` subject to the
/// count fitting in `n` servers. Ties go to smaller `K+L`, then smaller `K`.
pub fn optimize_gasp(n: usize, t: usize) -> Result<Allocation> {
    if t == 0 {
        return Err(Error::NoSolution("T must be positive".into()));
    }
    let mut best: Option<Allocation> = None;
    for k in 1..=n {
        for l in 1..=n / k {
            let params = SchemeParams { k, l, t };
            let used = n_small_closed(params).min(n_big_closed(params));
            if used > n {
                continue;
            }
            let cand = Allocation {
                k,
                l,
                n_used: used,
                rate: download_rate(params, used),
            };
            let better = match &best {
                None => true,
                Some(b) => {
                    cand.rate > b.rate || (cand.rate == b.rate && (k + l, k) < (b.k + b.l, b.k))
                }
            };
            if better {
                best = Some(cand);
            }
        }
    }
    best.ok_or_else(|| Error::NoSolution(format!("no (K, L) fits in N={n} servers with T={t}")))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GroupedRow {
    pub g: usize,
    pub n: usize,
    pub rate: Rate,
}

/// `N` and rate of the grouped construction for every `G` in `1..=K`.
pub fn grouped_sweep(k: usize) -> Result<Vec<GroupedRow>> {
    let params = SchemeParams::new(k, k, k)?;
    (1..=k)
        .map(|g| {
            let n = count_terms(&gasp_grouped(k, g)?, params)?;
            Ok(GroupedRow {
                g,
                n,
                rate: download_rate(params, n),
            })
        })
        .collect()
}
