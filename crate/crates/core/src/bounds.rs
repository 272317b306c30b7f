//! Closed-form bounds: the sparsity/colour trade-off, the clique-number
//! table, and the strong edge colouring constants.

use num_rational::Ratio;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numeric::{parse_decimal_ratio, Ext};

fn check_finite(name: &str, x: f64) -> Result<()> {
    if x.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("{name} = {x} is not finite")))
    }
}

/// `δ/(2(1-ε)) e^{-1/(1-ε)} - δ^{3/2}/(6(1-ε)²) e^{-7/(8(1-ε))}`.
pub fn g_func(eps: f64, delta: f64) -> Result<f64> {
    check_finite("eps", eps)?;
    check_finite("delta", delta)?;
    if eps >= 1.0 {
        return Err(Error::InvalidParameter(format!("eps = {eps} must be below 1")));
    }
    if delta < 0.0 {
        return Err(Error::InvalidParameter(format!("delta = {delta} is negative")));
    }
    Ok(g_unchecked(eps, delta))
}

pub(crate) fn g_unchecked(eps: f64, delta: f64) -> f64 {
    let x = 1.0 - eps;
    delta / (2.0 * x) * (-1.0 / x).exp() - delta.powf(1.5) / (6.0 * x * x) * (-7.0 / (8.0 * x)).exp()
}

/// `ε e^{-1/(2(1-ε))}`, the part of each round's target savings that the
/// next round must beat.
pub fn gamma_map(eps: f64) -> f64 {
    eps * (-1.0 / (2.0 * (1.0 - eps))).exp()
}

/// `e^{1/(2(1-ε))} g(ε, δ)`, the right-hand side of the feasibility condition.
pub fn condition_rhs(eps: f64, delta: f64) -> Result<f64> {
    Ok((1.0 / (2.0 * (1.0 - eps))).exp() * g_func(eps, delta)?)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConditionReport {
    pub eps: f64,
    pub delta: f64,
    /// `ε < rhs` in binary64.
    pub holds: bool,
    pub rhs: f64,
    /// `rhs - ε`; positive when the condition holds.
    pub margin: f64,
    /// The same quantities from a 256-bit evaluation of the decimal inputs.
    pub holds_extended: bool,
    pub rhs_extended: String,
    pub margin_extended: String,
}

/// Significant digits in the extended-precision strings.
pub const EXTENDED_DIGITS: usize = 40;

/// Whether `ε < e^{1/(2(1-ε))} g(ε, δ)`, with the signed margin.
pub fn condition_check(eps: f64, delta: f64) -> Result<ConditionReport> {
    if !(eps > 0.0 && eps < 0.5) {
        return Err(Error::InvalidParameter(format!("eps = {eps} must lie in (0, 0.5)")));
    }
    if !(0.0..=1.0).contains(&delta) {
        return Err(Error::InvalidParameter(format!("delta = {delta} must lie in [0, 1]")));
    }
    let rhs = condition_rhs(eps, delta)?;
    let mut ext = Ext::new();
    let (rhs_x, margin_x) = condition_extended(&mut ext, eps, delta);
    let positive = margin_x.is_positive() && !margin_x.is_zero();
    Ok(ConditionReport {
        eps,
        delta,
        holds: eps < rhs,
        rhs,
        margin: rhs - eps,
        holds_extended: positive,
        rhs_extended: ext.to_scientific(&rhs_x, EXTENDED_DIGITS),
        margin_extended: ext.to_scientific(&margin_x, EXTENDED_DIGITS),
    })
}

fn condition_extended(
    ext: &mut Ext,
    eps: f64,
    delta: f64,
) -> (astro_float::BigFloat, astro_float::BigFloat) {
    let e = ext.from_f64_decimal(eps);
    let d = ext.from_f64_decimal(delta);
    let g = g_extended(ext, &e, &d);
    let one = ext.int(1);
    let x = ext.sub(&one, &e);
    let half_over_x = ext.div(&one, &ext.mul(&ext.int(2), &x));
    let factor = ext.exp(&half_over_x);
    let rhs = ext.mul(&factor, &g);
    let margin = ext.sub(&rhs, &e);
    (rhs, margin)
}

fn g_extended(
    ext: &mut Ext,
    e: &astro_float::BigFloat,
    d: &astro_float::BigFloat,
) -> astro_float::BigFloat {
    let one = ext.int(1);
    let x = ext.sub(&one, e);
    let neg_inv_x = ext.div(&ext.int(-1), &x);
    let exp1 = ext.exp(&neg_inv_x);
    let first = ext.mul(&ext.div(d, &ext.mul(&ext.int(2), &x)), &exp1);
    let d32 = ext.mul(d, &ext.sqrt(d));
    let six_x2 = ext.mul(&ext.int(6), &ext.mul(&x, &x));
    let neg_7_8x = ext.div(&ext.int(-7), &ext.mul(&ext.int(8), &x));
    let exp2 = ext.exp(&neg_7_8x);
    let second = ext.mul(&ext.div(&d32, &six_x2), &exp2);
    ext.sub(&first, &second)
}

/// `g(ε, δ)` at 256 bits, as a decimal string with `digits` significant digits.
pub fn g_func_extended(eps: f64, delta: f64, digits: usize) -> Result<String> {
    g_func(eps, delta)?;
    let mut ext = Ext::new();
    let e = ext.from_f64_decimal(eps);
    let d = ext.from_f64_decimal(delta);
    let g = g_extended(&mut ext, &e, &d);
    Ok(ext.to_scientific(&g, digits))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ApproxVariant {
    /// `0.3012 δ - 0.1283 δ^{3/2}`.
    Ours,
    /// `0.1827 δ - 0.0778 δ^{3/2}`.
    BruhnJoos,
}

impl ApproxVariant {
    pub fn coefficients(self) -> (f64, f64) {
        match self {
            ApproxVariant::Ours => (0.3012, 0.1283),
            ApproxVariant::BruhnJoos => (0.1827, 0.0778),
        }
    }
}

/// Polynomial approximation of the best `ε` for a `δ`-sparse graph.
pub fn approx_eps(delta: f64, variant: ApproxVariant) -> Result<f64> {
    if !(0.0..=0.9).contains(&delta) {
        return Err(Error::InvalidParameter(format!("delta = {delta} must lie in [0, 0.9]")));
    }
    let (a, b) = variant.coefficients();
    Ok(a * delta - b * delta.powf(1.5))
}

/// `(α - 2ε)² / 2`, the sparsity of a critical graph with `ω = (1-α)(Δ+1)`.
pub fn density_delta(alpha: f64, eps: f64) -> Result<f64> {
    check_finite("alpha", alpha)?;
    check_finite("eps", eps)?;
    if eps >= alpha / 2.0 {
        return Err(Error::InvalidParameter(format!(
            "eps = {eps} must be below alpha/2 = {}",
            alpha / 2.0
        )));
    }
    Ok((alpha - 2.0 * eps).powi(2) / 2.0)
}

/// `½ C(max(2k - Δ - ω + 1, 0), 2)`, the guaranteed number of non-edges in
/// each neighbourhood of a critical graph. Exact.
pub fn critical_density_count(k: u64, max_degree: u64, omega: u64) -> Ratio<u128> {
    let m = (2 * k as i128 - max_degree as i128 - omega as i128 + 1).max(0) as u128;
    Ratio::new(m * m.saturating_sub(1) / 2, 2)
}

/// `0.3012 (α/2)(1-2ε)² - 0.1283 (α²/(2√2))(1-2ε)³`.
pub fn epsilon_alpha_rhs(alpha: f64, eps: f64) -> f64 {
    let s = 1.0 - 2.0 * eps;
    0.3012 * (alpha / 2.0) * s * s - 0.1283 * (alpha * alpha / (2.0 * std::f64::consts::SQRT_2)) * s.powi(3)
}

/// Largest `ε` on the grid `{j · grid}` with `ε <= rhs(α, ε)`, found by a
/// descending scan from `0.5`.
pub fn epsilon_for_alpha(alpha: f64, grid: f64) -> Result<f64> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::InvalidParameter(format!("alpha = {alpha} must lie in (0, 1]")));
    }
    if !(grid > 0.0 && grid <= 0.5) {
        return Err(Error::InvalidParameter(format!("grid = {grid} must lie in (0, 0.5]")));
    }
    let top = (0.5 / grid).floor() as u64;
    for j in (0..=top).rev() {
        let eps = j as f64 * grid;
        if eps <= epsilon_alpha_rhs(alpha, eps) {
            return Ok(eps);
        }
    }
    Ok(0.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Table1Row {
    pub alpha: f64,
    pub eps: f64,
}

/// `α = 0.02, 0.04, ..., 0.90` with their grid-optimal `ε`.
pub fn table1(grid: f64) -> Result<Vec<Table1Row>> {
    (1..=45)
        .map(|i| {
            let alpha = i as f64 / 50.0;
            Ok(Table1Row {
                alpha,
                eps: epsilon_for_alpha(alpha, grid)?,
            })
        })
        .collect()
}

/// Number of decimals needed to print multiples of `grid` exactly.
pub fn grid_decimals(grid: f64) -> usize {
    let mut d = 0;
    let mut g = grid;
    while d < 12 && (g - g.round()).abs() > 1e-9 {
        g *= 10.0;
        d += 1;
    }
    d
}

pub fn table1_csv(rows: &[Table1Row], grid: f64) -> String {
    let d = grid_decimals(grid).max(1);
    let mut out = String::from("alpha,eps\n");
    for r in rows {
        out.push_str(&format!("{:.2},{:.*}\n", r.alpha, d, r.eps));
    }
    out
}

fn strong_guard(alpha: f64, beta: f64) -> Result<()> {
    check_finite("alpha", alpha)?;
    check_finite("beta", beta)?;
    if alpha + beta >= 2.0 {
        return Err(Error::InvalidParameter(format!(
            "alpha + beta = {} must be below 2",
            alpha + beta
        )));
    }
    Ok(())
}

/// Leading coefficient of the bound on edges inside `F ∩ N(e)`.
pub fn strong_f(alpha: f64, beta: f64, gamma: f64, eta: f64) -> Result<f64> {
    strong_guard(alpha, beta)?;
    let a = 2.0 - alpha;
    let ab = 2.0 - alpha - beta;
    Ok(2.0 - alpha - beta - gamma / 2.0 - 3.0 * (2.0 - alpha - 2.0 * beta - gamma).powi(2) / (2.0 * a * a)
        - gamma * gamma / (2.0 * ab)
        + eta * ab)
}

/// [`strong_f`] after substituting `x = β + γ/2`.
pub fn strong_f0(alpha: f64, beta: f64, eta: f64, x: f64) -> Result<f64> {
    strong_guard(alpha, beta)?;
    let a = 2.0 - alpha;
    let ab = 2.0 - alpha - beta;
    Ok(2.0 - alpha - x - 3.0 * (2.0 - alpha - 2.0 * x).powi(2) / (2.0 * a * a) - 2.0 * (x - beta).powi(2) / ab
        + eta * ab)
}

/// [`strong_f0`] at `α = 0`.
pub fn strong_f1(beta: f64, eta: f64, x: f64) -> Result<f64> {
    strong_guard(0.0, beta)?;
    Ok(0.5 + 2.0 * x - 1.5 * x * x - 2.0 * (x - beta).powi(2) / (2.0 - beta) + eta * (2.0 - beta))
}

/// Maximiser of [`strong_f1`] in `x`: `(4 + 2β)/(10 - 3β)`.
pub fn strong_x_star(beta: f64) -> f64 {
    (4.0 + 2.0 * beta) / (10.0 - 3.0 * beta)
}

/// [`strong_f1`] at its maximiser.
pub fn strong_f2(beta: f64, eta: f64) -> Result<f64> {
    check_finite("beta", beta)?;
    check_finite("eta", eta)?;
    if 3.0 * beta >= 10.0 {
        return Err(Error::InvalidParameter(format!("beta = {beta} must be below 10/3")));
    }
    Ok((2.0 - eta) * beta + 31.0 / 6.0 - 128.0 / (3.0 * (10.0 - 3.0 * beta)) + 2.0 * eta)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StrongEdgeConstants {
    pub eta: f64,
    /// `f₂(η, η)`.
    pub f2: f64,
    pub f2_bound: f64,
    pub f2_below_bound: bool,
    /// `1 - f₂(η, η)/2`, the sparsity this yields for `L²(H)` against `2Δ²`.
    pub delta_from_f2: f64,
    pub delta_used: f64,
    pub eps_used: f64,
    pub condition: ConditionReport,
    /// `(1 - ε)·2` as an exact fraction and as a decimal.
    pub coefficient_exact: String,
    pub coefficient: f64,
}

/// The constants behind the `1.835Δ²` strong edge colouring bound.
pub fn strong_edge_constants() -> Result<StrongEdgeConstants> {
    let (eta, delta_used, eps_used) = (0.164, 0.345, 0.0825);
    let f2 = strong_f2(eta, eta)?;
    let eps_exact = parse_decimal_ratio("0.0825")?;
    let coeff = (Ratio::from_integer(1) - eps_exact) * 2;
    Ok(StrongEdgeConstants {
        eta,
        f2,
        f2_bound: 1.309,
        f2_below_bound: f2 < 1.309,
        delta_from_f2: 1.0 - f2 / 2.0,
        delta_used,
        eps_used,
        condition: condition_check(eps_used, delta_used)?,
        coefficient_exact: coeff.to_string(),
        coefficient: *coeff.numer() as f64 / *coeff.denom() as f64,
    })
}
