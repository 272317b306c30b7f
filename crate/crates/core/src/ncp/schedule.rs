use serde::{Deserialize, Serialize};

use crate::bounds::{condition_check, g_func, gamma_map};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScheduleRow {
    pub i: usize,
    pub eps: f64,
    pub gamma: f64,
    pub delta: f64,
    pub k: f64,
    pub mu: f64,
    pub r: f64,
    /// `g(ε_i, δ_i)`, which `gamma` must stay below.
    pub g: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Schedule {
    pub eps: f64,
    pub eps_prime: f64,
    pub delta: f64,
    pub delta_prime: f64,
    pub beta: f64,
    pub t: usize,
    pub rows: Vec<ScheduleRow>,
}

impl Schedule {
    pub fn final_row(&self) -> &ScheduleRow {
        self.rows.last().expect("a schedule has at least one row")
    }
}

/// Inputs to [`build_schedule`]; unset fields take their defaults.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScheduleInput {
    pub eps: f64,
    pub delta: f64,
    /// Defaults to `eps`.
    pub eps_prime: Option<f64>,
    /// Defaults to `0.95 δ`.
    pub delta_prime: Option<f64>,
    /// Defaults to half the gap `g(ε', δ') - ε' e^{-1/(2(1-ε'))}`.
    pub beta: Option<f64>,
    pub r0: f64,
}

impl ScheduleInput {
    pub fn new(eps: f64, delta: f64, r0: f64) -> Self {
        ScheduleInput {
            eps,
            delta,
            eps_prime: None,
            delta_prime: None,
            beta: None,
            r0,
        }
    }
}

pub const DEFAULT_DELTA_PRIME_FACTOR: f64 = 0.95;
pub const DEFAULT_BETA_FRACTION: f64 = 0.5;

fn infeasible(msg: String) -> Error {
    Error::InfeasibleSchedule(msg)
}

pub fn build_schedule(input: ScheduleInput) -> Result<Schedule> {
    let ScheduleInput { eps, delta, r0, .. } = input;
    let cond = condition_check(eps, delta)?;
    if !cond.holds {
        return Err(infeasible(format!(
            "the condition fails at eps = {eps}, delta = {delta} (margin {:e})",
            cond.margin
        )));
    }
    let eps_prime = input.eps_prime.unwrap_or(eps);
    if !(eps_prime > 0.0 && eps_prime <= eps) {
        return Err(Error::InvalidParameter(format!("eps' = {eps_prime} must lie in (0, eps]")));
    }
    let delta_prime = input.delta_prime.unwrap_or(DEFAULT_DELTA_PRIME_FACTOR * delta);
    if !(delta_prime > 0.0 && delta_prime < delta) {
        return Err(Error::InvalidParameter(format!("delta' = {delta_prime} must lie in (0, delta)")));
    }
    if !(r0.is_finite() && r0 >= 1.0) {
        return Err(Error::InvalidParameter(format!("r0 = {r0} must be at least 1")));
    }
    let g0 = g_func(eps_prime, delta_prime)?;
    let beta = input
        .beta
        .unwrap_or(DEFAULT_BETA_FRACTION * (g0 - gamma_map(eps_prime)));
    if !(beta > 0.0 && beta.is_finite()) {
        return Err(infeasible(format!("beta = {beta} must be positive")));
    }
    if gamma_map(eps_prime) + beta >= g0 {
        return Err(infeasible(format!(
            "i = 0: gamma_0 = {} is not below g(eps', delta') = {g0}",
            gamma_map(eps_prime) + beta
        )));
    }
    let t = (2.0 * eps / beta - 1e-9).ceil() as usize + 1;
    let mut rows = Vec::with_capacity(t + 1);
    let mut r = r0;
    for i in 0..=t {
        let eps_i = eps_prime - i as f64 * beta / 2.0;
        let gamma = gamma_map(eps_i) + beta;
        let delta_i = delta - (i as f64 / t as f64) * (delta - delta_prime);
        let g = g_func(eps_i, delta_i)?;
        if gamma >= g {
            return Err(infeasible(format!("i = {i}: gamma = {gamma} is not below g = {g}")));
        }
        let k = (1.0 - eps_i) * r;
        let mu = 1.0 - (1.0 - 1.0 / (2.0 * k)).powf(r);
        rows.push(ScheduleRow {
            i,
            eps: eps_i,
            gamma,
            delta: delta_i,
            k,
            mu,
            r,
            g,
        });
        r *= mu + beta / 2.0;
    }
    let eps_t = rows[t].eps;
    if eps_t >= 0.0 {
        return Err(infeasible(format!("i = {t}: eps_T = {eps_t} is not negative")));
    }
    Ok(Schedule {
        eps,
        eps_prime,
        delta,
        delta_prime,
        beta,
        t,
        rows,
    })
}
