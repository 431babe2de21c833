//! Coherence and magic analytics for the reduced heat-bath qubit: the
//! stabilizer-octahedron test, the weak-coupling expansions of the bound
//! Bloch-sum functionals, closed-form critical heat-bath temperatures, and
//! allowed coupling windows, plus the exact bisected phase boundary.
//!
//! All closed forms in this module are derived at ω = 1 and are rejected for
//! other splittings; the exact solver behind [`magic_boundary_exact`] has no
//! such restriction.
//!
//! A qubit state has magic exactly when its Bloch vector leaves the
//! octahedron |r_x| + |r_y| + |r_z| ≤ 1. Under this crate's sign
//! conventions the machine's steady state polarizes along (−x, ∓y), so the
//! three octahedron faces it can cross — the ones with closed-form
//! expansions — are
//!
//! * condition 1: −r_x − r_y + r_z,
//! * condition 2: −r_x + r_y + r_z,
//! * condition 3: +r_x − r_y + r_z.
//!
//! [`bloch_sums_exact`] evaluates these on a Bloch vector and
//! [`bloch_sums_perturbative`] evaluates their order-g² expansions; the two
//! agree to O(g³) on the exact steady state.

use serde::Serialize;

use crate::dynamics;
use crate::model::ModelParams;
use crate::state::BlochVector;
use crate::tol;
use crate::{Error, Result};

/// Spin-bath temperature limit in which the closed-form coefficients are
/// specialized.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Regime {
    /// T2 → 0: the spin bath fully polarizes its qubit.
    LowT2,
    /// T2 large: tanh(1/(2T2)) ≈ 1/(2T2), cosh(1/T2) ≈ 1.
    HighT2,
}

impl std::fmt::Display for Regime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Regime::LowT2 => write!(f, "low_T2"),
            Regime::HighT2 => write!(f, "high_T2"),
        }
    }
}

/// Truncation order of the weak-coupling expansion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Order {
    /// Keep the g-linear term only.
    First,
    /// Keep the shared g² term as well.
    Second,
}

/// Octahedron-exterior report for one Bloch vector.
#[derive(Debug, Clone, Serialize)]
pub struct MagicReport {
    /// All eight signed combinations ±r_x ± r_y ± r_z, in sign order
    /// (+++), (++−), (+−+), (+−−), (−++), (−+−), (−−+), (−−−).
    pub sums: [f64; 8],
    /// Largest of the eight; equals |r_x| + |r_y| + |r_z|.
    pub max_sum: f64,
    /// max_sum > 1 + tolerance.
    pub has_magic: bool,
    pub tolerance: f64,
}

/// The per-condition linear and shared quadratic expansion coefficients in
/// one regime, for reset rates p1 = p, p2 = μp.
///
/// At μ = 1 the stored values are exactly the symmetric-rate coefficients:
/// `c1 = [f1, g1, h1]`, `c2 = f2` in the low-T2 regime and
/// `c1 = [F1, G1, H1]`, `c2 = F2` in the high-T2 regime, where the bound
/// sums expand as tanh(1/(2T1))·[1 + 4·c1·g − c2·g²] (low T2) and
/// tanh(1/(2T1))·[1 + 2·c1·g − c2·g²] (high T2).
#[derive(Debug, Clone, Copy, Serialize)]
pub struct PerturbativeCoefficients {
    pub regime: Regime,
    /// Rate asymmetry p2/p1.
    pub mu: f64,
    /// Per-condition linear coefficients (f1, g1, h1 or F1, G1, H1 style).
    pub c1: [f64; 3],
    /// Shared quadratic coefficient (f2 or F2 style); strictly positive.
    pub c2: f64,
}

/// Closed-form critical heat-bath temperatures per condition and their max.
/// Labeled a perturbative estimate everywhere: the exact bisected boundary
/// from [`magic_boundary_exact`] is the ground truth these approximate.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct CritTempReport {
    pub regime: Regime,
    pub mu: f64,
    pub t_crit_1: f64,
    pub t_crit_2: f64,
    pub t_crit_3: f64,
    /// max of the three: above this no coupling strength creates magic.
    pub t_crit: f64,
}

/// One allowed interval of coupling strength, already clipped to g ≥ 0.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GInterval {
    pub lo: f64,
    pub hi: f64,
}

impl GInterval {
    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, g: f64) -> bool {
        self.lo <= g && g <= self.hi
    }
}

/// Allowed-g windows per condition and their union.
#[derive(Debug, Clone, Serialize)]
pub struct GWindow {
    pub conditions: [Option<GInterval>; 3],
    /// Disjoint, ascending union of the nonempty per-condition intervals.
    pub union: Vec<GInterval>,
}

impl GWindow {
    pub fn is_empty(&self) -> bool {
        self.union.is_empty()
    }

    pub fn union_width(&self) -> f64 {
        // fold from +0.0: the std f64 Sum identity is -0.0
        self.union.iter().fold(0.0, |acc, iv| acc + iv.width())
    }
}

/// Evaluate the octahedron-exterior test on a Bloch vector.
pub fn magic_report(r: &BlochVector, tolerance: f64) -> MagicReport {
    let mut sums = [0.0; 8];
    let mut idx = 0;
    for sx in [1.0, -1.0] {
        for sy in [1.0, -1.0] {
            for sz in [1.0, -1.0] {
                sums[idx] = sx * r.x + sy * r.y + sz * r.z;
                idx += 1;
            }
        }
    }
    let max_sum = sums.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    MagicReport {
        sums,
        max_sum,
        has_magic: max_sum > 1.0 + tolerance,
        tolerance,
    }
}

/// The three bound face functionals evaluated on a Bloch vector:
/// [−r_x−r_y+r_z, −r_x+r_y+r_z, r_x−r_y+r_z].
pub fn bloch_sums_exact(r: &BlochVector) -> [f64; 3] {
    [-r.x - r.y + r.z, -r.x + r.y + r.z, r.x - r.y + r.z]
}

/// λ = coth(1/(2T1)) − 1 = 2/(e^{1/T1} − 1); non-negative for T1 > 0 and
/// increasing with temperature.
pub fn lambda(t1: f64) -> f64 {
    2.0 / ((1.0 / t1).exp_m1())
}

fn require_unit_omega(params: &ModelParams) -> Result<()> {
    if (params.omega - 1.0).abs() > 1e-12 {
        return Err(Error::InvalidParams(format!(
            "closed-form perturbative results are derived at omega = 1, got omega = {}",
            params.omega
        )));
    }
    Ok(())
}

fn require_rate(p: f64) -> Result<()> {
    if !p.is_finite() || p < tol::MIN_RESET_RATE {
        return Err(Error::InvalidParams(format!(
            "reset rate p = {p} out of model range (requires p >= {})",
            tol::MIN_RESET_RATE
        )));
    }
    Ok(())
}

/// Leading-order l1-coherence of the reduced heat-bath qubit:
/// 4 g p2 / √((1+4p1²)(1+4p2²)) · |tanh(1/(2T1)) tanh(1/(2T2))|.
/// The remainder on the exact steady state is O(g³): the transverse Bloch
/// components are odd in g, so no g² term exists.
pub fn coherence_perturbative(params: &ModelParams) -> Result<f64> {
    params.validate()?;
    require_unit_omega(params)?;
    let den = ((1.0 + 4.0 * params.p1 * params.p1) * (1.0 + 4.0 * params.p2 * params.p2)).sqrt();
    let thermal = (0.5 / params.t1).tanh() * (0.5 / params.t2).tanh();
    Ok(4.0 * params.g * params.p2 / den * thermal.abs())
}

/// Order-g² expansions of the three bound sums at general T1, T2, p1, p2
/// (ω = 1). The g² term is shared by all three conditions.
pub fn bloch_sums_perturbative(params: &ModelParams, order: Order) -> Result<[f64; 3]> {
    params.validate()?;
    require_unit_omega(params)?;
    require_rate(params.p1)?;
    require_rate(params.p2)?;
    let (p1, p2) = (params.p1, params.p2);
    let t1h = (0.5 / params.t1).tanh();
    let t2h = (0.5 / params.t2).tanh();
    let den = (1.0 + 4.0 * p1 * p1) * (1.0 + 4.0 * p2 * p2);

    let linear_num = [
        p2 * (-1.0 + 2.0 * p2 + 2.0 * p1 + 4.0 * p1 * p2),
        p2 * (1.0 + 2.0 * p2 + 2.0 * p1 - 4.0 * p1 * p2),
        p2 * (-1.0 - 2.0 * p2 - 2.0 * p1 + 4.0 * p1 * p2),
    ];
    let quad = match order {
        Order::First => 0.0,
        Order::Second => {
            let bath = 4.0 * p2 * p2 * (4.0 * p1 * p2 - 1.0) / (1.0 + (1.0 / params.t2).cosh());
            let core =
                -1.0 - 2.0 * p2 * p2 - 4.0 * p1 * (p1 + 4.0 * p1 * p2 * p2 + 2.0 * p2.powi(3));
            2.0 * (core + bath) / (p1 * (p1 + p2) * den)
        }
    };

    let g = params.g;
    Ok([0, 1, 2].map(|i| t1h * (1.0 + 4.0 * g * linear_num[i] * t2h / den + quad * g * g)))
}

/// Regime-specialized expansion coefficients for p1 = p, p2 = μp.
pub fn asymmetric_coefficients(
    p: f64,
    mu: f64,
    regime: Regime,
    t2: Option<f64>,
) -> Result<PerturbativeCoefficients> {
    require_rate(p)?;
    if !mu.is_finite() || mu <= 0.0 {
        return Err(Error::InvalidParams(format!(
            "rate asymmetry mu must be positive, got {mu}"
        )));
    }
    require_rate(mu * p)?;
    let p2 = p * p;
    let den = (1.0 + 4.0 * p2) * (1.0 + 4.0 * mu * mu * p2);
    let n = [
        4.0 * mu * p2 + 2.0 * mu * p + 2.0 * p - 1.0,
        1.0 + 2.0 * mu * p + 2.0 * p - 4.0 * mu * p2,
        4.0 * mu * p2 - 2.0 * mu * p - 2.0 * p - 1.0,
    ];
    match regime {
        Regime::LowT2 => {
            let c1 = n.map(|ni| mu * p * ni / den);
            let q = 1.0
                + 2.0 * mu * mu * p2
                + 4.0 * p2
                + 16.0 * mu * mu * p2 * p2
                + 8.0 * mu.powi(3) * p2 * p2;
            let c2 = 2.0 * q / (p2 * (1.0 + mu) * den);
            Ok(PerturbativeCoefficients { regime, mu, c1, c2 })
        }
        Regime::HighT2 => {
            let t2 = t2.ok_or_else(|| {
                Error::InvalidParams("the high-T2 regime requires a spin-bath temperature".into())
            })?;
            if !t2.is_finite() || t2 <= 0.0 {
                return Err(Error::InvalidParams(format!(
                    "temperature t2 must be positive, got {t2}"
                )));
            }
            let c1 = n.map(|ni| mu * p * ni / (t2 * den));
            let c2 = 2.0 / (p2 * (1.0 + mu));
            Ok(PerturbativeCoefficients { regime, mu, c1, c2 })
        }
    }
}

/// Symmetric-rate (μ = 1) coefficients: f1, f2, g1, h1 in the low-T2 regime,
/// F1, F2, G1, H1 in the high-T2 regime.
pub fn perturbative_coefficients(
    p: f64,
    regime: Regime,
    t2: Option<f64>,
) -> Result<PerturbativeCoefficients> {
    asymmetric_coefficients(p, 1.0, regime, t2)
}

impl PerturbativeCoefficients {
    /// Full linear coefficients A_i of the bracket 1 + A_i·g − B·g²
    /// (the regime-dependent 4· or 2· prefactor folded in).
    pub fn full_linear(&self) -> [f64; 3] {
        let prefactor = match self.regime {
            Regime::LowT2 => 4.0,
            Regime::HighT2 => 2.0,
        };
        self.c1.map(|c| prefactor * c)
    }

    /// Full quadratic coefficient B of the bracket 1 + A_i·g − B·g².
    pub fn full_quadratic(&self) -> f64 {
        self.c2
    }

    /// Evaluate the three expanded sums tanh(1/(2T1))·[1 + A_i·g − B·g²].
    pub fn bloch_sums(&self, g: f64, t1: f64) -> [f64; 3] {
        let t1h = (0.5 / t1).tanh();
        let b = self.full_quadratic();
        self.full_linear().map(|a| t1h * (1.0 + a * g - b * g * g))
    }
}

/// The three displayed regime-limit expansions for asymmetric reset rates
/// p1 = p, p2 = μp, evaluated at coupling g and heat-bath temperature t1.
pub fn bloch_sums_asymmetric(
    p: f64,
    mu: f64,
    g: f64,
    t1: f64,
    regime: Regime,
    t2: Option<f64>,
) -> Result<[f64; 3]> {
    if !t1.is_finite() || t1 <= 0.0 {
        return Err(Error::InvalidParams(format!(
            "temperature t1 must be positive, got {t1}"
        )));
    }
    Ok(asymmetric_coefficients(p, mu, regime, t2)?.bloch_sums(g, t1))
}

fn crit_temp_from(a: f64, b: f64) -> f64 {
    // the condition B g² − A g + λ < 0 admits solutions iff λ < A²/(4B);
    // with λ(T) = 2/(e^{1/T} − 1) the threshold temperature is
    1.0 / (1.0 + 8.0 * b / (a * a)).ln()
}

/// Closed-form critical temperatures for p1 = p, p2 = μp.
///
/// Each condition's window closes exactly at its T_crit^i: the discriminant
/// of the magic condition vanishes there. In the low-T2 regime these reduce
/// to 1/ln(1 + f2/(2c²)) with c ∈ {f1, g1, h1}.
pub fn critical_temperature_asymmetric(
    p: f64,
    mu: f64,
    regime: Regime,
    t2: Option<f64>,
) -> Result<CritTempReport> {
    let coeffs = asymmetric_coefficients(p, mu, regime, t2)?;
    let a = coeffs.full_linear();
    let b = coeffs.full_quadratic();
    let t = [0, 1, 2].map(|i| crit_temp_from(a[i], b));
    Ok(CritTempReport {
        regime,
        mu,
        t_crit_1: t[0],
        t_crit_2: t[1],
        t_crit_3: t[2],
        t_crit: t.iter().copied().fold(f64::NEG_INFINITY, f64::max),
    })
}

/// Closed-form critical temperatures for symmetric rates (μ = 1).
pub fn critical_temperature(p: f64, regime: Regime, t2: Option<f64>) -> Result<CritTempReport> {
    critical_temperature_asymmetric(p, 1.0, regime, t2)
}

/// Allowed-g windows at heat-bath temperature `t1` from precomputed
/// coefficients. Condition i admits magic on the interval
/// center ± √(center² − λ/B) with center = A_i/(2B), when the discriminant
/// is positive; intervals are clipped to g ≥ 0 and merged into a union.
pub fn g_window_with(coeffs: &PerturbativeCoefficients, t1: f64) -> Result<GWindow> {
    if !t1.is_finite() || t1 <= 0.0 {
        return Err(Error::InvalidParams(format!(
            "temperature t1 must be positive, got {t1}"
        )));
    }
    let lam = lambda(t1);
    let b = coeffs.full_quadratic();
    let conditions = coeffs.full_linear().map(|a| {
        let center = a / (2.0 * b);
        let disc = center * center - lam / b;
        if disc <= 0.0 {
            return None;
        }
        let half = disc.sqrt();
        let lo = (center - half).max(0.0);
        let hi = center + half;
        if hi <= lo {
            None
        } else {
            Some(GInterval { lo, hi })
        }
    });

    let mut nonempty: Vec<GInterval> = conditions.iter().flatten().copied().collect();
    nonempty.sort_by(|a, b| a.lo.partial_cmp(&b.lo).unwrap());
    let mut union: Vec<GInterval> = Vec::new();
    for iv in nonempty {
        match union.last_mut() {
            Some(last) if iv.lo <= last.hi => last.hi = last.hi.max(iv.hi),
            _ => union.push(iv),
        }
    }
    Ok(GWindow { conditions, union })
}

/// Allowed-g windows for symmetric rates (μ = 1). An empty union is a valid
/// result: it happens exactly when t1 ≥ t_crit.
pub fn g_window(p: f64, t1: f64, regime: Regime, t2: Option<f64>) -> Result<GWindow> {
    g_window_with(&perturbative_coefficients(p, regime, t2)?, t1)
}

/// max_sum of the reduced heat-bath qubit of the exact steady state.
pub fn steady_max_sum(params: &ModelParams) -> Result<f64> {
    let ss = dynamics::steady_state(params)?;
    Ok(magic_report(&ss.bloch1, tol::MAGIC).max_sum)
}

/// Bisect the exact magic boundary in heat-bath temperature: the T1 at
/// which the steady state's max_sum crosses 1, holding every other
/// parameter of `params` fixed (its `t1` field is ignored). This is the
/// ground truth that the closed-form critical temperatures approximate.
pub fn magic_boundary_exact(params: &ModelParams, t1_range: (f64, f64)) -> Result<f64> {
    let (mut lo, mut hi) = t1_range;
    if !(lo > 0.0 && hi > lo) {
        return Err(Error::InvalidParams(format!(
            "invalid bracket [{lo}, {hi}]"
        )));
    }
    let f = |t1: f64| -> Result<f64> { Ok(steady_max_sum(&params.with_t1(t1))? - 1.0) };
    let mut f_lo = f(lo)?;
    let f_hi = f(hi)?;
    if f_lo * f_hi > 0.0 {
        return Err(Error::NoSignChange { lo, hi });
    }
    while hi - lo > tol::BISECTION_T1 {
        let mid = 0.5 * (lo + hi);
        let f_mid = f(mid)?;
        if f_lo * f_mid <= 0.0 {
            hi = mid;
        } else {
            lo = mid;
            f_lo = f_mid;
        }
    }
    Ok(0.5 * (lo + hi))
}
