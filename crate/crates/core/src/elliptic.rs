//! Generalized complete elliptic integrals
//! K_a(r) = (π/2)·F(a, 1-a; 1; r²) and E_a(r) = (π/2)·F(a-1, 1-a; 1; r²),
//! their complements (evaluation at r' = √(1-r²)) and r-derivatives.
//!
//! K_a diverges logarithmically at r = 1. The raw series degrades there, so
//! for r² above [`X_SWITCH`] the zero-balanced logarithmic expansion around
//! x = 1 is used instead:
//!
//!   K_a(r) = (sin(πa)/2) Σ cₙ (dₙ - ln r'²) r'²ⁿ,
//!   c₀ = 1, cₙ₊₁ = cₙ (a+n)(1-a+n)/(n+1)²,
//!   d₀ = R(a), dₙ₊₁ = dₙ + 2/(n+1) - 1/(a+n) - 1/(1-a+n).
//!
//! E_a near r = 1 comes from the generalized Legendre relation
//! E_a K_a' + E_a' K_a - K_a K_a' = π sin(πa)/(4(1-a)), which needs only
//! complement-side values where the raw series is fast.

use crate::error::{Error, Result};
use crate::special::{hyp2f1_capped, ramanujan_r, EvalResult, HypergeomParams, SignatureParam};

use std::f64::consts::{FRAC_PI_2, PI};

/// Raw-series cutoff on x = r²; beyond it the logarithmic expansion is used.
pub const X_SWITCH: f64 = 0.95;

const SERIES_TOL: f64 = 1e-15;
const SERIES_MAX_TERMS: usize = 5_000;

/// A modulus r ∈ [0, 1] carried together with its complement r' = √(1-r²).
///
/// The complement is always formed as √((1-r)(1+r)), never √(1-r²), so a
/// modulus near 1 keeps its distance from 1 to full relative precision.
/// Evaluating a function "at the complement" swaps the pair instead of
/// recomputing it, which is what keeps μ_a and φ_K accurate near the ends
/// of (0, 1).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Modulus {
    r: f64,
    r_comp: f64,
}

impl Modulus {
    /// Builds the pair from r ∈ [0, 1].
    pub fn new(r: f64) -> Result<Self> {
        if !(r.is_finite() && (0.0..=1.0).contains(&r)) {
            return Err(Error::domain(format!("modulus requires 0 <= r <= 1, got {r}")));
        }
        Ok(Modulus {
            r,
            r_comp: ((1.0 - r) * (1.0 + r)).sqrt(),
        })
    }

    /// Builds the pair from the complement r' ∈ [0, 1]; exact when r' is tiny.
    pub fn from_complement(r_comp: f64) -> Result<Self> {
        let m = Modulus::new(r_comp)?;
        Ok(m.complement())
    }

    pub fn zero() -> Self {
        Modulus { r: 0.0, r_comp: 1.0 }
    }

    pub fn one() -> Self {
        Modulus { r: 1.0, r_comp: 0.0 }
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn r_comp(&self) -> f64 {
        self.r_comp
    }

    /// The swapped pair (evaluation point r').
    pub fn complement(&self) -> Self {
        Modulus {
            r: self.r_comp,
            r_comp: self.r,
        }
    }

    /// ln r, computed through the complement when r is close to 1 so that
    /// values like 1 - 1e-40 (storable only via the pair) stay meaningful.
    pub fn ln_r(&self) -> f64 {
        if self.r > 0.7 {
            0.5 * (-self.r_comp * self.r_comp).ln_1p()
        } else {
            self.r.ln()
        }
    }

    pub fn is_interior(&self) -> bool {
        self.r > 0.0 && self.r < 1.0
    }
}

/// K_a(r) and E_a(r) evaluated together.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EllipticPair {
    pub k_val: f64,
    pub e_val: f64,
}

/// Generalized complete elliptic integral of the first kind,
/// K_a(r) = (π/2)·F(a, 1-a; 1; r²).
///
/// K_a(0) = π/2; r = 1 is a pole. Relative error is below 1e-11 for
/// r² ≤ 0.95 and below 1e-8 beyond it.
pub fn ellint_k(a: SignatureParam, m: Modulus) -> Result<EvalResult> {
    if m.r >= 1.0 {
        return Err(Error::pole("K_a(1) = infinity".to_string()));
    }
    let x = m.r * m.r;
    if x <= X_SWITCH {
        let p = HypergeomParams::new(a.get(), 1.0 - a.get(), 1.0, x)?;
        let series = hyp2f1_capped(&p, SERIES_TOL, SERIES_MAX_TERMS)?;
        Ok(EvalResult {
            value: FRAC_PI_2 * series.value,
            abs_err_estimate: FRAC_PI_2 * series.abs_err_estimate,
            terms_used: series.terms_used,
            converged: series.converged,
        })
    } else {
        Ok(ellint_k_log_branch(a, m))
    }
}

/// Zero-balanced expansion of K_a around r = 1, in powers of w = r'².
fn ellint_k_log_branch(a: SignatureParam, m: Modulus) -> EvalResult {
    let av = a.get();
    let w = m.r_comp * m.r_comp;
    // -ln(r'²) built from ln(r_comp) so subnormal complements do not
    // underflow inside the logarithm.
    let neg_ln_w = -2.0 * m.r_comp.ln();
    let mut c = 1.0;
    let mut d = ramanujan_r(a);
    let mut term = c * (d + neg_ln_w);
    let mut sum = term;
    let mut n = 0usize;
    loop {
        let nf = n as f64;
        c *= (av + nf) * (1.0 - av + nf) / ((nf + 1.0) * (nf + 1.0));
        d += 2.0 / (nf + 1.0) - 1.0 / (av + nf) - 1.0 / (1.0 - av + nf);
        term = c * (d + neg_ln_w) * w.powi(n as i32 + 1);
        sum += term;
        n += 1;
        if term.abs() <= SERIES_TOL * sum.abs() || n >= 64 {
            break;
        }
    }
    let value = 0.5 * a.sin_pi_a() * sum;
    EvalResult {
        value,
        abs_err_estimate: term.abs() + 1e-15 * value.abs(),
        terms_used: n + 1,
        converged: true,
    }
}

/// Generalized complete elliptic integral of the second kind,
/// E_a(r) = (π/2)·F(a-1, 1-a; 1; r²).
///
/// Defined on all of [0, 1]; E_a(1) = sin(πa)/(2(1-a)) is returned in closed
/// form. Relative error is below 1e-10 on the whole interval.
pub fn ellint_e(a: SignatureParam, m: Modulus) -> Result<EvalResult> {
    let av = a.get();
    if m.r >= 1.0 {
        return Ok(EvalResult::exact(a.sin_pi_a() / (2.0 * (1.0 - av))));
    }
    let x = m.r * m.r;
    if x <= X_SWITCH {
        let p = HypergeomParams::new(av - 1.0, 1.0 - av, 1.0, x)?;
        let series = hyp2f1_capped(&p, SERIES_TOL, SERIES_MAX_TERMS)?;
        Ok(EvalResult {
            value: FRAC_PI_2 * series.value,
            abs_err_estimate: FRAC_PI_2 * series.abs_err_estimate,
            terms_used: series.terms_used,
            converged: series.converged,
        })
    } else {
        // E_a(r) = [C + K_a(r)·(K_a(r') - E_a(r'))] / K_a(r'),
        // C = π sin(πa)/(4(1-a)); every complement-side value is cheap here.
        let comp = m.complement();
        let k_comp = ellint_k(a, comp)?;
        let kme_comp = ellint_k_minus_e(a, comp)?;
        let k_here = ellint_k_log_branch(a, m);
        let c = PI * a.sin_pi_a() / (4.0 * (1.0 - av));
        let value = (c + k_here.value * kme_comp) / k_comp.value;
        Ok(EvalResult {
            value,
            abs_err_estimate: 8.0 * f64::EPSILON * value.abs() + k_here.abs_err_estimate / k_comp.value,
            terms_used: k_here.terms_used + k_comp.terms_used,
            converged: true,
        })
    }
}

/// Both integrals at once.
pub fn ellint_pair(a: SignatureParam, m: Modulus) -> Result<EllipticPair> {
    Ok(EllipticPair {
        k_val: ellint_k(a, m)?.value,
        e_val: ellint_e(a, m)?.value,
    })
}

/// The difference K_a(r) - E_a(r), computed from the all-positive series
///
///   K_a - E_a = (π/2) Σ_{n≥1} n (1-a)ₙ (a)ₙ₋₁ / (n!)² · r²ⁿ
///
/// so that small-r callers (derivative formulas, the f₃/f₁₀ combinations)
/// never subtract two values that both start at π/2.
pub fn ellint_k_minus_e(a: SignatureParam, m: Modulus) -> Result<f64> {
    if m.r >= 1.0 {
        return Err(Error::pole("K_a(1) = infinity".to_string()));
    }
    let av = a.get();
    let x = m.r * m.r;
    if x > X_SWITCH {
        // No cancellation here: K_a dominates E_a near r = 1.
        return Ok(ellint_k(a, m)?.value - ellint_e(a, m)?.value);
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    let mut term = (1.0 - av) * x;
    let mut sum = term;
    let mut n = 1usize;
    while n < SERIES_MAX_TERMS {
        let nf = n as f64;
        term *= (1.0 - av + nf) * (av + nf - 1.0) * x / (nf * (nf + 1.0));
        sum += term;
        n += 1;
        if term.abs() <= SERIES_TOL * sum.abs() {
            break;
        }
    }
    Ok(FRAC_PI_2 * sum)
}

/// dK_a/dr = 2(1-a)(E_a - r'²K_a)/(r r'²) for 0 < r < 1.
pub fn dk_dr(a: SignatureParam, m: Modulus) -> Result<f64> {
    if !m.is_interior() {
        return Err(Error::domain(format!(
            "dK/dr is singular at r = 0 and r = 1, got r = {}",
            m.r
        )));
    }
    let k = ellint_k(a, m)?.value;
    let kme = ellint_k_minus_e(a, m)?;
    // E - r'²K = r²K - (K - E), kept cancellation-free at small r.
    let num = m.r * m.r * k - kme;
    Ok(2.0 * (1.0 - a.get()) * num / (m.r * m.r_comp * m.r_comp))
}

/// dE_a/dr = 2(a-1)(K_a - E_a)/r for 0 < r < 1.
pub fn de_dr(a: SignatureParam, m: Modulus) -> Result<f64> {
    if !m.is_interior() {
        return Err(Error::domain(format!(
            "dE/dr is singular at r = 0 and undefined at r = 1, got r = {}",
            m.r
        )));
    }
    let kme = ellint_k_minus_e(a, m)?;
    Ok(-2.0 * (1.0 - a.get()) * kme / m.r)
}
