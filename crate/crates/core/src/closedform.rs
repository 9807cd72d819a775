//! Exact algebraic-connectivity curves for the paths on three and four vertices.
//!
//! Both curves are parameterized by `r`, the effective resistance of the first
//! edge, on the budget surface of the unweighted path:
//!
//! * P3 with `r_1 + r_2 = 2` (total resistance 4), `r ∈ (0, 2)`;
//! * P4 with mirror weights `{d, c, d}`, `3/d + 2/c = 5` (total resistance 10),
//!   `d = 1/r`, `c = 2/(5 - 3r)`, `r ∈ (0, 5/3)`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

pub const P3_DOMAIN: (f64, f64) = (0.0, 2.0);
pub const P4_DOMAIN: (f64, f64) = (0.0, 5.0 / 3.0);

/// Total resistance of the unweighted P3 and P4.
pub const P3_BUDGET: f64 = 4.0;
pub const P4_BUDGET: f64 = 10.0;

fn check_open(what: &'static str, r: f64, (lo, hi): (f64, f64)) -> Result<()> {
    if r.is_finite() && r > lo && r < hi {
        Ok(())
    } else {
        Err(Error::OutOfDomain {
            what,
            value: r,
            lo,
            hi,
        })
    }
}

/// `3r² - 6r + 4`, never below 1.
fn p3_discriminant(r: f64) -> f64 {
    3.0 * r * r - 6.0 * r + 4.0
}

/// `λ₂[r] = 3 / (2 + √(3r² - 6r + 4))`.
pub fn p3_lambda2(r: f64) -> Result<f64> {
    check_open("p3_lambda2", r, P3_DOMAIN)?;
    Ok(3.0 / (2.0 + p3_discriminant(r).sqrt()))
}

/// `λ₃[r] = 3 / (2 - √(3r² - 6r + 4))`.
pub fn p3_lambda3(r: f64) -> Result<f64> {
    check_open("p3_lambda3", r, P3_DOMAIN)?;
    Ok(3.0 / (2.0 - p3_discriminant(r).sqrt()))
}

/// Edge weights `{1/r, 1/(2-r)}`.
pub fn p3_weights(r: f64) -> Result<[f64; 2]> {
    check_open("p3_weights", r, P3_DOMAIN)?;
    Ok([1.0 / r, 1.0 / (2.0 - r)])
}

fn p4_discriminant(r: f64) -> f64 {
    13.0 * r * r - 30.0 * r + 25.0
}

/// `λ₂[r] = (5 - r - √(13r² - 30r + 25)) / (r(5 - 3r))` for the mirror-weighted P4.
///
/// Evaluated in the rationalized form `4 / (5 - r + √(13r² - 30r + 25))`,
/// which avoids the cancellation in the numerator.
pub fn p4_lambda2_symmetric(r: f64) -> Result<f64> {
    check_open("p4_lambda2_symmetric", r, P4_DOMAIN)?;
    Ok(4.0 / (5.0 - r + p4_discriminant(r).sqrt()))
}

/// Edge weights `{1/r, 2/(5-3r), 1/r}`.
pub fn p4_weights(r: f64) -> Result<[f64; 3]> {
    check_open("p4_weights", r, P4_DOMAIN)?;
    let d = 1.0 / r;
    Ok([d, 2.0 / (5.0 - 3.0 * r), d])
}

/// Compares `λ₂[a]` with `λ₂[b]` on the P4 curve without subtracting nearly
/// equal function values, so the ordering stays exact near the flat maximum.
pub fn p4_compare(a: f64, b: f64) -> Result<Ordering> {
    check_open("p4_compare", a, P4_DOMAIN)?;
    check_open("p4_compare", b, P4_DOMAIN)?;
    // D(r) = 5 - r + √h(r), λ₂ = 4/D;
    // D(a) - D(b) = (a - b)·[(13(a + b) - 30)/(√h(a) + √h(b)) - 1]
    let bracket =
        (13.0 * (a + b) - 30.0) / (p4_discriminant(a).sqrt() + p4_discriminant(b).sqrt()) - 1.0;
    let d_diff_sign = (a - b).signum() * bracket.signum();
    Ok(if a == b || bracket == 0.0 {
        Ordering::Equal
    } else if d_diff_sign < 0.0 {
        Ordering::Greater
    } else {
        Ordering::Less
    })
}

/// `r₀ = (5/13)(3 + 1/√3)`.
pub fn p4_r0() -> f64 {
    5.0 / 13.0 * (3.0 + 1.0 / 3f64.sqrt())
}

/// `2 - 4√3/5`.
pub fn p4_optimal_lambda2() -> f64 {
    2.0 - 4.0 * 3f64.sqrt() / 5.0
}

/// Optimum of the P4 problem on the unweighted budget.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct P4Optimum {
    pub r0: f64,
    pub lambda2: f64,
    pub weights: [f64; 3],
}

/// The P4 optimum, with weights taken from the budget relation at `r₀`.
pub fn p4_optimum() -> P4Optimum {
    let r0 = p4_r0();
    P4Optimum {
        r0,
        lambda2: p4_optimal_lambda2(),
        weights: p4_weights(r0).expect("r0 lies inside the domain"),
    }
}

/// Replaces the outer weights of a P4 by their harmonic mean `2c₁c₃/(c₁+c₃)`.
pub fn symmetrize_harmonic(c1: f64, c2: f64, c3: f64) -> Result<[f64; 3]> {
    for c in [c1, c2, c3] {
        if !(c.is_finite() && c > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "weight {c} is not positive"
            )));
        }
    }
    let d = 2.0 * c1 * c3 / (c1 + c3);
    Ok([d, c2, d])
}

/// Golden-section search for the maximizer of a unimodal function on
/// `[lo, hi]`, driven by a comparison `cmp(a, b)` of the values at `a` and `b`.
pub fn golden_section_max_by<F>(mut lo: f64, mut hi: f64, tol: f64, mut cmp: F) -> f64
where
    F: FnMut(f64, f64) -> Ordering,
{
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = hi - inv_phi * (hi - lo);
    let mut d = lo + inv_phi * (hi - lo);
    while hi - lo > tol {
        if cmp(c, d) == Ordering::Less {
            lo = c;
            c = d;
            d = lo + inv_phi * (hi - lo);
        } else {
            hi = d;
            d = c;
            c = hi - inv_phi * (hi - lo);
        }
        if c >= d {
            break;
        }
    }
    0.5 * (lo + hi)
}

/// Golden-section maximizer comparing plain function values.
pub fn golden_section_max<F>(lo: f64, hi: f64, tol: f64, mut f: F) -> f64
where
    F: FnMut(f64) -> f64,
{
    golden_section_max_by(lo, hi, tol, |a, b| f(a).total_cmp(&f(b)))
}

/// Refines the P4 maximizer on `[lo, hi] ⊂ (0, 5/3)`.
pub fn p4_argmax(lo: f64, hi: f64, tol: f64) -> Result<f64> {
    check_open("p4_argmax", lo, P4_DOMAIN)?;
    check_open("p4_argmax", hi, P4_DOMAIN)?;
    Ok(golden_section_max_by(lo, hi, tol, |a, b| {
        p4_compare(a, b).expect("search stays inside the bracket")
    }))
}

/// One closed-form sample of a curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurveSample {
    pub r: f64,
    pub lambda2: f64,
    /// Only known in closed form for P3.
    pub lambda3: Option<f64>,
}

/// The two closed-form curve families.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    P3,
    P4Symmetric,
}

impl Family {
    pub fn domain(self) -> (f64, f64) {
        match self {
            Family::P3 => P3_DOMAIN,
            Family::P4Symmetric => P4_DOMAIN,
        }
    }

    pub fn vertex_count(self) -> usize {
        match self {
            Family::P3 => 3,
            Family::P4Symmetric => 4,
        }
    }

    pub fn weights(self, r: f64) -> Result<Vec<f64>> {
        Ok(match self {
            Family::P3 => p3_weights(r)?.to_vec(),
            Family::P4Symmetric => p4_weights(r)?.to_vec(),
        })
    }

    pub fn sample(self, r: f64) -> Result<CurveSample> {
        Ok(match self {
            Family::P3 => CurveSample {
                r,
                lambda2: p3_lambda2(r)?,
                lambda3: Some(p3_lambda3(r)?),
            },
            Family::P4Symmetric => CurveSample {
                r,
                lambda2: p4_lambda2_symmetric(r)?,
                lambda3: None,
            },
        })
    }

    /// `steps` points strictly inside the domain: `lo + (hi - lo)·k/(steps + 1)`.
    pub fn grid(self, steps: usize) -> Vec<f64> {
        let (lo, hi) = self.domain();
        (1..=steps)
            .map(|k| lo + (hi - lo) * k as f64 / (steps + 1) as f64)
            .collect()
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "p3" => Ok(Family::P3),
            "p4-symmetric" => Ok(Family::P4Symmetric),
            other => Err(Error::InvalidArgument(format!(
                "unknown family `{other}` (expected p3 or p4-symmetric)"
            ))),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::P3 => "p3",
            Family::P4Symmetric => "p4-symmetric",
        })
    }
}
