//! Equal-area root finding: bisection on `white - black` along one tied
//! group of parameters, with exact engine evaluations at every probe.

use crate::families::{FamilyError, FamilySpec, ParamPoint};
use crate::rational::{snap_f64, to_f64, Rational};
use num_traits::{Signed, Zero};

const GAP_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone)]
pub struct EqualAreaRoot {
    pub value: f64,
    pub exact: Rational,
    pub gap: f64,
    pub iterations: u32,
}

/// Sign of `white - black` at `t` assigned to every free parameter.
fn gap_at(
    family: &FamilySpec,
    free: &[usize],
    fixed: &[Rational],
    t: &Rational,
) -> Result<Rational, FamilyError> {
    let mut values = fixed.to_vec();
    for &i in free {
        values[i] = t.clone();
    }
    let p = ParamPoint::new(family, values)?;
    let (white, black) = family.engine_areas(&p)?;
    Ok(white - black)
}

/// Bisects `white(t) = black(t)` over `bracket`, where `t` is assigned to
/// every parameter named in `free_params` (tied groups like the hexagon's
/// `a = b = c = d` move together) and `fixed` supplies the rest.
///
/// The engine is the ground truth: each probe is an exact rational point
/// and the sign of the gap is exact, so bisection cannot be fooled by
/// float noise. Errors when the bracket does not change sign.
pub fn equal_area_root(
    family: &FamilySpec,
    free_params: &[&str],
    fixed: &[(String, Rational)],
    bracket: (f64, f64),
) -> Result<EqualAreaRoot, FamilyError> {
    let free: Vec<usize> = free_params
        .iter()
        .map(|name| {
            family.param_index(name).ok_or_else(|| FamilyError::ParameterMismatch {
                expected: family.parameters.iter().map(|s| s.to_string()).collect(),
            })
        })
        .collect::<Result<_, _>>()?;
    let mut fixed_values = vec![Rational::zero(); family.parameters.len()];
    for (name, value) in fixed {
        let idx = family.param_index(name).ok_or_else(|| FamilyError::ParameterMismatch {
            expected: family.parameters.iter().map(|s| s.to_string()).collect(),
        })?;
        fixed_values[idx] = value.clone();
    }

    let mut lo = snap_f64(bracket.0, 1e-12);
    let mut hi = snap_f64(bracket.1, 1e-12);
    if lo > hi {
        std::mem::swap(&mut lo, &mut hi);
    }
    let mut g_lo = gap_at(family, &free, &fixed_values, &lo)?;
    let g_hi = gap_at(family, &free, &fixed_values, &hi)?;
    if g_lo.is_zero() {
        return Ok(EqualAreaRoot { value: to_f64(&lo), exact: lo, gap: 0.0, iterations: 0 });
    }
    if g_hi.is_zero() {
        return Ok(EqualAreaRoot { value: to_f64(&hi), exact: hi, gap: 0.0, iterations: 0 });
    }
    if g_lo.is_positive() == g_hi.is_positive() {
        return Err(FamilyError::DomainViolation(format!(
            "white - black does not change sign on [{}, {}]",
            to_f64(&lo),
            to_f64(&hi)
        )));
    }

    let two = Rational::from_integer(2.into());
    let mut iterations = 0u32;
    loop {
        iterations += 1;
        let mid = (&lo + &hi) / &two;
        let g_mid = gap_at(family, &free, &fixed_values, &mid)?;
        let gap = to_f64(&g_mid.abs());
        if gap <= GAP_TOLERANCE || iterations >= 80 {
            return Ok(EqualAreaRoot { value: to_f64(&mid), exact: mid, gap, iterations });
        }
        if g_mid.is_positive() == g_lo.is_positive() {
            lo = mid;
            g_lo = g_mid;
        } else {
            hi = mid;
        }
    }
}
