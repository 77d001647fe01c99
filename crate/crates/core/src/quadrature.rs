//! Adaptive Gauss–Kronrod (7/15-point) quadrature on finite and infinite
//! intervals.

use crate::error::{Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
/// Gauss weights for the nodes `XGK[1], XGK[3], XGK[5], XGK[7]`.
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

const MAX_SEGMENTS: usize = 4000;

/// Integration tolerances; the loop stops once the summed error estimate is
/// below `max(abs, rel·|estimate|)`.
#[derive(Clone, Copy, Debug)]
pub struct Tolerance {
    pub abs: f64,
    pub rel: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            abs: 1e-10,
            rel: 1e-12,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Integral {
    pub value: f64,
    pub error: f64,
}

#[derive(Clone, Copy, Debug)]
struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

fn kronrod<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64) -> Segment {
    let centre = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(centre);
    let mut kron = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for (j, (&x, &w)) in XGK.iter().zip(WGK.iter()).take(7).enumerate() {
        let dx = half * x;
        let pair = f(centre - dx) + f(centre + dx);
        kron += w * pair;
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    Segment {
        a,
        b,
        value: kron * half,
        error: ((kron - gauss) * half).abs(),
    }
}

/// Integrates `f` over `[a, b]`. Either endpoint may be infinite; infinite
/// ranges are mapped onto finite ones by `x = a + t/(1−t)` style substitutions.
pub fn integrate<F: FnMut(f64) -> f64>(
    mut f: F,
    a: f64,
    b: f64,
    tol: Tolerance,
) -> Result<Integral> {
    if a.is_nan() || b.is_nan() {
        return Err(Error::Parameter(
            "integration limits must not be NaN".into(),
        ));
    }
    if a == b {
        return Ok(Integral {
            value: 0.0,
            error: 0.0,
        });
    }
    if a > b {
        let r = integrate(f, b, a, tol)?;
        return Ok(Integral {
            value: -r.value,
            error: r.error,
        });
    }
    match (a.is_finite(), b.is_finite()) {
        (true, true) => integrate_finite(&mut f, a, b, tol),
        (true, false) => integrate_finite(
            &mut |t: f64| {
                let u = 1.0 - t;
                guard(f(a + t / u) / (u * u))
            },
            0.0,
            1.0,
            tol,
        ),
        (false, true) => integrate_finite(
            &mut |t: f64| {
                let u = 1.0 - t;
                guard(f(b - t / u) / (u * u))
            },
            0.0,
            1.0,
            tol,
        ),
        (false, false) => integrate_finite(
            &mut |t: f64| {
                let u = 1.0 - t * t;
                guard(f(t / u) * (1.0 + t * t) / (u * u))
            },
            -1.0,
            1.0,
            tol,
        ),
    }
}

/// Nodes never touch the endpoints, but the mapped integrand can still
/// overflow to `inf * 0`; such contributions are taken as zero.
fn guard(v: f64) -> f64 {
    if v.is_nan() {
        0.0
    } else {
        v
    }
}

fn integrate_finite<F: FnMut(f64) -> f64>(
    f: &mut F,
    a: f64,
    b: f64,
    tol: Tolerance,
) -> Result<Integral> {
    let first = kronrod(f, a, b);
    let mut segments = vec![first];
    let mut value = first.value;
    let mut error = first.error;
    while error > tol.abs.max(tol.rel * value.abs()) {
        if segments.len() >= MAX_SEGMENTS || !value.is_finite() {
            return Err(Error::Quadrature {
                estimate: value,
                error,
            });
        }
        let worst = segments
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.error.total_cmp(&y.1.error))
            .map(|(i, _)| i)
            .unwrap_or(0);
        let seg = segments.swap_remove(worst);
        let mid = 0.5 * (seg.a + seg.b);
        if mid <= seg.a || mid >= seg.b {
            // Interval can no longer be split in floating point.
            return Err(Error::Quadrature {
                estimate: value,
                error,
            });
        }
        let left = kronrod(f, seg.a, mid);
        let right = kronrod(f, mid, seg.b);
        segments.push(left);
        segments.push(right);
        // Re-summing avoids drift from repeated incremental updates.
        value = segments.iter().map(|s| s.value).sum();
        error = segments.iter().map(|s| s.error).sum();
    }
    if !value.is_finite() || !error.is_finite() {
        return Err(Error::Quadrature {
            estimate: value,
            error,
        });
    }
    Ok(Integral { value, error })
}
