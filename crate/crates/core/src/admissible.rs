//! Sampled reparametrizing profiles `f` with flat ends and `0 ≤ f′ < 1`.
//!
//! This is the only floating-point module; nothing here feeds back into the
//! exact core.
//!
//! `f(x) = rise · S((x − min − ε) / run)` with `rise = (max − min) − δ` and
//! `run = (max − min) − 2ε`, clamped to the plateaus. Its peak slope is
//! `(rise / run) · S_max`, so a ramp is usable iff that product is `< 1`.
//!
//! Two ramps are provided. [`Ramp::Smoothstep`] is the quintic
//! `6t⁵ − 15t⁴ + 10t³` with `S_max = 15/8`; it rejects plateaus that leave
//! less than about half the domain for the climb. [`Ramp::Blended`] (the
//! default) has a derivative that eases in and out over a width `w` chosen
//! from the data, `S_max = 1 / (1 − w)`; it is feasible whenever
//! `rise < run`, which is the best any profile with these plateaus can do.

use serde::Serialize;

use crate::{Error, Result};

/// Minimum accepted grid size for [`build_profile`].
pub const MIN_SAMPLES: usize = 100;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Ramp {
    /// Linear climb with smoothly eased ends; the easing width adapts to
    /// `rise / run`.
    #[default]
    Blended,
    /// Quintic smoothstep, peak slope 15/8.
    Smoothstep,
}

impl Ramp {
    /// Easing width of the blended ramp for a given `rise / run`.
    fn blend_width(ratio: f64) -> f64 {
        ((1.0 - ratio) / 2.0).clamp(f64::MIN_POSITIVE, 0.5)
    }

    /// Peak of `S′` when used with slope ratio `rise / run`.
    pub fn peak_slope(self, ratio: f64) -> f64 {
        match self {
            Ramp::Smoothstep => 15.0 / 8.0,
            Ramp::Blended => 1.0 / (1.0 - Self::blend_width(ratio)),
        }
    }

    /// `S(t)` for `t ∈ [0, 1]`; 0 below, 1 above.
    fn eval(self, t: f64, ratio: f64) -> f64 {
        if t <= 0.0 {
            return 0.0;
        }
        if t >= 1.0 {
            return 1.0;
        }
        match self {
            Ramp::Smoothstep => (t * t * t * (t * (6.0 * t - 15.0) + 10.0)).min(1.0),
            Ramp::Blended => {
                // S′ = h·b with b the quintic smoothstep on [0, w], 1 in the
                // middle, mirrored on [1 − w, 1]; ∫b = 1 − w.
                let w = Self::blend_width(ratio);
                let eased = |s: f64| s * s * s * s * (s * (s - 3.0) + 2.5);
                let area = 1.0 - w;
                let b = if t < w {
                    w * eased(t / w)
                } else if t > 1.0 - w {
                    area - w * eased((1.0 - t) / w)
                } else {
                    w / 2.0 + (t - w)
                };
                (b / area).min(1.0)
            }
        }
    }
}

impl std::str::FromStr for Ramp {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "blended" => Ok(Ramp::Blended),
            "smoothstep" => Ok(Ramp::Smoothstep),
            _ => Err(Error::InvalidArgument(format!(
                "unknown ramp {s:?}; expected blended or smoothstep"
            ))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Profile {
    pub domain_min: f64,
    pub domain_max: f64,
    pub epsilon: f64,
    pub delta: f64,
    pub ramp: Ramp,
    /// Uniform grid of `(x, f(x))`, endpoints included.
    pub samples: Vec<(f64, f64)>,
}

impl Profile {
    pub fn rise(&self) -> f64 {
        (self.domain_max - self.domain_min) - self.delta
    }

    pub fn run(&self) -> f64 {
        (self.domain_max - self.domain_min) - 2.0 * self.epsilon
    }

    /// `(rise / run) · S_max`, the supremum of `f′`.
    pub fn analytic_slope_bound(&self) -> f64 {
        let ratio = self.rise() / self.run();
        ratio * self.ramp.peak_slope(ratio)
    }

    /// CSV with header `x,f`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("x,f\n");
        for (x, f) in &self.samples {
            out.push_str(&format!("{x},{f}\n"));
        }
        out
    }
}

pub fn build_profile(min: f64, max: f64, epsilon: f64, delta: f64, sample_count: usize) -> Result<Profile> {
    build_profile_with_ramp(min, max, epsilon, delta, sample_count, Ramp::default())
}

pub fn build_profile_with_ramp(
    min: f64,
    max: f64,
    epsilon: f64,
    delta: f64,
    sample_count: usize,
    ramp: Ramp,
) -> Result<Profile> {
    let bad = |m: String| Err(Error::InfeasibleProfile(m));
    if ![min, max, epsilon, delta].iter().all(|v| v.is_finite()) {
        return bad("parameters must be finite".into());
    }
    if max <= min {
        return bad(format!("need max > min, got min = {min}, max = {max}"));
    }
    if epsilon <= 0.0 {
        return bad(format!("need ε > 0, got {epsilon}"));
    }
    if delta <= 0.0 {
        return bad(format!("need δ > 0, got {delta}"));
    }
    if sample_count < MIN_SAMPLES {
        return bad(format!("need at least {MIN_SAMPLES} samples, got {sample_count}"));
    }
    let span = max - min;
    let rise = span - delta;
    let run = span - 2.0 * epsilon;
    if rise < 0.0 {
        return bad(format!("need δ ≤ max − min, got δ = {delta} > {span}"));
    }
    if run <= 0.0 {
        return bad(format!("need max − min − 2ε > 0, got {run}"));
    }
    let ratio = rise / run;
    let peak = ratio * ramp.peak_slope(ratio);
    if peak >= 1.0 {
        return bad(format!(
            "(max − min − δ) / (max − min − 2ε) · S_max < 1 fails: {rise} / {run} · {} = {peak}",
            ramp.peak_slope(ratio)
        ));
    }

    let step = span / (sample_count - 1) as f64;
    let samples = (0..sample_count)
        .map(|i| {
            let x = if i + 1 == sample_count { max } else { min + step * i as f64 };
            let f = if x <= min + epsilon {
                0.0
            } else if x >= max - epsilon {
                rise
            } else {
                rise * ramp.eval((x - min - epsilon) / run, ratio)
            };
            (x, f)
        })
        .collect();
    Ok(Profile {
        domain_min: min,
        domain_max: max,
        epsilon,
        delta,
        ramp,
        samples,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ProfileCheck {
    pub plateau_ok: bool,
    pub monotone_ok: bool,
    pub slope_ok: bool,
    pub max_slope: f64,
}

impl ProfileCheck {
    pub fn all_ok(&self) -> bool {
        self.plateau_ok && self.monotone_ok && self.slope_ok
    }
}

/// Recompute the profile conditions from the samples alone.
pub fn verify_profile(p: &Profile) -> Result<ProfileCheck> {
    const TOL: f64 = 1e-12;
    let s = &p.samples;
    if s.len() < 3 {
        return Err(Error::InvalidArgument(format!(
            "need at least 3 samples to verify a profile, got {}",
            s.len()
        )));
    }
    let rise = p.rise();
    let plateau_ok = s.iter().all(|&(x, f)| {
        let low = x > p.domain_min + p.epsilon || f.abs() <= TOL;
        let high = x < p.domain_max - p.epsilon || (f - rise).abs() <= TOL;
        low && high
    });
    let monotone_ok = s.windows(2).all(|w| w[1].1 >= w[0].1);
    let max_slope = s
        .windows(3)
        .map(|w| (w[2].1 - w[0].1) / (w[2].0 - w[0].0))
        .fold(f64::NEG_INFINITY, f64::max);
    Ok(ProfileCheck {
        plateau_ok,
        monotone_ok,
        slope_ok: max_slope < 1.0,
        max_slope,
    })
}
