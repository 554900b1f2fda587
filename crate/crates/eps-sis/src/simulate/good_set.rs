//! Intervals around the fixed point and the good-set geometry.

use serde::Serialize;

use crate::chain::ModelParams;
use crate::error::{Error, Result};

/// A closed interval of proportions `[lo, hi]`.
///
/// Membership of discrete states is always decided through
/// [`ScaledInterval::state_bounds`], so simulators, exit times and
/// reflected boundaries agree exactly on which states are inside.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScaledInterval {
    lo: f64,
    hi: f64,
}

impl ScaledInterval {
    /// Builds `[lo, hi]`; requires `lo <= hi`.
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !(lo <= hi) {
            return Err(Error::Domain(format!("invalid interval [{lo}, {hi}]")));
        }
        Ok(Self { lo, hi })
    }

    /// Lower edge.
    pub fn lo(&self) -> f64 {
        self.lo
    }

    /// Upper edge.
    pub fn hi(&self) -> f64 {
        self.hi
    }

    /// Inclusive range `[ceil(lo N), floor(hi N)]` of states whose
    /// proportion lies in the interval. May be empty (first > second) or
    /// extend beyond `{0, .., N}`; callers clamp as appropriate.
    pub fn state_bounds(&self, n: usize) -> (i64, i64) {
        let nf = n as f64;
        ((self.lo * nf).ceil() as i64, (self.hi * nf).floor() as i64)
    }

    /// Whether state `x` of a chain with population `n` lies inside.
    pub fn contains_state(&self, x: usize, n: usize) -> bool {
        let (a, b) = self.state_bounds(n);
        let xi = x as i64;
        xi >= a && xi <= b
    }
}

/// Geometry of the coupling argument for one `(params, N)` pair: the
/// constant-radius interval `I(r)`, the shrinking radius
/// `eta = 2 (C2 + C3) N^{-(1-h)/2}` with its interval and interior, and
/// the horizon `t_follow = (1/J) ceil(exp(C1 N^h))`.
///
/// `C1` and `C2` are existence constants with no explicit value; they
/// enter as configurable surrogates (default 1) and experiments fit or
/// bound them empirically rather than trusting the defaults.
/// `C3 = max((J/lambda) x_star / |x1_star|, 1 - x_star)` is in closed
/// form.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GoodSet {
    r: f64,
    h: f64,
    c1_surrogate: f64,
    c2_surrogate: f64,
    c3: f64,
    eta: f64,
    t_follow: f64,
    x_star: f64,
}

impl GoodSet {
    /// Good set with radius `r`, exponent `h`, and default surrogates
    /// `C1 = C2 = 1`.
    pub fn new(params: &ModelParams, r: f64, h: f64) -> Result<Self> {
        Self::with_surrogates(params, r, h, 1.0, 1.0)
    }

    /// Good set with explicit constant surrogates.
    pub fn with_surrogates(
        params: &ModelParams,
        r: f64,
        h: f64,
        c1_surrogate: f64,
        c2_surrogate: f64,
    ) -> Result<Self> {
        if !(r > 0.0) {
            return Err(Error::Domain(format!("radius must be positive, got {r}")));
        }
        if !(h > 0.0 && h < 1.0) {
            return Err(Error::Domain(format!(
                "exponent h must lie in (0, 1), got {h}"
            )));
        }
        if !(c1_surrogate > 0.0) || !(c2_surrogate > 0.0) {
            return Err(Error::Domain(
                "constant surrogates must be positive".to_string(),
            ));
        }
        let d = params.derived();
        if d.x_star - r > 1.0 || d.x_star + r < 0.0 {
            return Err(Error::Domain(format!(
                "interval [{}, {}] does not meet [0, 1]",
                d.x_star - r,
                d.x_star + r
            )));
        }
        let nf = params.n_f64();
        let c3 = ((d.j / params.lambda()) * d.x_star / d.x1_star.abs()).max(1.0 - d.x_star);
        let eta = 2.0 * (c2_surrogate + c3) * nf.powf(-(1.0 - h) / 2.0);
        let t_follow = (c1_surrogate * nf.powf(h)).exp().ceil() / d.j;
        Ok(Self {
            r,
            h,
            c1_surrogate,
            c2_surrogate,
            c3,
            eta,
            t_follow,
            x_star: d.x_star,
        })
    }

    /// Radius of `I(r)`.
    pub fn radius(&self) -> f64 {
        self.r
    }

    /// Deviation exponent `h`.
    pub fn h(&self) -> f64 {
        self.h
    }

    /// Shrinking good-set radius `eta(N)`.
    pub fn eta(&self) -> f64 {
        self.eta
    }

    /// The closed-form constant `C3`.
    pub fn c3(&self) -> f64 {
        self.c3
    }

    /// Surrogate for the concentration constant `C1`.
    pub fn c1_surrogate(&self) -> f64 {
        self.c1_surrogate
    }

    /// Surrogate for the deviation constant `C2`.
    pub fn c2_surrogate(&self) -> f64 {
        self.c2_surrogate
    }

    /// Horizon `(1/J) ceil(exp(C1 N^h))`; infinite once the exponent
    /// overflows. Astronomical for realistic `N`, so simulations always
    /// run to explicit finite horizons and report whether this bound was
    /// binding (it never is at desk scale).
    pub fn t_follow(&self) -> f64 {
        self.t_follow
    }

    /// The constant-radius interval `I(r)`.
    pub fn interval(&self) -> ScaledInterval {
        ScaledInterval {
            lo: self.x_star - self.r,
            hi: self.x_star + self.r,
        }
    }

    /// The shrinking good set `I(eta)`.
    pub fn interval_hat(&self) -> ScaledInterval {
        ScaledInterval {
            lo: self.x_star - self.eta,
            hi: self.x_star + self.eta,
        }
    }

    /// Its interior `I(eta / 2)`.
    pub fn interval_interior(&self) -> ScaledInterval {
        ScaledInterval {
            lo: self.x_star - self.eta / 2.0,
            hi: self.x_star + self.eta / 2.0,
        }
    }
}

/// Default good-set radius `min(J / (12 lambda), x_star / 2,
/// (1 - x_star) / 2)`: half the largest radius the contraction argument
/// tolerates (`r < J / (6 lambda)`), kept inside the unit interval.
pub fn default_radius(params: &ModelParams) -> f64 {
    let d = params.derived();
    (d.j / (12.0 * params.lambda()))
        .min(d.x_star / 2.0)
        .min((1.0 - d.x_star) / 2.0)
}
