//! Network parameters for the two-relay diamond channel.
//!
//! Link strengths are expressed as SNR exponents: a link with exponent `g`
//! has average gain `snr^g`. All logarithms in the crate are base 2.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// SNR exponents of the four links, in `(sr1, sr2, rd1, rd2)` order.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Exponents {
    pub sr1: f64,
    pub sr2: f64,
    pub rd1: f64,
    pub rd2: f64,
}

impl Exponents {
    pub const fn new(sr1: f64, sr2: f64, rd1: f64, rd2: f64) -> Self {
        Exponents { sr1, sr2, rd1, rd2 }
    }

    pub fn from_array(g: [f64; 4]) -> Self {
        Exponents::new(g[0], g[1], g[2], g[3])
    }

    pub fn to_array(self) -> [f64; 4] {
        [self.sr1, self.sr2, self.rd1, self.rd2]
    }

    /// Exchanges the roles of the two relays.
    pub fn swapped(self) -> Self {
        Exponents::new(self.sr2, self.sr1, self.rd2, self.rd1)
    }

    pub fn max(self) -> f64 {
        self.to_array().into_iter().fold(0.0, f64::max)
    }

    pub fn validate(self) -> Result<()> {
        for (name, v) in ["sr1", "sr2", "rd1", "rd2"].iter().zip(self.to_array()) {
            if !v.is_finite() || v < 0.0 {
                return Err(Error::param(format!("exponent {name} must be finite and >= 0, got {v}")));
            }
        }
        Ok(())
    }
}

/// Linear link gains `rho^2`, one per link.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LinkGains {
    pub sr1: f64,
    pub sr2: f64,
    pub rd1: f64,
    pub rd2: f64,
}

impl LinkGains {
    pub const fn new(sr1: f64, sr2: f64, rd1: f64, rd2: f64) -> Self {
        LinkGains { sr1, sr2, rd1, rd2 }
    }

    pub fn from_exponents(gamma: Exponents, snr: f64) -> Self {
        LinkGains {
            sr1: snr.powf(gamma.sr1),
            sr2: snr.powf(gamma.sr2),
            rd1: snr.powf(gamma.rd1),
            rd2: snr.powf(gamma.rd2),
        }
    }

    pub fn validate(self) -> Result<()> {
        for v in [self.sr1, self.sr2, self.rd1, self.rd2] {
            if !v.is_finite() || v < 0.0 {
                return Err(Error::param(format!("link gain must be finite and >= 0, got {v}")));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NetworkParams {
    /// Coherence time `T` in symbols.
    pub coherence: u32,
    pub gamma: Exponents,
    /// Linear SNR, needed only by finite-SNR evaluations.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub snr: Option<f64>,
}

impl NetworkParams {
    pub fn new(coherence: u32, gamma: Exponents) -> Result<Self> {
        let p = NetworkParams { coherence, gamma, snr: None };
        p.validate()?;
        Ok(p)
    }

    pub fn with_snr(mut self, snr: f64) -> Result<Self> {
        self.snr = Some(snr);
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        if self.coherence < 1 {
            return Err(Error::param("coherence time must be >= 1"));
        }
        self.gamma.validate()?;
        if let Some(snr) = self.snr {
            if !(snr.is_finite() && snr > 1.0) {
                return Err(Error::param(format!("snr must be finite and > 1, got {snr}")));
            }
        }
        Ok(())
    }

    /// `T` as a float.
    pub fn t(&self) -> f64 {
        f64::from(self.coherence)
    }

    pub fn swapped(&self) -> Self {
        NetworkParams { gamma: self.gamma.swapped(), ..*self }
    }

    pub fn snr(&self) -> Result<f64> {
        self.snr.ok_or_else(|| Error::param("operation needs an snr value"))
    }

    pub fn gains(&self) -> Result<LinkGains> {
        Ok(LinkGains::from_exponents(self.gamma, self.snr()?))
    }
}

/// One support point of a relay power law: `(|x_r2|^2, |x_r11|^2, |x_r12|^2)`
/// with its probability.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MassPoint {
    pub a2: f64,
    pub b2: f64,
    pub c2: f64,
    pub p: f64,
}

impl MassPoint {
    pub const fn new(a2: f64, b2: f64, c2: f64, p: f64) -> Self {
        MassPoint { a2, b2, c2, p }
    }

    pub fn power(&self) -> f64 {
        self.a2 + self.b2 + self.c2
    }
}

/// Finite law over relay power triples.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct MassPointDistribution {
    pub points: Vec<MassPoint>,
}

impl MassPointDistribution {
    pub const PROB_TOL: f64 = 1e-9;

    pub fn new(points: Vec<MassPoint>) -> Result<Self> {
        let d = MassPointDistribution { points };
        d.validate()?;
        Ok(d)
    }

    pub fn point_mass(a2: f64, b2: f64, c2: f64) -> Self {
        MassPointDistribution { points: vec![MassPoint::new(a2, b2, c2, 1.0)] }
    }

    /// `(T, 0, c)` with probability `p` and `(0, T/2, T/2)` otherwise.
    pub fn two_point(t: f64, c2: f64, p: f64) -> Result<Self> {
        let mut points = Vec::with_capacity(2);
        if p > 0.0 {
            points.push(MassPoint::new(t, 0.0, c2, p));
        }
        if p < 1.0 {
            points.push(MassPoint::new(0.0, 0.5 * t, 0.5 * t, 1.0 - p));
        }
        MassPointDistribution::new(points)
    }

    pub fn validate(&self) -> Result<()> {
        if self.points.is_empty() {
            return Err(Error::param("distribution has no points"));
        }
        for q in &self.points {
            for v in [q.a2, q.b2, q.c2] {
                if !(v.is_finite() && v >= 0.0) {
                    return Err(Error::param(format!("power coordinate must be finite and >= 0, got {v}")));
                }
            }
            if !(q.p.is_finite() && q.p >= 0.0) {
                return Err(Error::param(format!("probability must be finite and >= 0, got {}", q.p)));
            }
        }
        let total = self.total_probability();
        if (total - 1.0).abs() > Self::PROB_TOL {
            return Err(Error::param(format!("probabilities sum to {total}, expected 1")));
        }
        Ok(())
    }

    pub fn total_probability(&self) -> f64 {
        self.points.iter().map(|q| q.p).sum()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// `E[|x_r2|^2 + |x_r11|^2 + |x_r12|^2]`.
    pub fn mean_power(&self) -> f64 {
        self.points.iter().map(|q| q.p * q.power()).sum()
    }

    /// `(E|x_r2|^2, E[|x_r11|^2 + |x_r12|^2])`, the per-relay mean powers.
    pub fn relay_powers(&self) -> (f64, f64) {
        self.points.iter().fold((0.0, 0.0), |(r2, r1), q| (r2 + q.p * q.a2, r1 + q.p * (q.b2 + q.c2)))
    }
}
