//! Dielectric models and the dipole susceptibility built on them.
//!
//! Two families cover the physics here: a Lorentz oscillator for polar
//! crystals (SiC) and a Drude model for metals (gold). A particle small
//! against both the wavelength and the skin depth responds through the
//! Clausius–Mossotti factor `chi = (eps - 1)/(eps + 2)`; its absorption
//! spectrum `Im chi` inherits a sharp resonance from the pole at
//! `eps = -2`, and most of the transfer physics happens at that
//! frequency.

#[allow(unused_imports)]
use num_traits::Float;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Frequency-dependent permittivity model, SI units (rad/s).
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum MaterialModel {
    /// Lorentz oscillator
    /// `eps(w) = eps_inf (w^2 - w_lo^2 + i w gamma) / (w^2 - w_to^2 + i w gamma)`.
    Lorentz {
        eps_inf: f64,
        omega_lo: f64,
        omega_to: f64,
        gamma: f64,
    },
    /// Drude metal `eps(w) = 1 - w_p^2 / (w (w + i w_tau))`.
    Drude {
        omega_p: f64,
        omega_tau: f64,
    },
    /// Fixed permittivity, for limits and tests.
    Constant {
        eps_re: f64,
        eps_im: f64,
    },
    /// Perfect electric conductor (boundary condition, not a permittivity).
    Pec,
    /// No material at all; scattering terms vanish.
    Vacuum,
}

/// Silicon carbide (Lorentz oscillator parameters).
pub fn sic() -> MaterialModel {
    MaterialModel::Lorentz {
        eps_inf: 6.7,
        omega_lo: 1.82e14,
        omega_to: 1.48e14,
        gamma: 8.93e11,
    }
}

/// Gold (Drude parameters).
pub fn gold() -> MaterialModel {
    MaterialModel::Drude {
        omega_p: 1.37e16,
        omega_tau: 4.06e13,
    }
}

/// Permittivity at angular frequency `omega`.
///
/// `Pec` and `Vacuum` have no finite permittivity; asking for one is a
/// domain error (scattering code treats them through their boundary
/// conditions instead).
pub fn permittivity(model: &MaterialModel, omega: f64) -> Result<Complex64> {
    if !(omega > 0.0) || !omega.is_finite() {
        return Err(Error::Domain { what: "omega must be positive and finite" });
    }
    match *model {
        MaterialModel::Lorentz { eps_inf, omega_lo, omega_to, gamma } => {
            let iwg = Complex64::new(0.0, omega * gamma);
            let num = Complex64::new(omega * omega - omega_lo * omega_lo, 0.0) + iwg;
            let den = Complex64::new(omega * omega - omega_to * omega_to, 0.0) + iwg;
            Ok(eps_inf * num / den)
        }
        MaterialModel::Drude { omega_p, omega_tau } => {
            let den = omega * Complex64::new(omega, omega_tau);
            Ok(1.0 - omega_p * omega_p / den)
        }
        MaterialModel::Constant { eps_re, eps_im } => Ok(Complex64::new(eps_re, eps_im)),
        MaterialModel::Pec => Err(Error::Domain { what: "PEC has no finite permittivity" }),
        MaterialModel::Vacuum => Err(Error::Domain { what: "vacuum has no material response" }),
    }
}

/// Clausius–Mossotti susceptibility `(eps - 1)/(eps + 2)`.
pub fn susceptibility_cm(model: &MaterialModel, omega: f64) -> Result<Complex64> {
    let eps = permittivity(model, omega)?;
    Ok((eps - 1.0) / (eps + 2.0))
}

/// Frequency at which `[Im chi(w)]^2` peaks: the particle resonance that
/// dominates the thermal integrals.
///
/// Found by a coarse logarithmic scan followed by golden-section
/// refinement to 1e-6 relative. Materials whose `Im chi` has no interior
/// maximum (Drude metals in this range, constants) report
/// [`Error::NotResonant`].
pub fn resonance_frequency(model: &MaterialModel) -> Result<f64> {
    let (lo, hi) = match *model {
        MaterialModel::Lorentz { omega_to, omega_lo, .. } => (0.3 * omega_to, 3.0 * omega_lo),
        _ => return Err(Error::NotResonant),
    };

    let target = |w: f64| -> f64 {
        let chi = susceptibility_cm(model, w).unwrap_or(Complex64::new(0.0, 0.0));
        let v = chi.im;
        v * v
    };

    // Coarse scan on a log grid to bracket the global maximum.
    const NSCAN: usize = 600;
    let ratio = (hi / lo).ln() / (NSCAN - 1) as f64;
    let mut best_i = 0;
    let mut best_v = f64::NEG_INFINITY;
    for i in 0..NSCAN {
        let w = lo * ((i as f64) * ratio).exp();
        let v = target(w);
        if v > best_v {
            best_v = v;
            best_i = i;
        }
    }
    if best_i == 0 || best_i == NSCAN - 1 || best_v <= 0.0 {
        return Err(Error::NotResonant);
    }
    let mut a = lo * (((best_i - 1) as f64) * ratio).exp();
    let mut b = lo * (((best_i + 1) as f64) * ratio).exp();

    // Golden-section maximization of target on [a, b].
    const INVPHI: f64 = 0.618_033_988_749_894_9;
    let mut c = b - INVPHI * (b - a);
    let mut d = a + INVPHI * (b - a);
    let mut fc = target(c);
    let mut fd = target(d);
    for _ in 0..200 {
        if (b - a) <= 1e-6 * 0.5 * (a + b) {
            break;
        }
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INVPHI * (b - a);
            fc = target(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INVPHI * (b - a);
            fd = target(d);
        }
    }
    Ok(0.5 * (a + b))
}
