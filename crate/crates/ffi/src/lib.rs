//! C ABI for the `sommerfeld` library.
//!
//! Every fallible function returns an [`SfStatus`] and writes results through
//! out-pointers. On failure the message is kept per thread and can be read
//! with [`sf_last_error_message`]. Handles are opaque and must be released
//! with the matching `_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use sommerfeld::actions::{radial_action, ActionMethod};
use sommerfeld::constants::{fine_structure_constant, ConstantsRecord};
use sommerfeld::orbit::{ellipse_from_energy, kepler_position, turning_points, OrbitGeometry};
use sommerfeld::quantize::{energy_closed, energy_numeric, QuantumNumbers};
use sommerfeld::residue::{cut_integral, BranchFunctionSpec, ResidueMode};
use sommerfeld::spectrum::transition;
use sommerfeld::{make_unit_system, Error, PhysicalConstants, UnitSystemKind};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SfStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    UnboundOrbit = 3,
    NoRealOrbit = 4,
    Domain = 5,
    Convergence = 6,
    KeplerNonConvergence = 7,
    DegenerateCut = 8,
    NumericalInconsistency = 9,
    Bracket = 10,
    ConstantsFile = 11,
    Panic = 12,
}

/// Values accepted wherever a `method` argument is taken.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SfActionMethod {
    Direct = 0,
    Theta = 1,
    Time = 2,
    Residue = 3,
    Closed = 4,
}

/// Values accepted wherever a `base` unit system is taken.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SfUnitSystem {
    Atomic = 0,
    Si = 1,
    Custom = 2,
}

/// Values accepted wherever a residue `mode` is taken.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SfResidueMode {
    Numeric = 0,
    Analytic = 1,
}

/// Opaque set of physical constants.
pub struct SfConstants {
    inner: PhysicalConstants,
}

/// Opaque bound Kepler orbit together with the constants it was built with.
pub struct SfOrbit {
    geometry: OrbitGeometry,
    constants: PhysicalConstants,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct SfConstantValues {
    pub hbar: f64,
    pub mass_electron: f64,
    pub e_squared: f64,
    pub speed_of_light: f64,
    pub planck_h: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct SfActionResult {
    pub value: f64,
    pub error_estimate: f64,
    /// `value / h`.
    pub in_planck_units: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct SfGeometry {
    pub energy: f64,
    pub angular_momentum: f64,
    pub r_min: f64,
    pub r_max: f64,
    pub semi_major: f64,
    pub semi_minor: f64,
    pub eccentricity: f64,
    pub period: f64,
    pub z: u32,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct SfTimeSample {
    pub t: f64,
    pub r: f64,
    pub theta: f64,
    pub r_dot: f64,
    pub theta_dot: f64,
    pub kinetic: f64,
    pub potential: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct SfResidueReport {
    pub res_zero_re: f64,
    pub res_zero_im: f64,
    pub res_infinity_re: f64,
    pub res_infinity_im: f64,
    pub cut_integral: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct SfSpectralLine {
    pub n_upper: u32,
    pub n_lower: u32,
    pub z: u32,
    pub delta_energy: f64,
    pub frequency: f64,
    pub wavelength: f64,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(message: &str) {
    let text = CString::new(message.replace('\0', " ")).expect("interior nul removed");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = text);
}

fn status_of(err: &Error) -> SfStatus {
    match err {
        Error::Validation { .. } => SfStatus::InvalidArgument,
        Error::UnboundOrbit { .. } => SfStatus::UnboundOrbit,
        Error::NoRealOrbit { .. } => SfStatus::NoRealOrbit,
        Error::Domain(_) => SfStatus::Domain,
        Error::Convergence { .. } => SfStatus::Convergence,
        Error::KeplerNonConvergence { .. } => SfStatus::KeplerNonConvergence,
        Error::DegenerateCut { .. } => SfStatus::DegenerateCut,
        Error::NumericalInconsistency(_) => SfStatus::NumericalInconsistency,
        Error::Bracket(_) => SfStatus::Bracket,
        Error::ConstantsFile(_) => SfStatus::ConstantsFile,
    }
}

enum Failure {
    Lib(Error),
    Null(&'static str),
    Invalid(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn guard(body: impl FnOnce() -> Result<(), Failure>) -> SfStatus {
    let (status, message) = match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => (SfStatus::Ok, String::new()),
        Ok(Err(Failure::Lib(e))) => (status_of(&e), e.to_string()),
        Ok(Err(Failure::Null(name))) => (SfStatus::NullPointer, format!("`{name}` is a null pointer")),
        Ok(Err(Failure::Invalid(msg))) => (SfStatus::InvalidArgument, msg),
        Err(_) => (SfStatus::Panic, "internal panic".to_string()),
    };
    set_last_error(&message);
    status
}

unsafe fn borrow<'a, T>(p: *const T, name: &'static str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or(Failure::Null(name))
}

unsafe fn write<T>(p: *mut T, name: &'static str, value: T) -> Result<(), Failure> {
    if p.is_null() {
        return Err(Failure::Null(name));
    }
    p.write(value);
    Ok(())
}

fn action_method(raw: u32) -> Result<ActionMethod, Failure> {
    ActionMethod::ALL
        .get(raw as usize)
        .copied()
        .ok_or_else(|| Failure::Invalid(format!("unknown action method {raw}")))
}

fn unit_system(raw: u32) -> Result<UnitSystemKind, Failure> {
    match raw {
        0 => Ok(UnitSystemKind::Atomic),
        1 => Ok(UnitSystemKind::Si),
        2 => Ok(UnitSystemKind::Custom),
        _ => Err(Failure::Invalid(format!("unknown unit system {raw}"))),
    }
}

fn boxed_constants(c: PhysicalConstants) -> *mut SfConstants {
    Box::into_raw(Box::new(SfConstants { inner: c }))
}

/// Atomic-unit constants. Never null; release with [`sf_constants_free`].
#[no_mangle]
pub extern "C" fn sf_constants_atomic() -> *mut SfConstants {
    boxed_constants(PhysicalConstants::atomic())
}

/// Bundled SI constants. Never null; release with [`sf_constants_free`].
#[no_mangle]
pub extern "C" fn sf_constants_si() -> *mut SfConstants {
    boxed_constants(PhysicalConstants::si())
}

/// A fully specified custom unit system.
///
/// # Safety
/// `out` must be valid for writing one pointer.
#[no_mangle]
pub unsafe extern "C" fn sf_constants_custom(
    hbar: f64,
    mass_electron: f64,
    e_squared: f64,
    speed_of_light: f64,
    out: *mut *mut SfConstants,
) -> SfStatus {
    guard(|| {
        let record = ConstantsRecord::full(hbar, mass_electron, e_squared, speed_of_light);
        let c = PhysicalConstants::from_record(&record)?;
        write(out, "out", boxed_constants(c))
    })
}

/// Reads a constants file and applies it over `base` (an [`SfUnitSystem`] value).
///
/// # Safety
/// `path` must be a nul-terminated string; `out` must be valid for writing one pointer.
#[no_mangle]
pub unsafe extern "C" fn sf_constants_from_file(
    path: *const c_char,
    base: u32,
    out: *mut *mut SfConstants,
) -> SfStatus {
    guard(|| {
        if path.is_null() {
            return Err(Failure::Null("path"));
        }
        let path = CStr::from_ptr(path)
            .to_str()
            .map_err(|_| Failure::Invalid("path is not valid UTF-8".into()))?;
        let record = ConstantsRecord::from_file(path)?;
        let c = make_unit_system(unit_system(base)?, Some(&record))?;
        write(out, "out", boxed_constants(c))
    })
}

/// # Safety
/// `c` must be null or a handle from this library that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn sf_constants_free(c: *mut SfConstants) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// # Safety
/// `c` must be a live handle; `out` must be valid for writing.
#[no_mangle]
pub unsafe extern "C" fn sf_constants_values(c: *const SfConstants, out: *mut SfConstantValues) -> SfStatus {
    guard(|| {
        let c = &borrow(c, "c")?.inner;
        write(
            out,
            "out",
            SfConstantValues {
                hbar: c.hbar,
                mass_electron: c.mass_electron,
                e_squared: c.e_squared,
                speed_of_light: c.speed_of_light,
                planck_h: c.planck_h,
            },
        )
    })
}

/// # Safety
/// `c` must be a live handle; `out` must be valid for writing.
#[no_mangle]
pub unsafe extern "C" fn sf_fine_structure_constant(c: *const SfConstants, out: *mut f64) -> SfStatus {
    guard(|| write(out, "out", fine_structure_constant(&borrow(c, "c")?.inner)))
}

/// Closed-form level energy for quantum numbers `(n_r, n_theta)`.
///
/// # Safety
/// `c` must be a live handle; `out` must be valid for writing.
#[no_mangle]
pub unsafe extern "C" fn sf_energy_closed(
    c: *const SfConstants,
    n_r: u32,
    n_theta: u32,
    z: u32,
    out: *mut f64,
) -> SfStatus {
    guard(|| {
        let c = &borrow(c, "c")?.inner;
        let level = energy_closed(QuantumNumbers::new(n_r, n_theta)?, z, c)?;
        write(out, "out", level.energy)
    })
}

/// Level energy found by inverting the numeric radial action of `method`.
///
/// # Safety
/// `c` must be a live handle; `out` must be valid for writing.
#[no_mangle]
pub unsafe extern "C" fn sf_energy_numeric(
    c: *const SfConstants,
    n_r: u32,
    n_theta: u32,
    z: u32,
    rel_tol: f64,
    method: u32,
    out: *mut f64,
) -> SfStatus {
    guard(|| {
        let c = &borrow(c, "c")?.inner;
        let level = energy_numeric(QuantumNumbers::new(n_r, n_theta)?, z, c, rel_tol, action_method(method)?)?;
        write(out, "out", level.energy)
    })
}

/// # Safety
/// `c` must be a live handle; `out` must be valid for writing.
#[no_mangle]
pub unsafe extern "C" fn sf_radial_action(
    c: *const SfConstants,
    method: u32,
    energy: f64,
    angular_momentum: f64,
    z: u32,
    rel_tol: f64,
    out: *mut SfActionResult,
) -> SfStatus {
    guard(|| {
        let c = &borrow(c, "c")?.inner;
        let r = radial_action(action_method(method)?, energy, angular_momentum, z, c, rel_tol)?;
        write(
            out,
            "out",
            SfActionResult {
                value: r.value,
                error_estimate: r.error_estimate,
                in_planck_units: r.in_planck_units(c),
            },
        )
    })
}

/// # Safety
/// `c` must be a live handle; `r_min` and `r_max` must be valid for writing.
#[no_mangle]
pub unsafe extern "C" fn sf_turning_points(
    c: *const SfConstants,
    energy: f64,
    angular_momentum: f64,
    z: u32,
    r_min: *mut f64,
    r_max: *mut f64,
) -> SfStatus {
    guard(|| {
        if r_min.is_null() || r_max.is_null() {
            return Err(Failure::Null("r_min/r_max"));
        }
        let (lo, hi) = turning_points(energy, angular_momentum, z, &borrow(c, "c")?.inner)?;
        write(r_min, "r_min", lo)?;
        write(r_max, "r_max", hi)
    })
}

fn boxed_orbit(geometry: OrbitGeometry, constants: PhysicalConstants) -> *mut SfOrbit {
    Box::into_raw(Box::new(SfOrbit { geometry, constants }))
}

/// Orbit with the given energy and angular momentum.
///
/// # Safety
/// `c` must be a live handle; `out` must be valid for writing one pointer.
#[no_mangle]
pub unsafe extern "C" fn sf_orbit_new(
    c: *const SfConstants,
    energy: f64,
    angular_momentum: f64,
    z: u32,
    out: *mut *mut SfOrbit,
) -> SfStatus {
    guard(|| {
        let c = borrow(c, "c")?.inner;
        let g = ellipse_from_energy(energy, angular_momentum, z, &c)?;
        write(out, "out", boxed_orbit(g, c))
    })
}

/// Orbit of the quantized state `(n_r, n_theta)`.
///
/// # Safety
/// `c` must be a live handle; `out` must be valid for writing one pointer.
#[no_mangle]
pub unsafe extern "C" fn sf_orbit_from_quantum(
    c: *const SfConstants,
    n_r: u32,
    n_theta: u32,
    z: u32,
    out: *mut *mut SfOrbit,
) -> SfStatus {
    guard(|| {
        let c = borrow(c, "c")?.inner;
        let level = energy_closed(QuantumNumbers::new(n_r, n_theta)?, z, &c)?;
        let g = ellipse_from_energy(level.energy, level.angular_momentum, z, &c)?;
        write(out, "out", boxed_orbit(g, c))
    })
}

/// # Safety
/// `orbit` must be null or a handle from this library that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn sf_orbit_free(orbit: *mut SfOrbit) {
    if !orbit.is_null() {
        drop(Box::from_raw(orbit));
    }
}

/// # Safety
/// `orbit` must be a live handle; `out` must be valid for writing.
#[no_mangle]
pub unsafe extern "C" fn sf_orbit_geometry(orbit: *const SfOrbit, out: *mut SfGeometry) -> SfStatus {
    guard(|| {
        let g = borrow(orbit, "orbit")?.geometry;
        write(
            out,
            "out",
            SfGeometry {
                energy: g.energy,
                angular_momentum: g.angular_momentum,
                r_min: g.r_min,
                r_max: g.r_max,
                semi_major: g.semi_major,
                semi_minor: g.semi_minor(),
                eccentricity: g.eccentricity,
                period: g.period,
                z: g.z,
            },
        )
    })
}

/// State at time `t` after pericenter passage.
///
/// # Safety
/// `orbit` must be a live handle; `out` must be valid for writing.
#[no_mangle]
pub unsafe extern "C" fn sf_orbit_sample(orbit: *const SfOrbit, t: f64, out: *mut SfTimeSample) -> SfStatus {
    guard(|| {
        let o = borrow(orbit, "orbit")?;
        let s = kepler_position(&o.geometry, t, &o.constants)?;
        write(
            out,
            "out",
            SfTimeSample {
                t: s.t,
                r: s.r,
                theta: s.theta,
                r_dot: s.r_dot,
                theta_dot: s.theta_dot,
                kinetic: s.kinetic,
                potential: s.potential,
            },
        )
    })
}

/// Residues of the branch function with cut `[r_min, r_max]` and the cut integral.
///
/// # Safety
/// `out` must be valid for writing.
#[no_mangle]
pub unsafe extern "C" fn sf_cut_integral(r_min: f64, r_max: f64, mode: u32, out: *mut SfResidueReport) -> SfStatus {
    guard(|| {
        let mode = match mode {
            0 => ResidueMode::Numeric,
            1 => ResidueMode::Analytic,
            _ => return Err(Failure::Invalid(format!("unknown residue mode {mode}"))),
        };
        let r = cut_integral(&BranchFunctionSpec::new(r_min, r_max)?, mode)?;
        write(
            out,
            "out",
            SfResidueReport {
                res_zero_re: r.res_zero.re,
                res_zero_im: r.res_zero.im,
                res_infinity_re: r.res_infinity.re,
                res_infinity_im: r.res_infinity.im,
                cut_integral: r.cut_integral,
            },
        )
    })
}

/// # Safety
/// `c` must be a live handle; `out` must be valid for writing.
#[no_mangle]
pub unsafe extern "C" fn sf_transition(
    c: *const SfConstants,
    n_upper: u32,
    n_lower: u32,
    z: u32,
    out: *mut SfSpectralLine,
) -> SfStatus {
    guard(|| {
        let line = transition(n_upper, n_lower, z, &borrow(c, "c")?.inner)?;
        write(
            out,
            "out",
            SfSpectralLine {
                n_upper: line.n_upper,
                n_lower: line.n_lower,
                z: line.z,
                delta_energy: line.delta_energy,
                frequency: line.frequency,
                wavelength: line.wavelength,
            },
        )
    })
}

/// Message for the last call on this thread; empty after a success.
/// Valid until the next library call on the same thread.
#[no_mangle]
pub extern "C" fn sf_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Static description of a status code.
#[no_mangle]
pub extern "C" fn sf_status_str(status: SfStatus) -> *const c_char {
    let text: &'static CStr = match status {
        SfStatus::Ok => c"ok",
        SfStatus::NullPointer => c"null pointer argument",
        SfStatus::InvalidArgument => c"invalid argument",
        SfStatus::UnboundOrbit => c"unbound orbit",
        SfStatus::NoRealOrbit => c"no real orbit",
        SfStatus::Domain => c"domain error",
        SfStatus::Convergence => c"quadrature did not converge",
        SfStatus::KeplerNonConvergence => c"Kepler iteration did not converge",
        SfStatus::DegenerateCut => c"degenerate branch cut",
        SfStatus::NumericalInconsistency => c"numerical inconsistency",
        SfStatus::Bracket => c"root bracket failure",
        SfStatus::ConstantsFile => c"constants file error",
        SfStatus::Panic => c"internal panic",
    };
    text.as_ptr()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::ptr;

    #[test]
    fn method_codes_follow_library_order() {
        for (code, m) in [
            (SfActionMethod::Direct, ActionMethod::Direct),
            (SfActionMethod::Theta, ActionMethod::Theta),
            (SfActionMethod::Time, ActionMethod::Time),
            (SfActionMethod::Residue, ActionMethod::Residue),
            (SfActionMethod::Closed, ActionMethod::Closed),
        ] {
            assert!(matches!(action_method(code as u32), Ok(x) if x == m));
        }
        assert!(action_method(5).is_err());
        assert_eq!(unit_system(SfUnitSystem::Custom as u32).ok(), Some(UnitSystemKind::Custom));
        assert_eq!(SfResidueMode::Analytic as u32, 1);
    }

    #[test]
    fn panics_become_status() {
        assert_eq!(guard(|| panic!("boom")), SfStatus::Panic);
        let msg = unsafe { CStr::from_ptr(sf_last_error_message()) };
        assert_eq!(msg.to_str().unwrap(), "internal panic");
    }

    #[test]
    fn null_out_pointer_is_reported() {
        let c = sf_constants_atomic();
        let status = unsafe { sf_fine_structure_constant(c, ptr::null_mut()) };
        assert_eq!(status, SfStatus::NullPointer);
        unsafe { sf_constants_free(c) };
    }
}
