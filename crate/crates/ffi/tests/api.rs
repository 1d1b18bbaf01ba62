use std::ffi::{CStr, CString};
use std::io::Write;
use std::ptr;

use sommerfeld_ffi::*;

fn last_error() -> String {
    unsafe { CStr::from_ptr(sf_last_error_message()) }.to_str().unwrap().to_string()
}

struct Constants(*mut SfConstants);

impl Drop for Constants {
    fn drop(&mut self) {
        unsafe { sf_constants_free(self.0) };
    }
}

fn atomic() -> Constants {
    Constants(sf_constants_atomic())
}

#[test]
fn closed_and_numeric_energies() {
    let c = atomic();
    let mut e = 0.0;
    assert_eq!(unsafe { sf_energy_closed(c.0, 1, 1, 1, &mut e) }, SfStatus::Ok);
    assert_eq!(e, -0.125);
    for method in [SfActionMethod::Direct, SfActionMethod::Theta, SfActionMethod::Time, SfActionMethod::Residue] {
        let mut n = 0.0;
        let status = unsafe { sf_energy_numeric(c.0, 2, 1, 2, 1e-10, method as u32, &mut n) };
        assert_eq!(status, SfStatus::Ok, "{}", last_error());
        assert!((n / (-4.0 / 18.0) - 1.0).abs() < 1e-9);
    }
    assert_eq!(last_error(), "");
}

#[test]
fn radial_action_in_planck_units() {
    let c = atomic();
    let mut r = SfActionResult::default();
    let status = unsafe { sf_radial_action(c.0, SfActionMethod::Residue as u32, -0.125, 1.0, 1, 1e-12, &mut r) };
    assert_eq!(status, SfStatus::Ok);
    assert!((r.in_planck_units - 1.0).abs() < 1e-10);
    assert!((r.value - 2.0 * std::f64::consts::PI).abs() < 1e-9);
}

#[test]
fn error_codes_and_messages() {
    let c = atomic();
    let mut r = SfActionResult::default();
    let status = unsafe { sf_radial_action(c.0, 0, 0.5, 1.0, 1, 1e-12, &mut r) };
    assert_eq!(status, SfStatus::UnboundOrbit);
    assert!(last_error().contains("unbound"));
    let status = unsafe { sf_radial_action(c.0, 0, -0.5, 3.0, 1, 1e-12, &mut r) };
    assert_eq!(status, SfStatus::NoRealOrbit);
    let status = unsafe { sf_radial_action(c.0, 99, -0.125, 1.0, 1, 1e-12, &mut r) };
    assert_eq!(status, SfStatus::InvalidArgument);
    let status = unsafe { sf_radial_action(c.0, SfActionMethod::Residue as u32, -0.125, 2.0, 1, 1e-12, &mut r) };
    assert_eq!(status, SfStatus::DegenerateCut);
    let mut e = 0.0;
    assert_eq!(unsafe { sf_energy_closed(c.0, 1, 0, 1, &mut e) }, SfStatus::InvalidArgument);
    assert_eq!(unsafe { sf_energy_closed(ptr::null(), 1, 1, 1, &mut e) }, SfStatus::NullPointer);
    let text = unsafe { CStr::from_ptr(sf_status_str(SfStatus::DegenerateCut)) };
    assert_eq!(text.to_str().unwrap(), "degenerate branch cut");
}

#[test]
fn orbit_handle_round_trip() {
    let c = atomic();
    let mut orbit = ptr::null_mut();
    assert_eq!(unsafe { sf_orbit_from_quantum(c.0, 1, 1, 1, &mut orbit) }, SfStatus::Ok);
    let mut g = SfGeometry::default();
    assert_eq!(unsafe { sf_orbit_geometry(orbit, &mut g) }, SfStatus::Ok);
    assert_eq!(g.semi_major, 4.0);
    assert!((g.eccentricity - 3f64.sqrt() / 2.0).abs() < 1e-15);
    assert!((g.semi_minor - 2.0).abs() < 1e-14);
    let mut s = SfTimeSample::default();
    assert_eq!(unsafe { sf_orbit_sample(orbit, 0.5 * g.period, &mut s) }, SfStatus::Ok);
    assert!((s.r - g.r_max).abs() < 1e-12);
    assert!(((s.kinetic + s.potential) / g.energy - 1.0).abs() < 1e-12);
    unsafe { sf_orbit_free(orbit) };

    let mut direct = ptr::null_mut();
    assert_eq!(unsafe { sf_orbit_new(c.0, -0.125, 1.0, 1, &mut direct) }, SfStatus::Ok);
    let mut h = SfGeometry::default();
    unsafe { sf_orbit_geometry(direct, &mut h) };
    assert_eq!(g, h);
    unsafe { sf_orbit_free(direct) };
    unsafe { sf_orbit_free(ptr::null_mut()) };
}

#[test]
fn turning_points_and_residues() {
    let c = atomic();
    let (mut lo, mut hi) = (0.0, 0.0);
    assert_eq!(unsafe { sf_turning_points(c.0, -0.125, 1.0, 1, &mut lo, &mut hi) }, SfStatus::Ok);
    assert!((lo - (4.0 - 12f64.sqrt())).abs() < 1e-14);
    assert!((hi - (4.0 + 12f64.sqrt())).abs() < 1e-14);
    let mut report = SfResidueReport::default();
    assert_eq!(unsafe { sf_cut_integral(lo, hi, SfResidueMode::Numeric as u32, &mut report) }, SfStatus::Ok);
    assert!((report.res_zero_im + 1.0).abs() < 1e-9);
    assert!((report.res_infinity_im - 2.0).abs() < 1e-9);
    assert!((report.cut_integral - 2.0 * std::f64::consts::PI).abs() < 1e-9);
    assert_eq!(unsafe { sf_cut_integral(2.0, 1.0, 0, &mut report) }, SfStatus::Domain);
}

#[test]
fn si_constants_and_spectrum() {
    let si = Constants(sf_constants_si());
    let mut alpha = 0.0;
    assert_eq!(unsafe { sf_fine_structure_constant(si.0, &mut alpha) }, SfStatus::Ok);
    assert!((1.0 / alpha - 137.035_999).abs() < 1e-6);
    let mut line = SfSpectralLine::default();
    assert_eq!(unsafe { sf_transition(si.0, 3, 2, 1, &mut line) }, SfStatus::Ok);
    assert!((line.wavelength * 1e9 / 656.28 - 1.0).abs() < 0.005);
    assert_eq!(unsafe { sf_transition(si.0, 2, 3, 1, &mut line) }, SfStatus::Domain);
}

#[test]
fn custom_and_file_constants() {
    let mut custom = ptr::null_mut();
    assert_eq!(unsafe { sf_constants_custom(1.0, 2.0, 1.0, 137.0, &mut custom) }, SfStatus::Ok);
    let mut v = SfConstantValues::default();
    assert_eq!(unsafe { sf_constants_values(custom, &mut v) }, SfStatus::Ok);
    assert_eq!(v.mass_electron, 2.0);
    assert_eq!(v.planck_h, 2.0 * std::f64::consts::PI);
    unsafe { sf_constants_free(custom) };
    let mut bad = ptr::null_mut();
    assert_eq!(unsafe { sf_constants_custom(-1.0, 1.0, 1.0, 1.0, &mut bad) }, SfStatus::InvalidArgument);
    assert!(bad.is_null());

    let mut file = tempfile::NamedTempFile::new().unwrap();
    writeln!(file, "hbar = 2 # doubled").unwrap();
    let path = CString::new(file.path().to_str().unwrap()).unwrap();
    let mut loaded = ptr::null_mut();
    let status = unsafe { sf_constants_from_file(path.as_ptr(), SfUnitSystem::Atomic as u32, &mut loaded) };
    assert_eq!(status, SfStatus::Ok);
    unsafe { sf_constants_values(loaded, &mut v) };
    assert_eq!((v.hbar, v.mass_electron), (2.0, 1.0));
    unsafe { sf_constants_free(loaded) };

    let status = unsafe { sf_constants_from_file(path.as_ptr(), SfUnitSystem::Custom as u32, &mut loaded) };
    assert_eq!(status, SfStatus::InvalidArgument);
    let missing = CString::new("/nonexistent/constants.txt").unwrap();
    let status = unsafe { sf_constants_from_file(missing.as_ptr(), 0, &mut loaded) };
    assert_eq!(status, SfStatus::ConstantsFile);
    assert_eq!(unsafe { sf_constants_from_file(ptr::null(), 0, &mut loaded) }, SfStatus::NullPointer);
}

#[test]
fn errors_are_per_thread() {
    let c = atomic();
    let mut e = 0.0;
    unsafe { sf_energy_closed(c.0, 1, 0, 1, &mut e) };
    assert!(!last_error().is_empty());
    let other = std::thread::spawn(last_error).join().unwrap();
    assert_eq!(other, "");
}
