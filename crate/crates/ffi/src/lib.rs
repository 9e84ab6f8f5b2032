//! C ABI over `qetsim`.
//!
//! Every fallible function returns a [`QetStatus`] and writes its result
//! through an out-pointer. On failure, [`qet_last_error`] returns a message
//! for the calling thread. Fields and dip tracks are opaque handles owned by
//! the caller and released with their `_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;

use qetsim::curvature::{
    gated_pulse, simulate_qix_chain, track_dip_with, CurvatureMap, DipTrack, GatedPulseSpec, QixChainConfig,
    SignConvention,
};
use qetsim::model::{make_grid_st, Grid1D, PhysicalConstants, ScalarField, UnitMode};
use qetsim::observables::{self, ClockSpec, InterferometerSpec};
use qetsim::snr::{self, NoiseFloorTable3, SnrParameters};
use qetsim::stress_energy::{self, Architecture, ArrayConfig, GaussianPulse};
use qetsim::Error;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QetStatus {
    Ok = 0,
    NullPointer = 1,
    Validation = 2,
    NonFinite = 3,
    Io = 4,
    Config = 5,
    Panic = 6,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QetUnits {
    Si = 0,
    Natural = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QetSign {
    DipNegative = 0,
    LiteralEqNine = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QetArchitecture {
    SinglePair = 0,
    Uncoordinated = 1,
    Synchronized = 2,
}

/// Inputs of the parametric SNR model; see `qet_snr_params_default`.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QetSnrParams {
    pub n_units: f64,
    pub spacing: f64,
    pub finesse: f64,
    pub rep_rate: f64,
    pub squeeze: f64,
    pub g_ent: f64,
    pub g_shape: f64,
    pub g_multi: f64,
    pub g_noise: f64,
    pub ref_n: f64,
    pub ref_d: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QetNoiseFloors {
    pub detector_floor: f64,
    pub technical_floor: f64,
    pub gap_coeff: f64,
}

/// Opaque sampled field (line or space-time).
pub struct QetField(ScalarField);

/// Opaque dip track.
pub struct QetTrack(DipTrack);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

enum Fail {
    Null(&'static str),
    Core(Error),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Core(e)
    }
}

fn status_of(e: &Error) -> QetStatus {
    match e {
        Error::Validation { .. } => QetStatus::Validation,
        Error::NonFinite { .. } => QetStatus::NonFinite,
        Error::Io { .. } => QetStatus::Io,
        Error::ConfigParse { .. } | Error::ConfigSchema { .. } => QetStatus::Config,
    }
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> QetStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => QetStatus::Ok,
        Ok(Err(Fail::Null(what))) => {
            set_error(format!("null pointer: {what}"));
            QetStatus::NullPointer
        }
        Ok(Err(Fail::Core(e))) => {
            set_error(e.to_string());
            status_of(&e)
        }
        Err(_) => {
            set_error("internal panic".into());
            QetStatus::Panic
        }
    }
}

/// # Safety
/// `out` must be null or valid for a write of `T`.
unsafe fn put<T>(out: *mut T, value: T, what: &'static str) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail::Null(what));
    }
    out.write(value);
    Ok(())
}

/// # Safety
/// `p` must be null or point to a live `T`.
unsafe fn get<'a, T>(p: *const T, what: &'static str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or(Fail::Null(what))
}

fn finite(location: &str, v: f64) -> Result<f64, Fail> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Fail::Core(Error::NonFinite {
            location: location.to_string(),
            value: v,
        }))
    }
}

fn constants(units: QetUnits) -> PhysicalConstants {
    match units {
        QetUnits::Si => PhysicalConstants::for_mode(UnitMode::Si),
        QetUnits::Natural => PhysicalConstants::for_mode(UnitMode::Natural),
    }
}

fn sign(s: QetSign) -> SignConvention {
    match s {
        QetSign::DipNegative => SignConvention::DipNegative,
        QetSign::LiteralEqNine => SignConvention::LiteralEqNine,
    }
}

impl From<QetSnrParams> for SnrParameters {
    fn from(p: QetSnrParams) -> Self {
        SnrParameters {
            n_units: p.n_units,
            spacing: p.spacing,
            finesse: p.finesse,
            rep_rate: p.rep_rate,
            squeeze: p.squeeze,
            g_ent: p.g_ent,
            g_shape: p.g_shape,
            g_multi: p.g_multi,
            g_noise: p.g_noise,
            ref_n: p.ref_n,
            ref_d: p.ref_d,
        }
    }
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn qet_version() -> *const c_char {
    static V: &str = concat!(env!("CARGO_PKG_VERSION"), "\0");
    V.as_ptr().cast()
}

/// Message for the last failed call on this thread, or NULL. The pointer is
/// valid until the next qetsim call on the same thread.
#[no_mangle]
pub extern "C" fn qet_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(std::ptr::null(), |c| c.as_ptr()))
}

/// Reference-point parameter set (N = 1e3, d = 0.05 m, F = 1e4, ...).
#[no_mangle]
pub extern "C" fn qet_snr_params_default() -> QetSnrParams {
    let p = SnrParameters::default();
    QetSnrParams {
        n_units: p.n_units,
        spacing: p.spacing,
        finesse: p.finesse,
        rep_rate: p.rep_rate,
        squeeze: p.squeeze,
        g_ent: p.g_ent,
        g_shape: p.g_shape,
        g_multi: p.g_multi,
        g_noise: p.g_noise,
        ref_n: p.ref_n,
        ref_d: p.ref_d,
    }
}

#[no_mangle]
pub extern "C" fn qet_noise_floors_default() -> QetNoiseFloors {
    let n = NoiseFloorTable3::default();
    QetNoiseFloors {
        detector_floor: n.detector_floor,
        technical_floor: n.technical_floor,
        gap_coeff: n.gap_coeff,
    }
}

/// Gaussian energy density `-eps*exp(...)` at `(x, t)`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qet_gaussian_t00(
    epsilon: f64,
    x0: f64,
    t0: f64,
    sigma: f64,
    tau: f64,
    x: f64,
    t: f64,
    out: *mut f64,
) -> QetStatus {
    guard(|| {
        let p = GaussianPulse::new(epsilon, x0, t0, sigma, tau)?;
        put(out, finite("t00", stress_energy::eval_gaussian_t00(&p, x, t))?, "out")
    })
}

fn noise_opt(noise: *const QetNoiseFloors) -> Option<NoiseFloorTable3> {
    // SAFETY: caller contract, null means "no noise floors".
    unsafe { noise.as_ref() }.map(|n| NoiseFloorTable3 {
        detector_floor: n.detector_floor,
        technical_floor: n.technical_floor,
        gap_coeff: n.gap_coeff,
    })
}

/// Parametric SNR. `noise` may be NULL to disable the noise floors.
///
/// # Safety
/// `params` must be valid; `noise` null or valid; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qet_snr_parametric(
    params: *const QetSnrParams,
    noise: *const QetNoiseFloors,
    out: *mut f64,
) -> QetStatus {
    guard(|| {
        let p: SnrParameters = (*get(params, "params")?).into();
        let v = snr::snr_parametric(&p, noise_opt(noise).as_ref())?;
        put(out, finite("snr", v)?, "out")
    })
}

/// SNR relative to the reference point `(ref_n, ref_d)`.
///
/// # Safety
/// As for `qet_snr_parametric`.
#[no_mangle]
pub unsafe extern "C" fn qet_snr_normalized(
    params: *const QetSnrParams,
    noise: *const QetNoiseFloors,
    out: *mut f64,
) -> QetStatus {
    guard(|| {
        let p: SnrParameters = (*get(params, "params")?).into();
        let v = snr::snr_normalized(&p, noise_opt(noise).as_ref())?;
        put(out, finite("snr", v)?, "out")
    })
}

/// `N*dR0/sigma_R`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qet_snr_curvature(n_units: f64, delta_r0: f64, sigma_r: f64, out: *mut f64) -> QetStatus {
    guard(|| {
        put(
            out,
            finite("snr", snr::snr_curvature(n_units, delta_r0, sigma_r)?)?,
            "out",
        )
    })
}

/// Array size at which the curvature SNR reaches 1.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qet_threshold_units(delta_r0: f64, sigma_r: f64, out: *mut f64) -> QetStatus {
    guard(|| put(out, snr::threshold_units(delta_r0, sigma_r)?, "out"))
}

/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qet_phase_shift(delta_r: f64, arm_length: f64, wavelength: f64, out: *mut f64) -> QetStatus {
    guard(|| {
        let spec = InterferometerSpec::new(arm_length, wavelength, arm_length)?;
        put(
            out,
            finite("phase shift", observables::phase_shift(delta_r, &spec))?,
            "out",
        )
    })
}

/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qet_clock_drift(delta_r: f64, extent: f64, duration: f64, out: *mut f64) -> QetStatus {
    guard(|| {
        let spec = ClockSpec::new(extent, duration, 1e-18)?;
        put(
            out,
            finite("clock drift", observables::clock_drift(delta_r, &spec))?,
            "out",
        )
    })
}

/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qet_clock_freq_shift(delta_r: f64, length: f64, units: QetUnits, out: *mut f64) -> QetStatus {
    guard(|| {
        let v = observables::clock_freq_shift(delta_r, length, &constants(units));
        put(out, finite("clock frequency shift", v)?, "out")
    })
}

/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qet_strain(delta_r: f64, length: f64, out: *mut f64) -> QetStatus {
    guard(|| put(out, finite("strain", observables::strain(delta_r, length))?, "out"))
}

/// Time-gated pulse `-s*N*dR0*exp(-(t-t0)^2/2 sigma_t^2)`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qet_gated_pulse(
    n_units: usize,
    delta_r0: f64,
    t0: f64,
    sigma_t: f64,
    sign_convention: QetSign,
    t: f64,
    out: *mut f64,
) -> QetStatus {
    guard(|| {
        let spec = GatedPulseSpec::new(n_units, delta_r0, t0, sigma_t)?;
        put(
            out,
            finite("gated pulse", gated_pulse(&spec, sign(sign_convention), t))?,
            "out",
        )
    })
}

/// Static curvature profile of a source array on `[x_min, x_max]`.
///
/// # Safety
/// `out` must be valid for writes; the handle is released with `qet_field_free`.
#[no_mangle]
pub unsafe extern "C" fn qet_array_profile(
    architecture: QetArchitecture,
    n_units: usize,
    spacing: f64,
    epsilon: f64,
    sigma: f64,
    seed: u64,
    x_min: f64,
    x_max: f64,
    n_x: usize,
    units: QetUnits,
    sign_convention: QetSign,
    out: *mut *mut QetField,
) -> QetStatus {
    guard(|| {
        let arch = match architecture {
            QetArchitecture::SinglePair => Architecture::SinglePair,
            QetArchitecture::Uncoordinated => Architecture::Uncoordinated,
            QetArchitecture::Synchronized => Architecture::Synchronized,
        };
        let pulse = GaussianPulse::new(epsilon, 0.0, 0.0, sigma, 1.0)?;
        let cfg = ArrayConfig::new(arch, n_units, spacing, pulse, seed)?;
        let grid = Grid1D::new(x_min, x_max, n_x)?;
        let t00 = stress_energy::sample_array_t00(&cfg, &grid, 0.0)?;
        let dr = CurvatureMap::new(constants(units), sign(sign_convention)).static_curvature(&t00)?;
        put(out, Box::into_raw(Box::new(QetField(dr))), "out")
    })
}

/// Retarded curvature of a timed event chain in natural units. Grid rows are
/// time levels.
///
/// # Safety
/// `out` must be valid for writes; the handle is released with `qet_field_free`.
#[no_mangle]
pub unsafe extern "C" fn qet_qix_chain(
    n_events: usize,
    spacing: f64,
    sigma: f64,
    gate_interval: f64,
    epsilon: f64,
    x_min: f64,
    x_max: f64,
    n_x: usize,
    t_min: f64,
    t_max: f64,
    n_t: usize,
    out: *mut *mut QetField,
) -> QetStatus {
    guard(|| {
        let cfg = QixChainConfig::new(n_events, spacing, sigma, gate_interval, epsilon)?;
        let grid = make_grid_st(Grid1D::new(x_min, x_max, n_x)?, t_min, t_max, n_t)?;
        let field = simulate_qix_chain(&cfg, &grid)?;
        put(out, Box::into_raw(Box::new(QetField(field))), "out")
    })
}

/// Number of time rows (1 for a line field) and spatial columns.
///
/// # Safety
/// `field` must be a live handle; `n_t` and `n_x` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qet_field_shape(field: *const QetField, n_t: *mut usize, n_x: *mut usize) -> QetStatus {
    guard(|| {
        let f = &get(field, "field")?.0;
        let (rows, cols) = match f.space_time() {
            Some(g) => (g.n_t(), g.n_x()),
            None => (1, f.values().len()),
        };
        put(n_t, rows, "n_t")?;
        put(n_x, cols, "n_x")
    })
}

/// Copies the row-major values into `buf`, which must hold exactly
/// `n_t * n_x` doubles (`len`).
///
/// # Safety
/// `field` must be a live handle and `buf` valid for `len` writes.
#[no_mangle]
pub unsafe extern "C" fn qet_field_values(field: *const QetField, buf: *mut f64, len: usize) -> QetStatus {
    guard(|| {
        let v = get(field, "field")?.0.values();
        if buf.is_null() {
            return Err(Fail::Null("buf"));
        }
        if len != v.len() {
            return Err(Fail::Core(Error::Validation {
                what: "buffer length".into(),
                reason: format!("expected {} (got {len})", v.len()),
            }));
        }
        std::ptr::copy_nonoverlapping(v.as_ptr(), buf, len);
        Ok(())
    })
}

/// Smallest value of the field.
///
/// # Safety
/// `field` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qet_field_min(field: *const QetField, out: *mut f64) -> QetStatus {
    guard(|| {
        let f = &get(field, "field")?.0;
        put(out, f.min(), "out")
    })
}

/// Releases a field handle. NULL is ignored.
///
/// # Safety
/// `field` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qet_field_free(field: *mut QetField) {
    if !field.is_null() {
        drop(Box::from_raw(field));
    }
}

/// Tracks the per-slice minimum of a space-time field.
///
/// # Safety
/// `field` must be a live handle; `out` valid for writes. Release the track
/// with `qet_track_free`.
#[no_mangle]
pub unsafe extern "C" fn qet_track_dip(
    field: *const QetField,
    edge_fraction: f64,
    out: *mut *mut QetTrack,
) -> QetStatus {
    guard(|| {
        let track = track_dip_with(&get(field, "field")?.0, edge_fraction)?;
        put(out, Box::into_raw(Box::new(QetTrack(track))), "out")
    })
}

/// Fitted dip velocity; `has_velocity` is set to 0 when the fit is degenerate.
///
/// # Safety
/// `track` must be a live handle; out-pointers valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qet_track_velocity(
    track: *const QetTrack,
    velocity: *mut f64,
    has_velocity: *mut i32,
) -> QetStatus {
    guard(|| {
        let t = &get(track, "track")?.0;
        put(has_velocity, i32::from(t.velocity.is_some()), "has_velocity")?;
        put(velocity, t.velocity.unwrap_or(0.0), "velocity")
    })
}

/// # Safety
/// `track` must be a live handle; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qet_track_len(track: *const QetTrack, out: *mut usize) -> QetStatus {
    guard(|| put(out, get(track, "track")?.0.points.len(), "out"))
}

/// Copies the tracked points; each buffer must hold `len` doubles.
///
/// # Safety
/// `track` must be a live handle and each buffer valid for `len` writes.
#[no_mangle]
pub unsafe extern "C" fn qet_track_points(
    track: *const QetTrack,
    t: *mut f64,
    x_min: *mut f64,
    value_min: *mut f64,
    len: usize,
) -> QetStatus {
    guard(|| {
        let pts = &get(track, "track")?.0.points;
        if t.is_null() || x_min.is_null() || value_min.is_null() {
            return Err(Fail::Null("point buffers"));
        }
        if len != pts.len() {
            return Err(Fail::Core(Error::Validation {
                what: "buffer length".into(),
                reason: format!("expected {} (got {len})", pts.len()),
            }));
        }
        for (i, p) in pts.iter().enumerate() {
            t.add(i).write(p.t);
            x_min.add(i).write(p.x_min);
            value_min.add(i).write(p.value_min);
        }
        Ok(())
    })
}

/// Releases a track handle. NULL is ignored.
///
/// # Safety
/// `track` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qet_track_free(track: *mut QetTrack) {
    if !track.is_null() {
        drop(Box::from_raw(track));
    }
}

/// Runs a figure recipe, writing into `out_dir/<name>/`.
///
/// # Safety
/// Both arguments must be NUL-terminated UTF-8 strings.
#[no_mangle]
pub unsafe extern "C" fn qet_recipe_run(name: *const c_char, out_dir: *const c_char) -> QetStatus {
    guard(|| {
        if name.is_null() || out_dir.is_null() {
            return Err(Fail::Null("recipe arguments"));
        }
        let utf8 = |p: *const c_char, what: &str| {
            CStr::from_ptr(p).to_str().map_err(|_| {
                Fail::Core(Error::Validation {
                    what: what.into(),
                    reason: "not valid UTF-8".into(),
                })
            })
        };
        let name = utf8(name, "recipe name")?;
        let dir = utf8(out_dir, "output directory")?;
        qetsim::io::run_recipe(name, Path::new(dir))?;
        Ok(())
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn last_error() -> String {
        let p = qet_last_error();
        assert!(!p.is_null());
        unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
    }

    #[test]
    fn scalars_match_core() {
        let mut v = 0.0;
        unsafe {
            assert_eq!(qet_snr_curvature(10.0, 1e-36, 1e-35, &mut v), QetStatus::Ok);
            assert_eq!(v, snr::snr_curvature(10.0, 1e-36, 1e-35).unwrap());
            assert_eq!(qet_strain(2e-35, 1.0, &mut v), QetStatus::Ok);
            assert_eq!(v, 1e-35);
            let p = qet_snr_params_default();
            assert_eq!(qet_snr_normalized(&p, std::ptr::null(), &mut v), QetStatus::Ok);
            assert_eq!(v, 1.0);
            assert_eq!(
                qet_gaussian_t00(2.0, 0.0, 0.0, 1.0, 1.0, 0.0, 0.0, &mut v),
                QetStatus::Ok
            );
            assert_eq!(v, -2.0);
        }
        assert!(qet_last_error().is_null());
    }

    #[test]
    fn errors_set_status_and_message() {
        let mut v = 0.0;
        unsafe {
            assert_eq!(qet_snr_curvature(10.0, 1e-36, -1.0, &mut v), QetStatus::Validation);
            assert!(last_error().contains("sigma_r"));
            assert_eq!(qet_strain(1.0, 1.0, std::ptr::null_mut()), QetStatus::NullPointer);
            assert_eq!(qet_strain(1e300, 1e300, &mut v), QetStatus::NonFinite);
            let mut f = std::ptr::null_mut();
            assert_eq!(
                qet_field_shape(std::ptr::null(), std::ptr::null_mut(), std::ptr::null_mut()),
                QetStatus::NullPointer
            );
            let bad = CString::new("fig99").unwrap();
            let dir = CString::new("/tmp").unwrap();
            assert_eq!(qet_recipe_run(bad.as_ptr(), dir.as_ptr()), QetStatus::Validation);
            assert_eq!(
                qet_qix_chain(3, 1.0, 0.5, 0.375, 1.0, 0.0, 1.0, 16, 0.0, 1.0, 16, &mut f),
                QetStatus::Validation
            );
            assert!(f.is_null());
        }
    }

    #[test]
    fn field_and_track_handles() {
        unsafe {
            let mut f = std::ptr::null_mut();
            let st = qet_qix_chain(3, 1.0, 0.5, 0.375, 1.0, -2.5, 4.5, 64, -2.5, 3.25, 64, &mut f);
            assert_eq!(st, QetStatus::Ok, "{}", last_error());
            let (mut nt, mut nx) = (0, 0);
            assert_eq!(qet_field_shape(f, &mut nt, &mut nx), QetStatus::Ok);
            assert_eq!((nt, nx), (64, 64));
            let mut buf = vec![0.0; nt * nx];
            assert_eq!(qet_field_values(f, buf.as_mut_ptr(), buf.len()), QetStatus::Ok);
            assert_eq!(qet_field_values(f, buf.as_mut_ptr(), 3), QetStatus::Validation);
            let mut min = 0.0;
            qet_field_min(f, &mut min);
            assert_eq!(min, buf.iter().copied().fold(f64::INFINITY, f64::min));

            let mut t = std::ptr::null_mut();
            assert_eq!(qet_track_dip(f, 0.1, &mut t), QetStatus::Ok);
            let mut n = 0;
            qet_track_len(t, &mut n);
            let (mut ts, mut xs, mut vs) = (vec![0.0; n], vec![0.0; n], vec![0.0; n]);
            assert_eq!(
                qet_track_points(t, ts.as_mut_ptr(), xs.as_mut_ptr(), vs.as_mut_ptr(), n),
                QetStatus::Ok
            );
            let (mut v, mut has) = (0.0, 0);
            assert_eq!(qet_track_velocity(t, &mut v, &mut has), QetStatus::Ok);
            assert_eq!(has, 1);
            qet_track_free(t);
            qet_field_free(f);
            qet_field_free(std::ptr::null_mut());
        }
    }

    #[test]
    fn array_profile_peak() {
        unsafe {
            let mut f = std::ptr::null_mut();
            let st = qet_array_profile(
                QetArchitecture::SinglePair,
                1,
                0.0,
                1e-11,
                0.1,
                0,
                -1.0,
                1.0,
                201,
                QetUnits::Si,
                QetSign::DipNegative,
                &mut f,
            );
            assert_eq!(st, QetStatus::Ok);
            let mut min = 0.0;
            qet_field_min(f, &mut min);
            assert!((min + 1.677_434_547_828_348_3e-20).abs() < 1e-33);
            qet_field_free(f);
        }
    }

    #[test]
    fn version_string() {
        let v = unsafe { CStr::from_ptr(qet_version()) }.to_str().unwrap();
        assert_eq!(v, qetsim::VERSION);
    }
}
