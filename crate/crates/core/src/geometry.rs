//! Duplex uniform-planar-array geometry: exact spherical array responses,
//! far-field planar responses, the cascaded RIS response, and the closed-form
//! spacing bounds that decide when the planar-wavefront approximation is safe.
//!
//! Coordinate conventions (all lengths in meters, angles in radians):
//! * The TX array element `(0,0)` sits at the Cartesian origin; element
//!   `(n_z, n_y)` sits at `(0, n_y d, n_z d)`.
//! * The RX array is stacked above the TX array along the z-axis with gap
//!   `d0` between the top TX element and the bottom RX element, so RX element
//!   `(n_z, n_y)` sits at `(0, n_y d, D_t + n_z d)` with
//!   `D_t = d0 + (N_t^z - 1) d`. The same `D_t` is the global phase offset of
//!   the RX planar response, which keeps the spherical and planar models
//!   consistent with each other.
//! * Response vectors are flattened z-fastest: flat index `n_y * N_z + n_z`.
//! * Every response vector carries a `1/sqrt(N)` factor and has unit
//!   Euclidean norm; the cascaded RIS response is the entrywise product of
//!   two unit-norm responses and therefore has norm `1/sqrt(L)`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Result, SimError};
use crate::linalg::{cis, CVec};

/// Uniform planar array: `n_z x n_y` elements, spacing `d`, wavelength `λ`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UpaGeometry {
    n_z: usize,
    n_y: usize,
    spacing: f64,
    wavelength: f64,
}

impl UpaGeometry {
    pub fn new(n_z: usize, n_y: usize, spacing: f64, wavelength: f64) -> Result<Self> {
        if n_z < 1 || n_y < 1 {
            return Err(SimError::domain("UPA needs at least one element per axis"));
        }
        if !(spacing > 0.0) || !(wavelength > 0.0) {
            return Err(SimError::domain("UPA spacing and wavelength must be positive"));
        }
        Ok(UpaGeometry { n_z, n_y, spacing, wavelength })
    }

    pub fn n_z(&self) -> usize {
        self.n_z
    }
    pub fn n_y(&self) -> usize {
        self.n_y
    }
    pub fn spacing(&self) -> f64 {
        self.spacing
    }
    pub fn wavelength(&self) -> f64 {
        self.wavelength
    }
    /// Total element count `N = n_z * n_y`.
    pub fn len(&self) -> usize {
        self.n_z * self.n_y
    }
    pub fn is_empty(&self) -> bool {
        false
    }
    /// Wave number `2π/λ`.
    pub fn wavenumber(&self) -> f64 {
        2.0 * PI / self.wavelength
    }

    /// Element index pairs `(n_z, n_y)` in flat (z-fastest) order.
    pub fn element_indices(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n_z = self.n_z;
        (0..self.len()).map(move |f| (f % n_z, f / n_z))
    }
}

/// TX and RX arrays of one full-duplex transceiver plus their separation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DuplexLayout {
    pub tx: UpaGeometry,
    pub rx: UpaGeometry,
    /// Gap between the top TX element and the bottom RX element.
    pub d0: f64,
    /// Relative tilt of the RX array. Only `omega = 0` is supported.
    pub omega: f64,
}

impl DuplexLayout {
    pub fn new(tx: UpaGeometry, rx: UpaGeometry, d0: f64, omega: f64) -> Result<Self> {
        if !(d0 >= 0.0) {
            return Err(SimError::domain("array separation d0 must be nonnegative"));
        }
        if tx.wavelength != rx.wavelength {
            return Err(SimError::domain("TX and RX arrays must share a wavelength"));
        }
        if tx.spacing != rx.spacing {
            return Err(SimError::domain("TX and RX arrays must share the element spacing"));
        }
        Ok(DuplexLayout { tx, rx, d0, omega })
    }

    /// z-offset of the RX array base: `D_t = d0 + (N_t^z - 1) d`.
    pub fn rx_base_offset(&self) -> f64 {
        self.d0 + (self.tx.n_z - 1) as f64 * self.tx.spacing
    }

    fn require_zero_tilt(&self) -> Result<()> {
        if self.omega != 0.0 {
            return Err(SimError::Unsupported(
                "tilted RX arrays (omega != 0) are not supported".into(),
            ));
        }
        Ok(())
    }
}

/// Directional cosine pair `(Ψ^ele, Ψ^azi)`, the quantities the dictionaries
/// sample. `Ψ^ele = cos(ψ^ele)`, `Ψ^azi = sin(ψ^ele) sin(ψ^azi)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DirCosines {
    pub psi_ele: f64,
    pub psi_azi: f64,
}

impl DirCosines {
    pub fn new(psi_ele: f64, psi_azi: f64) -> Result<Self> {
        if psi_ele.abs() > 1.0 || psi_azi.abs() > 1.0 {
            return Err(SimError::domain(format!(
                "directional cosines ({psi_ele}, {psi_azi}) outside [-1, 1]"
            )));
        }
        Ok(DirCosines { psi_ele, psi_azi })
    }

    /// Convert physical elevation/azimuth angles (radians) to cosines.
    pub fn from_physical(psi_ele: f64, psi_azi: f64) -> Self {
        DirCosines {
            psi_ele: psi_ele.cos(),
            psi_azi: psi_ele.sin() * psi_azi.sin(),
        }
    }
}

/// Point source at distance `range` from the global origin, seen under
/// physical elevation/azimuth angles.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SourcePosition {
    pub range: f64,
    pub elevation: f64,
    pub azimuth: f64,
}

impl SourcePosition {
    pub fn new(range: f64, elevation: f64, azimuth: f64) -> Result<Self> {
        if !(range > 0.0) {
            return Err(SimError::domain("source range must be positive"));
        }
        Ok(SourcePosition { range, elevation, azimuth })
    }

    /// Cartesian coordinates in the global frame.
    pub fn cartesian(&self) -> [f64; 3] {
        let (se, ce) = self.elevation.sin_cos();
        let (sa, ca) = self.azimuth.sin_cos();
        [self.range * se * ca, self.range * se * sa, self.range * ce]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArraySide {
    Tx,
    Rx,
}

fn element_position(geom: &UpaGeometry, base_z: f64, iz: usize, iy: usize) -> [f64; 3] {
    [0.0, iy as f64 * geom.spacing, base_z + iz as f64 * geom.spacing]
}

/// Spherical array response toward an arbitrary point, with phase reference
/// `ref_range`: entry `(n_z, n_y)` is `(1/√N) e^{j k (ref_range - R_n)}` where
/// `R_n` is the exact Euclidean distance from the point to that element.
pub(crate) fn spherical_from_point(
    geom: &UpaGeometry,
    base_z: f64,
    point: [f64; 3],
    ref_range: f64,
) -> CVec {
    let k = geom.wavenumber();
    let norm = 1.0 / (geom.len() as f64).sqrt();
    let mut v = CVec::zeros(geom.len());
    for (flat, (iz, iy)) in geom.element_indices().enumerate() {
        let e = element_position(geom, base_z, iz, iy);
        let dist = ((point[0] - e[0]).powi(2)
            + (point[1] - e[1]).powi(2)
            + (point[2] - e[2]).powi(2))
        .sqrt();
        v[flat] = cis(k * (ref_range - dist)).scale(norm);
    }
    v
}

/// Exact spherical array response of the TX or RX array toward a source,
/// with no far-field approximation.
pub fn spherical_response(
    geom: &UpaGeometry,
    src: &SourcePosition,
    side: ArraySide,
    layout: &DuplexLayout,
) -> Result<CVec> {
    if !(src.range > 0.0) {
        return Err(SimError::domain("source range must be positive"));
    }
    let base_z = match side {
        ArraySide::Tx => 0.0,
        ArraySide::Rx => {
            layout.require_zero_tilt()?;
            layout.rx_base_offset()
        }
    };
    Ok(spherical_from_point(geom, base_z, src.cartesian(), src.range))
}

/// Planar response without the `[-1,1]` validation; cascaded angles live in
/// `[-2,2]` and only enter through the complex exponential.
pub(crate) fn planar_unchecked(geom: &UpaGeometry, psi_ele: f64, psi_azi: f64) -> CVec {
    let kd = geom.wavenumber() * geom.spacing;
    let norm = 1.0 / (geom.len() as f64).sqrt();
    let mut v = CVec::zeros(geom.len());
    for (flat, (iz, iy)) in geom.element_indices().enumerate() {
        v[flat] = cis(kd * (iy as f64 * psi_azi + iz as f64 * psi_ele)).scale(norm);
    }
    v
}

/// Far-field planar array response at the given directional cosines.
pub fn planar_response(geom: &UpaGeometry, dc: &DirCosines) -> Result<CVec> {
    if dc.psi_ele.abs() > 1.0 || dc.psi_azi.abs() > 1.0 {
        return Err(SimError::domain("directional cosines outside [-1, 1]"));
    }
    Ok(planar_unchecked(geom, dc.psi_ele, dc.psi_azi))
}

/// RX planar response: the RX array's own planar response times the global
/// phase `e^{j k D_t Ψ^ele}` induced by the array offset along z.
pub fn rx_planar_response(layout: &DuplexLayout, dc: &DirCosines) -> Result<CVec> {
    layout.require_zero_tilt()?;
    let base = planar_response(&layout.rx, dc)?;
    let phase = cis(layout.rx.wavenumber() * layout.rx_base_offset() * dc.psi_ele);
    Ok(base.map(|z| z * phase))
}

/// Cascaded RIS response `a(out) ⊙ a*(in)`: the per-element coefficient a
/// reflection picks up between an arrival and a departure direction. Equals
/// `(1/√L) a(out - in)`, so its norm is `1/√L`, not 1.
pub fn cascaded_ris_response(
    ris: &UpaGeometry,
    out_dc: &DirCosines,
    in_dc: &DirCosines,
) -> Result<CVec> {
    let a_out = planar_response(ris, out_dc)?;
    let a_in = planar_response(ris, in_dc)?;
    Ok(CVec::from_fn(ris.len(), |i, _| a_out[i] * a_in[i].conj()))
}

/// Unit-norm planar response at a cascaded angle pair in `[-2, 2]`.
pub fn cascaded_par(ris: &UpaGeometry, ele_diff: f64, azi_diff: f64) -> Result<CVec> {
    if ele_diff.abs() > 2.0 || azi_diff.abs() > 2.0 {
        return Err(SimError::domain("cascaded angles outside [-2, 2]"));
    }
    Ok(planar_unchecked(ris, ele_diff, azi_diff))
}

/// Wrap a cascaded cosine into `[-1, 1)`. At half-wavelength spacing the
/// planar response is 2-periodic in each cosine, so the wrapped angle indexes
/// the same atom.
pub fn wrap_cosine(x: f64) -> f64 {
    let w = x - 2.0 * ((x + 1.0) / 2.0).floor();
    if w >= 1.0 {
        w - 2.0
    } else {
        w
    }
}

fn check_matched_arrays(tx: &UpaGeometry, rx: &UpaGeometry) -> Result<()> {
    if tx.wavelength != rx.wavelength || tx.spacing != rx.spacing {
        return Err(SimError::domain(
            "spacing bound assumes both arrays share wavelength and spacing",
        ));
    }
    Ok(())
}

/// Largest TX-RX separation for which the planar-wavefront phase error stays
/// below `delta_max` for every scatterer at distance `>= r_min`:
/// `D_max = sqrt(λ/π · R_min · δ_max - (N_r^y d)^2) - N_t^z d - N_r^z d`.
/// May be negative; the caller interprets negativity as "no admissible
/// spacing".
pub fn max_duplex_spacing(
    tx: &UpaGeometry,
    rx: &UpaGeometry,
    r_min: f64,
    delta_max: f64,
) -> Result<f64> {
    check_matched_arrays(tx, rx)?;
    if !(r_min > 0.0) || !(delta_max > 0.0) {
        return Err(SimError::domain("r_min and delta_max must be positive"));
    }
    let d = tx.spacing;
    let lam = tx.wavelength;
    let radicand = lam / PI * r_min * delta_max - (rx.n_y as f64 * d).powi(2);
    if radicand < 0.0 {
        return Err(SimError::domain(format!(
            "λ/π·R_min·δ_max = {:.6e} is smaller than (N_r^y d)^2 = {:.6e}; \
             the RX aperture alone already exceeds the phase budget",
            lam / PI * r_min * delta_max,
            (rx.n_y as f64 * d).powi(2)
        )));
    }
    Ok(radicand.sqrt() - tx.n_z as f64 * d - rx.n_z as f64 * d)
}

/// Smallest scatterer distance at which the layout's separation `d0` is
/// admissible for phase budget `delta_max`:
/// `R_min = (π/(λ δ_max)) ((N_r^y d)^2 + (D_0 + N_t^z d + N_r^z d)^2)`.
pub fn min_scatter_distance(layout: &DuplexLayout, delta_max: f64) -> Result<f64> {
    if !(delta_max > 0.0) {
        return Err(SimError::domain("delta_max must be positive"));
    }
    let d = layout.tx.spacing;
    let lam = layout.tx.wavelength;
    let y_term = (layout.rx.n_y as f64 * d).powi(2);
    let z_term = (layout.d0 + layout.tx.n_z as f64 * d + layout.rx.n_z as f64 * d).powi(2);
    Ok(PI / (lam * delta_max) * (y_term + z_term))
}

/// Worst-case residual phase error of the planar approximation at range `r`:
/// `(2π/λ) ((N_r^y d)^2 + (D_0 + N_t^z d + N_r^z d)^2) / (2 r)`.
pub fn phase_error_bound(layout: &DuplexLayout, r: f64) -> Result<f64> {
    if !(r > 0.0) {
        return Err(SimError::domain("range must be positive"));
    }
    let d = layout.tx.spacing;
    let y_term = (layout.rx.n_y as f64 * d).powi(2);
    let z_term = (layout.d0 + layout.tx.n_z as f64 * d + layout.rx.n_z as f64 * d).powi(2);
    Ok(layout.tx.wavenumber() * (y_term + z_term) / (2.0 * r))
}
