//! Direct steady-state solve of the four-level master equation.
//!
//! The coherent part is generated from the rotating-frame Hamiltonian as a
//! commutator on the vectorised density matrix, so this path shares no
//! algebra with the closed-form response in [`crate::atomic`]. The
//! incoherent part uses the same relaxation rates: coherences decay at the
//! real parts of the complex rates, populations follow radiative decay and
//! the incoherent pump.

use nalgebra::{SMatrix, SVector};
use num_complex::Complex64;

use crate::atomic::{AtomicParams, DriveConfig};
use crate::error::{Error, Result};

const DIM: usize = 16;

/// Relative LU pivot below which the system is reported as singular.
pub const SINGULAR_PIVOT_RATIO: f64 = 1e-13;

/// Which incoherent processes act on the populations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum OracleModel {
    /// Decay and pump only; no collisional exchange between ground states.
    #[default]
    NoExchange,
    /// Adds exchange between the three ground states at rate `gamma_c`
    /// (each ground state loses `2 gamma_c rho_ii` and feeds the other two).
    GroundExchange,
}

/// 4x4 density matrix; levels are addressed 1-based as |1>..|4>.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DensityMatrix([[Complex64; 4]; 4]);

impl DensityMatrix {
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.0[i - 1][j - 1]
    }

    pub fn trace(&self) -> Complex64 {
        (0..4).map(|k| self.0[k][k]).sum()
    }

    /// Largest |rho_ij - conj(rho_ji)|.
    pub fn hermiticity_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..4 {
            for j in 0..4 {
                worst = worst.max((self.0[i][j] - self.0[j][i].conj()).norm());
            }
        }
        worst
    }

    pub fn populations(&self) -> [f64; 4] {
        [self.0[0][0].re, self.0[1][1].re, self.0[2][2].re, self.0[3][3].re]
    }
}

/// Steady state of the master equation without ground-state exchange.
pub fn steady_state_oracle(params: &AtomicParams, drive: &DriveConfig, probe: Complex64) -> Result<DensityMatrix> {
    steady_state_oracle_with(params, drive, probe, OracleModel::NoExchange)
}

pub fn steady_state_oracle_with(
    params: &AtomicParams,
    drive: &DriveConfig,
    probe: Complex64,
    model: OracleModel,
) -> Result<DensityMatrix> {
    if !(probe.re.is_finite() && probe.im.is_finite()) {
        return Err(Error::invalid("probe", "must be finite"));
    }
    let (system, rhs) = build_system(params, drive, probe, model);
    let lu = system.lu();
    let u = lu.u();
    let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
    for k in 0..DIM {
        let m = u[(k, k)].norm();
        lo = lo.min(m);
        hi = hi.max(m);
    }
    let pivot_ratio = if hi > 0.0 { lo / hi } else { 0.0 };
    if !(pivot_ratio > SINGULAR_PIVOT_RATIO) {
        return Err(Error::SingularSystem { pivot_ratio });
    }
    let x = lu.solve(&rhs).ok_or(Error::SingularSystem { pivot_ratio })?;

    let mut rho = [[Complex64::new(0.0, 0.0); 4]; 4];
    for (i, row) in rho.iter_mut().enumerate() {
        for (j, v) in row.iter_mut().enumerate() {
            *v = x[idx(i, j)];
        }
    }
    Ok(DensityMatrix(rho))
}

#[inline]
fn idx(i: usize, j: usize) -> usize {
    4 * i + j
}

type System = (SMatrix<Complex64, DIM, DIM>, SVector<Complex64, DIM>);

fn build_system(params: &AtomicParams, drive: &DriveConfig, probe: Complex64, model: OracleModel) -> System {
    let zero = Complex64::new(0.0, 0.0);
    let gamma = 1.0;
    let r = params.pump_rate;
    let gc = params.gamma_c;
    let (d1, d2, d3) = (drive.delta_probe, drive.delta_control, drive.delta_microwave);
    let (g, big_g, om) = (probe, drive.control, drive.microwave);

    // rotating-frame Hamiltonian (hbar = 1), levels 0..3 = |1>..|4>
    let mut h = [[zero; 4]; 4];
    h[0][0] = Complex64::new(d1 - d2, 0.0);
    h[1][1] = Complex64::new(d3, 0.0);
    h[3][3] = Complex64::new(-d2, 0.0);
    h[3][0] = -g;
    h[0][3] = -g.conj();
    h[3][2] = -big_g;
    h[2][3] = -big_g.conj();
    h[2][1] = -om;
    h[1][2] = -om.conj();

    // coherence decay rates
    let mut decay = [[0.0f64; 4]; 4];
    let mut set = |a: usize, b: usize, v: f64| {
        decay[a - 1][b - 1] = v;
        decay[b - 1][a - 1] = v;
    };
    set(2, 1, 0.5 * r + gc);
    set(2, 3, gc);
    set(2, 4, gamma);
    set(3, 1, 0.5 * r + gc);
    set(3, 4, gamma);
    set(4, 1, 0.5 * r + gamma);

    let mut m = SMatrix::<Complex64, DIM, DIM>::zeros();
    let minus_i = Complex64::new(0.0, -1.0);
    for i in 0..4 {
        for j in 0..4 {
            let row = idx(i, j);
            for k in 0..4 {
                m[(row, idx(k, j))] += minus_i * h[i][k];
                m[(row, idx(i, k))] -= minus_i * h[k][j];
            }
            if i != j {
                m[(row, row)] -= decay[i][j];
            }
        }
    }

    let p = |level: usize| idx(level - 1, level - 1);
    let mut add = |row: usize, col: usize, v: f64| m[(row, col)] += v;
    add(p(1), p(1), -r);
    add(p(1), p(4), r + gamma);
    add(p(2), p(4), gamma);
    add(p(3), p(4), gamma);
    if model == OracleModel::GroundExchange {
        for a in 1..=3 {
            for b in 1..=3 {
                if a != b {
                    add(p(b), p(a), gc);
                    add(p(a), p(a), -gc);
                }
            }
        }
    }
    // the |4> population equation is redundant; replace it with the trace
    for col in 0..DIM {
        m[(p(4), col)] = zero;
    }
    for level in 1..=4 {
        m[(p(4), p(level))] = Complex64::new(1.0, 0.0);
    }
    let mut rhs = SVector::<Complex64, DIM>::zeros();
    rhs[p(4)] = Complex64::new(1.0, 0.0);
    (m, rhs)
}
