//! Steady state of the density-matrix equations of motion.
//!
//! All sixteen entries rho_ij are unknowns, ordered row-major: unknown
//! `4*(i-1) + (j-1)` holds rho_ij. Row `k` of the assembled system is the
//! equation for the same unknown, except for the row of rho_44 which holds
//! the trace condition rho_11 + rho_22 + rho_33 + rho_44 = 1.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{solve_linear, LinearProblem};
use crate::model::{damping_table, DampingTable, SystemParams};

pub const DIM: usize = 16;

/// Row of the trace condition (the slot of rho_44).
pub const TRACE_ROW: usize = 15;

/// Position of rho_ij (1-based levels) in the unknown vector.
pub fn unknown_index(i: usize, j: usize) -> usize {
    debug_assert!((1..=4).contains(&i) && (1..=4).contains(&j));
    4 * (i - 1) + (j - 1)
}

/// Level pair of an unknown index.
pub fn unknown_pair(k: usize) -> (usize, usize) {
    (k / 4 + 1, k % 4 + 1)
}

type Term = ((usize, usize), Complex64);

/// Right-hand side of d(rho_ij)/dt as a list of (rho_kl, coefficient)
/// for the nine independent equations; conjugate equations are derived.
fn printed_equations(p: &SystemParams, d: &DampingTable) -> Vec<((usize, usize), Vec<Term>)> {
    let i = Complex64::i();
    let re = |x: f64| Complex64::new(x, 0.0);
    let (g41, g42, gp) = (re(p.g41), re(p.g42), re(p.g_p));
    let (d41, d42, dp) = (p.delta41, p.delta42, p.delta_p);
    let lam = p.lambda_pump;

    vec![
        (
            (1, 1),
            vec![
                ((1, 1), re(-2.0 * p.gamma13)),
                ((4, 4), re(2.0 * p.gamma41)),
                ((1, 4), -i * g41.conj()),
                ((4, 1), i * g41),
            ],
        ),
        (
            (2, 2),
            vec![
                ((2, 2), re(-2.0 * p.gamma23 - 2.0 * lam)),
                ((4, 4), re(2.0 * p.gamma42)),
                ((3, 3), re(2.0 * lam)),
                ((3, 2), i * gp.conj()),
                ((2, 3), -i * gp),
                ((2, 4), -i * g42.conj()),
                ((4, 2), i * g42),
            ],
        ),
        (
            (3, 3),
            vec![
                ((1, 1), re(2.0 * p.gamma13)),
                ((2, 2), re(2.0 * p.gamma23 + 2.0 * lam)),
                ((3, 3), re(-2.0 * lam)),
                ((3, 2), -i * gp.conj()),
                ((2, 3), i * gp),
            ],
        ),
        (
            (1, 2),
            vec![
                ((1, 2), -(re(d.gamma(1, 2)) + i * d41 - i * d42 + lam)),
                ((1, 4), -i * g42.conj()),
                ((1, 3), -i * gp),
                ((4, 2), i * g41),
            ],
        ),
        (
            (1, 3),
            vec![
                (
                    (1, 3),
                    -(re(d.gamma(1, 3)) + i * d41 - i * d42 - i * dp + lam),
                ),
                ((1, 2), -i * gp.conj()),
                ((4, 3), i * g41),
            ],
        ),
        (
            (1, 4),
            vec![
                ((1, 4), -(re(d.gamma(1, 4)) + i * d41)),
                ((1, 1), -i * g41),
                ((4, 4), i * g41),
                ((1, 2), -i * g42),
            ],
        ),
        (
            (2, 3),
            vec![
                ((2, 3), -(re(d.gamma(2, 3)) - i * dp + 2.0 * lam)),
                ((2, 2), -i * gp.conj()),
                ((3, 3), i * gp.conj()),
                ((4, 3), i * g42),
            ],
        ),
        (
            (2, 4),
            vec![
                ((2, 4), -(re(d.gamma(2, 4)) + i * d42 + lam)),
                ((2, 2), -i * g42),
                ((4, 4), i * g42),
                ((3, 4), i * gp.conj()),
                ((2, 1), -i * g41),
            ],
        ),
        (
            (3, 4),
            vec![
                ((3, 4), -(re(d.gamma(3, 4)) + i * dp + i * d42 + lam)),
                ((2, 4), i * gp),
                ((3, 1), -i * g41),
                ((3, 2), -i * g42),
            ],
        ),
    ]
}

/// Builds the 16x16 system for the steady state of `p`.
pub fn assemble(p: &SystemParams, d: &DampingTable) -> LinearProblem {
    let mut lp = LinearProblem::zeros(DIM);
    for ((ti, tj), terms) in printed_equations(p, d) {
        let row = unknown_index(ti, tj);
        for &((k, l), coeff) in &terms {
            *lp.a_mut(row, unknown_index(k, l)) += coeff;
        }
        if ti != tj {
            // d(rho_ji)/dt is the complex conjugate of d(rho_ij)/dt
            let row = unknown_index(tj, ti);
            for &((k, l), coeff) in &terms {
                *lp.a_mut(row, unknown_index(l, k)) += coeff.conj();
            }
        }
    }
    for lvl in 1..=4 {
        *lp.a_mut(TRACE_ROW, unknown_index(lvl, lvl)) = Complex64::new(1.0, 0.0);
    }
    lp.rhs_mut()[TRACE_ROW] = Complex64::new(1.0, 0.0);
    lp
}

/// A 4x4 density matrix, indexed with 1-based levels through [`DensityMatrix::get`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityMatrix {
    rho: [[Complex64; 4]; 4],
}

impl DensityMatrix {
    pub fn from_entries(rho: [[Complex64; 4]; 4]) -> Self {
        DensityMatrix { rho }
    }

    /// Diagonal matrix with the given populations of |1>..|4>.
    pub fn diagonal(pops: [f64; 4]) -> Self {
        let mut rho = [[Complex64::new(0.0, 0.0); 4]; 4];
        for (k, p) in pops.iter().enumerate() {
            rho[k][k] = Complex64::new(*p, 0.0);
        }
        DensityMatrix { rho }
    }

    fn from_unknowns(x: &[Complex64]) -> Self {
        let mut rho = [[Complex64::new(0.0, 0.0); 4]; 4];
        for (k, v) in x.iter().enumerate() {
            rho[k / 4][k % 4] = *v;
        }
        DensityMatrix { rho }
    }

    pub fn to_unknowns(&self) -> Vec<Complex64> {
        self.rho.iter().flatten().copied().collect()
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.rho[i - 1][j - 1]
    }

    /// The probe coherence rho_23.
    pub fn rho23(&self) -> Complex64 {
        self.get(2, 3)
    }

    pub fn populations(&self) -> [f64; 4] {
        [0, 1, 2, 3].map(|k| self.rho[k][k].re)
    }

    pub fn trace(&self) -> Complex64 {
        (0..4).map(|k| self.rho[k][k]).sum()
    }

    /// Largest |rho_ij - conj(rho_ji)|.
    pub fn hermiticity_error(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..4 {
            for j in 0..4 {
                worst = worst.max((self.rho[i][j] - self.rho[j][i].conj()).norm());
            }
        }
        worst
    }
}

/// Solves for the steady state of `p`.
///
/// Fails with [`Error::Trapped`] when gamma13, g41 and lambda all vanish,
/// since then level |3> is a trap and the stationary state is not unique in
/// general. Otherwise propagates [`Error::Singular`] from the linear solver.
pub fn steady_state(p: &SystemParams) -> Result<DensityMatrix> {
    p.check()?;
    if p.gamma13 == 0.0 && p.g41 == 0.0 && p.lambda_pump == 0.0 {
        return Err(Error::Trapped);
    }
    let lp = assemble(p, &damping_table(p));
    let x = solve_linear(&lp)?;
    Ok(DensityMatrix::from_unknowns(&x))
}

/// Largest deviation from stationarity: the max norm of all sixteen
/// equation right-hand sides at `rho`, with the closure measured as |tr(rho) - 1|.
pub fn residual(p: &SystemParams, rho: &DensityMatrix) -> f64 {
    let lp = assemble(p, &damping_table(p));
    let x = rho.to_unknowns();
    lp.apply(&x)
        .iter()
        .zip(lp.rhs())
        .map(|(ax, b)| (ax - b).norm())
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    type M4 = [[Complex64; 4]; 4];

    fn zero() -> M4 {
        [[Complex64::new(0.0, 0.0); 4]; 4]
    }

    fn mul(a: &M4, b: &M4) -> M4 {
        let mut out = zero();
        for i in 0..4 {
            for j in 0..4 {
                out[i][j] = (0..4).map(|k| a[i][k] * b[k][j]).sum();
            }
        }
        out
    }

    fn dagger(a: &M4) -> M4 {
        let mut out = zero();
        for i in 0..4 {
            for j in 0..4 {
                out[i][j] = a[j][i].conj();
            }
        }
        out
    }

    fn ket_bra(i: usize, j: usize, amp: f64) -> M4 {
        let mut m = zero();
        m[i - 1][j - 1] = Complex64::new(amp, 0.0);
        m
    }

    /// Independent route: -i[H, rho] + sum_k D[L_k] rho, with H and L_k
    /// written down from the level scheme rather than from the printed
    /// component equations.
    fn lindblad_rhs(p: &SystemParams, rho: &M4) -> M4 {
        let c = |x: f64| Complex64::new(x, 0.0);
        let mut h = zero();
        // couplings -(g41|4><1| + g42|4><2| + gp|2><3|) + h.c.
        for &(a, b, g) in &[(4, 1, p.g41), (4, 2, p.g42), (2, 3, p.g_p)] {
            h[a - 1][b - 1] -= c(g);
            h[b - 1][a - 1] -= c(g);
        }
        // level energies in the rotating frame
        h[0][0] = c(p.delta41);
        h[1][1] = c(p.delta42);
        h[2][2] = c(p.delta42 + p.delta_p);

        let hr = mul(&h, rho);
        let rh = mul(rho, &h);
        let mut out = zero();
        for i in 0..4 {
            for j in 0..4 {
                out[i][j] = -Complex64::i() * (hr[i][j] - rh[i][j]);
            }
        }
        let jumps = [
            ket_bra(1, 4, (2.0 * p.gamma41).sqrt()),
            ket_bra(2, 4, (2.0 * p.gamma42).sqrt()),
            ket_bra(3, 2, (2.0 * p.gamma23).sqrt()),
            ket_bra(3, 1, (2.0 * p.gamma13).sqrt()),
            ket_bra(3, 2, (2.0 * p.lambda_pump).sqrt()),
            ket_bra(2, 3, (2.0 * p.lambda_pump).sqrt()),
        ];
        for l in &jumps {
            let ld = dagger(l);
            let lrl = mul(&mul(l, rho), &ld);
            let ldl = mul(&ld, l);
            let a = mul(&ldl, rho);
            let b = mul(rho, &ldl);
            for i in 0..4 {
                for j in 0..4 {
                    out[i][j] += lrl[i][j] - 0.5 * (a[i][j] + b[i][j]);
                }
            }
        }
        out
    }

    fn random_params(rng: &mut ChaCha8Rng) -> SystemParams {
        SystemParams {
            g41: rng.gen_range(0.0..2.0),
            g42: rng.gen_range(0.0..6.0),
            g_p: rng.gen_range(0.0..1.0),
            delta41: rng.gen_range(-3.0..3.0),
            delta42: rng.gen_range(-3.0..3.0),
            delta_p: rng.gen_range(-5.0..5.0),
            gamma41: rng.gen_range(0.1..1.5),
            gamma42: rng.gen_range(0.1..1.5),
            gamma23: rng.gen_range(0.05..1.0),
            gamma13: rng.gen_range(0.0..0.5),
            lambda_pump: rng.gen_range(0.0..0.5),
        }
    }

    fn random_matrix(rng: &mut ChaCha8Rng) -> M4 {
        let mut m = zero();
        for row in m.iter_mut() {
            for v in row.iter_mut() {
                *v = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            }
        }
        m
    }

    #[test]
    fn rows_match_lindblad_generator() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let p = random_params(&mut rng);
            let lp = assemble(&p, &damping_table(&p));
            let rho = random_matrix(&mut rng);
            let x: Vec<Complex64> = rho.iter().flatten().copied().collect();
            let ax = lp.apply(&x);
            let reference = lindblad_rhs(&p, &rho);
            for (k, row) in ax.iter().enumerate() {
                if k == TRACE_ROW {
                    continue;
                }
                let (i, j) = unknown_pair(k);
                let diff = (row - reference[i - 1][j - 1]).norm();
                assert!(diff < 1e-12, "row ({i},{j}) differs by {diff}");
            }
        }
    }

    #[test]
    fn populations_rows_conserve_trace() {
        // rows 11 + 22 + 33 plus the implied d(rho44)/dt vanish for any rho
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let p = random_params(&mut rng);
            let lp = assemble(&p, &damping_table(&p));
            let rho = random_matrix(&mut rng);
            let x: Vec<Complex64> = rho.iter().flatten().copied().collect();
            let ax = lp.apply(&x);
            let rho44_dot = lindblad_rhs(&p, &rho)[3][3];
            let sum = ax[unknown_index(1, 1)]
                + ax[unknown_index(2, 2)]
                + ax[unknown_index(3, 3)]
                + rho44_dot;
            assert!(sum.norm() < 1e-12);
        }
    }

    #[test]
    fn rho13_diagonal_coefficient() {
        let p = SystemParams {
            delta41: 0.3,
            delta42: -0.2,
            delta_p: 0.7,
            gamma13: 0.05,
            lambda_pump: 0.01,
            ..SystemParams::spike()
        };
        let d = damping_table(&p);
        let lp = assemble(&p, &d);
        let k = unknown_index(1, 3);
        let want = -Complex64::new(d.gamma(1, 3) + 0.01, 0.3 + 0.2 - 0.7);
        assert!((lp.a(k, k) - want).norm() < 1e-15);
        // rho23 carries twice the pump damping
        let k = unknown_index(2, 3);
        assert!((lp.a(k, k) - (-Complex64::new(0.14 + 0.02, -0.7))).norm() < 1e-15);
    }

    #[test]
    fn trace_row_layout() {
        let lp = assemble(
            &SystemParams::doublet(),
            &damping_table(&SystemParams::doublet()),
        );
        for k in 0..DIM {
            let (i, j) = unknown_pair(k);
            let want = if i == j { 1.0 } else { 0.0 };
            assert_eq!(lp.a(TRACE_ROW, k), Complex64::new(want, 0.0));
        }
        assert_eq!(lp.rhs()[TRACE_ROW], Complex64::new(1.0, 0.0));
        assert!(lp.rhs()[..TRACE_ROW].iter().all(|b| b.norm() == 0.0));
    }

    #[test]
    fn empty_dynamics_is_singular() {
        let p = SystemParams {
            g41: 0.0,
            g42: 0.0,
            g_p: 0.0,
            gamma41: 0.0,
            gamma42: 0.0,
            gamma23: 0.0,
            gamma13: 0.0,
            lambda_pump: 0.0,
            ..SystemParams::doublet()
        };
        let lp = assemble(&p, &damping_table(&p));
        assert_eq!(solve_linear(&lp).unwrap_err().code(), "SINGULAR");
        assert_eq!(steady_state(&p).unwrap_err(), Error::Trapped);
    }

    #[test]
    fn trapped_configuration() {
        let p = SystemParams {
            gamma13: 0.0,
            ..SystemParams::doublet()
        };
        assert_eq!(steady_state(&p).unwrap_err().code(), "TRAPPED");
    }

    #[test]
    fn undriven_decays_to_ground() {
        let p = SystemParams {
            g41: 0.0,
            g42: 0.0,
            g_p: 0.0,
            gamma13: 0.2,
            ..SystemParams::doublet()
        };
        let rho = steady_state(&p).unwrap();
        for i in 1..=4 {
            for j in 1..=4 {
                let want = if (i, j) == (3, 3) { 1.0 } else { 0.0 };
                assert!((rho.get(i, j) - Complex64::new(want, 0.0)).norm() < 1e-14);
            }
        }
        assert_eq!(
            residual(&p, &DensityMatrix::diagonal([0.0, 0.0, 1.0, 0.0])),
            0.0
        );
    }

    #[test]
    fn doublet_well_posed_and_solved() {
        let p = SystemParams::doublet();
        let rho = steady_state(&p).unwrap();
        assert!(residual(&p, &rho) <= 1e-10);
        assert!(rho.hermiticity_error() <= 1e-10);
    }

    #[test]
    fn spike_solution_residual() {
        let p = SystemParams::spike();
        let lp = assemble(&p, &damping_table(&p));
        let x = solve_linear(&lp).unwrap();
        assert!(lp.relative_residual(&x) <= 1e-10);
    }

    #[test]
    fn spike_peak_height() {
        // resonant limit form: rho23 = i g_p / Gamma23
        let rho = steady_state(&SystemParams::spike()).unwrap();
        let want = 1e-4 / 0.14;
        assert!(rho.rho23().re.abs() < 1e-12);
        // first-order formula ignores the ~0.5% of population pumped out of |3>
        assert!((rho.rho23().im - want).abs() / want < 2e-2);
    }

    #[test]
    fn maximally_mixed_is_not_stationary() {
        let r = residual(
            &SystemParams::doublet(),
            &DensityMatrix::diagonal([0.25; 4]),
        );
        // oracle: d(rho11)/dt = -2*0.01*0.25 + 2*1*0.25 = 0.495
        assert!((r - 0.495).abs() < 1e-12, "{r}");
    }
}
