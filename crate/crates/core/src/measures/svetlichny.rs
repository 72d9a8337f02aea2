use std::f64::consts::{FRAC_PI_2, PI, SQRT_2};

use nalgebra::Matrix3;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::concurrence::qubit_is_classical;
use super::X_FORM_TOL;
use crate::error::{Error, Result};
use crate::optimize::{nelder_mead, NelderMeadOptions};
use crate::qcore::{as_x_state, CMatrix, DensityMatrix, XState, C64};

/// Closed-form maximal Svetlichny value of an X state,
/// `max{8√2·maxᵢ|wᵢ|, 4|N|}`.
pub fn svetlichny_x(x: &XState) -> f64 {
    let [m1, m2, m3, m4] = x.mu;
    let [n1, n2, n3, n4] = x.nu;
    let n = m1 - m2 - m3 + m4 - n4 + n3 + n2 - n1;
    let w_max = x.w.iter().map(|w| w.norm()).fold(0.0, f64::max);
    (8.0 * SQRT_2 * w_max).max(4.0 * n.abs())
}

/// Unit vector on the Bloch sphere.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Direction {
    pub theta: f64,
    pub phi: f64,
}

impl Direction {
    pub const Z: Direction = Direction { theta: 0.0, phi: 0.0 };

    pub fn new(theta: f64, phi: f64) -> Self {
        Direction { theta, phi }
    }

    pub fn to_vector(self) -> [f64; 3] {
        let (st, ct) = self.theta.sin_cos();
        let (sp, cp) = self.phi.sin_cos();
        [st * cp, st * sp, ct]
    }

    /// Direction of `v`; the zero vector maps to `+z`.
    pub fn from_vector(v: [f64; 3]) -> Self {
        let norm = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        if !(norm > 1e-300) {
            return Direction::Z;
        }
        Direction {
            theta: (v[2] / norm).clamp(-1.0, 1.0).acos(),
            phi: v[1].atan2(v[0]),
        }
    }

    /// `v·σ`.
    pub fn observable(self) -> CMatrix {
        let [x, y, z] = self.to_vector();
        CMatrix::from_row_slice(
            2,
            2,
            &[
                C64::new(z, 0.0),
                C64::new(x, -y),
                C64::new(x, y),
                C64::new(-z, 0.0),
            ],
        )
    }
}

/// Measurement directions for Alice (`a`, `a′`), Bob and Charlie.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SvetlichnySetting {
    pub a: Direction,
    pub a_prime: Direction,
    pub b: Direction,
    pub b_prime: Direction,
    pub c: Direction,
    pub c_prime: Direction,
}

/// `S = (A+A′)⊗(B⊗C′ + B′⊗C) + (A−A′)⊗(B⊗C − B′⊗C′)` on qubits ordered
/// (Alice, Bob, Charlie).
pub fn svetlichny_operator(s: &SvetlichnySetting) -> CMatrix {
    let a = s.a.observable();
    let ap = s.a_prime.observable();
    let b = s.b.observable();
    let bp = s.b_prime.observable();
    let c = s.c.observable();
    let cp = s.c_prime.observable();
    let plus = &a + &ap;
    let minus = &a - &ap;
    let bc1 = b.kronecker(&cp) + bp.kronecker(&c);
    let bc2 = b.kronecker(&c) - bp.kronecker(&cp);
    plus.kronecker(&bc1) + minus.kronecker(&bc2)
}

/// `tr(S ρ)` through the explicit 8×8 operator.
pub fn svetlichny_expectation(rho: &DensityMatrix, s: &SvetlichnySetting) -> Result<f64> {
    check_three_qubits(rho)?;
    Ok((svetlichny_operator(s) * rho.entries()).trace().re)
}

/// `T_ijk = tr(ρ σᵢ⊗σⱼ⊗σₖ)` for `i, j, k ∈ {x, y, z}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrelationTensor(pub [[[f64; 3]; 3]; 3]);

impl CorrelationTensor {
    /// `Σⱼₖ T_ijk mⱼₖ`.
    fn contract(&self, m: &[[f64; 3]; 3]) -> [f64; 3] {
        let mut out = [0.0; 3];
        for (i, o) in out.iter_mut().enumerate() {
            let mut acc = 0.0;
            for j in 0..3 {
                for k in 0..3 {
                    acc += self.0[i][j][k] * m[j][k];
                }
            }
            *o = acc;
        }
        out
    }

    /// Vectors `u = T(b⊗c′ + b′⊗c)` and `v = T(b⊗c − b′⊗c′)`, in terms of
    /// which `tr(Sρ) = a·(u+v) + a′·(u−v)`.
    fn uv(&self, b: &[f64; 3], bp: &[f64; 3], c: &[f64; 3], cp: &[f64; 3]) -> ([f64; 3], [f64; 3]) {
        let mut m1 = [[0.0; 3]; 3];
        let mut m2 = [[0.0; 3]; 3];
        for j in 0..3 {
            for k in 0..3 {
                m1[j][k] = b[j] * cp[k] + bp[j] * c[k];
                m2[j][k] = b[j] * c[k] - bp[j] * cp[k];
            }
        }
        (self.contract(&m1), self.contract(&m2))
    }

    /// `max_{a,a′} tr(Sρ) = |u+v| + |u−v|` for fixed Bob and Charlie settings.
    fn best_over_alice(&self, b: &[f64; 3], bp: &[f64; 3], c: &[f64; 3], cp: &[f64; 3]) -> f64 {
        let (u, v) = self.uv(b, bp, c, cp);
        norm3(add(u, v)) + norm3(sub(u, v))
    }
}

pub fn correlation_tensor(rho: &DensityMatrix) -> Result<CorrelationTensor> {
    check_three_qubits(rho)?;
    let zero = C64::new(0.0, 0.0);
    let one = C64::new(1.0, 0.0);
    let i = C64::new(0.0, 1.0);
    let paulis: [[[C64; 2]; 2]; 3] = [
        [[zero, one], [one, zero]],
        [[zero, -i], [i, zero]],
        [[one, zero], [zero, -one]],
    ];
    let e = rho.entries();
    let bit = |n: usize, q: usize| (n >> (2 - q)) & 1;
    let mut t = [[[0.0; 3]; 3]; 3];
    for (p, tp) in t.iter_mut().enumerate() {
        for (q, tq) in tp.iter_mut().enumerate() {
            for (r, tr) in tq.iter_mut().enumerate() {
                let mut acc = zero;
                for m in 0..8 {
                    for n in 0..8 {
                        let op = paulis[p][bit(n, 0)][bit(m, 0)]
                            * paulis[q][bit(n, 1)][bit(m, 1)]
                            * paulis[r][bit(n, 2)][bit(m, 2)];
                        if op != zero {
                            acc += e[(m, n)] * op;
                        }
                    }
                }
                *tr = acc.re;
            }
        }
    }
    Ok(CorrelationTensor(t))
}

/// Multi-start search settings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchConfig {
    /// Number of uniformly random starts.
    pub restarts: usize,
    /// Convergence tolerance of each local refinement.
    pub tol: f64,
    pub seed: u64,
    /// Best settings of the 30° grid added as extra starts.
    pub grid_seeds: usize,
    /// Evaluation budget of each local refinement.
    pub max_evals: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            restarts: 200,
            tol: 1e-10,
            seed: 0,
            grid_seeds: 8,
            max_evals: 4000,
        }
    }
}

/// Outcome of [`svetlichny_value`] or [`svetlichny_bruteforce`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SvetlichnySearch {
    pub value: f64,
    /// `None` when the X-state closed form was used.
    pub setting: Option<SvetlichnySetting>,
}

/// Maximal Svetlichny value: closed form for X states and for states whose
/// first qubit carries no coherence, search otherwise.
pub fn svetlichny_value(rho: &DensityMatrix, cfg: &SearchConfig) -> Result<SvetlichnySearch> {
    check_three_qubits(rho)?;
    match as_x_state(rho, X_FORM_TOL) {
        Ok(x) => Ok(SvetlichnySearch {
            value: svetlichny_x(&x),
            setting: None,
        }),
        Err(Error::NotXForm { .. }) => match svetlichny_classical_first(rho)? {
            Some(found) => Ok(found),
            None => svetlichny_bruteforce(rho, cfg),
        },
        Err(e) => Err(e),
    }
}

/// Exact maximal Svetlichny value when the first qubit has no coherence.
///
/// Then `T_ijk` vanishes unless `i = z`, so with `M_jk = T_zjk` the
/// expectation is `(a_z+a′_z)·u + (a_z−a′_z)·v` for the scalars
/// `u = b·Mc′ + b′·Mc`, `v = b·Mc − b′·Mc′`, whose maximum is
/// `2·max(|u|, |v|) = 4σ_max(M)`. Returns `None` for other states.
pub fn svetlichny_classical_first(rho: &DensityMatrix) -> Result<Option<SvetlichnySearch>> {
    check_three_qubits(rho)?;
    if !qubit_is_classical(rho, 0, X_FORM_TOL) {
        return Ok(None);
    }
    let t = correlation_tensor(rho)?;
    let m = Matrix3::from_fn(|j, k| t.0[2][j][k]);
    let svd = m.svd(true, true);
    let (idx, sigma) = svd.singular_values.argmax();
    let u = svd.u.expect("requested").column(idx).into_owned();
    let v = svd.v_t.expect("requested").row(idx).transpose();
    let b = Direction::from_vector([u[0], u[1], u[2]]);
    let c = Direction::from_vector([v[0], v[1], v[2]]);
    Ok(Some(SvetlichnySearch {
        value: 4.0 * sigma,
        setting: Some(SvetlichnySetting {
            a: Direction::Z,
            a_prime: Direction::Z,
            b,
            b_prime: b,
            c,
            c_prime: c,
        }),
    }))
}

/// Maximizes `tr(Sρ)` over all measurement directions.
///
/// Alice's optimal pair is exact for fixed Bob/Charlie settings, so the
/// search runs over Bob's and Charlie's eight angles. Starts are the best
/// points of a 30° grid plus `restarts` uniform random draws, each drawn
/// from its own stream of a ChaCha generator seeded with `cfg.seed`. The
/// result is independent of thread scheduling.
pub fn svetlichny_bruteforce(rho: &DensityMatrix, cfg: &SearchConfig) -> Result<SvetlichnySearch> {
    let t = correlation_tensor(rho)?;
    let objective = |x: &[f64]| {
        let d = |k: usize| Direction::new(x[2 * k], x[2 * k + 1]).to_vector();
        -t.best_over_alice(&d(0), &d(1), &d(2), &d(3))
    };

    let mut starts = grid_starts(&t, cfg.grid_seeds);
    for idx in 0..cfg.restarts {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        rng.set_stream(idx as u64);
        let mut x = [0.0; 8];
        for k in 0..4 {
            let u: f64 = rng.gen();
            x[2 * k] = (1.0 - 2.0 * u).clamp(-1.0, 1.0).acos();
            x[2 * k + 1] = rng.gen_range(0.0..2.0 * PI);
        }
        starts.push(x);
    }

    let opts = NelderMeadOptions {
        f_tol: cfg.tol,
        x_tol: cfg.tol.sqrt().max(1e-9),
        max_evals: cfg.max_evals,
        ..Default::default()
    };
    let results: Vec<(f64, Vec<f64>)> = starts
        .par_iter()
        .map(|x0| {
            let m = nelder_mead(objective, x0, &opts);
            (-m.value, m.x)
        })
        .collect();
    // first index wins ties, so the answer does not depend on scheduling
    let (value, x) = results
        .into_iter()
        .fold((f64::NEG_INFINITY, Vec::new()), |best, r| if r.0 > best.0 { r } else { best });
    if x.is_empty() {
        // no starts requested: fall back on the +z setting
        return Ok(SvetlichnySearch {
            value: 0.0_f64.max(-objective(&[0.0; 8])),
            setting: Some(complete_setting(&t, &[0.0; 8])),
        });
    }
    Ok(SvetlichnySearch {
        value,
        setting: Some(complete_setting(&t, &x)),
    })
}

/// Fills in Alice's optimal directions for the given eight angles.
fn complete_setting(t: &CorrelationTensor, x: &[f64]) -> SvetlichnySetting {
    let d = |k: usize| Direction::new(x[2 * k], x[2 * k + 1]);
    let (b, bp, c, cp) = (d(0), d(1), d(2), d(3));
    let (u, v) = t.uv(&b.to_vector(), &bp.to_vector(), &c.to_vector(), &cp.to_vector());
    SvetlichnySetting {
        a: Direction::from_vector(add(u, v)),
        a_prime: Direction::from_vector(sub(u, v)),
        b,
        b_prime: bp,
        c,
        c_prime: cp,
    }
}

/// Best `keep` settings among equatorial directions at 30° spacing plus ±z.
fn grid_starts(t: &CorrelationTensor, keep: usize) -> Vec<[f64; 8]> {
    if keep == 0 {
        return Vec::new();
    }
    let mut dirs: Vec<Direction> = (0..12)
        .map(|k| Direction::new(FRAC_PI_2, k as f64 * PI / 6.0))
        .collect();
    dirs.push(Direction::new(0.0, 0.0));
    dirs.push(Direction::new(PI, 0.0));
    let vecs: Vec<[f64; 3]> = dirs.iter().map(|d| d.to_vector()).collect();
    let n = dirs.len();

    let mut scored: Vec<(f64, usize)> = Vec::with_capacity(n.pow(4));
    for idx in 0..n.pow(4) {
        let (i, j, k, l) = (idx / n.pow(3), (idx / n.pow(2)) % n, (idx / n) % n, idx % n);
        scored.push((t.best_over_alice(&vecs[i], &vecs[j], &vecs[k], &vecs[l]), idx));
    }
    scored.sort_by(|x, y| y.0.total_cmp(&x.0).then(x.1.cmp(&y.1)));
    scored
        .into_iter()
        .take(keep)
        .map(|(_, idx)| {
            let pick = [idx / n.pow(3), (idx / n.pow(2)) % n, (idx / n) % n, idx % n];
            let mut x = [0.0; 8];
            for (k, &p) in pick.iter().enumerate() {
                x[2 * k] = dirs[p].theta;
                x[2 * k + 1] = dirs[p].phi;
            }
            x
        })
        .collect()
}

fn check_three_qubits(rho: &DensityMatrix) -> Result<()> {
    if rho.dim() != 8 {
        return Err(Error::Dimension(format!(
            "Svetlichny value needs 3 qubits, got dimension {}",
            rho.dim()
        )));
    }
    if !rho.is_normalized() {
        return Err(Error::InvalidState("Svetlichny value needs a normalized state".into()));
    }
    Ok(())
}

fn add(u: [f64; 3], v: [f64; 3]) -> [f64; 3] {
    [u[0] + v[0], u[1] + v[1], u[2] + v[2]]
}

fn sub(u: [f64; 3], v: [f64; 3]) -> [f64; 3] {
    [u[0] - v[0], u[1] - v[1], u[2] - v[2]]
}

fn norm3(u: [f64; 3]) -> f64 {
    (u[0] * u[0] + u[1] * u[1] + u[2] * u[2]).sqrt()
}
