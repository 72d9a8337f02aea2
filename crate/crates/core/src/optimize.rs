//! Nelder–Mead simplex minimization.

/// Stopping rules and simplex geometry.
#[derive(Debug, Clone, Copy)]
pub struct NelderMeadOptions {
    /// Edge length of the initial right-angled simplex.
    pub initial_step: f64,
    /// Converged once the spread of simplex values falls below this.
    pub f_tol: f64,
    /// ... and every vertex lies within this distance of the best one.
    pub x_tol: f64,
    pub max_evals: usize,
    /// Rebuild the simplex around the optimum this many times after
    /// convergence, to escape collapsed simplices.
    pub polish_rounds: usize,
}

impl Default for NelderMeadOptions {
    fn default() -> Self {
        NelderMeadOptions {
            initial_step: 0.5,
            f_tol: 1e-12,
            x_tol: 1e-9,
            max_evals: 20_000,
            polish_rounds: 2,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Minimum {
    pub x: Vec<f64>,
    pub value: f64,
    pub evals: usize,
    pub converged: bool,
}

const REFLECT: f64 = 1.0;
const EXPAND: f64 = 2.0;
const CONTRACT: f64 = 0.5;
const SHRINK: f64 = 0.5;

/// Minimizes `f` from `x0`.
pub fn nelder_mead<F>(mut f: F, x0: &[f64], opts: &NelderMeadOptions) -> Minimum
where
    F: FnMut(&[f64]) -> f64,
{
    let mut best = x0.to_vec();
    let mut evals = 0;
    let mut step = opts.initial_step;
    let mut result = run_simplex(&mut f, &best, step, opts, &mut evals);
    for _ in 0..opts.polish_rounds {
        if evals >= opts.max_evals {
            break;
        }
        best.clone_from(&result.0);
        step = (step * 0.1).max(opts.x_tol * 10.0);
        let next = run_simplex(&mut f, &best, step, opts, &mut evals);
        let improved = next.1 < result.1 - opts.f_tol;
        if next.1 <= result.1 {
            result = next;
        }
        if !improved {
            break;
        }
    }
    Minimum {
        x: result.0,
        value: result.1,
        evals,
        converged: result.2,
    }
}

fn run_simplex<F>(
    f: &mut F,
    x0: &[f64],
    step: f64,
    opts: &NelderMeadOptions,
    evals: &mut usize,
) -> (Vec<f64>, f64, bool)
where
    F: FnMut(&[f64]) -> f64,
{
    let n = x0.len();
    let mut eval = |x: &[f64], evals: &mut usize| {
        *evals += 1;
        let v = f(x);
        if v.is_nan() {
            f64::INFINITY
        } else {
            v
        }
    };

    let mut pts: Vec<Vec<f64>> = Vec::with_capacity(n + 1);
    pts.push(x0.to_vec());
    for i in 0..n {
        let mut p = x0.to_vec();
        p[i] += step;
        pts.push(p);
    }
    let mut vals: Vec<f64> = pts.iter().map(|p| eval(p, evals)).collect();
    let mut centroid = vec![0.0; n];
    let mut trial = vec![0.0; n];
    let mut trial2 = vec![0.0; n];

    loop {
        // order: best first, worst last
        let mut order: Vec<usize> = (0..=n).collect();
        order.sort_by(|&a, &b| vals[a].total_cmp(&vals[b]));
        pts = order.iter().map(|&i| std::mem::take(&mut pts[i])).collect();
        vals = order.iter().map(|&i| vals[i]).collect();

        let spread = vals[n] - vals[0];
        let size = pts[1..]
            .iter()
            .map(|p| p.iter().zip(&pts[0]).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max))
            .fold(0.0, f64::max);
        if spread.abs() <= opts.f_tol && size <= opts.x_tol {
            return (pts.swap_remove(0), vals[0], true);
        }
        if *evals >= opts.max_evals {
            return (pts.swap_remove(0), vals[0], false);
        }

        centroid.iter_mut().for_each(|c| *c = 0.0);
        for p in &pts[..n] {
            for (c, v) in centroid.iter_mut().zip(p) {
                *c += v / n as f64;
            }
        }
        let worst = &pts[n];
        for i in 0..n {
            trial[i] = centroid[i] + REFLECT * (centroid[i] - worst[i]);
        }
        let f_reflect = eval(&trial, evals);

        if f_reflect < vals[0] {
            for i in 0..n {
                trial2[i] = centroid[i] + EXPAND * (trial[i] - centroid[i]);
            }
            let f_expand = eval(&trial2, evals);
            if f_expand < f_reflect {
                pts[n].copy_from_slice(&trial2);
                vals[n] = f_expand;
            } else {
                pts[n].copy_from_slice(&trial);
                vals[n] = f_reflect;
            }
            continue;
        }
        if f_reflect < vals[n - 1] {
            pts[n].copy_from_slice(&trial);
            vals[n] = f_reflect;
            continue;
        }
        // contraction, outside if the reflection improved on the worst point
        let outside = f_reflect < vals[n];
        for i in 0..n {
            trial2[i] = if outside {
                centroid[i] + CONTRACT * (trial[i] - centroid[i])
            } else {
                centroid[i] + CONTRACT * (pts[n][i] - centroid[i])
            };
        }
        let f_contract = eval(&trial2, evals);
        if f_contract < vals[n].min(f_reflect) {
            pts[n].copy_from_slice(&trial2);
            vals[n] = f_contract;
            continue;
        }
        let (best, rest) = pts.split_at_mut(1);
        for (p, v) in rest.iter_mut().zip(vals[1..].iter_mut()) {
            for (x, b) in p.iter_mut().zip(&best[0]) {
                *x = b + SHRINK * (*x - b);
            }
            *v = eval(p, evals);
        }
    }
}
