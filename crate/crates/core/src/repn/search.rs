use super::{validate_rep, Propagation, Representation};
use crate::error::{Error, Result};
use crate::group::Presentation;
use crate::laurent::{solve, Mat2};
use crate::scalar::{ComplexFloat, Ring};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Copy, Debug)]
pub struct SearchOptions {
    pub max_iter: usize,
    /// Validation tolerance for the converged representation.
    pub tol: f64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            max_iter: 200,
            tol: 1e-9,
        }
    }
}

#[derive(Clone, Debug)]
pub enum SearchSeed {
    /// Random free-generator images from a seeded generator.
    Random(u64),
    /// Images of every generator; only those of free generators are used as
    /// the starting point, unless the images are already valid.
    Images(Vec<Mat2<ComplexFloat>>),
}

/// Damped Gauss-Newton (Levenberg-Marquardt) on the entries of the free
/// generator images. Definitional relators are satisfied by construction, so
/// the residual stacks `rho(r) - E` over the remaining relators and
/// `det - 1` over the free generators.
pub fn newton_search_rep(
    p: &Presentation,
    seed: &SearchSeed,
    opts: &SearchOptions,
) -> Result<Representation<ComplexFloat>> {
    let prop = Propagation::new(p);
    let mut x: Vec<Complex64> = match seed {
        SearchSeed::Images(images) => {
            if let Ok(rep) = validate_rep(p, images.clone(), opts.tol) {
                return Ok(rep);
            }
            prop.free()
                .iter()
                .flat_map(|g| images[g.0].e.map(|c| c.0))
                .collect()
        }
        SearchSeed::Random(s) => random_start(prop.free().len(), *s),
    };
    let mut r = residual(p, &prop, &x);
    let mut cost = norm2(&r);
    let mut mu = 1e-3;
    for _ in 0..opts.max_iter {
        if max_abs(&r) < 1e-14 {
            break;
        }
        let j = jacobian(p, &prop, &x);
        let n = x.len();
        let mut jhj = vec![vec![ComplexFloat::zero(); n]; n];
        let mut jhr = vec![ComplexFloat::zero(); n];
        for (row, ri) in j.iter().zip(&r) {
            for a in 0..n {
                let ca = row[a].conj();
                jhr[a] = jhr[a] - ComplexFloat(ca * ri);
                for b in 0..n {
                    jhj[a][b] = jhj[a][b] + ComplexFloat(ca * row[b]);
                }
            }
        }
        let scale = (0..n)
            .map(|a| jhj[a][a].0.re)
            .fold(0.0, f64::max)
            .max(1e-300);
        let mut improved = false;
        for _ in 0..30 {
            let mut m = jhj.clone();
            for (a, row) in m.iter_mut().enumerate() {
                row[a] = row[a] + ComplexFloat::new(mu * scale, 0.0);
            }
            let Ok(step) = solve(m, jhr.clone()) else {
                mu *= 10.0;
                continue;
            };
            let trial: Vec<Complex64> = x.iter().zip(&step).map(|(a, d)| a + d.0).collect();
            let tr = residual(p, &prop, &trial);
            let tc = norm2(&tr);
            if tc.is_finite() && tc < cost {
                x = trial;
                r = tr;
                cost = tc;
                mu = (mu / 5.0).max(1e-15);
                improved = true;
                break;
            }
            mu *= 8.0;
        }
        if !improved {
            break;
        }
    }
    let images = prop.complete(&to_mats(&x));
    validate_rep(p, images, opts.tol).map_err(|_| Error::DidNotConverge {
        best_residual: max_abs(&r),
    })
}

/// Runs [`newton_search_rep`] over `seeds` until a nonabelian representation
/// is found. Returns it with the number of attempts used.
pub fn search_nonabelian(
    p: &Presentation,
    seeds: impl IntoIterator<Item = u64>,
    opts: &SearchOptions,
) -> Option<(Representation<ComplexFloat>, usize)> {
    for (i, s) in seeds.into_iter().enumerate() {
        if let Ok(rep) = newton_search_rep(p, &SearchSeed::Random(s), opts) {
            if rep.is_nonabelian() {
                return Some((rep, i + 1));
            }
        }
    }
    None
}

fn random_start(free: usize, seed: u64) -> Vec<Complex64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut x = Vec::with_capacity(4 * free);
    for _ in 0..free {
        let mut e: Vec<Complex64> = (0..4)
            .map(|_| Complex64::new(rng.gen_range(-1.5..1.5), rng.gen_range(-1.5..1.5)))
            .collect();
        let det = e[0] * e[3] - e[1] * e[2];
        let s = det.sqrt();
        if s.norm() > 1e-3 {
            for c in e.iter_mut() {
                *c /= s;
            }
        }
        x.extend(e);
    }
    x
}

fn to_mats(x: &[Complex64]) -> Vec<Mat2<ComplexFloat>> {
    x.chunks(4)
        .map(|c| {
            Mat2::new(
                ComplexFloat(c[0]),
                ComplexFloat(c[1]),
                ComplexFloat(c[2]),
                ComplexFloat(c[3]),
            )
        })
        .collect()
}

fn residual(p: &Presentation, prop: &Propagation, x: &[Complex64]) -> Vec<Complex64> {
    let free = to_mats(x);
    let images: Vec<Option<Mat2<ComplexFloat>>> =
        prop.complete(&free).into_iter().map(Some).collect();
    let mut out = Vec::new();
    for &i in prop.residual() {
        let m = super::propagate::eval_word(&p.relators()[i], &images) - Mat2::identity();
        out.extend(m.e.iter().map(|c| c.0));
    }
    for m in &free {
        out.push((m.det() - ComplexFloat::one()).0);
    }
    out
}

fn jacobian(p: &Presentation, prop: &Propagation, x: &[Complex64]) -> Vec<Vec<Complex64>> {
    let mut cols = Vec::with_capacity(x.len());
    for k in 0..x.len() {
        let h = 1e-6 * x[k].norm().max(1.0);
        let mut xp = x.to_vec();
        let mut xm = x.to_vec();
        xp[k] += h;
        xm[k] -= h;
        let (rp, rm) = (residual(p, prop, &xp), residual(p, prop, &xm));
        cols.push(
            rp.iter()
                .zip(&rm)
                .map(|(a, b)| (a - b) / (2.0 * h))
                .collect::<Vec<_>>(),
        );
    }
    let rows = cols.first().map_or(0, |c| c.len());
    (0..rows)
        .map(|i| cols.iter().map(|c| c[i]).collect())
        .collect()
}

fn norm2(r: &[Complex64]) -> f64 {
    r.iter().map(|c| c.norm_sqr()).sum()
}

fn max_abs(r: &[Complex64]) -> f64 {
    r.iter().map(|c| c.norm()).fold(0.0, f64::max)
}
