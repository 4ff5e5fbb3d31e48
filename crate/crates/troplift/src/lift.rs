//! Lifting a point of the tropical variety to a truncated Puiseux
//! solution: the recursive lift (reweight, transform, solve the t-initial
//! ideal, recurse on a deeper ray) and the random linear reduction that
//! first cuts a positive-dimensional ideal down to dimension zero.

use crate::algebra::{Coeff, ExtContext};
use crate::error::{Error, Result};
use crate::polyring::{
    gamma, phi, psi_clear, Monomial, Polynomial, RingCtx, WeightVector,
};
use crate::solver::{torus_zeros, TorusZero};
use crate::stdbasis::{dimension, eliminate, saturate_t, CoeffField};
use crate::tinitial::{t_initial_ideal, is_monomial_free, trop_contains};
use crate::tropcurve::negative_ray;
use num_rational::BigRational;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use std::sync::Arc;

/// A generating set together with its ring.
#[derive(Clone, Debug)]
pub struct Ideal {
    pub ctx: RingCtx,
    pub gens: Vec<Polynomial>,
}

/// A univariate Laurent polynomial in the (rescaled) uniformiser:
/// exponent -> coefficient, sparse and sorted.
pub type Laurent = Vec<(i64, Coeff)>;

fn laurent_normalize(mut terms: Laurent) -> Laurent {
    terms.sort_by_key(|&(e, _)| e);
    let mut out: Laurent = Vec::with_capacity(terms.len());
    for (e, c) in terms {
        if let Some(last) = out.last_mut() {
            if last.0 == e {
                last.1 = last.1.add(&c);
                continue;
            }
        }
        out.push((e, c));
    }
    out.retain(|(_, c)| !c.is_zero());
    out
}

pub fn laurent_add(a: &Laurent, b: &Laurent) -> Laurent {
    let mut t = a.clone();
    t.extend(b.iter().cloned());
    laurent_normalize(t)
}

pub fn laurent_mul(a: &Laurent, b: &Laurent) -> Laurent {
    let mut t = Vec::with_capacity(a.len() * b.len());
    for (e1, c1) in a {
        for (e2, c2) in b {
            t.push((e1 + e2, c1.mul(c2)));
        }
    }
    laurent_normalize(t)
}

pub fn laurent_pow(a: &Laurent, e: i64) -> Laurent {
    let mut out = vec![(0i64, Coeff::one())];
    for _ in 0..e {
        out = laurent_mul(&out, a);
    }
    out
}

fn laurent_shift(a: &Laurent, delta: i64) -> Laurent {
    a.iter().map(|(e, c)| (e + delta, c.clone())).collect()
}

/// Truncated Puiseux point: coordinates are Laurent polynomials in
/// t^(1/n_den) of the original uniformiser.
#[derive(Clone, Debug)]
pub struct TruncatedPoint {
    pub n_den: i64,
    pub coords: Vec<Laurent>,
}

/// One recursion level: the ray (in original t units), the chosen torus
/// zero, and the variables still alive at that level.
#[derive(Clone, Debug)]
pub struct TraceLevel {
    pub omega: Vec<BigRational>,
    pub u: Vec<Coeff>,
    pub vars: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct ZdlOutput {
    pub point: TruncatedPoint,
    pub trace: Vec<TraceLevel>,
    /// The recursion hit an exact finite solution before exhausting m.
    pub exact: bool,
    pub ext: Arc<ExtContext>,
}

/// The zero the recursion follows: fully rational points first, then the
/// canonically largest (matching the published worked example); `branch`
/// indexes alternatives from there.
fn select_zero(zeros: &[TorusZero], branch: usize) -> Result<TorusZero> {
    let rational: Vec<TorusZero> = zeros
        .iter()
        .filter(|z| z.point.iter().all(|c| c.as_rational().is_some()))
        .cloned()
        .collect();
    let pool = if rational.is_empty() { zeros.to_vec() } else { rational };
    if branch >= pool.len() {
        return Err(Error::BranchOutOfRange(branch, pool.len()));
    }
    Ok(pool[pool.len() - 1 - branch].clone())
}

struct LevelResult {
    /// t-rescaling accumulated at and below this level.
    n_mult: i64,
    coords: Vec<Laurent>,
    trace: Vec<TraceLevel>,
    exact: bool,
    ext: Arc<ExtContext>,
}

fn zdl_rec(
    m: u32,
    ctx: &RingCtx,
    gens: &[Polynomial],
    omega: &[BigRational],
    denom_acc: i64,
    branch: usize,
) -> Result<LevelResult> {
    let n = ctx.nvars();
    // Step 1: rescale t so the weights are integral.
    let (f_scale, gens_i, mut w) = psi_clear(gens, omega);
    let denom = denom_acc * f_scale;
    // Step 2: positive weight entries are pushed into t via phi and
    // restored at the end.
    let mut w_tilde: Option<Vec<i64>> = None;
    let mut work: Vec<Polynomial> = gens_i;
    if w.iter().any(|&wi| wi > 0) {
        work = phi(&work, &w);
        w_tilde = Some(w.clone());
        w = vec![0; n];
    }
    // Step 3: t-initial ideal at the mixed order; monomial-freeness is
    // the membership certificate for omega.
    let mut work_ctx = ctx.clone();
    work_ctx.n_den = ctx.n_den * f_scale;
    let w_rat: WeightVector = w
        .iter()
        .map(|&wi| BigRational::from_integer(wi.into()))
        .collect();
    let tin = t_initial_ideal(&work_ctx, &work, &w_rat);
    if !is_monomial_free(&tin, n) {
        return Err(Error::OmegaNotInTrop);
    }
    // Step 4: a torus zero of the t-initial ideal.
    let mut zero_ctx = work_ctx.clone();
    zero_ctx.n_den = 1;
    let zeros = torus_zeros(&zero_ctx, &tin)?;
    let chosen = select_zero(&zeros, branch)?;
    let u = chosen.point.clone();
    let level_trace = TraceLevel {
        omega: w
            .iter()
            .map(|&wi| BigRational::new(wi.into(), denom.into()))
            .collect(),
        u: u.clone(),
        vars: ctx.names.clone(),
    };
    let finish_flat = |exact: bool| -> LevelResult {
        // p_i = u_i * t^(-w_i), possibly shifted back through phi
        let coords: Vec<Laurent> = (0..n)
            .map(|i| {
                let mut e = -w[i];
                if let Some(wt) = &w_tilde {
                    e -= wt[i];
                }
                vec![(e, u[i].clone())]
            })
            .collect();
        LevelResult {
            n_mult: f_scale,
            coords,
            trace: vec![level_trace.clone()],
            exact,
            ext: chosen.ext.clone(),
        }
    };
    if m == 1 {
        return Ok(finish_flat(false));
    }
    // Step 5: recentre at u and rescale: gamma transform.
    let u_ext: Vec<Coeff> = u
        .iter()
        .map(|c| c.clone().into_ext(&chosen.ext))
        .collect();
    let promoted: Vec<Polynomial> = work
        .iter()
        .map(|g| g.map_coeffs(|c| c.clone().into_ext(&chosen.ext)))
        .collect();
    let mut cur = gamma(&promoted, &w, &u_ext)?;
    // Step 6: coordinates already exact (every solution of the recentred
    // ideal has x_i = 0) are detected by t-saturation and eliminated.
    let mut alive: Vec<usize> = Vec::new();
    for i in 0..n {
        let mut with_xi = cur.clone();
        with_xi.push(Polynomial::var(n, i));
        let sat = saturate_t(&with_xi);
        let in_maximal = sat
            .iter()
            .all(|g| g.constant_coeff().is_zero());
        if in_maximal {
            cur = eliminate(&sat, &[i]);
        } else {
            alive.push(i);
        }
    }
    let mut rec_ctx = RingCtx {
        names: alive.iter().map(|&i| ctx.names[i].clone()).collect(),
        n_den: work_ctx.n_den,
        ext: chosen.ext.clone(),
    };
    if alive.is_empty() {
        // the zero itself is an exact solution
        return Ok(finish_flat(true));
    }
    let sub_gens: Vec<Polynomial> = cur.iter().map(|g| g.project_vars(&alive)).collect();
    // Step 7: a deeper strictly negative ray, then recurse with depth m-1.
    let omega2 = negative_ray(&rec_ctx, &sub_gens)?;
    rec_ctx.n_den = 1; // recursion handles its own rescaling bookkeeping
    let deeper = zdl_rec(m - 1, &rec_ctx, &sub_gens, &omega2, denom, 0)?;
    let n2 = deeper.n_mult;
    // Step 8: splice: p_i = t^(-w_i * N') (u_i + p'_i), exponents now in
    // units of the deeper rescaling.
    let mut coords: Vec<Laurent> = Vec::with_capacity(n);
    let mut alive_iter = 0usize;
    for i in 0..n {
        let base: Laurent = vec![(0, u[i].clone())];
        let tail = if alive.contains(&i) {
            let c = deeper.coords[alive_iter].clone();
            alive_iter += 1;
            laurent_add(&base, &c)
        } else {
            base
        };
        let mut e = -w[i] * n2;
        if let Some(wt) = &w_tilde {
            e -= wt[i] * n2;
        }
        coords.push(laurent_shift(&tail, e));
    }
    let mut trace = vec![level_trace];
    trace.extend(deeper.trace);
    Ok(LevelResult {
        n_mult: f_scale * n2,
        coords,
        trace,
        exact: deeper.exact,
        ext: deeper.ext,
    })
}

/// The recursive lift: a truncated Puiseux solution of <gens> whose
/// negated coordinate valuations equal omega, carrying m levels of terms
/// (fewer when an exact solution appears early).
pub fn zdl(m: u32, ideal: &Ideal, omega: &[BigRational], branch: usize) -> Result<ZdlOutput> {
    assert!(m >= 1);
    assert_eq!(omega.len(), ideal.ctx.nvars());
    let res = zdl_rec(m, &ideal.ctx, &ideal.gens, omega, ideal.ctx.n_den, branch)?;
    let n_den = ideal.ctx.n_den * res.n_mult;
    // valuation invariant: the lowest exponent of p_i (in units of the
    // final rescaling relative to the input ring) is -n_mult * omega_i
    for (i, c) in res.coords.iter().enumerate() {
        if let Some((e, _)) = c.first() {
            let expected = -(&omega[i] * BigRational::from_integer(res.n_mult.into()));
            debug_assert_eq!(
                BigRational::from_integer((*e).into()),
                expected,
                "valuation drifted from omega"
            );
        }
    }
    Ok(ZdlOutput {
        point: TruncatedPoint { n_den, coords: res.coords },
        trace: res.trace,
        exact: res.exact,
        ext: res.ext,
    })
}

/// Result of the random linear reduction to dimension zero.
#[derive(Clone, Debug)]
pub struct RdzOutput {
    pub ideal: Ideal,
    /// omega rewritten in the (possibly rescaled) ring units.
    pub omega: Vec<BigRational>,
    pub forms: Vec<Polynomial>,
    pub attempts: u32,
}

pub const RDZ_MAX_ATTEMPTS: u32 = 100;
pub const RDZ_COEFF_RANGE: i64 = 999;

/// Cut dim(J) random affine-linear slices a_0 + sum a_i t^(w_i) x_i
/// (t-powers cleared) through the ideal until the result has dimension
/// zero over K(t) and still meets the tropical variety at omega.
pub fn rdz(
    ideal: &Ideal,
    omega: &[BigRational],
    seed: u64,
    coeff_range: i64,
    max_attempts: u32,
) -> Result<RdzOutput> {
    let n = ideal.ctx.nvars();
    let (f_scale, gens, w) = psi_clear(&ideal.gens, omega);
    let mut ctx = ideal.ctx.clone();
    ctx.n_den *= f_scale;
    let w_rat: Vec<BigRational> = w
        .iter()
        .map(|&wi| BigRational::from_integer(wi.into()))
        .collect();
    let d = dimension(&gens, n, CoeffField::Qt);
    if d <= 0 {
        return Ok(RdzOutput {
            ideal: Ideal { ctx, gens },
            omega: w_rat,
            forms: vec![],
            attempts: 0,
        });
    }
    let shift = w.iter().map(|&wi| (-wi).max(0)).max().unwrap_or(0);
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    for attempt in 1..=max_attempts {
        let mut forms: Vec<Polynomial> = Vec::with_capacity(d as usize);
        for _ in 0..d {
            let mut terms: Vec<(Monomial, Coeff)> = Vec::with_capacity(n + 1);
            let a0: i64 = rng.gen_range(-coeff_range..=coeff_range);
            terms.push((Monomial::t(n, shift), Coeff::from_i64(a0)));
            for i in 0..n {
                let ai: i64 = rng.gen_range(-coeff_range..=coeff_range);
                terms.push((
                    Monomial { t_exp: w[i] + shift, x_exps: Monomial::var(n, i).x_exps },
                    Coeff::from_i64(ai),
                ));
            }
            forms.push(Polynomial::from_terms(terms).strip_t_content());
        }
        let mut j = gens.clone();
        j.extend(forms.iter().cloned());
        if dimension(&j, n, CoeffField::Qt) == 0 && trop_contains(&ctx, &j, &w_rat) {
            return Ok(RdzOutput {
                ideal: Ideal { ctx, gens: j },
                omega: w_rat,
                forms,
                attempts: attempt,
            });
        }
    }
    Err(Error::RdzAttempts(max_attempts))
}

/// t-order of each generator evaluated at the point; None encodes an
/// exact zero (infinite order). Orders are in original t units.
pub fn verify(point: &TruncatedPoint, ideal: &Ideal) -> Vec<Option<BigRational>> {
    let scale = point.n_den / ideal.ctx.n_den;
    assert_eq!(scale * ideal.ctx.n_den, point.n_den, "incompatible denominators");
    ideal
        .gens
        .iter()
        .map(|g| {
            let mut acc: Laurent = vec![];
            for (m, c) in g.terms() {
                let mut term: Laurent = vec![(m.t_exp * scale, c.clone())];
                for (i, &e) in m.x_exps.iter().enumerate() {
                    if e > 0 {
                        term = laurent_mul(&term, &laurent_pow(&point.coords[i], e));
                    }
                }
                acc = laurent_add(&acc, &term);
            }
            acc.first()
                .map(|(e, _)| BigRational::new((*e).into(), point.n_den.into()))
        })
        .collect()
}

#[derive(Clone, Debug)]
pub struct LiftResult {
    pub point: TruncatedPoint,
    pub trace: Vec<TraceLevel>,
    pub residual_orders: Vec<Option<BigRational>>,
    pub forms: Vec<Polynomial>,
    pub exact: bool,
    pub ext: Arc<ExtContext>,
}

/// End-to-end lift: check membership, reduce to dimension zero if
/// needed, run the recursive lift, and verify residual orders against
/// the original generators.
pub fn lift_point(
    m: u32,
    ideal: &Ideal,
    omega: &[BigRational],
    seed: u64,
    branch: usize,
) -> Result<LiftResult> {
    if !trop_contains(&ideal.ctx, &ideal.gens, &omega.to_vec()) {
        return Err(Error::OmegaNotInTrop);
    }
    let reduced = rdz(ideal, omega, seed, RDZ_COEFF_RANGE, RDZ_MAX_ATTEMPTS)?;
    let out = zdl(m, &reduced.ideal, &reduced.omega, branch)?;
    let residual_orders = verify(&out.point, ideal);
    Ok(LiftResult {
        point: out.point,
        trace: out.trace,
        residual_orders,
        forms: reduced.forms,
        exact: out.exact,
        ext: out.ext,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mono(t: i64, x: &[i64]) -> Monomial {
        Monomial { t_exp: t, x_exps: x.to_vec() }
    }

    fn poly(terms: &[(i64, &[i64], i64)]) -> Polynomial {
        Polynomial::from_terms(
            terms
                .iter()
                .map(|&(t, x, c)| (mono(t, x), Coeff::from_i64(c)))
                .collect(),
        )
    }

    fn rat(p: i64, q: i64) -> BigRational {
        BigRational::new(p.into(), q.into())
    }

    /// x - t, y - t^2: lifts exactly in one step.
    #[test]
    fn exact_monomial_curve_lift() {
        let ideal = Ideal {
            ctx: RingCtx::new(vec!["x".into(), "y".into()]),
            gens: vec![
                poly(&[(0, &[1, 0], 1), (1, &[0, 0], -1)]),
                poly(&[(0, &[0, 1], 1), (2, &[0, 0], -1)]),
            ],
        };
        let out = zdl(3, &ideal, &[rat(-1, 1), rat(-2, 1)], 0).unwrap();
        assert_eq!(out.point.n_den, 1);
        assert_eq!(out.point.coords[0], vec![(1, Coeff::one())]);
        assert_eq!(out.point.coords[1], vec![(2, Coeff::one())]);
        let res = verify(&out.point, &ideal);
        assert!(res.iter().all(|r| r.is_none()));
    }

    #[test]
    fn rejects_omega_outsideytrop() {
        let ideal = Ideal {
            ctx: RingCtx::new(vec!["x".into(), "y".into()]),
            gens: vec![poly(&[(0, &[1, 0], 1), (0, &[0, 1], 1), (0, &[0, 0], 1)])],
        };
        assert!(matches!(
            lift_point(2, &ideal, &[rat(1, 1), rat(2, 1)], 7, 0),
            Err(Error::OmegaNotInTrop)
        ));
    }

    #[test]
    fn laurent_arithmetic() {
        let a: Laurent = vec![(-1, Coeff::from_i64(2)), (0, Coeff::one())];
        let b: Laurent = vec![(1, Coeff::one()), (-1, Coeff::from_i64(-2))];
        assert_eq!(
            laurent_add(&a, &b),
            vec![(0, Coeff::one()), (1, Coeff::one())]
        );
        assert_eq!(
            laurent_mul(&a, &vec![(1, Coeff::one())]),
            vec![(0, Coeff::from_i64(2)), (1, Coeff::one())]
        );
    }
}
