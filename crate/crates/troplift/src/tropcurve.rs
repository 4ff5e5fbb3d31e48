//! Finding a strictly negative ray of the tropical variety of a space
//! curve: Newton-polygon slopes of the coordinatewise eliminants give a
//! finite candidate grid, filtered by actual tropical membership.

use crate::error::{Error, Result};
use crate::polyring::{embed_extension, Polynomial, RingCtx, WeightVector};
use crate::stdbasis::eliminate;
use crate::tinitial::trop_contains;
use num_rational::BigRational;
use num_traits::Zero;

/// Candidate negative weights for the single x-variable of g (a
/// polynomial in K[t, x_i]): slopes of the lower Newton polygon edges.
/// Sorted descending (closest to zero first); empty when g is constant
/// in its variable.
pub fn newton_candidates(g: &Polynomial, var: usize) -> Vec<BigRational> {
    // minimal t exponent for each occurring x degree
    let mut pts: Vec<(i64, i64)> = Vec::new(); // (x_deg, min_t)
    for (m, _) in g.terms() {
        debug_assert!(m
            .x_exps
            .iter()
            .enumerate()
            .all(|(i, &e)| i == var || e == 0));
        let b = m.x_exps[var];
        let a = m.t_exp;
        match pts.iter_mut().find(|(bb, _)| *bb == b) {
            Some(entry) => entry.1 = entry.1.min(a),
            None => pts.push((b, a)),
        }
    }
    if pts.len() < 2 {
        return vec![];
    }
    pts.sort();
    // lower convex hull in the (x_deg, t_exp) plane
    let mut hull: Vec<(i64, i64)> = Vec::new();
    for p in pts {
        while hull.len() >= 2 {
            let a = hull[hull.len() - 2];
            let b = hull[hull.len() - 1];
            // drop b when it lies on or above segment a..p
            if (b.1 - a.1) * (p.0 - a.0) >= (p.1 - a.1) * (b.0 - a.0) {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    let mut out: Vec<BigRational> = Vec::new();
    for pair in hull.windows(2) {
        let (b1, a1) = pair[0];
        let (b2, a2) = pair[1];
        // terms tie at weight -a + w*b, so w = (a1 - a2)/(b1 - b2)
        let w = BigRational::new((a1 - a2).into(), (b1 - b2).into());
        if w < BigRational::zero() && !out.contains(&w) {
            out.push(w);
        }
    }
    out.sort();
    out.reverse();
    out
}

/// A strictly negative ray of Trop(<gens>) (a curve over the ground
/// field, possibly extended). Per coordinate the eliminant ideal
/// <gens> and K[t, x_i] supplies Newton candidates; the candidate grid is
/// walked lexicographically (each list descending) and the first vector
/// passing the full membership test wins. The extension symbol, when
/// present, carries weight 0 throughout.
pub fn negative_ray(ctx: &RingCtx, gens: &[Polynomial]) -> Result<WeightVector> {
    let n = ctx.nvars();
    let (work_ctx, work_gens) = if ctx.ext.is_trivial() {
        (ctx.clone(), gens.to_vec())
    } else {
        embed_extension(ctx, gens)
    };
    let total = work_ctx.nvars(); // n (+1 for a)
    let mut candidate_lists: Vec<Vec<BigRational>> = Vec::with_capacity(n);
    for i in 0..n {
        let drop: Vec<usize> = (0..total).filter(|&j| j != i).collect();
        let elim = eliminate(&work_gens, &drop);
        if elim.is_empty() {
            return Err(Error::NotCurveType(ctx.names[i].clone()));
        }
        let mut cands: Vec<BigRational> = Vec::new();
        for g in &elim {
            for w in newton_candidates(g, i) {
                if !cands.contains(&w) {
                    cands.push(w);
                }
            }
        }
        if cands.is_empty() {
            return Err(Error::NoRay);
        }
        cands.sort();
        cands.reverse();
        candidate_lists.push(cands);
    }
    // lexicographic walk of the grid
    let mut idx = vec![0usize; n];
    loop {
        let w: WeightVector = idx
            .iter()
            .zip(&candidate_lists)
            .map(|(&k, list)| list[k].clone())
            .collect();
        if trop_contains(ctx, gens, &w) {
            return Ok(w);
        }
        // advance odometer
        let mut pos = n;
        loop {
            if pos == 0 {
                return Err(Error::NoRay);
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < candidate_lists[pos].len() {
                break;
            }
            idx[pos] = 0;
        }
    }
}

/// Check that `w` consists of strictly negative entries (ray invariant).
pub fn all_negative(w: &WeightVector) -> bool {
    w.iter().all(|wi| wi < &BigRational::zero())
}
