//! Zeros of a zero-dimensional t-free ideal with all coordinates in the
//! torus. Lex triangularisation, factoring of univariate residuals over
//! Q, and at most one algebraic adjunction — a second one is refused.

use crate::algebra::{Coeff, ExtContext, ExtElement, UniPoly};
use crate::algebra::factor_univariate;
use crate::error::{Error, Result};
use crate::polyring::{embed_extension, MonomialOrder, Polynomial, RingCtx};
use crate::stdbasis::std;
use std::cmp::Ordering;
use std::sync::Arc;

/// A torus zero together with the extension its coordinates live in.
#[derive(Clone, Debug)]
pub struct TorusZero {
    pub point: Vec<Coeff>,
    pub ext: Arc<ExtContext>,
}

// ---- univariate arithmetic over an arbitrary Coeff field ---------------

fn utrim(mut v: Vec<Coeff>) -> Vec<Coeff> {
    while v.last().map_or(false, |c| c.is_zero()) {
        v.pop();
    }
    v
}

fn udivrem(a: &[Coeff], b: &[Coeff]) -> (Vec<Coeff>, Vec<Coeff>) {
    assert!(!b.is_empty());
    let db = b.len() - 1;
    let linv = b.last().unwrap().inv();
    let mut rem: Vec<Coeff> = a.to_vec();
    let mut quo = vec![Coeff::zero(); a.len().saturating_sub(db)];
    while rem.len() > db {
        let k = rem.len() - 1;
        let c = rem[k].mul(&linv);
        if !c.is_zero() {
            quo[k - db] = c.clone();
            for (i, y) in b.iter().enumerate() {
                rem[k - db + i] = rem[k - db + i].sub(&c.mul(y));
            }
        }
        rem.pop();
        rem = utrim(rem);
        if rem.len() <= db {
            break;
        }
    }
    (utrim(quo), utrim(rem))
}

fn ugcd(a: &[Coeff], b: &[Coeff]) -> Vec<Coeff> {
    let (mut x, mut y) = (utrim(a.to_vec()), utrim(b.to_vec()));
    while !y.is_empty() {
        let (_, r) = udivrem(&x, &y);
        x = y;
        y = r;
    }
    if let Some(l) = x.last().cloned() {
        let inv = l.inv();
        x = x.iter().map(|c| c.mul(&inv)).collect();
    }
    x
}

fn as_unipoly(coeffs: &[Coeff]) -> Option<UniPoly> {
    let mut out = Vec::with_capacity(coeffs.len());
    for c in coeffs {
        out.push(c.as_rational()?);
    }
    Some(UniPoly::new(out))
}

// -------------------------------------------------------------------------

struct Branch {
    values: Vec<Option<Coeff>>,
    ext: Arc<ExtContext>,
}

fn substitute_known(g: &Polynomial, values: &[Option<Coeff>]) -> Polynomial {
    let n = values.len();
    Polynomial::from_terms(
        g.terms()
            .iter()
            .map(|(m, c)| {
                let mut coeff = c.clone();
                let mut x = m.x_exps.clone();
                for i in 0..n {
                    if let Some(v) = &values[i] {
                        for _ in 0..x[i] {
                            coeff = coeff.mul(v);
                        }
                        x[i] = 0;
                    }
                }
                (
                    crate::polyring::Monomial { t_exp: m.t_exp, x_exps: x },
                    coeff,
                )
            })
            .collect(),
    )
}

fn to_univariate(g: &Polynomial, var: usize) -> Vec<Coeff> {
    let deg = g.terms().iter().map(|(m, _)| m.x_exps[var]).max().unwrap_or(0);
    let mut out = vec![Coeff::zero(); deg as usize + 1];
    for (m, c) in g.terms() {
        out[m.x_exps[var] as usize] = out[m.x_exps[var] as usize].add(c);
    }
    utrim(out)
}

/// All zeros of <gens> (t-free, zero-dimensional over the active field)
/// whose coordinates are all nonzero, sorted canonically. Coordinates are
/// rational or live in a single adjoined extension per point.
pub fn torus_zeros(ctx: &RingCtx, gens: &[Polynomial]) -> Result<Vec<TorusZero>> {
    assert!(gens.iter().all(|g| !g.involves_t()), "torus_zeros needs t-free input");
    let n = ctx.nvars();
    let (work_gens, total, embedded) = if ctx.ext.is_trivial() {
        (gens.to_vec(), n, false)
    } else {
        let (_c2, g2) = embed_extension(ctx, gens);
        (g2, n + 1, true)
    };
    let basis = std(&work_gens, &MonomialOrder::Lex);
    if basis.is_unit_ideal() {
        return Err(Error::NoTorusZero);
    }
    let mut branches = vec![Branch {
        values: vec![None; total],
        ext: ExtContext::trivial(),
    }];
    for v in (0..total).rev() {
        let mut next: Vec<Branch> = Vec::new();
        for br in branches {
            // substitute what we know, keep residuals univariate in v
            let mut uni: Vec<Vec<Coeff>> = Vec::new();
            let mut inconsistent = false;
            for g in &basis.gens {
                let s = substitute_known(g, &br.values);
                if s.is_zero() {
                    continue;
                }
                if (0..v).any(|i| s.involves_var(i)) {
                    continue; // still involves a larger (earlier) variable
                }
                if !s.involves_var(v) {
                    inconsistent = true; // nonzero constant residual
                    break;
                }
                uni.push(to_univariate(&s, v));
            }
            if inconsistent {
                continue;
            }
            if uni.is_empty() {
                return Err(Error::NotShapePosition(format!(
                    "variable {} is unconstrained",
                    if v < n { ctx.names[v].clone() } else { "a".into() }
                )));
            }
            let mut g = uni[0].clone();
            for h in &uni[1..] {
                g = ugcd(&g, h);
            }
            if g.len() <= 1 {
                continue; // gcd is a nonzero constant: no common root
            }
            if g.len() == 2 {
                let val = g[0].neg().div(&g[1]);
                let mut values = br.values.clone();
                values[v] = Some(val);
                next.push(Branch { values, ext: br.ext });
                continue;
            }
            // nonlinear residual: factor over Q when possible
            let Some(q) = as_unipoly(&g) else {
                return Err(Error::ExtensionTower);
            };
            let (_, factors) = factor_univariate(&q)?;
            for (f, _) in factors {
                match f.degree() {
                    Some(1) => {
                        let val = Coeff::Rat(-f.coeff(0) / f.coeff(1));
                        let mut values = br.values.clone();
                        values[v] = Some(val);
                        next.push(Branch { values, ext: br.ext.clone() });
                    }
                    Some(_) => {
                        if !br.ext.is_trivial() {
                            return Err(Error::ExtensionTower);
                        }
                        let ext = ExtContext::adjoin(f)?;
                        let val = Coeff::Ext(ExtElement::generator(ext.clone()));
                        let mut values = br.values.clone();
                        values[v] = Some(val);
                        next.push(Branch { values, ext });
                    }
                    None => unreachable!("zero factor"),
                }
            }
        }
        branches = next;
    }
    let mut zeros: Vec<TorusZero> = Vec::new();
    for br in branches {
        let point: Vec<Coeff> = br.values[..n]
            .iter()
            .map(|v| v.clone().expect("unassigned variable"))
            .collect();
        // sanity: the point really is a zero
        debug_assert!(work_gens.iter().all(|g| {
            let full: Vec<Coeff> = br.values.iter().map(|v| v.clone().unwrap()).collect();
            g.eval_x(&full).is_zero()
        }));
        if point.iter().any(|c| c.is_zero()) {
            continue;
        }
        zeros.push(TorusZero { point, ext: br.ext });
    }
    let _ = embedded;
    if zeros.is_empty() {
        return Err(Error::NoTorusZero);
    }
    zeros.sort_by(point_cmp);
    Ok(zeros)
}

/// Coordinate-wise canonical order; points over different extensions are
/// grouped by their minimal polynomial first so the comparison below is
/// always within one domain.
fn point_cmp(a: &TorusZero, b: &TorusZero) -> Ordering {
    a.ext
        .minpoly()
        .canonical_cmp(b.ext.minpoly())
        .then_with(|| {
            for (x, y) in a.point.iter().zip(&b.point) {
                match x.canonical_cmp(y) {
                    Ordering::Equal => {}
                    ord => return ord,
                }
            }
            Ordering::Equal
        })
}

fn is_rational_point(z: &TorusZero) -> bool {
    z.point.iter().all(|c| c.as_rational().is_some())
}

/// The canonically smallest zero, preferring fully rational points.
pub fn pick_zero(zeros: &[TorusZero]) -> TorusZero {
    assert!(!zeros.is_empty());
    let rational: Vec<&TorusZero> = zeros.iter().filter(|z| is_rational_point(z)).collect();
    if let Some(first) = rational.first() {
        (*first).clone()
    } else {
        zeros[0].clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::Monomial;

    fn mono(x: &[i64]) -> Monomial {
        Monomial { t_exp: 0, x_exps: x.to_vec() }
    }

    fn poly(terms: &[(&[i64], i64)]) -> Polynomial {
        Polynomial::from_terms(
            terms
                .iter()
                .map(|&(x, c)| (mono(x), Coeff::from_i64(c)))
                .collect(),
        )
    }

    fn ctx2() -> RingCtx {
        RingCtx::new(vec!["x".into(), "y".into()])
    }

    #[test]
    fn rational_pair_of_zeros() {
        // <y^2 - 1, x - 1> -> (1, -1) then (1, 1) in canonical order
        let zeros = torus_zeros(
            &ctx2(),
            &[
                poly(&[(&[0, 2], 1), (&[0, 0], -1)]),
                poly(&[(&[1, 0], 1), (&[0, 0], -1)]),
            ],
        )
        .unwrap();
        let pts: Vec<Vec<Coeff>> = zeros.iter().map(|z| z.point.clone()).collect();
        assert_eq!(
            pts,
            vec![
                vec![Coeff::from_i64(1), Coeff::from_i64(-1)],
                vec![Coeff::from_i64(1), Coeff::from_i64(1)],
            ]
        );
        let picked = pick_zero(&zeros);
        assert_eq!(picked.point, vec![Coeff::from_i64(1), Coeff::from_i64(-1)]);
    }

    #[test]
    fn adjoins_sqrt_two() {
        // <x^2 - 2, y - x> -> (a, a) with a^2 = 2
        let zeros = torus_zeros(
            &ctx2(),
            &[
                poly(&[(&[2, 0], 1), (&[0, 0], -2)]),
                poly(&[(&[0, 1], 1), (&[1, 0], -1)]),
            ],
        )
        .unwrap();
        assert_eq!(zeros.len(), 1);
        let z = &zeros[0];
        assert_eq!(z.ext.minpoly(), &UniPoly::from_i64(&[-2, 0, 1]));
        let a = Coeff::Ext(ExtElement::generator(z.ext.clone()));
        assert_eq!(z.point, vec![a.clone(), a]);
    }

    #[test]
    fn filters_zero_coordinates() {
        // <x*y - x, x^2 - x> has zeros (0,*) and (1,1); only (1,1) is in
        // the torus... actually zeros are (0, anything)? x(y-1), x(x-1):
        // not zero-dimensional. Use <x^2 - x, y - x>: zeros (0,0), (1,1).
        let zeros = torus_zeros(
            &ctx2(),
            &[
                poly(&[(&[2, 0], 1), (&[1, 0], -1)]),
                poly(&[(&[0, 1], 1), (&[1, 0], -1)]),
            ],
        )
        .unwrap();
        assert_eq!(zeros.len(), 1);
        assert_eq!(zeros[0].point, vec![Coeff::from_i64(1), Coeff::from_i64(1)]);
    }

    #[test]
    fn no_torus_zero_error() {
        let err = torus_zeros(&ctx2(), &[poly(&[(&[1, 0], 1)]), poly(&[(&[0, 1], 1), (&[1, 0], -1)])]);
        assert!(matches!(err, Err(Error::NoTorusZero)));
    }
}
