//! Initial forms and t-initial ideals with respect to the weight
//! (-1, w), plus tropical membership: w lies in the tropical variety
//! exactly when the t-initial ideal contains no monomial.

use crate::polyring::{
    embed_extension, psi_clear, weighted_degree, Monomial, MonomialOrder, Polynomial, RingCtx,
    WeightVector,
};
use crate::stdbasis::{saturate_monomial, std, StdBasis};
use num_rational::BigRational;
use num_traits::Zero;

/// Maximal w-degree over the terms of f; None for the zero polynomial.
pub fn ord_w(f: &Polynomial, w: &WeightVector, n_den: i64) -> Option<BigRational> {
    f.terms()
        .iter()
        .map(|(m, _)| weighted_degree(m, w, n_den))
        .max()
}

/// The terms of maximal w-degree.
pub fn initial_form(f: &Polynomial, w: &WeightVector, n_den: i64) -> Polynomial {
    let Some(top) = ord_w(f, w, n_den) else {
        return Polynomial::zero();
    };
    Polynomial::from_terms(
        f.terms()
            .iter()
            .filter(|(m, _)| weighted_degree(m, w, n_den) == top)
            .cloned()
            .collect(),
    )
}

/// Initial form with t set to 1. Distinct surviving terms never collide
/// in the x part (their w-degrees agree, so equal x parts force equal t
/// exponents).
pub fn t_initial_form(f: &Polynomial, w: &WeightVector, n_den: i64) -> Polynomial {
    let init = initial_form(f, w, n_den);
    Polynomial::from_terms(
        init.terms()
            .iter()
            .map(|(m, c)| (Monomial { t_exp: 0, x_exps: m.x_exps.clone() }, c.clone()))
            .collect(),
    )
}

/// Reduced degrevlex basis of the t-initial ideal of <gens> at w: compute
/// a standard basis for the mixed order, take t-initial forms, reduce.
pub fn t_initial_ideal(ctx: &RingCtx, gens: &[Polynomial], w: &WeightVector) -> Vec<Polynomial> {
    let (f, gens2, w_int) = psi_clear(gens, w);
    let _ = f;
    let sb = std(&gens2, &MonomialOrder::WeightedMixed(w_int.clone()));
    let w_rat: WeightVector = w_int
        .iter()
        .map(|&wi| BigRational::from_integer(wi.into()))
        .collect();
    let tins: Vec<Polynomial> = sb
        .gens
        .iter()
        .map(|g| t_initial_form(g, &w_rat, 1))
        .filter(|g| !g.is_zero())
        .collect();
    let _ = ctx;
    if tins.is_empty() {
        return vec![];
    }
    std(&tins, &MonomialOrder::DegRevLex).gens
}

/// No monomial in the ideal <gens> of K[x_1..x_n] (t-free generators):
/// saturating by the product of all variables must stay a proper ideal.
pub fn is_monomial_free(gens: &[Polynomial], nvars: usize) -> bool {
    let nonzero: Vec<Polynomial> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    if nonzero.is_empty() {
        return true;
    }
    let sat = saturate_monomial(&nonzero, &(0..nvars).collect::<Vec<_>>());
    !std(&sat, &MonomialOrder::DegRevLex).is_unit_ideal()
}

/// Does w lie in the tropical variety of <gens>? With a nontrivial
/// extension active, the symbol a becomes an honest variable of weight 0
/// and its minimal polynomial an extra generator; membership of (w, 0)
/// there is equivalent to membership of w over the extension.
pub fn trop_contains(ctx: &RingCtx, gens: &[Polynomial], w: &WeightVector) -> bool {
    if gens.iter().all(|g| g.is_zero()) {
        return true;
    }
    let (work_ctx, work_gens, work_w) = if ctx.ext.is_trivial() {
        (ctx.clone(), gens.to_vec(), w.to_vec())
    } else {
        let (c2, g2) = embed_extension(ctx, gens);
        let mut w2 = w.to_vec();
        w2.push(BigRational::zero());
        (c2, g2, w2)
    };
    let tin = t_initial_ideal(&work_ctx, &work_gens, &work_w);
    is_monomial_free(&tin, work_ctx.nvars())
}

/// Convenience: the t-initial ideal as a StdBasis for membership tests.
pub fn t_initial_basis(ctx: &RingCtx, gens: &[Polynomial], w: &WeightVector) -> StdBasis {
    let tin = t_initial_ideal(ctx, gens, w);
    std(&tin, &MonomialOrder::DegRevLex)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Coeff;

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

    fn w(vals: &[(i64, i64)]) -> WeightVector {
        vals.iter()
            .map(|&(p, q)| BigRational::new(p.into(), q.into()))
            .collect()
    }

    /// (2t + t^(3/2) + t^2)x^2 + (-3t^3 + 2t^4)y^2 + t^5 x y^2
    /// + (t + 3t^2)x^7 y^2, written over t^(1/2) (so N = 2).
    fn fractional_example() -> Polynomial {
        poly(&[
            (2, &[2, 0], 2),
            (3, &[2, 0], 1),
            (4, &[2, 0], 1),
            (6, &[0, 2], -3),
            (8, &[0, 2], 2),
            (10, &[1, 2], 1),
            (2, &[7, 2], 1),
            (4, &[7, 2], 3),
        ])
    }

    #[test]
    fn ord_and_initial_forms_of_fractional_example() {
        let f = fractional_example();
        let wv = w(&[(-2, 1), (-1, 1)]);
        assert_eq!(ord_w(&f, &wv, 2), Some(BigRational::from_integer((-5).into())));
        // IN_w = 2 t x^2 - 3 t^3 y^2, i.e. exponents 2 and 6 over t^(1/2)
        let init = initial_form(&f, &wv, 2);
        let expected = poly(&[(2, &[2, 0], 2), (6, &[0, 2], -3)]);
        assert_eq!(init, expected);
        let tin = t_initial_form(&f, &wv, 2);
        assert_eq!(tin, poly(&[(0, &[2, 0], 2), (0, &[0, 2], -3)]));
    }

    #[test]
    fn t_initial_ideal_of_line_pair() {
        // tin of <t*x + y, x + t> at (1, -1) is <x, y>
        let ctx = RingCtx::new(vec!["x".into(), "y".into()]);
        let gens = [
            poly(&[(1, &[1, 0], 1), (0, &[0, 1], 1)]),
            poly(&[(0, &[1, 0], 1), (1, &[0, 0], 1)]),
        ];
        let tin = t_initial_ideal(&ctx, &gens, &w(&[(1, 1), (-1, 1)]));
        let expected = vec![poly(&[(0, &[1, 0], 1)]), poly(&[(0, &[0, 1], 1)])];
        assert!(crate::stdbasis::ideals_equal(&tin, &expected));
    }

    #[test]
    fn monomial_freeness() {
        assert!(is_monomial_free(
            &[poly(&[(0, &[1, 0], 1), (0, &[0, 1], 1)])],
            2
        ));
        assert!(!is_monomial_free(
            &[poly(&[(0, &[1, 0], 1)]), poly(&[(0, &[0, 1], 1)])],
            2
        ));
        // <x + y, x - y> = <x, y> holds the monomial x even though no
        // generator is one
        assert!(!is_monomial_free(
            &[
                poly(&[(0, &[1, 0], 1), (0, &[0, 1], 1)]),
                poly(&[(0, &[1, 0], 1), (0, &[0, 1], -1)])
            ],
            2
        ));
        // <x^2 + x*y> = <x*(x+y)>: every multiple keeps the factor x + y
        assert!(is_monomial_free(&[poly(&[(0, &[1, 1], 1), (0, &[2, 0], 1)])], 2));
    }

    #[test]
    fn tropical_line_memberships() {
        // Trop(<x + y + 1>): the three rays of the tropical line
        let ctx = RingCtx::new(vec!["x".into(), "y".into()]);
        let gens = [poly(&[(0, &[1, 0], 1), (0, &[0, 1], 1), (0, &[0, 0], 1)])];
        for (a, b, expect) in [
            (2, 2, true),
            (0, -3, true),
            (-1, 0, true),
            (1, 2, false),
            (-1, -1, false),
        ] {
            assert_eq!(
                trop_contains(&ctx, &gens, &w(&[(a, 1), (b, 1)])),
                expect,
                "omega = ({}, {})",
                a,
                b
            );
        }
    }
}
