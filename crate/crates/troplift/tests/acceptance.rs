//! End-to-end checks, one per advertised behaviour, each reporting a
//! single pass/fail line.

use num_rational::BigRational;
use num_traits::Zero;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use std::panic::{catch_unwind, resume_unwind, AssertUnwindSafe};
use std::time::Instant;
use troplift::algebra::Coeff;
use troplift::cli::parse_polynomial;
use troplift::lift::{rdz, verify, zdl, Ideal, Laurent, RDZ_COEFF_RANGE, RDZ_MAX_ATTEMPTS};
use troplift::polyring::{
    embed_extension, phi, Monomial, MonomialOrder, Polynomial, RingCtx, WeightVector,
};
use troplift::solver::torus_zeros;
use troplift::stdbasis::{
    dimension, ideals_equal, saturate_t, std, weak_normal_form, CoeffField,
};
use troplift::tinitial::{
    initial_form, is_monomial_free, ord_w, t_initial_form, t_initial_ideal, trop_contains,
};
use troplift::tropcurve::newton_candidates;

fn report(n: u32, body: impl FnOnce()) {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(()) => println!("criterion {}: pass", n),
        Err(e) => {
            println!("criterion {}: fail", n);
            resume_unwind(e);
        }
    }
}

fn rat(p: i64, q: i64) -> BigRational {
    BigRational::new(p.into(), q.into())
}

fn wvec(vals: &[(i64, i64)]) -> WeightVector {
    vals.iter().map(|&(p, q)| rat(p, q)).collect()
}

fn xy_ctx() -> RingCtx {
    RingCtx::new(vec!["x".into(), "y".into()])
}

fn p(ctx: &RingCtx, s: &str) -> Polynomial {
    parse_polynomial(s, ctx).unwrap()
}

/// The zero-dimensional plane-curve germ used throughout: two branches,
/// one of them (t^2 + t^3, t^3 - 2t^4 + t^5 + ...) with valuation
/// (1, 3/2).
fn germ() -> Ideal {
    let ctx = xy_ctx();
    let gens = vec![
        p(&ctx, "y^2 + 4*t^2*y - t^3 + 2*t^4 - t^5"),
        p(&ctx, "(1 + t)*x - y - t - 3*t^2"),
        p(&ctx, "x*y + (-t + t^2)*x + t^2 - t^4"),
        p(&ctx, "x^2 - 2*t*x + t^2 - t^3"),
    ];
    Ideal { ctx, gens }
}

#[test]
fn criterion_1() {
    report(1, || {
        let start = Instant::now();
        let ctx = xy_ctx();
        let gens = [p(&ctx, "t*x + y"), p(&ctx, "x + t")];
        let tin = t_initial_ideal(&ctx, &gens, &wvec(&[(1, 1), (-1, 1)]));
        assert!(ideals_equal(&tin, &[p(&ctx, "x"), p(&ctx, "y")]));
        assert!(start.elapsed().as_secs() < 1);
    });
}

#[test]
fn criterion_2() {
    report(2, || {
        let start = Instant::now();
        let ctx = xy_ctx();
        let gens = [p(&ctx, "x + y + 1")];
        for (a, b, expect) in [
            (2, 2, true),
            (0, -3, true),
            (-1, 0, true),
            (1, 2, false),
            (-1, -1, false),
        ] {
            assert_eq!(
                trop_contains(&ctx, &gens, &wvec(&[(a, 1), (b, 1)])),
                expect,
                "membership at ({}, {})",
                a,
                b
            );
        }
        assert!(start.elapsed().as_secs() < 1);
    });
}

#[test]
fn criterion_3() {
    report(3, || {
        let start = Instant::now();
        let ctx = xy_ctx();
        // written over t^(1/2): every printed t stands for two ring units
        let half = |s: &str| {
            let f = p(&ctx, s);
            Polynomial::from_terms(
                f.terms()
                    .iter()
                    .map(|(m, c)| {
                        (Monomial { t_exp: 2 * m.t_exp, x_exps: m.x_exps.clone() }, c.clone())
                    })
                    .collect(),
            )
        };
        let t_half_sq = Polynomial::from_terms(vec![(
            Monomial { t_exp: 3, x_exps: vec![2, 0] },
            Coeff::one(),
        )]);
        let f = half("(2*t + t^2)*x^2 + (-3*t^3 + 2*t^4)*y^2 + t^5*x*y^2 + (t + 3*t^2)*x^7*y^2")
            .add(&t_half_sq);
        let w = wvec(&[(-2, 1), (-1, 1)]);
        assert_eq!(ord_w(&f, &w, 2), Some(rat(-5, 1)));
        assert_eq!(initial_form(&f, &w, 2), half("2*t*x^2 - 3*t^3*y^2"));
        assert_eq!(t_initial_form(&f, &w, 2), p(&ctx, "2*x^2 - 3*y^2"));
        assert!(start.elapsed().as_secs() < 1);
    });
}

fn laurent_terms(l: &Laurent) -> Vec<(i64, Coeff)> {
    l.clone()
}

#[test]
fn criterion_4() {
    report(4, || {
        let start = Instant::now();
        let ideal = germ();
        let out = zdl(3, &ideal, &wvec(&[(-1, 1), (-3, 2)]), 0).unwrap();
        assert_eq!(out.point.n_den, 2);
        let one = Coeff::one();
        assert_eq!(
            laurent_terms(&out.point.coords[0]),
            vec![(2, one.clone()), (3, one.clone())]
        );
        assert_eq!(
            laurent_terms(&out.point.coords[1]),
            vec![(3, one.clone()), (4, Coeff::from_i64(-2)), (5, one.clone())]
        );
        let us: Vec<Vec<Coeff>> = out.trace.iter().map(|l| l.u.clone()).collect();
        assert_eq!(
            us,
            vec![
                vec![Coeff::one(), Coeff::one()],
                vec![Coeff::one(), Coeff::from_i64(-2)],
                vec![Coeff::one()],
            ]
        );
        assert_eq!(out.trace[0].omega, wvec(&[(-1, 1), (-3, 2)]));
        assert_eq!(out.trace[1].omega, wvec(&[(-1, 2), (-1, 2)]));
        assert_eq!(out.trace[2].omega, wvec(&[(-1, 2)]));
        let residuals = verify(&out.point, &ideal);
        assert_eq!(residuals, vec![None, None, None, None]);
        assert!(start.elapsed().as_secs() < 30);
    });
}

#[test]
fn criterion_5() {
    report(5, || {
        let ideal = germ();
        let w = wvec(&[(-1, 1), (-3, 2)]);
        let outs: Vec<_> = (1..=3).map(|m| zdl(m, &ideal, &w, 0).unwrap()).collect();
        // each truncation is an exact prefix of the next
        for k in 0..2 {
            let (a, b) = (&outs[k], &outs[k + 1]);
            for i in 0..2 {
                let sa = b.point.n_den / a.point.n_den;
                let sb = 1;
                let ta: Vec<(i64, Coeff)> = a.point.coords[i]
                    .iter()
                    .map(|(e, c)| (e * sa, c.clone()))
                    .collect();
                let tb: Vec<(i64, Coeff)> = b.point.coords[i]
                    .iter()
                    .map(|(e, c)| (e * sb, c.clone()))
                    .collect();
                assert!(
                    ta.len() <= tb.len() && ta[..] == tb[..ta.len()],
                    "order-{} coordinate {} is not a prefix of order {}",
                    k + 1,
                    i,
                    k + 2
                );
            }
        }
        // valuations: minimum t-exponent is -N*omega componentwise
        for out in &outs {
            for i in 0..2 {
                let min = out.point.coords[i].first().unwrap().0;
                let expected = -(&w[i] * BigRational::from_integer(out.point.n_den.into()));
                assert_eq!(BigRational::from_integer(min.into()), expected);
            }
        }
        // residual order of the first generator at truncation order 2
        let res = verify(&outs[1].point, &ideal);
        assert_eq!(res[0], Some(rat(4, 1)));
    });
}

#[test]
fn criterion_6() {
    report(6, || {
        let ctx = xy_ctx();
        let line = Ideal { ctx: ctx.clone(), gens: vec![p(&ctx, "x + y + t")] };
        let w = wvec(&[(-1, 1), (-2, 1)]);
        for seed in 0..20u64 {
            let cut = rdz(&line, &w, seed, RDZ_COEFF_RANGE, RDZ_MAX_ATTEMPTS).unwrap();
            assert_eq!(
                dimension(&cut.ideal.gens, 2, CoeffField::Qt),
                0,
                "seed {}",
                seed
            );
            assert!(
                trop_contains(&cut.ideal.ctx, &cut.ideal.gens, &cut.omega),
                "seed {}",
                seed
            );
            if seed < 3 {
                for m in 1..=3u32 {
                    let out = zdl(m, &cut.ideal, &cut.omega, 0).unwrap();
                    for (i, expect) in [(0usize, 1i64), (1usize, 2i64)] {
                        let min = out.point.coords[i].first().unwrap().0;
                        assert_eq!(min, expect * out.point.n_den, "seed {} m {}", seed, m);
                    }
                    let res = &verify(&out.point, &line)[0];
                    match res {
                        None => {}
                        Some(r) => assert!(
                            *r >= BigRational::from_integer(((m + 1) as i64).into()),
                            "seed {} m {}: residual order {}",
                            seed,
                            m,
                            r
                        ),
                    }
                }
            }
        }
    });
}

// ---- randomized property suites ------------------------------------------

fn rand_poly(rng: &mut ChaCha20Rng, nvars: usize, with_t: bool) -> Polynomial {
    let nterms = rng.gen_range(1..=4);
    let terms: Vec<(Monomial, Coeff)> = (0..nterms)
        .map(|_| {
            let t_exp = if with_t { rng.gen_range(0..=3) } else { 0 };
            let x_exps: Vec<i64> = (0..nvars).map(|_| rng.gen_range(0..=2)).collect();
            let mut c = 0;
            while c == 0 {
                c = rng.gen_range(-5..=5);
            }
            (Monomial { t_exp, x_exps }, Coeff::from_i64(c))
        })
        .collect();
    let poly = Polynomial::from_terms(terms);
    if poly.is_zero() {
        Polynomial::one(nvars)
    } else {
        poly
    }
}

// Random weights stay nonpositive: that is the regime the solver ever
// feeds to the mixed order (positive entries are moved into t first),
// and random positive weights make Mora division astronomically slow.
fn rand_weight(rng: &mut ChaCha20Rng, nvars: usize) -> WeightVector {
    (0..nvars).map(|_| rat(rng.gen_range(-2..=0), 1)).collect()
}

#[test]
fn criterion_7() {
    report(7, || {
        for (name, suite) in [
            ("tin multiplicative", suite_tin_multiplicative as fn()),
            ("phi compatibility", suite_phi_compatibility),
            ("buchberger", suite_buchberger),
            ("saturation idempotent", suite_saturation_idempotent),
            ("monomial freeness", suite_monomial_freeness_brute_force),
            ("trop antimonotone", suite_trop_antimonotone),
            ("newton completeness", suite_newton_completeness),
        ] {
            let t = Instant::now();
            suite();
            eprintln!("  suite {}: {:?}", name, t.elapsed());
        }
    });
}

fn suite_tin_multiplicative() {
    let mut rng = ChaCha20Rng::seed_from_u64(701);
    for _ in 0..120 {
        let f = rand_poly(&mut rng, 2, true);
        let g = rand_poly(&mut rng, 2, true);
        // no division happens here, so both signs are cheap to cover
        let w: WeightVector = (0..2).map(|_| rat(rng.gen_range(-2..=2), 1)).collect();
        let lhs = t_initial_form(&f.mul(&g), &w, 1);
        let rhs = t_initial_form(&f, &w, 1).mul(&t_initial_form(&g, &w, 1));
        assert_eq!(lhs, rhs, "f = {:?}, g = {:?}, w = {:?}", f, g, w);
    }
}

fn suite_phi_compatibility() {
    // sending x_i to t^{-w_i} x_i moves the w-grading onto t alone, so
    // the t-initial form at w equals the one at weight 0 afterwards
    let mut rng = ChaCha20Rng::seed_from_u64(702);
    for _ in 0..120 {
        let f = rand_poly(&mut rng, 2, true);
        let wi: Vec<i64> = (0..2).map(|_| rng.gen_range(-2..=2)).collect();
        let w: WeightVector = wi.iter().map(|&v| rat(v, 1)).collect();
        let moved = phi(&[f.clone()], &wi);
        let zero_w = wvec(&[(0, 1), (0, 1)]);
        assert_eq!(
            t_initial_form(&moved[0], &zero_w, 1),
            t_initial_form(&f, &w, 1),
            "f = {:?}, w = {:?}",
            f,
            wi
        );
    }
}

fn order_lead<'a>(f: &'a Polynomial, ord: &MonomialOrder) -> &'a (Monomial, Coeff) {
    f.terms()
        .iter()
        .max_by(|(a, _), (b, _)| ord.compare(a, b))
        .unwrap()
}

fn suite_buchberger() {
    let mut rng = ChaCha20Rng::seed_from_u64(703);
    for case in 0..110 {
        let gens: Vec<Polynomial> = (0..2).map(|_| rand_poly(&mut rng, 2, true)).collect();
        let ord = if case % 2 == 0 {
            MonomialOrder::DegRevLex
        } else {
            MonomialOrder::WeightedMixed((0..2).map(|_| rng.gen_range(-2..=0)).collect())
        };
        let basis = std(&gens, &ord);
        for i in 0..basis.gens.len() {
            for j in (i + 1)..basis.gens.len() {
                let (mi, ci) = order_lead(&basis.gens[i], &ord);
                let (mj, cj) = order_lead(&basis.gens[j], &ord);
                let lcm = mi.lcm(mj);
                let s = basis.gens[i]
                    .mul_term(&lcm.div(mi), &ci.inv())
                    .sub(&basis.gens[j].mul_term(&lcm.div(mj), &cj.inv()));
                let (nf, _) = weak_normal_form(&s, &basis.gens, &ord);
                assert!(
                    nf.is_zero(),
                    "S-polynomial of {} and {} does not reduce to zero (case {})",
                    i,
                    j,
                    case
                );
            }
        }
    }
}

fn suite_saturation_idempotent() {
    let mut rng = ChaCha20Rng::seed_from_u64(704);
    for _ in 0..110 {
        let t = Polynomial::from_terms(vec![(Monomial::t(2, 1), Coeff::one())]);
        let gens: Vec<Polynomial> = (0..2)
            .map(|_| {
                let f = rand_poly(&mut rng, 2, true);
                if rng.gen_bool(0.5) {
                    f.mul(&t)
                } else {
                    f
                }
            })
            .collect();
        let once = saturate_t(&gens);
        let twice = saturate_t(&once);
        assert!(ideals_equal(&once, &twice), "gens = {:?}", gens);
    }
}

fn suite_monomial_freeness_brute_force() {
    // zero-dimensional t-free ideals <f(x), g(y)> with roots among small
    // integers; brute force searches all monomials of degree at most 6
    let mut rng = ChaCha20Rng::seed_from_u64(705);
    for _ in 0..110 {
        let univariate = |rng: &mut ChaCha20Rng, var: usize| {
            let deg = rng.gen_range(1..=3);
            let mut f = Polynomial::one(2);
            for _ in 0..deg {
                let root = Coeff::from_i64(rng.gen_range(-1..=2));
                f = f.mul(&Polynomial::var(2, var).sub(&Polynomial::constant(2, root)));
            }
            f
        };
        let gens = vec![univariate(&mut rng, 0), univariate(&mut rng, 1)];
        let basis = std(&gens, &MonomialOrder::DegRevLex);
        let mut found = false;
        for a in 0..=6i64 {
            for b in 0..=(6 - a) {
                let m = Polynomial::from_terms(vec![(
                    Monomial { t_exp: 0, x_exps: vec![a, b] },
                    Coeff::one(),
                )]);
                if basis.contains(&m) {
                    found = true;
                }
            }
        }
        assert_eq!(
            is_monomial_free(&gens, 2),
            !found,
            "gens = {:?}",
            gens
        );
    }
}

fn suite_trop_antimonotone() {
    // a bigger ideal has a smaller tropical variety
    let mut rng = ChaCha20Rng::seed_from_u64(706);
    let ctx = xy_ctx();
    let mut checked = 0;
    while checked < 100 {
        let small = vec![rand_poly(&mut rng, 2, true)];
        let mut big = small.clone();
        big.push(rand_poly(&mut rng, 2, true));
        let w = rand_weight(&mut rng, 2);
        if trop_contains(&ctx, &big, &w) {
            assert!(
                trop_contains(&ctx, &small, &w),
                "gens = {:?}, w = {:?}",
                big,
                w
            );
        }
        checked += 1;
    }
}

fn suite_newton_completeness() {
    // plant roots c*t^k with k > 0; every -k must appear among the
    // candidate slopes
    let mut rng = ChaCha20Rng::seed_from_u64(707);
    for _ in 0..110 {
        let nroots = rng.gen_range(1..=3);
        let mut g = Polynomial::one(1);
        let mut planted: Vec<i64> = Vec::new();
        for _ in 0..nroots {
            let k = rng.gen_range(1..=4);
            let mut c = 0;
            while c == 0 {
                c = rng.gen_range(-3..=3);
            }
            planted.push(k);
            let root = Polynomial::from_terms(vec![(Monomial::t(1, k), Coeff::from_i64(c))]);
            g = g.mul(&Polynomial::var(1, 0).sub(&root));
        }
        let cands = newton_candidates(&g, 0);
        for k in planted {
            assert!(
                cands.contains(&rat(-k, 1)),
                "missing slope {} in {:?} for {:?}",
                -k,
                cands,
                g
            );
        }
    }
}

#[test]
fn criterion_8() {
    report(8, || {
        let ideal = germ();
        let w = wvec(&[(-1, 1), (-3, 2)]);
        let tin = t_initial_ideal(&ideal.ctx, &ideal.gens, &w);
        assert_eq!(dimension(&tin, 2, CoeffField::Q), 0);
        assert_eq!(dimension(&ideal.gens, 2, CoeffField::Qt), 0);
        let ctx = xy_ctx();
        assert_eq!(dimension(&[p(&ctx, "x + y + 1")], 2, CoeffField::Qt), 1);
    });
}

#[test]
fn criterion_9() {
    report(9, || {
        let ctx = xy_ctx();
        let gens = [p(&ctx, "x^2 - 2"), p(&ctx, "y - x")];
        let zeros = torus_zeros(&ctx, &gens).unwrap();
        assert_eq!(zeros.len(), 1);
        let z = &zeros[0];
        let a = Coeff::Ext(troplift::algebra::ExtElement::generator(z.ext.clone()));
        assert_eq!(z.point, vec![a.clone(), a.clone()]);
        let minpoly = z.ext.minpoly();
        let expected = troplift::algebra::UniPoly::var()
            .mul(&troplift::algebra::UniPoly::var())
            .sub(&troplift::algebra::UniPoly::constant(rat(2, 1)));
        assert_eq!(*minpoly, expected);

        // membership over the extension, cross-checked against a direct
        // monomial search in the embedded t-initial ideal
        let mut ext_ctx = xy_ctx();
        ext_ctx.ext = z.ext.clone();
        let xa = Polynomial::var(2, 0).sub(&Polynomial::constant(2, a.clone()));
        let ya = Polynomial::var(2, 1).sub(&Polynomial::constant(2, a.clone()));
        let ext_gens = vec![xa, ya];
        for w in [wvec(&[(0, 1), (0, 1)]), wvec(&[(-1, 1), (-1, 1)])] {
            let claimed = trop_contains(&ext_ctx, &ext_gens, &w);
            let (c3, g3) = embed_extension(&ext_ctx, &ext_gens);
            let mut w3 = w.clone();
            w3.push(BigRational::zero());
            let tin = t_initial_ideal(&c3, &g3, &w3);
            let basis = std(&tin, &MonomialOrder::DegRevLex);
            let mut found = false;
            for a0 in 0..=6i64 {
                for b0 in 0..=(6 - a0) {
                    for c0 in 0..=(6 - a0 - b0) {
                        let m = Polynomial::from_terms(vec![(
                            Monomial { t_exp: 0, x_exps: vec![a0, b0, c0] },
                            Coeff::one(),
                        )]);
                        if basis.contains(&m) {
                            found = true;
                        }
                    }
                }
            }
            assert_eq!(claimed, !found, "w = {:?}", w);
        }
        // sanity on the expected booleans themselves
        assert!(trop_contains(&ext_ctx, &ext_gens, &wvec(&[(0, 1), (0, 1)])));
        assert!(!trop_contains(&ext_ctx, &ext_gens, &wvec(&[(-1, 1), (-1, 1)])));
    });
}
