//! Sparse polynomials in K[t, x_1..x_n], t carrying an implicit
//! denominator N (the ring variable t stands for t^(1/N) of the original
//! uniformiser), plus the monomial orders and the ring transforms used by
//! the lifting algorithms.

use crate::algebra::{display_negative, needs_parens, Coeff, ExtContext, RatFunc};
use crate::error::{Error, Result};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;
use std::cmp::Ordering;
use std::sync::Arc;

/// t_exp plus one exponent per ring variable; all non-negative.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub t_exp: i64,
    pub x_exps: Vec<i64>,
}

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial { t_exp: 0, x_exps: vec![0; n] }
    }

    pub fn var(n: usize, i: usize) -> Self {
        let mut m = Monomial::one(n);
        m.x_exps[i] = 1;
        m
    }

    pub fn t(n: usize, e: i64) -> Self {
        Monomial { t_exp: e, x_exps: vec![0; n] }
    }

    pub fn is_one(&self) -> bool {
        self.t_exp == 0 && self.x_exps.iter().all(|&e| e == 0)
    }

    pub fn total_deg(&self) -> i64 {
        self.t_exp + self.x_exps.iter().sum::<i64>()
    }

    pub fn x_deg(&self) -> i64 {
        self.x_exps.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            t_exp: self.t_exp + other.t_exp,
            x_exps: self
                .x_exps
                .iter()
                .zip(&other.x_exps)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.t_exp <= other.t_exp
            && self.x_exps.iter().zip(&other.x_exps).all(|(a, b)| a <= b)
    }

    pub fn div(&self, other: &Monomial) -> Monomial {
        debug_assert!(other.divides(self));
        Monomial {
            t_exp: self.t_exp - other.t_exp,
            x_exps: self
                .x_exps
                .iter()
                .zip(&other.x_exps)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial {
            t_exp: self.t_exp.max(other.t_exp),
            x_exps: self
                .x_exps
                .iter()
                .zip(&other.x_exps)
                .map(|(a, b)| *a.max(b))
                .collect(),
        }
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.t_exp.min(other.t_exp) == 0
            && self
                .x_exps
                .iter()
                .zip(&other.x_exps)
                .all(|(a, b)| *a.min(b) == 0)
    }
}

/// Ring context: variable names, the denominator N of the uniformiser,
/// and the active extension (trivial = plain Q).
#[derive(Clone, Debug)]
pub struct RingCtx {
    pub names: Vec<String>,
    pub n_den: i64,
    pub ext: Arc<ExtContext>,
}

impl RingCtx {
    pub fn new(names: Vec<String>) -> Self {
        RingCtx { names, n_den: 1, ext: ExtContext::trivial() }
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Append one variable (for inverse-variable saturations and for the
    /// extension symbol).
    pub fn with_extra_var(&self, name: &str) -> RingCtx {
        let mut names = self.names.clone();
        names.push(name.to_string());
        RingCtx { names, n_den: self.n_den, ext: self.ext.clone() }
    }
}

/// Sparse polynomial; terms kept in a fixed ambient order (degrevlex over
/// x then t) so equal polynomials compare equal structurally.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    terms: Vec<(Monomial, Coeff)>,
}

/// Ambient storage order; any fixed total order works, degrevlex over
/// (x..., t) keeps printed output aligned with DegRevLex computations.
pub fn ambient_cmp(a: &Monomial, b: &Monomial) -> Ordering {
    degrevlex_cmp(a, b)
}

fn degrevlex_cmp(a: &Monomial, b: &Monomial) -> Ordering {
    match a.total_deg().cmp(&b.total_deg()) {
        Ordering::Equal => {}
        ord => return ord,
    }
    // reverse lexicographic with t as the last variable: scan from t
    // backwards; the monomial with the smaller exponent at the first
    // difference is the larger one.
    match b.t_exp.cmp(&a.t_exp) {
        Ordering::Equal => {}
        ord => return ord,
    }
    for i in (0..a.x_exps.len()).rev() {
        match b.x_exps[i].cmp(&a.x_exps[i]) {
            Ordering::Equal => {}
            ord => return ord,
        }
    }
    Ordering::Equal
}

fn degrevlex_x_cmp(a: &Monomial, b: &Monomial) -> Ordering {
    match a.x_deg().cmp(&b.x_deg()) {
        Ordering::Equal => {}
        ord => return ord,
    }
    for i in (0..a.x_exps.len()).rev() {
        match b.x_exps[i].cmp(&a.x_exps[i]) {
            Ordering::Equal => {}
            ord => return ord,
        }
    }
    Ordering::Equal
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MonomialOrder {
    /// Weight (-1 on t, w on x), ties by degrevlex on the x part alone.
    /// Not a well-order (1 > t); standard bases use Mora's normal form.
    WeightedMixed(Vec<i64>),
    DegRevLex,
    /// x_1 > ... > x_n > t.
    Lex,
    /// Eliminate the listed variables: degrevlex on that block first,
    /// then degrevlex on the remaining variables and t.
    Block(Vec<usize>),
    /// Graded lift of another order: total degree first, ties by the
    /// inner order with the last variable (the homogenizing one)
    /// ignored. Well-founded whatever the inner order is; std uses it to
    /// run plain Buchberger on homogenized input for non-global orders.
    Homog(Box<MonomialOrder>),
}

impl MonomialOrder {
    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::DegRevLex => degrevlex_cmp(a, b),
            MonomialOrder::Lex => {
                for i in 0..a.x_exps.len() {
                    match a.x_exps[i].cmp(&b.x_exps[i]) {
                        Ordering::Equal => {}
                        ord => return ord,
                    }
                }
                a.t_exp.cmp(&b.t_exp)
            }
            MonomialOrder::WeightedMixed(w) => {
                let wa: i64 = -a.t_exp
                    + w.iter().zip(&a.x_exps).map(|(wi, e)| wi * e).sum::<i64>();
                let wb: i64 = -b.t_exp
                    + w.iter().zip(&b.x_exps).map(|(wi, e)| wi * e).sum::<i64>();
                match wa.cmp(&wb) {
                    Ordering::Equal => degrevlex_x_cmp(a, b),
                    ord => ord,
                }
            }
            MonomialOrder::Block(elim) => {
                let da: i64 = elim.iter().map(|&i| a.x_exps[i]).sum();
                let db: i64 = elim.iter().map(|&i| b.x_exps[i]).sum();
                match da.cmp(&db) {
                    Ordering::Equal => {}
                    ord => return ord,
                }
                for &i in elim.iter().rev() {
                    match b.x_exps[i].cmp(&a.x_exps[i]) {
                        Ordering::Equal => {}
                        ord => return ord,
                    }
                }
                // inner block: degrevlex on everything else including t
                let rest: Vec<usize> =
                    (0..a.x_exps.len()).filter(|i| !elim.contains(i)).collect();
                let ra: i64 = a.t_exp + rest.iter().map(|&i| a.x_exps[i]).sum::<i64>();
                let rb: i64 = b.t_exp + rest.iter().map(|&i| b.x_exps[i]).sum::<i64>();
                match ra.cmp(&rb) {
                    Ordering::Equal => {}
                    ord => return ord,
                }
                match b.t_exp.cmp(&a.t_exp) {
                    Ordering::Equal => {}
                    ord => return ord,
                }
                for &i in rest.iter().rev() {
                    match b.x_exps[i].cmp(&a.x_exps[i]) {
                        Ordering::Equal => {}
                        ord => return ord,
                    }
                }
                Ordering::Equal
            }
            MonomialOrder::Homog(inner) => {
                match a.total_deg().cmp(&b.total_deg()) {
                    Ordering::Equal => {}
                    ord => return ord,
                }
                let strip = |m: &Monomial| Monomial {
                    t_exp: m.t_exp,
                    x_exps: m.x_exps[..m.x_exps.len() - 1].to_vec(),
                };
                inner.compare(&strip(a), &strip(b))
            }
        }
    }

    /// Global orders admit plain Buchberger; the mixed weighted order does
    /// not (1 > t) and runs through Mora's weak normal form instead.
    pub fn is_global(&self) -> bool {
        !matches!(self, MonomialOrder::WeightedMixed(_))
    }
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { terms: vec![] }
    }

    pub fn one(n: usize) -> Self {
        Polynomial::from_terms(vec![(Monomial::one(n), Coeff::one())])
    }

    pub fn var(n: usize, i: usize) -> Self {
        Polynomial::from_terms(vec![(Monomial::var(n, i), Coeff::one())])
    }

    pub fn constant(n: usize, c: Coeff) -> Self {
        Polynomial::from_terms(vec![(Monomial::one(n), c)])
    }

    /// Normalise: merge duplicates, drop zeros, sort by the ambient order
    /// descending.
    pub fn from_terms(mut terms: Vec<(Monomial, Coeff)>) -> Self {
        terms.sort_by(|a, b| ambient_cmp(&b.0, &a.0));
        let mut out: Vec<(Monomial, Coeff)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            if let Some(last) = out.last_mut() {
                if last.0 == m {
                    last.1 = last.1.add(&c);
                    continue;
                }
            }
            out.push((m, c));
        }
        out.retain(|(_, c)| !c.is_zero());
        Polynomial { terms: out }
    }

    pub fn terms(&self) -> &[(Monomial, Coeff)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn nvars(&self) -> usize {
        self.terms.first().map_or(0, |(m, _)| m.x_exps.len())
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        Polynomial::from_terms(terms)
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                terms.push((m1.mul(m2), c1.mul(c2)));
            }
        }
        Polynomial::from_terms(terms)
    }

    pub fn mul_term(&self, m: &Monomial, c: &Coeff) -> Polynomial {
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(m0, c0)| (m0.mul(m), c0.mul(c)))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Coeff) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(m, c0)| (m.clone(), c0.mul(c))).collect(),
        }
    }

    pub fn pow(&self, e: i64) -> Polynomial {
        assert!(e >= 0);
        let n = self.nvars();
        let mut out = Polynomial::one(n.max(1));
        if e == 0 {
            return if n == 0 { Polynomial::one(0) } else { out };
        }
        out = Polynomial::from_terms(vec![(Monomial::one(n), Coeff::one())]);
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    pub fn min_t_exp(&self) -> Option<i64> {
        self.terms.iter().map(|(m, _)| m.t_exp).min()
    }

    /// Multiply by t^delta; the result must stay in the polynomial ring.
    pub fn shift_t(&self, delta: i64) -> Polynomial {
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let t = m.t_exp + delta;
                    assert!(t >= 0, "negative t exponent after shift");
                    (Monomial { t_exp: t, x_exps: m.x_exps.clone() }, c.clone())
                })
                .collect(),
        }
    }

    /// Divide out the t-content (largest t power dividing every term).
    pub fn strip_t_content(&self) -> Polynomial {
        match self.min_t_exp() {
            Some(e) if e > 0 => self.shift_t(-e),
            _ => self.clone(),
        }
    }

    pub fn involves_var(&self, i: usize) -> bool {
        self.terms.iter().any(|(m, _)| m.x_exps[i] > 0)
    }

    pub fn involves_t(&self) -> bool {
        self.terms.iter().any(|(m, _)| m.t_exp > 0)
    }

    /// The coefficient of the monomial 1 (constant in both t and x).
    pub fn constant_coeff(&self) -> Coeff {
        self.terms
            .iter()
            .find(|(m, _)| m.is_one())
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Coeff::zero)
    }

    pub fn lead_ambient(&self) -> Option<&(Monomial, Coeff)> {
        self.terms.first()
    }

    /// Append a fresh variable slot (exponent 0 everywhere).
    pub fn extend_vars(&self, extra: usize) -> Polynomial {
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut x = m.x_exps.clone();
                    x.extend(std::iter::repeat(0).take(extra));
                    (Monomial { t_exp: m.t_exp, x_exps: x }, c.clone())
                })
                .collect(),
        }
    }

    /// Keep only the variables listed in `keep` (in that order); every
    /// discarded variable must be absent.
    pub fn project_vars(&self, keep: &[usize]) -> Polynomial {
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let total: i64 = m.x_exps.iter().sum();
                    let kept: i64 = keep.iter().map(|&i| m.x_exps[i]).sum();
                    assert_eq!(total, kept, "projection drops a live variable");
                    (
                        Monomial {
                            t_exp: m.t_exp,
                            x_exps: keep.iter().map(|&i| m.x_exps[i]).collect(),
                        },
                        c.clone(),
                    )
                })
                .collect(),
        }
    }

    pub fn map_coeffs(&self, f: impl Fn(&Coeff) -> Coeff) -> Polynomial {
        Polynomial::from_terms(
            self.terms.iter().map(|(m, c)| (m.clone(), f(c))).collect(),
        )
    }

    /// Evaluate at a point in K^n; requires t-free input.
    pub fn eval_x(&self, point: &[Coeff]) -> Coeff {
        let mut acc = Coeff::zero();
        for (m, c) in &self.terms {
            assert_eq!(m.t_exp, 0, "eval_x on a polynomial involving t");
            let mut term = c.clone();
            for (i, &e) in m.x_exps.iter().enumerate() {
                for _ in 0..e {
                    term = term.mul(&point[i]);
                }
            }
            acc = acc.add(&term);
        }
        acc
    }

    pub fn display(&self, ctx: &RingCtx) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let mut factors: Vec<String> = Vec::new();
            if m.t_exp == 1 {
                factors.push("t".into());
            } else if m.t_exp > 1 {
                factors.push(format!("t^{}", m.t_exp));
            }
            for (j, &e) in m.x_exps.iter().enumerate() {
                if e == 1 {
                    factors.push(ctx.names[j].clone());
                } else if e > 1 {
                    factors.push(format!("{}^{}", ctx.names[j], e));
                }
            }
            let (neg, coeff_str) = if display_negative(c) {
                (true, c.neg().to_string())
            } else {
                (false, c.to_string())
            };
            let body = if factors.is_empty() {
                coeff_str
            } else if coeff_str == "1" {
                factors.join("*")
            } else if needs_parens(c) {
                format!("({})*{}", c, factors.join("*"))
            } else {
                format!("{}*{}", coeff_str, factors.join("*"))
            };
            if i == 0 {
                if neg && !factors.is_empty() {
                    out.push_str(&format!("-{}", body));
                } else if neg {
                    out.push_str(&format!("-{}", body));
                } else {
                    out.push_str(&body);
                }
            } else if neg {
                out.push_str(&format!(" - {}", body));
            } else {
                out.push_str(&format!(" + {}", body));
            }
        }
        out
    }
}

pub type WeightVector = Vec<BigRational>;

/// w-degree of a monomial: -t_exp/N + sum(w_i * x_i).
pub fn weighted_degree(m: &Monomial, w: &[BigRational], n_den: i64) -> BigRational {
    let mut acc = -BigRational::new(m.t_exp.into(), n_den.into());
    for (wi, &e) in w.iter().zip(&m.x_exps) {
        acc += wi * BigRational::from_integer(e.into());
    }
    acc
}

/// Rescale t so the weight vector becomes integral: returns the factor F
/// (the lcm of the denominators), the rescaled generators (t -> t^F) and
/// the integer weights F*w.
pub fn psi_clear(gens: &[Polynomial], w: &[BigRational]) -> (i64, Vec<Polynomial>, Vec<i64>) {
    let mut f = 1i64;
    for wi in w {
        let d: i64 = wi.denom().try_into().expect("weight denominator overflow");
        f = f.lcm(&d);
    }
    let gens2: Vec<Polynomial> = gens
        .iter()
        .map(|g| {
            Polynomial {
                terms: g
                    .terms
                    .iter()
                    .map(|(m, c)| {
                        (Monomial { t_exp: m.t_exp * f, x_exps: m.x_exps.clone() }, c.clone())
                    })
                    .collect(),
            }
        })
        .collect();
    let w_int: Vec<i64> = w
        .iter()
        .map(|wi| {
            let scaled = wi * BigRational::from_integer(f.into());
            assert!(scaled.is_integer());
            scaled.to_integer().try_into().expect("weight overflow")
        })
        .collect();
    (f, gens2, w_int)
}

/// x_i -> t^(-w_i) x_i, then renormalise by the t-order so the result is
/// a polynomial with zero t-content.
pub fn phi(gens: &[Polynomial], w: &[i64]) -> Vec<Polynomial> {
    gens.iter()
        .map(|g| {
            let shifted: Vec<(Monomial, Coeff)> = g
                .terms
                .iter()
                .map(|(m, c)| {
                    let delta: i64 = w.iter().zip(&m.x_exps).map(|(wi, e)| wi * e).sum();
                    (Monomial { t_exp: m.t_exp - delta, x_exps: m.x_exps.clone() }, c.clone())
                })
                .collect();
            let min = shifted.iter().map(|(m, _)| m.t_exp).min().unwrap_or(0);
            Polynomial::from_terms(
                shifted
                    .into_iter()
                    .map(|(m, c)| {
                        (Monomial { t_exp: m.t_exp - min, x_exps: m.x_exps }, c)
                    })
                    .collect(),
            )
        })
        .collect()
}

/// x_i -> t^(-w_i) (u_i + x_i) with w <= 0, renormalised by the t-order.
pub fn gamma(gens: &[Polynomial], w: &[i64], u: &[Coeff]) -> Result<Vec<Polynomial>> {
    if w.iter().any(|&wi| wi > 0) {
        return Err(Error::PositiveGammaWeight);
    }
    let n = w.len();
    let mut out = Vec::with_capacity(gens.len());
    for g in gens {
        // cache (u_i + x_i)^e per variable
        let max_e: Vec<i64> = (0..n)
            .map(|i| g.terms.iter().map(|(m, _)| m.x_exps[i]).max().unwrap_or(0))
            .collect();
        let mut powers: Vec<Vec<Polynomial>> = Vec::with_capacity(n);
        for i in 0..n {
            let base = Polynomial::from_terms(vec![
                (Monomial::one(n), u[i].clone()),
                (Monomial::var(n, i), Coeff::one()),
            ]);
            let mut row = vec![Polynomial::one(n)];
            for e in 1..=max_e[i] {
                row.push(row[(e - 1) as usize].mul(&base));
            }
            powers.push(row);
        }
        let mut acc = Polynomial::zero();
        for (m, c) in g.terms() {
            let tshift: i64 = w.iter().zip(&m.x_exps).map(|(wi, e)| -wi * e).sum();
            let mut term = Polynomial::constant(n, c.clone())
                .mul_term(&Monomial::t(n, m.t_exp + tshift), &Coeff::one());
            for (i, &e) in m.x_exps.iter().enumerate() {
                if e > 0 {
                    term = term.mul(&powers[i][e as usize]);
                }
            }
            acc = acc.add(&term);
        }
        out.push(acc.strip_t_content());
    }
    Ok(out)
}

/// Move the extension symbol into the ring: each coefficient in Q[a]/<m>
/// becomes a polynomial in a fresh last variable `a`, and m(a) joins the
/// generators. Weights extend by 0 on a.
pub fn embed_extension(ctx: &RingCtx, gens: &[Polynomial]) -> (RingCtx, Vec<Polynomial>) {
    assert!(!ctx.ext.is_trivial(), "embedding a trivial extension");
    let n = ctx.nvars();
    let mut ctx2 = ctx.with_extra_var("a");
    ctx2.ext = ExtContext::trivial();
    let mut out: Vec<Polynomial> = Vec::with_capacity(gens.len() + 1);
    for g in gens {
        let mut terms = Vec::new();
        for (m, c) in g.terms() {
            let mut xa = m.x_exps.clone();
            xa.push(0);
            match c {
                Coeff::Rat(_) => terms.push((Monomial { t_exp: m.t_exp, x_exps: xa }, c.clone())),
                Coeff::Ext(e) => {
                    for (k, ck) in e.rep().coeffs().iter().enumerate() {
                        if ck.is_zero() {
                            continue;
                        }
                        let mut x = xa.clone();
                        x[n] = k as i64;
                        terms.push((
                            Monomial { t_exp: m.t_exp, x_exps: x },
                            Coeff::Rat(ck.clone()),
                        ));
                    }
                }
                Coeff::Fun(_) => panic!("cannot embed a rational-function coefficient"),
            }
        }
        out.push(Polynomial::from_terms(terms));
    }
    // m(a) as a generator
    let m = ctx.ext.minpoly();
    let mut terms = Vec::new();
    for (k, ck) in m.coeffs().iter().enumerate() {
        if ck.is_zero() {
            continue;
        }
        let mut x = vec![0i64; n + 1];
        x[n] = k as i64;
        terms.push((Monomial { t_exp: 0, x_exps: x }, Coeff::Rat(ck.clone())));
    }
    out.push(Polynomial::from_terms(terms));
    (ctx2, out)
}

/// View generators of K[t,x] over K(t): t moves into the coefficients.
pub fn to_rational_function_coeffs(gens: &[Polynomial]) -> Vec<Polynomial> {
    gens.iter()
        .map(|g| {
            Polynomial::from_terms(
                g.terms()
                    .iter()
                    .map(|(m, c)| {
                        let tc = Coeff::Fun(RatFunc::t_pow(m.t_exp));
                        (
                            Monomial { t_exp: 0, x_exps: m.x_exps.clone() },
                            c.mul(&tc),
                        )
                    })
                    .collect(),
            )
        })
        .collect()
}
