//! The text front end: a small input language (vars/gens/omega/order/
//! seed sections, polynomial expressions over Q[t, x...]), command
//! dispatch and both human and JSON output.

use crate::algebra::Coeff;
use crate::error::{Error, Result};
use crate::lift::{lift_point, rdz, Ideal, Laurent, LiftResult, RDZ_COEFF_RANGE, RDZ_MAX_ATTEMPTS};
use crate::polyring::{Monomial, Polynomial, RingCtx};
use crate::stdbasis::{dimension, CoeffField};
use crate::tinitial::{t_initial_ideal, trop_contains};
use num_rational::BigRational;
use num_traits::Signed;
use serde_json::{json, Value};

#[derive(Clone, Debug)]
pub struct InputFile {
    pub ctx: RingCtx,
    pub gens: Vec<Polynomial>,
    pub omega: Option<Vec<BigRational>>,
    pub order: Option<u32>,
    pub seed: Option<u64>,
}

// ---- tokenizer -----------------------------------------------------------

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Int(String),
    Sym(char),
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

fn perr<T>(line: usize, col: usize, msg: impl Into<String>) -> Result<T> {
    Err(Error::Parse { line, col, msg: msg.into() })
}

fn tokenize(text: &str) -> Result<Vec<Spanned>> {
    let mut out = Vec::new();
    let mut line = 1usize;
    let mut col = 1usize;
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        if c == '\n' {
            chars.next();
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            chars.next();
            col += 1;
            continue;
        }
        if c == '#' {
            while let Some(&c2) = chars.peek() {
                if c2 == '\n' {
                    break;
                }
                chars.next();
                col += 1;
            }
            continue;
        }
        let start_col = col;
        if c.is_ascii_alphabetic() || c == '_' {
            let mut s = String::new();
            while let Some(&c2) = chars.peek() {
                if c2.is_ascii_alphanumeric() || c2 == '_' {
                    s.push(c2);
                    chars.next();
                    col += 1;
                } else {
                    break;
                }
            }
            out.push(Spanned { tok: Tok::Ident(s), line, col: start_col });
        } else if c.is_ascii_digit() {
            let mut s = String::new();
            while let Some(&c2) = chars.peek() {
                if c2.is_ascii_digit() {
                    s.push(c2);
                    chars.next();
                    col += 1;
                } else {
                    break;
                }
            }
            out.push(Spanned { tok: Tok::Int(s), line, col: start_col });
        } else if "+-*^()/:,;".contains(c) {
            chars.next();
            col += 1;
            out.push(Spanned { tok: Tok::Sym(c), line, col: start_col });
        } else {
            return perr(line, col, format!("unexpected character '{}'", c));
        }
    }
    Ok(out)
}

// ---- expression parser ---------------------------------------------------

struct Parser<'a> {
    toks: &'a [Spanned],
    pos: usize,
    ctx: &'a RingCtx,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Spanned> {
        self.toks.get(self.pos)
    }

    fn at(&self) -> (usize, usize) {
        self.peek()
            .map(|s| (s.line, s.col))
            .or_else(|| self.toks.last().map(|s| (s.line, s.col + 1)))
            .unwrap_or((1, 1))
    }

    fn eat_sym(&mut self, c: char) -> bool {
        if matches!(self.peek(), Some(Spanned { tok: Tok::Sym(s), .. }) if *s == c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = if self.eat_sym('-') {
            self.term()?.neg()
        } else {
            self.term()?
        };
        loop {
            if self.eat_sym('+') {
                acc = acc.add(&self.term()?);
            } else if self.eat_sym('-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.power()?;
        while self.eat_sym('*') {
            acc = acc.mul(&self.power()?);
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if self.eat_sym('^') {
            let (l, c) = self.at();
            match self.peek().cloned() {
                Some(Spanned { tok: Tok::Int(s), .. }) => {
                    self.pos += 1;
                    let e: i64 = s
                        .parse()
                        .map_err(|_| Error::Parse { line: l, col: c, msg: "bad exponent".into() })?;
                    Ok(base.pow(e))
                }
                _ => perr(l, c, "expected a non-negative integer exponent"),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Polynomial> {
        let n = self.ctx.nvars();
        let (l, c) = self.at();
        match self.peek().cloned() {
            Some(Spanned { tok: Tok::Sym('('), .. }) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat_sym(')') {
                    let (l2, c2) = self.at();
                    return perr(l2, c2, "expected ')'");
                }
                Ok(e)
            }
            Some(Spanned { tok: Tok::Int(s), .. }) => {
                self.pos += 1;
                let p: i64 = s
                    .parse()
                    .map_err(|_| Error::Parse { line: l, col: c, msg: "integer overflow".into() })?;
                // rational literal p/q
                if matches!(self.peek(), Some(Spanned { tok: Tok::Sym('/'), .. })) {
                    self.pos += 1;
                    let (l2, c2) = self.at();
                    match self.peek().cloned() {
                        Some(Spanned { tok: Tok::Int(qs), .. }) => {
                            self.pos += 1;
                            let q: i64 = qs.parse().map_err(|_| Error::Parse {
                                line: l2,
                                col: c2,
                                msg: "integer overflow".into(),
                            })?;
                            if q == 0 {
                                return perr(l2, c2, "zero denominator");
                            }
                            Ok(Polynomial::constant(n, Coeff::from_frac(p, q)))
                        }
                        _ => perr(l2, c2, "expected denominator"),
                    }
                } else {
                    Ok(Polynomial::constant(n, Coeff::from_i64(p)))
                }
            }
            Some(Spanned { tok: Tok::Ident(name), .. }) => {
                self.pos += 1;
                if name == "t" {
                    return Ok(Polynomial::from_terms(vec![(Monomial::t(n, 1), Coeff::one())]));
                }
                match self.ctx.var_index(&name) {
                    Some(i) => Ok(Polynomial::var(n, i)),
                    None => perr(l, c, format!("unknown variable '{}'", name)),
                }
            }
            _ => perr(l, c, "expected a polynomial atom"),
        }
    }
}

/// Parse one polynomial expression over the given ring.
pub fn parse_polynomial(text: &str, ctx: &RingCtx) -> Result<Polynomial> {
    let toks = tokenize(text)?;
    let mut p = Parser { toks: &toks, pos: 0, ctx };
    let poly = p.expr()?;
    if p.pos != toks.len() {
        let (l, c) = p.at();
        return perr(l, c, "trailing input after expression");
    }
    Ok(poly)
}

fn parse_rational(s: &str, line: usize, col: usize) -> Result<BigRational> {
    let s = s.trim();
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let (num, den) = match body.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (body, "1"),
    };
    let p: i64 = num
        .parse()
        .map_err(|_| Error::Parse { line, col, msg: format!("bad rational '{}'", s) })?;
    let q: i64 = den
        .parse()
        .map_err(|_| Error::Parse { line, col, msg: format!("bad rational '{}'", s) })?;
    if q == 0 {
        return perr(line, col, "zero denominator");
    }
    let r = BigRational::new(p.into(), q.into());
    Ok(if neg { -r } else { r })
}

/// Parse a weight vector like "-1,-3/2" or "(-1, -3/2)".
pub fn parse_omega(s: &str) -> Result<Vec<BigRational>> {
    let s = s.trim().trim_start_matches('(').trim_end_matches(')');
    s.split(',')
        .map(|part| parse_rational(part, 1, 1))
        .collect()
}

/// Parse the whole input file.
pub fn parse_input(text: &str) -> Result<InputFile> {
    let toks = tokenize(text)?;
    let mut pos = 0usize;
    let mut names: Option<Vec<String>> = None;
    let mut gens_span: Option<(usize, usize)> = None; // token range
    let mut omega: Option<Vec<BigRational>> = None;
    let mut order: Option<u32> = None;
    let mut seed: Option<u64> = None;
    let keyword = |t: &Tok| -> Option<&'static str> {
        if let Tok::Ident(s) = t {
            for k in ["vars", "gens", "omega", "order", "seed"] {
                if s == k {
                    return Some(k);
                }
            }
        }
        None
    };
    while pos < toks.len() {
        let sp = &toks[pos];
        let Some(kw) = keyword(&sp.tok) else {
            return perr(sp.line, sp.col, "expected a section keyword (vars/gens/omega/order/seed)");
        };
        pos += 1;
        if pos >= toks.len() || toks[pos].tok != Tok::Sym(':') {
            let (l, c) = toks
                .get(pos)
                .map(|s| (s.line, s.col))
                .unwrap_or((sp.line, sp.col + kw.len()));
            return perr(l, c, "expected ':' after section keyword");
        }
        pos += 1;
        // payload runs until the next section keyword at top level
        let start = pos;
        while pos < toks.len() && keyword(&toks[pos].tok).is_none() {
            pos += 1;
        }
        let end = pos;
        match kw {
            "vars" => {
                let mut vs = Vec::new();
                let mut i = start;
                loop {
                    match toks.get(i) {
                        Some(Spanned { tok: Tok::Ident(s), line, col }) => {
                            if s == "t" {
                                return perr(*line, *col, "t is the uniformiser, not a ring variable");
                            }
                            if vs.contains(s) {
                                return perr(*line, *col, format!("duplicate variable '{}'", s));
                            }
                            vs.push(s.clone());
                            i += 1;
                        }
                        Some(sp2) => return perr(sp2.line, sp2.col, "expected a variable name"),
                        None => return perr(sp.line, sp.col, "empty vars section"),
                    }
                    if i < end && toks[i].tok == Tok::Sym(',') {
                        i += 1;
                        continue;
                    }
                    break;
                }
                if i != end {
                    return perr(toks[i].line, toks[i].col, "unexpected token in vars section");
                }
                names = Some(vs);
            }
            "gens" => {
                gens_span = Some((start, end));
            }
            "omega" => {
                let mut ws = Vec::new();
                let mut i = start;
                while i < end {
                    if matches!(toks[i].tok, Tok::Sym('(') | Tok::Sym(')')) {
                        i += 1;
                        continue;
                    }
                    let mut neg = false;
                    if toks[i].tok == Tok::Sym('-') {
                        neg = true;
                        i += 1;
                    }
                    let Some(Spanned { tok: Tok::Int(p), line, col }) = toks.get(i) else {
                        let (l, c) = toks.get(i).map(|s| (s.line, s.col)).unwrap_or((sp.line, sp.col));
                        return perr(l, c, "expected a rational weight");
                    };
                    let (l, c) = (*line, *col);
                    i += 1;
                    let mut text = p.clone();
                    if i < end && toks[i].tok == Tok::Sym('/') {
                        i += 1;
                        let Some(Spanned { tok: Tok::Int(q), .. }) = toks.get(i) else {
                            return perr(l, c, "expected denominator");
                        };
                        text = format!("{}/{}", text, q);
                        i += 1;
                    }
                    let mut r = parse_rational(&text, l, c)?;
                    if neg {
                        r = -r;
                    }
                    ws.push(r);
                    if i < end && toks[i].tok == Tok::Sym(',') {
                        i += 1;
                    }
                }
                omega = Some(ws);
            }
            "order" | "seed" => {
                let Some(Spanned { tok: Tok::Int(v), line, col }) = toks.get(start) else {
                    let (l, c) = toks.get(start).map(|s| (s.line, s.col)).unwrap_or((sp.line, sp.col));
                    return perr(l, c, "expected an integer");
                };
                if end != start + 1 {
                    return perr(*line, *col, "unexpected token after integer");
                }
                if kw == "order" {
                    order = Some(v.parse().map_err(|_| Error::Parse {
                        line: *line,
                        col: *col,
                        msg: "order out of range".into(),
                    })?);
                } else {
                    seed = Some(v.parse().map_err(|_| Error::Parse {
                        line: *line,
                        col: *col,
                        msg: "seed out of range".into(),
                    })?);
                }
            }
            _ => unreachable!(),
        }
    }
    let Some(names) = names else {
        return perr(1, 1, "missing vars section");
    };
    let ctx = RingCtx::new(names);
    let Some((gs, ge)) = gens_span else {
        return perr(1, 1, "missing gens section");
    };
    // split the gens token range on ';'
    let mut gens = Vec::new();
    let mut chunk_start = gs;
    let mut i = gs;
    while i < ge {
        if toks[i].tok == Tok::Sym(';') {
            let slice = &toks[chunk_start..i];
            if slice.is_empty() {
                return perr(toks[i].line, toks[i].col, "empty generator");
            }
            let mut p = Parser { toks: slice, pos: 0, ctx: &ctx };
            let poly = p.expr()?;
            if p.pos != slice.len() {
                let (l, c) = p.at();
                return perr(l, c, "trailing input in generator");
            }
            if poly.is_zero() {
                return perr(slice[0].line, slice[0].col, "zero generator");
            }
            gens.push(poly);
            chunk_start = i + 1;
        }
        i += 1;
    }
    if chunk_start != ge {
        let sp2 = &toks[chunk_start];
        return perr(sp2.line, sp2.col, "generator not terminated by ';'");
    }
    if gens.is_empty() {
        return perr(1, 1, "gens section has no generators");
    }
    Ok(InputFile { ctx, gens, omega, order, seed })
}

// ---- output helpers ------------------------------------------------------

fn rational_str(r: &BigRational) -> String {
    r.to_string()
}

fn omega_str(w: &[BigRational]) -> String {
    let parts: Vec<String> = w.iter().map(rational_str).collect();
    format!("({})", parts.join(", "))
}

/// Render a Laurent coordinate in ring units (t stands for t^(1/N)).
pub fn laurent_str(l: &Laurent) -> String {
    if l.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (e, c)) in l.iter().enumerate() {
        let mono = match e {
            0 => String::new(),
            1 => "t".into(),
            _ => format!("t^{}", e),
        };
        let neg = matches!(c, Coeff::Rat(r) if r.is_negative());
        let mag = if neg { c.neg() } else { c.clone() };
        let mag_str = mag.to_string();
        let body = if mono.is_empty() {
            mag_str
        } else if mag_str == "1" {
            mono
        } else if mag_str.contains(' ') || mag_str.contains('+') {
            format!("({})*{}", mag, mono)
        } else {
            format!("{}*{}", mag_str, mono)
        };
        if i == 0 {
            out.push_str(&format!("{}{}", if neg { "-" } else { "" }, body));
        } else {
            out.push_str(&format!(" {} {}", if neg { "-" } else { "+" }, body));
        }
    }
    out
}

fn lift_json(ctx: &RingCtx, r: &LiftResult) -> Value {
    let n_den = r.point.n_den;
    let point: Vec<Value> = ctx
        .names
        .iter()
        .zip(&r.point.coords)
        .map(|(name, l)| {
            let terms: Vec<Value> = l
                .iter()
                .map(|(e, c)| {
                    json!({
                        "coeff": c.to_string(),
                        "t_exp": rational_str(&BigRational::new((*e).into(), n_den.into())),
                    })
                })
                .collect();
            json!({ "var": name, "terms": terms })
        })
        .collect();
    let minpoly: Value = if r.ext.is_trivial() {
        Value::Null
    } else {
        Value::String(r.ext.minpoly().display("a"))
    };
    let trace: Vec<Value> = r
        .trace
        .iter()
        .map(|lvl| {
            json!({
                "omega": lvl.omega.iter().map(rational_str).collect::<Vec<_>>(),
                "u": lvl.u.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                "vars": lvl.vars.clone(),
            })
        })
        .collect();
    let residuals: Vec<Value> = r
        .residual_orders
        .iter()
        .map(|o| match o {
            None => Value::String("inf".into()),
            Some(r) => Value::String(rational_str(r)),
        })
        .collect();
    json!({
        "N": n_den,
        "point": point,
        "extension": { "minpoly": minpoly },
        "trace": trace,
        "residual_orders": residuals,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Tin,
    Trop,
    Dim,
    Lift,
    Rdz,
}

pub struct Options {
    pub omega: Option<Vec<BigRational>>,
    pub order: Option<u32>,
    pub seed: Option<u64>,
    pub branch: usize,
    pub json: bool,
}

fn require_omega(input: &InputFile, opts: &Options) -> Result<Vec<BigRational>> {
    opts.omega
        .clone()
        .or_else(|| input.omega.clone())
        .ok_or_else(|| Error::Invalid("omega required (flag --omega or omega: section)".into()))
}

/// Run a command over parsed input; the returned string is the full
/// stdout payload.
pub fn run(cmd: Command, input: &InputFile, opts: &Options) -> Result<String> {
    let ctx = &input.ctx;
    match cmd {
        Command::Tin => {
            let w = require_omega(input, opts)?;
            if w.len() != ctx.nvars() {
                return Err(Error::Invalid("omega length does not match vars".into()));
            }
            let tin = t_initial_ideal(ctx, &input.gens, &w);
            if opts.json {
                let gens: Vec<String> = tin.iter().map(|g| g.display(ctx)).collect();
                Ok(serde_json::to_string(&json!({ "tin": gens })).unwrap())
            } else {
                let gens: Vec<String> = tin.iter().map(|g| g.display(ctx)).collect();
                Ok(format!("tin: {}", gens.join(", ")))
            }
        }
        Command::Trop => {
            let w = require_omega(input, opts)?;
            if w.len() != ctx.nvars() {
                return Err(Error::Invalid("omega length does not match vars".into()));
            }
            let ans = trop_contains(ctx, &input.gens, &w);
            if opts.json {
                Ok(serde_json::to_string(&json!({ "contains": ans })).unwrap())
            } else {
                Ok(format!("{}", ans))
            }
        }
        Command::Dim => {
            let d = dimension(&input.gens, ctx.nvars(), CoeffField::Qt);
            if opts.json {
                Ok(serde_json::to_string(&json!({ "dim": d })).unwrap())
            } else {
                Ok(format!("{}", d))
            }
        }
        Command::Rdz => {
            let w = require_omega(input, opts)?;
            let seed = opts.seed.or(input.seed).unwrap_or(0);
            let ideal = Ideal { ctx: ctx.clone(), gens: input.gens.clone() };
            let out = rdz(&ideal, &w, seed, RDZ_COEFF_RANGE, RDZ_MAX_ATTEMPTS)?;
            let gens: Vec<String> =
                out.ideal.gens.iter().map(|g| g.display(&out.ideal.ctx)).collect();
            let forms: Vec<String> =
                out.forms.iter().map(|g| g.display(&out.ideal.ctx)).collect();
            if opts.json {
                Ok(serde_json::to_string(&json!({
                    "N": out.ideal.ctx.n_den,
                    "gens": gens,
                    "forms": forms,
                    "attempts": out.attempts,
                }))
                .unwrap())
            } else {
                let mut s = format!("N: {}\n", out.ideal.ctx.n_den);
                s.push_str(&format!("gens: {}\n", gens.join(", ")));
                s.push_str(&format!("forms: {}\n", forms.join(", ")));
                s.push_str(&format!("attempts: {}", out.attempts));
                Ok(s)
            }
        }
        Command::Lift => {
            let w = require_omega(input, opts)?;
            if w.len() != ctx.nvars() {
                return Err(Error::Invalid("omega length does not match vars".into()));
            }
            let m = opts.order.or(input.order).unwrap_or(1);
            if m == 0 {
                return Err(Error::Invalid("order must be at least 1".into()));
            }
            let seed = opts.seed.or(input.seed).unwrap_or(0);
            let ideal = Ideal { ctx: ctx.clone(), gens: input.gens.clone() };
            let r = lift_point(m, &ideal, &w, seed, opts.branch)?;
            if opts.json {
                Ok(serde_json::to_string(&lift_json(ctx, &r)).unwrap())
            } else {
                let mut s = format!("N: {}\n", r.point.n_den);
                for (name, l) in ctx.names.iter().zip(&r.point.coords) {
                    s.push_str(&format!("{} = {}\n", name, laurent_str(l)));
                }
                if !r.ext.is_trivial() {
                    s.push_str(&format!("extension: {}\n", r.ext.minpoly().display("a")));
                }
                s.push_str("trace:\n");
                for lvl in &r.trace {
                    let us: Vec<String> = lvl.u.iter().map(|c| c.to_string()).collect();
                    s.push_str(&format!(
                        "  omega = {}, u = ({}), vars = {}\n",
                        omega_str(&lvl.omega),
                        us.join(", "),
                        lvl.vars.join(", ")
                    ));
                }
                let res: Vec<String> = r
                    .residual_orders
                    .iter()
                    .map(|o| match o {
                        None => "inf".into(),
                        Some(r) => rational_str(r),
                    })
                    .collect();
                s.push_str(&format!("residual orders: {}", res.join(", ")));
                if r.exact {
                    s.push_str("\nexact: true");
                }
                Ok(s)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_a_full_input() {
        let input = parse_input(
            "vars: x, y\ngens:\n  t*x + y;\n  x + t;\nomega: 1, -1\norder: 2\nseed: 7\n",
        )
        .unwrap();
        assert_eq!(input.ctx.names, vec!["x", "y"]);
        assert_eq!(input.gens.len(), 2);
        assert_eq!(
            input.omega,
            Some(vec![
                BigRational::from_integer(1.into()),
                BigRational::from_integer((-1).into())
            ])
        );
        assert_eq!(input.order, Some(2));
        assert_eq!(input.seed, Some(7));
    }

    #[test]
    fn rational_literals_and_parens() {
        let ctx = RingCtx::new(vec!["x".into()]);
        let p = parse_polynomial("1/2*(x + 3)^2 - x", &ctx).unwrap();
        // 1/2 x^2 + 3x - x + 9/2 = 1/2 x^2 + 2x + 9/2
        let q = parse_polynomial("1/2*x^2 + 2*x + 9/2", &ctx).unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn rejects_zero_generator_and_unknown_vars() {
        assert!(matches!(
            parse_input("vars: x\ngens: x - x;\n"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            parse_input("vars: x\ngens: x + z;\n"),
            Err(Error::Parse { .. })
        ));
    }

    #[test]
    fn parse_errors_carry_positions() {
        let err = parse_input("vars: x\ngens:\n  x + ;\n").unwrap_err();
        match err {
            Error::Parse { line, col, .. } => {
                assert_eq!(line, 3);
                assert!(col >= 5);
            }
            other => panic!("unexpected error {:?}", other),
        }
    }

    #[test]
    fn omega_flag_parser() {
        assert_eq!(
            parse_omega("(-1, -3/2)").unwrap(),
            vec![
                BigRational::from_integer((-1).into()),
                BigRational::new((-3).into(), 2.into())
            ]
        );
    }
}
