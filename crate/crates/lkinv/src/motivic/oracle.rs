//! Brute-force Euler characteristics of the signed fibres of a real
//! polynomial germ in one or two variables.
//!
//! All values are compactly supported Euler characteristics. In two
//! variables compact pieces are thickened to bands `{lo ≤ f ≤ hi}`, covered by
//! the closed grid cells of B̄(0,η) on which interval arithmetic certifies the
//! band condition, and χ is read off the resulting cubical complex. Values are
//! accepted once two successive dyadic refinements agree. One-variable inputs
//! are handled exactly by Sturm sequences.

use std::collections::HashMap;
use std::f64::consts::PI;

use num::{BigRational, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::resolution::Sign;
use crate::error::{invalid, Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolynomialJson {
    pub vars: usize,
    /// `[coefficient, exponent of x, (exponent of y)]` per monomial.
    pub terms: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct Monomial {
    coeff: f64,
    exp: [u32; 2],
}

#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    vars: usize,
    terms: Vec<Monomial>,
}

impl Polynomial {
    pub fn new(vars: usize, terms: &[(f64, [u32; 2])]) -> Result<Polynomial> {
        if !(1..=2).contains(&vars) {
            return invalid("the oracle handles polynomials in one or two variables");
        }
        let mut out = Vec::new();
        for &(coeff, exp) in terms {
            if !coeff.is_finite() {
                return invalid("non-finite coefficient");
            }
            if vars == 1 && exp[1] != 0 {
                return invalid("second exponent given for a one-variable polynomial");
            }
            if exp == [0, 0] && coeff != 0.0 {
                return invalid("polynomial must vanish at the origin");
            }
            if coeff != 0.0 {
                out.push(Monomial { coeff, exp });
            }
        }
        if out.is_empty() {
            return invalid("zero polynomial");
        }
        Ok(Polynomial { vars, terms: out })
    }

    pub fn from_json(j: &PolynomialJson) -> Result<Polynomial> {
        let mut terms = Vec::new();
        for t in &j.terms {
            if t.len() != j.vars + 1 {
                return invalid(format!("monomial {t:?} needs {} entries", j.vars + 1));
            }
            let mut exp = [0u32; 2];
            for (e, &v) in exp.iter_mut().zip(&t[1..]) {
                if v < 0.0 || v.fract() != 0.0 || v > 64.0 {
                    return invalid(format!("bad exponent {v}"));
                }
                *e = v as u32;
            }
            terms.push((t[0], exp));
        }
        Polynomial::new(j.vars, &terms)
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn eval(&self, x: f64, y: f64) -> f64 {
        self.terms.iter().map(|m| m.coeff * x.powi(m.exp[0] as i32) * y.powi(m.exp[1] as i32)).sum()
    }

    fn eval_box(&self, x: Iv, y: Iv) -> Iv {
        let mut acc = Iv { lo: 0.0, hi: 0.0 };
        for m in &self.terms {
            let v = x.pow(m.exp[0]).mul(y.pow(m.exp[1])).scale(m.coeff);
            acc = Iv { lo: acc.lo + v.lo, hi: acc.hi + v.hi };
        }
        let w = 1e-12 * (acc.lo.abs() + acc.hi.abs()) + 1e-300;
        Iv { lo: acc.lo - w, hi: acc.hi + w }
    }

    /// Upper bound for |∇f| on the square [−η, η]².
    fn gradient_bound(&self, eta: f64) -> f64 {
        let b = Iv { lo: -eta, hi: eta };
        let mut g2 = 0.0;
        for v in 0..self.vars {
            let mut acc = 0.0;
            for m in &self.terms {
                let e = m.exp[v];
                if e == 0 {
                    continue;
                }
                let mut exp = m.exp;
                exp[v] -= 1;
                let iv = b.pow(exp[0]).mul(b.pow(exp[1]));
                acc += (m.coeff * e as f64).abs() * iv.lo.abs().max(iv.hi.abs());
            }
            g2 += acc * acc;
        }
        g2.sqrt()
    }

    fn dense_rational(&self) -> Result<Vec<BigRational>> {
        let deg = self.terms.iter().map(|m| m.exp[0]).max().unwrap_or(0) as usize;
        let mut p = vec![BigRational::zero(); deg + 1];
        for m in &self.terms {
            p[m.exp[0] as usize] += rational(m.coeff)?;
        }
        Ok(trim(p))
    }
}

#[derive(Debug, Clone, Copy)]
struct Iv {
    lo: f64,
    hi: f64,
}

impl Iv {
    fn pow(self, k: u32) -> Iv {
        if k == 0 {
            return Iv { lo: 1.0, hi: 1.0 };
        }
        let (a, b) = (self.lo.powi(k as i32), self.hi.powi(k as i32));
        if k % 2 == 1 || self.lo >= 0.0 {
            Iv { lo: a, hi: b }
        } else if self.hi <= 0.0 {
            Iv { lo: b, hi: a }
        } else {
            Iv { lo: 0.0, hi: a.max(b) }
        }
    }

    fn mul(self, o: Iv) -> Iv {
        let p = [self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi];
        Iv { lo: p.iter().copied().fold(f64::INFINITY, f64::min), hi: p.iter().copied().fold(f64::NEG_INFINITY, f64::max) }
    }

    fn scale(self, c: f64) -> Iv {
        if c >= 0.0 {
            Iv { lo: c * self.lo, hi: c * self.hi }
        } else {
            Iv { lo: c * self.hi, hi: c * self.lo }
        }
    }
}

/// What to compute, for a sign ? ∈ {−1, +1, <, >}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Question {
    /// X̄^?: the fibre (or strict sublevel band) intersected with the closed ball.
    Closed(Sign),
    /// X^?: the same set intersected with the open ball.
    Open(Sign),
    /// G^?: {f ≥ 0} (for >) or {f ≤ 0} (for <) on the sphere S(0,η).
    Link(Sign),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleConfig {
    pub eps: f64,
    pub eta: f64,
    pub max_level: u32,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig { eps: 0.05, eta: 1.0, max_level: 12 }
    }
}

impl OracleConfig {
    fn validate(&self) -> Result<()> {
        if !(self.eps > 0.0 && self.eta > 0.0 && self.eps < self.eta && self.eta.is_finite()) {
            return invalid("oracle needs 0 < eps < eta");
        }
        if self.max_level < 2 || self.max_level > 14 {
            return invalid("max_level must lie in 2..=14");
        }
        Ok(())
    }

    /// The level c_? of the fibre or band for a sign.
    fn level(&self, s: Sign) -> f64 {
        match s {
            Sign::Plus | Sign::Greater => self.eps,
            Sign::Minus | Sign::Less => -self.eps,
        }
    }
}

pub fn germ_chi_oracle(f: &Polynomial, q: Question, cfg: &OracleConfig) -> Result<i64> {
    cfg.validate()?;
    if let Question::Link(s) = q {
        if s.is_fibre() {
            return invalid("the link region is defined for < and > only");
        }
    }
    match f.vars {
        1 => exact_1d(f, q, cfg),
        _ => Ok(grid_2d(f, &[q], cfg)?[0]),
    }
}

/// Oracle values for every question at once; the grid is shared.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RealOracleValues {
    pub n: usize,
    pub closed: Vec<(Sign, i64)>,
    pub open: Vec<(Sign, i64)>,
    pub link: Vec<(Sign, i64)>,
}

impl RealOracleValues {
    pub fn get(&self, q: Question) -> Option<i64> {
        let (list, s) = match q {
            Question::Closed(s) => (&self.closed, s),
            Question::Open(s) => (&self.open, s),
            Question::Link(s) => (&self.link, s),
        };
        list.iter().find(|(t, _)| *t == s).map(|(_, v)| *v)
    }
}

pub fn oracle_values(f: &Polynomial, cfg: &OracleConfig) -> Result<RealOracleValues> {
    cfg.validate()?;
    let mut qs: Vec<Question> = Sign::ALL.iter().flat_map(|&s| [Question::Closed(s), Question::Open(s)]).collect();
    qs.push(Question::Link(Sign::Less));
    qs.push(Question::Link(Sign::Greater));
    let vals = match f.vars {
        1 => qs.iter().map(|&q| exact_1d(f, q, cfg)).collect::<Result<Vec<_>>>()?,
        _ => grid_2d(f, &qs, cfg)?,
    };
    let mut out = RealOracleValues { n: f.vars, closed: vec![], open: vec![], link: vec![] };
    for (q, v) in qs.into_iter().zip(vals) {
        match q {
            Question::Closed(s) => out.closed.push((s, v)),
            Question::Open(s) => out.open.push((s, v)),
            Question::Link(s) => out.link.push((s, v)),
        }
    }
    Ok(out)
}

// ---- two variables -------------------------------------------------------

struct Grid<'a> {
    f: &'a Polynomial,
    eta: f64,
    level: u32,
    bands: HashMap<(u64, u64), i64>,
    circle: Option<Vec<f64>>,
}

impl Grid<'_> {
    fn cells(&self) -> usize {
        1 << self.level
    }

    /// χ of the union of closed cells inside B̄(0,η) certified to satisfy lo ≤ f ≤ hi.
    fn band_chi(&mut self, lo: f64, hi: f64) -> i64 {
        let key = (lo.to_bits(), hi.to_bits());
        if let Some(&v) = self.bands.get(&key) {
            return v;
        }
        let g = self.cells();
        let h = 2.0 * self.eta / g as f64;
        let (f, eta) = (self.f, self.eta);
        let mask: Vec<Vec<bool>> = (0..g)
            .into_par_iter()
            .map(|i| {
                let x = Iv { lo: -eta + i as f64 * h, hi: -eta + (i + 1) as f64 * h };
                let xm = x.lo.abs().max(x.hi.abs());
                (0..g)
                    .map(|j| {
                        let y = Iv { lo: -eta + j as f64 * h, hi: -eta + (j + 1) as f64 * h };
                        let ym = y.lo.abs().max(y.hi.abs());
                        if xm * xm + ym * ym > eta * eta {
                            return false;
                        }
                        let v = f.eval_box(x, y);
                        v.lo >= lo && v.hi <= hi
                    })
                    .collect()
            })
            .collect();
        let chi = cubical_chi(&mask);
        self.bands.insert(key, chi);
        chi
    }

    fn circle(&mut self) -> &[f64] {
        let k = 8usize << self.level;
        let (f, eta) = (self.f, self.eta);
        self.circle.get_or_insert_with(|| {
            (0..k)
                .map(|t| {
                    let th = 2.0 * PI * t as f64 / k as f64;
                    f.eval(eta * th.cos(), eta * th.sin())
                })
                .collect()
        })
    }

    /// Number of maximal cyclic runs of samples satisfying `pred`, and
    /// whether the whole circle satisfies it.
    fn runs(&mut self, pred: impl Fn(f64) -> bool) -> (i64, bool) {
        let v = self.circle();
        let inside: Vec<bool> = v.iter().map(|&x| pred(x)).collect();
        let all = inside.iter().all(|&b| b);
        let n = inside.len();
        let starts = (0..n).filter(|&k| inside[k] && !inside[(k + n - 1) % n]).count();
        (starts as i64, all)
    }

    fn answer(&mut self, q: Question, cfg: &OracleConfig) -> i64 {
        let delta = cfg.eps / 4.0;
        match q {
            Question::Closed(s) | Question::Open(s) if s.is_fibre() => {
                let c = cfg.level(s);
                let closed = self.band_chi(c - delta, c + delta);
                if matches!(q, Question::Closed(_)) {
                    return closed;
                }
                // Each transverse crossing of the sphere is a boundary point.
                let (runs, all) = self.runs(|x| x >= c);
                closed - if all { 0 } else { 2 * runs }
            }
            Question::Closed(s) | Question::Open(s) => {
                let c = cfg.level(s);
                let (a, b) = (c.min(0.0), c.max(0.0));
                let closed = self.band_chi(a - delta, b + delta) - self.band_chi(-delta, delta) - self.band_chi(c - delta, c + delta);
                if matches!(q, Question::Closed(_)) {
                    return closed;
                }
                let (arcs, all) = self.runs(|x| x > a && x < b);
                closed - if all { 0 } else { -arcs }
            }
            Question::Link(s) => {
                let (arcs, all) =
                    if s == Sign::Greater { self.runs(|x| x >= 0.0) } else { self.runs(|x| x <= 0.0) };
                if all {
                    0
                } else {
                    arcs
                }
            }
        }
    }
}

/// V − E + F of a union of closed grid squares, `mask[i][j]` for cell (i, j).
fn cubical_chi(mask: &[Vec<bool>]) -> i64 {
    let g = mask.len() as isize;
    let cell = |i: isize, j: isize| i >= 0 && j >= 0 && i < g && j < g && mask[i as usize][j as usize];
    (0..=g)
        .into_par_iter()
        .map(|i| {
            let mut acc = 0i64;
            for j in 0..=g {
                if cell(i - 1, j - 1) || cell(i - 1, j) || cell(i, j - 1) || cell(i, j) {
                    acc += 1;
                }
                if j < g && (cell(i - 1, j) || cell(i, j)) {
                    acc -= 1;
                }
                if i < g && (cell(i, j - 1) || cell(i, j)) {
                    acc -= 1;
                }
                if cell(i, j) {
                    acc += 1;
                }
            }
            acc
        })
        .sum()
}

fn grid_2d(f: &Polynomial, qs: &[Question], cfg: &OracleConfig) -> Result<Vec<i64>> {
    let delta = cfg.eps / 4.0;
    // Cells of diameter below δ/(2|∇f|) around the level set are certified
    // inside the band, so coarser grids are skipped.
    let need = 2.0 * cfg.eta * 2.0 * 2f64.sqrt() * f.gradient_bound(cfg.eta) / delta;
    let start = (need.max(2.0).log2().ceil() as u32).clamp(2, cfg.max_level - 1);
    let mut prev: Option<Vec<i64>> = None;
    for level in start..=cfg.max_level {
        let mut grid = Grid { f, eta: cfg.eta, level, bands: HashMap::new(), circle: None };
        let vals: Vec<i64> = qs.iter().map(|&q| grid.answer(q, cfg)).collect();
        if prev.as_ref() == Some(&vals) {
            return Ok(vals);
        }
        prev = Some(vals);
    }
    Err(Error::Numerical(format!(
        "oracle inconclusive: refinement did not stabilize by level {}",
        cfg.max_level
    )))
}

// ---- one variable --------------------------------------------------------

fn rational(x: f64) -> Result<BigRational> {
    BigRational::from_float(x).ok_or_else(|| Error::Validation(format!("{x} is not a finite number")))
}

fn trim(mut p: Vec<BigRational>) -> Vec<BigRational> {
    while p.len() > 1 && p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn is_zero_poly(p: &[BigRational]) -> bool {
    p.iter().all(|c| c.is_zero())
}

fn peval(p: &[BigRational], x: &BigRational) -> BigRational {
    p.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
}

fn derivative(p: &[BigRational]) -> Vec<BigRational> {
    if p.len() <= 1 {
        return vec![BigRational::zero()];
    }
    p.iter().enumerate().skip(1).map(|(k, c)| c * BigRational::from_integer(k.into())).collect()
}

/// Remainder and quotient of a / b.
fn divmod(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let b = trim(b.to_vec());
    let mut r = trim(a.to_vec());
    let db = b.len() - 1;
    let lead = b[db].clone();
    let mut q = vec![BigRational::zero(); r.len().saturating_sub(db).max(1)];
    while r.len() > db && !is_zero_poly(&r) {
        let k = r.len() - 1 - db;
        let c = &r[r.len() - 1] / &lead;
        for (j, bj) in b.iter().enumerate() {
            r[k + j] -= &c * bj;
        }
        q[k] = c;
        r.pop();
        r = trim(r);
    }
    (r, q)
}

fn poly_gcd(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
    while !is_zero_poly(&b) {
        let (r, _) = divmod(&a, &b);
        a = b;
        b = r;
    }
    a
}

struct Sturm {
    p: Vec<BigRational>,
    chain: Vec<Vec<BigRational>>,
}

impl Sturm {
    /// Chain of the square-free part, so counts are valid at roots too.
    fn new(p: &[BigRational]) -> Sturm {
        let g = poly_gcd(p, &derivative(p));
        let (_, sf) = divmod(p, &g);
        let mut chain = vec![sf.clone(), derivative(&sf)];
        while !is_zero_poly(chain.last().unwrap()) && chain.last().unwrap().len() > 1 {
            let n = chain.len();
            let (r, _) = divmod(&chain[n - 2], &chain[n - 1]);
            chain.push(r.into_iter().map(|c| -c).collect());
        }
        Sturm { p: sf, chain }
    }

    fn variations(&self, x: &BigRational) -> i64 {
        let signs: Vec<i32> = self
            .chain
            .iter()
            .map(|q| peval(q, x))
            .filter(|v| !v.is_zero())
            .map(|v| if v.is_positive() { 1 } else { -1 })
            .collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count() as i64
    }

    /// Distinct roots in (a, b].
    fn count(&self, a: &BigRational, b: &BigRational) -> i64 {
        self.variations(a) - self.variations(b)
    }

    fn is_root(&self, x: &BigRational) -> bool {
        peval(&self.p, x).is_zero()
    }

    /// A point of (a, b), the midpoint when possible, that is not a root.
    fn split(&self, a: &BigRational, b: &BigRational) -> BigRational {
        for d in 2i64.. {
            for k in 1..d {
                let m = a + (b - a) * BigRational::new(k.into(), d.into());
                if !self.is_root(&m) {
                    return m;
                }
            }
        }
        unreachable!()
    }

    /// Isolating intervals (a, b] in (lo, hi], one root each; interior
    /// endpoints are never roots.
    fn isolate(&self, lo: &BigRational, hi: &BigRational) -> Vec<(BigRational, BigRational)> {
        let mut out = Vec::new();
        let mut stack = vec![(lo.clone(), hi.clone())];
        while let Some((a, b)) = stack.pop() {
            match self.count(&a, &b) {
                0 => {}
                1 => out.push((a, b)),
                _ => {
                    let m = self.split(&a, &b);
                    stack.push((m.clone(), b));
                    stack.push((a, m));
                }
            }
        }
        out.sort_by(|x, y| x.0.cmp(&y.0));
        out
    }

    /// Shrink (a, b] until a > left while keeping its single root.
    fn move_left_end(&self, iv: &mut (BigRational, BigRational), left: &BigRational) {
        while &iv.0 <= left {
            let m = self.split(&iv.0, &iv.1);
            if self.count(&iv.0, &m) == 1 {
                iv.1 = m;
            } else {
                iv.0 = m;
            }
        }
    }

    fn move_right_end(&self, iv: &mut (BigRational, BigRational), right: &BigRational) {
        while &iv.1 >= right {
            let m = self.split(&iv.0, &iv.1);
            if self.count(&iv.0, &m) == 1 {
                iv.1 = m;
            } else {
                iv.0 = m;
            }
        }
    }
}

fn strictly_between(v: &BigRational, a: &BigRational, b: &BigRational) -> bool {
    v > a && v < b
}

fn exact_1d(f: &Polynomial, q: Question, cfg: &OracleConfig) -> Result<i64> {
    let p = f.dense_rational()?;
    let eta = rational(cfg.eta)?;
    let neg_eta = -eta.clone();
    let sign_c = |s: Sign| -> Result<BigRational> { rational(cfg.level(s)) };
    match q {
        Question::Link(s) => {
            let keep = |v: BigRational| if s == Sign::Greater { !v.is_negative() } else { !v.is_positive() };
            Ok(keep(peval(&p, &neg_eta)) as i64 + keep(peval(&p, &eta)) as i64)
        }
        Question::Closed(s) | Question::Open(s) if s.is_fibre() => {
            let c = sign_c(s)?;
            let mut g = p.clone();
            g[0] -= &c;
            let st = Sturm::new(&g);
            let interior = st.count(&neg_eta, &eta) - st.is_root(&eta) as i64;
            let ends = st.is_root(&eta) as i64 + st.is_root(&neg_eta) as i64;
            Ok(if matches!(q, Question::Closed(_)) { interior + ends } else { interior })
        }
        Question::Closed(s) | Question::Open(s) => {
            let c = sign_c(s)?;
            let (a, b) = if c.is_positive() { (BigRational::zero(), c.clone()) } else { (c.clone(), BigRational::zero()) };
            // Roots of f·(f − c) cut the interval into points and open gaps.
            let mut shifted = p.clone();
            shifted[0] -= &c;
            let mut prod = vec![BigRational::zero(); p.len() + shifted.len() - 1];
            for (i, x) in p.iter().enumerate() {
                for (j, y) in shifted.iter().enumerate() {
                    prod[i + j] += x * y;
                }
            }
            let st = Sturm::new(&prod);
            let mut ivs = st.isolate(&neg_eta, &eta);
            if st.is_root(&eta) {
                ivs.pop();
            }
            let inside = |x: &BigRational| strictly_between(&peval(&p, x), &a, &b);
            let mut chi = 0i64;
            if matches!(q, Question::Closed(_)) {
                chi += inside(&neg_eta) as i64 + inside(&eta) as i64;
            }
            // Roots never belong to the strict set; each open gap counts −1.
            let m = ivs.len();
            let mut samples = Vec::with_capacity(m + 1);
            if m == 0 {
                samples.push(BigRational::zero());
            } else {
                st.move_left_end(&mut ivs[0], &neg_eta);
                samples.push(ivs[0].0.clone());
                for k in 0..m - 1 {
                    samples.push(ivs[k].1.clone());
                }
                st.move_right_end(&mut ivs[m - 1], &eta);
                samples.push(ivs[m - 1].1.clone());
            }
            chi -= samples.iter().filter(|x| inside(x)).count() as i64;
            Ok(chi)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xy() -> Polynomial {
        Polynomial::new(2, &[(1.0, [1, 1])]).unwrap()
    }

    #[test]
    fn square_root_pair() {
        let f = Polynomial::new(1, &[(1.0, [2, 0])]).unwrap();
        let cfg = OracleConfig::default();
        assert_eq!(germ_chi_oracle(&f, Question::Closed(Sign::Plus), &cfg).unwrap(), 2);
        assert_eq!(germ_chi_oracle(&f, Question::Closed(Sign::Minus), &cfg).unwrap(), 0);
        // Two open intervals (0, √ε) on either side of the origin.
        assert_eq!(germ_chi_oracle(&f, Question::Closed(Sign::Greater), &cfg).unwrap(), -2);
        assert_eq!(germ_chi_oracle(&f, Question::Link(Sign::Greater), &cfg).unwrap(), 2);
    }

    #[test]
    fn cubic_counts_one_side() {
        let f = Polynomial::new(1, &[(1.0, [3, 0])]).unwrap();
        let cfg = OracleConfig::default();
        assert_eq!(germ_chi_oracle(&f, Question::Open(Sign::Minus), &cfg).unwrap(), 1);
        assert_eq!(germ_chi_oracle(&f, Question::Open(Sign::Less), &cfg).unwrap(), -1);
    }

    #[test]
    fn cubical_chi_of_annulus() {
        let mut m = vec![vec![true; 3]; 3];
        m[1][1] = false;
        assert_eq!(cubical_chi(&m), 0);
        m[1][1] = true;
        assert_eq!(cubical_chi(&m), 1);
    }

    #[test]
    fn hyperbola_branches() {
        let cfg = OracleConfig { max_level: 11, ..OracleConfig::default() };
        assert_eq!(germ_chi_oracle(&xy(), Question::Closed(Sign::Plus), &cfg).unwrap(), 2);
    }

    #[test]
    fn rejects_constant_term() {
        assert!(Polynomial::new(2, &[(1.0, [0, 0]), (1.0, [1, 1])]).is_err());
    }
}
