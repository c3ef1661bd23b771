//! Exact arithmetic over `K = Q(i)(x)` for the built-in example:
//! `V = Q[x]` localized at `(x^2+1)`, `S` with maximal ideals `(x+i)S`
//! and `(x-i)S`, and the Galois action induced by complex conjugation.
//!
//! This backend grounds the valuation model in one fully faithful
//! instance; it is not a general function-field engine.

use crate::group::GaloisSetup;
use crate::valuation::{CocycleError, ValCocycle, ValVector};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QixError {
    #[error("DivisionByZero")]
    DivisionByZero,
    #[error("ZeroElement: valuation of zero is undefined")]
    ZeroElement,
    #[error("NotAUnit: c has valuation {val} at ideal {m}")]
    NotAUnit { m: usize, val: i64 },
    #[error("cocycle entry at ({sigma},{tau}) is zero")]
    ZeroEntry { sigma: usize, tau: usize },
    #[error("cocycle is not normalized at ({sigma},{tau})")]
    NotNormalized { sigma: usize, tau: usize },
    #[error("cocycle entry at ({sigma},{tau}) is not integral at ideal {m}")]
    NotIntegral { sigma: usize, tau: usize, m: usize },
    #[error("exact cocycle identity fails at ({sigma},{tau},{gamma})")]
    IdentityViolated { sigma: usize, tau: usize, gamma: usize },
    #[error("coboundary witness must have c_1 = 1")]
    WitnessNotNormalized,
    #[error("parse error at byte {at}: {msg}")]
    Parse { at: usize, msg: String },
    #[error(transparent)]
    Cocycle(#[from] CocycleError),
}

/// An element of `Q(i)` in canonical lowest-terms form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaussRat {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussRat {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussRat { re, im }
    }

    pub fn from_int(v: i64) -> Self {
        GaussRat {
            re: BigRational::from(BigInt::from(v)),
            im: BigRational::zero(),
        }
    }

    pub fn i() -> Self {
        GaussRat {
            re: BigRational::zero(),
            im: BigRational::one(),
        }
    }

    pub fn zero() -> Self {
        GaussRat::from_int(0)
    }

    pub fn one() -> Self {
        GaussRat::from_int(1)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn add(&self, other: &Self) -> Self {
        GaussRat::new(&self.re + &other.re, &self.im + &other.im)
    }

    pub fn sub(&self, other: &Self) -> Self {
        GaussRat::new(&self.re - &other.re, &self.im - &other.im)
    }

    pub fn neg(&self) -> Self {
        GaussRat::new(-self.re.clone(), -self.im.clone())
    }

    pub fn mul(&self, other: &Self) -> Self {
        GaussRat::new(
            &self.re * &other.re - &self.im * &other.im,
            &self.re * &other.im + &self.im * &other.re,
        )
    }

    pub fn conj(&self) -> Self {
        GaussRat::new(self.re.clone(), -self.im.clone())
    }

    pub fn inv(&self) -> Result<Self, QixError> {
        if self.is_zero() {
            return Err(QixError::DivisionByZero);
        }
        let norm = &self.re * &self.re + &self.im * &self.im;
        Ok(GaussRat::new(&self.re / &norm, -&self.im / &norm))
    }

    pub fn div(&self, other: &Self) -> Result<Self, QixError> {
        Ok(self.mul(&other.inv()?))
    }
}

/// A polynomial in `Q(i)[x]`; `coeffs[d]` is the degree-`d` coefficient,
/// trailing zeros stripped, the zero polynomial is the empty list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QiPoly {
    pub coeffs: Vec<GaussRat>,
}

impl QiPoly {
    pub fn new(mut coeffs: Vec<GaussRat>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        QiPoly { coeffs }
    }

    pub fn zero() -> Self {
        QiPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        QiPoly::constant(GaussRat::one())
    }

    pub fn constant(c: GaussRat) -> Self {
        QiPoly::new(vec![c])
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        QiPoly::new(vec![GaussRat::zero(), GaussRat::one()])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.is_zero() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn leading(&self) -> Option<&GaussRat> {
        self.coeffs.last()
    }

    pub fn add(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        QiPoly::new(
            (0..len)
                .map(|d| {
                    let a = self.coeffs.get(d).cloned().unwrap_or_else(GaussRat::zero);
                    let b = other.coeffs.get(d).cloned().unwrap_or_else(GaussRat::zero);
                    a.add(&b)
                })
                .collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        QiPoly {
            coeffs: self.coeffs.iter().map(GaussRat::neg).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return QiPoly::zero();
        }
        let mut coeffs = vec![GaussRat::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].add(&a.mul(b));
            }
        }
        QiPoly::new(coeffs)
    }

    pub fn scale(&self, c: &GaussRat) -> Self {
        QiPoly::new(self.coeffs.iter().map(|a| a.mul(c)).collect())
    }

    pub fn conj(&self) -> Self {
        QiPoly {
            coeffs: self.coeffs.iter().map(GaussRat::conj).collect(),
        }
    }

    pub fn eval(&self, at: &GaussRat) -> GaussRat {
        let mut acc = GaussRat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(at).add(c);
        }
        acc
    }

    pub fn div_rem(&self, den: &Self) -> Result<(Self, Self), QixError> {
        if den.is_zero() {
            return Err(QixError::DivisionByZero);
        }
        let dd = den.degree().unwrap();
        let lead_inv = den.leading().unwrap().inv()?;
        let mut rem = self.clone();
        let mut quot = vec![GaussRat::zero(); self.coeffs.len().saturating_sub(dd)];
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let factor = rem.leading().unwrap().mul(&lead_inv);
            let shift = rd - dd;
            quot[shift] = factor.clone();
            let mut sub = vec![GaussRat::zero(); shift];
            sub.extend(den.coeffs.iter().map(|c| c.mul(&factor)));
            rem = rem.sub(&QiPoly::new(sub));
        }
        Ok((QiPoly::new(quot), rem))
    }

    pub fn gcd(&self, other: &Self) -> Result<Self, QixError> {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a.monic()?)
    }

    pub fn monic(&self) -> Result<Self, QixError> {
        match self.leading() {
            None => Ok(QiPoly::zero()),
            Some(lead) => Ok(self.scale(&lead.inv()?)),
        }
    }
}

/// An element of `K^# ∪ {0}` in canonical form: reduced fraction with
/// monic denominator, so equality is structural.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QiRatFunc {
    pub num: QiPoly,
    pub den: QiPoly,
}

impl QiRatFunc {
    pub fn new(num: QiPoly, den: QiPoly) -> Result<Self, QixError> {
        if den.is_zero() {
            return Err(QixError::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(QiRatFunc {
                num: QiPoly::zero(),
                den: QiPoly::one(),
            });
        }
        let g = num.gcd(&den)?;
        let (num, _) = num.div_rem(&g)?;
        let (den, _) = den.div_rem(&g)?;
        let lead_inv = den.leading().unwrap().inv()?;
        Ok(QiRatFunc {
            num: num.scale(&lead_inv),
            den: den.scale(&lead_inv),
        })
    }

    pub fn from_poly(p: QiPoly) -> Self {
        QiRatFunc::new(p, QiPoly::one()).expect("denominator one")
    }

    pub fn one() -> Self {
        QiRatFunc::from_poly(QiPoly::one())
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num == QiPoly::one() && self.den == QiPoly::one()
    }

    pub fn add(&self, other: &Self) -> Self {
        QiRatFunc::new(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
        .expect("denominators nonzero")
    }

    pub fn mul(&self, other: &Self) -> Self {
        QiRatFunc::new(self.num.mul(&other.num), self.den.mul(&other.den))
            .expect("denominators nonzero")
    }

    pub fn div(&self, other: &Self) -> Result<Self, QixError> {
        if other.is_zero() {
            return Err(QixError::DivisionByZero);
        }
        QiRatFunc::new(self.num.mul(&other.den), self.den.mul(&other.num))
    }

    /// The Galois action: complex conjugation on every coefficient.
    pub fn conj(&self) -> Self {
        QiRatFunc::new(self.num.conj(), self.den.conj()).expect("conjugate denominator nonzero")
    }
}

/// Order of vanishing of `p` at `root`, by repeated exact division.
fn multiplicity(p: &QiPoly, root: &GaussRat) -> usize {
    let linear = QiPoly::new(vec![root.neg(), GaussRat::one()]);
    let mut count = 0;
    let mut cur = p.clone();
    while !cur.is_zero() && cur.eval(root).is_zero() {
        let (q, r) = cur.div_rem(&linear).expect("linear divisor nonzero");
        debug_assert!(r.is_zero());
        cur = q;
        count += 1;
    }
    count
}

/// Valuation at `M_1 = (x+i)S` (label 0, root `-i`) or `M_2 = (x-i)S`
/// (label 1, root `i`).
pub fn val_at(a: &QiRatFunc, m: usize) -> Result<i64, QixError> {
    if a.is_zero() {
        return Err(QixError::ZeroElement);
    }
    let root = if m == 0 { GaussRat::i().neg() } else { GaussRat::i() };
    Ok(multiplicity(&a.num, &root) as i64 - multiplicity(&a.den, &root) as i64)
}

/// A two-cocycle on the fixed C2 example setup with exact entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactCocycle {
    pub vals: [[QiRatFunc; 2]; 2],
}

impl ExactCocycle {
    /// Checks normalization, integrality at both ideals, and the exact
    /// multiplicative cocycle identity on all eight triples.
    pub fn validate(vals: [[QiRatFunc; 2]; 2]) -> Result<Self, QixError> {
        for sigma in 0..2 {
            for tau in 0..2 {
                let v = &vals[sigma][tau];
                if v.is_zero() {
                    return Err(QixError::ZeroEntry { sigma, tau });
                }
                if (sigma == 0 || tau == 0) && !v.is_one() {
                    return Err(QixError::NotNormalized { sigma, tau });
                }
                for m in 0..2 {
                    if val_at(v, m)? < 0 {
                        return Err(QixError::NotIntegral { sigma, tau, m });
                    }
                }
            }
        }
        let act = |s: usize, a: &QiRatFunc| if s == 0 { a.clone() } else { a.conj() };
        for sigma in 0..2 {
            for tau in 0..2 {
                for gamma in 0..2 {
                    let lhs = act(sigma, &vals[tau][gamma]).mul(&vals[sigma][tau ^ gamma]);
                    let rhs = vals[sigma][tau].mul(&vals[sigma ^ tau][gamma]);
                    if lhs != rhs {
                        return Err(QixError::IdentityViolated { sigma, tau, gamma });
                    }
                }
            }
        }
        Ok(ExactCocycle { vals })
    }

    pub fn setup() -> GaloisSetup {
        GaloisSetup::builtin_example()
    }
}

/// Which of the two built-in cocycles to construct.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExampleCocycle {
    F1,
    F2,
}

/// The two built-in cocycles: `f1(sigma,sigma) = (x^2+1)x` and
/// `f2(sigma,sigma) = (x^2+1)^2 x`, all other entries 1.
pub fn build_example(which: ExampleCocycle) -> ExactCocycle {
    let x = QiPoly::x();
    let x2p1 = x.mul(&x).add(&QiPoly::one());
    let entry = match which {
        ExampleCocycle::F1 => x2p1.mul(&x),
        ExampleCocycle::F2 => x2p1.mul(&x2p1).mul(&x),
    };
    let one = QiRatFunc::one;
    let vals = [
        [one(), one()],
        [one(), QiRatFunc::from_poly(entry)],
    ];
    ExactCocycle::validate(vals).expect("example cocycles are valid")
}

/// Forgets units: the valuation table of an exact cocycle.
pub fn to_valuation_model(f: &ExactCocycle) -> Result<ValCocycle, QixError> {
    let setup = ExactCocycle::setup();
    let mut vals = vec![vec![ValVector::zero(2); 2]; 2];
    for sigma in 0..2 {
        for tau in 0..2 {
            vals[sigma][tau] = ValVector(vec![
                val_at(&f.vals[sigma][tau], 0)?,
                val_at(&f.vals[sigma][tau], 1)?,
            ]);
        }
    }
    Ok(ValCocycle::validate(setup, vals)?)
}

/// Checks `g(sigma,tau) = c_sigma sigma(c_tau) c_{sigma tau}^{-1} f(sigma,tau)`
/// exactly on all four pairs; `c = [1, c_sigma]`.
pub fn verify_coboundary_exact(
    f: &ExactCocycle,
    g: &ExactCocycle,
    c: &[QiRatFunc; 2],
) -> Result<bool, QixError> {
    if !c[0].is_one() {
        return Err(QixError::WitnessNotNormalized);
    }
    if c[1].is_zero() {
        return Err(QixError::DivisionByZero);
    }
    let act = |s: usize, a: &QiRatFunc| if s == 0 { a.clone() } else { a.conj() };
    for sigma in 0..2 {
        for tau in 0..2 {
            let expected = c[sigma]
                .mul(&act(sigma, &c[tau]))
                .div(&c[sigma ^ tau])?
                .mul(&f.vals[sigma][tau]);
            if expected != g.vals[sigma][tau] {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Applies the coboundary of a unit `c_sigma` of `S`; the result is
/// cohomologous over `S` and has the same valuation table.
pub fn unit_scale(f: &ExactCocycle, c_sigma: &QiRatFunc) -> Result<ExactCocycle, QixError> {
    for m in 0..2 {
        let val = val_at(c_sigma, m)?;
        if val != 0 {
            return Err(QixError::NotAUnit { m, val });
        }
    }
    let c = [QiRatFunc::one(), c_sigma.clone()];
    let act = |s: usize, a: &QiRatFunc| if s == 0 { a.clone() } else { a.conj() };
    let entry = |sigma: usize, tau: usize| -> Result<QiRatFunc, QixError> {
        c[sigma]
            .mul(&act(sigma, &c[tau]))
            .div(&c[sigma ^ tau])
            .map(|v| v.mul(&f.vals[sigma][tau]))
    };
    let vals = [
        [entry(0, 0)?, entry(0, 1)?],
        [entry(1, 0)?, entry(1, 1)?],
    ];
    ExactCocycle::validate(vals)
}

// ---------------------------------------------------------------------
// String grammar: element := poly | poly "/" poly, products expanded.
// ---------------------------------------------------------------------

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: &str) -> Result<T, QixError> {
        Err(QixError::Parse {
            at: self.pos,
            msg: msg.to_string(),
        })
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn uint(&mut self) -> Result<BigInt, QixError> {
        let start = self.pos;
        while self.peek().is_some_and(|b| b.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return self.err("expected digits");
        }
        let s = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
        Ok(s.parse().unwrap())
    }

    fn int(&mut self) -> Result<BigInt, QixError> {
        let neg = self.eat(b'-');
        let v = self.uint()?;
        Ok(if neg { -v } else { v })
    }

    fn rat(&mut self) -> Result<BigRational, QixError> {
        let numer = self.int()?;
        // A "/" is part of the rational only when followed by digits; an
        // element-level "/" is followed by a polynomial.
        if self.peek() == Some(b'/') && self.bytes.get(self.pos + 1).is_some_and(|b| b.is_ascii_digit()) {
            self.pos += 1;
            let denom = self.uint()?;
            if denom.is_zero() {
                return self.err("zero denominator in rational");
            }
            Ok(BigRational::new(numer, denom))
        } else {
            Ok(BigRational::from(numer))
        }
    }

    fn coeff(&mut self) -> Result<GaussRat, QixError> {
        if self.eat(b'(') {
            let re = self.rat()?;
            let negative = match self.peek() {
                Some(b'+') => false,
                Some(b'-') => true,
                _ => return self.err("expected '+' or '-' in complex coefficient"),
            };
            self.pos += 1;
            let im = self.rat()?;
            if !self.eat(b'i') {
                return self.err("expected 'i' in complex coefficient");
            }
            if !self.eat(b')') {
                return self.err("expected ')'");
            }
            Ok(GaussRat::new(re, if negative { -im } else { im }))
        } else {
            let r = self.rat()?;
            if self.eat(b'i') {
                Ok(GaussRat::new(BigRational::zero(), r))
            } else {
                Ok(GaussRat::new(r, BigRational::zero()))
            }
        }
    }

    fn mono(&mut self) -> Result<usize, QixError> {
        if !self.eat(b'x') {
            return self.err("expected 'x'");
        }
        if self.eat(b'^') {
            let d = self.uint()?;
            Ok(d.try_into().map_err(|_| QixError::Parse {
                at: self.pos,
                msg: "exponent too large".to_string(),
            })?)
        } else {
            Ok(1)
        }
    }

    fn term(&mut self) -> Result<(GaussRat, usize), QixError> {
        if self.peek() == Some(b'x') {
            return Ok((GaussRat::one(), self.mono()?));
        }
        let c = self.coeff()?;
        if self.eat(b'*') {
            Ok((c, self.mono()?))
        } else {
            Ok((c, 0))
        }
    }

    fn poly(&mut self) -> Result<QiPoly, QixError> {
        let mut acc = QiPoly::zero();
        let (c, d) = self.term()?;
        acc = acc.add(&monomial(c, d));
        loop {
            let negate = match self.peek() {
                Some(b'+') => false,
                Some(b'-') => true,
                _ => break,
            };
            self.pos += 1;
            let (c, d) = self.term()?;
            let c = if negate { c.neg() } else { c };
            acc = acc.add(&monomial(c, d));
        }
        Ok(acc)
    }

    fn element(&mut self) -> Result<QiRatFunc, QixError> {
        let num = self.poly()?;
        if self.eat(b'/') {
            let den = self.poly()?;
            QiRatFunc::new(num, den)
        } else {
            Ok(QiRatFunc::from_poly(num))
        }
    }
}

fn monomial(c: GaussRat, degree: usize) -> QiPoly {
    let mut coeffs = vec![GaussRat::zero(); degree];
    coeffs.push(c);
    QiPoly::new(coeffs)
}

/// Parses an element of `K` from the expanded-product grammar;
/// whitespace is insignificant.
pub fn parse_element(input: &str) -> Result<QiRatFunc, QixError> {
    let stripped: String = input.chars().filter(|c| !c.is_whitespace()).collect();
    let mut p = Parser {
        bytes: stripped.as_bytes(),
        pos: 0,
    };
    let v = p.element()?;
    if p.pos != p.bytes.len() {
        return p.err("trailing input");
    }
    Ok(v)
}

fn fmt_rat(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

// Emits a coefficient with its sign split off, so the caller can place
// "+" or "-" between terms. Mixed complex coefficients carry sign inside
// the parentheses and always join with "+".
fn fmt_coeff(c: &GaussRat) -> (bool, String) {
    if c.im.is_zero() {
        (c.re.is_negative(), fmt_rat(&c.re.abs()))
    } else if c.re.is_zero() {
        (c.im.is_negative(), format!("{}i", fmt_rat(&c.im.abs())))
    } else {
        let sign = if c.im.is_negative() { '-' } else { '+' };
        (
            false,
            format!("({}{}{}i)", fmt_rat(&c.re), sign, fmt_rat(&c.im.abs())),
        )
    }
}

fn fmt_poly(p: &QiPoly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (d, c) in p.coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let (negative, body) = fmt_coeff(c);
        let leading = out.is_empty();
        if leading {
            if negative {
                out.push('-');
            }
        } else {
            out.push(if negative { '-' } else { '+' });
        }
        // "-x" is not derivable from the grammar at the head of a
        // polynomial, so a leading negative unit keeps its "1*".
        let unit_coeff = body == "1" && !(negative && leading);
        match d {
            0 => out.push_str(&body),
            _ => {
                if !unit_coeff {
                    out.push_str(&body);
                    out.push('*');
                }
                if d == 1 {
                    out.push('x');
                } else {
                    out.push_str(&format!("x^{d}"));
                }
            }
        }
    }
    out
}

impl fmt::Display for QiRatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == QiPoly::one() {
            write!(f, "{}", fmt_poly(&self.num))
        } else {
            write!(f, "{}/{}", fmt_poly(&self.num), fmt_poly(&self.den))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> QiRatFunc {
        parse_element(s).unwrap()
    }

    #[test]
    fn field_ops() {
        let xpi = parse("x+1i");
        let xmi = parse("x-1i");
        assert_eq!(xpi.mul(&xmi), parse("x^2+1"));
        let a = parse("x^3+x");
        assert_eq!(a.mul(&QiRatFunc::one()), a);
        assert_eq!(parse("x^2+1").div(&xpi).unwrap(), xmi);
    }

    #[test]
    fn division_by_zero_is_reported() {
        let zero = QiRatFunc::from_poly(QiPoly::zero());
        assert!(matches!(
            parse("x").div(&zero),
            Err(QixError::DivisionByZero)
        ));
    }

    #[test]
    fn conj_is_the_example_action() {
        assert_eq!(parse("x+1i").conj(), parse("x-1i"));
        let real = parse("x^2+3");
        assert_eq!(real.conj(), real);
        let f1_entry = parse("x^3+x");
        assert_eq!(f1_entry.conj(), f1_entry);
    }

    #[test]
    fn valuations_at_both_ideals() {
        assert_eq!(val_at(&parse("x^3+x"), 0).unwrap(), 1);
        assert_eq!(val_at(&parse("x^3+x"), 1).unwrap(), 1);
        assert_eq!(val_at(&parse("x"), 0).unwrap(), 0);
        assert_eq!(val_at(&parse("x"), 1).unwrap(), 0);
        // (x+i)^3 / (x-i) = (x^3+3ix^2-3x-i)/(x-i)
        let v = parse("x^3+3i*x^2-3*x-1i").div(&parse("x-1i")).unwrap();
        assert_eq!(val_at(&v, 0).unwrap(), 3);
        assert_eq!(val_at(&v, 1).unwrap(), -1);
        assert!(matches!(
            val_at(&QiRatFunc::from_poly(QiPoly::zero()), 0),
            Err(QixError::ZeroElement)
        ));
    }

    #[test]
    fn examples_have_the_stated_entries() {
        let f1 = build_example(ExampleCocycle::F1);
        assert_eq!(f1.vals[1][1], parse("x^3+x"));
        assert_eq!(f1.vals[0][1], QiRatFunc::one());
        let f2 = build_example(ExampleCocycle::F2);
        assert_eq!(f2.vals[1][1], parse("x^5+2*x^3+x"));
        assert_eq!(f2.vals[1][0], QiRatFunc::one());
    }

    #[test]
    fn valuation_model_of_the_examples() {
        let f1 = to_valuation_model(&build_example(ExampleCocycle::F1)).unwrap();
        assert_eq!(f1.vals[1][1], ValVector(vec![1, 1]));
        let f2 = to_valuation_model(&build_example(ExampleCocycle::F2)).unwrap();
        assert_eq!(f2.vals[1][1], ValVector(vec![2, 2]));

        let trivial = ExactCocycle::validate([
            [QiRatFunc::one(), QiRatFunc::one()],
            [QiRatFunc::one(), QiRatFunc::one()],
        ])
        .unwrap();
        let t = to_valuation_model(&trivial).unwrap();
        assert!(t.vals.iter().flatten().all(|v| v.is_zero()));
    }

    #[test]
    fn coboundary_witness_x_plus_i() {
        let f1 = build_example(ExampleCocycle::F1);
        let f2 = build_example(ExampleCocycle::F2);
        let c = [QiRatFunc::one(), parse("x+1i")];
        assert!(verify_coboundary_exact(&f1, &f2, &c).unwrap());
        let c_self = [QiRatFunc::one(), QiRatFunc::one()];
        assert!(verify_coboundary_exact(&f1, &f1, &c_self).unwrap());
        let c_bad = [QiRatFunc::one(), parse("x")];
        assert!(!verify_coboundary_exact(&f1, &f2, &c_bad).unwrap());
    }

    #[test]
    fn unit_scaling() {
        let f1 = build_example(ExampleCocycle::F1);
        let scaled = unit_scale(&f1, &parse("x")).unwrap();
        // x * conj(x) * (x^2+1)x = (x^2+1)x^3
        assert_eq!(scaled.vals[1][1], parse("x^5+x^3"));
        assert_eq!(
            to_valuation_model(&scaled).unwrap().vals,
            to_valuation_model(&f1).unwrap().vals
        );

        let unchanged = unit_scale(&f1, &QiRatFunc::one()).unwrap();
        assert_eq!(unchanged, f1);

        assert!(matches!(
            unit_scale(&f1, &parse("x+1i")),
            Err(QixError::NotAUnit { m: 0, val: 1 })
        ));
    }

    #[test]
    fn parser_grammar_cases() {
        assert_eq!(parse("1"), QiRatFunc::one());
        assert_eq!(parse("x^2 + 1"), parse("x^2+1"));
        assert_eq!(parse("3/4i*x^2"), QiRatFunc::from_poly(monomial(
            GaussRat::new(BigRational::zero(), BigRational::new(BigInt::from(3), BigInt::from(4))),
            2,
        )));
        assert_eq!(
            parse("(1-2i)*x+1"),
            QiRatFunc::from_poly(QiPoly::new(vec![
                GaussRat::one(),
                GaussRat::new(BigRational::one(), -BigRational::from(BigInt::from(2))),
            ]))
        );
        // element-level division binds the whole preceding polynomial
        let q = parse("x^2+1/x+1i");
        assert_eq!(q, parse("x^2+1").div(&parse("x+1i")).unwrap());
        assert!(parse_element("x^2+").is_err());
        assert!(parse_element("(x^2+1)*x").is_err());
    }

    #[test]
    fn display_round_trips() {
        for s in [
            "x^3+x",
            "x^5+2*x^3+x",
            "1",
            "0",
            "x^2-3/4*x+1i",
            "(1+2i)*x^2-1i",
            "x^2+2/x+1i",
            "x^2+1/x+1",
            "-1*x+2",
            "x^2-x",
        ] {
            let v = parse(s);
            assert_eq!(v.to_string(), s, "canonical form of {s}");
            assert_eq!(parse(&v.to_string()), v);
        }
    }

    #[test]
    fn conj_is_multiplicative_involution() {
        let samples = ["x+1i", "x^2-3/4*x+1i", "(1+2i)*x^2-1i", "x^3+x"];
        for a in samples {
            let a = parse(a);
            assert_eq!(a.conj().conj(), a);
            for b in samples {
                let b = parse(b);
                assert_eq!(a.mul(&b).conj(), a.conj().mul(&b.conj()));
            }
        }
    }

    #[test]
    fn val_is_additive_and_conj_swaps_ideals() {
        let samples = ["x+1i", "x-1i", "x^3+x", "x^5+2*x^3+x", "x"];
        for a in samples {
            let a = parse(a);
            assert_eq!(val_at(&a.conj(), 0).unwrap(), val_at(&a, 1).unwrap());
            assert_eq!(val_at(&a.conj(), 1).unwrap(), val_at(&a, 0).unwrap());
            for b in samples {
                let b = parse(b);
                for m in 0..2 {
                    assert_eq!(
                        val_at(&a.mul(&b), m).unwrap(),
                        val_at(&a, m).unwrap() + val_at(&b, m).unwrap()
                    );
                }
            }
        }
    }
}
