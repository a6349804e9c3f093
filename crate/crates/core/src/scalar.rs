//! Exact scalars `Σ c · ζ₈^k · q^e` and factored rational functions in `X = q^{−s}`.
//!
//! `q` is a formal variable, so monomials with distinct exponents are linearly
//! independent and equality is decidable. Coefficients live in `ℚ(ζ₈)` with the
//! power basis `1, ζ₈, ζ₈² = i, ζ₈³`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

use crate::group::Sign;

pub type Q = Ratio<i64>;

pub fn q(n: i64, d: i64) -> Q {
    Ratio::new(n, d)
}

pub fn format_rational(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// `ζ₈^zeta · q^qexp` with `zeta` taken mod 8.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    zeta: u8,
    qexp: Q,
}

impl Monomial {
    pub fn new(zeta: i64, qexp: Q) -> Self {
        Self { zeta: zeta.rem_euclid(8) as u8, qexp }
    }

    pub fn one() -> Self {
        Self::new(0, Q::zero())
    }

    pub fn sign(s: Sign) -> Self {
        Self::new(if s.is_minus() { 4 } else { 0 }, Q::zero())
    }

    pub fn q_power(e: Q) -> Self {
        Self::new(0, e)
    }

    pub fn zeta(&self) -> u8 {
        self.zeta
    }

    pub fn qexp(&self) -> Q {
        self.qexp
    }

    pub fn is_one(&self) -> bool {
        self.zeta == 0 && self.qexp.is_zero()
    }

    pub fn as_sign(&self) -> Option<Sign> {
        match (self.zeta, self.qexp.is_zero()) {
            (0, true) => Some(Sign::Plus),
            (4, true) => Some(Sign::Minus),
            _ => None,
        }
    }

    pub fn inv(&self) -> Self {
        Self::new(-(self.zeta as i64), -self.qexp)
    }

    pub fn pow(&self, k: i64) -> Self {
        Self::new(self.zeta as i64 * k, self.qexp * k)
    }
}

impl Mul for &Monomial {
    type Output = Monomial;
    fn mul(self, rhs: &Monomial) -> Monomial {
        Monomial::new(self.zeta as i64 + rhs.zeta as i64, self.qexp + rhs.qexp)
    }
}

impl Mul for Monomial {
    type Output = Monomial;
    fn mul(self, rhs: Monomial) -> Monomial {
        &self * &rhs
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", Scalar::from(self.clone()))
    }
}

/// A finite `ℚ(ζ₈)`-linear combination of powers `q^e`, `e ∈ ℚ`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Scalar {
    // key: (power of ζ₈ in 0..4, exponent of q)
    terms: BTreeMap<(u8, Q), Q>,
}

impl Scalar {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from(Monomial::one())
    }

    pub fn rational(c: Q) -> Self {
        let mut s = Self::zero();
        s.add_term(0, Q::zero(), c);
        s
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, zeta: u8, qexp: Q, c: Q) {
        let (zeta, c) = if zeta >= 4 { (zeta - 4, -c) } else { (zeta, c) };
        let entry = self.terms.entry((zeta, qexp)).or_insert_with(Q::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&(zeta, qexp));
        }
    }

    /// Returns `(c, m)` when the scalar is a single term `c · m`.
    pub fn as_term(&self) -> Option<(Q, Monomial)> {
        if self.terms.len() != 1 {
            return None;
        }
        let ((zeta, qexp), c) = self.terms.iter().next()?;
        Some((*c, Monomial::new(*zeta as i64, *qexp)))
    }

    pub fn as_sign(&self) -> Option<Sign> {
        let (c, m) = self.as_term()?;
        let s = m.as_sign()?;
        if c == Q::one() {
            Some(s)
        } else if c == -Q::one() {
            Some(-s)
        } else {
            None
        }
    }

    pub fn is_one(&self) -> bool {
        self.as_sign() == Some(Sign::Plus)
    }

    /// Inverse of a single-term scalar.
    pub fn inv(&self) -> Option<Scalar> {
        let (c, m) = self.as_term()?;
        let mut s = Scalar::from(m.inv());
        s = s.scale(c.recip());
        Some(s)
    }

    pub fn scale(&self, c: Q) -> Scalar {
        if c.is_zero() {
            return Scalar::zero();
        }
        Scalar { terms: self.terms.iter().map(|(k, v)| (*k, *v * c)).collect() }
    }

    pub fn pow(&self, k: u32) -> Scalar {
        let mut acc = Scalar::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Integer power, negative exponents allowed for single-term scalars.
    pub fn powi(&self, k: i64) -> Option<Scalar> {
        if k >= 0 {
            Some(self.pow(k as u32))
        } else {
            self.inv().map(|s| s.pow((-k) as u32))
        }
    }
}

impl From<Monomial> for Scalar {
    fn from(m: Monomial) -> Self {
        let mut s = Scalar::zero();
        s.add_term(m.zeta, m.qexp, Q::one());
        s
    }
}

impl From<Sign> for Scalar {
    fn from(s: Sign) -> Self {
        Scalar::from(Monomial::sign(s))
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        let mut out = self.clone();
        for ((z, e), c) in &rhs.terms {
            out.add_term(*z, *e, *c);
        }
        out
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.scale(-Q::one())
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        let mut out = Scalar::zero();
        for ((z1, e1), c1) in &self.terms {
            for ((z2, e2), c2) in &rhs.terms {
                let z = z1 + z2;
                out.add_term(z % 8, *e1 + *e2, *c1 * *c2);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

fn q_power_string(e: &Q) -> Option<String> {
    if e.is_zero() {
        None
    } else if e.is_one() {
        Some("q".to_string())
    } else {
        Some(format!("q^({})", format_rational(e)))
    }
}

fn zeta_string(z: u8) -> Option<&'static str> {
    match z {
        0 => None,
        1 => Some("zeta8"),
        2 => Some("i"),
        3 => Some("zeta8^3"),
        _ => unreachable!("reduced zeta power"),
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // Descending powers of q read most naturally.
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|a, b| b.0 .1.cmp(&a.0 .1).then(a.0 .0.cmp(&b.0 .0)));
        for (idx, ((z, e), c)) in terms.into_iter().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            if idx == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if negative { "-" } else { "+" })?;
            }
            let mut factors: Vec<String> = Vec::new();
            if !abs.is_one() {
                factors.push(format_rational(&abs));
            }
            if let Some(zs) = zeta_string(*z) {
                factors.push(zs.to_string());
            }
            if let Some(qs) = q_power_string(e) {
                factors.push(qs);
            }
            if factors.is_empty() {
                write!(f, "1")?;
            } else {
                write!(f, "{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

/// A value `Π (1 − w)^e` kept in factored form, so poles and zeros stay visible.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FactoredValue {
    factors: BTreeMap<Monomial, i64>,
}

impl FactoredValue {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn push(&mut self, w: Monomial, e: i64) {
        let entry = self.factors.entry(w.clone()).or_insert(0);
        *entry += e;
        if *entry == 0 {
            self.factors.remove(&w);
        }
    }

    pub fn div(&self, other: &FactoredValue) -> FactoredValue {
        let mut out = self.clone();
        for (w, e) in &other.factors {
            out.push(w.clone(), -e);
        }
        out
    }

    /// True if some factor `(1 − 1)` occurs with negative exponent.
    pub fn has_pole(&self) -> bool {
        self.factors.iter().any(|(w, e)| w.is_one() && *e < 0)
    }

    pub fn has_zero(&self) -> bool {
        self.factors.iter().any(|(w, e)| w.is_one() && *e > 0)
    }

    /// Expands to a scalar when no factor sits in a denominator.
    pub fn to_scalar(&self) -> Option<Scalar> {
        let mut acc = Scalar::one();
        for (w, e) in &self.factors {
            if *e < 0 {
                return None;
            }
            let factor = &Scalar::one() - &Scalar::from(w.clone());
            acc = &acc * &factor.pow(*e as u32);
        }
        Some(acc)
    }
}

impl fmt::Display for FactoredValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|(w, e)| format_linear_factor(&Scalar::from(w.clone()), "", *e))
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

fn format_linear_factor(c: &Scalar, var: &str, e: i64) -> String {
    let neg = -c;
    // Print `1 - cX` as `1 + |c|X` when c is a negated monomial.
    let (op, body) = match neg.as_term() {
        Some((k, _)) if k.is_positive() => ("+", neg.to_string()),
        _ => ("-", c.to_string()),
    };
    let body = if body == "1" && !var.is_empty() {
        var.trim().to_string()
    } else {
        format!("{body}{var}")
    };
    let base = format!("(1 {op} {body})");
    if e == 1 {
        base
    } else {
        format!("{base}^{e}")
    }
}

/// A rational function in `X = q^{−s}` of the form `Π (1 − c·X)^e`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RationalFunction {
    factors: BTreeMap<Monomial, i64>,
}

impl RationalFunction {
    pub fn one() -> Self {
        Self::default()
    }

    /// `(1 − c·X)^e`.
    pub fn linear(c: Monomial, e: i64) -> Self {
        let mut r = Self::one();
        r.push(c, e);
        r
    }

    pub fn push(&mut self, c: Monomial, e: i64) {
        let entry = self.factors.entry(c.clone()).or_insert(0);
        *entry += e;
        if *entry == 0 {
            self.factors.remove(&c);
        }
    }

    pub fn mul(&self, other: &RationalFunction) -> RationalFunction {
        let mut out = self.clone();
        for (c, e) in &other.factors {
            out.push(c.clone(), *e);
        }
        out
    }

    pub fn factors(&self) -> impl Iterator<Item = (&Monomial, i64)> {
        self.factors.iter().map(|(c, e)| (c, *e))
    }

    /// Value at `X = x`.
    pub fn eval(&self, x: &Monomial) -> FactoredValue {
        let mut v = FactoredValue::one();
        for (c, e) in &self.factors {
            v.push(c * x, *e);
        }
        v
    }

    /// Value at `s`, i.e. `X = q^{−s}`.
    pub fn eval_at_s(&self, s: Q) -> FactoredValue {
        self.eval(&Monomial::q_power(-s))
    }

    /// Real parts of the poles in `s`: `(1 − cX)` vanishes when `|q^{−s}| = |c|^{−1}`,
    /// i.e. at `Re s` equal to the exponent of `q` in `c`.
    pub fn pole_real_parts(&self) -> Vec<Q> {
        self.factors.iter().filter(|(_, e)| **e < 0).map(|(c, _)| c.qexp()).collect()
    }

    pub fn zero_real_parts(&self) -> Vec<Q> {
        self.factors.iter().filter(|(_, e)| **e > 0).map(|(c, _)| c.qexp()).collect()
    }

    fn expand(&self, sign: i64) -> Vec<Scalar> {
        let mut poly = vec![Scalar::one()];
        for (c, e) in &self.factors {
            if e.signum() != sign {
                continue;
            }
            for _ in 0..e.abs() {
                let mut next = vec![Scalar::zero(); poly.len() + 1];
                for (i, coeff) in poly.iter().enumerate() {
                    next[i] = &next[i] + coeff;
                    next[i + 1] = &next[i + 1] - &(coeff * &Scalar::from(c.clone()));
                }
                poly = next;
            }
        }
        poly
    }

    /// Numerator coefficients in increasing powers of `X`.
    pub fn numerator(&self) -> Vec<Scalar> {
        self.expand(1)
    }

    /// Denominator coefficients in increasing powers of `X`.
    pub fn denominator(&self) -> Vec<Scalar> {
        self.expand(-1)
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|(c, e)| format_linear_factor(&Scalar::from(c.clone()), " X", *e))
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}
