//! Sparse multivariate polynomials over the rationals in the fixed variables
//! `r, s, p, t, q`, with exact division and a recursive primitive-PRS gcd.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::{Assignment, Rational, ScalarError, Var, NUM_VARS};

/// Exponent vector indexed by [`Var`]; ordered graded-lexicographically.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial(pub [u32; NUM_VARS]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0; NUM_VARS]);

    pub fn var(v: Var, exp: u32) -> Self {
        let mut e = [0; NUM_VARS];
        e[v.index()] = exp;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn exp(&self, v: Var) -> u32 {
        self.0[v.index()]
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(other.0.iter()) {
            *a += b;
        }
        Monomial(e)
    }

    fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(other.0.iter()) {
            *a = a.checked_sub(*b)?;
        }
        Some(Monomial(e))
    }

    fn without(&self, v: Var) -> Monomial {
        let mut e = self.0;
        e[v.index()] = 0;
        Monomial(e)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A polynomial in `ℚ[r, s, p, t, q]`. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct MultiPoly {
    terms: BTreeMap<Monomial, Rational>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly::default()
    }

    pub fn one() -> Self {
        MultiPoly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        MultiPoly::term(Monomial::ONE, c)
    }

    pub fn var(v: Var) -> Self {
        MultiPoly::term(Monomial::var(v, 1), Rational::one())
    }

    pub fn term(m: Monomial, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MultiPoly { terms }
    }

    /// Builds a polynomial from arbitrary (possibly repeated, possibly zero) terms.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(iter: I) -> Self {
        let mut p = MultiPoly::zero();
        for (m, c) in iter {
            p.add_term(m, c);
        }
        p
    }

    /// Terms in ascending graded-lexicographic order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        match self.terms.len() {
            0 => true,
            1 => self.terms.keys().next().unwrap().is_one(),
            _ => false,
        }
    }

    pub fn is_one(&self) -> bool {
        self.is_constant() && self.constant_value().is_one()
    }

    /// Value of the constant term.
    pub fn constant_value(&self) -> Rational {
        self.terms
            .get(&Monomial::ONE)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> Rational {
        self.leading()
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rational::zero)
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms.keys().map(|m| m.exp(v)).max().unwrap_or(0)
    }

    pub fn contains(&self, v: Var) -> bool {
        self.terms.keys().any(|m| m.exp(v) > 0)
    }

    pub fn variables(&self) -> Vec<Var> {
        Var::ALL.into_iter().filter(|&v| self.contains(v)).collect()
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (*m, a * c))
                .collect(),
        }
    }

    fn mul_term(&self, m: &Monomial, c: &Rational) -> MultiPoly {
        MultiPoly {
            terms: self
                .terms
                .iter()
                .map(|(n, a)| (n.mul(m), a * c))
                .collect(),
        }
    }

    /// Scales so the leading coefficient is 1. Zero stays zero.
    pub fn monic(&self) -> MultiPoly {
        match self.leading() {
            None => MultiPoly::zero(),
            Some((_, c)) if c.is_one() => self.clone(),
            Some((_, c)) => self.scale(&c.recip()),
        }
    }

    pub fn pow(&self, mut exp: u32) -> MultiPoly {
        let mut base = self.clone();
        let mut acc = MultiPoly::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Exact quotient `self / divisor`, or `None` when the division leaves a remainder.
    pub fn div_exact(&self, divisor: &MultiPoly) -> Option<MultiPoly> {
        let (lm, lc) = divisor.leading()?;
        if divisor.terms.len() == 1 {
            // monomial divisor: divide termwise
            let mut terms = BTreeMap::new();
            for (m, c) in &self.terms {
                terms.insert(m.checked_div(lm)?, c / lc);
            }
            return Some(MultiPoly { terms });
        }
        let mut rem = self.clone();
        let mut quo = MultiPoly::zero();
        while let Some((m, c)) = rem.leading() {
            let qm = m.checked_div(lm)?;
            let qc = c / lc;
            rem = &rem - &divisor.mul_term(&qm, &qc);
            quo.add_term(qm, qc);
        }
        Some(quo)
    }

    /// Coefficients of `self` viewed as a univariate polynomial in `v`.
    fn coeffs_in(&self, v: Var) -> BTreeMap<u32, MultiPoly> {
        let mut out: BTreeMap<u32, MultiPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.exp(v))
                .or_default()
                .add_term(m.without(v), c.clone());
        }
        out
    }

    fn leading_coeff_in(&self, v: Var) -> MultiPoly {
        let d = self.degree_in(v);
        MultiPoly::from_terms(
            self.terms
                .iter()
                .filter(|(m, _)| m.exp(v) == d)
                .map(|(m, c)| (m.without(v), c.clone())),
        )
    }

    /// Monic gcd of the coefficients of `self` as a polynomial in `v`.
    fn content_in(&self, v: Var) -> MultiPoly {
        let mut g = MultiPoly::zero();
        for c in self.coeffs_in(v).into_values() {
            g = gcd(&g, &c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    fn primitive_part_in(&self, v: Var) -> MultiPoly {
        let c = self.content_in(v);
        self.div_exact(&c)
            .expect("content divides its polynomial")
            .monic()
    }

    /// Sparse pseudo-remainder of `self` by `divisor` with respect to `v`.
    fn pseudo_rem(&self, divisor: &MultiPoly, v: Var) -> MultiPoly {
        let db = divisor.degree_in(v);
        let lcb = divisor.leading_coeff_in(v);
        let mut r = self.clone();
        while !r.is_zero() && r.degree_in(v) >= db {
            let dr = r.degree_in(v);
            let lcr = r.leading_coeff_in(v);
            let shift = MultiPoly::term(Monomial::var(v, dr - db), Rational::one());
            r = &(&lcb * &r) - &(&(&lcr * &shift) * divisor);
        }
        r
    }

    pub fn eval(&self, assignment: &Assignment) -> Result<Rational, ScalarError> {
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for v in Var::ALL {
                let e = m.exp(v);
                if e == 0 {
                    continue;
                }
                let x = assignment
                    .get(&v)
                    .ok_or(ScalarError::UnassignedVariable(v))?;
                t *= num_traits::pow(x.clone(), e as usize);
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Substitutes a polynomial for `v`.
    pub fn substitute(&self, v: Var, value: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (e, coeff) in self.coeffs_in(v) {
            out = &out + &(&coeff * &value.pow(e));
        }
        out
    }
}

/// Monic greatest common divisor. `gcd(0, 0) = 0`.
pub fn gcd(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return MultiPoly::one();
    }
    if a == b {
        return a.monic();
    }
    if a.terms.len() == 1 || b.terms.len() == 1 {
        return monomial_gcd(a, b);
    }
    let Some(v) = Var::ALL
        .into_iter()
        .filter(|&v| a.contains(v) && b.contains(v))
        .min_by_key(|&v| a.degree_in(v).max(b.degree_in(v)))
    else {
        // no shared variable: only constants divide both
        return MultiPoly::one();
    };

    let ca = a.content_in(v);
    let cb = b.content_in(v);
    let content = gcd(&ca, &cb);
    let mut f = a.div_exact(&ca).expect("content divides").monic();
    let mut g = b.div_exact(&cb).expect("content divides").monic();
    if f.degree_in(v) < g.degree_in(v) {
        std::mem::swap(&mut f, &mut g);
    }
    while g.degree_in(v) > 0 {
        let r = f.pseudo_rem(&g, v);
        if r.is_zero() {
            break;
        }
        f = g;
        g = r.primitive_part_in(v);
    }
    if g.degree_in(v) == 0 {
        return content;
    }
    (&g.primitive_part_in(v) * &content).monic()
}

fn monomial_gcd(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    let mut e = [u32::MAX; NUM_VARS];
    for m in a.terms.keys().chain(b.terms.keys()) {
        for (x, y) in e.iter_mut().zip(m.0.iter()) {
            *x = (*x).min(*y);
        }
    }
    MultiPoly::term(Monomial(e), Rational::one())
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let (mut big, small) = if self.terms.len() >= rhs.terms.len() {
            (self.clone(), rhs)
        } else {
            (rhs.clone(), self)
        };
        for (m, c) in &small.terms {
            big.add_term(*m, c.clone());
        }
        big
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c);
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        if self.is_zero() || rhs.is_zero() {
            return MultiPoly::zero();
        }
        if self.is_constant() {
            return rhs.scale(&self.constant_value());
        }
        if rhs.is_constant() {
            return self.scale(&rhs.constant_value());
        }
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            for (n, d) in &rhs.terms {
                out.add_term(m.mul(n), c * d);
            }
        }
        out
    }
}

fn fmt_rational(c: &Rational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if c.is_integer() {
        write!(f, "{}", c.numer())
    } else {
        write!(f, "{}/{}", c.numer(), c.denom())
    }
}

/// Prints terms in ascending order, e.g. `1-s`, `-1+q^2`, `1/2*r*s^2`.
impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            if negative {
                write!(f, "-")?;
            } else if idx > 0 {
                write!(f, "+")?;
            }
            let abs = c.abs();
            let mut first = true;
            if m.is_one() || !abs.is_one() {
                fmt_rational(&abs, f)?;
                first = false;
            }
            for v in Var::ALL {
                let e = m.exp(v);
                if e == 0 {
                    continue;
                }
                if !first {
                    write!(f, "*")?;
                }
                first = false;
                write!(f, "{}", v)?;
                if e > 1 {
                    write!(f, "^{}", e)?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly({})", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: Var) -> MultiPoly {
        MultiPoly::var(x)
    }

    fn c(n: i64) -> MultiPoly {
        MultiPoly::constant(Rational::from_integer(n.into()))
    }

    #[test]
    fn grlex_orders_by_degree_first() {
        let s = Monomial::var(Var::S, 1);
        let r2 = Monomial::var(Var::R, 2);
        assert!(s < r2);
        assert!(Monomial::var(Var::Q, 1) < Monomial::var(Var::R, 1));
        assert!(Monomial::ONE < s);
    }

    #[test]
    fn display_ascending() {
        assert_eq!((&c(1) - &v(Var::S)).to_string(), "1-s");
        assert_eq!((&(&v(Var::Q) * &v(Var::Q)) - &c(1)).to_string(), "-1+q^2");
        assert_eq!(MultiPoly::zero().to_string(), "0");
    }

    #[test]
    fn exact_division() {
        let a = &v(Var::S) + &c(1);
        let b = &v(Var::Q) - &v(Var::S);
        let prod = &a * &b;
        assert_eq!(prod.div_exact(&a).unwrap(), b);
        assert_eq!(prod.div_exact(&b).unwrap(), a);
        assert!(a.div_exact(&b).is_none());
    }

    #[test]
    fn gcd_recovers_common_factor() {
        let common = &(&v(Var::S) * &v(Var::Q)) + &c(1);
        let a = &common * &(&v(Var::R) - &c(2));
        let b = &common * &(&(&v(Var::S) * &v(Var::S)) + &v(Var::T));
        assert_eq!(gcd(&a, &b), common.monic());
        assert!(gcd(&(&v(Var::S) + &c(1)), &(&v(Var::S) - &c(1))).is_one());
    }

    #[test]
    fn gcd_with_monomials_and_constants() {
        let a = &(&v(Var::S) * &v(Var::S)) * &v(Var::Q);
        let b = &(&v(Var::S) * &v(Var::Q)) + &(&v(Var::S) * &v(Var::R));
        assert_eq!(gcd(&a, &b), v(Var::S));
        assert!(gcd(&c(3), &a).is_one());
        assert_eq!(gcd(&MultiPoly::zero(), &b.scale(&Rational::new(2.into(), 3.into()))), b.monic());
    }

    #[test]
    fn gcd_of_univariate_powers() {
        let a = (&v(Var::Q) + &c(1)).pow(3);
        let b = &(&v(Var::Q) + &c(1)).pow(2) * &(&v(Var::Q) - &c(1));
        assert_eq!(gcd(&a, &b), (&v(Var::Q) + &c(1)).pow(2));
    }

    #[test]
    fn substitution_and_eval() {
        let p = &(&v(Var::P) * &v(Var::P)) + &v(Var::S);
        let sub = p.substitute(Var::P, &v(Var::S));
        assert_eq!(sub, &(&v(Var::S) * &v(Var::S)) + &v(Var::S));
        let mut a = Assignment::new();
        a.insert(Var::S, Rational::from_integer(2.into()));
        assert_eq!(sub.eval(&a).unwrap(), Rational::from_integer(6.into()));
        assert!(p.eval(&a).is_err());
    }
}
