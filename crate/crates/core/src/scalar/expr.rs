use std::fmt;
use std::iter::Sum;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::poly::{gcd, MultiPoly};
use super::{Assignment, Rational, ScalarError, Var};

/// An element of `ℚ(r, s, p, t, q)` in canonical form.
///
/// Invariants: `den` is nonzero and monic under graded-lex order, and
/// `gcd(num, den) = 1`. Zero is `0/1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ScalarExpr {
    num: MultiPoly,
    den: MultiPoly,
}

impl ScalarExpr {
    pub fn zero() -> Self {
        ScalarExpr {
            num: MultiPoly::zero(),
            den: MultiPoly::one(),
        }
    }

    pub fn one() -> Self {
        ScalarExpr::from_poly(MultiPoly::one())
    }

    pub fn int(n: i64) -> Self {
        ScalarExpr::rational(Rational::from_integer(BigInt::from(n)))
    }

    pub fn rational(c: Rational) -> Self {
        ScalarExpr::from_poly(MultiPoly::constant(c))
    }

    pub fn var(v: Var) -> Self {
        ScalarExpr::from_poly(MultiPoly::var(v))
    }

    pub fn from_poly(num: MultiPoly) -> Self {
        ScalarExpr {
            num,
            den: MultiPoly::one(),
        }
    }

    /// Reduces `num/den` to canonical form.
    pub fn from_fraction(num: MultiPoly, den: MultiPoly) -> Result<Self, ScalarError> {
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(ScalarExpr::zero());
        }
        if den.is_constant() {
            let c = den.constant_value().recip();
            return Ok(ScalarExpr::from_poly(num.scale(&c)));
        }
        let g = gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides numerator"),
                den.div_exact(&g).expect("gcd divides denominator"),
            )
        };
        let lc = den.leading_coeff();
        if lc.is_one() {
            Ok(ScalarExpr { num, den })
        } else {
            let inv = lc.recip();
            Ok(ScalarExpr {
                num: num.scale(&inv),
                den: den.scale(&inv),
            })
        }
    }

    pub fn numer(&self) -> &MultiPoly {
        &self.num
    }

    pub fn denom(&self) -> &MultiPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// `Some(c)` when the value is a rational constant.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.num.is_constant() && self.den.is_one() {
            Some(self.num.constant_value())
        } else {
            None
        }
    }

    /// Integer value, when the scalar is an integer constant that fits in `i64`.
    pub fn as_i64(&self) -> Option<i64> {
        use num_traits::ToPrimitive;
        let c = self.as_rational()?;
        if c.is_integer() {
            c.to_integer().to_i64()
        } else {
            None
        }
    }

    pub fn variables(&self) -> Vec<Var> {
        Var::ALL
            .into_iter()
            .filter(|&v| self.num.contains(v) || self.den.contains(v))
            .collect()
    }

    pub fn checked_div(&self, rhs: &ScalarExpr) -> Result<ScalarExpr, ScalarError> {
        if rhs.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        let inv = ScalarExpr {
            num: rhs.den.clone(),
            den: rhs.num.clone(),
        };
        // `inv` is reduced but not normalized; multiplication renormalizes.
        Ok(mul_reduced(self, &inv))
    }

    pub fn recip(&self) -> Result<ScalarExpr, ScalarError> {
        ScalarExpr::one().checked_div(self)
    }

    pub fn pow(&self, exp: u32) -> ScalarExpr {
        ScalarExpr {
            num: self.num.pow(exp),
            den: self.den.pow(exp),
        }
    }

    pub fn eval(&self, assignment: &Assignment) -> Result<Rational, ScalarError> {
        let d = self.den.eval(assignment)?;
        if d.is_zero() {
            return Err(ScalarError::EvaluationPole);
        }
        Ok(self.num.eval(assignment)? / d)
    }

    /// Replaces `v` by `value` everywhere.
    pub fn substitute(&self, v: Var, value: &ScalarExpr) -> Result<ScalarExpr, ScalarError> {
        if !self.num.contains(v) && !self.den.contains(v) {
            return Ok(self.clone());
        }
        let n = subst_poly(&self.num, v, value);
        let d = subst_poly(&self.den, v, value);
        n.checked_div(&d)
    }
}

fn subst_poly(p: &MultiPoly, v: Var, value: &ScalarExpr) -> ScalarExpr {
    // Horner over the coefficients in v, done in the field.
    let deg = p.degree_in(v);
    let mut acc = ScalarExpr::zero();
    for e in (0..=deg).rev() {
        let coeff = MultiPoly::from_terms(
            p.terms()
                .filter(|(m, _)| m.exp(v) == e)
                .map(|(m, c)| {
                    let mut m = *m;
                    m.0[v.index()] = 0;
                    (m, c.clone())
                }),
        );
        acc = &(&acc * value) + &ScalarExpr::from_poly(coeff);
    }
    acc
}

fn mul_reduced(a: &ScalarExpr, b: &ScalarExpr) -> ScalarExpr {
    if a.is_zero() || b.is_zero() {
        return ScalarExpr::zero();
    }
    if a.den.is_one() && b.den.is_one() {
        return ScalarExpr::from_poly(&a.num * &b.num);
    }
    // cross-cancel so only coprime pieces get multiplied
    let g1 = gcd(&a.num, &b.den);
    let g2 = gcd(&b.num, &a.den);
    let an = a.num.div_exact(&g1).expect("gcd divides");
    let bd = b.den.div_exact(&g1).expect("gcd divides");
    let bn = b.num.div_exact(&g2).expect("gcd divides");
    let ad = a.den.div_exact(&g2).expect("gcd divides");
    let num = &an * &bn;
    let den = &ad * &bd;
    let lc = den.leading_coeff();
    if lc.is_one() {
        ScalarExpr { num, den }
    } else {
        let inv = lc.recip();
        ScalarExpr {
            num: num.scale(&inv),
            den: den.scale(&inv),
        }
    }
}

impl Add for &ScalarExpr {
    type Output = ScalarExpr;
    fn add(self, rhs: &ScalarExpr) -> ScalarExpr {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            let num = &self.num + &rhs.num;
            if self.den.is_one() {
                return ScalarExpr::from_poly(num);
            }
            return ScalarExpr::from_fraction(num, self.den.clone()).expect("nonzero denominator");
        }
        let g = gcd(&self.den, &rhs.den);
        let a_cof = rhs.den.div_exact(&g).expect("gcd divides");
        let b_cof = self.den.div_exact(&g).expect("gcd divides");
        let num = &(&self.num * &a_cof) + &(&rhs.num * &b_cof);
        let den = &self.den * &a_cof;
        ScalarExpr::from_fraction(num, den).expect("nonzero denominator")
    }
}

impl Sub for &ScalarExpr {
    type Output = ScalarExpr;
    fn sub(self, rhs: &ScalarExpr) -> ScalarExpr {
        self + &(-rhs)
    }
}

impl Neg for &ScalarExpr {
    type Output = ScalarExpr;
    fn neg(self) -> ScalarExpr {
        ScalarExpr {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Mul for &ScalarExpr {
    type Output = ScalarExpr;
    fn mul(self, rhs: &ScalarExpr) -> ScalarExpr {
        mul_reduced(self, rhs)
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for ScalarExpr {
            type Output = ScalarExpr;
            fn $m(self, rhs: ScalarExpr) -> ScalarExpr {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&ScalarExpr> for ScalarExpr {
            type Output = ScalarExpr;
            fn $m(self, rhs: &ScalarExpr) -> ScalarExpr {
                (&self).$m(rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for ScalarExpr {
    type Output = ScalarExpr;
    fn neg(self) -> ScalarExpr {
        -&self
    }
}

impl Sum for ScalarExpr {
    fn sum<I: Iterator<Item = ScalarExpr>>(iter: I) -> ScalarExpr {
        iter.fold(ScalarExpr::zero(), |a, b| &a + &b)
    }
}

impl Default for ScalarExpr {
    fn default() -> Self {
        ScalarExpr::zero()
    }
}

impl From<i64> for ScalarExpr {
    fn from(n: i64) -> Self {
        ScalarExpr::int(n)
    }
}

impl From<Var> for ScalarExpr {
    fn from(v: Var) -> Self {
        ScalarExpr::var(v)
    }
}

impl FromStr for ScalarExpr {
    type Err = ScalarError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        super::parse(s)
    }
}

/// Polynomials print bare (`1-s`); proper fractions print as `(num)/(den)`.
impl fmt::Display for ScalarExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for ScalarExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}
