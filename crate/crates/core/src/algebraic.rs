//! Exact values of the form `a + Σ b_D √D + i (c + Σ e_D √D)` with rational
//! coefficients and square-free `D`.
//!
//! Text form (used in character table files):
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor (['*'|'/'] factor)*      juxtaposition multiplies: 2r5, 3i
//! factor := integer | 'r' integer | 'i' | '(' expr ')' | '-' factor
//! ```
//!
//! `rD` is the positive square root of `D`, `i` is the imaginary unit, and
//! division is only allowed by a nonzero rational.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// `√D` or `i√D`; `D = 1` is the rational (or purely imaginary) unit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct Surd {
    imaginary: bool,
    radicand: u64,
}

impl Surd {
    const ONE: Surd = Surd {
        imaginary: false,
        radicand: 1,
    };

    /// Product of two surds as `sign * scale * surd`.
    fn times(self, other: Surd) -> (i64, u64, Surd) {
        let (scale, radicand) = square_free_split(self.radicand * other.radicand);
        let sign = if self.imaginary && other.imaginary {
            -1
        } else {
            1
        };
        (
            sign,
            scale,
            Surd {
                imaginary: self.imaginary ^ other.imaginary,
                radicand,
            },
        )
    }
}

/// `n = s^2 * d` with `d` square-free.
fn square_free_split(mut n: u64) -> (u64, u64) {
    let mut s = 1;
    let mut d = 1;
    let mut f = 2;
    while f * f <= n {
        while n.is_multiple_of(f * f) {
            n /= f * f;
            s *= f;
        }
        if n.is_multiple_of(f) {
            n /= f;
            d *= f;
        }
        f += 1;
    }
    (s, d * n)
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct AlgebraicValue {
    /// No zero coefficients; keys sorted (real before imaginary, then by D).
    terms: BTreeMap<Surd, BigRational>,
}

impl AlgebraicValue {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_rational(q: BigRational) -> Self {
        let mut v = Self::zero();
        v.add_term(Surd::ONE, q);
        v
    }

    /// `√d` for `d >= 0`.
    pub fn sqrt(d: u64) -> Self {
        if d == 0 {
            return Self::zero();
        }
        let (s, radicand) = square_free_split(d);
        let mut v = Self::zero();
        v.add_term(
            Surd {
                imaginary: false,
                radicand,
            },
            BigRational::from_integer(BigInt::from(s)),
        );
        v
    }

    pub fn imaginary_unit() -> Self {
        let mut v = Self::zero();
        v.add_term(
            Surd {
                imaginary: true,
                radicand: 1,
            },
            BigRational::one(),
        );
        v
    }

    fn add_term(&mut self, surd: Surd, coeff: BigRational) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(surd).or_insert_with(BigRational::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&surd);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_complex(&self) -> bool {
        self.terms.keys().any(|s| s.imaginary)
    }

    /// The value as a rational when it has no surd or imaginary part.
    pub fn as_rational(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => self.terms.get(&Surd::ONE).cloned(),
            _ => None,
        }
    }

    pub fn as_integer(&self) -> Option<BigInt> {
        self.as_rational()
            .filter(|q| q.is_integer())
            .map(|q| q.to_integer())
    }

    pub fn conj(&self) -> Self {
        let mut v = Self::zero();
        for (s, c) in &self.terms {
            v.add_term(*s, if s.imaginary { -c.clone() } else { c.clone() });
        }
        v
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        let mut v = Self::zero();
        for (s, c) in &self.terms {
            v.add_term(*s, c * q);
        }
        v
    }

    pub fn div_rational(&self, q: &BigRational) -> Result<Self> {
        if q.is_zero() {
            return Err(Error::Parse("division by zero".into()));
        }
        Ok(self.scale(&q.recip()))
    }

    /// Floating-point approximation `(re, im)`; used for display and sanity
    /// checks only, never for decisions.
    pub fn approx(&self) -> (f64, f64) {
        let mut re = 0.0;
        let mut im = 0.0;
        for (s, c) in &self.terms {
            let v = c.to_f64().unwrap_or(f64::NAN) * (s.radicand as f64).sqrt();
            if s.imaginary {
                im += v;
            } else {
                re += v;
            }
        }
        (re, im)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut p = Parser {
            src: text,
            chars: text.char_indices().peekable(),
        };
        let v = p.expr()?;
        p.skip_ws();
        if let Some(&(i, c)) = p.chars.peek() {
            return Err(p.error_at(i, c));
        }
        Ok(v)
    }
}

impl Add for &AlgebraicValue {
    type Output = AlgebraicValue;
    fn add(self, rhs: &AlgebraicValue) -> AlgebraicValue {
        let mut v = self.clone();
        for (s, c) in &rhs.terms {
            v.add_term(*s, c.clone());
        }
        v
    }
}

impl Sub for &AlgebraicValue {
    type Output = AlgebraicValue;
    fn sub(self, rhs: &AlgebraicValue) -> AlgebraicValue {
        self + &(-rhs)
    }
}

impl Neg for &AlgebraicValue {
    type Output = AlgebraicValue;
    fn neg(self) -> AlgebraicValue {
        self.scale(&-BigRational::one())
    }
}

impl Mul for &AlgebraicValue {
    type Output = AlgebraicValue;
    fn mul(self, rhs: &AlgebraicValue) -> AlgebraicValue {
        let mut v = AlgebraicValue::zero();
        for (sa, ca) in &self.terms {
            for (sb, cb) in &rhs.terms {
                let (sign, scale, surd) = sa.times(*sb);
                let k = BigRational::from_integer(BigInt::from(sign) * BigInt::from(scale));
                v.add_term(surd, ca * cb * k);
            }
        }
        v
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for AlgebraicValue {
            type Output = AlgebraicValue;
            fn $m(self, rhs: AlgebraicValue) -> AlgebraicValue {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for AlgebraicValue {
    type Output = AlgebraicValue;
    fn neg(self) -> AlgebraicValue {
        -&self
    }
}

impl std::iter::Sum for AlgebraicValue {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(AlgebraicValue::zero(), |a, b| &a + &b)
    }
}

impl From<i64> for AlgebraicValue {
    fn from(n: i64) -> Self {
        Self::from_integer(n)
    }
}

impl std::str::FromStr for AlgebraicValue {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

/// Renders in the parseable text form, e.g. `-1/2+1/2*r5`.
impl fmt::Display for AlgebraicValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (s, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            if negative {
                f.write_str("-")?;
            } else if k > 0 {
                f.write_str("+")?;
            }
            let mag = c.abs();
            let mut unit = String::new();
            if s.imaginary {
                unit.push('i');
            }
            if s.radicand != 1 {
                if !unit.is_empty() {
                    unit.push('*');
                }
                unit.push_str(&format!("r{}", s.radicand));
            }
            match (unit.is_empty(), mag.is_one()) {
                (true, _) => write!(f, "{mag}")?,
                (false, true) => f.write_str(&unit)?,
                (false, false) => write!(f, "{mag}*{unit}")?,
            }
        }
        Ok(())
    }
}

struct Parser<'a> {
    src: &'a str,
    chars: std::iter::Peekable<std::str::CharIndices<'a>>,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while matches!(self.chars.peek(), Some((_, c)) if c.is_whitespace()) {
            self.chars.next();
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.peek().map(|&(_, c)| c)
    }

    fn error_at(&self, at: usize, c: char) -> Error {
        if c.is_ascii_alphabetic() {
            Error::Parse(format!(
                "unsupported symbol `{c}` at offset {at} in `{}`: only rationals, \
                 square roots rD and i are supported (general cyclotomic values are not)",
                self.src
            ))
        } else {
            Error::Parse(format!("unexpected `{c}` at offset {at} in `{}`", self.src))
        }
    }

    fn expr(&mut self) -> Result<AlgebraicValue> {
        let mut acc = match self.peek() {
            Some('+') => {
                self.chars.next();
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some('+') => {
                    self.chars.next();
                    acc = &acc + &self.term()?;
                }
                Some('-') => {
                    self.chars.next();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<AlgebraicValue> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.chars.next();
                    acc = &acc * &self.factor()?;
                }
                Some('/') => {
                    self.chars.next();
                    let d = self.factor()?;
                    let q = d.as_rational().ok_or_else(|| {
                        Error::Parse(format!("division by irrational value in `{}`", self.src))
                    })?;
                    acc = acc.div_rational(&q)?;
                }
                Some(c) if c.is_ascii_digit() || c == 'r' || c == 'i' || c == '(' => {
                    acc = &acc * &self.factor()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<AlgebraicValue> {
        match self.peek() {
            Some('-') => {
                self.chars.next();
                Ok(-self.factor()?)
            }
            Some('(') => {
                self.chars.next();
                let v = self.expr()?;
                match self.peek() {
                    Some(')') => {
                        self.chars.next();
                        Ok(v)
                    }
                    _ => Err(Error::Parse(format!("missing `)` in `{}`", self.src))),
                }
            }
            Some('r') => {
                self.chars.next();
                let d = self.integer()?;
                let d = d
                    .to_u64()
                    .ok_or_else(|| Error::Parse(format!("radicand too large in `{}`", self.src)))?;
                Ok(AlgebraicValue::sqrt(d))
            }
            Some('i') => {
                self.chars.next();
                Ok(AlgebraicValue::imaginary_unit())
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(AlgebraicValue::from_rational(BigRational::from_integer(n)))
            }
            Some(c) => {
                let &(i, _) = self.chars.peek().expect("peeked");
                Err(self.error_at(i, c))
            }
            None => Err(Error::Parse(format!("unexpected end of `{}`", self.src))),
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        // no whitespace inside a number or between `r` and its radicand
        let mut digits = String::new();
        while let Some(&(_, c)) = self.chars.peek() {
            if !c.is_ascii_digit() {
                break;
            }
            digits.push(c);
            self.chars.next();
        }
        digits
            .parse()
            .map_err(|_| Error::Parse(format!("expected a number in `{}`", self.src)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn v(s: &str) -> AlgebraicValue {
        AlgebraicValue::parse(s).unwrap()
    }

    #[test]
    fn golden_ratio_conjugates_cancel() {
        let b5 = v("(-1+r5)/2");
        let b5s = v("(-1-r5)/2");
        assert!((&(&b5 + &b5s) + &AlgebraicValue::one()).is_zero());
        assert_eq!(&b5 * &b5s, v("-1"));
    }

    #[test]
    fn square_roots_square_to_radicand() {
        for d in [2u64, 3, 5, 6, 7, 10, 12, 18] {
            let r = AlgebraicValue::sqrt(d);
            assert_eq!(&r * &r, AlgebraicValue::from_integer(d as i64));
        }
        assert_eq!(v("r8"), v("2*r2"));
        assert_eq!(v("r4"), v("2"));
        assert_eq!(v("r2*r3"), v("r6"));
        assert_eq!(v("i*i"), v("-1"));
        assert_eq!(v("(i r3)(i r3)"), v("-3"));
    }

    #[test]
    fn parse_forms() {
        assert_eq!(
            v("3/4"),
            AlgebraicValue::from_rational(BigRational::new(3.into(), 4.into()))
        );
        assert_eq!(v("-(1-r5)/2"), v("(-1+r5)/2"));
        assert_eq!(v(" 2 r5 "), v("2*r5"));
        assert_eq!(v("+1-2+3"), v("2"));
        assert_eq!(v("r0"), AlgebraicValue::zero());
    }

    #[test]
    fn rejects_unsupported_values() {
        for bad in ["b5", "z5", "e(5)", "(1+r5", "1/r5", "1/0", "", "1 2 +"] {
            assert!(AlgebraicValue::parse(bad).is_err(), "{bad}");
        }
        let msg = AlgebraicValue::parse("b5").unwrap_err().to_string();
        assert!(msg.contains("cyclotomic"));
    }

    #[test]
    fn display_is_parseable() {
        for s in [
            "0",
            "1",
            "-3/2",
            "(-1+r5)/2",
            "2r3-i",
            "(1+i*r7)/2",
            "-i*r3",
        ] {
            let x = v(s);
            assert_eq!(v(&x.to_string()), x, "{s} -> {x}");
        }
        assert_eq!(v("(-1+r5)/2").to_string(), "-1/2+1/2*r5");
    }

    #[test]
    fn conjugation_and_rationality() {
        let w = v("(-1+i*r3)/2");
        assert!(w.is_complex());
        assert_eq!(&w * &w.conj(), v("1"));
        assert_eq!(&(&(&w * &w) * &w), &v("1"));
        assert_eq!(v("6/3").as_integer(), Some(BigInt::from(2)));
        assert_eq!(v("1/2").as_integer(), None);
        assert_eq!(v("r2").as_rational(), None);
    }

    fn arb_value() -> impl Strategy<Value = AlgebraicValue> {
        let term = (
            -6i64..=6,
            1i64..=4,
            prop::sample::select(vec![1u64, 2, 3, 5, 6, 10, 15]),
            any::<bool>(),
        )
            .prop_map(|(n, d, r, im)| {
                let mut t = AlgebraicValue::from_rational(BigRational::new(n.into(), d.into()));
                t = &t * &AlgebraicValue::sqrt(r);
                if im {
                    t = &t * &AlgebraicValue::imaginary_unit();
                }
                t
            });
        proptest::collection::vec(term, 0..4).prop_map(|ts| ts.into_iter().sum())
    }

    proptest! {
        #[test]
        fn field_laws(a in arb_value(), b in arb_value(), c in arb_value()) {
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert!((&a - &a).is_zero());
            prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
        }

        #[test]
        fn text_round_trip(a in arb_value()) {
            let back = AlgebraicValue::parse(&a.to_string()).unwrap();
            prop_assert_eq!(&back, &a);
            // normalization is idempotent
            prop_assert_eq!(back.to_string(), a.to_string());
        }
    }
}
