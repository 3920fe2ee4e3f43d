//! Exact scalar fields: the rationals and the Gaussian rationals Q(i).
//!
//! Literals use the grammar `p/q` for rationals (denominator optional) and
//! `p/q+r/s i` for Gaussian rationals. Whitespace is ignored; a missing real
//! part means zero and a bare `i` means one.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

/// Exact rational scalar.
pub type Rational = BigRational;

/// Integer backing type for rationals.
pub type Integer = BigInt;

/// Build a rational from a small numerator and denominator.
pub fn q(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Build an integral rational.
pub fn qi(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Tag naming the scalar field of an algebra or matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum ScalarField {
    #[serde(rename = "Q")]
    Rational,
    #[serde(rename = "Q(i)")]
    Gaussian,
}

impl ScalarField {
    pub fn tag(self) -> &'static str {
        match self {
            ScalarField::Rational => "Q",
            ScalarField::Gaussian => "Q(i)",
        }
    }
}

/// An exact field usable by the generic linear algebra.
///
/// The by-reference operator bounds let generic code avoid a clone per
/// arithmetic step; `mul_ref` covers the `&a * &b` case that supertraits
/// cannot express.
pub trait Field:
    Clone
    + PartialEq
    + Eq
    + std::hash::Hash
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
    + for<'a> Div<&'a Self, Output = Self>
    + for<'a> AddAssign<&'a Self>
    + for<'a> SubAssign<&'a Self>
    + 'static
{
    const TAG: ScalarField;
    fn from_rational(q: &Rational) -> Self;
    fn conj(&self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
    fn parse_literal(s: &str) -> Result<Self>;
    fn to_literal(&self) -> String;
    /// The rational value when the element is real.
    fn as_rational(&self) -> Option<Rational>;
    /// Floating approximation as (re, im).
    fn to_f64_pair(&self) -> (f64, f64);
}

impl Field for Rational {
    const TAG: ScalarField = ScalarField::Rational;
    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }
    fn conj(&self) -> Self {
        self.clone()
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn parse_literal(s: &str) -> Result<Self> {
        parse_rational(s)
    }
    fn to_literal(&self) -> String {
        format_rational(self)
    }
    fn as_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }
    fn to_f64_pair(&self) -> (f64, f64) {
        (rational_to_f64(self), 0.0)
    }
}

/// Convert a rational to the nearest double (saturating for huge values).
pub fn rational_to_f64(x: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    x.to_f64().unwrap_or_else(|| {
        if x.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

/// Parse a rational literal `p/q` or `p`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if t.is_empty() {
        return Err(Error::Parse(format!("empty rational literal {s:?}")));
    }
    let (n, d) = match t.split_once('/') {
        Some((n, d)) => (n, d),
        None => (t.as_str(), "1"),
    };
    let num: BigInt = n
        .parse()
        .map_err(|_| Error::Parse(format!("bad rational numerator in {s:?}")))?;
    let den: BigInt = d
        .parse()
        .map_err(|_| Error::Parse(format!("bad rational denominator in {s:?}")))?;
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    if d.starts_with('+') || d.starts_with('-') {
        return Err(Error::Parse(format!("signed denominator in {s:?}")));
    }
    Ok(Rational::new(num, den))
}

/// Canonical literal for a rational (reduced, sign on the numerator).
pub fn format_rational(x: &Rational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Element of Q(i).
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Gaussian {
    pub re: Rational,
    pub im: Rational,
}

impl Gaussian {
    pub fn new(re: Rational, im: Rational) -> Self {
        Gaussian { re, im }
    }
    pub fn real(re: Rational) -> Self {
        Gaussian { re, im: Rational::zero() }
    }
    pub fn i() -> Self {
        Gaussian { re: Rational::zero(), im: Rational::one() }
    }
    pub fn norm_sq(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }
    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }
}

impl fmt::Display for Gaussian {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_gaussian(self))
    }
}

/// Parse a Gaussian literal such as `1/2+3/4i`, `-i`, `2` or `5/3 i`.
pub fn parse_gaussian(s: &str) -> Result<Gaussian> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if t.is_empty() {
        return Err(Error::Parse(format!("empty Gaussian literal {s:?}")));
    }
    let Some(body) = t.strip_suffix('i') else {
        return Ok(Gaussian::real(parse_rational(&t)?));
    };
    // Split at the last sign that is not leading and not inside a denominator.
    let bytes = body.as_bytes();
    let mut split = None;
    for (k, &b) in bytes.iter().enumerate().rev() {
        if k > 0 && (b == b'+' || b == b'-') && bytes[k - 1] != b'/' {
            split = Some(k);
            break;
        }
    }
    let (re_s, im_s) = match split {
        Some(k) => (&body[..k], &body[k..]),
        None => ("", body),
    };
    let re = if re_s.is_empty() { Rational::zero() } else { parse_rational(re_s)? };
    let im = match im_s {
        "" | "+" => Rational::one(),
        "-" => -Rational::one(),
        other => parse_rational(other)?,
    };
    Ok(Gaussian { re, im })
}

/// Canonical Gaussian literal; real values print as plain rationals.
pub fn format_gaussian(z: &Gaussian) -> String {
    if z.im.is_zero() {
        return format_rational(&z.re);
    }
    let im = format_rational(&z.im.abs());
    if z.re.is_zero() {
        if z.im.is_negative() {
            format!("-{im}i")
        } else {
            format!("{im}i")
        }
    } else {
        let sign = if z.im.is_negative() { '-' } else { '+' };
        format!("{}{sign}{im}i", format_rational(&z.re))
    }
}

impl Zero for Gaussian {
    fn zero() -> Self {
        Gaussian::default()
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for Gaussian {
    fn one() -> Self {
        Gaussian::real(Rational::one())
    }
}

impl Neg for Gaussian {
    type Output = Gaussian;
    fn neg(self) -> Gaussian {
        Gaussian { re: -self.re, im: -self.im }
    }
}

impl<'a> Add<&'a Gaussian> for Gaussian {
    type Output = Gaussian;
    fn add(self, o: &'a Gaussian) -> Gaussian {
        Gaussian { re: self.re + &o.re, im: self.im + &o.im }
    }
}
impl Add for Gaussian {
    type Output = Gaussian;
    fn add(self, o: Gaussian) -> Gaussian {
        self + &o
    }
}
impl<'a> Sub<&'a Gaussian> for Gaussian {
    type Output = Gaussian;
    fn sub(self, o: &'a Gaussian) -> Gaussian {
        Gaussian { re: self.re - &o.re, im: self.im - &o.im }
    }
}
impl Sub for Gaussian {
    type Output = Gaussian;
    fn sub(self, o: Gaussian) -> Gaussian {
        self - &o
    }
}
impl<'a> Mul<&'a Gaussian> for Gaussian {
    type Output = Gaussian;
    fn mul(self, o: &'a Gaussian) -> Gaussian {
        self.mul_ref(o)
    }
}
impl Mul for Gaussian {
    type Output = Gaussian;
    fn mul(self, o: Gaussian) -> Gaussian {
        self.mul_ref(&o)
    }
}
impl<'a> Div<&'a Gaussian> for Gaussian {
    type Output = Gaussian;
    fn div(self, o: &'a Gaussian) -> Gaussian {
        let n = o.norm_sq();
        assert!(!n.is_zero(), "division by zero in Q(i)");
        let num = self.mul_ref(&o.conj());
        Gaussian { re: num.re / &n, im: num.im / &n }
    }
}
impl Div for Gaussian {
    type Output = Gaussian;
    fn div(self, o: Gaussian) -> Gaussian {
        self / &o
    }
}
impl<'a> AddAssign<&'a Gaussian> for Gaussian {
    fn add_assign(&mut self, o: &'a Gaussian) {
        self.re += &o.re;
        self.im += &o.im;
    }
}
impl<'a> SubAssign<&'a Gaussian> for Gaussian {
    fn sub_assign(&mut self, o: &'a Gaussian) {
        self.re -= &o.re;
        self.im -= &o.im;
    }
}
impl<'a> MulAssign<&'a Gaussian> for Gaussian {
    fn mul_assign(&mut self, o: &'a Gaussian) {
        *self = self.mul_ref(o);
    }
}

impl Field for Gaussian {
    const TAG: ScalarField = ScalarField::Gaussian;
    fn from_rational(q: &Rational) -> Self {
        Gaussian::real(q.clone())
    }
    fn conj(&self) -> Self {
        Gaussian { re: self.re.clone(), im: -self.im.clone() }
    }
    fn mul_ref(&self, o: &Self) -> Self {
        Gaussian {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }
    fn parse_literal(s: &str) -> Result<Self> {
        parse_gaussian(s)
    }
    fn to_literal(&self) -> String {
        format_gaussian(self)
    }
    fn as_rational(&self) -> Option<Rational> {
        self.im.is_zero().then(|| self.re.clone())
    }
    fn to_f64_pair(&self) -> (f64, f64) {
        (rational_to_f64(&self.re), rational_to_f64(&self.im))
    }
}

/// Simplest rational (least denominator, then least absolute numerator) in
/// the interval with the given endpoints. `None` endpoints are infinite.
/// Endpoints are included unless the corresponding `open` flag is set.
pub fn simplest_rational_between(
    lo: Option<&Rational>,
    lo_open: bool,
    hi: Option<&Rational>,
    hi_open: bool,
) -> Rational {
    let inside = |x: &Rational| {
        let above = match lo {
            None => true,
            Some(l) => {
                if lo_open {
                    x > l
                } else {
                    x >= l
                }
            }
        };
        let below = match hi {
            None => true,
            Some(h) => {
                if hi_open {
                    x < h
                } else {
                    x <= h
                }
            }
        };
        above && below
    };
    let zero = Rational::zero();
    if inside(&zero) {
        return zero;
    }
    // Interval lies entirely on one side of zero: reflect to the positive side.
    let positive = match lo {
        Some(l) => l >= &zero,
        None => false,
    };
    if positive {
        simplest_positive(lo.unwrap(), lo_open, hi, hi_open)
    } else {
        let nlo = hi.map(|h| -h.clone());
        let nhi = lo.map(|l| -l.clone());
        -simplest_positive(nlo.as_ref().unwrap(), hi_open, nhi.as_ref(), lo_open)
    }
}

/// Stern-Brocot descent for an interval contained in [0, +inf).
fn simplest_positive(lo: &Rational, lo_open: bool, hi: Option<&Rational>, hi_open: bool) -> Rational {
    let inside = |x: &Rational| {
        let a = if lo_open { x > lo } else { x >= lo };
        let b = match hi {
            None => true,
            Some(h) => {
                if hi_open {
                    x < h
                } else {
                    x <= h
                }
            }
        };
        a && b
    };
    // Smallest integer in range first.
    let mut n = lo.floor();
    while !inside(&n) {
        n += Rational::one();
        if let Some(h) = hi {
            if &n > h {
                break;
            }
        }
    }
    if inside(&n) {
        return n;
    }
    // Mediant walk: (a/b, c/d) bracket with lo in between.
    let (mut ln, mut ld) = (lo.floor().to_integer(), BigInt::one());
    let (mut hn, mut hd) = (ln.clone() + BigInt::one(), BigInt::one());
    loop {
        let mn = &ln + &hn;
        let md = &ld + &hd;
        let m = Rational::new(mn.clone(), md.clone());
        if inside(&m) {
            return m;
        }
        let go_right = if lo_open { &m <= lo } else { &m < lo };
        if go_right {
            ln = mn;
            ld = md;
        } else {
            hn = mn;
            hd = md;
        }
    }
}


/// `serialize_with` helper writing a rational as its literal.
pub fn ser_rational<S: serde::Serializer>(x: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(x))
}

/// `serialize_with` helper for sequences of rationals.
pub fn ser_rationals<S: serde::Serializer>(x: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(x.iter().map(format_rational))
}
