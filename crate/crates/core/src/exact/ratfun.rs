use super::{QPoly, Rational};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Rational function in one variable `s` in canonical integer form.
///
/// Numerator and denominator are coprime, have integer coefficients with joint
/// content 1, and the denominator has positive leading coefficient. Equality of
/// values is therefore equality of representations.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: Vec<BigInt>,
    den: Vec<BigInt>,
}

/// Primitive linear polynomial `a*s + b` with `a > 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinearFactor {
    pub a: BigInt,
    pub b: BigInt,
}

impl LinearFactor {
    pub fn root(&self) -> Rational {
        Rational::new(-self.b.clone(), self.a.clone())
    }
}

/// A polynomial split as `content * leftover * prod(linear^mult)`.
#[derive(Clone, Debug)]
pub struct Factored {
    pub content: Rational,
    pub leftover: Vec<BigInt>,
    pub linear: Vec<(LinearFactor, u32)>,
}

fn to_int_coeffs(p: &QPoly) -> (Vec<BigInt>, BigInt) {
    let mut l = BigInt::one();
    for c in p.coeffs() {
        l = l.lcm(c.denom());
    }
    let v = p.coeffs().iter().map(|c| (c * Rational::from_integer(l.clone())).to_integer()).collect();
    (v, l)
}

fn content(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

impl RationalFunction {
    pub fn new(num: QPoly, den: QPoly) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        if num.is_zero() {
            return Self::zero();
        }
        let g = num.gcd(&den);
        let (n, _) = num.div_rem(&g);
        let (d, _) = den.div_rem(&g);
        let (mut ni, nl) = to_int_coeffs(&n);
        let (mut di, dl) = to_int_coeffs(&d);
        // bring to a common scale: n/d = (ni/nl)/(di/dl) = (ni*dl)/(di*nl)
        for c in ni.iter_mut() {
            *c *= &dl;
        }
        for c in di.iter_mut() {
            *c *= &nl;
        }
        let mut g = content(&ni).gcd(&content(&di));
        if di.last().unwrap().is_negative() {
            g = -g;
        }
        for c in ni.iter_mut() {
            *c = &*c / &g;
        }
        for c in di.iter_mut() {
            *c = &*c / &g;
        }
        RationalFunction { num: ni, den: di }
    }

    /// From integer coefficient vectors already known to be coprime.
    pub fn from_coprime_ints(mut ni: Vec<BigInt>, mut di: Vec<BigInt>) -> Self {
        while ni.last().is_some_and(|c| c.is_zero()) {
            ni.pop();
        }
        while di.last().is_some_and(|c| c.is_zero()) {
            di.pop();
        }
        assert!(!di.is_empty(), "rational function with zero denominator");
        if ni.is_empty() {
            return Self::zero();
        }
        let mut g = content(&ni).gcd(&content(&di));
        if di.last().unwrap().is_negative() {
            g = -g;
        }
        for c in ni.iter_mut() {
            *c = &*c / &g;
        }
        for c in di.iter_mut() {
            *c = &*c / &g;
        }
        RationalFunction { num: ni, den: di }
    }

    pub fn from_polys(num: &QPoly) -> Self {
        Self::new(num.clone(), QPoly::one())
    }

    pub fn from_int_coeffs(num: &[BigInt], den: &[BigInt]) -> Self {
        Self::new(QPoly::from_bigints(num), QPoly::from_bigints(den))
    }

    pub fn zero() -> Self {
        RationalFunction { num: vec![], den: vec![BigInt::one()] }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(QPoly::constant(c), QPoly::one())
    }

    /// The variable `s`.
    pub fn s() -> Self {
        Self::new(QPoly::from_ints(&[0, 1]), QPoly::one())
    }

    /// `1 / (a*s + b)`.
    pub fn inverse_linear(a: i64, b: i64) -> Self {
        Self::new(QPoly::one(), QPoly::from_ints(&[b, a]))
    }

    pub fn numer(&self) -> &[BigInt] {
        &self.num
    }

    pub fn denom(&self) -> &[BigInt] {
        &self.den
    }

    pub fn numer_poly(&self) -> QPoly {
        QPoly::from_bigints(&self.num)
    }

    pub fn denom_poly(&self) -> QPoly {
        QPoly::from_bigints(&self.den)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_empty()
    }

    /// `deg(num) - deg(den)`; `None` for the zero function.
    pub fn degree(&self) -> Option<isize> {
        if self.is_zero() {
            None
        } else {
            Some(self.num.len() as isize - self.den.len() as isize)
        }
    }

    /// Limit as `s -> infinity`, if finite.
    pub fn limit_at_infinity(&self) -> Option<Rational> {
        match self.degree() {
            None => Some(Rational::zero()),
            Some(d) if d < 0 => Some(Rational::zero()),
            Some(0) => Some(Rational::new(self.num.last().unwrap().clone(), self.den.last().unwrap().clone())),
            _ => None,
        }
    }

    pub fn eval(&self, x: &Rational) -> Option<Rational> {
        let d = self.denom_poly().eval(x);
        if d.is_zero() {
            None
        } else {
            Some(self.numer_poly().eval(x) / d)
        }
    }

    pub fn checked_div(&self, other: &Self) -> Option<Self> {
        if other.is_zero() {
            return None;
        }
        Some(Self::new(
            &self.numer_poly() * &other.denom_poly(),
            &self.denom_poly() * &other.numer_poly(),
        ))
    }

    pub fn factor_numerator(&self) -> Factored {
        factor_linear(&self.num)
    }

    pub fn factor_denominator(&self) -> Factored {
        factor_linear(&self.den)
    }

    /// Rational poles with multiplicity; `None` if the denominator has an irrational root.
    pub fn poles(&self) -> Option<Vec<(Rational, u32)>> {
        let f = self.factor_denominator();
        if f.leftover.len() > 1 {
            return None;
        }
        Some(f.linear.iter().map(|(l, m)| (l.root(), *m)).collect())
    }
}

fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.abs().to_u64()?;
    if n == 0 || n > 1_000_000_000_000 {
        return None;
    }
    let mut out = vec![];
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(BigInt::from(d));
            if d * d != n {
                out.push(BigInt::from(n / d));
            }
        }
        d += 1;
    }
    Some(out)
}

fn eval_int(p: &[BigInt], a: &BigInt, b: &BigInt) -> bool {
    // does a*s + b divide p, i.e. p(-b/a) = 0: evaluate homogenised sum p_i (-b)^i a^(deg-i)
    let deg = p.len() - 1;
    let mut acc = BigInt::zero();
    let mb = -b;
    for (i, c) in p.iter().enumerate() {
        acc += c * num_traits::pow(mb.clone(), i) * num_traits::pow(a.clone(), deg - i);
    }
    acc.is_zero()
}

/// Splits off the rational linear factors of an integer polynomial.
pub fn factor_linear(p: &[BigInt]) -> Factored {
    if p.is_empty() {
        return Factored { content: Rational::zero(), leftover: vec![], linear: vec![] };
    }
    let mut c = content(p);
    if p.last().unwrap().is_negative() {
        c = -c;
    }
    let mut rest: Vec<BigInt> = p.iter().map(|x| x / &c).collect();
    let mut linear: Vec<(LinearFactor, u32)> = vec![];
    // factors of s first
    let mut k = 0u32;
    while rest.len() > 1 && rest[0].is_zero() {
        rest.remove(0);
        k += 1;
    }
    if k > 0 {
        linear.push((LinearFactor { a: BigInt::one(), b: BigInt::zero() }, k));
    }
    loop {
        if rest.len() <= 1 {
            break;
        }
        let (Some(ps), Some(qs)) = (divisors(&rest[0]), divisors(rest.last().unwrap())) else {
            break;
        };
        let mut found = None;
        'outer: for q in &qs {
            for pp in &ps {
                for b in [pp.clone(), -pp.clone()] {
                    if q.gcd(&b).is_one() && eval_int(&rest, q, &b) {
                        found = Some(LinearFactor { a: q.clone(), b });
                        break 'outer;
                    }
                }
            }
        }
        let Some(lf) = found else { break };
        let (quot, _) = QPoly::from_bigints(&rest).div_rem(&QPoly::new(vec![
            Rational::from_integer(lf.b.clone()),
            Rational::from_integer(lf.a.clone()),
        ]));
        rest = quot.coeffs().iter().map(|x| x.to_integer()).collect();
        match linear.iter_mut().find(|(l, _)| *l == lf) {
            Some((_, m)) => *m += 1,
            None => linear.push((lf, 1)),
        }
    }
    // leftover is primitive with positive leading coefficient; fold its sign into content
    let lc = content(&rest);
    let mut lc = if rest.last().unwrap().is_negative() { -lc } else { lc };
    if lc.is_zero() {
        lc = BigInt::one();
    }
    let leftover: Vec<BigInt> = rest.iter().map(|x| x / &lc).collect();
    let content = Rational::from_integer(c * lc);
    Factored { content, leftover, linear }
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, o: &RationalFunction) -> RationalFunction {
        if self.den == o.den {
            return RationalFunction::new(&self.numer_poly() + &o.numer_poly(), self.denom_poly());
        }
        RationalFunction::new(
            &(&self.numer_poly() * &o.denom_poly()) + &(&o.numer_poly() * &self.denom_poly()),
            &self.denom_poly() * &o.denom_poly(),
        )
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, o: &RationalFunction) -> RationalFunction {
        self + &(-o)
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction { num: self.num.iter().map(|c| -c).collect(), den: self.den.clone() }
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, o: &RationalFunction) -> RationalFunction {
        RationalFunction::new(&self.numer_poly() * &o.numer_poly(), &self.denom_poly() * &o.denom_poly())
    }
}

impl Div for &RationalFunction {
    type Output = RationalFunction;
    fn div(self, o: &RationalFunction) -> RationalFunction {
        self.checked_div(o).expect("division by the zero rational function")
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl $tr for RationalFunction {
            type Output = RationalFunction;
            fn $m(self, o: RationalFunction) -> RationalFunction {
                (&self).$m(&o)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);
owned_ops!(Div, div);

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::format::plain(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rf(n: &[i64], d: &[i64]) -> RationalFunction {
        RationalFunction::new(QPoly::from_ints(n), QPoly::from_ints(d))
    }

    #[test]
    fn canonical_form() {
        let a = rf(&[0, 2], &[-2, 2]);
        let b = rf(&[0, -1], &[1, -1]);
        assert_eq!(a, b);
        assert_eq!(a.numer(), &[BigInt::from(0), BigInt::from(1)]);
        assert_eq!(a.denom(), &[BigInt::from(-1), BigInt::from(1)]);
        let half = rf(&[1], &[2]);
        assert_eq!(half.numer(), &[BigInt::from(1)]);
        assert_eq!(half.denom(), &[BigInt::from(2)]);
    }

    #[test]
    fn products_and_sums() {
        let h = rf(&[0, 1], &[-1, 1]);
        assert_eq!(&h * &h, rf(&[0, 0, 1], &[1, -2, 1]));
        assert_eq!(&h + &RationalFunction::zero(), h);
        let x = rf(&[0, 2], &[-1, 2]);
        assert_eq!(x.limit_at_infinity(), Some(Rational::one()));
    }

    #[test]
    fn linear_factoring() {
        // 2*(2s-3)^3 * (s-1)
        let p = &(&QPoly::from_ints(&[-3, 2]).pow(3) * &QPoly::from_ints(&[-1, 1])).scale(&Rational::from_integer(2.into()));
        let ints: Vec<BigInt> = p.coeffs().iter().map(|c| c.to_integer()).collect();
        let f = factor_linear(&ints);
        assert_eq!(f.content, Rational::from_integer(2.into()));
        assert_eq!(f.leftover, vec![BigInt::one()]);
        assert_eq!(f.linear.len(), 2);
    }
}
