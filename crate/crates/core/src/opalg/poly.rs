//! Exact multivariate polynomials over ℚ in the model parameters `a_1..a_N` and `s`.
//!
//! The oscillator strength `b` never appears as an indeterminate: it is stored
//! as `s²/2`, so every identity involving `√(2b)` stays polynomial.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{OpAlgError, Rational};

/// One of the model indeterminates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Indeterminate {
    /// `a_i`, zero-based.
    A(usize),
    /// `s = √(2b)`.
    S,
}

impl fmt::Display for Indeterminate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Indeterminate::A(i) => write!(f, "a{}", i + 1),
            Indeterminate::S => f.write_str("s"),
        }
    }
}

/// Complete numeric assignment of the indeterminates of a dimension-`N` ring.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ParamAssignment {
    values: BTreeMap<Indeterminate, Rational>,
}

impl ParamAssignment {
    pub fn new() -> Self {
        Self::default()
    }

    /// Assignment `a_i = a[i]`, `s = s`.
    pub fn from_values(a: &[Rational], s: Rational) -> Self {
        let mut values: BTreeMap<_, _> = a
            .iter()
            .enumerate()
            .map(|(i, v)| (Indeterminate::A(i), v.clone()))
            .collect();
        values.insert(Indeterminate::S, s);
        Self { values }
    }

    pub fn set(&mut self, var: Indeterminate, value: Rational) -> &mut Self {
        self.values.insert(var, value);
        self
    }

    pub fn get(&self, var: Indeterminate) -> Option<&Rational> {
        self.values.get(&var)
    }

    /// Values in ring order `a_1..a_N, s`; fails on the first missing variable.
    fn ordered(&self, n: usize) -> Result<Vec<Rational>, OpAlgError> {
        (0..n)
            .map(Indeterminate::A)
            .chain(std::iter::once(Indeterminate::S))
            .map(|v| {
                self.values
                    .get(&v)
                    .cloned()
                    .ok_or_else(|| OpAlgError::PartialAssignment(v.to_string()))
            })
            .collect()
    }
}

/// Exponent vector over `a_1..a_N, s` (length `N + 1`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyMonomial(Vec<u32>);

impl PolyMonomial {
    pub fn one(n: usize) -> Self {
        PolyMonomial(vec![0; n + 1])
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn mul(&self, other: &Self) -> Self {
        PolyMonomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

// Graded lexicographic.
impl Ord for PolyMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for PolyMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Element of ℚ[a_1..a_N, s] in canonical sparse form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ParamPoly {
    n: usize,
    terms: BTreeMap<PolyMonomial, Rational>,
}

impl ParamPoly {
    pub fn zero(n: usize) -> Self {
        ParamPoly {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, Rational::one())
    }

    pub fn constant(n: usize, c: Rational) -> Self {
        let mut p = Self::zero(n);
        if !c.is_zero() {
            p.terms.insert(PolyMonomial::one(n), c);
        }
        p
    }

    pub fn from_int(n: usize, c: i64) -> Self {
        Self::constant(n, Rational::from_integer(BigInt::from(c)))
    }

    pub fn var(n: usize, v: Indeterminate) -> Self {
        let mut e = vec![0; n + 1];
        match v {
            Indeterminate::A(i) => {
                assert!(i < n, "a_{} out of range for N = {}", i + 1, n);
                e[i] = 1;
            }
            Indeterminate::S => e[n] = 1,
        }
        let mut p = Self::zero(n);
        p.terms.insert(PolyMonomial(e), Rational::one());
        p
    }

    /// `a_i` with zero-based `i`.
    pub fn a(n: usize, i: usize) -> Self {
        Self::var(n, Indeterminate::A(i))
    }

    pub fn s(n: usize) -> Self {
        Self::var(n, Indeterminate::S)
    }

    /// `b = s²/2`.
    pub fn b(n: usize) -> Self {
        let s = Self::s(n);
        s.mul(&s).scale(&Rational::new(1.into(), 2.into()))
    }

    /// Builds a polynomial from explicit `(exponents, coefficient)` pairs.
    pub fn from_terms<I>(n: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<u32>, Rational)>,
    {
        let mut p = Self::zero(n);
        for (e, c) in terms {
            assert_eq!(e.len(), n + 1, "exponent vector length");
            p.add_term(PolyMonomial(e), c);
        }
        p
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PolyMonomial, &Rational)> {
        self.terms.iter()
    }

    /// The value if this is a constant polynomial.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next()?;
                (m.degree() == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    fn add_term(&mut self, m: PolyMonomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// `self += factor · other`.
    pub fn add_scaled(&mut self, other: &ParamPoly, factor: &Rational) {
        if factor.is_zero() {
            return;
        }
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c * factor);
        }
    }

    pub fn add(&self, other: &ParamPoly) -> ParamPoly {
        debug_assert_eq!(self.n, other.n);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &ParamPoly) -> ParamPoly {
        debug_assert_eq!(self.n, other.n);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }

    pub fn neg(&self) -> ParamPoly {
        ParamPoly {
            n: self.n,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn mul(&self, other: &ParamPoly) -> ParamPoly {
        debug_assert_eq!(self.n, other.n);
        let mut out = ParamPoly::zero(self.n);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, r: &Rational) -> ParamPoly {
        if r.is_zero() {
            return ParamPoly::zero(self.n);
        }
        ParamPoly {
            n: self.n,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * r)).collect(),
        }
    }

    pub fn scale_int(&self, k: i64) -> ParamPoly {
        self.scale(&Rational::from_integer(BigInt::from(k)))
    }

    pub fn pow(&self, k: u32) -> ParamPoly {
        (0..k).fold(ParamPoly::one(self.n), |acc, _| acc.mul(self))
    }

    /// Exact evaluation; every indeterminate must be assigned.
    pub fn evaluate(&self, values: &ParamAssignment) -> Result<Rational, OpAlgError> {
        let vals = values.ordered(self.n)?;
        Ok(self.evaluate_ordered(&vals))
    }

    pub(crate) fn evaluate_ordered(&self, vals: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, &e) in vals.iter().zip(&m.0) {
                for _ in 0..e {
                    t *= v;
                }
            }
            acc += t;
        }
        acc
    }

    /// Floating-point evaluation at `a`, `s`.
    pub fn evaluate_f64(&self, a: &[f64], s: f64) -> f64 {
        assert_eq!(a.len(), self.n);
        self.terms
            .iter()
            .map(|(m, c)| {
                let mut t = c.to_f64().unwrap_or(f64::NAN);
                for (i, &e) in m.0.iter().enumerate() {
                    let v = if i < self.n { a[i] } else { s };
                    t *= v.powi(e as i32);
                }
                t
            })
            .sum()
    }

    pub(crate) fn write_canonical(&self, f: &mut impl fmt::Write) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            match (idx, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mut factors: Vec<String> = Vec::new();
            if !mag.is_one() || m.degree() == 0 {
                factors.push(mag.to_string());
            }
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let name = if i < self.n {
                    Indeterminate::A(i)
                } else {
                    Indeterminate::S
                };
                if e == 1 {
                    factors.push(name.to_string());
                } else {
                    factors.push(format!("{name}^{e}"));
                }
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }

    /// Parses the canonical text form, e.g. `-1/2*a1^2*s + 3`.
    pub fn parse(n: usize, text: &str) -> Result<ParamPoly, OpAlgError> {
        let err = |msg: &str| OpAlgError::Parse(format!("{msg} in polynomial `{text}`"));
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(err("empty input"));
        }
        let mut p = ParamPoly::zero(n);
        let mut rest = compact.as_str();
        while !rest.is_empty() {
            let negative = match rest.as_bytes()[0] {
                b'-' => {
                    rest = &rest[1..];
                    true
                }
                b'+' => {
                    rest = &rest[1..];
                    false
                }
                _ => false,
            };
            let end = rest.find(['+', '-']).unwrap_or(rest.len());
            let term = &rest[..end];
            rest = &rest[end..];
            if term.is_empty() {
                return Err(err("dangling sign"));
            }
            let mut coeff = Rational::one();
            let mut exps = vec![0u32; n + 1];
            for factor in term.split('*') {
                let (base, exp) = match factor.split_once('^') {
                    Some((b, e)) => (b, e.parse::<u32>().map_err(|_| err("bad exponent"))?),
                    None => (factor, 1),
                };
                if base == "s" {
                    exps[n] += exp;
                } else if let Some(idx) = base.strip_prefix('a') {
                    let i: usize = idx.parse().map_err(|_| err("bad variable index"))?;
                    if i == 0 || i > n {
                        return Err(err("variable index out of range"));
                    }
                    exps[i - 1] += exp;
                } else {
                    let c: Rational = base.parse().map_err(|_| err("bad coefficient"))?;
                    coeff *= c;
                }
            }
            if negative {
                coeff = -coeff;
            }
            p.add_term(PolyMonomial(exps), coeff);
        }
        Ok(p)
    }
}

impl fmt::Display for ParamPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_canonical(f)
    }
}

impl fmt::Debug for ParamPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ParamPoly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn difference_of_squares() {
        let n = 2;
        let a1 = ParamPoly::a(n, 0);
        let s = ParamPoly::s(n);
        let lhs = a1.add(&s).mul(&a1.sub(&s));
        let rhs = a1.mul(&a1).sub(&s.mul(&s));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn additive_identity() {
        let p = ParamPoly::parse(2, "3/4*a1*s - a2 + 7").unwrap();
        assert_eq!(p.add(&ParamPoly::zero(2)), p);
    }

    #[test]
    fn kprime_factor_expansion() {
        let n = 2;
        let f = |i| {
            ParamPoly::a(n, i)
                .scale(&r(8, 1))
                .sub(&ParamPoly::from_int(n, 3))
        };
        let got = f(0).mul(&f(1));
        let want = ParamPoly::parse(n, "64*a1*a2 - 24*a1 - 24*a2 + 9").unwrap();
        assert_eq!(got, want);
    }

    #[test]
    fn b_is_half_s_squared() {
        let b = ParamPoly::b(1);
        assert_eq!(b.to_string(), "1/2*s^2");
    }

    #[test]
    fn cancellation_prunes_terms() {
        let p = ParamPoly::parse(1, "a1 + s").unwrap();
        let z = p.sub(&p);
        assert!(z.is_zero());
        assert_eq!(z.term_count(), 0);
        assert_eq!(z.to_string(), "0");
    }

    #[test]
    fn evaluate_requires_complete_assignment() {
        let p = ParamPoly::parse(1, "a1 + s").unwrap();
        let mut vals = ParamAssignment::new();
        vals.set(Indeterminate::A(0), r(1, 1));
        assert!(matches!(
            p.evaluate(&vals),
            Err(OpAlgError::PartialAssignment(_))
        ));
        vals.set(Indeterminate::S, r(2, 1));
        assert_eq!(p.evaluate(&vals).unwrap(), r(3, 1));
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(ParamPoly::parse(1, "a2").is_err());
        assert!(ParamPoly::parse(1, "x").is_err());
        assert!(ParamPoly::parse(1, "").is_err());
        assert!(ParamPoly::parse(1, "a1 +").is_err());
    }

    #[test]
    fn display_parse_roundtrip() {
        let p = ParamPoly::parse(3, "-1/2*a1^2*s + 3*a2*a3 - s^2 + 5/3").unwrap();
        let text = p.to_string();
        assert_eq!(ParamPoly::parse(3, &text).unwrap(), p);
        assert_eq!(text, ParamPoly::parse(3, &text).unwrap().to_string());
    }
}
