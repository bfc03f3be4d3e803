//! Normal-ordered differential operators `Σ c · x^e ∂^d` with Laurent
//! coordinate exponents and coefficients in ℚ[a_1..a_N, s].

use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt::{self, Write as _};
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::poly::{ParamAssignment, ParamPoly};
use super::{OpAlgError, Rational};

/// `x_1^{e_1}..x_N^{e_N} ∂_1^{d_1}..∂_N^{d_N}`, coordinates left of derivatives.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OpMonomial {
    coord_exp: Vec<i32>,
    deriv_ord: Vec<u32>,
}

impl OpMonomial {
    pub fn new(coord_exp: Vec<i32>, deriv_ord: Vec<u32>) -> Self {
        assert_eq!(coord_exp.len(), deriv_ord.len(), "monomial vector lengths");
        OpMonomial {
            coord_exp,
            deriv_ord,
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::new(vec![0; n], vec![0; n])
    }

    pub fn coord_exp(&self) -> &[i32] {
        &self.coord_exp
    }

    pub fn deriv_ord(&self) -> &[u32] {
        &self.deriv_ord
    }

    pub fn deriv_order(&self) -> u32 {
        self.deriv_ord.iter().sum()
    }

    fn coord_degree(&self) -> i64 {
        self.coord_exp.iter().map(|&e| e as i64).sum()
    }
}

// Graded on derivative order, then coordinate degree, then lexicographic.
impl Ord for OpMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.deriv_order()
            .cmp(&other.deriv_order())
            .then_with(|| self.coord_degree().cmp(&other.coord_degree()))
            .then_with(|| self.coord_exp.cmp(&other.coord_exp))
            .then_with(|| self.deriv_ord.cmp(&other.deriv_ord))
    }
}

impl PartialOrd for OpMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct Operator {
    n: usize,
    terms: BTreeMap<OpMonomial, ParamPoly>,
}

impl Operator {
    pub fn zero(n: usize) -> Self {
        Operator {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(ParamPoly::one(n))
    }

    /// `c · 1`.
    pub fn scalar(c: ParamPoly) -> Self {
        let n = c.dimension();
        Self::monomial(c, OpMonomial::identity(n))
    }

    pub fn constant(n: usize, c: Rational) -> Self {
        Self::scalar(ParamPoly::constant(n, c))
    }

    pub fn monomial(c: ParamPoly, m: OpMonomial) -> Self {
        let n = c.dimension();
        assert_eq!(m.coord_exp.len(), n, "monomial dimension");
        let mut op = Operator::zero(n);
        op.add_term(m, c);
        op
    }

    /// `x_i^e` (zero-based `i`).
    pub fn x_pow(n: usize, i: usize, e: i32) -> Self {
        let mut m = OpMonomial::identity(n);
        m.coord_exp[i] = e;
        Self::monomial(ParamPoly::one(n), m)
    }

    pub fn x(n: usize, i: usize) -> Self {
        Self::x_pow(n, i, 1)
    }

    /// `∂_i^d`.
    pub fn d_pow(n: usize, i: usize, d: u32) -> Self {
        let mut m = OpMonomial::identity(n);
        m.deriv_ord[i] = d;
        Self::monomial(ParamPoly::one(n), m)
    }

    pub fn d(n: usize, i: usize) -> Self {
        Self::d_pow(n, i, 1)
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

    pub fn terms(&self) -> impl Iterator<Item = (&OpMonomial, &ParamPoly)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &OpMonomial) -> Option<&ParamPoly> {
        self.terms.get(m)
    }

    /// Highest total derivative order among the terms (0 for the zero operator).
    pub fn deriv_order(&self) -> u32 {
        self.terms
            .keys()
            .map(OpMonomial::deriv_order)
            .max()
            .unwrap_or(0)
    }

    fn add_term(&mut self, m: OpMonomial, c: ParamPoly) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get().add(&c);
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn scale(&self, r: &Rational) -> Operator {
        if r.is_zero() {
            return Operator::zero(self.n);
        }
        Operator {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c.scale(r)))
                .collect(),
        }
    }

    pub fn scale_int(&self, k: i64) -> Operator {
        self.scale(&Rational::from_integer(BigInt::from(k)))
    }

    /// Multiplies every coefficient by the parameter polynomial `p`.
    pub fn scale_poly(&self, p: &ParamPoly) -> Operator {
        let mut out = Operator::zero(self.n);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c.mul(p));
        }
        out
    }

    /// Normal-ordered product `self · rhs`.
    pub fn mul_op(&self, rhs: &Operator) -> Operator {
        assert_eq!(self.n, rhs.n, "operator dimension mismatch");
        let n = self.n;
        let mut acc: HashMap<OpMonomial, ParamPoly> = HashMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                let c = c1.mul(c2);
                for (m, k) in reorder(m1, m2) {
                    let factor = Rational::from_integer(k);
                    match acc.entry(m) {
                        std::collections::hash_map::Entry::Vacant(v) => {
                            v.insert(c.scale(&factor));
                        }
                        std::collections::hash_map::Entry::Occupied(mut o) => {
                            o.get_mut().add_scaled(&c, &factor);
                        }
                    }
                }
            }
        }
        let terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Operator { n, terms }
    }

    pub fn pow(&self, k: u32) -> Operator {
        (0..k).fold(Operator::identity(self.n), |acc, _| acc.mul_op(self))
    }

    /// `[A, B] = AB − BA`.
    pub fn commutator(&self, rhs: &Operator) -> Operator {
        self.mul_op(rhs) - rhs.mul_op(self)
    }

    /// `{A, B} = AB + BA`.
    pub fn anticommutator(&self, rhs: &Operator) -> Operator {
        self.mul_op(rhs) + rhs.mul_op(self)
    }

    /// Substitutes every indeterminate; the result has constant coefficients.
    pub fn substitute_params(&self, values: &ParamAssignment) -> Result<Operator, OpAlgError> {
        let mut out = Operator::zero(self.n);
        for (m, c) in &self.terms {
            let v = c.evaluate(values)?;
            out.add_term(m.clone(), ParamPoly::constant(self.n, v));
        }
        if self.terms.is_empty() {
            // still validate the assignment so partial maps are always rejected
            ParamPoly::zero(self.n).evaluate(values)?;
        }
        Ok(out)
    }

    /// Canonical text: one `coeff | x-exponents | d-orders` line per term.
    pub fn to_canonical_string(&self) -> String {
        let mut out = String::new();
        for (m, c) in self.terms.iter().rev() {
            let xs: Vec<String> = m.coord_exp.iter().map(i32::to_string).collect();
            let ds: Vec<String> = m.deriv_ord.iter().map(u32::to_string).collect();
            let _ = writeln!(out, "{} | {} | {}", c, xs.join(" "), ds.join(" "));
        }
        out
    }

    /// Inverse of [`Operator::to_canonical_string`]; blank lines and `#` comments are skipped.
    pub fn parse(n: usize, text: &str) -> Result<Operator, OpAlgError> {
        let mut op = Operator::zero(n);
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let bad = |msg: &str| OpAlgError::Parse(format!("line {}: {msg}", lineno + 1));
            let fields: Vec<&str> = line.split('|').map(str::trim).collect();
            if fields.len() != 3 {
                return Err(bad("expected `coeff | x-exponents | d-orders`"));
            }
            let c = ParamPoly::parse(n, fields[0])?;
            let xs = fields[1]
                .split_whitespace()
                .map(str::parse::<i32>)
                .collect::<Result<Vec<_>, _>>()
                .map_err(|_| bad("bad coordinate exponent"))?;
            let ds = fields[2]
                .split_whitespace()
                .map(str::parse::<u32>)
                .collect::<Result<Vec<_>, _>>()
                .map_err(|_| bad("bad derivative order"))?;
            if xs.len() != n || ds.len() != n {
                return Err(OpAlgError::DimensionMismatch {
                    expected: n,
                    found: xs.len().max(ds.len()),
                });
            }
            op.add_term(OpMonomial::new(xs, ds), c);
        }
        Ok(op)
    }
}

fn falling(e: i64, k: u32) -> BigInt {
    (0..k as i64).fold(BigInt::one(), |acc, j| acc * BigInt::from(e - j))
}

fn binomial(n: u32, k: u32) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, j| {
        acc * BigInt::from(n - j) / BigInt::from(j + 1)
    })
}

/// Expands `(x^e1 ∂^d1)(x^e2 ∂^d2)` into normal-ordered monomials with integer weights,
/// coordinate by coordinate, using `∂^d x^e = Σ_k C(d,k) e(e−1)…(e−k+1) x^{e−k} ∂^{d−k}`.
fn reorder(m1: &OpMonomial, m2: &OpMonomial) -> Vec<(OpMonomial, BigInt)> {
    let n = m1.coord_exp.len();
    let mut out: Vec<(OpMonomial, BigInt)> = vec![(
        OpMonomial::new(Vec::with_capacity(n), Vec::with_capacity(n)),
        BigInt::one(),
    )];
    for i in 0..n {
        let d = m1.deriv_ord[i];
        let e = m2.coord_exp[i] as i64;
        let mut options = Vec::with_capacity(d as usize + 1);
        for k in 0..=d {
            let w = binomial(d, k) * falling(e, k);
            if w.is_zero() {
                continue;
            }
            let x = m1.coord_exp[i] + m2.coord_exp[i] - k as i32;
            let dd = d - k + m2.deriv_ord[i];
            options.push((x, dd, w));
        }
        let mut next = Vec::with_capacity(out.len() * options.len());
        for (m, w) in &out {
            for (x, dd, wk) in &options {
                let mut mm = m.clone();
                mm.coord_exp.push(*x);
                mm.deriv_ord.push(*dd);
                next.push((mm, w * wk));
            }
        }
        out = next;
    }
    out
}

impl Add for &Operator {
    type Output = Operator;
    fn add(self, rhs: &Operator) -> Operator {
        assert_eq!(self.n, rhs.n, "operator dimension mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Operator {
    type Output = Operator;
    fn sub(self, rhs: &Operator) -> Operator {
        assert_eq!(self.n, rhs.n, "operator dimension mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.neg());
        }
        out
    }
}

impl Mul for &Operator {
    type Output = Operator;
    fn mul(self, rhs: &Operator) -> Operator {
        self.mul_op(rhs)
    }
}

impl Neg for &Operator {
    type Output = Operator;
    fn neg(self) -> Operator {
        Operator {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c.neg()))
                .collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for Operator {
            type Output = Operator;
            fn $method(self, rhs: Operator) -> Operator {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Operator> for Operator {
            type Output = Operator;
            fn $method(self, rhs: &Operator) -> Operator {
                (&self).$method(rhs)
            }
        }
        impl $tr<Operator> for &Operator {
            type Output = Operator;
            fn $method(self, rhs: Operator) -> Operator {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Operator {
    type Output = Operator;
    fn neg(self) -> Operator {
        -&self
    }
}

impl fmt::Display for Operator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            if idx > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({c})")?;
            for (i, &e) in m.coord_exp.iter().enumerate() {
                match e {
                    0 => {}
                    1 => write!(f, "·x{}", i + 1)?,
                    _ => write!(f, "·x{}^{}", i + 1, e)?,
                }
            }
            for (i, &d) in m.deriv_ord.iter().enumerate() {
                match d {
                    0 => {}
                    1 => write!(f, "·∂{}", i + 1)?,
                    _ => write!(f, "·∂{}^{}", i + 1, d)?,
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Operator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Operator[N={}]({self})", self.n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::opalg::Indeterminate;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn mono(n: usize, c: i64, xs: &[i32], ds: &[u32]) -> Operator {
        Operator::monomial(
            ParamPoly::from_int(n, c),
            OpMonomial::new(xs.to_vec(), ds.to_vec()),
        )
    }

    #[test]
    fn weyl_relation() {
        let n = 1;
        let got = Operator::d(n, 0) * Operator::x(n, 0);
        let want = mono(n, 1, &[1], &[1]) + Operator::identity(n);
        assert_eq!(got, want);
        assert_eq!(
            Operator::d(n, 0).commutator(&Operator::x(n, 0)),
            Operator::identity(n)
        );
    }

    #[test]
    fn second_derivative_through_inverse_square() {
        let n = 1;
        let got = Operator::d_pow(n, 0, 2) * Operator::x_pow(n, 0, -2);
        let want = mono(n, 1, &[-2], &[2]) + mono(n, -4, &[-3], &[1]) + mono(n, 6, &[-4], &[0]);
        assert_eq!(got, want);
    }

    #[test]
    fn mixed_rotation_product() {
        let n = 2;
        let lhs = Operator::x(n, 0) * Operator::d(n, 1);
        let rhs = Operator::x(n, 1) * Operator::d(n, 0);
        let want = mono(n, 1, &[1, 1], &[1, 1]) + mono(n, 1, &[1, 0], &[1, 0]);
        assert_eq!(lhs * rhs, want);
    }

    #[test]
    fn anticommutator_of_x_and_d() {
        let n = 1;
        let got = Operator::x(n, 0).anticommutator(&Operator::d(n, 0));
        let want = mono(n, 2, &[1], &[1]) + Operator::identity(n);
        assert_eq!(got, want);
    }

    #[test]
    fn self_commutator_vanishes() {
        let n = 2;
        let a = Operator::x_pow(n, 0, -2) * Operator::d_pow(n, 1, 2) + Operator::d(n, 0);
        assert!(a.commutator(&a).is_zero());
    }

    #[test]
    fn substitution_of_simple_polynomial() {
        let n = 1;
        let op = Operator::scalar(ParamPoly::a(n, 0).add(&ParamPoly::s(n)));
        let vals = ParamAssignment::from_values(&[r(1, 1)], r(2, 1));
        assert_eq!(
            op.substitute_params(&vals).unwrap(),
            Operator::constant(n, r(3, 1))
        );
    }

    #[test]
    fn substitution_of_zero_and_partial() {
        let n = 2;
        let vals = ParamAssignment::from_values(&[r(1, 1), r(5, 3)], r(7, 2));
        assert!(Operator::zero(n)
            .substitute_params(&vals)
            .unwrap()
            .is_zero());
        let mut partial = ParamAssignment::new();
        partial.set(Indeterminate::A(0), r(1, 1));
        assert!(Operator::zero(n).substitute_params(&partial).is_err());
        assert!(Operator::scalar(ParamPoly::s(n))
            .substitute_params(&partial)
            .is_err());
    }

    #[test]
    fn canonical_text_roundtrip() {
        let n = 2;
        let a = mono(n, 3, &[-2, 1], &[0, 2])
            + Operator::scalar(ParamPoly::parse(n, "1/2*s^2 - a2").unwrap())
            + mono(n, -1, &[0, 0], &[1, 0]);
        let text = a.to_canonical_string();
        let back = Operator::parse(n, &text).unwrap();
        assert_eq!(back, a);
        assert_eq!(back.to_canonical_string(), text);
    }

    #[test]
    fn parse_rejects_wrong_dimension() {
        assert!(Operator::parse(2, "1 | 0 | 0\n").is_err());
        assert!(Operator::parse(1, "1 | 0 0\n").is_err());
    }
}
