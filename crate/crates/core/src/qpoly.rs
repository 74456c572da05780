//! Sparse polynomials in `t` and `q` with exact coefficients, plus Gaussian binomials.
//!
//! The coefficient ring is generic; the crate root fixes it to `BigInt` as
//! [`crate::QTPoly`]. Terms are kept in a `BTreeMap` keyed by `(t_exp, q_exp)`,
//! so iteration order is the canonical serialization order.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_traits::Num;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Exact coefficient ring usable in [`TqPoly`].
pub trait Coeff:
    Num + Clone + Eq + Neg<Output = Self> + fmt::Debug + fmt::Display + Send + Sync
{
}

impl<T> Coeff for T where
    T: Num + Clone + Eq + Neg<Output = T> + fmt::Debug + fmt::Display + Send + Sync
{
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("polynomial is not divisible by 1 - q^{0}")]
    NonDivisible(u32),
    #[error("cannot divide by 1 - q^0")]
    ZeroDivisor,
    #[error("cannot parse polynomial: {0}")]
    Parse(String),
}

/// A polynomial in `t` and `q` with nonnegative exponents.
#[derive(Clone, PartialEq, Eq)]
pub struct TqPoly<C> {
    terms: BTreeMap<(u32, u32), C>,
}

impl<C: Coeff> Default for TqPoly<C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<C: Coeff> TqPoly<C> {
    pub fn zero() -> Self {
        Self { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::monomial(C::one(), 0, 0)
    }

    pub fn monomial(c: C, t: u32, q: u32) -> Self {
        let mut p = Self::zero();
        p.add_term(t, q, c);
        p
    }

    /// `t^i q^j` with coefficient one.
    pub fn tq(t: u32, q: u32) -> Self {
        Self::monomial(C::one(), t, q)
    }

    /// Builds a polynomial from `(t, q, c)` triples, merging repeats.
    pub fn from_terms<I: IntoIterator<Item = (u32, u32, C)>>(it: I) -> Self {
        let mut p = Self::zero();
        for (t, q, c) in it {
            p.add_term(t, q, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, t: u32, q: u32) -> C {
        self.terms.get(&(t, q)).cloned().unwrap_or_else(C::zero)
    }

    /// Terms in ascending `(t, q)` order.
    pub fn terms(&self) -> impl Iterator<Item = (u32, u32, &C)> + '_ {
        self.terms.iter().map(|(&(t, q), c)| (t, q, c))
    }

    pub fn add_term(&mut self, t: u32, q: u32, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry((t, q)) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().clone() + c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    /// Multiplies by `t^dt q^dq`.
    pub fn shift(&self, dt: u32, dq: u32) -> Self {
        Self {
            terms: self.terms.iter().map(|(&(t, q), c)| ((t + dt, q + dq), c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        Self::from_terms(self.terms().map(|(t, q, a)| (t, q, a.clone() * c.clone())))
    }

    pub fn t_degree(&self) -> Option<u32> {
        self.terms.keys().map(|k| k.0).max()
    }

    pub fn q_degree(&self) -> Option<u32> {
        self.terms.keys().map(|k| k.1).max()
    }

    pub fn min_q_exp(&self) -> Option<u32> {
        self.terms.keys().map(|k| k.1).min()
    }

    pub fn eval(&self, t: &C, q: &C) -> C {
        self.eval_with(t, q, C::clone)
    }

    /// Evaluates in another ring `S`, lifting each coefficient with `lift`.
    pub fn eval_with<S, F>(&self, t: &S, q: &S, lift: F) -> S
    where
        S: Num + Clone,
        F: Fn(&C) -> S,
    {
        let mut acc = S::zero();
        for (i, j, c) in self.terms() {
            acc = acc + lift(c) * pow(t, i) * pow(q, j);
        }
        acc
    }

    pub fn map_coeffs<D: Coeff, F: Fn(&C) -> D>(&self, f: F) -> TqPoly<D> {
        TqPoly::from_terms(self.terms().map(|(t, q, c)| (t, q, f(c))))
    }

    /// Sets `q = 1`, leaving a polynomial in `t` alone.
    pub fn at_q_one(&self) -> Self {
        Self::from_terms(self.terms().map(|(t, _, c)| (t, 0, c.clone())))
    }

    /// Sets `t = 1`, leaving a polynomial in `q` alone.
    pub fn at_t_one(&self) -> Self {
        Self::from_terms(self.terms().map(|(_, q, c)| (0, q, c.clone())))
    }

    /// Divides by `1 - q^a`, failing unless the division is exact.
    pub fn exact_div_one_minus_q_pow(&self, a: u32) -> Result<Self, PolyError> {
        if a == 0 {
            return Err(PolyError::ZeroDivisor);
        }
        let mut out = Self::zero();
        for (t, dense) in self.dense_by_t() {
            let deg = dense.len() - 1;
            if deg < a as usize {
                return Err(PolyError::NonDivisible(a));
            }
            let len = deg + 1 - a as usize;
            let mut s: Vec<C> = Vec::with_capacity(len);
            for j in 0..len {
                let mut v = dense[j].clone();
                if j >= a as usize {
                    v = v + s[j - a as usize].clone();
                }
                s.push(v);
            }
            for (j, v) in s.into_iter().enumerate() {
                out.add_term(t, j as u32, v);
            }
        }
        let back = &out - &out.shift(0, a);
        if &back != self {
            return Err(PolyError::NonDivisible(a));
        }
        Ok(out)
    }

    fn dense_by_t(&self) -> BTreeMap<u32, Vec<C>> {
        let mut rows: BTreeMap<u32, Vec<C>> = BTreeMap::new();
        for (t, q, c) in self.terms() {
            let row = rows.entry(t).or_default();
            if row.len() <= q as usize {
                row.resize(q as usize + 1, C::zero());
            }
            row[q as usize] = c.clone();
        }
        rows
    }

    pub fn to_latex(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (t, q, c)) in self.terms().enumerate() {
            let (neg, mag) = split_sign(c);
            if idx == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mut parts: Vec<String> = Vec::new();
            if !mag.is_one() || (t == 0 && q == 0) {
                parts.push(mag.to_string());
            }
            if t > 0 {
                parts.push(if t == 1 { "t".into() } else { format!("t^{{{t}}}") });
            }
            if q > 0 {
                parts.push(if q == 1 { "q".into() } else { format!("q^{{{q}}}") });
            }
            out.push_str(&parts.join(" "));
        }
        out
    }
}

impl<C: Coeff + PartialOrd> TqPoly<C> {
    pub fn coeffs_nonnegative(&self) -> bool {
        self.terms.values().all(|c| *c > C::zero())
    }
}

fn pow<S: Num + Clone>(base: &S, e: u32) -> S {
    let mut acc = S::one();
    for _ in 0..e {
        acc = acc * base.clone();
    }
    acc
}

fn split_sign<C: Coeff>(c: &C) -> (bool, C) {
    let s = c.to_string();
    if s.starts_with('-') {
        (true, -c.clone())
    } else {
        (false, c.clone())
    }
}

fn fmt_term<C: Coeff>(t: u32, q: u32, c: &C) -> String {
    let (neg, mag) = split_sign(c);
    let mut parts: Vec<String> = Vec::new();
    if !mag.is_one() || (t == 0 && q == 0) {
        parts.push(mag.to_string());
    }
    if t > 0 {
        parts.push(if t == 1 { "t".into() } else { format!("t^{t}") });
    }
    if q > 0 {
        parts.push(if q == 1 { "q".into() } else { format!("q^{q}") });
    }
    let body = parts.join("*");
    if neg {
        format!("-{body}")
    } else {
        body
    }
}

impl<C: Coeff> fmt::Display for TqPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.terms().map(|(t, q, c)| fmt_term(t, q, c)).collect();
        f.write_str(&parts.join(" + "))
    }
}

impl<C: Coeff> fmt::Debug for TqPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TqPoly({self})")
    }
}

impl<C: Coeff> FromStr for TqPoly<C> {
    type Err = PolyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "0" {
            return Ok(Self::zero());
        }
        let mut p = Self::zero();
        for term in s.split(" + ") {
            let (t, q, c) = parse_term::<C>(term.trim())?;
            p.add_term(t, q, c);
        }
        Ok(p)
    }
}

fn parse_term<C: Coeff>(term: &str) -> Result<(u32, u32, C), PolyError> {
    let bad = || PolyError::Parse(term.to_string());
    let (neg, body) = match term.strip_prefix('-') {
        Some(rest) if !rest.starts_with(|ch: char| ch.is_ascii_digit()) => (true, rest),
        _ => (false, term),
    };
    let mut c = C::one();
    let (mut t, mut q) = (0u32, 0u32);
    for factor in body.split('*') {
        let exp = |f: &str| -> Result<u32, PolyError> {
            match f.split_once('^') {
                None => Ok(1),
                Some((_, e)) => e.parse().map_err(|_| bad()),
            }
        };
        if factor.starts_with('t') {
            t = exp(factor)?;
        } else if factor.starts_with('q') {
            q = exp(factor)?;
        } else {
            c = C::from_str_radix(factor, 10).map_err(|_| bad())?;
        }
    }
    Ok((t, q, if neg { -c } else { c }))
}

impl<'a, C: Coeff> Add<&'a TqPoly<C>> for &'a TqPoly<C> {
    type Output = TqPoly<C>;
    fn add(self, rhs: &'a TqPoly<C>) -> TqPoly<C> {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<C: Coeff> Add for TqPoly<C> {
    type Output = TqPoly<C>;
    fn add(mut self, rhs: TqPoly<C>) -> TqPoly<C> {
        self += &rhs;
        self
    }
}

impl<C: Coeff> AddAssign<&TqPoly<C>> for TqPoly<C> {
    fn add_assign(&mut self, rhs: &TqPoly<C>) {
        for (t, q, c) in rhs.terms() {
            self.add_term(t, q, c.clone());
        }
    }
}

impl<C: Coeff> Neg for TqPoly<C> {
    type Output = TqPoly<C>;
    fn neg(self) -> TqPoly<C> {
        TqPoly { terms: self.terms.into_iter().map(|(k, c)| (k, -c)).collect() }
    }
}

impl<'a, C: Coeff> Sub<&'a TqPoly<C>> for &'a TqPoly<C> {
    type Output = TqPoly<C>;
    fn sub(self, rhs: &'a TqPoly<C>) -> TqPoly<C> {
        let mut out = self.clone();
        for (t, q, c) in rhs.terms() {
            out.add_term(t, q, -c.clone());
        }
        out
    }
}

impl<C: Coeff> Sub for TqPoly<C> {
    type Output = TqPoly<C>;
    fn sub(self, rhs: TqPoly<C>) -> TqPoly<C> {
        &self - &rhs
    }
}

impl<'a, C: Coeff> Mul<&'a TqPoly<C>> for &'a TqPoly<C> {
    type Output = TqPoly<C>;
    fn mul(self, rhs: &'a TqPoly<C>) -> TqPoly<C> {
        let mut out = TqPoly::zero();
        for (t1, q1, a) in self.terms() {
            for (t2, q2, b) in rhs.terms() {
                out.add_term(t1 + t2, q1 + q2, a.clone() * b.clone());
            }
        }
        out
    }
}

impl<C: Coeff> Mul for TqPoly<C> {
    type Output = TqPoly<C>;
    fn mul(self, rhs: TqPoly<C>) -> TqPoly<C> {
        &self * &rhs
    }
}

impl<C: Coeff> std::iter::Sum for TqPoly<C> {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        let mut acc = Self::zero();
        for p in iter {
            acc += &p;
        }
        acc
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    t: u32,
    q: u32,
    c: String,
}

#[derive(Serialize, Deserialize)]
struct PolyJson {
    terms: Vec<TermJson>,
}

impl<C: Coeff> Serialize for TqPoly<C> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        PolyJson {
            terms: self.terms().map(|(t, q, c)| TermJson { t, q, c: c.to_string() }).collect(),
        }
        .serialize(s)
    }
}

impl<'de, C: Coeff> Deserialize<'de> for TqPoly<C> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = PolyJson::deserialize(d)?;
        let mut p = Self::zero();
        for term in raw.terms {
            let c = C::from_str_radix(&term.c, 10)
                .map_err(|_| serde::de::Error::custom(format!("bad coefficient {:?}", term.c)))?;
            p.add_term(term.t, term.q, c);
        }
        Ok(p)
    }
}

/// Gaussian binomial `[m choose n]_q`; zero unless `0 <= n <= m`.
pub fn qbinom<C: Coeff>(m: i64, n: i64) -> TqPoly<C> {
    if n < 0 || n > m {
        return TqPoly::zero();
    }
    let k = n.min(m - n) as usize;
    let top = (m as usize) - k;
    let mut dense: Vec<C> = vec![C::one()];
    for i in 1..=k {
        // multiply by 1 - q^(top + i), then divide by 1 - q^i
        let e = top + i;
        let mut next = vec![C::zero(); dense.len() + e];
        for (j, c) in dense.iter().enumerate() {
            next[j] = next[j].clone() + c.clone();
            next[j + e] = next[j + e].clone() - c.clone();
        }
        let len = next.len() - i;
        let mut quot: Vec<C> = Vec::with_capacity(len);
        for j in 0..len {
            let mut v = next[j].clone();
            if j >= i {
                v = v + quot[j - i].clone();
            }
            quot.push(v);
        }
        dense = quot;
    }
    TqPoly::from_terms(dense.into_iter().enumerate().map(|(j, c)| (0, j as u32, c)))
}

/// A polynomial in `t` and `q` times a possibly negative power of `q`.
///
/// Used where the closed forms carry prefactors such as `q^{k(k+x-y+1)}`
/// that can be negative for arbitrary bounds.
#[derive(Clone, PartialEq, Eq)]
pub struct Laurent<C> {
    shift: i64,
    body: TqPoly<C>,
}

impl<C: Coeff> Laurent<C> {
    pub fn zero() -> Self {
        Self { shift: 0, body: TqPoly::zero() }
    }

    pub fn from_poly(p: TqPoly<C>) -> Self {
        Self::normalized(0, p)
    }

    /// `q^shift * body`.
    pub fn shifted(shift: i64, body: TqPoly<C>) -> Self {
        Self::normalized(shift, body)
    }

    fn normalized(shift: i64, body: TqPoly<C>) -> Self {
        match body.min_q_exp() {
            None => Self::zero(),
            Some(0) => Self { shift, body },
            Some(m) => Self {
                shift: shift + m as i64,
                body: TqPoly::from_terms(body.terms().map(|(t, q, c)| (t, q - m, c.clone()))),
            },
        }
    }

    pub fn is_zero(&self) -> bool {
        self.body.is_zero()
    }

    /// Terms as `(t, q, c)` with signed `q` exponents.
    pub fn terms(&self) -> impl Iterator<Item = (u32, i64, &C)> + '_ {
        self.body.terms().map(move |(t, q, c)| (t, q as i64 + self.shift, c))
    }

    pub fn from_signed_terms<I: IntoIterator<Item = (u32, i64, C)>>(it: I) -> Self {
        let items: Vec<(u32, i64, C)> = it.into_iter().collect();
        let lo = items.iter().map(|x| x.1).min().unwrap_or(0);
        Self::normalized(
            lo,
            TqPoly::from_terms(items.into_iter().map(|(t, q, c)| (t, (q - lo) as u32, c))),
        )
    }

    /// The ordinary polynomial, if no negative `q` power survives.
    pub fn to_poly(&self) -> Option<TqPoly<C>> {
        if self.shift >= 0 {
            Some(self.body.shift(0, self.shift as u32))
        } else {
            None
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let lo = self.shift.min(other.shift);
        let a = self.body.shift(0, (self.shift - lo) as u32);
        let b = other.body.shift(0, (other.shift - lo) as u32);
        Self::normalized(lo, &a + &b)
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::normalized(self.shift + other.shift, &self.body * &other.body)
    }
}

impl<C: Coeff> fmt::Debug for Laurent<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Laurent({self})")
    }
}

impl<C: Coeff> fmt::Display for Laurent<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms()
            .map(|(t, q, c)| {
                let (neg, mag) = split_sign(c);
                let mut ps: Vec<String> = Vec::new();
                if !mag.is_one() || (t == 0 && q == 0) {
                    ps.push(mag.to_string());
                }
                if t > 0 {
                    ps.push(if t == 1 { "t".into() } else { format!("t^{t}") });
                }
                if q != 0 {
                    ps.push(if q == 1 { "q".into() } else { format!("q^{q}") });
                }
                format!("{}{}", if neg { "-" } else { "" }, ps.join("*"))
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use proptest::prelude::*;

    type P = TqPoly<BigInt>;

    fn p(s: &str) -> P {
        s.parse().unwrap()
    }

    #[test]
    fn qbinom_examples() {
        assert_eq!(qbinom::<BigInt>(2, 1), p("1 + q"));
        assert_eq!(qbinom::<BigInt>(5, 0), P::one());
        assert!(qbinom::<BigInt>(1, 2).is_zero());
        assert!(qbinom::<BigInt>(3, -1).is_zero());
        assert!(qbinom::<BigInt>(-2, -1).is_zero());
        assert_eq!(qbinom::<BigInt>(4, 2), p("1 + q + 2*q^2 + q^3 + q^4"));
    }

    #[test]
    fn qbinom_counts_partitions_in_a_box() {
        // [m choose n] counts partitions with at most n parts, each at most m - n
        fn count(parts: usize, max: u32, total: u32) -> u64 {
            fn go(parts: usize, max: u32, total: u32) -> u64 {
                if total == 0 {
                    return 1;
                }
                if parts == 0 {
                    return 0;
                }
                (1..=max.min(total)).map(|first| go(parts - 1, first, total - first)).sum()
            }
            go(parts, max, total)
        }
        for m in 0..=9i64 {
            for n in 0..=m {
                let qb = qbinom::<BigInt>(m, n);
                let top = (n * (m - n)) as u32;
                for e in 0..=top + 1 {
                    let want = count(n as usize, (m - n) as u32, e);
                    assert_eq!(qb.coeff(0, e), BigInt::from(want), "m={m} n={n} e={e}");
                }
            }
        }
    }

    #[test]
    fn qbinom_symmetry_pascal_and_q_one() {
        for m in 0..=12i64 {
            for n in 0..=m {
                let qb = qbinom::<BigInt>(m, n);
                assert_eq!(qb, qbinom::<BigInt>(m, m - n));
                if n >= 1 {
                    let rhs = qbinom::<BigInt>(m - 1, n - 1)
                        + qbinom::<BigInt>(m - 1, n).shift(0, n as u32);
                    assert_eq!(qb, rhs, "pascal m={m} n={n}");
                }
                let mut binom = BigInt::from(1);
                for i in 0..n {
                    binom = binom * BigInt::from(m - i) / BigInt::from(i + 1);
                }
                assert_eq!(qb.eval(&BigInt::from(1), &BigInt::from(1)), binom);
            }
        }
    }

    #[test]
    fn add_and_mul_examples() {
        assert_eq!(p("1 + q") + P::zero(), p("1 + q"));
        assert!((p("q") + p("-q")).is_zero());
        assert_eq!(p("1 + q") + p("1 + q"), p("2 + 2*q"));
        assert_eq!(p("1 + q") * p("1 + q"), p("1 + 2*q + q^2"));
        assert!((p("1 + t*q") * P::zero()).is_zero());
        let qb = qbinom::<BigInt>(2, 1);
        assert_eq!(&qb * &qb, p("1 + 2*q + q^2"));
    }

    #[test]
    fn exact_division() {
        assert_eq!(p("1 + -q^2").exact_div_one_minus_q_pow(1).unwrap(), p("1 + q"));
        assert!(P::zero().exact_div_one_minus_q_pow(3).unwrap().is_zero());
        let num = p("1 + -q^4") * p("1 + t");
        assert_eq!(num.exact_div_one_minus_q_pow(2).unwrap(), p("1 + q^2 + t + t*q^2"));
        assert_eq!(p("1 + q").exact_div_one_minus_q_pow(1), Err(PolyError::NonDivisible(1)));
        assert_eq!(p("1 + -q^3").exact_div_one_minus_q_pow(2), Err(PolyError::NonDivisible(2)));
        assert_eq!(p("1").exact_div_one_minus_q_pow(0), Err(PolyError::ZeroDivisor));
    }

    #[test]
    fn text_form() {
        let x = P::from_terms([
            (0, 0, BigInt::from(1)),
            (1, 2, BigInt::from(1)),
            (2, 3, BigInt::from(2)),
        ]);
        assert_eq!(x.to_string(), "1 + t*q^2 + 2*t^2*q^3");
        assert_eq!(P::zero().to_string(), "0");
        assert_eq!(p("-3*t + -q").to_string(), "-q + -3*t");
        assert_eq!(p("-1").to_string(), "-1");
        assert_eq!(x.to_latex(), "1 + t q^{2} + 2 t^{2} q^{3}");
        assert_eq!(p("-q + 2").to_latex(), "2 - q");
    }

    #[test]
    fn json_form() {
        let x = p("1 + t*q^2 + 2*t^2*q^3");
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(
            s,
            r#"{"terms":[{"t":0,"q":0,"c":"1"},{"t":1,"q":2,"c":"1"},{"t":2,"q":3,"c":"2"}]}"#
        );
        let back: P = serde_json::from_str(&s).unwrap();
        assert_eq!(back, x);
        assert_eq!(serde_json::to_string(&P::zero()).unwrap(), r#"{"terms":[]}"#);
    }

    #[test]
    fn generic_coefficients_agree() {
        let big = qbinom::<BigInt>(10, 4) * qbinom::<BigInt>(7, 3).shift(1, 2);
        let small = qbinom::<i64>(10, 4) * qbinom::<i64>(7, 3).shift(1, 2);
        assert_eq!(big.map_coeffs(|c| i64::try_from(c).unwrap()), small);
        let one = BigInt::from(1);
        let at = big.eval_with(&0.5f64, &0.5f64, |c| i64::try_from(c).unwrap() as f64);
        assert!(at > 0.0);
        assert_eq!(big.eval(&one, &one), BigInt::from(210 * 35));
    }

    #[test]
    fn laurent_normalizes() {
        let a = Laurent::shifted(-3, p("q^2 + t*q^5"));
        assert_eq!(a, Laurent::from_signed_terms([(0, -1, BigInt::from(1)), (1, 2, BigInt::from(1))]));
        assert_eq!(a.to_poly(), None);
        let b = a.mul(&Laurent::shifted(1, P::one()));
        assert_eq!(b.to_poly(), Some(p("1 + t*q^3")));
        assert!(a.add(&Laurent::shifted(-1, -P::one())).add(&Laurent::shifted(2, -p("t"))).is_zero());
        assert_eq!(a.to_string(), "q^-1 + t*q^2");
    }

    fn arb_poly() -> impl Strategy<Value = P> {
        prop::collection::vec((0u32..3, 0u32..5, -4i64..5), 0..6).prop_map(|v| {
            P::from_terms(v.into_iter().map(|(t, q, c)| (t, q, BigInt::from(c))))
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(10_000))]

        #[test]
        fn ring_laws(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a + &P::zero(), a.clone());
            prop_assert_eq!(&a * &P::one(), a.clone());
            prop_assert!((&a - &a).is_zero());
        }

        #[test]
        fn text_and_json_round_trip(a in arb_poly()) {
            prop_assert_eq!(a.to_string().parse::<P>().unwrap(), a.clone());
            let s = serde_json::to_string(&a).unwrap();
            prop_assert_eq!(serde_json::from_str::<P>(&s).unwrap(), a);
        }

        #[test]
        fn division_inverts_multiplication(a in arb_poly(), e in 1u32..5) {
            let num = &a - &a.shift(0, e);
            prop_assert_eq!(num.exact_div_one_minus_q_pow(e).unwrap(), a);
        }
    }
}
