//! Closed forms: Lemma-level sums, the line-crossing polynomials `G` and the
//! pair-crossing polynomials `f_k` and `H`.
//!
//! Everything is generic over the coefficient ring. Sums over `n >= 0` stop
//! as soon as one of the two Gaussian binomials is structurally zero.

use serde::{Deserialize, Serialize};

use crate::arrays::Bracket;
use crate::paths::Point;
use crate::qpoly::{qbinom, Coeff, Laurent, TqPoly};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FormulaError {
    #[error("start points violate x1 + y1 = x2 + y2")]
    Condition13Violated,
    #[error("endpoint configuration matches no case of the pair theorem")]
    UnsupportedConfiguration,
    #[error("result carries a negative power of q")]
    NegativeExponent,
}

/// `G^{>=r, ell}_{a,b}`: paths with `a` U steps and `b` D steps crossing
/// `y = ell` at least `r` times.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LineQuery {
    pub a: u32,
    pub b: u32,
    pub ell: i64,
    pub r: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LineCase {
    I,
    II,
    III,
    IV,
    V,
    VI,
    VII,
    VIII,
    IX,
}

impl LineCase {
    /// Case by the signs of `ell` and `ell - (a - b)`.
    pub fn classify(a: u32, b: u32, ell: i64) -> Self {
        use std::cmp::Ordering::*;
        let diff = a as i64 - b as i64;
        match (ell.cmp(&0), ell.cmp(&diff)) {
            (Greater, Less) => LineCase::I,
            (Less, Greater) => LineCase::II,
            (Less, Less) => LineCase::III,
            (Greater, Greater) => LineCase::IV,
            (Equal, Less) => LineCase::V,
            (Equal, Greater) => LineCase::VI,
            (Greater, Equal) => LineCase::VII,
            (Less, Equal) => LineCase::VIII,
            (Equal, Equal) => LineCase::IX,
        }
    }
}

/// `H^{>=r}` for `P: a1 -> bp` and `Q: a2 -> bq`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PairQuery {
    pub a1: Point,
    pub a2: Point,
    pub bp: Point,
    pub bq: Point,
    pub r: u32,
}

/// How a [`PairQuery`] is evaluated. The points are relabelled so that the
/// first start point precedes (or equals) the second.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PairCase {
    /// Distinct endpoints, the path from the earlier start ends at the later end.
    Switched { a1: Point, a2: Point, b1: Point, b2: Point },
    /// Distinct endpoints, the path from the earlier start ends at the earlier end.
    Same { a1: Point, a2: Point, b1: Point, b2: Point },
    CommonStart { a: Point, b1: Point, b2: Point },
    CommonEnd { a1: Point, a2: Point, b: Point },
    AllEqual { a: Point, b: Point },
}

impl PairCase {
    pub fn classify(q: &PairQuery) -> Result<Self, FormulaError> {
        if q.a1.x + q.a1.y != q.a2.x + q.a2.y {
            return Err(FormulaError::Condition13Violated);
        }
        // Crossings are symmetric in P and Q, so order by start point.
        let (a1, a2, bp, bq) = if q.a2.precedes(q.a1) {
            (q.a2, q.a1, q.bq, q.bp)
        } else {
            (q.a1, q.a2, q.bp, q.bq)
        };
        let ordered = |b1: Point, b2: Point| {
            if b1.precedes(b2) {
                Some((b1, b2))
            } else if b2.precedes(b1) {
                Some((b2, b1))
            } else {
                None
            }
        };
        match (a1 == a2, bp == bq) {
            (true, true) => Ok(PairCase::AllEqual { a: a1, b: bp }),
            (true, false) => ordered(bp, bq)
                .map(|(b1, b2)| PairCase::CommonStart { a: a1, b1, b2 })
                .ok_or(FormulaError::UnsupportedConfiguration),
            (false, true) => Ok(PairCase::CommonEnd { a1, a2, b: bp }),
            (false, false) => {
                if bq.precedes(bp) {
                    Ok(PairCase::Switched { a1, a2, b1: bq, b2: bp })
                } else if bp.precedes(bq) {
                    Ok(PairCase::Same { a1, a2, b1: bp, b2: bq })
                } else {
                    Err(FormulaError::UnsupportedConfiguration)
                }
            }
        }
    }
}

/// Which kind of interval a strictly increasing sequence lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Interval {
    /// `(lo, hi]`
    OpenClosed,
    /// `[lo, hi)`
    ClosedOpen,
    /// `(lo, hi)`
    Open,
    /// `[lo, hi]`
    Closed,
}

impl Interval {
    /// Smallest and largest admissible entry.
    pub fn range(self, lo: i64, hi: i64) -> (i64, i64) {
        match self {
            Interval::OpenClosed => (lo + 1, hi),
            Interval::ClosedOpen => (lo, hi - 1),
            Interval::Open => (lo + 1, hi - 1),
            Interval::Closed => (lo, hi),
        }
    }
}

/// `sum_n t^n q^{exp(n)} [top1, n + off1]_q [top2, n + off2]_q`.
fn series<C: Coeff>(
    top1: i64,
    off1: i64,
    top2: i64,
    off2: i64,
    exp: impl Fn(i64) -> i64,
) -> TqPoly<C> {
    let mut out = TqPoly::zero();
    let lo = 0.max(-off1).max(-off2);
    let hi = (top1 - off1).min(top2 - off2);
    for n in lo..=hi {
        let term = &qbinom::<C>(top1, n + off1) * &qbinom::<C>(top2, n + off2);
        if term.is_zero() {
            continue;
        }
        let e = exp(n);
        assert!(e >= 0, "negative q exponent {e} in a nonzero term");
        out = &out + &term.shift(n as u32, e as u32);
    }
    out
}

/// `sum_n t^n q^{n^2} [a, n]_q [b, n]_q`, the joint distribution of
/// descents and major index over all paths with `a` U and `b` D steps.
pub fn lemma_qbin2<C: Coeff>(a: u32, b: u32) -> TqPoly<C> {
    series(a as i64, 0, b as i64, 0, |n| n * n)
}

/// Closed form of `sum q^{sum c}` over `j`-element strictly increasing
/// sequences in the interval.
pub fn lemma_sum_closed<C: Coeff>(kind: Interval, lo: i64, hi: i64, j: u32) -> Laurent<C> {
    let j = j as i64;
    let tri = j * (j + 1) / 2;
    let (shift, top) = match kind {
        Interval::OpenClosed => (tri + j * lo, hi - lo),
        Interval::ClosedOpen => (tri + j * (lo - 1), hi - lo),
        Interval::Open => (tri + j * lo, hi - lo - 1),
        Interval::Closed => (tri + j * (lo - 1), hi - lo + 1),
    };
    Laurent::shifted(shift, qbinom(top, j))
}

/// Closed form of `sum q^{sum c + sum d - n(x+y)}` over arrays with
/// `n + k` top entries and `n - k` bottom entries. Zero when `|k| > n`.
pub fn lemma_sum_array<C: Coeff>(
    bracket: Bracket,
    (x, y, u, v): (i64, i64, i64, i64),
    n: u32,
    k: i64,
) -> Laurent<C> {
    let n = n as i64;
    if k.abs() > n {
        return Laurent::zero();
    }
    let (top, bottom) = match bracket {
        Bracket::XuYv => (u - x, v - y),
        Bracket::XvYu => (v - x - 1, u - y + 1),
    };
    let body = &qbinom::<C>(top, n + k) * &qbinom::<C>(bottom, n - k);
    Laurent::shifted(n * n + k * (k + x - y + 1), body)
}

fn case_ix<C: Coeff>(a: i64, r: u32) -> TqPoly<C> {
    if a == 0 {
        return if r == 0 { TqPoly::one() } else { TqPoly::zero() };
    }
    let m = (r / 2) as i64;
    if r.is_multiple_of(2) {
        let starts_n = series(a, -m, a - 1, m, |n| n * n + n + m * m);
        let starts_e = series(a, m, a - 1, -m - 1, |n| n * n + m * (m + 1));
        &starts_n + &starts_e
    } else {
        let starts_n = series(a - 1, -m - 1, a, m + 1, |n| n * n + n + (m + 1) * (m + 1));
        let starts_e = series(a - 1, m, a, -m - 1, |n| n * n + m * (m + 1));
        &starts_n + &starts_e
    }
}

/// The displayed form of the `ell = 0 = a - b` case, with the factor
/// `(1 - q^{a-2m})` or `(1 - q^{a+2m+2})` over `1 - q^a`, evaluated by
/// exact division. Needs `a >= 1`.
pub fn case_ix_rational<C: Coeff>(a: u32, r: u32) -> Result<TqPoly<C>, crate::PolyError> {
    let (a_i, m) = (a as i64, (r / 2) as i64);
    let (body, num_exp) = if r.is_multiple_of(2) {
        (series::<C>(a_i, m, a_i, -m, |n| n * n + m * (m + 1)), a_i - 2 * m)
    } else {
        (series::<C>(a_i, m + 1, a_i, -m - 1, |n| n * n + m * (m + 1)), a_i + 2 * m + 2)
    };
    let numer = if num_exp > 0 { &body - &body.shift(0, num_exp as u32) } else { TqPoly::zero() };
    numer.exact_div_one_minus_q_pow(a)
}

/// `G^{>=r, ell}_{a,b}(t, q)`.
pub fn g_poly<C: Coeff>(q: &LineQuery) -> TqPoly<C> {
    let (a, b, l) = (q.a as i64, q.b as i64, q.ell);
    let r = q.r;
    let even = r.is_multiple_of(2);
    match LineCase::classify(q.a, q.b, l) {
        LineCase::I => {
            let m = (r / 2) as i64;
            series(a, -m, b, m, |n| n * n + m * (m + l + 1))
        }
        LineCase::II => {
            let m = (r / 2) as i64;
            series(a, m, b, -m, |n| n * n + m * (m - l - 1))
        }
        LineCase::III => {
            if r == 0 {
                return lemma_qbin2(q.a, q.b);
            }
            let m = ((r - 1) / 2) as i64;
            series(a - l - 1, -m - 1, b + l + 1, m + 1, |n| n * n + (m + 1) * (m - l))
        }
        LineCase::IV => {
            if r == 0 {
                return lemma_qbin2(q.a, q.b);
            }
            let m = ((r - 1) / 2) as i64;
            series(a - l - 1, m, b + l + 1, -m, |n| n * n + m * (m + l + 1))
        }
        LineCase::V => {
            let m = (r / 2) as i64;
            if even {
                series(a, -m, b, m, |n| n * n + m * (m + 1))
            } else {
                series(a - 1, -m - 1, b + 1, m + 1, |n| n * n + m * (m + 1))
            }
        }
        LineCase::VI => {
            let m = (r / 2) as i64;
            if even {
                series(a, m, b, -m, |n| n * n + m * (m - 1))
            } else {
                series(a - 1, m, b + 1, -m, |n| n * n + m * (m + 1))
            }
        }
        LineCase::VII => {
            let m = (r / 2) as i64;
            if even {
                series(a, -m, b, m, |n| n * n + m * (m + l + 1))
            } else {
                series(a + 1, -m, b - 1, m, |n| n * n + m * (m + l + 1))
            }
        }
        LineCase::VIII => {
            let m = (r / 2) as i64;
            if even {
                series(a, m, b, -m, |n| n * n + m * (m - l - 1))
            } else {
                series(a + 1, m + 1, b - 1, -m - 1, |n| n * n + (m + 1) * (m - l))
            }
        }
        LineCase::IX => {
            let out = case_ix(a, r);
            #[cfg(debug_assertions)]
            if q.a >= 1 {
                debug_assert_eq!(case_ix_rational::<C>(q.a, r).as_ref(), Ok(&out));
            }
            out
        }
    }
}

/// `f_{k, A1, A2, B, B'}` as a Laurent polynomial in `q`: the first factor
/// runs from `a1` to `b_first`, the second from `a2` to `b_second`.
pub fn f_laurent<C: Coeff>(k: i64, a1: Point, a2: Point, b_first: Point, b_second: Point) -> Laurent<C> {
    let first = series::<C>(b_first.x - a1.x, 0, b_first.y - a1.y, k, |n| n * (n + k));
    if first.is_zero() {
        return Laurent::zero();
    }
    let second = series::<C>(b_second.x - a2.x, 0, b_second.y - a2.y, -k, |n| n * (n - k));
    Laurent::shifted(k * (k + a2.x - a1.x), &first * &second)
}

/// [`f_laurent`] as an ordinary polynomial.
pub fn f_poly<C: Coeff>(
    k: i64,
    a1: Point,
    a2: Point,
    b_first: Point,
    b_second: Point,
) -> Result<TqPoly<C>, FormulaError> {
    f_laurent(k, a1, a2, b_first, b_second).to_poly().ok_or(FormulaError::NegativeExponent)
}

fn f_nonneg<C: Coeff>(k: i64, a1: Point, a2: Point, bf: Point, bs: Point) -> TqPoly<C> {
    f_poly(k, a1, a2, bf, bs).expect("k >= 0 with ordered starts keeps q exponents nonnegative")
}

/// `H^{>=r}(t, q)` for the pair query.
pub fn h_poly<C: Coeff>(q: &PairQuery) -> Result<TqPoly<C>, FormulaError> {
    let r = q.r as i64;
    Ok(match PairCase::classify(q)? {
        PairCase::Switched { a1, a2, b1, b2 } => f_nonneg(2 * (r / 2), a1, a2, b2, b1),
        PairCase::Same { a1, a2, b1, b2 } => {
            if r == 0 {
                f_nonneg(0, a1, a2, b1, b2)
            } else {
                f_nonneg(2 * ((r - 1) / 2) + 1, a1, a2, b2, b1)
            }
        }
        PairCase::CommonStart { a, b1, b2 } => f_nonneg(r, a, a, b2, b1),
        PairCase::CommonEnd { a1, a2, b } => f_nonneg(r, a1, a2, b, b),
        PairCase::AllEqual { a, b } => {
            if r == 0 {
                f_nonneg(0, a, a, b, b)
            } else {
                let mut acc = TqPoly::zero();
                let mut j = 1;
                while r + j <= b.y - a.y {
                    let term = f_nonneg::<C>(r + j, a, a, b, b);
                    acc = if j % 2 == 1 { &acc + &term } else { &acc - &term };
                    j += 1;
                }
                &acc + &acc
            }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::QTPoly;
    use num_bigint::BigInt;

    fn p(s: &str) -> QTPoly {
        s.parse().unwrap()
    }

    fn g(a: u32, b: u32, ell: i64, r: u32) -> QTPoly {
        g_poly(&LineQuery { a, b, ell, r })
    }

    #[test]
    fn qbin2_examples() {
        assert_eq!(lemma_qbin2::<BigInt>(0, 0), QTPoly::one());
        assert_eq!(lemma_qbin2::<BigInt>(1, 1), p("1 + t*q"));
        let total: BigInt = lemma_qbin2::<BigInt>(8, 6).eval(&BigInt::from(1), &BigInt::from(1));
        assert_eq!(total, BigInt::from(3003));
    }

    #[test]
    fn classify_cases() {
        assert_eq!(LineCase::classify(8, 6, 1), LineCase::I);
        assert_eq!(LineCase::classify(2, 5, -1), LineCase::II);
        assert_eq!(LineCase::classify(2, 5, -4), LineCase::III);
        assert_eq!(LineCase::classify(5, 2, 4), LineCase::IV);
        assert_eq!(LineCase::classify(3, 1, 0), LineCase::V);
        assert_eq!(LineCase::classify(1, 3, 0), LineCase::VI);
        assert_eq!(LineCase::classify(3, 1, 2), LineCase::VII);
        assert_eq!(LineCase::classify(1, 3, -2), LineCase::VIII);
        assert_eq!(LineCase::classify(2, 2, 0), LineCase::IX);
    }

    #[test]
    fn line_examples() {
        // Fig. 1's path DUDUUUDUDDUUUD has des 4, maj 21 and 3 crossings of y = 1
        let fig1 = g(8, 6, 1, 3);
        assert!(fig1.coeff(4, 21) >= BigInt::from(1));
        for a in 0..=8 {
            for b in 0..=8 {
                for ell in -(b as i64) - 2..=a as i64 + 2 {
                    assert_eq!(g(a, b, ell, 0), lemma_qbin2(a, b), "{a} {b} {ell}");
                }
            }
        }
        assert_eq!(g(0, 0, 0, 0), QTPoly::one());
        assert_eq!(g(0, 0, 0, 1), QTPoly::zero());
        assert_eq!(g(1, 1, 0, 1), QTPoly::zero());
        // UUDD, DDUU, UDDU, DUUD with ell = 1 ... only UUDD reaches y = 1 twice
        assert_eq!(g(2, 2, 1, 1), p("1"));
    }

    #[test]
    fn case_ix_forms_agree() {
        for a in 1..=9u32 {
            for r in 0..=2 * a + 2 {
                assert_eq!(case_ix_rational::<BigInt>(a, r), Ok(case_ix::<BigInt>(a as i64, r)));
            }
        }
    }

    #[test]
    fn lemma_sums() {
        let s: crate::LaurentQT = lemma_sum_closed(Interval::OpenClosed, 0, 2, 1);
        assert_eq!(s.to_poly(), Some(p("q + q^2")));
        for kind in [Interval::OpenClosed, Interval::ClosedOpen, Interval::Open, Interval::Closed] {
            let one: crate::LaurentQT = lemma_sum_closed(kind, -3, 4, 0);
            assert_eq!(one.to_poly(), Some(QTPoly::one()));
        }
        let neg: crate::LaurentQT = lemma_sum_closed(Interval::ClosedOpen, -2, 0, 2);
        assert_eq!(neg.to_string(), "q^-3");
        let z: crate::LaurentQT = lemma_sum_array(Bracket::XuYv, (1, 0, 7, 8), 1, 2);
        assert!(z.is_zero());
    }

    #[test]
    fn f_examples() {
        let o = Point::new(0, 0);
        let b = Point::new(1, 1);
        assert_eq!(f_poly::<BigInt>(0, o, o, b, b), Ok(p("1 + t*q") * p("1 + t*q")));
        assert_eq!(f_poly::<BigInt>(3, o, o, b, b), Ok(QTPoly::zero()));
        let a2 = Point::new(2, 0);
        let neg = f_laurent::<BigInt>(-1, o, a2, Point::new(3, 3), Point::new(3, 3));
        assert!(neg.to_poly().is_none());
        assert_eq!(
            f_poly::<BigInt>(-1, o, a2, Point::new(3, 3), Point::new(3, 3)),
            Err(FormulaError::NegativeExponent)
        );
    }

    #[test]
    fn pair_dispatch() {
        let a1 = Point::new(0, 2);
        let a2 = Point::new(2, 0);
        let b1 = Point::new(8, 8);
        let b2 = Point::new(10, 7);
        let q = PairQuery { a1, a2, bp: b2, bq: b1, r: 3 };
        assert_eq!(PairCase::classify(&q), Ok(PairCase::Switched { a1, a2, b1, b2 }));
        let swapped = PairQuery { a1: a2, a2: a1, bp: b1, bq: b2, r: 3 };
        assert_eq!(PairCase::classify(&swapped), PairCase::classify(&q));
        // Fig. 4: 3 crossings, total des 6, total maj 45
        let h: QTPoly = h_poly(&q).unwrap();
        assert!(h.coeff(6, 45) >= BigInt::from(1));
        let bad = PairQuery { a1, a2: Point::new(2, 1), bp: b1, bq: b2, r: 0 };
        assert_eq!(h_poly::<BigInt>(&bad), Err(FormulaError::Condition13Violated));
        let flat = PairQuery { a1, a2: a1, bp: Point::new(3, 3), bq: Point::new(4, 4), r: 0 };
        assert_eq!(h_poly::<BigInt>(&flat), Err(FormulaError::UnsupportedConfiguration));
        let dot = PairQuery { a1, a2: a1, bp: a1, bq: a1, r: 0 };
        assert_eq!(h_poly::<BigInt>(&dot), Ok(QTPoly::one()));
        assert_eq!(h_poly::<BigInt>(&PairQuery { r: 1, ..dot }), Ok(QTPoly::zero()));
    }

    #[test]
    fn other_rings() {
        let small: TqPoly<i64> = g_poly(&LineQuery { a: 6, b: 4, ell: 1, r: 2 });
        let big: QTPoly = g(6, 4, 1, 2);
        assert_eq!(small.map_coeffs(|c| BigInt::from(*c)), big);
    }
}
