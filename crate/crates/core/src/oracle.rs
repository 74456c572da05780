//! Brute-force enumeration. Paths are generated step by step and every
//! statistic is read off the word directly; nothing here uses a
//! q-binomial or any other closed form.

use std::collections::BTreeMap;
use std::time::Instant;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::formulas::{g_poly, h_poly, LineQuery, PairCase, PairQuery};
use crate::paths::Point;
use crate::QTPoly;

/// Counts indexed by (crossings, des, maj), flattened.
#[derive(Debug, Clone)]
struct Tally {
    dims: (usize, usize, usize),
    counts: Vec<u64>,
}

impl Tally {
    fn new(max_cro: usize, max_des: usize, max_maj: usize) -> Self {
        let dims = (max_cro + 1, max_des + 1, max_maj + 1);
        Tally { dims, counts: vec![0; dims.0 * dims.1 * dims.2] }
    }

    fn bump(&mut self, cro: usize, des: usize, maj: usize) {
        let (_, d, m) = self.dims;
        self.counts[(cro * d + des) * m + maj] += 1;
    }

    fn merge(mut self, other: Tally) -> Tally {
        for (a, b) in self.counts.iter_mut().zip(other.counts) {
            *a += b;
        }
        self
    }

    fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// `r -> sum over objects with at least r crossings`, for `r` up to the
    /// largest crossing count seen (always including `r = 0`).
    fn thresholds(&self) -> BTreeMap<u32, QTPoly> {
        let (c, d, m) = self.dims;
        let mut out = BTreeMap::new();
        let mut acc = vec![0u64; d * m];
        let top = (0..c).rev().find(|&r| self.counts[r * d * m..(r + 1) * d * m].iter().any(|&n| n > 0));
        for r in (0..=top.unwrap_or(0)).rev() {
            for (a, n) in acc.iter_mut().zip(&self.counts[r * d * m..(r + 1) * d * m]) {
                *a += n;
            }
            let terms = acc
                .iter()
                .enumerate()
                .filter(|(_, &n)| n > 0)
                .map(|(idx, &n)| ((idx / m) as u32, (idx % m) as u32, BigInt::from(n)));
            out.insert(r as u32, QTPoly::from_terms(terms));
        }
        out
    }
}

/// Looks up `r` in a threshold map; past the largest key the value is zero.
pub fn at_least(map: &BTreeMap<u32, QTPoly>, r: u32) -> QTPoly {
    map.get(&r).cloned().unwrap_or_else(QTPoly::zero)
}

fn line_walk(
    ups: u32,
    downs: u32,
    ell: i64,
    height: i64,
    pos: usize,
    prev_up: Option<bool>,
    (cro, des, maj): (usize, usize, usize),
    tally: &mut Tally,
) {
    if ups == 0 && downs == 0 {
        tally.bump(cro, des, maj);
        return;
    }
    for up in [true, false] {
        if (up && ups == 0) || (!up && downs == 0) {
            continue;
        }
        let (mut c, mut d, mut m) = (cro, des, maj);
        if let Some(p) = prev_up {
            if p == up && height == ell {
                c += 1;
            }
            if !p && up {
                d += 1;
                m += pos;
            }
        }
        let (nu, nd) = if up { (ups - 1, downs) } else { (ups, downs - 1) };
        let h = if up { height + 1 } else { height - 1 };
        line_walk(nu, nd, ell, h, pos + 1, Some(up), (c, d, m), tally);
    }
}

fn line_tally(a: u32, b: u32, ell: i64) -> Tally {
    let n = (a + b) as usize;
    let fresh = || Tally::new(n.max(1), n / 2 + 1, n * n / 2 + 1);
    // Split on the first few letters of the word so workers own disjoint subtrees.
    let depth = (rayon::current_num_threads().max(1) as f64).log2().ceil() as usize;
    let depth = depth.min(n);
    let mut prefixes: Vec<Vec<bool>> = vec![vec![]];
    for _ in 0..depth {
        prefixes = prefixes
            .into_iter()
            .flat_map(|p| [true, false].into_iter().map(move |s| [p.clone(), vec![s]].concat()))
            .collect();
    }
    prefixes
        .into_par_iter()
        .map(|prefix| {
            let mut t = fresh();
            let ups = prefix.iter().filter(|&&s| s).count() as u32;
            let downs = prefix.len() as u32 - ups;
            if ups > a || downs > b {
                return t;
            }
            let (mut c, mut d, mut m, mut h) = (0, 0, 0, 0i64);
            for (i, w) in prefix.windows(2).enumerate() {
                h += if w[0] { 1 } else { -1 };
                if w[0] == w[1] && h == ell {
                    c += 1;
                }
                if !w[0] && w[1] {
                    d += 1;
                    m += i + 1;
                }
            }
            if let Some(&last) = prefix.last() {
                h += if last { 1 } else { -1 };
            }
            line_walk(a - ups, b - downs, ell, h, prefix.len(), prefix.last().copied(), (c, d, m), &mut t);
            t
        })
        .reduce(fresh, Tally::merge)
}

/// `r -> G^{>=r, ell}_{a,b}` by enumerating all `C(a+b, a)` paths.
pub fn oracle_g(a: u32, b: u32, ell: i64) -> BTreeMap<u32, QTPoly> {
    line_tally(a, b, ell).thresholds()
}

/// A monotone path stored by the x coordinate of each vertex.
#[derive(Debug, Clone)]
struct Walk {
    diag: i64,
    xs: Vec<i64>,
    north: Vec<bool>,
    des: usize,
    maj: usize,
}

fn walks(a: Point, b: Point) -> Vec<Walk> {
    fn go(x: i64, y: i64, b: Point, word: &mut Vec<bool>, out: &mut Vec<Vec<bool>>) {
        if x == b.x && y == b.y {
            out.push(word.clone());
            return;
        }
        if y < b.y {
            word.push(true);
            go(x, y + 1, b, word, out);
            word.pop();
        }
        if x < b.x {
            word.push(false);
            go(x + 1, y, b, word, out);
            word.pop();
        }
    }
    if b.x < a.x || b.y < a.y {
        return Vec::new();
    }
    let mut words = Vec::new();
    go(a.x, a.y, b, &mut vec![], &mut words);
    words
        .into_iter()
        .map(|north| {
            let mut xs = vec![a.x];
            for &s in &north {
                xs.push(xs.last().unwrap() + if s { 0 } else { 1 });
            }
            let valleys: Vec<usize> = (1..north.len()).filter(|&i| !north[i - 1] && north[i]).collect();
            Walk { diag: a.x + a.y, xs, des: valleys.len(), maj: valleys.iter().sum(), north }
        })
        .collect()
}

/// Number of maximal shared runs that both paths enter and leave by the
/// same kind of step, away from their endpoints.
fn cross_count(p: &Walk, q: &Walk) -> usize {
    let (lp, lq) = (p.north.len() as i64, q.north.len() as i64);
    let lo = p.diag.max(q.diag);
    let hi = (p.diag + lp).min(q.diag + lq);
    let mut count = 0;
    let mut run: Option<i64> = None;
    for d in lo..=hi {
        let (i, j) = ((d - p.diag) as usize, (d - q.diag) as usize);
        if p.xs[i] != q.xs[j] {
            run = None;
            continue;
        }
        let first = *run.get_or_insert(d);
        let ends = d == hi || p.xs[i + 1] != q.xs[j + 1];
        if !ends {
            continue;
        }
        run = None;
        let (i1, j1) = ((first - p.diag) as usize, (first - q.diag) as usize);
        if i1 == 0 || j1 == 0 || i as i64 == lp || j as i64 == lq {
            continue;
        }
        if p.north[i1 - 1] == p.north[i] && q.north[j1 - 1] == q.north[j] {
            count += 1;
        }
    }
    count
}

fn pair_tally(a1: Point, a2: Point, bp: Point, bq: Point) -> Tally {
    let ps = walks(a1, bp);
    let qs = walks(a2, bq);
    let len = |a: Point, b: Point| ((b.x - a.x) + (b.y - a.y)).max(0) as usize;
    let (np, nq) = (len(a1, bp), len(a2, bq));
    let fresh = || Tally::new(np.min(nq).max(1), (np + nq) / 2 + 2, (np * np + nq * nq) / 2 + 1);
    ps.par_iter()
        .fold(fresh, |mut t, p| {
            for q in &qs {
                t.bump(cross_count(p, q), p.des + q.des, p.maj + q.maj);
            }
            t
        })
        .reduce(fresh, Tally::merge)
}

/// `r -> H^{>=r}` for `P: a1 -> bp`, `Q: a2 -> bq`, by enumerating all pairs.
pub fn oracle_h(a1: Point, a2: Point, bp: Point, bq: Point) -> BTreeMap<u32, QTPoly> {
    pair_tally(a1, a2, bp, bq).thresholds()
}

/// Crossing count of two paths as seen by the oracle.
pub fn oracle_pair_crossings(p: &crate::LatticePath, q: &crate::LatticePath) -> usize {
    let to_walk = |path: &crate::LatticePath| {
        let mut w = walks(path.start(), path.start()).pop().unwrap();
        for s in path.steps() {
            let north = *s == crate::Step::N;
            w.xs.push(w.xs.last().unwrap() + if north { 0 } else { 1 });
            w.north.push(north);
        }
        w
    };
    cross_count(&to_walk(p), &to_walk(q))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Query {
    Line(LineQuery),
    Pair(PairQuery),
}

fn canonical<S: Serializer>(p: &QTPoly, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&p.to_string())
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepReport {
    pub query: Query,
    #[serde(serialize_with = "canonical")]
    pub formula: QTPoly,
    #[serde(serialize_with = "canonical")]
    pub oracle: QTPoly,
    pub equal: bool,
    /// Paths or pairs the oracle walked for this query's endpoints.
    pub enumerated: u64,
    /// Oracle run for the endpoints plus this formula evaluation.
    pub elapsed_ms: f64,
}

impl SweepReport {
    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("reports always serialize")
    }

    /// Report equality ignoring timing.
    pub fn same_result(&self, other: &SweepReport) -> bool {
        self.query == other.query
            && self.formula == other.formula
            && self.oracle == other.oracle
            && self.equal == other.equal
            && self.enumerated == other.enumerated
    }
}

fn ms(since: Instant) -> f64 {
    since.elapsed().as_secs_f64() * 1e3
}

/// Every `(a, b, ell, r)` with `a <= max_a`, `b <= max_b`,
/// `-(b + ell_margin) <= ell <= a + ell_margin`, `r <= min(a + b, r_cap)`.
pub fn sweep_verify_line(max_a: u32, max_b: u32, ell_margin: u32, r_cap: u32) -> Vec<SweepReport> {
    let m = ell_margin as i64;
    let grid: Vec<(u32, u32, i64)> = (0..=max_a)
        .flat_map(|a| (0..=max_b).map(move |b| (a, b)))
        .flat_map(|(a, b)| (-(b as i64) - m..=a as i64 + m).map(move |ell| (a, b, ell)))
        .collect();
    grid.into_par_iter()
        .flat_map_iter(|(a, b, ell)| {
            let start = Instant::now();
            let tally = line_tally(a, b, ell);
            let oracle = tally.thresholds();
            let base = ms(start);
            let enumerated = tally.total();
            (0..=r_cap.min(a + b))
                .map(|r| {
                    let q = LineQuery { a, b, ell, r };
                    let t = Instant::now();
                    let formula: QTPoly = g_poly(&q);
                    let oracle = at_least(&oracle, r);
                    SweepReport {
                        query: Query::Line(q),
                        equal: formula == oracle,
                        formula,
                        oracle,
                        enumerated,
                        elapsed_ms: base + ms(t),
                    }
                })
                .collect::<Vec<_>>()
        })
        .collect()
}

/// Endpoint configurations in `[0, window]^2` that satisfy the start-point
/// condition and match a case of the pair theorem. Mirror images obtained
/// by exchanging `P` and `Q` are listed once.
pub fn pair_configurations(window: i64) -> Vec<(Point, Point, Point, Point)> {
    let pts: Vec<Point> = (0..=window).flat_map(|x| (0..=window).map(move |y| Point::new(x, y))).collect();
    let mut out = Vec::new();
    for &a1 in &pts {
        for &a2 in &pts {
            if a1.x + a1.y != a2.x + a2.y || a2.precedes(a1) {
                continue;
            }
            for &bp in &pts {
                for &bq in &pts {
                    if a1 == a2 && bq.precedes(bp) {
                        continue;
                    }
                    let q = PairQuery { a1, a2, bp, bq, r: 0 };
                    if PairCase::classify(&q).is_ok() {
                        out.push((a1, a2, bp, bq));
                    }
                }
            }
        }
    }
    out
}

/// Every configuration from [`pair_configurations`] with `r <= r_cap`.
pub fn sweep_verify_pairs(window: i64, r_cap: u32) -> Vec<SweepReport> {
    pair_configurations(window)
        .into_par_iter()
        .flat_map_iter(|(a1, a2, bp, bq)| {
            let start = Instant::now();
            let tally = pair_tally(a1, a2, bp, bq);
            let oracle = tally.thresholds();
            let base = ms(start);
            let enumerated = tally.total();
            (0..=r_cap)
                .map(|r| {
                    let q = PairQuery { a1, a2, bp, bq, r };
                    let t = Instant::now();
                    let formula: QTPoly = h_poly(&q).expect("configuration was classified");
                    let oracle = at_least(&oracle, r);
                    SweepReport {
                        query: Query::Pair(q),
                        equal: formula == oracle,
                        formula,
                        oracle,
                        enumerated,
                        elapsed_ms: base + ms(t),
                    }
                })
                .collect::<Vec<_>>()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formulas::lemma_qbin2;
    use crate::paths::{enumerate_paths, pair_crossing_count, parse_path};

    fn p(s: &str) -> QTPoly {
        s.parse().unwrap()
    }

    #[test]
    fn line_examples() {
        let g = oracle_g(1, 1, 0);
        assert_eq!(at_least(&g, 0), p("1 + t*q"));
        assert_eq!(at_least(&g, 1), QTPoly::zero());
        for ell in -2..=2 {
            assert_eq!(oracle_g(0, 0, ell), BTreeMap::from([(0, QTPoly::one())]));
        }
        let fig1 = oracle_g(8, 6, 1);
        assert!(at_least(&fig1, 3).coeff(4, 21) >= BigInt::from(1));
        assert_eq!(at_least(&fig1, 0), lemma_qbin2(8, 6));
        assert_eq!(line_tally(8, 6, 1).total(), 3003);
    }

    #[test]
    fn line_matches_path_statistics() {
        // every word of length 6 against the path-level statistics
        for mask in 0u32..64 {
            let word: String = (0..6).map(|i| if mask >> i & 1 == 1 { 'U' } else { 'D' }).collect();
            let path = parse_path(&word, Point::new(0, 0)).unwrap();
            let st = path.stats();
            let a = mask.count_ones();
            for ell in -3..=3 {
                let c = path.line_crossings(ell).len();
                let mut t = Tally::new(6, 4, 16);
                line_walk(a, 6 - a, ell, 0, 0, None, (0, 0, 0), &mut t);
                let mut expect = 0;
                for other in 0u32..64 {
                    if other.count_ones() != a {
                        continue;
                    }
                    let w: String = (0..6).map(|i| if other >> i & 1 == 1 { 'U' } else { 'D' }).collect();
                    let o = parse_path(&w, Point::new(0, 0)).unwrap();
                    let os = o.stats();
                    if os.des == st.des && os.maj == st.maj && o.line_crossings(ell).len() == c {
                        expect += 1;
                    }
                }
                let got = t.counts[(c * t.dims.1 + st.des) * t.dims.2 + st.maj];
                assert_eq!(got, expect, "{word} ell={ell}");
            }
        }
    }

    #[test]
    fn pair_crossings_agree_with_paths() {
        let a1 = Point::new(0, 3);
        let a2 = Point::new(2, 1);
        let a3 = Point::new(1, 2);
        for (s, t) in [(a1, a2), (a2, a1), (a1, a1), (a1, a3)] {
            for p in enumerate_paths(s, Point::new(4, 5)) {
                for q in enumerate_paths(t, Point::new(5, 4)) {
                    assert_eq!(oracle_pair_crossings(&p, &q), pair_crossing_count(&p, &q), "{p} {q}");
                }
            }
        }
    }

    #[test]
    fn pair_examples() {
        let p = parse_path("EEENNEEENNNEEEE", Point::new(0, 2)).unwrap();
        let q = parse_path("NNENNNENEEENEN", Point::new(2, 0)).unwrap();
        assert_eq!(oracle_pair_crossings(&p, &q), 3);
        let small = oracle_h(Point::new(0, 0), Point::new(0, 0), Point::new(0, 0), Point::new(0, 0));
        assert_eq!(small, BTreeMap::from([(0, QTPoly::one())]));
        // a single step has no interior vertex
        let flat = oracle_h(Point::new(0, 1), Point::new(1, 0), Point::new(1, 1), Point::new(3, 2));
        assert_eq!(flat.len(), 1);
        assert_eq!(at_least(&flat, 0), lemma_qbin2(2, 2));
    }

    #[test]
    fn small_sweeps_agree() {
        let line = sweep_verify_line(0, 0, 0, 5);
        assert_eq!(line.len(), 1);
        assert!(line[0].equal);
        assert!(sweep_verify_line(4, 4, 2, 8).iter().all(|r| r.equal));
        let bad: Vec<_> = sweep_verify_pairs(3, 6).into_iter().filter(|r| !r.equal).collect();
        assert!(bad.is_empty(), "{}", bad[0].to_json_line());
    }

    #[test]
    fn serial_and_parallel_agree() {
        let run = |n| {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(n).build().unwrap();
            pool.install(|| (sweep_verify_line(3, 3, 1, 6), sweep_verify_pairs(2, 4)))
        };
        let (l1, p1) = run(1);
        let (l4, p4) = run(4);
        assert_eq!(l1.len(), l4.len());
        assert!(l1.iter().zip(&l4).all(|(a, b)| a.same_result(b)));
        assert!(p1.iter().zip(&p4).all(|(a, b)| a.same_result(b)));
        assert_eq!(p1.len(), p4.len());
    }

    #[test]
    fn report_json_line() {
        let r = &sweep_verify_line(1, 1, 0, 0)[0];
        let v: serde_json::Value = serde_json::from_str(&r.to_json_line()).unwrap();
        assert_eq!(v["query"]["kind"], "line");
        assert_eq!(v["formula"], "1");
        assert_eq!(v["equal"], true);
    }
}
