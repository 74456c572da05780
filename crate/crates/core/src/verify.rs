//! Check suites shared by `latcross verify` and the acceptance tests.
//! Each suite enumerates small instances exhaustively (plus seeded random
//! ones for the bijections) and compares against direct computation.

use std::fmt;

use itertools::Itertools;
use num_bigint::BigInt;
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arrays::{ArrayCrossing, Bracket, TwoRowedArray};
use crate::formulas::{f_laurent, lemma_qbin2, lemma_sum_array, lemma_sum_closed, Interval};
use crate::pair_arrays::{ArrayPair, PairCrossing};
use crate::paths::{enumerate_paths, CrossingKind, Point};
use crate::{LaurentQT, QTPoly};

const MAX_SHOWN: usize = 5;

#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub name: String,
    pub checks: u64,
    pub failures: u64,
    pub examples: Vec<String>,
}

impl SuiteReport {
    pub fn new(name: &str) -> Self {
        SuiteReport { name: name.into(), checks: 0, failures: 0, examples: Vec::new() }
    }

    pub fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures += 1;
            if self.examples.len() < MAX_SHOWN {
                self.examples.push(what());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0 && self.checks > 0
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        write!(f, "{status} {}: {} checks, {} failures", self.name, self.checks, self.failures)?;
        for e in &self.examples {
            write!(f, "\n  {e}")?;
        }
        Ok(())
    }
}

fn laurent_of(exps: impl IntoIterator<Item = (u32, i64)>) -> LaurentQT {
    LaurentQT::from_signed_terms(exps.into_iter().map(|(t, q)| (t, q, BigInt::from(1))))
}

/// Descents and major index over all paths with `a` N and `b` E steps
/// against the product formula, for `a, b <= max`.
pub fn lemma_qbin2_suite(max: u32) -> SuiteReport {
    let mut rep = SuiteReport::new("lemma qbin2");
    for a in 0..=max {
        for b in 0..=max {
            let mut direct = QTPoly::zero();
            for p in enumerate_paths(Point::new(0, 0), Point::new(b as i64, a as i64)) {
                let s = p.stats();
                direct.add_term(s.des as u32, s.maj as u32, BigInt::from(1));
            }
            let closed: QTPoly = lemma_qbin2(a, b);
            rep.check(direct == closed, || format!("a={a} b={b}: {direct} vs {closed}"));
        }
    }
    rep
}

/// Sums over strictly increasing sequences and over two-rowed arrays,
/// with interval lengths up to `window`, `j, n <= 4` and `|k| <= 3`.
pub fn lemma_sum_suite(window: i64) -> SuiteReport {
    let mut rep = SuiteReport::new("lemma sequence and array sums");
    let kinds = [Interval::OpenClosed, Interval::ClosedOpen, Interval::Open, Interval::Closed];
    for kind in kinds {
        for lo in -2..=2 {
            for hi in lo..=lo + window {
                // the closed form needs a nonnegative binomial top
                if kind == Interval::Open && hi == lo {
                    continue;
                }
                let (a, b) = kind.range(lo, hi);
                for j in 0..=4u32 {
                    let direct = laurent_of((a..=b).combinations(j as usize).map(|c| (0, c.iter().sum())));
                    let closed = lemma_sum_closed(kind, lo, hi, j);
                    rep.check(direct == closed, || format!("{kind:?} ({lo},{hi}) j={j}: {direct} vs {closed}"));
                }
            }
        }
    }
    for bracket in [Bracket::XuYv, Bracket::XvYu] {
        for (x, y) in [(0, 0), (1, 0), (0, 2), (-1, 1)] {
            for du in 0..=window {
                for dv in 0..=window {
                    let b = (x, y, x + du, y + dv);
                    if bracket == Bracket::XvYu && (b.3 - x - 1 < 0 || b.2 - y + 1 < 0) {
                        continue;
                    }
                    for n in 0..=4i64 {
                        for k in -3..=3i64 {
                            let (lc, ld) = (n + k, n - k);
                            let direct = if lc < 0 || ld < 0 {
                                LaurentQT::zero()
                            } else {
                                laurent_of(
                                    TwoRowedArray::enumerate(bracket, b, lc as usize, ld as usize)
                                        .iter()
                                        .map(|a| (0, a.entry_sum() - n * (x + y))),
                                )
                            };
                            let closed = lemma_sum_array(bracket, b, n as u32, k);
                            rep.check(direct == closed, || {
                                format!("{bracket} {b:?} n={n} k={k}: {direct} vs {closed}")
                            });
                        }
                    }
                }
            }
        }
    }
    rep
}

/// Start pairs on a common antidiagonal with coordinates in `[0, 2]`.
fn start_pairs() -> Vec<(Point, Point)> {
    let pts: Vec<Point> = (0..=2).flat_map(|x| (0..=2).map(move |y| Point::new(x, y))).collect();
    pts.iter()
        .flat_map(|&a| pts.iter().map(move |&b| (a, b)))
        .filter(|(a, b)| a.x + a.y == b.x + b.y && !b.precedes(*a))
        .collect()
}

/// Pairs of bounds `(A1, B_first), (A2, B_second)` with end points in
/// `[0, window]^2` reachable from their starts.
fn pair_bounds(window: i64) -> Vec<((i64, i64, i64, i64), (i64, i64, i64, i64))> {
    let ends: Vec<Point> = (0..=window).flat_map(|x| (0..=window).map(move |y| Point::new(x, y))).collect();
    let mut out = Vec::new();
    for (a1, a2) in start_pairs() {
        for &bf in &ends {
            for &bs in &ends {
                if bf.x >= a1.x && bf.y >= a1.y && bs.x >= a2.x && bs.y >= a2.y {
                    out.push(((a1.x, a1.y, bf.x, bf.y), (a2.x, a2.y, bs.x, bs.y)));
                }
            }
        }
    }
    out
}

fn pairs_in(b1: (i64, i64, i64, i64), b2: (i64, i64, i64, i64)) -> impl Iterator<Item = ArrayPair> {
    let max_n = (b1.2 - b1.0 + b2.2 - b2.0) as usize;
    let max_k = (b1.3 - b1.1).max(b2.3 - b2.1);
    (0..=max_n)
        .cartesian_product(-max_k..=max_k)
        .flat_map(move |(n, k)| ArrayPair::enumerate(b1, b2, n, k))
}

/// The double sum over pairs of arrays against its factored form.
pub fn lemma_sum_pairs_suite(window: i64) -> SuiteReport {
    let mut rep = SuiteReport::new("lemma pair sums");
    for (b1, b2) in pair_bounds(window) {
        let z = b1.0 + b1.1;
        for k in -3..=3 {
            let max_n = (b1.2 - b1.0 + b2.2 - b2.0) as usize;
            let direct = laurent_of((0..=max_n).flat_map(|n| {
                ArrayPair::enumerate(b1, b2, n, k)
                    .into_iter()
                    .map(move |p| (n as u32, p.entry_sum() - n as i64 * z))
            }));
            let closed = f_laurent(
                k,
                Point::new(b1.0, b1.1),
                Point::new(b2.0, b2.1),
                Point::new(b1.2, b1.3),
                Point::new(b2.2, b2.3),
            );
            rep.check(direct == closed, || format!("{b1:?} {b2:?} k={k}: {direct} vs {closed}"));
        }
    }
    rep
}

/// Every array of either bracket with `0 <= x, y <= 2` and upper bounds at
/// most `window`.
pub fn arrays_in_window(window: i64) -> impl Iterator<Item = TwoRowedArray> {
    let bounds: Vec<(Bracket, (i64, i64, i64, i64))> = [Bracket::XuYv, Bracket::XvYu]
        .into_iter()
        .flat_map(|br| (0..=2).cartesian_product(0..=2).map(move |(x, y)| (br, x, y)))
        .flat_map(move |(br, x, y)| {
            (0..=window).cartesian_product(0..=window).map(move |(u, v)| (br, (x, y, u, v)))
        })
        .filter(|&(br, (x, y, u, v))| TwoRowedArray::new(br, x, y, u, v, vec![], vec![]).is_ok())
        .collect();
    bounds.into_iter().flat_map(|(br, b)| {
        let (top, bottom) = match br {
            Bracket::XuYv => (b.2 - b.0, b.3 - b.1),
            Bracket::XvYu => (b.3 - b.0 - 1, b.2 - b.1 + 1),
        };
        (0..=top.max(0) as usize)
            .cartesian_product(0..=bottom.max(0) as usize)
            .flat_map(move |(lc, ld)| TwoRowedArray::enumerate(br, b, lc, ld))
    })
}

/// Expected parity of the crossing count and kind of the first crossing,
/// when the bounds force them.
fn forced_parity(a: &TwoRowedArray) -> Option<(bool, CrossingKind)> {
    let (x, y, u, v) = a.bounds();
    let (lc, ld) = a.shape();
    // (x, v) with v = x is empty, so Tr may end with an N step on the diagonal
    if (lc + ld) % 2 != 0 || (a.bracket() == Bracket::XvYu && v <= x) {
        return None;
    }
    let kappa = (lc as i64 - ld as i64) / 2;
    let starts_below = if x > y {
        true
    } else if x < y {
        false
    } else if !a.d().is_empty() && a.d()[0] == y {
        true
    } else {
        return None;
    };
    let ends_above = match a.bracket() {
        Bracket::XuYv => {
            if (kappa >= 0 && u < v) || (kappa >= 1 && u == v) {
                true
            } else if (kappa <= -1 && u >= v) || (kappa == 0 && u > v) {
                false
            } else {
                return None;
            }
        }
        Bracket::XvYu => {
            if kappa >= 0 && u >= v {
                true
            } else if (kappa <= 0 && u < v) || (kappa <= -1 && u <= v) {
                false
            } else {
                return None;
            }
        }
    };
    let first = if starts_below { CrossingKind::Upward } else { CrossingKind::Downward };
    Some((starts_below == ends_above, first))
}

fn alternates(kinds: impl IntoIterator<Item = CrossingKind>, first: CrossingKind) -> bool {
    kinds.into_iter().enumerate().all(|(i, k)| k == if i % 2 == 0 { first } else { first.flip() })
}

fn first_kind(a: &TwoRowedArray) -> CrossingKind {
    let (x, y, ..) = a.bounds();
    if x > y || (x == y && a.d_at(1) == y) {
        CrossingKind::Upward
    } else {
        CrossingKind::Downward
    }
}

/// Alternation of crossing kinds and the parity forced by the bounds, for
/// single arrays and for pairs.
pub fn parity_suite(window: i64, pair_window: i64) -> SuiteReport {
    let mut rep = SuiteReport::new("alternation and parity forcing");
    for a in arrays_in_window(window) {
        let cs = a.crossings();
        let first = first_kind(&a);
        rep.check(alternates(cs.iter().map(|c| c.kind), first), || format!("alternation {a:?}"));
        if let Some((odd, first)) = forced_parity(&a) {
            rep.check(cs.len() % 2 == usize::from(odd) && alternates(cs.iter().map(|c| c.kind), first), || {
                format!("parity {a:?}: {} crossings", cs.len())
            });
        }
    }
    for (b1, b2) in pair_bounds(pair_window) {
        let (a1, a2) = (Point::new(b1.0, b1.1), Point::new(b2.0, b2.1));
        let (bf, bs) = (Point::new(b1.2, b1.3), Point::new(b2.2, b2.3));
        for p in pairs_in(b1, b2) {
            let kinds: Vec<CrossingKind> = p.crossings().iter().map(|c| c.kind).collect();
            let k = p.k();
            let tag = || format!("{p:?} crossings {kinds:?}");
            if a1.precedes(a2) {
                rep.check(alternates(kinds.iter().copied(), CrossingKind::Downward), tag);
                let odd = kinds.len() % 2 == 1;
                if (bs.precedes(bf) && k >= 0) || (bf == bs && k >= 1) {
                    rep.check(odd, tag);
                }
                if (bf.precedes(bs) && k <= 0) || (bf == bs && k <= -1) {
                    rep.check(!odd, tag);
                }
            } else if a1 == a2 && bf == bs && k != 0 {
                let after = |pos: usize, kind: CrossingKind| kinds.get(pos) == Some(&kind.flip());
                if k >= 1 {
                    for m in 1..=kinds.len() / 2 {
                        if kinds[2 * m - 1] == CrossingKind::Upward {
                            rep.check(after(2 * m, CrossingKind::Upward), tag);
                        }
                    }
                    if p.zigzag_class() == Some(CrossingKind::Upward) {
                        rep.check(kinds.first() == Some(&CrossingKind::Downward), tag);
                    }
                } else {
                    for m in 0..kinds.len().div_ceil(2) {
                        if kinds[2 * m] == CrossingKind::Downward {
                            rep.check(after(2 * m + 1, CrossingKind::Downward), tag);
                        }
                    }
                }
            }
        }
    }
    rep
}

fn same_prefix(a: &[ArrayCrossing], b: &[ArrayCrossing], r: usize) -> bool {
    a.len() >= r && b.len() >= r && a[..r].iter().zip(&b[..r]).all(|(p, q)| p.kind == q.kind && p.value == q.value)
}

fn check_array_maps(a: &TwoRowedArray, rep: &mut SuiteReport) {
    let cs = a.crossings();
    let (lc, ld) = a.shape();
    for c in &cs {
        let r = c.position;
        let (img, shape) = match c.kind {
            CrossingKind::Upward => (a.alpha(r), (ld, lc)),
            CrossingKind::Downward => (a.beta(r), (ld.wrapping_sub(1), lc + 1)),
        };
        let Ok(img) = img else { continue };
        let back = match c.kind {
            CrossingKind::Upward => img.alpha(r),
            CrossingKind::Downward => img.beta(r),
        };
        let name = if c.kind == CrossingKind::Upward { "alpha" } else { "beta" };
        rep.check(back.as_ref() == Ok(a), || format!("{name}_{r} not an involution on {a:?}"));
        rep.check(img.entry_sum() == a.entry_sum(), || format!("{name}_{r} entry sum on {a:?}"));
        rep.check(same_prefix(&cs, &img.crossings(), r), || format!("{name}_{r} crossings on {a:?}"));
        rep.check(img.shape() == shape && img.bracket() == a.bracket().toggle(), || {
            format!("{name}_{r} shape on {a:?}")
        });
    }
    if a.bracket() == Bracket::XuYv {
        let n = a.nu().expect("XU_YV");
        rep.check(n.nu().as_ref() == Ok(a), || format!("nu not an involution on {a:?}"));
        if lc != ld {
            return;
        }
        let mut mirrored: Vec<(CrossingKind, i64)> = cs.iter().map(|c| (c.kind.flip(), -c.value)).collect();
        mirrored.reverse();
        let got: Vec<(CrossingKind, i64)> = n.crossings().iter().map(|c| (c.kind, c.value)).collect();
        rep.check(got == mirrored, || format!("nu crossings on {a:?}"));
    }
}

fn same_pair_prefix(a: &[PairCrossing], b: &[PairCrossing], r: usize) -> bool {
    a.len() >= r && b.len() >= r && a[..r].iter().zip(&b[..r]).all(|(p, q)| p.kind == q.kind && p.vertex == q.vertex)
}

fn check_pair_maps(p: &ArrayPair, rep: &mut SuiteReport) {
    let cs = p.crossings();
    let s = p.sigma();
    rep.check(s.sigma() == *p, || format!("sigma not an involution on {p:?}"));
    let flipped: Vec<(CrossingKind, Point)> = cs.iter().map(|c| (c.kind.flip(), c.vertex)).collect();
    let got: Vec<(CrossingKind, Point)> = s.crossings().iter().map(|c| (c.kind, c.vertex)).collect();
    rep.check(got == flipped, || format!("sigma crossings on {p:?}"));
    for c in &cs {
        let r = c.position;
        let (img, k) = match c.kind {
            CrossingKind::Upward => (p.gamma(r), -p.k() - 1),
            CrossingKind::Downward => (p.delta(r), -p.k() + 1),
        };
        if c.kind == CrossingKind::Downward {
            let conj = s.gamma(r).map(|g| g.sigma());
            rep.check(conj.as_ref().ok() == img.as_ref().ok(), || format!("delta_{r} != sigma gamma sigma on {p:?}"));
        }
        let Ok(img) = img else { continue };
        let back = match c.kind {
            CrossingKind::Upward => img.gamma(r),
            CrossingKind::Downward => img.delta(r),
        };
        let name = if c.kind == CrossingKind::Upward { "gamma" } else { "delta" };
        rep.check(back.as_ref() == Ok(p), || format!("{name}_{r} not an involution on {p:?}"));
        rep.check(img.entry_sum() == p.entry_sum() && img.n() == p.n(), || {
            format!("{name}_{r} entry sum on {p:?}")
        });
        rep.check(same_pair_prefix(&cs, &img.crossings(), r), || format!("{name}_{r} crossings on {p:?}"));
        rep.check(img.k() == k, || format!("{name}_{r} offset on {p:?}"));
    }
    if let Ok(img) = p.gamma0() {
        rep.check(img.gamma0().as_ref() == Ok(p), || format!("gamma0 not an involution on {p:?}"));
        rep.check(img.entry_sum() == p.entry_sum() && img.k() == -p.k() - 1, || {
            format!("gamma0 sum or offset on {p:?}")
        });
    }
}

fn random_row(rng: &mut ChaCha8Rng, lo: i64, hi: i64, len: usize) -> Vec<i64> {
    let mut v: Vec<i64> = sample(rng, (hi - lo + 1) as usize, len).into_iter().map(|i| lo + i as i64).collect();
    v.sort_unstable();
    v
}

fn random_array(rng: &mut ChaCha8Rng) -> TwoRowedArray {
    let bracket = if rng.gen() { Bracket::XuYv } else { Bracket::XvYu };
    let (x, y) = (rng.gen_range(-4..=6), rng.gen_range(-4..=6));
    let top = rng.gen_range(0..=9i64);
    // [y, u] always holds y itself
    let bottom = rng.gen_range(i64::from(bracket == Bracket::XvYu)..=9);
    let (u, v) = match bracket {
        Bracket::XuYv => (x + top, y + bottom),
        Bracket::XvYu => (y + bottom - 1, x + top + 1),
    };
    let (lc, ld) = (rng.gen_range(0..=top.min(6)), rng.gen_range(0..=bottom.min(6)));
    let c = random_row(rng, x + 1, x + top, lc as usize);
    let d = random_row(rng, y, y + bottom - 1, ld as usize);
    TwoRowedArray::new(bracket, x, y, u, v, c, d).expect("rows drawn inside their bounds")
}

fn random_pair(rng: &mut ChaCha8Rng) -> ArrayPair {
    let z = rng.gen_range(-2..=6);
    let (x1, x2) = (rng.gen_range(-3..=6), rng.gen_range(-3..=6));
    let (y1, y2) = (z - x1, z - x2);
    loop {
        let spans: [i64; 4] = std::array::from_fn(|_| rng.gen_range(0..=8));
        let [t1, b1, t2, b2] = spans;
        let k = rng.gen_range(-4..=4);
        // top lengths n1, n2 with n1 + k and n2 - k inside the bottom spans
        let n1_range = (0.max(-k), t1.min(b1 - k));
        let n2_range = (0.max(k), t2.min(b2 + k));
        if n1_range.0 > n1_range.1 || n2_range.0 > n2_range.1 {
            continue;
        }
        let n1 = rng.gen_range(n1_range.0..=n1_range.1);
        let n2 = rng.gen_range(n2_range.0..=n2_range.1);
        let c = random_row(rng, x1 + 1, x1 + t1, n1 as usize);
        let d = random_row(rng, y1, y1 + b1 - 1, (n1 + k) as usize);
        let e = random_row(rng, x2 + 1, x2 + t2, n2 as usize);
        let f = random_row(rng, y2, y2 + b2 - 1, (n2 - k) as usize);
        return ArrayPair::from_rows((x1, y1, x1 + t1, y1 + b1), c, d, (x2, y2, x2 + t2, y2 + b2), e, f)
            .expect("rows drawn inside their bounds");
    }
}

/// α, β, ν on every array in the window plus `random` seeded arrays.
pub fn array_bijection_suite(window: i64, random: usize, seed: u64) -> SuiteReport {
    let mut rep = SuiteReport::new("array bijections");
    for a in arrays_in_window(window) {
        check_array_maps(&a, &mut rep);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..random {
        check_array_maps(&random_array(&mut rng), &mut rep);
    }
    rep
}

/// γ, δ, ς, γ0 on every pair in the window plus `random` seeded pairs.
pub fn pair_bijection_suite(window: i64, random: usize, seed: u64) -> SuiteReport {
    let mut rep = SuiteReport::new("pair bijections");
    for (b1, b2) in pair_bounds(window) {
        for p in pairs_in(b1, b2) {
            check_pair_maps(&p, &mut rep);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..random {
        check_pair_maps(&random_pair(&mut rng), &mut rep);
    }
    rep
}

/// Row-level crossing conditions against crossings of the truncated paths.
pub fn detector_suite(window: i64, pair_window: i64) -> SuiteReport {
    let mut rep = SuiteReport::new("crossing detectors");
    for a in arrays_in_window(window) {
        let rows: Vec<(CrossingKind, Point)> = a.crossings().iter().map(|c| (c.kind, c.vertex())).collect();
        let path: Vec<(CrossingKind, Point)> =
            a.truncate().diagonal_crossings().iter().map(|c| (c.kind, c.vertex)).collect();
        rep.check(rows == path, || format!("{a:?}: rows {rows:?} path {path:?}"));
    }
    for (b1, b2) in pair_bounds(pair_window) {
        for p in pairs_in(b1, b2) {
            if let Some(rows) = p.array_level_crossings() {
                let path = p.path_level_crossings();
                rep.check(rows == path, || format!("{p:?}: rows {rows:?} path {path:?}"));
            }
        }
    }
    rep
}
