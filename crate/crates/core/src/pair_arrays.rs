//! Pairs of two-rowed arrays: the encoding of a pair of paths, crossings of
//! the pair, and the maps γ_r, δ_r, ς and γ_0.
//!
//! In a pair `(c,d | e,f)` the first array holds `c, d` and the second
//! `e, f`. The offset `k` satisfies `len d = len c + k` and
//! `len f = len e - k`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arrays::{ArrayError, Bracket, TwoRowedArray};
use crate::paths::{pair_crossings as path_pair_crossings, CrossingKind, LatticePath, Point};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PairError {
    #[error(transparent)]
    Array(#[from] ArrayError),
    #[error("pair arrays must use the (x,u]/[y,v) bracket")]
    WrongBracket,
    #[error("row lengths give offset {first} for the first array and {second} for the second")]
    OffsetMismatch { first: i64, second: i64 },
    #[error("declared offset {declared} but the rows give {actual}")]
    DeclaredOffset { declared: i64, actual: i64 },
    #[error("no crossing {r}: the pair has {count}")]
    NoSuchCrossing { r: usize, count: usize },
    #[error("crossing {r} is {found}, expected {wanted}")]
    WrongKind { r: usize, found: CrossingKind, wanted: CrossingKind },
    #[error("crossing {r} touches an upper bound")]
    ImproperCrossing { r: usize },
    #[error("gamma_0 needs equal start points and equal end points")]
    EndpointsDiffer,
    #[error("pair is not in the domain of gamma_0")]
    NotInDomain,
    #[error("gamma_0 would swap at an upper bound")]
    ImproperPosition,
}

/// `a <_alt b`: `a_1 < b_1`, or `a_1 = b_1` and `tail(b) <_alt tail(a)`.
/// An exhausted sequence is never less.
pub fn alt_less(a: &[i64], b: &[i64]) -> bool {
    let (mut a, mut b) = (a, b);
    loop {
        match (a.split_first(), b.split_first()) {
            (Some((x, at)), Some((y, bt))) => {
                if x != y {
                    return x < y;
                }
                a = bt;
                b = at;
            }
            _ => return false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PairCrossing {
    pub kind: CrossingKind,
    /// Index into the first array: `c_i` when upward, `d_i` when downward.
    pub i: usize,
    /// Index into the second array: `f_j` when upward, `e_j` when downward.
    pub j: usize,
    pub vertex: Point,
    pub position: usize,
}

impl PairCrossing {
    pub fn entry_name(&self) -> String {
        match self.kind {
            CrossingKind::Upward => format!("(c_{}, f_{})", self.i, self.j),
            CrossingKind::Downward => format!("(e_{}, d_{})", self.j, self.i),
        }
    }
}

/// One step of [`ArrayPair::unwind`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairTraceStep {
    pub map: String,
    pub r: usize,
    pub kind: CrossingKind,
    pub entry: String,
    pub vertex: Point,
}

impl fmt::Display for PairTraceStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}_{} acts on {} crossing at {} = {}",
            self.map, self.r, self.kind, self.entry, self.vertex
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "PairJson", into = "PairJson")]
pub struct ArrayPair {
    first: TwoRowedArray,
    second: TwoRowedArray,
}

#[derive(Serialize, Deserialize)]
struct PairJson {
    first: TwoRowedArray,
    second: TwoRowedArray,
    k: i64,
}

impl TryFrom<PairJson> for ArrayPair {
    type Error = PairError;

    fn try_from(j: PairJson) -> Result<Self, PairError> {
        let p = ArrayPair::new(j.first, j.second)?;
        if p.k() != j.k {
            return Err(PairError::DeclaredOffset { declared: j.k, actual: p.k() });
        }
        Ok(p)
    }
}

impl From<ArrayPair> for PairJson {
    fn from(p: ArrayPair) -> Self {
        let k = p.k();
        PairJson { first: p.first, second: p.second, k }
    }
}

/// `[c_i, d_i, c_{i-1}, ..., c_0, d_0]`, or without the leading `c_i`.
fn history(a: &TwoRowedArray, i: usize, lead_top: bool) -> Vec<i64> {
    let mut out = Vec::with_capacity(2 * i + 2);
    if !lead_top {
        out.push(a.d_at(i));
        if i == 0 {
            return out;
        }
    }
    let top = if lead_top { i } else { i - 1 };
    for s in (0..=top).rev() {
        out.push(a.c_at(s));
        out.push(a.d_at(s));
    }
    out
}

/// Row entry with the upper bound repeated past the end.
fn extended(row: &[i64], lower: i64, upper: i64, i: usize) -> i64 {
    match i {
        0 => lower,
        i if i <= row.len() => row[i - 1],
        _ => upper,
    }
}

impl ArrayPair {
    pub fn new(first: TwoRowedArray, second: TwoRowedArray) -> Result<Self, PairError> {
        if first.bracket() != Bracket::XuYv || second.bracket() != Bracket::XuYv {
            return Err(PairError::WrongBracket);
        }
        let (c, d) = first.shape();
        let (e, f) = second.shape();
        let k1 = d as i64 - c as i64;
        let k2 = e as i64 - f as i64;
        if k1 != k2 {
            return Err(PairError::OffsetMismatch { first: k1, second: k2 });
        }
        Ok(Self { first, second })
    }

    /// Builds both arrays from bounds `(x, y, u, v)` and rows.
    pub fn from_rows(
        b1: (i64, i64, i64, i64),
        c: Vec<i64>,
        d: Vec<i64>,
        b2: (i64, i64, i64, i64),
        e: Vec<i64>,
        f: Vec<i64>,
    ) -> Result<Self, PairError> {
        let first = TwoRowedArray::new(Bracket::XuYv, b1.0, b1.1, b1.2, b1.3, c, d)?;
        let second = TwoRowedArray::new(Bracket::XuYv, b2.0, b2.1, b2.2, b2.3, e, f)?;
        Self::new(first, second)
    }

    /// Componentwise valley encoding; the offset is 0.
    pub fn encode_pair(p: &LatticePath, q: &LatticePath) -> Self {
        Self { first: TwoRowedArray::encode_path(p), second: TwoRowedArray::encode_path(q) }
    }

    pub fn decode(&self) -> Result<(LatticePath, LatticePath), PairError> {
        Ok((self.first.decode()?, self.second.decode()?))
    }

    pub fn first(&self) -> &TwoRowedArray {
        &self.first
    }

    pub fn second(&self) -> &TwoRowedArray {
        &self.second
    }

    pub fn k(&self) -> i64 {
        let (c, d) = self.first.shape();
        d as i64 - c as i64
    }

    /// `n = len c + len e`.
    pub fn n(&self) -> usize {
        self.first.shape().0 + self.second.shape().0
    }

    pub fn entry_sum(&self) -> i64 {
        self.first.entry_sum() + self.second.entry_sum()
    }

    pub fn starts(&self) -> (Point, Point) {
        let (x1, y1, ..) = self.first.bounds();
        let (x2, y2, ..) = self.second.bounds();
        (Point::new(x1, y1), Point::new(x2, y2))
    }

    pub fn truncated(&self) -> (LatticePath, LatticePath) {
        (self.first.truncate(), self.second.truncate())
    }

    /// Crossings read off the rows with the (i)/(ii) conditions. Only
    /// defined when the first start point precedes or equals the second.
    pub fn array_level_crossings(&self) -> Option<Vec<PairCrossing>> {
        let (a1, a2) = self.starts();
        if !(a1 == a2 || a1.precedes(a2)) {
            return None;
        }
        let (p, q) = (&self.first, &self.second);
        let (m1, m2) = (p.min_len(), q.min_len());
        let mut out = Vec::new();
        for i in 0..=m1 {
            for j in 1..=m2 + 1 {
                let (ci, fj) = (p.c_at(i), q.d_at(j));
                let placed = q.c_at(j - 1) <= ci
                    && ci < q.c_at(j)
                    && p.d_at(i) <= fj
                    && fj < p.d_at(i + 1);
                if placed
                    && alt_less(&history(q, j - 1, true), &history(p, i, true))
                    && alt_less(&history(p, i, false), &history(q, j, false))
                {
                    out.push(PairCrossing {
                        kind: CrossingKind::Upward,
                        i,
                        j,
                        vertex: Point::new(ci, fj),
                        position: 0,
                    });
                }
            }
        }
        for i in 1..=m1 + 1 {
            for j in 0..=m2 {
                let (ej, di) = (q.c_at(j), p.d_at(i));
                let placed = p.c_at(i - 1) <= ej
                    && ej < p.c_at(i)
                    && q.d_at(j) <= di
                    && di < q.d_at(j + 1);
                if placed
                    && alt_less(&history(p, i - 1, true), &history(q, j, true))
                    && alt_less(&history(q, j, false), &history(p, i, false))
                {
                    out.push(PairCrossing {
                        kind: CrossingKind::Downward,
                        i,
                        j,
                        vertex: Point::new(ej, di),
                        position: 0,
                    });
                }
            }
        }
        out.sort_by_key(|c| (c.vertex.x, c.vertex.y));
        for (n, c) in out.iter_mut().enumerate() {
            c.position = n + 1;
        }
        Some(out)
    }

    /// Crossings of `(Tr(c,d), Tr(e,f))`, with row indices recovered from
    /// the vertices.
    pub fn path_level_crossings(&self) -> Vec<PairCrossing> {
        let (tp, tq) = self.truncated();
        let (p, q) = (&self.first, &self.second);
        let (m1, m2) = (p.min_len(), q.min_len());
        let find = |range: std::ops::RangeInclusive<usize>, at: &dyn Fn(usize) -> i64, val: i64| {
            range.into_iter().find(|&s| at(s) == val).expect("crossing lies on a row entry")
        };
        path_pair_crossings(&tp, &tq)
            .into_iter()
            .map(|c| {
                let (i, j) = match c.kind {
                    CrossingKind::Upward => (
                        find(0..=m1, &|s| p.c_at(s), c.vertex.x),
                        find(1..=m2 + 1, &|s| q.d_at(s), c.vertex.y),
                    ),
                    CrossingKind::Downward => (
                        find(1..=m1 + 1, &|s| p.d_at(s), c.vertex.y),
                        find(0..=m2, &|s| q.c_at(s), c.vertex.x),
                    ),
                };
                PairCrossing { kind: c.kind, i, j, vertex: c.vertex, position: c.position }
            })
            .collect()
    }

    /// Crossings ordered left to right. Uses the row conditions when the
    /// start points are comparable (swapping the arrays if needed) and the
    /// truncated paths otherwise.
    pub fn crossings(&self) -> Vec<PairCrossing> {
        if let Some(cs) = self.array_level_crossings() {
            return cs;
        }
        let (a1, a2) = self.starts();
        if a2.precedes(a1) {
            let swapped = self.sigma().array_level_crossings().expect("swapped starts are ordered");
            return swapped
                .into_iter()
                .map(|c| PairCrossing { kind: c.kind.flip(), i: c.j, j: c.i, ..c })
                .collect();
        }
        self.path_level_crossings()
    }

    fn crossing_for(&self, r: usize, wanted: CrossingKind) -> Result<PairCrossing, PairError> {
        let cs = self.crossings();
        let cr = match r.checked_sub(1).and_then(|i| cs.get(i)) {
            Some(c) => *c,
            None => return Err(PairError::NoSuchCrossing { r, count: cs.len() }),
        };
        if cr.kind != wanted {
            return Err(PairError::WrongKind { r, found: cr.kind, wanted });
        }
        let improper = match cr.kind {
            CrossingKind::Upward => {
                self.first.c_at(cr.i) == self.first.top_upper()
                    || self.second.d_at(cr.j) == self.second.bottom_upper()
            }
            CrossingKind::Downward => {
                self.second.c_at(cr.j) == self.second.top_upper()
                    || self.first.d_at(cr.i) == self.first.bottom_upper()
            }
        };
        if improper {
            return Err(PairError::ImproperCrossing { r });
        }
        Ok(cr)
    }

    /// Exchanges everything right of `c_i` in the first array with
    /// everything right of `f_j` in the second, upper bounds included.
    fn swap_upward(&self, i: usize, j: usize) -> Result<Self, PairError> {
        let (p, q) = (&self.first, &self.second);
        let (x1, y1, u1, v1) = p.bounds();
        let (x2, y2, u2, v2) = q.bounds();
        Self::from_rows(
            (x1, y1, u2, v2),
            [&p.c()[..i], &q.c()[j - 1..]].concat(),
            [&p.d()[..i], &q.d()[j..]].concat(),
            (x2, y2, u1, v1),
            [&q.c()[..j - 1], &p.c()[i..]].concat(),
            [&q.d()[..j], &p.d()[i..]].concat(),
        )
    }

    /// γ_r: the r-th crossing must be a proper upward crossing.
    pub fn gamma(&self, r: usize) -> Result<Self, PairError> {
        let cr = self.crossing_for(r, CrossingKind::Upward)?;
        self.swap_upward(cr.i, cr.j)
    }

    /// δ_r: the r-th crossing must be a proper downward crossing `(e_j, d_i)`.
    pub fn delta(&self, r: usize) -> Result<Self, PairError> {
        let cr = self.crossing_for(r, CrossingKind::Downward)?;
        let (i, j) = (cr.i, cr.j);
        let (p, q) = (&self.first, &self.second);
        let (x1, y1, u1, v1) = p.bounds();
        let (x2, y2, u2, v2) = q.bounds();
        Self::from_rows(
            (x1, y1, u2, v2),
            [&p.c()[..i - 1], &q.c()[j..]].concat(),
            [&p.d()[..i], &q.d()[j..]].concat(),
            (x2, y2, u1, v1),
            [&q.c()[..j], &p.c()[i - 1..]].concat(),
            [&q.d()[..j], &p.d()[i..]].concat(),
        )
    }

    /// ς: swap the two arrays.
    pub fn sigma(&self) -> Self {
        Self { first: self.second.clone(), second: self.first.clone() }
    }

    /// ν applied to both arrays.
    pub fn nu(&self) -> Self {
        Self {
            first: self.first.nu().expect("pair arrays use (x,u]/[y,v)"),
            second: self.second.nu().expect("pair arrays use (x,u]/[y,v)"),
        }
    }

    /// First place where the arrays differ in the zig-zag order
    /// `d_1, c_1, d_2, c_2, ...` (rows padded with their upper bounds).
    /// `Upward` when the difference is `c_i < e_i` or `d_i > f_i`,
    /// `Downward` for the opposite inequalities, `None` for equal arrays.
    pub fn zigzag_class(&self) -> Option<CrossingKind> {
        self.first_difference().map(|(_, kind)| kind)
    }

    /// The first zig-zag difference written out, e.g. `d_2 = 3 > 2 = f_2`.
    pub fn zigzag_difference(&self) -> Option<String> {
        let ((i, top), _) = self.first_difference()?;
        let (p, q) = (&self.first, &self.second);
        let (x1, y1, u1, v1) = p.bounds();
        let (x2, y2, u2, v2) = q.bounds();
        let (a, b, na, nb) = if top {
            (extended(p.c(), x1, u1, i), extended(q.c(), x2, u2, i), 'c', 'e')
        } else {
            (extended(p.d(), y1, v1, i), extended(q.d(), y2, v2, i), 'd', 'f')
        };
        let rel = if a < b { '<' } else { '>' };
        Some(format!("{na}_{i} = {a} {rel} {b} = {nb}_{i}"))
    }

    /// `(index, top?)` and the class of the first zig-zag difference.
    fn first_difference(&self) -> Option<((usize, bool), CrossingKind)> {
        let (p, q) = (&self.first, &self.second);
        let (x1, y1, u1, v1) = p.bounds();
        let (x2, y2, u2, v2) = q.bounds();
        let len = p.c().len().max(p.d().len()).max(q.c().len()).max(q.d().len());
        let class = |up: bool| if up { CrossingKind::Upward } else { CrossingKind::Downward };
        for i in 0..=len + 1 {
            let (d, f) = (extended(p.d(), y1, v1, i), extended(q.d(), y2, v2, i));
            if d != f {
                return Some(((i, false), class(d > f)));
            }
            let (c, e) = (extended(p.c(), x1, u1, i), extended(q.c(), x2, u2, i));
            if c != e {
                return Some(((i, true), class(c < e)));
            }
        }
        None
    }

    /// γ_0 for pairs with equal start points and equal end points whose
    /// first zig-zag difference is `c_i < e_i` or `d_i > f_i`.
    pub fn gamma0(&self) -> Result<Self, PairError> {
        let (x1, y1, u1, v1) = self.first.bounds();
        if self.second.bounds() != (x1, y1, u1, v1) {
            return Err(PairError::EndpointsDiffer);
        }
        let ((i, top), kind) = self.first_difference().ok_or(PairError::NotInDomain)?;
        if kind != CrossingKind::Upward {
            return Err(PairError::NotInDomain);
        }
        let (ci, fj) = if top { (i, i) } else { (i - 1, i) };
        let c = extended(self.first.c(), x1, u1, ci);
        let f = extended(self.second.d(), y1, v1, fj);
        if c == u1 || f == v1 {
            return Err(PairError::ImproperPosition);
        }
        self.swap_upward(ci, fj)
    }

    /// Applies γ_s or δ_s, matching the kind of crossing `s`, for
    /// `s = r, ..., 1`.
    pub fn unwind(&self, r: usize) -> Result<(Self, Vec<PairTraceStep>), PairError> {
        let mut cur = self.clone();
        let mut trace = Vec::new();
        for s in (1..=r).rev() {
            let cs = cur.crossings();
            let cr = *cs.get(s - 1).ok_or(PairError::NoSuchCrossing { r: s, count: cs.len() })?;
            let (next, map) = match cr.kind {
                CrossingKind::Upward => (cur.gamma(s)?, "gamma"),
                CrossingKind::Downward => (cur.delta(s)?, "delta"),
            };
            trace.push(PairTraceStep {
                map: map.into(),
                r: s,
                kind: cr.kind,
                entry: cr.entry_name(),
                vertex: cr.vertex,
            });
            cur = next;
        }
        Ok((cur, trace))
    }

    /// Every pair with the given bounds, total `n` and offset `k`.
    pub fn enumerate(
        b1: (i64, i64, i64, i64),
        b2: (i64, i64, i64, i64),
        n: usize,
        k: i64,
    ) -> Vec<Self> {
        let mut out = Vec::new();
        for n1 in 0..=n as i64 {
            let n2 = n as i64 - n1;
            if n1 + k < 0 || n2 - k < 0 {
                continue;
            }
            let firsts = TwoRowedArray::enumerate(Bracket::XuYv, b1, n1 as usize, (n1 + k) as usize);
            if firsts.is_empty() {
                continue;
            }
            let seconds =
                TwoRowedArray::enumerate(Bracket::XuYv, b2, n2 as usize, (n2 - k) as usize);
            for a in &firsts {
                for b in &seconds {
                    out.push(Self { first: a.clone(), second: b.clone() });
                }
            }
        }
        out
    }

    /// Side-by-side display. Both entries of each crossing carry a `*`.
    pub fn render(&self) -> String {
        let cs = self.crossings();
        let marked = |kind: CrossingKind, first: bool| -> Vec<usize> {
            cs.iter()
                .filter(|c| c.kind == kind)
                .map(|c| match (kind, first) {
                    (CrossingKind::Upward, true) | (CrossingKind::Downward, true) => c.i,
                    _ => c.j,
                })
                .collect()
        };
        let row = |lower: i64, entries: &[i64], upper: i64, marks: &[usize]| {
            let cell = |idx: usize, v: i64| {
                if marks.contains(&idx) {
                    format!("{v}*")
                } else {
                    v.to_string()
                }
            };
            let mid: Vec<String> =
                entries.iter().enumerate().map(|(s, &v)| cell(s + 1, v)).collect();
            format!("{} | {} | {}", cell(0, lower), mid.join(" "), cell(entries.len() + 1, upper))
        };
        let (p, q) = (&self.first, &self.second);
        let (x1, y1, u1, v1) = p.bounds();
        let (x2, y2, u2, v2) = q.bounds();
        let up_first = marked(CrossingKind::Upward, true);
        let up_second = marked(CrossingKind::Upward, false);
        let down_first = marked(CrossingKind::Downward, true);
        let down_second = marked(CrossingKind::Downward, false);
        let top1 = format!("({}]", row(x1, p.c(), u1, &up_first));
        let top2 = format!("({}]", row(x2, q.c(), u2, &down_second));
        let bot1 = format!("[{})", row(y1, p.d(), v1, &down_first));
        let bot2 = format!("[{})", row(y2, q.d(), v2, &up_second));
        let w = top1.len().max(bot1.len());
        format!("{top1:<w$} || {top2}\n{bot1:<w$} || {bot2}")
    }
}

impl fmt::Display for ArrayPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} | {} (k = {})", self.first, self.second, self.k())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::paths::{enumerate_paths, parse_path};
    use proptest::prelude::*;
    use CrossingKind::{Downward, Upward};

    fn pair(
        b1: (i64, i64, i64, i64),
        c: &[i64],
        d: &[i64],
        b2: (i64, i64, i64, i64),
        e: &[i64],
        f: &[i64],
    ) -> ArrayPair {
        ArrayPair::from_rows(b1, c.to_vec(), d.to_vec(), b2, e.to_vec(), f.to_vec()).unwrap()
    }

    fn fig5() -> ArrayPair {
        pair((0, 2, 10, 7), &[3, 6], &[2, 4], (2, 0, 8, 8), &[3, 4, 7, 8], &[2, 5, 6, 7])
    }

    fn kinds(ap: &ArrayPair) -> Vec<(CrossingKind, Point)> {
        ap.crossings().iter().map(|c| (c.kind, c.vertex)).collect()
    }

    #[test]
    fn alt_order() {
        assert!(alt_less(&[3, 2, 0, 2], &[3, 2, 2, 0]));
        assert!(alt_less(&[2, 2, 0], &[4, 3, 2, 0, 2]));
        assert!(!alt_less(&[], &[]));
        assert!(!alt_less(&[1], &[1]));
        assert!(!alt_less(&[3, 2, 2, 0], &[3, 2, 0, 2]));
        // equal heads flip the roles of the tails
        assert!(alt_less(&[5, 7], &[5, 6]));
        assert!(!alt_less(&[5, 6], &[5, 7]));
    }

    #[test]
    fn figure_encoding() {
        let p = parse_path("EEENNEEENNNEEEE", Point::new(0, 2)).unwrap();
        let q = parse_path("NNENNNENEEENEN", Point::new(2, 0)).unwrap();
        let ap = ArrayPair::encode_pair(&p, &q);
        assert_eq!(ap, fig5());
        assert_eq!(ap.k(), 0);
        assert_eq!(ap.n(), 6);
        assert_eq!(ap.decode().unwrap(), (p.clone(), q.clone()));
        let (sp, sq) = (p.stats(), q.stats());
        assert_eq!((sp.maj + sq.maj) as i64, ap.entry_sum() - 6 * 2);
    }

    #[test]
    fn figure_crossings() {
        let ap = fig5();
        let want = vec![
            (Downward, Point::new(3, 4)),
            (Upward, Point::new(6, 6)),
            (Downward, Point::new(8, 7)),
        ];
        assert_eq!(kinds(&ap), want);
        let names: Vec<String> = ap.crossings().iter().map(|c| c.entry_name()).collect();
        assert_eq!(names, ["(e_1, d_2)", "(c_2, f_3)", "(e_4, d_3)"]);
        assert_eq!(ap.path_level_crossings(), ap.crossings());
        let flipped: Vec<CrossingKind> = ap.sigma().crossings().iter().map(|c| c.kind).collect();
        assert_eq!(flipped, vec![Upward, Downward, Upward]);

        let small = pair((0, 1, 3, 5), &[], &[2], (1, 0, 4, 4), &[2, 4], &[2]);
        assert_eq!(small.k(), 1);
        assert_eq!(kinds(&small), vec![(Downward, Point::new(2, 2))]);
        let (tp, tq) = small.truncated();
        assert_eq!(tp, parse_path("NEEE", Point::new(0, 1)).unwrap());
        assert_eq!(tq, parse_path("NNENNEE", Point::new(1, 0)).unwrap());
    }

    #[test]
    fn figure_chain() {
        let g = fig5().gamma(2).unwrap();
        assert_eq!(g, pair((0, 2, 8, 8), &[3, 6, 7, 8], &[2, 4, 7], (2, 0, 10, 7), &[3, 4], &[2, 5, 6]));
        assert_eq!(g.k(), -1);
        let dl = g.delta(1).unwrap();
        assert_eq!(dl, pair((0, 2, 10, 7), &[3, 4], &[2, 4, 5, 6], (2, 0, 8, 8), &[3, 6, 7, 8], &[2, 7]));
        assert_eq!(dl.k(), 2);
        assert_eq!(kinds(&dl), vec![(Downward, Point::new(3, 4))]);
        let (end, trace) = fig5().unwind(2).unwrap();
        assert_eq!(end, dl);
        assert_eq!(trace[0].to_string(), "gamma_2 acts on upward crossing at (c_2, f_3) = (6,6)");
        assert_eq!(trace[1].to_string(), "delta_1 acts on downward crossing at (e_1, d_2) = (3,4)");
    }

    #[test]
    fn figure_gamma0() {
        let b = (0, 0, 4, 3);
        let left = pair(b, &[2, 4], &[1], b, &[2], &[1, 2]);
        assert_eq!(left.k(), -1);
        assert_eq!(left.zigzag_class(), Some(Upward));
        assert_eq!(left.zigzag_difference().as_deref(), Some("d_2 = 3 > 2 = f_2"));
        let right = left.gamma0().unwrap();
        assert_eq!(right, pair(b, &[2], &[1], b, &[2, 4], &[1, 2]));
        assert_eq!(right.k(), 0);
        assert_eq!(right.gamma0().unwrap(), left);
        assert_eq!(left.sigma().gamma0(), Err(PairError::NotInDomain));
        let same = pair(b, &[2], &[1], b, &[2], &[1]);
        assert_eq!(same.gamma0(), Err(PairError::NotInDomain));
        assert_eq!(fig5().gamma0(), Err(PairError::EndpointsDiffer));
    }

    #[test]
    fn map_errors() {
        let ap = fig5();
        assert_eq!(ap.gamma(1), Err(PairError::WrongKind { r: 1, found: Downward, wanted: Upward }));
        assert_eq!(ap.delta(4), Err(PairError::NoSuchCrossing { r: 4, count: 3 }));
        // (e_4, d_3) = (8, 7): d_3 is the upper bound v = 7
        assert_eq!(ap.delta(3), Err(PairError::ImproperCrossing { r: 3 }));
    }

    #[test]
    fn json_round_trip() {
        let ap = fig5();
        let s = serde_json::to_string(&ap).unwrap();
        assert!(s.ends_with(r#""k":0}"#));
        assert_eq!(serde_json::from_str::<ArrayPair>(&s).unwrap(), ap);
        let bad = s.replace(r#""k":0"#, r#""k":1"#);
        assert!(serde_json::from_str::<ArrayPair>(&bad).is_err());
    }

    #[test]
    fn render_marks_both_entries() {
        let text = fig5().render();
        assert_eq!(
            text,
            "(0 | 3 6* | 10] || (2 | 3* 4 7 8* | 8]\n[2 | 2 4* | 7*) || [0 | 2 5 6* 7 | 8)"
        );
    }

    #[test]
    fn detectors_agree_on_path_pairs() {
        let starts = [Point::new(0, 2), Point::new(1, 1), Point::new(2, 0), Point::new(0, 0)];
        let ends = [Point::new(3, 4), Point::new(4, 3), Point::new(4, 4)];
        for &a1 in &starts {
            for &a2 in &starts {
                for &b1 in &ends {
                    for &b2 in &ends {
                        for p in enumerate_paths(a1, b1) {
                            for q in enumerate_paths(a2, b2) {
                                let ap = ArrayPair::encode_pair(&p, &q);
                                let want: Vec<(CrossingKind, Point)> = path_pair_crossings(&p, &q)
                                    .iter()
                                    .map(|c| (c.kind, c.vertex))
                                    .collect();
                                assert_eq!(kinds(&ap), want, "{p} / {q}");
                            }
                        }
                    }
                }
            }
        }
    }

    pub(crate) fn arb_pair() -> impl Strategy<Value = ArrayPair> {
        let bounds = (-2i64..=3, -2i64..=3, 0i64..=5, 0i64..=5);
        (bounds.clone(), bounds).prop_flat_map(|(b1, b2)| {
            let mk = |(x, y, du, dv): (i64, i64, i64, i64)| (x, y, x + du, y + dv);
            let (b1, b2) = (mk(b1), mk(b2));
            let (p1, q1, p2, q2) = (b1.2 - b1.0, b1.3 - b1.1, b2.2 - b2.0, b2.3 - b2.1);
            let mut shapes = Vec::new();
            for k in -2i64..=2 {
                for lc in 0..=p1 {
                    for le in 0..=p2 {
                        if (0..=q1).contains(&(lc + k)) && (0..=q2).contains(&(le - k)) {
                            shapes.push((lc, lc + k, le, le - k));
                        }
                    }
                }
            }
            prop::sample::select(shapes).prop_flat_map(move |(lc, ld, le, lf)| {
                let rows = |lo: i64, hi: i64, len: i64| {
                    prop::sample::subsequence((lo..hi).collect::<Vec<i64>>(), len as usize)
                };
                (
                    rows(b1.0 + 1, b1.2 + 1, lc),
                    rows(b1.1, b1.3, ld),
                    rows(b2.0 + 1, b2.2 + 1, le),
                    rows(b2.1, b2.3, lf),
                )
                    .prop_map(move |(c, d, e, f)| ArrayPair::from_rows(b1, c, d, b2, e, f).unwrap())
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(3000))]

        #[test]
        fn sigma_flips_and_swaps(ap in arb_pair()) {
            let s = ap.sigma();
            prop_assert_eq!(s.k(), -ap.k());
            prop_assert_eq!(s.sigma(), ap.clone());
            let a: Vec<(CrossingKind, Point)> =
                ap.crossings().iter().map(|c| (c.kind.flip(), c.vertex)).collect();
            prop_assert_eq!(kinds(&s), a);
        }

        #[test]
        fn maps_are_involutions(ap in arb_pair()) {
            let before = ap.crossings();
            for cr in &before {
                let r = cr.position;
                let img = match cr.kind { Upward => ap.gamma(r), Downward => ap.delta(r) };
                let Ok(img) = img else { continue };
                prop_assert_eq!(img.entry_sum(), ap.entry_sum());
                let after = img.crossings();
                prop_assert!(after.len() >= r);
                prop_assert_eq!(&before[..r], &after[..r]);
                let want_k = match cr.kind { Upward => -ap.k() - 1, Downward => -ap.k() + 1 };
                prop_assert_eq!(img.k(), want_k);
                let back = match cr.kind { Upward => img.gamma(r), Downward => img.delta(r) };
                prop_assert_eq!(back.unwrap(), ap.clone());
                if cr.kind == Downward {
                    let conj = ap.sigma().gamma(r).map(|g| g.sigma());
                    prop_assert_eq!(conj, Ok(img));
                }
            }
        }
    }
}
