//! Monotone lattice paths, their descent statistics, and crossing detection.
//!
//! Paths are stored as a start point and an N/E step word. A U/D word is read
//! with U = N and D = E; the flag is kept only so the path prints back the way
//! it was entered.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub x: i64,
    pub y: i64,
}

impl Point {
    pub const fn new(x: i64, y: i64) -> Self {
        Self { x, y }
    }

    /// Strictly northwest of `other`: smaller x, larger y.
    pub fn precedes(self, other: Point) -> bool {
        self.x < other.x && self.y > other.y
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

impl Serialize for Point {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        [self.x, self.y].serialize(s)
    }
}

impl<'de> Deserialize<'de> for Point {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let [x, y] = <[i64; 2]>::deserialize(d)?;
        Ok(Point { x, y })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Step {
    N,
    E,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CrossingKind {
    Upward,
    Downward,
}

impl CrossingKind {
    pub fn flip(self) -> Self {
        match self {
            CrossingKind::Upward => CrossingKind::Downward,
            CrossingKind::Downward => CrossingKind::Upward,
        }
    }
}

impl fmt::Display for CrossingKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CrossingKind::Upward => "upward",
            CrossingKind::Downward => "downward",
        })
    }
}

/// A crossing located at a lattice vertex. `position` counts from 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Crossing {
    pub kind: CrossingKind,
    pub vertex: Point,
    pub position: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct PathStats {
    pub des: usize,
    pub maj: usize,
    pub peaks: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PathError {
    #[error("step word mixes the N/E and U/D alphabets")]
    MixedAlphabet,
    #[error("invalid step {0:?}")]
    InvalidStep(char),
}

#[derive(Clone)]
pub struct LatticePath {
    start: Point,
    steps: Vec<Step>,
    ud: bool,
}

impl PartialEq for LatticePath {
    fn eq(&self, other: &Self) -> bool {
        self.start == other.start && self.steps == other.steps
    }
}

impl Eq for LatticePath {}

impl std::hash::Hash for LatticePath {
    fn hash<H: std::hash::Hasher>(&self, h: &mut H) {
        self.start.hash(h);
        self.steps.hash(h);
    }
}

impl fmt::Debug for LatticePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LatticePath({} {})", self.start, self.word())
    }
}

impl fmt::Display for LatticePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.start, self.word())
    }
}

/// Parses an N/E or U/D word into a path starting at `start`.
pub fn parse_path(word: &str, start: Point) -> Result<LatticePath, PathError> {
    let (mut ne, mut ud) = (false, false);
    let mut steps = Vec::with_capacity(word.len());
    for ch in word.chars() {
        let step = match ch {
            'N' => {
                ne = true;
                Step::N
            }
            'E' => {
                ne = true;
                Step::E
            }
            'U' => {
                ud = true;
                Step::N
            }
            'D' => {
                ud = true;
                Step::E
            }
            other => return Err(PathError::InvalidStep(other)),
        };
        steps.push(step);
    }
    if ne && ud {
        return Err(PathError::MixedAlphabet);
    }
    Ok(LatticePath { start, steps, ud })
}

impl LatticePath {
    pub fn new(start: Point, steps: Vec<Step>) -> Self {
        Self { start, steps, ud: false }
    }

    pub fn empty(start: Point) -> Self {
        Self::new(start, Vec::new())
    }

    pub fn start(&self) -> Point {
        self.start
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn is_ud(&self) -> bool {
        self.ud
    }

    /// The same path, displayed in the U/D alphabet.
    pub fn as_ud(&self) -> Self {
        Self { ud: true, ..self.clone() }
    }

    pub fn end(&self) -> Point {
        let n = self.steps.iter().filter(|s| **s == Step::N).count() as i64;
        let e = self.steps.len() as i64 - n;
        Point::new(self.start.x + e, self.start.y + n)
    }

    pub fn vertices(&self) -> Vec<Point> {
        let mut v = Vec::with_capacity(self.steps.len() + 1);
        let mut p = self.start;
        v.push(p);
        for s in &self.steps {
            match s {
                Step::N => p.y += 1,
                Step::E => p.x += 1,
            }
            v.push(p);
        }
        v
    }

    /// Step word in the alphabet the path was entered with.
    pub fn word(&self) -> String {
        self.steps
            .iter()
            .map(|s| match (s, self.ud) {
                (Step::N, false) => 'N',
                (Step::E, false) => 'E',
                (Step::N, true) => 'U',
                (Step::E, true) => 'D',
            })
            .collect()
    }

    pub fn ne_word(&self) -> String {
        self.steps.iter().map(|s| if *s == Step::N { 'N' } else { 'E' }).collect()
    }

    pub fn stats(&self) -> PathStats {
        let mut st = PathStats::default();
        for i in 1..self.steps.len() {
            match (self.steps[i - 1], self.steps[i]) {
                (Step::E, Step::N) => {
                    st.des += 1;
                    st.maj += i;
                }
                (Step::N, Step::E) => st.peaks += 1,
                _ => {}
            }
        }
        st
    }

    /// Valley vertices (preceded by E, followed by N), left to right.
    pub fn valleys(&self) -> Vec<Point> {
        let v = self.vertices();
        (1..self.steps.len())
            .filter(|&i| self.steps[i - 1] == Step::E && self.steps[i] == Step::N)
            .map(|i| v[i])
            .collect()
    }

    /// Crossings of the horizontal line at height `ell`, reading the path as a
    /// U/D walk that starts at height 0. Vertices are reported as
    /// `(step index, height)`.
    pub fn line_crossings(&self, ell: i64) -> Vec<Crossing> {
        let mut out = Vec::new();
        let mut h = 0i64;
        for i in 1..self.steps.len() {
            h += if self.steps[i - 1] == Step::N { 1 } else { -1 };
            if h != ell || self.steps[i - 1] != self.steps[i] {
                continue;
            }
            let kind = if self.steps[i] == Step::N {
                CrossingKind::Upward
            } else {
                CrossingKind::Downward
            };
            out.push(Crossing { kind, vertex: Point::new(i as i64, h), position: out.len() + 1 });
        }
        out
    }

    /// Reads the U/D walk as an N/E path from `(ell, 0)`; crossings of the
    /// line `y = ell` become crossings of the diagonal `y = x`.
    pub fn to_diagonal(&self, ell: i64) -> LatticePath {
        LatticePath::new(Point::new(ell, 0), self.steps.clone())
    }

    /// Vertices on `y = x` entered and left by the same step type.
    pub fn diagonal_crossings(&self) -> Vec<Crossing> {
        let v = self.vertices();
        let mut out = Vec::new();
        for i in 1..self.steps.len() {
            if v[i].x != v[i].y || self.steps[i - 1] != self.steps[i] {
                continue;
            }
            let kind = if self.steps[i] == Step::N {
                CrossingKind::Upward
            } else {
                CrossingKind::Downward
            };
            out.push(Crossing { kind, vertex: v[i], position: out.len() + 1 });
        }
        out
    }
}

/// Walks both paths in lockstep by antidiagonal and reports each crossing
/// vertex together with the step `p` takes out of it.
fn scan_pair(p: &LatticePath, q: &LatticePath, mut emit: impl FnMut(CrossingKind, Point)) {
    let offset = (p.start.x + p.start.y) - (q.start.x + q.start.y);
    let (lp, lq) = (p.steps.len() as i64, q.steps.len() as i64);
    let lo = 0.max(-offset);
    let hi = lp.min(lq - offset);
    if lo > hi {
        return;
    }
    let advance = |pt: &mut Point, s: Step| match s {
        Step::N => pt.y += 1,
        Step::E => pt.x += 1,
    };
    let mut pp = p.start;
    for s in &p.steps[..lo as usize] {
        advance(&mut pp, *s);
    }
    let mut qp = q.start;
    for s in &q.steps[..(lo + offset) as usize] {
        advance(&mut qp, *s);
    }
    let mut run_start: Option<i64> = None;
    for i in lo..=hi {
        let j = i + offset;
        let common = pp == qp;
        if common && run_start.is_none() {
            run_start = Some(i);
        }
        let run_ends = common && (i == hi || {
            let mut np = pp;
            let mut nq = qp;
            advance(&mut np, p.steps[i as usize]);
            advance(&mut nq, q.steps[j as usize]);
            np != nq
        });
        if run_ends {
            let i1 = run_start.take().unwrap();
            let j1 = i1 + offset;
            let interior = |a: i64, len: i64| a > 0 && a < len;
            if interior(i1, lp) && interior(i, lp) && interior(j1, lq) && interior(j, lq) {
                let ps = &p.steps;
                let qs = &q.steps;
                if ps[(i1 - 1) as usize] == ps[i as usize] && qs[(j1 - 1) as usize] == qs[j as usize] {
                    let kind = if ps[i as usize] == Step::N {
                        CrossingKind::Upward
                    } else {
                        CrossingKind::Downward
                    };
                    emit(kind, pp);
                }
            }
        }
        if i < hi {
            advance(&mut pp, p.steps[i as usize]);
            advance(&mut qp, q.steps[j as usize]);
        }
    }
}

/// Crossings of the pair `(p, q)`, left to right. A crossing is upward when
/// `p` leaves it with an N step.
pub fn pair_crossings(p: &LatticePath, q: &LatticePath) -> Vec<Crossing> {
    let mut out = Vec::new();
    scan_pair(p, q, |kind, vertex| {
        out.push(Crossing { kind, vertex, position: out.len() + 1 })
    });
    out
}

pub fn pair_crossing_count(p: &LatticePath, q: &LatticePath) -> usize {
    let mut n = 0;
    scan_pair(p, q, |_, _| n += 1);
    n
}

/// All monotone paths from `a` to `b` in lexicographic order of the step
/// word with N before E. Empty when `b` is not weakly northeast of `a`.
pub fn enumerate_paths(a: Point, b: Point) -> PathIter {
    let (dx, dy) = (b.x - a.x, b.y - a.y);
    let word = if dx < 0 || dy < 0 {
        None
    } else {
        let mut w = vec![Step::N; dy as usize];
        w.extend(std::iter::repeat_n(Step::E, dx as usize));
        Some(w)
    };
    PathIter { start: a, word }
}

pub struct PathIter {
    start: Point,
    word: Option<Vec<Step>>,
}

impl Iterator for PathIter {
    type Item = LatticePath;

    fn next(&mut self) -> Option<LatticePath> {
        let w = self.word.as_mut()?;
        let out = LatticePath::new(self.start, w.clone());
        let i = (0..w.len().saturating_sub(1)).rev().find(|&i| w[i] < w[i + 1]);
        match i {
            None => self.word = None,
            Some(i) => {
                let j = (i + 1..w.len()).rev().find(|&j| w[j] > w[i]).unwrap();
                w.swap(i, j);
                w[i + 1..].reverse();
            }
        }
        Some(out)
    }
}

#[derive(Serialize, Deserialize)]
struct PathJson {
    start: Point,
    steps: String,
}

impl Serialize for LatticePath {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        PathJson { start: self.start, steps: self.word() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for LatticePath {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = PathJson::deserialize(d)?;
        parse_path(&raw.steps, raw.start).map_err(serde::de::Error::custom)
    }
}
