//! Two-rowed arrays: the valley encoding of paths, crossings read off the
//! rows, truncation to a path, and the suffix-swapping maps α, β and ν.
//!
//! Row entries are 1-based in the API (`c_1`, `d_1`, ...). Index 0 and index
//! `len + 1` resolve to the bounds through [`TwoRowedArray::c_at`] and
//! [`TwoRowedArray::d_at`].

use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::paths::{Crossing, CrossingKind, LatticePath, Point, Step};

/// Which bounds govern the rows: `(x,u]/[y,v)` or `(x,v)/[y,u]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Bracket {
    #[serde(rename = "XU_YV")]
    XuYv,
    #[serde(rename = "XV_YU")]
    XvYu,
}

impl Bracket {
    pub fn toggle(self) -> Self {
        match self {
            Bracket::XuYv => Bracket::XvYu,
            Bracket::XvYu => Bracket::XuYv,
        }
    }
}

impl fmt::Display for Bracket {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Bracket::XuYv => "XU_YV",
            Bracket::XvYu => "XV_YU",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ArrayError {
    #[error("upper bounds must not lie below the lower bounds of their rows")]
    InvalidBounds,
    #[error("row {row} violates its bounds or is not strictly increasing")]
    InvalidRow { row: char },
    #[error("rows have lengths {0} and {1}; a path encoding needs equal lengths")]
    ShapeMismatch(usize, usize),
    #[error("only XU_YV arrays encode paths")]
    WrongBracket,
    #[error("crossing {r} does not exist (array has {count})")]
    NoSuchCrossing { r: usize, count: usize },
    #[error("crossing {r} is {found}, not {wanted}")]
    WrongKind { r: usize, found: CrossingKind, wanted: CrossingKind },
    #[error("crossing {r} sits on an upper bound ({value})")]
    ImproperCrossing { r: usize, value: i64 },
    #[error("nu is only defined on XU_YV arrays")]
    UnsupportedBracket,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "ArrayJson", into = "ArrayJson")]
pub struct TwoRowedArray {
    bracket: Bracket,
    x: i64,
    y: i64,
    u: i64,
    v: i64,
    c: Vec<i64>,
    d: Vec<i64>,
}

#[derive(Serialize, Deserialize)]
struct ArrayJson {
    bracket: Bracket,
    x: i64,
    y: i64,
    u: i64,
    v: i64,
    c: Vec<i64>,
    d: Vec<i64>,
}

impl TryFrom<ArrayJson> for TwoRowedArray {
    type Error = ArrayError;
    fn try_from(j: ArrayJson) -> Result<Self, ArrayError> {
        TwoRowedArray::new(j.bracket, j.x, j.y, j.u, j.v, j.c, j.d)
    }
}

impl From<TwoRowedArray> for ArrayJson {
    fn from(a: TwoRowedArray) -> Self {
        ArrayJson { bracket: a.bracket, x: a.x, y: a.y, u: a.u, v: a.v, c: a.c, d: a.d }
    }
}

/// A crossing of a single array, located at entry `c_index` (upward) or
/// `d_index` (downward). Its lattice vertex is `(value, value)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ArrayCrossing {
    pub kind: CrossingKind,
    pub index: usize,
    pub value: i64,
    pub position: usize,
}

impl ArrayCrossing {
    pub fn vertex(&self) -> Point {
        Point::new(self.value, self.value)
    }

    pub fn to_crossing(&self) -> Crossing {
        Crossing { kind: self.kind, vertex: self.vertex(), position: self.position }
    }

    pub fn entry_name(&self) -> String {
        match self.kind {
            CrossingKind::Upward => format!("c_{}", self.index),
            CrossingKind::Downward => format!("d_{}", self.index),
        }
    }
}

/// One step of a bijection trace.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceStep {
    pub map: String,
    pub r: usize,
    pub kind: CrossingKind,
    pub entry: String,
    pub value: i64,
}

impl fmt::Display for TraceStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}_{} acts on {} crossing at {} = {}",
            self.map, self.r, self.kind, self.entry, self.value
        )
    }
}

fn strictly_increasing(row: &[i64]) -> bool {
    row.windows(2).all(|w| w[0] < w[1])
}

impl TwoRowedArray {
    pub fn new(
        bracket: Bracket,
        x: i64,
        y: i64,
        u: i64,
        v: i64,
        c: Vec<i64>,
        d: Vec<i64>,
    ) -> Result<Self, ArrayError> {
        let a = Self { bracket, x, y, u, v, c, d };
        if a.top_upper() < x || a.bottom_upper() < y {
            return Err(ArrayError::InvalidBounds);
        }
        let (top_ok_hi, bottom_ok_hi): (Box<dyn Fn(i64) -> bool>, Box<dyn Fn(i64) -> bool>) =
            match bracket {
                Bracket::XuYv => (Box::new(move |e| e <= u), Box::new(move |e| e < v)),
                Bracket::XvYu => (Box::new(move |e| e < v), Box::new(move |e| e <= u)),
            };
        if !strictly_increasing(&a.c) || !a.c.iter().all(|&e| e > x && top_ok_hi(e)) {
            return Err(ArrayError::InvalidRow { row: 'c' });
        }
        if !strictly_increasing(&a.d) || !a.d.iter().all(|&e| e >= y && bottom_ok_hi(e)) {
            return Err(ArrayError::InvalidRow { row: 'd' });
        }
        Ok(a)
    }

    pub fn bracket(&self) -> Bracket {
        self.bracket
    }

    /// `(x, y, u, v)`.
    pub fn bounds(&self) -> (i64, i64, i64, i64) {
        (self.x, self.y, self.u, self.v)
    }

    pub fn c(&self) -> &[i64] {
        &self.c
    }

    pub fn d(&self) -> &[i64] {
        &self.d
    }

    /// `(len c, len d)`.
    pub fn shape(&self) -> (usize, usize) {
        (self.c.len(), self.d.len())
    }

    /// `n - |k|`, the number of valleys kept by truncation.
    pub fn min_len(&self) -> usize {
        self.c.len().min(self.d.len())
    }

    pub fn top_upper(&self) -> i64 {
        match self.bracket {
            Bracket::XuYv => self.u,
            Bracket::XvYu => self.v,
        }
    }

    pub fn bottom_upper(&self) -> i64 {
        match self.bracket {
            Bracket::XuYv => self.v,
            Bracket::XvYu => self.u,
        }
    }

    /// `c_i` with `c_0 = x` and `c_{len+1}` the top row's upper bound.
    pub fn c_at(&self, i: usize) -> i64 {
        match i {
            0 => self.x,
            i if i <= self.c.len() => self.c[i - 1],
            i if i == self.c.len() + 1 => self.top_upper(),
            _ => panic!("c_{i} is out of range"),
        }
    }

    /// `d_i` with `d_0 = y` and `d_{len+1}` the bottom row's upper bound.
    pub fn d_at(&self, i: usize) -> i64 {
        match i {
            0 => self.y,
            i if i <= self.d.len() => self.d[i - 1],
            i if i == self.d.len() + 1 => self.bottom_upper(),
            _ => panic!("d_{i} is out of range"),
        }
    }

    pub fn entry_sum(&self) -> i64 {
        self.c.iter().sum::<i64>() + self.d.iter().sum::<i64>()
    }

    /// Whether `d_1 = y`, the extra constraint written `⟦y, ·)`.
    pub fn starts_on_y(&self) -> bool {
        self.d.first() == Some(&self.y)
    }

    /// Valley encoding of a monotone path.
    pub fn encode_path(p: &LatticePath) -> Self {
        let (s, e) = (p.start(), p.end());
        let valleys = p.valleys();
        Self {
            bracket: Bracket::XuYv,
            x: s.x,
            y: s.y,
            u: e.x,
            v: e.y,
            c: valleys.iter().map(|q| q.x).collect(),
            d: valleys.iter().map(|q| q.y).collect(),
        }
    }

    /// The path whose valleys are `(c_i, d_i)`.
    pub fn decode(&self) -> Result<LatticePath, ArrayError> {
        if self.bracket != Bracket::XuYv {
            return Err(ArrayError::WrongBracket);
        }
        if self.c.len() != self.d.len() {
            return Err(ArrayError::ShapeMismatch(self.c.len(), self.d.len()));
        }
        Ok(self.truncate())
    }

    /// Path from `(x, y)` to `(c_{m+1}, d_{m+1})` with valleys `(c_i, d_i)`,
    /// `i <= m`, where `m` is the shorter row length.
    pub fn truncate(&self) -> LatticePath {
        let m = self.min_len();
        let mut steps = Vec::new();
        for i in 1..=m + 1 {
            let up = self.d_at(i) - self.d_at(i - 1);
            let right = self.c_at(i) - self.c_at(i - 1);
            steps.extend(std::iter::repeat_n(Step::N, up.max(0) as usize));
            steps.extend(std::iter::repeat_n(Step::E, right.max(0) as usize));
        }
        LatticePath::new(Point::new(self.x, self.y), steps)
    }

    /// Crossings in the entry order `y, x, d_1, c_1, d_2, c_2, ...`.
    pub fn crossings(&self) -> Vec<ArrayCrossing> {
        let m = self.min_len();
        let mut out = Vec::new();
        for i in 0..=m + 1 {
            if i >= 1 && self.c_at(i - 1) < self.d_at(i) && self.d_at(i) < self.c_at(i)
                || self.on_flat_corner(i)
            {
                out.push(ArrayCrossing {
                    kind: CrossingKind::Downward,
                    index: i,
                    value: self.d_at(i),
                    position: out.len() + 1,
                });
            }
            if i <= m && self.d_at(i) < self.c_at(i) && self.c_at(i) < self.d_at(i + 1) {
                out.push(ArrayCrossing {
                    kind: CrossingKind::Upward,
                    index: i,
                    value: self.c_at(i),
                    position: out.len() + 1,
                });
            }
        }
        out
    }

    /// In `(x,v)/[y,u]` with `d_i = u` the last kept valley is not a valley:
    /// `Tr` runs straight through `(c_i, u)`. When also `c_i = u` that vertex
    /// is a downward crossing which the strict inequalities miss.
    fn on_flat_corner(&self, i: usize) -> bool {
        self.bracket == Bracket::XvYu
            && i >= 1
            && i == self.d.len()
            && i <= self.c.len()
            && self.d[i - 1] == self.u
            && self.c[i - 1] == self.u
    }

    fn crossing_for(&self, r: usize, wanted: CrossingKind) -> Result<ArrayCrossing, ArrayError> {
        let cs = self.crossings();
        let cr = match r.checked_sub(1).and_then(|i| cs.get(i)) {
            Some(c) => *c,
            None => return Err(ArrayError::NoSuchCrossing { r, count: cs.len() }),
        };
        if cr.kind != wanted {
            return Err(ArrayError::WrongKind { r, found: cr.kind, wanted });
        }
        if cr.value == self.u || cr.value == self.v {
            return Err(ArrayError::ImproperCrossing { r, value: cr.value });
        }
        Ok(cr)
    }

    fn rebuilt(&self, c: Vec<i64>, d: Vec<i64>) -> Self {
        let out = Self { bracket: self.bracket.toggle(), c, d, ..*self };
        debug_assert!(
            Self::new(out.bracket, out.x, out.y, out.u, out.v, out.c.clone(), out.d.clone()).is_ok()
        );
        out
    }

    /// α_r: at the r-th crossing, upward at `c_i`, swap the parts of the two
    /// rows to the right of `c_i` and `d_i`.
    pub fn alpha(&self, r: usize) -> Result<Self, ArrayError> {
        let cr = self.crossing_for(r, CrossingKind::Upward)?;
        let i = cr.index;
        let c = [&self.c[..i], &self.d[i..]].concat();
        let d = [&self.d[..i], &self.c[i..]].concat();
        Ok(self.rebuilt(c, d))
    }

    /// β_r: at the r-th crossing, downward at `d_i`, swap the part of the top
    /// row from `c_i` on with the part of the bottom row after `d_i`.
    pub fn beta(&self, r: usize) -> Result<Self, ArrayError> {
        let cr = self.crossing_for(r, CrossingKind::Downward)?;
        let i = cr.index;
        let c = [&self.c[..i - 1], &self.d[i..]].concat();
        let d = [&self.d[..i], &self.c[i - 1..]].concat();
        Ok(self.rebuilt(c, d))
    }

    /// ν: negate, reverse, and exchange the rows.
    pub fn nu(&self) -> Result<Self, ArrayError> {
        if self.bracket != Bracket::XuYv {
            return Err(ArrayError::UnsupportedBracket);
        }
        Ok(Self {
            bracket: Bracket::XuYv,
            x: -self.v,
            y: -self.u,
            u: -self.y,
            v: -self.x,
            c: self.d.iter().rev().map(|e| -e).collect(),
            d: self.c.iter().rev().map(|e| -e).collect(),
        })
    }

    /// Applies α_s or β_s, whichever matches the kind of crossing `s`, for
    /// `s = r, r-1, ..., 1`.
    pub fn unwind(&self, r: usize) -> Result<(Self, Vec<TraceStep>), ArrayError> {
        let mut cur = self.clone();
        let mut trace = Vec::new();
        for s in (1..=r).rev() {
            let cs = cur.crossings();
            let cr = *cs.get(s - 1).ok_or(ArrayError::NoSuchCrossing { r: s, count: cs.len() })?;
            let (next, map) = match cr.kind {
                CrossingKind::Upward => (cur.alpha(s)?, "alpha"),
                CrossingKind::Downward => (cur.beta(s)?, "beta"),
            };
            trace.push(TraceStep {
                map: map.into(),
                r: s,
                kind: cr.kind,
                entry: cr.entry_name(),
                value: cr.value,
            });
            cur = next;
        }
        Ok((cur, trace))
    }

    /// Every array with the given bracket, bounds and row lengths.
    pub fn enumerate(
        bracket: Bracket,
        (x, y, u, v): (i64, i64, i64, i64),
        len_c: usize,
        len_d: usize,
    ) -> Vec<Self> {
        let (top_hi, bottom_hi) = match bracket {
            Bracket::XuYv => (u, v - 1),
            Bracket::XvYu => (v - 1, u),
        };
        let tops: Vec<Vec<i64>> = (x + 1..=top_hi).combinations(len_c).collect();
        let bottoms: Vec<Vec<i64>> = (y..=bottom_hi).combinations(len_d).collect();
        let mut out = Vec::with_capacity(tops.len() * bottoms.len());
        for c in &tops {
            for d in &bottoms {
                out.push(Self { bracket, x, y, u, v, c: c.clone(), d: d.clone() });
            }
        }
        out
    }

    /// Two-line display in the bracket notation; entries that are crossings
    /// carry a `*`.
    pub fn render(&self) -> String {
        let cs = self.crossings();
        let mark = |kind: CrossingKind, i: usize, e: i64| {
            if cs.iter().any(|c| c.kind == kind && c.index == i) {
                format!("{e}*")
            } else {
                e.to_string()
            }
        };
        let top: Vec<String> =
            self.c.iter().enumerate().map(|(i, &e)| mark(CrossingKind::Upward, i + 1, e)).collect();
        let bottom: Vec<String> = self
            .d
            .iter()
            .enumerate()
            .map(|(i, &e)| mark(CrossingKind::Downward, i + 1, e))
            .collect();
        let x = mark(CrossingKind::Upward, 0, self.x);
        let (tc, bc) = match self.bracket {
            Bracket::XuYv => (']', ')'),
            Bracket::XvYu => (')', ']'),
        };
        let last_d = self.d.len() + 1;
        let d_end = mark(CrossingKind::Downward, last_d, self.bottom_upper());
        format!(
            "({} | {} | {}{}\n[{} | {} | {}{}",
            x,
            top.join(" "),
            self.top_upper(),
            tc,
            self.y,
            bottom.join(" "),
            d_end,
            bc
        )
    }
}

impl fmt::Display for TwoRowedArray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (tc, bc) = match self.bracket {
            Bracket::XuYv => (']', ')'),
            Bracket::XvYu => (')', ']'),
        };
        write!(
            f,
            "({}, {:?}, {}{} / [{}, {:?}, {}{}",
            self.x,
            self.c,
            self.top_upper(),
            tc,
            self.y,
            self.d,
            self.bottom_upper(),
            bc
        )
    }
}
