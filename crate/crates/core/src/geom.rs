//! Exact planar primitives: points, quadrant cones, diagonal lines, squares
//! and the eight symmetries of the square.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub x: Rational,
    pub y: Rational,
}

impl Point {
    pub fn new(x: Rational, y: Rational) -> Self {
        Point { x, y }
    }

    pub fn int(x: i64, y: i64) -> Self {
        Point::new(Rational::from_int(x), Rational::from_int(y))
    }

    pub fn parse(x: &str, y: &str) -> Result<Self> {
        Ok(Point::new(x.parse()?, y.parse()?))
    }

    pub fn sum(&self) -> Rational {
        &self.x + &self.y
    }

    pub fn diff(&self) -> Rational {
        &self.x - &self.y
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.x.to_f64(), self.y.to_f64())
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// The four directions a pair of points may not share.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Degeneracy {
    SameX,
    SameY,
    /// Both points on one line of slope −1.
    SameSum,
    /// Both points on one line of slope +1.
    SameDiff,
}

impl fmt::Display for Degeneracy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Degeneracy::SameX => "an x-coordinate",
            Degeneracy::SameY => "a y-coordinate",
            Degeneracy::SameSum => "an x+y value",
            Degeneracy::SameDiff => "an x-y value",
        })
    }
}

pub fn degeneracy(p: &Point, q: &Point) -> Option<Degeneracy> {
    if p.x == q.x {
        Some(Degeneracy::SameX)
    } else if p.y == q.y {
        Some(Degeneracy::SameY)
    } else if p.sum() == q.sum() {
        Some(Degeneracy::SameSum)
    } else if p.diff() == q.diff() {
        Some(Degeneracy::SameDiff)
    } else {
        None
    }
}

/// A point set in general position; ids are indices into `points`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointSet {
    points: Vec<Point>,
}

impl PointSet {
    /// Validates general position. Sorting each of the four keys finds a
    /// colliding pair in O(n log n).
    pub fn new(points: Vec<Point>) -> Result<Self> {
        if let Some((a, b, direction)) = find_degenerate_pair(&points) {
            return Err(Error::InvalidPointSet { a, b, direction });
        }
        Ok(PointSet { points })
    }

    /// Skips validation; callers must guarantee general position.
    pub fn new_unchecked(points: Vec<Point>) -> Self {
        PointSet { points }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn point(&self, id: usize) -> &Point {
        &self.points[id]
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn iter(&self) -> impl Iterator<Item = &Point> {
        self.points.iter()
    }

    pub fn into_points(self) -> Vec<Point> {
        self.points
    }
}

impl std::ops::Index<usize> for PointSet {
    type Output = Point;
    fn index(&self, id: usize) -> &Point {
        &self.points[id]
    }
}

pub fn find_degenerate_pair(points: &[Point]) -> Option<(usize, usize, Degeneracy)> {
    let keys: [(Degeneracy, fn(&Point) -> Rational); 4] = [
        (Degeneracy::SameX, |p| p.x.clone()),
        (Degeneracy::SameY, |p| p.y.clone()),
        (Degeneracy::SameSum, Point::sum),
        (Degeneracy::SameDiff, Point::diff),
    ];
    let mut found: Option<(usize, usize, Degeneracy)> = None;
    for (direction, key) in keys {
        let mut order: Vec<(Rational, usize)> =
            points.iter().enumerate().map(|(i, p)| (key(p), i)).collect();
        order.sort();
        for w in order.windows(2) {
            if w[0].0 == w[1].0 {
                let pair = (w[0].1.min(w[1].1), w[0].1.max(w[1].1), direction);
                // Report the lexicographically smallest pair for stable diagnostics.
                if found.as_ref().is_none_or(|f| (pair.0, pair.1) < (f.0, f.1)) {
                    found = Some(pair);
                }
            }
        }
        if found.is_some() {
            return found;
        }
    }
    None
}

/// Index of a cone around its apex. For θ₄: 0 bottom-right, 1 top-right,
/// 2 top-left, 3 bottom-left.
pub type ConeIndex = usize;

pub fn cone_of(p: &Point, q: &Point) -> Result<ConeIndex> {
    if let Some(d) = degeneracy(p, q) {
        return Err(Error::DegeneratePair(p.to_string(), q.to_string(), d));
    }
    Ok(quadrant(p, q))
}

/// Quadrant of `q` around `p`, assuming distinct x and y coordinates.
pub(crate) fn quadrant(p: &Point, q: &Point) -> ConeIndex {
    match (q.x > p.x, q.y > p.y) {
        (true, false) => 0,
        (true, true) => 1,
        (false, true) => 2,
        (false, false) => 3,
    }
}

/// Bisector projection scaled by √2, which for quadrant cones is the L1 distance.
pub fn cone_distance(p: &Point, q: &Point) -> Result<Rational> {
    cone_of(p, q)?;
    Ok(l1(p, q))
}

pub fn l1(p: &Point, q: &Point) -> Rational {
    (&p.x - &q.x).abs() + (&p.y - &q.y).abs()
}

pub fn linf(p: &Point, q: &Point) -> Rational {
    Rational::max_of(&(&p.x - &q.x).abs(), &(&p.y - &q.y).abs())
}

pub fn euclid(p: &Point, q: &Point) -> f64 {
    let dx = (&p.x - &q.x).to_f64();
    let dy = (&p.y - &q.y).to_f64();
    dx.hypot(dy)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Slope {
    Plus,
    Minus,
}

/// A line of slope ±1 through `anchor`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagonalLine {
    pub anchor: Point,
    pub slope: Slope,
}

impl DiagonalLine {
    pub fn plus(anchor: &Point) -> Self {
        DiagonalLine { anchor: anchor.clone(), slope: Slope::Plus }
    }

    pub fn minus(anchor: &Point) -> Self {
        DiagonalLine { anchor: anchor.clone(), slope: Slope::Minus }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Above,
    Below,
    On,
}

pub fn side_of_diagonal(line: &DiagonalLine, q: &Point) -> Side {
    let a = &line.anchor;
    let v = match line.slope {
        Slope::Minus => q.sum() - a.sum(),
        Slope::Plus => (&q.y - &q.x) - (&a.y - &a.x),
    };
    match v.signum() {
        std::cmp::Ordering::Greater => Side::Above,
        std::cmp::Ordering::Less => Side::Below,
        std::cmp::Ordering::Equal => Side::On,
    }
}

/// Strictly above ℓ⁻ through `t`.
pub fn above_minus(q: &Point, t: &Point) -> bool {
    q.sum() > t.sum()
}

/// Strictly above ℓ⁺ through `t`.
pub fn above_plus(q: &Point, t: &Point) -> bool {
    q.diff() < t.diff()
}

/// Axis-aligned closed square.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Square {
    pub center: Point,
    pub half_side: Rational,
}

impl Square {
    pub fn new(center: Point, half_side: Rational) -> Self {
        assert!(!half_side.is_negative(), "negative half side");
        Square { center, half_side }
    }

    /// The square `[x0, x0 + side] x [y0, y0 + side]`.
    pub fn from_corner(x0: &Rational, y0: &Rational, side: &Rational) -> Self {
        let h = side.half();
        Square::new(Point::new(x0 + &h, y0 + &h), h)
    }

    pub fn side(&self) -> Rational {
        &self.half_side + &self.half_side
    }

    pub fn min_x(&self) -> Rational {
        &self.center.x - &self.half_side
    }

    pub fn max_x(&self) -> Rational {
        &self.center.x + &self.half_side
    }

    pub fn min_y(&self) -> Rational {
        &self.center.y - &self.half_side
    }

    pub fn max_y(&self) -> Rational {
        &self.center.y + &self.half_side
    }

    pub fn contains(&self, q: &Point) -> bool {
        linf(q, &self.center) <= self.half_side
    }

    pub fn contains_interior(&self, q: &Point) -> bool {
        linf(q, &self.center) < self.half_side
    }

    pub fn on_boundary(&self, q: &Point) -> bool {
        linf(q, &self.center) == self.half_side
    }

    pub fn contains_square(&self, other: &Square) -> bool {
        self.min_x() <= other.min_x()
            && other.max_x() <= self.max_x()
            && self.min_y() <= other.min_y()
            && other.max_y() <= self.max_y()
    }

    /// Sides of the boundary the point lies on.
    pub fn sides_of(&self, q: &Point) -> Vec<SquareSide> {
        let mut out = Vec::new();
        if !self.contains(q) {
            return out;
        }
        if q.x == self.min_x() {
            out.push(SquareSide::Left);
        }
        if q.x == self.max_x() {
            out.push(SquareSide::Right);
        }
        if q.y == self.min_y() {
            out.push(SquareSide::Bottom);
        }
        if q.y == self.max_y() {
            out.push(SquareSide::Top);
        }
        out
    }

    pub fn corner(&self, c: Corner) -> Point {
        match c {
            Corner::BottomLeft => Point::new(self.min_x(), self.min_y()),
            Corner::BottomRight => Point::new(self.max_x(), self.min_y()),
            Corner::TopLeft => Point::new(self.min_x(), self.max_y()),
            Corner::TopRight => Point::new(self.max_x(), self.max_y()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SquareSide {
    Left,
    Right,
    Bottom,
    Top,
}

impl SquareSide {
    pub fn opposite(self) -> SquareSide {
        match self {
            SquareSide::Left => SquareSide::Right,
            SquareSide::Right => SquareSide::Left,
            SquareSide::Bottom => SquareSide::Top,
            SquareSide::Top => SquareSide::Bottom,
        }
    }

    pub fn is_vertical(self) -> bool {
        matches!(self, SquareSide::Left | SquareSide::Right)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Corner {
    BottomLeft,
    BottomRight,
    TopLeft,
    TopRight,
}

impl Corner {
    /// The corner shared by a vertical and a horizontal side.
    pub fn between(a: SquareSide, b: SquareSide) -> Option<Corner> {
        use SquareSide::*;
        let (v, h) = match (a.is_vertical(), b.is_vertical()) {
            (true, false) => (a, b),
            (false, true) => (b, a),
            _ => return None,
        };
        Some(match (v, h) {
            (Left, Bottom) => Corner::BottomLeft,
            (Left, Top) => Corner::TopLeft,
            (Right, Bottom) => Corner::BottomRight,
            (Right, Top) => Corner::TopRight,
            _ => unreachable!(),
        })
    }
}

/// S_t(s): the smallest axis-aligned square centered at `t` containing `s`.
pub fn smallest_centered_square(t: &Point, s: &Point) -> Square {
    Square::new(t.clone(), linf(t, s))
}

/// Smallest axis-aligned square with `t` as a corner that contains `s`.
pub fn corner_square(t: &Point, s: &Point) -> Square {
    let side = linf(t, s);
    let x0 = if s.x > t.x { t.x.clone() } else { &t.x - &side };
    let y0 = if s.y > t.y { t.y.clone() } else { &t.y - &side };
    Square::from_corner(&x0, &y0, &side)
}

/// One of the eight symmetries of the square, acting about `anchor`.
///
/// The linear part is `R^rotation ∘ F^reflected`, where `F` swaps the
/// coordinates (reflection across the slope +1 line) and `R` is a quarter
/// turn clockwise, `(x, y) -> (y, -x)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Frame {
    pub rotation: u8,
    pub reflected: bool,
    pub anchor: Point,
}

impl Frame {
    pub fn identity(anchor: &Point) -> Self {
        Frame { rotation: 0, reflected: false, anchor: anchor.clone() }
    }

    pub fn new(rotation: u8, reflected: bool, anchor: &Point) -> Self {
        Frame { rotation: rotation % 4, reflected, anchor: anchor.clone() }
    }

    /// All eight group elements in a fixed order: index `rotation + 4 * reflected`.
    pub fn all(anchor: &Point) -> [Frame; 8] {
        std::array::from_fn(|i| Frame::new((i % 4) as u8, i >= 4, anchor))
    }

    pub fn is_identity(&self) -> bool {
        self.rotation == 0 && !self.reflected
    }

    pub fn apply(&self, p: &Point) -> Point {
        let (mut dx, mut dy) = (&p.x - &self.anchor.x, &p.y - &self.anchor.y);
        if self.reflected {
            std::mem::swap(&mut dx, &mut dy);
        }
        for _ in 0..self.rotation {
            let nx = dy;
            dy = -dx;
            dx = nx;
        }
        Point::new(&self.anchor.x + &dx, &self.anchor.y + &dy)
    }

    pub fn inverse(&self) -> Frame {
        if self.reflected {
            self.clone()
        } else {
            Frame::new((4 - self.rotation) % 4, false, &self.anchor)
        }
    }

    /// `self ∘ inner`: apply `inner` first. Both frames must share an anchor.
    pub fn compose(&self, inner: &Frame) -> Frame {
        assert_eq!(self.anchor, inner.anchor, "frames with different anchors");
        let b = inner.rotation as i32;
        let turned = if self.reflected { -b } else { b };
        let rotation = (self.rotation as i32 + turned).rem_euclid(4) as u8;
        Frame::new(rotation, self.reflected ^ inner.reflected, &self.anchor)
    }

    /// The image under this frame of cone `c`: if `q ∈ C_c(p)` then
    /// `apply(q) ∈ C_{map_cone(c)}(apply(p))`.
    pub fn map_cone(&self, c: ConeIndex) -> ConeIndex {
        let c = c as i32;
        let c = if self.reflected { 2 - c } else { c };
        (c - self.rotation as i32).rem_euclid(4) as ConeIndex
    }

    pub fn unmap_cone(&self, c: ConeIndex) -> ConeIndex {
        self.inverse().map_cone(c)
    }
}

pub fn apply_frame(f: &Frame, points: &PointSet) -> PointSet {
    // The forbidden directions are permuted among themselves, so general
    // position survives.
    PointSet::new_unchecked(points.iter().map(|p| f.apply(p)).collect())
}

pub fn unapply_frame(f: &Frame, path: &[Point]) -> Vec<Point> {
    let inv = f.inverse();
    path.iter().map(|p| inv.apply(p)).collect()
}
