//! Empty maximal spaces: priority order and the difference process that
//! keeps a container's free-space list maximal after each placement.

use std::cmp::Ordering;

use super::{Placement, Point};
use crate::model::{ContainerSpec, Dims};

/// An axis-aligned empty maximal space inside one container, as the pair
/// of its minimum and maximum vertices. Extent is strictly positive in
/// every axis.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Ems {
    pub container_id: usize,
    pub min: Point,
    pub max: Point,
}

impl Ems {
    pub fn new(container_id: usize, min: Point, max: Point) -> Self {
        debug_assert!(min.x < max.x && min.y < max.y && min.z < max.z);
        Ems {
            container_id,
            min,
            max,
        }
    }

    pub fn extents(&self) -> Dims {
        Dims::new(
            self.max.x - self.min.x,
            self.max.y - self.min.y,
            self.max.z - self.min.z,
        )
    }

    pub fn volume(&self) -> i64 {
        self.extents().volume()
    }

    /// Open-interval intersection test against a placed box.
    pub fn intersects(&self, p: &Placement) -> bool {
        let pmax = p.max_corner();
        self.min.x < pmax.x
            && p.position.x < self.max.x
            && self.min.y < pmax.y
            && p.position.y < self.max.y
            && self.min.z < pmax.z
            && p.position.z < self.max.z
    }

    /// True iff `other` lies entirely inside this space.
    pub fn contains(&self, other: &Ems) -> bool {
        self.min.x <= other.min.x
            && self.min.y <= other.min.y
            && self.min.z <= other.min.z
            && other.max.x <= self.max.x
            && other.max.y <= self.max.y
            && other.max.z <= self.max.z
    }
}

/// The single maximal space of an empty container.
pub fn initial_ems(c: &ContainerSpec) -> Ems {
    Ems::new(
        c.id,
        Point::new(0, 0, 0),
        Point::new(c.dims.l, c.dims.w, c.dims.h),
    )
}

/// Priority order between spaces: the ascending-sorted min-vertex triples
/// compare lexicographically, smaller first. Remaining ties break by
/// container id, then min vertex, then max vertex, making the order total
/// on distinct spaces.
pub fn ems_priority_cmp(a: &Ems, b: &Ems) -> Ordering {
    let ka = sorted_triple(a.min);
    let kb = sorted_triple(b.min);
    ka.cmp(&kb)
        .then_with(|| a.container_id.cmp(&b.container_id))
        .then_with(|| point_lex(a.min, b.min))
        .then_with(|| point_lex(a.max, b.max))
}

fn sorted_triple(p: Point) -> [i64; 3] {
    let mut v = [p.x, p.y, p.z];
    v.sort_unstable();
    v
}

fn point_lex(a: Point, b: Point) -> Ordering {
    (a.x, a.y, a.z).cmp(&(b.x, b.y, b.z))
}

/// Splits a space against a placed box: for each of the box's six faces,
/// the slab of the space strictly beyond that face. Degenerate slabs are
/// dropped. The union of the result equals the space minus the box; a
/// non-intersecting box leaves the space unchanged.
pub fn subtract_box(e: &Ems, p: &Placement) -> Vec<Ems> {
    if !e.intersects(p) {
        return vec![*e];
    }
    let bmin = p.position;
    let bmax = p.max_corner();
    let candidates = [
        (e.min, Point::new(bmin.x, e.max.y, e.max.z)),
        (Point::new(bmax.x, e.min.y, e.min.z), e.max),
        (e.min, Point::new(e.max.x, bmin.y, e.max.z)),
        (Point::new(e.min.x, bmax.y, e.min.z), e.max),
        (e.min, Point::new(e.max.x, e.max.y, bmin.z)),
        (Point::new(e.min.x, e.min.y, bmax.z), e.max),
    ];
    candidates
        .into_iter()
        .filter(|(min, max)| min.x < max.x && min.y < max.y && min.z < max.z)
        .map(|(min, max)| Ems::new(e.container_id, min, max))
        .collect()
}

/// Applies a placement to a container's space list: every intersecting
/// space is replaced by its `subtract_box` result, spaces contained in
/// another are removed, and the list is re-sorted by priority.
pub fn update_ems_list(spaces: Vec<Ems>, p: &Placement) -> Vec<Ems> {
    let mut next: Vec<Ems> = Vec::with_capacity(spaces.len() + 4);
    for e in &spaces {
        debug_assert_eq!(e.container_id, p.container_id);
        next.extend(subtract_box(e, p));
    }
    let mut kept: Vec<Ems> = Vec::with_capacity(next.len());
    'outer: for (i, e) in next.iter().enumerate() {
        for (j, other) in next.iter().enumerate() {
            if i == j || !other.contains(e) {
                continue;
            }
            // drop contained spaces; of exact duplicates keep the first
            if *other != *e || j < i {
                continue 'outer;
            }
        }
        kept.push(*e);
    }
    kept.sort_by(ems_priority_cmp);
    kept
}
