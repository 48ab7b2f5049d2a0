//! EMS geometry engine and the best-matching heuristic packing strategy
//! that decodes a chromosome into a packing solution.

mod decode;
mod ems;
mod solution;

pub use decode::{decode, decode_traced, fitness, DecodeStep};
pub use ems::{ems_priority_cmp, initial_ems, subtract_box, update_ems_list, Ems};
pub use solution::{parse_solution, render_solution, PackingSolution};

use crate::model::{BoxSpec, Dims};

/// An integer point inside a container.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Point {
    pub x: i64,
    pub y: i64,
    pub z: i64,
}

impl Point {
    pub fn new(x: i64, y: i64, z: i64) -> Self {
        Point { x, y, z }
    }
}

/// One of the six axis-aligned rotations of a box.
///
/// The index -> dims table is fixed: 0 (l,w,h), 1 (l,h,w), 2 (w,l,h),
/// 3 (w,h,l), 4 (h,l,w), 5 (h,w,l). Duplicates are kept: a cube yields
/// six identical orientations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Orientation {
    pub index: u8,
    pub dims: Dims,
}

pub fn orientations(b: &BoxSpec) -> [Orientation; 6] {
    let Dims { l, w, h } = b.dims;
    let table = [
        (l, w, h),
        (l, h, w),
        (w, l, h),
        (w, h, l),
        (h, l, w),
        (h, w, l),
    ];
    std::array::from_fn(|i| Orientation {
        index: i as u8,
        dims: Dims::new(table[i].0, table[i].1, table[i].2),
    })
}

/// A box placed at `position` (its minimum corner) with oriented dims.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Placement {
    pub box_id: usize,
    pub container_id: usize,
    pub position: Point,
    pub dims: Dims,
}

impl Placement {
    pub fn max_corner(&self) -> Point {
        Point::new(
            self.position.x + self.dims.l,
            self.position.y + self.dims.w,
            self.position.z + self.dims.h,
        )
    }
}

/// True iff the oriented box fits the space componentwise.
pub fn fits(e: &Ems, o: &Orientation) -> bool {
    let ext = e.extents();
    o.dims.l <= ext.l && o.dims.w <= ext.w && o.dims.h <= ext.h
}

/// Margins from the oriented box to the three far faces of the space,
/// ascending-sorted. Compared lexicographically; smaller is better.
pub fn placement_margin_key(e: &Ems, o: &Orientation) -> [i64; 3] {
    let ext = e.extents();
    let mut key = [ext.l - o.dims.l, ext.w - o.dims.w, ext.h - o.dims.h];
    key.sort_unstable();
    key
}


#[cfg(test)]
mod prop_tests {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn orientations_preserve_the_dim_multiset(l in 1i64..100, w in 1i64..100, h in 1i64..100) {
            let b = BoxSpec { id: 1, dims: Dims::new(l, w, h) };
            let mut original = [l, w, h];
            original.sort_unstable();
            for o in orientations(&b) {
                prop_assert_eq!(o.dims.sorted(), original);
            }
        }
    }
}
