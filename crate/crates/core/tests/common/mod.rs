//! Shared test oracles: a voxel-grid model of container space that is
//! maintained independently of the library's incremental space lists,
//! plus random instance generators.
//!
//! Everything here recomputes geometry from scratch (occupancy voxels,
//! exhaustive maximal-box enumeration) so that it cannot inherit a bug
//! from the code under test.

#![allow(dead_code)]

use binpack3d::model::{BoxSpec, Chromosome, ContainerSpec, Dims, Instance};
use binpack3d::packer::{Ems, Placement, Point};
use rand::Rng;

/// Occupancy grid for one container, with a prefix-sum volume table so
/// box emptiness queries are O(1).
pub struct VoxelGrid {
    pub dims: Dims,
    occupied: Vec<bool>,
    prefix: Vec<i64>,
}

impl VoxelGrid {
    pub fn new(dims: Dims) -> Self {
        let cells = (dims.l * dims.w * dims.h) as usize;
        let mut grid = VoxelGrid {
            dims,
            occupied: vec![false; cells],
            prefix: Vec::new(),
        };
        grid.rebuild_prefix();
        grid
    }

    fn cell(&self, x: i64, y: i64, z: i64) -> usize {
        (x + self.dims.l * (y + self.dims.w * z)) as usize
    }

    pub fn is_occupied(&self, x: i64, y: i64, z: i64) -> bool {
        self.occupied[self.cell(x, y, z)]
    }

    /// Marks the placement's voxels, panicking on overlap or out of
    /// bounds: the voxel model rejects geometrically invalid placements
    /// on its own.
    pub fn place(&mut self, position: Point, dims: Dims) {
        assert!(position.x >= 0 && position.y >= 0 && position.z >= 0);
        assert!(
            position.x + dims.l <= self.dims.l
                && position.y + dims.w <= self.dims.w
                && position.z + dims.h <= self.dims.h,
            "placement exceeds container bounds"
        );
        for x in position.x..position.x + dims.l {
            for y in position.y..position.y + dims.w {
                for z in position.z..position.z + dims.h {
                    let c = self.cell(x, y, z);
                    assert!(!self.occupied[c], "voxel ({x},{y},{z}) already occupied");
                    self.occupied[c] = true;
                }
            }
        }
        self.rebuild_prefix();
    }

    fn rebuild_prefix(&mut self) {
        let (l, w, h) = (self.dims.l, self.dims.w, self.dims.h);
        let stride = |x: i64, y: i64, z: i64| (x * (w + 1) * (h + 1) + y * (h + 1) + z) as usize;
        let mut prefix = vec![0i64; ((l + 1) * (w + 1) * (h + 1)) as usize];
        for x in 1..=l {
            for y in 1..=w {
                for z in 1..=h {
                    let occ = i64::from(self.occupied[self.cell(x - 1, y - 1, z - 1)]);
                    prefix[stride(x, y, z)] = occ
                        + prefix[stride(x - 1, y, z)]
                        + prefix[stride(x, y - 1, z)]
                        + prefix[stride(x, y, z - 1)]
                        - prefix[stride(x - 1, y - 1, z)]
                        - prefix[stride(x - 1, y, z - 1)]
                        - prefix[stride(x, y - 1, z - 1)]
                        + prefix[stride(x - 1, y - 1, z - 1)];
                }
            }
        }
        self.prefix = prefix;
    }

    /// Number of occupied voxels in the half-open box [min, max).
    pub fn occupied_in(&self, min: Point, max: Point) -> i64 {
        let (w, h) = (self.dims.w, self.dims.h);
        let at = |x: i64, y: i64, z: i64| {
            self.prefix[(x * (w + 1) * (h + 1) + y * (h + 1) + z) as usize]
        };
        at(max.x, max.y, max.z)
            - at(min.x, max.y, max.z)
            - at(max.x, min.y, max.z)
            - at(max.x, max.y, min.z)
            + at(min.x, min.y, max.z)
            + at(min.x, max.y, min.z)
            + at(max.x, min.y, min.z)
            - at(min.x, min.y, min.z)
    }

    pub fn is_empty_box(&self, min: Point, max: Point) -> bool {
        self.occupied_in(min, max) == 0
    }

    /// True iff the empty box cannot be extended one unit in the given
    /// direction without leaving the container or hitting cargo.
    fn blocked(&self, min: Point, max: Point, axis: usize, toward_min: bool) -> bool {
        let (mut lo, mut hi) = (min, max);
        match (axis, toward_min) {
            (0, true) => {
                if min.x == 0 {
                    return true;
                }
                lo.x = min.x - 1;
                hi = Point::new(min.x, max.y, max.z);
            }
            (0, false) => {
                if max.x == self.dims.l {
                    return true;
                }
                lo = Point::new(max.x, min.y, min.z);
                hi.x = max.x + 1;
            }
            (1, true) => {
                if min.y == 0 {
                    return true;
                }
                lo.y = min.y - 1;
                hi = Point::new(max.x, min.y, max.z);
            }
            (1, false) => {
                if max.y == self.dims.w {
                    return true;
                }
                lo = Point::new(min.x, max.y, min.z);
                hi.y = max.y + 1;
            }
            (2, true) => {
                if min.z == 0 {
                    return true;
                }
                lo.z = min.z - 1;
                hi = Point::new(max.x, max.y, min.z);
            }
            (2, false) => {
                if max.z == self.dims.h {
                    return true;
                }
                lo = Point::new(min.x, min.y, max.z);
                hi.z = max.z + 1;
            }
            _ => unreachable!(),
        }
        self.occupied_in(lo, hi) > 0
    }

    pub fn is_maximal_empty_box(&self, min: Point, max: Point) -> bool {
        self.is_empty_box(min, max)
            && (0..3).all(|axis| {
                self.blocked(min, max, axis, true) && self.blocked(min, max, axis, false)
            })
    }

    /// Every inclusion-maximal empty box, by brute-force enumeration.
    pub fn maximal_empty_boxes(&self) -> Vec<(Point, Point)> {
        let mut out = Vec::new();
        for x1 in 0..self.dims.l {
            for x2 in x1 + 1..=self.dims.l {
                for y1 in 0..self.dims.w {
                    for y2 in y1 + 1..=self.dims.w {
                        for z1 in 0..self.dims.h {
                            for z2 in z1 + 1..=self.dims.h {
                                let min = Point::new(x1, y1, z1);
                                let max = Point::new(x2, y2, z2);
                                if self.is_maximal_empty_box(min, max) {
                                    out.push((min, max));
                                }
                            }
                        }
                    }
                }
            }
        }
        out
    }

    pub fn free_voxel_count(&self) -> i64 {
        self.dims.volume()
            - self.occupied_in(
                Point::new(0, 0, 0),
                Point::new(self.dims.l, self.dims.w, self.dims.h),
            )
    }
}

/// Coverage + maximality + no-containment of a space list against the
/// grid's ground truth.
pub fn check_ems_state(grid: &VoxelGrid, spaces: &[Ems]) {
    // union of spaces == free voxels
    for x in 0..grid.dims.l {
        for y in 0..grid.dims.w {
            for z in 0..grid.dims.h {
                let in_union = spaces.iter().any(|s| {
                    s.min.x <= x
                        && x < s.max.x
                        && s.min.y <= y
                        && y < s.max.y
                        && s.min.z <= z
                        && z < s.max.z
                });
                assert_eq!(
                    in_union,
                    !grid.is_occupied(x, y, z),
                    "coverage mismatch at voxel ({x},{y},{z})"
                );
            }
        }
    }
    for s in spaces {
        assert!(
            grid.is_maximal_empty_box(s.min, s.max),
            "space {:?}..{:?} is not maximal",
            s.min,
            s.max
        );
    }
    for (i, a) in spaces.iter().enumerate() {
        for (j, b) in spaces.iter().enumerate() {
            if i != j {
                assert!(
                    !(a.min.x <= b.min.x
                        && a.min.y <= b.min.y
                        && a.min.z <= b.min.z
                        && b.max.x <= a.max.x
                        && b.max.y <= a.max.y
                        && b.max.z <= a.max.z),
                    "space {b:?} contained in {a:?}"
                );
            }
        }
    }
}

/// Outcome of the independent decoder, comparable with the library's.
#[derive(Debug, PartialEq)]
pub struct VoxelSolution {
    pub placements: Vec<Placement>,
    pub opened_containers: Vec<usize>,
    pub feasible: bool,
    pub fitness: f64,
}

const ORIENTS: [(usize, usize, usize); 6] = [
    (0, 1, 2),
    (0, 2, 1),
    (1, 0, 2),
    (1, 2, 0),
    (2, 0, 1),
    (2, 1, 0),
];

fn oriented(d: Dims, index: usize) -> Dims {
    let v = [d.l, d.w, d.h];
    let (a, b, c) = ORIENTS[index];
    Dims::new(v[a], v[b], v[c])
}

fn sorted3(p: Point) -> [i64; 3] {
    let mut v = [p.x, p.y, p.z];
    v.sort_unstable();
    v
}

fn space_order(a: &(Point, Point), b: &(Point, Point)) -> std::cmp::Ordering {
    sorted3(a.0)
        .cmp(&sorted3(b.0))
        .then_with(|| (a.0.x, a.0.y, a.0.z).cmp(&(b.0.x, b.0.y, b.0.z)))
        .then_with(|| (a.1.x, a.1.y, a.1.z).cmp(&(b.1.x, b.1.y, b.1.z)))
}

struct VoxCandidate {
    box_volume: i64,
    space_volume: i64,
    margin: [i64; 3],
    window_pos: usize,
    space_index: usize,
    orientation: usize,
    dims: Dims,
    at: Point,
    container_pos: usize,
}

fn better(a: &VoxCandidate, b: &VoxCandidate) -> bool {
    let fill_a = a.box_volume as i128 * b.space_volume as i128;
    let fill_b = b.box_volume as i128 * a.space_volume as i128;
    (fill_b, a.margin, a.window_pos, a.space_index, a.orientation)
        < (fill_a, b.margin, b.window_pos, b.space_index, b.orientation)
}

/// Step-by-step re-implementation of the packing strategy on voxel
/// grids: free space is re-enumerated from scratch before every
/// placement instead of being maintained incrementally.
pub fn voxel_decode(chr: &Chromosome, inst: &Instance, kb: usize, ke: usize) -> VoxelSolution {
    let mut opened: Vec<(usize, VoxelGrid)> = Vec::new();
    let mut next_to_open = 0usize;
    let mut unpacked: Vec<usize> = chr.bps().to_vec();
    let mut placements = Vec::new();

    while !unpacked.is_empty() {
        let window = &unpacked[..kb.min(unpacked.len())];
        let mut chosen: Option<VoxCandidate> = None;

        'containers: for (container_pos, (_, grid)) in opened.iter().enumerate() {
            let mut spaces = grid.maximal_empty_boxes();
            spaces.sort_by(space_order);
            let mut j = 0;
            while j < spaces.len() {
                let hi = (j + ke).min(spaces.len());
                let mut best: Option<VoxCandidate> = None;
                for (offset, &(smin, smax)) in spaces[j..hi].iter().enumerate() {
                    let extent = Dims::new(smax.x - smin.x, smax.y - smin.y, smax.z - smin.z);
                    for (window_pos, &box_id) in window.iter().enumerate() {
                        let spec = inst.box_by_id(box_id).dims;
                        for orientation in 0..6 {
                            let d = oriented(spec, orientation);
                            if d.l > extent.l || d.w > extent.w || d.h > extent.h {
                                continue;
                            }
                            let mut margin = [extent.l - d.l, extent.w - d.w, extent.h - d.h];
                            margin.sort_unstable();
                            let cand = VoxCandidate {
                                box_volume: spec.volume(),
                                space_volume: extent.volume(),
                                margin,
                                window_pos,
                                space_index: j + offset,
                                orientation,
                                dims: d,
                                at: smin,
                                container_pos,
                            };
                            if best.as_ref().is_none_or(|b| better(&cand, b)) {
                                best = Some(cand);
                            }
                        }
                    }
                }
                if best.is_some() {
                    chosen = best;
                    break 'containers;
                }
                j += ke;
            }
        }

        match chosen {
            Some(c) => {
                let box_id = window[c.window_pos];
                let (container_id, grid) = &mut opened[c.container_pos];
                grid.place(c.at, c.dims);
                placements.push(Placement {
                    box_id,
                    container_id: *container_id,
                    position: c.at,
                    dims: c.dims,
                });
                unpacked.remove(c.window_pos);
            }
            None => {
                if next_to_open < chr.cls().len() {
                    let id = chr.cls()[next_to_open];
                    next_to_open += 1;
                    opened.push((id, VoxelGrid::new(inst.container_by_id(id).dims)));
                } else {
                    return VoxelSolution {
                        placements,
                        opened_containers: opened.iter().map(|(id, _)| *id).collect(),
                        feasible: false,
                        fitness: 0.0,
                    };
                }
            }
        }
    }

    let opened_volume: i64 = opened
        .iter()
        .map(|(id, _)| inst.container_by_id(*id).dims.volume())
        .sum();
    VoxelSolution {
        placements,
        opened_containers: opened.iter().map(|(id, _)| *id).collect(),
        feasible: true,
        fitness: inst.total_box_volume() as f64 / opened_volume as f64,
    }
}

pub fn make_instance(boxes: &[(i64, i64, i64)], containers: &[(i64, i64, i64)]) -> Instance {
    Instance::new(
        boxes
            .iter()
            .enumerate()
            .map(|(i, &(l, w, h))| BoxSpec {
                id: i + 1,
                dims: Dims::new(l, w, h),
            })
            .collect(),
        containers
            .iter()
            .enumerate()
            .map(|(i, &(l, w, h))| ContainerSpec {
                id: i + 1,
                dims: Dims::new(l, w, h),
            })
            .collect(),
    )
    .unwrap()
}

pub fn random_instance(
    rng: &mut impl Rng,
    max_boxes: usize,
    max_containers: usize,
    max_box_dim: i64,
    max_container_dim: i64,
) -> Instance {
    let m = rng.random_range(1..=max_boxes);
    let n = rng.random_range(1..=max_containers);
    let boxes = (0..m)
        .map(|_| {
            (
                rng.random_range(1..=max_box_dim),
                rng.random_range(1..=max_box_dim),
                rng.random_range(1..=max_box_dim),
            )
        })
        .collect::<Vec<_>>();
    let containers = (0..n)
        .map(|_| {
            (
                rng.random_range(1..=max_container_dim),
                rng.random_range(1..=max_container_dim),
                rng.random_range(1..=max_container_dim),
            )
        })
        .collect::<Vec<_>>();
    make_instance(&boxes, &containers)
}

pub fn random_chromosome(rng: &mut impl Rng, inst: &Instance) -> Chromosome {
    use rand::seq::SliceRandom;
    let mut bps: Vec<usize> = (1..=inst.box_count()).collect();
    let mut cls: Vec<usize> = (1..=inst.container_count()).collect();
    bps.shuffle(rng);
    cls.shuffle(rng);
    Chromosome::new(bps, cls).unwrap()
}
