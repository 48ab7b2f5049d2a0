//! Guillotine-cut benchmark instances: one container recursively sliced
//! by axis-aligned planes into k boxes. A perfect packing exists by
//! construction, so the optimal fill ratio is always 1.0.

use rand::seq::{IndexedRandom, SliceRandom};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::model::{BoxSpec, ContainerSpec, Dims, Instance};

/// Parameters for guillotine-cut generation.
#[derive(Clone, Copy, Debug)]
pub struct CutGenSpec {
    pub dims: Dims,
    /// Target box count.
    pub k: usize,
    /// Minimum extent of every cut piece.
    pub min_extent: i64,
    pub seed: u64,
}

const ATTEMPTS: usize = 100;

pub fn generate_cut_instance(spec: &CutGenSpec) -> Result<Instance> {
    if spec.k < 1 {
        return Err(Error::Generate("box count must be at least 1".into()));
    }
    if spec.min_extent < 1 {
        return Err(Error::Generate("min extent must be at least 1".into()));
    }
    let smallest = spec.dims.sorted()[0];
    if spec.min_extent > smallest {
        return Err(Error::Generate(format!(
            "min extent {} exceeds the smallest container dimension {}",
            spec.min_extent, smallest
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    for _ in 0..ATTEMPTS {
        if let Some(mut pieces) = try_cut(spec, &mut rng) {
            pieces.shuffle(&mut rng);
            let boxes = pieces
                .into_iter()
                .enumerate()
                .map(|(i, dims)| BoxSpec { id: i + 1, dims })
                .collect();
            let container = ContainerSpec {
                id: 1,
                dims: spec.dims,
            };
            return Instance::new(boxes, vec![container]);
        }
    }
    Err(Error::Generate(format!(
        "could not cut {} pieces with extent >= {} from {}x{}x{}",
        spec.k, spec.min_extent, spec.dims.l, spec.dims.w, spec.dims.h
    )))
}

/// One cutting attempt; random draws may dead-end with every remaining
/// piece too small to split again.
fn try_cut(spec: &CutGenSpec, rng: &mut impl Rng) -> Option<Vec<Dims>> {
    let m = spec.min_extent;
    let mut pieces = vec![spec.dims];
    while pieces.len() < spec.k {
        let splittable: Vec<usize> = (0..pieces.len())
            .filter(|&i| splittable_axes(pieces[i], m).iter().any(|&s| s))
            .collect();
        let &piece_idx = splittable.choose(rng)?;
        let piece = pieces[piece_idx];
        let axes = splittable_axes(piece, m);
        let open: Vec<usize> = (0..3).filter(|&a| axes[a]).collect();
        let axis = *open.choose(rng).expect("piece was splittable");
        let extent = axis_extent(piece, axis);
        let offset = rng.random_range(m..=extent - m);
        let (a, b) = split(piece, axis, offset);
        pieces[piece_idx] = a;
        pieces.push(b);
    }
    Some(pieces)
}

fn splittable_axes(d: Dims, m: i64) -> [bool; 3] {
    [d.l >= 2 * m, d.w >= 2 * m, d.h >= 2 * m]
}

fn axis_extent(d: Dims, axis: usize) -> i64 {
    match axis {
        0 => d.l,
        1 => d.w,
        _ => d.h,
    }
}

/// Splits a piece at `offset` along `axis`; both halves keep the other
/// two extents.
pub fn split(d: Dims, axis: usize, offset: i64) -> (Dims, Dims) {
    debug_assert!(offset > 0 && offset < axis_extent(d, axis));
    match axis {
        0 => (
            Dims::new(offset, d.w, d.h),
            Dims::new(d.l - offset, d.w, d.h),
        ),
        1 => (
            Dims::new(d.l, offset, d.h),
            Dims::new(d.l, d.w - offset, d.h),
        ),
        _ => (
            Dims::new(d.l, d.w, offset),
            Dims::new(d.l, d.w, d.h - offset),
        ),
    }
}
