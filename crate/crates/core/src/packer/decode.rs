//! Chromosome decoding: the best-matching heuristic packing strategy.
//!
//! While boxes remain, opened containers are scanned in opening order.
//! Within a container the priority-ordered space list is visited in
//! windows of `ke` spaces; every window is crossed with the first `kb`
//! unpacked boxes and all six orientations. The first window with a
//! feasible candidate decides the placement: the candidate with the
//! largest fill ratio (box volume over space volume) wins, ties broken
//! by margin key, BPS position, space priority, then orientation index.
//! When no opened container admits a candidate, the next container in
//! CLS order opens; when none is left, the chromosome is infeasible.

use super::ems::{initial_ems, update_ems_list, Ems};
use super::solution::PackingSolution;
use super::{fits, orientations, placement_margin_key, Placement};
use crate::model::{Chromosome, Dims, Instance};

/// Snapshot taken after one placement: the placement itself and the
/// space lists of every opened container.
#[derive(Clone, Debug)]
pub struct DecodeStep {
    pub placement: Placement,
    pub ems_lists: Vec<(usize, Vec<Ems>)>,
}

struct OpenedContainer {
    id: usize,
    spaces: Vec<Ems>,
}

#[derive(Clone, Copy)]
struct Candidate {
    box_volume: i64,
    ems_volume: i64,
    margin: [i64; 3],
    window_pos: usize,
    ems_index: usize,
    orientation: u8,
    dims: Dims,
    ems: Ems,
}

impl Candidate {
    /// True iff self ranks ahead of other: fill ratio (max), margin key
    /// (min), BPS position (min), space priority via list index (min),
    /// orientation index (min).
    fn beats(&self, other: &Candidate) -> bool {
        let lhs = self.box_volume as i128 * other.ems_volume as i128;
        let rhs = other.box_volume as i128 * self.ems_volume as i128;
        (
            rhs,
            self.margin,
            self.window_pos,
            self.ems_index,
            self.orientation,
        ) < (
            lhs,
            other.margin,
            other.window_pos,
            other.ems_index,
            other.orientation,
        )
    }
}

/// Decodes a chromosome into a packing solution. Pure: identical inputs
/// give identical outputs. Infeasibility is a normal return with
/// `feasible = false` and fitness 0.
pub fn decode(chr: &Chromosome, inst: &Instance, kb: usize, ke: usize) -> PackingSolution {
    decode_impl(chr, inst, kb, ke, None)
}

/// `decode` plus a per-placement trace of all space lists, for geometric
/// verification.
pub fn decode_traced(
    chr: &Chromosome,
    inst: &Instance,
    kb: usize,
    ke: usize,
) -> (PackingSolution, Vec<DecodeStep>) {
    let mut trace = Vec::new();
    let sol = decode_impl(chr, inst, kb, ke, Some(&mut trace));
    (sol, trace)
}

fn decode_impl(
    chr: &Chromosome,
    inst: &Instance,
    kb: usize,
    ke: usize,
    mut trace: Option<&mut Vec<DecodeStep>>,
) -> PackingSolution {
    assert!(chr.matches(inst), "chromosome does not match instance");
    assert!(kb >= 1 && ke >= 1, "kb and ke must be at least 1");

    let mut unpacked: Vec<usize> = chr.bps().to_vec();
    let mut opened: Vec<OpenedContainer> = Vec::new();
    let mut next_to_open = 0usize;
    let mut placements: Vec<Placement> = Vec::with_capacity(unpacked.len());

    while !unpacked.is_empty() {
        let window = &unpacked[..kb.min(unpacked.len())];

        let mut chosen: Option<Candidate> = None;
        'containers: for oc in &opened {
            let mut j = 0;
            while j < oc.spaces.len() {
                let hi = (j + ke).min(oc.spaces.len());
                let mut best: Option<Candidate> = None;
                for (ems_index, ems) in oc.spaces[j..hi].iter().enumerate() {
                    for (window_pos, &box_id) in window.iter().enumerate() {
                        let spec = inst.box_by_id(box_id);
                        for o in orientations(spec) {
                            if !fits(ems, &o) {
                                continue;
                            }
                            let cand = Candidate {
                                box_volume: spec.dims.volume(),
                                ems_volume: ems.volume(),
                                margin: placement_margin_key(ems, &o),
                                window_pos,
                                ems_index: j + ems_index,
                                orientation: o.index,
                                dims: o.dims,
                                ems: *ems,
                            };
                            if best.as_ref().is_none_or(|b| cand.beats(b)) {
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
            Some(cand) => {
                let box_id = window[cand.window_pos];
                let placement = Placement {
                    box_id,
                    container_id: cand.ems.container_id,
                    position: cand.ems.min,
                    dims: cand.dims,
                };
                unpacked.remove(cand.window_pos);
                placements.push(placement);
                let oc = opened
                    .iter_mut()
                    .find(|c| c.id == placement.container_id)
                    .expect("placement targets an opened container");
                oc.spaces = update_ems_list(std::mem::take(&mut oc.spaces), &placement);
                if let Some(trace) = trace.as_deref_mut() {
                    trace.push(DecodeStep {
                        placement,
                        ems_lists: opened.iter().map(|c| (c.id, c.spaces.clone())).collect(),
                    });
                }
            }
            None => {
                if next_to_open < chr.cls().len() {
                    let id = chr.cls()[next_to_open];
                    next_to_open += 1;
                    opened.push(OpenedContainer {
                        id,
                        spaces: vec![initial_ems(inst.container_by_id(id))],
                    });
                } else {
                    return PackingSolution {
                        placements,
                        opened_containers: opened.iter().map(|c| c.id).collect(),
                        feasible: false,
                        fitness: 0.0,
                    };
                }
            }
        }
    }

    let mut solution = PackingSolution {
        placements,
        opened_containers: opened.iter().map(|c| c.id).collect(),
        feasible: true,
        fitness: 0.0,
    };
    solution.fitness = fitness(&solution, inst);
    solution
}

/// Fill ratio of a solution: total box volume over the total volume of
/// opened containers; 0 for infeasible solutions.
pub fn fitness(sol: &PackingSolution, inst: &Instance) -> f64 {
    if !sol.feasible {
        return 0.0;
    }
    let opened: i64 = sol
        .opened_containers
        .iter()
        .map(|&id| inst.container_by_id(id).dims.volume())
        .sum();
    inst.total_box_volume() as f64 / opened as f64
}
