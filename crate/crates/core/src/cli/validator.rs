//! Independent solution checks. The geometry here is written against the
//! raw placement fields on purpose, sharing no overlap or containment
//! code with the packer, so the two implementations can cross-check each
//! other.

use std::fmt;

use crate::model::Instance;
use crate::packer::{PackingSolution, Placement};

#[derive(Clone, Debug, PartialEq)]
pub enum Violation {
    OutOfBounds {
        box_id: usize,
        container_id: usize,
    },
    Overlap {
        first_box: usize,
        second_box: usize,
        container_id: usize,
    },
    BadRotation {
        box_id: usize,
    },
    MissingBox {
        box_id: usize,
    },
    DuplicateBox {
        box_id: usize,
    },
    UnknownId {
        detail: String,
    },
    UnopenedContainer {
        box_id: usize,
        container_id: usize,
    },
    DuplicateOpened {
        container_id: usize,
    },
    FitnessMismatch {
        reported: f64,
        computed: f64,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::OutOfBounds {
                box_id,
                container_id,
            } => {
                write!(
                    f,
                    "box {box_id} exceeds the bounds of container {container_id}"
                )
            }
            Violation::Overlap {
                first_box,
                second_box,
                container_id,
            } => write!(
                f,
                "boxes {first_box} and {second_box} overlap in container {container_id}"
            ),
            Violation::BadRotation { box_id } => write!(
                f,
                "box {box_id} placed with dims that are not a rotation of its spec"
            ),
            Violation::MissingBox { box_id } => write!(f, "box {box_id} is not placed"),
            Violation::DuplicateBox { box_id } => write!(f, "box {box_id} is placed twice"),
            Violation::UnknownId { detail } => write!(f, "{detail}"),
            Violation::UnopenedContainer {
                box_id,
                container_id,
            } => write!(
                f,
                "box {box_id} placed in container {container_id} which is not opened"
            ),
            Violation::DuplicateOpened { container_id } => {
                write!(f, "container {container_id} opened twice")
            }
            Violation::FitnessMismatch { reported, computed } => {
                write!(f, "reported fitness {reported} but recomputed {computed}")
            }
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            writeln!(f, "ok")
        } else {
            for v in &self.violations {
                writeln!(f, "violation: {v}")?;
            }
            Ok(())
        }
    }
}

/// Re-checks bounds, pairwise disjointness, rotation closure, box
/// coverage, opened-container consistency and the fitness arithmetic.
pub fn validate_solution(inst: &Instance, sol: &PackingSolution) -> ValidationReport {
    let mut report = ValidationReport::default();
    let m = inst.box_count();
    let n = inst.container_count();

    let mut opened_seen = vec![false; n];
    for &id in &sol.opened_containers {
        if id < 1 || id > n {
            report.violations.push(Violation::UnknownId {
                detail: format!("opened container id {id} out of range 1..={n}"),
            });
        } else if opened_seen[id - 1] {
            report
                .violations
                .push(Violation::DuplicateOpened { container_id: id });
        } else {
            opened_seen[id - 1] = true;
        }
    }

    let mut placed_count = vec![0usize; m];
    for p in &sol.placements {
        if p.box_id < 1 || p.box_id > m {
            report.violations.push(Violation::UnknownId {
                detail: format!("placed box id {} out of range 1..={m}", p.box_id),
            });
            continue;
        }
        if p.container_id < 1 || p.container_id > n {
            report.violations.push(Violation::UnknownId {
                detail: format!(
                    "placement container id {} out of range 1..={n}",
                    p.container_id
                ),
            });
            continue;
        }
        placed_count[p.box_id - 1] += 1;
        if !opened_seen[p.container_id - 1] {
            report.violations.push(Violation::UnopenedContainer {
                box_id: p.box_id,
                container_id: p.container_id,
            });
        }

        // rotation closure: placed dims must be a permutation of the spec
        let spec = inst.box_by_id(p.box_id);
        let mut placed = [p.dims.l, p.dims.w, p.dims.h];
        let mut original = [spec.dims.l, spec.dims.w, spec.dims.h];
        placed.sort_unstable();
        original.sort_unstable();
        if placed != original {
            report
                .violations
                .push(Violation::BadRotation { box_id: p.box_id });
        }

        // bounds
        let c = inst.container_by_id(p.container_id).dims;
        let inside = p.position.x >= 0
            && p.position.y >= 0
            && p.position.z >= 0
            && p.position.x + p.dims.l <= c.l
            && p.position.y + p.dims.w <= c.w
            && p.position.z + p.dims.h <= c.h;
        if !inside {
            report.violations.push(Violation::OutOfBounds {
                box_id: p.box_id,
                container_id: p.container_id,
            });
        }
    }

    // pairwise interior disjointness within each container
    for (i, a) in sol.placements.iter().enumerate() {
        for b in sol.placements.iter().skip(i + 1) {
            if a.container_id != b.container_id {
                continue;
            }
            if interiors_intersect(a, b) {
                report.violations.push(Violation::Overlap {
                    first_box: a.box_id,
                    second_box: b.box_id,
                    container_id: a.container_id,
                });
            }
        }
    }

    // coverage only binds feasible solutions
    if sol.feasible {
        for (idx, &count) in placed_count.iter().enumerate() {
            if count == 0 {
                report
                    .violations
                    .push(Violation::MissingBox { box_id: idx + 1 });
            } else if count > 1 {
                report
                    .violations
                    .push(Violation::DuplicateBox { box_id: idx + 1 });
            }
        }
    }

    let computed = if sol.feasible {
        let opened_volume: i64 = sol
            .opened_containers
            .iter()
            .filter(|&&id| id >= 1 && id <= n)
            .map(|&id| {
                let d = inst.container_by_id(id).dims;
                d.l * d.w * d.h
            })
            .sum();
        if opened_volume > 0 {
            inst.boxes()
                .iter()
                .map(|b| b.dims.l * b.dims.w * b.dims.h)
                .sum::<i64>() as f64
                / opened_volume as f64
        } else {
            0.0
        }
    } else {
        0.0
    };
    if computed != sol.fitness {
        report.violations.push(Violation::FitnessMismatch {
            reported: sol.fitness,
            computed,
        });
    }

    report
}

/// Open-interval overlap on every axis means the interiors intersect.
fn interiors_intersect(a: &Placement, b: &Placement) -> bool {
    let overlap_1d =
        |a_lo: i64, a_len: i64, b_lo: i64, b_len: i64| a_lo < b_lo + b_len && b_lo < a_lo + a_len;
    overlap_1d(a.position.x, a.dims.l, b.position.x, b.dims.l)
        && overlap_1d(a.position.y, a.dims.w, b.position.y, b.dims.w)
        && overlap_1d(a.position.z, a.dims.h, b.position.z, b.dims.h)
}
