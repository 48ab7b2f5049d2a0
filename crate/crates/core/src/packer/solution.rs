//! Decoded packing solutions and their stable text form.
//!
//! Layout:
//! ```text
//! fill <ratio>
//! feasible <true|false>
//! opened <container ids in opening order>
//! <box_id> <container_id> <x> <y> <z> <l> <w> <h>   (one line per placement)
//! ```

use super::{Placement, Point};
use crate::error::{Error, Result};
use crate::model::Dims;

/// A decoded chromosome: placements, opened containers in opening order,
/// feasibility and fill-ratio fitness.
#[derive(Clone, Debug, PartialEq)]
pub struct PackingSolution {
    pub placements: Vec<Placement>,
    pub opened_containers: Vec<usize>,
    pub feasible: bool,
    pub fitness: f64,
}

pub fn render_solution(sol: &PackingSolution) -> String {
    let mut out = String::new();
    out.push_str(&format!("fill {}\n", sol.fitness));
    out.push_str(&format!("feasible {}\n", sol.feasible));
    out.push_str("opened");
    for id in &sol.opened_containers {
        out.push_str(&format!(" {id}"));
    }
    out.push('\n');
    for p in &sol.placements {
        out.push_str(&format!(
            "{} {} {} {} {} {} {} {}\n",
            p.box_id,
            p.container_id,
            p.position.x,
            p.position.y,
            p.position.z,
            p.dims.l,
            p.dims.w,
            p.dims.h
        ));
    }
    out
}

pub fn parse_solution(text: &str) -> Result<PackingSolution> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));

    let (line, fill) = lines.next().ok_or_else(|| err(1, "empty solution"))?;
    let fitness = fill
        .strip_prefix("fill ")
        .and_then(|v| v.parse::<f64>().ok())
        .ok_or_else(|| err(line, "expected `fill <ratio>`"))?;

    let (line, feas) = lines
        .next()
        .ok_or_else(|| err(2, "missing feasible line"))?;
    let feasible = match feas.strip_prefix("feasible ") {
        Some("true") => true,
        Some("false") => false,
        _ => return Err(err(line, "expected `feasible <true|false>`")),
    };

    let (line, opened) = lines.next().ok_or_else(|| err(3, "missing opened line"))?;
    let opened_containers = opened
        .strip_prefix("opened")
        .ok_or_else(|| err(line, "expected `opened ...`"))?
        .split_whitespace()
        .map(|f| {
            f.parse::<usize>()
                .map_err(|_| err(line, &format!("bad container id {f:?}")))
        })
        .collect::<Result<Vec<_>>>()?;

    let mut placements = Vec::new();
    for (line, text) in lines {
        let fields = text
            .split(' ')
            .map(|f| {
                f.parse::<i64>()
                    .map_err(|_| err(line, &format!("not an integer: {f:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        if fields.len() != 8 {
            return Err(err(line, "expected 8 fields per placement"));
        }
        if fields[0] < 1 || fields[1] < 1 {
            return Err(err(line, "box and container ids must be positive"));
        }
        placements.push(Placement {
            box_id: fields[0] as usize,
            container_id: fields[1] as usize,
            position: Point::new(fields[2], fields[3], fields[4]),
            dims: Dims::new(fields[5], fields[6], fields[7]),
        });
    }

    Ok(PackingSolution {
        placements,
        opened_containers,
        feasible,
        fitness,
    })
}

fn err(line: usize, message: &str) -> Error {
    Error::Parse {
        line,
        message: message.to_string(),
    }
}
