//! Instance and chromosome data types, validation, and the text
//! serialization used by instance files and checkpoints.

use crate::error::{Error, Result};

/// Axis-aligned dimensions in integer length units.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Dims {
    pub l: i64,
    pub w: i64,
    pub h: i64,
}

impl Dims {
    pub fn new(l: i64, w: i64, h: i64) -> Self {
        Dims { l, w, h }
    }

    pub fn volume(self) -> i64 {
        self.l * self.w * self.h
    }

    /// The three extents in ascending order.
    pub fn sorted(self) -> [i64; 3] {
        let mut v = [self.l, self.w, self.h];
        v.sort_unstable();
        v
    }
}

/// A box to pack. Ids are dense 1-based indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BoxSpec {
    pub id: usize,
    pub dims: Dims,
}

/// A container that boxes may be loaded into. Ids are dense 1-based indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ContainerSpec {
    pub id: usize,
    pub dims: Dims,
}

/// A validated packing instance: M boxes and N heterogeneous containers.
///
/// Immutable after construction; safe to share across worker threads.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    boxes: Vec<BoxSpec>,
    containers: Vec<ContainerSpec>,
    // id -> position lookups; ids are 1..=M / 1..=N but file order is free
    box_pos: Vec<usize>,
    container_pos: Vec<usize>,
}

impl Instance {
    pub fn new(boxes: Vec<BoxSpec>, containers: Vec<ContainerSpec>) -> Result<Self> {
        if boxes.is_empty() {
            return Err(Error::Instance(
                "instance must contain at least one box".into(),
            ));
        }
        if containers.is_empty() {
            return Err(Error::Instance(
                "instance must contain at least one container".into(),
            ));
        }
        let box_pos = dense_id_index(boxes.iter().map(|b| b.id), boxes.len(), "box")?;
        let container_pos = dense_id_index(
            containers.iter().map(|c| c.id),
            containers.len(),
            "container",
        )?;
        for b in &boxes {
            check_dims(b.dims, "box", b.id)?;
        }
        for c in &containers {
            check_dims(c.dims, "container", c.id)?;
        }
        let mut total: i64 = 0;
        for d in boxes
            .iter()
            .map(|b| b.dims)
            .chain(containers.iter().map(|c| c.dims))
        {
            let vol =
                d.l.checked_mul(d.w)
                    .and_then(|v| v.checked_mul(d.h))
                    .ok_or_else(|| Error::Instance("volume overflows 64-bit integer".into()))?;
            total = total
                .checked_add(vol)
                .ok_or_else(|| Error::Instance("total volume overflows 64-bit integer".into()))?;
        }
        Ok(Instance {
            boxes,
            containers,
            box_pos,
            container_pos,
        })
    }

    pub fn boxes(&self) -> &[BoxSpec] {
        &self.boxes
    }

    pub fn containers(&self) -> &[ContainerSpec] {
        &self.containers
    }

    /// Number of boxes M.
    pub fn box_count(&self) -> usize {
        self.boxes.len()
    }

    /// Number of containers N.
    pub fn container_count(&self) -> usize {
        self.containers.len()
    }

    pub fn box_by_id(&self, id: usize) -> &BoxSpec {
        &self.boxes[self.box_pos[id - 1]]
    }

    pub fn container_by_id(&self, id: usize) -> &ContainerSpec {
        &self.containers[self.container_pos[id - 1]]
    }

    pub fn total_box_volume(&self) -> i64 {
        self.boxes.iter().map(|b| b.dims.volume()).sum()
    }

    /// Parses the instance file format: line 1 `M N`, then M lines
    /// `id l w h`, then N lines `id L W H`. Lines starting with `#`
    /// are comments.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l))
            .filter(|(_, l)| !l.starts_with('#'));

        let (line_no, header) = lines
            .next()
            .ok_or_else(|| parse_err(1, "empty instance file"))?;
        let header_fields = split_ints(line_no, header, 2)?;
        let (m, n) = (header_fields[0], header_fields[1]);
        if m < 1 || n < 1 {
            return Err(parse_err(line_no, "M and N must both be at least 1"));
        }
        let (m, n) = (m as usize, n as usize);

        let mut boxes = Vec::with_capacity(m);
        let mut seen = vec![false; m];
        let mut last_line = line_no;
        for _ in 0..m {
            let (line_no, line) = lines
                .next()
                .ok_or_else(|| parse_err(last_line, "unexpected end of file in box section"))?;
            last_line = line_no;
            let f = split_ints(line_no, line, 4)?;
            if f[1] < 1 || f[2] < 1 || f[3] < 1 {
                return Err(parse_err(line_no, "non-positive dimension"));
            }
            let id = check_id(line_no, f[0], &mut seen, "box")?;
            boxes.push(BoxSpec {
                id,
                dims: Dims::new(f[1], f[2], f[3]),
            });
        }

        let mut containers = Vec::with_capacity(n);
        let mut seen = vec![false; n];
        for _ in 0..n {
            let (line_no, line) = lines.next().ok_or_else(|| {
                parse_err(last_line, "unexpected end of file in container section")
            })?;
            last_line = line_no;
            let f = split_ints(line_no, line, 4)?;
            if f[1] < 1 || f[2] < 1 || f[3] < 1 {
                return Err(parse_err(line_no, "non-positive dimension"));
            }
            let id = check_id(line_no, f[0], &mut seen, "container")?;
            containers.push(ContainerSpec {
                id,
                dims: Dims::new(f[1], f[2], f[3]),
            });
        }

        if let Some((line_no, _)) = lines.next() {
            return Err(parse_err(
                line_no,
                "trailing content after container section",
            ));
        }

        Instance::new(boxes, containers).map_err(|e| match e {
            Error::Instance(msg) => parse_err(last_line, &msg),
            other => other,
        })
    }

    /// Canonical text form; `parse` is its exact inverse.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "{} {}\n",
            self.box_count(),
            self.container_count()
        ));
        for b in &self.boxes {
            out.push_str(&format!(
                "{} {} {} {}\n",
                b.id, b.dims.l, b.dims.w, b.dims.h
            ));
        }
        for c in &self.containers {
            out.push_str(&format!(
                "{} {} {} {}\n",
                c.id, c.dims.l, c.dims.w, c.dims.h
            ));
        }
        out
    }
}

fn check_dims(d: Dims, kind: &str, id: usize) -> Result<()> {
    if d.l < 1 || d.w < 1 || d.h < 1 {
        return Err(Error::Instance(format!(
            "{kind} {id} has a non-positive dimension"
        )));
    }
    Ok(())
}

/// Builds an id -> position map, rejecting duplicate or out-of-range ids.
fn dense_id_index(
    ids: impl Iterator<Item = usize>,
    count: usize,
    kind: &str,
) -> Result<Vec<usize>> {
    let mut pos = vec![usize::MAX; count];
    for (i, id) in ids.enumerate() {
        if id < 1 || id > count {
            return Err(Error::Instance(format!(
                "{kind} id {id} out of range 1..={count}"
            )));
        }
        if pos[id - 1] != usize::MAX {
            return Err(Error::Instance(format!("duplicate {kind} id {id}")));
        }
        pos[id - 1] = i;
    }
    Ok(pos)
}

fn parse_err(line: usize, message: &str) -> Error {
    Error::Parse {
        line,
        message: message.to_string(),
    }
}

/// Ids must be exactly 1..=len, each once; a full section of in-range,
/// distinct ids cannot miss any.
fn check_id(line_no: usize, raw: i64, seen: &mut [bool], kind: &str) -> Result<usize> {
    let len = seen.len();
    if raw < 1 || raw > len as i64 {
        return Err(parse_err(
            line_no,
            &format!("{kind} id {raw} out of range 1..={len}"),
        ));
    }
    let id = raw as usize;
    if seen[id - 1] {
        return Err(parse_err(line_no, &format!("duplicate {kind} id {id}")));
    }
    seen[id - 1] = true;
    Ok(id)
}

fn split_ints(line_no: usize, line: &str, expect: usize) -> Result<Vec<i64>> {
    let fields: Vec<&str> = line.split(' ').collect();
    if fields.len() != expect {
        return Err(parse_err(
            line_no,
            &format!("expected {expect} fields, found {}", fields.len()),
        ));
    }
    fields
        .iter()
        .map(|f| {
            f.parse::<i64>()
                .map_err(|_| parse_err(line_no, &format!("not an integer: {f:?}")))
        })
        .collect()
}

/// A candidate solution: a box packing sequence and a container loading
/// sequence, both permutations.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Chromosome {
    bps: Vec<usize>,
    cls: Vec<usize>,
}

impl Chromosome {
    pub fn new(bps: Vec<usize>, cls: Vec<usize>) -> Result<Self> {
        check_permutation(&bps, "bps")?;
        check_permutation(&cls, "cls")?;
        Ok(Chromosome { bps, cls })
    }

    /// Box packing sequence: the order in which the decoder tries boxes.
    pub fn bps(&self) -> &[usize] {
        &self.bps
    }

    /// Container loading sequence: the order in which containers open.
    pub fn cls(&self) -> &[usize] {
        &self.cls
    }

    /// True when the chromosome's permutation lengths match the instance.
    pub fn matches(&self, inst: &Instance) -> bool {
        self.bps.len() == inst.box_count() && self.cls.len() == inst.container_count()
    }

    /// Canonical form `b1,b2,...,bM|c1,c2,...,cN`. Two chromosomes are
    /// equal iff their texts are byte-equal.
    pub fn to_text(&self) -> String {
        format!("{}|{}", join_ids(&self.bps), join_ids(&self.cls))
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut parts = text.split('|');
        let (bps, cls) = match (parts.next(), parts.next(), parts.next()) {
            (Some(bps), Some(cls), None) => (bps, cls),
            _ => {
                return Err(Error::Chromosome(
                    "expected exactly two |-separated parts".into(),
                ))
            }
        };
        Chromosome::new(parse_ids(bps)?, parse_ids(cls)?)
    }
}

fn join_ids(ids: &[usize]) -> String {
    ids.iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn parse_ids(part: &str) -> Result<Vec<usize>> {
    part.split(',')
        .map(|f| {
            f.parse::<usize>()
                .map_err(|_| Error::Chromosome(format!("not an index: {f:?}")))
        })
        .collect()
}

fn check_permutation(seq: &[usize], part: &str) -> Result<()> {
    if seq.is_empty() {
        return Err(Error::Chromosome(format!("{part} is empty")));
    }
    let n = seq.len();
    let mut seen = vec![false; n];
    for &v in seq {
        if v < 1 || v > n {
            return Err(Error::Chromosome(format!(
                "{part}: index {v} out of range 1..={n}"
            )));
        }
        if seen[v - 1] {
            return Err(Error::Chromosome(format!("{part}: duplicate index {v}")));
        }
        seen[v - 1] = true;
    }
    Ok(())
}


#[cfg(test)]
mod prop_tests {
    use super::*;
    use proptest::prelude::*;

    fn permutation(max: usize) -> impl Strategy<Value = Vec<usize>> {
        (1..=max).prop_flat_map(|n| Just((1..=n).collect::<Vec<_>>()).prop_shuffle())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn chromosome_round_trip(bps in permutation(24), cls in permutation(8)) {
            let c = Chromosome::new(bps, cls).unwrap();
            let parsed = Chromosome::parse(&c.to_text()).unwrap();
            prop_assert_eq!(&parsed, &c);
            // canonical: equal iff byte-equal
            prop_assert_eq!(parsed.to_text(), c.to_text());
        }
    }
}
