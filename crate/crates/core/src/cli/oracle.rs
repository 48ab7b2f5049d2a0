//! Exhaustive tiny-instance oracle: decodes every chromosome in
//! lexicographic order and reports the search-space optimum for the
//! decoder's placement rule. The GA can never beat it and should match
//! it on tiny instances.

use crate::error::{Error, Result};
use crate::model::{Chromosome, Instance};
use crate::packer::decode;

pub const DEFAULT_ORACLE_LIMIT: u64 = 50_000;

#[derive(Clone, Debug)]
pub struct OracleResult {
    pub best_fitness: f64,
    /// First chromosome attaining the best fitness, in enumeration order.
    pub best_chromosome: Chromosome,
    /// M! * N!.
    pub evaluated_count: u64,
}

pub fn run_oracle(inst: &Instance, kb: usize, ke: usize, limit: u64) -> Result<OracleResult> {
    let m = inst.box_count();
    let n = inst.container_count();
    let evaluations = factorial(m) * factorial(n);
    if evaluations > u128::from(limit) {
        return Err(Error::OracleLimit { evaluations, limit });
    }

    let bps_perms = permutations_lex(m);
    let cls_perms = permutations_lex(n);
    let mut best: Option<(f64, Chromosome)> = None;
    let mut evaluated = 0u64;
    for bps in &bps_perms {
        for cls in &cls_perms {
            let chr = Chromosome::new(bps.clone(), cls.clone()).unwrap();
            let fitness = decode(&chr, inst, kb, ke).fitness;
            evaluated += 1;
            if best.as_ref().is_none_or(|(f, _)| fitness > *f) {
                best = Some((fitness, chr));
            }
        }
    }
    let (best_fitness, best_chromosome) = best.expect("at least one chromosome");
    Ok(OracleResult {
        best_fitness,
        best_chromosome,
        evaluated_count: evaluated,
    })
}

fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

/// All permutations of 1..=n in lexicographic order.
fn permutations_lex(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(n);
    let mut used = vec![false; n + 1];
    build(n, &mut current, &mut used, &mut out);
    out
}

fn build(n: usize, current: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
    if current.len() == n {
        out.push(current.clone());
        return;
    }
    for v in 1..=n {
        if !used[v] {
            used[v] = true;
            current.push(v);
            build(n, current, used, out);
            current.pop();
            used[v] = false;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{BoxSpec, ContainerSpec, Dims};

    fn instance(boxes: &[(i64, i64, i64)], containers: &[(i64, i64, i64)]) -> Instance {
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

    #[test]
    fn exact_fit_singleton_evaluates_once() {
        let inst = instance(&[(5, 5, 5)], &[(5, 5, 5)]);
        let r = run_oracle(&inst, 3, 5, DEFAULT_ORACLE_LIMIT).unwrap();
        assert_eq!(r.evaluated_count, 1);
        assert_eq!(r.best_fitness, 1.0);
        assert_eq!(r.best_chromosome.to_text(), "1|1");
    }

    #[test]
    fn two_boxes_evaluate_twice() {
        let inst = instance(&[(2, 2, 2), (3, 3, 3)], &[(5, 5, 5)]);
        let r = run_oracle(&inst, 3, 5, DEFAULT_ORACLE_LIMIT).unwrap();
        assert_eq!(r.evaluated_count, 2);
    }

    #[test]
    fn guard_limit_rejects_large_instances() {
        let boxes: Vec<(i64, i64, i64)> = (0..9).map(|_| (1, 1, 1)).collect();
        let inst = instance(&boxes, &[(5, 5, 5)]);
        // 9! = 362880 > 50000
        let err = run_oracle(&inst, 3, 5, DEFAULT_ORACLE_LIMIT).unwrap_err();
        assert!(err.to_string().contains("exceeds oracle limit"), "{err}");
    }

    #[test]
    fn permutations_are_lexicographic() {
        assert_eq!(
            permutations_lex(3),
            vec![
                vec![1, 2, 3],
                vec![1, 3, 2],
                vec![2, 1, 3],
                vec![2, 3, 1],
                vec![3, 1, 2],
                vec![3, 2, 1],
            ]
        );
        assert_eq!(permutations_lex(1), vec![vec![1]]);
    }

    #[test]
    fn first_maximizer_in_order_is_reported() {
        // both orders of two identical boxes give the same fitness; the
        // lexicographically first chromosome must be reported
        let inst = instance(&[(2, 2, 2), (2, 2, 2)], &[(4, 2, 2)]);
        let r = run_oracle(&inst, 3, 5, DEFAULT_ORACLE_LIMIT).unwrap();
        assert_eq!(r.best_chromosome.to_text(), "1,2|1");
        assert_eq!(r.best_fitness, 1.0);
    }
}
