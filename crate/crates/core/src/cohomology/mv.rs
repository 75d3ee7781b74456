//! Dimension bookkeeping for long exact sequences.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An exact sequence 0 → A₁ → ⋯ → A_m → 0 with some slot dimensions and some
/// map ranks known. `ranks[i]` is the rank of the map out of slot `i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactSequenceProblem {
    pub dims: Vec<Option<u64>>,
    #[serde(default)]
    pub ranks: Vec<Option<u64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum MvSolution {
    Solved { dims: Vec<u64>, ranks: Vec<u64> },
    /// More than one assignment fits; only values forced by propagation are filled in.
    UnderDetermined { dims: Vec<Option<u64>>, ranks: Vec<Option<u64>> },
}

impl MvSolution {
    pub fn dims(&self) -> Option<&[u64]> {
        match self {
            MvSolution::Solved { dims, .. } => Some(dims),
            MvSolution::UnderDetermined { .. } => None,
        }
    }
}

impl ExactSequenceProblem {
    /// Slot dimensions only; all ranks unknown.
    pub fn from_dims(dims: Vec<Option<u64>>) -> Self {
        let ranks = vec![None; dims.len().saturating_sub(1)];
        ExactSequenceProblem { dims, ranks }
    }

    fn validate(&self) -> Result<Vec<Option<u64>>> {
        let m = self.dims.len();
        if m < 2 {
            return Err(Error::InvalidInput("an exact sequence needs at least two slots".into()));
        }
        if self.dims[0] != Some(0) || self.dims[m - 1] != Some(0) {
            return Err(Error::InvalidInput("sequence must begin and end with a known zero slot".into()));
        }
        let mut ranks = self.ranks.clone();
        if ranks.is_empty() {
            ranks = vec![None; m - 1];
        }
        if ranks.len() != m - 1 {
            return Err(Error::InvalidInput(format!("{} slots need {} ranks, got {}", m, m - 1, ranks.len())));
        }
        Ok(ranks)
    }
}

fn inconsistent(slot: usize) -> Error {
    Error::Inconsistent(format!("exactness fails at slot {slot}"))
}

/// Rank into slot `i` and out of it (both 0 at the ends).
fn around(ranks: &[Option<u64>], i: usize) -> (Option<u64>, Option<u64>) {
    let inc = if i == 0 { Some(0) } else { ranks[i - 1] };
    let out = if i == ranks.len() { Some(0) } else { ranks[i] };
    (inc, out)
}

/// Forward/backward propagation of dim(Aᵢ) = rank(in) + rank(out) to a fixed point.
fn propagate(dims: &mut [Option<u64>], ranks: &mut [Option<u64>]) -> Result<()> {
    loop {
        let mut changed = false;
        for i in 0..dims.len() {
            let (inc, out) = around(ranks, i);
            match (dims[i], inc, out) {
                (Some(d), Some(a), Some(b)) if d != a + b => return Err(inconsistent(i)),
                (None, Some(a), Some(b)) => {
                    dims[i] = Some(a + b);
                    changed = true;
                }
                (Some(d), Some(a), None) => {
                    ranks[i] = Some(d.checked_sub(a).ok_or_else(|| inconsistent(i))?);
                    changed = true;
                }
                (Some(d), None, Some(b)) => {
                    ranks[i - 1] = Some(d.checked_sub(b).ok_or_else(|| inconsistent(i))?);
                    changed = true;
                }
                (Some(0), None, None) => {
                    ranks[i - 1] = Some(0);
                    ranks[i] = Some(0);
                    changed = true;
                }
                _ => {}
            }
        }
        if !changed {
            return Ok(());
        }
    }
}

/// Solves for every slot dimension, or reports that several solutions exist.
pub fn mv_solve(problem: &ExactSequenceProblem) -> Result<MvSolution> {
    let mut ranks = problem.validate()?;
    let mut dims = problem.dims.clone();
    propagate(&mut dims, &mut ranks)?;
    let unknown: Vec<usize> = (0..ranks.len()).filter(|&i| ranks[i].is_none()).collect();
    if unknown.is_empty() {
        return Ok(MvSolution::Solved {
            dims: dims.iter().map(|d| d.expect("all ranks known")).collect(),
            ranks: ranks.iter().map(|r| r.expect("known")).collect(),
        });
    }
    // a rank is bounded by any known neighbouring dimension
    let bounds: Vec<Option<u64>> = unknown
        .iter()
        .map(|&i| match (dims[i], dims[i + 1]) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (Some(a), None) | (None, Some(a)) => Some(a),
            (None, None) => None,
        })
        .collect();
    let unbounded = bounds.iter().any(Option::is_none);
    let mut found = Vec::new();
    search(&unknown, &bounds, 0, &dims, &mut ranks.clone(), &mut found);
    match found.len() {
        0 => Err(Error::Inconsistent("no non-negative ranks satisfy exactness".into())),
        1 if !unbounded => {
            let mut sol = found.pop().expect("one solution");
            propagate(&mut dims, &mut sol)?;
            Ok(MvSolution::Solved {
                dims: dims.iter().map(|d| d.expect("determined")).collect(),
                ranks: sol.iter().map(|r| r.expect("determined")).collect(),
            })
        }
        _ => Ok(MvSolution::UnderDetermined { dims, ranks }),
    }
}

fn consistent(dims: &[Option<u64>], ranks: &[Option<u64>]) -> bool {
    (0..dims.len()).all(|i| match (dims[i], around(ranks, i)) {
        (Some(d), (Some(a), Some(b))) => d == a + b,
        _ => true,
    })
}

/// Collects up to two solutions; unbounded ranks are tried at 0 only.
fn search(
    unknown: &[usize],
    bounds: &[Option<u64>],
    pos: usize,
    dims: &[Option<u64>],
    trial: &mut Vec<Option<u64>>,
    found: &mut Vec<Vec<Option<u64>>>,
) {
    if found.len() >= 2 {
        return;
    }
    if pos == unknown.len() {
        found.push(trial.clone());
        return;
    }
    for r in 0..=bounds[pos].unwrap_or(0) {
        trial[unknown[pos]] = Some(r);
        if consistent(dims, trial) {
            search(unknown, bounds, pos + 1, dims, trial, found);
        }
    }
    trial[unknown[pos]] = None;
}

/// The Mayer–Vietoris sequence of X = U ∪ V through degree `top`:
/// 0 → H⁰(X) → H⁰(U)⊕H⁰(V) → H⁰(U∩V) → H¹(X) → ⋯ → H^top(U∩V) → 0.
/// Slot 3k+1 holds H^k(X); `h0` is H⁰(X) when known (1 for connected X).
pub fn mayer_vietoris_problem(
    top: usize,
    h0: Option<u64>,
    u: &[usize],
    v: &[usize],
    overlap: &[usize],
) -> ExactSequenceProblem {
    let at = |b: &[usize], k: usize| b.get(k).copied().unwrap_or(0) as u64;
    let mut dims = vec![Some(0)];
    for k in 0..=top {
        dims.push(if k == 0 { h0 } else { None });
        dims.push(Some(at(u, k) + at(v, k)));
        dims.push(Some(at(overlap, k)));
    }
    dims.push(Some(0));
    ExactSequenceProblem::from_dims(dims)
}

/// Reads H^k(X) back out of a solved sequence built by [`mayer_vietoris_problem`].
pub fn mv_total_space(solution: &MvSolution) -> Option<Vec<usize>> {
    let dims = solution.dims()?;
    Some((1..dims.len() - 1).step_by(3).map(|i| dims[i] as usize).collect())
}

/// The Mayer–Vietoris problem for Sⁿ covered by two caps whose overlap is a
/// band around S^{n−1} with the given Betti numbers.
pub fn sphere_mv_problem(n: usize, equator: &[usize]) -> ExactSequenceProblem {
    mayer_vietoris_problem(n, Some(1), &[1], &[1], equator)
}

/// Betti numbers of Sⁿ (n ≥ 1), by solving the Mayer–Vietoris sequence
/// recursively starting from S⁰ (two points).
pub fn sphere_betti(n: usize) -> Result<Vec<usize>> {
    if n == 0 {
        return Err(Error::InvalidInput("sphere_betti needs n ≥ 1".into()));
    }
    let mut equator = vec![2];
    for m in 1..=n {
        let sol = mv_solve(&sphere_mv_problem(m, &equator))?;
        equator = mv_total_space(&sol)
            .ok_or_else(|| Error::Inconsistent(format!("Mayer–Vietoris for S^{m} is under-determined")))?;
    }
    Ok(equator)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn circle_sequence() {
        // 0 → H⁰(S¹) → ℝ² → ℝ² → H¹(S¹) → 0
        let p = ExactSequenceProblem::from_dims(vec![Some(0), Some(1), Some(2), Some(2), None, Some(0)]);
        let sol = mv_solve(&p).unwrap();
        assert_eq!(sol.dims().unwrap(), &[0, 1, 2, 2, 1, 0]);
    }

    #[test]
    fn torus_dimensions_alone_are_not_enough() {
        let p = mayer_vietoris_problem(2, Some(1), &[1, 1], &[1, 1], &[2, 2]);
        assert!(matches!(mv_solve(&p).unwrap(), MvSolution::UnderDetermined { .. }));
    }

    #[test]
    fn klein_with_restriction_rank() {
        let mut p = mayer_vietoris_problem(2, Some(1), &[1, 1], &[1, 1], &[2, 2]);
        // j¹ : H¹(U)⊕H¹(V) → H¹(U∩V) leaves slot 5
        p.ranks[5] = Some(2);
        let sol = mv_solve(&p).unwrap();
        assert_eq!(mv_total_space(&sol).unwrap(), vec![1, 1, 0]);
        let mut p = mayer_vietoris_problem(2, Some(1), &[1, 1], &[1, 1], &[2, 2]);
        p.ranks[5] = Some(1);
        assert_eq!(mv_total_space(&mv_solve(&p).unwrap()).unwrap(), vec![1, 2, 1]);
    }

    #[test]
    fn spheres() {
        assert_eq!(sphere_betti(1).unwrap(), vec![1, 1]);
        assert_eq!(sphere_betti(2).unwrap(), vec![1, 0, 1]);
        assert_eq!(sphere_betti(5).unwrap(), vec![1, 0, 0, 0, 0, 1]);
        assert!(sphere_betti(0).is_err());
    }

    #[test]
    fn inconsistent_and_malformed() {
        let p = ExactSequenceProblem::from_dims(vec![Some(0), Some(1), Some(0)]);
        assert!(matches!(mv_solve(&p), Err(Error::Inconsistent(_))));
        let p = ExactSequenceProblem::from_dims(vec![Some(1), Some(1)]);
        assert!(matches!(mv_solve(&p), Err(Error::InvalidInput(_))));
        let p = ExactSequenceProblem { dims: vec![Some(0), Some(0)], ranks: vec![None, None] };
        assert!(mv_solve(&p).is_err());
    }

    #[test]
    fn alternating_sum_vanishes() {
        let sol = mv_solve(&sphere_mv_problem(3, &[1, 0, 1])).unwrap();
        let dims = sol.dims().unwrap();
        let alt: i64 = dims.iter().enumerate().map(|(i, &d)| if i % 2 == 0 { d as i64 } else { -(d as i64) }).sum();
        assert_eq!(alt, 0);
    }
}
