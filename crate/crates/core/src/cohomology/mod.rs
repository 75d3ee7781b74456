//! Cohomology at desk scale: Čech cohomology of good-cover nerves over ℚ,
//! exact-sequence bookkeeping for Mayer–Vietoris, and reference values.

mod mv;
mod s1;
mod tables;

pub use mv::{
    mayer_vietoris_problem, mv_solve, mv_total_space, sphere_betti, sphere_mv_problem, ExactSequenceProblem,
    MvSolution,
};
pub use s1::{rho_v, s1_connecting_generator, ConnectingGenerator, BAND};
pub use tables::{known_value_tables, poincare_duality_check, KnownValue};

use std::collections::{BTreeMap, BTreeSet};

use num::bigint::BigInt;
use num::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The nerve of a cover: one vertex per open set, one simplex per nonempty
/// (contractible) intersection. Always closed under taking faces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Nerve {
    vertices: usize,
    simplices: BTreeSet<Vec<usize>>,
}

/// On-disk form: `{ "vertices": V, "simplices": [[0,1], ...] }`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NerveFile {
    pub vertices: usize,
    pub simplices: Vec<Vec<usize>>,
}

/// Hard cap on simplex count to keep rank computations desk-sized.
pub const MAX_SIMPLICES: usize = 5000;

impl Nerve {
    /// Adds every face of every listed simplex and every vertex.
    pub fn new(vertices: usize, simplices: impl IntoIterator<Item = Vec<usize>>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for v in 0..vertices {
            set.insert(vec![v]);
        }
        for mut s in simplices {
            s.sort_unstable();
            if s.is_empty() {
                return Err(Error::InvalidInput("empty simplex".into()));
            }
            if s.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidInput(format!("simplex {s:?} repeats a vertex")));
            }
            if let Some(&v) = s.iter().find(|&&v| v >= vertices) {
                return Err(Error::InvalidIndex { index: v, dim: vertices });
            }
            if s.len() > 16 {
                return Err(Error::TooLarge(format!("simplex with {} vertices", s.len())));
            }
            // all nonempty subsets
            let m = s.len();
            for mask in 1u32..(1 << m) {
                let face: Vec<usize> = (0..m).filter(|i| mask & (1 << i) != 0).map(|i| s[i]).collect();
                set.insert(face);
                if set.len() > MAX_SIMPLICES {
                    return Err(Error::TooLarge(format!("more than {MAX_SIMPLICES} simplices")));
                }
            }
        }
        Ok(Nerve { vertices, simplices: set })
    }

    pub fn from_file(file: &NerveFile) -> Result<Self> {
        Nerve::new(file.vertices, file.simplices.iter().cloned())
    }

    pub fn to_file(&self) -> NerveFile {
        NerveFile { vertices: self.vertices, simplices: self.maximal_simplices() }
    }

    pub fn vertices(&self) -> usize {
        self.vertices
    }

    pub fn simplices(&self) -> impl Iterator<Item = &Vec<usize>> {
        self.simplices.iter()
    }

    /// Simplices with k+1 vertices, sorted.
    pub fn simplices_of_dim(&self, k: usize) -> Vec<Vec<usize>> {
        self.simplices.iter().filter(|s| s.len() == k + 1).cloned().collect()
    }

    pub fn max_dim(&self) -> Option<usize> {
        self.simplices.iter().map(|s| s.len() - 1).max()
    }

    pub fn maximal_simplices(&self) -> Vec<Vec<usize>> {
        self.simplices
            .iter()
            .filter(|s| {
                !self.simplices.iter().any(|t| t.len() > s.len() && s.iter().all(|v| t.binary_search(v).is_ok()))
            })
            .cloned()
            .collect()
    }

    /// Σ (−1)^k · #k-simplices.
    pub fn euler_characteristic(&self) -> i64 {
        self.simplices.iter().map(|s| if s.len() % 2 == 1 { 1 } else { -1 }).sum()
    }

    /// The Čech cochain complex with δ_k : C^k → C^{k+1}.
    pub fn cochain_complex(&self) -> CochainComplex {
        let top = self.max_dim().unwrap_or(0);
        let bases: Vec<Vec<Vec<usize>>> = (0..=top + 1).map(|k| self.simplices_of_dim(k)).collect();
        let mut deltas = Vec::new();
        for k in 0..=top {
            let index: BTreeMap<&Vec<usize>, usize> = bases[k].iter().enumerate().map(|(i, s)| (s, i)).collect();
            let rows = bases[k + 1].len();
            let cols = bases[k].len();
            let mut m = vec![vec![0i64; cols]; rows];
            for (r, sigma) in bases[k + 1].iter().enumerate() {
                // (δf)(σ) = Σ_i (−1)^i f(σ without its i-th vertex)
                for i in 0..sigma.len() {
                    let mut face = sigma.clone();
                    face.remove(i);
                    m[r][index[&face]] += if i % 2 == 0 { 1 } else { -1 };
                }
            }
            deltas.push(m);
        }
        CochainComplex { dims: bases.iter().take(top + 1).map(Vec::len).collect(), deltas }
    }

    /// Betti numbers b_0 … b_top of the nerve.
    pub fn betti(&self) -> Vec<usize> {
        self.cochain_complex().betti()
    }
}

/// Finite-dimensional cochain complex over ℚ with integer matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CochainComplex {
    /// dim C^k
    pub dims: Vec<usize>,
    /// deltas[k] is the (dim C^{k+1}) × (dim C^k) matrix of δ_k.
    pub deltas: Vec<Vec<Vec<i64>>>,
}

impl CochainComplex {
    pub fn ranks(&self) -> Vec<usize> {
        self.deltas.iter().map(|m| rank(m)).collect()
    }

    /// b_k = dim C^k − rank δ_k − rank δ_{k−1}.
    pub fn betti(&self) -> Vec<usize> {
        let ranks = self.ranks();
        (0..self.dims.len())
            .map(|k| {
                let before = if k == 0 { 0 } else { ranks[k - 1] };
                self.dims[k] - ranks.get(k).copied().unwrap_or(0) - before
            })
            .collect()
    }

    /// True when every δ_{k+1}δ_k vanishes.
    pub fn is_complex(&self) -> bool {
        self.deltas.windows(2).all(|w| {
            let (a, b) = (&w[0], &w[1]);
            b.iter().all(|row| {
                (0..a.first().map_or(0, Vec::len)).all(|j| row.iter().zip(a).map(|(x, r)| x * r[j]).sum::<i64>() == 0)
            })
        })
    }
}

/// Exact rank by fraction-free (Bareiss) elimination.
pub fn rank(m: &[Vec<i64>]) -> usize {
    let mut a: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut prev = BigInt::from(1);
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let v = (&a[r][c] * &a[i][j] - &a[i][c] * &a[r][j]) / &prev;
                a[i][j] = v;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[r][c].abs();
        r += 1;
    }
    r
}

/// A 4-cycle: the nerve of two arcs covering S¹, each split so that the nerve is simplicial.
pub fn circle_nerve() -> Nerve {
    Nerve::new(4, [vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 0]]).expect("fixed nerve")
}

/// A single contractible open set.
pub fn point_nerve() -> Nerve {
    Nerve::new(1, []).expect("fixed nerve")
}

/// The boundary of the (n+1)-simplex: a good cover of Sⁿ by n+2 caps.
pub fn sphere_nerve(n: usize) -> Nerve {
    let verts = n + 2;
    let facets = (0..verts).map(|skip| (0..verts).filter(|&v| v != skip).collect());
    Nerve::new(verts, facets).expect("fixed nerve")
}

/// The full simplex on `n+1` vertices (a contractible space).
pub fn simplex_nerve(n: usize) -> Nerve {
    Nerve::new(n + 1, [(0..=n).collect()]).expect("fixed nerve")
}

/// Triangulated r×c grid with opposite sides identified; `twist` flips the
/// row index when crossing the column seam (torus when false, Klein bottle when true).
pub fn grid_surface_nerve(rows: usize, cols: usize, twist: bool) -> Result<Nerve> {
    if rows < 3 || cols < 3 {
        return Err(Error::InvalidInput("grid needs at least 3×3 vertices".into()));
    }
    let vertex = |i: i64, j: i64| -> usize {
        let (r, c) = (rows as i64, cols as i64);
        let wraps = j.div_euclid(c);
        let jj = j.rem_euclid(c);
        let ii = if twist && wraps % 2 != 0 { -i } else { i };
        (ii.rem_euclid(r) * c + jj) as usize
    };
    let mut tris = BTreeSet::new();
    for i in 0..rows as i64 {
        for j in 0..cols as i64 {
            let (a, b, c, d) = (vertex(i, j), vertex(i + 1, j), vertex(i, j + 1), vertex(i + 1, j + 1));
            for t in [[a, b, d], [a, c, d]] {
                let mut t = t.to_vec();
                t.sort_unstable();
                if t.windows(2).any(|w| w[0] == w[1]) || !tris.insert(t) {
                    return Err(Error::InvalidInput("grid too small to be simplicial".into()));
                }
            }
        }
    }
    let nerve = Nerve::new(rows * cols, tris)?;
    // a triangulated closed surface has 3F = 2E
    let faces = nerve.simplices_of_dim(2).len();
    if faces != 2 * rows * cols || 3 * faces != 2 * nerve.simplices_of_dim(1).len() {
        return Err(Error::InvalidInput("grid identifications are not simplicial".into()));
    }
    Ok(nerve)
}

pub fn torus_nerve() -> Nerve {
    grid_surface_nerve(3, 3, false).expect("3×3 torus grid is simplicial")
}

pub fn klein_nerve() -> Nerve {
    grid_surface_nerve(4, 4, true).expect("4×4 twisted grid is simplicial")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn downward_closure() {
        let n = Nerve::new(3, [vec![2, 0, 1]]).unwrap();
        assert_eq!(n.simplices().count(), 7);
        assert_eq!(n.betti(), vec![1, 0, 0]);
    }

    #[test]
    fn small_spaces() {
        assert_eq!(point_nerve().betti(), vec![1]);
        assert_eq!(circle_nerve().betti(), vec![1, 1]);
        assert_eq!(sphere_nerve(2).betti(), vec![1, 0, 1]);
        assert_eq!(Nerve::new(2, []).unwrap().betti(), vec![2]);
    }

    #[test]
    fn surfaces() {
        let t = torus_nerve();
        assert_eq!(t.betti(), vec![1, 2, 1]);
        assert_eq!(t.euler_characteristic(), 0);
        assert_eq!(klein_nerve().betti(), vec![1, 1, 0]);
    }

    #[test]
    fn coboundary_squares_to_zero() {
        assert!(torus_nerve().cochain_complex().is_complex());
        assert!(sphere_nerve(3).cochain_complex().is_complex());
    }

    #[test]
    fn bareiss_rank() {
        assert_eq!(rank(&[vec![1, 2], vec![2, 4]]), 1);
        assert_eq!(rank(&[vec![0, 0], vec![0, 0]]), 0);
        assert_eq!(rank(&[vec![2, 1, 0], vec![1, 3, 1], vec![0, 1, 4]]), 3);
        assert_eq!(rank(&[]), 0);
    }

    #[test]
    fn malformed_nerves() {
        assert!(Nerve::new(2, [vec![0, 2]]).is_err());
        assert!(Nerve::new(2, [vec![0, 0]]).is_err());
        assert!(Nerve::new(2, [vec![]]).is_err());
    }
}
