//! Reference values of cohomology groups.

use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KnownValue {
    pub group: String,
    pub dimension: u64,
    pub statement: &'static str,
}

/// dim H^k_c(ℝⁿ), dim Hⁿ of compact connected n-manifolds, dim H⁰ of a connected
/// space, and the cohomology of spheres and the two closed surfaces used here.
pub fn known_value_tables() -> Vec<KnownValue> {
    let mut out = Vec::new();
    for n in 1..=4 {
        for k in 0..=n {
            out.push(KnownValue {
                group: format!("H^{k}_c(R^{n})"),
                dimension: u64::from(k == n),
                statement: "compactly supported cohomology of R^n is R in degree n and 0 otherwise",
            });
        }
    }
    out.push(KnownValue {
        group: "H^n(X), X compact connected orientable".into(),
        dimension: 1,
        statement: "top cohomology of a compact connected orientable manifold",
    });
    out.push(KnownValue {
        group: "H^n(X), X compact connected non-orientable".into(),
        dimension: 0,
        statement: "top cohomology vanishes without an orientation",
    });
    out.push(KnownValue {
        group: "H^0(X), X connected".into(),
        dimension: 1,
        statement: "locally constant functions on a connected space are constant",
    });
    for n in 1..=5 {
        for k in 0..=n {
            out.push(KnownValue {
                group: format!("H^{k}(S^{n})"),
                dimension: u64::from(k == 0 || k == n),
                statement: "spheres",
            });
        }
    }
    for (k, d) in [1, 2, 1].into_iter().enumerate() {
        out.push(KnownValue { group: format!("H^{k}(T^2)"), dimension: d, statement: "torus" });
    }
    for (k, d) in [1, 1, 0].into_iter().enumerate() {
        out.push(KnownValue { group: format!("H^{k}(K)"), dimension: d, statement: "Klein bottle, real coefficients" });
    }
    out
}

/// True when the Betti numbers of an n-manifold are palindromic, as duality
/// requires for orientable manifolds. Always false for `orientable = false`,
/// where duality makes no claim.
pub fn poincare_duality_check(betti: &[usize], orientable: bool) -> bool {
    orientable && betti.iter().eq(betti.iter().rev())
}
