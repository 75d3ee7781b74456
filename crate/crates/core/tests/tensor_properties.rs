//! Laws of Alt, ⊗, ∧ and linear pullback on random tensors at a point, and
//! agreement between the symbolic and pointwise wedge.

mod common;

use common::laws;
use proptest::prelude::*;

fn holds(law: laws::Law, seed: u64) -> Result<(), TestCaseError> {
    law(seed).map_err(TestCaseError::fail)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn alt_is_idempotent(seed in any::<u64>()) {
        holds(laws::alt_is_idempotent, seed)?;
    }

    #[test]
    fn alt_kills_products(seed in any::<u64>()) {
        holds(laws::alt_kills_products, seed)?;
    }

    #[test]
    fn c_identity_and_associativity(seed in any::<u64>()) {
        holds(laws::c_identity, seed)?;
    }

    #[test]
    fn wedge_equals_determinant(seed in any::<u64>()) {
        holds(laws::wedge_equals_determinant, seed)?;
    }

    #[test]
    fn basis_is_scaled_alt(seed in any::<u64>()) {
        holds(laws::basis_is_scaled_alt, seed)?;
    }

    #[test]
    fn pullback_transpose_law(seed in any::<u64>()) {
        holds(laws::pullback_transpose_law, seed)?;
    }

    #[test]
    fn symbolic_and_tensor_wedge_agree(seed in any::<u64>()) {
        holds(laws::symbolic_and_tensor_wedge_agree, seed)?;
    }
}
