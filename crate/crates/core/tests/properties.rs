mod common;

use apolar::Field;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn run(idx: usize, prime: bool, seed: u64) -> Result<(), TestCaseError> {
    let field = if prime { Field::Prime(101) } else { Field::Rationals };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (name, check) = common::PROPERTIES[idx];
    check(field, &mut rng).map_err(|m| TestCaseError::fail(format!("{name} over {field}, seed {seed}: {m}")))
}

macro_rules! property {
    ($name:ident, $idx:expr) => {
        proptest! {
            #![proptest_config(ProptestConfig::with_cases(64))]
            #[test]
            fn $name(seed in any::<u64>(), prime in any::<bool>()) {
                run($idx, prime, seed)?;
            }
        }
    };
}

property!(commutator_identity, 0);
property!(pairing_adjointness, 1);
property!(module_law, 2);
property!(automorphism_adjunction, 3);
property!(compose_contract, 4);
property!(tdf_invariance, 5);
property!(trace_replay, 6);
property!(double_perp, 7);
property!(symmetric_decomposition, 8);
