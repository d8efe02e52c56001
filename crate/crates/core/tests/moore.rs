use ca_core::measures::{dynamic_measure, DynamicParams};
use ca_core::rule::{BitOrder, RuleNumber};
use ca_core::sim::{step, step_naive};
use ca_core::{gol_truth_table, static_measure, Dims, Lattice, TruthTable};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const REPLICATOR: &str = concat!(
    "168956220003150428540506549680417619769424995409487733442556",
    "339612333081717128579374366701058219674682166161189003344417",
    "08509286446343520818184926824448",
);

#[test]
fn published_number_round_trips() {
    for order in [BitOrder::MsbFirst, BitOrder::LsbFirst] {
        let rn = RuleNumber::from_decimal(REPLICATOR, 9).unwrap();
        let tt = rn.decode(order);
        assert_eq!(RuleNumber::encode(&tt, order).to_decimal(), REPLICATOR);
    }
}

#[test]
fn bit_orders_agree_on_on_set_size() {
    let rn = RuleNumber::from_decimal(REPLICATOR, 9).unwrap();
    let a = rn.decode(BitOrder::MsbFirst);
    let b = rn.decode(BitOrder::LsbFirst);
    assert_eq!(a.count_ones(), b.count_ones());
    assert_eq!(a.reversed_significance(), b);
}

#[test]
fn game_of_life_static_growth_is_forced_by_on_set() {
    let gol = gol_truth_table();
    assert_eq!(gol.count_ones(), 140);
    let me = static_measure(&gol);
    assert_eq!(me.growth, 100.0 * 140.0 / 512.0);
    assert_eq!(me.stability, 0.0);
    assert!((me.sum() - 100.0).abs() < 1e-9);
}

#[test]
fn packed_engine_matches_naive_on_random_rules() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..5 {
        let tt = ca_core::search::random_chromosome(&mut rng);
        let c = Lattice::random(Dims::Grid { rows: 13, cols: 70 }, 0.5, &mut rng).unwrap();
        assert_eq!(step(&c, &tt).unwrap(), step_naive(&c, &tt).unwrap());
    }
}

/// Published M=1, M=2, M=4 percentages for rule 94 are 18.658, 32.467 and
/// 48.874. From density-0.5 starts the all-dead neighborhood, the only
/// decrease row, is rare and only becomes rarer, so decrease stays near a
/// few percent. Kept as a record of that gap.
#[test]
#[ignore = "published rule 94 dynamic vector is not reproduced from density 0.5"]
fn rule_94_dynamic_vector() {
    let md = dynamic_measure(&TruthTable::elementary(94), &DynamicParams::default()).unwrap();
    assert!((md.decrease - 18.658).abs() <= 5.0, "{md:?}");
    assert!((md.chaoticity - 32.467).abs() <= 5.0, "{md:?}");
    assert!((md.growth - 48.874).abs() <= 5.0, "{md:?}");
}
