use num_bigint::BigUint;
use vpal_core::indicator::{analyze, IndicatorCombination, Order};
use vpal_core::oracle::{type_invariance_scan, TypeVerdict};
use vpal_core::Budget;

/// n, indicator, c(n), omega0(n). For 117, omega0 is its single modulus 2054.
const TABLE: &str = "\
13  | I_15 - I_195 - I_465 + 2I_6045 | 15 | 6045
17  | I_280 - I_4760 - I_19880 + 2I_337960 | 280 | 337960
18  | I_1 | 1 | 1
19  | I_819 - I_15561 | 819 | 15561
26  | I_15 - I_195 - I_465 + 2I_6045 | 15 | 6045
37  | I_12 - I_444 - I_876 + 2I_32412 | 12 | 32412
39  | I_15 - I_195 - I_465 + 2I_6045 | 15 | 6045
48  | I_3 - I_21 | 3 | 21
49  | I_3243 - I_22701 | 3243 | 22701
56  | I_3 - I_21 - I_39 + 2I_273 | 3 | 273
79  | I_624 - I_49296 - I_60528 + 2I_4781712 | 624 | 4781712
103 | I_10234 - I_1054102 | 10234 | 1054102
107 | I_37100 - I_3969700 - I_26007100 + 2I_2782759700 | 37100 | 2782759700
109 | I_1686672 - I_183847248 | 1686672 | 183847248
113 | I_17360 - I_1961680 - I_5398960 + 2I_610082480 | 17360 | 610082480
117 | I_2054 | 2054 | 2054
119 | I_123760 - I_112745360 | 123760 | 112745360
122 | I_80 - I_1040 - I_1360 - I_4880 + I_17680 + 2I_63440 + 2I_82960 - 3I_1078480 | 80 | 1078480
";

fn big(s: &str) -> BigUint {
    s.trim().parse().unwrap()
}

#[test]
fn indicator_table() {
    for line in TABLE.lines() {
        let cols: Vec<&str> = line.split('|').map(str::trim).collect();
        let report = analyze(&big(cols[0]), Budget::default()).unwrap();
        let expected: IndicatorCombination = cols[1].parse().unwrap();
        assert_eq!(report.indicator, expected, "n = {}", cols[0]);
        assert_eq!(report.indicator.to_string(), cols[1]);
        assert_eq!(report.order, Order::Finite(big(cols[2])), "n = {}", cols[0]);
        assert_eq!(report.omega0, big(cols[3]), "n = {}", cols[0]);
    }
}

#[test]
fn identical_indicators_for_13_26_39() {
    let ind = |n: u32| analyze(&BigUint::from(n), Budget::default()).unwrap().indicator;
    assert_eq!(ind(13), ind(26));
    assert_eq!(ind(13), ind(39));
}

#[test]
fn omega0_of_5957_sits_strictly_inside() {
    let r = analyze(&BigUint::from(5957u32), Budget::default()).unwrap();
    assert_eq!(r.indicator.to_string(), "I_253 - I_759");
    assert_eq!(r.omega0, BigUint::from(759u32));
    assert_eq!(r.omega_f, BigUint::from(30470055u32));
    assert!(r.omega0 < r.omega_b);
}

#[test]
fn largest_modulus_of_21726_is_not_a_common_multiple() {
    let r = analyze(&BigUint::from(21726u32), Budget::default()).unwrap();
    let expected = "I_816 - I_5712 - I_8976 - I_10608 + I_16401 - I_32802 + I_62832 + I_74256 \
                    + I_116688 - I_816816 - I_1098867 + I_2197734";
    assert_eq!(r.indicator.to_string(), expected);
    assert_eq!(r.indicator.len(), 12);
    assert!(big("2197734") % big("816") != BigUint::from(0u32));
}

#[test]
fn walkthrough_126_json_fields() {
    let r = analyze(&BigUint::from(126u32), Budget::default()).unwrap();
    let json = r.to_json();
    assert_eq!(json.indicator().unwrap().to_string(), "I_154 - I_3542");
    assert_eq!(r.omega_f, BigUint::from(31878u32));
    assert_eq!(r.omega_b, BigUint::from(3542u32));
    assert_eq!(r.nondegenerate().count(), 1);
    assert_eq!(r.nondegenerate().next().unwrap().solution.to_string(), "(2,1,1,2)");
}

#[test]
fn types_agree_across_representations() {
    let entries = type_invariance_scan(150, 12, Budget::default());
    assert!(!entries.is_empty());
    for e in &entries {
        assert!(e.types.iter().all(|t| matches!(t, TypeVerdict::Type(_))), "m = {}", e.m);
        assert!(e.consistent, "m = {}: {:?}", e.m, e.types);
    }
}
