mod common;

use common::*;
use proptest::prelude::*;
use quasitoep::text::{parse_rational, parse_weight};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn weights_print_and_parse_back(w in weight_expr()) {
        prop_assert_eq!(parse_weight(&w.to_string()).unwrap(), w);
    }

    #[test]
    fn rationals_print_and_parse_back(x in small_rational()) {
        prop_assert_eq!(parse_rational(&x.to_string()).unwrap(), x);
    }

    #[test]
    fn rational_functions_print_and_parse_back(a in rational_function(4)) {
        let w = quasitoep::shift::WeightExpr::rational(a.clone());
        prop_assert_eq!(parse_weight(&a.to_string()).unwrap(), w);
    }
}
