use proptest::prelude::*;
use trivext::ElemExpr;
use trivext_cli::expr::{parse_module_expr, parse_ring_expr, ModuleExpr, RingExpr};

fn poly() -> impl Strategy<Value = Vec<u64>> {
    (prop::collection::vec(0u64..5, 1..4), 1u64..5).prop_map(|(mut c, lead)| {
        c.push(lead);
        c
    })
}

fn elem() -> impl Strategy<Value = ElemExpr> {
    let leaf = prop_oneof![(0u64..20).prop_map(ElemExpr::Int), poly().prop_map(ElemExpr::Poly)];
    leaf.prop_recursive(2, 8, 3, |inner| prop::collection::vec(inner, 2..4).prop_map(ElemExpr::Tuple))
}

fn module() -> impl Strategy<Value = ModuleExpr> {
    prop_oneof![
        prop::collection::vec(elem(), 1..3).prop_map(|ideal| ModuleExpr::Quot { ideal }),
        (0usize..4).prop_map(|rank| ModuleExpr::Free { rank }),
        (1usize..3, 1usize..3)
            .prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(elem(), c), r))
            .prop_map(|matrix| ModuleExpr::Pres { matrix }),
    ]
}

fn ring() -> impl Strategy<Value = RingExpr> {
    let leaf = prop_oneof![
        (2u64..50).prop_map(|n| RingExpr::ZMod { n }),
        (2u64..50).prop_map(|p| RingExpr::Gf { p }),
        (2u64..7, poly()).prop_map(|(p, modulus)| RingExpr::GfPoly { p, modulus }),
        (2u64..7, 1usize..9).prop_map(|(p, precision)| RingExpr::Series { p, precision }),
    ];
    leaf.prop_recursive(3, 12, 3, |inner| {
        prop_oneof![
            (inner.clone(), module()).prop_map(|(base, module)| RingExpr::Triv { base: Box::new(base), module }),
            prop::collection::vec(inner, 2..4).prop_map(|factors| RingExpr::Prod { factors }),
        ]
    })
}

proptest! {
    #[test]
    fn printing_then_parsing_is_identity(r in ring()) {
        let text = r.to_string();
        prop_assert_eq!(parse_ring_expr(&text).unwrap(), r);
    }

    #[test]
    fn modules_round_trip(m in module()) {
        prop_assert_eq!(parse_module_expr(&m.to_string()).unwrap(), m);
    }

    #[test]
    fn whitespace_is_insignificant(r in ring()) {
        let spaced = r.to_string().replace(',', " ,\n ").replace('(', "( ");
        prop_assert_eq!(parse_ring_expr(&spaced).unwrap(), r);
    }

    #[test]
    fn truncation_reports_a_position(r in ring(), cut in 1usize..40) {
        let text = r.to_string();
        prop_assume!(cut < text.len());
        if let Err(e) = parse_ring_expr(&text[..cut]) {
            prop_assert_eq!(e.line, 1);
            prop_assert!(e.col >= 1 && e.col <= cut + 1);
            prop_assert!(!e.expected.is_empty());
        }
    }
}
