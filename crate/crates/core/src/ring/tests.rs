use super::*;

fn ring(d: RingDescriptor) -> Ring {
    construct_ring(&d).unwrap()
}

fn z4_triv_z2() -> Ring {
    ring(RingDescriptor::TrivialExt {
        base: Box::new(RingDescriptor::ZMod(4)),
        module: ModuleDescriptor::Quot(vec![Encoding::Int(2)]),
    })
}

fn gf2_trunc(n: usize) -> RingDescriptor {
    let mut modulus = vec![0; n + 1];
    modulus[n] = 1;
    RingDescriptor::PolyQuotient { p: 2, modulus }
}

fn el(r: &Ring, s: &str) -> Elem {
    RingElement::parse(r, s).unwrap().elem()
}

fn rendered(r: &Ring, xs: &[Elem]) -> Vec<String> {
    xs.iter().map(|&x| r.render(x)).collect()
}

#[test]
fn zmod4_is_local_with_ideal_two() {
    let r = ring(RingDescriptor::ZMod(4));
    assert_eq!(r.cardinality(), Cardinality::Finite(4));
    assert!(r.is_local());
    assert_eq!(rendered(&r, &r.locality().maximal_ideal_gens), vec!["2"]);
    assert_eq!(r.locality().residue_field, Some(RingDescriptor::PrimeField(2)));
}

#[test]
fn truncated_polynomial_ring_is_local() {
    let r = ring(gf2_trunc(4));
    assert_eq!(r.card(), 16);
    assert!(r.is_local());
    assert_eq!(rendered(&r, &r.locality().maximal_ideal_gens), vec!["x"]);
    assert_eq!(r.locality().residue_field, Some(RingDescriptor::PrimeField(2)));
}

#[test]
fn products_are_not_local() {
    let r = ring(RingDescriptor::Product(vec![RingDescriptor::ZMod(4), RingDescriptor::PrimeField(2)]));
    assert_eq!(r.card(), 8);
    assert!(!r.is_local());
    assert!(r.locality().residue_field.is_none());
}

#[test]
fn trivial_extension_multiplication() {
    let r = z4_triv_z2();
    let x = RingElement::parse(&r, "(3,1)").unwrap();
    let y = RingElement::parse(&r, "(2,1)").unwrap();
    assert_eq!(arith(ArithOp::Mul, &x, &y).unwrap().to_string(), "(2,1)");
    let a = RingElement::parse(&r, "(2,0)").unwrap();
    let b = RingElement::parse(&r, "(0,1)").unwrap();
    assert_eq!(arith(ArithOp::Mul, &a, &b).unwrap().to_string(), "(0,0)");
    // non-canonical input is reduced
    assert_eq!(RingElement::parse(&r, "(7,3)").unwrap().to_string(), "(3,1)");
}

#[test]
fn telescoping_product_is_one() {
    let r = ring(gf2_trunc(4));
    let x = RingElement::parse(&r, "1+x").unwrap();
    let y = RingElement::parse(&r, "1+x+x^2+x^3").unwrap();
    assert_eq!(arith(ArithOp::Mul, &x, &y).unwrap().elem(), r.one());
}

#[test]
fn arithmetic_rejects_mixed_rings() {
    let a = ring(RingDescriptor::ZMod(4));
    let b = ring(RingDescriptor::ZMod(8));
    let x = RingElement::new(&a, a.one());
    let y = RingElement::new(&b, b.one());
    assert_eq!(arith(ArithOp::Add, &x, &y), Err(Error::RingMismatch));
}

#[test]
fn units_and_inverses() {
    let z4 = ring(RingDescriptor::ZMod(4));
    assert_eq!(z4.inverse(Elem(3)).unwrap(), Elem(3));
    let t = ring(gf2_trunc(4));
    assert!(!t.is_unit(el(&t, "x")));
    assert!(matches!(t.inverse(el(&t, "x")), Err(Error::NotAUnit(_))));
    let s = ring(RingDescriptor::SeriesTrunc { p: 2, precision: 4 });
    let inv = s.inverse(el(&s, "1+x")).unwrap();
    assert_eq!(s.render(inv), "x^3+x^2+x+1");
}

#[test]
fn regularity() {
    let z4 = ring(RingDescriptor::ZMod(4));
    assert!(!z4.is_regular(Elem(2)));
    assert!(z4.is_regular(Elem(3)));
    let s = ring(RingDescriptor::SeriesTrunc { p: 2, precision: 8 });
    assert!(s.is_regular(el(&s, "x")));
    assert!(!s.is_regular(s.zero()));
    assert_eq!(s.cardinality(), Cardinality::InfiniteTruncated { truncated: 256 });
}

#[test]
fn idempotent_lists() {
    let z4 = ring(RingDescriptor::ZMod(4));
    assert_eq!(rendered(&z4, &z4.idempotents().unwrap()), vec!["0", "1"]);
    let prod = ring(RingDescriptor::Product(vec![RingDescriptor::ZMod(4), RingDescriptor::PrimeField(2)]));
    let mut ids = rendered(&prod, &prod.idempotents().unwrap());
    ids.sort();
    assert_eq!(ids, vec!["(0,0)", "(0,1)", "(1,0)", "(1,1)"]);
    let t = z4_triv_z2();
    assert_eq!(rendered(&t, &t.idempotents().unwrap()), vec!["(0,0)", "(1,0)"]);
    let s = ring(RingDescriptor::SeriesTrunc { p: 2, precision: 3 });
    assert_eq!(s.idempotents(), Err(Error::NotFinite));
}

#[test]
fn enumeration_order() {
    let f = ring(RingDescriptor::PrimeField(2));
    assert_eq!(rendered(&f, &f.enumerate_elements().unwrap().collect::<Vec<_>>()), vec!["0", "1"]);
    assert_eq!(z4_triv_z2().enumerate_elements().unwrap().count(), 8);
    let prod = ring(RingDescriptor::Product(vec![RingDescriptor::ZMod(4), RingDescriptor::PrimeField(2)]));
    let all = rendered(&prod, &prod.enumerate_elements().unwrap().collect::<Vec<_>>());
    assert_eq!(all, vec!["(0,0)", "(0,1)", "(1,0)", "(1,1)", "(2,0)", "(2,1)", "(3,0)", "(3,1)"]);
}

#[test]
fn local_factor_decomposition() {
    let prod = ring(RingDescriptor::Product(vec![RingDescriptor::ZMod(4), RingDescriptor::PrimeField(2)]));
    let fs = decompose_into_local_factors(&prod).unwrap();
    assert_eq!(fs.len(), 2);
    assert_eq!(fs[0].ring.descriptor(), &RingDescriptor::ZMod(4));
    assert_eq!(fs[1].ring.descriptor(), &RingDescriptor::PrimeField(2));
    assert_eq!(prod.render(fs[0].idempotent), "(1,0)");
    assert_eq!(prod.render(fs[1].idempotent), "(0,1)");

    let z4 = ring(RingDescriptor::ZMod(4));
    let fs = decompose_into_local_factors(&z4).unwrap();
    assert_eq!(fs.len(), 1);
    assert_eq!(fs[0].idempotent, z4.one());

    let three = ring(RingDescriptor::Product(vec![
        RingDescriptor::PrimeField(2),
        RingDescriptor::PrimeField(2),
        RingDescriptor::ZMod(4),
    ]));
    assert_eq!(decompose_into_local_factors(&three).unwrap().len(), 3);

    let z12 = ring(RingDescriptor::ZMod(12));
    let fs = decompose_into_local_factors(&z12).unwrap();
    assert_eq!(fs.iter().map(|f| f.ring.card()).collect::<Vec<_>>(), vec![4, 3]);

    // x^2 + x = x(x+1) over GF(2) splits into two copies of GF(2) via corners
    let split = ring(RingDescriptor::PolyQuotient { p: 2, modulus: vec![0, 1, 1] });
    let fs = decompose_into_local_factors(&split).unwrap();
    assert_eq!(fs.len(), 2);
    assert!(fs.iter().all(|f| f.ring.is_field()));
}

#[test]
fn residue_field_of_extension_field_quotient() {
    // GF(2)[x]/((x^2+x+1)^2) has residue field GF(4)
    let r = ring(RingDescriptor::PolyQuotient { p: 2, modulus: vec![1, 0, 1, 0, 1] });
    assert!(r.is_local());
    assert_eq!(r.locality().residue_field, Some(RingDescriptor::PolyQuotient { p: 2, modulus: vec![1, 1, 1] }));
}

#[test]
fn frames_give_unique_coordinates() {
    for d in [
        RingDescriptor::ZMod(8),
        gf2_trunc(3),
        RingDescriptor::TrivialExt {
            base: Box::new(RingDescriptor::ZMod(4)),
            module: ModuleDescriptor::Quot(vec![Encoding::Int(2)]),
        },
        RingDescriptor::Product(vec![RingDescriptor::ZMod(4), RingDescriptor::PrimeField(2)]),
    ] {
        let r = ring(d);
        let f = r.frame().unwrap();
        let total: u64 = f.order_exps().iter().map(|&k| f.prime().pow(k)).product();
        assert_eq!(total as usize, r.card());
        for x in r.all_elements() {
            assert_eq!(f.element(f.coords(x)), x);
        }
        for x in r.all_elements() {
            for y in r.all_elements() {
                let s: Vec<u64> = f.coords(x).iter().zip(f.coords(y)).map(|(a, b)| a + b).collect();
                assert_eq!(f.element(&s), r.add(x, y));
            }
        }
    }
    assert!(ring(RingDescriptor::ZMod(6)).frame().is_none());
}

#[test]
fn invalid_descriptors_are_rejected() {
    assert!(matches!(construct_ring(&RingDescriptor::ZMod(1)), Err(Error::InvalidDescriptor(_))));
    assert!(matches!(construct_ring(&RingDescriptor::Product(vec![])), Err(Error::InvalidDescriptor(_))));
    assert!(matches!(
        construct_ring(&RingDescriptor::PolyQuotient { p: 2, modulus: vec![1, 1, 0] }),
        Err(Error::InvalidDescriptor(_))
    ));
    assert!(matches!(construct_ring(&RingDescriptor::ZMod(5000)), Err(Error::TooLarge { .. })));
}
