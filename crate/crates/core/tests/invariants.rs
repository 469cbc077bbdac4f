use kstab_core::azflag::{
    delta_p_lower_bound, restricted_s, semistable_via_flags, BoundarySetting, FlagPoint, FlagSpec, PointKind,
};
use kstab_core::exactnum::{q, Poly};
use kstab_core::lattice::{catalog, is_nef, Catalog, DivClass, SurfaceModel};
use kstab_core::positivity::{pseff_threshold, volume, volume_profile, zariski};
use kstab_core::valuative::{a_value, beta, s_value, unstable_certificate, DivisorSpec};
use kstab_core::{Error, Rat};

fn named(m: &SurfaceModel, d: &str) -> DivisorSpec {
    DivisorSpec::named(m, d).unwrap()
}

fn p112(c: Rat) -> SurfaceModel {
    catalog("P(1,1,2)").unwrap().with_boundary("Q", c).unwrap()
}

#[test]
fn volumes_and_nefness() {
    let p2 = catalog("P2").unwrap();
    assert_eq!(volume(&p2, &p2.anticanonical()).unwrap(), Rat::int(9));
    assert_eq!(volume(&p2, &DivClass::zero(1)).unwrap(), Rat::zero());
    let w = catalog("P(1,1,2)").unwrap();
    assert_eq!(volume(&w, &w.anticanonical()).unwrap(), Rat::int(8));

    let f1 = catalog("F1").unwrap();
    let k = f1.anticanonical();
    let e = f1.curve("E1").unwrap();
    // -K + (1 - t)E at t = 2
    assert!(is_nef(&f1, &k.add_scaled(&e, &Rat::int(-1))));
    let dp7 = catalog("dP7").unwrap();
    let line = dp7.curve("L12").unwrap();
    assert!(!is_nef(&dp7, &dp7.anticanonical().add_scaled(&line, &Rat::int(-2))));
}

#[test]
fn zariski_examples() {
    let dp7 = catalog("dP7").unwrap();
    let line = dp7.curve("L12").unwrap();
    let d = dp7.anticanonical().add_scaled(&line, &Rat::int(-2));
    let z = zariski(&dp7, &d).unwrap();
    assert_eq!(z.positive, DivClass::from_ints(&[1, 0, 0]));
    assert_eq!(z.negative, vec![("E1".to_string(), Rat::one()), ("E2".to_string(), Rat::one())]);

    let f1 = catalog("F1").unwrap();
    let e = f1.curve("E1").unwrap();
    // Pullback of -K of the plane minus 5/2 E is still big; -K minus 5/2 E is not.
    let d = f1.anticanonical().add_scaled(&e, &q(-3, 2));
    assert_eq!(zariski(&f1, &d).unwrap().negative, vec![]);
    let d = f1.anticanonical().add_scaled(&e, &q(-5, 2));
    assert!(matches!(zariski(&f1, &d), Err(Error::NotPseudoEffective(_))));
    assert_eq!(volume(&f1, &d).unwrap(), Rat::zero());
}

#[test]
fn thresholds() {
    let p2 = catalog("P2").unwrap();
    let spec = named(&p2, "exceptional:pt");
    let prof = kstab_core::valuative::profile_for(&p2, &spec).unwrap();
    assert_eq!(prof.tau, Rat::int(3));
    assert_eq!(prof.profile.pieces(), &[Poly::from_ints(&[9, 0, -1])]);

    let cubic = catalog("cubic").unwrap();
    let k = cubic.anticanonical();
    assert_eq!(pseff_threshold(&cubic, &k, &k, "anticanonical-curve").unwrap(), Rat::one());

    let x = p112(q(1, 2));
    let prof = kstab_core::valuative::profile_for(&x, &named(&x, "exceptional")).unwrap();
    assert_eq!(prof.tau, q(3, 2));
}

#[test]
fn dp7_two_chamber_profile() {
    let dp7 = catalog("dP7").unwrap();
    let k = dp7.anticanonical();
    let prof = volume_profile(&dp7, &k, &dp7.curve("L12").unwrap(), "L12").unwrap();
    assert_eq!(prof.profile.breakpoints(), &[Rat::zero(), Rat::one(), Rat::int(3)]);
    // (3 - t)^2 - 2(1 - t)^2 then (3 - t)^2
    assert_eq!(prof.profile.pieces()[0], Poly::from_ints(&[7, -2, -1]));
    assert_eq!(prof.profile.pieces()[1], Poly::from_ints(&[9, -6, 1]));
    assert_eq!(prof.profile.integrate_all(), q(25, 3));
}

#[test]
fn log_discrepancies() {
    let p2 = catalog("P2").unwrap();
    assert_eq!(a_value(&p2, &named(&p2, "exceptional:pt")).unwrap(), Rat::int(2));
    let c = q(1, 3);
    let x = p112(c.clone());
    assert_eq!(a_value(&x, &named(&x, "Q")).unwrap(), Rat::one() - &c);
    for n in 2..=6u32 {
        let m = catalog(&format!("P(1,1,{n})")).unwrap();
        assert_eq!(a_value(&m, &named(&m, "exceptional")).unwrap(), q(2, n as i64));
    }
}

#[test]
fn s_and_beta() {
    let p2 = catalog("P2").unwrap();
    let b = beta(&p2, &named(&p2, "exceptional:pt")).unwrap();
    assert_eq!((b.a, b.s, b.beta), (Rat::int(2), Rat::int(2), Rat::zero()));

    let cubic = catalog("cubic").unwrap();
    assert_eq!(s_value(&cubic, &named(&cubic, "anticanonical-curve")).unwrap(), q(1, 3));

    let f1 = catalog("F1").unwrap();
    let b = beta(&f1, &named(&f1, "E1")).unwrap();
    assert_eq!((b.s, b.beta), (q(7, 6), q(-1, 6)));

    for c in [q(0, 1), q(1, 4), q(1, 2), q(3, 4)] {
        let x = p112(c.clone());
        assert_eq!(s_value(&x, &named(&x, "exceptional")).unwrap(), q(2, 3) * (Rat::int(2) - &c));
        let two_c = Rat::int(2) * &c;
        assert_eq!(beta(&x, &named(&x, "exceptional")).unwrap().beta, (&two_c - Rat::one()) / Rat::int(3));
        assert_eq!(beta(&x, &named(&x, "Q")).unwrap().beta, (Rat::one() - &two_c) / Rat::int(3));
    }
}

#[test]
fn destabilizer_search() {
    let dp7 = catalog("dP7").unwrap();
    let cands: Vec<DivisorSpec> = ["E1", "E2", "L12"].iter().map(|l| named(&dp7, l)).collect();
    let (spec, b) = unstable_certificate(&dp7, &cands).unwrap().unwrap();
    assert_eq!((spec.label(), b), ("L12".to_string(), q(-4, 21)));
    assert_eq!(beta(&dp7, &cands[0]).unwrap().beta, q(-2, 21));

    let p2 = catalog("P2").unwrap();
    let cands = vec![named(&p2, "exceptional:pt"), named(&p2, "line")];
    assert_eq!(unstable_certificate(&p2, &cands).unwrap(), None);

    let w = catalog("P(1,1,2)").unwrap();
    let (_, b) = unstable_certificate(&w, &[named(&w, "exceptional")]).unwrap().unwrap();
    assert!(b.is_negative());
}

fn derived_flags() -> Vec<FlagSpec> {
    let cat = Catalog::builtin();
    let generic = |covers: &[&str]| FlagPoint {
        label: "generic".into(),
        kind: PointKind::Generic,
        incidences: Vec::new(),
        covers: covers.iter().map(|s| s.to_string()).collect(),
    };
    let half = vec![BoundarySetting { label: "Q".into(), coefficient: q(1, 2) }];
    vec![
        FlagSpec::derive(cat, "cubic", "cubic", vec![], "anticanonical-curve", vec![], vec![generic(&["point"])])
            .unwrap(),
        FlagSpec::derive(
            cat,
            "ruling",
            "P(1,1,2)",
            half.clone(),
            "ruling",
            vec![("Q∩ruling".into(), q(1, 2))],
            vec![
                generic(&["smooth point"]),
                FlagPoint {
                    label: "Q∩ruling".into(),
                    kind: PointKind::Different,
                    incidences: Vec::new(),
                    covers: vec!["smooth point on Q".into()],
                },
            ],
        )
        .unwrap(),
        FlagSpec::derive(cat, "exc", "P(1,1,2)", half, "exceptional", vec![], vec![generic(&["vertex"])]).unwrap(),
    ]
}

#[test]
fn flag_bounds() {
    let flags = derived_flags();
    let cubic = &flags[0];
    assert_eq!(cubic.s_e(), q(1, 3));
    let b = delta_p_lower_bound(cubic, "generic").unwrap();
    assert_eq!((b.a_over_s, b.s_w, b.bound), (Rat::int(3), Rat::one(), Rat::one()));

    let ruling = &flags[1];
    assert_eq!(ruling.s_e(), Rat::one());
    assert_eq!(restricted_s(ruling, "generic").unwrap(), q(1, 2));
    assert_eq!(delta_p_lower_bound(ruling, "Q∩ruling").unwrap().bound, Rat::one());

    let exc = &flags[2];
    assert_eq!(exc.s_e(), Rat::one());
    let b = delta_p_lower_bound(exc, "generic").unwrap();
    assert_eq!((b.s_w, b.bound), (Rat::one(), Rat::one()));

    let x = p112(q(1, 2));
    let r = semistable_via_flags(&x, &[&flags[1], &flags[2]]).unwrap();
    assert!(r.semistable);
    let cubic_m = catalog("cubic").unwrap();
    assert!(semistable_via_flags(&cubic_m, &[&flags[0]]).unwrap().semistable);
    let f1 = catalog("F1").unwrap();
    let r = semistable_via_flags(&f1, &[]).unwrap();
    assert_eq!(r.destabilizer, Some(("E1".to_string(), q(-1, 6))));
}
