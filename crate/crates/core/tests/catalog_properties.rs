use std::collections::BTreeSet;

use kstab_core::exactnum::q;
use kstab_core::lattice::{catalog, enumerate_neg_curves, enumerate_with_bound, is_nef, Catalog, DivClass, SurfaceModel};
use kstab_core::positivity::{verify_zariski, volume_profile, volume_profile_class, zariski, VolumeProfile};
use kstab_core::valuative::{beta, s_value, DivisorSpec};
use kstab_core::Rat;

const LINE_COUNTS: [usize; 8] = [1, 3, 6, 10, 16, 27, 56, 240];

#[test]
fn neg_curve_counts() {
    for (k, &n) in (1..=8).zip(&LINE_COUNTS) {
        assert_eq!(enumerate_neg_curves(k).unwrap().len(), n, "k = {k}");
    }
    // A wider search box finds nothing new.
    for k in 1..=7 {
        assert_eq!(enumerate_with_bound(k, 9).unwrap().len(), LINE_COUNTS[k - 1], "k = {k}");
    }
}

#[test]
fn shipped_blowups_match_enumeration() {
    for k in 1..=8 {
        let m = catalog(&format!("Bl{k}P2")).unwrap();
        let shipped: BTreeSet<DivClass> = m.neg_curves.iter().map(|c| c.class.clone()).collect();
        let fresh: BTreeSet<DivClass> = enumerate_neg_curves(k).unwrap().into_iter().collect();
        assert_eq!(shipped, fresh, "Bl{k}P2");
        assert_eq!(m.intersect(&m.anticanonical(), &m.anticanonical()).unwrap(), Rat::int(9 - k as i64));
    }
}

#[test]
fn every_entry_validates() {
    let cat = Catalog::builtin();
    for (name, problems) in cat.validate_all() {
        assert!(problems.is_empty(), "{name}: {problems:?}");
    }
    assert_eq!(cat.names().len(), 20);
}

/// `(model, L, E label)` with `L = −K − Δ` on every del Pezzo entry and
/// `L` pulled back along every extraction, over all curves of the model.
/// The 240-line surface is covered by a sample.
fn catalogued_pairs() -> Vec<(SurfaceModel, DivClass, String)> {
    let cat = Catalog::builtin();
    let half = catalog("P(1,1,2)").unwrap().with_boundary("Q", q(1, 2)).unwrap();
    let mut bases: Vec<SurfaceModel> = cat.names().iter().map(|n| (*cat.model(n).unwrap()).clone()).collect();
    bases.push(half);
    let mut out = Vec::new();
    let mut push = |m: &SurfaceModel, l: &DivClass| {
        let labels = m.curve_labels();
        let take = if m.neg_curves.len() > 100 { 6 } else { labels.len() };
        for e in labels.into_iter().take(take) {
            out.push((m.clone(), l.clone(), e));
        }
    };
    for m in &bases {
        let l = m.log_anticanonical();
        if is_nef(m, &l) {
            push(m, &l);
        }
        for x in &m.extractions {
            push(&x.target, &x.pull_back(&l));
        }
    }
    out
}

fn profile(m: &SurfaceModel, l: &DivClass, label: &str) -> VolumeProfile {
    let e = m.curve(label).unwrap();
    volume_profile(m, l, &e, label).unwrap_or_else(|err| panic!("{} {label}: {err}", m.name))
}

fn sample_points(p: &VolumeProfile) -> Vec<Rat> {
    let bp = p.profile.breakpoints();
    let mut ts: Vec<Rat> = bp.to_vec();
    ts.extend(bp.windows(2).map(|w| (&w[0] + &w[1]) / Rat::int(2)));
    ts
}

#[test]
fn zariski_certificates_on_profiles() {
    for (m, l, label) in catalogued_pairs() {
        let p = profile(&m, &l, &label);
        let e = m.curve(&label).unwrap();
        for t in sample_points(&p) {
            if t == p.tau {
                continue;
            }
            let d = l.add_scaled(&e, &-&t);
            let z = zariski(&m, &d).unwrap();
            verify_zariski(&m, &d, &z).unwrap_or_else(|r| panic!("{} {label} t={t}: {r}", m.name));
            assert_eq!(m.intersect(&z.positive, &z.positive).unwrap(), p.volume_at(&t).unwrap());
        }
    }
}

#[test]
fn derivative_and_mass_identities() {
    for (m, l, label) in catalogued_pairs() {
        let p = profile(&m, &l, &label);
        for ch in &p.chambers {
            let piece = ch.positive.square(&m);
            assert_eq!(piece.derivative(), ch.e_degree.scale(&Rat::int(-2)), "{} {label}", m.name);
        }
        let mass: Rat = p
            .chambers
            .iter()
            .map(|c| Rat::int(2) * c.e_degree.integrate(&c.from, &c.to).unwrap())
            .sum();
        assert_eq!(mass, p.l_squared(), "{} {label}", m.name);
        assert_eq!(p.volume_at(&p.tau).unwrap(), Rat::zero());
    }
}

#[test]
fn smooth_point_blowup_volume_bound() {
    let cat = Catalog::builtin();
    let mut seen = 0;
    for name in cat.names() {
        let m = cat.model(&name).unwrap();
        for x in m.extractions.iter().filter(|x| x.is_smooth_point_blowup()) {
            let y = &x.target;
            let l = x.pull_back(&m.log_anticanonical());
            let l2 = y.intersect(&l, &l).unwrap();
            let e = y.curve(&x.exceptional).unwrap();
            let p = volume_profile_class(y, &l, &e).unwrap();
            for t in sample_points(&p) {
                assert!(p.volume_at(&t).unwrap() >= &l2 - t.pow(2), "{name} t={t}");
            }
            seen += 1;
        }
    }
    assert!(seen >= 8);
}

#[test]
fn beta_agrees_across_models() {
    for c in [q(0, 1), q(1, 4), q(1, 2), q(3, 4)] {
        let x = catalog("P(1,1,2)").unwrap().with_boundary("Q", c.clone()).unwrap();
        let ext = x.extraction("exceptional").unwrap();
        let y = &ext.target;
        let l = ext.pull_back(&x.log_anticanonical());
        let q_tilde = y.curve("Q").unwrap();
        let on_resolution = volume_profile(y, &l, &q_tilde, "Q").unwrap();
        let s = on_resolution.profile.integrate_all() / on_resolution.l_squared();
        assert_eq!(s, s_value(&x, &DivisorSpec::Curve("Q".into())).unwrap());
        let b = beta(&x, &DivisorSpec::Curve("Q".into())).unwrap();
        assert_eq!(b.beta, Rat::one() - &c - s);
    }
}
