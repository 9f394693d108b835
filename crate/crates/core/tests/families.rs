use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use triplebent::constructions::{
    e_union_by_rank, e_union_exhaustive, family3, SearchShape, SearchStatus, TripleJson,
};
use triplebent::{
    enumerate_params, family1, family2, family4, family5, oracle, search_custom_triples,
    synthesize, verify_an, walsh_spectrum, e_union, Error, FamilyParams, FamilyTag, FieldCtx,
    LinearizedPoly, PermutationTriple,
};

fn gf(n: u32) -> FieldCtx {
    FieldCtx::with_default_modulus(n).unwrap()
}

fn all_triples(tag: FamilyTag, m: u32) -> (FieldCtx, Vec<PermutationTriple>) {
    let f = gf(tag.field_degree(m).unwrap());
    let triples = enumerate_params(&f, tag, m)
        .unwrap()
        .iter()
        .map(|p| p.build(&f).unwrap())
        .collect();
    (f, triples)
}

fn random_permutation(f: &FieldCtx, rng: &mut ChaCha8Rng) -> LinearizedPoly {
    loop {
        let coeffs = (0..f.degree())
            .map(|_| f.elem(rng.gen_range(0..f.order() as u32)).unwrap())
            .collect();
        let l = LinearizedPoly::from_coeffs(f, coeffs).unwrap();
        if l.is_permutation() {
            return l;
        }
    }
}

#[test]
fn parameter_counts_at_m1_and_m2() {
    let expected = [
        (FamilyTag::Fam1, 1, 3),
        (FamilyTag::Fam2, 1, 2),
        (FamilyTag::Fam3i, 1, 2),
        (FamilyTag::Fam3ii, 1, 2),
        (FamilyTag::Fam4, 1, 3),
        (FamilyTag::Fam5, 1, 24),
        (FamilyTag::Fam1, 2, 5),
        (FamilyTag::Fam2, 2, 4),
        (FamilyTag::Fam4, 2, 15),
        (FamilyTag::Fam5, 2, 320),
    ];
    for (tag, m, count) in expected {
        let (_, triples) = all_triples(tag, m);
        assert_eq!(triples.len(), count, "{tag} m = {m}");
    }
}

#[test]
fn every_family_triple_at_m1_is_bent_and_not_mm_certified() {
    for tag in [
        FamilyTag::Fam1,
        FamilyTag::Fam2,
        FamilyTag::Fam3i,
        FamilyTag::Fam3ii,
        FamilyTag::Fam4,
        FamilyTag::Fam5,
    ] {
        let (f, triples) = all_triples(tag, 1);
        for t in &triples {
            let an = verify_an(t);
            assert!(an.satisfied, "{tag}: {:?}", t.params());
            assert_eq!(an, oracle::pointwise_an_check(t).unwrap());
            let e = e_union(t).unwrap();
            assert!(!e.covers_field);
            assert_eq!(e, oracle::pointwise_e_union(t).unwrap());
            let s = walsh_spectrum(&synthesize(t).unwrap()).unwrap();
            let target = 1i32 << f.degree();
            assert!(s.values().iter().all(|v| v.abs() == target), "{tag}");
        }
    }
}

#[test]
fn e_union_paths_agree_with_the_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for n in [2, 3, 4, 6, 8] {
        let f = gf(n);
        for _ in 0..40 {
            let t = PermutationTriple::custom(
                random_permutation(&f, &mut rng),
                random_permutation(&f, &mut rng),
                random_permutation(&f, &mut rng),
            )
            .unwrap();
            let pointwise = oracle::pointwise_e_union(&t).unwrap();
            assert_eq!(e_union_exhaustive(&t).unwrap(), pointwise);
            assert_eq!(e_union_by_rank(&t), pointwise);
        }
    }
    for (tag, m) in [(FamilyTag::Fam4, 2), (FamilyTag::Fam5, 2), (FamilyTag::Fam3i, 1)] {
        let (_, triples) = all_triples(tag, m);
        for t in triples.iter().take(25) {
            assert_eq!(e_union_by_rank(t), e_union_exhaustive(t).unwrap());
        }
    }
}

#[test]
fn verify_an_agrees_with_the_oracle_on_random_triples() {
    let mut rng = ChaCha8Rng::seed_from_u64(32);
    for n in 1..=8 {
        let f = gf(n);
        for _ in 0..60 {
            let mut phi: Vec<LinearizedPoly> = (0..3).map(|_| random_permutation(&f, &mut rng)).collect();
            if rng.gen_bool(0.2) {
                let k = rng.gen_range(0..3);
                let coeffs = (0..n).map(|_| f.elem(rng.gen_range(0..f.order() as u32)).unwrap()).collect();
                phi[k] = LinearizedPoly::from_coeffs(&f, coeffs).unwrap();
            }
            let t = PermutationTriple::custom(phi[0].clone(), phi[1].clone(), phi[2].clone()).unwrap();
            assert_eq!(verify_an(&t), oracle::pointwise_an_check(&t).unwrap(), "n = {n}");
        }
    }
}

#[test]
fn bentness_is_equivalent_to_property_an() {
    // Both directions over F_16 on random permutation triples, on the
    // family members and copies with one map replaced.
    let f = gf(4);
    let mut rng = ChaCha8Rng::seed_from_u64(33);
    let mut satisfied = 0;
    let mut violated = 0;
    let mut check = |t: &PermutationTriple| {
        let an = verify_an(t).satisfied;
        let bent = walsh_spectrum(&synthesize(t).unwrap()).unwrap().is_bent();
        assert_eq!(an, bent, "{:?}", t.phis());
        if an {
            satisfied += 1;
        } else {
            violated += 1;
        }
    };
    for _ in 0..400 {
        let t = PermutationTriple::custom(
            random_permutation(&f, &mut rng),
            random_permutation(&f, &mut rng),
            random_permutation(&f, &mut rng),
        )
        .unwrap();
        check(&t);
    }
    for tag in [FamilyTag::Fam1, FamilyTag::Fam2, FamilyTag::Fam4, FamilyTag::Fam5] {
        let (_, triples) = all_triples(tag, 1);
        for t in &triples {
            check(t);
            for k in 0..3 {
                check(&t.with_phi(k, random_permutation(&f, &mut rng)).unwrap());
            }
        }
    }
    assert!(violated >= 20);
    assert!(satisfied > 0);
}

#[test]
fn mm_certified_triples_give_bent_functions() {
    // (x, x, x) has E^U = F and (A_n); so does any (phi, phi, phi).
    let f = gf(4);
    let mut rng = ChaCha8Rng::seed_from_u64(34);
    for _ in 0..20 {
        let p = random_permutation(&f, &mut rng);
        let t = PermutationTriple::custom(p.clone(), p.clone(), p).unwrap();
        assert!(verify_an(&t).satisfied);
        assert!(e_union(&t).unwrap().covers_field);
        assert!(walsh_spectrum(&synthesize(&t).unwrap()).unwrap().is_bent());
    }
}

#[test]
fn constructors_reject_invalid_parameters() {
    let f = gf(4);
    let valid: Vec<u32> = enumerate_params(&f, FamilyTag::Fam1, 1)
        .unwrap()
        .iter()
        .map(|p| p.values()[0].value())
        .collect();
    for l in f.elements() {
        let r = family1(&f, 1, l);
        assert_eq!(r.is_ok(), valid.contains(&l.value()));
        if let Err(e) = r {
            assert!(e.is_condition_violation());
        }
    }
    assert!(family2(&f, 1, f.elem(2).unwrap()).unwrap_err().is_condition_violation());
    assert!(matches!(
        family4(&f, 1, f.one(), f.zero()),
        Err(Error::Degenerate { .. })
    ));
    assert!(family4(&f, 1, f.zero(), f.zero()).unwrap_err().is_condition_violation());
    assert!(family5(&f, 1, f.elem(2).unwrap(), f.zero(), f.one())
        .unwrap_err()
        .is_condition_violation());
    let f6 = gf(6);
    assert!(family3(&f6, 1, false, f6.one()).unwrap_err().is_condition_violation());
    assert!(family3(&f6, 1, true, f6.one()).unwrap_err().is_condition_violation());
    assert!(matches!(family1(&f6, 1, f6.one()), Err(Error::DegreeShape { .. })));
}

#[test]
fn family_triples_round_trip_through_json() {
    for tag in [FamilyTag::Fam3ii, FamilyTag::Fam4, FamilyTag::Fam5] {
        let (_, triples) = all_triples(tag, 1);
        for t in &triples {
            let text = serde_json::to_string(&t.to_json()).unwrap();
            let json: TripleJson = serde_json::from_str(&text).unwrap();
            let back = PermutationTriple::from_json(&json).unwrap();
            assert_eq!(&back, t);
            assert_eq!(serde_json::to_string(&back.to_json()).unwrap(), text);
        }
    }
    let (_, triples) = all_triples(FamilyTag::Fam1, 1);
    let mut json = triples[1].to_json();
    json.phi2.coeffs[1] = "0f".into();
    assert!(PermutationTriple::from_json(&json).is_err());
}

#[test]
fn params_rebuild_the_same_triple() {
    let (f, triples) = all_triples(FamilyTag::Fam5, 1);
    for t in &triples {
        let p = t.params();
        let again = FamilyParams::from_values(p.tag(), 1, &p.values()).unwrap();
        assert_eq!(&again.build(&f).unwrap(), t);
    }
}

#[test]
fn fam1_search_matches_brute_force() {
    let f = gf(4);
    let out = search_custom_triples(&f, SearchShape::Fam1Free, 1_000, 0).unwrap();
    assert_eq!(out.status, SearchStatus::Complete);
    let mut brute = Vec::new();
    for l in f.elements().skip(1) {
        for u in f.elements().skip(1) {
            let t = PermutationTriple::custom(
                LinearizedPoly::monomial(&f, f.one(), 2),
                LinearizedPoly::monomial(&f, l, 1),
                LinearizedPoly::monomial(&f, u, 3),
            )
            .unwrap();
            if oracle::pointwise_an_check(&t).unwrap().satisfied {
                brute.push(t.canonical());
            }
        }
    }
    brute.sort_by_key(|t| t.phis().iter().flat_map(|p| p.sort_key()).collect::<Vec<_>>());
    let found: Vec<_> = out.found.iter().map(|(t, _)| t.clone()).collect();
    assert_eq!(found, brute);

    let shared = search_custom_triples(&f, SearchShape::Fam1Pattern, 1_000, 0).unwrap();
    assert_eq!(shared.found.len(), 3);
    let (_, family) = all_triples(FamilyTag::Fam1, 1);
    for t in &family {
        assert!(shared.found.iter().any(|(s, _)| s.phis() == t.canonical().phis()));
    }
}

#[test]
fn monomial_search_is_complete_over_f8() {
    let f = gf(3);
    let out = search_custom_triples(&f, SearchShape::Monomials, 10_000, 0).unwrap();
    assert_eq!(out.status, SearchStatus::Complete);
    for (t, e) in &out.found {
        assert!(oracle::pointwise_an_check(t).unwrap().satisfied);
        assert_eq!(*e, oracle::pointwise_e_union(t).unwrap());
    }
    assert!(!out.found.is_empty());
}

fn moduli(n: u32) -> Vec<FieldCtx> {
    ((1u32 << n)..(1u32 << (n + 1)))
        .filter(|&p| p & 1 == 1 && triplebent::field::is_irreducible(p as u64))
        .map(|p| FieldCtx::new(n, Some(p)).unwrap())
        .collect()
}

/// At least `want` instances of a family, drawn from successive moduli.
fn sampled(tag: FamilyTag, m: u32, want: usize) -> Vec<PermutationTriple> {
    let mut out = Vec::new();
    for ctx in moduli(tag.field_degree(m).unwrap()) {
        if out.len() >= want {
            break;
        }
        for p in enumerate_params(&ctx, tag, m).unwrap() {
            out.push(p.build(&ctx).unwrap());
        }
    }
    out
}

#[test]
fn sampled_instances_satisfy_an_and_miss_part_of_the_field() {
    let mut cases: Vec<(FamilyTag, u32)> = [FamilyTag::Fam1, FamilyTag::Fam2, FamilyTag::Fam4, FamilyTag::Fam5]
        .iter()
        .map(|&t| (t, 2))
        .collect();
    cases.extend([(FamilyTag::Fam3i, 1), (FamilyTag::Fam3ii, 1), (FamilyTag::Fam3i, 2), (FamilyTag::Fam3ii, 2)]);
    for (tag, m) in cases {
        let triples = sampled(tag, m, 50);
        // Over GF(2^6) there are only 9 moduli with 2 parameters each.
        let want = if tag.field_degree(m) == Some(6) { 18 } else { 50 };
        assert!(triples.len() >= want, "{tag} m = {m}: {}", triples.len());
        for t in &triples {
            assert!(verify_an(t).satisfied, "{tag} m = {m} {:?}", t.params());
            assert!(!e_union(t).unwrap().covers_field);
        }
    }
}

#[test]
fn e_union_size_bounds() {
    for m in [1u32, 2] {
        let q = 1u64 << m;
        let bounds = [
            (FamilyTag::Fam1, q * q + q),
            (FamilyTag::Fam2, q * q + q),
            (FamilyTag::Fam4, q + q * q + q * q * q),
            (FamilyTag::Fam5, if m == 1 { 14 } else { q + 2 * q * q * q }),
            (FamilyTag::Fam3i, 3 * q.pow(4)),
            (FamilyTag::Fam3ii, 3 * q.pow(4)),
        ];
        for (tag, bound) in bounds {
            for t in sampled(tag, m, 30) {
                let e = e_union(&t).unwrap();
                assert!(e.union <= bound, "{tag} m = {m}: {} > {bound}", e.union);
            }
        }
    }
}

#[test]
fn structural_identities_of_the_families() {
    for m in [1u32, 2] {
        for t in sampled(FamilyTag::Fam2, m, 10) {
            assert!(t.phi2().compose(t.phi3()).unwrap().is_identity());
        }
        for t in sampled(FamilyTag::Fam4, m, 10) {
            assert!(t.phi2().compose(t.phi2()).unwrap().is_identity());
            assert!(t.phi1().compose(t.phi3()).unwrap().is_identity());
        }
        for t in sampled(FamilyTag::Fam5, m, 40) {
            assert!(t.phi3().compose(t.phi3()).unwrap().is_identity());
            let psi = t.sum();
            assert!(psi.compose(&psi).unwrap().is_identity());
        }
    }
}

#[test]
fn two_variable_monomial_search_matches_brute_force() {
    let f = gf(2);
    let out = search_custom_triples(&f, SearchShape::Monomials, 1_000, 0).unwrap();
    assert_eq!(out.status, SearchStatus::Complete);
    let mono: Vec<LinearizedPoly> = (0..2)
        .flat_map(|k| f.elements().skip(1).map(move |c| (k, c)))
        .map(|(k, c)| LinearizedPoly::monomial(&f, c, k))
        .collect();
    let mut brute = std::collections::BTreeSet::new();
    for a in &mono {
        for b in &mono {
            for c in &mono {
                let t = PermutationTriple::custom(a.clone(), b.clone(), c.clone()).unwrap();
                if oracle::pointwise_an_check(&t).unwrap().satisfied {
                    let key: Vec<u32> = t.canonical().phis().iter().flat_map(|p| p.sort_key()).collect();
                    brute.insert(key);
                }
            }
        }
    }
    let found: std::collections::BTreeSet<Vec<u32>> = out
        .found
        .iter()
        .map(|(t, _)| t.phis().iter().flat_map(|p| p.sort_key()).collect())
        .collect();
    assert_eq!(found, brute);
    let id = LinearizedPoly::identity(&f);
    assert!(out.found.iter().any(|(t, e)| t.phis().iter().all(|p| *p == id) && e.covers_field));
}
