//! The twelve acceptance criteria, one pass/fail line each.

use pointed_hopf::abelian::AbelianGroup;
use pointed_hopf::classify::{
    build_p3_list, distinguish, theta_search, CensusEntry, CensusSpec, CensusType,
};
use pointed_hopf::cyclotomic::{qbinomial_recurrence, Cyclotomic};
use pointed_hopf::hopfcore::{group_algebra, IsoOutcome, IsoSearchConfig, StructureHopf};
use pointed_hopf::lifting::{
    build_family_b, build_lifting, diagonal_automorphisms, family_iso, predicted_filtration,
    validate_compatible, CompatibleDatum, FamilyParams, Lifting,
};
use pointed_hopf::qls::{bosonize, build_qls, validate_datum, verify_braided};
use pointed_hopf::rewrite::{check_overlaps, reference_constraints, Presentation, Scalars};
use std::collections::BTreeMap;
use std::time::{Duration, Instant};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn z3(k: i64) -> Cyclotomic {
    Cyclotomic::root_of_unity(3, k)
}

fn datum(factors: Vec<u32>, g: &[&[i64]], chi: &[&[i64]], mu: &[bool], lambda: &[((usize, usize), Cyclotomic)]) -> CompatibleDatum {
    let gr = AbelianGroup::new(factors).unwrap();
    let g: Vec<_> = g.iter().map(|e| gr.element(e)).collect();
    let chi: Vec<_> = chi.iter().map(|e| gr.character(e)).collect();
    let qls = validate_datum(&gr, &g, &chi).unwrap();
    let lambda: BTreeMap<_, _> = lambda.iter().cloned().collect();
    validate_compatible(&qls, mu, &lambda).unwrap()
}

/// `T(ζ_3)`: `Γ = Z/3`, `g = y`, `χ(y) = ζ_3`.
fn taft() -> Lifting {
    build_lifting(&datum(vec![3], &[&[1]], &[&[1]], &[false], &[])).unwrap()
}

fn family(m: u32, lambda: Cyclotomic) -> Lifting {
    build_family_b(&FamilyParams::new(m, 3, z3(1), lambda).unwrap()).unwrap()
}

fn entry(census: &[CensusEntry], kind: CensusType, s: u32, m: Option<u32>) -> &CensusEntry {
    census
        .iter()
        .find(|e| e.spec.as_ref().is_some_and(|x| x.kind == kind && x.s == s && x.m == m))
        .expect("census member")
}

fn of_kind(census: &[CensusEntry], kind: CensusType) -> Vec<&CensusEntry> {
    census.iter().filter(|e| e.spec.as_ref().is_some_and(|x| x.kind == kind)).collect()
}

fn iso_found(a: &StructureHopf, b: &StructureHopf) -> Result<bool, String> {
    match a.find_isomorphism(b, &IsoSearchConfig::default()) {
        IsoOutcome::Found(_) => Ok(true),
        IsoOutcome::NoneFound(_) => Ok(false),
        IsoOutcome::BoundExceeded(r) => Err(format!("search bound exceeded: {r}")),
    }
}

struct Ctx {
    census: Vec<CensusEntry>,
}

fn dimensions(ctx: &Ctx) -> Outcome {
    let t = taft();
    ensure(t.hopf.dim() == 9, format!("dim T(z3) = {}", t.hopf.dim()))?;
    for kind in CensusType::ALL {
        for e in of_kind(&ctx.census, kind) {
            ensure(e.hopf.dim() == 27, format!("dim {} = {}", e.label, e.hopf.dim()))?;
        }
    }
    let b2 = family(2, Cyclotomic::one());
    let b3 = family(3, Cyclotomic::one());
    ensure(b2.hopf.dim() == 54, format!("dim B(2,3) = {}", b2.hopf.dim()))?;
    ensure(b3.hopf.dim() == 81, format!("dim B(3,3) = {}", b3.hopf.dim()))?;
    Ok(format!("T(z3) 9, {} census entries 27, B(2,3) 54, B(3,3) 81", ctx.census.len()))
}

fn axioms(ctx: &Ctx) -> Outcome {
    let mut count = 0;
    let mut check = |label: &str, h: &StructureHopf| -> Result<(), String> {
        let r = h.verify_axioms();
        count += 1;
        ensure(r.all_passed(), format!("{label}: {:?}", r.failures().iter().map(|f| &f.axiom).collect::<Vec<_>>()))
    };
    check("T(z3)", &taft().hopf)?;
    for e in &ctx.census {
        check(&e.label, &e.hopf)?;
        check(&format!("bosonization for {}", e.label), &bosonize(&build_qls(&e.datum.qls)).map_err(|e| e.to_string())?)?;
    }
    for lambda in [Cyclotomic::zero(), Cyclotomic::one(), z3(1), z3(2), Cyclotomic::from_int(2)] {
        check(&format!("B(2,3,z3,{lambda})"), &family(2, lambda).hopf)?;
    }
    check("B(3,3,z3,1)", &family(3, Cyclotomic::one()).hopf)?;
    let fam = FamilyParams::new(2, 3, z3(1), Cyclotomic::one()).unwrap().datum();
    check("bosonization for B", &bosonize(&build_qls(&fam.qls)).map_err(|e| e.to_string())?)?;
    Ok(format!("{count} algebras"))
}

fn diamond(_: &Ctx) -> Outcome {
    let gr = AbelianGroup::cyclic(9);
    let els = gr.elements();
    let chars = gr.characters();
    let mut symbolic = 0;
    for g2 in &els {
        for c1 in &chars {
            for c2 in &chars {
                let Ok(qls) = validate_datum(&gr, &[gr.generator(0), g2.clone()], &[c1.clone(), c2.clone()]) else {
                    continue;
                };
                let p = Presentation::lifting(qls.shape(), Scalars::zero(2)).map_err(|e| e.to_string())?;
                let report = check_overlaps(&p, true);
                let reference = reference_constraints(&qls.shape());
                ensure(
                    report.equivalent_to(&reference),
                    format!("g = (1),{g2} chi = {c1},{c2}: {:?} vs reference {reference:?}", report.constraints()),
                )?;
                symbolic += 1;
            }
        }
    }
    let confluent: Vec<CompatibleDatum> = vec![
        datum(vec![3], &[&[1]], &[&[1]], &[false], &[]),
        datum(vec![9], &[&[1], &[2]], &[&[3], &[3]], &[true, false], &[]),
        FamilyParams::new(2, 3, z3(1), z3(2)).unwrap().datum(),
        datum(vec![4, 4], &[&[1, 0]], &[&[2, 0]], &[true], &[]),
    ];
    for cd in &confluent {
        ensure(check_overlaps(&cd.presentation(), false).confluent(), "compatible datum not confluent")?;
    }
    let raw = |factors: Vec<u32>, g: &[&[i64]], chi: &[&[i64]], mu: &[u8], lambda: Option<Cyclotomic>| {
        let gr = AbelianGroup::new(factors).unwrap();
        let qls = validate_datum(
            &gr,
            &g.iter().map(|e| gr.element(e)).collect::<Vec<_>>(),
            &chi.iter().map(|e| gr.character(e)).collect::<Vec<_>>(),
        )
        .unwrap();
        let scalars = Scalars {
            mu: mu.iter().map(|&m| Cyclotomic::from_int(m as i64)).collect(),
            lambda: lambda.into_iter().map(|l| ((0, 1), l)).collect(),
        };
        Presentation::lifting(qls.shape(), scalars).unwrap()
    };
    let violating = [
        ("mu on Z/4+Z/4", raw(vec![4, 4], &[&[1, 0]], &[&[2, 1]], &[1], None), vec!["mu_1 = 0"]),
        ("lambda on Z/9", raw(vec![9], &[&[1], &[2]], &[&[3], &[3]], &[0, 0], Some(Cyclotomic::one())), vec!["lambda_12 = 0"]),
        (
            "mu and lambda on Z/4+Z/4",
            raw(vec![4, 4], &[&[1, 0], &[0, 1]], &[&[2, 1], &[3, 2]], &[1, 1], Some(Cyclotomic::one())),
            vec!["lambda_12 = 0", "mu_1 = 0", "mu_2 = 0"],
        ),
    ];
    for (name, p, expected) in &violating {
        let r = check_overlaps(p, false);
        let got: Vec<String> = r.constraints().into_iter().collect();
        ensure(!r.confluent() && got == *expected, format!("{name}: got {got:?}"))?;
    }
    Ok(format!(
        "{symbolic} symbolic rank-2 data over Z/9 match, {} compatible data confluent, {} violations named",
        confluent.len(),
        violating.len()
    ))
}

fn filtrations(ctx: &Ctx) -> Outcome {
    let dims = |h: &StructureHopf| -> Result<Vec<usize>, String> {
        Ok(h.coradical_filtration().map_err(|e| e.to_string())?.iter().map(|s| s.dim()).collect())
    };
    let t = taft();
    let td = dims(&t.hopf)?;
    ensure(td == vec![3, 6, 9], format!("T(z3) {td:?}"))?;
    ensure(td == predicted_filtration(&t.datum.qls).dims, "T(z3) prediction")?;
    let mut checked = vec!["T(z3)".to_string()];
    for (kind, s, m) in [
        (CensusType::E, 1, None),
        (CensusType::F, 1, Some(1)),
        (CensusType::F, 1, Some(2)),
        (CensusType::D, 1, None),
    ] {
        let e = entry(&ctx.census, kind, s, m);
        let predicted = predicted_filtration(&e.datum.qls).dims;
        ensure(
            e.invariants.filtration_dims == predicted,
            format!("{}: {:?} vs {predicted:?}", e.label, e.invariants.filtration_dims),
        )?;
        checked.push(e.label.clone());
    }
    let b = family(2, Cyclotomic::one());
    let bd = dims(&b.hopf)?;
    ensure(bd == vec![6, 18, 36, 48, 54], format!("B(2,3,z3,1) {bd:?}"))?;
    ensure(bd == predicted_filtration(&b.datum.qls).dims, "B prediction")?;
    checked.push("B(2,3,z3,1)".into());
    Ok(checked.join(", "))
}

fn skew_table_matches(l: &Lifting) -> Result<(), String> {
    let unit = l.hopf.unit_vec();
    for (g, d) in predicted_filtration(&l.datum.qls).skew_primitive_dims {
        let got = l.hopf.skew_primitives(&l.group_element(&g), &unit).dim();
        ensure(got == d, format!("P_{{{g},1}}: {got} vs {d}"))?;
    }
    Ok(())
}

fn skew_primitives(ctx: &Ctx) -> Outcome {
    let b = family(2, Cyclotomic::one());
    let y = b.datum.qls.g[0].clone();
    let p = b.hopf.skew_primitives(&b.group_element(&y), &b.hopf.unit_vec()).dim();
    ensure(p == 3, format!("dim P_(y,1)(B) = {p}"))?;
    skew_table_matches(&b)?;
    for e in &ctx.census {
        skew_table_matches(&build_lifting(&e.datum).map_err(|x| x.to_string())?).map_err(|x| format!("{}: {x}", e.label))?;
    }
    Ok(format!("dim P_(y,1)(B) = 3, tables match for {} census entries", ctx.census.len()))
}

fn lifting_loop(ctx: &Ctx) -> Outcome {
    let r = entry(&ctx.census, CensusType::D, 1, None);
    let (gr_r, _) = r.hopf.associated_graded().map_err(|e| e.to_string())?;
    let boson = bosonize(&build_qls(&r.datum.qls)).map_err(|e| e.to_string())?;
    ensure(iso_found(&gr_r, &boson)?, "gr r(z3) vs bosonization")?;
    let hat = entry(&ctx.census, CensusType::C, 1, None);
    ensure(iso_found(&gr_r, &hat.hopf)?, "gr r(z3) vs T^(z3)")?;
    let b = family(2, Cyclotomic::one());
    let (gr_b, _) = b.hopf.associated_graded().map_err(|e| e.to_string())?;
    let boson_b = bosonize(&build_qls(&b.datum.qls)).map_err(|e| e.to_string())?;
    ensure(iso_found(&gr_b, &boson_b)?, "gr B(2,3,z3,1) vs bosonization")?;
    Ok("gr r(z3) = R#kG = T^(z3), gr B(2,3,z3,1) = R#kG".into())
}

fn invariants(ctx: &Ctx) -> Outcome {
    for e in of_kind(&ctx.census, CensusType::E) {
        ensure(e.invariants.one_dim_reps == 1, format!("{}: {}", e.label, e.invariants.one_dim_reps))?;
    }
    for e in of_kind(&ctx.census, CensusType::F) {
        ensure(e.invariants.one_dim_reps == 3, format!("{}: {}", e.label, e.invariants.one_dim_reps))?;
    }
    let ga = group_algebra(&AbelianGroup::new(vec![3, 9]).unwrap());
    let reps = ga.invariants().map_err(|e| e.to_string())?.one_dim_reps;
    let direct = ga.one_dim_reps().map_err(|e| e.to_string())?;
    ensure(reps == 27 && direct == 27, format!("group algebra: {reps}, dual group-likes {direct}"))?;
    let r = entry(&ctx.census, CensusType::D, 1, None);
    let dual = r.hopf.dual().map_err(|e| e.to_string())?;
    ensure(!dual.is_pointed(), "dual of r(z3) is pointed")?;
    ensure(!r.invariants.dual_pointed, "invariant record says r(z3)* pointed")?;
    let m = distinguish(&ctx.census, &IsoSearchConfig::default());
    ensure(m.undecided() == 0, format!("{} undecided pairs", m.undecided()))?;
    Ok(format!(
        "u 1, h 3, kG 27, r(z3)* not pointed ({} group-likes), {} pairs decided",
        dual.grouplikes().count(),
        m.pairs.len()
    ))
}

fn book(_: &Ctx) -> Outcome {
    let mut found = 0;
    for p in [3, 5] {
        for s in 1..p {
            for m in 1..p {
                let spec = CensusSpec::new(CensusType::F, p, s, Some(m)).unwrap();
                let partner = spec.book_partner().unwrap();
                let a = build_lifting(&spec.datum()).map_err(|e| e.to_string())?;
                let b = build_lifting(&partner.datum()).map_err(|e| e.to_string())?;
                ensure(iso_found(&a.hopf, &b.hopf)?, format!("{} vs {}", spec.label(), partner.label()))?;
                found += 1;
            }
        }
    }
    let a = CensusSpec::new(CensusType::F, 3, 1, Some(1)).unwrap();
    let b = CensusSpec::new(CensusType::F, 3, 1, Some(2)).unwrap();
    let la = build_lifting(&a.datum()).map_err(|e| e.to_string())?;
    let lb = build_lifting(&b.datum()).map_err(|e| e.to_string())?;
    ensure(!iso_found(&la.hopf, &lb.hopf)?, format!("{} vs {} found isomorphic", a.label(), b.label()))?;
    Ok(format!("{found} partner pairs at p = 3, 5; {} vs {} exhausted", a.label(), b.label()))
}

fn family_classification(_: &Ctx) -> Outcome {
    let lambdas = [Cyclotomic::one(), z3(1), z3(2), Cyclotomic::from_int(2)];
    let algebras: Vec<Lifting> = lambdas.iter().map(|l| family(2, l.clone())).collect();
    for i in 0..lambdas.len() {
        for j in i + 1..lambdas.len() {
            let expected = j < 3;
            let crit = family_iso(3, &lambdas[i], &lambdas[j]);
            let search = iso_found(&algebras[i].hopf, &algebras[j].hopf)?;
            ensure(
                crit == expected && search == expected,
                format!("lambda {} vs {}: criterion {crit}, search {search}", lambdas[i], lambdas[j]),
            )?;
        }
    }
    Ok("1, z3, z3^2 isomorphic; 2 distinct; criterion and search agree".into())
}

fn automorphisms(_: &Ctx) -> Outcome {
    let a1 = diagonal_automorphisms(&family(2, Cyclotomic::one())).len();
    let a0 = diagonal_automorphisms(&family(2, Cyclotomic::zero())).len();
    ensure(a1 == 3 && a0 == 9, format!("|Aut| = {a1} and {a0}"))?;
    Ok("|Aut B(2,3,z3,1)| = 3, |Aut B(2,3,z3,0)| = 9".into())
}

fn theta(_: &Ctx) -> Outcome {
    let t9 = theta_search(&AbelianGroup::cyclic(9), 6);
    let t15 = theta_search(&AbelianGroup::new(vec![3, 5]).unwrap(), 6);
    ensure(t9.exact && t9.theta == 2, format!("theta(Z/9) = {}", t9.theta))?;
    ensure(t15.exact && t15.theta == 4, format!("theta(Z/3+Z/5) = {}", t15.theta))?;
    Ok("theta(Z/9) = 2, theta(Z/3+Z/5) = 4".into())
}

fn properties(ctx: &Ctx) -> Outcome {
    let mut qb = 0;
    for n in 2..=12u32 {
        for k in 1..n {
            if pointed_hopf::cyclotomic::gcd(k as u64, n as u64) != 1 {
                continue;
            }
            let q = Cyclotomic::root_of_unity(n, k as i64);
            for i in 1..n {
                ensure(qbinomial_recurrence(n, i, &q).is_zero(), format!("[{n} choose {i}] at z{n}^{k}"))?;
                qb += 1;
            }
        }
    }
    let mut liftings: Vec<Lifting> = vec![taft(), family(2, Cyclotomic::one()), family(2, Cyclotomic::zero())];
    for e in &ctx.census {
        liftings.push(build_lifting(&e.datum).map_err(|x| x.to_string())?);
    }
    for l in &liftings {
        ensure(l.antipode_powers_hold(), "antipode power identity")?;
    }
    let mut graded = 0;
    for l in &liftings {
        let (g, deg) = l.hopf.associated_graded().map_err(|e| e.to_string())?;
        ensure(g.is_coradically_graded(&deg), "associated graded not coradically graded")?;
        graded += 1;
    }
    for l in &liftings {
        let r = verify_braided(&build_qls(&l.datum.qls));
        ensure(r.all_passed(), format!("braided checks: {:?}", r.failures().iter().map(|f| &f.axiom).collect::<Vec<_>>()))?;
    }
    Ok(format!(
        "{qb} q-binomials vanish; antipode powers, graded law ({graded}) and braided checks on {} liftings",
        liftings.len()
    ))
}

fn main() {
    let start = Instant::now();
    let census = build_p3_list(3).expect("census at p = 3");
    let ctx = Ctx { census };
    let setup = start.elapsed();
    let criteria: [(&str, fn(&Ctx) -> Outcome); 12] = [
        ("dimensions", dimensions),
        ("axioms", axioms),
        ("diamond lemma", diamond),
        ("coradical filtrations", filtrations),
        ("skew-primitives", skew_primitives),
        ("lifting loop", lifting_loop),
        ("classification invariants", invariants),
        ("book identification", book),
        ("family classification", family_classification),
        ("automorphisms", automorphisms),
        ("theta searches", theta),
        ("property suites", properties),
    ];
    println!("census at p = 3 built in {}", fmt(setup));
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let r = f(&ctx);
        let el = fmt(t.elapsed());
        match r {
            Ok(detail) => println!("PASS criterion {} ({name}): {detail} [{el}]", k + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {} ({name}): {detail} [{el}]", k + 1)
            }
        }
    }
    println!("{} of 12 criteria passed in {}", 12 - failed, fmt(start.elapsed()));
    if failed > 0 {
        std::process::exit(1);
    }
}

fn fmt(d: Duration) -> String {
    format!("{:.2}s", d.as_secs_f64())
}
