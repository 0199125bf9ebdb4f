mod common;

use proptest::prelude::*;
use serde_json::Value;

use common::semigroup_corpus;
use sac_core::certify::{
    is_known_citation, validate_certificate_json, verify_premise, Assumption, Premise,
    PremiseStatus, Rule, CITATION_TABLE, SCHEMA_VERSION,
};
use sac_core::{certify, Certificate, CertifyOptions, RingDescriptor, Verdict};

fn goals() -> Vec<RingDescriptor> {
    let mut out: Vec<RingDescriptor> = semigroup_corpus()
        .iter()
        .map(|g| RingDescriptor::sgp(g).unwrap())
        .collect();
    for s in [
        "trunc(sgp(4,5,6),4)",
        "trunc(sgp(3,4,5),3)",
        "glued(sgp(4,6,7,9),2,11)",
        "powser(sgp(5,6,7,8,9))",
        "qpow(sgp(3,4),1,1)",
        "upow(sgp(8,11,12,14,18),ideal(8,12,14,18),1)",
        "ffcover(abstract(R),ci(S))",
        "ffcover(abstract(R),abstract(S))",
        "abstract(X)",
        "ci(Y)",
    ] {
        out.push(s.parse().unwrap());
    }
    out
}

/// Certified nodes have only verified or asserted premises, certified
/// children, a citation from the fixed table, and no trace.
fn check_tree(c: &Certificate) {
    assert_eq!(c.schema, SCHEMA_VERSION);
    let _: RingDescriptor = c.goal.parse().unwrap();
    if let Some(cit) = &c.citation {
        assert!(is_known_citation(cit), "{}: unknown citation {cit:?}", c.goal);
    }
    for p in &c.premises {
        if let Some(cit) = &p.citation {
            assert!(is_known_citation(cit));
        }
    }
    if c.verdict == Verdict::Certified {
        assert!(c.rule.is_some() && c.citation.is_some(), "{}", c.goal);
        assert!(c.trace.is_empty());
        for child in &c.children {
            assert_eq!(child.verdict, Verdict::Certified);
            check_tree(child);
        }
    } else {
        assert!(c.rule.is_none());
        assert!(!c.trace.is_empty() || c.goal.starts_with("abstract("));
    }
}

/// Every structured premise marked as computed really holds when re-checked;
/// free-form computed premises must carry evidence.
fn recheck_premises(c: &Certificate) {
    for p in &c.premises {
        if !matches!(p.status, PremiseStatus::Verified | PremiseStatus::VerifiedExternal) {
            continue;
        }
        match p.statement.parse::<Premise>() {
            Ok(premise) => {
                let check = verify_premise(&premise);
                assert!(check.holds, "{} does not hold", p.statement);
                assert_eq!(check.status, p.status);
            }
            Err(_) => assert!(p.evidence.is_some(), "{}", p.statement),
        }
    }
    c.children.iter().for_each(recheck_premises);
}

#[test]
fn certificates_are_well_formed() {
    for goal in goals() {
        let c = certify(&goal, &CertifyOptions::default());
        assert_eq!(c.goal, goal.to_string());
        check_tree(&c);
        recheck_premises(&c);
        let v = serde_json::to_value(&c).unwrap();
        assert_eq!(validate_certificate_json(&v), Vec::<String>::new(), "{goal}");
        let back: Certificate = serde_json::from_str(&c.to_json()).unwrap();
        assert_eq!(back, c);
    }
}

#[test]
fn certify_is_deterministic() {
    for goal in goals() {
        let a = certify(&goal, &CertifyOptions::default()).to_json();
        let b = certify(&goal, &CertifyOptions::default()).to_json();
        assert_eq!(a, b);
    }
}

#[test]
fn every_minimal_multiplicity_ring_is_certified() {
    for gens in semigroup_corpus() {
        let goal = RingDescriptor::sgp(&gens).unwrap();
        let h = goal.as_semigroup().unwrap();
        if h.has_minimal_multiplicity() {
            let c = certify(&goal, &CertifyOptions::default());
            assert!(c.is_certified(), "{goal}");
        }
    }
}

#[test]
fn citation_table_is_closed() {
    let locators: Vec<&str> = CITATION_TABLE.iter().map(|(_, l, _)| *l).collect();
    for goal in goals() {
        for l in certify(&goal, &CertifyOptions::default()).cited_locators() {
            assert!(locators.contains(&l.as_str()), "{l}");
        }
    }
}

#[test]
fn validator_rejects_broken_documents() {
    let c = certify(&"sgp(3,4,5)".parse().unwrap(), &CertifyOptions::default());
    let good = serde_json::to_value(&c).unwrap();
    let mutate = |f: &dyn Fn(&mut Value)| {
        let mut v = good.clone();
        f(&mut v);
        validate_certificate_json(&v)
    };
    assert!(!mutate(&|v| v["schema"] = "cert-v0".into()).is_empty());
    assert!(!mutate(&|v| v["verdict"] = "Maybe".into()).is_empty());
    assert!(!mutate(&|v| v["citation"]["quote"] = "invented".into()).is_empty());
    assert!(!mutate(&|v| v["premises"][0]["status"] = "guessed".into()).is_empty());
    assert!(!mutate(&|v| {
        v.as_object_mut().unwrap().remove("children");
    })
    .is_empty());
}

#[test]
fn root_rule_restricts_only_the_root() {
    let goal: RingDescriptor = "sgp(8,11,12,14,18)".parse().unwrap();
    for rule in Rule::ALL {
        let c = certify(&goal, &CertifyOptions { root_rule: Some(rule), ..Default::default() });
        if let Some(r) = &c.rule {
            assert_eq!(r, rule.name());
        }
    }
}

fn assumption_pool() -> Vec<Assumption> {
    [
        "sac(abstract(X))",
        "sac(sgp(5,7,9))",
        "sac(sgp(7,8,9))",
        "gorenstein(sgp(3,4))",
        "dim(abstract(X),2)",
        "sac(abstract(R))",
        "sac(sgp(4,5,7))",
    ]
    .iter()
    .map(|s| s.parse().unwrap())
    .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn assertions_never_lose_certificates(
        goal_idx in 0usize..26,
        mask in 0u32..128,
    ) {
        let goals = goals();
        let goal = &goals[goal_idx % goals.len()];
        let base = certify(goal, &CertifyOptions::default());
        let mut opts = CertifyOptions::default();
        for (i, a) in assumption_pool().into_iter().enumerate() {
            if mask >> i & 1 == 1 {
                opts.assumptions.insert(a);
            }
        }
        let more = certify(goal, &opts);
        if base.is_certified() {
            prop_assert!(more.is_certified());
        }
        check_tree(&more);
    }

    #[test]
    fn descriptors_round_trip(
        gens in proptest::collection::btree_set(2u64..20, 1..5),
        q in 1u64..10,
        l in 1u64..4,
        wrap in 0usize..5,
    ) {
        let gens: Vec<u64> = gens.into_iter().collect();
        let Ok(base) = RingDescriptor::sgp(&gens) else { return Ok(()); };
        let h = base.as_semigroup().unwrap();
        let d = match wrap {
            0 => base,
            1 => {
                let q = h.members().nth(q as usize).unwrap();
                RingDescriptor::Truncation(h, q)
            }
            2 => RingDescriptor::PowerSeriesExt(Box::new(base)),
            3 => RingDescriptor::ParameterPowerQuotient { inner: Box::new(base), power: l, regseq: 1 },
            _ => RingDescriptor::AbstractWithFiniteFlatCover {
                inner: Box::new(RingDescriptor::Opaque("R".into())),
                cover: Box::new(base),
            },
        };
        let text = d.to_string();
        prop_assert_eq!(text.parse::<RingDescriptor>().unwrap(), d);
    }
}
