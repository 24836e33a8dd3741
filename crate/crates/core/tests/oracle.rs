use complexlab::oracle::{default_param_sets, enumerate_complexes, verify_identities, Identity, Outcome};
use complexlab::Ambient;

#[test]
fn every_identity_holds_on_small_ambients() {
    let ambients = [Ambient::simplex(1), Ambient::boundary(2), Ambient::simplex(2), Ambient::boundary(3)];
    for amb in ambients.map(Result::unwrap) {
        for (name, params) in default_param_sets(amb).unwrap() {
            for report in verify_identities(&params, &Identity::ALL).unwrap() {
                match &report.outcome {
                    Outcome::Holds { cases } => assert!(*cases > 0 || report.identity == Identity::Normalization),
                    Outcome::NotApplicable { .. } => assert!(!amb.is_boundary(), "{} skipped on {amb}", report.identity),
                    Outcome::Failed(c) => panic!("{} fails on {amb} with {name}: {c:?}", report.identity),
                }
            }
        }
    }
}

#[test]
fn boundary_only_identities_are_skipped_on_delta() {
    let amb = Ambient::simplex(1).unwrap();
    let (_, params) = default_param_sets(amb).unwrap().remove(0);
    let reports = verify_identities(&params, &[Identity::DualMeasures, Identity::Lower]).unwrap();
    assert!(matches!(reports[0].outcome, Outcome::NotApplicable { .. }));
    assert!(reports[1].holds());
}

#[test]
fn complex_counts() {
    // Counts of simplicial complexes on labelled vertex sets, empty complex included.
    assert_eq!(enumerate_complexes(Ambient::simplex(1).unwrap()).unwrap().len(), 5);
    assert_eq!(enumerate_complexes(Ambient::simplex(2).unwrap()).unwrap().len(), 19);
    assert_eq!(enumerate_complexes(Ambient::boundary(3).unwrap()).unwrap().len(), 166);
    assert!(enumerate_complexes(Ambient::simplex(4).unwrap()).is_err());
}

#[test]
fn identity_names_round_trip() {
    for id in Identity::ALL {
        assert_eq!(Identity::parse(id.name()).unwrap(), id);
    }
    assert_eq!(Identity::parse_list("all").unwrap().len(), Identity::ALL.len());
    assert_eq!(Identity::parse_list("union, lower").unwrap(), vec![Identity::Union, Identity::Lower]);
    assert!(Identity::parse_list("bogus").is_err());
}
