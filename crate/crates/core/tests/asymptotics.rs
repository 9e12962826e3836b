use branchlab::asymptotics::{
    asymptotic_volume, fiber_report, growth_degree, logconcavity_report, stretch_sequence, Degree, FiberReport,
};
use branchlab::branching_cone::branching_cone;
use branchlab::{Brancher, Embedding, Error, Rational, RootSystem, Weight};
use num_bigint::BigInt;

fn w(v: &[i64]) -> Weight {
    Weight(v.to_vec())
}

fn diag(spec: &str) -> Brancher {
    Brancher::new(Embedding::diagonal(&RootSystem::build(spec).unwrap()).unwrap())
}

fn q(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| Rational::from_integer(BigInt::from(x))).collect()
}

#[test]
fn stretch_examples() {
    let b = diag("A1");
    let s = stretch_sequence(&b, &w(&[0]), &w(&[1, 1]), 8).unwrap();
    assert_eq!(s.values, vec![1; 9]);
    assert_eq!((s.quasi_period, s.degree), (1, Degree::Exact(0)));

    let s = stretch_sequence(&b, &w(&[1]), &w(&[1, 1]), 8).unwrap();
    assert_eq!(s.values, vec![1, 0, 1, 0, 1, 0, 1, 0, 1]);
    assert_eq!(s.quasi_period, 2);

    let b2 = diag("A2");
    let s = stretch_sequence(&b2, &w(&[1, 1]), &w(&[1, 1, 1, 1]), 8).unwrap();
    assert_eq!(s.values, (1..=9).collect::<Vec<u64>>());
    assert_eq!(growth_degree(&s), Degree::Exact(1));
    assert!(matches!(
        stretch_sequence(&b2, &w(&[1, 1]), &w(&[1, 1, 1, 1]), 7),
        Err(Error::InvalidArgument(_))
    ));
}

#[test]
fn volume_examples() {
    let b = diag("A1");
    let model = branching_cone(&b, 4).unwrap();
    // (0; 1, 1) sits on the facet a + c = b
    assert!(matches!(
        asymptotic_volume(&b, &model, &w(&[0]), &w(&[1, 1]), 12),
        Err(Error::NotInterior(_))
    ));
    let v = asymptotic_volume(&b, &model, &w(&[2]), &w(&[2, 2]), 12).unwrap();
    assert_eq!((v.n, v.volume), (0, 1.0));
    assert_eq!(fiber_report(&v), FiberReport::Point { nonempty: true });
    // parity-obstructed point: exact along even k
    let v = asymptotic_volume(&b, &model, &w(&[1]), &w(&[1, 1]), 12).unwrap();
    assert_eq!((v.subsequence_q, v.volume), (2, 1.0));
    // boundary point
    assert!(matches!(
        asymptotic_volume(&b, &model, &w(&[2]), &w(&[1, 1]), 12),
        Err(Error::NotInterior(_))
    ));

    let b2 = diag("A2");
    let model2 = branching_cone(&b2, 3).unwrap();
    let v = asymptotic_volume(&b2, &model2, &w(&[1, 1]), &w(&[1, 1, 1, 1]), 12).unwrap();
    assert_eq!(v.n, 1);
    assert_eq!(v.volume, 1.0);
    assert_eq!(v.confidence, Some(0.0));
    assert_eq!(fiber_report(&v), FiberReport::Interval { length: 1.0 });

    // (2,2; 1,1, 1,1): decided by the cone, then fitted
    let r = asymptotic_volume(&b2, &model2, &w(&[2, 2]), &w(&[1, 1, 1, 1]), 12);
    let inside = model2.cone.predicates(&q(&[2, 2, 1, 1, 1, 1])).unwrap().interior;
    assert_eq!(inside, r.is_ok());
}

#[test]
fn homogeneity() {
    let b2 = diag("A2");
    let model = branching_cone(&b2, 3).unwrap();
    let base = asymptotic_volume(&b2, &model, &w(&[1, 1]), &w(&[1, 1, 1, 1]), 12).unwrap();
    for c in 2..=3 {
        let v = asymptotic_volume(&b2, &model, &w(&[c, c]), &w(&[c, c, c, c]), 12).unwrap();
        let expected = base.volume * c as f64;
        assert!((v.volume - expected).abs() <= expected * v.confidence.unwrap_or(0.0) + 1e-12);
    }
}

#[test]
fn logconcavity_on_one_ray_and_identical_points() {
    let b2 = diag("A2");
    let model = branching_cone(&b2, 3).unwrap();
    let r = logconcavity_report(&b2, &model, &[q(&[1, 1, 1, 1, 1, 1]), q(&[1, 1, 1, 1, 1, 1])], 12, 0.01).unwrap();
    assert!(r.all_pass);
    let r = logconcavity_report(&b2, &model, &[q(&[1, 1, 1, 1, 1, 1]), q(&[2, 2, 2, 2, 2, 2])], 12, 0.01).unwrap();
    assert!(r.all_pass);
    assert_eq!(r.triples[0].volume_midpoint, 1.5);
    assert!(matches!(
        logconcavity_report(&b2, &model, &[q(&[1, 1, 1, 1, 1, 1])], 12, 0.01),
        Err(Error::InvalidArgument(_))
    ));
    assert!(matches!(
        logconcavity_report(&b2, &model, &[q(&[1, 1, 1, 1, 1, 1]), q(&[1, 1, 1, 1, 1, 1])], 12, 1.5),
        Err(Error::InvalidArgument(_))
    ));
}

#[test]
fn principal_a1_degree_matches_n() {
    let b = Brancher::new(Embedding::principal_a1(&RootSystem::build("A2").unwrap()).unwrap());
    assert_eq!(b.embedding().space_dims().n, 1);
    let model = branching_cone(&b, 4).unwrap();
    assert!(model.full_dimensional);
    let v = asymptotic_volume(&b, &model, &w(&[2]), &w(&[1, 1]), 12).unwrap();
    // m(k) = floor(k/2) + 1
    assert_eq!(v.values, (0..=12).map(|k| k / 2 + 1).collect::<Vec<u64>>());
    assert_eq!((v.subsequence_q, v.degree), (2, Degree::Exact(1)));
    assert_eq!(v.volume, 0.5);
}

