use unirat_core::expr::parse_ratfn;
use unirat_core::factor::factor_multivariate_q;
use unirat_core::fieldops::{
    field_contains, field_equal, is_member, minimal_polynomial, transcendence_degree, FieldPresentation,
};
use unirat_core::pipeline::{algebraic_intermediate_fields, intermediate_fields, rewrite_to_simple};
use unirat_core::Error;

fn field(vars: &[&str], gens: &[&str]) -> FieldPresentation {
    let gens = gens.iter().map(|g| parse_ratfn(g, vars).unwrap()).collect();
    FieldPresentation::new(vars.iter().map(|s| s.to_string()).collect(), gens).unwrap()
}

#[test]
fn witness_and_minimal_polynomial() {
    let f = field(&["x1", "x2"], &["x1 + x2", "x1*x2"]);
    let g = parse_ratfn("x1^3 + x2^3", &["x1", "x2"]).unwrap();
    let (ok, w) = is_member(&g, &f);
    assert!(ok);
    assert_eq!(w.unwrap().evaluate(&f).unwrap(), g);

    let h = parse_ratfn("x1 - x2", &["x1", "x2"]).unwrap();
    assert!(!is_member(&h, &f).0);
    let p = minimal_polynomial(&h, &f).unwrap();
    assert_eq!(p.degree(), 2);
    assert!(p.evaluate_at(&h, &f).unwrap().is_zero());
}

#[test]
fn multivariate_factorization_expands() {
    let vars = ["x", "y"];
    let p = parse_ratfn("(x^2 - y^3)*(x + y + 1)^2*(3*x*y - 2)", &vars).unwrap();
    let fac = factor_multivariate_q(p.num()).unwrap();
    assert_eq!(fac.expand(), *p.num());
    let mut mult: Vec<u32> = fac.factors.iter().map(|(_, e)| *e).collect();
    mult.sort();
    assert_eq!(mult, vec![1, 1, 2]);
}

#[test]
fn subfields_of_a_rational_generator() {
    let f = field(&["x"], &["(x^2 + 1)^2/(x^2 - 1)"]);
    let rep = intermediate_fields(&f).unwrap();
    assert_eq!(rep.total_degree, 4);
    let x2 = field(&["x"], &["x^2"]);
    assert!(rep.answers.iter().any(|a| field_equal(&f.with_generators(a.generators_x.clone()).unwrap(), &x2)));
    for a in &rep.answers {
        let k = f.with_generators(a.generators_x.clone()).unwrap();
        assert!(field_contains(&f, &k) && !field_contains(&k, &f));
    }
}

#[test]
fn two_variable_extension_round_trip() {
    let f = field(&["x1", "x2"], &["x1^2 + x2^2", "x1^2*x2^2"]);
    assert_eq!(transcendence_degree(&f), 2);
    let rw = rewrite_to_simple(&f).unwrap();
    assert_eq!(rw.extension.degree(), 8);
    for src in ["x1", "x1*x2 + 1/x2"] {
        let g = parse_ratfn(src, &["x1", "x2"]).unwrap();
        assert_eq!(rw.back_substitute(&rw.to_ext(&g).unwrap()).unwrap(), g);
    }
    let rep = algebraic_intermediate_fields(&f, 4096).unwrap();
    let squares = field(&["x1", "x2"], &["x1^2", "x2^2"]);
    assert!(rep.answers.iter().any(|a| field_equal(&f.with_generators(a.generators_x.clone()).unwrap(), &squares)));
}

#[test]
fn precondition_errors() {
    let f = field(&["x1", "x2"], &["x1 + x2"]);
    assert!(matches!(intermediate_fields(&f), Err(Error::NotAlgebraic { .. })));
    assert!(parse_ratfn("x +", &["x"]).is_err());
}
