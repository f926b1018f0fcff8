use reflexo::algebra::{int, UniPoly};
use reflexo::catalog::{by_name, catalog};
use reflexo::fibration::{critical_value_polynomial, elimination_factors, singular_lambda_values, Location};
use reflexo::laurent::build_fP;
use reflexo::mutation::mutation_classes;
use reflexo::period::{find_picard_fuchs, period_coefficients};
use reflexo::report::{analyze, RunConfig, EXPECTED_TABLE};

fn factor_list(name: &str) -> Vec<(String, usize)> {
    let mut v: Vec<(String, usize)> = elimination_factors(&by_name(name).unwrap())
        .unwrap()
        .into_iter()
        .map(|f| (f.factor.display("l"), f.multiplicity))
        .collect();
    v.sort();
    v
}

#[test]
fn every_row_of_the_summary_table() {
    let cat = catalog();
    let classes = mutation_classes(&cat);
    let cfg = RunConfig { period_order: 12, fit_operator: false, ..RunConfig::default() };
    for (name, p) in &cat {
        let r = analyze(name, p, &classes, &cfg).unwrap();
        let row = EXPECTED_TABLE.iter().find(|row| row.members.contains(&name.as_str())).unwrap();
        assert_eq!(r.fibre_summary(), row.fibres, "{name}");
        assert_eq!(r.mw.group.to_string(), row.group, "{name}");
        assert_eq!(r.fibres.chi_total(), 12);
        assert_eq!(r.mw.rank + r.fibres.r_total(), 8);
        let mut members: Vec<String> = row.members.iter().map(|s| s.to_string()).collect();
        members.sort();
        assert_eq!(r.mutation_class, members, "{name}");
    }
}

#[test]
fn elimination_oracles() {
    assert_eq!(critical_value_polynomial(&by_name("4a").unwrap()).unwrap(), UniPoly::from_ints(&[0, -16, 0, 1]));
    assert_eq!(
        factor_list("4a"),
        vec![("l".into(), 2), ("l+4".into(), 1), ("l-4".into(), 1)]
    );
    assert_eq!(
        factor_list("5a"),
        vec![("l-1".into(), 2), ("l^3-l^2-18*l+43".into(), 1)]
    );
    let roots = |n: &str| -> Vec<_> {
        singular_lambda_values(&by_name(n).unwrap())
            .unwrap()
            .into_iter()
            .filter_map(|s| match s.location {
                Location::Rational(l) => Some(l),
                _ => None,
            })
            .collect()
    };
    assert_eq!(roots("6c"), vec![int(-6), int(2), int(3)]);
    assert_eq!(roots("7a"), vec![int(3)]);
    let quad: Vec<UniPoly> = singular_lambda_values(&by_name("7a").unwrap())
        .unwrap()
        .into_iter()
        .filter_map(|s| match s.location {
            Location::Factor(q) => Some(q),
            _ => None,
        })
        .collect();
    assert_eq!(quad.len(), 1);
    let q = &quad[0];
    assert_eq!(q.degree(), Some(2));
    // monic x² − (sum) x + product
    assert_eq!(-q.coeff(1), int(-5));
    assert_eq!(q.coeff(0), int(-25));
}

#[test]
fn periods_constant_on_mutation_classes() {
    let cat = catalog();
    for class in mutation_classes(&cat) {
        let series: Vec<_> = class
            .iter()
            .map(|n| period_coefficients(&build_fP(&by_name(n).unwrap()), 20))
            .collect();
        for s in &series[1..] {
            assert_eq!(s, &series[0], "{class:?}");
        }
    }
}

#[test]
fn operators_constant_on_mutation_classes() {
    let cat = catalog();
    let cfg = RunConfig::default();
    for class in mutation_classes(&cat) {
        let ops: Vec<_> = class
            .iter()
            .map(|n| {
                let s = period_coefficients(&build_fP(&by_name(n).unwrap()), cfg.working_order());
                find_picard_fuchs(&s, cfg.pf_max_order, cfg.pf_max_degree, cfg.pf_guard).unwrap()
            })
            .collect();
        for l in &ops[1..] {
            assert_eq!(l, &ops[0], "{class:?}");
        }
    }
}
