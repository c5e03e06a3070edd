use excseq::verify::{self, Bounds, Suite};

#[test]
fn every_suite_passes_at_default_bounds() {
    let report = verify::run(&Suite::ALL, Bounds::default()).unwrap();
    if let Some(c) = report.first_failure() {
        panic!("{}", serde_json::to_string_pretty(c).unwrap());
    }
    assert!(report.passed());
    assert_eq!(report.suites.len(), Suite::ALL.len());
}

#[test]
fn reports_do_not_depend_on_thread_count() {
    let run = |threads| {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        pool.install(|| serde_json::to_string(&verify::run(&Suite::ALL, Bounds::uniform(4)).unwrap()).unwrap())
    };
    assert_eq!(run(1), run(4));
}

#[test]
fn suite_names_parse() {
    assert_eq!(Suite::parse_list("all").unwrap(), Suite::ALL.to_vec());
    assert_eq!(Suite::parse_list("braid,counts").unwrap(), vec![Suite::Braid, Suite::Counts]);
    assert!(Suite::parse_list("bogus").is_err());
    for s in Suite::ALL {
        assert_eq!(s.name().parse::<Suite>().unwrap(), s);
    }
}

#[test]
fn small_bounds_still_pass() {
    for n in 1..=3 {
        let report = verify::run(&Suite::ALL, Bounds::uniform(n)).unwrap();
        assert!(report.passed(), "bound {n}: {:?}", report.first_failure());
    }
}

#[test]
fn report_suite_names_match_cli_names() {
    let report = verify::run(&Suite::ALL, Bounds::uniform(2)).unwrap();
    let json = serde_json::to_value(&report).unwrap();
    for (s, v) in Suite::ALL.iter().zip(json["suites"].as_array().unwrap()) {
        assert_eq!(v["suite"], s.name());
    }
}
