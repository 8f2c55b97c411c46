use bembed::bench::{
    run_table_experiment, BenchConfig, Condition, ConvertedDissimilarity, StrategyColumn,
};
use bembed::Error;
use bembed_core::{DissimilarityKind, LinkageMethod};

fn small(trials: u64) -> BenchConfig {
    let mut cfg = BenchConfig::tables(trials, 7);
    cfg.rows = 30;
    cfg
}

#[test]
fn table_layout() {
    let cfg = BenchConfig::tables(1, 0);
    assert_eq!(cfg.conditions.len(), 7);
    let labels: Vec<String> = cfg.strategies.iter().map(StrategyColumn::label).collect();
    assert_eq!(labels, ["random", "0", "15", "30", "45", "60", "75", "90", "even"]);

    let table = run_table_experiment(&small(2)).unwrap();
    let csv = table.to_csv();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines.len(), 1 + 2 * 7);
    assert_eq!(lines[0], "metric,dissimilarity,linkage,random,0,15,30,45,60,75,90,even");
    assert!(lines[1].starts_with("r_c,euclidean,single,"));
    assert!(lines[8].starts_with("r_k,euclidean,single,"));
    assert!(lines[14].starts_with("r_k,correlation,average,"));
    assert!(lines[1..].iter().all(|l| l.split(',').count() == 12));
    assert_eq!(table.total_failures(), 0);
    let json: serde_json::Value = serde_json::from_str(&table.to_json()).unwrap();
    assert_eq!(json["cells"].as_array().unwrap().len(), 63);
}

#[test]
fn deterministic_and_thread_independent() {
    let cfg = small(6);
    let a = run_table_experiment(&cfg).unwrap();
    let b = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .unwrap()
        .install(|| run_table_experiment(&cfg).unwrap());
    assert_eq!(a.to_csv(), b.to_csv());
    for (x, y) in a.cells.iter().zip(&b.cells) {
        assert_eq!(x.mean_rc.to_bits(), y.mean_rc.to_bits());
        assert_eq!(x.mean_rk.to_bits(), y.mean_rk.to_bits());
    }
    let one = run_table_experiment(&small(1)).unwrap();
    assert_eq!(one, run_table_experiment(&small(1)).unwrap());
}

#[test]
fn doubling_trials_stays_within_three_standard_errors() {
    let half = run_table_experiment(&small(40)).unwrap();
    let full = run_table_experiment(&small(80)).unwrap();
    for (h, f) in half.cells.iter().zip(&full.cells) {
        assert!((h.mean_rc - f.mean_rc).abs() < 3.0 * h.se_rc, "{h:?} vs {f:?}");
        assert!((h.mean_rk - f.mean_rk).abs() < 3.0 * h.se_rk, "{h:?} vs {f:?}");
    }
}

#[test]
fn invalid_configurations() {
    let mut cfg = small(0);
    assert!(matches!(run_table_experiment(&cfg), Err(Error::Config(_))));
    cfg.trials = 1;
    cfg.conditions = vec![Condition::new(DissimilarityKind::Correlation, LinkageMethod::Ward)];
    assert!(matches!(cfg.validate(), Err(Error::Config(_))));
    let mut cfg = small(1);
    cfg.converted = ConvertedDissimilarity::Always(DissimilarityKind::Correlation);
    assert!(cfg.validate().is_err());
    let mut cfg = small(1);
    cfg.strategies = vec![StrategyColumn::Fixed(120.0)];
    assert!(cfg.validate().is_err());
}
