use std::fs;

use swarmsim::harness::{execute_sweep, load_config, run_sweep, ExperimentConfig, Pairing};
use swarmsim::{HarnessError, StrategyMode};

fn small_config(dir: &std::path::Path) -> ExperimentConfig {
    ExperimentConfig::parse(&format!(
        "strategies=density,random\ndrone_counts=1,3\nreps=3\nticks=300\noutput_dir={}\n",
        dir.display()
    ))
    .unwrap()
}

#[test]
fn empty_config_file_gives_defaults() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("empty.txt");
    fs::write(&path, "# nothing\n\n").unwrap();
    assert_eq!(load_config(&path).unwrap(), ExperimentConfig::default());
}

#[test]
fn missing_config_is_an_io_error() {
    let err = load_config(std::path::Path::new("/nonexistent/config.txt")).unwrap_err();
    assert!(err.is_io());
}

#[test]
fn sweep_writes_one_summary_row_per_run() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = small_config(dir.path());
    let out = run_sweep(&cfg).unwrap();
    assert_eq!(out.runs.len(), 2 * 2 * 3);
    let summary = fs::read_to_string(dir.path().join("summary.csv")).unwrap();
    assert_eq!(summary.lines().count(), 1 + 12);
    let sweep = fs::read_to_string(dir.path().join("sweep.csv")).unwrap();
    assert_eq!(sweep.lines().count(), 1 + 4);
    assert!(dir.path().join("events/density-n3.csv").exists());
    assert_eq!(load_config(&dir.path().join("config.txt")).unwrap(), cfg);
}

#[test]
fn rerun_is_byte_identical() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    run_sweep(&small_config(a.path())).unwrap();
    run_sweep(&small_config(b.path())).unwrap();
    for f in ["summary.csv", "sweep.csv", "events/random-n1.csv"] {
        assert_eq!(fs::read(a.path().join(f)).unwrap(), fs::read(b.path().join(f)).unwrap(), "{f}");
    }
}

#[test]
fn sweep_means_match_summary_rows() {
    let dir = tempfile::tempdir().unwrap();
    run_sweep(&small_config(dir.path())).unwrap();
    let mut summary = csv::Reader::from_path(dir.path().join("summary.csv")).unwrap();
    let rows: Vec<csv::StringRecord> = summary.records().map(Result::unwrap).collect();
    let mut sweep = csv::Reader::from_path(dir.path().join("sweep.csv")).unwrap();
    let header = sweep.headers().unwrap().clone();
    let col = |name: &str| header.iter().position(|h| h == name).unwrap();
    for rec in sweep.records().map(Result::unwrap) {
        let matching: Vec<&csv::StringRecord> = rows
            .iter()
            .filter(|r| r[0] == rec[0] && r[1] == rec[1])
            .collect();
        assert_eq!(matching.len(), 3);
        // summary columns: strategy,n_drones,rep,total,seen_ge1,seen_ge2,...
        for (sweep_col, summary_idx) in [("mean_total", 3), ("mean_seen_ge1", 4), ("mean_seen_ge2", 5)] {
            let mean = matching.iter().map(|r| r[summary_idx].parse::<f64>().unwrap()).sum::<f64>() / 3.0;
            let got: f64 = rec[col(sweep_col)].parse().unwrap();
            assert!((got - mean).abs() < 1e-6, "{sweep_col}: {got} vs {mean}");
        }
    }
}

#[test]
fn results_do_not_depend_on_thread_count() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = small_config(dir.path());
    let run_with = |threads| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| execute_sweep(&cfg, |_, _, _| Ok(())).unwrap())
    };
    assert_eq!(run_with(1), run_with(3));
}

#[test]
fn two_rep_point_is_the_plain_mean() {
    let mut cfg = ExperimentConfig::parse("strategies=follow-players\ndrone_counts=2\nreps=2\nticks=600\n").unwrap();
    cfg.write_events = false;
    let out = execute_sweep(&cfg, |_, _, _| Ok(())).unwrap();
    let (a, b) = (&out.runs[0].counts, &out.runs[1].counts);
    let rec = out.record(StrategyMode::FollowPlayers, 2).unwrap();
    assert_eq!(rec.point.mean_seen_ge1, (a.seen_ge1() + b.seen_ge1()) as f64 / 2.0);
    assert_eq!(rec.point.mean_seen_ge2, (a.seen_ge2() + b.seen_ge2()) as f64 / 2.0);
}

#[test]
fn unpaired_sweep_uses_a_second_run_set() {
    let mut cfg = ExperimentConfig::parse("strategies=density\ndrone_counts=2\nreps=2\nticks=300\npairing=unpaired\n").unwrap();
    cfg.write_events = false;
    assert_eq!(cfg.pairing, Pairing::Unpaired);
    let out = execute_sweep(&cfg, |_, _, _| Ok(())).unwrap();
    assert_eq!(out.unpaired_runs.len(), 2);
    let second = &out.unpaired_runs;
    let expected = (second[0].counts.seen_ge2() + second[1].counts.seen_ge2()) as f64 / 2.0;
    assert_eq!(out.records[0].point.mean_seen_ge2, expected);
    assert_ne!(out.runs, *second);
}

#[test]
fn point_callback_errors_abort_the_sweep() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = small_config(dir.path());
    let err = execute_sweep(&cfg, |_, _, _| {
        Err(HarnessError::io("x", std::io::Error::other("boom")))
    })
    .unwrap_err();
    assert!(err.is_io());
}
