use rlstorage::harness::{
    emit_report, metrics_csv, run_experiment, AgentKind, BaselineKind, ExperimentSpec, Report, ReportFormat,
    WorkloadSpec, METRICS_HEADER, SUMMARY_HEADER,
};
use rlstorage::simenv::DevicePreset;

fn small(agent: AgentKind) -> ExperimentSpec {
    let mut spec = ExperimentSpec::new(
        "small",
        DevicePreset::Nvme,
        WorkloadSpec::preset("seq-to-random").unwrap().with_total_ops(1000),
    );
    spec.agent = agent;
    spec.baseline = BaselineKind::Heuristic;
    spec.seeds = vec![3, 4];
    spec.train_episodes = 2;
    spec.eval_episodes = 2;
    spec
}

fn parse(text: &str) -> (Vec<String>, Vec<Vec<String>>) {
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let header = reader.headers().unwrap().iter().map(String::from).collect();
    let rows = reader
        .records()
        .map(|r| r.unwrap().iter().map(String::from).collect())
        .collect();
    (header, rows)
}

fn report() -> Report {
    run_experiment(&small(AgentKind::Dqn)).unwrap()
}

#[test]
fn summary_csv_roundtrips() {
    let r = report();
    let text = emit_report(&r, ReportFormat::Csv);
    let (header, rows) = parse(&text);
    assert_eq!(header.join(","), SUMMARY_HEADER);
    assert_eq!(rows.len(), r.rows.len());
    for (row, cells) in r.rows.iter().zip(&rows) {
        assert_eq!(cells[3], row.policy);
        assert_eq!(cells[4].parse::<f64>().unwrap(), (row.throughput_ratio * 1e6).round() / 1e6);
    }
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer.write_record(&header).unwrap();
    for cells in &rows {
        writer.write_record(cells).unwrap();
    }
    assert_eq!(String::from_utf8(writer.into_inner().unwrap()).unwrap(), text);
}

#[test]
fn metrics_csv_has_one_row_per_interval() {
    let r = report();
    let (header, rows) = parse(&metrics_csv(&r));
    assert_eq!(header.join(","), METRICS_HEADER);
    let intervals: usize = r
        .rows
        .iter()
        .flat_map(|row| &row.seeds)
        .flat_map(|s| &s.episodes)
        .map(|e| e.records.len())
        .sum();
    assert_eq!(rows.len(), intervals);
    assert!(rows.iter().all(|c| c.len() == header.len()));
}

#[test]
fn text_has_row_per_policy() {
    let r = report();
    let text = emit_report(&r, ReportFormat::Text);
    for policy in ["static", "heuristic", "dqn"] {
        assert!(text.lines().any(|l| l.starts_with(policy) && !l.contains("per-seed")), "{policy}");
    }
}

#[test]
fn plotdata_series_match_interval_counts() {
    let r = report();
    let text = emit_report(&r, ReportFormat::PlotData);
    let blocks: Vec<&str> = text.split("\n\n\n").filter(|b| b.contains("x=interval")).collect();
    let mut expected = Vec::new();
    for row in &r.rows {
        for s in &row.seeds {
            expected.push(s.episodes.iter().map(|e| e.records.len()).sum::<usize>());
        }
    }
    let got: Vec<usize> = blocks.iter().map(|b| b.lines().filter(|l| !l.starts_with('#')).count()).collect();
    assert_eq!(got, expected);
}

#[test]
fn static_rows_are_matched_pairs() {
    let r = run_experiment(&small(AgentKind::None)).unwrap();
    for policy in ["static", "none"] {
        let row = r.row(policy).unwrap();
        assert_eq!(row.throughput_ratio, 1.0);
        assert_eq!(row.latency_ratio, 1.0);
        assert_eq!(row.gain, 0.0);
    }
}

#[test]
fn experiments_are_reproducible() {
    let spec = small(AgentKind::Tabular);
    let a = run_experiment(&spec).unwrap();
    let b = run_experiment(&spec).unwrap();
    assert_eq!(emit_report(&a, ReportFormat::Csv), emit_report(&b, ReportFormat::Csv));
    assert_eq!(metrics_csv(&a), metrics_csv(&b));
    assert_eq!(emit_report(&a, ReportFormat::PlotData), emit_report(&b, ReportFormat::PlotData));
}
