use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;

use super::runner::{Summary, SummaryPoint};
use crate::environment::{Checkpoint, RegretTrace};
use crate::error::{Error, Result};

pub const TRACE_HEADER: [&str; 6] = [
    "run_id",
    "algorithm",
    "reward",
    "noise",
    "t",
    "cumulative_regret",
];
pub const SUMMARY_HEADER: [&str; 3] = ["t", "mean", "std"];

/// Labels attached to every row of a trace file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceLabels {
    pub algorithm: String,
    pub reward: String,
    pub noise: String,
}

/// A trace read back from CSV.
#[derive(Debug, Clone, PartialEq)]
pub struct LabeledTrace {
    pub labels: TraceLabels,
    pub trace: RegretTrace,
}

fn csv_err(path: &Path, e: csv::Error) -> Error {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::io(path, io),
        other => Error::Parse(format!("{}: {other:?}", path.display())),
    }
}

fn create(path: &Path) -> Result<File> {
    File::create(path).map_err(|e| Error::io(path, e))
}

/// Writes trace rows sorted by `(run_id, t)`. Floats use the shortest
/// representation that parses back to the same value.
pub fn write_traces<W: Write>(
    w: W,
    labels: &TraceLabels,
    traces: &[RegretTrace],
) -> csv::Result<()> {
    let mut sorted: Vec<&RegretTrace> = traces.iter().collect();
    sorted.sort_by_key(|t| t.run_id);
    let mut out = csv::Writer::from_writer(w);
    out.write_record(TRACE_HEADER)?;
    for trace in sorted {
        let mut cps = trace.checkpoints.clone();
        cps.sort_by_key(|c| c.round);
        for c in cps {
            out.write_record([
                trace.run_id.to_string(),
                labels.algorithm.clone(),
                labels.reward.clone(),
                labels.noise.clone(),
                c.round.to_string(),
                c.cumulative_regret.to_string(),
            ])?;
        }
    }
    out.flush()?;
    Ok(())
}

pub fn write_summary<W: Write>(w: W, summary: &Summary) -> csv::Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(SUMMARY_HEADER)?;
    for p in &summary.points {
        out.write_record([p.t.to_string(), p.mean.to_string(), p.std.to_string()])?;
    }
    out.flush()?;
    Ok(())
}

/// Writes the trace file and the summary file.
pub fn emit_csv(
    labels: &TraceLabels,
    traces: &[RegretTrace],
    summary: &Summary,
    traces_path: &Path,
    summary_path: &Path,
) -> Result<()> {
    write_traces(create(traces_path)?, labels, traces).map_err(|e| csv_err(traces_path, e))?;
    write_summary(create(summary_path)?, summary).map_err(|e| csv_err(summary_path, e))
}

fn check_header(found: &csv::StringRecord, expected: &[&str]) -> Result<()> {
    if found.iter().eq(expected.iter().copied()) {
        Ok(())
    } else {
        Err(Error::Parse(format!(
            "unexpected header {:?}, expected {}",
            found.iter().collect::<Vec<_>>(),
            expected.join(",")
        )))
    }
}

fn field<T: std::str::FromStr>(rec: &csv::StringRecord, i: usize, line: u64) -> Result<T> {
    rec.get(i)
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| Error::Parse(format!("row {line}: bad value in column {}", i + 1)))
}

/// Parses a trace file; consecutive rows with the same run id and labels
/// form one trace.
pub fn parse_traces<R: Read>(r: R) -> Result<Vec<LabeledTrace>> {
    let mut reader = csv::Reader::from_reader(r);
    check_header(
        reader.headers().map_err(|e| Error::Parse(e.to_string()))?,
        &TRACE_HEADER,
    )?;
    let mut out: Vec<LabeledTrace> = Vec::new();
    for (n, rec) in reader.records().enumerate() {
        let rec = rec.map_err(|e| Error::Parse(e.to_string()))?;
        let line = n as u64 + 2;
        let run_id: u64 = field(&rec, 0, line)?;
        let labels = TraceLabels {
            algorithm: field(&rec, 1, line)?,
            reward: field(&rec, 2, line)?,
            noise: field(&rec, 3, line)?,
        };
        let cp = Checkpoint {
            round: field(&rec, 4, line)?,
            cumulative_regret: field(&rec, 5, line)?,
        };
        match out.last_mut() {
            Some(last) if last.trace.run_id == run_id && last.labels == labels => {
                last.trace.checkpoints.push(cp)
            }
            _ => out.push(LabeledTrace {
                labels,
                trace: RegretTrace {
                    run_id,
                    checkpoints: vec![cp],
                },
            }),
        }
    }
    Ok(out)
}

pub fn parse_summary<R: Read>(r: R) -> Result<Summary> {
    let mut reader = csv::Reader::from_reader(r);
    check_header(
        reader.headers().map_err(|e| Error::Parse(e.to_string()))?,
        &SUMMARY_HEADER,
    )?;
    let mut points = Vec::new();
    for (n, rec) in reader.records().enumerate() {
        let rec = rec.map_err(|e| Error::Parse(e.to_string()))?;
        let line = n as u64 + 2;
        points.push(SummaryPoint {
            t: field(&rec, 0, line)?,
            mean: field(&rec, 1, line)?,
            std: field(&rec, 2, line)?,
        });
    }
    Ok(Summary { trials: 0, points })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels() -> TraceLabels {
        TraceLabels {
            algorithm: "qzooming".into(),
            reward: "triangle".into(),
            noise: "bernoulli".into(),
        }
    }

    fn trace(run_id: u64, regrets: &[f64]) -> RegretTrace {
        RegretTrace {
            run_id,
            checkpoints: regrets
                .iter()
                .enumerate()
                .map(|(i, &r)| Checkpoint {
                    round: (i as u64 + 1) * 1000,
                    cumulative_regret: r,
                })
                .collect(),
        }
    }

    #[test]
    fn one_trial_three_rows() {
        let mut buf = Vec::new();
        write_traces(&mut buf, &labels(), &[trace(0, &[0.5, 1.25, 2.0])]).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 4);
        assert_eq!(
            lines[0],
            "run_id,algorithm,reward,noise,t,cumulative_regret"
        );
        assert_eq!(lines[1], "0,qzooming,triangle,bernoulli,1000,0.5");
    }

    #[test]
    fn round_trip_is_exact_and_sorted() {
        let traces = vec![
            trace(2, &[0.1 + 0.2, 1.0 / 3.0, std::f64::consts::PI * 1e5]),
            trace(0, &[1e-300, 7.000000000000001, 123456.78901234567]),
        ];
        let mut buf = Vec::new();
        write_traces(&mut buf, &labels(), &traces).unwrap();
        let back = parse_traces(buf.as_slice()).unwrap();
        assert_eq!(back.len(), 2);
        assert_eq!(back[0].trace, traces[1]);
        assert_eq!(back[1].trace, traces[0]);
        assert_eq!(back[0].labels, labels());
    }

    #[test]
    fn summary_round_trip() {
        let summary = Summary {
            trials: 3,
            points: vec![
                SummaryPoint {
                    t: 10,
                    mean: 0.1 + 0.2,
                    std: 2f64.sqrt(),
                },
                SummaryPoint {
                    t: 20,
                    mean: 5.0,
                    std: 0.0,
                },
            ],
        };
        let mut buf = Vec::new();
        write_summary(&mut buf, &summary).unwrap();
        assert!(String::from_utf8(buf.clone())
            .unwrap()
            .starts_with("t,mean,std\n"));
        assert_eq!(
            parse_summary(buf.as_slice()).unwrap().points,
            summary.points
        );
    }

    #[test]
    fn bad_header_is_rejected() {
        assert!(parse_traces("a,b\n1,2\n".as_bytes()).is_err());
        assert!(parse_summary("t,mean\n1,2\n".as_bytes()).is_err());
    }

    #[test]
    fn io_error_names_path() {
        let dir = tempfile::tempdir().unwrap();
        let missing = dir.path().join("no/such/dir/traces.csv");
        let err = emit_csv(
            &labels(),
            &[],
            &Summary::default(),
            &missing,
            &dir.path().join("summary.csv"),
        )
        .unwrap_err();
        assert!(err.to_string().contains("traces.csv"), "{err}");
    }
}
