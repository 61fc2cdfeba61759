//! JSON report types emitted by the binary's `--json` and `--trace` modes.
//!
//! Every report carries `schema: 1` as its first field, and serialization
//! preserves declaration order, so consumers can match on a stable layout.
//! All types round-trip: parsing a serialized report reproduces it exactly.

use bagwl::verdict::{RoundTrace, Verdict};
use serde::{Deserialize, Serialize};

/// Version stamp of the report layout.
pub const SCHEMA: u32 = 1;

// ============================================================================
// Pairwise runs
// ============================================================================

/// Tally of a sampled run's majority vote.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VoteSummary {
    pub draws: usize,
    pub distinguished: usize,
}

/// Outcome of one `test` invocation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub schema: u32,
    pub tester: String,
    pub left: String,
    pub right: String,
    pub verdict: Verdict,
    /// The round the verdict was reached at.
    pub rounds: usize,
    pub wall_time_ms: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trace_path: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub votes: Option<VoteSummary>,
}

/// Round-by-round color record written by `test --trace`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TraceReport {
    pub schema: u32,
    pub tester: String,
    pub left: String,
    pub right: String,
    pub verdict: Verdict,
    pub rounds: Vec<RoundTrace>,
}

// ============================================================================
// Matrices, searches, oracle checks
// ============================================================================

/// One unordered pair's verdicts, indexed into the matrix's graph list.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatrixRow {
    pub left: usize,
    pub right: usize,
    pub verdicts: Vec<Verdict>,
}

/// Outcome of one `matrix` invocation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatrixReport {
    pub schema: u32,
    pub testers: Vec<String>,
    pub graphs: Vec<String>,
    pub rows: Vec<MatrixRow>,
}

/// Outcome of one `search` invocation. Pairs index into the deterministic
/// enumeration of `nodes`-node isomorphism classes.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchReport {
    pub schema: u32,
    pub nodes: usize,
    pub stronger: String,
    pub weaker: String,
    pub classes: usize,
    pub pairs: Vec<(usize, usize)>,
}

/// Outcome of one `oracle` invocation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OracleReport {
    pub schema: u32,
    pub left: String,
    pub right: String,
    pub isomorphic: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<u32>>,
}

// ============================================================================
// Tests
// ============================================================================

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_run() -> RunReport {
        RunReport {
            schema: SCHEMA,
            tester: "dss:ed".to_string(),
            left: "gen:cycle:6".to_string(),
            right: "gen:2c3".to_string(),
            verdict: Verdict::Distinguished { at_round: 2 },
            rounds: 2,
            wall_time_ms: 1.5,
            trace_path: None,
            votes: None,
        }
    }

    #[test]
    fn run_reports_round_trip() {
        let report = sample_run();
        let text = serde_json::to_string(&report).unwrap();
        let back: RunReport = serde_json::from_str(&text).unwrap();
        assert_eq!(back, report);
    }

    #[test]
    fn field_order_is_stable() {
        let text = serde_json::to_string(&sample_run()).unwrap();
        assert_eq!(
            text,
            "{\"schema\":1,\"tester\":\"dss:ed\",\"left\":\"gen:cycle:6\",\
             \"right\":\"gen:2c3\",\"verdict\":{\"outcome\":\"distinguished\",\
             \"at_round\":2},\"rounds\":2,\"wall_time_ms\":1.5}"
        );
    }

    #[test]
    fn optional_fields_appear_only_when_set() {
        let mut report = sample_run();
        assert!(!serde_json::to_string(&report).unwrap().contains("votes"));
        report.votes = Some(VoteSummary { draws: 5, distinguished: 4 });
        report.trace_path = Some("/tmp/trace.json".to_string());
        let text = serde_json::to_string(&report).unwrap();
        assert!(text.contains("\"draws\":5"));
        assert!(text.contains("trace_path"));
        let back: RunReport = serde_json::from_str(&text).unwrap();
        assert_eq!(back, report);
    }

    #[test]
    fn matrix_and_search_reports_round_trip() {
        let matrix = MatrixReport {
            schema: SCHEMA,
            testers: vec!["wl".into(), "dss:nd".into()],
            graphs: vec!["gen:csl:16:2".into(), "gen:csl:16:3".into()],
            rows: vec![MatrixRow {
                left: 0,
                right: 1,
                verdicts: vec![
                    Verdict::PossiblyIsomorphic { converged_at: 1 },
                    Verdict::Distinguished { at_round: 3 },
                ],
            }],
        };
        let back: MatrixReport =
            serde_json::from_str(&serde_json::to_string(&matrix).unwrap()).unwrap();
        assert_eq!(back, matrix);

        let search = SearchReport {
            schema: SCHEMA,
            nodes: 4,
            stronger: "dss:se".into(),
            weaker: "ds:se".into(),
            classes: 11,
            pairs: vec![(4, 7)],
        };
        let back: SearchReport =
            serde_json::from_str(&serde_json::to_string(&search).unwrap()).unwrap();
        assert_eq!(back, search);
    }
}
