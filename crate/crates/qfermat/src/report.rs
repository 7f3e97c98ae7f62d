//! Outcome records for verification runs, with JSON/CSV/text rendering.
//!
//! JSON output is one record per line (sorted by case id, prime, params) so
//! report files stay diffable and greppable:
//! `{"case": ..., "prime": ..., "params": {...}, "status": ..., "witness": ..., "millis": ...}`.
//! Identity verifications carry `"prime": null`. Exploratory statuses come
//! from out-of-constraint probing and never affect the exit code.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
    Error,
    ExploratoryPass,
    ExploratoryFail,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
            Status::Error => "error",
            Status::ExploratoryPass => "exploratory-pass",
            Status::ExploratoryFail => "exploratory-fail",
        };
        f.write_str(s)
    }
}

/// One verification outcome. `status = fail` always carries a nonzero
/// witness (the canonical rendering of the LHS − RHS difference).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub case: String,
    pub prime: Option<u64>,
    pub params: BTreeMap<String, i64>,
    pub status: Status,
    pub witness: Option<String>,
    pub millis: u64,
}

impl Report {
    pub fn sort_key(&self) -> (String, Option<u64>, Vec<(String, i64)>) {
        (
            self.case.clone(),
            self.prime,
            self.params.iter().map(|(k, v)| (k.clone(), *v)).collect(),
        )
    }

    pub fn is_failure(&self) -> bool {
        matches!(self.status, Status::Fail | Status::Error)
    }
}

pub fn sort_reports(reports: &mut [Report]) {
    reports.sort_by_key(|r| r.sort_key());
}

/// 0 iff no fail/error occurred; skipped and exploratory statuses never fail
/// a run.
pub fn exit_code(reports: &[Report]) -> i32 {
    if reports.iter().any(Report::is_failure) {
        1
    } else {
        0
    }
}

pub fn to_json_lines(reports: &[Report]) -> String {
    let mut out = String::new();
    for r in reports {
        out.push_str(&serde_json::to_string(r).expect("report serializes"));
        out.push('\n');
    }
    out
}

pub fn to_csv(reports: &[Report]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["case", "prime", "params", "status", "witness", "millis"])
        .expect("csv header");
    for r in reports {
        w.write_record([
            r.case.as_str(),
            &r.prime.map_or(String::new(), |p| p.to_string()),
            &serde_json::to_string(&r.params).expect("params serialize"),
            &r.status.to_string(),
            r.witness.as_deref().unwrap_or(""),
            &r.millis.to_string(),
        ])
        .expect("csv record");
    }
    String::from_utf8(w.into_inner().expect("csv flush")).expect("csv utf8")
}

pub fn to_text(reports: &[Report]) -> String {
    let mut out = String::new();
    for r in reports {
        let prime = r.prime.map_or_else(|| "-".into(), |p| p.to_string());
        let params = if r.params.is_empty() {
            String::new()
        } else {
            let inner: Vec<String> = r.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
            format!(" [{}]", inner.join(", "))
        };
        out.push_str(&format!(
            "{:<17} {:<28} p={:<6}{:>6} ms{}\n",
            r.status.to_string(),
            format!("{}{}", r.case, params),
            prime,
            r.millis,
            r.witness
                .as_deref()
                .map_or(String::new(), |w| format!("  witness: {w}")),
        ));
    }
    let (pass, fail, skip, err) = reports.iter().fold((0, 0, 0, 0), |acc, r| match r.status {
        Status::Pass | Status::ExploratoryPass => (acc.0 + 1, acc.1, acc.2, acc.3),
        Status::Fail | Status::ExploratoryFail => (acc.0, acc.1 + 1, acc.2, acc.3),
        Status::Skipped => (acc.0, acc.1, acc.2 + 1, acc.3),
        Status::Error => (acc.0, acc.1, acc.2, acc.3 + 1),
    });
    out.push_str(&format!(
        "{} pass, {} fail, {} skipped, {} error ({} total)\n",
        pass,
        fail,
        skip,
        err,
        reports.len()
    ));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn report(case: &str, prime: Option<u64>, m: Option<i64>, status: Status) -> Report {
        let mut params = BTreeMap::new();
        if let Some(m) = m {
            params.insert("m".to_string(), m);
        }
        Report {
            case: case.into(),
            prime,
            params,
            status,
            witness: None,
            millis: 1,
        }
    }

    #[test]
    fn json_schema_is_stable() {
        let r = report("q-known", Some(5), None, Status::Pass);
        assert_eq!(
            serde_json::to_string(&r).unwrap(),
            r#"{"case":"q-known","prime":5,"params":{},"status":"pass","witness":null,"millis":1}"#
        );
        let r = report("lagrange", None, Some(2), Status::Fail);
        assert_eq!(
            serde_json::to_string(&r).unwrap(),
            r#"{"case":"lagrange","prime":null,"params":{"m":2},"status":"fail","witness":null,"millis":1}"#
        );
    }

    #[test]
    fn sorting_and_exit_codes() {
        let mut reports = vec![
            report("b", Some(7), None, Status::Pass),
            report("b", Some(3), None, Status::Skipped),
            report("a", Some(5), Some(2), Status::Pass),
            report("a", Some(5), Some(1), Status::Pass),
        ];
        sort_reports(&mut reports);
        let order: Vec<_> = reports
            .iter()
            .map(|r| (r.case.as_str(), r.prime, r.params.get("m").copied()))
            .collect();
        assert_eq!(
            order,
            vec![
                ("a", Some(5), Some(1)),
                ("a", Some(5), Some(2)),
                ("b", Some(3), None),
                ("b", Some(7), None),
            ]
        );
        assert_eq!(exit_code(&reports), 0);
        reports.push(report("c", Some(3), None, Status::ExploratoryFail));
        assert_eq!(exit_code(&reports), 0, "exploratory never affects exit");
        reports.push(report("c", Some(5), None, Status::Fail));
        assert_eq!(exit_code(&reports), 1);
    }

    #[test]
    fn csv_mirrors_json_columns() {
        let reports = vec![report("q-multi", Some(5), Some(3), Status::Pass)];
        let csv = to_csv(&reports);
        let mut lines = csv.lines();
        assert_eq!(
            lines.next(),
            Some("case,prime,params,status,witness,millis")
        );
        assert_eq!(lines.next(), Some(r#"q-multi,5,"{""m"":3}",pass,,1"#));
    }
}
