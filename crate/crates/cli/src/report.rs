//! Metric report serialization: flat JSON, CSV rows, replication summaries.
//! All numeric output carries six significant digits.

use citeclust_core::metrics::MetricsReport;
use serde_json::{json, Map, Value};

/// Column contract shared by the JSON keys and the CSV header.
pub const CSV_HEADER: &str = "clusters,S,K,E,F,Q,logL,O,O5,D90,coverage,deg_lo,deg_hi,T_sec";

/// Round to six significant digits.
pub fn sig6(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    let exponent = x.abs().log10().floor() as i32;
    let factor = 10f64.powi(5 - exponent);
    (x * factor).round() / factor
}

/// Format with six significant digits, shortest representation.
pub fn fmt6(x: f64) -> String {
    format!("{}", sig6(x))
}

fn named_values(report: &MetricsReport) -> Vec<(&'static str, f64)> {
    vec![
        ("clusters", report.cluster_count as f64),
        ("S", report.average_size),
        ("K", report.internal_degree),
        ("E", report.expansion),
        ("F", report.flake),
        ("Q", report.modularity),
        ("logL", report.log_likelihood),
        ("O", report.orders),
        ("O5", report.orders_5),
        ("D90", report.effective_diameter_90),
        ("coverage", report.coverage),
        ("deg_lo", report.degeneracy_low),
        ("deg_hi", report.degeneracy_high),
    ]
}

/// Flat JSON object; `T_sec` is present only when the runtime is known.
pub fn report_json(report: &MetricsReport) -> Value {
    let mut map = Map::new();
    map.insert("clusters".into(), json!(report.cluster_count));
    for (key, value) in named_values(report).into_iter().skip(1) {
        map.insert(key.into(), json!(sig6(value)));
    }
    if let Some(t) = report.runtime_seconds {
        map.insert("T_sec".into(), json!(sig6(t)));
    }
    Value::Object(map)
}

/// One CSV data row matching [`CSV_HEADER`]; `T_sec` stays empty when
/// unknown.
pub fn report_csv_row(report: &MetricsReport) -> String {
    let mut fields: Vec<String> = vec![report.cluster_count.to_string()];
    fields.extend(
        named_values(report)
            .into_iter()
            .skip(1)
            .map(|(_, v)| fmt6(v)),
    );
    fields.push(report.runtime_seconds.map(fmt6).unwrap_or_default());
    fields.join(",")
}

/// Mean and sample standard deviation per metric over replications
/// (runtimes are reported separately in the provenance file).
pub fn summarize(reports: &[MetricsReport]) -> Value {
    let n = reports.len() as f64;
    let mut mean = Map::new();
    let mut std = Map::new();
    if reports.is_empty() {
        return json!({ "mean": mean, "std": std });
    }
    let keys: Vec<&'static str> = named_values(&reports[0]).iter().map(|&(k, _)| k).collect();
    for (i, key) in keys.iter().enumerate() {
        let values: Vec<f64> = reports.iter().map(|r| named_values(r)[i].1).collect();
        let m = values.iter().sum::<f64>() / n;
        let s = if reports.len() < 2 {
            0.0
        } else {
            (values.iter().map(|v| (v - m) * (v - m)).sum::<f64>() / (n - 1.0)).sqrt()
        };
        mean.insert((*key).into(), json!(sig6(m)));
        std.insert((*key).into(), json!(sig6(s)));
    }
    json!({ "mean": mean, "std": std })
}

/// RFC-4180-safe CSV field: quote when the value contains a comma, quote or
/// newline.
pub fn csv_field(value: &str) -> String {
    if value.contains(',') || value.contains('"') || value.contains('\n') {
        format!("\"{}\"", value.replace('"', "\"\""))
    } else {
        value.to_string()
    }
}
