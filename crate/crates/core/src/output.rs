//! CSV and JSON-lines writers. CSV floats use 17 significant digits
//! (`{:.16e}`); JSON uses serde_json's shortest round-trip form.

use crate::certificate::CertificateResult;
use crate::verify::InequalityReport;

pub const REPORT_CSV_HEADER: &str = "statement_id,body,n,j,lambda,lhs,rhs,margin,passed";
pub const CERTIFICATE_CSV_HEADER: &str = "n,lambda,a,b,det,valid";

pub fn fmt_float(x: f64) -> String {
    format!("{x:.16e}")
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn reports_csv(reports: &[InequalityReport]) -> String {
    let mut out = String::from(REPORT_CSV_HEADER);
    out.push('\n');
    for r in reports {
        let row = [
            r.statement.as_str().to_string(),
            csv_field(&r.bodies.join("|")),
            r.n.to_string(),
            r.j.map(|j| j.to_string()).unwrap_or_default(),
            r.lambda.map(fmt_float).unwrap_or_default(),
            fmt_float(r.lhs),
            fmt_float(r.rhs),
            fmt_float(r.margin),
            r.passed.to_string(),
        ];
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

pub fn reports_jsonl(reports: &[InequalityReport]) -> String {
    reports
        .iter()
        .map(|r| serde_json::to_string(r).expect("reports serialise") + "\n")
        .collect()
}

pub fn certificate_csv(rows: &[CertificateResult]) -> String {
    let mut out = String::from(CERTIFICATE_CSV_HEADER);
    out.push('\n');
    for c in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            c.n,
            fmt_float(c.lambda),
            fmt_float(c.a),
            fmt_float(c.b),
            fmt_float(c.det),
            c.valid
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::StatementId;

    #[test]
    fn csv_rows() {
        let mut r = InequalityReport::new(StatementId::Thm1, vec!["A,B".into()], 2, 0.5, 1.0);
        r.lambda = Some(0.1);
        let csv = reports_csv(&[r]);
        let line = csv.lines().nth(1).unwrap();
        assert_eq!(line, "THM1,\"A,B\",2,,1.0000000000000001e-1,5.0000000000000000e-1,1.0000000000000000e0,5.0000000000000000e-1,true");
    }
}
