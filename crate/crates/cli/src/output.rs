//! CSV renderings. Rationals stay exact `p/q` strings.

use wickenum::algebra::fmt_rational;
use wickenum::census::CensusEntry;
use wickenum::verify::{ConvergenceTable, Report};
use wickenum::ExactPoly;

fn finish(w: csv::Writer<Vec<u8>>) -> Result<String, csv::Error> {
    let bytes = w.into_inner().map_err(|e| e.into_error())?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

pub fn integrate_csv(p: &ExactPoly) -> Result<String, csv::Error> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["monomial", "coefficient"])?;
    for (m, c) in p.terms() {
        w.write_record([m.to_string(), fmt_rational(c)])?;
    }
    finish(w)
}

pub fn report_csv(r: &Report) -> Result<String, csv::Error> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["identity", "n", "degree_bound", "status", "case", "monomial", "lhs", "rhs"])?;
    let head = [
        r.identity.to_string(),
        r.n.map_or("symbolic".to_string(), |n| n.to_string()),
        r.degree_bound.to_string(),
        if r.passed() { "PASS" } else { "FAIL" }.to_string(),
    ];
    if r.mismatches.is_empty() {
        w.write_record(head.iter().cloned().chain(["", "", "", ""].map(String::from)))?;
    }
    for m in &r.mismatches {
        w.write_record(
            head.iter()
                .cloned()
                .chain([m.case.clone(), m.monomial.clone(), m.lhs.clone(), m.rhs.clone()]),
        )?;
    }
    finish(w)
}

pub fn planar_csv(t: &ConvergenceTable) -> Result<String, csv::Error> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec!["n".to_string(), "r".to_string(), "p".to_string()];
    header.extend(t.sweep.iter().map(|n| format!("value_N{n}")));
    header.extend(t.sweep.iter().map(|n| format!("residual_N{n}")));
    w.write_record(&header)?;
    for row in &t.rows {
        let mut rec = vec![row.n.to_string(), row.r.to_string(), row.p.to_string()];
        let pad = |v: &[String]| -> Vec<String> {
            if v.is_empty() {
                vec![String::new(); t.sweep.len()]
            } else {
                v.to_vec()
            }
        };
        rec.extend(pad(&row.values));
        rec.extend(pad(&row.residuals));
        w.write_record(&rec)?;
    }
    for (n, total) in &t.p_totals {
        let mut rec = vec![n.to_string(), "total".to_string(), total.to_string()];
        rec.extend(std::iter::repeat_n(String::new(), 2 * t.sweep.len()));
        w.write_record(&rec)?;
    }
    finish(w)
}

pub fn census_csv(entries: &[CensusEntry]) -> Result<String, csv::Error> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["n", "edges", "aut_order", "tdc_profile", "dcdc_classes"])?;
    for e in entries {
        let edges: Vec<String> = e.graph.edges().iter().map(|(u, v)| format!("{u}-{v}")).collect();
        let profile = e.tdc_profile.as_ref().map_or(String::new(), |p| {
            p.iter().map(u64::to_string).collect::<Vec<_>>().join(" ")
        });
        let dcdc = e.dcdc_orbits.as_ref().map_or(String::new(), |o| o.len().to_string());
        w.write_record([
            e.graph.n().to_string(),
            edges.join(" "),
            e.aut_order.to_string(),
            profile,
            dcdc,
        ])?;
    }
    finish(w)
}
