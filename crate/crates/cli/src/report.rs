//! One machine-readable document per run, plus the CSV tables.

use regstab::check::{Check, Verdict};
use regstab::rees::{SimpleStabVerdict, StrandReport};
use regstab::stabilization::{RegRow, StabReport};
use serde::{Deserialize, Serialize};

use crate::suite::SuiteSummary;

pub const TOOL: &str = "regstab";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputSummary {
    pub field: String,
    pub vars: Vec<String>,
    pub gens: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub tool: String,
    pub version: String,
    pub command: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub input: Option<InputSummary>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stabilization: Option<StabReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub strand_check: Option<SimpleStabVerdict>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub strand: Option<StrandReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub suite: Option<SuiteSummary>,
    /// Every check of the run, in order.
    pub checks: Vec<Check>,
    pub verdict: Verdict,
    /// All checks certified and, for `analyze`, the table stable on its window.
    pub certified: bool,
}

impl ReportDocument {
    pub fn new(command: &str) -> Self {
        ReportDocument {
            tool: TOOL.to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            command: command.to_string(),
            seed: None,
            input: None,
            stabilization: None,
            strand_check: None,
            strand: None,
            suite: None,
            checks: Vec::new(),
            verdict: Verdict::Pass,
            certified: true,
        }
    }

    /// Sets `checks`, `verdict` and `certified` from a list of checks.
    pub fn finish(&mut self, checks: Vec<Check>, extra_certified: bool) {
        self.verdict = Verdict::combine(&checks);
        self.certified = extra_certified && checks.iter().all(|c| c.certified);
        self.checks = checks;
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

pub fn reg_csv(rows: &[RegRow]) -> String {
    let mut out = String::from("t,reg,f\n");
    for r in rows {
        out.push_str(&format!("{},{},{}\n", r.t, r.reg, r.f));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use regstab::field::PrimeField;
    use regstab::ideal::{default_var_names, Ideal};
    use regstab::rees::{StrandContext, StrandOptions};
    use regstab::{Monomial, Polynomial};

    fn squares() -> Ideal<PrimeField> {
        let f = PrimeField::new(32003).unwrap();
        let gens = [[2u16, 0], [0, 2]]
            .iter()
            .map(|e| Polynomial::monomial(&f, Monomial::new(e.iter().copied())))
            .collect();
        Ideal::new(f, default_var_names(2), gens).unwrap()
    }

    #[test]
    fn document_round_trips() {
        let ctx = StrandContext::new(&squares(), StrandOptions::default()).unwrap();
        let mut doc = ReportDocument::new("strand");
        doc.seed = Some(7);
        doc.stabilization = Some(ctx.analysis.report.clone());
        doc.strand_check = Some(ctx.simple_stab().unwrap());
        let strand = ctx.strand_report(1).unwrap();
        let checks = strand.checks.clone();
        doc.strand = Some(strand);
        doc.finish(checks, true);
        let text = doc.to_json();
        let back: ReportDocument = serde_json::from_str(&text).unwrap();
        assert_eq!(back, doc);
        assert!(text.contains("\"anchor\""));
    }

    #[test]
    fn csv_tables() {
        let rows = [RegRow { t: 1, reg: 3, f: 1 }, RegRow { t: 2, reg: 5, f: 1 }];
        assert_eq!(reg_csv(&rows), "t,reg,f\n1,3,1\n2,5,1\n");
    }
}
