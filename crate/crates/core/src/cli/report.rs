//! Check records and their human and machine renderings.

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Refused,
}

/// One executed check. Field order is the order of the machine output.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Record {
    pub check: String,
    pub inputs: String,
    pub verdict: Verdict,
    pub reason: Option<String>,
    pub witnesses: Vec<String>,
    pub timing_ms: Option<f64>,
}

impl Record {
    pub fn new(check: impl Into<String>, inputs: impl Into<String>, verdict: Verdict) -> Self {
        Record { check: check.into(), inputs: inputs.into(), verdict, reason: None, witnesses: Vec::new(), timing_ms: None }
    }

    pub fn pass_if(check: impl Into<String>, inputs: impl Into<String>, ok: bool) -> Self {
        Self::new(check, inputs, if ok { Verdict::Pass } else { Verdict::Fail })
    }

    pub fn refused(check: impl Into<String>, inputs: impl Into<String>, reason: impl Into<String>) -> Self {
        let mut r = Self::new(check, inputs, Verdict::Refused);
        r.reason = Some(reason.into());
        r
    }

    pub fn witness(mut self, w: impl Into<String>) -> Self {
        self.witnesses.push(w.into());
        self
    }

    pub fn witnesses<I: IntoIterator<Item = String>>(mut self, ws: I) -> Self {
        self.witnesses.extend(ws);
        self
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Report {
    pub command: String,
    pub records: Vec<Record>,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Report { command: command.into(), records: Vec::new() }
    }

    pub fn push(&mut self, r: Record) {
        self.records.push(r);
    }

    pub fn all_pass(&self) -> bool {
        self.records.iter().all(|r| r.verdict == Verdict::Pass)
    }

    /// 0 when everything passed, 2 when something was refused, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.records.iter().any(|r| r.verdict == Verdict::Refused) {
            2
        } else if self.all_pass() {
            0
        } else {
            1
        }
    }

    /// One JSON object per line.
    pub fn machine(&self) -> String {
        self.records.iter().map(|r| serde_json::to_string(r).expect("records serialize") + "\n").collect()
    }

    pub fn human(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            let tag = match r.verdict {
                Verdict::Pass => "PASS",
                Verdict::Fail => "FAIL",
                Verdict::Refused => "REFUSED",
            };
            out += &format!("{tag:<8}{} [{}]", r.check, r.inputs);
            if let Some(t) = r.timing_ms {
                out += &format!(" ({t:.1} ms)");
            }
            out.push('\n');
            if let Some(reason) = &r.reason {
                out += &format!("        reason: {reason}\n");
            }
            for w in &r.witnesses {
                out += &format!("        {w}\n");
            }
        }
        let passed = self.records.iter().filter(|r| r.verdict == Verdict::Pass).count();
        out += &format!("{}: {passed}/{} checks passed\n", self.command, self.records.len());
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn machine_lines_have_fixed_field_order() {
        let mut rep = Report::new("check");
        rep.push(Record::pass_if("jacobi", "pi", true));
        rep.push(Record::refused("pde", "sigma", "bad").witness("w"));
        let out = rep.machine();
        let lines: Vec<&str> = out.lines().collect();
        assert_eq!(
            lines[0],
            r#"{"check":"jacobi","inputs":"pi","verdict":"pass","reason":null,"witnesses":[],"timing_ms":null}"#
        );
        assert!(lines[1].contains(r#""verdict":"refused","reason":"bad","witnesses":["w"]"#));
        assert_eq!(rep.exit_code(), 2);
    }

    #[test]
    fn exit_codes() {
        let mut rep = Report::new("x");
        assert_eq!(rep.exit_code(), 0);
        rep.push(Record::pass_if("a", "", false));
        assert_eq!(rep.exit_code(), 1);
    }
}
