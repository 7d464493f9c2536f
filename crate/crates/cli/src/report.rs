use std::fmt::Write;

/// Plain-text run report: a header with the run parameters, one line per
/// check, free-form notes, and a final verdict.
#[derive(Debug)]
pub struct Report {
    header: Vec<(String, String)>,
    lines: Vec<String>,
    first_failure: Option<String>,
    checks: usize,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            header: vec![("command".into(), command.into())],
            lines: Vec::new(),
            first_failure: None,
            checks: 0,
        }
    }

    pub fn param(&mut self, key: &str, value: impl ToString) {
        self.header.push((key.into(), value.to_string()));
    }

    pub fn check(&mut self, name: &str, ok: bool, detail: impl AsRef<str>) -> bool {
        self.checks += 1;
        let detail = detail.as_ref();
        let tag = if ok { "ok  " } else { "FAIL" };
        if detail.is_empty() {
            self.lines.push(format!("[{tag}] {name}"));
        } else {
            self.lines.push(format!("[{tag}] {name}: {detail}"));
        }
        if !ok && self.first_failure.is_none() {
            self.first_failure = Some(name.to_string());
        }
        ok
    }

    pub fn note(&mut self, text: impl AsRef<str>) {
        for line in text.as_ref().lines() {
            self.lines.push(format!("       {line}"));
        }
    }

    pub fn passed(&self) -> bool {
        self.first_failure.is_none()
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        for (k, v) in &self.header {
            let _ = writeln!(s, "# {k} = {v}");
        }
        for l in &self.lines {
            let _ = writeln!(s, "{l}");
        }
        match &self.first_failure {
            None => {
                let _ = writeln!(s, "result: PASS ({} checks)", self.checks);
            }
            Some(name) => {
                let _ = writeln!(s, "result: FAIL (first failing check: {name})");
            }
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_failure_is_named() {
        let mut r = Report::new("demo");
        r.param("seed", 4);
        r.check("a", true, "");
        r.check("b", false, "witness");
        r.check("c", false, "");
        let out = r.render();
        assert!(out.starts_with("# command = demo\n# seed = 4\n"));
        assert!(out.contains("[FAIL] b: witness"));
        assert!(out.ends_with("result: FAIL (first failing check: b)\n"));
        assert!(!r.passed());
    }
}
