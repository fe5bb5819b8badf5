//! Pass/fail reports shared by the self-checks.

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// The printed value disagrees with the computed one and the difference
    /// has been diagnosed (reported, never silently accepted).
    Flagged,
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Flagged => "FLAG",
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ReportItem {
    pub name: String,
    pub status: Status,
    pub detail: String,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Report {
    pub items: Vec<ReportItem>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn check(&mut self, name: impl Into<String>, ok: bool, detail: impl Into<String>) {
        self.push(name, if ok { Status::Pass } else { Status::Fail }, detail);
    }

    pub fn push(&mut self, name: impl Into<String>, status: Status, detail: impl Into<String>) {
        self.items.push(ReportItem {
            name: name.into(),
            status,
            detail: detail.into(),
        });
    }

    /// Records the outcome of a fallible check; an error is a failure.
    pub fn check_result(&mut self, name: impl Into<String>, r: crate::Result<(bool, String)>) {
        match r {
            Ok((ok, detail)) => self.check(name, ok, detail),
            Err(e) => self.check(name, false, format!("error: {e}")),
        }
    }

    pub fn extend(&mut self, other: Report) {
        self.items.extend(other.items);
    }

    pub fn count(&self, status: Status) -> usize {
        self.items.iter().filter(|i| i.status == status).count()
    }

    /// No item failed. Flagged items do not count as failures.
    pub fn passed(&self) -> bool {
        self.count(Status::Fail) == 0
    }

    pub fn get(&self, name: &str) -> Option<&ReportItem> {
        self.items.iter().find(|i| i.name == name)
    }
}

impl std::fmt::Display for Report {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let width = self.items.iter().map(|i| i.name.len()).max().unwrap_or(0);
        for item in &self.items {
            writeln!(f, "{}  {:<width$}  {}", item.status, item.name, item.detail)?;
        }
        write!(
            f,
            "{} passed, {} failed, {} flagged",
            self.count(Status::Pass),
            self.count(Status::Fail),
            self.count(Status::Flagged)
        )
    }
}
