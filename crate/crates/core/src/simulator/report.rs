use std::fmt;
use std::fmt::Write as _;
use std::ops::Add;
use std::str::FromStr;

/// Simulated time, kept in whole milliseconds so sums are exact.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct SimDuration(u64);

impl SimDuration {
    pub const ZERO: SimDuration = SimDuration(0);

    pub const fn from_millis(ms: u64) -> Self {
        SimDuration(ms)
    }

    /// Rounds to the nearest millisecond. `None` for negative or non-finite
    /// input.
    pub fn from_secs_f64(secs: f64) -> Option<Self> {
        (secs.is_finite() && secs >= 0.0 && secs < 1e12).then(|| SimDuration((secs * 1000.0).round() as u64))
    }

    pub fn as_millis(self) -> u64 {
        self.0
    }

    pub fn as_secs_f64(self) -> f64 {
        self.0 as f64 / 1000.0
    }
}

impl Add for SimDuration {
    type Output = SimDuration;

    fn add(self, rhs: SimDuration) -> SimDuration {
        SimDuration(self.0 + rhs.0)
    }
}

impl std::iter::Sum for SimDuration {
    fn sum<I: Iterator<Item = SimDuration>>(iter: I) -> SimDuration {
        iter.fold(SimDuration::ZERO, Add::add)
    }
}

/// Seconds with three decimals, e.g. `121.386`.
impl fmt::Display for SimDuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{:03}", self.0 / 1000, self.0 % 1000)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StepStatus {
    Passed,
    Failed,
    Skipped,
}

impl StepStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            StepStatus::Passed => "Passed",
            StepStatus::Failed => "Failed",
            StepStatus::Skipped => "Skipped",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Ok,
    Failed,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Ok => "OK",
            Verdict::Failed => "FAILED",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum ReportFormat {
    #[default]
    Xml,
    Plain,
}

impl ReportFormat {
    pub fn as_str(self) -> &'static str {
        match self {
            ReportFormat::Xml => "xml",
            ReportFormat::Plain => "plain",
        }
    }

    pub fn extension(self) -> &'static str {
        match self {
            ReportFormat::Xml => "xml",
            ReportFormat::Plain => "txt",
        }
    }
}

impl FromStr for ReportFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "xml" => Ok(ReportFormat::Xml),
            "plain" => Ok(ReportFormat::Plain),
            other => Err(format!("unknown report format `{other}` (expected xml or plain)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepResult {
    pub keyword: String,
    pub status: StepStatus,
    pub message: String,
    pub duration: SimDuration,
    /// Current page once the step finished.
    pub page: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunReport {
    pub test_name: String,
    pub app_label: String,
    pub step_results: Vec<StepResult>,
    pub total: SimDuration,
    pub verdict: Verdict,
}

impl RunReport {
    /// Builds a report, deriving the total and the verdict from the steps.
    pub fn new(test_name: impl Into<String>, app_label: impl Into<String>, step_results: Vec<StepResult>) -> Self {
        let total = step_results.iter().map(|s| s.duration).sum();
        let verdict =
            if step_results.iter().any(|s| s.status == StepStatus::Failed) { Verdict::Failed } else { Verdict::Ok };
        RunReport { test_name: test_name.into(), app_label: app_label.into(), step_results, total, verdict }
    }

    pub fn count(&self, status: StepStatus) -> usize {
        self.step_results.iter().filter(|s| s.status == status).count()
    }
}

pub const SEPARATOR: &str = "----------------------------------------------------------------------";

fn xml_escape(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for c in text.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            '\n' | '\r' | '\t' => {
                let _ = write!(out, "&#{};", c as u32);
            }
            // not representable in XML 1.0
            c if (c as u32) < 0x20 => out.push('\u{FFFD}'),
            c => out.push(c),
        }
    }
    out
}

pub fn render_report(report: &RunReport, format: ReportFormat) -> String {
    match format {
        ReportFormat::Plain => render_plain(report),
        ReportFormat::Xml => render_xml(report),
    }
}

/// unittest-style console output: one line per step, then the separator,
/// the `Ran 1 test in T s` summary and the verdict.
fn render_plain(report: &RunReport) -> String {
    let mut out = String::new();
    for step in &report.step_results {
        let _ = match step.status {
            StepStatus::Passed => writeln!(out, "{} ... ok", step.keyword),
            StepStatus::Failed => writeln!(out, "{} ... FAIL: {}", step.keyword, step.message),
            StepStatus::Skipped => writeln!(out, "{} ... skipped: {}", step.keyword, step.message),
        };
    }
    let _ = writeln!(out, "{SEPARATOR}");
    let _ = writeln!(out, "Ran 1 test in {}s", report.total);
    let _ = writeln!(out, "{}", report.verdict.as_str());
    out
}

fn render_xml(report: &RunReport) -> String {
    let mut out = String::from("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        out,
        "<testsuite name=\"{}\" app=\"{}\" tests=\"{}\" failures=\"{}\" skipped=\"{}\" time=\"{}\" verdict=\"{}\">",
        xml_escape(&report.test_name),
        xml_escape(&report.app_label),
        report.step_results.len(),
        report.count(StepStatus::Failed),
        report.count(StepStatus::Skipped),
        report.total,
        report.verdict.as_str()
    );
    for step in &report.step_results {
        let _ = writeln!(
            out,
            "  <testcase name=\"{}\" status=\"{}\" duration=\"{}\" page=\"{}\" message=\"{}\"/>",
            xml_escape(&step.keyword),
            step.status.as_str(),
            step.duration,
            xml_escape(&step.page),
            xml_escape(&step.message)
        );
    }
    out.push_str("</testsuite>\n");
    out
}
