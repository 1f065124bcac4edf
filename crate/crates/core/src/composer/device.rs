use std::collections::HashSet;

use thiserror::Error;

use crate::simulator::ReportFormat;
use crate::text::{expect_line_end, is_inert, parse_quoted};

pub const DEFAULT_SERVER_URL: &str = "http://localhost:4723/wd/hub";
pub const DEFAULT_TEST_NAME: &str = "Untitled";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DeviceConfigError {
    #[error("line {line}: {reason}")]
    Syntax { line: usize, reason: String },
    #[error("device config is missing `{0}`")]
    MissingKey(&'static str),
}

/// Device capabilities filled into a script template.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeviceConfig {
    pub udid: String,
    pub app_package: String,
    pub app_activity: String,
    pub platform_name: String,
    pub server_url: String,
    pub report_directory: String,
    pub report_format: ReportFormat,
    pub test_name: String,
}

impl DeviceConfig {
    /// Key names as they appear in device files and template slots.
    pub const KEYS: [&'static str; 8] = [
        "udid",
        "appPackage",
        "appActivity",
        "platformName",
        "serverUrl",
        "reportDirectory",
        "reportFormat",
        "testName",
    ];

    pub fn get(&self, key: &str) -> Option<&str> {
        Some(match key {
            "udid" => &self.udid,
            "appPackage" => &self.app_package,
            "appActivity" => &self.app_activity,
            "platformName" => &self.platform_name,
            "serverUrl" => &self.server_url,
            "reportDirectory" => &self.report_directory,
            "reportFormat" => self.report_format.as_str(),
            "testName" => &self.test_name,
            _ => return None,
        })
    }

    /// Parses a `key = value` device file. Values may be bare or
    /// double-quoted. `udid`, `appPackage` and `appActivity` are required;
    /// the rest default to android, the local Appium hub, `reports`, xml and
    /// `Untitled`.
    pub fn parse(source: &str) -> Result<Self, DeviceConfigError> {
        let mut config = DeviceConfig {
            udid: String::new(),
            app_package: String::new(),
            app_activity: String::new(),
            platform_name: "android".into(),
            server_url: DEFAULT_SERVER_URL.into(),
            report_directory: "reports".into(),
            report_format: ReportFormat::Xml,
            test_name: DEFAULT_TEST_NAME.into(),
        };
        let mut seen = HashSet::new();
        for (index, raw) in source.lines().enumerate() {
            let line = index + 1;
            let syntax = |reason: String| DeviceConfigError::Syntax { line, reason };
            let text = raw.trim();
            if text.is_empty() || text.starts_with('#') {
                continue;
            }
            let (key, value) = text.split_once('=').ok_or_else(|| syntax("expected `key = value`".into()))?;
            let key = key.trim();
            let value = value.trim();
            let value = if value.starts_with('"') {
                let (v, rest) = parse_quoted(value).map_err(syntax)?;
                expect_line_end(rest).map_err(syntax)?;
                v
            } else {
                value.split('#').next().unwrap_or_default().trim().to_string()
            };
            if !DeviceConfig::KEYS.contains(&key) {
                return Err(syntax(format!("unknown device key `{key}`")));
            }
            if !seen.insert(key.to_string()) {
                return Err(syntax(format!("`{key}` given twice")));
            }
            if value.is_empty() {
                return Err(syntax(format!("`{key}` is empty")));
            }
            if !is_inert(&value) || value.contains(['\'', '\\']) {
                return Err(syntax(format!(
                    "`{key}` may not contain quotes, backslashes or `${{`, start with `{{` or end with `$`"
                )));
            }
            match key {
                "udid" => config.udid = value,
                "appPackage" => config.app_package = value,
                "appActivity" => config.app_activity = value,
                "platformName" => config.platform_name = value,
                "serverUrl" => config.server_url = value,
                "reportDirectory" => config.report_directory = value,
                "reportFormat" => config.report_format = value.parse().map_err(syntax)?,
                _ => config.test_name = value,
            }
        }
        for key in ["udid", "appPackage", "appActivity"] {
            if !seen.contains(key) {
                return Err(DeviceConfigError::MissingKey(key));
            }
        }
        Ok(config)
    }
}
