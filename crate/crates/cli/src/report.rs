use crate::Format;
use serde_json::Value;

/// Output of one command: text lines, the same content as JSON, and
/// whether every check passed.
pub struct Report {
    pub lines: Vec<String>,
    pub json: Value,
    pub passed: bool,
}

impl Report {
    pub fn ok(lines: Vec<String>, json: Value) -> Report {
        Report {
            lines,
            json,
            passed: true,
        }
    }

    pub fn check(lines: Vec<String>, json: Value, passed: bool) -> Report {
        Report {
            lines,
            json,
            passed,
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => {
                let mut s = self.lines.join("\n");
                s.push('\n');
                s
            }
            Format::Json => {
                let mut s =
                    serde_json::to_string_pretty(&self.json).expect("json values serialize");
                s.push('\n');
                s
            }
        }
    }
}
