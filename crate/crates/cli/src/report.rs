use std::fmt::Display;
use std::time::Instant;

use sha2::{Digest, Sha256};

use plane_cycles::ColoredPointSet;

/// `key: value` lines printed once the command finishes.
pub struct Report {
    started: Instant,
    lines: Vec<(String, String)>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        let mut r = Report { started: Instant::now(), lines: Vec::new() };
        r.field("command", command);
        r
    }

    pub fn field(&mut self, key: &str, value: impl Display) {
        self.lines.push((key.to_string(), value.to_string()));
    }

    pub fn instance(&mut self, ps: &ColoredPointSet) {
        self.field("instance", digest(ps));
        self.field("points", ps.len());
        self.field("colors", ps.color_count());
    }

    pub fn render(&self, prefix: &str) -> String {
        let mut out = String::new();
        for (k, v) in &self.lines {
            out.push_str(&format!("{prefix}{k}: {v}\n"));
        }
        out.push_str(&format!("{prefix}wall_ms: {:.3}\n", self.started.elapsed().as_secs_f64() * 1e3));
        out
    }
}

/// SHA-256 of the canonical text form, hex encoded.
pub fn digest(ps: &ColoredPointSet) -> String {
    hex::encode(Sha256::digest(ps.to_text().as_bytes()))
}

pub fn indices(v: &[usize]) -> String {
    v.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(" ")
}
