//! Report types shared by the verification batteries and the CLI. The JSON
//! shape is stable: {tool_version, task, n, maxdeg, complete_upto, items:
//! [{name, paper_anchor, status, residual_terms, seconds}], overall,
//! timestamp}.

use serde::Serialize;
use std::fmt;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Serialize, Clone, Copy, PartialEq, Eq, Debug)]
#[serde(rename_all = "lowercase")]
pub enum ItemStatus {
    Verified,
    Inconclusive,
}

impl fmt::Display for ItemStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ItemStatus::Verified => write!(f, "verified"),
            ItemStatus::Inconclusive => write!(f, "inconclusive"),
        }
    }
}

#[derive(Serialize, Clone, Debug)]
pub struct VerifyItem {
    pub name: String,
    /// Stable fixture id for tracing a failure back to its construction site.
    pub paper_anchor: String,
    pub status: ItemStatus,
    pub residual_terms: usize,
    pub seconds: f64,
}

#[derive(Serialize, Clone, Debug)]
pub struct VerifyReport {
    pub tool_version: String,
    pub task: String,
    pub n: u8,
    pub maxdeg: usize,
    pub complete_upto: usize,
    pub items: Vec<VerifyItem>,
    pub overall: ItemStatus,
    pub timestamp: String,
}

impl VerifyReport {
    pub fn new(task: impl Into<String>, n: u8, maxdeg: usize, complete_upto: usize) -> Self {
        VerifyReport {
            tool_version: TOOL_VERSION.to_string(),
            task: task.into(),
            n,
            maxdeg,
            complete_upto,
            items: Vec::new(),
            overall: ItemStatus::Verified,
            timestamp: String::new(),
        }
    }

    pub fn push(
        &mut self,
        name: impl Into<String>,
        anchor: impl Into<String>,
        status: ItemStatus,
        residual_terms: usize,
        seconds: f64,
    ) {
        self.items.push(VerifyItem {
            name: name.into(),
            paper_anchor: anchor.into(),
            status,
            residual_terms,
            seconds,
        });
    }

    /// Overall = verified iff every item verified.
    pub fn finalize(mut self) -> Self {
        self.overall = if self
            .items
            .iter()
            .all(|i| i.status == ItemStatus::Verified)
        {
            ItemStatus::Verified
        } else {
            ItemStatus::Inconclusive
        };
        self
    }

    /// Overall with grouped exceptions: items whose name starts with one of
    /// the group prefixes are pooled by their bracketed suffix, and a pool
    /// counts as verified when at least one member is. All other items must
    /// verify individually.
    pub fn finalize_grouped(mut self, group_prefixes: &[&str]) -> Self {
        use std::collections::BTreeMap;
        let mut ok = true;
        let mut pools: BTreeMap<String, bool> = BTreeMap::new();
        for item in &self.items {
            let grouped = group_prefixes.iter().find(|p| {
                item.name.starts_with(&format!("{}[", p))
            });
            match grouped {
                Some(_) => {
                    let key = item
                        .name
                        .split_once('[')
                        .map(|(_, rest)| rest.to_string())
                        .unwrap_or_default();
                    let e = pools.entry(key).or_insert(false);
                    *e = *e || item.status == ItemStatus::Verified;
                }
                None => ok = ok && item.status == ItemStatus::Verified,
            }
        }
        ok = ok && pools.values().all(|v| *v);
        self.overall = if ok {
            ItemStatus::Verified
        } else {
            ItemStatus::Inconclusive
        };
        self
    }

    pub fn merge(mut self, other: VerifyReport) -> Self {
        self.items.extend(other.items);
        self.overall = if self.overall == ItemStatus::Verified
            && other.overall == ItemStatus::Verified
        {
            ItemStatus::Verified
        } else {
            ItemStatus::Inconclusive
        };
        self
    }

    /// Zero the per-item timings (deterministic report bytes).
    pub fn strip_timings(mut self) -> Self {
        for item in &mut self.items {
            item.seconds = 0.0;
        }
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "task {} (n={}, maxdeg={}, complete_upto={})\n",
            self.task, self.n, self.maxdeg, self.complete_upto
        ));
        for item in &self.items {
            out.push_str(&format!(
                "  {:<14} {}  [{}]{}\n",
                item.status.to_string(),
                item.name,
                item.paper_anchor,
                if item.residual_terms > 0 {
                    format!("  residual {} terms", item.residual_terms)
                } else {
                    String::new()
                }
            ));
        }
        out.push_str(&format!("overall: {}\n", self.overall));
        out
    }
}
