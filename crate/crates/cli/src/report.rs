//! Report structures shared by all subcommands. The JSON schema is stable:
//! `{suite, config{digits, terms, tol}, note?, items[...]}` with the item
//! fields below; identical inputs produce identical output except for the
//! `runtime_ms` fields.

use serde::Serialize;

use eulerium_core::EvalConfig;

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub suite: String,
    pub config: ConfigOut,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    pub items: Vec<Item>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConfigOut {
    pub digits: u32,
    pub terms: u64,
    pub tol: f64,
}

impl From<&EvalConfig> for ConfigOut {
    fn from(cfg: &EvalConfig) -> Self {
        ConfigOut { digits: cfg.digits, terms: cfg.max_terms, tol: cfg.tol }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Item {
    pub name: String,
    /// Left-hand value (decimal string at working precision).
    pub lhs: String,
    /// Right-hand value, when the item verifies an identity.
    pub rhs: Option<String>,
    pub abs_err: String,
    pub digits: u32,
    pub terms_used: u64,
    pub tol: f64,
    pub pass: bool,
    pub runtime_ms: u64,
}

impl Report {
    pub fn all_pass(&self) -> bool {
        self.items.iter().all(|i| i.pass)
    }

    pub fn print_human(&self) {
        println!("suite: {}", self.suite);
        println!(
            "config: digits={} terms={} tol={:e}",
            self.config.digits, self.config.terms, self.config.tol
        );
        if let Some(note) = &self.note {
            println!("note: {note}");
        }
        for item in &self.items {
            let status = if item.pass { "PASS" } else { "FAIL" };
            match &item.rhs {
                Some(rhs) => println!(
                    "{status} {:<24} lhs={} rhs={} abs_err={} ({} terms, {} ms)",
                    item.name, item.lhs, rhs, item.abs_err, item.terms_used, item.runtime_ms
                ),
                None => println!(
                    "{status} {:<24} value={} err={} ({} terms, {} ms)",
                    item.name, item.lhs, item.abs_err, item.terms_used, item.runtime_ms
                ),
            }
        }
        let passed = self.items.iter().filter(|i| i.pass).count();
        println!("{passed}/{} pass", self.items.len());
    }

    pub fn print_json(&self) {
        println!("{}", serde_json::to_string_pretty(self).expect("report serializes"));
    }
}
