use std::fs;
use std::path::Path;

use anyhow::Context;
use serde::{Deserialize, Serialize};

use rivalloc::{Customer, SolveReport, Telemetry};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CustomerRecord {
    pub x: f64,
    pub y: f64,
    pub w: f64,
}

/// On-disk instance. `r` is the separation distance R.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub r: f64,
    pub customers: Vec<CustomerRecord>,
}

impl InstanceFile {
    pub fn customers(&self) -> Vec<Customer> {
        self.customers.iter().map(|c| Customer::new(c.x, c.y, c.w)).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultRecord {
    pub centroid: [f64; 2],
    pub weight_loss: f64,
    pub witness_angle: f64,
    pub solver: String,
    pub telemetry: Telemetry,
}

impl From<&SolveReport> for ResultRecord {
    fn from(r: &SolveReport) -> Self {
        Self {
            centroid: [r.centroid.x, r.centroid.y],
            weight_loss: r.weight_loss,
            witness_angle: r.witness_angle,
            solver: r.solver.to_string(),
            telemetry: r.telemetry.clone(),
        }
    }
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

pub fn write_output(path: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
