//! Text / CSV / JSON renderings of moment tables and fitted polynomials.

use num_traits::Zero;
use serde_json::{json, Map, Value};

use gepner::algebra::RatPoly;
use gepner::envelope::rat_string;
use gepner::moments::MomentTable;

/// The standardized moment as a string, or "undefined" when the variance
/// vanishes (tiny sizes). Undefined cells are data, not errors.
fn std_cell(t: &MomentTable, r: usize) -> String {
    match t.standardized(r) {
        Ok(v) => rat_string(&v),
        Err(_) => "undefined".to_string(),
    }
}

pub fn table_text(t: &MomentTable, r_max: u64) -> String {
    let mut lines = vec![format!(
        "{} n={} (population {})",
        t.family.name(),
        t.n,
        t.population
    )];
    lines.push(format!("  mean  {}", rat_string(t.mean())));
    for r in 2..=r_max as usize {
        lines.push(format!("  m_{r}   {}", rat_string(t.central(r))));
    }
    for r in (4..=r_max as usize).step_by(2) {
        lines.push(format!("  s_{r}   {}", std_cell(t, r)));
    }
    lines.join("\n")
}

pub fn tables_csv(tables: &[MomentTable], r_max: u64) -> String {
    let mut out = String::from("family,n,r,kind,value\n");
    for t in tables {
        let fam = t.family.name();
        for r in 1..=r_max as usize {
            out.push_str(&format!("{fam},{},{r},raw,{}\n", t.n, rat_string(t.raw(r))));
        }
        for r in 2..=r_max as usize {
            out.push_str(&format!(
                "{fam},{},{r},central,{}\n",
                t.n,
                rat_string(t.central(r))
            ));
        }
        for r in (4..=r_max as usize).step_by(2) {
            out.push_str(&format!("{fam},{},{r},standardized,{}\n", t.n, std_cell(t, r)));
        }
    }
    out
}

pub fn table_json(t: &MomentTable, r_max: u64) -> Value {
    let mut central = Map::new();
    for r in 2..=r_max as usize {
        central.insert(r.to_string(), Value::String(rat_string(t.central(r))));
    }
    let mut standardized = Map::new();
    for r in (4..=r_max as usize).step_by(2) {
        standardized.insert(r.to_string(), Value::String(std_cell(t, r)));
    }
    json!({
        "central": Value::Object(central),
        "family": t.family.name(),
        "mean": rat_string(t.mean()),
        "n": t.n.to_string(),
        "population": t.population.to_string(),
        "standardized": Value::Object(standardized),
    })
}

/// Nonzero coefficients keyed by exponent, exact.
pub fn ratpoly_json(p: &RatPoly) -> Value {
    let mut map = Map::new();
    for (e, c) in p.coeffs().iter().enumerate() {
        if !c.is_zero() {
            map.insert(e.to_string(), Value::String(rat_string(c)));
        }
    }
    Value::Object(map)
}
