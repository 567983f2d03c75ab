//! Dynamic-programming engines over the composition box (a1, a2, a3).
//!
//! Three engines share the same decomposition of W(a1,a2,a3) by last
//! letter:
//!   * `inv_poly_recurrence` - the inv generating function,
//!     f = q^{a2+a3} f(a1-1,..) + q^{a3} f(..,a2-1,..) + f(..,a3-1).
//!   * `f_catalytic` - the exact 4-variable recurrence with the catalytic
//!     pair-count variables,
//!     F = t21^{a2} s32[F(a1-1,..)] + t32^{a3} s13[F(..,a2-1,..)]
//!       + t13^{a1} s21[F(..,a3-1)], where s_v is t_v -> q*t_v.
//!   * `h_truncated` - the same recurrence in shifted coordinates
//!     (p,x,y,z) with everything truncated at total degree r, which is what
//!     makes high moments reachable.
//!
//! Base state (0,0,0) -> 1 (the empty word); negative indices contribute 0.
//! The box is swept in layers of constant a1 with only two layers resident.

use std::fs;
use std::path::Path;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{CatVar, CatalyticPoly, ShiftVar, TruncSeries, UniPoly};
use crate::error::{Error, Result};
use crate::stats::Composition;

/// inv generating function of W(a1,a2,a3) by the three-term recurrence.
pub fn inv_poly_recurrence(a1: u64, a2: u64, a3: u64) -> UniPoly {
    let (n1, n2, n3) = (a1 as usize, a2 as usize, a3 as usize);
    let mut table: Vec<Vec<Vec<UniPoly>>> =
        vec![vec![vec![UniPoly::zero(); n3 + 1]; n2 + 1]; n1 + 1];
    for i in 0..=n1 {
        for j in 0..=n2 {
            for k in 0..=n3 {
                if i == 0 && j == 0 && k == 0 {
                    table[i][j][k] = UniPoly::one();
                    continue;
                }
                let mut acc = UniPoly::zero();
                if i > 0 {
                    acc.add_assign(&table[i - 1][j][k].shift((j + k) as u64));
                }
                if j > 0 {
                    acc.add_assign(&table[i][j - 1][k].shift(k as u64));
                }
                if k > 0 {
                    acc.add_assign(&table[i][j][k - 1]);
                }
                table[i][j][k] = acc;
            }
        }
    }
    table[n1][n2][n3].clone()
}

/// The exact catalytic polynomial **F**(a1,a2,a3; q, t32, t13, t21),
/// computed by the functional recurrence with a two-layer sweep in a1.
pub fn f_catalytic(a1: u64, a2: u64, a3: u64) -> CatalyticPoly {
    let (n1, n2, n3) = (a1 as usize, a2 as usize, a3 as usize);
    let mut prev: Vec<Vec<CatalyticPoly>> = Vec::new();
    let mut cur: Vec<Vec<CatalyticPoly>> = Vec::new();
    for i in 0..=n1 {
        cur = vec![vec![CatalyticPoly::zero(); n3 + 1]; n2 + 1];
        for j in 0..=n2 {
            for k in 0..=n3 {
                if i == 0 && j == 0 && k == 0 {
                    cur[j][k] = CatalyticPoly::one();
                    continue;
                }
                let mut acc = CatalyticPoly::zero();
                if i > 0 {
                    acc.add_assign(&prev[j][k].sigma(CatVar::T32).mul_t_pow(CatVar::T21, j as u32));
                }
                if j > 0 {
                    acc.add_assign(&cur[j - 1][k].sigma(CatVar::T13).mul_t_pow(CatVar::T32, k as u32));
                }
                if k > 0 {
                    acc.add_assign(&cur[j][k - 1].sigma(CatVar::T21).mul_t_pow(CatVar::T13, i as u32));
                }
                cur[j][k] = acc;
            }
        }
        prev = std::mem::take(&mut cur);
    }
    let _ = cur;
    prev[n2][n3].clone()
}

/// Univariate gep distribution of W(a1,a2,a3): the catalytic polynomial
/// specialized at t32 = t13 = t21 = 1.
pub fn gepner_poly_words_fast(a: &Composition) -> Result<UniPoly> {
    if a.0.len() != 3 {
        return Err(Error::Domain {
            what: "catalytic recurrence",
            needed: "a composition with exactly 3 parts",
            got: format!("{} parts", a.0.len()),
        });
    }
    Ok(f_catalytic(a.0[0], a.0[1], a.0[2]).specialize_t_one())
}

/// One state update of the truncated recurrence. `left`, `down` are the
/// same-layer predecessors (a2-1 and a3-1), `below` is the previous a1
/// layer. Substitution first, then the binomial prefactor, matching the
/// operator order of the functional equation.
fn h_state(
    a: (usize, usize, usize),
    below: Option<&TruncSeries>,
    left: Option<&TruncSeries>,
    down: Option<&TruncSeries>,
    order: usize,
) -> TruncSeries {
    let (a1, a2, a3) = a;
    let mut acc = TruncSeries::zero(order);
    if let Some(s) = below {
        acc.add_assign(&s.substitute(ShiftVar::X).mul_binomial(ShiftVar::Z, a2 as u64));
    }
    if let Some(s) = left {
        acc.add_assign(&s.substitute(ShiftVar::Y).mul_binomial(ShiftVar::X, a3 as u64));
    }
    if let Some(s) = down {
        acc.add_assign(&s.substitute(ShiftVar::Z).mul_binomial(ShiftVar::Y, a1 as u64));
    }
    acc
}

#[derive(Serialize, Deserialize)]
struct CheckpointFile {
    schema_version: u32,
    order: usize,
    n_max: usize,
    /// a1 index of the stored (completed) layer.
    layer_a1: usize,
    /// Diagonal restrictions recorded so far, index n = 0..=layer_a1.
    diagonals: Vec<Vec<String>>,
    /// Row-major (a2, a3) layer; each state is a list of (exponents, coeff).
    layer: Vec<Vec<([u8; 4], String)>>,
}

const CHECKPOINT_VERSION: u32 = 1;
const CHECKPOINT_NAME: &str = "h_layers.json";

fn save_checkpoint(
    dir: &Path,
    order: usize,
    n_max: usize,
    layer_a1: usize,
    diagonals: &[Vec<BigInt>],
    layer: &[TruncSeries],
) -> Result<()> {
    let file = CheckpointFile {
        schema_version: CHECKPOINT_VERSION,
        order,
        n_max,
        layer_a1,
        diagonals: diagonals
            .iter()
            .map(|cs| cs.iter().map(|c| c.to_string()).collect())
            .collect(),
        layer: layer
            .iter()
            .map(|s| s.terms().map(|(e, c)| (e, c.to_string())).collect())
            .collect(),
    };
    fs::create_dir_all(dir)?;
    let tmp = dir.join(format!("{CHECKPOINT_NAME}.tmp"));
    fs::write(&tmp, serde_json::to_vec(&file).expect("checkpoint serializes"))?;
    fs::rename(&tmp, dir.join(CHECKPOINT_NAME))?;
    Ok(())
}

fn load_checkpoint(dir: &Path, order: usize, n_max: usize) -> Result<Option<CheckpointFile>> {
    let path = dir.join(CHECKPOINT_NAME);
    if !path.exists() {
        return Ok(None);
    }
    let data = fs::read(&path)?;
    let file: CheckpointFile = serde_json::from_slice(&data)
        .map_err(|e| Error::Checkpoint(format!("unreadable {}: {e}", path.display())))?;
    if file.schema_version != CHECKPOINT_VERSION {
        return Err(Error::Checkpoint(format!(
            "version {} (expected {CHECKPOINT_VERSION})",
            file.schema_version
        )));
    }
    if file.order != order || file.n_max < file.layer_a1 || file.layer_a1 > n_max {
        // parameters changed; a stale checkpoint is ignored, not an error
        return Ok(None);
    }
    Ok(Some(file))
}

fn parse_bigint(s: &str) -> Result<BigInt> {
    s.parse()
        .map_err(|_| Error::Checkpoint(format!("bad integer {s:?}")))
}

/// Run the truncated recurrence over the box [0..n_max]^3 at order `r` and
/// return, for each n <= n_max, the restriction x = y = z = 0 at the
/// diagonal state (n,n,n): the coefficients c_0..c_r with
/// c_j = sum_{w in W(n,n,n)} C(gep(w), j).
///
/// `checkpoint_dir`, when set, persists each completed a1 layer so an
/// interrupted sweep resumes instead of restarting.
pub fn h_truncated(n_max: u64, r: u64, checkpoint_dir: Option<&Path>) -> Result<Vec<Vec<BigInt>>> {
    if r < 2 {
        return Err(Error::Domain {
            what: "truncation order",
            needed: "r >= 2 (the variance needs p^2)",
            got: r.to_string(),
        });
    }
    let order = r as usize;
    let n = n_max as usize;
    let side = n + 1;
    let idx = |a2: usize, a3: usize| a2 * side + a3;

    let mut diagonals: Vec<Vec<BigInt>> = Vec::with_capacity(side);
    let mut prev: Vec<TruncSeries> = Vec::new();
    let mut start_a1 = 0usize;

    if let Some(dir) = checkpoint_dir {
        if let Some(file) = load_checkpoint(dir, order, n)? {
            let mut layer = Vec::with_capacity(side * side);
            for state in &file.layer {
                let mut s = TruncSeries::zero(order);
                for (e, c) in state {
                    s.add_term(*e, parse_bigint(c)?);
                }
                layer.push(s);
            }
            if layer.len() == side * side && file.diagonals.len() == file.layer_a1 + 1 {
                diagonals = file
                    .diagonals
                    .iter()
                    .map(|cs| cs.iter().map(|c| parse_bigint(c)).collect::<Result<_>>())
                    .collect::<Result<_>>()?;
                prev = layer;
                start_a1 = file.layer_a1 + 1;
            }
        }
    }

    for a1 in start_a1..side {
        let mut cur: Vec<TruncSeries> = vec![TruncSeries::zero(order); side * side];
        // states on one anti-diagonal a2+a3 = d are independent
        for d in 0..=2 * n {
            let lo = d.saturating_sub(n);
            let hi = d.min(n);
            let results: Vec<(usize, TruncSeries)> = (lo..hi + 1)
                .into_par_iter()
                .map(|a2| {
                    let a3 = d - a2;
                    let s = if a1 == 0 && a2 == 0 && a3 == 0 {
                        TruncSeries::one(order)
                    } else {
                        h_state(
                            (a1, a2, a3),
                            (a1 > 0).then(|| &prev[idx(a2, a3)]),
                            (a2 > 0).then(|| &cur[idx(a2 - 1, a3)]),
                            (a3 > 0).then(|| &cur[idx(a2, a3 - 1)]),
                            order,
                        )
                    };
                    (a2, s)
                })
                .collect();
            for (a2, s) in results {
                cur[idx(a2, d - a2)] = s;
            }
        }
        diagonals.push(cur[idx(a1, a1)].restrict_p());
        if let Some(dir) = checkpoint_dir {
            save_checkpoint(dir, order, n, a1, &diagonals, &cur)?;
        }
        prev = cur;
    }
    Ok(diagonals)
}
