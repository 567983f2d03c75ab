use anyhow::{anyhow, bail, Context, Result};
use serde_json::{json, Map, Value};
use std::collections::BTreeMap;

use gepner::algebra::numbers::Rat;
use gepner::algebra::gaussian_multinomial;
use gepner::distributions::{classify, Candidate, Verdict};
use gepner::envelope::rat_string;
use gepner::enumerate::{self, StatKind};
use gepner::moments::{
    self, Family, MomentKind, MomentTable, words_moment_tables, Limit,
};
use gepner::parse::{parse_counts, parse_range, parse_word};
use gepner::recurrence;
use gepner::stats::{self, Composition, Word};

use crate::render;
use crate::{
    check_trunc_caps, checkpoint_dir, CompareArg, EngineArg, FamilyArg, FitCmd, KindArg,
    LimitsCmd, MomentsCmd, Output, PolyCmd, StatArg, StatCmd, SuiteArg, VerifyCmd,
};

pub fn stat(cmd: &StatCmd) -> Result<Output> {
    let word = parse_word(&cmd.word)?;
    let inputs = json!({ "stat": stat_name(cmd.stat), "word": cmd.word });
    let single = |v: u64, key: &str| {
        Ok(Output::new(v.to_string(), inputs.clone(), json!({ key: v.to_string() })))
    };
    match cmd.stat {
        StatArg::Gep => single(stats::gep(&word), "gep"),
        StatArg::Inv => single(stats::inv(&word), "inv"),
        StatArg::Maj => single(stats::maj(&word), "maj"),
        StatArg::Pairs => {
            let pc = stats::pair_counts(&word)?;
            let text = format!("c32 = {}\nc13 = {}\nc21 = {}", pc.c32, pc.c13, pc.c21);
            let result = json!({
                "c13": pc.c13.to_string(),
                "c21": pc.c21.to_string(),
                "c32": pc.c32.to_string(),
            });
            Ok(Output::new(text, inputs, result))
        }
        StatArg::All => {
            let (g, i, m) = (stats::gep(&word), stats::inv(&word), stats::maj(&word));
            let text = format!("gep = {g}\ninv = {i}\nmaj = {m}");
            let result = json!({
                "gep": g.to_string(),
                "inv": i.to_string(),
                "maj": m.to_string(),
            });
            Ok(Output::new(text, inputs, result))
        }
    }
}

fn stat_name(s: StatArg) -> &'static str {
    match s {
        StatArg::Gep => "gep",
        StatArg::Inv => "inv",
        StatArg::Maj => "maj",
        StatArg::Pairs => "pairs",
        StatArg::All => "all",
    }
}

fn stat_kind(s: StatArg) -> Result<StatKind> {
    match s {
        StatArg::Gep => Ok(StatKind::Gep),
        StatArg::Inv => Ok(StatKind::Inv),
        StatArg::Maj => Ok(StatKind::Maj),
        _ => bail!("`poly` needs a single statistic (gep, inv or maj)"),
    }
}

fn word_counts(cmd: &PolyCmd) -> Result<Composition> {
    match (&cmd.counts, cmd.n) {
        (Some(c), None) => parse_counts(c).map_err(Into::into),
        (None, Some(n)) => Ok(Composition(vec![n, n, n])),
        _ => bail!("words need exactly one of --counts or --n"),
    }
}

pub fn poly(cmd: &PolyCmd, unsafe_limits: bool) -> Result<Output> {
    let stat = stat_kind(cmd.stat)?;
    let (p, inputs) = match cmd.family {
        FamilyArg::Perms => {
            let n = cmd.n.ok_or_else(|| anyhow!("perms need --n"))?;
            if cmd.counts.is_some() {
                bail!("--counts only applies to words");
            }
            let p = match (cmd.engine, stat) {
                (EngineArg::Brute, StatKind::Gep) => enumerate::gepner_poly_perm(n, unsafe_limits)?,
                (EngineArg::Brute, _) => {
                    // permutations of 1..n are the words with all counts 1
                    enumerate::stat_poly_words(&Composition(vec![1; n as usize]), stat, unsafe_limits)?
                }
                (EngineArg::Recurrence, _) => {
                    bail!("no recurrence engine for perms; use --engine brute")
                }
            };
            let inputs = json!({
                "engine": engine_name(cmd.engine),
                "family": "perms",
                "n": n.to_string(),
                "stat": stat_name(cmd.stat),
            });
            (p, inputs)
        }
        FamilyArg::Words => {
            let a = word_counts(cmd)?;
            let p = match (cmd.engine, stat) {
                (EngineArg::Brute, _) => enumerate::stat_poly_words(&a, stat, unsafe_limits)?,
                (EngineArg::Recurrence, StatKind::Gep) => recurrence::gepner_poly_words_fast(&a)?,
                (EngineArg::Recurrence, StatKind::Inv) => {
                    if a.0.len() != 3 {
                        bail!("the inv recurrence needs exactly three counts");
                    }
                    recurrence::inv_poly_recurrence(a.0[0], a.0[1], a.0[2])
                }
                (EngineArg::Recurrence, StatKind::Maj) => {
                    bail!("no recurrence engine for maj; use --engine brute")
                }
            };
            let counts_str = a.0.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
            let inputs = json!({
                "counts": counts_str,
                "engine": engine_name(cmd.engine),
                "family": "words",
                "stat": stat_name(cmd.stat),
            });
            (p, inputs)
        }
    };
    let text = p.to_string();
    let result = json!({ "poly": text });
    Ok(Output::new(text, inputs, result))
}

fn engine_name(e: EngineArg) -> &'static str {
    match e {
        EngineArg::Brute => "brute",
        EngineArg::Recurrence => "recurrence",
    }
}

fn family(f: FamilyArg) -> Family {
    match f {
        FamilyArg::Perms => Family::Perms,
        FamilyArg::Words => Family::Words,
    }
}

fn moment_tables(
    fam: FamilyArg,
    sizes: &[u64],
    r: u64,
    engine: Option<EngineArg>,
    unsafe_limits: bool,
) -> Result<Vec<MomentTable>> {
    let max_size = *sizes.last().unwrap();
    match (fam, engine) {
        (FamilyArg::Words, None | Some(EngineArg::Recurrence)) => {
            check_trunc_caps(max_size, r, unsafe_limits)?;
            let all = words_moment_tables(max_size, r, checkpoint_dir().as_deref())?;
            Ok(all
                .into_iter()
                .filter(|t| sizes.contains(&t.n))
                .collect())
        }
        (FamilyArg::Words, Some(EngineArg::Brute)) => sizes
            .iter()
            .map(|&n| moments::words_moment_table_brute(n, r, unsafe_limits).map_err(Into::into))
            .collect(),
        (FamilyArg::Perms, None | Some(EngineArg::Brute)) => sizes
            .iter()
            .map(|&n| moments::perms_moment_table(n, r, unsafe_limits).map_err(Into::into))
            .collect(),
        (FamilyArg::Perms, Some(EngineArg::Recurrence)) => {
            bail!("no recurrence engine for perms; use --engine brute")
        }
    }
}

pub fn moments(cmd: &MomentsCmd, unsafe_limits: bool) -> Result<Output> {
    if cmd.max_moment < 2 {
        bail!("--max-moment must be at least 2");
    }
    let sizes: Vec<u64> = match (cmd.n, cmd.n_max) {
        (Some(n), None) => vec![n],
        (None, Some(m)) if m >= 1 => (1..=m).collect(),
        (None, Some(_)) => bail!("--n-max must be at least 1"),
        _ => bail!("need exactly one of --n or --n-max"),
    };
    if sizes[0] == 0 {
        bail!("--n must be at least 1");
    }
    let tables = moment_tables(cmd.family, &sizes, cmd.max_moment, cmd.engine, unsafe_limits)?;

    let text = tables
        .iter()
        .map(|t| render::table_text(t, cmd.max_moment))
        .collect::<Vec<_>>()
        .join("\n\n");
    let csv = render::tables_csv(&tables, cmd.max_moment);
    let result = json!({
        "tables": tables
            .iter()
            .map(|t| render::table_json(t, cmd.max_moment))
            .collect::<Vec<_>>(),
    });
    let inputs = json!({
        "engine": cmd.engine.map_or("default", engine_name),
        "family": family(cmd.family).name(),
        "max_moment": cmd.max_moment.to_string(),
        "sizes": format!("{}..{}", sizes[0], sizes[sizes.len() - 1]),
    });
    let mut out = Output::new(text, inputs, result);
    out.csv = Some(csv);
    Ok(out)
}

fn fit_kind(kind: KindArg, moment: u64) -> Result<MomentKind> {
    match kind {
        KindArg::Mean => Ok(MomentKind::Mean),
        KindArg::Central => {
            if moment < 2 {
                bail!("--moment must be at least 2 for central fits");
            }
            Ok(MomentKind::Central(moment))
        }
    }
}

pub fn fit(cmd: &FitCmd, unsafe_limits: bool) -> Result<Output> {
    let (lo, hi) = parse_range(&cmd.n_range)?;
    let kind = fit_kind(cmd.kind, cmd.moment)?;
    let r = cmd.moment.max(2);
    let sizes: Vec<u64> = (lo..=hi).collect();
    let tables = moment_tables(cmd.family, &sizes, r, None, unsafe_limits)?;
    let poly = moments::fit_moment_polynomial(&tables, kind, cmd.guards)
        .context("fit failed")?;

    let label = match kind {
        MomentKind::Mean => "mean".to_string(),
        MomentKind::Central(r) => format!("m_{r}"),
    };
    let guard_lo = hi - cmd.guards as u64 + 1;
    let guard_note = match cmd.guards {
        0 => "no guard points".to_string(),
        1 => format!("guard point n = {hi} consistent"),
        _ => format!("guard points n = {guard_lo}..{hi} consistent"),
    };
    let text = format!("{label}(n) = {poly}\n{guard_note}");
    let result = json!({
        "coefficients": render::ratpoly_json(&poly),
        "degree": poly.degree().map_or("0".into(), |d| d.to_string()),
        "guards": guard_note,
        "kind": label,
        "polynomial": poly.to_string(),
    });
    let inputs = json!({
        "family": family(cmd.family).name(),
        "guards": cmd.guards.to_string(),
        "kind": label,
        "moment": cmd.moment.to_string(),
        "n_range": format!("{lo}..{hi}"),
    });
    Ok(Output::new(text, inputs, result))
}

pub fn limits(cmd: &LimitsCmd, unsafe_limits: bool) -> Result<Output> {
    let r_max = cmd.max_moment;
    if r_max < 4 || r_max % 2 == 1 {
        bail!("--max-moment must be an even order >= 4");
    }
    // Enough consecutive sizes to pin down degree 2r plus guard points.
    let (sizes, guards): (Vec<u64>, usize) = match cmd.family {
        FamilyArg::Words => ((1..=(2 * r_max + 3)).collect(), 2),
        FamilyArg::Perms => {
            let cap = if unsafe_limits { 2 * r_max + 3 } else { 10 };
            let needed = 2 * r_max as usize + 2; // degree bound + 1 + one guard
            if (cap as usize) < needed {
                bail!(
                    "perms only provide {cap} sizes, not enough to fit a degree-{} moment; \
                     lower --max-moment or pass --unsafe-limits",
                    2 * r_max
                );
            }
            let g = std::cmp::min(2, cap as usize - 2 * r_max as usize - 1);
            ((1..=cap).collect(), g)
        }
    };
    let tables = moment_tables(cmd.family, &sizes, r_max, None, unsafe_limits)?;

    let m2 = moments::fit_moment_polynomial(&tables, MomentKind::Central(2), guards)?;
    let mut kappas: BTreeMap<u64, Rat> = BTreeMap::new();
    let mut divergent: Vec<u64> = Vec::new();
    for r in (4..=r_max).step_by(2) {
        let g = std::cmp::min(guards, tables.len().saturating_sub(2 * r as usize + 1));
        let mr = moments::fit_moment_polynomial(&tables, MomentKind::Central(r), g)?;
        match moments::limit_standardized(&mr, &m2, r)? {
            Limit::Finite(k) => {
                kappas.insert(r, k);
            }
            Limit::Divergent => divergent.push(r),
        }
    }

    let wanted: Vec<Candidate> = cmd
        .compare
        .iter()
        .map(|c| match c {
            CompareArg::Logistic => Candidate::Logistic,
            CompareArg::Normal => Candidate::Normal,
        })
        .collect();
    let classifications: Vec<_> = if divergent.is_empty() {
        classify(&kappas)?
            .into_iter()
            .filter(|c| wanted.contains(&c.candidate))
            .collect()
    } else {
        Vec::new()
    };

    let mut lines: Vec<String> = vec![format!("family: {}", family(cmd.family).name())];
    for (r, k) in &kappas {
        lines.push(format!("kappa_{r} = {}", rat_string(k)));
    }
    for r in &divergent {
        lines.push(format!("kappa_{r} = divergent"));
    }
    for c in &classifications {
        let verdict = match &c.verdict {
            Verdict::MatchesAllTested => "matches all tested orders".to_string(),
            Verdict::RejectedAtOrder(r) => format!("rejected at order {r}"),
        };
        lines.push(format!("{}: {verdict}", c.candidate.name()));
    }
    let text = lines.join("\n");

    let mut kappa_map = Map::new();
    for (r, k) in &kappas {
        kappa_map.insert(r.to_string(), Value::String(rat_string(k)));
    }
    for r in &divergent {
        kappa_map.insert(r.to_string(), Value::String("divergent".into()));
    }
    let verdicts: Vec<Value> = classifications
        .iter()
        .map(|c| {
            json!({
                "candidate": c.candidate.name(),
                "verdict": match &c.verdict {
                    Verdict::MatchesAllTested => "matches-all-tested".to_string(),
                    Verdict::RejectedAtOrder(r) => format!("rejected-at-order-{r}"),
                },
            })
        })
        .collect();
    let result = json!({ "kappas": Value::Object(kappa_map), "verdicts": verdicts });
    let inputs = json!({
        "compare": cmd.compare.iter().map(|c| match c {
            CompareArg::Logistic => "logistic",
            CompareArg::Normal => "normal",
        }).collect::<Vec<_>>(),
        "family": family(cmd.family).name(),
        "max_moment": r_max.to_string(),
    });
    Ok(Output::new(text, inputs, result))
}

pub fn verify(cmd: &VerifyCmd, unsafe_limits: bool) -> Result<Output> {
    let max = cmd.max;
    let mut checked = 0u64;
    let mut failure: Option<String> = None;
    let mut note = |cond: bool, msg: String, failure: &mut Option<String>| {
        checked += 1;
        if !cond && failure.is_none() {
            *failure = Some(msg);
        }
    };

    let suite_name = match cmd.suite {
        SuiteArg::Macmahon => "macmahon",
        SuiteArg::Recurrence => "recurrence",
        SuiteArg::Equidistribution => "equidistribution",
        SuiteArg::Reversal => "reversal",
    };

    match cmd.suite {
        // inv-polynomial == maj-polynomial == q-multinomial == inv recurrence
        SuiteArg::Macmahon => {
            for a1 in 0..=max {
                for a2 in 0..=max {
                    for a3 in 0..=max {
                        let a = Composition(vec![a1, a2, a3]);
                        let inv = enumerate::stat_poly_words(&a, StatKind::Inv, unsafe_limits)?;
                        let maj = enumerate::stat_poly_words(&a, StatKind::Maj, unsafe_limits)?;
                        let gauss = gaussian_multinomial(&a);
                        let rec = recurrence::inv_poly_recurrence(a1, a2, a3);
                        let ok = inv == maj && inv == gauss && inv == rec;
                        note(ok, format!("({a1},{a2},{a3})"), &mut failure);
                    }
                }
            }
        }
        // catalytic gep engine == brute-force gep enumeration
        SuiteArg::Recurrence => {
            for_compositions(max, |a1, a2, a3| {
                let a = Composition(vec![a1, a2, a3]);
                let brute = enumerate::stat_poly_words(&a, StatKind::Gep, unsafe_limits)?;
                let fast = recurrence::gepner_poly_words_fast(&a)?;
                note(brute == fast, format!("({a1},{a2},{a3})"), &mut failure);
                Ok(())
            })?;
        }
        // inv and maj are equidistributed on every multiset
        SuiteArg::Equidistribution => {
            for_compositions(max, |a1, a2, a3| {
                let a = Composition(vec![a1, a2, a3]);
                let inv = enumerate::stat_poly_words(&a, StatKind::Inv, unsafe_limits)?;
                let maj = enumerate::stat_poly_words(&a, StatKind::Maj, unsafe_limits)?;
                note(inv == maj, format!("({a1},{a2},{a3})"), &mut failure);
                Ok(())
            })?;
        }
        // gep(w) + gep(reverse w) = a1*a2*a3 for every {1,2,3}-word
        SuiteArg::Reversal => {
            let mut w: Vec<u32> = Vec::new();
            loop {
                if !w.is_empty() {
                    let word = Word(w.clone());
                    let counts: [u64; 3] =
                        [1, 2, 3].map(|l| w.iter().filter(|&&x| x == l).count() as u64);
                    let expect = counts[0] * counts[1] * counts[2];
                    let got = stats::gep(&word) + stats::gep(&word.reversed());
                    note(got == expect, format!("{w:?}"), &mut failure);
                }
                if !next_word(&mut w, max as usize) {
                    break;
                }
            }
        }
    }

    let (text, failed) = match &failure {
        None => (format!("{suite_name}: {checked} cases, all passed"), false),
        Some(case) => (format!("{suite_name}: FAILED at {case} ({checked} cases run)"), true),
    };
    let result = json!({
        "cases": checked.to_string(),
        "failure": failure.clone().map_or(Value::Null, Value::String),
        "passed": failure.is_none(),
        "suite": suite_name,
    });
    let inputs = json!({ "max": max.to_string(), "suite": suite_name });
    let mut out = Output::new(text, inputs, result);
    out.failed = failed;
    Ok(out)
}

/// All (a1,a2,a3) with a1+a2+a3 <= total.
fn for_compositions<F: FnMut(u64, u64, u64) -> Result<()>>(total: u64, mut f: F) -> Result<()> {
    for a1 in 0..=total {
        for a2 in 0..=total - a1 {
            for a3 in 0..=total - a1 - a2 {
                f(a1, a2, a3)?;
            }
        }
    }
    Ok(())
}

/// Advance to the next {1,2,3}-word of length <= max in enumeration order
/// (lengths increase, lexicographic within a length). Returns false when
/// exhausted.
fn next_word(w: &mut Vec<u32>, max: usize) -> bool {
    for i in (0..w.len()).rev() {
        if w[i] < 3 {
            w[i] += 1;
            return true;
        }
        w[i] = 1;
    }
    if w.len() < max {
        w.push(1);
        for l in w.iter_mut() {
            *l = 1;
        }
        return true;
    }
    false
}
