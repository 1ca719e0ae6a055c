//! Command implementations and report rendering.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::ValueEnum;
use serde::Serialize;
use serde_json::{json, Value};

use hmset::coeffs::{check_coeff_properties, table, table_csv, CoeffReport};
use hmset::families::{build_ekr, build_hm, closed_form, hm_size};
use hmset::multiset::count_k_multisets;
use hmset::search::{
    enumerate_maximal_p_families, maximal_iso_classes, verify_layer_check, verify_main_theorem_on,
    verify_pair_rule, verify_twist, Check, IsoClass, LemmaReport, VerificationReport,
};
use hmset::universe::{build_r, build_u, build_v, build_v_star};
use hmset::{Multiplicity, MultisetFamily, Params, SetFamily, VERSION};

use crate::{FamilyKind, Format, OutputArgs, SearchArgs};

pub enum Outcome {
    Pass,
    Violation,
}

impl Outcome {
    fn from_pass(pass: bool) -> Self {
        if pass {
            Outcome::Pass
        } else {
            Outcome::Violation
        }
    }
}

type CmdResult = Result<Outcome, String>;

fn params(n: usize, k: usize, m: Multiplicity) -> Result<Params, String> {
    Params::new(n, k, m).map_err(|e| e.to_string())
}

impl OutputArgs {
    fn format_or(&self, default: Format) -> Format {
        self.format.unwrap_or(default)
    }

    /// Writes `content` to `--out`, to a file named `default_name` in the
    /// output directory, or to stdout.
    fn emit(&self, default_name: &str, content: &str) -> Result<(), String> {
        let target: Option<PathBuf> = match (&self.out, &self.out_dir) {
            (Some(out), Some(dir)) if out.is_relative() => Some(dir.join(out)),
            (Some(out), _) => Some(out.clone()),
            (None, Some(dir)) => Some(dir.join(default_name)),
            (None, None) => None,
        };
        match target {
            Some(path) => {
                if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
                    fs::create_dir_all(parent)
                        .map_err(|e| format!("cannot create {}: {e}", parent.display()))?;
                }
                fs::write(&path, content)
                    .map_err(|e| format!("cannot write {}: {e}", path.display()))?;
                eprintln!("wrote {}", path.display());
            }
            None => print!("{content}"),
        }
        Ok(())
    }
}

fn extension(format: Format) -> &'static str {
    match format {
        Format::Json => "json",
        Format::Csv => "csv",
        Format::Text => "txt",
    }
}

fn slug(p: &Params) -> String {
    format!("n{}-k{}-m{}", p.n(), p.k(), p.requested_m())
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

/// Serializes `report`, adding `runtime_ms` when timing was requested.
fn json_report<T: Serialize>(report: &T, timing: bool, started: Instant) -> String {
    let mut value = serde_json::to_value(report).expect("reports serialize");
    if timing {
        if let Value::Object(map) = &mut value {
            map.insert(
                "runtime_ms".into(),
                json!(started.elapsed().as_millis() as u64),
            );
        }
    }
    to_json(&value)
}

fn timing_line(search: &SearchArgs, started: Instant) -> String {
    if search.timing {
        format!("runtime_ms {}\n", started.elapsed().as_millis())
    } else {
        String::new()
    }
}

pub fn coeffs(ks: &[usize], m: Multiplicity, n: Option<usize>, output: &OutputArgs) -> CmdResult {
    if ks.is_empty() || ks.contains(&0) {
        return Err("--k needs values of at least 1".into());
    }
    let name_m = m.to_string();
    let Some(n) = n else {
        let format = output.format_or(Format::Csv);
        let body = match format {
            Format::Csv => table_csv(ks, m),
            Format::Json => {
                let rows: Vec<Value> = ks
                    .iter()
                    .map(|&k| {
                        let values: Vec<String> = table(k, m)
                            .values()
                            .iter()
                            .map(ToString::to_string)
                            .collect();
                        json!({ "k": k, "values": values })
                    })
                    .collect();
                to_json(&json!({ "tool_version": VERSION, "m": m, "rows": rows }))
            }
            Format::Text => {
                let csv = table_csv(ks, m);
                let mut out = String::new();
                for line in csv.lines() {
                    let cells: Vec<String> = line.split(',').map(|c| format!("{c:>8}")).collect();
                    out.push_str(cells.join("").trim_start());
                    out.push('\n');
                }
                out
            }
        };
        output.emit(&format!("coeffs-m{name_m}.{}", extension(format)), &body)?;
        return Ok(Outcome::Pass);
    };
    let reports: Vec<CoeffReport> = ks
        .iter()
        .map(|&k| check_coeff_properties(k, m, n))
        .collect();
    let format = output.format_or(Format::Text);
    let body = match format {
        Format::Json => to_json(&json!({ "tool_version": VERSION, "reports": reports })),
        Format::Text => reports.iter().map(ToString::to_string).collect(),
        Format::Csv => {
            let mut out = String::from("k,m,n,property,status\n");
            for r in &reports {
                for prop in &r.properties {
                    let status = serde_json::to_value(&prop.status).expect("serializes");
                    let _ = writeln!(
                        out,
                        "{},{},{},{},{}",
                        r.k,
                        r.m,
                        r.n,
                        prop.name,
                        status["status"].as_str().unwrap_or("?")
                    );
                }
            }
            out
        }
    };
    output.emit(
        &format!("coeff-check-m{name_m}-n{n}.{}", extension(format)),
        &body,
    )?;
    Ok(Outcome::from_pass(reports.iter().all(CoeffReport::passed)))
}

enum Built {
    Multisets(MultisetFamily),
    Sets(SetFamily),
}

fn build(kind: FamilyKind, p: &Params) -> Result<Built, String> {
    let e = |e: hmset::Error| e.to_string();
    Ok(match kind {
        FamilyKind::Ekr => Built::Multisets(build_ekr(p)),
        FamilyKind::Hm => Built::Multisets(build_hm(p).map_err(e)?),
        FamilyKind::U => Built::Sets(build_u(p)),
        FamilyKind::R => Built::Sets(build_r(p).map_err(e)?),
        FamilyKind::V => Built::Sets(build_v(p).map_err(e)?),
        FamilyKind::VStar => Built::Sets(build_v_star(p).map_err(e)?),
    })
}

pub fn construct(
    kind: FamilyKind,
    n: usize,
    k: usize,
    m: Multiplicity,
    count_only: bool,
    output: &OutputArgs,
) -> CmdResult {
    let p = params(n, k, m)?;
    let built = build(kind, &p)?;
    let kind_name = kind
        .to_possible_value()
        .expect("every kind has a name")
        .get_name()
        .to_string();
    let size = match &built {
        Built::Multisets(f) => f.len(),
        Built::Sets(f) => f.len(),
    };
    let format = output.format_or(Format::Text);
    let body = match (format, count_only) {
        (Format::Json, true) => {
            to_json(&json!({ "family": kind_name, "params": p.to_string(), "size": size }))
        }
        (_, true) => format!("{size}\n"),
        (Format::Json, false) => {
            let members: Value = match &built {
                Built::Multisets(f) => f.iter().map(|a| a.multiplicities().to_vec()).collect(),
                Built::Sets(f) => json!(f.to_lists()),
            };
            to_json(&json!({
                "tool_version": VERSION,
                "family": kind_name,
                "params": p.to_string(),
                "size": size,
                "members": members,
            }))
        }
        (_, false) => match &built {
            Built::Multisets(f) => f.to_text(),
            Built::Sets(f) => f.to_text(),
        },
    };
    output.emit(
        &format!("{kind_name}-{}.{}", slug(&p), extension(format)),
        &body,
    )?;
    Ok(Outcome::Pass)
}

pub fn count(n: usize, k: usize, m: Multiplicity, output: &OutputArgs) -> CmdResult {
    let p = params(n, k, m)?;
    let hm = if p.meets_size_hypothesis() {
        Some(hm_size(&p).map_err(|e| e.to_string())?.to_string())
    } else {
        None
    };
    let record = json!({
        "tool_version": VERSION,
        "n": p.n(),
        "k": p.k(),
        "m": p.requested_m(),
        "m_effective": p.m(),
        "q": p.q(),
        "k_multisets": count_k_multisets(&p).to_string(),
        "ekr_size": closed_form::ekr_size(&p).to_string(),
        "hm_size": hm,
    });
    let format = output.format_or(Format::Text);
    let body = match format {
        Format::Json => to_json(&record),
        Format::Csv => format!(
            "n,k,m,m_effective,q,k_multisets,ekr_size,hm_size\n{},{},{},{},{},{},{},{}\n",
            p.n(),
            p.k(),
            p.requested_m(),
            p.m(),
            p.q(),
            record["k_multisets"].as_str().unwrap_or_default(),
            record["ekr_size"].as_str().unwrap_or_default(),
            record["hm_size"].as_str().unwrap_or_default(),
        ),
        Format::Text => format!(
            "{p}\nk-multisets  {}\nstar         {}\nhm           {}\n",
            record["k_multisets"].as_str().unwrap_or_default(),
            record["ekr_size"].as_str().unwrap_or_default(),
            record["hm_size"]
                .as_str()
                .unwrap_or("undefined (needs n >= k + q)"),
        ),
    };
    output.emit(&format!("count-{}.{}", slug(&p), extension(format)), &body)?;
    Ok(Outcome::Pass)
}

const REPORT_CSV_HEADER: &str = "n,k,m,m_effective,q,bound,families_checked,iso_classes_checked,qualifying_classes,achievers,uniqueness_verdict,violations\n";

fn report_csv_row(r: &VerificationReport) -> String {
    format!(
        "{},{},{},{},{},{},{},{},{},{},{},{}\n",
        r.params.n,
        r.params.k,
        r.params.m,
        r.params.m_effective,
        r.params.q,
        r.bound,
        r.families_checked,
        r.iso_classes_checked,
        r.qualifying_classes,
        r.achievers.len(),
        r.uniqueness_verdict,
        r.lemma_violations.len()
    )
}

fn report_text(r: &VerificationReport) -> String {
    let p = &r.params;
    let mut out = format!(
        "n={} k={} m={} (effective m={}, q={}, w={})\n",
        p.n, p.k, p.m, p.m_effective, p.q, p.w
    );
    for (label, value) in [
        ("bound", r.bound.clone()),
        ("families checked", r.families_checked.to_string()),
        ("iso classes", r.iso_classes_checked.to_string()),
        ("qualifying classes", r.qualifying_classes.to_string()),
        ("achiever classes", r.achievers.len().to_string()),
        ("uniqueness", r.uniqueness_verdict.to_string()),
        ("violations", r.lemma_violations.len().to_string()),
    ] {
        let _ = writeln!(out, "{label:<20}{value}");
    }
    for v in &r.lemma_violations {
        let _ = writeln!(out, "  {}: {}", v.check, v.detail);
    }
    out
}

fn lemma_text(r: &LemmaReport) -> String {
    let mut out = format!("{} at n={}", r.check, r.n);
    if let Some(p) = &r.params {
        let _ = write!(out, " k={} m={}", p.k, p.m);
    }
    let _ = writeln!(
        out,
        "\nfamilies checked    {}\nviolations          {}",
        r.families_checked,
        r.violations.len()
    );
    for v in &r.violations {
        let _ = writeln!(out, "  {}", v.detail);
    }
    out
}

pub fn verify_theorem(
    n: usize,
    k: usize,
    m: Multiplicity,
    search: &SearchArgs,
    output: &OutputArgs,
    started: Instant,
) -> CmdResult {
    let p = params(n, k, m)?;
    let opts = search.options();
    let classes = maximal_iso_classes(n, &opts).map_err(|e| e.to_string())?;
    let report = verify_main_theorem_on(&p, &classes, &opts).map_err(|e| e.to_string())?;
    let format = output.format_or(Format::Json);
    let body = match format {
        Format::Json => json_report(&report, search.timing, started),
        Format::Csv => format!("{REPORT_CSV_HEADER}{}", report_csv_row(&report)),
        Format::Text => report_text(&report) + &timing_line(search, started),
    };
    output.emit(
        &format!("theorem-{}.{}", slug(&p), extension(format)),
        &body,
    )?;
    Ok(Outcome::from_pass(report.passed()))
}

pub struct LemmaRequest {
    pub check: Check,
    pub n: usize,
    pub k: Option<usize>,
    pub m: Option<Multiplicity>,
    pub samples: Option<usize>,
    pub seed: u64,
}

pub fn verify_lemma(
    req: LemmaRequest,
    search: &SearchArgs,
    output: &OutputArgs,
    started: Instant,
) -> CmdResult {
    let opts = search.options();
    let e = |e: hmset::Error| e.to_string();
    let report = match req.check {
        Check::PairRule => verify_pair_rule(req.n, &opts).map_err(e)?,
        Check::Twist => verify_twist(req.n, req.samples, req.seed).map_err(e)?,
        Check::MissingLayer | Check::LayerBound | Check::ValuableStructure => {
            let (Some(k), Some(m)) = (req.k, req.m) else {
                return Err(format!("{} needs --k and --m", req.check));
            };
            let p = params(req.n, k, m)?;
            verify_layer_check(&p, req.check, None, &opts).map_err(e)?
        }
        Check::Bound | Check::Uniqueness => {
            return Err(format!("{} is checked by verify-theorem", req.check));
        }
    };
    let format = output.format_or(Format::Json);
    let body = match format {
        Format::Json => json_report(&report, search.timing, started),
        Format::Csv => format!(
            "check,n,families_checked,violations\n{},{},{},{}\n",
            report.check,
            report.n,
            report.families_checked,
            report.violations.len()
        ),
        Format::Text => lemma_text(&report) + &timing_line(search, started),
    };
    let name = format!("lemma-{}-n{}.{}", report.check, report.n, extension(format));
    output.emit(&name, &body)?;
    Ok(Outcome::from_pass(report.passed()))
}

pub fn enumerate_maximal(
    n: usize,
    up_to_iso: bool,
    count_only: bool,
    search: &SearchArgs,
    output: &OutputArgs,
    started: Instant,
) -> CmdResult {
    let opts = search.options();
    let e = |e: hmset::Error| e.to_string();
    let classes: Vec<IsoClass>;
    let families: Vec<SetFamily>;
    let mut orbits: Option<Vec<u64>> = None;
    if up_to_iso {
        classes = maximal_iso_classes(n, &opts).map_err(e)?;
        orbits = Some(classes.iter().map(|c| c.orbit_size).collect());
        families = classes.into_iter().map(|c| c.representative).collect();
    } else {
        families = enumerate_maximal_p_families(n, false, &opts).map_err(e)?;
    }
    let format = output.format_or(if count_only {
        Format::Text
    } else {
        Format::Json
    });
    let body = match (format, count_only) {
        (Format::Json, _) => {
            let mut record = json!({
                "tool_version": VERSION,
                "n": n,
                "up_to_iso": up_to_iso,
                "count": families.len(),
            });
            if !count_only {
                record["families"] =
                    json!(families.iter().map(SetFamily::to_lists).collect::<Vec<_>>());
                if let Some(orbits) = &orbits {
                    record["orbit_sizes"] = json!(orbits);
                }
            }
            json_report(&record, search.timing, started)
        }
        (_, true) => format!("{}\n", families.len()),
        (Format::Csv, false) => {
            let mut out = String::from("index,size,orbit_size,members\n");
            for (i, f) in families.iter().enumerate() {
                let members: Vec<String> = f
                    .to_lists()
                    .iter()
                    .map(|s| {
                        s.iter()
                            .map(ToString::to_string)
                            .collect::<Vec<_>>()
                            .join(" ")
                    })
                    .collect();
                let orbit = orbits.as_ref().map_or(String::new(), |o| o[i].to_string());
                let _ = writeln!(out, "{i},{},{orbit},{}", f.len(), members.join(";"));
            }
            out
        }
        (Format::Text, false) => families
            .iter()
            .map(SetFamily::to_text)
            .collect::<Vec<_>>()
            .join("\n"),
    };
    let tag = if up_to_iso { "classes" } else { "families" };
    output.emit(&format!("maximal-{tag}-n{n}.{}", extension(format)), &body)?;
    Ok(Outcome::Pass)
}

pub fn grid(
    ns: &[usize],
    ks: &[usize],
    ms: &[Multiplicity],
    search: &SearchArgs,
    output: &OutputArgs,
    started: Instant,
) -> CmdResult {
    if ns.is_empty() || ks.is_empty() || ms.is_empty() {
        return Err("--n, --k and --m need at least one value each".into());
    }
    let opts = search.options();
    let mut reports = Vec::new();
    let mut skipped = Vec::new();
    for &n in ns {
        let mut classes: Option<Vec<IsoClass>> = None;
        for &k in ks {
            for &m in ms {
                let p = params(n, k, m)?;
                let admissible = if search.unchecked {
                    p.meets_size_hypothesis()
                } else {
                    p.check_theorem_hypotheses().is_ok()
                };
                if !admissible {
                    skipped.push(p.to_string());
                    continue;
                }
                if classes.is_none() {
                    classes = Some(maximal_iso_classes(n, &opts).map_err(|e| e.to_string())?);
                }
                let classes = classes.as_deref().expect("enumerated above");
                reports
                    .push(verify_main_theorem_on(&p, classes, &opts).map_err(|e| e.to_string())?);
            }
        }
    }
    if reports.is_empty() {
        return Err("no admissible parameter set in the grid".into());
    }
    let format = output.format_or(Format::Csv);
    let body = match format {
        Format::Csv => std::iter::once(REPORT_CSV_HEADER.to_string())
            .chain(reports.iter().map(report_csv_row))
            .collect(),
        Format::Json => {
            let record = json!({ "tool_version": VERSION, "reports": reports, "skipped": skipped });
            json_report(&record, search.timing, started)
        }
        Format::Text => {
            let mut out: String = reports.iter().map(|r| report_text(r) + "\n").collect();
            if !skipped.is_empty() {
                let _ = writeln!(out, "skipped (hypotheses not met): {}", skipped.join(", "));
            }
            out + &timing_line(search, started)
        }
    };
    output.emit(&format!("grid.{}", extension(format)), &body)?;
    Ok(Outcome::from_pass(
        reports.iter().all(VerificationReport::passed),
    ))
}

pub fn inspect(file: &Path, sets: bool, output: &OutputArgs) -> CmdResult {
    let text =
        fs::read_to_string(file).map_err(|e| format!("cannot read {}: {e}", file.display()))?;
    let record = if sets {
        let f = SetFamily::from_text(&text).map_err(|e| e.to_string())?;
        json!({
            "kind": "sets",
            "n": f.n(),
            "size": f.len(),
            "intersecting": hmset::universe::is_intersecting_sf(&f),
            "maximal_intersecting": hmset::universe::is_maximal_intersecting_sf(&f),
            "common_element": f.has_common_element(),
            "layer_sizes": f.layer_sizes(),
        })
    } else {
        let f = MultisetFamily::from_text(&text).map_err(|e| e.to_string())?;
        json!({
            "kind": "multisets",
            "params": f.params().to_string(),
            "size": f.len(),
            "intersecting": f.is_intersecting(),
            "trivial": f.is_trivial(),
            "maximal_intersecting": f.is_maximal_intersecting(),
        })
    };
    let format = output.format_or(Format::Text);
    let body = match format {
        Format::Json => to_json(&record),
        _ => record
            .as_object()
            .expect("object")
            .iter()
            .map(|(key, v)| format!("{key:<22}{v}\n"))
            .collect(),
    };
    output.emit(&format!("inspect.{}", extension(format)), &body)?;
    Ok(Outcome::Pass)
}
