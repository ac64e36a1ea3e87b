use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;
use tiltpoly::catalan::{catalan, central_binomial, factorial};
use tiltpoly::geometry::{
    convex_hull, polytope_volume, simplex_normalized_volume, union_volume, Certificate, HPolytope,
    Simplex,
};
use tiltpoly::linalg::Rational;
use tiltpoly::quiver::{indecomposables, IntervalTable, Quiver};
use tiltpoly::series::{build_c, build_p, build_p_barred, SeriesSpec, SeriesVariant};
use tiltpoly::tilting::{
    count_support_sequences, count_tilting_sequences, count_two_support_sequences,
    enumerate_support_tilting, enumerate_tilting, enumerate_two_support_tilting, orderings,
    ModuleCollection, OrderingRule, TiltingSequence, TwoSupportPair,
};
use tiltpoly::verify::{
    exit_status, run_battery, Battery, ClaimGroup, Context, OrientationChoice, VerificationReport,
};

use crate::config::{CliError, Command, Format, RunConfig, Series, VariantChoice};
use crate::output::{csv_string, json_lines, json_pretty, CsvRow, Table};

/// Rendered command result before it is written anywhere.
pub struct Rendered {
    pub status: i32,
    pub body: String,
    pub notes: Vec<String>,
}

impl Rendered {
    fn ok(body: String) -> Self {
        Self {
            status: 0,
            body,
            notes: Vec::new(),
        }
    }
}

pub fn execute(cfg: &RunConfig) -> Result<Rendered, CliError> {
    let mut notes = Vec::new();
    if cfg.limits.override_limits {
        notes.push(
            "warning: size limits overridden; exact computations may take very long".to_string(),
        );
    }
    let mut out = match cfg.command {
        Command::Count => count(cfg),
        Command::Enumerate => enumerate(cfg),
        Command::Volume => volume(cfg),
        Command::Verify => verify(cfg),
        Command::Report => report(cfg),
    }?;
    notes.append(&mut out.notes);
    out.notes = notes;
    Ok(out)
}

fn context(cfg: &RunConfig) -> Context {
    Context {
        rule: cfg.rule,
        ext_overrides: cfg.ext_overrides.clone(),
        timings: cfg.timings,
    }
}

fn check_size(cfg: &RunConfig, group: ClaimGroup, n: usize) -> Result<(), CliError> {
    cfg.limits.check(group, n).map_err(|e| {
        let hint = if group == ClaimGroup::Geometry {
            " (raise --limit-dim or pass --override-limits)"
        } else {
            " (pass --override-limits)"
        };
        CliError::flag("--n", format!("{e}{hint}"))
    })
}

fn quivers(cfg: &RunConfig) -> Result<Vec<Quiver>, CliError> {
    Ok(cfg.orientation.quivers(cfg.n)?)
}

fn orientation_label(choice: &OrientationChoice) -> String {
    match choice {
        OrientationChoice::Directed => "directed".into(),
        OrientationChoice::All => "all".into(),
        OrientationChoice::Bits(b) => b.clone(),
    }
}

fn family_count(
    table: &IntervalTable,
    variant: SeriesVariant,
    rule: OrderingRule,
) -> Result<u64, CliError> {
    Ok(match variant {
        SeriesVariant::Plus => enumerate_tilting(table).len() as u64,
        SeriesVariant::Clus => enumerate_support_tilting(table).len() as u64,
        SeriesVariant::Full => enumerate_two_support_tilting(table).len() as u64,
        SeriesVariant::BarredPlus => count_tilting_sequences(table, rule)?,
        SeriesVariant::BarredClus => count_support_sequences(table, rule)?,
        SeriesVariant::BarredFull => count_two_support_sequences(table, rule)?,
    })
}

#[derive(Serialize)]
struct CountRecord {
    n: usize,
    orientation: String,
    quiver: String,
    counts: BTreeMap<String, u64>,
}

fn count(cfg: &RunConfig) -> Result<Rendered, CliError> {
    check_size(cfg, ClaimGroup::Counts, cfg.n)?;
    let ctx = context(cfg);
    let variants = cfg.variant.variants();
    let records: Vec<(Quiver, Vec<u64>)> = quivers(cfg)?
        .into_par_iter()
        .map(|q| {
            let t = ctx.table(&q)?;
            let values = variants
                .iter()
                .map(|&v| family_count(&t, v, cfg.rule))
                .collect::<Result<Vec<_>, _>>()?;
            Ok((q, values))
        })
        .collect::<Result<_, CliError>>()?;
    let body = match cfg.format {
        Format::Text => {
            // Orientations related by reflection or arrow reversal share a row
            // when their counts agree.
            let mut groups: Vec<(String, Vec<u64>, usize)> = Vec::new();
            for (q, values) in &records {
                let class = q.symmetry_class();
                match groups
                    .iter_mut()
                    .find(|(c, v, _)| *c == class && v == values)
                {
                    Some(g) => g.2 += 1,
                    None => groups.push((class, values.clone(), 1)),
                }
            }
            let mut headers = vec!["n".to_string(), "orientation".into(), "orientations".into()];
            headers.extend(variants.iter().map(|v| v.to_string()));
            let mut table = Table::new(headers);
            for (class, values, size) in groups {
                let rep = Quiver::from_bits(cfg.n, &class)?;
                let mut row = vec![cfg.n.to_string(), rep.to_string(), size.to_string()];
                row.extend(values.iter().map(u64::to_string));
                table.push(row);
            }
            table.render()
        }
        Format::Json => {
            let out: Vec<CountRecord> = records
                .iter()
                .map(|(q, values)| CountRecord {
                    n: q.n(),
                    orientation: q.bits(),
                    quiver: q.to_string(),
                    counts: variants
                        .iter()
                        .map(|v| v.to_string())
                        .zip(values.iter().copied())
                        .collect(),
                })
                .collect();
            json_pretty(&out)?
        }
        Format::Csv => {
            let rows: Vec<CsvRow> = records
                .iter()
                .flat_map(|(q, values)| {
                    variants.iter().zip(values).map(move |(v, x)| CsvRow {
                        n: q.n(),
                        orientation: q.bits(),
                        variant: v.to_string(),
                        quantity: "count".into(),
                        value: x.to_string(),
                        method: "enumeration".into(),
                    })
                })
                .collect();
            csv_string(&rows)?
        }
    };
    Ok(Rendered::ok(body))
}

#[derive(Serialize)]
#[serde(untagged)]
enum Item {
    Module(ModuleCollection),
    Pair(TwoSupportPair),
    Sequence(TiltingSequence),
    SequencePair {
        plus: TiltingSequence,
        minus: TiltingSequence,
    },
}

impl Item {
    fn label(&self) -> String {
        fn list(parts: &[tiltpoly::quiver::Interval], sep: &str) -> String {
            parts
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(sep)
        }
        match self {
            Item::Module(m) => format!("{{{}}}", list(m.parts(), " ")),
            Item::Pair(p) => format!(
                "+{{{}}} -{{{}}}",
                list(p.plus.parts(), " "),
                list(p.minus.parts(), " ")
            ),
            Item::Sequence(s) => format!("({})", list(&s.entries, ", ")),
            Item::SequencePair { plus, minus } => {
                format!(
                    "+({}) -({})",
                    list(&plus.entries, ", "),
                    list(&minus.entries, ", ")
                )
            }
        }
    }
}

fn items(
    table: &IntervalTable,
    variant: SeriesVariant,
    rule: OrderingRule,
) -> Result<Vec<Item>, CliError> {
    let mut out = Vec::new();
    match variant {
        SeriesVariant::Plus => out.extend(enumerate_tilting(table).into_iter().map(Item::Module)),
        SeriesVariant::Clus => out.extend(
            enumerate_support_tilting(table)
                .into_iter()
                .map(Item::Module),
        ),
        SeriesVariant::Full => out.extend(
            enumerate_two_support_tilting(table)
                .into_iter()
                .map(Item::Pair),
        ),
        SeriesVariant::BarredPlus | SeriesVariant::BarredClus => {
            let modules = if variant == SeriesVariant::BarredPlus {
                enumerate_tilting(table)
            } else {
                enumerate_support_tilting(table)
            };
            for m in modules {
                out.extend(
                    orderings(table, m.parts(), rule)?
                        .into_iter()
                        .map(Item::Sequence),
                );
            }
        }
        SeriesVariant::BarredFull => {
            for pair in enumerate_two_support_tilting(table) {
                let minus = orderings(table, pair.minus.parts(), rule)?;
                for p in orderings(table, pair.plus.parts(), rule)? {
                    for m in &minus {
                        out.push(Item::SequencePair {
                            plus: p.clone(),
                            minus: m.clone(),
                        });
                    }
                }
            }
        }
    }
    Ok(out)
}

#[derive(Serialize)]
struct IntervalEntry {
    interval: tiltpoly::quiver::Interval,
    dim_vector: tiltpoly::quiver::DimVector,
}

#[derive(Serialize)]
struct Family {
    variant: String,
    count: usize,
    items: Vec<Item>,
}

#[derive(Serialize)]
struct Catalogue {
    n: usize,
    orientation: String,
    quiver: String,
    intervals: Vec<IntervalEntry>,
    families: Vec<Family>,
}

fn enumerate(cfg: &RunConfig) -> Result<Rendered, CliError> {
    check_size(cfg, ClaimGroup::Counts, cfg.n)?;
    let ctx = context(cfg);
    let variants = cfg.variant.variants();
    let catalogues: Vec<Catalogue> = quivers(cfg)?
        .into_par_iter()
        .map(|q| {
            let t = ctx.table(&q)?;
            let families = variants
                .iter()
                .map(|&v| {
                    let items = items(&t, v, cfg.rule)?;
                    Ok(Family {
                        variant: v.to_string(),
                        count: items.len(),
                        items,
                    })
                })
                .collect::<Result<Vec<_>, CliError>>()?;
            let intervals = indecomposables(&q)
                .into_iter()
                .map(|iv| IntervalEntry {
                    interval: iv,
                    dim_vector: iv.dim_vector(q.n()),
                })
                .collect();
            Ok(Catalogue {
                n: q.n(),
                orientation: q.bits(),
                quiver: q.to_string(),
                intervals,
                families,
            })
        })
        .collect::<Result<_, CliError>>()?;
    let body = match cfg.format {
        Format::Text => {
            let mut s = String::new();
            for c in &catalogues {
                for f in &c.families {
                    s.push_str(&format!("# {} {} ({})\n", c.quiver, f.variant, f.count));
                    for item in &f.items {
                        s.push_str(&item.label());
                        s.push('\n');
                    }
                }
            }
            s
        }
        Format::Json => json_pretty(&catalogues)?,
        Format::Csv => {
            let rows: Vec<CsvRow> = catalogues
                .iter()
                .flat_map(|c| {
                    c.families.iter().flat_map(move |f| {
                        f.items.iter().map(move |item| CsvRow {
                            n: c.n,
                            orientation: c.orientation.clone(),
                            variant: f.variant.clone(),
                            quantity: "item".into(),
                            value: item.label(),
                            method: "enumeration".into(),
                        })
                    })
                })
                .collect();
            csv_string(&rows)?
        }
    };
    Ok(Rendered::ok(body))
}

fn single_variant(cfg: &RunConfig) -> Result<SeriesVariant, CliError> {
    match &cfg.variant {
        VariantChoice::One(v) => Ok(*v),
        VariantChoice::All => Err(CliError::flag("--variant", "volume needs a single variant")),
    }
}

fn rational_string(v: &Rational) -> String {
    if v.is_integer() {
        v.to_integer().to_string()
    } else {
        v.to_string()
    }
}

#[derive(Serialize)]
struct FacetRecord {
    normal: Vec<String>,
    offset: String,
    incident: Vec<usize>,
    volume: String,
}

#[derive(Serialize)]
struct HullRecord {
    series: &'static str,
    variant: String,
    n: usize,
    dim: usize,
    points: Vec<Vec<i64>>,
    vertices: Vec<usize>,
    facets: Vec<FacetRecord>,
    triangulation: Vec<Vec<usize>>,
    normalized_volume: String,
}

fn hull_record(variant: SeriesVariant, n: usize, h: &HPolytope) -> HullRecord {
    HullRecord {
        series: "C",
        variant: variant.to_string(),
        n,
        dim: h.dim(),
        points: h.points().to_vec(),
        vertices: h.hull_vertices(),
        facets: h
            .facets
            .iter()
            .map(|f| FacetRecord {
                normal: f.normal.iter().map(ToString::to_string).collect(),
                offset: f.offset.to_string(),
                incident: f.incident.clone(),
                volume: f.volume.to_string(),
            })
            .collect(),
        triangulation: h.triangulation.iter().map(|s| s.vertices.clone()).collect(),
        normalized_volume: rational_string(&polytope_volume(h).value),
    }
}

#[derive(Serialize)]
struct UnionRecord {
    series: &'static str,
    variant: String,
    n: usize,
    orientation: String,
    quiver: String,
    simplices: Vec<Vec<Vec<i64>>>,
    normalized_volume: String,
    hull_volume: String,
    certificate: String,
}

fn certificate_name(c: Certificate) -> &'static str {
    match c {
        Certificate::Exact => "exact",
        Certificate::RidgeMismatch => "ridge-mismatch",
        Certificate::UpperBoundMismatch => "upper-bound-mismatch",
    }
}

fn union_record(
    variant: SeriesVariant,
    q: &Quiver,
    simplices: Vec<Simplex>,
    hull: &HPolytope,
) -> Result<UnionRecord, CliError> {
    let mut total = Rational::from_integer(0.into());
    for s in &simplices {
        total += simplex_normalized_volume(s)?;
    }
    let certificate = match union_volume(&simplices, hull) {
        Ok(u) => certificate_name(u.certificate).to_string(),
        Err(tiltpoly::Error::Precondition(_)) => "vertex-outside".to_string(),
        Err(e) => return Err(e.into()),
    };
    Ok(UnionRecord {
        series: "P",
        variant: variant.to_string(),
        n: q.n(),
        orientation: q.bits(),
        quiver: q.to_string(),
        simplices: simplices.iter().map(|s| s.vertices().to_vec()).collect(),
        normalized_volume: rational_string(&total),
        hull_volume: rational_string(&polytope_volume(hull).value),
        certificate,
    })
}

fn volume(cfg: &RunConfig) -> Result<Rendered, CliError> {
    check_size(cfg, ClaimGroup::Geometry, cfg.n)?;
    let variant = single_variant(cfg)?;
    let hull = convex_hull(&build_c(&SeriesSpec::c(variant, cfg.n))?)?;
    let body = match cfg.series {
        Series::C => {
            let record = hull_record(variant, cfg.n, &hull);
            match cfg.format {
                Format::Text => format!("{}\n", record.normalized_volume),
                Format::Json => json_pretty(&record)?,
                Format::Csv => csv_string(&[CsvRow {
                    n: cfg.n,
                    orientation: String::new(),
                    variant: variant.to_string(),
                    quantity: "normalized_volume".into(),
                    value: record.normalized_volume,
                    method: "hull".into(),
                }])?,
            }
        }
        Series::P => {
            let ctx = context(cfg);
            let records: Vec<UnionRecord> = quivers(cfg)?
                .into_par_iter()
                .map(|q| {
                    let t = ctx.table(&q)?;
                    let simplices = if variant.is_barred() {
                        build_p_barred(variant, &t, cfg.rule)?
                    } else {
                        build_p(variant, &t)?
                    };
                    union_record(variant, &q, simplices, &hull)
                })
                .collect::<Result<_, CliError>>()?;
            match cfg.format {
                Format::Text => {
                    let mut table =
                        Table::new(["orientation", "simplices", "volume", "hull", "certificate"]);
                    for r in &records {
                        table.push(vec![
                            r.quiver.clone(),
                            r.simplices.len().to_string(),
                            r.normalized_volume.clone(),
                            r.hull_volume.clone(),
                            r.certificate.clone(),
                        ]);
                    }
                    table.render()
                }
                Format::Json => json_pretty(&records)?,
                Format::Csv => {
                    let rows: Vec<CsvRow> = records
                        .iter()
                        .map(|r| CsvRow {
                            n: r.n,
                            orientation: r.orientation.clone(),
                            variant: r.variant.clone(),
                            quantity: "normalized_volume".into(),
                            value: r.normalized_volume.clone(),
                            method: "simplex_sum".into(),
                        })
                        .collect();
                    csv_string(&rows)?
                }
            }
        }
    };
    Ok(Rendered::ok(body))
}

fn verify(cfg: &RunConfig) -> Result<Rendered, CliError> {
    let sizes: Vec<usize> = (cfg.from..=cfg.n).collect();
    let mut notes = Vec::new();
    if cfg.explicit_groups {
        for &n in &sizes {
            for &g in &cfg.groups {
                check_size(cfg, g, n)?;
            }
        }
    } else {
        for &g in &cfg.groups {
            let skipped: Vec<String> = sizes
                .iter()
                .filter(|&&n| !cfg.limits.allows(g, n))
                .map(ToString::to_string)
                .collect();
            if !skipped.is_empty() {
                notes.push(format!(
                    "note: {} claims skipped for n = {} (size limit)",
                    g.name(),
                    skipped.join(", ")
                ));
            }
        }
    }
    let battery = Battery {
        sizes,
        orientations: cfg.orientation.clone(),
        groups: cfg.groups.clone(),
        limits: cfg.limits,
    };
    let reports = run_battery(&context(cfg), &battery)?;
    let status = exit_status(&reports);
    let body = match cfg.format {
        Format::Json => json_lines(&reports)?,
        Format::Text => {
            let mut table = Table::new(["claim", "n", "orientation", "left", "right", "result"]);
            for r in &reports {
                table.push(vec![
                    r.claim.clone(),
                    r.n.to_string(),
                    r.orientation
                        .as_deref()
                        .and_then(|b| Quiver::from_bits(r.n, b).ok())
                        .map_or_else(|| "-".into(), |q| q.to_string()),
                    r.left.to_string(),
                    r.right.to_string(),
                    if r.pass { "pass" } else { "FAIL" }.into(),
                ]);
            }
            let failed: Vec<&VerificationReport> = reports.iter().filter(|r| !r.pass).collect();
            let mut s = table.render();
            s.push_str(&format!(
                "\n{} claims checked, {} failed\n",
                reports.len(),
                failed.len()
            ));
            let mut names: Vec<&str> = failed.iter().map(|r| r.claim.as_str()).collect();
            names.dedup();
            if !names.is_empty() {
                s.push_str(&format!("failed claims: {}\n", names.join(", ")));
            }
            s
        }
        Format::Csv => {
            let rows: Vec<CsvRow> = reports
                .iter()
                .flat_map(|r| {
                    [("left", &r.left), ("right", &r.right)].map(|(side, v)| CsvRow {
                        n: r.n,
                        orientation: r.orientation.clone().unwrap_or_default(),
                        variant: String::new(),
                        quantity: r.claim.clone(),
                        value: v.to_string(),
                        method: format!("{side}:{}", if r.pass { "pass" } else { "fail" }),
                    })
                })
                .collect();
            csv_string(&rows)?
        }
    };
    Ok(Rendered {
        status,
        body,
        notes,
    })
}

#[derive(Debug, Clone, Serialize)]
struct ReportRow {
    n: usize,
    quantity: &'static str,
    formula: String,
    /// Distinct values over the selected orientations.
    #[serde(skip_serializing_if = "Option::is_none")]
    enumeration: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    volume: Option<String>,
    agree: Vec<&'static str>,
    pass: bool,
}

const QUANTITIES: [(&str, SeriesVariant); 5] = [
    ("tilting", SeriesVariant::Plus),
    ("support_tilting", SeriesVariant::Clus),
    ("two_support_tilting", SeriesVariant::Full),
    ("tilting_sequences", SeriesVariant::BarredPlus),
    ("two_support_sequences", SeriesVariant::BarredFull),
];

fn formula(variant: SeriesVariant, n: u64) -> String {
    match variant {
        SeriesVariant::Plus => catalan(n),
        SeriesVariant::Clus => catalan(n + 1),
        SeriesVariant::Full => central_binomial(n),
        SeriesVariant::BarredPlus => factorial(n),
        _ => factorial(n + 1),
    }
    .to_string()
}

fn report_rows(cfg: &RunConfig, n: usize) -> Result<Vec<ReportRow>, CliError> {
    let ctx = context(cfg);
    let enumerate = cfg.limits.allows(ClaimGroup::Counts, n);
    let geometry = cfg.limits.allows(ClaimGroup::Geometry, n);
    let tables: Vec<IntervalTable> = if enumerate {
        cfg.orientation
            .quivers(n)?
            .iter()
            .map(|q| ctx.table(q))
            .collect::<Result<_, _>>()?
    } else {
        Vec::new()
    };
    QUANTITIES
        .par_iter()
        .map(|&(quantity, variant)| {
            let f = formula(variant, n as u64);
            let enumeration = if enumerate {
                let mut values: Vec<u64> = tables
                    .iter()
                    .map(|t| family_count(t, variant, cfg.rule))
                    .collect::<Result<_, _>>()?;
                values.sort_unstable();
                values.dedup();
                Some(values.iter().map(u64::to_string).collect::<Vec<_>>())
            } else {
                None
            };
            let volume = if geometry {
                let h = convex_hull(&build_c(&SeriesSpec::c(variant, n))?)?;
                Some(rational_string(&polytope_volume(&h).value))
            } else {
                None
            };
            let mut agree = vec!["formula"];
            let mut pass = true;
            if let Some(e) = &enumeration {
                if e.len() == 1 && e[0] == f {
                    agree.push("enumeration");
                } else {
                    pass = false;
                }
            }
            if let Some(v) = &volume {
                if *v == f {
                    agree.push("volume");
                } else {
                    pass = false;
                }
            }
            Ok(ReportRow {
                n,
                quantity,
                formula: f,
                enumeration,
                volume,
                agree,
                pass,
            })
        })
        .collect()
}

fn report(cfg: &RunConfig) -> Result<Rendered, CliError> {
    let mut rows = Vec::new();
    for n in cfg.from..=cfg.n {
        if !cfg.limits.allows(ClaimGroup::Arithmetic, n) {
            return Err(CliError::flag(
                "--n",
                format!("n = {n} exceeds the arithmetic limit (pass --override-limits)"),
            ));
        }
        rows.extend(report_rows(cfg, n)?);
    }
    let status = if rows.iter().all(|r| r.pass) { 0 } else { 1 };
    let body = match cfg.format {
        Format::Json => json_lines(&rows)?,
        Format::Csv => {
            let label = orientation_label(&cfg.orientation);
            let mut out = Vec::new();
            for r in &rows {
                let variant = QUANTITIES
                    .iter()
                    .find(|q| q.0 == r.quantity)
                    .map(|q| q.1.to_string())
                    .unwrap_or_default();
                let mut push = |value: &str, method: &str| {
                    out.push(CsvRow {
                        n: r.n,
                        orientation: if method == "enumeration" {
                            label.clone()
                        } else {
                            String::new()
                        },
                        variant: variant.clone(),
                        quantity: r.quantity.to_string(),
                        value: value.to_string(),
                        method: method.to_string(),
                    })
                };
                push(&r.formula, "formula");
                for e in r.enumeration.iter().flatten() {
                    push(e, "enumeration");
                }
                if let Some(v) = &r.volume {
                    push(v, "volume");
                }
            }
            csv_string(&out)?
        }
        Format::Text => {
            let mut head = Table::new(["n", "C_n", "C_{n+1}", "C(2n,n)", "n!", "(n+1)!"]);
            for n in cfg.from..=cfg.n {
                let mut row = vec![n.to_string()];
                row.extend(rows.iter().filter(|r| r.n == n).map(|r| r.formula.clone()));
                head.push(row);
            }
            let mut s = head.render();
            if !rows.is_empty() {
                let rule = match cfg.rule {
                    OrderingRule::Hom => "hom",
                    OrderingRule::Nesting => "nesting",
                };
                s.push_str(&format!(
                    "\ncross-validation (orientation {}, ordering {rule})\n",
                    orientation_label(&cfg.orientation)
                ));
                let mut t = Table::new([
                    "n",
                    "quantity",
                    "formula",
                    "enumeration",
                    "volume",
                    "agreeing methods",
                ]);
                for r in &rows {
                    t.push(vec![
                        r.n.to_string(),
                        r.quantity.to_string(),
                        r.formula.clone(),
                        r.enumeration.as_ref().map_or("-".into(), |e| e.join("|")),
                        r.volume.clone().unwrap_or_else(|| "-".into()),
                        r.agree.join("="),
                    ]);
                }
                s.push_str(&t.render());
            }
            s
        }
    };
    Ok(Rendered {
        status,
        body,
        notes: Vec::new(),
    })
}
