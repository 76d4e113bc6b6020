use std::fmt::Write as _;

use mixedvol_core::family::FamilySpec;
use mixedvol_core::geometry::{self, RationalPolytope};
use mixedvol_core::io::{self, IdealJson, PolytopeJson, RationalJson, TableJson};
use mixedvol_core::multiplicity::{
    mixed_multiplicities_family, mixed_multiplicities_ideals, MixedMultiplicityTable,
};
use mixedvol_core::okounkov::{level_count_series, levelwise_decomposition_check, GammaSpec, Variant};
use mixedvol_core::rational;
use mixedvol_core::verify::{verify_theorem, VerifyOptions};
use mixedvol_core::{GradedFamily, MonomialIdeal};
use serde::Deserialize;
use serde_json::json;

use crate::{CliError, Format, Output, Settings};

fn parse<T: serde::de::DeserializeOwned>(input: &str) -> Result<T, CliError> {
    Ok(io::from_json_str(input)?)
}

fn ok(text: String) -> Result<Output, CliError> {
    Ok(Output {
        text,
        check_failed: false,
    })
}

fn json_text(value: &serde_json::Value) -> String {
    io::to_json_string(value)
}

fn polytopes(list: &[PolytopeJson]) -> Result<Vec<RationalPolytope>, CliError> {
    if list.is_empty() {
        return Err(CliError::Input("no polytopes given".into()));
    }
    Ok(list.iter().map(|p| p.to_polytope()).collect::<Result<_, _>>()?)
}

#[derive(Deserialize)]
#[serde(untagged)]
enum MixedVolumeInput {
    List(Vec<PolytopeJson>),
    WithDegree {
        polytopes: Vec<PolytopeJson>,
        multidegree: Option<Vec<u32>>,
    },
}

pub fn mixed_volume(input: &str, s: &Settings) -> Result<Output, CliError> {
    let (list, degree) = match parse::<MixedVolumeInput>(input)? {
        MixedVolumeInput::List(l) => (l, None),
        MixedVolumeInput::WithDegree { polytopes, multidegree } => (polytopes, multidegree),
    };
    let bodies = polytopes(&list)?;
    let mv = match &degree {
        Some(e) => geometry::mixed_volume_multidegree(&bodies, e)?,
        None => geometry::mixed_volume(&bodies)?,
    };
    let (exact, decimal) = (rational::format_rational(&mv), rational::to_decimal(&mv));
    ok(match s.format {
        Format::Json => json_text(&json!({ "mixed_volume": exact, "decimal": decimal })),
        Format::Csv => format!("mixed_volume,decimal\n{exact},{decimal}\n"),
    })
}

#[derive(Deserialize)]
struct IdealsInput {
    #[serde(rename = "I")]
    i: IdealJson,
    #[serde(rename = "J", default)]
    js: Vec<IdealJson>,
}

fn render_table(t: &MixedMultiplicityTable, format: Format) -> String {
    match format {
        Format::Json => io::to_json_string(&TableJson::from(t.clone())),
        Format::Csv => io::table_to_csv(t),
    }
}

pub fn mixed_mult(input: &str, s: &Settings) -> Result<Output, CliError> {
    let doc: IdealsInput = parse(input)?;
    let i = doc.i.to_ideal()?;
    let js: Vec<MonomialIdeal> = doc.js.iter().map(|j| j.to_ideal()).collect::<Result<_, _>>()?;
    let table = mixed_multiplicities_ideals(&i, &js, &s.config)?;
    ok(render_table(&table, s.format))
}

#[derive(Deserialize)]
struct FamiliesInput {
    #[serde(rename = "I")]
    i: FamilySpec,
    #[serde(rename = "J", default)]
    js: Vec<FamilySpec>,
}

fn build_families(i: &FamilySpec, js: &[FamilySpec]) -> Result<(GradedFamily, Vec<GradedFamily>), CliError> {
    let i = i.build()?;
    let js = js.iter().map(|j| j.build()).collect::<Result<_, _>>()?;
    Ok((i, js))
}

fn csv_index_header(r: usize) -> String {
    let mut h = String::from("d0");
    for k in 1..=r {
        write!(h, ",d{k}").unwrap();
    }
    h
}

fn csv_index(d0: u32, dvec: &[u32]) -> String {
    let mut out = d0.to_string();
    for x in dvec {
        write!(out, ",{x}").unwrap();
    }
    out
}

pub fn family_mult(input: &str, s: &Settings) -> Result<Output, CliError> {
    let doc: FamiliesInput = parse(input)?;
    let (i, js) = build_families(&doc.i, &doc.js)?;
    let run = mixed_multiplicities_family(&i, &js, &s.schedule, &s.config)?;
    ok(match s.format {
        Format::Json => {
            let steps: Vec<serde_json::Value> = run
                .steps
                .iter()
                .map(|st| {
                    json!({
                        "p": st.p,
                        "raw": TableJson::from(st.raw.clone()),
                        "normalized": TableJson::from(st.normalized.clone()),
                    })
                })
                .collect();
            json_text(&json!({
                "schedule": s.schedule,
                "steps": steps,
                "estimate": TableJson::from(run.estimate.clone()),
                "stabilized": run.stabilized,
            }))
        }
        Format::Csv => {
            let mut out = format!("p,{},raw,normalized,decimal\n", csv_index_header(js.len()));
            for st in &run.steps {
                for (k, v) in st.normalized.entries() {
                    let raw = &st.raw.entries()[k];
                    writeln!(
                        out,
                        "{},{},{},{},{}",
                        st.p,
                        csv_index(k.d0, &k.dvec),
                        raw,
                        v,
                        rational::to_decimal(v)
                    )
                    .unwrap();
                }
            }
            out
        }
    })
}

#[derive(Deserialize)]
#[serde(untagged)]
enum BodiesInput {
    List(Vec<PolytopeJson>),
    Named { bodies: Vec<PolytopeJson> },
}

pub fn verify_theorem_c(input: &str, s: &Settings) -> Result<Output, CliError> {
    let list = match parse::<BodiesInput>(input)? {
        BodiesInput::List(l) | BodiesInput::Named { bodies: l } => l,
    };
    let bodies = polytopes(&list)?;
    let options = VerifyOptions {
        schedule: s.schedule.clone(),
        tolerance: s.tolerance.clone(),
        config: s.config,
    };
    let report = verify_theorem(&bodies, &options)?;
    let text = match s.format {
        Format::Json => io::to_json_string(&report),
        Format::Csv => {
            let mut out = format!("p,route,{},algebraic,geometric,abs_deviation,decimal\n", csv_index_header(report.r));
            for st in &report.steps {
                for (route, table) in [("maximal", &st.via_maximal), ("maximal_power", &st.via_maximal_power)] {
                    for (k, v) in table.entries() {
                        let geo = &report.geometric.entries()[k];
                        let dev = rational::abs(&(v - geo));
                        writeln!(
                            out,
                            "{},{route},{},{v},{geo},{dev},{}",
                            st.p,
                            csv_index(k.d0, &k.dvec),
                            rational::to_decimal(v)
                        )
                        .unwrap();
                    }
                }
            }
            out
        }
    };
    if !report.passed {
        eprintln!("mixedvol: verification did not pass (see report)");
    }
    Ok(Output {
        text,
        check_failed: !report.passed,
    })
}

#[derive(Deserialize)]
struct SemigroupInput {
    #[serde(rename = "I")]
    i: FamilySpec,
    #[serde(rename = "J", default)]
    js: Vec<FamilySpec>,
    n0: u32,
    #[serde(default)]
    n: Vec<u32>,
    c: Option<u32>,
    schedule: Option<Vec<u32>>,
    m_max: Option<u32>,
}

pub fn okounkov(input: &str, s: &Settings) -> Result<Output, CliError> {
    let doc: SemigroupInput = parse(input)?;
    let (i, js) = build_families(&doc.i, &doc.js)?;
    let spec = match doc.c {
        Some(c) => GammaSpec::new(Variant::Plain, i, js, doc.n0, doc.n.clone(), c)?,
        None => GammaSpec::with_default_c(Variant::Plain, i, js, doc.n0, doc.n.clone())?,
    };
    let schedule = doc.schedule.unwrap_or_else(|| s.schedule.clone());
    let rows = level_count_series(&spec, &schedule)?;
    ok(match s.format {
        Format::Json => {
            let rows: Vec<serde_json::Value> = rows
                .iter()
                .map(|r| {
                    json!({
                        "m": r.m,
                        "count_plain": r.count_plain,
                        "count_hat": r.count_hat,
                        "normalized_diff": RationalJson(r.normalized_diff.clone()),
                    })
                })
                .collect();
            json_text(&json!({ "c": spec.c(), "n0": doc.n0, "n": doc.n, "rows": rows }))
        }
        Format::Csv => {
            let mut out = String::from("m,count_plain,count_hat,normalized_diff\n");
            for r in &rows {
                writeln!(out, "{},{},{},{}", r.m, r.count_plain, r.count_hat, r.normalized_diff).unwrap();
            }
            out
        }
    })
}

pub fn decomposition_check(input: &str, s: &Settings) -> Result<Output, CliError> {
    let doc: SemigroupInput = parse(input)?;
    let (i, js) = build_families(&doc.i, &doc.js)?;
    let m_max = doc.m_max.unwrap_or(4);
    let report = levelwise_decomposition_check(&i, &js, doc.n0, &doc.n, m_max)?;
    let verdict = |b: bool| if b { "pass" } else { "fail" };
    let text = match s.format {
        Format::Json => {
            let levels: Vec<serde_json::Value> = report
                .levels
                .iter()
                .map(|(m, p, h)| json!({ "m": m, "plain": verdict(*p), "hat": verdict(*h) }))
                .collect();
            let witness = report.witness.as_ref().map(|w| {
                json!({
                    "m": w.m,
                    "variant": w.variant.name(),
                    "point": w.point.exponents(),
                    "in_level": w.in_level,
                })
            });
            json_text(&json!({ "levels": levels, "holds": report.holds(), "witness": witness }))
        }
        Format::Csv => {
            let mut out = String::from("m,plain,hat\n");
            for (m, p, h) in &report.levels {
                writeln!(out, "{m},{},{}", verdict(*p), verdict(*h)).unwrap();
            }
            out
        }
    };
    Ok(Output {
        text,
        check_failed: !report.holds(),
    })
}
