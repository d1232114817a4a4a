use std::path::Path;

use quantdisk::algebra::{multiply, Element, StructureModel};
use quantdisk::disk::{eval_disk, eval_upstairs, lift_element, seminorm_r, ConeModel, ConePoint, DiskModel, DiskPoint};
use quantdisk::exact::{format_rational, parse_rational, GaussRat, Rational};
use quantdisk::io::{element_from_json, element_to_json, gns_vector_json, parse_gauss, parse_gns_vector};
use quantdisk::seminorm::{root_presentation, EngineConfig, HEngine, HEntry};
use quantdisk::symmetry::{
    coherent_vector, gns_inner, gns_rep_closed_form, gns_rep_definitional, positivity_check, GnsVector,
};
use serde_json::{json, Value};

use crate::config::{Output, RunConfig};
use crate::error::{CliError, CliResult};
use crate::registry::{build_for_element, with_model, AnyModel, MODELS};
use crate::table::Table;

pub fn read_json(path: &Path) -> CliResult<Value> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.display().to_string(), source })?;
    serde_json::from_str(&text).map_err(|source| CliError::Json { path: path.display().to_string(), source })
}

fn gauss_cells(c: &GaussRat) -> Vec<String> {
    let (re, im) = c.to_f64_pair();
    vec![format_rational(&c.re), format_rational(&c.im), format!("{re:.12e}"), format!("{im:.12e}")]
}

fn render_element<M: StructureModel>(model: &M, a: &Element<M::Index>, output: Output) -> String {
    match output {
        Output::Json => format!("{}\n", serde_json::to_string_pretty(&element_to_json(model, a)).expect("json")),
        _ => {
            let mut t = Table::new(&["index", "re", "im"]);
            for (i, c) in a.iter() {
                t.push(vec![model.index_json(i).to_string(), format_rational(&c.re), format_rational(&c.im)]);
            }
            t.render(output)
        }
    }
}

pub fn algebra_list(cfg: &RunConfig) -> String {
    let mut t = Table::new(&["model", "parameters", "description"]);
    for (name, params, desc) in MODELS {
        t.push(vec![name.into(), params.into(), desc.into()]);
    }
    t.render(cfg.output)
}

pub fn product(cfg: &RunConfig, a: &Path, b: &Path) -> CliResult<String> {
    let (da, db) = (read_json(a)?, read_json(b)?);
    let model = build_for_element(&cfg.model, cfg, &da)?;
    with_model!(&model, m => {
        let x = element_from_json(m, &da)?;
        let y = element_from_json(m, &db)?;
        Ok(render_element(m, &multiply(m, &x, &y)?, cfg.output))
    })
}

fn entry_row(m: u32, ell: u64, gamma: String, e: &HEntry, depth: u64) -> Vec<String> {
    let k = if e.squared { 1 } else { m };
    let v = &e.value;
    let exact = match v.exact_value() {
        Some(x) if e.squared => format!("sqrt({})", format_rational(x)),
        Some(x) => format_rational(x),
        None => String::new(),
    };
    let lo = root_presentation(&v.lo, k);
    let hi = match v.hi.as_finite() {
        Some(h) => format!("{:.12e}", root_presentation(h, k)),
        None => "inf".into(),
    };
    let float = if v.is_finite() { format!("{lo:.12e}") } else { "inf".into() };
    vec![m.to_string(), ell.to_string(), gamma, exact, float, format!("{lo:.12e}"), hi, depth.max(v.depth).to_string()]
}

const SEMINORM_COLUMNS: [&str; 8] = ["m", "ell", "gamma", "h_exact", "seminorm_float", "bracket_lo", "bracket_hi", "depth"];

fn engine_config(cfg: &RunConfig) -> EngineConfig {
    EngineConfig { rel_tolerance: cfg.tolerance.clone(), max_depth: u64::from(cfg.depth), ..EngineConfig::default() }
}

fn seminorm_table<M: StructureModel>(model: &M, a: &Element<M::Index>, cfg: &RunConfig, m_max: u32) -> CliResult<Table> {
    let engine = HEngine::with_config(model, a, engine_config(cfg))?;
    let mut gammas: Vec<M::Index> = Vec::new();
    for r in 0..=u64::from(cfg.gamma_max) {
        match model.indices_with_rank(r) {
            Some(mut v) => gammas.append(&mut v),
            None => {
                gammas = a.support().cloned().collect();
                gammas.extend(model.unit());
                gammas.sort();
                gammas.dedup();
                break;
            }
        }
    }
    let mut t = Table::new(&SEMINORM_COLUMNS);
    for m in 0..=m_max {
        for ell in 0..(1u64 << m) {
            for g in &gammas {
                match engine.h(m, ell, g) {
                    Ok(e) => t.push(entry_row(m, ell, model.index_json(g).to_string(), &e, 0)),
                    Err(quantdisk::Error::Divergent(_)) => {
                        t.push(vec![m.to_string(), ell.to_string(), model.index_json(g).to_string(), String::new(), "inf".into(), String::new(), "inf".into(), String::new()])
                    }
                    Err(e) => return Err(e.into()),
                }
            }
        }
    }
    Ok(t)
}

fn r_table(cone: &ConeModel, a: &Element<quantdisk::disk::IndexTriple>, r: &Rational, cfg: &RunConfig, m_max: u32) -> CliResult<Table> {
    let engine = HEngine::with_config(cone, a, engine_config(cfg))?;
    let mut t = Table::new(&SEMINORM_COLUMNS);
    for m in 0..=m_max {
        for ell in 0..(1u64 << m) {
            let b = seminorm_r(&engine, m, ell, r, cfg.depth)?;
            let e = HEntry { m, ell, value: b, squared: false };
            t.push(entry_row(m, ell, format!("R={}", format_rational(r)), &e, u64::from(cfg.depth)));
        }
    }
    Ok(t)
}

pub fn seminorm(cfg: &RunConfig, file: &Path, m_max: u32, r: Option<&str>) -> CliResult<String> {
    let doc = read_json(file)?;
    let model = build_for_element(&cfg.model, cfg, &doc)?;
    let table = match (r, &model) {
        (Some(r), AnyModel::Cone(c)) => {
            let r = parse_rational(r)?;
            r_table(c, &element_from_json(c, &doc)?, &r, cfg, m_max)?
        }
        (Some(r), AnyModel::Disk(d)) => {
            let r = parse_rational(r)?;
            let lifted = lift_element(&element_from_json(d, &doc)?);
            r_table(d.cone(), &lifted, &r, cfg, m_max)?
        }
        (Some(_), _) => return Err(CliError::Usage("--R applies to the cone and disk models".into())),
        (None, model) => with_model!(model, m => seminorm_table(m, &element_from_json(m, &doc)?, cfg, m_max)?),
    };
    Ok(table.render(cfg.output))
}

fn parse_point(v: &Value, at: &str) -> CliResult<Vec<GaussRat>> {
    let xs = v.as_array().ok_or_else(|| CliError::Usage(format!("{at}: a point is an array of coordinates")))?;
    Ok(xs.iter().enumerate().map(|(j, x)| parse_gauss(x, &format!("{at}[{j}]"))).collect::<quantdisk::Result<Vec<_>>>()?)
}

pub fn eval(cfg: &RunConfig, file: &Path, points: &Path) -> CliResult<String> {
    let doc = read_json(file)?;
    let pts = read_json(points)?;
    let pts = pts.as_array().ok_or_else(|| CliError::Usage("point file must hold an array of points".into()))?;
    let model = build_for_element(&cfg.model, cfg, &doc)?;
    let mut t = Table::new(&["point", "re", "im", "re_float", "im_float"]);
    for (k, p) in pts.iter().enumerate() {
        let coords = parse_point(p, &format!("points[{k}]"))?;
        let label = serde_json::to_string(&coords.iter().map(quantdisk::io::gauss_json).collect::<Vec<_>>()).expect("json");
        let value = match &model {
            AnyModel::Cone(c) => eval_upstairs(&element_from_json(c, &doc)?, &ConePoint::new(coords)?, &cfg.hbar)?,
            AnyModel::Disk(d) => eval_disk(&element_from_json(d, &doc)?, &DiskPoint::new(coords)?, &cfg.hbar)?,
            _ => return Err(CliError::Usage("eval applies to the cone and disk models".into())),
        };
        let mut row = vec![label];
        row.extend(gauss_cells(&value));
        t.push(row);
    }
    Ok(t.render(cfg.output))
}

fn disk_model(cfg: &RunConfig) -> CliResult<DiskModel> {
    Ok(DiskModel::new(cfg.n, cfg.hbar.clone())?)
}

fn read_vector(path: &Path) -> CliResult<GnsVector> {
    let v = read_json(path)?;
    let terms = v.get("terms").cloned().unwrap_or(v);
    Ok(parse_gns_vector(&terms)?)
}

fn render_vector(model: &DiskModel, psi: &GnsVector, output: Output) -> String {
    match output {
        Output::Json => {
            let v = json!({ "model": model.name(), "terms": gns_vector_json(psi) });
            format!("{}\n", serde_json::to_string_pretty(&v).expect("json"))
        }
        _ => {
            let mut t = Table::new(&["Q", "re", "im"]);
            for (q, c) in psi.iter() {
                t.push(vec![serde_json::to_string(q).expect("json"), format_rational(&c.re), format_rational(&c.im)]);
            }
            t.render(output)
        }
    }
}

fn scalar(label: &str, c: &GaussRat, output: Output) -> String {
    let mut t = Table::new(&["quantity", "re", "im", "re_float", "im_float"]);
    let mut row = vec![label.to_string()];
    row.extend(gauss_cells(c));
    t.push(row);
    t.render(output)
}

pub fn gns_inner_cmd(cfg: &RunConfig, psi: &Path, phi: &Path) -> CliResult<String> {
    let v = gns_inner(&read_vector(psi)?, &read_vector(phi)?, &cfg.hbar)?;
    Ok(scalar("inner", &v, cfg.output))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum RepMethod {
    Closed,
    Definitional,
    /// Both paths, failing unless they agree.
    Both,
}

pub fn gns_rep_cmd(cfg: &RunConfig, a: &Path, psi: &Path, method: RepMethod) -> CliResult<String> {
    let model = disk_model(cfg)?;
    let a = element_from_json(&model, &read_json(a)?)?;
    let psi = read_vector(psi)?;
    let out = match method {
        RepMethod::Closed => gns_rep_closed_form(&model, &a, &psi)?,
        RepMethod::Definitional => gns_rep_definitional(&model, &a, &psi)?,
        RepMethod::Both => {
            let c = gns_rep_closed_form(&model, &a, &psi)?;
            if c != gns_rep_definitional(&model, &a, &psi)? {
                return Err(CliError::CheckFailed { suite: "gns rep".into(), failed: 1, checked: 1 });
            }
            c
        }
    };
    Ok(render_vector(&model, &out, cfg.output))
}

pub fn gns_coherent_cmd(cfg: &RunConfig, point: &str, cap: Option<u32>) -> CliResult<String> {
    let model = disk_model(cfg)?;
    let v: Value = serde_json::from_str(point).map_err(|source| CliError::Json { path: "--point".into(), source })?;
    let w = DiskPoint::new(parse_point(&v, "--point")?)?;
    if w.n() != model.n() {
        return Err(CliError::Usage(format!("--point has {} coordinates, expected {}", w.n(), model.n())));
    }
    Ok(render_vector(&model, &coherent_vector(&w, cap.unwrap_or(cfg.gamma_max)), cfg.output))
}

pub fn gns_positivity_cmd(cfg: &RunConfig, a: &Path) -> CliResult<String> {
    let model = disk_model(cfg)?;
    let a = element_from_json(&model, &read_json(a)?)?;
    let v = positivity_check(&model, &a)?;
    Ok(scalar("delta0(a* a)", &GaussRat::real(v), cfg.output))
}
