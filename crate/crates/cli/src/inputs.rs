use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use plcat::ainfty::DirectedCategory;
use plcat::formats::{parse_flow, parse_qcat, parse_tw, parse_zconf};
use plcat::morse::FlowData;
use plcat::twcx::TwistedComplex;
use plcat::zerodim::ZeroConfig;
use plcat::Grading;

use crate::report::RunReport;
use crate::Global;

/// Overrides the directory searched for inputs not found as given.
pub const FIXTURE_ENV: &str = "PLCAT_FIXTURES";

fn resolve(path: &str) -> Option<PathBuf> {
    let p = Path::new(path);
    if p.exists() {
        return Some(p.to_path_buf());
    }
    let dir = std::env::var_os(FIXTURE_ENV)?;
    let dir = Path::new(&dir);
    let name = p.strip_prefix("fixtures").unwrap_or(p);
    [dir.join(name), dir.join(p.file_name()?)].into_iter().find(|c| c.exists())
}

pub fn read(path: &str, report: &mut RunReport) -> Result<String> {
    let p = resolve(path).with_context(|| format!("cannot find `{path}`"))?;
    let text = std::fs::read_to_string(&p).with_context(|| format!("cannot read `{}`", p.display()))?;
    report.add_input(path, &text);
    Ok(text)
}

pub fn grading(g: &Global) -> Result<Grading> {
    match Grading::parse(&g.grading) {
        Some(x) => Ok(x),
        None => bail!("unknown grading `{}`, expected z or z2", g.grading),
    }
}

pub fn category(path: &str, g: &Global, report: &mut RunReport) -> Result<DirectedCategory> {
    let text = read(path, report)?;
    let cat = parse_qcat(&text).with_context(|| format!("in `{path}`"))?.category().with_context(|| format!("in `{path}`"))?;
    let want = grading(g)?;
    Ok(if cat.grading_group() == want { cat } else { cat.with_grading(want) })
}

/// A `.tw` file, or the name of an object optionally followed by `[shift]`.
pub fn complex(cat: &DirectedCategory, arg: &str, report: &mut RunReport) -> Result<TwistedComplex> {
    let (name, shift) = match arg.strip_suffix(']').and_then(|s| s.split_once('[')) {
        Some((n, s)) => (n, s.parse::<i64>().with_context(|| format!("bad shift in `{arg}`"))?),
        None => (arg, 0),
    };
    if let Ok(i) = cat.object_index(name) {
        return Ok(TwistedComplex::object(cat, i).shift(shift));
    }
    let text = read(arg, report)?;
    parse_tw(cat, &text).with_context(|| format!("in `{arg}`"))
}

pub fn config(path: &str, report: &mut RunReport) -> Result<ZeroConfig> {
    let text = read(path, report)?;
    parse_zconf(&text).with_context(|| format!("in `{path}`"))
}

pub fn flow(path: &str, report: &mut RunReport) -> Result<FlowData> {
    let text = read(path, report)?;
    parse_flow(&text).with_context(|| format!("in `{path}`"))
}

pub fn int_list(s: &str) -> Result<Vec<i64>> {
    s.split(',').filter(|t| !t.trim().is_empty()).map(|t| t.trim().parse().with_context(|| format!("bad number `{t}`"))).collect()
}
