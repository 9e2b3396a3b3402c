use hlsnake::algebra::{parse_monomial, Monomial};
use hlsnake::hl::check_hl;
use hlsnake::quiver::HeightFunction;

use crate::{CliError, Job};

fn input<E: std::fmt::Display>(what: &str) -> impl FnOnce(E) -> CliError + '_ {
    move |e| CliError::Input(format!("{what}: {e}"))
}

pub fn height(job: &Job) -> Result<HeightFunction, CliError> {
    if let Some(s) = &job.xi {
        let vals = s
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<i64>().map_err(input(&format!("bad xi value {t:?}"))))
            .collect::<Result<Vec<_>, _>>()?;
        let h = HeightFunction::new(vals).map_err(input("invalid xi"))?;
        if let Some(n) = job.n {
            if n != h.n() {
                return Err(CliError::Input(format!("--n {n} but xi has {} values", h.n())));
            }
        }
        return Ok(h);
    }
    if let Some(p) = &job.xi_file {
        let text = std::fs::read_to_string(p).map_err(input(&format!("cannot read {}", p.display())))?;
        return serde_json::from_str(&text).map_err(input("invalid xi file"));
    }
    Err(CliError::Input("this command needs --xi or --xi-file".into()))
}

pub fn interval(job: &Job, h: &HeightFunction) -> Result<(usize, usize), CliError> {
    let s = job.interval.as_deref().ok_or_else(|| CliError::Input("this command needs --interval i:j".into()))?;
    let (a, b) = s.split_once(':').ok_or_else(|| CliError::Input(format!("interval {s:?} is not of the form i:j")))?;
    let i: usize = a.trim().parse().map_err(input("bad interval start"))?;
    let j: usize = b.trim().parse().map_err(input("bad interval end"))?;
    h.check_interval(i, j).map_err(input("invalid interval"))?;
    Ok((i, j))
}

pub fn monomial(job: &Job) -> Result<(usize, Monomial), CliError> {
    let s = job.monomial.as_deref().ok_or_else(|| CliError::Input("this command needs --monomial".into()))?;
    let m = parse_monomial(s).map_err(input("bad monomial"))?;
    let n = match job.n {
        Some(n) => n,
        None => m
            .iter()
            .filter_map(|(g, _)| match g {
                hlsnake::algebra::Generator::Y(i, _) => Some(i as usize),
                _ => None,
            })
            .max()
            .unwrap_or(1),
    };
    check_hl(&m, n).map_err(input("not an HL monomial"))?;
    Ok((n, m))
}
