use std::fmt::Write as _;

use hlsnake::algebra::{Monomial, Poly};
use hlsnake::expansion::{self, Expansion};
use hlsnake::gamma::{empirical_bijection_check, gamma_count_recursive, gamma_set, gamma_table};
use hlsnake::hl::{check_hl, dictionary, reconstruct};
use hlsnake::oracle::{verify_recursion, ClusterOracle, Root};
use hlsnake::qchar::{self, Factor, QChar};
use hlsnake::quiver::{build_quiver, statistics, stats_table, HeightFunction};
use hlsnake::snake::{build_snake_graph, numerator, render_ascii, render_svg, render_tikz, sign_function};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::input::{height, interval, monomial};
use crate::{CliError, Format, Job, Outcome};

/// Rank of the random height functions drawn by `verify --samples`.
const RANDOM_RANK: usize = 10;

fn ok(text: String) -> Result<Outcome, CliError> {
    Ok(Outcome { text, mismatch: None })
}

fn unsupported(cmd: &str, f: Format) -> CliError {
    CliError::Input(format!("{cmd} does not support --format {f:?}").to_lowercase())
}

fn to_json(v: Value) -> String {
    serde_json::to_string_pretty(&v).unwrap() + "\n"
}

fn internal<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Mismatch(e.to_string())
}

fn strings(ms: &[Monomial]) -> Vec<String> {
    ms.iter().map(|m| m.to_string()).collect()
}

fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn quiver(job: &Job) -> Result<Outcome, CliError> {
    let h = height(job)?;
    let q = build_quiver(&h);
    match job.format {
        Format::Text => {
            let mut s = stats_table(&h);
            let _ = writeln!(s, "\nsources/sinks: {:?}", h.sources_sinks());
            let _ = writeln!(s, "arrows: {q}");
            ok(s)
        }
        Format::Dot => ok(q.to_dot()),
        Format::Json => ok(to_json(json!({
            "n": h.n(),
            "xi": h.values(),
            "stats": statistics(&h).iter().map(|&(i, d, b, bar, ss)| json!({
                "i": i, "diamond": d, "bullet": b, "bar": bar, "source_or_sink": ss
            })).collect::<Vec<_>>(),
            "arrows": q.arrows().map(|(a, b, m)| json!([a.to_string(), b.to_string(), m])).collect::<Vec<_>>(),
        }))),
        Format::Csv => {
            let mut s = String::from("i,xi,diamond,bullet,bar,source_or_sink\n");
            for (i, d, b, bar, ss) in statistics(&h) {
                let _ = writeln!(s, "{i},{},{d},{b},{bar},{ss}", h.xi(i));
            }
            ok(s)
        }
        f => Err(unsupported("quiver", f)),
    }
}

pub fn snake(job: &Job) -> Result<Outcome, CliError> {
    let h = height(job)?;
    let (i, j) = interval(job, &h)?;
    let g = build_snake_graph(&h, i, j).map_err(internal)?;
    let ms = g.matchings();
    let chosen = match job.matching {
        Some(k) if k >= ms.len() => {
            return Err(CliError::Input(format!("matching {k} out of range: {} matchings", ms.len())))
        }
        Some(k) => Some(&ms[k]),
        None => None,
    };
    let sd = sign_function(&g);
    match job.format {
        Format::Text => {
            let mut s = render_ascii(&g, chosen);
            let _ = writeln!(s, "\ntiles {}..{}, signs {}, runs {:?}", i, j, sd.render(), sd.runs);
            let _ = writeln!(s, "perfect matchings: {} (N = {})", ms.len(), numerator(&sd.runs));
            ok(s)
        }
        Format::Tikz => ok(render_tikz(&g, chosen)),
        Format::Svg => ok(render_svg(&g, chosen)),
        Format::Csv => ok(matching_csv(&expansion::expand(&h, i, j).map_err(internal)?)),
        Format::Json => ok(to_json(json!({
            "interval": [i, j],
            "tiles": g.tiles(),
            "tile_labels": g.tile_labels(),
            "edge_labels": (0..g.edges().len()).map(|e| g.edge_label(e)).collect::<Vec<_>>(),
            "signs": sd.render(),
            "runs": sd.runs,
            "matchings": ms.len(),
        }))),
        f => Err(unsupported("snake", f)),
    }
}

fn matching_csv(e: &Expansion) -> String {
    let mut s = String::from("index,x_weight,y_weight,enclosed,term\n");
    for (k, t) in e.terms.iter().enumerate() {
        let enc: String = t.matching.enclosed.iter().map(|&b| if b { '1' } else { '0' }).collect();
        let _ = writeln!(s, "{k},{},{},{enc},{}", t.x_weight, t.y_weight, t.value);
    }
    s
}

/// Oracle comparison shared by `expand --oracle` and `verify`.
fn oracle_check(o: &mut ClusterOracle, e: &Expansion, fault: bool) -> Result<Option<String>, CliError> {
    let mut p = e.polynomial();
    if fault {
        let first = p.monomials().next().cloned();
        if let Some(m) = first {
            p = &p - &Poly::monomial(m);
        }
    }
    let want = o.get(Root::Positive(e.i, e.j)).map_err(internal)?;
    Ok((p != want).then(|| format!("{} [{},{}]: expansion differs from the mutation engine", o.height(), e.i, e.j)))
}

pub fn expand(job: &Job) -> Result<Outcome, CliError> {
    let h = height(job)?;
    let (i, j) = interval(job, &h)?;
    let e = expansion::expand(&h, i, j).map_err(internal)?;
    let x = expansion::extremal_matching(&h, i, j).map_err(internal)?;
    let bij = empirical_bijection_check(&h, i, j).map_err(internal)?;
    let sd = sign_function(&e.graph);
    let mismatch = if job.oracle { oracle_check(&mut ClusterOracle::new(&h), &e, job.inject_fault)? } else { None };
    let agreement = match (job.oracle, &mismatch) {
        (false, _) => "not checked",
        (true, None) => "agrees",
        (true, Some(_)) => "MISMATCH",
    };
    let text = match job.format {
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "x[α_{{{i},{j}}}] for ξ = {h}");
            let _ = writeln!(s, "HL module: L({})", dictionary(&h, i, j));
            let _ = writeln!(s, "runs {:?}, {} perfect matchings", sd.runs, e.terms.len());
            let _ = writeln!(s, "ŷ: {}", strings(&e.yhat).join(", "));
            let _ = writeln!(s, "F|_P = {}", e.tropical);
            let _ = writeln!(s, "terms:");
            for t in &e.terms {
                let _ = writeln!(s, "  {:<40} x(P) = {}, y(P) = {}", t.value.to_string(), t.x_weight, t.y_weight);
            }
            let _ = writeln!(s, "extremal term: {}", x.value);
            let _ = writeln!(s, "highest weight: {}", x.highest);
            let _ = writeln!(s, "lowest weight: {}", x.lowest);
            let _ = writeln!(
                s,
                "|Γ| = {}, Γ terms equal matching terms: {}",
                bij.gamma_size,
                if bij.multisets_equal { "yes" } else { "no" }
            );
            let _ = writeln!(s, "oracle: {agreement}\n");
            s.push_str(&render_ascii(&e.graph, None));
            s
        }
        Format::Csv => matching_csv(&e),
        Format::Tikz => render_tikz(&e.graph, None),
        Format::Json => to_json(json!({
            "xi": h.values(),
            "interval": [i, j],
            "module": dictionary(&h, i, j).to_string(),
            "runs": sd.runs,
            "yhat": strings(&e.yhat),
            "tropical": e.tropical.to_string(),
            "terms": e.terms.iter().map(|t| json!({
                "x_weight": t.x_weight.to_string(),
                "y_weight": t.y_weight.to_string(),
                "value": t.value.to_string(),
            })).collect::<Vec<_>>(),
            "polynomial": e.polynomial().to_string(),
            "extremal": { "value": x.value.to_string(), "highest": x.highest.to_string(), "lowest": x.lowest.to_string() },
            "gamma": { "size": bij.gamma_size, "multisets_equal": bij.multisets_equal },
            "oracle": agreement,
        })),
        f => return Err(unsupported("expand", f)),
    };
    Ok(Outcome { text, mismatch })
}

pub fn gamma(job: &Job) -> Result<Outcome, CliError> {
    let h = height(job)?;
    let (i, j) = interval(job, &h)?;
    let rows = gamma_table(&h, i, j).map_err(internal)?;
    let eps = |v: &[i32]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
    match job.format {
        Format::Text => {
            let cells: Vec<[String; 4]> = rows
                .iter()
                .map(|r| [r.epsilon.clone(), format!("({})", eps(&r.epsilon_prime)), r.m.to_string(), r.f.to_string()])
                .collect();
            let head = ["ε".to_string(), "ε'".into(), "m".into(), "f".into()];
            let w: Vec<usize> =
                (0..4).map(|c| cells.iter().chain([&head]).map(|r| r[c].chars().count()).max().unwrap()).collect();
            let mut s = String::new();
            for r in std::iter::once(&head).chain(&cells) {
                let line: Vec<String> =
                    (0..4).map(|c| format!("{}{}", r[c], " ".repeat(w[c] - r[c].chars().count()))).collect();
                let _ = writeln!(s, "{}", line.join("  ").trim_end());
            }
            let _ = writeln!(s, "|Γ_{{{i},{j}}}| = {}", rows.len());
            ok(s)
        }
        Format::Csv => {
            let mut s = String::from("epsilon,epsilon_prime,m,f\n");
            for r in &rows {
                let _ = writeln!(s, "{},{},{},{}", r.epsilon, csv_field(&eps(&r.epsilon_prime)), r.m, r.f);
            }
            ok(s)
        }
        Format::Json => ok(to_json(json!(rows
            .iter()
            .map(|r| json!({
                "epsilon": r.epsilon,
                "epsilon_prime": r.epsilon_prime,
                "m": r.m.to_string(),
                "f": r.f.to_string(),
            }))
            .collect::<Vec<_>>()))),
        f => Err(unsupported("gamma", f)),
    }
}

fn factor_names(fs: &[Factor]) -> Vec<String> {
    fs.iter().map(|f| format!("L({})", f.highest())).collect()
}

pub fn qchar(job: &Job) -> Result<Outcome, CliError> {
    let (n, m, located) = if job.monomial.is_some() {
        let (n, m) = monomial(job)?;
        (n, m, None)
    } else {
        let h = height(job)?;
        let (i, j) = interval(job, &h)?;
        (h.n(), dictionary(&h, i, j), Some((h, i, j)))
    };
    let q = qchar::qchar_hl_monomial(n, &m).map_err(|e| CliError::Input(e.to_string()))?;
    let decomposition = qchar::decompose(n, &m).map_err(internal)?;
    let hi = qchar::highest_monomials(n, &q);
    let lo = qchar::lowest_monomials(n, &q);
    let mut mismatch = None;
    let mut route = "not checked".to_string();
    if job.oracle {
        // second route through the snake-graph expansion
        let (h, i, j) = match located {
            Some(l) => l,
            None if n >= 2 => {
                let r = reconstruct(&m, n).map_err(internal)?;
                (r.xi, r.i, r.j)
            }
            None => {
                return Err(CliError::Input("--oracle needs rank n >= 2".into()));
            }
        };
        let mut snake_q = if n <= 4 { Some(qchar::qchar_hl_snake(&h, i, j).map_err(internal)?) } else { None };
        if job.inject_fault {
            snake_q = Some(&q + &QChar::one());
        }
        let agree = match &snake_q {
            Some(s) => *s == q,
            None => qchar::routes_agree_mod(&h, i, j, 4, job.seed).map_err(internal)?,
        };
        route = format!(
            "{} ({})",
            if agree { "agrees" } else { "MISMATCH" },
            if snake_q.is_some() { "exact" } else { "mod p" }
        );
        if !agree {
            mismatch = Some(format!("q-character routes differ for {m}"));
        }
    }
    let decomp_json = match &decomposition {
        None => Value::Null,
        Some(d) => {
            let p = qchar::product_qchar(n, &d.product).map_err(internal)?;
            let c = qchar::product_qchar(n, &d.correction).map_err(internal)?;
            json!({
                "product": factor_names(&d.product),
                "product_dimension": qchar::dimension(&p),
                "correction": factor_names(&d.correction),
                "correction_dimension": qchar::dimension(&c),
                "shared": qchar::overlap(&p, &c),
            })
        }
    };
    let text = match job.format {
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "L({m}) on A_{n}");
            let _ = writeln!(s, "terms: {}, dimension: {}", q.len(), qchar::dimension(&q));
            let _ = writeln!(s, "highest: {}", strings(&hi).join(", "));
            let _ = writeln!(s, "lowest: {}", strings(&lo).join(", "));
            if let Value::Object(d) = &decomp_json {
                let _ = writeln!(
                    s,
                    "decomposition: {} [{} monomials] - {} [{} monomials], {} shared",
                    d["product"].as_array().unwrap().iter().map(|v| v.as_str().unwrap()).collect::<Vec<_>>().join(" "),
                    d["product_dimension"],
                    d["correction"]
                        .as_array()
                        .unwrap()
                        .iter()
                        .map(|v| v.as_str().unwrap())
                        .collect::<Vec<_>>()
                        .join(" "),
                    d["correction_dimension"],
                    d["shared"],
                );
            }
            let _ = writeln!(s, "second route: {route}");
            let _ = writeln!(s, "q-character:");
            for (mono, c) in q.terms().rev() {
                if *c == 1 {
                    let _ = writeln!(s, "  {mono}");
                } else {
                    let _ = writeln!(s, "  {c} {mono}");
                }
            }
            s
        }
        Format::Csv => {
            let mut s = String::from("monomial,multiplicity\n");
            for (mono, c) in q.terms().rev() {
                let _ = writeln!(s, "{mono},{c}");
            }
            s
        }
        Format::Json => to_json(json!({
            "module": m.to_string(),
            "n": n,
            "terms": q.terms().rev().map(|(mono, c)| json!([mono.to_string(), c])).collect::<Vec<_>>(),
            "dimension": qchar::dimension(&q),
            "highest": strings(&hi),
            "lowest": strings(&lo),
            "decomposition": decomp_json,
            "second_route": route,
        })),
        f => return Err(unsupported("qchar", f)),
    };
    Ok(Outcome { text, mismatch })
}

#[derive(Default)]
struct Tally {
    checked: usize,
    failures: Vec<String>,
}

impl Tally {
    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(what());
        }
    }
}

const CHECKS: [&str; 8] = [
    "|Γ| = |Match| = N[runs]",
    "expansion = mutation engine",
    "continued fraction = direct F",
    "tropical F = y(P+) (+) 1",
    "extremal matching unique",
    "product identity",
    "HL round trip",
    "q-character routes (mod p)",
];

fn verify_height(h: &HeightFunction, job: &Job, tallies: &mut [Tally]) -> Result<(), CliError> {
    let n = h.n();
    let mut o = ClusterOracle::new(h);
    for i in 1..=n {
        for j in i..=n {
            let tag = || format!("{h} [{i},{j}]");
            let g = build_snake_graph(h, i, j).map_err(internal)?;
            let m = g.matchings().len();
            let gs = gamma_set(h, i, j).len();
            let num = numerator(&sign_function(&g).runs);
            tallies[0].record(gs == m && num == m.into() && gamma_count_recursive(h, i, j) == m as u128, tag);
            let e = expansion::expand(h, i, j);
            let Ok(e) = e else {
                tallies[1].record(false, || format!("{}: {}", tag(), e.unwrap_err()));
                continue;
            };
            let mm = oracle_check(&mut o, &e, job.inject_fault)?;
            tallies[1].record(mm.is_none(), tag);
            tallies[2].record(expansion::f_polynomial_cf(&g) == expansion::f_polynomial_direct(&g), tag);
            tallies[3].record(expansion::tropical_f(h, i, j).is_ok(), tag);
            tallies[4].record(expansion::extremal_matching(h, i, j).is_ok(), tag);
            if j < n && h.is_source_or_sink(j) {
                let r = verify_recursion(h, i, j).map_err(internal)?;
                tallies[5].record(r.identity_holds && r.route_matches, tag);
            }
            let d = dictionary(h, i, j);
            let rt = check_hl(&d, n).is_ok()
                && reconstruct(&d, n).map(|r| dictionary(&r.xi, r.i, r.j) == d).unwrap_or(false);
            tallies[6].record(rt, tag);
            if job.oracle && n <= 5 {
                tallies[7].record(qchar::routes_agree_mod(h, i, j, 2, job.seed).map_err(internal)?, tag);
            }
        }
    }
    Ok(())
}

pub fn verify(job: &Job) -> Result<Outcome, CliError> {
    let max = job.n.unwrap_or(5);
    if !(2..=8).contains(&max) {
        return Err(CliError::Input(format!("verify sweeps ranks 2..=n with 2 <= n <= 8, got {max}")));
    }
    let mut tallies: Vec<Tally> = CHECKS.iter().map(|_| Tally::default()).collect();
    let mut heights = 0;
    for n in 2..=max {
        for h in HeightFunction::all_normalized(n) {
            verify_height(&h, job, &mut tallies)?;
            heights += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(job.seed);
    for _ in 0..job.samples {
        let steps: Vec<bool> = (0..RANDOM_RANK - 1).map(|_| rng.gen()).collect();
        let h = HeightFunction::from_steps(rng.gen_range(-5..=5), &steps).map_err(internal)?;
        verify_height(&h, job, &mut tallies)?;
        heights += 1;
    }
    let failed: Vec<String> = CHECKS
        .iter()
        .zip(&tallies)
        .filter(|(_, t)| !t.failures.is_empty())
        .map(|(c, t)| format!("{c}: {}", t.failures[0]))
        .collect();
    let text = match job.format {
        Format::Text => {
            let mut s =
                format!("{heights} height functions (ranks 2..={max}, {} random at rank {RANDOM_RANK})\n", job.samples);
            for (c, t) in CHECKS.iter().zip(&tallies) {
                if t.checked == 0 {
                    let _ = writeln!(s, "  skip  {c}");
                } else if t.failures.is_empty() {
                    let _ = writeln!(s, "  ok    {c} ({} cases)", t.checked);
                } else {
                    let _ = writeln!(
                        s,
                        "  FAIL  {c}: {} of {} failed, first {}",
                        t.failures.len(),
                        t.checked,
                        t.failures[0]
                    );
                }
            }
            s
        }
        Format::Json => to_json(json!({
            "heights": heights,
            "max_rank": max,
            "samples": job.samples,
            "seed": job.seed,
            "checks": CHECKS.iter().zip(&tallies).map(|(c, t)| json!({
                "name": c, "cases": t.checked, "failures": t.failures,
            })).collect::<Vec<_>>(),
        })),
        f => return Err(unsupported("verify", f)),
    };
    Ok(Outcome { text, mismatch: (!failed.is_empty()).then(|| failed.join("; ")) })
}
