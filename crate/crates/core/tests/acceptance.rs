use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::Instant;

use hlsnake::algebra::{parse_monomial, Generator, Monomial, Poly, TropicalElement};
use hlsnake::expansion::*;
use hlsnake::gamma::*;
use hlsnake::hl::*;
use hlsnake::oracle::*;
use hlsnake::qchar::*;
use hlsnake::quiver::*;
use hlsnake::snake::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

const MATCHINGS: &str = include_str!("data/matchings_1_7.txt");
const EXPANSION: &str = include_str!("data/expansion_1_7.txt");
const GAMMA: &str = include_str!("data/gamma_1_7.txt");
const STATS: &str = include_str!("data/stats_example.txt");

type Check = Result<String, String>;

fn example() -> HeightFunction {
    HeightFunction::new(vec![-4, -5, -6, -5, -4, -3, -4, -5, -6]).unwrap()
}

fn rows(s: &str) -> impl Iterator<Item = Vec<&str>> {
    s.lines().filter(|l| !l.trim().is_empty() && !l.starts_with('#')).map(|l| l.split('|').map(str::trim).collect())
}

fn mono(s: &str) -> Monomial {
    parse_monomial(s).unwrap()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Every interval of every normalised height function with `2 <= n <= max`.
fn sweep(max: usize) -> Vec<(HeightFunction, usize, usize)> {
    let mut out = Vec::new();
    for n in 2..=max {
        for h in HeightFunction::all_normalized(n) {
            for i in 1..=n {
                for j in i..=n {
                    out.push((h.clone(), i, j));
                }
            }
        }
    }
    out
}

fn first_failure<T: Sync>(items: &[T], f: impl Fn(&T) -> Result<(), String> + Sync) -> Result<(), String> {
    let mut errs: Vec<String> = items.par_iter().filter_map(|t| f(t).err()).collect();
    let n = errs.len();
    if n == 0 {
        return Ok(());
    }
    errs.sort();
    Err(format!("{n} failures, first: {}", errs[0]))
}

fn c1_quiver_example() -> Check {
    let h = example();
    let table = stats_table(&h);
    ensure(table == STATS, || format!("stats table differs:\n{table}"))?;
    use Vertex::{Frozen as F, Mutable as M};
    let mut expected = vec![
        (M(2), M(1)),
        (M(1), F(2)),
        (M(2), M(3)),
        (M(3), M(4)),
        (M(3), F(3)),
        (M(4), M(5)),
        (M(4), F(4)),
        (M(5), F(5)),
        (M(6), M(5)),
        (M(6), F(7)),
        (M(7), M(6)),
        (M(7), F(8)),
        (M(8), M(7)),
        (M(8), M(9)),
        (M(9), F(9)),
        (F(1), M(1)),
        (F(2), M(2)),
        (F(4), M(3)),
        (F(5), M(4)),
        (F(6), M(6)),
        (F(7), M(7)),
        (F(8), M(8)),
    ];
    expected.sort();
    let q = build_quiver(&h);
    let mut got: Vec<_> = q
        .arrows()
        .map(|(a, b, k)| {
            assert_eq!(k, 1);
            (a, b)
        })
        .collect();
    got.sort();
    ensure(got == expected, || format!("arrow set differs: {got:?}"))?;
    Ok("stats table and 22 arrows match".into())
}

fn c2_snake_example() -> Check {
    let h = example();
    let g = build_snake_graph(&h, 1, 7).map_err(|e| e.to_string())?;
    let sd = sign_function(&g);
    ensure(sd.runs == [2, 3, 3], || format!("runs {:?}", sd.runs))?;
    let ms = g.matchings();
    ensure(ms.len() == 23, || format!("{} matchings", ms.len()))?;
    let mut got: Vec<(Monomial, Monomial)> = ms.iter().map(|m| (g.x_weight(m), g.y_weight(m))).collect();
    let mut want: Vec<(Monomial, Monomial)> = rows(MATCHINGS).map(|r| (mono(r[0]), mono(r[1]))).collect();
    got.sort();
    want.sort();
    ensure(got == want, || "matching weights differ from the table".into())?;
    let e = expand(&h, 1, 7).map_err(|e| e.to_string())?;
    ensure(e.tropical == mono("x'3^-1x'8^-1"), || format!("tropical {}", e.tropical))?;
    let display: Poly = EXPANSION
        .lines()
        .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
        .map(|l| {
            let (a, b) = l.split_once('/').unwrap();
            Poly::monomial(mono(a).div(&mono(b)))
        })
        .fold(Poly::zero(), |a, b| a + b);
    ensure(display.len() == 23, || "display has repeated terms".into())?;
    ensure(e.polynomial() == display, || "expansion differs from the display".into())?;
    Ok("runs (2,3,3), 23 matchings, F|_P = 1/(x'3 x'8), expansion equal".into())
}

fn c3_gamma_table() -> Check {
    let h = example();
    let t = gamma_table(&h, 1, 7).map_err(|e| e.to_string())?;
    let mut got: Vec<(String, Vec<i32>, Monomial, Monomial)> =
        t.into_iter().map(|r| (r.epsilon, r.epsilon_prime, r.m, r.f)).collect();
    let mut want: Vec<(String, Vec<i32>, Monomial, Monomial)> = rows(GAMMA)
        .map(|r| (r[0].replace(',', ""), r[1].split(',').map(|v| v.parse().unwrap()).collect(), mono(r[2]), mono(r[3])))
        .collect();
    got.sort();
    want.sort();
    ensure(want.len() == 23, || "fixture rows".into())?;
    ensure(got == want, || format!("{} rows, differs from table", got.len()))?;
    Ok("23 rows of (ε, ε', m, f) match".into())
}

fn c4_counting() -> Check {
    let all = sweep(7);
    first_failure(&all, |(h, i, j)| {
        let g = build_snake_graph(h, *i, *j).map_err(|e| e.to_string())?;
        let gamma = gamma_set(h, *i, *j).len();
        let matchings = g.matchings().len();
        let n = numerator(&sign_function(&g).runs);
        ensure(gamma == matchings && n == matchings.into() && gamma_count_recursive(h, *i, *j) == gamma as u128, || {
            format!("{h} [{i},{j}]: Γ {gamma}, Match {matchings}, N {n}")
        })
    })?;
    Ok(format!("{} intervals, n <= 7", all.len()))
}

fn c5_oracle() -> Check {
    let mut jobs: Vec<HeightFunction> = (2..=7).flat_map(HeightFunction::all_normalized).collect();
    let small = jobs.len();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..200 {
        let steps: Vec<bool> = (0..9).map(|_| rng.gen()).collect();
        jobs.push(HeightFunction::from_steps(0, &steps).unwrap());
    }
    first_failure(&jobs, |h| {
        let mut o = ClusterOracle::new(h);
        for i in 1..=h.n() {
            for j in i..=h.n() {
                let a = expand(h, i, j).map_err(|e| e.to_string())?.polynomial();
                let b = o.get(Root::Positive(i, j)).map_err(|e| e.to_string())?;
                ensure(a == b, || format!("{h} [{i},{j}]"))?;
            }
        }
        Ok(())
    })?;
    Ok(format!("{small} height functions n <= 7 and 200 random at n = 10"))
}

fn c6_dual_routes() -> Check {
    let all = sweep(7);
    let dual = std::sync::atomic::AtomicUsize::new(0);
    first_failure(&all, |(h, i, j)| {
        let g = build_snake_graph(h, *i, *j).map_err(|e| e.to_string())?;
        ensure(f_polynomial_cf(&g) == f_polynomial_direct(&g), || format!("cf {h} [{i},{j}]"))?;
        if let Some((a, b)) = dual_recursion_sides(&g) {
            dual.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
            ensure(a == b, || format!("dual {h} [{i},{j}]"))?;
        }
        Ok(())
    })?;
    Ok(format!("{} intervals, dual recursion on {}", all.len(), dual.into_inner()))
}

fn c7_tropical() -> Check {
    let all = sweep(7);
    first_failure(&all, |(h, i, j)| {
        let g = build_snake_graph(h, *i, *j).map_err(|e| e.to_string())?;
        let yh = yhat(h, *i, *j);
        // coordinatewise minimum over every matching, written out by hand
        let mut min: BTreeMap<Generator, i32> = BTreeMap::new();
        let ms = g.matchings();
        let vals: Vec<Monomial> = ms.iter().map(|m| substitute_yhat(&g.y_weight(m), *i, &yh)).collect();
        let gens: Vec<Generator> = vals.iter().flat_map(|m| m.iter().map(|(g, _)| g)).collect();
        for gen in gens {
            let v = vals.iter().map(|m| m.exponent(gen)).min().unwrap();
            if v != 0 {
                min.insert(gen, v);
            }
        }
        let direct = Monomial::from_pairs(min);
        let top = TropicalElement::from_monomial(&substitute_yhat(&g.y_weight(&g.maximal_matching()), *i, &yh));
        let bound = top.oplus(&TropicalElement::one()).to_monomial();
        ensure(direct == bound, || format!("{h} [{i},{j}]: {direct} vs {bound}"))?;
        let t = tropical_f(h, *i, *j).map_err(|e| e.to_string())?;
        ensure(t.to_monomial() == direct, || format!("tropical_f {h} [{i},{j}]"))
    })?;
    Ok(format!("{} intervals", all.len()))
}

fn c8_extremal() -> Check {
    let h = example();
    let x = extremal_matching(&h, 1, 7).map_err(|e| e.to_string())?;
    ensure(x.value == mono("x'1x'3x'6x8x1^-1x3^-1x6^-1"), || format!("value {}", x.value))?;
    ensure(x.highest == mono("Y[1,-3]Y[3,-7]Y[6,-2]Y[8,-6]"), || format!("highest {}", x.highest))?;
    ensure(x.lowest == mono("Y[2,4]^-1Y[4,8]^-1Y[7,3]^-1Y[9,7]^-1"), || format!("lowest {}", x.lowest))?;
    let all = sweep(7);
    first_failure(&all, |(h, i, j)| {
        extremal_matching(h, *i, *j).map(|_| ()).map_err(|e| format!("{h} [{i},{j}]: {e}"))
    })?;
    Ok(format!("example matches; unique extremal term on {} intervals", all.len()))
}

fn c9_recursion() -> Check {
    let all: Vec<_> = sweep(7).into_iter().filter(|(h, _, j)| *j < h.n() && h.is_source_or_sink(*j)).collect();
    first_failure(&all, |(h, i, j)| {
        let r = verify_recursion(h, *i, *j).map_err(|e| e.to_string())?;
        ensure(r.identity_holds && r.route_matches, || format!("{h} [{i},{j}]: {r:?}"))
    })?;
    Ok(format!("{} admissible (ξ, i, j)", all.len()))
}

fn c10_product() -> Check {
    let n = 4;
    let q12 = qchar_hl_monomial(n, &mono("Y[1,-7]Y[2,-4]")).map_err(|e| e.to_string())?;
    let p1 = &q12 * &fundamental(n, 3, -7);
    let p2 = &kr2(n, 1, -7) * &fundamental(n, 4, -6);
    ensure(dimension(&p1) == 400, || format!("first product {}", dimension(&p1)))?;
    ensure(overlap(&p1, &p2) == 75, || format!("overlap {}", overlap(&p1, &p2)))?;
    let diff = &p1 - &p2;
    ensure(diff.has_nonnegative_coefficients(), || "negative multiplicity".into())?;
    let top = mono("Y[1,-7]Y[2,-4]Y[3,-7]");
    ensure(highest_monomials(n, &diff) == vec![top.clone()], || "highest weight".into())?;
    let direct = qchar_hl_monomial(n, &top).map_err(|e| e.to_string())?;
    ensure(direct == diff, || "difference is not the simple q-character".into())?;
    Ok(format!("400 monomials, 75 shared, difference of dimension {}", dimension(&diff)))
}

fn c11_round_trip() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..500 {
        let n = rng.gen_range(2..=12);
        let steps: Vec<bool> = (0..n - 1).map(|_| rng.gen()).collect();
        let h = HeightFunction::from_steps(rng.gen_range(-6..=6), &steps).unwrap();
        let i = rng.gen_range(1..=n);
        let j = rng.gen_range(i..=n);
        let m = dictionary(&h, i, j);
        let r = reconstruct(&m, n).map_err(|e| format!("{h} [{i},{j}] {m}: {e}"))?;
        ensure(dictionary(&r.xi, r.i, r.j) == m, || format!("{h} [{i},{j}] {m}"))?;
    }
    let all = sweep(7);
    first_failure(&all, |(h, i, j)| {
        let m = dictionary(h, *i, *j);
        let r = reconstruct(&m, h.n()).map_err(|e| format!("{h} [{i},{j}] {m}: {e}"))?;
        ensure(dictionary(&r.xi, r.i, r.j) == m, || format!("{h} [{i},{j}] {m}"))?;
        ensure(check_hl(&m, h.n()).is_ok(), || format!("{m} not HL"))
    })?;
    Ok(format!("500 random shapes and {} swept intervals", all.len()))
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, t| acc * (n - t) / (t + 1))
}

/// Two-column tableaux of height `i` over `1..=alphabet`, counted by brute force.
fn two_column_ssyt(alphabet: u32, i: u32) -> usize {
    fn subsets(alphabet: u32, k: u32) -> Vec<Vec<u32>> {
        (0u32..1 << alphabet)
            .filter(|s| s.count_ones() == k)
            .map(|s| (0..alphabet).filter(|b| s >> b & 1 == 1).collect())
            .collect()
    }
    let cols = subsets(alphabet, i);
    cols.iter().map(|a| cols.iter().filter(|b| a.iter().zip(b.iter()).all(|(x, y)| x <= y)).count()).sum()
}

fn c12_qchar() -> Check {
    for n in 1..=6usize {
        for i in 1..=n as u32 {
            let f = fundamental(n, i, 0);
            ensure(f.len() as u64 == binomial(n as u64 + 1, i as u64), || format!("fundamental A{n} {i}"))?;
            ensure(f.terms().all(|(_, c)| *c == 1), || format!("fundamental A{n} {i} multiplicity"))?;
            let lo = fundamental_lowest(n, i, 0);
            ensure(lowest_monomials(n, &f) == vec![lo], || format!("fundamental A{n} {i} lowest"))?;
            let k = kr2(n, i, 0);
            ensure(dimension(&k) as usize == two_column_ssyt(n as u32 + 1, i), || format!("kr2 A{n} {i}"))?;
            for q in [&f, &k] {
                ensure(highest_monomials(n, q).len() == 1 && lowest_monomials(n, q).len() == 1, || {
                    format!("A{n} {i} extremal")
                })?;
            }
        }
    }
    let all = sweep(5);
    first_failure(&all, |(h, i, j)| {
        let q = qchar_hl(h, *i, *j).map_err(|e| e.to_string())?;
        let (hi, lo) = extremal_weights(h, *i, *j).map_err(|e| e.to_string())?;
        let n = h.n();
        ensure(q.has_nonnegative_coefficients(), || format!("{h} [{i},{j}] sign"))?;
        ensure(highest_monomials(n, &q) == vec![hi.clone()], || format!("{h} [{i},{j}] highest"))?;
        ensure(lowest_monomials(n, &q) == vec![lo.clone()], || format!("{h} [{i},{j}] lowest"))?;
        ensure(lowest_of(n, &hi) == lo, || format!("{h} [{i},{j}] lowest rule"))
    })?;
    Ok(format!("fundamental and KR2 counts for n <= 6; extremal monomials on {} HL modules", all.len()))
}

fn main() -> ExitCode {
    let checks: [(&str, fn() -> Check); 12] = [
        ("quiver and statistics of the A9 example", c1_quiver_example),
        ("snake graph and expansion of x[α_{1,7}]", c2_snake_example),
        ("Γ table for x[α_{1,7}]", c3_gamma_table),
        ("|Γ| = |Match| = N[runs], n <= 7", c4_counting),
        ("expansion equals mutation oracle", c5_oracle),
        ("continued fraction and dual recursion F-polynomials", c6_dual_routes),
        ("tropical F equals y(P+) (+) 1", c7_tropical),
        ("extremal matching and its weights", c8_extremal),
        ("product identity for source/sink j", c9_recursion),
        ("A4 product decomposition 400 / 75", c10_product),
        ("HL monomial round trip", c11_round_trip),
        ("q-character counts and extremal monomials", c12_qchar),
    ];
    let mut failed = 0;
    for (k, (name, f)) in checks.iter().enumerate() {
        let t = Instant::now();
        let r = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let secs = t.elapsed().as_secs_f64();
        match r {
            Ok(detail) => println!("[PASS] {:>2}. {name}: {detail} ({secs:.1}s)", k + 1),
            Err(e) => {
                failed += 1;
                println!("[FAIL] {:>2}. {name}: {e} ({secs:.1}s)", k + 1);
            }
        }
    }
    println!("{} of {} criteria passed", checks.len() - failed, checks.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
