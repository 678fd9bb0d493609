//! Acceptance run: one line per criterion, nonzero exit if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use plane_cycles::fpt::{
    check_feasible, compute_arcs, construct_from_selection, construct_unchecked, decide_hamiltonian, enumerate_initial_cycles,
    ArcSelection,
};
use plane_cycles::generate::{generate, GenKind, GenSpec};
use plane_cycles::geom::{convex_hull, in_open_triangle, orient, segments_cross};
use plane_cycles::monotonicity::{check_three_principal_path, principal_points, shorten_cycle, PrincipalKind};
use plane_cycles::nested::{cycle_of_length, NestedError};
use plane_cycles::oracle::{brute_hamiltonian, find_plane_cycle, has_nonrainbow_cycle};
use plane_cycles::rainbow::{find_configuration, witness_cycle, ConfigKind};
use plane_cycles::{validate_cycle, ColoredPointSet, Point};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn within(elapsed: Duration, limit_s: u64) -> bool {
    elapsed <= Duration::from_secs(limit_s)
}

/// Runs `case` for every seed in parallel; returns the per-seed values and the failures.
fn sweep<T: Send>(seeds: std::ops::Range<u64>, case: impl Fn(u64) -> Result<T, String> + Sync) -> (Vec<T>, Vec<String>) {
    let results: Vec<Result<T, String>> = seeds.into_par_iter().map(|s| case(s).map_err(|e| format!("seed {s}: {e}"))).collect();
    let mut ok = Vec::new();
    let mut bad = Vec::new();
    for r in results {
        match r {
            Ok(v) => ok.push(v),
            Err(e) => bad.push(e),
        }
    }
    (ok, bad)
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn nonrainbow_detection() -> Outcome {
    let start = Instant::now();
    let cases = 2000;
    let (ok, bad) = sweep(0..cases, |seed| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let colors = rng.gen_range(2..=5);
        let n = rng.gen_range(colors.max(3)..=10);
        let ps = generate(&GenSpec::new(GenKind::Random, n, seed).colors(colors).range(60)).map_err(err)?;
        let fast = plane_cycles::rainbow::has_nonrainbow_plane_cycle(&ps);
        let truth = has_nonrainbow_cycle(&ps).map_err(err)?;
        if fast != truth {
            return Err(format!("detector {fast}, oracle {truth}"));
        }
        if fast {
            let w = find_configuration(&ps).ok_or("no configuration")?;
            let c = witness_cycle(&ps, &w).map_err(err)?;
            validate_cycle(&ps, c.vertices()).map_err(err)?;
            if !(c.len() == 4 || c.len() == 5) || c.is_rainbow(&ps) {
                return Err(format!("witness {w:?} gives {:?}", c.vertices()));
            }
        }
        Ok(fast)
    });
    let el = start.elapsed();
    let yes = ok.iter().filter(|&&b| b).count();
    let pass = bad.is_empty() && within(el, 300);
    outcome(pass, format!("{}/{cases} agree ({yes} positive), {:.1}s{}", ok.len(), el.as_secs_f64(), first(&bad)))
}

fn bipartite_four_cycles() -> Outcome {
    let start = Instant::now();
    let cases = 1000;
    let (ok, bad) = sweep(0..cases, |seed| {
        let n = 2 + (seed % 4) as usize;
        let ps = generate(&GenSpec::new(GenKind::Bipartite, n, 10_000 + seed).range(40)).map_err(err)?;
        let any = find_plane_cycle(&ps, 3, ps.len(), |_| true).map_err(err)?.is_some();
        let four = find_plane_cycle(&ps, 4, 4, |_| true).map_err(err)?.is_some();
        let c1 = find_configuration(&ps).is_some_and(|w| w.kind == ConfigKind::C1);
        if any != four || four != c1 {
            return Err(format!("any {any}, four {four}, C1 {c1}"));
        }
        Ok(any)
    });
    let el = start.elapsed();
    let yes = ok.iter().filter(|&&b| b).count();
    outcome(bad.is_empty(), format!("{}/{cases} agree ({yes} with cycles), {:.1}s{}", ok.len(), el.as_secs_f64(), first(&bad)))
}

fn shortening_contract() -> Outcome {
    let start = Instant::now();
    let cases = 1000;
    let (ok, bad) = sweep(0..cases, |seed| {
        let mut rng = ChaCha8Rng::seed_from_u64(20_000 + seed);
        let t = rng.gen_range(6..=12);
        let colors = if t % 2 == 0 { rng.gen_range(2..=4) } else { rng.gen_range(3..=4) };
        let ps = generate(&GenSpec::new(GenKind::Polygon, t, 20_000 + seed).colors(colors).range(500)).map_err(err)?;
        let mut cur = validate_cycle(&ps, &(0..t).collect::<Vec<_>>()).map_err(err)?;
        let mut steps = 0;
        while cur.len() >= 6 {
            let len = cur.len();
            let s = shorten_cycle(&ps, &cur).map_err(|e| format!("length {len}: {e}"))?;
            let l = s.cycle.len();
            validate_cycle(&ps, s.cycle.vertices()).map_err(err)?;
            if s.cycle.is_rainbow(&ps) || l >= len || l < len.div_ceil(2) + 1 {
                return Err(format!("{len} -> {l} via {:?}", s.step));
            }
            cur = s.cycle;
            steps += 1;
        }
        if cur.len() != 4 && cur.len() != 5 {
            return Err(format!("stopped at {}", cur.len()));
        }
        Ok(steps)
    });
    let el = start.elapsed();
    let steps: usize = ok.iter().sum();
    let pass = bad.is_empty() && within(el, 300);
    outcome(pass, format!("{}/{cases} cycles, {steps} shortenings, {:.1}s{}", ok.len(), el.as_secs_f64(), first(&bad)))
}

fn nested_lengths() -> Outcome {
    let start = Instant::now();
    let cases = 240;
    let (ok, bad) = sweep(0..cases, |seed| {
        let (kind, n) = match seed % 3 {
            0 => (GenKind::Nested, 3 + (seed / 3 % 8) as usize),
            1 => (GenKind::ZoneRing, 4 + (seed / 3 % 7) as usize),
            _ => (GenKind::ZonePairs, 4 + 2 * (seed / 3 % 4) as usize),
        };
        let ps = generate(&GenSpec::new(kind, n, 30_000 + seed)).map_err(err)?;
        let ring: Vec<usize> = (0..ps.len()).filter(|&i| ps.color(i) == 1).collect();
        let mut finishes = Vec::new();
        for t in 2..=n {
            let r = cycle_of_length(&ps, &ring, t).map_err(|e| match e {
                NestedError::Dichotomy(_) => format!("{kind} t={t}: drawing dichotomy fired: {e}"),
                _ => format!("{kind} t={t}: {e}"),
            })?;
            let reds = r.cycle.vertices().iter().filter(|&&v| ps.color(v) == 0).count();
            validate_cycle(&ps, r.cycle.vertices()).map_err(err)?;
            if r.cycle.len() != 2 * t || reds != t {
                return Err(format!("{kind} t={t}: {} points, {reds} inner", r.cycle.len()));
            }
            finishes.push(r.finish);
        }
        Ok(finishes)
    });
    let el = start.elapsed();
    let mut kinds = std::collections::BTreeMap::new();
    for f in ok.iter().flatten() {
        *kinds.entry(format!("{f:?}")).or_insert(0usize) += 1;
    }
    let pass = bad.is_empty() && within(el, 300);
    outcome(pass, format!("{}/{cases} instances, finishes {kinds:?}, {:.1}s{}", ok.len(), el.as_secs_f64(), first(&bad)))
}

fn boundary_ccw(ps: &ColoredPointSet, c: &[usize]) -> bool {
    let hull = convex_hull(ps.points());
    let on: Vec<usize> = c.iter().copied().filter(|v| hull.contains(v)).collect();
    let m = hull.len();
    let Some(start) = hull.iter().position(|&h| h == on[0]) else { return false };
    on.len() == m && (0..m).all(|i| on[i] == hull[(start + i) % m])
}

fn hamiltonicity() -> Outcome {
    let start = Instant::now();
    let cases = 2100;
    let (ok, bad) = sweep(0..cases, |seed| {
        let mut rng = ChaCha8Rng::seed_from_u64(40_000 + seed);
        let n = rng.gen_range(2..=6);
        let k = rng.gen_range(0..=4usize.min(2 * n - 3));
        let kind = [GenKind::InteriorK, GenKind::InteriorAlt, GenKind::Bipartite][(seed % 3) as usize];
        let ps = if kind == GenKind::Bipartite {
            // Redraw until at most four points are off the hull.
            let mut sub = 0;
            loop {
                let ps = generate(&GenSpec::new(kind, n, (40_000 + seed) * 64 + sub).range(50)).map_err(err)?;
                if ps.len() - convex_hull(ps.points()).len() <= 4 {
                    break ps;
                }
                sub += 1;
            }
        } else {
            let k = if kind == GenKind::InteriorAlt && (2 * n - k).div_ceil(2) > n { k + 1 } else { k };
            generate(&GenSpec::new(kind, n, 40_000 + seed).interior(k.min(4))).map_err(err)?
        };
        let rep = decide_hamiltonian(&ps, true).map_err(err)?;
        let truth = brute_hamiltonian(&ps).map_err(err)?.is_some();
        if rep.hamiltonian != truth {
            return Err(format!("decided {}, oracle {truth}\n{}", rep.hamiltonian, ps.to_text()));
        }
        if rep.hamiltonian {
            let c = rep.cycle.as_ref().ok_or("yes without a cycle")?;
            validate_cycle(&ps, c.vertices()).map_err(err)?;
            if c.len() != ps.len() || !boundary_ccw(&ps, c.vertices()) {
                return Err("constructed cycle not Hamiltonian or boundary out of order".into());
            }
        }
        Ok((rep.method, rep.hamiltonian))
    });
    let el = start.elapsed();
    let mut methods = std::collections::BTreeMap::new();
    for (m, h) in &ok {
        *methods.entry(format!("{m}/{}", if *h { "yes" } else { "no" })).or_insert(0usize) += 1;
    }
    let pass = bad.is_empty() && ok.len() >= 2000 && within(el, 900);
    outcome(pass, format!("{}/{cases} agree, {methods:?}, {:.1}s{}", ok.len(), el.as_secs_f64(), first(&bad)))
}

fn all_selections(g: usize, s: usize) -> impl Iterator<Item = ArcSelection> {
    (0..s.pow(g as u32)).map(move |mut code| {
        let mut arcs = Vec::with_capacity(g);
        for _ in 0..g {
            arcs.push(code % s);
            code /= s;
        }
        ArcSelection { arcs }
    })
}

fn feasibility_iff_construction() -> Outcome {
    let start = Instant::now();
    let cases = 60;
    let (ok, bad) = sweep(0..cases, |seed| {
        let n = 3 + (seed % 3) as usize;
        let k = 2 + (seed % 2) as usize;
        let kind = if seed % 4 < 2 { GenKind::InteriorAlt } else { GenKind::InteriorK };
        let ps = generate(&GenSpec::new(kind, n, 50_000 + seed).interior(k)).map_err(err)?;
        let dec = compute_arcs(&ps).map_err(err)?;
        let (mut total, mut feasible) = (0, 0);
        for f in enumerate_initial_cycles(&ps, &dec) {
            let g = f.gap_sequence().len();
            for sel in all_selections(g, dec.arcs.len()) {
                total += 1;
                let rep = check_feasible(&ps, &dec, &f, &sel).map_err(err)?;
                let built = construct_from_selection(&ps, &dec, &f, &sel);
                let valid = built.as_ref().is_ok_and(|c| validate_cycle(&ps, c.vertices()).is_ok() && c.len() == ps.len());
                let unchecked = construct_unchecked(&ps, &dec, &f, &sel).map_err(err)?.is_some();
                if rep.feasible != valid || rep.feasible != unchecked {
                    return Err(format!("feasible {} but construction valid {valid}, unchecked {unchecked}", rep.feasible));
                }
                feasible += rep.feasible as usize;
            }
        }
        Ok((total, feasible))
    });
    let el = start.elapsed();
    let (total, feasible) = ok.iter().fold((0, 0), |(a, b), &(t, f)| (a + t, b + f));
    let pass = bad.is_empty() && within(el, 600);
    outcome(
        pass,
        format!("{}/{cases} instances, {total} selections ({feasible} feasible), {:.1}s{}", ok.len(), el.as_secs_f64(), first(&bad)),
    )
}

/// Best of several runs of `decide_hamiltonian` over a few instances.
fn timed_decide(n: usize, k: usize, seeds: std::ops::Range<u64>) -> Result<f64, String> {
    let mut total = 0.0;
    for seed in seeds {
        let ps = generate(&GenSpec::new(GenKind::InteriorAlt, n, seed).interior(k)).map_err(|e| e.to_string())?;
        let mut best = f64::INFINITY;
        for _ in 0..3 {
            let t0 = Instant::now();
            decide_hamiltonian(&ps, true).map_err(|e| e.to_string())?;
            best = best.min(t0.elapsed().as_secs_f64());
        }
        total += best;
    }
    Ok(total)
}

fn scaling() -> Outcome {
    let mut detail = Vec::new();
    let mut pass = true;
    let mut samples = Vec::new();
    for n in [50usize, 100, 200] {
        match timed_decide(n, 3, 60_000..60_005) {
            Ok(t) => {
                let per = t / 5.0;
                pass &= per < 60.0;
                samples.push(((n as f64).ln(), per.max(1e-7).ln()));
                detail.push(format!("k=3 n={n}: {:.2}ms", per * 1e3));
            }
            Err(e) => {
                pass = false;
                detail.push(format!("k=3 n={n}: {e}"));
            }
        }
    }
    if samples.len() == 3 {
        let mx = samples.iter().map(|s| s.0).sum::<f64>() / 3.0;
        let my = samples.iter().map(|s| s.1).sum::<f64>() / 3.0;
        let slope = samples.iter().map(|s| (s.0 - mx) * (s.1 - my)).sum::<f64>()
            / samples.iter().map(|s| (s.0 - mx).powi(2)).sum::<f64>();
        pass &= slope <= 3.0;
        detail.push(format!("exponent {slope:.2}"));
    }
    for k in [2usize, 3, 4] {
        let t0 = Instant::now();
        match timed_decide(50, k, 61_000..61_003) {
            Ok(_) => {
                let el = t0.elapsed();
                pass &= el.as_secs_f64() / 3.0 < 600.0;
                detail.push(format!("n=50 k={k}: {:.2}ms", el.as_secs_f64() * 1e3 / 9.0));
            }
            Err(e) => {
                pass = false;
                detail.push(format!("n=50 k={k}: {e}"));
            }
        }
    }
    outcome(pass, detail.join(", "))
}

fn polygon_principal_points() -> Outcome {
    let start = Instant::now();
    let cases = 5000;
    let (ok, bad) = sweep(0..cases, |seed| {
        let mut rng = ChaCha8Rng::seed_from_u64(70_000 + seed);
        let t = rng.gen_range(6..=12);
        let colors = if t % 2 == 0 { 2 } else { 3 };
        let ps = generate(&GenSpec::new(GenKind::Polygon, t, 70_000 + seed).colors(colors).range(300)).map_err(err)?;
        let c = validate_cycle(&ps, &(0..t).collect::<Vec<_>>()).map_err(err)?;
        if check_three_principal_path(&ps, &c) {
            return Err("three consecutive principal points".into());
        }
        let pp = principal_points(&ps, &c);
        let ears = pp.iter().filter(|p| p.kind == PrincipalKind::Ear).count();
        let mouths = pp.len() - ears;
        let convex = convex_hull(ps.points()).len() == t;
        if ears < 2 || (!convex && mouths < 1) {
            return Err(format!("{ears} ears, {mouths} mouths, convex {convex}"));
        }
        Ok(convex)
    });
    let el = start.elapsed();
    let convex = ok.iter().filter(|&&c| c).count();
    let pass = bad.is_empty() && within(el, 300);
    outcome(pass, format!("{}/{cases} polygons ({convex} convex), {:.1}s{}", ok.len(), el.as_secs_f64(), first(&bad)))
}

fn translation_exactness() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(80_000);
    let big = 1i64 << 26;
    let mut failures = 0usize;
    let checks = 10_000;
    for _ in 0..checks {
        let pts: Vec<Point> =
            (0..8).map(|_| Point::new(rng.gen_range(-big..=big), rng.gen_range(-big..=big)).unwrap()).collect();
        let (dx, dy) = (rng.gen_range(-big..=big), rng.gen_range(-big..=big));
        let moved: Vec<Point> = pts.iter().map(|p| p.translate(dx, dy).unwrap()).collect();
        let same = orient(pts[0], pts[1], pts[2]) == orient(moved[0], moved[1], moved[2])
            && segments_cross(pts[0], pts[1], pts[2], pts[3]) == segments_cross(moved[0], moved[1], moved[2], moved[3])
            && in_open_triangle(pts[4], pts[0], pts[1], pts[2]) == in_open_triangle(moved[4], moved[0], moved[1], moved[2])
            && convex_hull(&pts) == convex_hull(&moved);
        failures += (!same) as usize;
    }
    outcome(failures == 0, format!("{}/{checks} translations invariant", checks - failures))
}

fn first(bad: &[String]) -> String {
    bad.first().map(|b| format!("; first failure: {b}")).unwrap_or_default()
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("nonrainbow_detection_matches_oracle", nonrainbow_detection),
        ("bipartite_cycle_iff_four_cycle_iff_c1", bipartite_four_cycles),
        ("shortening_contract", shortening_contract),
        ("nested_every_even_length", nested_lengths),
        ("hamiltonicity_matches_oracle", hamiltonicity),
        ("feasibility_iff_construction", feasibility_iff_construction),
        ("scaling_sanity", scaling),
        ("polygon_principal_points", polygon_principal_points),
        ("translation_exactness", translation_exactness),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let o = run();
        println!("{} {name}: {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
        failed += (!o.pass) as usize;
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
