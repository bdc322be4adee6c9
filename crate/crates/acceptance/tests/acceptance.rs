//! End-to-end acceptance checks. Runs without the libtest harness so every
//! criterion prints exactly one PASS/FAIL line, even when an earlier one fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use gallai_ramsey::bounds::{self, sizes, VerificationRequest};
use gallai_ramsey::catalog;
use gallai_ramsey::constructions::{self, build_star_h, extend_with_w};
use gallai_ramsey::detectors::{
    embed_oracle, find_mono_fan, find_mono_kipas, find_mono_path, find_mono_star,
    find_mono_subdivided_star, find_mono_triangle, find_mono_wheel, find_rainbow_triangle,
    DetectionReport,
};
use gallai_ramsey::oracle::{self, trivial_base, SearchBudget, Threshold};
use gallai_ramsey::{Color, ColoredCompleteGraph, Pattern};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

type Check = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn absent(r: &DetectionReport) -> Check {
    ensure(r.is_absent(), || format!("unexpected witness: {r}"))
}

fn certified(name: &str, params: &[(&str, i64)], vertices: usize, value: i64) -> Check {
    let built = catalog::build(name, params, None).map_err(|e| e.to_string())?;
    ensure(built.vertex_count() == vertices, || {
        format!(
            "{name} {params:?}: {} vertices, expected {vertices}",
            built.vertex_count()
        )
    })?;
    let cert = built
        .certify()
        .map_err(|e| format!("{name} {params:?}: {e}"))?;
    ensure(cert.record.value == value, || {
        format!(
            "{name} {params:?}: bound {}, expected {value}",
            cert.record.value
        )
    })
}

fn fan_certificates() -> Check {
    certified("fan-g3", &[("i", 3)], 14, 15)?;
    certified("fan-g3", &[("i", 4)], 14, 15)?;
    certified("fan-g4", &[], 70, 71)?;
    certified("fan-gk", &[("k", 6)], 350, 351)
}

fn kipas_three_colors() -> Check {
    let g = constructions::build_g_odd(3, 6, None).map_err(|e| e.to_string())?;
    ensure(g.n() == 30, || format!("{} vertices, expected 30", g.n()))?;
    let cert = bounds::certify(
        "kipas-k3",
        vec![("m".into(), 6)],
        &g,
        &[VerificationRequest::new(Pattern::Kipas(6), 1..=3)],
        &[],
    )
    .map_err(|e| e.to_string())?;
    ensure(cert.record.value == 31, || {
        format!("bound {}, expected 5m + 1 = 31", cert.record.value)
    })
}

fn kipas_even_with_base() -> Check {
    let base = trivial_base(6).map_err(|e| e.to_string())?;
    ensure(base.n() == 10, || format!("base has {} vertices", base.n()))?;
    let g = constructions::build_g_even(4, 6, &base).map_err(|e| e.to_string())?;
    // 4(m-1) 5^{j-1} - 2m + 4 added on top of the base, j = 2
    let added = 4 * 5 * 5 - 12 + 4;
    ensure(g.n() == 10 + added, || {
        format!("{} vertices, expected {}", g.n(), 10 + added)
    })?;
    absent(&find_rainbow_triangle(&g))?;
    for c in 1..=4 {
        absent(&find_mono_kipas(&g, c, 6).map_err(|e| e.to_string())?)?;
        absent(&find_mono_wheel(&g, c, 6).map_err(|e| e.to_string())?)?;
    }
    Ok(())
}

fn size_recurrences() -> Check {
    for m in [6usize, 8, 10] {
        let base = trivial_base(m).map_err(|e| e.to_string())?;
        let b = base.n() as i64;
        let mi = m as i64;
        for k in (2..=12).step_by(2) {
            let r = constructions::g_even_recipe(k, m, &base).map_err(|e| e.to_string())?;
            let (got, want) = (r.vertex_count() as i64, sizes::g_even(k as i64, mi, b));
            ensure(got == want, || {
                format!("|G_{k}| for m={m}: built {got}, closed form {want}")
            })?;
            if k >= 4 {
                let prev = constructions::g_even_recipe(k - 2, m, &base)
                    .map_err(|e| e.to_string())?
                    .vertex_count() as i64;
                let step = sizes::g_even_step(k as i64, mi);
                ensure(got - prev == step, || {
                    format!(
                        "|G_{k}| - |G_{}| for m={m}: {} vs {step}",
                        k - 2,
                        got - prev
                    )
                })?;
            }
            for k2 in [k - 2] {
                for ell in [k2 + 1, k2 + 2] {
                    let r = constructions::g_ell_recipe(k2, ell as Color, m)
                        .map_err(|e| e.to_string())?;
                    let (got, want) = (r.vertex_count() as i64, sizes::g_ell(k2 as i64, mi));
                    ensure(got == want, || {
                        format!("|G_{k2}({ell})| for m={m}: built {got}, closed form {want}")
                    })?;
                }
            }
        }
        for k in (3..=11).step_by(2) {
            let r = constructions::g_odd_recipe(k, m, Some(&base)).map_err(|e| e.to_string())?;
            let (got, want) = (
                r.vertex_count() as i64,
                sizes::g_odd_doubled(k as i64, mi, b),
            );
            ensure(got == want, || {
                format!("|G_{k}| (doubled) for m={m}: built {got}, closed form {want}")
            })?;
        }
    }
    Ok(())
}

fn star_suite() -> Check {
    for (n, k) in [(12usize, 3usize), (12, 4), (14, 3)] {
        let h = build_star_h(n, k).map_err(|e| e.to_string())?;
        let (ni, ki) = (n as i64, k as i64);
        let size = 5 * ni / 2 + ki - 7;
        ensure(h.graph.n() as i64 == size, || {
            format!("H({n},{k}) has {} vertices, expected {size}", h.graph.n())
        })?;
        absent(&find_rainbow_triangle(&h.graph))?;
        for c in 1..=k as Color {
            absent(&find_mono_subdivided_star(&h.graph, c, n).map_err(|e| e.to_string())?)?;
        }
        let (p, degree) = extend_with_w(&h).map_err(|e| e.to_string())?;
        let w_degree = 2 * ni + ki - 6;
        ensure(degree as i64 == w_degree, || {
            format!("w has degree {degree}, expected {w_degree}")
        })?;
        absent(&find_rainbow_triangle(&p))?;
        for c in 1..=k as Color {
            absent(&find_mono_subdivided_star(&p, c, n).map_err(|e| e.to_string())?)?;
        }
        // the two star-critical values follow from the sizes above
        ensure(
            size + 1 == 5 * ni / 2 + ki - 6 && w_degree + 1 == 2 * ni + ki - 5,
            || "value mismatch".into(),
        )?;
    }
    Ok(())
}

fn ramsey_oracles() -> Check {
    let budget = SearchBudget::exhaustive(7);
    for (p, want) in [
        (Pattern::Path(4), 5),
        (Pattern::SubdividedStar(4), 7),
        (Pattern::Triangle, 6),
    ] {
        let r = oracle::ramsey2_exact(&p, &p, &budget).map_err(|e| e.to_string())?;
        ensure(r.value == Threshold::Exact(want), || {
            format!("R({p}, {p}) = {}, expected {want}", r.value)
        })?;
    }
    Ok(())
}

fn detector_suite() -> Vec<(Pattern, Option<gallai_ramsey::SmallGraph>)> {
    let mut out = vec![Pattern::Triangle];
    out.extend((1..=3).map(Pattern::Fan));
    out.extend((2..=6).map(Pattern::Kipas));
    out.extend((3..=6).map(Pattern::Wheel));
    out.extend((2..=8).map(Pattern::Star));
    out.extend((2..=7).map(Pattern::SubdividedStar));
    out.extend((2..=6).map(Pattern::Path));
    out.into_iter()
        .map(|p| {
            let g = p.graph();
            (p, g)
        })
        .collect()
}

fn specialized(g: &ColoredCompleteGraph, p: &Pattern, c: Color) -> DetectionReport {
    let r = match *p {
        Pattern::Triangle => find_mono_triangle(g, c),
        Pattern::Fan(n) => find_mono_fan(g, c, n),
        Pattern::Kipas(m) => find_mono_kipas(g, c, m),
        Pattern::Wheel(m) => find_mono_wheel(g, c, m),
        Pattern::Star(n) => find_mono_star(g, c, n),
        Pattern::SubdividedStar(n) => find_mono_subdivided_star(g, c, n),
        Pattern::Path(m) => find_mono_path(g, c, m),
        _ => unreachable!(),
    };
    r.expect("valid color and pattern")
}

/// Number of (coloring, pattern, color) triples where the detector and the
/// embedding oracle disagree, or the detector's witness is unsound.
fn disagreements(
    g: &ColoredCompleteGraph,
    suite: &[(Pattern, Option<gallai_ramsey::SmallGraph>)],
) -> usize {
    let mut bad = 0;
    for (p, pg) in suite {
        let pg = pg.as_ref().expect("small pattern");
        for c in 1..=g.k() {
            let d = specialized(g, p, c);
            let o = embed_oracle(g, c, pg).expect("oracle");
            if d.is_absent() != o.is_absent() || (!d.is_absent() && !d.validate(g)) {
                bad += 1;
            }
        }
    }
    bad
}

fn detector_equivalence() -> Check {
    let suite = detector_suite();
    let pairs: Vec<(usize, usize)> = (0..6)
        .flat_map(|u| (u + 1..6).map(move |v| (u, v)))
        .collect();
    let bad2: usize = (0u32..1 << 15)
        .into_par_iter()
        .map(|code| {
            let g = ColoredCompleteGraph::from_fn(6, 2, |u, v| {
                let i = pairs
                    .iter()
                    .position(|&e| e == (u.min(v), u.max(v)))
                    .unwrap();
                1 + ((code >> i) & 1) as Color
            })
            .unwrap();
            disagreements(&g, &suite)
        })
        .sum();
    ensure(bad2 == 0, || {
        format!("{bad2} disagreements over the 2-colorings of K_6")
    })?;
    let bad3: usize = (0u64..500)
        .into_par_iter()
        .map(|seed| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let g = ColoredCompleteGraph::from_fn(9, 3, |_, _| rng.gen_range(1..=3)).unwrap();
            disagreements(&g, &suite)
        })
        .sum();
    ensure(bad3 == 0, || {
        format!("{bad3} disagreements over 500 random 3-colorings of K_9")
    })
}

/// Red edges inside one block: random, with red degree at most `m/2 - 1` and
/// red components of at most `m - 1` vertices; other pairs blue or green.
fn admissible_block(rng: &mut ChaCha8Rng, size: usize, m: usize) -> Vec<Vec<Color>> {
    let mut c = vec![vec![0; size]; size];
    for u in 0..size {
        for v in u + 1..size {
            let x = rng.gen_range(2..=3);
            c[u][v] = x;
            c[v][u] = x;
        }
    }
    let mut comp: Vec<usize> = (0..size).collect();
    let mut degree = vec![0; size];
    for _ in 0..size * size {
        let (u, v) = (rng.gen_range(0..size), rng.gen_range(0..size));
        if u == v || c[u][v] == 1 || degree[u] >= m / 2 - 1 || degree[v] >= m / 2 - 1 {
            continue;
        }
        let (cu, cv) = (comp[u], comp[v]);
        let merged = comp.iter().filter(|&&x| x == cu || x == cv).count();
        if cu != cv && merged > m - 1 {
            continue;
        }
        c[u][v] = 1;
        c[v][u] = 1;
        degree[u] += 1;
        degree[v] += 1;
        for x in comp.iter_mut() {
            if *x == cv {
                *x = cu;
            }
        }
    }
    c
}

fn admissible_blow_up(seed: u64) -> (ColoredCompleteGraph, usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = if rng.gen_bool(0.5) { 6 } else { 8 };
    let sizes: Vec<usize> = (0..5).map(|_| rng.gen_range(1..=12)).collect();
    let blocks: Vec<Vec<Vec<Color>>> = sizes
        .iter()
        .enumerate()
        .map(|(i, &s)| {
            if i == 1 || i == 4 {
                admissible_block(&mut rng, s, m)
            } else {
                let mut c = vec![vec![0; s]; s];
                for u in 0..s {
                    for v in u + 1..s {
                        let x = rng.gen_range(2..=3);
                        c[u][v] = x;
                        c[v][u] = x;
                    }
                }
                c
            }
        })
        .collect();
    let owner: Vec<(usize, usize)> = sizes
        .iter()
        .enumerate()
        .flat_map(|(b, &s)| (0..s).map(move |i| (b, i)))
        .collect();
    let g = ColoredCompleteGraph::from_fn(owner.len(), 3, |u, v| {
        let ((a, i), (b, j)) = (owner[u], owner[v]);
        if a == b {
            blocks[a][i][j]
        } else if (a + 5 - b) % 5 == 1 || (b + 5 - a) % 5 == 1 {
            1
        } else {
            2
        }
    })
    .unwrap();
    (g, m)
}

fn red_kipas_free_blow_ups() -> Check {
    let failures: Vec<u64> = (0u64..100)
        .into_par_iter()
        .filter(|&seed| {
            let (g, m) = admissible_blow_up(seed);
            !find_mono_kipas(&g, 1, m).unwrap().is_absent()
        })
        .collect();
    ensure(failures.is_empty(), || {
        format!("red kipas found for seeds {failures:?}")
    })
}

fn disproof_deltas() -> Check {
    let mut wrong = Vec::new();
    for k in [4i64, 6, 8] {
        let half = 5i64.pow((k / 2) as u32);
        let wheel = bounds::thm_kipas_wheel_lower(k, 6, 19).unwrap()
            - bounds::conj_wheel(k, 6, 19).unwrap();
        if wheel != 7 * half - 4 * k + 1 {
            wrong.push(format!(
                "wheel k={k}: computed {wheel}, stated {}",
                7 * half - 4 * k + 1
            ));
        }
        let kipas = bounds::thm_kipas_wheel_lower(k, 6, 19).unwrap()
            - bounds::conj_kipas(k, 6, 19).unwrap();
        if kipas != 2 * half - 4 * k - 2 {
            wrong.push(format!(
                "kipas k={k}: computed {kipas}, stated {}",
                2 * half - 4 * k - 2
            ));
        }
    }
    ensure(wrong.is_empty(), || wrong.join("; "))
}

fn fan_lower_witness() -> Check {
    let g = constructions::contract_fan_base().map_err(|e| e.to_string())?;
    ensure(g.n() == 13, || format!("{} vertices, expected 13", g.n()))?;
    let r = oracle::fan_lower_witness_check().map_err(|e| e.to_string())?;
    ensure(r.graph == g, || "oracle checked a different graph".into())?;
    for c in 1..=2 {
        absent(&find_mono_fan(&g, c, 3).map_err(|e| e.to_string())?)?;
    }
    ensure(r.confirms_lower_bound(), || {
        "oracle found a monochromatic F_3".into()
    })
}

fn main() -> ExitCode {
    let criteria: [(u32, &str, Duration, fn() -> Check); 10] = [
        (
            1,
            "fan certificates",
            Duration::from_secs(60),
            fan_certificates,
        ),
        (
            2,
            "three-color kipas certificate",
            Duration::from_secs(10),
            kipas_three_colors,
        ),
        (
            3,
            "even-k kipas certificate on the two-clique base",
            Duration::from_secs(600),
            kipas_even_with_base,
        ),
        (
            4,
            "size recurrences",
            Duration::from_secs(30),
            size_recurrences,
        ),
        (
            5,
            "subdivided-star suite",
            Duration::from_secs(30),
            star_suite,
        ),
        (
            6,
            "two-color Ramsey oracles",
            Duration::from_secs(300),
            ramsey_oracles,
        ),
        (
            7,
            "detector vs embedding oracle",
            Duration::from_secs(600),
            detector_equivalence,
        ),
        (
            8,
            "pentagon blow-up kipas property",
            Duration::from_secs(120),
            red_kipas_free_blow_ups,
        ),
        (
            9,
            "theorem-minus-conjecture deltas",
            Duration::from_secs(1),
            disproof_deltas,
        ),
        (
            10,
            "13-vertex F_3-free two-coloring",
            Duration::from_secs(5),
            fan_lower_witness,
        ),
    ];
    let mut failed = 0;
    for (id, name, limit, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome = outcome.and_then(|()| {
            ensure(elapsed <= limit, || {
                format!("took {elapsed:.2?}, limit {limit:?}")
            })
        });
        match outcome {
            Ok(()) => println!("criterion {id:>2} PASS  {name} ({elapsed:.2?})"),
            Err(why) => {
                failed += 1;
                println!("criterion {id:>2} FAIL  {name} ({elapsed:.2?}): {why}");
            }
        }
    }
    println!("{} of 10 criteria passed", 10 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
