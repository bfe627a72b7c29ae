//! Acceptance suite: one PASS/FAIL line per criterion. Criterion 7 is
//! exploratory and downgrades threshold misses to warnings.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::Command;
use std::time::Instant;

use racglab::batch::{csv_bytes, run_batch, BatchSpec};
use racglab::cayley::{avoidant_distance, divergence_profile, periodic_geodesic_point, Detour, GroupElement, SearchLimits};
use racglab::diagram::{
    check_separation, crossing_curves, curves_connected, exhaustive_maximal_fences, fence_levels,
    fence_type_check, fence_validate, fences_connecting, random_diagram, spokes, structured_lower_bound,
    structured_sequences, Arc, DiskDiagram, Event,
};
use racglab::exec::{self, Execution};
use racglab::graph::{
    brute_force_special_subgraphs, complement, is_join, named, SimplicialGraph, SpecialSubgraphs, StripPolicy,
};
use racglab::hypergraph::{hypergraph_index, hypergraph_index_with};
use racglab::words::{
    check_power_reduced, gamma_complete_word, is_reduced, normal_form, reduce, words_equal,
};
use racglab::{HypergraphIndex, Word};
use rand::Rng;

use common::*;

enum Outcome {
    Pass(String),
    Warn(String),
    Fail(String),
}

type Criterion = fn() -> Outcome;

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Outcome::Pass(detail)
    } else {
        Outcome::Fail(detail)
    }
}

/// Per-graph record of the exhaustive sweep shared by criteria 1 and 3.
#[derive(Default)]
struct SweepTally {
    graphs: usize,
    oracle_mismatch: Vec<String>,
    refinement: Vec<String>,
    refinement_not_unique: usize,
    union_changed: Vec<String>,
    too_many_steps: Vec<String>,
    policy_dependent: Vec<String>,
}

impl SweepTally {
    fn merge(mut self, other: SweepTally) -> SweepTally {
        self.graphs += other.graphs;
        self.oracle_mismatch.extend(other.oracle_mismatch);
        self.refinement.extend(other.refinement);
        self.refinement_not_unique += other.refinement_not_unique;
        self.union_changed.extend(other.union_changed);
        self.too_many_steps.extend(other.too_many_steps);
        self.policy_dependent.extend(other.policy_dependent);
        self
    }
}

fn sweep_graph(g: &SimplicialGraph, t: &mut SweepTally) {
    t.graphs += 1;
    let fast = SpecialSubgraphs::compute(g);
    let brute = brute_force_special_subgraphs(g).expect("within brute-force cap");
    if fast != brute {
        t.oracle_mismatch.push(format!("{g:?}"));
    }
    let comp = hypergraph_index(g);
    let trace = &comp.trace;
    if let Some(first) = trace.first() {
        let span = first.span();
        for w in trace.windows(2) {
            for &e in w[0].hyperedges() {
                let holders = w[1].hyperedges().iter().filter(|f| e.is_subset(**f)).count();
                if holders == 0 {
                    t.refinement.push(format!("{g:?}"));
                } else if holders > 1 {
                    t.refinement_not_unique += 1;
                }
            }
            if w[1].span() != span {
                t.union_changed.push(format!("{g:?}"));
            }
        }
        if trace.len() - 1 > first.len() {
            t.too_many_steps.push(format!("{g:?}"));
        }
    }
    if hypergraph_index_with(g, StripPolicy::AllowBarePairs).index != comp.index {
        t.policy_dependent.push(format!("{g:?}"));
    }
}

fn small_graph_sweep() -> &'static SweepTally {
    use std::sync::OnceLock;
    static SWEEP: OnceLock<SweepTally> = OnceLock::new();
    SWEEP.get_or_init(|| {
        let mut jobs = Vec::new();
        for n in 1..=7usize {
            let masks = 1u64 << (n * (n - 1) / 2);
            let chunk = 4096u64;
            let mut lo = 0;
            while lo < masks {
                jobs.push((n, lo, (lo + chunk).min(masks)));
                lo += chunk;
            }
        }
        exec::map(Execution::Parallel, jobs, |(n, lo, hi)| {
            let mut t = SweepTally::default();
            for mask in lo..hi {
                sweep_graph(&labeled_graph(n, mask), &mut t);
            }
            t
        })
        .into_iter()
        .fold(SweepTally::default(), SweepTally::merge)
    })
}

fn criterion_1() -> Outcome {
    let sweep = small_graph_sweep();
    let random: Vec<String> = exec::map_range(Execution::Parallel, 500, |i| {
        let mut r = rng(0xC1 + i as u64);
        let n = r.gen_range(8..=14);
        let p = r.gen_range(0.2..0.8);
        let g = random_graph(&mut r, n, p);
        let ok = SpecialSubgraphs::compute(&g) == brute_force_special_subgraphs(&g).unwrap();
        (!ok).then(|| format!("{g:?}"))
    })
    .into_iter()
    .flatten()
    .collect();
    let bad = sweep.oracle_mismatch.len() + random.len();
    check(
        bad == 0,
        format!(
            "{} labeled graphs on <= 7 vertices and 500 random graphs on 8..14; {bad} mismatches{}",
            sweep.graphs,
            sweep
                .oracle_mismatch
                .iter()
                .chain(&random)
                .next()
                .map(|g| format!(", first {g}"))
                .unwrap_or_default()
        ),
    )
}

fn criterion_2() -> Outcome {
    use named::*;
    let cases = [
        ("C4", c4(), HypergraphIndex::Finite(0)),
        ("P3", p3(), HypergraphIndex::Infinite),
        ("C5", c5(), HypergraphIndex::Infinite),
        ("K3", k3(), HypergraphIndex::Infinite),
        ("K23", k23(), HypergraphIndex::Finite(0)),
        ("T6", t6(), HypergraphIndex::Finite(1)),
        ("two squares", two_squares(), HypergraphIndex::Infinite),
    ];
    let mut wrong = Vec::new();
    for (name, g, expect) in cases {
        let oracle = oracle_index(&g);
        let fast = hypergraph_index(&g).index;
        if oracle != expect || fast != expect {
            wrong.push(format!("{name}: expected {expect}, oracle {oracle}, library {fast}"));
        }
    }
    check(wrong.is_empty(), if wrong.is_empty() { "7 fixtures agree with the oracle".into() } else { wrong.join("; ") })
}

fn criterion_3() -> Outcome {
    let s = small_graph_sweep();
    let hard = s.refinement.len() + s.union_changed.len() + s.too_many_steps.len() + s.policy_dependent.len();
    check(
        hard == 0,
        format!(
            "{} graphs: {} refinement, {} union, {} termination, {} policy failures; {} hyperedges contained in more than one successor",
            s.graphs,
            s.refinement.len(),
            s.union_changed.len(),
            s.too_many_steps.len(),
            s.policy_dependent.len(),
            s.refinement_not_unique
        ),
    )
}

fn criterion_4() -> Outcome {
    let fixtures: Vec<(&str, SimplicialGraph)> = named::all()
        .into_iter()
        .chain([("two_points", named::two_points())])
        .filter(|(_, g)| g.len() <= 5)
        .collect();
    let mut failures = Vec::new();
    let mut words = 0;
    for (name, g) in &fixtures {
        let tits = Tits::new(g);
        let ball = tits.ball(10);
        let mut r = rng(0x44);
        let sample: Vec<Word> = (0..1000)
            .map(|_| {
                let len = r.gen_range(0..=10);
                Word::new((0..len).map(|_| r.gen_range(0..g.len())).collect())
            })
            .collect();
        for (i, w) in sample.iter().enumerate() {
            words += 1;
            let m = tits.of_word(w);
            let bfs = ball[&m];
            let nf = normal_form(g, w);
            let red = reduce(g, w);
            let other = &sample[(i * 7 + 3) % sample.len()];
            let u = &sample[(i * 13 + 5) % sample.len()];
            let equal = words_equal(g, w, other);
            let congruent = !equal
                || (words_equal(g, &w.concat(u), &other.concat(u)) && words_equal(g, &u.concat(w), &u.concat(other)));
            if nf.len() != bfs
                || reduce(g, &red) != red
                || red.len() != bfs
                || !words_equal(g, w, &red)
                || equal != (tits.of_word(other) == m)
                || !congruent
            {
                failures.push(format!("{name}: {}", w.display(g)));
            }
        }
    }
    check(
        failures.is_empty(),
        format!("{words} words over {} fixtures; {} failures {:?}", fixtures.len(), failures.len(), failures.first()),
    )
}

fn criterion_5() -> Outcome {
    let mut r = rng(0x55);
    let mut graphs = 0;
    let mut failures = Vec::new();
    while graphs < 100 {
        let n = r.gen_range(2..=8);
        let p = r.gen_range(0.0..0.7);
        let g = random_graph(&mut r, n, p);
        if is_join(&g, g.vertices()).unwrap().is_some() {
            continue;
        }
        graphs += 1;
        let w = gamma_complete_word(&g).unwrap();
        let l = w.letters();
        let covers = w.support() == g.vertices();
        let cyclic = (0..l.len()).all(|i| {
            let (a, b) = (l[i], l[(i + 1) % l.len()]);
            a != b && !g.adjacent(a, b)
        });
        let short = l.len() <= 2 * (g.len() - 1);
        let powers = (1..=4u64).all(|k| {
            check_power_reduced(&g, &w, k).unwrap() && reduced_by_deletion(&g, w.power(k as usize).letters())
        });
        if !(covers && cyclic && short && powers) {
            failures.push(format!("{g:?} -> {}", w.display(&g)));
        }
    }
    let _ = complement;
    check(failures.is_empty(), format!("{graphs} non-join graphs; failures {failures:?}"))
}

fn criterion_6() -> Outcome {
    let g = named::c4();
    let ac = Word::parse(&g, "a c").unwrap();
    let mut bad = Vec::new();
    for r in 1..=6i64 {
        let rho = 2 * r as usize;
        let x = periodic_geodesic_point(&g, &ac, r).unwrap();
        let y = periodic_geodesic_point(&g, &ac, -r).unwrap();
        let s = avoidant_distance(&g, &x, &y, &GroupElement::identity(), rho, SearchLimits::for_radius(rho, 1_000_000))
            .unwrap();
        let oracle = grid_detour(rho as i64);
        if s.detour.exact() != Some(4 * rho) || oracle != 4 * rho {
            bad.push(format!("r={r}: {:?} oracle {oracle}", s.detour.exact()));
        }
    }
    let profile = divergence_profile(&g, &ac, 1, 6, 1_000_000, Execution::Parallel).unwrap();
    let degree = profile.fit.as_ref().map(|f| f.degree);
    let fit_ok = degree.is_some_and(|d| (0.9..=1.1).contains(&d));
    check(
        bad.is_empty() && fit_ok,
        format!("detours 4ρ for r = 1..6 {}; fitted degree {degree:?}", if bad.is_empty() { "exact".to_string() } else { bad.join(", ") }),
    )
}

fn criterion_7() -> Outcome {
    let budget = 150_000;
    let mut notes = Vec::new();
    let mut warn = false;

    let t6 = named::t6();
    let w = gamma_complete_word(&t6).unwrap();
    let p = divergence_profile(&t6, &w, 2, 5, budget, Execution::Parallel).unwrap();
    let values: Vec<String> = p
        .samples
        .iter()
        .map(|s| match &s.detour {
            Detour::Exact { length, .. } => format!("{length}"),
            other => format!(">={}", other.value().map_or("inf".into(), |v| v.to_string())),
        })
        .collect();
    match &p.fit {
        Some(f) if f.degree >= 1.5 => notes.push(format!("T6 degree {:.2} from [{}]", f.degree, values.join(" "))),
        Some(f) => {
            warn = true;
            notes.push(format!("T6 degree {:.2} below 1.5 from [{}]", f.degree, values.join(" ")));
        }
        None => {
            warn = true;
            notes.push(format!("T6 fit unavailable, samples [{}]", values.join(" ")));
        }
    }

    let c5 = named::c5();
    let w = gamma_complete_word(&c5).unwrap();
    let p = divergence_profile(&c5, &w, 1, 5, budget, Execution::Parallel).unwrap();
    let exact: Vec<(usize, usize)> = p
        .samples
        .iter()
        .filter_map(|s| s.detour.exact().map(|d| (s.radius, d)))
        .collect();
    if exact.is_empty() {
        warn = true;
        notes.push("C5 all samples LOWER_BOUND".into());
    } else {
        let increasing = exact.windows(2).all(|w| w[1].1 > w[0].1);
        let superlinear = exact.iter().all(|&(rho, d)| d > 2 * rho);
        let shape = p.fit.as_ref().map(|f| f.loglinear_r2 > f.loglog_r2);
        notes.push(format!("C5 exact {exact:?}, log-linear preferred {shape:?}"));
        if !(increasing && superlinear && shape.unwrap_or(true)) {
            warn = true;
        }
    }
    if warn {
        Outcome::Warn(notes.join("; "))
    } else {
        Outcome::Pass(notes.join("; "))
    }
}

/// Diagram over T6 whose boundary is `γ, α, γ', β` (read backwards), `β`
/// labeled by the complete word and every `β` curve running to `α`.
fn complete_word_diagram(seed: u64) -> Option<(DiskDiagram, Arc, Arc)> {
    let g = named::t6();
    let w = gamma_complete_word(&g).unwrap();
    let mut r = rng(seed);
    let left: Vec<usize> = (0..r.gen_range(1..4)).map(|_| r.gen_range(0..g.len())).collect();
    let right: Vec<usize> = (0..r.gen_range(1..4)).map(|_| r.gen_range(0..g.len())).collect();
    let mut bottom = left.clone();
    bottom.extend(w.letters());
    bottom.extend(&right);
    let lo = left.len();
    let hi = lo + w.len();
    // swaps only, so every strand reaches the top
    let mut word = bottom.clone();
    let mut events = Vec::new();
    for _ in 0..r.gen_range(0..12) {
        let legal: Vec<usize> = (0..word.len() - 1)
            .filter(|&i| word[i] != word[i + 1] && g.adjacent(word[i], word[i + 1]))
            .collect();
        if legal.is_empty() {
            break;
        }
        let pos = legal[r.gen_range(0..legal.len())];
        word.swap(pos, pos + 1);
        events.push(Event::Swap { pos });
    }
    let d = DiskDiagram::from_rewrite(&g, Word::new(bottom), events).unwrap();
    let total = d.boundary_len();
    let tops: Vec<usize> = (lo..hi).map(|i| d.curves()[d.curve_at(i)].endpoints[1]).collect();
    let (a0, a1) = (*tops.iter().min()?, *tops.iter().max()? + 1);
    let gamma_prime = Arc::new(hi, a0);
    let alpha = Arc::new(a0, a1);
    let gamma = Arc::new(a1 % total, lo);
    let contiguous = a1 - a0 == w.len();
    let nonempty = [gamma, gamma_prime].iter().all(|a| !a.is_empty(total));
    let hypothesis = (lo..hi).all(|i| d.curve_dual_to(d.curve_at(i), alpha));
    (contiguous && nonempty && hypothesis && a0 > hi).then_some((d, gamma, gamma_prime))
}

fn criterion_8() -> Outcome {
    let mut graphs: Vec<(&str, SimplicialGraph)> = named::all();
    graphs.push(("two_points", named::two_points()));
    let per_graph = 200;
    let jobs: Vec<(usize, u64)> = (0..graphs.len())
        .flat_map(|gi| (0..per_graph).map(move |s| (gi, s as u64)))
        .collect();

    #[derive(Default)]
    struct Tally {
        diagrams: usize,
        oracle_compared: usize,
        separation_checked: usize,
        arcs_checked: usize,
        failures: Vec<String>,
    }

    let tallies = exec::map(Execution::Parallel, jobs, |(gi, seed)| {
        let (name, g) = &graphs[gi];
        let mut t = Tally { diagrams: 1, ..Default::default() };
        let mut r = rng(seed ^ 0x88 << 8 | gi as u64);
        let len = r.gen_range(3..=9);
        let d = random_diagram(g, len, r.gen_range(0..=3 * len), seed);
        let fail = |t: &mut Tally, what: &str| t.failures.push(format!("{name} seed {seed}: {what}"));

        for &(_, a, b) in d.crossings() {
            let (la, lb) = (d.curves()[a].letter, d.curves()[b].letter);
            if la == lb || !g.adjacent(la, lb) {
                fail(&mut t, "non-adjacent strands cross");
            }
        }
        let sp = spokes(&d);
        let levels = fence_levels(&d, 2);
        for (level, fences) in levels.iter().enumerate() {
            let covered: usize = fences.iter().map(|f| f.spokes.len()).sum();
            if covered != sp.len() {
                fail(&mut t, "maximal fences do not partition the spokes");
            }
            if sp.len() <= 10 {
                t.oracle_compared += 1;
                if exhaustive_maximal_fences(&d, level as u32).unwrap() != *fences {
                    fail(&mut t, &format!("level {level} fences differ from the exhaustive oracle"));
                }
                for f in fences {
                    if !fence_validate(&d, f).unwrap() {
                        fail(&mut t, "maximal fence fails validation");
                    }
                }
            }
            for f in fences {
                // one curve per spoke; all choices when few, else a sample
                let choices: Vec<u64> = if f.spokes.len() <= 10 {
                    (0..1u64 << f.spokes.len()).collect()
                } else {
                    (0..256).map(|_| r.gen()).collect()
                };
                for c in choices {
                    let pick: Vec<usize> = f
                        .spokes
                        .iter()
                        .enumerate()
                        .map(|(i, s)| if c >> (i % 64) & 1 == 1 { s.k } else { s.h })
                        .collect();
                    if !curves_connected(&d, &pick) {
                        fail(&mut t, "fence transversal is disconnected");
                        break;
                    }
                }
                let crossing = crossing_curves(&d, f);
                if !fence_type_check(&d, f, &crossing).unwrap().pass {
                    fail(&mut t, &format!("type check fails for {:?}", f.spokes));
                }
            }
        }
        let total = d.boundary_len();
        if total >= 4 {
            for _ in 0..12 {
                let mut cuts: Vec<usize> = (0..4).map(|_| r.gen_range(0..total)).collect();
                cuts.sort_unstable();
                cuts.dedup();
                if cuts.len() < 4 {
                    continue;
                }
                let arcs = [
                    Arc::new(cuts[0], cuts[1]),
                    Arc::new(cuts[1], cuts[2]),
                    Arc::new(cuts[2], cuts[3]),
                    Arc::new(cuts[3], cuts[0]),
                ];
                for fences in &levels {
                    for f in fences.iter().filter(|f| f.connects(&d, arcs[0], arcs[2])) {
                        t.separation_checked += 1;
                        if !check_separation(&d, arcs, f).unwrap().pass() {
                            fail(&mut t, "separation fails");
                        }
                    }
                }
            }
        }
        for s in 0..total {
            for len in 1..total {
                let arc = Arc::new(s, (s + len) % total);
                if is_reduced(g, &d.arc_label(arc)) {
                    t.arcs_checked += 1;
                    let seq = structured_sequences(&d, arc).unwrap();
                    if seq.len() < structured_lower_bound(g, len) {
                        fail(&mut t, "structured sequence below the bound");
                    }
                }
            }
        }
        t
    });
    let mut total = Tally::default();
    for t in tallies {
        total.diagrams += t.diagrams;
        total.oracle_compared += t.oracle_compared;
        total.separation_checked += t.separation_checked;
        total.arcs_checked += t.arcs_checked;
        total.failures.extend(t.failures);
    }

    let mut complete_checked = 0;
    let k = hypergraph_index(&named::t6()).index.finite().unwrap();
    for seed in 0..400 {
        if let Some((d, gamma, gamma_prime)) = complete_word_diagram(seed) {
            complete_checked += 1;
            if !fences_connecting(&d, gamma, gamma_prime, k - 1).is_empty() {
                total.failures.push(format!("complete-word diagram {seed} has a connecting fence"));
            }
        }
    }
    check(
        total.failures.is_empty() && complete_checked > 0 && total.oracle_compared > 0,
        format!(
            "{} diagrams, {} oracle comparisons, {} separation checks, {} reduced arcs, {} complete-word diagrams; {} failures {:?}",
            total.diagrams,
            total.oracle_compared,
            total.separation_checked,
            total.arcs_checked,
            complete_checked,
            total.failures.len(),
            total.failures.first()
        ),
    )
}

fn cli_binary() -> Option<PathBuf> {
    let exe = std::env::current_exe().ok()?;
    let dir = exe.parent()?.parent()?;
    let bin = dir.join(format!("racglab{}", std::env::consts::EXE_SUFFIX));
    bin.exists().then_some(bin)
}

fn criterion_9() -> Outcome {
    let spec = BatchSpec::new(12, 0.4, 200, 7).unwrap();
    let a = csv_bytes(&run_batch(&spec, Execution::Sequential));
    let b = csv_bytes(&run_batch(&spec, Execution::Sequential));
    let c = csv_bytes(&run_batch(&spec, Execution::Jobs(8)));
    let mut notes = vec![format!("library rows identical: {}", a == b && b == c)];
    let mut ok = a == b && b == c;

    match cli_binary() {
        None => {
            ok = false;
            notes.push("racglab binary not built; run the workspace tests".into());
        }
        Some(bin) => {
            let dir = std::env::temp_dir().join(format!("racglab-acceptance-{}", std::process::id()));
            std::fs::create_dir_all(&dir).unwrap();
            let run = |jobs: &str, out: &str| {
                let path = dir.join(out);
                let status = Command::new(&bin)
                    .args(["batch", "--n", "12", "--p", "0.4", "--trials", "200", "--seed", "7", "--jobs", jobs, "--out"])
                    .arg(&path)
                    .output()
                    .unwrap()
                    .status;
                (status.code(), std::fs::read(&path).unwrap_or_default())
            };
            let runs = [run("1", "a.csv"), run("1", "b.csv"), run("8", "c.csv")];
            let same = runs.iter().all(|r| r.0 == Some(0) && r.1 == runs[0].1) && runs[0].1 == a;
            notes.push(format!("cli csv identical across runs and jobs: {same}"));
            ok &= same;

            let fixtures = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures");
            let code = |args: &[&str]| Command::new(&bin).args(args).current_dir(&fixtures).output().unwrap().status.code();
            let golden = [
                (code(&["classify", "c4.json"]), Some(0)),
                (code(&["classify", "missing.json"]), Some(2)),
                (code(&["divergence", "c4.json", "--rmax", "2"]), Some(3)),
                (code(&["words", "c4.json", "reduce", "a z"]), Some(2)),
            ];
            let exits = golden.iter().all(|(got, want)| got == want);
            notes.push(format!("golden exit codes: {exits}"));
            ok &= exits;
            let _ = std::fs::remove_dir_all(&dir);
        }
    }
    check(ok, notes.join("; "))
}

fn main() {
    let criteria: [(&str, Criterion); 9] = [
        ("oracle equivalence of the special-subgraph enumerators", criterion_1),
        ("golden hypergraph indices", criterion_2),
        ("Λ-stage invariants", criterion_3),
        ("word problem against the Tits representation", criterion_4),
        ("complete words", criterion_5),
        ("exact grid divergence", criterion_6),
        ("divergence trends", criterion_7),
        ("diagram suite", criterion_8),
        ("batch determinism and exit codes", criterion_9),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let id = format!("criterion {}", i + 1);
        if !filter.is_empty() && !filter.iter().any(|f| id.contains(f.as_str()) || name.contains(f.as_str())) {
            continue;
        }
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Outcome::Fail(format!("panicked: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        let (verdict, detail) = match outcome {
            Outcome::Pass(d) => ("PASS", d),
            Outcome::Warn(d) => ("PASS (warning)", d),
            Outcome::Fail(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!("{id} [{name}]: {verdict} in {secs:.1}s: {detail}");
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
