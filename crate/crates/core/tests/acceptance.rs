//! Acceptance criteria. Each test prints one `criterion N: PASS|FAIL ...`
//! line; run with `cargo test -p indet-core --test acceptance -- --nocapture`
//! to see them.

use std::sync::Mutex;
use std::time::{Duration, Instant};

use indet_core::bench::{gen_random_feasible, growth_trend, run_bench, stream_rng, BenchConfig};
use indet_core::graph::{
    build_prefix_graph, edge_label_string, is_regular, isolated_by_conditions, isolated_by_degree,
    Edge,
};
use indet_core::oracle::{
    all_feasible_up_to, brute_force_is_regular, brute_force_lex_least, enumerate_feasible,
    EnumerationBudget,
};
use indet_core::par;
use indet_core::reveng::{infer, infer_traced, render_trace};
use indet_core::string::letters_match;
use indet_core::{compute_prefix_table, FeasibleArray, IndeterminateString};

/// Criteria run one at a time so sweeps on the thread pool do not disturb
/// the timing measurements.
static SERIAL: Mutex<()> = Mutex::new(());

fn serial() -> std::sync::MutexGuard<'static, ()> {
    SERIAL.lock().unwrap_or_else(|e| e.into_inner())
}

fn y(s: &str) -> FeasibleArray {
    s.parse().unwrap()
}

fn x(s: &str) -> IndeterminateString {
    s.parse().unwrap()
}

fn report(id: u32, ok: bool, detail: impl AsRef<str>) {
    println!(
        "criterion {id}: {} {}",
        if ok { "PASS" } else { "FAIL" },
        detail.as_ref()
    );
}

fn edges(list: &[(usize, usize)]) -> Vec<Edge> {
    list.iter().map(|&(u, v)| Edge { u, v }).collect()
}

#[test]
fn criterion_01_golden_prefix_tables() {
    let _guard = serial();
    let cases = [
        ("a c a g a c a t", "8 0 1 0 3 0 1 0"),
        ("{a,c} {g,t} {a,g} {a,c,g} g c {a,t} a", "8 0 4 2 0 3 1 1"),
        ("{a,b} {a,c} c {a,b} b c {a,c} b", "8 2 0 1 4 0 1 1"),
        ("{a,b} {a,c} {a,d} {c,e} a {b,e} c d", "8 2 4 0 1 3 0 0"),
    ];
    let mut failures = Vec::new();
    let mut slowest = Duration::ZERO;
    for (s, table) in cases {
        let s = x(s);
        let start = Instant::now();
        let got = compute_prefix_table(&s);
        let took = start.elapsed();
        slowest = slowest.max(took);
        if got != y(table) || took >= Duration::from_millis(1) {
            failures.push(format!("{s}: got {got} in {took:?}"));
        }
    }
    report(
        1,
        failures.is_empty(),
        format!("4 tables, slowest {slowest:?} {failures:?}"),
    );
    assert!(failures.is_empty(), "{failures:?}");
}

#[test]
fn criterion_02_golden_graphs() {
    let _guard = serial();
    let g = build_prefix_graph(&y("5 0 2 1 0"));
    let ok_a = g.pos_edges() == edges(&[(1, 3), (1, 4), (2, 4)])
        && g.neg_edges() == edges(&[(1, 2), (1, 5), (2, 5), (3, 5)]);
    let g = build_prefix_graph(&y("8 2 0 1 4 0 1 1"));
    let ok_b = g.pos_edges()
        == edges(&[
            (1, 2),
            (1, 4),
            (1, 5),
            (1, 7),
            (1, 8),
            (2, 3),
            (2, 6),
            (3, 7),
            (4, 8),
        ])
        && g.neg_edges() == edges(&[(1, 3), (1, 6), (2, 5), (2, 8), (3, 4)]);
    report(2, ok_a && ok_b, format!("50210: {ok_a}, 82014011: {ok_b}"));
    assert!(ok_a && ok_b);
}

#[test]
fn criterion_03_golden_inference_and_trace() {
    let _guard = serial();
    let (s, trace) = infer_traced(&y("5 0 2 1 0"));
    let text = render_trace(&trace, &s);
    let expected = "\
# reveng trace v1
edge (1,3)
new a -> 1,3
forbid a at 2,5 (from 1)
forbid a at 5 (from 3)
edge (1,4)
accept a -> 4
edge (2,4)
reject a -> 2
new b -> 2,4
forbid b at 1,5 (from 2)
least 5 -> c
result a b a {a,b} c
";
    let ok = s.to_string() == "a b a {a,b} c" && text == expected;
    report(3, ok, format!("infer(50210) = {s}"));
    assert_eq!(text, expected);
}

/// Round-trip failure description for one array, or `None`.
fn round_trip_failure(arr: &FeasibleArray) -> Option<String> {
    let s = infer(arr);
    let g = build_prefix_graph(arr);
    if compute_prefix_table(&s) != *arr {
        return Some(format!("{arr}: table of {s} differs"));
    }
    if let Some(e) = g
        .pos_edges()
        .iter()
        .find(|e| !letters_match(s.at(e.u), s.at(e.v)))
    {
        return Some(format!("{arr}: positive edge {e:?} unmatched"));
    }
    if let Some(e) = g
        .neg_edges()
        .iter()
        .find(|e| letters_match(s.at(e.u), s.at(e.v)))
    {
        return Some(format!("{arr}: negative edge {e:?} matched"));
    }
    None
}

#[test]
fn criterion_04_round_trip_exhaustive() {
    let _guard = serial();
    let start = Instant::now();
    let corpus = all_feasible_up_to(8);
    let failures: Vec<String> = par::map(&corpus, round_trip_failure)
        .into_iter()
        .flatten()
        .collect();
    let took = start.elapsed();
    let ok = failures.is_empty() && took < Duration::from_secs(120);
    report(
        4,
        ok,
        format!(
            "{} arrays, {} failures, {took:?}",
            corpus.len(),
            failures.len()
        ),
    );
    assert_eq!(corpus.len(), 46_233);
    assert!(
        failures.is_empty(),
        "{:?}",
        &failures[..failures.len().min(10)]
    );
    assert!(took < Duration::from_secs(120));
}

#[test]
fn criterion_05_minimality_against_oracle() {
    let _guard = serial();
    let start = Instant::now();
    // n <= 4, 50210, and every n = 5 array (a superset of any random sample).
    let mut corpus = all_feasible_up_to(4);
    corpus.push(y("5 0 2 1 0"));
    corpus.extend(enumerate_feasible(5));
    let budget = EnumerationBudget::default();
    let mut failures = Vec::new();
    for arr in &corpus {
        let ours = infer(arr);
        let oracle = brute_force_lex_least(arr, &budget).expect("within budget");
        if ours != oracle.string || ours.alphabet_size() != oracle.alphabet_size {
            failures.push(format!(
                "{arr}: infer {ours} (sigma {}) vs oracle {} (sigma {})",
                ours.alphabet_size(),
                oracle.string,
                oracle.alphabet_size
            ));
        }
    }
    let took = start.elapsed();
    let ok = failures.is_empty() && took < Duration::from_secs(600);
    report(
        5,
        ok,
        format!(
            "{} arrays, {} disagreements, {took:?}",
            corpus.len(),
            failures.len()
        ),
    );
    for f in &failures {
        println!("  {f}");
    }
    assert!(failures.is_empty(), "{failures:#?}");
}

#[test]
fn criterion_06_regularity_equivalence() {
    let _guard = serial();
    let budget = EnumerationBudget {
        max_n: 6,
        ..Default::default()
    };
    let corpus = all_feasible_up_to(6);
    let failures: Vec<String> = par::map(&corpus, |arr| {
        let fast = is_regular(arr).regular;
        let brute = brute_force_is_regular(arr, &budget).expect("within budget");
        (fast != brute).then(|| format!("{arr}: fast {fast}, brute {brute}"))
    })
    .into_iter()
    .flatten()
    .collect();
    report(
        6,
        failures.is_empty(),
        format!("{} arrays, {} failures", corpus.len(), failures.len()),
    );
    assert!(failures.is_empty(), "{failures:?}");
}

#[test]
fn criterion_07_edge_label_construction() {
    let _guard = serial();
    let corpus = all_feasible_up_to(7);
    let failures: Vec<String> = par::map(&corpus, |arr| {
        let s = edge_label_string(&build_prefix_graph(arr));
        (compute_prefix_table(&s) != *arr).then(|| format!("{arr}: {s}"))
    })
    .into_iter()
    .flatten()
    .collect();
    report(
        7,
        failures.is_empty(),
        format!("{} arrays, {} failures", corpus.len(), failures.len()),
    );
    assert!(failures.is_empty(), "{failures:?}");
}

#[test]
fn criterion_08_isolated_vertex_equivalence() {
    let _guard = serial();
    let corpus = all_feasible_up_to(8);
    let failures: Vec<String> = par::map(&corpus, |arr| {
        let a = isolated_by_conditions(arr);
        let b = isolated_by_degree(&build_prefix_graph(arr));
        (a != b).then(|| format!("{arr}: conditions {a:?}, degree {b:?}"))
    })
    .into_iter()
    .flatten()
    .collect();
    report(
        8,
        failures.is_empty(),
        format!("{} arrays, {} failures", corpus.len(), failures.len()),
    );
    assert!(failures.is_empty(), "{failures:?}");
}

#[derive(Default)]
struct BoundViolations {
    sigma_sqrt: Vec<String>,
    neg_count: Vec<String>,
    pos_count: Vec<String>,
    total_count: Vec<String>,
    regular_singletons: Vec<String>,
    regular_log2: Vec<String>,
}

fn ceil_sqrt(n: usize) -> usize {
    let mut r = (n as f64).sqrt() as usize;
    while r * r < n {
        r += 1;
    }
    while r > 0 && (r - 1) * (r - 1) >= n {
        r -= 1;
    }
    r
}

fn ceil_log2(n: usize) -> usize {
    n.next_power_of_two().trailing_zeros() as usize
}

#[test]
fn criterion_09_bounds() {
    let _guard = serial();
    let mut corpus = all_feasible_up_to(8);
    let mut rng = stream_rng(2014, 100);
    corpus.extend((0..1000).map(|_| gen_random_feasible(100, &mut rng)));

    let checks = par::map(&corpus, |arr| {
        let n = arr.len();
        let g = build_prefix_graph(arr);
        let s = infer(arr);
        let sigma = s.alphabet_size();
        let (pos, neg) = (g.pos_edges().len(), g.neg_edges().len());
        let regular = is_regular(arr).regular;
        [
            (sigma > n + ceil_sqrt(n)).then(|| format!("{arr}: sigma {sigma}")),
            (neg > n - 1).then(|| format!("{arr}: |E-| {neg}")),
            (pos > n * (n - 1) / 2).then(|| format!("{arr}: |E+| {pos}")),
            (pos + neg < n - 1).then(|| format!("{arr}: |E+|+|E-| {}", pos + neg)),
            (regular && !s.is_regular()).then(|| format!("{arr}: {s} not regular")),
            (regular && n >= 2 && sigma > ceil_log2(n)).then(|| {
                format!(
                    "{arr}: {s} uses {sigma} > ceil(log2 {n}) = {}",
                    ceil_log2(n)
                )
            }),
        ]
    });
    let mut v = BoundViolations::default();
    for [a, b, c, d, e, f] in checks {
        v.sigma_sqrt.extend(a);
        v.neg_count.extend(b);
        v.pos_count.extend(c);
        v.total_count.extend(d);
        v.regular_singletons.extend(e);
        v.regular_log2.extend(f);
    }
    let parts = [
        ("sigma <= n + ceil(sqrt n)", &v.sigma_sqrt),
        ("|E-| <= n-1", &v.neg_count),
        ("|E+| <= n(n-1)/2", &v.pos_count),
        ("|E+|+|E-| >= n-1", &v.total_count),
        ("regular y gives regular output", &v.regular_singletons),
        ("regular sigma <= ceil(log2 n)", &v.regular_log2),
    ];
    let ok = parts.iter().all(|(_, list)| list.is_empty());
    report(9, ok, format!("{} arrays", corpus.len()));
    for (name, list) in &parts {
        println!("  {name}: {} violations", list.len());
        for item in list.iter().take(5) {
            println!("    {item}");
        }
    }
    assert!(ok, "bound violations, see output");
}

#[test]
fn criterion_10_growth_trend() {
    let _guard = serial();
    let start = Instant::now();
    let cfg = BenchConfig::new(vec![50, 100, 200, 400, 800], 200, 2014);
    let report_rows = run_bench(&cfg).expect("bench runs").rows;
    let slope = growth_trend(&report_rows).unwrap();
    let took = start.elapsed();
    let ok = (1.8..=3.2).contains(&slope) && took < Duration::from_secs(300);
    report(10, ok, format!("log-log slope {slope:.3}, {took:?}"));
    for r in &report_rows {
        println!(
            "  n={} mean_us={:.1} mean_sigma={:.1} |E+|={:.0} |E-|={:.0}",
            r.n, r.mean_us, r.mean_sigma, r.mean_pos_edges, r.mean_neg_edges
        );
    }
    assert!((1.8..=3.2).contains(&slope), "slope {slope}");
    assert!(took < Duration::from_secs(300));
}
