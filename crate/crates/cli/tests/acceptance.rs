//! Acceptance criteria, one line per criterion. Run with
//! `cargo test -p korbit-cli --test acceptance` (add `--release` for timings
//! representative of real use).

use std::collections::{BTreeSet, HashMap, HashSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use korbit::catalog::{build_catalog, exhaustive_transitive, BuildOptions, Catalog};
use korbit::closure2::{two_closure, EngineLimits, Graph};
use korbit::korbit::{all_tuples, coherence, count_tuples, orb_k, project, KTuple, TupleSet};
use korbit::perm::{Permutation, PermutationGroup, DEFAULT_LATTICE_GROUP_CAP};
use korbit::regular::{polycirculant_survey, SurveyOptions, SurveyStatus};
use korbit_lemmas::{run_suite, verify_witness, CheckId, Status, SuiteConfig};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Perm = Vec<u8>;

fn perms(n: usize) -> Vec<Perm> {
    fn go(prefix: &mut Perm, used: &mut [bool], out: &mut Vec<Perm>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for x in 0..used.len() {
            if !used[x] {
                used[x] = true;
                prefix.push(x as u8);
                go(prefix, used, out);
                prefix.pop();
                used[x] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

fn mul(p: &Perm, q: &Perm) -> Perm {
    q.iter().map(|&x| p[x as usize]).collect()
}

fn inv(p: &Perm) -> Perm {
    let mut r = vec![0; p.len()];
    for (i, &x) in p.iter().enumerate() {
        r[x as usize] = i as u8;
    }
    r
}

fn close(gens: &BTreeSet<Perm>, n: usize) -> BTreeSet<Perm> {
    let mut set: BTreeSet<Perm> = BTreeSet::from([(0..n as u8).collect()]);
    let mut frontier: Vec<Perm> = set.iter().cloned().collect();
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y = mul(g, &x);
            if set.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    set
}

fn as_set(g: &PermutationGroup) -> BTreeSet<Perm> {
    g.elements().iter().map(|p| p.images().map(|x| x as u8).collect()).collect()
}

/// Transitive subgroups of `S_n` up to conjugacy, by growing every subgroup
/// one element at a time from the trivial group.
fn brute_transitive_classes(n: usize) -> usize {
    let sn = perms(n);
    let mut seen: HashSet<BTreeSet<Perm>> = HashSet::new();
    let mut todo = vec![close(&BTreeSet::new(), n)];
    seen.insert(todo[0].clone());
    while let Some(h) = todo.pop() {
        for g in &sn {
            if h.contains(g) {
                continue;
            }
            let mut gens = h.clone();
            gens.insert(g.clone());
            let k = close(&gens, n);
            if seen.insert(k.clone()) {
                todo.push(k);
            }
        }
    }
    let transitive = |h: &BTreeSet<Perm>| (0..n as u8).all(|y| h.iter().any(|p| p[0] == y));
    let canon = |h: &BTreeSet<Perm>| {
        sn.iter()
            .map(|s| {
                let si = inv(s);
                h.iter().map(|p| mul(&mul(s, p), &si)).collect::<BTreeSet<_>>()
            })
            .min()
            .unwrap()
    };
    seen.iter().filter(|h| transitive(h)).map(canon).collect::<HashSet<_>>().len()
}

/// 2-closure by filtering `S_n` for permutations preserving every orbital.
fn brute_two_closure(g: &PermutationGroup) -> BTreeSet<Perm> {
    let n = g.degree();
    let mut color = HashMap::new();
    for a in 0..n {
        for b in 0..n {
            if !color.contains_key(&(a, b)) {
                let c = color.len();
                for h in g.elements() {
                    color.entry((h.apply(a), h.apply(b))).or_insert(c);
                }
            }
        }
    }
    perms(n)
        .into_iter()
        .filter(|s| {
            (0..n).all(|a| (0..n).all(|b| color[&(a, b)] == color[&(s[a] as usize, s[b] as usize)]))
        })
        .collect()
}

/// Counts graph automorphisms by extending partial maps vertex by vertex,
/// pruning on degree and adjacency to already-mapped vertices.
fn brute_graph_automorphisms(adj: &[Vec<bool>]) -> usize {
    fn extend(adj: &[Vec<bool>], map: &mut Vec<usize>, used: &mut [bool]) -> usize {
        let v = map.len();
        if v == adj.len() {
            return 1;
        }
        let deg = |x: usize| adj[x].iter().filter(|&&e| e).count();
        let mut total = 0;
        for w in 0..adj.len() {
            if used[w] || deg(w) != deg(v) || (0..v).any(|u| adj[u][v] != adj[map[u]][w]) {
                continue;
            }
            used[w] = true;
            map.push(w);
            total += extend(adj, map, used);
            map.pop();
            used[w] = false;
        }
        total
    }
    extend(adj, &mut Vec::new(), &mut vec![false; adj.len()])
}

fn catalog(max_degree: usize) -> Catalog {
    let opts = BuildOptions {
        max_exhaustive_degree: max_degree.min(6),
        max_family_degree: max_degree,
        ..Default::default()
    };
    build_catalog(&opts).unwrap().catalog
}

fn tuple_set(tuples: &[&[usize]]) -> TupleSet {
    tuples.iter().map(|t| KTuple::from_one_based(t).unwrap()).collect()
}

fn c1_example_actions() -> String {
    let g = Permutation::parse("[3,1,2]", 3).unwrap();
    let x = tuple_set(&[&[1, 2, 3], &[1, 3, 2]]);
    let left = x.act(&g);
    let right = x.right_act(&g).unwrap();
    assert_eq!(left, tuple_set(&[&[3, 1, 2], &[3, 2, 1]]));
    assert_eq!(right, tuple_set(&[&[3, 1, 2], &[2, 1, 3]]));
    "left and right images match exactly".into()
}

fn c2_transitive_counts() -> String {
    let mut counts = Vec::new();
    for (n, expected) in [(2, 1), (3, 2), (4, 5), (5, 5)] {
        let lib = exhaustive_transitive(n, DEFAULT_LATTICE_GROUP_CAP).unwrap().len();
        let oracle = brute_transitive_classes(n);
        assert_eq!(lib, expected, "library count at n={n}");
        assert_eq!(oracle, expected, "oracle count at n={n}");
        counts.push(lib.to_string());
    }
    format!("counts {} match the brute-force oracle", counts.join("/"))
}

fn c3_two_closures() -> String {
    let cat = catalog(5);
    let lim = EngineLimits::default();
    let mut parts = Vec::new();
    for (id, order) in [("C4@4", 4), ("A4@4", 24), ("V4-regular@4", 4), ("A5@5", 120)] {
        let g = cat.require(id).unwrap().group().unwrap();
        let c = two_closure(&g, &lim).unwrap();
        assert_eq!(c.order(), order, "{id}");
        assert_eq!(as_set(&c), brute_two_closure(&g), "{id}");
        parts.push(format!("{id}->{order}"));
    }
    format!("{} (element sets equal the S_n filtration)", parts.join(", "))
}

fn c4_survey() -> String {
    let cat = catalog(6);
    let rows = polycirculant_survey(&cat.entries, &SurveyOptions::default());
    assert_eq!(rows.len(), cat.len());
    let mut confirmed = 0;
    for (row, entry) in rows.iter().zip(cat.iter()) {
        assert_ne!(row.status, SurveyStatus::Refuted, "{}", row.group_id);
        assert_ne!(row.status, SurveyStatus::Skipped, "{}", row.group_id);
        let g = entry.group().unwrap();
        let closed = g.is_transitive() && as_set(&g) == brute_two_closure(&g);
        assert_eq!(row.status == SurveyStatus::Confirmed, closed, "{}", row.group_id);
        if closed {
            let w = Permutation::from_images_one_based(row.witness_images.as_ref().unwrap()).unwrap();
            assert!(g.contains(&w) && !w.is_identity() && w.cycle_type().is_uniform());
            confirmed += 1;
        }
    }
    format!("{} groups, {confirmed} CONFIRMED, 0 REFUTED", rows.len())
}

fn c5_controls() -> String {
    let cat = catalog(7);
    let cfg = SuiteConfig {
        checks: vec![CheckId::Fks, CheckId::P3],
        max_degree: Some(7),
        ..Default::default()
    };
    let report = run_suite(&cat, &cfg);
    let transitive = cat.iter().filter(|e| e.tags.transitive == Some(true)).count();
    let fks: Vec<_> = report.rows.iter().filter(|r| r.check == CheckId::Fks).collect();
    assert_eq!(fks.len(), transitive);
    assert!(fks.iter().all(|r| r.status == Status::Pass));
    let p3: Vec<_> = report.rows.iter().filter(|r| r.check == CheckId::P3).collect();
    let applicable = p3.iter().filter(|r| r.status != Status::Vacuous).count();
    assert!(p3.iter().all(|r| matches!(r.status, Status::Pass | Status::Vacuous)));
    for r in &report.rows {
        if r.status == Status::Pass {
            assert!(verify_witness(&cat, r, &cfg).unwrap(), "{}", r.instance);
        }
    }
    format!("FKS {transitive}/{transitive} PASS, P3 {applicable}/{applicable} PASS")
}

fn c6_suite_integrity() -> String {
    let cat = catalog(5);
    let cfg = SuiteConfig {
        max_degree: Some(5),
        ..Default::default()
    };
    let a = run_suite(&cat, &cfg);
    let b = run_suite(&cat, &cfg);
    let serial = run_suite(
        &cat,
        &SuiteConfig {
            parallelism: Some(1),
            ..cfg.clone()
        },
    );
    let wide = run_suite(
        &cat,
        &SuiteConfig {
            parallelism: Some(4),
            ..cfg.clone()
        },
    );
    let text = a.to_jsonl();
    assert_eq!(text, b.to_jsonl());
    assert_eq!(text, serial.to_jsonl());
    assert_eq!(text, wide.to_jsonl());
    let t = &a.summary.totals;
    assert_eq!(t.pass + t.fail + t.vacuous + t.skipped + t.unknown, a.rows.len());
    for id in CheckId::all() {
        for e in cat.iter().filter(|e| e.degree <= 5) {
            assert!(a.rows.iter().any(|r| r.check == id && r.group_id == e.id), "{id} {}", e.id);
        }
    }
    let witnessed: Vec<_> = a
        .rows
        .iter()
        .filter(|r| matches!(r.status, Status::Pass | Status::Fail))
        .collect();
    for r in &witnessed {
        assert!(verify_witness(&cat, r, &cfg).unwrap(), "{}", r.instance);
    }
    format!(
        "{} rows ({} PASS, {} FAIL, {} VACUOUS, {} SKIPPED, {} UNKNOWN), {}/{} witnesses verified, reports identical",
        a.rows.len(),
        t.pass,
        t.fail,
        t.vacuous,
        t.skipped,
        t.unknown,
        witnessed.len(),
        witnessed.len()
    )
}

fn c7_korbit_invariants() -> String {
    let cat = catalog(6);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut checked = 0;
    for entry in cat.iter().filter(|e| e.degree <= 6) {
        let g = entry.group().unwrap();
        let n = g.degree();
        for k in [2, 3].into_iter().filter(|&k| k <= n) {
            let orbits = orb_k(&g, k, 1_000_000).unwrap();
            let mut union: HashSet<KTuple> = HashSet::new();
            for x in &orbits {
                assert_eq!(g.order() % x.len(), 0, "{} k={k}", entry.id);
                for t in x.tuples() {
                    assert!(union.insert(t.clone()), "orbits overlap in {}", entry.id);
                }
            }
            assert_eq!(union.len() as u128, count_tuples(n, k));
            assert_eq!(union.len(), all_tuples(n, k).len());
            for _ in 0..100 {
                let x = &orbits[rng.gen_range(0..orbits.len())];
                let mut images: Vec<usize> = (0..n).collect();
                for i in (1..n).rev() {
                    images.swap(i, rng.gen_range(0..=i));
                }
                let s = Permutation::from_images(&images).unwrap();
                let size = rng.gen_range(1..=k);
                let mut positions: Vec<usize> = (0..k).collect();
                for i in (1..k).rev() {
                    positions.swap(i, rng.gen_range(0..=i));
                }
                positions.truncate(size);
                let lhs = project(&x.tuples().act(&s), &positions).unwrap();
                let rhs = project(x.tuples(), &positions).unwrap().act(&s);
                assert_eq!(lhs, rhs);
            }
            for x in &orbits {
                let verdict = coherence(x);
                let comps: HashSet<Vec<usize>> = verdict.components.iter().cloned().collect();
                for gen in g.generators() {
                    for c in &verdict.components {
                        let mut image: Vec<usize> = c.iter().map(|&p| gen.apply(p)).collect();
                        image.sort_unstable();
                        assert!(comps.contains(&image), "{} k={k}", entry.id);
                    }
                }
            }
            checked += 1;
        }
    }
    format!("{checked} (group, k) pairs, 100 equivariance samples each")
}

fn c8_petersen() -> String {
    let graph = Graph::parse_graph6("IheA@GUAo").unwrap();
    assert_eq!(graph.order(), 10);
    assert_eq!(graph.edges().len(), 15);
    let adj: Vec<Vec<bool>> = (0..10).map(|u| (0..10).map(|v| graph.has_edge(u, v)).collect()).collect();
    let oracle = brute_graph_automorphisms(&adj);
    let aut = korbit::closure2::automorphisms(&graph.to_coloring(), &EngineLimits::default()).unwrap();
    assert_eq!(oracle, 120);
    assert_eq!(aut.order(), 120);
    assert!(aut.is_transitive());
    let w = aut
        .elements()
        .iter()
        .find(|p| p.fixed_points() == 0 && p.order() == 5)
        .expect("semiregular element of order 5");
    assert_eq!(w.cycles().len(), 2);
    assert!(w.cycles().iter().all(|c| c.len() == 5));
    for (u, v) in graph.edges() {
        assert!(graph.has_edge(w.apply(u), w.apply(v)));
    }
    format!("|Aut| = 120 (oracle 120), transitive, semiregular {}", w.to_cycle_string())
}

type Criterion = (&'static str, Duration, fn() -> String);

fn main() {
    let criteria: [Criterion; 8] = [
        ("1 example left/right action", Duration::from_millis(1), c1_example_actions),
        ("2 transitive class counts", Duration::from_secs(300), c2_transitive_counts),
        ("3 two-closure engine", Duration::from_secs(60), c3_two_closures),
        ("4 polycirculant survey", Duration::from_secs(600), c4_survey),
        ("5 control checks", Duration::from_secs(600), c5_controls),
        ("6 lemma suite integrity", Duration::from_secs(1800), c6_suite_integrity),
        ("7 k-orbit invariants", Duration::from_secs(600), c7_korbit_invariants),
        ("8 Petersen end-to-end", Duration::from_secs(120), c8_petersen),
    ];
    let default_hook = std::panic::take_hook();
    std::panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (name, budget, run) in criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run));
        let elapsed = start.elapsed();
        let (ok, detail) = match outcome {
            Ok(detail) if elapsed <= budget => (true, detail),
            Ok(detail) => (false, format!("{detail}; over the {budget:?} budget")),
            Err(e) => (
                false,
                e.downcast_ref::<String>()
                    .cloned()
                    .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_else(|| "panicked".into()),
            ),
        };
        failed += usize::from(!ok);
        println!(
            "[{}] criterion {name}: {detail} ({elapsed:.2?}, budget {budget:?})",
            if ok { "PASS" } else { "FAIL" }
        );
    }
    std::panic::set_hook(default_hook);
    println!("acceptance: {} of 8 criteria passed", 8 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
