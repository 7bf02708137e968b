//! Acceptance criteria, one PASS/FAIL line each. Runs without the libtest
//! harness so the lines are always printed.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::time::{Duration, Instant};

use fcarel::entropy::entropy;
use fcarel::selection::{SelectionOptions, Selector};
use fcarel::{
    clarify, enumerate_concepts, fixtures, is_irreducible, is_relevant_to_context, make_scale, object_entropy,
    parse_context, scale_entropy, shannon_object_entropy, ClarifyPolicy, EntropyKind, Enumerator, FormalContext,
    Format, Objective, RelevanceAnalysis, ScaleKind,
};
use num_rational::Ratio;
use rand::Rng;

use common::Table;

/// Criteria that are expected to fail, with the reason printed next to them.
const KNOWN_RED: &[(u32, &str)] = &[(
    6,
    "subadditivity does not hold in general; see the counterexample in tests/properties.rs",
)];

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    ensure(elapsed < limit, || format!("took {elapsed:?}, limit {limit:?}"))
}

fn ratio(n: u64, d: u64) -> Ratio<u64> {
    Ratio::new(n, d)
}

fn table_of(ctx: &FormalContext) -> Table {
    (0..ctx.object_count())
        .map(|g| (0..ctx.attribute_count()).map(|m| ctx.incident(g, m)).collect())
        .collect()
}

fn water4_basics() -> Check {
    let start = Instant::now();
    let k = parse_context(fixtures::WATER4_CXT.as_bytes(), Format::Cxt).map_err(|e| e.to_string())?;
    let a = RelevanceAnalysis::new(&k, ClarifyPolicy::Auto).map_err(|e| e.to_string())?;
    let cs = enumerate_concepts(&k).map_err(|e| e.to_string())?;
    let labels: Vec<(String, u64)> = k
        .objects()
        .iter()
        .enumerate()
        .map(|(g, name)| (name.clone(), cs.label(g)))
        .collect();
    let r: Vec<Ratio<u64>> = (0..4).map(|m| a.relevance(&[m]).unwrap().value()).collect();
    let elapsed = start.elapsed();
    ensure(cs.len() == 6, || format!("{} concepts", cs.len()))?;
    let expected: Vec<(String, u64)> = [("B", 2), ("F", 4), ("D", 2), ("S", 3)]
        .iter()
        .map(|&(n, l)| (n.to_string(), l))
        .collect();
    ensure(labels == expected, || format!("labels {labels:?}"))?;
    ensure(r == [ratio(0, 1), ratio(4, 11), ratio(3, 11), ratio(1, 11)], || {
        format!("r = {r:?}")
    })?;
    within(elapsed, Duration::from_millis(10))?;
    Ok(format!(
        "6 concepts, labels 2/4/2/3, r = 0, 4/11, 3/11, 1/11 in {elapsed:?}"
    ))
}

fn water6_sets() -> Check {
    let start = Instant::now();
    let k = parse_context(fixtures::WATER6_CXT.as_bytes(), Format::Cxt).map_err(|e| e.to_string())?;
    let a = RelevanceAnalysis::new(&k, ClarifyPolicy::Auto).map_err(|e| e.to_string())?;
    let r = |names: &[&str]| a.relevance(&k.attribute_indices(names).unwrap()).unwrap().value();
    let (bcd, bcg) = (r(&["b", "c", "d"]), r(&["b", "c", "g"]));
    let elapsed = start.elapsed();
    ensure(bcd == ratio(17, 33), || format!("r(bcd) = {bcd}"))?;
    ensure(bcg == ratio(19, 33), || format!("r(bcg) = {bcg}"))?;
    within(elapsed, Duration::from_millis(10))?;
    Ok(format!("r(bcd) = 17/33, r(bcg) = 19/33 in {elapsed:?}"))
}

fn water4_entropy() -> Check {
    let k = fixtures::water4();
    let oe = object_entropy(&k).map_err(|e| e.to_string())?;
    let se = shannon_object_entropy(&k, true).map_err(|e| e.to_string())?;
    ensure((oe - 0.5625).abs() < 1e-12, || format!("OE = {oe}"))?;
    ensure((se - 0.4528).abs() <= 0.005, || format!("normalized SE = {se}"))?;
    Ok(format!("OE = {oe}, normalized SE = {se:.4}"))
}

fn scale_closed_forms() -> Check {
    let start = Instant::now();
    let mut checked = 0;
    for n in 1..=64usize {
        for kind in ScaleKind::ALL {
            let k = make_scale(kind, n).map_err(|e| e.to_string())?;
            for which in [EntropyKind::ShannonObject, EntropyKind::Object] {
                let direct = entropy(&k, which).map_err(|e| e.to_string())?;
                let closed = scale_entropy(kind, n, which).map_err(|e| e.to_string())?;
                ensure((direct - closed).abs() <= 1e-9, || {
                    format!("{kind} n={n} {which:?}: direct {direct}, closed form {closed}")
                })?;
                checked += 1;
            }
        }
        for kind in [ScaleKind::Nominal, ScaleKind::Ordinal] {
            let k = make_scale(kind, n).map_err(|e| e.to_string())?;
            let a = RelevanceAnalysis::new(&k, ClarifyPolicy::Strict).map_err(|e| e.to_string())?;
            for m in 0..n {
                let extent = k.column(m).len() as u64;
                let got = a.relevance(&[m]).unwrap().value();
                // A full column is the empty intersection, hence never relevant.
                let expected = if extent == n as u64 {
                    ratio(0, 1)
                } else if kind == ScaleKind::Nominal {
                    ratio(1, 2 * n as u64)
                } else {
                    ratio(2 * extent, (n * (n + 1)) as u64)
                };
                ensure(got == expected, || {
                    format!("{kind} n={n} m={m}: r = {got}, expected {expected}")
                })?;
                checked += 1;
            }
        }
    }
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(5))?;
    Ok(format!("{checked} checks for n = 1..64 in {elapsed:?}"))
}

fn oracle_equivalence() -> Check {
    let start = Instant::now();
    let mut rng = common::rng(5);
    let (mut relevance_checks, mut lemma_checks) = (0, 0);
    for i in 0..200 {
        let (g, m) = (rng.gen_range(1..=8), rng.gen_range(1..=8));
        let density = rng.gen_range(0.2..0.8);
        let t = common::random_table(&mut rng, g, m, density);
        let k = common::context(&t, m);
        let cs = enumerate_concepts(&k).map_err(|e| e.to_string())?;
        let ours: std::collections::BTreeSet<_> = cs.iter().map(|c| (c.extent.to_vec(), c.intent.to_vec())).collect();
        ensure(ours == common::brute_concepts(&t, m), || {
            format!("context {i}: concept sets differ")
        })?;

        let (c, _) = clarify(&k);
        let ct = table_of(&c);
        let a = RelevanceAnalysis::new(&c, ClarifyPolicy::Strict).map_err(|e| e.to_string())?;
        for x in 0..c.attribute_count() {
            let relevant = is_relevant_to_context(&c, x).map_err(|e| e.to_string())?;
            let irreducible = is_irreducible(&c, x).map_err(|e| e.to_string())?;
            ensure(
                irreducible == common::brute_irreducible(&ct, c.attribute_count(), x),
                || format!("context {i}: irreducibility of {x} disagrees with the column oracle"),
            )?;
            if c.column(x).is_empty() {
                ensure(!relevant, || format!("context {i}: empty column {x} reported relevant"))?;
            } else {
                ensure(relevant == irreducible, || {
                    format!("context {i}: attribute {x} relevant={relevant} irreducible={irreducible}")
                })?;
            }
            lemma_checks += 1;

            let r = a.relevance(&[x]).unwrap().value();
            let (lost, total) = common::label_relevance(&ct, c.attribute_count(), &[x]);
            ensure(r == Ratio::new(lost, total), || {
                format!("context {i}: r({x}) = {r} but label oracle gives {lost}/{total}")
            })?;
            relevance_checks += 1;
        }
    }
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(30))?;
    Ok(format!(
        "200 contexts match the power-set oracle; {lemma_checks} irreducibility and {relevance_checks} label checks in {elapsed:?}"
    ))
}

fn lemma2_properties() -> Check {
    let start = Instant::now();
    let mut rng = common::rng(6);
    let (mut monotone_bad, mut subadditive_bad) = (0, 0);
    let mut example = None;
    for _ in 0..500 {
        let (g, m) = (rng.gen_range(1..=8), rng.gen_range(1..=8));
        let density = rng.gen_range(0.2..0.8);
        let t = common::random_table(&mut rng, g, m, density);
        let k = common::context(&t, m);
        let s = common::random_subset(&mut rng, m, 0.35);
        let u = common::random_subset(&mut rng, m, 0.35);
        let union: Vec<usize> = (0..m).filter(|x| s.contains(x) || u.contains(x)).collect();
        let a = RelevanceAnalysis::new(&k, ClarifyPolicy::Auto).map_err(|e| e.to_string())?;
        let (rs, ru, runion) = (
            a.relevance(&s).unwrap().value(),
            a.relevance(&u).unwrap().value(),
            a.relevance(&union).unwrap().value(),
        );
        if rs > runion || ru > runion {
            monotone_bad += 1;
        }
        if runion > rs + ru {
            subadditive_bad += 1;
            example.get_or_insert_with(|| format!("S={s:?} T={u:?}: r(S∪T)={runion} > {rs} + {ru}"));
        }
    }
    let elapsed = start.elapsed();
    let summary = format!(
        "500 triples: {monotone_bad} monotonicity and {subadditive_bad} subadditivity violations in {elapsed:?}"
    );
    ensure(monotone_bad == 0 && subadditive_bad == 0, || match &example {
        Some(e) => format!("{summary}; first: {e}"),
        None => summary.clone(),
    })?;
    within(elapsed, Duration::from_secs(60))?;
    Ok(summary)
}

fn cex4() -> Check {
    let k = fixtures::cex4();
    let sel = Selector::new(&k, SelectionOptions::default()).map_err(|e| e.to_string())?;
    let a = sel.analysis();
    let idx = |n: &str| k.attribute_index(n).unwrap();
    let r = |names: &[&str]| a.relevance(&names.iter().map(|n| idx(n)).collect::<Vec<_>>()).unwrap();
    let b = r(&["b"]);
    for other in ["a", "c", "d"] {
        ensure(r(&[other]) < b, || {
            format!("r({other}) = {} is not below r(b) = {b}", r(&[other]))
        })?;
    }
    let best = sel.exhaustive(2).map_err(|e| e.to_string())?;
    ensure(best.names == ["a", "c"], || format!("exhaustive(2) = {:?}", best.names))?;
    for x in ["a", "c", "d"] {
        let rb = r(&["b", x]);
        ensure(best.relevance > rb, || {
            format!("r(ac) = {} not above r(b{x}) = {rb}", best.relevance)
        })?;
    }
    let greedy = sel.imrs(2).map_err(|e| e.to_string())?;
    ensure(greedy.names.iter().any(|n| n == "b"), || {
        format!("imrs(2) = {:?}", greedy.names)
    })?;
    ensure(greedy.relevance < best.relevance, || {
        format!(
            "imrs r = {} not below exhaustive r = {}",
            greedy.relevance, best.relevance
        )
    })?;
    Ok(format!(
        "r(b) = {b} is the unique best singleton; exhaustive {{a,c}} r = {} > IMRS {{{}}} r = {}",
        best.relevance,
        greedy.names.join(","),
        greedy.relevance
    ))
}

fn imrs_cost() -> Check {
    let mut rng = common::rng(8);
    let mut pairs = 0;
    let mut contexts = 0;
    while contexts < 3 {
        let t = common::random_table(&mut rng, 24, 12, 0.5);
        if !common::is_clarified(&t, 12) {
            continue;
        }
        contexts += 1;
        let k = common::context(&t, 12);
        for width in 1..=12usize {
            let sub = k.subcontext_keep(&(0..width).collect::<Vec<_>>()).unwrap();
            let sel = Selector::new(&sub, SelectionOptions::default()).map_err(|e| e.to_string())?;
            ensure(sel.candidate_count() == width, || "sub-context not clarified".into())?;
            for n in 1..=width {
                let got = sel.imrs(n).map_err(|e| e.to_string())?.evaluations;
                let expected = (n * width - n * (n - 1) / 2) as u64;
                ensure(got == expected, || {
                    format!("|M|={width} n={n}: {got} evaluations, expected {expected}")
                })?;
                pairs += 1;
            }
        }
    }
    Ok(format!("{pairs} (n, |M|) pairs over 3 clarified 24x12 contexts"))
}

fn trend() -> Check {
    let start = Instant::now();
    let sizes = [2usize, 3, 4];
    let mut era_oe = [0.0; 3];
    let mut era_se = [0.0; 3];
    let mut random = [0.0; 3];
    let mut used = 0;
    for seed in 0..30u64 {
        let mut rng = common::rng(900 + seed);
        let t = common::random_table(&mut rng, 10, 12, 0.4);
        let k = common::context(&t, 12).with_name(format!("random-{seed}"));
        let sel = Selector::new(&k, SelectionOptions::default()).map_err(|e| e.to_string())?;
        let trials = sel.default_trials();
        let mut row = ([0.0; 3], [0.0; 3], [0.0; 3]);
        for (i, &n) in sizes.iter().enumerate() {
            row.0[i] = sel
                .era(n, EntropyKind::Object, Objective::Maximize)
                .map_err(|e| e.to_string())?
                .relevance
                .to_f64();
            row.1[i] = sel
                .era(n, EntropyKind::ShannonObject, Objective::Maximize)
                .map_err(|e| e.to_string())?
                .relevance
                .to_f64();
            row.2[i] = sel.random(n, trials, seed).map_err(|e| e.to_string())?.mean;
        }
        for i in 0..3 {
            era_oe[i] += row.0[i];
            era_se[i] += row.1[i];
            random[i] += row.2[i];
        }
        used += 1;
    }
    let mean = |v: [f64; 3]| v.map(|x| x / used as f64);
    let (era_oe, era_se, random) = (mean(era_oe), mean(era_se), mean(random));
    let table = format!(
        "sizes 2-4: ERA-OE {:.3?}, ERA-SE {:.3?}, random {:.3?}",
        era_oe, era_se, random
    );
    for i in 0..3 {
        ensure(era_oe[i] > random[i] && era_se[i] > random[i], || {
            format!("{table}: ERA does not beat random at size {}", sizes[i])
        })?;
    }

    let mut fixture_checks = 0;
    for (_, k) in fixtures::all() {
        let sel = Selector::new(&k, SelectionOptions::default()).map_err(|e| e.to_string())?;
        for n in 1..=sel.candidate_count() {
            let imrs = sel.imrs(n).map_err(|e| e.to_string())?.relevance;
            for kind in [EntropyKind::Object, EntropyKind::ShannonObject] {
                let era = sel
                    .era(n, kind, Objective::Maximize)
                    .map_err(|e| e.to_string())?
                    .relevance;
                ensure(imrs >= era, || {
                    format!("{}: size {n} IMRS r = {imrs} below ERA-{kind:?} r = {era}", k.name())
                })?;
                fixture_checks += 1;
            }
        }
    }
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(120))?;
    Ok(format!(
        "{table}; IMRS >= ERA in {fixture_checks} fixture checks; {elapsed:?}"
    ))
}

fn performance() -> Check {
    let mut rng = common::rng(10);
    let t = common::random_table(&mut rng, 500, 30, 0.3);
    let k = common::context(&t, 30);
    let start = Instant::now();
    let cs = Enumerator::default().enumerate(&k).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(5))?;
    let mut detail = format!("500x30 at density 0.3: {} concepts in {elapsed:?}", cs.len());

    let mushroom = std::env::var_os("FCAREL_MUSHROOM_CXT").map(PathBuf::from).or_else(|| {
        let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "fixtures", "mushroom.cxt"]
            .iter()
            .collect();
        p.exists().then_some(p)
    });
    match mushroom {
        Some(path) => {
            let bytes = std::fs::read(&path).map_err(|e| format!("{}: {e}", path.display()))?;
            let k = parse_context(&bytes, Format::from_path(&path)).map_err(|e| e.to_string())?;
            let count = Enumerator::default().count(&k).map_err(|e| e.to_string())?;
            ensure(count == 238_710, || {
                format!("{detail}; mushroom has {count} concepts, expected 238710")
            })?;
            detail.push_str("; mushroom: 238710 concepts");
        }
        None => detail.push_str("; mushroom check skipped (no fixture)"),
    }
    Ok(detail)
}

fn main() {
    let criteria: [(u32, fn() -> Check); 10] = [
        (1, water4_basics),
        (2, water6_sets),
        (3, water4_entropy),
        (4, scale_closed_forms),
        (5, oracle_equivalence),
        (6, lemma2_properties),
        (7, cex4),
        (8, imrs_cost),
        (9, trend),
        (10, performance),
    ];
    // warm up the thread pool so criterion 1 is not charged for it
    let _ = enumerate_concepts(&fixtures::water4());

    let mut unexpected = Vec::new();
    for (n, check) in criteria {
        let result = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into()))
        });
        let known = KNOWN_RED.iter().find(|(k, _)| *k == n).map(|(_, why)| *why);
        match (&result, known) {
            (Ok(detail), _) => println!("criterion {n:>2}: PASS  {detail}"),
            (Err(detail), Some(why)) => println!("criterion {n:>2}: FAIL  {detail} [known: {why}]"),
            (Err(detail), None) => {
                println!("criterion {n:>2}: FAIL  {detail}");
                unexpected.push(n);
            }
        }
    }
    if !unexpected.is_empty() {
        eprintln!("unexpected failures: {unexpected:?}");
        std::process::exit(1);
    }
}
