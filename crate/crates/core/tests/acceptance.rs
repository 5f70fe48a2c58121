//! Acceptance run: one line per criterion.
//!
//! Criteria 3 and 4 do not hold as literally stated. Their lines report the
//! literal outcome, and the run then checks the precise shape of the failure
//! so that any other deviation still fails the binary.

use std::collections::BTreeSet;
use std::process::ExitCode;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use treemult_core::families::{generate, is_member, Clause, FamilyKind};
use treemult_core::poly::{all_lambda_specs, minimal_degree, path_charpoly};
use treemult_core::spectrum::{char_poly, multiplicity, multiplicity_via_rank};
use treemult_core::tree::enumerate_trees;
use treemult_core::verify::{lemma_suite, LemmaChecks, Status};
use treemult_core::{
    classify, sweep, Family, FamilyResult, Gamma2Mode, LambdaSpec, Polynomial, SweepConfig, Tree,
    VerificationRecord,
};

const N_MAX: usize = 14;
const M_MAX: u64 = 15;

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Outcome { pass, detail: detail.into() }
    }
}

/// `expected` says whether the literal criterion is known to fail; the run
/// only counts a criterion against the exit status when it deviates from that.
fn report(id: u32, name: &str, literal: Outcome, expected_pass: bool, failures: &mut Vec<u32>) {
    let tag = if literal.pass { "PASS" } else { "FAIL" };
    println!("criterion {id} {tag} {name}: {}", literal.detail);
    if literal.pass != expected_pass {
        failures.push(id);
    }
}

fn spec(i: u64, m: u64) -> LambdaSpec {
    LambdaSpec::new(i, m).unwrap()
}

fn config(n_max: usize, m_max: u64, modes: Vec<Gamma2Mode>) -> SweepConfig {
    SweepConfig {
        n_min: 1,
        n_max,
        m_max,
        modes,
        ..SweepConfig::default()
    }
}

fn record_tree(r: &VerificationRecord) -> Tree {
    Tree::from_graph6(&r.tree).unwrap()
}

fn record_lambda(r: &VerificationRecord) -> LambdaSpec {
    spec(r.lambda[0], r.lambda[1])
}

/// Levels along a witness chain, starting from `gamma`.
fn step_levels(result: &FamilyResult, gamma: usize) -> Vec<usize> {
    let mut level = gamma;
    let mut out = Vec::new();
    for step in &result.witness {
        out.push(level);
        if let Some(next) = step.distinguished().and_then(|c| c.role.level()) {
            level = next;
        }
    }
    out
}

/// A non-pendant `Gamma` step whose component sits more than one level down.
fn skips_a_level(result: &FamilyResult, gamma: usize) -> bool {
    result.witness.iter().zip(step_levels(result, gamma)).any(|(step, level)| {
        step.clause == Clause::NonPendantGamma
            && step
                .components
                .iter()
                .find(|c| !c.attach_is_pendant)
                .and_then(|c| c.role.level())
                .is_some_and(|l| l + 1 < level)
    })
}

/// A three-leg step whose spider does not carry `lambda`.
fn spider_without_lambda(result: &FamilyResult, lambda: &LambdaSpec) -> bool {
    result.witness.iter().any(|step| {
        step.clause == Clause::ThreeGamma2Zero && {
            let legs: Vec<usize> = step.components.iter().map(|c| c.size).collect();
            multiplicity(&Tree::spider(&legs), lambda) == 0
        }
    })
}

/// Prüfer decoding, written independently of the tree module.
fn prufer_edges(seq: &[usize]) -> Vec<(usize, usize)> {
    let n = seq.len() + 2;
    let mut degree = vec![1usize; n];
    for &v in seq {
        degree[v] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &v in seq {
        let leaf = (0..n).find(|&u| degree[u] == 1).unwrap();
        edges.push((leaf, v));
        degree[leaf] -= 1;
        degree[v] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&u| degree[u] == 1).collect();
    edges.push((rest[0], rest[1]));
    edges
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn totient(n: u64) -> u64 {
    (1..=n).filter(|&k| gcd(k, n) == 1).count() as u64
}

/// `det(xI - A)` of the path by the Leibniz formula on integer coefficient vectors.
fn path_determinant(n: usize) -> Vec<i64> {
    let entry = |i: usize, j: usize| -> Vec<i64> {
        if i == j {
            vec![0, 1]
        } else if i.abs_diff(j) == 1 {
            vec![-1]
        } else {
            vec![0]
        }
    };
    let mut total = vec![0i64; n + 1];
    let mut perm: Vec<usize> = (0..n).collect();
    let mut c = vec![0usize; n];
    let mut sign = 1i64;
    let mut add = |perm: &[usize], sign: i64| {
        let mut prod = vec![1i64];
        for (i, &j) in perm.iter().enumerate() {
            let e = entry(i, j);
            let mut next = vec![0i64; prod.len() + e.len() - 1];
            for (a, x) in prod.iter().enumerate() {
                for (b, y) in e.iter().enumerate() {
                    next[a + b] += x * y;
                }
            }
            prod = next;
        }
        for (k, v) in prod.into_iter().enumerate() {
            total[k] += sign * v;
        }
    };
    add(&perm, sign);
    // Heap's algorithm: every step is one transposition.
    let mut i = 1;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            sign = -sign;
            add(&perm, sign);
            c[i] += 1;
            i = 1;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    total
}

fn criterion_bound(records: &[VerificationRecord]) -> Outcome {
    let bad = records.iter().filter(|r| r.m + 1 > r.p || !r.bound_ok).count();
    Outcome::new(bad == 0, format!("{bad} violations over {} pairs", records.len()))
}

fn criterion_p_minus_one(records: &[VerificationRecord]) -> Outcome {
    let bad = records
        .iter()
        .filter(|r| {
            let in_gamma = r.classification[&Gamma2Mode::Broad] == Family::Gamma(r.gamma).to_string();
            (r.m + 1 == r.p) != in_gamma || r.p_minus_one_status != Status::Consistent
        })
        .count();
    Outcome::new(bad == 0, format!("{bad} violations over {} pairs", records.len()))
}

/// Literal outcome, plus whether every violation is one of the two known gaps
/// and the corrected families close both.
fn criterion_p_minus_two(records: &[VerificationRecord]) -> (Outcome, bool) {
    let mut only_if = 0;
    let mut only_if_explained = 0;
    let mut if_dir = 0;
    let mut if_explained = 0;
    let mut corrected = 0;
    let mut applicable = 0;
    for r in records.iter().filter(|r| r.m >= 1) {
        applicable += 1;
        let want = r.m + 2 == r.p;
        let is2 = |mode| r.classification[&mode] == Family::Gamma2(r.gamma).to_string();
        if want != is2(Gamma2Mode::Corrected) {
            corrected += 1;
        }
        if want == is2(Gamma2Mode::Broad) {
            continue;
        }
        let t = record_tree(r);
        let lambda = record_lambda(r);
        if want {
            only_if += 1;
            let fixed = classify(&t, &lambda, Gamma2Mode::Corrected);
            if fixed.family == Family::Gamma2(r.gamma) && skips_a_level(&fixed, r.gamma) {
                only_if_explained += 1;
            }
        } else {
            if_dir += 1;
            let broad = classify(&t, &lambda, Gamma2Mode::Broad);
            if spider_without_lambda(&broad, &lambda) {
                if_explained += 1;
            }
        }
    }
    let literal = Outcome::new(
        only_if + if_dir == 0,
        format!(
            "broad {} violations (if {if_dir}, only-if {only_if}) of {applicable}; \
             explained {}/{} level-skipping, {}/{} spider without lambda; corrected {corrected}",
            only_if + if_dir,
            only_if_explained,
            only_if,
            if_explained,
            if_dir
        ),
    );
    let shape_ok = only_if > 0 && if_dir > 0 && only_if == only_if_explained && if_dir == if_explained && corrected == 0;
    (literal, shape_ok)
}

/// Hand-expanded characteristic polynomials of the two exemplars.
fn exemplar_oracles() -> bool {
    let star = Tree::star(3);
    let s331 = Tree::spider(&[3, 3, 1]);
    let star_poly = Polynomial::from_i64(&[0, 0, -3, 0, 1]);
    let s331_poly = Polynomial::from_i64(&[0, 0, -8, 0, 14, 0, -7, 0, 1]);
    // x^4 - 3x^2 = x^2 (x^2 - 3): sqrt(3) once.
    let star_ok = char_poly(&star) == star_poly
        && star_poly.multiplicity_of(&Polynomial::from_i64(&[-3, 0, 1])) == 1
        && multiplicity_via_rank(&star, &spec(1, 6)) == 1;
    // x^2 (x^2 - 1)(x^2 - 2)(x^2 - 4): 1 once.
    let factored = [[0, 0, 1], [-1, 0, 1], [-2, 0, 1], [-4, 0, 1]]
        .iter()
        .map(|c| Polynomial::from_i64(c))
        .fold(Polynomial::one(), |acc, f| &acc * &f);
    let s331_ok = char_poly(&s331) == s331_poly
        && factored == s331_poly
        && s331_poly.multiplicity_of(&Polynomial::from_i64(&[-1, 1])) == 1
        && multiplicity_via_rank(&s331, &spec(1, 3)) == 1;
    star_ok && s331_ok
}

fn strict_findings(n_max: usize) -> (bool, bool, usize) {
    let records = sweep(&config(n_max, 8, vec![Gamma2Mode::Strict, Gamma2Mode::Broad])).unwrap().records;
    let found = |t: &Tree, i: u64, m: u64| {
        let g6 = t.to_graph6();
        records.iter().any(|r| {
            r.tree == g6
                && r.lambda == [i, m]
                && r.m + 2 == r.p
                && r.p_minus_two_status[&Gamma2Mode::Strict] == Status::Violation
                && r.classification[&Gamma2Mode::Strict] == "NONE"
                && r.classification[&Gamma2Mode::Broad] == "GAMMA2(1)"
        })
    };
    let discrepancies = records
        .iter()
        .filter(|r| r.p_minus_two_status[&Gamma2Mode::Strict] == Status::Violation)
        .count();
    (found(&Tree::star(3), 1, 6), found(&Tree::spider(&[3, 3, 1]), 1, 3), discrepancies)
}

fn criterion_strict() -> (Outcome, bool) {
    let (star7, s331_7, count7) = strict_findings(7);
    let (star8, s331_8, _) = strict_findings(8);
    let oracles = exemplar_oracles();
    let literal = Outcome::new(
        count7 > 0 && star7 && s331_7 && oracles,
        format!(
            "n <= 7: {count7} discrepancies, K13 at 1/6 {}, S(3,3,1) at 1/3 {} (it has 8 vertices); \
             n <= 8: S(3,3,1) {}; hand-expanded and rank oracles {}",
            found_word(star7),
            found_word(s331_7),
            found_word(s331_8),
            if oracles { "agree" } else { "disagree" }
        ),
    );
    (literal, count7 > 0 && star7 && star8 && s331_8 && oracles)
}

fn found_word(b: bool) -> &'static str {
    if b {
        "found"
    } else {
        "absent"
    }
}

fn criterion_engines(records: &[VerificationRecord], engine_checks: usize) -> Outcome {
    let specs = all_lambda_specs(26);
    let mut rng = ChaCha8Rng::seed_from_u64(0x7265_6573);
    let mut mismatches = 0;
    let pairs = 10_000;
    for _ in 0..pairs {
        let n = rng.gen_range(2..=25usize);
        let seq: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
        let t = Tree::from_edges(n, &prufer_edges(&seq)).unwrap();
        let s = &specs[rng.gen_range(0..specs.len())];
        if multiplicity(&t, s) != multiplicity_via_rank(&t, s) {
            mismatches += 1;
        }
    }
    let sweep_ok = engine_checks == records.len();
    Outcome::new(
        sweep_ok && mismatches == 0,
        format!(
            "sweep {engine_checks}/{} pairs agree; random {}/{pairs} agree",
            records.len(),
            pairs - mismatches
        ),
    )
}

fn criterion_lemmas() -> Outcome {
    let neighborhood = SweepConfig {
        lemma_checks: LemmaChecks { pendant_deletion: false, paths: false, ..LemmaChecks::default() },
        ..config(10, 11, vec![Gamma2Mode::Broad])
    };
    let families = SweepConfig {
        lemma_checks: LemmaChecks {
            parter_wiener: false,
            branch: false,
            paths: true,
            family_k_max: 3,
            path_n_max: 200,
            path_m_max: 40,
            ..LemmaChecks::default()
        },
        ..config(N_MAX, M_MAX, vec![Gamma2Mode::Broad])
    };
    let mut outcomes = lemma_suite(&neighborhood).unwrap().outcomes;
    outcomes.extend(lemma_suite(&families).unwrap().outcomes);
    let bad: usize = outcomes.iter().map(|o| o.violations.len()).sum();
    let empty = outcomes.iter().any(|o| o.checked == 0);
    let parts: Vec<String> = outcomes
        .iter()
        .map(|o| format!("{} {}/{}", o.name, o.checked - o.violations.len(), o.checked))
        .collect();
    Outcome::new(bad == 0 && !empty && outcomes.len() == 7, parts.join(", "))
}

fn criterion_closure() -> Outcome {
    let mut all: Vec<Tree> = Vec::new();
    for n in 1..=12 {
        all.extend(enumerate_trees(n).unwrap());
    }
    let specs = all_lambda_specs(6);
    let mut mismatched = Vec::new();
    let mut sets = 0;
    let mut members = 0;
    for mode in Gamma2Mode::ALL {
        for s in &specs {
            for kind in [FamilyKind::Gamma, FamilyKind::Gamma2] {
                for k in 0..=3 {
                    let generated: BTreeSet<String> =
                        generate(kind, k, s, 12, mode).unwrap().iter().map(Tree::to_graph6).collect();
                    let classified: BTreeSet<String> = all
                        .iter()
                        .filter(|t| t.major_count() == k && is_member(t, s, kind, mode))
                        .map(Tree::to_graph6)
                        .collect();
                    sets += 1;
                    members += generated.len();
                    if generated != classified {
                        mismatched.push(format!("{mode} {kind:?}({k}) at {s}"));
                    }
                }
            }
        }
    }
    Outcome::new(
        mismatched.is_empty(),
        format!("{}/{sets} family sets equal ({members} members) {}", sets - mismatched.len(), mismatched.join(" ")),
    )
}

fn criterion_polynomials() -> Outcome {
    let mut degree_bad = 0;
    let mut eval_bad = 0;
    let mut worst = 0f64;
    let mut count = 0;
    for m in 2..=30u64 {
        for i in (1..m).filter(|&i| gcd(i, m) == 1) {
            count += 1;
            let order = if i % 2 == 1 { 2 * m } else { m };
            let expected = if order <= 2 { 1 } else { totient(order) / 2 } as usize;
            let s = spec(i, m);
            if s.minimal_poly().degree() != Some(expected) || minimal_degree(i, m) != expected {
                degree_bad += 1;
            }
            let x = 2.0 * (i as f64 * std::f64::consts::PI / m as f64).cos();
            let v = s.minimal_poly().eval_f64(x).abs();
            worst = worst.max(v);
            if v >= 1e-9 {
                eval_bad += 1;
            }
        }
    }
    let det_bad = (1..=8)
        .filter(|&n| path_charpoly(n) != Polynomial::from_i64(&path_determinant(n)))
        .count();
    Outcome::new(
        degree_bad + eval_bad + det_bad == 0,
        format!(
            "{count} minimal polys: degree mismatches {degree_bad}, max |mu(lambda)| {worst:.1e}; \
             path determinants n <= 8: {det_bad} mismatches"
        ),
    )
}

fn criterion_enumeration() -> Outcome {
    let mut oracle_counts = Vec::new();
    let mut set_bad = 0;
    for n in 1..=8usize {
        let mut oracle: BTreeSet<Vec<u16>> = BTreeSet::new();
        if n <= 2 {
            oracle.insert(Tree::path(n).canonical_code());
        } else {
            let total = n.pow(n as u32 - 2);
            for mut code in 0..total {
                let mut seq = Vec::with_capacity(n - 2);
                for _ in 0..n - 2 {
                    seq.push(code % n);
                    code /= n;
                }
                oracle.insert(Tree::from_edges(n, &prufer_edges(&seq)).unwrap().canonical_code());
            }
        }
        let listed: BTreeSet<Vec<u16>> = enumerate_trees(n).unwrap().map(|t| t.canonical_code()).collect();
        let listed_len = enumerate_trees(n).unwrap().count();
        if listed != oracle || listed_len != oracle.len() {
            set_bad += 1;
        }
        oracle_counts.push(oracle.len());
    }
    let expected = [1, 1, 1, 2, 3, 6, 11, 23];
    Outcome::new(
        set_bad == 0 && oracle_counts == expected,
        format!("oracle counts {oracle_counts:?}; enumeration mismatches {set_bad}"),
    )
}

fn main() -> ExitCode {
    let started = std::time::Instant::now();
    let mut failures = Vec::new();
    let main_sweep = sweep(&config(N_MAX, M_MAX, Gamma2Mode::ALL.to_vec())).unwrap();
    let records = &main_sweep.records;
    let scope = format!("n <= {N_MAX}, M <= {M_MAX}");

    let c1 = criterion_bound(records);
    report(1, &format!("bound m <= p - 1 ({scope})"), c1, true, &mut failures);
    let c2 = criterion_p_minus_one(records);
    report(2, &format!("m = p - 1 iff GAMMA(gamma) ({scope})"), c2, true, &mut failures);
    let (c3, c3_shape) = criterion_p_minus_two(records);
    report(3, &format!("m = p - 2 iff GAMMA2(gamma) under broad ({scope})"), c3, false, &mut failures);
    if !c3_shape {
        failures.push(3);
    }
    let (c4, c4_shape) = criterion_strict();
    report(4, "strict discrepancies (n <= 7, M <= 8)", c4, false, &mut failures);
    if !c4_shape {
        failures.push(4);
    }
    let c5 = criterion_engines(records, main_sweep.summary.engine_checks);
    report(5, "division and rank engines agree", c5, true, &mut failures);
    report(6, "lemma suites", criterion_lemmas(), true, &mut failures);
    report(7, "generator and classifier closure (k <= 3, M <= 6, n <= 12)", criterion_closure(), true, &mut failures);
    report(8, "polynomial layer", criterion_polynomials(), true, &mut failures);
    report(9, "enumeration against Prufer oracle (n <= 8)", criterion_enumeration(), true, &mut failures);

    println!("acceptance finished in {:.1}s", started.elapsed().as_secs_f64());
    if failures.is_empty() {
        println!("acceptance: all criteria behave as recorded (3 and 4 fail as stated, with the expected shape)");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: unexpected outcome for criteria {failures:?}");
        ExitCode::FAILURE
    }
}
