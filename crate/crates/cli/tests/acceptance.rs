//! End-to-end acceptance run: one line per criterion, nonzero exit if any fails.

use std::collections::{BTreeSet, HashSet};
use std::process::Command;
use std::time::Instant;

use adic_speedup::dimgroup::{k0_of_odometer, strict_plane_example, unit_interval_values};
use adic_speedup::speedup::{
    conjugacy_stage, construct_bijection, construct_injection, subset_condition,
    transfer_partition, PrefixBijection, SpeedupMap,
};
use adic_speedup::towers::{nested_towers, refine_tower, tower_over_base};
use adic_speedup::{ClopenSet, InvariantMeasure, KRPartition, OdometerSystem, Rational};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn all_words(s: &OdometerSystem, depth: u32) -> Vec<Vec<u8>> {
    let mut out = vec![Vec::new()];
    for i in 0..depth as usize {
        let b = s.base_at(i) as u8;
        out = out
            .into_iter()
            .flat_map(|w| {
                (0..b).map(move |d| {
                    let mut w = w.clone();
                    w.push(d);
                    w
                })
            })
            .collect();
    }
    out
}

/// `T^n` on a finite word: add one to the first digit, carry to the right.
fn step_n(s: &OdometerSystem, word: &[u8], n: u64) -> Vec<u8> {
    let mut w = word.to_vec();
    for _ in 0..n {
        for (i, d) in w.iter_mut().enumerate() {
            if (*d as u32) + 1 < s.base_at(i) {
                *d += 1;
                break;
            }
            *d = 0;
        }
    }
    w
}

/// Prefix membership against the words a set lists.
struct Words {
    listed: HashSet<Vec<u8>>,
}

impl Words {
    fn of(set: &ClopenSet) -> Self {
        let mut listed: HashSet<Vec<u8>> = set.words().into_iter().collect();
        if set.is_whole() {
            listed.insert(Vec::new());
        }
        Self { listed }
    }

    fn contain(&self, word: &[u8]) -> bool {
        (0..=word.len()).any(|k| self.listed.contains(&word[..k]))
    }
}

fn member(set: &ClopenSet, word: &[u8]) -> bool {
    Words::of(set).contain(word)
}

/// Fraction of depth-`depth` words inside the set.
fn counted_measure(set: &ClopenSet, depth: u32) -> Rational {
    let words = all_words(set.system(), depth);
    let ws = Words::of(set);
    let inside = words.iter().filter(|w| ws.contain(w)).count();
    Rational::new(inside as i128, words.len() as i128)
}

/// Applies every piece to every word by digit carry: the pieces must cover
/// `domain` exactly once, land in `target`, and never collide.
fn brute_force(
    map: &SpeedupMap,
    domain: &ClopenSet,
    target: &ClopenSet,
    depth: u32,
) -> Result<(), String> {
    let s = map.system();
    let pieces: Vec<(Words, u64)> = map
        .pieces()
        .iter()
        .map(|p| (Words::of(&p.domain), p.jump))
        .collect();
    let (domain_words, target_words) = (Words::of(domain), Words::of(target));
    let mut images = BTreeSet::new();
    for w in all_words(s, depth) {
        let jumps: Vec<u64> = pieces
            .iter()
            .filter(|(d, _)| d.contain(&w))
            .map(|(_, k)| *k)
            .collect();
        match (domain_words.contain(&w), jumps.as_slice()) {
            (false, []) => {}
            (true, [k]) => {
                ensure(*k >= 1, || format!("jump 0 at {w:?}"))?;
                let y = step_n(s, &w, *k);
                ensure(target_words.contain(&y), || {
                    format!("{w:?} -> {y:?} leaves {target}")
                })?;
                ensure(images.insert(y.clone()), || format!("collision at {y:?}"))?;
            }
            (inside, j) => {
                return Err(format!(
                    "{w:?}: in domain {inside}, covered {} times",
                    j.len()
                ))
            }
        }
    }
    Ok(())
}

fn cli(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_adicspeed"))
        .args(args)
        .output()
        .expect("run adicspeed");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

fn cli_json(args: &[&str]) -> Result<(i32, Value), String> {
    let mut full = vec!["--format", "structured"];
    full.extend_from_slice(args);
    let (code, out, err) = cli(&full);
    let doc: Value = serde_json::from_str(&out).map_err(|e| format!("{e}: {out}{err}"))?;
    ensure(doc["schema"] == "adicspeed/1", || {
        "missing schema tag".into()
    })?;
    Ok((code, doc))
}

fn report_passed(doc: &Value) -> bool {
    doc["report"]["entries"]
        .as_array()
        .is_some_and(|e| !e.is_empty() && e.iter().all(|x| x["passed"] == true))
}

fn pieces_preserve_measure(map: &SpeedupMap) -> Result<usize, String> {
    for p in map.pieces() {
        let image = p.image();
        let depth = p.domain.depth().max(image.depth());
        let (a, b) = (
            counted_measure(&p.domain, depth),
            counted_measure(&image, depth),
        );
        ensure(a == b, || {
            format!("{} -> jump {}: {a} vs {b}", p.domain, p.jump)
        })?;
    }
    Ok(map.pieces().len())
}

fn power_speedup_check() -> Check {
    let s = OdometerSystem::dyadic();
    for depth in 1..=12u32 {
        let d = depth.to_string();
        let (code, doc) = cli_json(&["speedup", "power", "--base", "2", "-k", "3", "--depth", &d])?;
        ensure(
            code == 0 && doc["ok"] == true && report_passed(&doc),
            || format!("depth {depth}: exit {code}"),
        )?;
        // Orbit of 0…0 under three digit-carry steps at a time.
        let start = vec![0u8; depth as usize];
        let mut cur = step_n(&s, &start, 3);
        let mut len = 1u64;
        while cur != start {
            cur = step_n(&s, &cur, 3);
            len += 1;
        }
        ensure(len == 1 << depth, || {
            format!("orbit length {len} at depth {depth}")
        })?;
    }
    let (code, _, err) = cli(&["speedup", "power", "--base", "2", "-k", "2"]);
    ensure(
        code == 1 && err.contains("not minimal") && err.contains("depth 1"),
        || format!("k=2 gave exit {code}: {err}"),
    )?;
    Ok("k=3 verified at depths 1..=12, k=2 rejected at depth 1".into())
}

fn random_pair(
    rng: &mut ChaCha8Rng,
    s: &OdometerSystem,
    depth: u32,
) -> Option<(ClopenSet, ClopenSet)> {
    let d = s.denominator(depth).unwrap();
    let (mut a, mut b) = (Vec::new(), Vec::new());
    for i in 0..d {
        match rng.gen_range(0..3) {
            0 => a.push(i),
            1 => b.push(i),
            _ => {}
        }
    }
    (!a.is_empty() && b.len() > a.len()).then(|| {
        (
            ClopenSet::from_indices(s, depth, a).unwrap(),
            ClopenSet::from_indices(s, depth, b).unwrap(),
        )
    })
}

fn injection_check(maps: &mut Vec<SpeedupMap>) -> Check {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let s = OdometerSystem::dyadic();
    let m = InvariantMeasure::new(&s);
    let (mut runs, mut wraps) = (0, 0);
    while runs < 100 {
        let depth = rng.gen_range(1..=6);
        let Some((a, b)) = random_pair(&mut rng, &s, depth) else {
            continue;
        };
        let inj = construct_injection(&m, &a, &b).map_err(|e| format!("{a} into {b}: {e}"))?;
        let k = inj.map.depth().max(depth);
        brute_force(&inj.map, &a, &b, k).map_err(|e| format!("{a} into {b}: {e}"))?;
        for (piece, o) in inj.map.pieces().iter().zip(&inj.origins) {
            match o.return_time {
                None => ensure(piece.jump == o.target_level - o.source_level, || {
                    format!("{a} into {b}: upward jump {}", piece.jump)
                })?,
                Some(lambda) => {
                    wraps += 1;
                    ensure(
                        lambda >= o.column_height
                            && piece.jump + o.source_level == lambda + o.target_level,
                        || format!("{a} into {b}: wrap jump {} with λ={lambda}", piece.jump),
                    )?;
                }
            }
        }
        maps.push(inj.map);
        runs += 1;
    }
    let elapsed = started.elapsed();
    ensure(elapsed.as_secs_f64() < 10.0, || format!("took {elapsed:?}"))?;
    Ok(format!(
        "100 injections, {wraps} wrap-around pieces, {elapsed:.2?}"
    ))
}

fn bijection_check(maps: &mut Vec<SpeedupMap>) -> Check {
    let s = OdometerSystem::dyadic();
    let m = InvariantMeasure::new(&s);
    let a = ClopenSet::parse(&s, "00").unwrap();
    let b = ClopenSet::parse(&s, "11").unwrap();
    let two = Rational::from_integer(2);
    for k in 1..=6usize {
        let bij = construct_bijection(&m, &a, &b, k).map_err(|e| e.to_string())?;
        let recs = &bij.ledger.records;
        ensure(bij.ledger.stages() == k, || {
            format!("stage count {}", bij.ledger.stages())
        })?;
        for w in recs.windows(2) {
            ensure(w[1].measure_a < w[0].measure_a / two, || {
                format!("k={k}: stage {} does not halve", w[1].stage)
            })?;
        }
        for r in recs {
            ensure(
                r.measure_a == r.measure_b && r.domain_measure == r.image_measure,
                || format!("k={k}: stage {} unbalanced", r.stage),
            )?;
        }
        let res = &bij.ledger.residual;
        ensure(
            res.a.measure() < a.measure() / Rational::from_integer(1 << k),
            || format!("k={k}: residual {}", res.a.measure()),
        )?;
        let dom = a.difference(&res.a).unwrap();
        let img = b.difference(&res.b).unwrap();
        if k <= 3 {
            let depth = bij.map.depth().max(dom.depth()).max(img.depth());
            brute_force(&bij.map, &dom, &img, depth).map_err(|e| format!("k={k}: {e}"))?;
        }
        maps.push(bij.map);
    }
    Ok("stages 1..=6 halve exactly, stay balanced, residual below μ(A)/2^k".into())
}

/// Random cells at a depth drawn from `depths`, each kept with probability `p`.
fn random_cells(
    rng: &mut ChaCha8Rng,
    s: &OdometerSystem,
    depths: std::ops::RangeInclusive<u32>,
    p: f64,
) -> ClopenSet {
    let depth = rng.gen_range(depths);
    let d = s.denominator(depth).unwrap();
    let cells = (0..d).filter(|_| rng.gen_bool(p)).collect();
    ClopenSet::from_indices(s, depth, cells).unwrap()
}

fn subset_transfer_check() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let s = OdometerSystem::dyadic();
    let m = InvariantMeasure::new(&s);
    let mut pairs = 0;
    while pairs < 200 {
        let a = random_cells(&mut rng, &s, 1..=8, 0.3);
        let b = random_cells(&mut rng, &s, 1..=8, 0.6);
        if a.measure() >= b.measure() {
            continue;
        }
        let b1 = subset_condition(&m, &a, &b).map_err(|e| e.to_string())?;
        let depth = a.depth().max(b.depth()).max(b1.depth());
        ensure(
            counted_measure(&b1, depth) == counted_measure(&a, depth),
            || format!("μ(B₁) ≠ μ(A) for A={a}, B={b}"),
        )?;
        let (in_b1, in_b) = (Words::of(&b1), Words::of(&b));
        ensure(
            all_words(&s, depth)
                .iter()
                .all(|w| !in_b1.contain(w) || in_b.contain(w)),
            || format!("B₁ ⊄ B for A={a}, B={b}"),
        )?;

        // Equal-measure disjoint pair at one depth, A cut into random parts.
        let depth = rng.gen_range(2..=8);
        let mut cells: Vec<u64> = (0..s.denominator(depth).unwrap()).collect();
        cells.shuffle(&mut rng);
        let n = rng.gen_range(1..=cells.len() / 2);
        let b = ClopenSet::from_indices(&s, depth, cells[n..2 * n].to_vec()).unwrap();
        let mut a_cells = cells[..n].to_vec();
        let mut parts = Vec::new();
        while !a_cells.is_empty() {
            let take = rng.gen_range(1..=a_cells.len());
            parts
                .push(ClopenSet::from_indices(&s, depth, a_cells.drain(..take).collect()).unwrap());
        }
        let out = transfer_partition(&m, &parts, &b).map_err(|e| e.to_string())?;
        ensure(out.len() == parts.len(), || "part count changed".into())?;
        let words = all_words(&s, depth);
        let cells: Vec<Words> = out.iter().map(Words::of).collect();
        let in_b = Words::of(&b);
        for w in &words {
            let owners = cells.iter().filter(|c| c.contain(w)).count();
            ensure(owners == in_b.contain(w) as usize, || {
                format!("{w:?} covered {owners} times")
            })?;
        }
        for (p, q) in parts.iter().zip(&out) {
            ensure(
                counted_measure(p, depth) == counted_measure(q, depth),
                || format!("part {p} got {q}"),
            )?;
        }
        pairs += 1;
    }
    Ok("200 subset selections and 200 transfers exact".into())
}

fn measure_check(maps: &[SpeedupMap]) -> Check {
    let mut pieces = 0;
    for map in maps {
        pieces += pieces_preserve_measure(map)?;
    }
    Ok(format!(
        "{} maps, {pieces} pieces with μ(S(E)) = μ(E)",
        maps.len()
    ))
}

fn strict_plane_check() -> Check {
    let (code, doc) = cli_json(&["dimgroup", "example6"])?;
    ensure(code == 0 && doc["ok"] == true, || format!("exit {code}"))?;
    let ex = &doc["example"];
    let axioms = ex["axioms"]["entries"]
        .as_array()
        .ok_or("no axiom entries")?;
    for name in [
        "cone_closed_under_addition",
        "riesz_interpolation",
        "simple",
        "unperforated",
    ] {
        ensure(
            axioms
                .iter()
                .any(|e| e["name"] == name && e["passed"] == true),
            || format!("axiom {name} not confirmed"),
        )?;
    }
    ensure(ex["states"].as_array().map(Vec::len) == Some(2), || {
        "state count".into()
    })?;
    ensure(
        ex["infinitesimals"]["free"]
            .as_array()
            .is_some_and(|f| f.is_empty())
            || doc["report"]["entries"].as_array().is_some_and(|e| {
                e.iter().any(|x| {
                    x["name"] == "no_infinitesimals" && x["passed"] == true && x["detail"] == "{0}"
                })
            }),
        || "Inf ≠ {0}".into(),
    )?;
    ensure(
        ex["forward"]["found"] == serde_json::json!([["1", "0"]]),
        || format!("forward gate {}", ex["forward"]),
    )?;
    ensure(
        ex["both"]["reverse"]["none"]["kind"] == "state-count",
        || format!("reverse gate {}", ex["both"]["reverse"]),
    )?;
    ensure(
        doc["conclusion"] == "speedup: yes; orbit equivalence: no",
        || format!("conclusion {}", doc["conclusion"]),
    )?;
    let lib = strict_plane_example();
    ensure(lib.passed(), || lib.report().to_string())?;
    Ok("axioms, 2 states, Inf = {0}, π₁ found, reverse refuted by state count".into())
}

fn obstruction_check() -> Check {
    let z3 = "rank=1 denoms=3 cone=coordinatewise unit=1";
    let z2 = "rank=1 denoms=2 cone=coordinatewise unit=1";
    for (from, to) in [(z3, z2), (z2, z3)] {
        let (code, doc) = cli_json(&["dimgroup", "gate", "--from", from, "--to", to])?;
        ensure(
            code == 0 && doc["outcome"]["none"]["kind"] == "denominator",
            || format!("{from} → {to}: {}", doc["outcome"]),
        )?;
    }
    for bases in [vec![2u32], vec![3], vec![2, 3]] {
        let s = OdometerSystem::new(&bases).unwrap();
        let g = k0_of_odometer(&s);
        let m = InvariantMeasure::new(&s);
        for n in 0..=8 {
            let mut from_group = BTreeSet::new();
            for j in 0..=n {
                from_group.extend(unit_interval_values(&g, s.denominator(j).unwrap()).unwrap());
            }
            // Measures of all clopen sets at depth n are cell counts over D(n).
            let d = all_words(&s, n).len() as i128;
            let counted: BTreeSet<Rational> = (0..=d).map(|k| Rational::new(k, d)).collect();
            let values = m.clopen_value_set(n).unwrap();
            ensure(from_group == values && counted == values, || {
                format!("{s} depth {n}")
            })?;
        }
    }
    Ok(
        "Z[1/3] ↔ Z[1/2] obstructed both ways; value sets equal for 2, 3, (2,3) at depths ≤ 8"
            .into(),
    )
}

fn tower_invariants(p: &KRPartition, depth: u32) -> Result<(), String> {
    let s = p.system();
    let report = p.check().map_err(|e| e.to_string())?;
    ensure(report.all_passed(), || report.to_string())?;
    let levels: Vec<Vec<Words>> = p
        .levels()
        .iter()
        .map(|col| col.iter().map(Words::of).collect())
        .collect();
    let bases: Vec<Words> = p.columns().iter().map(|c| Words::of(&c.base)).collect();
    let words = all_words(s, depth);
    for w in &words {
        let hits: usize = levels.iter().flatten().filter(|l| l.contain(w)).count();
        ensure(hits == 1, || format!("{w:?} lies in {hits} levels"))?;
    }
    for col in &levels {
        for pair in col.windows(2) {
            for w in words.iter().filter(|w| pair[0].contain(w)) {
                ensure(pair[1].contain(&step_n(s, w, 1)), || {
                    format!("T leaves a column at {w:?}")
                })?;
            }
        }
        for w in words.iter().filter(|w| col.last().unwrap().contain(w)) {
            let next = step_n(s, w, 1);
            ensure(bases.iter().any(|b| b.contain(&next)), || {
                format!("top word {w:?} does not return to a base")
            })?;
        }
    }
    let mass: Rational = p
        .columns()
        .iter()
        .map(|c| Rational::from_integer(c.height as i128) * counted_measure(&c.base, depth))
        .sum();
    ensure(mass == Rational::from_integer(1), || {
        format!("Σ h·μ(base) = {mass}")
    })
}

fn max_depth(p: &KRPartition) -> u32 {
    p.levels()
        .iter()
        .flatten()
        .map(ClopenSet::depth)
        .max()
        .unwrap_or(0)
}

fn tower_check() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let s = OdometerSystem::dyadic();
    let m = InvariantMeasure::new(&s);
    let mut runs = 0;
    while runs < 100 {
        match runs % 3 {
            0 => {
                let base = random_cells(&mut rng, &s, 1..=8, 0.05);
                if base.is_empty() {
                    continue;
                }
                let p = tower_over_base(&m, &base).map_err(|e| e.to_string())?;
                tower_invariants(&p, max_depth(&p))?;
            }
            1 => {
                let base = random_cells(&mut rng, &s, 1..=5, 0.3);
                let cut = random_cells(&mut rng, &s, 1..=6, 0.5);
                if base.is_empty() || cut.is_empty() || cut.is_whole() {
                    continue;
                }
                let p = tower_over_base(&m, &base).map_err(|e| e.to_string())?;
                let q = vec![cut.clone(), cut.complement()];
                let r = refine_tower(&p, &q).map_err(|e| e.to_string())?;
                tower_invariants(&r, max_depth(&r))?;
                ensure(
                    r.refines(&p).unwrap() && r.refines_partition(&q).unwrap(),
                    || format!("refinement of {base} by {cut}"),
                )?;
            }
            _ => {
                let target: Vec<u8> = (0..8).map(|_| rng.gen_range(0..2)).collect();
                let count = rng.gen_range(1..=6);
                let nest = nested_towers(&m, &target, count).map_err(|e| e.to_string())?;
                for (i, p) in nest.iter().enumerate() {
                    tower_invariants(p, max_depth(p))?;
                    let bases = p.bases().unwrap();
                    ensure(member(&bases, &target), || {
                        format!("stage {i} misses the target")
                    })?;
                    if i > 0 {
                        ensure(p.refines(&nest[i - 1]).unwrap(), || {
                            format!("stage {i} is coarser")
                        })?;
                        ensure(
                            bases.measure() < nest[i - 1].bases().unwrap().measure(),
                            || format!("bases do not shrink at stage {i}"),
                        )?;
                    }
                }
            }
        }
        runs += 1;
    }
    Ok("100 tower, refinement and nesting runs".into())
}

fn conjugacy_check(maps: &mut Vec<SpeedupMap>) -> Check {
    let s = OdometerSystem::dyadic();
    let m = InvariantMeasure::new(&s);
    for (a0_word, depth) in [(vec![0u8], 2u32), (vec![0, 1], 3), (vec![1, 1, 0], 4)] {
        let f = PrefixBijection::identity(&s, 1).unwrap();
        let stage = conjugacy_stage(&m, &m, &f, &a0_word, depth).map_err(|e| e.to_string())?;
        let report = stage.check(&m, &m).map_err(|e| e.to_string())?;
        ensure(report.all_passed(), || report.to_string())?;
        let a0 = ClopenSet::cylinder(&s, &a0_word).unwrap();
        let levels = &stage.levels_x1;
        let k = levels
            .iter()
            .chain(&stage.levels_x2)
            .map(ClopenSet::depth)
            .max()
            .unwrap()
            .max(a0.depth() + 1);
        for (c1, c2) in levels.iter().zip(&stage.levels_x2) {
            ensure(counted_measure(c1, k) == counted_measure(c2, k), || {
                format!("{c1} vs {c2}")
            })?;
        }
        let words = all_words(&s, k);
        let base = &levels[0];
        let top = levels.last().unwrap();
        ensure(
            words.iter().all(|w| !member(base, w) || member(&a0, w)),
            || "base ⊄ A₀".into(),
        )?;
        let mut point = a0_word.clone();
        point.resize(k as usize, 0);
        ensure(member(base, &point), || {
            "target point outside the base".into()
        })?;
        ensure(
            words
                .iter()
                .all(|w| !member(top, w) || member(&a0, &step_n(&s, w, 1))),
            || "top ⊄ T⁻¹A₀".into(),
        )?;
        for (j, pair) in levels.windows(2).enumerate() {
            for w in words.iter().filter(|w| member(&pair[0], w)) {
                let jump = stage
                    .map
                    .pieces()
                    .iter()
                    .find(|p| member(&p.domain, w))
                    .ok_or_else(|| format!("S undefined on level {j}"))?
                    .jump;
                ensure(member(&pair[1], &step_n(&s, w, jump)), || {
                    format!("S(C_{j}) ⊄ C_{}", j + 1)
                })?;
            }
        }
        for e in &stage.phi0 {
            let l = e.level as usize;
            ensure(e.x1 == levels[l] && e.x2 == stage.levels_x2[l], || {
                format!("Φ₀ row {l}")
            })?;
            // Without exchanges the copy is the tower itself.
            if a0_word == [0] {
                ensure(e.x1 == e.x2, || format!("Φ₀ row {l} is not the identity"))?;
            }
        }
        maps.push(stage.map);
    }
    Ok("identity copy: level measures, base in A₀ with target, top in T⁻¹A₀, S climbs, Φ₀ consistent".into())
}

fn timed(f: impl FnOnce() -> Check) -> (Check, std::time::Duration) {
    let started = Instant::now();
    let r = f();
    (r, started.elapsed())
}

fn main() {
    let mut maps = Vec::new();
    let mut results = vec![
        ("1 power speedup", timed(power_speedup_check)),
        ("2 injection", timed(|| injection_check(&mut maps))),
        ("3 bijection stages", timed(|| bijection_check(&mut maps))),
        ("4 subset and transfer", timed(subset_transfer_check)),
        ("9 conjugacy stage", timed(|| conjugacy_check(&mut maps))),
        ("6 dimension-group example", timed(strict_plane_check)),
        ("7 odometer obstruction", timed(obstruction_check)),
        ("8 tower invariants", timed(tower_check)),
    ];
    let dyadic = InvariantMeasure::new(&OdometerSystem::dyadic());
    if let Ok(power) = adic_speedup::speedup::power_speedup(&dyadic, 3, 12) {
        maps.push(power);
    }
    // Measure preservation covers every map the checks above built.
    results.push(("5 measure preservation", timed(|| measure_check(&maps))));
    results.sort_by_key(|(name, _)| name.split(' ').next().and_then(|n| n.parse::<u32>().ok()));
    let mut failed = 0;
    for (name, (r, took)) in &results {
        match r {
            Ok(detail) => println!("[PASS] {name}: {detail} ({took:.2?})"),
            Err(why) => {
                failed += 1;
                println!("[FAIL] {name}: {why} ({took:.2?})");
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        results.len() - failed,
        results.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
