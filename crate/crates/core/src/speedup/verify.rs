use crate::error::Result;
use crate::odometer::{ClopenSet, OdometerSystem};
use crate::report::Report;

use super::map::SpeedupMap;

/// What the image of a map is expected to be.
#[derive(Debug, Clone)]
pub enum ImageExpectation {
    None,
    /// The images must union to exactly this set.
    Exact(ClopenSet),
    /// The images must lie inside this set.
    Within(ClopenSet),
}

/// Checks the defining invariants of a speedup map.
///
/// With `pointwise_depth = Some(n)` the map is also applied cell by cell to
/// every depth-`n` cylinder of the domain; for maps defined on the whole space
/// this also checks that `S` permutes the depth-`k` cylinders as one cycle
/// for each `k ≤ n`, which makes the product measure `S`-invariant there.
pub fn verify_speedup(
    map: &SpeedupMap,
    expected_domain: &ClopenSet,
    expected_image: &ImageExpectation,
    pointwise_depth: Option<u32>,
) -> Result<Report> {
    let system = map.system();
    let mut report = Report::new();

    let zero_jumps = map.pieces().iter().filter(|p| p.jump == 0).count();
    report.push(
        "jumps_positive",
        zero_jumps == 0,
        format!("{zero_jumps} pieces with jump 0"),
    );

    let domains: Vec<&ClopenSet> = map.pieces().iter().map(|p| &p.domain).collect();
    let overlap = first_overlap(system, &domains)?;
    report.push(
        "domains_disjoint",
        overlap.is_none(),
        overlap.map_or_else(String::new, |(i, j)| format!("pieces {i} and {j} overlap")),
    );

    let domain = map.domain()?;
    report.push(
        "domain_matches",
        &domain == expected_domain,
        format!("domain {domain}, expected {expected_domain}"),
    );

    let images: Vec<ClopenSet> = map.pieces().iter().map(|p| p.image()).collect();
    let overlap = first_overlap(system, &images.iter().collect::<Vec<_>>())?;
    report.push(
        "images_disjoint",
        overlap.is_none(),
        overlap.map_or_else(String::new, |(i, j)| {
            format!("images of pieces {i} and {j} overlap")
        }),
    );

    let image = ClopenSet::union_all(system, &images)?;
    match expected_image {
        ImageExpectation::None => {}
        ImageExpectation::Exact(target) => report.push(
            "image_matches",
            &image == target,
            format!("image {image}, expected {target}"),
        ),
        ImageExpectation::Within(target) => {
            let outside = image.difference(target)?;
            report.push(
                "image_within",
                outside.is_empty(),
                format!("image outside target: {outside}"),
            );
        }
    }

    let unequal = map
        .pieces()
        .iter()
        .zip(&images)
        .filter(|(p, img)| p.domain.measure() != img.measure())
        .count();
    report.push(
        "measure_preserved",
        unequal == 0,
        format!("{unequal} pieces with μ(S(E)) ≠ μ(E)"),
    );

    let levels = map.level_sets()?;
    let level_union = ClopenSet::union_all(system, levels.values())?;
    let summary: Vec<String> = levels
        .iter()
        .map(|(k, set)| format!("p={k} on depth {}", set.depth()))
        .collect();
    report.push(
        "level_sets_clopen",
        level_union == domain,
        summary.join("; "),
    );

    if let Some(depth) = pointwise_depth {
        pointwise(map, &domain, expected_image, depth, &mut report)?;
    }
    Ok(report)
}

fn first_overlap(system: &OdometerSystem, sets: &[&ClopenSet]) -> Result<Option<(usize, usize)>> {
    let mut seen = ClopenSet::empty(system);
    for (j, s) in sets.iter().enumerate() {
        if !seen.is_disjoint(s)? {
            for (i, earlier) in sets[..j].iter().enumerate() {
                if !earlier.is_disjoint(s)? {
                    return Ok(Some((i, j)));
                }
            }
        }
        seen = seen.union(s)?;
    }
    Ok(None)
}

fn pointwise(
    map: &SpeedupMap,
    domain: &ClopenSet,
    expected_image: &ImageExpectation,
    depth: u32,
    report: &mut Report,
) -> Result<()> {
    let system = map.system();
    let depth = depth.max(map.depth());
    let d = system.denominator(depth)?;
    let target = match expected_image {
        ImageExpectation::None => None,
        ImageExpectation::Exact(t) | ImageExpectation::Within(t) => Some(t),
    };
    let mut hit = vec![false; d as usize];
    let (mut cells, mut collisions, mut misses, mut unmapped) = (0u64, 0u64, 0u64, 0u64);
    for c in domain.cells_at(depth)? {
        cells += 1;
        let Some(jump) = map.jump_at(depth, c) else {
            unmapped += 1;
            continue;
        };
        let img = (c + jump % d) % d;
        if std::mem::replace(&mut hit[img as usize], true) {
            collisions += 1;
        }
        if target.is_some_and(|t| !t.contains_cell(depth, img)) {
            misses += 1;
        }
    }
    report.push(
        "pointwise",
        collisions == 0 && misses == 0 && unmapped == 0,
        format!(
            "{cells} cylinders at depth {depth}: {collisions} collisions, {misses} outside target, {unmapped} unmapped"
        ),
    );

    if domain.is_whole() {
        let start = map.depth().max(1);
        let mut broken = Vec::new();
        for n in start..=depth {
            let dn = system.denominator(n)?;
            let mut cur = 0u64;
            let mut len = 0u64;
            loop {
                let jump = map.jump_at(n, cur).unwrap_or(0);
                cur = (cur + jump % dn) % dn;
                len += 1;
                if cur == 0 || len > dn {
                    break;
                }
            }
            if len != dn {
                broken.push(format!("depth {n}: cycle of length {len} of {dn}"));
            }
        }
        report.push(
            "single_cycle",
            broken.is_empty(),
            if broken.is_empty() {
                format!("S cycles through all cylinders at depths {start}..={depth}")
            } else {
                broken.join("; ")
            },
        );
        report.push(
            "product_measure_invariant",
            broken.is_empty() && collisions == 0,
            format!("S permutes the depth-{depth} cylinders, so μ∘S⁻¹ = μ there"),
        );
    }
    Ok(())
}
