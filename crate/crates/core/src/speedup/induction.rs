use std::cmp::Reverse;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::odometer::{ClopenSet, InvariantMeasure, OdometerSystem};
use crate::rational::{serialize_rational, Rational};

use super::injection::construct_injection;
use super::map::SpeedupMap;

/// One shrinking step: `partial` maps `a ∖ a1` onto `b ∖ b1`.
#[derive(Debug, Clone, Serialize)]
pub struct InductionStep {
    pub a1: ClopenSet,
    pub b1: ClopenSet,
    pub partial: SpeedupMap,
    /// Depth of the cylinder `b1` around `y`.
    pub target_depth: u32,
    /// Depth of the cells carved out of `a` around `x`.
    pub carve_depth: u32,
    /// Depth of the cylinder around `x` kept inside `a1`.
    pub core_depth: u32,
}

fn extend(word: &[u8], depth: u32) -> Vec<u8> {
    let mut w: Vec<u8> = word.iter().copied().take(depth as usize).collect();
    w.resize(depth as usize, 0);
    w
}

fn unit_mass(system: &OdometerSystem, depth: u32) -> Result<Rational> {
    Ok(Rational::new(1, system.denominator(depth)? as i128))
}

/// Shrinks `(a, b)` around the points `x ∈ a`, `y ∈ b` to `(a1, b1)` with `μ(a1) = μ(b1) < μ(a)/2`.
///
/// `b1` is a cylinder around `y`. A slightly larger clopen `A13 ⊆ a` around
/// `x` is set aside, `a ∖ A13` is embedded into `b ∖ b1`, and what is left of
/// `b ∖ b1` is filled from `A13` minus a small cylinder around `x` by an
/// embedding for `T^{-1}`. The unused part of `A13` becomes `a1`.
pub fn induction_step(
    m: &InvariantMeasure,
    a: &ClopenSet,
    b: &ClopenSet,
    x: &[u8],
    y: &[u8],
    depth_step: u32,
) -> Result<InductionStep> {
    m.check(a)?;
    m.check(b)?;
    let system = m.system();
    system.check_digits(x)?;
    system.check_digits(y)?;
    if a.is_empty() {
        return Err(Error::EmptySet("A"));
    }
    if !a.is_disjoint(b)? {
        return Err(Error::NotDisjoint);
    }
    if a.measure() != b.measure() {
        return Err(Error::MeasureMismatch {
            a: a.measure(),
            b: b.measure(),
        });
    }
    if !a.contains_point(x) {
        return Err(Error::PointOutside(OdometerSystem::format_word(x), "A"));
    }
    if !b.contains_point(y) {
        return Err(Error::PointOutside(OdometerSystem::format_word(y), "B"));
    }
    if depth_step == 0 {
        return Err(Error::Precondition("depth step must be at least 1".into()));
    }

    let half = a.measure() / Rational::from_integer(2);
    let mut e = a.depth().max(b.depth()) + depth_step;
    while unit_mass(system, e)? >= half {
        e += 1;
    }
    let b1 = ClopenSet::cylinder(system, &extend(y, e))?;

    let de = system.denominator(e)?;
    let mut f = e + 1;
    let count = loop {
        let df = system.denominator(f)?;
        let count = df / de + 1;
        if Rational::new(count as i128, df as i128) < half {
            break count;
        }
        f += 1;
    };
    let x_f = extend(x, f);
    let mut cells = a.cells_at(f)?;
    cells.sort_by_key(|&c| {
        let digits = system.digits_of(c, f);
        let shared = digits.iter().zip(&x_f).take_while(|(p, q)| p == q).count();
        (Reverse(shared), system.lex_key(c, f))
    });
    cells.truncate(count as usize);
    let a13 = ClopenSet::from_indices(system, f, cells)?;

    let forward = construct_injection(m, &a.difference(&a13)?, &b.difference(&b1)?)?;
    let u1 = b.difference(&b1)?.difference(&forward.map.image()?)?;

    let mut g = f;
    while unit_mass(system, g)? >= b1.measure() {
        g += 1;
    }
    let a23 = ClopenSet::cylinder(system, &extend(x, g))?;
    let spare = a13.difference(&a23)?;

    // Reflection turns T^{-1} into T, so the backward embedding of U1 into
    // the spare cells is an ordinary embedding of the reflected sets.
    let backward = construct_injection(m, &u1.reflect(), &spare.reflect())?;
    let mut partial = forward.map;
    let mut filled = Vec::new();
    for piece in backward.map.pieces() {
        let source = piece.domain.reflect().apply_t(-(piece.jump as i64));
        partial.push(source.clone(), piece.jump);
        filled.push(source);
    }
    let filled = ClopenSet::union_all(system, &filled)?;
    let a1 = a23.union(&spare.difference(&filled)?)?;
    if a1.measure() != b1.measure() {
        return Err(Error::Precondition(format!(
            "internal measure imbalance: μ(A1) = {} but μ(B1) = {}",
            a1.measure(),
            b1.measure()
        )));
    }
    Ok(InductionStep {
        a1,
        b1,
        partial,
        target_depth: e,
        carve_depth: f,
        core_depth: g,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct StageRecord {
    pub stage: usize,
    pub a: ClopenSet,
    pub b: ClopenSet,
    #[serde(serialize_with = "serialize_rational")]
    pub measure_a: Rational,
    #[serde(serialize_with = "serialize_rational")]
    pub measure_b: Rational,
    /// Measure of the domain of the partial map after this many stages.
    #[serde(serialize_with = "serialize_rational")]
    pub domain_measure: Rational,
    #[serde(serialize_with = "serialize_rational")]
    pub image_measure: Rational,
}

/// The point pair left after truncation: the limit map sends `x` to `y = T^n x`.
#[derive(Debug, Clone, Serialize)]
pub struct Residual {
    pub a: ClopenSet,
    pub b: ClopenSet,
    pub x: String,
    pub y: String,
    pub n: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct StageLedger {
    pub records: Vec<StageRecord>,
    pub residual: Residual,
}

impl StageLedger {
    pub fn stages(&self) -> usize {
        self.records.len() - 1
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Bijection {
    pub map: SpeedupMap,
    pub ledger: StageLedger,
}

/// [`construct_bijection_with`] with depth step 1.
pub fn construct_bijection(
    m: &InvariantMeasure,
    a: &ClopenSet,
    b: &ClopenSet,
    stages: usize,
) -> Result<Bijection> {
    construct_bijection_with(m, a, b, stages, 1)
}

/// Runs `stages` induction steps from `(a, b)`, tracking `x` = the smallest
/// word of `a` and `y` = its first visit to `b`.
pub fn construct_bijection_with(
    m: &InvariantMeasure,
    a: &ClopenSet,
    b: &ClopenSet,
    stages: usize,
    depth_step: u32,
) -> Result<Bijection> {
    m.check(a)?;
    m.check(b)?;
    let system = m.system();
    if a.is_empty() {
        return Err(Error::EmptySet("A"));
    }
    if b.is_empty() {
        return Err(Error::EmptySet("B"));
    }
    if !a.is_disjoint(b)? {
        return Err(Error::NotDisjoint);
    }
    if a.measure() != b.measure() {
        return Err(Error::MeasureMismatch {
            a: a.measure(),
            b: b.measure(),
        });
    }
    if stages == 0 {
        return Err(Error::Precondition("at least one stage is required".into()));
    }

    let depth = a.depth().max(b.depth());
    let x = a.words().into_iter().next().expect("nonempty");
    let x = extend(&x, depth);
    let ix = system.index_of(&x)?;
    let d = system.denominator(depth)?;
    let n = (1..=d)
        .find(|&t| b.contains_cell(depth, (ix + t) % d))
        .expect("b is nonempty");
    let y = system.digits_of(ix + n, depth + 1);

    let mut records = vec![StageRecord {
        stage: 0,
        a: a.clone(),
        b: b.clone(),
        measure_a: a.measure(),
        measure_b: b.measure(),
        domain_measure: Rational::from_integer(0),
        image_measure: Rational::from_integer(0),
    }];
    let mut map = SpeedupMap::empty(system);
    let (mut cur_a, mut cur_b) = (a.clone(), b.clone());
    for stage in 1..=stages {
        let step = induction_step(m, &cur_a, &cur_b, &x, &y, depth_step)?;
        map.append(step.partial);
        cur_a = step.a1;
        cur_b = step.b1;
        records.push(StageRecord {
            stage,
            a: cur_a.clone(),
            b: cur_b.clone(),
            measure_a: cur_a.measure(),
            measure_b: cur_b.measure(),
            domain_measure: map.domain()?.measure(),
            image_measure: map.image()?.measure(),
        });
    }
    Ok(Bijection {
        map,
        ledger: StageLedger {
            records,
            residual: Residual {
                a: cur_a,
                b: cur_b,
                x: OdometerSystem::format_word(&x),
                y: OdometerSystem::format_word(&y),
                n,
            },
        },
    })
}
