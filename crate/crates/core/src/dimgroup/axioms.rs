use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::group::{GroupElement, OrderedGroup};
use crate::rational::Rational;
use crate::report::Report;

fn sample_coord(rng: &mut ChaCha8Rng, m: u64, range: i128, max_exp: u32) -> Rational {
    let n = rng.gen_range(-range..=range);
    let e = rng.gen_range(0..=max_exp);
    Rational::new(n, (m as i128).pow(e))
}

fn sample(g: &OrderedGroup, rng: &mut ChaCha8Rng, range: i128, max_exp: u32) -> GroupElement {
    GroupElement(
        g.denoms()
            .iter()
            .map(|&m| sample_coord(rng, m, range, max_exp))
            .collect(),
    )
}

/// A nonzero positive element.
fn sample_positive(
    g: &OrderedGroup,
    rng: &mut ChaCha8Rng,
    range: i128,
    max_exp: u32,
) -> GroupElement {
    let functionals = g.functionals();
    let open = g.cone().is_open();
    let mut x = sample(g, rng, range, max_exp);
    for i in 0..g.rank() {
        if functionals.contains(&i) {
            x.0[i] = x.0[i].abs();
            if open && x.0[i].is_zero() {
                x.0[i] = Rational::from_integer(1);
            }
        }
    }
    if x.is_zero() {
        x.0[functionals[0]] = Rational::from_integer(1);
    }
    x
}

fn leq(g: &OrderedGroup, a: &GroupElement, b: &GroupElement) -> bool {
    g.is_positive(&b.sub(a))
}

/// Some `c` in `Z[1/m]` with `lo < c < hi`.
fn strictly_between(lo: Rational, hi: Rational, m: u64) -> Option<Rational> {
    let exps = if m == 1 { 0..=0 } else { 0..=24 };
    for e in exps {
        let scale = (m as i128).checked_pow(e)?;
        let k = (lo * Rational::from_integer(scale)).floor().to_integer() + 1;
        let c = Rational::new(k, scale);
        if c < hi {
            return Some(c);
        }
    }
    None
}

/// An explicit `c` with `a_i ≤ c ≤ b_j` for `i, j ∈ {1, 2}`, when one exists.
///
/// Coordinatewise cones take the coordinatewise maximum of the `a_i`. Open
/// cones try the four given elements, then put each constrained coordinate
/// strictly between the `a`s and the `b`s and the remaining ones at 0.
pub fn riesz_interpolant(
    g: &OrderedGroup,
    a1: &GroupElement,
    a2: &GroupElement,
    b1: &GroupElement,
    b2: &GroupElement,
) -> Option<GroupElement> {
    let ok = |c: &GroupElement| {
        [a1, a2]
            .iter()
            .all(|a| leq(g, a, c) && leq(g, c, b1) && leq(g, c, b2))
    };
    if !g.cone().is_open() {
        let c = GroupElement(a1.0.iter().zip(&a2.0).map(|(x, y)| *x.max(y)).collect());
        return ok(&c).then_some(c);
    }
    if let Some(c) = [a1, a2, b1, b2].into_iter().find(|c| ok(c)) {
        return Some(c.clone());
    }
    let mut c = GroupElement::zero(g.rank());
    for i in g.functionals() {
        let lo = a1.0[i].max(a2.0[i]);
        let hi = b1.0[i].min(b2.0[i]);
        c.0[i] = strictly_between(lo, hi, g.denoms()[i])?;
    }
    ok(&c).then_some(c)
}

/// Sampled checks of the dimension-group axioms and of simplicity.
pub fn check_axioms(g: &OrderedGroup, sample_budget: usize, seed: u64) -> Report {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = Report::new();
    let budget = sample_budget.max(1);

    let mut bad = None;
    for _ in 0..budget {
        let (p, q) = (
            sample_positive(g, &mut rng, 12, 3),
            sample_positive(g, &mut rng, 12, 3),
        );
        if !g.is_positive(&p.add(&q)) {
            bad = Some(format!("{p} + {q}"));
            break;
        }
    }
    report.push(
        "cone_closed_under_addition",
        bad.is_none(),
        bad.unwrap_or_else(|| format!("{budget} pairs")),
    );

    let mut bad = None;
    for _ in 0..budget {
        let p = sample_positive(g, &mut rng, 12, 3);
        if g.is_positive(&p.neg()) {
            bad = Some(format!("both ±{p} are positive"));
            break;
        }
    }
    report.push(
        "cone_pointed",
        bad.is_none(),
        bad.unwrap_or_else(|| format!("{budget} nonzero positives")),
    );

    let mut directed = None;
    let mut order_unit = None;
    for _ in 0..budget {
        let x = sample(g, &mut rng, 12, 3);
        for y in [x.clone(), x.neg()] {
            match g.order_unit_multiple(g.unit(), &y) {
                Some(n) => {
                    let top = g.unit().scale(Rational::from_integer(n as i128));
                    if directed.is_none() && !(g.is_positive(&top) && g.is_positive(&top.sub(&y))) {
                        directed = Some(format!("{y} = {top} − ({top} − {y}) fails"));
                    }
                }
                None => {
                    order_unit.get_or_insert_with(|| format!("no n with {y} ≤ n·{}", g.unit()));
                }
            }
        }
    }
    report.push(
        "directed",
        directed.is_none() && order_unit.is_none(),
        directed.unwrap_or_else(|| format!("{budget} elements written as n·u − (n·u − x)")),
    );
    report.push(
        "unit_is_order_unit",
        order_unit.is_none(),
        order_unit
            .unwrap_or_else(|| format!("{} bounded by multiples of {}", 2 * budget, g.unit())),
    );

    let mut bad = None;
    let mut witnesses = 0;
    for _ in 0..budget {
        let x = sample(g, &mut rng, 12, 3);
        let k = rng.gen_range(1..=5);
        if g.is_positive(&x.scale(Rational::from_integer(k))) {
            witnesses += 1;
            if !g.is_positive(&x) {
                bad = Some(format!("{k}·{x} ≥ 0 but {x} is not"));
                break;
            }
        }
    }
    report.push(
        "unperforated",
        bad.is_none(),
        bad.unwrap_or_else(|| format!("{witnesses} elements with a positive multiple")),
    );

    let mut bad = None;
    let mut tested = 0;
    // Tight configurations first: basis vectors around 0 and around the unit.
    let mut probes = vec![GroupElement::zero(g.rank()), g.unit().clone()];
    for j in 0..g.rank() {
        let e = GroupElement::basis(g.rank(), j);
        probes.push(g.unit().add(&e));
        probes.push(g.unit().sub(&e));
        probes.push(e);
    }
    'probe: for a1 in &probes {
        for a2 in &probes {
            for b1 in &probes {
                for b2 in &probes {
                    if ![a1, a2].iter().all(|a| leq(g, a, b1) && leq(g, a, b2)) {
                        continue;
                    }
                    tested += 1;
                    if riesz_interpolant(g, a1, a2, b1, b2).is_none() {
                        bad = Some(format!("no c between a = {a1}, {a2} and b = {b1}, {b2}"));
                        break 'probe;
                    }
                }
            }
        }
    }
    let mut attempts = 0;
    let budget = budget + tested;
    while bad.is_none() && tested < budget && attempts < 200 * budget {
        attempts += 1;
        let a1 = sample(g, &mut rng, 3, 1);
        let a2 = sample(g, &mut rng, 3, 1);
        let (b1, b2) = if attempts % 2 == 0 {
            (sample(g, &mut rng, 3, 1), sample(g, &mut rng, 3, 1))
        } else {
            let n = g
                .order_unit_multiple(g.unit(), &a1)
                .max(g.order_unit_multiple(g.unit(), &a2))
                .unwrap_or(0);
            let top = g.unit().scale(Rational::from_integer(n as i128));
            (
                top.add(&sample_positive(g, &mut rng, 3, 1)),
                top.add(&sample_positive(g, &mut rng, 3, 1)),
            )
        };
        if ![&a1, &a2].iter().all(|a| leq(g, a, &b1) && leq(g, a, &b2)) {
            continue;
        }
        tested += 1;
        if riesz_interpolant(g, &a1, &a2, &b1, &b2).is_none() {
            bad = Some(format!("no c between a = {a1}, {a2} and b = {b1}, {b2}"));
            break;
        }
    }
    report.push(
        "riesz_interpolation",
        bad.is_none() && tested > 0,
        bad.unwrap_or_else(|| format!("{tested} interpolants exhibited")),
    );

    let mut bad = None;
    for _ in 0..budget {
        let v = sample_positive(g, &mut rng, 12, 3);
        if !g.is_order_unit(&v) {
            bad = Some(format!("{v} is positive but not an order unit"));
            break;
        }
    }
    report.push(
        "simple",
        bad.is_none(),
        bad.unwrap_or_else(|| format!("{budget} nonzero positives are order units")),
    );
    report
}
