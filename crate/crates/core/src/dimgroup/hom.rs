use std::cmp::Reverse;
use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Serialize, Serializer};

use super::group::{GroupElement, OrderedGroup};
use super::states::states;
use crate::error::{Error, Result};
use crate::rational::{divides_power_of, prime_factors, Rational};
use crate::report::Report;

type Matrix = Vec<Vec<Rational>>;

/// A homomorphism given by a rational matrix acting on coordinate vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupHom {
    matrix: Matrix,
}

impl GroupHom {
    pub fn new(matrix: Vec<Vec<Rational>>) -> Result<Self> {
        let cols = matrix.first().map_or(0, Vec::len);
        if cols == 0 || matrix.iter().any(|r| r.len() != cols) {
            return Err(Error::Parse(
                "homomorphism matrix must be a nonempty rectangle".into(),
            ));
        }
        Ok(Self { matrix })
    }

    pub fn from_ints(rows: &[&[i128]]) -> Self {
        Self::new(
            rows.iter()
                .map(|r| r.iter().map(|&v| Rational::from_integer(v)).collect())
                .collect(),
        )
        .expect("rectangular")
    }

    pub fn identity(rank: usize) -> Self {
        Self {
            matrix: (0..rank)
                .map(|i| {
                    (0..rank)
                        .map(|j| Rational::from_integer((i == j) as i128))
                        .collect()
                })
                .collect(),
        }
    }

    pub fn matrix(&self) -> &[Vec<Rational>] {
        &self.matrix
    }

    pub fn source_rank(&self) -> usize {
        self.matrix[0].len()
    }

    pub fn target_rank(&self) -> usize {
        self.matrix.len()
    }

    pub fn apply(&self, x: &GroupElement) -> GroupElement {
        GroupElement(
            self.matrix
                .iter()
                .map(|row| row.iter().zip(x.coords()).map(|(a, b)| a * b).sum())
                .collect(),
        )
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &GroupHom) -> GroupHom {
        GroupHom {
            matrix: mat_mul(&self.matrix, &first.matrix),
        }
    }

    /// `Some(i)` when the map is the coordinate projection `π_{i+1}` onto a rank-one group.
    pub fn projection_index(&self) -> Option<usize> {
        if self.target_rank() != 1 {
            return None;
        }
        let row = &self.matrix[0];
        let ones: Vec<usize> = (0..row.len())
            .filter(|&j| row[j] == Rational::from_integer(1))
            .collect();
        (ones.len() == 1 && row.iter().filter(|v| !v.is_zero()).count() == 1).then(|| ones[0])
    }
}

impl fmt::Display for GroupHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .matrix
            .iter()
            .map(|r| {
                let cells: Vec<String> = r.iter().map(|v| v.to_string()).collect();
                format!("[{}]", cells.join(", "))
            })
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

impl Serialize for GroupHom {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> = self
            .matrix
            .iter()
            .map(|r| r.iter().map(|v| v.to_string()).collect())
            .collect();
        rows.serialize(serializer)
    }
}

/// Why no admissible homomorphism was returned.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Obstruction {
    /// Some target coordinate needs denominators no compatible source coordinate provides.
    Denominator { coordinate: usize, detail: String },
    /// The target has more extreme states than the source.
    StateCount {
        source_states: usize,
        target_states: usize,
    },
    /// An open source cone cannot cover a closed target cone of rank at least 2.
    ConeShape { target_rank: usize },
    /// No certificate, and no witness within the search bounds.
    BoundedSearchExhausted {
        numerator_bound: i128,
        exponent_bound: u32,
        candidates: u64,
    },
}

impl Obstruction {
    /// Whether the obstruction is a proof rather than a search limit.
    pub fn is_certificate(&self) -> bool {
        !matches!(self, Obstruction::BoundedSearchExhausted { .. })
    }
}

impl fmt::Display for Obstruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Obstruction::Denominator { coordinate, detail } => {
                write!(f, "denominator obstruction at target coordinate {}: {detail}", coordinate + 1)
            }
            Obstruction::StateCount {
                source_states,
                target_states,
            } => write!(
                f,
                "state-count obstruction: the target has {target_states} extreme states but the source only {source_states}, and a surjection pulls target states back injectively"
            ),
            Obstruction::ConeShape { target_rank } => write!(
                f,
                "cone obstruction: a positive map from an open cone is strictly positive in every nonzero row, so it misses the boundary of the rank-{target_rank} coordinatewise cone"
            ),
            Obstruction::BoundedSearchExhausted {
                numerator_bound,
                exponent_bound,
                candidates,
            } => write!(
                f,
                "bounded-search-exhausted: {candidates} candidates with numerators in [-{numerator_bound}, {numerator_bound}] and exponents up to {exponent_bound}"
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GateOutcome {
    Found(GroupHom),
    None(Obstruction),
}

impl GateOutcome {
    pub fn witness(&self) -> Option<&GroupHom> {
        match self {
            GateOutcome::Found(h) => Some(h),
            GateOutcome::None(_) => None,
        }
    }

    pub fn obstruction(&self) -> Option<&Obstruction> {
        match self {
            GateOutcome::Found(_) => None,
            GateOutcome::None(o) => Some(o),
        }
    }
}

impl fmt::Display for GateOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GateOutcome::Found(h) => write!(f, "found {h}"),
            GateOutcome::None(o) => write!(f, "none ({o})"),
        }
    }
}

/// Limits of the matrix search: entries `n / m^e` with `|n| ≤ numerator_bound`, `e ≤ exponent_bound`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBounds {
    pub numerator_bound: i128,
    pub exponent_bound: u32,
    pub max_candidates: u64,
}

impl Default for SearchBounds {
    fn default() -> Self {
        Self {
            numerator_bound: 8,
            exponent_bound: 4,
            max_candidates: 50_000,
        }
    }
}

fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let inner = b.len();
    let cols = b[0].len();
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).map(|k| row[k] * b[k][j]).sum())
                .collect()
        })
        .collect()
}

fn primes_within(from: u64, to: u64) -> bool {
    let target = prime_factors(to);
    prime_factors(from).iter().all(|p| target.contains(p))
}

/// Whether multiplying `Z[1/from]` by `value` lands in `Z[1/to]`.
fn entry_compatible(value: &Rational, from: u64, to: u64) -> bool {
    value.is_zero() || (divides_power_of(*value.denom(), to) && primes_within(from, to))
}

fn maps_group(m: &Matrix, from: &OrderedGroup, to: &OrderedGroup) -> bool {
    m.iter().enumerate().all(|(i, row)| {
        row.iter()
            .enumerate()
            .all(|(j, v)| entry_compatible(v, from.denoms()[j], to.denoms()[i]))
    })
}

/// Nonnegative and zero off the coordinates the source cone constrains.
fn supported_on_source_cone(row: &[Rational], from: &OrderedGroup) -> bool {
    let f = from.functionals();
    row.iter().enumerate().all(|(j, v)| {
        if f.contains(&j) {
            !v.is_negative()
        } else {
            v.is_zero()
        }
    })
}

/// Exact test of `M(from⁺) ⊆ to⁺`.
fn maps_cone(m: &Matrix, from: &OrderedGroup, to: &OrderedGroup) -> bool {
    let tf = to.functionals();
    if !to.cone().is_open() {
        return m.iter().all(|row| supported_on_source_cone(row, from));
    }
    if !from.cone().is_open() {
        // The source cone is generated by the basis vectors.
        return (0..from.rank()).all(|j| {
            let col: Vec<&Rational> = m.iter().map(|r| &r[j]).collect();
            col.iter().all(|v| v.is_zero()) || tf.iter().all(|&i| col[i].is_positive())
        });
    }
    tf.iter()
        .all(|&i| supported_on_source_cone(&m[i], from) && m[i].iter().any(|v| !v.is_zero()))
}

fn unit_preserved(m: &Matrix, from: &OrderedGroup, to: &OrderedGroup) -> bool {
    let image: Vec<Rational> = m
        .iter()
        .map(|row| {
            row.iter()
                .zip(from.unit().coords())
                .map(|(a, b)| a * b)
                .sum()
        })
        .collect();
    image == to.unit().coords()
}

fn grid(m: u64, bounds: &SearchBounds, nonneg: bool) -> Vec<Rational> {
    let lo = if nonneg { 0 } else { -bounds.numerator_bound };
    let max_e = if m == 1 { 0 } else { bounds.exponent_bound };
    let mut values: Vec<Rational> = (0..=max_e)
        .flat_map(|e| {
            let scale = (m as i128).pow(e);
            (lo..=bounds.numerator_bound).map(move |n| Rational::new(n, scale))
        })
        .collect();
    values.sort();
    values.dedup();
    values
}

/// Simplest first: fewest nonzero entries, then smallest total size, then lexicographically largest.
fn simplicity_key(v: &[Rational]) -> (usize, Rational, Reverse<Vec<Rational>>) {
    (
        v.iter().filter(|x| !x.is_zero()).count(),
        v.iter().map(|x| x.abs()).sum(),
        Reverse(v.to_vec()),
    )
}

/// Every assignment of `values[k]` to position `slots[k]`.
fn for_each_assignment(
    slots: &[usize],
    values: &[Vec<Rational>],
    len: usize,
    mut f: impl FnMut(&mut Vec<Rational>),
) {
    let mut idx = vec![0usize; slots.len()];
    if values.iter().any(Vec::is_empty) {
        return;
    }
    loop {
        let mut v = vec![Rational::zero(); len];
        for (k, &s) in slots.iter().enumerate() {
            v[s] = values[k][idx[k]];
        }
        f(&mut v);
        let mut k = 0;
        loop {
            if k == slots.len() {
                return;
            }
            idx[k] += 1;
            if idx[k] < values[k].len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

/// Admissible rows for target coordinate `i`, simplest first.
fn row_candidates(
    i: usize,
    from: &OrderedGroup,
    to: &OrderedGroup,
    bounds: &SearchBounds,
) -> Vec<Vec<Rational>> {
    let mt = to.denoms()[i];
    let constrained = to.functionals().contains(&i);
    let source_f = from.functionals();
    let allowed: Vec<usize> = (0..from.rank())
        .filter(|&j| primes_within(from.denoms()[j], mt))
        .filter(|j| !constrained || source_f.contains(j))
        .collect();
    let u2 = from.unit().coords();
    let u1 = to.unit().coords()[i];
    let values = grid(mt, bounds, constrained);
    let pivot = allowed.iter().copied().find(|&j| !u2[j].is_zero());
    let free: Vec<usize> = allowed
        .iter()
        .copied()
        .filter(|&j| Some(j) != pivot)
        .collect();
    if pivot.is_none() && !u1.is_zero() {
        return Vec::new();
    }
    let mut rows = Vec::new();
    for_each_assignment(
        &free,
        &vec![values.clone(); free.len()],
        from.rank(),
        |row| {
            if let Some(p) = pivot {
                let rest: Rational = row.iter().zip(u2).map(|(a, b)| a * b).sum();
                let value = (u1 - rest) / u2[p];
                if !divides_power_of(*value.denom(), mt) || (constrained && value.is_negative()) {
                    return;
                }
                row[p] = value;
            } else {
                let total: Rational = row.iter().zip(u2).map(|(a, b)| a * b).sum();
                if total != u1 {
                    return;
                }
            }
            if !constrained || row.iter().any(|v| !v.is_zero()) {
                rows.push(row.clone());
            }
        },
    );
    rows.sort_by_cached_key(|r| simplicity_key(r));
    rows
}

/// Row-reduces `[a | b]` and returns one solution family: `(pivot columns, reduced rows)`.
fn rref(mut a: Matrix) -> (Matrix, Vec<usize>) {
    let rows = a.len();
    let cols = a[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&k| !a[k][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let lead = a[r][c];
        for v in a[r].iter_mut() {
            *v /= lead;
        }
        for k in 0..rows {
            if k != r && !a[k][c].is_zero() {
                let factor = a[k][c];
                let pivot_row = a[r].clone();
                for (v, p) in a[k].iter_mut().zip(&pivot_row) {
                    *v -= factor * p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

/// Basis of `{x : M x = 0}` over the rationals.
fn nullspace(m: &Matrix) -> Vec<Vec<Rational>> {
    let cols = m[0].len();
    let (reduced, pivots) = rref(m.clone());
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![Rational::zero(); cols];
            v[free] = Rational::from_integer(1);
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -reduced[r][free];
            }
            v
        })
        .collect()
}

fn rank_of(m: &Matrix) -> usize {
    rref(m.clone()).1.len()
}

/// The part of `R(to⁺) ⊆ from⁺` that column `i` of `R` decides alone.
fn section_column_ok(col: &[Rational], i: usize, from: &OrderedGroup, to: &OrderedGroup) -> bool {
    let constrained = to.functionals().contains(&i);
    let ff = from.functionals();
    if !from.cone().is_open() {
        return col.iter().all(|v| {
            if constrained {
                !v.is_negative()
            } else {
                v.is_zero()
            }
        });
    }
    if !to.cone().is_open() {
        return col.iter().all(|v| v.is_zero()) || ff.iter().all(|&j| col[j].is_positive());
    }
    ff.iter().all(|&j| {
        if constrained {
            !col[j].is_negative()
        } else {
            col[j].is_zero()
        }
    })
}

/// A map `R : to → from` with `M R = I` and `R(to⁺) ⊆ from⁺`, which makes `M`
/// surjective with `M(from⁺) = to⁺`.
fn positive_section(
    m: &Matrix,
    from: &OrderedGroup,
    to: &OrderedGroup,
    bounds: &SearchBounds,
) -> Option<Matrix> {
    const PER_COLUMN: usize = 24;
    let d1 = to.rank();
    let d2 = from.rank();
    let mut columns: Vec<Vec<Vec<Rational>>> = Vec::new();
    for i in 0..d1 {
        let augmented: Matrix = m
            .iter()
            .enumerate()
            .map(|(r, row)| {
                let mut row = row.clone();
                row.push(Rational::from_integer((r == i) as i128));
                row
            })
            .collect();
        let (reduced, pivots) = rref(augmented);
        if pivots.contains(&d2) {
            return None;
        }
        let free: Vec<usize> = (0..d2).filter(|c| !pivots.contains(c)).collect();
        let values: Vec<Vec<Rational>> = free
            .iter()
            .map(|&j| grid(from.denoms()[j], bounds, false))
            .collect();
        let mut found = Vec::new();
        for_each_assignment(&free, &values, d2, |r| {
            for (k, &p) in pivots.iter().enumerate() {
                let mut value = reduced[k][d2];
                for &j in &free {
                    value -= reduced[k][j] * r[j];
                }
                r[p] = value;
            }
            let compatible =
                (0..d2).all(|j| entry_compatible(&r[j], to.denoms()[i], from.denoms()[j]));
            if compatible && section_column_ok(r, i, from, to) {
                found.push(r.clone());
            }
        });
        found.sort_by_cached_key(|r| simplicity_key(r));
        found.truncate(PER_COLUMN);
        columns.push(found);
    }
    let slots: Vec<usize> = (0..d1).collect();
    let mut result = None;
    let choices: Vec<Vec<Rational>> = columns
        .iter()
        .map(|c| {
            (0..c.len())
                .map(|k| Rational::from_integer(k as i128))
                .collect()
        })
        .collect();
    for_each_assignment(&slots, &choices, d1, |pick| {
        if result.is_some() {
            return;
        }
        let section: Matrix = (0..d2)
            .map(|j| {
                (0..d1)
                    .map(|i| columns[i][pick[i].to_integer() as usize][j])
                    .collect()
            })
            .collect();
        if maps_cone(&section, to, from) {
            result = Some(section);
        }
    });
    result
}

/// The checks a homomorphism must pass to witness the gate `from → to`.
pub fn gate_conditions(
    phi: &GroupHom,
    from: &OrderedGroup,
    to: &OrderedGroup,
    bounds: &SearchBounds,
) -> Report {
    let m = &phi.matrix;
    let mut report = Report::new();
    let shaped = phi.source_rank() == from.rank() && phi.target_rank() == to.rank();
    report.push(
        "shape",
        shaped,
        format!(
            "{}×{} matrix for ranks {} → {}",
            phi.target_rank(),
            phi.source_rank(),
            from.rank(),
            to.rank()
        ),
    );
    if !shaped {
        return report;
    }
    report.push(
        "denominator_compatible",
        maps_group(m, from, to),
        String::new(),
    );
    report.push("unit_preserved", unit_preserved(m, from, to), String::new());
    report.push("cone_inclusion", maps_cone(m, from, to), String::new());
    let section = positive_section(m, from, to, bounds);
    report.push(
        "surjective_onto_cone",
        section.is_some(),
        match &section {
            Some(r) => format!("positive section {}", GroupHom { matrix: r.clone() }),
            None => "no positive section within the search bounds".into(),
        },
    );
    report
}

/// [`gate_with`] under the default bounds.
pub fn gate(from: &OrderedGroup, to: &OrderedGroup) -> GateOutcome {
    gate_with(from, to, &SearchBounds::default())
}

fn denominator_obstruction(from: &OrderedGroup, to: &OrderedGroup) -> Option<Obstruction> {
    for (i, &mt) in to.denoms().iter().enumerate() {
        let compatible: Vec<usize> = (0..from.rank())
            .filter(|&j| primes_within(from.denoms()[j], mt))
            .collect();
        let mut supplied: Vec<u64> = compatible
            .iter()
            .flat_map(|&j| prime_factors(from.denoms()[j]))
            .collect();
        supplied.sort_unstable();
        supplied.dedup();
        let needed = prime_factors(mt);
        if compatible.is_empty() {
            return Some(Obstruction::Denominator {
                coordinate: i,
                detail: format!(
                    "no source coordinate maps into Z[1/{mt}], so this coordinate of the image is 0"
                ),
            });
        }
        let missing: Vec<u64> = needed
            .iter()
            .copied()
            .filter(|p| !supplied.contains(p))
            .collect();
        if !missing.is_empty() {
            return Some(Obstruction::Denominator {
                coordinate: i,
                detail: format!(
                    "Z[1/{mt}] needs denominators {missing:?} that no compatible source coordinate supplies"
                ),
            });
        }
    }
    None
}

/// A surjective unital homomorphism `φ : from → to` with `φ(from⁺) = to⁺`, or why none was found.
pub fn gate_with(from: &OrderedGroup, to: &OrderedGroup, bounds: &SearchBounds) -> GateOutcome {
    if from == to {
        return GateOutcome::Found(GroupHom::identity(from.rank()));
    }
    if let Some(o) = denominator_obstruction(from, to) {
        return GateOutcome::None(o);
    }
    let (ns, nt) = (states(from).len(), states(to).len());
    if nt > ns {
        return GateOutcome::None(Obstruction::StateCount {
            source_states: ns,
            target_states: nt,
        });
    }
    if from.cone().is_open() && !to.cone().is_open() && to.rank() >= 2 {
        return GateOutcome::None(Obstruction::ConeShape {
            target_rank: to.rank(),
        });
    }
    let rows: Vec<Vec<Vec<Rational>>> = (0..to.rank())
        .map(|i| row_candidates(i, from, to, bounds))
        .collect();
    let mut candidates = 0u64;
    let mut found = None;
    let mut idx = vec![0usize; rows.len()];
    if rows.iter().all(|r| !r.is_empty()) {
        'search: loop {
            candidates += 1;
            let m: Matrix = idx
                .iter()
                .enumerate()
                .map(|(i, &k)| rows[i][k].clone())
                .collect();
            if maps_cone(&m, from, to) && positive_section(&m, from, to, bounds).is_some() {
                found = Some(m);
                break;
            }
            if candidates >= bounds.max_candidates {
                break;
            }
            let mut k = rows.len();
            loop {
                if k == 0 {
                    break 'search;
                }
                k -= 1;
                idx[k] += 1;
                if idx[k] < rows[k].len() {
                    break;
                }
                idx[k] = 0;
            }
        }
    }
    match found {
        Some(matrix) => GateOutcome::Found(GroupHom { matrix }),
        None => GateOutcome::None(Obstruction::BoundedSearchExhausted {
            numerator_bound: bounds.numerator_bound,
            exponent_bound: bounds.exponent_bound,
            candidates,
        }),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", content = "detail", rename_all = "kebab-case")]
pub enum Isomorphism {
    Witness(GroupHom),
    Excluded(String),
    Undecided(String),
}

impl fmt::Display for Isomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Isomorphism::Witness(h) => write!(f, "isomorphic via {h}"),
            Isomorphism::Excluded(why) => write!(f, "not isomorphic: {why}"),
            Isomorphism::Undecided(why) => write!(f, "undecided: {why}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BothWays {
    pub forward: GateOutcome,
    pub reverse: GateOutcome,
    pub isomorphism: Isomorphism,
}

/// Runs the gate in both directions and decides unital order isomorphism.
pub fn gate_both_ways(g1: &OrderedGroup, g2: &OrderedGroup) -> BothWays {
    let forward = gate(g1, g2);
    let reverse = gate(g2, g1);
    let isomorphism = if g1.rank() != g2.rank() {
        Isomorphism::Excluded(format!("ranks {} and {} differ", g1.rank(), g2.rank()))
    } else if states(g1).len() != states(g2).len() {
        Isomorphism::Excluded(format!(
            "{} and {} extreme states",
            states(g1).len(),
            states(g2).len()
        ))
    } else if let Some(h) = forward.witness() {
        // A surjection between torsion-free groups of equal finite rank is injective.
        Isomorphism::Witness(h.clone())
    } else {
        match [&forward, &reverse]
            .into_iter()
            .filter_map(GateOutcome::obstruction)
            .find(|o| o.is_certificate())
        {
            Some(o) => {
                Isomorphism::Excluded(format!("an isomorphism would pass the gate, but {o}"))
            }
            None => Isomorphism::Undecided("bounded search found no witness".into()),
        }
    };
    BothWays {
        forward,
        reverse,
        isomorphism,
    }
}

/// Checks that `from / ker φ`, with the image cone and unit, is isomorphic to `to` through `φ`.
pub fn first_isomorphism_check(
    phi: &GroupHom,
    from: &OrderedGroup,
    to: &OrderedGroup,
) -> Result<Report> {
    let bounds = SearchBounds::default();
    let conditions = gate_conditions(phi, from, to, &bounds);
    if !conditions.all_passed() {
        let failed: Vec<&str> = conditions.failures().map(|e| e.name.as_str()).collect();
        return Err(Error::Precondition(format!(
            "φ fails the gate conditions ({})",
            failed.join(", ")
        )));
    }
    let m = &phi.matrix;
    let kernel = nullspace(m);
    let mut report = conditions;
    let shown: Vec<String> = kernel
        .iter()
        .map(|v| GroupElement(v.clone()).to_string())
        .collect();
    report.push(
        "kernel",
        true,
        if shown.is_empty() {
            "ker φ = {0}".to_string()
        } else {
            format!("ker φ spanned by {}", shown.join(", "))
        },
    );
    report.push(
        "quotient_rank",
        from.rank() - kernel.len() == to.rank(),
        format!("{} − {} = {}", from.rank(), kernel.len(), to.rank()),
    );
    let annihilated = kernel
        .iter()
        .all(|v| phi.apply(&GroupElement(v.clone())).is_zero());
    report.push("induced_map_well_defined", annihilated, String::new());
    report.push(
        "induced_map_bijective",
        rank_of(m) == to.rank() && report.get("surjective_onto_cone").is_some_and(|e| e.passed),
        format!("rank φ = {}", rank_of(m)),
    );
    report.push(
        "induced_cone_and_unit",
        report.get("cone_inclusion").is_some_and(|e| e.passed)
            && report.get("unit_preserved").is_some_and(|e| e.passed),
        "φ̂(from⁺ / ker φ) = to⁺ and φ̂([u]) = u".to_string(),
    );
    Ok(report)
}
