use crate::error::{Error, Result};
use crate::odometer::{ClopenSet, InvariantMeasure};
use crate::rational::Rational;

/// The first `count` depth-`depth` cells of `set` in lexicographic order.
pub(crate) fn lex_prefix(set: &ClopenSet, depth: u32, count: usize) -> Result<ClopenSet> {
    let system = set.system();
    let mut cells = set.cells_at(depth)?;
    cells.sort_by_key(|&c| system.lex_key(c, depth));
    cells.truncate(count);
    ClopenSet::from_indices(system, depth, cells)
}

/// Cell count of `measure` at `depth`; `None` if it is not a multiple of the cylinder mass.
pub(crate) fn cells_for(
    set_system: &crate::OdometerSystem,
    measure: Rational,
    depth: u32,
) -> Result<Option<usize>> {
    let d = set_system.denominator(depth)? as i128;
    let scaled = measure * Rational::from_integer(d);
    Ok(scaled.is_integer().then(|| scaled.to_integer() as usize))
}

/// A clopen `b₁ ⊆ b` with `μ(b₁) = μ(a)`, made of the lexicographically smallest cells of `b`.
pub fn subset_condition(m: &InvariantMeasure, a: &ClopenSet, b: &ClopenSet) -> Result<ClopenSet> {
    m.check(a)?;
    m.check(b)?;
    if a.is_empty() {
        return Ok(ClopenSet::empty(m.system()));
    }
    let (ma, mb) = (a.measure(), b.measure());
    if ma >= mb {
        return Err(Error::MeasureNotLess { a: ma, b: mb });
    }
    let depth = a.depth().max(b.depth());
    let count = cells_for(m.system(), ma, depth)?.expect("μ(a) is a multiple of the cylinder mass");
    lex_prefix(b, depth, count)
}

/// Splits `b` into cells with `μ(b_i) = μ(a_i)`, assigning lexicographically ordered cells in turn.
pub fn transfer_partition(
    m: &InvariantMeasure,
    a_parts: &[ClopenSet],
    b: &ClopenSet,
) -> Result<Vec<ClopenSet>> {
    m.check(b)?;
    let system = m.system();
    let mut a = ClopenSet::empty(system);
    for part in a_parts {
        m.check(part)?;
        if !a.is_disjoint(part)? {
            return Err(Error::NotPartition("the parts of A overlap".into()));
        }
        a = a.union(part)?;
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
    let depth = a_parts
        .iter()
        .map(ClopenSet::depth)
        .chain([b.depth()])
        .max()
        .unwrap_or(0);
    let mut cells = b.cells_at(depth)?;
    cells.sort_by_key(|&c| system.lex_key(c, depth));
    let mut rest = cells.as_slice();
    a_parts
        .iter()
        .map(|part| {
            let n = cells_for(system, part.measure(), depth)?.expect("part is a union of cells");
            let (mine, tail) = rest.split_at(n);
            rest = tail;
            ClopenSet::from_indices(system, depth, mine.to_vec())
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::odometer::OdometerSystem;

    fn setup() -> (OdometerSystem, InvariantMeasure) {
        let s = OdometerSystem::dyadic();
        let m = InvariantMeasure::new(&s);
        (s, m)
    }

    fn set(s: &OdometerSystem, t: &str) -> ClopenSet {
        ClopenSet::parse(s, t).unwrap()
    }

    #[test]
    fn picks_lexicographically_smallest_cells() {
        let (s, m) = setup();
        let b1 = subset_condition(&m, &set(&s, "000"), &set(&s, "1")).unwrap();
        assert_eq!(b1.to_string(), "100");
        let b1 = subset_condition(&m, &set(&s, "0"), &set(&s, "01,10,11")).unwrap();
        assert_eq!(b1.to_string(), "01,10");
        assert!(subset_condition(&m, &set(&s, "empty"), &set(&s, "1"))
            .unwrap()
            .is_empty());
        assert!(matches!(
            subset_condition(&m, &set(&s, "0"), &set(&s, "1")),
            Err(Error::MeasureNotLess { .. })
        ));
    }

    #[test]
    fn transfers_cell_measures() {
        let (s, m) = setup();
        let out = transfer_partition(&m, &[set(&s, "00")], &set(&s, "11")).unwrap();
        assert_eq!(out[0].to_string(), "11");
        let out =
            transfer_partition(&m, &[set(&s, "000"), set(&s, "001")], &set(&s, "11")).unwrap();
        let shown: Vec<String> = out.iter().map(|c| c.to_string()).collect();
        assert_eq!(shown, vec!["110", "111"]);
        let parts = [set(&s, "000"), set(&s, "001,010,011")];
        let out = transfer_partition(&m, &parts, &set(&s, "1")).unwrap();
        assert_eq!(out[0].measure(), parts[0].measure());
        assert_eq!(out[1].measure(), parts[1].measure());
        assert!(transfer_partition(&m, &[set(&s, "0")], &set(&s, "11")).is_err());
        assert!(transfer_partition(&m, &[set(&s, "0")], &set(&s, "0")).is_err());
    }
}
