use std::fmt;

use crate::dyadic;
use crate::error::{Error, Result};
use crate::sets::{IntervalSet, QuadReal};

use super::{group_by_value, Piecewise};

/// A 2-dilation periodic function `h(2x) = h(x)` that is piecewise constant
/// on finitely many intervals.
///
/// Such a function is determined by its values on the fundamental domain
/// `D`, so it is stored as a value table over disjoint subsets of `D`. Points
/// of `D` outside the table carry the value 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DilationPeriodicFn {
    table: Piecewise,
    search_bound: u32,
}

impl DilationPeriodicFn {
    /// Builds the function from `(support, value)` pieces given anywhere on
    /// the line. Pieces whose dyadic orbits meet must agree there.
    pub fn new(pieces: Vec<(IntervalSet, QuadReal)>) -> Result<Self> {
        let mut table: Piecewise = Vec::new();
        let mut search_bound = 0u32;
        for (support, value) in pieces {
            for layer in dyadic::chart(&support)? {
                search_bound = search_bound.max(layer.scale.unsigned_abs());
                for (existing, v) in &table {
                    let clash = existing.intersect(&layer.part);
                    if !clash.is_empty() && *v != value {
                        return Err(Error::Ambiguous { location: clash });
                    }
                }
                table.push((layer.part, value.clone()));
            }
        }
        table.retain(|(_, v)| !v.is_zero());
        Ok(DilationPeriodicFn { table: group_by_value(table), search_bound: search_bound + 2 })
    }

    /// The constant function `v` on `ℝ \ {0}`.
    pub fn constant(v: QuadReal) -> Self {
        let table = if v.is_zero() { Vec::new() } else { vec![(IntervalSet::dilation_domain(), v)] };
        DilationPeriodicFn { table, search_bound: 2 }
    }

    /// Value table over subsets of `D`.
    pub fn table(&self) -> &[(IntervalSet, QuadReal)] {
        &self.table
    }

    /// Largest dyadic scale used by the defining pieces, plus a margin of 2.
    /// Informational: evaluation reduces into `D` and needs no search.
    pub fn search_bound(&self) -> u32 {
        self.search_bound
    }

    /// Partitions `S` into fragments carrying a constant value. Fragments
    /// reached by no table entry are returned with value 0.
    pub fn eval(&self, s: &IntervalSet) -> Result<Piecewise> {
        let mut out: Piecewise = Vec::new();
        for layer in dyadic::chart(s)? {
            let mut rest = layer.part.clone();
            for (support, v) in &self.table {
                let hit = layer.part.intersect(support);
                if !hit.is_empty() {
                    rest = rest.subtract(&hit);
                    out.push((hit.dilate(layer.scale), v.clone()));
                }
            }
            if !rest.is_empty() {
                out.push((rest.dilate(layer.scale), QuadReal::zero()));
            }
        }
        Ok(group_by_value(out))
    }
}

impl fmt::Display for DilationPeriodicFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (s, v)) in self.table.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{s} | {v}")?;
        }
        Ok(())
    }
}
