use crate::sets::{Interval, IntervalSet, ParseError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("set is not 2π-translation congruent to [0,2π): gaps {gaps}, overlaps {overlaps}")]
    NotCongruent { gaps: IntervalSet, overlaps: IntervalSet },

    #[error("interval {interval} has 0 in its closure; its dyadic split is infinite")]
    ContainsOrigin { interval: Box<Interval> },

    #[error("residues {missing} are hit by no 2π-translate of the set")]
    NotSurjective { missing: IntervalSet },

    #[error("extension undefined on {residual}: no dyadic dilate lands in the base set")]
    Undefined { residual: IntervalSet },

    #[error("dilation-periodic function takes conflicting values on {location}")]
    Ambiguous { location: IntervalSet },

    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("fixture {name}: {message}")]
    Fixture { name: String, message: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
