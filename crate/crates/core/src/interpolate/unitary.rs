use crate::congruence::ShiftMap;
use crate::error::Result;
use crate::sets::{IntervalSet, QuadReal};

use super::sigma::Extension;
use super::DilationPeriodicFn;

/// `[[h1, h2], [h2∘σ⁻¹, h1∘σ⁻¹]]` on one fragment of `W1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixFragment {
    pub domain: IntervalSet,
    pub matrix: [[QuadReal; 2]; 2],
}

impl MatrixFragment {
    /// Rows have norm 1 and are orthogonal (exact).
    pub fn is_orthogonal(&self) -> bool {
        let [[a, b], [c, d]] = &self.matrix;
        let one = QuadReal::one();
        (&a.square() + &b.square()) == one && (&c.square() + &d.square()) == one && (&(a * c) + &(b * d)).is_zero()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitaryReport {
    pub unitary: bool,
    pub fragments: Vec<MatrixFragment>,
    pub failures: Vec<MatrixFragment>,
}

impl UnitaryReport {
    /// The fragment containing `set`, if `set` lies inside one.
    pub fn fragment_over(&self, set: &IntervalSet) -> Option<&MatrixFragment> {
        self.fragments.iter().find(|f| set.is_subset(&f.domain))
    }
}

/// Checks that the interpolation matrix is orthogonal a.e. on `W1 = source(σ)`.
///
/// `σ⁻¹` is the 2-homogeneous extension of the inverse congruence over `W2`,
/// so the check does not presuppose involutivity. By dilation periodicity of
/// `h1`, `h2` and homogeneity of `σ`, checking on `W1` covers the line.
pub fn check_matrix_unitary(
    h1: &DilationPeriodicFn,
    h2: &DilationPeriodicFn,
    sigma: &ShiftMap,
) -> Result<UnitaryReport> {
    let w1 = sigma.source();
    let inverse = Extension::new(&sigma.inverse())?;
    let mut fragments = Vec::new();
    for rule in inverse.apply(&w1)? {
        let back = -&rule.shift;
        for (s1, a) in h1.eval(&rule.sub)? {
            for (s2, b) in h2.eval(&s1)? {
                let moved = s2.translate(&rule.shift);
                for (t1, d) in h1.eval(&moved)? {
                    for (t2, c) in h2.eval(&t1)? {
                        fragments.push(MatrixFragment {
                            domain: t2.translate(&back),
                            matrix: [[a.clone(), b.clone()], [c, d.clone()]],
                        });
                    }
                }
            }
        }
    }
    fragments.sort_by(|x, y| x.domain.inf().cmp(&y.domain.inf()));
    let failures: Vec<MatrixFragment> = fragments.iter().filter(|f| !f.is_orthogonal()).cloned().collect();
    Ok(UnitaryReport { unitary: failures.is_empty(), fragments, failures })
}
