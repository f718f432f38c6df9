//! The end-to-end check of an interpolation fixture.
//!
//! Stages run in a fixed order; each one records pass/fail plus the exact
//! offending fragments. A stage whose input could not be built fails with the
//! upstream error rather than being skipped silently.

use crate::classify::{classify, WaveletClass};
use crate::congruence::{is_wavelet_set, ShiftMap, WaveletSetReport};
use crate::fixture::{FixtureCase, PrintedPiece};
use crate::interpolate::{
    build_sigma, build_spectrum, check_involutive, check_matrix_unitary, periodization, PiecewiseSpectrum,
};
use crate::numeric::invariance_residual;
use crate::report::Record;
use crate::sets::{IntervalSet, RatPi};

/// Residuals below this count as invariant.
pub const RESIDUAL_ZERO: f64 = 1e-8;
/// Residuals above this count as non-invariant.
pub const RESIDUAL_POSITIVE: f64 = 1e-3;
/// Probe depth for `Minf`.
pub const MINF_PROBE: u32 = 6;

#[derive(Clone, Debug)]
pub struct Stage {
    pub name: &'static str,
    pub pass: bool,
    pub detail: Record,
}

#[derive(Clone, Debug)]
pub struct PipelineReport {
    pub fixture: String,
    pub variant: Option<String>,
    pub class: Option<WaveletClass>,
    pub stages: Vec<Stage>,
}

impl PipelineReport {
    pub fn pass(&self) -> bool {
        self.stages.iter().all(|s| s.pass)
    }

    pub fn stage(&self, name: &str) -> Option<&Stage> {
        self.stages.iter().find(|s| s.name == name)
    }

    pub fn to_record(&self) -> Record {
        let mut r = Record::new();
        r.set("fixture", self.fixture.as_str())
            .set("variant", self.variant.clone())
            .set("class", self.class.map(|c| c.to_string()))
            .set("pass", self.pass());
        let stages = self
            .stages
            .iter()
            .map(|s| {
                let mut rec = Record::new();
                rec.set("stage", s.name).set("pass", s.pass);
                rec.nest("detail", s.detail.clone());
                rec
            })
            .collect();
        r.list("stages", stages);
        r
    }
}

pub fn wavelet_set_record(w: &IntervalSet, rep: &WaveletSetReport) -> Record {
    let mut r = Record::new();
    r.text("set", w)
        .text("measure", &rep.measure)
        .set("congruent_to_base", rep.congruent_to_base)
        .text("gaps", &rep.gaps)
        .text("overfull_residues", &rep.overfull_residues)
        .set("dilation_cover", rep.dilation_cover)
        .text("uncovered", &rep.uncovered)
        .set("contains_origin", rep.contains_origin)
        .set("wavelet_set", rep.verdict);
    r
}

pub fn shift_map_record(map: &ShiftMap) -> Vec<Record> {
    map.pieces()
        .iter()
        .map(|p| {
            let mut r = Record::new();
            r.text("domain", &p.domain).text("shift", RatPi::int(2 * p.k)).text("image", p.image());
            r
        })
        .collect()
}

/// Fragments of printed pieces where `sigma` disagrees, with what it does
/// there (`None` where `sigma` is undefined).
pub fn compare_printed(sigma: &ShiftMap, printed: &[PrintedPiece]) -> Vec<(IntervalSet, RatPi, Option<RatPi>)> {
    let mut bad = Vec::new();
    for p in printed {
        let mut covered = IntervalSet::empty();
        for piece in sigma.restrict(&p.domain) {
            covered = covered.union(&piece.domain);
            let actual = RatPi::int(2 * piece.k);
            if actual != p.shift {
                bad.push((piece.domain, p.shift.clone(), Some(actual)));
            }
        }
        let missing = p.domain.subtract(&covered);
        if !missing.is_empty() {
            bad.push((missing, p.shift.clone(), None));
        }
    }
    bad
}

/// Residuals for `n = 1..=index+1` (`Minf`: `1..=MINF_PROBE`) with the
/// expectation at each level.
pub fn residual_oracle(spec: &PiecewiseSpectrum, class: WaveletClass) -> Vec<(u32, f64, bool, bool)> {
    let (top, expect_positive_at) = match class {
        WaveletClass::M(n) => (n + 1, Some(n + 1)),
        WaveletClass::MInfinity => (MINF_PROBE, None),
    };
    (1..=top)
        .map(|n| {
            let r = invariance_residual(spec, n);
            let positive = Some(n) == expect_positive_at;
            let ok = if positive { r > RESIDUAL_POSITIVE } else { r < RESIDUAL_ZERO };
            (n, r, positive, ok)
        })
        .collect()
}

fn error_stage(name: &'static str, err: impl std::fmt::Display) -> Stage {
    let mut detail = Record::new();
    detail.text("error", err);
    Stage { name, pass: false, detail }
}

pub fn run_fixture(case: &FixtureCase) -> PipelineReport {
    let mut stages = Vec::new();

    for (name, w) in [("verify_w1", &case.w1), ("verify_w2", &case.w2)] {
        let rep = is_wavelet_set(w);
        stages.push(Stage { name, pass: rep.verdict, detail: wavelet_set_record(w, &rep) });
    }

    let sigma = build_sigma(&case.w1, &case.w2);
    match &sigma {
        Ok(map) => {
            let mut d = Record::new();
            d.list("pieces", shift_map_record(map));
            stages.push(Stage { name: "build_sigma", pass: true, detail: d });

            let bad = compare_printed(map, &case.printed_sigma);
            let mut d = Record::new();
            d.set("printed_pieces", case.printed_sigma.len()).list(
                "mismatches",
                bad.iter()
                    .map(|(s, want, got)| {
                        let mut r = Record::new();
                        r.text("domain", s)
                            .text("printed_shift", want)
                            .set("constructed_shift", got.as_ref().map(|g| g.to_string()));
                        r
                    })
                    .collect(),
            );
            stages.push(Stage { name: "printed_sigma", pass: bad.is_empty(), detail: d });

            stages.push(match check_involutive(map) {
                Ok(rep) => {
                    let mut d = Record::new();
                    d.list(
                        "failures",
                        rep.failures
                            .iter()
                            .map(|(s, shift)| {
                                let mut r = Record::new();
                                r.text("domain", s).text("sigma_squared_shift", shift);
                                r
                            })
                            .collect(),
                    );
                    Stage { name: "involutive", pass: rep.involutive, detail: d }
                }
                Err(e) => error_stage("involutive", e),
            });

            stages.push(match check_matrix_unitary(&case.h1, &case.h2, map) {
                Ok(rep) => {
                    let frag = |f: &crate::interpolate::MatrixFragment| {
                        let mut r = Record::new();
                        let [[a, b], [c, d]] = &f.matrix;
                        r.text("domain", &f.domain).text("matrix", format!("[[{a}, {b}], [{c}, {d}]]"));
                        r
                    };
                    let mut d = Record::new();
                    d.set("fragments", rep.fragments.len())
                        .list("non_identity", rep.fragments.iter().filter(|f| !is_identity(f)).map(frag).collect())
                        .list("failures", rep.failures.iter().map(frag).collect());
                    Stage { name: "unitary", pass: rep.unitary, detail: d }
                }
                Err(e) => error_stage("unitary", e),
            });
        }
        Err(e) => {
            for name in ["build_sigma", "printed_sigma", "involutive", "unitary"] {
                stages.push(error_stage(name, e));
            }
        }
    }

    let mut class = None;
    match build_spectrum(&case.h1, &case.h2, &case.w1, &case.w2) {
        Ok(spec) => {
            let mut d = Record::new();
            d.text("spectrum", &spec).text("support", spec.support());
            stages.push(Stage { name: "build_spectrum", pass: true, detail: d });

            let per = periodization(&spec);
            let mut d = Record::new();
            d.set("identically_one", per.flag).list(
                "sums",
                per.sums
                    .iter()
                    .map(|(s, v)| {
                        let mut r = Record::new();
                        r.text("residues", s).text("sum", v);
                        r
                    })
                    .collect(),
            );
            stages.push(Stage { name: "periodization", pass: per.flag, detail: d });

            let found = classify(&spec.support());
            class = Some(found);
            let mut d = Record::new();
            d.text("class", found).text("expected", case.expected_class);
            stages.push(Stage { name: "classify", pass: found == case.expected_class, detail: d });

            let levels = residual_oracle(&spec, case.expected_class);
            let mut d = Record::new();
            d.list(
                "levels",
                levels
                    .iter()
                    .map(|&(n, r, positive, ok)| {
                        let mut rec = Record::new();
                        rec.set("n", n)
                            .text("residual", format!("{r:.3e}"))
                            .set("expect", if positive { "> 1e-3" } else { "< 1e-8" })
                            .set("pass", ok);
                        rec
                    })
                    .collect(),
            );
            stages.push(Stage { name: "residual_oracle", pass: levels.iter().all(|l| l.3), detail: d });
        }
        Err(e) => {
            for name in ["build_spectrum", "periodization", "classify", "residual_oracle"] {
                stages.push(error_stage(name, &e));
            }
        }
    }

    PipelineReport { fixture: case.name.clone(), variant: case.variant.clone(), class, stages }
}

fn is_identity(f: &crate::interpolate::MatrixFragment) -> bool {
    let [[a, b], [c, d]] = &f.matrix;
    a.is_one() && d.is_one() && b.is_zero() && c.is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixture::builtin;

    fn run(name: &str, variant: Option<&str>) -> PipelineReport {
        run_fixture(&builtin(name).unwrap().resolve(variant).unwrap())
    }

    #[test]
    fn every_builtin_passes() {
        for (name, class) in [
            ("Shannon", WaveletClass::MInfinity),
            ("EM1", WaveletClass::M(1)),
            ("EM2", WaveletClass::M(2)),
            ("EM3", WaveletClass::M(3)),
            ("EM0", WaveletClass::M(0)),
        ] {
            let rep = run(name, None);
            let failed: Vec<_> =
                rep.stages.iter().filter(|s| !s.pass).map(|s| (s.name, s.detail.to_string())).collect();
            assert!(failed.is_empty(), "{name}: {failed:?}");
            assert_eq!(rep.class, Some(class));
        }
    }

    #[test]
    fn printed_em2_fails_at_w2() {
        let rep = run("EM2", Some("printed"));
        assert!(!rep.pass());
        assert!(rep.stage("verify_w1").unwrap().pass);
        let w2 = rep.stage("verify_w2").unwrap();
        assert!(!w2.pass);
        assert_eq!(w2.detail.get("measure").unwrap(), "29/15");
        assert!(!rep.stage("build_sigma").unwrap().pass);
    }

    #[test]
    fn deterministic() {
        let a = run("EM3", None).to_record().to_json_string();
        let b = run("EM3", None).to_record().to_json_string();
        assert_eq!(a, b);
    }

    #[test]
    fn wrong_printed_shift_is_reported() {
        let mut case = builtin("EM1").unwrap().resolve(None).unwrap();
        case.printed_sigma[1].shift = RatPi::int(4);
        let rep = run_fixture(&case);
        let stage = rep.stage("printed_sigma").unwrap();
        assert!(!stage.pass);
        assert!(stage.detail.to_string().contains("mismatches[0].domain: [30/7,31/7)"));
    }
}
