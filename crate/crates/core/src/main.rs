use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use wavset::classify::{classify, in_l};
use wavset::congruence::{congruence_map, construct_representative, is_wavelet_set};
use wavset::fixture::{self, FixtureCase, FixtureFile};
use wavset::interpolate::{
    build_sigma, build_spectrum, check_involutive, check_matrix_unitary, periodization, PiecewiseSpectrum,
};
use wavset::numeric::{gram_report, invariance_residual, spectrum_at, time_domain, witness_check, GramRequest};
use wavset::pipeline::{run_fixture, shift_map_record, wavelet_set_record};
use wavset::report::Record;
use wavset::sets::IntervalSet;
use wavset::Error;

/// Exact checks for wavelet sets and interpolated wavelet spectra.
///
/// Sets are written in π units: `[-8/7,-4/7) [4/7,6/7)` is
/// [-8π/7,-4π/7) ∪ [4π/7,6π/7).
#[derive(Parser)]
#[command(name = "wavset", version)]
struct Cli {
    /// Emit the report as JSON.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone, Default)]
struct Source {
    /// An interval set; used as an MSF spectrum where one is needed.
    #[arg(long)]
    set: Option<String>,
    /// Name of a built-in fixture.
    #[arg(long)]
    fixture: Option<String>,
    /// Path to a fixture file.
    #[arg(long)]
    file: Option<PathBuf>,
    /// W2 variant of the fixture.
    #[arg(long)]
    variant: Option<String>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Exact wavelet-set test (congruence to [0,2π) and dilation cover).
    VerifySet(Source),
    /// The 2π-translation congruence of a set onto [0,2π).
    Congruence(Source),
    /// A subset of the support on which τ is a bijection onto [0,2π).
    Representative(Source),
    /// Class M_n / Minf of the spectral support.
    Classify(Source),
    /// Build the interpolated spectrum of a fixture.
    Interpolate {
        #[command(flatten)]
        src: Source,
        /// Write ψ̂ and ψ samples as CSV.
        #[arg(long, value_name = "FILE.csv")]
        emit_samples: Option<PathBuf>,
    },
    /// Whether σ² is the identity.
    Involutive {
        #[command(flatten)]
        src: Source,
        #[arg(long)]
        w1: Option<String>,
        #[arg(long)]
        w2: Option<String>,
    },
    /// Orthogonality of the interpolation matrix.
    Unitary(Source),
    /// Exact periodization Σ_k |ψ̂(ξ+2kπ)|².
    Periodize(Source),
    /// Orthonormality of {D^n T^l ψ} on a finite block.
    Gram {
        #[command(flatten)]
        src: Source,
        #[arg(long, default_value_t = 3)]
        scales: i32,
        #[arg(long, default_value_t = 8)]
        shifts: i64,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
    /// Distance of e^{-iξ/2^n}ψ̂ from the periodic multiples of ψ̂.
    Residual {
        #[command(flatten)]
        src: Source,
        #[arg(long, default_value_t = 1)]
        n: u32,
        /// Also run the seeded witness check at this level.
        #[arg(long)]
        witness: bool,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
    },
    /// Run the full pipeline on a fixture.
    RunFixture {
        name: Option<String>,
        #[arg(long)]
        file: Option<PathBuf>,
        #[arg(long)]
        variant: Option<String>,
    },
    /// List built-in fixtures.
    ListFixtures,
}

type CmdResult = Result<(Record, bool), Box<dyn std::error::Error>>;

fn parse_set(text: &str) -> Result<IntervalSet, Error> {
    Ok(text.parse::<IntervalSet>()?)
}

impl Source {
    fn fixture_file(&self) -> Result<Option<FixtureFile>, Box<dyn std::error::Error>> {
        if let Some(path) = &self.file {
            let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
            return Ok(Some(FixtureFile::parse(&text).map_err(|e| format!("{}: {e}", path.display()))?));
        }
        match &self.fixture {
            Some(name) => {
                Ok(Some(fixture::builtin(name).ok_or_else(|| {
                    format!("unknown fixture `{name}`; known: {}", fixture::builtin_names().join(", "))
                })?))
            }
            None => Ok(None),
        }
    }

    fn case(&self) -> Result<Option<FixtureCase>, Box<dyn std::error::Error>> {
        match self.fixture_file()? {
            Some(f) => Ok(Some(f.resolve(self.variant.as_deref())?)),
            None => Ok(None),
        }
    }

    fn require_case(&self) -> Result<FixtureCase, Box<dyn std::error::Error>> {
        self.case()?.ok_or_else(|| "this command needs --fixture or --file".into())
    }

    fn set(&self) -> Result<Option<IntervalSet>, Box<dyn std::error::Error>> {
        Ok(self.set.as_deref().map(parse_set).transpose()?)
    }

    /// `--set` as an MSF spectrum, or the fixture's interpolated spectrum.
    fn spectrum(&self) -> Result<PiecewiseSpectrum, Box<dyn std::error::Error>> {
        if let Some(s) = self.set()? {
            return Ok(PiecewiseSpectrum::msf(&s));
        }
        let case = self.case()?.ok_or("give --set, --fixture or --file")?;
        Ok(build_spectrum(&case.h1, &case.h2, &case.w1, &case.w2)?)
    }
}

fn verify_set(src: &Source) -> CmdResult {
    if let Some(w) = src.set()? {
        let rep = is_wavelet_set(&w);
        return Ok((wavelet_set_record(&w, &rep), rep.verdict));
    }
    let case = src.require_case()?;
    let r1 = is_wavelet_set(&case.w1);
    let r2 = is_wavelet_set(&case.w2);
    let mut r = Record::new();
    r.set("fixture", case.name.as_str()).set("variant", case.variant.clone());
    r.nest("w1", wavelet_set_record(&case.w1, &r1)).nest("w2", wavelet_set_record(&case.w2, &r2));
    r.set("pass", r1.verdict && r2.verdict);
    Ok((r, r1.verdict && r2.verdict))
}

fn congruence(src: &Source) -> CmdResult {
    let w = src.set()?.ok_or("congruence needs --set")?;
    let mut r = Record::new();
    r.text("set", &w);
    match congruence_map(&w) {
        Ok(map) => {
            r.set("congruent", true).list("pieces", shift_map_record(&map));
            Ok((r, true))
        }
        Err(Error::NotCongruent { gaps, overlaps }) => {
            r.set("congruent", false).text("gaps", gaps).text("overlaps", overlaps);
            Ok((r, false))
        }
        Err(e) => Err(e.into()),
    }
}

fn representative(src: &Source) -> CmdResult {
    let e = match src.set()? {
        Some(s) => s,
        None => src.spectrum()?.support(),
    };
    let mut r = Record::new();
    r.text("support", &e);
    match construct_representative(&e) {
        Ok((f, map)) => {
            r.text("representative", &f).text("measure", f.measure()).list("pieces", shift_map_record(&map));
            Ok((r, true))
        }
        Err(Error::NotSurjective { missing }) => {
            r.text("missing_residues", missing);
            Ok((r, false))
        }
        Err(e) => Err(e.into()),
    }
}

fn classify_cmd(src: &Source) -> CmdResult {
    let e = match src.set()? {
        Some(s) => s,
        None => src.spectrum()?.support(),
    };
    let class = classify(&e);
    let mut r = Record::new();
    r.text("support", &e).text("class", class);
    let levels: Vec<u32> = (1..=6).filter(|&n| in_l(&e, n)).collect();
    r.set("in_l", levels);
    if let Some(case) = src.case()? {
        r.text("expected", case.expected_class);
        let ok = class == case.expected_class;
        return Ok((r, ok));
    }
    Ok((r, true))
}

fn interpolate(src: &Source, samples: Option<&PathBuf>) -> CmdResult {
    let case = src.require_case()?;
    let spec = build_spectrum(&case.h1, &case.h2, &case.w1, &case.w2)?;
    let mut r = Record::new();
    r.set("fixture", case.name.as_str())
        .text("spectrum", &spec)
        .text("support", spec.support())
        .set("notes", case.notes.as_str());
    if let Some(path) = samples {
        write_samples(&spec, path)?;
        r.text("samples", path.display());
    }
    Ok((r, true))
}

/// CSV columns: `xi, psi_hat, x, re_psi, im_psi` (radians / time units).
fn write_samples(spec: &PiecewiseSpectrum, path: &PathBuf) -> std::io::Result<()> {
    let support = spec.support();
    let (lo, hi) = match (support.inf(), support.sup()) {
        (Some(a), Some(b)) => (a.radians() - 1.0, b.radians() + 1.0),
        _ => (-1.0, 1.0),
    };
    let mut out = std::io::BufWriter::new(fs::File::create(path)?);
    writeln!(out, "xi,psi_hat,x,re_psi,im_psi")?;
    let count = 2048;
    for i in 0..count {
        let t = i as f64 / (count - 1) as f64;
        let xi = lo + t * (hi - lo);
        let x = -20.0 + 40.0 * t;
        let psi = time_domain(spec, x);
        writeln!(out, "{xi},{},{x},{},{}", spectrum_at(spec, xi), psi.re, psi.im)?;
    }
    out.flush()
}

fn involutive(src: &Source, w1: Option<&str>, w2: Option<&str>) -> CmdResult {
    let (w1, w2) = match (w1, w2) {
        (Some(a), Some(b)) => (parse_set(a)?, parse_set(b)?),
        _ => {
            let case = src.require_case()?;
            (case.w1, case.w2)
        }
    };
    let sigma = build_sigma(&w1, &w2)?;
    let rep = check_involutive(&sigma)?;
    let mut r = Record::new();
    r.list("sigma", shift_map_record(&sigma)).set("involutive", rep.involutive);
    let failures = rep
        .failures
        .iter()
        .map(|(s, shift)| {
            let mut f = Record::new();
            f.text("domain", s).text("sigma_squared_shift", shift);
            f
        })
        .collect();
    r.list("failures", failures);
    Ok((r, rep.involutive))
}

fn unitary(src: &Source) -> CmdResult {
    let case = src.require_case()?;
    let sigma = build_sigma(&case.w1, &case.w2)?;
    let rep = check_matrix_unitary(&case.h1, &case.h2, &sigma)?;
    let frag = |f: &wavset::interpolate::MatrixFragment| {
        let [[a, b], [c, d]] = &f.matrix;
        let mut x = Record::new();
        x.text("domain", &f.domain)
            .text("matrix", format!("[[{a}, {b}], [{c}, {d}]]"))
            .set("orthogonal", f.is_orthogonal());
        x
    };
    let mut r = Record::new();
    r.set("unitary", rep.unitary)
        .list("fragments", rep.fragments.iter().map(frag).collect())
        .list("failures", rep.failures.iter().map(frag).collect());
    Ok((r, rep.unitary))
}

fn periodize(src: &Source) -> CmdResult {
    let spec = src.spectrum()?;
    let per = periodization(&spec);
    let mut r = Record::new();
    r.set("identically_one", per.flag);
    let sums = per
        .sums
        .iter()
        .map(|(s, v)| {
            let mut x = Record::new();
            x.text("residues", s).text("sum", v);
            x
        })
        .collect();
    r.list("sums", sums);
    Ok((r, per.flag))
}

fn gram(src: &Source, scales: i32, shifts: i64, tol: f64) -> CmdResult {
    let spectrum = src.spectrum()?;
    let rep = gram_report(&GramRequest { spectrum, scale_range: scales, shift_range: shifts, tolerance: tol });
    let ((n, l), (m, k)) = rep.worst_pair;
    let mut r = Record::new();
    r.set("scales", scales)
        .set("shifts", shifts)
        .set("entries", rep.entries)
        .text("max_deviation", format!("{:.3e}", rep.max_deviation))
        .text("worst_pair", format!("(n={n}, l={l}) vs (n={m}, l={k})"))
        .text("worst_value", format!("{:.3e}{:+.3e}i", rep.worst_value.re, rep.worst_value.im))
        .text("tolerance", format!("{tol:e}"))
        .set("pass", rep.pass);
    Ok((r, rep.pass))
}

fn residual(src: &Source, n: u32, witness: bool, samples: usize, seed: u64) -> CmdResult {
    let spec = src.spectrum()?;
    let res = invariance_residual(&spec, n);
    let mut r = Record::new();
    r.set("n", n).text("residual", format!("{res:.6e}"));
    if witness {
        let (f, _) = construct_representative(&spec.support())?;
        let w = witness_check(&spec, &f, n, samples, seed);
        r.text("representative", &f)
            .set("samples", w.samples)
            .set("seed", w.seed)
            .text("witness_max_error", format!("{:.3e}", w.max_error));
    }
    Ok((r, true))
}

fn run(cli: &Cli) -> CmdResult {
    match &cli.cmd {
        Cmd::VerifySet(src) => verify_set(src),
        Cmd::Congruence(src) => congruence(src),
        Cmd::Representative(src) => representative(src),
        Cmd::Classify(src) => classify_cmd(src),
        Cmd::Interpolate { src, emit_samples } => interpolate(src, emit_samples.as_ref()),
        Cmd::Involutive { src, w1, w2 } => involutive(src, w1.as_deref(), w2.as_deref()),
        Cmd::Unitary(src) => unitary(src),
        Cmd::Periodize(src) => periodize(src),
        Cmd::Gram { src, scales, shifts, tol } => gram(src, *scales, *shifts, *tol),
        Cmd::Residual { src, n, witness, samples, seed } => residual(src, *n, *witness, *samples, *seed),
        Cmd::RunFixture { name, file, variant } => {
            let src = Source { set: None, fixture: name.clone(), file: file.clone(), variant: variant.clone() };
            let case = src.case()?.ok_or("run-fixture needs a fixture name or --file")?;
            let rep = run_fixture(&case);
            Ok((rep.to_record(), rep.pass()))
        }
        Cmd::ListFixtures => {
            let items = fixture::builtin_names()
                .into_iter()
                .map(|name| {
                    let f = fixture::builtin(name).expect("built-in");
                    let mut x = Record::new();
                    x.set("name", name)
                        .text("expected_class", f.expected_class)
                        .set("variants", f.variants().into_iter().flatten().collect::<Vec<_>>());
                    x
                })
                .collect();
            let mut r = Record::new();
            r.list("fixtures", items);
            Ok((r, true))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((record, pass)) => {
            if cli.json {
                println!("{}", record.to_json_string());
            } else {
                print!("{record}");
            }
            if pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
