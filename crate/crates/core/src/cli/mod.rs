//! Command-line front end. Exit codes: 0 affirmative verdict, 1 certified
//! negative verdict, 2 input or usage error.

mod input;
mod report;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

pub use input::{InputDoc, InputKind, ParseError};
pub use report::{CandidateDoc, CertificateDoc, LobattoDoc, ToleranceBlock, WitnessDoc};

use crate::cp3::{cp_factorize_rank3, is_doubly_nonnegative, CpResult, DnnVerdict, Refusal};
use crate::embed3d::{embed_octant, CandidateSource, CandidateVerdict, EmbedResult};
use crate::lobatto::{
    columns3, four_point_matrix, h10_inner, psi_min_scan, psi_polys, psi_rotation, sample_directions,
    LobattoBasis,
};
use crate::numerics::Tolerances;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

const FOUR_POINT_NODES: [f64; 4] = [-1.0, -0.5, 0.5, 1.0];
const RESIDUAL_BOUND: f64 = 1e-12;
const PSI_MIN_RANGE: (f64, f64) = (-2e-3, -1e-4);

#[derive(Debug, Parser)]
#[command(
    name = "cpembed",
    version,
    about = "Octant embedding of point sets and cp-rank-3 factorization"
)]
pub struct Cli {
    /// Use EPS for every numeric threshold instead of the defaults.
    #[arg(long, global = true, value_name = "EPS")]
    pub tol: Option<f64>,
    /// Print the verdict as a JSON certificate.
    #[arg(long, global = true)]
    pub json: bool,
    /// Suppress the human-readable report; the exit code carries the verdict.
    #[arg(long, global = true)]
    pub quiet: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Factorize a symmetric matrix as B·Bᵀ with B ≥ 0 and rank(A) ≤ 3 columns.
    Factorize { file: PathBuf },
    /// Decide whether the rows (points in R³) rotate into the nonnegative octant.
    Embed { file: PathBuf },
    /// Test a symmetric matrix for entrywise nonnegativity and semidefiniteness.
    CheckDnn { file: PathBuf },
    /// Reproduce the Lobatto basis checks and the non-existence certificate.
    Lobatto {
        /// Sample the curve directions at x = -1 + j/ELL, j = 0..=2·ELL.
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u64).range(1..=100_000))]
        ell: u64,
        /// Grid step for the minimum of the rotated basis.
        #[arg(long, default_value_t = 1e-4)]
        scan_step: f64,
    },
}

struct Outcome {
    code: i32,
    doc: CertificateDoc,
    text: String,
}

/// Parses `args` (program name first) and runs the command, writing the
/// report to `out` and diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{e}");
                    EXIT_USAGE
                }
            };
        }
    };
    let tol = match cli.tol {
        None => Tolerances::default(),
        Some(eps) => match Tolerances::uniform(eps) {
            Ok(t) => t,
            Err(e) => {
                let _ = writeln!(err, "error: --tol: {e}");
                return EXIT_USAGE;
            }
        },
    };
    let outcome = match &cli.command {
        Command::Factorize { file } => cmd_factorize(file, &tol),
        Command::Embed { file } => cmd_embed(file, &tol),
        Command::CheckDnn { file } => cmd_check_dnn(file, &tol),
        Command::Lobatto { ell, scan_step } => cmd_lobatto(*ell as usize, *scan_step, &tol),
    };
    match outcome {
        Ok(o) => {
            if cli.json {
                let _ = writeln!(out, "{}", o.doc.to_json());
            } else if !cli.quiet {
                let _ = write!(out, "{}", o.text);
            }
            if !cli.quiet {
                if let Some(l) = &o.doc.lobatto {
                    for w in &l.warnings {
                        let _ = writeln!(err, "warning: {w}");
                    }
                }
            }
            o.code
        }
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
    }
}

fn fmt_rows<R: AsRef<[f64]>>(rows: &[R]) -> String {
    let mut s = String::new();
    for r in rows {
        let cells: Vec<String> = r.as_ref().iter().map(|v| format!("{v:>13.9}")).collect();
        s.push_str("  ");
        s.push_str(&cells.join(" "));
        s.push('\n');
    }
    s
}

fn fmt_candidates(cands: &[CandidateDoc]) -> String {
    let mut s = String::new();
    for (k, c) in cands.iter().enumerate() {
        let pair = c.pair.map(|[i, j]| format!(" pair ({i}, {j})")).unwrap_or_default();
        s.push_str(&format!(
            "  [{k}] {} {:?} g = ({:.9}, {:.9}, {:.9}): {}{pair}\n",
            c.source, c.indices, c.g[0], c.g[1], c.g[2], c.verdict
        ));
    }
    s
}

fn fmt_doc(doc: &CertificateDoc) -> String {
    let mut s = format!("verdict: {}\n", doc.verdict);
    if let Some(d) = &doc.detail {
        s.push_str(&format!("detail: {d}\n"));
    }
    if let Some(r) = doc.rank {
        s.push_str(&format!("rank: {r}\n"));
    }
    if let Some([i, j]) = doc.gram_violation {
        s.push_str(&format!("points {i} and {j} already make an obtuse angle\n"));
    }
    if let Some(w) = &doc.witness {
        s.push_str(&format!(
            "witness: {} {:?} g = ({:.9}, {:.9}, {:.9})\n",
            w.source, w.indices, w.g[0], w.g[1], w.g[2]
        ));
    }
    if let Some(f) = &doc.basis {
        s.push_str("basis F (columns listed as rows):\n");
        s.push_str(&fmt_rows(f));
    }
    if let Some(c) = &doc.coords {
        s.push_str("coordinates FᵀU:\n");
        s.push_str(&fmt_rows(c));
    }
    if let Some(b) = &doc.matrix_b {
        s.push_str("B:\n");
        s.push_str(&fmt_rows(b));
    }
    if let Some(r) = doc.residual {
        s.push_str(&format!("residual: {r:.3e}\n"));
    }
    if !doc.candidates.is_empty() {
        s.push_str(&format!("candidates ({}):\n", doc.candidates.len()));
        s.push_str(&fmt_candidates(&doc.candidates));
    }
    s
}

fn read(path: &Path, kind: InputKind) -> Result<InputDoc, String> {
    InputDoc::read(path, kind).map_err(|e| e.to_string())
}

fn cmd_factorize(path: &Path, tol: &Tolerances<f64>) -> Result<Outcome, String> {
    let a = read(path, InputKind::Matrix)?.symmetric(tol.eps_orth).map_err(|e| e.to_string())?;
    let res = cp_factorize_rank3(&a, tol);
    let mut doc = CertificateDoc::new("factorize", res.kind(), tol);
    let code = match &res {
        CpResult::Factorized(f) => {
            doc.rank = Some(f.rank);
            doc.matrix_b = Some(f.b.to_rows_f64());
            doc.residual = Some(f.residual);
            EXIT_OK
        }
        CpResult::Refused(r) => {
            doc.detail = Some(match r {
                Refusal::NotSymmetric => "matrix is not symmetric".into(),
                Refusal::NotPsd(l) => format!("eigenvalue {l:e} is negative"),
                Refusal::NotNonneg(i, j) => format!("entry ({i}, {j}) = {:e} is negative", a[(*i, *j)]),
                Refusal::RankTooHigh(k) => format!("rank {k} exceeds 3"),
                Refusal::EmbedFailed(_) => "rows of the Gram factor admit no rotation into the nonnegative octant".into(),
            });
            if let Refusal::EmbedFailed(f) = r {
                doc.rank = Some(3);
                doc = doc.with_failure(f);
            }
            if let Refusal::RankTooHigh(k) = r {
                doc.rank = Some(*k);
            }
            EXIT_NEGATIVE
        }
    };
    Ok(Outcome {
        code,
        text: fmt_doc(&doc),
        doc,
    })
}

fn cmd_embed(path: &Path, tol: &Tolerances<f64>) -> Result<Outcome, String> {
    let points = read(path, InputKind::Points)?.points();
    let res = embed_octant(&points, tol);
    let doc = CertificateDoc::from_embed("embed", &res, tol);
    let code = if res.is_embeddable() { EXIT_OK } else { EXIT_NEGATIVE };
    Ok(Outcome {
        code,
        text: fmt_doc(&doc),
        doc,
    })
}

fn cmd_check_dnn(path: &Path, tol: &Tolerances<f64>) -> Result<Outcome, String> {
    let a = read(path, InputKind::Matrix)?.symmetric(tol.eps_orth).map_err(|e| e.to_string())?;
    let v = is_doubly_nonnegative(&a, tol);
    let (verdict, detail) = match v {
        DnnVerdict::DoublyNonnegative => ("doubly_nonnegative", None),
        DnnVerdict::NegativeEntry { i, j } => (
            "negative_entry",
            Some(format!("entry ({i}, {j}) = {:e} is negative", a[(i, j)])),
        ),
        DnnVerdict::NotPsd { eigenvalue } if eigenvalue.is_nan() => {
            ("not_psd", Some("eigenvalue iteration did not converge".into()))
        }
        DnnVerdict::NotPsd { eigenvalue } => ("not_psd", Some(format!("eigenvalue {eigenvalue:e} is negative"))),
    };
    let mut doc = CertificateDoc::new("check-dnn", verdict, tol);
    doc.detail = detail;
    Ok(Outcome {
        code: if v.holds() { EXIT_OK } else { EXIT_NEGATIVE },
        text: fmt_doc(&doc),
        doc,
    })
}

fn identity_residual(g: &[[f64; 3]; 3]) -> f64 {
    let mut worst = 0.0f64;
    for (i, row) in g.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((v - target).abs());
        }
    }
    worst
}

fn cmd_lobatto(ell: usize, scan_step: f64, tol: &Tolerances<f64>) -> Result<Outcome, String> {
    let psi_min = psi_min_scan(scan_step).map_err(|_| format!("--scan-step {scan_step} must lie in (0, 0.01]"))?;

    let gram_residual = identity_residual(&LobattoBasis::<f64>::new().gram());
    let q = psi_rotation::<f64>();
    let qtq: [[f64; 3]; 3] =
        std::array::from_fn(|i| std::array::from_fn(|j| (0..3).map(|k| q[k][i] * q[k][j]).sum()));
    let rotation_residual = identity_residual(&qtq);
    let psi = psi_polys::<f64>();
    let psi_gram: [[f64; 3]; 3] = std::array::from_fn(|i| std::array::from_fn(|j| h10_inner(&psi[i], &psi[j])));
    let psi_gram_residual = identity_residual(&psi_gram);

    let four = embed_octant(&columns3(&four_point_matrix::<f64>()), tol);
    let sample = embed_octant(&sample_directions::<f64>(ell), tol);

    let mut decisive_pairs: Vec<[f64; 2]> = Vec::new();
    if let EmbedResult::Failure(f) = &four {
        for r in &f.reports {
            if let (CandidateSource::HullPair(i, j), CandidateVerdict::ProjectionObtuse { .. }) =
                (r.candidate.source, r.verdict)
            {
                let (a, b) = (FOUR_POINT_NODES[i.min(j)], FOUR_POINT_NODES[i.max(j)]);
                if !decisive_pairs.contains(&[a, b]) {
                    decisive_pairs.push([a, b]);
                }
            }
        }
    }

    let mut warnings = Vec::new();
    let mut problems = Vec::new();
    if sample.is_embeddable() {
        if ell == 1 {
            warnings.push(format!(
                "insufficient sample: ell = 1 gives {} directions, which embed; the four-point certificate stands alone",
                2 * ell + 1
            ));
        } else {
            problems.push(format!("curve sample at ell = {ell} embeds"));
        }
    }
    if four.is_embeddable() {
        problems.push("four-point set embeds".into());
    }
    for (name, v) in [
        ("basis Gram", gram_residual),
        ("QᵀQ", rotation_residual),
        ("rotated basis Gram", psi_gram_residual),
    ] {
        if v.is_nan() || v > RESIDUAL_BOUND {
            problems.push(format!("{name} residual {v:e} exceeds {RESIDUAL_BOUND:e}"));
        }
    }
    if !(PSI_MIN_RANGE.0..=PSI_MIN_RANGE.1).contains(&psi_min) {
        problems.push(format!("rotated basis minimum {psi_min:e} outside [{:e}, {:e}]", PSI_MIN_RANGE.0, PSI_MIN_RANGE.1));
    }

    let verdict = if problems.is_empty() { "disproved" } else { "inconclusive" };
    let mut doc = CertificateDoc::new("lobatto", verdict, tol);
    if let EmbedResult::Failure(f) = &four {
        doc = doc.with_failure(f);
    }
    doc.detail = (!problems.is_empty()).then(|| problems.join("; "));
    let sample_candidates = match &sample {
        EmbedResult::Failure(f) => f.reports.iter().map(CandidateDoc::from).collect(),
        _ => Vec::new(),
    };
    doc.lobatto = Some(LobattoDoc {
        ell,
        scan_step,
        gram_residual,
        rotation_residual,
        psi_gram_residual,
        psi_min,
        decisive_pairs,
        sample_size: 2 * ell + 1,
        sample_verdict: sample.kind().into(),
        sample_candidates,
        warnings,
    });

    let l = doc.lobatto.as_ref().expect("set above");
    let mut text = format!("verdict: {verdict}\n");
    if let Some(d) = &doc.detail {
        text.push_str(&format!("problems: {d}\n"));
    }
    text.push_str(&format!(
        "H¹₀ Gram of (φ₂, φ₃, φ₄): ‖G − I‖ = {:.3e}\n\
         rotation Q: ‖QᵀQ − I‖ = {:.3e}, ‖Gram(ψ) − I‖ = {:.3e}\n\
         min of ψ components on step {scan_step}: {psi_min:.6e}\n",
        l.gram_residual, l.rotation_residual, l.psi_gram_residual
    ));
    text.push_str(&format!("four-point set: {}\n", four.kind()));
    text.push_str(&fmt_candidates(&doc.candidates));
    let pairs: Vec<String> = l.decisive_pairs.iter().map(|[a, b]| format!("({a}, {b})")).collect();
    text.push_str(&format!("node pairs whose plane has obtuse projections: {}\n", pairs.join(" ")));
    text.push_str(&format!(
        "curve directions at ell = {ell} ({} points): {}",
        l.sample_size,
        sample.kind()
    ));
    text.push_str(&format!(", {} candidates\n", l.sample_candidates.len()));

    Ok(Outcome {
        code: if problems.is_empty() { EXIT_OK } else { EXIT_NEGATIVE },
        text,
        doc,
    })
}
