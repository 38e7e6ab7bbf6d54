//! gradecert: certification runs, forced gradings, and Coxeter combinatorics
//! from the command line.
//!
//! Exit codes for `certify`: 0 all requested checks pass, 1 some check fails
//! (or the implication audit reports a violation), 2 some check is
//! inconclusive at the truncation bound and none fails, 3 input error.
//! Reports are deterministic: sorted keys, no timestamps; parallel corpus
//! runs (GRADECERT_MAX_THREADS) merge in input order.

use std::collections::BTreeMap;
use std::path::PathBuf;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};

use gradecert_core::certify::{
    certify_koszul, certify_q_koszul, certify_quasi_hereditary, certify_standard_koszul,
    certify_standard_q_koszul, check_quadratic, check_tight, implication_audit, CertOptions,
    CertReport, Verdict,
};
use gradecert_core::forced::{gr_algebra, tilde_gr};
use gradecert_core::qh::build_qh;
use gradecert_core::spec_io;
use gradecert_core::CoreError;
use gradecert_weyl::cosets::{parabolic_singular_poset, psi, regular_double_cosets, Sign};
use gradecert_weyl::kl::{poly_string, KLTable};
use gradecert_weyl::types::parse_type;
use gradecert_weyl::weights::{ell_of_p, WeightPredicates};
use gradecert_weyl::{CoxBall, WeylGroup};

#[derive(Parser)]
#[command(name = "gradecert", version, about = "graded-algebra certification toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run certifiers on algebra spec files and emit a JSON report.
    Certify(CertifyArgs),
    /// Apply a forced grading and emit the result as an algebra spec file.
    Gr(GrArgs),
    /// Coxeter group computations (balls, double cosets, psi, index posets,
    /// Kazhdan-Lusztig tables, weight predicates).
    #[command(subcommand)]
    Coxeter(CoxeterCmd),
}

#[derive(Args)]
struct CertifyArgs {
    /// Algebra spec files (JSON).
    #[arg(required = true)]
    files: Vec<PathBuf>,
    /// Comma-separated checks: quasi_hereditary, koszul, standard_koszul,
    /// q_koszul, q_koszul_1, q_koszul_2, standard_q_koszul, tight,
    /// quadratic, audit.
    #[arg(long, default_value = "audit")]
    checks: String,
    /// Also run the exhaustive heredity-chain verifier.
    #[arg(long)]
    deep: bool,
    /// Resolution truncation bound (default dim^2).
    #[arg(long)]
    max_length: Option<usize>,
    /// Seed for randomized alignment searches.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct GrArgs {
    /// Algebra spec file (mode gr) or order file (mode tildegr).
    file: PathBuf,
    /// gr (radical filtration of a field algebra) or tildegr (integral
    /// filtration of an order, base-changed to F_p).
    #[arg(long, value_enum, default_value_t = GrMode::Gr)]
    mode: GrMode,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum GrMode {
    Gr,
    Tildegr,
}

#[derive(Subcommand)]
enum CoxeterCmd {
    /// Enumerate the ball of the given radius.
    Ball(BallArgs),
    /// Double cosets meeting the ball, with regularity certificates.
    Dcosets(DcosetArgs),
    /// The correspondence x -> w_mu x^{-1} w_nu.
    Psi(PsiArgs),
    /// Parabolic-singular index posets (elements and cover edges).
    Posets(PosetArgs),
    /// Kazhdan-Lusztig polynomials over the ball (CSV).
    Kl(KlArgs),
    /// Weight predicates.
    Weights(WeightArgs),
}

#[derive(Args)]
struct BallArgs {
    /// Cartan type, e.g. A2, B2, or affine A1~.
    cartan: String,
    #[arg(long, default_value_t = 3)]
    radius: usize,
}

#[derive(Args)]
struct DcosetArgs {
    cartan: String,
    /// Generators of the left parabolic, comma separated (e.g. s1 or s1,s2).
    #[arg(long = "J1", default_value = "")]
    j1: String,
    #[arg(long = "J2", default_value = "")]
    j2: String,
    #[arg(long, default_value_t = 4)]
    radius: usize,
}

#[derive(Args)]
struct PsiArgs {
    cartan: String,
    #[arg(long, default_value = "")]
    mu: String,
    #[arg(long, default_value = "")]
    nu: String,
    /// Element as a dot-word, e.g. s2.s1 (e for the identity).
    #[arg(long)]
    x: String,
    #[arg(long, default_value_t = 8)]
    radius: usize,
}

#[derive(Args)]
struct PosetArgs {
    cartan: String,
    #[arg(long, default_value = "")]
    mu: String,
    #[arg(long, default_value = "")]
    nu: String,
    /// minus or plus.
    #[arg(long, default_value = "minus")]
    sign: String,
    #[arg(long, default_value_t = 6)]
    radius: usize,
    /// Restrict to the poset ideal generated by this element.
    #[arg(long)]
    ideal: Option<String>,
}

#[derive(Args)]
struct KlArgs {
    cartan: String,
    #[arg(long, default_value_t = 4)]
    radius: usize,
    /// Optional single pair: x and w as dot-words.
    #[arg(long)]
    x: Option<String>,
    #[arg(long)]
    w: Option<String>,
}

#[derive(Args)]
struct WeightArgs {
    cartan: String,
    #[arg(long)]
    p: u64,
    /// Print the Coxeter number.
    #[arg(long)]
    coxeter: bool,
    /// Test p-regularity of a weight (comma-separated coordinates).
    #[arg(long)]
    regular: Option<String>,
    /// Test Jantzen-region membership of a weight.
    #[arg(long)]
    jantzen: Option<String>,
    /// Print ell(p).
    #[arg(long)]
    ell: bool,
    /// Enumerate the restricted-regular poset ideal within this bound.
    #[arg(long)]
    gamma_bound: Option<i64>,
}

fn main() {
    // behave like a standard unix filter when stdout is closed early
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    let code = match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            3
        }
    };
    std::process::exit(code);
}

fn run(cli: Cli) -> anyhow::Result<i32> {
    match cli.command {
        Command::Certify(args) => cmd_certify(args),
        Command::Gr(args) => cmd_gr(args),
        Command::Coxeter(cmd) => cmd_coxeter(cmd),
    }
}

// ---------------------------------------------------------------------------
// certify

fn parse_checks(s: &str) -> anyhow::Result<Vec<String>> {
    let known = [
        "quasi_hereditary",
        "koszul",
        "standard_koszul",
        "q_koszul",
        "q_koszul_1",
        "q_koszul_2",
        "standard_q_koszul",
        "tight",
        "quadratic",
        "audit",
    ];
    let mut out = Vec::new();
    for part in s.split(',').map(str::trim).filter(|x| !x.is_empty()) {
        if !known.contains(&part) {
            bail!("unknown check '{part}' (known: {})", known.join(", "));
        }
        out.push(part.to_string());
    }
    if out.is_empty() {
        bail!("no checks requested");
    }
    Ok(out)
}

fn fail_report(property: &str, witness: serde_json::Value) -> CertReport {
    CertReport {
        property: property.into(),
        verdict: Verdict::Fail,
        witness: Some(witness),
        evidence: serde_json::json!({}),
    }
}

fn certify_one_file(
    path: &PathBuf,
    checks: &[String],
    opts: CertOptions,
) -> anyhow::Result<(BTreeMap<String, CertReport>, Vec<String>)> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let file = spec_io::from_json(&text).with_context(|| format!("parsing {}", path.display()))?;
    let (algebra, poset) =
        spec_io::parse_algebra(&file).with_context(|| format!("building {}", path.display()))?;

    let mut reports = BTreeMap::new();
    let mut violations = Vec::new();
    let need_poset = || {
        poset
            .clone()
            .ok_or_else(|| anyhow!("{}: this check needs a poset block", path.display()))
    };
    for check in checks {
        match check.as_str() {
            "audit" => {
                let audit = implication_audit(&algebra, poset.as_ref(), opts)?;
                for (k, v) in audit.reports {
                    reports.insert(k, v);
                }
                violations.extend(audit.violations);
            }
            "koszul" => {
                reports.insert(check.clone(), certify_koszul(&algebra, opts)?);
            }
            "tight" => {
                reports.insert(check.clone(), check_tight(&algebra));
            }
            "quadratic" => match check_quadratic(&algebra) {
                Ok(r) => {
                    reports.insert(check.clone(), r);
                }
                Err(CoreError::TightnessRequired { grade }) => {
                    reports.insert(
                        check.clone(),
                        fail_report(
                            "quadratic",
                            serde_json::json!({ "tightness_required": grade }),
                        ),
                    );
                }
                Err(e) => return Err(e.into()),
            },
            "quasi_hereditary" => {
                reports.insert(
                    check.clone(),
                    certify_quasi_hereditary(&algebra, &need_poset()?, opts)?,
                );
            }
            "q_koszul" | "q_koszul_1" | "q_koszul_2" => {
                let n = match check.as_str() {
                    "q_koszul_1" => Some(1),
                    "q_koszul_2" => Some(2),
                    _ => None,
                };
                match certify_q_koszul(&algebra, &need_poset()?, n, opts) {
                    Ok(r) => {
                        reports.insert(check.clone(), r);
                    }
                    Err(CoreError::A0NotQuasiHereditary(msg)) => {
                        reports.insert(
                            check.clone(),
                            fail_report(check, serde_json::json!({ "a0_not_qh": msg })),
                        );
                    }
                    Err(e) => return Err(e.into()),
                }
            }
            "standard_koszul" | "standard_q_koszul" => {
                let poset = need_poset()?;
                match build_qh(&algebra, &poset) {
                    Ok(q) => {
                        let r = if check == "standard_koszul" {
                            certify_standard_koszul(&q, opts)?
                        } else {
                            certify_standard_q_koszul(&q, opts)?
                        };
                        reports.insert(check.clone(), r);
                    }
                    Err(CoreError::NotQuasiHereditary(msg)) => {
                        reports.insert(
                            check.clone(),
                            fail_report(
                                check,
                                serde_json::json!({ "not_quasi_hereditary": msg }),
                            ),
                        );
                    }
                    Err(e) => return Err(e.into()),
                }
            }
            _ => unreachable!("checks validated"),
        }
    }
    Ok((reports, violations))
}

fn cmd_certify(args: CertifyArgs) -> anyhow::Result<i32> {
    let checks = parse_checks(&args.checks)?;
    let opts = CertOptions { max_length: args.max_length, deep: args.deep };
    let threads: usize = std::env::var("GRADECERT_MAX_THREADS")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(1)
        .max(1);

    // fan out across files, merge in input order
    let results: Vec<anyhow::Result<(BTreeMap<String, CertReport>, Vec<String>)>> =
        if threads <= 1 || args.files.len() <= 1 {
            args.files.iter().map(|f| certify_one_file(f, &checks, opts)).collect()
        } else {
            std::thread::scope(|scope| {
                let mut handles = Vec::new();
                for chunk in args.files.chunks(args.files.len().div_ceil(threads)) {
                    let checks = &checks;
                    handles.push(scope.spawn(move || {
                        chunk
                            .iter()
                            .map(|f| certify_one_file(f, checks, opts))
                            .collect::<Vec<_>>()
                    }));
                }
                handles.into_iter().flat_map(|h| h.join().expect("worker")).collect()
            })
        };

    let mut documents = Vec::new();
    let mut any_fail = false;
    let mut any_inconclusive = false;
    for (path, result) in args.files.iter().zip(results) {
        let (reports, violations) = result?;
        for r in reports.values() {
            match r.verdict {
                Verdict::Fail => any_fail = true,
                Verdict::Inconclusive => any_inconclusive = true,
                Verdict::Pass => {}
            }
        }
        if !violations.is_empty() {
            any_fail = true;
        }
        documents.push(serde_json::json!({
            "file": path.display().to_string(),
            "reports": reports,
            "violations": violations,
        }));
    }
    let report = serde_json::to_string_pretty(&documents)? + "\n";
    match &args.out {
        Some(p) => std::fs::write(p, &report)?,
        None => print!("{report}"),
    }
    Ok(if any_fail {
        1
    } else if any_inconclusive {
        2
    } else {
        0
    })
}

// ---------------------------------------------------------------------------
// gr

fn cmd_gr(args: GrArgs) -> anyhow::Result<i32> {
    let text = std::fs::read_to_string(&args.file)
        .with_context(|| format!("reading {}", args.file.display()))?;
    let file = spec_io::from_json(&text)?;
    let out_file = match args.mode {
        GrMode::Gr => {
            let (algebra, poset) = spec_io::parse_algebra(&file)?;
            let graded = gr_algebra(&algebra).map_err(|e| match e {
                CoreError::RadicalUnavailable => anyhow!(
                    "radical unavailable: needs mode Q, F_p with p > dim, a quiver \
                     presentation, or an explicit radical basis"
                ),
                other => other.into(),
            })?;
            spec_io::emit_algebra(&graded, poset.as_ref())
        }
        GrMode::Tildegr => {
            let order = spec_io::parse_order(&file)?;
            let graded = tilde_gr(&order)?;
            spec_io::emit_algebra(&graded, None)
        }
    };
    let text = spec_io::to_json(&out_file);
    match &args.out {
        Some(p) => std::fs::write(p, &text)?,
        None => print!("{text}"),
    }
    Ok(0)
}

// ---------------------------------------------------------------------------
// coxeter

fn make_ball(cartan: &str, radius: usize) -> anyhow::Result<CoxBall> {
    let (t, affine) = parse_type(cartan)?;
    Ok(CoxBall::new(WeylGroup::new(t, affine)?, radius))
}

fn parse_gens(group: &WeylGroup, s: &str) -> anyhow::Result<Vec<usize>> {
    let mut out = Vec::new();
    for part in s.split(',').map(str::trim).filter(|x| !x.is_empty()) {
        out.push(group.generator_by_name(part)?);
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

fn element_word(ball: &CoxBall, x: &gradecert_weyl::WeylElem) -> String {
    match ball.id_of(x) {
        Some(id) => ball.word_of(id),
        None => format!("<outside radius {}>", ball.radius),
    }
}

fn cmd_coxeter(cmd: CoxeterCmd) -> anyhow::Result<i32> {
    match cmd {
        CoxeterCmd::Ball(a) => {
            let ball = make_ball(&a.cartan, a.radius)?;
            println!("# type {} radius {} elements {}", a.cartan, a.radius, ball.len());
            let mut lines: Vec<(usize, String)> =
                (0..ball.len()).map(|i| (ball.length[i], ball.word_of(i))).collect();
            lines.sort();
            for (l, w) in lines {
                println!("{l}\t{w}");
            }
        }
        CoxeterCmd::Dcosets(a) => {
            let ball = make_ball(&a.cartan, a.radius)?;
            let j1 = parse_gens(&ball.group, &a.j1)?;
            let j2 = parse_gens(&ball.group, &a.j2)?;
            let cosets = regular_double_cosets(&ball, &j1, &j2)?;
            println!("# type {} radius {} double cosets {}", a.cartan, a.radius, cosets.len());
            for c in &cosets {
                let max = match &c.max_rep {
                    Some(m) => element_word(&ball, m),
                    None => "-".to_string(),
                };
                println!(
                    "min={} size={} regular={} max={}",
                    element_word(&ball, &c.min_rep),
                    c.size,
                    c.regular,
                    max
                );
            }
        }
        CoxeterCmd::Psi(a) => {
            let ball = make_ball(&a.cartan, a.radius)?;
            let mu = parse_gens(&ball.group, &a.mu)?;
            let nu = parse_gens(&ball.group, &a.nu)?;
            let word = ball.group.parse_word(&a.x)?;
            let x = ball.group.word_to_element(&word)?;
            let y = psi(&ball.group, &x, &mu, &nu)?;
            println!("{}", element_word(&ball, &y));
        }
        CoxeterCmd::Posets(a) => {
            let ball = make_ball(&a.cartan, a.radius)?;
            let mu = parse_gens(&ball.group, &a.mu)?;
            let nu = parse_gens(&ball.group, &a.nu)?;
            let sign = match a.sign.as_str() {
                "minus" | "-" => Sign::Minus,
                "plus" | "+" => Sign::Plus,
                other => bail!("unknown sign '{other}'"),
            };
            let poset = parabolic_singular_poset(&ball, &mu, &nu, sign)?;
            let elements: Vec<gradecert_weyl::WeylElem> = match &a.ideal {
                None => poset.elements.clone(),
                Some(w) => {
                    let word = ball.group.parse_word(w)?;
                    let el = ball.group.word_to_element(&word)?;
                    poset.ideal(&el)?
                }
            };
            println!("# type {} sign {:?} elements {}", a.cartan, sign, elements.len());
            for e in &elements {
                println!("element\t{}", element_word(&ball, e));
            }
            // cover edges of the (restricted) poset
            let idx: Vec<usize> =
                elements.iter().map(|e| poset.position(e).expect("member")).collect();
            let mut edges = Vec::new();
            for &x in &idx {
                for &w in &idx {
                    if x == w || !poset.le[x][w] {
                        continue;
                    }
                    let is_cover = idx
                        .iter()
                        .all(|&z| z == x || z == w || !(poset.le[x][z] && poset.le[z][w]));
                    if is_cover {
                        edges.push(format!(
                            "cover\t{}\t{}",
                            element_word(&ball, &poset.elements[x]),
                            element_word(&ball, &poset.elements[w])
                        ));
                    }
                }
            }
            edges.sort();
            for e in edges {
                println!("{e}");
            }
        }
        CoxeterCmd::Kl(a) => {
            let ball = make_ball(&a.cartan, a.radius)?;
            match (&a.x, &a.w) {
                (Some(xs), Some(ws)) => {
                    let x = ball.group.word_to_element(&ball.group.parse_word(xs)?)?;
                    let w = ball.group.word_to_element(&ball.group.parse_word(ws)?)?;
                    let p = gradecert_weyl::kl::kl_polynomial(&ball, &x, &w)?;
                    println!("{},{},{}", xs, ws, poly_string(&p));
                }
                (None, None) => {
                    let mut table = KLTable::new(&ball);
                    let mut lines = Vec::new();
                    for x in 0..ball.len() {
                        for w in 0..ball.len() {
                            if ball.bruhat_le(x, w) {
                                let p = table.polynomial(x, w);
                                lines.push(format!(
                                    "{},{},{}",
                                    ball.word_of(x),
                                    ball.word_of(w),
                                    poly_string(&p)
                                ));
                            }
                        }
                    }
                    lines.sort();
                    println!("# x,w,coefficients (ascending)");
                    for l in lines {
                        println!("{l}");
                    }
                }
                _ => bail!("--x and --w must be given together"),
            }
        }
        CoxeterCmd::Weights(a) => {
            let (t, affine) = parse_type(&a.cartan)?;
            if affine {
                bail!("weight predicates take a finite type");
            }
            let w = WeightPredicates::new(t, a.p)?;
            let parse_weight = |s: &str| -> anyhow::Result<Vec<i64>> {
                s.split(',')
                    .map(|x| x.trim().parse::<i64>().map_err(|e| anyhow!("bad weight: {e}")))
                    .collect()
            };
            let mut printed = false;
            if a.coxeter {
                println!("coxeter_number\t{}", w.coxeter_number());
                printed = true;
            }
            if let Some(s) = &a.regular {
                println!("p_regular\t{}", w.is_p_regular(&parse_weight(s)?)?);
                printed = true;
            }
            if let Some(s) = &a.jantzen {
                println!("jantzen\t{}", w.in_jantzen_region(&parse_weight(s)?)?);
                printed = true;
            }
            if a.ell {
                println!("ell\t{}", ell_of_p(a.p));
                printed = true;
            }
            if let Some(b) = a.gamma_bound {
                let members = w.gamma_res_reg_members(b)?;
                println!("gamma_res_reg\t{}", members.len());
                for m in members {
                    println!(
                        "weight\t{}",
                        m.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
                    );
                }
                printed = true;
            }
            if !printed {
                bail!(
                    "no predicate requested (try --coxeter, --regular, --jantzen, --ell, --gamma-bound)"
                );
            }
        }
    }
    Ok(0)
}
