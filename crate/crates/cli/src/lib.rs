//! `bridgegenus` command line: argument parsing, text and JSON reports, SVG.

pub mod svg;

use std::ffi::OsString;
use std::io::Write;

use bridgegenus::diagram::{
    build_a_path, build_ab_path, build_ad_path, build_d_path, is_minimal, orient_path, EdgePath,
    PathClass,
};
use bridgegenus::invariants::Fibered;
use bridgegenus::knots::{
    satellite_genus_with, torti_genus_with, KnotReport, ReportOptions, SatelliteKnot,
    TortiRationalKnot,
};
use bridgegenus::rationals::{
    even_cf, EvenContinuedFraction, Head, LinkingNumber, ReducedFraction,
};
use bridgegenus::slopes::SlopePair;
use bridgegenus::Error;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_NOT_APPLICABLE: i32 = 3;

pub const NO_COLOR_ENV: &str = "BRIDGEGENUS_NO_COLOR";

#[derive(Parser, Debug)]
#[command(
    name = "bridgegenus",
    version,
    about = "Genus and fiberedness of knots built from 2-bridge links"
)]
pub struct Cli {
    /// Print a JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    /// Exit with status 3 when the report carries warnings.
    #[arg(long, global = true)]
    pub strict: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Even continued fraction expansions and linking number of β/α.
    Cf {
        #[command(flatten)]
        link: LinkArgs,
        /// Print only the expansion with this head.
        #[arg(long, value_parser = clap::value_parser!(u8).range(0..=1))]
        head: Option<u8>,
    },
    /// Expansions, linking number and minimal edge-paths of L(β/α).
    Link {
        #[command(flatten)]
        link: LinkArgs,
    },
    /// Genus of the satellite knot K(α, β; p, q).
    Satellite {
        #[command(flatten)]
        link: LinkArgs,
        #[arg(short, allow_negative_numbers = true)]
        p: i64,
        #[arg(short, allow_negative_numbers = true)]
        q: i64,
        /// Also list the odd- and even-position sums when lk = 0.
        #[arg(long)]
        zero_lk_readings: bool,
    },
    /// Genus of the torti-rational knot K(β/α; r).
    Torti {
        #[command(flatten)]
        link: LinkArgs,
        #[arg(short, allow_negative_numbers = true)]
        r: i64,
        /// Also list the odd- and even-position sums when lk = 0.
        #[arg(long)]
        zero_lk_readings: bool,
    },
    /// Edge-path of one class to β/α, optionally rendered as SVG.
    Path {
        #[command(flatten)]
        link: LinkArgs,
        #[arg(long, value_enum)]
        class: ClassArg,
        #[arg(long, default_value_t = 0, value_parser = clap::value_parser!(u8).range(0..=1))]
        head: u8,
        /// Write an SVG drawing of the path to this file.
        #[arg(long, value_name = "FILE")]
        svg: Option<std::path::PathBuf>,
    },
}

/// `β/α` either positionally or as `--alpha A --beta B`.
#[derive(Args, Debug)]
pub struct LinkArgs {
    /// The fraction as B/A.
    #[arg(value_name = "B/A", conflicts_with_all = ["alpha", "beta"])]
    pub fraction: Option<String>,
    #[arg(long, requires = "beta", allow_negative_numbers = true)]
    pub alpha: Option<i64>,
    #[arg(long, requires = "alpha", allow_negative_numbers = true)]
    pub beta: Option<i64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ClassArg {
    A,
    Ad,
    Ab,
    D,
}

impl From<ClassArg> for PathClass {
    fn from(c: ClassArg) -> Self {
        match c {
            ClassArg::A => PathClass::A,
            ClassArg::Ad => PathClass::AD,
            ClassArg::Ab => PathClass::AB,
            ClassArg::D => PathClass::D,
        }
    }
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Core(Error),
    Io(String),
    Closed,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl Failure {
    fn exit_code(&self) -> i32 {
        match self {
            Failure::Core(
                Error::NotApplicable(_)
                | Error::InvalidHead(_)
                | Error::WrongClass { .. }
                | Error::NonIntegerGenus { .. }
                | Error::NonzeroLinking(_),
            ) => EXIT_NOT_APPLICABLE,
            _ => EXIT_INVALID,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Usage(m) | Failure::Io(m) => m.clone(),
            Failure::Closed => String::new(),
            Failure::Core(e) => e.to_string(),
        }
    }
}

impl LinkArgs {
    /// `(alpha, beta)` as typed; not reduced.
    fn raw(&self) -> Result<(i64, i64), Failure> {
        match (&self.fraction, self.alpha, self.beta) {
            (Some(s), _, _) => {
                let (b, a) = s
                    .split_once('/')
                    .ok_or_else(|| Failure::Usage(format!("expected B/A, got {s:?}")))?;
                let parse = |t: &str| {
                    t.trim()
                        .parse::<i64>()
                        .map_err(|_| Failure::Usage(format!("expected B/A, got {s:?}")))
                };
                Ok((parse(a)?, parse(b)?))
            }
            (None, Some(a), Some(b)) => Ok((a, b)),
            _ => Err(Failure::Usage(
                "give the fraction as B/A or with --alpha and --beta".into(),
            )),
        }
    }

    fn fraction(&self) -> Result<ReducedFraction, Failure> {
        let (alpha, beta) = self.raw()?;
        let x = ReducedFraction::new(beta, alpha)?;
        if x.den() != alpha {
            return Err(Failure::Usage(format!(
                "{beta}/{alpha} is not in lowest terms with alpha > 0"
            )));
        }
        x.validate_link_parameter()?;
        Ok(x)
    }
}

struct Style {
    color: bool,
}

impl Style {
    fn paint(&self, code: &str, s: &str) -> String {
        if self.color {
            format!("\x1b[{code}m{s}\x1b[0m")
        } else {
            s.to_string()
        }
    }

    fn bold(&self, s: &str) -> String {
        self.paint("1", s)
    }

    fn good(&self, s: &str) -> String {
        self.paint("32", s)
    }

    fn warn(&self, s: &str) -> String {
        self.paint("33", s)
    }
}

/// Whether text output should use ANSI color: stdout is a terminal and
/// `BRIDGEGENUS_NO_COLOR` is unset.
pub fn color_enabled() -> bool {
    use std::io::IsTerminal;
    std::env::var_os(NO_COLOR_ENV).is_none() && std::io::stdout().is_terminal()
}

/// Top-level layout shared by every JSON report.
#[derive(Serialize)]
struct Envelope<'a> {
    input: Value,
    cf0: Option<&'a EvenContinuedFraction>,
    cf1: Option<&'a EvenContinuedFraction>,
    lk: LinkingNumber,
    cases: Vec<Value>,
    genus: Option<i64>,
    slopes: Option<SlopePair>,
    fibered: Fibered,
    warnings: Vec<String>,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write, color: bool) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_INVALID
            } else {
                EXIT_OK
            };
            let text = if color {
                e.render().ansi().to_string()
            } else {
                e.render().to_string()
            };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{text}");
            return code;
        }
    };
    execute(&cli, out, err, color)
}

pub fn execute(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write, color: bool) -> i32 {
    let style = Style { color };
    let result = match &cli.command {
        Command::Cf { link, head } => cmd_cf(cli, link, *head, &style, out),
        Command::Link { link } => cmd_link(cli, link, &style, out),
        Command::Satellite {
            link,
            p,
            q,
            zero_lk_readings,
        } => link
            .raw()
            .and_then(|(alpha, beta)| Ok(SatelliteKnot::new(alpha, beta, *p, *q)?))
            .and_then(|k| {
                let opts = ReportOptions {
                    zero_linking_readings: *zero_lk_readings,
                };
                Ok(satellite_genus_with(&k, opts)?)
            })
            .and_then(|r| knot_output(cli, &r, &style, out)),
        Command::Torti {
            link,
            r,
            zero_lk_readings,
        } => link
            .raw()
            .and_then(|(alpha, beta)| Ok(TortiRationalKnot::new(alpha, beta, *r)?))
            .and_then(|k| {
                let opts = ReportOptions {
                    zero_linking_readings: *zero_lk_readings,
                };
                Ok(torti_genus_with(&k, opts)?)
            })
            .and_then(|r| knot_output(cli, &r, &style, out)),
        Command::Path {
            link,
            class,
            head,
            svg,
        } => cmd_path(
            cli,
            link,
            (*class).into(),
            *head,
            svg.as_deref(),
            &style,
            out,
        ),
    };
    match result {
        Ok(code) => code,
        Err(Failure::Closed) => EXIT_OK,
        Err(f) => {
            let _ = writeln!(err, "{}: {}", style.paint("31", "error"), f.message());
            f.exit_code()
        }
    }
}

fn io(e: std::io::Error) -> Failure {
    if e.kind() == std::io::ErrorKind::BrokenPipe {
        return Failure::Closed;
    }
    Failure::Io(e.to_string())
}

fn finish(cli: &Cli, warnings: &[String]) -> i32 {
    if cli.strict && !warnings.is_empty() {
        EXIT_NOT_APPLICABLE
    } else {
        EXIT_OK
    }
}

fn write_json(out: &mut dyn Write, v: &impl Serialize) -> Result<(), Failure> {
    let s = serde_json::to_string_pretty(v).map_err(|e| Failure::Io(e.to_string()))?;
    writeln!(out, "{s}").map_err(io)
}

fn head_of(h: u8) -> Head {
    Head::try_from(h).expect("clap restricts heads to 0 and 1")
}

fn fraction_input(x: ReducedFraction) -> Value {
    json!({ "alpha": x.den(), "beta": x.num() })
}

fn cmd_cf(
    cli: &Cli,
    link: &LinkArgs,
    head: Option<u8>,
    style: &Style,
    out: &mut dyn Write,
) -> Result<i32, Failure> {
    let x = link.fraction()?;
    let cf0 = even_cf(x, Head::Zero)?;
    let cf1 = even_cf(x, Head::One)?;
    let lk = cf0.linking_number();
    let show0 = head != Some(1);
    let show1 = head != Some(0);
    if cli.json {
        let mut input = fraction_input(x);
        input["head"] = json!(head);
        write_json(
            out,
            &Envelope {
                input,
                cf0: show0.then_some(&cf0),
                cf1: show1.then_some(&cf1),
                lk,
                cases: Vec::new(),
                genus: None,
                slopes: None,
                fibered: Fibered::Unknown,
                warnings: Vec::new(),
            },
        )?;
    } else {
        writeln!(out, "{}", style.bold(&x.to_string())).map_err(io)?;
        if show0 {
            writeln!(out, "  head 0  {cf0}").map_err(io)?;
        }
        if show1 {
            writeln!(out, "  head 1  {cf1}").map_err(io)?;
        }
        writeln!(out, "  lk      {}", lk.value).map_err(io)?;
    }
    Ok(EXIT_OK)
}

/// The minimal paths that exist for one expansion, by class.
fn paths_for(cf: &EvenContinuedFraction) -> Vec<(PathClass, Result<EdgePath, Error>)> {
    vec![
        (PathClass::A, Ok(build_a_path(cf))),
        (PathClass::AD, orient_path(&build_ad_path(cf))),
        (PathClass::AB, build_ab_path(cf)),
        (PathClass::D, build_d_path(cf)),
    ]
}

fn arrows(path: &EdgePath) -> String {
    path.edges()
        .iter()
        .map(|e| match e.orientation {
            Some(o) => format!("{}{}", o.arrow(), e.kind.letter()),
            None => e.kind.letter().to_string(),
        })
        .collect::<Vec<_>>()
        .join(" ")
}

fn spaced(path: &EdgePath) -> String {
    path.type_sequence()
        .chars()
        .map(String::from)
        .collect::<Vec<_>>()
        .join(" ")
}

fn cmd_link(
    cli: &Cli,
    link: &LinkArgs,
    style: &Style,
    out: &mut dyn Write,
) -> Result<i32, Failure> {
    let x = link.fraction()?;
    let cf0 = even_cf(x, Head::Zero)?;
    let cf1 = even_cf(x, Head::One)?;
    let lk = cf0.linking_number();
    let mut cases = Vec::new();
    let mut lines = Vec::new();
    for cf in [&cf0, &cf1] {
        let h = cf.head().value();
        for (class, built) in paths_for(cf) {
            let name = format!("{}-head{h}", class.to_string().to_lowercase());
            match built {
                Ok(p) => {
                    cases.push(json!({
                        "name": name,
                        "applicable": true,
                        "head": h,
                        "path_class": class,
                        "types": p.type_sequence(),
                        "minimal": is_minimal(&p),
                    }));
                    lines.push(format!("  {:<9} {}", name, arrows(&p)));
                }
                Err(e) => {
                    cases.push(json!({
                        "name": name,
                        "applicable": false,
                        "reason": e.to_string(),
                        "head": h,
                        "path_class": class,
                    }));
                    lines.push(format!("  {:<9} -", name));
                }
            }
        }
    }
    if cli.json {
        write_json(
            out,
            &Envelope {
                input: fraction_input(x),
                cf0: Some(&cf0),
                cf1: Some(&cf1),
                lk,
                cases,
                genus: None,
                slopes: None,
                fibered: Fibered::Unknown,
                warnings: Vec::new(),
            },
        )?;
    } else {
        writeln!(out, "{}", style.bold(&format!("L({x})"))).map_err(io)?;
        writeln!(out, "  head 0  {cf0}").map_err(io)?;
        writeln!(out, "  head 1  {cf1}").map_err(io)?;
        writeln!(out, "  lk      {}", lk.value).map_err(io)?;
        writeln!(out, "paths").map_err(io)?;
        for l in lines {
            writeln!(out, "{l}").map_err(io)?;
        }
    }
    Ok(EXIT_OK)
}

fn cmd_path(
    cli: &Cli,
    link: &LinkArgs,
    class: PathClass,
    head: u8,
    svg_file: Option<&std::path::Path>,
    style: &Style,
    out: &mut dyn Write,
) -> Result<i32, Failure> {
    let x = link.fraction()?;
    let cf = even_cf(x, head_of(head))?;
    let path = match class {
        PathClass::A => build_a_path(&cf),
        PathClass::AD => orient_path(&build_ad_path(&cf))?,
        PathClass::AB => build_ab_path(&cf)?,
        PathClass::D => build_d_path(&cf)?,
    };
    if let Some(file) = svg_file {
        std::fs::write(file, svg::render_svg(&path))
            .map_err(|e| Failure::Io(format!("{}: {e}", file.display())))?;
    }
    let vertices: Vec<String> = path.vertices().iter().map(|v| v.to_string()).collect();
    let lk = cf.linking_number();
    if cli.json {
        let name = format!("{}-head{head}", class.to_string().to_lowercase());
        let case = json!({
            "name": name,
            "applicable": true,
            "head": head,
            "path_class": class,
            "types": path.type_sequence(),
            "minimal": is_minimal(&path),
            "edges": path.edges(),
        });
        let mut input = fraction_input(x);
        input["class"] = json!(class);
        input["head"] = json!(head);
        let (cf0, cf1) = match cf.head() {
            Head::Zero => (Some(&cf), None),
            Head::One => (None, Some(&cf)),
        };
        write_json(
            out,
            &Envelope {
                input,
                cf0,
                cf1,
                lk,
                cases: vec![case],
                genus: None,
                slopes: None,
                fibered: Fibered::Unknown,
                warnings: Vec::new(),
            },
        )?;
    } else {
        writeln!(
            out,
            "{}",
            style.bold(&format!("{class}-path to {x} from {cf}"))
        )
        .map_err(io)?;
        writeln!(out, "  types     {}", spaced(&path)).map_err(io)?;
        writeln!(out, "  edges     {}", arrows(&path)).map_err(io)?;
        writeln!(out, "  vertices  {}", vertices.join(" ")).map_err(io)?;
        let minimal = if is_minimal(&path) { "yes" } else { "no" };
        writeln!(out, "  minimal   {minimal}").map_err(io)?;
    }
    Ok(EXIT_OK)
}

fn fibered_text(f: Fibered) -> String {
    f.to_string()
}

fn knot_output(
    cli: &Cli,
    r: &KnotReport,
    style: &Style,
    out: &mut dyn Write,
) -> Result<i32, Failure> {
    if cli.json {
        write_json(out, r)?;
    } else {
        write_knot_text(r, style, out).map_err(io)?;
    }
    if r.genus.is_none() {
        return Ok(EXIT_NOT_APPLICABLE);
    }
    Ok(finish(cli, &r.warnings))
}

fn write_knot_text(r: &KnotReport, style: &Style, out: &mut dyn Write) -> std::io::Result<()> {
    use bridgegenus::knots::KnotInput;
    let title = match r.input {
        KnotInput::Satellite { alpha, beta, p, q } => format!("K({alpha}, {beta}; {p}, {q})"),
        KnotInput::Torti { alpha, beta, r } => format!("K({beta}/{alpha}; {r})"),
    };
    writeln!(out, "{}", style.bold(&title))?;
    writeln!(out, "  cf0      {}", r.cf0)?;
    writeln!(out, "  cf1      {}", r.cf1)?;
    writeln!(out, "  lk       {}", r.lk.value)?;
    writeln!(out, "  cases")?;
    for c in &r.cases {
        let mark = if c.selected { "*" } else { " " };
        if !c.applicable {
            let reason = c.reason.as_deref().unwrap_or("");
            writeln!(out, "   {mark} {:<22} not applicable: {reason}", c.name)?;
            continue;
        }
        let mut parts = Vec::new();
        if let (Some(class), Some(h)) = (c.path_class, c.head) {
            parts.push(format!("{class} head {}", h.value()));
        } else if let Some(h) = c.head {
            parts.push(format!("head {}", h.value()));
        }
        if let Some(s) = c.sheets {
            parts.push(format!("mu {} n {}", s.mu, s.n));
        }
        if let (Some(sg), Some(g)) = (c.surface_genus, c.genus) {
            if sg != g {
                parts.push(format!("surface genus {sg}"));
            }
        }
        if let Some(g) = c.genus {
            parts.push(format!("genus {g}"));
        }
        parts.push(format!("fibered {}", fibered_text(c.fibered)));
        writeln!(out, "   {mark} {:<22} {}", c.name, parts.join(", "))?;
    }
    let genus = match r.genus {
        Some(g) => style.good(&g.to_string()),
        None => style.warn("unknown"),
    };
    writeln!(out, "  genus    {genus}")?;
    if let Some(s) = r.slopes {
        writeln!(out, "  slopes   K1 {}  K2 {}", s.k1, s.k2)?;
    }
    writeln!(out, "  fibered  {}", fibered_text(r.fibered))?;
    for w in &r.warnings {
        writeln!(out, "{} {w}", style.warn("warning:"))?;
    }
    Ok(())
}
