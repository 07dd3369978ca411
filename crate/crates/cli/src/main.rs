use std::collections::HashMap;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use parakl::combinatorics::{grassmannian, link_pattern, longest_representative, rs_first_tableau};
use parakl::dyck::{configurations, Rule};
use parakl::ls_tree::{build_tree, enumerate_labellings, labelling_to_config};
use parakl::table::{build, single, Format, Method};
use parakl::verify::{run, Suite};
use parakl::{BinaryString, Error, Labelling, Path, Permutation, Sign};
use serde_json::json;

#[derive(Parser)]
#[command(name = "parakl", version, about = "Maximal parabolic Kazhdan–Lusztig polynomials of S_N")]
struct Cli {
    /// key=value file with size limits (limit.rule1, limit.rule2, limit.lstree, limit.hecke).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// P^ε between two paths (`+-+-`) or strings (`1212`).
    Poly {
        #[arg(long, default_value = "+")]
        sign: Sign,
        /// rule1, rule2, lstree, hecke, hecke-bar, hecke-flip or all.
        #[arg(long, default_value = "hecke")]
        method: String,
        #[arg(allow_hyphen_values = true)]
        alpha: String,
        #[arg(allow_hyphen_values = true)]
        beta: String,
    },
    /// The full matrix of P^ε over P_{N,K}.
    Table {
        n: usize,
        k: usize,
        #[arg(long, default_value = "+")]
        sign: Sign,
        #[arg(long, default_value = "hecke")]
        method: String,
        #[arg(long, default_value = "tsv")]
        format: String,
        /// Largest N accepted, overriding the configured limit.
        #[arg(long)]
        limit: Option<usize>,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Run an identity suite: duality, inversion, crossmethod, bridge, fullduality or all.
    Verify {
        suite: String,
        n: usize,
        /// Every K when omitted.
        k: Option<usize>,
        /// Largest N accepted.
        #[arg(long, default_value_t = 8)]
        limit: usize,
    },
    /// Convert between path, string and permutation views.
    Biject {
        #[arg(allow_hyphen_values = true)]
        input: String,
        #[arg(long, value_enum, default_value_t = Source::Auto)]
        from: Source,
        #[arg(long, value_enum, default_value_t = Target::All)]
        to: Target,
        #[arg(long, default_value = "-")]
        sign: Sign,
        /// Number of 1s, needed when the input is a permutation.
        #[arg(long)]
        ones: Option<usize>,
    },
    /// The capacity tree between two paths, with its labellings.
    Tree {
        #[arg(allow_hyphen_values = true)]
        lower: String,
        #[arg(allow_hyphen_values = true)]
        upper: String,
        #[arg(long, default_value = "+")]
        sign: Sign,
        #[arg(long)]
        labellings: bool,
    },
    /// Draw the strip configurations between two paths.
    ConfigRender {
        #[arg(allow_hyphen_values = true)]
        lower: String,
        #[arg(allow_hyphen_values = true)]
        upper: String,
        #[arg(long, default_value = "+")]
        sign: Sign,
        #[arg(long, value_enum, default_value_t = RuleArg::I)]
        rule: RuleArg,
        /// Draw only the configuration of this tree labelling (comma separated).
        #[arg(long)]
        labelling: Option<String>,
        /// Stop after this many configurations.
        #[arg(long)]
        limit: Option<usize>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Source {
    Auto,
    Path,
    String,
    Permutation,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum Target {
    All,
    Path,
    String,
    Link,
    Grassmannian,
    Longest,
    Tableau,
}

#[derive(Clone, Copy, ValueEnum)]
enum RuleArg {
    I,
    Ii,
}

enum Failure {
    /// Exit 1.
    Verification(String),
    /// Exit 2.
    Usage(String),
}

fn usage(e: Error) -> Failure {
    match e {
        Error::Overflow | Error::Inconsistent(_) => Failure::Verification(e.to_string()),
        _ => Failure::Usage(e.to_string()),
    }
}

type Outcome = std::result::Result<String, Failure>;

/// Reads `+-+-` as a path and `1212` as a string under `sign`.
fn parse_path(s: &str, sign: Sign) -> std::result::Result<Path, Failure> {
    if s.chars().all(|c| c == '1' || c == '2') && !s.is_empty() {
        let b: BinaryString = s.parse().map_err(usage)?;
        b.to_path(sign).map_err(usage)
    } else {
        s.parse().map_err(usage)
    }
}

struct Limits(HashMap<String, usize>);

impl Limits {
    fn load(file: Option<&PathBuf>) -> std::result::Result<Self, Failure> {
        let mut map: HashMap<String, usize> =
            [("rule1", 10), ("lstree", 10), ("rule2", 12), ("hecke", 12)].map(|(k, v)| (k.to_string(), v)).into();
        if let Some(path) = file {
            let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
            for (no, line) in text.lines().enumerate() {
                let line = line.split('#').next().unwrap_or("").trim();
                if line.is_empty() {
                    continue;
                }
                let bad = || Failure::Usage(format!("{}:{}: expected limit.<method> = <N>", path.display(), no + 1));
                let (key, value) = line.split_once('=').ok_or_else(bad)?;
                let method = key.trim().strip_prefix("limit.").ok_or_else(bad)?;
                let value = value.trim().trim_matches('"').parse().map_err(|_| bad())?;
                map.insert(method.to_string(), value);
            }
        }
        Ok(Self(map))
    }

    fn for_method(&self, m: Method) -> usize {
        let key = match m {
            Method::Rule1 => "rule1",
            Method::Rule2 => "rule2",
            Method::LsTree => "lstree",
            Method::Hecke | Method::HeckeBar | Method::HeckeFlip => "hecke",
        };
        self.0[key]
    }
}

fn parse_method(s: &str) -> std::result::Result<Method, Failure> {
    s.parse().map_err(usage)
}

fn cmd_poly(json: bool, sign: Sign, method: &str, alpha: &str, beta: &str) -> Outcome {
    let (a, b) = (parse_path(alpha, sign)?, parse_path(beta, sign)?);
    if a.len() != b.len() || a.ups() != b.ups() {
        return Err(Failure::Usage(format!("{a} and {b} do not lie in the same P_(N,K)")));
    }
    if !parakl::combinatorics::path_leq(&a, &b, sign) {
        eprintln!("note: {a} is not below {b} in the order for {sign}; the polynomial is 0");
    }
    let methods = if method == "all" { Method::all_for(sign) } else { vec![parse_method(method)?] };
    let mut results = Vec::new();
    for m in methods {
        results.push((m, single(&a, &b, sign, m).map_err(usage)?));
    }
    let verdict = results.windows(2).all(|w| w[0].1 == w[1].1);
    if json {
        let per: serde_json::Map<String, serde_json::Value> =
            results.iter().map(|(m, p)| (m.name().to_string(), json!(p))).collect();
        let mut v = json!({"alpha": a, "beta": b, "sign": sign, "results": per});
        if method == "all" {
            v["verdict"] = json!(if verdict { "MATCH" } else { "MISMATCH" });
        }
        return if verdict { Ok(format!("{v}\n")) } else { Err(Failure::Verification(v.to_string())) };
    }
    if method != "all" {
        return Ok(format!("{}\n", results[0].1));
    }
    let mut out = String::new();
    for (m, p) in &results {
        out.push_str(&format!("{}: {p}\n", m.name()));
    }
    if verdict {
        out.push_str("MATCH\n");
        Ok(out)
    } else {
        Err(Failure::Verification(format!("{out}MISMATCH")))
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_table(
    limits: &Limits,
    n: usize,
    k: usize,
    sign: Sign,
    method: &str,
    format: &str,
    limit: Option<usize>,
    output: Option<&PathBuf>,
) -> Outcome {
    let method = parse_method(method)?;
    let format: Format = format.parse().map_err(usage)?;
    let max = limit.unwrap_or_else(|| limits.for_method(method));
    if n > max {
        return Err(Failure::Usage(format!("N = {n} exceeds the limit {max} for {}", method.name())));
    }
    if k > n {
        return Err(Failure::Usage(format!("K = {k} exceeds N = {n}")));
    }
    let text = build(n, k, sign, method).map_err(usage)?.render(format);
    match output {
        Some(path) => {
            fs::write(path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
            Ok(String::new())
        }
        None => Ok(text),
    }
}

fn cmd_verify(json: bool, suite: &str, n: usize, k: Option<usize>, limit: usize) -> Outcome {
    let suite: Suite = suite.parse().map_err(usage)?;
    if n > limit {
        return Err(Failure::Usage(format!("N = {n} exceeds the verification limit {limit}")));
    }
    let report = run(suite, n, k).map_err(usage)?;
    let text = if json {
        format!("{}\n", serde_json::to_string_pretty(&report).expect("json"))
    } else {
        let mut s: String = report.checks.iter().map(|c| format!("{c}\n")).collect();
        s.push_str(if report.passed() { "all identities hold\n" } else { "FAILED\n" });
        s
    };
    if report.passed() {
        Ok(text)
    } else {
        Err(Failure::Verification(text.trim_end().to_string()))
    }
}

fn cmd_biject(json: bool, input: &str, from: Source, to: Target, sign: Sign, ones: Option<usize>) -> Outcome {
    let from = match from {
        Source::Auto if input.starts_with('(') => Source::Permutation,
        Source::Auto if input.chars().all(|c| c == '1' || c == '2') => Source::String,
        Source::Auto => Source::Path,
        f => f,
    };
    let string: BinaryString = match from {
        Source::String => input.parse().map_err(usage)?,
        Source::Path => input.parse::<Path>().map_err(usage)?.to_binary(sign),
        Source::Permutation => {
            let p: Permutation = input.parse().map_err(usage)?;
            let ones = ones.ok_or_else(|| Failure::Usage("--ones is required for a permutation".into()))?;
            if ones > p.len() {
                return Err(Failure::Usage(format!("--ones {ones} exceeds N = {}", p.len())));
            }
            p.coset_string(ones)
        }
        Source::Auto => unreachable!(),
    };
    let path = string.to_path(sign).map_err(usage)?;
    let views: Vec<(&str, serde_json::Value, String)> = vec![
        ("path", json!(path), path.to_string()),
        ("string", json!(string.to_string()), string.to_string()),
        ("link", json!(link_pattern(&path)), serde_json::to_string(&link_pattern(&path)).expect("json")),
        ("grassmannian", json!(grassmannian(&string).to_string()), grassmannian(&string).to_string()),
        ("longest", json!(longest_representative(&string).to_string()), longest_representative(&string).to_string()),
        ("tableau", json!(rs_first_tableau(&grassmannian(&string)).rows), {
            serde_json::to_string(&rs_first_tableau(&grassmannian(&string)).rows).expect("json")
        }),
    ];
    let wanted = |name: &str| match to {
        Target::All => true,
        Target::Path => name == "path",
        Target::String => name == "string",
        Target::Link => name == "link",
        Target::Grassmannian => name == "grassmannian",
        Target::Longest => name == "longest",
        Target::Tableau => name == "tableau",
    };
    let views: Vec<_> = views.into_iter().filter(|v| wanted(v.0)).collect();
    if json {
        let map: serde_json::Map<_, _> = views.into_iter().map(|(k, v, _)| (k.to_string(), v)).collect();
        return Ok(format!("{}\n", serde_json::Value::Object(map)));
    }
    if to != Target::All {
        return Ok(format!("{}\n", views[0].2));
    }
    Ok(views.iter().map(|(k, _, s)| format!("{k}: {s}\n")).collect())
}

fn cmd_tree(json: bool, lower: &str, upper: &str, sign: Sign, labellings: bool) -> Outcome {
    let (lo, hi) = (parse_path(lower, sign)?, parse_path(upper, sign)?);
    let tree = build_tree(&lo, &hi).map_err(usage)?;
    let all = enumerate_labellings(&tree);
    if json {
        let mut v = json!({"tree": tree.to_json(), "labellings": all.len()});
        if labellings {
            v["labellings"] = json!(all);
        }
        return Ok(format!("{}\n", serde_json::to_string_pretty(&v).expect("json")));
    }
    let mut out = tree.render_text(None);
    out.push_str(&format!("{} labellings\n", all.len()));
    if labellings {
        for nu in &all {
            out.push('\n');
            out.push_str(&tree.render_text(Some(nu)));
        }
    }
    Ok(out)
}

fn cmd_config_render(
    json: bool,
    lower: &str,
    upper: &str,
    sign: Sign,
    rule: RuleArg,
    labelling: Option<&str>,
    limit: Option<usize>,
) -> Outcome {
    let (lo, hi) = (parse_path(lower, sign)?, parse_path(upper, sign)?);
    let configs = match labelling {
        Some(text) => {
            let labels = text
                .split(',')
                .filter(|s| !s.trim().is_empty())
                .map(|s| s.trim().parse::<usize>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|e| Failure::Usage(format!("labelling: {e}")))?;
            vec![labelling_to_config(&lo, &hi, &Labelling { labels }).map_err(usage)?]
        }
        None => {
            let rule = match rule {
                RuleArg::I => Rule::I,
                RuleArg::Ii => Rule::II,
            };
            configurations(&lo, &hi, rule).map_err(usage)?
        }
    };
    let shown = &configs[..configs.len().min(limit.unwrap_or(usize::MAX))];
    if json {
        return Ok(format!("{}\n", serde_json::to_string(shown).expect("json")));
    }
    let mut out = String::new();
    for (i, c) in shown.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        out.push_str(&format!("configuration {} of {}: {} strips\n", i + 1, configs.len(), c.strip_count()));
        out.push_str(&c.render_ascii());
    }
    if configs.is_empty() {
        out.push_str("no configurations\n");
    }
    Ok(out)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = Limits::load(cli.config.as_ref()).and_then(|limits| match &cli.command {
        Command::Poly { sign, method, alpha, beta } => cmd_poly(cli.json, *sign, method, alpha, beta),
        Command::Table { n, k, sign, method, format, limit, output } => {
            cmd_table(&limits, *n, *k, *sign, method, format, *limit, output.as_ref())
        }
        Command::Verify { suite, n, k, limit } => cmd_verify(cli.json, suite, *n, *k, *limit),
        Command::Biject { input, from, to, sign, ones } => cmd_biject(cli.json, input, *from, *to, *sign, *ones),
        Command::Tree { lower, upper, sign, labellings } => cmd_tree(cli.json, lower, upper, *sign, *labellings),
        Command::ConfigRender { lower, upper, sign, rule, labelling, limit } => {
            cmd_config_render(cli.json, lower, upper, *sign, *rule, labelling.as_deref(), *limit)
        }
    });
    match outcome {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(Failure::Verification(msg)) => {
            println!("{msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
