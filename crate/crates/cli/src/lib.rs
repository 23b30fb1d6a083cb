//! Command-line front end for `adjminor`.
//!
//! [`run_command`] does all the work and returns `(exit code, stdout, stderr)`
//! so the binary stays a thin wrapper and tests can drive commands in-process.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use adjminor::classify::{
    has_quadratic_gb_with_cap, primality, radical_verdict, MarkChoice, PrimalityEvidence,
    QuadraticCertificate, RadicalVerdict,
};
use adjminor::fiber::{
    bfs_fiber, random_walk, ConnectivityEvidence, ConnectivityOracle, ConnectivityStatus,
    ConnectivityVerdict, Table,
};
use adjminor::fixtures::{fixture, fixture_names};
use adjminor::format::{
    component_pretty, component_to_json, parse_configuration, parse_table, table_pretty,
    table_to_json, Labels,
};
use adjminor::grid::{
    classify_shape, component_graph, connected_components, detect_motifs, free_minors,
    is_chessboard, is_special, MotifKind,
};
use adjminor::groebner::{
    configuration_basis, configuration_generators, nonradical_witness_check, saturate,
    BinomialElement, Monomial, VariableRanking, DEFAULT_DEGREE_CAP, DEFAULT_SATURATION_CAP,
};
use adjminor::primes::{
    all_prime_components, minimal_primes, PrimeComponent, DEFAULT_ADMISSIBLE_CAP,
};
use adjminor::{Cell, Configuration, Error, UnitMinor};

/// Name of the environment variable holding default caps.
pub const CAPS_ENV: &str = "ADJMINOR_CAPS";

const EXIT_OK: i32 = 0;
const EXIT_USAGE: i32 = 1;
const EXIT_CAP: i32 = 2;
const EXIT_HYPOTHESIS: i32 = 3;
const EXIT_VERIFICATION: i32 = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Structured,
    Pretty,
}

#[derive(Parser, Debug)]
#[command(
    name = "adjminor",
    version,
    about = "Ideals of adjacent 2-minors: classification, minimal primes, Groebner bases and table connectivity",
    after_help = "Inputs: `@path` reads a file, `fixture:NAME` (or a bare fixture name) loads a bundled \
fixture, `-` reads stdin, anything else is the document itself.\n\
Caps: ADJMINOR_CAPS=\"admissible=N,degree=N,saturation=N,nodes=N,components=N\"; --cap overrides.\n\
Exit codes: 0 ok, 1 usage or parse error, 2 cap exceeded, 3 hypothesis not met, 4 verification failure."
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value = "structured", global = true)]
    format: Format,

    /// Use a bundled fixture as the configuration; positional inputs then
    /// start with the next argument.
    #[arg(long, global = true)]
    fixture: Option<String>,

    /// Print elapsed time to stderr.
    #[arg(long, global = true)]
    timing: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Structure, primality, quadratic Groebner basis and radicality.
    Classify {
        inputs: Vec<String>,
        /// Check the non-radicality witness with a Groebner computation.
        #[arg(long)]
        verify_witness: bool,
        /// Cap on components with a free mark choice.
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Minimal prime components (or all admissible components with --all).
    Primes {
        inputs: Vec<String>,
        #[arg(long)]
        all: bool,
        /// Cap on admissible sets.
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Irredundant decomposition of the radical (special configurations).
    Decompose {
        inputs: Vec<String>,
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Reduced lex Groebner basis of I(C).
    Gb {
        inputs: Vec<String>,
        /// Variable order, largest first: `r,c;r,c;...` covering V(C).
        #[arg(long)]
        ranking: Option<String>,
        /// Degree cap.
        #[arg(long)]
        cap: Option<u32>,
    },
    /// Membership of a binomial in I(C).
    Member {
        /// CONFIG BINOMIAL
        inputs: Vec<String>,
        #[arg(long)]
        cap: Option<u32>,
    },
    /// Generators of I(C) saturated at the product of all variables.
    Saturate {
        inputs: Vec<String>,
        #[arg(long)]
        cap: Option<u32>,
    },
    /// Whether two tables are connected by adjacent moves.
    Connect {
        /// CONFIG TABLE_A TABLE_B
        inputs: Vec<String>,
        /// Resolve undecided cases by exhaustive fiber search.
        #[arg(long)]
        oracle: bool,
        /// Node cap for the fiber search.
        #[arg(long)]
        cap: Option<usize>,
    },
    /// All tables reachable from a table.
    Fiber {
        /// CONFIG TABLE
        inputs: Vec<String>,
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Seeded random walk of adjacent moves.
    Walk {
        /// CONFIG TABLE
        inputs: Vec<String>,
        #[arg(long)]
        steps: u64,
        #[arg(long)]
        seed: u64,
    },
}

/// Failure carrying its exit code and one-line diagnostic.
struct Failure {
    code: i32,
    tag: &'static str,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::CapExceeded { .. } | Error::DegreeCapExceeded { .. } => EXIT_CAP,
            Error::NotSpecial | Error::NotConnected => EXIT_HYPOTHESIS,
            Error::VerificationFailed(_) | Error::CertificateVerificationFailed(_) => {
                EXIT_VERIFICATION
            }
            _ => EXIT_USAGE,
        };
        Failure {
            code,
            tag: e.tag(),
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        tag: "USAGE",
        message: message.into(),
    }
}

#[derive(Debug, Clone, Copy)]
struct Caps {
    admissible: usize,
    degree: u32,
    saturation: u32,
    nodes: usize,
    components: usize,
}

impl Caps {
    fn from_env(value: Option<&str>) -> Result<Caps, Failure> {
        let mut caps = Caps {
            admissible: DEFAULT_ADMISSIBLE_CAP,
            degree: DEFAULT_DEGREE_CAP,
            saturation: DEFAULT_SATURATION_CAP,
            nodes: adjminor::fiber::DEFAULT_NODE_CAP,
            components: adjminor::classify::DEFAULT_COMPONENT_CAP,
        };
        let Some(value) = value else {
            return Ok(caps);
        };
        for part in value.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (key, n) = part
                .split_once('=')
                .ok_or_else(|| usage(format!("{CAPS_ENV}: expected key=value, got {part:?}")))?;
            let n: usize = n
                .trim()
                .parse()
                .map_err(|_| usage(format!("{CAPS_ENV}: bad number in {part:?}")))?;
            match key.trim() {
                "admissible" => caps.admissible = n,
                "degree" => caps.degree = n as u32,
                "saturation" => caps.saturation = n as u32,
                "nodes" => caps.nodes = n,
                "components" => caps.components = n,
                other => return Err(usage(format!("{CAPS_ENV}: unknown cap {other:?}"))),
            }
        }
        Ok(caps)
    }
}

struct Input {
    config: Configuration,
    labels: Option<Labels>,
    name: Option<String>,
}

fn read_document(arg: &str, stdin: Option<&str>) -> Result<String, Failure> {
    if arg == "-" {
        return stdin
            .map(str::to_string)
            .ok_or_else(|| usage("`-` given but no stdin document"));
    }
    if let Some(path) = arg.strip_prefix('@') {
        return std::fs::read_to_string(path)
            .map_err(|e| usage(format!("cannot read {path}: {e}")));
    }
    Ok(arg.to_string())
}

fn load_fixture(name: &str) -> Result<Input, Failure> {
    let f = fixture(name)?;
    Ok(Input {
        config: f.config,
        labels: f.labels,
        name: Some(f.name),
    })
}

fn load_config(arg: &str, stdin: Option<&str>) -> Result<Input, Failure> {
    if let Some(name) = arg.strip_prefix("fixture:") {
        return load_fixture(name);
    }
    if fixture_names().iter().any(|n| n.eq_ignore_ascii_case(arg)) {
        return load_fixture(arg);
    }
    let text = read_document(arg, stdin)?;
    Ok(Input {
        config: parse_configuration(&text)?,
        labels: None,
        name: None,
    })
}

fn load_table(arg: &str, input: &Input, stdin: Option<&str>) -> Result<Table, Failure> {
    let text = read_document(arg, stdin)?;
    let t = parse_table(&text, input.labels.as_ref())?;
    t.check_support(&input.config)?;
    Ok(t)
}

/// Splits positional inputs into the configuration and `extra` further items.
fn split_inputs<'a>(
    fixture_flag: &Option<String>,
    inputs: &'a [String],
    extra: usize,
    stdin: Option<&str>,
) -> Result<(Input, &'a [String]), Failure> {
    let (input, rest) = match fixture_flag {
        Some(name) => (load_fixture(name)?, inputs),
        None => {
            let (first, rest) = inputs
                .split_first()
                .ok_or_else(|| usage("missing configuration argument"))?;
            (load_config(first, stdin)?, rest)
        }
    };
    if rest.len() != extra {
        return Err(usage(format!(
            "expected {extra} argument(s) after the configuration, got {}",
            rest.len()
        )));
    }
    Ok((input, rest))
}

fn cell_json(c: &Cell) -> Value {
    json!([c.row, c.col])
}

fn minors_json<'a, I: IntoIterator<Item = &'a UnitMinor>>(ms: I) -> Value {
    Value::Array(ms.into_iter().map(|m| cell_json(&m.anchor)).collect())
}

fn config_json(c: &Configuration) -> Value {
    json!({ "boxes": minors_json(c.iter()) })
}

fn show_binomial(b: &BinomialElement, labels: Option<&Labels>) -> String {
    match labels {
        Some(l) => l.binomial(b),
        None => b.to_string(),
    }
}

fn certificate_json(cert: &QuadraticCertificate) -> Value {
    json!({
        "marks": cert.marking.iter().map(|(m, ch)| json!({
            "box": cell_json(&m.anchor),
            "mark": match ch {
                MarkChoice::Diagonal => "diagonal",
                MarkChoice::AntiDiagonal => "anti-diagonal",
            },
        })).collect::<Vec<_>>(),
        "ranking": cert.ranking.cells().iter().map(cell_json).collect::<Vec<_>>(),
        "verified": cert.verified,
    })
}

fn verdict_json(v: &RadicalVerdict, labels: Option<&Labels>) -> Value {
    json!({
        "status": v.status.to_string(),
        "reason": v.reason,
        "witness": v.witness.as_ref().map(|w| show_binomial(w, labels)),
        "components": v.components.iter().map(|c| verdict_json(c, labels)).collect::<Vec<_>>(),
    })
}

fn evidence_json(e: &PrimalityEvidence) -> Value {
    match e {
        PrimalityEvidence::SharedEdge(a, b) => json!({
            "kind": "shared-edge",
            "boxes": [cell_json(&a.anchor), cell_json(&b.anchor)],
        }),
        PrimalityEvidence::FourCycle(nodes) => json!({
            "kind": "four-cycle",
            "components": nodes.iter().map(config_json).collect::<Vec<_>>(),
        }),
        PrimalityEvidence::ChessboardWithout4Cycle { components, links } => json!({
            "kind": "chessboard-without-4-cycle",
            "components": components,
            "links": links,
        }),
    }
}

struct Output {
    value: Value,
    pretty: String,
}

fn classify(input: &Input, caps: &Caps, verify_witness: bool) -> Result<Output, Failure> {
    let c = &input.config;
    let labels = input.labels.as_ref();
    let mut shapes = Vec::new();
    let mut pretty = String::new();
    for comp in connected_components(c) {
        let shape = classify_shape(&comp)?;
        shapes.push(json!({
            "boxes": minors_json(comp.iter()),
            "kind": format!("{:?}", shape.kind),
            "ordering": minors_json(shape.ordering.iter()),
            "endpoints": shape.endpoints.iter()
                .map(|(p, q)| json!([cell_json(p), cell_json(q)]))
                .collect::<Vec<_>>(),
        }));
        let _ = writeln!(pretty, "component {} boxes: {:?}", comp.len(), shape.kind);
    }
    let graph = component_graph(c);
    let motifs: Vec<Value> = detect_motifs(c)
        .iter()
        .map(|m| {
            json!({
                "kind": match m.kind {
                    MotifKind::Square => "square",
                    MotifKind::Pin => "pin",
                    MotifKind::Saddle => "saddle",
                },
                "boxes": m.anchors.iter().map(cell_json).collect::<Vec<_>>(),
            })
        })
        .collect();
    let prime = primality(c);
    let cert = has_quadratic_gb_with_cap(c, caps.components)?;
    let verdict = radical_verdict(c)?;
    let witness_verified = match (&verdict.witness, verify_witness) {
        (Some(w), true) => {
            let ok = nonradical_witness_check(c, w, caps.degree)?;
            if !ok {
                return Err(
                    Error::VerificationFailed(format!("witness {w} did not verify")).into(),
                );
            }
            Some(true)
        }
        _ => None,
    };
    let chessboard = is_chessboard(c);
    let special = is_special(c);
    let value = json!({
        "configuration": config_json(c),
        "fixture": input.name,
        "vertices": c.vertex_set().len(),
        "components": shapes,
        "component_graph": {
            "nodes": graph.node_count(),
            "links": graph.links.iter()
                .map(|(i, j, v)| json!([i, j, cell_json(v)]))
                .collect::<Vec<_>>(),
        },
        "chessboard": chessboard,
        "special": special,
        "motifs": motifs,
        "free_minors": minors_json(free_minors(c).iter()),
        "prime": prime.prime,
        "primality_evidence": evidence_json(&prime.evidence),
        "quadratic_gb": cert.is_some(),
        "certificate": cert.as_ref().map(certificate_json),
        "radical": verdict_json(&verdict, labels),
        "witness_verified": witness_verified,
    });
    let _ = writeln!(
        pretty,
        "boxes: {}  vertices: {}",
        c.len(),
        c.vertex_set().len()
    );
    let _ = writeln!(pretty, "chessboard: {chessboard}  special: {special}");
    let _ = writeln!(pretty, "prime: {}", prime.prime);
    let _ = writeln!(pretty, "quadratic Groebner basis: {}", cert.is_some());
    let _ = write!(pretty, "radical: {} ({})", verdict.status, verdict.reason);
    if let Some(w) = &verdict.witness {
        let _ = write!(pretty, "; witness {}", show_binomial(w, labels));
    }
    pretty.push('\n');
    Ok(Output { value, pretty })
}

fn components_output(
    input: &Input,
    comps: &[PrimeComponent],
    header: &str,
    joiner: &str,
) -> Output {
    let labels = input.labels.clone().unwrap_or_default();
    let items: Vec<Value> = comps
        .iter()
        .map(|p| {
            let mut v = component_to_json(p);
            v["pretty"] = Value::String(component_pretty(p, &labels));
            v
        })
        .collect();
    let pretty = format!(
        "{header}{}\n",
        comps
            .iter()
            .map(|p| component_pretty(p, &labels))
            .collect::<Vec<_>>()
            .join(joiner)
    );
    Output {
        value: json!({
            "configuration": config_json(&input.config),
            "count": comps.len(),
            "components": items,
        }),
        pretty,
    }
}

fn parse_ranking(text: &str, config: &Configuration) -> Result<VariableRanking, Failure> {
    let mut order = Vec::new();
    for part in text.split(';').map(str::trim).filter(|p| !p.is_empty()) {
        let (r, c) = part
            .split_once(',')
            .ok_or_else(|| usage(format!("ranking entry {part:?} is not r,c")))?;
        let r: i64 = r
            .trim()
            .parse()
            .map_err(|_| usage(format!("bad row in {part:?}")))?;
        let c: i64 = c
            .trim()
            .parse()
            .map_err(|_| usage(format!("bad column in {part:?}")))?;
        order.push(Cell::from_signed(r, c)?);
    }
    let got: BTreeSet<Cell> = order.iter().copied().collect();
    if got != config.vertex_set() {
        return Err(usage(
            "ranking must list every vertex of the configuration exactly once",
        ));
    }
    Ok(VariableRanking::new(order)?)
}

fn parse_binomial(text: &str, labels: Option<&Labels>) -> Result<BinomialElement, Failure> {
    match text.parse::<BinomialElement>() {
        Ok(b) => Ok(b),
        Err(e) => {
            let Some(labels) = labels else {
                return Err(e.into());
            };
            let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
            let word = |w: &str| -> Result<Monomial, Failure> {
                w.chars()
                    .map(|ch| {
                        labels
                            .cell(&ch.to_string())
                            .ok_or_else(|| usage(format!("unknown label {ch:?} in {text:?}")))
                    })
                    .collect::<Result<Vec<_>, _>>()
                    .map(Monomial::from_cells)
            };
            match compact.split_once('-') {
                Some((l, r)) => Ok(BinomialElement::binomial(word(l)?, word(r)?)),
                None => Ok(BinomialElement::monomial(word(&compact)?)),
            }
        }
    }
}

fn connectivity_json(v: &ConnectivityVerdict) -> Value {
    let status = match v.status {
        ConnectivityStatus::Connected => "Connected",
        ConnectivityStatus::Disconnected => "Disconnected",
        ConnectivityStatus::Unknown => "Unknown",
    };
    let evidence = match &v.evidence {
        ConnectivityEvidence::FailingComponent(w) => json!({
            "kind": "failing-component",
            "w": w.iter().map(cell_json).collect::<Vec<_>>(),
        }),
        ConnectivityEvidence::CriterionRadical => json!({ "kind": "criterion-radical" }),
        ConnectivityEvidence::RadicalityUnconfirmed(s) => json!({
            "kind": "radicality-unconfirmed",
            "radical": s.to_string(),
        }),
        ConnectivityEvidence::Search { explored } => json!({
            "kind": "search",
            "explored": explored,
        }),
    };
    json!({ "status": status, "evidence": evidence })
}

fn execute(cli: &Cli, caps: &Caps, stdin: Option<&str>) -> Result<Output, Failure> {
    match &cli.command {
        Command::Classify {
            inputs,
            verify_witness,
            cap,
        } => {
            let (input, _) = split_inputs(&cli.fixture, inputs, 0, stdin)?;
            let caps = Caps {
                components: cap.unwrap_or(caps.components),
                ..*caps
            };
            classify(&input, &caps, *verify_witness)
        }
        Command::Primes { inputs, all, cap } => {
            let (input, _) = split_inputs(&cli.fixture, inputs, 0, stdin)?;
            let cap = cap.unwrap_or(caps.admissible);
            let comps = if *all {
                all_prime_components(&input.config, cap)?
            } else {
                minimal_primes(&input.config, cap)?
            };
            Ok(components_output(&input, &comps, "", "\n"))
        }
        Command::Decompose { inputs, cap } => {
            let (input, _) = split_inputs(&cli.fixture, inputs, 0, stdin)?;
            let comps = minimal_primes(&input.config, cap.unwrap_or(caps.admissible))?;
            Ok(components_output(&input, &comps, "sqrt I(C) = ", " ∩ "))
        }
        Command::Gb {
            inputs,
            ranking,
            cap,
        } => {
            let (input, _) = split_inputs(&cli.fixture, inputs, 0, stdin)?;
            let r = match ranking {
                Some(text) => parse_ranking(text, &input.config)?,
                None => VariableRanking::for_configuration(&input.config),
            };
            let gb = configuration_basis(&input.config, &r, cap.unwrap_or(caps.degree))?;
            let basis: Vec<String> = gb.elements().iter().map(|e| e.to_string()).collect();
            Ok(Output {
                pretty: basis.iter().map(|b| format!("{b}\n")).collect(),
                value: json!({
                    "ranking": r.cells().iter().map(cell_json).collect::<Vec<_>>(),
                    "size": basis.len(),
                    "max_degree": gb.max_degree(),
                    "basis": basis,
                }),
            })
        }
        Command::Member { inputs, cap } => {
            let (input, rest) = split_inputs(&cli.fixture, inputs, 1, stdin)?;
            let f = parse_binomial(&rest[0], input.labels.as_ref())?;
            let r = VariableRanking::row_major(
                input.config.vertex_set().into_iter().chain(f.variables()),
            );
            let gb = configuration_basis(&input.config, &r, cap.unwrap_or(caps.degree))?;
            let nf = gb.normal_form(&f)?;
            let is_member = nf.is_none();
            Ok(Output {
                pretty: format!(
                    "{}: {}\n",
                    f,
                    if is_member { "member" } else { "not a member" }
                ),
                value: json!({
                    "binomial": f.to_string(),
                    "member": is_member,
                    "normal_form": nf.map(|b| b.to_string()),
                }),
            })
        }
        Command::Saturate { inputs, cap } => {
            let (input, _) = split_inputs(&cli.fixture, inputs, 0, stdin)?;
            let r = VariableRanking::for_configuration(&input.config);
            let sat = saturate(
                &configuration_generators(&input.config),
                &r,
                cap.unwrap_or(caps.saturation),
            )?;
            let gens: Vec<String> = sat.iter().map(|e| e.to_string()).collect();
            Ok(Output {
                pretty: gens.iter().map(|b| format!("{b}\n")).collect(),
                value: json!({ "size": gens.len(), "generators": gens }),
            })
        }
        Command::Connect {
            inputs,
            oracle,
            cap,
        } => {
            let (input, rest) = split_inputs(&cli.fixture, inputs, 2, stdin)?;
            let a = load_table(&rest[0], &input, stdin)?;
            let b = load_table(&rest[1], &input, stdin)?;
            let o = ConnectivityOracle::with_cap(&input.config, caps.admissible)?;
            let fallback = oracle.then_some(cap.unwrap_or(caps.nodes));
            let v = o.decide(&a, &b, fallback)?;
            let value = connectivity_json(&v);
            Ok(Output {
                pretty: format!("{}\n", value["status"].as_str().unwrap_or_default()),
                value,
            })
        }
        Command::Fiber { inputs, cap } => {
            let (input, rest) = split_inputs(&cli.fixture, inputs, 1, stdin)?;
            let t = load_table(&rest[0], &input, stdin)?;
            let fiber = bfs_fiber(&input.config, &t, cap.unwrap_or(caps.nodes))?;
            let pretty = fiber
                .iter()
                .map(|t| table_pretty(t, &input.config))
                .collect::<Vec<_>>()
                .join("\n");
            Ok(Output {
                value: json!({
                    "size": fiber.len(),
                    "tables": fiber.iter().map(table_to_json).collect::<Vec<_>>(),
                }),
                pretty,
            })
        }
        Command::Walk {
            inputs,
            steps,
            seed,
        } => {
            let (input, rest) = split_inputs(&cli.fixture, inputs, 1, stdin)?;
            let t = load_table(&rest[0], &input, stdin)?;
            let end = random_walk(&input.config, &t, *steps, *seed)?;
            Ok(Output {
                pretty: table_pretty(&end, &input.config),
                value: json!({
                    "steps": steps,
                    "seed": seed,
                    "table": table_to_json(&end),
                }),
            })
        }
    }
}

/// Runs one command with the caps environment variable read from the process.
pub fn run_command(argv: &[String], stdin: Option<&str>) -> (i32, String, String) {
    let env = std::env::var(CAPS_ENV).ok();
    run_command_with_env(argv, stdin, env.as_deref())
}

/// As [`run_command`], with the caps variable passed explicitly.
pub fn run_command_with_env(
    argv: &[String],
    stdin: Option<&str>,
    caps_env: Option<&str>,
) -> (i32, String, String) {
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    (EXIT_OK, text, String::new())
                }
                _ => {
                    let first = text
                        .lines()
                        .next()
                        .unwrap_or("invalid arguments")
                        .to_string();
                    (EXIT_USAGE, String::new(), format!("USAGE: {first}\n"))
                }
            };
        }
    };
    let start = Instant::now();
    let result = Caps::from_env(caps_env).and_then(|caps| execute(&cli, &caps, stdin));
    let mut stderr = String::new();
    let (code, stdout) = match result {
        Ok(out) => {
            let stdout = match cli.format {
                Format::Structured => {
                    let mut s = serde_json::to_string_pretty(&out.value).expect("json");
                    s.push('\n');
                    s
                }
                Format::Pretty => out.pretty,
            };
            (EXIT_OK, stdout)
        }
        Err(f) => {
            let _ = writeln!(stderr, "{}: {}", f.tag, f.message);
            (f.code, String::new())
        }
    };
    if cli.timing {
        let _ = writeln!(stderr, "elapsed: {:.3}s", start.elapsed().as_secs_f64());
    }
    (code, stdout, stderr)
}
