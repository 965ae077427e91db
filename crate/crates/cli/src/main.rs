use std::fmt::Write as _;
use std::io::Write as _;
use std::process::ExitCode;

use adic_speedup::dimgroup::{
    check_axioms, gate, gate_both_ways, gate_conditions, infinitesimals, states,
    strict_plane_example, GateOutcome, OrderedGroup, SearchBounds,
};
use adic_speedup::speedup::{
    construct_bijection_with, construct_injection, power_speedup, verify_speedup, ImageExpectation,
    SpeedupMap,
};
use adic_speedup::towers::{refine_tower, tower_over_base};
use adic_speedup::{ClopenSet, Error, InvariantMeasure, OdometerSystem, Rational, Report};
use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

const SCHEMA: &str = "adicspeed/1";

#[derive(Parser)]
#[command(
    name = "adicspeed",
    version,
    about = "Speedups of adic odometers and their dimension groups"
)]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Seed for sampled property checks.
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Structured,
}

#[derive(Subcommand)]
enum Command {
    /// Kakutani-Rokhlin tower over a clopen base.
    Tower(TowerArgs),
    #[command(subcommand)]
    Speedup(SpeedupCmd),
    #[command(subcommand)]
    Dimgroup(DimgroupCmd),
}

#[derive(Args)]
struct System {
    /// Comma-separated bases, one period, e.g. `2` or `2,3`.
    #[arg(long, default_value = "2")]
    base: String,
}

impl System {
    fn measure(&self) -> Result<InvariantMeasure, Error> {
        Ok(InvariantMeasure::new(&OdometerSystem::parse(&self.base)?))
    }
}

#[derive(Args)]
struct TowerArgs {
    #[command(flatten)]
    system: System,
    /// Base of the tower: `whole` or comma-separated words of one length.
    #[arg(long)]
    set: String,
    /// Also refine against all cylinders of this depth.
    #[arg(long)]
    depth: Option<u32>,
}

#[derive(Subcommand)]
enum SpeedupCmd {
    /// `T^k` on the whole space.
    Power {
        #[command(flatten)]
        system: System,
        #[arg(short)]
        k: u64,
        /// Depth to which minimality and the map are checked.
        #[arg(long, default_value_t = 12)]
        depth: u32,
    },
    /// Injection of `A` into `B` for `μ(A) < μ(B)`.
    Construct {
        #[command(flatten)]
        system: System,
        #[arg(long = "A")]
        a: String,
        #[arg(long = "B")]
        b: String,
    },
    /// Truncated bijection of `A` onto `B` for `μ(A) = μ(B)`.
    Bijection {
        #[command(flatten)]
        system: System,
        #[arg(long = "A")]
        a: String,
        #[arg(long = "B")]
        b: String,
        #[arg(long, default_value_t = 3)]
        stages: usize,
        #[arg(long, default_value_t = 1)]
        depth_step: u32,
    },
    /// Checks a map given as `<words> -> jump <k>` lines (`;` also separates), or `@file`.
    Verify {
        #[command(flatten)]
        system: System,
        #[arg(long)]
        map: String,
        #[arg(long)]
        domain: String,
        #[arg(long)]
        image: Option<String>,
        /// Depth of the pointwise check; defaults to the map's depth.
        #[arg(long)]
        depth: Option<u32>,
    },
}

#[derive(Subcommand)]
enum DimgroupCmd {
    /// Extreme states.
    States {
        #[arg(long)]
        spec: String,
    },
    /// Infinitesimal subgroup.
    Inf {
        #[arg(long)]
        spec: String,
    },
    /// Sampled dimension-group axioms and simplicity.
    Axioms {
        #[arg(long)]
        spec: String,
        #[arg(long, default_value_t = 500)]
        budget: usize,
    },
    /// Surjective unital positive homomorphism onto the positive cone.
    Gate {
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
    },
    /// Gates in both directions and the isomorphism verdict.
    Both {
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
    },
    /// Z[1/2]² with the strict cone against Z[1/2].
    #[command(name = "example6")]
    StrictPlaneExample,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Tower(_) => "tower",
            Command::Speedup(SpeedupCmd::Power { .. }) => "speedup power",
            Command::Speedup(SpeedupCmd::Construct { .. }) => "speedup construct",
            Command::Speedup(SpeedupCmd::Bijection { .. }) => "speedup bijection",
            Command::Speedup(SpeedupCmd::Verify { .. }) => "speedup verify",
            Command::Dimgroup(DimgroupCmd::States { .. }) => "dimgroup states",
            Command::Dimgroup(DimgroupCmd::Inf { .. }) => "dimgroup inf",
            Command::Dimgroup(DimgroupCmd::Axioms { .. }) => "dimgroup axioms",
            Command::Dimgroup(DimgroupCmd::Gate { .. }) => "dimgroup gate",
            Command::Dimgroup(DimgroupCmd::Both { .. }) => "dimgroup both",
            Command::Dimgroup(DimgroupCmd::StrictPlaneExample) => "dimgroup example6",
        }
    }
}

/// What a command produced: human text, a structured payload, and whether every check held.
struct Outcome {
    text: String,
    data: Value,
    ok: bool,
}

fn report_json(r: &Report) -> Value {
    serde_json::to_value(r).expect("report serializes")
}

fn parse_set(system: &OdometerSystem, text: &str) -> Result<ClopenSet, Error> {
    ClopenSet::parse(system, text)
}

fn run(cli: &Cli) -> Result<Outcome, Error> {
    match &cli.command {
        Command::Tower(args) => tower(args),
        Command::Speedup(cmd) => speedup(cmd),
        Command::Dimgroup(cmd) => dimgroup(cmd, cli.seed),
    }
}

fn tower(args: &TowerArgs) -> Result<Outcome, Error> {
    let m = args.system.measure()?;
    let base = parse_set(m.system(), &args.set)?;
    let mut p = tower_over_base(&m, &base)?;
    if let Some(d) = args.depth {
        let cells: Vec<ClopenSet> = ClopenSet::whole(m.system())
            .refine(d)?
            .iter()
            .map(|w| ClopenSet::cylinder(m.system(), w))
            .collect::<Result<_, _>>()?;
        p = refine_tower(&p, &cells)?;
    }
    let report = p.check()?;
    let mut text = format!("{}\n{p}", p.summary());
    write!(text, "{report}").unwrap();
    Ok(Outcome {
        data: json!({
            "system": m.system().to_string(),
            "summary": p.summary(),
            "tower": p,
            "report": report_json(&report),
        }),
        ok: report.all_passed(),
        text,
    })
}

fn read_map(system: &OdometerSystem, spec: &str) -> Result<SpeedupMap, Error> {
    let text = match spec.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path)
            .map_err(|e| Error::Parse(format!("cannot read {path}: {e}")))?,
        None => spec.replace(';', "\n"),
    };
    SpeedupMap::parse(system, &text)
}

fn map_outcome(map: &SpeedupMap, report: Report, extra: Value) -> Outcome {
    let mut text = map.to_string();
    if !text.ends_with('\n') {
        text.push('\n');
    }
    write!(text, "{report}").unwrap();
    let mut data = json!({
        "system": map.system().to_string(),
        "map": map,
        "report": report_json(&report),
    });
    if let (Value::Object(d), Value::Object(e)) = (&mut data, extra) {
        d.extend(e);
    }
    Outcome {
        ok: report.all_passed(),
        text,
        data,
    }
}

fn speedup(cmd: &SpeedupCmd) -> Result<Outcome, Error> {
    match cmd {
        SpeedupCmd::Power { system, k, depth } => {
            let m = system.measure()?;
            let map = power_speedup(&m, *k, *depth)?;
            let whole = ClopenSet::whole(m.system());
            let report = verify_speedup(
                &map,
                &whole,
                &ImageExpectation::Exact(whole.clone()),
                Some(*depth),
            )?;
            Ok(map_outcome(&map, report, json!({ "k": k, "depth": depth })))
        }
        SpeedupCmd::Construct { system, a, b } => {
            let m = system.measure()?;
            let (a, b) = (parse_set(m.system(), a)?, parse_set(m.system(), b)?);
            let inj = construct_injection(&m, &a, &b)?;
            let depth = inj.map.depth().max(a.depth()).max(b.depth());
            let report = verify_speedup(&inj.map, &a, &ImageExpectation::Within(b), Some(depth))?;
            let mut out = map_outcome(
                &inj.map,
                report,
                json!({
                    "tower_depth": inj.tower_depth,
                    "tower": inj.tower.summary(),
                    "assignments": inj.assignments,
                    "origins": inj.origins,
                }),
            );
            out.text = format!(
                "tower over depth-{} cylinder: {}\n{}",
                inj.tower_depth,
                inj.tower.summary(),
                out.text
            );
            Ok(out)
        }
        SpeedupCmd::Bijection {
            system,
            a,
            b,
            stages,
            depth_step,
        } => {
            let m = system.measure()?;
            let (a, b) = (parse_set(m.system(), a)?, parse_set(m.system(), b)?);
            let bij = construct_bijection_with(&m, &a, &b, *stages, *depth_step)?;
            let res = &bij.ledger.residual;
            let domain = a.difference(&res.a)?;
            let image = b.difference(&res.b)?;
            let depth = bij.map.depth().max(domain.depth()).max(image.depth());
            let mut report = verify_speedup(
                &bij.map,
                &domain,
                &ImageExpectation::Exact(image),
                Some(depth),
            )?;
            let two = Rational::from_integer(2);
            let records = &bij.ledger.records;
            let halving = records
                .windows(2)
                .all(|w| w[1].measure_a < w[0].measure_a / two);
            let mut balanced = true;
            let mut ledger = String::new();
            for r in records {
                balanced &= r.measure_a == r.measure_b && r.domain_measure == r.image_measure;
                writeln!(
                    ledger,
                    "stage {}: μ(A)={} μ(B)={} mapped={}",
                    r.stage, r.measure_a, r.measure_b, r.domain_measure
                )
                .unwrap();
            }
            report.push(
                "ledger_halving",
                halving,
                "μ(A_{k+1}) < μ(A_k)/2 at every stage",
            );
            report.push("ledger_balanced", balanced, String::new());
            let bound = a.measure() / Rational::from_integer(1i128 << (*stages).min(120));
            report.push(
                "residual_bound",
                res.a.measure() < bound,
                format!("μ(residual) = {} < {bound}", res.a.measure()),
            );
            writeln!(
                ledger,
                "residual: x={} y={} n={} (y = T^n x)",
                res.x, res.y, res.n
            )
            .unwrap();
            let mut out = map_outcome(&bij.map, report, json!({ "ledger": bij.ledger }));
            out.text = format!("{ledger}{}", out.text);
            Ok(out)
        }
        SpeedupCmd::Verify {
            system,
            map,
            domain,
            image,
            depth,
        } => {
            let m = system.measure()?;
            let map = read_map(m.system(), map)?;
            let domain = parse_set(m.system(), domain)?;
            let expect = match image {
                Some(i) => ImageExpectation::Exact(parse_set(m.system(), i)?),
                None => ImageExpectation::None,
            };
            let depth = depth.unwrap_or(map.depth().max(domain.depth()));
            let report = verify_speedup(&map, &domain, &expect, Some(depth))?;
            Ok(map_outcome(&map, report, json!({})))
        }
    }
}

fn group(spec: &str) -> Result<OrderedGroup, Error> {
    OrderedGroup::parse(spec)
}

fn dimgroup(cmd: &DimgroupCmd, seed: u64) -> Result<Outcome, Error> {
    match cmd {
        DimgroupCmd::States { spec } => {
            let g = group(spec)?;
            let st = states(&g);
            let mut text = format!(
                "{} extreme state{}\n",
                st.len(),
                if st.len() == 1 { "" } else { "s" }
            );
            for s in &st {
                writeln!(text, "{s}").unwrap();
            }
            Ok(Outcome {
                text,
                data: json!({ "group": g, "count": st.len(), "states": st }),
                ok: true,
            })
        }
        DimgroupCmd::Inf { spec } => {
            let g = group(spec)?;
            let inf = infinitesimals(&g);
            Ok(Outcome {
                text: format!("Inf = {inf}\n"),
                data: json!({ "group": g, "trivial": inf.is_trivial(), "infinitesimals": inf.to_string() }),
                ok: true,
            })
        }
        DimgroupCmd::Axioms { spec, budget } => {
            let g = group(spec)?;
            let report = check_axioms(&g, *budget, seed);
            let ok = report
                .entries
                .iter()
                .filter(|e| e.name != "simple")
                .all(|e| e.passed);
            Ok(Outcome {
                text: report.to_string(),
                data: json!({ "group": g, "seed": seed, "report": report_json(&report) }),
                ok,
            })
        }
        DimgroupCmd::Gate { from, to } => {
            let (g1, g2) = (group(from)?, group(to)?);
            let outcome = gate(&g1, &g2);
            let mut text = format!("{outcome}\n");
            let mut data = json!({ "from": g1, "to": g2, "outcome": outcome });
            let mut ok = true;
            if let GateOutcome::Found(h) = &outcome {
                let r = gate_conditions(h, &g1, &g2, &SearchBounds::default());
                write!(text, "{r}").unwrap();
                ok = r.all_passed();
                data["report"] = report_json(&r);
            }
            Ok(Outcome { text, data, ok })
        }
        DimgroupCmd::Both { from, to } => {
            let (g1, g2) = (group(from)?, group(to)?);
            let both = gate_both_ways(&g1, &g2);
            Ok(Outcome {
                text: format!(
                    "forward: {}\nreverse: {}\n{}\n",
                    both.forward, both.reverse, both.isomorphism
                ),
                data: json!({ "from": g1, "to": g2, "result": both }),
                ok: true,
            })
        }
        DimgroupCmd::StrictPlaneExample => {
            let e = strict_plane_example();
            let report = e.report();
            let text = format!(
                "group: {}\ntarget: {}\n{report}{}\n",
                e.group,
                e.target,
                e.conclusion()
            );
            Ok(Outcome {
                data: json!({
                    "example": e,
                    "report": report_json(&report),
                    "conclusion": e.conclusion(),
                }),
                ok: e.passed(),
                text,
            })
        }
    }
}

/// Writes to stdout, ignoring a reader that went away.
fn emit(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    let command = cli.command.name();
    let structured = cli.format == Format::Structured;
    match run(&cli) {
        Ok(out) => {
            if structured {
                let mut doc = json!({ "schema": SCHEMA, "command": command, "ok": out.ok });
                if let (Value::Object(d), Value::Object(p)) = (&mut doc, out.data) {
                    d.extend(p);
                }
                emit(&format!(
                    "{}\n",
                    serde_json::to_string_pretty(&doc).expect("json")
                ));
            } else {
                emit(&out.text);
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            }
        }
        Err(e) => {
            if structured {
                let doc = json!({
                    "schema": SCHEMA,
                    "command": command,
                    "ok": false,
                    "error": e.to_string(),
                });
                emit(&format!(
                    "{}\n",
                    serde_json::to_string_pretty(&doc).expect("json")
                ));
            } else {
                eprintln!("error: {e}");
            }
            ExitCode::from(1)
        }
    }
}
