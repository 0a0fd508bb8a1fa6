//! Command-line front end for `natperm`.
//!
//! [`run`] takes the full argument vector and two writers, so the binary and
//! the tests drive exactly the same code. Exit codes: 0 success, 1 bad input,
//! 2 fuel ran out or a carry stayed unresolved, 3 a required inverse does not
//! exist.

pub mod spec;

use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use natperm::rotation::{digits_to_string, equidistribution_stat, orbit};
use natperm::sets::{bits_to_string, parse_set_spec, TailMachine};
use natperm::{cycle_decomposition, dist, Error, MetricValue, Permutation, Rearrangement, DEFAULT_FUEL};
use serde_json::{json, Value};

use crate::spec::{parse_list, parse_permutation, parse_point, parse_range};

#[derive(Parser, Debug)]
#[command(name = "natperm", version, about = "Evaluate rearrangement permutations of the natural numbers")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// σ_S(x) for x in the range
    Eval {
        #[arg(long)]
        set: String,
        #[arg(long)]
        points: String,
        #[arg(long, default_value_t = DEFAULT_FUEL)]
        fuel: u64,
    },
    /// σ_S⁻¹(y) for y in the range
    Inverse {
        #[arg(long)]
        set: String,
        #[arg(long)]
        points: String,
        #[arg(long, default_value_t = DEFAULT_FUEL)]
        fuel: u64,
    },
    /// Consecutive cycles of σ_S on [0, bound]
    Cycles {
        #[arg(long)]
        set: String,
        #[arg(long)]
        bound: u64,
    },
    /// (lhs ∘ rhs)(x) for x in the range
    Compose {
        #[arg(long)]
        lhs: String,
        #[arg(long)]
        rhs: String,
        #[arg(long)]
        points: String,
        #[arg(long, default_value_t = DEFAULT_FUEL)]
        fuel: u64,
    },
    /// d(lhs, rhs) scanned through the given depth
    Metric {
        #[arg(long)]
        lhs: String,
        #[arg(long)]
        rhs: String,
        #[arg(long)]
        depth: u64,
        #[arg(long, default_value_t = DEFAULT_FUEL)]
        fuel: u64,
    },
    /// Characteristic prefix of lhs ⊕ rhs
    Xor {
        #[arg(long)]
        lhs: String,
        #[arg(long)]
        rhs: String,
        #[arg(long)]
        prefix: u64,
    },
    /// Characteristic prefix of perm(set)
    Image {
        #[arg(long)]
        perm: String,
        #[arg(long)]
        set: String,
        #[arg(long)]
        prefix: u64,
        #[arg(long, default_value_t = DEFAULT_FUEL)]
        fuel: u64,
    },
    /// Fraction of members among the first `prefix` naturals
    Density {
        #[arg(long)]
        set: String,
        #[arg(long)]
        prefix: u64,
    },
    /// Orbit of p0 under x ↦ (x + beta) mod 1
    Orbit {
        #[arg(long)]
        p0: String,
        #[arg(long)]
        beta: String,
        #[arg(long)]
        count: usize,
        #[arg(long)]
        digits: usize,
        #[arg(long, default_value_t = DEFAULT_FUEL as usize)]
        fuel: usize,
        /// Also report the equidistribution statistic over this many bins
        #[arg(long)]
        bins: Option<u64>,
    },
    /// Run the tail-set machine on a unary input
    TmTail {
        #[arg(long)]
        boundary: u64,
        #[arg(long, default_value = "")]
        finite: String,
        #[arg(long)]
        input: u64,
    },
}

/// Output of one command: text lines and the equivalent JSON document.
struct Report {
    text: String,
    json: Value,
}

/// Runs one invocation. `argv[0]` is the program name.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    match execute(cli.command) {
        Ok(report) => {
            let written = match cli.format {
                Format::Text => writeln!(out, "{}", report.text),
                Format::Json => writeln!(out, "{}", render_json(&report.json)),
            };
            i32::from(written.is_err())
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

/// Compact JSON with keys in sorted order.
pub fn render_json(value: &Value) -> String {
    serde_json::to_string(value).expect("values built from JSON types serialize")
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::FuelExhausted { .. } | Error::Unresolved { .. } => 2,
        Error::NoInverse | Error::NotOnto { .. } => 3,
        _ => 1,
    }
}

fn execute(command: Command) -> natperm::Result<Report> {
    match command {
        Command::Eval { set, points, fuel } => {
            let r = Rearrangement::new(parse_set_spec(&set)?).with_fuel(fuel);
            let values: Vec<u64> = parse_range(&points)?.map(|x| r.apply(x)).collect();
            Ok(values_report("eval", &set, &points, values))
        }
        Command::Inverse { set, points, fuel } => {
            let r = Rearrangement::new(parse_set_spec(&set)?).with_fuel(fuel);
            let values = parse_range(&points)?
                .map(|y| r.apply_inverse(y))
                .collect::<natperm::Result<Vec<u64>>>()?;
            Ok(values_report("inverse", &set, &points, values))
        }
        Command::Cycles { set, bound } => {
            let dec = cycle_decomposition(&parse_set_spec(&set)?, bound);
            let cycles: Vec<Value> = dec.cycles.iter().map(|c| json!([c.start, c.end])).collect();
            Ok(Report {
                text: dec.to_string(),
                json: json!({
                    "verb": "cycles",
                    "set": set,
                    "bound": bound,
                    "cycles": cycles,
                    "unresolved": dec.unresolved,
                }),
            })
        }
        Command::Compose {
            lhs,
            rhs,
            points,
            fuel,
        } => {
            let g = parse_permutation(&lhs, fuel)?;
            let f = parse_permutation(&rhs, fuel)?;
            let h = g.compose(&f);
            let values = parse_range(&points)?
                .map(|x| h.apply(x))
                .collect::<natperm::Result<Vec<u64>>>()?;
            let mut report = values_report("compose", &h.to_string(), &points, values);
            report.json["lhs"] = json!(lhs);
            report.json["rhs"] = json!(rhs);
            Ok(report)
        }
        Command::Metric {
            lhs,
            rhs,
            depth,
            fuel,
        } => {
            let sigma = parse_permutation(&lhs, fuel)?;
            let tau = parse_permutation(&rhs, fuel)?;
            let d = dist(&sigma, &tau, depth)?;
            Ok(Report {
                text: d.to_string(),
                json: metric_json(&lhs, &rhs, depth, d),
            })
        }
        Command::Xor { lhs, rhs, prefix } => {
            let set = parse_set_spec(&lhs)?.symmetric_difference(&parse_set_spec(&rhs)?);
            let bits = bits_to_string(&set.try_char_prefix(prefix)?);
            Ok(Report {
                text: bits.clone(),
                json: json!({"verb": "xor", "lhs": lhs, "rhs": rhs, "prefix": prefix, "bits": bits}),
            })
        }
        Command::Image {
            perm,
            set,
            prefix,
            fuel,
        } => {
            let sigma: Permutation = parse_permutation(&perm, fuel)?;
            let image = parse_set_spec(&set)?.image_under(&sigma)?;
            let bits = bits_to_string(&image.try_char_prefix(prefix)?);
            Ok(Report {
                text: bits.clone(),
                json: json!({"verb": "image", "perm": perm, "set": set, "prefix": prefix, "bits": bits}),
            })
        }
        Command::Density { set, prefix } => {
            let d = parse_set_spec(&set)?.density(prefix)?;
            let decimal = *d.numer() as f64 / *d.denom() as f64;
            Ok(Report {
                text: format!("{d} ({decimal:.6})"),
                json: json!({
                    "verb": "density",
                    "set": set,
                    "prefix": prefix,
                    "numerator": d.numer(),
                    "denominator": d.denom(),
                }),
            })
        }
        Command::Orbit {
            p0,
            beta,
            count,
            digits,
            fuel,
            bins,
        } => {
            let points = orbit(&parse_point(&p0)?, &parse_point(&beta)?, count, digits, fuel)?;
            let lines: Vec<String> = points.iter().map(|p| digits_to_string(p)).collect();
            let mut text = lines.join("\n");
            let mut doc = json!({
                "verb": "orbit",
                "p0": p0,
                "beta": beta,
                "count": count,
                "digits": digits,
                "points": lines,
            });
            if let Some(bins) = bins {
                let stat = equidistribution_stat(&points, bins)?;
                text.push_str(&format!("\ndeviation over {bins} bins: {stat}"));
                doc["bins"] = json!(bins);
                doc["deviation"] = json!([stat.numer(), stat.denom()]);
            }
            Ok(Report { text, json: doc })
        }
        Command::TmTail {
            boundary,
            finite,
            input,
        } => {
            let machine = TailMachine::new(boundary, parse_list(&finite)?)?;
            let run = machine.run(input);
            Ok(Report {
                text: format!(
                    "{} (halted in q{} after {} steps, head at {})",
                    run.output, run.final_state, run.steps, run.head
                ),
                json: json!({
                    "verb": "tm-tail",
                    "boundary": boundary,
                    "finite": parse_list(&finite)?,
                    "input": input,
                    "output": run.output,
                    "final_state": run.final_state,
                    "steps": run.steps,
                    "head": run.head,
                }),
            })
        }
    }
}

fn values_report(verb: &str, subject: &str, points: &str, values: Vec<u64>) -> Report {
    let text = values.iter().map(u64::to_string).collect::<Vec<_>>().join(" ");
    Report {
        text,
        json: json!({"verb": verb, "subject": subject, "points": points, "values": values}),
    }
}

fn metric_json(lhs: &str, rhs: &str, depth: u64, d: MetricValue) -> Value {
    let exponent = match d.value {
        natperm::Dyadic::Zero => Value::Null,
        natperm::Dyadic::NegPow(j) => json!(j),
    };
    json!({
        "verb": "metric",
        "lhs": lhs,
        "rhs": rhs,
        "depth": depth,
        "exponent": exponent,
        "exact": d.is_exact(),
        "display": d.to_string(),
    })
}
