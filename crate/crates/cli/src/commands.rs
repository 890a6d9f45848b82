use std::path::Path;

use serde::Serialize;
use serde_json::{json, Value};
use splice_core::invariants::{
    alexander_polynomial, conway_polynomial_factors, is_fibered, potential_factors,
    seifert_determinant_sign, sign_counts,
};
use splice_core::linking::{linking_number, linking_table};
use splice_core::verify::{run_checks, run_suite};
use splice_core::{
    seifert_example, serialize, BinomialFactorization, CheckReport, Denotation, ExpandedJson,
    FactoredJson, GeneratorConfig, LaurentError, Outcome, OutputEnvelope, SuiteSummary,
};

use crate::output::{load, number, Failure, Status, TOOL, VERSION};
use crate::{CheckArgs, InvariantsArgs};

pub fn validate(file: &Path) -> Status {
    match load(file) {
        Ok((_, d)) => {
            println!(
                "ok: {} vertices, {} components",
                d.vertex_count(),
                d.component_count()
            );
            Status::Ok
        }
        Err(f) => f.report(),
    }
}

/// One computed invariant: its text rendering and JSON value, or the reason
/// it is indeterminate.
type Computed = Result<(String, Value), String>;

fn to_value(x: impl Serialize) -> Value {
    serde_json::to_value(x).expect("result types serialize")
}

fn factored(f: &BinomialFactorization, expand: bool) -> Computed {
    if f.denotation() == Denotation::Pole {
        return Err(LaurentError::Pole {
            zero_mult: f.zero_mult(),
        }
        .to_string());
    }
    if expand {
        let e = f.expand().map_err(|e| e.to_string())?;
        return Ok((
            e.to_string(),
            to_value(ExpandedJson::from_expansion(&e, f.nvars())),
        ));
    }
    let text = match f.denotation() {
        Denotation::Zero => "0".to_string(),
        _ => f.to_string(),
    };
    Ok((text, to_value(FactoredJson::from(f))))
}

#[derive(Serialize)]
struct Signs {
    k_minus: usize,
    j_minus: usize,
    seifert_determinant_sign: Option<i8>,
    milnor_parity: Option<u8>,
}

pub fn invariants(args: &InvariantsArgs) -> Status {
    let (bytes, d) = match load(&args.file) {
        Ok(x) => x,
        Err(f) => return f.report(),
    };
    let all = !(args.potential || args.alexander || args.conway || args.fibered || args.signs);
    let mut computed: Vec<(&str, Computed)> = Vec::new();

    if all || args.potential {
        computed.push(("potential", factored(&potential_factors(&d), args.expand)));
    }
    if all || args.alexander {
        let r = alexander_polynomial(&d)
            .map(|e| {
                let j = to_value(ExpandedJson::from_expansion(&e, d.component_count()));
                (e.to_string(), j)
            })
            .map_err(|e| e.to_string());
        computed.push(("alexander", r));
    }
    if all || args.conway {
        computed.push((
            "conway",
            factored(&conway_polynomial_factors(&d), args.expand),
        ));
    }
    if all || args.fibered {
        let f = is_fibered(&d);
        computed.push(("fibered", Ok((f.to_string(), Value::Bool(f)))));
    }
    if all || args.signs {
        let c = sign_counts(&d);
        let det = seifert_determinant_sign(&d).ok();
        let signs = Signs {
            k_minus: c.k_minus,
            j_minus: c.j_minus,
            seifert_determinant_sign: det.map(|s| s.to_i8()),
            milnor_parity: det.map(|s| u8::from(s.is_minus())),
        };
        let text = match det {
            Some(s) => format!(
                "k- = {}, j- = {}, det(-A) = {s}, milnor parity = {}",
                c.k_minus,
                c.j_minus,
                u8::from(s.is_minus())
            ),
            None => format!("k- = {}, j- = {} (not fibered)", c.k_minus, c.j_minus),
        };
        computed.push(("signs", Ok((text, to_value(signs)))));
    }

    let status = if computed.iter().any(|(_, r)| r.is_err()) {
        Status::Indeterminate
    } else {
        Status::Ok
    };
    if args.json {
        let mut env = OutputEnvelope::new(TOOL, VERSION, &bytes);
        for (name, r) in computed {
            match r {
                Ok((_, v)) => env.insert(name, v),
                Err(why) => {
                    env.insert(name, Value::Null);
                    env.diagnostics
                        .push(format!("{name}: INDETERMINATE: {why}"));
                }
            }
        }
        println!("{}", env.to_json());
    } else {
        let single = computed.len() == 1;
        for (name, r) in computed {
            let text = match r {
                Ok((t, _)) => t,
                Err(why) => {
                    eprintln!("splice: {name}: {why}");
                    "INDETERMINATE".to_string()
                }
            };
            if single {
                println!("{text}");
            } else {
                println!("{name}: {text}");
            }
        }
    }
    status
}

pub fn linking(file: &Path, pair: Option<&[String]>, json: bool) -> Status {
    let (bytes, d) = match load(file) {
        Ok(x) => x,
        Err(f) => return f.report(),
    };
    let mut env = OutputEnvelope::new(TOOL, VERSION, &bytes);

    if let Some([v, w]) = pair {
        let find = |name: &str| {
            d.find(name)
                .ok_or_else(|| Failure::domain(format!("unknown vertex `{name}`")))
        };
        let lk = find(v)
            .and_then(|a| Ok((a, find(w)?)))
            .and_then(|(a, b)| linking_number(&d, a, b).map_err(Failure::domain));
        return match lk {
            Ok(n) => {
                if json {
                    env.insert("pair", json!({ "v": v, "w": w, "linking": number(&n) }));
                    println!("{}", env.to_json());
                } else {
                    println!("{n}");
                }
                Status::Ok
            }
            Err(f) => f.report(),
        };
    }

    let data = linking_table(&d);
    let names: Vec<&str> = d.components().iter().map(|&v| d.name(v)).collect();
    let n = names.len();
    if json {
        let pairs: Vec<Vec<_>> = (0..n)
            .map(|i| (0..n).map(|j| number(data.pair(i, j))).collect())
            .collect();
        let vertices: Vec<Value> = data
            .vertices()
            .iter()
            .map(|&v| {
                let row: Vec<_> = (0..n)
                    .map(|i| number(data.component_vertex(i, v).expect("covered")))
                    .collect();
                json!({
                    "name": d.name(v),
                    "linking": row,
                    "total": number(data.total(v).expect("covered")),
                })
            })
            .collect();
        env.insert("components", &names);
        env.insert("pairs", pairs);
        env.insert("vertices", vertices);
        println!("{}", env.to_json());
        return Status::Ok;
    }
    for i in 0..n {
        for j in i + 1..n {
            println!("lk({}, {}) = {}", names[i], names[j], data.pair(i, j));
        }
    }
    for &v in data.vertices() {
        println!(
            "l({}) = {}, total {}",
            d.name(v),
            data.exponents(v).expect("covered"),
            data.total(v).expect("covered")
        );
    }
    Status::Ok
}

fn print_report(r: &CheckReport) {
    println!("{r}");
    if matches!(r.outcome, Outcome::Fail | Outcome::Indet) {
        for (label, value) in [
            ("note", &r.note),
            ("expected", &r.expected),
            ("actual", &r.actual),
        ] {
            if let Some(v) = value {
                println!("  {label}: {v}");
            }
        }
        if let Some(w) = &r.witness {
            for line in w.lines() {
                println!("  | {line}");
            }
        }
    }
}

pub fn check(args: &CheckArgs) -> Status {
    let (input, reports) = match (&args.file, args.random) {
        (Some(file), _) => match load(file) {
            Ok((bytes, d)) => (bytes, run_checks(&d)),
            Err(f) => return f.report(),
        },
        (None, Some(count)) => {
            let cfg = GeneratorConfig {
                max_vertices: args.max_vertices,
                max_components: args.max_components,
                max_weight: args.max_weight,
                zero_prob: args.zero_prob,
                seed: args.seed,
            };
            match run_suite(&cfg, count) {
                Ok(r) => {
                    let input = json!({ "config": cfg, "count": count });
                    (input.to_string().into_bytes(), r)
                }
                Err(e) => return Failure::domain(e).report(),
            }
        }
        (None, None) => unreachable!("clap requires a file or --random"),
    };
    let summary = SuiteSummary::from_reports(&reports);
    if args.json {
        let mut env = OutputEnvelope::new(TOOL, VERSION, &input);
        env.insert("reports", &reports);
        env.insert("summary", summary);
        println!("{}", env.to_json());
    } else {
        reports.iter().for_each(print_report);
        println!("{summary}");
    }
    if summary.fail == 0 {
        Status::Ok
    } else {
        Status::Domain
    }
}

pub fn example(alphas: &[i64], arrows: usize, out: Option<&Path>) -> Status {
    let d = match seifert_example(alphas, arrows) {
        Ok(d) => d,
        Err(e) => return Failure::domain(e).report(),
    };
    let src = serialize(&d);
    match out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &src) {
                return Failure::domain(format!("cannot write {}: {e}", path.display())).report();
            }
        }
        None => print!("{src}"),
    }
    Status::Ok
}
