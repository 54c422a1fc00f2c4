use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use serde_json::{json, Value};

use matdec::catalog::{self, KEYS};
use matdec::connectivity::{
    classify_separation, is_internally_4_connected, is_n_connected, lambda,
};
use matdec::decomposer::{
    render_report, CheckOptions, DecompositionProblem, Registry, ReportFormat, Verdict,
};
use matdec::growth::{self, GrowthCandidate};
use matdec::iso::{are_isomorphic, iso_classes};
use matdec::limits::set_ground_set_cap;
use matdec::minor::{has_minor, in_class, MinorClass};
use matdec::reproduce::{reproduce, Scenario};
use matdec::{io, BinaryMatroid, ElementId, ElementSet, Gf2Vector};

use crate::{Cli, Command, Format, GrowthArgs, Outcome};

pub fn run(cli: Cli) -> Result<Outcome> {
    if let Ok(raw) = std::env::var("MATDEC_CAP") {
        let cap = raw
            .trim()
            .parse()
            .map_err(|_| anyhow!("MATDEC_CAP must be a positive integer, got {raw:?}"))?;
        set_ground_set_cap(cap);
    }
    let ctx = Ctx {
        format: cli.format,
        standardize: cli.standardize,
        jobs: cli.jobs,
    };
    match cli.command {
        Command::Info { source } => ctx.info(&source),
        Command::Lambda { source, set, k } => ctx.lambda(&source, &set, &k),
        Command::Extend(args) => ctx.growth(&args, false),
        Command::Coextend(args) => ctx.growth(&args, true),
        Command::Minor { source, target } => ctx.minor(&source, &target),
        Command::Iso { first, second } => ctx.iso(&first, &second),
        Command::Check {
            source,
            side,
            k,
            class,
            method,
            no_prune,
            cross_validate,
            strict_cases,
            tables,
            report,
            report_format,
            witnesses,
        } => {
            let options = CheckOptions {
                use_pruning: !no_prune,
                cross_validate,
                emit_tables: tables,
                strict_cases,
                jobs: ctx.jobs,
            };
            let report_format = match (report_format, &report) {
                (Some(f), _) => f.parse()?,
                (None, Some(p)) if p.extension().is_some_and(|e| e == "json") => ReportFormat::Json,
                _ => ReportFormat::Markdown,
            };
            ctx.check(CheckArgs {
                source: &source,
                side: &side,
                k,
                class: &class,
                method: &method,
                options,
                report: report.as_deref(),
                report_format,
                witnesses,
            })
        }
        Command::Methods => ctx.methods(),
        Command::Reproduce { scenario, output } => ctx.reproduce(&scenario, output.as_deref()),
    }
}

struct Ctx {
    format: Format,
    standardize: bool,
    jobs: Option<usize>,
}

struct CheckArgs<'a> {
    source: &'a str,
    side: &'a str,
    k: usize,
    class: &'a str,
    method: &'a str,
    options: CheckOptions,
    report: Option<&'a Path>,
    report_format: ReportFormat,
    witnesses: usize,
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn parse_ids(raw: &str) -> Result<ElementSet> {
    raw.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse()
                .map(ElementId)
                .map_err(|_| anyhow!("{s:?} is not an element id"))
        })
        .collect()
}

fn rows_json(m: &BinaryMatroid) -> Value {
    let rep = m.rep();
    let rows: Vec<String> = (0..rep.rows()).map(|i| rep.row(i).to_string()).collect();
    json!({
        "name": m.name(),
        "rank": m.rank(),
        "elements": m.elements(),
        "rows": rows,
    })
}

fn size_census(sets: &[ElementSet]) -> BTreeMap<usize, usize> {
    let mut out = BTreeMap::new();
    for s in sets {
        *out.entry(s.len()).or_insert(0) += 1;
    }
    out
}

fn census_text(c: &BTreeMap<usize, usize>) -> String {
    let parts: Vec<String> = c
        .iter()
        .map(|(size, count)| format!("{count} of size {size}"))
        .collect();
    if parts.is_empty() {
        "none".into()
    } else {
        parts.join(", ")
    }
}

impl Ctx {
    fn load(&self, source: &str) -> Result<BinaryMatroid> {
        if let Ok(m) = catalog::builtin(source) {
            return Ok(m);
        }
        let path = Path::new(source);
        if path.is_file() {
            return io::load(path, self.standardize).with_context(|| format!("reading {source}"));
        }
        bail!(
            "{source:?} is neither a catalog key ({}) nor a readable file",
            KEYS.join(", ")
        )
    }

    fn print(&self, text: &str, value: Value) {
        match self.format {
            Format::Text => print!("{text}"),
            Format::Json => println!(
                "{}",
                serde_json::to_string_pretty(&value).expect("json value")
            ),
        }
    }

    fn info(&self, source: &str) -> Result<Outcome> {
        let m = self.load(source)?;
        let three = is_n_connected(&m, 3)?;
        let internal = if three {
            Some(is_internally_4_connected(&m)?)
        } else {
            None
        };
        let circuits = size_census(&m.circuits()?);
        let cocircuits = size_census(&m.cocircuits()?);
        let mut text = String::new();
        let _ = writeln!(text, "name: {}", m.name());
        let _ = writeln!(text, "elements: {}", m.len());
        let _ = writeln!(text, "rank: {}", m.rank());
        let _ = writeln!(text, "simple: {}", yes_no(m.is_simple()));
        let _ = writeln!(text, "cosimple: {}", yes_no(m.is_cosimple()));
        let _ = writeln!(text, "3-connected: {}", yes_no(three));
        let _ = writeln!(
            text,
            "internally 4-connected: {}",
            internal.map_or("no (not 3-connected)", yes_no)
        );
        let _ = writeln!(text, "circuits: {}", census_text(&circuits));
        let _ = writeln!(text, "cocircuits: {}", census_text(&cocircuits));
        self.print(
            &text,
            json!({
                "name": m.name(),
                "elements": m.len(),
                "rank": m.rank(),
                "simple": m.is_simple(),
                "cosimple": m.is_cosimple(),
                "three_connected": three,
                "internally_four_connected": internal.unwrap_or(false),
                "circuits_by_size": circuits,
                "cocircuits_by_size": cocircuits,
            }),
        );
        Ok(Outcome::Positive)
    }

    fn lambda(&self, source: &str, set: &str, ks: &[usize]) -> Result<Outcome> {
        let m = self.load(source)?;
        let set = parse_ids(set)?;
        let value = lambda(&m, &set)?;
        let mut text = String::new();
        let mut classes = Vec::new();
        for &k in ks {
            let sep = classify_separation(&m, &set, k)?;
            let _ = writeln!(text, "λ = {value}, {sep}");
            classes.push(json!({ "k": k, "class": sep.class, "description": sep.to_string() }));
        }
        self.print(
            &text,
            json!({ "set": set, "lambda": value, "separations": classes }),
        );
        Ok(Outcome::Positive)
    }

    fn growth(&self, args: &GrowthArgs, co: bool) -> Result<Outcome> {
        let m = self.load(&args.source)?;
        let Some(raw) = &args.vector else {
            return self.growth_census(&m, args.in_class.as_deref(), co);
        };
        let v: Gf2Vector = raw.parse()?;
        let grown = if co {
            growth::coextend(&m, &v)?
        } else {
            growth::extend(&m, &v)?
        };
        let grown = grown.with_name(format!("{}{}[{v}]", m.name(), if co { "/" } else { "+" }));
        if !(if co {
            grown.is_cosimple()
        } else {
            grown.is_simple()
        }) {
            eprintln!(
                "warning: the result is not {}",
                if co { "cosimple" } else { "simple" }
            );
        }
        match &args.output {
            Some(path) => {
                io::save(&grown, path)?;
                self.print(
                    &format!("wrote {}\n", path.display()),
                    json!({ "written": path, "matroid": rows_json(&grown) }),
                );
            }
            None => self.print(&io::to_text(&grown), rows_json(&grown)),
        }
        Ok(Outcome::Positive)
    }

    fn growth_census(&self, m: &BinaryMatroid, class: Option<&str>, co: bool) -> Result<Outcome> {
        let mut candidates = if co {
            growth::cosimple_coextension_candidates(m)?
        } else {
            growth::simple_extension_candidates(m)?
        };
        let total = candidates.len();
        if let Some(name) = class {
            let class = MinorClass::by_name(name)?;
            let mut kept = Vec::new();
            for c in candidates {
                if in_class(&c.result, &class)? {
                    kept.push(c);
                }
            }
            candidates = kept;
        }
        let vector = |c: &GrowthCandidate| {
            c.v.as_ref()
                .or(c.w.as_ref())
                .map(ToString::to_string)
                .unwrap_or_default()
        };
        let results: Vec<BinaryMatroid> = candidates.iter().map(|c| c.result.clone()).collect();
        let classes = iso_classes(&results)?;
        let what = if co {
            "cosimple coextensions"
        } else {
            "simple extensions"
        };
        let mut text = format!("{total} {what}");
        if let Some(name) = class {
            let _ = write!(text, ", {} in the class {name}", candidates.len());
        }
        let _ = writeln!(text, ", {} isomorphism classes", classes.len());
        let mut groups = Vec::new();
        for (i, class) in classes.iter().enumerate() {
            let members: Vec<String> = class
                .members
                .iter()
                .map(|&j| vector(&candidates[j]))
                .collect();
            let shown: Vec<String> = members.iter().map(|s| format!("[{s}]")).collect();
            let _ = writeln!(text, "class {}: {}", i + 1, shown.join(" "));
            groups.push(members);
        }
        self.print(
            &text,
            json!({
                "kind": if co { "coextension" } else { "extension" },
                "candidates": total,
                "in_class": candidates.len(),
                "classes": groups,
            }),
        );
        Ok(if candidates.is_empty() {
            Outcome::Negative
        } else {
            Outcome::Positive
        })
    }

    fn minor(&self, source: &str, target: &str) -> Result<Outcome> {
        let m = self.load(source)?;
        let t = self.load(target)?;
        match has_minor(&m, &t)? {
            Some(w) => {
                self.print(
                    &format!(
                        "minor found: contract {} delete {}\n",
                        matdec::matroid::format_set(&w.contract),
                        matdec::matroid::format_set(&w.delete)
                    ),
                    json!({ "found": true, "witness": w }),
                );
                Ok(Outcome::Positive)
            }
            None => {
                self.print("none\n", json!({ "found": false }));
                Ok(Outcome::Negative)
            }
        }
    }

    fn iso(&self, first: &str, second: &str) -> Result<Outcome> {
        let a = self.load(first)?;
        let b = self.load(second)?;
        match are_isomorphic(&a, &b)? {
            Some(map) => {
                let pairs: Vec<String> = map.iter().map(|(x, y)| format!("{x}→{y}")).collect();
                self.print(
                    &format!("isomorphic: {}\n", pairs.join(", ")),
                    json!({ "isomorphic": true, "bijection": map }),
                );
                Ok(Outcome::Positive)
            }
            None => {
                self.print("not isomorphic\n", json!({ "isomorphic": false }));
                Ok(Outcome::Negative)
            }
        }
    }

    fn check(&self, a: CheckArgs<'_>) -> Result<Outcome> {
        let n = self.load(a.source)?;
        let side = parse_ids(a.side)?;
        let class = MinorClass::by_name(a.class)?;
        let problem = DecompositionProblem::new(n, side, a.k, class)?.with_options(a.options);
        let registry = Registry::with_builtins();
        let certifier = registry.get(a.method)?;
        let (verdict, report) = certifier.certify(&problem)?;
        if let Some(path) = a.report {
            std::fs::write(path, render_report(&report, a.report_format))
                .with_context(|| format!("writing {}", path.display()))?;
        }

        let s = &report.summary;
        let mut text = String::new();
        let _ = writeln!(text, "method: {}", report.method);
        let _ = writeln!(text, "verdict: {}", verdict.label());
        let _ = writeln!(
            text,
            "generated {}, pruned {}, constructed {}, outside class {}, checked {}",
            s.generated, s.pruned, s.constructed, s.outside_class, s.checked
        );
        if let Some(cv) = &report.cross_validation {
            let _ = writeln!(
                text,
                "cross-validation: {} compared, {} skipped, {} mismatches",
                cv.compared,
                cv.skipped,
                cv.mismatches.len()
            );
        }
        match &verdict {
            Verdict::Certified => {}
            Verdict::HypothesisFailure { reasons } => {
                for r in reasons {
                    let _ = writeln!(text, "hypothesis fails: {r}");
                }
            }
            Verdict::NotCertified { witnesses } => {
                let mut by_condition: BTreeMap<_, Vec<_>> = BTreeMap::new();
                for w in witnesses {
                    by_condition.entry(w.condition).or_default().push(w);
                }
                for (condition, ws) in &by_condition {
                    let _ = writeln!(text, "failing {condition}: {}", ws.len());
                    let shown = if a.witnesses == 0 {
                        ws.len()
                    } else {
                        a.witnesses.min(ws.len())
                    };
                    for w in &ws[..shown] {
                        let _ = writeln!(text, "  {condition} {}", w.subject.key());
                    }
                    if shown < ws.len() {
                        let _ = writeln!(text, "  ... {} more", ws.len() - shown);
                    }
                }
            }
        }
        if let Some(path) = a.report {
            let _ = writeln!(text, "report: {}", path.display());
        }
        self.print(
            &text,
            json!({
                "method": report.method,
                "verdict": verdict,
                "summary": report.summary,
                "cross_validation": report.cross_validation,
            }),
        );
        Ok(if verdict.is_certified() {
            Outcome::Positive
        } else {
            Outcome::Negative
        })
    }

    fn methods(&self) -> Result<Outcome> {
        let registry = Registry::with_builtins();
        let mut text = String::new();
        let mut list = Vec::new();
        for name in registry.names() {
            let c = registry.get(name)?;
            let _ = writeln!(text, "{name}: {}", c.description());
            list.push(json!({ "name": name, "description": c.description() }));
        }
        self.print(&text, Value::Array(list));
        Ok(Outcome::Positive)
    }

    fn reproduce(&self, scenario: &str, output: Option<&Path>) -> Result<Outcome> {
        let scenario: Scenario = scenario.parse().map_err(|_| {
            anyhow!("unknown scenario {scenario:?}; expected r12 or counterexample")
        })?;
        let r = reproduce(scenario)?;
        match output {
            Some(path) => {
                std::fs::write(path, &r.document)
                    .with_context(|| format!("writing {}", path.display()))?;
                let held = r.checks.iter().filter(|c| c.holds).count();
                self.print(
                    &format!(
                        "wrote {} ({held} of {} claims hold)\n",
                        path.display(),
                        r.checks.len()
                    ),
                    serde_json::to_value(&r)?,
                );
            }
            None => self.print(&r.document, serde_json::to_value(&r)?),
        }
        Ok(if r.all_hold() {
            Outcome::Positive
        } else {
            Outcome::Negative
        })
    }
}
