//! Command-line surface for the category checkers and the exact completion.
//!
//! Exit codes: 0 on pass, 1 on a semantic failure (a law or theorem does not
//! hold, with a witness in the report), 2 on unreadable or malformed input.

use clap::{Args, Parser, Subcommand, ValueEnum};
use poscat::category::ValidationError;
use poscat::completion::{
    build_exact_completion_with, coinserter_presentation, gamma, internal_construction_crosscheck,
    CrosscheckKind, ExCompletion, SizeGuard,
};
use poscat::functor::{
    check_equivalence, check_fully_order_faithful, check_left_covering, check_regular_functor,
    extend_functor, validate_functor, PosFunctor,
};
use poscat::json::{
    category_to_doc, load_category_path, parse_category, resolve_functor_doc, FormatError,
    FunctorDoc,
};
use poscat::limits::check_weakly_lex;
use poscat::regexact::{check_exact, check_projective, check_projective_cover, check_regular};
use poscat::report::Report;
use poscat::FinPosCategory;
use std::process::ExitCode;
use std::time::Instant;

#[derive(Parser)]
#[command(name = "poscat", version, about = "Finite poset-enriched categories: validation, structure checks, and exact completion")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct FormatArg {
    /// Report format.
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a category file (or builtin:NAME) against the category laws.
    Validate {
        path: String,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Run a structure checker on a valid category.
    Check {
        path: String,
        #[arg(long, group = "which")]
        weakly_lex: bool,
        #[arg(long, group = "which")]
        regular: bool,
        #[arg(long, group = "which")]
        exact: bool,
        #[arg(long, group = "which")]
        projectives: bool,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Build the exact completion of a weakly lex category.
    Complete {
        path: String,
        /// Output file for the completion category JSON.
        #[arg(short, long)]
        out: String,
        /// Embed provenance (pseudocongruences and class data) in the output.
        #[arg(long)]
        provenance: bool,
        /// Re-verify exactness, the embedding, presentations and the
        /// construction recipes on the built completion.
        #[arg(long)]
        crosscheck: bool,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Extend a left covering functor to a regular functor on the completion.
    Extend {
        /// Functor JSON file ({source, target, objMap, morMap}).
        #[arg(long, group = "what")]
        functor: Option<String>,
        /// Use the canonical embedding of this category into its completion.
        #[arg(long, group = "what")]
        gamma: Option<String>,
        /// Previously written completion file to cross-check against.
        #[arg(long)]
        completion: Option<String>,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Enumerate a corpus of small categories and drive the theorem battery.
    Corpus {
        #[arg(long)]
        objects: usize,
        #[arg(long)]
        morphisms: usize,
        /// Run the full theorem battery instead of just the summary counts.
        #[arg(long)]
        assert_theorems: bool,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Emit the category as Graphviz DOT text.
    Dot {
        path: String,
        /// Include identity morphisms as edges.
        #[arg(long)]
        show_ids: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {}", err);
            ExitCode::from(2)
        }
    }
}

fn size_guard_from_env() -> SizeGuard {
    // POSCAT_SIZE_GUARD="objects,morphisms" overrides the completion caps.
    let mut guard = SizeGuard::default();
    if let Ok(v) = std::env::var("POSCAT_SIZE_GUARD") {
        let parts: Vec<&str> = v.split(',').collect();
        if parts.len() == 2 {
            if let (Ok(o), Ok(m)) = (parts[0].trim().parse(), parts[1].trim().parse()) {
                guard.max_objects = o;
                guard.max_morphisms = m;
            }
        }
    }
    guard
}

fn emit(report: &Report, format: Format) {
    match format {
        Format::Json => println!("{}", report.to_json()),
        Format::Text => print!("{}", report.to_text()),
    }
}

fn load(path: &str) -> Result<FinPosCategory, String> {
    load_category_path(path).map_err(|e| e.to_string())
}

/// Distinguishes parse failures (exit 2) from law violations (exit 1).
fn load_for_validate(path: &str) -> Result<Result<FinPosCategory, ValidationError>, String> {
    match load_category_path(path) {
        Ok(c) => Ok(Ok(c)),
        Err(FormatError::Invalid(v)) => Ok(Err(v)),
        Err(other) => Err(other.to_string()),
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Validate { path, format } => {
            let start = Instant::now();
            let mut report = Report::new(format!("validate {}", path));
            match load_for_validate(&path)? {
                Ok(c) => {
                    report.push(
                        "category laws",
                        "composition total and associative, identities, hom-order partial, composition monotone",
                        true,
                        Some(format!(
                            "{} objects, {} morphisms",
                            c.object_count(),
                            c.morphism_count()
                        )),
                    );
                }
                Err(v) => {
                    report.push(
                        "category laws",
                        "composition total and associative, identities, hom-order partial, composition monotone",
                        false,
                        Some(v.to_string()),
                    );
                }
            }
            report.timing_ms = start.elapsed().as_secs_f64() * 1000.0;
            emit(&report, format.format);
            Ok(exit_of(&report))
        }
        Command::Check { path, weakly_lex, regular, exact, projectives, format } => {
            let start = Instant::now();
            let c = load(&path)?;
            let mut report = Report::new(format!("check {}", path));
            if weakly_lex {
                let r = check_weakly_lex(&c);
                report.push(
                    "weakly lex",
                    "weak terminal, weak binary products, weak inserters, weak identity commas all exist",
                    r.holds(),
                    (!r.holds()).then(|| format!("{:?}", r.missing)),
                );
            } else if regular {
                let r = check_regular(&c);
                report.push(
                    "regular",
                    "strict finite limits, (so,ff) factorizations, so-morphisms stable under pullback",
                    r.holds(),
                    (!r.holds()).then(|| format!("{:?}", r.failures)),
                );
            } else if exact {
                let r = check_exact(&c);
                report.push(
                    "exact",
                    "regular and every congruence is effective",
                    r.holds(),
                    (!r.holds()).then(|| format!("{:?}", r.failures)),
                );
            } else if projectives {
                let projs: Vec<_> = c.objects().filter(|&x| check_projective(&c, x)).collect();
                for &x in &projs {
                    report.push(
                        format!("projective {}", c.object_name(x)),
                        "hom(P, -) preserves so-morphisms",
                        true,
                        None,
                    );
                }
                let (cover, _) = check_projective_cover(&c, &projs);
                report.push(
                    "enough projectives",
                    "the projective objects form a projective cover",
                    cover,
                    None,
                );
            } else {
                return Err("choose one of --weakly-lex, --regular, --exact, --projectives".into());
            }
            report.timing_ms = start.elapsed().as_secs_f64() * 1000.0;
            emit(&report, format.format);
            Ok(exit_of(&report))
        }
        Command::Complete { path, out, provenance, crosscheck, format } => {
            let start = Instant::now();
            let c = load(&path)?;
            let mut report = Report::new(format!("complete {}", path));
            let guard = size_guard_from_env();
            match build_exact_completion_with(&c, guard) {
                Err(err) => {
                    report.push("completion", "the completion of a weakly lex category exists", false, Some(err.to_string()));
                    report.timing_ms = start.elapsed().as_secs_f64() * 1000.0;
                    emit(&report, format.format);
                    Ok(exit_of(&report))
                }
                Ok(e) => {
                    let mut doc = category_to_doc(&e.cat);
                    if provenance {
                        doc.provenance = Some(provenance_json(&e));
                    }
                    let text = serde_json::to_string_pretty(&doc).expect("serializes");
                    std::fs::write(&out, text).map_err(|err| format!("cannot write {}: {}", out, err))?;
                    report.push(
                        "completion",
                        "objects are pseudocongruences, morphisms are liftable classes",
                        true,
                        Some(format!(
                            "{} objects, {} morphisms → {}",
                            e.cat.object_count(),
                            e.cat.morphism_count(),
                            out
                        )),
                    );
                    if crosscheck {
                        run_crosschecks(&c, &e, &mut report);
                    }
                    report.timing_ms = start.elapsed().as_secs_f64() * 1000.0;
                    emit(&report, format.format);
                    Ok(exit_of(&report))
                }
            }
        }
        Command::Extend { functor, gamma: gamma_path, completion, format } => {
            let start = Instant::now();
            let (f, label): (PosFunctor, String) = if let Some(fp) = functor {
                let text = std::fs::read_to_string(&fp)
                    .map_err(|e| format!("cannot read {}: {}", fp, e))?;
                let doc: FunctorDoc =
                    serde_json::from_str(&text).map_err(|e| format!("functor json: {}", e))?;
                let (source, target, obj_map, mor_map) =
                    resolve_functor_doc(&doc).map_err(|e| e.to_string())?;
                (PosFunctor { source, target, obj_map, mor_map }, format!("extend --functor {}", fp))
            } else if let Some(cp) = gamma_path {
                let c = load(&cp)?;
                let e = build_exact_completion_with(&c, size_guard_from_env())
                    .map_err(|err| err.to_string())?;
                let g = gamma(&c, &e);
                (g.functor, format!("extend --gamma {}", cp))
            } else {
                return Err("choose --functor <file> or --gamma <category>".into());
            };

            let mut report = Report::new(label);
            if let Err(err) = validate_functor(&f) {
                report.push("functor laws", "locally monotone functor", false, Some(err.to_string()));
                report.timing_ms = start.elapsed().as_secs_f64() * 1000.0;
                emit(&report, format.format);
                return Ok(exit_of(&report));
            }
            report.push("functor laws", "locally monotone functor", true, None);

            let exact_target = check_exact(&f.target);
            report.push(
                "target exact",
                "regular and every congruence is effective",
                exact_target.holds(),
                (!exact_target.holds()).then(|| format!("{:?}", exact_target.failures)),
            );
            let covering = check_left_covering(&f).map_err(|e| e.to_string())?;
            report.push(
                "left covering",
                "comparisons from weak limits of the generating family are so-morphisms",
                covering.holds(),
                (!covering.holds()).then(|| format!("{:?}", covering.failures)),
            );
            if report.passed() {
                let e = build_exact_completion_with(&f.source, size_guard_from_env())
                    .map_err(|err| err.to_string())?;
                if let Some(cp) = completion {
                    let text = std::fs::read_to_string(&cp)
                        .map_err(|err| format!("cannot read {}: {}", cp, err))?;
                    let stored = parse_category(&text).map_err(|err| err.to_string())?;
                    report.push(
                        "stored completion matches",
                        "the stored completion is isomorphic to the rebuilt one",
                        stored.isomorphic_to(&e.cat),
                        None,
                    );
                }
                match extend_functor(&f, &e) {
                    Err(err) => report.push("extension", "the functor extends along the embedding", false, Some(err.to_string())),
                    Ok(ext) => {
                        report.push("extension", "the functor extends along the embedding", true, None);
                        let regular_fn = check_regular_functor(&ext.fbar);
                        report.push(
                            "extension regular",
                            "preserves terminal, products, inserters and so-morphisms",
                            regular_fn.is_ok(),
                            regular_fn.err(),
                        );
                        report.push(
                            "extension equivalence",
                            "fully order-faithful and essentially surjective",
                            check_equivalence(&ext.fbar),
                            None,
                        );
                    }
                }
            }
            report.timing_ms = start.elapsed().as_secs_f64() * 1000.0;
            emit(&report, format.format);
            Ok(exit_of(&report))
        }
        Command::Corpus { objects, morphisms, assert_theorems, format } => {
            let start = Instant::now();
            let mut report = Report::new(format!(
                "corpus --objects {} --morphisms {}{}",
                objects,
                morphisms,
                if assert_theorems { " --assert-theorems" } else { "" }
            ));
            if assert_theorems {
                let (corpus, outcomes) =
                    poscat::battery::run_full_battery(objects, morphisms).map_err(|e| e.to_string())?;
                report.push(
                    "enumeration",
                    "every category up to relabeling, exactly once",
                    true,
                    Some(format!(
                        "{} categories, {} weakly lex",
                        corpus.categories.len(),
                        corpus.weakly_lex.len()
                    )),
                );
                for o in outcomes {
                    report.push(
                        o.name.clone(),
                        format!("{} instances, zero failures", o.instances),
                        o.holds(),
                        (!o.holds()).then(|| o.failures.join("; ")),
                    );
                }
            } else {
                let corpus =
                    poscat::battery::build_corpus(objects, morphisms).map_err(|e| e.to_string())?;
                report.push(
                    "enumeration",
                    "every category up to relabeling, exactly once",
                    true,
                    Some(format!(
                        "{} categories, {} weakly lex, {} completions",
                        corpus.categories.len(),
                        corpus.weakly_lex.len(),
                        corpus.completions.len()
                    )),
                );
            }
            report.timing_ms = start.elapsed().as_secs_f64() * 1000.0;
            emit(&report, format.format);
            Ok(exit_of(&report))
        }
        Command::Dot { path, show_ids } => {
            let c = load(&path)?;
            print!("{}", render_dot(&c, show_ids));
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn exit_of(report: &Report) -> ExitCode {
    if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn run_crosschecks(c: &FinPosCategory, e: &ExCompletion, report: &mut Report) {
    let exact = check_exact(&e.cat);
    report.push(
        "completion exact",
        "the completion is regular with every congruence effective",
        exact.holds(),
        (!exact.holds()).then(|| format!("{:?}", exact.failures)),
    );
    let g = gamma(c, e);
    let fof = check_fully_order_faithful(&g.functor);
    report.push(
        "embedding fully order-faithful",
        "hom maps are order-isomorphisms onto image homs",
        fof.0,
        fof.1,
    );
    let mut presentation_failures = Vec::new();
    for m in e.cat.morphisms() {
        if let Err(err) = coinserter_presentation(e, &g, m) {
            presentation_failures.push(format!("{:?}: {}", m, err));
        }
    }
    report.push(
        "coinserter presentations",
        "every morphism is presented by coinserter rows",
        presentation_failures.is_empty(),
        (!presentation_failures.is_empty()).then(|| presentation_failures.join("; ")),
    );
    for kind in CrosscheckKind::ALL {
        let r = internal_construction_crosscheck(e, kind);
        report.push(
            format!("recipe {:?}", kind),
            "explicit construction agrees with brute-force search",
            r.is_ok(),
            r.err().map(|err| err.to_string()),
        );
    }
}

fn provenance_json(e: &ExCompletion) -> serde_json::Value {
    let base = &e.base;
    let objects: Vec<serde_json::Value> = e
        .objects
        .iter()
        .map(|pc| {
            serde_json::json!({
                "x": base.object_name(pc.span.x),
                "r": base.object_name(pc.span.r),
                "r0": base.morphism_name(pc.span.r0),
                "r1": base.morphism_name(pc.span.r1),
            })
        })
        .collect();
    let morphisms: Vec<serde_json::Value> = e
        .homs
        .iter()
        .map(|h| {
            serde_json::json!({
                "src": h.src.0,
                "dst": h.dst.0,
                "representative": base.morphism_name(h.representative),
                "members": h.members.iter().map(|&m| base.morphism_name(m)).collect::<Vec<_>>(),
                "lift": base.morphism_name(h.lift),
            })
        })
        .collect();
    serde_json::json!({ "objects": objects, "morphisms": morphisms })
}

fn render_dot(c: &FinPosCategory, show_ids: bool) -> String {
    let mut out = String::from("digraph category {\n  rankdir=LR;\n");
    for x in c.objects() {
        out.push_str(&format!("  \"{}\";\n", c.object_name(x)));
    }
    for f in c.morphisms() {
        if c.is_identity(f) && !show_ids {
            continue;
        }
        out.push_str(&format!(
            "  \"{}\" -> \"{}\" [label=\"{}\"];\n",
            c.object_name(c.dom(f)),
            c.object_name(c.cod(f)),
            c.morphism_name(f)
        ));
    }
    for a in c.morphisms() {
        for b in c.morphisms() {
            if a != b && c.le(a, b) {
                out.push_str(&format!(
                    "  \"{}\" -> \"{}\" [style=dashed, constraint=false, label=\"{} ≤ {}\"];\n",
                    c.object_name(c.dom(a)),
                    c.object_name(c.cod(a)),
                    c.morphism_name(a),
                    c.morphism_name(b)
                ));
            }
        }
    }
    out.push_str("}\n");
    out
}
