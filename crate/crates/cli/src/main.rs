mod cache;

use std::io::Write;
use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use origami_monoid::green::{compute_green, GreenReport};
use origami_monoid::jones::{enumerate_jones, jones_relations};
use origami_monoid::morphism::{projection_p, verify_dclass_correspondence};
use origami_monoid::origami::{build_monoid, build_presentation};
use origami_monoid::presentation::Presentation;
use origami_monoid::rewriting::{enumerate_normal_forms, EnumerationOptions, DEFAULT_MAX_STEPS};
use origami_monoid::verify::{verify_range, CheckKind, DegreeReport, VerifyOptions};
use origami_monoid::{knuth_bendix, Alphabet, CompletionLimits, Family, GeneratorKind, RewriteSystem, Word};
use serde_json::json;

use cache::{presentation_hash, summarize, CacheEntry, CacheFamily, MonoidCache, FORMAT_VERSION};

#[derive(Parser, Debug)]
#[command(name = "origami", version, about = "Origami and Jones monoids: rewriting, enumeration, Green's relations")]
struct Cli {
    /// Directory for cached monoids.
    #[arg(long, global = true, env = "ORIGAMI_CACHE_DIR")]
    cache_dir: Option<PathBuf>,
    /// Rule limit for Knuth-Bendix completion.
    #[arg(long, global = true, default_value_t = CompletionLimits::default().max_rules)]
    max_rules: usize,
    /// Rewriting step limit for a single reduction.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_STEPS)]
    max_steps: usize,
    /// Worker threads; defaults to the number of CPUs.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Print each rewriting step.
    #[arg(long, global = true)]
    trace: bool,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Export {
    Json,
    Dot,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Reduce a word to its normal form.
    Reduce {
        #[arg(long, default_value = "origami")]
        family: Family,
        #[arg(long)]
        n: usize,
        /// Space-separated generators, e.g. "a1 b2 a3".
        word: String,
    },
    /// Enumerate a monoid and store it in the cache.
    Enumerate {
        #[arg(long, default_value = "origami")]
        family: Family,
        #[arg(long)]
        n: usize,
        /// Stop after this many elements.
        #[arg(long, default_value_t = 1_000_000)]
        max_elements: usize,
    },
    /// Green's relations: egg boxes and the D-class lattice.
    Green {
        #[arg(long, default_value = "origami")]
        family: Family,
        #[arg(long)]
        n: usize,
        /// Files to write; repeatable.
        #[arg(long, value_enum)]
        export: Vec<Export>,
        /// Directory for exported files.
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
    },
    /// Run the lemma and conjecture checks for a range of degrees.
    Verify {
        /// A degree `3` or a range `2..4` (inclusive).
        #[arg(long, value_parser = parse_range)]
        n: RangeInclusive<usize>,
        /// Also write the JSON report here.
        #[arg(long)]
        report: Option<PathBuf>,
        #[arg(long, default_value_t = VerifyOptions::default().seed)]
        seed: u64,
    },
    /// Compare D-classes of the origami monoid with those of J_n x J_n.
    Morphism {
        #[arg(long)]
        n: usize,
    },
    /// Inspect or empty the cache.
    Cache {
        #[command(subcommand)]
        action: CacheAction,
    },
}

#[derive(Subcommand, Debug)]
enum CacheAction {
    List,
    Clear,
}

fn parse_range(s: &str) -> std::result::Result<RangeInclusive<usize>, String> {
    let bad = || format!("expected N or A..B, got `{s}`");
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (a, b.strip_prefix('=').unwrap_or(b)),
        None => (s, s),
    };
    let a: usize = a.trim().parse().map_err(|_| bad())?;
    let b: usize = b.trim().parse().map_err(|_| bad())?;
    if a > b {
        return Err(bad());
    }
    Ok(a..=b)
}

struct Ctx {
    cache: MonoidCache,
    limits: CompletionLimits,
    format: Format,
    trace: bool,
}

fn default_cache_dir() -> PathBuf {
    if let Some(x) = std::env::var_os("XDG_CACHE_HOME") {
        return PathBuf::from(x).join("origami");
    }
    if let Some(h) = std::env::var_os("HOME") {
        return PathBuf::from(h).join(".cache").join("origami");
    }
    PathBuf::from(".origami-cache")
}

fn defining_presentation(family: Family, n: usize) -> Result<Presentation> {
    Ok(match family {
        Family::Origami => build_presentation(n)?.to_presentation(),
        Family::Jones => {
            let a = Alphabet::jones(n)?;
            Presentation::from_pairs(a, &jones_relations(n)?, &a.default_order())
        }
    })
}

/// `J_n x J_n` over the origami alphabet: both copies of the Jones relations
/// plus commutation of every `α` with every `β`.
fn product_presentation(n: usize) -> Result<Presentation> {
    let a = Alphabet::origami(n)?;
    let lift = |w: &Word, kind| -> Word { w.iter().map(|l| a.gen(kind, l.code() + 1)).collect() };
    let mut pairs = Vec::new();
    for kind in [GeneratorKind::Alpha, GeneratorKind::Beta] {
        for (u, v) in jones_relations(n)? {
            pairs.push((lift(&u, kind), lift(&v, kind)));
        }
    }
    for i in 1..n {
        for j in 1..n {
            let (x, y) = (a.gen(GeneratorKind::Alpha, i), a.gen(GeneratorKind::Beta, j));
            pairs.push((Word::from(vec![y, x]), Word::from(vec![x, y])));
        }
    }
    Ok(Presentation::from_pairs(a, &pairs, &a.default_order()))
}

fn cache_family(f: Family) -> CacheFamily {
    match f {
        Family::Origami => CacheFamily::Origami,
        Family::Jones => CacheFamily::Jones,
    }
}

fn complete(ctx: &Ctx, presentation: &Presentation) -> Result<RewriteSystem> {
    let report = knuth_bendix(&presentation.rewrite_system()?, &ctx.limits)?;
    Ok(report.into_confluent()?)
}

/// The cached monoid, or a fresh enumeration that is then cached. A capped
/// enumeration is cached with `complete: false` and reported as an error.
fn obtain(ctx: &Ctx, family: CacheFamily, n: usize, presentation: Presentation, max_elements: usize) -> Result<(CacheEntry, bool)> {
    if let Some(entry) = ctx.cache.load(family, n, &presentation) {
        return Ok((entry, true));
    }
    let rs = complete(ctx, &presentation)?;
    let monoid = enumerate_normal_forms(&rs, EnumerationOptions { max_elements: Some(max_elements) })?;
    let entry = CacheEntry {
        format_version: FORMAT_VERSION,
        family,
        n,
        presentation_hash: presentation_hash(&presentation),
        complete: monoid.complete,
        presentation: presentation.with_system(&rs),
        monoid,
    };
    let path = ctx.cache.store(&entry).with_context(|| format!("writing cache in {}", ctx.cache.dir().display()))?;
    if !entry.complete {
        bail!("enumeration stopped at {} elements; partial result flagged in {}", entry.monoid.len(), path.display());
    }
    Ok((entry, false))
}

/// Prints the JSON value or the text rendering. Write errors such as a
/// closed pipe are ignored.
fn emit(ctx: &Ctx, value: &serde_json::Value, text: impl FnOnce() -> String) {
    let body = match ctx.format {
        Format::Json => serde_json::to_string_pretty(value).expect("json") + "\n",
        Format::Text => text(),
    };
    let _ = std::io::stdout().lock().write_all(body.as_bytes());
}

fn reduce(ctx: &Ctx, family: Family, n: usize, text: &str, max_steps: usize) -> Result<()> {
    let presentation = defining_presentation(family, n)?;
    let a = Alphabet::new(family, n)?;
    let word = a.parse(text)?;
    let rs = match ctx.cache.load(cache_family(family), n, &presentation) {
        Some(entry) => entry.presentation.rewrite_system()?,
        None => complete(ctx, &presentation)?,
    }
    .with_max_steps(max_steps);
    let steps = if ctx.trace { rs.trace(&word)? } else { Vec::new() };
    let nf = rs.normal_form(&word)?;
    let trace: Vec<_> = steps
        .iter()
        .map(|s| {
            let r = &rs.rules()[s.rule];
            json!({"rule": [a.display(&r.lhs), a.display(&r.rhs)], "position": s.position, "result": a.display(&s.result)})
        })
        .collect();
    let mut value = json!({"family": family.to_string(), "n": n, "input": a.display(&word), "normal_form": a.display(&nf)});
    if ctx.trace {
        value["trace"] = json!(trace);
    }
    emit(ctx, &value, || {
        let mut out = String::new();
        for s in &steps {
            let r = &rs.rules()[s.rule];
            out.push_str(&format!("{} -> {} at {}: {}\n", a.display(&r.lhs), a.display(&r.rhs), s.position, a.display(&s.result)));
        }
        out.push_str(&a.display(&nf));
        out.push('\n');
        out
    });
    Ok(())
}

fn enumerate(ctx: &Ctx, family: Family, n: usize, max_elements: usize) -> Result<()> {
    let presentation = defining_presentation(family, n)?;
    let relations = presentation.relations.len();
    let (entry, cached) = obtain(ctx, cache_family(family), n, presentation, max_elements)?;
    let m = &entry.monoid;
    let rules = entry.presentation.rules.as_ref().map_or(0, Vec::len);
    let path = ctx.cache.path(entry.family, n, &entry.presentation_hash);
    let value = json!({
        "family": family.to_string(),
        "n": n,
        "order": m.len(),
        "generators": m.generator_count(),
        "relations": relations,
        "rules": rules,
        "cached": cached,
    });
    emit(ctx, &value, || {
        format!(
            "{family} n={n}\norder: {}\ngenerators: {}\nrelations: {relations}\nrules: {rules}\ncache: {}{}\n",
            m.len(),
            m.generator_count(),
            path.display(),
            if cached { " (hit)" } else { "" }
        )
    });
    Ok(())
}

fn green(ctx: &Ctx, family: Family, n: usize, export: &[Export], out_dir: &PathBuf) -> Result<()> {
    let presentation = defining_presentation(family, n)?;
    let (entry, _) = obtain(ctx, cache_family(family), n, presentation, EnumerationOptions::default().max_elements.unwrap())?;
    let m = &entry.monoid;
    let gs = compute_green(m)?;
    let report = GreenReport::new(m, &gs);
    let mut written = Vec::new();
    if !export.is_empty() {
        std::fs::create_dir_all(out_dir)?;
    }
    for e in export {
        let (name, body) = match e {
            Export::Json => (format!("{family}-{n}-green.json"), serde_json::to_string_pretty(&report)? + "\n"),
            Export::Dot => (format!("{family}-{n}-dlattice.dot"), report.to_dot()),
        };
        let path = out_dir.join(name);
        std::fs::write(&path, body).with_context(|| format!("writing {}", path.display()))?;
        written.push(path.display().to_string());
    }
    let c = &report.counts;
    let value = json!({
        "family": family.to_string(),
        "n": n,
        "order": report.order,
        "counts": c,
        "max_h_size": report.max_h_size,
        "written": written,
    });
    emit(ctx, &value, || {
        let mut s = format!(
            "{family} n={n}: order {}, R {}, L {}, H {}, D {}, largest H-class {}\n",
            report.order, c.r, c.l, c.h, c.d, report.max_h_size
        );
        for w in &written {
            s.push_str(&format!("wrote {w}\n"));
        }
        s
    });
    Ok(())
}

fn verify(ctx: &Ctx, range: RangeInclusive<usize>, report: Option<&PathBuf>, seed: u64) -> Result<bool> {
    let opts = VerifyOptions { limits: ctx.limits.clone(), seed, ..VerifyOptions::default() };
    let reports = verify_range(range, &opts)?;
    let ok = reports.iter().all(DegreeReport::lemmas_hold);
    let value = json!({"passed": ok, "degrees": reports});
    if let Some(path) = report {
        std::fs::write(path, serde_json::to_string_pretty(&value)? + "\n")?;
    }
    emit(ctx, &value, || {
        let mut s = String::new();
        for r in &reports {
            s.push_str(&format!("n={}: |O|={} |J|={} ({:.2}s)\n", r.n, r.origami_order, r.jones_order, r.seconds));
            for c in &r.checks {
                let tag = match (c.kind, c.passed) {
                    (CheckKind::Lemma, true) => "pass",
                    (CheckKind::Lemma, false) => "FAIL",
                    (CheckKind::Conjecture, true) => "holds",
                    (CheckKind::Conjecture, false) => "fails",
                };
                s.push_str(&format!("  [{tag}] {}: {}\n", c.name, c.detail));
            }
        }
        s.push_str(if ok { "all lemma checks passed\n" } else { "lemma violations found\n" });
        s
    });
    for r in &reports {
        for c in r.checks.iter().filter(|c| c.kind == CheckKind::Lemma && !c.passed) {
            eprintln!("n={}: {} failed{}", r.n, c.name, c.witness.as_ref().map(|w| format!("; witness {w}")).unwrap_or_default());
        }
    }
    Ok(ok)
}

fn morphism(ctx: &Ctx, n: usize) -> Result<()> {
    let origami = build_monoid(n, &ctx.limits, EnumerationOptions::default())?;
    let jones = enumerate_jones(n)?;
    let projection = projection_p(&origami, &jones)?;
    let gs = compute_green(&origami.monoid)?;
    let report = verify_dclass_correspondence(&origami, &gs, &projection)?;
    let product = product_presentation(n)?;
    if ctx.cache.load(CacheFamily::Product, n, &product).is_none() {
        let rs = complete(ctx, &product)?;
        let entry = CacheEntry {
            format_version: FORMAT_VERSION,
            family: CacheFamily::Product,
            n,
            presentation_hash: presentation_hash(&product),
            complete: true,
            presentation: product.with_system(&rs),
            monoid: projection.product.monoid.clone(),
        };
        ctx.cache.store(&entry)?;
    }
    emit(ctx, &serde_json::to_value(&report)?, || {
        format!(
            "n={n}: {} D-classes in O_n, {} in J_n x J_n\nbijection: {}\nevery product D-class an onto image: {}\nsingleton H-classes: {}\n",
            report.dclass_counts.origami,
            report.dclass_counts.product,
            report.bijection,
            report.every_product_class_hit_onto,
            report.singleton_h
        )
    });
    Ok(())
}

fn cache_cmd(ctx: &Ctx, action: &CacheAction) -> Result<()> {
    match action {
        CacheAction::List => {
            let files = ctx.cache.list()?;
            let entries: Vec<_> = files
                .iter()
                .map(|p| {
                    let s = summarize(p);
                    json!({
                        "path": p.display().to_string(),
                        "family": s.as_ref().map(|s| s.family.name()),
                        "n": s.as_ref().map(|s| s.n),
                        "presentation_hash": s.as_ref().map(|s| s.presentation_hash.clone()),
                        "format_version": s.as_ref().map(|s| s.format_version),
                        "complete": s.as_ref().map(|s| s.complete),
                    })
                })
                .collect();
            emit(ctx, &json!(entries), || {
                let mut out = String::new();
                for e in &entries {
                    out.push_str(&format!(
                        "{}\t{}\t{}\t{}\n",
                        e["family"].as_str().unwrap_or("?"),
                        e["n"],
                        if e["complete"] == json!(true) { "complete" } else { "partial" },
                        e["path"].as_str().unwrap_or_default()
                    ));
                }
                out
            });
        }
        CacheAction::Clear => {
            let removed = ctx.cache.clear()?;
            emit(ctx, &json!({"removed": removed}), || format!("removed {removed} entries\n"));
        }
    }
    Ok(())
}

fn run(cli: Cli) -> Result<bool> {
    if let Some(j) = cli.jobs {
        rayon::ThreadPoolBuilder::new().num_threads(j).build_global()?;
    }
    let limits = CompletionLimits { max_rules: cli.max_rules, max_steps: cli.max_steps, ..CompletionLimits::default() };
    let ctx = Ctx {
        cache: MonoidCache::new(cli.cache_dir.clone().unwrap_or_else(default_cache_dir)),
        limits,
        format: cli.format,
        trace: cli.trace,
    };
    match &cli.command {
        Command::Reduce { family, n, word } => reduce(&ctx, *family, *n, word, cli.max_steps)?,
        Command::Enumerate { family, n, max_elements } => enumerate(&ctx, *family, *n, *max_elements)?,
        Command::Green { family, n, export, out_dir } => green(&ctx, *family, *n, export, out_dir)?,
        Command::Verify { n, report, seed } => return verify(&ctx, n.clone(), report.as_ref(), *seed),
        Command::Morphism { n } => morphism(&ctx, *n)?,
        Command::Cache { action } => cache_cmd(&ctx, action)?,
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(cli);
    let _ = std::io::stdout().flush();
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use origami_monoid::morphism::ProductMonoid;

    #[test]
    fn product_presentation_matches_direct_product() {
        let ctx = Ctx {
            cache: MonoidCache::new(std::env::temp_dir()),
            limits: CompletionLimits::default(),
            format: Format::Text,
            trace: false,
        };
        for n in 2..=4 {
            let rs = complete(&ctx, &product_presentation(n).unwrap()).unwrap();
            let m = enumerate_normal_forms(&rs, EnumerationOptions::default()).unwrap();
            let j = enumerate_jones(n).unwrap();
            let direct = ProductMonoid::new(&j.monoid).unwrap().monoid;
            let mut a = m.elements.clone();
            let mut b = direct.elements.clone();
            a.sort();
            b.sort();
            assert_eq!(a, b, "n={n}");
        }
    }

    #[test]
    fn ranges() {
        assert_eq!(parse_range("3"), Ok(3..=3));
        assert_eq!(parse_range("2..4"), Ok(2..=4));
        assert_eq!(parse_range("2..=5"), Ok(2..=5));
        assert!(parse_range("4..2").is_err());
        assert!(parse_range("x").is_err());
    }
}
