use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use korbit::catalog::{build_catalog, entry_from_graph, BuildOptions, Catalog};
use korbit::closure2::{two_closure, ClosureCache, EngineLimits, Graph};
use korbit::korbit::{coherence, orb_k, Coherence, DEFAULT_TUPLE_CAP};
use korbit::perm::{GroupFile, PermutationGroup, DEFAULT_ELEMENT_CAP, DEFAULT_LATTICE_GROUP_CAP};
use korbit::regular::{find_regular, polycirculant_survey, survey_to_jsonl, SurveyOptions, SurveyStatus};
use korbit_lemmas::{run_suite, verify_witness, CheckRow, LabError, Status, SuiteConfig, SuiteSummary, DESCRIPTORS};
use thiserror::Error;

use crate::args::*;

/// `println!` that ignores a closed stdout, e.g. when piped into `head`.
macro_rules! say {
    ($($arg:tt)*) => {{
        let _ = writeln!(std::io::stdout().lock(), $($arg)*);
    }};
}

pub const CACHE_ENV: &str = "KORBIT_CACHE_DIR";

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] korbit::Error),
    #[error(transparent)]
    Lab(#[from] LabError),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{0}")]
    Input(String),
}

type CliResult<T> = Result<T, CliError>;

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn write(path: &Path, text: &str) -> CliResult<()> {
    fs::write(path, text).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Writes to `out`, or to stdout when no path is given.
fn emit(out: Option<&Path>, text: &str) -> CliResult<()> {
    match out {
        Some(p) => write(p, text),
        None => {
            let _ = std::io::stdout().lock().write_all(text.as_bytes());
            Ok(())
        }
    }
}

impl GlobalOpts {
    fn element_cap(&self) -> usize {
        self.element_cap.map_or(DEFAULT_ELEMENT_CAP, |c| c.get())
    }

    fn tuple_cap(&self) -> usize {
        self.tuple_cap.map_or(DEFAULT_TUPLE_CAP, |c| c.get())
    }

    fn subgroup_cap(&self) -> usize {
        self.subgroup_cap.map_or(DEFAULT_LATTICE_GROUP_CAP, |c| c.get())
    }

    fn parallelism(&self) -> Option<usize> {
        self.parallelism.map(|p| p.get())
    }

    fn engine(&self) -> EngineLimits {
        let mut lim = EngineLimits {
            max_elements: self.element_cap(),
            ..EngineLimits::default()
        };
        if let Some(c) = self.engine_cap {
            lim.max_points = c.get();
        }
        lim
    }

    fn cache(&self) -> CliResult<Option<ClosureCache>> {
        match std::env::var_os(CACHE_ENV) {
            Some(dir) if !dir.is_empty() => Ok(Some(ClosureCache::new(PathBuf::from(dir))?)),
            _ => Ok(None),
        }
    }

    fn build_options(&self, max_exhaustive: usize, max_family: usize, two_closed: bool) -> BuildOptions {
        BuildOptions {
            min_degree: 2,
            max_exhaustive_degree: max_exhaustive,
            max_family_degree: max_family,
            element_cap: self.element_cap(),
            lattice_cap: self.subgroup_cap(),
            engine: self.engine(),
            compute_two_closed: two_closed,
        }
    }

    /// The `--catalog` file restricted to `max_degree`, or a freshly built
    /// catalog covering the same range.
    fn catalog(&self, max_degree: usize) -> CliResult<Catalog> {
        match &self.catalog {
            Some(path) => {
                let cat = Catalog::load(path)?;
                Ok(Catalog::new(cat.entries.into_iter().filter(|e| e.degree <= max_degree).collect())?)
            }
            None => {
                let report = build_catalog(&self.build_options(max_degree.min(6), max_degree, false))?;
                for line in report.log.iter().filter(|l| l.contains("skipped")) {
                    eprintln!("note: {line}");
                }
                Ok(report.catalog)
            }
        }
    }

    fn suite_config(&self) -> SuiteConfig {
        SuiteConfig {
            convention: self.convention,
            parallelism: self.parallelism(),
            engine: self.engine(),
            element_cap: self.element_cap(),
            tuple_cap: self.tuple_cap(),
            subgroup_cap: self.subgroup_cap(),
            ..SuiteConfig::default()
        }
    }

    /// Resolves a catalog id (`NAME@n`) or a `.grp` path to a group.
    fn group(&self, spec: &str) -> CliResult<(String, PermutationGroup)> {
        let path = Path::new(spec);
        if spec.ends_with(".grp") || path.is_file() {
            let file = GroupFile::parse(&read(path)?)?;
            let name = path.file_stem().map_or(spec.into(), |s| s.to_string_lossy().into_owned());
            return Ok((name, file.close(self.element_cap())?));
        }
        let catalog = match &self.catalog {
            Some(p) => Catalog::load(p)?,
            None => {
                let n = spec
                    .rsplit_once('@')
                    .and_then(|(_, d)| d.parse::<usize>().ok())
                    .ok_or_else(|| CliError::Input(format!("{spec:?} is neither a .grp file nor an id of the form NAME@n")))?;
                let opts = BuildOptions {
                    compute_two_closed: false,
                    ..BuildOptions::default().only_degree(n)
                };
                build_catalog(&opts)?.catalog
            }
        };
        let entry = catalog.require(spec)?;
        if entry.order > self.element_cap() {
            return Err(korbit::Error::GroupTooLarge {
                cap: self.element_cap(),
                partial: entry.order,
            }
            .into());
        }
        Ok((spec.to_string(), entry.group()?))
    }
}

fn strict_exit(strict: bool, failures: usize) -> ExitCode {
    if strict && failures > 0 {
        ExitCode::from(3)
    } else {
        ExitCode::SUCCESS
    }
}

pub fn run(cli: &Cli) -> CliResult<ExitCode> {
    let g = &cli.global;
    match &cli.command {
        Command::Catalog(CatalogCmd::Build {
            max_exhaustive_degree,
            max_family_degree,
            no_two_closed,
            out,
        }) => {
            let report = build_catalog(&g.build_options(*max_exhaustive_degree, *max_family_degree, !no_two_closed))?;
            for line in &report.log {
                eprintln!("note: {line}");
            }
            eprintln!("{} entries", report.catalog.len());
            emit(out.as_deref(), &report.catalog.to_jsonl())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Korbit(KorbitCmd::Compute { group, k, out_dir }) => korbit_compute(g, group, k.get(), out_dir),
        Command::Closure(ClosureCmd::Two { group }) => {
            let (id, group) = g.group(group)?;
            let closure = match g.cache()? {
                Some(cache) => cache.two_closure(&group, &g.engine())?,
                None => two_closure(&group, &g.engine())?,
            };
            say!("group: {id} (degree {}, order {})", group.degree(), group.order());
            say!("2-closure order: {}", closure.order());
            say!("2-closed: {}", closure.order() == group.order());
            Ok(ExitCode::SUCCESS)
        }
        Command::Lemmas(LemmasCmd::Run {
            checks,
            max_degree,
            instance_cap,
            hypotheses_only,
            timing,
            out,
        }) => {
            let mut cfg = g.suite_config();
            if !checks.is_empty() {
                cfg.checks = checks.clone();
            }
            cfg.max_degree = Some(*max_degree);
            cfg.evaluate_conclusions = !hypotheses_only;
            cfg.record_timing = *timing;
            if let Some(c) = instance_cap {
                cfg.instance_cap = c.get();
            }
            let report = run_suite(&g.catalog(*max_degree)?, &cfg);
            emit(out.as_deref(), &report.to_jsonl())?;
            let t = &report.summary.totals;
            eprintln!(
                "{} rows: {} PASS, {} FAIL, {} VACUOUS, {} SKIPPED, {} UNKNOWN",
                report.summary.rows, t.pass, t.fail, t.vacuous, t.skipped, t.unknown
            );
            Ok(strict_exit(g.strict, t.fail))
        }
        Command::Lemmas(LemmasCmd::Verify { report }) => lemmas_verify(g, report),
        Command::Lemmas(LemmasCmd::List) => {
            for d in &DESCRIPTORS {
                say!("{}\t{}\t{}", d.id, d.topic, d.conclusion);
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Polycirc(PolycircCmd::Survey { max_degree, out }) => {
            let catalog = g.catalog(*max_degree)?;
            let opts = SurveyOptions {
                include_identity: g.include_identity,
                engine: g.engine(),
                parallelism: g.parallelism(),
                cache: g.cache()?,
            };
            let rows = polycirculant_survey(&catalog.entries, &opts);
            emit(out.as_deref(), &survey_to_jsonl(&rows))?;
            let count = |s| rows.iter().filter(|r| r.status == s).count();
            let refuted = count(SurveyStatus::Refuted);
            eprintln!(
                "{} groups: {} CONFIRMED, {refuted} REFUTED, {} NOT_APPLICABLE, {} SKIPPED",
                rows.len(),
                count(SurveyStatus::Confirmed),
                count(SurveyStatus::NotApplicable),
                count(SurveyStatus::Skipped)
            );
            Ok(strict_exit(g.strict, refuted))
        }
        Command::Graph(GraphCmd::Import { file, append }) => {
            let graph = Graph::parse_any(&read(file)?)?;
            let entry = entry_from_graph(&graph, &g.engine())?;
            let group = entry.group()?;
            let regular = find_regular(&group, g.include_identity);
            eprintln!(
                "{}: order {}, vertex-transitive {}, regular element {}",
                entry.id,
                entry.order,
                group.is_transitive(),
                regular.witness.map_or("none".into(), |w| w.to_cycle_string())
            );
            if let Some(path) = append {
                let mut entries = if path.exists() { Catalog::load(path)?.entries } else { Vec::new() };
                entries.push(entry.clone());
                Catalog::new(entries)?.save(path)?;
            }
            say!("{}", serde_json::to_string(&entry).expect("entries serialize"));
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn file_stem(id: &str) -> String {
    id.chars()
        .map(|c| if c.is_ascii_alphanumeric() || c == '-' || c == '.' { c } else { '_' })
        .collect()
}

fn korbit_compute(g: &GlobalOpts, spec: &str, k: usize, out_dir: &Path) -> CliResult<ExitCode> {
    let (id, group) = g.group(spec)?;
    let orbits = orb_k(&group, k, g.tuple_cap())?;
    fs::create_dir_all(out_dir).map_err(|source| CliError::Io {
        path: out_dir.to_path_buf(),
        source,
    })?;
    say!(
        "group {id}: degree {}, order {}, k={k}, {} orbits",
        group.degree(),
        group.order(),
        orbits.len()
    );
    let mut kinds = [0usize; 4];
    for (i, x) in orbits.iter().enumerate() {
        let path = out_dir.join(format!("{}-k{k}-{:03}.korb", file_stem(&id), i + 1));
        write(&path, &x.to_korb())?;
        let verdict = coherence(x);
        kinds[verdict.kind as usize] += 1;
        let comps: Vec<String> = verdict
            .components
            .iter()
            .map(|c| format!("{{{}}}", c.iter().map(|p| (p + 1).to_string()).collect::<Vec<_>>().join(",")))
            .collect();
        let kind = serde_json::to_value(verdict.kind).expect("kinds serialize");
        say!(
            "orbit {}: {} tuples, {}, components {} -> {}",
            i + 1,
            x.len(),
            kind.as_str().unwrap_or_default(),
            comps.join(" "),
            path.display()
        );
    }
    say!(
        "coherent {}, incoherent {}, trivial-full {}, degenerate {}",
        kinds[Coherence::Coherent as usize],
        kinds[Coherence::Incoherent as usize],
        kinds[Coherence::TrivialFull as usize],
        kinds[Coherence::Degenerate as usize]
    );
    Ok(ExitCode::SUCCESS)
}

fn lemmas_verify(g: &GlobalOpts, report: &Path) -> CliResult<ExitCode> {
    let mut rows = Vec::new();
    let mut cfg = g.suite_config();
    for (i, line) in read(report)?.lines().enumerate().filter(|(_, l)| !l.trim().is_empty()) {
        let value: serde_json::Value =
            serde_json::from_str(line).map_err(|e| CliError::Input(format!("line {}: {e}", i + 1)))?;
        if value.get("summary").is_some() {
            let summary: SuiteSummary =
                serde_json::from_value(value).map_err(|e| CliError::Input(format!("line {}: {e}", i + 1)))?;
            cfg.convention = summary.convention;
        } else {
            rows.push(
                serde_json::from_value::<CheckRow>(value).map_err(|e| CliError::Input(format!("line {}: {e}", i + 1)))?,
            );
        }
    }
    let checkable: Vec<&CheckRow> = rows
        .iter()
        .filter(|r| matches!(r.status, Status::Pass | Status::Fail))
        .collect();
    let max_degree = checkable
        .iter()
        .filter_map(|r| r.group_id.rsplit_once('@').and_then(|(_, d)| d.parse::<usize>().ok()))
        .max()
        .unwrap_or(2);
    let catalog = g.catalog(max_degree)?;
    let mut bad = 0;
    for row in &checkable {
        if !verify_witness(&catalog, row, &cfg)? {
            bad += 1;
            say!("MISMATCH {} {}", row.check, row.instance);
        }
    }
    say!("verified {} of {} witnessed rows", checkable.len() - bad, checkable.len());
    Ok(strict_exit(g.strict, bad))
}
