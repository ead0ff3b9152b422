//! Command-line front end: sheaf expressions, subcommand dispatch and
//! deterministic text or JSON output.

pub mod app;
pub mod cache;
pub mod expr;

use std::ffi::OsString;
use std::path::Path;

use clap::Parser;

pub use app::{Cli, CliError, Report};
pub use cache::Cache;
pub use expr::{parse, ParseError, SheafExpr, Term};

/// Environment variable naming the cache directory.
pub const CACHE_ENV: &str = "SEGRE_ACM_CACHE";

/// Exit status and the two output streams of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Run with argv (program name first), honouring `SEGRE_ACM_CACHE`.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString>,
{
    let dir = std::env::var_os(CACHE_ENV).filter(|d| !d.is_empty());
    run_with_cache(argv, dir.as_deref().map(Path::new))
}

pub fn run_with_cache<I, T>(argv: I, cache_dir: Option<&Path>) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString>,
{
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let cache = cache_dir.map(Cache::new);
    let key = cache.as_ref().and_then(|_| {
        let args: Option<Vec<String>> = argv
            .iter()
            .skip(1)
            .map(|a| a.to_str().map(str::to_owned))
            .collect();
        args.map(|a| Cache::key(&a))
    });
    if let (Some(c), Some(k)) = (&cache, &key) {
        if let Some(stdout) = c.get(k) {
            return Outcome {
                code: 0,
                stdout,
                stderr: String::new(),
            };
        }
    }
    let out = run_uncached(argv);
    if let (Some(c), Some(k), 0) = (&cache, &key, out.code) {
        c.put(k, &out.stdout);
    }
    out
}

fn run_uncached(argv: Vec<OsString>) -> Outcome {
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: rendered,
                }
            } else {
                Outcome {
                    code: 0,
                    stdout: rendered,
                    stderr: String::new(),
                }
            };
        }
    };
    match app::execute(&cli) {
        Ok(report) => Outcome {
            code: 0,
            stdout: report.render(cli.json),
            stderr: String::new(),
        },
        Err(e) => Outcome {
            code: e.exit_code(),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}
