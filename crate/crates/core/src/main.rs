use std::io::Write;
use std::process::ExitCode;

use hopfore::frontend::cli::{run, BUDGET_ENV};

fn main() -> ExitCode {
    let env_budget = std::env::var(BUDGET_ENV).ok();
    let out = run(std::env::args_os(), env_budget.as_deref());
    let _ = std::io::stdout().write_all(out.stdout.as_bytes());
    let _ = std::io::stderr().write_all(out.stderr.as_bytes());
    ExitCode::from(out.code as u8)
}
