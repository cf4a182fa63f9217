use std::io::Write;
use std::process::ExitCode;

use clap::{CommandFactory, FromArgMatches};

use grassdense_cli::commands::{run, Cli, EXIT_USAGE};
use grassdense_cli::render::rule_table;

fn main() -> ExitCode {
    let matches = Cli::command().after_help(rule_table()).try_get_matches();
    let cli = match matches.and_then(|m| Cli::from_arg_matches(&m)) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    let out = run(cli);
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    let _ = std::io::stdout().flush();
    ExitCode::from(out.code as u8)
}
