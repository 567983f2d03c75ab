use std::process::ExitCode;

fn main() -> ExitCode {
    gepner_cli::run()
}
