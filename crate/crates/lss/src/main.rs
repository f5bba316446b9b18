use std::process::ExitCode;

fn main() -> ExitCode {
    lss::cli::run()
}
