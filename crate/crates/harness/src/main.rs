use std::process::ExitCode;

fn main() -> ExitCode {
    match shufflemerge_harness::cli::run() {
        Ok(code) => code,
        Err(error) => {
            eprintln!("error: {error:#}");
            ExitCode::FAILURE
        }
    }
}
