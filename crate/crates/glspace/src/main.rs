use std::process::ExitCode;

fn main() -> ExitCode {
    glspace::cli::run()
}
