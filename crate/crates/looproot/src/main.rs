use std::process::ExitCode;

fn main() -> ExitCode {
    looproot::cli::main()
}
