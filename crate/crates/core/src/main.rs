use std::process::ExitCode;

fn main() -> ExitCode {
    coprime_bb::cli::main_with(std::env::args_os())
}
