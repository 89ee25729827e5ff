use std::process::ExitCode;

fn main() -> ExitCode {
    let out = qbps_cli::run(std::env::args().collect());
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    ExitCode::from(out.code)
}
