use std::io::Write;

fn main() {
    let (code, out) = jl_cli::run(std::env::args_os());
    // A closed pipe downstream is not an error worth reporting.
    let _ = writeln!(std::io::stdout(), "{}", out.trim_end());
    std::process::exit(code);
}
