use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let (out, code) = kstab_cli::run(&args);
    if code == kstab_cli::EXIT_USAGE {
        eprint!("{out}");
    } else {
        print!("{out}");
        std::io::stdout().flush().ok();
    }
    ExitCode::from(code as u8)
}
