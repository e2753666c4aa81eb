use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let result = negbeta_cli::run(std::env::args_os());
    let text = result.output();
    let written = if result.exit_code == 0 || result.machine_record.is_some() {
        std::io::stdout().write_all(text.as_bytes())
    } else {
        std::io::stderr().write_all(text.as_bytes())
    };
    if written.is_err() {
        return ExitCode::from(1);
    }
    ExitCode::from(result.exit_code as u8)
}
