use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let args: Vec<std::ffi::OsString> = std::env::args_os().collect();
    let to_file = args.iter().any(|a| a == "--out" || a.to_string_lossy().starts_with("--out="));
    let (code, output) = cdl_cli::execute(args);
    // Usage errors go to stderr; reports go to stdout unless written to a file.
    if code == 1 {
        eprint!("{output}");
    } else if !to_file {
        let _ = std::io::stdout().write_all(output.as_bytes());
    }
    ExitCode::from(code as u8)
}
