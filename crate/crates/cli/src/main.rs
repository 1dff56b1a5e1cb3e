use std::io::Write;

fn main() {
    let outcome = satmat_cli::run(std::env::args_os());
    let mut code = outcome.code;
    if let Some(err) = &outcome.error {
        let err = err.trim_end();
        if err.starts_with("error:") {
            eprintln!("{err}");
        } else {
            eprintln!("error: {err}");
        }
    }
    match &outcome.out_file {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &outcome.output) {
                eprintln!("error: cannot write report to {}: {e}", path.display());
                code = 1;
            }
        }
        None => {
            let _ = std::io::stdout().write_all(outcome.output.as_bytes());
        }
    }
    std::process::exit(code);
}
