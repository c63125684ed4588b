//! Document-driven command line for the equivariant torsion calculator:
//! one JSON request in, one JSON response out.
//!
//! Exit codes: 0 on success, 2 on parse or validation errors, 3 on domain
//! errors. Diagnostics additionally go to stderr as `code|path|message`
//! lines.

use std::fs;
use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use eqtorsion_cli::diag::Diagnostic;
use eqtorsion_cli::{process, response, Processed};

#[derive(Parser)]
#[command(
    name = "eqtorsion",
    version,
    about = "Exact equivariant torsion calculator"
)]
struct Args {
    /// Read the request document from a file instead of stdin.
    #[arg(long = "in", value_name = "FILE")]
    input: Option<PathBuf>,

    /// Write the response document to a file instead of stdout.
    #[arg(long = "out", value_name = "FILE")]
    output: Option<PathBuf>,

    /// Override the document's truncation K.
    #[arg(long = "K", value_name = "N")]
    truncation: Option<usize>,

    /// Pretty-print the response.
    #[arg(long)]
    pretty: bool,
}

fn emit(args: &Args, body: &str) -> std::io::Result<()> {
    match &args.output {
        Some(path) => fs::write(path, body),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(body.as_bytes())?;
            out.flush()
        }
    }
}

fn main() -> ExitCode {
    let args = Args::parse();

    let bytes = match &args.input {
        Some(path) => match fs::read(path) {
            Ok(b) => b,
            Err(e) => {
                let d = Diagnostic::new("io", "", format!("cannot read {}: {}", path.display(), e));
                eprintln!("{}", d.line());
                let body = response::render(&response::error_response(&[d]), args.pretty);
                let _ = emit(&args, &body);
                return ExitCode::from(2);
            }
        },
        None => {
            let mut buf = Vec::new();
            if let Err(e) = std::io::stdin().lock().read_to_end(&mut buf) {
                let d = Diagnostic::new("io", "", format!("cannot read stdin: {}", e));
                eprintln!("{}", d.line());
                let body = response::render(&response::error_response(&[d]), args.pretty);
                let _ = emit(&args, &body);
                return ExitCode::from(2);
            }
            buf
        }
    };

    match process(&bytes, args.truncation) {
        Processed::Ok(doc) => {
            let body = response::render(&doc, args.pretty);
            if emit(&args, &body).is_err() {
                return ExitCode::from(1);
            }
            ExitCode::SUCCESS
        }
        Processed::Failed(doc, diags, code) => {
            let mut err = std::io::stderr().lock();
            for d in &diags {
                let _ = writeln!(err, "{}", d.line());
            }
            let body = response::render(&doc, args.pretty);
            if emit(&args, &body).is_err() {
                return ExitCode::from(1);
            }
            ExitCode::from(code)
        }
    }
}
