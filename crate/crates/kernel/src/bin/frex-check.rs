//! Standalone certificate checker. Links only the kernel, so no simplifier
//! code is involved in accepting a proof.
//!
//! Usage: `frex-check <file>...`. Exits 0 if every certificate verifies,
//! 1 if any is rejected, 2 on usage or I/O errors.

use std::process::ExitCode;

use frex_kernel::check_certificate;

fn main() -> ExitCode {
    let files: Vec<String> = std::env::args().skip(1).collect();
    if files.is_empty() {
        eprintln!("usage: frex-check <certificate>...");
        return ExitCode::from(2);
    }
    let mut status = 0;
    for file in &files {
        match std::fs::read(file) {
            Err(e) => {
                eprintln!("{file}: {e}");
                status = 2;
            }
            Ok(bytes) => match check_certificate(&bytes) {
                Ok(()) => println!("{file}: ok"),
                Err(e) => {
                    eprintln!("{file}: {e}");
                    status = status.max(1);
                }
            },
        }
    }
    ExitCode::from(status)
}
