use std::process::ExitCode;

fn main() -> ExitCode {
    // Die quietly when a downstream pipe closes (e.g. `cyclokit verify | head`).
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    ExitCode::from(cyclokit::cli::run())
}
