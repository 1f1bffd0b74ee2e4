use std::process::ExitCode;

fn main() -> ExitCode {
    // Die quietly when a downstream pipe closes early, like any
    // stream filter would.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    ExitCode::from(monocon_cli::run(std::env::args_os()) as u8)
}
