use std::process::ExitCode;

fn main() -> ExitCode {
    // die quietly when stdout is closed early, e.g. `solve ... | head`
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    binpack3d::cli::main()
}
