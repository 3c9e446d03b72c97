fn main() {
    // Die quietly on a closed pipe (`gonlat ... | head`) instead of
    // panicking mid-print; Rust's runtime ignores SIGPIPE by default.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    gonlat::exec::init_threads_from_env();
    std::process::exit(gonlat::cli::run(std::env::args_os()));
}
