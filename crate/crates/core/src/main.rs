fn main() {
    std::process::exit(parabolic::cli::run(std::env::args_os()));
}
