fn main() {
    std::process::exit(helly_core::cli::run(std::env::args_os()));
}
