fn main() {
    std::process::exit(ghal::cli::run(std::env::args_os()));
}
