fn main() {
    std::process::exit(wreathnorm::cli::run(std::env::args_os()));
}
