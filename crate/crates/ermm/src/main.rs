fn main() {
    std::process::exit(ermm::cli::run(std::env::args_os()));
}
