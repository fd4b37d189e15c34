fn main() {
    std::process::exit(econlex_cli::run(std::env::args_os()));
}
