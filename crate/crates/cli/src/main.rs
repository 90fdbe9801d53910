fn main() {
    std::process::exit(tropint_cli::run(std::env::args_os()));
}
