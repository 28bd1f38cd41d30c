fn main() {
    std::process::exit(mellin_cli::run(std::env::args_os()));
}
