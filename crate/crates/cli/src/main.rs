fn main() {
    std::process::exit(fracspec_cli::run_cli(std::env::args_os()));
}
