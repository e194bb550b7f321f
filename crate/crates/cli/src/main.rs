fn main() {
    std::process::exit(fading_cli::run(std::env::args_os()));
}
