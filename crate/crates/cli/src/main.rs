fn main() {
    std::process::exit(maxform_cli::run(std::env::args_os()));
}
