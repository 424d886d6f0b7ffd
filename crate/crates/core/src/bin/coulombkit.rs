fn main() {
    std::process::exit(coulombkit::cli::main_with_args(std::env::args_os()));
}
