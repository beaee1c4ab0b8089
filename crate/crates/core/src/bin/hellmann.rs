fn main() {
    std::process::exit(hellmann::cli::main_with_args(std::env::args_os()));
}
