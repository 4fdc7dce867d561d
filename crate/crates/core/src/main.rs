fn main() {
    std::process::exit(compseries::cli::main_with_args(std::env::args_os()));
}
