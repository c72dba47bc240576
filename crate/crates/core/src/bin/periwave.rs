fn main() {
    std::process::exit(periwave::cli::main_with_args(std::env::args_os()));
}
