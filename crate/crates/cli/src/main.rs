fn main() {
    std::process::exit(jetoper_cli::main_with_args(std::env::args_os()));
}
