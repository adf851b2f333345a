fn main() {
    std::process::exit(wordramsey::cli::main_with_args(std::env::args_os()));
}
