fn main() {
    std::process::exit(awgb::cli::main_entry(std::env::args_os()));
}
