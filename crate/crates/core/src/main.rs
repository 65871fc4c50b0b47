fn main() {
    std::process::exit(glg_core::cli::run_from(std::env::args_os()));
}
