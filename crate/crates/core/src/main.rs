fn main() {
    std::process::exit(kunion_core::cli::run_from_env());
}
