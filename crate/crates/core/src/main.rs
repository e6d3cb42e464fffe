fn main() {
    std::process::exit(icflow::cli::main_from_env());
}
