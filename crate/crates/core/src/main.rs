fn main() {
    std::process::exit(benchreg::cli::main_with(std::env::args_os()));
}
