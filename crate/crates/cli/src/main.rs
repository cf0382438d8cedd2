fn main() {
    std::process::exit(fracineq_cli::run(std::env::args_os()));
}
