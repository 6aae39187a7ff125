fn main() {
    std::process::exit(annulus_cauchy::cli::main_with_args(std::env::args_os()));
}
