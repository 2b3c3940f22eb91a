fn main() {
    std::process::exit(aniso_lgp::cli::run(std::env::args_os()));
}
