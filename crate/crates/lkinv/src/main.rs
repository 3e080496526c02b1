fn main() {
    std::process::exit(lkinv::cli::run(std::env::args_os()));
}
