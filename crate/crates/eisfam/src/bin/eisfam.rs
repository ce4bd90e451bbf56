fn main() {
    std::process::exit(eisfam::cli::run(std::env::args_os()));
}
