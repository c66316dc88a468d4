fn main() {
    std::process::exit(acr::cli::run(std::env::args_os()));
}
