fn main() {
    std::process::exit(ssdesign::cli::run(std::env::args_os()));
}
