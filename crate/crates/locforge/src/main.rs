fn main() {
    std::process::exit(locforge::cli::run(std::env::args_os()));
}
