fn main() {
    std::process::exit(linper::cli::run(std::env::args_os()));
}
