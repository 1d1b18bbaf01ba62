fn main() {
    std::process::exit(sommerfeld::cli::run(std::env::args_os()));
}
