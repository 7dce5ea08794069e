fn main() {
    std::process::exit(dbrauer::cli::run(std::env::args_os()));
}
