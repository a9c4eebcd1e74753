fn main() {
    std::process::exit(excursion::cli::run(std::env::args_os()));
}
