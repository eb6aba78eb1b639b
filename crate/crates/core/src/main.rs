fn main() {
    std::process::exit(pointsep::cli::run(std::env::args_os()));
}
