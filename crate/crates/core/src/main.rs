fn main() {
    std::process::exit(hullcraft::cli::run(std::env::args_os()));
}
